"""Run configuration, the diagnostic pipeline and its serialisable report.

Matrices in configs and reports are row-major lists of rows in the
lexicographic basis; every complex scalar is written as ``[re, im]``.
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .fock import FAILED, DeformedFock, GramReport, well_defined_report
from .twist import AxiomVerdict, TwistSpec, check_twist
from .validation import DEFAULT_TOL
from .zoo import PRESETS, EpsilonSpec, preset_twist

logger = logging.getLogger(__name__)

TOL_ENV = "TWISTFOCK_TOL"
QUOTIENT_MODES = ("none", "full-kernel")
FORMATS = ("text", "json")


class ConfigError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


# -- scalar / matrix encoding -------------------------------------------------

def decode_scalar(value, path):
    if isinstance(value, bool):
        raise ConfigError(path, "expected a number or [re, im]")
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(path, "expected a number or [re, im]")


def encode_scalar(z):
    z = complex(z)
    return [_clean_float(z.real), _clean_float(z.imag)]


def decode_matrix(value, size, path):
    if not isinstance(value, list) or len(value) != size:
        raise ConfigError(path, f"expected {size} rows")
    rows = []
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != size:
            raise ConfigError(f"{path}[{r}]", f"expected {size} entries")
        rows.append([decode_scalar(x, f"{path}[{r}][{c}]") for c, x in enumerate(row)])
    return np.array(rows, dtype=complex)


def encode_matrix(M):
    return [[encode_scalar(x) for x in row] for row in np.asarray(M)]


def _clean_float(x):
    x = float(x)
    if x == 0.0:
        return 0.0  # drop the sign of negative zero
    return x


# -- configuration ------------------------------------------------------------

@dataclass(eq=False)
class RunConfig:
    dim: int
    preset: str | None = None
    q: complex | None = None
    epsilon: EpsilonSpec | None = None
    cross: np.ndarray | None = None
    twist_tilde: np.ndarray | None = None
    B: np.ndarray | None = None
    mu: complex | None = None
    n_max: int = 4
    tolerance: float = DEFAULT_TOL
    quotient: str | np.ndarray = "none"
    format: str = "text"

    def twist(self):
        if self.preset is not None:
            spec = preset_twist(self.preset, self.dim, q=self.q, epsilon=self.epsilon)
            if self.B is None and self.mu is None:
                return spec
            return TwistSpec(
                braid=spec.braid,
                B=self.B if self.B is not None else spec.B,
                mu=self.mu,
                involutive=spec.involutive,
                tol=self.tolerance,
            )
        return TwistSpec(
            cross=self.cross, braid=self.twist_tilde, B=self.B, mu=self.mu, tol=self.tolerance
        )

    def to_dict(self):
        d = {"dim": self.dim}
        if self.preset is not None:
            d["preset"] = self.preset
        if self.q is not None:
            d["q"] = encode_scalar(self.q)
        if self.epsilon is not None:
            d["epsilon"] = {
                "sigma": self.epsilon.sigma.tolist(),
                "omega": self.epsilon.omega.tolist(),
                "q": encode_scalar(self.epsilon.q),
            }
        for key in ("cross", "twist_tilde", "B"):
            M = getattr(self, key)
            if M is not None:
                d[key] = encode_matrix(M)
        if self.mu is not None:
            d["mu"] = encode_scalar(self.mu)
        d["n_max"] = self.n_max
        d["tolerance"] = self.tolerance
        if isinstance(self.quotient, str):
            d["quotient"] = self.quotient
        else:
            d["quotient"] = {"generators": [[encode_scalar(x) for x in g] for g in self.quotient]}
        d["format"] = self.format
        return d


def parse_config(source, env=None):
    """Build a :class:`RunConfig` from a path, a readable stream, or a dict."""
    env = os.environ if env is None else env
    if isinstance(source, dict):
        data = source
    else:
        try:
            if hasattr(source, "read"):
                data = json.load(source)
            else:
                with open(source, encoding="utf-8") as fh:
                    data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("", f"malformed JSON: {exc}") from exc
        except OSError as exc:
            raise ConfigError("", f"cannot read config: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("", "config must be a JSON object")

    known = {
        "dim", "preset", "q", "epsilon", "cross", "twist_tilde", "B", "mu",
        "n_max", "tolerance", "quotient", "format", "nonlinear",
    }
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(unknown[0], "unknown field")
    if data.get("nonlinear"):
        raise ConfigError("nonlinear", "nonlinear twist operators are not supported")

    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ConfigError("dim", "expected a positive integer")
    size = dim * dim

    preset = data.get("preset")
    explicit = [k for k in ("cross", "twist_tilde") if k in data]
    if preset is None and not explicit:
        raise ConfigError("", "missing twist source")
    if preset is not None and explicit:
        raise ConfigError(explicit[0], "give either a preset or explicit matrices, not both")
    if preset is not None and preset not in PRESETS:
        raise ConfigError("preset", f"unknown preset {preset!r}; expected one of {', '.join(PRESETS)}")

    q = decode_scalar(data["q"], "q") if "q" in data else None
    if preset == "qflip" and q is None:
        raise ConfigError("q", "qflip preset needs q")

    epsilon = None
    if "epsilon" in data:
        eps = data["epsilon"]
        if not isinstance(eps, dict):
            raise ConfigError("epsilon", "expected an object with sigma, omega, q")
        try:
            epsilon = EpsilonSpec(
                sigma=np.array(eps.get("sigma", np.zeros((dim, dim), int))),
                omega=np.array(eps.get("omega", np.zeros((dim, dim), int))),
                q=decode_scalar(eps.get("q", 1), "epsilon.q"),
            )
        except ConfigError:
            raise
        except (ValueError, TypeError) as exc:
            raise ConfigError("epsilon", str(exc)) from exc
        if epsilon.dim != dim:
            raise ConfigError("epsilon.sigma", f"expected a {dim}x{dim} matrix")
    if preset == "epsilon" and epsilon is None:
        raise ConfigError("epsilon", "epsilon preset needs sigma/omega/q")

    matrices = {
        key: decode_matrix(data[key], size, key) for key in ("cross", "twist_tilde", "B") if key in data
    }
    mu = decode_scalar(data["mu"], "mu") if "mu" in data else None
    if mu == 0:
        raise ConfigError("mu", "must be nonzero")

    n_max = data.get("n_max", 4)
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
        raise ConfigError("n_max", "expected an integer >= 1")

    if "tolerance" in data:
        tol = data["tolerance"]
        path = "tolerance"
    elif env.get(TOL_ENV):
        tol = env[TOL_ENV]
        path = TOL_ENV
    else:
        tol, path = DEFAULT_TOL, "tolerance"
    try:
        tol = float(tol)
    except (TypeError, ValueError) as exc:
        raise ConfigError(path, "expected a number") from exc
    if not (tol >= 0 and math.isfinite(tol)):
        raise ConfigError(path, "expected a finite nonnegative number")

    quotient = data.get("quotient", "none")
    if isinstance(quotient, dict):
        gens = quotient.get("generators")
        if not isinstance(gens, list):
            raise ConfigError("quotient.generators", "expected a list of level-2 vectors")
        rows = []
        for g, vec in enumerate(gens):
            p = f"quotient.generators[{g}]"
            if not isinstance(vec, list) or len(vec) != size:
                raise ConfigError(p, f"expected {size} entries")
            rows.append([decode_scalar(x, f"{p}[{c}]") for c, x in enumerate(vec)])
        quotient = np.array(rows, dtype=complex).reshape(len(rows), size)
    elif quotient not in QUOTIENT_MODES:
        raise ConfigError("quotient", "expected 'none', 'full-kernel' or {\"generators\": [...]}")

    fmt = data.get("format", "text")
    if fmt not in FORMATS:
        raise ConfigError("format", "expected 'text' or 'json'")

    cfg = RunConfig(
        dim=dim, preset=preset, q=q, epsilon=epsilon,
        cross=matrices.get("cross"), twist_tilde=matrices.get("twist_tilde"),
        B=matrices.get("B"), mu=mu, n_max=n_max, tolerance=tol,
        quotient=quotient, format=fmt,
    )
    try:
        cfg.twist()
    except ValueError as exc:
        raise ConfigError(explicit[0] if explicit else "preset", str(exc)) from exc
    return cfg


# -- report -------------------------------------------------------------------

@dataclass
class DiagnosticsReport:
    config: dict
    axioms: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    quotient_dims: list | None = None
    quotient_levels: list | None = None
    ideal_invariance: AxiomVerdict | None = None
    adjointness: AxiomVerdict | None = None
    wick_relation: AxiomVerdict | None = None
    verdict: str = FAILED
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self):
        def verdict(v):
            return None if v is None else _finite(v.to_dict())

        return {
            "config": self.config,
            "axioms": [_finite(v.to_dict()) for v in self.axioms],
            "levels": [_finite(g.to_dict()) for g in self.levels],
            "quotient_dims": self.quotient_dims,
            "quotient_levels": (
                None if self.quotient_levels is None
                else [_finite(g.to_dict()) for g in self.quotient_levels]
            ),
            "ideal_invariance": verdict(self.ideal_invariance),
            "adjointness": verdict(self.adjointness),
            "wick_relation": verdict(self.wick_relation),
            "verdict": self.verdict,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d):
        def verdict(v):
            return None if v is None else AxiomVerdict.from_dict(v)

        return cls(
            config=d["config"],
            axioms=[AxiomVerdict.from_dict(v) for v in d["axioms"]],
            levels=[GramReport.from_dict(g) for g in d["levels"]],
            quotient_dims=d["quotient_dims"],
            quotient_levels=(
                None if d["quotient_levels"] is None
                else [GramReport.from_dict(g) for g in d["quotient_levels"]]
            ),
            ideal_invariance=verdict(d["ideal_invariance"]),
            adjointness=verdict(d["adjointness"]),
            wick_relation=verdict(d["wick_relation"]),
            verdict=d["verdict"],
            failures=list(d["failures"]),
            notes=list(d["notes"]),
        )

    @property
    def well_defined(self):
        return self.verdict == "well-defined"


def _finite(d):
    # json has no inf/nan; keep them as strings that float() reads back
    out = {}
    for k, v in d.items():
        if isinstance(v, float):
            v = _clean_float(v)
            if not math.isfinite(v):
                v = repr(v)
        out[k] = v
    return out


def run_diagnostics(cfg):
    """Run every check for ``cfg``; module errors become a failed report."""
    report = DiagnosticsReport(config=cfg.to_dict())
    tol = cfg.tolerance
    try:
        twist = cfg.twist()
        report.axioms = check_twist(twist, tol)
        if twist.B is not None:
            report.notes.append(
                "mixed consistency condition evaluated with the braid form on three legs"
            )
        if not np.any(twist.braid):
            report.notes.append(
                "free annihilation removes the leading matching factors and keeps the trailing ones"
            )
        model = DeformedFock(n_max=cfg.n_max, tol=tol, quotient=cfg.quotient).fit(twist)
        fock = well_defined_report(model, tol)
    except Exception as exc:  # report, never crash
        logger.debug("diagnostics aborted", exc_info=True)
        report.failures.append(f"{type(exc).__name__}: {exc}")
        report.verdict = FAILED
        return report

    report.levels = fock.levels
    report.quotient_dims = fock.quotient_dims
    report.quotient_levels = fock.quotient_levels
    report.ideal_invariance = fock.ideal_invariance
    report.adjointness = fock.adjointness
    report.wick_relation = fock.wick_relation
    axiom_failures = [
        f"{v.name} residual {v.residual:.3e}" for v in report.axioms if not v.passed
    ]
    report.failures = axiom_failures + fock.failures
    if fock.degenerate_levels and cfg.quotient == "none":
        levels = ", ".join(str(n) for n in fock.degenerate_levels)
        report.notes.append(f"Gram degenerate at level(s) {levels}; rerun with a quotient")
    report.verdict = FAILED if axiom_failures else fock.verdict
    return report


def emit_json(report):
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def parse_report(text):
    return DiagnosticsReport.from_dict(json.loads(text))


def emit_text(report):
    lines = [f"verdict: {report.verdict}"]
    for v in report.axioms:
        lines.append(f"  [{'pass' if v.passed else 'FAIL'}] {v.name:<22} residual {v.residual:.3e}")
    lines.append("levels:")
    for g in report.levels:
        lines.append(_gram_line(g))
    if report.quotient_dims is not None:
        lines.append(f"quotient dims: {report.quotient_dims}")
        for g in report.quotient_levels or []:
            lines.append(_gram_line(g))
    for v in (report.ideal_invariance, report.adjointness, report.wick_relation):
        if v is not None:
            lines.append(f"  [{'pass' if v.passed else 'FAIL'}] {v.name:<22} residual {v.residual:.3e}")
    for f in report.failures:
        lines.append(f"failure: {f}")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def _gram_line(g):
    eig = "n/a" if g.min_eigenvalue is None else f"{g.min_eigenvalue:.6g}"
    flags = []
    if not g.hermitian:
        flags.append("non-hermitian")
    if not g.positive_semidefinite:
        flags.append("indefinite")
    if not g.nondegenerate:
        flags.append(f"kernel {g.kernel_dim}")
    return f"  n={g.level}: rank {g.rank}, min eig {eig}" + (f" ({', '.join(flags)})" if flags else "")
