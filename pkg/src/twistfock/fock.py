"""Deformed Fock space: Gram matrices, creation/annihilation, well-definedness."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .levels import free_creation, level_operators
from .operators import hermitian_eigs, kernel_basis, max_abs
from .quotient import WickQuotient, check_ideal_invariance, induced_gram
from .twist import AxiomVerdict, TwistSpec
from .validation import (
    DEFAULT_TOL,
    DegenerateScalarProductError,
    RepresentativeDependenceError,
    check_tol,
)

WELL_DEFINED = "well-defined"
NEEDS_QUOTIENT = "degenerate-needs-quotient"
FAILED = "failed"


@dataclass(frozen=True)
class GramReport:
    level: int
    hermitian: bool
    min_eigenvalue: float | None  # None on a zero-dimensional level
    rank: int
    kernel_dim: int
    positive_semidefinite: bool
    nondegenerate: bool

    @property
    def positive_definite(self):
        return self.hermitian and self.positive_semidefinite and self.nondegenerate

    def to_dict(self):
        return {
            "level": self.level,
            "hermitian": self.hermitian,
            "min_eigenvalue": self.min_eigenvalue,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "positive_semidefinite": self.positive_semidefinite,
            "nondegenerate": self.nondegenerate,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def positivity_report(G, tol=DEFAULT_TOL, level=0):
    G = np.asarray(G, dtype=complex)
    size = G.shape[0]
    if size == 0:
        return GramReport(level, True, None, 0, 0, True, True)
    hermitian, eigs = hermitian_eigs(G, tol)
    kernel_dim = kernel_basis(G, tol).shape[1]
    min_eig = float(eigs[0])
    return GramReport(
        level=level,
        hermitian=hermitian,
        min_eigenvalue=min_eig,
        rank=size - kernel_dim,
        kernel_dim=kernel_dim,
        positive_semidefinite=bool(min_eig >= -tol),
        nondegenerate=kernel_dim == 0,
    )


def _check_twist_input(X, tol):
    if isinstance(X, TwistSpec):
        return X
    return TwistSpec(braid=X, tol=tol)


class DeformedFock(BaseEstimator):
    """Fock representation deformed by a braid (twist) operator.

    ``fit`` takes a :class:`TwistSpec` or a bare N^2 x N^2 braid matrix and
    builds R_n, P_n for levels 0..n_max+1; the extra level lets annihilators
    act on every level up to ``n_max``.

    Parameters
    ----------
    n_max : int
        Highest level whose scalar product is examined.
    tol : float
        Rank/positivity/residual tolerance.
    quotient : "none", "full-kernel" or array-like of level-2 generators
        Wick ideal to factor out before building the scalar product.
    """

    def __init__(self, n_max=4, tol=DEFAULT_TOL, quotient="none"):
        self.n_max = n_max
        self.tol = tol
        self.quotient = quotient

    def fit(self, X, y=None):
        tol = check_tol(self.tol)
        if int(self.n_max) < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        twist = _check_twist_input(X, tol)
        self.twist_ = twist
        self.dim_ = twist.dim
        self.R_, self.P_ = level_operators(twist.braid, self.n_max + 1)
        if self.quotient is None or (isinstance(self.quotient, str) and self.quotient == "none"):
            self.quotient_ = None
        else:
            self.quotient_ = WickQuotient(self.quotient, self.n_max + 1, tol).fit(twist)
        self.gram_reports_ = [
            positivity_report(self.P_[n], tol, n) for n in range(self.n_max + 1)
        ]
        return self

    @property
    def levels_(self):
        return range(self.n_max + 1)

    def level_dim(self, n):
        check_is_fitted(self, "P_")
        if self.quotient_ is not None:
            return self.quotient_.dims_[n]
        return self.dim_**n

    def gram(self, n):
        """Gram matrix on the working space: tensor level, or quotient if set."""
        check_is_fitted(self, "P_")
        if self.quotient_ is None:
            return self.P_[n]
        return induced_gram(self, self.quotient_, n)

    def creation(self, i, n):
        check_is_fitted(self, "P_")
        if self.quotient_ is None:
            return free_creation(i, n, self.dim_)
        return self.quotient_.creation(i, n)

    def annihilation(self, i, n, tol=None):
        """Annihilator from working level n to n-1, the Gram adjoint of creation.

        On level 0 this is the empty map, so ``a_i |0> = 0``.
        """
        check_is_fitted(self, "P_")
        if n == 0:
            return np.zeros((0, 1), dtype=complex)
        tol = self.tol if tol is None else check_tol(tol)
        lower = self.gram(n - 1)
        if lower.shape[0] and kernel_basis(lower, tol).shape[1]:
            if self.quotient_ is None:
                raise DegenerateScalarProductError(
                    f"degenerate scalar product: quotient required (level {n - 1})"
                )
            raise DegenerateScalarProductError(
                f"induced scalar product degenerate at level {n - 1}"
            )
        A = self.creation(i, n - 1)
        if lower.shape[0] == 0:
            return np.zeros((0, A.shape[0]), dtype=complex)
        return np.linalg.solve(lower, A.conj().T @ self.gram(n))


def gram_level(model, n):
    """Tensor-level Gram matrix G_n = P_n in the lexicographic basis."""
    check_is_fitted(model, "P_")
    return model.P_[n]


def creation_matrix(model, i, n):
    return model.creation(i, n)


def annihilation_matrix(model, i, n, tol=None):
    """Annihilation by x^*i from level n to n-1 (``n`` is the source level)."""
    return model.annihilation(i, n, tol)


def adjointness_residual(model, levels):
    """max |<a+_i s | t> - <s | a_i t>| over basis pairs, s on level n, t on n+1."""
    worst = 0.0
    for n in levels:
        G_lo, G_hi = model.gram(n), model.gram(n + 1)
        for i in range(1, model.dim_ + 1):
            A = model.creation(i, n)
            a = model.annihilation(i, n + 1)
            worst = max(worst, max_abs(A.conj().T @ G_hi - G_lo @ a))
    return worst


def wick_coefficients(cross):
    """c[i, j, k, l] = T^{*ij}_{k*l} from a cross matrix (row (k, l), column (i, j))."""
    cross = np.asarray(cross, dtype=complex)
    N = int(round(np.sqrt(cross.shape[0])))
    return np.transpose(cross.reshape(N, N, N, N), (2, 3, 0, 1))


def verify_wick_relation(model, tol=DEFAULT_TOL, n_max=None, cross=None):
    """Residual of a_i a+_j - delta_ij - sum_kl T^{*ij}_{k*l} a+_k a_l on levels 0..n_max.

    ``cross`` overrides the coefficients (defaults to the model's own twist).
    """
    check_is_fitted(model, "P_")
    top = model.n_max if n_max is None else n_max
    if top > model.n_max:
        raise ValueError(f"model was fitted up to level {model.n_max}")
    c = wick_coefficients(model.twist_.cross if cross is None else cross)
    N = model.dim_
    residual = 0.0
    for n in range(top + 1):
        d = model.level_dim(n)
        up = [model.creation(i, n) for i in range(1, N + 1)]
        down_hi = [model.annihilation(i, n + 1) for i in range(1, N + 1)]
        if n >= 1:
            down = [model.annihilation(l, n) for l in range(1, N + 1)]
            up_lo = [model.creation(k, n - 1) for k in range(1, N + 1)]
        for i in range(N):
            for j in range(N):
                lhs = down_hi[i] @ up[j]
                if i == j:
                    lhs = lhs - np.eye(d)
                if n >= 1:
                    for k in range(N):
                        for l in range(N):
                            if c[i, j, k, l] != 0:
                                lhs = lhs - c[i, j, k, l] * (up_lo[k] @ down[l])
                residual = max(residual, max_abs(lhs))
    return AxiomVerdict.from_residual("wick_relation", residual, tol)


@dataclass
class WellDefinedReport:
    levels: list
    quotient_levels: list | None = None
    quotient_dims: list | None = None
    adjointness: AxiomVerdict | None = None
    wick_relation: AxiomVerdict | None = None
    ideal_invariance: AxiomVerdict | None = None
    verdict: str = FAILED
    failures: list = field(default_factory=list)
    degenerate_levels: list = field(default_factory=list)


def well_defined_report(model, tol=None):
    """Aggregate positivity, nondegeneracy, adjointness and the Wick relation."""
    check_is_fitted(model, "P_")
    tol = model.tol if tol is None else check_tol(tol)
    report = WellDefinedReport(levels=list(model.gram_reports_))
    failures = report.failures
    q = model.quotient_
    if q is not None:
        report.quotient_dims = q.dims_[: model.n_max + 1]
        try:
            working = [
                positivity_report(model.gram(n), tol, n) for n in range(model.n_max + 2)
            ]
        except RepresentativeDependenceError as exc:
            failures.append(str(exc))
            report.verdict = FAILED
            return report
        report.quotient_levels = working[: model.n_max + 1]
        report.ideal_invariance = check_ideal_invariance(model, q, tol)
        if not report.ideal_invariance.passed:
            failures.append("ideal not invariant under annihilation")
        working = report.quotient_levels
    else:
        working = report.levels
    degenerate = []
    for g in working:
        if not g.hermitian:
            failures.append(f"level {g.level}: Gram not Hermitian")
        if not g.positive_semidefinite:
            failures.append(f"level {g.level}: Gram not positive semidefinite")
        if not g.nondegenerate:
            if q is not None:
                failures.append(f"level {g.level}: induced Gram degenerate")
            degenerate.append(g.level)
    # annihilators out of level n+1 need the level-n Gram invertible
    top = (min(degenerate) if degenerate else model.n_max + 1) - 1
    top = min(top, model.n_max)
    report.degenerate_levels = [n for n in degenerate if n <= model.n_max]
    if top >= 0:
        adj = adjointness_residual(model, range(top + 1))
        report.adjointness = AxiomVerdict.from_residual("adjointness", adj, tol)
        report.wick_relation = verify_wick_relation(model, tol, top)
        for v in (report.adjointness, report.wick_relation):
            if not v.passed:
                failures.append(f"{v.name} residual {v.residual:.3e}")
    if failures:
        report.verdict = FAILED
    elif degenerate:
        report.verdict = NEEDS_QUOTIENT
    else:
        report.verdict = WELL_DEFINED
    return report
