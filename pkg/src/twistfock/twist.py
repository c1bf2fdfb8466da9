"""Twist data and the algebraic conditions imposed on it.

The cross operator ``T`` is an N^2 x N^2 matrix whose entry at row ``(k, l)``
and column ``(i, j)`` is the coefficient of ``x^k (x) x^*l`` in
``T(x^*i (x) x^j)``.  Its braid form ``T~`` acts on E (x) E with
``T~[(k, l), (i, j)] = T[(l, j), (k, i)]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import embed_leg, max_abs
from .validation import (
    DEFAULT_TOL,
    InconsistentSpaceError,
    as_complex_matrix,
    check_level_operator,
    check_tol,
    infer_dim,
)


@dataclass(frozen=True)
class AxiomVerdict:
    name: str
    residual: float
    passed: bool

    @classmethod
    def from_residual(cls, name, residual, tol):
        residual = float(residual)
        return cls(name, residual, bool(residual <= tol))

    def to_dict(self):
        return {"name": self.name, "residual": self.residual, "passed": self.passed}

    @classmethod
    def from_dict(cls, d):
        return cls(d["name"], float(d["residual"]), bool(d["passed"]))


def _as_tensor(M, N):
    return np.asarray(M, dtype=complex).reshape(N, N, N, N)


def ttilde_from_cross(T):
    """Braid form of a cross operator: ``T~^{ij}_{kl} = T^{*ki}_{l*j}``."""
    N = infer_dim(T)
    T4 = _as_tensor(T, N)  # T4[k, l, i, j] = T^{*ij}_{k*l}
    return np.einsum("ljki->klij", T4).reshape(N * N, N * N)


def cross_from_ttilde(braid):
    """Inverse of :func:`ttilde_from_cross`."""
    N = infer_dim(braid)
    B4 = _as_tensor(braid, N)
    return np.einsum("cadb->abcd", B4).reshape(N * N, N * N)


@dataclass(frozen=True, eq=False)
class TwistSpec:
    """Cross operator, its braid form, and optional ``B`` / Hecke parameter ``mu``.

    Supply ``cross`` or ``braid`` (or both, if they agree); the missing one is
    derived.  ``involutive`` requests the extra check ``T~^2 = id`` used for
    the symmetric ``T~ = B = S`` case.
    """

    cross: np.ndarray | None = None
    braid: np.ndarray | None = None
    B: np.ndarray | None = None
    mu: complex | None = None
    involutive: bool = False
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        if self.cross is None and self.braid is None:
            raise ValueError("TwistSpec needs a cross operator or its braid form")
        tol = check_tol(self.tol)
        cross = None if self.cross is None else as_complex_matrix(self.cross, "cross operator")
        braid = None if self.braid is None else as_complex_matrix(self.braid, "braid operator")
        if cross is None:
            cross = cross_from_ttilde(braid)
        elif braid is None:
            braid = ttilde_from_cross(cross)
        else:
            if cross.shape != braid.shape:
                raise InconsistentSpaceError("cross and braid operators differ in shape")
            if max_abs(ttilde_from_cross(cross) - braid) > tol:
                raise ValueError("cross and braid operators do not agree under the reshuffle")
        N = infer_dim(braid)
        B = None if self.B is None else check_level_operator(self.B, N, 2, "B")
        mu = self.mu
        if mu is not None:
            mu = complex(mu)
            if mu == 0:
                raise ValueError("Hecke parameter mu must be nonzero")
        object.__setattr__(self, "cross", cross)
        object.__setattr__(self, "braid", braid)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "tol", tol)

    @property
    def dim(self):
        return infer_dim(self.braid)

    def transformed(self, U):
        """Simultaneous basis change ``U`` of E on every leg."""
        UU = np.kron(U, U)

        def conj(M):
            return None if M is None else UU @ M @ UU.conj().T

        return TwistSpec(
            braid=conj(self.braid), B=conj(self.B), mu=self.mu,
            involutive=self.involutive, tol=self.tol,
        )


def check_star_convention(T, tol=DEFAULT_TOL):
    """Residual of ``conj(T^{*ij}_{k*l}) = T^{*ji}_{l*k}``.

    This is the same as Hermiticity of the braid form.
    """
    N = infer_dim(T)
    T4 = _as_tensor(T, N)
    swapped = np.transpose(T4, (1, 0, 3, 2))
    return AxiomVerdict.from_residual("star_convention", max_abs(T4.conj() - swapped), tol)


def braid_residual(X, N):
    """Residual of X1 X2 X1 = X2 X1 X2 on level 3."""
    X1 = embed_leg(X, 1, 3, N)
    X2 = embed_leg(X, 2, 3, N)
    return max_abs(X1 @ X2 @ X1 - X2 @ X1 @ X2)


def check_yang_baxter(braid, tol=DEFAULT_TOL):
    N = infer_dim(braid)
    return AxiomVerdict.from_residual("yang_baxter", braid_residual(braid, N), tol)


def check_norm_bound(braid, tol=DEFAULT_TOL):
    braid = as_complex_matrix(braid)
    smax = float(np.linalg.norm(braid, 2)) if braid.size else 0.0
    residual = max(0.0, smax - 1.0)
    return AxiomVerdict("norm_bound", residual, bool(smax <= 1.0 + tol))


def check_consistency(braid, B, tol=DEFAULT_TOL):
    """The three compatibility conditions between ``T~`` and ``B``.

    The mixed condition B1 T~2 T~1 = T~2 T~1 B2 is evaluated with the braid
    form on E^(x)3, the only reading under which all factors share a space.
    """
    if B is None:
        raise ValueError("B required")
    N = infer_dim(braid)
    B = check_level_operator(B, N, 2, "B")
    B1, B2 = embed_leg(B, 1, 3, N), embed_leg(B, 2, 3, N)
    T1, T2 = embed_leg(braid, 1, 3, N), embed_leg(braid, 2, 3, N)
    I = np.eye(N * N)
    return (
        AxiomVerdict.from_residual("consistency_braid", max_abs(B1 @ B2 @ B1 - B2 @ B1 @ B2), tol),
        AxiomVerdict.from_residual("consistency_mixed", max_abs(B1 @ T2 @ T1 - T2 @ T1 @ B2), tol),
        AxiomVerdict.from_residual("consistency_kernel", max_abs((I + braid) @ (I - B)), tol),
    )


def check_hecke(braid, mu, tol=DEFAULT_TOL):
    """Residual of (id + T~)(id - T~/mu), the kernel condition with B = T~/mu."""
    mu = complex(mu)
    if mu == 0:
        raise ValueError("Hecke parameter mu must be nonzero")
    braid = as_complex_matrix(braid)
    I = np.eye(braid.shape[0])
    return AxiomVerdict.from_residual("hecke", max_abs((I + braid) @ (I - braid / mu)), tol)


def check_involution(braid, tol=DEFAULT_TOL):
    braid = as_complex_matrix(braid)
    return AxiomVerdict.from_residual(
        "involution", max_abs(braid @ braid - np.eye(braid.shape[0])), tol
    )


def check_twist(twist, tol=DEFAULT_TOL):
    """Run every condition that applies to ``twist``; returns a list of verdicts."""
    verdicts = [
        check_star_convention(twist.cross, tol),
        check_yang_baxter(twist.braid, tol),
        check_norm_bound(twist.braid, tol),
    ]
    if twist.B is not None:
        verdicts.extend(check_consistency(twist.braid, twist.B, tol))
    if twist.mu is not None:
        verdicts.append(check_hecke(twist.braid, twist.mu, tol))
    if twist.involutive:
        verdicts.append(check_involution(twist.braid, tol))
    return verdicts
