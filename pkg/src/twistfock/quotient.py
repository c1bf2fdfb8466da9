"""Quotients of the tensor algebra by ideals generated inside ker P_2."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .levels import free_creation, twisted_annihilation
from .operators import kernel_basis, max_abs, range_basis
from .twist import AxiomVerdict, TwistSpec
from .validation import (
    DEFAULT_TOL,
    InconsistentSpaceError,
    NotAWickGeneratorError,
    RepresentativeDependenceError,
    check_tol,
    level_of,
)


def check_wick_generators(generators, P2, tol=DEFAULT_TOL):
    """Return the generators as an (N^2, k) array after checking ``P2 g = 0``."""
    P2 = np.asarray(P2, dtype=complex)
    G = np.asarray(generators, dtype=complex)
    if G.size == 0:
        return np.zeros((P2.shape[0], 0), dtype=complex)
    G = np.atleast_2d(G)
    if G.shape[1] != P2.shape[0]:
        raise InconsistentSpaceError(
            f"generators must be level-2 vectors of length {P2.shape[0]}, got {G.shape}"
        )
    for g in G:
        residual = max_abs(P2 @ g)
        if residual > tol:
            raise NotAWickGeneratorError(
                f"not a Wick generator: |P_2 g| = {residual:.3e} exceeds {tol:.1e}"
            )
    return G.T


def ideal_level_span(generators, n, dim, p2=None, tol=DEFAULT_TOL):
    """Orthonormal basis (columns) of sum_a E^(x)a (x) I_2 (x) E^(x)(n-2-a).

    ``generators`` holds level-2 vectors as rows.  When ``p2`` is given each
    generator is first checked to lie in its kernel.
    """
    if n < 2:
        raise ValueError(f"ideal spans start at level 2, got {n}")
    if p2 is not None:
        gens = check_wick_generators(generators, p2, tol)
    else:
        gens = np.asarray(generators, dtype=complex).reshape(-1, dim * dim).T
    if gens.shape[1] == 0:
        return np.zeros((dim**n, 0), dtype=complex)
    blocks = [
        np.kron(np.kron(np.eye(dim**a), gens), np.eye(dim ** (n - 2 - a)))
        for a in range(n - 1)
    ]
    return range_basis(np.hstack(blocks), tol)


def quotient_basis(n, span, dim):
    """Orthonormal complement ``Q`` of the ideal span and the quotient map ``Q^H``."""
    size = dim**n
    span = np.asarray(span, dtype=complex).reshape(size, -1)
    if span.shape[1] == 0:
        Q = np.eye(size, dtype=complex)
    else:
        U = np.linalg.svd(span, full_matrices=True)[0]
        Q = U[:, span.shape[1]:]
    return Q, Q.conj().T


def induced_gram(model, quotient, n):
    """Gram matrix of the quotient representatives under the level-n product."""
    G = model.P_[n]
    span = quotient.spans_[n]
    leak = max_abs(G @ span)
    if leak > quotient.tol:
        raise RepresentativeDependenceError(
            f"ideal not contained in Gram kernel at level {n} (residual {leak:.3e})"
        )
    Q = quotient.bases_[n]
    return Q.conj().T @ G @ Q


class WickQuotient(TransformerMixin, BaseEstimator):
    """Per-level ideal spans and orthogonal-complement coordinates of TE / I.

    Parameters
    ----------
    generators : "full-kernel" or array-like of shape (k, N^2)
        Level-2 generators of the ideal.  ``"full-kernel"`` takes the whole
        numerical kernel of P_2 = id + T~.
    n_max : int
        Highest level to compute.
    tol : float
        Kernel, rank and membership tolerance.
    """

    def __init__(self, generators="full-kernel", n_max=4, tol=DEFAULT_TOL):
        self.generators = generators
        self.n_max = n_max
        self.tol = tol

    def fit(self, X, y=None):
        twist = X if isinstance(X, TwistSpec) else TwistSpec(braid=X)
        tol = check_tol(self.tol)
        N = twist.dim
        P2 = np.eye(N * N) + twist.braid
        if isinstance(self.generators, str):
            if self.generators != "full-kernel":
                raise ValueError(f"unknown generator mode {self.generators!r}")
            gens = kernel_basis(P2, tol).T
        else:
            gens = check_wick_generators(self.generators, P2, tol).T
        self.dim_ = N
        self.generators_ = gens
        self.spans_ = [np.zeros((N**n, 0), dtype=complex) for n in (0, 1)]
        for n in range(2, self.n_max + 1):
            self.spans_.append(ideal_level_span(gens, n, N, tol=tol))
        self.bases_ = []
        self.projections_ = []
        for n, span in enumerate(self.spans_):
            Q, proj = quotient_basis(n, span, N)
            self.bases_.append(Q)
            self.projections_.append(proj)
        self.dims_ = [Q.shape[1] for Q in self.bases_]
        return self

    def _level(self, width, level):
        if level is not None:
            return level
        if self.dim_ == 1:
            raise ValueError("level must be given explicitly when dim == 1")
        return level_of(width, self.dim_)

    def transform(self, X, level=None):
        """Quotient coordinates of level vectors given as rows of ``X``."""
        check_is_fitted(self, "bases_")
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        n = self._level(X.shape[1], level)
        return X @ self.projections_[n].T

    def inverse_transform(self, X, level):
        """Orthogonal representatives of quotient coordinates."""
        check_is_fitted(self, "bases_")
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        return X @ self.bases_[level].T

    def creation(self, i, n):
        """Creation x^i from quotient level n to n+1 in quotient coordinates."""
        check_is_fitted(self, "bases_")
        A = free_creation(i, n, self.dim_)
        return self.projections_[n + 1] @ A @ self.bases_[n]


def check_ideal_invariance(model, quotient, tol=DEFAULT_TOL, n_max=None):
    """Stability of the ideal under annihilation, and annihilation by the dual ideal.

    Two contributions are maximised:

    * the component of ``a_i v`` outside I_{n-1} for v in I_n, with the
      twisted annihilator ``a_i = d_i R_n``;
    * the quotient coordinates of ``a_{g*} t`` for every generator g, where
      ``a_{g*} = sum conj(g_ab) a_b a_a`` (reversed order).
    """
    check_is_fitted(quotient, "bases_")
    N = quotient.dim_
    braid = model.twist_.braid
    top = min(quotient.n_max, n_max if n_max is not None else quotient.n_max)
    ann = {
        (i, n): twisted_annihilation(braid, i, n)
        for n in range(1, top + 1)
        for i in range(1, N + 1)
    }
    residual = 0.0
    for n in range(2, top + 1):
        span = quotient.spans_[n]
        lower = quotient.spans_[n - 1]
        outside = np.eye(N ** (n - 1)) - lower @ lower.conj().T
        for i in range(1, N + 1):
            residual = max(residual, max_abs(outside @ ann[i, n] @ span))
    for g in quotient.generators_:
        g = g.reshape(N, N)
        for n in range(2, top + 1):
            op = sum(
                np.conj(g[a, b]) * (ann[b + 1, n - 1] @ ann[a + 1, n])
                for a in range(N)
                for b in range(N)
            )
            residual = max(residual, max_abs(quotient.projections_[n - 2] @ op))
    return AxiomVerdict.from_residual("ideal_invariance", residual, tol)
