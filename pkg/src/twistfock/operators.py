"""Dense linear algebra on tensor powers of the one-particle space E = C^N.

Every level-n object is stored in the lexicographic multi-index basis
``e_(i1,...,in)``, ``1 <= ik <= N``, which is exactly the ordering produced by
:func:`numpy.kron`.  Multi-index entries and leg positions are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .validation import (
    DEFAULT_TOL,
    InconsistentSpaceError,
    as_complex_matrix,
    check_level_operator,
    check_tol,
    level_of,
)


@dataclass(frozen=True)
class StateSpace:
    """One-particle dimension ``dim`` and the highest level ``n_max`` in use."""

    dim: int
    n_max: int = 4

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if int(self.n_max) < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    def level_dim(self, n):
        return self.dim**n

    def multi_indices(self, n):
        return multi_indices(self.dim, n)


def multi_indices(dim, n):
    """All level-n multi-indices in lexicographic order."""
    return list(itertools.product(range(1, dim + 1), repeat=n))


def rank_of(index, dim):
    """Lexicographic rank of a multi-index, a bijection onto ``range(dim**n)``."""
    r = 0
    for i in index:
        if not 1 <= i <= dim:
            raise ValueError(f"multi-index entry {i} outside [1, {dim}]")
        r = r * dim + (i - 1)
    return r


def unrank(r, dim, n):
    if not 0 <= r < dim**n:
        raise ValueError(f"rank {r} outside [0, {dim**n})")
    out = []
    for _ in range(n):
        r, i = divmod(r, dim)
        out.append(i + 1)
    return tuple(reversed(out))


def basis_vector(index, dim):
    v = np.zeros(dim ** len(index), dtype=complex)
    v[rank_of(index, dim)] = 1.0
    return v


def identity(dim, n):
    return np.eye(dim**n, dtype=complex)


def flip(dim):
    """The transposition x^i (x) x^j -> x^j (x) x^i on E (x) E."""
    F = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            F[j * dim + i, i * dim + j] = 1.0
    return F


def kron(A, B, dim):
    """Tensor product of a level-m and a level-n operator over the same space."""
    A = check_level_operator(A, dim, name="left factor")
    B = check_level_operator(B, dim, name="right factor")
    return np.kron(A, B)


def embed_leg(M, i, n, dim):
    """Place the level-2 operator ``M`` on legs ``i, i+1`` of level ``n``."""
    M = check_level_operator(M, dim, level=2, name="leg operator")
    if not 1 <= i <= n - 1:
        raise ValueError(f"leg position {i} out of range [1, {n - 1}]")
    left = np.eye(dim ** (i - 1), dtype=complex)
    right = np.eye(dim ** (n - i - 1), dtype=complex)
    return np.kron(np.kron(left, M), right)


def kernel_basis(M, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the numerical null space of ``M``.

    A singular direction counts as null when its singular value is at most
    ``tol * sigma_max``; the zero matrix has the whole space as kernel.
    """
    M = np.asarray(M, dtype=complex)
    tol = check_tol(tol)
    n = M.shape[1]
    if M.size == 0:
        return np.eye(n, dtype=complex)
    _, s, Vh = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(n, dtype=complex)
    # singular values beyond min(M.shape) are implicitly zero
    s_full = np.zeros(n)
    s_full[: s.size] = s
    null = s_full <= tol * smax
    return Vh[null].conj().T


def range_basis(M, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the numerical column space of ``M``."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    return U[:, s > tol * s[0]]


def hermitian_eigs(M, tol=DEFAULT_TOL):
    """Return ``(is_hermitian, eigenvalues)``; eigenvalues of the Hermitian part, ascending."""
    M = as_complex_matrix(M)
    tol = check_tol(tol)
    deviation = np.max(np.abs(M - M.conj().T)) if M.size else 0.0
    H = (M + M.conj().T) / 2
    return bool(deviation <= tol), np.linalg.eigvalsh(H)


def dual_vector(v, dim):
    """Conjugate coordinates of a level-n vector with the multi-index order reversed."""
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise InconsistentSpaceError("dual_vector expects a coordinate vector")
    n = level_of(v.size, dim)
    return np.transpose(v.reshape((dim,) * n)).reshape(-1).conj()


def base_pairing(dual, v, dim):
    """Base pairing of a dual (reversed, conjugated) vector with a primal vector.

    ``base_pairing(dual_vector(s), t)`` equals the standard inner product s^H t.
    """
    dual = np.asarray(dual, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if dual.shape != v.shape:
        raise InconsistentSpaceError("pairing needs vectors of the same level")
    n = level_of(v.size, dim)
    unreversed = np.transpose(dual.reshape((dim,) * n)).reshape(-1)
    return complex(unreversed @ v)


def max_abs(M):
    """Max-entry norm used for every residual; zero for empty arrays."""
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0
