"""Level operators R_n, P_n and the undeformed creation/derivation maps."""

from __future__ import annotations

import numpy as np

from .operators import embed_leg
from .validation import as_complex_matrix, infer_dim


def build_Rn(braid, n):
    """R_n = id + T1 + T1 T2 + ... + T1 T2 ... T_{n-1}, Tk the braid on legs k, k+1."""
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    braid = as_complex_matrix(braid, "braid operator")
    N = infer_dim(braid)
    word = np.eye(N**n, dtype=complex)
    R = word.copy()
    for k in range(1, n):
        word = word @ embed_leg(braid, k, n, N)
        R += word
    return R


def build_Pn(braid, n):
    """P_1 = id and P_{m+1} = (id (x) P_m) R_{m+1}."""
    return level_operators(braid, n)[1][n]


def level_operators(braid, n_top):
    """Lists ``R, P`` indexed by level 0..n_top (level 0 is the 1x1 identity)."""
    braid = as_complex_matrix(braid, "braid operator")
    N = infer_dim(braid)
    one = np.eye(1, dtype=complex)
    R = [one, np.eye(N, dtype=complex)]
    P = [one, np.eye(N, dtype=complex)]
    for m in range(2, n_top + 1):
        R.append(build_Rn(braid, m))
        P.append(np.kron(np.eye(N), P[m - 1]) @ R[m])
    return R[: n_top + 1], P[: n_top + 1]


def free_creation(i, n, dim):
    """Left tensoring by x^i, a (dim^(n+1) x dim^n) matrix; ``i`` is 1-based."""
    if not 1 <= i <= dim:
        raise ValueError(f"species index {i} outside [1, {dim}]")
    e = np.zeros((dim, 1), dtype=complex)
    e[i - 1, 0] = 1.0
    return np.kron(e, np.eye(dim**n, dtype=complex))


def free_derivation(i, n, dim):
    """Removes a leading x^i from level n (n >= 1); the adjoint of :func:`free_creation`."""
    return free_creation(i, n - 1, dim).T


def twisted_annihilation(braid, i, n):
    """The map level n -> n-1 given by ``free_derivation(i) @ R_n``.

    It is the Gram adjoint of creation whenever that adjoint exists, and stays
    defined on degenerate levels.
    """
    N = infer_dim(braid)
    return free_derivation(i, n, N) @ build_Rn(braid, n)
