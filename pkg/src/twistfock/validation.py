"""Input validation helpers and exception types."""

from __future__ import annotations

import math

import numpy as np

DEFAULT_TOL = 1e-9


class InconsistentSpaceError(ValueError):
    """Operand dimensions do not fit the one-particle space."""


class DegenerateScalarProductError(ValueError):
    """A level Gram matrix is singular and no quotient was supplied."""


class NotAWickGeneratorError(ValueError):
    """An ideal generator is not annihilated by P_2."""


class RepresentativeDependenceError(ValueError):
    """The ideal is not contained in the kernel of the Gram matrix."""


def check_tol(tol):
    tol = float(tol)
    if not tol >= 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol!r}")
    return tol


def as_complex_matrix(M, name="matrix"):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InconsistentSpaceError(f"{name} must be a square matrix, got shape {M.shape}")
    return M


def level_of(size, dim):
    """Smallest n with ``dim**n == size``; raises :class:`InconsistentSpaceError` otherwise."""
    if dim < 1:
        raise InconsistentSpaceError(f"dimension must be >= 1, got {dim}")
    n, p = 0, 1
    while p < size and dim > 1:
        p *= dim
        n += 1
    if p != size:
        raise InconsistentSpaceError(
            f"inconsistent space: size {size} is not a power of dim {dim}"
        )
    return n


def check_level_operator(M, dim, level=None, name="operator"):
    """Validate a square complex matrix acting on ``dim**level`` coordinates.

    ``level`` may be omitted, in which case any tensor power of ``dim`` is
    accepted (for ``dim == 1`` every level has size one).
    """
    M = as_complex_matrix(M, name)
    size = M.shape[0]
    if level is not None:
        if size != dim**level:
            raise InconsistentSpaceError(
                f"inconsistent space: {name} has size {size}, expected {dim**level}"
            )
    else:
        level_of(size, dim)
    return M


def infer_dim(braid):
    """Single-particle dimension N of a level-2 operator of shape (N^2, N^2)."""
    braid = as_complex_matrix(braid, "level-2 operator")
    N = math.isqrt(braid.shape[0])
    if N < 1 or N * N != braid.shape[0]:
        raise InconsistentSpaceError(
            f"level-2 operator must be N^2 x N^2, got {braid.shape}"
        )
    return N
