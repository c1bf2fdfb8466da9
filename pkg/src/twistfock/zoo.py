"""Built-in twist families, epsilon-commutative algebras and the Clifford/Grassmann checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .operators import flip, max_abs, rank_of
from .quotient import WickQuotient
from .twist import AxiomVerdict, TwistSpec
from .validation import DEFAULT_TOL

PRESETS = ("free", "boson", "fermion", "qflip", "epsilon")


@dataclass(frozen=True, eq=False)
class EpsilonSpec:
    """Integer matrices ``sigma`` (symmetric), ``omega`` (antisymmetric) and ``q != 0``."""

    sigma: np.ndarray
    omega: np.ndarray
    q: complex = 1.0

    def __post_init__(self):
        sigma = np.asarray(self.sigma)
        omega = np.asarray(self.omega)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape != omega.shape:
            raise ValueError("sigma and omega must be square matrices of the same size")
        for name, M in (("sigma", sigma), ("omega", omega)):
            if not np.all(np.asarray(M) == np.round(M)):
                raise ValueError(f"{name} must be integer-valued")
        sigma = np.round(sigma).astype(int)
        omega = np.round(omega).astype(int)
        if not np.array_equal(sigma, sigma.T):
            raise ValueError("sigma must be symmetric")
        if not np.array_equal(omega, -omega.T):
            raise ValueError("omega must be antisymmetric")
        q = complex(self.q)
        if q == 0:
            raise ValueError("q must be nonzero")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "q", q)

    @property
    def dim(self):
        return self.sigma.shape[0]


def epsilon_matrix(spec, tol=DEFAULT_TOL):
    """eps_ij = (-1)^sigma_ij q^omega_ij, checked for eps_ij eps_ji = 1."""
    if spec.q == 0:
        raise ValueError("q must be nonzero")
    N = spec.dim
    q = complex(spec.q)
    eps = np.array(
        [
            [(-1) ** int(spec.sigma[i, j]) * q ** int(spec.omega[i, j]) for j in range(N)]
            for i in range(N)
        ],
        dtype=complex,
    )
    deviation = max_abs(eps * eps.T - 1)
    if deviation > tol:
        raise ValueError(f"eps_ij eps_ji deviates from 1 by {deviation:.3e}")
    return eps


def diagonal_braid(eps):
    """S(x^i (x) x^j) = eps^ij x^j (x) x^i."""
    eps = np.asarray(eps, dtype=complex)
    N = eps.shape[0]
    S = np.zeros((N * N, N * N), dtype=complex)
    for i in range(N):
        for j in range(N):
            S[j * N + i, i * N + j] = eps[i, j]
    return S


def preset_twist(name, dim, *, q=None, epsilon=None):
    """TwistSpec for one of :data:`PRESETS`.

    ``qflip`` needs ``q``; ``epsilon`` needs an :class:`EpsilonSpec` and sets
    ``B = S`` together with the involution check.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    F = flip(dim)
    if name == "free":
        return TwistSpec(braid=np.zeros_like(F))
    if name == "boson":
        return TwistSpec(braid=F)
    if name == "fermion":
        return TwistSpec(braid=-F)
    if name == "qflip":
        if q is None:
            raise ValueError("qflip preset needs q")
        return TwistSpec(braid=complex(q) * F)
    if name == "epsilon":
        if epsilon is None:
            raise ValueError("epsilon preset needs an EpsilonSpec")
        if epsilon.dim != dim:
            raise ValueError(f"EpsilonSpec has dim {epsilon.dim}, expected {dim}")
        S = diagonal_braid(epsilon_matrix(epsilon))
        return TwistSpec(braid=S, B=S, involutive=True)
    raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")


def lambda_quotient(spec, n_max, tol=DEFAULT_TOL):
    """Quotient of TE by the ideal generated from ker(id + S); needs eps_ii = -1."""
    eps = epsilon_matrix(spec, tol)
    if np.any(np.abs(np.diag(eps) + 1) > tol):
        raise ValueError("Lambda_eps(N) requires eps_ii = -1 for every i")
    S = diagonal_braid(eps)
    return WickQuotient("full-kernel", n_max, tol).fit(TwistSpec(braid=S))


def lambda_dims(spec, n_max, tol=DEFAULT_TOL):
    """Quotient dimensions of Lambda_eps(N) on levels 0..n_max."""
    return list(lambda_quotient(spec, n_max, tol).dims_)


def lambda_monomials(N, n):
    """Strictly increasing index tuples: the ordered-monomial basis of level n."""
    return list(itertools.combinations(range(1, N + 1), n))


def lambda_multiplication(spec, tol=DEFAULT_TOL):
    """Left multiplication by x^1 .. x^N on Lambda_eps(N) in the ordered-monomial basis.

    Structure constants come from the normal form x^i x^j = eps^ij x^j x^i and
    (x^i)^2 = 0, so they are exact products of eps entries.  They are checked
    against the numerical quotient of TE by ker(id + S) before being returned.

    Returns ``(matrices, dims)``; the basis is levels 0..N concatenated.
    """
    N = spec.dim
    eps = epsilon_matrix(spec, tol)
    quotient = lambda_quotient(spec, N + 1, tol)
    basis = [m for n in range(N + 1) for m in lambda_monomials(N, n)]
    dims = [len(lambda_monomials(N, n)) for n in range(N + 1)]
    if dims != quotient.dims_[: N + 1] or quotient.dims_[N + 1] != 0:
        raise ValueError(f"monomial counts {dims} disagree with quotient {quotient.dims_}")
    position = {m: k for k, m in enumerate(basis)}

    def image(index):
        e = np.zeros(N ** len(index), dtype=complex)
        e[rank_of(index, N)] = 1.0
        return quotient.projections_[len(index)] @ e

    mats = []
    residual = 0.0
    for i in range(1, N + 1):
        L = np.zeros((len(basis), len(basis)), dtype=complex)
        for m in basis:
            if len(m) == N:
                continue
            product = image((i,) + m)
            if i in m:
                residual = max(residual, max_abs(product))
                continue
            coeff = np.prod([eps[i - 1, j - 1] for j in m if j < i]) if m else 1.0
            target = tuple(sorted(m + (i,)))
            L[position[target], position[m]] = coeff
            residual = max(residual, max_abs(product - coeff * image(target)))
        mats.append(L)
    if residual > tol:
        raise ValueError(f"normal form disagrees with the quotient (residual {residual:.3e})")
    return mats, dims


def clifford_generators():
    """The first two Pauli matrices: Hermitian, anticommuting, squaring to one."""
    e1 = np.array([[0, 1], [1, 0]], dtype=complex)
    e2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    return e1, e2


def grassmann_variable():
    return np.array([[0, 1], [0, 0]], dtype=complex)


@dataclass(frozen=True)
class PairElement:
    """Element (a, b) of the componentwise product algebra over one Grassmann variable."""

    first: np.ndarray
    second: np.ndarray

    def __matmul__(self, other):
        return PairElement(self.first @ other.first, self.second @ other.second)

    def __sub__(self, other):
        return PairElement(self.first - other.first, self.second - other.second)

    def max_abs(self):
        return max(max_abs(self.first), max_abs(self.second))


def clifford_grassmann_check(tol=DEFAULT_TOL):
    """Verdicts for the Clifford relations, Theta anticommutation and the pair model.

    Returns ``(verdicts, notes)``.  The squares of the pair generators are
    reported in ``notes`` rather than judged.
    """
    e = clifford_generators()
    I2 = np.eye(2)
    clifford = 0.0
    for i in range(2):
        for j in range(2):
            clifford = max(clifford, max_abs(e[i] @ e[j] + e[j] @ e[i] - 2 * (i == j) * I2))

    lam = EpsilonSpec(sigma=np.eye(2, dtype=int), omega=np.zeros((2, 2), dtype=int))
    (x1, x2), _ = lambda_multiplication(lam, tol)
    theta = [np.kron(x1, e[0]), np.kron(x2, e[1])]
    anti = max(
        max_abs(theta[0] @ theta[1] + theta[1] @ theta[0]),
        max_abs(theta[0] @ theta[0]),
        max_abs(theta[1] @ theta[1]),
    )

    Th = grassmann_variable()
    one = np.eye(2, dtype=complex)
    y1, y2 = PairElement(Th, one), PairElement(one, Th)
    target = PairElement(Th, Th)
    pair = max(
        (y1 @ y2 - target).max_abs(),
        (y2 @ y1 - target).max_abs(),
        max_abs(Th @ Th),
    )
    sq1, sq2 = y1 @ y1, y2 @ y2
    notes = [
        "pair model: (x1)^2 = (Theta^2, 1) has components "
        f"({max_abs(sq1.first):g}, {max_abs(sq1.second):g}); "
        f"(x2)^2 has ({max_abs(sq2.first):g}, {max_abs(sq2.second):g}); "
        "squares do not vanish componentwise"
    ]
    verdicts = [
        AxiomVerdict.from_residual("clifford_relations", clifford, tol),
        AxiomVerdict.from_residual("theta_anticommutation", anti, tol),
        AxiomVerdict.from_residual("pair_representation", pair, tol),
    ]
    return verdicts, notes
