import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from twistfock.fock import DeformedFock, creation_matrix
from twistfock.operators import basis_vector, flip
from twistfock.quotient import (
    WickQuotient,
    check_ideal_invariance,
    check_wick_generators,
    ideal_level_span,
    induced_gram,
    quotient_basis,
)
from twistfock.twist import TwistSpec
from twistfock.validation import NotAWickGeneratorError, RepresentativeDependenceError
from twistfock.zoo import EpsilonSpec, preset_twist

from oracles import antisymmetric_dim, span_closure_dim, symmetric_dim


def e(*idx, N=2):
    return basis_vector(idx, N)


FERMION_GENS = np.array([e(1, 1), e(2, 2), e(1, 2) + e(2, 1)])
LAMBDA_GENS = np.array([e(1, 1), e(2, 2), e(1, 2) - e(2, 1)])
BOSON_GENS = np.array([e(1, 2) - e(2, 1)])


def test_trivial_ideal_span():
    for n in (2, 3, 4):
        assert ideal_level_span(np.zeros((0, 4)), n, 2).shape == (2**n, 0)


def test_span_rejects_level_below_two():
    with pytest.raises(ValueError):
        ideal_level_span(FERMION_GENS, 1, 2)


@pytest.mark.parametrize("n,expected", [(2, 3), (3, 8), (4, 16)])
def test_fermion_ideal_dims_match_exact_oracle(n, expected):
    assert span_closure_dim(FERMION_GENS.real.astype(int), n, 2) == expected
    assert ideal_level_span(FERMION_GENS, n, 2).shape[1] == expected


def test_lambda_ideal_quotient_dims():
    dims = [2**n - ideal_level_span(LAMBDA_GENS, n, 2).shape[1] for n in (2, 3)]
    assert dims == [1, 0]
    assert [2**n - span_closure_dim(LAMBDA_GENS.real.astype(int), n, 2) for n in (2, 3)] == [1, 0]


def test_generator_outside_kernel_rejected():
    P2 = np.eye(4) - flip(2)
    with pytest.raises(NotAWickGeneratorError, match="not a Wick generator"):
        check_wick_generators([e(1, 2)], P2)
    with pytest.raises(NotAWickGeneratorError):
        ideal_level_span([e(1, 2)], 3, 2, p2=P2)
    with pytest.raises(NotAWickGeneratorError):
        WickQuotient(generators=[e(1, 2)]).fit(-flip(2))


def test_quotient_basis_identity_for_trivial_ideal():
    Q, proj = quotient_basis(2, np.zeros((4, 0)), 2)
    np.testing.assert_array_equal(Q, np.eye(4))
    np.testing.assert_array_equal(proj, np.eye(4))


def test_quotient_basis_fermion_representative():
    span = ideal_level_span(FERMION_GENS, 2, 2)
    Q, proj = quotient_basis(2, span, 2)
    assert Q.shape == (4, 1)
    rep = Q[:, 0] / Q[1, 0]
    np.testing.assert_allclose(rep, e(1, 2) - e(2, 1), atol=1e-14)
    np.testing.assert_allclose(proj @ span, 0, atol=1e-14)


def test_quotient_basis_full_space():
    Q, proj = quotient_basis(2, np.eye(4), 2)
    assert Q.shape == (4, 0) and proj.shape == (0, 4)


def test_induced_gram_free_trivial():
    model = DeformedFock(n_max=3).fit(np.zeros((4, 4)))
    quo = WickQuotient(generators=np.zeros((0, 4)), n_max=3).fit(model.twist_)
    for n in range(4):
        np.testing.assert_array_equal(induced_gram(model, quo, n), np.eye(2**n))


def test_induced_gram_fermion_level_two():
    model = DeformedFock(n_max=3).fit(-flip(2))
    quo = WickQuotient(n_max=3).fit(model.twist_)
    G = induced_gram(model, quo, 2)
    np.testing.assert_allclose(G, [[2]], atol=1e-14)
    assert induced_gram(model, quo, 3).shape == (0, 0)


def test_induced_gram_lambda_positive_definite():
    twist = preset_twist("epsilon", 2, epsilon=EpsilonSpec(np.eye(2, dtype=int), np.zeros((2, 2), dtype=int)))
    model = DeformedFock(n_max=2).fit(twist)
    quo = WickQuotient(n_max=2).fit(twist)
    G = induced_gram(model, quo, 2)
    assert G.shape == (1, 1) and G[0, 0].real > 1


def test_induced_gram_rejects_ideal_outside_kernel():
    # x1 (x) x1 lies in the fermion kernel, but the boson Gram does not vanish on it
    model = DeformedFock(n_max=2).fit(flip(2))
    quo = WickQuotient(generators=[e(1, 1)], n_max=2).fit(-flip(2))
    with pytest.raises(RepresentativeDependenceError, match="ideal not contained in Gram kernel"):
        induced_gram(model, quo, 2)


def test_ideal_invariance_trivial():
    model = DeformedFock(n_max=3).fit(0.5 * flip(2))
    quo = WickQuotient(generators=np.zeros((0, 4)), n_max=3).fit(model.twist_)
    v = check_ideal_invariance(model, quo)
    assert v.passed and v.residual == 0


@pytest.mark.parametrize("name", ["fermion", "boson"])
def test_ideal_invariance_full_kernel(name):
    model = DeformedFock(n_max=4).fit(preset_twist(name, 2))
    quo = WickQuotient(n_max=4).fit(model.twist_)
    v = check_ideal_invariance(model, quo, 1e-9, n_max=4)
    assert v.passed and v.residual <= 1e-12


def test_ideal_invariance_detects_foreign_ideal():
    # the boson ideal is not stable under free annihilation: a_1 maps e12 - e21 to e2
    model = DeformedFock(n_max=3).fit(np.zeros((4, 4)))
    quo = WickQuotient(generators=BOSON_GENS, n_max=3).fit(flip(2))
    assert not check_ideal_invariance(model, quo).passed


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("name,formula", [("boson", symmetric_dim), ("fermion", antisymmetric_dim)])
def test_classical_dimension_formulas(N, name, formula):
    quo = WickQuotient(n_max=4).fit(preset_twist(name, N))
    assert quo.dims_ == [formula(N, n) for n in range(5)]
    for n in range(2, 5):
        assert quo.dims_[n] + quo.spans_[n].shape[1] == N**n


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("name", ["boson", "fermion"])
def test_ideal_dims_against_exact_span(N, name):
    quo = WickQuotient(n_max=3).fit(preset_twist(name, N))
    # integer generators spanning the same kernel
    if name == "boson":
        ints = [basis_vector((i, j), N) - basis_vector((j, i), N) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    else:
        ints = [basis_vector((i, j), N) + basis_vector((j, i), N) for i in range(1, N + 1) for j in range(i, N + 1)]
    ints = np.array(ints).real.astype(int)
    assert quo.generators_.shape[0] == len(ints)
    for n in (2, 3):
        assert quo.spans_[n].shape[1] == span_closure_dim(ints, n, N)


@pytest.mark.parametrize("name", ["boson", "fermion"])
def test_creation_descends_to_quotient(name):
    N = 2
    quo = WickQuotient(n_max=4).fit(preset_twist(name, N))
    model = DeformedFock(n_max=3).fit(preset_twist(name, N))
    for n in range(3):
        for i in (1, 2):
            lhs = quo.projections_[n + 1] @ creation_matrix(model, i, n)
            rhs = quo.creation(i, n) @ quo.projections_[n]
            assert lhs.shape == rhs.shape
            assert np.allclose(lhs, rhs, rtol=0, atol=1e-12)


def test_transform_round_trip(rng):
    quo = WickQuotient(n_max=3).fit(flip(2))
    X = rng.normal(size=(5, 8))
    Z = quo.transform(X)
    assert Z.shape == (5, 4)
    back = quo.inverse_transform(Z, level=3)
    np.testing.assert_allclose(quo.transform(back), Z, atol=1e-12)
    # representatives differ from the originals only by ideal elements
    diff = X - back
    span = quo.spans_[3]
    np.testing.assert_allclose(span @ (span.conj().T @ diff.T), diff.T, atol=1e-12)


def test_transform_requires_level_for_single_species():
    quo = WickQuotient(n_max=3).fit(np.array([[-1.0]]))
    assert quo.dims_ == [1, 1, 0, 0]
    with pytest.raises(ValueError):
        quo.transform(np.ones((1, 1)))
    assert quo.transform(np.ones((1, 1)), level=1).shape == (1, 1)


def test_wick_quotient_estimator_api():
    est = WickQuotient(n_max=2, tol=1e-10)
    assert est.get_params() == {"generators": "full-kernel", "n_max": 2, "tol": 1e-10}
    twin = clone(est).set_params(n_max=3)
    with pytest.raises(NotFittedError):
        twin.transform(np.ones((1, 4)))
    assert twin.fit(TwistSpec(braid=-flip(2))).dims_ == [1, 2, 1, 0]
    with pytest.raises(ValueError):
        WickQuotient(generators="half-kernel").fit(flip(2))
