import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from corpus import named_corpus
from gradcoh import (GF, InputNotExact, NotFiniteLength, Presentation, QuotientRing,
                     WindowExceedsTruncation, E_A_profile, double_dual_check,
                     finite_length_profile, matlis_dual,
                     matlis_exactness_check, polynomial_ring, star_hom_check)
from gradcoh.hilbert import hilbert_function_direct
from gradcoh.matlis import (FiniteLengthModule, ShortExactSequence, annihilated_by_power,
                            dual_profile, dual_sequence, has_finite_length, is_exact,
                            random_finite_length_presentation, random_submodule_sequence,
                            split_sequence, submodule_sequence, truncated_dual)

SLOW = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def small_ring(draw_s, field=None):
    names = ["x", "y", "z"][:draw_s]
    return polynomial_ring(names, field=field) if field else polynomial_ring(names)


# -- finite-length profiles ---------------------------------------------------------

def test_profile_of_square_of_maximal_ideal():
    T = polynomial_ring("x y")
    x, y = T.gens
    M = Presentation.cyclic(T, [x**2, x * y, y**2])
    F = finite_length_profile(M)
    assert F.profile() == {0: 1, 1: 2}
    assert F.annihilator_power() == 2
    assert annihilated_by_power(M) == 2


def test_infinite_length_is_refused():
    T = polynomial_ring("x y")
    x, y = T.gens
    with pytest.raises(NotFiniteLength):
        finite_length_profile(Presentation.cyclic(T, [x]))
    assert not has_finite_length(Presentation.cyclic(T, [x]))
    assert annihilated_by_power(Presentation.cyclic(T, [x]), bound=10) is None


def test_zero_module_profile():
    T = polynomial_ring("x y")
    F = finite_length_profile(Presentation.zero(T))
    assert F.is_zero and F.length == 0
    assert F.annihilator_power() == 0


# -- the dual ----------------------------------------------------------------------

def test_dual_flips_degrees():
    T = polynomial_ring("x")
    M = FiniteLengthModule(T, {(0,): 1, (3,): 1})
    assert matlis_dual(M).profile() == {-3: 1, 0: 1}
    E = FiniteLengthModule(T, {})
    assert matlis_dual(E).is_zero


def test_dual_of_dual_numbers():
    T = polynomial_ring("x")
    (x,) = T.gens
    M = finite_length_profile(Presentation.cyclic(T, [x**2]))
    D = matlis_dual(M)
    assert D.profile() == {-1: 1, 0: 1}
    assert D.matrix(0, (-1,)) == [[1]]
    assert double_dual_check(M)
    assert double_dual_check(FiniteLengthModule(T, {}))


def test_transpose_rule_on_two_variables():
    T = polynomial_ring("x y")
    x, y = T.gens
    M = finite_length_profile(Presentation.cyclic(T, [x**2, y**2]))
    D = matlis_dual(M)
    # (x.f)(m) = f(x.m): matrix of x on D at degree -j-1 is the transpose of x on M at j
    for d in M.dims:
        for i in range(2):
            tgt = (d[0] + 1,)
            if tgt in M.dims:
                X = M.matrix(i, d)
                Y = D.matrix(i, (-tgt[0],))
                assert Y == [list(col) for col in zip(*X)]


def test_non_commuting_action_rejected():
    T = polynomial_ring("x y")
    with pytest.raises(ValueError):
        FiniteLengthModule(T, {(0,): 1, (1,): 1, (2,): 1},
                           {(0, (0,)): [[1]], (1, (0,)): [[1]], (0, (1,)): [[1]], (1, (1,)): [[0]]})


# -- exactness ---------------------------------------------------------------------

def test_exactness_examples():
    T = polynomial_ring("x y")
    x, y = T.gens
    M = finite_length_profile(Presentation.cyclic(T, [x**2, x * y, y**2]))
    # m/m^2 inside A/m^2
    ses = submodule_sequence(M, [((1,), [1, 0]), ((1,), [0, 1])])
    assert ses.A.profile() == {1: 2} and ses.C.profile() == {0: 1}
    assert matlis_exactness_check(ses)
    k = finite_length_profile(Presentation.cyclic(T, [x, y]))
    assert matlis_exactness_check(split_sequence(M, k))
    ident = submodule_sequence(M, [((0,), [1])])
    assert ident.C.is_zero
    assert matlis_exactness_check(ident)


def test_non_exact_input_refused():
    T = polynomial_ring("x")
    k = FiniteLengthModule(T, {(0,): 1})
    bad = ShortExactSequence(k, k, k, {(0,): [[1]]}, {(0,): [[1]]})
    with pytest.raises(InputNotExact):
        matlis_exactness_check(bad)


@st.composite
def finite_length_modules(draw):
    s = draw(st.integers(1, 3))
    field = draw(st.sampled_from([None, GF(7)]))
    T = small_ring(s, field)
    rng = random.Random(draw(st.integers(0, 10**6)))
    return finite_length_profile(random_finite_length_presentation(T, rng))


@SLOW
@given(finite_length_modules())
def test_dual_is_an_involution_on_profiles(M):
    D = matlis_dual(M)
    assert D.length == M.length
    assert D.profile() == dual_profile(M).values
    assert matlis_dual(D) == M
    assert double_dual_check(M)
    assert D.commutativity_defect() is None


@SLOW
@given(finite_length_modules(), st.integers(0, 10**6))
def test_dual_preserves_exactness(M, seed):
    ses = random_submodule_sequence(M, random.Random(seed))
    assert is_exact(ses)
    assert matlis_exactness_check(ses)
    dual = dual_sequence(ses)
    for j in set(dual.B.dims):
        assert dual.A.dim(j) + dual.C.dim(j) == dual.B.dim(j)


# -- finite length: Hilbert series versus m-power annihilation --------------------

@pytest.mark.parametrize("name,M", named_corpus(), ids=[n for n, _ in named_corpus()])
def test_finite_length_criteria_agree(name, M):
    finite = has_finite_length(M)
    n = annihilated_by_power(M, bound=12)
    assert finite == (n is not None)
    if finite:
        F = finite_length_profile(M)
        assert F.annihilator_power() == n
        assert F.length == sum(hilbert_function_direct(M, j) for j in range(-3, 15))


# -- E_A and *Hom ----------------------------------------------------------------

def test_E_A_examples():
    T1 = polynomial_ring("x")
    (x1,) = T1.gens
    prof = E_A_profile(QuotientRing(T1, []), (-6, 3))
    assert prof.values == {j: 1 for j in range(-6, 1)}
    k = QuotientRing(T1, [x1])
    assert E_A_profile(k, (-6, 3)).values == {0: 1}
    T2 = polynomial_ring("x y")
    x, y = T2.gens
    prof = E_A_profile(QuotientRing(T2, [x * y]), (-5, 2))
    assert prof.values == {0: 1, **{j: 2 for j in range(-5, 0)}}


def test_E_A_of_artinian_ring_is_dual_of_itself():
    T = polynomial_ring("x y")
    x, y = T.gens
    A = QuotientRing(T, [x**2, y**3])
    D = matlis_dual(finite_length_profile(A.as_module()))
    assert E_A_profile(A, (-10, 5)).values == D.profile()


def test_truncated_dual_is_a_module():
    T = polynomial_ring("x y", weights=(1, 2))
    x, y = T.gens
    E = truncated_dual(QuotientRing(T, [x * y]), 4)
    assert E.commutativity_defect() is None
    assert min(E.profile()) == -4 and max(E.profile()) == 0


def test_star_hom_examples():
    T = polynomial_ring("x")
    (x,) = T.gens
    A = QuotientRing(T, [])
    assert star_hom_check(A.free([0]), (-5, 3), 6)
    res = star_hom_check(Presentation.cyclic(T, [x], algebra=A), (-5, 3), 6)
    assert res and [r[0] for r in res.rows if r[1]] == [0]
    shifted = star_hom_check(A.free([1]), (-5, 3), 6)
    assert shifted and [r[0] for r in shifted.rows if r[1]] == list(range(-5, 0))


def test_star_hom_window_must_be_faithful():
    T = polynomial_ring("x")
    A = QuotientRing(T, [])
    with pytest.raises(WindowExceedsTruncation):
        star_hom_check(A.free([0]), (-8, 0), 5)
    assert star_hom_check(A.free([2]), (-7, 0), 5)


@pytest.mark.parametrize("name,M", named_corpus(), ids=[n for n, _ in named_corpus()])
def test_star_hom_on_corpus(name, M):
    assert star_hom_check(M, (-4, 3), 6)


def test_redundant_generator_has_no_standard_monomials():
    T = polynomial_ring("x")
    M = Presentation.from_rows(T, [["x^3", "0", "-x"], ["0", "x^3", "2"]], [0, 1])
    F = finite_length_profile(M)
    assert F.length == sum(hilbert_function_direct(M, j) for j in range(0, 6)) == 3
    assert double_dual_check(F)
