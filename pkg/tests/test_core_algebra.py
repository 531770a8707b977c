from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from gradcoh import (GF, LEX, QQ, NonHomogeneousInput, ParseError, buchberger, colon_step,
                     normal_form, polynomial_ring, saturation_colon, spoly, syzygies)
from gradcoh.ring import GradingSpec, MonomialOrder


# -- scalars ----------------------------------------------------------------------

def test_rationals_lowest_terms():
    a = QQ(Fraction(6, -4))
    assert a == Fraction(-3, 2)
    assert a.denominator > 0
    assert QQ.to_pair(a) == (-3, 2)


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(10) == 3
    assert F.inv(3) == 5
    assert F(Fraction(1, 2)) == 4
    assert F.to_pair(F(-1)) == (6, 1)


@pytest.mark.parametrize("p", [1, 4, 2**31 + 11, 2**31 - 1 + 2])
def test_field_rejects_bad_characteristic(p):
    with pytest.raises(ValueError):
        GF(p)


def test_largest_allowed_prime():
    assert GF(2**31 - 1).p == 2**31 - 1


# -- gradings and polynomials ---------------------------------------------------------

def test_grading_requires_positive_weights():
    with pytest.raises(ValueError):
        GradingSpec.from_weights((1, 0))
    g = GradingSpec(((1, 0), (0, 1)), functional=(1, 1))
    assert g.weights == (1, 1)
    with pytest.raises(ValueError):
        GradingSpec(((1, -1), (0, 1)))


def test_polynomial_parsing_and_printing():
    T = polynomial_ring("x y z", weights=(1, 2, 3))
    f = T("x*y - 3*z + 2*y*x")
    assert str(f) == "3*x*y - 3*z"
    assert f.is_homogeneous()
    assert f.degree() == (3,)
    assert not T("x^2*y - z").is_homogeneous()


def test_degree_of_monomial_is_derived():
    T = polynomial_ring("x y z", weights=(1, 2, 3))
    x, y, z = T.gens
    assert (x * y * z).degree() == (6,)


def test_parse_error_reports_column():
    T = polynomial_ring("x y")
    with pytest.raises(ParseError) as exc:
        T("x + * y")
    assert exc.value.col is not None
    with pytest.raises(ParseError):
        T("x + w")


def test_nonhomogeneous_degree_raises():
    T = polynomial_ring("x y")
    with pytest.raises(NonHomogeneousInput):
        T("x^2 + y").degree()


# -- normal forms and Buchberger ---------------------------------------------------------

def _cubic_ring():
    T = polynomial_ring("x y z", weights=(1, 2, 3))
    return T, T.gens


def test_normal_form_examples():
    T, (x, y, z) = _cubic_ring()
    G = [x**2 - y, x * y - z, y**2 - x * z]
    assert normal_form(x**3, G, LEX) == z
    assert normal_form(x**3, G) == z
    assert normal_form(T.zero, G) == T.zero
    S = polynomial_ring("x y")
    assert normal_form(S("y"), [S("x")]) == S("y")
    assert normal_form(S("x*y"), []) == S("x*y")


def test_buchberger_cubic_weighted_grevlex():
    T, (x, y, z) = _cubic_ring()
    G = buchberger([x**2 - y, x**3 - z])
    assert set(G) == {x**2 - y, x * y - z, y**2 - x * z}


def test_buchberger_cubic_pure_lex():
    # under pure lex x > y > z the reduced basis also contains y^3 - z^2
    T, (x, y, z) = _cubic_ring()
    G = buchberger([x**2 - y, x**3 - z], LEX)
    assert set(G) == {x**2 - y, x * y - z, x * z - y**2, y**3 - z**2}


def test_buchberger_trivial_cases():
    T = polynomial_ring("x y")
    x, y = T.gens
    assert buchberger([x]) == [x]
    assert buchberger([], ring=T) == []
    with pytest.raises(NonHomogeneousInput):
        buchberger([x**2 + y])


def test_syzygy_examples():
    T = polynomial_ring("x y z")
    x, y, z = T.gens
    (col,) = syzygies([x * y, x * z])
    assert col in ([z, -y], [-z, y])
    assert syzygies([x]) == []
    (col,) = syzygies([x, y])
    assert col in ([y, -x], [-y, x])


def test_saturation_examples():
    T = polynomial_ring("x y")
    x, y = T.gens
    m = [x, y]
    assert saturation_colon([x**2, x * y], m) == [x]
    assert saturation_colon([x], [x]) == [T.one]
    assert saturation_colon([], m, ring=T) == []
    assert colon_step([x**2, x * y], m) == [x]


# -- property tests ------------------------------------------------------------------------

def _random_ideal(draw, s, max_gens=4, weights=None):
    T = polynomial_ring(["x", "y", "z"][:s], weights=weights)
    gens = []
    for _ in range(draw(st.integers(1, max_gens))):
        from gradcoh.hilbert import monomials_of_degree
        degrees = [d for d in range(1, 5) if monomials_of_degree(T.grading, (d,))]
        d = draw(st.sampled_from(degrees[:3]))
        mons = list(monomials_of_degree(T.grading, (d,)))
        chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=3, unique=True))
        terms = {e: QQ(draw(st.integers(-5, 5).filter(bool))) for e in chosen}
        gens.append(_poly(T, terms))
    return T, gens


def _poly(T, terms):
    from gradcoh.ring import Polynomial
    return Polynomial(T, terms)


@st.composite
def ideals(draw, weighted=False):
    s = draw(st.integers(2, 3))
    weights = tuple(draw(st.integers(1, 3)) for _ in range(s)) if weighted else None
    return _random_ideal(draw, s, weights=weights)


FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@FAST
@given(ideals(weighted=True))
def test_spolys_reduce_to_zero_and_generators_belong(data):
    T, gens = data
    G = buchberger(gens)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            assert normal_form(spoly(G[i], G[j]), G) == T.zero
    for f in gens:
        assert normal_form(f, G) == T.zero


@FAST
@given(ideals(), st.randoms(use_true_random=False))
def test_buchberger_is_canonical_under_permutation(data, rnd):
    T, gens = data
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert buchberger(gens) == buchberger(shuffled)


def _sympy_basis(T, gens, order):
    syms = sympy.symbols(T.names)
    polys = [sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(
        [v**k for v, k in zip(syms, e)]) for e, c in f.terms.items()), *syms) for f in gens]
    ref = sympy.groebner(polys, *syms, order=order, domain="QQ")
    out = set()
    for p in ref.polys:
        terms = {tuple(m): QQ(Fraction(int(c.p), int(c.q))) for m, c in p.terms()}
        out.add(_poly(T, terms))
    return out


@FAST
@given(ideals())
def test_buchberger_matches_sympy_grevlex(data):
    T, gens = data
    assert set(buchberger(gens)) == _sympy_basis(T, gens, "grevlex")


@FAST
@given(ideals())
def test_buchberger_matches_sympy_lex(data):
    T, gens = data
    assert set(buchberger(gens, LEX)) == _sympy_basis(T, gens, "lex")


@FAST
@given(ideals(weighted=True), st.data())
def test_normal_form_idempotent(data, more):
    T, gens = data
    G = buchberger(gens)
    from gradcoh.hilbert import monomials_of_degree
    d = more.draw(st.integers(0, 4))
    mons = list(monomials_of_degree(T.grading, (d,)))
    f = _poly(T, {e: QQ(more.draw(st.integers(-3, 3))) for e in mons[:4]})
    r = normal_form(f, G)
    assert normal_form(r, G) == r


@FAST
@given(ideals(weighted=True))
def test_syzygy_columns_annihilate(data):
    T, gens = data
    G = buchberger(gens)
    for col in syzygies(G):
        total = T.zero
        for c, g in zip(col, G):
            total = total + c * g
        assert total == T.zero


@FAST
@given(ideals())
def test_saturation_chain_is_monotone(data):
    T, gens = data
    m = list(T.gens)
    cur = buchberger(gens)
    for _ in range(3):
        nxt = colon_step(cur, m, ring=T)
        for f in cur:
            assert normal_form(f, nxt) == T.zero
        cur = nxt


def test_prime_field_buchberger():
    T = polynomial_ring("x y", field=GF(5))
    x, y = T.gens
    G = buchberger([x**2 + 4 * y**2, x * y])
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            assert normal_form(spoly(G[i], G[j]), G) == T.zero


def test_monomial_order_lex_key():
    T = polynomial_ring("x y")
    x, y = T.gens
    f = x * y + y**2 + x**2
    assert f.lead()[0] == (2, 0)
    assert f.lead(LEX)[0] == (2, 0)
    assert (y**3 + x * y).lead(LEX)[0] == (1, 1)
    assert isinstance(LEX, MonomialOrder)
