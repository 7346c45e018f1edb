import pytest
from hypothesis import given, settings, strategies as st

from quatrec.algebra import builtin, lipschitz, matrix_algebra, multiply, quaternion
from quatrec.localization import FormalFraction, embed, frac_add, frac_eq, frac_mul, from_lifted, localize
from quatrec.recognition import recognize

from _support import elements, nonzero_elements

L = lipschitz()
ONE, I, J, K = L.basis()
dens = st.integers(-6, 6).filter(bool).map(lambda c: L.one() * c)


def fractions():
    return st.builds(FormalFraction, elements(L), dens)


def test_worked_examples():
    assert FormalFraction(ONE * 2 + I * 2, ONE * 2) == FormalFraction(ONE + I, ONE)
    assert frac_mul(FormalFraction(I, ONE * 2), FormalFraction(J, ONE * 3)) == FormalFraction(K, ONE * 6)
    s = frac_add(FormalFraction(I, ONE * 2), FormalFraction(J, ONE * 3))
    assert s == FormalFraction(I * 3 + J * 2, ONE * 6)
    assert str(s) == "(0,3,2,0) / (6,0,0,0)"


def test_denominators_must_be_central_and_nonzero():
    with pytest.raises(ValueError):
        FormalFraction(ONE, L.zero())
    with pytest.raises(ValueError):
        FormalFraction(ONE, I)


def test_fractions_are_unhashable():
    with pytest.raises(TypeError):
        hash(FormalFraction(ONE, ONE))


@settings(max_examples=60)
@given(fractions(), fractions(), fractions())
def test_equivalence_relation(f, g, h):
    assert frac_eq(f, f)
    assert frac_eq(f, g) == frac_eq(g, f)
    if frac_eq(f, g) and frac_eq(g, h):
        assert frac_eq(f, h)


@settings(max_examples=60)
@given(fractions(), dens, dens)
def test_rescaled_representatives_are_equal(f, c, d):
    g = FormalFraction(multiply(L, c, f.num), multiply(L, c, f.den))
    assert frac_eq(f, g)
    h = FormalFraction(multiply(L, d, g.num), multiply(L, d, g.den))
    assert frac_eq(f, h)


@settings(max_examples=60)
@given(fractions(), fractions(), fractions())
def test_ring_laws(f, g, h):
    assert frac_add(f, g) == frac_add(g, f)
    assert frac_add(frac_add(f, g), h) == frac_add(f, frac_add(g, h))
    assert frac_mul(frac_mul(f, g), h) == frac_mul(f, frac_mul(g, h))
    assert frac_mul(f, frac_add(g, h)) == frac_add(frac_mul(f, g), frac_mul(f, h))


@settings(max_examples=60)
@given(elements(L), elements(L))
def test_embed_is_a_ring_homomorphism(x, y):
    assert embed(L, x + y) == frac_add(embed(L, x), embed(L, y))
    assert embed(L, multiply(L, x, y)) == frac_mul(embed(L, x), embed(L, y))
    assert (embed(L, x) == embed(L, y)) == (x == y)


@settings(max_examples=40)
@given(nonzero_elements(localize(L)))
def test_from_lifted_round_trip(z):
    f = from_lifted(L, z)
    assert f.den == L.scalar(f.den.coords[0])
    assert localize(L).element(f.num.coords) == z * f.den.coords[0]


def test_localize_lifts_integers_and_fixes_fields():
    assert localize(L) == quaternion(-1, -1)
    Q = matrix_algebra(2)
    assert localize(Q) is Q


def test_recognition_after_localization_agrees_with_rational_hamilton():
    a = recognize(L)
    b = recognize(builtin("hamilton"))
    assert a.status == b.status == "quaternion"
    assert a.structure.a == b.structure.a and a.structure.b == b.structure.b
    assert a.division.to_json() == b.division.to_json()
