
import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from quatrec.algebra import multiply, quaternion
from quatrec.analysis import is_zero_divisor
from quatrec.norm_division import (
    INFINITY,
    hilbert_symbol,
    is_division,
    is_division_finite,
    isotropy_search,
    norm,
    pure_isotropy_search,
)

from _support import elements, nonzero_ints, rationals

nonzero = st.integers(-60, 60).filter(bool)
odd_primes = st.sampled_from([3, 5, 7, 11, 13])


def brute_legendre(u, p):
    u %= p
    if u == 0:
        return 0
    return 1 if any((t * t - u) % p == 0 for t in range(1, p)) else -1


def _val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@given(nonzero, nonzero, odd_primes)
def test_odd_symbol_matches_brute_force_legendre(a, b, p):
    # oracle: (-1)^(al be eps) (u/p)^be (v/p)^al with Legendre symbols by enumeration of squares
    al, be = _val(a, p), _val(b, p)
    u, v = a // p**al, b // p**be
    sign = (-1) ** (al * be * ((p - 1) // 2))
    expected = sign * brute_legendre(u, p) ** be * brute_legendre(v, p) ** al
    assert hilbert_symbol(a, b, p) == expected


@given(nonzero, nonzero, st.sampled_from([INFINITY, 2, 3, 5, 7]))
def test_symbol_symmetry_and_square_invariance(a, b, place):
    assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
    assert hilbert_symbol(a, b, place) == hilbert_symbol(a * 4, b * 9, place)
    assert hilbert_symbol(a, -a, place) == 1


@given(nonzero, nonzero, nonzero, st.sampled_from([INFINITY, 2, 3, 5, 7]))
def test_symbol_bimultiplicative(a, b, c, place):
    assert hilbert_symbol(a, b * c, place) == hilbert_symbol(a, b, place) * hilbert_symbol(a, c, place)


@given(st.integers(-60, 60).filter(lambda a: a not in (0, 1)))
def test_steinberg_relation(a):
    for place in (INFINITY, 2, 3, 5, 7, 11):
        assert hilbert_symbol(a, 1 - a, place) == 1


@given(nonzero, nonzero)
def test_reciprocity(a, b):
    places = {2} | set(sympy.primefactors(abs(a))) | set(sympy.primefactors(abs(b)))
    prod = hilbert_symbol(a, b, INFINITY)
    for p in places:
        prod *= hilbert_symbol(a, b, p)
    assert prod == 1


def test_symbol_argument_errors():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 1, 3)
    with pytest.raises(ValueError):
        hilbert_symbol(1, 1, 4)


def test_known_verdicts():
    v = is_division(-1, -1)
    assert v.status == "division" and (INFINITY, -1) in v.evidence
    v = is_division(1, 1)
    assert v.status == "split" and norm(1, 1, v.vector) == 0
    v = is_division(2, 5)
    assert v.status == "division" and (5, -1) in v.evidence
    assert isotropy_search(2, 5, 50) is None
    assert isotropy_search(-1, -1, 20) is None


def test_isotropy_search_order():
    assert isotropy_search(1, 1, 5) == (1, 1, 0, 0)
    assert isotropy_search(2, 7, 5) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(-12, 12).filter(bool), st.integers(-12, 12).filter(bool))
def test_verdict_agrees_with_bounded_search(a, b):
    v = is_division(a, b)
    found = isotropy_search(a, b, 6)
    if v.status == "division":
        assert found is None
    else:
        assert v.status == "split" and norm(a, b, v.vector) == 0
    if found is not None:
        assert v.status == "split"


@settings(max_examples=30, deadline=None)
@given(rationals.filter(bool), rationals.filter(bool))
def test_rational_parameters(a, b):
    v = is_division(a, b)
    assert v.status in ("division", "split")
    if v.status == "split":
        assert norm(a, b, v.vector) == 0


@settings(max_examples=50, deadline=None)
@given(nonzero_ints, nonzero_ints, st.data())
def test_norm_is_multiplicative(a, b, data):
    A = quaternion(a, b)
    x = data.draw(elements(A, rationals))
    y = data.draw(elements(A, rationals))
    assert norm(a, b, multiply(A, x, y).coords) == norm(a, b, x.coords) * norm(a, b, y.coords)


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_zero_divisor_iff_norm_zero_in_split_algebra(c0, c1, c2, c3):
    A = quaternion(1, 1)
    x = A.element([c0, c1, c2, c3])
    assume(not x.is_zero())
    assert (is_zero_divisor(A, x) is not None) == (norm(1, 1, x.coords) == 0)


def test_pure_isotropy():
    vec = pure_isotropy_search(1, 1, 5)
    assert vec[0] == 0 and norm(1, 1, vec) == 0
    assert pure_isotropy_search(-1, -1, 10) is None


@pytest.mark.parametrize("a, b, p", [(1, 2, 3), (3, 7, 11), (-1, -1, 5), (2, 3, 7)])
def test_finite_fields_always_split(a, b, p):
    v = is_division_finite(a, b, p)
    assert v.status == "split" and norm(a, b, v.vector) % p == 0 and any(v.vector)


def test_verdict_json():
    data = is_division(2, 5).to_json()
    assert data["status"] == "division" and ["5", -1] in data["evidence"]


@settings(max_examples=30, deadline=None)
@given(st.integers(-20, 20).filter(bool), st.integers(-20, 20).filter(bool))
def test_division_verdicts_survive_height_50_search(a, b):
    v = is_division(a, b)
    if v.status == "division":
        assert isotropy_search(a, b, 50) is None
    else:
        A = quaternion(a, b)
        one, i, j, k = A.basis()
        x0, x1, x2, x3 = v.vector
        q = one * x0 + i * x1 + j * x2 + k * x3
        qbar = one * x0 - i * x1 - j * x2 - k * x3
        assert not q.is_zero() and multiply(A, q, qbar).is_zero()
