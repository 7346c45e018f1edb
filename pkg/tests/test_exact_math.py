from fractions import Fraction
import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quatrec.exact_math import (
    GF,
    QQ,
    ZZ,
    BaseRing,
    Matrix,
    Residue,
    format_scalar,
    kernel_basis,
    parse_scalar,
    rank,
    rref,
    solve,
)

primes = st.sampled_from([2, 3, 5, 7, 11, 13])


@given(primes, st.integers(-50, 50), st.integers(-50, 50))
def test_residue_matches_integer_arithmetic(p, a, b):
    x, y = Residue(a, p), Residue(b, p)
    assert int(x + y) == (a + b) % p
    assert int(x - y) == (a - b) % p
    assert int(x * y) == (a * b) % p
    assert int(-x) == (-a) % p
    if b % p:
        assert (x / y) * y == x
        assert y.inverse() * y == Residue(1, p)


def test_residue_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Residue(0, 5).inverse()


@pytest.mark.parametrize(
    "text, base, expected",
    [
        ("3/4", QQ, Fraction(3, 4)),
        ("2/-4", QQ, Fraction(-1, 2)),
        (" -7 ", ZZ, Fraction(-7)),
        ("0", QQ, Fraction(0)),
        ("5", GF(3), Residue(2, 3)),
    ],
)
def test_parse_scalar(text, base, expected):
    assert parse_scalar(text, base) == expected


@pytest.mark.parametrize("text, base", [("1/0", QQ), ("x", QQ), ("1.5", QQ), ("1/2", ZZ), ("-1", GF(3)), ("", QQ)])
def test_parse_scalar_rejects(text, base):
    with pytest.raises(ValueError):
        parse_scalar(text, base)


@given(st.fractions(max_denominator=50))
def test_scalar_text_round_trip(q):
    assert parse_scalar(format_scalar(q), QQ) == q


def test_base_ring_descriptors():
    for base in (QQ, ZZ, GF(2), GF(7)):
        assert BaseRing.from_descriptor(base.descriptor()) == base
    assert BaseRing.from_descriptor("F3") == GF(3)
    assert ZZ.field == QQ and not ZZ.is_field
    assert GF(5).characteristic == 5 and QQ.characteristic == 0
    with pytest.raises(ValueError):
        GF(4)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=80)
@given(matrices)
def test_rank_and_kernel_match_sympy(rows):
    M = Matrix.from_rows(QQ, rows)
    oracle = sympy.Matrix(rows)
    assert rank(M) == oracle.rank()
    ker = kernel_basis(M)
    assert len(ker) == len(rows[0]) - oracle.rank()
    for v in ker:
        assert all(c == 0 for c in M.apply(v))
    R, r, pivots = rref(M)
    assert sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in R.rows]) == oracle.rref()[0]
    assert tuple(pivots) == tuple(oracle.rref()[1])


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(1, 3), st.data())
def test_kernel_mod_p_counts_against_brute_force(p, r, c, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    F = GF(p)
    M = Matrix.from_rows(F, rows)
    brute = sum(
        1
        for v in itertools.product(range(p), repeat=c)
        if all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows)
    )
    assert brute == p ** (c - rank(M))
    assert len(kernel_basis(M)) == c - rank(M)


@settings(max_examples=80)
@given(matrices, st.data())
def test_solve_is_consistent_with_rank(rows, data):
    b = data.draw(st.lists(st.integers(-5, 5), min_size=len(rows), max_size=len(rows)))
    M = Matrix.from_rows(QQ, rows)
    x = solve(M, b)
    augmented = sympy.Matrix([row + [bi] for row, bi in zip(rows, b)])
    if augmented.rank() == sympy.Matrix(rows).rank():
        assert x is not None and list(M.apply(x)) == [Fraction(v) for v in b]
    else:
        assert x is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(Matrix.from_rows(QQ, [[1, 0]]), [1, 2])
