import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quatrec.algebra import (
    builtin,
    commutator,
    diagonal,
    is_central,
    lipschitz,
    matrix_algebra,
    multiply,
    quadratic_extension_tensor,
    quaternion,
    upper_triangular,
)
from quatrec.analysis import (
    center_basis,
    check_h1,
    check_h2,
    check_hypotheses,
    h2_polynomials,
    is_zero_divisor,
)
from quatrec.enumeration import _classify
from quatrec.exact_math import GF

from _support import nonzero_elements, replay


def test_m2_commutator_squares_are_scalar_symbolically():
    # oracle: sympy matrices with symbolic entries
    xs = sympy.symbols("x0:4")
    ys = sympy.symbols("y0:4")
    X = sympy.Matrix(2, 2, xs)
    Y = sympy.Matrix(2, 2, ys)
    V = X * Y - Y * X
    S = (V * V).applyfunc(sympy.expand)
    assert S[0, 1] == 0 and S[1, 0] == 0 and sympy.expand(S[0, 0] - S[1, 1]) == 0
    assert all(p.is_zero() for p in h2_polynomials(matrix_algebra(2)))


def test_h2_polynomials_detect_upper_triangular():
    assert not all(p.is_zero() for p in h2_polynomials(upper_triangular(3)))


def test_check_h2_modes_agree_on_m2q():
    A = matrix_algebra(2)
    assert check_h2(A, "symbolic").status == "holds-symbolic"
    assert check_h2(A, "randomized").status == "no-violation-sampled"
    assert check_h2(A, ("randomized", 5, 3)).status == "no-violation-sampled"


def test_check_h2_fails_on_upper_triangular_with_witness():
    A = upper_triangular(3)
    for mode in ("symbolic", "randomized"):
        v = check_h2(A, mode)
        assert v.fails and v.witness.verify(A)
        assert replay(A, v.witness.to_json())


def test_check_h1_fails_on_m2q_with_e12_commutator():
    A = matrix_algebra(2)
    v = check_h1(A)
    assert v.fails and v.witness.verify(A)
    assert commutator(A, v.witness.x, v.witness.y) == A.e(1)


def test_check_h1_sampled_on_hamilton():
    v = check_h1(quaternion(-1, -1))
    assert v.status == "no-violation-sampled" and v.pairs_checked == 12 + 64


def test_check_h1_vacuous_for_commutative():
    assert check_h1(diagonal(2)).status == "holds-vacuous"


def test_check_h1_implied_needs_certificate():
    with pytest.raises(ValueError):
        check_h1(quaternion(-1, -1), "implied")


def test_exhaustive_modes_need_finite_base():
    with pytest.raises(ValueError):
        check_h1(quaternion(-1, -1), "exhaustive")
    with pytest.raises(ValueError):
        check_h2(quaternion(-1, -1), "exhaustive")
    with pytest.raises(ValueError):
        check_h2(quaternion(-1, -1), "bogus")


def _first_bad_pairs_numpy(A):
    p, k = A.base.p, A.dim
    G = np.array([[[int(c) for c in e] for e in row] for row in A.table], dtype=np.int64)[None]
    els = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    h2, h1 = _classify(G, p, els)
    return int(h2[0]), int(h1[0])


@pytest.mark.parametrize("A", [matrix_algebra(2, GF(3)), quaternion(1, 2, GF(3)), upper_triangular(2, GF(3))])
def test_exhaustive_checks_match_vectorised_oracle(A):
    h2_idx, h1_idx = _first_bad_pairs_numpy(A)
    v2, v1 = check_h2(A, "exhaustive"), check_h1(A, "exhaustive")
    assert v2.fails == (h2_idx >= 0)
    assert v1.fails == (h1_idx >= 0)
    if v1.fails:
        assert v1.pairs_checked - 1 == h1_idx and v1.witness.verify(A)
    if v2.fails:
        assert v2.pairs_checked - 1 == h2_idx and v2.witness.verify(A)


def test_symbolic_h2_over_finite_field_agrees_with_exhaustive():
    for A in (matrix_algebra(2, GF(2)), upper_triangular(2, GF(3)), upper_triangular(3, GF(2))):
        assert check_h2(A, "symbolic").fails == check_h2(A, "exhaustive").fails


def test_check_hypotheses_strategies():
    rep = check_hypotheses(matrix_algebra(2, GF(3)))
    assert rep.h2.status == "holds-exhaustive" and rep.h1.fails
    rep = check_hypotheses(quaternion(3, 7, GF(11)))
    assert rep.h2.holds and rep.h1.fails and rep.h1.witness.verify(quaternion(3, 7, GF(11)))
    L = lipschitz()
    rep = check_hypotheses(L)
    assert rep.h2.status == "holds-symbolic" and rep.h1.status == "no-violation-sampled"


def test_hypotheses_on_integral_matrices_pull_back():
    A = builtin("matrix(2,Z)")
    rep = check_hypotheses(A)
    assert rep.h1.fails and rep.h1.witness.verify(A)


@settings(max_examples=30)
@given(nonzero_elements(quaternion(-1, -1)))
def test_hamilton_has_no_zero_divisors(x):
    assert is_zero_divisor(quaternion(-1, -1), x) is None


@settings(max_examples=30)
@given(nonzero_elements(matrix_algebra(2)))
def test_matrix_zero_divisor_iff_singular(x):
    A = matrix_algebra(2)
    det = x.coords[0] * x.coords[3] - x.coords[1] * x.coords[2]
    zd = is_zero_divisor(A, x)
    assert (zd is not None) == (det == 0)
    if zd is not None:
        prod = multiply(A, x, zd.r) if zd.side == "right" else multiply(A, zd.r, x)
        assert prod.is_zero() and not zd.r.is_zero()


def test_zero_divisor_of_zero_rejected():
    with pytest.raises(ValueError):
        is_zero_divisor(quaternion(-1, -1), quaternion(-1, -1).zero())


@pytest.mark.parametrize(
    "name, dim, field",
    [("hamilton", 1, "yes"), ("m2q", 1, "yes"), ("ut3q", 1, "yes"), ("qxq", 2, "no"), ("m2q_plus_q", 2, "no"), ("m2f3", 1, "yes")],
)
def test_center_examples(name, dim, field):
    A = builtin(name)
    C = center_basis(A)
    assert C.dim == dim and C.is_field == field
    assert all(is_central(A, z) for z in C.elements)
    if field == "no":
        assert C.zero_divisor.verify(A)


def test_tensor_center_is_the_quadratic_field():
    # oracle: centralizer of the generators computed with sympy
    T = quadratic_extension_tensor(quaternion(-1, -1), 2)
    n = T.dim
    rows = []
    for e in T.basis():
        for u in range(n):
            rows.append([sympy.Rational((commutator(T, b, e)).coords[u]) for b in T.basis()])
    null = sympy.Matrix(rows).nullspace()
    C = center_basis(T)
    assert C.dim == len(null) == 2
    assert C.is_field == "yes"


def test_tensor_with_square_parameter_has_split_center():
    T = quadratic_extension_tensor(quaternion(-1, -1), 4)
    C = center_basis(T)
    assert C.dim == 2 and C.is_field == "no" and C.zero_divisor.verify(T)


TENSOR = quadratic_extension_tensor(quaternion(-1, -1), 2)


@settings(max_examples=20, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9))
def test_central_inverse(u, v):
    # u + v t with t^2 = 2 is invertible unless u = v = 0
    z = TENSOR.one() * u + TENSOR.e(4) * v
    inv = center_basis(TENSOR).inverse(z)
    if z.is_zero():
        assert inv is None
    else:
        assert multiply(TENSOR, inv, z) == TENSOR.one()


def test_center_coordinates():
    T = quadratic_extension_tensor(quaternion(-1, -1), 2)
    C = center_basis(T)
    assert C.contains(T.e(4) * 3 + T.one())
    assert not C.contains(T.e(1))
