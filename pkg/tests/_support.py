"""Shared strategies and helpers for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from quatrec.algebra import Algebra, commutator, multiply

small_ints = st.integers(min_value=-6, max_value=6)
nonzero_ints = small_ints.filter(bool)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def elements(A: Algebra, coeff=None):
    """Strategy for elements of A with small coefficients."""
    if coeff is None:
        coeff = small_ints if A.base.kind != "Fp" else st.integers(0, A.base.p - 1)
    return st.lists(coeff, min_size=A.dim, max_size=A.dim).map(lambda cs: A.element([A.base(c) for c in cs]))


def nonzero_elements(A: Algebra, coeff=None):
    return elements(A, coeff).filter(lambda x: not x.is_zero())


def replay(A: Algebra, w: dict) -> bool:
    """Re-check a witness from its JSON form using only multiply, commutator and addition."""
    kind = w["kind"]
    el = A.element
    if kind == "commutator_zero_divisor":
        v = commutator(A, el(w["x"]), el(w["y"]))
        r = el(w["r"])
        prod = multiply(A, v, r) if w["side"] == "right" else multiply(A, r, v)
        return not v.is_zero() and not r.is_zero() and prod.is_zero()
    if kind == "h2_violation":
        v = commutator(A, el(w["x"]), el(w["y"]))
        sq = multiply(A, v, v)
        return not commutator(A, sq, A.e(w["basis_index"])).is_zero()
    if kind == "zero_divisor":
        left, right = el(w["left"]), el(w["right"])
        return not left.is_zero() and not right.is_zero() and multiply(A, left, right).is_zero()
    if kind == "characteristic_two":
        return (A.one() + A.one()).is_zero()
    if kind == "associativity":
        s, t, u = (A.e(w[key]) for key in ("s", "t", "u"))
        return multiply(A, multiply(A, s, t), u) != multiply(A, s, multiply(A, t, u))
    if kind == "commutative":
        return all(commutator(A, x, y).is_zero() for x in A.basis() for y in A.basis())
    raise AssertionError(f"no replay rule for {kind}")
