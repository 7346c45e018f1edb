"""Quaternion norm forms and division-algebra certification over Q.

The algebra (a, b) over Q is a division algebra iff its norm form
x0^2 - a x1^2 - b x2^2 + ab x3^2 is anisotropic, iff the Hilbert symbol
(a, b)_v equals -1 at some place v.  Only the places infinity, 2 and the
odd primes dividing a or b can contribute a -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Optional, Sequence

import numpy as np
import sympy

__all__ = [
    "INFINITY",
    "norm",
    "hilbert_symbol",
    "DivisionVerdict",
    "is_division",
    "is_division_finite",
    "isotropy_search",
    "pure_isotropy_search",
    "SPLIT_SEARCH_BOUNDS",
]

INFINITY = "inf"
SPLIT_SEARCH_BOUNDS = (10, 100, 1000)


def norm(a, b, coords: Sequence):
    """x0^2 - a x1^2 - b x2^2 + a b x3^2."""
    x0, x1, x2, x3 = coords
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _to_integer(q) -> int:
    # same square class, integral representative
    q = Fraction(q)
    return q.numerator * q.denominator


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b) at ``place`` (a prime, or ``"inf"``)."""
    a, b = Fraction(a), Fraction(b)
    if not a or not b:
        raise ValueError("Hilbert symbol needs non-zero arguments")
    if place in (INFINITY, "infinity", float("inf")):
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not sympy.isprime(place):
        raise ValueError(f"place must be a prime or 'inf', got {place!r}")
    p = place
    a, b = _to_integer(a), _to_integer(b)
    alpha, beta = _valuation(a, p), _valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p != 2:
        eps = (p - 1) // 2
        sign = -1 if (alpha * beta * eps) % 2 else 1
        return sign * _legendre(u, p) ** beta * _legendre(v, p) ** alpha

    def e(t):
        return ((t - 1) // 2) % 2

    def w(t):
        return ((t * t - 1) // 8) % 2

    exponent = e(u) * e(v) + alpha * w(v) + beta * w(u)
    return -1 if exponent % 2 else 1


def _relevant_places(a: Fraction, b: Fraction) -> list:
    primes = set()
    for q in (a, b):
        for n in (q.numerator, q.denominator):
            primes.update(p for p in sympy.primefactors(abs(n)) if p != 2)
    return [INFINITY, 2] + sorted(primes)


# ---------------------------------------------------------------------------
# bounded searches for zeros of diagonal forms


def _order_key(vec: tuple):
    return (sum(abs(c) for c in vec), tuple(-c for c in vec))


def _normalise(vec: tuple) -> Optional[tuple]:
    g = 0
    for c in vec:
        g = gcd(g, c)
    if g != 1:
        return None
    lead = next(c for c in vec if c)
    return vec if lead > 0 else tuple(-c for c in vec)


def _square_hits(coeffs: Sequence[Fraction], bound: int):
    """All integer (t, y_1..y_k) in the box of height ``bound`` with t^2 = sum c_i y_i^2.

    Yields pairs (t, ys) with t >= 0; the zero vector is skipped.
    """
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    m = den  # scaling by den^2 keeps the square test integral: (den t)^2 = sum den^2 c_i y_i^2
    ints = [int(c * den * den) for c in coeffs]
    k = len(coeffs)
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    biggest = sum(abs(c) for c in ints) * bound * bound
    if biggest < 2**52:
        grids = np.meshgrid(*([rng] * k), indexing="ij")
        total = np.zeros(grids[0].shape, dtype=np.int64)
        for c, g in zip(ints, grids):
            total += c * g * g
        ok = total >= 0
        root = np.zeros_like(total)
        root[ok] = np.floor(np.sqrt(total[ok].astype(np.float64))).astype(np.int64)
        root[ok & (root * root > total)] -= 1
        root[ok & ((root + 1) * (root + 1) <= total)] += 1
        hit = ok & (root * root == total) & (root % m == 0) & (root // m <= bound)
        for idx in zip(*np.nonzero(hit)):
            ys = tuple(int(g[idx]) for g in grids)
            yield int(root[idx]) // m, ys
        return
    for ys in itertools.product(range(-bound, bound + 1), repeat=k):
        total = sum(c * y * y for c, y in zip(ints, ys))
        if total < 0:
            continue
        r = isqrt(total)
        if r * r == total and r % m == 0 and r // m <= bound:
            yield r // m, ys


def _best(vectors) -> Optional[tuple]:
    best = None
    for vec in vectors:
        if not any(vec):
            continue
        vec = _normalise(vec)
        if vec is None:
            continue
        if best is None or _order_key(vec) < _order_key(best):
            best = vec
    return best


def _with_signs(t: int, rest: tuple, build):
    yield build(t, rest)
    if t:
        yield build(-t, rest)


def isotropy_search(a, b, bound: int) -> Optional[tuple]:
    """First primitive integer vector of height <= bound with norm 0.

    Vectors are compared by their absolute sum, ties broken by descending
    lexicographic order; signs are normalised so the first non-zero
    coordinate is positive.
    """
    a, b = Fraction(a), Fraction(b)
    hits = _square_hits((a, b, -a * b), bound)
    vecs = (v for t, ys in hits for v in _with_signs(t, ys, lambda t, ys: (t,) + ys))
    found = _best(vecs)
    if found is not None and norm(a, b, found) != 0:
        raise ArithmeticError("isotropic vector failed verification")
    return found


def _ternary_search(a: Fraction, b: Fraction, bound: int) -> Optional[tuple]:
    # zeros of x0^2 - a x1^2 - b x2^2, padded with x3 = 0
    hits = _square_hits((a, b), bound)
    return _best(v for t, ys in hits for v in _with_signs(t, ys, lambda t, ys: (t,) + ys + (0,)))


def pure_isotropy_search(a, b, bound: int) -> Optional[tuple]:
    """Primitive (0, x1, x2, x3) of height <= bound with norm 0, if any."""
    a, b = Fraction(a), Fraction(b)
    # a x1^2 = ab x3^2 - b x2^2  <=>  x1^2 = b x3^2 - (b/a) x2^2
    hits = _square_hits((-b / a, b), bound)
    found = _best(v for t, ys in hits for v in _with_signs(t, ys, lambda t, ys: (0, t, ys[0], ys[1])))
    if found is not None and norm(a, b, found) != 0:
        raise ArithmeticError("pure isotropic vector failed verification")
    return found


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class DivisionVerdict:
    """``status`` is ``"division"``, ``"split"`` or ``"unknown"``.

    ``evidence`` lists (place, symbol) pairs; for a split algebra
    ``vector`` is a non-zero norm-zero coordinate vector.
    """

    status: str
    evidence: tuple = ()
    vector: Optional[tuple] = None
    note: str = ""
    a: Optional[object] = None
    b: Optional[object] = None
    symbols: tuple = field(default=(), compare=False)

    @property
    def is_division(self) -> bool:
        return self.status == "division"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "a": None if self.a is None else str(self.a),
            "b": None if self.b is None else str(self.b),
            "evidence": [[str(p), s] for p, s in self.evidence],
            "symbols": [[str(p), s] for p, s in self.symbols],
            "isotropic_vector": None if self.vector is None else [str(c) for c in self.vector],
            "note": self.note,
        }


def is_division(a, b) -> DivisionVerdict:
    """Classify the rational quaternion algebra (a, b) as division or split."""
    a, b = Fraction(a), Fraction(b)
    if not a or not b:
        raise ValueError("quaternion algebra needs a, b non-zero")
    symbols = tuple((p, hilbert_symbol(a, b, p)) for p in _relevant_places(a, b))
    negative = tuple(ps for ps in symbols if ps[1] == -1)
    if negative:
        return DivisionVerdict("division", negative, a=a, b=b, symbols=symbols)
    for bound in SPLIT_SEARCH_BOUNDS:
        vec = _ternary_search(a, b, bound)
        if vec is not None:
            if norm(a, b, vec) != 0:
                raise ArithmeticError("isotropic vector failed verification")
            return DivisionVerdict("split", (), vec, f"isotropic vector found at height <= {bound}", a, b, symbols)
    return DivisionVerdict("unknown", (), None, "all local symbols are +1 but no isotropic vector was found", a, b, symbols)


def is_division_finite(a: int, b: int, p: int) -> DivisionVerdict:
    """Over F_p the algebra always splits; return the first norm-zero vector found."""
    a, b = a % p, b % p
    if not a or not b:
        raise ValueError("quaternion algebra needs a, b non-zero")
    for vec in itertools.product(range(p), repeat=4):
        if any(vec) and norm(a, b, vec) % p == 0:
            return DivisionVerdict(
                "split", (), vec, "finite division rings are commutative; norm-zero vector found by search", a, b
            )
    raise ArithmeticError(f"no isotropic vector over F_{p}")
