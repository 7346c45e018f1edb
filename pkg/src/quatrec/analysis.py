"""Center, zero divisors and the two commutator hypotheses.

H1: a non-zero commutator is never a zero divisor.
H2: the square of every commutator is central.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

import sympy

from .algebra import Algebra, Element, commutator, multiply
from .exact_math import Matrix, kernel_basis, solve
from .polynomials import MultiPoly
from .witnesses import CommutatorZeroDivisor, H2Violation, Witness, ZeroDivisorPair

__all__ = [
    "CenterBasis",
    "center_basis",
    "is_zero_divisor",
    "left_matrix",
    "right_matrix",
    "h2_polynomials",
    "Verdict",
    "HypothesisReport",
    "check_h1",
    "check_h2",
    "check_hypotheses",
    "random_element",
    "all_elements",
    "DEFAULT_SAMPLES",
    "DEFAULT_HEIGHT",
    "DEFAULT_SEED",
    "EXHAUSTIVE_PAIR_LIMIT",
]

DEFAULT_SAMPLES = 64
DEFAULT_HEIGHT = 10
DEFAULT_SEED = 0
# exhaustive scans over finite bases are chosen automatically below this many (x, y) pairs
EXHAUSTIVE_PAIR_LIMIT = 100_000


def _field_algebra(A: Algebra) -> Algebra:
    return A.lift()


def random_element(A: Algebra, rng: random.Random, height: int = DEFAULT_HEIGHT) -> Element:
    return A.element([rng.randint(-height, height) for _ in range(A.dim)])


def all_elements(A: Algebra):
    """Every element of a finite algebra, in lexicographic coordinate order."""
    for coords in itertools.product(range(A.base.p), repeat=A.dim):
        yield A.element(coords)


# ---------------------------------------------------------------------------
# linear maps


def left_matrix(A: Algebra, v: Element) -> Matrix:
    """Matrix of r -> v r (columns are v e_t)."""
    cols = [multiply(A, v, e).coords for e in A.basis()]
    return Matrix(A.base, tuple(zip(*cols)), A.dim)


def right_matrix(A: Algebra, v: Element) -> Matrix:
    """Matrix of r -> r v."""
    cols = [multiply(A, e, v).coords for e in A.basis()]
    return Matrix(A.base, tuple(zip(*cols)), A.dim)


def _primitive(vec, A: Algebra) -> Element:
    # scale a rational kernel vector to a primitive integer vector
    if A.base.kind == "Fp":
        return A.element(vec)
    den = 1
    for c in vec:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in vec]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    lead = next((c for c in ints if c), 1)
    if lead < 0:
        g = -g
    return A.element([c // g for c in ints])


@dataclass(frozen=True)
class ZeroDivisorResult:
    r: Element
    side: str  # "right": v r = 0; "left": r v = 0


def is_zero_divisor(A: Algebra, v: Element) -> Optional[ZeroDivisorResult]:
    """Witness r != 0 with v r = 0 or r v = 0, or None when v is regular.

    The integer base is handled over its fraction field; the returned
    witness is then rescaled to integer coordinates.
    """
    if v.is_zero():
        raise ValueError("zero is not a zero divisor by definition")
    for side, mat in (("right", left_matrix(A, v)), ("left", right_matrix(A, v))):
        ker = kernel_basis(mat)
        if ker:
            r = _primitive(ker[0], A)
            prod = multiply(A, v, r) if side == "right" else multiply(A, r, v)
            if not prod.is_zero():
                raise ArithmeticError("zero-divisor witness failed verification")
            return ZeroDivisorResult(r, side)
    return None


# ---------------------------------------------------------------------------
# center


@dataclass(frozen=True)
class CenterBasis:
    """Basis of the center as a vector space over the base field.

    ``is_field`` is ``"yes"``, ``"no"`` or ``"unknown"``; a ``"no"`` comes
    with a pair of non-zero central elements whose product vanishes.
    """

    algebra: Algebra
    elements: tuple
    is_field: str
    zero_divisor: Optional[ZeroDivisorPair] = None
    note: str = ""

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coordinates(self, z: Element) -> Optional[tuple]:
        """Coordinates of z in the center basis, None if z is not in the span."""
        M = Matrix(self.algebra.base, tuple(zip(*[c.coords for c in self.elements])), self.dim)
        return solve(M, z.coords)

    def contains(self, z: Element) -> bool:
        return self.coordinates(z) is not None

    def inverse(self, z: Element) -> Optional[Element]:
        """Inverse of a central z inside the center span, or None if z is not invertible there."""
        A = self.algebra
        cols = [multiply(A, c, z).coords for c in self.elements]
        lam = solve(Matrix(A.base, tuple(zip(*cols)), self.dim), A.unit)
        if lam is None:
            return None
        inv = A.zero()
        for c, e in zip(lam, self.elements):
            inv = inv + e * c
        if multiply(A, inv, z) != A.one():
            raise ArithmeticError("central inverse failed verification")
        return inv

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [e.to_json() for e in self.elements],
            "is_field": self.is_field,
            "zero_divisor": self.zero_divisor.to_json() if self.zero_divisor else None,
            "note": self.note,
        }


def _minimal_polynomial(A: Algebra, z: Element) -> list:
    """Coefficients (constant first) of the monic minimal polynomial of z over the base field."""
    powers = [A.one()]
    while True:
        nxt = multiply(A, powers[-1], z)
        M = Matrix(A.base, tuple(zip(*[p.coords for p in powers])), len(powers))
        lam = solve(M, nxt.coords)
        if lam is not None:
            return [-c for c in lam] + [A.base.one]
        powers.append(nxt)


def _sympy_poly(coeffs: list, A: Algebra, t):
    if A.base.kind == "Fp":
        return sympy.Poly([int(c) for c in reversed(coeffs)], t, modulus=A.base.p)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")


def _poly_at(A: Algebra, coeffs: list, z: Element) -> Element:
    acc = A.zero()
    for c in reversed(coeffs):
        acc = multiply(A, acc, z) + A.one() * A.base(c)
    return acc


def _decide_field(A: Algebra, elems: list, seed: int):
    m = len(elems)
    if m == 1:
        return "yes", None, "center is the base field"
    t = sympy.Symbol("t")
    rng = random.Random(seed)
    candidates = list(elems)
    candidates += [elems[a] + elems[b] for a in range(m) for b in range(a + 1, m)]
    for _ in range(16):
        z = A.zero()
        for e in elems:
            z = z + e * A.base(rng.randint(-10, 10))
        candidates.append(z)
    for z in candidates:
        if z.is_zero():
            continue
        mu = _minimal_polynomial(A, z)
        poly = _sympy_poly(mu, A, t)
        if poly.degree() > 1 and not poly.is_irreducible:
            _, factors = poly.factor_list()
            g = factors[0][0]
            h = poly.quo(g)
            gz = _poly_at(A, [A.base(_coerce_sym(c)) for c in reversed(g.all_coeffs())], z)
            hz = _poly_at(A, [A.base(_coerce_sym(c)) for c in reversed(h.all_coeffs())], z)
            pair = ZeroDivisorPair(gz, hz)
            if not pair.verify(A):
                raise ArithmeticError("center zero-divisor witness failed verification")
            return "no", pair, f"minimal polynomial of a central element factors: {poly.as_expr()}"
        if poly.degree() == m:
            return "yes", None, f"center = F[t]/({poly.as_expr()}) with irreducible modulus"
    return "unknown", None, "no primitive central element found"


def _coerce_sym(c):
    c = sympy.Rational(int(c)) if isinstance(c, int) else sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def center_basis(A: Algebra, seed: int = DEFAULT_SEED) -> CenterBasis:
    """Kernel of z -> (e_s z - z e_s)_s, with a decision whether the span is a field.

    A commutative finite-dimensional algebra over a field is a field iff it
    has no zero divisors.  The decision first looks for a zero divisor
    among the basis elements, then searches for a central element whose
    minimal polynomial is either reducible (not a field) or irreducible of
    full degree (a field).
    """
    F = _field_algebra(A)
    n = F.dim
    rows = []
    for s in range(n):
        for w in range(n):
            rows.append(tuple(F.table[s][r][w] - F.table[r][s][w] for r in range(n)))
    ker = kernel_basis(Matrix(F.base, tuple(rows), n))
    elems = [_primitive(v, A) for v in ker]
    Fe = [F.element(e.coords) for e in elems]
    for e in Fe:
        zd = is_zero_divisor(F, e)
        if zd is not None:
            left, right = (e, zd.r) if zd.side == "right" else (zd.r, e)
            pair = ZeroDivisorPair(_to_base(A, left), _to_base(A, right))
            return CenterBasis(A, tuple(elems), "no", pair, "a central basis element is a zero divisor")
    verdict, pair, note = _decide_field(F, Fe, seed)
    if pair is not None:
        pair = ZeroDivisorPair(_to_base(A, pair.left), _to_base(A, pair.right))
    return CenterBasis(A, tuple(elems), verdict, pair, note)


# ---------------------------------------------------------------------------
# hypothesis (2): symbolic form


def h2_polynomials(A: Algebra) -> list:
    """Coordinates of ((x, y)^2, e_r) for generic x, y, as polynomials in 2n variables.

    Ordered by basis index r, then by coordinate.  All of them vanish
    identically iff every commutator square is central.
    """
    n = A.dim
    names = [f"x{s}" for s in range(n)] + [f"y{s}" for s in range(n)]
    T = A.table

    # coordinates of v = (x, y): bilinear, keyed by the monomial x_s y_t
    v = []
    for w in range(n):
        coeffs = {}
        for s in range(n):
            for t in range(n):
                c = T[s][t][w] - T[t][s][w]
                if c:
                    exp = [0] * (2 * n)
                    exp[s] += 1
                    exp[n + t] += 1
                    coeffs[tuple(exp)] = c
        v.append(MultiPoly(names, coeffs))

    products = {}
    sq = [MultiPoly(names) for _ in range(n)]
    for p in range(n):
        if v[p].is_zero():
            continue
        for q in range(n):
            if v[q].is_zero():
                continue
            entry = T[p][q]
            if not any(entry):
                continue
            if (p, q) not in products:
                products[(p, q)] = v[p] * v[q]
            prod = products[(p, q)]
            for u, g in enumerate(entry):
                if g:
                    sq[u] = sq[u] + prod.scale(g)

    polys = []
    for r in range(n):
        for w in range(n):
            acc = MultiPoly(names)
            for u in range(n):
                c = T[u][r][w] - T[r][u][w]
                if c and not sq[u].is_zero():
                    acc = acc + sq[u].scale(c)
            polys.append(acc)
    return polys


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    """Outcome of one hypothesis check.

    status is one of ``holds-symbolic``, ``holds-exhaustive``,
    ``holds-implied-by-division``, ``holds-vacuous`` (commutative
    algebra, every commutator is zero), ``no-violation-sampled`` or ``fails``.
    """

    hypothesis: str
    status: str
    witness: Optional[Witness] = None
    samples: Optional[int] = None
    height: Optional[int] = None
    seed: Optional[int] = None
    pairs_checked: Optional[int] = None

    @property
    def fails(self) -> bool:
        return self.status == "fails"

    @property
    def holds(self) -> bool:
        return self.status.startswith("holds")

    def to_json(self) -> dict:
        out = {"hypothesis": self.hypothesis, "status": self.status}
        for key in ("samples", "height", "seed", "pairs_checked"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        out["witness"] = self.witness.to_json() if self.witness else None
        return out


@dataclass(frozen=True)
class HypothesisReport:
    h1: Verdict
    h2: Verdict

    def to_json(self) -> dict:
        return {"h1": self.h1.to_json(), "h2": self.h2.to_json()}


def _h2_violation(A: Algebra, x: Element, y: Element) -> Optional[H2Violation]:
    v = commutator(A, x, y)
    if v.is_zero():
        return None
    sq = multiply(A, v, v)
    for s, e in enumerate(A.basis()):
        if not commutator(A, sq, e).is_zero():
            return H2Violation(x, y, s)
    return None


def _basis_pairs(A: Algebra):
    basis = A.basis()
    for s in range(A.dim):
        for t in range(A.dim):
            if s != t:
                yield basis[s], basis[t]


def _random_pairs(A: Algebra, samples: int, height: int, seed: int):
    rng = random.Random(seed)
    for _ in range(samples):
        yield random_element(A, rng, height), random_element(A, rng, height)


def _parse_mode(mode):
    if isinstance(mode, tuple):
        return mode[0], mode[1:]
    return mode, ()


def check_h2(
    A: Algebra,
    mode="symbolic",
    samples: int = DEFAULT_SAMPLES,
    height: int = DEFAULT_HEIGHT,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """Decide or test hypothesis (2).

    ``mode`` is ``"symbolic"``, ``"exhaustive"`` (finite bases only) or
    ``"randomized"``; ``("randomized", n, height)`` is also accepted.
    Over a finite field the symbolic test reduces exponents with x^p = x
    first, so it decides the statement for the finitely many elements.
    """
    mode, extra = _parse_mode(mode)
    if mode == "randomized" and extra:
        samples, height = extra[0], extra[1] if len(extra) > 1 else height
    if mode == "symbolic":
        polys = h2_polynomials(A)
        if A.base.is_finite:
            polys = [p.reduce_functional(A.base.p) for p in polys]
        bad = next((p for p in polys if not p.is_zero()), None)
        if bad is None:
            return Verdict("h2", "holds-symbolic")
        n = A.dim
        mono = min(bad.coeffs, key=lambda m: (sum(1 for e in m if e), tuple(-e for e in m)))
        x = A.element([1 if mono[s] else 0 for s in range(n)])
        y = A.element([1 if mono[n + s] else 0 for s in range(n)])
        wit = _h2_violation(A, x, y)
        if wit is None:
            pairs = itertools.chain(_basis_pairs(A), _random_pairs(A, 10 * samples, height, seed))
            wit = next((w for w in (_h2_violation(A, a, b) for a, b in pairs) if w), None)
        if wit is None and A.base.is_finite:
            wit = next((w for w in (_h2_violation(A, a, b) for a in all_elements(A) for b in all_elements(A)) if w), None)
        return Verdict("h2", "fails", wit, seed=seed)
    if mode == "exhaustive":
        if not A.base.is_finite:
            raise ValueError("exhaustive mode needs a finite base ring")
        elems = list(all_elements(A))
        count = 0
        for x in elems:
            for y in elems:
                count += 1
                wit = _h2_violation(A, x, y)
                if wit:
                    return Verdict("h2", "fails", wit, pairs_checked=count)
        return Verdict("h2", "holds-exhaustive", pairs_checked=count)
    if mode == "randomized":
        count = 0
        for x, y in itertools.chain(_basis_pairs(A), _random_pairs(A, samples, height, seed)):
            count += 1
            wit = _h2_violation(A, x, y)
            if wit:
                return Verdict("h2", "fails", wit, samples=samples, height=height, seed=seed, pairs_checked=count)
        return Verdict("h2", "no-violation-sampled", samples=samples, height=height, seed=seed, pairs_checked=count)
    raise ValueError(f"unknown mode {mode!r}")


def check_h1(
    A: Algebra,
    mode="randomized",
    samples: int = DEFAULT_SAMPLES,
    height: int = DEFAULT_HEIGHT,
    seed: int = DEFAULT_SEED,
    outcome=None,
) -> Verdict:
    """Test hypothesis (1).

    ``"exhaustive"`` scans all pairs over a finite base; ``"randomized"``
    scans basis pairs and then ``samples`` random pairs; ``"implied"``
    concludes from a recognition outcome whose algebra equals its
    quaternion subalgebra and is certified to be a division algebra.
    """
    mode, extra = _parse_mode(mode)
    if mode == "randomized" and extra:
        samples, height = extra[0], extra[1] if len(extra) > 1 else height
    if mode == "implied":
        if outcome is None or not getattr(outcome, "division_certified", False):
            raise ValueError("implied mode needs a recognition outcome with a division certificate")
        return Verdict("h1", "holds-implied-by-division")
    if mode == "randomized" and all(commutator(A, x, y).is_zero() for x, y in _basis_pairs(A)):
        return Verdict("h1", "holds-vacuous")

    cache = {}

    def test(x, y):
        v = commutator(A, x, y)
        if v.is_zero():
            return None
        key = v.coords
        if key not in cache:
            cache[key] = is_zero_divisor(A, v)
        zd = cache[key]
        if zd is None:
            return None
        return CommutatorZeroDivisor(x, y, zd.r, zd.side)

    if mode == "exhaustive":
        if not A.base.is_finite:
            raise ValueError("exhaustive mode needs a finite base ring")
        elems = list(all_elements(A))
        count = 0
        for x in elems:
            for y in elems:
                count += 1
                wit = test(x, y)
                if wit:
                    return Verdict("h1", "fails", wit, pairs_checked=count)
        return Verdict("h1", "holds-exhaustive", pairs_checked=count)
    if mode == "randomized":
        count = 0
        for x, y in itertools.chain(_basis_pairs(A), _random_pairs(A, samples, height, seed)):
            count += 1
            wit = test(x, y)
            if wit:
                return Verdict("h1", "fails", wit, samples=samples, height=height, seed=seed, pairs_checked=count)
        return Verdict("h1", "no-violation-sampled", samples=samples, height=height, seed=seed, pairs_checked=count)
    raise ValueError(f"unknown mode {mode!r}")


def _exhaustive_ok(A: Algebra) -> bool:
    return A.base.is_finite and A.base.p ** (2 * A.dim) <= EXHAUSTIVE_PAIR_LIMIT


def check_hypotheses(
    A: Algebra,
    samples: int = DEFAULT_SAMPLES,
    height: int = DEFAULT_HEIGHT,
    seed: int = DEFAULT_SEED,
) -> HypothesisReport:
    """Default strategy: exhaustive over small finite bases, symbolic H2 and sampled H1 otherwise."""
    if _exhaustive_ok(A):
        h2 = check_h2(A, "exhaustive")
        h1 = check_h1(A, "exhaustive")
    else:
        F = A.lift()
        h2 = check_h2(F, "symbolic", samples, height, seed)
        h1 = check_h1(F, "randomized", samples, height, seed)
        if A is not F:
            h2, h1 = _pull_back(A, h2), _pull_back(A, h1)
    return HypothesisReport(h1, h2)


def _to_base(A: Algebra, e: Element) -> Element:
    if A.base.is_field or all(c.denominator == 1 for c in e.coords):
        return A.element(e.coords)
    return _primitive(e.coords, A)


def _pull_back(A: Algebra, v: Verdict) -> Verdict:
    # witnesses found over Q for a Z-presentation; rescaling by non-zero
    # scalars preserves both kinds of violation
    w = v.witness
    if isinstance(w, H2Violation):
        w = H2Violation(_to_base(A, w.x), _to_base(A, w.y), w.basis_index)
    elif isinstance(w, CommutatorZeroDivisor):
        w = CommutatorZeroDivisor(_to_base(A, w.x), _to_base(A, w.y), _to_base(A, w.r), w.side)
    return Verdict(v.hypothesis, v.status, w, v.samples, v.height, v.seed, v.pairs_checked)
