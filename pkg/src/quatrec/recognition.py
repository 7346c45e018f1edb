"""Recognising quaternion structure from the commutator hypotheses.

Given an algebra whose commutators square into the center and are never
zero divisors, the steps below build i, j, k = ij with i^2, j^2 central
and ij = -ji, write every element as c0 + c1 i + c2 j + c3 k with central
coefficients, and check that nothing is left over.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Algebra, Element, commutator, is_central, multiply, validate
from .analysis import (
    DEFAULT_HEIGHT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    CenterBasis,
    HypothesisReport,
    Verdict,
    center_basis,
    check_h1,
    check_hypotheses,
    is_zero_divisor,
    random_element,
)
from .exact_math import Matrix, kernel_basis, rank, solve
from .norm_division import (
    DivisionVerdict,
    is_division,
    is_division_finite,
    pure_isotropy_search,
)
from .witnesses import (
    AnticommutationFailure,
    AssociativityFailure,
    CentralFallback,
    CharacteristicTwoWitness,
    CommutativeAlgebra,
    CommutatorZeroDivisor,
    DependentElements,
    H2Violation,
    NonCentralAnticommutator,
    NonCentralElement,
    UnitFailure,
    Witness,
    ZeroDivisorPair,
)

__all__ = [
    "RecognitionError",
    "NoCommutatorFound",
    "FallbackFailed",
    "AnticommutationFailed",
    "DegenerateSquare",
    "DependentBasis",
    "CentralInput",
    "NoCommutator",
    "CertificateFailed",
    "CharacteristicTwo",
    "NonCentralAnticommutatorError",
    "CenterNotField",
    "QuaternionStructure",
    "QuadraticCertificate",
    "Decomposition",
    "CompletenessReport",
    "RecognitionOutcome",
    "find_noncentral_commutator",
    "build_quaternion_structure",
    "structure_from_elements",
    "presentation_structure",
    "quadratic_certificate",
    "decompose",
    "m_chain_witness",
    "completeness_check",
    "recognize",
]


class RecognitionError(Exception):
    """A refusal raised by one of the construction steps; carries a witness when one exists."""

    stage = "recognition"

    def __init__(self, reason: str, witness: Optional[Witness] = None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


class NoCommutatorFound(RecognitionError):
    stage = "commutator"


class FallbackFailed(RecognitionError):
    stage = "commutator"


class AnticommutationFailed(RecognitionError):
    stage = "structure"


class DegenerateSquare(RecognitionError):
    stage = "structure"


class DependentBasis(RecognitionError):
    stage = "structure"


class CentralInput(RecognitionError):
    stage = "quadratic"


class NoCommutator(RecognitionError):
    stage = "quadratic"


class CertificateFailed(RecognitionError):
    stage = "quadratic"


class CharacteristicTwo(RecognitionError):
    stage = "characteristic"


class NonCentralAnticommutatorError(RecognitionError):
    stage = "decomposition"


class CenterNotField(RecognitionError):
    stage = "center"


def _noncentral_index(A: Algebra, z: Element) -> Optional[int]:
    for s, e in enumerate(A.basis()):
        if not commutator(A, z, e).is_zero():
            return s
    return None


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class QuaternionStructure:
    """i, j, k = ij with a = i^2 and b = j^2 central; ``provenance`` records x, y, s."""

    i: Element
    j: Element
    k: Element
    a: Element
    b: Element
    center: CenterBasis
    provenance: dict = field(default_factory=dict, compare=False)

    def units(self) -> tuple:
        return (self.i, self.j, self.k)

    def to_json(self) -> dict:
        return {
            "i": self.i.to_json(),
            "j": self.j.to_json(),
            "k": self.k.to_json(),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "provenance": {key: val.to_json() for key, val in self.provenance.items()},
        }


@dataclass(frozen=True)
class QuadraticCertificate:
    """a x^2 + b x + c = 0 with a = v^2, b = v^2 + (vx)^2 - (v + vx)^2, c = (vx)^2."""

    x: Element
    y: Element
    v: Element
    a: Element
    b: Element
    c: Element

    def residual(self) -> Element:
        A = self.x.algebra
        x2 = multiply(A, self.x, self.x)
        return multiply(A, self.a, x2) + multiply(A, self.b, self.x) + self.c

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("x", "y", "v", "a", "b", "c")}


@dataclass(frozen=True)
class Decomposition:
    """x = c0 + c1 i + c2 j + c3 k + m with central c's; d_u = p u + u p for p = x - c0."""

    x: Element
    c0: Element
    c1: Element
    c2: Element
    c3: Element
    d_i: Optional[Element]
    d_j: Optional[Element]
    d_k: Optional[Element]
    m: Element
    certificate: Optional[QuadraticCertificate] = None
    zero_divisor: Optional[ZeroDivisorPair] = None

    @property
    def coefficients(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def reconstruct(self, qs: QuaternionStructure) -> Element:
        A = self.x.algebra
        out = self.c0 + self.m
        for c, u in zip((self.c1, self.c2, self.c3), qs.units()):
            out = out + multiply(A, c, u)
        return out

    def scalars(self, center: CenterBasis) -> Optional[tuple]:
        """Coefficients as base-field scalars when the center is spanned by 1."""
        A = self.x.algebra
        if center.dim != 1 or center.elements[0] != A.one():
            return None
        return tuple(center.coordinates(c)[0] for c in self.coefficients)

    def to_json(self) -> dict:
        out = {
            "x": self.x.to_json(),
            "coefficients": [c.to_json() for c in self.coefficients],
            "anticommutators": [None if d is None else d.to_json() for d in (self.d_i, self.d_j, self.d_k)],
            "m": self.m.to_json(),
        }
        if self.zero_divisor is not None:
            out["zero_divisor"] = self.zero_divisor.to_json()
        return out


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    center_rank: int
    span_rank: int
    dim: int
    decompositions: tuple
    first_failure: Optional[int] = None
    witness: Optional[Witness] = None

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "center_rank": self.center_rank,
            "span_rank": self.span_rank,
            "dim": self.dim,
            "first_failure": self.first_failure,
            "witness": self.witness.to_json() if self.witness else None,
        }


# ---------------------------------------------------------------------------
# construction steps


def find_noncentral_commutator(A: Algebra, C: CenterBasis, x: Optional[Element] = None, y: Optional[Element] = None):
    """A commutator outside the center, with the pair that produced it.

    x defaults to the first non-central basis element and y is scanned in
    basis order.  When (x, y) happens to be central, (x, yx) = (x, y) x is
    used instead.
    """
    basis = A.basis()
    if x is None:
        x = next((e for e in basis if not is_central(A, e)), None)
        if x is None:
            raise NoCommutatorFound("the algebra is commutative", CommutativeAlgebra())
    ys = [y] if y is not None else basis
    for cand in ys:
        v = commutator(A, x, cand)
        if v.is_zero():
            continue
        if not is_central(A, v):
            return v, {"x": x, "y": cand}
        vx = multiply(A, v, x)
        if not is_central(A, vx):
            return vx, {"x": x, "y": multiply(A, cand, x)}
        raise FallbackFailed("(x, y) and (x, y) x are both central", CentralFallback(x, cand))
    raise NoCommutatorFound("x commutes with every candidate y")


def _candidates(A: Algebra, seed: int, height: int, count: int = DEFAULT_SAMPLES):
    yield from A.basis()
    rng = random.Random(seed)
    for _ in range(count):
        yield random_element(A, rng, height)


def _check_square(A: Algebra, u: Element, label: str) -> Element:
    sq = multiply(A, u, u)
    if sq.is_zero():
        raise DegenerateSquare(f"{label}^2 = 0", ZeroDivisorPair(u, u))
    idx = _noncentral_index(A, sq)
    if idx is not None:
        raise DegenerateSquare(f"{label}^2 is not central", NonCentralElement(sq, idx, f"{label}^2"))
    return sq


def structure_from_elements(A: Algebra, C: CenterBasis, i: Element, j: Element, provenance=None) -> QuaternionStructure:
    """Check the quaternion relations for a given pair (i, j) and package them."""
    if is_central(A, i) or is_central(A, j):
        raise DependentBasis("i and j must lie outside the center")
    a = _check_square(A, i, "i")
    b = _check_square(A, j, "j")
    k = multiply(A, i, j)
    if not (k + multiply(A, j, i)).is_zero():
        raise AnticommutationFailed("ij != -ji", AnticommutationFailure(i, j))
    elems = (A.one(), i, j, k)
    M = Matrix(A.base, tuple(zip(*[e.coords for e in elems])), 4)
    ker = kernel_basis(M)
    if ker:
        raise DependentBasis("1, i, j, k are linearly dependent", DependentElements(elems, tuple(A.base(c) for c in ker[0])))
    return QuaternionStructure(i, j, k, a, b, C, dict(provenance or {}))


def presentation_structure(A: Algebra, C: CenterBasis) -> Optional[QuaternionStructure]:
    """The presentation's own e1, e2, e3 = e1 e2 when e0 = 1 and they already satisfy the relations."""
    if A.dim != 4 or A.e(0) != A.one():
        return None
    try:
        qs = structure_from_elements(A, C, A.e(1), A.e(2))
    except RecognitionError:
        return None
    return qs if qs.k == A.e(3) else None


def build_quaternion_structure(
    A: Algebra,
    C: Optional[CenterBasis] = None,
    seed: int = DEFAULT_SEED,
    height: int = DEFAULT_HEIGHT,
) -> QuaternionStructure:
    """i = a non-central commutator, j = (i, s) for the first s making it non-zero, k = ij."""
    if C is None:
        C = center_basis(A, seed)
    i, prov = find_noncentral_commutator(A, C)
    _check_square(A, i, "i")
    for s in _candidates(A, seed, height):
        j = commutator(A, i, s)
        if not j.is_zero():
            prov = dict(prov, s=s)
            return structure_from_elements(A, C, i, j, prov)
    raise NoCommutatorFound("i commutes with every scanned element")


def quadratic_certificate(A: Algebra, x: Element) -> QuadraticCertificate:
    """Central a, b, c with a x^2 + b x + c = 0, built from v = (x, y) for the first basis y with v != 0."""
    if is_central(A, x):
        raise CentralInput("x is central; x - x*1 = 0 is the trivial certificate")
    for y in A.basis():
        v = commutator(A, x, y)
        if not v.is_zero():
            break
    else:
        raise NoCommutator("x commutes with every basis element")
    vx = multiply(A, v, x)
    a = multiply(A, v, v)
    c = multiply(A, vx, vx)
    w = v + vx
    gamma = multiply(A, w, w)
    b = a + c - gamma
    # v, vx = (x, yx) and v + vx = (x, y + yx) are commutators
    for z, yy in ((a, y), (c, multiply(A, y, x)), (gamma, y + multiply(A, y, x))):
        idx = _noncentral_index(A, z)
        if idx is not None:
            raise CertificateFailed("a commutator square is not central", H2Violation(x, yy, idx))
    cert = QuadraticCertificate(x, y, v, a, b, c)
    if not cert.residual().is_zero():
        raise ArithmeticError("quadratic certificate failed verification")
    return cert


def m_chain_witness(A: Algebra, qs: QuaternionStructure, m: Element) -> Optional[ZeroDivisorPair]:
    """If m != 0 anticommutes with i, j and k, then mk = km and so 2km = 0: return (k, m)."""
    if m.is_zero():
        return None
    for u in qs.units():
        if not (multiply(A, m, u) + multiply(A, u, m)).is_zero():
            return None
    pair = ZeroDivisorPair(qs.k, m)
    return pair if pair.verify(A) else None


def _require_char_not_two(A: Algebra):
    if A.base.characteristic == 2:
        raise CharacteristicTwo("division by 2 is impossible in characteristic 2", CharacteristicTwoWitness())


def decompose(A: Algebra, qs: QuaternionStructure, x: Element) -> Decomposition:
    """Coefficients of x over 1, i, j, k, with residual m.

    c0 is chosen so that p = x - c0 satisfies p^2 in C (completing the
    square in the quadratic certificate); then c_u = (pu + up) / (2u^2).
    """
    _require_char_not_two(A)
    C = qs.center
    if C.is_field != "yes" or not A.base.is_field:
        raise CenterNotField(f"center is not known to be a field (is_field={C.is_field})")
    zero = A.zero()
    if is_central(A, x):
        return Decomposition(x, x, zero, zero, zero, None, None, None, zero)
    cert = quadratic_certificate(A, x)
    two_a_inv = C.inverse(cert.a * 2)
    if two_a_inv is None:
        raise CenterNotField("2a is not invertible in the center")
    c0 = -multiply(A, cert.b, two_a_inv)
    p = x - c0
    ds, cs = [], []
    for u in qs.units():
        d = multiply(A, p, u) + multiply(A, u, p)
        idx = _noncentral_index(A, d)
        if idx is not None:
            raise NonCentralAnticommutatorError("pu + up is not central", NonCentralAnticommutator(p, u, idx))
        inv = C.inverse(multiply(A, u, u) * 2)
        if inv is None:
            raise CenterNotField("2u^2 is not invertible in the center")
        ds.append(d)
        cs.append(multiply(A, d, inv))
    m = p
    for c, u in zip(cs, qs.units()):
        m = m - multiply(A, c, u)
    dec = Decomposition(x, c0, cs[0], cs[1], cs[2], ds[0], ds[1], ds[2], m, cert, m_chain_witness(A, qs, m))
    if dec.reconstruct(qs) != x:
        raise ArithmeticError("decomposition failed to reconstruct its input")
    return dec


def completeness_check(A: Algebra, qs: QuaternionStructure) -> CompletenessReport:
    """Decompose every basis element; complete iff every residual vanishes."""
    _require_char_not_two(A)
    C = qs.center
    span = [multiply(A, c, u) for c in C.elements for u in (A.one(),) + qs.units()]
    span_rank = rank(Matrix(A.base, tuple(zip(*[e.coords for e in span])), len(span)))
    decs = []
    first, wit = None, None
    for s, e in enumerate(A.basis()):
        dec = decompose(A, qs, e)
        decs.append(dec)
        if first is None and not dec.m.is_zero():
            first, wit = s, dec.zero_divisor
    complete = first is None and span_rank == A.dim
    return CompletenessReport(complete, C.dim, span_rank, A.dim, tuple(decs), first, wit)


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class RecognitionOutcome:
    """Result of :func:`recognize`.

    ``status`` is ``"quaternion"``, ``"refused"`` or ``"inconclusive"``.
    Witnesses refer to ``algebra``, the presentation actually analysed
    (the rational lift of an integer presentation).
    """

    status: str
    algebra: Algebra
    original: Algebra
    stage: str = ""
    reason: str = ""
    witnesses: list = field(default_factory=list)
    localized: bool = False
    validation: Optional[object] = None
    center: Optional[CenterBasis] = None
    hypotheses: Optional[HypothesisReport] = None
    structure: Optional[QuaternionStructure] = None
    completeness: Optional[CompletenessReport] = None
    division: Optional[DivisionVerdict] = None
    params: dict = field(default_factory=dict)
    structure_source: str = ""

    @property
    def division_certified(self) -> bool:
        return (
            self.structure is not None
            and self.completeness is not None
            and self.completeness.complete
            and self.division is not None
            and self.division.is_division
        )

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "stage": self.stage,
            "reason": self.reason,
            "localization": {
                "applied": self.localized,
                "from": str(self.original.base),
                "to": str(self.algebra.base),
            },
            "validation": self.validation.to_json() if self.validation else None,
            "center": self.center.to_json() if self.center else None,
            "hypotheses": self.hypotheses.to_json() if self.hypotheses else None,
            "structure": self.structure.to_json() if self.structure else None,
            "structure_source": self.structure_source or None,
            "completeness": self.completeness.to_json() if self.completeness else None,
            "decompositions": (
                [d.to_json() for d in self.completeness.decompositions] if self.completeness else None
            ),
            "division": self.division.to_json() if self.division else None,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _commutator_preimage(A: Algebra, target: Element, qs: QuaternionStructure):
    # find (x, y) with (x, y) = target by solving the linear system y -> (x, y)
    i, j, k = qs.units()
    for x in (i, j, k, i + j, i + k, j + k, i + j + k, *A.basis()):
        cols = [commutator(A, x, e).coords for e in A.basis()]
        sol = solve(Matrix(A.base, tuple(zip(*cols)), A.dim), target.coords)
        if sol is not None:
            y = A.element(sol)
            if commutator(A, x, y) == target:
                return x, y
    return None


def _split_witnesses(A: Algebra, qs: QuaternionStructure, verdict: DivisionVerdict, alpha, beta) -> list:
    one = A.one()
    i, j, k = qs.units()

    def combo(vec, sign=1):
        out = one * A.base(vec[0])
        for c, u in zip(vec[1:], (i, j, k)):
            out = out + u * A.base(sign * c)
        return out

    out = []
    vec = verdict.vector
    if vec is not None:
        q, qbar = combo(vec), combo(vec, -1)
        pair = ZeroDivisorPair(q, qbar)
        if pair.verify(A):
            out.append(pair)
    pure = None
    if A.base.is_finite:
        p = A.base.p
        for vec3 in itertools.product(range(p), repeat=3):
            if any(vec3) and (-alpha * vec3[0] ** 2 - beta * vec3[1] ** 2 + alpha * beta * vec3[2] ** 2) == 0:
                pure = (0,) + vec3
                break
    else:
        for bound in (10, 100):
            pure = pure_isotropy_search(alpha, beta, bound)
            if pure is not None:
                break
    if pure is not None:
        target = combo(pure)
        pre = _commutator_preimage(A, target, qs)
        if pre is not None:
            zd = is_zero_divisor(A, target)
            if zd is not None:
                wit = CommutatorZeroDivisor(pre[0], pre[1], zd.r, zd.side)
                if wit.verify(A):
                    out.append(wit)
    return out


def _validation_witness(report) -> Witness:
    if not report.associative:
        return AssociativityFailure(*report.associativity_witness)
    return UnitFailure(report.unit_witness)


def recognize(
    A: Algebra,
    samples: int = DEFAULT_SAMPLES,
    height: int = DEFAULT_HEIGHT,
    seed: int = DEFAULT_SEED,
) -> RecognitionOutcome:
    """Run validation, hypothesis checks and the quaternion construction end to end."""
    params = {"samples": samples, "height": height, "seed": seed}
    report = validate(A)
    out = RecognitionOutcome("refused", A, A, validation=report, params=params)
    if not report.ok:
        out.stage, out.reason = "validation", "not an associative unital algebra"
        out.witnesses.append(_validation_witness(report))
        return out
    if A.base.kind == "Z":
        # replace R by its localization; with a field center this is R tensor Q
        out.algebra = A.lift()
        out.localized = True
    F = out.algebra
    if report.commutative:
        out.stage, out.reason = "commutativity", "the algebra is commutative"
        out.witnesses.append(CommutativeAlgebra())
        return out

    out.center = center_basis(F, seed)
    out.hypotheses = check_hypotheses(F, samples, height, seed)
    h1, h2 = out.hypotheses.h1, out.hypotheses.h2

    if F.base.characteristic == 2:
        out.stage = "characteristic"
        out.reason = "CharacteristicTwo: quadratic normalisation and the decomposition divide by 2"
        out.witnesses.append(CharacteristicTwoWitness())
        out.witnesses.extend(v.witness for v in (h2, h1) if v.fails and v.witness)
        return out
    if h2.fails:
        out.stage, out.reason = "h2", "a commutator square is not central"
        out.witnesses.append(h2.witness)
        return out
    if h1.fails:
        out.stage, out.reason = "h1", "a non-zero commutator is a zero divisor"
        out.witnesses.append(h1.witness)
        return out
    if out.center.is_field == "no":
        out.stage, out.reason = "center", "the center is not a field"
        out.witnesses.append(out.center.zero_divisor)
        return out
    if out.center.is_field == "unknown":
        out.status, out.stage, out.reason = "inconclusive", "center", out.center.note
        return out

    try:
        qs = presentation_structure(F, out.center)
        out.structure_source = "presentation"
        if qs is None:
            qs = build_quaternion_structure(F, out.center, seed, height)
            out.structure_source = "constructed"
        out.structure = qs
        out.completeness = completeness_check(F, qs)
    except RecognitionError as err:
        out.stage, out.reason = err.stage, f"{type(err).__name__}: {err.reason}"
        if err.witness is not None:
            out.witnesses.append(err.witness)
        return out
    if not out.completeness.complete:
        out.stage, out.reason = "completeness", "the algebra is larger than C + Ci + Cj + Ck"
        if out.completeness.witness is not None:
            out.witnesses.append(out.completeness.witness)
        return out

    alpha, beta = qs.center.coordinates(qs.a), qs.center.coordinates(qs.b)
    unit_center = qs.center.dim == 1 and qs.center.elements[0] == F.one()
    if not unit_center:
        out.division = DivisionVerdict("unknown", note="division certification needs the center to be the base field")
    elif F.base.is_finite:
        out.division = is_division_finite(int(alpha[0]), int(beta[0]), F.base.p)
    else:
        out.division = is_division(alpha[0], beta[0])

    if out.division.status == "split":
        out.stage, out.reason = "division", "the norm form is isotropic: the algebra splits"
        out.witnesses.extend(_split_witnesses(F, qs, out.division, alpha[0], beta[0]))
        h1_wit = next((w for w in out.witnesses if isinstance(w, CommutatorZeroDivisor)), None)
        if h1_wit is not None:
            out.hypotheses = HypothesisReport(Verdict("h1", "fails", h1_wit, seed=seed), h2)
        return out

    out.status, out.stage = "quaternion", "done"
    if out.division.is_division:
        out.reason = "quaternion division algebra over the center"
        out.hypotheses = HypothesisReport(check_h1(F, "implied", outcome=out), h2)
    else:
        out.reason = "quaternion algebra over the center; division property not certified"
    return out
