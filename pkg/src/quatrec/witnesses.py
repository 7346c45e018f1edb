"""Re-verifiable witnesses for every negative verdict.

Each witness checks itself against an algebra using nothing beyond the
structure-constant product, the commutator and element addition, so a
refusal can be replayed independently of the code path that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import ClassVar, Optional

from .algebra import Algebra, Element, commutator, multiply

__all__ = [
    "Witness",
    "AssociativityFailure",
    "UnitFailure",
    "CommutativeAlgebra",
    "H2Violation",
    "CommutatorZeroDivisor",
    "ZeroDivisorPair",
    "AnticommutationFailure",
    "NonCentralElement",
    "NonCentralAnticommutator",
    "CentralFallback",
    "DependentElements",
    "CharacteristicTwoWitness",
    "witness_from_json",
]


def _noncentral_at(A: Algebra, z: Element, s: int) -> bool:
    return not commutator(A, z, A.e(s)).is_zero()


def _central(A: Algebra, z: Element) -> bool:
    return all(not _noncentral_at(A, z, s) for s in range(A.dim))


class Witness:
    kind: ClassVar[str] = ""

    def verify(self, A: Algebra) -> bool:
        raise NotImplementedError

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Element):
                v = v.to_json()
            elif isinstance(v, tuple) and v and isinstance(v[0], Element):
                v = [e.to_json() for e in v]
            elif isinstance(v, tuple):
                v = [str(c) for c in v]
            out[f.name] = v
        return out


@dataclass(frozen=True)
class AssociativityFailure(Witness):
    """(e_s e_t) e_u != e_s (e_t e_u)."""

    kind: ClassVar[str] = "associativity"
    s: int
    t: int
    u: int

    def verify(self, A):
        es, et, eu = A.e(self.s), A.e(self.t), A.e(self.u)
        return multiply(A, multiply(A, es, et), eu) != multiply(A, es, multiply(A, et, eu))


@dataclass(frozen=True)
class UnitFailure(Witness):
    kind: ClassVar[str] = "unit"
    s: int

    def verify(self, A):
        es, one = A.e(self.s), A.one()
        return multiply(A, one, es) != es or multiply(A, es, one) != es


@dataclass(frozen=True)
class CommutativeAlgebra(Witness):
    """Every pair of basis elements commutes."""

    kind: ClassVar[str] = "commutative"

    def verify(self, A):
        return all(commutator(A, A.e(s), A.e(t)).is_zero() for s in range(A.dim) for t in range(s + 1, A.dim))


@dataclass(frozen=True)
class H2Violation(Witness):
    """v = (x, y) has a square that fails to commute with e_basis_index."""

    kind: ClassVar[str] = "h2_violation"
    x: Element
    y: Element
    basis_index: int

    def verify(self, A):
        v = commutator(A, self.x, self.y)
        return _noncentral_at(A, multiply(A, v, v), self.basis_index)


@dataclass(frozen=True)
class CommutatorZeroDivisor(Witness):
    """v = (x, y) is non-zero and v r = 0 (side "right") or r v = 0 (side "left") with r != 0."""

    kind: ClassVar[str] = "commutator_zero_divisor"
    x: Element
    y: Element
    r: Element
    side: str

    def verify(self, A):
        v = commutator(A, self.x, self.y)
        if v.is_zero() or self.r.is_zero():
            return False
        prod = multiply(A, v, self.r) if self.side == "right" else multiply(A, self.r, v)
        return prod.is_zero()


@dataclass(frozen=True)
class ZeroDivisorPair(Witness):
    """left and right are non-zero with left * right = 0."""

    kind: ClassVar[str] = "zero_divisor"
    left: Element
    right: Element

    def verify(self, A):
        return not self.left.is_zero() and not self.right.is_zero() and multiply(A, self.left, self.right).is_zero()


@dataclass(frozen=True)
class AnticommutationFailure(Witness):
    kind: ClassVar[str] = "anticommutation"
    i: Element
    j: Element

    def verify(self, A):
        return not (multiply(A, self.i, self.j) + multiply(A, self.j, self.i)).is_zero()


@dataclass(frozen=True)
class NonCentralElement(Witness):
    """``element`` does not commute with e_basis_index; ``label`` names its role."""

    kind: ClassVar[str] = "noncentral"
    element: Element
    basis_index: int
    label: str = ""

    def verify(self, A):
        return _noncentral_at(A, self.element, self.basis_index)


@dataclass(frozen=True)
class NonCentralAnticommutator(Witness):
    """d = p u + u p does not commute with e_basis_index."""

    kind: ClassVar[str] = "noncentral_anticommutator"
    p: Element
    u: Element
    basis_index: int

    def verify(self, A):
        d = multiply(A, self.p, self.u) + multiply(A, self.u, self.p)
        return _noncentral_at(A, d, self.basis_index)


@dataclass(frozen=True)
class CentralFallback(Witness):
    """x is non-central, v = (x, y) != 0 is central and so is v x."""

    kind: ClassVar[str] = "central_fallback"
    x: Element
    y: Element

    def verify(self, A):
        v = commutator(A, self.x, self.y)
        return (
            not _central(A, self.x)
            and not v.is_zero()
            and _central(A, v)
            and _central(A, multiply(A, v, self.x))
        )


@dataclass(frozen=True)
class DependentElements(Witness):
    """sum(coefficient * element) = 0 with some non-zero coefficient."""

    kind: ClassVar[str] = "dependent"
    elements: tuple
    coefficients: tuple

    def verify(self, A):
        if not any(self.coefficients):
            return False
        total = A.zero()
        for c, e in zip(self.coefficients, self.elements):
            total = total + e * c
        return total.is_zero()


@dataclass(frozen=True)
class CharacteristicTwoWitness(Witness):
    """1 + 1 = 0 in the algebra."""

    kind: ClassVar[str] = "characteristic_two"

    def verify(self, A):
        one = A.one()
        return (one + one).is_zero()


_KINDS = {
    cls.kind: cls
    for cls in (
        AssociativityFailure,
        UnitFailure,
        CommutativeAlgebra,
        H2Violation,
        CommutatorZeroDivisor,
        ZeroDivisorPair,
        AnticommutationFailure,
        NonCentralElement,
        NonCentralAnticommutator,
        CentralFallback,
        DependentElements,
        CharacteristicTwoWitness,
    )
}


def witness_from_json(A: Algebra, data: dict) -> Optional[Witness]:
    """Rebuild a witness from its JSON form (the inverse of ``to_json``)."""
    cls = _KINDS.get(data.get("kind"))
    if cls is None:
        raise ValueError(f"unknown witness kind {data.get('kind')!r}")
    kwargs = {}
    for f in fields(cls):
        v = data[f.name]
        if f.type in ("Element",):
            v = A.element(v)
        elif f.name == "elements":
            v = tuple(A.element(e) for e in v)
        elif f.name == "coefficients":
            v = tuple(A.base(c) for c in v)
        kwargs[f.name] = v
    return cls(**kwargs)
