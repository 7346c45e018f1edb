"""Formal fractions x/c with central, non-zero denominators.

Fractions are never reduced; equality is the cross relation
x/c = y/d  iff  d x = c y.
"""

from __future__ import annotations

from math import lcm

from .algebra import Algebra, Element, is_central, multiply

__all__ = ["FormalFraction", "frac_eq", "frac_add", "frac_mul", "embed", "localize", "from_lifted"]


class FormalFraction:
    __slots__ = ("num", "den")

    def __init__(self, num: Element, den: Element):
        A = num.algebra
        if den.is_zero():
            raise ValueError("denominator must be non-zero")
        if not is_central(A, den):
            raise ValueError("denominator must be central")
        self.num = num
        self.den = den

    @property
    def algebra(self) -> Algebra:
        return self.num.algebra

    def __eq__(self, other):
        if not isinstance(other, FormalFraction):
            return NotImplemented
        return frac_eq(self, other)

    __hash__ = None

    def __add__(self, other):
        return frac_add(self, other)

    def __mul__(self, other):
        return frac_mul(self, other)

    def __str__(self):
        return f"({self.num.coords_text()}) / ({self.den.coords_text()})"

    def __repr__(self):
        return f"FormalFraction({self.num} / {self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json(), "text": str(self)}


def frac_eq(f: FormalFraction, g: FormalFraction) -> bool:
    """x/c = y/d iff d x = c y."""
    A = f.algebra
    return multiply(A, g.den, f.num) == multiply(A, f.den, g.num)


def frac_add(f: FormalFraction, g: FormalFraction) -> FormalFraction:
    """(x/c) + (y/d) = (d x + c y) / (c d)."""
    A = f.algebra
    return FormalFraction(
        multiply(A, g.den, f.num) + multiply(A, f.den, g.num),
        multiply(A, f.den, g.den),
    )


def frac_mul(f: FormalFraction, g: FormalFraction) -> FormalFraction:
    """(x/c)(y/d) = (x y) / (c d)."""
    A = f.algebra
    return FormalFraction(multiply(A, f.num, g.num), multiply(A, f.den, g.den))


def embed(A: Algebra, r: Element) -> FormalFraction:
    """r -> r/1."""
    return FormalFraction(r, A.one())


def localize(A: Algebra) -> Algebra:
    """Computational stand-in for R//C.

    An integer presentation is read over Q: every fraction x/c with
    integer central denominator is then an honest element.  Over a field
    base the presentation is returned unchanged.
    """
    return A.lift()


def from_lifted(A: Algebra, z: Element) -> FormalFraction:
    """Write an element of the rational lift of an integer presentation as a fraction over A."""
    den = 1
    for c in z.coords:
        den = lcm(den, c.denominator)
    return FormalFraction(A.element([c * den for c in z.coords]), A.scalar(den))
