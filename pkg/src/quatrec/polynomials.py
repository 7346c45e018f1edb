"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from typing import Dict, Sequence, Tuple

Monomial = Tuple[int, ...]


class MultiPoly:
    """Polynomial in a fixed list of variables, stored as ``{exponent tuple: coefficient}``.

    Zero coefficients are never stored.  ``terms()`` lists monomials in
    descending lexicographic order of their exponent vectors.
    """

    __slots__ = ("variables", "coeffs")

    def __init__(self, variables: Sequence[str], coeffs: Dict[Monomial, object] = None):
        self.variables = tuple(variables)
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c}

    @classmethod
    def variable(cls, variables: Sequence[str], index: int, one) -> "MultiPoly":
        exp = [0] * len(variables)
        exp[index] = 1
        return cls(variables, {tuple(exp): one})

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    def _same(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise ValueError("polynomials over different variable lists")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._same(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return MultiPoly(self.variables, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly(self.variables)
        return MultiPoly(self.variables, {m: v * c for m, v in self.coeffs.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._same(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return MultiPoly(self.variables, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=-1)

    def terms(self) -> list:
        return sorted(self.coeffs.items(), key=lambda mc: mc[0], reverse=True)

    def evaluate(self, point: Sequence, zero):
        total = zero
        for m, c in self.coeffs.items():
            term = c
            for v, e in zip(point, m):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def reduce_functional(self, q: int) -> "MultiPoly":
        """Reduce exponents with x^q = x, the identity satisfied by every element of F_q.

        For a prime q, two reduced polynomials agree as functions on F_q iff
        they are equal.
        """
        out: Dict[Monomial, object] = {}
        for m, c in self.coeffs.items():
            red = tuple(0 if e == 0 else (e - 1) % (q - 1) + 1 for e in m)
            out[red] = out[red] + c if red in out else c
        return MultiPoly(self.variables, out)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.coeffs == other.coeffs

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, m) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"
