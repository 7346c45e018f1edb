"""Exact scalars and exact linear algebra.

Three base rings are supported: the rationals, the integers and prime
fields.  Rational and integer scalars are ``fractions.Fraction`` values
(integers simply have denominator 1); prime-field scalars are
:class:`Residue` values.  Linear algebra is always carried out over a
field, so integer data is lifted to the rationals first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterator, Optional, Sequence

__all__ = [
    "BaseRing",
    "Residue",
    "QQ",
    "ZZ",
    "GF",
    "Matrix",
    "parse_scalar",
    "format_scalar",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Residue:
    """Element of the prime field F_p, stored as its canonical residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


_RATIONAL_RE = re.compile(r"^\s*(-?)(\d+)(?:/(-?)(\d+))?\s*$")
_RESIDUE_RE = re.compile(r"^\s*(\d+)\s*$")


@dataclass(frozen=True)
class BaseRing:
    """Descriptor of the exact base ring: ``"Q"``, ``"Z"`` or ``"Fp"`` with prime ``p``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Q", "Z", "Fp"):
            raise ValueError(f"unknown base ring {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.p):
            raise ValueError(f"F_p requires a prime modulus, got {self.p}")
        if self.kind != "Fp" and self.p != 0:
            raise ValueError("only F_p carries a modulus")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def is_finite(self) -> bool:
        return self.kind == "Fp"

    @property
    def field(self) -> "BaseRing":
        """The field linear algebra runs over (Z is lifted to Q)."""
        return QQ if self.kind == "Z" else self

    @property
    def zero(self):
        return Residue(0, self.p) if self.kind == "Fp" else Fraction(0)

    @property
    def one(self):
        return Residue(1, self.p) if self.kind == "Fp" else Fraction(1)

    def __call__(self, value):
        """Coerce ``value`` (int, Fraction, Residue or scalar text) into this ring."""
        if isinstance(value, str):
            return parse_scalar(value, self)
        if self.kind == "Fp":
            if isinstance(value, Residue):
                if value.p != self.p:
                    raise ValueError(f"residue mod {value.p} used over F_{self.p}")
                return value
            if isinstance(value, Fraction):
                return Residue(value.numerator, self.p) / value.denominator
            if isinstance(value, int):
                return Residue(value, self.p)
            raise TypeError(f"cannot coerce {value!r} into F_{self.p}")
        if isinstance(value, Residue):
            raise TypeError(f"cannot coerce a residue into {self}")
        if not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        value = Fraction(value)
        if self.kind == "Z" and value.denominator != 1:
            raise ValueError(f"{value} is not an integer")
        return value

    def elements(self) -> Iterator:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return (Residue(v, self.p) for v in range(self.p))

    def descriptor(self):
        """JSON form used in algebra files."""
        return {"Fp": self.p} if self.kind == "Fp" else self.kind

    @classmethod
    def from_descriptor(cls, desc) -> "BaseRing":
        if desc in ("Q", "Z"):
            return cls(desc)
        if isinstance(desc, dict) and set(desc) == {"Fp"} and isinstance(desc["Fp"], int):
            return cls("Fp", desc["Fp"])
        if isinstance(desc, str) and re.fullmatch(r"F\d+", desc):
            return cls("Fp", int(desc[1:]))
        raise ValueError(f"bad base ring descriptor {desc!r}")

    def __str__(self):
        return f"F{self.p}" if self.kind == "Fp" else self.kind


QQ = BaseRing("Q")
ZZ = BaseRing("Z")


def GF(p: int) -> BaseRing:
    return BaseRing("Fp", p)


def parse_scalar(text: str, base: BaseRing):
    """Parse ``"[-]digits[/[-]digits]"`` (Q, Z) or ``"digits"`` (F_p)."""
    if base.kind == "Fp":
        m = _RESIDUE_RE.match(text)
        if not m:
            raise ValueError(f"malformed residue {text!r} (expected digits)")
        return Residue(int(m.group(1)), base.p)
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    num = int(m.group(2)) * (-1 if m.group(1) else 1)
    den = 1
    if m.group(4) is not None:
        den = int(m.group(4)) * (-1 if m.group(3) else 1)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
    return base(Fraction(num, den))


def format_scalar(value) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix; all entries live in ``base``."""

    base: BaseRing
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, base: BaseRing, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        rows = tuple(tuple(base(v) for v in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("column count of an empty matrix must be given")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(base, rows, ncols)

    @classmethod
    def identity(cls, base: BaseRing, n: int) -> "Matrix":
        return cls.from_rows(base, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.ncols} columns")
        zero = self.base.field.zero
        return tuple(sum((a * b for a, b in zip(row, vec)), zero) for row in self.rows)


def _rref_mod_p(rows: list, ncols: int, p: int):
    m = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _rref_rational(rows: list, ncols: int):
    # Fraction-free forward pass on integer rows, then one normalisation pass.
    m = []
    for row in rows:
        den = reduce(lambda acc, v: acc * v.denominator // gcd(acc, v.denominator), row, 1)
        m.append([int(v * den) for v in row])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                new = [pv * a - f * b for a, b in zip(m[i], m[r])]
                g = reduce(gcd, new, 0)
                m[i] = [v // g for v in new] if g > 1 else new
        pivots.append(c)
        r += 1
    out = [[Fraction(v) for v in row] for row in m]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        pv = out[r][c]
        out[r] = [v / pv for v in out[r]]
        for i in range(r):
            f = out[i][c]
            if f:
                out[i] = [a - f * b for a, b in zip(out[i], out[r])]
    return out, pivots


def rref(M: Matrix):
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` is over ``M.base.field``.
    Pivots are chosen as the first non-zero entry in column order.
    """
    F = M.base.field
    if M.nrows == 0 or M.ncols == 0:
        return Matrix(F, M.rows, M.ncols), 0, ()
    if F.kind == "Fp":
        red, pivots = _rref_mod_p([[int(v) for v in r] for r in M.rows], M.ncols, F.p)
        rows = tuple(tuple(Residue(v, F.p) for v in r) for r in red)
    else:
        red, pivots = _rref_rational([list(r) for r in M.rows], M.ncols)
        rows = tuple(tuple(r) for r in red)
    return Matrix(F, rows, M.ncols), len(pivots), tuple(pivots)


def rank(M: Matrix) -> int:
    return rref(M)[1]


def kernel_basis(M: Matrix) -> list:
    """Basis of {v : M v = 0}, one vector per free column."""
    R, rk, pivots = rref(M)
    F = R.base
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for r, c in enumerate(pivots):
            v[c] = -R.rows[r][f]
        basis.append(tuple(v))
    for v in basis:
        if any(Matrix(F, M.rows, M.ncols).apply(v)):
            raise ArithmeticError("kernel vector failed verification")
    if len(basis) + rk != M.ncols:
        raise ArithmeticError("rank-nullity violated")
    return basis


def solve(M: Matrix, b: Sequence) -> Optional[tuple]:
    """Some ``x`` with ``M x = b``, or ``None`` if the system is inconsistent."""
    if len(b) != M.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {M.nrows} rows")
    F = M.base.field
    b = [F(v) for v in b]
    aug = Matrix(F, tuple(tuple(r) + (bv,) for r, bv in zip(M.rows, b)), M.ncols + 1)
    R, _, pivots = rref(aug)
    if M.ncols in pivots:
        return None
    x = [F.zero] * M.ncols
    for r, c in enumerate(pivots):
        x[c] = R.rows[r][M.ncols]
    x = tuple(x)
    if list(Matrix(F, M.rows, M.ncols).apply(x)) != b:
        raise ArithmeticError("solution failed verification")
    return x
