"""Finite-rank unital associative algebras given by structure constants."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact_math import QQ, ZZ, BaseRing, format_scalar

__all__ = [
    "Algebra",
    "Element",
    "ValidationReport",
    "multiply",
    "commutator",
    "validate",
    "quaternion",
    "lipschitz",
    "matrix_algebra",
    "upper_triangular",
    "quadratic_extension_tensor",
    "direct_sum",
    "diagonal",
    "builtin",
    "BUILTIN_NAMES",
]


class Algebra:
    """Algebra with basis e_0..e_{n-1}; ``table[s][t]`` holds the coordinates of e_s e_t."""

    __slots__ = ("base", "table", "unit", "names", "_terms")

    def __init__(self, base: BaseRing, table, unit, names: Optional[Sequence[str]] = None):
        n = len(table)
        if n < 1:
            raise ValueError("an algebra needs at least one basis element")
        if len(unit) != n:
            raise ValueError(f"unit has {len(unit)} coordinates, expected {n}")
        rows = []
        for s, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"table row {s} has {len(row)} entries, expected {n}")
            entries = []
            for t, entry in enumerate(row):
                if len(entry) != n:
                    raise ValueError(f"table entry ({s},{t}) has {len(entry)} coordinates, expected {n}")
                entries.append(tuple(base(v) for v in entry))
            rows.append(tuple(entries))
        if names is None:
            names = [f"e{s}" for s in range(n)]
        if len(names) != n:
            raise ValueError(f"{len(names)} basis names for dimension {n}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "table", tuple(rows))
        object.__setattr__(self, "unit", tuple(base(v) for v in unit))
        object.__setattr__(self, "names", tuple(str(x) for x in names))
        object.__setattr__(
            self,
            "_terms",
            tuple(tuple(tuple((u, g) for u, g in enumerate(e) if g) for e in row) for row in rows),
        )

    def __setattr__(self, key, value):
        raise AttributeError("Algebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.base, self.table, self.unit) == (other.base, other.table, other.unit)

    def __hash__(self):
        return hash((self.base, self.table, self.unit))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, base={self.base}, names={list(self.names)})"

    def element(self, coords: Sequence) -> "Element":
        if len(coords) != self.dim:
            raise ValueError(f"element has {len(coords)} coordinates, algebra has dimension {self.dim}")
        return Element(self, tuple(self.base(c) for c in coords))

    def zero(self) -> "Element":
        return Element(self, (self.base.zero,) * self.dim)

    def one(self) -> "Element":
        return Element(self, self.unit)

    def e(self, s: int) -> "Element":
        coords = [self.base.zero] * self.dim
        coords[s] = self.base.one
        return Element(self, tuple(coords))

    def basis(self) -> list:
        return [self.e(s) for s in range(self.dim)]

    def scalar(self, c) -> "Element":
        """The element c·1."""
        return self.one() * self.base(c)

    def change_base(self, base: BaseRing) -> "Algebra":
        """Same structure constants read over another base ring (e.g. lift Z to Q)."""
        table = [[[base(v) for v in e] for e in row] for row in self.table]
        return Algebra(base, table, [base(v) for v in self.unit], self.names)

    def lift(self) -> "Algebra":
        """The algebra over the field of fractions of the base (identity for fields)."""
        return self.change_base(QQ) if self.base.kind == "Z" else self

    def mul_coords(self, x: tuple, y: tuple) -> tuple:
        out = [self.base.zero] * self.dim
        terms = self._terms
        for s, xs in enumerate(x):
            if not xs:
                continue
            row = terms[s]
            for t, yt in enumerate(y):
                if not yt:
                    continue
                c = xs * yt
                for u, g in row[t]:
                    out[u] = out[u] + c * g
        return tuple(out)


class Element:
    """Coordinate vector of an algebra member in the presentation basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            if other.algebra.dim != self.algebra.dim:
                raise ValueError(f"dimension mismatch: {self.algebra.dim} vs {other.algebra.dim}")
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.algebra, self, other)
        c = self.algebra.base(other)
        return Element(self.algebra, tuple(a * c for a in self.coords))

    def __rmul__(self, other):
        c = self.algebra.base(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined")
        out = self.algebra.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords and self.algebra.dim == other.algebra.dim

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def coords_text(self) -> str:
        return ",".join(format_scalar(c) for c in self.coords)

    def to_json(self) -> list:
        return [format_scalar(c) for c in self.coords]

    def __str__(self):
        terms = []
        for c, name in zip(self.coords, self.algebra.names):
            if not c:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1 and self.algebra.base.kind != "Fp":
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"Element({self})"


def multiply(A: Algebra, x: Element, y: Element) -> Element:
    """Product under the bilinear extension of the table."""
    for z in (x, y):
        if len(z.coords) != A.dim:
            raise ValueError(f"dimension mismatch: element of length {len(z.coords)} in dimension {A.dim}")
        if z.algebra is not A and z.algebra.base != A.base:
            raise ValueError(f"scalar base mismatch: {z.algebra.base} vs {A.base}")
    return Element(A, A.mul_coords(x.coords, y.coords))


def commutator(A: Algebra, x: Element, y: Element) -> Element:
    """(x, y) = xy - yx."""
    return multiply(A, x, y) - multiply(A, y, x)


def is_central(A: Algebra, z: Element) -> bool:
    return all(commutator(A, z, e).is_zero() for e in A.basis())


@dataclass(frozen=True)
class ValidationReport:
    associative: bool
    associativity_witness: Optional[tuple]
    unital: bool
    unit_witness: Optional[int]
    commutative: bool
    commutativity_witness: Optional[tuple]

    @property
    def ok(self) -> bool:
        return self.associative and self.unital

    def to_json(self) -> dict:
        return {
            "associative": self.associative,
            "associativity_witness": list(self.associativity_witness) if self.associativity_witness else None,
            "unital": self.unital,
            "unit_witness": self.unit_witness,
            "commutative": self.commutative,
            "commutativity_witness": list(self.commutativity_witness) if self.commutativity_witness else None,
        }


def validate(A: Algebra) -> ValidationReport:
    """Check associativity on basis triples, unit laws and commutativity on basis pairs."""
    basis = A.basis()
    n = A.dim
    prods = [[multiply(A, basis[s], basis[t]) for t in range(n)] for s in range(n)]
    assoc_witness = None
    for s in range(n):
        for t in range(n):
            for u in range(n):
                if multiply(A, prods[s][t], basis[u]) != multiply(A, basis[s], prods[t][u]):
                    assoc_witness = (s, t, u)
                    break
            if assoc_witness:
                break
        if assoc_witness:
            break
    one = A.one()
    unit_witness = next(
        (s for s in range(n) if multiply(A, one, basis[s]) != basis[s] or multiply(A, basis[s], one) != basis[s]),
        None,
    )
    comm_witness = next(
        ((s, t) for s in range(n) for t in range(s + 1, n) if prods[s][t] != prods[t][s]),
        None,
    )
    return ValidationReport(
        associative=assoc_witness is None,
        associativity_witness=assoc_witness,
        unital=unit_witness is None,
        unit_witness=unit_witness,
        commutative=comm_witness is None,
        commutativity_witness=comm_witness,
    )


# ---------------------------------------------------------------------------
# builtin presentations


def quaternion(a, b, base: BaseRing = QQ) -> Algebra:
    """The quaternion algebra (a, b) with basis 1, i, j, k, i^2 = a, j^2 = b, k = ij = -ji."""
    a, b = base(a), base(b)
    if not a or not b:
        raise ValueError("quaternion(a, b) needs a and b non-zero")
    z, o = base.zero, base.one

    def v(c0=z, c1=z, c2=z, c3=z):
        return (c0, c1, c2, c3)

    table = [
        [v(c0=o), v(c1=o), v(c2=o), v(c3=o)],
        [v(c1=o), v(c0=a), v(c3=o), v(c2=a)],
        [v(c2=o), v(c3=-o), v(c0=b), v(c1=-b)],
        [v(c3=o), v(c2=-a), v(c1=b), v(c0=-a * b)],
    ]
    return Algebra(base, table, v(c0=o), ["1", "i", "j", "k"])


def lipschitz() -> Algebra:
    """Lipschitz quaternions: quaternion(-1, -1) over the integers."""
    return quaternion(-1, -1, ZZ)


def _matrix_label(n: int, r: int, c: int) -> str:
    return f"E{r + 1}{c + 1}" if n < 10 else f"E{r + 1},{c + 1}"


def _unit_table(base: BaseRing, units: list):
    # units: list of (row, col) matrix units spanning a subalgebra of M_n
    index = {rc: s for s, rc in enumerate(units)}
    n = len(units)
    table = []
    for r1, c1 in units:
        row = []
        for r2, c2 in units:
            coords = [base.zero] * n
            if c1 == r2:
                coords[index[(r1, c2)]] = base.one
            row.append(coords)
        table.append(row)
    return table, index


def matrix_algebra(n: int, base: BaseRing = QQ) -> Algebra:
    """Full matrix algebra M_n with the matrix-unit basis in row-major order."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    units = [(r, c) for r in range(n) for c in range(n)]
    table, index = _unit_table(base, units)
    unit = [base.zero] * len(units)
    for r in range(n):
        unit[index[(r, r)]] = base.one
    return Algebra(base, table, unit, [_matrix_label(n, r, c) for r, c in units])


def upper_triangular(n: int, base: BaseRing = QQ) -> Algebra:
    """Upper triangular n x n matrices, basis E_rc (r <= c) in row-major order."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    units = [(r, c) for r in range(n) for c in range(r, n)]
    table, index = _unit_table(base, units)
    unit = [base.zero] * len(units)
    for r in range(n):
        unit[index[(r, r)]] = base.one
    return Algebra(base, table, unit, [_matrix_label(n, r, c) for r, c in units])


def quadratic_extension_tensor(A: Algebra, d) -> Algebra:
    """A tensor F[t]/(t^2 - d): basis e_s (indices 0..n-1) then e_s t (indices n..2n-1)."""
    d = A.base(d)
    if not d:
        raise ValueError("quadratic extension needs d non-zero")
    n = A.dim
    z = A.base.zero
    table = []
    for alpha in (0, 1):
        for s in range(n):
            row = []
            for beta in (0, 1):
                for u in range(n):
                    prod = A.table[s][u]
                    coords = [z] * (2 * n)
                    if alpha + beta == 0:
                        coords[:n] = prod
                    elif alpha + beta == 1:
                        coords[n:] = prod
                    else:
                        coords[:n] = [d * g for g in prod]
                    row.append(coords)
            table.append(row)
    unit = list(A.unit) + [z] * n
    names = list(A.names) + [("t" if nm == "1" else f"{nm}t") for nm in A.names]
    return Algebra(A.base, table, unit, names)


def direct_sum(A: Algebra, B: Algebra) -> Algebra:
    """A x B with componentwise product; basis of A followed by basis of B."""
    if A.base != B.base:
        raise ValueError("direct sum needs a common base ring")
    n, m = A.dim, B.dim
    z = A.base.zero
    table = []
    for s in range(n + m):
        row = []
        for t in range(n + m):
            coords = [z] * (n + m)
            if s < n and t < n:
                coords[:n] = A.table[s][t]
            elif s >= n and t >= n:
                coords[n:] = B.table[s - n][t - n]
            row.append(coords)
        table.append(row)
    names = [f"{nm}'" if nm in B.names else nm for nm in A.names] + list(B.names)
    if len(set(names)) != len(names):
        names = [f"a{s}" for s in range(n)] + [f"b{s}" for s in range(m)]
    return Algebra(A.base, table, list(A.unit) + list(B.unit), names)


def diagonal(n: int, base: BaseRing = QQ) -> Algebra:
    """The commutative algebra F^n of n-tuples with componentwise product."""
    if n < 1:
        raise ValueError("n must be at least 1")
    table = [[[base.one if (s == t == u) else base.zero for u in range(n)] for t in range(n)] for s in range(n)]
    return Algebra(base, table, [base.one] * n, [f"d{s}" for s in range(n)])


BUILTIN_NAMES = {
    "hamilton": "quaternion(-1,-1,Q)",
    "split": "quaternion(1,1,Q)",
    "lipschitz": "lipschitz()",
    "m2q": "matrix(2,Q)",
    "m2f2": "matrix(2,F2)",
    "m2f3": "matrix(2,F3)",
    "ut3q": "upper_triangular(3,Q)",
    "hamilton_sqrt2": "quadratic_extension_tensor(hamilton,2)",
    "m2q_plus_q": "direct_sum(m2q,diagonal(1,Q))",
    "qxq": "diagonal(2,Q)",
}


def _split_args(text: str) -> list:
    args, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            args.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        args.append(cur.strip())
    return args


def _parse_base(text: str) -> BaseRing:
    return BaseRing.from_descriptor(text.strip())


def builtin(descriptor: str) -> Algebra:
    """Build a presentation from a descriptor such as ``"quaternion(2,5,Q)"`` or ``"hamilton"``.

    Constructors: quaternion(a,b[,base]), lipschitz(), matrix(n[,base]),
    upper_triangular(n[,base]), quadratic_extension_tensor(<descriptor>,d),
    direct_sum(<descriptor>,<descriptor>), diagonal(n[,base]); plus the
    short names in ``BUILTIN_NAMES``.
    """
    text = descriptor.strip()
    if text in BUILTIN_NAMES:
        return builtin(BUILTIN_NAMES[text])
    m = re.fullmatch(r"(\w+)\((.*)\)", text, flags=re.S)
    if not m:
        raise ValueError(f"unknown builtin {descriptor!r}")
    name, args = m.group(1), _split_args(m.group(2))
    if name == "quaternion":
        if len(args) not in (2, 3):
            raise ValueError("quaternion(a, b[, base])")
        base = _parse_base(args[2]) if len(args) == 3 else QQ
        return quaternion(base(args[0]), base(args[1]), base)
    if name == "lipschitz":
        if args:
            raise ValueError("lipschitz() takes no arguments")
        return lipschitz()
    if name in ("matrix", "upper_triangular", "diagonal"):
        if len(args) not in (1, 2):
            raise ValueError(f"{name}(n[, base])")
        base = _parse_base(args[1]) if len(args) == 2 else QQ
        ctor = {"matrix": matrix_algebra, "upper_triangular": upper_triangular, "diagonal": diagonal}[name]
        return ctor(int(args[0]), base)
    if name == "quadratic_extension_tensor":
        if len(args) != 2:
            raise ValueError("quadratic_extension_tensor(<algebra>, d)")
        A = builtin(args[0])
        return quadratic_extension_tensor(A, A.base(args[1]))
    if name == "direct_sum":
        if len(args) != 2:
            raise ValueError("direct_sum(<algebra>, <algebra>)")
        return direct_sum(builtin(args[0]), builtin(args[1]))
    raise ValueError(f"unknown builtin {name!r}")
