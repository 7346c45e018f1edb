"""Exhaustive sweep over small structure-constant tables over F_p.

Every table with e_0 as the unit is generated in lexicographic order of
its free entries, associative ones are kept, and each non-commutative
survivor is tested against both hypotheses over all pairs of elements.
A finite ring satisfying both hypotheses would have no zero divisors,
hence be a finite division ring, hence commutative; so the
``passes_both`` bucket of non-commutative tables must stay empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, commutator
from .analysis import _h2_violation, is_zero_divisor
from .exact_math import GF
from .witnesses import CommutatorZeroDivisor

__all__ = ["EnumerationSummary", "enumerate_algebras", "table_algebra", "GuardRailError"]

MAX_DIM = 3
ALLOWED_PRIMES = (2, 3)
EXAMPLES_PER_BUCKET = 3
_CHUNK = 20_000


class GuardRailError(ValueError):
    pass


@dataclass
class EnumerationSummary:
    dim: int
    p: int
    tables: int = 0
    associative: int = 0
    commutative: int = 0
    fails_h2: int = 0
    fails_h1: int = 0
    passes_both: int = 0
    h1_failures: int = 0
    h2_failures: int = 0
    examples: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def noncommutative(self) -> int:
        return self.associative - self.commutative

    @property
    def consistent(self) -> bool:
        return self.passes_both == 0

    def to_json(self) -> dict:
        from .files import algebra_to_json

        return {
            "dim": self.dim,
            "p": self.p,
            "tables": self.tables,
            "associative_unital": self.associative,
            "commutative": self.commutative,
            "noncommutative": self.noncommutative,
            "fails_h2": self.fails_h2,
            "fails_h1": self.fails_h1,
            "passes_both": self.passes_both,
            "h1_failures_total": self.h1_failures,
            "h2_failures_total": self.h2_failures,
            "wedderburn_consistent": self.consistent,
            "examples": {
                bucket: [{"table": algebra_to_json(A), "witness": w.to_json()} for A, w in items]
                for bucket, items in sorted(self.examples.items())
            },
            "counterexamples": [algebra_to_json(A) for A in self.counterexamples],
        }


def _full_tables(digits: np.ndarray, k: int) -> np.ndarray:
    # digits: (N, (k-1)^2 * k) free entries -> (N, k, k, k) structure constants
    N = digits.shape[0]
    G = np.zeros((N, k, k, k), dtype=np.int64)
    eye = np.eye(k, dtype=np.int64)
    G[:, 0, :, :] = eye
    G[:, :, 0, :] = eye
    G[:, 1:, 1:, :] = digits.reshape(N, k - 1, k - 1, k)
    return G


def _digits(start: int, stop: int, nvars: int, p: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start, nvars), dtype=np.int64)
    for pos in range(nvars - 1, -1, -1):
        out[:, pos] = idx % p
        idx //= p
    return out


def _associative(G: np.ndarray, p: int) -> np.ndarray:
    left = np.einsum("nstw,nwuv->nstuv", G, G) % p
    right = np.einsum("ntuw,nswv->nstuv", G, G) % p
    return (left == right).reshape(G.shape[0], -1).all(axis=1)


def _commutative(G: np.ndarray) -> np.ndarray:
    return (G == G.transpose(0, 2, 1, 3)).reshape(G.shape[0], -1).all(axis=1)


def _singular_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Batch test det(M) == 0 mod p by Gaussian elimination."""
    M = M % p
    B, k, _ = M.shape
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    singular = np.zeros(B, dtype=bool)
    rows = np.arange(B)
    for c in range(k):
        nz = M[:, c:, c] != 0
        has = nz.any(axis=1)
        singular |= ~has
        piv = nz.argmax(axis=1) + c
        top = M[rows, c].copy()
        M[rows, c] = M[rows, piv]
        M[rows, piv] = top
        M[:, c] = (M[:, c] * inv[M[:, c, c]][:, None]) % p
        factors = M[:, :, c].copy()
        factors[:, c] = 0
        M = (M - factors[:, :, None] * M[:, c][:, None, :]) % p
    return singular


def _classify(G: np.ndarray, p: int, elements: np.ndarray):
    """Per table: index of the first (x, y) pair violating H2 and H1 (-1 when none)."""
    B, k = G.shape[0], G.shape[1]
    q = elements.shape[0]
    D = (G - G.transpose(0, 2, 1, 3)) % p
    V = np.einsum("xs,yt,nstw->nxyw", elements, elements, D) % p  # commutators
    S = np.einsum("nxyp,nxyq,npqu->nxyu", V, V, G) % p  # their squares
    comm = np.einsum("nxyu,nurw->nxyrw", S, D) % p
    h2_bad = comm.reshape(B, q * q, -1).any(axis=2)

    # zero-divisor test for each element once, then read off commutators
    L = np.einsum("ep,nptw->newt", elements, G) % p  # r -> v r
    R = np.einsum("ep,ntpw->newt", elements, G) % p  # r -> r v
    sing = _singular_mod_p(L.reshape(-1, k, k), p) | _singular_mod_p(R.reshape(-1, k, k), p)
    sing = sing.reshape(B, q)
    weights = p ** np.arange(k - 1, -1, -1)
    vidx = (V * weights).sum(axis=3).reshape(B, q * q)
    nonzero = vidx != 0
    h1_bad = nonzero & np.take_along_axis(sing, vidx, axis=1)

    def first(bad):
        any_bad = bad.any(axis=1)
        return np.where(any_bad, bad.argmax(axis=1), -1)

    return first(h2_bad), first(h1_bad)


def table_algebra(G_row: np.ndarray, p: int) -> Algebra:
    k = G_row.shape[0]
    base = GF(p)
    return Algebra(base, G_row.tolist(), [1] + [0] * (k - 1))


def _witness(A: Algebra, pair_index: int, which: str):
    p, k = A.base.p, A.dim
    q = p**k
    xs, ys = divmod(pair_index, q)
    coords = list(itertools.product(range(p), repeat=k))
    x, y = A.element(coords[xs]), A.element(coords[ys])
    if which == "h2":
        return _h2_violation(A, x, y)
    zd = is_zero_divisor(A, commutator(A, x, y))
    return CommutatorZeroDivisor(x, y, zd.r, zd.side)


def enumerate_algebras(dim: int, p: int, force: bool = False) -> EnumerationSummary:
    if not force and (dim > MAX_DIM or p not in ALLOWED_PRIMES):
        raise GuardRailError(f"dim <= {MAX_DIM} and p in {ALLOWED_PRIMES} unless forced")
    if dim < 1:
        raise GuardRailError("dim must be positive")
    GF(p)  # validates primality
    summary = EnumerationSummary(dim, p)
    nvars = (dim - 1) ** 2 * dim
    total = p**nvars
    summary.tables = total
    elements = np.array(list(itertools.product(range(p), repeat=dim)), dtype=np.int64)
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        G = _full_tables(_digits(start, stop, nvars, p), dim)
        G = G[_associative(G, p)]
        summary.associative += len(G)
        comm = _commutative(G)
        summary.commutative += int(comm.sum())
        G = G[~comm]
        if not len(G):
            continue
        for sub in range(0, len(G), 512):
            block = G[sub : sub + 512]
            h2_first, h1_first = _classify(block, p, elements)
            for n in range(len(block)):
                h2i, h1i = int(h2_first[n]), int(h1_first[n])
                summary.h2_failures += h2i >= 0
                summary.h1_failures += h1i >= 0
                if h2i >= 0:
                    bucket, idx, which = "fails_h2", h2i, "h2"
                elif h1i >= 0:
                    bucket, idx, which = "fails_h1", h1i, "h1"
                else:
                    bucket = "passes_both"
                setattr(summary, bucket, getattr(summary, bucket) + 1)
                if bucket == "passes_both":
                    summary.counterexamples.append(table_algebra(block[n], p))
                    continue
                items = summary.examples.setdefault(bucket, [])
                if len(items) < EXAMPLES_PER_BUCKET:
                    A = table_algebra(block[n], p)
                    items.append((A, _witness(A, idx, which)))
    return summary
