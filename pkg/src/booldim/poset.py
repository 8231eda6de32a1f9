"""Finite posets on ``range(n)`` and linear orders over subsets of them.

A :class:`Poset` stores its strict order as a dense boolean matrix ``lt`` with
``lt[x, y]`` true iff ``x < y``.  Linear orders are tuples of element indices,
first element lowest.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

import numpy as np

from .errors import BadIntersectionError, CycleError, OrderError, OverlapError

__all__ = [
    "Poset",
    "LinearOrder",
    "poset_from_relations",
    "transitive_closure",
    "dual",
    "cover_pairs",
    "incomparable_pairs",
    "restrict",
    "concat",
    "merge_at_cut",
    "is_linear_extension",
    "standard_example",
    "chain",
    "antichain",
    "disjoint_sum",
    "induced",
    "topological_sort",
]


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Warshall closure of a square boolean relation (not reflexive)."""
    out = np.array(rel, dtype=bool, copy=True)
    for k in range(out.shape[0]):
        col = out[:, k]
        if col.any():
            out[col] |= out[k]
    return out


class Poset:
    """Immutable strict partial order on ``range(n)``."""

    __slots__ = ("n", "lt", "_hash")

    def __init__(self, lt, *, check: bool = True):
        lt = np.array(lt, dtype=bool, copy=True)
        if lt.ndim != 2 or lt.shape[0] != lt.shape[1]:
            raise OrderError("relation must be a square matrix")
        if check:
            if lt.diagonal().any():
                raise CycleError("relation is not irreflexive")
            if (lt & lt.T).any():
                raise CycleError("relation is not antisymmetric")
            if (transitive_closure(lt) != lt).any():
                raise OrderError("relation is not transitive")
        lt.setflags(write=False)
        self.n = lt.shape[0]
        self.lt = lt
        self._hash = None

    # comparisons -----------------------------------------------------------
    def less(self, x: int, y: int) -> bool:
        return bool(self.lt[x, y])

    def leq(self, x: int, y: int) -> bool:
        return x == y or bool(self.lt[x, y])

    def comparable(self, x: int, y: int) -> bool:
        return x == y or bool(self.lt[x, y] or self.lt[y, x])

    def incomparable(self, x: int, y: int) -> bool:
        return not self.comparable(x, y)

    @property
    def comparability(self) -> np.ndarray:
        """Boolean matrix of comparable pairs, diagonal included."""
        return self.lt | self.lt.T | np.eye(self.n, dtype=bool)

    def num_relations(self) -> int:
        return int(self.lt.sum())

    def is_chain(self) -> bool:
        return bool(self.comparability.all())

    def is_antichain(self) -> bool:
        return not self.lt.any()

    def height(self) -> int:
        """Number of elements in a longest chain."""
        if self.n == 0:
            return 0
        depth = np.ones(self.n, dtype=int)
        for x in topological_sort(self):
            below = np.flatnonzero(self.lt[:, x])
            if below.size:
                depth[x] = depth[below].max() + 1
        return int(depth.max())

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.lt, other.lt))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, np.packbits(self.lt).tobytes()))
        return self._hash

    def __repr__(self):
        return f"Poset(n={self.n}, relations={self.num_relations()})"


class LinearOrder(tuple):
    """Duplicate-free sequence of elements, read from lowest to highest."""

    def __new__(cls, elems: Iterable[int] = ()):
        self = super().__new__(cls, (int(e) for e in elems))
        if len(set(self)) != len(self):
            raise OrderError(f"linear order has repeated elements: {tuple(self)}")
        return self

    @property
    def pos(self) -> dict:
        try:
            return self._pos
        except AttributeError:
            self._pos = {e: i for i, e in enumerate(self)}
            return self._pos

    @property
    def support(self) -> frozenset:
        return frozenset(self)

    def position(self, x: int) -> int:
        return self.pos[x]

    def before(self, x: int, y: int) -> bool:
        pos = self.pos
        return pos[x] < pos[y]

    def restrict(self, ys) -> "LinearOrder":
        return restrict(self, ys)

    def dual(self) -> "LinearOrder":
        return LinearOrder(reversed(self))

    def __add__(self, other):
        return concat([self, other])

    def __repr__(self):
        return f"LinearOrder({list(self)})"


# constructors ----------------------------------------------------------------
def poset_from_relations(n: int, rel: Iterable[Sequence[int]]) -> Poset:
    """Poset on ``range(n)`` generated by the pairs ``(a, b)`` meaning a < b."""
    if n < 1:
        raise OrderError("ground set must be nonempty")
    m = np.zeros((n, n), dtype=bool)
    for a, b in rel:
        if not (0 <= a < n and 0 <= b < n):
            raise OrderError(f"pair ({a}, {b}) out of range for n={n}")
        if a == b:
            raise CycleError(f"pair ({a}, {a}) forces {a} < {a}")
        m[a, b] = True
    m = transitive_closure(m)
    if m.diagonal().any():
        bad = int(np.flatnonzero(m.diagonal())[0])
        raise CycleError(f"relations force {bad} < {bad}")
    return Poset(m, check=False)


def chain(n: int) -> Poset:
    return Poset(np.triu(np.ones((n, n), dtype=bool), 1), check=False)


def antichain(n: int) -> Poset:
    return Poset(np.zeros((n, n), dtype=bool), check=False)


def standard_example(n: int) -> Poset:
    """S_n with minimal elements ``0..n-1`` and maximal elements ``n..2n-1``."""
    if n < 2:
        raise OrderError("standard example needs n >= 2")
    m = np.zeros((2 * n, 2 * n), dtype=bool)
    m[:n, n:] = ~np.eye(n, dtype=bool)
    return Poset(m, check=False)


def disjoint_sum(posets: Sequence[Poset]) -> Poset:
    """Posets placed side by side, later ones on higher indices."""
    n = sum(p.n for p in posets)
    m = np.zeros((n, n), dtype=bool)
    off = 0
    for p in posets:
        m[off:off + p.n, off:off + p.n] = p.lt
        off += p.n
    return Poset(m, check=False)


def induced(P: Poset, elements: Iterable[int]) -> tuple[Poset, list[int]]:
    """Subposet on ``elements`` relabelled to ``range(k)``; also the label map."""
    labels = sorted(set(elements))
    idx = np.array(labels, dtype=int)
    return Poset(P.lt[np.ix_(idx, idx)], check=False), labels


def dual(P: Poset) -> Poset:
    return Poset(P.lt.T, check=False)


# relations -------------------------------------------------------------------
def cover_pairs(P: Poset) -> list[tuple[int, int]]:
    """Pairs ``(y, x)`` such that x covers y."""
    lt = P.lt.astype(np.uint8)
    between = (lt @ lt) > 0
    cov = P.lt & ~between
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(cov))]


def incomparable_pairs(P: Poset) -> list[tuple[int, int]]:
    inc = ~P.comparability
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(inc))]


# linear orders ---------------------------------------------------------------
def restrict(L: Sequence[int], ys: Iterable[int]) -> LinearOrder:
    ys = set(ys)
    return LinearOrder(e for e in L if e in ys)


def concat(parts: Iterable[Sequence[int]]) -> LinearOrder:
    out: list[int] = []
    seen: set[int] = set()
    for part in parts:
        for e in part:
            if e in seen:
                raise OverlapError(f"element {e} appears in two parts")
            seen.add(e)
            out.append(e)
    return LinearOrder(out)


def merge_at_cut(L: Sequence[int], Lp: Sequence[int], w: int) -> LinearOrder:
    """Combine ``L = [A<w<B]`` and ``Lp = [C<w<D]`` into ``[A<C<w<D<B]``."""
    common = set(L) & set(Lp)
    if common != {w}:
        raise BadIntersectionError(
            f"orders must meet exactly in {{{w}}}, got {sorted(common)}")
    i, j = list(L).index(w), list(Lp).index(w)
    return LinearOrder([*L[:i], *Lp[:j], w, *Lp[j + 1:], *L[i + 1:]])


def is_linear_extension(P: Poset, L: Sequence[int]) -> bool:
    """True iff ``L`` respects every relation of P among the elements it lists."""
    idx = np.asarray(L, dtype=int)
    if idx.size < 2:
        return True
    sub = P.lt[np.ix_(idx, idx)]
    # the order lists idx low to high, so no relation may point backwards
    return not np.tril(sub, -1).any()


def topological_sort(P: Poset, extra: Iterable[Sequence[int]] = (),
                     elements: Iterable[int] | None = None) -> LinearOrder:
    """Lowest-index-first topological sort of P plus ``extra`` pairs a < b.

    Raises :class:`CycleError` if the combined relation has a cycle.
    """
    elems = range(P.n) if elements is None else sorted(set(elements))
    member = set(elems)
    succ: dict[int, set[int]] = {x: set() for x in elems}
    lt = P.lt
    for x in elems:
        for y in np.flatnonzero(lt[x]):
            y = int(y)
            if y in member:
                succ[x].add(y)
    for a, b in extra:
        if a in member and b in member:
            succ[a].add(b)
    indeg = {x: 0 for x in elems}
    for x in elems:
        for y in succ[x]:
            indeg[y] += 1
    heap = [x for x in elems if indeg[x] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        x = heapq.heappop(heap)
        out.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    if len(out) != len(member):
        raise CycleError("relation has a directed cycle")
    return LinearOrder(out)
