"""Brute-force and search oracles for Dushnik-Miller and Boolean dimension.

Everything here is exact and meant for small instances.  The search engine
behind :func:`exact_dimension` and :func:`forest_realizer3` colours critical
pairs with ``d`` colours, keeping for each colour class the strict order
generated by P plus the reversed pairs assigned so far; a pair may join a
class only if the class does not already force it the other way, so every
class stays reversible throughout.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

from .errors import BudgetError, NotForestError, NotIncomparableError, NotReversibleError
from .poset import LinearOrder, Poset, cover_pairs, induced, topological_sort

__all__ = [
    "linear_extensions",
    "critical_pairs",
    "find_alternating_cycle",
    "is_alternating_cycle",
    "reverse_set",
    "is_realizer",
    "optimal_realizer",
    "exact_dimension",
    "exact_bdim_at_most",
    "bdim_witness",
    "forest_realizer3",
    "is_forest_poset",
]


def linear_extensions(P: Poset, elements: Iterable[int] | None = None) -> Iterator[LinearOrder]:
    """Every linear extension of P (or of its restriction to ``elements``)."""
    elems = list(range(P.n)) if elements is None else sorted(set(elements))
    idx = {e: i for i, e in enumerate(elems)}
    preds = [0] * len(elems)
    for e in elems:
        for f in elems:
            if P.lt[f, e]:
                preds[idx[e]] |= 1 << idx[f]
    out: list[int] = []
    full = (1 << len(elems)) - 1

    def rec(placed):
        if placed == full:
            yield LinearOrder(out)
            return
        for i, e in enumerate(elems):
            bit = 1 << i
            if not placed & bit and preds[i] & ~placed == 0:
                out.append(e)
                yield from rec(placed | bit)
                out.pop()

    yield from rec(0)


def critical_pairs(P: Poset) -> list[tuple[int, int]]:
    """Incomparable ``(x, y)`` with D(x) inside D(y) and U(y) inside U(x)."""
    lt = P.lt.astype(np.int32)
    nlt = (~P.lt).astype(np.int32)
    down_escape = (lt.T @ nlt) > 0       # some z < x with z not< y
    up_escape = (nlt @ lt.T) > 0         # some z > y with x not< z
    crit = ~P.comparability & ~down_escape & ~up_escape
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(crit))]


# reversibility ---------------------------------------------------------------
def _check_incomparable(P: Poset, S):
    for x, y in S:
        if not P.incomparable(x, y):
            raise NotIncomparableError(f"pair ({x}, {y}) is not incomparable")


def find_alternating_cycle(P: Poset, S: Iterable[Sequence[int]]):
    """An alternating cycle inside S, or None when S is reversible.

    The cycle is returned as a list of pairs ``(x_a, y_a)`` with
    ``x_a <= y_{a+1}`` cyclically.  Search runs on the digraph over S with an
    arc from ``(x, y)`` to ``(x', y')`` whenever ``x <= y'``.
    """
    S = list(dict.fromkeys(tuple(p) for p in S))
    if not S:
        return None
    xs = np.fromiter((p[0] for p in S), dtype=np.intp, count=len(S))
    ys = np.fromiter((p[1] for p in S), dtype=np.intp, count=len(S))
    lt = P.lt
    bad = lt[xs, ys] | lt[ys, xs] | (xs == ys)
    if bad.any():
        x, y = S[int(np.flatnonzero(bad)[0])]
        raise NotIncomparableError(f"pair ({x}, {y}) is not incomparable")
    adj = lt[xs][:, ys] | (xs[:, None] == ys[None, :])
    succ = [[j for j, v in enumerate(row) if v] for row in adj.tolist()]
    cyc = _find_cycle(succ)
    return None if cyc is None else [S[a] for a in cyc]


def _find_cycle(succ):
    """Nodes of some directed cycle, in arc order, or None (iterative DFS)."""
    k = len(succ)
    state = [0] * k          # 0 new, 1 on stack, 2 done
    for root in range(k):
        if state[root]:
            continue
        path, iters = [root], [iter(succ[root])]
        state[root] = 1
        while path:
            nxt = next(iters[-1], None)
            if nxt is None:
                state[path.pop()] = 2
                iters.pop()
            elif state[nxt] == 1:
                return path[path.index(nxt):]
            elif state[nxt] == 0:
                state[nxt] = 1
                path.append(nxt)
                iters.append(iter(succ[nxt]))
    return None


def is_alternating_cycle(P: Poset, cycle: Sequence[Sequence[int]]) -> bool:
    k = len(cycle)
    if k == 0:
        return False
    for a in range(k):
        x, y = cycle[a]
        if not P.incomparable(x, y):
            return False
        if not P.leq(x, cycle[(a + 1) % k][1]):
            return False
    return True


def reverse_set(P: Poset, S: Iterable[Sequence[int]]) -> LinearOrder:
    """Linear extension of P putting y before x for every ``(x, y)`` in S."""
    S = [tuple(p) for p in S]
    _check_incomparable(P, S)
    try:
        return topological_sort(P, [(y, x) for x, y in S])
    except ValueError:
        cert = find_alternating_cycle(P, S)
        raise NotReversibleError(f"set contains an alternating cycle of length {len(cert)}",
                                 certificate=cert) from None


def is_realizer(P: Poset, orders: Sequence[Sequence[int]]) -> bool:
    """True iff the orders are linear extensions whose intersection is P."""
    if not orders:
        return False
    pos = np.empty((len(orders), P.n), dtype=int)
    for k, L in enumerate(orders):
        if sorted(L) != list(range(P.n)):
            return False
        pos[k, list(L)] = np.arange(P.n)
    inter = np.all(pos[:, :, None] < pos[:, None, :], axis=0)
    return bool(np.array_equal(inter, P.lt))


# partition search ------------------------------------------------------------
def _partition_search(P: Poset, d: int, pairs: Sequence[tuple[int, int]]):
    """Split ``pairs`` into at most d reversible classes; class closures or None."""
    base = P.lt
    # frame: (closures, remaining pairs, pending choices)
    stack = [([], list(pairs), None)]
    while stack:
        Cs, rem, choices = stack.pop()
        if choices is None:
            if rem:
                a = np.fromiter((p[0] for p in rem), dtype=int, count=len(rem))
                b = np.fromiter((p[1] for p in rem), dtype=int, count=len(rem))
                done = np.zeros(len(rem), dtype=bool)
                for C in Cs:
                    done |= C[b, a]
                if done.any():
                    keep = ~done
                    rem = [p for p, k in zip(rem, keep) if k]
                    a, b = a[keep], b[keep]
            if not rem:
                return Cs
            feas = [~C[a, b] for C in Cs]
            count = np.sum(feas, axis=0) if feas else np.zeros(len(rem), dtype=int)
            if len(Cs) < d:
                count = count + 1
            i = int(np.argmin(count))
            if count[i] == 0:
                continue
            choice_list = [k for k in range(len(Cs)) if feas[k][i]]
            if len(Cs) < d:
                choice_list.append(len(Cs))   # empty classes are interchangeable
            choices = (rem[i], rem[:i] + rem[i + 1:], choice_list)
        (x, y), rest, choice_list = choices
        if not choice_list:
            continue
        k, others = choice_list[0], choice_list[1:]
        stack.append((Cs, rem, ((x, y), rest, others)))
        C = Cs[k] if k < len(Cs) else base
        down = C[:, y].copy()
        down[y] = True
        up = C[x].copy()
        up[x] = True
        new = C | np.outer(down, up)
        newCs = list(Cs)
        if k < len(Cs):
            newCs[k] = new
        else:
            newCs.append(new)
        stack.append((newCs, rest, None))
    return None


def _extensions_from_closures(P: Poset, closures) -> list[LinearOrder]:
    out = []
    for C in closures:
        out.append(topological_sort(P, zip(*map(lambda a: a.tolist(), np.nonzero(C)))))
    return out or [topological_sort(P)]


def optimal_realizer(P: Poset, d_max: int | None = None) -> list[LinearOrder] | None:
    """A minimum-size realizer of P, or None if every realizer exceeds ``d_max``."""
    crit = critical_pairs(P)
    if not crit:
        return [topological_sort(P)]
    top = P.n if d_max is None else d_max
    for d in range(2, top + 1):
        closures = _partition_search(P, d, crit)
        if closures is not None:
            return _extensions_from_closures(P, closures)
    return None


def exact_dimension(P: Poset, d_max: int | None = None) -> int | None:
    """Dushnik-Miller dimension of P, or None if it exceeds ``d_max``."""
    R = optimal_realizer(P, d_max)
    return None if R is None else len(R)


# Boolean dimension ------------------------------------------------------------
_BDIM_MAX_N = 6
_BDIM_MAX_S = 3


def _order_reps(n: int) -> np.ndarray:
    """Permutations of range(n), one from each {L, L*} pair, as position arrays."""
    reps = []
    for perm in itertools.permutations(range(n)):
        pos = [0] * n
        for i, e in enumerate(perm):
            pos[e] = i
        if n < 2 or pos[0] < pos[1]:
            reps.append(pos)
    return np.array(reps, dtype=int)


def _bdim_search(P: Poset, s: int):
    n = P.n
    if n <= 1:
        return ()
    pos = _order_reps(n)
    xs, ys = np.nonzero(~np.eye(n, dtype=bool))
    bits = (pos[:, xs] < pos[:, ys]).astype(np.int64)   # (orders, pairs)
    target = P.lt[xs, ys]
    m = len(pos)

    def separated(codes):
        ones = 1 << codes
        hit1 = np.bitwise_or.reduce(np.where(target, ones, 0), axis=-1)
        hit0 = np.bitwise_or.reduce(np.where(target, 0, ones), axis=-1)
        return (hit1 & hit0) == 0

    for prefix in itertools.combinations_with_replacement(range(m), s - 1):
        start = prefix[-1] if prefix else 0
        code = np.zeros(len(xs), dtype=np.int64)
        for p in prefix:
            code = code * 2 + bits[p]
        cand = code[None, :] * 2 + bits[start:]
        ok = np.flatnonzero(separated(cand))
        if ok.size:
            chosen = list(prefix) + [start + int(ok[0])]
            return tuple(LinearOrder(np.argsort(pos[c])) for c in chosen)
    return None


def bdim_witness(P: Poset, s: int):
    """Orders of a Boolean realizer of size s for a tiny poset, or None."""
    if P.n > _BDIM_MAX_N or s > _BDIM_MAX_S:
        raise BudgetError(f"exhaustive Boolean dimension limited to n <= {_BDIM_MAX_N}, "
                          f"s <= {_BDIM_MAX_S} (got n={P.n}, s={s})")
    if s < 1:
        raise ValueError("s must be positive")
    found = _bdim_search(P, s)
    if found == ():
        return tuple(LinearOrder([0]) for _ in range(s))
    return found


def exact_bdim_at_most(P: Poset, s: int) -> bool:
    """Whether P has a Boolean realizer with s orders (exhaustive, tiny P only)."""
    return bdim_witness(P, s) is not None


# forests ---------------------------------------------------------------------
def is_forest_poset(P: Poset) -> bool:
    G = nx.Graph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from(cover_pairs(P))
    return nx.is_forest(G)


def forest_realizer3(P: Poset) -> list[LinearOrder]:
    """Realizer of size at most 3 for a poset whose cover graph is a forest.

    Each tree is solved separately by the partition search (which always
    succeeds with three classes on trees); the per-tree extensions are then
    concatenated, with the component order reversed in the last extension so
    that elements of different trees are incomparable in the intersection.
    """
    G = nx.Graph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from(cover_pairs(P))
    if not nx.is_forest(G):
        raise NotForestError("cover graph has a cycle")
    comps = sorted((sorted(c) for c in nx.connected_components(G)), key=lambda c: c[0])
    parts = []
    for comp in comps:
        sub, labels = induced(P, comp)
        closures = _partition_search(sub, 3, critical_pairs(sub))
        if closures is None:      # cannot happen for trees
            raise AssertionError("no 3-realizer found for a tree poset")
        exts = _extensions_from_closures(sub, closures)
        while len(exts) < 3:
            exts.append(exts[-1])
        parts.append([[labels[e] for e in L] for L in exts])
    if len(parts) == 1:
        out = [LinearOrder(L) for L in parts[0]]
        # drop duplicated padding so chains report size 1
        uniq = list(dict.fromkeys(out))
        return uniq
    out = [
        LinearOrder(itertools.chain.from_iterable(p[0] for p in parts)),
        LinearOrder(itertools.chain.from_iterable(p[1] for p in parts)),
        LinearOrder(itertools.chain.from_iterable(p[2] for p in reversed(parts))),
    ]
    return out
