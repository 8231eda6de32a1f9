"""Seeded random posets for tests, demos and the command line."""
from __future__ import annotations

import random

import networkx as nx
import numpy as np

from .decomposition import cover_graph
from .poset import Poset, disjoint_sum, poset_from_relations, transitive_closure

__all__ = [
    "random_poset",
    "random_forest_poset",
    "random_block",
    "block_glued",
    "random_disconnected",
    "relabel",
    "all_labeled_posets",
]


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def relabel(P: Poset, perm) -> Poset:
    """Poset with element ``perm[e]`` playing the role of e."""
    perm = np.asarray(perm)
    m = np.zeros_like(P.lt)
    m[np.ix_(perm, perm)] = P.lt
    return Poset(m, check=False)


def random_poset(n: int, p: float = 0.3, seed=None) -> Poset:
    """Transitive closure of a random DAG on a shuffled vertex order."""
    rng = _rng(seed)
    m = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                m[i, j] = True
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(Poset(transitive_closure(m), check=False), perm)


def random_forest_poset(n: int, seed=None, p_new_tree: float = 0.05) -> Poset:
    """Poset whose cover graph is a random forest with random edge directions."""
    rng = _rng(seed)
    edges = []
    for v in range(1, n):
        if rng.random() < p_new_tree:
            continue
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    perm = list(range(n))
    rng.shuffle(perm)
    return poset_from_relations(n, [(perm[a], perm[b]) for a, b in edges])


def random_block(k: int, seed=None, tries: int = 10000) -> Poset:
    """Poset on k elements whose cover graph is 2-connected (an edge if k = 2).

    No 2-connected cover graph has exactly three vertices, so k = 3 is refused.
    """
    rng = _rng(seed)
    if k == 1:
        return poset_from_relations(1, [])
    if k == 2:
        return poset_from_relations(2, [(0, 1)])
    if k == 3:
        raise ValueError("no block has exactly three elements")
    for _ in range(tries):
        P = random_poset(k, rng.uniform(0.25, 0.7), rng)
        G = cover_graph(P)
        if nx.is_biconnected(G):
            return P
    raise RuntimeError(f"no {k}-element block found in {tries} tries")


def block_glued(t: int, max_block: int = 8, seed=None, shuffle: bool = True) -> Poset:
    """Connected poset made of t random blocks glued one at a time at single elements."""
    rng = _rng(seed)
    sizes = [2] + list(range(4, max_block + 1))
    rel: list[tuple[int, int]] = []
    n = 0
    for b in range(t):
        k = rng.choice(sizes)
        B = random_block(k, rng)
        if b == 0:
            ids = list(range(k))
            n = k
        else:
            w, w2 = rng.randrange(n), rng.randrange(k)
            ids, nxt = [], n
            for e in range(k):
                if e == w2:
                    ids.append(w)
                else:
                    ids.append(nxt)
                    nxt += 1
            n = nxt
        rel += [(ids[a], ids[c]) for a, c in zip(*np.nonzero(B.lt))]
    P = poset_from_relations(n, rel)
    if shuffle:
        perm = list(range(n))
        rng.shuffle(perm)
        P = relabel(P, perm)
    return P


def random_disconnected(parts: int, max_size: int = 10, seed=None, kind: str = "any") -> Poset:
    """Disjoint sum of random connected posets, shuffled.

    ``kind`` is ``"any"`` for arbitrary connected pieces or ``"glued"`` for
    block-glued pieces.
    """
    rng = _rng(seed)
    pieces = []
    for _ in range(parts):
        if kind == "glued":
            pieces.append(block_glued(rng.randint(1, 4), max_size, rng))
            continue
        while True:
            P = random_poset(rng.randint(1, max_size), rng.uniform(0.2, 0.6), rng)
            if nx.is_connected(cover_graph(P)):
                pieces.append(P)
                break
    P = disjoint_sum(pieces)
    perm = list(range(P.n))
    rng.shuffle(perm)
    return relabel(P, perm)


def all_labeled_posets(n: int):
    """Every poset on ``range(n)``, built by adding the last element to each
    poset on one fewer element with every compatible down-set and up-set."""
    if n < 1:
        return
    level = [np.zeros((1, 1), dtype=bool)]
    for k in range(1, n):
        nxt = []
        for m in level:
            for down in range(1 << k):
                D = [i for i in range(k) if down >> i & 1]
                # down-sets must be closed under going lower
                if any(m[j, i] and not down >> j & 1 for i in D for j in range(k)):
                    continue
                for up in range(1 << k):
                    if up & down:
                        continue
                    U = [i for i in range(k) if up >> i & 1]
                    if any(m[i, j] and not up >> j & 1 for i in U for j in range(k)):
                        continue
                    if not all(m[a, b] for a in D for b in U):
                        continue
                    new = np.zeros((k + 1, k + 1), dtype=bool)
                    new[:k, :k] = m
                    new[D, k] = True
                    new[k, U] = True
                    nxt.append(new)
        level = nxt
    for m in level:
        yield Poset(m, check=False)
