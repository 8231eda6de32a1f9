"""Cover graphs, blocks, the Z-partition and the block tree.

Blocks are labelled ``0..t-1`` by a breadth-first walk of the block-cut tree
started at the smallest block holding the lowest-index element, so every block
after the first meets the union of its predecessors in exactly one element,
its root.  ``Z[0]`` is the first block and ``Z[i]`` is block ``i`` minus its
root.  Parts are indexed from 0 throughout.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np

from .errors import DisconnectedError, SameZError
from .poset import Poset, cover_pairs, poset_from_relations

__all__ = [
    "PairCase",
    "BlockDecomposition",
    "cover_graph",
    "components",
    "is_connected",
    "block_decomposition",
    "root_digraph",
    "q_poset",
    "block_tree",
    "dfs_orders",
    "classify_pair",
    "tail",
    "cut_set",
    "iuv",
    "sigma1",
    "sigma2",
]


class PairCase(enum.Enum):
    X_BELOW_Y = "x-below-y"
    Y_BELOW_X = "y-below-x"
    X_LEFT_OF_Y = "x-left-of-y"
    Y_LEFT_OF_X = "y-left-of-x"


def cover_graph(P: Poset) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from(cover_pairs(P))
    return G


def components(P: Poset) -> list[list[int]]:
    """Element lists of the cover-graph components, ordered by least element."""
    comps = (sorted(c) for c in nx.connected_components(cover_graph(P)))
    return sorted(comps, key=lambda c: c[0])


def is_connected(P: Poset) -> bool:
    return len(components(P)) == 1


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    poset: Poset
    graph: nx.Graph
    blocks: tuple[frozenset, ...]
    roots: tuple          # roots[0] is None
    zparts: tuple[frozenset, ...]
    zindex: tuple[int, ...]
    parent: tuple         # parent Z-part of each part, None for part 0
    children: tuple[tuple[int, ...], ...]
    element_blocks: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def t(self) -> int:
        return len(self.blocks)

    def prefix(self, i: int) -> frozenset:
        """Union of blocks ``0..i``."""
        return frozenset().union(*self.blocks[: i + 1])

    @cached_property
    def articulation(self) -> frozenset:
        return frozenset(nx.articulation_points(self.graph))

    @cached_property
    def depth(self) -> tuple[int, ...]:
        depth = [0] * self.t
        for i in range(1, self.t):   # parents always have smaller labels
            depth[i] = depth[self.parent[i]] + 1
        return tuple(depth)

    @cached_property
    def distances(self) -> np.ndarray:
        n = self.poset.n
        dist = np.full((n, n), -1, dtype=int)
        for src, lengths in nx.all_pairs_shortest_path_length(self.graph):
            for dst, k in lengths.items():
                dist[src, dst] = k
        return dist

    def path_to(self, i: int, j: int) -> tuple[list[int], int, list[int]]:
        """Tree path between parts i and j: (i side up to lca, lca, j side)."""
        a, b = [], []
        depth = self.depth
        while depth[i] > depth[j]:
            a.append(i)
            i = self.parent[i]
        while depth[j] > depth[i]:
            b.append(j)
            j = self.parent[j]
        while i != j:
            a.append(i)
            b.append(j)
            i, j = self.parent[i], self.parent[j]
        return a, i, b


def block_decomposition(P: Poset, start: int = 0) -> BlockDecomposition:
    """Blocks of a connected poset labelled by a walk from ``start``'s block."""
    G = cover_graph(P)
    if not nx.is_connected(G):
        raise DisconnectedError("cover graph is not connected")
    if P.n == 1:
        raw = [frozenset([0])]
    else:
        raw = sorted((frozenset(b) for b in nx.biconnected_components(G)), key=sorted)
    member: dict[int, list[int]] = {v: [] for v in range(P.n)}
    for k, b in enumerate(raw):
        for v in b:
            member[v].append(k)
    first = min(member[start], key=lambda k: (len(raw[k]), sorted(raw[k])))
    order, root_of = [first], {first: None}
    queue = deque([first])
    while queue:
        k = queue.popleft()
        for v in sorted(raw[k]):
            for k2 in member[v]:
                if k2 not in root_of:
                    root_of[k2] = v
                    order.append(k2)
                    queue.append(k2)
    blocks = tuple(raw[k] for k in order)
    roots = tuple(root_of[k] for k in order)
    zparts = tuple(b if r is None else b - {r} for b, r in zip(blocks, roots))
    zindex = [0] * P.n
    for i, z in enumerate(zparts):
        for v in z:
            zindex[v] = i
    parent = tuple(None if r is None else zindex[r] for r in roots)
    children = tuple(tuple(j for j in range(len(blocks)) if parent[j] == i)
                     for i in range(len(blocks)))
    relabel = {k: i for i, k in enumerate(order)}
    element_blocks = tuple(tuple(sorted(relabel[k] for k in member[v])) for v in range(P.n))
    return BlockDecomposition(P, G, blocks, roots, zparts, tuple(zindex), parent,
                              children, element_blocks)


def root_digraph(bd: BlockDecomposition) -> nx.DiGraph:
    """Arcs ``a -> b`` meaning a < b between each root and its block's Z-part."""
    D = nx.DiGraph()
    D.add_nodes_from(range(bd.poset.n))
    lt = bd.poset.lt
    for i in range(1, bd.t):
        r = bd.roots[i]
        for u in sorted(bd.zparts[i]):
            if lt[u, r]:
                D.add_edge(u, r)
            elif lt[r, u]:
                D.add_edge(r, u)
    return D


def q_poset(rd: nx.DiGraph) -> Poset:
    return poset_from_relations(rd.number_of_nodes(), rd.edges)


def block_tree(bd: BlockDecomposition) -> nx.DiGraph:
    """Rooted tree on Z-part indices, arcs from parent to child."""
    T = nx.DiGraph()
    T.add_nodes_from(range(bd.t))
    for i in range(1, bd.t):
        T.add_edge(bd.parent[i], i)
    return T


def dfs_orders(bd: BlockDecomposition) -> tuple[list[int], list[int]]:
    """Preorders of the block tree, children left to right and right to left."""
    def walk(rev):
        out, stack = [], [0]
        while stack:
            i = stack.pop()
            out.append(i)
            kids = bd.children[i]
            stack.extend(kids if rev else reversed(kids))
        return out
    return walk(False), walk(True)


def classify_pair(bd: BlockDecomposition, x: int, y: int) -> PairCase:
    ix, iy = bd.zindex[x], bd.zindex[y]
    if ix == iy:
        raise SameZError(f"{x} and {y} share Z-part {ix}")
    a, lca, b = bd.path_to(ix, iy)
    if lca == ix:
        return PairCase.X_BELOW_Y
    if lca == iy:
        return PairCase.Y_BELOW_X
    # a[-1], b[-1] are the children of the lca towards x and y
    kids = bd.children[lca]
    if kids.index(a[-1]) < kids.index(b[-1]):
        return PairCase.X_LEFT_OF_Y
    return PairCase.Y_LEFT_OF_X


def tail(bd: BlockDecomposition, u: int) -> frozenset:
    """u together with every element cut off from the first block by deleting u."""
    base = bd.blocks[0] - {u}
    if not base:
        # u is the only element of the first block: every other element hangs off it
        return frozenset(range(bd.poset.n))
    H = bd.graph.subgraph(v for v in bd.graph if v != u)
    reach = set()
    for s in base:
        if s not in reach:
            reach |= nx.node_connected_component(H, s)
    return frozenset(v for v in range(bd.poset.n) if v not in reach)


def cut_set(bd: BlockDecomposition, x: int, y: int) -> frozenset:
    """Cut vertices lying on every cover-graph path from x to y (endpoints included)."""
    a, _, b = bd.path_to(bd.zindex[x], bd.zindex[y])
    out = {bd.roots[k] for k in a + b}
    out |= {e for e in (x, y) if e in bd.articulation}
    return frozenset(out)


def iuv(bd: BlockDecomposition, x: int, y: int) -> tuple[int, int, int]:
    """Least block index meeting Cut(x, y) and the cut vertices there nearest x and y."""
    if bd.zindex[x] == bd.zindex[y]:
        raise SameZError(f"{x} and {y} share Z-part {bd.zindex[x]}")
    cut = cut_set(bd, x, y)
    i = min(bd.element_blocks[w][0] for w in cut)
    here = [w for w in cut if bd.zindex[w] == i]
    dist = bd.distances
    u = min(here, key=lambda w: dist[x, w])
    v = min(here, key=lambda w: dist[y, w])
    return i, u, v


def sigma1(bd: BlockDecomposition, a: int) -> int:
    """Climb through roots while each root lies above the current element."""
    lt = bd.poset.lt
    w = a
    while bd.zindex[w] != 0:
        r = bd.roots[bd.zindex[w]]
        if not lt[w, r]:
            break
        w = r
    return w


def sigma2(bd: BlockDecomposition, a: int) -> int:
    """Dual of :func:`sigma1`: climb through roots lying below."""
    lt = bd.poset.lt
    w = a
    while bd.zindex[w] != 0:
        r = bd.roots[bd.zindex[w]]
        if not lt[r, w]:
            break
        w = r
    return w
