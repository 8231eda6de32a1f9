"""Boolean realizers assembled from realizers of the blocks of a poset.

The construction glues block realizers at cut vertices and adds coding orders
that let the truth function work out, from bits alone, how x and y sit in the
block tree and which block table to consult.  Families, in order:

``F1``  same Z-part or not (2 orders)
``F2``  code of the table of the Z-part of each element (4r)
``F3``  block realizers merged at cut vertices (d)
``F4``  a realizer of the root-digraph poset Q (3)
``F5``  left-to-right and right-to-left walks of the block tree (2)
``F6``  M and M', reversing hopeless pairs in the vertical cases (2)
``F7``  N1..N4 for pairs with x left of y (4)
``F8``  code of the table where the upward root climb from x ends (4r)
``F9``  code of the table where the downward root climb from y ends (4r)
``F10`` realizers of Q(S) for every set S of a separating family of tables (3m)
``F11`` N1..N4 for pairs with y left of x (4)

with r = ceil(log2 #tables) and m = 2r.  Disconnected posets get two more
orders in front telling components apart.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .components import lift
from .decomposition import (BlockDecomposition, PairCase, block_decomposition, classify_pair,
                            components, dfs_orders, iuv, q_poset, root_digraph, sigma1, sigma2)
from .errors import DisconnectedError, NotForestError
from .oracles import forest_realizer3, is_forest_poset, optimal_realizer, reverse_set
from .poset import (LinearOrder, Poset, concat, induced, merge_at_cut, poset_from_relations,
                    topological_sort)
from .realizer import (BooleanRealizer, FamilyLayout, TruthFunction, and_realizer, bits_index,
                       code_length, decode_codes, decode_same, fingerprint, lemma1_family,
                       lemma2_family, pad, register_truth, separating_family)

__all__ = [
    "BlockRealizerInput",
    "BlocksTruth",
    "block_input",
    "block_layout",
    "pair_data",
    "build_f3",
    "build_f6",
    "build_f7_f11",
    "qs_poset",
    "build_f10",
    "build_families",
    "build_block_realizer",
    "build_general_realizer",
    "block_size_bound",
    "general_size_bound",
    "audit_endgame",
]

InnerBuilder = Callable[[Poset], BooleanRealizer]


def default_inner(d_max: int | None = None) -> InnerBuilder:
    """AND-realizer of a minimum realizer, refusing dimension above ``d_max``."""
    def build(sub: Poset) -> BooleanRealizer:
        R = optimal_realizer(sub, d_max)
        if R is None:
            raise ValueError(f"block of size {sub.n} has dimension above {d_max}")
        return and_realizer(R)
    return build


@dataclass(frozen=True, eq=False)
class BlockRealizerInput:
    poset: Poset
    decomposition: BlockDecomposition
    realizers: tuple[BooleanRealizer, ...]   # per block, on P's labels, all of size d
    base: tuple[LinearOrder, ...]            # a linear extension of each block

    @property
    def d(self) -> int:
        return self.realizers[0].size


def block_input(P: Poset, bd: BlockDecomposition | None = None,
                realizers: Sequence[BooleanRealizer] | None = None,
                inner: InnerBuilder | None = None, d: int | None = None) -> BlockRealizerInput:
    """Decompose P and collect padded block realizers and base extensions."""
    bd = bd or block_decomposition(P)
    if realizers is None:
        inner = inner or default_inner()
        realizers = []
        for X in bd.blocks:
            sub, labels = induced(P, X)
            realizers.append(lift(inner(sub), labels))
    d = max([R.size for R in realizers] + [d or 0])
    realizers = tuple(pad(R, d) for R in realizers)
    base = tuple(topological_sort(P, elements=X) for X in bd.blocks)
    return BlockRealizerInput(P, bd, realizers, base)


def block_layout(d: int, ntables: int, components: bool = False) -> FamilyLayout:
    r = code_length(ntables)
    parts = [("F1", 2), ("F2", 4 * r), ("F3", d), ("F4", 3), ("F5", 2), ("F6", 2),
             ("F7", 4), ("F8", 4 * r), ("F9", 4 * r), ("F10", 3 * 2 * r), ("F11", 4)]
    if components:
        parts.insert(0, ("F0", 2))
    return FamilyLayout.of(parts)


def block_size_bound(d: int) -> int:
    return 17 + d + 18 * 2 ** d


def general_size_bound(d: int) -> int:
    return 19 + d + 18 * 2 ** d


# truth function --------------------------------------------------------------
@register_truth
class BlocksTruth(TruthFunction):
    """Case analysis on the family bits; ``explain`` also names the branch taken."""

    name = "blocks"

    def __init__(self, d: int, tables: Sequence[Sequence[int]], components: bool = False):
        self.d = d
        self.tables = [tuple(int(v) for v in t) for t in tables]
        self.components = components
        self.r = code_length(len(self.tables))
        self.layout = block_layout(d, len(self.tables), components)
        self._slices = {name: self.layout.slice(name) for name in self.layout.names}
        idx = range(len(self.tables))
        self.separating = separating_family(idx)
        self._split = {}
        for a in idx:
            for b in idx:
                if a != b:
                    j1 = next(j for j, S in enumerate(self.separating) if a in S and b not in S)
                    j2 = next(j for j, S in enumerate(self.separating) if b in S and a not in S)
                    self._split[a, b] = (j1, j2)

    def _table(self, k, bits):
        if k is None or k >= len(self.tables):
            return 0
        return self.tables[k][bits_index(bits[self._slices["F3"]])]

    def _codes(self, name, bits):
        got = decode_codes(bits[self._slices[name]], self.r)
        return (None, None) if got is None else got

    def explain(self, bits) -> tuple[int, str]:
        bits = tuple(bits)
        s = self._slices
        if self.components and not decode_same(bits[s["F0"]]):
            return 0, "components"
        cx, cy = self._codes("F2", bits)
        if decode_same(bits[s["F1"]]):
            return self._table(cx, bits), "same-z"
        q = bits[s["F4"]]
        if all(q):
            return 1, "q-above"
        if not any(q):
            return 0, "q-below"
        walk = bits[s["F5"]]
        m, m2 = bits[s["F6"]]
        if walk == (1, 1):
            return (self._table(cx, bits) if m else 0), "x-below-y"
        if walk == (0, 0):
            return (self._table(cy, bits) if m2 else 0), "y-below-x"
        gate = bits[s["F7"]] if walk == (1, 0) else bits[s["F11"]]
        if not all(gate):
            return 0, "left-gated"
        alpha = self._codes("F8", bits)[0]
        beta = self._codes("F9", bits)[1]
        if alpha is None or beta is None:
            return 0, "endgame-invalid"
        if alpha == beta:
            return self._table(alpha, bits), "endgame-equal"
        j1, j2 = self._split.get((alpha, beta), (None, None))
        if j1 is None:
            return 0, "endgame-invalid"
        f10 = bits[s["F10"]]
        inc1 = len(set(f10[3 * j1: 3 * j1 + 3])) > 1
        inc2 = len(set(f10[3 * j2: 3 * j2 + 3])) > 1
        if inc1 and inc2:
            return 0, "endgame-both"
        if inc2:
            return self._table(alpha, bits), "endgame-alpha"
        if inc1:
            return self._table(beta, bits), "endgame-beta"
        return 0, "endgame-neither"

    def __call__(self, bits):
        return self.explain(bits)[0]

    def to_json(self):
        return {"name": self.name, "d": self.d, "components": self.components,
                "tables": ["".join(map(str, t)) for t in self.tables]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["d"]), [[int(c) for c in t] for t in data["tables"]],
                   bool(data.get("components", False)))


# families --------------------------------------------------------------------
def pair_data(bd: BlockDecomposition) -> dict:
    """``(x, y) -> (case, u, v)`` for incomparable pairs in different Z-parts."""
    lt = bd.poset.lt
    out = {}
    n = bd.poset.n
    for x in range(n):
        for y in range(n):
            if x == y or lt[x, y] or lt[y, x] or bd.zindex[x] == bd.zindex[y]:
                continue
            _, u, v = iuv(bd, x, y)
            out[x, y] = (classify_pair(bd, x, y), u, v)
    return out


def build_f3(inp: BlockRealizerInput) -> list[LinearOrder]:
    """Fold the block realizers together at the roots, one order per coordinate."""
    bd = inp.decomposition
    out = []
    for j in range(inp.d):
        L = inp.realizers[0].orders[j]
        for k in range(1, bd.t):
            L = merge_at_cut(L, inp.realizers[k].orders[j], bd.roots[k])
        out.append(L)
    return out


def build_f6(inp: BlockRealizerInput, pairs: dict | None = None):
    """M reverses below-pairs with v not< y; M' reverses mirrored pairs with x not< u."""
    P = inp.poset
    pairs = pair_data(inp.decomposition) if pairs is None else pairs
    S = [(x, y) for (x, y), (c, u, v) in pairs.items()
         if c is PairCase.X_BELOW_Y and not P.lt[v, y]]
    S2 = [(x, y) for (x, y), (c, u, v) in pairs.items()
          if c is PairCase.Y_BELOW_X and not P.lt[x, u]]
    return reverse_set(P, S), reverse_set(P, S2), (S, S2)


def _gate_sets(P, L1, pairs, case):
    R = [[], [], [], []]
    for (x, y), (c, u, v) in pairs.items():
        if c is not case:
            continue
        up = L1.pos[u] <= L1.pos[v]
        down = L1.pos[u] >= L1.pos[v]
        x_free = not P.lt[x, u]
        y_free = not P.lt[v, y]
        if up and x_free:
            R[0].append((x, y))
        if up and y_free:
            R[1].append((x, y))
        if down and x_free:
            R[2].append((x, y))
        if down and y_free:
            R[3].append((x, y))
    return R


def build_f7_f11(inp: BlockRealizerInput, L1: LinearOrder, pairs: dict | None = None):
    """Four reversals for each horizontal case, split by the positions of u and v in L1."""
    P = inp.poset
    pairs = pair_data(inp.decomposition) if pairs is None else pairs
    R = _gate_sets(P, L1, pairs, PairCase.X_LEFT_OF_Y)
    R2 = _gate_sets(P, L1, pairs, PairCase.Y_LEFT_OF_X)
    N = [reverse_set(P, S) for S in R]
    N2 = [reverse_set(P, S) for S in R2]
    return N, N2, (R, R2)


def _table_index(inp: BlockRealizerInput, tables) -> list[int]:
    where = {t: k for k, t in enumerate(tables)}
    return [where[fingerprint(R.truth, inp.d)] for R in inp.realizers]


def qs_poset(inp: BlockRealizerInput, S, block_tables: Sequence[int]) -> Poset:
    """Blocks whose table is in S become chains along their base order; the
    others keep only their root-digraph arcs."""
    bd = inp.decomposition
    lt = inp.poset.lt
    covers = []
    for i in range(bd.t):
        if block_tables[i] in S:
            L = inp.base[i]
            covers += list(zip(L, L[1:]))
        elif i > 0:
            r = bd.roots[i]
            for u in bd.zparts[i]:
                if lt[u, r]:
                    covers.append((u, r))
                elif lt[r, u]:
                    covers.append((r, u))
    Q = poset_from_relations(inp.poset.n, covers)
    if not is_forest_poset(Q):
        raise NotForestError("Q(S) has a cycle in its cover graph")
    return Q


def _three(P: Poset) -> list[LinearOrder]:
    R = forest_realizer3(P)
    while len(R) < 3:
        R.append(R[-1])
    return R


def build_f10(inp: BlockRealizerInput, tables, block_tables=None) -> list[list[LinearOrder]]:
    block_tables = _table_index(inp, tables) if block_tables is None else block_tables
    return [_three(qs_poset(inp, S, block_tables))
            for S in separating_family(range(len(tables)))]


def build_families(inp: BlockRealizerInput, tables) -> dict[str, list[LinearOrder]]:
    """All families for a connected poset, coding tables by their index in ``tables``."""
    P, bd = inp.poset, inp.decomposition
    X = range(P.n)
    palette = range(len(tables))
    bt = _table_index(inp, tables)
    ztab = {e: bt[bd.zindex[e]] for e in X}
    pairs = pair_data(bd)
    fam = {}
    fam["F1"] = list(lemma1_family(X, bd.zindex).orders)
    fam["F2"] = list(lemma2_family(X, ztab, palette).orders)
    fam["F3"] = build_f3(inp)
    fam["F4"] = _three(q_poset(root_digraph(bd)))
    lr, rl = dfs_orders(bd)
    fam["F5"] = [concat(sorted(bd.zparts[i]) for i in walk) for walk in (lr, rl)]
    M, M2, _ = build_f6(inp, pairs)
    fam["F6"] = [M, M2]
    N, N2, _ = build_f7_f11(inp, fam["F3"][0], pairs)
    fam["F7"] = N
    fam["F8"] = list(lemma2_family(X, {e: ztab[sigma1(bd, e)] for e in X}, palette).orders)
    fam["F9"] = list(lemma2_family(X, {e: ztab[sigma2(bd, e)] for e in X}, palette).orders)
    fam["F10"] = [L for triple in build_f10(inp, tables, bt) for L in triple]
    fam["F11"] = N2
    return fam


def _tables_of(realizers, d):
    return list(dict.fromkeys(fingerprint(R.truth, d) for R in realizers))


def audit_endgame(P: Poset, bd: BlockDecomposition, R: BooleanRealizer, offset: int = 0,
                  elements: Sequence[int] | None = None) -> int:
    """Check that pairs sent to the table lookup after the horizontal gate have
    x < u, v < y and u != v; returns how many pairs were checked."""
    truth = R.truth
    labels = list(range(P.n)) if elements is None else list(elements)
    checked = 0
    for x in range(P.n):
        for y in range(P.n):
            if x == y or bd.zindex[x] == bd.zindex[y]:
                continue
            bits = R.bits(labels[x], labels[y])
            _, branch = truth.explain(bits)
            if branch.startswith("endgame"):
                _, u, v = iuv(bd, x, y)
                if not (P.lt[x, u] and P.lt[v, y] and u != v):
                    raise AssertionError(
                        f"pair ({labels[x]}, {labels[y]}) reached the endgame with "
                        f"u={labels[u]}, v={labels[v]}")
                checked += 1
    return checked


def build_block_realizer(inp: BlockRealizerInput, tables=None, self_test: bool = True
                         ) -> BooleanRealizer:
    """Boolean realizer of a connected poset from its block realizers.

    A single block is returned as is.  With ``self_test`` the endgame
    preconditions are re-checked pair by pair.
    """
    bd = inp.decomposition
    if len(components(inp.poset)) != 1:
        raise DisconnectedError("use build_general_realizer for disconnected posets")
    if bd.t == 1 and tables is None:
        return inp.realizers[0]
    tables = _tables_of(inp.realizers, inp.d) if tables is None else tables
    fam = build_families(inp, tables)
    truth = BlocksTruth(inp.d, tables)
    orders = tuple(L for name in truth.layout.names for L in fam[name])
    R = BooleanRealizer(orders, truth, truth.layout)
    if self_test:
        audit_endgame(inp.poset, bd, R)
    return R


def build_general_realizer(P: Poset, inner: InnerBuilder | None = None,
                           realizers: dict | None = None, self_test: bool = True
                           ) -> BooleanRealizer:
    """Boolean realizer of any poset from realizers of its blocks.

    ``realizers`` may map a block (as a frozenset of P's elements) to a Boolean
    realizer on P's labels; missing blocks are handled by ``inner``.
    """
    comps = components(P)
    inner = inner or default_inner()
    realizers = realizers or {}
    pieces = []
    for comp in comps:
        sub, labels = induced(P, comp)
        bd = block_decomposition(sub)
        local = {e: k for k, e in enumerate(labels)}
        given = []
        for X in bd.blocks:
            key = frozenset(labels[e] for e in X)
            if key in realizers:
                R = realizers[key]
                given.append(BooleanRealizer(
                    tuple(LinearOrder(local[e] for e in L) for L in R.orders), R.truth))
            else:
                bsub, blabels = induced(sub, X)
                given.append(lift(inner(bsub), blabels))
        pieces.append((sub, labels, bd, given))
    d = max(R.size for *_, given in pieces for R in given)
    inputs = [block_input(sub, bd, [pad(R, d) for R in given]) for sub, _, bd, given in pieces]
    tables = list(dict.fromkeys(t for inp in inputs for t in _tables_of(inp.realizers, d)))
    truth = BlocksTruth(d, tables, components=True)
    fams = [build_families(inp, tables) for inp in inputs]
    comp_of = {e: k for k, comp in enumerate(comps) for e in comp}
    orders = list(lemma1_family(range(P.n), comp_of).orders)
    for name in truth.layout.names[1:]:
        for p in range(len(fams[0][name])):
            orders.append(concat([labels[e] for e in fam[name][p]]
                                 for (_, labels, _, _), fam in zip(pieces, fams)))
    R = BooleanRealizer(tuple(orders), truth, truth.layout)
    if self_test:
        for (sub, labels, bd, _), inp in zip(pieces, inputs):
            audit_endgame(sub, bd, R, elements=labels)
    return R
