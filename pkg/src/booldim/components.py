"""Boolean realizers of disconnected posets from realizers of their components.

Layout of the result: two orders telling whether x and y lie in the same
component, 4r orders carrying the code of each component's truth table
(r bits for the distinct tables), then d orders that restrict to the inner
realizers component by component.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .decomposition import components as poset_components
from .errors import SingleComponentError
from .oracles import optimal_realizer
from .poset import LinearOrder, Poset, induced
from .realizer import (BooleanRealizer, FamilyLayout, TruthFunction, and_realizer,
                       bits_index, code_length, decode_codes, decode_same, fingerprint,
                       lemma1_family, lemma2_family, pad, register_truth, verify)

__all__ = [
    "ComponentRealizerInput",
    "ComponentsTruth",
    "component_input",
    "pad_realizers",
    "build_component_realizer",
    "component_size_bound",
    "min_orders_lower_bound",
    "sample_pn",
]


@dataclass(frozen=True)
class ComponentRealizerInput:
    """A poset, its components and one Boolean realizer per component.

    Inner realizers are expressed over the poset's own element labels.
    """

    poset: Poset
    components: tuple[tuple[int, ...], ...]
    realizers: tuple[BooleanRealizer, ...]

    @property
    def d(self) -> int:
        return max(R.size for R in self.realizers)


def lift(R: BooleanRealizer, labels: Sequence[int]) -> BooleanRealizer:
    """Rename the elements of a realizer of an induced subposet."""
    return BooleanRealizer(tuple(LinearOrder(labels[e] for e in L) for L in R.orders), R.truth)


def component_input(P: Poset, realizers: Sequence[BooleanRealizer] | None = None,
                    d_max: int | None = None) -> ComponentRealizerInput:
    """Input for :func:`build_component_realizer`; inner realizers default to
    AND-realizers of minimum realizers."""
    comps = tuple(tuple(c) for c in poset_components(P))
    if realizers is None:
        realizers = []
        for comp in comps:
            sub, labels = induced(P, comp)
            R = optimal_realizer(sub, d_max)
            if R is None:
                raise ValueError(f"component {list(comp)} exceeds dimension {d_max}")
            realizers.append(lift(and_realizer(R), labels))
    return ComponentRealizerInput(P, comps, tuple(realizers))


def pad_realizers(inp: ComponentRealizerInput) -> ComponentRealizerInput:
    d = inp.d
    return ComponentRealizerInput(inp.poset, inp.components,
                                  tuple(pad(R, d) for R in inp.realizers))


@register_truth
class ComponentsTruth(TruthFunction):
    name = "components"

    def __init__(self, d: int, tables: Sequence[Sequence[int]]):
        self.d = d
        self.tables = [tuple(int(v) for v in t) for t in tables]
        self.r = code_length(len(self.tables))

    def layout(self) -> FamilyLayout:
        return FamilyLayout.of([("F1", 2), ("F2", 4 * self.r), ("F3", self.d)])

    def __call__(self, bits):
        if not decode_same(bits[0:2]):
            return 0
        codes = decode_codes(bits[2:2 + 4 * self.r], self.r)
        if codes is None or codes[0] >= len(self.tables):
            return 0
        table = self.tables[codes[0]]
        return table[bits_index(bits[2 + 4 * self.r: 2 + 4 * self.r + self.d])]

    def to_json(self):
        return {"name": self.name, "d": self.d,
                "tables": ["".join(map(str, t)) for t in self.tables]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["d"]), [[int(c) for c in t] for t in data["tables"]])


def build_component_realizer(inp: ComponentRealizerInput) -> BooleanRealizer:
    if len(inp.components) < 2:
        raise SingleComponentError("need at least two components")
    inp = pad_realizers(inp)
    d = inp.d
    X = range(inp.poset.n)
    comp_of = {}
    for k, comp in enumerate(inp.components):
        for e in comp:
            comp_of[e] = k
    prints = [fingerprint(R.truth, d) for R in inp.realizers]
    tables = list(dict.fromkeys(prints))
    table_of = {e: prints[comp_of[e]] for e in X}
    F1 = lemma1_family(X, comp_of)
    F2 = lemma2_family(X, table_of, palette=tables)
    F3 = [LinearOrder(e for R in inp.realizers for e in R.orders[j]) for j in range(d)]
    truth = ComponentsTruth(d, tables)
    orders = F1.orders + F2.orders + tuple(F3)
    return BooleanRealizer(orders, truth, truth.layout())


def component_size_bound(d: int) -> int:
    return 2 + d + 4 * 2 ** d


# counting bound --------------------------------------------------------------
def _log2_factorial(m: int) -> float:
    return math.lgamma(m + 1) / math.log(2)


def _bound_holds(n: int, s: int) -> bool:
    """Whether ((2n)!)^s * 2^(2^s) >= 2^(n^2), decided exactly when close."""
    need = n * n - 2 ** s if s < 64 else -1
    if need <= 0:
        return True
    approx = s * _log2_factorial(2 * n) - need
    if abs(approx) > 1e-6 * max(1.0, need):
        return approx >= 0
    return (math.factorial(2 * n) ** s).bit_length() > need


def min_orders_lower_bound(n: int) -> int:
    """Least s >= 1 for which ((2n)!)^s 2^(2^s) >= 2^(n^2)."""
    if n < 1:
        raise ValueError("n must be positive")
    s = 1
    while not _bound_holds(n, s):
        s += 1
    return s


def sample_pn(n: int, seed=None) -> Poset:
    """Height-two poset with a_i = i below b_j = n + j independently with probability 1/2."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    m = np.zeros((2 * n, 2 * n), dtype=bool)
    m[:n, n:] = rng.random((n, n)) < 0.5
    return Poset(m, check=False)
