"""Boolean realizers: orders plus a truth function on the pair bit strings.

The bit string of an ordered pair ``(x, y)`` has a 1 in coordinate i exactly
when x precedes y in the i-th order.  Truth functions are small picklable
objects that know how to serialise themselves; :func:`verify` evaluates the
truth function once per distinct bit string, so any dependence on anything but
the bits would surface as a collision.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import SupportError
from .poset import LinearOrder, Poset

__all__ = [
    "TruthFunction",
    "AndTruth",
    "PrefixTruth",
    "TableTruth",
    "register_truth",
    "truth_from_json",
    "BooleanRealizer",
    "VerificationReport",
    "FamilyLayout",
    "CodingFamily",
    "query_bits",
    "verify",
    "and_realizer",
    "pad",
    "fingerprint",
    "bits_index",
    "code_length",
    "lemma1_family",
    "lemma2_family",
    "decode_same",
    "decode_codes",
    "separating_family",
    "is_separating",
]

_TRUTH_TYPES: dict[str, type] = {}


def register_truth(cls):
    _TRUTH_TYPES[cls.name] = cls
    return cls


class TruthFunction:
    """Base class; subclasses define ``name``, ``__call__`` and ``to_json``."""

    name = "abstract"

    def __call__(self, bits: Sequence[int]) -> int:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_json(cls, data: Mapping) -> "TruthFunction":
        raise NotImplementedError


def truth_from_json(data: Mapping) -> TruthFunction:
    try:
        cls = _TRUTH_TYPES[data["name"]]
    except KeyError:
        raise ValueError(f"unknown truth function {data.get('name')!r}") from None
    return cls.from_json(data)


@register_truth
class AndTruth(TruthFunction):
    """1 exactly on the all-ones string."""

    name = "and"

    def __call__(self, bits):
        return int(all(bits))

    def to_json(self):
        return {"name": self.name}

    @classmethod
    def from_json(cls, data):
        return cls()


@register_truth
class PrefixTruth(TruthFunction):
    """Apply ``inner`` to the first ``k`` bits, ignoring padding coordinates."""

    name = "prefix"

    def __init__(self, inner: TruthFunction, k: int):
        self.inner = inner
        self.k = k

    def __call__(self, bits):
        return self.inner(tuple(bits[: self.k]))

    def to_json(self):
        return {"name": self.name, "k": self.k, "inner": self.inner.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(truth_from_json(data["inner"]), int(data["k"]))


@register_truth
class TableTruth(TruthFunction):
    """Explicit answers for listed bit strings, else ``fallback`` (or 0)."""

    name = "table"

    def __init__(self, table: Mapping[Sequence[int], int] | None = None,
                 fallback: TruthFunction | None = None):
        self.table = {tuple(int(b) for b in k): int(v) for k, v in (table or {}).items()}
        self.fallback = fallback

    def __call__(self, bits):
        key = tuple(int(b) for b in bits)
        if key in self.table:
            return self.table[key]
        return self.fallback(key) if self.fallback is not None else 0

    def to_json(self):
        out = {"name": self.name,
               "table": [["".join(map(str, k)), v] for k, v in sorted(self.table.items())]}
        if self.fallback is not None:
            out["fallback"] = self.fallback.to_json()
        return out

    @classmethod
    def from_json(cls, data):
        table = {tuple(int(c) for c in k): v for k, v in data.get("table", [])}
        fb = data.get("fallback")
        return cls(table, truth_from_json(fb) if fb is not None else None)


# realizers -------------------------------------------------------------------
@dataclass(frozen=True)
class FamilyLayout:
    """Named consecutive slices of a flat order list."""

    names: tuple[str, ...]
    lengths: tuple[int, ...]

    @classmethod
    def of(cls, parts: Iterable[tuple[str, int]]) -> "FamilyLayout":
        names, lengths = zip(*parts) if parts else ((), ())
        return cls(tuple(names), tuple(int(k) for k in lengths))

    @property
    def size(self) -> int:
        return sum(self.lengths)

    def offsets(self) -> dict[str, tuple[int, int]]:
        out, off = {}, 0
        for name, k in zip(self.names, self.lengths):
            out[name] = (off, k)
            off += k
        return out

    def slice(self, name: str) -> slice:
        off, k = self.offsets()[name]
        return slice(off, off + k)

    def to_json(self):
        return [{"family": n, "offset": self.offsets()[n][0], "length": k}
                for n, k in zip(self.names, self.lengths)]

    @classmethod
    def from_json(cls, data):
        return cls.of((d["family"], d["length"]) for d in data)


@dataclass(frozen=True)
class BooleanRealizer:
    orders: tuple[LinearOrder, ...]
    truth: TruthFunction
    layout: FamilyLayout | None = None

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(LinearOrder(L) for L in self.orders))

    @property
    def size(self) -> int:
        return len(self.orders)

    def bits(self, x: int, y: int) -> tuple[int, ...]:
        return query_bits(self.orders, x, y)

    def decide(self, x: int, y: int) -> int:
        return int(self.truth(self.bits(x, y)))

    def to_json(self) -> dict:
        out = {"format": "booldim-realizer", "version": 1,
               "orders": [list(L) for L in self.orders],
               "truth": self.truth.to_json()}
        if self.layout is not None:
            out["layout"] = self.layout.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "BooleanRealizer":
        layout = data.get("layout")
        return cls(tuple(LinearOrder(L) for L in data["orders"]),
                   truth_from_json(data["truth"]),
                   FamilyLayout.from_json(layout) if layout is not None else None)


def query_bits(B, x: int, y: int) -> tuple[int, ...]:
    """Bit string of ``(x, y)`` in the orders of B (a realizer or order list)."""
    orders = B.orders if isinstance(B, BooleanRealizer) else B
    if x == y:
        raise SupportError("bit strings are defined for distinct elements only")
    out = []
    for L in orders:
        pos = L.pos if isinstance(L, LinearOrder) else {e: i for i, e in enumerate(L)}
        if x not in pos or y not in pos:
            raise SupportError(f"pair ({x}, {y}) not in the support of every order")
        out.append(int(pos[x] < pos[y]))
    return tuple(out)


@dataclass
class VerificationReport:
    pairs_checked: int = 0
    errors: list = field(default_factory=list)       # (x, y, expected, got)
    collisions: list = field(default_factory=list)   # (bits, comparable pair, incomparable pair)
    problems: list = field(default_factory=list)     # structural issues

    @property
    def ok(self) -> bool:
        return not (self.errors or self.collisions or self.problems)

    def __bool__(self):
        # truthy when something is wrong, matching "nonempty report"
        return not self.ok

    def summary(self) -> str:
        if self.ok:
            return f"pass ({self.pairs_checked} ordered pairs)"
        return (f"fail: {len(self.errors)} pair errors, {len(self.collisions)} collisions, "
                f"{len(self.problems)} structural problems")

    def to_json(self) -> dict:
        return {"ok": self.ok, "pairs_checked": self.pairs_checked,
                "errors": [list(e) for e in self.errors],
                "collisions": [["".join(map(str, b)), list(p), list(q)]
                               for b, p, q in self.collisions],
                "problems": list(self.problems)}


def _position_matrix(orders, n, report):
    pos = np.full((len(orders), n), -1, dtype=np.int64)
    for k, L in enumerate(orders):
        for i, e in enumerate(L):
            if 0 <= e < n:
                pos[k, e] = i
            else:
                report.problems.append(f"order {k} lists unknown element {e}")
        if len(L) != n or (pos[k] < 0).any():
            report.problems.append(f"order {k} is not a linear order on all {n} elements")
    return pos


def verify(P: Poset, R: BooleanRealizer, max_listed: int | None = None) -> VerificationReport:
    """Check every ordered pair of distinct elements against P.

    ``max_listed`` caps how many errors and collisions are recorded (counts
    are still exact through ``pairs_checked`` and the ``ok`` flag).
    """
    report = VerificationReport()
    n = P.n
    pos = _position_matrix(R.orders, n, report)
    if report.problems:
        return report
    xs, ys = np.nonzero(~np.eye(n, dtype=bool))
    report.pairs_checked = len(xs)
    if n < 2:
        return report
    bits = (pos[:, xs] < pos[:, ys]).T.astype(np.uint8)
    if bits.shape[1] == 0:
        uniq, inv = np.zeros((1, 0), dtype=np.uint8), np.zeros(len(xs), dtype=np.int64)
    else:
        uniq, inv = np.unique(bits, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
    answers = np.array([int(R.truth(tuple(int(b) for b in row))) for row in uniq], dtype=np.int8)
    got = answers[inv]
    want = P.lt[xs, ys].astype(np.int8)
    bad = np.flatnonzero(got != want)
    for k in bad[:max_listed]:
        report.errors.append((int(xs[k]), int(ys[k]), int(want[k]), int(got[k])))
    if len(bad) and max_listed is not None and len(bad) > max_listed:
        report.problems.append(f"{len(bad) - max_listed} further pair errors not listed")
    ones = np.bincount(inv, weights=want, minlength=len(uniq))
    total = np.bincount(inv, minlength=len(uniq))
    mixed = np.flatnonzero((ones > 0) & (ones < total))
    for g in mixed[:max_listed]:
        members = np.flatnonzero(inv == g)
        c = members[want[members] == 1][0]
        i = members[want[members] == 0][0]
        report.collisions.append((tuple(int(b) for b in uniq[g]),
                                  (int(xs[c]), int(ys[c])), (int(xs[i]), int(ys[i]))))
    return report


def and_realizer(R: Sequence[Sequence[int]]) -> BooleanRealizer:
    """Boolean realizer answering 1 only on the all-ones string."""
    return BooleanRealizer(tuple(LinearOrder(L) for L in R), AndTruth())


def pad(R: BooleanRealizer, d: int) -> BooleanRealizer:
    """Repeat the last order until there are d orders; extra bits are ignored."""
    if R.size > d:
        raise ValueError(f"cannot pad a realizer of size {R.size} down to {d}")
    if R.size == d:
        return R
    orders = R.orders + (R.orders[-1],) * (d - R.size)
    return BooleanRealizer(orders, PrefixTruth(R.truth, R.size))


def bits_index(bits: Sequence[int]) -> int:
    """Position of a bit string in ``itertools.product((0, 1), repeat=len(bits))``."""
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def fingerprint(truth: Callable[[Sequence[int]], int], d: int) -> tuple[int, ...]:
    """The full truth table over d bits, in lexicographic bit order."""
    return tuple(int(truth(bits)) for bits in itertools.product((0, 1), repeat=d))


def code_length(t: int) -> int:
    """Bits needed to give t colours distinct codes."""
    return max(0, math.ceil(math.log2(t))) if t > 1 else 0


# coding families -------------------------------------------------------------
@dataclass(frozen=True)
class CodingFamily:
    orders: tuple[LinearOrder, ...]
    decoder: Callable[[Sequence[int]], Any]

    @property
    def size(self) -> int:
        return len(self.orders)

    def decode(self, x: int, y: int):
        return self.decoder(query_bits(self.orders, x, y))


def _classes_in_order(elements, coloring):
    """Colour classes keyed by colour, in order of first appearance."""
    classes: dict[Hashable, list[int]] = {}
    for e in elements:
        classes.setdefault(coloring[e], []).append(e)
    return classes


def decode_same(bits: Sequence[int]) -> bool:
    """Same-class test from the two-order family."""
    return bits[0] != bits[1]


def lemma1_family(elements: Iterable[int], coloring) -> CodingFamily:
    """Two orders telling whether two elements share a colour class.

    Classes are laid out consecutively, in the same class order both times,
    with each class reversed in the second order.
    """
    elements = sorted(elements)
    classes = _classes_in_order(elements, coloring)
    N1 = LinearOrder(e for cls in classes.values() for e in cls)
    N2 = LinearOrder(e for cls in classes.values() for e in reversed(cls))
    return CodingFamily((N1, N2), decode_same)


_BOTH = {(1, 0, 1, 0), (0, 1, 0, 1)}
_NEITHER = {(1, 1, 1, 1), (0, 0, 0, 0)}


def decode_codes(bits: Sequence[int], r: int):
    """Pair of codes ``(code_x, code_y)`` from 4r bits, or None if unrealizable."""
    cx = cy = 0
    for j in range(r):
        q = tuple(int(b) for b in bits[4 * j: 4 * j + 4])
        if q in _BOTH:
            cx |= 1 << j
            cy |= 1 << j
        elif q == (1, 1, 0, 0):
            cx |= 1 << j
        elif q == (0, 0, 1, 1):
            cy |= 1 << j
        elif q not in _NEITHER:
            return None
    return cx, cy


def lemma2_family(elements: Iterable[int], coloring, palette: Sequence[Hashable] | None = None
                  ) -> CodingFamily:
    """4r orders from which the ordered colour pair of any two elements is read off.

    Colours get codes by their index in ``palette`` (default: first-appearance
    order), read as subsets of ``range(r)``.  For each coordinate j the four
    orders put the elements whose code contains j first or last, in the base
    order or its reverse.
    """
    elements = sorted(elements)
    if palette is None:
        palette = list(_classes_in_order(elements, coloring))
    palette = list(palette)
    code = {c: k for k, c in enumerate(palette)}
    r = code_length(len(palette))
    orders = []
    for j in range(r):
        inside = [e for e in elements if code[coloring[e]] >> j & 1]
        rest = [e for e in elements if not code[coloring[e]] >> j & 1]
        orders += [LinearOrder(inside + rest),
                   LinearOrder(inside[::-1] + rest),
                   LinearOrder(rest + inside),
                   LinearOrder(rest + inside[::-1])]

    def decoder(bits):
        got = decode_codes(bits, r)
        if got is None or got[0] >= len(palette) or got[1] >= len(palette):
            return None
        return palette[got[0]], palette[got[1]]

    return CodingFamily(tuple(orders), decoder)


def separating_family(A: Iterable[Hashable]) -> list[frozenset]:
    """Subsets such that each ordered pair (a, b) has one containing a but not b.

    Members are numbered in the given order; the family is the binary-digit
    sets of those numbers followed by their complements.
    """
    A = list(dict.fromkeys(A))
    r = code_length(len(A))
    digits = [frozenset(a for k, a in enumerate(A) if k >> j & 1) for j in range(r)]
    full = frozenset(A)
    return digits + [full - s for s in digits]


def is_separating(A: Iterable[Hashable], family: Sequence[frozenset]) -> bool:
    A = list(A)
    return all(any(a in s and b not in s for s in family)
               for a in A for b in A if a != b)
