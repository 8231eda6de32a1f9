"""Text poset files, realizer JSON and DOT exports."""
from __future__ import annotations

import json
from pathlib import Path

import networkx as nx

from .errors import OrderError, ParseError
from .poset import Poset, cover_pairs, poset_from_relations
from .realizer import BooleanRealizer

__all__ = [
    "parse_poset",
    "format_poset",
    "read_poset",
    "write_poset",
    "read_realizer",
    "write_realizer",
    "to_dot",
]


def parse_poset(text: str) -> Poset:
    """Parse ``poset <n>`` followed by ``a b`` lines meaning a < b; ``#`` starts a comment."""
    n = None
    rel = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "poset":
                raise ParseError("expected header 'poset <n>'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"bad element count {fields[1]!r}", lineno) from None
            if n < 1:
                raise ParseError("element count must be positive", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"element out of range 0..{n - 1}", lineno)
        if a == b:
            raise ParseError(f"relation {a} < {a} is not allowed", lineno)
        rel.append((a, b))
    if n is None:
        raise ParseError("missing header 'poset <n>'")
    try:
        return poset_from_relations(n, rel)
    except OrderError as exc:
        raise ParseError(str(exc)) from None


def format_poset(P: Poset, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"poset {P.n}")
    lines += [f"{a} {b}" for a, b in cover_pairs(P)]
    return "\n".join(lines) + "\n"


def read_poset(path) -> Poset:
    return parse_poset(Path(path).read_text())


def write_poset(P: Poset, path, comment: str | None = None) -> None:
    Path(path).write_text(format_poset(P, comment))


def read_realizer(path) -> BooleanRealizer:
    try:
        data = json.loads(Path(path).read_text())
        return BooleanRealizer.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad realizer file: {exc}") from None


def write_realizer(R: BooleanRealizer, path, extra: dict | None = None) -> None:
    data = R.to_json()
    if extra:
        data.update(extra)
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def to_dot(G: nx.Graph, name: str = "G", labels: dict | None = None) -> str:
    """DOT text for a graph or digraph; node labels default to the node ids."""
    directed = G.is_directed()
    arrow = "->" if directed else "--"
    out = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for v in sorted(G.nodes):
        label = labels.get(v, v) if labels else v
        out.append(f'  {v} [label="{label}"];')
    for a, b in sorted(G.edges):
        out.append(f"  {a} {arrow} {b};")
    out.append("}")
    return "\n".join(out) + "\n"
