"""Command line: ``booldim analyze|build|verify|gen|bound``.

Exit status is 0 on success, 1 when a realizer fails verification and 2 on
bad input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import generators
from .blocks import (block_size_bound, build_general_realizer, default_inner,
                     general_size_bound, block_input, build_block_realizer)
from .components import (build_component_realizer, component_input, component_size_bound,
                         min_orders_lower_bound, sample_pn)
from .decomposition import block_decomposition, block_tree, components, cover_graph, root_digraph
from .errors import BudgetError, OrderError, ParseError
from .io import format_poset, read_poset, read_realizer, to_dot, write_realizer
from .oracles import exact_dimension
from .poset import induced, standard_example
from .realizer import verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=1, default=str))


def analyze(path, dot_dir=None, dmax=None) -> dict:
    P = read_poset(path)
    comps = components(P)
    report = {"file": str(path), "n": P.n, "relations": P.num_relations(),
              "covers": cover_graph(P).number_of_edges(), "height": P.height(),
              "components": []}
    for k, comp in enumerate(comps):
        sub, labels = induced(P, comp)
        bd = block_decomposition(sub)
        entry = {"elements": labels,
                 "blocks": [sorted(labels[e] for e in X) for X in bd.blocks],
                 "roots": [None if r is None else labels[r] for r in bd.roots],
                 "zparts": [sorted(labels[e] for e in Z) for Z in bd.zparts]}
        report["components"].append(entry)
        if dot_dir is not None:
            out = Path(dot_dir)
            out.mkdir(parents=True, exist_ok=True)
            rd = root_digraph(bd)
            (out / f"root_digraph_{k}.dot").write_text(
                to_dot(rd, "roots", {e: labels[e] for e in range(sub.n)}))
            (out / f"block_tree_{k}.dot").write_text(
                to_dot(block_tree(bd), "blocks",
                       {i: "Z%d: %s" % (i, sorted(labels[e] for e in Z))
                        for i, Z in enumerate(bd.zparts)}))
    if dot_dir is not None:
        (Path(dot_dir) / "cover.dot").write_text(to_dot(cover_graph(P), "cover"))
    if P.n <= 10:
        report["dimension"] = exact_dimension(P, dmax)
    return report


def build(path, method, dmax=None):
    P = read_poset(path)
    t0 = time.perf_counter()
    if method == "components":
        inp = component_input(P, d_max=dmax)
        R = build_component_realizer(inp)
        d = inp.d
        bound = component_size_bound(d)
    else:
        R = build_general_realizer(P, inner=default_inner(dmax))
        d = R.truth.d
        bound = general_size_bound(d)
    built = time.perf_counter()
    rep = verify(P, R, max_listed=20)
    report = {"file": str(path), "method": method, "n": P.n, "d": d, "size": R.size,
              "bound": bound, "slack": bound - R.size,
              "families": {n: k for n, k in zip(R.layout.names, R.layout.lengths)}
              if R.layout else {},
              "verification": rep.to_json(),
              "seconds": {"build": round(built - t0, 4),
                          "verify": round(time.perf_counter() - built, 4)}}
    return R, rep, report


def verify_files(poset_path, realizer_path):
    P = read_poset(poset_path)
    R = read_realizer(realizer_path)
    rep = verify(P, R, max_listed=50)
    return rep, {"poset": str(poset_path), "realizer": str(realizer_path), "size": R.size,
                 "verification": rep.to_json()}


def generate(kind, n=None, t=None, seed=None, max_block=8):
    rng = random.Random(seed)
    if kind == "standard":
        return standard_example(n or 3)
    if kind == "forest":
        return generators.random_forest_poset(n or 20, rng)
    if kind == "pn":
        return sample_pn(n or 4, seed)
    if kind == "block-glue":
        return generators.block_glued(t or 4, max_block, rng)
    raise ValueError(f"unknown generator {kind!r}")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="booldim", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="components, blocks, roots and small dimensions")
    p.add_argument("poset")
    p.add_argument("--dot", metavar="DIR", help="write cover graph, root digraph and block tree")
    p.add_argument("--dmax", type=int, default=None)

    p = sub.add_parser("build", help="construct and verify a Boolean realizer")
    p.add_argument("poset")
    p.add_argument("--method", choices=["components", "blocks"], default="blocks")
    p.add_argument("--dmax", type=int, default=4, help="largest inner dimension searched")
    p.add_argument("--out", help="write the realizer JSON here (only if it verifies)")

    p = sub.add_parser("verify", help="check a realizer JSON against a poset file")
    p.add_argument("poset")
    p.add_argument("realizer")

    p = sub.add_parser("gen", help="write a random or standard poset file")
    p.add_argument("kind", choices=["standard", "forest", "pn", "block-glue"])
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, help="number of blocks for block-glue")
    p.add_argument("--max-block", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("bound", help="least number of orders forced by counting height-two posets")
    p.add_argument("n", type=int)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            _emit(analyze(args.poset, args.dot, args.dmax))
            return EXIT_OK
        if args.command == "build":
            R, rep, report = build(args.poset, args.method, args.dmax)
            if rep.ok and args.out:
                write_realizer(R, args.out)
                report["written"] = args.out
            _emit(report)
            return EXIT_OK if rep.ok else EXIT_FAIL
        if args.command == "verify":
            rep, report = verify_files(args.poset, args.realizer)
            _emit(report)
            return EXIT_OK if rep.ok else EXIT_FAIL
        if args.command == "gen":
            P = generate(args.kind, args.n, args.t, args.seed, args.max_block)
            text = format_poset(P, f"{args.kind} seed={args.seed}")
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "bound":
            if args.n < 1:
                raise ValueError("n must be positive")
            print(min_orders_lower_bound(args.n))
            return EXIT_OK
    except (ParseError, OrderError, BudgetError, ValueError, OSError) as exc:
        print(f"booldim: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
