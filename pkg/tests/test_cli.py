import json
import random

import networkx as nx
import pytest

from booldim.cli import main
from booldim.decomposition import block_decomposition
from booldim.errors import ParseError
from booldim.generators import block_glued
from booldim.io import format_poset, parse_poset, read_poset, read_realizer, to_dot
from booldim.oracles import forest_realizer3, is_realizer
from booldim.poset import chain, disjoint_sum, standard_example
from booldim.realizer import BooleanRealizer, TableTruth


def write(tmp_path, name, P):
    path = tmp_path / name
    path.write_text(format_poset(P))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_round_trip():
    rng = random.Random(2)
    for _ in range(20):
        P = block_glued(rng.randint(1, 5), 6, rng)
        assert parse_poset(format_poset(P, "note")) == P


def test_parse_comments_and_errors():
    P = parse_poset("# header comment\n\nposet 3\n0 1 # trailing\n1 2\n")
    assert P == chain(3)
    with pytest.raises(ParseError, match="line 2"):
        parse_poset("poset 3\n0 1 2\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_poset("graph 3\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_poset("poset 2\n0 5\n")
    with pytest.raises(ParseError):
        parse_poset("poset 2\n0 1\n1 0\n")
    with pytest.raises(ParseError):
        parse_poset("# nothing\n")


def test_dot_export():
    G = nx.path_graph(3)
    text = to_dot(G)
    assert text.startswith("graph") and "0 -- 1" in text
    assert "->" in to_dot(nx.DiGraph([(0, 1)]))


def test_analyze(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", write(tmp_path, "c.txt", chain(4)),
                       "--dot", tmp_path / "dot")
    rep = json.loads(out)
    assert code == 0 and len(rep["components"]) == 1 and rep["dimension"] == 1
    assert (tmp_path / "dot" / "cover.dot").exists()
    assert (tmp_path / "dot" / "block_tree_0.dot").exists()
    code, out, _ = run(capsys, "analyze", write(tmp_path, "s.txt", standard_example(3)))
    assert json.loads(out)["dimension"] == 3


def test_analyze_bad_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("poset 3\n0 1\nx y\n")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "line 3" in err


def test_build_components_and_blocks(tmp_path, capsys):
    two = write(tmp_path, "two.txt", disjoint_sum([chain(3), chain(2)]))
    code, out, _ = run(capsys, "build", two, "--method", "components", "--out", tmp_path / "r.json")
    assert code == 0 and json.loads(out)["verification"]["ok"]
    code, _, _ = run(capsys, "verify", two, tmp_path / "r.json")
    assert code == 0
    glued = write(tmp_path, "g.txt", block_glued(4, 6, random.Random(3)))
    code, out, _ = run(capsys, "build", glued, "--method", "blocks", "--out", tmp_path / "g.json")
    rep = json.loads(out)
    assert code == 0 and rep["size"] <= rep["bound"]
    code, out, _ = run(capsys, "build", two, "--method", "blocks")
    assert code == 0 and "F0" in json.loads(out)["families"]


def test_build_single_component_is_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "build", write(tmp_path, "c.txt", chain(3)),
                       "--method", "components")
    assert code == 2 and "component" in err


def test_verify_detects_corruption(tmp_path, capsys):
    P = block_glued(3, 5, random.Random(4))
    path = write(tmp_path, "p.txt", P)
    run(capsys, "build", path, "--out", tmp_path / "r.json")
    data = json.loads((tmp_path / "r.json").read_text())
    k = data["layout"][3]["offset"]          # first order of the merged family
    L = data["orders"][k]
    L[0], L[-1] = L[-1], L[0]
    (tmp_path / "bad.json").write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", path, tmp_path / "bad.json")
    assert code == 1 and json.loads(out)["verification"]["errors"]


def test_verify_flags_collision(tmp_path, capsys):
    path = write(tmp_path, "c.txt", chain(3))
    # identical orders give every pair one of two bit strings; force a clash
    R = BooleanRealizer(([0, 1, 2],), TableTruth({(1,): 1, (0,): 1}))
    (tmp_path / "r.json").write_text(json.dumps(R.to_json()))
    code, out, _ = run(capsys, "verify", path, tmp_path / "r.json")
    assert code == 1 and json.loads(out)["verification"]["errors"]
    P = disjoint_sum([chain(2), chain(1)])
    path = write(tmp_path, "d.txt", P)
    R = BooleanRealizer(([0, 1, 2],), TableTruth({(1,): 1}))
    (tmp_path / "r2.json").write_text(json.dumps(R.to_json()))
    code, out, _ = run(capsys, "verify", path, tmp_path / "r2.json")
    assert code == 1 and json.loads(out)["verification"]["collisions"]


def test_gen_kinds(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "standard", "--n", 4)
    assert code == 0 and parse_poset(out) == standard_example(4)
    run(capsys, "gen", "block-glue", "--t", 5, "--seed", 7, "--out", tmp_path / "g.txt")
    assert block_decomposition(read_poset(tmp_path / "g.txt")).t == 5
    run(capsys, "gen", "forest", "--n", 30, "--seed", 1, "--out", tmp_path / "f.txt")
    F = read_poset(tmp_path / "f.txt")
    assert is_realizer(F, forest_realizer3(F))
    code, out, _ = run(capsys, "gen", "pn", "--n", 3, "--seed", 2)
    assert parse_poset(out).height() <= 2
    _, out2, _ = run(capsys, "gen", "pn", "--n", 3, "--seed", 2)
    assert out == out2


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", 1)
    assert code == 0 and out.strip() == "1"
    code, _, _ = run(capsys, "bound", 0)
    assert code == 2


def test_bad_realizer_file(tmp_path, capsys):
    path = write(tmp_path, "c.txt", chain(2))
    (tmp_path / "r.json").write_text("{not json")
    code, _, _ = run(capsys, "verify", path, tmp_path / "r.json")
    assert code == 2
