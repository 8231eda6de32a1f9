import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from booldim.errors import BadIntersectionError, CycleError, OrderError, OverlapError
from booldim.poset import (LinearOrder, Poset, antichain, chain, concat, cover_pairs, dual,
                           incomparable_pairs, induced, is_linear_extension, merge_at_cut,
                           poset_from_relations, restrict, standard_example, topological_sort,
                           transitive_closure)

from conftest import posets


def brute_closure(n, rel):
    reach = {(a, b) for a, b in rel}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(reach), repeat=2):
            if b == c and (a, d) not in reach:
                reach.add((a, d))
                changed = True
    return reach


def test_from_relations_closes():
    P = poset_from_relations(4, [(0, 1), (1, 2), (2, 3)])
    assert P == chain(4)
    assert P.less(0, 3) and not P.less(3, 0)


def test_cycle_rejected():
    with pytest.raises(CycleError):
        poset_from_relations(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(CycleError):
        poset_from_relations(2, [(1, 1)])


def test_out_of_range_and_empty():
    with pytest.raises(OrderError):
        poset_from_relations(2, [(0, 2)])
    with pytest.raises(OrderError):
        poset_from_relations(0, [])


def test_constructor_validates():
    with pytest.raises(OrderError):
        Poset([[0, 1, 0], [0, 0, 1], [0, 0, 0]])    # not transitive
    with pytest.raises(CycleError):
        Poset([[0, 1], [1, 0]])


@given(st.integers(1, 7), st.data())
def test_closure_matches_path_search(n, data):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rel = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    P = poset_from_relations(n, rel)
    assert {(int(a), int(b)) for a, b in zip(*np.nonzero(P.lt))} == brute_closure(n, rel)


def test_standard_example_shape():
    S = standard_example(3)
    assert S.n == 6
    assert all(S.less(i, 3 + j) == (i != j) for i in range(3) for j in range(3))
    assert not S.lt[3:].any()
    with pytest.raises(OrderError):
        standard_example(1)


@given(posets())
def test_dual_involution(P):
    assert dual(dual(P)) == P
    assert np.array_equal(dual(P).lt, P.lt.T)


@given(posets())
def test_cover_pairs_generate_and_are_minimal(P):
    cov = cover_pairs(P)
    assert poset_from_relations(P.n, cov) == P
    for a, b in cov:
        assert not any(P.less(a, z) and P.less(z, b) for z in range(P.n))


@given(posets())
def test_incomparable_pairs_symmetric(P):
    inc = set(incomparable_pairs(P))
    assert all((b, a) in inc and P.incomparable(a, b) for a, b in inc)
    assert len(inc) + 2 * P.num_relations() + P.n == P.n * P.n


def test_chain_and_antichain_covers():
    assert cover_pairs(chain(4)) == [(0, 1), (1, 2), (2, 3)]
    assert cover_pairs(antichain(3)) == []


def test_linear_order_rejects_repeats():
    with pytest.raises(OrderError):
        LinearOrder([1, 2, 1])


def test_restrict_and_concat():
    L = LinearOrder([4, 2, 0, 3, 1])
    assert restrict(L, {0, 1, 4}) == (4, 0, 1)
    assert concat([[1, 2], [0]]) == (1, 2, 0)
    assert L.restrict([3, 2]) == (2, 3)
    with pytest.raises(OverlapError):
        concat([[1, 2], [2]])


def test_merge_rule_shape():
    # [A < w < B] with [C < w < D] gives [A < C < w < D < B]
    assert merge_at_cut([1, 2, 9, 3], [5, 9, 6, 7], 9) == (1, 2, 5, 9, 6, 7, 3)
    with pytest.raises(BadIntersectionError):
        merge_at_cut([1, 9], [1, 9], 9)


@given(st.permutations(range(6)), st.permutations(range(5, 10)))
def test_merge_preserves_restrictions(L, Lp):
    w = 5
    M = merge_at_cut(L, Lp, w)
    assert restrict(M, set(L)) == tuple(L)
    assert restrict(M, set(Lp)) == tuple(Lp)


@given(posets())
def test_topological_sort_is_extension(P):
    L = topological_sort(P)
    assert sorted(L) == list(range(P.n))
    assert is_linear_extension(P, L)
    assert not is_linear_extension(P, L.dual()) or P.is_antichain()


def test_topological_sort_extra_cycle():
    with pytest.raises(CycleError):
        topological_sort(chain(2), [(1, 0)])


@given(posets(min_n=2))
def test_induced_restricts(P):
    keep = list(range(0, P.n, 2))
    sub, labels = induced(P, keep)
    assert labels == keep
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            assert sub.less(i, j) == P.less(a, b)


def test_height_and_predicates():
    assert chain(5).height() == 5 and antichain(3).height() == 1
    assert chain(3).is_chain() and antichain(3).is_antichain()
    assert standard_example(2).height() == 2


def test_hash_and_equality():
    assert hash(chain(3)) == hash(poset_from_relations(3, [(0, 1), (1, 2)]))
    assert chain(3) != antichain(3)


def test_warshall_on_cycle_free():
    m = np.zeros((3, 3), dtype=bool)
    m[0, 1] = m[1, 2] = True
    assert transitive_closure(m)[0, 2]
