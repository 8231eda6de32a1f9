import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from booldim.errors import BudgetError, NotForestError, NotIncomparableError, NotReversibleError
from booldim.generators import random_forest_poset, random_poset
from booldim.oracles import (bdim_witness, critical_pairs, exact_bdim_at_most, exact_dimension,
                             find_alternating_cycle, forest_realizer3, is_alternating_cycle,
                             is_realizer, linear_extensions, optimal_realizer, reverse_set)
from booldim.poset import (antichain, chain, incomparable_pairs, is_linear_extension,
                           poset_from_relations, standard_example)
from booldim.realizer import BooleanRealizer, TableTruth, verify

from conftest import forest_posets, posets


def brute_dimension(P):
    exts = list(linear_extensions(P))
    for k in range(1, len(exts) + 1):
        for combo in itertools.combinations(exts, k):
            if is_realizer(P, combo):
                return k


def test_linear_extension_counts():
    assert len(list(linear_extensions(chain(4)))) == 1
    assert len(list(linear_extensions(antichain(4)))) == 24
    assert len(list(linear_extensions(standard_example(2)))) == 6


@given(posets(max_n=6))
def test_linear_extensions_valid_and_distinct(P):
    exts = list(linear_extensions(P))
    assert len(set(exts)) == len(exts)
    assert all(is_linear_extension(P, L) and len(L) == P.n for L in exts)


@given(posets(max_n=6))
def test_critical_pairs_definition(P):
    crit = set(critical_pairs(P))
    for x, y in incomparable_pairs(P):
        down_ok = all(P.less(z, y) for z in range(P.n) if P.less(z, x))
        up_ok = all(P.less(x, z) for z in range(P.n) if P.less(y, z))
        assert ((x, y) in crit) == (down_ok and up_ok)


@given(posets(max_n=5), st.data())
def test_reversibility_matches_extensions(P, data):
    inc = incomparable_pairs(P)
    S = data.draw(st.lists(st.sampled_from(inc), max_size=5, unique=True) if inc else st.just([]))
    exts = list(linear_extensions(P))
    exists = any(all(L.pos[y] < L.pos[x] for x, y in S) for L in exts)
    cyc = find_alternating_cycle(P, S)
    assert (cyc is None) == exists
    if cyc is not None:
        assert is_alternating_cycle(P, cyc)
        with pytest.raises(NotReversibleError) as info:
            reverse_set(P, S)
        assert is_alternating_cycle(P, info.value.certificate)
    else:
        L = reverse_set(P, S)
        assert is_linear_extension(P, L)
        assert all(L.pos[y] < L.pos[x] for x, y in S)


def test_standard_example_cycle():
    S = standard_example(2)
    # (a0, b0) and (a1, b1) form an alternating cycle
    cyc = find_alternating_cycle(S, [(0, 2), (1, 3)])
    assert cyc is not None and is_alternating_cycle(S, cyc)


def test_reverse_set_needs_incomparable():
    with pytest.raises(NotIncomparableError):
        reverse_set(chain(2), [(0, 1)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dimension_standard_examples(n):
    assert exact_dimension(standard_example(n)) == n


def test_dimension_small_cases():
    assert exact_dimension(chain(5)) == 1
    assert exact_dimension(antichain(4)) == 2
    assert exact_dimension(standard_example(4), d_max=3) is None


@given(posets(max_n=6))
def test_dimension_matches_brute_force(P):
    R = optimal_realizer(P)
    assert is_realizer(P, R)
    assert len(R) == brute_dimension(P)


def test_bdim_small_facts():
    assert exact_bdim_at_most(chain(5), 1)
    assert exact_bdim_at_most(antichain(5), 1)
    assert exact_bdim_at_most(chain(1), 1)
    assert not exact_bdim_at_most(poset_from_relations(3, [(0, 1)]), 1)
    assert not exact_bdim_at_most(standard_example(3), 2)
    assert exact_bdim_at_most(standard_example(3), 3)


def test_bdim_guard():
    with pytest.raises(BudgetError):
        exact_bdim_at_most(antichain(7), 2)
    with pytest.raises(BudgetError):
        exact_bdim_at_most(chain(3), 4)


@given(posets(min_n=2, max_n=5), st.integers(1, 3))
def test_bdim_witness_verifies(P, s):
    W = bdim_witness(P, s)
    if W is None:
        return
    table = {}
    for x in range(P.n):
        for y in range(P.n):
            if x != y:
                table[tuple(int(L.pos[x] < L.pos[y]) for L in W)] = int(P.less(x, y))
    assert verify(P, BooleanRealizer(W, TableTruth(table))).ok


def test_forest_small():
    assert len(forest_realizer3(chain(4))) == 1
    R = forest_realizer3(antichain(3))
    assert is_realizer(antichain(3), R) and len(R) <= 3
    with pytest.raises(NotForestError):
        forest_realizer3(standard_example(3))


@given(forest_posets(max_n=40))
def test_forest_realizer(P):
    R = forest_realizer3(P)
    assert 1 <= len(R) <= 3
    assert is_realizer(P, R)


def test_forest_larger():
    P = random_forest_poset(120, random.Random(4), p_new_tree=0.02)
    R = forest_realizer3(P)
    assert len(R) <= 3 and is_realizer(P, R)
