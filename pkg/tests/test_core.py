import itertools
import math
import random

import pytest

from graceful_kit.core import (
    Endofunction,
    automorphism_count,
    automorphism_group,
    automorphisms_brute_force,
    conjugate,
    fixed_point_swaps,
    functional_graph,
    is_functional_tree,
    iterate,
    order,
    reroot,
)
from graceful_kit.enumerate import all_endofunctions, all_rooted_trees, nth_endofunction

from oracles import brute_aut, components, conj, cycles, undirected_edges


def test_parse_and_str_round_trip():
    f = Endofunction.parse("0,0,1,2")
    assert f == Endofunction([0, 0, 1, 2])
    assert str(f) == "0,0,1,2"
    assert Endofunction.parse(" 3 , 0,2,1 ") == (3, 0, 2, 1)


@pytest.mark.parametrize("bad", ["0,4,1,2", "0,-1", "", "a,b", "0,,1"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        Endofunction.parse(bad)


def test_named_constructors():
    assert Endofunction.identity(3) == (0, 1, 2)
    assert Endofunction.constant(4) == (0, 0, 0, 0)
    assert Endofunction.reversal(4) == (3, 2, 1, 0)


@pytest.mark.parametrize(
    "f,k,expected",
    [([0, 0, 1], 2, [0, 0, 0]), ([2, 0, 1, 1], 0, [0, 1, 2, 3]), ([1, 2, 0], 3, [0, 1, 2])],
)
def test_iterate_examples(f, k, expected):
    assert iterate(f, k) == tuple(expected)


def test_iterate_matches_repeated_composition():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 7)
        f = [rng.randrange(n) for _ in range(n)]
        a, b = rng.randint(0, 9), rng.randint(0, 9)
        step = list(range(n))
        for _ in range(a + b):
            step = [f[x] for x in step]
        assert iterate(f, a + b) == tuple(step)
        assert iterate(f, a).compose(iterate(f, b)) == iterate(f, a + b)
        assert iterate(iterate(f, a), b) == iterate(f, a * b)


def test_iterate_rejects_negative():
    with pytest.raises(ValueError):
        iterate([0], -1)


@pytest.mark.parametrize(
    "f,expected", [([0, 0, 1, 2], True), ([0, 1, 2], False), ([1, 0], False), ([0], True)]
)
def test_is_functional_tree_examples(f, expected):
    assert is_functional_tree(f) is expected


@pytest.mark.parametrize("f,expected", [([0] * 5, 1), ([0, 2, 1], 2), ([1, 2, 0, 3], 3)])
def test_order_examples(f, expected):
    assert order(f) == expected


def test_functional_graph_against_pointer_chasing():
    for n in range(1, 6):
        for f in all_endofunctions(n):
            g = functional_graph(f)
            assert sorted(g.cycle_lengths) == cycles(f)
            assert g.component_count == components(f)
            assert sum(g.in_degrees) == n
            assert g.d_f == len(set(f))
            assert len(g.edges) == n
            assert order(f) == math.lcm(*cycles(f))


def test_conjugate_examples():
    assert conjugate([0, 0, 1], [0, 2, 1]) == (0, 2, 0)
    f = Endofunction([2, 0, 1, 1])
    assert conjugate(f, Endofunction.identity(4)) == f
    sigma = Endofunction([3, 1, 0, 2])
    assert conjugate(conjugate(f, sigma), sigma.inverse()) == f


def test_conjugate_matches_oracle_and_preserves_structure():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 7)
        f = [rng.randrange(n) for _ in range(n)]
        sigma = list(range(n))
        rng.shuffle(sigma)
        h = conjugate(f, sigma)
        assert h == conj(f, sigma)
        assert sorted(functional_graph(h).cycle_lengths) == cycles(f)
        assert sorted(functional_graph(h).in_degrees) == sorted(functional_graph(f).in_degrees)
        assert is_functional_tree(h) == is_functional_tree(f)


def test_conjugate_rejects_non_bijection():
    with pytest.raises(ValueError):
        conjugate([0, 0, 1], [0, 0, 1])


def test_automorphism_examples():
    assert len(automorphism_group([0, 0, 0, 0])) == 6
    assert all(p[0] == 0 for p in automorphism_group([0, 0, 0, 0]))
    assert automorphism_group([0, 0, 1, 2]) == [Endofunction.identity(4)]
    assert len(automorphism_group([0, 1, 2])) == 6


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_automorphisms_match_brute_force_on_trees(n):
    for f in all_rooted_trees(n):
        expected = [Endofunction(p) for p in brute_aut(f)] if n <= 6 else automorphisms_brute_force(f)
        assert automorphism_group(f) == expected
        assert automorphism_count(f) == len(expected)


def test_automorphisms_match_brute_force_on_random_endofunctions():
    rng = random.Random(11)
    for n in (6, 7):
        for _ in range(120):
            f = nth_endofunction(n, rng.randrange(n**n))
            assert automorphism_group(f) == automorphisms_brute_force(f)


def test_automorphism_group_is_a_subgroup():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 6)
        f = [rng.randrange(n) for _ in range(n)]
        group = set(automorphism_group(f))
        assert Endofunction.identity(n) in group
        for a, b in itertools.product(group, repeat=2):
            assert a.compose(b) in group
        assert all(a.inverse() in group for a in group)


def test_tree_iterate_becomes_constant():
    for n in range(2, 10):
        k = 2 ** math.ceil(math.log2(n - 1)) if n > 2 else 1
        for f in all_rooted_trees(n):
            assert len(set(iterate(f, k))) == 1


def test_fixed_point_swap_examples():
    assert fixed_point_swaps([0, 0, 1]) == [(0, 0, 1), (1, 1, 1), (1, 2, 2)]
    assert fixed_point_swaps([0, 0]) == [(0, 0), (1, 1)]
    assert fixed_point_swaps([0, 1]) == [(0, 1)]


def test_fixed_point_swaps_against_definition():
    for n in range(1, 5):
        for f in all_endofunctions(n):
            loops = sum(1 for i, v in enumerate(f) if i == v)
            expected = [
                g for g in all_endofunctions(n)
                if undirected_edges(g) == undirected_edges(f)
                and sum(1 for i, v in enumerate(g) if i == v) == loops
            ]
            assert fixed_point_swaps(f) == expected


@pytest.mark.parametrize("n", range(1, 8))
def test_tree_has_one_swap_per_vertex(n):
    for f in all_rooted_trees(n):
        swaps = fixed_point_swaps(f)
        assert len(swaps) == n
        assert set(swaps) == {reroot(f, r) for r in range(n)}
