import itertools
import math

import pytest

from graceful_kit.core import Endofunction, canonical_code, functional_graph, is_functional_tree
from graceful_kit.enumerate import (
    TreeIterator,
    all_endofunctions,
    all_permutations,
    all_rooted_trees,
    cycle_union,
    nth_endofunction,
    nth_permutation,
    parse_range,
    prufer_decode,
    rooted_tree_classes,
)

from oracles import cycles, prufer_encode


def test_rooted_tree_examples():
    assert list(all_rooted_trees(3)) == [(0, 0, 0), (0, 0, 1)]
    assert len(list(all_rooted_trees(4))) == 6
    assert list(all_rooted_trees(1)) == [(0,)]
    with pytest.raises(ValueError):
        all_rooted_trees(0)


@pytest.mark.parametrize("n", range(1, 10))
def test_rooted_trees_count_and_shape(n):
    trees = list(all_rooted_trees(n))
    assert len(trees) == math.factorial(n - 1) == len(TreeIterator(n))
    assert trees == sorted(trees)
    assert len(set(trees)) == len(trees)
    if n <= 8:
        assert all(is_functional_tree(f) for f in trees)
        assert all(f[0] == 0 and all(f[i] < i for i in range(1, n)) for f in trees)


@pytest.mark.parametrize("n", range(1, 8))
def test_tree_iterator_is_index_addressable(n):
    it = TreeIterator(n)
    assert [it[k] for k in range(len(it))] == list(it)
    assert it[-1] == list(it)[-1]
    with pytest.raises(IndexError):
        it[len(it)]


def test_tree_shards_tile_the_stream():
    it = TreeIterator(7)
    pieces = [list(it.shard(parse_range(f"{k}..{k + 97}", len(it)))) for k in range(0, 720, 97)]
    assert list(itertools.chain.from_iterable(pieces)) == list(it)


@pytest.mark.parametrize("n", range(1, 7))
def test_every_functional_tree_is_conjugate_to_an_emission(n):
    emitted = {canonical_code(f) for f in all_rooted_trees(n)}
    # independent filter: the (n-1)-th iterate has a single image point
    for f in all_endofunctions(n):
        g = list(range(n))
        for _ in range(max(n - 1, 1)):
            g = [f[x] for x in g]
        if len(set(g)) == 1:
            assert canonical_code(f) in emitted
    assert len(rooted_tree_classes(n)) == len(emitted)


def test_rooted_tree_class_counts():
    # rooted unlabeled trees, OEIS A000081
    assert [len(rooted_tree_classes(n)) for n in range(1, 9)] == [1, 1, 2, 4, 9, 20, 48, 115]


def test_endofunction_and_permutation_streams():
    assert len(list(all_endofunctions(2))) == 4
    assert len(list(all_permutations(3))) == 6
    assert list(all_permutations(1)) == [(0,)]
    for n in range(1, 6):
        funcs = list(all_endofunctions(n))
        assert funcs == sorted(set(funcs)) and len(funcs) == n**n
        assert [nth_endofunction(n, k) for k in range(n**n)] == funcs
        perms = list(all_permutations(n))
        assert perms == sorted(set(perms)) and len(perms) == math.factorial(n)
        assert [nth_permutation(n, k) for k in range(len(perms))] == perms


@pytest.mark.parametrize(
    "text,total,expected",
    [("2..5", None, range(2, 5)), ("..3", None, range(0, 3)), ("4..", 10, range(4, 10)),
     ("0..100", 6, range(0, 6))],
)
def test_parse_range(text, total, expected):
    assert parse_range(text, total) == expected


@pytest.mark.parametrize("text", ["3", "a..b", "5..2", "-1..3", "4.."])
def test_parse_range_rejects(text):
    with pytest.raises(ValueError):
        parse_range(text)


def test_prufer_examples():
    assert prufer_decode([], root=0, n=2) == (0, 0)
    assert prufer_decode([0, 0], root=0) == (0, 0, 0, 0)
    assert prufer_decode([1, 2], root=0) == (0, 0, 1, 2)
    with pytest.raises(ValueError):
        prufer_decode([0, 4], root=0)
    with pytest.raises(ValueError):
        prufer_decode([0], root=0, n=4)


@pytest.mark.parametrize("n", range(2, 8))
def test_prufer_round_trip(n):
    for seq in itertools.product(range(n), repeat=n - 2):
        for root in (0, n - 1):
            f = prufer_decode(list(seq), root=root)
            assert is_functional_tree(f) and f[root] == root
            assert prufer_encode(f) == list(seq)


def test_cycle_union_examples():
    f = cycle_union([1, 4, 4], n=9)
    assert f == (0, 2, 3, 4, 1, 6, 7, 8, 5)
    assert cycles(f) == [1, 4, 4]
    assert cycle_union([5]) == (1, 2, 3, 4, 0)
    assert cycle_union([1, 1, 1]) == Endofunction.identity(3)
    with pytest.raises(ValueError):
        cycle_union([2, 2], n=5)
    assert sorted(functional_graph(cycle_union([3, 1, 2])).cycle_lengths) == [1, 2, 3]
