import itertools
import random

import pytest

from graceful_kit.core import Endofunction
from graceful_kit.decomposition import labeled_tree, ringel_decompose, rotation_coherent
from graceful_kit.enumerate import all_rooted_trees, prufer_decode
from graceful_kit.labeling import find_graceful_labeling, grl_representatives, search_graceful_labeling


def _cover_counts(f, sigma):
    """Independent audit: count how often each chord of K_(2n-1) is hit."""
    n = len(f)
    m = 2 * n - 1
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    labeled = [sigma[f[inv[j]]] for j in range(n)]
    hits = [[0] * m for _ in range(m)]
    for shift in range(m):
        for a, b in enumerate(labeled):
            if a != b:
                u, v = (a + shift) % m, (b + shift) % m
                hits[u][v] += 1
                hits[v][u] += 1
    return hits


def _is_exact_partition(hits):
    m = len(hits)
    return all(hits[u][v] == (0 if u == v else 1) for u in range(m) for v in range(m))


def test_triangle():
    report = ringel_decompose([0, 0], [0, 1])
    assert report.modulus == 3 and len(report.shifts) == 3
    assert report.is_partition and report.edge_count == 3
    assert sorted(e for s in report.shifts for e in s) == [(0, 1), (0, 2), (1, 2)]


def test_path_on_k7():
    report = ringel_decompose([0, 0, 1, 2], [0, 3, 1, 2])
    assert len(report.shifts) == 7 and report.edge_count == 21
    assert report.is_partition and not report.missing and not report.duplicated
    assert all(len(s) == 3 for s in report.shifts)
    assert rotation_coherent(report)
    assert _is_exact_partition(_cover_counts([0, 0, 1, 2], [0, 3, 1, 2]))


def test_random_tree_n8():
    rng = random.Random(17)
    f = prufer_decode([rng.randrange(8) for _ in range(6)], root=0)
    sigma = search_graceful_labeling(f)
    report = ringel_decompose(f, sigma)
    assert report.is_partition and report.edge_count == 15 * 7


@pytest.mark.parametrize("n", range(2, 7))
def test_every_tree_and_every_grl_coset(n):
    for f in all_rooted_trees(n):
        for sigma in grl_representatives(f).values():
            report = ringel_decompose(f, sigma)
            assert report.is_partition
            assert report.edge_count == (2 * n - 1) * (n - 1)
            assert _is_exact_partition(_cover_counts(f, sigma))
            assert rotation_coherent(report)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        ringel_decompose([0, 0, 1, 2], [0, 1, 2, 3])
    with pytest.raises(ValueError):
        ringel_decompose([0, 1], [0, 1])
    with pytest.raises(ValueError):
        ringel_decompose([0, 0, 1], [0, 0, 1])


def test_edge_list_format(tmp_path):
    report = ringel_decompose([0, 0, 1, 2], [0, 3, 1, 2])
    path = tmp_path / "k7.txt"
    report.write(path)
    lines = path.read_text().splitlines()
    assert len(lines) == 7
    parsed = [tuple(map(int, tok.split("-"))) for line in lines for tok in line.split()]
    assert sorted(parsed) == list(itertools.combinations(range(7), 2))


def test_labeled_tree_is_graceful_conjugate():
    f = Endofunction([0, 0, 1, 1])
    sigma = find_graceful_labeling(f)
    h = labeled_tree(f, sigma)
    assert sorted(abs(v - i) for i, v in enumerate(h)) == [0, 1, 2, 3]
