"""Subtractive edge labels, graceful labeling search and label-count bounds.

A vertex labeling is a bijection ``sigma``; the relabeled graph is the
conjugate ``sigma f sigma^(-1)`` whose edge ``sigma(i) -> sigma(f(i))``
carries the label ``|sigma(f(i)) - sigma(i)|``.  The graph is gracefully
labeled when these n labels are exactly Z_n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .core import Endofunction, as_endofunction, conjugate

EXHAUSTIVE_LIMIT = 7


@dataclass(frozen=True)
class LabelProfile:
    labels: tuple[int, ...]

    @property
    def distinct_count(self) -> int:
        return len(set(self.labels))

    @property
    def is_graceful(self) -> bool:
        return self.distinct_count == len(self.labels)


def label_profile(f: Sequence[int]) -> LabelProfile:
    f = as_endofunction(f)
    return LabelProfile(tuple(abs(v - i) for i, v in enumerate(f)))


def is_gracefully_labeled(f: Sequence[int]) -> bool:
    return label_profile(f).is_graceful


def relabeled_distinct_count(f: Sequence[int], sigma: Sequence[int]) -> int:
    """Distinct edge labels of sigma f sigma^(-1), without building it."""
    return len({abs(sigma[v] - sigma[i]) for i, v in enumerate(f)})


def graceful_obstruction(f: Sequence[int]) -> str | None:
    """A reason no relabeling of f can be graceful, or None.

    Graceful forces exactly one loop (the only label-0 edge) and no
    2-cycle (its two edges would share a label).
    """
    loops = sum(1 for i, v in enumerate(f) if v == i)
    if loops != 1:
        return f"{loops} loops"
    for i, v in enumerate(f):
        if v != i and f[v] == i:
            return f"2-cycle ({i} {v})"
    return None


def _edges_by_completion(f: Sequence[int]) -> list[list[tuple[int, int]]]:
    # edges (u, f(u)) grouped by the larger endpoint: they are fully labeled
    # once vertices 0..max(u, f(u)) are assigned
    n = len(f)
    groups: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v in enumerate(f):
        groups[max(u, v)].append((u, v))
    return groups


def iter_graceful_labelings(f: Sequence[int]) -> Iterator[Endofunction]:
    """Every sigma making sigma f sigma^(-1) graceful, in lexicographic order."""
    f = as_endofunction(f)
    if graceful_obstruction(f):
        return
    n = len(f)
    groups = _edges_by_completion(f)
    sigma = [-1] * n
    used_vertex_label = [False] * n
    used_edge_label = [False] * n

    def rec(i: int) -> Iterator[Endofunction]:
        if i == n:
            yield Endofunction._trusted(tuple(sigma))
            return
        for lab in range(n):
            if used_vertex_label[lab]:
                continue
            sigma[i] = lab
            taken = []
            ok = True
            for u, v in groups[i]:
                e = abs(sigma[u] - sigma[v])
                if used_edge_label[e] or e in taken:
                    ok = False
                    break
                taken.append(e)
            if ok:
                used_vertex_label[lab] = True
                for e in taken:
                    used_edge_label[e] = True
                yield from rec(i + 1)
                for e in taken:
                    used_edge_label[e] = False
                used_vertex_label[lab] = False
        sigma[i] = -1

    yield from rec(0)


def find_graceful_labeling(f: Sequence[int]) -> Endofunction | None:
    """Lexicographically least sigma with sigma f sigma^(-1) graceful."""
    return next(iter_graceful_labelings(f), None)


def search_graceful_labeling(f: Sequence[int]) -> Endofunction | None:
    """Find some graceful relabeling quickly, or None.

    Edge labels are placed from n-1 downwards; the endpoints of each edge
    label are chosen among label pairs (a, a+k), so the long edges, which
    have the fewest placements, are fixed first.  Deterministic but not
    necessarily the lexicographically least answer.
    """
    f = as_endofunction(f)
    if graceful_obstruction(f):
        return None
    n = len(f)
    if n == 1:
        return Endofunction([0])
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in enumerate(f):
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    for a in adj:
        a.sort()
    edges = sorted({(min(u, v), max(u, v)) for u, v in enumerate(f) if u != v})

    lab = [-1] * n
    vert = [-1] * n
    used = [False] * n  # edge labels
    used[0] = True

    def assign(v: int, label: int, undo: list) -> bool:
        # label vertex v; record every edge label it completes
        lab[v] = label
        vert[label] = v
        undo.append(("v", v))
        for u in adj[v]:
            if lab[u] != -1:
                e = abs(lab[u] - label)
                if used[e]:
                    return False
                used[e] = True
                undo.append(("e", e))
        return True

    def rollback(undo: list) -> None:
        for kind, x in reversed(undo):
            if kind == "v":
                vert[lab[x]] = -1
                lab[x] = -1
            else:
                used[x] = False

    def rec(k: int) -> bool:
        while k > 0 and used[k]:
            k -= 1
        if k == 0:
            return True
        for a in range(n - k):
            b = a + k
            va, vb = vert[a], vert[b]
            if va != -1 and vb != -1:
                continue
            if va != -1 or vb != -1:
                fixed, free_label = (va, b) if va != -1 else (vb, a)
                for u in adj[fixed]:
                    if lab[u] != -1:
                        continue
                    undo: list = []
                    if assign(u, free_label, undo) and rec(k - 1):
                        return True
                    rollback(undo)
                continue
            for u, w in edges:
                if lab[u] != -1 or lab[w] != -1:
                    continue
                for x, y in ((u, w), (w, u)):
                    undo = []
                    if assign(x, a, undo) and assign(y, b, undo) and rec(k - 1):
                        return True
                    rollback(undo)
        return False

    if not rec(n - 1):
        return None
    free = iter(label for label in range(n) if vert[label] == -1)
    for v in range(n):
        if lab[v] == -1:
            lab[v] = next(free)
    return Endofunction(lab)


def has_graceful_labeling(f: Sequence[int]) -> bool:
    return search_graceful_labeling(f) is not None


def grl_representatives(f: Sequence[int]) -> dict[Endofunction, Endofunction]:
    """Gracefully labeled conjugates of f, each mapped to the least sigma
    (the least member of its left coset of Aut(G_f)) producing it."""
    f = as_endofunction(f)
    reps: dict[Endofunction, Endofunction] = {}
    for sigma in iter_graceful_labelings(f):
        reps.setdefault(conjugate(f, sigma), sigma)
    return dict(sorted(reps.items()))


def grl(f: Sequence[int]) -> list[Endofunction]:
    """Distinct gracefully labeled graphs isomorphic to G_f, sorted."""
    return list(grl_representatives(f))


# ---------------------------------------------------------------------------
# distinct-label extremes over S_n

@lru_cache(maxsize=None)
def _permutation_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def distinct_counts(f: Sequence[int]) -> np.ndarray:
    """Distinct label count of sigma f sigma^(-1) for every sigma in S_n,
    in lexicographic order of sigma."""
    f = np.asarray(f, dtype=np.int64)
    perms = _permutation_table(len(f))
    labels = np.abs(perms[:, f] - perms)
    bits = np.bitwise_or.reduce(np.left_shift(1, labels), axis=1)
    return np.bitwise_count(bits.astype(np.uint64)).astype(np.int64)


def _check_size(f: Sequence[int], branch_and_bound: bool) -> bool:
    if len(f) <= EXHAUSTIVE_LIMIT:
        return False
    if not branch_and_bound:
        raise ValueError(
            f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}; "
            "pass branch_and_bound=True for larger n"
        )
    return True


def max_distinct_labels(f: Sequence[int], branch_and_bound: bool = False) -> int:
    f = as_endofunction(f)
    if _check_size(f, branch_and_bound):
        return _branch_and_bound(f, maximize=True)
    return int(distinct_counts(f).max())


def min_distinct_labels(f: Sequence[int], branch_and_bound: bool = False) -> int:
    f = as_endofunction(f)
    if _check_size(f, branch_and_bound):
        return _branch_and_bound(f, maximize=False)
    return int(distinct_counts(f).min())


def _branch_and_bound(f: Endofunction, maximize: bool) -> int:
    n = len(f)
    loops = len(f.fixed_points())
    if maximize:
        cap = n - max(loops - 1, 0)
        if graceful_obstruction(f) is None and has_graceful_labeling(f):
            return n
        best = relabeled_distinct_count(f, greedy_max_labeling(f))
    else:
        cap = 1
        best = relabeled_distinct_count(f, greedy_min_labeling(f))
    if best == cap:
        return best

    groups = _edges_by_completion(f)
    remaining_after = [sum(len(g) for g in groups[i + 1:]) for i in range(n)]
    sigma = [-1] * n
    used = [False] * n
    counts = [0] * n
    state = {"best": best, "distinct": 0}

    def rec(i: int) -> bool:
        if i == n:
            d = state["distinct"]
            if (d > state["best"]) if maximize else (d < state["best"]):
                state["best"] = d
            return state["best"] == cap
        for lab in range(n):
            if used[lab]:
                continue
            sigma[i] = lab
            used[lab] = True
            added = []
            for u, v in groups[i]:
                e = abs(sigma[u] - sigma[v])
                counts[e] += 1
                if counts[e] == 1:
                    state["distinct"] += 1
                added.append(e)
            d = state["distinct"]
            if maximize:
                promising = min(d + remaining_after[i], cap) > state["best"]
            else:
                promising = d < state["best"]
            if promising and rec(i + 1):
                return True
            for e in added:
                counts[e] -= 1
                if counts[e] == 0:
                    state["distinct"] -= 1
            used[lab] = False
        sigma[i] = -1
        return False

    rec(0)
    return state["best"]


# ---------------------------------------------------------------------------
# path covers

@dataclass(frozen=True)
class PathDeletionStats:
    """Deletion counts turning G_f into a spanning union of disjoint paths.

    ``rho`` counts non-loop deletions when loops may stay; ``delta`` must
    also get rid of the loops, and loops can only go by deleting them, so
    ``delta = rho + loops``.
    """

    rho: int
    delta: int
    loops: int
    deleted: tuple[int, ...]  # tails of one optimal set of non-loop deletions


def _is_path_forest(n: int, edges: list[tuple[int, int]]) -> bool:
    degree = [0] * n
    seen = set()
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            return False
        seen.add(key)
        degree[u] += 1
        degree[v] += 1
        if degree[u] > 2 or degree[v] > 2:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def path_deletion_stats(f: Sequence[int]) -> PathDeletionStats:
    """Exact rho and delta by increasing-size search over deletion sets."""
    f = as_endofunction(f)
    n = len(f)
    tails = [i for i, v in enumerate(f) if v != i]
    loops = n - len(tails)
    for size in range(len(tails) + 1):
        for removed in itertools.combinations(tails, size):
            gone = set(removed)
            kept = [(i, f[i]) for i in tails if i not in gone]
            if _is_path_forest(n, kept):
                return PathDeletionStats(size, size + loops, loops, removed)
    raise AssertionError("deleting every non-loop edge always leaves paths")


def _path_sequence(f: Endofunction, deleted: Sequence[int]) -> list[int]:
    n = len(f)
    gone = set(deleted)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, v in enumerate(f):
        if v != i and i not in gone:
            adj[i].append(v)
            adj[v].append(i)
    seen = [False] * n
    seq: list[int] = []
    for start in range(n):
        if seen[start] or len(adj[start]) > 1:
            continue
        prev, v = -1, start
        while True:
            seen[v] = True
            seq.append(v)
            nxt = [u for u in adj[v] if u != prev and not seen[u]]
            if not nxt:
                break
            prev, v = v, nxt[0]
    if len(seq) != n:
        raise AssertionError("remaining edges do not form disjoint paths")
    return seq


def greedy_min_labeling(f: Sequence[int]) -> Endofunction:
    """Label consecutively along an optimal path cover: every kept path
    edge gets label 1."""
    f = as_endofunction(f)
    seq = _path_sequence(f, path_deletion_stats(f).deleted)
    sigma = [0] * len(f)
    for pos, v in enumerate(seq):
        sigma[v] = pos
    return Endofunction(sigma)


def greedy_max_labeling(f: Sequence[int]) -> Endofunction:
    """Label along an optimal path cover alternating between the smallest
    and largest unused label, so kept path edges get distinct labels."""
    f = as_endofunction(f)
    n = len(f)
    seq = _path_sequence(f, path_deletion_stats(f).deleted)
    sigma = [0] * n
    for pos, v in enumerate(seq):
        sigma[v] = pos // 2 if pos % 2 == 0 else n - 1 - pos // 2
    return Endofunction(sigma)


def labeling_report(f: Sequence[int]) -> dict:
    """JSON-ready summary of the labeling questions for one function."""
    f = as_endofunction(f)
    sigma = find_graceful_labeling(f)
    big = len(f) > EXHAUSTIVE_LIMIT
    return {
        "f": str(f),
        "graceful": sigma is not None,
        "sigma": str(sigma) if sigma is not None else None,
        "grl_size": len(grl(f)),
        "min_labels": min_distinct_labels(f, branch_and_bound=big),
        "max_labels": max_distinct_labels(f, branch_and_bound=big),
    }
