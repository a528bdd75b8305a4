"""Input spaces for the exhaustive sweeps.

Every stream is restartable and index addressable: ``nth_*`` computes the
k-th item directly so that sweeps can be sharded with a ``"k..m"`` range.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import Endofunction, canonical_code


def parse_range(text: str, total: int | None = None) -> range:
    """Parse the shard syntax ``"k..m"`` (items k through m-1).

    Either bound may be omitted: ``"..m"``, ``"k.."``.
    """
    if ".." not in text:
        raise ValueError(f"range {text!r} must look like 'k..m'")
    lo, hi = text.split("..", 1)
    try:
        start = int(lo) if lo.strip() else 0
        if hi.strip():
            stop = int(hi)
        elif total is not None:
            stop = total
        else:
            raise ValueError(f"open range {text!r} needs a known stream length")
    except ValueError as exc:
        raise ValueError(f"malformed range {text!r}") from exc
    if start < 0 or stop < start:
        raise ValueError(f"empty or negative range {text!r}")
    if total is not None:
        stop = min(stop, total)
    return range(start, stop)


@dataclass(frozen=True)
class TreeIterator:
    """Lexicographic stream of parent arrays with p(0)=0 and p(i) < i.

    Each emission is a functional tree rooted at 0; the stream has (n-1)!
    items and covers every isomorphism class of rooted trees.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    def __len__(self) -> int:
        return math.factorial(self.n - 1)

    def __iter__(self) -> Iterator[Endofunction]:
        ranges = [range(i) for i in range(1, self.n)]
        for tail in itertools.product(*ranges):
            yield Endofunction._trusted((0,) + tail)

    def __getitem__(self, k: int) -> Endofunction:
        total = len(self)
        if k < 0:
            k += total
        if not 0 <= k < total:
            raise IndexError(k)
        # mixed radix: digit for position i has radix i, last position fastest
        digits = []
        for radix in range(self.n - 1, 0, -1):
            digits.append(k % radix)
            k //= radix
        return Endofunction._trusted((0,) + tuple(reversed(digits)))

    def shard(self, rng: range) -> Iterator[Endofunction]:
        for k in rng:
            yield self[k]


def all_rooted_trees(n: int) -> TreeIterator:
    return TreeIterator(n)


def rooted_tree_classes(n: int) -> list[Endofunction]:
    """One parent array per isomorphism class of rooted trees, first seen."""
    seen: dict[str, Endofunction] = {}
    for f in all_rooted_trees(n):
        seen.setdefault(canonical_code(f), f)
    return list(seen.values())


def nth_endofunction(n: int, k: int) -> Endofunction:
    digits = []
    for _ in range(n):
        digits.append(k % n)
        k //= n
    return Endofunction._trusted(tuple(reversed(digits)))


def all_endofunctions(n: int) -> Iterator[Endofunction]:
    """The n^n maps Z_n -> Z_n in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    for images in itertools.product(range(n), repeat=n):
        yield Endofunction._trusted(images)


def all_permutations(n: int) -> Iterator[Endofunction]:
    """The n! bijections of Z_n in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    for images in itertools.permutations(range(n)):
        yield Endofunction._trusted(images)


def nth_permutation(n: int, k: int) -> Endofunction:
    pool = list(range(n))
    out = []
    for i in range(n, 0, -1):
        q, k = divmod(k, math.factorial(i - 1))
        out.append(pool.pop(q))
    return Endofunction._trusted(tuple(out))


def prufer_decode(seq: Sequence[int], root: int = 0, n: int | None = None) -> Endofunction:
    """Labeled tree with Prüfer sequence ``seq``, oriented towards ``root``.

    ``n`` defaults to ``len(seq) + 2``.
    """
    if n is None:
        n = len(seq) + 2
    if len(seq) != n - 2:
        raise ValueError(f"a Prüfer sequence for n={n} has length {n - 2}")
    if not 0 <= root < n:
        raise ValueError(f"root {root} outside Z_{n}")
    for v in seq:
        if not 0 <= v < n:
            raise ValueError(f"entry {v} outside Z_{n}")
    if n == 1:
        return Endofunction([0])

    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    adj: list[list[int]] = [[] for _ in range(n)]
    for v in seq:
        leaf = heapq.heappop(leaves)
        adj[leaf].append(v)
        adj[v].append(leaf)
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    adj[u].append(w)
    adj[w].append(u)

    parent = [-1] * n
    parent[root] = root
    stack = [root]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if parent[u] == -1:
                parent[u] = v
                stack.append(u)
    return Endofunction(parent)


def cycle_union(lengths: Sequence[int], n: int | None = None) -> Endofunction:
    """Disjoint directed cycles laid out on consecutive blocks, in the order given.

    ``cycle_union([1, 4, 4])`` puts a loop at 0 and 4-cycles on 1..4 and 5..8.
    """
    total = sum(lengths)
    if any(k <= 0 for k in lengths):
        raise ValueError("cycle lengths must be positive")
    if n is not None and total != n:
        raise ValueError(f"cycle lengths sum to {total}, not {n}")
    images = []
    start = 0
    for k in lengths:
        images.extend(start + (j + 1) % k for j in range(k))
        start += k
    return Endofunction(images)
