"""Adjacency matrices of endofunctions and pseudoinverse sets.

Row i of A_f has its single 1 in column f(i), so A_g A_f = A_(f o g) and
the representation is an antihomomorphism.  For the pseudoinverse tests
the l0 distance ||A_(g o f) - I|| equals twice the number of i with
g(f(i)) != i, which is what the solvers work with.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import Endofunction, as_endofunction, functional_graph

EXHAUSTIVE_LIMIT = 6
SOLVER_LIMIT = 9
MAX_SOLUTIONS = 2_000_000


@dataclass(frozen=True)
class AdjacencyMatrix:
    """0/1 matrix with one 1 per row, stored as its image array."""

    images: Endofunction

    @property
    def n(self) -> int:
        return len(self.images)

    def dense(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        m[np.arange(self.n), list(self.images)] = 1
        return m

    def __matmul__(self, other: "AdjacencyMatrix") -> "AdjacencyMatrix":
        # (A_g A_f)[i, j] = [f(g(i)) = j]
        return AdjacencyMatrix(other.images.compose(self.images))

    def l0_distance_to_identity(self) -> int:
        return 2 * sum(1 for i, v in enumerate(self.images) if v != i)


def to_matrix(f: Sequence[int]) -> AdjacencyMatrix:
    return AdjacencyMatrix(as_endofunction(f))


def antihom_check(f: Sequence[int], g: Sequence[int]) -> bool:
    """A_(f o g) = A_g A_f, checked both by dense integer product and by composition."""
    f, g = as_endofunction(f), as_endofunction(g)
    if len(f) != len(g):
        raise ValueError("f and g act on different sets")
    lhs = to_matrix(f.compose(g))
    dense_ok = np.array_equal(lhs.dense(), to_matrix(g).dense() @ to_matrix(f).dense())
    return dense_ok and lhs == to_matrix(g) @ to_matrix(f)


def defect(g: Sequence[int], f: Sequence[int]) -> int:
    """#{i : g(f(i)) != i}; half the l0 distance of A_(g o f) from I."""
    return sum(1 for i, v in enumerate(f) if g[v] != i)


def is_k_pseudoinverse(g: Sequence[int], f: Sequence[int], k: int) -> bool:
    return 2 * defect(g, f) <= 2 * k


def _exhaustive(f: Endofunction, k: int) -> set[Endofunction]:
    n = len(f)
    grid = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64).reshape(-1, n)
    misses = np.count_nonzero(grid[:, list(f)] != np.arange(n), axis=1)
    return {Endofunction._trusted(tuple(int(v) for v in row)) for row in grid[misses <= k]}


def _preimages(f: Endofunction) -> dict[int, list[int]]:
    pre: dict[int, list[int]] = {}
    for i, v in enumerate(f):
        pre.setdefault(v, []).append(i)
    return pre


def k_pseudoinverse_count(f: Sequence[int], k: int) -> int:
    """|f^(+k)| by counting the row-constraint solutions without listing them."""
    f = as_endofunction(f)
    n = len(f)
    pre = _preimages(f)
    budget = k - (n - len(pre))
    if budget < 0:
        return 0
    # polynomial in a marker for "image value sends outside its preimages"
    poly = [1]
    for v, p in pre.items():
        hit, miss = len(p), n - len(p)
        nxt = [0] * (len(poly) + 1)
        for e, c in enumerate(poly):
            nxt[e] += c * hit
            nxt[e + 1] += c * miss
        poly = nxt
    free = n ** (n - len(pre))
    return free * sum(poly[: budget + 1])


def _row_solver(f: Endofunction, k: int) -> Iterator[Endofunction]:
    n = len(f)
    pre = _preimages(f)
    budget = k - (n - len(pre))
    if budget < 0:
        return
    image = sorted(pre)
    outside = [v for v in range(n) if v not in pre]
    g = [0] * n

    def rec(pos: int, left: int) -> Iterator[Endofunction]:
        if pos == len(image):
            for values in itertools.product(range(n), repeat=len(outside)):
                for v, x in zip(outside, values):
                    g[v] = x
                yield Endofunction._trusted(tuple(g))
            return
        v = image[pos]
        for x in pre[v]:
            g[v] = x
            yield from rec(pos + 1, left)
        if left:
            hits = set(pre[v])
            for x in range(n):
                if x not in hits:
                    g[v] = x
                    yield from rec(pos + 1, left - 1)

    yield from rec(0, budget)


def k_pseudoinverse(f: Sequence[int], k: int, method: str = "auto") -> set[Endofunction]:
    """All g with ||A_(g o f) - I||_0 <= 2k.

    ``method`` is "exhaustive" (all n^n candidates, n <= 6), "solver"
    (row constraints, n <= 9) or "auto".
    """
    f = as_endofunction(f)
    n = len(f)
    if k < 0:
        raise ValueError("k must be non-negative")
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "solver"
    if method == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT}")
        return _exhaustive(f, k)
    if method != "solver":
        raise ValueError(f"unknown method {method!r}")
    if n > SOLVER_LIMIT:
        raise ValueError(f"solver is limited to n <= {SOLVER_LIMIT}")
    size = k_pseudoinverse_count(f, k)
    if size > MAX_SOLUTIONS:
        raise ValueError(f"|f^(+{k})| = {size} is too large to list")
    return set(_row_solver(f, k))


def canonical_pseudoinverse(f: Sequence[int]) -> set[Endofunction]:
    """Permutations in f^(+(n - d_f)), found by scanning S_n."""
    f = as_endofunction(f)
    n = len(f)
    k = n - functional_graph(f).d_f
    out = set()
    for p in itertools.permutations(range(n)):
        if defect(p, f) <= k:
            out.add(Endofunction._trusted(p))
    return out


def pseudoinverse_monotonicity_check(f: Sequence[int], a: int, b: int) -> bool:
    if a > b:
        raise ValueError("need a <= b")
    return k_pseudoinverse(f, a) <= k_pseudoinverse(f, b)


# the maps of the worked example on the shift-down function

def shift_down(n: int) -> Endofunction:
    """0 -> 0 and i -> i - 1 otherwise."""
    return Endofunction([0] + list(range(n - 1)))


def shift_family(n: int, t: int, kappa: int) -> Endofunction:
    """g_(n t + kappa): i -> i + 1 (mod n when t = 1) except n-1 -> kappa,
    and 0 -> 0 when t = 0."""
    if t not in (0, 1) or not 0 <= kappa < n:
        raise ValueError("need t in {0, 1} and 0 <= kappa < n")
    images = [(i + 1) % n for i in range(n)]
    if t == 0:
        images[0] = 0
    images[n - 1] = kappa
    return Endofunction(images)


def shift_down_pseudoinverses(n: int) -> set[Endofunction]:
    return {shift_family(n, t, kappa) for t in (0, 1) for kappa in range(n)}


def reparent_identity_check(q: Sequence[int]) -> bool:
    """q o g o h equals q with n-1 sent to 0, for g the shift-down map and
    every h in its canonical pseudoinverse set."""
    q = as_endofunction(q)
    n = len(q)
    g = shift_down(n)
    target = Endofunction(list(q[:-1]) + [0])
    return all(q.compose(g).compose(h) == target for h in canonical_pseudoinverse(g))

