"""Endofunctions of Z_n and their functional directed graphs.

An endofunction ``f`` is stored as its dense image tuple ``(f(0), ..., f(n-1))``.
Its functional graph has the directed edges ``i -> f(i)``; every connected
component contains exactly one cycle, which may be a loop.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class Endofunction(tuple):
    """A total map Z_n -> Z_n given by its image sequence.

    Equality and hashing are those of the underlying tuple, so two
    endofunctions are equal exactly when they agree pointwise.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> "Endofunction":
        images = tuple(int(v) for v in images)
        n = len(images)
        if n == 0:
            raise ValueError("an endofunction needs a non-empty domain")
        for i, v in enumerate(images):
            if not 0 <= v < n:
                raise ValueError(f"image {v} of {i} lies outside Z_{n}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Endofunction":
        # skips validation; callers guarantee 0 <= v < len(images)
        return tuple.__new__(cls, images)

    @classmethod
    def parse(cls, text: str) -> "Endofunction":
        """Parse the interchange format ``"0,0,1,2"``."""
        parts = [p.strip() for p in text.strip().split(",")]
        if not parts or any(p == "" for p in parts):
            raise ValueError(f"malformed function string {text!r}")
        try:
            values = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"malformed function string {text!r}") from exc
        return cls(values)

    @classmethod
    def identity(cls, n: int) -> "Endofunction":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "Endofunction":
        return cls([value] * n)

    @classmethod
    def reversal(cls, n: int) -> "Endofunction":
        """The involution i -> (n-1) - i."""
        return cls._trusted(tuple(range(n - 1, -1, -1)))

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)

    def __repr__(self) -> str:
        return f"Endofunction([{self}])"

    def compose(self, other: Sequence[int]) -> "Endofunction":
        """Return ``self o other``, i.e. ``i -> self(other(i))``."""
        if len(other) != len(self):
            raise ValueError("domain sizes differ")
        return Endofunction._trusted(tuple(self[v] for v in other))

    def is_bijection(self) -> bool:
        return len(set(self)) == len(self)

    def inverse(self) -> "Endofunction":
        if not self.is_bijection():
            raise ValueError(f"{self} is not a bijection")
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v] = i
        return Endofunction._trusted(tuple(inv))

    def fixed_points(self) -> list[int]:
        return [i for i, v in enumerate(self) if v == i]

    def image_size(self) -> int:
        return len(set(self))


def as_endofunction(f: Sequence[int] | str) -> Endofunction:
    if isinstance(f, Endofunction):
        return f
    if isinstance(f, str):
        return Endofunction.parse(f)
    return Endofunction(f)


def iterate(f: Sequence[int], k: int) -> Endofunction:
    """The k-th iterate f^(k), with f^(0) the identity."""
    if k < 0:
        raise ValueError("k must be non-negative")
    f = as_endofunction(f)
    result = Endofunction.identity(len(f))
    base = f
    while k:
        if k & 1:
            result = result.compose(base)
        base = base.compose(base)
        k >>= 1
    return result


def is_functional_tree(f: Sequence[int]) -> bool:
    """True when f has a unique fixed point attracting every vertex."""
    f = as_endofunction(f)
    return len(set(iterate(f, len(f) - 1))) == 1


@dataclass(frozen=True)
class FunctionalGraph:
    owner: Endofunction
    in_degrees: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    @property
    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    @property
    def component_count(self) -> int:
        return len(self.cycles)

    @property
    def d_f(self) -> int:
        """Number of vertices with in-degree at least one."""
        return sum(1 for d in self.in_degrees if d > 0)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, v) for i, v in enumerate(self.owner))

    def cyclic_vertices(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c)


def functional_graph(f: Sequence[int]) -> FunctionalGraph:
    """Trace cycles by pointer chasing; components are numbered by their
    smallest vertex in increasing order."""
    f = as_endofunction(f)
    n = len(f)
    in_deg = [0] * n
    for v in f:
        in_deg[v] += 1

    state = [0] * n  # 0 unseen, 1 on current walk, 2 finished
    cycle_id = [-1] * n
    cycles: list[tuple[int, ...]] = []
    for start in range(n):
        if state[start]:
            continue
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = f[v]
        if state[v] == 1:
            pos = walk.index(v)
            cyc = tuple(walk[pos:])
            for u in cyc:
                cycle_id[u] = len(cycles)
            cycles.append(cyc)
            head = cycle_id[v]
        else:
            head = cycle_id[v]
        for u in walk:
            state[u] = 2
            cycle_id[u] = head

    # renumber components by smallest contained vertex
    smallest: dict[int, int] = {}
    for v in range(n):
        smallest.setdefault(cycle_id[v], v)
    order = sorted(smallest, key=smallest.get)
    rank = {cid: r for r, cid in enumerate(order)}
    ordered_cycles = tuple(_rotate_min(cycles[cid]) for cid in order)
    return FunctionalGraph(
        owner=f,
        in_degrees=tuple(in_deg),
        cycles=ordered_cycles,
        component_of=tuple(rank[cycle_id[v]] for v in range(n)),
    )


def _rotate_min(cycle: tuple[int, ...]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def order(f: Sequence[int]) -> int:
    """LCM of the cycle lengths of G_f."""
    return math.lcm(*functional_graph(f).cycle_lengths)


def conjugate(f: Sequence[int], sigma: Sequence[int]) -> Endofunction:
    """Return sigma o f o sigma^(-1)."""
    f = as_endofunction(f)
    sigma = as_endofunction(sigma)
    if len(sigma) != len(f):
        raise ValueError("domain sizes differ")
    if not sigma.is_bijection():
        raise ValueError(f"{sigma} is not a bijection")
    h = [0] * len(f)
    for i, v in enumerate(f):
        h[sigma[i]] = sigma[v]
    return Endofunction._trusted(tuple(h))


def _conjugate_unchecked(f: Sequence[int], sigma: Sequence[int]) -> tuple:
    h = [0] * len(f)
    for i, v in enumerate(f):
        h[sigma[i]] = sigma[v]
    return tuple(h)


# ---------------------------------------------------------------------------
# rooted tree codes

def children_lists(f: Sequence[int]) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in f]
    for i, v in enumerate(f):
        if v != i:
            kids[v].append(i)
    return kids


def tree_root(f: Sequence[int]) -> int:
    roots = [i for i, v in enumerate(f) if v == i]
    if len(roots) != 1 or not is_functional_tree(f):
        raise ValueError(f"{f} is not a functional tree")
    return roots[0]


def rooted_codes(f: Sequence[int]) -> list[str]:
    """Children-sorted parenthesis code of the subtree at every vertex."""
    kids = children_lists(f)
    root = tree_root(f)
    codes: list[str] = [""] * len(f)
    order_ = _postorder(kids, root)
    for v in order_:
        codes[v] = "(" + "".join(sorted(codes[c] for c in kids[v])) + ")"
    return codes


def _postorder(kids: list[list[int]], root: int) -> list[int]:
    out: list[int] = []
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append(v)
            continue
        stack.append((v, True))
        for c in kids[v]:
            stack.append((c, False))
    return out


def canonical_code(f: Sequence[int]) -> str:
    """Isomorphism invariant of a functional tree (as a rooted tree)."""
    f = as_endofunction(f)
    return rooted_codes(f)[tree_root(f)]


def undirected_adjacency(f: Sequence[int]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in f]
    for i, v in enumerate(f):
        if v != i:
            adj[i].add(v)
            adj[v].add(i)
    return adj


def reroot(f: Sequence[int], root: int) -> Endofunction:
    """Orient the underlying tree of f towards ``root`` and put the loop there."""
    f = as_endofunction(f)
    tree_root(f)
    adj = undirected_adjacency(f)
    g = [-1] * len(f)
    g[root] = root
    stack = [root]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if g[u] == -1:
                g[u] = v
                stack.append(u)
    return Endofunction(g)


def unrooted_code(f: Sequence[int]) -> str:
    """Isomorphism invariant of the underlying undirected tree of f."""
    f = as_endofunction(f)
    tree_root(f)
    adj = undirected_adjacency(f)
    n = len(f)
    if n <= 2:
        return "(" * n + ")" * n
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in adj[v]:
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt
    return min(canonical_code(reroot(f, c)) for c in layer)


# ---------------------------------------------------------------------------
# automorphisms

def automorphism_group(f: Sequence[int]) -> list[Endofunction]:
    """All bijections commuting with f, in lexicographic image order."""
    f = as_endofunction(f)
    n = len(f)
    if n <= 5:
        return automorphisms_brute_force(f)
    if is_functional_tree(f):
        return sorted(_tree_automorphisms(f))
    return _automorphisms_backtrack(f)


def automorphism_count(f: Sequence[int]) -> int:
    """|Aut(G_f)|; for trees, the product over vertices of the factorials of
    the multiplicities of isomorphic child subtrees."""
    f = as_endofunction(f)
    if not is_functional_tree(f):
        return len(automorphism_group(f))
    codes = rooted_codes(f)
    total = 1
    for kids in children_lists(f):
        for m in Counter(codes[c] for c in kids).values():
            total *= math.factorial(m)
    return total


def automorphisms_brute_force(f: Sequence[int]) -> list[Endofunction]:
    f = as_endofunction(f)
    target = tuple(f)
    out = []
    for p in itertools.permutations(range(len(f))):
        if _conjugate_unchecked(f, p) == target:
            out.append(Endofunction._trusted(p))
    return out


def _tree_automorphisms(f: Endofunction) -> Iterator[Endofunction]:
    kids = children_lists(f)
    codes = rooted_codes(f)
    root = tree_root(f)
    n = len(f)

    def extend(pairs: list[tuple[int, int]], mapping: dict[int, int]) -> Iterator[dict[int, int]]:
        # pairs: (u, v) with u -> v still to be expanded into subtrees
        if not pairs:
            yield mapping
            return
        (u, v), rest = pairs[0], pairs[1:]
        src = sorted(kids[u], key=lambda c: codes[c])
        dst_groups: dict[str, list[int]] = {}
        for c in kids[v]:
            dst_groups.setdefault(codes[c], []).append(c)
        src_groups: dict[str, list[int]] = {}
        for c in src:
            src_groups.setdefault(codes[c], []).append(c)
        keys = sorted(src_groups)
        choices = [itertools.permutations(dst_groups[k]) for k in keys]
        for combo in itertools.product(*[list(c) for c in choices]):
            new_pairs = list(rest)
            m = dict(mapping)
            for k, perm in zip(keys, combo):
                for a, b in zip(src_groups[k], perm):
                    m[a] = b
                    new_pairs.append((a, b))
            yield from extend(new_pairs, m)

    for mapping in extend([(root, root)], {root: root}):
        yield Endofunction._trusted(tuple(mapping[i] for i in range(n)))


def _automorphisms_backtrack(f: Endofunction) -> list[Endofunction]:
    n = len(f)
    in_deg = functional_graph(f).in_degrees
    sigma = [-1] * n
    used = [False] * n
    out: list[Endofunction] = []

    def consistent(i: int) -> bool:
        # sigma(f(x)) = f(sigma(x)) for every assigned x touching i
        for x in range(n):
            if sigma[x] == -1:
                continue
            fx = f[x]
            if sigma[fx] != -1 and sigma[fx] != f[sigma[x]]:
                return False
        return True

    def rec(i: int) -> None:
        if i == n:
            out.append(Endofunction._trusted(tuple(sigma)))
            return
        for v in range(n):
            if used[v] or in_deg[v] != in_deg[i]:
                continue
            sigma[i] = v
            used[v] = True
            if consistent(i):
                rec(i + 1)
            used[v] = False
            sigma[i] = -1

    rec(0)
    return out


# ---------------------------------------------------------------------------
# fixed point swaps

def symmetrized_edges(f: Sequence[int]) -> frozenset[frozenset[int]]:
    return frozenset(frozenset((i, v)) for i, v in enumerate(f) if v != i)


def fixed_point_swaps(f: Sequence[int]) -> list[Endofunction]:
    """All g whose symmetrized non-loop edge set equals that of f and which
    carry the same number of loops, in lexicographic order."""
    f = as_endofunction(f)
    target = symmetrized_edges(f)
    loops = len(f.fixed_points())
    adj = undirected_adjacency(f)
    options = [[i] + sorted(adj[i]) for i in range(len(f))]
    out = []
    for g in itertools.product(*options):
        if sum(1 for i, v in enumerate(g) if i == v) != loops:
            continue
        if symmetrized_edges(g) == target:
            out.append(Endofunction._trusted(tuple(g)))
    return sorted(out)
