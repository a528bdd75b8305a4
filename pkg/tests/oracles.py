"""Independent brute-force oracles for the test suite.

Nothing here imports the search or algebra code under test; each oracle
recomputes its answer from definitions with plain itertools.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def labels_under(f, sigma):
    """Edge labels of sigma f sigma^-1, read off as |sigma(f(i)) - sigma(i)|."""
    return [abs(sigma[f[i]] - sigma[i]) for i in range(len(f))]


def conj(f, sigma):
    n = len(f)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(sigma[f[inv[j]]] for j in range(n))


def graceful_sigmas(f):
    n = len(f)
    return [p for p in itertools.permutations(range(n)) if sorted(labels_under(f, p)) == list(range(n))]


def brute_is_graceful(f):
    n = len(f)
    return any(len(set(labels_under(f, p))) == n for p in itertools.permutations(range(n)))


def brute_label_extremes(f):
    counts = [len(set(labels_under(f, p))) for p in itertools.permutations(range(len(f)))]
    return min(counts), max(counts)


def brute_grl(f):
    return sorted({conj(f, p) for p in graceful_sigmas(f)})


def brute_aut(f):
    return [p for p in itertools.permutations(range(len(f))) if conj(f, p) == tuple(f)]


def cycles(f):
    """Cycle lengths by pointer chasing with visitation marks."""
    n = len(f)
    state = [0] * n  # 0 new, 1 on current walk, 2 finished
    out = []
    for s in range(n):
        walk = []
        v = s
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = f[v]
        if state[v] == 1:
            out.append(len(walk) - walk.index(v))
        for w in walk:
            state[w] = 2
    return sorted(out)


def components(f):
    n = len(f)
    label = list(range(n))

    def root(x):
        while label[x] != x:
            x = label[x]
        return x

    for i in range(n):
        a, b = root(i), root(f[i])
        if a != b:
            label[a] = b
    return len({root(i) for i in range(n)})


def prufer_encode(f):
    """Prüfer sequence of the undirected tree underlying a functional tree."""
    n = len(f)
    adj = {v: set() for v in range(n)}
    for i, v in enumerate(f):
        if i != v:
            adj[i].add(v)
            adj[v].add(i)
    seq = []
    for _ in range(n - 2):
        leaf = min(v for v in adj if len(adj[v]) == 1)
        (nb,) = adj[leaf]
        seq.append(nb)
        adj[nb].discard(leaf)
        del adj[leaf]
    return seq


def undirected_edges(f):
    return {frozenset((i, v)) for i, v in enumerate(f) if i != v}


def edge_multiset(f):
    return sorted(tuple(sorted((i, v))) for i, v in enumerate(f) if i != v)


def _is_linear_forest(n, edges):
    if len(set(frozenset(e) for e in edges)) != len(edges):
        return False
    deg = [0] * n
    adj = [[] for _ in range(n)]
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    if max(deg, default=0) > 2:
        return False
    # forest iff components = n - edges
    seen = [False] * n
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return comps == n - len(edges)


def brute_rho(f):
    """Fewest non-loop edges to drop (loops ignored) to leave disjoint paths."""
    n = len(f)
    arcs = [(i, f[i]) for i in range(n) if f[i] != i]
    for keep in range(len(arcs), -1, -1):
        for kept in itertools.combinations(arcs, keep):
            if _is_linear_forest(n, list(kept)):
                return len(arcs) - keep
    raise AssertionError


def gaussian_det(matrix):
    """Exact Laplace expansion, fine for n <= 5."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total += (-1) ** j * matrix[0][j] * gaussian_det(minor)
    return total


def basis_formula(n):
    return math.factorial((n - 1) // 2) * math.factorial(n - 1 - (n - 1) // 2)
