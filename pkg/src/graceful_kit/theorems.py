"""Exhaustive sweeps checking the structural claims on small n.

Each sweep walks an index-addressable stream (trees, endofunctions,
permutations), applies one predicate per item and folds the outcomes into
a :class:`SweepReport`.  Streams can be sharded with ``"k..m"`` ranges,
spread over worker processes, and checkpointed to an append-only CSV so an
interrupted run resumes where it stopped.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import (
    Endofunction,
    as_endofunction,
    automorphism_count,
    conjugate,
    functional_graph,
    is_functional_tree,
    iterate,
    order,
    reroot,
    tree_root,
    undirected_adjacency,
    unrooted_code,
)
from .enumerate import (
    TreeIterator,
    all_permutations,
    cycle_union,
    nth_endofunction,
    nth_permutation,
    parse_range,
)
from .labeling import (
    EXHAUSTIVE_LIMIT,
    _permutation_table,
    distinct_counts,
    find_graceful_labeling,
    grl,
    is_gracefully_labeled,
    iter_graceful_labelings,
    search_graceful_labeling,
)

CACHE_ENV = "GRACEFUL_KIT_CACHE"
UNIVERSES = ("trees", "endofunctions", "permutations", "cycle-unions")


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class Outcome:
    status: str  # "pass", "fail" or "vacuous"
    witness: str = ""
    detail: str = ""


@dataclass(frozen=True)
class Violation:
    f: str
    predicate: str
    detail: str
    witness: str = ""


@dataclass
class SweepReport:
    n: int
    universe: str
    predicate: str
    instances_checked: int = 0
    vacuous: int = 0
    violations: list[Violation] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, f: Endofunction, outcome: Outcome) -> None:
        self.instances_checked += 1
        if outcome.status == "vacuous":
            self.vacuous += 1
        elif outcome.status == "fail":
            self.violations.append(Violation(str(f), self.predicate, outcome.detail, outcome.witness))

    def merge(self, other: "SweepReport") -> "SweepReport":
        if (self.n, self.universe, self.predicate) != (other.n, other.universe, other.predicate):
            raise ValueError("cannot merge reports of different sweeps")
        return SweepReport(
            self.n, self.universe, self.predicate,
            self.instances_checked + other.instances_checked,
            self.vacuous + other.vacuous,
            sorted(self.violations + other.violations, key=lambda v: v.f),
            self.wall_time + other.wall_time,
        )

    def summary(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "universe": self.universe,
            "predicate": self.predicate,
            "instances_checked": self.instances_checked,
            "vacuous": self.vacuous,
            "passed": self.passed,
            "violations": [asdict(v) for v in self.violations],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.summary(timing), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# streams

class IndexedStream:
    """Length plus random access, so shards can be cut anywhere."""

    def __init__(self, length: int, getter: Callable[[int], Endofunction]):
        self._length = length
        self._getter = getter

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, k: int) -> Endofunction:
        if not 0 <= k < self._length:
            raise IndexError(k)
        return self._getter(k)


def universe_stream(universe: str, n: int) -> IndexedStream:
    if universe == "trees":
        trees = TreeIterator(n)
        return IndexedStream(len(trees), trees.__getitem__)
    if universe == "endofunctions":
        return IndexedStream(n**n, partial(nth_endofunction, n))
    if universe == "permutations":
        return IndexedStream(math.factorial(n), partial(nth_permutation, n))
    if universe == "cycle-unions":
        parts = [cycle_union(p) for p in _partitions(n)]
        return IndexedStream(len(parts), parts.__getitem__)
    raise ValueError(f"unknown universe {universe!r}; choose from {', '.join(UNIVERSES)}")


def _partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, largest), 0, -1):
        out.extend((k,) + rest for rest in _partitions(n - k, k))
    return out


# ---------------------------------------------------------------------------
# checkpoint store

class ResultStore:
    """Append-only CSV of per-instance results plus a JSON summary per sweep."""

    FIELDS = ("n", "universe", "f", "predicate", "pass", "witness")

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls) -> "ResultStore | None":
        path = os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def _stem(self, predicate: str, universe: str, n: int) -> str:
        return f"{predicate}_{universe}_n{n}"

    def csv_path(self, predicate: str, universe: str, n: int) -> Path:
        return self.directory / f"{self._stem(predicate, universe, n)}.csv"

    def json_path(self, predicate: str, universe: str, n: int) -> Path:
        return self.directory / f"{self._stem(predicate, universe, n)}.json"

    def load(self, predicate: str, universe: str, n: int) -> dict[str, tuple[str, str, str]]:
        path = self.csv_path(predicate, universe, n)
        done: dict[str, tuple[str, str, str]] = {}
        if not path.exists():
            return done
        with path.open(newline="") as handle:
            for row in csv.DictReader(handle):
                status, _, detail = row["pass"].partition(":")
                done[row["f"]] = (status, row["witness"], detail)
        return done

    def append(self, predicate: str, universe: str, n: int,
               rows: Iterable[tuple[Endofunction, Outcome]]) -> None:
        path = self.csv_path(predicate, universe, n)
        fresh = not path.exists()
        with path.open("a", newline="") as handle:
            writer = csv.writer(handle)
            if fresh:
                writer.writerow(self.FIELDS)
            for f, outcome in rows:
                status = outcome.status + (f":{outcome.detail}" if outcome.detail else "")
                writer.writerow((n, universe, str(f), predicate, status, outcome.witness))

    def write_summary(self, report: SweepReport) -> None:
        self.json_path(report.predicate, report.universe, report.n).write_text(report.to_json(True))


def _run_chunk(check: Callable[[Endofunction], Outcome], items: list[Endofunction]) -> list[Outcome]:
    return [check(f) for f in items]


def run_sweep(
    predicate: str,
    n: int,
    universe: str,
    check: Callable[[Endofunction], Outcome],
    shard: str | range | None = None,
    jobs: int = 1,
    store: ResultStore | None = None,
    chunk_size: int = 512,
) -> SweepReport:
    """Apply ``check`` to every item of the stream (or shard) and reduce.

    The reduction follows stream order, so the report does not depend on
    ``jobs`` or on how the work was split.
    """
    start = time.perf_counter()
    stream = universe_stream(universe, n)
    if shard is None:
        indices = range(len(stream))
    elif isinstance(shard, str):
        indices = parse_range(shard, len(stream))
    else:
        indices = shard
    report = SweepReport(n, universe, predicate)
    done = store.load(predicate, universe, n) if store else {}

    pending: list[Endofunction] = []
    for k in indices:
        f = stream[k]
        key = str(f)
        if key in done:
            status, witness, detail = done[key]
            report.record(f, Outcome(status, witness, detail))
        else:
            pending.append(f)

    chunks = [pending[i:i + chunk_size] for i in range(0, len(pending), chunk_size)]
    worker = partial(_run_chunk, check)
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(worker, chunks)
            for chunk, outcomes in zip(chunks, results):
                _fold(report, store, chunk, outcomes)
    else:
        for chunk in chunks:
            _fold(report, store, chunk, worker(chunk))

    report.violations.sort(key=lambda v: v.f)
    report.wall_time = time.perf_counter() - start
    if store:
        store.write_summary(report)
    return report


def _fold(report: SweepReport, store: ResultStore | None, chunk, outcomes) -> None:
    for f, outcome in zip(chunk, outcomes):
        report.record(f, outcome)
    if store:
        store.append(report.predicate, report.universe, report.n, zip(chunk, outcomes))


# ---------------------------------------------------------------------------
# predicates

def attains_n(f: Sequence[int]) -> Endofunction | None:
    """A sigma realizing n distinct labels, or None.

    Exhaustive over S_n when n is small enough, backtracking otherwise.
    """
    f = as_endofunction(f)
    n = len(f)
    if n <= EXHAUSTIVE_LIMIT:
        counts = distinct_counts(f)
        k = int(np.argmax(counts))
        if counts[k] != n:
            return None
        return Endofunction._trusted(tuple(int(v) for v in _permutation_table(n)[k]))
    return search_graceful_labeling(f)


def aut_strictly_grows(f: Sequence[int]) -> bool:
    """Aut(G_f) is a proper subgroup of Aut(G_(f o f)).

    Anything commuting with f commutes with f o f, so comparing orders suffices.
    """
    f = as_endofunction(f)
    return automorphism_count(f) < automorphism_count(iterate(f, 2))


def composition_lemma_outcome(f: Endofunction) -> Outcome:
    if not aut_strictly_grows(f):
        return Outcome("vacuous")
    if attains_n(iterate(f, 2)) is None:
        return Outcome("vacuous")
    sigma = attains_n(f)
    if sigma is None:
        return Outcome("fail", detail="f o f attains n labels but f does not")
    return Outcome("pass", witness=str(sigma))


def verify_composition_lemma(n: int, universe: str = "trees", **kwargs) -> SweepReport:
    """Strict growth of Aut under squaring plus a graceful square forces f graceful."""
    _check_universe_size(universe, n, {"trees": 8, "endofunctions": 6, "permutations": 8})
    return run_sweep("lemma", n, universe, composition_lemma_outcome, **kwargs)


def main_theorem_outcome(f: Endofunction) -> Outcome:
    """n + 1 - #components(G_(f^o)) equals the best label count of f^o."""
    n = len(f)
    h = iterate(f, order(f))
    lhs = n + 1 - functional_graph(h).component_count
    if n <= EXHAUSTIVE_LIMIT:
        counts = distinct_counts(h)
        k = int(np.argmax(counts))
        best = int(counts[k])
        witness = Endofunction._trusted(tuple(int(v) for v in _permutation_table(n)[k]))
    else:
        if not is_functional_tree(h):
            raise ValueError("beyond the exhaustive limit only trees are supported")
        sigma = search_graceful_labeling(h)
        best, witness = (n, sigma) if sigma is not None else (-1, None)
    if best == lhs:
        return Outcome("pass", witness=str(witness) if witness is not None else "")
    return Outcome("fail", witness=str(witness or ""), detail=f"expected {lhs} labels, best is {best}")


def tree_graceful_outcome(f: Endofunction) -> Outcome:
    sigma = search_graceful_labeling(f)
    if sigma is None:
        return Outcome("fail", detail="no graceful labeling found")
    return Outcome("pass", witness=str(sigma))


def verify_main_theorem(n: int, universe: str = "trees", **kwargs) -> SweepReport:
    """On trees this is the statement that every tree is graceful."""
    _check_universe_size(universe, n, {"trees": 9, "endofunctions": 6, "permutations": 7,
                                      "cycle-unions": 7})
    check = tree_graceful_outcome if universe == "trees" else main_theorem_outcome
    return run_sweep("main", n, universe, check, **kwargs)


def _check_universe_size(universe: str, n: int, limits: dict[str, int]) -> None:
    if universe not in limits:
        raise ValueError(f"universe {universe!r} is not supported here")
    if not 1 <= n <= limits[universe]:
        raise ValueError(f"{universe} sweep is limited to 1 <= n <= {limits[universe]}")


# ---------------------------------------------------------------------------
# rerooting at distance two from a leaf

def _distances_from(adj: list[set[int]], source: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if dist[u] == -1:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def aut_strictness_fix(f: Sequence[int]) -> Endofunction:
    """Reroot a functional tree at a vertex two edges away from some leaf,
    choosing the first such vertex whose rerooting g has
    Aut(G_g) strictly inside Aut(G_(g o g))."""
    f = as_endofunction(f)
    if not is_functional_tree(f):
        raise ValueError(f"{f} is not a functional tree")
    n = len(f)
    if n <= 2:
        raise ValueError("no vertex lies at distance 2 from a leaf when n <= 2")
    adj = undirected_adjacency(f)
    leaves = [v for v in range(n) if len(adj[v]) == 1]
    candidates = sorted({v for leaf in leaves for v, d in enumerate(_distances_from(adj, leaf)) if d == 2})
    for v in candidates:
        g = reroot(f, v)
        if aut_strictly_grows(g):
            return g
    raise ValueError(f"no rerooting of {f} at distance 2 from a leaf grows Aut under squaring")


# ---------------------------------------------------------------------------
# leaf-reattachment descent

class ReductionError(ValueError):
    """The reduction step cannot produce a strict image-size descent."""


def in_semigroup(f: Sequence[int]) -> bool:
    """Tree rooted at 0 whose parents carry smaller labels."""
    f = as_endofunction(f)
    return all(v <= i for i, v in enumerate(f)) and set(iterate(f, len(f) - 1)) == {0}


def _relabel_with_last(f: Endofunction, last: int | None = None) -> tuple[Endofunction, Endofunction]:
    """Conjugate a tree into the semigroup by breadth-first labels, putting
    the leaf ``last`` at n-1.  Returns (conjugate, sigma)."""
    n = len(f)
    root = tree_root(f)
    kids: list[list[int]] = [[] for _ in range(n)]
    for i, v in enumerate(f):
        if i != v:
            kids[v].append(i)
    order_ = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        order_.append(v)
        queue.extend(sorted(u for u in kids[v] if u != last))
    if last is not None:
        order_.append(last)
    sigma = [0] * n
    for label, v in enumerate(order_):
        sigma[v] = label
    sigma = Endofunction(sigma)
    return conjugate(f, sigma), sigma


def to_semigroup(f: Sequence[int]) -> Endofunction:
    return _relabel_with_last(as_endofunction(f))[0]


def _descent_leaves(f: Endofunction) -> list[int]:
    """Leaves of the underlying tree whose unique neighbour has degree 2:
    moving such a leaf to the root turns that neighbour into a leaf."""
    adj = undirected_adjacency(f)
    out = []
    for v in range(len(f)):
        if len(adj[v]) == 1:
            (p,) = adj[v]
            if len(adj[p]) == 2:
                out.append(v)
    return out


def _restriction(f: Endofunction, leaf: int) -> tuple[int, Endofunction]:
    """Relabel so ``leaf`` is n-1 (after a fixed point swap moving the loop
    off it) and drop it.  Returns (parent of n-1, restriction to Z_(n-1))."""
    (anchor,) = undirected_adjacency(f)[leaf]
    base, _ = _relabel_with_last(reroot(f, anchor), leaf)
    n = len(f)
    return base[n - 1], Endofunction(base[: n - 1])


def prop17_reduce(f: Sequence[int], leaf: int | None = None,
                  sigma: Sequence[int] | None = None) -> tuple[Endofunction, Endofunction]:
    """One descent step: returns (f_tilde, f_tilde o g o h).

    f is conjugated so that ``leaf`` becomes n-1, the restriction to
    Z_(n-1) is gracefully relabeled (by ``sigma`` if given), the loop moves
    to the non-leaf among the labels 0 and n-2, the complement (n-2) - id
    is applied when that vertex is n-2, and n-1 is attached to 0 (f_tilde o g o h)
    or to its own relabeled parent (f_tilde).
    """
    f = as_endofunction(f)
    n = len(f)
    if n <= 3:
        raise ValueError("the reduction needs n > 3")
    if not in_semigroup(f):
        raise ValueError(f"{f} is not a tree rooted at 0 with decreasing parents")
    if len(set(f)) == 1:
        raise ValueError("f is already constant")
    if leaf is None:
        options = _descent_leaves(f)
        if not options:
            raise ReductionError(f"{f} has no leaf next to a degree-2 vertex")
        leaf = options[-1]
    elif len(undirected_adjacency(f)[leaf]) != 1:
        raise ValueError(f"{leaf} is not a leaf of {f}")

    parent, q = _restriction(f, leaf)
    if sigma is None:
        sigma = search_graceful_labeling(q)
        if sigma is None:
            raise ReductionError(f"restriction {q} has no graceful labeling")
    sigma = as_endofunction(sigma)
    labeled = conjugate(q, sigma)
    if not is_gracefully_labeled(labeled):
        raise ValueError("sigma does not gracefully label the restriction")

    m = n - 1
    adj = undirected_adjacency(labeled)
    hub = 0 if len(adj[0]) > 1 else m - 1
    tree = reroot(labeled, hub)
    if hub != 0:
        flip = Endofunction([m - 1 - i for i in range(m)])
        tree = conjugate(tree, flip)
        sigma = flip.compose(sigma)
    reduced = Endofunction(list(tree) + [0])
    tilde = Endofunction(list(tree) + [sigma[parent]])

    if not is_gracefully_labeled(reduced):
        raise AssertionError("attached leaf did not give a graceful labeling")
    if not reduced.image_size() < tilde.image_size() <= f.image_size():
        raise ReductionError(
            f"image sizes {reduced.image_size()}, {tilde.image_size()}, {f.image_size()} do not descend"
        )
    return tilde, reduced


@dataclass
class DescentChain:
    start: Endofunction
    steps: list[Endofunction]
    reached_constant: bool
    reason: str = ""

    @property
    def length(self) -> int:
        return len(self.steps)


def _is_star(f: Endofunction) -> bool:
    adj = undirected_adjacency(f)
    return sum(1 for a in adj if len(a) > 1) <= 1


def prop17_successors(f: Sequence[int]) -> list[Endofunction]:
    """Every reduced tree reachable in one step, one per unlabeled shape,
    over all admissible leaves and all graceful labelings of the restriction."""
    f = to_semigroup(as_endofunction(f))
    out: dict[str, Endofunction] = {}
    for leaf in reversed(_descent_leaves(f)):
        _, q = _restriction(f, leaf)
        for sigma in iter_graceful_labelings(q):
            try:
                _, reduced = prop17_reduce(f, leaf, sigma)
            except ReductionError:
                continue
            out.setdefault(unrooted_code(reduced), to_semigroup(reduced))
    return list(out.values())


def prop17_chain(f: Sequence[int]) -> DescentChain:
    """Iterate the reduction until the underlying tree is a star.

    A star rerooted at its centre is constant, so the chain stops there.
    The choices of leaf and of graceful labeling are searched depth first
    until one sequence of steps reaches a star.
    """
    f = as_endofunction(f)
    if len(f) <= 3:
        ok = _is_star(f)
        return DescentChain(f, [], ok, "" if ok else "n <= 3")
    steps = _descent_from_shape(unrooted_code(f), to_semigroup(f))
    if steps is not None:
        return DescentChain(f, list(steps), True)
    if not _descent_leaves(f):
        reason = "no leaf next to a degree-2 vertex"
    else:
        reason = "every descent stalls at a tree with no leaf next to a degree-2 vertex"
    return DescentChain(f, [], False, reason)


# image sizes drop at every step, so the search graph is acyclic and the
# outcome depends only on the unlabeled shape
_DESCENTS: dict[str, tuple[Endofunction, ...] | None] = {}


def _descent_from_shape(shape: str, g: Endofunction) -> tuple[Endofunction, ...] | None:
    if shape not in _DESCENTS:
        result: tuple[Endofunction, ...] | None = None
        if _is_star(g):
            result = ()
        else:
            for nxt in prop17_successors(g):
                tail = _descent_from_shape(unrooted_code(nxt), nxt)
                if tail is not None:
                    result = (nxt,) + tail
                    break
        _DESCENTS[shape] = result
    return _DESCENTS[shape]


def prop17_outcome(f: Endofunction) -> Outcome:
    n = len(f)
    chain = prop17_chain(f)
    if not chain.reached_constant:
        return Outcome("fail", detail=chain.reason)
    if chain.length > max(n - 2, 0):
        return Outcome("fail", detail=f"{chain.length} steps exceeds n - 2")
    return Outcome("pass", witness=" ".join(str(s) for s in chain.steps))


def verify_prop17(n: int, universe: str = "trees", **kwargs) -> SweepReport:
    _check_universe_size(universe, n, {"trees": 8})
    return run_sweep("prop17", n, universe, prop17_outcome, **kwargs)


# ---------------------------------------------------------------------------
# cycle corollaries

def graceful_permutation_count(n: int) -> int:
    """Number of h in S_n with |h(i) - i| running over all of Z_n."""
    if n <= EXHAUSTIVE_LIMIT:
        perms = _permutation_table(n)
        labels = np.abs(perms - np.arange(n))
        bits = np.bitwise_or.reduce(np.left_shift(1, labels), axis=1)
        return int(np.count_nonzero(bits == (1 << n) - 1))
    return sum(1 for h in all_permutations(n) if is_gracefully_labeled(h))


def verify_cycle_corollaries(n_max: int = 9, s_max: int = 1, t_max: int = 2) -> SweepReport:
    """Loop plus 2^s copies of a 2^t-cycle is graceful, and the gracefully
    labeled permutations of Z_n come in multiples of 4 for 2 <= n <= 6."""
    report = SweepReport(n_max, "cycle-unions", "corollaries")
    start = time.perf_counter()
    for s, t in itertools.product(range(1, s_max + 1), range(2, t_max + 1)):
        n = 1 + 2 ** (s + t)
        if n > n_max:
            continue
        f = cycle_union([1] + [2**t] * 2**s)
        sigma = find_graceful_labeling(f) if n <= 9 else search_graceful_labeling(f)
        report.record(f, Outcome("pass", str(sigma)) if sigma is not None
                      else Outcome("fail", detail=f"s={s} t={t}: no graceful labeling"))
    for n in range(2, min(n_max, 6) + 1):
        count = graceful_permutation_count(n)
        marker = Endofunction.identity(n)
        report.record(marker, Outcome("pass", str(count)) if count % 4 == 0
                      else Outcome("fail", str(count), f"count {count} at n={n} is not a multiple of 4"))
    report.wall_time = time.perf_counter() - start
    return report


def grl_size_preserved(f: Sequence[int], g: Sequence[int]) -> bool:
    return len(grl(f)) == len(grl(g))
