"""Cyclic decomposition of the complete graph K_(2n-1) by a graceful tree.

Vertex k of K_(2n-1) can be pictured as the root of unity
exp(2 pi i k / (2n-1)); only integer arithmetic mod 2n-1 is used here.
A gracefully labeled n-vertex tree has edge lengths 1..n-1, and its
2n-1 rotations cover every chord length class exactly once.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .core import Endofunction, as_endofunction, conjugate, is_functional_tree
from .labeling import is_gracefully_labeled

Edge = tuple[int, int]


@dataclass
class DecompositionReport:
    n: int
    shifts: list[list[Edge]]
    missing: list[Edge] = field(default_factory=list)
    duplicated: list[Edge] = field(default_factory=list)

    @property
    def modulus(self) -> int:
        return 2 * self.n - 1

    @property
    def is_partition(self) -> bool:
        return not self.missing and not self.duplicated

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.shifts)

    def to_edge_list(self) -> str:
        """One line per shift, space-separated ``u-v`` pairs."""
        return "".join(" ".join(f"{u}-{v}" for u, v in shift) + "\n" for shift in self.shifts)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_edge_list())


def _canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def shift_edges(labeled_edges: Sequence[Edge], i: int, modulus: int) -> list[Edge]:
    return sorted(_canonical((u + i) % modulus, (v + i) % modulus) for u, v in labeled_edges)


def ringel_decompose(f: Sequence[int], sigma: Sequence[int]) -> DecompositionReport:
    """Shift the tree labeled by sigma around Z_(2n-1) and audit the cover.

    Partition failures are reported through ``missing``/``duplicated``
    rather than raised, so a falsifying input leaves a usable record.
    """
    f = as_endofunction(f)
    sigma = as_endofunction(sigma)
    if len(sigma) != len(f):
        raise ValueError("sigma and f act on different sets")
    if not is_functional_tree(f):
        raise ValueError(f"{f} is not a functional tree")
    if not sigma.is_bijection():
        raise ValueError(f"{sigma} is not a bijection")
    labeled = conjugate(f, sigma)
    if not is_gracefully_labeled(labeled):
        raise ValueError(f"sigma={sigma} does not gracefully label f={f}")

    n = len(f)
    modulus = 2 * n - 1
    base = [(i, v) for i, v in enumerate(labeled) if i != v]
    shifts = [shift_edges(base, i, modulus) for i in range(modulus)]

    seen = Counter(e for s in shifts for e in s)
    complete = set(itertools.combinations(range(modulus), 2))
    missing = sorted(complete - set(seen))
    duplicated = sorted(e for e, c in seen.items() if c > 1)
    return DecompositionReport(n, shifts, missing, duplicated)


def rotation_coherent(report: DecompositionReport) -> bool:
    """Adding 1 mod 2n-1 to every label of shift i gives shift i+1."""
    m = report.modulus
    return all(
        shift_edges(report.shifts[i], 1, m) == report.shifts[(i + 1) % m] for i in range(m)
    )


def labeled_tree(f: Sequence[int], sigma: Sequence[int]) -> Endofunction:
    return conjugate(as_endofunction(f), as_endofunction(sigma))
