"""Graceful expansions and permutation bases.

A gracefully labeled ``h = sigma f sigma^(-1)`` differs from the identity
by a signed permutation: ``h(j) = j + sign(j) * gamma(j)`` where
``gamma(j) = |h(j) - j|`` is a bijection of Z_n (the basis).  Composing
with the reversal ``phi = (n-1) - id`` gives the complementary parity
``t = 1`` of the same expansion.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .core import Endofunction, as_endofunction, conjugate, iterate, order
from .enumerate import all_permutations
from .labeling import is_gracefully_labeled


def _phi_power(n: int, t: int, x: int) -> int:
    return (n - 1) - x if t else x


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ExpansionBasis:
    gamma: Endofunction
    sign: tuple[int, ...]
    sigma: Endofunction
    t: int

    def __post_init__(self):
        n = len(self.gamma)
        if len(self.sign) != n or len(self.sigma) != n:
            raise ValueError("gamma, sign and sigma must have the same length")
        if not self.gamma.is_bijection() or not self.sigma.is_bijection():
            raise ValueError("gamma and sigma must be bijections")
        if self.t not in (0, 1):
            raise ValueError("t must be 0 or 1")
        if any(s not in (-1, 0, 1) for s in self.sign):
            raise ValueError("sign entries must lie in {-1, 0, 1}")

    @property
    def n(self) -> int:
        return len(self.gamma)

    def with_parity(self, t: int) -> "ExpansionBasis":
        return ExpansionBasis(self.gamma, self.sign, self.sigma, t)

    def to_json(self) -> str:
        return json.dumps(
            {"gamma": str(self.gamma), "sign": list(self.sign),
             "sigma": str(self.sigma), "t": self.t}
        )

    @classmethod
    def from_json(cls, text: str) -> "ExpansionBasis":
        data = json.loads(text)
        return cls(
            Endofunction.parse(data["gamma"]),
            tuple(int(s) for s in data["sign"]),
            Endofunction.parse(data["sigma"]),
            int(data["t"]),
        )


class MalformedBasis(ValueError):
    """The affine combination of a basis leaves Z_n."""


def is_permutation_basis(gamma: Sequence[int]) -> bool:
    """Range condition for a basis fixing 0: every i > 0 has
    gamma(i) <= i or gamma(i) <= (n-1) - i."""
    gamma = as_endofunction(gamma)
    if not gamma.is_bijection():
        raise ValueError(f"{gamma} is not a bijection")
    if gamma[0] != 0:
        raise ValueError("permutation bases are characterized up to fixing 0")
    n = len(gamma)
    return all(gamma[i] <= i or gamma[i] <= n - 1 - i for i in range(1, n))


def admits_signs(gamma: Sequence[int]) -> bool:
    """Range condition at every vertex, 0 included: some sign keeps
    j +/- gamma(j) inside Z_n.  Needed by any recovered basis."""
    n = len(gamma)
    return all(g <= j or g <= n - 1 - j for j, g in enumerate(gamma))


def enumerate_bases(n: int) -> list[Endofunction]:
    """All bijections fixing 0 that pass the range condition (brute force)."""
    if n <= 2:
        raise ValueError("permutation bases are counted for n > 2")
    out = []
    for tail in itertools.permutations(range(1, n)):
        gamma = Endofunction._trusted((0,) + tail)
        if is_permutation_basis(gamma):
            out.append(gamma)
    return out


def iter_bases_by_cascade(n: int) -> Iterator[Endofunction]:
    """Generate bases by placing magnitudes n-1, n-2, ..., 1 in turn.

    Magnitude m may sit at any free position i > 0 with m <= i (reached by
    a negative sign) or m <= n-1-i (positive sign).
    """
    if n <= 2:
        raise ValueError("permutation bases are counted for n > 2")
    gamma = [0] * n
    free = [True] * n
    free[0] = False

    def rec(m: int) -> Iterator[Endofunction]:
        if m == 0:
            yield Endofunction._trusted(tuple(gamma))
            return
        for i in range(1, n):
            if free[i] and (m <= i or m <= n - 1 - i):
                free[i] = False
                gamma[i] = m
                yield from rec(m - 1)
                free[i] = True

    yield from rec(n - 1)


def basis_count(n: int) -> int:
    """floor((n-1)/2)! * ceil((n-1)/2)!"""
    return math.factorial((n - 1) // 2) * math.factorial(n // 2)


def expansion_from_labeling(f: Sequence[int], sigma: Sequence[int], t: int = 0) -> ExpansionBasis:
    """Recover (gamma, sign) from a graceful relabeling sigma of f."""
    f = as_endofunction(f)
    sigma = as_endofunction(sigma)
    h = conjugate(f, sigma)
    if not is_gracefully_labeled(h):
        raise ValueError(f"sigma={sigma} does not gracefully label f={f}")
    n = len(f)
    diffs = [_phi_power(n, t, h[j]) - _phi_power(n, t, j) for j in range(n)]
    gamma = Endofunction([abs(d) for d in diffs])
    parity = -1 if t else 1
    sign = tuple(_sign(parity * d) for d in diffs)
    return ExpansionBasis(gamma, sign, sigma, t)


def labeled_function(basis: ExpansionBasis) -> Endofunction:
    """The gracefully labeled h = phi^t(phi^t + (-1)^t sign * gamma)."""
    n = basis.n
    parity = -1 if basis.t else 1
    out = []
    for j in range(n):
        inner = _phi_power(n, basis.t, j) + parity * basis.sign[j] * basis.gamma[j]
        if not 0 <= inner < n:
            raise MalformedBasis(f"basis leaves Z_{n} at j={j} (value {inner})")
        out.append(_phi_power(n, basis.t, inner))
    return Endofunction(out)


def reconstruct(basis: ExpansionBasis) -> Endofunction:
    """f = sigma^(-1) phi^t (phi^t sigma + (-1)^t sign(sigma) gamma sigma)."""
    h = labeled_function(basis)
    return conjugate(h, basis.sigma.inverse())


def expansion_is_valid(f: Sequence[int], basis: ExpansionBasis) -> bool:
    try:
        return reconstruct(basis) == as_endofunction(f) and is_gracefully_labeled(
            labeled_function(basis)
        )
    except MalformedBasis:
        return False


@dataclass
class SharingReport:
    n: int
    bound: int
    counts: dict[Endofunction, int] = field(default_factory=dict)

    @property
    def within_bound(self) -> bool:
        return all(c <= self.bound for c in self.counts.values())

    @property
    def identity_count(self) -> int:
        return self.counts[Endofunction.identity(self.n)]

    @property
    def sharp_for_identity(self) -> bool:
        return self.identity_count == self.bound


def labeled_functions_of_basis(gamma: Sequence[int]) -> list[Endofunction]:
    """Gracefully labeled functions h with |h - id| = gamma (one per valid sign row)."""
    n = len(gamma)
    choices = []
    for j, g in enumerate(gamma):
        if g == 0:
            choices.append([j])
        else:
            choices.append([v for v in (j - g, j + g) if 0 <= v < n])
    return [Endofunction._trusted(tuple(h)) for h in itertools.product(*choices)]


def bases_sharing_bound_check(n: int) -> SharingReport:
    """Count the gracefully labeled functions sharing each basis fixing 0,
    against the bound 2^ceil((n-1)/2)."""
    if n > 7:
        raise ValueError("sharing check is meant for n <= 7")
    report = SharingReport(n=n, bound=2 ** (n // 2))
    for gamma in enumerate_bases(n):
        report.counts[gamma] = len(labeled_functions_of_basis(gamma))
    return report


def inverse_iterate_expansion(f: Sequence[int], basis: ExpansionBasis) -> ExpansionBasis:
    """Turn an expansion of a permutation f into one of f^(o_f - 1).

    With h the labeled function of ``basis`` and g = h^(o-1) = h^(-1), the
    new basis is gamma o g with sign row -(sign o g); sigma and t carry over.
    """
    f = as_endofunction(f)
    if not f.is_bijection():
        raise ValueError(f"{f} is not a permutation")
    if reconstruct(basis) != f:
        raise ValueError("basis does not expand f")
    h = labeled_function(basis)
    g = iterate(h, order(h) - 1)
    gamma = basis.gamma.compose(g)
    sign = tuple(-basis.sign[g[j]] for j in range(len(f)))
    return ExpansionBasis(gamma, sign, basis.sigma, basis.t)


def gracefully_labeled_permutation_count(n: int) -> int:
    """Number of h in S_n whose graph is gracefully labeled (a union of cycles)."""
    return sum(1 for h in all_permutations(n) if is_gracefully_labeled(h))
