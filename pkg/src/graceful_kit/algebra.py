"""Exact factored polynomials and the determinantal certificate of grace.

Every polynomial here is a product of affine linear forms over Q, kept in
factored form: expanding the certificate (degree of order n^2) is never
needed because its remainder modulo the falling factorials
``x_k (x_k - 1) ... (x_k - n + 1)`` is fixed by its values on the lattice
Z_n^n, and those values are read off the factors directly.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Endofunction,
    as_endofunction,
    automorphism_group,
    iterate,
    undirected_adjacency,
)


@dataclass(frozen=True)
class LinearForm:
    """``sum(coeffs[k] * x_k) + constant`` with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    @classmethod
    def of(cls, n: int, terms: dict[int, int], constant: int = 0) -> "LinearForm":
        coeffs = [Fraction(0)] * n
        for k, c in terms.items():
            coeffs[k] += c
        return cls(tuple(coeffs), Fraction(constant))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return self.constant == 0 and not any(self.coeffs)

    def leading(self) -> Fraction:
        for c in self.coeffs:
            if c:
                return c
        return self.constant

    def scaled(self, s: Fraction) -> "LinearForm":
        return LinearForm(tuple(c * s for c in self.coeffs), self.constant * s)

    def canonical(self) -> tuple[Fraction, "LinearForm"]:
        """Split into (scale, form) with the form's first nonzero coefficient 1."""
        lead = self.leading()
        if lead == 0:
            return Fraction(0), self
        return lead, self.scaled(1 / lead)

    def is_canonical(self) -> bool:
        return self.leading() == 1

    def evaluate(self, point: Sequence) -> Fraction:
        total = self.constant
        for c, x in zip(self.coeffs, point):
            if c:
                total += c * x
        return total

    def permuted(self, sigma: Sequence[int]) -> "LinearForm":
        """Substitute x_k -> x_sigma(k)."""
        coeffs = [Fraction(0)] * self.n
        for k, c in enumerate(self.coeffs):
            coeffs[sigma[k]] = c
        return LinearForm(tuple(coeffs), self.constant)

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if c == 1:
                parts.append(f"+ x{k}")
            elif c == -1:
                parts.append(f"- x{k}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*x{k}")
        if self.constant or not parts:
            parts.append(f"{'+' if self.constant >= 0 else '-'} {abs(self.constant)}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass
class FactoredPolynomial:
    """``scalar * prod(form ** exponent)`` with canonical, pairwise
    non-proportional forms.  ``vanishing`` counts identically zero factors
    met while building; any of them makes the polynomial zero."""

    n: int
    scalar: Fraction = Fraction(1)
    factors: dict[LinearForm, int] = field(default_factory=dict)
    vanishing: int = 0

    @classmethod
    def product(cls, n: int, forms: Iterable[LinearForm]) -> "FactoredPolynomial":
        poly = cls(n)
        for form in forms:
            poly.multiply_form(form)
        return poly

    @classmethod
    def zero(cls, n: int) -> "FactoredPolynomial":
        return cls(n, Fraction(0))

    def multiply_form(self, form: LinearForm, exponent: int = 1) -> None:
        scale, canon = form.canonical()
        if scale == 0:
            self.vanishing += 1
            self.scalar = Fraction(0)
            return
        if self.scalar == 0:
            return
        self.scalar *= scale**exponent
        if canon.support():
            self.factors[canon] = self.factors.get(canon, 0) + exponent

    def __mul__(self, other: "FactoredPolynomial") -> "FactoredPolynomial":
        out = FactoredPolynomial(self.n, self.scalar * other.scalar, dict(self.factors),
                                 self.vanishing + other.vanishing)
        if out.scalar == 0:
            out.factors = {}
            return out
        for form, e in other.factors.items():
            out.factors[form] = out.factors.get(form, 0) + e
        return out

    def is_zero(self) -> bool:
        return self.scalar == 0

    @property
    def degree(self) -> int:
        return sum(self.factors.values()) if not self.is_zero() else -1

    def factor_multiset(self) -> Counter:
        return Counter(self.factors)

    def evaluate(self, point: Sequence) -> Fraction:
        if self.scalar == 0:
            return Fraction(0)
        value = self.scalar
        for form, e in self.factors.items():
            value *= form.evaluate(point) ** e
            if value == 0:
                return value
        return value

    def permuted(self, sigma: Sequence[int]) -> "FactoredPolynomial":
        out = FactoredPolynomial(self.n, self.scalar, {}, self.vanishing)
        for form, e in self.factors.items():
            scale, canon = form.permuted(sigma).canonical()
            out.scalar *= scale**e
            out.factors[canon] = out.factors.get(canon, 0) + e
        return out

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "scalar": str(self.scalar),
            "factors": [
                [[str(c) for c in form.coeffs] + [str(form.constant)], e]
                for form, e in sorted(self.factors.items(), key=lambda kv: _form_key(kv[0]))
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "FactoredPolynomial":
        data = json.loads(text)
        poly = cls(int(data["n"]), Fraction(data["scalar"]))
        for coeffs, e in data["factors"]:
            values = [Fraction(c) for c in coeffs]
            form = LinearForm(tuple(values[:-1]), values[-1])
            if not form.is_canonical():
                raise ValueError(f"factor {form} is not canonically scaled")
            poly.factors[form] = poly.factors.get(form, 0) + int(e)
        return poly

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        body = " * ".join(
            f"({form})" + (f"^{e}" if e > 1 else "")
            for form, e in sorted(self.factors.items(), key=lambda kv: _form_key(kv[0]))
        )
        return f"{self.scalar} * {body}" if body else str(self.scalar)


def _form_key(form: LinearForm) -> tuple:
    return tuple(-c for c in form.coeffs) + (form.constant,)


def lcm_factored(F: FactoredPolynomial, G: FactoredPolynomial) -> FactoredPolynomial:
    """Least common multiple: each canonical form takes its larger exponent.

    The result is normalized to scalar 1 (or 0 when either input is zero).
    """
    if F.n != G.n:
        raise ValueError("polynomials live in different rings")
    for form in itertools.chain(F.factors, G.factors):
        if not form.is_canonical():
            raise ValueError(f"factor {form} is not canonically scaled")
    if F.is_zero() or G.is_zero():
        return FactoredPolynomial(F.n, Fraction(0), {}, F.vanishing + G.vanishing)
    factors = dict(F.factors)
    for form, e in G.factors.items():
        factors[form] = max(factors.get(form, 0), e)
    return FactoredPolynomial(F.n, Fraction(1), factors)


# ---------------------------------------------------------------------------
# Vandermonde-type products

def _diff(n: int, a: int, b: int) -> LinearForm:
    """x_a - x_b"""
    return LinearForm.of(n, {a: 1, b: -1}) if a != b else LinearForm.of(n, {})


def _edge(f: Sequence[int], j: int) -> dict[int, int]:
    # x_f(j) - x_j as a coefficient dict (empty for a loop)
    return {} if f[j] == j else {f[j]: 1, j: -1}


def _combine(n: int, a: dict[int, int], b: dict[int, int], sign: int) -> LinearForm:
    terms: dict[int, int] = dict(a)
    for k, c in b.items():
        terms[k] = terms.get(k, 0) + sign * c
    return LinearForm.of(n, {k: c for k, c in terms.items() if c})


def difference_of_squares(f: Sequence[int], i: int, j: int) -> tuple[LinearForm, LinearForm]:
    """Split (x_f(j) - x_j)^2 - (x_f(i) - x_i)^2 into its two linear factors."""
    n = len(f)
    a, b = _edge(f, j), _edge(f, i)
    return _combine(n, a, b, -1), _combine(n, a, b, +1)


def vertex_vandermonde(n: int) -> FactoredPolynomial:
    """prod_{i<j} (x_j - x_i)"""
    return FactoredPolynomial.product(
        n, (_diff(n, j, i) for i, j in itertools.combinations(range(n), 2))
    )


def edge_vandermonde(f: Sequence[int], start: int = 0) -> FactoredPolynomial:
    """prod_{start<=i<j} ((x_f(j) - x_j)^2 - (x_f(i) - x_i)^2), split into linear forms.

    ``vanishing`` on the result counts the identically zero factors, which
    come from pairs of loops and from 2-cycles.
    """
    f = as_endofunction(f)
    n = len(f)
    forms = []
    for i, j in itertools.combinations(range(start, n), 2):
        forms.extend(difference_of_squares(f, i, j))
    return FactoredPolynomial.product(n, forms)


def certificate_polynomial(f: Sequence[int]) -> FactoredPolynomial:
    f = as_endofunction(f)
    return lcm_factored(vertex_vandermonde(len(f)), edge_vandermonde(f))


def full_product(f: Sequence[int]) -> FactoredPolynomial:
    """prod_{i<j} (x_j - x_i)((x_f(j) - x_j)^2 - (x_f(i) - x_i)^2), unreduced."""
    f = as_endofunction(f)
    return vertex_vandermonde(len(f)) * edge_vandermonde(f)


@dataclass(frozen=True)
class CertificateReport:
    graceful: bool
    witness: tuple[int, ...] | None
    points_examined: int
    vanishing_factors: int = 0


def certify_graceful(f: Sequence[int]) -> CertificateReport:
    """Decide whether the certificate LCM survives reduction modulo the
    falling factorials, by searching the lattice for a nonzero value.

    Points with repeated coordinates kill the vertex Vandermonde factor, so
    only permutation points are visited, in lexicographic order; a branch
    is cut as soon as a factor whose variables are all assigned vanishes.
    """
    f = as_endofunction(f)
    n = len(f)
    poly = certificate_polynomial(f)
    if poly.is_zero():
        return CertificateReport(False, None, 0, poly.vanishing)

    # integer coefficient rows, bucketed by the last variable they involve
    buckets: list[list[tuple[tuple[int, int], ...]]] = [[] for _ in range(n)]
    for form in poly.factors:
        support = form.support()
        denom = math.lcm(*(c.denominator for c in form.coeffs if c), form.constant.denominator)
        row = tuple((k, int(form.coeffs[k] * denom)) for k in support)
        if form.constant:
            raise ValueError("certificate factors are homogeneous")
        buckets[max(support)].append(row)

    point = [0] * n
    taken = [False] * n
    examined = 0

    def rec(i: int) -> bool:
        nonlocal examined
        if i == n:
            return True
        for v in range(n):
            if taken[v]:
                continue
            point[i] = v
            examined += 1
            if all(sum(c * point[k] for k, c in row) for row in buckets[i]):
                taken[v] = True
                if rec(i + 1):
                    return True
                taken[v] = False
        return False

    if rec(0):
        witness = tuple(point)
        assert poly.evaluate(witness) != 0
        return CertificateReport(True, witness, examined)
    return CertificateReport(False, None, examined)


def witness_magnitude(n: int) -> int:
    """prod_{i<j} (j - i)^2 (j + i)"""
    return math.prod((j - i) ** 2 * (j + i) for i, j in itertools.combinations(range(n), 2))


def witness_value_check(f: Sequence[int], witness: Sequence[int]) -> bool:
    """The unreduced product at a graceful witness is +/- the fixed magnitude."""
    value = full_product(f).evaluate(witness)
    return abs(value) == witness_magnitude(len(f))


# ---------------------------------------------------------------------------
# determinant identity

def _determinant(matrix: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, size):
                    m[r][c] -= factor * m[col][c]
    return det


def determinant_matrix(f: Sequence[int], point: Sequence, strict: bool = False) -> list[list[Fraction]]:
    """V[i][j] = (1 - (x_i c_j)^n) / (1 - x_i c_j) with c_j = (x_f(j) - x_j)^2.

    Entries are evaluated as the geometric sum 1 + r + ... + r^(n-1), which
    is the quotient wherever the denominator is nonzero.  With ``strict``
    the removable points r = 1 are rejected instead.
    """
    f = as_endofunction(f)
    n = len(f)
    if len(point) != n:
        raise ValueError("point has the wrong dimension")
    x = [Fraction(v) for v in point]
    c = [(x[f[j]] - x[j]) ** 2 for j in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            r = x[i] * c[j]
            if r == 1:
                if strict:
                    raise ValueError(f"singular denominator at entry ({i}, {j})")
                row.append(Fraction(n))
            else:
                row.append((1 - r**n) / (1 - r))
        rows.append(row)
    return rows


def det_v_check(f: Sequence[int], point: Sequence, strict: bool = False) -> bool:
    """Exact check of det V(x) = prod_{i<j}(x_j - x_i)((x_f(j)-x_j)^2 - (x_f(i)-x_i)^2)."""
    f = as_endofunction(f)
    det = _determinant(determinant_matrix(f, point, strict))
    return det == full_product(f).evaluate([Fraction(v) for v in point])


# ---------------------------------------------------------------------------
# minimal certificate for trees rooted at 0

def _distances(f: Sequence[int]) -> list[list[int]]:
    adj = undirected_adjacency(f)
    n = len(f)
    out = []
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if dist[u] == -1:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        out.append(dist)
    return out


def _require_tree_at_zero(f: Endofunction) -> None:
    if set(iterate(f, len(f) - 1)) != {0}:
        raise ValueError(f"{f} is not a functional tree rooted at 0")


def restricted_lcm(f: Sequence[int]) -> FactoredPolynomial:
    """LCM of the vertex Vandermonde and the edge product over 0 < i < j."""
    f = as_endofunction(f)
    _require_tree_at_zero(f)
    return lcm_factored(vertex_vandermonde(len(f)), edge_vandermonde(f, start=1))


def minimal_lcm(f: Sequence[int]) -> FactoredPolynomial:
    """Explicit five-block form of the restricted certificate of a tree
    rooted at 0: vertex differences, distance-2 factors, sibling factors,
    grandparent-edge differences of squares and the far-apart edge pairs."""
    f = as_endofunction(f)
    _require_tree_at_zero(f)
    n = len(f)
    d = _distances(f)
    f2 = iterate(f, 2)
    f3 = iterate(f, 3)
    poly = vertex_vandermonde(n)
    for i in range(n):
        if d[i][f2[i]] == 2:
            poly.multiply_form(LinearForm.of(n, {f[i]: 2, i: -1, f2[i]: -1}))
    for i, j in itertools.combinations(range(1, n), 2):
        if f[i] == f[j]:
            poly.multiply_form(LinearForm.of(n, {f[j]: 2, j: -1, i: -1}))
    for i in range(n):
        if d[i][f3[i]] == 3:
            for form in difference_of_squares(f, i, f2[i]):
                poly.multiply_form(form)
    for i, j in itertools.combinations(range(1, n), 2):
        if d[i][j] >= 3:
            for form in difference_of_squares(f, i, j):
                poly.multiply_form(form)
    poly.scalar = Fraction(1)
    return poly


# ---------------------------------------------------------------------------
# stabilizer of the symmetric certificate

def symmetric_certificate(f: Sequence[int]) -> FactoredPolynomial:
    """prod_{i != j} (x_j - x_i)((x_f(j) - x_j)^2 - (x_f(i) - x_i)^2)."""
    f = as_endofunction(f)
    n = len(f)
    forms = []
    for i, j in itertools.permutations(range(n), 2):
        forms.append(_diff(n, j, i))
        forms.extend(difference_of_squares(f, i, j))
    return FactoredPolynomial.product(n, forms)


def polynomial_stabilizer(f: Sequence[int], compare_scalar: bool = False) -> list[Endofunction]:
    """Permutations of the variables fixing the factor multiset of the
    symmetric certificate (and its scalar when ``compare_scalar``)."""
    f = as_endofunction(f)
    n = len(f)
    if n > 7:
        raise ValueError("stabilizer search is limited to n <= 7")
    poly = symmetric_certificate(f)
    if poly.is_zero():
        raise ValueError(f"certificate of {f} vanishes identically; stabilizer undefined")
    target = poly.factor_multiset()
    out = []
    for p in itertools.permutations(range(n)):
        moved = poly.permuted(p)
        if moved.factor_multiset() == target and (not compare_scalar or moved.scalar == poly.scalar):
            out.append(Endofunction._trusted(p))
    return out


def stabilizer_equal(f: Sequence[int]) -> bool:
    """Does the stabilizer of the symmetric certificate equal Aut(G_f)?"""
    return polynomial_stabilizer(f) == automorphism_group(f)
