"""Randomized structural properties, drawn with hypothesis."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from graceful_kit.algebra import certify_graceful
from graceful_kit.core import Endofunction, automorphism_group, conjugate, functional_graph, iterate, order
from graceful_kit.decomposition import ringel_decompose
from graceful_kit.enumerate import prufer_decode
from graceful_kit.expansion import expansion_from_labeling, reconstruct
from graceful_kit.labeling import grl, label_profile, search_graceful_labeling
from graceful_kit.monoid import antihom_check, defect, k_pseudoinverse_count

from oracles import brute_is_graceful, cycles


@st.composite
def endofunctions(draw, lo=1, hi=6):
    n = draw(st.integers(lo, hi))
    return Endofunction(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))


@st.composite
def with_permutation(draw, lo=1, hi=6):
    f = draw(endofunctions(lo, hi))
    sigma = draw(st.permutations(list(range(len(f)))))
    return f, Endofunction(sigma)


@st.composite
def trees(draw, lo=2, hi=10):
    n = draw(st.integers(lo, hi))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    root = draw(st.integers(0, n - 1))
    return prufer_decode(seq, root=root, n=n)


@settings(max_examples=200, deadline=None)
@given(with_permutation())
def test_conjugation_preserves_cycle_type_and_label_question(pair):
    f, sigma = pair
    h = conjugate(f, sigma)
    assert cycles(h) == cycles(f)
    assert functional_graph(h).component_count == functional_graph(f).component_count
    assert (search_graceful_labeling(h) is None) == (search_graceful_labeling(f) is None)


@settings(max_examples=150, deadline=None)
@given(with_permutation(hi=5))
def test_conjugation_preserves_automorphism_order_and_grl_size(pair):
    f, sigma = pair
    h = conjugate(f, sigma)
    assert len(automorphism_group(h)) == len(automorphism_group(f))
    assert len(grl(h)) == len(grl(f))


@settings(max_examples=150, deadline=None)
@given(endofunctions(hi=8), st.integers(0, 20))
def test_iterate_periodicity(f, k):
    n = len(f)
    # past the transient (at most n steps) the iterates repeat with period o_f
    assert iterate(f, n + k + order(f)) == iterate(f, n + k)


@settings(max_examples=200, deadline=None)
@given(endofunctions(hi=5))
def test_search_and_certificate_agree_with_brute_force(f):
    expected = brute_is_graceful(f)
    assert (search_graceful_labeling(f) is not None) == expected
    assert certify_graceful(f).graceful == expected


@settings(max_examples=60, deadline=None)
@given(trees())
def test_random_trees_are_graceful_and_expand(f):
    sigma = search_graceful_labeling(f)
    assert sigma is not None
    assert label_profile(conjugate(f, sigma)).is_graceful
    for t in (0, 1):
        assert reconstruct(expansion_from_labeling(f, sigma, t)) == f
    assert ringel_decompose(f, sigma).is_partition


@settings(max_examples=200, deadline=None)
@given(endofunctions(hi=7), st.data())
def test_antihomomorphism(f, data):
    g = Endofunction(data.draw(st.lists(st.integers(0, len(f) - 1), min_size=len(f), max_size=len(f))))
    assert antihom_check(f, g)


@settings(max_examples=100, deadline=None)
@given(endofunctions(hi=5), st.integers(0, 5))
def test_pseudoinverse_count_by_enumeration(f, k):
    n = len(f)
    brute = sum(1 for g in itertools.product(range(n), repeat=n) if defect(g, f) <= k)
    assert k_pseudoinverse_count(f, k) == brute
