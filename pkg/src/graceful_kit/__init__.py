"""Graceful labelings of functional directed graphs on Z_n."""

from .core import (
    Endofunction,
    FunctionalGraph,
    automorphism_group,
    conjugate,
    fixed_point_swaps,
    functional_graph,
    iterate,
    order,
)
from .enumerate import TreeIterator, all_endofunctions, all_permutations, cycle_union, prufer_decode
from .labeling import (
    find_graceful_labeling,
    grl,
    is_gracefully_labeled,
    max_distinct_labels,
    min_distinct_labels,
    search_graceful_labeling,
)
from .expansion import ExpansionBasis, enumerate_bases, expansion_from_labeling, reconstruct
from .algebra import FactoredPolynomial, LinearForm, certify_graceful, det_v_check, minimal_lcm
from .monoid import canonical_pseudoinverse, k_pseudoinverse
from .decomposition import ringel_decompose

__version__ = "0.1.0"
