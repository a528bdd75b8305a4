"""Walk through the main objects on small inputs.

Run with ``python3 demos/tour.py``.
"""

from __future__ import annotations

from graceful_kit.algebra import certify_graceful
from graceful_kit.core import Endofunction, conjugate, functional_graph
from graceful_kit.decomposition import ringel_decompose
from graceful_kit.expansion import enumerate_bases, expansion_from_labeling, reconstruct
from graceful_kit.labeling import grl, label_profile, max_distinct_labels, search_graceful_labeling
from graceful_kit.monoid import canonical_pseudoinverse, k_pseudoinverse, shift_down


def main() -> None:
    path = Endofunction([0, 0, 1, 2])
    print("path f =", path, "cycles", functional_graph(path).cycle_lengths)

    sigma = search_graceful_labeling(path)
    h = conjugate(path, sigma)
    print("graceful relabeling sigma =", sigma, "gives", h, "labels", label_profile(h).labels)
    print("distinct gracefully labeled copies:", [str(g) for g in grl(path)])

    basis = expansion_from_labeling(path, sigma, 0)
    print("expansion gamma =", basis.gamma, "sign =", basis.sign, "reconstructs", reconstruct(basis))
    print("bases per n:", {n: len(enumerate_bases(n)) for n in range(3, 9)})

    report = certify_graceful(path)
    print("certificate verdict", report.graceful, "witness", report.witness)

    identity = Endofunction.identity(3)
    print("identity on Z_3 graceful?", certify_graceful(identity).graceful,
          "max labels", max_distinct_labels(identity))

    f = shift_down(5)
    print("1-pseudoinverses of", f, "count", len(k_pseudoinverse(f, 1)))
    print("canonical pseudoinverse", sorted(str(g) for g in canonical_pseudoinverse(f)))

    dec = ringel_decompose(path, sigma)
    print("K_7 split into", len(dec.shifts), "copies, exact partition:", dec.is_partition)
    for shift in dec.shifts:
        print("  ", " ".join(f"{u}-{v}" for u, v in shift))


if __name__ == "__main__":
    main()
