"""Exhaustive sweeps over all trees up to a size, printing one summary each.

Run with ``python3 demos/sweeps.py [n_max]`` (default 7).  The descent sweep
reports the trees where no leaf removal reaches a constant map.
"""

from __future__ import annotations

import sys

from graceful_kit.theorems import verify_composition_lemma, verify_main_theorem, verify_prop17


def main(n_max: int = 7) -> None:
    for n in range(2, n_max + 1):
        for name, run in (("graceful", verify_main_theorem), ("lemma", verify_composition_lemma),
                          ("descent", verify_prop17)):
            report = run(n, "trees")
            line = f"n={n} {name:8s} checked={report.instances_checked:5d} violations={len(report.violations)}"
            if report.violations:
                line += f" first={report.violations[0].f}"
            print(line)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 7)
