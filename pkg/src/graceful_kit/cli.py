"""Command-line entry point.

Functions are passed as comma-separated image lists (``0,0,1,2``) and
structured output is JSON with sorted keys, so runs are byte-for-byte
repeatable.  Exit codes: 0 found/pass, 1 not graceful or empty, 2 usage
error, 3 sweep violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import certify_graceful
from .core import Endofunction
from .decomposition import ringel_decompose
from .enumerate import TreeIterator, all_endofunctions, all_permutations, parse_range
from .expansion import basis_count, enumerate_bases, expansion_from_labeling
from .labeling import (
    find_graceful_labeling,
    grl_representatives,
    label_profile,
    labeling_report,
    search_graceful_labeling,
)
from .monoid import canonical_pseudoinverse, k_pseudoinverse
from .theorems import (
    ResultStore,
    SweepReport,
    verify_composition_lemma,
    verify_cycle_corollaries,
    verify_main_theorem,
    verify_prop17,
)

EXIT_OK, EXIT_ABSENT, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    function: str | None = None
    shard: str | None = None
    output: str | None = None
    format: str = "json"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            n=getattr(args, "n", None),
            function=getattr(args, "function", None),
            shard=getattr(args, "shard", None),
            output=getattr(args, "output", None),
            format=getattr(args, "format", "json"),
        )


class UsageError(Exception):
    pass


def _fn(text: str) -> Endofunction:
    try:
        return Endofunction.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(payload, out) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_output(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args, out) -> int:
    f = _fn(args.function)
    report = labeling_report(f)
    profile = label_profile(f)
    report["labels"] = sorted(set(profile.labels))
    report["labeled_graceful"] = profile.is_graceful
    _emit(report, out)
    return EXIT_OK if report["graceful"] else EXIT_ABSENT


def cmd_search(args, out) -> int:
    f = _fn(args.function)
    sigma = find_graceful_labeling(f) if args.lex else search_graceful_labeling(f)
    _emit({"f": str(f), "sigma": str(sigma) if sigma is not None else None}, out)
    return EXIT_OK if sigma is not None else EXIT_ABSENT


def cmd_grl(args, out) -> int:
    f = _fn(args.function)
    reps = grl_representatives(f)
    _emit({"f": str(f), "size": len(reps),
           "graphs": [{"h": str(h), "sigma": str(s)} for h, s in reps.items()]}, out)
    return EXIT_OK if reps else EXIT_ABSENT


def cmd_bases(args, out) -> int:
    if args.n <= 2:
        raise UsageError("bases are counted for n > 2")
    bases = enumerate_bases(args.n)
    _emit({"n": args.n, "count": len(bases), "formula": basis_count(args.n),
           "bases": [str(b) for b in bases]}, out)
    return EXIT_OK


def cmd_expand(args, out) -> int:
    f, sigma = _fn(args.function), _fn(args.sigma)
    if len(f) != len(sigma) or not sigma.is_bijection():
        raise UsageError("sigma must be a bijection of the same size as f")
    try:
        basis = expansion_from_labeling(f, sigma, args.t)
    except ValueError as exc:
        _emit({"f": str(f), "error": str(exc)}, out)
        return EXIT_ABSENT
    out.write(json.dumps(json.loads(basis.to_json()), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_certify(args, out) -> int:
    f = _fn(args.function)
    report = certify_graceful(f)
    _emit({"f": str(f), "graceful": report.graceful,
           "witness": list(report.witness) if report.witness else None,
           "points_examined": report.points_examined,
           "vanishing_factors": report.vanishing_factors}, out)
    return EXIT_OK if report.graceful else EXIT_ABSENT


def cmd_pinv(args, out) -> int:
    f = _fn(args.function)
    if args.k is None:
        members = canonical_pseudoinverse(f)
    else:
        if args.k < 0:
            raise UsageError("k must be non-negative")
        try:
            members = k_pseudoinverse(f, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    _emit({"f": str(f), "k": args.k, "size": len(members),
           "members": sorted(str(g) for g in members)}, out)
    return EXIT_OK if members else EXIT_ABSENT


def cmd_verify(args, out) -> int:
    kwargs = {"shard": args.shard, "jobs": args.jobs, "store": ResultStore.from_env()}
    try:
        if args.claim == "lemma":
            report = verify_composition_lemma(args.n, args.universe or "trees", **kwargs)
        elif args.claim == "main":
            report = verify_main_theorem(args.n, args.universe or "trees", **kwargs)
        elif args.claim == "prop17":
            report = verify_prop17(args.n, args.universe or "trees", **kwargs)
        else:
            report = verify_cycle_corollaries(n_max=args.n, s_max=args.s_max, t_max=args.t_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = _render_report(report, args.format)
    out.write(text)
    if not report.passed:
        _write_output(args.output, report.to_json() + "\n")
        return EXIT_VIOLATION
    _write_output(args.output, text)
    return EXIT_OK


def _render_report(report: SweepReport, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("n", "universe", "f", "predicate", "pass", "witness"))
        for v in report.violations:
            writer.writerow((report.n, report.universe, v.f, v.predicate, f"fail:{v.detail}", v.witness))
        return buf.getvalue()
    if fmt == "text":
        status = "pass" if report.passed else f"{len(report.violations)} violations"
        return (f"{report.predicate} n={report.n} {report.universe}: "
                f"{report.instances_checked} checked, {report.vacuous} vacuous, {status}\n")
    return report.to_json() + "\n"


def cmd_decompose(args, out) -> int:
    f, sigma = _fn(args.function), _fn(args.sigma)
    try:
        report = ringel_decompose(f, sigma)
    except ValueError as exc:
        _emit({"f": str(f), "error": str(exc)}, out)
        return EXIT_ABSENT
    text = report.to_edge_list()
    if args.output:
        report.write(args.output)
    if args.format == "text":
        out.write(text)
    else:
        _emit({"n": report.n, "is_partition": report.is_partition,
               "edges": report.edge_count, "missing": report.missing,
               "duplicated": report.duplicated,
               "shifts": [[f"{u}-{v}" for u, v in s] for s in report.shifts]}, out)
    return EXIT_OK if report.is_partition else EXIT_VIOLATION


def cmd_gen(args, out) -> int:
    n = args.n
    if n < 1:
        raise UsageError("n must be positive")
    if args.kind == "trees":
        trees = TreeIterator(n)
        stream = trees.shard(parse_range(args.shard, len(trees))) if args.shard else iter(trees)
    else:
        source = all_permutations(n) if args.kind == "perms" else all_endofunctions(n)
        stream = source
        if args.shard:
            total = math.factorial(n) if args.kind == "perms" else n**n
            rng = parse_range(args.shard, total)
            stream = itertools.islice(source, rng.start, rng.stop)
    items = [str(f) for f in stream]
    if args.format == "json":
        _emit(items, out)
    else:
        out.write("".join(line + "\n" for line in items))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graceful-kit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_function(p):
        p.add_argument("-f", "--function", required=True, help="images, e.g. 0,0,1,2")
        return p

    p = with_function(sub.add_parser("check", help="gracefulness and label profile"))
    p.set_defaults(handler=cmd_check)
    p = with_function(sub.add_parser("search", help="find a graceful relabeling"))
    p.add_argument("--lex", action="store_true", help="lexicographically least sigma")
    p.set_defaults(handler=cmd_search)
    p = with_function(sub.add_parser("grl", help="distinct gracefully labeled copies"))
    p.set_defaults(handler=cmd_grl)
    p = sub.add_parser("bases", help="permutation bases of size n")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(handler=cmd_bases)
    p = with_function(sub.add_parser("expand", help="expansion of f under sigma"))
    p.add_argument("--sigma", required=True)
    p.add_argument("-t", type=int, choices=(0, 1), default=0)
    p.set_defaults(handler=cmd_expand)
    p = with_function(sub.add_parser("certify", help="polynomial certificate"))
    p.set_defaults(handler=cmd_certify)
    p = with_function(sub.add_parser("pinv", help="k-pseudoinverse set"))
    p.add_argument("-k", type=int, default=None, help="omit for the canonical set")
    p.set_defaults(handler=cmd_pinv)

    p = sub.add_parser("verify", help="exhaustive sweeps")
    p.add_argument("claim", choices=("lemma", "main", "prop17", "corollaries"))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--universe", choices=("trees", "endofunctions", "permutations", "cycle-unions"))
    p.add_argument("--shard", help="index range k..m of the stream")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="file for the report (violations on failure)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--s-max", type=int, default=1)
    p.add_argument("--t-max", type=int, default=2)
    p.set_defaults(handler=cmd_verify)

    p = with_function(sub.add_parser("decompose", help="cyclic decomposition of K_(2n-1)"))
    p.add_argument("--sigma", required=True)
    p.add_argument("--output", help="edge-list file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("gen", help="list an input stream")
    p.add_argument("kind", choices=("trees", "perms", "functions"))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--shard")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(handler=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args, out)
    except (UsageError, ValueError) as exc:
        print(f"graceful-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
