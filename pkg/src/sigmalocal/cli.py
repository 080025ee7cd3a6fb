"""Command-line interface: ``sigmalocal analyze | verify | witness | corpus``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import closure as cl
from . import sigma_classes as sc
from . import structure as st
from .builders import GroupNameError, from_name
from .corpus import (DEFAULT_FAMILIES, Corpus, CorpusError, GroupFileError, build_corpus,
                     builtin_corpus, load_group_file, save_group_file)
from .lattice import LatticeBoundError
from .perm import PermGroup
from .sigma import BlockSet, SigmaSyntaxError, format_sigma, parse_sigma, pi_of, sigma_of

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_REJECTED_CLAIM = 3
EXIT_UNKNOWN_SUITE = 4
EXIT_BAD_SIGMA = 5
EXIT_CORPUS = 6
EXIT_BAD_GROUP = 7
EXIT_NOT_APPLICABLE = 8


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _sigma(text: str):
    try:
        return parse_sigma(text)
    except SigmaSyntaxError as e:
        raise _Fail(EXIT_BAD_SIGMA, f"bad sigma partition: {e}") from None


def _corpus(spec: str) -> Corpus:
    if spec in ("default", "extended", "small"):
        return builtin_corpus(spec)
    if not os.path.exists(spec):
        raise _Fail(EXIT_CORPUS, f"corpus not found: {spec}")
    try:
        corpus = load_group_file(spec)
        corpus.groups()
    except (GroupFileError, CorpusError, OSError, ValueError) as e:
        raise _Fail(EXIT_CORPUS, f"invalid corpus {spec}: {e}") from None
    return corpus


def _group(spec: str) -> PermGroup:
    """A group name, or ``path`` / ``path:id`` of a group file."""
    path, _, gid = spec.partition(":") if not os.path.exists(spec) else (spec, "", "")
    if os.path.exists(path) and os.path.isfile(path):
        try:
            corpus = load_group_file(path)
            groups = corpus.groups()
        except (GroupFileError, CorpusError, ValueError) as e:
            raise _Fail(EXIT_CORPUS, f"invalid group file {path}: {e}") from None
        if not groups:
            raise _Fail(EXIT_CORPUS, f"{path} holds no groups")
        if not gid:
            return groups[0][1]
        for k, G in groups:
            if k == gid:
                return G
        raise _Fail(EXIT_BAD_GROUP, f"no record {gid!r} in {path}")
    try:
        return from_name(spec)
    except GroupNameError as e:
        raise _Fail(EXIT_BAD_GROUP, str(e)) from None


def _yes(v: bool) -> str:
    return "true" if v else "false"


def analyze_lines(G: PermGroup, sigma) -> list[str]:
    S = st.as_section(G)
    n = S.order
    blocks = sorted(sigma_of(n, sigma), key=lambda b: b.sort_key())
    out = [
        f"group: {G.name or '?'} (degree {G.degree})",
        f"order: {n}",
        f"sigma: {format_sigma(sigma)}",
        f"π(G): {{{', '.join(map(str, sorted(pi_of(n))))}}}" if n > 1 else "π(G): {}",
        f"σ(G): {{{', '.join(str(b) for b in blocks)}}}",
        f"subgroups: {S.subgroups().size}",
        f"normal subgroups: {S.normal_subgroups().size}",
        f"chief factor orders: {S.chief_factor_orders()}",
    ]
    for b in blocks:
        k = sc._O_prime_block_id(S, b, sigma)
        out.append(f"O_{{σi',σi}} for {b}: order {S.rel_order(k)}")
    out.append(f"F_σ: order {S.rel_order(sc._F_sigma_id(S, sigma))}")
    out += [
        f"abelian: {_yes(st.is_abelian(S))}",
        f"nilpotent: {_yes(st.is_nilpotent(S))}",
        f"supersoluble: {_yes(st.is_supersoluble(S))}",
        f"metanilpotent: {_yes(st.is_metanilpotent(S))}",
        f"soluble: {_yes(st.is_soluble(S))}",
        f"σ-primary: {_yes(sc.is_sigma_primary(S, sigma))}",
        f"σ-soluble: {_yes(sc.is_sigma_soluble(S, sigma))}",
        f"σ-nilpotent: {_yes(sc.is_sigma_nilpotent(S, sigma))}",
        f"meta-σ-nilpotent: {_yes(sc.is_meta_sigma_nilpotent(S, sigma))}",
    ]
    for b in blocks:
        out.append(f"{b}-closed: {_yes(sc.is_pi_closed(S, BlockSet(frozenset([b])), sigma))}")
    return out


def cmd_analyze(args) -> int:
    sigma = _sigma(args.sigma)
    G = _group(args.group)
    try:
        lines = analyze_lines(G, sigma)
    except LatticeBoundError as e:
        raise _Fail(EXIT_NOT_APPLICABLE, str(e)) from None
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    sigma = _sigma(args.sigma)
    suites = list(cl.SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in cl.SUITES:
        raise _Fail(EXIT_UNKNOWN_SUITE,
                    f"unknown suite {args.suite!r}; choose from: {', '.join(cl.SUITES)}, all")
    corpus = _corpus(args.corpus)
    reports = []
    for suite in suites:
        try:
            reps = cl.verify_theorem(suite, sigma, corpus, t=args.t, timeout=args.timeout)
        except cl.SuiteError as e:
            if args.suite == "all":
                print(f"[{suite}] not applicable: {e.args[0]}")
                continue
            raise _Fail(EXIT_NOT_APPLICABLE, e.args[0]) from None
        for r in reps:
            if args.details:
                for line in r.lines()[:-1]:
                    print(f"[{suite}] {line}")
            print(f"[{suite}] {r.summary()}")
            reports.append({"suite": suite, **r.to_dict()})
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports if len(reports) != 1 else reports[0], fh, indent=2)
            fh.write("\n")
    if any(r["rejected_claims"] for r in reports):
        print("claimed counterexample rejected on re-validation", file=sys.stderr)
        return EXIT_REJECTED_CLAIM
    if any(r["counterexamples"] for r in reports):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_witness(args) -> int:
    sigma = _sigma(args.sigma)
    try:
        w = cl.non_sigma_local_witness(sigma)
    except ValueError as e:
        raise _Fail(EXIT_NOT_APPLICABLE, str(e)) from None
    print("\n".join(w.lines()))
    return EXIT_OK if all(w.assertions().values()) else EXIT_COUNTEREXAMPLE


def cmd_corpus_build(args) -> int:
    families = args.families.split(",") if args.families else None
    try:
        corpus = build_corpus(args.max_order, families, args.ingest or ())
    except (CorpusError, GroupFileError, OSError) as e:
        raise _Fail(EXIT_CORPUS, str(e)) from None
    save_group_file(args.out, corpus)
    print(f"wrote {len(corpus)} groups to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sigmalocal",
                                description="Sigma-partitions, group classes and closure checks "
                                            "on small permutation groups.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="structural report for one group")
    a.add_argument("group", help="group name (S4, C2wrC3, Q8xC3, ...) or group file[:id]")
    a.add_argument("--sigma", default="sigma1")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a closure suite over a corpus")
    v.add_argument("suite", help="suite name, or 'all'")
    v.add_argument("--sigma", default="sigma1")
    v.add_argument("--corpus", default="default",
                   help="group file, or builtin: default, extended, small")
    v.add_argument("--t", type=int, default=None, help="override the witness size")
    v.add_argument("--json", default=None, help="write the report(s) as JSON")
    v.add_argument("--timeout", type=float, default=cl.DEFAULT_TIMEOUT,
                   help="per-group time limit in seconds")
    v.add_argument("--details", action="store_true", help="one line per group")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="constructed witnesses")
    w.add_argument("kind", choices=["non-sigma-local"])
    w.add_argument("--sigma", required=True)
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("corpus", help="corpus files")
    csub = c.add_subparsers(dest="corpus_command", required=True)
    cb = csub.add_parser("build")
    cb.add_argument("--max-order", type=int, default=120)
    cb.add_argument("--out", required=True)
    cb.add_argument("--families", default=None,
                    help="comma-separated, default: " + ",".join(DEFAULT_FAMILIES))
    cb.add_argument("--ingest", action="append", help="group file to add (repeatable)")
    cb.set_defaults(func=cmd_corpus_build)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
