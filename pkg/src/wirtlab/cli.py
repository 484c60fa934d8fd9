"""Command line front end; a thin client over the library modules.

Exit codes: 0 success, 1 validation or invariant failure, 2 resource limit.
Searches contain no randomness, so output bytes are deterministic for a
fixed input and version.  WIRTLAB_LIMITS (comma-separated key=value pairs,
e.g. "omega_strands=64,welded_visited=1000000") overrides resource caps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import reports
from .errors import ResourceLimit, WirtlabError

LIMIT_KEYS = ("omega_strands", "welded_visited", "coxeter_word")


def read_limits(env: str | None = None) -> dict[str, int]:
    raw = os.environ.get("WIRTLAB_LIMITS", "") if env is None else env
    limits: dict[str, int] = {}
    if not raw.strip():
        return limits
    for chunk in raw.split(","):
        if not chunk.strip():
            continue
        key, _, value = chunk.partition("=")
        key = key.strip()
        if key not in LIMIT_KEYS:
            raise WirtlabError(
                f"unknown limit {key!r} in WIRTLAB_LIMITS (known: {', '.join(LIMIT_KEYS)})"
            )
        try:
            limits[key] = int(value)
        except ValueError as exc:
            raise WirtlabError(f"bad limit value for {key!r}") from exc
    return limits


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _pairs(text: str) -> dict[str, str]:
    """Parse "key=value,key=value" with values possibly containing spaces."""
    out: dict[str, str] = {}
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise WirtlabError(f"expected key=value, got {chunk!r}")
        out[key.strip()] = value.strip()
    return out


def _render_text(report: dict) -> str:
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(report: dict, args: argparse.Namespace) -> None:
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2)
    else:
        text = _render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wirtlab",
        description="Bridge number and meridional rank computations on knot diagrams",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--out", help="write the report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate a Gauss code")
    p.add_argument("code")

    p = sub.add_parser("build", help="build a family diagram")
    fam = p.add_subparsers(dest="family", required=True)
    torus = fam.add_parser("torus")
    torus.add_argument("--p", type=int, required=True)
    torus.add_argument("--n", type=int, default=1)
    pretzel = fam.add_parser("pretzel")
    pretzel.add_argument("--q", required=True, help="comma-separated column weights")
    chain = fam.add_parser("chain")
    chain.add_argument("--weights", required=True, help="comma-separated half-twists")

    p = sub.add_parser("omega", help="Wirtinger number by seed search")
    p.add_argument("code")

    p = sub.add_parser("colorable", help="k-colorability")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("code")

    p = sub.add_parser("welded-search", help="bounded move-graph search")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--cap", type=int, required=True, help="crossing cap")
    p.add_argument("code")

    p = sub.add_parser("presentation", help="Wirtinger presentation of a code")
    p.add_argument("code")

    p = sub.add_parser("twist-spin", help="central-power quotient of a presentation")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--axis")
    p.add_argument("presentation", help="path to a presentation JSON file")

    p = sub.add_parser("connect", help="amalgamated sum of presentations")
    p.add_argument("presentations", nargs="+", help="presentation JSON files")

    p = sub.add_parser("verify", help="check a homomorphism on a presentation")
    p.add_argument("--target", choices=("coxeter", "alternating"), required=True)
    p.add_argument("--graph", help="graph JSON file (coxeter target)")
    p.add_argument("--degree", type=int, help="degree (alternating target)")
    p.add_argument(
        "--images",
        required=True,
        help='generator images, e.g. "x1=a b a,x2=b" or "x1=(1 2 3),x2=(3 4 5)"',
    )
    p.add_argument("presentation", help="path to a presentation JSON file")

    p = sub.add_parser("verify-coxeter", help="reflection labeling of a diagram")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--labels", required=True, help='seed labels "1=a,2=b"')
    p.add_argument("--allow-degenerate", action="store_true")
    p.add_argument("code")

    p = sub.add_parser("verify-alternating", help="cycle labeling of a diagram")
    p.add_argument("--labels", required=True, help='seed labels "1=(1 2 3),4=(3 4 5)"')
    p.add_argument("--p", type=int, required=True, help="cycle length")
    p.add_argument("--m", type=int, help="degree (inferred when omitted)")
    p.add_argument("code")

    p = sub.add_parser("nakanishi", help="module generator bound mod p")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--twist", type=int)
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("code")

    p = sub.add_parser("trisect", help="validate trisection parameters")
    p.add_argument("b", type=int)
    p.add_argument("c1", type=int)
    p.add_argument("c2", type=int)
    p.add_argument("c3", type=int)
    p.add_argument("--chi", type=int, required=True)

    p = sub.add_parser("bounds", help="tube bounds ledger for a diagram")
    p.add_argument("--rank", type=int, help="verified quotient rank")
    p.add_argument("--euler", type=int, default=0)
    p.add_argument("code")

    p = sub.add_parser("volume", help="volume bound arithmetic")
    p.add_argument("--tw", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--assert-hypotheses", action="store_true")

    p = sub.add_parser("batch", help="omega for every code in a manifest")
    p.add_argument("manifest", help="file with one code per line")

    return parser


def run(args: argparse.Namespace) -> dict:
    limits = read_limits()
    strand_cap = limits.get("omega_strands")
    visited_cap = limits.get("welded_visited")
    if args.command == "parse":
        return reports.parse_report(args.code)
    if args.command == "build":
        if args.family == "torus":
            return reports.build_report("torus", p=args.p, n=args.n)
        if args.family == "pretzel":
            return reports.build_report("pretzel", q=args.q.split(","))
        return reports.build_report("chain", weights=args.weights.split(","))
    if args.command == "omega":
        return reports.omega_report(args.code, strand_cap)
    if args.command == "colorable":
        return reports.colorable_report(args.code, args.k, strand_cap)
    if args.command == "welded-search":
        return reports.welded_search_report(args.code, args.budget, args.cap, visited_cap)
    if args.command == "presentation":
        return reports.presentation_report(args.code)
    if args.command == "twist-spin":
        payload = _load_json(args.presentation)
        return reports.twist_spin_report(
            payload.get("presentation", payload), args.m, args.axis
        )
    if args.command == "connect":
        payloads = [_load_json(path) for path in args.presentations]
        return reports.connect_report([p.get("presentation", p) for p in payloads])
    if args.command == "verify":
        payload = _load_json(args.presentation)
        graph = _load_json(args.graph) if args.graph else None
        return reports.verify_report(
            payload.get("presentation", payload),
            args.target,
            _pairs(args.images),
            graph_json=graph,
            degree=args.degree,
        )
    if args.command == "verify-coxeter":
        return reports.verify_coxeter_report(
            args.code,
            _load_json(args.graph),
            _pairs(args.labels),
            require_surjective=not args.allow_degenerate,
        )
    if args.command == "verify-alternating":
        return reports.verify_alternating_report(
            args.code, _pairs(args.labels), args.p, args.m
        )
    if args.command == "nakanishi":
        return reports.nakanishi_report(args.code, args.p, args.twist, args.copies)
    if args.command == "trisect":
        return reports.trisect_report(args.b, args.c1, args.c2, args.c3, args.chi)
    if args.command == "bounds":
        return reports.bounds_report(args.code, args.rank, args.euler)
    if args.command == "volume":
        return reports.volume_report(args.tw, args.genus, args.assert_hypotheses)
    if args.command == "batch":
        with open(args.manifest, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
        return reports.batch_report(lines)
    raise WirtlabError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except ResourceLimit as exc:
        print(json.dumps({"error": "ResourceLimit", "message": str(exc)}), file=sys.stderr)
        return 2
    except WirtlabError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    except OSError as exc:
        print(json.dumps({"error": "IOError", "message": str(exc)}), file=sys.stderr)
        return 1
    _emit(report, args)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
