"""Command line front end: count, verify, trace, render.

Exit codes: 0 success, 1 at least one verification check failed, 2 the
spec does not describe a region, 3 an exact computation was refused for
size.  The condensation memo can persist between runs in the directory
named by --cache or the DOUGLASTILE_CACHE_DIR environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, condensation, regions, shuffle
from .condensation import condensation_count, stats_deltas, verify_kuo
from .matching import SizeLimit, count_matchings, dual_graph, greedy_matching
from .regions import RegionSpec, SpecInvalid
from .render import ascii_region, svg_region

__all__ = ["main", "cmd_count", "cmd_verify", "cmd_trace", "cmd_render"]

_ENGINES = ("brute", "condense", "shuffle", "formula")
_CACHE_ENV = "DOUGLASTILE_CACHE_DIR"
_CACHE_FILE = "condense-memo.json"


def _comma_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _spec_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=int, help="side length")
    parser.add_argument(
        "--d", type=_comma_ints, help="comma-separated layer distances"
    )
    parser.add_argument("--spec", help="path to a spec JSON file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="douglastile",
        description="Exact domino-tiling counts for layered diagonal regions",
    )
    parser.add_argument(
        "--version", action="version", version=f"douglastile {__version__}"
    )
    parser.add_argument(
        "--cache", help="directory for the persistent condensation memo"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="print one matching count")
    _spec_options(count)
    count.add_argument("--engine", choices=_ENGINES, default="formula")
    count.set_defaults(func=cmd_count)

    verify = sub.add_parser(
        "verify", help="cross-check all engines, one JSON line per spec"
    )
    _spec_options(verify)
    verify.add_argument(
        "--sweep",
        type=int,
        metavar="MAXT",
        help="verify every composition with total at most MAXT",
    )
    verify.set_defaults(func=cmd_verify)

    trace = sub.add_parser(
        "trace", help="walk the condensation recurrence, one JSON line per spec"
    )
    _spec_options(trace)
    trace.add_argument(
        "--kuo-max",
        type=int,
        default=8,
        metavar="T",
        help="attach the six deletion counts up to this total",
    )
    trace.set_defaults(func=cmd_trace)

    render = sub.add_parser("render", help="draw a region")
    _spec_options(render)
    render.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    render.add_argument(
        "--matching",
        choices=("sample-by-forced-order",),
        help="overlay one perfect matching (svg only)",
    )
    render.add_argument("--out", help="write to a file instead of stdout")
    render.set_defaults(func=cmd_render)
    return parser


def _resolve_spec(args) -> RegionSpec:
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            return regions.spec_from_json(fh.read())
    if args.d is None:
        raise SpecInvalid(regions.REASON_POSITIVE)
    if args.a is None:
        # the side is determined by the distances; borrow it
        return regions.find_region(args.d).spec
    return RegionSpec(args.a, args.d)


def _cache_dir(args) -> str | None:
    return args.cache or os.environ.get(_CACHE_ENV)


def _load_memo(cache_dir: str | None) -> dict[RegionSpec, int]:
    if not cache_dir:
        return {}
    path = os.path.join(cache_dir, _CACHE_FILE)
    if not os.path.exists(path):
        return {}
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    memo = {}
    for key, value in raw.items():
        side_text, d_text = key.split(":")
        spec = RegionSpec(
            int(side_text), tuple(int(v) for v in d_text.split(","))
        )
        memo[spec] = int(value)
    return memo


def _save_memo(cache_dir: str | None, memo: dict[RegionSpec, int]) -> None:
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    raw = {
        f"{spec.side}:{','.join(str(v) for v in spec.distances)}": str(count)
        for spec, count in sorted(
            memo.items(), key=lambda kv: (kv[0].side, kv[0].distances)
        )
    }
    path = os.path.join(cache_dir, _CACHE_FILE)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(raw, fh, indent=0, sort_keys=True)


def cmd_count(args) -> int:
    spec = _resolve_spec(args)
    if args.engine == "brute":
        result = count_matchings(dual_graph(regions.build_region(spec.side, spec.distances)))
    elif args.engine == "condense":
        cache = _cache_dir(args)
        memo = _load_memo(cache)
        result = condensation_count(spec, memo)
        _save_memo(cache, memo)
    elif args.engine == "shuffle":
        result = shuffle.shuffle_count(spec)
    else:
        result = regions.formula_count(
            regions.build_region(spec.side, spec.distances)
        )
    print(result)
    return 0


def _verify_one(spec: RegionSpec, memo: dict[RegionSpec, int]) -> dict:
    timings: dict[str, float] = {}

    def timed(name, fn):
        start = time.perf_counter()
        out = fn()
        timings[name] = time.perf_counter() - start
        return out

    region = regions.build_region(spec.side, spec.distances)
    stats = regions.structural_stats(region)
    total = spec.total

    counts: dict[str, str | None] = {}
    formula = timed("formula", lambda: regions.formula_count(region))
    counts["formula"] = str(formula)
    counts["shuffle"] = str(timed("shuffle", lambda: shuffle.shuffle_count(spec)))
    counts["condense"] = str(
        timed("condense", lambda: condensation_count(spec, memo))
    )
    graph = dual_graph(region)
    try:
        counts["brute"] = str(timed("brute", lambda: count_matchings(graph)))
    except SizeLimit:
        counts["brute"] = None
        timings.pop("brute", None)

    exponent = shuffle.shuffle_exponent(spec)
    checks: dict[str, bool | None] = {
        "line_counts": (
            spec.side
            == stats.black_square_lines + stats.down_triangle_lines
            and stats.width
            == stats.black_square_lines + stats.up_triangle_lines
            and stats.up_triangle_lines + stats.down_triangle_lines
            == len(spec.distances) - 1
            and 2 * stats.black_lines == total + len(spec.distances) - 1
        ),
        "exponent_identity": exponent
        == stats.regular_cells - stats.width * (stats.width + 1) // 2,
        "engines_agree": len(
            {value for value in counts.values() if value is not None}
        )
        == 1,
    }
    if total <= 8:
        checks["kuo"] = timed("kuo", lambda: verify_kuo(graph))
    else:
        checks["kuo"] = None
    try:
        checks["case_deltas_balance"] = stats_deltas(spec)["balance_ok"]
    except (condensation.BaseCase, ValueError):
        checks["case_deltas_balance"] = None

    report = {
        "tool": f"douglastile {__version__}",
        "spec": {"a": spec.side, "d": list(spec.distances)},
        "stats": {
            "black_square_lines": stats.black_square_lines,
            "up_triangle_lines": stats.up_triangle_lines,
            "down_triangle_lines": stats.down_triangle_lines,
            "black_lines": stats.black_lines,
            "width": stats.width,
            "regular_cells": stats.regular_cells,
            "total": total,
        },
        "counts": counts,
        "checks": checks,
        "ok": all(value is not False for value in checks.values()),
        "timings": {name: round(value, 6) for name, value in timings.items()},
    }
    return report


def _kuo_block(spec: RegionSpec, kuo_max: int) -> dict | None:
    if spec.total > kuo_max:
        return None
    graph = dual_graph(regions.build_region(spec.side, spec.distances))
    try:
        quad = condensation.pick_corners(graph)
    except condensation.CornersNotFound:
        return None
    counts = condensation.kuo_counts(graph, quad)
    identity_ok = (
        counts["full"] * counts["minus_all"]
        == counts["minus_west_south"] * counts["minus_east_north"]
        + counts["minus_north_west"] * counts["minus_south_east"]
    )
    return {
        "counts": {name: str(value) for name, value in counts.items()},
        "identity_ok": identity_ok,
    }


def cmd_trace(args) -> int:
    spec = _resolve_spec(args)
    regions.build_region(spec.side, spec.distances)
    cache = _cache_dir(args)
    memo = _load_memo(cache)
    for record in condensation.trace_recurrence(spec, memo):
        node = dict(record)
        node_spec = RegionSpec(node["spec"]["a"], tuple(node["spec"]["d"]))
        node["count"] = str(node["count"])
        if "sub_counts" in node:
            node["sub_counts"] = [str(c) for c in node["sub_counts"]]
        node["kuo"] = _kuo_block(node_spec, args.kuo_max)
        print(json.dumps(node, sort_keys=True))
    _save_memo(cache, memo)
    return 0


def cmd_verify(args) -> int:
    cache = _cache_dir(args)
    memo = _load_memo(cache)
    failed = passed = 0
    if args.sweep is not None:
        compositions = valid = 0
        for total in range(1, args.sweep + 1):
            for distances in regions.compositions(total):
                compositions += 1
                try:
                    region = regions.find_region(distances)
                except SpecInvalid:
                    continue
                valid += 1
                report = _verify_one(region.spec, memo)
                print(json.dumps(report, sort_keys=True))
                if report["ok"]:
                    passed += 1
                else:
                    failed += 1
        summary = {
            "summary": {
                "compositions": compositions,
                "valid": valid,
                "invalid": compositions - valid,
                "passed": passed,
                "failed": failed,
            }
        }
    else:
        report = _verify_one(_resolve_spec(args), memo)
        print(json.dumps(report, sort_keys=True))
        passed, failed = (1, 0) if report["ok"] else (0, 1)
        summary = {"summary": {"passed": passed, "failed": failed}}
    _save_memo(cache, memo)
    print(json.dumps(summary, sort_keys=True))
    return 0 if failed == 0 else 1


def cmd_render(args) -> int:
    spec = _resolve_spec(args)
    region = regions.build_region(spec.side, spec.distances)
    if args.matching and args.format != "svg":
        print("--matching needs --format svg", file=sys.stderr)
        return 2
    if args.format == "ascii":
        text = ascii_region(region)
    else:
        matching = None
        if args.matching:
            matching = greedy_matching(dual_graph(region))
        text = svg_region(region, matching)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecInvalid as exc:
        print(f"invalid spec: {exc.reason}", file=sys.stderr)
        return 2
    except SizeLimit as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return 3
