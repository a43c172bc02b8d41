#!/usr/bin/env python3
"""Sweep every valid region up to a total size, cross-check all engines,
and write a JSON-lines report.

Example:
    python3 scripts/sweep_report.py --max-total 8 --out sweep8.jsonl
"""

import argparse
import json
import sys
import time

from douglastile.condensation import condensation_count, verify_kuo
from douglastile.matching import SizeLimit, count_matchings, dual_graph
from douglastile.regions import (
    build_region,
    enumerate_valid_regions,
    formula_count,
    structural_stats,
)
from douglastile.shuffle import shuffle_count, shuffle_exponent


def sweep(max_total: int, kuo_max: int):
    memo = {}
    for region in enumerate_valid_regions(max_total):
        spec = region.spec
        stats = structural_stats(region)
        t0 = time.perf_counter()
        counts = {
            "formula": formula_count(region),
            "condense": condensation_count(spec, memo),
            "shuffle": shuffle_count(spec),
        }
        try:
            counts["brute"] = count_matchings(dual_graph(region))
        except SizeLimit:
            counts["brute"] = None
        kuo = None
        if spec.total <= kuo_max:
            kuo = verify_kuo(dual_graph(region))
        ok = (
            len({v for v in counts.values() if v is not None}) == 1
            and kuo is not False
        )
        yield {
            "spec": {"a": spec.side, "d": list(spec.distances)},
            "total": spec.total,
            "width": stats.width,
            "exponent": shuffle_exponent(spec),
            "counts": {
                name: None if v is None else str(v)
                for name, v in counts.items()
            },
            "kuo": kuo,
            "ok": ok,
            "seconds": round(time.perf_counter() - t0, 6),
        }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-total", type=int, default=8)
    parser.add_argument(
        "--kuo-max",
        type=int,
        default=8,
        metavar="T",
        help="run the four-point identity check up to this total",
    )
    parser.add_argument("--out", help="JSON-lines output path")
    args = parser.parse_args(argv)

    sink = open(args.out, "w", encoding="utf-8") if args.out else None
    rows = failures = 0
    t0 = time.perf_counter()
    try:
        for record in sweep(args.max_total, args.kuo_max):
            rows += 1
            if not record["ok"]:
                failures += 1
            line = json.dumps(record, sort_keys=True)
            if sink:
                sink.write(line + "\n")
            spec = record["spec"]
            print(
                f"T={record['total']:2d} a={spec['a']:2d} "
                f"d={','.join(map(str, spec['d'])):<18s} "
                f"2^{record['exponent']:<3d} "
                f"{'ok' if record['ok'] else 'MISMATCH'}"
            )
    finally:
        if sink:
            sink.close()
    elapsed = time.perf_counter() - t0
    print(
        f"{rows} regions, {failures} failures, {elapsed:.1f}s",
        file=sys.stderr,
    )
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
