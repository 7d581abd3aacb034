"""Regenerate the frozen net-oracle reference values.

The calibration checks compare the fast estimators against net-oracle
values that were computed once and committed as package data at
``src/schatten_widths/data/oracle_battery.json``.  This script recomputes
that file.  Run it only when the oracle or the battery itself changes,
and expect a few minutes of runtime:

    python3 tests/fixtures/regenerate.py
"""
from __future__ import annotations

import argparse
import json
import pathlib
import time

from schatten_widths.core import EmbeddingSpec
from schatten_widths.exponents import format_exponent
from schatten_widths.oracle import DEFAULT_ORACLE_SEED, net_oracle

# (kind, p, q, n, part of the 12-point calibration battery?)
BATTERY = [
    ("kolmogorov", "1", "2", 2, True),
    ("kolmogorov", "1", "2", 3, True),
    ("kolmogorov", "1", "2", 4, True),
    ("kolmogorov", "1/2", "2", 3, True),
    ("kolmogorov", "inf", "2", 2, True),
    ("kolmogorov", "2", "1", 3, True),
    ("kolmogorov", "1", "inf", 2, True),
    ("kolmogorov", "4/3", "2", 3, True),
    ("approx", "2", "inf", 4, True),
    ("approx", "2", "inf", 2, True),
    ("approx", "1", "2", 3, True),
    ("approx", "inf", "2", 2, True),
    # extra frozen points exercised by the unit tests only
    ("gelfand", "2", "4", 2, False),
    ("gelfand", "1/2", "1", 2, False),
    ("kolmogorov", "2", "2", 3, False),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--h", type=float, default=0.05, help="net resolution")
    parser.add_argument(
        "--seed", type=int, default=DEFAULT_ORACLE_SEED, help="sampling seed"
    )
    parser.add_argument(
        "--output",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parents[2]
        / "src"
        / "schatten_widths"
        / "data"
        / "oracle_battery.json",
        help="where to write the JSON fixture",
    )
    args = parser.parse_args()

    points = []
    total = 0.0
    for kind, p, q, n, in_battery in BATTERY:
        spec = EmbeddingSpec(p, q, 2, n)
        start = time.perf_counter()
        est = net_oracle(spec, kind, h=args.h, seed=args.seed)
        elapsed = time.perf_counter() - start
        total += elapsed
        points.append(
            {
                "kind": kind,
                "p": format_exponent(spec.p),
                "q": format_exponent(spec.q),
                "n": n,
                "battery": in_battery,
                "value": est.value,
                "error_bar": est.detail["error_bar"],
                "path": est.detail["path"],
                "frames": est.restarts,
                "runtime_s": round(elapsed, 2),
            }
        )
        print(
            f"{kind:<10} p={points[-1]['p']:<4} q={points[-1]['q']:<4} n={n}: "
            f"{est.value:.6f}  ({elapsed:.1f}s, path={est.detail['path']})"
        )

    payload = {"h": args.h, "seed": args.seed, "total_runtime_s": round(total, 1),
               "points": points}
    args.output.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {args.output} ({total:.1f}s total)")


if __name__ == "__main__":
    main()
