"""Command-line frontend for envelopes, certificates, estimators, recovery.

Five subcommands tie the library into reproducible, file-emitting runs:

* ``envelope``  — sweep an index range and emit the two-sided envelope as
  plot-ready rows (regime tag, sharpness, both values per index);
* ``bounds``    — emit every applicable certificate at one index, with
  optional Monte-Carlo re-verification;
* ``estimate``  — run the norm/width estimators on one embedding;
* ``recovery``  — run the measurement-count sweep of the recovery
  experiment;
* ``suite``     — run the numbered acceptance checks and exit nonzero on
  the first failure.

Outputs are deterministic: identical configuration (including seed)
produces byte-identical CSV, floats are rendered with ``%.12g``, and no
timestamps are emitted.  Exponents are parsed as exact rationals
(``4/3``) or ``inf`` so regime boundaries never drift through floats.
JSON payloads carry a ``schema_version``; CSV carries the configuration
and the regime constants in ``#`` comment headers.  When ``--output`` is
a relative path it lands in ``$SCHATTEN_WIDTHS_OUTPUT_DIR`` if that is
set, else the working directory.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import acceptance
from .certificates import lower_certificates, upper_certificates, verify_certificate
from .core import EmbeddingSpec
from .envelope import DEFAULT_CONSTANTS, ConstantsRegistry, envelope_profile
from .estimators import (
    estimate_approx,
    estimate_gelfand,
    estimate_kolmogorov,
    operator_norm_estimate,
)
from .exponents import Exponent, as_exponent, format_exponent
from .recovery import compare_to_envelope, worst_case_error

__all__ = ["RunConfig", "main", "run"]

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "SCHATTEN_WIDTHS_OUTPUT_DIR"

_ESTIMATORS = {
    "norm": operator_norm_estimate,
    "approximation": estimate_approx,
    "gelfand": estimate_gelfand,
    "kolmogorov": estimate_kolmogorov,
}


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of one command-line run.

    ``run(config)`` consumes this; the argparse layer only translates
    flags into a ``RunConfig`` so programmatic callers can skip the
    parser entirely.
    """

    command: str
    p: Optional[Exponent] = None
    q: Optional[Exponent] = None
    N: Optional[int] = None
    n: Optional[int] = None
    n_range: Optional[tuple[int, int]] = None
    kind: str = "approximation"
    constants: ConstantsRegistry = field(default_factory=lambda: DEFAULT_CONSTANTS)
    seed: int = 0
    budget: int = 12
    m_list: tuple[int, ...] = ()
    tol: float = 1e-6
    samples: int = 200
    verify: bool = False
    restarts: int = 6
    checks: tuple[int, ...] = ()
    fmt: str = "csv"
    output: Optional[str] = None

    def config_line(self) -> str:
        """Deterministic one-line rendering of the run parameters."""
        parts = [f"command={self.command}"]
        if self.p is not None:
            parts.append(f"p={format_exponent(self.p)}")
        if self.q is not None:
            parts.append(f"q={format_exponent(self.q)}")
        if self.N is not None:
            parts.append(f"N={self.N}")
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.n_range is not None:
            parts.append(f"n={self.n_range[0]}:{self.n_range[1]}")
        if self.command in ("envelope", "bounds", "estimate"):
            parts.append(f"kind={self.kind}")
        if self.command == "recovery":
            parts.append("m=" + ",".join(str(m) for m in self.m_list))
            parts.append(f"budget={self.budget}")
            parts.append(f"tol={_fmt(self.tol)}")
        if self.command == "bounds" and self.verify:
            parts.append(f"verify=1 samples={self.samples}")
        if self.command == "estimate":
            parts.append(f"restarts={self.restarts}")
        if self.command == "suite" and self.checks:
            parts.append("checks=" + ",".join(str(c) for c in self.checks))
        parts.append(f"seed={self.seed}")
        return " ".join(parts)


def _fmt(x) -> str:
    """Render a float deterministically (round-trippable %.12g)."""
    return "%.12g" % float(x)


def _json_safe(obj):
    """Recursively convert numpy scalars/arrays and exotic floats for JSON."""
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return format_exponent(obj) if obj == math.inf else repr(obj)
    return obj


# ---------------------------------------------------------------------------
# row builders, one per command
# ---------------------------------------------------------------------------


def _envelope_rows(config: RunConfig) -> list[dict]:
    N = config.N
    lo, hi = config.n_range if config.n_range is not None else (1, N * N)
    lo, hi = max(lo, 1), min(hi, N * N)
    if lo > hi:
        raise ValueError(f"empty index range after clipping to 1..{N * N}")
    prof = envelope_profile(config.kind, config.p, config.q, N, config.constants)
    rows = []
    for n in range(lo, hi + 1):
        ev = prof.value(n)
        rows.append(
            {
                "kind": config.kind,
                "p": format_exponent(config.p),
                "q": format_exponent(config.q),
                "N": N,
                "n": n,
                "value_lower": _fmt(ev.value_lower),
                "value_upper": _fmt(ev.value_upper),
                "regime": ev.regime,
                "sharpness": ev.sharpness,
                "log_factor": int(ev.log_factor),
                "notes": "|".join(ev.notes),
            }
        )
    return rows


def _witness_text(witness: dict) -> str:
    parts = []
    for key in sorted(witness):
        val = witness[key]
        parts.append(f"{key}={_fmt(val) if isinstance(val, float) else val}")
    return ";".join(parts)


def _bounds_rows(config: RunConfig) -> list[dict]:
    spec = EmbeddingSpec(config.p, config.q, config.N, config.n)
    certs = upper_certificates(spec, config.kind) + lower_certificates(spec, config.kind)
    rows = []
    for cert in certs:
        row = {
            "kind": config.kind,
            "p": format_exponent(config.p),
            "q": format_exponent(config.q),
            "N": config.N,
            "n": config.n,
            "direction": cert.direction,
            "method": cert.method,
            "value": _fmt(cert.value),
            "exact_constant": int(cert.exact_constant),
            "witness": _witness_text(cert.witness),
        }
        if config.verify:
            report = verify_certificate(cert, samples=config.samples, seed=config.seed)
            row["verified"] = int(report.passed)
            row["max_ratio"] = _fmt(report.max_ratio)
            row["verify_samples"] = report.samples
        rows.append(row)
    return rows


def _estimate_rows(config: RunConfig) -> list[dict]:
    needs_index = config.kind != "norm"
    spec = EmbeddingSpec(config.p, config.q, config.N, config.n if needs_index else None)
    fn = _ESTIMATORS[config.kind]
    est = fn(spec, restarts=config.restarts, seed=config.seed)
    return [
        {
            "kind": est.snumber_kind,
            "p": format_exponent(config.p),
            "q": format_exponent(config.q),
            "N": config.N,
            "n": config.n if needs_index else "",
            "value": _fmt(est.value),
            "method": est.method,
            "restarts": est.restarts,
            "seed": est.seed,
            "converged": int(est.converged),
            "_detail": est.detail,  # JSON output only; stripped from CSV
        }
    ]


def _recovery_rows(config: RunConfig) -> list[dict]:
    rows = []
    for m in config.m_list:
        res = worst_case_error(
            config.N,
            config.p,
            config.q,
            m,
            test_budget=config.budget,
            seed=config.seed,
            tol=config.tol,
        )
        comp = compare_to_envelope(res)
        rows.append(
            {
                "m": m,
                "worst_error": _fmt(res.worst_error),
                "envelope": _fmt(comp.envelope),
                "ratio": _fmt(comp.ratio),
                "_detail": {
                    "errors": list(res.errors),
                    "labels": list(res.labels),
                    "diagnostics": res.diagnostics,
                },
            }
        )
    return rows


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _header_lines(config: RunConfig) -> list[str]:
    lines = [
        f"# schatten-widths {config.command}",
        f"# schema_version: {SCHEMA_VERSION}",
        f"# config: {config.config_line()}",
    ]
    if config.command == "envelope":
        lines.append(f"# constants: {config.constants.describe()}")
    return lines


def _emit_csv(config: RunConfig, rows: list[dict]) -> str:
    buf = io.StringIO()
    for line in _header_lines(config):
        buf.write(line + "\n")
    fieldnames = [k for k in rows[0] if not k.startswith("_")]
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in fieldnames})
    return buf.getvalue()


def _emit_json(config: RunConfig, rows: list[dict]) -> str:
    payload_rows = []
    for row in rows:
        out = {k: v for k, v in row.items() if not k.startswith("_")}
        if "_detail" in row:
            out["detail"] = _json_safe(row["_detail"])
        payload_rows.append(out)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "config": config.config_line(),
        "rows": payload_rows,
    }
    if config.command == "envelope":
        payload["constants"] = config.constants.describe()
    return json.dumps(payload, indent=2) + "\n"


def _resolve_output(path_text: str) -> Path:
    path = Path(path_text).expanduser()
    if not path.is_absolute():
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = Path(base).expanduser() / path
    return path


def _write(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
        return
    path = _resolve_output(config.output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _run_suite(config: RunConfig) -> int:
    numbers = config.checks or acceptance.check_numbers()
    results = acceptance.run_suite(numbers, echo=print)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if config.output is not None:
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": "suite",
            "config": config.config_line(),
            "results": [
                {
                    "number": r.number,
                    "slug": r.slug,
                    "passed": r.passed,
                    "runtime_s": round(r.runtime_s, 3),
                    "budget_s": r.budget_s,
                    "detail": r.detail,
                }
                for r in results
            ],
        }
        path = _resolve_output(config.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report, indent=2) + "\n")
        print(f"wrote {path}")
    return 1 if failed else 0


_ROW_BUILDERS = {
    "envelope": _envelope_rows,
    "bounds": _bounds_rows,
    "estimate": _estimate_rows,
    "recovery": _recovery_rows,
}


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    if config.command == "suite":
        return _run_suite(config)
    rows = _ROW_BUILDERS[config.command](config)
    text = _emit_csv(config, rows) if config.fmt == "csv" else _emit_json(config, rows)
    _write(config, text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_n_range(text: str) -> tuple[int, int]:
    left, _, right = text.partition(":")
    lo = int(left)
    hi = int(right) if right else lo
    if lo < 1 or hi < lo:
        raise ValueError(f"bad index range {text!r}")
    return lo, hi


def _parse_m_list(text: str) -> tuple[int, ...]:
    ms = tuple(int(part) for part in text.split(",") if part)
    if not ms or any(m < 0 for m in ms):
        raise ValueError(f"bad measurement list {text!r}")
    return ms


def _parse_checks(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part)


def _add_common_output(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    sub.add_argument(
        "--output",
        default=None,
        help=f"output file (relative paths land in ${OUTPUT_DIR_ENV} when set; default: stdout)",
    )


def _add_embedding_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-p", type=as_exponent, required=True, help="source exponent (rational or inf)")
    sub.add_argument("-q", type=as_exponent, required=True, help="target exponent (rational or inf)")
    sub.add_argument("-N", type=int, required=True, help="matrix side length")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schatten-widths",
        description=__doc__.splitlines()[0],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    env = subparsers.add_parser("envelope", help="two-sided envelope sweep over n")
    _add_embedding_args(env)
    env.add_argument(
        "--kind",
        choices=("approximation", "gelfand", "kolmogorov"),
        default="approximation",
    )
    env.add_argument(
        "--n-range",
        type=_parse_n_range,
        default=None,
        metavar="LO:HI",
        help="index range (default 1:N^2); clipped to the valid range",
    )
    env.add_argument(
        "--constants",
        default=None,
        metavar="FILE",
        help="JSON file overriding the regime constants",
    )
    _add_common_output(env)

    bounds = subparsers.add_parser("bounds", help="all applicable certificates at one index")
    _add_embedding_args(bounds)
    bounds.add_argument("-n", type=int, required=True, help="s-number index")
    bounds.add_argument(
        "--kind",
        choices=("approximation", "gelfand", "kolmogorov"),
        default="approximation",
    )
    bounds.add_argument("--verify", action="store_true", help="re-verify every certificate")
    bounds.add_argument("--samples", type=int, default=200, help="verification sample count")
    bounds.add_argument("--seed", type=int, default=0)
    _add_common_output(bounds)

    est = subparsers.add_parser("estimate", help="run a norm/width estimator")
    _add_embedding_args(est)
    est.add_argument("-n", type=int, default=None, help="s-number index (not used by kind=norm)")
    est.add_argument(
        "--kind",
        choices=("norm", "approximation", "gelfand", "kolmogorov"),
        default="norm",
    )
    est.add_argument("--restarts", type=int, default=6)
    est.add_argument("--seed", type=int, default=0)
    _add_common_output(est)

    rec = subparsers.add_parser("recovery", help="measurement-count sweep of the recovery error")
    _add_embedding_args(rec)
    rec.add_argument(
        "--m-list",
        type=_parse_m_list,
        required=True,
        metavar="M1,M2,...",
        help="measurement counts to sweep",
    )
    rec.add_argument("--budget", type=int, default=12, help="test matrices per sweep point")
    rec.add_argument("--seed", type=int, default=0)
    rec.add_argument("--tol", type=float, default=1e-6, help="decoder feasibility tolerance")
    _add_common_output(rec)

    suite = subparsers.add_parser("suite", help="run the acceptance checks")
    suite.add_argument(
        "--checks",
        type=_parse_checks,
        default=(),
        metavar="1,2,...",
        help="subset of check numbers (default: all)",
    )
    suite.add_argument(
        "--seed",
        type=int,
        default=7,
        help="recorded for provenance; the checks pin their own seeds internally",
    )
    suite.add_argument("--output", default=None, help="also write a JSON report here")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    constants = DEFAULT_CONSTANTS
    if getattr(args, "constants", None):
        constants = ConstantsRegistry.from_json_dict(
            json.loads(Path(args.constants).expanduser().read_text())
        )
    needs_index = args.command == "bounds" or (
        args.command == "estimate" and args.kind != "norm"
    )
    if needs_index and getattr(args, "n", None) is None:
        raise ValueError(f"{args.command} with kind={getattr(args, 'kind', '?')} requires -n")
    return RunConfig(
        command=args.command,
        p=getattr(args, "p", None),
        q=getattr(args, "q", None),
        N=getattr(args, "N", None),
        n=getattr(args, "n", None),
        n_range=getattr(args, "n_range", None),
        kind=getattr(args, "kind", "approximation"),
        constants=constants,
        seed=getattr(args, "seed", 0),
        budget=getattr(args, "budget", 12),
        m_list=getattr(args, "m_list", ()),
        tol=getattr(args, "tol", 1e-6),
        samples=getattr(args, "samples", 200),
        verify=getattr(args, "verify", False),
        restarts=getattr(args, "restarts", 6),
        checks=getattr(args, "checks", ()),
        fmt=getattr(args, "fmt", "csv"),
        output=getattr(args, "output", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return run(config)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
