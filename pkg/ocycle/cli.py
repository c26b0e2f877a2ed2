#!/usr/bin/env python3
"""Batch interface to the cycle-index computations and the verification suites.

Usage
-----
python -m ocycle.cli fixed-space --q 2 --dim 4
python -m ocycle.cli classes --q 2 --dim 4 --format csv
python -m ocycle.cli sample --variant R --u 1/2 --q 2 --seed 7 -n 3
python -m ocycle.cli oracle --group O- --dim 4 --q 2 --format json --out out/o4minus.json
python -m ocycle.cli verify --suite oracle --q 2 --max-dim 6

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import log
from .config import load_env
from .cycleindex import RcfData, class_proportions, iter_o_data, omega_class_proportion, proportions_from_series
from .enumerative import cyclic_gf, fixed_space_table
from .errors import BudgetError, InputError, OcycleError
from .export import FORMATS, write_rows
from .measures import VARIANTS as MEASURE_VARIANTS
from .measures import MeasureParams, mass, sample_many
from .oracle import build_group, empirical_class_table, parse_family
from .orders import parse_sign
from .partitions import parse_partition
from .qpoly import parse_poly
from .unipotent import CONTEXTS, class_table, decompositions_of_type, induced_weil
from .verify import SUITES, run_suite
from .weights import (
    cyclic_weight,
    regular_semisimple_weight,
    semisimple_weight,
    separable_weight,
    unipotent_weight,
    unit_weight,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

STATISTICS = {
    "unit": unit_weight,
    "unipotent": unipotent_weight,
    "cyclic": cyclic_weight,
    "separable": separable_weight,
    "semisimple": semisimple_weight,
    "regular-semisimple": regular_semisimple_weight,
}
TABLE_KINDS = ("fixed", "omega-fixed", "unipotent", "omega-unipotent")


class UsageError(InputError):
    """Raised by the argument parser instead of exiting the interpreter."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational like 1/2, got {text!r}") from exc


def _common(p: argparse.ArgumentParser, dim: bool = True) -> None:
    p.add_argument("--q", type=int, default=2, help="Field size, a power of 2 (default: 2)")
    if dim:
        p.add_argument("--dim", type=int, default=4, help="Matrix dimension 2n (default: 4)")
    p.add_argument("--format", choices=FORMATS, default="text", help="Output format (default: text)")
    p.add_argument("--out", type=Path, default=None, help="Write to this file instead of stdout")


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = _Parser(prog="ocycle", description="Cycle indices of O±_2n(q), q even, with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("proportions", help="Expected value of a statistic over O±, by series extraction")
    _common(p)
    p.add_argument("--statistic", choices=sorted(STATISTICS), default="cyclic")

    p = sub.add_parser("fixed-space", help="Fixed-space dimension distribution")
    _common(p)
    p.add_argument("--kind", choices=TABLE_KINDS, default="fixed")
    p.add_argument("--method", choices=("closed", "series"), default="closed")

    p = sub.add_parser("unipotent", help="Unipotent class table")
    _common(p)
    p.add_argument("--context", choices=CONTEXTS, default="Sp")

    p = sub.add_parser("cyclic", help="Cyclic-matrix proportions for dimensions 2..2·order")
    _common(p, dim=False)
    p.add_argument("--order", type=int, default=6, help="Largest n (dimension 2n) to report (default: 6)")

    p = sub.add_parser("classes", help="Class proportions of every RcfData in one dimension")
    _common(p)
    p.add_argument("--data", type=str, default=None, help='One class, e.g. "z+1:[2];z^2+z+1:[1]"')
    p.add_argument("--sign", type=str, default=None, help="Also report the Ω^ε proportion for this sign")

    p = sub.add_parser("sample", help="Draw partitions from R, R^e or R^o")
    _common(p, dim=False)
    p.add_argument("--u", type=parse_fraction, default=Fraction(1, 2), help="Exact rational 0 < u < sqrt(q)")
    p.add_argument("--variant", choices=MEASURE_VARIANTS, default="R")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", type=int, default=1, dest="n", help="Number of samples (default: 1)")

    p = sub.add_parser("oracle", help="Enumerate a group and tabulate its class data")
    _common(p)
    p.add_argument("--group", type=str, default="O+", help="Sp, O+, O-, Omega+, Omega- or O (odd dim)")

    p = sub.add_parser("verify", help="Run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="algebra")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--samples", type=int, default=1_000_000, help="Sampler draws for the measures suite")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", type=Path, default=None)
    return parser.parse_args(argv)


# --- commands -------------------------------------------------------------------------------


def cmd_proportions(args: argparse.Namespace) -> List[Dict[str, Any]]:
    pair = proportions_from_series(args.q, STATISTICS[args.statistic], args.dim)
    return [{"statistic": args.statistic, "dim": args.dim, "p_plus": pair.p_plus, "p_minus": pair.p_minus}]


def cmd_fixed_space(args: argparse.Namespace) -> List[Dict[str, Any]]:
    table = fixed_space_table(args.dim, args.q, args.kind, args.method)
    return [{"k": row.k, "p_plus": row.p_plus, "p_minus": row.p_minus} for row in table.rows]


def cmd_unipotent(args: argparse.Namespace) -> List[Dict[str, Any]]:
    rows = []
    for row in class_table(args.dim, args.context):
        entry: Dict[str, Any] = {
            "jordan_type": row.jordan_type,
            "classes": row.count,
            "labels": " ".join(row.sign_sequences),
        }
        if args.context == "Sp":
            entry["induced_weil"] = induced_weil(row.jordan_type, args.q)
        entry["decompositions"] = len(decompositions_of_type(row.jordan_type))
        rows.append(entry)
    return rows


def cmd_cyclic(args: argparse.Namespace) -> List[Dict[str, Any]]:
    gf = cyclic_gf(args.q, args.order)
    plus, minus = gf.plus(), gf.minus()
    return [{"dim": 2 * n, "c_plus": plus.coeff(n), "c_minus": minus.coeff(n)} for n in range(1, args.order + 1)]


def _parse_data(text: str, q: int) -> RcfData:
    mapping = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        poly_text, _, part_text = chunk.partition(":")
        try:
            phi = parse_poly(poly_text, q)
        except (ValueError, IndexError) as exc:
            raise InputError(f"cannot parse polynomial {poly_text!r}") from exc
        mapping[phi] = parse_partition(part_text)
    return RcfData.from_mapping(q, mapping)


def cmd_classes(args: argparse.Namespace) -> List[Dict[str, Any]]:
    datas = [_parse_data(args.data, args.q)] if args.data else list(iter_o_data(args.q, args.dim))
    eps = parse_sign(args.sign) if args.sign else None
    rows = []
    for rcf in datas:
        pair = class_proportions(rcf, args.q)
        entry: Dict[str, Any] = {"data": str(rcf), "p_plus": pair.p_plus, "p_minus": pair.p_minus}
        if eps is not None:
            entry["p_omega"] = omega_class_proportion(rcf, args.q, eps)
        rows.append(entry)
    return rows


def cmd_sample(args: argparse.Namespace) -> List[Dict[str, Any]]:
    params = MeasureParams(args.u, args.q)
    draws = sample_many(params, args.variant, args.seed, args.n)
    return [{"index": i, "partition": lam, "mass": mass(lam, params, args.variant)} for i, lam in enumerate(draws)]


def cmd_oracle(args: argparse.Namespace) -> List[Dict[str, Any]]:
    family = parse_family(args.group)
    group = build_group(family, args.dim, args.q)
    table = empirical_class_table(group)
    rows = []
    for rcf in sorted(table, key=str):
        entry: Dict[str, Any] = {"data": str(rcf), "count": table[rcf] * group.order, "proportion": table[rcf]}
        if family in {"Oplus", "Ominus"}:
            entry["predicted"] = class_proportions(rcf, args.q).get(1 if family == "Oplus" else -1)
        elif family in {"OmegaPlus", "OmegaMinus"}:
            entry["predicted"] = omega_class_proportion(rcf, args.q, 1 if family == "OmegaPlus" else -1)
        rows.append(entry)
    return rows


COMMANDS = {
    "proportions": cmd_proportions,
    "fixed-space": cmd_fixed_space,
    "unipotent": cmd_unipotent,
    "cyclic": cmd_cyclic,
    "classes": cmd_classes,
    "sample": cmd_sample,
    "oracle": cmd_oracle,
}


def _params(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"command", "format", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(args: argparse.Namespace) -> int:
    if args.command == "verify":
        results = run_suite(args.suite, args.q, args.max_dim, args.samples)
        rows = [
            {"suite": r.suite, "check": r.name, "status": "ok" if r.passed else "FAIL", "detail": r.detail} for r in results
        ]
        write_rows(rows, args.format, args.out, args.command, _params(args))
        failed = sum(1 for r in results if not r.passed)
        if failed:
            log.warn(f"{failed} of {len(results)} checks failed", tag="verify")
            return EXIT_MISMATCH
        log.ok(f"{len(results)} checks passed", tag="verify")
        return EXIT_OK
    rows = COMMANDS[args.command](args)
    write_rows(rows, args.format, args.out, args.command, _params(args))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    for lineno, text in load_env():
        log.warn(f".env line {lineno} is not KEY=value, ignored: {text.strip()}", tag="config")
    try:
        args = parse_args(argv)
        return run(args)
    except BudgetError as exc:
        log.warn(str(exc))
        return EXIT_BUDGET
    except InputError as exc:
        log.warn(str(exc))
        return EXIT_USAGE
    except OcycleError as exc:
        log.warn(str(exc))
        return EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
