"""Command-line surface: scans, single queries, CSV/JSON emission.

Every subcommand computes rows in a canonical order (ascending |D|,
ascending prime) and emits them as CSV (default) or as a JSON array of
objects keyed by the CSV header, so fixed inputs give byte-identical
output regardless of worker count.  Errors exit nonzero with a single
diagnostic line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import cohen_lenstra, density, dihedral, finitefield
from .abelian import AbelianGroup, is_p_suitable
from .forms import CACHE_ENV, ClassGroupCache, class_group
from .ntheory import prime_to_p_part
from .sweep import ResourceLimitError, batch_class_numbers


def _emit(headers: list[str], rows: list[list], args) -> int:
    buf = io.StringIO()
    if args.format == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
    else:
        objs = [dict(zip(headers, row)) for row in rows]
        buf.write(json.dumps(objs, indent=2))
        buf.write("\n")
    text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _ratio_cell(r: Fraction) -> str:
    return f"{float(r):.6f}"


def _cache(args) -> ClassGroupCache | None:
    path = args.cache_path or os.environ.get(CACHE_ENV)
    return ClassGroupCache(path) if path else None


# ------------------------------------------------------------- subcommands


def _cmd_classgroup(args) -> int:
    rows = []
    for disc in args.disc:
        record = class_group(disc)
        rows.append([record.disc, record.class_number, record.factors_string()])
    rows.sort(key=lambda r: -r[0])
    return _emit(["disc", "h", "invariant_factors"], rows, args)


def _cmd_batch(args) -> int:
    table = batch_class_numbers(args.max_abs_disc, workers=args.workers)
    rows = [[d, h] for d, h in table.items()]
    return _emit(["disc", "h"], rows, args)


def _cmd_census(args) -> int:
    orders = [int(t) for t in args.orders.split(",")]
    out = density.class_order_census(
        args.max_abs_disc, orders, workers=args.workers, budget=args.budget
    )
    rows = [[h, out[h]] for h in sorted(out)]
    return _emit(["order", "count"], rows, args)


def _cmd_exp3scan(args) -> int:
    records = density.exponent3_scan(args.max_abs_disc, workers=args.workers)
    rows = [[r.disc, r.class_number, r.factors_string()] for r in records]
    return _emit(["disc", "h", "invariant_factors"], rows, args)


def _cmd_suitable(args) -> int:
    cache = _cache(args)
    rows = []
    for disc in args.disc:
        if cache is not None:
            h, factors = cache.get(disc)
            structure = AbelianGroup(factors)
        else:
            rec = class_group(disc)
            h, structure = rec.class_number, rec.structure
        for p in args.p:
            report = is_p_suitable(structure, p)
            rows.append(
                [
                    disc,
                    h,
                    p,
                    int(report.suitable),
                    report.witness_h if report.witness_h is not None else "",
                ]
            )
    rows.sort(key=lambda r: (-r[0], r[2]))
    if cache:
        cache.save()
    return _emit(["disc", "h", "p", "suitable", "witness_h"], rows, args)


def _cmd_witness(args) -> int:
    rows = []
    for disc in args.disc:
        record = class_group(disc)
        for p in args.p:
            report = is_p_suitable(record.structure, p)
            h = (
                report.witness_h
                if report.suitable
                else prime_to_p_part(record.structure.exponent, p)
            )
            found = dihedral.find_witness(record.disc, p, args.bound)
            if isinstance(found, dihedral.NotFoundUpToBound):
                rows.append([record.disc, h, p, "", ""])
            else:
                ell, coeff = found
                degree = dihedral.reduce_coefficient(coeff, p).field_degree()
                rows.append([record.disc, h, p, ell, degree])
    rows.sort(key=lambda r: (-r[0], r[2]))
    return _emit(
        ["disc", "h", "p", "witness_prime", "coefficient_field_degree"], rows, args
    )


def _cmd_traces(args) -> int:
    rows = []
    for h in args.orders_list:
        for p in args.p:
            if math.gcd(h, p) != 1:
                continue
            ts = finitefield.dihedral_trace_set(h, p)
            rows.append([h, p, ts.ctx.m, finitefield.trace_field_degree(ts)])
    rows.sort(key=lambda r: (r[0], r[1]))
    return _emit(["h", "p", "m", "trace_field_degree"], rows, args)


def _cmd_density(args) -> int:
    cache = _cache(args)
    rows = []
    for X in args.bounds_list:
        est = density.suitable_divisor_density(
            args.p[0], X, workers=args.workers, cache=cache
        )
        rows.append(
            [X, est.count_member, est.count_ambient, _ratio_cell(est.ratio)]
        )
    if cache:
        cache.save()
    return _emit(["x", "count_member", "count_ambient", "ratio"], rows, args)


def _cmd_landau(args) -> int:
    residues = [int(t) for t in args.residues.split(",")] if args.residues else []
    table = density.landau_count(args.bound, args.modulus, residues)
    rows = [[x, m] for x, m in table.samples]
    return _emit(["x", "count"], rows, args)


def _cmd_clweights(args) -> int:
    S = set(args.skip_primes_list)
    rows = []
    for x in args.bounds_list:
        w = cohen_lenstra.weighted_sum_coprime(S, x)
        lb = cohen_lenstra.prime_reciprocal_sum(S, x)
        rows.append([x, f"{float(w):.6f}", f"{float(lb):.6f}"])
    return _emit(["x", "weighted_sum", "lower_bound"], rows, args)


def _cmd_clcompare(args) -> int:
    rows = []
    for p in args.p:
        cmp = cohen_lenstra.empirical_cl_comparison(p, args.bound, workers=args.workers)
        rows.append(
            [
                p,
                args.bound,
                f"{float(cmp.empirical):.6f}",
                f"{cmp.predicted:.6f}",
                f"{cmp.abs_diff:.6f}",
            ]
        )
    rows.sort(key=lambda r: r[0])
    return _emit(["p", "X", "empirical", "predicted", "abs_diff"], rows, args)


# ------------------------------------------------------------------ parsing


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadclass",
        description="Class groups of imaginary quadratic fields, dihedral "
        "eigenform coefficients, and density scans.",
    )
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", help="write to this path instead of stdout")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--cache-path",
        help=f"class-group cache CSV (default from ${CACHE_ENV})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("classgroup", _cmd_classgroup, "class group of one or more discriminants")
    p.add_argument("--disc", type=int, action="append", required=True)

    p = add("batch", _cmd_batch, "class numbers of all fundamental |D| <= X")
    p.add_argument("--max-abs-disc", type=int, required=True)

    p = add("census", _cmd_census, "count fundamental |D| < X per class number")
    p.add_argument("--max-abs-disc", type=int, required=True)
    p.add_argument("--orders", required=True, help="comma-separated class numbers")
    p.add_argument("--budget", type=int, help="override the class-data budget")

    p = add("exp3scan", _cmd_exp3scan, "fundamental |D| <= X with exponent-3 class group")
    p.add_argument("--max-abs-disc", type=int, required=True)

    p = add("suitable", _cmd_suitable, "p-suitability reports per discriminant")
    p.add_argument("--disc", type=int, action="append", required=True)
    p.add_argument("--p", type=int, action="append", required=True)

    p = add("witness", _cmd_witness, "search for a non-prime-field coefficient")
    p.add_argument("--disc", type=int, action="append", required=True)
    p.add_argument("--p", type=int, action="append", required=True)
    p.add_argument("--bound", type=int, default=1000)

    p = add("traces", _cmd_traces, "dihedral trace-set field degrees per (h, p)")
    p.add_argument("--orders", dest="orders_list", type=_int_list, required=True)
    p.add_argument("--p", type=int, action="append", required=True)

    p = add("density", _cmd_density, "suitable-divisor density at one or more bounds")
    p.add_argument("--p", type=int, action="append", required=True)
    p.add_argument("--bounds", dest="bounds_list", type=_int_list, required=True)

    p = add("landau", _cmd_landau, "count integers with prime factors in residue classes")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--residues", default="", help="comma-separated residues")

    p = add("clweights", _cmd_clweights, "weighted group sums vs the prime lower bound")
    p.add_argument(
        "--skip-primes", dest="skip_primes_list", type=_int_list, required=True
    )
    p.add_argument("--bounds", dest="bounds_list", type=_int_list, required=True)

    p = add("clcompare", _cmd_clcompare, "empirical p-divisibility vs the product oracle")
    p.add_argument("--p", type=int, action="append", required=True)
    p.add_argument("--bound", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ResourceLimitError, ValueError, OSError) as exc:
        print(f"quadclass: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
