"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 no certificate or pole at
t = -1, 3 budget exceeded, 4 a verification reported violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixture_path
from .category import CategoryError, FinCategory, is_acyclic, is_poset, parse, serialize, validate
from .euler import NaturalNumbers, SubdivisionFiltration, check_invariance, chi_fil, per_chain_divisibility
from .euler import series_generating_function
from .generate import random_poset
from .hanaki import DEFAULT_BOUND, hanaki_exhaustive
from .nerve import nondegenerate_counts
from .series import NoCertificate, PoleAtMinusOne, eval_at_minus_one
from .subdivision import BudgetExceeded, default_budget, sd_truncate, verify_section3

EXIT_INVALID = 1
EXIT_UNDEFINED = 2
EXIT_BUDGET = 3
EXIT_VIOLATION = 4


def _read_category(path: str) -> FinCategory:
    if not os.path.exists(path):
        try:
            path = str(fixture_path(os.path.basename(path)))
        except KeyError:
            raise CategoryError(f"{path}: no such file") from None
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return validate(parse(text))


def _emit(fields: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(fields, indent=2))
        return
    for key, value in fields.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        elif isinstance(value, bool):
            value = str(value).lower()
        elif value is None:
            value = "null"
        print(f"{key}: {value}")


def cmd_validate(args) -> int:
    cat = _read_category(args.input)
    _emit({
        "valid": True,
        "objects": len(cat.objects),
        "morphisms": len(cat.morphisms),
        "acyclic": is_acyclic(cat),
        "poset": is_poset(cat),
    }, args.format)
    return 0


def cmd_counts(args) -> int:
    cat = _read_category(args.input)
    counts = nondegenerate_counts(cat, args.depth)
    if args.format == "json":
        _emit({"counts": counts}, "json")
    else:
        print(" ".join(map(str, counts)))
    return 0


def cmd_sd_export(args) -> int:
    cat = _read_category(args.input)
    trunc = sd_truncate(cat, args.depth, args.budget)
    if args.format == "dot":
        sys.stdout.write(trunc.to_dot())
    else:
        sys.stdout.write(serialize(trunc.to_category()))
    return 0


def cmd_chi_series(args) -> int:
    cat = _read_category(args.input)
    R = series_generating_function(cat)
    value = eval_at_minus_one(R)
    if args.format == "json":
        num, den = R.integer_coefficients()
        _emit({"chi_series": str(value), "series_num": num, "series_den": den}, "json")
    else:
        print(value)
    return 0


def cmd_chi_fil(args) -> int:
    if args.naturals:
        F = NaturalNumbers()
    elif args.input:
        F = SubdivisionFiltration(_read_category(args.input), args.budget)
    else:
        raise CategoryError("give an input file or --naturals")
    result = chi_fil(F, args.depth)
    num, den = result.certificate.integer_coefficients()
    _emit({
        "chi_fil": str(result.value),
        "certificate_num": num,
        "certificate_den": den,
        "prefix": result.prefix,
        "exact": result.exact,
    }, args.format)
    return 0


def cmd_check(args) -> int:
    cat = _read_category(args.input)
    report = check_invariance(cat, args.depth, args.budget)
    fields = report.as_dict()
    if args.chains is not None:
        for item in per_chain_divisibility(cat, args.chains, args.budget):
            if item.remainder != 0:
                fields["violations"].append(
                    {"kind": "divisibility", "chain": item.chain.encode(), "remainder": str(item.remainder)}
                )
        fields["divisibility_checked_up_to"] = args.chains
    _emit(fields, args.format)
    return EXIT_VIOLATION if fields["violations"] else 0


def cmd_structure(args) -> int:
    cat = _read_category(args.input)
    report = verify_section3(cat, args.depth, args.budget)
    _emit(report.as_dict(), args.format)
    return 0 if report.ok else EXIT_VIOLATION


def cmd_hanaki(args) -> int:
    report = hanaki_exhaustive(args.depth, bound=max(DEFAULT_BOUND, args.depth) if args.force else DEFAULT_BOUND)
    if args.format == "json":
        _emit(report.as_dict(), "json")
    else:
        for n, count in report.instances.items():
            print(f"n={n}: {count} instances")
        for failure in report.failures:
            print(f"FAIL {json.dumps(failure)}")
        print("all instances pass" if report.ok else f"{len(report.failures)} instances fail")
    return 0 if report.ok else EXIT_VIOLATION


def cmd_random_poset(args) -> int:
    sys.stdout.write(serialize(random_poset(args.size, args.seed, args.density)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eulercat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, needs_input=True, depth=None, formats=("text", "json")):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help="category file (or the name of a shipped fixture)")
        if depth is not None:
            p.add_argument("--depth", type=_natural, default=depth, help=f"truncation depth (default {depth})")
        p.add_argument("--budget", type=_positive, default=default_budget(),
                       help="cap on subdivision objects and morphisms (env EULERCAT_BUDGET)")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the category axioms")
    add("counts", cmd_counts, "numbers of non-degenerate chains of each length", depth=8)
    add("sd-export", cmd_sd_export, "write a subdivision truncation", depth=2, formats=("text", "dot"))
    add("chi-series", cmd_chi_series, "series Euler characteristic")
    p = add("chi-fil", cmd_chi_fil, "filtered Euler characteristic of the subdivision", needs_input=False, depth=8)
    p.add_argument("input", nargs="?", help="category file (or the name of a shipped fixture)")
    p.add_argument("--naturals", action="store_true", help="use the natural numbers filtered by the identity")
    p = add("check", cmd_check, "invariance report for the subdivision", depth=8)
    p.add_argument("--chains", type=_natural, default=None, metavar="L",
                   help="also check per-chain divisibility for chains of length <= L")
    add("structure", cmd_structure, "acyclicity and poset checks on subdivision truncations", depth=3)
    p = add("hanaki", cmd_hanaki, "exhaustive check of the alternating-sum identity", needs_input=False, depth=7)
    p.add_argument("--force", action="store_true", help=f"allow --depth above {DEFAULT_BOUND}")
    p = add("random-poset", cmd_random_poset, "print a seeded random poset", needs_input=False)
    p.add_argument("--size", type=_natural, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    return parser


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CategoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NoCertificate, PoleAtMinusOne) as exc:
        print(f"undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
