"""Command-line front end.

Exit codes: 0 success, 1 a ``--check`` found mismatches, 2 usage or input
error, 3 classification error (the failed congruence is named), 4 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import ahss, groupstruct, tables
from .errors import ClassificationError, InternalConsistencyError, Mcg6Error
from .exactlin import INFINITE, Lattice, QuotientElement, element_order, format_matrix, parse_matrix, smith_normal_form
from .groupstruct import SCHEMA
from .kslattice import boundary_case_analysis, kernel_group
from .manifold import NAMED_EXAMPLES, chern_data, ci_invariants, named_example, validate
from .symplectic import QuadraticRefinement, SymplecticMatrix, cocycle

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CLASSIFICATION, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_matrix(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_matrix(text)


def _emit_json(obj: dict):
    print(json.dumps({"schema": SCHEMA, **obj}, sort_keys=True, ensure_ascii=False, indent=2))


def _add_manifold_args(p: argparse.ArgumentParser):
    p.add_argument("--spin", action="store_true", help="spin manifold (omit for non-spin)")
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--degrees", type=_int_list, help="complete intersection multidegree, e.g. 2,4")
    p.add_argument("--example", choices=NAMED_EXAMPLES)


def _add_format(p: argparse.ArgumentParser, default: str = "md"):
    p.add_argument("--format", choices=("json", "md"), default=default)


def _manifold_from_args(args, parser):
    given = sum(x is not None for x in (args.degrees, args.example)) + (args.d is not None or args.k is not None)
    if given != 1:
        parser.error("give exactly one of --d/--k, --degrees or --example")
    if args.degrees is not None:
        return ci_invariants(args.degrees)
    if args.example is not None:
        return named_example(args.example)
    if args.d is None or args.k is None:
        parser.error("--d and --k are both required")
    return validate(args.spin, args.d, args.k, args.g)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcg6", description="Mapping class groups of 6-manifolds with H^2 = Z.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("report", help="full structure report")
    _add_manifold_args(p)
    _add_format(p)

    p = sub.add_parser("kernel", help="the finite kernel K(M) only")
    _add_manifold_args(p)
    _add_format(p)

    p = sub.add_parser("table", help="regenerate the kernel tables over the residue grid")
    p.add_argument("--case", choices=("spin", "nonspin"), required=True)
    p.add_argument("--check", action="store_true", help="compare with the embedded closed-form table")
    _add_format(p)

    p = sub.add_parser("ab-table", help="regenerate the abelianization tables")
    p.add_argument("--check", action="store_true")
    _add_format(p)

    p = sub.add_parser("snf", help="Smith normal form of a matrix file")
    p.add_argument("--matrix", required=True, help="matrix file, or - for stdin")
    _add_format(p)

    p = sub.add_parser("order", help="order of a vector in Z^n / L")
    p.add_argument("--lattice", required=True, help="matrix file whose columns generate L, or -")
    p.add_argument("--vector", required=True, type=_int_list)
    _add_format(p)

    p = sub.add_parser("ci", help="invariants of a complete intersection")
    p.add_argument("--degrees", required=True, type=_int_list)
    _add_format(p)

    p = sub.add_parser("cocycle", help="mod-2 cocycle s(A) for a quadratic refinement")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--psi", required=True, help="linear part as a 0/1 string of length 2g")
    p.add_argument("--matrix", required=True, help="matrix file, or -")
    _add_format(p)

    p = sub.add_parser("boundary", help="framing search for the boundary diffeomorphism (spin)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--mu", type=int, required=True)
    _add_format(p)

    p = sub.add_parser("ahss", help="order bound from an encoded spectral sequence page")
    p.add_argument("--case", choices=("untwisted", "twisted"), required=True)
    p.add_argument("--degree", type=int, default=7)
    _add_format(p)
    return parser


def _run(args, parser) -> int:
    verb = args.verb
    if verb in ("report", "kernel"):
        inv = _manifold_from_args(args, parser)
        if verb == "report":
            rep = groupstruct.full_report(inv)
            print(rep.to_json_text() if args.format == "json" else rep.to_markdown(), end="\n" if args.format == "json" else "")
        else:
            K = kernel_group(inv)
            if args.format == "json":
                _emit_json({"invariants": inv.to_json(), "kernel": K.to_json()})
            else:
                print(f"K(M) = {K}  ({inv.label()})")
        return EXIT_OK

    if verb == "table":
        if args.case == "spin":
            md, mismatches = tables.spin_table_markdown, tables.check_spin_table
        else:
            md, mismatches = tables.nonspin_table_markdown, tables.check_nonspin_table
        bad = mismatches() if args.check else []
        if args.format == "json":
            _emit_json({"case": args.case, "table": md(), "mismatches": [str(m) for m in bad]})
        else:
            print(md(), end="")
            if args.check:
                print(f"\ncheck: {len(bad)} mismatching grid points")
                for m in bad:
                    print(f"  mismatch in {m}")
        return EXIT_MISMATCH if bad else EXIT_OK

    if verb == "ab-table":
        bad = groupstruct.check_abelianization_tables() if args.check else []
        if args.format == "json":
            _emit_json({"table": groupstruct.abelianization_table_markdown(), "mismatches": bad})
        else:
            print(groupstruct.abelianization_table_markdown(), end="")
            if args.check:
                print(f"\ncheck: {len(bad)} mismatching cells")
                for m in bad:
                    print(f"  mismatch in {m}")
        return EXIT_MISMATCH if bad else EXIT_OK

    if verb == "snf":
        A = _read_matrix(args.matrix)
        sf = smith_normal_form(A)
        divs = " ".join(str(x) for x in sf.divisors)
        if args.format == "json":
            _emit_json({"divisors": list(sf.divisors), "U": sf.U.to_rows(), "D": sf.D.to_rows(), "V": sf.V.to_rows()})
        else:
            print(f"divisors: {divs}")
            for name, M in (("U", sf.U), ("D", sf.D), ("V", sf.V)):
                print(f"{name}:\n{format_matrix(M)}", end="")
        return EXIT_OK

    if verb == "order":
        L = _read_matrix(args.lattice)
        v = QuotientElement(tuple(args.vector), Lattice(L.rows, L))
        o = element_order(v)
        text = "infinite" if o == INFINITE else str(o)
        if args.format == "json":
            _emit_json({"vector": list(args.vector), "order": text if o == INFINITE else o})
        else:
            print(f"order: {text}")
        return EXIT_OK

    if verb == "ci":
        inv = ci_invariants(args.degrees)
        c = chern_data(args.degrees)
        if args.format == "json":
            _emit_json({"degrees": args.degrees, "invariants": inv.to_json(), "chern": [1, c.c1, c.c2, c.c3]})
        else:
            print(f"X({','.join(map(str, args.degrees))}): {inv.label()}")
            terms = "".join(f" {'-' if v < 0 else '+'} {abs(v)}x{e}" for v, e in ((c.c1, ""), (c.c2, "^2"), (c.c3, "^3")))
            print(f"total Chern class: 1{terms}")
        return EXIT_OK

    if verb == "cocycle":
        psi = QuadraticRefinement.from_bits(args.psi)
        if psi.g != args.g:
            parser.error(f"--psi has length {2 * psi.g}, expected {2 * args.g}")
        A = SymplecticMatrix.of(_read_matrix(args.matrix))
        if A.g != args.g:
            parser.error(f"matrix is {2 * A.g}x{2 * A.g}, expected {2 * args.g}x{2 * args.g}")
        s = "".join(str(x) for x in cocycle(psi, A))
        if args.format == "json":
            _emit_json({"g": args.g, "psi": psi.bits(), "cocycle": s})
        else:
            print(f"s(A) = {s}")
        return EXIT_OK

    if verb == "boundary":
        inv = validate(True, args.d, args.k, 0)
        rep = boundary_case_analysis(inv, args.lam, args.mu)
        if args.format == "json":
            _emit_json(rep.to_json())
        else:
            print(f"initial (S1, S2, S3) = ({', '.join(map(str, rep.initial))}) in Q/Z")
            if rep.framing is not None:
                print(f"zeroing framing: a = {rep.framing[0]}, b = {rep.framing[1]}")
            else:
                print(f"no zeroing framing; recognized case: {rep.branch}")
        return EXIT_OK

    if verb == "ahss":
        page, spec = ahss.builtin_fixture(args.case)
        res = ahss.order_bound(page, spec, args.degree)
        if args.format == "json":
            _emit_json({"case": args.case, "degree": args.degree, **res.to_json()})
        else:
            bound = "infinite" if res.bound == INFINITE else res.bound
            print(f"order bound in degree {args.degree}: {bound}")
            print(f"exact group: {res.exact if res.exact is not None else 'not determined'}")
        return EXIT_OK

    parser.error(f"unknown verb {verb}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ClassificationError as exc:
        print(f"classification error: {exc.condition}: {exc}", file=sys.stderr)
        return EXIT_CLASSIFICATION
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (Mcg6Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
