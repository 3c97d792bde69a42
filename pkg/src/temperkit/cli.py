"""Command-line interface: ``temperkit <command> ...``.

Exit codes: 0 tempered (or all checks passed), 1 not tempered, 2 usage or
input error, 3 disagreement between a closed form and its oracle (or between
a computed verdict and the classification table).
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import gln
from .errors import TemperkitError
from .levi import generate_table, levi_tempered, normalize_levi, table_predicate
from .reports import (
    FORMATS,
    LEVI_COLUMNS,
    envelope,
    frac_str,
    levi_record,
    render_records,
    text_table,
    to_csv,
    to_json,
)
from .rootsys import build, parse_label
from .verify import SUITES, TABLE1_TYPES, run_suites, table2_labels

EXIT_OK, EXIT_NOT_TEMPERED, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(TemperkitError):
    pass


def _subset_text(I) -> str:
    return "{" + ",".join(str(i) for i in I) + "}"


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _kv_output(args, command: str, fields: dict, lines: List[str]) -> str:
    """Single-case commands: JSON envelope, one-row CSV, or readable lines."""
    if args.format == "json":
        return to_json(envelope(command, **fields))
    if args.format == "csv":
        flat = {k: v for k, v in fields.items() if not isinstance(v, dict)}
        return to_csv([flat], list(flat))
    return "\n".join(lines) + "\n"


# -- tensor ---------------------------------------------------------------------

def cmd_tensor(args) -> int:
    P, Q = gln.parse_composition(args.P), gln.parse_composition(args.Q)
    if sum(P) != sum(Q):
        raise UsageError(f"compositions of different n: {sum(P)} vs {sum(Q)}")
    n = sum(P)
    closed = gln.tensor_tempered(P, Q)
    fields = {"P": list(P), "Q": list(Q), "n": n, "d_P": gln.d_value(P), "d_Q": gln.d_value(Q),
              "tempered": closed, "field": args.field}
    lines = [
        f"P = {args.P}, Q = {args.Q}, n = {n}",
        f"d(P) + d(Q) = {fields['d_P'] + fields['d_Q']} {'<=' if closed else '>'} n + 1 = {n + 1}",
        f"Ind_P(1) (x) Ind_Q(1): {'tempered' if closed else 'not tempered'}",
    ]
    code = EXIT_OK if closed else EXIT_NOT_TEMPERED
    if args.oracle:
        report = gln.tempered_bruteforce(gln.epsilon_intersection(P, Q), args.field)
        agree = report.tempered == closed
        fields["oracle"] = {"tempered": report.tempered, "witness": report.witness,
                            "extremal_ratio": frac_str(report.extremal_ratio), "agree": agree}
        fields["witness"] = list(report.witness) if report.witness else None
        lines.append(f"oracle (all E_I on p cap q^o): {'tempered' if report.tempered else 'not tempered'},"
                     f" max rho_h/rho_g = {report.extremal_ratio}")
        if report.witness:
            lines.append(f"witness I = {_subset_text(report.witness)}")
        lines.append(f"agreement: {'yes' if agree else 'NO'}")
        if not agree:
            code = EXIT_DISAGREE
    _emit(args, _kv_output(args, "tensor", fields, lines))
    return code


# -- subalgebra -----------------------------------------------------------------

def _load_epsilon(source: str) -> gln.EpsilonMatrix:
    if source == "-" or Path(source).exists():
        return gln.read_epsilon(source)
    if re.fullmatch(r"[01\s,;/]+", source):
        return gln.parse_epsilon(re.sub(r"[,;/]", "\n", source))
    raise UsageError(f"{source!r} is neither a file nor an inline 0/1 matrix")


def cmd_subalgebra(args) -> int:
    h = _load_epsilon(args.source)
    dims = gln.ad_image_dims(h)
    fast = gln.tempered_fast(h)
    fields = {"n": h.n, "eps": h.to_text().split("\n"), "image_dims": list(dims),
              "threshold": h.n - 1, "tempered": fast, "field": args.field}
    lines = [
        h.to_text(),
        f"dim Image ad(E_ii) = {tuple(dims)}, threshold n - 1 = {h.n - 1}",
        f"L^2(G/H): {'tempered' if fast else 'not tempered'}",
    ]
    code = EXIT_OK if fast else EXIT_NOT_TEMPERED
    if args.oracle:
        report = gln.tempered_bruteforce(h, args.field)
        agree = report.tempered == fast
        fields["oracle"] = {"tempered": report.tempered, "witness": report.witness,
                            "extremal_ratio": frac_str(report.extremal_ratio), "agree": agree}
        lines.append(f"oracle: {'tempered' if report.tempered else 'not tempered'},"
                     f" max rho_h/rho_g = {report.extremal_ratio}")
        if report.witness:
            lines.append(f"witness I = {_subset_text(report.witness)}")
        lines.append(f"agreement: {'yes' if agree else 'NO'}")
        if not agree:
            code = EXIT_DISAGREE
    _emit(args, _kv_output(args, "subalgebra", fields, lines))
    return code


# -- lp -------------------------------------------------------------------------

def _value_str(x) -> str:
    return "inf" if isinstance(x, float) and math.isinf(x) else frac_str(x)


def _pretty(x) -> str:
    return "inf" if isinstance(x, float) and math.isinf(x) else str(x)


def cmd_lp(args) -> int:
    parts = gln.parse_composition(args.parts)
    n = args.n if args.n is not None else sum(parts)
    gln.check_composition(parts, n, strict=False)
    h = gln.block_diagonal_epsilon(parts, n)
    exponent = gln.lp_exponent(parts, n)
    c = gln.c_value(h)
    m = max(parts)
    exponents = args.p or [2, 4, 6, 8]
    verdicts, code = [], EXIT_OK
    for p in exponents:
        from_exp = gln.almost_lp(parts, n, p)
        closed = gln.almost_lp_closed_form(parts, n, p)
        verdicts.append({"p": p, "almost_lp": from_exp, "closed_form": closed})
        if from_exp != closed:
            code = EXIT_DISAGREE
    if code == EXIT_OK and not verdicts[0]["almost_lp"]:
        code = EXIT_NOT_TEMPERED
    fields = {"parts": list(parts), "n": n, "m": m, "lp_exponent": _value_str(exponent),
              "c": _value_str(c), "verdicts": verdicts}
    lines = [f"h = block Levi {tuple(parts)} in gl_{n}, m = {m}",
             f"p_(g/h) = {_pretty(exponent)}", f"c(h) = {_pretty(c)}"]
    for v in verdicts:
        mark = "" if v["almost_lp"] == v["closed_form"] else "  (closed form disagrees)"
        lines.append(f"almost L^{v['p']}: {'yes' if v['almost_lp'] else 'no'}{mark}")
    if args.format == "csv":
        _emit(args, to_csv([dict(parts=" ".join(map(str, parts)), n=n, lp_exponent=fields["lp_exponent"],
                                 c=fields["c"], **v) for v in verdicts],
                           ["parts", "n", "lp_exponent", "c", "p", "almost_lp", "closed_form"]))
    else:
        _emit(args, _kv_output(args, "lp", fields, lines))
    return code


# -- levi / table ---------------------------------------------------------------

def _parse_subset(text: str) -> List[int]:
    body = text.strip().strip("{}[]() ")
    if not body:
        return []
    try:
        return [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
    except ValueError:
        raise UsageError(f"malformed Levi subset {text!r}") from None


def _levi_rows(R, levis):
    label = str(R.label)
    records = []
    for J in levis:
        v = levi_tempered(R, J)
        pred = table_predicate(R, J)
        match = None if pred is None else pred == (not v.tempered)
        records.append(levi_record(label, J, v.levi_type, v, match))
    return records


def cmd_levi(args) -> int:
    R = build(parse_label(args.label, args.field))
    if args.all:
        rows = generate_table(R).rows
        records = [levi_record(r.label, r.levi, r.levi_type, r.verdict, r.match) for r in rows]
    elif args.pure:
        if R.label.kind != "real" or R.label.family not in ("su", "so", "sp"):
            raise UsageError("--pure applies to su(p,q), so(p,q) and sp(p,q)")
        q = R.rank
        records = _levi_rows(R, [tuple(range(k + 1, q + 1)) for k in range(1, q + 1)])
        for rec, k in zip(records, range(1, q + 1)):
            rec["k"] = k
    else:
        J = normalize_levi(R, _parse_subset(args.subset if args.subset is not None else ""))
        records = _levi_rows(R, [J])
    columns = LEVI_COLUMNS if not args.pure else ("k",) + LEVI_COLUMNS
    _emit(args, render_records(records, columns, args.format, "levi"))
    if any(r["table_match"] is False for r in records):
        return EXIT_DISAGREE
    if len(records) == 1 and not args.all and not args.pure:
        return EXIT_OK if records[0]["tempered"] else EXIT_NOT_TEMPERED
    return EXIT_OK


def _table_labels(which: str) -> List[str]:
    if which == "1":
        return [f"{a.lower()}{n}" for a, n in TABLE1_TYPES] + [f"{a.lower()}{n}(C)" for a, n in TABLE1_TYPES]
    return table2_labels()


def cmd_table(args) -> int:
    labels = list(args.labels) or _table_labels(args.which)
    records, summary = [], []
    for name in labels:
        R = build(parse_label(name, args.field))
        table = generate_table(R)
        rows = table.rows
        if args.mismatches_only:
            rows = [r for r in rows if r.match is False]
        records += [levi_record(r.label, r.levi, r.levi_type, r.verdict, r.match) for r in rows]
        checked = sum(r.match is not None for r in table.rows)
        summary.append({"g_label": table.label, "levis": len(table.rows), "checked": checked,
                        "mismatches": len(table.mismatches)})
    if args.format == "text":
        text = text_table(records, LEVI_COLUMNS) + "\n" + text_table(
            summary, ("g_label", "levis", "checked", "mismatches"))
    else:
        text = render_records(records, LEVI_COLUMNS, args.format, "table", summary=summary)
    _emit(args, text)
    return EXIT_DISAGREE if any(s["mismatches"] for s in summary) else EXIT_OK


# -- verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    reports = run_suites(args.suites, max_n=args.max_n, seed=args.seed, samples=args.samples, r=args.r)
    if args.format == "json":
        body = {"config": {"suites": args.suites or ["all"], "max_n": args.max_n, "seed": args.seed,
                           "samples": args.samples, "r": args.r},
                "suites": [rep.as_dict() for rep in reports],
                "passed": all(rep.passed for rep in reports)}
        text = to_json(envelope("verify", **body))
    else:
        records = [{"suite": rep.suite, "cases": rep.cases, "mismatches": len(rep.mismatches),
                    "status": "pass" if rep.passed else "FAIL", "seconds": f"{rep.wall_time:.1f}"}
                   for rep in reports]
        columns = ("suite", "cases", "mismatches", "status", "seconds")
        if args.format == "csv":
            text = to_csv(records, columns)
        else:
            text = text_table(records, columns)
            for rep in reports:
                for case in rep.mismatches[:5]:
                    text += f"{rep.suite}: {case}\n"
                if len(rep.mismatches) > 5:
                    text += f"{rep.suite}: ... {len(rep.mismatches) - 5} more\n"
    _emit(args, text)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_DISAGREE


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--field", choices=("R", "C"), default="R",
                        help="real or complex group (complex doubles every multiplicity)")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="temperkit",
        description="Temperedness of L^2(G/H), tensor products of induced representations, "
                    "and L^p exponents, decided in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", parents=[common], help="Ind_P(1) (x) Ind_Q(1) for GL_n")
    p.add_argument("P", help="block sizes of P, e.g. 3,1")
    p.add_argument("Q", help="block sizes of Q, e.g. 2,2")
    p.add_argument("--oracle", action="store_true", help="cross-check against all E_I on p cap q^o")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("subalgebra", parents=[common], help="L^2(G/H) for an a-stable h of gl_n")
    p.add_argument("source", help="0/1 grid file, '-' for stdin, or inline rows like 110/010/001")
    p.add_argument("--oracle", action="store_true", help="cross-check against all E_I")
    p.set_defaults(func=cmd_subalgebra)

    p = sub.add_parser("lp", parents=[common], help="L^p exponent of GL_n / (GL_n1 x ... x GL_nr)")
    p.add_argument("parts", help="block sizes, e.g. 2,2")
    p.add_argument("--n", type=int, help="ambient n (default: sum of parts)")
    p.add_argument("--p", type=int, action="append", help="even exponent to test (repeatable)")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("levi", parents=[common], help="L^2(G/L) for Levi subgroups of a simple G")
    p.add_argument("label", help="e6, a3, g2(C), su(3,3), so(7,3), sp(3,2), su*(8), so*(10), ...")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="every Levi subset")
    which.add_argument("--subset", help="simple-root indices, e.g. {1,3}")
    which.add_argument("--pure", action="store_true", help="the parabolics J_k = {k+1..q}")
    p.set_defaults(func=cmd_levi)

    p = sub.add_parser("table", parents=[common], help="regenerate the classification tables")
    p.add_argument("labels", nargs="*", help="algebras to tabulate (default: the whole table)")
    p.add_argument("--which", choices=("1", "2"), default="1",
                   help="1: split and complex; 2: classical non-split forms")
    p.add_argument("--mismatches-only", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run the oracle suites")
    p.add_argument("suites", nargs="*", help=f"any of {', '.join(SUITES)} or all (default)")
    p.add_argument("--max-n", type=int, help="largest n (or box side for quad)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="random matrices per n")
    p.add_argument("--r", type=int, help="largest r for the quad suite")
    p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("max_n", "samples", "r", "n"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except (TemperkitError, ValueError, OSError) as exc:
        print(f"temperkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
