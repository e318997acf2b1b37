"""Command-line interface: conversions, enumeration, operators, verification, BVP.

Exit codes: 0 success, 2 parse error, 3 symmetry/region violation,
4 operator not reducible, 5 verification mismatch, 6 solver non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import re
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from .cases import (CASE_IDS, GROUPS, AsymptoticData, SymmetryError, descriptor,
                    in_region, k_to_asymptotic, make_k, asymptotic_to_k)
from .enumeration import enumerate_cos_pairs, integral_solutions
from .solver import (ConvergenceError, SolverConfig, solve_radial,
                     verify_asymptotics)
from .stokes import stokes_from_asymptotic, stokes_from_k
from .theta import (CISpec, NotReducibleError, QDO, qdo_from_ci,
                    verify_corollary)

EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NOT_REDUCIBLE = 4
EXIT_VERIFY = 5
EXIT_NO_CONVERGENCE = 6

# first case of each group carries the group's table
GROUP_TABLE = {"4": "table5", "5ab": "table6", "5cde": "table7", "6": "table8"}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt_frac(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"not an exact rational: {text!r}", EXIT_PARSE) from None


def fmt_s1(n: int, ambiguous: bool) -> str:
    return f"\u00b1{n}" if ambiguous and n != 0 else str(n)


def max_threads() -> int:
    env = os.environ.get("TTSTAR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"TTSTAR_THREADS must be an integer, got {env!r}",
                           EXIT_PARSE) from None
    return os.cpu_count() or 1


def record_row(rec) -> dict:
    s1, s2 = rec.stokes_int
    return {
        "a": fmt_frac(rec.a_label), "b": fmt_frac(rec.b_label),
        "gamma": fmt_frac(rec.asymptotic.gamma),
        "delta": fmt_frac(rec.asymptotic.delta),
        "s1": fmt_s1(s1, rec.stokes.s1_sign_ambiguous), "s2": str(s2),
        "tk": str(rec.tk), "block": rec.block,
    }


def case_rows(case_id: str, full: bool) -> list[dict]:
    recs = integral_solutions(case_id)
    if not full and descriptor(case_id).group in ("4", "6"):
        recs = [r for r in recs if r.asymptotic.gamma + r.asymptotic.delta >= 0]
    return [record_row(r) for r in recs]


FIELDS = ("a", "b", "gamma", "delta", "s1", "s2", "tk", "block")


def emit_table(rows: list[dict], fields, out) -> None:
    widths = [max(len(f), *(len(r[f]) for r in rows)) if rows else len(f)
              for f in fields]
    out.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip() + "\n")
    for r in rows:
        out.write("  ".join(r[f].ljust(w) for f, w in zip(fields, widths)).rstrip() + "\n")


def emit_csv(rows: list[dict], fields, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([r[f] for f in fields])


def emit_json(rows: list[dict], fields, out) -> None:
    json.dump([{f: r[f] for f in fields} for r in rows], out, indent=2,
              ensure_ascii=False)
    out.write("\n")


def _latex_frac(text: str) -> str:
    if "/" in text:
        num, den = text.split("/")
        sign = ""
        if num.startswith("-"):
            sign, num = "-", num[1:]
        return f"{sign}\\tfrac{{{num}}}{{{den}}}"
    return text


def _latex_tk(tk: str) -> str:
    out = tk.replace("\u03b8", "\\theta ")
    # rewrite the root fractions
    import re
    out = re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", out)
    return f"${out}$"


def emit_latex(rows: list[dict], fields, out) -> None:
    cols = "|".join("c" for _ in fields)
    out.write(f"\\begin{{tabular}}{{|{cols}|}}\n\\hline\n")
    header = {"a": "$a/\\pi$", "b": "$b/\\pi$", "gamma": "$\\gamma$",
              "delta": "$\\delta$", "s1": "$s_1^{\\mathbb R}$",
              "s2": "$s_2^{\\mathbb R}$", "tk": "$T_k$", "block": "block"}
    out.write(" & ".join(header.get(f, f) for f in fields) + " \\\\\n\\hline\n")
    prev_block = None
    for r in rows:
        if prev_block is not None and r.get("block") != prev_block:
            out.write("\\hline\n")
        prev_block = r.get("block")
        cells = []
        for f in fields:
            val = r[f]
            if f == "tk":
                cells.append(_latex_tk(val))
            elif f in ("a", "b", "gamma", "delta", "s1", "s2"):
                cells.append(f"${_latex_frac(val.replace(chr(0xb1), chr(92) + 'pm '))}$")
            else:
                cells.append(val)
        out.write(" & ".join(cells) + " \\\\\n")
    out.write("\\hline\n\\end{tabular}\n")


EMITTERS = {"table": emit_table, "csv": emit_csv, "json": emit_json,
            "latex": emit_latex}


def default_tables_dir() -> Path:
    return Path(__file__).resolve().parents[2] / "tables"


# --- subcommands -------------------------------------------------------

def cmd_convert(args) -> int:
    case_id = args.case
    n = parse_frac(args.n)
    if n <= 0:
        raise CliError("N must be positive", EXIT_PARSE)
    values = [parse_frac(v) for v in args.values]
    if args.source == "asymptotic":
        if len(values) != 2:
            raise CliError("asymptotic input needs exactly two values", EXIT_PARSE)
        asym = AsymptoticData(*values)
        if not in_region(case_id, asym):
            raise CliError(f"(gamma, delta) = ({fmt_frac(asym.gamma)}, "
                           f"{fmt_frac(asym.delta)}) outside the region of "
                           f"case {case_id}", EXIT_DOMAIN)
        k = asymptotic_to_k(case_id, asym, n)
        stokes = stokes_from_asymptotic(case_id, asym)
    else:
        try:
            k = make_k(case_id, values)
        except SymmetryError as e:
            raise CliError(str(e), EXIT_DOMAIN) from None
        except ValueError as e:
            raise CliError(str(e), EXIT_PARSE) from None
        if k.N <= 0:
            raise CliError("k-vector has nonpositive N", EXIT_DOMAIN)
        asym = k_to_asymptotic(k)
        stokes = stokes_from_k(k)
    ints = stokes.integral()
    print(f"case      {case_id}")
    print(f"gamma     {fmt_frac(asym.gamma)}")
    print(f"delta     {fmt_frac(asym.delta)}")
    print(f"k         {' '.join(fmt_frac(e) for e in k.entries)}")
    print(f"N         {fmt_frac(k.N)}")
    print(f"in_region {'yes' if in_region(case_id, asym) else 'no'}")
    if ints is not None:
        s1, s2 = ints
        print(f"stokes    ({fmt_s1(s1, stokes.s1_sign_ambiguous)}, {s2})  [integral]")
    else:
        print(f"stokes    ({stokes.s1.to_float():.12g}, "
              f"{stokes.s2.to_float():.12g})  [irrational]")
    return 0


def _raw_rows() -> list[dict]:
    rows = []
    for pair in enumerate_cos_pairs():
        m = (pair.x - pair.y).is_integer()
        p = (pair.x * pair.y).is_integer()
        rows.append({"a": fmt_frac(pair.a_label), "b": fmt_frac(pair.b_label),
                     "m": str(m), "p": str(p)})
    return rows


def cmd_enumerate(args) -> int:
    emit = EMITTERS[args.format]
    if args.raw:
        emit(_raw_rows(), ("a", "b", "m", "p"), sys.stdout)
        return 0
    if args.all:
        cases = list(CASE_IDS)
        with ThreadPoolExecutor(max_workers=min(max_threads(), len(cases))) as ex:
            results = list(ex.map(lambda c: case_rows(c, args.full), cases))
        for case_id, rows in zip(cases, results):
            for r in rows:
                r["case"] = case_id
        rows = [r for rs in results for r in rs]
        emit(rows, ("case",) + FIELDS, sys.stdout)
        return 0
    if not args.case:
        raise CliError("a case id or --all is required", EXIT_PARSE)
    emit(case_rows(args.case, args.full), FIELDS, sys.stdout)
    return 0


def _parse_int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"not a comma-separated integer list: {text!r}",
                       EXIT_PARSE) from None


def cmd_qdo(args) -> int:
    weights = _parse_int_list(args.weights)
    degrees = _parse_int_list(args.degrees)
    try:
        spec = CISpec(weights, degrees)
        op = qdo_from_ci(spec)
    except (ValueError, NotReducibleError) as e:
        raise CliError(str(e), EXIT_NOT_REDUCIBLE) from None
    print(f"{spec}: {op}")
    if args.match:
        found = []
        for group, cases in GROUPS.items():
            case_id = cases[0]
            n1 = descriptor(case_id).n_plus_1
            for rec in integral_solutions(case_id):
                if QDO(n1, rec.tk) == op:
                    found.append(f"group {group} {rec.block} "
                                 f"(a,b)=({fmt_frac(rec.a_label)},{fmt_frac(rec.b_label)})")
        if found:
            for f in found:
                print(f"match: {f}")
        else:
            print("match: none")
    return 0


def golden_rows(path: Path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def compare_golden(case_id: str, tables_dir: Path) -> list[str]:
    """Mismatches between computed records and the golden table files."""
    problems = []
    group = descriptor(case_id).group
    path = tables_dir / f"{GROUP_TABLE[group]}.csv"
    if not path.exists():
        return [f"missing golden file {path}"]
    expected = golden_rows(path)
    got = case_rows(case_id, full=group in ("5ab", "5cde"))
    if len(expected) != len(got):
        problems.append(f"{path.name}: {len(got)} rows computed, "
                        f"{len(expected)} expected")
        return problems
    for i, (e, g) in enumerate(zip(expected, got)):
        for f in FIELDS:
            if e[f] != g[f]:
                problems.append(f"{path.name} row {i + 1} field {f}: "
                                f"computed {g[f]!r}, expected {e[f]!r}")
    # the (gamma, delta) summary table lists all 19 points per group
    path3 = tables_dir / "table3.csv"
    if path3.exists():
        rows3 = golden_rows(path3)
        recs = integral_solutions(case_id)
        if len(rows3) != len(recs):
            problems.append(f"table3.csv: {len(rows3)} rows, expected {len(recs)}")
        else:
            for i, (e, rec) in enumerate(zip(rows3, recs)):
                want = (e["block"], e[f"gamma_{group}"], e[f"delta_{group}"])
                have = (rec.block, fmt_frac(rec.asymptotic.gamma),
                        fmt_frac(rec.asymptotic.delta))
                if want != have:
                    problems.append(f"table3.csv row {i + 1} group {group}: "
                                    f"computed {have}, expected {want}")
    else:
        problems.append(f"missing golden file {path3}")
    return problems


def cmd_verify(args) -> int:
    case_id = args.case
    if args.bound < 6:
        raise CliError("--bound must be at least 6", EXIT_PARSE)
    report = verify_corollary(case_id, args.bound,
                              corrupt_catalog=args.self_test)
    print(f"case {case_id}, bound {args.bound}")
    print(f"forward: {report.forward_checked} catalog entries, "
          f"{len(report.forward_mismatches)} mismatches")
    print(f"converse: {report.converse_checked} candidate operators, "
          f"{len(report.converse_violations)} violations, "
          f"{len(report.flagged_non_ci)} flagged non-CI")
    failures = report.forward_mismatches + report.converse_violations
    golden_problems = compare_golden(case_id, Path(args.tables))
    print(f"golden tables: {len(golden_problems)} mismatches")
    failures += golden_problems
    if failures:
        raise CliError(f"FAIL: {failures[0]}", EXIT_VERIFY)
    print("PASS")
    return 0


def cmd_solve(args) -> int:
    case_id = args.case
    asym = AsymptoticData(parse_frac(args.gamma), parse_frac(args.delta))
    if not in_region(case_id, asym):
        raise CliError(f"(gamma, delta) = ({fmt_frac(asym.gamma)}, "
                       f"{fmt_frac(asym.delta)}) outside the region of "
                       f"case {case_id}", EXIT_DOMAIN)
    cfg = SolverConfig(t_min=args.t_min, t_max=args.t_max,
                       grid_points=args.points, newton_tol=args.tol,
                       max_iterations=args.max_iterations)
    try:
        sol = solve_radial(case_id, asym, cfg)
    except ConvergenceError as e:
        raise CliError(str(e), EXIT_NO_CONVERGENCE) from None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("t", "u", "v"))
    for t, u, v in zip(sol.grid, sol.u, sol.v):
        w.writerow((f"{t:.12g}", f"{u:.12g}", f"{v:.12g}"))
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
        print(f"profile written to {args.output}")
    else:
        sys.stdout.write(buf.getvalue())
    report = verify_asymptotics(sol, args.tol_slope, cfg.newton_tol)
    print(f"residual      {sol.residual_norm:.3e}")
    print(f"fitted gamma  {sol.fitted_gamma:.6f}  (target {fmt_frac(asym.gamma)},"
          f" error {report.gamma_error:.4f})")
    print(f"fitted delta  {sol.fitted_delta:.6f}  (target {fmt_frac(asym.delta)},"
          f" error {report.delta_error:.4f})")
    print(f"offsets       u: {sol.offset_u:.6f}  v: {sol.offset_v:.6f}")
    print("asymptotics   " + ("verified" if report.ok else "NOT verified"))
    return 0 if report.ok else 1


# let argparse accept negative rationals ("-2/3") as positional values
_NEGATIVE_VALUE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ttstar",
        description="Exact Stokes data, integral-solution tables, operator "
                    "constructions and the radial BVP of the two-function "
                    "tt*-Toda reductions.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert between asymptotic and "
                                       "holomorphic data; print Stokes data")
    c.add_argument("case", choices=CASE_IDS)
    c.add_argument("--from", dest="source", choices=("asymptotic", "k"),
                   required=True)
    c.add_argument("values", nargs="+")
    c.add_argument("--n", default="1", help="normalization N (default 1)")
    c.set_defaults(func=cmd_convert)
    c._negative_number_matcher = _NEGATIVE_VALUE

    e = sub.add_parser("enumerate", help="list the integral solutions")
    e.add_argument("case", nargs="?", choices=CASE_IDS)
    e.add_argument("--all", action="store_true")
    e.add_argument("--full", action="store_true",
                   help="all 19 rows for the symmetric groups too")
    e.add_argument("--raw", action="store_true",
                   help="the 33 integral cosine pairs")
    e.add_argument("--format", choices=tuple(EMITTERS), default="table")
    e.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("qdo", help="quantum differential operator of a "
                                   "weighted complete intersection")
    q.add_argument("--weights", required=True)
    q.add_argument("--degrees", default="")
    q.add_argument("--match", action="store_true",
                   help="report matching integral-solution records")
    q.set_defaults(func=cmd_qdo)

    v = sub.add_parser("verify", help="verify the integrality "
                                      "characterization and golden tables")
    v.add_argument("--case", choices=CASE_IDS, required=True)
    v.add_argument("--bound", type=int, default=12)
    v.add_argument("--tables", default=str(default_tables_dir()))
    v.add_argument("--self-test", action="store_true",
                   help="corrupt one catalog entry; must exit 5")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="radial boundary-value solve")
    s.add_argument("case", choices=CASE_IDS)
    s.add_argument("gamma")
    s.add_argument("delta")
    s.add_argument("--t-min", type=float, default=-12.0)
    s.add_argument("--t-max", type=float, default=4.0)
    s.add_argument("--points", type=int, default=2048)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--max-iterations", type=int, default=60)
    s.add_argument("--tol-slope", type=float, default=0.05)
    s.add_argument("--output", help="CSV profile path (default: stdout)")
    s.set_defaults(func=cmd_solve)
    s._negative_number_matcher = _NEGATIVE_VALUE
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
