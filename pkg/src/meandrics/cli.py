"""Command-line interface.

Exit codes: 0 on success, 2 on invalid input, 3 when a work limit stops
the computation (partial results are still written when they exist),
1 if an internal identity check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .limits import ConsistencyError, MeandricsError, ResourceLimitError

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


class UsageError(MeandricsError, ValueError):
    """Bad combination of command-line options."""


# ---------------------------------------------------------------------------
# formatting


def fmt_float(x: float):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(f"{x:.15g}")


def fmt_exact(x) -> str:
    return str(Fraction(x)) if not isinstance(x, int) else str(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def emit(args, csv_header, csv_rows, json_obj) -> None:
    text = to_csv(csv_header, csv_rows) if args.format == "csv" else to_json(json_obj)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _poly_rows(poly):
    return [[str(k), str(c)] for k, c in sorted(poly.items())]


def _laurent_rows(lp):
    return [[str(e), str(c)] for e, c in lp.items()]


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# ---------------------------------------------------------------------------
# subcommands


def cmd_meander(args) -> int:
    from .meanders import genus_meander_polynomials, meander_polynomial

    n = _require(args.n, "--n")
    if args.genus is None:
        poly = meander_polynomial(n, args.max_work)
        emit(args, ["k", "count"], _poly_rows(poly),
             {"n": n, "order": 2 * n, "polynomial": str(poly),
              "coefficients": {str(k): str(c) for k, c in sorted(poly.items())}})
        return EXIT_OK
    by_g = genus_meander_polynomials(n, args.max_work)
    if args.genus < 0:
        raise UsageError("--genus must be nonnegative")
    poly = by_g.get(args.genus, {})
    emit(args, ["k", "count"], _poly_rows(poly),
         {"n": n, "genus": args.genus,
          "coefficients": {str(k): str(c) for k, c in sorted(poly.items())}})
    return EXIT_OK


def _table_output(args, table) -> None:
    if args.layout == "wide":
        n_max = table.n_max
        header = ["n"] + [f"k{k}" for k in range(1, n_max + 1)]
        rows = []
        for n in range(1, n_max + 1):
            poly = table.polynomial(n)
            rows.append([str(n)] + [str(poly.coefficient(k)) for k in range(1, n_max + 1)])
        emit(args, header, rows, {"n_max": n_max, "header": header, "rows": rows})
        return
    rows = [[str(x) for x in r] for r in table.rows()]
    emit(args, ["n", "k", "w", "count"], rows,
         {"n_max": table.n_max,
          "rows": [{"n": n, "k": k, "w": w, "count": str(c)} for n, k, w, c in table.rows()]})


def cmd_table1(args) -> int:
    from .meanders import semimeander_table

    n_max = _require(args.n_max, "--n-max")
    try:
        table = semimeander_table(n_max, args.max_work, threads=args.threads)
    except ResourceLimitError as exc:
        if exc.partial is not None:
            _table_output(args, exc.partial)
        raise
    _table_output(args, table)
    return EXIT_OK


def cmd_semimeander(args) -> int:
    from .meanders import semimeander_polynomial

    if args.action == "table1":
        return cmd_table1(args)
    n = _require(args.n, "--n")
    poly = semimeander_polynomial(n, args.max_work)
    emit(args, ["k", "count"], _poly_rows(poly),
         {"n": n, "polynomial": str(poly),
          "coefficients": {str(k): str(c) for k, c in sorted(poly.items())}})
    return EXIT_OK


def cmd_tl_det(args) -> int:
    from . import temperley_lieb as tl

    n = _require(args.n, "--n")
    modes = ["direct", "formula"] if args.mode == "both" else [args.mode]
    if args.q is not None:
        fns = {"direct": tl.determinant_at, "formula": tl.formula_at}
        vals = {m: fns[m](n, args.q) for m in modes}
        emit(args, ["mode", "value"], [[m, str(v)] for m, v in vals.items()],
             {"n": n, "q": str(args.q), **{m: str(v) for m, v in vals.items()}})
        return EXIT_OK
    fns = {"direct": tl.meander_determinant_direct, "formula": tl.meander_determinant_formula}
    polys = {m: fns[m](n) for m in modes}
    if args.format == "csv":
        emit(args, ["mode", "polynomial"], [[m, str(p)] for m, p in polys.items()], None)
    else:
        emit(args, None, None,
             {"n": n, **{m: {"text": str(p), "coefficients": p.to_json()} for m, p in polys.items()}})
    return EXIT_OK


def cmd_words(args) -> int:
    from . import words

    if args.word:
        w = [int(x) for x in args.word.split(",") if x.strip()]
        g = words.gamma_word(w)
        emit(args, ["word", "gamma"], [[args.word, str(g)]], {"word": w, "gamma": str(g)})
        return EXIT_OK
    n = _require(args.n, "--n")
    q = _require(args.q, "--q")
    if q.denominator != 1 or q < 1:
        raise UsageError("--q must be a positive integer for word sums")
    q = int(q)
    if args.semi:
        v = words.semimeander_poly_via_words(n, q, args.max_work)
    else:
        v = words.meander_poly_via_words(n, q, args.max_work)
    kind = "semimeander" if args.semi else "meander"
    emit(args, ["kind", "n", "q", "value"], [[kind, str(n), str(q), str(v)]],
         {"kind": kind, "n": n, "q": q, "value": str(v)})
    return EXIT_OK


def cmd_wick(args) -> int:
    from .wick import PropagatorTable, StarSystem, gaussian_average

    if args.input is None or args.input == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
    if not isinstance(data, dict) or "stars" not in data:
        raise UsageError("wick input must be a JSON object with a 'stars' list")
    stars = StarSystem(data["stars"])
    prop = data.get("propagator")
    table = PropagatorTable([[Fraction(str(x)) for x in row] for row in prop]) if prop else None
    if table is not None:
        for lab in stars.labels():
            if not 1 <= lab <= table.size:
                raise UsageError(f"label {lab} outside the propagator table")
    avg = gaussian_average(stars, table, args.max_work)
    emit(args, ["N_power", "coefficient"], _laurent_rows(avg),
         {"average": str(avg), "coefficients": avg.to_json()})
    return EXIT_OK


def cmd_onematrix(args) -> int:
    from . import onematrix as om

    order = args.order if args.order is not None else 6
    pot = om.EvenPotential.quartic()
    if args.action == "f0":
        coeffs = om.quartic_f0_coefficients(order)
        rows = [[str(n), fmt_exact(c)] for n, c in enumerate(coeffs, start=1)]
        emit(args, ["n", "f0"], rows, {"g_c": "1/12", "f0": {r[0]: r[1] for r in rows}})
    elif args.action == "closed":
        s = om.quartic_closed_f0(order)
        rows = [[str(n), fmt_exact(s[n])] for n in range(1, order + 1)]
        emit(args, ["n", "f0"], rows, {"f0": {r[0]: r[1] for r in rows}})
    elif args.action == "moments":
        n = _require(args.n, "--n")
        m = om.planar_moments(pot, n, order)
        rows = [[str(e[0]), fmt_exact(c)] for e, c in m.items()]
        emit(args, ["g_power", "coefficient"], rows, {"n": n, "moment": {r[0]: r[1] for r in rows}})
    elif args.action == "string":
        N = _require(args.N, "--N")
        m_max = args.m_max if args.m_max is not None else N
        rs = om.string_equation_finite_N(pot, N, m_max, order)
        rows = [[str(m), str(e[0]), fmt_exact(c)] for m, r in enumerate(rs, 1) for e, c in r.items()]
        emit(args, ["m", "g_power", "coefficient"], rows,
             {"N": N, "r": {str(m): {str(e[0]): fmt_exact(c) for e, c in r.items()} for m, r in enumerate(rs, 1)}})
    elif args.action == "free-energy":
        N = _require(args.N, "--N")
        F = om.finite_n_free_energy(pot, N, order)
        rows = [[str(e[0]), fmt_exact(c)] for e, c in F.items()]
        emit(args, ["g_power", "coefficient"], rows, {"N": N, "F": {r[0]: r[1] for r in rows}})
    elif args.action == "critical":
        crit = om.quartic_critical(order)
        rows = [[str(n), fmt_exact(c)] for n, c in enumerate(crit.coefficients, start=1)]
        emit(args, ["n", "f0"], rows,
             {"g_c": str(crit.g_c), "exponent": str(crit.exponent),
              "ratios": [fmt_float(x) for x in crit.ratios()]})
    return EXIT_OK


def cmd_exponents(args) -> int:
    from . import exponents as ex

    if args.table2:
        rows = ex.multi_river_table()
        emit(args, ["q", "f", "R_exact", "R", "alpha_exact", "alpha"],
             [[r["q"], r["f"], r["R_exact"], f"{r['R']:.15g}", r["alpha_exact"], f"{r['alpha']:.15g}"]
              for r in rows],
             {"rows": [{**r, "R": fmt_float(r["R"]), "alpha": fmt_float(r["alpha"])} for r in rows]})
        return EXIT_OK
    if args.qc:
        qc = ex.winding_transition()
        emit(args, ["q_c", "c"], [[f"{qc:.15g}", f"{ex.dense_on_charge(qc):.15g}"]],
             {"q_c": fmt_float(qc), "c": fmt_float(ex.dense_on_charge(qc))})
        return EXIT_OK
    q = float(_require(args.q, "--q"))
    p = float(_require(args.p, "--p"))
    rec = ex.exponent_point(q, p).as_dict()
    out = {k: (fmt_float(v) if isinstance(v, float) else v) for k, v in rec.items()}
    keys = sorted(out)
    emit(args, keys, [["" if out[k] is None else str(out[k]) for k in keys]], out)
    return EXIT_OK


def cmd_hirota(args) -> int:
    from . import hirota as hz

    if args.action == "omega":
        m = _require(args.m, "--m")
        poly = hz.omega_polynomials(m)[m - 1]
        if args.format == "csv":
            rows = [[str(i), str(j), str(k), fmt_exact(c)] for (i, j, k), c in sorted(poly.coeffs.items())]
            emit(args, ["a", "b", "n", "coefficient"], rows, None)
        else:
            emit(args, None, None, {"m": m, "omega": str(poly)})
        return EXIT_OK
    if args.action == "f0":
        x1 = _require(args.x1, "--x1")
        x2 = _require(args.x2, "--x2")
        x3 = _require(args.x3, "--x3")
        order = args.order if args.order is not None else 6
        g = hz.genus_zero_system(x1, x2, x3, order)
        rows = [[str(m), fmt_exact(g.f0[m])] for m in range(1, order + 1)]
        emit(args, ["m", "f0"], rows,
             {"f0": {r[0]: r[1] for r in rows},
              "normalization": "(t d/dt)^2 f0 = F1 F2 F3 / t^2"})
        return EXIT_OK
    # z: a single partition function
    n = _require(args.n, "--n")
    a = _require(args.a, "--a")
    b = _require(args.b, "--b")
    order = args.order if args.order is not None else 6
    Z = hz.hirota_value(n, a, b, order)
    rows = [[str(k), fmt_exact(Z[k])] for k in range(order + 1)]
    emit(args, ["k", "coefficient"], rows, {"Z": {r[0]: r[1] for r in rows}})
    return EXIT_OK


def _builtin_sequence(name: str, n_max: int, args):
    from .arches import catalan

    if name == "catalan":
        return [catalan(n) for n in range(1, n_max + 1)], 1, 1
    if name == "catalan2":
        return [catalan(n) ** 2 for n in range(1, n_max + 1)], 1, 2
    if name == "quartic-f0":
        from .onematrix import quartic_f0_coefficients

        return quartic_f0_coefficients(n_max), 1, 1
    if name == "semimeander":
        from .meanders import semimeander_table
        from .seqfit import even_subsequence

        table = semimeander_table(n_max, args.max_work, threads=args.threads)
        seq = [table.one_component(n) for n in range(1, n_max + 1)]
        sub, start = even_subsequence(seq, 1)
        return sub, start, 2
    raise UsageError(f"unknown sequence {name!r}")


def cmd_fit(args) -> int:
    from .seqfit import fit_power_law, read_sequence_csv

    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            seq = read_sequence_csv(fh.read())
        start, stride = args.start, args.stride
    else:
        name = _require(args.sequence, "--sequence or --input")
        seq, start, stride = _builtin_sequence(name, _require(args.n_max, "--n-max"), args)
    res = fit_power_law(seq, stride=stride, start=start)
    emit(args, ["R", "alpha", "first", "last"],
         [[f"{res.R_estimate:.15g}", f"{res.alpha_estimate:.15g}", str(res.window[0]), str(res.window[1])]],
         {"R_estimate": fmt_float(res.R_estimate), "alpha_estimate": fmt_float(res.alpha_estimate),
          "window": list(res.window), "stride": stride,
          "deltas_R": [fmt_float(x) for x in res.deltas_R],
          "deltas_alpha": [fmt_float(x) for x in res.deltas_alpha]})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=positive_int, default=1, help="worker processes")
    common.add_argument("--max-work", type=positive_int, default=None,
                        help="work limit (default from MEANDRICS_MAX_WORK or built in)")
    common.add_argument("--format", choices=["csv", "json"], default="json")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="meandrics", description="Exact meander and matrix-model combinatorics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("meander", parents=[common], help="meander polynomial m_2n(q)")
    s.add_argument("--n", type=positive_int)
    s.add_argument("--genus", type=int, default=None, help="count pairings of this genus")
    s.set_defaults(func=cmd_meander)

    s = sub.add_parser("semimeander", parents=[common], help="semi-meander polynomial or table")
    s.add_argument("action", nargs="?", choices=["poly", "table1"], default="poly")
    s.add_argument("--n", type=positive_int)
    s.add_argument("--n-max", type=positive_int)
    s.add_argument("--layout", choices=["long", "wide"], default="long")
    s.set_defaults(func=cmd_semimeander)

    s = sub.add_parser("table1", parents=[common], help="semi-meander counts by order, components, winding")
    s.add_argument("--n-max", type=positive_int)
    s.add_argument("--layout", choices=["long", "wide"], default="long")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("tl-det", parents=[common], help="meander (Gram) determinant")
    s.add_argument("--n", type=positive_int)
    s.add_argument("--mode", choices=["direct", "formula", "both"], default="both")
    s.add_argument("--q", type=parse_rational, default=None, help="evaluate at a rational q")
    s.set_defaults(func=cmd_tl_det)

    s = sub.add_parser("words", parents=[common], help="planar word averages")
    s.add_argument("--n", type=positive_int)
    s.add_argument("--q", type=parse_rational)
    s.add_argument("--semi", action="store_true", help="semi-meander word sum")
    s.add_argument("--word", default=None, help="comma-separated colours; prints gamma(word)")
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("wick", parents=[common], help="finite-N Gaussian average from JSON")
    s.add_argument("--input", default=None, help="JSON file with 'stars' and optional 'propagator'")
    s.set_defaults(func=cmd_wick)

    s = sub.add_parser("onematrix", parents=[common], help="quartic one-matrix model")
    s.add_argument("action", nargs="?", default="f0",
                   choices=["f0", "closed", "moments", "string", "free-energy", "critical"])
    s.add_argument("--order", type=positive_int)
    s.add_argument("--n", type=positive_int)
    s.add_argument("--N", type=positive_int)
    s.add_argument("--m-max", type=positive_int)
    s.set_defaults(func=cmd_onematrix)

    s = sub.add_parser("exponents", parents=[common], help="KPZ configuration exponents")
    s.add_argument("--q", type=float)
    s.add_argument("--p", type=float)
    s.add_argument("--table2", action="store_true")
    s.add_argument("--qc", action="store_true", help="winding transition point")
    s.set_defaults(func=cmd_exponents)

    s = sub.add_parser("hirota", parents=[common], help="tricoloured triangulations")
    s.add_argument("action", choices=["omega", "f0", "z"])
    s.add_argument("--m", type=positive_int)
    s.add_argument("--x1", type=parse_rational)
    s.add_argument("--x2", type=parse_rational)
    s.add_argument("--x3", type=parse_rational)
    s.add_argument("--n", type=positive_int)
    s.add_argument("--a", type=parse_rational)
    s.add_argument("--b", type=parse_rational)
    s.add_argument("--order", type=positive_int)
    s.set_defaults(func=cmd_hirota)

    s = sub.add_parser("fit", parents=[common], help="growth rate and exponent fit")
    s.add_argument("--input", default=None, help="CSV with a 'value' column")
    s.add_argument("--sequence", choices=["catalan", "catalan2", "quartic-f0", "semimeander"])
    s.add_argument("--n-max", type=positive_int)
    s.add_argument("--stride", type=int, choices=[1, 2], default=1)
    s.add_argument("--start", type=positive_int, default=1)
    s.set_defaults(func=cmd_fit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, TypeError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


run = main


if __name__ == "__main__":
    sys.exit(main())
