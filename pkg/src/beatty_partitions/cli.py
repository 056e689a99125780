"""Command-line front end.

    beatty-partitions count --alpha sqrt:2 --kind q --n 100
    beatty-partitions table --alpha sqrt:2 --kind p
    beatty-partitions lambda --alpha sqrt:2 --N 1000000
    beatty-partitions saddle --alpha sqrt:2 --n 800 --kind p
    beatty-partitions check-decomposition --alpha sqrt:2 --t 0.1
    beatty-partitions sums --alpha sqrt:2 --x 1000000 --what S

Exit status: 0 on success, 1 on domain errors, 2 on resource or tolerance errors.
Errors are reported on stderr as {"error_kind", "message", "module"}.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import decimal
import io
import json
import sys

import mpmath

from . import asympt, beatty, counting, genfun, saddle
from .alpha import parse_alpha, with_quotient_bound
from .errors import BeattyError


def _int_list(text: str) -> list[int]:
    return [int(float(x)) if "e" in x.lower() else int(x) for x in text.split(",") if x]


def _num_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _int(text: str) -> int:
    # accepts 1000000 as well as 1e6
    return int(float(text)) if "e" in text.lower() else int(text)


def _fmt(x, full: bool) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 20 if full else 6)
    return repr(float(x)) if full else f"{float(x):.6g}"


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    if not rows:
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    keys = list(rows[0])
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
    out.write("  ".join(k.rjust(widths[k]) for k in keys) + "\n")
    for r in rows:
        out.write("  ".join(str(r[k]).rjust(widths[k]) for k in keys) + "\n")


def _directed_str(x: mpmath.mpf, digits: int, up: bool) -> str:
    """Decimal string of x rounded outward (toward +inf if ``up``, else -inf)."""
    sign, man, exp, _ = x._mpf_
    num = decimal.Decimal(int(man) * (-1 if sign else 1))
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_CEILING if up else decimal.ROUND_FLOOR)
    if exp >= 0:
        return str(ctx.multiply(num, decimal.Decimal(2 ** exp)))
    return str(ctx.divide(num, decimal.Decimal(2 ** -exp)))


def _jsonable(obj):
    if dataclasses.is_dataclass(obj):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, 25)
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2 ** 53:
        return str(obj)
    return obj


def _alpha(args):
    a = parse_alpha(args.alpha)
    if getattr(args, "quotient_bound", None) is not None:
        a = with_quotient_bound(a, args.quotient_bound)
    return a


def _ns(args) -> list[int]:
    if args.ns:
        return args.ns
    if args.n is not None:
        return [args.n]
    return []


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_count(args, out) -> int:
    a = _alpha(args)
    ns = _ns(args)
    if not ns:
        raise BeattyError("count needs --n or --ns")
    table = counting.count(a, max(ns), args.kind)
    if args.format == "table" and len(ns) == 1:
        out.write(f"{table[ns[0]]}\n")
        return 0
    _emit([{"n": n, "count": str(table[n])} for n in ns], args.format, out)
    return 0


def cmd_table(args, out) -> int:
    a = _alpha(args)
    ns = _ns(args) or list(asympt.REFERENCE_Q_NS if args.kind == "q" else asympt.REFERENCE_P_NS)
    lam = None
    if args.kind == "p" and a.quotient_bound is not None:
        lam = asympt.lambda_constant(a, args.N)
    rows = []
    for r in asympt.reproduce_table(a, args.kind, ns, lam):
        rows.append({
            "n": r.n,
            "exact": str(r.exact),
            "estimate": _fmt(r.hat, args.full_precision),
            "ratio": _fmt(r.ratio, args.full_precision),
            "theorem": "" if r.theorem is None else
                       saddle.decimal_exp(r.theorem.log_value, 20 if args.full_precision else 6),
        })
    _emit(rows, args.format, out)
    return 0


def cmd_lambda(args, out) -> int:
    a = _alpha(args)
    lam = asympt.lambda_constant(a, args.N)
    rec = {
        "alpha": a.spec,
        "N": lam.N,
        "A": lam.A,
        "log_pi": lam.log_pi_alpha,
        "error_radius": lam.error_radius,
        "rounding_radius": lam.rounding_radius,
        "lambda_lo": _directed_str(lam.lambda_lo, 20, up=False),
        "lambda_hi": _directed_str(lam.lambda_hi, 20, up=True),
        "conditional": lam.conditional,
    }
    if args.format == "json":
        json.dump(rec, out, indent=2)
        out.write("\n")
    else:
        _emit([rec], args.format, out)
    return 0


def cmd_saddle(args, out) -> int:
    a = _alpha(args)
    if args.n is None:
        raise BeattyError("saddle needs --n")
    if args.kind == "p":
        est = saddle.estimate_p_saddle(a, args.n)
    else:
        est = saddle.estimate_q_saddle(a, args.n)
    rec = _jsonable(est)
    sol = rec.pop("saddle")
    json.dump({"solution": sol, "estimate": rec}, out, indent=2)
    out.write("\n")
    return 0


def cmd_check_decomposition(args, out) -> int:
    a = _alpha(args)
    d = genfun.check_decomposition(a, args.t, args.tol)
    json.dump(_jsonable(d), out, indent=2)
    out.write("\n")
    return 0


def cmd_sums(args, out) -> int:
    a = _alpha(args)
    xs = args.x
    if args.what == "S":
        recs = beatty.discrepancy_sums(a, xs, prec=args.precision_bits)
        digits = 20 if args.full_precision else 10
        rows = []
        for r in recs:
            bound = r.ostrowski_bound
            rows.append({
                "x": str(int(r.x)) if float(r.x).is_integer() else repr(r.x),
                "S": mpmath.nstr(r.s_value, digits),
                "bound": "" if bound is None else _fmt(bound, args.full_precision),
            })
    else:
        Ls = [int(x) for x in xs]
        vals = beatty.j_partial_sums(a, args.s, Ls)
        rows = [{"L": L, "J_partial": _fmt(v, args.full_precision)}
                for L, v in zip(sorted(set(Ls)), vals)]
    _emit(rows, args.format, out)
    return 0


COMMANDS = {
    "count": cmd_count,
    "table": cmd_table,
    "lambda": cmd_lambda,
    "saddle": cmd_saddle,
    "check-decomposition": cmd_check_decomposition,
    "sums": cmd_sums,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", required=True, help="sqrt:<d> | surd:p,q,r,d | decimal:<digits> | e | pi")
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--precision-bits", type=int, default=96)
    common.add_argument("--full-precision", action="store_true")
    common.add_argument("--quotient-bound", type=int)

    parser = argparse.ArgumentParser(prog="beatty-partitions", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("count", "table"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--kind", choices=("p", "q"), required=True)
        p.add_argument("--n", type=_int)
        p.add_argument("--ns", type=_int_list)
        if name == "table":
            p.add_argument("--N", type=_int, default=10 ** 6, help="product cutoff for Lambda")

    p = sub.add_parser("lambda", parents=[common])
    p.add_argument("--N", type=_int, default=10 ** 6)

    p = sub.add_parser("saddle", parents=[common])
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--kind", choices=("p", "q"), required=True)

    p = sub.add_parser("check-decomposition", parents=[common])
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("sums", parents=[common])
    p.add_argument("--x", type=_num_list, required=True, help="comma-separated cutoffs")
    p.add_argument("--what", choices=("S", "J"), default="S")
    p.add_argument("--s", type=float, default=1.0)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except BeattyError as exc:
        module = type(exc).__module__
        tb = exc.__traceback__
        while tb is not None:
            module = tb.tb_frame.f_globals.get("__name__", module)
            tb = tb.tb_next
        envelope = {"error_kind": type(exc).__name__, "message": str(exc),
                    "module": module.rsplit(".", 1)[-1]}
        sys.stderr.write(json.dumps(envelope) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
