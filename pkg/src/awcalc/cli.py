"""Command-line front end.

Subcommands: ops, wronskian, nevanlinna, decompose, smt, params, table1.
Settings come from a ``key = value`` config file (``--config`` or the
AWCALC_CONFIG environment variable) and are overridden by flags.

Exit codes: 0 success, 2 trend failure, 3 hypothesis failure, 64 usage
error, and the per-error codes defined in :mod:`awcalc.errors`.
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .awops import AwContext, aw_avg, aw_diff, mixed, shift, to_xpoly
from .decomp import DegreeMultiset, format_table, greedy_decompose, polynomial_decompose
from .errors import AwError
from .nevanlinna import Hypersurface, ProjCurveRep, RGrid, fmt_check, growth_trend
from .qcore import HomPoly, RatFunc, XPoly, parse_xpoly, q_str, to_q
from .reports import Report
from .smt import HyperplaneSet, compute_smt_params, filtration_params, run_general_smt, run_hypersurface_smt, run_truncated_smt
from .wronskian import FunctionTuple, wronskian, wronskian_shift_form, wronskian_sign_form

EXIT_USAGE = 64
EXIT_TREND = 2
CONFIG_ENV = "AWCALC_CONFIG"

TABLE1_DEGREES = (6, 5, 5, 5, 5, 5, 3, 2, 2, 1)
TABLE1_BINS = 3
TABLE1_GOLDEN = """\
  k  d(k)  s(k)  Imax  Imin
  6     6     1     6     0
  5    31     6    11    10
  4    31     6    11    10
  3    34     7    13    10
  2    38     9    13    12
  1    39    10    13    13
bins: 13, 13, 13
"""


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    s: Fraction = Fraction(1, 2)
    theta_points: int = 2048
    cluster_tol: float = 1e-8
    slack: float = 0.05
    relation_degree: int | None = None
    format: str = "json"

    def __post_init__(self):
        if not 0 < self.s < 1:
            raise UsageError("s must lie in (0, 1)")
        if self.theta_points < 64:
            raise UsageError("theta_points must be at least 64")
        if not 0 < self.slack < 1:
            raise UsageError("slack must lie in (0, 1)")
        if self.format not in ("json", "csv", "table"):
            raise UsageError("format must be json, csv or table")

    @property
    def ctx(self) -> AwContext:
        return AwContext.from_s(str(self.s))


_CASTS = {
    "s": Fraction,
    "theta_points": int,
    "cluster_tol": float,
    "slack": float,
    "relation_degree": int,
    "format": str,
}


def load_config(path: str | None) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    if not path:
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (t.strip() for t in line.split("=", 1))
            if key not in _CASTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _CASTS[key](value)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}") from exc
    return out


def build_config(args) -> Config:
    values = load_config(args.config or os.environ.get(CONFIG_ENV))
    for f in fields(Config):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = _CASTS[f.name](flag)
    return Config(**values)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _csv_ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _csv_rationals(text):
    return [to_q(t) for t in text.split(",")]


def _grid_spec(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid is lo,hi,steps")
    return float(parts[0]), float(parts[1]), int(parts[2])


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value settings file")
    common.add_argument("--s", help="q^(1/2) as a rational, e.g. 1/2")
    common.add_argument("--theta-points", dest="theta_points", type=int)
    common.add_argument("--cluster-tol", dest="cluster_tol", type=float)
    common.add_argument("--slack", type=float)
    common.add_argument("--relation-degree", dest="relation_degree", type=int)
    common.add_argument("--format", choices=["json", "csv", "table"])
    common.add_argument("--output", "-o", help="write the result here instead of stdout")

    parser = _Parser(prog="awcalc", description="Askey-Wilson calculus toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("ops", parents=[common], help="apply a shift, averaging or difference operator")
    p.add_argument("--expr", required=True)
    p.add_argument("--op", required=True, choices=["dq", "avg", "shift", "mixed"])
    p.add_argument("--n", type=int, default=1, help="averaging order or shift amount")
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--t", type=int, default=0)

    p = sub.add_parser("wronskian", parents=[common], help="Askey-Wilson Wronskian of polynomials in x")
    p.add_argument("funcs", nargs="+")
    p.add_argument("--form", choices=["default", "shift", "sign"], default="default")
    p.add_argument("--deltas", type=_csv_ints)

    p = sub.add_parser("nevanlinna", parents=[common], help="first-main-theorem check or growth trend")
    p.add_argument("--curve", help="components separated by ';'")
    p.add_argument("--hyperplane", type=_csv_rationals, help="coefficients of a linear form")
    p.add_argument("--hypersurface", help="HomPoly JSON")
    p.add_argument("--growth", choices=["ld_dq", "ld_avg", "shift_N"])
    p.add_argument("--f", help="function for --growth")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--grid", type=_grid_spec, default=(10.0, 1e4, 25))

    p = sub.add_parser("decompose", parents=[common], help="greedy min-max decomposition")
    p.add_argument("--degrees", type=_csv_ints)
    p.add_argument("--input", help="JSON file with a factor list [[HomPoly JSON, multiplicity], ...]")
    p.add_argument("--bins", type=int, required=True)

    p = sub.add_parser("smt", parents=[common], help="second-main-theorem margin harness")
    p.add_argument("--input", required=True, help="JSON description (see README)")

    p = sub.add_parser("params", parents=[common], help="hypersurface-SMT parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dhat", type=int)
    p.add_argument("--alpha")
    p.add_argument("--eps", default="1")
    p.add_argument("--d", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--dj", type=_csv_ints)
    p.add_argument("--sj", type=_csv_ints)
    p.add_argument("--sprime", type=int)

    sub.add_parser("table1", parents=[common], help="reproduce the golden stage table")
    return parser


# -- rendering --------------------------------------------------------------


def render_laurent(g) -> str:
    """Descending powers of z, e.g. "1/4 * z + z^-1"."""
    parts = []
    for k in sorted(g.coeffs, reverse=True):
        c = g.coeffs[k]
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        mag = q_str(abs(c))
        if not mono:
            term = mag
        elif mag == "1":
            term = mono
        else:
            term = f"{mag} * {mono}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) or "0"


def render_function(f: RatFunc) -> str:
    """x-basis rendering when possible, otherwise the z-model."""
    if f.is_polynomial() and f.num.is_symmetric():
        return to_xpoly(f).render()
    if f.is_polynomial():
        return render_laurent(f.as_laurent())
    return f"({render_laurent(f.num)}) / ({render_laurent(f.den)})"


def emit(obj, cfg: Config, out) -> None:
    if isinstance(obj, Report):
        if cfg.format == "csv":
            out.write(obj.to_csv())
        elif cfg.format == "table":
            out.write(_report_table(obj))
        else:
            out.write(obj.to_json() + "\n")
    elif isinstance(obj, str):
        out.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        out.write(json.dumps(obj, indent=2) + "\n")


def _report_table(rep: Report) -> str:
    lines = ["  ".join(f"{c:>14}" for c in rep.columns)]
    for row in rep.rows:
        lines.append("  ".join(f"{v:>14.6g}" if isinstance(v, float) else f"{v!s:>14}" for v in row))
    if "verdict" in rep.meta:
        lines.append(f"verdict: {rep.meta['verdict']}")
    return "\n".join(lines) + "\n"


# -- subcommands -------------------------------------------------------------


def cmd_ops(args, cfg):
    f = parse_xpoly(args.expr)
    ctx = cfg.ctx
    if args.op == "dq":
        res = aw_diff(f, ctx)
    elif args.op == "avg":
        res = aw_avg(f, args.n, ctx)
    elif args.op == "shift":
        res = shift(f, args.n, ctx)
    else:
        res = mixed(f, args.M, args.t, ctx)
    text = render_function(res)
    if cfg.format == "json":
        return {"op": args.op, "input": f.render(), "s": str(cfg.s), "result": text}, 0
    return text, 0


def cmd_wronskian(args, cfg):
    fs = FunctionTuple.of([parse_xpoly(t) for t in args.funcs], cfg.ctx)
    if args.form == "shift":
        w = wronskian_shift_form(fs)
    elif args.form == "sign":
        w = wronskian_sign_form(fs, args.deltas)
    else:
        w = wronskian(fs)
    text = render_function(w)
    if cfg.format == "json":
        return {"functions": [f for f in args.funcs], "form": args.form, "s": str(cfg.s), "wronskian": text}, 0
    return text, 0


def _grid(args, cfg):
    lo, hi, steps = args.grid
    return RGrid.geometric(lo, hi, steps, theta_points=cfg.theta_points)


def cmd_nevanlinna(args, cfg):
    grid = _grid(args, cfg)
    if args.growth:
        if not args.f:
            raise UsageError("--growth needs --f")
        return growth_trend(RatFunc.poly(parse_xpoly(args.f).to_symlaurent()), args.growth, grid, cfg.ctx, args.n, cfg.cluster_tol), 0
    if not args.curve:
        raise UsageError("nevanlinna needs --curve (or --growth)")
    curve = ProjCurveRep(tuple(parse_xpoly(t) for t in args.curve.split(";")), cfg.ctx)
    if args.hyperplane:
        D = Hypersurface.hyperplane(args.hyperplane)
    elif args.hypersurface:
        D = Hypersurface(HomPoly.from_json(args.hypersurface))
    else:
        raise UsageError("give --hyperplane or --hypersurface")
    return fmt_check(curve, D, grid, cfg.cluster_tol), 0


def cmd_decompose(args, cfg):
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
        factors = [(HomPoly.from_json(f), int(m)) for f, m in data["factors"]]
        blocks = polynomial_decompose(factors, args.bins)
        return {"bins": args.bins, "blocks": [b.to_json() for b in blocks], "rendered": [b.render() for b in blocks]}, 0
    if not args.degrees:
        raise UsageError("decompose needs --degrees or --input")
    dec, trace = greedy_decompose(DegreeMultiset.of(args.degrees), args.bins)
    if cfg.format == "table":
        return format_table(trace, dec), 0
    return {
        "degrees": list(DegreeMultiset.of(args.degrees).degrees),
        "decomposition": dec.to_json(),
        "trace": trace.to_json(),
        "table": format_table(trace, dec),
    }, 0


def _load_curve(data, ctx):
    return ProjCurveRep(tuple(parse_xpoly(t) for t in data["curve"]), ctx)


def cmd_smt(args, cfg):
    with open(args.input, encoding="utf-8") as fh:
        data = json.load(fh)
    ctx = cfg.ctx
    kind = data.get("kind", "general")
    curve = _load_curve(data, ctx)
    lo, hi, steps = data.get("grid", [100.0, 1e4, 13])
    grid = RGrid.geometric(lo, hi, steps, theta_points=cfg.theta_points)
    if kind in ("general", "truncated"):
        H = HyperplaneSet(tuple(tuple(f) for f in data["forms"]))
        run = run_general_smt if kind == "general" else run_truncated_smt
        rep = run(curve, H, grid, cfg.slack, cfg.cluster_tol)
    elif kind == "hypersurface":
        Ds = [
            Hypersurface.from_factors([(HomPoly.from_json(f), int(m)) for f, m in item["factors"]])
            for item in data["hypersurfaces"]
        ]
        rep = run_hypersurface_smt(
            curve, Ds, int(data["s_prime"]), int(data["l"]), data.get("eps", "1"), grid,
            cfg.slack, cfg.relation_degree, cfg.cluster_tol,
        )  # fmt: skip
    else:
        raise UsageError(f"unknown smt kind {kind!r}")
    return rep, (0 if rep.meta["verdict"] == "pass" else EXIT_TREND)


def cmd_params(args, cfg):
    if args.dj:
        if args.l is None or args.sj is None or args.sprime is None:
            raise UsageError("--dj needs --l, --sj and --sprime")
        params = compute_smt_params(args.n, args.l, args.dj, args.sj, args.sprime, args.eps)
        return params.to_json(), 0
    if args.dhat is None or args.alpha is None:
        raise UsageError("params needs --dhat and --alpha (or --dj/--sj/--l/--sprime)")
    fp = filtration_params(args.n, args.dhat, args.alpha, args.eps, args.d)
    if cfg.format == "table":
        return f"N={fp['N']} M={fp['M']} Omega={fp['Omega']} M1={fp['M1']}", 0
    return fp, 0


def cmd_table1(args, cfg):
    dec, trace = greedy_decompose(DegreeMultiset(TABLE1_DEGREES), TABLE1_BINS)
    text = format_table(trace, dec)
    if text == TABLE1_GOLDEN:
        return text + "table1: match\n", 0
    diff = "".join(difflib.unified_diff(TABLE1_GOLDEN.splitlines(True), text.splitlines(True), "golden", "computed"))
    return diff + "table1: MISMATCH\n", 1


COMMANDS = {
    "ops": cmd_ops,
    "wronskian": cmd_wronskian,
    "nevanlinna": cmd_nevanlinna,
    "decompose": cmd_decompose,
    "smt": cmd_smt,
    "params": cmd_params,
    "table1": cmd_table1,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing subcommand; choose one of " + ", ".join(COMMANDS))
        cfg = build_config(args)
        if args.command in ("table1",) and args.format is None:
            cfg = replace(cfg, format="table")
        result, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        stderr.write(f"awcalc: usage error: {exc}\n")
        return EXIT_USAGE
    except AwError as exc:
        stderr.write(f"awcalc: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        stderr.write(f"awcalc: error: {exc}\n")
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            emit(result, cfg, fh)
    else:
        emit(result, cfg, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
