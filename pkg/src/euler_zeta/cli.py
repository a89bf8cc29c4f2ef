"""Command-line front end: ``euler-zeta <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 invalid spec or point outside the
domain, 3 undecided verdict, exhausted search or failed reproduction check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .builtins import builtin_spec, describe_builtins
from .classifier import UNDECIDED, ModeError, classify, reduce_integer_dependent
from .evaluator import (
    DEFAULT_BOUNDS,
    DomainError,
    eval_log_many,
    eval_product_many,
    eval_series,
    normalized_cf,
    truncation_tail_bound,
)
from .exact import is_exact
from .spec import EulerProductSpec, SpecError, TruncationBounds, parse_spec

__all__ = ["run", "main", "CommandOutcome", "load_spec", "fmt"]

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_UNDECIDED = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    code: int
    output: str


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "")
        raise _HelpExit(message or "")

    def print_help(self, file=None):
        raise _HelpExit(self.format_help())


class _HelpExit(Exception):
    pass


def fmt(x) -> str:
    """12 significant digits."""
    return f"{float(x):.12g}"


def load_spec(ref: str) -> EulerProductSpec:
    """``builtin:<name>`` selects a named spec; anything else is a spec-file path."""
    if ref.startswith("builtin:"):
        try:
            return builtin_spec(ref[len("builtin:"):])
        except (KeyError, ValueError) as exc:
            raise SpecError(str(exc).strip("'\"")) from None
    path = Path(ref)
    if not path.is_file():
        raise SpecError(f"no such spec file {ref!r} (use builtin:<name> for named specs)")
    return parse_spec(path.read_text(encoding="utf-8"))


def _floats(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _points(text: str, d: int) -> np.ndarray:
    """``t`` points: comma list of scalars when d = 1, ``;``-separated vectors otherwise."""
    if d == 1:
        return np.array(_floats(text)).reshape(-1, 1)
    rows = [_floats(chunk) for chunk in text.split(";") if chunk.strip()]
    if any(len(r) != d for r in rows):
        raise UsageError(f"each t vector needs {d} components")
    return np.array(rows)


def _vector(text: str, d: int, what: str) -> np.ndarray:
    vals = _floats(text)
    if len(vals) != d:
        raise UsageError(f"--{what} needs {d} comma-separated components")
    return np.array(vals)


def _bounds(args) -> TruncationBounds:
    return TruncationBounds(P=args.pmax or DEFAULT_BOUNDS.P, R=args.rmax or DEFAULT_BOUNDS.R,
                            N=args.nmax or DEFAULT_BOUNDS.N)


class _Out:
    """Collects output rows in the requested format."""

    def __init__(self, fmt_name: str):
        self.fmt = fmt_name
        self.records = []
        self.tables = []
        self.lines = []

    def record(self, **kv):
        self.records.append(kv)

    def table(self, header, rows):
        self.tables.append((header, rows))

    def line(self, text):
        self.lines.append(text)

    def render(self) -> str:
        if self.fmt == "structured":
            doc = {"records": self.records,
                   "tables": [{"columns": h, "rows": [list(r) for r in rows]} for h, rows in self.tables],
                   "messages": self.lines}
            return json.dumps(doc, indent=2, default=str)
        buf = io.StringIO()
        for kv in self.records:
            if self.fmt == "csv":
                w = csv.writer(buf, lineterminator="\n")
                w.writerow(list(kv))
                w.writerow([kv[k] for k in kv])
            else:
                buf.write(" ".join(f"{k}={v}" for k, v in kv.items()) + "\n")
        for header, rows in self.tables:
            if self.fmt == "csv":
                w = csv.writer(buf, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)
            else:
                buf.write(" ".join(header) + "\n")
                for r in rows:
                    buf.write(" ".join(str(x) for x in r) + "\n")
        for text in self.lines:
            buf.write(text + "\n")
        return buf.getvalue()


# ---------------------------------------------------------------- commands


def _maybe_reduce(spec, out):
    if spec.mode.kind == "integer":
        out.line("note: integer-dependent directions reduced to a single rank before classification")
        return reduce_integer_dependent(spec)
    return spec


def cmd_eval(args, out):
    spec = load_spec(args.spec)
    if args.sigma is None:
        raise UsageError("eval requires --sigma")
    d = spec.dimension
    sigma = _vector(args.sigma, d, "sigma")
    ts = _points(args.t, d) if args.t else np.zeros((1, d))
    b = _bounds(args)
    if args.method == "product":
        vals = eval_product_many(spec, sigma, ts, b)
        tail = truncation_tail_bound(spec, sigma, b)
    elif args.method == "log":
        vals = eval_log_many(spec, sigma, ts, b)
        tail = truncation_tail_bound(spec, sigma, b)
    else:
        vals = np.array([eval_series(spec, sigma, t, N=b.N) for t in ts])
        tail = float("nan")
    if len(ts) == 1 and out.fmt == "text":
        out.line(f"{fmt(vals[0].real)} {fmt(vals[0].imag)} {fmt(tail)}")
        return EXIT_OK
    header = [f"t_{i}" for i in range(1, d + 1)] if d > 1 else ["t"]
    out.table(header + ["re", "im", "tail_bound"],
              [[fmt(x) for x in t] + [fmt(z.real), fmt(z.imag), fmt(tail)] for t, z in zip(ts, vals)])
    return EXIT_OK


def cmd_coeffs(args, out):
    from .numtheory import dirichlet_coefficients

    spec = load_spec(args.spec)
    if not 1 <= args.rank <= spec.phi:
        raise UsageError(f"--rank must be between 1 and {spec.phi}")
    N = args.nmax or 100
    tab = dirichlet_coefficients(spec, args.rank, N)
    rows = [[n, fmt(tab.values[n].real), fmt(tab.values[n].imag), "true" if tab.exact else "false"] for n in range(1, N + 1)]
    out.table(["n", "re", "im", "exact"], rows)
    return EXIT_OK


def _val_text(v) -> str:
    if v is None:
        return "none"
    if is_exact(v):
        return str(v).replace(" ", "")
    c = complex(v)
    return fmt(c.real) if c.imag == 0 else f"{fmt(c.real)}{'+' if c.imag >= 0 else ''}{fmt(c.imag)}i"


def cmd_classify(args, out):
    spec = _maybe_reduce(load_spec(args.spec), out)
    b = TruncationBounds(P=args.pmax or 10**4, R=args.rmax or 60, N=args.nmax or 10**4)
    v = classify(spec, b)
    wit = "none"
    if v.witness:
        wit = ",".join(f"{k}:{_val_text(x) if not isinstance(x, int) else x}" for k, x in v.witness.items())
    rec = {"verdict": v.verdict, "witness": wit}
    rec.update({f"certified_{k}": x for k, x in v.bounds.items()})
    rec["complete"] = str(v.complete).lower()
    out.record(**rec)
    for n in v.notes:
        out.line(f"note: {n}")
    return EXIT_UNDECIDED if v.verdict == UNDECIDED else EXIT_OK


def cmd_levy(args, out):
    from .levy import build_quasi_levy, total_variation

    spec = load_spec(args.spec)
    if args.sigma is None:
        raise UsageError("levy requires --sigma")
    if spec.mode.kind == "integer":
        spec = reduce_integer_dependent(spec)
    sigma = _vector(args.sigma, spec.dimension, "sigma")
    m = build_quasi_levy(spec, sigma, TruncationBounds(P=args.pmax or 10**3, R=args.rmax or 40))
    tv, ok = total_variation(m)
    d = spec.dimension
    rows = [[int(p), int(r), int(l)] + [fmt(c) for c in x] + [fmt(w.real), fmt(w.imag)]
            for p, r, l, x, w in zip(m.p, m.r, m.l, m.x, m.w)]
    out.table(["p", "r", "l"] + [f"x_{i}" for i in range(1, d + 1)] + ["re_w", "im_w"], rows)
    if out.fmt != "csv":
        out.record(atoms=len(m), total_variation=fmt(tv), tv_bound=fmt(m.tv_bound), within_bound=str(ok).lower())
    return EXIT_OK


def _pmf(args, spec):
    from .sampler import build_pmf

    if args.sigma is None:
        raise UsageError("--sigma is required")
    sigma = _vector(args.sigma, spec.dimension, "sigma")
    return sigma, build_pmf(spec, sigma, args.n or args.nmax or 10**6)


def cmd_sample(args, out):
    from .sampler import draw

    spec = load_spec(args.spec)
    _, pmf = _pmf(args, spec)
    pts = draw(pmf, args.seed, args.count)
    d = pts.shape[1]
    out.table([f"x_{i}" for i in range(1, d + 1)], [[fmt(c) for c in x] for x in pts])
    return EXIT_OK


def cmd_ecf(args, out):
    from .sampler import draw, empirical_cf

    spec = load_spec(args.spec)
    sigma, pmf = _pmf(args, spec)
    pts = draw(pmf, args.seed, args.count)
    ts = _points(args.t or "0.5,1,3", spec.dimension)
    rows = []
    for t in ts:
        e = empirical_cf(pts, t)
        f = normalized_cf(spec, sigma, t, TruncationBounds(P=args.pmax or DEFAULT_BOUNDS.P))
        rows.append([fmt(x) for x in t] + [fmt(e.real), fmt(e.imag), fmt(f.real), fmt(f.imag), fmt(abs(e - f))])
    d = spec.dimension
    head = [f"t_{i}" for i in range(1, d + 1)] if d > 1 else ["t"]
    out.table(head + ["re_empirical", "im_empirical", "re_exact", "im_exact", "abs_diff"], rows)
    out.record(count=args.count, seed=args.seed, clt_band=fmt(5 / np.sqrt(max(args.count, 1))))
    return EXIT_OK


def cmd_gap(args, out):
    from .analysis import log_gap, plain_gap, scaled_gap

    spec = load_spec(args.spec)
    if args.sigma is None or args.t1 is None or args.t2 is None:
        raise UsageError("gap requires --sigma, --t1 and --t2")
    d = spec.dimension
    fn = {"plain": plain_gap, "scaled": scaled_gap, "log": log_gap}[args.kind]
    b = TruncationBounds(P=args.pmax or 2 * 10**6, R=args.rmax or 60)
    rep = fn(spec, _vector(args.sigma, d, "sigma"), _vector(args.t1, d, "t1"), _vector(args.t2, d, "t2"), b)
    out.record(kind=rep.kind, gap=fmt(rep.gap), tail_bound=fmt(rep.tail_bound), pmax=b.P)
    return EXIT_OK


def cmd_qprofile(args, out):
    from .analysis import q_profile, q_profile_plain

    spec = load_spec(args.spec)
    sigma = _vector(args.sigma, spec.dimension, "sigma")
    n = int(np.floor((args.tmax - args.tmin) / args.step + 1e-9))
    grid = args.tmin + np.arange(n + 1) * args.step
    fn = q_profile_plain if args.plain else q_profile
    prof = fn(spec, sigma, args.shift, grid, _bounds(args))
    out.table(["t", "Q"], [[fmt(t), fmt(q)] for t, q in prof])
    return EXIT_OK


def _search_out(res, out, name):
    if not res.found:
        out.record(found="false", scanned=res.scanned)
        return EXIT_UNDECIDED
    out.record(found="true", **{name: fmt(res.value)}, difference=fmt(res.difference),
               tail_bound=fmt(res.tail_bound), scanned=res.scanned)
    return EXIT_OK


def cmd_almost_period(args, out):
    from .analysis import almost_period_search

    spec = load_spec(args.spec)
    d = spec.dimension
    direction = _vector(args.direction, d, "direction") if args.direction else None
    res = almost_period_search(spec, _vector(args.sigma, d, "sigma"), args.epsilon, args.tau_max, args.step,
                               direction, args.log, args.tau_min, _bounds(args))
    return _search_out(res, out, "tau")


def cmd_shift_pair(args, out):
    from .analysis import shifted_pair_search

    spec = load_spec(args.spec)
    d = spec.dimension
    direction = _vector(args.direction, d, "direction") if args.direction else None
    res = shifted_pair_search(spec, _vector(args.sigma, d, "sigma"), _vector(args.lam, d, "lambda"), args.beta,
                              args.epsilon, args.t_max, args.step, direction, args.allow_zero, args.log,
                              args.t_min, _bounds(args))
    return _search_out(res, out, "t")


def cmd_repro(args, out):
    from .repro import run_checks

    ok = True
    for name, passed, detail in run_checks(pmax=args.pmax):
        out.line(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        ok &= passed
    return EXIT_OK if ok else EXIT_UNDECIDED


def cmd_specs(args, out):
    out.table(["name", "description"], [[k, v] for k, v in describe_builtins()])
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _common(top: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the command; only the top level holds
    # defaults so a subcommand never resets a value given earlier
    def dflt(v):
        return v if top else argparse.SUPPRESS

    p = _Parser(add_help=False)
    p.add_argument("--format", choices=("text", "csv", "structured"), default=dflt("text"))
    p.add_argument("--pmax", type=int, default=dflt(None), help="prime cutoff P")
    p.add_argument("--rmax", type=int, default=dflt(None), help="prime-power cutoff R")
    p.add_argument("--nmax", type=int, default=dflt(None), help="coefficient cutoff N")
    p.add_argument("--seed", type=int, default=dflt(20240607))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    parser = _Parser(prog="euler-zeta", description=__doc__.splitlines()[0], parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("eval", cmd_eval, "evaluate the product, log series or Dirichlet series")
    p.add_argument("--spec", required=True)
    p.add_argument("--sigma")
    p.add_argument("--t", help="t values (comma list; ';' between vectors when d > 1)")
    p.add_argument("--method", choices=("product", "series", "log"), default="product")

    p = add("coeffs", cmd_coeffs, "Dirichlet coefficients a_l(1..N) as a table")
    p.add_argument("--spec", required=True)
    p.add_argument("--rank", type=int, default=1)

    p = add("classify", cmd_classify, "infinitely divisible / quasi only / not a characteristic function")
    p.add_argument("--spec", required=True)

    p = add("levy", cmd_levy, "atoms of the (quasi-)Levy measure")
    p.add_argument("--spec", required=True)
    p.add_argument("--sigma")

    for name, fn, text in (("sample", cmd_sample, "draw from the induced distribution"),
                           ("ecf", cmd_ecf, "empirical vs exact characteristic function")):
        p = add(name, fn, text)
        p.add_argument("--spec", required=True)
        p.add_argument("--sigma")
        p.add_argument("--n", type=int, help="coefficient cutoff for the pmf table")
        p.add_argument("--count", type=int, default=10**4)
        if name == "ecf":
            p.add_argument("--t")

    p = add("gap", cmd_gap, "characteristic-function inequality gaps")
    p.add_argument("--spec", required=True)
    p.add_argument("--kind", choices=("plain", "scaled", "log"), default="scaled")
    p.add_argument("--sigma")
    p.add_argument("--t1")
    p.add_argument("--t2")

    p = add("qprofile", cmd_qprofile, "Q(t) profile on a grid")
    p.add_argument("--spec", default="builtin:zq")
    p.add_argument("--sigma", default="0.3333333333333333")
    p.add_argument("--shift", type=float, default=7.0)
    p.add_argument("--tmin", type=float, default=0.0)
    p.add_argument("--tmax", type=float, default=47.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--plain", action="store_true", help="use Z values instead of the log series")

    p = add("almost-period", cmd_almost_period, "search tau with |Z(s + i tau) - Z(s)| < epsilon")
    p.add_argument("--spec", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--tau-max", type=float, default=1e4)
    p.add_argument("--tau-min", type=float, default=0.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--direction")
    p.add_argument("--log", action="store_true")

    p = add("shift-pair", cmd_shift_pair, "search t with |Z(s + i lambda + i beta t) - Z(s + i t)| < epsilon")
    p.add_argument("--spec", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--t-max", type=float, default=1e4)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--direction")
    p.add_argument("--allow-zero", action="store_true")
    p.add_argument("--log", action="store_true")

    add("repro", cmd_repro, "reproduce the two reference constants and the Q(t) sign check")
    add("specs", cmd_specs, "list builtin specs")
    return parser


def run(argv) -> CommandOutcome:
    """Parse ``argv`` and run one command; never raises for user errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if not getattr(args, "func", None):
            raise UsageError("a command is required (try --help)")
        out = _Out(args.format)
        code = args.func(args, out)
        return CommandOutcome(code, out.render())
    except _HelpExit as exc:
        return CommandOutcome(EXIT_OK, str(exc))
    except UsageError as exc:
        return CommandOutcome(EXIT_USAGE, f"usage error: {exc}\n")
    except (SpecError, DomainError, ModeError) as exc:
        return CommandOutcome(EXIT_INVALID, f"error: {exc}\n")
    except ValueError as exc:
        return CommandOutcome(EXIT_INVALID, f"error: {exc}\n")


def main(argv=None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if outcome.code in (EXIT_OK, EXIT_UNDECIDED) else sys.stderr
    stream.write(outcome.output)
    return outcome.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
