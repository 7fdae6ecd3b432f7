"""Command-line front end: every computation as a CSV-emitting command.

Exit codes: 0 success, 1 usage error, 2 parameter out of range, 3 quadrature
did not converge (or a verify suite failed).  Reports go to standard output,
diagnostics to standard error.  ``HILBERTLAB_THREADS`` sets the number of
worker threads used by ``sweep``.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .analytic import ClosedForm, PowerSeries, Series, make_test_fn, ParameterRangeError
from .essnorm import (
    CONDITIONS,
    EssNormQuery,
    condition_audit,
    essnorm_formula,
    essnorm_status,
    lower_bound_sweep,
    wco_essnorm,
)
from .operators import HILBERT, kernel_apply
from .quadrature import DEFAULT_CONFIG, NormEstimate, QuadConfig, QuadratureError
from .sharpness import (
    bt_report,
    find_p0,
    h_function,
    hinf_walpha_upper,
    lemma61_check,
    sup_bt_closed_form,
)
from .spaces import RadialWeight, bergman_norm, hardy_norm, hinf_norm
from .special import DomainError
from .verify import SUITES, run_suite

EXIT_USAGE, EXIT_RANGE, EXIT_NONCONVERGENCE = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(x) -> str:
    """15 significant digits; ``inf`` for divergence; booleans lower case."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, NormEstimate):
        return "inf" if x.diverged else fmt(float(x.value))
    if isinstance(x, (int, float)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.15g}"
    return str(x)


def emit(header, rows, form: str, out=None):
    out = out or sys.stdout
    cells = [[fmt(v) for v in row] for row in rows]
    if form == "csv":
        out.write(",".join(header) + "\n")
        for row in cells:
            out.write(",".join(row) + "\n")
        return
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _threads() -> int:
    raw = os.environ.get("HILBERTLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"HILBERTLAB_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def _floats(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


def _test_function(args):
    kind = args.fn
    if kind == "one":
        return Series(PowerSeries([1.0]))
    if kind == "z":
        return Series(PowerSeries([0.0, 1.0]))
    if kind == "pole":
        c = 0.0 if args.c is None else args.c
        return ClosedForm(f"(1-z)^-{c}", lambda z, omz: omz ** (-c), c)
    if kind == "bergman":
        return make_test_fn("bergman", p=args.p, alpha=args.alpha, c=args.c)
    if kind == "hardy":
        return make_test_fn("hardy", p=args.p, c=args.c)
    if kind == "hinf":
        return make_test_fn("hinf", alpha=args.alpha, c=args.c, n=args.n, g_kind=args.g_kind)
    if kind == "coeffs":
        return Series(PowerSeries([complex(v) for v in args.coeffs.split(",")]))
    raise UsageError(f"unknown function {kind!r}")


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required here")


def _weight(args):
    if args.weight == "unit":
        return RadialWeight.unit()
    if args.weight == "boundary":
        return RadialWeight.boundary(args.alpha)
    # the Bergman measure is normalized to mass 1; sup-norm weights keep sup v = 1
    return RadialWeight.standard(args.alpha, normalized=args.space == "bergman" and not args.unnormalized)


def _converged(est: NormEstimate):
    if not est.converged and not est.diverged:
        raise QuadratureError(f"quadrature did not converge (value {est.value}, error {est.err})")
    return est


# ---------------------------------------------------------------------------
# commands


def cmd_essnorm(args, cfg):
    q = EssNormQuery(args.space, args.p, args.alpha)
    value = essnorm_formula(q)
    return ["space", "p", "alpha", "value", "status"], [
        [args.space, "" if args.p is None else args.p, args.alpha, value, essnorm_status(q)]]


def cmd_norm(args, cfg):
    f = _test_function(args)
    if args.space == "bergman":
        _need(args, "p")
        est = bergman_norm(f, args.p, _weight(args), cfg)
    elif args.space == "hardy":
        _need(args, "p")
        est = hardy_norm(f, args.p, cfg, method=args.method)
    else:
        est, _arg = hinf_norm(f, _weight(args), cfg)
    _converged(est)
    return ["space", "function", "value", "err", "converged"], [
        [args.space, args.fn, est, est.err, est.converged]]


def cmd_apply(args, cfg):
    f = _test_function(args)
    rows = []
    for text in args.z.split(","):
        z = complex(text.strip().replace(" ", ""))
        d = kernel_apply(HILBERT, f, z, "direct", cfg)
        r = kernel_apply(HILBERT, f, z, "representation", cfg)
        rows.append([z.real, z.imag, d.real, d.imag, r.real, r.imag, abs(d - r)])
    return ["z_re", "z_im", "direct_re", "direct_im", "representation_re", "representation_im", "difference"], rows


def cmd_sweep(args, cfg):
    q = EssNormQuery(args.space, args.p, args.alpha)
    grid = [int(v) for v in _floats(args.grid)] if args.space == "hinf" else _floats(args.grid)
    res = lower_bound_sweep(q, grid, cfg, workers=_threads())
    for v in res.values:
        _converged(v)
    key = "n" if args.space == "hinf" else "c"
    rows = [[args.space, g, v, v.err, v.converged, res.target] for g, v in zip(res.grid, res.values)]
    return ["space", key, "value", "err", "converged", "target"], rows


def cmd_wco(args, cfg):
    rows = []
    for t in _floats(args.t):
        for s in _floats(args.s):
            rows.append([t, s, wco_essnorm(t, s, "closed_form", cfg), wco_essnorm(t, s, "radial_quotient", cfg)])
    return ["t", "s", "closed_form", "radial_quotient"], rows


def cmd_audit(args, cfg):
    params = {"alpha": args.alpha}
    if args.p is not None:
        params["p"] = args.p
    if args.t is not None:
        params["t"] = args.t
    if args.condition in ("CUBA", "CUB2A", "CKA", "CKA-", "CAIA"):
        _need(args, "p")
    if args.condition in ("CEVA", "CEVH"):
        _need(args, "t")
    rep = condition_audit(args.condition, cfg, **params)
    return ["condition", "value", "err", "finite", "status"], [
        [rep.condition, rep.bound, rep.bound.err, rep.finite, rep.status]]


def cmd_sharpness(args, cfg):
    sub = args.what
    if sub == "bt":
        rows = []
        for t in _floats(args.t):
            rep = bt_report(args.p, t, cfg)
            _converged(rep.bt_value)
            rows.append([rep.p, rep.t, rep.bt_value, rep.bt_value.err, rep.closed_form_sup, rep.exceeds_one])
        return ["p", "t", "bt_value", "err", "closed_form_sup", "exceeds_one"], rows
    if sub == "sup":
        return ["p", "sup_bt", "h"], [[p, sup_bt_closed_form(p), h_function(p)] for p in _floats(args.p_list)]
    if sub == "p0":
        p0 = find_p0(args.tol)
        return ["name", "value", "residual"], [["p0", p0, h_function(p0)]]
    if sub == "lemma61":
        rows = []
        for r in _floats(args.r):
            for q in _floats(args.q):
                rep = lemma61_check(r, q, args.QL, args.QU, cfg)
                _converged(rep.exact_integral)
                rows.append([rep.r, rep.q, rep.exact_integral, rep.scaled, rep.lower, rep.upper, rep.holds])
        return ["r", "q", "exact", "scaled", "lower", "upper", "holds"], rows
    rows = []
    for t in _floats(args.t):
        v = hinf_walpha_upper(t, args.alpha, cfg)
        rows.append([t, args.alpha, v, t ** (args.alpha - 1.0) * (1.0 - t) ** (-args.alpha)])
    return ["t", "alpha", "sup", "closed_form"], rows


def cmd_verify(args, cfg):
    checks = run_suite(args.suite, args.seed)
    rows = [[c.name, "pass" if c.passed else "fail", c.value, c.reference, c.tol] for c in checks]
    passed = sum(c.passed for c in checks)
    rows.append(["summary", f"{passed} passed {len(checks) - passed} failed", "", "", ""])
    args._failed = len(checks) - passed
    return ["check", "status", "value", "reference", "tol"], rows


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    # shared options may appear at any level; SUPPRESS keeps an inner parser
    # from overwriting a value given further out
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "table"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random test points")
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="key = value file overriding quadrature settings")

    ap = _Parser(prog="hilbertlab", description="Hilbert matrix operator laboratory", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("essnorm", "closed-form essential norms")
    p.add_argument("--space", choices=("bergman", "hinf", "hardy"), required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--alpha", type=float, default=0.0)
    p.set_defaults(func=cmd_essnorm)

    fn_choices = ("one", "z", "pole", "bergman", "hardy", "hinf", "coeffs")

    def add_fn(p):
        p.add_argument("--fn", choices=fn_choices, default="one")
        p.add_argument("--p", type=float)
        p.add_argument("--alpha", type=float, default=0.0)
        p.add_argument("--c", type=float)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--g-kind", choices=("scaled", "plain"), default="scaled")
        p.add_argument("--coeffs", default="1", help="comma-separated Taylor coefficients for --fn coeffs")

    p = add("norm", "space norms of named test functions")
    p.add_argument("--space", choices=("bergman", "hinf", "hardy"), required=True)
    add_fn(p)
    p.add_argument("--weight", choices=("standard", "boundary", "unit"), default="standard")
    p.add_argument("--unnormalized", action="store_true", help="drop the Bergman normalization constant")
    p.add_argument("--method", choices=("boundary", "ladder"), default="boundary")
    p.set_defaults(func=cmd_norm)

    p = add("apply", "Hilbert operator at points, direct and representation forms")
    add_fn(p)
    p.add_argument("--z", required=True,
                   help="comma-separated complex points, e.g. --z=0.3,-0.4+0.2j")
    p.set_defaults(func=cmd_apply)

    p = add("sweep", "lower-bound sweeps")
    p.add_argument("--space", choices=("bergman", "hinf", "hardy"), required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--grid", required=True, help="comma-separated c values (n values for hinf)")
    p.set_defaults(func=cmd_sweep)

    p = add("wco", "essential norms of w_t C_phi_t")
    p.add_argument("--t", required=True, help="comma-separated values")
    p.add_argument("--s", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_wco)

    p = add("audit", "condition audits")
    p.add_argument("--condition", choices=CONDITIONS, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--t", type=float)
    p.set_defaults(func=cmd_audit)

    p = add("sharpness", "B_t integrals, p0, circle-integral bounds and the H-infinity chain")
    ss = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = ss.add_parser("bt", parents=[common])
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--t", required=True, help="comma-separated values")
    q = ss.add_parser("sup", parents=[common])
    q.add_argument("--p", dest="p_list", required=True, help="comma-separated values")
    q = ss.add_parser("p0", parents=[common])
    q.add_argument("--tol", type=float, default=1e-10)
    q = ss.add_parser("lemma61", parents=[common])
    q.add_argument("--r", required=True, help="comma-separated values")
    q.add_argument("--q", required=True, help="comma-separated values")
    q.add_argument("--QL", type=float, default=1.5)
    q.add_argument("--QU", type=float, default=3.0)
    q = ss.add_parser("hinf-walpha", parents=[common])
    q.add_argument("--t", required=True, help="comma-separated values")
    q.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_sharpness)

    p = add("verify", "run invariant and acceptance suites")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for key, default in (("format", "csv"), ("seed", 0), ("config", None)):
            if not hasattr(args, key):
                setattr(args, key, default)
        cfg = QuadConfig.from_file(args.config) if args.config else DEFAULT_CONFIG
        header, rows = args.func(args, cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ParameterRangeError, DomainError) as exc:
        print(f"parameter out of range: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except ValueError as exc:
        print(f"invalid parameter: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (QuadratureError, ArithmeticError) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    emit(header, rows, args.format)
    if getattr(args, "_failed", 0):
        return EXIT_NONCONVERGENCE
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
