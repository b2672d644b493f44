"""Command-line interface: ``satotate <command> [options]``."""
from __future__ import annotations

import argparse
import logging
import math
import re
import sys
import time
from pathlib import Path

from . import __version__
from . import bounds as B
from .angles import (FormParams, build_angle_table, default_cache_dir, extend_angle_table,
                     load_coefficients, read_angle_cache, write_angle_cache)
from .conductor import ReductionData, sym_conductor_proof_bound, sym_conductor_theorem_bound
from .constants import NOTES, REGISTRY, closed_forms, table_rows
from .errors import SatoTateError
from .pointcount import CurveParams
from .primes import prime_pi, sieve_primes
from .report import ReportDocument, form_descriptor, write_histogram_csv
from .stats import (Interval, atkin_serre_exceptions, discrepancy_scan, histogram, mu_ST,
                    pi_f_I, proof_threshold, vartheta_f_I)

log = logging.getLogger("satotate")

_ANGLE = re.compile(r"^\s*([0-9.]+(?:e-?\d+)?)?\s*\*?\s*(pi)?\s*(?:/\s*([0-9.]+))?\s*$")


def parse_angle(text):
    """Parse ``1.2``, ``pi``, ``pi/4`` or ``2pi/3``."""
    m = _ANGLE.match(text.lower())
    if not m or not (m.group(1) or m.group(2)):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    val = float(m.group(1)) if m.group(1) else 1.0
    if m.group(2):
        val *= math.pi
    if m.group(3):
        val /= float(m.group(3))
    return val


def parse_interval(text):
    try:
        a, b = text.split(",")
        return Interval(parse_angle(a), parse_angle(b))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad interval {text!r}: {exc}") from None


# --- angles -------------------------------------------------------------------

def _delta_stream(xmax):
    from .qexp import ramanujan_tau

    tau = ramanujan_tau(xmax)
    return ((p, tau[p]) for p in sieve_primes(xmax).tolist())


def _angle_source(args):
    if args.curve:
        if args.N is None:
            raise SatoTateError("--curve needs --N")
        curve = CurveParams.from_string(args.curve, args.N, args.label or "")
        label = args.label or "curve_" + "_".join(str(a) for a in curve.ainvs)
        return curve, FormParams.for_level(2, args.N, elliptic=True, Q=args.Q), label
    if args.delta:
        return None, FormParams.for_level(12, 1, Q=args.Q), args.label or "Delta"
    if args.coeffs:
        if args.k is None or args.N is None:
            raise SatoTateError("--coeffs needs --k and --N")
        label = args.label or Path(args.coeffs).stem
        return None, FormParams.for_level(args.k, args.N, Q=args.Q), label
    raise SatoTateError("give one of --curve, --coeffs or --delta")


def _stream_for(args, xmax):
    return _delta_stream(xmax) if args.delta else load_coefficients(args.coeffs)


def cmd_angles(args):
    curve, form, label = _angle_source(args)
    out = Path(args.out) if args.out else default_cache_dir() / f"{label}.csv"
    xmax = int(args.xmax)
    t0 = time.perf_counter()
    action = "built"
    table = None
    if out.exists():
        cached = read_angle_cache(out, elliptic=form.elliptic)
        same = (cached.form.k, cached.form.N, cached.form.Q, cached.label) == \
            (form.k, form.N, form.Q, label)
        if same and cached.xmax >= xmax:
            table, action = cached, "reused"
        elif same:
            source = curve if curve is not None else _stream_for(args, xmax)
            table, action = extend_angle_table(cached, source, xmax, workers=args.threads), "extended"
        else:
            action = "rebuilt"
    if table is None:
        source = curve if curve is not None else _stream_for(args, xmax)
        table = build_angle_table(source, form, xmax, workers=args.threads, label=label)
    if action != "reused":
        write_angle_cache(table, out)
    doc = ReportDocument(__version__, form_descriptor(form, label), "angles",
                         {"xmax": xmax, "out": str(out), "source": args.curve or args.coeffs
                          or ("delta" if args.delta else None)})
    doc.empirical = {"rows": len(table), "cache_xmax": table.xmax, "action": action}
    if args.timing:
        doc.timing = {"seconds": time.perf_counter() - t0, "threads": args.threads}
    return doc


# --- verify ---------------------------------------------------------------------

def cmd_verify(args):
    table = read_angle_cache(args.cache, elliptic=True if args.elliptic else None)
    form = table.form
    x = float(args.x) if args.x is not None else float(table.xmax)
    I = args.interval
    t0 = time.perf_counter()
    n_I = pi_f_I(table, x, I)
    pi_x = prime_pi(x)
    mass = mu_ST(I)
    dev = abs(n_I - mass * pi_x)
    theta_I = vartheta_f_I(table, x, I)
    worst, D = discrepancy_scan(table, x, args.grid_step)
    doc = ReportDocument(__version__, form_descriptor(form, table.label), "verify",
                         {"cache": str(args.cache), "x": x, "interval": [I.a, I.b],
                          "grid_step": args.grid_step})
    doc.empirical = {"pi_f_I": n_I, "pi_x": pi_x, "mu_ST": mass, "deviation": dev,
                     "deviation_ratio": dev / pi_x if pi_x else None,
                     "vartheta_f_I": theta_I, "vartheta_deviation": abs(theta_I - mass * x),
                     "discrepancy": D, "worst_interval": [worst.a, worst.b]}
    pib = B.pi_theorem_bound(x, form.k, form.N, pi_x, squarefree=form.squarefree_level,
                             elliptic=form.elliptic)
    inputs = {"x": x, "k": form.k, "N": form.N, "pi_x": pi_x}
    doc.add(B.BoundReport("pi_theorem_bound", dict(inputs, interval=[I.a, I.b]), pib, dev))
    doc.add(B.BoundReport("pi_theorem_bound_sup", dict(inputs, grid_step=args.grid_step),
                          pib, D * pi_x))
    main = B.main_theorem_bound(x, form.k, form.Q, form=form)
    doc.add(B.BoundReport("main_theorem_bound", {"x": x, "k": form.k, "Q": form.Q},
                          main.effective, abs(theta_I - mass * x),
                          notes=[f"theorem_rhs={main.theorem_rhs!r}"]))
    if args.hist_out:
        edges, emp, st = histogram(table, x, args.bins)
        write_histogram_csv(args.hist_out, edges, emp, st)
        doc.inputs["hist_out"] = str(args.hist_out)
    if args.timing:
        doc.timing = {"seconds": time.perf_counter() - t0}
    return doc


# --- bounds -----------------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise SatoTateError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _x_u(args):
    """``(x, u)`` from --x / --u; with --log-space --x is read as log x."""
    if args.u is not None:
        return None, float(args.u)
    if args.x is None:
        return None, None
    return (None, float(args.x)) if args.log_space else (float(args.x), math.log(args.x))


def cmd_bounds(args):
    Q = args.Q if args.Q is not None else args.N
    doc = ReportDocument(__version__, None, "bounds",
                         {k: v for k, v in sorted(vars(args).items())
                          if k in ("k", "N", "Q", "x", "u", "m", "T", "y", "M", "mode")
                          and v is not None})
    x, u = _x_u(args)
    rows = doc.empirical.setdefault("values", {})

    def add(name, value, **inputs):
        doc.add(B.BoundReport(name, inputs, value))

    if args.constants:
        rows["constants"] = dict(table_rows())
    if args.ell:
        _need(args, "k")
        C_ = (args.k - 1) * (Q if Q is not None else 1)
        add("ell", B.ell(x, C_, u=u), C=C_, u=u)
    if args.eta:
        _need(args, "m", "T", "k")
        add("eta_m", B.eta_m(args.m, args.T, args.k, Q), m=args.m, T=args.T, k=args.k, Q=Q)
    if args.min_rho:
        _need(args, "m", "k")
        add("min_rho", B.min_rho(args.m, args.k, Q), m=args.m, k=args.k, Q=Q)
    if args.zero_count:
        _need(args, "m", "T", "k")
        add("zero_count_bound", B.zero_count_bound(args.T, args.m, args.k, Q, args.mode),
            T=args.T, m=args.m, k=args.k, Q=Q, mode=args.mode)
    if args.N1:
        _need(args, "m", "T", "k")
        add("N1_bound", B.N1_bound(args.T, args.m, args.k, Q), T=args.T, m=args.m, k=args.k, Q=Q)
    if args.R1:
        _need(args, "m", "T", "k", "y")
        add("R1_bound", B.R1_bound(x, args.y, args.m, args.T, args.k, Q),
            x=x, y=args.y, m=args.m, T=args.T, k=args.k, Q=Q)
    if args.R2:
        _need(args, "m")
        add("R2_bound", B.R2_bound(x, args.m), x=x, m=args.m)
    if args.R3:
        _need(args, "m", "k", "y")
        add("R3_bound", B.R3_bound(x, args.y, args.m, args.k, Q),
            x=x, y=args.y, m=args.m, k=args.k, Q=Q)
    if args.erdos_turan:
        _need(args, "M", "y")
        add("erdos_turan_bound", B.erdos_turan_bound(x, args.y, args.M, 0.0, [0.0] * args.M),
            x=x, y=args.y, M=args.M, deviations="zero")
    if args.choose_params:
        _need(args, "k")
        p = B.choose_parameters(u, args.k, Q)
        rows["choose_parameters"] = {"M_f": p.M_f, "M": p.M, "T": p.T, "y_over_x": p.y_over_x,
                                     "triviality_regime": p.triviality_regime}
    if args.main:
        _need(args, "k")
        mb = B.main_theorem_bound(x, args.k, Q, u=u if x is None else None)
        add("main_theorem_bound", mb.effective, x=x, u=u, k=args.k, Q=Q,
            theorem_rhs=mb.theorem_rhs, log_space=mb.log_space)
    if args.conductor:
        _need(args, "N", "m")
        red = ReductionData.parse(args.reduction) if args.reduction else \
            ReductionData.from_level(args.N)
        add("sym_conductor_proof_bound", sym_conductor_proof_bound(red, args.m),
            N=args.N, m=args.m, log_space=True)
        add("sym_conductor_theorem_bound", sym_conductor_theorem_bound(args.N, args.m),
            N=args.N, m=args.m, log_space=True)
    if not doc.bounds and not rows:
        raise SatoTateError("select at least one quantity (see --help)")
    return doc


# --- atkin-serre / zero-audit / constants ----------------------------------------

def cmd_atkin_serre(args):
    table = read_angle_cache(args.cache)
    form = table.form
    x = float(args.x)
    bound = B.atkin_serre_bound(x, form.k, form.N)
    ell_x = proof_threshold(x, form.k, form.N)
    doc = ReportDocument(__version__, form_descriptor(form, table.label), "atkin-serre",
                         {"cache": str(args.cache), "x": x, "mode": args.mode})
    modes = ("statement", "proof") if args.mode == "both" else (args.mode,)
    emp = {"thresholds": {"statement": "loglog(p)/sqrt(log p)", "proof": ell_x}}
    assembled, stated = B.atkin_serre_constant()
    emp["constant"] = {"assembled": assembled, "stated": stated}
    for mode in modes:
        exc, tot = atkin_serre_exceptions(table, x, mode)
        emp[mode] = {"exceptional": exc, "total": tot, "ratio": exc / tot if tot else None}
        inputs = {"x": x, "k": form.k, "N": form.N, "mode": mode}
        if tot:
            doc.add(B.BoundReport("atkin_serre_bound", inputs, bound, exc / tot))
        else:
            doc.add(B.BoundReport("atkin_serre_bound", inputs, bound,
                                  notes=["EmptyRange: no unramified primes in (x, 2x]"]))
    doc.empirical = emp
    return doc


def cmd_zero_audit(args):
    report = B.check_zero_count(args.zeros, args.T, args.m, args.k, args.Q, args.mode)
    doc = ReportDocument(__version__, None, "zero-audit",
                         {"zeros": str(args.zeros), "T": args.T, "m": args.m, "k": args.k,
                          "Q": args.Q, "mode": args.mode})
    doc.add(report)
    doc.empirical = {"count": report.dominated_quantity}
    return doc


def cmd_constants(args):
    doc = ReportDocument(__version__, None, "constants", {})
    doc.empirical = {"registry": REGISTRY.as_dict(), "auxiliary": dict(table_rows()[len(REGISTRY.as_dict()):]),
                     "closed_forms": closed_forms(), "notes": dict(NOTES)}
    return doc


# --- output -------------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def render_text(doc):
    lines = [f"# satotate {doc.tool_version} {doc.command}"]
    if doc.form:
        lines.append("form: " + " ".join(f"{k}={_fmt(v)}" for k, v in doc.form.items()))

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for key in sorted(obj):
                walk(f"{prefix}{key}." if isinstance(obj[key], dict) else f"{prefix}{key}", obj[key])
        else:
            lines.append(f"{prefix}: {_fmt(obj)}")

    walk("", doc.empirical)
    for b in doc.bounds:
        flag = "" if b.satisfied is None else ("  satisfied" if b.satisfied else "  VIOLATED")
        side = "" if b.dominated_quantity is None else f"  empirical={_fmt(b.dominated_quantity)}"
        note = "" if not b.notes else "  [" + "; ".join(b.notes) + "]"
        lines.append(f"{b.bound_name}: {_fmt(b.value)}{side}{flag}{note}")
    if doc.timing:
        lines.append("timing: " + " ".join(f"{k}={_fmt(v)}" for k, v in doc.timing.items()))
    return "\n".join(lines) + "\n"


# --- parser -------------------------------------------------------------------------

def _global_flags(p, suppress):
    d = argparse.SUPPRESS
    p.add_argument("--json", action="store_true", default=d if suppress else False,
                   help="emit the report as JSON")
    p.add_argument("--threads", type=int, default=d if suppress else 1,
                   help="worker processes for angle generation")
    p.add_argument("--log-space", action="store_true", default=d if suppress else False,
                   help="read --x as log x")
    p.add_argument("--timing", action="store_true", default=d if suppress else False,
                   help="record wall-clock timing (makes output run-dependent)")


def build_parser():
    parser = argparse.ArgumentParser(prog="satotate", description=__doc__)
    parser.add_argument("--version", action="version", version=f"satotate {__version__}")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("angles", parents=[common], help="build or extend an angle cache")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", help="Weierstrass coefficients a1,a2,a3,a4,a6")
    src.add_argument("--coeffs", help="coefficient file of 'p a_p' lines")
    src.add_argument("--delta", action="store_true", help="use the discriminant form (k=12, N=1)")
    p.add_argument("--N", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--Q", type=float)
    p.add_argument("--label")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("verify", parents=[common], help="compare counts with the bounds")
    p.add_argument("--cache", required=True)
    p.add_argument("--x", type=float)
    p.add_argument("--interval", type=parse_interval, default=Interval(0.0, math.pi / 2),
                   help="a,b with a, b in [0, pi]; accepts pi/2 style values")
    p.add_argument("--grid-step", type=parse_angle, default=math.pi / 64)
    p.add_argument("--bins", type=int, default=32)
    p.add_argument("--hist-out", help="write histogram plot data (CSV)")
    p.add_argument("--elliptic", action="store_true", help="treat the cache as an elliptic curve")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="evaluate explicit bounds")
    for name in ("k", "N", "m", "M"):
        p.add_argument(f"--{name}", type=int)
    for name in ("Q", "x", "u", "T", "y"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--mode", default="full", choices=["full", "T200", "T1"])
    p.add_argument("--reduction", help="local data p:type:v,... for --conductor")
    for flag in ("ell", "eta", "min-rho", "zero-count", "N1", "R1", "R2", "R3", "erdos-turan",
                 "choose-params", "main", "conductor", "constants"):
        p.add_argument(f"--{flag}", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("atkin-serre", parents=[common], help="count Atkin-Serre exceptions")
    p.add_argument("--cache", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--mode", choices=["statement", "proof", "both"], default="both")
    p.set_defaults(func=cmd_atkin_serre)

    p = sub.add_parser("zero-audit", parents=[common], help="audit zero ordinates")
    p.add_argument("--zeros", required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--Q", type=float, default=11.0)
    p.add_argument("--mode", default="auto", choices=["auto", "full", "T200", "T1"])
    p.set_defaults(func=cmd_zero_audit)

    p = sub.add_parser("constants", parents=[common], help="dump the constants registry")
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        doc = args.func(args)
    except (SatoTateError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(doc.to_json() if args.json else render_text(doc))
    return 0 if doc.all_satisfied else 1


if __name__ == "__main__":
    sys.exit(main())
