"""Command-line front end.

Subcommands
    pt            weak-threshold curve points (CSV: alpha,beta_w,residual)
    ldp           rate-function tables (CSV or JSON, one row per alpha)
    verify        invariant suites: geometry | stationarity | width
    sim           Monte Carlo recovery runs (JSON + optional per-trial CSV)

Exit codes: 0 success, 1 solver/runtime failure, 2 invalid flags or
parameter values.  Every output file embeds its run manifest (JSON) or
gains a sidecar PATH.manifest.json (CSV).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .errors import DomainError, LpError, SolverError
from .geomcheck import psi_net
from .ldpcore import ldp_solution, ldp_solution_hidden, Regime
from .ptcore import Model, hidden_to_partial, pt_curve, solve_beta_w
from .zetaverify import zeta_grad_analytic

_MODELS = {"partial": Model.PARTIAL, "hidden": Model.HIDDEN_PARTIAL}


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tool_version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc)
                           .strftime("%Y-%m-%dT%H:%M:%SZ"))
    master_seed: int | None = None

    def to_dict(self):
        d = {
            "command": self.command,
            "parameters": self.parameters,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }
        if self.master_seed is not None:
            d["master_seed"] = self.master_seed
        return d


def _round_half_up(x):
    return int(math.floor(x + 0.5))


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("grid fields must be numbers")
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("need stop >= start and step > 0")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _parse_alpha_list(text):
    try:
        return [float(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _fmt(x):
    """Shortest round-trip decimal form; reparsing a CSV built from
    these (ints as ints, everything else as floats) and re-emitting is
    byte-identical."""
    if isinstance(x, int):
        return repr(x)
    return repr(float(x))


def _emit_csv(header, rows, path):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit_json(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_manifest_sidecar(path, manifest):
    if path is not None:
        with open(path + ".manifest.json", "w") as fh:
            fh.write(json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------- pt


def cmd_pt(args):
    model = _MODELS[args.model]
    alphas = args.alpha_grid if args.alpha_grid is not None else [args.alpha]
    points = pt_curve(args.eta, model, alphas)
    failed = [p for p in points if math.isnan(p.beta_w)]

    if args.alpha is not None and args.out is None and not failed:
        p = points[0]
        print("beta_w = %s" % _fmt(p.beta_w))
        print("residual = %s" % _fmt(p.residual))
        return 0

    rows = [(p.alpha, p.beta_w, p.residual) for p in points]
    _emit_csv(("alpha", "beta_w", "residual"), rows, args.out)
    manifest = RunManifest("pt", {"model": args.model, "eta": args.eta,
                                  "alphas": [p.alpha for p in points]})
    _write_manifest_sidecar(args.out, manifest)
    if failed:
        for p in failed:
            print("pt: no threshold at alpha = %s (solver failure)" % _fmt(p.alpha),
                  file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- ldp


_LDP_COLS = ("alpha", "beta1", "beta0", "nu", "a0", "c3", "gamma", "rate")
_LDP_COLS_HIDDEN = _LDP_COLS + ("beta1_hp", "beta0_hp")


def _ldp_rows(model, alphas, beta, eta):
    rows = []
    for a in alphas:
        if model is Model.PARTIAL:
            s = ldp_solution(a, beta, eta)
            rows.append((a, s.beta1, s.beta0, s.nu, s.a0, s.c3, s.gamma, s.rate))
        else:
            s = ldp_solution_hidden(a, beta, eta)
            rows.append((a, s.beta1, s.beta0, s.nu, s.a0, s.c3, s.gamma, s.rate,
                         s.beta1_hp, s.beta0_hp))
    return rows


def cmd_ldp(args):
    model = _MODELS[args.model]
    alphas = args.alpha_grid if args.alpha_grid is not None else args.alphas
    header = _LDP_COLS_HIDDEN if model is Model.HIDDEN_PARTIAL else _LDP_COLS
    rows = _ldp_rows(model, alphas, args.beta, args.eta)
    manifest = RunManifest("ldp", {"model": args.model, "beta": args.beta,
                                   "eta": args.eta, "alphas": alphas,
                                   "format": args.format})
    if args.format == "csv":
        _emit_csv(header, rows, args.out)
        _write_manifest_sidecar(args.out, manifest)
    else:
        doc = {
            "schema": 1,
            "manifest": manifest.to_dict(),
            "rows": [dict(zip(header, row)) for row in rows],
        }
        _emit_json(doc, args.out)
    return 0


# ---------------------------------------------------------------- verify


def cmd_verify_geometry(args):
    model = _MODELS[args.model]
    devs = []
    for a in args.alpha_grid:
        if model is Model.PARTIAL:
            rate = ldp_solution(a, args.beta, args.eta).rate
            dec = psi_net(a, args.beta, args.eta)
        else:
            rate = ldp_solution_hidden(a, args.beta, args.eta).rate
            b_eq, e_eq = hidden_to_partial(args.beta, args.eta)
            dec = psi_net(a, b_eq, e_eq)
        devs.append((abs(dec.psi_net - rate), a))
    worst = max(devs)
    print("verify geometry: %d points, max |psi_net - rate| = %.3e (tolerance %.1e)"
          % (len(devs), worst[0], args.tolerance))
    if worst[0] <= args.tolerance:
        return 0
    for dev, a in sorted(devs, reverse=True)[:5]:
        print("  alpha = %s: deviation %.3e" % (_fmt(a), dev), file=sys.stderr)
    return 1


def cmd_verify_stationarity(args):
    model = _MODELS[args.model]
    devs = []
    skipped = []
    for a in args.alphas:
        if model is Model.PARTIAL:
            s = ldp_solution(a, args.beta, args.eta)
        else:
            s = ldp_solution_hidden(a, args.beta, args.eta)
        if s.regime is Regime.ON_CURVE:
            skipped.append(a)
            continue
        g = zeta_grad_analytic(a, *_partial_params(model, args.beta, args.eta),
                               _point_of(s))
        devs.append((max(abs(v) for v in g), a))
    for a in skipped:
        print("  alpha = %s: on-curve degenerate point, gradient singular "
              "(zeta = rate = 0 identically); skipped" % _fmt(a))
    if not devs:
        print("verify stationarity: no off-curve points to check")
        return 0
    worst = max(devs)
    print("verify stationarity: %d points, max |grad zeta| = %.3e (tolerance %.1e)"
          % (len(devs), worst[0], args.tolerance))
    if worst[0] <= args.tolerance:
        return 0
    for dev, a in sorted(devs, reverse=True)[:5]:
        print("  alpha = %s: gradient norm %.3e" % (_fmt(a), dev), file=sys.stderr)
    return 1


def _partial_params(model, beta, eta):
    if model is Model.PARTIAL:
        return beta, eta
    return hidden_to_partial(beta, eta)


def _point_of(solution):
    from .zetaverify import ZetaPoint
    return ZetaPoint(c3=solution.c3, nu=solution.nu, a0=solution.a0)


def cmd_verify_width(args):
    import numpy as np

    from .simlab import gaussian_width_closed_form, gaussian_width_pg_oracle

    rng = np.random.default_rng(args.seed)
    devs = []
    for _ in range(args.cases):
        n = int(rng.integers(10, args.n + 1))
        k = int(rng.integers(1, n // 2 + 1))
        e = int(rng.integers(0, k + 1))
        h = rng.standard_normal(n)
        cf = gaussian_width_closed_form(h, k, e)
        pg = gaussian_width_pg_oracle(h, k, e, seed=int(rng.integers(2 ** 31)))
        devs.append((abs(cf - pg), n, k, e))
    worst = max(devs)
    print("verify width: %d cases, max |closed form - oracle| = %.3e (tolerance %.1e)"
          % (len(devs), worst[0], args.tolerance))
    if worst[0] <= args.tolerance:
        return 0
    for dev, n, k, e in sorted(devs, reverse=True)[:5]:
        print("  (n, k, eta_count) = (%d, %d, %d): gap %.3e" % (n, k, e, dev),
              file=sys.stderr)
    return 1


# ---------------------------------------------------------------- sim


def cmd_sim(args):
    from .simlab import SimConfig, run_trials

    n = args.n
    if args.m is not None:
        m = args.m
    elif args.alpha is not None:
        m = _round_half_up(args.alpha * n)
    else:
        raise DomainError("need --alpha or --m")
    if args.k is not None:
        k = args.k
    elif args.beta is not None:
        k = _round_half_up(args.beta * n)
    else:
        raise DomainError("need --beta or --k")
    if args.known is not None:
        known = args.known
    elif args.eta is not None:
        known = _round_half_up(args.eta * k)
    else:
        raise DomainError("need --eta or --known")

    cfg = SimConfig(n=n, m=m, k=k, known_count=known, model=_MODELS[args.model],
                    trials=args.trials, master_seed=args.seed,
                    recovery_tol=args.recovery_tol)
    per_trial = [] if args.trial_csv else None
    est = run_trials(cfg, threads=args.threads, per_trial=per_trial)

    params = {
        "model": args.model, "n": n, "m": m, "k": k, "known_count": known,
        "trials": cfg.trials, "recovery_tol": cfg.recovery_tol,
    }
    for name in ("alpha", "beta", "eta"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    manifest = RunManifest("sim", params, master_seed=cfg.master_seed)

    def rate_field(r):
        return "not observed" if r == -math.inf else r

    doc = {
        "schema": 1,
        "config": {
            "n": n, "m": m, "k": k, "known_count": known, "model": args.model,
            "trials": cfg.trials, "master_seed": cfg.master_seed,
            "recovery_tol": cfg.recovery_tol,
        },
        "estimate": {
            "failures": est.failures,
            "trials": est.trials,
            "invalid": est.invalid,
            "p_err_hat": est.p_err_hat,
            "p_cor_hat": est.p_cor_hat,
            "rate_err_hat": rate_field(est.rate_err_hat),
            "rate_cor_hat": rate_field(est.rate_cor_hat),
            "ci95_err": list(est.ci95_err),
        },
        "manifest": manifest.to_dict(),
    }
    _emit_json(doc, args.out)
    if args.trial_csv:
        _emit_csv(("trial_index", "failure", "lp_iterations", "residual"),
                  [(i, int(f), it, r) for i, f, it, r in per_trial], args.trial_csv)
        _write_manifest_sidecar(args.trial_csv, manifest)
    return 0


# ---------------------------------------------------------------- parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="partial-l1",
        description="Weak thresholds, LDP rate functions, and Monte Carlo "
                    "recovery experiments for partial and hidden-partial l1.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pt", help="weak-threshold curve")
    p.add_argument("--model", choices=sorted(_MODELS), required=True)
    p.add_argument("--eta", type=float, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--alpha", type=float)
    grp.add_argument("--alpha-grid", type=_parse_grid)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pt)

    p = sub.add_parser("ldp", help="rate-function table")
    p.add_argument("--model", choices=sorted(_MODELS), required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--alphas", type=_parse_alpha_list)
    grp.add_argument("--alpha-grid", type=_parse_grid)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ldp)

    p = sub.add_parser("verify", help="invariant suites")
    vsub = p.add_subparsers(dest="suite", required=True)

    v = vsub.add_parser("geometry", help="psi_net vs rate cross-check")
    v.add_argument("--model", choices=sorted(_MODELS), default="partial")
    v.add_argument("--eta", type=float, required=True)
    v.add_argument("--beta", type=float, required=True)
    v.add_argument("--alpha-grid", type=_parse_grid, required=True)
    v.add_argument("--tolerance", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify_geometry)

    v = vsub.add_parser("stationarity", help="gradient norm at closed-form points")
    v.add_argument("--model", choices=sorted(_MODELS), default="partial")
    v.add_argument("--eta", type=float, default=0.5)
    v.add_argument("--beta", type=float, default=0.25896)
    v.add_argument("--alphas", type=_parse_alpha_list,
                   default=[0.40, 0.45, 0.50, 0.55, 0.60])
    v.add_argument("--tolerance", type=float, default=1e-7)
    v.set_defaults(func=cmd_verify_stationarity)

    v = vsub.add_parser("width", help="closed-form width vs projected-gradient oracle")
    v.add_argument("--n", type=_positive_int, default=50)
    v.add_argument("--cases", type=_positive_int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tolerance", type=float, default=1e-6)
    v.set_defaults(func=cmd_verify_width)

    p = sub.add_parser("sim", help="Monte Carlo recovery run")
    p.add_argument("--model", choices=sorted(_MODELS), required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--m", type=_positive_int)
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--known", type=int)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--recovery-tol", type=float, default=1e-6)
    p.add_argument("--out")
    p.add_argument("--trial-csv")
    p.set_defaults(func=cmd_sim)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (SolverError, LpError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
