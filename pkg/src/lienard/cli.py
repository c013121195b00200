"""Command-line interface: factor | solve | verify | sweep.

Exit codes: 0 success, 1 input error, 2 not commutatively factorable,
3 verification failure. Flags override config-file values, which override
built-in defaults; the config file is flat ``key = value`` text with ``#``
comments. Set LIENARD_LOG=DEBUG for progress logging.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from typing import Optional

import numpy as np

from .exceptions import (
    DomainViolation,
    EmptyGrid,
    EvenRootOfNegative,
    InvalidEquation,
    LienardError,
    NotCommutativelyFactorable,
    NotMonomial,
    PoleAt,
)
from .factorize import (
    LienardEquation,
    commutative_factorize,
    to_monomial_form,
)
from .models import linearizability
from .polyalg import Polynomial, format_poly
from .svgplot import write_svg
from .verify import (
    detect_period,
    limit_cycle_convergence,
    match_numeric,
    ode_residual,
    symmetry_check,
)
from .waveforms import (
    ClosedFormWaveform,
    cubic_waveform,
    general_waveform,
    sto_printed_waveform,
    sto_waveform,
    sundman_waveform_q1,
    sundman_waveform_q2,
    wilson_waveform,
)

log = logging.getLogger("lienard")

RESIDUAL_TOL = 1e-9
MATCH_TOL = 1e-7
CYCLE_TOL = 1e-4
PERIOD_TOL = 1e-6

_MODELS = ("cubic", "wilson", "sto", "sundman1", "sundman2", "equation")

_DEFAULTS = {
    "delta": "0",
    "A": "1",
    "K": "1",
    "phase": "0",
    "sign": "1",
    "branch": "1",
    "b": "1",
    "variant": "factorized",
    "samples": "1000",
    "residual_tol": repr(RESIDUAL_TOL),
    "match_tol": repr(MATCH_TOL),
}


class Params:
    """Merged view of CLI flags, config-file values and defaults."""

    def __init__(self, args: argparse.Namespace, config: dict):
        provided = {k: v for k, v in vars(args).items() if v is not None}
        self._vals = {**_DEFAULTS, **config, **provided}

    def has(self, name: str) -> bool:
        return name in self._vals

    def raw(self, name: str, required: bool = True) -> Optional[str]:
        if name not in self._vals:
            if required:
                raise ValueError(f"missing required parameter --{name}")
            return None
        return self._vals[name]

    def flt(self, name: str, required: bool = True) -> Optional[float]:
        raw = self.raw(name, required)
        if raw is None:
            return None
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"--{name} expects a number, got {raw!r}") from None

    def intval(self, name: str, required: bool = True) -> Optional[int]:
        raw = self.raw(name, required)
        if raw is None:
            return None
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"--{name} expects an integer, got {raw!r}") from None

    def child(self, **overrides) -> "Params":
        q = dict(self._vals)
        q.update({k: repr(v) for k, v in overrides.items()})
        return Params(argparse.Namespace(), q)


def _load_config(path: str) -> dict:
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected 'key = value'")
            key, val = line.split("=", 1)
            cfg[key.strip()] = val.strip()
    return cfg


# ---------------------------------------------------------------------------
# Waveform construction
# ---------------------------------------------------------------------------


def _build_waveform(model: str, p: Params) -> ClosedFormWaveform:
    delta = p.flt("delta")
    if model == "cubic":
        return cubic_waveform(p.flt("k"), p.flt("omega"), p.flt("A"), delta)
    if model == "wilson":
        return wilson_waveform(p.flt("mu"), p.flt("A"), delta, p.intval("sign"))
    if model == "sto":
        builder = (
            sto_printed_waveform if p.raw("variant") == "printed" else sto_waveform
        )
        return builder(p.flt("alpha"), p.flt("v"), p.intval("b"), p.flt("A"), delta)
    if model == "sundman1":
        return sundman_waveform_q1(p.flt("a"), p.flt("c1"), delta)
    if model == "sundman2":
        return sundman_waveform_q2(p.flt("a"), p.flt("c1"), delta)
    if model == "equation":
        eq = _parse_equation(p)
        fact = commutative_factorize(eq)
        m = to_monomial_form(fact)
        return general_waveform(
            m, branch=p.intval("branch"), K=p.flt("K"), phase=p.flt("phase")
        )
    raise ValueError(f"unknown model {model!r}")


def _parse_equation(p: Params) -> LienardEquation:
    g_text, f_text = p.raw("G"), p.raw("F")
    return LienardEquation(
        damping=Polynomial.from_text(g_text), restoring=Polynomial.from_text(f_text)
    )


def _window(p: Params, w: ClosedFormWaveform) -> tuple[float, float]:
    lo = p.flt("t0", required=False)
    hi = p.flt("t1", required=False)
    if lo is None:
        lo = w.window[0]
    if hi is None:
        hi = w.window[1]
    if not hi > lo:
        raise ValueError("time span must be nondegenerate (t1 > t0)")
    return lo, hi


# ---------------------------------------------------------------------------
# factor
# ---------------------------------------------------------------------------


def cmd_factor(p: Params) -> int:
    eq = _parse_equation(p)
    try:
        fact = commutative_factorize(eq)
    except NotCommutativelyFactorable as exc:
        print(f"equation: {eq}")
        print("not commutatively factorable")
        print(f"residual p^2 - F/x: {format_poly(exc.residual)}")
        return 2
    print(f"equation: {eq}")
    print(f"p(x): {fact.symmetric_part}")
    print(f"c^2: {fact.c_squared}")
    print(f"regime: {fact.regime.value}")
    if fact.regime.value == "trigonometric":
        print(f"c_tilde: {fact.c_tilde:.17g}")
    if fact.monomial is not None:
        m = fact.monomial
        print(f"monomial form: q={m.q}, a={m.a}, b={m.b}, c={m.c}, delta={m.delta}")
    else:
        print("monomial form: none (symmetric part is not monomial + constant)")
    rep = linearizability(eq)
    if rep.chiellini is not None:
        print(
            f"chiellini: sigma^2={rep.chiellini.sigma_sq}, kappa={rep.chiellini.kappa}"
        )
    if rep.sundman is not None:
        print(
            f"sundman: case={rep.sundman.case}, sigma^2={rep.sundman.sigma_sq}, "
            f"kappa={rep.sundman.kappa}"
        )
    return 0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def _sample_rows(w: ClosedFormWaveform, lo: float, hi: float, n: int):
    """(t, x, xdot) rows; None marks a singular sample (gap).

    Samples within one grid spacing of a denominator zero are blanked so
    plots break at the poles instead of drawing spikes through them.
    """
    poles = w.singularities(lo, hi)
    gap = (hi - lo) / max(n - 1, 1)
    rows = []
    for t in np.linspace(lo, hi, n):
        t = float(t)
        if any(abs(t - p) < gap for p in poles):
            rows.append(None)
            continue
        try:
            x, xd, _ = w.derivatives(t)
        except (PoleAt, EvenRootOfNegative, OverflowError):
            rows.append(None)
            continue
        if not (math.isfinite(x) and math.isfinite(xd)) or abs(x) > 1e6:
            rows.append(None)
            continue
        rows.append((t, x, xd))
    return rows


def cmd_solve(model: str, p: Params) -> int:
    w = _build_waveform(model, p)
    lo, hi = _window(p, w)
    n = p.intval("samples")
    if n < 2:
        raise ValueError("--samples must be at least 2")
    rows = _sample_rows(w, lo, hi, n)
    lines = ["t,x,xdot"]
    for row in rows:
        if row is None:
            lines.append("")
        else:
            t, x, xd = row
            lines.append(f"{t:.17g},{x:.17g},{xd:.17g}")
    text = "\n".join(lines) + "\n"
    out = p.raw("out", required=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)
    svg = p.raw("svg", required=False)
    if svg:
        pts = [None if r is None else (r[0], r[1]) for r in rows]
        write_svg(
            svg, [(w.label, pts)], title=f"{w.label} waveform", xlabel="t", ylabel="x"
        )
        log.info("wrote %s", svg)
    phase_svg = p.raw("phase_svg", required=False)
    if phase_svg:
        pts = [None if r is None else (r[1], r[2]) for r in rows]
        write_svg(
            phase_svg,
            [(w.label, pts)],
            title=f"{w.label} phase portrait",
            xlabel="x",
            ylabel="xdot",
        )
        log.info("wrote %s", phase_svg)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _check(name: str, value: float, tol: float, failures: list) -> None:
    ok = value <= tol
    print(f"{name}: {value:.6g}  (tol {tol:g})  {'OK' if ok else 'FAIL'}")
    if not ok:
        failures.append(name)


def cmd_verify(model: str, p: Params) -> int:
    w = _build_waveform(model, p)
    eq = w.equation
    lo, hi = _window(p, w)
    residual_tol = p.flt("residual_tol")
    match_tol = p.flt("match_tol")
    failures: list[str] = []

    print(f"model: {model} {w.params}")
    print(f"equation: {eq}")
    print(f"window: [{lo:.6g}, {hi:.6g}]")

    grid = np.linspace(lo, hi, p.intval("samples"))
    try:
        res = ode_residual(eq, w, grid)
        _check("max_ode_residual", res, residual_tol, failures)
    except EmptyGrid:
        print("max_ode_residual: skipped (window entirely singular)")

    windows = w.singular_windows(lo, hi)
    if windows.points or windows.intervals:
        print(f"singular points: {[round(t, 6) for t in windows.points]}")
        if windows.intervals:
            print(
                "negative-radicand windows: "
                f"{[(round(a, 6), round(b, 6)) for a, b in windows.intervals]}"
            )
    guard = 0.02 * (hi - lo)
    hi_match = hi
    for hazard in sorted(list(windows.points) + [iv[0] for iv in windows.intervals]):
        if hazard > lo + guard:
            hi_match = min(hi_match, hazard - guard)
            break
        if hazard >= lo - guard:
            hi_match = lo  # window starts singular; skip the match
    if hi_match > lo + 10 * guard and windows.is_clear(lo, guard):
        mismatch = match_numeric(eq, w, (lo, hi_match), 1e-11)
        _check("max_numeric_mismatch", mismatch, match_tol, failures)
    else:
        print("max_numeric_mismatch: skipped (no regular prefix)")

    period = detect_period(w, (lo, hi))
    if period is not None:
        print(f"detected_period: {period:.12g}")
        if w.period is not None:
            rel = abs(period - w.period) / w.period
            _check("period_relative_error", rel, PERIOD_TOL, failures)
    elif w.period is not None:
        print("detected_period: none  FAIL (expected periodic)")
        failures.append("period")
    else:
        print("detected_period: none (aperiodic)")

    if model == "cubic":
        sym = symmetry_check(p.flt("k"), p.flt("omega"), p.flt("A"), p.flt("delta"))
        if sym.get("skipped"):
            print("symmetry: skipped (delta != 0)")
        else:
            _check("symmetry_odd_time_reversal", sym["odd_time_reversal"], 1e-12, failures)
            _check("symmetry_damping_parity", sym["damping_parity"], 1e-12, failures)

    if model == "wilson" and p.has("limit_cycle"):
        mu = p.flt("mu")
        inside = limit_cycle_convergence(mu, 0.1, 0.0, 200.0)
        outside = limit_cycle_convergence(mu, 3.0, 0.0, 200.0)
        _check("limit_cycle_residual_inside", inside, CYCLE_TOL, failures)
        _check("limit_cycle_residual_outside", outside, CYCLE_TOL, failures)

    if model == "sto" and p.has("arbitrate"):
        alpha, v, b = p.flt("alpha"), p.flt("v"), p.intval("b")
        a_const, delta = p.flt("A"), p.flt("delta")
        w_f = sto_waveform(alpha, v, b, a_const, delta)
        w_p = sto_printed_waveform(alpha, v, b, a_const, delta)
        r_f = ode_residual(w_f.equation, w_f, grid)
        r_p = ode_residual(w_p.equation, w_p, grid)
        print(f"arbitration: factorized-coefficient residual {r_f:.6g}, "
              f"printed-formula residual {r_p:.6g}")
        if b == 1:
            ok = r_f <= residual_tol and r_p <= residual_tol
            print(f"arbitration verdict: forms coincide at b=1  {'OK' if ok else 'FAIL'}")
            if not ok:
                failures.append("arbitration")
        else:
            winners = [r_f <= residual_tol, r_p <= residual_tol]
            if winners == [True, False]:
                print("arbitration verdict: factorized coefficient wins")
            elif winners == [False, True]:
                print("arbitration verdict: printed formula wins")
            else:
                print("arbitration verdict: ambiguous  FAIL")
                failures.append("arbitration")

    csv_path = p.raw("csv", required=False)
    if csv_path:
        mismatch = _csv_mismatch(csv_path, w)
        _check("csv_mismatch", mismatch, match_tol, failures)

    print(f"result: {'PASS' if not failures else 'FAIL (' + ', '.join(failures) + ')'}")
    return 0 if not failures else 3


def _csv_mismatch(path: str, w: ClosedFormWaveform) -> float:
    worst = 0.0
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "t,x,xdot":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            t_s, x_s, _ = line.split(",")
            try:
                xc = w.eval(float(t_s))
            except (PoleAt, EvenRootOfNegative):
                continue
            worst = max(worst, abs(float(x_s) - xc))
    return worst


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _sweep_values(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("--step must be positive")
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def cmd_sweep(model: str, p: Params) -> int:
    param = p.raw("param")
    values = _sweep_values(p.flt("start"), p.flt("stop"), p.flt("step"))
    lines = [f"{param},period,regularity,ode_residual"]
    for value in values:
        sub = p.child(**{param: value})
        w = _build_waveform(model, sub)
        lo, hi = _window(sub, w)
        poles = w.singularities(lo, hi)
        negs = w.negative_windows(lo, hi)
        cls = "singular" if (poles or negs) else "regular"
        grid = np.linspace(lo, hi, 400)
        try:
            res = ode_residual(w.equation, w, grid)
        except EmptyGrid:
            res = float("nan")
        period = detect_period(w, (lo, hi))
        period_s = f"{period:.17g}" if period is not None else ""
        lines.append(f"{value:.17g},{period_s},{cls},{res:.17g}")
    text = "\n".join(lines) + "\n"
    out = p.raw("out", required=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common_model_flags(sp: argparse.ArgumentParser):
    for flag in (
        "k omega mu alpha v a c1 A K phase delta t0 t1 G F "
        "start stop step param out svg phase_svg csv "
        "residual_tol match_tol variant".split()
    ):
        sp.add_argument(f"--{flag.replace('_', '-')}", dest=flag, default=None)
    sp.add_argument("--b", dest="b", default=None)
    sp.add_argument("--sign", dest="sign", default=None)
    sp.add_argument("--branch", dest="branch", default=None)
    sp.add_argument("--samples", dest="samples", default=None)
    sp.add_argument("--limit-cycle", dest="limit_cycle", action="store_const", const="1")
    sp.add_argument("--arbitrate", dest="arbitrate", action="store_const", const="1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lienard",
        description=(
            "Commutative factorization of polynomial Lienard equations, "
            "closed-form waveforms, and verification."
        ),
    )
    parser.add_argument("--config", default=None, help="flat key = value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factor", help="factor an equation given G and F")
    sp.add_argument("--G", dest="G", default=None, help="damping polynomial (ascending coefficients)")
    sp.add_argument("--F", dest="F", default=None, help="restoring polynomial (ascending coefficients)")

    for name, help_text in (
        ("solve", "emit a closed-form waveform as CSV (and optional SVG)"),
        ("verify", "verify a waveform: residuals, numeric match, period"),
        ("sweep", "scan a parameter range; CSV of period/regularity/residual"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("model", choices=_MODELS if name != "sweep" else ("cubic", "wilson"))
        _add_common_model_flags(sp)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("LIENARD_LOG", "WARNING").upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {}
    try:
        if args.config:
            config = _load_config(args.config)
        p = Params(args, config)
        if args.command == "factor":
            return cmd_factor(p)
        if args.command == "solve":
            return cmd_solve(args.model, p)
        if args.command == "verify":
            return cmd_verify(args.model, p)
        if args.command == "sweep":
            return cmd_sweep(args.model, p)
        parser.error(f"unknown command {args.command!r}")
    except (NotCommutativelyFactorable, NotMonomial) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, InvalidEquation, DomainViolation, LienardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
