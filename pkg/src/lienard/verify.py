"""Independent numerical verification of closed-form waveforms.

Everything here deliberately avoids the closed-form machinery's internals:
trajectories come from an adaptive embedded Dormand-Prince 5(4) integrator
on the first-order system (x, x'), residuals plug waveform derivatives into
the defining equation, and periods are detected from zero crossings or pole
spacings of the signal itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq as _brentq

from .exceptions import BlowUp, EmptyGrid, EvenRootOfNegative, PoleAt, StepUnderflow
from .factorize import LienardEquation
from .models import wilson_equation, wilson_limit_cycle_residual
from .waveforms import ClosedFormWaveform

# Dormand-Prince 5(4) tableau. The fifth-order solution is propagated; the
# embedded fourth-order weights provide the local error estimate.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


@dataclass(frozen=True)
class TimeSeries:
    """Sampled trajectory (t strictly increasing, x and x' aligned)."""

    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray

    def __post_init__(self):
        if not (len(self.t) == len(self.x) == len(self.xdot)):
            raise ValueError("t, x, xdot must have equal lengths")
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("t must be strictly increasing")


def _rhs_factory(eq: LienardEquation):
    gc, fc = eq.rhs_floats()

    def rhs(x: float, v: float) -> tuple[float, float]:
        g = 0.0
        for c in reversed(gc):
            g = g * x + c
        f = 0.0
        for c in reversed(fc):
            f = f * x + c
        return v, -g * v - f

    return rhs


def _dp_step(rhs, t, x, v, h, k1):
    """One Dormand-Prince step. Returns (x5, v5, err_x, err_v, k_last)."""
    kx = [k1[0]]
    kv = [k1[1]]
    for i in range(1, 7):
        ai = _A[i]
        xx = x
        vv = v
        for j, a in enumerate(ai):
            xx += h * a * kx[j]
            vv += h * a * kv[j]
        dx, dv = rhs(xx, vv)
        kx.append(dx)
        kv.append(dv)
    x5 = x + h * sum(b * k for b, k in zip(_B5, kx))
    v5 = v + h * sum(b * k for b, k in zip(_B5, kv))
    ex = h * sum((b5 - b4) * k for b5, b4, k in zip(_B5, _B4, kx))
    ev = h * sum((b5 - b4) * k for b5, b4, k in zip(_B5, _B4, kv))
    return x5, v5, ex, ev, (kx[6], kv[6])


def integrate(
    eq: LienardEquation,
    x0: float,
    v0: float,
    t_span: tuple[float, float],
    tol: float = 1e-9,
    *,
    samples: Optional[Sequence[float]] = None,
    n_samples: int = 400,
    blowup: float = 1e6,
) -> TimeSeries:
    """Adaptive integration of x'' + G(x) x' + F(x) = 0 over t_span.

    Local error per step is controlled at ``tol`` (mixed absolute/relative).
    The integrator lands exactly on each requested sample time, so the
    returned grid is the requested one. Raises BlowUp(t) once |x| exceeds
    ``blowup`` and StepUnderflow if the controller stalls.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    if samples is None:
        samples = np.linspace(t0, t1, n_samples)
    ts = np.asarray(sorted(float(s) for s in samples))
    if len(ts) and (ts[0] < t0 - 1e-12 or ts[-1] > t1 + 1e-12):
        raise ValueError("samples must lie within t_span")

    rhs = _rhs_factory(eq)
    t, x, v = t0, float(x0), float(v0)
    out_t, out_x, out_v = [], [], []
    si = 0
    while si < len(ts) and ts[si] <= t:
        out_t.append(ts[si])
        out_x.append(x)
        out_v.append(v)
        si += 1

    k1 = rhs(x, v)
    scale0 = abs(x) + abs(v) + 1.0
    h = min(0.1, (t1 - t0) / 10.0, tol ** 0.2 / max(1e-30, abs(k1[1]) / scale0 + 1.0))
    h = max(h, 1e-12)
    max_steps = 2_000_000
    for _ in range(max_steps):
        if t >= t1:
            break
        target = ts[si] if si < len(ts) else t1
        h = min(h, t1 - t, target - t if target > t else t1 - t)
        if h < 1e-14 * max(1.0, abs(t)):
            raise StepUnderflow(f"step size underflow at t = {t:.6g}")
        x5, v5, ex, ev, klast = _dp_step(rhs, t, x, v, h, k1)
        sx = tol + tol * max(abs(x), abs(x5))
        sv = tol + tol * max(abs(v), abs(v5))
        err = math.sqrt(0.5 * ((ex / sx) ** 2 + (ev / sv) ** 2))
        if err <= 1.0:
            t_new = t + h
            t, x, v = t_new, x5, v5
            k1 = klast  # FSAL
            if abs(x) > blowup:
                raise BlowUp(t, blowup)
            while si < len(ts) and ts[si] <= t + 1e-13 * max(1.0, abs(t)):
                out_t.append(ts[si])
                out_x.append(x)
                out_v.append(v)
                si += 1
        factor = 0.9 * (1.0 / max(err, 1e-10)) ** 0.2
        h *= min(5.0, max(0.2, factor))
    else:
        raise StepUnderflow("step budget exhausted")

    return TimeSeries(
        t=np.asarray(out_t), x=np.asarray(out_x), xdot=np.asarray(out_v)
    )


def integrate_fixed_step(
    eq: LienardEquation, x0: float, v0: float, t_end: float, n_steps: int
) -> tuple[float, float]:
    """Endpoint state after n fixed Dormand-Prince steps (order tests)."""
    rhs = _rhs_factory(eq)
    h = t_end / n_steps
    t, x, v = 0.0, float(x0), float(v0)
    k1 = rhs(x, v)
    for _ in range(n_steps):
        x, v, _, _, k1 = _dp_step(rhs, t, x, v, h, k1)
        t += h
    return x, v


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------


def ode_residual(
    eq: LienardEquation,
    w: ClosedFormWaveform,
    grid: Sequence[float],
) -> float:
    """max over the grid of |x'' + G(x) x' + F(x)| / (1 + |F(x)|).

    Points inside singular windows (poles, negative radicand, Bernoulli
    coefficient poles within the evaluation guard) are skipped; EmptyGrid
    is raised when nothing survives.
    """
    gp, fp = eq.damping, eq.restoring
    gc, fc = gp.as_float_coeffs(), fp.as_float_coeffs()
    worst = None
    for t in grid:
        try:
            x, xd, xdd = w.derivatives(float(t))
        except (PoleAt, EvenRootOfNegative, OverflowError):
            continue
        if not math.isfinite(x) or abs(x) > 1e8:
            continue
        g = 0.0
        for c in reversed(gc):
            g = g * x + c
        f = 0.0
        for c in reversed(fc):
            f = f * x + c
        res = abs(xdd + g * xd + f) / (1.0 + abs(f))
        if worst is None or res > worst:
            worst = res
    if worst is None:
        raise EmptyGrid("all grid points fell in singular windows")
    return worst


def match_numeric(
    eq: LienardEquation,
    w: ClosedFormWaveform,
    t_span: tuple[float, float],
    tol: float = 1e-11,
    n_samples: int = 400,
) -> float:
    """Integrate from the waveform's initial point and return the maximum
    deviation |x_numeric - x_closed_form| over the span."""
    t0, t1 = float(t_span[0]), float(t_span[1])
    x0, v0, _ = w.derivatives(t0)
    ts = np.linspace(t0, t1, n_samples)
    series = integrate(eq, x0, v0, (t0, t1), tol, samples=ts)
    worst = 0.0
    for t, xn in zip(series.t, series.x):
        try:
            xc = w.eval(float(t))
        except (PoleAt, EvenRootOfNegative):
            continue
        worst = max(worst, abs(xn - xc))
    return worst


# ---------------------------------------------------------------------------
# Period detection
# ---------------------------------------------------------------------------


def _spacings_ok(vals: list[float], rel: float = 1e-6) -> bool:
    if len(vals) < 1:
        return False
    mean = sum(vals) / len(vals)
    return mean > 0 and all(abs(v - mean) <= rel * mean for v in vals)


def _shift_is_period(w: ClosedFormWaveform, lo: float, shift: float, n: int = 257) -> bool:
    """Does x(t + shift) == x(t) on a sample of regular points?"""
    checked = 0
    worst = 0.0
    scale = 1e-12
    for i in range(n):
        t = lo + shift * (i + 0.31) / n
        try:
            a = w.eval(t)
            b = w.eval(t + shift)
        except (PoleAt, EvenRootOfNegative):
            continue
        if abs(a) > 1e6 or abs(b) > 1e6:
            continue
        checked += 1
        worst = max(worst, abs(a - b))
        scale = max(scale, abs(a))
    return checked >= n // 4 and worst <= 1e-7 * max(1.0, scale)


def detect_period(
    signal: Union[ClosedFormWaveform, TimeSeries],
    window: Optional[tuple[float, float]] = None,
    n_samples: int = 4096,
) -> Optional[float]:
    """Detected period, or None for aperiodic signals.

    Regular signals: twice the mean spacing of consecutive zero crossings
    (equivalently the mean spacing of same-direction crossings), crossing
    locations polished by root bracketing; the candidate is halved while
    the half still shifts the signal onto itself, which recovers the
    cotangent-type periods. Singular signals: spacing of corresponding
    (every other) poles, with the same minimality refinement. Returns None
    when the spacings spread beyond 1e-6 relative.
    """
    if isinstance(signal, TimeSeries):
        return _detect_period_series(signal)
    w = signal
    lo, hi = window if window is not None else w.window

    poles = w.singularities(lo, hi)
    if len(poles) >= 3:
        second = [poles[i + 2] - poles[i] for i in range(len(poles) - 2)]
        if not _spacings_ok(second):
            return None
        cand = sum(second) / len(second)
    else:
        cand = _crossing_period(w, lo, hi, n_samples)
        if cand is None:
            return None
    # crossings can be evenly spaced on decaying signals; demand that the
    # candidate actually shifts the waveform onto itself
    if cand <= 0 or not _shift_is_period(w, lo, cand):
        return None
    # minimality: halve while the half-shift is itself a period
    for _ in range(3):
        if _shift_is_period(w, lo, cand / 2.0):
            cand /= 2.0
        else:
            break
    return cand


def _crossing_period(w, lo, hi, n_samples) -> Optional[float]:
    ts = np.linspace(lo, hi, n_samples)
    vals = np.full(len(ts), np.nan)
    for i, t in enumerate(ts):
        try:
            vals[i] = w.eval(float(t))
        except (PoleAt, EvenRootOfNegative):
            continue
    crossings = []
    for i in range(len(ts) - 1):
        a, b = vals[i], vals[i + 1]
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        if abs(a) > 1e4 or abs(b) > 1e4:
            continue  # near-pole sign flip, not a zero crossing
        if a == 0.0:
            crossings.append(ts[i])
        elif a * b < 0.0:
            crossings.append(_brentq(w.eval, ts[i], ts[i + 1], xtol=1e-13, rtol=1e-15))
    if len(crossings) < 3:
        return None
    same_dir = [crossings[i + 2] - crossings[i] for i in range(len(crossings) - 2)]
    if not _spacings_ok(same_dir):
        return None
    return sum(same_dir) / len(same_dir)


def _detect_period_series(series: TimeSeries) -> Optional[float]:
    t, x = series.t, series.x
    crossings = []
    for i in range(len(t) - 1):
        a, b = x[i], x[i + 1]
        if a == 0.0:
            crossings.append(t[i])
        elif a * b < 0.0:
            # linear interpolation, then one quadratic refinement if possible
            tc = t[i] - a * (t[i + 1] - t[i]) / (b - a)
            crossings.append(tc)
    if len(crossings) < 3:
        return None
    same_dir = [crossings[i + 2] - crossings[i] for i in range(len(crossings) - 2)]
    if not _spacings_ok(same_dir, rel=1e-4):
        return None
    return float(sum(same_dir) / len(same_dir))


# ---------------------------------------------------------------------------
# Symmetry and limit-cycle checks
# ---------------------------------------------------------------------------


def symmetry_check(
    k: float, omega: float, a_const: float, delta: float = 0.0, n: int = 401
) -> dict:
    """Symmetry defects of the cubic-oscillator waveform at delta = 0.

    odd_time_reversal: max |x(t; A, k) + x(-t; -A, k)|  (time reversal
    composed with a sign flip maps the A branch onto the -A branch).
    damping_parity:    max |x(t; A, k) - x(-t; A, -k)|.

    For delta != 0 the identities do not apply and the check is skipped.
    """
    if delta != 0.0:
        return {"skipped": True}
    from .waveforms import cubic_waveform

    w_pos = cubic_waveform(k, omega, a_const)
    w_neg_a = cubic_waveform(k, omega, -a_const) if a_const != 0 else w_pos
    w_neg_k = cubic_waveform(-k, omega, a_const) if k != 0 else w_pos
    span = 2.0 * math.pi / abs(omega)
    odd = parity = 0.0
    for i in range(n):
        t = -span + 2.0 * span * i / (n - 1)
        try:
            x = w_pos.eval(t)
            xr = w_neg_a.eval(-t)
            xk = w_neg_k.eval(-t)
        except (PoleAt, EvenRootOfNegative):
            continue
        if max(abs(x), abs(xr), abs(xk)) > 1e6:
            continue
        odd = max(odd, abs(x + xr))
        parity = max(parity, abs(x - xk))
    return {"skipped": False, "odd_time_reversal": odd, "damping_parity": parity}


def limit_cycle_convergence(
    mu: float,
    x0: float,
    v0: float,
    settle_time: float,
    tol: float = 1e-10,
    n_loop: int = 400,
) -> float:
    """Integrate the Wilson equation past settle_time and return the
    normalized maximum limit-cycle curve residual over the final loop.

    The normalization scale is the largest individual term magnitude of the
    curve polynomial over the loop, so the result is a relative distance.
    BlowUp propagates for escaping initial conditions.
    """
    eq = wilson_equation(mu)
    ct = math.sqrt(4.0 - mu * mu) / 2.0
    loop = 2.0 * math.pi / ct
    t_end = settle_time + loop
    ts = np.linspace(settle_time, t_end, n_loop)
    series = integrate(eq, x0, v0, (0.0, t_end), tol, samples=ts)
    worst = 0.0
    scale = 1e-30
    for x, y in zip(series.x, series.xdot):
        s = x * x - 4.0
        terms = (
            y * y,
            abs(0.5 * mu * x * s * y),
            abs(s) * (mu * mu / 16.0 * x * x * abs(s) + 1.0),
        )
        scale = max(scale, *terms)
        worst = max(worst, abs(wilson_limit_cycle_residual(mu, float(x), float(y))))
    return worst / scale


# ---------------------------------------------------------------------------
# Report container
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Collected verification outcomes for one waveform/equation pair."""

    max_ode_residual: Optional[float] = None
    max_waveform_mismatch: Optional[float] = None
    detected_period: Optional[float] = None
    symmetry_defects: dict = field(default_factory=dict)
    limit_cycle_residual: Optional[float] = None
    singular_windows_skipped: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def passed(
        self,
        residual_tol: float = 1e-9,
        mismatch_tol: float = 1e-7,
        cycle_tol: float = 1e-4,
    ) -> bool:
        if self.max_ode_residual is not None and self.max_ode_residual > residual_tol:
            return False
        if (
            self.max_waveform_mismatch is not None
            and self.max_waveform_mismatch > mismatch_tol
        ):
            return False
        if (
            self.limit_cycle_residual is not None
            and self.limit_cycle_residual > cycle_tol
        ):
            return False
        return True


def verify_waveform(
    w: ClosedFormWaveform,
    window: Optional[tuple[float, float]] = None,
    *,
    n_grid: int = 1000,
    match_tol: float = 1e-11,
) -> VerificationReport:
    """Convenience pipeline: residual, numeric match, period detection."""
    eq = w.equation
    if eq is None:
        raise ValueError("waveform carries no equation to verify against")
    lo, hi = window if window is not None else w.window
    report = VerificationReport()
    windows = w.singular_windows(lo, hi)
    report.singular_windows_skipped = list(windows.points) + list(windows.intervals)
    grid = np.linspace(lo, hi, n_grid)
    report.max_ode_residual = ode_residual(eq, w, grid)
    span_guard = 0.02 * (hi - lo)
    if windows.is_clear(lo, span_guard):
        # match over the longest pole-free prefix of the window
        hi_match = hi
        for p in sorted(list(windows.points) + [iv[0] for iv in windows.intervals]):
            if p > lo + span_guard:
                hi_match = min(hi_match, p - span_guard)
                break
        if hi_match > lo + 10 * span_guard:
            report.max_waveform_mismatch = match_numeric(
                eq, w, (lo, hi_match), match_tol
            )
    report.detected_period = detect_period(w, (lo, hi))
    return report
