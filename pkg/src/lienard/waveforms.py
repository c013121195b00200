"""Closed-form waveforms for commutatively factorable Lienard equations.

Every waveform here has the shape

    x(t) = s * n(t) / d(t)^(1/q)

with a smooth numerator n, a denominator d, a branch sign s (meaningful for
even q only) and the nonlinearity order q of the associated first-order
Bernoulli reduction  x' + Z(t) x = -a x^(q+1).  Derivatives are computed
with quotient/chain rules on (n, d), which stay well conditioned near the
poles of the Bernoulli coefficient Z where the naive identity
x' = -Z x - a x^(q+1) would multiply huge by tiny.

Three time-kernel regimes exist, fixed by the sign of the factorization
constant c^2 (equivalently of delta = 4 c^2):

    rational       Z(t) = b/2 - 1/(t - t0)
    hyperbolic     Z(t) = b/2 - r tanh(r t + delta),   r = sqrt(delta)/2
    trigonometric  Z(t) = b/2 + r tan(r t + delta),    r = sqrt(-delta)/2

Only the trigonometric regime produces isochronous (periodic) solutions.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from scipy.integrate import quad as _quad
from scipy.optimize import brentq as _brentq

from .exceptions import (
    DomainViolation,
    EvenRootOfNegative,
    PoleAt,
    QuadratureFailure,
)
from .factorize import LienardEquation, MonomialForm, Regime
from .models import (
    cubic_oscillator,
    monomial_equation,
    sto_ctilde_squared,
    sto_shifted_equation,
    wilson_equation,
)
from .polyalg import Polynomial

POLE_GUARD = 1e-8  # evaluation raises PoleAt within this distance of a pole


# ---------------------------------------------------------------------------
# Time kernels (the auxiliary Riccati solutions)
# ---------------------------------------------------------------------------


class RationalKernel:
    """zeta(t) = 1/(t - t0), the c = 0 kernel."""

    def __init__(self, t0: float):
        self.t0 = float(t0)
        self.c = 0.0

    def poles(self, lo: float, hi: float) -> list[float]:
        return [self.t0] if lo <= self.t0 <= hi else []

    def _guard(self, t: float):
        if abs(t - self.t0) < POLE_GUARD:
            raise PoleAt(self.t0)

    def value(self, t: float) -> float:
        self._guard(t)
        return 1.0 / (t - self.t0)

    def derivative(self, t: float) -> float:
        self._guard(t)
        return -1.0 / (t - self.t0) ** 2

    def riccati_residual(self, t: float) -> float:
        z = self.value(t)
        return abs(self.derivative(t) + z * z)


class HyperbolicKernel:
    """zeta(t) = -c [1 - tanh(c t + delta)] for real nonzero c."""

    def __init__(self, c: float, delta: float = 0.0):
        if c == 0:
            raise DomainViolation("hyperbolic kernel requires c != 0")
        self.c = float(c)
        self.delta = float(delta)

    def poles(self, lo: float, hi: float) -> list[float]:
        return []

    def value(self, t: float) -> float:
        return -self.c * (1.0 - math.tanh(self.c * t + self.delta))

    def derivative(self, t: float) -> float:
        return self.c * self.c / math.cosh(self.c * t + self.delta) ** 2

    def riccati_residual(self, t: float) -> float:
        z = self.value(t)
        return abs(self.derivative(t) + 2.0 * self.c * z + z * z)


class TrigonometricKernel:
    """zeta(t) = -c_tilde [i + tan(c_tilde t + delta)], the c = i*c_tilde kernel.

    Complex-valued; this is the only kernel with poles on a lattice,
    at c_tilde t + delta = pi/2 + m pi.
    """

    def __init__(self, c_tilde: float, delta: float = 0.0):
        if c_tilde <= 0:
            raise DomainViolation("trigonometric kernel requires c_tilde > 0")
        self.c_tilde = float(c_tilde)
        self.delta = float(delta)
        self.c = 1j * self.c_tilde

    def poles(self, lo: float, hi: float) -> list[float]:
        return _tangent_poles(self.c_tilde, self.delta, lo, hi)

    def _guard(self, t: float):
        theta = self.c_tilde * t + self.delta
        dist = abs(_wrap_half_pi(theta)) / self.c_tilde
        if dist < POLE_GUARD:
            raise PoleAt(t)

    def value(self, t: float) -> complex:
        self._guard(t)
        return -self.c_tilde * (1j + math.tan(self.c_tilde * t + self.delta))

    def derivative(self, t: float) -> complex:
        self._guard(t)
        return -self.c_tilde**2 / math.cos(self.c_tilde * t + self.delta) ** 2

    def riccati_residual(self, t: float) -> float:
        z = self.value(t)
        return abs(self.derivative(t) + 2.0 * self.c * z + z * z)


def _wrap_half_pi(theta: float) -> float:
    """Signed distance from theta to the nearest pi/2 + m*pi."""
    return (theta - math.pi / 2.0 + math.pi / 2.0) % math.pi - math.pi / 2.0


def _tangent_poles(rate: float, offset: float, lo: float, hi: float) -> list[float]:
    """All t in [lo, hi] with rate*t + offset = pi/2 + m*pi."""
    m_lo = math.ceil((rate * lo + offset - math.pi / 2.0) / math.pi)
    m_hi = math.floor((rate * hi + offset - math.pi / 2.0) / math.pi)
    return [(math.pi / 2.0 + m * math.pi - offset) / rate for m in range(m_lo, m_hi + 1)]


def zeta_eval(kernel, t: float):
    return kernel.value(t)


def zeta_riccati_residual(kernel, t: float) -> float:
    return kernel.riccati_residual(t)


# ---------------------------------------------------------------------------
# Bernoulli coefficient Z(t)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZCoefficient:
    """Real Bernoulli coefficient Z(t) of x' + Z x = -a x^(q+1).

    ``half_b`` is the constant part, ``rate`` the kernel rate (unused in the
    rational regime) and ``offset`` the phase (the pole t0 in the rational
    regime).
    """

    regime: Regime
    half_b: float
    rate: float
    offset: float

    def value(self, t: float) -> float:
        if self.regime is Regime.RATIONAL:
            return self.half_b - 1.0 / (t - self.offset)
        if self.regime is Regime.HYPERBOLIC:
            return self.half_b - self.rate * math.tanh(self.rate * t + self.offset)
        return self.half_b + self.rate * math.tan(self.rate * t + self.offset)

    def derivative(self, t: float) -> float:
        if self.regime is Regime.RATIONAL:
            return 1.0 / (t - self.offset) ** 2
        if self.regime is Regime.HYPERBOLIC:
            return -self.rate**2 / math.cosh(self.rate * t + self.offset) ** 2
        return self.rate**2 / math.cos(self.rate * t + self.offset) ** 2

    def poles(self, lo: float, hi: float) -> list[float]:
        if self.regime is Regime.RATIONAL:
            return [self.offset] if lo <= self.offset <= hi else []
        if self.regime is Regime.HYPERBOLIC:
            return []
        return _tangent_poles(self.rate, self.offset, lo, hi)


# ---------------------------------------------------------------------------
# Deterministic cached antiderivative
# ---------------------------------------------------------------------------


class _CumulativeIntegral:
    """E(t) = integral of f from t_ref to t, cached on a fixed knot grid.

    Knot values are accumulated at t_ref + j*h independently of evaluation
    order, so concurrent or out-of-order calls return bit-identical values;
    the lock only serializes extension of the knot table.
    """

    def __init__(self, f: Callable[[float], float], t_ref: float, step: float = 0.25):
        self._f = f
        self._t_ref = float(t_ref)
        self._h = float(step)
        self._knots = {0: 0.0}
        self._jmin = 0
        self._jmax = 0
        self._lock = threading.Lock()

    def _segment(self, a: float, b: float) -> float:
        if a == b:
            return 0.0
        val, err = _quad(self._f, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)
        if err > 1e-9 * (1.0 + abs(val)):
            raise QuadratureFailure(
                f"quadrature error estimate {err:g} too large on [{a:g}, {b:g}]"
            )
        return val

    def _knot_t(self, j: int) -> float:
        return self._t_ref + j * self._h

    def _ensure(self, j: int):
        with self._lock:
            while self._jmax < j:
                nxt = self._jmax + 1
                self._knots[nxt] = self._knots[self._jmax] + self._segment(
                    self._knot_t(self._jmax), self._knot_t(nxt)
                )
                self._jmax = nxt
            while self._jmin > j:
                nxt = self._jmin - 1
                self._knots[nxt] = self._knots[self._jmin] - self._segment(
                    self._knot_t(nxt), self._knot_t(self._jmin)
                )
                self._jmin = nxt

    def value(self, t: float) -> float:
        j = math.floor((t - self._t_ref) / self._h)
        self._ensure(j)
        return self._knots[j] + self._segment(self._knot_t(j), t)


# ---------------------------------------------------------------------------
# The waveform object
# ---------------------------------------------------------------------------


def _real_root_inv(d: float, q: int) -> float:
    """d^(-1/q) as a real number; signed real root for odd q."""
    if q == 1:
        return 1.0 / d
    if q % 2 == 0:
        return d ** (-1.0 / q)
    return math.copysign(abs(d) ** (-1.0 / q), d)


@dataclass(frozen=True)
class SingularWindows:
    """Denominator zeros (points) and negative-radicand intervals."""

    points: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]

    def is_clear(self, t: float, guard: float = 0.0) -> bool:
        for p in self.points:
            if abs(t - p) <= guard:
                return False
        for a, b in self.intervals:
            if a - guard <= t <= b + guard:
                return False
        return True


class ClosedFormWaveform:
    """An evaluable solution x(t) = s * num(t) / den(t)^(1/q).

    Carries the Bernoulli data (Z coefficient, order q, coefficient a) so
    the defining identity x' = -Z x - a x^(q+1) can be checked externally,
    plus the Lienard equation the waveform solves, singularity scanning,
    and closed-form period/regularity metadata where available.
    """

    def __init__(
        self,
        *,
        q: int,
        a_coeff: float,
        num: Callable[[float], float],
        num1: Callable[[float], float],
        num2: Callable[[float], float],
        den: Callable[[float], float],
        den1: Callable[[float], float],
        den2: Callable[[float], float],
        z_coefficient: ZCoefficient,
        equation: Optional[LienardEquation] = None,
        sign: int = 1,
        window: tuple[float, float] = (0.0, 20.0),
        label: str = "",
        params: Optional[dict] = None,
        period: Optional[float] = None,
        regular: Optional[bool] = None,
        pole_solver: Optional[Callable[[float, float], list[float]]] = None,
    ):
        if q < 1:
            raise DomainViolation("q must be a positive integer")
        if sign not in (1, -1):
            raise DomainViolation("sign must be +1 or -1")
        self.q = q
        self.a_coeff = float(a_coeff)
        self._num, self._num1, self._num2 = num, num1, num2
        self._den, self._den1, self._den2 = den, den1, den2
        self.z_coefficient = z_coefficient
        self.equation = equation
        self.sign = sign if q % 2 == 0 else 1
        self.window = (float(window[0]), float(window[1]))
        self.label = label
        self.params = dict(params or {})
        self.period = period
        self.regular = regular
        self._pole_solver = pole_solver

    # -- evaluation --------------------------------------------------------

    def _den_checked(self, t: float) -> float:
        d = self._den(t)
        if self.q % 2 == 0 and d < 0.0:
            d1 = self._den1(t)
            # distinguish a genuine negative radicand from pole proximity
            if d1 == 0.0 or abs(d / d1) >= POLE_GUARD:
                raise EvenRootOfNegative(t)
            raise PoleAt(t)
        d1 = self._den1(t)
        if d == 0.0 or (d1 != 0.0 and abs(d / d1) < POLE_GUARD):
            raise PoleAt(t)
        return d

    def eval(self, t: float) -> float:
        d = self._den_checked(t)
        return self.sign * self._num(t) * _real_root_inv(d, self.q)

    __call__ = eval

    def derivatives(self, t: float) -> tuple[float, float, float]:
        """(x, x', x'') from quotient and chain rules on (num, den)."""
        d = self._den_checked(t)
        d1, d2 = self._den1(t), self._den2(t)
        n, n1, n2 = self._num(t), self._num1(t), self._num2(t)
        rho = _real_root_inv(d, self.q)
        r = d1 / d
        rho1 = -(1.0 / self.q) * rho * r
        rho2 = -(1.0 / self.q) * (rho1 * r + rho * (d2 / d - r * r))
        s = self.sign
        x = s * n * rho
        xd = s * (n1 * rho + n * rho1)
        xdd = s * (n2 * rho + 2.0 * n1 * rho1 + n * rho2)
        return x, xd, xdd

    # -- Bernoulli data ----------------------------------------------------

    def z_eval(self, t: float) -> float:
        return self.z_coefficient.value(t)

    def z_prime(self, t: float) -> float:
        return self.z_coefficient.derivative(t)

    def z_poles(self, lo: float, hi: float) -> list[float]:
        return self.z_coefficient.poles(lo, hi)

    def bernoulli_rhs(self, t: float) -> float:
        """-Z(t) x - a x^(q+1); equals x' wherever Z is finite."""
        x = self.eval(t)
        return -self.z_eval(t) * x - self.a_coeff * x ** (self.q + 1)

    # -- singularity scanning ------------------------------------------------

    def singularities(self, lo: float, hi: float, n: int = 4096) -> list[float]:
        """Real zeros of the denominator in [lo, hi], in ascending order."""
        if hi <= lo:
            return []
        if self._pole_solver is not None:
            return [t for t in self._pole_solver(lo, hi)]
        ts = [lo + (hi - lo) * i / n for i in range(n + 1)]
        vals = [self._den(t) for t in ts]
        scale = max(1.0, max(abs(v) for v in vals))
        roots: list[float] = []
        for i in range(n):
            va, vb = vals[i], vals[i + 1]
            if va == 0.0:
                roots.append(ts[i])
            elif va * vb < 0.0:
                roots.append(_brentq(self._den, ts[i], ts[i + 1], xtol=1e-14, rtol=1e-15))
            elif 0 < i and abs(va) < 1e-9 * scale:
                # tangency: local |den| minimum that reaches (numerical) zero
                if abs(va) <= abs(vals[i - 1]) and abs(va) <= abs(vb):
                    roots.append(ts[i])
        if vals[-1] == 0.0:
            roots.append(ts[-1])
        dedup: list[float] = []
        gap = (hi - lo) / n * 0.5
        for r in roots:
            if not dedup or r - dedup[-1] > gap:
                dedup.append(r)
        return dedup

    def negative_windows(self, lo: float, hi: float, n: int = 4096) -> list[tuple[float, float]]:
        """Intervals of [lo, hi] where the even-root radicand is negative."""
        if self.q % 2 == 1:
            return []
        cuts = [lo] + self.singularities(lo, hi, n) + [hi]
        out = []
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b - a <= 0:
                continue
            mid = 0.5 * (a + b)
            if self._den(mid) < 0.0:
                out.append((a, b))
        return out

    def singular_windows(self, lo: float, hi: float, n: int = 4096) -> SingularWindows:
        return SingularWindows(
            points=tuple(self.singularities(lo, hi, n)),
            intervals=tuple(self.negative_windows(lo, hi, n)),
        )

    def __repr__(self) -> str:
        return f"<ClosedFormWaveform {self.label or 'custom'} q={self.q} {self.params}>"


def waveform_derivatives(w: ClosedFormWaveform, t: float) -> tuple[float, float, float]:
    return w.derivatives(t)


def singularity_windows(w: ClosedFormWaveform, lo: float, hi: float) -> SingularWindows:
    return w.singular_windows(lo, hi)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def general_waveform(
    m: MonomialForm,
    branch: int = 1,
    K: float = 1.0,
    phase: float = 0.0,
    *,
    t_ref: float = 0.0,
    window: Optional[tuple[float, float]] = None,
) -> ClosedFormWaveform:
    """General quadrature solution for a monomial normal form.

        x(t) = [ e^(-q int Z) / (K + q a int e^(-q int Z)) ]^(1/q)

    The inner integral of Z is closed-form per regime; the outer integral
    starts at ``t_ref`` and is evaluated by adaptive quadrature with a
    deterministic cumulative cache. ``phase`` is the kernel phase delta
    (the pole location t0 in the rational regime, where delta = 0).
    """
    q, a = m.q, float(m.a)
    b_half = float(m.b) / 2.0
    delta_disc = float(m.delta)

    if delta_disc == 0.0:
        regime, rate = Regime.RATIONAL, 0.0
        g = lambda t: t - phase
        g1 = lambda t: 1.0
        gpp = 0.0  # g'' = gpp * g
    elif delta_disc > 0.0:
        regime, rate = Regime.HYPERBOLIC, math.sqrt(delta_disc) / 2.0
        g = lambda t: math.cosh(rate * t + phase)
        g1 = lambda t: rate * math.sinh(rate * t + phase)
        gpp = rate * rate
    else:
        regime, rate = Regime.TRIGONOMETRIC, math.sqrt(-delta_disc) / 2.0
        g = lambda t: math.cos(rate * t + phase)
        g1 = lambda t: -rate * math.sin(rate * t + phase)
        gpp = -rate * rate

    def num(t: float) -> float:
        return math.exp(-b_half * t) * g(t)

    def num1(t: float) -> float:
        return math.exp(-b_half * t) * (g1(t) - b_half * g(t))

    def num2(t: float) -> float:
        e = math.exp(-b_half * t)
        return e * ((gpp + b_half * b_half) * g(t) - 2.0 * b_half * g1(t))

    if delta_disc == 0.0:
        # g'' = 0 but the cross term -2 b_half g' survives
        def num2(t: float) -> float:  # noqa: F811
            e = math.exp(-b_half * t)
            return e * (b_half * b_half * g(t) - 2.0 * b_half * g1(t))

    integrand = lambda t: num(t) ** q
    cum = _CumulativeIntegral(integrand, t_ref)
    qa = q * a

    den = lambda t: K + qa * cum.value(t)
    den1 = lambda t: qa * num(t) ** q
    den2 = lambda t: qa * q * num(t) ** (q - 1) * num1(t)

    if window is None:
        if regime is Regime.TRIGONOMETRIC:
            window = (t_ref, t_ref + 6.0 * math.pi / rate)
        else:
            window = (t_ref - 10.0, t_ref + 20.0)

    z = ZCoefficient(regime, b_half, rate, phase)
    return ClosedFormWaveform(
        q=q,
        a_coeff=a,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=z,
        equation=monomial_equation(m.a, m.b, m.c, m.q),
        sign=branch,
        window=window,
        label="general",
        params={"q": q, "a": a, "b": 2 * b_half, "K": K, "phase": phase},
    )


def cubic_waveform(k: float, omega: float, a_const: float, delta: float = 0.0) -> ClosedFormWaveform:
    """x(t) = cos(w t + delta) / (A + (k/w) sin(w t + delta)).

    Regular (pole-free) exactly when A lies outside [-|k|/w, +|k|/w]; the
    period is 2 pi / w, degenerating to the pure cotangent of period
    pi / w at A = 0.
    """
    if omega == 0:
        raise DomainViolation("omega must be nonzero")
    omega = float(omega)
    k = float(k)
    a_const = float(a_const)
    if k == 0.0 and a_const == 0.0:
        raise DomainViolation("k and A cannot both vanish")
    ratio = k / omega

    num = lambda t: math.cos(omega * t + delta)
    num1 = lambda t: -omega * math.sin(omega * t + delta)
    num2 = lambda t: -omega * omega * math.cos(omega * t + delta)
    den = lambda t: a_const + ratio * math.sin(omega * t + delta)
    den1 = lambda t: k * math.cos(omega * t + delta)
    den2 = lambda t: -k * omega * math.sin(omega * t + delta)

    singular = abs(a_const) <= abs(ratio)

    def pole_solver(lo: float, hi: float) -> list[float]:
        if not singular or k == 0.0:
            return []
        beta = math.asin(max(-1.0, min(1.0, -a_const / ratio)))
        out = []
        for base in (beta, math.pi - beta):
            m_lo = math.ceil((omega * lo + delta - base) / (2.0 * math.pi))
            m_hi = math.floor((omega * hi + delta - base) / (2.0 * math.pi))
            out.extend(
                (base + 2.0 * math.pi * mm - delta) / omega for mm in range(m_lo, m_hi + 1)
            )
        return sorted(out)

    period = math.pi / omega if a_const == 0.0 else 2.0 * math.pi / omega
    if k != 0.0:
        eq = cubic_oscillator(k, omega)
    else:
        eq = LienardEquation(
            damping=Polynomial(()), restoring=Polynomial((0, omega * omega))
        )
    return ClosedFormWaveform(
        q=1,
        a_coeff=k,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=ZCoefficient(Regime.TRIGONOMETRIC, 0.0, omega, delta),
        equation=eq,
        window=(0.0, 6.0 * math.pi / omega),
        label="cubic",
        params={"k": k, "omega": omega, "A": a_const, "delta": delta},
        period=period,
        regular=not singular,
        pole_solver=pole_solver,
    )


def _sto_setup(alpha: float, v: float, b: int):
    if b not in (0, 1, 2):
        raise DomainViolation("b must be 0, 1 or 2")
    if alpha <= 0 or v <= 0:
        raise DomainViolation("alpha and v must be positive")
    eps = (1 - b) * math.sqrt(v / alpha)
    ct = math.sqrt(float(sto_ctilde_squared(alpha, v, b)))
    return eps, ct


def sto_waveform(
    alpha: float, v: float, b: int, a_const: float, delta: float = 0.0
) -> ClosedFormWaveform:
    """Traveling waveform of the STO reduction for shift index b in {0,1,2}.

    Built from the monomial-family Bernoulli coefficient
    Z(z) = 3 eps_b / 2 + c_b tan(c_b z + delta) with
    c_b = sqrt(v alpha (3(1-b)^2 + 4)) / (2 alpha); for b = 1 (eps = 0)
    this reduces exactly to the cubic-oscillator waveform with k = 1,
    w = sqrt(v/alpha).
    """
    eps, ct = _sto_setup(alpha, v, b)
    cc = 3.0 * eps * eps + v / alpha  # (3 eps/2)^2 + ct^2
    he = 1.5 * eps
    a_const = float(a_const)

    num = lambda z: math.cos(ct * z + delta)
    num1 = lambda z: -ct * math.sin(ct * z + delta)
    num2 = lambda z: -ct * ct * math.cos(ct * z + delta)

    def den(z: float) -> float:
        th = ct * z + delta
        return a_const * math.exp(he * z) + (ct * math.sin(th) - he * math.cos(th)) / cc

    def den1(z: float) -> float:
        th = ct * z + delta
        return he * a_const * math.exp(he * z) + (
            ct * ct * math.cos(th) + he * ct * math.sin(th)
        ) / cc

    def den2(z: float) -> float:
        th = ct * z + delta
        return he * he * a_const * math.exp(he * z) + (
            -(ct**3) * math.sin(th) + he * ct * ct * math.cos(th)
        ) / cc

    if a_const == 0.0:
        period: Optional[float] = math.pi / ct
    elif b == 1:
        period = 2.0 * math.pi / ct
    else:
        period = None  # exponential term breaks periodicity
    regular: Optional[bool]
    if b == 1:
        regular = abs(a_const) > math.sqrt(alpha / v)
    else:
        regular = None  # decided by scanning
    return ClosedFormWaveform(
        q=1,
        a_coeff=1.0,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=ZCoefficient(Regime.TRIGONOMETRIC, he, ct, delta),
        equation=sto_shifted_equation(alpha, v, eps),
        window=(0.0, 6.0 * math.pi / ct),
        label=f"sto-b{b}",
        params={"alpha": alpha, "v": v, "b": b, "A": a_const, "delta": delta},
        period=period,
        regular=regular,
    )


def sto_printed_waveform(
    alpha: float, v: float, b: int, a_const: float, delta: float = 0.0
) -> ClosedFormWaveform:
    """Comparison candidate: the published per-case STO formulas, verbatim.

    For b = 1 this coincides with :func:`sto_waveform`; for b in {0, 2} the
    two differ (different exponential rate and sine normalization) and the
    ODE-residual check arbitrates which one actually solves the equation.
    """
    eps, ct = _sto_setup(alpha, v, b)
    a_const = float(a_const)
    r = v / alpha

    num = lambda z: math.cos(ct * z + delta)
    num1 = lambda z: -ct * math.sin(ct * z + delta)
    num2 = lambda z: -ct * ct * math.cos(ct * z + delta)

    if b == 1:
        rate = 0.0
        amp = math.sqrt(alpha / v)
        phi = 0.0
    else:
        rate = math.copysign(math.sqrt(7.0 / 4.0) * r, 1 - b)
        amp = 1.0 / math.sqrt(7.0 / 4.0 * (r + 1.0))
        phi = math.copysign(math.atan(math.sqrt(r)), b - 1)

    def den(z: float) -> float:
        return a_const * math.exp(rate * z) + amp * math.sin(ct * z + delta + phi)

    def den1(z: float) -> float:
        return rate * a_const * math.exp(rate * z) + amp * ct * math.cos(ct * z + delta + phi)

    def den2(z: float) -> float:
        return rate * rate * a_const * math.exp(rate * z) - amp * ct * ct * math.sin(
            ct * z + delta + phi
        )

    eq = sto_shifted_equation(alpha, v, eps)
    return ClosedFormWaveform(
        q=1,
        a_coeff=1.0,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=ZCoefficient(Regime.TRIGONOMETRIC, 1.5 * eps, ct, delta),
        equation=eq,
        window=(0.0, 6.0 * math.pi / ct),
        label=f"sto-printed-b{b}",
        params={"alpha": alpha, "v": v, "b": b, "A": a_const, "delta": delta},
    )


def wilson_waveform(
    mu: float, a_const: float, delta: float = 0.0, sign: int = 1
) -> ClosedFormWaveform:
    """x(t) = +-cos(c t + delta) / sqrt(A e^(-mu t) + 1/4
              + (mu/4)^2 cos 2(c t + delta) + (mu c / 8) sin 2(c t + delta))

    with c = sqrt(4 - mu^2)/2, valid for 0 < |mu| < 2. Isochronous exactly
    at A = 0 with period 2 pi / c; negative-radicand windows appear for
    A < 0 and are reported through the singularity metadata.
    """
    if not 0.0 < abs(mu) < 2.0:
        raise DomainViolation("wilson waveform requires 0 < |mu| < 2")
    mu = float(mu)
    a_const = float(a_const)
    ct = math.sqrt(4.0 - mu * mu) / 2.0
    c1 = (mu / 4.0) ** 2
    c2 = mu * ct / 8.0

    num = lambda t: math.cos(ct * t + delta)
    num1 = lambda t: -ct * math.sin(ct * t + delta)
    num2 = lambda t: -ct * ct * math.cos(ct * t + delta)

    def den(t: float) -> float:
        th2 = 2.0 * (ct * t + delta)
        return a_const * math.exp(-mu * t) + 0.25 + c1 * math.cos(th2) + c2 * math.sin(th2)

    def den1(t: float) -> float:
        th2 = 2.0 * (ct * t + delta)
        return (
            -mu * a_const * math.exp(-mu * t)
            - 2.0 * ct * c1 * math.sin(th2)
            + 2.0 * ct * c2 * math.cos(th2)
        )

    def den2(t: float) -> float:
        th2 = 2.0 * (ct * t + delta)
        return (
            mu * mu * a_const * math.exp(-mu * t)
            - 4.0 * ct * ct * c1 * math.cos(th2)
            - 4.0 * ct * ct * c2 * math.sin(th2)
        )

    period = 2.0 * math.pi / ct if a_const == 0.0 else None
    return ClosedFormWaveform(
        q=2,
        a_coeff=mu / 4.0,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=ZCoefficient(Regime.TRIGONOMETRIC, -mu / 2.0, ct, delta),
        equation=wilson_equation(mu),
        sign=sign,
        window=(0.0, 6.0 * math.pi / ct),
        label="wilson",
        params={"mu": mu, "A": a_const, "delta": delta},
        period=period,
        regular=(a_const >= 0.0) if mu > 0 else None,
    )


def sundman_waveform_q1(a: float, c1: float, delta: float = 0.0) -> ClosedFormWaveform:
    """Kink solution of x'' + (3a x + 1) x' + a^2 x^3 + a x^2 + (2/9) x = 0:

        x(t) = e^(-t/2) cosh(t/6 + delta)
               / (c1 - (3a/4) e^(-t/2) [sinh(t/6+delta) + 3 cosh(t/6+delta)])

    Regular exactly when a and c1 have opposite signs.
    """
    if a == 0 or c1 == 0 or a * c1 > 0:
        raise DomainViolation("q = 1 kink requires a and c1 nonzero with opposite signs")
    a, c1 = float(a), float(c1)

    def num(t: float) -> float:
        return math.exp(-t / 2.0) * math.cosh(t / 6.0 + delta)

    def num1(t: float) -> float:
        u = t / 6.0 + delta
        return math.exp(-t / 2.0) * (-0.5 * math.cosh(u) + math.sinh(u) / 6.0)

    def num2(t: float) -> float:
        u = t / 6.0 + delta
        return math.exp(-t / 2.0) * (5.0 / 18.0 * math.cosh(u) - math.sinh(u) / 6.0)

    def den(t: float) -> float:
        u = t / 6.0 + delta
        return c1 - 0.75 * a * math.exp(-t / 2.0) * (math.sinh(u) + 3.0 * math.cosh(u))

    den1 = lambda t: a * num(t)
    den2 = lambda t: a * num1(t)

    eq = monomial_equation(a, 1, Fraction(2, 9), 1)
    return ClosedFormWaveform(
        q=1,
        a_coeff=a,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=ZCoefficient(Regime.HYPERBOLIC, 0.5, 1.0 / 6.0, delta),
        equation=eq,
        window=(-15.0, 25.0),
        label="sundman-q1",
        params={"a": a, "c1": c1, "delta": delta},
        regular=True,
    )


def sundman_waveform_q2(a: float, c1: float, delta: float = 0.0) -> ClosedFormWaveform:
    """Real kink solution of x'' + (4a x^2 + 1) x' + a^2 x^5 + a x^3 + (3/16) x = 0
    for a < 0, c1 > 0:

        x(t) = e^(-t/2) cosh(t/4 + delta) / sqrt(c1 - a [e^(-t)
               + e^(2 delta) e^(-t/2) + (1/3) e^(-2 delta) e^(-3t/2)])

    The published closed form carries a sign slip in its inner exponential;
    this denominator is the one that actually satisfies the equation (it
    matches the published expression at delta = 0 once the inner
    exponential sign is flipped, up to the constant shift c1 -> c1 - a/3).
    """
    if not (a < 0 < c1):
        raise DomainViolation("q = 2 kink requires a < 0 and c1 > 0")
    a, c1 = float(a), float(c1)
    w2, w1, w0 = math.exp(2.0 * delta), 1.0, math.exp(-2.0 * delta) / 3.0

    def num(t: float) -> float:
        return math.exp(-t / 2.0) * math.cosh(t / 4.0 + delta)

    def num1(t: float) -> float:
        u = t / 4.0 + delta
        return math.exp(-t / 2.0) * (-0.5 * math.cosh(u) + 0.25 * math.sinh(u))

    def num2(t: float) -> float:
        u = t / 4.0 + delta
        return math.exp(-t / 2.0) * (5.0 / 16.0 * math.cosh(u) - 0.25 * math.sinh(u))

    def den(t: float) -> float:
        return c1 - a * (
            w1 * math.exp(-t) + w2 * math.exp(-t / 2.0) + w0 * math.exp(-1.5 * t)
        )

    den1 = lambda t: 2.0 * a * num(t) ** 2
    den2 = lambda t: 4.0 * a * num(t) * num1(t)

    eq = monomial_equation(a, 1, Fraction(3, 16), 2)
    return ClosedFormWaveform(
        q=2,
        a_coeff=a,
        num=num,
        num1=num1,
        num2=num2,
        den=den,
        den1=den1,
        den2=den2,
        z_coefficient=ZCoefficient(Regime.HYPERBOLIC, 0.5, 0.25, delta),
        equation=eq,
        window=(-15.0, 25.0),
        label="sundman-q2",
        params={"a": a, "c1": c1, "delta": delta},
        regular=True,
    )
