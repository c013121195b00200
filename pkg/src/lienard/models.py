"""Named Lienard equations, the STO traveling-frame reduction, and
linearizability checks.

The monomial family

    x'' + [(q+2) a x^q + b] x' + a x^(q+1) (a x^q + b) + c x = 0

covers every model here: the cubic anharmonic oscillator (a=k, b=0,
c=omega^2, q=1), the shifted STO reduction (a=1, b=3*eps,
c=3*eps^2 + v/alpha, q=1) and Wilson's cubic-quintic equation
(a=mu/4, b=-mu, c=1, q=2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exceptions import DomainViolation
from .factorize import (
    CommutativeFactorization,
    LienardEquation,
    commutative_factorize,
)
from .polyalg import Polynomial, as_fraction


def monomial_equation(a, b, c, q: int) -> LienardEquation:
    """Build the monomial-family equation; always commutatively factorable."""
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if a == 0:
        raise DomainViolation("a must be nonzero")
    if q < 1:
        raise DomainViolation("q must be a positive integer")
    damping = Polynomial.monomial(q, (q + 2) * a) + Polynomial((b,))
    inner = Polynomial.monomial(q, a) + Polynomial((b,))
    restoring = (Polynomial.monomial(q + 1, a) * inner) + Polynomial((0, c))
    return LienardEquation(damping=damping, restoring=restoring)


def cubic_oscillator(k, omega) -> LienardEquation:
    """x'' + 3k x x' + k^2 x^3 + omega^2 x = 0."""
    k = as_fraction(k)
    if k == 0:
        raise DomainViolation("k must be nonzero (k = 0 is the harmonic limit)")
    w = as_fraction(omega)
    return monomial_equation(k, 0, w * w, 1)


def wilson_equation(mu) -> LienardEquation:
    """x'' + mu (x^2 - 1) x' + (mu^2/16) x^3 (x^2 - 4) + x = 0."""
    mu = as_fraction(mu)
    if mu == 0:
        raise DomainViolation("mu must be nonzero")
    return monomial_equation(mu / 4, -mu, 1, 2)


# ---------------------------------------------------------------------------
# Depressed cubic
# ---------------------------------------------------------------------------


def depressed_cubic_roots(p: float, q: float) -> list[float]:
    """Real roots of e^3 + p e + q = 0, polished by one Newton step.

    Uses the trigonometric method when all three roots are real
    (discriminant <= 0) and Cardano's formula otherwise.
    """
    disc = q * q / 4.0 + p * p * p / 27.0
    if p == 0.0 and q == 0.0:
        return [0.0]
    if disc > 0.0:
        s = math.sqrt(disc)
        u = math.copysign(abs(-q / 2.0 + s) ** (1.0 / 3.0), -q / 2.0 + s)
        vv = math.copysign(abs(-q / 2.0 - s) ** (1.0 / 3.0), -q / 2.0 - s)
        roots = [u + vv]
    elif disc == 0.0:
        r = 3.0 * q / p
        roots = [r, -r / 2.0]
    else:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]

    def polish(e: float) -> float:
        for _ in range(2):
            f = e * e * e + p * e + q
            fp = 3.0 * e * e + p
            if fp == 0.0:
                break
            e -= f / fp
        return e

    return sorted(polish(e) for e in roots)


# ---------------------------------------------------------------------------
# Sharma-Tasso-Olver traveling-frame reduction
# ---------------------------------------------------------------------------


def sto_shifted_equation(alpha, v, epsilon) -> LienardEquation:
    """Shifted traveling-frame equation for shift root eps:

    U'' + 3(eps + U) U' + U^3 + 3 eps U^2 + (3 eps^2 + v/alpha) U = 0.

    Coefficients are exact rationals of the inputs, so the equation
    factorizes exactly whatever eps is (the shift cubic only matters for
    relating the result back to the unshifted frame).
    """
    eps = as_fraction(epsilon)
    a, vv = as_fraction(alpha), as_fraction(v)
    if a == 0:
        raise DomainViolation("alpha must be nonzero")
    return monomial_equation(1, 3 * eps, 3 * eps * eps + vv / a, 1)


def sto_ctilde_squared(alpha, v, b: int) -> Fraction:
    """(3 (1-b)^2 + 4) v / (4 alpha), the squared oscillation rate."""
    a, vv = as_fraction(alpha), as_fraction(v)
    return (3 * (1 - b) ** 2 + 4) * vv / (4 * a)


def sto_special_I(alpha: float, v: float, b: int) -> float:
    """Integration constant making eps = (1-b) sqrt(v/alpha) a shift root."""
    if b not in (0, 1, 2):
        raise DomainViolation("b must be 0, 1 or 2")
    if alpha <= 0 or v <= 0:
        raise DomainViolation("alpha and v must be positive")
    return -2.0 * alpha * ((1 - b) * math.sqrt(v / alpha)) ** 3


@dataclass(frozen=True)
class StoBranch:
    """One real shift root with its Lienard equation and factorization."""

    epsilon: float
    equation: LienardEquation
    factorization: CommutativeFactorization


@dataclass(frozen=True)
class StoReduction:
    """Traveling-frame reduction of the STO evolution equation.

    ``discriminant3 = (I/alpha)^2 + (4/27)(v/alpha)^3``; all three shift
    roots are real iff it is <= 0, exactly one otherwise. Each real root
    gets its own shifted equation and factorization.
    """

    alpha: float
    v: float
    integration_constant: float
    discriminant3: float
    branches: tuple[StoBranch, ...]

    @property
    def epsilons(self) -> tuple[float, ...]:
        return tuple(br.epsilon for br in self.branches)


def sto_reduce(alpha: float, v: float, integration_constant: float) -> StoReduction:
    """Reduce the STO equation at wave speed v: solve the shift cubic and
    build the per-root equations with their factorizations."""
    if alpha == 0:
        raise DomainViolation("alpha must be nonzero")
    p = v / alpha
    q = integration_constant / alpha
    disc = q * q + (4.0 / 27.0) * p * p * p
    branches = []
    for eps in depressed_cubic_roots(p, q):
        eq = sto_shifted_equation(alpha, v, eps)
        branches.append(
            StoBranch(epsilon=eps, equation=eq, factorization=commutative_factorize(eq))
        )
    return StoReduction(
        alpha=alpha,
        v=v,
        integration_constant=integration_constant,
        discriminant3=disc,
        branches=tuple(branches),
    )


# ---------------------------------------------------------------------------
# Linearizability conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChielliniResult:
    sigma_sq: Fraction
    kappa: Fraction


def chiellini_check(eq: LienardEquation) -> Optional[ChielliniResult]:
    """Rational (sigma^2, kappa) making F sigma^2 = G (int G + kappa) exact.

    Writing u = sigma^-2 and w = u*kappa, the identity is linear:
    F = u * (G * int G) + w * G. For nonzero G the two column polynomials
    have different degrees, so the system has a unique candidate solution;
    it is solved by Cramer's rule on two independent coefficient rows and
    then re-verified against every row. Returns None when inconsistent.
    """
    g, f = eq.damping, eq.restoring
    if g.is_zero():
        return None  # G = 0 forces F = 0; nothing to report
    int_g = Polynomial([Fraction(0)] + [c / (k + 1) for k, c in enumerate(g.coeffs)])
    col1 = g * int_g
    col2 = g
    n = max(col1.degree, col2.degree, f.degree) + 1
    rows = [
        (col1.coefficient(k), col2.coefficient(k), f.coefficient(k))
        for k in range(n)
    ]
    solution = None
    for i in range(n):
        for j in range(i + 1, n):
            a1, b1, r1 = rows[i]
            a2, b2, r2 = rows[j]
            det = a1 * b2 - a2 * b1
            if det != 0:
                u = (r1 * b2 - r2 * b1) / det
                w = (a1 * r2 - a2 * r1) / det
                solution = (u, w)
                break
        if solution:
            break
    if solution is None:
        return None
    u, w = solution
    if u == 0:
        return None  # sigma would be infinite
    if any(a * u + b * w != r for a, b, r in rows):
        return None
    return ChielliniResult(sigma_sq=1 / u, kappa=w / u)


@dataclass(frozen=True)
class SundmanResult:
    case: str  # "B0" (b = 0, q = 1) or "kappa0" (kappa = 0)
    sigma_sq: Fraction
    kappa: Fraction


def _sundman_identity_holds(a, b, c, q, sigma_sq, kappa) -> bool:
    """Exact polynomial check of
    a x^(q+1)(a x^q + b) + c x =
        sigma^-2 [(q+2) a x^q + b][(q+2)/(q+1) a x^(q+1) + b x + kappa].
    """
    lhs = (Polynomial.monomial(q + 1, a) * (Polynomial.monomial(q, a) + Polynomial((b,)))
           + Polynomial((0, c)))
    left_factor = Polynomial.monomial(q, (q + 2) * a) + Polynomial((b,))
    right_factor = (
        Polynomial.monomial(q + 1, Fraction(q + 2, q + 1) * a)
        + Polynomial((kappa, b))
    )
    rhs = (left_factor * right_factor).scale(1 / sigma_sq)
    return lhs == rhs


def sundman_check(a, b, c, q: int) -> Optional[SundmanResult]:
    """Test the two solvable nonlocal-linearization cases of the monomial
    family and certify the winner as an exact polynomial identity.

    Case "B0":     b = 0 and q = 1  ->  sigma^2 = 9/2, kappa = 3c/(2a).
    Case "kappa0": b = 1 and c = (q+1)/(q+2)^2
                                    ->  sigma^2 = (q+2)^2/(q+1), kappa = 0.
    """
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    if a == 0 or q < 1:
        return None
    if b == 0 and q == 1:
        sigma_sq = Fraction(9, 2)
        kappa = 3 * c / (2 * a)
        if _sundman_identity_holds(a, b, c, q, sigma_sq, kappa):
            return SundmanResult(case="B0", sigma_sq=sigma_sq, kappa=kappa)
    if b == 1 and c == Fraction(q + 1, (q + 2) ** 2):
        sigma_sq = Fraction((q + 2) ** 2, q + 1)
        if _sundman_identity_holds(a, b, c, q, sigma_sq, Fraction(0)):
            return SundmanResult(case="kappa0", sigma_sq=sigma_sq, kappa=Fraction(0))
    return None


@dataclass(frozen=True)
class LinearizabilityReport:
    chiellini: Optional[ChielliniResult]
    sundman: Optional[SundmanResult]


def linearizability(eq: LienardEquation) -> LinearizabilityReport:
    """Run both linearizability checks on a factorable equation."""
    chiellini = chiellini_check(eq)
    sundman = None
    try:
        fact = commutative_factorize(eq)
        if fact.monomial is not None:
            m = fact.monomial
            sundman = sundman_check(m.a, m.b, m.c, m.q)
    except Exception:
        pass
    return LinearizabilityReport(chiellini=chiellini, sundman=sundman)


# ---------------------------------------------------------------------------
# Wilson limit cycle
# ---------------------------------------------------------------------------


def wilson_limit_cycle_residual(mu: float, x: float, y: float) -> float:
    """Value of the hyperelliptic limit-cycle curve at phase point (x, y):

        y^2 + (mu/2) x (x^2-4) y + (x^2-4) [(mu^2/16) x^2 (x^2-4) + 1]

    Zero exactly on the cycle (which exists for 0 < |mu| < 2).
    """
    if not 0 < abs(mu) < 2:
        raise DomainViolation("the algebraic limit cycle requires 0 < |mu| < 2")
    s = x * x - 4.0
    return y * y + 0.5 * mu * x * s * y + s * (mu * mu / 16.0 * x * x * s + 1.0)
