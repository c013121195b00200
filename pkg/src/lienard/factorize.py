"""Commutative factorization of polynomial Lienard equations.

An equation x'' + G(x) x' + F(x) = 0 with F(0) = 0 factors commutatively,
[D - phi2][D - phi1] x = 0 with phi2 - phi1 constant, exactly when

    p(x)^2 - F(x)/x  is a constant c^2,

where p is the unique polynomial solving x p' + 2p = -G (the shared
symmetric part, phi_{1,2} = p +- c). The sign of c^2 fixes the time-kernel
regime: c^2 = 0 rational, c^2 > 0 hyperbolic, c^2 < 0 trigonometric (the
oscillatory case, c = i*c_tilde with c_tilde = sqrt(-c^2)).

All decisions in this module are made in exact rational arithmetic; a
floating-point constancy test would misclassify near-factorable equations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exceptions import InvalidEquation, NotCommutativelyFactorable, NotMonomial
from .polyalg import Polynomial, as_fraction


class Regime(enum.Enum):
    """Which closed-form time kernel the factorization induces."""

    RATIONAL = "rational"
    HYPERBOLIC = "hyperbolic"
    TRIGONOMETRIC = "trigonometric"


@dataclass(frozen=True)
class LienardEquation:
    """The pair (G, F) of x'' + G(x) x' + F(x) = 0."""

    damping: Polynomial  # G
    restoring: Polynomial  # F

    def rhs_floats(self):
        """(G, F) as float-coefficient tuples for numeric integration."""
        return self.damping.as_float_coeffs(), self.restoring.as_float_coeffs()

    def __str__(self) -> str:
        return f"x'' + ({self.damping}) x' + ({self.restoring}) = 0"


@dataclass(frozen=True)
class MonomialForm:
    """Normal form when the symmetric part is a monomial plus a constant.

    p(x) = -(a x^q + b/2), the damping is (q+2) a x^q + b, the restoring
    term is a x^(q+1) (a x^q + b) + c x, and delta = b^2 - 4c = 4 c^2.
    """

    q: int
    a: Fraction
    b: Fraction
    c: Fraction
    delta: Fraction

    def __post_init__(self):
        if self.q < 1:
            raise NotMonomial("q must be a positive integer")
        if self.a == 0:
            raise NotMonomial("leading coefficient a must be nonzero")
        if self.delta != self.b * self.b - 4 * self.c:
            raise ValueError("delta is not b^2 - 4c")


@dataclass(frozen=True)
class CommutativeFactorization:
    """Result of a successful commutative factorization.

    ``symmetric_part`` is p with phi_{1,2} = p +- c and c^2 = ``c_squared``
    (negative in the trigonometric regime). ``monomial`` is filled when p
    has exactly one nonconstant term.
    """

    symmetric_part: Polynomial
    c_squared: Fraction
    regime: Regime
    monomial: Optional[MonomialForm] = None

    @property
    def c_tilde(self) -> float:
        """sqrt(-c^2) in the trigonometric regime."""
        if self.regime is not Regime.TRIGONOMETRIC:
            raise ValueError("c_tilde is defined only in the trigonometric regime")
        return float(-self.c_squared) ** 0.5


def symmetric_part(damping: Polynomial) -> Polynomial:
    """The unique polynomial p with x p' + 2p = -G.

    Coefficient-wise, p_k = -g_k / (k + 2); the rule is total and linear.
    """
    return Polynomial(-c / (k + 2) for k, c in enumerate(damping.coeffs))


def _classify(c_squared: Fraction) -> Regime:
    if c_squared == 0:
        return Regime.RATIONAL
    return Regime.HYPERBOLIC if c_squared > 0 else Regime.TRIGONOMETRIC


def _monomial_form_of(p: Polynomial, c_squared: Fraction) -> MonomialForm:
    terms = p.nonconstant_terms()
    if len(terms) != 1:
        raise NotMonomial(
            f"symmetric part {p} has {len(terms)} nonconstant terms; need exactly 1"
        )
    q, lead = terms[0]
    a = -lead
    b = -2 * p.coefficient(0)
    c = b * b / 4 - c_squared  # equals the constant term of F/x
    return MonomialForm(q=q, a=a, b=b, c=c, delta=4 * c_squared)


def commutative_factorize(eq: LienardEquation) -> CommutativeFactorization:
    """Factor the equation, or raise if no commutative factorization exists.

    Raises InvalidEquation when F(0) != 0 and NotCommutativelyFactorable
    (carrying the residual p^2 - F/x) when that residual is nonconstant.
    """
    if eq.restoring.coefficient(0) != 0:
        raise InvalidEquation(
            f"restoring term has F(0) = {eq.restoring.coefficient(0)} != 0"
        )
    p = symmetric_part(eq.damping)
    residual = p * p - eq.restoring.div_x()
    c_squared = residual.constant_value()
    if c_squared is None:
        raise NotCommutativelyFactorable(residual)
    try:
        monomial = _monomial_form_of(p, c_squared)
    except NotMonomial:
        monomial = None
    return CommutativeFactorization(
        symmetric_part=p,
        c_squared=c_squared,
        regime=_classify(c_squared),
        monomial=monomial,
    )


def to_monomial_form(fact: CommutativeFactorization) -> MonomialForm:
    """Extract the monomial normal form, or raise NotMonomial."""
    if fact.monomial is None:
        return _monomial_form_of(fact.symmetric_part, fact.c_squared)  # raises
    return fact.monomial


def verify_factorization_identity(
    eq: LienardEquation, fact: CommutativeFactorization
) -> bool:
    """Exact check of the three commutative factorization conditions.

    With phi1 = p + c and phi2 = p - c and c^2 treated as the rational
    ``c_squared``, the conditions reduce to

        2p + x p' = -G          (twice: the c-terms cancel identically)
        p^2 - c^2 = F/x

    Both are checked as exact polynomial equalities.
    """
    p = fact.symmetric_part
    lhs = p.scale(2) + p.derivative().shift_up()
    if lhs != -eq.damping:
        return False
    if eq.restoring.coefficient(0) != 0:
        return False
    product = p * p - Polynomial((fact.c_squared,))
    return product == eq.restoring.div_x()


def equation_from_symmetric_part(p: Polynomial, c_squared) -> LienardEquation:
    """Build x'' - (x p' + 2p) x' + (p^2 + c^2) x = 0.

    The ``c_squared`` argument is the constant added inside the restoring
    term; factorizing the result recovers symmetric part p and internal
    constant -c_squared (the factor pair is p -+ i*c for c_squared > 0).
    """
    c2 = as_fraction(c_squared)
    damping = -(p.derivative().shift_up() + p.scale(2))
    restoring = (p * p + Polynomial((c2,))).shift_up()
    return LienardEquation(damping=damping, restoring=restoring)
