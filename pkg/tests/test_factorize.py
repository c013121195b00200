"""Commutative factorization: exactness, classification, round trips."""

import random
from fractions import Fraction as Fr

import pytest

from lienard.exceptions import (
    InvalidEquation,
    NotCommutativelyFactorable,
    NotMonomial,
)
from lienard.factorize import (
    CommutativeFactorization,
    LienardEquation,
    Regime,
    commutative_factorize,
    equation_from_symmetric_part,
    symmetric_part,
    to_monomial_form,
    verify_factorization_identity,
)
from lienard.models import cubic_oscillator, sto_shifted_equation, wilson_equation
from lienard.polyalg import Polynomial


def rand_poly(rng, max_deg=4, span=5):
    return Polynomial(
        Fr(rng.randint(-span, span), rng.randint(1, span))
        for _ in range(rng.randint(0, max_deg + 1))
    )


class TestSymmetricPart:
    def test_cubic_damping(self):
        k = Fr(7, 3)
        assert symmetric_part(Polynomial([0, 3 * k])) == Polynomial([0, -k])

    def test_wilson_damping(self):
        # G = mu (x^2 - 1)  ->  p = -(mu/2)(x^2/2 - 1)
        mu = Fr(1)
        g = Polynomial([-mu, 0, mu])
        assert symmetric_part(g) == Polynomial([mu / 2, 0, -mu / 4])

    def test_sto_damping(self):
        # G = 3(eps + U)  ->  p = -U - 3 eps / 2
        eps = Fr(2, 5)
        g = Polynomial([3 * eps, 3])
        assert symmetric_part(g) == Polynomial([-3 * eps / 2, -1])

    def test_zero(self):
        assert symmetric_part(Polynomial([])) == Polynomial([])

    def test_defining_identity(self):
        rng = random.Random(11)
        for _ in range(100):
            g = rand_poly(rng)
            p = symmetric_part(g)
            assert p.derivative().shift_up() + p.scale(2) == -g

    def test_linearity(self):
        rng = random.Random(12)
        for _ in range(50):
            g1, g2 = rand_poly(rng), rand_poly(rng)
            a, b = Fr(rng.randint(-4, 4)), Fr(rng.randint(-4, 4))
            lhs = symmetric_part(g1.scale(a) + g2.scale(b))
            rhs = symmetric_part(g1).scale(a) + symmetric_part(g2).scale(b)
            assert lhs == rhs


class TestCommutativeFactorize:
    def test_cubic_oscillator(self):
        k, w = Fr(2), Fr(3)
        fact = commutative_factorize(cubic_oscillator(k, w))
        assert fact.symmetric_part == Polynomial([0, -k])
        assert fact.c_squared == -(w * w)
        assert fact.regime is Regime.TRIGONOMETRIC
        assert fact.c_tilde == 3.0

    def test_wilson(self):
        fact = commutative_factorize(wilson_equation(1))
        assert fact.symmetric_part == Polynomial([Fr(1, 2), 0, Fr(-1, 4)])
        assert fact.c_squared == Fr(1, 4) - 1  # mu^2/4 - 1
        assert fact.regime is Regime.TRIGONOMETRIC

    def test_sto_shifted(self):
        fact = commutative_factorize(sto_shifted_equation(1, 1, 1))
        assert fact.symmetric_part == Polynomial([Fr(-3, 2), -1])
        assert fact.c_squared == -Fr(7, 4)  # -(3 eps^2/4 + v/alpha)

    def test_rational_regime(self):
        # omega = 0 degenerates the cubic oscillator to c^2 = 0
        eq = cubic_oscillator(Fr(3), 0)
        fact = commutative_factorize(eq)
        assert fact.c_squared == 0
        assert fact.regime is Regime.RATIONAL

    def test_hyperbolic_regime(self):
        eq = equation_from_symmetric_part(Polynomial([0, -1]), Fr(-1))
        fact = commutative_factorize(eq)
        assert fact.c_squared == 1
        assert fact.regime is Regime.HYPERBOLIC

    def test_not_factorable_carries_residual(self):
        eq = LienardEquation(Polynomial([0, 0, 1]), Polynomial([0, 0, 0, 1]))
        with pytest.raises(NotCommutativelyFactorable) as exc:
            commutative_factorize(eq)
        # p = -x^2/4, so p^2 - F/x = x^4/16 - x^2
        assert exc.value.residual == Polynomial([0, 0, -1, 0, Fr(1, 16)])

    def test_invalid_equation(self):
        eq = LienardEquation(Polynomial([]), Polynomial([1]))
        with pytest.raises(InvalidEquation):
            commutative_factorize(eq)

    def test_regime_trichotomy(self):
        rng = random.Random(13)
        for _ in range(100):
            p = rand_poly(rng)
            c2 = Fr(rng.randint(-6, 6), rng.randint(1, 4))
            fact = commutative_factorize(equation_from_symmetric_part(p, c2))
            expected = (
                Regime.RATIONAL
                if c2 == 0
                else (Regime.TRIGONOMETRIC if c2 > 0 else Regime.HYPERBOLIC)
            )
            assert fact.regime is expected


class TestMonomialForm:
    def test_cubic(self):
        k, w = Fr(5, 2), Fr(3)
        m = to_monomial_form(commutative_factorize(cubic_oscillator(k, w)))
        assert (m.q, m.a, m.b, m.c) == (1, k, 0, w * w)
        assert m.delta == -4 * w * w

    def test_wilson(self):
        m = to_monomial_form(commutative_factorize(wilson_equation(1)))
        assert (m.q, m.a, m.b, m.c) == (2, Fr(1, 4), -1, 1)
        assert m.delta == 1 - 4

    def test_two_nonconstant_terms(self):
        p = Polynomial([0, 1, 1])  # x + x^2
        eq = equation_from_symmetric_part(p, Fr(1))
        fact = commutative_factorize(eq)
        assert fact.monomial is None
        with pytest.raises(NotMonomial):
            to_monomial_form(fact)

    def test_constant_p_rejected(self):
        # purely constant symmetric part is the linear (harmonic) limit
        eq = equation_from_symmetric_part(Polynomial([Fr(1, 2)]), Fr(1))
        fact = commutative_factorize(eq)
        with pytest.raises(NotMonomial):
            to_monomial_form(fact)


class TestIdentityChecker:
    def test_true_on_produced(self):
        for eq in (
            cubic_oscillator(2, 3),
            wilson_equation(1),
            sto_shifted_equation(1, 1, -1),
        ):
            fact = commutative_factorize(eq)
            assert verify_factorization_identity(eq, fact)

    def test_false_on_perturbed_c_squared(self):
        eq = cubic_oscillator(2, 3)
        fact = commutative_factorize(eq)
        bad = CommutativeFactorization(
            symmetric_part=fact.symmetric_part,
            c_squared=fact.c_squared + 1,
            regime=fact.regime,
        )
        assert not verify_factorization_identity(eq, bad)

    def test_false_on_any_p_perturbation(self):
        eq = wilson_equation(1)
        fact = commutative_factorize(eq)
        p = fact.symmetric_part
        for k in range(p.degree + 1):
            coeffs = list(p.coeffs)
            coeffs[k] += Fr(1, 100)
            bad = CommutativeFactorization(
                symmetric_part=Polynomial(coeffs),
                c_squared=fact.c_squared,
                regime=fact.regime,
            )
            assert not verify_factorization_identity(eq, bad)


class TestEquationFromSymmetricPart:
    def test_recovers_cubic(self):
        k, w = Fr(2), Fr(3)
        eq = equation_from_symmetric_part(Polynomial([0, -k]), w * w)
        assert eq == cubic_oscillator(k, w)

    def test_harmonic_limit(self):
        w2 = Fr(9)
        eq = equation_from_symmetric_part(Polynomial([]), w2)
        assert eq.damping == Polynomial([])
        assert eq.restoring == Polynomial([0, w2])

    def test_recovers_wilson(self):
        mu = Fr(1)
        p = Polynomial([mu / 2, 0, -mu / 4])  # -(mu/2)(x^2/2 - 1)
        eq = equation_from_symmetric_part(p, 1 - mu * mu / 4)
        assert eq == wilson_equation(mu)

    def test_round_trip_random(self):
        rng = random.Random(20250810)
        for _ in range(200):
            p = rand_poly(rng, max_deg=4)
            c2 = Fr(rng.randint(-8, 8), rng.randint(1, 5))
            eq = equation_from_symmetric_part(p, c2)
            fact = commutative_factorize(eq)
            assert fact.symmetric_part == p
            assert fact.c_squared == -c2
            assert verify_factorization_identity(eq, fact)
