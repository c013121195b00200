"""Named equations, STO reduction, linearizability checks."""

import math
import random
from fractions import Fraction as Fr

import pytest

from lienard.exceptions import DomainViolation
from lienard.factorize import Regime, commutative_factorize
from lienard.models import (
    chiellini_check,
    cubic_oscillator,
    depressed_cubic_roots,
    monomial_equation,
    sto_ctilde_squared,
    sto_reduce,
    sto_shifted_equation,
    sto_special_I,
    sundman_check,
    wilson_equation,
    wilson_limit_cycle_residual,
)
from lienard.polyalg import Polynomial


class TestMonomialEquation:
    def test_cubic_map(self):
        assert monomial_equation(Fr(2), 0, 9, 1) == cubic_oscillator(2, 3)

    def test_wilson_map(self):
        eq = monomial_equation(Fr(1, 4), -1, 1, 2)
        assert eq == wilson_equation(1)
        # x'' + (x^2-1) x' + (1/16) x^3 (x^2-4) + x = 0
        assert eq.damping == Polynomial([-1, 0, 1])
        assert eq.restoring == Polynomial([0, 1, 0, Fr(-1, 4), 0, Fr(1, 16)])

    def test_kink_family_member(self):
        eq = monomial_equation(1, 1, Fr(2, 9), 1)
        assert eq.damping == Polynomial([1, 3])
        assert eq.restoring == Polynomial([0, Fr(2, 9), 1, 1])

    def test_always_factorable_with_delta(self):
        rng = random.Random(5)
        for _ in range(100):
            a = Fr(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
            b = Fr(rng.randint(-4, 4), rng.randint(1, 3))
            c = Fr(rng.randint(-4, 4), rng.randint(1, 3))
            q = rng.randint(1, 4)
            fact = commutative_factorize(monomial_equation(a, b, c, q))
            assert 4 * fact.c_squared == b * b - 4 * c
            m = fact.monomial
            assert m is not None and (m.q, m.a, m.b, m.c) == (q, a, b, c)

    def test_guards(self):
        with pytest.raises(DomainViolation):
            monomial_equation(0, 1, 1, 1)
        with pytest.raises(DomainViolation):
            monomial_equation(1, 1, 1, 0)


class TestNamedEquations:
    def test_cubic_coeffs(self):
        eq = cubic_oscillator(2, 3)
        assert eq.damping == Polynomial([0, 6])
        assert eq.restoring == Polynomial([0, 9, 0, 4])

    def test_wilson_zero_mu_rejected(self):
        with pytest.raises(DomainViolation):
            wilson_equation(0)

    def test_cubic_zero_k_rejected(self):
        with pytest.raises(DomainViolation):
            cubic_oscillator(0, 3)


class TestDepressedCubic:
    def test_single_real_root_origin(self):
        roots = depressed_cubic_roots(1.0, 0.0)  # e^3 + e = 0
        assert roots == [0.0]

    def test_single_real_root(self):
        (root,) = depressed_cubic_roots(1.0, -2.0)  # e^3 + e - 2 = 0
        assert root == pytest.approx(1.0, abs=1e-14)

    def test_three_real_roots(self):
        roots = depressed_cubic_roots(-3.0, 0.0)  # e^3 - 3e = 0
        assert roots == pytest.approx([-math.sqrt(3), 0.0, math.sqrt(3)], abs=1e-13)

    def test_residuals_random(self):
        rng = random.Random(17)
        for _ in range(500):
            p = rng.uniform(-5, 5)
            q = rng.uniform(-5, 5)
            roots = depressed_cubic_roots(p, q)
            disc = q * q / 4 + p**3 / 27
            assert len(roots) == (1 if disc > 0 else (2 if disc == 0 else 3))
            scale = max(1.0, abs(p), abs(q))
            for e in roots:
                assert abs(e**3 + p * e + q) <= 1e-12 * scale * max(1.0, abs(e) ** 3)


class TestStoReduction:
    def test_zero_integration_constant(self):
        red = sto_reduce(1.0, 1.0, 0.0)
        assert red.epsilons == (0.0,)
        assert red.discriminant3 > 0
        fact = red.branches[0].factorization
        assert fact.c_squared == -1  # c_tilde = 1
        assert fact.regime is Regime.TRIGONOMETRIC

    @pytest.mark.parametrize("b,expected", [(0, -2.0), (1, 0.0), (2, 2.0)])
    def test_special_I(self, b, expected):
        assert sto_special_I(1.0, 1.0, b) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("b", [0, 1, 2])
    def test_special_roots(self, b):
        alpha, v = 0.7, 1.3
        red = sto_reduce(alpha, v, sto_special_I(alpha, v, b))
        eps_b = (1 - b) * math.sqrt(v / alpha)
        assert any(abs(e - eps_b) < 1e-12 * max(1, abs(eps_b)) for e in red.epsilons)
        for br in red.branches:
            ct2 = 0.75 * br.epsilon**2 + v / alpha
            assert float(-br.factorization.c_squared) == pytest.approx(ct2, rel=1e-12)

    def test_ctilde_squared_formula(self):
        for b in (0, 1, 2):
            got = sto_ctilde_squared(Fr(7, 5), Fr(3, 2), b)
            want = Fr(3 * (1 - b) ** 2 + 4) * Fr(3, 2) / (4 * Fr(7, 5))
            assert got == want
        assert sto_ctilde_squared(1, 1, 0) == Fr(7, 4)

    def test_discriminant_root_count(self):
        rng = random.Random(23)
        for _ in range(500):
            alpha = rng.uniform(0.2, 3.0) * rng.choice([1.0, -1.0])
            v = rng.uniform(-3.0, 3.0)
            const = rng.uniform(-3.0, 3.0)
            red = sto_reduce(alpha, v, const)
            if red.discriminant3 > 0:
                assert len(red.epsilons) == 1
            else:
                assert len(red.epsilons) in (2, 3)

    def test_hyperbolic_branches_for_negative_v(self):
        # v < 0 pushes 3 eps^2/4 + v/alpha below zero for small roots:
        # hyperbolic regime (c^2 = -(3 eps^2/4 + v/alpha) > 0)
        red = sto_reduce(1.0, -1.0, 0.0)
        assert red.epsilons == pytest.approx([-1.0, 0.0, 1.0], abs=1e-14)
        assert all(br.factorization.regime is Regime.HYPERBOLIC for br in red.branches)
        # a large enough root flips back to the trigonometric regime
        (branch,) = sto_reduce(1.0, -1.0, -6.0).branches  # eps = 2
        assert branch.epsilon == pytest.approx(2.0, abs=1e-14)
        assert branch.factorization.regime is Regime.TRIGONOMETRIC

    def test_exact_factorization_for_rational_eps(self):
        eq = sto_shifted_equation(Fr(1), Fr(1), Fr(-1))  # b = 2
        fact = commutative_factorize(eq)
        assert fact.symmetric_part == Polynomial([Fr(3, 2), -1])
        assert fact.c_squared == Fr(-7, 4)

    def test_alpha_zero_rejected(self):
        with pytest.raises(DomainViolation):
            sto_reduce(0.0, 1.0, 0.0)


class TestChiellini:
    def test_cubic(self):
        k, w = Fr(2), Fr(3)
        res = chiellini_check(cubic_oscillator(k, w))
        assert res is not None
        assert res.sigma_sq == Fr(9, 2)
        assert res.kappa == 3 * w * w / (2 * k)

    def test_cubic_symbolic_family(self):
        for k, w in ((Fr(5, 2), Fr(3)), (Fr(-3), Fr(1, 2)), (Fr(1, 7), Fr(11))):
            res = chiellini_check(cubic_oscillator(k, w))
            assert (res.sigma_sq, res.kappa) == (Fr(9, 2), 3 * w * w / (2 * k))

    def test_harmonic_empty(self):
        from lienard.factorize import LienardEquation

        eq = LienardEquation(Polynomial([]), Polynomial([0, 9]))
        assert chiellini_check(eq) is None

    def test_wilson_empty(self):
        assert chiellini_check(wilson_equation(1)) is None

    def test_certificate_is_exact(self):
        eq = cubic_oscillator(Fr(7, 2), Fr(5, 3))
        res = chiellini_check(eq)
        g = eq.damping
        int_g = Polynomial([Fr(0)] + [c / (k + 1) for k, c in enumerate(g.coeffs)])
        lhs = eq.restoring.scale(res.sigma_sq)
        rhs = g * (int_g + Polynomial([res.kappa]))
        assert lhs == rhs

    def test_damped_linear_oscillator(self):
        from lienard.factorize import LienardEquation

        eq = LienardEquation(Polynomial([3]), Polynomial([0, 4]))
        res = chiellini_check(eq)
        assert res is not None and res.kappa == 0
        assert res.sigma_sq == Fr(9, 4)  # g^2 / w^2


class TestSundman:
    def test_cubic_case(self):
        res = sundman_check(Fr(2), 0, 9, 1)
        assert res is not None and res.case == "B0"
        assert res.sigma_sq == Fr(9, 2)
        assert res.kappa == Fr(27, 4)  # 3 C / (2 A)

    def test_kappa0_q1(self):
        res = sundman_check(Fr(5), 1, Fr(2, 9), 1)
        assert res is not None and res.case == "kappa0"
        assert res.sigma_sq == Fr(9, 2) and res.kappa == 0

    def test_kappa0_q2(self):
        res = sundman_check(Fr(-1), 1, Fr(3, 16), 2)
        assert res is not None and res.case == "kappa0"
        assert res.sigma_sq == Fr(16, 3)

    def test_neither_case(self):
        assert sundman_check(Fr(1), 0, 1, 2) is None  # B=0 needs q=1
        assert sundman_check(Fr(1), 1, Fr(1, 4), 1) is None  # wrong C
        assert sundman_check(Fr(1), 2, Fr(2, 9), 1) is None
        assert sundman_check(Fr(1, 4), -1, 1, 2) is None  # the wilson parameters

    def test_identity_reconstructed_independently(self):
        # rebuild both sides of the nonlocal-linearization identity from
        # scratch and compare exactly
        for a, b, c, q in ((Fr(2), Fr(0), Fr(9), 1), (Fr(3), Fr(1), Fr(2, 9), 1),
                           (Fr(-2), Fr(1), Fr(3, 16), 2)):
            res = sundman_check(a, b, c, q)
            assert res is not None
            lhs = (Polynomial.monomial(q + 1, a)
                   * (Polynomial.monomial(q, a) + Polynomial([b]))
                   + Polynomial([0, c])).scale(res.sigma_sq)
            rhs = (Polynomial.monomial(q, (q + 2) * a) + Polynomial([b])) * (
                Polynomial.monomial(q + 1, Fr(q + 2, q + 1) * a)
                + Polynomial([res.kappa, b])
            )
            assert lhs == rhs


class TestWilsonCurve:
    def test_vanishes_at_x_two(self):
        assert wilson_limit_cycle_residual(1.0, 2.0, 0.0) == 0.0

    def test_x_zero_crossings(self):
        # at x = 0 the curve reduces to y^2 - 4 = 0
        assert wilson_limit_cycle_residual(1.0, 0.0, 2.0) == pytest.approx(0.0, abs=1e-14)
        assert wilson_limit_cycle_residual(1.0, 0.0, -2.0) == pytest.approx(0.0, abs=1e-14)

    def test_far_point(self):
        assert wilson_limit_cycle_residual(1.0, 0.0, 10.0) == pytest.approx(96.0)

    def test_domain(self):
        with pytest.raises(DomainViolation):
            wilson_limit_cycle_residual(2.5, 1.0, 1.0)
