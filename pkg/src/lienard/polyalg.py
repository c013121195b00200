"""Exact univariate polynomial arithmetic over the rationals.

Coefficients are `fractions.Fraction` instances stored in ascending order of
power, with trailing zeros stripped so that structural equality is polynomial
equality. All ring operations are exact; evaluation is exact for rational
arguments and falls back to float/complex arithmetic otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Optional, Union

from .exceptions import NonzeroConstantTerm

Scalar = Union[int, float, complex, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, floats, strings and Fractions to an exact Fraction.

    Floats convert via their exact binary expansion, so no rounding is
    introduced beyond what the caller already accepted by using a float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"cannot represent {value!r} as a rational")
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class Polynomial:
    """Immutable polynomial with exact rational coefficients.

    ``coeffs[k]`` is the coefficient of x^k. The zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "Polynomial":
        if power < 0:
            raise ValueError("power must be nonnegative")
        return cls((0,) * power + (coeff,))

    @classmethod
    def from_text(cls, text: str) -> "Polynomial":
        """Parse the comma-separated ascending coefficient format.

        ``"0,9,0,4"`` means 4x^3 + 9x. Entries may be integers, decimals
        or fractions like ``-3/4``. An empty string is the zero polynomial.
        """
        text = text.strip()
        if not text:
            return cls.zero()
        try:
            return cls(Fraction(part.strip()) for part in text.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad polynomial text {text!r}: {exc}") from None

    def to_text(self) -> str:
        """Inverse of :meth:`from_text`."""
        return ",".join(str(c) for c in self.coeffs)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def constant_value(self) -> Optional[Fraction]:
        """The constant when degree <= 0, otherwise None."""
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        return None

    def nonconstant_terms(self) -> list[tuple[int, Fraction]]:
        """(power, coefficient) pairs for all powers >= 1."""
        return [(k, c) for k, c in enumerate(self.coeffs) if k >= 1 and c != 0]

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, factor) -> "Polynomial":
        f = as_fraction(factor)
        return Polynomial(f * c for c in self.coeffs)

    def shift_up(self, powers: int = 1) -> "Polynomial":
        """Multiply by x^powers."""
        if not self.coeffs:
            return self
        return Polynomial((Fraction(0),) * powers + self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k >= 1)

    def div_x(self) -> "Polynomial":
        """Divide by x; requires a vanishing constant term."""
        if self.coeffs and self.coeffs[0] != 0:
            raise NonzeroConstantTerm(
                f"constant term {self.coeffs[0]} != 0; cannot divide by x"
            )
        return Polynomial(self.coeffs[1:])

    # -- evaluation --------------------------------------------------------

    def __call__(self, x: Scalar):
        """Horner evaluation; exact when x is rational."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
        else:
            acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def as_float_coeffs(self) -> tuple[float, ...]:
        """Coefficients as machine floats, for tight numeric loops."""
        return tuple(float(c) for c in self.coeffs)

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- formatting ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: Polynomial, var: str = "x") -> str:
    """Human-readable form, highest power first, e.g. ``4x^3 + 9x``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = f"{mag}"
        else:
            xpow = var if k == 1 else f"{var}^{k}"
            body = xpow if mag == 1 else f"{mag}{xpow}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def poly_eval(p: Polynomial, x: Scalar):
    return p(x)


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_sub(p: Polynomial, q: Polynomial) -> Polynomial:
    return p - q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_div_x(p: Polynomial) -> Polynomial:
    return p.div_x()


def poly_is_constant(p: Polynomial) -> Optional[Fraction]:
    return p.constant_value()
