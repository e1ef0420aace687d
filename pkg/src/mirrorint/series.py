"""Truncated formal power series over the exact rationals.

A TruncatedSeries holds coefficients c_0..c_N as Fractions.  Every binary
operation truncates to the smaller operand order and never pads, so a result
never claims coefficients that were not actually computed.  exp and log are
solved through the ODE recurrence b' = a' b, which keeps everything in
O(N^2) exact-rational operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = ["TruncatedSeries", "IntegralityReport"]

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class IntegralityReport:
    """First non-integer coefficient of a series, if any, up to a given order."""

    integral: bool
    order_checked: int
    first_bad_index: Optional[int] = None
    first_bad_coefficient: Optional[Fraction] = None


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: Optional[int] = None
                    ) -> "TruncatedSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order + 1 < len(cs):
                cs = cs[: order + 1]
            else:
                cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([0], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def scale(self, factor: Scalar) -> "TruncatedSeries":
        factor = Fraction(factor)
        return TruncatedSeries(tuple(c * factor for c in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            out.append(
                sum(
                    (self.coeffs[i] * other.coeffs[k - i] for i in range(k + 1)),
                    Fraction(0),
                )
            )
        return TruncatedSeries(tuple(out))

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = TruncatedSeries.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reciprocal(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise ValueError("reciprocal requires a nonzero constant term")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = sum(
                (self.coeffs[i] * out[k - i] for i in range(1, k + 1)),
                Fraction(0),
            )
            out.append(-inv0 * acc)
        return TruncatedSeries(tuple(out))

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, via n b_n = sum k a_k b_{n-k}."""
        if self.coeffs[0] != 0:
            raise ValueError("exp requires a zero constant term")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = sum(
                (k * self.coeffs[k] * out[n - k] for k in range(1, n + 1)),
                Fraction(0),
            )
            out.append(acc / n)
        return TruncatedSeries(tuple(out))

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1 (inverse recurrence of exp)."""
        if self.coeffs[0] != 1:
            raise ValueError("log requires constant term 1")
        out = [Fraction(0)]
        for n in range(1, self.order + 1):
            acc = sum(
                (k * out[k] * self.coeffs[n - k] for k in range(1, n)),
                Fraction(0),
            )
            out.append((n * self.coeffs[n] - acc) / n)
        return TruncatedSeries(tuple(out))

    def vth_root(self, v: int) -> "TruncatedSeries":
        """The v-th root exp(log(a)/v) of a unit series."""
        if v < 1:
            raise ValueError("v must be a positive integer")
        if self.coeffs[0] != 1:
            raise ValueError("vth_root requires constant term 1")
        if v == 1:
            return self
        return self.log().scale(Fraction(1, v)).exp()

    def substitute_power(self, p: int) -> "TruncatedSeries":
        """The substitution z -> z^p, truncated at the original order."""
        if p < 1:
            raise ValueError("p must be a positive integer")
        out = [Fraction(0)] * (self.order + 1)
        for k in range(self.order // p + 1):
            out[k * p] = self.coeffs[k]
        return TruncatedSeries(tuple(out))

    def integrality(self) -> IntegralityReport:
        for n, c in enumerate(self.coeffs):
            if c.denominator != 1:
                return IntegralityReport(
                    integral=False,
                    order_checked=self.order,
                    first_bad_index=n,
                    first_bad_coefficient=c,
                )
        return IntegralityReport(integral=True, order_checked=self.order)

    def max_root_exponent(self) -> tuple[int, tuple[int, ...]]:
        """Largest v with an integral v-th root at this order, plus all passing v.

        Candidates are the positive divisors of the first nonzero coefficient
        a_j (j >= 1), because the z^j coefficient of a^{1/v} is a_j / v.  This
        is a certificate at the truncation order only, not a proof for the
        full series.
        """
        if self.coeffs[0] != 1:
            raise ValueError("max_root_exponent requires constant term 1")
        if not self.integrality().integral:
            raise ValueError("max_root_exponent requires an integral series")
        j = next((n for n in range(1, self.order + 1) if self.coeffs[n] != 0), None)
        if j is None:
            raise ValueError(
                "series is 1 at this order; root exponent is unbounded"
            )
        target = abs(int(self.coeffs[j]))
        divisors = set()
        d = 1
        while d * d <= target:
            if target % d == 0:
                divisors.update((d, target // d))
            d += 1
        divisors = sorted(divisors)
        passing = tuple(
            v for v in divisors if self.vth_root(v).integrality().integral
        )
        return passing[-1], passing
