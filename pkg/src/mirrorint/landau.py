"""Combinatorics of factorial-ratio sequences.

Everything in this module is a pure function of a pair of positive integer
tuples (e, f): the ratio Q(n) = prod (e_i n)! / prod (f_j n)!, the step
function D(x) = sum floor(e_i x) - sum floor(f_j x), its piecewise-constant
profile on [0, 1), and the derived integers M, D_L used as root exponents.
All arithmetic is exact (int / Fraction); nothing here touches floats.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


__all__ = [
    "FactorialRatioSpec",
    "LandauProfile",
    "Classification",
    "PochhammerForm",
    "q_ratio",
    "delta_at",
    "profile",
    "classify",
    "root_bound_dl",
    "pochhammer_form",
    "harmonic",
]


@dataclass(frozen=True)
class FactorialRatioSpec:
    """A pair of positive integer tuples defining a factorial ratio."""

    e: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self):
        if not self.e or not self.f:
            raise ValueError("e and f must be nonempty")
        object.__setattr__(self, "e", tuple(int(c) for c in self.e))
        object.__setattr__(self, "f", tuple(int(c) for c in self.f))
        if any(c < 1 for c in self.e + self.f):
            raise ValueError("all entries of e and f must be >= 1")

    @property
    def max_entry(self) -> int:
        """M, the largest entry among e and f."""
        return max(self.e + self.f)

    @property
    def weight_e(self) -> int:
        return sum(self.e)

    @property
    def weight_f(self) -> int:
        return sum(self.f)

    @property
    def balanced(self) -> bool:
        """Equal weights; makes D 1-periodic and q well-defined."""
        return self.weight_e == self.weight_f

    @property
    def disjoint(self) -> bool:
        """No entry occurs in both e and f (multiset intersection empty)."""
        return not (Counter(self.e) & Counter(self.f))

    def __str__(self) -> str:
        return ",".join(map(str, self.e)) + "/" + ",".join(map(str, self.f))


@dataclass(frozen=True)
class LandauProfile:
    """Breakpoints and values of D on [0, 1), plus the jump at each breakpoint."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[int, ...]
    jumps: tuple[tuple[Fraction, int], ...]

    def value_at(self, x: Fraction) -> int:
        """Profile value of the piece containing x in [0, 1)."""
        if not 0 <= x < 1:
            raise ValueError("x must be in [0, 1)")
        lo, hi = 0, len(self.breakpoints) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] <= x:
                lo = mid
            else:
                hi = mid - 1
        return self.values[lo]


@dataclass(frozen=True)
class Classification:
    """Verdict of the two step-function conditions, with violating abscissas."""

    landau_integral: bool
    case_i: bool
    negative_witnesses: tuple[Fraction, ...] = ()
    zero_witnesses: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class PochhammerForm:
    """Q(n) rewritten as C^n times a ratio of Pochhammer products."""

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]
    constant: Fraction

    def evaluate(self, n: int) -> Fraction:
        """Recombine the form at n; must agree with q_ratio."""
        acc = self.constant ** n
        for x in self.numerator:
            acc *= _pochhammer(x, n)
        for y in self.denominator:
            acc /= _pochhammer(y, n)
        return acc


def _pochhammer(x: Fraction, n: int) -> Fraction:
    acc = Fraction(1)
    for k in range(n):
        acc *= x + k
    return acc


@lru_cache(maxsize=None)
def q_ratio(spec: FactorialRatioSpec, n: int) -> Fraction:
    """The factorial ratio prod (e_i n)! / prod (f_j n)! as an exact rational."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = math.prod(math.factorial(c * n) for c in spec.e)
    den = math.prod(math.factorial(c * n) for c in spec.f)
    return Fraction(num, den)


def delta_at(spec: FactorialRatioSpec, x: Fraction) -> int:
    """The step function sum floor(e_i x) - sum floor(f_j x)."""
    x = Fraction(x)
    return sum(math.floor(c * x) for c in spec.e) - sum(
        math.floor(c * x) for c in spec.f
    )


def profile(spec: FactorialRatioSpec) -> LandauProfile:
    """Exact piecewise-constant profile of D on [0, 1).

    The candidate breakpoints i/c (c an entry, 0 <= i < c) are exactly the
    points where some floor(c x) can jump, so evaluating at each candidate
    gives the full step structure.
    """
    points = sorted({Fraction(i, c) for c in spec.e + spec.f for i in range(c)})
    values = tuple(delta_at(spec, b) for b in points)
    jumps = []
    for i, b in enumerate(points):
        if i == 0:
            if not spec.balanced:
                continue
            # left limit at 0 is the last piece's value, by 1-periodicity
            left = values[-1]
        else:
            left = values[i - 1]
        jumps.append((b, values[i] - left))
    return LandauProfile(tuple(points), values, tuple(jumps))


def classify(spec: FactorialRatioSpec) -> Classification:
    """Check D >= 0 on [0, 1] and D >= 1 on [1/M, 1).

    The first condition is the Landau integrality criterion for Q; the second
    is the dichotomy hypothesis under which the root theorems apply.
    """
    prof = profile(spec)
    negative = [b for b, v in zip(prof.breakpoints, prof.values) if v < 0]
    end = delta_at(spec, Fraction(1))
    if end < 0:
        negative.append(Fraction(1))
    threshold = Fraction(1, spec.max_entry)
    zero = [
        b
        for b, v in zip(prof.breakpoints, prof.values)
        if b >= threshold and v < 1
    ]
    return Classification(
        landau_integral=not negative,
        case_i=not zero,
        negative_witnesses=tuple(negative),
        zero_witnesses=tuple(zero),
    )


def root_bound_dl(spec: FactorialRatioSpec, level: int) -> int:
    """D_L = lcm(1, ..., floor(M/L)) for 1 <= L <= M."""
    big_m = spec.max_entry
    if not 1 <= level <= big_m:
        raise ValueError(f"level must be in [1, {big_m}], got {level}")
    top = big_m // level
    return math.lcm(*range(1, top + 1)) if top >= 1 else 1


def pochhammer_form(spec: FactorialRatioSpec) -> PochhammerForm:
    """Rewrite Q(n) as C^n times cancelled Pochhammer products.

    Numerator parameters are j/c for each entry c of e and 1 <= j <= c,
    denominator ones likewise for f; common parameters cancel as multisets
    and C = prod e_i^{e_i} / prod f_j^{f_j}.
    """
    if not spec.balanced:
        raise ValueError("pochhammer_form requires |e| = |f|")
    num = Counter(Fraction(j, c) for c in spec.e for j in range(1, c + 1))
    den = Counter(Fraction(j, c) for c in spec.f for j in range(1, c + 1))
    common = num & den
    num -= common
    den -= common
    constant = Fraction(
        math.prod(c**c for c in spec.e), math.prod(c**c for c in spec.f)
    )
    return PochhammerForm(
        numerator=tuple(sorted(num.elements())),
        denominator=tuple(sorted(den.elements())),
        constant=constant,
    )


_HARMONIC: list[Fraction] = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.  Memoized incrementally."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    while len(_HARMONIC) <= n:
        k = len(_HARMONIC)
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, k))
    return _HARMONIC[n]
