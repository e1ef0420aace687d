"""Canonical q-coordinates and their root-exponent verifiers.

From a balanced spec we build the hypergeometric-style series F and the
harmonic-weighted companions G and G_L, then form the reduced canonical
coordinate exp(G/F) (that is, q with the leading z divided out) and the
level maps q_L = exp(G_L/F).  On top of those sit the verifiers: the per
level root exponents D_L, the gcd divisibility test that transfers roots of
the q_L to roots of q, the reference exponents from the harmonic-number
literature, and a witness search for the almost-all-primes failure in the
non-increasing case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .landau import (
    Classification,
    FactorialRatioSpec,
    classify,
    harmonic,
    q_ratio,
    root_bound_dl,
)
from .series import IntegralityReport, TruncatedSeries

__all__ = [
    "MirrorMapBundle",
    "CaseTwoError",
    "RootHypothesisVerdict",
    "ReferenceExponents",
    "NonintegralityWitness",
    "KNOWN_WOLSTENHOLME_PRIMES",
    "build_bundle",
    "product_relation_check",
    "verify_theorem1",
    "root_exponent_for_q",
    "reference_exponents",
    "nonintegrality_witness",
]

# The only primes p with v_p(H_{p-1}) >= 3 found to date.
KNOWN_WOLSTENHOLME_PRIMES = frozenset({16843, 2124679})


class CaseTwoError(ValueError):
    """Raised when a verifier needs D >= 1 on [1/M, 1) but the spec fails it."""

    def __init__(self, spec: FactorialRatioSpec, classification: Classification):
        self.spec = spec
        self.classification = classification
        witnesses = ", ".join(str(w) for w in classification.zero_witnesses)
        super().__init__(
            f"spec {spec} is not in case (i); step function < 1 at {witnesses}"
        )


@dataclass(frozen=True)
class MirrorMapBundle:
    spec: FactorialRatioSpec
    order: int
    F: TruncatedSeries
    G: TruncatedSeries
    G_L: dict[int, TruncatedSeries]
    q_reduced: TruncatedSeries
    q_L: dict[int, TruncatedSeries]


def build_bundle(
    spec: FactorialRatioSpec,
    order: int,
    levels: Optional[tuple[int, ...]] = None,
) -> MirrorMapBundle:
    """Build F, G, the requested G_L / q_L, and the reduced coordinate exp(G/F).

    levels=None builds every level 1..M; pass an explicit (possibly empty)
    tuple to restrict.  Coefficient n of G is Q(n) (sum e_i H_{e_i n} -
    sum f_j H_{f_j n}) and coefficient n of G_L is Q(n) H_{L n}, all exact.
    """
    if not spec.balanced:
        raise ValueError(f"spec {spec} is not balanced (|e| != |f|)")
    if order < 1:
        raise ValueError("order must be >= 1")
    if levels is None:
        levels = tuple(range(1, spec.max_entry + 1))
    else:
        for level in levels:
            if not 1 <= level <= spec.max_entry:
                raise ValueError(f"level {level} outside [1, {spec.max_entry}]")

    qs = [q_ratio(spec, n) for n in range(order + 1)]
    harmonic(spec.max_entry * order)  # warm the cache in one pass

    f_series = TruncatedSeries(tuple(qs))
    g_coeffs = [Fraction(0)]
    for n in range(1, order + 1):
        weight = sum(c * harmonic(c * n) for c in spec.e) - sum(
            c * harmonic(c * n) for c in spec.f
        )
        g_coeffs.append(qs[n] * weight)
    g_series = TruncatedSeries(tuple(g_coeffs))

    f_inv = f_series.reciprocal()
    q_reduced = (g_series * f_inv).exp()

    g_levels: dict[int, TruncatedSeries] = {}
    q_levels: dict[int, TruncatedSeries] = {}
    for level in levels:
        gl = TruncatedSeries(
            tuple(
                qs[n] * harmonic(level * n) if n else Fraction(0)
                for n in range(order + 1)
            )
        )
        g_levels[level] = gl
        q_levels[level] = (gl * f_inv).exp()

    return MirrorMapBundle(
        spec=spec,
        order=order,
        F=f_series,
        G=g_series,
        G_L=g_levels,
        q_reduced=q_reduced,
        q_L=q_levels,
    )


def product_relation_check(bundle: MirrorMapBundle) -> bool:
    """Check exp(G/F) = prod q_{e_i}^{e_i} / prod q_{f_j}^{f_j} exactly."""
    rhs = TruncatedSeries.one(bundle.order)
    for c in bundle.spec.e:
        rhs = rhs * bundle.q_L[c] ** c
    for c in bundle.spec.f:
        rhs = rhs * bundle.q_L[c].reciprocal() ** c
    return rhs == bundle.q_reduced


def verify_theorem1(
    spec: FactorialRatioSpec, order: int
) -> dict[int, IntegralityReport]:
    """Integrality of q_L^{1/D_L} for every level L, at the given order.

    Refuses outright when the case-(i) hypothesis fails: in that situation
    even q_L itself has non-integral coefficients for almost all primes, so
    a passing prefix would be misleading.
    """
    verdict = classify(spec)
    if not verdict.case_i:
        raise CaseTwoError(spec, verdict)
    bundle = build_bundle(spec, order)
    return {
        level: bundle.q_L[level]
        .vth_root(root_bound_dl(spec, level))
        .integrality()
        for level in range(1, spec.max_entry + 1)
    }


@dataclass(frozen=True)
class RootHypothesisVerdict:
    """Outcome of the divisibility hypothesis theta/gcd(L, theta) | D_L."""

    spec: FactorialRatioSpec
    theta: int
    hypothesis_holds: bool
    failing_level: Optional[int] = None


def root_exponent_for_q(
    spec: FactorialRatioSpec, theta: int
) -> RootHypothesisVerdict:
    """Check the exponent-transfer hypothesis for a theta-th root of z^-1 q.

    theta must divide M and the spec must be in case (i).  When the check
    passes, (z^-1 q)^{1/theta} has integer coefficients; callers can confirm
    a prefix with vth_root + integrality.
    """
    if theta < 1 or spec.max_entry % theta != 0:
        raise ValueError(f"theta={theta} does not divide M={spec.max_entry}")
    verdict = classify(spec)
    if not verdict.case_i:
        raise CaseTwoError(spec, verdict)
    for level in sorted(set(spec.e + spec.f)):
        needed = theta // math.gcd(level, theta)
        if root_bound_dl(spec, level) % needed != 0:
            return RootHypothesisVerdict(spec, theta, False, failing_level=level)
    return RootHypothesisVerdict(spec, theta, True)


@dataclass(frozen=True)
class ReferenceExponents:
    """Reference root exponents from the harmonic-number literature."""

    spec: FactorialRatioSpec
    theta_l: dict[int, int]                 # denominator of H_L, per level
    q_one_over_theta: dict[int, Fraction]   # Q(1)/Theta_L
    xi: Optional[Fraction] = None
    omega: Optional[Fraction] = None
    xi_exponent: Optional[Fraction] = None      # Xi_N * Q(1)
    omega_exponent: Optional[Fraction] = None   # Omega_N * Q(1) * q1 * N


def _small_primes(bound: int) -> list[int]:
    out = []
    for n in range(2, bound + 1):
        if all(n % p for p in out if p * p <= n):
            out.append(n)
    return out


def _vp_fraction(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 requested")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def reference_exponents(
    spec: FactorialRatioSpec,
    wolstenholme: frozenset[int] = KNOWN_WOLSTENHOLME_PRIMES,
) -> ReferenceExponents:
    """Theta_L for every level, and Xi_N / Omega_N for (N,..,N)/(1,..,1) shapes.

    Xi_N = prod_{p<=N} p^{min(2+xi(p,N), v_p(H_N))} with xi(p,N)=1 iff p is a
    Wolstenholme prime or p | N; Omega_N is the analogue built on v_p(H_N - 1)
    with the condition N = +-1 mod p.  Both may be non-integers; the composite
    predictions Xi_N Q(1) and Omega_N Q(1) q1 N are the usable exponents.
    """
    big_m = spec.max_entry
    theta_l = {level: harmonic(level).denominator for level in range(1, big_m + 1)}
    q_one = q_ratio(spec, 1)
    q_over = {level: q_one / theta_l[level] for level in theta_l}

    ref = ReferenceExponents(spec=spec, theta_l=theta_l, q_one_over_theta=q_over)

    n_val = spec.e[0]
    shaped = (
        len(set(spec.e)) == 1
        and set(spec.f) == {1}
        and spec.balanced
        and n_val >= 2
    )
    if not shaped:
        return ref

    h_n = harmonic(n_val)
    xi = Fraction(1)
    omega = Fraction(1)
    for p in _small_primes(n_val):
        xi_flag = 1 if (p in wolstenholme or n_val % p == 0) else 0
        xi *= Fraction(p) ** min(2 + xi_flag, _vp_fraction(h_n, p))
        om_flag = 1 if (p in wolstenholme or n_val % p in (1, p - 1)) else 0
        shifted = h_n - 1
        v_shift = _vp_fraction(shifted, p) if shifted else 2 + om_flag
        omega *= Fraction(p) ** min(2 + om_flag, v_shift)

    q1_count = len(spec.e)
    return ReferenceExponents(
        spec=spec,
        theta_l=theta_l,
        q_one_over_theta=q_over,
        xi=xi,
        omega=omega,
        xi_exponent=xi * q_one,
        omega_exponent=omega * q_one * q1_count * n_val,
    )


@dataclass(frozen=True)
class NonintegralityWitness:
    prime: int
    target: str           # "q" or "qL=<level>"
    index: int
    valuation: int


def nonintegrality_witness(
    spec: FactorialRatioSpec, prime_bound: int, order: int
) -> Optional[NonintegralityWitness]:
    """First (p, series, index) with a negative p-adic coefficient valuation.

    Meant for specs in case (ii), where all but finitely many primes must
    produce such a coefficient in q or one of the q_L.  The scan order is
    deterministic: primes ascending, then q_reduced before the q_L by level,
    then coefficient index.
    """
    verdict = classify(spec)
    if not verdict.landau_integral:
        raise ValueError(f"spec {spec} fails the Landau criterion")
    if verdict.case_i:
        # Nothing to find: case (i) makes every target integral.
        return None

    bundle = build_bundle(spec, order, levels=())
    level_cache: dict[int, TruncatedSeries] = {}

    def level_series(level: int) -> TruncatedSeries:
        # Levels are only materialized if q_reduced yields no witness at all.
        if not level_cache:
            level_cache.update(build_bundle(spec, order).q_L)
        return level_cache[level]

    for p in _small_primes(prime_bound):
        hit = _first_negative_vp(bundle.q_reduced, p)
        if hit:
            return NonintegralityWitness(p, "q", hit[0], hit[1])
        for level in range(1, spec.max_entry + 1):
            hit = _first_negative_vp(level_series(level), p)
            if hit:
                return NonintegralityWitness(p, f"qL={level}", hit[0], hit[1])
    return None


def _first_negative_vp(
    ser: TruncatedSeries, p: int
) -> Optional[tuple[int, int]]:
    for n, c in enumerate(ser.coeffs):
        if c.denominator % p == 0:
            return n, _vp_fraction(c, p)
    return None
