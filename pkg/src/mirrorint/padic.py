"""p-adic valuations and the membership predicates behind the root theorems.

Every quantity handled here is an exact rational, so p-adic membership
statements reduce to valuation comparisons; no truncated p-adic expansions
are ever formed.  The module exposes the valuation formula for Q(n) through
the step function, the two Dieudonne-Dwork reduction tests, the coefficient
functional phi, the split sums S and W with their correction factor
g_p(m) = p^{mu_p(m)}, and each supporting lemma as an executable check over
explicit finite grids.

Infinite sums over the level index l are truncated at the first l where all
remaining terms vanish (p^l beyond the argument times M); the cutoffs are
computed, never guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .landau import FactorialRatioSpec, classify, delta_at, harmonic, q_ratio, root_bound_dl
from .series import TruncatedSeries

__all__ = [
    "PadicMembershipReport",
    "is_prime",
    "primes_up_to",
    "vp_int",
    "vp_rational",
    "vp_q_ratio_via_delta",
    "dwork_quotient_test",
    "dwork_exp_test",
    "phi",
    "phi_membership_scan",
    "s_sum",
    "mu_and_g",
    "w_term",
    "dwork_decomposition_check",
    "lemma_ablanc_check",
    "lemma24_check",
    "lemma_harmonic_check",
    "congruence25_check",
    "congruence_star_check",
    "s_membership_scan",
]

INFINITE = math.inf

Valuation = Union[int, float]


@dataclass(frozen=True)
class PadicMembershipReport:
    """Verdict of 'value(s) lie in p^k Z_p', with the worst valuation seen."""

    prime: int
    required_valuation: int
    value_description: str
    actual_valuation: Valuation
    member: bool
    witness: Optional[tuple] = None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_up_to(bound: int) -> list[int]:
    out = []
    for n in range(2, bound + 1):
        if all(n % p for p in out if p * p <= n):
            out.append(n)
    return out


def vp_int(n: int, p: int) -> Valuation:
    if n == 0:
        return INFINITE
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(x: Fraction, p: int) -> Valuation:
    """v_p of an exact rational; +inf for 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITE
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def vp_q_ratio_via_delta(spec: FactorialRatioSpec, n: int, p: int) -> int:
    """v_p(Q(n)) as the sum of step-function values at {n/p^l}.

    Requires a balanced spec passing the Landau criterion, so that the sum
    telescopes out of the Legendre formula for v_p(m!).  Terms vanish once
    p^l exceeds n*M.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n == 0:
        return 0
    total = 0
    pl = p
    while pl <= n * spec.max_entry:
        frac = Fraction(n, pl)
        total += delta_at(spec, frac - math.floor(frac))
        pl *= p
    return total


def _series_min_vp(
    ser: TruncatedSeries, p: int, start: int = 0
) -> tuple[Valuation, Optional[int]]:
    worst: Valuation = INFINITE
    where = None
    for idx in range(start, ser.order + 1):
        v = vp_rational(ser[idx], p)
        if v < worst:
            worst, where = v, idx
    return worst, where


def dwork_quotient_test(f_series: TruncatedSeries, p: int) -> PadicMembershipReport:
    """Membership of F(z^p)/F(z)^p in 1 + p z Z_p[[z]].

    By the Dieudonne-Dwork lemma this holds exactly when F itself lies in
    1 + z Z_p[[z]], so the test doubles as an indirect integrality check.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f_series[0] != 1:
        raise ValueError("dwork_quotient_test requires constant term 1")
    quotient = f_series.substitute_power(p) * (f_series**p).reciprocal()
    worst, where = _series_min_vp(quotient, p, start=1)
    return PadicMembershipReport(
        prime=p,
        required_valuation=1,
        value_description="coefficients 1..N of F(z^p)/F(z)^p",
        actual_valuation=worst,
        member=worst >= 1,
        witness=None if worst >= 1 else (where,),
    )


def dwork_exp_test(f_series: TruncatedSeries, p: int) -> PadicMembershipReport:
    """Membership of f(z^p) - p f(z) in p z Z_p[[z]].

    Equivalent to exp(f) lying in 1 + z Z_p[[z]], for f with zero constant
    term; this is the reduction that removes the exponential from q_L.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f_series[0] != 0:
        raise ValueError("dwork_exp_test requires a zero constant term")
    diff = f_series.substitute_power(p) - f_series.scale(p)
    worst, where = _series_min_vp(diff, p, start=1)
    return PadicMembershipReport(
        prime=p,
        required_valuation=1,
        value_description="coefficients 1..N of f(z^p) - p f(z)",
        actual_valuation=worst,
        member=worst >= 1,
        witness=None if worst >= 1 else (where,),
    )


def _q_at(spec: FactorialRatioSpec, n: int) -> Fraction:
    # Q extended by 0 on negative arguments, as in the split sums.
    return q_ratio(spec, n) if n >= 0 else Fraction(0)


def phi(
    spec: FactorialRatioSpec, level: int, p: int, a: int, big_k: int
) -> Fraction:
    """The z^{a+Kp} coefficient of F(z) G_L(z^p) - p F(z^p) G_L(z)."""
    if not 0 <= a < p:
        raise ValueError("a must satisfy 0 <= a < p")
    total = Fraction(0)
    for j in range(big_k + 1):
        total += (
            q_ratio(spec, big_k - j)
            * q_ratio(spec, a + j * p)
            * (harmonic(level * (big_k - j)) - p * harmonic(level * (a + j * p)))
        )
    return total


def phi_membership_scan(
    spec: FactorialRatioSpec,
    level: int,
    p: int,
    a_max: int,
    k_max: int,
) -> PadicMembershipReport:
    """phi in p D_L Z_p over the grid 0 <= a <= min(a_max, p-1), 0 <= K <= k_max."""
    verdict = classify(spec)
    if not verdict.case_i:
        raise ValueError(f"spec {spec} is not in case (i)")
    required = 1 + int(vp_int(root_bound_dl(spec, level), p))
    worst: Valuation = INFINITE
    witness = None
    for a in range(min(a_max, p - 1) + 1):
        for big_k in range(k_max + 1):
            v = vp_rational(phi(spec, level, p, a, big_k), p)
            if v < worst:
                worst = v
            if v < required and witness is None:
                witness = (a, big_k)
    return PadicMembershipReport(
        prime=p,
        required_valuation=required,
        value_description=f"phi(L={level}) on a<=min({a_max},p-1), K<={k_max}",
        actual_valuation=worst,
        member=witness is None,
        witness=witness,
    )


def s_sum(
    spec: FactorialRatioSpec, a: int, big_k: int, s: int, p: int, m: int
) -> Fraction:
    """S(a,K,s,p,m): the block sum over j in [m p^s, (m+1) p^s)."""
    if not 0 <= a < p:
        raise ValueError("a must satisfy 0 <= a < p")
    total = Fraction(0)
    # Terms with j > K vanish: both products then contain a Q at a negative
    # argument (a + (K-j)p < a - p < 0).
    for j in range(m * p**s, min((m + 1) * p**s, big_k + 1)):
        total += q_ratio(spec, a + j * p) * _q_at(spec, big_k - j)
        total -= q_ratio(spec, j) * _q_at(spec, a + (big_k - j) * p)
    return total


def mu_and_g(spec: FactorialRatioSpec, p: int, m: int) -> tuple[int, int]:
    """mu_p(m) = #{l >= 1 : {m/p^l} in [1/M, 1)} and g_p(m) = p^mu."""
    threshold = Fraction(1, spec.max_entry)
    mu = 0
    pl = p
    while pl <= m * spec.max_entry:
        frac = Fraction(m % pl, pl)
        if frac >= threshold:
            mu += 1
        pl *= p
    return mu, p**mu


def w_term(
    spec: FactorialRatioSpec,
    level: int,
    a: int,
    big_k: int,
    s: int,
    p: int,
    m: int,
) -> Fraction:
    """W_L = (H_{L m p^s} - H_{L floor(m/p) p^{s+1}}) S(a,K,s,p,m)."""
    block = s_sum(spec, a, big_k, s, p, m)
    if block == 0:
        return Fraction(0)
    return (
        harmonic(level * m * p**s) - harmonic(level * (m // p) * p ** (s + 1))
    ) * block


def dwork_decomposition_check(
    spec: FactorialRatioSpec, level: int, a: int, big_k: int, p: int
) -> bool:
    """Dwork's combinatorial splitting of the harmonic-weighted sum.

    Compares sum_j H_{Lj} (Q(a+jp)Q(K-j) - Q(j)Q(a+(K-j)p)) with the double
    sum of W_L over s <= r and m < p^{r+1-s}, where r is the least integer
    with K < p^r.  Both sides are evaluated exactly.
    """
    if not 0 <= a < p:
        raise ValueError("a must satisfy 0 <= a < p")
    lhs = Fraction(0)
    for j in range(big_k + 1):
        lhs += harmonic(level * j) * (
            q_ratio(spec, a + j * p) * _q_at(spec, big_k - j)
            - q_ratio(spec, j) * _q_at(spec, a + (big_k - j) * p)
        )
    r = 0
    while big_k >= p**r:
        r += 1
    rhs = Fraction(0)
    for s in range(r + 1):
        for m in range(p ** (r + 1 - s)):
            rhs += w_term(spec, level, a, big_k, s, p, m)
    return lhs == rhs


def lemma_ablanc_check(spec: FactorialRatioSpec, p: int, m: int) -> bool:
    """{m/p^l} >= 1/M for l in [v_p(m)+1, v_p(m)+beta], beta = floor(log_p M)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    threshold = Fraction(1, spec.max_entry)
    beta = 0
    while p ** (beta + 1) <= spec.max_entry:
        beta += 1
    v = int(vp_int(m, p))
    for ell in range(v + 1, v + beta + 1):
        pl = p**ell
        if Fraction(m % pl, pl) < threshold:
            return False
    return True


def lemma24_check(
    p: int,
    s: int,
    a: int,
    big_m: int,
    m: int,
    level: int,
    u: Optional[int] = None,
) -> bool:
    """{(a + m p^s)/p^l} >= 1/M for l in [s, s + v_p(Lm+u) + alpha].

    alpha = floor(log_p(M/L)).  With u=None, every u in 1..floor(La/p^s) is
    checked; an empty u-range is vacuously true.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if not 0 <= a < p**s:
        raise ValueError("a must satisfy 0 <= a < p^s")
    if not 1 <= level <= big_m:
        raise ValueError("level must satisfy 1 <= L <= M")
    u_top = (level * a) // p**s
    if u is None:
        u_values = range(1, u_top + 1)
    else:
        if not 1 <= u <= u_top:
            raise ValueError(f"u must be in [1, {u_top}]")
        u_values = (u,)
    alpha = 0
    while p ** (alpha + 1) * level <= big_m:
        alpha += 1
    threshold = Fraction(1, big_m)
    point = a + m * p**s
    for u_val in u_values:
        top = s + int(vp_int(level * m + u_val, p)) + alpha
        for ell in range(s, top + 1):
            pl = p**ell
            if Fraction(point % pl, pl) < threshold:
                return False
    return True


def lemma_harmonic_check(
    spec: FactorialRatioSpec, level: int, p: int, s: int, m: int
) -> PadicMembershipReport:
    """p^{s+1} g_p(m) (H_{L m p^s} - H_{L floor(m/p) p^{s+1}}) in p D_L Z_p."""
    _, g = mu_and_g(spec, p, m)
    value = (
        p ** (s + 1)
        * g
        * (harmonic(level * m * p**s) - harmonic(level * (m // p) * p ** (s + 1)))
    )
    required = 1 + int(vp_int(root_bound_dl(spec, level), p))
    actual = vp_rational(value, p)
    return PadicMembershipReport(
        prime=p,
        required_valuation=required,
        value_description=f"p^(s+1) g_p(m) harmonic difference, L={level}, s={s}, m={m}",
        actual_valuation=actual,
        member=actual >= required,
        witness=None if actual >= required else (level, s, m),
    )


def congruence25_check(
    spec: FactorialRatioSpec, level: int, p: int, a: int, j: int
) -> bool:
    """p H_{L(a+jp)} = H_{Lj} + sum_{i<=floor(La/p)} 1/(Lj+i)  (mod p Z_p)."""
    if not 0 <= a < p:
        raise ValueError("a must satisfy 0 <= a < p")
    tail = sum(
        (Fraction(1, level * j + i) for i in range(1, (level * a) // p + 1)),
        Fraction(0),
    )
    diff = p * harmonic(level * (a + j * p)) - harmonic(level * j) - tail
    return vp_rational(diff, p) >= 1


def congruence_star_check(
    spec: FactorialRatioSpec, level: int, p: int, a: int, big_k: int
) -> bool:
    """phi + sum_j H_{Lj}(Q(a+jp)Q(K-j) - Q(j)Q(a+(K-j)p)) in p D_L Z_p."""
    residual = phi(spec, level, p, a, big_k)
    for j in range(big_k + 1):
        residual += harmonic(level * j) * (
            q_ratio(spec, a + j * p) * _q_at(spec, big_k - j)
            - q_ratio(spec, j) * _q_at(spec, a + (big_k - j) * p)
        )
    required = 1 + int(vp_int(root_bound_dl(spec, level), p))
    return vp_rational(residual, p) >= required


def s_membership_scan(
    spec: FactorialRatioSpec,
    p: int,
    a_max: int,
    k_max: int,
    s_max: int,
    m_max: int,
) -> PadicMembershipReport:
    """S(a,K,s,p,m) in p^{s+1} g_p(m) Z_p over the lexicographic grid."""
    verdict = classify(spec)
    if not verdict.case_i:
        raise ValueError(f"spec {spec} is not in case (i)")
    worst_margin: Valuation = INFINITE
    worst: Valuation = INFINITE
    witness = None
    for a in range(min(a_max, p - 1) + 1):
        for big_k in range(k_max + 1):
            for s in range(s_max + 1):
                for m in range(m_max + 1):
                    mu, _ = mu_and_g(spec, p, m)
                    required = s + 1 + mu
                    v = vp_rational(s_sum(spec, a, big_k, s, p, m), p)
                    margin = v - required
                    if margin < worst_margin:
                        worst_margin, worst = margin, v
                    if margin < 0 and witness is None:
                        witness = (a, big_k, s, m)
    return PadicMembershipReport(
        prime=p,
        required_valuation=0,  # margin form: v_p(S) - (s+1+mu) >= 0 pointwise
        value_description=(
            f"S on a<=min({a_max},p-1), K<={k_max}, s<={s_max}, m<={m_max}"
        ),
        actual_valuation=worst,
        member=witness is None,
        witness=witness,
    )
