"""Exact model of the round unit sphere in background dimension n.

Everything is rational arithmetic: holographic coefficients v_{2j}, the
values of the operator families T_{2N}(lambda) and P_{2N}(lambda) on
constants, the residue polynomial Qres_{2N}(lambda), the V-polynomial, and
the master relations tying them together. The radial recursion gives an
independent derivation of the T-values from the warped product

    r^{-2} (dr^2 + (1 - r^2/4)^2 g_round),

so the closed forms are cross-checked rather than assumed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .hypergeom import HyperSpec, hyper_terminating
from .lambda_algebra import (
    LAMBDA,
    LambdaPoly,
    LambdaRat,
    binomial,
    pochhammer,
)
from .reports import CheckReport, QuantitiesReport

MAX_RADIAL_ORDER = 8


@dataclass(frozen=True)
class SphereContext:
    """Round unit sphere S^n; J = n/2, |P|^2 = n/4, scal = n(n-1)."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("background dimension must be at least 3")

    @property
    def f(self) -> Fraction:
        return Fraction(self.n, 2)

    @property
    def J(self) -> Fraction:
        return Fraction(self.n, 2)

    @property
    def schouten_norm_sq(self) -> Fraction:
        return Fraction(self.n, 4)


def master_constant(N: int) -> Fraction:
    """c_N = (-1)^N / (2^{2N} N! (N-1)!)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return Fraction((-1) ** N, 4 ** N * math.factorial(N) * math.factorial(N - 1))


def sphere_v(ctx: SphereContext, N: int) -> Fraction:
    """Holographic coefficient v_{2N} = (-1)^N binom(n, N) / 2^{2N}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return Fraction((-1) ** N) * binomial(ctx.n, N) / 4 ** N


def sphere_T_on_one(ctx: SphereContext, N: int) -> LambdaRat:
    """T_{2N}(lambda)(1) = (n/2)_N (lambda)_N / (2^{2N} N! (lambda-n/2+1)_N)."""
    if N == 0:
        return LambdaRat.const(1)
    f = ctx.f
    num = pochhammer(f, N) * pochhammer(LAMBDA, N)
    den = Fraction(4 ** N * math.factorial(N)) * pochhammer(LAMBDA - f + 1, N)
    return LambdaRat(num, den)


def sphere_P_on_one(ctx: SphereContext, N: int) -> LambdaPoly:
    """P_{2N}(lambda)(1) = (-1)^N (n/2)_N (lambda)_N, a polynomial."""
    if N == 0:
        return LambdaPoly([1])
    return Fraction((-1) ** N) * pochhammer(ctx.f, N) * pochhammer(LAMBDA, N)


def radial_oracle(ctx: SphereContext, order: int):
    """Coefficients a_{2k}(lambda), k = 0..order, of the radial eigenfunction.

    Solves -Delta u = lambda (n - lambda) u for u = sum_k a_k r^{lambda+k}
    with the warped-product radial Laplacian

        u -> r^{n+1} w^{-n} d/dr ( r^{1-n} w^{n} du/dr ),   w = 1 - r^2/4,

    via the recursion a_K K(2 lambda + K - n) = - sum_i c_i a_{K-1-i}
    (lambda + K - 1 - i), where c(r) = n w'/w. Independent of any closed
    form for T_{2N}(lambda)(1); odd coefficients are checked to vanish.
    """
    if order < 0 or order > MAX_RADIAL_ORDER:
        raise ValueError(f"radial order must lie in 0..{MAX_RADIAL_ORDER}")
    n = ctx.n
    kmax = 2 * order
    # c(r) = n w'/w = -(n/2) sum_m r^{2m+1} / 4^m, odd coefficients only
    c = {}
    for m in range(0, (kmax - 1) // 2 + 1):
        c[2 * m + 1] = -ctx.f / Fraction(4 ** m)
    a = [LambdaRat.const(1)]
    for K in range(1, kmax + 1):
        s = LambdaRat.const(0)
        for i, ci in c.items():
            if i > K - 1:
                break
            prev = a[K - 1 - i]
            if prev.is_zero():
                continue
            s = s + ci * prev * LambdaRat(LAMBDA + (K - 1 - i))
        den = LambdaPoly([Fraction(K * (K - n)), Fraction(2 * K)])  # K(2L + K - n)
        aK = -(s / den) if not s.is_zero() else LambdaRat.const(0)
        if K % 2 == 1 and not aK.is_zero():
            raise AssertionError(f"odd radial coefficient a_{K} is nonzero")
        a.append(aK)
    return [a[2 * k] for k in range(order + 1)]


def _direct_sums(ctx: SphereContext, N: int):
    """S0 = sum_j T*_{2j}(v_{2N-2j}), S1 = sum_j j T*_{2j}(v_{2N-2j}).

    On the sphere the families act on constants, so the starred sums use the
    T-values on 1 scaled by the constants v_{2N-2j}.
    """
    S0 = LambdaRat.const(0)
    S1 = LambdaRat.const(0)
    for j in range(N + 1):
        t = sphere_T_on_one(ctx, j) * sphere_v(ctx, N - j)
        S0 = S0 + t
        S1 = S1 + j * t
    return S0, S1


def _sum_closed(ctx: SphereContext, N: int) -> LambdaRat:
    f, n = ctx.f, ctx.n
    pref = Fraction((-1) ** N) * pochhammer(f - N + 1, N) / (4 ** N * math.factorial(N))
    num = (LAMBDA - n + 2 * N) * pochhammer(LAMBDA - n + 1, N - 1)
    return LambdaRat(pref * num, pochhammer(LAMBDA - f + 1, N))


def _weighted_closed(ctx: SphereContext, N: int) -> LambdaRat:
    f, n = ctx.f, ctx.n
    pref = Fraction((-1) ** (N - 1)) * pochhammer(f - N + 1, N) / \
        (4 ** N * math.factorial(N - 1))
    num = LAMBDA * pochhammer(LAMBDA - n + 1, N - 1)
    return LambdaRat(pref * num, pochhammer(LAMBDA - f + 1, N))


def sphere_sum_Tstar_v(ctx: SphereContext, N: int) -> LambdaRat:
    """Closed form of sum_j T*_{2j}(lambda)(v_{2N-2j}); checked against the
    direct sum before returning."""
    direct = _direct_sums(ctx, N)[0]
    closed = _sum_closed(ctx, N)
    if not (direct - closed).is_zero():
        raise AssertionError(f"sum-1 closed form disagrees with direct sum (n={ctx.n}, N={N})")
    return closed


def sphere_weighted_sum(ctx: SphereContext, N: int) -> LambdaRat:
    """Closed form of sum_j j T*_{2j}(lambda)(v_{2N-2j}), checked directly."""
    direct = _direct_sums(ctx, N)[1]
    closed = _weighted_closed(ctx, N)
    if not (direct - closed).is_zero():
        raise AssertionError(f"weighted sum closed form disagrees (n={ctx.n}, N={N})")
    return closed


def _shift_factor(ctx: SphereContext, N: int) -> LambdaPoly:
    """(lambda + n/2 - 2N + 1)_N as a polynomial."""
    return pochhammer(LAMBDA + ctx.f - 2 * N + 1, N)


def sphere_qres(ctx: SphereContext, N: int) -> LambdaPoly:
    """Residue polynomial Qres_{2N}(lambda) on the sphere.

    Product form (-1)^{N-1} prod_{j<N}(n/2-j) * lambda * prod_{j=1}^{N-1}
    (lambda-N-j), cross-checked against the defining assembly
    -2^{2N} N! (lambda+n/2-2N+1)_N * S0(lambda+n-2N).
    """
    f, n = ctx.f, ctx.n
    prod = LambdaPoly([1])
    for j in range(1, N):
        prod = prod * (LAMBDA - N - j)
    closed = Fraction((-1) ** (N - 1)) * pochhammer(f - N + 1, N) * LAMBDA * prod
    assembly = Fraction(-(4 ** N) * math.factorial(N)) * _shift_factor(ctx, N) * \
        _sum_closed(ctx, N).shift(n - 2 * N)
    if not assembly.is_polynomial():
        raise AssertionError(f"qres assembly is not polynomial (n={n}, N={N})")
    if not (assembly.as_poly() - closed).is_zero():
        raise AssertionError(f"qres product form disagrees with assembly (n={n}, N={N})")
    return closed


def sphere_v_poly(ctx: SphereContext, N: int) -> LambdaPoly:
    """V_{2N}(lambda) = (lambda+n/2-2N+1)_N sum_j (2N+2j) T*_{2j}(lambda+n-2N)(v).

    Degree is at most N-1; identically zero in the critical case 2N = n.
    """
    n = ctx.n
    S0 = _sum_closed(ctx, N).shift(n - 2 * N)
    S1 = _weighted_closed(ctx, N).shift(n - 2 * N)
    v = _shift_factor(ctx, N) * (2 * N * S0 + 2 * S1)
    if not v.is_polynomial():
        raise AssertionError(f"V-polynomial assembly is not polynomial (n={n}, N={N})")
    vp = v.as_poly()
    if vp.degree > N - 1:
        raise AssertionError(f"V-polynomial degree {vp.degree} exceeds {N - 1} (n={n}, N={N})")
    return vp


def claim_red_lhs(ctx: SphereContext, N: int) -> LambdaRat:
    """sum_j binom(n, N-j) (-1)^j (n/2)_j (lambda)_j / ((lambda-n/2+1)_j j!)."""
    f, n = ctx.f, ctx.n
    total = LambdaRat.const(0)
    for j in range(N + 1):
        coef = binomial(n, N - j) * Fraction((-1) ** j) * pochhammer(f, j) \
            / math.factorial(j)
        total = total + LambdaRat(coef * pochhammer(LAMBDA, j),
                                  pochhammer(LAMBDA - f + 1, j))
    return total


def claim_red_rhs(ctx: SphereContext, N: int) -> LambdaRat:
    """(n/2-N+1)_N / N! * (lambda-n+2N)(lambda-n+1)_{N-1} / (lambda-n/2+1)_N."""
    f, n = ctx.f, ctx.n
    pref = pochhammer(f - N + 1, N) / math.factorial(N)
    num = (LAMBDA - n + 2 * N) * pochhammer(LAMBDA - n + 1, N - 1)
    return LambdaRat(pref * num, pochhammer(LAMBDA - f + 1, N))


def sphere_Q(ctx: SphereContext, N: int) -> Fraction:
    """Q-curvature Q_{2N}(S^n), exact.

    Subcritical closed form (n/2)_N (n/2-N+1)_{N-1}; in the critical case
    2N = n the value is derived through the holographic route
    n v_n = 2n c_{n/2} Q_n and checked against the continuation.
    """
    f = ctx.f
    if N < 1:
        raise ValueError("N must be at least 1")
    closed = pochhammer(f, N) * pochhammer(f - N + 1, N - 1)
    if 2 * N == ctx.n:
        crit = sphere_v(ctx, N) / (2 * master_constant(N))
        if crit != closed:
            raise AssertionError(f"critical sphere Q disagrees with continuation (n={ctx.n})")
        return crit
    return closed


def _exact_report(check_id, equation, params, ok, details=None) -> CheckReport:
    return CheckReport(id=check_id, equation=equation, params=params,
                       passed=bool(ok), exact=True, details=details or {})


def sphere_checks(ctx: SphereContext, N: int):
    """All exact identity checks for one (n, N) pair."""
    n, f = ctx.n, ctx.f
    tag = {"n": n, "N": N}
    out = []

    S0d, S1d = _direct_sums(ctx, N)
    S0c, S1c = _sum_closed(ctx, N), _weighted_closed(ctx, N)
    out.append(_exact_report(f"sphere-sum1[n={n},N={N}]", "sum-1", tag,
                             (S0d - S0c).is_zero()))
    out.append(_exact_report(f"sphere-weighted[n={n},N={N}]", "weighted-sum", tag,
                             (S1d - S1c).is_zero()))

    # master-3: lambda N S0 + (lambda - n + 2N) S1 = 0
    m3 = LambdaRat(LAMBDA) * N * S0d + LambdaRat(LAMBDA - n + 2 * N) * S1d
    out.append(_exact_report(f"sphere-master3[n={n},N={N}]", "master-3", tag,
                             m3.is_zero()))

    # master-2: (lambda-n+2N)(2N S0 + 2 S1) = -2N(n-2N) S0
    m2l = LambdaRat(LAMBDA - n + 2 * N) * (2 * N * S0d + 2 * S1d)
    m2r = Fraction(-2 * N * (n - 2 * N)) * S0d
    out.append(_exact_report(f"sphere-master2[n={n},N={N}]", "master-2", tag,
                             (m2l - m2r).is_zero()))

    qres = sphere_qres(ctx, N)
    vpoly = sphere_v_poly(ctx, N)

    # master-1: 2^{2N-2} (N-1)! lambda V(lambda) = (n/2 - N) Qres(lambda)
    m1l = Fraction(4 ** (N - 1) * math.factorial(N - 1)) * LAMBDA * vpoly
    m1r = (f - N) * qres
    out.append(_exact_report(f"sphere-master1[n={n},N={N}]", "master-1", tag,
                             (m1l - m1r).is_zero()))

    out.append(_exact_report(f"sphere-qres0[n={n},N={N}]", "qres-vanishes-at-0", tag,
                             qres(Fraction(0)) == 0))
    out.append(_exact_report(f"sphere-vdeg[n={n},N={N}]", "v-poly-degree", tag,
                             vpoly.degree <= N - 1,
                             {"degree": vpoly.degree}))
    if 2 * N == n:
        out.append(_exact_report(f"sphere-vcrit[n={n},N={N}]", "v-poly-critical-zero",
                                 tag, vpoly.is_zero()))

    # claim-red, both directly and through the 3F2 form (the latter only
    # where its lower parameter n-N+1 stays off the nonpositive integers)
    lhs = claim_red_lhs(ctx, N)
    rhs = claim_red_rhs(ctx, N)
    ok = (lhs - rhs).is_zero()
    if n - N + 1 > 0:
        hyp = binomial(n, N) * hyper_terminating(
            HyperSpec((f, LAMBDA, Fraction(-N)), (LAMBDA - f + 1, Fraction(n - N + 1))))
        ok = ok and (LambdaRat(1) * hyp - lhs).is_zero()
    out.append(_exact_report(f"sphere-claimred[n={n},N={N}]", "claim-red", tag, ok))

    # P on 1 versus T on 1 through the prefactor relation
    pref = Fraction(4 ** N * math.factorial(N) * (-1) ** N) * pochhammer(LAMBDA - f + 1, N)
    rel = sphere_T_on_one(ctx, N) * pref - sphere_P_on_one(ctx, N)
    out.append(_exact_report(f"sphere-TP[n={n},N={N}]", "T-P-prefactor", tag,
                             rel.is_zero()))
    return out


def sphere_suite(n_values, nmax: int = 6):
    """Exact sphere verification across dimensions; returns CheckReports."""
    reports = []
    for n in n_values:
        ctx = SphereContext(n)
        cap = min(n // 2, nmax) if n % 2 == 0 else nmax
        cap = min(cap, MAX_RADIAL_ORDER)
        t0 = time.perf_counter()
        radial = radial_oracle(ctx, cap)
        ok = all((radial[j] - sphere_T_on_one(ctx, j)).is_zero() for j in range(cap + 1))
        reports.append(CheckReport(
            id=f"sphere-radial[n={n}]", equation="claim",
            params={"n": n, "orders": cap}, passed=ok, exact=True,
            seconds=time.perf_counter() - t0))
        for N in range(1, cap + 1):
            t0 = time.perf_counter()
            checks = sphere_checks(ctx, N)
            dt = time.perf_counter() - t0
            for c in checks:
                c.seconds = dt / len(checks)
            reports.extend(checks)
    return reports


def sphere_quantities(n_values) -> list:
    """Named exact values for reporting: Q-curvatures and v-coefficients."""
    out = []
    for n in n_values:
        ctx = SphereContext(n)
        vals = {}
        for N in range(1, n // 2 + 1):
            vals[f"Q{2 * N}"] = sphere_Q(ctx, N)
        for N in range(1, min(n, 4) + 1):
            vals[f"v{2 * N}"] = sphere_v(ctx, N)
        out.append(QuantitiesReport(id=f"sphere[n={n}]", values=vals))
    return out
