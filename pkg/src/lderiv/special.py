"""Special functions and prime sums underlying the L-function machinery.

Everything here is IEEE double with explicit error tracking.  The Hurwitz
zeta continuation is Euler-Maclaurin: a truncated sum, the two closing
terms, and Bernoulli corrections, with (N, K) chosen per point so that the
standard remainder bound plus a rounding estimate meets the target.  The
derivative in s comes from termwise differentiation of the same expansion;
a Cauchy-circle quadrature of the undifferentiated routine is kept as an
independent cross-check of that route.

Digamma and log-gamma use recurrence shifts to Re(z) >= 10 followed by the
asymptotic Bernoulli series; both are valid on the cut plane C \\ (-inf, 0].
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, PoleError, PrecisionLossError
from .numtypes import ComplexValue, TailBoundedSum
from .report import VerificationReport

__all__ = [
    "EULER_GAMMA",
    "digamma",
    "log_gamma",
    "digamma_lower_bound_check",
    "hurwitz_zeta",
    "hurwitz_zeta_ds",
    "hurwitz_zeta_cauchy_ds",
    "log_integral",
    "primes_up_to",
    "prime_tail_bound",
    "prime_log_sum",
    "log_abs_cos_mean",
    "log_abs_cos_mean_quad",
]

EULER_GAMMA = float(np.euler_gamma)

_EPS = 2.0 ** -52


# ----------------------------------------------------------------------
# Bernoulli numbers

@lru_cache(maxsize=None)
def _bernoulli_fraction(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(n):
        acc += math.comb(n + 1, j) * _bernoulli_fraction(j)
    return -acc / (n + 1)


@lru_cache(maxsize=None)
def _em_coef(j: int) -> float:
    """B_{2j} / (2j)! as a float; the Euler-Maclaurin correction weight."""
    return float(_bernoulli_fraction(2 * j) / math.factorial(2 * j))


@lru_cache(maxsize=None)
def _bernoulli_float(n: int) -> float:
    return float(_bernoulli_fraction(n))


# ----------------------------------------------------------------------
# digamma / log-gamma

_PSI_SHIFT = 10.0
# B_{2n}/(2n) for the psi asymptotic series
_PSI_COEFS = tuple(_bernoulli_fraction(2 * n) / (2 * n) for n in range(1, 9))
_PSI_COEFS = tuple(float(c) for c in _PSI_COEFS)
# B_{2n}/((2n)(2n-1)) for the log-gamma Stirling series
_LGAMMA_COEFS = tuple(
    float(_bernoulli_fraction(2 * n) / ((2 * n) * (2 * n - 1))) for n in range(1, 9)
)


def _check_pole(z: complex, what: str) -> None:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise PoleError(f"{what} pole at z = {z.real:.0f}")


def _digamma(z: complex) -> complex:
    z = complex(z)
    _check_pole(z, "digamma")
    acc = 0j
    w = z
    while w.real < _PSI_SHIFT:
        acc += 1.0 / w
        w += 1.0
    w2 = 1.0 / (w * w)
    series = 0j
    p = w2
    for c in _PSI_COEFS:
        series += c * p
        p *= w2
    return cmath.log(w) - 0.5 / w - series - acc


def digamma(z: complex) -> ComplexValue:
    """Gamma'/Gamma(z) on C minus the poles {0, -1, -2, ...}.

    Absolute error stays below ~1e-12 for |z| <= 1e4 away from poles.
    """
    z = complex(z)
    val = _digamma(z)
    # rounding from the recurrence shift grows with the number of terms
    nshift = max(0, int(_PSI_SHIFT - z.real) + 1)
    err = 1e-14 * (1.0 + abs(val)) + 4 * _EPS * nshift
    return ComplexValue(val, err)


def log_gamma(z: complex) -> complex:
    """log Gamma(z), analytic on C \\ (-inf, 0] (not the principal log of Gamma)."""
    z = complex(z)
    _check_pole(z, "log-gamma")
    acc = 0j
    w = z
    while w.real < _PSI_SHIFT:
        acc += cmath.log(w)
        w += 1.0
    w2 = 1.0 / (w * w)
    series = 0j
    p = 1.0 / w
    for c in _LGAMMA_COEFS:
        series += c * p
        p *= w2
    out = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2 * math.pi) + series
    return out - acc


def digamma_lower_bound_check(z: complex) -> VerificationReport:
    """Check Re psi(z) >= log|z| - pi/(2|Im z|) and report the margin."""
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("digamma lower bound requires Im z != 0")
    lhs = _digamma(z).real
    rhs = math.log(abs(z)) - math.pi / (2.0 * abs(z.imag))
    margin = lhs - rhs
    return VerificationReport(
        name="digamma_lower_bound",
        params={"re": z.real, "im": z.imag},
        measured=lhs,
        bound=rhs,
        margin=margin,
        passed=margin > 0.0,
    )


# ----------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin

def _em_remainder(s: complex, n_terms: int, K: int, x_min: float) -> float:
    """Standard Euler-Maclaurin remainder bound after K correction terms.

    |R_K| <= |B_{2K+2}|/(2K+2)! * |(s)_{2K+1}| * x^(-sigma-2K-1)
             * max(1, |s+2K+1|/(sigma+2K+1)),  valid for sigma+2K+1 > 0.
    """
    sigma = s.real
    if sigma + 2 * K + 1 <= 0:
        return math.inf
    log_poch = 0.0
    for i in range(2 * K + 1):
        f = abs(s + i)
        if f == 0.0:
            return 0.0
        log_poch += math.log(f)
    log_r = (
        math.log(abs(_em_coef(K + 1)))
        + log_poch
        + (-sigma - 2 * K - 1) * math.log(x_min)
        + math.log(max(1.0, abs(s + 2 * K + 1) / (sigma + 2 * K + 1)))
    )
    return math.exp(log_r) if log_r < 700 else math.inf


def _choose_em_params(s: complex, a_min: float, tol: float) -> tuple[int, int, float]:
    """Pick (N, K) whose remainder bound meets tol, minimizing the rounding
    estimate among those; otherwise minimize remainder + rounding."""
    sigma, t = s.real, abs(s.imag)
    k_min = max(6, math.ceil((3.0 - sigma) / 2.0))
    n_base = max(1, math.ceil(1.3 * t))
    if sigma >= 0:
        n_cands = sorted({max(20, n_base), max(36, n_base), max(64, 2 * n_base), max(110, 2 * n_base)})
    else:
        n_cands = sorted({max(2, n_base), max(4, n_base), max(6, n_base), max(8, n_base),
                          max(12, n_base), max(16, n_base), max(24, n_base),
                          max(32, n_base), max(64, 2 * n_base)})
    best_feasible = None
    best_any = None
    for K in (k_min, k_min + 6, k_min + 14, k_min + 24):
        if K > 59:
            continue
        for N in n_cands:
            x_min = N + a_min
            rem = _em_remainder(s, N, K, x_min)
            # rounding ~ eps * (number of terms) * (largest term magnitude)
            peak = x_min ** (-sigma) if sigma < 0 else 1.0
            rnd = 8 * _EPS * (N + K + 4) * max(1.0, peak)
            if rem <= tol and (best_feasible is None or rnd < best_feasible[2]):
                best_feasible = (N, K, rnd)
            if best_any is None or rem + rnd < best_any[2]:
                best_any = (N, K, rem + rnd)
    return best_feasible if best_feasible is not None else best_any


def _em_eval(s: complex, a: np.ndarray, N: int, K: int, want_ds: bool):
    """Euler-Maclaurin evaluation of zeta(s, a) (and d/ds) for an array of a.

    Returns (vals, dvals, abs_accum) where abs_accum tracks the summed
    magnitudes for the rounding estimate; dvals is None unless want_ds.
    """
    a = np.asarray(a, dtype=float)
    x = N + a
    logx = np.log(x)
    if N > 0:
        base = np.arange(N)[None, :] + a[:, None]
        logb = np.log(base)
        terms = np.exp(-s * logb)
        psum = terms.sum(axis=1)
        absacc = np.abs(terms).sum(axis=1)
        dsum = -(logb * terms).sum(axis=1) if want_ds else None
    else:
        psum = np.zeros_like(a, dtype=complex)
        absacc = np.zeros_like(a)
        dsum = np.zeros_like(a, dtype=complex) if want_ds else None

    xp1ms = np.exp((1.0 - s) * logx)
    main1 = xp1ms / (s - 1.0)
    xpms = np.exp(-s * logx)
    main2 = 0.5 * xpms
    vals = psum + main1 + main2
    absacc = absacc + np.abs(main1) + np.abs(main2)
    if want_ds:
        dmain1 = xp1ms * (-logx / (s - 1.0) - 1.0 / (s - 1.0) ** 2)
        dmain2 = -0.5 * logx * xpms
        dvals = dsum + dmain1 + dmain2
    else:
        dvals = None

    # Bernoulli corrections: coef_j * (s)_{2j-1} * x^(-s-2j+1)
    P = s  # (s)_1
    dP = 1.0 + 0j
    xpow = np.exp((-s - 1.0) * logx)
    x2 = x * x
    for j in range(1, K + 1):
        c = _em_coef(j)
        term = c * P * xpow
        vals = vals + term
        absacc = absacc + np.abs(term)
        if want_ds:
            dvals = dvals + c * xpow * (dP - logx * P)
        u = s + (2 * j - 1)
        v = s + 2 * j
        dP = dP * (u * v) + P * (u + v)
        P = P * (u * v)
        xpow = xpow / x2
    return vals, dvals, absacc


def _hurwitz_core(s: complex, a: np.ndarray, want_ds: bool, tol: float):
    """(vals, dvals, errs, errs_ds, rem): engine with per-point error estimates.

    errs combine the proven remainder bound with a conservative rounding
    term; rem is the remainder bound alone (what the (N, K) policy controls).
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("Hurwitz zeta pole at s = 1")
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a <= 0.0) or np.any(a > 1.0):
        raise DomainError("shift parameter a must lie in (0, 1]")
    N, K, _ = _choose_em_params(s, float(a.min()), tol)
    vals, dvals, absacc = _em_eval(s, a, N, K, want_ds)
    rem = _em_remainder(s, N, K, N + float(a.min()))
    errs = rem + 8 * _EPS * absacc
    if want_ds:
        # differentiated series: remainder picks up roughly a log x factor
        errs_ds = rem * (math.log(N + 1.0) + 2.0 * (2 * K + 1)) + 8 * _EPS * absacc * (
            math.log(N + 2.0) + 1.0
        )
        return vals, dvals, errs, errs_ds, rem
    return vals, None, errs, None, rem


def _em_remainder_grid(sigma_min: float, s_abs_max: float, N: int, K: int, x_min: float) -> float:
    """Conservative remainder bound valid for every s in a grid chunk."""
    if sigma_min + 2 * K + 1 <= 0:
        return math.inf
    log_poch = sum(math.log(i + s_abs_max) for i in range(2 * K + 1))
    log_r = (
        math.log(abs(_em_coef(K + 1)))
        + log_poch
        + (-sigma_min - 2 * K - 1) * math.log(x_min)
        + math.log(max(1.0, (s_abs_max + 2 * K + 1) / (sigma_min + 2 * K + 1)))
    )
    return math.exp(log_r) if log_r < 700 else math.inf


def _em_eval_grid(s: np.ndarray, a: np.ndarray, N: int, K: int, want_ds: bool):
    """Grid variant of _em_eval: s of shape (C,), a of shape (A,).

    Returns (vals, dvals) of shape (C, A).  Used by the zero-scan grid
    evaluators, which only operate at sigma > 0, so no rounding blow-up.
    """
    s = np.asarray(s, dtype=complex)[:, None]
    a = np.asarray(a, dtype=float)[None, :]
    x = N + a
    logx = np.log(x)
    base = np.arange(N)[None, :] + a.T  # (A, N)
    logb = np.log(base)
    terms = np.exp(-s[:, :, None] * logb[None, :, :])  # (C, A, N)
    psum = terms.sum(axis=2)
    dsum = -(logb[None, :, :] * terms).sum(axis=2) if want_ds else None
    del terms

    xp1ms = np.exp((1.0 - s) * logx)
    main1 = xp1ms / (s - 1.0)
    xpms = np.exp(-s * logx)
    vals = psum + main1 + 0.5 * xpms
    if want_ds:
        dvals = dsum + xp1ms * (-logx / (s - 1.0) - (s - 1.0) ** -2) - 0.5 * logx * xpms
    else:
        dvals = None

    P = s.copy()
    dP = np.ones_like(s)
    xpow = np.exp((-s - 1.0) * logx)
    x2 = x * x
    for j in range(1, K + 1):
        c = _em_coef(j)
        vals = vals + c * P * xpow
        if want_ds:
            dvals = dvals + c * xpow * (dP - logx * P)
        u = s + (2 * j - 1)
        v = s + 2 * j
        dP = dP * (u * v) + P * (u + v)
        P = P * (u * v)
        xpow = xpow / x2
    return vals, dvals


def hurwitz_grid(s: np.ndarray, a: np.ndarray, want_ds: bool = False, tol: float = 1e-10):
    """Vectorized zeta(s, a) over a grid of s (all with Re s > 0) and a row of a.

    Returns (vals, dvals, err) with err one conservative scalar bound for
    the whole chunk.
    """
    s = np.asarray(s, dtype=complex).ravel()
    a = np.asarray(a, dtype=float).ravel()
    sigma_min = float(s.real.min())
    if sigma_min <= 0.0:
        raise DomainError("hurwitz_grid serves only Re s > 0")
    if np.any(np.abs(s - 1.0) < 1e-12):
        raise PoleError("grid contains the pole s = 1")
    s_abs_max = float(np.abs(s).max())
    t_max = float(np.abs(s.imag).max())
    a_min = float(a.min())
    N = max(20, math.ceil(1.3 * t_max))
    K = 25
    x_min = N + a_min
    rem = _em_remainder_grid(sigma_min, s_abs_max, N, K, x_min)
    while rem > tol and N < 4000:
        N = int(N * 1.6) + 4
        rem = _em_remainder_grid(sigma_min, s_abs_max, N, K, N + a_min)
    vals, dvals = _em_eval_grid(s, a, N, K, want_ds)
    rem_out = rem * (1.0 if not want_ds else math.log(N + 2.0) + 2 * (2 * K + 1))
    ref = np.abs(dvals if want_ds else vals)
    errs = rem_out + 16 * _EPS * (N + K) * (1.0 + ref)
    return vals, dvals, errs


def hurwitz_zeta(s: complex, a: float) -> ComplexValue:
    """zeta(s, a) for a in (0, 1], s != 1, by Euler-Maclaurin continuation.

    (N, K) are chosen so the series remainder bound meets 1e-12 (1 + |zeta|);
    the returned err adds a conservative rounding estimate on top.
    """
    vals, _, errs, _, rem = _hurwitz_core(s, [a], False, 1e-13)
    val, err = complex(vals[0]), float(errs[0])
    target = 1e-12 * (1.0 + abs(val))
    if rem > target:
        vals, _, errs, _, rem = _hurwitz_core(s, [a], False, target)
        val, err = complex(vals[0]), float(errs[0])
        if rem > target:
            raise PrecisionLossError(f"hurwitz_zeta({s}, {a}) target unreachable", rem)
    return ComplexValue(val, err)


def hurwitz_zeta_ds(s: complex, a: float) -> ComplexValue:
    """d/ds zeta(s, a), termwise-differentiated Euler-Maclaurin."""
    vals, dvals, errs, errs_ds, rem = _hurwitz_core(s, [a], True, 1e-13)
    dval, derr = complex(dvals[0]), float(errs_ds[0])
    target = 1e-11 * (1.0 + abs(dval))
    if rem > target:
        vals, dvals, errs, errs_ds, rem = _hurwitz_core(s, [a], True, target / 50.0)
        dval, derr = complex(dvals[0]), float(errs_ds[0])
        if rem > target:
            raise PrecisionLossError(f"hurwitz_zeta_ds({s}, {a}) target unreachable", rem)
    return ComplexValue(dval, derr)


def hurwitz_zeta_cauchy_ds(
    s: complex, a: float, radius: float = 0.5, nodes: int = 128
) -> ComplexValue:
    """d/ds zeta(s, a) via Cauchy's integral formula on |w - s| = radius.

    Trapezoidal quadrature on the circle; independent of the differentiated
    series and used to cross-check it.
    """
    s = complex(s)
    if abs(s - 1.0) <= radius + 1e-9:
        raise DomainError("Cauchy circle would touch the pole at s = 1")
    acc = 0j
    err = 0.0
    for mnode in range(nodes):
        theta = 2.0 * math.pi * mnode / nodes
        w = cmath.exp(1j * theta)
        fv = hurwitz_zeta(s + radius * w, a)
        acc += fv.value * w.conjugate()
        err += fv.err
    return ComplexValue(acc / (radius * nodes), err / (radius * nodes) + 1e-13 * abs(acc))


# ----------------------------------------------------------------------
# logarithmic integral

def log_integral(x: float) -> float:
    """li(x) = integral from 2 to x of du/log(u), for x >= 2."""
    from scipy.integrate import quad

    if x < 2.0:
        raise DomainError("log_integral requires x >= 2")
    if x == 2.0:
        return 0.0
    val, est = quad(lambda u: 1.0 / math.log(u), 2.0, x, epsabs=1e-12, epsrel=1e-12, limit=200)
    if est > 1e-10:
        raise PrecisionLossError("log_integral quadrature too coarse", est)
    return val


# ----------------------------------------------------------------------
# primes and prime log-sums

@lru_cache(maxsize=8)
def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n by Eratosthenes (numpy bitmap)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def prime_tail_bound(sigma: float, N: int) -> float:
    """Upper bound for sum_{p > N} log(p)/(p^sigma - 1).

    Equals N/(N^sigma - 1) * (log N/(sigma-1) + 1/(sigma-1)^2); proved by
    comparison with the integral of log(u) u^(-sigma).
    """
    if sigma <= 1.0:
        raise DomainError("tail bound requires sigma > 1")
    if N < 3 or N != int(N):
        raise DomainError("tail bound requires integer N >= 3")
    N = int(N)
    return N / (N ** sigma - 1.0) * (math.log(N) / (sigma - 1.0) + (sigma - 1.0) ** -2)


def prime_log_sum(sigma: float, exclude_divisors_of: int = 1, N: int = 100000) -> TailBoundedSum:
    """sum over primes p <= N, p not dividing q, of log(p)/(p^sigma - 1), with tail."""
    tail = prime_tail_bound(sigma, N)  # validates sigma, N
    ps = primes_up_to(N)
    q = exclude_divisors_of
    if q > 1:
        ps = ps[q % ps != 0]
    pf = ps.astype(float)
    value = float(np.sum(np.log(pf) / (pf ** sigma - 1.0)))
    return TailBoundedSum(value=value, tail_bound=tail, cutoff=N)


# ----------------------------------------------------------------------
# the log|a + b cos(theta)| mean (Jensen closed form + quadrature)

def log_abs_cos_mean(a: float, b: float) -> float:
    """(1/2pi) * integral of log|a + b cos(theta)|: closed form via Jensen.

    log((a + sqrt(a^2-b^2))/2) when a > b, else log(b/2).
    """
    if a <= 0.0 or b <= 0.0:
        raise DomainError("log_abs_cos_mean requires a > 0 and b > 0")
    if a > b:
        return math.log((a + math.sqrt(a * a - b * b)) / 2.0)
    return math.log(b / 2.0)


def log_abs_cos_mean_quad(a: float, b: float) -> float:
    """Same mean by direct quadrature, splitting at the log singularity."""
    from scipy.integrate import quad

    if a <= 0.0 or b <= 0.0:
        raise DomainError("log_abs_cos_mean requires a > 0 and b > 0")
    points = None
    if a <= b:
        points = [math.acos(-a / b)]
    out = quad(
        lambda th: math.log(abs(a + b * math.cos(th))),
        0.0, math.pi, points=points, epsabs=1e-11, epsrel=1e-11, limit=800,
        full_output=True,
    )
    val, est = out[0], out[1]
    if est > 1e-9:
        raise PrecisionLossError(f"log-mean quadrature at (a={a}, b={b}) too coarse", est)
    return val / math.pi
