"""Evaluation of L(s,chi), L'(s,chi), the functional-equation factor, and
the normalized derivative G(s,chi) = -m^s/(chi(m) log m) * L'(s,chi).

Continuation strategy (route="auto"):

  Re s >= 2   direct Dirichlet series, truncated where the Abel-summation
              tail bound meets the accuracy target (falls back to the
              Hurwitz route if that would need too many terms);
  0 <= Re s < 2   q^(-s) * sum_a chi(a) zeta(s, a/q) via Euler-Maclaurin
              Hurwitz zeta;
  Re s < 0    the functional equation L(s,chi) = F(s,chi) L(1-s, conj chi),
              with L(1-s) evaluated in the half-plane Re >= 1 by the two
              routes above.

The Hurwitz route degrades in IEEE double as Re s decreases (the
Euler-Maclaurin pieces grow like (N+a)^|sigma| while the value does not,
so digits cancel); switching to the functional equation below Re s = 0
keeps every evaluation at the 1e-9 * (1 + |L|) error contract.  Tests
cross-check the two routes on the overlap band where both are accurate.

Every route can be forced explicitly (route="series" | "hurwitz" | "fe")
so dual-route comparisons never silently collapse into one code path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .characters import DirichletCharacter, gauss_sum
from .errors import DomainError, NumericalError, PoleError, PrecisionLossError
from .numtypes import ComplexValue
from .special import (
    _digamma,
    _hurwitz_core,
    hurwitz_grid,
    log_gamma,
    primes_up_to,
    prime_tail_bound,
)

__all__ = [
    "LPoint",
    "FunctionalEquationFactor",
    "eval_L",
    "eval_Lprime",
    "eval_L_point",
    "eval_F",
    "eval_logderiv_via_fteq",
    "eval_G",
    "gest_bound",
    "re_logderiv_critical",
    "logderiv_euler_product",
    "eval_L_grid",
    "eval_Lprime_grid",
    "cauchy_derivative",
    "clear_cache",
]

# evaluation window; beyond it the double-precision error contract is void
SIGMA_MAX = 81.0
T_MAX = 101.0
Q_MAX = 1000

NOISE_FLOOR = 1e-6  # |L| <= floor * (1 + |L'|) flags a near-zero of L

_SERIES_TERM_CAP = 3_000_000


@dataclass(frozen=True)
class LPoint:
    """L and L' at one point, with the log-derivative when it is usable."""

    s: complex
    L: ComplexValue
    Lprime: ComplexValue
    logderiv: Optional[ComplexValue]
    err: float

    @property
    def near_zero_of_L(self) -> bool:
        return self.logderiv is None


@dataclass(frozen=True)
class FunctionalEquationFactor:
    """F(s,chi) with L(s,chi) = F(s,chi) L(1-s, conj chi), plus F'/F and eps(chi)."""

    s: complex
    F: ComplexValue
    F_logderiv: ComplexValue
    epsilon: ComplexValue


# ----------------------------------------------------------------------
# caches

_POINT_CACHE: dict = {}
_EPSILON_CACHE: dict = {}
_CONJ_CACHE: dict = {}
_CACHE_CAP = 600_000


def clear_cache() -> None:
    _POINT_CACHE.clear()


def _cache_put(key, val):
    if len(_POINT_CACHE) >= _CACHE_CAP:
        _POINT_CACHE.clear()
    _POINT_CACHE[key] = val


def _conj_char(chi: DirichletCharacter) -> DirichletCharacter:
    key = (chi.q, chi.label)
    chib = _CONJ_CACHE.get(key)
    if chib is None:
        chib = chi.conjugate()
        _CONJ_CACHE[key] = chib
    return chib


def _check_window(chi: DirichletCharacter, s: complex) -> None:
    if chi.q > Q_MAX or abs(s.real) > SIGMA_MAX or abs(s.imag) > T_MAX:
        raise PrecisionLossError(
            f"point s={s}, q={chi.q} outside the supported window", math.inf
        )


# ----------------------------------------------------------------------
# direct Dirichlet series (Re s >= 2)

def _series_cutoff(chi: DirichletCharacter, s: complex, with_log: bool, tol: float) -> int:
    """Smallest N with the Abel tail bound below tol (see module tests)."""
    sigma = s.real
    H = 2.0 * chi.max_partial_sum + 1e-9
    if with_log:
        n = 100.0
        for _ in range(4):
            c = H * (1.0 / sigma + abs(s) * (math.log(n) / sigma + sigma ** -2))
            n = (c / tol) ** (1.0 / sigma)
        return int(n) + 2
    c = H * abs(s) / sigma
    return int((c / tol) ** (1.0 / sigma)) + 2


def _series_tail_bound(chi: DirichletCharacter, s: complex, with_log: bool, N: int) -> float:
    sigma = s.real
    H = 2.0 * chi.max_partial_sum + 1e-9
    if with_log:
        return H * N ** -sigma * (1.0 / sigma + abs(s) * (math.log(N) / sigma + sigma ** -2))
    return H * abs(s) / sigma * N ** -sigma


def _eval_series(chi: DirichletCharacter, s: complex, deriv: bool) -> ComplexValue:
    """sum chi(n) n^-s  (or -sum chi(n) log n n^-s), certified Abel tail."""
    if s.real < 1.5:
        raise DomainError("direct series route needs Re s >= 1.5")
    tol = 3e-10
    N = _series_cutoff(chi, s, deriv, tol)
    if N > _SERIES_TERM_CAP:
        raise PrecisionLossError("direct series would need too many terms", math.nan)
    vals = chi.values_array()
    total = 0j
    absacc = 0.0
    for start in range(1, N + 1, 400_000):
        stop = min(N + 1, start + 400_000)
        n = np.arange(start, stop, dtype=float)
        logn = np.log(n)
        terms = vals[np.arange(start, stop) % chi.q] * np.exp(-s * logn)
        if deriv:
            terms = terms * (-logn)
        total += complex(terms.sum())
        absacc += float(np.abs(terms).sum())
    err = _series_tail_bound(chi, s, deriv, N) + 8e-16 * absacc
    return ComplexValue(total, err)


# ----------------------------------------------------------------------
# Hurwitz route (0 <= Re s < 2, also used on 1 < Re(1-s) < 2 by the FE route)

def _coprime_residues(chi: DirichletCharacter):
    key = (chi.q, chi.label, "resid")
    got = _EPSILON_CACHE.get(key)
    if got is None:
        idx = np.array([a for a in range(1, chi.q + 1) if chi.exponents[a % chi.q] is not None])
        weights = chi.values_array()[idx % chi.q]
        got = (idx.astype(float) / chi.q, weights)
        _EPSILON_CACHE[key] = got
    return got


def _eval_hurwitz(chi: DirichletCharacter, s: complex, deriv: bool) -> ComplexValue:
    """q^(-s) sum_a chi(a) zeta(s, a/q), differentiated termwise if deriv."""
    a, w = _coprime_residues(chi)
    vals, dvals, errs, errs_ds, _rem = _hurwitz_core(s, a, deriv, 1e-13)
    qps = cmath.exp(-s * math.log(chi.q))
    zsum = complex(np.dot(w, vals))
    if deriv:
        out = qps * (complex(np.dot(w, dvals)) - math.log(chi.q) * zsum)
        err = abs(qps) * (
            float(np.sum(errs_ds)) + math.log(chi.q) * float(np.sum(errs))
        )
    else:
        out = qps * zsum
        err = abs(qps) * float(np.sum(errs))
    return ComplexValue(out, err + 1e-15 * abs(out))


# ----------------------------------------------------------------------
# functional-equation factor

def _epsilon(chi: DirichletCharacter) -> ComplexValue:
    key = (chi.q, chi.label)
    eps = _EPSILON_CACHE.get(key)
    if eps is None:
        tau = gauss_sum(chi)
        eps_val = tau.value / (1j ** chi.kappa * math.sqrt(chi.q))
        eps = ComplexValue(eps_val, tau.err / math.sqrt(chi.q))
        _EPSILON_CACHE[key] = eps
    return eps


def _cot(w: complex) -> complex:
    if w.imag < 0:
        return _cot(w.conjugate()).conjugate()
    if w.imag > 20.0:
        e = cmath.exp(2j * w)
        return 1j * (e + 1.0) / (e - 1.0)
    return cmath.cos(w) / cmath.sin(w)


def _F_pieces(chi: DirichletCharacter, s: complex):
    """(F, F', F'/F) as ComplexValues; stable on both half-planes.

    For Re s <= 1/2:  F = eps 2^s pi^(s-1) q^(1/2-s) sin(pi(s+kappa)/2) Gamma(1-s),
    assembled in log space so no intermediate overflows.  For Re s > 1/2 the
    reflection Gamma(1-s) = pi / (sin(pi s) Gamma(s)) gives
    F = eps 2^s pi^s q^(1/2-s) / (2 Gamma(s) trig(pi s/2)) with trig = cos
    for even chi and sin for odd chi, whose poles are explicit.
    """
    eps = _epsilon(chi)
    q, kappa = chi.q, chi.kappa
    leps = 1j * cmath.phase(eps.value)
    lq = math.log(q)
    l2pi_over_q = math.log(2.0 * math.pi / q)
    if s.real <= 0.5:
        w = cmath.pi * (s + kappa) / 2.0
        lbase = leps + s * math.log(2.0) + (s - 1.0) * math.log(math.pi) + (0.5 - s) * lq
        lgam = log_gamma(1.0 - s)
        sv = cmath.sin(w)
        F = 0j if sv == 0 else cmath.exp(lbase + lgam + cmath.log(sv))
        psi1ms = _digamma(1.0 - s)
        bracket = (l2pi_over_q - psi1ms) * sv + (cmath.pi / 2.0) * cmath.cos(w)
        Fp = 0j if bracket == 0 else cmath.exp(lbase + lgam + cmath.log(bracket))
        if sv == 0:
            logderiv = complex(math.inf, 0.0)
        else:
            logderiv = l2pi_over_q + (cmath.pi / 2.0) * _cot(w) - psi1ms
    else:
        w = cmath.pi * s / 2.0
        trig = cmath.cos(w) if kappa == 0 else cmath.sin(w)
        if trig == 0:
            raise PoleError(f"F(s,chi) pole at s = {s}")
        lbase = leps + s * math.log(2.0 * math.pi) + (0.5 - s) * lq
        F = cmath.exp(lbase - log_gamma(s) - cmath.log(2.0 * trig))
        dtrig_over = -cmath.tan(w) if kappa == 0 else _cot(w)
        logderiv = l2pi_over_q - _digamma(s) - (cmath.pi / 2.0) * dtrig_over
        Fp = F * logderiv
    errF = 5e-13 * abs(F) + eps.err * abs(F)
    errFp = 5e-13 * abs(Fp) + eps.err * abs(Fp)
    return (
        ComplexValue(F, errF),
        ComplexValue(Fp, errFp),
        ComplexValue(logderiv, 1e-12 * (1.0 + abs(logderiv))),
    )


def eval_F(chi: DirichletCharacter, s: complex) -> FunctionalEquationFactor:
    """The asymmetric functional-equation factor, its log-derivative, and eps(chi)."""
    s = complex(s)
    _check_window(chi, s)
    if s.imag == 0.0 and s.real >= 1.0 and s.real == round(s.real):
        if (int(s.real) + chi.kappa) % 2 == 1:
            raise PoleError(f"F(s,chi) pole at s = {int(s.real)} (Gamma pole, no sin cancellation)")
    F, Fp, logderiv = _F_pieces(chi, s)
    return FunctionalEquationFactor(s=s, F=F, F_logderiv=logderiv, epsilon=_epsilon(chi))


# ----------------------------------------------------------------------
# the evaluators

def _eval_upper(chi: DirichletCharacter, s: complex, deriv: bool) -> ComplexValue:
    """Route for Re s >= 1: series when affordable, else Hurwitz.

    The Euler-Maclaurin route is both cheaper and tighter once the certified
    series truncation would exceed ~50k terms (sigma near 2 with |s| large).
    """
    if s.real >= 2.0 and _series_cutoff(chi, s, deriv, 3e-10) <= 50_000:
        try:
            return _eval_series(chi, s, deriv)
        except PrecisionLossError:
            return _eval_hurwitz(chi, s, deriv)
    return _eval_hurwitz(chi, s, deriv)


def _eval_fe(chi: DirichletCharacter, s: complex, deriv: bool) -> ComplexValue:
    chib = _conj_char(chi)
    F, Fp, _ = _F_pieces(chi, s)
    L2 = _eval_upper(chib, 1.0 - s, False)
    if not deriv:
        val = F.value * L2.value
        err = abs(F.value) * L2.err + abs(L2.value) * F.err
        return ComplexValue(val, err + 1e-15 * abs(val))
    L2p = _eval_upper(chib, 1.0 - s, True)
    val = Fp.value * L2.value - F.value * L2p.value
    err = (
        abs(Fp.value) * L2.err
        + abs(L2.value) * Fp.err
        + abs(F.value) * L2p.err
        + abs(L2p.value) * F.err
    )
    return ComplexValue(val, err + 1e-15 * abs(val))


def _eval(chi: DirichletCharacter, s: complex, deriv: bool, route: str) -> ComplexValue:
    s = complex(s)
    _check_window(chi, s)
    key = (chi.q, chi.label, s, deriv) if route == "auto" else None
    if key is not None and key in _POINT_CACHE:
        return _POINT_CACHE[key]
    if route == "auto":
        if s.real < 0.0:
            out = _eval_fe(chi, s, deriv)
        elif s.real >= 2.0:
            out = _eval_upper(chi, s, deriv)
        else:
            out = _eval_hurwitz(chi, s, deriv)
    elif route == "series":
        out = _eval_series(chi, s, deriv)
    elif route == "hurwitz":
        out = _eval_hurwitz(chi, s, deriv)
    elif route == "fe":
        out = _eval_fe(chi, s, deriv)
    else:
        raise DomainError(f"unknown route {route!r}")
    # Near deep zeros the value can sit far below its own error bar (the
    # functional-equation terms cancel); consumers decide via .err, so no
    # hard raise here -- the winding walker and Newton are both err-aware.
    if key is not None:
        _cache_put(key, out)
    return out


def eval_L(chi: DirichletCharacter, s: complex, route: str = "auto") -> ComplexValue:
    """L(s, chi) with error <= 1e-9 (1 + |L|) inside the window."""
    return _eval(chi, s, False, route)


def eval_Lprime(chi: DirichletCharacter, s: complex, route: str = "auto") -> ComplexValue:
    """L'(s, chi) with error <= 1e-9 (1 + |L'|) inside the window."""
    return _eval(chi, s, True, route)


def eval_L_point(chi: DirichletCharacter, s: complex) -> LPoint:
    """L, L' and (when |L| clears the noise floor) L'/L at one point."""
    L = eval_L(chi, s)
    Lp = eval_Lprime(chi, s)
    if abs(L.value) <= NOISE_FLOOR * (1.0 + abs(Lp.value)):
        logderiv = None
    else:
        val = Lp.value / L.value
        err = (Lp.err + abs(val) * L.err) / abs(L.value)
        logderiv = ComplexValue(val, err)
    return LPoint(s=s, L=L, Lprime=Lp, logderiv=logderiv, err=max(L.err, Lp.err))


def eval_logderiv_via_fteq(chi: DirichletCharacter, s: complex) -> ComplexValue:
    """(L'/L)(s,chi) from the log-derivative of the functional equation.

    Valid for Re s <= -1:
      -(L'/L)(1-s, conj chi) - log(q/2pi) - psi(1-s) + (pi/2) cot(pi(s+kappa)/2).
    """
    s = complex(s)
    if s.real > -1.0:
        raise DomainError("eval_logderiv_via_fteq requires Re s <= -1")
    _check_window(chi, s)
    w = cmath.pi * (s + chi.kappa) / 2.0
    if s.imag == 0.0 and abs(cmath.sin(w)) < 1e-13:
        raise PoleError(f"cot pole (trivial zero of L) at s = {s}")
    chib = _conj_char(chi)
    Lb = _eval_upper(chib, 1.0 - s, False)
    Lbp = _eval_upper(chib, 1.0 - s, True)
    ld = Lbp.value / Lb.value
    ld_err = (Lbp.err + abs(ld) * Lb.err) / abs(Lb.value)
    val = -ld - math.log(chi.q / (2.0 * math.pi)) - _digamma(1.0 - s) + (cmath.pi / 2.0) * _cot(w)
    return ComplexValue(val, ld_err + 1e-12 * (1.0 + abs(val)))


def gest_bound(m: int, sigma: float) -> float:
    """|G - 1| bound 2 (1 + 8m/sigma) exp(-sigma/(2m)), valid for sigma >= 2."""
    return 2.0 * (1.0 + 8.0 * m / sigma) * math.exp(-sigma / (2.0 * m))


def eval_G(chi: DirichletCharacter, s: complex) -> ComplexValue:
    """G(s,chi) = -m^s / (chi(m) log m) * L'(s,chi); G -> 1 as Re s -> +inf."""
    s = complex(s)
    Lp = eval_Lprime(chi, s)
    m = chi.m
    pref = -cmath.exp(s * math.log(m)) / (chi(m) * math.log(m))
    val = pref * Lp.value
    err = abs(pref) * Lp.err
    if s.real >= 2.0:
        bound = gest_bound(m, s.real)
        if abs(val - 1.0) > bound + err + 1e-9:
            raise NumericalError(
                f"G bound violated at s={s}: |G-1|={abs(val - 1.0):.3e} > {bound:.3e}"
            )
    return ComplexValue(val, err)


def re_logderiv_critical(chi: DirichletCharacter, t: float) -> ComplexValue:
    """Re (L'/L)(1/2 + it) by the closed form valid off zeros of L:

      -1/2 log(q/pi) - 1/2 Re psi(1/4 + kappa/2 + it/2).

    Raises NearZeroError when 1/2 + it is flagged as a near-zero of L
    (the excluded set of the critical-line identity).
    """
    from .errors import NearZeroError

    s = 0.5 + 1j * t
    pt = eval_L_point(chi, s)
    if pt.near_zero_of_L:
        raise NearZeroError(f"L(1/2 + {t}i) below noise floor; point in excluded set")
    val = -0.5 * math.log(chi.q / math.pi) - 0.5 * _digamma(0.25 + chi.kappa / 2.0 + 0.5j * t).real
    return ComplexValue(complex(val, 0.0), 1e-13 * (1.0 + abs(val)))


def logderiv_euler_product(chi: DirichletCharacter, s: complex, N: int = 1000) -> ComplexValue:
    """(L'/L)(s,chi) by the truncated Euler product, err = proven tail bound.

    (L'/L)(s) = -sum_p chi(p) log(p) / (p^s - chi(p)) for Re s > 1; the tail
    over p > N is bounded by the prime tail bound at sigma = Re s.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError("Euler product route requires Re s > 1")
    tail = prime_tail_bound(s.real, N)
    total = 0j
    for p in primes_up_to(N):
        p = int(p)
        cp = chi(p)
        if cp == 0:
            continue
        total -= cp * math.log(p) / (p ** s - cp)
    return ComplexValue(total, tail + 1e-14 * (1.0 + abs(total)))


# ----------------------------------------------------------------------
# vectorized evaluation on grids with Re s > 0 (zero scans)

def _grid_eval(chi: DirichletCharacter, S: np.ndarray, deriv: bool, chunk: int = 4096):
    S = np.asarray(S, dtype=complex).ravel()
    if S.real.min() <= 0.0:
        raise DomainError("grid evaluators serve only Re s > 0")
    a, w = _coprime_residues(chi)
    lq = math.log(chi.q)
    out = np.empty(S.shape, dtype=complex)
    for start in range(0, len(S), chunk):
        sl = slice(start, min(len(S), start + chunk))
        s = S[sl]
        vals, dvals, _ = hurwitz_grid(s, a, want_ds=deriv)
        qps = np.exp(-s * lq)
        zsum = vals @ w
        if deriv:
            out[sl] = qps * ((dvals @ w) - lq * zsum)
        else:
            out[sl] = qps * zsum
    return out


def eval_L_grid(chi: DirichletCharacter, S: np.ndarray) -> np.ndarray:
    """Vectorized L(s) over an array of points with Re s > 0."""
    return _grid_eval(chi, S, False)


def eval_Lprime_grid(chi: DirichletCharacter, S: np.ndarray) -> np.ndarray:
    """Vectorized L'(s) over an array of points with Re s > 0."""
    return _grid_eval(chi, S, True)


def cauchy_derivative(func, s: complex, radius: float = 0.5, nodes: int = 128) -> complex:
    """f'(s) by trapezoidal quadrature of Cauchy's formula on |w-s| = radius."""
    acc = 0j
    for k in range(nodes):
        w = cmath.exp(2j * cmath.pi * k / nodes)
        acc += complex(func(s + radius * w)) * w.conjugate()
    return acc / (radius * nodes)
