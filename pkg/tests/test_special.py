"""Special functions against multiprecision and quadrature oracles."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from lderiv import special as sp
from lderiv.errors import DomainError, PoleError
from tests.conftest import lattice_points

mpmath.mp.dps = 30

GAMMA = sp.EULER_GAMMA


# ----------------------------------------------------------------------
# digamma

def test_digamma_classical_values():
    assert abs(sp.digamma(1).value - (-GAMMA)) < 1e-13
    assert abs(sp.digamma(2).value - (1 - GAMMA)) < 1e-13
    assert abs(sp.digamma(0.5).value - (-2 * math.log(2) - GAMMA)) < 1e-13


@pytest.mark.parametrize(
    "z",
    [
        0.3, 2.7, 9.9, 123.0, 1e4,
        0.25 + 1j, -3 + 0.1j, 2 + 5j, -7.3 - 3.2j, -0.5 + 77j,
        -49.7 + 0.01j, 1e4 + 77j, 3.5 - 1e3j,
    ],
)
def test_digamma_vs_multiprecision(z):
    ours = sp.digamma(z).value
    ref = complex(mpmath.psi(0, mpmath.mpc(z)))
    assert abs(ours - ref) < 1e-12 * (1 + abs(ref))


def test_digamma_reflection_identity():
    for z in lattice_points(25, (-6.0, 6.0), (0.05, 4.0)):
        lhs = sp.digamma(1 - z).value - sp.digamma(z).value
        rhs = math.pi / cmath.tan(math.pi * z)
        assert abs(lhs - rhs) < 1e-10 * (1 + abs(rhs))


def test_digamma_recurrence_identity():
    for z in lattice_points(25, (0.2, 8.0), (-3.0, 3.0)):
        lhs = sp.digamma(z + 1).value
        rhs = sp.digamma(z).value + 1.0 / z
        assert abs(lhs - rhs) < 1e-10 * (1 + abs(rhs))


def test_digamma_monotone_in_imaginary_part():
    for x in (0.25, 1.0, 2.0, 5.0):
        base = sp.digamma(x).value.real
        for y in (0.1, 0.5, 1.0, 3.0, 10.0):
            assert sp.digamma(complex(x, y)).value.real >= base - 1e-12


def test_digamma_poles():
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            sp.digamma(z)


def test_digamma_lower_bound_check():
    for z in (0.25 + 1j, -3 + 0.1j, 2 + 5j):
        rep = sp.digamma_lower_bound_check(z)
        assert rep.passed and rep.margin > 0
    # Re psi is within 0.2 of log|z| at 2+5i (both our route and mpmath)
    z = 2 + 5j
    ref = complex(mpmath.psi(0, mpmath.mpc(z))).real
    assert abs(ref - math.log(abs(z))) < 0.2
    assert abs(sp.digamma(z).value.real - math.log(abs(z))) < 0.2
    with pytest.raises(DomainError):
        sp.digamma_lower_bound_check(3.0)


def test_log_gamma_vs_multiprecision():
    for z in (0.5, 3.7, 12 + 9j, -4.5 + 2j, 0.25 - 40j, 80.5 + 100j):
        ours = sp.log_gamma(z)
        ref = complex(mpmath.loggamma(mpmath.mpc(z)))
        assert abs(ours - ref) < 1e-11 * (1 + abs(ref))


# ----------------------------------------------------------------------
# Hurwitz zeta

def test_hurwitz_classical_values():
    assert abs(sp.hurwitz_zeta(2, 1).value - math.pi**2 / 6) < 1e-12
    assert abs(sp.hurwitz_zeta(-1, 1).value - (-1 / 12)) < 1e-12


def test_hurwitz_vs_multiprecision_oracle():
    cases = [
        (0.5 + 14.13j, 0.2),
        (2 + 3j, 2 / 7),
        (-1.5 + 0.3j, 0.9),
        (3.0, 1 / 3),
        (-5.5 + 3j, 0.37),
        (0.01 + 40j, 1.0),
        (1.5 - 22j, 0.04),
    ]
    for s, a in cases:
        ours = sp.hurwitz_zeta(s, a)
        ref = complex(mpmath.zeta(mpmath.mpc(s), a))
        assert abs(ours.value - ref) < 1e-10 * (1 + abs(ref)), (s, a)
        assert abs(ours.value - ref) < 10 * ours.err + 1e-13 * (1 + abs(ref))


def test_hurwitz_pole_and_domain():
    with pytest.raises(PoleError):
        sp.hurwitz_zeta(1.0, 0.5)
    with pytest.raises(DomainError):
        sp.hurwitz_zeta(2.0, 1.5)
    with pytest.raises(DomainError):
        sp.hurwitz_zeta(2.0, 0.0)


def test_hurwitz_ds_classical_value():
    # zeta'(0) = -log(2 pi)/2
    assert abs(sp.hurwitz_zeta_ds(0, 1).value - (-0.5 * math.log(2 * math.pi))) < 1e-12


def test_hurwitz_ds_vs_cauchy_circle():
    for s, a in [(2 + 3j, 2 / 7), (0.5 + 5j, 0.6), (3.5, 0.11)]:
        em = sp.hurwitz_zeta_ds(s, a).value
        cc = sp.hurwitz_zeta_cauchy_ds(s, a).value
        assert abs(em - cc) < 1e-9 * (1 + abs(em)), (s, a)


def test_hurwitz_ds_vs_finite_differences():
    s, a, h = 3.0, 1 / 3, 1e-5
    fd = (sp.hurwitz_zeta(s + h, a).value - sp.hurwitz_zeta(s - h, a).value) / (2 * h)
    assert abs(sp.hurwitz_zeta_ds(s, a).value - fd) < 1e-6


def test_hurwitz_ds_vs_multiprecision():
    for s, a in [(2 + 3j, 2 / 7), (-1.5 + 1j, 0.5)]:
        ours = sp.hurwitz_zeta_ds(s, a).value
        ref = complex(mpmath.zeta(mpmath.mpc(s), a, 1))
        assert abs(ours - ref) < 1e-9 * (1 + abs(ref))


def test_hurwitz_cauchy_rejects_circle_through_pole():
    with pytest.raises(DomainError):
        sp.hurwitz_zeta_cauchy_ds(1.2, 0.5)


# ----------------------------------------------------------------------
# logarithmic integral

def _simpson_li(x, n):
    xs = np.linspace(2.0, x, 2 * n + 1)
    w = np.ones(2 * n + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    return float(np.sum(w / np.log(xs))) * (x - 2.0) / (6 * n)


def test_li_values_and_monotonicity():
    assert sp.log_integral(2.0) == 0.0
    for x, tol in ((5.0, 1e-10), (10.0, 1e-10), (729.6, 1e-8)):
        coarse = _simpson_li(x, 8000)
        fine = _simpson_li(x, 16000)
        oracle = fine + (fine - coarse) / 15.0  # Richardson-extrapolated Simpson
        assert abs(sp.log_integral(x) - oracle) < tol
    vals = [sp.log_integral(x) for x in (2.0, 2.5, 4.0, 10.0, 100.0)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError):
        sp.log_integral(1.5)


# ----------------------------------------------------------------------
# prime sums

def test_prime_tail_bound_formula_and_domain():
    val = sp.prime_tail_bound(3.0, 10)
    assert abs(val - 10 / 999 * (math.log(10) / 2 + 0.25)) < 1e-15
    for bad in [(1.0, 10), (2.0, 2), (0.5, 100)]:
        with pytest.raises(DomainError):
            sp.prime_tail_bound(*bad)


@pytest.mark.parametrize("sigma", [2.0, 3.0, 4.0])
@pytest.mark.parametrize("N", [10, 100])
def test_prime_tail_bound_is_true_bound(sigma, N):
    ps = sp.primes_up_to(10**7)
    ps = ps[ps > N].astype(float)
    true_tail = float(np.sum(np.log(ps) / (ps**sigma - 1.0)))
    assert true_tail <= sp.prime_tail_bound(sigma, N)


def test_prime_log_sum_reference_bounds():
    assert sp.prime_log_sum(3, 1, 10).upper < 0.174
    assert sp.prime_log_sum(2, 1, 100).upper < 0.62
    assert sp.prime_log_sum(2, 7, 100000).upper < 0.5296
    assert sp.prime_log_sum(4, 5, 10).upper < 0.07
    assert sp.prime_log_sum(2, 5, 1000).upper < 0.51


def test_prime_log_sum_interval_brackets_truth():
    ts = sp.prime_log_sum(2, 7, 1000)
    ps = sp.primes_up_to(10**7).astype(float)
    ps = ps[(7 % ps != 0)]
    truth = float(np.sum(np.log(ps) / (ps**2 - 1.0)))
    assert ts.value <= truth <= ts.upper


# ----------------------------------------------------------------------
# the log|a + b cos theta| mean

def test_log_abs_cos_mean_closed_forms():
    assert abs(sp.log_abs_cos_mean(2, 1) - math.log((2 + math.sqrt(3)) / 2)) < 1e-15
    assert abs(sp.log_abs_cos_mean(1, 1) - math.log(0.5)) < 1e-15
    assert abs(sp.log_abs_cos_mean(1, 3) - math.log(1.5)) < 1e-15


def test_log_abs_cos_mean_branches_agree_at_a_equals_b():
    for v in (0.5, 1.0, 2.5):
        a_le_b = sp.log_abs_cos_mean(v, v)  # takes the log(b/2) branch
        a_gt_b_formula = math.log((v + math.sqrt(v * v - v * v)) / 2.0)
        assert a_le_b == a_gt_b_formula == math.log(v / 2)


def test_log_abs_cos_mean_vs_quadrature():
    for a, b in [(2, 1), (1, 1), (1, 3), (0.3, 2.7), (4.9, 4.9)]:
        assert abs(sp.log_abs_cos_mean(a, b) - sp.log_abs_cos_mean_quad(a, b)) < 1e-8
    with pytest.raises(DomainError):
        sp.log_abs_cos_mean(-1, 2)
