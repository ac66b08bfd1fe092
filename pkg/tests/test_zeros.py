"""Argument-principle counting, zero location, and the strip statistics."""

import math

import pytest

from lderiv import characters as ch
from lderiv import lfunc as lf
from lderiv import zeros as zr
from lderiv.errors import BoundaryZeroError, DomainError


# ----------------------------------------------------------------------
# the walker on synthetic functions

def test_winding_polynomial():
    f = lambda s: (s - (1 + 0.5j)) * (s - (2 - 0.3j))
    assert zr.winding_count(f, zr.rectangle(0, 3, -2, 2)) == 2
    assert zr.winding_count(f, zr.rectangle(0, 1.5, -2, 2)) == 1
    assert zr.winding_count(f, zr.rectangle(5, 6, -1, 1)) == 0


def test_winding_counts_poles_negatively():
    f = lambda s: (s - 0.5j) / (s + 0.5j) ** 2
    assert zr.winding_count(f, zr.rectangle(-1, 1, -1, 1)) == -1


def test_winding_boundary_zero_detected():
    f = lambda s: s
    with pytest.raises(BoundaryZeroError):
        zr.winding_count(f, zr.rectangle(0, 1, -1, 1))


def test_indentation_sides_enclose_or_exclude():
    f = lambda s: s  # single zero at the origin
    # zero on the left edge: a left bulge encloses it, a right bulge excludes
    left = zr.Contour(0, 1, -1, 1, (zr.Indentation(0j, 0.1, "left"),))
    right = zr.Contour(0, 1, -1, 1, (zr.Indentation(0j, 0.1, "right"),))
    assert zr.winding_count(f, left) == 1
    assert zr.winding_count(f, right) == 0
    # zero on the right edge: the roles flip
    left2 = zr.Contour(-1, 0, -1, 1, (zr.Indentation(0j, 0.1, "left"),))
    right2 = zr.Contour(-1, 0, -1, 1, (zr.Indentation(0j, 0.1, "right"),))
    assert zr.winding_count(f, left2) == 0
    assert zr.winding_count(f, right2) == 1
    assert left.encloses(0j) and not right.encloses(0j)
    assert not left2.encloses(0j) and right2.encloses(0j)


def test_contour_validation():
    with pytest.raises(DomainError):
        zr.Contour(1, 0, -1, 1)
    with pytest.raises(DomainError):
        zr.Contour(0, 1, -1, 1, (zr.Indentation(0.5 + 0j, 0.1, "left"),))
    with pytest.raises(DomainError):
        zr.Contour(0, 1, -1, 1, (zr.Indentation(0j, 0.05, "left"),
                                 zr.Indentation(0.05j, 0.05, "left")))


def test_mesh_halving_stability(chi5):
    f = lambda s: lf.eval_Lprime(chi5, s)
    box = zr.rectangle(0.5, 4.0, 6.0, 9.0)
    assert zr.winding_count(f, box, mesh=1.0) == zr.winding_count(f, box, mesh=0.5) == 1


# ----------------------------------------------------------------------
# L and L' windings

def test_L_winding_around_trivial_zero(chi5):
    f = lambda s: lf.eval_L(chi5, s)
    assert zr.winding_count(f, zr.rectangle(-2.5, -1.5, -5, 5)) == 1


def test_Lprime_winding_mod23_strip(chi23):
    f = lambda s: lf.eval_Lprime(chi23, s)
    assert zr.winding_count(f, zr.rectangle(-2, 0, -50, 50)) == 1


# ----------------------------------------------------------------------
# trivial zeros

def test_alpha_j_chi5_real_in_interval(chi5):
    for j in range(1, 11):
        rec = zr.locate_trivial_zero(chi5, j)
        c = -2 * j
        assert rec.multiplicity == 1
        assert rec.classification == "trivial-left"
        assert abs(rec.location.imag) < 1e-9
        assert c < rec.location.real < c + 1  # quadratic: right half-strip
        assert rec.radius <= 1e-7


def test_alpha_strip_uniqueness(chi5):
    f = lambda s: lf.eval_Lprime(chi5, s)
    for j in (1, 2, 5):
        assert zr.winding_count(f, zr.rectangle(-2 * j - 1, -2 * j + 1, -6, 6)) == 1


def test_alpha_containment_mod7():
    chi = ch.enumerate_primitive(7)[0]
    j = 5
    rec = zr.locate_trivial_zero(chi, j)
    assert abs(rec.location + 2 * j + chi.kappa) < 2.0 / math.log(j * 7)


def test_alpha_window_domain_error(chi5):
    with pytest.raises(DomainError):
        zr.locate_trivial_zero(chi5, 0)
    with pytest.raises(DomainError):
        zr.locate_trivial_zero(chi5, 45)


# ----------------------------------------------------------------------
# N1 counting

def test_count_N1_matches_oracle(chi5):
    for T in (2.0, 10.0):
        n = zr.count_N1(chi5, T)
        oracle = zr.grid_zero_scan(chi5, T)
        assert n == len(oracle), (T, n, oracle)


def test_count_N1_integer_stability(chi5):
    assert zr.count_N1(chi5, 10.0, verify=False) == zr.count_N1(chi5, 10.001, verify=False)


def test_zero_free_sigma_certificate(chi5):
    sigma_star = zr.zero_free_sigma(chi5.m)
    assert lf.gest_bound(chi5.m, sigma_star + 1e-6) < 1.0
    assert 2.0 < sigma_star < 8 * chi5.m


# ----------------------------------------------------------------------
# strip counts and listing

def test_count_strip_mod23(chi23):
    assert zr.count_strip(chi23, 20.0, "Lprime") == 0
    assert zr.count_strip(chi23, 20.0, "L") == 0


def test_count_strip_mesh_halving(chi23):
    assert zr.count_strip_mesh_stable(chi23, 10.0, "Lprime") == 0
    assert zr.count_strip_mesh_stable(chi23, 10.0, "L") == 0


def test_count_strip_chi5_grh_desk_scale(chi5):
    # kappa=0 path: s=0 rides inside via its left indentation, subtracted out
    assert zr.count_strip(chi5, 10.0, "L") == 0
    assert zr.count_strip(chi5, 20.0, "L") == 0


def test_list_zeros_consistency(chi5):
    recs = zr.list_zeros(chi5, zr.rectangle(0.0, 20.0, -10.0, 10.0), "Lprime")
    assert sum(r.multiplicity for r in recs) == zr.count_N1(chi5, 10.0, verify=False)
    for r in recs:
        assert r.classification == "nontrivial"
        resid = abs(lf.eval_Lprime(chi5, r.location).value)
        curv = abs(lf.cauchy_derivative(lambda w: lf.eval_Lprime(chi5, w).value, r.location, 0.1, 32))
        assert resid <= 1e-7 * (1.0 + curv)
    # conjugation symmetry of the zero set for a real character
    locs = sorted((r.location for r in recs), key=lambda z: (z.imag, z.real))
    for z in locs:
        assert any(abs(z.conjugate() - w) < 1e-8 for w in locs)


def test_list_zeros_sum_matches_oracle(chi5):
    recs = zr.list_zeros(chi5, zr.rectangle(0.0, 20.0, -10.0, 10.0), "Lprime")
    s_list = sum((r.location.real - 0.5) * r.multiplicity for r in recs)
    s_oracle = sum(z.real - 0.5 for z in zr.grid_zero_scan(chi5, 10.0))
    assert abs(s_list - s_oracle) < 1e-6


def test_critical_line_zeros_stable_under_mesh(chi5):
    a = zr.critical_line_zeros(chi5, 8.0, spacing=0.02)
    b = zr.critical_line_zeros(chi5, 8.0, spacing=0.01)
    assert len(a) == len(b)
    assert all(abs(x - y) < 1e-8 for x, y in zip(a, b))
    for g in a:
        assert abs(lf.eval_L(chi5, 0.5 + 1j * g).value) < 1e-8


# ----------------------------------------------------------------------
# left-half-plane spot checks (no zeros in D1, D2 samples)

def test_no_zeros_in_D1_sample(chi5):
    # sigma <= 1 - Theta unconditionally covers sigma <= 0; |t| >= 6/log q
    f = lambda s: lf.eval_Lprime(chi5, s)
    assert zr.winding_count(f, zr.rectangle(-6.0, -4.0, 4.0, 8.0)) == 0
    assert zr.winding_count(f, zr.rectangle(-3.0, -0.5, -9.0, -4.0)) == 0


def test_no_zeros_in_D2_sample():
    chi3 = ch.enumerate_primitive(3)[0]
    f = lambda s: lf.eval_Lprime(chi3, s)
    assert zr.winding_count(f, zr.rectangle(-12.0, -9.5, 6.0, 9.0)) == 0


def test_line_negativity_left_strip_edges(chi5):
    # Re L'/L <= -1e-4 on Re s = -2j+1 (no zeros of L' on the line)
    for j in (1, 2, 3):
        sigma = -2 * j + 1
        for t in (-17.3, -4.0, 0.0, 0.9, 8.8, 33.0):
            pt = lf.eval_L_point(chi5, complex(sigma, t))
            assert pt.logderiv.value.real <= -1e-4
