"""Certified integer zero counts by the argument principle, zero location,
and the count statistics N1, N-, N1- for L and L'.

The winding walker tracks the continuous argument of f along a contour of
line segments and semicircular indentation arcs, bisecting any step whose
phase increment exceeds pi/2 and refining wherever |f| dips toward its
evaluation error.  Hitting the refinement floor means a zero sits on (or
numerically on) the contour, which is reported, never guessed around.

Indentation sides are named by direction: a "left" semicircle bulges
toward smaller Re s, so on the left edge of a rectangle it encloses the
indented point and on the right edge it excludes it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Optional

import numpy as np

from .characters import DirichletCharacter
from .errors import (
    BoundaryZeroError,
    DomainError,
    InconclusiveBoundaryError,
    NumericalError,
    UniquenessViolationError,
)
from .lfunc import (
    eval_L,
    eval_L_grid,
    eval_L_point,
    eval_Lprime,
    eval_Lprime_grid,
    gest_bound,
    _epsilon,
)
from .numtypes import ComplexValue
from .special import log_gamma

__all__ = [
    "Contour",
    "Indentation",
    "ZeroRecord",
    "winding_count",
    "arg_variation",
    "locate_trivial_zero",
    "count_N1",
    "count_N1_detailed",
    "count_strip",
    "count_strip_detailed",
    "count_strip_mesh_stable",
    "list_zeros",
    "critical_line_zeros",
    "grid_zero_scan",
    "zero_free_sigma",
]

Which = Literal["L", "Lprime"]


# ----------------------------------------------------------------------
# contours

@dataclass(frozen=True)
class Indentation:
    center: complex
    radius: float
    side: str  # "left" bulges toward -Re, "right" toward +Re


@dataclass(frozen=True)
class _Segment:
    z0: complex
    z1: complex

    def point(self, u: float) -> complex:
        return self.z0 + u * (self.z1 - self.z0)

    @property
    def length(self) -> float:
        return abs(self.z1 - self.z0)


@dataclass(frozen=True)
class _Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, u: float) -> complex:
        th = self.theta0 + u * (self.theta1 - self.theta0)
        return self.center + self.radius * cmath.exp(1j * th)

    @property
    def length(self) -> float:
        return self.radius * abs(self.theta1 - self.theta0)


@dataclass(frozen=True)
class Contour:
    """Axis-aligned rectangle, anticlockwise, with optional semicircular
    indentations on its vertical edges."""

    sigma_left: float
    sigma_right: float
    t_min: float
    t_max: float
    indentations: tuple[Indentation, ...] = ()

    def __post_init__(self):
        if not (self.sigma_left < self.sigma_right and self.t_min < self.t_max):
            raise DomainError("degenerate rectangle")
        for ind in self.indentations:
            on_left = abs(ind.center.real - self.sigma_left) < 1e-12
            on_right = abs(ind.center.real - self.sigma_right) < 1e-12
            if not (on_left or on_right):
                raise DomainError(f"indentation center {ind.center} not on a vertical edge")
            if not (self.t_min + ind.radius < ind.center.imag < self.t_max - ind.radius):
                raise DomainError("indentation does not fit inside the vertical span")
        cs = sorted(self.indentations, key=lambda i: (i.center.real, i.center.imag))
        for a, b in zip(cs, cs[1:]):
            if a.center.real == b.center.real and b.center.imag - a.center.imag < a.radius + b.radius:
                raise DomainError("overlapping indentations")

    def pieces(self) -> list:
        out: list = []
        bl = complex(self.sigma_left, self.t_min)
        br = complex(self.sigma_right, self.t_min)
        tr = complex(self.sigma_right, self.t_max)
        tl = complex(self.sigma_left, self.t_max)
        out.append(_Segment(bl, br))
        out.extend(self._vertical(br, tr, going_up=True))
        out.append(_Segment(tr, tl))
        out.extend(self._vertical(tl, bl, going_up=False))
        return out

    def _vertical(self, z0: complex, z1: complex, going_up: bool) -> Iterable:
        x = z0.real
        inds = sorted(
            (i for i in self.indentations if abs(i.center.real - x) < 1e-12),
            key=lambda i: i.center.imag,
            reverse=not going_up,
        )
        cur = z0
        for ind in inds:
            c, r = ind.center, ind.radius
            if going_up:
                yield _Segment(cur, c - 1j * r)
                # arrive at angle -pi/2, leave at +pi/2
                if ind.side == "left":
                    yield _Arc(c, r, -math.pi / 2, -3 * math.pi / 2)
                else:
                    yield _Arc(c, r, -math.pi / 2, math.pi / 2)
                cur = c + 1j * r
            else:
                yield _Segment(cur, c + 1j * r)
                # arrive at +pi/2, leave at -pi/2
                if ind.side == "left":
                    yield _Arc(c, r, math.pi / 2, 3 * math.pi / 2)
                else:
                    yield _Arc(c, r, math.pi / 2, -math.pi / 2)
                cur = c - 1j * r
        yield _Segment(cur, z1)

    def encloses(self, z: complex) -> bool:
        """Point strictly inside the indented region (geometry only)."""
        if not (self.sigma_left < z.real < self.sigma_right and self.t_min < z.imag < self.t_max):
            inside = False
        else:
            inside = True
        for ind in self.indentations:
            within = abs(z - ind.center) < ind.radius
            if not within:
                continue
            on_left_edge = abs(ind.center.real - self.sigma_left) < 1e-12
            if ind.side == "left":
                inside = on_left_edge  # left bulge on left edge annexes the half-disk
            else:
                inside = not on_left_edge
        return inside


def rectangle(sigma_left: float, sigma_right: float, t_min: float, t_max: float) -> Contour:
    return Contour(sigma_left, sigma_right, t_min, t_max)


# ----------------------------------------------------------------------
# zero records

@dataclass(frozen=True)
class ZeroRecord:
    """A located zero with its certified containment disk."""

    location: complex
    radius: float
    multiplicity: int
    classification: str  # "trivial-left" | "nontrivial" | "boundary-ambiguous"
    which_function: Which
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "re": self.location.real,
            "im": self.location.imag,
            "radius": self.radius,
            "mult": self.multiplicity,
            "class": self.classification,
        }


def _classify(z: complex, loc_err: float) -> str:
    if z.real - loc_err > 0.0:
        return "nontrivial"
    if z.real + loc_err <= 0.0:
        return "trivial-left"
    return "boundary-ambiguous"


# ----------------------------------------------------------------------
# the adaptive argument walker

def _as_val(fv) -> tuple[complex, float]:
    if isinstance(fv, ComplexValue):
        return fv.value, fv.err
    fv = complex(fv)
    return fv, 1e-12 * (1.0 + abs(fv))


def arg_variation(
    f: Callable[[complex], object],
    contour: Contour | list,
    mesh: float = 1.0,
    max_evals: int = 400_000,
) -> float:
    """Continuous variation of arg f along the contour, in radians.

    mesh scales the initial sampling density (0.5 = twice as dense).
    Raises BoundaryZeroError when refinement cannot separate f from 0.
    """
    pieces = contour.pieces() if isinstance(contour, Contour) else list(contour)
    total = 0.0
    evals = 0

    def get(piece, u):
        nonlocal evals
        evals += 1
        if evals > max_evals:
            raise NumericalError("argument walker exceeded its evaluation budget")
        v, e = _as_val(f(piece.point(u)))
        return v, e

    for piece in pieces:
        length = piece.length
        if length == 0.0:
            continue
        if isinstance(piece, _Arc):
            n0 = max(8, int(abs(piece.theta1 - piece.theta0) / (0.4 * mesh)) + 1)
        else:
            n0 = max(2, int(length / (0.35 * mesh)) + 1)
        us = [i / n0 for i in range(n0 + 1)]
        vals = [get(piece, u) for u in us]
        stack = list(zip(us[:-1], vals[:-1], us[1:], vals[1:]))
        min_du = 1e-11
        while stack:
            u0, (v0, e0), u1, (v1, e1) = stack.pop()
            if abs(v0) <= 10.0 * e0:
                raise BoundaryZeroError("f vanishes on the contour", piece.point(u0))
            if abs(v1) <= 10.0 * e1:
                raise BoundaryZeroError("f vanishes on the contour", piece.point(u1))
            dphi = cmath.phase(v1 / v0)
            if abs(dphi) <= 0.5 * math.pi:
                total += dphi
                continue
            if u1 - u0 < min_du:
                raise BoundaryZeroError(
                    "phase unresolvable: zero on or next to the contour", piece.point((u0 + u1) / 2)
                )
            um = 0.5 * (u0 + u1)
            vm = get(piece, um)
            stack.append((um, vm, u1, (v1, e1)))
            stack.append((u0, (v0, e0), um, vm))
    return total


def winding_count(
    f: Callable[[complex], object],
    contour: Contour | list,
    mesh: float = 1.0,
    max_evals: int = 400_000,
) -> int:
    """Number of zeros of f inside the contour, counted with multiplicity.

    For a meromorphic f this is zeros minus poles.  The raw variation must
    sit within 0.05 turns of an integer or a NumericalError is raised.
    """
    turns = arg_variation(f, contour, mesh=mesh, max_evals=max_evals) / (2.0 * math.pi)
    n = round(turns)
    if abs(turns - n) > 0.05:
        raise NumericalError(f"argument variation {turns:.6f} turns is not an integer")
    return int(n)


def _circle(center: complex, radius: float) -> list:
    return [_Arc(center, radius, 0.0, 2.0 * math.pi)]


# ----------------------------------------------------------------------
# derivative helpers and Newton polishing

def _fd(f: Callable[[complex], complex], z: complex, h: float = 1e-6) -> complex:
    return (complex(f(z + h)) - complex(f(z - h))) / (2.0 * h)


def _newton(
    f: Callable[[complex], complex],
    z0: complex,
    tol: float = 1e-11,
    max_iter: int = 30,
) -> tuple[complex, float]:
    """Newton iteration with finite-difference derivative.

    Returns (zero, last_step); raises NumericalError when not converging.
    """
    z = z0
    last = math.inf
    for _ in range(max_iter):
        fv = complex(f(z))
        dv = _fd(f, z)
        if dv == 0:
            raise NumericalError("Newton hit a vanishing derivative")
        step = fv / dv
        z -= step
        last = abs(step)
        if last < tol:
            return z, last
    raise NumericalError(f"Newton failed to converge from {z0}")


def _certify_disk(f, center: complex, r0: float, mult: int) -> float:
    """Smallest radius from r0, growing x8, whose winding equals mult."""
    r = r0
    for _ in range(5):
        try:
            if winding_count(f, _circle(center, r), mesh=0.5) == mult:
                return r
        except (BoundaryZeroError, NumericalError):
            pass
        r *= 8.0
    raise NumericalError(f"could not certify a containment disk at {center}")


def _evaluator(chi: DirichletCharacter, which: Which):
    if which == "L":
        return lambda s: eval_L(chi, s)
    return lambda s: eval_Lprime(chi, s)


# ----------------------------------------------------------------------
# trivial zeros alpha_j

def locate_trivial_zero(chi: DirichletCharacter, j: int) -> ZeroRecord:
    """The unique zero alpha_j of L' in the strip |Re s + 2j + kappa| < 1.

    Quadratic characters use bisection of the real-valued (L'/L)(sigma),
    which runs from +inf at the trivial zero down to a certified negative
    value at the right strip edge.  Otherwise a winding count on the circle
    of radius 2/log(jq) around -2j-kappa is tried first, with a strip-wide
    quadrisection fallback (note "wide") when that circle is inconclusive.
    """
    if j < 1:
        raise DomainError("trivial-zero index j must be >= 1")
    c = -2 * j - chi.kappa
    if c - 1 < -80:
        raise DomainError("strip outside the evaluation window")
    f = _evaluator(chi, "Lprime")

    if chi.is_quadratic:
        z, note = _bisect_real_logderiv(chi, c, c + 1.0), ""
    else:
        r = 2.0 / math.log(j * chi.q)
        count = None
        try:
            count = winding_count(f, _circle(c, r), mesh=0.5)
        except (BoundaryZeroError, NumericalError):
            pass
        if count == 1:
            z, _ = _newton(lambda s: eval_Lprime(chi, s).value, complex(c))
            note = ""
            if abs(z - c) >= r:
                raise UniquenessViolationError(
                    f"Newton left the certified circle at j={j}, q={chi.q}"
                )
        else:
            z = _locate_in_strip(chi, c)
            note = "wide"

    # polish and certify a containment disk
    z, last = _newton(lambda s: eval_Lprime(chi, s).value, z, tol=1e-12)
    r_cert = _certify_disk(f, z, max(1e-8, 4.0 * last), 1)
    if not (c - 1.0 < z.real < c + 1.0):
        raise UniquenessViolationError(f"located zero {z} escaped its certified strip")
    return ZeroRecord(
        location=z,
        radius=r_cert,
        multiplicity=1,
        classification=_classify(z, r_cert),
        which_function="Lprime",
        note=note,
    )


def _bisect_real_logderiv(chi: DirichletCharacter, lo: float, hi: float) -> complex:
    """Bisection of sign of Re (L'/L)(sigma) on (lo, hi): + at lo+, - at hi."""

    def g(x: float) -> float:
        pt = eval_L_point(chi, complex(x))
        if pt.logderiv is None:
            raise NumericalError(f"L vanished inside the bisection interval at {x}")
        return pt.logderiv.value.real

    # keep clear of the trivial zero of L at lo, where L'/L blows up to +inf
    a, b = lo + 1e-3, hi
    ga, gb = g(a), g(b)
    if not (ga > 0.0 > gb):
        raise UniquenessViolationError(
            f"no sign change of L'/L on ({lo}, {hi}) for q={chi.q}: {ga:.3g}, {gb:.3g}"
        )
    for _ in range(60):
        m = 0.5 * (a + b)
        gm = g(m)
        if gm > 0.0:
            a = m
        else:
            b = m
        if b - a < 1e-12:
            break
    return complex(0.5 * (a + b))


def _locate_in_strip(chi: DirichletCharacter, c: float) -> complex:
    """Quadrisection fallback inside the unit-wide strip around c."""
    region = rectangle(c - 1.0, c + 1.0, -6.0, 6.0)
    f = _evaluator(chi, "Lprime")
    n = winding_count(f, region)
    if n != 1:
        raise UniquenessViolationError(
            f"strip around {c} holds {n} zeros of L'; expected exactly 1 (q={chi.q})"
        )
    recs = _subdivide(chi, "Lprime", region, n)
    return recs[0].location


# ----------------------------------------------------------------------
# counting in Re s > 0

def zero_free_sigma(m: int) -> float:
    """Smallest sigma >= 2 with the |G - 1| bound < 1: no L' zeros beyond it."""
    lo, hi = 2.0, 16.0 * m
    while gest_bound(m, hi) >= 1.0:
        hi *= 2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if gest_bound(m, mid) < 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def count_N1_detailed(chi: DirichletCharacter, T: float, verify: bool = True) -> tuple[int, dict]:
    """N1(T, chi): zeros of L' with Re s > 0, |Im s| <= T, with run details."""
    if not 2.0 <= T <= 50.0:
        raise DomainError("count_N1 supports 2 <= T <= 50")
    sigma_r = max(10.0 * chi.m, 20.0)
    f = _evaluator(chi, "Lprime")
    count, info = _count_rect_adaptive(chi, f, 0.0, sigma_r, T)
    if verify:
        count2, _ = _count_rect_adaptive(chi, f, 0.0, sigma_r + 5.0, T + info["t_shift"], mesh=0.5)
        if count2 != count:
            raise NumericalError(
                f"N1 unstable: {count} at sigma_R={sigma_r}, {count2} at sigma_R+5"
            )
    info["sigma_r"] = sigma_r
    return count, info


def count_N1(chi: DirichletCharacter, T: float, verify: bool = True) -> int:
    return count_N1_detailed(chi, T, verify)[0]


def _count_rect_adaptive(
    chi: DirichletCharacter,
    f,
    sigma_l: float,
    sigma_r: float,
    T: float,
    mesh: float = 1.0,
) -> tuple[int, dict]:
    """Winding on (sigma_l, sigma_r) x (-T', T') with T-perturbation and
    left-edge indentation when zeros sit on the boundary."""
    t_shift = 0.0
    indents: list[Indentation] = []
    for attempt in range(8):
        contour = Contour(sigma_l, sigma_r, -(T + t_shift), T + t_shift, tuple(indents))
        try:
            n = winding_count(f, contour, mesh=mesh)
            return n, {"t_shift": t_shift, "indentations": len(indents)}
        except BoundaryZeroError as exc:
            z = exc.location
            if abs(abs(z.imag) - (T + t_shift)) < 1e-6:
                t_shift += 3.3e-4
                if t_shift > 1e-3:
                    raise
            elif abs(z.real - sigma_l) < 1e-6:
                # exclude: bulge into the rectangle interior (rightward)
                indents.append(Indentation(complex(sigma_l, z.imag), 1e-3, "right"))
            else:
                raise
    raise NumericalError("rectangle count did not stabilize after perturbations")


def critical_line_zeros(chi: DirichletCharacter, T: float, spacing: float = 0.02) -> list[float]:
    """Ordinates of the zeros of L on Re s = 1/2 with |t| <= T.

    Uses the real-valued rotated completed function
      Z(t) = Re[ e^(-i arg(eps)/2) (q/pi)^((s+kappa)/2) Gamma((s+kappa)/2) L(s) ],
    whose sign changes are exactly the on-line zeros (odd order).
    """
    omega = cmath.phase(_epsilon(chi).value) / 2.0

    def zfun(t: float) -> float:
        s = 0.5 + 1j * t
        g = cmath.exp(
            ((s + chi.kappa) / 2.0) * math.log(chi.q / math.pi) + log_gamma((s + chi.kappa) / 2.0)
        )
        v = cmath.exp(-1j * omega) * g * eval_L(chi, s).value
        return v.real

    ts = np.arange(-T, T + spacing / 2, spacing)
    svals = np.array([zfun(float(t)) for t in ts])
    zeros = []
    for i in range(len(ts) - 1):
        a, b = svals[i], svals[i + 1]
        if a == 0.0:
            zeros.append(float(ts[i]))
            continue
        if a * b < 0.0:
            lo, hi = float(ts[i]), float(ts[i + 1])
            flo = a
            for _ in range(52):
                mid = 0.5 * (lo + hi)
                fm = zfun(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            zeros.append(0.5 * (lo + hi))
    return zeros


def count_strip_detailed(
    chi: DirichletCharacter, T: float, which: Which, mesh: float = 1.0
) -> tuple[int, dict]:
    """N-(T, chi) resp. N1-(T, chi): zeros in the open strip 0 < Re s < 1/2.

    For L, boundary zeros (the on-line zeros and, for even chi, s = 0) get
    left-semicircle indentations: on-line zeros are excluded, s = 0 is
    enclosed and subtracted from the winding.
    """
    if not 2.0 <= T <= 50.0:
        raise DomainError("count_strip supports 2 <= T <= 50")
    info: dict = {"t_shift": 0.0}
    t_use = T
    if which == "L":
        gammas = critical_line_zeros(chi, T + 0.02)
        # keep a clear margin to the horizontal edges
        for _ in range(6):
            if all(abs(abs(g) - t_use) > 5e-3 for g in gammas):
                break
            t_use += 3.3e-4
        info["t_shift"] = t_use - T
        radius = 1e-3
        gap = min(
            (abs(a - b) for a, b in zip(sorted(gammas), sorted(gammas)[1:])), default=1.0
        )
        radius = min(radius, gap / 4.0) if gap > 0 else radius
        inds = [
            Indentation(complex(0.5, g), radius, "left") for g in gammas if abs(g) < t_use - radius
        ]
        included = 0
        if chi.kappa == 0:
            inds.append(Indentation(complex(0.0, 0.0), radius, "left"))
            included = 1
        contour = Contour(0.0, 0.5, -t_use, t_use, tuple(inds))
        f = _evaluator(chi, "L")
        try:
            n = winding_count(f, contour, mesh=mesh)
        except BoundaryZeroError as exc:
            raise InconclusiveBoundaryError(
                f"L vanishes on the strip contour at {exc.location}"
            ) from exc
        info["critical_zeros"] = len(gammas)
        return n - included, info

    certified = (
        (chi.kappa == 0 and chi.q >= 216)
        or (chi.kappa == 1 and chi.q >= 10)
    )
    info["center_lemma_certified"] = certified
    f = _evaluator(chi, "Lprime")
    for attempt in range(4):
        contour = Contour(0.0, 0.5, -t_use, t_use)
        try:
            n = winding_count(f, contour, mesh=mesh)
            info["t_shift"] = t_use - T
            return n, info
        except BoundaryZeroError as exc:
            if abs(abs(exc.location.imag) - t_use) < 1e-6:
                t_use += 3.3e-4
                continue
            if certified:
                # lemma says no boundary zeros off the excluded set: refuse to guess
                raise InconclusiveBoundaryError(
                    f"unexpected L' boundary zero at {exc.location}"
                ) from exc
            raise InconclusiveBoundaryError(
                f"L' boundary zero suspected at {exc.location}; "
                "no negativity certificate applies (Lemma conditions unmet)"
            ) from exc
    raise NumericalError("strip count did not stabilize")


def count_strip(chi: DirichletCharacter, T: float, which: Which) -> int:
    return count_strip_detailed(chi, T, which)[0]


def count_strip_mesh_stable(chi: DirichletCharacter, T: float, which: Which) -> int:
    """count_strip recomputed at half the boundary mesh; raises on mismatch."""
    n1, _ = count_strip_detailed(chi, T, which, mesh=1.0)
    n2, _ = count_strip_detailed(chi, T, which, mesh=0.5)
    if n1 != n2:
        raise NumericalError(f"strip count unstable under mesh halving: {n1} vs {n2}")
    return n1


# ----------------------------------------------------------------------
# zero listing by quadrisection

def list_zeros(
    chi: DirichletCharacter, region: Contour, which: Which = "Lprime", mesh: float = 1.0
) -> list[ZeroRecord]:
    """All zeros inside the region: quadrisection to winding <= 1, then Newton.

    The records' total multiplicity always equals the region's winding count.
    """
    f = _evaluator(chi, which)
    total = winding_count(f, region, mesh=mesh)
    if total == 0:
        return []
    recs = _subdivide(chi, which, region, total, mesh)
    got = sum(r.multiplicity for r in recs)
    if got != total:
        raise NumericalError(f"zero listing lost count: region {total}, listed {got}")
    return sorted(recs, key=lambda r: (r.location.imag, r.location.real))


def _subdivide(chi, which: Which, region: Contour, count: int, mesh: float = 1.0) -> list[ZeroRecord]:
    f = _evaluator(chi, which)
    out: list[ZeroRecord] = []
    stack = [(region.sigma_left, region.sigma_right, region.t_min, region.t_max, count)]
    while stack:
        sl, sr, tl, th, n = stack.pop()
        diag = math.hypot(sr - sl, th - tl)
        if n == 1 and diag < 0.75:
            rec = _polish_cell(chi, which, sl, sr, tl, th)
            if rec is not None:
                out.append(rec)
                continue
        if diag < 2e-5:
            z = complex(0.5 * (sl + sr), 0.5 * (tl + th))
            out.append(
                ZeroRecord(
                    location=z,
                    radius=diag / 2,
                    multiplicity=n,
                    classification=_classify(z, diag / 2),
                    which_function=which,
                    note="cell",
                )
            )
            continue
        stack.extend(_split_cell(f, sl, sr, tl, th, n, mesh))
    return out


def _split_cell(f, sl, sr, tl, th, n, mesh: float = 1.0):
    """Quadrisect with deterministic jitter, retrying if a cut hits a zero."""
    for jitter in (0.5, 0.513, 0.487, 0.531):
        sm = sl + jitter * (sr - sl)
        tm = tl + jitter * (th - tl)
        quads = [(sl, sm, tl, tm), (sm, sr, tl, tm), (sl, sm, tm, th), (sm, sr, tm, th)]
        try:
            counts = [winding_count(f, rectangle(*qd), mesh=0.7 * mesh) for qd in quads]
        except (BoundaryZeroError, NumericalError):
            continue
        if sum(counts) != n:
            continue
        return [qd + (c,) for qd, c in zip(quads, counts) if c > 0]
    raise NumericalError(f"could not split cell ({sl},{sr})x({tl},{th})")


def _polish_cell(chi, which: Which, sl, sr, tl, th) -> Optional[ZeroRecord]:
    f = _evaluator(chi, which)
    fr = (lambda s: eval_L(chi, s).value) if which == "L" else (
        lambda s: eval_Lprime(chi, s).value
    )
    z0 = complex(0.5 * (sl + sr), 0.5 * (tl + th))
    try:
        z, last = _newton(fr, z0, tol=1e-12)
    except NumericalError:
        return None
    if not (sl - 1e-9 <= z.real <= sr + 1e-9 and tl - 1e-9 <= z.imag <= th + 1e-9):
        return None  # escaped the cell: keep subdividing instead
    try:
        r = _certify_disk(f, z, max(1e-8, 4.0 * last), 1)
    except NumericalError:
        return None
    return ZeroRecord(
        location=z,
        radius=r,
        multiplicity=1,
        classification=_classify(z, r),
        which_function=which,
    )


# ----------------------------------------------------------------------
# brute-force oracle (independent of the winding machinery)

def grid_zero_scan(
    chi: DirichletCharacter,
    T: float,
    sigma_max: Optional[float] = None,
    spacing: float = 0.02,
    threshold: float = 0.1,
    which: Which = "Lprime",
) -> list[complex]:
    """Zeros of L' (or L) with 0 < Re s <= sigma_max, |Im s| <= T, found by a
    dense |f| grid scan with Newton polishing; dedupe at 1e-6.

    The default sigma ceiling is the certified zero-free bound for G, so
    for L' the scan provably covers all of Re s > 0.
    """
    if sigma_max is None:
        sigma_max = zero_free_sigma(chi.m) if which == "Lprime" else 1.0
    grid_eval = eval_Lprime_grid if which == "Lprime" else eval_L_grid
    fr = (lambda s: eval_Lprime(chi, s).value) if which == "Lprime" else (
        lambda s: eval_L(chi, s).value
    )
    sig = np.arange(spacing, sigma_max + spacing / 2, spacing)
    ts = np.arange(-T - 2 * spacing, T + 2.5 * spacing, spacing)
    candidates: list[complex] = []
    band = 400
    prev_row: Optional[np.ndarray] = None
    prev_kept = None
    for start in range(0, len(ts), band):
        tchunk = ts[start : start + band]
        S = sig[None, :] + 1j * tchunk[:, None]
        # the Hurwitz engine cannot sit exactly on s = 1 (per-term pole,
        # cancelled by the character sum); nudge such grid points
        S = np.where(np.abs(S - 1.0) < 1e-9, S + 5e-8, S)
        vals = np.abs(grid_eval(chi, S.ravel())).reshape(S.shape)
        low = vals < threshold
        # local minima over the 4-neighborhood (rows continue across chunks)
        for i in range(len(tchunk)):
            row = vals[i]
            up = vals[i - 1] if i > 0 else prev_row
            down = vals[i + 1] if i + 1 < len(tchunk) else None
            for jx in np.flatnonzero(low[i]):
                v = row[jx]
                if jx > 0 and row[jx - 1] < v:
                    continue
                if jx + 1 < len(row) and row[jx + 1] < v:
                    continue
                if up is not None and up[jx] < v:
                    continue
                if down is not None and down[jx] < v:
                    continue
                candidates.append(complex(sig[jx], tchunk[i]))
        prev_row = vals[-1]
    zeros: list[complex] = []
    for z0 in candidates:
        try:
            z, _ = _newton(fr, z0, tol=1e-10)
        except NumericalError:
            continue
        if not (0.0 < z.real and abs(z.imag) <= T):
            continue
        if any(abs(z - w) < 1e-6 for w in zeros):
            continue
        zeros.append(z)
    return sorted(zeros, key=lambda z: (z.imag, z.real))
