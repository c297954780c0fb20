"""Independent fiber oracle for the in-gap band.

Fourier transforming along the shell direction decomposes the operator
into a family of transmission problems on the transverse line, indexed by
the longitudinal momentum p.  At energy z inside the fiber gap
(-sqrt(p^2+m^2), sqrt(p^2+m^2)) each half-line carries exactly one decaying
solution of the fiber system

    (sigma_1 p +/- i kappa sigma_2 + m sigma_3) v = z v,
    kappa = sqrt(p^2 + m^2 - z^2) > 0,

and z is a fiber eigenvalue exactly when some combination of the two
decaying solutions satisfies the transmission condition

    i sigma_2 (f_up - f_down) = (eta/2) (f_up + f_down)      on the shell.

matching_determinant evaluates the determinant of that 2x2 homogeneous
system.  Nothing here touches the boundary-symbol module, so agreement of
the roots with the closed-form dispersion relation checks both routes.

A normalization detail that matters: the textbook solution vectors
(p + kappa, z - m) and (p - kappa, z - m) each vanish identically at one
interior energy (z = m or z = -m, where the second component and, at
kappa = |p|, the first both cross zero), which would plant a spurious root
of the determinant there.  The determinant is therefore formed from the
equivalent rescaled pair

    up   = (|p| + kappa, z - m),      down = (z + m, |p| + kappa),

whose leading entries stay strictly positive across the whole gap; the
fiber at -p is unitarily equivalent to the fiber at +p, so evaluating at
|p| loses nothing.  FiberSolution still reports the textbook vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import tanh_sinh
from .spectrum import dispersion_energy
from .symbol import ShellParams
from .tolerances import (
    FIBER_BISECT_TOL,
    FIBER_GAP_MARGIN,
    FIBER_SCAN_NODES,
)

__all__ = [
    "FiberSolution",
    "matching_determinant",
    "fiber_eigenvalue",
    "kernel_at_zero_scan",
    "quasimode_residual",
]


@dataclass(frozen=True)
class FiberSolution:
    """Decaying-solution data of one fiber: the two boundary vectors and the
    matching determinant of the transmission system."""

    p: float
    z: float
    kappa: float
    v_plus: tuple
    v_minus: tuple
    match_det: complex

    @classmethod
    def create(cls, params: ShellParams, p: float, z: float) -> "FiberSolution":
        kappa = _kappa_in_gap(params.m, p, z)
        v_plus = (p + kappa, z - params.m)
        v_minus = (p - kappa, z - params.m)
        return cls(p, z, kappa, v_plus, v_minus, matching_determinant(params, p, z))


def _gap_halfwidth(m: float, p: float) -> float:
    return math.hypot(p, m)


def _kappa_in_gap(m: float, p: float, z: float) -> float:
    """Decay rate for real z strictly inside the fiber gap."""
    z = float(z)
    half = _gap_halfwidth(m, p)
    if not abs(z) < half:
        raise ValueError(
            f"z = {z!r} is outside the open fiber gap (-{half!r}, {half!r}) at p = {p!r}"
        )
    return math.sqrt(p * p + m * m - z * z)


def _match_det_raw(eta: float, m: float, p, z):
    """Matching determinant over broadcastable arrays of p and real z.

    Columns of the homogeneous system in the coefficients (alpha, beta):
    A = (i sigma_2 - eta/2) up and B = -(i sigma_2 + eta/2) down, with
    i sigma_2 acting as (v1, v2) -> (v2, -v1).
    """
    p = np.abs(np.asarray(p, dtype=float))
    z = np.asarray(z, dtype=float)
    kappa = np.sqrt(p * p + m * m - z * z)
    lead = p + kappa
    up = (lead, z - m)
    down = (z + m, lead)
    a1 = up[1] - 0.5 * eta * up[0]
    a2 = -up[0] - 0.5 * eta * up[1]
    b1 = -down[1] - 0.5 * eta * down[0]
    b2 = down[0] - 0.5 * eta * down[1]
    return a1 * b2 - a2 * b1


def matching_determinant(params: ShellParams, p: float, z: float) -> complex:
    """Determinant of the transmission matching system at real z in the open
    fiber gap.  Vanishes exactly at fiber eigenvalues; at critical coupling
    and z = 0 it vanishes identically in p (the flat band)."""
    _kappa_in_gap(params.m, p, z)  # domain check
    return complex(float(_match_det_raw(params.eta, params.m, p, z)))


def fiber_eigenvalue(params: ShellParams, p: float):
    """The unique root of the matching determinant inside the fiber gap,
    or None when the scan finds no sign change.

    Sign-scan over FIBER_SCAN_NODES nodes spanning the gap up to a relative
    end margin FIBER_GAP_MARGIN (kappa degenerates at the endpoints), then
    bisection to FIBER_BISECT_TOL.  Undefined for eta in {0, +2, -2}.
    """
    if params.critical or params.eta == 0.0:
        raise ValueError(f"no isolated fiber root for eta = {params.eta!r}")
    half = _gap_halfwidth(params.m, p)
    if half == 0.0:
        raise ValueError("empty fiber gap (m = 0 and p = 0)")
    top = half * (1.0 - FIBER_GAP_MARGIN)
    zs = np.linspace(-top, top, FIBER_SCAN_NODES)
    det = _match_det_raw(params.eta, params.m, p, zs)
    hits = np.nonzero(det == 0.0)[0]
    if hits.size:
        return float(zs[hits[0]])
    flips = np.nonzero(np.signbit(det[:-1]) != np.signbit(det[1:]))[0]
    if flips.size == 0:
        return None
    if flips.size > 1:
        raise RuntimeError(
            f"multiple sign changes of the matching determinant at p = {p!r}"
        )
    lo, hi = float(zs[flips[0]]), float(zs[flips[0] + 1])
    f_lo = float(_match_det_raw(params.eta, params.m, p, lo))
    while hi - lo > FIBER_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = float(_match_det_raw(params.eta, params.m, p, mid))
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def kernel_at_zero_scan(params: ShellParams, p_grid=None) -> float:
    """max over the momentum grid of |matching determinant at z = 0|.

    At critical coupling this is the flat-band certificate: the determinant
    vanishes for every p.  Requires critical parameters (and m != 0, so that
    z = 0 lies inside every fiber gap); default grid covers |p| <= 50.
    """
    if not params.critical:
        raise ValueError(
            f"kernel scan requires critical coupling (eta = +/-2), got {params.eta!r}"
        )
    grid = np.linspace(-50.0, 50.0, 2001) if p_grid is None else np.asarray(p_grid, float)
    for p in (float(grid.min()), float(grid.max()), 0.0):
        _kappa_in_gap(params.m, p, 0.0)  # z = 0 must sit inside every fiber gap
    det = _match_det_raw(params.eta, params.m, grid, 0.0)
    return float(np.max(np.abs(det)))


def quasimode_residual(params: ShellParams, p0: float, width: float) -> float:
    """Relative residual of a wave packet glued from fiber eigenvectors with
    a Gaussian momentum envelope of standard deviation `width` around p0:

        R = sqrt( int g^2 (z(p) - z(p0))^2 dp / int g^2 dp ),

    integrated adaptively over [p0 - 8 width, p0 + 8 width].  The packet
    weight g^2 is the Gaussian density with standard deviation `width`, so
    for small widths R ~ |z'(p0)| width where the band has slope and
    R ~ width^2 at its extremum.  With the fiber eigenfunctions normalized
    the packet satisfies ||(A - z(p0)) f|| / ||f|| = R, so R -> 0 certifies
    that z(p0) belongs to the spectrum."""
    if width <= 0.0:
        raise ValueError(f"envelope width must be positive, got {width!r}")
    z0 = dispersion_energy(params, p0)
    # z(p) = scale * sqrt(p^2 + m^2); recover the constant from one sample.
    scale = dispersion_energy(params, 1.0) / math.hypot(1.0, params.m)
    m = params.m

    def envelope_sq(p):
        d = (p - p0) / width
        return np.exp(-0.5 * d * d)

    def weighted(p):
        z = scale * np.sqrt(p * p + m * m)
        return envelope_sq(p) * (z - z0) ** 2

    lo, hi = p0 - 8.0 * width, p0 + 8.0 * width
    num = tanh_sinh(weighted, lo, hi)
    den = tanh_sinh(envelope_sq, lo, hi)
    return math.sqrt(float(num.real) / float(den.real))
