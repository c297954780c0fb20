"""Shared numerics: branch-correct square root, modified Bessel K0/K1 for
complex argument, Pauli matrices and a small 2x2 complex matrix type.

Conventions
-----------
* branch_sqrt is the square root holomorphic on C cut along (-inf, 0] with
  positive real part; every other module routes complex square roots
  through it so the branch choice lives in exactly one spot.
* bessel_k evaluates the Laplace-type representation

      K_nu(w) = int_0^inf exp(-w cosh t) cosh(nu t) dt,   Re w > 0,

  by adaptive double-exponential quadrature.  Arguments off the positive
  real axis are handled by rotating the integration path onto the ray
  Im t = -arg(w), which removes the oscillation of the integrand at
  infinity.  No special-function library is involved, so the series and
  asymptotic oracles used in the tests are genuinely independent checks.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .tolerances import (
    BESSEL_MAX_ARG,
    BESSEL_TARGET_TOL,
)

__all__ = [
    "branch_sqrt",
    "bessel_k",
    "bessel_k01_ray",
    "pauli",
    "Mat2C",
    "tanh_sinh",
]


# ============================================================================
# branch-correct square root
# ============================================================================

def branch_sqrt(w: complex) -> complex:
    """Square root with branch cut (-inf, 0] and Re branch_sqrt(w) > 0.

    Raises ValueError on the cut (Im w == 0 and Re w <= 0), where no root
    with positive real part exists.
    """
    w = complex(w)
    if w.imag == 0.0 and w.real <= 0.0:
        raise ValueError(
            "branch_sqrt uses the branch holomorphic on C \\ (-inf, 0] with "
            f"Re > 0; argument {w!r} lies on the excluded half-line"
        )
    return cmath.sqrt(w)


# ============================================================================
# tanh-sinh quadrature
# ============================================================================

_TS_TMAX = 4.0


def _ts_nodes(a, b, h, odd_only):
    """Abscissas/weights of the tanh-sinh rule x = mid + rad*tanh(pi/2 sinh(t)).

    Nodes sit at t = k*h over [-tmax, tmax]; odd_only picks the new points
    of a step-halving refinement.  Offsets from the interval ends are formed
    without cancellation so integrable endpoint singularities stay resolved.
    """
    k_max = int(math.floor(_TS_TMAX / h))
    k = np.arange(-k_max, k_max + 1)
    if odd_only:
        k = k[np.abs(k) % 2 == 1]
    t = k * h
    g = 0.5 * math.pi * np.sinh(t)
    # 1 + tanh(g) = 2 / (1 + exp(-2g)), kept in product form for stability
    lo = (b - a) / (1.0 + np.exp(-2.0 * g))   # x - a
    hi = (b - a) / (1.0 + np.exp(2.0 * g))    # b - x
    x = np.where(t >= 0, b - hi, a + lo)
    wgt = (b - a) * 0.5 * math.pi * np.cosh(t) / (np.cosh(g) * np.cosh(g) * 2.0)
    return x, wgt


def tanh_sinh(f, a: float, b: float, rel_tol: float = 1e-13, max_level: int = 12):
    """Adaptive tanh-sinh quadrature of f over the finite interval [a, b].

    f must accept an ndarray of abscissas and return values (real or
    complex) of the same shape; integrable endpoint singularities are
    allowed.  Refinement halves the step and reuses previous evaluations;
    iteration stops once two consecutive levels agree to rel_tol.
    """
    h = 0.5
    x, wgt = _ts_nodes(a, b, h, False)
    total = h * np.sum(wgt * f(x))
    for _ in range(max_level):
        h *= 0.5
        x, wgt = _ts_nodes(a, b, h, True)
        add = np.sum(wgt * f(x))
        new_total = 0.5 * total + h * add
        if abs(new_total - total) <= rel_tol * abs(new_total):
            return new_total
        total = new_total
    return total


# ============================================================================
# modified Bessel K0 / K1
# ============================================================================

def _tail_cutoff(scale: float, order: int, drop: float = 55.0) -> float:
    """Smallest U with scale*(cosh U - 1) >= drop + order*U (monotone, so a
    couple of fixed-point passes suffice)."""
    u = math.acosh(1.0 + drop / scale)
    for _ in range(3):
        u = math.acosh(1.0 + (drop + order * u + math.log1p(u)) / scale)
    return u


def _k01_real_ray(x: np.ndarray, rel_tol: float = BESSEL_TARGET_TOL):
    """K0(x) and K1(x) for an array of positive reals.

    Trapezoid rule on the even integrand exp(-x cosh t) cosh(nu t); the
    even reflection kills the odd Euler-Maclaurin terms at t = 0 and the
    double-exponential tail kills them at the cutoff, so halving the step
    converges geometrically.  Both orders share the exponential table.
    """
    x = np.asarray(x, dtype=float)
    xmin = float(np.min(x))
    u_max = _tail_cutoff(xmin, 1)
    n = 16
    def _trap(rows, h):
        return h * (0.5 * (rows[:, 0] + rows[:, -1]) + rows[:, 1:-1].sum(axis=1))

    with np.errstate(under="ignore"):
        t = np.linspace(0.0, u_max, n + 1)
        e = np.exp(-np.outer(x, np.cosh(t)))
        k0 = _trap(e, u_max / n)
        k1 = _trap(e * np.cosh(t), u_max / n)
        for _ in range(14):
            h = u_max / n
            tm = (np.arange(n) + 0.5) * h
            em = np.exp(-np.outer(x, np.cosh(tm)))
            k0_new = 0.5 * k0 + 0.5 * h * np.sum(em, axis=1)
            k1_new = 0.5 * k1 + 0.5 * h * np.sum(em * np.cosh(tm), axis=1)
            n *= 2
            done = np.all(np.abs(k0_new - k0) <= rel_tol * np.abs(k0_new) + 1e-300) and np.all(
                np.abs(k1_new - k1) <= rel_tol * np.abs(k1_new) + 1e-300
            )
            k0, k1 = k0_new, k1_new
            if done:
                break
    return k0.astype(complex), k1.astype(complex)


def _k01_rotated_ray(a: complex, r: np.ndarray, rel_tol: float = BESSEL_TARGET_TOL):
    """K0(a r) and K1(a r) for positive radii r along the ray arg = arg(a).

    The contour [0, inf) is bent into the vertical segment t = -i s,
    0 <= s <= phi, followed by the horizontal ray t = u - i phi.  On the
    horizontal part Im(w cosh t) decays like exp(-u), so the tail is free
    of oscillation for every arg(w) in (-pi/2, pi/2).
    """
    phi = cmath.phase(a)
    sgn = 1.0 if phi >= 0 else -1.0
    aphi = abs(phi)
    r = np.asarray(r, dtype=float)
    w = a * r

    # vertical segment: -i*sgn * int_0^{|phi|} exp(-w cos s) cos(nu s) ds
    def seg1(nu):
        def f(s):
            return np.exp(-np.outer(w, np.cos(s))) * np.cos(nu * s)

        return -1j * sgn * _tanh_sinh_rows(f, 0.0, aphi, rel_tol)

    # horizontal ray: int_0^U exp(-w cosh(u - i phi)) cosh(nu (u - i phi)) du
    scale = float(np.min(np.abs(w))) * max(math.cos(phi) ** 2, 1e-12)
    u_max = _tail_cutoff(scale, 1)

    def seg2(nu):
        def f(u):
            c = np.cosh(u - 1j * phi)
            return np.exp(-np.outer(w, c)) * np.cosh(nu * (u - 1j * phi))

        return _tanh_sinh_rows(f, 0.0, u_max, rel_tol)

    k0 = seg1(0) + seg2(0)
    k1 = seg1(1) + seg2(1)
    return k0, k1


def _tanh_sinh_rows(f, a, b, rel_tol, max_level=11):
    """tanh_sinh for integrands returning one row per batch element."""
    h = 0.5
    x, wgt = _ts_nodes(a, b, h, False)
    with np.errstate(under="ignore"):
        total = h * f(x) @ wgt
        for _ in range(max_level):
            h *= 0.5
            x, wgt = _ts_nodes(a, b, h, True)
            add = f(x) @ wgt
            new_total = 0.5 * total + h * add
            if np.all(np.abs(new_total - total) <= rel_tol * np.abs(new_total) + 1e-300):
                return new_total
            total = new_total
    return total


def _k01_ray(a: complex, r: np.ndarray):
    """K0 and K1 at a*r for positive radii r; Re(a) > 0 required."""
    a = complex(a)
    if a.real <= 0.0:
        raise ValueError(f"bessel argument ray must satisfy Re > 0, got direction {a!r}")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("radii must be strictly positive")
    if a.imag == 0.0:
        return _k01_real_ray(a.real * r)
    return _k01_rotated_ray(a, r)


def bessel_k01_ray(a: complex, r):
    """K0 and K1 at a*r for an array of positive radii r, with Re a > 0.

    Batch companion of bessel_k: one shared quadrature table serves the
    whole ray, which is what the kernel quadratures need.  Returns the pair
    (k0, k1) of complex arrays shaped like r.
    """
    a = complex(a)
    r = np.asarray(r, dtype=float)
    top = float(np.max(np.abs(r))) * abs(a) if r.size else 0.0
    if top > BESSEL_MAX_ARG:
        warnings.warn(
            f"bessel_k accuracy degrades for |w| > {BESSEL_MAX_ARG:g} (|w| = {top:.3g})",
            RuntimeWarning,
            stacklevel=2,
        )
    return _k01_ray(a, r)


def bessel_k(order: int, w: complex) -> complex:
    """Modified Bessel function K_order(w) for complex w with Re w > 0.

    order must be 0 or 1.  Guaranteed relative accuracy BESSEL_REL_TOL for
    1e-3 <= |w| <= BESSEL_MAX_ARG; outside that modulus the routine still
    evaluates but emits an accuracy warning for |w| > BESSEL_MAX_ARG where
    the result underflows toward zero.
    """
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order!r}")
    w = complex(w)
    if w.real <= 0.0:
        raise ValueError(
            f"bessel_k requires Re w > 0 (Laplace-type representation), got {w!r}"
        )
    if abs(w) > BESSEL_MAX_ARG:
        warnings.warn(
            f"bessel_k accuracy degrades for |w| > {BESSEL_MAX_ARG:g} (|w| = {abs(w):.3g})",
            RuntimeWarning,
            stacklevel=2,
        )
    k0, k1 = _k01_ray(w, np.array([1.0]))
    out = (k0 if order == 0 else k1)[0]
    if w.imag == 0.0:
        return complex(out.real, 0.0)
    return complex(out)


# ============================================================================
# Pauli matrices and 2x2 complex matrices
# ============================================================================

@dataclass(frozen=True)
class Mat2C:
    """2x2 complex matrix; exactly the algebra the boundary symbols need."""

    a11: complex
    a12: complex
    a21: complex
    a22: complex

    @staticmethod
    def identity() -> "Mat2C":
        return Mat2C(1.0 + 0j, 0j, 0j, 1.0 + 0j)

    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    def inv(self) -> "Mat2C":
        d = self.det()
        if d == 0:
            raise ValueError("matrix is singular, no inverse")
        return Mat2C(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)

    def __add__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a11 + other.a11,
            self.a12 + other.a12,
            self.a21 + other.a21,
            self.a22 + other.a22,
        )

    def __sub__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a11 - other.a11,
            self.a12 - other.a12,
            self.a21 - other.a21,
            self.a22 - other.a22,
        )

    def __matmul__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def scale(self, s: complex) -> "Mat2C":
        return Mat2C(s * self.a11, s * self.a12, s * self.a21, s * self.a22)

    def real_part(self) -> "Mat2C":
        """Entrywise real part (not the Hermitian part)."""
        return Mat2C(
            complex(self.a11.real),
            complex(self.a12.real),
            complex(self.a21.real),
            complex(self.a22.real),
        )

    def conj(self) -> "Mat2C":
        return Mat2C(
            self.a11.conjugate(),
            self.a12.conjugate(),
            self.a21.conjugate(),
            self.a22.conjugate(),
        )

    def adjoint(self) -> "Mat2C":
        return Mat2C(
            self.a11.conjugate(),
            self.a21.conjugate(),
            self.a12.conjugate(),
            self.a22.conjugate(),
        )

    def max_abs(self) -> float:
        """Entrywise sup norm."""
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))

    def apply(self, v):
        """Matrix-vector product on a length-2 sequence."""
        return (
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        )

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    @classmethod
    def from_array(cls, arr) -> "Mat2C":
        return cls(complex(arr[0][0]), complex(arr[0][1]), complex(arr[1][0]), complex(arr[1][1]))


_PAULI = (
    Mat2C(1 + 0j, 0j, 0j, 1 + 0j),
    Mat2C(0j, 1 + 0j, 1 + 0j, 0j),
    Mat2C(0j, -1j, 1j, 0j),
    Mat2C(1 + 0j, 0j, 0j, -1 + 0j),
)


def pauli(k: int) -> Mat2C:
    """Pauli matrix sigma_k, with sigma_0 the identity."""
    if not isinstance(k, int) or isinstance(k, bool) or k not in (0, 1, 2, 3):
        raise IndexError(f"Pauli index must be an integer in 0..3, got {k!r}")
    return _PAULI[k]
