"""Branch square root, Bessel engine, quadrature and 2x2 matrix algebra."""
import math

import numpy as np
import pytest

from diracshell.numerics import (
    Mat2C,
    bessel_k,
    bessel_k01_ray,
    branch_sqrt,
    pauli,
    tanh_sinh,
)
from diracshell.tolerances import BESSEL_MAX_ARG, SQRT_REL_TOL

from oracle_bessel import bessel_k_oracle


# ----------------------------------------------------------------------------
# branch_sqrt
# ----------------------------------------------------------------------------

def test_branch_sqrt_principal_values():
    assert branch_sqrt(3.0 - 4.0j) == 2.0 - 1.0j
    assert branch_sqrt(4.0) == 2.0
    assert branch_sqrt(2.0j) == 1.0 + 1.0j


def test_branch_sqrt_square_roundtrip_right_halfplane():
    rng = np.random.default_rng(7)
    for _ in range(400):
        w = complex(rng.uniform(-50, 50), rng.uniform(0.01, 50) * rng.choice([-1, 1]))
        s = branch_sqrt(w)
        assert s.real > 0.0
        assert abs(s * s - w) <= SQRT_REL_TOL * abs(w) * 4
        assert branch_sqrt(w.conjugate()) == s.conjugate()


def test_branch_sqrt_rejects_the_cut():
    for w in (0.0, -1.0, -25.0, complex(-3.0, 0.0)):
        with pytest.raises(ValueError):
            branch_sqrt(w)


# ----------------------------------------------------------------------------
# modified Bessel engine vs the series/asymptotic oracle
# ----------------------------------------------------------------------------

def test_bessel_matches_oracle_real_axis():
    worst = 0.0
    for w in np.geomspace(0.05, 29.0, 40):
        for order in (0, 1):
            got = bessel_k(order, w)
            ref = bessel_k_oracle(order, w)
            worst = max(worst, abs(got - ref) / abs(ref))
    assert worst <= 1e-12, worst


def test_bessel_matches_oracle_complex_arguments():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(60):
        r = rng.uniform(0.1, 20.0)
        phi = rng.uniform(-1.3, 1.3)  # keep Re w > 0
        w = r * complex(math.cos(phi), math.sin(phi))
        for order in (0, 1):
            got = bessel_k(order, w)
            ref = bessel_k_oracle(order, w)
            worst = max(worst, abs(got - ref) / abs(ref))
    assert worst <= 1e-11, worst


def test_bessel_ray_matches_scalar_calls():
    r = np.array([0.2, 0.7, 1.0, 3.5, 9.0, 20.0])
    for a in (1.0, 0.4, complex(1.0, 0.8), complex(0.3, -0.25)):
        k0, k1 = bessel_k01_ray(a, r)
        for i, ri in enumerate(r):
            assert abs(k0[i] - bessel_k(0, a * ri)) <= 1e-12 * abs(k0[i])
            assert abs(k1[i] - bessel_k(1, a * ri)) <= 1e-12 * abs(k1[i])


def test_bessel_domain_checks_and_range_warning():
    with pytest.raises(ValueError):
        bessel_k(2, 1.0)
    with pytest.raises(ValueError):
        bessel_k(0, -1.0)
    with pytest.raises(ValueError):
        bessel_k(0, 0.0)
    with pytest.warns(RuntimeWarning):
        val = bessel_k(0, BESSEL_MAX_ARG + 5.0)
    assert np.isfinite(val.real)


# ----------------------------------------------------------------------------
# tanh-sinh quadrature
# ----------------------------------------------------------------------------

def test_tanh_sinh_smooth_and_singular_integrands():
    assert abs(tanh_sinh(np.sin, 0.0, math.pi) - 2.0) <= 1e-12
    # integrable endpoint singularity, exact value 2
    assert abs(tanh_sinh(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0) - 2.0) <= 1e-11
    got = tanh_sinh(lambda x: np.exp(1j * x), 0.0, 1.0)
    want = complex(math.sin(1.0), 1.0 - math.cos(1.0))
    assert abs(got - want) <= 1e-12


# ----------------------------------------------------------------------------
# Mat2C and the Pauli basis
# ----------------------------------------------------------------------------

def _random_mat(rng):
    e = rng.standard_normal(8)
    return Mat2C(
        complex(e[0], e[1]), complex(e[2], e[3]), complex(e[4], e[5]), complex(e[6], e[7])
    )


def test_mat2c_algebra_identities():
    rng = np.random.default_rng(23)
    eye = Mat2C.identity()
    for _ in range(50):
        a = _random_mat(rng)
        b = _random_mat(rng)
        assert abs((a @ b).det() - a.det() * b.det()) <= 1e-12 * max(1.0, abs(a.det() * b.det()))
        assert ((a @ a.inv()) - eye).max_abs() <= 1e-12 * max(1.0, a.max_abs())
        assert ((a + b) - b - a).max_abs() <= 1e-15 * (a.max_abs() + b.max_abs())
        assert ((a @ b).adjoint() - (b.adjoint() @ a.adjoint())).max_abs() == 0.0
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert np.allclose(a.apply(v), a.as_array() @ v, rtol=0, atol=1e-13)
        assert (Mat2C.from_array(a.as_array()) - a).max_abs() == 0.0


def test_pauli_relations():
    eye = pauli(0)
    for k in (1, 2, 3):
        assert ((pauli(k) @ pauli(k)) - eye).max_abs() == 0.0
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                anti = (pauli(i) @ pauli(j)) + (pauli(j) @ pauli(i))
                assert anti.max_abs() == 0.0
    assert ((pauli(1) @ pauli(2)) - pauli(3).scale(1j)).max_abs() == 0.0
