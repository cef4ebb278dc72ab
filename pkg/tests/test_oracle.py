import math

import mpmath as mp
import numpy as np
import pytest

from twoatom import oracle
from twoatom.amplitudes import amp_b, closed_M, prob_u2, two_photon
from twoatom.errors import DomainError, NonConvergenceError
from twoatom.params import PhysParams
from twoatom.specfun import ei_imag


def test_ref_specfun_si_zero():
    assert oracle.ref_specfun("si", 0.0) == -mp.pi / 2


def test_ref_specfun_domains():
    with pytest.raises(DomainError):
        oracle.ref_specfun("ci", -1.0)
    with pytest.raises(DomainError):
        oracle.ref_specfun("ei_imag", 0.0)
    with pytest.raises(ValueError):
        oracle.ref_specfun("nope", 1.0)


def test_branch_overlap_selfcheck():
    assert oracle.branch_overlap_defect() < 1e-18


def test_ref_against_mpmath_builtins():
    # cross-check the hand-rolled oracle against an unrelated implementation
    with mp.workdps(40):
        for y in (0.5, 3.0, 20.0, 100.0):
            assert abs(oracle.ref_specfun("si", y) - (mp.si(y) - mp.pi / 2)) < 1e-30
            assert abs(oracle.ref_specfun("ci", y) - mp.ci(y)) < 1e-30


def test_fourier_plus_identity_example():
    # int_0^inf e^{i w}/(w + 2) dw = -e^{-2i} Ei(2i)
    q = oracle.eq_fourier_plus(1.0, 2.0)
    want = -np.exp(-2j) * ei_imag(2.0)
    assert abs(q.value - want) < 1e-8


def test_fourier_minus_identity_example():
    q = oracle.eq_fourier_minus(1.0, 2.0)
    want = -np.exp(2j) * (ei_imag(-2.0) - 1j * math.pi)
    assert abs(q.value - want) < 1e-6


def test_quad_M_agreement_and_contract():
    q = oracle.quad_M(5.0, 2.0)
    c = closed_M(PhysParams(z=5.0, x=2.0))
    assert abs(q.value - c) <= 1e-6 * abs(c)
    assert q.error_estimate >= 0
    assert q.error_estimate <= 1e-6 * abs(q.value) + 1e-12
    assert q.evaluations > 0


def test_quad_M_vanishes_at_short_time():
    q = oracle.quad_M(5.0, 1e5)
    assert abs(q.value) < 1e-10


def test_quad_M_domain():
    with pytest.raises(DomainError):
        oracle.quad_M(-1.0, 2.0)
    with pytest.raises(DomainError):
        oracle.quad_M(5.0, 2.0, tol=1e-12)


def test_quad_uv2_matches_closed():
    p = PhysParams(z=10.0, x=1.0)
    q = oracle.quad_uv2(10.0, 1.0, "u")
    assert abs(q.value.real - prob_u2(p)) <= 1e-6 * prob_u2(p)


def test_quad_uv2_linear_growth():
    r = (oracle.quad_uv2(10.0, 10.0 / 200.0, "u").value.real
         / oracle.quad_uv2(10.0, 10.0 / 100.0, "u").value.real)
    assert abs(r - 2.0) <= 0.05


def test_quad_uv2_short_time():
    q = oracle.quad_uv2(10.0, 1e8, "u")  # emission probability ~ kappa pi tau
    assert abs(q.value) < 1e-12


def test_fd_check_b_matches_closed():
    for (z, x, tol) in [(5.0, 2.0, 1e-5), (10.0, 0.8, 1e-4)]:
        fd = oracle.fd_check_b(z, x)
        b = amp_b(PhysParams(z=z, x=x))
        assert abs(fd - b) <= tol * abs(b)


def test_fd_second_order_convergence():
    # raw central differences converge at second order: halving the step
    # shrinks the defect by ~4
    z, x = 5.0, 2.0
    b = amp_b(PhysParams(z=z, x=x))
    e1 = abs(oracle.fd_check_b(z, x, step=0.2, raw=True) - b)
    e2 = abs(oracle.fd_check_b(z, x, step=0.1, raw=True) - b)
    assert 3.0 <= e1 / e2 <= 5.0


def test_brute_g2_identity_on_grid():
    B = oracle.brute_two_photon(5.0, 1.2)
    ident = B.u2 * B.v2 + abs(B.l) ** 2
    assert abs(B.g2 - ident) <= 1e-12 * max(B.g2, ident)


def test_brute_reproduces_cross_vu():
    from twoatom.amplitudes import cross_vu

    B = oracle.brute_two_photon(5.0, 1.2)
    c = cross_vu(PhysParams(z=5.0, x=1.2))
    assert abs(B.vu - c) <= 1e-3 * abs(c)


def test_brute_grid_refinement_improves():
    p = PhysParams(z=5.0, x=1.2)
    f2, g2, fg = two_photon(p)
    errs = []
    for order in (2, 4, 8):
        B = oracle.brute_two_photon(5.0, 1.2, oracle.BruteGrid(gl_order=order))
        errs.append(abs(B.g2 - g2) / g2)
    assert errs[2] < errs[0]


def test_brute_theta_residual_reported():
    B = oracle.brute_two_photon(5.0, 0.8)
    assert B.theta_residual_f2 > 0
    assert math.isfinite(B.theta_residual_fg)
    assert B.f2_exact_theta != B.f2


def test_nested_ordering_identity():
    # D(p, q) + D(q, p) = phi(p) phi(q): the symmetrization identity
    rng = np.random.default_rng(8)
    p, q = rng.uniform(-20, 20, 2)
    lhs = oracle._D_nested(np.array([p]), np.array([q])) + oracle._D_nested(
        np.array([q]), np.array([p])
    )
    rhs = oracle._phi(np.array([p])) * oracle._phi(np.array([q]))
    assert abs(lhs[0] - rhs[0]) < 1e-14


def test_nested_ordering_against_time_quadrature():
    # direct 2D Riemann check of the nested integral
    p, q = 3.2, -1.7
    n = 600
    s1 = (np.arange(n) + 0.5) / n
    s2 = (np.arange(n) + 0.5) / n
    grid = np.exp(1j * p * s1[:, None] + 1j * q * s2[None, :])
    mask = s2[None, :] < s1[:, None]
    approx = (grid * mask).sum() / (n * n)
    exact = oracle._D_nested(np.array([p]), np.array([q]))[0]
    assert abs(approx - exact) < 5e-3


def test_oracle_determinism():
    a = oracle.brute_two_photon(5.0, 1.2)
    b = oracle.brute_two_photon(5.0, 1.2)
    assert a == b
    q1 = oracle.quad_M(5.0, 2.0)
    q2 = oracle.quad_M(5.0, 2.0)
    assert q1 == q2
