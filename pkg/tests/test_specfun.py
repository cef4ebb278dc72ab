import math

import numpy as np
import pytest

from twoatom import _hp
from twoatom.errors import DomainError
from twoatom.specfun import ci, delta_t_kernel, ei_imag, si


def test_si_at_zero():
    assert si(0) == -math.pi / 2


def test_si_vanishes_at_infinity():
    assert abs(si(1000.0)) < 2e-3


def test_si_anchor_against_series_oracle():
    assert abs(si(1.0) - float(_hp.si(1.0))) < 1e-12


def test_ci_log_divergence_at_zero():
    assert ci(1e-12) < -20


def test_ci_vanishes_at_infinity():
    assert abs(ci(1000.0)) < 2e-3


def test_ci_anchor_against_series_oracle():
    assert abs(ci(1.0) - float(_hp.ci(1.0))) < 1e-12


def test_ci_domain_error():
    with pytest.raises(DomainError):
        ci(0.0)
    with pytest.raises(DomainError):
        ci(-1.0)


def test_ei_imag_conjugation():
    assert abs(ei_imag(-3.7) - ei_imag(3.7).conjugate()) < 1e-14


def test_ei_imag_anchor():
    ref = complex(_hp.ei_imag(1.0))
    assert abs(ei_imag(1.0) - ref) < 1e-12
    # real part from ci, imaginary part si (branch constant -pi/2 included)
    assert ei_imag(1.0).real == ci(1.0)
    assert ei_imag(1.0).imag == si(1.0)


def test_ei_imag_domain_error():
    with pytest.raises(DomainError):
        ei_imag(0.0)


@pytest.mark.parametrize("branch", ["series", "exact", "asymptotic"])
def test_si_ci_oracle_agreement_per_branch(branch):
    lo, hi = {"series": (1e-6, 6), "exact": (6, 30), "asymptotic": (30, 1e3)}[branch]
    for y in np.logspace(math.log10(lo * 1.001), math.log10(hi * 0.999), 120):
        y = float(y)
        for fn, ref in ((si, _hp.si), (ci, _hp.ci)):
            got, want = fn(y), float(ref(y))
            assert abs(got - want) <= 1e-10 * abs(want) + 1e-12, (fn, y)


def test_delta_t_kernel_at_zero():
    assert delta_t_kernel(0.0) == pytest.approx(1.0 / (2 * math.pi), abs=1e-16)


def test_delta_t_kernel_zeros():
    for n in (1, 2, 5):
        assert delta_t_kernel(2 * math.pi * n) == pytest.approx(0.0, abs=1e-16)


def test_delta_t_kernel_even():
    for u in (0.3, 2.0, 17.5):
        assert delta_t_kernel(-u) == delta_t_kernel(u)


def test_delta_t_kernel_normalization():
    # Dirichlet integral: int dt(u) du = 1, truncated to |u| <= 1e6
    u = np.linspace(1e-9, 1e6, 20_000_001)
    vals = np.sin(0.5 * u) / (math.pi * u)
    total = 2.0 * np.trapezoid(vals, u)
    assert abs(total - 1.0) < 1e-3


def test_determinism():
    vals = {si(2.5), si(2.5), si(2.5)}
    assert len(vals) == 1
    assert ei_imag(7.7) == ei_imag(7.7)
