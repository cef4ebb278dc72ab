"""Acceptance suite: every [PRIMARY] criterion at its stated tolerance,
one pass/fail line printed per criterion.

Two sub-criteria are knowingly red and left red on purpose; both trace to
prose claims that the validated closed forms contradict (the full analysis
lives in the project notes):

* the short-time exponent of |b| is 2, not 4 — the quartic law belongs to
  the probability |b|^2 (three independent evaluation routes agree);
* conc0(z=10, x=2) = 8.25e-11, one order below the [1e-9, 1e-4] band read
  off the "~1e-6 outside the light cone" estimate, which omits alpha and
  the kernel suppression the closed form itself carries.
"""

import math
import time

import numpy as np
import pytest

from twoatom import validation
from twoatom.amplitudes import amp_a, amp_b, amplitude_set
from twoatom.cli import PRESETS, SweepSpec, render_sweep, run_sweep
from twoatom.errors import TwoAtomError
from twoatom.params import PhysParams
from twoatom.quantum import concurrence, report, rho_mixed, rho_n0, validate_density_matrix


def _line(tag, ok, detail=""):
    print(f"ACCEPTANCE [{tag}] {'PASS' if ok else 'FAIL'}"
          + (f" -- {detail}" if detail else ""))
    return ok


def _conc0(z, x):
    p = PhysParams(z=z, x=x)
    return concurrence(rho_n0(amp_a(p), amp_b(p)))


def _pole_grid(z, n_side=1000):
    # log-spaced approach to the cone on both sides, staying just above the
    # |z - tau| >= 1e-9 argument floor (guarded grid, 2000 points)
    lo = math.log10(1.5e-9 / z)
    deltas = np.logspace(lo, -1, n_side)
    return np.concatenate([1.0 - deltas, 1.0 + deltas])


def _measures_on_grid(z_values, xs):
    rows = []
    for z in z_values:
        for x in xs:
            try:
                rows.append((z, x, report(amplitude_set(
                    PhysParams(z=z, x=float(x))))))
            except TwoAtomError:
                continue
    return rows


# ---------------------------------------------------------------------------

def test_a1_fig1_peak_and_runtime():
    t0 = time.time()
    peaks = {}
    for z in (5.0, 10.0, 15.0):
        vals = [_conc0(z, float(x)) for x in _pole_grid(z)]
        peaks[z] = max(vals)
    elapsed = time.time() - t0
    ok = all(v >= 0.999 for v in peaks.values()) and elapsed < 60.0
    assert _line(
        "a1-fig1-peak",
        ok,
        f"max conc0 on 2000-pt guarded grids: "
        + ", ".join(f"z={z:g}: {v:.6f}" for z, v in peaks.items())
        + f"; runtime {elapsed:.1f} s (< 60 s)",
    )


def test_a1_fig1_outside_cone_band():
    got = _conc0(10.0, 2.0)
    ok = 1e-9 <= got <= 1e-4
    _line("a1-outside-cone-band", ok,
          f"conc0(z=10, x=2) = {got:.3e}, band [1e-9, 1e-4]; the honest "
          "closed-form value (also from the printed Eq. form and quadrature) "
          "sits one order below the paper's alpha-free estimate")
    assert ok, (
        f"conc0(z=10, x=2) = {got:.3e} outside [1e-9, 1e-4]: spec band "
        "derived from the paper's order-of-magnitude prose; see notes"
    )


def test_a2_short_time_law():
    taus = np.logspace(-3, -2, 9)
    bs = [abs(amp_b(PhysParams(z=10.0, x=10.0 / float(t)))) for t in taus]
    slope = float(np.polyfit(np.log(taus), np.log(bs), 1)[0])
    ok = 3.5 <= slope <= 4.5
    _line("a2-short-time-law", ok,
          f"log-log slope of |b| vs tau = {slope:.3f}; criterion wants 4 +- "
          "0.5, the amplitude is quadratic (|b|^2 is quartic)")
    assert ok, (
        f"|b| ~ tau^{slope:.3f}: the paper's t^4 claim describes the "
        "probability, not the amplitude; criterion unattainable as stated"
    )


def test_a3_fig2_shape():
    xs = np.linspace(0.05, 3.0, 200)
    c1 = {}
    for x in xs:
        try:
            r = report(amplitude_set(PhysParams(z=10.0, x=float(x))))
            c1[float(x)] = r.conc_n1
        except TwoAtomError:
            continue
    peak = max(c1.values())
    at_005 = c1[0.05]
    x15 = min(c1, key=lambda x: abs(x - 1.5))
    ok = (at_005 < 0.1 * peak) and (c1[x15] > 0.0)
    assert _line(
        "a3-fig2-shape", ok,
        f"conc1(z=10, x=0.05) = {at_005:.2e} < 0.1 * max ({peak:.3e}); "
        f"conc1(z=10, x=1.5) = {c1[x15]:.2e} > 0",
    )


def test_a4_fig3_traced_state():
    xs = SweepSpec(**{**PRESETS["fig3"], "z_values": (5.0, 10.0, 15.0)}).x_grid()
    rows = _measures_on_grid((5.0, 10.0, 15.0), xs)
    assert rows
    big_x = [r for (z, x, r) in rows if x >= 0.5]
    small_x5 = [r for (z, x, r) in rows if z == 5.0 and 0.01 <= x <= 0.3]
    ok_zero = all(r.conc_mixed <= 1e-12 for r in big_x)
    ok_pos = any(r.conc_mixed > 0 for r in small_x5)
    ok_mi = all(r.mutual_info >= 0 for (_, _, r) in rows)
    ok = ok_zero and ok_pos and ok_mi
    assert _line(
        "a4-fig3-traced-state", ok,
        f"conc_mix = 0 on all {len(big_x)} grid points with x >= 0.5; "
        f"positive at {sum(r.conc_mixed > 0 for r in small_x5)} small-x "
        f"points at z=5 (max {max(r.conc_mixed for r in small_x5):.2e}); "
        "mutual information nonnegative everywhere",
    )


def test_a5_identity_suite():
    xs = SweepSpec(**PRESETS["fig3"]).x_grid()
    worst = 0.0
    count = 0
    for z in (5.0, 10.0, 15.0):
        for x in xs:
            try:
                s = amplitude_set(PhysParams(z=z, x=float(x)))
            except TwoAtomError:
                continue
            ident = s.u2 * s.v2 + abs(s.l) ** 2
            worst = max(worst, abs(s.g2 - ident) / max(s.g2, 1e-300))
            count += 1
    ok = worst <= 1e-12 and count > 1000
    assert _line("a5-identity-g2", ok,
                 f"max relative defect {worst:.2e} over {count} grid points")


def test_a6_oracle_equivalence():
    t0 = time.time()
    checks = [
        validation.check_kernel_M(),
        validation.check_emission_probs(),
        validation.check_exchange_fd(),
        validation.check_brute_kernels(),
        validation.check_brute_two_photon(),
    ]
    elapsed = time.time() - t0
    ok = all(c.passed for c in checks) and elapsed < 600.0
    assert _line(
        "a6-oracle-equivalence", ok,
        f"{sum(c.passed for c in checks)}/{len(checks)} oracle families in "
        f"{elapsed:.1f} s (< 600 s); "
        + "; ".join(f for c in checks for f in c.failures),
    )


def test_a7_measure_suite():
    res = validation.check_measure_suite()
    assert _line("a7-measure-suite", res.passed,
                 "Wootters/Werner/Bell/local-unitary/subadditivity "
                 + "; ".join(res.failures))


def test_a8_state_invariants():
    xs = SweepSpec(**PRESETS["fig2"]).x_grid()[::5]
    worst_herm = worst_tr = 0.0
    worst_eig = 1.0
    count = 0
    for z in (5.0, 10.0, 15.0):
        for x in xs:
            try:
                # the sweep emits a row only when the full report succeeds;
                # invariants are asserted for every emitted state
                s = amplitude_set(PhysParams(z=z, x=float(x)))
                report(s)
                rho = rho_mixed(s)
            except TwoAtomError:
                continue
            validate_density_matrix(rho)
            worst_herm = max(worst_herm, float(np.max(np.abs(rho - rho.conj().T))))
            worst_tr = max(worst_tr, abs(complex(np.trace(rho)) - 1.0))
            worst_eig = min(worst_eig, float(np.min(np.linalg.eigvalsh(rho))))
            count += 1
    ok = worst_herm <= 1e-12 and worst_tr <= 1e-12 and worst_eig >= -1e-8
    assert _line(
        "a8-state-invariants", ok,
        f"{count} states: herm defect {worst_herm:.1e}, |tr-1| {worst_tr:.1e}, "
        f"min eig {worst_eig:.1e}",
    )


def test_a9_determinism():
    spec = SweepSpec(**{**PRESETS["fig1"], "z_values": (5.0, 10.0, 15.0)})
    r1, s1 = run_sweep(spec)
    r2, s2 = run_sweep(spec)
    b1 = render_sweep(r1, s1, "csv").encode()
    b2 = render_sweep(r2, s2, "csv").encode()
    ok = b1 == b2 and len(r1) > 1000
    assert _line("a9-determinism", ok,
                 f"fig1 preset sweep twice: {len(r1)} rows, byte-identical")
