"""Validation harness: every closed form against its independent oracle, and
every state/measure invariant, with named check families and per-failure
diagnostics (quantity, point, expected, got, tolerance).
"""

import io
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _hp, oracle
from .amplitudes import (
    amp_a, amp_b, amplitude_set, closed_M, cross_vu, cross_vv_uu, kappa,
    mode_sum_l, prob_u2, prob_v2, two_photon, _I_pieces,
)
from .errors import TwoAtomError
from .params import PhysParams
from .quantum import (
    concurrence, mutual_information, partial_trace, report, rho_mixed,
    rho_n0, von_neumann_entropy,
)
from .specfun import ci, ei_imag, si

STANDARD_POINTS = [
    (z, x) for z in (5.0, 10.0, 15.0) for x in (0.5, 0.8, 1.2, 2.0)
]

GRID_X = [0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.2, 1.5, 2.0, 2.5, 3.0]


@dataclass
class CheckResult:
    name: str
    passed: bool
    failures: list = field(default_factory=list)
    info: str = ""


@dataclass
class ValidationReport:
    checks: list
    elapsed: float
    profile: str

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def _relerr(got, expected):
    return abs(got - expected) / max(abs(expected), 1e-300)


# ---------------------------------------------------------------------------
# check families
# ---------------------------------------------------------------------------

def check_specfun(which):
    fails = []
    ys = np.logspace(-6, 3, 1000)
    for y in ys:
        y = float(y)
        if which == "si":
            got, ref = si(y), float(_hp.si(y))
        elif which == "ci":
            got, ref = ci(y), float(_hp.ci(y))
        else:
            got, ref = ei_imag(y), complex(_hp.ei_imag(y))
        if abs(got - ref) > 1e-10 * abs(ref) + 1e-12:
            fails.append(
                f"{which}({y:.6e}): got {got!r}, oracle {ref!r}, "
                f"tol rel 1e-10 / abs 1e-12"
            )
    if which == "ei_imag":
        for y in (0.3, 3.7, 42.0):
            if abs(ei_imag(-y) - ei_imag(y).conjugate()) > 1e-14:
                fails.append(f"conjugation symmetry broken at y={y}")
    return CheckResult(f"specfun_{which}_vs_oracle", not fails, fails,
                       info="1000 log-spaced points in [1e-6, 1e3]")


def check_fourier_identities():
    rng = np.random.default_rng(20090112)
    fails = []
    for _ in range(20):
        g = float(rng.uniform(0.1, 10.0))
        b = float(rng.uniform(0.1, 10.0))
        lhs = oracle.eq_fourier_plus(g, b).value
        rhs = -np.exp(-1j * g * b) * ei_imag(g * b)
        if abs(lhs - rhs) > 1e-6 * max(1.0, abs(rhs)):
            fails.append(
                f"plus identity at (gamma={g:.3f}, beta={b:.3f}): "
                f"lhs {lhs!r}, rhs {rhs!r}, tol 1e-6"
            )
        lhs = oracle.eq_fourier_minus(g, b).value
        rhs = -np.exp(1j * g * b) * (ei_imag(-g * b) - 1j * math.pi)
        if abs(lhs - rhs) > 1e-6 * max(1.0, abs(rhs)):
            fails.append(
                f"minus identity at (gamma={g:.3f}, beta={b:.3f}): "
                f"lhs {lhs!r}, rhs {rhs!r}, tol 1e-6"
            )
    return CheckResult("fourier_branch_identities", not fails, fails,
                       info="20 random (gamma, beta) pairs, both identities")


def check_kernel_M():
    fails = []
    for (z, x) in STANDARD_POINTS:
        q = oracle.quad_M(z, x)
        c = closed_M(PhysParams(z=z, x=x))
        if _relerr(q.value, c) > 1e-6:
            fails.append(
                f"M at (z={z}, x={x}): quad {q.value!r}, closed {c!r}, "
                f"rel tol 1e-6"
            )
    return CheckResult("kernel_M_vs_quadrature", not fails, fails,
                       info=f"{len(STANDARD_POINTS)} standard points")


def check_emission_probs():
    fails = []
    for (z, x) in [(10.0, 1.0), (5.0, 0.8), (15.0, 2.0)]:
        p = PhysParams(z=z, x=x)
        for which, closed in (("u", prob_u2(p)), ("v", prob_v2(p))):
            q = oracle.quad_uv2(z, x, which)
            if _relerr(q.value.real, closed) > 1e-6:
                fails.append(
                    f"|{which}|^2 at (z={z}, x={x}): quad {q.value.real!r}, "
                    f"closed {closed!r}, rel tol 1e-6"
                )
    # golden-rule linear growth of |u|^2
    r = (oracle.quad_uv2(10.0, 10.0 / 200.0, "u").value.real
         / oracle.quad_uv2(10.0, 10.0 / 100.0, "u").value.real)
    if abs(r - 2.0) > 0.05:
        fails.append(f"|u|^2 growth ratio tau 200/100 = {r}, expected 2.0+-0.05")
    return CheckResult("emission_probs_vs_quadrature", not fails, fails)


def check_exchange_fd():
    fails = []
    for (z, x) in [(5.0, 2.0), (10.0, 1.5), (15.0, 1.2)]:
        fd = oracle.fd_check_b(z, x)
        b = amp_b(PhysParams(z=z, x=x))
        if _relerr(fd, b) > 1e-5:
            fails.append(f"b at (z={z}, x={x}): fd {fd!r}, closed {b!r}, "
                         f"rel tol 1e-5")
    for (z, x) in [(10.0, 0.8), (5.0, 0.5)]:
        fd = oracle.fd_check_b(z, x)
        b = amp_b(PhysParams(z=z, x=x))
        if _relerr(fd, b) > 1e-4:
            fails.append(f"b at (z={z}, x={x}): fd {fd!r}, closed {b!r}, "
                         f"rel tol 1e-4")
    return CheckResult("exchange_vs_finite_difference", not fails, fails)


def check_exchange_quadrature():
    fails = []
    for (z, x) in [(5.0, 2.0), (10.0, 0.8), (5.0, 0.5)]:
        q = oracle.quad_exchange_generator(z, x)
        I, _, _ = _I_pieces(z, z / x, extra=True)
        if _relerr(q.value, I) > 1e-8:
            fails.append(
                f"exchange generator at (z={z}, x={x}): quad {q.value!r}, "
                f"closed {I!r}, rel tol 1e-8"
            )
    return CheckResult("exchange_generator_vs_quadrature", not fails, fails,
                       info="validates the inside-light-cone extra term too")


def check_brute_kernels():
    fails = []
    for (z, x) in [(5.0, 0.8), (5.0, 1.2), (10.0, 2.0)]:
        p = PhysParams(z=z, x=x)
        B = oracle.brute_two_photon(z, x)
        vv, uu = cross_vv_uu(p)
        for name, got, closed in [
            ("vu", B.vu, cross_vu(p)), ("l", B.l, mode_sum_l(p)),
            ("vv", B.vv, vv), ("uu", B.uu, uu),
        ]:
            if _relerr(got, closed) > 1e-3:
                fails.append(
                    f"{name} at (z={z}, x={x}): brute {got!r}, "
                    f"closed {closed!r}, rel tol 1e-3"
                )
    return CheckResult("brute_pairwise_kernels", not fails, fails)


def check_brute_two_photon():
    fails = []
    resid = []
    for (z, x) in [(5.0, 0.8), (5.0, 1.2), (10.0, 2.0)]:
        p = PhysParams(z=z, x=x)
        B = oracle.brute_two_photon(z, x)
        f2, g2, fg = two_photon(p)
        for name, got, closed in [("f2", B.f2, f2), ("g2", B.g2, g2),
                                  ("fg", B.fg, fg)]:
            if _relerr(got, closed) > 3e-3:
                fails.append(
                    f"{name} at (z={z}, x={x}): brute {got!r}, "
                    f"closed {closed!r}, rel tol 3e-3"
                )
        resid.append(
            f"(z={z}, x={x}): theta-ordering residual f2 "
            f"{B.theta_residual_f2:.2f}, fg {B.theta_residual_fg:.2f}"
        )
    return CheckResult(
        "brute_two_photon_quantities", not fails, fails,
        info="symmetrized-ordering assembly; exact-theta residual: "
             + "; ".join(resid),
    )


def check_identity_g2():
    fails = []
    for z in (5.0, 10.0, 15.0):
        for x in GRID_X:
            p = PhysParams(z=z, x=x)
            try:
                s = amplitude_set(p)
            except TwoAtomError:
                continue
            ident = s.u2 * s.v2 + abs(s.l) ** 2
            if abs(s.g2 - ident) > 1e-12 * max(s.g2, ident):
                fails.append(f"g2 identity at (z={z}, x={x})")
    return CheckResult("identity_g2", not fails, fails)


def check_amplitude_invariants():
    fails = []
    rng = np.random.default_rng(7)
    for z in (5.0, 10.0, 15.0):
        for x in np.concatenate([GRID_X, rng.uniform(0.05, 3.0, 20)]):
            x = float(x)
            p = PhysParams(z=z, x=x)
            try:
                s = amplitude_set(p)
            except TwoAtomError:
                continue
            if s.u2 < 0 or s.v2 < 0 or s.f2 < 0 or s.g2 < 0:
                fails.append(f"negative probability at (z={z}, x={x})")
            if abs(s.vu) > math.sqrt(s.u2 * s.v2) + 1e-12:
                fails.append(f"|vu| Cauchy-Schwarz at (z={z}, x={x})")
    return CheckResult("amplitude_invariants", not fails, fails)


def check_state_invariants():
    fails = []
    for z in (5.0, 10.0, 15.0):
        for x in GRID_X:
            p = PhysParams(z=z, x=x)
            try:
                s = amplitude_set(p)
                rho = rho_mixed(s)
            except TwoAtomError:
                continue
            herm = float(np.max(np.abs(rho - rho.conj().T)))
            tr = abs(complex(np.trace(rho)) - 1.0)
            mineig = float(np.min(np.linalg.eigvalsh(rho)))
            if herm > 1e-12:
                fails.append(f"hermiticity {herm:.2e} at (z={z}, x={x})")
            if tr > 1e-12:
                fails.append(f"|trace-1| {tr:.2e} at (z={z}, x={x})")
            if mineig < -1e-8:
                fails.append(f"min eig {mineig:.2e} at (z={z}, x={x})")
    return CheckResult("density_matrix_invariants", not fails, fails)


def _random_state(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return v / np.linalg.norm(v)


def _random_local_unitary(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def check_measure_suite():
    fails = []
    rng = np.random.default_rng(42)
    # Wootters vs pure-state determinant formula
    for _ in range(1000):
        v = _random_state(rng)
        rho = np.outer(v, v.conj())
        c_w = concurrence(rho)
        c_p = 2.0 * abs(v[0] * v[3] - v[1] * v[2])
        if abs(c_w - c_p) > 1e-10:
            fails.append(f"Wootters vs 2|ad-bc|: {c_w} vs {c_p}")
            break
    # Werner state p = 0.5
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    werner = 0.5 * np.outer(phi, phi.conj()) + 0.5 * np.eye(4) / 4.0
    if abs(concurrence(werner) - 0.25) > 1e-10:
        fails.append(f"Werner p=0.5 concurrence {concurrence(werner)} != 0.25")
    # entropy maximum and Bell mutual information
    from .quantum import binary_entropy
    if abs(binary_entropy(0.5) - 1.0) > 1e-12:
        fails.append("binary entropy at 1/2 is not 1")
    bell = np.outer(phi, phi.conj())
    if abs(mutual_information(bell) - 2.0) > 1e-12:
        fails.append(f"Bell mutual information {mutual_information(bell)} != 2")
    # local-unitary invariance
    for _ in range(50):
        v = _random_state(rng)
        rho = np.outer(v, v.conj())
        u = np.kron(_random_local_unitary(rng), _random_local_unitary(rng))
        rho2 = u @ rho @ u.conj().T
        if abs(concurrence(rho) - concurrence(rho2)) > 1e-9:
            fails.append("local-unitary invariance broken")
            break
    # subadditivity on computed states
    for (z, x) in STANDARD_POINTS[:6]:
        try:
            rho = rho_mixed(amplitude_set(PhysParams(z=z, x=x)))
        except TwoAtomError:
            continue
        sa = von_neumann_entropy(partial_trace(rho, 0))
        sb = von_neumann_entropy(partial_trace(rho, 1))
        sab = von_neumann_entropy(rho)
        if sab > sa + sb + 1e-10:
            fails.append(f"subadditivity broken at (z={z}, x={x})")
    return CheckResult("entanglement_measure_suite", not fails, fails)


def check_short_time_scaling(gate=False):
    taus = np.logspace(-3, -2, 9)
    bs = [abs(amp_b(PhysParams(z=10.0, x=10.0 / float(t)))) for t in taus]
    slope = float(np.polyfit(np.log(taus), np.log(bs), 1)[0])
    fails = []
    info = (
        f"measured |b| ~ tau^{slope:.3f}; the amplitude is quadratic at short "
        "times (the quoted quartic law holds for the probability |b|^2)"
    )
    if gate and not (3.5 <= slope <= 4.5):
        fails.append(
            f"|b| log-log slope {slope:.3f} outside [3.5, 4.5] "
            "(strict paper-literal gate)"
        )
    return CheckResult("short_time_scaling", not fails, fails, info=info)


def check_limits():
    fails = []
    p = PhysParams(z=10.0, x=1e6)
    if abs(mode_sum_l(p)) > 1e-15:
        fails.append("l does not vanish at tau -> 0")
    p = PhysParams(z=10.0, x=1e9)
    if prob_u2(p) > 1e-12 or prob_v2(p) > 1e-12:
        fails.append("emission probabilities do not vanish at tau -> 0")
    eta1 = prob_v2(PhysParams(z=10.0, x=1e-3)) / (
        prob_u2(PhysParams(z=10.0, x=1e-3)) + prob_v2(PhysParams(z=10.0, x=1e-3))
    )
    if eta1 > 1e-3:
        fails.append(f"eta1(tau=1e4) = {eta1} not < 1e-3")
    # quadratic short-time law: the decay toward x -> inf goes like 1/x^2,
    # so the drop below 1e-3 of the x=2 value happens near x ~ 1e3
    if abs(amp_b(PhysParams(z=10.0, x=100.0))) >= 1e-2 * abs(
        amp_b(PhysParams(z=10.0, x=2.0))
    ) or abs(amp_b(PhysParams(z=10.0, x=1000.0))) >= 1e-3 * abs(
        amp_b(PhysParams(z=10.0, x=2.0))
    ):
        fails.append("b does not decay for x -> inf")
    a = amp_a(PhysParams(z=10.0, x=1.0))
    if a.real != 0.0:
        fails.append("a is not purely imaginary")
    return CheckResult("limits_and_decay", not fails, fails)


def check_determinism():
    from .cli import SweepSpec, render_sweep, run_sweep
    spec = SweepSpec(z_values=(10.0,), x_min=0.3, x_max=2.7, x_steps=41)
    r1, s1 = run_sweep(spec)
    r2, s2 = run_sweep(spec)
    b1 = render_sweep(r1, s1, "csv").encode()
    b2 = render_sweep(r2, s2, "csv").encode()
    fails = [] if b1 == b2 else ["repeated sweep is not byte-identical"]
    return CheckResult("sweep_determinism", not fails, fails)


def check_oracle_selfconsistency():
    fails = []
    d = oracle.branch_overlap_defect()
    if d > 1e-18:
        fails.append(f"oracle series/asymptotic overlap defect {d:.2e} > 1e-18")
    if abs(float(_hp.si(0)) + math.pi / 2) > 1e-30:
        fails.append("oracle si(0) != -pi/2")
    return CheckResult("oracle_selfconsistency", not fails, fails)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def run_validation(profile="default", log=None):
    """Run every check family; exit status is 0 only if all pass.

    The default profile gates implementation correctness (oracle equivalence
    and invariants).  The strict profile additionally gates the paper-literal
    short-time exponent, which the closed forms do not satisfy (see notes in
    check output): |b| is quadratic, |b|^2 quartic.
    """
    log = log or (lambda m: None)
    t0 = time.time()
    checks = [
        check_specfun("si"),
        check_specfun("ci"),
        check_specfun("ei_imag"),
        check_oracle_selfconsistency(),
        check_fourier_identities(),
        check_kernel_M(),
        check_emission_probs(),
        check_exchange_fd(),
        check_exchange_quadrature(),
        check_brute_kernels(),
        check_brute_two_photon(),
        check_identity_g2(),
        check_amplitude_invariants(),
        check_state_invariants(),
        check_measure_suite(),
        check_short_time_scaling(gate=(profile == "strict")),
        check_limits(),
        check_determinism(),
    ]
    rep = ValidationReport(checks=checks, elapsed=time.time() - t0,
                           profile=profile)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        log(f"[{status}] {c.name}" + (f" -- {c.info}" if c.info else ""))
        for f in c.failures:
            log(f"    {f}")
    log(f"{sum(c.passed for c in checks)}/{len(checks)} check families passed "
        f"in {rep.elapsed:.1f} s (profile: {profile})")
    return rep
