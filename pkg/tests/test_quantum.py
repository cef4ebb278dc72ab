import math

import numpy as np
import pytest

from twoatom.amplitudes import amplitude_set
from twoatom.errors import (
    DegenerateInputError,
    InconsistentAmplitudesError,
    InvariantViolationError,
)
from twoatom.params import PhysParams
from twoatom.quantum import (
    binary_entropy,
    concurrence,
    entanglement_entropy,
    mutual_information,
    partial_trace,
    report,
    rho_mixed,
    rho_n0,
    rho_n1,
    rho_n2,
    validate_density_matrix,
    von_neumann_entropy,
)

BELL = np.zeros(4, dtype=complex)
BELL[0] = BELL[3] = 1.0 / math.sqrt(2.0)
BELL_RHO = np.outer(BELL, BELL.conj())


def rand_state(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# sector constructors
# ---------------------------------------------------------------------------

def test_rho_n0_free_evolution():
    rho = rho_n0(0.0, 0.0)
    want = np.zeros((4, 4), dtype=complex)
    want[1, 1] = 1.0
    assert np.allclose(rho, want, atol=1e-16)


def test_rho_n0_balanced_gives_unit_concurrence():
    rho = rho_n0(0.2j, 1.0 + 0.2j)  # |b| = |1 + a|
    assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)


def test_rho_n0_purity():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = complex(*rng.normal(size=2))
        b = complex(*rng.normal(size=2))
        rho = rho_n0(a, b)
        assert complex(np.trace(rho)).real == pytest.approx(1.0, abs=1e-12)
        assert complex(np.trace(rho @ rho)).real == pytest.approx(1.0, abs=1e-12)


def test_rho_n0_degenerate():
    with pytest.raises(DegenerateInputError):
        rho_n0(-1.0, 0.0)


def test_rho_n1_pure_case():
    u2, v2 = 0.4, 0.6
    l = math.sqrt(u2 * v2)
    rho = rho_n1(u2, v2, l)
    assert complex(np.trace(rho @ rho)).real == pytest.approx(1.0, abs=1e-12)


def test_rho_n1_diagonal_and_bell():
    assert concurrence(rho_n1(0.3, 0.7, 0.0)) == pytest.approx(0.0, abs=1e-12)
    rho = rho_n1(0.5, 0.5, 0.5)
    assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)
    eta = float(np.linalg.eigvalsh(partial_trace(rho, 0))[0])
    assert binary_entropy(eta) == pytest.approx(1.0, abs=1e-12)


def test_rho_n1_cauchy_schwarz_error():
    with pytest.raises(InconsistentAmplitudesError):
        rho_n1(0.1, 0.1, 0.5)


def test_rho_n2_cases():
    assert concurrence(rho_n2(0.3, 0.7, 0.0)) == pytest.approx(0.0, abs=1e-12)
    assert concurrence(rho_n2(0.5, 0.5, 0.5)) == pytest.approx(1.0, abs=1e-12)
    # eta2 from the reduced-state eigenvalue
    rho = rho_n2(0.25, 0.75, 0.1)
    eigs = np.linalg.eigvalsh(partial_trace(rho, 0))
    assert max(eigs) == pytest.approx(0.75, abs=1e-12)


def test_rho_mixed_limits_and_invariants():
    p = PhysParams(z=10.0, x=1e9)
    rho = rho_mixed(amplitude_set(p))
    assert rho[1, 1].real == pytest.approx(1.0, abs=1e-9)
    for (z, x) in [(5.0, 0.5), (10.0, 1.4), (15.0, 2.5)]:
        rho = rho_mixed(amplitude_set(PhysParams(z=z, x=x)))
        validate_density_matrix(rho)
        assert float(np.min(np.linalg.eigvalsh(rho))) >= -1e-8


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def test_concurrence_bell_and_product():
    assert concurrence(BELL_RHO) == pytest.approx(1.0, abs=1e-12)
    prod = np.zeros((4, 4), dtype=complex)
    prod[0, 0] = 1.0
    assert concurrence(prod) == 0.0


def test_concurrence_werner():
    # independent eigenvalue route: for Werner, C = max(0, (3p-1)/2)
    p = 0.5
    werner = p * BELL_RHO + (1 - p) * np.eye(4) / 4.0
    assert concurrence(werner) == pytest.approx((3 * p - 1) / 2, abs=1e-10)


def test_concurrence_pure_formula():
    rng = np.random.default_rng(123)
    for _ in range(1000):
        v = rand_state(rng)
        got = concurrence(np.outer(v, v.conj()))
        want = 2.0 * abs(v[0] * v[3] - v[1] * v[2])
        assert abs(got - want) <= 1e-10


def test_concurrence_local_unitary_invariance():
    rng = np.random.default_rng(321)

    def haar2():
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(m)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    for _ in range(100):
        v = rand_state(rng)
        rho = np.outer(v, v.conj())
        u = np.kron(haar2(), haar2())
        rho2 = u @ rho @ u.conj().T
        assert abs(concurrence(rho) - concurrence(rho2)) <= 1e-9


def test_entanglement_entropy():
    assert entanglement_entropy(BELL) == pytest.approx(1.0, abs=1e-12)
    e = np.zeros(4)
    e[1] = 1.0
    assert entanglement_entropy(e) == 0.0
    # two evaluation routes for eta = 0.25
    psi = np.array([math.sqrt(0.25), 0.0, 0.0, math.sqrt(0.75)])
    direct = entanglement_entropy(psi)
    eig = float(np.linalg.eigvalsh(
        partial_trace(np.outer(psi, psi), 0))[0])
    assert direct == pytest.approx(binary_entropy(eig), abs=1e-12)
    assert direct == pytest.approx(binary_entropy(0.25), abs=1e-12)


def test_binary_entropy_edges():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)


def test_partial_trace():
    assert np.allclose(partial_trace(BELL_RHO, 0), np.eye(2) / 2, atol=1e-14)
    rho_a = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
    rho_b = np.array([[0.2, 0.05], [0.05, 0.8]])
    rho = np.kron(rho_a, rho_b)
    assert np.allclose(partial_trace(rho, 0), rho_a, atol=1e-14)
    assert np.allclose(partial_trace(rho, 1), rho_b, atol=1e-14)
    rng = np.random.default_rng(9)
    for _ in range(10):
        v = rand_state(rng)
        rho = np.outer(v, v.conj())
        for keep in (0, 1):
            assert complex(np.trace(partial_trace(rho, keep))).real == (
                pytest.approx(1.0, abs=1e-14)
            )


def test_mutual_information_landmarks():
    prod = np.zeros((4, 4), dtype=complex)
    prod[0, 0] = 1.0
    assert mutual_information(prod) == pytest.approx(0.0, abs=1e-12)
    assert mutual_information(BELL_RHO) == pytest.approx(2.0, abs=1e-12)
    classical = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    assert mutual_information(classical) == pytest.approx(1.0, abs=1e-12)


def test_subadditivity_on_computed_states():
    for (z, x) in [(5.0, 0.5), (10.0, 2.0), (15.0, 1.3)]:
        rho = rho_mixed(amplitude_set(PhysParams(z=z, x=x)))
        sa = von_neumann_entropy(partial_trace(rho, 0))
        sb = von_neumann_entropy(partial_trace(rho, 1))
        assert von_neumann_entropy(rho) <= sa + sb + 1e-10


def test_eigenvalue_clamp_policy():
    rho = np.diag([1.0 + 5e-9, -5e-9, 0.0, 0.0]).astype(complex)
    rho /= np.trace(rho)
    assert von_neumann_entropy(rho) >= 0.0
    bad = np.diag([1.1, -0.1, 0.0, 0.0]).astype(complex)
    with pytest.raises(InvariantViolationError):
        von_neumann_entropy(bad)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def test_report_closed_form_consistency():
    rng = np.random.default_rng(77)
    for _ in range(100):
        a = complex(*(0.3 * rng.normal(size=2)))
        b = complex(*(0.3 * rng.normal(size=2)))
        c0sq = abs(1 + a) ** 2 + abs(b) ** 2
        closed = 2.0 * abs(b) * abs(1 + a) / c0sq
        assert abs(concurrence(rho_n0(a, b)) - closed) <= 1e-10


def test_report_n1_closed_form():
    rng = np.random.default_rng(78)
    for _ in range(100):
        u2, v2 = rng.uniform(0.1, 1.0, 2)
        l = complex(*rng.normal(size=2))
        l *= rng.uniform(0, 1) * math.sqrt(u2 * v2) / abs(l)
        got = concurrence(rho_n1(u2, v2, l))
        assert abs(got - 2 * abs(l) / (u2 + v2)) <= 1e-10


def test_report_at_parameter_point():
    r = report(amplitude_set(PhysParams(z=10.0, x=2.0)))
    r.validate()
    assert r.conc_mixed == 0.0
    assert r.mutual_info >= 0.0
    assert 0 <= r.conc_n1 <= 1


def test_report_short_time_limit():
    # correlations vanish at tau -> 0; the sector entropies of the (vanishing
    # weight) photon sectors tend to 1 because eta_1, eta_2 -> 1/2
    r = report(amplitude_set(PhysParams(z=10.0, x=1e9)))
    assert r.conc_n0 <= 1e-12
    assert r.conc_n1 <= 1e-9
    assert r.conc_n2 <= 1e-7
    assert r.conc_mixed == 0.0
    assert r.ent_n0 <= 1e-12
    assert r.mutual_info <= 1e-12
    assert r.ent_n1 == pytest.approx(1.0, abs=1e-6)
    assert r.ent_n2 == pytest.approx(1.0, abs=1e-3)


def test_n0_peak_and_fall_near_lightcone():
    # concurrence passes through 1 where |b| crosses |1+a| and falls toward
    # the pole; sampled on a log-spaced approach at z = 10
    from twoatom.amplitudes import amp_a, amp_b

    # stay above the |z - tau| >= 1e-9 argument floor: delta >= 1.5e-9/z
    deltas = np.logspace(math.log10(1.5e-10), -1, 400)
    conc = []
    for d in deltas:
        p = PhysParams(z=10.0, x=1.0 + float(d))
        conc.append(concurrence(rho_n0(amp_a(p), amp_b(p))))
    conc = np.array(conc)
    assert conc.max() >= 0.999
    ipk = int(np.argmax(conc))
    assert np.all(np.diff(conc[: ipk + 1]) >= -1e-12)  # monotone fall toward pole
