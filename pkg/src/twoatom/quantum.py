"""Two-qubit states of each photon sector and their correlation measures.

Basis order throughout: {|EE>, |EG>, |GE>, |GG>}.  Logarithms are base 2, so
a maximally entangled pair carries one bit of entanglement entropy and two
bits of mutual information.  Eigenvalues in [-EIG_FLOOR, 0) are clamped to
zero before any entropy or concurrence; the closed forms are an order-alpha
truncation, positive only to that order.
"""

import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import AmplitudeSet
from .errors import (
    DegenerateInputError,
    InconsistentAmplitudesError,
    InvariantViolationError,
)

EIG_FLOOR = 1e-8

_SYSY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def validate_density_matrix(rho, eig_floor=EIG_FLOOR):
    """Hermiticity, unit trace and positivity (to truncation tolerance)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvariantViolationError(f"expected 4x4 matrix, got {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > 1e-12:
        raise InvariantViolationError(f"hermiticity defect {herm:.3e} > 1e-12")
    tr = abs(rho.trace() - 1.0)
    if tr > 1e-12:
        raise InvariantViolationError(f"|trace - 1| = {tr:.3e} > 1e-12")
    mineig = float(np.min(np.linalg.eigvalsh(rho)))
    if mineig < -eig_floor:
        raise InvariantViolationError(
            f"min eigenvalue {mineig:.3e} below -{eig_floor:.1e}"
        )
    return rho


def _clamped_spectrum(rho, eig_floor=EIG_FLOOR):
    vals = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    if np.min(vals) < -eig_floor:
        raise InvariantViolationError(
            f"eigenvalue {np.min(vals):.3e} below clamping floor"
        )
    # clipping at 1 keeps -x log x >= 0 when clamping pushed weight above 1
    return np.clip(vals, 0.0, 1.0)


def binary_entropy(eta):
    """h(eta) = -eta log2 eta - (1-eta) log2(1-eta), with 0 log 0 = 0."""
    if eta < -1e-12 or eta > 1.0 + 1e-12:
        raise InvariantViolationError(f"eta = {eta} outside [0, 1]")
    eta = min(max(eta, 0.0), 1.0)
    out = 0.0
    for q in (eta, 1.0 - eta):
        if q > 0.0:
            out -= q * math.log2(q)
    return out


def von_neumann_entropy(rho, eig_floor=EIG_FLOOR):
    """S(rho) = -Tr rho log2 rho."""
    vals = _clamped_spectrum(rho, eig_floor)
    return float(-sum(v * math.log2(v) for v in vals if v > 0.0))


# ---------------------------------------------------------------------------
# sector states
# ---------------------------------------------------------------------------

def rho_n0(a, b):
    """Vacuum-sector pure state ((1+a)|EG> + b|GE>)/c0 as a projector."""
    n = abs(1.0 + a) ** 2 + abs(b) ** 2
    if n == 0.0:
        raise DegenerateInputError("n=0 state has zero norm")
    vec = np.array([0.0, 1.0 + a, b, 0.0], dtype=complex) / math.sqrt(n)
    return np.outer(vec, vec.conj())


def rho_n1(u2, v2, l):
    """One-photon sector: mixed state on the {|EE>, |GG>} block."""
    c1sq = u2 + v2
    if c1sq == 0.0:
        raise DegenerateInputError("n=1 sector has zero norm")
    if u2 < 0 or v2 < 0:
        raise InconsistentAmplitudesError("negative emission probability")
    al2 = abs(l) ** 2
    if al2 > u2 * v2 + 1e-9 * max(u2 * v2, al2) + 1e-30:
        raise InconsistentAmplitudesError(
            f"|l|^2 = {al2:.6e} exceeds u2 v2 = {u2 * v2:.6e}; sector state "
            "not positive (perturbative validity lost on the light-cone strip)"
        )
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = v2
    rho[3, 3] = u2
    rho[0, 3] = l
    rho[3, 0] = np.conj(l)
    return rho / c1sq


def rho_n2(f2, g2, fg):
    """Two-photon sector: mixed state on the {|EG>, |GE>} block."""
    c2sq = f2 + g2
    if c2sq == 0.0:
        raise DegenerateInputError("n=2 sector has zero norm")
    if f2 < 0 or g2 < 0:
        raise InconsistentAmplitudesError("negative two-photon weight")
    afg2 = abs(fg) ** 2
    if afg2 > f2 * g2 + 1e-9 * max(f2 * g2, afg2) + 1e-30:
        raise InconsistentAmplitudesError(
            f"|fg|^2 = {afg2:.6e} exceeds f2 g2 = {f2 * g2:.6e}"
        )
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = f2
    rho[2, 2] = g2
    rho[1, 2] = fg
    rho[2, 1] = np.conj(fg)
    return rho / c2sq


def rho_mixed(s: AmplitudeSet):
    """Field-traced atomic state: the X-shaped matrix over all sectors."""
    one_a = 1.0 + s.a
    N = (
        abs(one_a) ** 2 + abs(s.b) ** 2 + s.u2 + s.v2 + s.f2 + s.g2
    )
    if N == 0.0:
        raise DegenerateInputError("traced state has zero norm")
    coh = one_a * np.conj(s.b) + s.fg
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = s.v2
    rho[0, 3] = s.l
    rho[3, 0] = np.conj(s.l)
    rho[3, 3] = s.u2
    rho[1, 1] = abs(one_a) ** 2 + s.f2
    rho[2, 2] = abs(s.b) ** 2 + s.g2
    rho[1, 2] = coh
    rho[2, 1] = np.conj(coh)
    return rho / N


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def concurrence(rho):
    """Wootters concurrence from the spin-flip eigenvalue formula.

    The sqrt-eigenvalues of rho (sy x sy) rho* (sy x sy) are computed as the
    singular values of sqrt(rho) (sy x sy) sqrt(rho)*, which is numerically
    exact on rank-deficient states (plain eigenvalues of the non-Hermitian
    product carry sqrt(machine-eps) noise).
    """
    rho = np.asarray(rho, dtype=complex)
    vals, vecs = np.linalg.eigh(rho)
    if float(vals.min()) < -EIG_FLOOR:
        raise InvariantViolationError(
            f"state eigenvalue {vals.min():.3e} below clamping floor"
        )
    sqrt_rho = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    lam = np.linalg.svd(sqrt_rho @ _SYSY @ sqrt_rho.conj(), compute_uv=False)
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def partial_trace(rho, keep):
    """Reduced 2x2 state of one atom; keep = 0 for A, 1 for B."""
    rho = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ikjk->ij", rho)
    if keep == 1:
        return np.einsum("kikj->ij", rho)
    raise ValueError(f"keep must be 0 (atom A) or 1 (atom B), got {keep}")


def entanglement_entropy(psi):
    """Entropy of entanglement of a pure two-qubit state (base 2)."""
    psi = np.asarray(psi, dtype=complex).reshape(4)
    n = float(np.vdot(psi, psi).real)
    if abs(n - 1.0) > 1e-12:
        raise InvariantViolationError(f"state norm {n} is not 1")
    rho_a = partial_trace(np.outer(psi, psi.conj()), keep=0)
    eta = float(np.linalg.eigvalsh(rho_a)[0])
    return binary_entropy(min(max(eta, 0.0), 1.0))


def mutual_information(rho, eig_floor=EIG_FLOOR):
    """S(rho_A) + S(rho_B) - S(rho_AB), total correlations in bits."""
    sa = von_neumann_entropy(partial_trace(rho, 0), eig_floor)
    sb = von_neumann_entropy(partial_trace(rho, 1), eig_floor)
    sab = von_neumann_entropy(rho, eig_floor)
    return sa + sb - sab


# ---------------------------------------------------------------------------
# per-point report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntanglementReport:
    """Concurrences and entropies per photon sector plus traced-state data."""

    conc_n0: float
    conc_n1: float
    conc_n2: float
    conc_mixed: float
    ent_n0: float
    ent_n1: float
    ent_n2: float
    mutual_info: float
    norm_N: float

    def validate(self):
        for name in ("conc_n0", "conc_n1", "conc_n2", "conc_mixed",
                     "ent_n0", "ent_n1", "ent_n2"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise InvariantViolationError(f"{name} = {v} outside [0, 1]")
        if not -1e-10 <= self.mutual_info <= 2.0 + 1e-12:
            raise InvariantViolationError(
                f"mutual_info = {self.mutual_info} outside [0, 2]"
            )
        if not self.norm_N > 0:
            raise InvariantViolationError("norm_N must be positive")
        if not all(
            math.isfinite(getattr(self, f))
            for f in self.__dataclass_fields__
        ):
            raise InvariantViolationError("non-finite report field")
        return self


def report(s: AmplitudeSet) -> EntanglementReport:
    """All measures at one parameter point, via the general evaluators."""
    one_a = 1.0 + s.a
    c0sq = abs(one_a) ** 2 + abs(s.b) ** 2
    c1sq = s.u2 + s.v2
    c2sq = s.f2 + s.g2

    r0 = rho_n0(s.a, s.b)
    r1 = rho_n1(s.u2, s.v2, s.l)
    r2 = rho_n2(s.f2, s.g2, s.fg)
    rmix = rho_mixed(s)

    N = abs(one_a) ** 2 + abs(s.b) ** 2 + s.u2 + s.v2 + s.f2 + s.g2
    rep = EntanglementReport(
        conc_n0=concurrence(r0),
        conc_n1=concurrence(r1),
        conc_n2=concurrence(r2),
        conc_mixed=concurrence(rmix),
        ent_n0=binary_entropy(abs(s.b) ** 2 / c0sq),
        ent_n1=binary_entropy(s.v2 / c1sq),
        ent_n2=binary_entropy(s.g2 / c2sq),
        mutual_info=max(mutual_information(rmix), 0.0),
        norm_N=N,
    )
    return rep.validate()
