"""Vacuum-mediated correlations of two neutral two-level atoms.

Closed-form second-order amplitudes in the dimensionless controls
z = Omega L/c and x = L/(c t), photon-sector two-qubit states, entanglement
measures, and independent numerical oracles validating every closed form.
"""

from .amplitudes import (
    AmplitudeSet,
    amp_a,
    amp_b,
    amplitude_set,
    cross_vu,
    cross_vv_uu,
    kappa,
    mode_sum_l,
    prob_u2,
    prob_v2,
    two_photon,
)
from .params import DEFAULT_CUTOFF_RATIO, DEFAULT_DTILDE, FINE_STRUCTURE, PhysParams
from .quantum import (
    EntanglementReport,
    concurrence,
    entanglement_entropy,
    mutual_information,
    partial_trace,
    report,
    rho_mixed,
    rho_n0,
    rho_n1,
    rho_n2,
    von_neumann_entropy,
)
from .specfun import ci, delta_t_kernel, ei_imag, si

__all__ = [
    "AmplitudeSet",
    "DEFAULT_CUTOFF_RATIO",
    "DEFAULT_DTILDE",
    "EntanglementReport",
    "FINE_STRUCTURE",
    "PhysParams",
    "amp_a",
    "amp_b",
    "amplitude_set",
    "ci",
    "concurrence",
    "cross_vu",
    "cross_vv_uu",
    "delta_t_kernel",
    "ei_imag",
    "entanglement_entropy",
    "kappa",
    "mode_sum_l",
    "mutual_information",
    "partial_trace",
    "prob_u2",
    "prob_v2",
    "report",
    "rho_mixed",
    "rho_n0",
    "rho_n1",
    "rho_n2",
    "si",
    "two_photon",
    "von_neumann_entropy",
]

__version__ = "0.1.0"
