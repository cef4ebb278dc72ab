"""Closed-form second-order amplitudes and photon-mode sums.

Every quantity is dimensionless; the master scale is
kappa = (2 alpha / 3 pi) dtilde^2, with dtilde = Omega|d|/(e c).  The
dimensionless controls are z = Omega L/c, x = L/(c t) and tau = z/x.

Derivative bookkeeping: the transverse dipole operator
(-lap delta_ij + d_i d_j) acting on a radial function F(L), contracted with
parallel dipoles orthogonal to the separation axis, reduces to
-d^2 (F'' + F'/L).  At fixed interaction time, d/dL = (Omega/c) d/dz with
tau held constant, so each mode sum is assembled from
O[g] := g'' + g'/z applied to a scalar generator g(z; tau).
"""

import cmath
import math

from dataclasses import dataclass

from .errors import GuardWindowError, InconsistentAmplitudesError, PoleError
from .params import PhysParams
from .specfun import ci, ei_imag, si

#: guard floor for |z - tau|; below this the ci/Ei arguments are singular
ARG_FLOOR = 1e-9


def kappa(p: PhysParams) -> float:
    """Master amplitude scale (2 alpha / 3 pi) dtilde^2."""
    return (2.0 * p.alpha / (3.0 * math.pi)) * p.dtilde * p.dtilde


# ---------------------------------------------------------------------------
# single-atom emission probabilities and their coherence
# ---------------------------------------------------------------------------

def _Si(y):
    return si(y) + math.pi / 2


def _emission_factors(tau):
    """(F_u, F_v): renormalized single-emission mode integrals over kappa.

    The "si" of the printed closed form is read as Si = int_0^y sin u/u du;
    that is the unique reading for which F_v stays bounded (the excited
    admixture dies out) while F_u grows like the golden-rule 2 pi tau.  The
    direct mode-integral oracle (quad_uv2) pins this choice.
    """
    s = _Si(tau)
    c = math.cos(tau)
    fu = math.pi * tau - 2.0 + 2.0 * c + 2.0 * tau * s
    fv = math.pi * tau + 2.0 - 2.0 * c - 2.0 * tau * s
    return fu, fv


def prob_u2(p: PhysParams) -> float:
    """|u|^2: probability of single-photon emission with both atoms ground."""
    return kappa(p) * _emission_factors(p.tau)[0]


def prob_v2(p: PhysParams) -> float:
    """|v|^2: probability of the counter-rotating emission (both excited)."""
    return kappa(p) * _emission_factors(p.tau)[1]


def cross_vu(p: PhysParams) -> complex:
    """Same-atom coherence sum v u* = pi kappa e^{i tau} sin(tau).

    The pi is required by Cauchy-Schwarz saturation at tau -> 0 (all mode
    functions become proportional to t) and is confirmed by the discretized
    mode-sum oracle; see the decisions ledger.
    """
    tau = p.tau
    return math.pi * kappa(p) * cmath.exp(1j * tau) * math.sin(tau)


# ---------------------------------------------------------------------------
# radiative correction a
# ---------------------------------------------------------------------------

def amp_a(p: PhysParams) -> complex:
    """Intra-atomic radiative correction; purely imaginary after the
    cutoff-regularized frequency integral."""
    r = p.cutoff_ratio
    if r == 1.0:
        raise PoleError("cutoff_ratio = 1 puts the log cutoff on its pole")
    return 1j * kappa(p) * p.tau * math.log(abs((1.0 - r) / (1.0 + r)))


# ---------------------------------------------------------------------------
# the correlated-emission kernel M and the coherence l
# ---------------------------------------------------------------------------

def _W(a):
    """Odd combination 2[sin(a) Ci(|a|) - cos(a) Si(a)]; W(0) = 0."""
    if a == 0.0:
        return 0.0
    aa = abs(a)
    return 2.0 * (math.sin(a) * ci(aa) - math.cos(a) * math.copysign(_Si(aa), a))


def _Wp(a):
    """d/da of _W: 2[cos(a) Ci(|a|) + sin(a) Si(a)] (even in a)."""
    aa = abs(a)
    return 2.0 * (math.cos(a) * ci(aa) + math.sin(a) * math.copysign(_Si(aa), a))


def _m_pieces(z, tau):
    """m, m', m'' where m(z) generates M; m'' uses W'' = -W + 2/a."""
    wp = z + tau
    wm = z - tau
    c = math.cos(tau)
    m = (_W(wp) + _W(wm) - 2.0 * c * _W(z)) / 8.0
    m1 = (_Wp(wp) + _Wp(wm) - 2.0 * c * _Wp(z)) / 8.0
    m2 = -m + (1.0 / wp + 1.0 / wm - 2.0 * c / z) / 4.0
    return m, m1, m2


def closed_M(p: PhysParams) -> complex:
    """Closed form of the two-frequency emission kernel, in the convention
    that carries the exact time-integral phase: -e^{i tau} m(z, tau)/(pi^2 z).

    The k-space integral itself is real; the phase e^{i tau} and overall sign
    come from the exactly-done pair of time integrals, so this value is what
    the coherence sums differentiate.
    """
    z, tau = p.z, p.tau
    m, _, _ = _m_pieces(z, tau)
    return -cmath.exp(1j * tau) * m / (math.pi**2 * z)


def mode_sum_l(p: PhysParams) -> complex:
    """Coherence l = sum_k v_B(k) u_A(k)*: one photon, two possible sources.

    l = -6 kappa e^{i tau} O[m/z]; sign fixed by the direct mode-trace (the
    discretized-grid oracle reproduces it), which differs by a global sign
    from composing the printed kernel pair; see the decisions ledger.
    """
    z, tau = p.z, p.tau
    if abs(z - tau) < ARG_FLOOR:
        raise GuardWindowError(
            f"l is logarithmically singular on the light cone; |z - tau| = "
            f"{abs(z - tau):.3e} below floor", quantity="z-tau",
        )
    m, m1, m2 = _m_pieces(z, tau)
    radial = (m2 - m1 / z + m / (z * z)) / z
    return -6.0 * kappa(p) * cmath.exp(1j * tau) * radial


# ---------------------------------------------------------------------------
# exchange amplitude b and the two-atom emission cross sums
# ---------------------------------------------------------------------------

def _I_pieces(z, tau, extra):
    """(I, I', I'') of the exchange generator at fixed tau.

    I = R(z) - sum_s c_s R(w_s) with w_s = z + s tau, c_s = w_s/(2z),
    R(w) = e^{iz} Ei(-iw) + e^{-iz} Ei(iw); inside the light cone (tau > z)
    the generator acquires i pi (1 - tau/z) e^{-iz} when ``extra`` is set.
    """
    ez = cmath.exp(1j * z)
    ezc = ez.conjugate()

    def RQ(w):
        pw = ei_imag(w)
        mw = pw.conjugate()
        return ez * mw + ezc * pw, ez * mw - ezc * pw

    Rz, Qz = RQ(z)
    ct, st = math.cos(tau), math.sin(tau)
    I = Rz
    I1 = 1j * Qz + 2.0 / z
    I2 = -Rz - 2.0 / (z * z)
    for s in (1.0, -1.0):
        w = z + s * tau
        Rw, Qw = RQ(w)
        cs = w / (2.0 * z)
        cs1 = -s * tau / (2.0 * z * z)
        cs2 = s * tau / (z * z * z)
        I -= cs * Rw
        I1 -= cs1 * Rw + cs * (1j * Qw + 2.0 * ct / w)
        I2 -= (
            cs2 * Rw
            + 2j * cs1 * Qw
            + 4.0 * cs1 * ct / w
            - cs * Rw
            + 2.0 * s * cs * st / w
            - 2.0 * cs * ct / (w * w)
        )
    if extra and tau > z:
        emz = ezc
        f = 1.0 - tau / z
        I += 1j * math.pi * f * emz
        I1 += 1j * math.pi * emz * (tau / (z * z) - 1j * f)
        I2 += 1j * math.pi * emz * (
            -2.0 * tau / (z * z * z) - 2j * tau / (z * z) - f
        )
    return I, I1, I2


def _require_off_cone(p):
    if p.x == 1.0:
        raise PoleError("exchange amplitude diverges at x = 1 (Ei(0))")
    if abs(p.z - p.tau) < ARG_FLOOR:
        raise GuardWindowError(
            f"|z - tau| = {abs(p.z - p.tau):.3e} below floor at "
            f"(z={p.z}, x={p.x})", quantity="z-tau",
        )


def amp_b(p: PhysParams) -> complex:
    """Photon-exchange amplitude (emission at one atom, absorption at the
    other); the only term connecting the atoms at this order."""
    _require_off_cone(p)
    z, tau = p.z, p.tau
    I, I1, I2 = _I_pieces(z, tau, extra=True)
    return -1.5 * kappa(p) * (I2 + I1 / z)


def cross_vv_uu(p: PhysParams):
    """(v_A v_B*, u_A u_B*): two-atom emission cross sums.

    Generated by I' = -I_core; the two coincide outside the light cone and
    u_A u_B* picks up the image of -2 pi sin(z) (1 - tau/z) inside.
    """
    _require_off_cone(p)
    z, tau = p.z, p.tau
    _, I1, I2 = _I_pieces(z, tau, extra=False)
    k = kappa(p)
    vv = 1.5 * k * (I2 + I1 / z)
    uu = vv
    if tau > z:
        f = 1.0 - tau / z
        sz, cz = math.sin(z), math.cos(z)
        y1 = -2.0 * math.pi * (cz * f + sz * tau / (z * z))
        y2 = -2.0 * math.pi * (
            -sz * f + 2.0 * cz * tau / (z * z) - 2.0 * sz * tau / (z * z * z)
        )
        uu = vv - 1.5 * k * (y2 + y1 / z)
    return complex(vv), complex(uu)


# ---------------------------------------------------------------------------
# two-photon sector
# ---------------------------------------------------------------------------

def two_photon(p: PhysParams):
    """(f2, g2, fg): same-source and distinct-source two-photon quantities.

    g2 = u2 v2 + |l|^2 holds exactly.  f2 and fg come from expanding the
    double mode sums over unordered photon pairs with the time ordering
    symmetrized (theta + theta-reversed = 1); the expansion is locked against
    the exact-ordering discretized-grid oracle, which also reports the
    residual of the symmetrization.
    """
    u2, v2 = prob_u2(p), prob_v2(p)
    vu = cross_vu(p)
    l = mode_sum_l(p)
    vv, uu = cross_vv_uu(p)
    al2 = abs(l) ** 2
    g2 = u2 * v2 + al2
    f2 = 0.5 * (u2 * v2 + abs(vu) ** 2) + 0.5 * ((uu * vv).real + al2)
    fg = 0.5 * (u2 * vv + v2 * uu.conjugate()) + (vu.conjugate() * l).real
    return f2, g2, fg


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AmplitudeSet:
    """All second-order amplitudes and mode sums at one parameter point."""

    a: complex
    b: complex
    u2: float
    v2: float
    l: complex
    vu: complex
    vv: complex
    uu: complex
    f2: float
    g2: float
    fg: complex

    def validate(self):
        for name in ("u2", "v2", "f2", "g2"):
            val = getattr(self, name)
            if not val >= 0.0:
                raise InconsistentAmplitudesError(f"{name} = {val} < 0")
        ident = self.u2 * self.v2 + abs(self.l) ** 2
        if abs(self.g2 - ident) > 1e-12 * max(abs(self.g2), abs(ident)):
            raise InconsistentAmplitudesError(
                f"|g|^2 identity broken: g2={self.g2!r} vs u2 v2 + |l|^2={ident!r}"
            )
        if abs(self.vu) > math.sqrt(self.u2 * self.v2) + 1e-12:
            raise InconsistentAmplitudesError(
                "Cauchy-Schwarz violated: |vu| > sqrt(u2 v2)"
            )
        return self


def amplitude_set(p: PhysParams, guard_half_width=1e-3) -> AmplitudeSet:
    """Evaluate every amplitude at one point, naming the failing quantity."""
    p.require_regular(guard_half_width, ARG_FLOOR)
    f2, g2, fg = two_photon(p)
    out = AmplitudeSet(
        a=amp_a(p),
        b=amp_b(p),
        u2=prob_u2(p),
        v2=prob_v2(p),
        l=mode_sum_l(p),
        vu=cross_vu(p),
        vv=cross_vv_uu(p)[0],
        uu=cross_vv_uu(p)[1],
        f2=f2,
        g2=g2,
        fg=fg,
    )
    return out.validate()
