"""Extended-precision Si/Ci/Ei(iy) engine backing the reference oracle.

Deliberately independent of :mod:`twoatom.specfun`: everything here runs in
mpmath arbitrary precision with its own series and asymptotic branches, plus
an overlap self-check between the two branches.  The main path never imports
this module.
"""

import mpmath as mp

DPS = 50
_CROSSOVER = 64.0


def _sici_series(y):
    # Maclaurin sums; exact to working precision for y up to ~100 at dps=50.
    with mp.workdps(DPS + 30):
        yy = mp.mpf(y)
        y2 = yy * yy
        term = yy
        si_sum = yy
        k = 1
        while True:
            term *= -y2 / ((2 * k) * (2 * k + 1))
            contrib = term / (2 * k + 1)
            si_sum += contrib
            if abs(contrib) < mp.mpf(10) ** (-(DPS + 25)):
                break
            k += 1
        term = y2 / 2
        cin = term / 2
        k = 2
        while True:
            term *= -y2 / ((2 * k - 1) * (2 * k))
            contrib = term / (2 * k)
            cin += contrib
            if abs(contrib) < mp.mpf(10) ** (-(DPS + 25)):
                break
            k += 1
        return +si_sum, mp.euler + mp.log(yy) - cin


def _sici_asymptotic(y):
    # Optimally truncated asymptotic series for the auxiliary f, g.
    with mp.workdps(DPS + 10):
        yy = mp.mpf(y)
        f = mp.mpf(0)
        term = 1 / yy
        k = 0
        while True:
            f += term
            nxt = -term * (2 * k + 1) * (2 * k + 2) / (yy * yy)
            if abs(nxt) >= abs(term):
                break
            term = nxt
            k += 1
        g = mp.mpf(0)
        term = 1 / (yy * yy)
        k = 0
        while True:
            g += term
            nxt = -term * (2 * k + 2) * (2 * k + 3) / (yy * yy)
            if abs(nxt) >= abs(term):
                break
            term = nxt
            k += 1
        cy, sy = mp.cos(yy), mp.sin(yy)
        return mp.pi / 2 - f * cy - g * sy, f * sy - g * cy


def sici(y):
    """(Si(y), Ci(y)) as mpf, for y > 0."""
    y = mp.mpf(y)
    if y <= 0:
        raise ValueError("sici requires y > 0")
    if y <= _CROSSOVER:
        return _sici_series(y)
    return _sici_asymptotic(y)


def branch_overlap_defect(y):
    """|series - asymptotic| at the crossover; self-check of the oracle."""
    s1, c1 = _sici_series(y)
    s2, c2 = _sici_asymptotic(y)
    return max(abs(s1 - s2), abs(c1 - c2))


def si(y):
    if y == 0:
        return -mp.pi / 2
    return sici(y)[0] - mp.pi / 2


def ci(y):
    return sici(y)[1]


def ei_imag(y):
    """Ei(iy) as mpc, branch ci(|y|) + i sign(y) si(|y|)."""
    y = mp.mpf(y)
    if y == 0:
        raise ValueError("ei_imag diverges at y = 0")
    s, c = sici(abs(y))
    sgn = 1 if y > 0 else -1
    return mp.mpc(c, sgn * (s - mp.pi / 2))
