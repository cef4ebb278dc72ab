"""Sine/cosine integrals, the imaginary-argument exponential integral, and the
finite-time energy kernel that the closed-form amplitudes are built on.

Conventions (Bateman):
    si(y) = Si(y) - pi/2                    so si(y) -> 0 as y -> inf
    ci(y) = gamma + ln y + int_0^y (cos u - 1)/u du
    ei_imag(y) = Ei(iy) = ci(|y|) + i sign(y) si(|y|)

The ei_imag branch is the one under which both semi-infinite Fourier
identities

    int_0^inf e^{i w g}/(w + b) dw = -e^{-i g b} Ei(+i g b)
    int_0^inf e^{i w g}/(w - b) dw = -e^{+i g b} (Ei(-i g b) - i pi)   (PV)

hold for g, b > 0; the oracle module tests this operationally rather than
trusting a formula choice.

Evaluation branches for Si/Ci (thresholds tuned so every branch stays within
~1e-13 absolute of the extended-precision oracle):

    y < 6         float64 Maclaurin series; alternating-sum cancellation is
                  bounded by e^y * eps < 5e-14
    6 <= y <= 30  the same series summed in exact rational arithmetic
                  (fractions.Fraction), immune to cancellation, correctly
                  rounded on the final conversion to float
    y > 30        optimally truncated asymptotic series for the auxiliary
                  functions f, g; first omitted term < 5e-14
"""

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

EULER_GAMMA = 0.5772156649015328606

_SERIES_FLOAT_MAX = 6.0
_SERIES_EXACT_MAX = 30.0


def _sici_series_float(y):
    # Maclaurin sums for Si and Cin, plain float64; valid for small y only.
    y2 = y * y
    term = y
    si_sum = y
    k = 1
    while True:
        term *= -y2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        si_sum += contrib
        if abs(contrib) < 1e-18 * abs(si_sum) + 1e-300:
            break
        k += 1
    term = y2 / 2.0
    cin_sum = term / 2.0
    k = 2
    while True:
        term *= -y2 / ((2 * k - 1) * (2 * k))
        contrib = term / (2 * k)
        cin_sum += contrib
        if abs(contrib) < 1e-18 * (abs(cin_sum) + 1.0):
            break
        k += 1
    return si_sum, EULER_GAMMA + math.log(y) - cin_sum


def _sici_series_exact(y):
    # Same series in exact rational arithmetic: the alternating terms grow to
    # ~e^y before cancelling, which float64 cannot survive for y in [6, 30].
    yf = Fraction(y)
    y2 = yf * yf
    term = yf
    si_sum = yf
    k = 1
    while True:
        term *= -y2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        si_sum += contrib
        if abs(float(contrib)) < 1e-22:
            break
        k += 1
    term = y2 / 2
    cin_sum = term / 2
    k = 2
    while True:
        term *= -y2 / ((2 * k - 1) * (2 * k))
        contrib = term / (2 * k)
        cin_sum += contrib
        if abs(float(contrib)) < 1e-22:
            break
        k += 1
    return float(si_sum), EULER_GAMMA + math.log(y) - float(cin_sum)


def _aux_fg_asymptotic(y):
    # Auxiliary functions: Si = pi/2 - f cos - g sin, Ci = f sin - g cos.
    # Optimal truncation: stop just before the terms start growing.
    f = 0.0
    term = 1.0 / y
    k = 0
    while True:
        f += term
        nxt = -term * (2 * k + 1) * (2 * k + 2) / (y * y)
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-20:
            break
        term = nxt
        k += 1
    g = 0.0
    term = 1.0 / (y * y)
    k = 0
    while True:
        g += term
        nxt = -term * (2 * k + 2) * (2 * k + 3) / (y * y)
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-20:
            break
        term = nxt
        k += 1
    return f, g


@lru_cache(maxsize=100_000)
def _sici(y):
    """(Si(y), Ci(y)) for y > 0."""
    if y < _SERIES_FLOAT_MAX:
        return _sici_series_float(y)
    if y <= _SERIES_EXACT_MAX:
        return _sici_series_exact(y)
    f, g = _aux_fg_asymptotic(y)
    cy, sy = math.cos(y), math.sin(y)
    return math.pi / 2 - f * cy - g * sy, f * sy - g * cy


def si(y):
    """si(y) = integral_0^y sin(u)/u du - pi/2, for y >= 0."""
    if y < 0:
        raise DomainError(f"si requires y >= 0, got {y}")
    if y == 0.0:
        return -math.pi / 2
    return _sici(float(y))[0] - math.pi / 2


def ci(y):
    """ci(y) = gamma + ln y + integral_0^y (cos u - 1)/u du, for y > 0."""
    if y <= 0:
        raise DomainError(f"ci requires y > 0, got {y}")
    return _sici(float(y))[1]


def ei_imag(y):
    """Ei(iy) for real y != 0, in the branch ci(|y|) + i sign(y) si(|y|)."""
    if y == 0:
        raise DomainError("ei_imag diverges at y = 0 (Ei(0) = -inf)")
    ay = abs(float(y))
    s, c = _sici(ay)
    return complex(c, math.copysign(1.0, y) * (s - math.pi / 2))


def delta_t_kernel(u):
    """dt(u) = sin(u/2)/(pi u), the finite-time energy-conservation kernel.

    Even in u, with dt(0) = 1/(2 pi) by continuity; delta^t(omega) of the
    physics is recovered as t * dt(omega t).
    """
    u = float(u)
    if abs(u) < 1e-6:
        # sin(u/2)/(pi u) = (1 - (u/2)^2/6 + ...) / (2 pi)
        return (1.0 - u * u / 24.0) / (2.0 * math.pi)
    return math.sin(0.5 * u) / (math.pi * u)
