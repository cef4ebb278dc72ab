"""Dimensionless configuration point for a two-atom vacuum evolution."""

from dataclasses import dataclass, replace

from .errors import GuardWindowError

FINE_STRUCTURE = 7.2973525693e-3

#: omega_max / Omega for the dipole-representation frequency cutoff,
#: 1/(Omega t_min) with t_min = a0/c = 1.76e-19 s and Omega the hydrogen
#: 1s->2p transition frequency (10.2 eV / hbar = 1.55e16 rad/s).
DEFAULT_CUTOFF_RATIO = 366.0

#: Omega |d| / (e c) of the hydrogen 1s->2p scale used throughout.
DEFAULT_DTILDE = 5e-3


@dataclass(frozen=True)
class PhysParams:
    """Dimensionless controls: z = Omega L / c and x = L / (c t).

    tau = z / x = Omega t is the dimensionless interaction time.  dtilde is
    the dipole strength Omega|d|/(e c), alpha the fine-structure constant and
    cutoff_ratio the frequency cutoff in units of Omega.
    """

    z: float
    x: float
    dtilde: float = DEFAULT_DTILDE
    alpha: float = FINE_STRUCTURE
    cutoff_ratio: float = DEFAULT_CUTOFF_RATIO

    def __post_init__(self):
        if not self.z > 0:
            raise ValueError(f"z must be > 0, got {self.z}")
        if not self.x > 0:
            raise ValueError(f"x must be > 0, got {self.x}")
        if not self.dtilde > 0:
            raise ValueError(f"dtilde must be > 0, got {self.dtilde}")
        if not 0 < self.alpha < 0.01:
            raise ValueError(f"alpha must lie in (0, 0.01), got {self.alpha}")
        if not self.cutoff_ratio > 1:
            raise ValueError(
                f"cutoff_ratio must be > 1, got {self.cutoff_ratio}"
            )

    @property
    def tau(self):
        """Omega t = z / x."""
        return self.z / self.x

    def with_x(self, x):
        return replace(self, x=x)

    def singular_quantity(self, guard_half_width=1e-3, arg_floor=1e-9):
        """Name of the quantity that makes this point singular, or None.

        The closed forms have a genuine pole at x = 1 (Ei(0) in the exchange
        amplitude) and logarithmic singularities whenever the argument
        z - tau of a ci/si/Ei factor collapses to zero.
        """
        if abs(self.x - 1.0) < guard_half_width:
            return "x-1"
        if abs(self.z - self.tau) < arg_floor:
            return "z-tau"
        return None

    def require_regular(self, guard_half_width=1e-3, arg_floor=1e-9):
        bad = self.singular_quantity(guard_half_width, arg_floor)
        if bad is not None:
            raise GuardWindowError(
                f"point (z={self.z}, x={self.x}) inside guard window: "
                f"{bad} too close to a singularity",
                quantity=bad,
            )
