"""Hardware limits on the qubit capacitance.

The piezoelectric coupling of a circuit with total capacitance ``C`` is
capped by a sum rule, ``g <= q_eff sqrt(omega0 / 2 hbar C)``. Reaching the
optimal coupling therefore puts a ceiling on ``C``; the transmon condition
and the coupler capacitances put floors under it; the required
anharmonicity adds two more ceilings. The feasible designs lie between the
highest floor and the lowest ceiling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .error_model import loss_rate_sum, optimal_coupling
from .exceptions import DomainError
from .params import E_CHARGE, HBAR, SystemParams, hz_to_angular

LOWER_BOUNDS = ("lower_transmon", "lower_couplers")
UPPER_BOUNDS = ("upper_coupling", "upper_anharmonicity_fixed", "upper_anharmonicity_detuning")


@dataclass(frozen=True)
class HardwareProfile:
    """Electrical parameters of the coupler and qubit.

    Attributes:
        q_eff: Effective piezoelectric coupling charge, C.
        coupler_capacitance: Capacitance added by each coupler, F.
        omega0: Qubit frequency, rad/s.
        min_anharmonicity: Smallest acceptable anharmonicity, rad/s.
    """

    q_eff: float
    coupler_capacitance: float
    omega0: float
    min_anharmonicity: float = field(default_factory=lambda: hz_to_angular(50e6))

    def __post_init__(self) -> None:
        for name in ("coupler_capacitance", "omega0", "min_anharmonicity"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        # q_eff = 0 is allowed: it is the degenerate "no coupling" hardware.
        if not self.q_eff >= 0:
            raise DomainError("q_eff must be non-negative")


def default_profile(omega0: float = hz_to_angular(4e9)) -> HardwareProfile:
    return HardwareProfile(q_eff=4e-21, coupler_capacitance=1e-15, omega0=omega0)


@dataclass(frozen=True)
class CapacitanceBounds:
    lower_transmon: float
    lower_couplers: float
    upper_coupling: float
    upper_anharmonicity_fixed: float
    upper_anharmonicity_detuning: float

    @property
    def floor(self) -> float:
        return max(self.lower_transmon, self.lower_couplers)

    @property
    def ceiling(self) -> float:
        return min(
            self.upper_coupling, self.upper_anharmonicity_fixed, self.upper_anharmonicity_detuning
        )

    @property
    def feasible_interval(self) -> tuple[float, float] | None:
        lo, hi = self.floor, self.ceiling
        return (lo, hi) if lo <= hi else None

    @property
    def binding_floor(self) -> str:
        return max(LOWER_BOUNDS, key=lambda name: getattr(self, name))

    @property
    def binding_ceiling(self) -> str:
        return min(UPPER_BOUNDS, key=lambda name: getattr(self, name))


def trk_coupling_bound(profile: HardwareProfile, c_sigma: float) -> float:
    """Largest coupling (rad/s) a circuit of total capacitance ``c_sigma`` can reach."""
    if not c_sigma > 0:
        raise DomainError(f"capacitance must be positive, got {c_sigma!r}")
    return profile.q_eff * math.sqrt(profile.omega0 / (2 * HBAR * c_sigma))


def calibrate_qeff(g_ref: float, c_sigma_ref: float, omega0_ref: float) -> float:
    """Coupling charge of a reference design assumed to saturate the sum rule."""
    if not (g_ref > 0 and c_sigma_ref > 0 and omega0_ref > 0):
        raise DomainError("calibration inputs must all be positive")
    return math.sqrt(2 * HBAR * c_sigma_ref * g_ref**2 / omega0_ref)


def max_capacitance_for_coupling(profile: HardwareProfile, p: SystemParams) -> float:
    """Largest ``C_Sigma`` at which the optimal coupling is still reachable."""
    g_opt = optimal_coupling(p)
    return profile.q_eff**2 * profile.omega0 / (2 * HBAR * g_opt**2)


def max_capacitance_closed_form(profile: HardwareProfile, p: SystemParams) -> float:
    """Same ceiling as :func:`max_capacitance_for_coupling`, written out explicitly."""
    n = p.n_resonators
    w = profile.omega0
    ratio = 4 * p.crosstalk_prefactor * n**2 * p.omega0 / (math.pi * loss_rate_sum(p))
    return 2 * profile.q_eff**2 / (HBAR * w) * ratio ** (2 / 3)


def transmon_floor(omega0: float) -> float:
    """Smallest capacitance that puts a qubit at ``omega0`` in the transmon regime."""
    return E_CHARGE**2 * 4 / (HBAR * omega0)


def capacitance_bounds(profile: HardwareProfile, p: SystemParams) -> CapacitanceBounds:
    n = p.n_resonators
    return CapacitanceBounds(
        lower_transmon=transmon_floor(profile.omega0),
        lower_couplers=n * profile.coupler_capacitance,
        upper_coupling=max_capacitance_for_coupling(profile, p),
        # charging energy e^2/2C must exceed hbar * anharmonicity
        upper_anharmonicity_fixed=E_CHARGE**2 / (2 * HBAR * profile.min_anharmonicity),
        # ... and hbar * omega0/4N, half the nearest-neighbour spacing
        upper_anharmonicity_detuning=E_CHARGE**2 * (2 * n) / (HBAR * profile.omega0),
    )


@dataclass(frozen=True)
class FeasibilityScan:
    n_values: tuple[int, ...]
    bounds: tuple[CapacitanceBounds, ...]

    @property
    def feasible(self) -> tuple[bool, ...]:
        return tuple(b.feasible_interval is not None for b in self.bounds)

    @property
    def closure_n(self) -> int | None:
        """Largest ``N`` before the region first closes.

        ``None`` when the region is empty already at the first ``N`` scanned.
        When it never closes inside the scan, the last scanned ``N``.
        """
        last = None
        for n, ok in zip(self.n_values, self.feasible):
            if not ok:
                return last
            last = n
        return last

    @property
    def closes_in_range(self) -> bool:
        return not all(self.feasible)

    def binding_pair(self) -> tuple[str, str] | None:
        """Floor and ceiling that cross where the region first closes."""
        for b, ok in zip(self.bounds, self.feasible):
            if not ok:
                return b.binding_floor, b.binding_ceiling
        return None


def feasibility_scan(
    profile: HardwareProfile, p_template: SystemParams, n_range: Iterable[int]
) -> FeasibilityScan:
    ns = tuple(int(n) for n in n_range)
    if any(n < 2 for n in ns):
        raise DomainError("resonator counts must be >= 2")
    return FeasibilityScan(ns, tuple(capacitance_bounds(profile, p_template.with_n(n)) for n in ns))
