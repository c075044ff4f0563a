"""Physical parameters, constants and elementary timing relations.

All frequencies are stored as angular frequencies (rad/s) and all rates in
1/s. Ordinary frequencies (Hz) appear only at the I/O boundary, see
:func:`hz_to_angular` and :func:`angular_to_hz`.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass
from typing import Any, Mapping

from .exceptions import ConfigError, DomainError

TWO_PI = 2.0 * math.pi

# Relative size of a rate compared to omega0 above which the
# weak-damping picture is questionable.
WEAK_DAMPING_LIMIT = 1e-3


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values (exact in the 2019 SI)."""

    planck_h: float = 6.62607015e-34
    electron_charge_e: float = 1.602176634e-19

    @property
    def hbar(self) -> float:
        return self.planck_h / TWO_PI


CONSTANTS = PhysicalConstants()
HBAR = CONSTANTS.hbar
E_CHARGE = CONSTANTS.electron_charge_e


def hz_to_angular(f_hz: float) -> float:
    return TWO_PI * f_hz


def angular_to_hz(omega: float) -> float:
    return omega / TWO_PI


@dataclass(frozen=True)
class SystemParams:
    """A single design point of the qubit + N resonator processor.

    Attributes:
        omega0: Band-gap centre / qubit operating frequency, rad/s.
        gamma_q: Qubit decoherence rate, 1/s.
        gamma_r: Resonator decoherence rate, 1/s.
        crosstalk_prefactor: Dimensionless cross-talk constant ``A``.
        n_resonators: Number of storage resonators, ``N >= 2``.
    """

    omega0: float
    gamma_q: float
    gamma_r: float
    crosstalk_prefactor: float = 1.0
    n_resonators: int = 2

    def __post_init__(self) -> None:
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise DomainError(f"omega0 must be positive and finite, got {self.omega0!r}")
        if not (self.gamma_q >= 0 and math.isfinite(self.gamma_q)):
            raise DomainError(f"gamma_q must be >= 0, got {self.gamma_q!r}")
        if not (self.gamma_r >= 0 and math.isfinite(self.gamma_r)):
            raise DomainError(f"gamma_r must be >= 0, got {self.gamma_r!r}")
        if not (self.crosstalk_prefactor > 0 and math.isfinite(self.crosstalk_prefactor)):
            raise DomainError(
                f"crosstalk_prefactor must be positive, got {self.crosstalk_prefactor!r}"
            )
        if isinstance(self.n_resonators, bool) or int(self.n_resonators) != self.n_resonators:
            raise DomainError(f"n_resonators must be an integer, got {self.n_resonators!r}")
        if self.n_resonators < 2:
            raise DomainError("at least two resonators are needed for a two-qubit gate")
        object.__setattr__(self, "n_resonators", int(self.n_resonators))
        for name in ("gamma_q", "gamma_r"):
            rate = getattr(self, name)
            if rate / self.omega0 > WEAK_DAMPING_LIMIT:
                warnings.warn(
                    f"{name}/omega0 = {rate / self.omega0:.3g} exceeds {WEAK_DAMPING_LIMIT:g}",
                    stacklevel=3,
                )

    @classmethod
    def from_quality_factors(
        cls,
        omega0: float,
        q_qubit: float,
        q_mech: float,
        crosstalk_prefactor: float = 1.0,
        n_resonators: int = 2,
    ) -> "SystemParams":
        """Build from quality factors ``Q = omega0 / Gamma`` (``inf`` means lossless)."""
        if q_qubit <= 0 or q_mech <= 0:
            raise DomainError("quality factors must be positive")
        return cls(
            omega0=omega0,
            gamma_q=omega0 / q_qubit,
            gamma_r=omega0 / q_mech,
            crosstalk_prefactor=crosstalk_prefactor,
            n_resonators=n_resonators,
        )

    @property
    def q_qubit(self) -> float:
        return self.omega0 / self.gamma_q if self.gamma_q > 0 else math.inf

    @property
    def q_mech(self) -> float:
        return self.omega0 / self.gamma_r if self.gamma_r > 0 else math.inf

    def with_n(self, n_resonators: int) -> "SystemParams":
        return dataclasses.replace(self, n_resonators=n_resonators)

    def with_microwave_storage(self) -> "SystemParams":
        """Same design point with resonators as lossy as the qubit."""
        return dataclasses.replace(self, gamma_r=self.gamma_q)


def nearest_neighbor_detuning(p: SystemParams) -> float:
    """Spacing of N resonators spread uniformly over a gap of width omega0/2."""
    return p.omega0 / (2 * p.n_resonators)


def effective_min_detuning(p: SystemParams) -> float:
    """Smallest detuning in the system.

    The spurious transmon e-f transition sits half-way between two
    resonators, so it is off-resonant by half the nearest-neighbour spacing.
    """
    return p.omega0 / (4 * p.n_resonators)


def swap_time(g: float) -> float:
    """Duration of a full qubit-resonator swap at coupling ``g`` (rad/s)."""
    if not g > 0:
        raise DomainError(f"coupling must be positive, got {g!r}")
    return math.pi / (2 * g)


def step_duration(p: SystemParams, g: float) -> float:
    """Duration of one circuit layer, ``N (T_s + T_g/2)`` with ``T_g = 2 T_s``."""
    return 2 * p.n_resonators * swap_time(g)


# --- JSON parameter files -------------------------------------------------

SYSTEM_FIELDS = frozenset(
    {
        "omega0_hz",
        "gamma_q_per_s",
        "qubit_t_s",
        "gamma_r_per_s",
        "q_mech",
        "crosstalk_prefactor_a",
        "n_resonators",
    }
)


def _number(data: Mapping[str, Any], key: str) -> float:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field {key!r} must be a number, got {value!r}")
    return float(value)


def _one_of(data: Mapping[str, Any], a: str, b: str) -> str:
    present = [k for k in (a, b) if k in data]
    if len(present) != 1:
        raise ConfigError(f"exactly one of {a!r} or {b!r} is required")
    return present[0]


def params_from_mapping(data: Mapping[str, Any]) -> SystemParams:
    """Parse the system part of a parameter file.

    Accepted fields are ``omega0_hz``, one of ``gamma_q_per_s`` /
    ``qubit_t_s``, one of ``gamma_r_per_s`` / ``q_mech``,
    ``crosstalk_prefactor_a`` and ``n_resonators``. Anything else is
    rejected.
    """
    unknown = set(data) - SYSTEM_FIELDS
    if unknown:
        raise ConfigError(f"unknown parameter fields: {sorted(unknown)}")
    if "omega0_hz" not in data:
        raise ConfigError("missing required field 'omega0_hz'")
    omega0 = hz_to_angular(_number(data, "omega0_hz"))

    key = _one_of(data, "gamma_q_per_s", "qubit_t_s")
    if key == "gamma_q_per_s":
        gamma_q = _number(data, key)
    else:
        t_q = _number(data, key)
        if t_q <= 0:
            raise ConfigError("qubit_t_s must be positive")
        gamma_q = 1.0 / t_q

    key = _one_of(data, "gamma_r_per_s", "q_mech")
    if key == "gamma_r_per_s":
        gamma_r = _number(data, key)
    else:
        q_mech = _number(data, key)
        if q_mech <= 0:
            raise ConfigError("q_mech must be positive")
        gamma_r = omega0 / q_mech

    n = data.get("n_resonators", 2)
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigError(f"n_resonators must be an integer, got {n!r}")
    try:
        return SystemParams(
            omega0=omega0,
            gamma_q=gamma_q,
            gamma_r=gamma_r,
            crosstalk_prefactor=_number(data, "crosstalk_prefactor_a")
            if "crosstalk_prefactor_a" in data
            else 1.0,
            n_resonators=n,
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def params_to_mapping(p: SystemParams) -> dict[str, float | int]:
    return {
        "omega0_hz": angular_to_hz(p.omega0),
        "gamma_q_per_s": p.gamma_q,
        "gamma_r_per_s": p.gamma_r,
        "crosstalk_prefactor_a": p.crosstalk_prefactor,
        "n_resonators": p.n_resonators,
    }


def mechanical_baseline(n_resonators: int = 15) -> SystemParams:
    """4 GHz transmon with a 50 us lifetime, resonators with Q = 1e9, A = 1."""
    omega0 = hz_to_angular(4e9)
    return SystemParams(
        omega0=omega0,
        gamma_q=1.0 / 50e-6,
        gamma_r=omega0 / 1e9,
        crosstalk_prefactor=1.0,
        n_resonators=n_resonators,
    )


def microwave_baseline(n_resonators: int = 8) -> SystemParams:
    """Same qubit with on-chip microwave storage, ``gamma_r = gamma_q``."""
    return mechanical_baseline(n_resonators).with_microwave_storage()
