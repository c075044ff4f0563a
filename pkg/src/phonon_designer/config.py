"""Parameter files: system parameters plus the hardware profile."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .exceptions import ConfigError, DomainError
from .feasibility import HardwareProfile
from .params import SYSTEM_FIELDS, SystemParams, hz_to_angular, params_from_mapping

HARDWARE_FIELDS = frozenset({"q_eff_c", "coupler_capacitance_ff", "min_anharmonicity_hz"})
# free-form annotations, never interpreted
META_FIELDS = frozenset({"notes"})

HARDWARE_DEFAULTS = {"q_eff_c": 4e-21, "coupler_capacitance_ff": 1.0, "min_anharmonicity_hz": 50e6}


@dataclass(frozen=True)
class DesignConfig:
    params: SystemParams
    hardware: HardwareProfile


def config_from_mapping(data: Mapping[str, Any]) -> DesignConfig:
    if not isinstance(data, Mapping):
        raise ConfigError("parameter file must hold a JSON object")
    unknown = set(data) - SYSTEM_FIELDS - HARDWARE_FIELDS - META_FIELDS
    if unknown:
        raise ConfigError(f"unknown parameter fields: {sorted(unknown)}")
    params = params_from_mapping({k: v for k, v in data.items() if k in SYSTEM_FIELDS})
    hw = {**HARDWARE_DEFAULTS, **{k: v for k, v in data.items() if k in HARDWARE_FIELDS}}
    for key, value in hw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"field {key!r} must be a number, got {value!r}")
    try:
        hardware = HardwareProfile(
            q_eff=float(hw["q_eff_c"]),
            coupler_capacitance=float(hw["coupler_capacitance_ff"]) * 1e-15,
            omega0=params.omega0,
            min_anharmonicity=hz_to_angular(float(hw["min_anharmonicity_hz"])),
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    return DesignConfig(params, hardware)


def load_config(path: str | Path | None = None) -> DesignConfig:
    """Read a parameter file; ``None`` loads the bundled baseline."""
    try:
        if path is None:
            text = resources.files("phonon_designer").joinpath("data/baseline.json").read_text()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read parameter file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in parameter file: {exc}") from exc
    return config_from_mapping(data)
