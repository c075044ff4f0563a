"""Design analysis of a transmon processor with phononic-crystal resonator memory."""

from .error_model import (
    ErrorBreakdown,
    crosstalk_error,
    decoherence_error,
    optimal_coupling,
    optimal_error,
    purcell_corrections,
    total_error,
)
from .params import (
    SystemParams,
    effective_min_detuning,
    mechanical_baseline,
    microwave_baseline,
    nearest_neighbor_detuning,
    step_duration,
    swap_time,
)
from .volume import VolumeResult, circuit_depth, closed_form_volume, solve_balance

__all__ = [
    "ErrorBreakdown",
    "SystemParams",
    "VolumeResult",
    "circuit_depth",
    "closed_form_volume",
    "crosstalk_error",
    "decoherence_error",
    "effective_min_detuning",
    "mechanical_baseline",
    "microwave_baseline",
    "nearest_neighbor_detuning",
    "optimal_coupling",
    "optimal_error",
    "purcell_corrections",
    "solve_balance",
    "step_duration",
    "swap_time",
    "total_error",
]
