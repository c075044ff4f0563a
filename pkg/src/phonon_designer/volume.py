"""Achievable circuit depth and the quantum volume ``max_N min(N, d(N))^2``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .error_model import optimal_error
from .exceptions import DomainError, NoBalancePointError
from .params import SystemParams

DEFAULT_N_RANGE = (2, 500)
REGIMES = ("mechanical", "microwave")


@dataclass(frozen=True)
class VolumeResult:
    n_star: float
    n_best_integer: int
    volume_continuous: float
    volume_integer: float
    depth_at_n_star: float

    def to_dict(self) -> dict:
        return {
            "n_star": self.n_star,
            "n_best_integer": self.n_best_integer,
            "volume_continuous": self.volume_continuous,
            "volume_integer": self.volume_integer,
            "depth_at_n_star": self.depth_at_n_star,
        }


def circuit_depth(p: SystemParams, n: float | None = None) -> float:
    """Number of layers before the accumulated error reaches order one.

    Uses the error at the coupling re-optimized for this ``N``.
    """
    nn = p.n_resonators if n is None else n
    return 1.0 / (nn * optimal_error(p, nn))


def integer_profile(p: SystemParams, n_range: tuple[int, int] = DEFAULT_N_RANGE) -> np.ndarray:
    """``min(N, d(N))`` for every integer ``N`` in the closed range."""
    lo, hi = n_range
    return np.array([min(n, circuit_depth(p, n)) for n in range(lo, hi + 1)])


def solve_balance(
    p_template: SystemParams,
    n_range: tuple[float, float] = DEFAULT_N_RANGE,
    rtol: float = 1e-12,
) -> VolumeResult:
    """Find the balance point ``N = d(N)`` and the best integer volume."""
    n_min, n_max = n_range
    if not 0 < n_min < n_max:
        raise DomainError(f"invalid resonator range {n_range!r}")

    def excess(n: float) -> float:
        return n - circuit_depth(p_template, n)

    lo_val, hi_val = excess(n_min), excess(n_max)
    if not (lo_val < 0 < hi_val):
        raise NoBalancePointError(
            f"no balance point in range [{n_min}, {n_max}]: "
            f"N - d(N) = {lo_val:.4g} at the lower end, {hi_val:.4g} at the upper end"
        )
    n_star = brentq(excess, n_min, n_max, xtol=1e-14, rtol=rtol)
    depth = circuit_depth(p_template, n_star)

    i_lo, i_hi = math.ceil(n_min), math.floor(n_max)
    profile = integer_profile(p_template, (i_lo, i_hi))
    best = int(np.argmax(profile))
    return VolumeResult(
        n_star=n_star,
        n_best_integer=i_lo + best,
        volume_continuous=n_star**2,
        volume_integer=float(profile[best] ** 2),
        depth_at_n_star=depth,
    )


def closed_form_volume(p: SystemParams, regime: str) -> float:
    """Asymptotic volume from the qubit quality factor alone.

    ``mechanical`` assumes ``Gamma_q >> N Gamma_r``; ``microwave`` assumes
    ``Gamma_r = Gamma_q`` with ``N >> 1``.
    """
    q = p.q_qubit
    if not math.isfinite(q):
        raise DomainError("closed-form volume needs a finite qubit quality factor")
    root = math.sqrt(3 * p.crosstalk_prefactor)
    if regime == "mechanical":
        return (2 * q / (9 * math.pi * root)) ** 0.5
    if regime == "microwave":
        return (q / (6 * math.pi * root)) ** 0.4
    raise DomainError(f"unknown regime {regime!r}; expected one of {REGIMES}")
