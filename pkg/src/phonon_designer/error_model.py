"""Analytic per-qubit error budget of one circuit layer.

The error of a single layer is the sum of a decoherence part, which grows
with the layer duration ``2 N T_s``, and a cross-talk part ``A g^2/delta^2``
with ``delta = omega0 / 4N``. Trading the two against each other fixes an
optimal coupling for every ``N``.

Functions taking an ``n`` keyword evaluate at that (possibly non-integer)
resonator count instead of ``p.n_resonators``; the quantum-volume solver
relies on this to treat ``N`` as continuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .exceptions import DomainError
from .params import SystemParams, swap_time


@dataclass(frozen=True)
class ErrorBreakdown:
    decoherence_term: float
    crosstalk_term: float
    total: float

    @property
    def out_of_model(self) -> bool:
        """Probabilities above one mean the additive model has broken down."""
        return self.total > 1.0


class PurcellCorrection(NamedTuple):
    excess_rate: float
    error_increase: float
    ratio: float


def _n(p: SystemParams, n: float | None) -> float:
    if n is None:
        return float(p.n_resonators)
    if not n > 0:
        raise DomainError(f"resonator count must be positive, got {n!r}")
    return float(n)


def _check_g(g: float) -> None:
    if not g > 0:
        raise DomainError(f"coupling must be positive, got {g!r}")


def loss_rate_sum(p: SystemParams, n: float | None = None) -> float:
    """``N Gamma_r + 3 Gamma_q / 4``, the combination that sets the decoherence cost."""
    return _n(p, n) * p.gamma_r + 0.75 * p.gamma_q


def decoherence_error(
    p: SystemParams, g: float, exact: bool = False, n: float | None = None
) -> float:
    """Decoherence error per qubit over one layer.

    The exact residency count gives ``((2N - 3/2) Gamma_r + 3/2 Gamma_q) T_s``;
    the default large-N form drops the ``-3/2 Gamma_r`` and is the one used
    throughout the error budget.
    """
    _check_g(g)
    nn = _n(p, n)
    t_s = swap_time(g)
    if exact:
        return ((2 * nn - 1.5) * p.gamma_r + 1.5 * p.gamma_q) * t_s
    return (2 * nn * p.gamma_r + 1.5 * p.gamma_q) * t_s


def crosstalk_error(p: SystemParams, g: float, n: float | None = None) -> float:
    _check_g(g)
    nn = _n(p, n)
    return 16 * p.crosstalk_prefactor * nn**2 * g**2 / p.omega0**2


def total_error(p: SystemParams, g: float, n: float | None = None) -> ErrorBreakdown:
    _check_g(g)
    dec = math.pi * loss_rate_sum(p, n) / g
    xt = crosstalk_error(p, g, n)
    return ErrorBreakdown(decoherence_term=dec, crosstalk_term=xt, total=dec + xt)


def _require_loss(p: SystemParams) -> None:
    if p.gamma_q == 0 and p.gamma_r == 0:
        raise DomainError("optimal coupling is undefined when both decoherence rates vanish")


def optimal_coupling(p: SystemParams, n: float | None = None) -> float:
    """Coupling (rad/s) minimizing :func:`total_error` at fixed ``N``."""
    _require_loss(p)
    nn = _n(p, n)
    s = loss_rate_sum(p, nn)
    return (math.pi * s * p.omega0**2 / (32 * p.crosstalk_prefactor * nn**2)) ** (1 / 3)


def optimal_error(p: SystemParams, n: float | None = None) -> float:
    """Minimum of :func:`total_error` over the coupling, in closed form."""
    _require_loss(p)
    nn = _n(p, n)
    s = loss_rate_sum(p, nn)
    return 3 * (4 * p.crosstalk_prefactor * math.pi**2 * nn**2 * s**2 / p.omega0**2) ** (1 / 3)


def purcell_corrections(p: SystemParams, g: float, n: float | None = None) -> PurcellCorrection:
    """Excess resonator decay inherited from the qubit through off-resonant coupling.

    Returns ``(excess_rate, error_increase, ratio)`` where ``ratio`` is the
    error increase relative to :func:`total_error` at the same coupling.
    """
    _check_g(g)
    nn = _n(p, n)
    excess = 4 * p.gamma_q * nn**2 * g**2 / p.omega0**2
    increase = math.pi * excess * nn / g
    eps = total_error(p, g, nn).total
    return PurcellCorrection(excess, increase, increase / eps)


def purcell_ratio_bound(p: SystemParams, n: float | None = None) -> float:
    """Upper bound on the Purcell error ratio at the optimal coupling."""
    nn = _n(p, n)
    a = p.crosstalk_prefactor
    return (2 / 3) * (math.pi**2 * nn**5 / (12 * a**2 * p.q_qubit**2)) ** (1 / 3)


def purcell_ratio_bound_at_volume_optimum(p: SystemParams) -> float:
    """Purcell bound evaluated at the resonator count that maximizes the volume."""
    a = p.crosstalk_prefactor
    return (1 / (9 * a)) * (8 * math.pi * math.sqrt(a / 3) / (3 * p.q_qubit)) ** 0.25
