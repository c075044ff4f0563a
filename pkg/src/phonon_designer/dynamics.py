"""Single-excitation dynamics of one qubit coupled to several resonator modes.

Basis: index 0 is ``|e, vac>`` (excitation in the qubit), index ``k + 1``
is ``|g, 1_k>`` (excitation in mode ``k``). In the frame rotating at the
qubit frequency

    H / hbar = sum_k delta_k |g1_k><g1_k| + env(t) sum_k g_k (|e0><g1_k| + h.c.)

so a resonant mode with coupling ``g`` swaps in ``T_s = pi / 2g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .exceptions import DomainError, IntegrationError
from .params import SystemParams, effective_min_detuning

PulseShape = Literal["rect", "cosine", "ramped"]
PULSE_SHAPES: tuple[str, ...] = ("rect", "cosine", "ramped")
GATE_AREAS = {"swap": math.pi / 2, "phase": math.pi}

DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ModeSet:
    detunings: tuple[float, ...]
    couplings: tuple[float, ...]
    target_index: int | None = None

    def __post_init__(self) -> None:
        if len(self.detunings) != len(self.couplings) or not self.detunings:
            raise DomainError("need one coupling per mode and at least one mode")
        if not all(math.isfinite(d) for d in self.detunings):
            raise DomainError("detunings must be finite")
        if any(not (c >= 0) for c in self.couplings):
            raise DomainError("couplings must be non-negative")
        if self.target_index is not None:
            if not 0 <= self.target_index < len(self.detunings):
                raise DomainError("target_index out of range")
            if self.detunings[self.target_index] != 0:
                raise DomainError("the target mode must be resonant (zero detuning)")
            if sum(d == 0 for d in self.detunings) != 1:
                raise DomainError("exactly one mode may be resonant")

    @property
    def n_modes(self) -> int:
        return len(self.detunings)

    @property
    def dim(self) -> int:
        return self.n_modes + 1

    @property
    def spectators(self) -> list[int]:
        return [k for k in range(self.n_modes) if k != self.target_index]

    def with_channel(self, detuning: float, coupling: float) -> "ModeSet":
        """Append a generic spectator channel, e.g. the transmon e-f transition."""
        return ModeSet(
            self.detunings + (float(detuning),), self.couplings + (float(coupling),), self.target_index
        )

    def hamiltonian_parts(self) -> tuple[np.ndarray, np.ndarray]:
        """Static diagonal part and coupling part (to be scaled by the envelope)."""
        diag = np.diag(np.concatenate(([0.0], np.asarray(self.detunings, dtype=float))))
        coup = np.zeros((self.dim, self.dim))
        coup[0, 1:] = self.couplings
        coup[1:, 0] = self.couplings
        return diag, coup

    def hamiltonian(self, envelope: float = 1.0) -> np.ndarray:
        diag, coup = self.hamiltonian_parts()
        return diag + envelope * coup


def uniform_ladder(
    n_modes: int, spacing: float, g: float, target_index: int | None = None
) -> ModeSet:
    """Modes at ``0, +-spacing, +-2 spacing, ...`` all coupled with strength ``g``.

    The target sits in the middle of the ladder unless given explicitly.
    """
    if n_modes < 1:
        raise DomainError("need at least one mode")
    t = (n_modes - 1) // 2 if target_index is None else target_index
    det = tuple(float((k - t) * spacing) for k in range(n_modes))
    return ModeSet(det, (float(g),) * n_modes, t)


@dataclass(frozen=True)
class PulseEnvelope:
    """Time profile multiplying the coupling, valued in ``[0, 1]``.

    ``rect`` is a square pulse, ``cosine`` a full ``sin^2`` bump and
    ``ramped`` a flat top with ``sin^2`` ramps of length ``ramp_time``.
    """

    shape: PulseShape
    duration: float
    ramp_time: float = 0.0

    def __post_init__(self) -> None:
        if self.shape not in PULSE_SHAPES:
            raise DomainError(f"unknown pulse shape {self.shape!r}")
        if not self.duration > 0:
            raise DomainError("pulse duration must be positive")
        if self.shape == "ramped" and not 0 < 2 * self.ramp_time <= self.duration:
            raise DomainError("ramps must fit inside the pulse")

    @classmethod
    def for_gate(
        cls, gate: str, g: float, shape: PulseShape = "rect", ramp_fraction: float = 0.25
    ) -> "PulseEnvelope":
        """Pulse whose area ``g * integral(env)`` equals that of the square gate.

        For ``ramped`` pulses each ramp lasts ``ramp_fraction`` of the square
        gate time.
        """
        if not g > 0:
            raise DomainError("coupling must be positive")
        t_rect = GATE_AREAS[gate] / g
        if shape == "rect":
            return cls("rect", t_rect)
        if shape == "cosine":
            return cls("cosine", 2 * t_rect)
        ramp = ramp_fraction * t_rect
        return cls("ramped", t_rect + ramp, ramp)

    def __call__(self, t: float | np.ndarray) -> float | np.ndarray:
        t = np.asarray(t, dtype=float)
        inside = (t >= 0) & (t <= self.duration)
        if self.shape == "rect":
            env = np.ones_like(t)
        elif self.shape == "cosine":
            env = np.sin(np.pi * t / self.duration) ** 2
        else:
            r = self.ramp_time
            up = np.sin(0.5 * np.pi * np.clip(t, 0, r) / r) ** 2
            down = np.sin(0.5 * np.pi * np.clip(self.duration - t, 0, r) / r) ** 2
            env = np.minimum(up, down)
        out = np.where(inside, env, 0.0)
        return float(out) if out.ndim == 0 else out

    def area(self) -> float:
        """Integral of the envelope over the pulse, in seconds."""
        if self.shape == "rect":
            return self.duration
        if self.shape == "cosine":
            return self.duration / 2
        return self.duration - self.ramp_time


@dataclass(frozen=True)
class WaveState:
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        a = np.array(self.amplitudes, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def qubit_excited(cls, n_modes: int) -> "WaveState":
        a = np.zeros(n_modes + 1, complex)
        a[0] = 1
        return cls(a)

    @classmethod
    def mode_excited(cls, n_modes: int, k: int) -> "WaveState":
        a = np.zeros(n_modes + 1, complex)
        a[k + 1] = 1
        return cls(a)

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norm_squared(self) -> float:
        return float(np.sum(self.populations))

    def qubit_population(self) -> float:
        return float(self.populations[0])

    def mode_population(self, k: int) -> float:
        return float(self.populations[k + 1])

    def overlap(self, other: "WaveState") -> complex:
        return complex(np.vdot(other.amplitudes, self.amplitudes))

    def fidelity(self, other: "WaveState") -> float:
        """``|<other|self>|^2``; blind to a global phase, use :meth:`overlap` for signs."""
        return abs(self.overlap(other)) ** 2


CHUNK = 2048


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    """``mats[-1] @ ... @ mats[0]`` by pairwise reduction."""
    while len(mats) > 1:
        if len(mats) % 2:
            mats = np.concatenate([mats, np.eye(mats.shape[1])[None]])
        mats = mats[1::2] @ mats[0::2]
    return mats[0]


def _rk4(
    y0: np.ndarray,
    diag: np.ndarray,
    coup: np.ndarray,
    pulse: PulseEnvelope,
    n_steps: int,
) -> np.ndarray:
    """Classical RK4 for ``y' = -i H(t) y``.

    For a linear system each step is a matrix polynomial, so the steps are
    built in batches and multiplied together instead of looping over stages.
    """
    h = pulse.duration / n_steps
    dim = len(y0)
    eye = np.eye(dim)
    # -i H(t) = a + env(t) b
    a = -1j * diag
    b = -1j * coup
    if pulse.shape == "rect":
        k = h * (a + b)
        k2 = k @ k
        step = eye + k + k2 / 2 + k2 @ k / 6 + k2 @ k2 / 24
        return np.linalg.matrix_power(step, n_steps) @ y0
    y = y0.astype(complex)
    for first in range(0, n_steps, CHUNK):
        ts = (first + np.arange(min(CHUNK, n_steps - first))) * h
        k1 = h * (a + pulse(ts)[:, None, None] * b)
        km = h * (a + pulse(ts + h / 2)[:, None, None] * b)
        k4 = h * (a + pulse(ts + h)[:, None, None] * b)
        s2 = km @ (eye + k1 / 2)
        s3 = km @ (eye + s2 / 2)
        s4 = k4 @ (eye + s3)
        steps = eye + (k1 + 2 * s2 + 2 * s3 + s4) / 6
        y = _ordered_product(steps) @ y
    return y


def base_steps(modes: ModeSet, pulse: PulseEnvelope, per_unit: float = 50.0) -> int:
    """Initial step count: ``h <= 1 / (per_unit * fastest rate)``."""
    fastest = max(max(modes.couplings), max(abs(d) for d in modes.detunings))
    if fastest == 0:
        return 1
    return max(1, math.ceil(pulse.duration * per_unit * fastest))


def evolve(
    state: WaveState,
    modes: ModeSet,
    pulse: PulseEnvelope,
    tolerance: float = DEFAULT_TOLERANCE,
    max_steps: int = 2**22,
) -> WaveState:
    """Propagate ``state`` through ``pulse`` with fixed-step RK4.

    The step is halved until the Richardson estimate of the state error
    (difference between step ``h`` and ``h/2`` runs over ``2^4 - 1``) drops
    below ``tolerance``; the finer run is returned.
    """
    if state.amplitudes.shape != (modes.dim,):
        raise DomainError(f"state has dimension {state.amplitudes.shape}, modes need {modes.dim}")
    if abs(state.norm_squared - 1) > 1e-9:
        raise DomainError("input state is not normalized")
    diag, coup = modes.hamiltonian_parts()
    n = base_steps(modes, pulse)
    y0 = state.amplitudes
    coarse = _rk4(y0, diag, coup, pulse, n)
    while True:
        if 2 * n > max_steps:
            raise IntegrationError(
                f"tolerance {tolerance:g} not reached within {max_steps} steps"
            )
        fine = _rk4(y0, diag, coup, pulse, 2 * n)
        err = np.linalg.norm(fine - coarse) / 15
        if err < tolerance:
            return WaveState(fine)
        n, coarse = 2 * n, fine


def evolve_fixed(state: WaveState, modes: ModeSet, pulse: PulseEnvelope, n_steps: int) -> WaveState:
    """Plain RK4 with a given number of steps, without error control."""
    diag, coup = modes.hamiltonian_parts()
    return WaveState(_rk4(state.amplitudes, diag, coup, pulse, n_steps))


def two_level_rabi(g: float, delta: float, t: float) -> float:
    """Transfer probability of a two-level system with coupling ``g`` and detuning ``delta``."""
    if not g > 0:
        raise DomainError("coupling must be positive")
    omega_sq = 4 * g**2 + delta**2
    return 4 * g**2 / omega_sq * math.sin(math.sqrt(omega_sq) * t / 2) ** 2


class CrosstalkResult(NamedTuple):
    numerical_leakage: float
    analytic_bound: float
    spectator_populations: tuple[float, ...]
    residual_target: float


def crosstalk_modes(p: SystemParams, g: float, include_anharmonic: bool = False) -> ModeSet:
    """Target plus ``N - 1`` spectators spaced by the minimum detuning ``omega0/4N``."""
    delta = effective_min_detuning(p)
    modes = uniform_ladder(p.n_resonators, delta, g)
    if include_anharmonic:
        modes = modes.with_channel(delta, math.sqrt(2) * g)
    return modes


def crosstalk_experiment(
    p: SystemParams,
    g: float,
    pulse_shape: PulseShape = "rect",
    include_anharmonic: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CrosstalkResult:
    """Swap an excitation out of the target mode and measure what goes astray.

    Leakage is everything not ending in ``|e0>``: spectator populations plus
    whatever is left in the target. The analytic estimate is
    ``sum_k g_k^2 / delta_k^2`` over the spectators.
    """
    if p.n_resonators < 3:
        raise DomainError("cross-talk needs at least one spectator on each side (N >= 3)")
    modes = crosstalk_modes(p, g, include_anharmonic)
    start = WaveState.mode_excited(modes.n_modes, modes.target_index)
    pulse = PulseEnvelope.for_gate("swap", g, pulse_shape)
    final = evolve(start, modes, pulse, tolerance)
    spect = tuple(final.mode_population(k) for k in modes.spectators)
    residual = final.mode_population(modes.target_index)
    leakage = sum(spect) + residual
    bound = sum(modes.couplings[k] ** 2 / modes.detunings[k] ** 2 for k in modes.spectators)
    return CrosstalkResult(leakage, bound, spect, residual)
