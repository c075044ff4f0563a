"""Sequential gate timeline of one circuit layer and its decoherence accounting.

Every two-resonator gate ``(i, j)`` runs through the single processing
qubit as ``swap(i) - phase(j) - swap(i)`` with durations ``T_s, 2 T_s, T_s``.
During a swap the information is counted as half in the qubit, so the
swapped resonator ``i`` spends ``T_s/2 + 2 T_s + T_s/2 = 3 T_s`` in the
qubit; ``j`` and idle resonators never leave their resonator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .exceptions import DomainError
from .params import swap_time

IN_QUBIT = "qubit"
IN_RESONATOR = "resonator"


@dataclass(frozen=True)
class GateSegment:
    kind: Literal["swap", "phase"]
    resonator: int
    start: float
    duration: float

    @property
    def end(self) -> float:
        return self.start + self.duration


@dataclass(frozen=True)
class Residency:
    location: Literal["qubit", "resonator"]
    start: float
    duration: float


@dataclass(frozen=True)
class ScheduleTimeline:
    n_resonators: int
    swap_time: float
    pairs: tuple[tuple[int, int], ...]
    segments: tuple[GateSegment, ...]
    residency: tuple[tuple[Residency, ...], ...]

    @property
    def duration(self) -> float:
        return self.segments[-1].end if self.segments else 0.0

    def time_in(self, resonator: int, location: str) -> float:
        return sum(r.duration for r in self.residency[resonator] if r.location == location)

    def role(self, resonator: int) -> str:
        for i, j in self.pairs:
            if resonator == i:
                return "swapped"
            if resonator == j:
                return "partner"
        return "idle"

    def to_json(self) -> str:
        doc = {
            "n_resonators": self.n_resonators,
            "swap_time_s": self.swap_time,
            "duration_s": self.duration,
            "pairs": [list(pr) for pr in self.pairs],
            "segments": [
                {"kind": s.kind, "targets": [s.resonator], "start_s": s.start, "duration_s": s.duration}
                for s in self.segments
            ],
            "residency": [
                {
                    "resonator": k,
                    "role": self.role(k),
                    "intervals": [
                        {"location": r.location, "start_s": r.start, "duration_s": r.duration}
                        for r in recs
                    ],
                }
                for k, recs in enumerate(self.residency)
            ],
        }
        return json.dumps(doc, indent=2)


def full_pairing(n_resonators: int) -> list[tuple[int, int]]:
    """Neighbouring pairs ``(0, 1), (2, 3), ...``; an odd last resonator stays idle."""
    return [(k, k + 1) for k in range(0, n_resonators - 1, 2)]


def _merge(records: list[Residency]) -> tuple[Residency, ...]:
    out: list[Residency] = []
    for r in records:
        if r.duration == 0:
            continue
        if out and out[-1].location == r.location:
            prev = out[-1]
            out[-1] = Residency(prev.location, prev.start, prev.duration + r.duration)
        else:
            out.append(r)
    return tuple(out)


def build_step_schedule(
    pairing: Iterable[Sequence[int]], g: float, n_resonators: int | None = None
) -> ScheduleTimeline:
    """Lay out one circuit layer for the given disjoint resonator pairs.

    Resonators are indexed from zero. ``n_resonators`` defaults to one more
    than the largest index used; extra resonators idle for the whole layer.
    """
    t_s = swap_time(g)
    pairs = tuple((int(a), int(b)) for a, b in pairing)
    used = [k for pr in pairs for k in pr]
    if len(used) != len(set(used)):
        raise DomainError(f"pairs overlap: {pairs}")
    if any(k < 0 for k in used):
        raise DomainError("resonator indices must be non-negative")
    n = n_resonators if n_resonators is not None else (max(used) + 1 if used else 0)
    if used and max(used) >= n:
        raise DomainError(f"pairing uses resonator {max(used)} but n_resonators = {n}")

    segments: list[GateSegment] = []
    # per resonator: list of (location, start, duration) pieces in time order
    pieces: list[list[Residency]] = [[] for _ in range(n)]
    t = 0.0
    for i, j in pairs:
        segments += [
            GateSegment("swap", i, t, t_s),
            GateSegment("phase", j, t + t_s, 2 * t_s),
            GateSegment("swap", i, t + 3 * t_s, t_s),
        ]
        t_end = t + 4 * t_s
        for k in range(n):
            if k == i:
                pieces[k] += [
                    Residency(IN_RESONATOR, t, t_s / 2),
                    Residency(IN_QUBIT, t + t_s / 2, 3 * t_s),
                    Residency(IN_RESONATOR, t + 3.5 * t_s, t_s / 2),
                ]
            else:
                pieces[k].append(Residency(IN_RESONATOR, t, 4 * t_s))
        t = t_end

    return ScheduleTimeline(
        n_resonators=n,
        swap_time=t_s,
        pairs=pairs,
        segments=tuple(segments),
        residency=tuple(_merge(pc) for pc in pieces),
    )


@dataclass(frozen=True)
class DecoherenceReport:
    per_resonator: tuple[float, ...]
    pair_averaged: tuple[float, ...]

    @property
    def mean_pair_averaged(self) -> float:
        return sum(self.pair_averaged) / len(self.pair_averaged) if self.pair_averaged else 0.0


def accumulate_decoherence(
    timeline: ScheduleTimeline, gamma_q: float, gamma_r: float
) -> DecoherenceReport:
    """Integrate decay rates over each resonator's residency.

    Returns raw per-resonator error probabilities together with the
    average over the two members of every pair.
    """
    per = []
    for k in range(timeline.n_resonators):
        per.append(
            gamma_r * timeline.time_in(k, IN_RESONATOR) + gamma_q * timeline.time_in(k, IN_QUBIT)
        )
    avg = tuple((per[i] + per[j]) / 2 for i, j in timeline.pairs)
    return DecoherenceReport(tuple(per), avg)
