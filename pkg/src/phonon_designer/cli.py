"""``designer`` command line front end.

Every subcommand reads a JSON parameter file (the bundled baseline when
``--params`` is omitted) and writes one deterministic data file to
``--out``: CSV for curves, JSON for reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .config import DesignConfig, load_config
from .dynamics import (
    PulseEnvelope,
    WaveState,
    crosstalk_experiment,
    evolve,
    uniform_ladder,
)
from .error_model import optimal_coupling, optimal_error
from .exceptions import ConfigError, DesignError
from .feasibility import LOWER_BOUNDS, UPPER_BOUNDS, feasibility_scan
from .params import SystemParams, angular_to_hz, effective_min_detuning
from .protocol import accumulate_decoherence, build_step_schedule, full_pairing
from .volume import closed_form_volume, solve_balance

log = logging.getLogger("phonon_designer")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3

DEFAULT_RANGES = {
    "optimize": (2, 100),
    "volume": (2, 500),
    "feasibility": (2, 500),
}
SWEEP_RATIOS = (10, 20, 50)
PULSE_CHOICES = ("cosine", "ramped", "rect")


@dataclass(frozen=True)
class RunConfig:
    command: str
    params_path: Path | None
    out: Path
    regime: str | None
    n_range: tuple[int, int]
    pulses: tuple[str, ...]
    modes: int


def regime_params(base: SystemParams, regime: str) -> SystemParams:
    if regime == "microwave":
        return base.with_microwave_storage()
    # "mechanical" and "custom" both take the file as given
    return base


def _regimes(run: RunConfig) -> list[str]:
    return [run.regime] if run.regime else ["mechanical", "microwave"]


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json_text(doc: object) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_optimize(run: RunConfig, cfg: DesignConfig) -> dict[Path, str]:
    header = ["regime", "n", "g_opt_rad_s", "g_opt_over_2pi_hz", "epsilon_opt_dimensionless"]
    rows = []
    for regime in _regimes(run):
        p = regime_params(cfg.params, regime)
        for n in range(run.n_range[0], run.n_range[1] + 1):
            pn = p.with_n(n)
            g = optimal_coupling(pn)
            rows.append([regime, n, g, angular_to_hz(g), optimal_error(pn)])
    return {run.out: _csv_text(header, rows)}


def _volume_report(p: SystemParams, n_range: tuple[int, int]) -> dict:
    res = solve_balance(p, n_range)
    return {
        **res.to_dict(),
        "closed_form_mechanical": closed_form_volume(p, "mechanical"),
        "closed_form_microwave": closed_form_volume(p, "microwave"),
    }


def cmd_volume(run: RunConfig, cfg: DesignConfig) -> dict[Path, str]:
    if run.regime:
        doc = _volume_report(regime_params(cfg.params, run.regime), run.n_range)
    else:
        reports = {r: _volume_report(regime_params(cfg.params, r), run.n_range) for r in _regimes(run)}
        doc = {
            "regimes": reports,
            "volume_ratio_mechanical_to_microwave": reports["mechanical"]["volume_continuous"]
            / reports["microwave"]["volume_continuous"],
        }
    doc["n_range"] = list(run.n_range)
    return {run.out: _json_text(doc)}


def cmd_feasibility(run: RunConfig, cfg: DesignConfig) -> dict[Path, str]:
    p = regime_params(cfg.params, run.regime or "mechanical")
    scan = feasibility_scan(cfg.hardware, p, range(run.n_range[0], run.n_range[1] + 1))
    names = LOWER_BOUNDS + UPPER_BOUNDS
    header = ["n", *(f"{name}_ff" for name in names), "feasible_min_ff", "feasible_max_ff", "feasible_flag"]
    rows = []
    for n, b in zip(scan.n_values, scan.bounds):
        interval = b.feasible_interval
        rows.append(
            [
                n,
                *(getattr(b, name) * 1e15 for name in names),
                interval[0] * 1e15 if interval else "",
                interval[1] * 1e15 if interval else "",
                "true" if interval else "false",
            ]
        )
    pair = scan.binding_pair()
    closure = {
        "closure_n": scan.closure_n,
        "closes_in_range": scan.closes_in_range,
        "binding_floor": pair[0] if pair else None,
        "binding_ceiling": pair[1] if pair else None,
        "n_range": list(run.n_range),
    }
    closure_path = run.out.with_name(run.out.stem + ".closure.json")
    return {run.out: _csv_text(header, rows), closure_path: _json_text(closure)}


def cmd_simulate(run: RunConfig, cfg: DesignConfig) -> dict[Path, str]:
    p = cfg.params.with_n(run.modes)
    delta = effective_min_detuning(p)
    header = [
        "case",
        "pulse_shape",
        "n_modes",
        "g_over_delta_dimensionless",
        "g_over_2pi_hz",
        "analytic_bound_dimensionless",
        "numerical_leakage_dimensionless",
    ]
    rows: list[list[object]] = []
    # single resonant mode: leakage is just the swap infidelity
    g = delta / SWEEP_RATIOS[0]
    single = uniform_ladder(1, delta, g)
    final = evolve(WaveState.mode_excited(1, 0), single, PulseEnvelope.for_gate("swap", g, "rect"))
    rows.append(["resonant_swap", "rect", 1, 0.0, angular_to_hz(g), 0.0, 1.0 - final.qubit_population()])
    for shape in run.pulses:
        for ratio in SWEEP_RATIOS:
            g = delta / ratio
            res = crosstalk_experiment(p, g, shape)
            rows.append(
                ["crosstalk", shape, run.modes, g / delta, angular_to_hz(g), res.analytic_bound, res.numerical_leakage]
            )
    return {run.out: _csv_text(header, rows)}


def cmd_schedule(run: RunConfig, cfg: DesignConfig) -> dict[Path, str]:
    p = cfg.params
    g = optimal_coupling(p)
    timeline = build_step_schedule(full_pairing(p.n_resonators), g, p.n_resonators)
    report = accumulate_decoherence(timeline, p.gamma_q, p.gamma_r)
    doc = json.loads(timeline.to_json())
    doc["coupling_rad_s"] = g
    doc["decoherence_error_per_resonator"] = list(report.per_resonator)
    doc["decoherence_error_pair_averaged"] = list(report.pair_averaged)
    return {run.out: _json_text(doc)}


COMMANDS = {
    "optimize": cmd_optimize,
    "volume": cmd_volume,
    "feasibility": cmd_feasibility,
    "simulate": cmd_simulate,
    "schedule": cmd_schedule,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="designer", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--params", type=Path, help="JSON parameter file (default: bundled baseline)")
    parser.add_argument("--out", type=Path, required=True, help="output file")
    parser.add_argument("--regime", choices=["mechanical", "microwave", "custom"])
    parser.add_argument("--n-min", type=int)
    parser.add_argument("--n-max", type=int)
    parser.add_argument(
        "--pulse", choices=PULSE_CHOICES, action="append", help="pulse shape(s) for simulate"
    )
    parser.add_argument("--modes", type=int, default=5, help="modes in the cross-talk sweep")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def parse_run(argv: Sequence[str] | None) -> RunConfig:
    args = build_parser().parse_args(argv)
    lo, hi = DEFAULT_RANGES.get(args.command, (2, 2))
    n_range = (args.n_min if args.n_min is not None else lo, args.n_max if args.n_max is not None else hi)
    if n_range[0] < 2 or n_range[0] > n_range[1]:
        raise ConfigError(f"empty or invalid N range {n_range[0]}..{n_range[1]}")
    if args.params is not None and not args.params.is_file():
        raise ConfigError(f"parameter file {args.params} does not exist")
    if not args.out.parent.exists():
        raise ConfigError(f"output directory {args.out.parent} does not exist")
    if args.modes < 3:
        raise ConfigError("--modes must be at least 3")
    pulses = tuple(dict.fromkeys(args.pulse)) if args.pulse else ("rect", "cosine")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return RunConfig(args.command, args.params, args.out, args.regime, n_range, pulses, args.modes)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        run = parse_run(argv)
        cfg = load_config(run.params_path)
    except ConfigError as exc:
        print(f"designer: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        outputs = COMMANDS[run.command](run, cfg)
    except DesignError as exc:
        print(f"designer: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    for path, text in outputs.items():
        path.write_text(text)
        log.info("wrote %s", path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
