"""Command-line harness: solvers, verifications, simulations, and sweeps.

Every command is a deterministic function of its option values; commands that
draw random numbers require an explicit ``--seed`` (there is no wall-clock
default). JSON output has sorted keys and CSV numbers carry 12 significant
digits, so identical invocations produce byte-identical artifacts.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure
(non-finite result), 3 a verification command rejected its own check.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, List, Optional, Tuple

import click
import numpy as np

from .errors import (
    NotPositiveSemidefinite,
    NumericalError,
    ParameterError,
    ZeroEquilibriumPayoff,
)
from .game import OracleConfig, oracle_jammer_br, oracle_stackelberg, stackelberg_fixed, stackelberg_strategic
from .injection import TwoLookBatch, mi_from_two_look, simulate_two_look
from .metrics import sweep as run_sweep
from .params import EquilibriumResult, PowerAllocation, SystemParams
from .randomization import (
    RandomizedBatch,
    mi_from_randomized,
    randomize_trials,
    verify_randomization,
)
from .rates import sum_rate
from .stochastic import RngSeed

#: Significance level for the self-checking verification commands.
KS_SIGNIFICANCE = 0.001

CSV_HEADER = "swept_value,c_se,c_full,c_threshold,f,d,e"

_COMMANDS = (
    "solve-fixed",
    "solve-strategic",
    "verify-randomization",
    "simulate-injection",
    "leakage",
    "oracle-check",
    "sweep",
)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation of one harness command."""

    command: str
    params: SystemParams
    seed: Optional[RngSeed] = None
    output_path: Optional[str] = None
    format: str = "json"
    sweep_spec: Optional[Tuple[str, float, float, int]] = None
    trials: int = 100_000
    delta: float = 0.5
    workers: int = 1

    def __post_init__(self) -> None:
        if self.command not in _COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ParameterError(f"format must be csv or json, got {self.format!r}")
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if not 0.0 < self.delta < 1.0:
            raise ParameterError(f"delta must lie in (0, 1), got {self.delta}")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")


def _require_seed(config: RunConfig) -> RngSeed:
    if config.seed is None:
        raise ParameterError(f"--seed is required for {config.command}")
    return config.seed


def _shard_counts(total: int, workers: int) -> List[int]:
    workers = min(workers, total)
    base, extra = divmod(total, workers)
    return [base + 1 if i < extra else base for i in range(workers)]


def _sharded_batches(fn: Callable, params: SystemParams, trials: int, seed: RngSeed, workers: int) -> list:
    """Split trials over consecutive substreams; order is deterministic."""
    counts = _shard_counts(trials, workers)
    seeds = [seed.with_stream(seed.stream + i) for i in range(len(counts))]
    if len(counts) == 1:
        return [fn(params, counts[0], seeds[0])]
    with ThreadPoolExecutor(max_workers=len(counts)) as pool:
        return list(pool.map(fn, [params] * len(counts), counts, seeds))


def _profile_dict(leader, jammer) -> dict:
    return {
        "pilot_power": leader.pilot_power,
        "allocation": [float(g) for g in jammer.allocation.gamma],
        "threshold": jammer.threshold,
    }


def _equilibrium_payload(command: str, config: RunConfig, result: EquilibriumResult) -> dict:
    return {
        "command": command,
        "params": config.params.to_dict(),
        "p_se": result.profiles[0][0].pilot_power,
        "payoff": result.payoff,
        "unique": result.unique,
        "boundary_case": result.boundary_case,
        "profiles": [_profile_dict(ls, js) for ls, js in result.profiles],
    }


def _cmd_solve_fixed(config: RunConfig) -> Tuple[dict, int]:
    return _equilibrium_payload("solve-fixed", config, stackelberg_fixed(config.params)), 0


def _cmd_solve_strategic(config: RunConfig) -> Tuple[dict, int]:
    result = stackelberg_strategic(config.params, config.delta)
    payload = _equilibrium_payload("solve-strategic", config, result)
    payload["delta"] = config.delta
    payload["epsilon_interval"] = f"[0, {config.params.max_pilot_power:.12g})"
    return payload, 0


def _cmd_verify_randomization(config: RunConfig) -> Tuple[dict, int]:
    seed = _require_seed(config)
    report = verify_randomization(config.params, config.trials, seed)
    accepted = (
        report.ks_product.p_value > KS_SIGNIFICANCE
        and report.ks_source.p_value > KS_SIGNIFICANCE
    )
    power = config.params.max_pilot_power
    s2 = config.params.legit_channel_var
    payload = {
        "command": "verify-randomization",
        "params": config.params.to_dict(),
        "seed": seed.seed,
        "stream": seed.stream,
        "trials": config.trials,
        "ks_product": asdict(report.ks_product),
        "ks_source": asdict(report.ks_source),
        "source_real_var": report.source_real_var,
        "expected_source_real_var": power * power * s2 / 2.0,
        "significance": KS_SIGNIFICANCE,
        "accepted": accepted,
    }
    return payload, 0 if accepted else 3


def _cmd_simulate_injection(config: RunConfig) -> Tuple[dict, int]:
    seed = _require_seed(config)
    batch = TwoLookBatch.concat(
        _sharded_batches(simulate_two_look, config.params, config.trials, seed, config.workers)
    )
    nominal = config.params.jam_channel_var * config.params.jam_power_budget
    payload = {
        "command": "simulate-injection",
        "params": config.params.to_dict(),
        "seed": seed.seed,
        "stream": seed.stream,
        "trials": config.trials,
        "workers": config.workers,
        "injected_variance": float(np.var(batch.injected)),
        "nominal_injected_variance": nominal,
        "observation_variance": float(np.var(batch.z_a)),
        "observation_cross_moment": float(np.mean(batch.z_a * np.conj(batch.z_b)).real),
        "resampled_draws": batch.resampled,
    }
    return payload, 0


def _cmd_leakage(config: RunConfig) -> Tuple[dict, int]:
    seed = _require_seed(config)
    static_batch = TwoLookBatch.concat(
        _sharded_batches(simulate_two_look, config.params, config.trials, seed, config.workers)
    )
    randomized_seed = seed.with_stream(seed.stream + config.workers)
    randomized_batch = RandomizedBatch.concat(
        _sharded_batches(
            randomize_trials, config.params, config.trials, randomized_seed, config.workers
        )
    )
    payload = {
        "command": "leakage",
        "params": config.params.to_dict(),
        "seed": seed.seed,
        "stream": seed.stream,
        "trials": config.trials,
        "workers": config.workers,
        "static_pilot_leakage_bits": mi_from_two_look(static_batch),
        "randomized_pilot_leakage_bits": mi_from_randomized(randomized_batch),
    }
    return payload, 0


def _cmd_oracle_check(config: RunConfig) -> Tuple[dict, int]:
    seed = _require_seed(config)
    params = config.params
    cfg = OracleConfig(leader_grid_points=1001, allocation_samples=config.trials, seed=seed)
    closed = stackelberg_fixed(params)
    p_best, oracle_value = oracle_stackelberg(params, cfg)
    gap = abs(closed.payoff - oracle_value) / max(abs(closed.payoff), 1e-300)
    best_alloc, best_value = oracle_jammer_br(params.max_pilot_power, params, cfg)
    uniform_value = sum_rate(
        params.max_pilot_power, PowerAllocation.uniform(params), params
    )
    jensen_ok = uniform_value <= best_value + 1e-9
    accepted = gap <= 1e-6 and jensen_ok
    payload = {
        "command": "oracle-check",
        "params": params.to_dict(),
        "seed": seed.seed,
        "stream": seed.stream,
        "allocation_samples": config.trials,
        "leader_grid_points": cfg.leader_grid_points,
        "closed_form_payoff": closed.payoff,
        "oracle_payoff": oracle_value,
        "oracle_p_best": p_best,
        "relative_gap": gap,
        "uniform_allocation_value": uniform_value,
        "best_sampled_allocation_value": best_value,
        "jensen_dominance": jensen_ok,
        "accepted": accepted,
    }
    return payload, 0 if accepted else 3


def _cmd_sweep(config: RunConfig) -> Tuple[dict, int]:
    if config.sweep_spec is None:
        raise ParameterError("sweep requires --variable, --lo, --hi and --steps")
    variable, lo, hi, steps = config.sweep_spec
    rows = run_sweep(config.params, variable, lo, hi, steps, config.delta)
    payload = {
        "command": "sweep",
        "params": config.params.to_dict(),
        "variable": variable,
        "lo": lo,
        "hi": hi,
        "steps": steps,
        "delta": config.delta,
        "rows": [asdict(row) for row in rows],
    }
    return payload, 0


_BUILDERS = {
    "solve-fixed": _cmd_solve_fixed,
    "solve-strategic": _cmd_solve_strategic,
    "verify-randomization": _cmd_verify_randomization,
    "simulate-injection": _cmd_simulate_injection,
    "leakage": _cmd_leakage,
    "oracle-check": _cmd_oracle_check,
    "sweep": _cmd_sweep,
}


def _ensure_finite(value, path="result") -> None:
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NumericalError(f"non-finite value at {path}: {value!r}")
    elif isinstance(value, dict):
        for key, item in value.items():
            _ensure_finite(item, f"{path}.{key}")
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _ensure_finite(item, f"{path}[{i}]")


def _csv_text(rows: List[dict]) -> str:
    columns = CSV_HEADER.split(",")
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join(format(row[name], ".12g") for name in columns))
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> int:
    """Execute one command, emit its artifact, and return the exit status."""
    try:
        payload, code = _BUILDERS[config.command](config)
        _ensure_finite(payload)
        if config.command == "sweep" and config.format == "csv":
            text = _csv_text(payload["rows"])
        elif config.format == "csv":
            raise ParameterError(f"{config.command} supports only --format json")
        else:
            text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    except (ParameterError, ZeroEquilibriumPayoff) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (NumericalError, NotPositiveSemidefinite, FloatingPointError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 2
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)
    return code


def _param_options(fn):
    options = [
        click.option("--n", "n", type=int, default=10, show_default=True, help="Number of subcarriers."),
        click.option("--p-max", "p_max", type=float, default=5.0, show_default=True, help="Leader pilot power budget."),
        click.option("--gamma", type=float, default=4.0, show_default=True, help="Jammer average power budget per subcarrier."),
        click.option("--p-th", "p_th", type=float, default=2.0, show_default=True, help="Jammer sensing threshold."),
        click.option("--sigma2", type=float, default=1.0, show_default=True, help="Legitimate channel gain variance."),
        click.option("--sigmaj2", type=float, default=1.0, show_default=True, help="Jammer channel gain variance."),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True, help="Output format."),
        click.option("--output", "output", type=click.Path(dir_okay=False), default=None, help="Write the artifact to this file instead of stdout."),
        click.option("--workers", type=int, default=1, show_default=True, help="Monte Carlo substream shards (1 reproduces the reference output)."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _rng_options(fn):
    options = [
        click.option("--seed", type=int, default=None, help="RNG seed (required for randomized commands)."),
        click.option("--stream", type=int, default=0, show_default=True, help="RNG substream id."),
        click.option("--trials", type=int, default=100_000, show_default=True, help="Monte Carlo trials / oracle samples."),
        click.option("--delta", type=float, default=0.5, show_default=True, help="Representative-threshold policy in (0, 1)."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _build_config(command, n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output,
                  workers, seed=None, stream=0, trials=100_000, delta=0.5,
                  sweep_spec=None) -> RunConfig:
    params = SystemParams(
        n_subcarriers=n,
        max_pilot_power=p_max,
        jam_power_budget=gamma,
        sense_threshold=p_th,
        legit_channel_var=sigma2,
        jam_channel_var=sigmaj2,
    )
    rng_seed = None if seed is None else RngSeed(seed, stream)
    return RunConfig(
        command=command,
        params=params,
        seed=rng_seed,
        output_path=output,
        format=fmt,
        sweep_spec=sweep_spec,
        trials=trials,
        delta=delta,
        workers=workers,
    )


@click.group()
def cli() -> None:
    """Simulation and game-solving toolkit for key generation under attack."""


@cli.command("solve-fixed")
@_param_options
def solve_fixed_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers):
    """Solve the fixed-threshold leader-follower game."""
    return run(_build_config("solve-fixed", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers))


@cli.command("solve-strategic")
@_param_options
@_rng_options
def solve_strategic_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers, seed, stream, trials, delta):
    """Solve the strategic-threshold leader-follower game."""
    return run(_build_config("solve-strategic", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers,
                             seed=seed, stream=stream, trials=trials, delta=delta))


@cli.command("verify-randomization")
@_param_options
@_rng_options
def verify_randomization_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers, seed, stream, trials, delta):
    """KS-verify the Gaussian laws behind the randomized-probing defense."""
    return run(_build_config("verify-randomization", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers,
                             seed=seed, stream=stream, trials=trials, delta=delta))


@cli.command("simulate-injection")
@_param_options
@_rng_options
def simulate_injection_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers, seed, stream, trials, delta):
    """Simulate the coincident-injection attack and report summary statistics."""
    return run(_build_config("simulate-injection", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers,
                             seed=seed, stream=stream, trials=trials, delta=delta))


@cli.command("leakage")
@_param_options
@_rng_options
def leakage_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers, seed, stream, trials, delta):
    """Estimate attacker leakage with static and with randomized pilots."""
    return run(_build_config("leakage", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers,
                             seed=seed, stream=stream, trials=trials, delta=delta))


@cli.command("oracle-check")
@_param_options
@_rng_options
def oracle_check_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers, seed, stream, trials, delta):
    """Cross-check the closed-form equilibrium against brute-force search."""
    return run(_build_config("oracle-check", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers,
                             seed=seed, stream=stream, trials=trials, delta=delta))


@cli.command("sweep")
@_param_options
@_rng_options
@click.option("--variable", type=click.Choice(("p_max", "P", "gamma", "sigma2", "p_th")), required=True, help="Parameter to sweep (P is an alias for p_max).")
@click.option("--lo", type=float, required=True, help="Lower end of the sweep range.")
@click.option("--hi", type=float, required=True, help="Upper end of the sweep range.")
@click.option("--steps", type=int, required=True, help="Number of grid points (endpoints included).")
def sweep_command(n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers, seed, stream, trials, delta, variable, lo, hi, steps):
    """Sweep one parameter and tabulate payoffs and deviation metrics."""
    variable = "p_max" if variable == "P" else variable
    return run(_build_config("sweep", n, p_max, gamma, p_th, sigma2, sigmaj2, fmt, output, workers,
                             seed=seed, stream=stream, trials=trials, delta=delta,
                             sweep_spec=(variable, lo, hi, steps)))


def main(argv: Optional[List[str]] = None) -> int:
    """Invoke the CLI; returns the exit status instead of raising SystemExit."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except (ParameterError, ZeroEquilibriumPayoff) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (NumericalError, NotPositiveSemidefinite) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 2
    return int(result) if isinstance(result, int) else 0


def entry() -> None:
    """Console-script entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
