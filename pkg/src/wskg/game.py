"""Leader-follower solution of the jamming game and brute-force cross-checks.

The legitimate pair commits to a pilot power first; a power-sensing jammer
observes it and responds. The follower's best response and the resulting
equilibria have closed forms, and the oracle routines re-derive them by
direct search so every closed-form branch is verified independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import NumericalError, ParameterError
from .params import (
    EquilibriumResult,
    JammerStrategy,
    LeaderStrategy,
    PowerAllocation,
    SystemParams,
)
from .rates import rate_array, sum_rate
from .stochastic import RngSeed

#: Relative width of the knife-edge band where the leader budget is treated
#: as equal to the critical power and both equilibria are reported.
BOUNDARY_RTOL = 1e-12


@dataclass(frozen=True)
class BestResponse:
    """Follower's reply: allocation, optional threshold choice, sensing flag."""

    allocation: PowerAllocation
    threshold: Optional[float]
    jammed: bool

    def __post_init__(self) -> None:
        if not self.jammed and any(g != 0.0 for g in self.allocation.gamma):
            raise ParameterError("an unsensed transmission cannot be jammed")


@dataclass(frozen=True)
class OracleConfig:
    """Search effort for the brute-force verification routines."""

    leader_grid_points: int = 1001
    allocation_samples: int = 10_000
    seed: RngSeed = RngSeed(0)

    def __post_init__(self) -> None:
        if self.leader_grid_points < 2:
            raise ParameterError(
                f"leader_grid_points must be >= 2, got {self.leader_grid_points}"
            )
        if self.allocation_samples < 1:
            raise ParameterError(
                f"allocation_samples must be >= 1, got {self.allocation_samples}"
            )


def critical_power(params: SystemParams) -> float:
    """Leader budget at which full-power jammed transmission ties
    threshold-power silent transmission.

    Equals sense_threshold * (jam_channel_var * jam_power_budget + 1); the
    rate identity R(p_th * (j2*G + 1), G) = R(p_th, 0) holds exactly.
    """
    return params.sense_threshold * (
        params.jam_channel_var * params.jam_power_budget + 1.0
    )


def jammer_br_fixed(p: float, params: SystemParams) -> BestResponse:
    """Follower's best response under a fixed sensing threshold.

    The rate is convex and decreasing in the jamming power, so once the pilot
    is sensed the full budget spread uniformly minimizes the sum rate; at or
    below the threshold the transmission goes undetected and the jammer stays
    silent (the boundary p == p_th is not sensed).
    """
    if not (math.isfinite(p) and 0.0 <= p <= params.max_pilot_power):
        raise ParameterError(
            f"p must lie in [0, {params.max_pilot_power}], got {p!r}"
        )
    if p > params.sense_threshold:
        return BestResponse(PowerAllocation.uniform(params), None, jammed=True)
    return BestResponse(PowerAllocation.silent(params), None, jammed=False)


def stackelberg_fixed(params: SystemParams) -> EquilibriumResult:
    """Equilibrium of the fixed-threshold game.

    With the budget below the sensing threshold the leader simply transmits at
    full power and is never jammed. Otherwise the leader picks between the two
    branch optima, threshold power (silent jammer) and full power (uniform
    jamming), and the winner flips exactly at the critical power; on that
    knife edge both profiles tie and are both returned.
    """
    budget = params.max_pilot_power
    threshold = params.sense_threshold
    silent = PowerAllocation.silent(params)
    if budget <= threshold:
        payoff = sum_rate(budget, silent, params)
        profiles = ((LeaderStrategy(budget, budget), JammerStrategy(silent)),)
        return EquilibriumResult(profiles, payoff, unique=True, boundary_case=False)

    uniform = PowerAllocation.uniform(params)
    knee = critical_power(params)
    threshold_payoff = sum_rate(threshold, silent, params)
    full_payoff = sum_rate(budget, uniform, params)
    threshold_profile = (LeaderStrategy(threshold, budget), JammerStrategy(silent))
    full_profile = (LeaderStrategy(budget, budget), JammerStrategy(uniform))

    if abs(budget - knee) <= BOUNDARY_RTOL * max(abs(budget), abs(knee)):
        scale = max(abs(threshold_payoff), abs(full_payoff), 1e-300)
        if abs(threshold_payoff - full_payoff) > 1e-9 * scale:
            raise NumericalError(
                "tied equilibria disagree on payoff: "
                f"{threshold_payoff} vs {full_payoff}"
            )
        return EquilibriumResult(
            (threshold_profile, full_profile),
            threshold_payoff,
            unique=False,
            boundary_case=True,
        )
    if budget < knee:
        return EquilibriumResult(
            (threshold_profile,), threshold_payoff, unique=True, boundary_case=False
        )
    return EquilibriumResult(
        (full_profile,), full_payoff, unique=True, boundary_case=False
    )


def jammer_br_strategic(
    p: float, params: SystemParams, epsilon_policy: float
) -> BestResponse:
    """Follower's best response when the threshold is part of its strategy.

    Any positive pilot power is sensed and uniformly jammed, since the jammer
    can place its threshold anywhere in [0, p). That interval is open, so it
    has no maximal element; the returned threshold is the representative
    p * (1 - epsilon_policy) with epsilon_policy in (0, 1).
    """
    if not (0.0 < epsilon_policy < 1.0):
        raise ParameterError(
            f"epsilon_policy must lie in (0, 1), got {epsilon_policy!r}"
        )
    if not (math.isfinite(p) and p >= 0.0):
        raise ParameterError(f"p must be >= 0, got {p!r}")
    if p == 0.0:
        return BestResponse(PowerAllocation.silent(params), 0.0, jammed=False)
    return BestResponse(
        PowerAllocation.uniform(params), p * (1.0 - epsilon_policy), jammed=True
    )


def stackelberg_strategic(
    params: SystemParams, epsilon_policy: float
) -> EquilibriumResult:
    """Equilibria of the strategic-threshold game.

    The jammer sensing every positive power leaves the leader a jammed rate
    that increases with pilot power, so the leader plays its full budget. One
    equilibrium exists for every threshold in [0, budget); the result carries
    the representative profile and is flagged non-unique.
    """
    budget = params.max_pilot_power
    response = jammer_br_strategic(budget, params, epsilon_policy)
    payoff = sum_rate(budget, response.allocation, params)
    profiles = (
        (
            LeaderStrategy(budget, budget),
            JammerStrategy(response.allocation, response.threshold),
        ),
    )
    return EquilibriumResult(profiles, payoff, unique=False, boundary_case=False)


def oracle_jammer_br(
    p: float, params: SystemParams, cfg: OracleConfig
) -> Tuple[PowerAllocation, float]:
    """Brute-force search for the sum-rate-minimizing feasible allocation.

    Samples the budget-tight simplex face uniformly (exponential spacings),
    and always includes the uniform point and every vertex, so both interior
    and extreme allocations are covered. Returns the best allocation found
    and its sum rate.
    """
    if not (math.isfinite(p) and p >= 0.0):
        raise ParameterError(f"p must be >= 0, got {p!r}")
    n = params.n_subcarriers
    total = n * params.jam_power_budget
    rng = cfg.seed.generator()
    spacings = rng.standard_exponential((cfg.allocation_samples, n))
    simplex = spacings / spacings.sum(axis=1, keepdims=True) * total
    candidates = np.vstack(
        [
            np.full((1, n), params.jam_power_budget),
            np.eye(n) * total,
            simplex,
        ]
    )
    values = rate_array(
        p, candidates, params.legit_channel_var, params.jam_channel_var
    ).sum(axis=1)
    best = int(np.argmin(values))
    return PowerAllocation.from_values(candidates[best], params), float(values[best])


def oracle_stackelberg(
    params: SystemParams, cfg: OracleConfig
) -> Tuple[float, float]:
    """Grid search over the leader's power with the follower's exact response.

    The induced payoff is discontinuous at the sensing threshold, so the grid
    always contains 0, the budget, and (when admissible) the threshold and the
    critical power exactly. Ties resolve to the smaller power.
    """
    budget = params.max_pilot_power
    threshold = params.sense_threshold
    grid = np.linspace(0.0, budget, cfg.leader_grid_points)
    extras = [0.0, budget]
    if threshold <= budget:
        extras.append(threshold)
    knee = critical_power(params)
    if knee <= budget:
        extras.append(knee)
    grid = np.unique(np.concatenate([grid, np.asarray(extras)]))
    s2, j2 = params.legit_channel_var, params.jam_channel_var
    jammed = rate_array(grid, params.jam_power_budget, s2, j2)
    silent = rate_array(grid, 0.0, s2, j2)
    payoffs = params.n_subcarriers * np.where(grid > threshold, jammed, silent)
    best = int(np.argmax(payoffs))
    return float(grid[best]), float(payoffs[best])
