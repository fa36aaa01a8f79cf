"""Shared parameter and strategy types with their validity invariants.

All power and variance quantities are linear (never dB). Every type here is
immutable after construction, so values can be shared freely across workers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Tuple

import numpy as np

from .errors import NumericalError, ParameterError

#: Relative slack on the allocation sum constraint, absorbing float accumulation
#: when budget-tight vectors are assembled in floating point.
ALLOCATION_SUM_RTOL = 1e-12

_FIELD_ORDER = (
    "n_subcarriers",
    "max_pilot_power",
    "jam_power_budget",
    "sense_threshold",
    "legit_channel_var",
    "jam_channel_var",
)


def _require_real(name: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"{name} must be a real number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class SystemParams:
    """Scalar model parameters of the jammed key-generation channel.

    n_subcarriers: number of parallel fading blocks probed per round.
    max_pilot_power: leader's per-subcarrier pilot power budget.
    jam_power_budget: jammer's average per-subcarrier power budget.
    sense_threshold: pilot power above which the jammer detects a transmission.
    legit_channel_var: variance of the fading gain between the legitimate users.
    jam_channel_var: variance scale of the fading gains on the jammer's links.
    """

    n_subcarriers: int
    max_pilot_power: float
    jam_power_budget: float
    sense_threshold: float
    legit_channel_var: float
    jam_channel_var: float

    def __post_init__(self) -> None:
        n = self.n_subcarriers
        if isinstance(n, bool) or not isinstance(n, int):
            raise ParameterError(f"n_subcarriers must be an integer, got {n!r}")
        if n < 1:
            raise ParameterError(f"n_subcarriers must be >= 1, got {n}")
        for name in _FIELD_ORDER[1:]:
            value = _require_real(name, getattr(self, name))
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("max_pilot_power", "jam_power_budget", "sense_threshold"):
            if getattr(self, name) < 0.0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("legit_channel_var", "jam_channel_var"):
            if getattr(self, name) <= 0.0:
                raise ParameterError(f"{name} must be > 0, got {getattr(self, name)}")

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in _FIELD_ORDER}

    @classmethod
    def from_dict(cls, raw: Mapping[str, object]) -> "SystemParams":
        return validate_params(raw)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SystemParams":
        return validate_params(json.loads(text))


def validate_params(raw: Mapping[str, object]) -> SystemParams:
    """Build :class:`SystemParams` from a raw record.

    Invalid values raise :class:`ParameterError`; nothing is ever clamped.
    The record must carry exactly the six snake_case fields.
    """
    missing = [k for k in _FIELD_ORDER if k not in raw]
    if missing:
        raise ParameterError(f"missing parameter fields: {', '.join(missing)}")
    unknown = sorted(set(raw) - set(_FIELD_ORDER))
    if unknown:
        raise ParameterError(f"unknown parameter fields: {', '.join(unknown)}")
    n = raw["n_subcarriers"]
    if isinstance(n, bool) or not isinstance(n, (int, float)):
        raise ParameterError(f"n_subcarriers must be an integer, got {n!r}")
    if isinstance(n, float):
        if not math.isfinite(n) or n != int(n):
            raise ParameterError(f"n_subcarriers must be an integer, got {n!r}")
        n = int(n)
    values = {name: _require_real(name, raw[name]) for name in _FIELD_ORDER[1:]}
    return SystemParams(n_subcarriers=n, **values)


@dataclass(frozen=True)
class LeaderStrategy:
    """Pilot power the leader commits to, within its admissible range [0, budget]."""

    pilot_power: float
    budget: float

    def __post_init__(self) -> None:
        power = _require_real("pilot_power", self.pilot_power)
        budget = _require_real("budget", self.budget)
        if not (math.isfinite(power) and math.isfinite(budget)):
            raise ParameterError("pilot_power and budget must be finite")
        if budget < 0.0:
            raise ParameterError(f"budget must be >= 0, got {budget}")
        if not 0.0 <= power <= budget:
            raise ParameterError(
                f"pilot_power must lie in [0, {budget}], got {power}"
            )
        object.__setattr__(self, "pilot_power", power)
        object.__setattr__(self, "budget", budget)


@dataclass(frozen=True)
class PowerAllocation:
    """Per-subcarrier jamming powers under an average-power budget.

    The sum constraint ``sum(gamma) <= len(gamma) * budget`` is enforced at
    construction with a small relative slack (:data:`ALLOCATION_SUM_RTOL`).
    """

    gamma: Tuple[float, ...]
    budget: float

    def __post_init__(self) -> None:
        try:
            gamma = tuple(float(g) for g in self.gamma)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"allocation entries must be real numbers: {exc}")
        if not gamma:
            raise ParameterError("allocation must cover at least one subcarrier")
        budget = _require_real("budget", self.budget)
        if not math.isfinite(budget) or budget < 0.0:
            raise ParameterError(f"budget must be finite and >= 0, got {budget}")
        for g in gamma:
            if not math.isfinite(g):
                raise ParameterError(f"allocation entries must be finite, got {g!r}")
            if g < 0.0:
                raise ParameterError(f"allocation entries must be >= 0, got {g}")
        limit = len(gamma) * budget * (1.0 + ALLOCATION_SUM_RTOL)
        total = math.fsum(gamma)
        if total > limit:
            raise ParameterError(
                f"allocation sum {total} exceeds budget {len(gamma)} * {budget}"
            )
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "budget", budget)

    @classmethod
    def uniform(cls, params: SystemParams) -> "PowerAllocation":
        """Full budget spread evenly over all subcarriers."""
        return cls(
            (params.jam_power_budget,) * params.n_subcarriers,
            params.jam_power_budget,
        )

    @classmethod
    def silent(cls, params: SystemParams) -> "PowerAllocation":
        """No jamming power anywhere."""
        return cls((0.0,) * params.n_subcarriers, params.jam_power_budget)

    @classmethod
    def from_values(
        cls, values: Iterable[float], params: SystemParams
    ) -> "PowerAllocation":
        return cls(tuple(values), params.jam_power_budget)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.gamma, dtype=float)

    @property
    def total(self) -> float:
        return math.fsum(self.gamma)


@dataclass(frozen=True)
class JammerStrategy:
    """Jammer's move: an allocation, plus a sensing threshold when that
    threshold is itself part of the strategy."""

    allocation: PowerAllocation
    threshold: Optional[float] = None

    def __post_init__(self) -> None:
        if self.threshold is not None:
            threshold = _require_real("threshold", self.threshold)
            if not math.isfinite(threshold) or threshold < 0.0:
                raise ParameterError(
                    f"threshold must be finite and >= 0, got {threshold}"
                )
            object.__setattr__(self, "threshold", threshold)


@dataclass(frozen=True)
class EquilibriumResult:
    """Stackelberg solution: one or more strategy profiles sharing a payoff.

    ``payoff`` is the sum rate over all subcarriers, in bits per
    ``n_subcarriers`` channel uses. ``boundary_case`` flags the knife-edge
    where the leader budget equals the critical power and two profiles tie.
    """

    profiles: Tuple[Tuple[LeaderStrategy, JammerStrategy], ...]
    payoff: float
    unique: bool
    boundary_case: bool

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ParameterError("equilibrium must contain at least one profile")
        if not math.isfinite(self.payoff):
            raise NumericalError(f"equilibrium payoff is not finite: {self.payoff!r}")
