"""Coincident-signal injection attack: precoding, two-look simulation, leakage.

A two-antenna attacker with knowledge of both of its channel vectors can
precode its transmission so the identical waveform arrives at both legitimate
receivers, planting attacker-chosen material in their shared randomness. The
leakage bound quantifies, in bits, how much of the distilled key material the
attacker controls when the probing pilots are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import NearSingularChannels, ParameterError
from .params import SystemParams
from .stochastic import RngSeed, _complex_normal, gaussian_mi_from_cov

#: Scale of the singularity rejection floor for the precoder denominator.
#: Equality of the two first-antenna gains has probability zero under the
#: continuous channel law, but finite precision still needs a floor.
_SINGULARITY_FLOOR_SCALE = 1e-9


def _coincidence_floor(h_a1: complex, h_b1: complex) -> float:
    return _SINGULARITY_FLOOR_SCALE * (abs(h_a1) + abs(h_b1) + 1.0)


@dataclass(frozen=True)
class MisoChannels:
    """Channel vectors from the attacker's two antennas to each receiver."""

    h_a: Tuple[complex, complex]
    h_b: Tuple[complex, complex]

    def __post_init__(self) -> None:
        for name, pair in (("h_a", self.h_a), ("h_b", self.h_b)):
            values = tuple(complex(v) for v in pair)
            if len(values) != 2:
                raise ParameterError(f"{name} must hold exactly two gains")
            for v in values:
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    raise ParameterError(f"{name} entries must be finite, got {v!r}")
            object.__setattr__(self, name, values)


@dataclass(frozen=True)
class Precoder:
    """Two-antenna precoding pair making the injected signal coincide."""

    p1: complex
    p2: complex

    @property
    def transmit_power(self) -> float:
        return abs(self.p1) ** 2 + abs(self.p2) ** 2


@dataclass(frozen=True)
class TwoLookBatch:
    """Vectorized Monte Carlo trials of the two-look observation model.

    ``injected`` holds the common injected value appearing identically in
    both observations; ``resampled`` counts channel draws rejected by the
    singularity floor and redrawn.
    """

    z_a: np.ndarray
    z_b: np.ndarray
    injected: np.ndarray
    resampled: int = 0

    @classmethod
    def concat(cls, batches: List["TwoLookBatch"]) -> "TwoLookBatch":
        return cls(
            z_a=np.concatenate([b.z_a for b in batches]),
            z_b=np.concatenate([b.z_b for b in batches]),
            injected=np.concatenate([b.injected for b in batches]),
            resampled=sum(b.resampled for b in batches),
        )


def compute_precoder(
    channels: MisoChannels, jam_budget: float, xj_power: float
) -> Precoder:
    """Precoder whose injected signal coincides at both receivers.

    ``p1 = (h_b2 - h_a2) / (h_a1 - h_b1) * p2`` forces the coincidence;
    ``p2`` is chosen real positive and scaled so the transmit power
    ``(|p1|^2 + |p2|^2) * xj_power`` meets ``jam_budget`` with equality
    (the injected power, and hence the leakage, is monotone in the budget,
    so the attacker always spends all of it).
    """
    if not (math.isfinite(jam_budget) and jam_budget >= 0.0):
        raise ParameterError(f"jam_budget must be >= 0, got {jam_budget!r}")
    if not (math.isfinite(xj_power) and xj_power > 0.0):
        raise ParameterError(f"xj_power must be > 0, got {xj_power!r}")
    h_a1, h_a2 = channels.h_a
    h_b1, h_b2 = channels.h_b
    denom = h_a1 - h_b1
    if abs(denom) < _coincidence_floor(h_a1, h_b1):
        raise NearSingularChannels(
            f"|h_a1 - h_b1| = {abs(denom)} is below the stability floor"
        )
    ratio = (h_b2 - h_a2) / denom
    p2 = math.sqrt(jam_budget / xj_power / (1.0 + abs(ratio) ** 2))
    return Precoder(p1=ratio * p2, p2=complex(p2))


def injected_signal(
    channels: MisoChannels, precoder: Precoder, xj: complex
) -> Tuple[complex, complex]:
    """Injected values received at each party: (h_a . p * xj, h_b . p * xj)."""
    at_alice = (channels.h_a[0] * precoder.p1 + channels.h_a[1] * precoder.p2) * xj
    at_bob = (channels.h_b[0] * precoder.p1 + channels.h_b[1] * precoder.p2) * xj
    return at_alice, at_bob


def simulate_two_look(params: SystemParams, n_trials: int, seed: RngSeed) -> TwoLookBatch:
    """Monte Carlo trials of both parties' observations under injection.

    Per trial: a reciprocal channel gain H ~ CN(0, legit_channel_var), the
    attacker's four link gains each CN(0, jam_channel_var / 2), unit-variance
    receiver noise, a deterministic pilot at full power, and a constant
    unit-modulus attack symbol steered through the coincidence precoder. The
    injected value is identical in both observations by construction.

    The coincidence beamformer has a channel-independent effective gain of
    variance jam_channel_var / 4 per unit transmit power (forcing the same
    value at both receivers costs the array gain twice over), so the injected
    amplitude is normalized to realize the nominal attack model
    CN(0, jam_channel_var * jam_power_budget).
    """
    if n_trials < 1:
        raise ParameterError(f"n_trials must be >= 1, got {n_trials}")
    rng = seed.generator()
    entry_var = params.jam_channel_var / 2.0

    h = _complex_normal(rng, params.legit_channel_var, n_trials)
    h_a1 = _complex_normal(rng, entry_var, n_trials)
    h_a2 = _complex_normal(rng, entry_var, n_trials)
    h_b1 = _complex_normal(rng, entry_var, n_trials)
    h_b2 = _complex_normal(rng, entry_var, n_trials)

    resampled = 0
    floor = _SINGULARITY_FLOOR_SCALE * (np.abs(h_a1) + np.abs(h_b1) + 1.0)
    bad = np.flatnonzero(np.abs(h_a1 - h_b1) < floor)
    while bad.size:
        resampled += bad.size
        for arr in (h_a1, h_a2, h_b1, h_b2):
            arr[bad] = _complex_normal(rng, entry_var, bad.size)
        floor_bad = _SINGULARITY_FLOOR_SCALE * (np.abs(h_a1[bad]) + np.abs(h_b1[bad]) + 1.0)
        bad = bad[np.abs(h_a1[bad] - h_b1[bad]) < floor_bad]

    ratio = (h_b2 - h_a2) / (h_a1 - h_b1)
    unit_gain = (h_a1 * ratio + h_a2) / np.sqrt(1.0 + np.abs(ratio) ** 2)
    xj = 1.0 + 0.0j
    injected = 2.0 * math.sqrt(params.jam_power_budget) * unit_gain * xj

    pilot = math.sqrt(params.max_pilot_power)
    noise_a = _complex_normal(rng, 1.0, n_trials)
    noise_b = _complex_normal(rng, 1.0, n_trials)
    z_a = pilot * h + injected + noise_a
    z_b = pilot * h + injected + noise_b
    return TwoLookBatch(z_a=z_a, z_b=z_b, injected=injected, resampled=resampled)


def mi_from_two_look(batch: TwoLookBatch) -> float:
    """Gaussian MI estimate, in bits, between the injected value and both looks."""
    rows = np.vstack(
        [
            batch.injected.real,
            batch.injected.imag,
            batch.z_a.real,
            batch.z_a.imag,
            batch.z_b.real,
            batch.z_b.imag,
        ]
    )
    return gaussian_mi_from_cov(np.cov(rows), target_dim=2)


def leakage_bound(params: SystemParams, n_trials: int, seed: RngSeed) -> float:
    """Estimated upper bound, in bits, on the key material the attacker controls.

    Estimates the joint covariance of the injected value and both observations
    over stacked real coordinates and evaluates the jointly-Gaussian mutual
    information closed form.
    """
    if n_trials < 10_000:
        raise ParameterError(
            f"n_trials must be >= 10000 for covariance estimation, got {n_trials}"
        )
    return mi_from_two_look(simulate_two_look(params, n_trials, seed))
