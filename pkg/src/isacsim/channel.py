"""mmWave sparse geometric channels, LTE flat fading, SINR and rate laws.

The mmWave channel for an agent is assembled from L resolvable paths,
    H = sqrt(M/L) * sum_l alpha_l * a(phi_l),
with the first angle of departure anchored at the agent's geometric angle so
beam selection against the codebook is meaningful; remaining AoDs are uniform
on [-pi/2, pi/2].  Steering vectors are the usual unit-norm ULA responses.
Noise power is expressed in the same normalized linear units as transmit
power (milliwatts by convention elsewhere in the package).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class Rat(str, Enum):
    MMWAVE = "mmwave"
    LTE = "lte"


@dataclass(frozen=True)
class ChannelConfig:
    n_antennas: int = 16
    codebook_size: int = 16
    n_paths: int = 3
    frame_length: int = 140
    pilot_symbols: int = 14
    bandwidth: float = 1e7
    noise_power: float = 1.0
    pathloss_exponent: float = 2.0
    pathloss_ref: float = 2.0
    ref_distance: float = 120.0

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError("n_antennas must be >= 1")
        if self.codebook_size < 1:
            raise ValueError("codebook_size must be >= 1")
        if self.n_paths < 1:
            raise ValueError("n_paths must be >= 1")
        if not 0 <= self.pilot_symbols < self.frame_length:
            raise ValueError("need 0 <= pilot_symbols < frame_length")
        for name in ("bandwidth", "noise_power", "pathloss_ref",
                     "ref_distance"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class MmWaveChannel:
    gains: np.ndarray      # complex path gains, shape (L,)
    aods: np.ndarray       # angles of departure, shape (L,)
    n_antennas: int
    vector: np.ndarray     # assembled channel, shape (M,)


@dataclass(frozen=True)
class LteChannel:
    gain: complex
    variance: float        # sigma_h^2 from path loss


@dataclass(frozen=True)
class LinkBudget:
    """Per-agent link record for one slot."""

    sinr: float
    rate: float
    rat: Rat
    bandwidth: float
    frame_length: int
    pilot_count: int
    noise_power: float

    def __post_init__(self):
        if self.sinr < 0:
            raise ValueError("sinr must be non-negative")
        if not 0 <= self.pilot_count < self.frame_length:
            raise ValueError("need 0 <= pilot_count < frame_length")


def steering_vector(phi: float, n_antennas: int, wavelength: float,
                    spacing: float) -> np.ndarray:
    """Unit-norm ULA steering vector a(phi) of length ``n_antennas``."""
    if n_antennas < 1:
        raise ValueError("n_antennas must be >= 1")
    m = np.arange(n_antennas)
    phase = 2.0 * math.pi / wavelength * spacing * m * math.sin(phi)
    return np.exp(1j * phase) / math.sqrt(n_antennas)


def make_codebook(cfg: ChannelConfig, wavelength: float,
                  spacing: float) -> tuple[np.ndarray, np.ndarray]:
    """DFT-style beam codebook: angles uniform over [-pi/2, pi/2].

    Returns (angles, beams) with ``beams[b]`` the steering vector at
    ``angles[b]``.
    """
    angles = np.linspace(-math.pi / 2, math.pi / 2, cfg.codebook_size)
    beams = np.stack([
        steering_vector(a, cfg.n_antennas, wavelength, spacing)
        for a in angles
    ])
    return angles, beams


def sample_mmwave_channel(psi_geom: float, cfg: ChannelConfig,
                          rng: np.random.Generator, wavelength: float,
                          spacing: float) -> MmWaveChannel:
    """Draw a sparse channel with the first path at the geometric angle."""
    n_paths = cfg.n_paths
    aods = np.empty(n_paths)
    aods[0] = psi_geom
    if n_paths > 1:
        aods[1:] = rng.uniform(-math.pi / 2, math.pi / 2, n_paths - 1)
    gains = (
        rng.standard_normal(n_paths) + 1j * rng.standard_normal(n_paths)
    ) / math.sqrt(2.0)
    vector = np.zeros(cfg.n_antennas, dtype=complex)
    for alpha, phi in zip(gains, aods):
        vector += alpha * steering_vector(
            phi, cfg.n_antennas, wavelength, spacing
        )
    vector *= math.sqrt(cfg.n_antennas / n_paths)
    return MmWaveChannel(
        gains=gains, aods=aods, n_antennas=cfg.n_antennas, vector=vector
    )


def mmwave_sinr(target: MmWaveChannel, beams, self_index: int,
                noise_power: float) -> float:
    """SINR of agent ``self_index`` given all active beamforming vectors.

    ``beams`` is the list of beam vectors currently transmitted (including
    the target's own); power scaling is carried inside the vectors.
    """
    if noise_power <= 0:
        raise ValueError("noise_power must be positive")
    h = target.vector
    signal = abs(np.vdot(h, beams[self_index])) ** 2
    interference = sum(
        abs(np.vdot(h, w)) ** 2
        for i, w in enumerate(beams) if i != self_index
    )
    return signal / (interference + noise_power)


def mmwave_rate(gamma: float, bandwidth: float, frame_length: int,
                pilot_symbols: int) -> float:
    """Achievable mmWave rate with pilot overhead (bits/s)."""
    if not 0 <= pilot_symbols < frame_length:
        raise ValueError("need 0 <= pilot_symbols < frame_length")
    overhead = 1.0 - pilot_symbols / frame_length
    return bandwidth * overhead * math.log2(1.0 + gamma)


def sample_lte_channel(distance: float, cfg: ChannelConfig,
                       rng: np.random.Generator) -> LteChannel:
    """Flat-fading LTE gain with distance-based path-loss variance."""
    if distance <= 0:
        raise ValueError("distance must be positive")
    variance = cfg.pathloss_ref * (
        distance / cfg.ref_distance
    ) ** (-cfg.pathloss_exponent)
    gain = math.sqrt(variance / 2.0) * (
        rng.standard_normal() + 1j * rng.standard_normal()
    )
    return LteChannel(gain=gain, variance=variance)


def lte_sinr_rate(gain: complex, power: float, noise_power: float,
                  bandwidth: float) -> tuple[float, float]:
    """LTE SINR and achievable rate under orthogonal allocation."""
    if power < 0:
        raise ValueError("power must be non-negative")
    gamma = power * abs(gain) ** 2 / noise_power
    return gamma, bandwidth * math.log2(1.0 + gamma)


def combined_rate(x: int, rate_mm: float, rate_lte: float) -> float:
    """RAT-combined rate: x selects mmWave (1) or LTE (0)."""
    if x not in (0, 1):
        raise ValueError(f"RAT indicator must be 0 or 1, got {x}")
    return x * rate_mm + (1 - x) * rate_lte
