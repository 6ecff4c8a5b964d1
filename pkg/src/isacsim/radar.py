"""FMCW radar measurement simulation and the matching estimators.

The forward model maps true geometry into signal-space quantities (beat
frequency, Doppler shift, inter-element phase shift); the estimators invert
them.  Measurement noise is injected in signal space so the estimator
nonlinearities (asin) are exercised.  Radial velocity is positive for a
receding agent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metrics import LIGHT_SPEED


class AngleAliasingError(ValueError):
    """Raised when a phase shift maps outside the asin domain."""


@dataclass(frozen=True)
class RadarConfig:
    chirp_duration: float = 1e-5
    sweep_bandwidth: float = 1.5e8
    wavelength: float = 2e-3
    pulse_repetition: float = 5e-5
    element_spacing: float = 1e-3
    beat_noise_std: float = 0.0
    doppler_noise_std: float = 0.0
    phase_noise_std: float = 0.0

    def __post_init__(self):
        for name in (
            "chirp_duration", "sweep_bandwidth", "wavelength",
            "pulse_repetition", "element_spacing",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("beat_noise_std", "doppler_noise_std", "phase_noise_std"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.element_spacing > self.wavelength / 2 + 1e-15:
            raise ValueError("element_spacing must not exceed wavelength/2")


@dataclass(frozen=True)
class RadarObservation:
    """Estimated (distance, radial velocity, angle) triplet for one agent."""

    distance: float
    radial_velocity: float
    angle: float

    def __post_init__(self):
        if self.distance < 0:
            raise ValueError("distance must be non-negative")
        if not (-math.pi / 2 <= self.angle <= math.pi / 2):
            raise ValueError("angle must lie in [-pi/2, pi/2]")


def beat_frequency_from_range(distance: float, cfg: RadarConfig) -> float:
    """Beat frequency (Hz) produced by a reflector at ``distance`` meters."""
    if distance < 0:
        raise ValueError("distance must be non-negative")
    return (
        2.0 * cfg.sweep_bandwidth * distance
        / (LIGHT_SPEED * cfg.chirp_duration)
    )


def estimate_range(f_beat: float, cfg: RadarConfig) -> float:
    """Range estimate d = c*T*f / (2B) from a beat frequency."""
    if f_beat < 0:
        raise ValueError("beat frequency must be non-negative")
    return (
        LIGHT_SPEED * cfg.chirp_duration * f_beat
        / (2.0 * cfg.sweep_bandwidth)
    )


def doppler_from_velocity(velocity: float, cfg: RadarConfig) -> float:
    """Doppler shift (rad) across successive chirps for a radial velocity."""
    return 4.0 * math.pi * cfg.pulse_repetition * velocity / cfg.wavelength


def estimate_velocity(omega_doppler: float, cfg: RadarConfig) -> float:
    """Radial velocity v = lambda*omega / (4*pi*T_s)."""
    return (
        cfg.wavelength * omega_doppler
        / (4.0 * math.pi * cfg.pulse_repetition)
    )


def phase_from_angle(angle: float, cfg: RadarConfig) -> float:
    """Inter-element phase shift (rad) for an arrival angle."""
    return (
        2.0 * math.pi * cfg.element_spacing * math.sin(angle)
        / cfg.wavelength
    )


def estimate_angle(omega_phase: float, cfg: RadarConfig) -> float:
    """Arrival angle psi = asin(lambda*omega / (2*pi*d)).

    Raises :class:`AngleAliasingError` when the argument magnitude exceeds 1,
    signalling spatial aliasing rather than clamping silently.
    """
    arg = (
        cfg.wavelength * omega_phase
        / (2.0 * math.pi * cfg.element_spacing)
    )
    if abs(arg) > 1.0:
        raise AngleAliasingError(
            f"asin argument {arg} outside [-1, 1]: phase shift aliases"
        )
    return math.asin(arg)


def true_geometry(position, velocity, uav_position):
    """True (distance, radial velocity, angle) for an agent.

    ``position``/``velocity`` are 2-D ground vectors, ``uav_position`` is
    (x, y, altitude).  The angle is measured against the boresight of a
    horizontal linear array aligned with the x axis: sin(psi) = dx / d.
    """
    dx = position[0] - uav_position[0]
    dy = position[1] - uav_position[1]
    alt = uav_position[2]
    distance = math.sqrt(dx * dx + dy * dy + alt * alt)
    radial = (velocity[0] * dx + velocity[1] * dy) / distance
    angle = math.asin(dx / distance)
    return distance, radial, angle


def observe(agent, uav_position, cfg: RadarConfig,
            noise_stream: np.random.Generator) -> RadarObservation:
    """Simulate one radar sweep for ``agent`` and run the estimators.

    With all noise standard deviations zero the round trip is exact up to
    floating-point error.
    """
    d_true, v_true, psi_true = true_geometry(
        agent.position, agent.velocity, uav_position
    )
    f_beat = beat_frequency_from_range(d_true, cfg)
    omega_dop = doppler_from_velocity(v_true, cfg)
    omega_phase = phase_from_angle(psi_true, cfg)
    if cfg.beat_noise_std > 0:
        f_beat += noise_stream.normal(0.0, cfg.beat_noise_std)
    if cfg.doppler_noise_std > 0:
        omega_dop += noise_stream.normal(0.0, cfg.doppler_noise_std)
    if cfg.phase_noise_std > 0:
        omega_phase += noise_stream.normal(0.0, cfg.phase_noise_std)
    # noise can only push the beat frequency below zero for implausibly
    # close targets; clamp to keep the distance invariant
    f_beat = max(f_beat, 0.0)
    return RadarObservation(
        distance=estimate_range(f_beat, cfg),
        radial_velocity=estimate_velocity(omega_dop, cfg),
        angle=estimate_angle(omega_phase, cfg),
    )
