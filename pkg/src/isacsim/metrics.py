"""Efficiency metrics: energy efficiency, perception efficiency, and the
range/velocity Cramer-Rao bounds that drive them.

The CRB expressions share a confluent-hypergeometric factor 1F1(1/2; 1; x)
evaluated at x = A_s / (2 sigma_2^2), where A_s is the main-path strength of
the perception channel and sigma_2^2 its variance.  Both bounds scale as
1/gamma (SINR) and shrink with the pilot count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LIGHT_SPEED = 299792458.0

# exp(x) overflows float64 shortly above this; callers needing larger
# arguments are out of scope for the (1/2; 1; x) case used here.
_HYP1F1_MAX_ARG = 700.0


def hyp1f1_half_one(x: float) -> float:
    """Confluent hypergeometric function 1F1(1/2; 1; x) for x >= 0.

    Power series with the term-ratio recurrence
        term_{k+1} = term_k * x * (k + 1/2) / (k + 1)^2,
    stopped once the relative term falls below 1e-16.  The result is >= 1
    for all x >= 0 since every series term is non-negative.
    """
    if x < 0.0:
        raise ValueError(f"argument must be non-negative, got {x}")
    if x > _HYP1F1_MAX_ARG:
        raise OverflowError(
            f"argument {x} exceeds overflow guard {_HYP1F1_MAX_ARG}"
        )
    total = 1.0
    term = 1.0
    k = 0
    while True:
        term *= x * (k + 0.5) / ((k + 1.0) * (k + 1.0))
        total += term
        k += 1
        if term < 1e-16 * total:
            return total


@dataclass(frozen=True)
class SensingParams:
    """Perception-channel and waveform constants entering the CRBs.

    ``rms_bandwidth`` defaults to sqrt(12) * bandwidth and, when given
    explicitly, is checked against that relation.
    """

    wavelength: float = 2e-3
    rcs: float = 100.0
    rice_factor: float = 3.0
    perception_var: float = 1.0
    bandwidth: float = 1e7
    rms_bandwidth: float | None = None
    symbol_interval: float = 5e-5
    pilot_symbols: int = 14
    kappa: float = 1e-4
    light_speed: float = LIGHT_SPEED

    def __post_init__(self):
        expected_rms = math.sqrt(12.0) * self.bandwidth
        if self.rms_bandwidth is None:
            object.__setattr__(self, "rms_bandwidth", expected_rms)
        elif abs(self.rms_bandwidth - expected_rms) > 1e-6 * expected_rms:
            raise ValueError(
                "rms_bandwidth must equal sqrt(12)*bandwidth "
                f"({expected_rms}), got {self.rms_bandwidth}"
            )
        for name in (
            "wavelength", "rcs", "rice_factor", "perception_var",
            "bandwidth", "symbol_interval", "kappa", "light_speed",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.pilot_symbols < 1:
            raise ValueError("pilot_symbols must be >= 1")

    @property
    def main_path_strength(self) -> float:
        """A_s, derived as rice_factor * perception_var."""
        return self.rice_factor * self.perception_var


def _crb_common_factor(sp: SensingParams) -> float:
    ratio = sp.main_path_strength / (2.0 * sp.perception_var)
    return math.exp(-ratio) * hyp1f1_half_one(ratio)


def crb_range(gamma: float, sp: SensingParams) -> float:
    """Range-estimation CRB (m^2) at linear SINR ``gamma``."""
    if gamma <= 0:
        raise ValueError(f"SINR must be positive, got {gamma}")
    num = sp.light_speed ** 2 * _crb_common_factor(sp)
    den = (
        8.0
        * math.sqrt(2.0 * sp.perception_var)
        * math.pi ** 1.5
        * gamma
        * sp.rcs
        * sp.rms_bandwidth ** 2
    )
    return num / den / sp.pilot_symbols


def crb_velocity(gamma: float, sp: SensingParams) -> float:
    """Velocity-estimation CRB ((m/s)^2) at linear SINR ``gamma``."""
    if gamma <= 0:
        raise ValueError(f"SINR must be positive, got {gamma}")
    num = 6.0 * sp.wavelength ** 2 * _crb_common_factor(sp)
    den = (
        32.0
        * math.sqrt(2.0 * sp.perception_var)
        * math.pi ** 1.5
        * gamma
        * sp.rcs
        * sp.symbol_interval ** 2
    )
    lp = sp.pilot_symbols
    return num / den / (lp * (lp + 1) * (2 * lp + 1))


def energy_efficiency(rates, powers, bandwidths) -> float:
    """Network sum-rate divided by total power-bandwidth consumption."""
    denom = sum(p * b for p, b in zip(powers, bandwidths, strict=True))
    if denom <= 0:
        raise ValueError("total power-bandwidth product must be positive")
    return sum(rates) / denom


def perception_efficiency(rates, sinrs, sp: SensingParams, kind: str) -> float:
    """Sum over agents of rate / (kappa + CRB_kind(sinr))."""
    if kind == "range":
        crb = crb_range
    elif kind == "velocity":
        crb = crb_velocity
    else:
        raise ValueError(f"kind must be 'range' or 'velocity', got {kind!r}")
    return sum(
        r / (sp.kappa + crb(g, sp)) for r, g in zip(rates, sinrs, strict=True)
    )


@dataclass(frozen=True)
class UtilityWeights:
    """Balance weights between energy and perception efficiency."""

    ee: float = 0.5
    pe: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.ee <= 1.0 and 0.0 <= self.pe <= 1.0):
            raise ValueError("weights must lie in [0, 1]")
        if abs(self.ee + self.pe - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")


def objective(ee: float, pe_d: float, pe_v: float, w: UtilityWeights) -> float:
    """Weighted utility: w.ee * EE + w.pe * (PE_d + PE_v)."""
    return w.ee * ee + w.pe * (pe_d + pe_v)
