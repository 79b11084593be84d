"""Idealized frequency-domain model of the analog subset-sum machine.

The machine superposes n oscillators so that the collective signal

    g(t) = prod_j (1 + exp(i 2 pi a_j f0 t)) / 2

expands to sum_s N(s)/2^n * exp(i 2 pi s f0 t): one spectral line per
achievable subset sum s, at frequency s*f0, with amplitude N(s)/2^n where
N(s) is the number of subsets summing to s. Deciding an instance is asking
whether the line at target*f0 exists.

The complex-exponential product is chosen over a real-cosine product because
real mixing also creates difference frequencies, which would clutter the
spectrum; this form is the cleanest idealization of the device, so resource
bounds measured against it are conservative. The 1/2 per factor keeps
|g| <= 1 and makes the exponential amplitude decay explicit.

All quantities here are exact (integer multiplicities, closed-form
amplitudes); finite-resource measurement lives in ``readout``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    SspInstance,
    SumMultiplicities,
    achieved_sums,
    count_dp,
    enumerate_subset_sums,
)
from .errors import InstanceFormatError


@dataclass(frozen=True)
class CollectiveSignalModel:
    """The collective time-domain signal of one instance at base frequency f0.

    Periodic with period 1/f0; line frequencies are s*f0 for achievable s.
    """

    instance: SspInstance
    f0: float = 1.0

    def __post_init__(self):
        if not (self.f0 > 0):
            raise InstanceFormatError(f"f0 must be > 0, got {self.f0}")


@dataclass(frozen=True)
class SpectralLine:
    sum: int
    frequency_hz: float
    multiplicity: int
    amplitude: float


@dataclass(frozen=True)
class ExactSpectrum:
    """The full line spectrum: one line per achievable sum, stored exactly."""

    lines: tuple[SpectralLine, ...]
    n: int
    f0: float

    def amplitude(self, s: int) -> float:
        for line in self.lines:
            if line.sum == s:
                return line.amplitude
        return 0.0

    @property
    def power_sum(self) -> float:
        """Total mean signal power, sum of squared line amplitudes (Parseval)."""
        return float(sum(line.amplitude**2 for line in self.lines))

    @property
    def num_lines(self) -> int:
        return len(self.lines)


def exact_spectrum(instance: SspInstance, f0: float = 1.0) -> ExactSpectrum:
    """Exact line spectrum via full subset enumeration (n <= 24)."""
    if not (f0 > 0):
        raise InstanceFormatError(f"f0 must be > 0, got {f0}")
    mult = enumerate_subset_sums(instance)
    scale = 2.0**-instance.n
    lines = tuple(
        SpectralLine(sum=s, frequency_hz=s * f0, multiplicity=c, amplitude=c * scale)
        for s, c in sorted(mult.counts.items())
    )
    return ExactSpectrum(lines=lines, n=instance.n, f0=f0)


def spectrum_from_multiplicities(mult: SumMultiplicities, f0: float = 1.0) -> ExactSpectrum:
    scale = 2.0**-mult.n
    lines = tuple(
        SpectralLine(sum=s, frequency_hz=s * f0, multiplicity=c, amplitude=c * scale)
        for s, c in sorted(mult.counts.items())
    )
    return ExactSpectrum(lines=lines, n=mult.n, f0=f0)


def exact_amplitude(instance: SspInstance, s: int) -> float:
    """Line amplitude N(s)/2^n; 0.0 for unachievable or out-of-range s."""
    return count_dp(instance.values, s) * 2.0**-instance.n


def eval_signal(model: CollectiveSignalModel, t):
    """Evaluate g(t) = prod_j (1 + exp(i 2 pi a_j f0 t)) / 2.

    ``t`` may be a scalar or array of seconds; returns complex of the same
    shape. g(0) = 1 and |g(t)| <= 1 everywhere.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    g = np.ones(t_arr.shape, dtype=np.complex128)
    for a in model.instance.values:
        g *= 0.5 * (1.0 + np.exp((2j * np.pi * model.f0 * a) * t_arr))
    if np.ndim(t) == 0:
        return complex(g)
    return g


def bandwidth(instance: SspInstance, f0: float = 1.0) -> float:
    """Highest line frequency, f0 * sum(values)."""
    if not (f0 > 0):
        raise InstanceFormatError(f"f0 must be > 0, got {f0}")
    return f0 * instance.total


def min_gap(instance: SspInstance, f0: float = 1.0) -> float:
    """Smallest spacing between distinct spectral lines, in Hz.

    Sums are integers, so the result is always >= f0. Uses the achievable-sum
    bitmask, O(total) memory; intended for desk-scale totals.
    """
    if not (f0 > 0):
        raise InstanceFormatError(f"f0 must be > 0, got {f0}")
    achieved = achieved_sums(instance.values)
    if len(achieved) < 2:
        # Single-line spectra cannot occur for n >= 1 (0 and total differ).
        return float("inf")
    return f0 * int(np.diff(achieved).min())


def energy_fraction(instance: SspInstance, s: int) -> float:
    """The target line's share of total mean power: N(s)^2 / sum N(sigma)^2."""
    mult = enumerate_subset_sums(instance)
    num = mult.count(s) ** 2
    if num == 0:
        return 0.0
    den = sum(c * c for c in mult.counts.values())
    return num / den


SPECTRUM_CSV_HEADER = "sum,frequency_hz,multiplicity,amplitude"


def spectrum_to_csv(spectrum: ExactSpectrum) -> str:
    """Spectrum export, one row per line, sorted by sum, full float precision."""
    out = [SPECTRUM_CSV_HEADER]
    for line in sorted(spectrum.lines, key=lambda l: l.sum):
        out.append(f"{line.sum},{line.frequency_hz!r},{line.multiplicity},{line.amplitude!r}")
    return "\n".join(out) + "\n"
