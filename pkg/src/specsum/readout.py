"""Finite-resource measurement of the collective signal.

This is the read-out unit made explicit: sample the collective signal for a
finite duration, corrupt it with additive white complex Gaussian noise (the
proxy for thermodynamic noise) and optional uniform ADC quantization, project
onto the single target frequency bin (Goertzel-style correlation against one
complex exponential), threshold the magnitude, and decide YES/NO. Every step
is deterministic given the config seed; noise is drawn from Philox streams
(see ``prng``), so results are bit-reproducible across platforms and across
serial/parallel execution.

Cost model notes:

* The single-bin projection of an N-sample signal is (1/N) sum_k x_k e^{-i w k}.
  When the signal is noiseless, the duration covers an integer number of base
  periods 1/f0, and no line aliases onto the target bin (guaranteed by the
  sampling criterion sample_rate > bandwidth), the projection equals the exact
  line amplitude N(s)/2^n.
* With per-sample noise sigma, the projected noise has standard deviation
  sigma/sqrt(N): averaging buys SNR linearly in sample count, which is what
  makes the exponentially small line amplitudes exponentially expensive.

Durations snap to whole base periods by default, preserving bin orthogonality;
pass ``snap_to_period=False`` to expose spectral leakage from partial periods.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .core import COUNTING_MAX_N, SspInstance
from .errors import InstanceFormatError, SamplingRateError
from .prng import DEFAULT_SEED, make_rng
from .spectrum import CollectiveSignalModel, bandwidth, eval_signal, exact_amplitude

# Sampling-rate safety factor applied by the config builder.
DEFAULT_RATE_MARGIN = 2.0
# ADC full-scale range: |g| <= 1 plus noise headroom.
ADC_RANGE = 2.0

HALF_MIN_LINE = "half_min_line"


@dataclass(frozen=True)
class SimConfig:
    """Measurement resources: rate, length, noise level, quantization, seed."""

    sample_rate: float
    num_samples: int
    noise_sigma: float = 0.0
    adc_bits: int | None = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not (self.sample_rate > 0):
            raise InstanceFormatError(f"sample_rate must be > 0, got {self.sample_rate}")
        if int(self.num_samples) != self.num_samples or self.num_samples < 1:
            raise InstanceFormatError(f"num_samples must be a positive integer, got {self.num_samples}")
        object.__setattr__(self, "num_samples", int(self.num_samples))
        if self.noise_sigma < 0:
            raise InstanceFormatError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.adc_bits is not None and not (2 <= int(self.adc_bits) <= 32):
            raise InstanceFormatError(f"adc_bits must be in [2, 32], got {self.adc_bits}")

    @property
    def duration(self) -> float:
        return self.num_samples / self.sample_rate


def samples_per_period(instance: SspInstance, f0: float, rate_margin: float = DEFAULT_RATE_MARGIN) -> int:
    """Samples covering one base period 1/f0 at the builder's default rate."""
    return int(np.ceil(rate_margin * instance.total))


def make_config(
    instance: SspInstance,
    f0: float = 1.0,
    *,
    sample_rate: float | None = None,
    duration: float | None = None,
    num_samples: int | None = None,
    periods: int | None = None,
    noise_sigma: float = 0.0,
    adc_bits: int | None = None,
    seed: int = DEFAULT_SEED,
    rate_margin: float = DEFAULT_RATE_MARGIN,
    snap_to_period: bool = True,
) -> SimConfig:
    """Build a SimConfig with the sampling criterion enforced.

    Defaults: sample rate ``rate_margin`` times the signal bandwidth (margin
    2x), and a duration of one base period. ``duration`` is rounded to a whole
    number of base periods unless ``snap_to_period=False``; ``num_samples``
    and ``periods`` are taken literally.
    """
    if not (f0 > 0):
        raise InstanceFormatError(f"f0 must be > 0, got {f0}")
    bw = bandwidth(instance, f0)
    if sample_rate is None:
        # Integer number of samples per base period by construction.
        sample_rate = samples_per_period(instance, f0, rate_margin) * f0
    if sample_rate <= bw:
        raise SamplingRateError(
            f"sample_rate {sample_rate} Hz does not exceed the signal bandwidth; "
            f"rate > {bw} Hz required",
            required_rate_hz=bw,
        )
    given = sum(x is not None for x in (duration, num_samples, periods))
    if given > 1:
        raise InstanceFormatError("give at most one of duration, num_samples, periods")
    if num_samples is not None:
        n_samp = int(num_samples)
    elif periods is not None:
        if periods < 1:
            raise InstanceFormatError(f"periods must be >= 1, got {periods}")
        n_samp = int(round(periods * sample_rate / f0))
    else:
        dur = 1.0 / f0 if duration is None else duration
        if snap_to_period:
            m = max(1, int(round(dur * f0)))
            n_samp = int(round(m * sample_rate / f0))
        else:
            n_samp = max(1, int(round(dur * sample_rate)))
    return SimConfig(
        sample_rate=float(sample_rate),
        num_samples=n_samp,
        noise_sigma=float(noise_sigma),
        adc_bits=adc_bits,
        seed=int(seed),
    )


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples taken at t_k = k / sample_rate, k = 0..N-1."""

    samples: np.ndarray
    sample_rate: float

    @property
    def num_samples(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class ReadoutResult:
    """Outcome of one single-bin readout: estimate, threshold, decision."""

    target_frequency: float
    amplitude_estimate: complex
    magnitude: float
    threshold: float
    decision: bool
    snr_estimate: float | None = None


@lru_cache(maxsize=4)
def _noiseless_samples(values: tuple[int, ...], f0: float, sample_rate: float, num_samples: int) -> np.ndarray:
    """Cached noiseless sample vector; read-only so cached state stays pure."""
    model = CollectiveSignalModel(SspInstance(values=values, target=0), f0=f0)
    t = np.arange(num_samples, dtype=np.float64) / sample_rate
    g = eval_signal(model, t)
    g.flags.writeable = False
    return g


@lru_cache(maxsize=4)
def _projection_phasor(f_target: float, sample_rate: float, num_samples: int) -> np.ndarray:
    k = np.arange(num_samples, dtype=np.float64)
    ph = np.exp((-2j * np.pi * f_target / sample_rate) * k)
    ph.flags.writeable = False
    return ph


def _quantize(x: np.ndarray, bits: int) -> np.ndarray:
    """Uniform quantization of real/imag parts over [-ADC_RANGE, ADC_RANGE]."""
    levels = (1 << bits) - 1
    step = (2.0 * ADC_RANGE) / levels
    re = np.clip(np.round((x.real + ADC_RANGE) / step), 0, levels) * step - ADC_RANGE
    im = np.clip(np.round((x.imag + ADC_RANGE) / step), 0, levels) * step - ADC_RANGE
    return re + 1j * im


def synthesize(model: CollectiveSignalModel, config: SimConfig) -> SampledSignal:
    """Sample the collective signal with noise and optional quantization.

    samples[k] = g(k / sample_rate) + noise_sigma * zeta_k, where zeta_k are
    iid standard complex Gaussians (E|zeta|^2 = 1) drawn from the Philox
    stream keyed by ``config.seed``; quantization is applied after noise.
    Raises SamplingRateError when the rate does not exceed the bandwidth.
    """
    bw = bandwidth(model.instance, model.f0)
    if config.sample_rate <= bw:
        raise SamplingRateError(
            f"sample_rate {config.sample_rate} Hz does not exceed the signal bandwidth; "
            f"rate > {bw} Hz required",
            required_rate_hz=bw,
        )
    clean = _noiseless_samples(
        model.instance.values, model.f0, config.sample_rate, config.num_samples
    )
    samples = clean
    if config.noise_sigma > 0:
        rng = make_rng(config.seed)
        z = rng.standard_normal((config.num_samples, 2))
        samples = clean + (config.noise_sigma / np.sqrt(2.0)) * (z[:, 0] + 1j * z[:, 1])
    if config.adc_bits is not None:
        samples = _quantize(samples, int(config.adc_bits))
    if samples is clean:
        samples = clean.view()  # still read-only; callers treat signals as values
    return SampledSignal(samples=samples, sample_rate=config.sample_rate)


def single_bin_readout(signal: SampledSignal, f_target: float) -> complex:
    """Project the signal onto one frequency bin.

    Returns (1/N) sum_k samples[k] exp(-i 2 pi f_target k / sample_rate); with
    a noiseless signal, whole-period duration, and no aliasing this equals the
    exact line amplitude at f_target.
    """
    n = signal.num_samples
    if n == 0:
        raise InstanceFormatError("signal has no samples")
    ph = _projection_phasor(float(f_target), float(signal.sample_rate), n)
    return complex(np.dot(signal.samples, ph) / n)


def resolve_threshold(policy, n: int) -> float:
    """Map a threshold policy to a number: 'half_min_line' is 2^-(n+1), half
    the smallest possible nonzero line amplitude; a float is used directly."""
    if policy == HALF_MIN_LINE:
        return 2.0 ** -(n + 1)
    if isinstance(policy, (int, float)) and not isinstance(policy, bool):
        thr = float(policy)
        if thr < 0:
            raise InstanceFormatError(f"absolute threshold must be >= 0, got {thr}")
        return thr
    raise InstanceFormatError(f"unknown threshold policy {policy!r}")


def decide_readout(
    instance: SspInstance,
    f0: float = 1.0,
    config: SimConfig | None = None,
    threshold_policy=HALF_MIN_LINE,
) -> ReadoutResult:
    """Full readout decision: synthesize, project at target*f0, threshold.

    Targets outside [0, total] return NO immediately without simulation.
    """
    threshold = resolve_threshold(threshold_policy, instance.n)
    f_target = instance.target * f0
    if instance.target > instance.total:
        return ReadoutResult(
            target_frequency=f_target,
            amplitude_estimate=0j,
            magnitude=0.0,
            threshold=threshold,
            decision=False,
            snr_estimate=None,
        )
    if config is None:
        config = make_config(instance, f0)
    model = CollectiveSignalModel(instance, f0)
    signal = synthesize(model, config)
    est = single_bin_readout(signal, f_target)
    mag = abs(est)
    snr = None
    if config.noise_sigma > 0 and instance.n <= COUNTING_MAX_N:
        snr = readout_snr(instance, config, instance.target)
    return ReadoutResult(
        target_frequency=f_target,
        amplitude_estimate=est,
        magnitude=mag,
        threshold=threshold,
        decision=bool(mag >= threshold),
        snr_estimate=snr,
    )


def readout_snr(instance: SspInstance, config: SimConfig, s: int) -> float:
    """Predicted post-projection power SNR: (N(s)/2^n)^2 * num_samples / sigma^2.

    The projected noise floor is noise_sigma / sqrt(num_samples), so this ratio
    is what determines detection reliability.
    """
    if not (config.noise_sigma > 0):
        raise InstanceFormatError("readout_snr requires noise_sigma > 0")
    amp = exact_amplitude(instance, s)
    return (amp * amp) * config.num_samples / (config.noise_sigma**2)


READOUT_CSV_HEADER = "n,target,magnitude,threshold,decision,snr_estimate,seed"


def readout_to_csv(instance: SspInstance, config: SimConfig, result: ReadoutResult) -> str:
    """One-row CSV export of a readout decision."""
    snr = "" if result.snr_estimate is None else repr(result.snr_estimate)
    row = (
        f"{instance.n},{instance.target},{result.magnitude!r},{result.threshold!r},"
        f"{'YES' if result.decision else 'NO'},{snr},{config.seed}"
    )
    return READOUT_CSV_HEADER + "\n" + row + "\n"
