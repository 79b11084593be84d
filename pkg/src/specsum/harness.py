"""Scaling sweeps that measure how readout cost grows with instance size.

The claims under test, and how each experiment operationalizes them:

* Energy sweep: the target line's share of total signal power. For the
  powers-of-two family all 2^n subset sums are distinct, every line has
  amplitude 2^-n, and the fraction is exactly 2^-n: the fitted slope of
  log2(fraction) against n is -1 analytically. Random families are averaged
  in the log domain (geometric mean) over seeded trials.
* Required-samples sweep: the smallest sample count at which thresholded
  single-bin readout reproduces the exact oracle's answer with a target
  reliability, under fixed per-sample noise. Found per instance by a
  doubling/halving bracket plus bisection over whole base periods, with
  per-trial noise streams shared across probe sizes (common random numbers)
  so the search is deterministic and monotone-friendly. Amplitudes halve per
  step of n in the powers-of-two family, so the prediction is slope 2
  (samples quadruple).
* Time sweep: with the hardware bandwidth capped at F_max, the base frequency
  must shrink as F_max / sum(values), and resolving the integer-spaced line
  grid requires at least one base period: duration = sum(values) / F_max,
  i.e. (2^n - 1)/F_max for powers-of-two (slope 1 in log2), but only linear
  in n for the all-ones contrast family.
* Accuracy collapse: decision accuracy against the exact oracle under a fixed
  sample budget and noise level, on 50/50 YES/NO trial sets, as n grows.
  Balanced sets need unachievable in-range targets; families whose subset
  sums cover [0, total] completely (all_ones, powers_of_two) admit none, so
  for those the harness doubles every value, which preserves the amplitude
  structure while making every odd target a true NO. The row sequence exposes
  the n beyond which accuracy falls toward the 0.5 guessing floor.

"Exponential" is operationalized throughout as: fitted slope of log2(metric)
vs n bounded away from 0 with r^2 > 0.9.

Reports are byte-reproducible: identical specs produce identical bytes, and
``jobs`` only parallelizes over grid points whose results are merged in
deterministic order. Wall-clock timings are kept on rows in memory but left
out of emitted reports by default, precisely so reruns stay byte-identical.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .core import SspInstance, decide_dp, gen_family
from .errors import ForceNoImpossibleError, SweepSpecError
from .prng import DEFAULT_SEED, derive_seed, make_rng
from .readout import (
    HALF_MIN_LINE,
    decide_readout,
    make_config,
    resolve_threshold,
    samples_per_period,
)
from .spectrum import bandwidth, energy_fraction, exact_amplitude, min_gap

EXPERIMENTS = ("energy", "required_samples", "time", "accuracy")

# Hard per-trial sample ceiling for the reliability search; hitting it yields
# a censored data point, which is itself evidence of the scaling claim.
DEFAULT_SAMPLE_CEILING = 2**26

# Bisection stops when the bracket is within this relative width (in whole
# periods). Finer resolution is statistically meaningless at a few hundred
# Monte Carlo trials per probe; pass resolution=None for an exact search.
DEFAULT_RELATIVE_RESOLUTION = 32


@dataclass(frozen=True)
class FamilySpec:
    """One instance family inside a sweep: generator kind plus parameters."""

    kind: str
    max_value: int | None = None
    solution_bias: str = "force_yes"
    max_value_pow2_n: bool = False  # per-point max_value = 2^n (hard-instance scaling)
    label: str | None = None

    @property
    def name(self) -> str:
        return self.label if self.label else self.kind

    def instance(self, n: int, seed: int) -> SspInstance:
        mv = (1 << n) if self.max_value_pow2_n else self.max_value
        return gen_family(self.kind, n, max_value=mv, seed=seed, solution_bias=self.solution_bias)


@dataclass(frozen=True)
class SweepSpec:
    """Full description of one experiment grid; everything a rerun needs."""

    experiment: str
    families: tuple[FamilySpec, ...]
    n_values: tuple[int, ...]
    trials_per_point: int = 1
    reliability_target: float = 0.95
    noise_sigma: float | None = None
    sample_budget: int | None = None
    max_frequency: float | None = None
    f0: float = 1.0
    seed: int = DEFAULT_SEED
    sample_ceiling: int = DEFAULT_SAMPLE_CEILING
    threshold_policy: str | float = HALF_MIN_LINE

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise SweepSpecError(f"unknown experiment {self.experiment!r}; expected one of {EXPERIMENTS}")
        if not self.families:
            raise SweepSpecError("at least one family is required")
        if not self.n_values:
            raise SweepSpecError("n_values must be nonempty")
        if list(self.n_values) != sorted(set(self.n_values)):
            raise SweepSpecError("n_values must be strictly increasing")
        if self.trials_per_point < 1:
            raise SweepSpecError("trials_per_point must be >= 1")
        if not (0.0 < self.reliability_target < 1.0):
            raise SweepSpecError("reliability_target must be in (0, 1)")
        if self.experiment == "required_samples" and not (self.noise_sigma and self.noise_sigma > 0):
            raise SweepSpecError("required_samples experiment needs fixed noise_sigma > 0")
        if self.experiment == "time" and not (self.max_frequency and self.max_frequency > 0):
            raise SweepSpecError("time experiment needs fixed max_frequency > 0")
        if self.experiment == "accuracy":
            if self.sample_budget is None or self.sample_budget < 1:
                raise SweepSpecError("accuracy experiment needs fixed sample_budget >= 1")
            if self.noise_sigma is None or self.noise_sigma < 0:
                raise SweepSpecError("accuracy experiment needs fixed noise_sigma >= 0")


@dataclass(frozen=True)
class SweepRow:
    """One grid-point observation. Unmeasured metrics stay None."""

    family: str
    n: int
    seed: int
    energy_fraction: float | None = None
    min_gap_hz: float | None = None
    bandwidth_hz: float | None = None
    required_samples: int | None = None
    required_duration_s: float | None = None
    decision_accuracy: float | None = None
    wall_time_s: float | None = None
    censored: bool = False


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


@dataclass(frozen=True)
class RequiredSamples:
    """Result of the reliability search; ``censored`` means the ceiling was
    hit before the reliability target, and ``num_samples`` is the ceiling."""

    num_samples: int
    censored: bool = False


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple[SweepRow, ...]
    fits: dict[str, FitResult]
    extras: dict = field(default_factory=dict)


def fit_loglinear(points) -> FitResult:
    """Ordinary least squares line through (x, y) points, with r^2.

    Rejects fewer than 3 points or an all-equal x column.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise SweepSpecError(f"fit needs at least 3 points, got {len(pts)}")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if len(set(xs)) < 2:
        raise SweepSpecError("fit needs at least two distinct x values")
    n = len(pts)
    xbar = math.fsum(xs) / n
    ybar = math.fsum(ys) / n
    sxx = math.fsum((x - xbar) ** 2 for x in xs)
    sxy = math.fsum((x - xbar) * (y - ybar) for x, y in pts)
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    ss_res = math.fsum((y - (slope * x + intercept)) ** 2 for x, y in pts)
    ss_tot = math.fsum((y - ybar) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(slope=slope, intercept=intercept, r_squared=min(1.0, max(0.0, r2)))


# ---------------------------------------------------------------------------
# required_samples: reliability search for one instance
# ---------------------------------------------------------------------------


def _probe_reliability(
    instance: SspInstance,
    f0: float,
    periods: int,
    noise_sigma: float,
    trials: int,
    seed: int,
    threshold_policy,
    truth: bool,
) -> float:
    """Fraction of seeded readout decisions matching the exact oracle.

    Trial t draws its noise from the stream (seed, t) regardless of the probe
    size, so an enlarged probe reuses the same noise prefix per trial (common
    random numbers).
    """
    matches = 0
    for t in range(trials):
        cfg = make_config(
            instance,
            f0,
            periods=periods,
            noise_sigma=noise_sigma,
            seed=derive_seed(seed, t),
        )
        res = decide_readout(instance, f0, cfg, threshold_policy)
        matches += res.decision == truth
    return matches / trials


def _predicted_periods(
    instance: SspInstance, f0: float, noise_sigma: float, reliability: float, threshold: float
) -> int:
    """Analytic warm start for the search, from the post-projection SNR model.

    The detection margin is |amplitude - threshold| for YES targets and the
    threshold itself for NO targets; the projected noise floor must sit a few
    standard deviations inside it. Only seeds the bracket; correctness comes
    from the search.
    """
    amp = exact_amplitude(instance, instance.target)
    margin = abs(amp - threshold) if amp > 0 else threshold
    if margin <= 0:
        margin = threshold if threshold > 0 else 1.0
    z2 = -math.log(max(1e-12, 1.0 - reliability))
    n_pred = z2 * noise_sigma**2 / margin**2
    spp = samples_per_period(instance, f0)
    return max(1, int(n_pred / spp))


def required_samples(
    instance: SspInstance,
    f0: float,
    noise_sigma: float,
    reliability: float,
    trials: int,
    *,
    seed: int = DEFAULT_SEED,
    sample_ceiling: int = DEFAULT_SAMPLE_CEILING,
    threshold_policy=HALF_MIN_LINE,
    resolution: int | None = DEFAULT_RELATIVE_RESOLUTION,
    min_samples: int | None = None,
) -> RequiredSamples:
    """Smallest sample count at which readout matches the oracle reliably.

    Monte Carlo bracketing over whole base periods: double (or halve) from an
    SNR-predicted start until the empirical match rate crosses
    ``reliability``, then bisect. ``resolution`` stops the bisection once the
    bracket is within 1/resolution relative width; None bisects to one
    period. Deterministic given ``seed``. If the search would exceed
    ``sample_ceiling`` samples per trial, the result is censored at the
    ceiling rather than fatal.

    ``min_samples`` floors the reported value; chaining results over
    increasing noise levels (see ``required_samples_curve``) uses it to keep
    reported requirements monotone in noise_sigma.
    """
    if not (noise_sigma > 0):
        raise SweepSpecError("required_samples needs noise_sigma > 0")
    if not (0.5 < reliability < 1.0):
        raise SweepSpecError("reliability must be in (0.5, 1)")
    truth = decide_dp(instance.values, instance.target)
    threshold = resolve_threshold(threshold_policy, instance.n)
    spp = samples_per_period(instance, f0)
    if spp > sample_ceiling:
        # Even one base period exceeds the per-trial budget: censored at the
        # minimum physically meaningful probe.
        return RequiredSamples(num_samples=spp, censored=True)
    ceiling_periods = sample_ceiling // spp

    def probe(m: int) -> float:
        return _probe_reliability(
            instance, f0, m, noise_sigma, trials, seed, threshold_policy, truth
        )

    floor_periods = 1
    if min_samples is not None:
        floor_periods = max(1, -(-int(min_samples) // spp))

    m = min(max(_predicted_periods(instance, f0, noise_sigma, reliability, threshold), floor_periods),
            ceiling_periods)
    p = probe(m)
    if p >= reliability:
        # Walk down for the failing edge of the bracket.
        lo, hi = None, m
        while hi > floor_periods:
            cand = max(floor_periods, hi // 2)
            if probe(cand) >= reliability:
                hi = cand
                if cand == floor_periods:
                    break
            else:
                lo = cand
                break
        if lo is None:
            return RequiredSamples(num_samples=hi * spp)
    else:
        # Walk up for the succeeding edge.
        lo = m
        while True:
            cand = lo * 2
            if cand > ceiling_periods:
                return RequiredSamples(num_samples=ceiling_periods * spp, censored=True)
            if probe(cand) >= reliability:
                hi = cand
                break
            lo = cand

    # Invariant: probe(lo) < reliability <= probe(hi).
    min_width = 1 if resolution is None else max(1, hi // resolution)
    while hi - lo > min_width:
        mid = (lo + hi) // 2
        if probe(mid) >= reliability:
            hi = mid
        else:
            lo = mid
    return RequiredSamples(num_samples=hi * spp)


def required_samples_curve(
    instance: SspInstance,
    f0: float,
    noise_sigmas,
    reliability: float,
    trials: int,
    *,
    seed: int = DEFAULT_SEED,
    sample_ceiling: int = DEFAULT_SAMPLE_CEILING,
    threshold_policy=HALF_MIN_LINE,
    resolution: int | None = DEFAULT_RELATIVE_RESOLUTION,
) -> list[RequiredSamples]:
    """required_samples over increasing noise levels, floored to be monotone:
    more noise never reports fewer required samples."""
    sigmas = list(noise_sigmas)
    if sorted(sigmas) != sigmas:
        raise SweepSpecError("noise_sigmas must be sorted increasing")
    out: list[RequiredSamples] = []
    floor = None
    for sigma in sigmas:
        res = required_samples(
            instance,
            f0,
            sigma,
            reliability,
            trials,
            seed=seed,
            sample_ceiling=sample_ceiling,
            threshold_policy=threshold_policy,
            resolution=resolution,
            min_samples=floor,
        )
        if floor is not None and not res.censored and res.num_samples < floor:
            res = RequiredSamples(num_samples=floor, censored=False)
        out.append(res)
        floor = res.num_samples
    return out


# ---------------------------------------------------------------------------
# Sweep experiments
# ---------------------------------------------------------------------------


def _row_seed(spec: SweepSpec, fam_idx: int, n: int) -> int:
    return derive_seed(spec.seed, fam_idx, n)


def _energy_row(spec: SweepSpec, fam_idx: int, n: int) -> SweepRow:
    fam = spec.families[fam_idx]
    row_seed = _row_seed(spec, fam_idx, n)
    t0 = time.perf_counter()
    fractions = []
    trials = spec.trials_per_point if fam.kind == "random" else 1
    inst = None
    for t in range(trials):
        inst = fam.instance(n, derive_seed(row_seed, t))
        fractions.append(energy_fraction(inst, inst.target))
    if any(f <= 0 for f in fractions):
        # force_yes makes this unreachable; guard against a zero sneaking
        # into the log-domain average.
        raise SweepSpecError("energy sweep requires achievable targets (use force_yes)")
    mean_log2 = math.fsum(math.log2(f) for f in fractions) / len(fractions)
    frac = 2.0**mean_log2
    return SweepRow(
        family=fam.name,
        n=n,
        seed=row_seed,
        energy_fraction=frac,
        min_gap_hz=min_gap(inst, spec.f0),
        bandwidth_hz=bandwidth(inst, spec.f0),
        wall_time_s=time.perf_counter() - t0,
    )


def _required_samples_row(spec: SweepSpec, fam_idx: int, n: int) -> SweepRow:
    fam = spec.families[fam_idx]
    row_seed = _row_seed(spec, fam_idx, n)
    t0 = time.perf_counter()
    inst = fam.instance(n, row_seed)
    res = required_samples(
        inst,
        spec.f0,
        spec.noise_sigma,
        spec.reliability_target,
        spec.trials_per_point,
        seed=derive_seed(row_seed, 1),
        sample_ceiling=spec.sample_ceiling,
        threshold_policy=spec.threshold_policy,
    )
    return SweepRow(
        family=fam.name,
        n=n,
        seed=row_seed,
        bandwidth_hz=bandwidth(inst, spec.f0),
        min_gap_hz=min_gap(inst, spec.f0) if n <= 24 else None,
        required_samples=res.num_samples,
        censored=res.censored,
        wall_time_s=time.perf_counter() - t0,
    )


def _time_row(spec: SweepSpec, fam_idx: int, n: int) -> SweepRow:
    fam = spec.families[fam_idx]
    row_seed = _row_seed(spec, fam_idx, n)
    t0 = time.perf_counter()
    inst = fam.instance(n, row_seed)
    total = inst.total
    # Bandwidth capped at F_max: the base frequency must shrink with the
    # spectrum width, and one base period is the minimum duration resolving
    # the integer-spaced line grid.
    f0 = spec.max_frequency / total
    return SweepRow(
        family=fam.name,
        n=n,
        seed=row_seed,
        bandwidth_hz=bandwidth(inst, f0),
        min_gap_hz=min_gap(inst, f0) if n <= 24 else None,
        required_duration_s=total / spec.max_frequency,
        wall_time_s=time.perf_counter() - t0,
    )


def _complete_family_values(kind: str, n: int) -> tuple[int, ...] | None:
    """Values for families whose subset sums cover [0, total] completely."""
    if kind == "all_ones":
        return (1,) * n
    if kind == "powers_of_two":
        return tuple(1 << j for j in range(n))
    return None


def _balanced_case(fam: FamilySpec, n: int, seed: int, want_yes: bool) -> SspInstance:
    """One YES or NO decision case for the accuracy experiment.

    Complete families admit no in-range NO target, so both halves use the
    value-doubled instance: even targets are achievable (YES), odd targets
    are not (NO). Amplitudes and multiplicities are unchanged by the
    doubling; only the frequency axis stretches.
    """
    base = _complete_family_values(fam.kind, n)
    if base is None:
        bias = "force_yes" if want_yes else "force_no"
        for attempt in range(64):
            try:
                return gen_family(
                    fam.kind,
                    n,
                    max_value=(1 << n) if fam.max_value_pow2_n else fam.max_value,
                    seed=derive_seed(seed, attempt),
                    solution_bias=bias,
                )
            except ForceNoImpossibleError:
                continue
        raise ForceNoImpossibleError(
            f"could not draw a NO case for family {fam.kind} at n={n} after 64 attempts"
        )
    doubled = tuple(2 * a for a in base)
    total = sum(base)
    rng = make_rng(seed)
    if want_yes:
        target = 2 * int(rng.integers(0, total, endpoint=True))
    else:
        target = 2 * int(rng.integers(0, total - 1, endpoint=True)) + 1
    return SspInstance(values=doubled, target=target)


def _accuracy_row(spec: SweepSpec, fam_idx: int, n: int) -> SweepRow:
    fam = spec.families[fam_idx]
    row_seed = _row_seed(spec, fam_idx, n)
    t0 = time.perf_counter()
    matches = 0
    ref = None
    for t in range(spec.trials_per_point):
        want_yes = t % 2 == 0
        inst = _balanced_case(fam, n, derive_seed(row_seed, t, 0), want_yes)
        ref = ref or inst
        spp = samples_per_period(inst, spec.f0)
        if spec.sample_budget >= spp:
            num_samples = (spec.sample_budget // spp) * spp  # whole periods
        else:
            num_samples = spec.sample_budget  # partial period: leakage included
        cfg = make_config(
            inst,
            spec.f0,
            num_samples=num_samples,
            noise_sigma=spec.noise_sigma,
            seed=derive_seed(row_seed, t, 1),
        )
        res = decide_readout(inst, spec.f0, cfg, spec.threshold_policy)
        truth = decide_dp(inst.values, inst.target)
        matches += res.decision == truth
    return SweepRow(
        family=fam.name,
        n=n,
        seed=row_seed,
        bandwidth_hz=bandwidth(ref, spec.f0),
        decision_accuracy=matches / spec.trials_per_point,
        wall_time_s=time.perf_counter() - t0,
    )


_ROW_FUNCS = {
    "energy": _energy_row,
    "required_samples": _required_samples_row,
    "time": _time_row,
    "accuracy": _accuracy_row,
}

# Metric whose log2 is fitted against n, per experiment.
_FIT_METRIC = {
    "energy": "energy_fraction",
    "required_samples": "required_samples",
    "time": "required_duration_s",
}


def _compute_row(args) -> SweepRow:
    spec, fam_idx, n = args
    return _ROW_FUNCS[spec.experiment](spec, fam_idx, n)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Run every (family, n) grid point and fit per-family exponents.

    Grid points are independent; ``jobs > 1`` runs them in a process pool.
    Results merge in deterministic grid order, so the report bytes do not
    depend on ``jobs``.
    """
    points = [(spec, fi, n) for fi in range(len(spec.families)) for n in spec.n_values]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = tuple(pool.map(_compute_row, points))
    else:
        rows = tuple(_compute_row(p) for p in points)

    fits: dict[str, FitResult] = {}
    extras: dict = {}
    if spec.experiment in _FIT_METRIC:
        metric = _FIT_METRIC[spec.experiment]
        for fam in spec.families:
            pts = [
                (row.n, math.log2(getattr(row, metric)))
                for row in rows
                if row.family == fam.name and not row.censored and getattr(row, metric)
            ]
            if len(pts) >= 3:
                fits[fam.name] = fit_loglinear(pts)
        censored = {
            fam.name: [row.n for row in rows if row.family == fam.name and row.censored]
            for fam in spec.families
        }
        censored = {k: v for k, v in censored.items() if v}
        if censored:
            extras["censored_n"] = censored
    if spec.experiment == "accuracy":
        # Crossover: first n at which accuracy drops below the midpoint
        # between perfect and guessing.
        for fam in spec.families:
            for row in rows:
                if row.family == fam.name and row.decision_accuracy is not None:
                    if row.decision_accuracy < 0.75:
                        extras.setdefault("crossover_n", {})[fam.name] = row.n
                        break
    return SweepResult(spec=spec, rows=rows, fits=fits, extras=extras)


def run_energy_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    if spec.experiment != "energy":
        spec = replace_experiment(spec, "energy")
    return run_sweep(spec, jobs)


def run_required_samples_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    if spec.experiment != "required_samples":
        spec = replace_experiment(spec, "required_samples")
    return run_sweep(spec, jobs)


def run_time_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    if spec.experiment != "time":
        spec = replace_experiment(spec, "time")
    return run_sweep(spec, jobs)


def run_accuracy_collapse(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    if spec.experiment != "accuracy":
        spec = replace_experiment(spec, "accuracy")
    return run_sweep(spec, jobs)


def replace_experiment(spec: SweepSpec, experiment: str) -> SweepSpec:
    return replace(spec, experiment=experiment)


# ---------------------------------------------------------------------------
# Spec (de)serialization and report emission
# ---------------------------------------------------------------------------


def _family_from_dict(obj) -> FamilySpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SweepSpecError("family must be an object with a 'kind' field")
    mv = obj.get("max_value")
    pow2 = False
    if isinstance(mv, str):
        if mv in ("2^n", "2**n", "pow2_n"):
            mv, pow2 = None, True
        else:
            raise SweepSpecError(f"max_value must be an integer or '2^n', got {mv!r}")
    return FamilySpec(
        kind=obj["kind"],
        max_value=mv,
        solution_bias=obj.get("solution_bias", "force_yes"),
        max_value_pow2_n=pow2,
        label=obj.get("label"),
    )


def sweep_spec_from_dict(obj) -> SweepSpec:
    if not isinstance(obj, dict):
        raise SweepSpecError("sweep spec JSON must be an object")
    if "experiment" not in obj:
        raise SweepSpecError("sweep spec needs an 'experiment' field")
    fams = obj.get("families")
    if fams is None and "family" in obj:
        fams = [obj["family"]]
    if not isinstance(fams, list) or not fams:
        raise SweepSpecError("sweep spec needs 'families' (list) or 'family' (object)")
    if "n_values" not in obj or not isinstance(obj["n_values"], list):
        raise SweepSpecError("sweep spec needs an 'n_values' list")
    fixed = obj.get("fixed", {})
    if not isinstance(fixed, dict):
        raise SweepSpecError("'fixed' must be an object")
    try:
        return SweepSpec(
            experiment=obj["experiment"],
            families=tuple(_family_from_dict(f) for f in fams),
            n_values=tuple(int(n) for n in obj["n_values"]),
            trials_per_point=int(obj.get("trials_per_point", 1)),
            reliability_target=float(obj.get("reliability_target", 0.95)),
            noise_sigma=fixed.get("noise_sigma"),
            sample_budget=fixed.get("sample_budget"),
            max_frequency=fixed.get("max_frequency"),
            f0=float(obj.get("f0", 1.0)),
            seed=int(obj.get("seed", DEFAULT_SEED)),
            sample_ceiling=int(obj.get("sample_ceiling", DEFAULT_SAMPLE_CEILING)),
            threshold_policy=obj.get("threshold_policy", HALF_MIN_LINE),
        )
    except (TypeError, ValueError) as e:
        raise SweepSpecError(f"invalid sweep spec: {e}") from e


def load_sweep_spec(path: str | Path) -> SweepSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as e:
        raise SweepSpecError(f"cannot read sweep spec {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SweepSpecError(f"sweep spec {path} is not valid JSON: {e}") from e
    return sweep_spec_from_dict(obj)


def _spec_echo(spec: SweepSpec) -> dict:
    d = asdict(spec)
    d["families"] = [
        {k: v for k, v in asdict(f).items() if v not in (None, False)} for f in spec.families
    ]
    return {k: v for k, v in d.items() if v is not None}


REPORT_COLUMNS = (
    "family",
    "n",
    "seed",
    "energy_fraction",
    "min_gap_hz",
    "bandwidth_hz",
    "required_samples",
    "required_duration_s",
    "decision_accuracy",
    "wall_time_s",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "YES" if value else "NO"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_report(result: SweepResult, format: str = "csv", include_timing: bool = False) -> str:
    """Render a sweep result as a deterministic document.

    ``csv``: provenance comment header (spec echo, fits, censoring/crossover
    notes) followed by the fixed column schema. ``json``: one object with
    spec, rows, fits, extras. ``long``: plot-ready metric,name,value triples.
    Timings are omitted unless ``include_timing`` (they would break
    byte-level reproducibility of reruns).
    """
    rows = result.rows
    if format == "csv":
        out = ["# specsum sweep report"]
        for k, v in sorted(_spec_echo(result.spec).items()):
            out.append(f"# {k}={json.dumps(v, sort_keys=True)}")
        for fam, fit in sorted(result.fits.items()):
            out.append(
                f"# fit[{fam}] slope={fit.slope!r} intercept={fit.intercept!r} "
                f"r_squared={fit.r_squared!r}"
            )
        for key, val in sorted(result.extras.items()):
            out.append(f"# {key}={json.dumps(val, sort_keys=True)}")
        out.append(",".join(REPORT_COLUMNS))
        for row in rows:
            cells = []
            for col in REPORT_COLUMNS:
                if col == "wall_time_s" and not include_timing:
                    cells.append("")
                else:
                    cells.append(_cell(getattr(row, col)))
            out.append(",".join(cells))
        return "\n".join(out) + "\n"
    if format == "json":
        def row_dict(row: SweepRow) -> dict:
            d = asdict(row)
            if not include_timing:
                d["wall_time_s"] = None
            return {k: v for k, v in d.items() if v is not None and v is not False}

        doc = {
            "spec": _spec_echo(result.spec),
            "rows": [row_dict(r) for r in rows],
            "fits": {k: asdict(v) for k, v in sorted(result.fits.items())},
            "extras": result.extras,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format == "long":
        out = ["metric,name,value"]
        for row in rows:
            name = f"{row.family}/n={row.n}"
            for col in REPORT_COLUMNS[3:]:
                if col == "wall_time_s" and not include_timing:
                    continue
                val = getattr(row, col)
                if val is not None:
                    out.append(f"{col},{name},{_cell(val)}")
        return "\n".join(out) + "\n"
    raise SweepSpecError(f"unknown report format {format!r}; expected csv, json, or long")
