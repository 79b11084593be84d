"""Subset-sum problem instances, exact oracles, and instance generators.

Two independent exact routes to the subset-sum structure live here:

* ``enumerate_subset_sums`` walks all 2^n subsets (capped at n <= 24) and
  tallies how many subsets produce each sum.
* ``decide_dp`` / ``count_dp`` are the classic pseudo-polynomial dynamic
  programs, O(n * s) time, usable far beyond the enumeration cap.

Everything downstream (spectrum model, readout simulation, scaling sweeps) is
validated against these oracles. Counting is exact: by Erdos-Littlewood-Offord
the multiplicity of any single sum is at most C(n, n//2), which fits in int64
for n <= 64, so the vectorized counting DP cannot overflow within its guard.

Convention: the empty subset counts, so sum 0 is always achievable (the
spectrum's DC line always exists). Some subset-sum formulations exclude the
empty subset; this package deliberately does not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import (
    ForceNoImpossibleError,
    InstanceFormatError,
    InstanceTooLargeError,
    ValueOverflowError,
)
from .prng import DEFAULT_SEED, make_rng

# Hard caps: enumeration walks 2^n subsets; counting relies on int64-safe
# multiplicities (see module docstring).
ENUMERATION_MAX_N = 24
COUNTING_MAX_N = 64
MAX_TOTAL = 2**63 - 1

FAMILY_KINDS = ("all_ones", "powers_of_two", "random")
SOLUTION_BIASES = ("force_yes", "force_no", "any")


def _as_positive_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InstanceFormatError(f"{what} must be an integer, got {x!r}")
    x = int(x)
    if x < 1:
        raise InstanceFormatError(f"{what} must be >= 1, got {x}")
    return x


@dataclass(frozen=True)
class SspInstance:
    """A subset-sum problem: positive integer values and a target sum."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        if len(self.values) < 1:
            raise InstanceFormatError("instance needs at least one value")
        values = tuple(_as_positive_int(v, "value") for v in self.values)
        object.__setattr__(self, "values", values)
        if isinstance(self.target, bool) or not isinstance(self.target, (int, np.integer)):
            raise InstanceFormatError(f"target must be an integer, got {self.target!r}")
        object.__setattr__(self, "target", int(self.target))
        if self.target < 0:
            raise InstanceFormatError(f"target must be >= 0, got {self.target}")
        if sum(values) > MAX_TOTAL:
            raise ValueOverflowError(
                f"total {sum(values)} exceeds the supported maximum {MAX_TOTAL}"
            )

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)

    def to_json(self) -> str:
        return json.dumps({"values": list(self.values), "target": self.target})


def instance_from_dict(obj) -> SspInstance:
    """Build an instance from parsed JSON, rejecting anything malformed."""
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance JSON must be an object")
    missing = {"values", "target"} - set(obj)
    if missing:
        raise InstanceFormatError(f"instance JSON missing fields: {sorted(missing)}")
    values = obj["values"]
    if not isinstance(values, list) or not values:
        raise InstanceFormatError("'values' must be a non-empty list")
    return SspInstance(values=tuple(values), target=obj["target"])


def load_instance(path: str | Path) -> SspInstance:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InstanceFormatError(f"cannot read instance file {path}: {e}") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"instance file {path} is not valid JSON: {e}") from e
    return instance_from_dict(obj)


@dataclass(frozen=True)
class SumMultiplicities:
    """Exact map sum -> number of subsets achieving it, for one instance.

    ``counts[s] = N(s)``; sums with no subset are absent. Always satisfies
    sum(N) = 2^n, N(0) >= 1, N(total) >= 1 and N(s) = N(total - s).
    """

    counts: dict[int, int]
    n: int
    total: int

    def count(self, s: int) -> int:
        return self.counts.get(int(s), 0)

    @property
    def sums(self) -> tuple[int, ...]:
        return tuple(sorted(self.counts))

    @property
    def num_lines(self) -> int:
        return len(self.counts)


def enumerate_subset_sums(instance: SspInstance) -> SumMultiplicities:
    """Tally all 2^n subset sums by direct enumeration (n <= 24)."""
    n = instance.n
    if n > ENUMERATION_MAX_N:
        raise InstanceTooLargeError(
            f"enumeration is capped at n <= {ENUMERATION_MAX_N}, got n = {n}"
        )
    if instance.total > np.iinfo(np.int64).max:
        raise ValueOverflowError("total too large for int64 enumeration")
    sums = np.zeros(1, dtype=np.int64)
    for a in instance.values:
        sums = np.concatenate([sums, sums + a])
    uniq, counts = np.unique(sums, return_counts=True)
    table = {int(s): int(c) for s, c in zip(uniq, counts)}
    return SumMultiplicities(counts=table, n=n, total=instance.total)


def decide_dp(values, s: int) -> bool:
    """True iff some (possibly empty) subset of ``values`` sums to ``s``.

    Bitset dynamic program: bit t of ``mask`` means sum t is achievable.
    Truncating to s+1 bits keeps it O(n * s / wordsize) time, O(s) space.
    """
    s = int(s)
    if s < 0:
        raise InstanceFormatError(f"target must be >= 0, got {s}")
    values = [_as_positive_int(v, "value") for v in values]
    if s > sum(values):
        return False
    keep = (1 << (s + 1)) - 1
    mask = 1
    for a in values:
        if a <= s:
            mask = (mask | (mask << a)) & keep
        if (mask >> s) & 1:
            return True
    return bool((mask >> s) & 1)


def count_dp(values, s: int) -> int:
    """Exact number of subsets of ``values`` summing to ``s`` (n <= 64).

    One-dimensional counting DP over sums 0..s; each value is folded in with
    a reversed-order (single-use) update. Out-of-range targets count 0.
    """
    values = tuple(_as_positive_int(v, "value") for v in values)
    if len(values) > COUNTING_MAX_N:
        raise InstanceTooLargeError(
            f"counting is capped at n <= {COUNTING_MAX_N}, got n = {len(values)}"
        )
    return _count_dp_cached(values, int(s))


@lru_cache(maxsize=4096)
def _count_dp_cached(values: tuple[int, ...], s: int) -> int:
    if s < 0 or s > sum(values):
        return 0
    dp = np.zeros(s + 1, dtype=np.int64)
    dp[0] = 1
    for a in values:
        if a <= s:
            dp[a:] = dp[a:] + dp[:-a]
    return int(dp[s])


def achievable_mask(values) -> int:
    """Bitmask with bit t set iff some subset sums to t (t in [0, total])."""
    values = tuple(_as_positive_int(v, "value") for v in values)
    mask = 1
    for a in values:
        mask |= mask << a
    return mask


def _achieved_array(mask: int, total: int) -> np.ndarray:
    """All achievable sums, as a sorted int64 array, decoded from the bitmask."""
    nbytes = total // 8 + 1
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[: total + 1]
    return np.nonzero(bits)[0].astype(np.int64)


def achieved_sums(values) -> np.ndarray:
    """Sorted array of all achievable subset sums of ``values``."""
    values = tuple(_as_positive_int(v, "value") for v in values)
    return _achieved_array(achievable_mask(values), sum(values))


def _randint_inclusive(rng: np.random.Generator, hi: int) -> int:
    """Uniform integer in [0, hi] for arbitrarily large hi (rejection on bytes)."""
    if hi < 0:
        raise ValueError("hi must be >= 0")
    if hi == 0:
        return 0
    m = hi + 1
    nbits = m.bit_length()
    nbytes = (nbits + 7) // 8
    excess = 8 * nbytes - nbits
    while True:
        x = int.from_bytes(rng.bytes(nbytes), "little") >> excess
        if x < m:
            return x


def _pick_target(
    values: tuple[int, ...], bias: str, rng: np.random.Generator, complete: bool = False
) -> int:
    total = sum(values)
    if bias == "any":
        return _randint_inclusive(rng, total)
    if complete:
        # Every sum in [0, total] is achievable; no bitmask needed (and for
        # wide rulers like powers_of_two none would fit in memory).
        if bias == "force_yes":
            return _randint_inclusive(rng, total)
        raise ForceNoImpossibleError(
            "every value in [0, total] is an achievable sum; no NO-target exists"
        )
    mask = achievable_mask(values)
    if bias == "force_yes":
        # Rejection sample from [0, total]; fall back to direct indexing when
        # the achievable set is sparse.
        for _ in range(1000):
            t = _randint_inclusive(rng, total)
            if (mask >> t) & 1:
                return t
        achieved = _achieved_array(mask, total)
        return int(achieved[_randint_inclusive(rng, len(achieved) - 1)])
    if bias == "force_no":
        if mask == (1 << (total + 1)) - 1:
            raise ForceNoImpossibleError(
                "every value in [0, total] is an achievable sum; no NO-target exists"
            )
        while True:
            t = _randint_inclusive(rng, total)
            if not ((mask >> t) & 1):
                return t
    raise InstanceFormatError(f"unknown solution bias {bias!r}")


def gen_family(
    kind: str,
    n: int,
    *,
    max_value: int | None = None,
    seed: int | None = None,
    solution_bias: str = "any",
) -> SspInstance:
    """Deterministically generate a problem instance from a named family.

    ``all_ones``: n copies of 1 (maximally degenerate spectrum).
    ``powers_of_two``: 1, 2, ..., 2^(n-1); all 2^n subset sums are distinct,
    so the spectrum is maximally wide. Since every integer in [0, 2^n - 1] is
    achievable, ``force_no`` is impossible for this family.
    ``random``: values uniform in [1, max_value] (seed required).

    The target is then drawn according to ``solution_bias``: a random
    achievable sum (``force_yes``), a random unachievable value in
    [0, total] (``force_no``), or uniform over [0, total] (``any``).
    Equal arguments always produce the identical instance.
    """
    if kind not in FAMILY_KINDS:
        raise InstanceFormatError(f"unknown family kind {kind!r}; expected one of {FAMILY_KINDS}")
    if solution_bias not in SOLUTION_BIASES:
        raise InstanceFormatError(
            f"unknown solution bias {solution_bias!r}; expected one of {SOLUTION_BIASES}"
        )
    n = _as_positive_int(n, "n")

    if kind == "random":
        if max_value is None or _as_positive_int(max_value, "max_value") < 1:
            raise InstanceFormatError("random family requires max_value >= 1")
        if seed is None:
            raise InstanceFormatError("random family requires a deterministic seed")
    rng = make_rng(DEFAULT_SEED if seed is None else seed)

    complete = kind in ("all_ones", "powers_of_two")
    if kind == "all_ones":
        values = (1,) * n
    elif kind == "powers_of_two":
        if n > 63:
            raise ValueOverflowError("powers_of_two total exceeds the supported range for n > 63")
        values = tuple(1 << j for j in range(n))
    else:
        values = tuple(int(v) for v in rng.integers(1, max_value, size=n, endpoint=True))
        if sum(values) > MAX_TOTAL:
            raise ValueOverflowError("generated total exceeds the supported maximum")

    target = _pick_target(values, solution_bias, rng, complete=complete)
    return SspInstance(values=values, target=target)
