"""Monte Carlo estimation of the probability that two random order-k
elements generate the parity-appropriate full group.

Two samplers ship, since the underlying question does not fix a
distribution: products of the maximum number of disjoint k-cycles, and
uniform permutations conditioned on having order exactly k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import classify
from .errors import InvalidParams, InvalidSampler, TrialsZero
from .perms import Permutation, is_even, order_of

SAMPLERS = ("max_disjoint_k_cycles", "uniform_order_k")

_Z95 = 1.959963984540054


def wilson_interval(successes: int, trials: int, z: float = _Z95):
    """Wilson score 95% interval for a binomial proportion."""
    if trials < 1:
        raise TrialsZero("need trials >= 1")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (
        z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
        / denom
    )
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


def sample_max_disjoint_k_cycles(rng: np.random.Generator, k: int, n: int) -> Permutation:
    """Uniform random injection of floor(n/k)*k points into cycle slots."""
    ell = n // k
    points = rng.permutation(n)[: ell * k]
    images = list(range(n))
    for c in range(ell):
        cyc = points[c * k : (c + 1) * k]
        for i in range(k):
            images[int(cyc[i])] = int(cyc[(i + 1) % k])
    return Permutation(tuple(images))


def sample_uniform_order_k(
    rng: np.random.Generator, k: int, n: int, max_rejects: int = 1_000_000
) -> Permutation:
    """Rejection sampling from uniform permutations, accepting order k."""
    for _ in range(max_rejects):
        p = Permutation(tuple(int(x) for x in rng.permutation(n)))
        if order_of(p) == k:
            return p
    raise InvalidParams(
        f"no order-{k} permutation found in {max_rejects} uniform samples (n={n})"
    )


_SAMPLER_FNS = {
    "max_disjoint_k_cycles": sample_max_disjoint_k_cycles,
    "uniform_order_k": sample_uniform_order_k,
}


@dataclass(frozen=True)
class EstimatorResult:
    k: int
    n: int
    sampler: str
    trials: int
    successes: int
    estimate: float
    ci_low: float
    ci_high: float
    seed: int

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise InvalidParams("successes out of range")
        if not self.ci_low <= self.estimate <= self.ci_high:
            raise InvalidParams("interval must contain the point estimate")

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "sampler": self.sampler,
            "trials": self.trials,
            "successes": self.successes,
            "estimate": self.estimate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "seed": self.seed,
        }


def estimate_generation(
    k: int, n: int, trials: int, sampler: str, seed: int
) -> EstimatorResult:
    """Sample pairs of order-k elements and count pairs generating the
    parity-appropriate target (A_n when both elements are even, S_n
    otherwise).  Fully reproducible from the seed."""
    if sampler not in _SAMPLER_FNS:
        raise InvalidSampler(f"sampler must be one of {SAMPLERS}, got {sampler!r}")
    if trials < 1:
        raise TrialsZero(f"need trials >= 1, got {trials}")
    if not 2 <= k <= n:
        raise InvalidParams(f"need 2 <= k <= n, got k={k}, n={n}")
    draw = _SAMPLER_FNS[sampler]
    rng = np.random.default_rng(seed)
    successes = 0
    for _ in range(trials):
        p, q = draw(rng, k, n), draw(rng, k, n)
        target = "alternating" if is_even(p) and is_even(q) else "symmetric"
        if classify([p, q]).kind == target:
            successes += 1
    low, high = wilson_interval(successes, trials)
    return EstimatorResult(
        k, n, sampler, trials, successes, successes / trials, low, high, seed
    )
