"""Sampling testers for K_m-freeness and for large Betti numbers.

The tolerant tester samples ``q`` vertices per trial, counts K_m copies in the
induced subgraph and compares the mean copy density with a threshold.

Default thresholds are derived, not guessed: the mean sampled density is an
unbiased estimate of the graph's global K_m density, so for every graph whose
global density is at most ``b`` Markov's inequality gives
``P(mean > 3b) <= 1/3``. Thresholds are therefore ``MARKOV_FACTOR`` times a
provable upper bound ``b`` on the density of graphs on the accepting side.
Rejection of far graphs is the empirically calibrated part (see
``experiments/calibration/``).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Any

import numpy as np

from .complex import count_clique_copies
from .errors import InvalidParams, SampleTooLarge
from .graph import Graph

SCHEMA_VERSION = 1

# Calibrated on G(n, p) and complete multipartite hosts, see README.
DEFAULT_SAMPLE_SIZE = 12
DEFAULT_TRIALS = 8
MARKOV_FACTOR = 3
DEFAULT_SPLIT_FRACTION = Fraction(1, 2)
MAX_EXACT_TOWER_HEIGHT = 4


def as_fraction(x: Any) -> Fraction:
    """Exact rational from an int, Fraction, decimal string, or float (by its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x}")
        return Fraction(repr(x))
    return Fraction(str(x))


def _fmt(x: Fraction) -> float | int:
    return int(x) if x.denominator == 1 else float(x)


class AdjacencyOracle:
    """Query access to a graph's adjacency matrix that counts every lookup."""

    def __init__(self, g: Graph) -> None:
        self._g = g
        self.queries = 0

    @property
    def n(self) -> int:
        return self._g.n

    def query(self, u: int, v: int) -> bool:
        self.queries += 1
        return self._g.has_edge(u, v)


def sample_induced(
    g: Graph | AdjacencyOracle, q: int, rng: np.random.Generator
) -> Graph:
    """Induced subgraph on ``q`` uniform distinct vertices, using exactly C(q, 2) queries."""
    oracle = g if isinstance(g, AdjacencyOracle) else AdjacencyOracle(g)
    if not 0 <= q <= oracle.n:
        raise SampleTooLarge(f"cannot sample {q} of {oracle.n} vertices")
    picked = np.sort(rng.choice(oracle.n, size=q, replace=False))
    adj = np.zeros((q, q), dtype=bool)
    for i in range(q):
        for j in range(i + 1, q):
            adj[i, j] = adj[j, i] = oracle.query(int(picked[i]), int(picked[j]))
    return Graph(q, adj)


@dataclass(frozen=True)
class TesterParams:
    epsilon: Fraction
    epsilon1: Fraction
    sample_size: int = DEFAULT_SAMPLE_SIZE
    trials: int = DEFAULT_TRIALS
    density_threshold: Fraction | None = None
    seed: int = 0

    __test__ = False  # not a pytest class

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        object.__setattr__(self, "epsilon1", as_fraction(self.epsilon1))
        if self.density_threshold is not None:
            object.__setattr__(self, "density_threshold", as_fraction(self.density_threshold))

    def validate(self, m: int, n: int | None = None) -> None:
        if not 0 < self.epsilon1 < self.epsilon <= 1:
            raise InvalidParams(
                f"need 0 < epsilon1 < epsilon <= 1, got {self.epsilon1}, {self.epsilon}"
            )
        self._validate_sampling(m, n)

    def _validate_sampling(self, m: int, n: int | None) -> None:
        if self.sample_size < m:
            raise InvalidParams(f"sample_size {self.sample_size} is below clique size {m}")
        if n is not None and self.sample_size > n:
            raise InvalidParams(f"sample_size {self.sample_size} exceeds n={n}")
        if self.trials < 1:
            raise InvalidParams("trials must be positive")
        t = self.density_threshold
        if t is not None and not 0 <= t <= 1:
            raise InvalidParams(f"density_threshold must lie in [0, 1], got {t}")
        if self.seed < 0:
            raise InvalidParams("seed must be nonnegative")

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for key in ("epsilon", "epsilon1", "density_threshold"):
            if d[key] is not None:
                d[key] = _fmt(d[key])
        return d


@dataclass
class TestReport:
    verdict: str
    observed_density: Fraction
    queries_used: int
    params: TesterParams
    seed: int
    m: int
    n: int
    density_threshold: Fraction
    trial_copies: list[int]
    guarantee_regime: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    __test__ = False  # not a pytest class

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "verdict": self.verdict,
            "observed_density": float(self.observed_density),
            "observed_density_exact": str(self.observed_density),
            "density_threshold": float(self.density_threshold),
            "queries_used": self.queries_used,
            "clique_size": self.m,
            "n": self.n,
            "seed": self.seed,
            "params": self.params.to_dict(),
            "trial_copies": list(self.trial_copies),
        }
        if self.guarantee_regime is not None:
            out["guarantee_regime"] = self.guarantee_regime
        out.update(self.details)
        return out


def _trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, trial])


def _run_trial(g: Graph, m: int, q: int, seed: int, trial: int) -> tuple[int, int]:
    oracle = AdjacencyOracle(g)
    sub = sample_induced(oracle, q, np.random.default_rng(_trial_seed(seed, trial)))
    return count_clique_copies(sub, m), oracle.queries


def closeness_density_bound(n: int, m: int, epsilon1: Fraction) -> Fraction:
    """Largest global K_m density of a graph that is epsilon1-close to K_m-free.

    Deleting at most epsilon1*n^2 edges destroys every copy, and one edge lies
    in at most C(n-2, m-2) copies, so density <= epsilon1*m(m-1)*n/(n-1).
    """
    if n < m:
        return Fraction(0)
    bound = as_fraction(epsilon1) * m * (m - 1) * n / (n - 1)
    return min(bound, Fraction(1))


def _sample(g: Graph, m: int, params: TesterParams, threshold: Fraction, jobs: int) -> TestReport:
    q = params.sample_size
    if jobs > 1 and params.trials > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, params.trials)) as pool:
            results = list(
                pool.map(
                    _run_trial,
                    [g] * params.trials,
                    [m] * params.trials,
                    [q] * params.trials,
                    [params.seed] * params.trials,
                    range(params.trials),
                )
            )
    else:
        results = [_run_trial(g, m, q, params.seed, t) for t in range(params.trials)]
    copies = [c for c, _ in results]
    per_sample = math.comb(q, m)
    density = Fraction(sum(copies), per_sample * params.trials)
    verdict = "accept" if density <= threshold else "reject"
    return TestReport(
        verdict=verdict,
        observed_density=density,
        queries_used=sum(used for _, used in results),
        params=params,
        seed=params.seed,
        m=m,
        n=g.n,
        density_threshold=threshold,
        trial_copies=copies,
    )


def tolerant_clique_free_test(
    g: Graph, m: int, params: TesterParams, jobs: int = 1
) -> TestReport:
    """Distinguish epsilon1-close from epsilon-far K_m-freeness by sampled copy density.

    Without an explicit ``density_threshold`` the threshold is
    ``MARKOV_FACTOR * closeness_density_bound(n, m, epsilon1)``. Ties accept.
    """
    if m < 2:
        raise InvalidParams(f"clique size must be at least 2, got {m}")
    params.validate(m, g.n)
    threshold = params.density_threshold
    if threshold is None:
        threshold = min(Fraction(1), MARKOV_FACTOR * closeness_density_bound(g.n, m, params.epsilon1))
    return _sample(g, m, params, threshold, jobs)


# -- Betti reduction ----------------------------------------------------------


def tower(height: int) -> int:
    value = 1
    for _ in range(height):
        value = 2**value
    return value


@dataclass(frozen=True)
class DeltaBound:
    k: int
    epsilon: Fraction
    value: Fraction | float | None
    tower_height: int | None = None

    @property
    def suppressed(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.suppressed:
            return f"tower-suppressed (height {self.tower_height})"
        return str(self.value)

    def to_dict(self) -> dict[str, Any]:
        value: Any
        if self.value is None:
            value = "tower-suppressed"
        else:
            value = float(self.value)
        return {"k": self.k, "epsilon": float(self.epsilon), "value": value,
                "tower_height": self.tower_height}


def _exact_sqrt(x: Fraction) -> Fraction | float:
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return math.sqrt(x)


def delta_bound(epsilon: Any, k: int) -> DeltaBound:
    """Largest delta for which the reduction is proven at proximity ``epsilon``.

    k = 0: sqrt(2 eps); k = 1: eps/3; k > 1: 1/tower(ceil(5 (k+2)^4 log2(1/eps))),
    reported as suppressed when the tower is taller than 4.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise InvalidParams(f"epsilon must lie in (0, 1), got {eps}")
    if k < 0:
        raise InvalidParams(f"k must be nonnegative, got {k}")
    if k == 0:
        return DeltaBound(k, eps, _exact_sqrt(2 * eps))
    if k == 1:
        return DeltaBound(k, eps, eps / 3)
    height = math.ceil(5 * (k + 2) ** 4 * math.log2(1 / eps))
    if height <= MAX_EXACT_TOWER_HEIGHT:
        return DeltaBound(k, eps, Fraction(1, tower(height)), height)
    return DeltaBound(k, eps, None, height)


def k_face_bound_chain(n: int, k: int, delta: Any) -> int:
    """floor(delta * n^(k+2) / (k+2)!): the K_{k+2} budget implied by r_{k+1} <= delta*d_k."""
    d = as_fraction(delta)
    if not 0 <= d <= 1:
        raise InvalidParams(f"delta must lie in [0, 1], got {d}")
    return math.floor(d * n ** (k + 2) / math.factorial(k + 2))


def chain_density_bound(n: int, k: int, delta: Any) -> Fraction:
    """Global K_{k+2} density of any graph with beta_k >= (1-delta) d_k is at most this."""
    total = math.comb(n, k + 2)
    if total == 0:
        return Fraction(0)
    return min(Fraction(1), Fraction(k_face_bound_chain(n, k, delta), total))


def closeness_epsilon1(k: int, delta: Fraction, epsilon2: Fraction) -> Fraction:
    """How close to K_{k+2}-freeness a graph with beta_k >= (1-delta) d_k must be."""
    if k == 0:
        return Fraction(11, 10) * delta * delta / 2
    if k == 1:
        return 3 * delta
    return epsilon2


def betti_test(
    g: Graph,
    k: int,
    epsilon: Any,
    delta: Any,
    params: TesterParams | None = None,
    *,
    split_fraction: Any = DEFAULT_SPLIT_FRACTION,
    seed: int | None = None,
    jobs: int = 1,
) -> TestReport:
    """Test ``beta_k >= (1 - delta) d_k`` against being ``epsilon``-far from it.

    Runs the K_{k+2} sampler with far parameter ``split_fraction * epsilon``.
    The default threshold is MARKOV_FACTOR times the smaller of two proven
    density bounds for graphs with the property: the closeness bound at
    epsilon1 (k <= 1 only) and the clique-count chain bound.
    """
    eps = as_fraction(epsilon)
    dlt = as_fraction(delta)
    split = as_fraction(split_fraction)
    if not 0 < eps <= 1:
        raise InvalidParams(f"epsilon must lie in (0, 1], got {eps}")
    if not 0 < dlt < 1:
        raise InvalidParams(f"delta must lie in (0, 1), got {dlt}")
    if not 0 < split < 1:
        raise InvalidParams(f"split_fraction must lie in (0, 1), got {split}")
    if k < 0:
        raise InvalidParams(f"k must be nonnegative, got {k}")
    m = k + 2
    eps2 = split * eps
    eps1 = closeness_epsilon1(k, dlt, eps2)

    if params is None:
        params = TesterParams(epsilon=eps2, epsilon1=eps1, seed=0 if seed is None else seed,
                              sample_size=min(DEFAULT_SAMPLE_SIZE, max(g.n, m)))
    else:
        params = replace(params, epsilon=eps2, epsilon1=eps1,
                         seed=params.seed if seed is None else seed)
    params._validate_sampling(m, None)

    bounds = {"chain": chain_density_bound(g.n, k, dlt)}
    if k <= 1:
        bounds["closeness"] = closeness_density_bound(g.n, m, eps1)
    threshold = params.density_threshold
    if threshold is None:
        threshold = min(Fraction(1), MARKOV_FACTOR * min(bounds.values()))

    bound = delta_bound(eps, k) if eps < 1 else None
    in_theorem = (
        bound is not None
        and not bound.suppressed
        and dlt < bound.value
        and eps1 < eps2
    )
    details = {
        "k": k,
        "epsilon": _fmt(eps),
        "delta": _fmt(dlt),
        "epsilon1": _fmt(eps1),
        "epsilon2": _fmt(eps2),
        "split_fraction": _fmt(split),
        "delta_bound": bound.to_dict() if bound is not None else None,
        "density_bounds": {name: float(b) for name, b in bounds.items()},
    }

    if g.n < m:
        # no K_{k+2} can exist; nothing to sample
        report = TestReport("accept", Fraction(0), 0, params, params.seed, m, g.n,
                            threshold, [])
    else:
        if params.sample_size > g.n:
            raise InvalidParams(f"sample_size {params.sample_size} exceeds n={g.n}")
        report = _sample(g, m, params, threshold, jobs)
    report.guarantee_regime = "theorem" if in_theorem else "heuristic"
    report.details = details
    return report
