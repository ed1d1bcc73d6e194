"""Parameter sweeps over the testers, written as CSV rows."""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, TextIO

import numpy as np

from .errors import CliqueBettiError, InvalidSpec
from .generators import generator_string, parse_generator
from .graph import Graph
from .testers import DEFAULT_SAMPLE_SIZE, TesterParams, betti_test, tolerant_clique_free_test

CSV_COLUMNS = ["point_id", "repetition", "verdict", "observed_density", "queries_used", "seed"]
TESTERS = ("betti_test", "tolerant_clique_free_test")
SAMPLER_KEYS = {"sample_size", "trials", "density_threshold"}
BETTI_KEYS = SAMPLER_KEYS | {"k", "epsilon", "delta", "split_fraction"}
TOLERANT_KEYS = SAMPLER_KEYS | {"m", "epsilon", "epsilon1"}


@dataclass
class ExperimentSpec:
    generator: str
    tester: str
    generator_params: list = field(default_factory=list)
    tester_params: dict[str, Any] = field(default_factory=dict)
    grid: dict[str, list] = field(default_factory=dict)
    repetitions: int = 1
    master_seed: int = 0
    generator_seed: int | None = None

    def __post_init__(self) -> None:
        if self.tester not in TESTERS:
            raise InvalidSpec(f"tester must be one of {TESTERS}, got {self.tester!r}")
        allowed = BETTI_KEYS if self.tester == "betti_test" else TOLERANT_KEYS
        unknown = (set(self.tester_params) | set(self.grid)) - allowed
        if unknown:
            raise InvalidSpec(f"unknown parameters for {self.tester}: {sorted(unknown)}")
        if not isinstance(self.grid, dict) or any(
            not isinstance(v, list) for v in self.grid.values()
        ):
            raise InvalidSpec("grid must map parameter names to lists of values")
        if not isinstance(self.repetitions, int) or self.repetitions < 0:
            raise InvalidSpec("repetitions must be a nonnegative integer")
        if not isinstance(self.master_seed, int) or self.master_seed < 0:
            raise InvalidSpec("master_seed must be a nonnegative integer")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentSpec:
        known = {"generator", "generator_params", "tester", "tester_params", "grid",
                 "repetitions", "master_seed", "generator_seed"}
        extra = set(data) - known
        if extra:
            raise InvalidSpec(f"unknown experiment fields: {sorted(extra)}")
        missing = {"generator", "tester"} - set(data)
        if missing:
            raise InvalidSpec(f"missing experiment fields: {sorted(missing)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidSpec(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> ExperimentSpec:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"experiment spec is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidSpec("experiment spec must be a JSON object")
        return cls.from_dict(data)

    def build_graph(self) -> Graph:
        seed = self.master_seed if self.generator_seed is None else self.generator_seed
        try:
            return parse_generator(generator_string(self.generator, self.generator_params), seed)
        except CliqueBettiError as exc:
            raise InvalidSpec(f"bad generator: {exc}") from exc

    def points(self) -> list[dict[str, Any]]:
        """Cartesian product of the grid in key order; an empty grid has no points."""
        if not self.grid:
            return []
        keys = list(self.grid)
        return [dict(zip(keys, combo)) for combo in itertools.product(*self.grid.values())]


def derive_seed(master_seed: int, point_id: int, repetition: int) -> int:
    state = np.random.SeedSequence([master_seed, point_id, repetition]).generate_state(1, np.uint64)
    return int(state[0])


def _run_point(g: Graph, spec: ExperimentSpec, values: dict[str, Any], seed: int, jobs: int):
    sampler = {k: values[k] for k in SAMPLER_KEYS if k in values}
    if spec.tester == "betti_test":
        if "k" not in values or "epsilon" not in values or "delta" not in values:
            raise InvalidSpec("betti_test needs k, epsilon and delta")
        params = TesterParams(epsilon=values["epsilon"], epsilon1=0, seed=seed, **sampler)
        kwargs = {}
        if "split_fraction" in values:
            kwargs["split_fraction"] = values["split_fraction"]
        return betti_test(g, int(values["k"]), values["epsilon"], values["delta"], params,
                          jobs=jobs, **kwargs)
    if "m" not in values or "epsilon" not in values or "epsilon1" not in values:
        raise InvalidSpec("tolerant_clique_free_test needs m, epsilon and epsilon1")
    m = int(values["m"])
    sampler.setdefault("sample_size", min(DEFAULT_SAMPLE_SIZE, max(g.n, m)))
    params = TesterParams(epsilon=values["epsilon"], epsilon1=values["epsilon1"], seed=seed,
                          **sampler)
    return tolerant_clique_free_test(g, m, params, jobs=jobs)


def run_experiment(spec: ExperimentSpec, jobs: int = 1) -> list[dict[str, Any]]:
    """One row per (grid point, repetition); deterministic given ``master_seed``."""
    points = spec.points()
    if not points or spec.repetitions == 0:
        return []
    g = spec.build_graph()
    rows = []
    for point_id, point in enumerate(points):
        values = {**spec.tester_params, **point}
        for rep in range(spec.repetitions):
            seed = derive_seed(spec.master_seed, point_id, rep)
            try:
                report = _run_point(g, spec, values, seed, jobs)
            except InvalidSpec:
                raise
            except CliqueBettiError as exc:
                raise InvalidSpec(f"point {point_id} ({point}): {exc}") from exc
            rows.append({
                "point_id": point_id,
                "repetition": rep,
                "verdict": report.verdict,
                "observed_density": f"{float(report.observed_density):.12g}",
                "queries_used": report.queries_used,
                "seed": seed,
            })
    return rows


def write_csv(rows: Iterable[dict[str, Any]], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def rows_to_csv(rows: Iterable[dict[str, Any]]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def summarize(rows: Iterable[dict[str, Any]]) -> dict[int, float]:
    """Acceptance rate per point_id."""
    counts: dict[int, list[int]] = {}
    for row in rows:
        tally = counts.setdefault(int(row["point_id"]), [0, 0])
        tally[0] += row["verdict"] == "accept"
        tally[1] += 1
    return {pid: acc / tot for pid, (acc, tot) in sorted(counts.items())}
