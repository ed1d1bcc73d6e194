"""Witness graphs with large Betti numbers and the planting surgery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .complex import build_clique_complex, count_clique_copies
from .errors import SubsetTooSmall
from .graph import Graph, VertexSubset, apply_surgery, complete_multipartite, empty, labeled_distance, split_parts
from .homology import betti
from .testers import as_fraction

# Exact homology is attempted up to this many vertices unless told otherwise.
EXACT_HOMOLOGY_MAX_N = 48


@dataclass(frozen=True)
class PlantReport:
    alpha: Fraction
    k: int
    subset: tuple[int, ...]
    part_sizes: tuple[int, ...]
    edges_modified: int
    beta_ratio_before: Fraction | None
    beta_ratio_after: Fraction | None
    beta_after: int | None
    d_after: int
    beta_lower_bound: int
    exact: bool

    def to_dict(self) -> dict[str, Any]:
        def f(x: Fraction | None) -> float | None:
            return None if x is None else float(x)

        return {
            "alpha": float(self.alpha),
            "k": self.k,
            "subset": list(self.subset),
            "part_sizes": list(self.part_sizes),
            "edges_modified": self.edges_modified,
            "beta_ratio_before": f(self.beta_ratio_before),
            "beta_ratio_after": f(self.beta_ratio_after),
            "beta_after": self.beta_after,
            "d_after": self.d_after,
            "beta_lower_bound": self.beta_lower_bound,
            "ratio_source": "exact" if self.exact else "analytic",
        }


def _ratio(g: Graph, k: int) -> tuple[int, int]:
    c = build_clique_complex(g, k + 1)
    return betti(c, k), len(c.faces(k))


def _isolate(g: Graph, members: list[int]) -> Graph:
    """The one-part case of the surgery: S becomes an independent set cut off from V minus S."""
    adj = np.array(g.adj, copy=True)
    adj[members, :] = False
    adj[:, members] = False
    return Graph(g.n, adj)


def plant_large_betti(
    h: Graph, k: int, alpha: Any, seed: int, exact: bool | None = None
) -> tuple[Graph, PlantReport]:
    """Rewire a seeded random set of floor(alpha*n) vertices into a complete (k+1)-partite block.

    The block is cut off from the rest, so its k-th Betti number
    prod(part_size - 1) is a lower bound for the whole graph. With
    ``exact`` (default: n <= EXACT_HOMOLOGY_MAX_N) the before/after ratios
    beta_k/d_k are computed exactly; otherwise the after-ratio uses the lower bound.
    """
    a = as_fraction(alpha)
    if not 0 < a <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {a}")
    size = math.floor(a * h.n)
    if size < k + 1:
        raise SubsetTooSmall(f"floor(alpha*n) = {size} is below k+1 = {k + 1}")
    rng = np.random.default_rng(seed)
    members = sorted(int(v) for v in rng.choice(h.n, size=size, replace=False))
    parts = split_parts(members, k + 1)
    if k == 0:
        planted = _isolate(h, members)
        lower = size
    else:
        planted = apply_surgery(h, VertexSubset(h.n, tuple(members)), k + 1)
        lower = math.prod(len(p) - 1 for p in parts)
    modified = int(labeled_distance(h, planted) * h.n * h.n)

    if exact is None:
        exact = h.n <= EXACT_HOMOLOGY_MAX_N
    if exact:
        b0, d0 = _ratio(h, k)
        b1, d1 = _ratio(planted, k)
        before = Fraction(b0, d0) if d0 else None
        after = Fraction(b1, d1) if d1 else None
        beta_after = b1
    else:
        d1 = count_clique_copies(planted, k + 1)
        before, beta_after = None, None
        after = Fraction(lower, d1) if d1 else None
    report = PlantReport(
        alpha=a,
        k=k,
        subset=tuple(members),
        part_sizes=tuple(len(p) for p in parts),
        edges_modified=modified,
        beta_ratio_before=before,
        beta_ratio_after=after,
        beta_after=beta_after,
        d_after=d1,
        beta_lower_bound=lower,
        exact=exact,
    )
    return planted, report


def multipartite_witness(k: int, part_size: int) -> tuple[Graph, int, int]:
    """Complete (k+1)-partite graph with equal parts and its closed-form d_k and beta_k.

    For k >= 1, d_k = s^(k+1) and beta_k = (s-1)^(k+1). The k = 0 case is the
    edgeless graph on s vertices, where beta_0 = d_0 = s.
    """
    if part_size < 2:
        raise ValueError(f"part_size must be at least 2, got {part_size}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k == 0:
        return empty(part_size), part_size, part_size
    g = complete_multipartite([part_size] * (k + 1))
    return g, part_size ** (k + 1), (part_size - 1) ** (k + 1)
