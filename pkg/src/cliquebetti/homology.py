"""Boundary matrices, simplicial-matroid ranks and Betti numbers over GF(2)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .complex import CliqueComplex, Face
from .errors import DimOutOfRange, InsufficientDim, UnknownFace
from .gf2 import Gf2Basis, Gf2Matrix, check_budget, rank_gf2


@dataclass(frozen=True)
class RankProfile:
    k: int
    d_k: int
    r_k: int
    r_k1: int
    beta_k: int

    def __post_init__(self) -> None:
        if self.beta_k != self.d_k - self.r_k - self.r_k1:
            raise ValueError("beta_k must equal d_k - r_k - r_k1")
        if min(self.d_k, self.r_k, self.r_k1, self.beta_k) < 0:
            raise ValueError("rank profile fields must be nonnegative")

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _facets(face: Face) -> list[Face]:
    return [face[:i] + face[i + 1 :] for i in range(len(face))]


def boundary_matrix(c: CliqueComplex, k: int, budget: int | None = None) -> Gf2Matrix:
    """Rows are the k-faces in sorted order, columns the (k-1)-faces."""
    if not 1 <= k <= c.max_dim:
        raise DimOutOfRange(f"boundary of dimension {k} needs 1 <= k <= {c.max_dim}")
    faces = c.faces(k)
    lower = c.faces(k - 1)
    check_budget(len(faces), len(lower), budget)
    rows = [[c.index_of(f, k - 1) for f in _facets(face)] for face in faces]
    return Gf2Matrix.from_row_indices(rows, len(lower), budget)


def _require_dim(c: CliqueComplex, k: int) -> None:
    if k < 0:
        raise DimOutOfRange(f"dimension must be nonnegative, got {k}")
    if c.max_dim < k + 1:
        raise InsufficientDim(f"Betti number in dimension {k} needs max_dim >= {k + 1}, got {c.max_dim}")


def simplicial_rank(c: CliqueComplex, k: int, budget: int | None = None) -> int:
    """Rank of the k-th simplicial matroid; 0 for k = 0 by convention."""
    if k == 0:
        return 0
    if 1 <= k <= c.max_dim:
        return rank_gf2(boundary_matrix(c, k, budget))
    if k == c.max_dim + 1:
        if c.has_faces_above_cap():
            raise InsufficientDim(f"graph has {k}-faces beyond the cap max_dim={c.max_dim}")
        return 0
    raise DimOutOfRange(f"rank dimension {k} outside [0, {c.max_dim + 1}]")


def rank_profile(c: CliqueComplex, k: int, budget: int | None = None) -> RankProfile:
    _require_dim(c, k)
    d_k = len(c.faces(k))
    r_k = simplicial_rank(c, k, budget)
    r_k1 = simplicial_rank(c, k + 1, budget)
    return RankProfile(k=k, d_k=d_k, r_k=r_k, r_k1=r_k1, beta_k=d_k - r_k - r_k1)


def betti(c: CliqueComplex, k: int, budget: int | None = None) -> int:
    """beta_k = d_k - r_k - r_{k+1}."""
    return rank_profile(c, k, budget).beta_k


def _coboundary_rows(c: CliqueComplex, k: int) -> list[int]:
    """Transpose of the k-th boundary: one int per (k-1)-face, bit i set for each k-face i on it."""
    rows = [0] * len(c.faces(k - 1))
    for i, face in enumerate(c.faces(k)):
        bit = 1 << i
        for f in _facets(face):
            rows[c.index_of(f, k - 1)] |= bit
    return rows


def _map_rank(c: CliqueComplex, k: int, budget: int | None) -> int:
    if k == 0:
        return 0
    check_budget(len(c.faces(k - 1)), len(c.faces(k)), budget)
    basis = Gf2Basis()
    for row in _coboundary_rows(c, k):
        basis.insert(row)
    return basis.rank


def betti_direct(c: CliqueComplex, k: int, budget: int | None = None) -> int:
    """dim ker(boundary_k) - dim im(boundary_{k+1}).

    Ranks here come from the transposed maps and the incremental basis, so this
    shares no elimination code with :func:`betti`.
    """
    _require_dim(c, k)
    kernel = len(c.faces(k)) - _map_rank(c, k, budget)
    image = _map_rank(c, k + 1, budget)
    return kernel - image


def boundary_row(c: CliqueComplex, face: Face) -> int:
    """Boundary vector of ``face`` as an int over the indices of its facets."""
    k = len(face) - 1
    if k == 0:
        return 0
    row = 0
    for f in _facets(face):
        row ^= 1 << c.index_of(f, k - 1)
    return row


def is_independent(c: CliqueComplex, faces: Sequence[Face], k: int) -> bool:
    """Whether the boundary vectors of ``faces`` are linearly independent over GF(2)."""
    for f in faces:
        f = tuple(f)
        if len(f) != k + 1 or f not in c:
            raise UnknownFace(f"{f} is not a {k}-face of the complex")
    basis = Gf2Basis()
    return all(basis.insert(boundary_row(c, tuple(f))) for f in faces)


@dataclass(frozen=True)
class TraceStep:
    dim: int
    face: Face
    independent: bool
    delta: int
    beta: int


def greedy_basis(c: CliqueComplex, k: int, order: Sequence[Face]) -> list[Face]:
    basis = Gf2Basis()
    return [f for f in order if basis.insert(boundary_row(c, f))]


def incremental_trace(c: CliqueComplex, k: int, order_seed: int) -> list[TraceStep]:
    """Rebuild the k- and (k+1)-skeleton face by face, tracking beta_k.

    Start from a greedy basis of k-faces (beta_k = 0), add the remaining
    k-faces, then the (k+1)-faces, each in a seeded random order. Every step
    records whether the face's boundary was independent of those already
    present and the resulting change in beta_k.
    """
    _require_dim(c, k)
    rng = np.random.default_rng(order_seed)
    k_faces = list(c.faces(k))
    up_faces = list(c.faces(k + 1))
    k_order = [k_faces[i] for i in rng.permutation(len(k_faces))]
    up_order = [up_faces[i] for i in rng.permutation(len(up_faces))]

    k_basis = Gf2Basis()
    start = [f for f in k_order if k_basis.insert(boundary_row(c, f))]
    in_start = set(start)
    d_k, r_k, r_up = len(start), k_basis.rank, 0
    beta = d_k - r_k - r_up

    steps: list[TraceStep] = []
    for f in k_order:
        if f in in_start:
            continue
        indep = k_basis.insert(boundary_row(c, f))
        d_k += 1
        r_k += int(indep)
        new = d_k - r_k - r_up
        steps.append(TraceStep(k, f, indep, new - beta, new))
        beta = new

    up_basis = Gf2Basis()
    for f in up_order:
        indep = up_basis.insert(boundary_row(c, f))
        r_up += int(indep)
        new = d_k - r_k - r_up
        steps.append(TraceStep(k + 1, f, indep, new - beta, new))
        beta = new
    return steps
