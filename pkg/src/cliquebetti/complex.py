"""Clique (flag) complexes enumerated up to a dimension cap."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterator, TextIO

from .errors import DimOutOfRange, ParseError
from .graph import Graph

Face = tuple[int, ...]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _above(v: int) -> int:
    """Mask of vertex indices strictly greater than ``v`` (within any width)."""
    return ~((1 << (v + 1)) - 1)


@dataclass(frozen=True, eq=False)
class CliqueComplex:
    graph: Graph
    max_dim: int
    faces_by_dim: tuple[tuple[Face, ...], ...]
    _index: tuple[dict[Face, int], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        index = tuple({f: i for i, f in enumerate(fs)} for fs in self.faces_by_dim)
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return self.graph.n

    def faces(self, k: int) -> tuple[Face, ...]:
        self._check_dim(k)
        return self.faces_by_dim[k]

    def index_of(self, face: Face, k: int | None = None) -> int:
        """Position of ``face`` in its dimension's sorted list; ``KeyError`` if absent."""
        k = len(face) - 1 if k is None else k
        self._check_dim(k)
        return self._index[k][tuple(face)]

    def __contains__(self, face: object) -> bool:
        if not isinstance(face, tuple) or not 1 <= len(face) <= self.max_dim + 1:
            return False
        return face in self._index[len(face) - 1]

    @property
    def counts(self) -> list[int]:
        return [len(fs) for fs in self.faces_by_dim]

    def _check_dim(self, k: int) -> None:
        if not 0 <= k <= self.max_dim:
            raise DimOutOfRange(f"dimension {k} outside [0, {self.max_dim}]")

    def has_faces_above_cap(self) -> bool:
        """True if the graph has a clique one dimension above ``max_dim``."""
        g = self.graph
        for face in self.faces_by_dim[self.max_dim]:
            cand = _above(face[-1])
            for v in face:
                cand &= g.neighbor_mask(v)
            if cand:
                return True
        return False


def build_clique_complex(g: Graph, max_dim: int) -> CliqueComplex:
    """All cliques of ``g`` with at most ``max_dim + 1`` vertices, grouped by dimension.

    Each j-face is extended only by common neighbours larger than its last
    vertex, so every clique is produced once and already in lexicographic order.
    """
    if max_dim < 0:
        raise DimOutOfRange(f"max_dim must be nonnegative, got {max_dim}")
    layer: list[tuple[Face, int]] = [((v,), g.neighbor_mask(v) & _above(v)) for v in range(g.n)]
    faces = [tuple(f for f, _ in layer)]
    for _ in range(max_dim):
        nxt: list[tuple[Face, int]] = []
        for face, cand in layer:
            for w in _bits(cand):
                nxt.append((face + (w,), cand & g.neighbor_mask(w) & _above(w)))
        layer = nxt
        faces.append(tuple(f for f, _ in layer))
    return CliqueComplex(g, max_dim, tuple(faces))


def face_count(c: CliqueComplex, k: int) -> int:
    return len(c.faces(k))


def count_clique_copies(g: Graph, m: int) -> int:
    """Number of (unlabeled) K_m subgraphs, counted without storing the cliques."""
    if m < 1:
        raise ValueError(f"clique size must be positive, got {m}")
    if m == 1:
        return g.n
    masks = [g.neighbor_mask(v) for v in range(g.n)]

    def extend(cand: int, need: int) -> int:
        if need == 1:
            return cand.bit_count()
        total = 0
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            total += extend(cand & masks[w], need - 1)
        return total

    return sum(extend(masks[v] & _above(v), m - 1) for v in range(g.n))


# -- face dump ---------------------------------------------------------------


def format_faces(c: CliqueComplex) -> str:
    out = io.StringIO()
    for j, fs in enumerate(c.faces_by_dim):
        out.write(f"dim {j}\n")
        for f in fs:
            out.write(" ".join(map(str, f)) + "\n")
    return out.getvalue()


def parse_faces(stream: TextIO) -> list[list[Face]]:
    blocks: list[list[Face]] = []
    for raw in stream:
        ln = raw.strip()
        if not ln:
            continue
        if ln.startswith("dim"):
            parts = ln.split()
            if len(parts) != 2 or int(parts[1]) != len(blocks):
                raise ParseError(f"unexpected block header {ln!r}")
            blocks.append([])
            continue
        if not blocks:
            raise ParseError("face line before the first 'dim' header")
        face = tuple(int(t) for t in ln.split())
        if len(face) != len(blocks):
            raise ParseError(f"face {face} has wrong size for dim {len(blocks) - 1}")
        blocks[-1].append(face)
    return blocks
