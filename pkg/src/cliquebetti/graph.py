"""Dense undirected simple graphs, generators, edge-list I/O and distances."""

from __future__ import annotations

import io
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    EmptyParts,
    IndexOutOfRange,
    ParseError,
    SelfLoop,
    SizeMismatch,
    SubsetTooSmall,
    TooLarge,
    TooSmall,
)

MAX_EXACT_PERMUTATION_N = 9


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable graph on vertices ``0..n-1`` backed by a symmetric boolean matrix.

    Besides the matrix, every vertex keeps its neighbourhood as an int bitmask,
    which is what clique enumeration uses for common-neighbour intersection.
    """

    n: int
    adj: np.ndarray
    _masks: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise TooSmall(f"vertex count must be nonnegative, got {self.n}")
        adj = np.array(self.adj, dtype=bool, copy=True)
        if adj.shape != (self.n, self.n):
            raise SizeMismatch(f"adjacency shape {adj.shape} does not match n={self.n}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix is not symmetric")
        if adj.diagonal().any():
            raise SelfLoop("adjacency matrix has a nonzero diagonal")
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)
        masks = []
        for row in adj:
            bits = np.packbits(row, bitorder="little").tobytes()
            masks.append(int.from_bytes(bits, "little"))
        object.__setattr__(self, "_masks", tuple(masks))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return self._masks[v].bit_count()

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adj, k=1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def induced(self, vertices: Sequence[int]) -> Graph:
        idx = np.asarray(vertices, dtype=np.intp)
        return Graph(len(idx), self.adj[np.ix_(idx, idx)])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = np.asarray(perm, dtype=np.intp)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.n)
        return Graph(self.n, self.adj[np.ix_(inv, inv)])


def _check_subset(n: int, members: Iterable[int]) -> list[int]:
    out = sorted(set(int(v) for v in members))
    if out and (out[0] < 0 or out[-1] >= n):
        raise IndexOutOfRange(f"vertex subset has indices outside [0, {n})")
    return out


@dataclass(frozen=True)
class VertexSubset:
    n: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(_check_subset(self.n, self.members)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


# -- construction -----------------------------------------------------------


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        adj[u, v] = adj[v, u] = True
    return Graph(n, adj)


def empty(n: int) -> Graph:
    return Graph(n, np.zeros((n, n), dtype=bool))


def complete(n: int) -> Graph:
    return Graph(n, ~np.eye(n, dtype=bool))


def cycle(n: int) -> Graph:
    if n < 3:
        raise TooSmall(f"cycle needs at least 3 vertices, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """Vertex 0 joined to every other vertex."""
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    if len(part_sizes) == 0:
        raise EmptyParts("at least one part is required")
    if any(s <= 0 for s in part_sizes):
        raise ValueError(f"part sizes must be positive, got {list(part_sizes)}")
    labels = np.repeat(np.arange(len(part_sizes)), part_sizes)
    return Graph(len(labels), labels[:, None] != labels[None, :])


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p); each pair ``u < v`` is decided by one uniform draw in row-major order."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, k=1)
    hit = rng.random(len(iu[0])) < p
    adj = np.zeros((n, n), dtype=bool)
    adj[iu[0][hit], iu[1][hit]] = True
    return Graph(n, adj | adj.T)


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    adj = np.zeros((n, n), dtype=bool)
    off = 0
    for g in graphs:
        adj[off : off + g.n, off : off + g.n] = g.adj
        off += g.n
    return Graph(n, adj)


# -- distances --------------------------------------------------------------


def _sym_diff(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(np.triu(a ^ b, k=1)))


def labeled_distance(g: Graph, h: Graph) -> Fraction:
    """|E(g) xor E(h)| / n^2 with vertex labels held fixed."""
    if g.n != h.n:
        raise SizeMismatch(f"graphs have {g.n} and {h.n} vertices")
    if g.n == 0:
        return Fraction(0)
    return Fraction(_sym_diff(g.adj, h.adj), g.n * g.n)


def permutation_distance(g: Graph, h: Graph, chunk: int = 40320) -> Fraction:
    """Minimum labeled distance over all relabelings of ``h`` (brute force, n <= 9)."""
    if g.n != h.n:
        raise SizeMismatch(f"graphs have {g.n} and {h.n} vertices")
    n = g.n
    if n > MAX_EXACT_PERMUTATION_N:
        raise TooLarge(f"exact permutation distance is limited to n <= {MAX_EXACT_PERMUTATION_N}")
    if n == 0:
        return Fraction(0)
    iu = np.triu_indices(n, k=1)
    target = g.adj[iu]
    best = len(target)
    perms = itertools.permutations(range(n))
    while True:
        block = np.array(list(itertools.islice(perms, chunk)), dtype=np.intp)
        if block.size == 0:
            break
        # permuted[b, e] = h.adj[p[i_e], p[j_e]]
        permuted = h.adj[block[:, iu[0]], block[:, iu[1]]]
        diffs = np.count_nonzero(permuted ^ target, axis=1)
        best = min(best, int(diffs.min()))
        if best == 0:
            break
    return Fraction(best, n * n)


# -- surgery ----------------------------------------------------------------


def split_parts(members: Sequence[int], parts: int) -> list[list[int]]:
    """Consecutive floor/ceil split; the first ``len % parts`` parts get the extra vertex."""
    return [list(map(int, a)) for a in np.array_split(np.asarray(sorted(members)), parts)]


def apply_surgery(g: Graph, s: VertexSubset | Iterable[int], parts: int) -> Graph:
    """Cut ``s`` off from the rest and rewire it as a complete ``parts``-partite graph."""
    members = list(s.members) if isinstance(s, VertexSubset) else _check_subset(g.n, s)
    if parts < 2:
        raise ValueError(f"surgery needs at least 2 parts, got {parts}")
    if len(members) < parts:
        raise SubsetTooSmall(f"|S|={len(members)} is smaller than parts={parts}")
    adj = np.array(g.adj, copy=True)
    inside = np.zeros(g.n, dtype=bool)
    inside[members] = True
    adj[np.ix_(inside, ~inside)] = False
    adj[np.ix_(~inside, inside)] = False
    label = np.full(g.n, -1)
    for i, block in enumerate(split_parts(members, parts)):
        label[block] = i
    idx = np.asarray(members, dtype=np.intp)
    adj[np.ix_(idx, idx)] = label[idx][:, None] != label[idx][None, :]
    return Graph(g.n, adj)


# -- edge-list format -------------------------------------------------------


def parse_edge_list(stream: TextIO) -> Graph:
    lines = [ln.strip() for ln in stream]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("edge list is empty (missing 'n m' header)")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header line {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges but {len(body)} were given")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"bad edge line {ln!r}") from exc
    try:
        return from_edge_list(n, edges)
    except (IndexOutOfRange, SelfLoop) as exc:
        raise ParseError(str(exc)) from exc


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    out = io.StringIO()
    out.write(f"{g.n} {len(edges)}\n")
    for u, v in edges:
        out.write(f"{u} {v}\n")
    return out.getvalue()


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g))
