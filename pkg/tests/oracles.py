"""Brute-force reference computations, deliberately sharing no code with the library."""

import itertools

import numpy as np


def edge_set(g):
    return {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.adj[u][v]}


def brute_cliques(g, size):
    """All vertex sets of the given size that are cliques, by checking every pair."""
    return [
        c
        for c in itertools.combinations(range(g.n), size)
        if all(g.adj[u][v] for u, v in itertools.combinations(c, 2))
    ]


def components(g):
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edge_set(g):
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.n)})


def dense_rank_mod2(rows):
    """Rank of a 0/1 matrix (list of lists) by textbook Gauss-Jordan over GF(2)."""
    a = np.array(rows, dtype=np.uint8) % 2
    if a.size == 0:
        return 0
    rank = 0
    n_rows, n_cols = a.shape
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r, col]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(n_rows):
            if r != rank and a[r, col]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def span_rank(vectors):
    """log2 of the size of the GF(2) span, found by closing the set under XOR."""
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return len(span).bit_length() - 1


def boundary_rows(faces_k, faces_km1):
    """Dense boundary matrix from face tuples, via set membership."""
    col = {f: i for i, f in enumerate(faces_km1)}
    rows = []
    for f in faces_k:
        row = [0] * len(faces_km1)
        for sub in itertools.combinations(f, len(f) - 1):
            row[col[sub]] = 1
        rows.append(row)
    return rows


def brute_betti(g, k):
    """beta_k from dense ranks over brute-force clique lists."""
    fk = brute_cliques(g, k + 1)
    fk1 = brute_cliques(g, k + 2)
    r_k = 0 if k == 0 else dense_rank_mod2(boundary_rows(fk, brute_cliques(g, k)))
    r_k1 = dense_rank_mod2(boundary_rows(fk1, fk)) if fk1 else 0
    return len(fk) - r_k - r_k1
