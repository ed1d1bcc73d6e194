import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquebetti.complex import build_clique_complex, count_clique_copies
from cliquebetti.errors import InvalidParams, SampleTooLarge
from cliquebetti.graph import Graph, complete, complete_multipartite, empty, erdos_renyi
from cliquebetti.homology import betti, simplicial_rank
from cliquebetti.testers import (
    AdjacencyOracle,
    TesterParams,
    betti_test,
    chain_density_bound,
    closeness_density_bound,
    delta_bound,
    k_face_bound_chain,
    sample_induced,
    tolerant_clique_free_test,
    tower,
)

from oracles import brute_cliques
from test_graph import graphs


def rng(seed=0):
    return np.random.default_rng(seed)


# -- sampling ------------------------------------------------------------------


def test_sample_induced_examples():
    assert sample_induced(complete(10), 4, rng()) == complete(4)
    assert sample_induced(empty(10), 5, rng()) == empty(5)
    k33 = complete_multipartite([3, 3])
    assert sample_induced(k33, 6, rng()) == k33
    with pytest.raises(SampleTooLarge):
        sample_induced(k33, 7, rng())


@pytest.mark.parametrize("q", [0, 1, 2, 5, 9])
def test_sample_induced_query_count(q):
    oracle = AdjacencyOracle(erdos_renyi(9, 0.5, 2))
    sample_induced(oracle, q, rng(q))
    assert oracle.queries == math.comb(q, 2)


def test_sample_is_an_induced_subgraph():
    g = erdos_renyi(20, 0.4, 5)
    oracle = AdjacencyOracle(g)
    r = rng(3)
    picked = np.sort(np.random.default_rng(3).choice(20, size=7, replace=False))
    sub = sample_induced(oracle, 7, r)
    assert sub == g.induced([int(v) for v in picked])


# -- tolerant clique-freeness tester ---------------------------------------------


def params(**kw):
    base = dict(epsilon=Fraction(1, 10), epsilon1=Fraction(1, 100), sample_size=8, trials=6, seed=1)
    base.update(kw)
    return TesterParams(**base)


@pytest.mark.parametrize("q, trials", [(4, 1), (6, 3), (10, 8)])
def test_queries_used_exact(q, trials):
    g = erdos_renyi(30, 0.5, 9)
    rep = tolerant_clique_free_test(g, 3, params(sample_size=q, trials=trials))
    assert rep.queries_used == trials * math.comb(q, 2)
    assert len(rep.trial_copies) == trials


def test_free_graph_always_accepts():
    k33 = complete_multipartite([3, 3])
    for seed in range(20):
        rep = tolerant_clique_free_test(k33, 3, params(sample_size=6, seed=seed))
        assert rep.accepted and rep.observed_density == 0


def test_complete_graph_rejects():
    rep = tolerant_clique_free_test(complete(12), 3, params())
    assert rep.observed_density == 1
    assert not rep.accepted


def test_observed_density_is_mean_over_trials():
    g = erdos_renyi(25, 0.6, 4)
    rep = tolerant_clique_free_test(g, 3, params(sample_size=7, trials=5))
    assert rep.observed_density == Fraction(sum(rep.trial_copies), 5 * math.comb(7, 3))


def test_default_threshold_is_markov_bound():
    g = erdos_renyi(30, 0.5, 1)
    p = params()
    rep = tolerant_clique_free_test(g, 3, p)
    bound = Fraction(1, 100) * 3 * 2 * 30 / 29
    assert closeness_density_bound(30, 3, p.epsilon1) == bound
    assert rep.density_threshold == 3 * bound


def test_invalid_params():
    g = complete(10)
    for bad in (
        params(epsilon1=Fraction(1, 10)),
        params(epsilon1=0),
        params(epsilon=Fraction(3, 2)),
        params(sample_size=2),
        params(sample_size=11),
        params(trials=0),
        params(density_threshold=2),
    ):
        with pytest.raises(InvalidParams):
            tolerant_clique_free_test(g, 3, bad)
    with pytest.raises(InvalidParams):
        tolerant_clique_free_test(g, 1, params())


def test_determinism_and_parallel_agreement():
    g = erdos_renyi(40, 0.5, 6)
    a = tolerant_clique_free_test(g, 3, params(seed=17))
    b = tolerant_clique_free_test(g, 3, params(seed=17))
    c = tolerant_clique_free_test(g, 3, params(seed=17), jobs=2)
    assert a.to_dict() == b.to_dict() == c.to_dict()
    assert a.to_dict() != tolerant_clique_free_test(g, 3, params(seed=18)).to_dict()


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=6, max_n=10), st.integers(0, 1000), st.fractions(0, 1), st.fractions(0, 1))
def test_threshold_monotone(g, seed, t1, t2):
    lo, hi = sorted((t1, t2))
    a = tolerant_clique_free_test(g, 3, params(sample_size=5, seed=seed, density_threshold=lo))
    b = tolerant_clique_free_test(g, 3, params(sample_size=5, seed=seed, density_threshold=hi))
    assert a.observed_density == b.observed_density
    assert not (a.accepted and not b.accepted)


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=5, max_n=10), st.integers(0, 1000))
def test_one_sided_on_free_inputs(g, seed):
    if brute_cliques(g, 3):
        return
    rep = tolerant_clique_free_test(g, 3, params(sample_size=5, seed=seed, density_threshold=0))
    assert rep.accepted and rep.observed_density == 0


def test_dense_random_graph_rejected_at_defaults():
    g = erdos_renyi(60, 0.9, 1)
    p = TesterParams(epsilon=Fraction(1, 10), epsilon1=Fraction(1, 100))
    rejects = sum(
        not tolerant_clique_free_test(g, 3, TesterParams(p.epsilon, p.epsilon1, seed=s)).accepted
        for s in range(100)
    )
    assert rejects >= 67


def test_close_side_acceptance_empirical():
    # K_{20,20} plus a few edges inside one side: within epsilon1 of triangle-free
    base = complete_multipartite([20, 20])
    adj = np.array(base.adj)
    extra = [(0, 1), (2, 3), (4, 5), (6, 7)]
    for u, v in extra:
        adj[u, v] = adj[v, u] = True
    g = Graph(40, adj)
    eps1 = Fraction(len(extra), 40 * 40)
    accepts = sum(
        tolerant_clique_free_test(
            g, 3, TesterParams(Fraction(1, 10), eps1, seed=s)
        ).accepted
        for s in range(100)
    )
    assert accepts >= 67


# -- Betti tester ----------------------------------------------------------------------


def test_betti_test_examples():
    rep = betti_test(complete_multipartite([30, 30]), 1, "0.1", "0.01", seed=7)
    assert rep.accepted and rep.observed_density == 0
    assert rep.guarantee_regime == "theorem"
    rep = betti_test(erdos_renyi(60, 0.9, 1), 1, "0.1", "0.01", seed=7)
    assert not rep.accepted
    rep = betti_test(empty(10), 0, "0.1", "0.01", seed=7)
    assert rep.accepted


def test_betti_test_parameters_recorded():
    rep = betti_test(erdos_renyi(30, 0.3, 2), 1, "0.1", "0.01", seed=3)
    d = rep.to_dict()
    assert d["schema"] == 1 and d["clique_size"] == 3
    assert d["epsilon2"] == 0.05 and d["epsilon1"] == 0.03
    assert d["delta_bound"]["value"] == pytest.approx(1 / 30)
    assert d["density_threshold"] <= 1


def test_betti_test_heuristic_regime():
    g = erdos_renyi(20, 0.3, 2)
    assert betti_test(g, 1, "0.1", "0.05", seed=1).guarantee_regime == "heuristic"
    assert betti_test(g, 2, "0.1", "0.01", seed=1).guarantee_regime == "heuristic"
    # k = 1 with eps1 = 3 delta >= eps/2
    assert betti_test(g, 1, "0.1", "0.02", seed=1).guarantee_regime == "heuristic"


def test_betti_test_invalid():
    g = complete(10)
    for eps, delta, kw in (("0", "0.01", {}), ("1.5", "0.01", {}), ("0.1", "0", {}),
                           ("0.1", "1", {}), ("0.1", "0.01", {"split_fraction": 1})):
        with pytest.raises(InvalidParams):
            betti_test(g, 1, eps, delta, **kw)
    with pytest.raises(InvalidParams):
        betti_test(g, -1, "0.1", "0.01")


def test_betti_test_small_graph_accepts_without_queries():
    rep = betti_test(complete(2), 1, "0.1", "0.01", seed=0)
    assert rep.accepted and rep.queries_used == 0


# -- bounds ---------------------------------------------------------------------


def test_delta_bound_spot_values():
    assert delta_bound("0.02", 0).value == Fraction(1, 5)
    assert delta_bound("0.09", 1).value == Fraction(3, 100)
    b = delta_bound("0.5", 2)
    assert b.suppressed and b.tower_height == 1280
    assert str(b) == "tower-suppressed (height 1280)"
    assert delta_bound("0.1", 0).value == pytest.approx(math.sqrt(0.2))
    with pytest.raises(InvalidParams):
        delta_bound(0, 1)
    with pytest.raises(InvalidParams):
        delta_bound(1, 1)


def test_tower():
    assert [tower(h) for h in range(5)] == [1, 2, 4, 16, 65536]


def test_k_face_bound_chain():
    assert k_face_bound_chain(60, 1, "0.1") == 3600
    assert k_face_bound_chain(60, 1, 0) == 0
    assert k_face_bound_chain(10**6, 3, "0.5") == 10**30 // 240
    assert chain_density_bound(60, 1, "0.1") == Fraction(3600, math.comb(60, 3))


def test_chain_bound_cross_check():
    checked = 0
    for seed in range(400):
        if checked == 50:
            break
        r = np.random.default_rng(seed)
        n, p = int(r.integers(5, 11)), float(r.choice([0.1, 0.2, 0.3]))
        g = erdos_renyi(n, p, seed)
        for k in (0, 1):
            c = build_clique_complex(g, k + 1)
            d_k = len(c.faces(k))
            if d_k == 0:
                continue
            delta = Fraction(simplicial_rank(c, k + 1), d_k)
            if not 0 < delta < 1:
                continue
            assert count_clique_copies(g, k + 2) <= k_face_bound_chain(n, k, delta)
            checked += 1
    assert checked >= 50


@pytest.mark.parametrize("delta", [Fraction(1, 10), Fraction(3, 10)])
def test_reduction_consistency(corpus, delta):
    for _, g in corpus:
        for k in range(3):
            c = build_clique_complex(g, k + 1)
            d_k = len(c.faces(k))
            if betti(c, k) >= (1 - delta) * d_k:
                assert simplicial_rank(c, k + 1) <= delta * d_k
