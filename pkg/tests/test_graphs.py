import itertools

import networkx as nx
import numpy as np
import pytest

from codesparse.errors import LengthMismatch
from codesparse.gf2 import BitVector, enumerate_codewords, full_code, hamming_7_4, repetition_code, zero_code
from codesparse.graphs import (
    Graph,
    complete_graph,
    count_thin,
    cut_space,
    cycle_graph,
    disjoint_hitting_sets,
    edge_connectivity,
    find_thin,
    is_hitting_set,
    is_proper_sparsifier,
    is_thin,
    is_thin_by_vertex_subsets,
    path_graph,
    proper_sparsifier_search,
    random_connected_graph,
    thin_size_bound,
)
from codesparse.sparsify import Alpha, HALF, verify

from conftest import span_bruteforce

K3 = complete_graph(3)  # edges (0,1), (0,2), (1,2)
K4 = complete_graph(4)


def to_nx(g: Graph, S: BitVector | None = None) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.num_vertices))
    for i, e in enumerate(g.edges):
        if S is None or (S.bits >> i) & 1:
            h.add_edge(*e)
    return h


def random_graph(rng, nv, ne, connected=True):
    if connected:
        parallel = bool(rng.integers(0, 2)) or ne > nv * (nv - 1) // 2
        return random_connected_graph(nv, ne, rng, parallel=parallel)
    edges = []
    while len(edges) < ne:
        u, v = rng.choice(nv, size=2, replace=False)
        edges.append((int(u), int(v)))
    return Graph(nv, tuple(edges))


def thin_by_subsets_oracle(g, alpha):
    """Count thin edge sets by checking every vertex cut directly."""
    cuts = []
    for mask in range(1, (1 << g.num_vertices) - 1):
        side = {v for v in range(g.num_vertices) if (mask >> v) & 1}
        cuts.append(g.vertex_cut(side).bits)
    count = 0
    best = 0
    for t in range(1 << g.num_edges):
        if all(alpha.q * bin(c & t).count("1") <= alpha.p * bin(c).count("1") for c in cuts):
            count += 1
            best = max(best, bin(t).count("1"))
    return count, best


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 2),))
    assert Graph(3, ((0, 1), (0, 1))).component_count == 2


def test_cut_space_examples():
    p2 = cut_space(path_graph(2))
    assert p2.k == 1
    assert {str(w) for w in enumerate_codewords(p2)} == {"0", "1"}
    k3 = cut_space(K3)
    assert k3.k == 2
    assert {str(w) for w in enumerate_codewords(k3)} == {"000", "110", "101", "011"}


def test_cut_space_rank_and_cuts():
    rng = np.random.default_rng(1)
    for _ in range(60):
        nv = int(rng.integers(1, 9))
        g = random_graph(rng, nv, int(rng.integers(0, 14)), connected=False) if nv > 1 else Graph(1, ())
        code = cut_space(g)
        assert code.k == nv - nx.number_connected_components(to_nx(g))
        vertex_cuts = {g.vertex_cut({v for v in range(nv) if (m >> v) & 1}).bits for m in range(1 << nv)}
        assert vertex_cuts == span_bruteforce(code)


def test_is_thin_examples():
    e12 = BitVector.from_indices(3, [0])
    rep = is_thin(K3, e12, HALF)
    assert rep.thin and rep.witness_cut is None
    bad = is_thin(K3, BitVector.from_indices(3, [0, 1]), HALF)
    assert not bad.thin
    assert bad.witness_cut == frozenset({0})
    assert K3.vertex_cut(bad.witness_cut).bits == 0b011
    assert bad.cut_hits * 2 > bad.cut_size
    for alpha in (Alpha(0, 1), Alpha(1, 3), HALF, Alpha(1, 1)):
        assert is_thin(K4, BitVector.zeros(6), alpha).thin
    with pytest.raises(LengthMismatch):
        is_thin(K3, BitVector.zeros(4), HALF)


@pytest.mark.parametrize("alpha", [HALF, Alpha(1, 3), Alpha(2, 3), Alpha(1, 4)])
def test_thin_three_paths_agree(alpha):
    rng = np.random.default_rng(13)
    for _ in range(12):
        nv = int(rng.integers(2, 7))
        g = random_graph(rng, nv, int(rng.integers(nv - 1, 11)))
        for t in range(1 << g.num_edges):
            T = BitVector(g.num_edges, t)
            direct = is_thin(g, T, alpha)
            dual = is_thin(g, T, alpha, method="dual")
            assert direct == dual
            assert direct.thin == is_thin_by_vertex_subsets(g, T, alpha)
            assert direct.thin == verify(cut_space(g), ~T, alpha.complement()).passed
            if not direct.thin:
                cut = g.vertex_cut(direct.witness_cut)
                assert alpha.q * (cut & T).weight() > alpha.p * cut.weight()


def test_count_thin_examples():
    k3 = count_thin(K3, HALF)
    assert k3.count == 4 and k3.count >= 2 ** (3 - 2)
    assert k3.size_histogram == {0: 1, 1: 3}
    assert count_thin(Graph(4, ()), HALF).count == 1
    k4 = count_thin(K4, HALF)
    # empty set, 6 single edges, 3 perfect matchings
    assert k4.count == 10
    assert k4.size_histogram == {0: 1, 1: 6, 2: 3}
    assert thin_by_subsets_oracle(K4, HALF) == (10, 2)


def test_count_thin_against_oracle():
    rng = np.random.default_rng(4)
    for _ in range(10):
        nv = int(rng.integers(2, 6))
        g = random_graph(rng, nv, int(rng.integers(nv - 1, 10)))
        for alpha in (HALF, Alpha(1, 3)):
            rep = count_thin(g, alpha)
            count, best = thin_by_subsets_oracle(g, alpha)
            assert (rep.count, rep.max_size) == (count, best)
        assert count_thin(g, HALF).count >= 2 ** (g.num_edges - g.num_vertices + 1)


def test_find_thin_k4():
    T, rep, trace = find_thin(K4, 1)
    assert rep.thin and is_thin(K4, T, HALF).thin
    assert T.weight() <= 2


def test_find_thin_tree_and_k3():
    tree = Graph(5, ((0, 1), (1, 2), (1, 3), (3, 4)))
    T, rep, _ = find_thin(tree, 1)
    assert is_thin(tree, T, HALF).thin
    T, rep, _ = find_thin(K3, 2)
    assert T == BitVector.zeros(3)
    assert rep.thin and rep.alpha == Alpha(1, 4)


def test_find_thin_random_graphs():
    rng = np.random.default_rng(31)
    for i in range(8):
        nv = int(rng.integers(3, 6))
        g = random_graph(rng, nv, int(rng.integers(nv + 2, 19)))
        for ell in (1, 2):
            T, rep, trace = find_thin(g, ell, seed=i)
            assert is_thin(g, T, Alpha(1, 2**ell)).thin
            bound = thin_size_bound(g, ell)
            if bound > 0:
                assert T.weight() >= bound


def test_hitting_set_examples():
    k3 = cut_space(K3)
    assert is_hitting_set(k3, BitVector.from_indices(3, [0, 1]))
    assert not is_hitting_set(k3, BitVector.zeros(3))
    assert is_hitting_set(zero_code(3), BitVector.zeros(3))


def test_hitting_set_is_connectivity():
    rng = np.random.default_rng(8)
    for _ in range(15):
        nv = int(rng.integers(2, 7))
        g = random_graph(rng, nv, int(rng.integers(nv - 1, 12)))
        code = cut_space(g)
        for t in range(min(1 << g.num_edges, 300)):
            S = BitVector(g.num_edges, int(rng.integers(0, 1 << g.num_edges)))
            assert is_hitting_set(code, S) == nx.is_connected(to_nx(g, S))


def test_disjoint_hitting_sets():
    rep = disjoint_hitting_sets(cut_space(K4), seed=0)
    assert rep.d >= 2
    for S in rep.sets:
        h = to_nx(K4, S)
        assert nx.is_tree(h)
    for a, b in itertools.combinations(rep.sets, 2):
        assert not a.bits & b.bits
    tree = Graph(4, ((0, 1), (1, 2), (1, 3)))
    rep = disjoint_hitting_sets(cut_space(tree))
    assert rep.d == 1 and rep.sets[0] == BitVector.ones(3)
    assert disjoint_hitting_sets(zero_code(5)).d == 0


def test_disjoint_hitting_sets_bounded_by_connectivity():
    rng = np.random.default_rng(44)
    for i in range(10):
        nv = int(rng.integers(3, 7))
        g = random_graph(rng, nv, int(rng.integers(nv, 16)))
        rep = disjoint_hitting_sets(cut_space(g), seed=i)
        # every cut meets every hitting set
        assert rep.d <= edge_connectivity(g)
        for S in rep.sets:
            assert nx.is_connected(to_nx(g, S))


def proper_oracle(code, alpha):
    words = [c for c in span_bruteforce(code) if c]
    for s in range(1 << code.n):
        if all(alpha.q * bin(c & s).count("1") >= alpha.p * bin(c).count("1")
               and bin(c & s).count("1") < bin(c).count("1") for c in words):
            return True
    return False


def test_proper_search_examples():
    rep = proper_sparsifier_search(repetition_code(3), HALF)
    assert rep.witness.weight() == 2 and rep.exhaustive
    for n in (1, 2, 4):
        res = proper_sparsifier_search(full_code(n), Alpha(1, 3))
        assert res.definitive_none
    res = proper_sparsifier_search(hamming_7_4(), HALF)
    assert res.definitive_none and res.examined == 128
    assert not proper_oracle(hamming_7_4(), HALF)


def test_proper_search_matches_oracle():
    from codesparse.gf2 import random_code

    rng = np.random.default_rng(90)
    for _ in range(30):
        n = int(rng.integers(2, 10))
        code = random_code(n, int(rng.integers(1, 4)), rng)
        for alpha in (HALF, Alpha(1, 3)):
            res = proper_sparsifier_search(code, alpha)
            assert (res.witness is not None) == proper_oracle(code, alpha)
            if res.witness is not None:
                assert is_proper_sparsifier(code, res.witness, alpha)


def test_proper_search_sampling_mode():
    code = repetition_code(40)
    res = proper_sparsifier_search(code, HALF, trials=50, seed=2)
    assert not res.exhaustive
    assert res.witness is not None and is_proper_sparsifier(code, res.witness, HALF)


def test_edge_connectivity():
    assert edge_connectivity(K4) == 3
    assert edge_connectivity(path_graph(5)) == 1
    assert edge_connectivity(Graph(4, ((0, 1), (2, 3)))) == 0
    assert edge_connectivity(cycle_graph(6)) == 2
    rng = np.random.default_rng(2)
    for _ in range(20):
        nv = int(rng.integers(2, 8))
        g = random_graph(rng, nv, int(rng.integers(nv - 1, 15)))
        brute = min(g.vertex_cut({v for v in range(nv) if (m >> v) & 1}).weight()
                    for m in range(1, (1 << nv) - 1))
        assert edge_connectivity(g) == brute
