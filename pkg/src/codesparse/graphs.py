"""Cut spaces of graphs, thin edge sets, hitting sets and edge connectivity.

Edge ``i`` of a graph is coordinate ``i`` of its cut space.  An edge set T
is alpha-thin when it holds at most an alpha fraction of every cut, which is
the same as its complement being a (1 - alpha)-sparsifier of the cut space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels as K
from ._chunks import map_chunks, split_range
from .bounds import C_CONST
from .errors import LengthMismatch, TheoremViolation
from .gf2 import DEFAULT_MAX_K, BitVector, LinearCode
from .sparsify import (
    DEFAULT_MAX_N,
    Alpha,
    CensusReport,
    IterationTrace,
    count_sparsifiers,
    iterated_sparsifier,
    verify,
)


class DisjointSet:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True, eq=False)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge {i} = ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise ValueError(f"edge {i} is a self-loop at vertex {u}")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def component_count(self) -> int:
        return self.num_vertices - _spanning_rank(self.num_vertices, self.edges)

    @cached_property
    def _cut_space(self) -> LinearCode:
        return _build_cut_space(self)

    def is_connected(self) -> bool:
        return self.component_count == 1

    def subgraph_is_connected(self, S: BitVector) -> bool:
        """Whether (V, S) is connected."""
        chosen = [self.edges[i] for i in S.indices()]
        return self.num_vertices - _spanning_rank(self.num_vertices, chosen) <= 1

    def vertex_cut(self, side: set[int] | frozenset[int]) -> BitVector:
        bits = 0
        for i, (u, v) in enumerate(self.edges):
            if (u in side) != (v in side):
                bits |= 1 << i
        return BitVector(self.num_edges, bits)

    def cut_sides(self, c: BitVector) -> frozenset[int]:
        """Recover a vertex side of a cut codeword: the smaller side, ties to the one holding vertex 0."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for i, (u, v) in enumerate(self.edges):
            crossing = (c.bits >> i) & 1
            adj[u].append((v, crossing))
            adj[v].append((u, crossing))
        colour = [-1] * self.num_vertices
        for root in range(self.num_vertices):
            if colour[root] >= 0:
                continue
            colour[root] = 0
            stack = [root]
            while stack:
                x = stack.pop()
                for y, crossing in adj[x]:
                    if colour[y] < 0:
                        colour[y] = colour[x] ^ crossing
                        stack.append(y)
                    elif colour[y] != colour[x] ^ crossing:
                        raise ValueError("vector is not a cut of this graph")
        a = frozenset(v for v in range(self.num_vertices) if colour[v] == 0)
        b = frozenset(range(self.num_vertices)) - a
        if len(b) < len(a) or (len(b) == len(a) and 0 in b):
            return b
        return a


def _spanning_rank(num_vertices: int, edges: Sequence[tuple[int, int]]) -> int:
    dsu = DisjointSet(num_vertices)
    return sum(dsu.union(u, v) for u, v in edges)


def complete_graph(nv: int) -> Graph:
    return Graph(nv, tuple((u, v) for u in range(nv) for v in range(u + 1, nv)))


def path_graph(nv: int) -> Graph:
    return Graph(nv, tuple((i, i + 1) for i in range(nv - 1)))


def cycle_graph(nv: int) -> Graph:
    return Graph(nv, tuple((i, (i + 1) % nv) for i in range(nv)))


def random_connected_graph(nv: int, ne: int, rng: np.random.Generator, parallel: bool = False) -> Graph:
    """Random spanning tree on ``nv`` vertices plus ``ne - nv + 1`` random extra edges."""
    if ne < nv - 1:
        raise ValueError("too few edges for a connected graph")
    order = rng.permutation(nv)
    edges = [(int(order[i]), int(order[rng.integers(0, i)])) for i in range(1, nv)]
    present = {frozenset(e) for e in edges}
    max_simple = nv * (nv - 1) // 2
    while len(edges) < ne:
        u, v = (int(x) for x in rng.choice(nv, size=2, replace=False))
        if not parallel and frozenset((u, v)) in present:
            if len(present) >= max_simple:
                raise ValueError("too many edges for a simple graph")
            continue
        present.add(frozenset((u, v)))
        edges.append((u, v))
    return Graph(nv, tuple(edges))


def cut_space(g: Graph) -> LinearCode:
    """Code over F_2^E spanned by the vertex stars; its dimension is |V| - components."""
    return g._cut_space


def _build_cut_space(g: Graph) -> LinearCode:
    stars = [0] * g.num_vertices
    for i, (u, v) in enumerate(g.edges):
        stars[u] |= 1 << i
        stars[v] |= 1 << i
    code = LinearCode.from_ints(stars, g.num_edges)
    if code.k != g.num_vertices - g.component_count:
        raise TheoremViolation(
            "cut space dimension differs from |V| - r",
            {"V": g.num_vertices, "r": g.component_count, "k": code.k},
        )
    return code


@dataclass(frozen=True)
class ThinReport:
    alpha: Alpha
    T: BitVector
    thin: bool
    witness_cut: frozenset[int] | None = None
    cut_size: int | None = None
    cut_hits: int | None = None

    def as_dict(self) -> dict:
        out = {"alpha": str(self.alpha), "T": [i + 1 for i in self.T.indices()], "thin": self.thin}
        if self.witness_cut is not None:
            out["witness_cut"] = sorted(self.witness_cut)
            out["cut_size"] = self.cut_size
            out["cut_hits"] = self.cut_hits
        return out


def _edge_set(g: Graph, T: BitVector) -> None:
    if T.length != g.num_edges:
        raise LengthMismatch(f"edge set length {T.length} != |E| = {g.num_edges}")


def is_thin(
    g: Graph, T: BitVector, alpha: Alpha, method: str = "cuts", max_k: int = DEFAULT_MAX_K
) -> ThinReport:
    """Check |T ∩ cut| <= alpha |cut| for every cut.

    ``cuts`` scans the cut-space codewords directly; ``dual`` asks whether
    E minus T is a (1 - alpha)-sparsifier.  Both report the same first
    violating cut.
    """
    _edge_set(g, T)
    code = cut_space(g)
    bad = None
    if method == "cuts":
        for c in code.codeword_bits(max_k):
            if alpha.q * (c & T.bits).bit_count() > alpha.p * c.bit_count():
                bad = c
                break
    elif method == "dual":
        verdict = verify(code, ~T, alpha.complement(), max_k)
        bad = None if verdict.passed else verdict.violation.c.bits
    else:
        raise ValueError(f"unknown method {method!r}")
    if bad is None:
        return ThinReport(alpha, T, True)
    cut = BitVector(g.num_edges, bad)
    return ThinReport(alpha, T, False, g.cut_sides(cut), cut.weight(), (bad & T.bits).bit_count())


def is_thin_by_vertex_subsets(g: Graph, T: BitVector, alpha: Alpha) -> bool:
    """Cross-check oracle: test every vertex subset (|V| <= 16)."""
    _edge_set(g, T)
    if g.num_vertices > 16:
        raise ValueError("vertex-subset oracle limited to 16 vertices")
    for mask in range(1, (1 << g.num_vertices) - 1):
        side = {v for v in range(g.num_vertices) if (mask >> v) & 1}
        across = hits = 0
        for i, (u, v) in enumerate(g.edges):
            if (u in side) != (v in side):
                across += 1
                hits += (T.bits >> i) & 1
        if alpha.q * hits > alpha.p * across:
            return False
    return True


def count_thin(
    g: Graph,
    alpha: Alpha,
    threads: int = 1,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> CensusReport:
    """Exact number of alpha-thin edge sets, counted as (1 - alpha)-sparsifiers of the cut space.

    Histogram keys are |T| = |E| - |S|.
    """
    code = cut_space(g)
    report = count_sparsifiers(code, alpha.complement(), threads, max_n, max_k)
    m = g.num_edges
    hist = {m - s: c for s, c in report.size_histogram.items()}
    return CensusReport(
        n=m,
        k=code.k,
        alpha=alpha,
        count=report.count,
        lower_bound=report.lower_bound,
        size_histogram=dict(sorted(hist.items())),
        min_size=min(hist),
        max_size=max(hist),
    )


def thin_size_bound(g: Graph, ell: int) -> float:
    """|E|/2^ell - c sqrt(|E| (|V| - 1)); the guaranteed size of a 2^-ell-thin set."""
    m, nv = g.num_edges, g.num_vertices
    return m / 2**ell - C_CONST * (m * max(nv - 1, 0)) ** 0.5


def find_thin(
    g: Graph,
    ell: int,
    mode: str = "exact",
    restarts: int = 64,
    seed: int = 0,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> tuple[BitVector, ThinReport, IterationTrace]:
    """A large 2^-ell-thin edge set: the complement of an iterated sparsifier of the cut space."""
    trace = iterated_sparsifier(cut_space(g), ell, mode, restarts, seed, max_n, max_k)
    T = ~trace.final_S
    report = is_thin(g, T, Alpha(1, 2**ell), max_k=max_k)
    bound = thin_size_bound(g, ell)
    if not report.thin or (bound > 0 and T.weight() < bound - 1e-9):
        raise TheoremViolation(
            "iterated construction did not give a large thin set",
            {"T": [i + 1 for i in T.indices()], "thin": report.thin, "size_bound": bound},
        )
    return T, report, trace


def is_hitting_set(code: LinearCode, S: BitVector, max_k: int = DEFAULT_MAX_K) -> bool:
    """Every nonzero codeword has a coordinate in S."""
    if S.length != code.n:
        raise LengthMismatch(f"set length {S.length} != code length {code.n}")
    s = S.bits
    return all(c & s for c in code.codeword_bits(max_k)[1:])


@dataclass(frozen=True)
class HittingSetReport:
    sets: tuple[BitVector, ...]

    @property
    def d(self) -> int:
        return len(self.sets)

    def as_dict(self) -> dict:
        return {"d": self.d, "sets": [[i + 1 for i in s.indices()] for s in self.sets]}


def _greedy_hitting_sets(words: list[int], n: int, rng: np.random.Generator) -> list[int]:
    remaining = (1 << n) - 1
    found = []
    while words and all(c & remaining for c in words):
        hit = 0
        for c in words:
            if not c & hit:
                options = BitVector(n, c & remaining).indices()
                hit |= 1 << options[int(rng.integers(len(options)))]
        for i in rng.permutation(BitVector(n, hit).indices()):
            smaller = hit & ~(1 << int(i))
            if all(c & smaller for c in words):
                hit = smaller
        found.append(hit)
        remaining &= ~hit
    return found


def disjoint_hitting_sets(
    code: LinearCode, seed: int = 0, restarts: int = 8, max_k: int = DEFAULT_MAX_K
) -> HittingSetReport:
    """Greedily peel off minimal hitting sets; d is a lower bound on the true maximum.

    Each restart grows a hitting set inside the unused coordinates, prunes
    it to a minimal one, removes it and repeats.  The best restart wins.
    """
    words = code.codeword_bits(max_k)[1:]
    rng = np.random.default_rng(seed)
    best: list[int] = []
    for _ in range(max(1, restarts)):
        found = _greedy_hitting_sets(words, code.n, rng)
        if len(found) > len(best):
            best = found
    return HittingSetReport(tuple(BitVector(code.n, h) for h in best))


def is_proper_sparsifier(code: LinearCode, S: BitVector, alpha: Alpha, max_k: int = DEFAULT_MAX_K) -> bool:
    """alpha wt(c) <= wt(c_S) < wt(c) for every nonzero codeword."""
    s = S.bits
    for c in code.codeword_bits(max_k)[1:]:
        w = (c & s).bit_count()
        if w >= c.bit_count() or not alpha.holds(w, c.bit_count()):
            return False
    return True


@dataclass(frozen=True)
class ProperSearchResult:
    witness: BitVector | None
    exhaustive: bool
    examined: int

    @property
    def definitive_none(self) -> bool:
        return self.witness is None and self.exhaustive

    def as_dict(self) -> dict:
        return {
            "found": self.witness is not None,
            "witness": None if self.witness is None else [i + 1 for i in self.witness.indices()],
            "exhaustive": self.exhaustive,
            "definitive_not_found": self.definitive_none,
            "examined": str(self.examined),
        }


def proper_sparsifier_search(
    code: LinearCode,
    alpha: Alpha,
    trials: int = 100_000,
    seed: int = 0,
    threads: int = 1,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> ProperSearchResult:
    """Look for S with alpha wt(c) <= wt(c_S) < wt(c) on all nonzero codewords.

    Exhaustive over all 2^n subsets (Gray order) when n is within the cap, so
    a miss is a nonexistence certificate; otherwise ``trials`` seeded samples.
    """
    n = code.n
    if n <= min(max_n, 62):
        cw, wts = code.codeword_array(max_k)

        def run(piece):
            return K.first_proper_in_range(cw, wts, alpha.p, alpha.q, piece[0], piece[1])

        pieces = split_range(1 << n)
        hits = map(run, pieces) if threads <= 1 else map_chunks(run, pieces, threads)
        for i in hits:
            if i >= 0:
                return ProperSearchResult(BitVector(n, i ^ (i >> 1)), True, i + 1)
        return ProperSearchResult(None, True, 1 << n)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        bits = rng.integers(0, 2, size=n)
        S = BitVector.from_indices(n, np.flatnonzero(bits).tolist())
        if is_proper_sparsifier(code, S, alpha, max_k):
            return ProperSearchResult(S, False, t + 1)
    return ProperSearchResult(None, False, trials)


def edge_connectivity(g: Graph, max_k: int = DEFAULT_MAX_K) -> int:
    """Minimum number of edges in a cut; 0 for disconnected or single-vertex graphs."""
    if g.num_vertices <= 1 or g.component_count > 1:
        return 0
    return min(c.bit_count() for c in cut_space(g).codeword_bits(max_k)[1:])
