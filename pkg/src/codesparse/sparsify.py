"""Unweighted one-sided alpha-sparsifiers of binary linear codes.

A set S of coordinates is an alpha-sparsifier of C when every codeword c
keeps at least an alpha fraction of its weight on S.  Thresholds are exact
rationals p/q and every check is the integer test ``q*wt(c_S) >= p*wt(c)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from ._chunks import map_chunks, split_range
from .bounds import C_CONST, big_alpha_budget, round_budget, small_budget
from .errors import DomainError, LengthMismatch, LengthTooLarge, SearchFailed, TheoremViolation
from .gf2 import DEFAULT_MAX_K, BitVector, LinearCode

log = logging.getLogger(__name__)

#: Largest length for which all 2^n subsets may be enumerated.
DEFAULT_MAX_N = 28
# census_range builds subsets from int64 indices
_KERNEL_MAX_N = 62


@dataclass(frozen=True)
class Alpha:
    p: int
    q: int = 1

    def __post_init__(self):
        if self.q <= 0 or not 0 <= self.p <= self.q:
            raise DomainError(f"alpha must satisfy 0 <= p/q <= 1, got {self.p}/{self.q}")
        g = math.gcd(self.p, self.q)
        if g > 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @classmethod
    def parse(cls, text: str) -> Alpha:
        try:
            frac = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse alpha {text!r}") from exc
        return cls(frac.numerator, frac.denominator)

    def holds(self, wt_cs: int, wt_c: int) -> bool:
        return self.q * wt_cs >= self.p * wt_c

    def complement(self) -> Alpha:
        return Alpha(self.q - self.p, self.q)

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


HALF = Alpha(1, 2)


def iterated_alpha(ell: int) -> Alpha:
    return Alpha(2**ell - 1, 2**ell)


@dataclass(frozen=True)
class Violation:
    c: BitVector
    wt_c: int
    wt_cs: int


@dataclass(frozen=True)
class Verdict:
    passed: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.passed


def _check_len(code: LinearCode, S: BitVector) -> None:
    if S.length != code.n:
        raise LengthMismatch(f"set length {S.length} != code length {code.n}")


def _check_n(n: int, max_n: int) -> None:
    if n > min(max_n, _KERNEL_MAX_N):
        raise LengthTooLarge(n, min(max_n, _KERNEL_MAX_N), "code length n")


def _first_violator_py(code: LinearCode, S: BitVector, alpha: Alpha, max_k: int) -> int | None:
    s = S.bits
    for c in code.codeword_bits(max_k):
        if not alpha.holds((c & s).bit_count(), c.bit_count()):
            return c
    return None


def verify(code: LinearCode, S: BitVector, alpha: Alpha, max_k: int = DEFAULT_MAX_K) -> Verdict:
    """Check wt(c_S) >= alpha wt(c) for every codeword; report the first violator in Gray order."""
    _check_len(code, S)
    if code.n <= 64:
        cw, wts = code.codeword_array(max_k)
        j = K.first_violator(cw, wts, np.uint64(S.bits), alpha.p, alpha.q)
        bad = None if j < 0 else int(cw[j])
    else:
        bad = _first_violator_py(code, S, alpha, max_k)
    if bad is None:
        return Verdict(True)
    return Verdict(False, Violation(BitVector(code.n, bad), bad.bit_count(), (bad & S.bits).bit_count()))


def improve_once(code: LinearCode, S: BitVector, max_k: int = DEFAULT_MAX_K) -> BitVector | None:
    """S + c for the first codeword c (Gray order) that makes S strictly larger."""
    _check_len(code, S)
    s = S.bits
    size = s.bit_count()
    for c in code.codeword_bits(max_k):
        if (s ^ c).bit_count() > size:
            return BitVector(code.n, s ^ c)
    return None


def coset_maximize(code: LinearCode, S0: BitVector, max_k: int = DEFAULT_MAX_K) -> BitVector:
    """Apply improving codeword flips until none is left.

    The result lies in the coset S0 + C and is a 1/2-sparsifier.  Each flip
    increases |S|, so at most n flips happen.
    """
    S = S0
    for _ in range(code.n + 1):
        nxt = improve_once(code, S, max_k)
        if nxt is None:
            return S
        S = nxt
    raise AssertionError("coset_maximize did not terminate within n rounds")


@dataclass(frozen=True)
class CensusReport:
    n: int
    k: int
    alpha: Alpha
    count: int
    lower_bound: int
    size_histogram: dict[int, int]
    min_size: int
    max_size: int
    exhaustive: bool = True

    def as_dict(self) -> dict:
        return {
            "count": str(self.count),
            "lower_bound": str(self.lower_bound),
            "bound_met": self.count >= self.lower_bound,
            "min_size": self.min_size,
            "max_size": self.max_size,
            "exhaustive": self.exhaustive,
            "size_histogram": {str(s): str(c) for s, c in sorted(self.size_histogram.items())},
        }


def _census_histogram(code: LinearCode, alpha: Alpha, threads: int, max_k: int) -> np.ndarray:
    cw, wts = code.codeword_array(max_k)
    n = code.n

    def run(piece):
        return K.census_range(cw, wts, alpha.p, alpha.q, n, piece[0], piece[1])

    hist = np.zeros(n + 1, dtype=np.int64)
    for part in map_chunks(run, split_range(1 << n), threads):
        hist += part
    return hist


def count_sparsifiers(
    code: LinearCode,
    alpha: Alpha = HALF,
    threads: int = 1,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> CensusReport:
    """Exact number of alpha-sparsifiers among all 2^n subsets.

    For alpha <= 1/2 the count is at least 2^(n-k); a smaller count raises
    :class:`TheoremViolation`.
    """
    _check_n(code.n, max_n)
    hist = _census_histogram(code, alpha, threads, max_k)
    histogram = {s: int(c) for s, c in enumerate(hist) if c}
    report = CensusReport(
        n=code.n,
        k=code.k,
        alpha=alpha,
        count=int(hist.sum()),
        lower_bound=2 ** (code.n - code.k),
        size_histogram=histogram,
        min_size=min(histogram),
        max_size=max(histogram),
    )
    if alpha.as_fraction() <= Fraction(1, 2) and report.count < report.lower_bound:
        raise TheoremViolation(
            "fewer than 2^(n-k) sparsifiers",
            {"n": code.n, "k": code.k, "alpha": str(alpha), "count": str(report.count),
             "lower_bound": str(report.lower_bound), "basis": [str(b) for b in code.basis]},
        )
    return report


def min_sparsifier(
    code: LinearCode, alpha: Alpha = HALF, max_n: int = DEFAULT_MAX_N, max_k: int = DEFAULT_MAX_K
) -> tuple[BitVector, int]:
    """Smallest alpha-sparsifier; ties go to the lexicographically first index set."""
    _check_n(code.n, max_n)
    cw, wts = code.codeword_array(max_k)
    for size in range(code.n + 1):
        mask = K.first_passing_of_size(cw, wts, code.n, size, alpha.p, alpha.q)
        if mask >= 0:
            return BitVector(code.n, int(mask)), size
    raise AssertionError("the full coordinate set always passes")


def prune(code: LinearCode, S: BitVector, alpha: Alpha = HALF, max_k: int = DEFAULT_MAX_K) -> BitVector:
    """Drop coordinates (highest index first) while S stays an alpha-sparsifier."""
    for i in sorted(S.indices(), reverse=True):
        trial = BitVector(S.length, S.bits & ~(1 << i))
        if verify(code, trial, alpha, max_k):
            S = trial
    return S


def small_sparsifier_search(
    code: LinearCode,
    mode: str = "exact",
    restarts: int = 64,
    seed: int = 0,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> BitVector | None:
    """A verified 1/2-sparsifier of size at most floor(n (1/2 + eps)).

    ``exact`` enumerates by increasing size and always succeeds.
    ``heuristic`` samples uniform subsets, climbs to a coset local maximum,
    prunes, and returns None if no restart lands within budget.
    """
    n, k = code.n, code.k
    budget = small_budget(n, k)
    if k == 0:
        return BitVector.zeros(n)
    if mode == "exact":
        S, size = min_sparsifier(code, HALF, max_n, max_k)
        if size > budget:
            raise TheoremViolation(
                "minimum 1/2-sparsifier exceeds the entropy budget",
                {"n": n, "k": k, "size": size, "budget": budget, "set": str(S)},
            )
        return S
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        bits = rng.integers(0, 2, size=n)
        S0 = BitVector.from_indices(n, np.flatnonzero(bits).tolist())
        S = prune(code, coset_maximize(code, S0, max_k), HALF, max_k)
        if S.weight() <= budget:
            return S
    return None


@dataclass(frozen=True)
class Round:
    r: int
    n_prev: int
    n_r: int
    found_size: int
    S_r: tuple[int, ...]
    dim_r: int
    budget_r: float


@dataclass(frozen=True)
class IterationTrace:
    n: int
    k: int
    ell: int
    alpha: Alpha
    rounds: tuple[Round, ...]
    final_S: BitVector
    budget: float
    verdict: Verdict = field(default_factory=lambda: Verdict(True))

    def check(self) -> list[str]:
        """Return the list of trace invariants that fail (empty when all hold)."""
        problems = []
        seen: set[int] = set()
        n_prev = self.n
        for rd in self.rounds:
            if seen & set(rd.S_r):
                problems.append(f"round {rd.r}: S_r overlaps earlier rounds")
            seen |= set(rd.S_r)
            if rd.n_r != self.n - len(seen):
                problems.append(f"round {rd.r}: n_r recursion broken")
            if 2 * rd.n_r > n_prev:
                problems.append(f"round {rd.r}: n_r > n_(r-1)/2")
            if rd.n_r * 2**rd.r > self.n:
                problems.append(f"round {rd.r}: n_r > n/2^r")
            if rd.dim_r > self.k:
                problems.append(f"round {rd.r}: dimension grew")
            if rd.found_size > rd.budget_r + 1e-9:
                problems.append(f"round {rd.r}: search result over budget")
            n_prev = rd.n_r
        if set(self.final_S.indices()) != seen:
            problems.append("final_S is not the union of the rounds")
        if not self.verdict.passed:
            problems.append("final set fails verification")
        if self.k > 0 and self.final_S.weight() > self.budget + 1e-9:
            problems.append("final set exceeds alpha n + c sqrt(nk)")
        return problems

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "final_alpha": str(self.alpha),
            "final_set": [i + 1 for i in self.final_S.indices()],
            "final_size": self.final_S.weight(),
            "budget": self.budget,
            "verified": self.verdict.passed,
            "rounds": [
                {"r": rd.r, "n_prev": rd.n_prev, "n_r": rd.n_r, "found_size": rd.found_size,
                 "S_r": [i + 1 for i in rd.S_r], "dim_r": rd.dim_r, "budget_r": rd.budget_r}
                for rd in self.rounds
            ],
        }


def iterated_sparsifier(
    code: LinearCode,
    ell: int,
    mode: str = "exact",
    restarts: int = 64,
    seed: int = 0,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
) -> IterationTrace:
    """(1 - 2^-ell)-sparsifier as a union of ell successive 1/2-sparsifiers.

    Round r finds a 1/2-sparsifier of the code restricted to the coordinates
    not yet chosen, pads it with the lowest unused coordinates to at least
    half of them, and restricts the code to what is left.
    """
    if ell < 1:
        raise DomainError("ell must be a positive integer")
    n, k = code.n, code.k
    remaining = list(range(n))
    current = code
    rounds = []
    chosen: list[int] = []
    for r in range(1, ell + 1):
        n_prev = len(remaining)
        local = small_sparsifier_search(current, mode, restarts, seed + r - 1, max_n, max_k)
        if local is None:
            raise SearchFailed(f"heuristic search found no small sparsifier in round {r}", r)
        found = local.indices()
        picked = set(found)
        for i in range(n_prev):
            if 2 * len(picked) >= n_prev:
                break
            picked.add(i)
        S_r = tuple(sorted(remaining[i] for i in picked))
        remaining = [remaining[i] for i in range(n_prev) if i not in picked]
        current = current.project([i for i in range(n_prev) if i not in picked])
        chosen.extend(S_r)
        rounds.append(Round(r, n_prev, len(remaining), len(found), S_r, current.k,
                            round_budget(n_prev, k)))
        log.debug("round %d: n_prev=%d |S_r|=%d dim=%d", r, n_prev, len(S_r), current.k)
    alpha = iterated_alpha(ell)
    final = BitVector.from_indices(n, chosen)
    trace = IterationTrace(n, k, ell, alpha, tuple(rounds), final, big_alpha_budget(n, k, ell),
                           verify(code, final, alpha, max_k))
    problems = trace.check()
    if problems:
        raise TheoremViolation("; ".join(problems), {"n": n, "k": k, "ell": ell, **trace.as_dict()})
    return trace


@dataclass(frozen=True)
class MonteCarloResult:
    hits: int
    trials: int

    @property
    def estimate(self) -> float:
        return self.hits / self.trials if self.trials else 0.0


#: Trials per independently seeded chunk; fixed so results never depend on threads.
MC_CHUNK = 1 << 14


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def monte_carlo_density(
    code: LinearCode,
    trials: int,
    alpha: Alpha = HALF,
    seed: int = 0,
    threads: int = 1,
    max_k: int = DEFAULT_MAX_K,
) -> MonteCarloResult:
    """Fraction of uniform random subsets that are alpha-sparsifiers."""
    n = code.n
    pieces = [(i, min(MC_CHUNK, trials - start)) for i, start in enumerate(range(0, trials, MC_CHUNK))]
    if n <= 64:
        cw, wts = code.codeword_array(max_k)

        def run(piece):
            idx, size = piece
            samples = _chunk_rng(seed, idx).integers(0, 2**n - 1, size=size, dtype=np.uint64, endpoint=True)
            return K.count_hits(cw, wts, samples, alpha.p, alpha.q)
    else:
        code.codeword_bits(max_k)

        def run(piece):
            idx, size = piece
            rng = _chunk_rng(seed, idx)
            nbytes = -(-n // 8)
            hits = 0
            for _ in range(size):
                s = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << n) - 1)
                if _first_violator_py(code, BitVector(n, s), alpha, max_k) is None:
                    hits += 1
            return hits

    return MonteCarloResult(int(sum(map_chunks(run, pieces, threads))), trials)
