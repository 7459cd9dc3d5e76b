"""Entropy-based size budgets for 1/2-sparsifiers and their iterated versions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

LN2 = math.log(2)
#: sqrt(ln 2 / 2), the per-round slack coefficient.
GAMMA = math.sqrt(LN2 / 2)
#: sqrt(ln 2) * (1 + sqrt 2) = GAMMA / (1 - 1/sqrt 2).
C_CONST = math.sqrt(LN2) * (1 + math.sqrt(2))


def entropy(x: float) -> float:
    """Binary entropy in bits, with H(0) = H(1) = 0."""
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    if x == 0 or x == 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def closed_form_epsilon(n: int, k: int) -> float:
    """sqrt((ln 2 / 2) * k / n); 0 for the empty code length."""
    if n == 0:
        return 0.0
    return math.sqrt(LN2 / 2 * k / n)


def small_budget(n: int, k: int) -> int:
    """Integer size budget floor(n (1/2 + eps)), capped at n."""
    return min(n, math.floor(n * (0.5 + closed_form_epsilon(n, k))))


def round_budget(n_prev: int, k: int) -> float:
    """Allowed size of one round's sparsifier: n/2 + GAMMA sqrt(n k)."""
    return n_prev / 2 + GAMMA * math.sqrt(n_prev * k)


def big_alpha_budget(n: int, k: int, ell: int) -> float:
    return (1 - 2.0 ** -ell) * n + C_CONST * math.sqrt(n * k)


def entropy_root(target: float) -> float | None:
    """eps in (0, 1/2) with H(1/2 - eps) = target, by bisection on x = 1/2 - eps.

    Bisects until the bracket collapses to adjacent floats.  Returns None
    unless 0 < target < 1.
    """
    if not 0 < target < 1:
        return None
    lo, hi = 0.0, 0.5
    for _ in range(1100):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if entropy(mid) < target:
            lo = mid
        else:
            hi = mid
    x = lo if abs(entropy(lo) - target) <= abs(entropy(hi) - target) else hi
    return 0.5 - x


def binomial_tail(n: int, gamma: Fraction | float) -> int:
    """sum_{j=0}^{floor(gamma n)} C(n, j), exactly."""
    top = math.floor(Fraction(gamma) * n)
    return sum(math.comb(n, j) for j in range(top + 1))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    entropy_gap: float
    epsilon_closed: float
    epsilon_root: float | None
    gamma: float
    c_const: float
    budget_small: float

    def budget_big_alpha(self, ell: int) -> float:
        return big_alpha_budget(self.n, self.k, ell)

    def as_dict(self, ells=(1, 2, 3)) -> dict:
        return {
            "entropy_gap": self.entropy_gap,
            "epsilon_closed": self.epsilon_closed,
            "epsilon_root": self.epsilon_root,
            "gamma": self.gamma,
            "c_const": self.c_const,
            "budget_smallS": self.budget_small,
            "budget_smallS_floor": math.floor(self.budget_small),
            "budget_bigAlpha": {str(ell): self.budget_big_alpha(ell) for ell in ells},
            "count_lower_bound": str(2 ** (self.n - self.k)),
        }


def bounds_for(n: int, k: int) -> BoundsReport:
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    gap = 1 - k / n
    eps = closed_form_epsilon(n, k)
    return BoundsReport(
        n=n,
        k=k,
        entropy_gap=gap,
        epsilon_closed=eps,
        epsilon_root=entropy_root(gap),
        gamma=GAMMA,
        c_const=C_CONST,
        budget_small=min(float(n), n * (0.5 + eps)),
    )
