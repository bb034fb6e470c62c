"""Degree-multiset upper bounds on the triangle count.

A multiset ``D`` of degrees from ``{0..r}`` with ``sum(D) = 2m`` is scored
by ``sum w(d)``, where ``w(d) = C(d,2)`` except ``w(r) = C(r,2) - k``. All
values here are kept in units of three times the bound so they stay integral.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

from .colex import binom, decompose, g_t

NEG = float("-inf")


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class WeightProfile:
    r: int
    k: int

    def __call__(self, d: int) -> int:
        if d == self.r:
            return comb(self.r, 2) - self.k
        return comb(d, 2)


@dataclass(frozen=True)
class DegreeMultiset:
    """Degree -> multiplicity; zero multiplicities and degree-0 entries are dropped."""

    counts: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def of(cls, degrees: Iterable[int] | dict[int, int]) -> DegreeMultiset:
        if isinstance(degrees, dict):
            c = Counter({d: n for d, n in degrees.items()})
        else:
            c = Counter(degrees)
        if any(n < 0 for n in c.values()):
            raise ValueError("negative multiplicity")
        if any(d < 0 for d in c):
            raise ValueError("negative degree")
        return cls(tuple(sorted((d, n) for d, n in c.items() if n and d)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def count(self, d: int) -> int:
        return self.as_dict().get(d, 0)

    def degrees(self) -> list[int]:
        return sorted((d for d, n in self.counts for _ in range(n)), reverse=True)

    @property
    def degree_sum(self) -> int:
        return sum(d * n for d, n in self.counts)

    def weighted_sum(self, w: WeightProfile) -> int:
        return sum(w(d) * n for d, n in self.counts)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{d}^{n}" for d, n in reversed(self.counts)) + "}"


@dataclass(frozen=True)
class OracleResult:
    value3: int
    witness: DegreeMultiset


def _table(target: int, w: WeightProfile, degrees: list[int]) -> list[float]:
    best = [NEG] * (target + 1)
    best[0] = 0
    for s in range(1, target + 1):
        top = NEG
        for d in degrees:
            if d <= s and best[s - d] != NEG:
                val = best[s - d] + w(d)
                if val > top:
                    top = val
        best[s] = top
    return best


def _witness(best: list[float], target: int, w: WeightProfile, degrees: list[int]) -> list[int]:
    # largest-degree-first walk gives the lexicographically largest
    # descending degree list among optimal multisets
    out = []
    s = target
    order = sorted(degrees, reverse=True)
    while s:
        for d in order:
            if d <= s and best[s - d] != NEG and best[s - d] + w(d) == best[s]:
                out.append(d)
                s -= d
                break
        else:  # pragma: no cover - table and walk disagree
            raise AssertionError("witness reconstruction failed")
    return out


def mk_oracle(m: int, r: int, k: int, require_r: bool = False,
              degrees: Iterable[int] | None = None) -> OracleResult:
    """Exact ``max sum w(d)`` over multisets with ``sum(D) = 2m``.

    Returns three times ``M_k(m, r)`` (or ``M*_k`` when ``require_r``)
    and one optimal witness. ``degrees`` restricts the usable positive
    degrees; degree 0 never contributes and is left out.
    """
    if m < 0 or r < 1 or k < 0:
        raise ValueError("need m >= 0, r >= 1, k >= 0")
    w = WeightProfile(r, k)
    allowed = sorted(set(range(1, r + 1) if degrees is None else degrees) - {0})
    if any(not 1 <= d <= r for d in allowed):
        raise ValueError("degrees must lie in 1..r")
    target = 2 * m
    if require_r:
        if target < r or r not in allowed:
            raise InfeasibleError(f"no multiset with sum {target} contains {r}")
        rest = target - r
        best = _table(rest, w, allowed)
        if best[rest] == NEG:
            raise InfeasibleError(f"sum {rest} not reachable with degrees {allowed}")
        wit = [r] + _witness(best, rest, w, allowed)
        return OracleResult(int(best[rest]) + w(r), DegreeMultiset.of(wit))
    best = _table(target, w, allowed)
    if best[target] == NEG:
        raise InfeasibleError(f"sum {target} not reachable with degrees {allowed}")
    return OracleResult(int(best[target]), DegreeMultiset.of(_witness(best, target, w, allowed)))


def mk_values(m_max: int, r: int, k: int, require_r: bool = False) -> list[int | None]:
    """``3M`` (or ``3M*``) for every ``m`` in ``0..m_max`` from one table.

    Entries are ``None`` where no multiset qualifies.
    """
    if m_max < 0 or r < 1 or k < 0:
        raise ValueError("need m_max >= 0, r >= 1, k >= 0")
    w = WeightProfile(r, k)
    best = _table(2 * m_max, w, list(range(1, r + 1)))
    out: list[int | None] = []
    for m in range(m_max + 1):
        s = 2 * m - r if require_r else 2 * m
        if s < 0 or best[s] == NEG:
            out.append(None)
        else:
            out.append(int(best[s]) + (w(r) if require_r else 0))
    return out


def mk_closed_form_r8(m: int) -> tuple[int, int]:
    """``(x, 6m - x)`` for ``r = 8, k = 5`` with ``x`` in ``1..7`` and ``x = 2m mod 7``."""
    if m < comb(9, 2) + 1:
        raise ValueError("closed form needs m >= 37")
    x = (2 * m) % 7 or 7
    return x, 6 * m - x


# --- structural reductions ----------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    rule: str
    before: DegreeMultiset
    after: DegreeMultiset
    gain: int


def _low(c: Counter, r: int) -> list[int]:
    return sorted(d for d in c.elements() if 1 <= d <= r - 2)


def reduction_step(D: DegreeMultiset, r: int, k: int) -> ReductionStep | None:
    """One rewrite whose hypothesis holds, or ``None`` at a fixed point."""
    w = WeightProfile(r, k)
    c = Counter(D.as_dict())
    low = _low(c, r)
    new = c.copy()
    if len(low) >= 2:
        x, y = low[0], low[1]
        new[x] -= 1
        new[y] -= 1
        new[x - 1] += 1
        new[y + 1] += 1
        rule = "spread-low"
    elif len(low) == 1 and r <= 2 * k + 1 and c[r] >= r - 1 - low[0]:
        d = low[0]
        new[d] -= 1
        new[r] -= r - 1 - d
        new[r - 1] += r - d
        rule = "lift-low"
    elif not low and 2 * k >= r and c[r] >= r - 1 and set(c.elements()) <= {r - 1, r}:
        new[r] -= r - 1
        new[r - 1] += r
        rule = "rebalance-top"
    else:
        return None
    after = DegreeMultiset.of(dict(new))
    return ReductionStep(rule, D, after, after.weighted_sum(w) - D.weighted_sum(w))


def reduction_steps(D: DegreeMultiset, r: int, k: int) -> Iterator[ReductionStep]:
    while (step := reduction_step(D, r, k)) is not None:
        yield step
        D = step.after


def structural_reductions(D: DegreeMultiset, r: int, k: int) -> DegreeMultiset:
    """Apply the rewrites until none applies."""
    for step in reduction_steps(D, r, k):
        D = step.after
    return D


# --- sequence bounds ----------------------------------------------------------

def ceil_half(r: int) -> int:
    return (r + 1) // 2


def seqopt_bound(m: int, r: int) -> int:
    """``(r - 2) m``, an upper bound on ``3 M_k(m, r)`` for ``k = ceil(r/2)``."""
    if r < 1 or m < comb(r + 1, 2) + 1:
        raise ValueError(f"need m >= C(r+1,2)+1 = {comb(r + 1, 2) + 1}")
    return (r - 2) * m


@dataclass(frozen=True)
class GapDecomposition:
    """``3 g_3(m,r) - (r-2) m = block + h + q`` for the ``m`` fixed by ``(a, c, d)``."""

    r: int
    a: int
    c: int
    d: int
    block: int
    h: int
    q: int

    @property
    def total(self) -> int:
        return self.block + self.h + self.q

    @property
    def m(self) -> int:
        return self.a * comb(self.r + 1, 2) + binom(self.c, 2) + self.d


def h_r(r: int, c: int) -> int:
    return (c - r) * binom(c, 2)


def q_r(r: int, d: int) -> int:
    # d(d-1) is even, so the 3/2 factor never leaves the integers
    return 3 * d * (d - 1) // 2 - d * (r - 2)


def gap_functions(r: int, a: int, c: int, d: int) -> GapDecomposition:
    if not 0 <= d <= c <= r:
        raise ValueError("need 0 <= d <= c <= r")
    return GapDecomposition(r, a, c, d, a * comb(r + 1, 2), h_r(r, c), q_r(r, d))


def direct_gap(m: int, r: int) -> int:
    return 3 * g_t(m, r, 3) - (r - 2) * m


def gap_for(m: int, r: int) -> GapDecomposition:
    dec = decompose(m, r)
    return gap_functions(r, dec.a, dec.c, dec.d)
