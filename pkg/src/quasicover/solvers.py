"""Approximate string cover solvers.

* ``brute_force_oracle`` / ``brute_force_general``: exhaustive, any metric.
* ``fpt_acp``: exact for additive metrics, exponential only in the tile length.
* ``fpt_acp_superadditive``: randomized tolerance search for superadditive metrics.
* ``approx_acp``: polynomial-time approximation under Hamming distance.

Every solver breaks ties by ``(distance, tile, tiling)``, smallest first.
"""

from __future__ import annotations

import math
import os
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .core import (
    CoverSolution,
    Tiling,
    Word,
    as_word,
    expand,
    is_valid_tiling,
    legal_overlaps,
    matched_count,
)
from .metrics import INF, AdditiveMetric, Hamming

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV = "QUASICOVER_BUDGET"


class ResourceError(RuntimeError):
    """The requested search exceeds the configured work budget."""

    def __init__(self, what: str, needed: int, cap: int):
        self.what = what
        self.needed = needed
        self.cap = cap
        super().__init__(f"{what}: {needed} steps exceeds budget {cap} (set {BUDGET_ENV} to raise it)")


def work_budget(override: Optional[int] = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(what: str, needed: int, budget: Optional[int]) -> None:
    cap = work_budget(budget)
    if needed > cap:
        raise ResourceError(what, needed, cap)


def _check_instance(w: Sequence[int], m: int) -> Word:
    w = as_word(w)
    if not 1 <= m < len(w):
        raise ValueError(f"tile length m={m} must satisfy 1 <= m < |w|={len(w)}")
    return w


def _alphabet_size(w: Sequence[int], metric, sigma: Optional[int]) -> int:
    if sigma is None:
        sigma = getattr(metric, "sigma", None)
    if sigma is None:
        sigma = max(w) + 1
    if max(w) >= sigma:
        raise ValueError(f"word uses symbol {max(w)} outside alphabet of size {sigma}")
    return sigma


def freq_table(w: Sequence[int]) -> Counter:
    return Counter(w)


def most_frequent(w: Sequence[int]) -> Tuple[int, int]:
    """``(symbol, count)`` of the most frequent symbol; ties go to the smallest id."""
    counts = freq_table(w)
    best = max(counts.values())
    return min(a for a, c in counts.items() if c == best), best


# -- tilings -------------------------------------------------------------------


def count_tilings(n: int, m: int) -> int:
    """Number of tilings of size ``n`` with norm ``m``."""
    last = n - m + 1
    if last < 1:
        return 0
    ways = [0] * (last + 1)
    ways[1] = 1
    for i in range(2, last + 1):
        ways[i] = sum(ways[max(1, i - m):i])
    return ways[last]


def iter_tilings(n: int, m: int, max_starts: Optional[int] = None) -> Iterator[Tiling]:
    """All tilings of size ``n`` with norm ``m``, in lexicographic order of starts."""
    last = n - m + 1
    if last < 1:
        return
    limit = max_starts if max_starts is not None else last

    def rec(starts):
        j = starts[-1]
        if j == last:
            yield Tiling(n, tuple(starts))
            return
        if len(starts) >= limit:
            return
        for nxt in range(j + 1, min(j + m, last) + 1):
            starts.append(nxt)
            yield from rec(starts)
            starts.pop()

    yield from rec([1])


# -- exact DP for additive metrics -------------------------------------------------


@dataclass
class DpState:
    """Forward DP over last-start positions for one tile.

    ``pred[i]`` is the previous start of the best tiling whose last start is
    ``i`` (0 when unreachable, and ``pred[1] = 1`` for the one-tile tiling).
    ``cost[i]`` is that tiling's cost on the covered prefix of the word.
    """

    tile: Word
    n: int
    cost: list = field(default_factory=list)
    pred: list = field(default_factory=list)

    @property
    def last(self) -> int:
        return self.n - len(self.tile) + 1

    def reachable(self, i: int) -> bool:
        return self.pred[i] > 0

    def decode(self, i: int) -> Tuple[int, ...]:
        """Starts of the tiling encoded for last start ``i``."""
        if not self.reachable(i):
            raise ValueError(f"no tiling ends at {i}")
        out = [i]
        while i != 1:
            i = self.pred[i]
            out.append(i)
        return tuple(reversed(out))


def tiling_dp(w: Sequence[int], s: Sequence[int], metric: AdditiveMetric) -> DpState:
    w, s = tuple(w), tuple(s)
    n, m = len(w), len(s)
    last = n - m + 1
    delta = legal_overlaps(s)
    st = DpState(s, n, [None] * (last + 1), [0] * (last + 1))
    st.cost[1] = metric.segment_cost(w, 1, m, s, 1)
    st.pred[1] = 1
    for i in range(2, last + 1):
        best = None
        best_j = 0
        for j in range(max(1, i - m), i):
            if not st.pred[j]:
                continue
            overlap = m - (i - j)
            if not delta.allows(overlap):
                continue
            # only positions j+m .. i+m-1 are new; overlapped ones already agree
            c = st.cost[j] + metric.segment_cost(w, j + m, i + m - 1, s, overlap + 1)
            # ties: compare whole tilings, since a shorter prefix is not a smaller tiling
            if best is None or c < best or (c == best and st.decode(j) + (i,) < st.decode(best_j) + (i,)):
                best, best_j = c, j
        if best_j:
            st.cost[i] = best
            st.pred[i] = best_j
    return st


def best_tiling_for_tile(w: Sequence[int], s: Sequence[int], metric: AdditiveMetric) -> Optional[Tuple[Tiling, object]]:
    """Cheapest tiling of ``w`` by ``s`` and its distance, or None if ``s`` cannot tile ``|w|``."""
    w = as_word(w)
    if not 1 <= len(s) < len(w):
        raise ValueError("tile must satisfy 1 <= |s| < |w|")
    st = tiling_dp(w, s, metric)
    if not st.reachable(st.last):
        return None
    return Tiling(len(w), st.decode(st.last)), st.cost[st.last]


def _tile_at(index: int, sigma: int, m: int) -> Word:
    digits = [0] * m
    for k in range(m - 1, -1, -1):
        index, digits[k] = divmod(index, sigma)
    return tuple(digits)


def fpt_work(n: int, m: int, sigma: int) -> int:
    return sigma ** m * max(1, n - m + 1) * m * m


def _fpt_chunk(w, m, metric, sigma, lo, hi):
    best = None
    for idx in range(lo, hi):
        s = _tile_at(idx, sigma, m)
        found = best_tiling_for_tile(w, s, metric)
        if found is None:
            continue
        tiling, d = found
        if best is None or d < best[0]:
            best = (d, s, tiling)
    return best


def fpt_acp(w: Sequence[int], m: int, metric: AdditiveMetric = None, *, sigma: Optional[int] = None,
            workers: int = 1, budget: Optional[int] = None) -> CoverSolution:
    """Exact fixed-length ACP for an additive metric by scanning all ``sigma**m`` tiles.

    With ``workers > 1`` candidate tiles are split into contiguous chunks and
    evaluated on a thread pool; the reduction uses the same total order, so
    the answer does not depend on scheduling.
    """
    metric = metric if metric is not None else Hamming()
    w = _check_instance(w, m)
    sigma = _alphabet_size(w, metric, sigma)
    _check_budget("fpt_acp", fpt_work(len(w), m, sigma), budget)
    total = sigma ** m
    workers = max(1, min(int(workers), total))
    if workers == 1:
        results = [_fpt_chunk(w, m, metric, sigma, 0, total)]
    else:
        bounds = [total * k // workers for k in range(workers + 1)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_fpt_chunk, w, m, metric, sigma, lo, hi)
                       for lo, hi in zip(bounds, bounds[1:])]
            results = [f.result() for f in futures]
    found = [r for r in results if r is not None]
    # the constant tile always tiles, so something is always found
    d, s, tiling = min(found, key=lambda r: (r[0], r[1], r[2].starts))
    return CoverSolution(s, tiling, d, matched_count(w, expand(s, tiling)))


# -- superadditive metrics -------------------------------------------------------


def _sub_seed(seed: int, restart: int) -> int:
    return ((seed & (2 ** 64 - 1)) << 32) | restart


def _tolerant_tiling(w, s, metric, tolerance, rng) -> Optional[Tiling]:
    n, m = len(w), len(s)
    last = n - m + 1
    delta = legal_overlaps(s)
    st = DpState(s, n, [None] * (last + 1), [0] * (last + 1))
    if not metric.distance(w[:m], s) < tolerance:
        return None
    st.pred[1] = 1
    for i in range(2, last + 1):
        ok = []
        for j in range(max(1, i - m), i):
            if not st.pred[j] or not delta.allows(m - (i - j)):
                continue
            prefix = Tiling(i + m - 1, st.decode(j) + (i,))
            if metric.distance(w[:i + m - 1], expand(s, prefix)) < tolerance:
                ok.append(j)
        if ok:
            st.pred[i] = rng.choice(ok)
    if not st.reachable(last):
        return None
    return Tiling(n, st.decode(last))


def fpt_acp_superadditive(w: Sequence[int], m: int, metric, tolerance, *, restarts: int = 1, seed: int = 0,
                          sigma: Optional[int] = None, budget: Optional[int] = None) -> Optional[CoverSolution]:
    """Look for any tile and tiling with distance strictly below ``tolerance``.

    Each reachable DP state keeps one predecessor drawn uniformly from those
    whose partial tiling is still under tolerance. Superadditivity makes
    prefixes of tolerable tilings tolerable, so pruning loses nothing that a
    lucky draw could not recover. ``None`` means nothing was found in
    ``restarts`` passes, not that no solution exists.
    """
    w = _check_instance(w, m)
    if tolerance is not INF and tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    sigma = _alphabet_size(w, metric, sigma)
    _check_budget("fpt_acp_superadditive", restarts * fpt_work(len(w), m, sigma) * len(w), budget)
    for r in range(restarts):
        rng = random.Random(_sub_seed(seed, r))
        for s in product(range(sigma), repeat=m):
            tiling = _tolerant_tiling(w, s, metric, tolerance, rng)
            if tiling is not None:
                v = expand(s, tiling)
                return CoverSolution(s, tiling, metric.distance(w, v), matched_count(w, v))
    return None


# -- brute force --------------------------------------------------------------------


def oracle_work(n: int, m: int, sigma: int) -> int:
    return sigma ** m * count_tilings(n, m) * n


def brute_force_oracle(w: Sequence[int], m: int, metric=None, *, sigma: Optional[int] = None,
                       budget: Optional[int] = None) -> CoverSolution:
    """Enumerate every tiling with norm ``m`` and every tile valid for it."""
    metric = metric if metric is not None else Hamming()
    w = _check_instance(w, m)
    sigma = _alphabet_size(w, metric, sigma)
    _check_budget("brute_force_oracle", oracle_work(len(w), m, sigma), budget)
    tilings = list(iter_tilings(len(w), m))
    best = None
    for s in product(range(sigma), repeat=m):
        for tiling in tilings:
            if not is_valid_tiling(s, tiling):
                continue
            d = metric.distance(w, expand(s, tiling))
            if best is None or d < best[0]:
                best = (d, s, tiling)
    d, s, tiling = best
    return CoverSolution(s, tiling, d, matched_count(w, expand(s, tiling)))


def brute_force_general(w: Sequence[int], metric=None, *, sigma: Optional[int] = None,
                        budget: Optional[int] = None) -> CoverSolution:
    """Best distance over every proper tile length; the shortest tile wins ties."""
    metric = metric if metric is not None else Hamming()
    w = as_word(w)
    if len(w) < 2:
        raise ValueError("a proper cover needs |w| >= 2")
    sigma = _alphabet_size(w, metric, sigma)
    _check_budget("brute_force_general",
                  sum(oracle_work(len(w), m, sigma) for m in range(1, len(w))), budget)
    best = None
    for m in range(1, len(w)):
        sol = brute_force_oracle(w, m, metric, sigma=sigma, budget=budget)
        if best is None or sol.distance < best.distance:
            best = sol
    return best


# -- Hamming approximation -------------------------------------------------------------


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            if b < a:
                a, b = b, a
            self.parent[b] = a


def best_tile_for_tiling(w: Sequence[int], tiling: Tiling) -> Word:
    """Hamming-optimal tile for a fixed tiling.

    Overlaps force equalities between tile offsets; each resulting class takes
    the majority symbol over the word positions it lands on.
    """
    w = tuple(w)
    if tiling.n != len(w):
        raise ValueError("tiling size does not match the word")
    m = tiling.norm
    uf = _UnionFind(m)
    for left, right, overlap in tiling.overlaps():
        gap = right - left
        for j in range(overlap):
            uf.union(j, gap + j)
    votes = [Counter() for _ in range(m)]
    owner = [None] * len(w)
    for st in tiling.starts:
        for j in range(m):
            owner[st - 1 + j] = j
    for pos, j in enumerate(owner):
        votes[uf.find(j)][w[pos]] += 1
    choice = {}
    for root in {uf.find(j) for j in range(m)}:
        c = votes[root]
        top = max(c.values())
        choice[root] = min(a for a, k in c.items() if k == top)
    return tuple(choice[uf.find(j)] for j in range(m))


def approx_case(n: int, m: int) -> int:
    """1: constant tile, 2: hybrid tile, 3: exact search over tilings with few starts.

    The exact branch wins whenever ``3m > n``; for ``n < 9`` that range
    overlaps ``m <= ceil(sqrt(n))``.
    """
    if 3 * m > n:
        return 3
    if m <= math.isqrt(n - 1) + 1:  # ceil(sqrt(n)) for n >= 1
        return 1
    return 2


def hybrid_tile(w: Sequence[int], m: int, alpha: int) -> Word:
    """``alpha^a + w[a+1 .. m-a] + alpha^a`` with ``a = ceil(m/3)``; length exactly ``m``."""
    a = -(-m // 3)
    if 2 * a >= m:
        return (alpha,) * m
    return (alpha,) * a + tuple(w[a:m - a]) + (alpha,) * a


def hybrid_tiling(n: int, m: int) -> Tiling:
    """A tiling with norm ``m`` whose gaps all lie in ``[m - ceil(m/3), m]``."""
    a = -(-m // 3)
    span = n - m
    if span == 0:
        return Tiling(n, (1,))
    gaps = -(-span // m)
    excess = gaps * m - span
    if excess > gaps * a:
        raise ValueError(f"no hybrid tiling for n={n}, m={m}")
    starts = [1]
    for _ in range(gaps):
        cut = min(a, excess)
        excess -= cut
        starts.append(starts[-1] + m - cut)
    return Tiling(n, tuple(starts))


def _solution(w, s, tiling) -> CoverSolution:
    v = expand(s, tiling)
    d = Hamming().distance(w, v)
    return CoverSolution(tuple(s), tiling, d, len(w) - d)


def approx_acp(w: Sequence[int], m: int) -> CoverSolution:
    """Polynomial-time Hamming ACP approximation with ratio O(sqrt|w|).

    Short tiles use the most frequent symbol repeated; medium tiles use the
    hybrid tile; long tiles (``3m > n``) are solved exactly, because a
    minimal covering tiling then has at most four starts.
    """
    w = _check_instance(w, m)
    n = len(w)
    alpha, _ = most_frequent(w)
    constant = _solution(w, (alpha,) * m, Tiling.dense(n, m))
    case = approx_case(n, m)
    if case == 1:
        return constant
    if case == 2:
        other = _solution(w, hybrid_tile(w, m, alpha), hybrid_tiling(n, m))
    else:
        other = None
        for tiling in iter_tilings(n, m, max_starts=4):
            sol = _solution(w, best_tile_for_tiling(w, tiling), tiling)
            if other is None or sol.key() < other.key():
                other = sol
    return min(constant, other, key=CoverSolution.key)


def efficiency(w: Sequence[int], candidate: CoverSolution, optimum: CoverSolution) -> Fraction:
    """Hamming matches of ``candidate`` relative to those of ``optimum``."""
    n = len(w)
    h = Hamming()
    top = n - h.distance(w, candidate.expansion())
    bottom = n - h.distance(w, optimum.expansion())
    if bottom <= 0:
        raise RuntimeError("optimum matches no character; efficiency undefined")
    return Fraction(top, bottom)
