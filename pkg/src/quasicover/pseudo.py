"""Halo factorization for additive pseudometrics.

Symbols at distance 0 from each other form a halo. Quotienting the alphabet by
halos gives a true metric, the ACP is solved there, and the tile is mapped back
through one representative per halo.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .core import CoverSolution, Word, as_word, expand, matched_count
from .metrics import PositionalMetric, PseudometricTable, TableMetric, validate_pseudometric
from .solvers import fpt_acp


class InvalidTable(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid pseudometric table: " + "; ".join(map(str, self.violations)))


@dataclass(frozen=True)
class QuotientMap:
    table: PseudometricTable
    class_of: Tuple[int, ...]
    representative: Tuple[int, ...]
    quotient_table: PseudometricTable

    @property
    def classes(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(x for x, c in enumerate(self.class_of) if c == k)
                     for k in range(len(self.representative)))


def compute_quotient(table: PseudometricTable) -> QuotientMap:
    problems = validate_pseudometric(table)
    if problems:
        raise InvalidTable(problems)
    d = table.d
    k = table.sigma
    class_of = [-1] * k
    reps = []
    for x in range(k):
        if class_of[x] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        for y in range(x, k):
            if d[x][y] == 0:
                class_of[y] = cid
    # zero distance must be transitive; a valid table guarantees it
    for x in range(k):
        for y in range(k):
            if (d[x][y] == 0) != (class_of[x] == class_of[y]):
                raise AssertionError(f"zero-distance relation not transitive at {x}, {y}")
    names = tuple("|".join(table.alphabet[y] for y in range(k) if class_of[y] == c)
                  for c in range(len(reps)))
    quotient = PseudometricTable(names, tuple(tuple(d[a][b] for b in reps) for a in reps))
    return QuotientMap(table, tuple(class_of), tuple(reps), quotient)


def factorize_word(w: Sequence[int], q: QuotientMap) -> Word:
    w = as_word(w)
    k = len(q.class_of)
    for x in w:
        if x >= k:
            raise ValueError(f"unknown symbol {x} for alphabet of size {k}")
    return tuple(q.class_of[x] for x in w)


def lift_solution(sol: CoverSolution, q: QuotientMap, w: Sequence[int]) -> CoverSolution:
    """Map a quotient-alphabet solution back to the original alphabet of ``w``."""
    tile = tuple(q.representative[c] for c in sol.tile)
    v = expand(tile, sol.tiling)
    return CoverSolution(tile, sol.tiling, TableMetric(q.table).distance(w, v), matched_count(w, v))


def acp_pseudometric(w: Sequence[int], m: int, table, **kwargs) -> CoverSolution:
    """Fixed-length ACP under a homogeneous additive pseudometric.

    ``table`` is one PseudometricTable shared by every position. A
    PositionalMetric is accepted only if all its tables coincide.
    """
    if isinstance(table, PositionalMetric):
        if not table.homogeneous:
            raise ValueError("halo factorization needs one table shared by all positions")
        table = table.tables[0]
    elif isinstance(table, TableMetric):
        table = table.table
    q = compute_quotient(table)
    wq = factorize_word(w, q)
    qsol = fpt_acp(wq, m, TableMetric(q.quotient_table), sigma=len(q.representative), **kwargs)
    return lift_solution(qsol, q, w)
