"""Distances on equal-length words.

All values are exact: ints for Hamming, ``Fraction`` for weighted metrics, and
the distinguished ``INF`` for extended metrics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence


class _Infinity:
    """Positive infinity for extended metrics. Absorbing under addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("quasicover.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x) -> bool:
    return x is INF


def format_distance(x) -> str:
    """Exact string form: ``"inf"``, an integer, or ``"p/q"``."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_distance(text) -> object:
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    if isinstance(text, bool):
        raise ValueError("booleans are not distances")
    if isinstance(text, float):
        text = repr(text)
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


def _coerce(x):
    if x is INF or (isinstance(x, (int, Fraction)) and not isinstance(x, bool)):
        return x
    return parse_distance(x)


def _check_lengths(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


class AdditiveMetric:
    """Sum of per-position symbol costs ``cost(i, a, b)`` with 1-based ``i``."""

    homogeneous = True
    sigma: Optional[int] = None

    def cost(self, pos: int, a: int, b: int):
        raise NotImplementedError

    def distance(self, u: Sequence[int], v: Sequence[int]):
        _check_lengths(u, v)
        return sum((self.cost(i, a, b) for i, (a, b) in enumerate(zip(u, v), 1)), 0)

    def segment_cost(self, w: Sequence[int], lo: int, hi: int, s: Sequence[int], s_lo: int):
        """Cost of positions ``lo..hi`` of ``w`` against ``s`` read from offset ``s_lo``.

        Positions are absolute in ``w``, so position-weighted metrics stay correct
        when segments are summed along a tiling.
        """
        if not (1 <= lo <= hi <= len(w)) or s_lo < 1 or s_lo + hi - lo > len(s):
            raise ValueError(f"segment {lo}..{hi} / tile offset {s_lo} out of range")
        total = 0
        off = s_lo - lo - 1
        for i in range(lo, hi + 1):
            total = total + self.cost(i, w[i - 1], s[i + off])
        return total


class Hamming(AdditiveMetric):
    def __init__(self, sigma: Optional[int] = None):
        self.sigma = sigma

    def cost(self, pos, a, b):
        return 0 if a == b else 1

    def distance(self, u, v):
        _check_lengths(u, v)
        return sum(1 for a, b in zip(u, v) if a != b)

    def segment_cost(self, w, lo, hi, s, s_lo):
        if not (1 <= lo <= hi <= len(w)) or s_lo < 1 or s_lo + hi - lo > len(s):
            raise ValueError(f"segment {lo}..{hi} / tile offset {s_lo} out of range")
        a = w[lo - 1:hi]
        b = s[s_lo - 1:s_lo - 1 + hi - lo + 1]
        return sum(1 for x, y in zip(a, b) if x != y)

    def __repr__(self):
        return "Hamming()"


class ShiftMetric(AdditiveMetric):
    """Mismatch at position ``i`` costs ``2**-i``."""

    homogeneous = False

    def __init__(self, sigma: Optional[int] = None):
        self.sigma = sigma

    def cost(self, pos, a, b):
        return 0 if a == b else Fraction(1, 2 ** pos)

    def __repr__(self):
        return "ShiftMetric()"


@dataclass(frozen=True)
class PseudometricTable:
    """Symmetric symbol-distance matrix; zero off-diagonal entries are allowed."""

    alphabet: tuple
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(str(a) for a in self.alphabet))
        rows = tuple(tuple(_coerce(x) for x in row) for row in self.d)
        object.__setattr__(self, "d", rows)

    @property
    def sigma(self) -> int:
        return len(self.d)

    def __call__(self, a: int, b: int):
        return self.d[a][b]

    def index(self, name: str) -> int:
        try:
            return self.alphabet.index(name)
        except ValueError:
            raise ValueError(f"unknown symbol {name!r}") from None

    @classmethod
    def from_matrix(cls, rows, alphabet=None) -> "PseudometricTable":
        rows = [list(r) for r in rows]
        if alphabet is None:
            alphabet = [str(i) for i in range(len(rows))]
        return cls(tuple(alphabet), tuple(tuple(r) for r in rows))

    @classmethod
    def hamming(cls, sigma: int, alphabet=None) -> "PseudometricTable":
        return cls.from_matrix([[0 if i == j else 1 for j in range(sigma)] for i in range(sigma)], alphabet)

    @classmethod
    def from_json(cls, doc) -> "PseudometricTable":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        if not isinstance(doc, dict) or "d" not in doc:
            raise ValueError('table JSON needs a "d" matrix')
        rows = doc["d"]
        alphabet = doc.get("alphabet")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError('"d" must be a list of rows')
        if alphabet is not None and len(alphabet) != len(rows):
            raise ValueError("alphabet size does not match the number of rows")
        return cls.from_matrix([[parse_distance(x) for x in r] for r in rows], alphabet)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet),
                "d": [[format_distance(x) for x in row] for row in self.d]}


@dataclass(frozen=True)
class Violation:
    axiom: str
    symbols: tuple

    def __str__(self):
        return f"{self.axiom} violated at {self.symbols}"


def validate_pseudometric(table) -> List[Violation]:
    """Exhaustively check the pseudometric axioms; the list is empty iff they hold."""
    rows = table.d if isinstance(table, PseudometricTable) else table
    k = len(rows)
    out: List[Violation] = []
    if any(len(r) != k for r in rows):
        return [Violation("square", (k,))]
    for a in range(k):
        if rows[a][a] != 0:
            out.append(Violation("zero-diagonal", (a,)))
        for b in range(k):
            x = rows[a][b]
            if x is INF or x < 0:
                out.append(Violation("positivity", (a, b)))
            if b > a and x != rows[b][a]:
                out.append(Violation("symmetry", (a, b)))
    if out:
        return out
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if rows[a][b] + rows[b][c] < rows[a][c]:
                    out.append(Violation("triangle", (a, b, c)))
    return out


class TableMetric(AdditiveMetric):
    """Homogeneous additive (pseudo)metric from one symbol table.

    The table may hold ``INF`` entries, which makes it an extended metric.
    """

    def __init__(self, table):
        self.table = table if isinstance(table, PseudometricTable) else PseudometricTable.from_matrix(table)
        self._rows = self.table.d
        self.sigma = self.table.sigma

    def cost(self, pos, a, b):
        return self._rows[a][b]

    def segment_cost(self, w, lo, hi, s, s_lo):
        if not (1 <= lo <= hi <= len(w)) or s_lo < 1 or s_lo + hi - lo > len(s):
            raise ValueError(f"segment {lo}..{hi} / tile offset {s_lo} out of range")
        rows = self._rows
        total = 0
        for x, y in zip(w[lo - 1:hi], s[s_lo - 1:]):
            total = total + rows[x][y]
        return total

    def __repr__(self):
        return f"TableMetric(sigma={self.sigma})"


class PositionalMetric(AdditiveMetric):
    """Additive metric with its own symbol table per position."""

    def __init__(self, tables: Sequence):
        self.tables = [t if isinstance(t, PseudometricTable) else PseudometricTable.from_matrix(t)
                       for t in tables]
        if not self.tables:
            raise ValueError("need at least one table")
        self.sigma = self.tables[0].sigma
        self.homogeneous = all(t.d == self.tables[0].d for t in self.tables)

    def cost(self, pos, a, b):
        if pos > len(self.tables):
            raise ValueError(f"no table for position {pos}")
        return self.tables[pos - 1].d[a][b]


class SuperadditiveMetric:
    """A word distance bounded below by an additive family.

    ``fn`` must accept any pair of equal-length words, including prefixes, so
    the tolerance-driven search can score partial tilings.
    """

    homogeneous = True

    def __init__(self, fn: Callable, lower_bound: AdditiveMetric, sigma: Optional[int] = None, name: str = "superadditive"):
        self.fn = fn
        self.lower_bound = lower_bound
        self.sigma = sigma
        self.name = name

    def distance(self, u, v):
        _check_lengths(u, v)
        return self.fn(tuple(u), tuple(v))

    def __repr__(self):
        return f"SuperadditiveMetric({self.name})"


def squared_hamming(sigma: Optional[int] = None) -> SuperadditiveMetric:
    h = Hamming(sigma)
    return SuperadditiveMetric(lambda u, v: h.distance(u, v) ** 2, h, sigma, "squared-hamming")


def distance(metric, u: Sequence[int], v: Sequence[int]):
    return metric.distance(u, v)


class ExtendedMetric:
    """Distance on an arbitrary point set, transported through an injection.

    Points in the image are measured by the base distance of their preimages.
    Anything else is infinitely far from every other point, and at distance 0
    from itself.
    """

    def __init__(self, base: Callable, preimage: Mapping[Hashable, Hashable]):
        self.base = base
        self.preimage = dict(preimage)

    def in_image(self, y) -> bool:
        return y in self.preimage

    def __call__(self, a, b):
        pa = self.preimage.get(a, _MISSING)
        pb = self.preimage.get(b, _MISSING)
        if pa is not _MISSING and pb is not _MISSING:
            return self.base(pa, pb)
        if pa is _MISSING and pb is _MISSING and a == b:
            return 0
        return INF

    distance = __call__


_MISSING = object()


def induced_extended_metric(base: Callable, phi: Mapping[Hashable, Hashable]) -> ExtendedMetric:
    """Induce an extended metric on the codomain of ``phi`` (a dict ``x -> phi(x)``)."""
    preimage: Dict = {}
    for x, y in phi.items():
        if y in preimage and preimage[y] != x:
            raise ValueError(f"not injective: {preimage[y]!r} and {x!r} both map to {y!r}")
        preimage[y] = x
    return ExtendedMetric(base, preimage)


def symbol_distance(metric) -> Callable:
    """Per-symbol distance of a homogeneous additive metric, as a 2-argument callable."""
    if isinstance(metric, TableMetric):
        return metric.table
    if isinstance(metric, AdditiveMetric) and metric.homogeneous:
        return lambda a, b: metric.cost(1, a, b)
    raise ValueError(f"{metric!r} has no single per-symbol distance")


def load_table(path) -> PseudometricTable:
    with open(path) as fh:
        return PseudometricTable.from_json(json.load(fh))
