"""Words, tilings, legal overlaps and exact shortest covers.

Words are tuples of non-negative integers (symbol ids). Tiling start positions
are 1-based everywhere in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Tuple

Word = Tuple[int, ...]


class TilingConflict(ValueError):
    """Raised when overlapping tiles disagree on a symbol."""

    def __init__(self, left: int, right: int, overlap: int):
        self.left = left
        self.right = right
        self.overlap = overlap
        super().__init__(
            f"tiles at {left} and {right} overlap by {overlap} "
            f"but the tile has no border of that length"
        )


def as_word(symbols: Iterable[int], sigma: Optional[int] = None) -> Word:
    """Validate and freeze a symbol sequence."""
    word = tuple(int(x) for x in symbols)
    if not word:
        raise ValueError("words must have length >= 1")
    for pos, x in enumerate(word, 1):
        if x < 0 or (sigma is not None and x >= sigma):
            raise ValueError(f"symbol {x} at position {pos} outside alphabet of size {sigma}")
    return word


@dataclass(frozen=True)
class Tiling:
    """Tile start positions over a word of length ``n``.

    The first start is 1, the norm (tile length) is ``n + 1 - starts[-1]`` and
    consecutive starts are at most one norm apart.
    """

    n: int
    starts: Tuple[int, ...]

    def __post_init__(self):
        starts = tuple(int(i) for i in self.starts)
        object.__setattr__(self, "starts", starts)
        if not starts or starts[0] != 1:
            raise ValueError("a tiling must start at position 1")
        if starts[-1] > self.n:
            raise ValueError(f"last start {starts[-1]} beyond n={self.n}")
        norm = self.n + 1 - starts[-1]
        for a, b in zip(starts, starts[1:]):
            if not 0 < b - a <= norm:
                raise ValueError(f"gap {b - a} between starts {a} and {b} not in 1..{norm}")

    @property
    def norm(self) -> int:
        return self.n + 1 - self.starts[-1]

    @property
    def last(self) -> int:
        return self.starts[-1]

    def __len__(self):
        return len(self.starts)

    def overlaps(self) -> Iterator[Tuple[int, int, int]]:
        """Yield ``(left, right, overlap)`` for consecutive starts; overlap may be 0."""
        m = self.norm
        for a, b in zip(self.starts, self.starts[1:]):
            yield a, b, a + m - b

    @classmethod
    def dense(cls, n: int, m: int) -> "Tiling":
        return cls(n, tuple(range(1, n - m + 2)))


@dataclass(frozen=True)
class OverlapSet:
    """Legal self-overlap lengths of a tile (always contains the tile length)."""

    m: int
    lengths: frozenset = field(default_factory=frozenset)

    def __contains__(self, delta) -> bool:
        return delta in self.lengths

    def __iter__(self):
        return iter(sorted(self.lengths))

    def __len__(self):
        return len(self.lengths)

    def allows(self, overlap: int) -> bool:
        # adjacency (overlap 0) is always allowed
        return overlap == 0 or overlap in self.lengths


def border_array(s: Sequence[int]) -> list:
    """Classic failure function: ``b[i]`` is the longest proper border of ``s[:i+1]``."""
    b = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = b[k - 1]
        if s[i] == s[k]:
            k += 1
        b[i] = k
    return b


def legal_overlaps(s: Sequence[int]) -> OverlapSet:
    m = len(s)
    if m < 1:
        raise ValueError("tile must be non-empty")
    b = border_array(s)
    lengths = {m}
    k = b[-1]
    while k:
        lengths.add(k)
        k = b[k - 1]
    return OverlapSet(m, frozenset(lengths))


def _check_shape(s: Sequence[int], tiling: Tiling) -> None:
    if len(s) != tiling.norm:
        raise ValueError(f"tile length {len(s)} does not match tiling norm {tiling.norm}")


def first_conflict(s: Sequence[int], tiling: Tiling) -> Optional[Tuple[int, int, int]]:
    _check_shape(s, tiling)
    delta = legal_overlaps(s)
    for left, right, o in tiling.overlaps():
        if not delta.allows(o):
            return left, right, o
    return None


def is_valid_tiling(s: Sequence[int], tiling: Tiling) -> bool:
    return first_conflict(s, tiling) is None


def expand(s: Sequence[int], tiling: Tiling) -> Word:
    """Write ``s`` at every start of ``tiling``; raises TilingConflict if they disagree."""
    conflict = first_conflict(s, tiling)
    if conflict is not None:
        raise TilingConflict(*conflict)
    out = [0] * tiling.n
    m = tiling.norm
    for st in tiling.starts:
        out[st - 1:st - 1 + m] = s
    return tuple(out)


def occurrences(c: Sequence[int], w: Sequence[int]) -> list:
    """1-based start positions of ``c`` in ``w`` (overlapping occurrences included)."""
    c = tuple(c)
    w = tuple(w)
    m = len(c)
    return [i + 1 for i in range(len(w) - m + 1) if w[i:i + m] == c]


def is_cover(c: Sequence[int], w: Sequence[int]) -> Optional[Tiling]:
    m, n = len(c), len(w)
    if not 1 <= m <= n:
        raise ValueError("cover candidate must satisfy 1 <= |c| <= |w|")
    occ = occurrences(c, w)
    if not occ or occ[0] != 1 or occ[-1] != n - m + 1:
        return None
    if any(b - a > m for a, b in zip(occ, occ[1:])):
        return None
    return Tiling(n, tuple(occ))


def shortest_cover(w: Sequence[int]) -> Word:
    """Shortest proper cover of ``w``, or ``w`` itself when none exists.

    Only prefixes need testing since every tiling starts at position 1.
    """
    w = as_word(w)
    for m in range(1, len(w)):
        if is_cover(w[:m], w) is not None:
            return w[:m]
    return w


@dataclass(frozen=True)
class CoverSolution:
    tile: Word
    tiling: Tiling
    distance: object
    matched: int

    @property
    def m(self) -> int:
        return len(self.tile)

    def expansion(self) -> Word:
        return expand(self.tile, self.tiling)

    def key(self):
        """Total order used for every tie-break: distance, tile, tiling."""
        return (self.distance, self.tile, self.tiling.starts)


def matched_count(w: Sequence[int], v: Sequence[int]) -> int:
    return sum(1 for a, b in zip(w, v) if a == b)
