"""Self-delimiting integer codes over ``Z_p`` and the block-variation harness.

A code is a chain of segments separated by the symbol ``p - 1``::

    [L1] sep tau(x1) sep tau(x2) ... sep tau(x)

where ``tau`` writes base ``p - 2`` digits, each segment's value is the digit
length of the next one, and the leading single digit ``L1`` is at most ``p - 3``.
The symbol ``p - 2`` never occurs in a code.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .core import CoverSolution, Word, as_word, expand, is_valid_tiling
from .metrics import INF, TableMetric, induced_extended_metric, symbol_distance
from .solvers import brute_force_oracle, iter_tilings


@dataclass(frozen=True)
class BlockCodeParams:
    """Code alphabet ``Z_p``: digits ``0..p-3``, separator ``p-1``; ``p-2`` is never written."""

    p: int
    base: int = field(init=False)
    sep: int = field(init=False)
    max_direct: int = field(init=False)
    text_table: Optional[bytes] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p < 5:
            raise ValueError(f"p={self.p}: the length recursion only terminates for p >= 5")
        object.__setattr__(self, "base", self.p - 2)
        object.__setattr__(self, "sep", self.p - 1)
        object.__setattr__(self, "max_direct", self.p - 3)
        object.__setattr__(self, "text_table", _text_table(self.p) if self.p - 2 <= len(_DIGITS) else None)


def _tick(ops, n=1):
    if ops is not None:
        ops["steps"] += n


def tau_encode(x: int, base: int, ops: Optional[Counter] = None) -> List[int]:
    """Canonical base-``base`` digits of ``x``, most significant first; ``tau(0) == [0]``."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if x < 0:
        raise ValueError("x must be non-negative")
    digits = []
    while True:
        x, r = divmod(x, base)
        digits.append(r)
        _tick(ops)
        if x == 0:
            break
    digits.reverse()
    return digits


def tau_decode(digits: Sequence[int], base: int, ops: Optional[Counter] = None) -> Optional[int]:
    """Inverse of :func:`tau_encode`; None for empty or leading-zero input."""
    if not digits or (digits[0] == 0 and len(digits) > 1):
        return None
    value = 0
    for d in digits:
        if not 0 <= d < base:
            raise ValueError(f"digit {d} out of range for base {base}")
        value = value * base + d
        _tick(ops)
    return value


def psi_encode(x: int, params: BlockCodeParams, ops: Optional[Counter] = None) -> List[int]:
    t = tau_encode(x, params.base, ops)
    if len(t) <= params.max_direct:
        head = [len(t)]
    else:
        head = psi_encode(len(t), params, ops)
    _tick(ops, 1 + len(head))
    return head + [params.sep] + t


def psi_decode(w: Sequence[int], params: BlockCodeParams, ops: Optional[Counter] = None) -> Optional[int]:
    """Decode one complete code, or None if ``w`` is not exactly the code of some integer.

    Split at separators; every segment must be non-empty, the head a single
    digit in ``1..p-3``, each inner segment canonical and larger than ``p-3``
    (shorter lengths would have used the direct head), and each segment equal
    to the digit length of the following one. Symbols outside ``Z_p`` (and the
    unused ``p-2``) simply make the word invalid.
    """
    table = params.text_table
    if table is None:
        segments = _digit_segments(w, params)
        if segments is None:
            return None
    else:
        # one translation turns digits into text for int(); anything else becomes "!"
        try:
            text = (w if type(w) is bytes else bytes(w)).translate(table)
        except ValueError:
            return None
        if b"!" in text:
            return None
        segments = text.split(b",")
    if ops is not None:
        ops["steps"] += len(w)
    head = segments[0]
    if len(segments) < 2 or len(head) != 1:
        return None
    base, max_direct = params.base, params.max_direct
    if type(head) is bytes:
        value_of, zero = int, 48  # text digits: ord("0")
    else:
        value_of, zero = tau_decode, 0
    expected = value_of(head, base)
    if not 1 <= expected <= max_direct:
        return None
    last = len(segments) - 1
    value = None
    for k in range(1, last + 1):
        seg = segments[k]
        if len(seg) != expected or (expected > 1 and seg[0] == zero):
            return None
        if ops is not None:
            ops["steps"] += expected
        value = value_of(seg, base)
        if k < last and value <= max_direct:
            return None
        expected = value
    return value


_DIGITS = b"0123456789abcdefghijklmnopqrstuvwxyz"


def _text_table(p: int) -> bytes:
    """Byte translation for ``Z_p`` with at most 36 digits: digits to ``0-9a-z``, separator to ``,``, all else to ``!``."""
    table = bytearray(b"!" * 256)
    table[:p - 2] = _DIGITS[:p - 2]
    table[p - 1] = ord(",")
    return bytes(table)


def _digit_segments(w: Sequence[int], params: BlockCodeParams) -> Optional[List[Tuple[int, ...]]]:
    """Separator-split digit tuples, or None if a symbol is not a digit or separator."""
    out, current = [], []
    for x in w:
        if x == params.sep:
            out.append(tuple(current))
            current = []
        elif 0 <= x < params.base:
            current.append(x)
        else:
            return None
    out.append(tuple(current))
    return out


def read_code(w: Sequence[int], pos: int, params: BlockCodeParams, ops: Optional[Counter] = None) -> Optional[Tuple[int, int]]:
    """Read one code starting at index ``pos``; return ``(value, next_pos)`` or None.

    A code continues past a segment exactly when the next symbol is the
    separator, since a fresh code starts with a digit.
    """
    sep, base, n = params.sep, params.base, len(w)
    if pos >= n or not 1 <= w[pos] <= params.max_direct:
        return None
    length = w[pos]
    pos += 1
    while True:
        if pos >= n or w[pos] != sep:
            return None
        seg = w[pos + 1:pos + 1 + length]
        _tick(ops, length + 1)
        if len(seg) != length or any(d >= base or d < 0 for d in seg):
            return None
        value = tau_decode(seg, base, ops)
        if value is None:
            return None
        pos += 1 + length
        if pos < n and w[pos] == sep:
            if value <= params.max_direct:
                return None
            length = value
            continue
        return value, pos


def encode_word(w: Sequence[int], params: BlockCodeParams, ops: Optional[Counter] = None) -> Word:
    out: List[int] = []
    for x in as_word(w):
        out.extend(psi_encode(x, params, ops))
    return tuple(out)


def split_codes(w: Sequence[int], params: BlockCodeParams, ops: Optional[Counter] = None) -> Optional[List[Tuple[int, ...]]]:
    """Cut a concatenation of codes into its blocks, or None if it is not one."""
    w = tuple(w)
    blocks = []
    pos = 0
    while pos < len(w):
        got = read_code(w, pos, params, ops)
        if got is None:
            return None
        blocks.append(w[pos:got[1]])
        pos = got[1]
    return blocks if blocks else None


def decode_word(w: Sequence[int], params: BlockCodeParams, ops: Optional[Counter] = None) -> Optional[Word]:
    w = tuple(w)
    out = []
    pos = 0
    while pos < len(w):
        got = read_code(w, pos, params, ops)
        if got is None:
            return None
        out.append(got[0])
        pos = got[1]
    return tuple(out) if out else None


# -- block variation harness ---------------------------------------------------------


def non_image_blocks(codes: Sequence[Tuple[int, ...]], params: BlockCodeParams) -> List[Tuple[int, ...]]:
    """Corrupt each code in two ways (bump its last digit, drop its first separator),
    keeping only corruptions that fall outside the image."""
    image = set(codes)
    extra = []
    for c in codes:
        bumped = c[:-1] + ((c[-1] + 1) % params.base,)
        i = c.index(params.sep)
        dropped = c[:i] + c[i + 1:]
        for b in (bumped, dropped):
            if b not in image and b not in extra:
                extra.append(b)
    return extra


@dataclass
class BlockReport:
    word: Word
    m: int
    params: BlockCodeParams
    original: CoverSolution
    block: CoverSolution
    alphabet: Tuple[Tuple[int, ...], ...]
    non_image_scores: Tuple[object, ...]

    @property
    def decoded_tile(self) -> Optional[Word]:
        """The block tile flattened to ``Z_p`` and decoded back to ``Z_n``."""
        flat = [x for k in self.block.tile for x in self.alphabet[k]]
        return decode_word(flat, self.params)

    @property
    def ok(self) -> bool:
        return (self.original.distance == self.block.distance
                and self.decoded_tile == self.original.tile
                and self.block.tiling == self.original.tiling
                and all(s is INF for s in self.non_image_scores))


def block_acp_check(w: Sequence[int], m: int, metric, params: BlockCodeParams, *, n: Optional[int] = None,
                    budget: Optional[int] = None) -> BlockReport:
    """Solve an ACP instance over ``Z_n`` directly and as its block variation over ``Z_p``.

    The block word is the concatenation of codes, cut back into blocks by the
    self-delimiting decoder; tiles and tilings then live on block indices. The
    block alphabet holds every code of ``Z_n`` plus corrupted non-codes, and
    block distance is the metric induced by the encoding, so any tile using a
    non-code sits at infinite distance.
    """
    w = as_word(w)
    n = n if n is not None else getattr(metric, "sigma", None) or max(w) + 1
    original = brute_force_oracle(w, m, metric, sigma=n, budget=budget)

    codes = [tuple(psi_encode(x, params)) for x in range(n)]
    flat = encode_word(w, params)
    blocks = split_codes(flat, params)
    if blocks is None or len(blocks) != len(w):
        raise AssertionError("encoded word failed to split back into blocks")
    extras = non_image_blocks(codes, params)
    alphabet = codes + extras
    ids = {b: k for k, b in enumerate(alphabet)}
    induced = induced_extended_metric(symbol_distance(metric), {x: codes[x] for x in range(n)})
    block_metric = TableMetric([[induced(a, b) for b in alphabet] for a in alphabet])
    block_word = tuple(ids[b] for b in blocks)
    block = brute_force_oracle(block_word, m, block_metric, sigma=len(alphabet), budget=budget)

    # every tile holding a non-code must score INF under every tiling
    scores = []
    tilings = list(iter_tilings(len(w), m))
    for s in product(range(len(alphabet)), repeat=m):
        if all(k < n for k in s):
            continue
        best = INF
        for t in tilings:
            if is_valid_tiling(s, t):
                d = block_metric.distance(block_word, expand(s, t))
                if d < best:
                    best = d
        scores.append(best)

    return BlockReport(w, m, params, original, block, tuple(alphabet), tuple(scores))
