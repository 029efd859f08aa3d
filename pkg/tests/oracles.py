"""Independent reference implementations used only by the tests.

They share no code with the package beyond plain tuples, so agreement is
evidence rather than tautology.
"""

from itertools import product


def naive_overlaps(s):
    m = len(s)
    return {d for d in range(1, m + 1) if tuple(s[:d]) == tuple(s[m - d:])}


def naive_tilings(n, m):
    """Every start tuple of a tiling of size n with norm m, by DFS."""
    last = n - m + 1
    out = []

    def rec(starts):
        if starts[-1] == last:
            out.append(tuple(starts))
            return
        for nxt in range(starts[-1] + 1, min(starts[-1] + m, last) + 1):
            rec(starts + [nxt])

    if last >= 1:
        rec([1])
    return out


def paint(s, starts, n):
    """Write s at each start; None if two tiles disagree on a position."""
    out = [None] * n
    for st in starts:
        for j, x in enumerate(s):
            k = st - 1 + j
            if out[k] is not None and out[k] != x:
                return None
            out[k] = x
    return tuple(out)


def covers(c, w):
    """DFS: can copies of c, each matching w exactly, cover every position of w?"""
    n, m = len(w), len(c)
    c, w = tuple(c), tuple(w)
    if w[:m] != c:
        return False
    reach = {1}
    frontier = [1]
    while frontier:
        st = frontier.pop()
        if st == n - m + 1:
            return True
        for nxt in range(st + 1, min(st + m, n - m + 1) + 1):
            if nxt not in reach and w[nxt - 1:nxt - 1 + m] == c:
                reach.add(nxt)
                frontier.append(nxt)
    return False


def naive_shortest_cover(w):
    """Try every factor of every length; the first that covers wins."""
    w = tuple(w)
    n = len(w)
    for m in range(1, n):
        factors = sorted({w[i:i + m] for i in range(n - m + 1)})
        for c in factors:
            if covers(c, w):
                return c
    return w


def hamming(u, v):
    return sum(1 for a, b in zip(u, v) if a != b)


def naive_acp(w, m, sigma, dist=hamming):
    """Minimum over all tiles and tilings by painting; returns (distance, tile, starts)."""
    n = len(w)
    best = None
    tilings = naive_tilings(n, m)
    for s in product(range(sigma), repeat=m):
        for starts in tilings:
            v = paint(s, starts, n)
            if v is None:
                continue
            key = (dist(w, v), s, starts)
            if best is None or key < best:
                best = key
    return best


def floyd_warshall(d):
    k = len(d)
    d = [row[:] for row in d]
    for via in range(k):
        for a in range(k):
            for b in range(k):
                if d[a][via] + d[via][b] < d[a][b]:
                    d[a][b] = d[a][via] + d[via][b]
    return d


def random_pseudometric(rng, k, zero_rate=0.3, top=6):
    """Random symmetric matrix with some zero edges, closed under shortest paths."""
    d = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            x = 0 if rng.random() < zero_rate else rng.randint(1, top)
            d[a][b] = d[b][a] = x
    return floyd_warshall(d)
