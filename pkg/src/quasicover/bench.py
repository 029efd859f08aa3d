"""Desk-scale verification suites behind ``quasicover bench``.

Each suite yields one JSON-ready dict per case; every dict carries ``ok``.
"""

from __future__ import annotations

import math
import random
from itertools import product

from .blockcode import BlockCodeParams, psi_decode, psi_encode
from .metrics import Hamming, format_distance
from .solvers import approx_acp, brute_force_oracle, efficiency, fpt_acp, most_frequent


def oracle_equiv(seed: int = 0, random_cases: int = 500):
    for n in range(4, 11):
        for m in range(2, 5):
            if m >= n:
                continue
            for w in product(range(2), repeat=n):
                yield _equiv_case(w, m, 2)
    rng = random.Random(seed)
    for _ in range(random_cases):
        n = rng.randint(2, 9)
        m = rng.randint(1, n - 1)
        w = tuple(rng.randrange(3) for _ in range(n))
        yield _equiv_case(w, m, 3)


def _equiv_case(w, m, sigma):
    h = Hamming(sigma)
    fast = fpt_acp(w, m, h)
    slow = brute_force_oracle(w, m, h)
    return {"suite": "oracle-equiv", "w": list(w), "m": m, "sigma": sigma,
            "fpt": format_distance(fast.distance), "oracle": format_distance(slow.distance),
            "ok": fast.distance == slow.distance}


def approx_ratio(seed: int = 0, cases: int = 1000):
    rng = random.Random(seed)
    for _ in range(cases):
        sigma = rng.randint(1, 4)
        n = rng.randint(2, 12)
        m = rng.randint(1, min(n - 1, 5))
        w = tuple(rng.randrange(sigma) for _ in range(n))
        yield approx_case_record(w, m, sigma)


def approx_case_record(w, m, sigma):
    n = len(w)
    approx = approx_acp(w, m)
    opt = brute_force_oracle(w, m, Hamming(sigma))
    _, fmax = most_frequent(w)
    eta = efficiency(w, approx, opt)
    inv = 1 / eta
    checks = {
        "matched>=freq_max": approx.matched >= fmax,
        "1/eta<=m": inv <= m,
        "1/eta<=n/freq_max": inv * fmax <= n,
        "1/eta<=3ceil(sqrt n)+3": inv <= 3 * (math.isqrt(n - 1) + 1) + 3,
        "opt<=m*freq_max": opt.matched <= m * fmax,
    }
    if 3 * m > n:
        checks["case3-exact"] = approx.distance == opt.distance
    return {"suite": "approx-ratio", "w": list(w), "m": m, "eta": format_distance(eta),
            "inv_eta": format_distance(inv), "checks": checks, "ok": all(checks.values())}


def codec(limit: int = 10 ** 4, ps=(5, 7, 10)):
    for p in ps:
        params = BlockCodeParams(p)
        seen = set()
        bad = 0
        longest = 0
        for x in range(limit + 1):
            code = tuple(psi_encode(x, params))
            longest = max(longest, len(code))
            digits = max(1, ceil_log(p - 2, x + 1))
            if psi_decode(code, params) != x or code in seen or len(code) > 2 * digits + 2:
                bad += 1
            seen.add(code)
        yield {"suite": "codec", "p": p, "checked": limit + 1, "failures": bad,
               "longest_code": longest, "ok": bad == 0}


def ceil_log(base: int, v: int) -> int:
    """Smallest ``k`` with ``base**k >= v``, in exact integer arithmetic."""
    k, power = 0, 1
    while power < v:
        power *= base
        k += 1
    return k


SUITES = {"oracle-equiv": oracle_equiv, "approx-ratio": approx_ratio, "codec": codec}
