"""Command-line front end.

Exit codes: 0 ok, 2 bad input, 3 work budget exceeded, 4 nothing found under
tolerance, 5 some decode input invalid. Distances are always printed exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import bench
from .blockcode import BlockCodeParams, psi_decode, psi_encode
from .core import CoverSolution, as_word, is_cover, shortest_cover
from .metrics import (
    Hamming,
    PseudometricTable,
    ShiftMetric,
    TableMetric,
    format_distance,
    load_table,
    parse_distance,
    squared_hamming,
)
from .pseudo import InvalidTable, acp_pseudometric, compute_quotient
from .solvers import (
    ResourceError,
    approx_acp,
    approx_case,
    brute_force_oracle,
    efficiency,
    fpt_acp,
    fpt_acp_superadditive,
    fpt_work,
    oracle_work,
    work_budget,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_TOLERANCE, EXIT_INVALID = 0, 2, 3, 4, 5


class InputError(ValueError):
    pass


@dataclass
class Alphabet:
    """How symbols are rendered: text characters, or bare integers."""

    names: Optional[Sequence[str]] = None

    def render(self, word) -> str:
        if self.names is None:
            return ",".join(str(x) for x in word)
        return "".join(self.names[x] for x in word)


@dataclass
class RunReport:
    command: List[str]
    fields: dict = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def to_dict(self) -> dict:
        out = {"command": self.command, **self.fields}
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def solution_dict(sol: CoverSolution, alphabet: Alphabet) -> dict:
    return {
        "tile": alphabet.render(sol.tile),
        "symbols": list(sol.tile),
        "tiling": list(sol.tiling.starts),
        "distance": format_distance(sol.distance),
        "matched": sol.matched,
    }


def read_word(args, table: Optional[PseudometricTable] = None):
    """Return ``(word, alphabet, sigma)`` from the positional text or ``--symbols``."""
    if getattr(args, "symbols", None):
        try:
            sigma = args.sigma if args.sigma is not None else (table.sigma if table else None)
            word = as_word((int(x) for x in args.symbols.split(",")), sigma)
        except ValueError as e:
            raise InputError(f"bad --symbols: {e}") from None
        names = list(table.alphabet) if table and all(len(a) == 1 for a in table.alphabet) else None
        return word, Alphabet(names), sigma
    if not args.word:
        raise InputError("give a word or --symbols")
    text = args.word
    if table is not None:
        try:
            word = tuple(table.index(ch) for ch in text)
        except ValueError as e:
            raise InputError(str(e)) from None
        return word, Alphabet(list(table.alphabet)), table.sigma
    names = sorted(set(text))
    index = {ch: k for k, ch in enumerate(names)}
    sigma = args.sigma if getattr(args, "sigma", None) is not None else len(names)
    if sigma < len(names):
        raise InputError(f"--sigma {sigma} is smaller than the {len(names)} symbols used")
    return tuple(index[ch] for ch in text), Alphabet(names), sigma


def _emit(report: RunReport, args, lines: Sequence[str]) -> None:
    if args.json:
        print(report.to_json())
    else:
        for line in lines:
            print(line)


def _solution_lines(prefix: str, sol: dict) -> List[str]:
    return [f"{prefix}tile: {sol['tile']}",
            f"{prefix}tiling: {' '.join(map(str, sol['tiling']))}",
            f"{prefix}distance: {sol['distance']}",
            f"{prefix}matched: {sol['matched']}"]


def cmd_scp(args) -> int:
    word, alphabet, _ = read_word(args)
    t0 = time.perf_counter()
    c = shortest_cover(word)
    tiling = is_cover(c, word)
    report = RunReport(["scp", alphabet.render(word)], {
        "tile": alphabet.render(c),
        "symbols": list(c),
        "tiling": list(tiling.starts),
        "proper": len(c) < len(word),
    })
    if args.timing:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
    _emit(report, args, [f"tile: {alphabet.render(c)}", f"proper: {str(len(c) < len(word)).lower()}",
                         f"tiling: {' '.join(map(str, tiling.starts))}"])
    return EXIT_OK


def _metric(args, sigma):
    if args.metric == "hamming":
        return Hamming(sigma), None
    if args.metric == "shift":
        return ShiftMetric(sigma), None
    if args.metric == "squared-hamming":
        return squared_hamming(sigma), None
    if args.metric == "table":
        if not args.table:
            raise InputError("--metric table needs --table FILE")
        table = _load_table(args.table)
        return TableMetric(table), table
    raise InputError(f"unknown metric {args.metric}")


def _load_table(path) -> PseudometricTable:
    try:
        return load_table(path)
    except (OSError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot read table {path}: {e}") from None


def cmd_acp(args) -> int:
    table = _load_table(args.table) if args.metric == "table" and args.table else None
    word, alphabet, sigma = read_word(args, table)
    metric, _ = _metric(args, sigma)
    if not 1 <= args.m < len(word):
        raise InputError(f"--m must satisfy 1 <= m < {len(word)}")
    if args.solver == "super" and args.tolerance is None:
        raise InputError("--solver super needs --tolerance")
    if args.solver in ("fpt", "approx") and args.metric == "squared-hamming":
        raise InputError("squared-hamming is not additive; use --solver super or oracle")
    if args.solver == "approx" and args.metric != "hamming":
        raise InputError("the approximation solver is Hamming-only")

    n, m = len(word), args.m
    fields = {"solver": args.solver, "metric": args.metric, "m": m, "n": n, "sigma": sigma}
    t0 = time.perf_counter()
    if args.solver == "fpt":
        fields["budget"] = {"work": fpt_work(n, m, sigma), "cap": work_budget()}
        sol = fpt_acp(word, m, metric, sigma=sigma, workers=args.workers)
    elif args.solver == "oracle":
        fields["budget"] = {"work": oracle_work(n, m, sigma), "cap": work_budget()}
        sol = brute_force_oracle(word, m, metric, sigma=sigma)
    elif args.solver == "approx":
        fields["case"] = approx_case(n, m)
        sol = approx_acp(word, m)
    else:
        tol = parse_distance(args.tolerance)
        fields["seed"] = args.seed
        fields["tolerance"] = format_distance(tol)
        fields["restarts"] = args.restarts
        sol = fpt_acp_superadditive(word, m, metric, tol, restarts=args.restarts, seed=args.seed, sigma=sigma)
        if sol is None:
            fields["solution"] = None
            report = RunReport(["acp", alphabet.render(word)], fields)
            _emit(report, args, ["no solution found under tolerance"])
            return EXIT_TOLERANCE
    fields["solution"] = solution_dict(sol, alphabet)
    lines = _solution_lines("", fields["solution"])
    if args.with_oracle:
        opt = brute_force_oracle(word, m, metric, sigma=sigma)
        fields["optimum"] = solution_dict(opt, alphabet)
        lines += _solution_lines("optimum ", fields["optimum"])
        if args.metric == "hamming":
            eta = efficiency(word, sol, opt)
            fields["efficiency"] = format_distance(eta)
            lines.append(f"efficiency: {format_distance(eta)}")
    report = RunReport(["acp", alphabet.render(word)], fields)
    if args.timing:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
    _emit(report, args, lines)
    return EXIT_OK


def cmd_quotient(args) -> int:
    table = _load_table(args.table)
    try:
        q = compute_quotient(table)
    except InvalidTable as e:
        print(json.dumps({"error": "invalid table", "violations": [str(v) for v in e.violations]}))
        return EXIT_INPUT
    word, alphabet, _ = read_word(args, table)
    if not 1 <= args.m < len(word):
        raise InputError(f"--m must satisfy 1 <= m < {len(word)}")
    t0 = time.perf_counter()
    sol = acp_pseudometric(word, args.m, table)
    classes = [[table.alphabet[x] for x in cls] for cls in q.classes]
    fields = {"classes": classes, "representatives": [table.alphabet[x] for x in q.representative],
              "m": args.m, "solution": solution_dict(sol, alphabet)}
    report = RunReport(["quotient", alphabet.render(word)], fields)
    if args.timing:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
    lines = ["classes: " + " ".join("{" + ",".join(c) + "}" for c in classes)]
    _emit(report, args, lines + _solution_lines("", fields["solution"]))
    return EXIT_OK


def _lines(args, stdin):
    items = list(args.items) if args.items else [ln for ln in stdin.read().splitlines()]
    return [ln.strip() for ln in items if ln.strip()]


def cmd_encode(args, stdin=None) -> int:
    params = _params(args)
    for line in _lines(args, stdin or sys.stdin):
        try:
            x = int(line)
            if x < 0:
                raise ValueError
        except ValueError:
            raise InputError(f"not a non-negative integer: {line!r}") from None
        print(",".join(map(str, psi_encode(x, params))))
    return EXIT_OK


def cmd_decode(args, stdin=None) -> int:
    params = _params(args)
    status = EXIT_OK
    for line in _lines(args, stdin or sys.stdin):
        try:
            value = psi_decode([int(t) for t in line.split(",")], params)
        except ValueError:  # not a comma-separated list of integers
            value = None
        if value is None:
            print("INVALID")
            status = EXIT_INVALID
        else:
            print(value)
    return status


def _params(args) -> BlockCodeParams:
    try:
        return BlockCodeParams(args.p)
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_bench(args) -> int:
    suite = bench.SUITES[args.suite]
    total = failed = 0
    worst = None
    for record in suite(seed=args.seed) if args.suite != "codec" else suite(limit=args.limit):
        total += 1
        failed += not record["ok"]
        if "inv_eta" in record:
            ratio = Fraction(record["inv_eta"])
            worst = ratio if worst is None else max(worst, ratio)
        if not args.quiet:
            print(json.dumps(record, sort_keys=True))
    summary = {"suite": args.suite, "cases": total, "failed": failed, "ok": failed == 0}
    if worst is not None:
        summary["max_inv_eta"] = format_distance(worst)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasicover", description="String covers and approximate string covers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def word_args(p):
        p.add_argument("word", nargs="?", help="input text; each character is a symbol")
        p.add_argument("--symbols", help="comma-separated integer symbols instead of text")
        p.add_argument("--sigma", type=int, help="alphabet size")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--timing", action="store_true", help="include elapsed_ms in the report")

    p = sub.add_parser("scp", help="shortest exact cover")
    word_args(p)
    p.set_defaults(func=cmd_scp)

    p = sub.add_parser("acp", help="approximate cover with a fixed tile length")
    word_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--metric", default="hamming", choices=["hamming", "shift", "squared-hamming", "table"])
    p.add_argument("--table", help="pseudometric table JSON for --metric table")
    p.add_argument("--solver", default="fpt", choices=["oracle", "fpt", "approx", "super"])
    p.add_argument("--tolerance", help="strict upper bound on distance for --solver super")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--with-oracle", action="store_true", help="also run the exhaustive oracle")
    p.set_defaults(func=cmd_acp)

    p = sub.add_parser("quotient", help="ACP under a pseudometric table via halo factorization")
    word_args(p)
    p.add_argument("--table", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_quotient)

    for name, fn in (("encode", cmd_encode), ("decode", cmd_decode)):
        p = sub.add_parser(name, help=f"{name} self-delimiting integer codes")
        p.add_argument("--p", type=int, required=True, help="code alphabet size (>= 5)")
        p.add_argument("items", nargs="*", help="values; read from stdin, one per line, if absent")
        p.set_defaults(func=fn)

    p = sub.add_parser("bench", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(bench.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=10 ** 4, help="largest integer for the codec suite")
    p.add_argument("--quiet", action="store_true", help="print only the summary line")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
