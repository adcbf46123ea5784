"""Command line front end.

    gencluster example g2 -o g2.json
    gencluster mutate g2.json 1,2,1,2
    gencluster fpoly rank2.json 1,2,1,2 --index 2 --gupta
    gencluster verify rank2.json 1,2,1,2 --check all

Exit codes: 0 pass, 1 an identity failed, 2 a truncated computation did not
stabilize, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .errors import FalsificationError, GenClusterError, InconclusiveError, InputError
from .fixtures import EXAMPLES, example
from .gca import ClassicalEngine
from .gqca import QuantumEngine
from .patterns import run_path
from .seedfile import dumps_seed, load_seed
from .verify import CHECKS, VerifyReport, random_trials, run_checks

__all__ = ["main", "build_parser", "parse_path"]

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


def parse_path(text: str, n: int | None = None) -> list[int]:
    """``"1,2,1"`` -> ``[1, 2, 1]``; an empty string is the empty path."""
    text = text.strip()
    if not text:
        return []
    try:
        path = [int(tok) for tok in text.replace(" ", "").split(",")]
    except ValueError:
        raise InputError(f"path must be comma-separated integers, got {text!r}") from None
    if n is not None:
        bad = [k for k in path if not 1 <= k <= n]
        if bad:
            raise InputError(f"path entries must lie in [1, {n}], got {bad}")
    return path


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, default=str) + "\n")


def cmd_example(args, out) -> int:
    text = dumps_seed(example(args.name)) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_PASS


def cmd_mutate(args, out) -> int:
    seed = load_seed(args.seed)
    path = parse_path(args.path, seed.n)
    states = run_path(seed.Btilde, seed.md.r, path, seed.Lambda)
    _emit({"vertices": [st.as_dict() for st in states]}, out)
    return EXIT_PASS


def _index_prefix(path: list[int], index: int | None) -> list[int] | None:
    # F_{i;t} only changes when direction i is mutated
    if index is None:
        return path
    for j in range(len(path) - 1, -1, -1):
        if path[j] == index:
            return path[: j + 1]
    return None


def cmd_fpoly(args, out) -> int:
    seed = load_seed(args.seed)
    path = parse_path(args.path, seed.n)
    if args.index is not None and not 1 <= args.index <= seed.n:
        raise InputError(f"--index must lie in [1, {seed.n}]")
    prefix = _index_prefix(path, args.index)
    if args.quantum:
        eng = QuantumEngine(seed.pair(), seed.md)
        if not prefix:
            out.write("1\n")
            return EXIT_PASS
        kw = {"experimental": args.experimental}
        if args.truncation is not None:
            kw["start"] = args.truncation
        if args.max_bound is not None:
            kw["max_bound"] = args.max_bound
        F = eng.extract_fpoly(prefix, **kw)
        out.write(str(F) + "\n")
        if args.certificate:
            _emit(F.certificate.as_dict(), out)
        return EXIT_PASS
    eng = ClassicalEngine(seed.B, seed.md)
    if not prefix:
        out.write("1\n")
        return EXIT_PASS
    if args.gupta:
        F = eng.gupta_product(prefix)
    elif args.expansion:
        F = eng.gupta_expansion(prefix)
    else:
        F = eng.f_poly_direct(prefix)
    out.write(str(F) + "\n")
    return EXIT_PASS


def _trial_chunk(job: tuple) -> VerifyReport:
    trials, rseed, mode, checks, max_len = job
    return random_trials(trials, seed=rseed, mode=mode, checks=checks, max_len=max_len)


def cmd_verify(args, out) -> int:
    checks = CHECKS if "all" in args.check else tuple(dict.fromkeys(args.check))
    if args.seed_random is not None:
        mode = "quantum" if args.quantum else "classical"
        if mode == "classical":
            checks = tuple(c for c in checks if c != "q1") + ("triple",)
        jobs = max(1, args.jobs)
        sizes = [args.trials // jobs + (1 if j < args.trials % jobs else 0) for j in range(jobs)]
        work = [(s, args.seed_random * 1000 + j, mode, checks, args.max_len) for j, s in enumerate(sizes) if s]
        if jobs == 1:
            parts = list(map(_trial_chunk, work))
        else:
            with ProcessPoolExecutor(jobs) as pool:
                parts = list(pool.map(_trial_chunk, work))
        report = VerifyReport()
        for part in parts:
            report.extend(part)
    else:
        if args.seed is None or args.path is None:
            raise InputError("verify needs a seed file and a path, or --seed-random")
        seed = load_seed(args.seed)
        path = parse_path(args.path, seed.n)
        report = run_checks(seed, path, checks)
    _emit(report.as_dict(), out)
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[report.status]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gencluster", description="Generalized (quantum) cluster algebra computations.")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="write a bundled seed file")
    ex.add_argument("name", help=f"one of {', '.join(sorted(EXAMPLES))}")
    ex.add_argument("-o", "--output", help="file to write (default stdout)")
    ex.set_defaults(func=cmd_example)

    mu = sub.add_parser("mutate", help="dump B, Lambda, C, G, Gtilde at every vertex of a path")
    mu.add_argument("seed")
    mu.add_argument("path", help="comma-separated directions, e.g. 1,2,1")
    mu.set_defaults(func=cmd_mutate)

    fp = sub.add_parser("fpoly", help="render an F-polynomial")
    fp.add_argument("seed")
    fp.add_argument("path")
    fp.add_argument("--index", type=int, help="cluster variable index (default: last direction)")
    how = fp.add_mutually_exclusive_group()
    how.add_argument("--direct", action="store_true", help="by direct mutation (default)")
    how.add_argument("--gupta", action="store_true", help="by the Gupta-type product")
    how.add_argument("--expansion", action="store_true", help="by the multinomial expansion")
    how.add_argument("--quantum", action="store_true", help="quantum F-polynomial with certificate")
    fp.add_argument("--truncation", type=int, help="initial truncation level for --quantum")
    fp.add_argument("--max-bound", type=int, help="largest truncation level tried")
    fp.add_argument("--experimental", action="store_true", help="allow h_{i,s}(1) <= 0")
    fp.add_argument("--certificate", action="store_true", help="also print the stabilization certificate")
    fp.set_defaults(func=cmd_fpoly)

    ve = sub.add_parser("verify", help="run identity checks and print a JSON report")
    ve.add_argument("seed", nargs="?")
    ve.add_argument("path", nargs="?")
    ve.add_argument("--check", action="append", choices=CHECKS + ("triple", "all"), default=None)
    ve.add_argument("--seed-random", type=int, metavar="RNG_SEED", help="check random instances instead of a file")
    ve.add_argument("--trials", type=int, default=50)
    ve.add_argument("--quantum", action="store_true", help="random quantum instances")
    ve.add_argument("--max-len", type=int, default=6)
    ve.add_argument("--jobs", type=int, default=1, help="worker processes for --trials")
    ve.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "check", "x") is None:
        args.check = ["all"]
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except FalsificationError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        _emit(exc.payload, sys.stderr)
        return EXIT_FAIL
    except GenClusterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
