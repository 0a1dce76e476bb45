"""Command-line interface: ``lyndonruns {runs,lyndon,tree,period,verify,density,bench}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.

Output formats
--------------
runs (json)::

    {"n": 11, "runs": [{"start": 1, "end": 2, "period": 1,
      "exponent_num": 2, "exponent_den": 1}, ...],
     "count": 7, "sigma_num": 29, "sigma_den": 2}

runs (tsv): one ``start<TAB>end<TAB>period<TAB>num/den`` line per run,
sorted by (start, end).

lyndon: ``i<TAB>end`` per position for one order, or
``i<TAB>end0<TAB>end1`` when ``--order both``.  With ``--factorize`` the
Duval factors joined by ``|``.

tree: DOT, or nested JSON ``{"order", "n", "tree": {"start", "end",
"run", "left", "right"}}`` with leaves lacking children.

period: ``i j p`` or ``i j -`` per query line.

verify / density: the harness report as one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .core import Order, Text
from .lyndon import compute_lyndon_array, duval_factorization
from .lyndontree import TwoPeriodIndex, to_dot, to_json
from .runs import compute_all_runs


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 2."""


def _read_input(args) -> bytes:
    if args.text is not None:
        try:
            data = args.text.encode("ascii")
        except UnicodeEncodeError:
            raise UsageError("--text must be ASCII; use --input for binary data") from None
    else:
        try:
            data = Path(args.input).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    if not data:
        raise UsageError("empty input")
    return data


def _load(args) -> Text:
    return Text.from_bytes(_read_input(args))


def cmd_runs(args, out) -> int:
    text = _load(args)
    runs = compute_all_runs(text)
    if args.format == "tsv":
        for r in runs:
            e = r.exponent
            out.write(f"{r.start}\t{r.end}\t{r.period}\t{e.numerator}/{e.denominator}\n")
        return 0
    total = runs.exponent_sum()
    doc = {
        "n": text.n,
        "runs": [
            {
                "start": r.start,
                "end": r.end,
                "period": r.period,
                "exponent_num": r.exponent.numerator,
                "exponent_den": r.exponent.denominator,
            }
            for r in runs
        ],
        "count": len(runs),
        "sigma_num": total.numerator,
        "sigma_den": total.denominator,
    }
    json.dump(doc, out, separators=(",", ":"))
    out.write("\n")
    return 0


def cmd_lyndon(args, out) -> int:
    text = _load(args)
    if args.factorize:
        if args.order == "both":
            raise UsageError("--factorize needs --order 0 or 1")
        factors = duval_factorization(text.chars.tolist(), int(args.order))
        out.write("|".join(text.render(1 + f0, f0 + len(f)) for f0, f in _offsets(factors)) + "\n")
        return 0
    lyn = compute_lyndon_array(text)
    if args.order == "both":
        e0, e1 = lyn.ends(0), lyn.ends(1)
        out.writelines(f"{i}\t{a}\t{b}\n" for i, (a, b) in enumerate(zip(e0.tolist(), e1.tolist()), 1))
    else:
        out.writelines(f"{i}\t{e}\n" for i, e in enumerate(lyn.ends(int(args.order)).tolist(), 1))
    return 0


def _offsets(factors):
    pos = 0
    for f in factors:
        yield pos, f
        pos += len(f)


def cmd_tree(args, out) -> int:
    text = _load(args)
    order = Order(int(args.order))
    index = TwoPeriodIndex.build(text)
    tree = index.tree(order)
    out.write(to_dot(tree, index.runs) if args.dot else to_json(tree, index.runs))
    return 0


def _parse_queries(lines, n: int):
    queries = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise UsageError(f"malformed query on line {lineno}: {line.rstrip()!r}") from None
        if not 1 <= i <= j <= n:
            raise UsageError(f"query on line {lineno} outside [1..{n}]: {line.rstrip()!r}")
        queries.append((i, j))
    return queries


def cmd_period(args, out) -> int:
    text = _load(args)
    try:
        if args.queries == "-":
            lines = sys.stdin.read().splitlines()
        else:
            lines = Path(args.queries).read_text().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read queries {args.queries}: {exc}") from None
    queries = _parse_queries(lines, text.n)
    index = TwoPeriodIndex.build(text)
    for i, j in queries:
        hit = index.query(i, j)
        out.write(f"{i} {j} {'-' if hit is None else hit[0]}\n")
    return 0


def _corpus(args) -> harness.CorpusSpec:
    return harness.CorpusSpec(
        mode=args.mode,
        sigma=args.sigma,
        min_len=args.min_len,
        max_len=args.max_len,
        trials=args.trials,
        seed=args.seed,
        budget=args.budget,
        path=args.path,
    )


def cmd_verify(args, out) -> int:
    checks = harness.ALL_CHECKS if not args.checks else tuple(c.strip() for c in args.checks.split(","))
    gates = harness.Gates(args.lyndon_gate, args.tree_gate, args.query_gate)
    try:
        report = harness.verify(_corpus(args), checks, gates, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(report.to_json())
    return 0 if report.ok else 1


def cmd_density(args, out) -> int:
    try:
        report = harness.density_search(_corpus(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(report.to_json())
    return 0


def cmd_bench(args, out) -> int:
    kinds = harness.BENCH_KINDS if args.kind == "all" else (args.kind,)
    if args.size < 1:
        raise UsageError("--size must be positive")
    results = [harness.bench(k, args.size, args.seed, args.repeat) for k in kinds]
    out.write(harness.format_bench(results))
    return 0


def _add_input(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", help="inline ASCII string")
    src.add_argument("--input", help="file read as raw bytes")


def _add_corpus(p):
    p.add_argument("--mode", choices=("exhaustive", "random", "file"), default="exhaustive")
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--min-len", type=int, default=1)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=harness.DEFAULT_BUDGET, help="maximum corpus size (default 2^24)")
    p.add_argument("--path", help="corpus file, one string per line (file mode)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lyndonruns", description="Runs, Lyndon arrays and Lyndon trees of strings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("runs", help="list all runs")
    _add_input(p)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(func=cmd_runs)

    p = sub.add_parser("lyndon", help="longest Lyndon word ending per position")
    _add_input(p)
    p.add_argument("--order", choices=("0", "1", "both"), default="both")
    p.add_argument("--factorize", action="store_true", help="print the Lyndon factorization instead")
    p.set_defaults(func=cmd_lyndon)

    p = sub.add_parser("tree", help="Lyndon tree of #w$")
    _add_input(p)
    p.add_argument("--order", choices=("0", "1"), default="0")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("period", help="answer 2-period queries")
    _add_input(p)
    p.add_argument("--queries", required=True, help="file of 'i j' lines, or - for stdin")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("verify", help="check the fast paths against oracles over a corpus")
    _add_corpus(p)
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(harness.ALL_CHECKS)}")
    p.add_argument("--lyndon-gate", type=int, default=64)
    p.add_argument("--tree-gate", type=int, default=64)
    p.add_argument("--query-gate", type=int, default=64)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("density", help="search a corpus for run-dense strings")
    _add_corpus(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("bench", help="time each pipeline stage on a generated input")
    p.add_argument("--kind", choices=harness.BENCH_KINDS + ("all",), default="random")
    p.add_argument("--size", type=int, default=1 << 20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"lyndonruns {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
