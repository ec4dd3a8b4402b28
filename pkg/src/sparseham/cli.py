"""Command-line front end.

Results go to stdout, logs to stderr.  Exit codes: 0 completed (a NO verdict
included), 1 usage error, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from typing import Sequence

import numpy as np

from . import oracle
from .engine import EngineConfig, decide_hamiltonicity, run_repetition
from .fingerprint import sample_point, sample_q
from .graph import DirectedGraph, GraphFormatError, parse_graph, split_vertex

log = logging.getLogger("sparseham")

BENCH_COLUMNS = (
    "n", "delta", "tau", "k", "terms_streamed", "expected_terms", "wall_ms", "verdict",
    "aborted", "abort_factor",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def generate_random_digraph(
    n: int, delta: float, ensure_hamiltonian: bool, rng: np.random.Generator
) -> DirectedGraph:
    """Random digraph with round(delta * n) arcs, optionally on top of a hidden Hamiltonian cycle."""
    if n < 2:
        raise ValueError("need at least two vertices")
    budget = int(np.floor(delta * n + 0.5))
    capacity = n * (n - 1)
    if budget > capacity:
        raise ValueError(f"{budget} arcs do not fit a simple digraph on {n} vertices")
    arcs: list[tuple[int, int]] = []
    used: set[tuple[int, int]] = set()
    if ensure_hamiltonian:
        if budget < n:
            raise ValueError(f"a Hamiltonian cycle needs {n} arcs, budget is {budget}")
        order = [int(v) for v in rng.permutation(n)]
        for a, b in zip(order, order[1:] + order[:1]):
            arcs.append((a, b))
            used.add((a, b))
    need = budget - len(arcs)
    if need > (capacity - len(used)) // 2:
        free = [(a, b) for a in range(n) for b in range(n) if a != b and (a, b) not in used]
        picks = rng.choice(len(free), size=need, replace=False)
        arcs.extend(free[int(i)] for i in picks)
    else:
        while need:
            a, b = (int(v) for v in rng.integers(0, n, size=2))
            if a != b and (a, b) not in used:
                used.add((a, b))
                arcs.append((a, b))
                need -= 1
    return DirectedGraph(n, arcs)


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sparseham", description="Monte Carlo Hamiltonicity detection for sparse digraphs.")
    ap.add_argument("--mode", choices=("detect", "fullsum", "oracle", "bench"), default="detect")
    ap.add_argument("--input", metavar="FILE", help="edge-list file ('-' for stdin)")
    ap.add_argument("--seed", type=int, default=0)
    for name in ("tau", "k", "ell", "m", "reps"):
        ap.add_argument(f"--{name}", type=int)
    ap.add_argument("--abort-factor", type=int)
    ap.add_argument("--split-vertex", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument(
        "--fallback-max-n", type=int, default=10,
        help="inputs with at most this many vertices go to the exact oracle (0 disables)",
    )
    ap.add_argument("--n", type=int, help="bench: vertex count")
    ap.add_argument("--delta", type=float, help="bench: average outdegree")
    ap.add_argument("--trials", type=int, default=1, help="bench: number of random graphs")
    ap.add_argument("--ensure-hamiltonian", action="store_true", help="bench: plant a Hamiltonian cycle")
    ap.add_argument(
        "--evaluate", action="store_true",
        help="bench: run the full detector instead of only counting the first repetition's terms",
    )
    ap.add_argument("-v", "--verbose", action="count", default=0)
    return ap


def _config(args, **extra) -> EngineConfig:
    fields = dict(
        master_seed=args.seed,
        workers=args.workers,
        split_vertex=args.split_vertex,
        fallback_max_n=args.fallback_max_n,
        tau=args.tau,
        k=args.k,
        ell=args.ell,
        m=args.m,
        reps=args.reps,
        abort_factor=args.abort_factor,
    )
    fields.update(extra)
    return EngineConfig(**fields)


def _read_graph(args) -> DirectedGraph:
    if not args.input:
        raise UsageError(f"--input is required for mode {args.mode}")
    if args.input == "-":
        return parse_graph(sys.stdin.read())
    with open(args.input) as fh:
        return parse_graph(fh.read())


def _run_detect(args, out) -> None:
    g = _read_graph(args)
    report = decide_hamiltonicity(g, _config(args))
    print(report.verdict, file=out)
    print(f"method={report.method} n={g.vertex_count} arcs={g.arc_count}", file=out)
    if report.params is not None:
        p = report.params
        print(
            f"tau={p.tau} k={p.k} ell={p.ell} m={p.m} reps={p.reps} abort_factor={p.abort_factor}",
            file=out,
        )
    print(f"repetitions_run={report.repetitions_run}", file=out)
    for rs in report.per_rep:
        print(
            f"rep={rs.index} T={list(rs.T)} terms_streamed={rs.terms_streamed} "
            f"expected_terms={float(rs.expected_terms)} aborted={rs.aborted} nonzero={rs.nonzero}",
            file=out,
        )
    log.info("wall time %.3fs", report.wall_time)


def _run_fullsum(args, out) -> None:
    g = _read_graph(args)
    split = split_vertex(g, args.split_vertex)
    p = _config(args).resolve(split)
    rng = np.random.default_rng(args.seed)
    sp = sample_point(split, p, rng)
    q = sample_q(sp.T, rng)
    value = oracle.evaluate_p_fullsum(split, sp, q)
    print(f"T={list(sp.T)} q={[q[v] for v in sp.T]} k={p.k} m={p.m}", file=out)
    print(f"P_G(z) = {value}", file=out)
    print("nonzero" if value else "zero", file=out)


def _run_oracle(args, out) -> None:
    g = _read_graph(args)
    print("YES" if oracle.is_hamiltonian_bruteforce(g) else "NO", file=out)


def _run_bench(args, out) -> None:
    if args.n is None or args.delta is None:
        raise UsageError("bench needs --n and --delta")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for trial in range(args.trials):
        seq = np.random.SeedSequence([args.seed, trial])
        graph_rng = np.random.default_rng(seq)
        engine_seed = int(seq.generate_state(1, np.uint64)[0])
        g = generate_random_digraph(args.n, args.delta, args.ensure_hamiltonian, graph_rng)
        split = split_vertex(g, args.split_vertex)
        cfg = _config(args, master_seed=engine_seed, fallback_max_n=0)
        p = cfg.resolve(split)
        start = time.perf_counter()
        if args.evaluate:
            report = decide_hamiltonicity(g, cfg)
            first = report.per_rep[0] if report.per_rep else None
            verdict = report.verdict
        else:
            first = run_repetition(split, p, 0, engine_seed, evaluate=False)
            verdict = "NA"
        wall_ms = (time.perf_counter() - start) * 1000
        if first is None:  # short-circuited before any repetition
            writer.writerow((g.vertex_count, args.delta, p.tau, p.k, 0, 0, f"{wall_ms:.1f}", verdict, False, p.abort_factor))
            continue
        writer.writerow((
            g.vertex_count, args.delta, p.tau, p.k, first.terms_streamed,
            float(first.expected_terms), f"{wall_ms:.1f}", verdict, first.aborted, p.abort_factor,
        ))
        out.flush()


MODES = {"detect": _run_detect, "fullsum": _run_fullsum, "oracle": _run_oracle, "bench": _run_bench}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        MODES[args.mode](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (GraphFormatError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
