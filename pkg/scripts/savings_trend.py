"""Contributing-term ratio E[Y] / 2^N as density drops.

Runs the count pass on planted-cycle instances for each density, once with
the default tau and once with tau scaled by ``--tau-scale`` (tau = ceil(scale
* n / delta) capped at n), and prints the exact ratio next to the measured
mean of terms_streamed.

    python scripts/savings_trend.py --n 24 --deltas 4 2 1.5 --trials 10
"""

from __future__ import annotations

import argparse
import math
import statistics
from dataclasses import dataclass

import numpy as np

from sparseham.cli import generate_random_digraph
from sparseham.engine import run_repetition
from sparseham.fingerprint import derive_params
from sparseham.graph import has_degenerate_vertex, split_vertex
from sparseham.sieve import expected_contributing_count


@dataclass
class TrendConfig:
    n: int = 24
    deltas: tuple[float, ...] = (4.0, 2.0, 1.5)
    trials: int = 10
    tau_scale: float = 0.5
    seed: int = 0


def planted(n, delta, rng):
    while True:
        g = generate_random_digraph(n, delta, True, rng)
        if not has_degenerate_vertex(g):
            return g


def run(cfg: TrendConfig) -> None:
    rng = np.random.default_rng(cfg.seed)
    print("delta,tau_rule,tau,k,exact_ratio,mean_terms,mean_ratio")
    for delta in cfg.deltas:
        graphs = [split_vertex(planted(cfg.n, delta, rng), 0) for _ in range(cfg.trials)]
        scaled_tau = min(cfg.n, max(1, math.ceil(cfg.tau_scale * cfg.n / delta)))
        for rule, tau in (("default", None), ("scaled", scaled_tau)):
            terms = []
            for i, g in enumerate(graphs):
                p = derive_params(g, tau=tau)
                terms.append(run_repetition(g, p, 0, master_seed=cfg.seed + i, evaluate=False).terms_streamed)
            p = derive_params(graphs[0], tau=tau)
            ratio = expected_contributing_count(cfg.n, p.tau, False, p.k) / (1 << cfg.n)
            mean = statistics.fmean(terms)
            print(f"{delta},{rule},{p.tau},{p.k},{float(ratio):.6f},{mean:.1f},{mean / (1 << cfg.n):.6f}", flush=True)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=TrendConfig.n)
    ap.add_argument("--deltas", type=float, nargs="+", default=list(TrendConfig.deltas))
    ap.add_argument("--trials", type=int, default=TrendConfig.trials)
    ap.add_argument("--tau-scale", type=float, default=TrendConfig.tau_scale)
    ap.add_argument("--seed", type=int, default=TrendConfig.seed)
    a = ap.parse_args()
    run(TrendConfig(a.n, tuple(a.deltas), a.trials, a.tau_scale, a.seed))


if __name__ == "__main__":
    main()
