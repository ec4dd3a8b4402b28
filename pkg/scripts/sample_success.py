"""Per-repetition success rate on one Hamiltonian instance as ell varies.

Smaller weight ranges make cancellation among minimum-weight paths more
likely; this prints the fraction of repetitions whose accumulated value is
nonzero for each ell.

    python scripts/sample_success.py --n 10 --delta 3 --samples 500 --ells 2 4 16 0
(ell 0 means the default 100 |A|.)
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from sparseham.cli import generate_random_digraph
from sparseham.engine import run_repetition
from sparseham.fingerprint import derive_params
from sparseham.graph import split_vertex
from sparseham.oracle import count_hamiltonian_cycles


@dataclass
class SuccessConfig:
    n: int = 10
    delta: float = 3.0
    samples: int = 500
    ells: tuple[int, ...] = (2, 4, 16, 0)
    seed: int = 0


def run(cfg: SuccessConfig) -> None:
    g = generate_random_digraph(cfg.n, cfg.delta, True, np.random.default_rng(cfg.seed))
    split = split_vertex(g, 0)
    print(f"# n={cfg.n} arcs={g.arc_count} hamiltonian_cycles={count_hamiltonian_cycles(g)}")
    print("ell,tau,k,samples,nonzero,rate")
    for ell in cfg.ells:
        p = derive_params(split, ell=ell or None)
        hits = sum(run_repetition(split, p, rep, master_seed=cfg.seed).nonzero for rep in range(cfg.samples))
        print(f"{p.ell},{p.tau},{p.k},{cfg.samples},{hits},{hits / cfg.samples:.4f}", flush=True)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=SuccessConfig.n)
    ap.add_argument("--delta", type=float, default=SuccessConfig.delta)
    ap.add_argument("--samples", type=int, default=SuccessConfig.samples)
    ap.add_argument("--ells", type=int, nargs="+", default=list(SuccessConfig.ells))
    ap.add_argument("--seed", type=int, default=SuccessConfig.seed)
    a = ap.parse_args()
    run(SuccessConfig(a.n, a.delta, a.samples, tuple(a.ells), a.seed))


if __name__ == "__main__":
    main()
