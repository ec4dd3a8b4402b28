"""Repeated sample-sieve-evaluate loop deciding Hamiltonicity."""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import oracle
from .fingerprint import LaplacianEvaluator, Params, derive_params, sample_point, sample_q
from .graph import DirectedGraph, SplitGraph, has_degenerate_vertex, split_vertex
from .ring import RingElement
from .sieve import branches, count_terms, expected_for_sample

log = logging.getLogger(__name__)

YES, NO = "YES", "NO"


@dataclass(frozen=True)
class EngineConfig:
    """Run configuration; parameter fields left as None are derived per graph."""

    master_seed: int = 0
    workers: int = 1
    split_vertex: int = 0
    fallback_max_n: int = 10
    evaluate: bool = True
    tau: int | None = None
    k: int | None = None
    ell: int | None = None
    m: int | None = None
    reps: int | None = None
    abort_factor: int | None = None

    def resolve(self, g: SplitGraph) -> Params:
        return derive_params(
            g,
            tau=self.tau,
            k=self.k,
            ell=self.ell,
            m=self.m,
            reps=self.reps,
            abort_factor=self.abort_factor,
        )


@dataclass(frozen=True)
class RepetitionStats:
    index: int
    T: tuple[int, ...]
    terms_streamed: int
    expected_terms: Fraction
    aborted: bool
    nonzero: bool
    value: RingElement | None = None


@dataclass(frozen=True)
class DetectionReport:
    verdict: str
    method: str  # "algebraic", "oracle" or "trivial"
    params: Params | None
    repetitions_run: int
    per_rep: tuple[RepetitionStats, ...]
    wall_time: float = field(default=0.0, compare=False)


def repetition_rng(master_seed: int, rep: int) -> np.random.Generator:
    """Counter-based stream for repetition ``rep``, independent of execution order."""
    seq = np.random.SeedSequence(master_seed & (2**64 - 1), spawn_key=(rep,))
    return np.random.Generator(np.random.Philox(seq))


def abort_limit(expected: Fraction, abort_factor: int) -> int:
    """Largest term count that does not trigger an abort."""
    return math.floor(abort_factor * expected)


def accumulate(partial: RingElement, term: RingElement) -> RingElement:
    return partial + term


def run_repetition(
    g: SplitGraph, p: Params, rep: int, master_seed: int = 0, evaluate: bool = True
) -> RepetitionStats:
    """One (z, T, q) sample: sieve, abort check, and evaluation of P_G(z).

    The term count is known from the branch null-space sizes before any
    determinant is taken, so an aborting repetition costs no determinants.
    ``terms_streamed`` is what a sequential consumer would have pulled: the
    whole stream, or one term past the abort limit.
    """
    rng = repetition_rng(master_seed, rep)
    sp = sample_point(g, p, rng)
    q = sample_q(sp.T, rng)
    expected = expected_for_sample(g, sp.T, p.k)
    limit = abort_limit(expected, p.abort_factor)
    total = count_terms(g, sp.T, q, p.k, limit=limit)
    if total > limit:
        return RepetitionStats(rep, sp.T, limit + 1, expected, True, False)
    if not evaluate:
        return RepetitionStats(rep, sp.T, total, expected, False, False)
    ev = LaplacianEvaluator(g, sp, q)
    mask = sp.ring.mask
    acc = 0
    for br in branches(g, sp.T, q, p.k):
        part = 0
        for y in br.assignments():
            part = (part + ev.term(y)) & mask
        acc = (acc + part) & mask
    value = RingElement(sp.ring, acc)
    return RepetitionStats(rep, sp.T, total, expected, False, not value.is_zero(), value)


def _run_repetition_args(args) -> RepetitionStats:
    return run_repetition(*args)


def _repetitions(g: SplitGraph, p: Params, cfg: EngineConfig) -> Iterator[RepetitionStats]:
    if cfg.workers <= 1:
        for rep in range(p.reps):
            yield run_repetition(g, p, rep, cfg.master_seed, cfg.evaluate)
        return
    # waves of speculative repetitions, consumed in index order
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        for start in range(0, p.reps, cfg.workers):
            wave = range(start, min(start + cfg.workers, p.reps))
            args = [(g, p, rep, cfg.master_seed, cfg.evaluate) for rep in wave]
            yield from pool.map(_run_repetition_args, args)


def decide_hamiltonicity(g: DirectedGraph, cfg: EngineConfig | None = None) -> DetectionReport:
    """Monte Carlo decision with one-sided error: YES is always correct."""
    cfg = cfg or EngineConfig()
    start = time.perf_counter()
    n = g.vertex_count
    if n < 2 or has_degenerate_vertex(g):
        return DetectionReport(NO, "trivial", None, 0, (), time.perf_counter() - start)
    if n <= cfg.fallback_max_n:
        verdict = YES if oracle.is_hamiltonian_bruteforce(g) else NO
        return DetectionReport(verdict, "oracle", None, 0, (), time.perf_counter() - start)

    split = split_vertex(g, cfg.split_vertex)
    p = cfg.resolve(split)
    log.info("n=%d |A|=%d params=%s", n, g.arc_count, p)
    stats = []
    verdict = NO
    for rs in _repetitions(split, p, cfg):
        stats.append(rs)
        log.debug(
            "rep %d: |T|=%d terms=%d expected=%.4g aborted=%s nonzero=%s",
            rs.index, len(rs.T), rs.terms_streamed, float(rs.expected_terms),
            rs.aborted, rs.nonzero,
        )
        if rs.nonzero and not rs.aborted:
            verdict = YES
            break
    return DetectionReport(verdict, "algebraic", p, len(stats), tuple(stats), time.perf_counter() - start)
