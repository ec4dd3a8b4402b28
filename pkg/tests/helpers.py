"""Instance builders shared by the test modules."""

from __future__ import annotations

import numpy as np

from sparseham.cli import generate_random_digraph
from sparseham.fingerprint import derive_params, sample_point, sample_q
from sparseham.graph import DirectedGraph, has_degenerate_vertex, split_vertex
from sparseham.ring import RingElement, RingParams


def path_split():
    """Triangle 0->1->2->0 split at 0: the path s=0 -> 1 -> 2 -> t=3."""
    return split_vertex(DirectedGraph(3, [(0, 1), (1, 2), (2, 0)]), 0)


def random_graph(rng, n, delta, hamiltonian=False, nondegenerate=True, tries=1000):
    for _ in range(tries):
        g = generate_random_digraph(n, delta, hamiltonian, rng)
        if not nondegenerate or not has_degenerate_vertex(g):
            return g
    raise RuntimeError(f"no nondegenerate graph for n={n} delta={delta}")


def try_graph(rng, n, delta, hamiltonian, tries=50):
    # some sparse (n, delta) pairs rarely give a graph without a degenerate vertex
    try:
        return random_graph(rng, n, delta, hamiltonian=hamiltonian, tries=tries)
    except RuntimeError:
        return None


def random_instance(rng, n_range=(4, 8), ell_range=(4, 16), tau=None, k=None, hamiltonian=None):
    """Random split graph with a sample point and q, small ell so oracles stay cheap."""
    g = None
    while g is None:
        n = int(rng.integers(n_range[0], n_range[1], endpoint=True))
        ham = bool(rng.integers(0, 2)) if hamiltonian is None else hamiltonian
        delta = float(rng.choice([1.0, 1.5, 2.0, 2.5])) if ham else float(rng.choice([1.5, 2.0, 2.5]))
        g = try_graph(rng, n, min(delta, n - 1), ham)
    split = split_vertex(g, int(rng.integers(0, n)))
    ell = int(rng.integers(ell_range[0], ell_range[1], endpoint=True))
    if tau is not None:
        tau = min(tau, split.n)
    p = derive_params(split, ell=ell, tau=tau, k=k)
    sp = sample_point(split, p, rng)
    q = sample_q(sp.T, rng)
    return split, p, sp, q


def random_element(rng, rp: RingParams) -> RingElement:
    coeffs = rng.integers(0, rp.modulus, size=rp.m)
    # sprinkle zeros so sparse patterns show up too
    coeffs[rng.random(rp.m) < 0.3] = 0
    return RingElement.from_coeffs(rp, [int(c) for c in coeffs])


def naive_mul(a, b, k, m):
    out = [0] * m
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < m:
                out[i + j] = (out[i + j] + x * y) % (1 << k)
    return tuple(out)
