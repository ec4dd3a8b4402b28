"""Exponential-time ground truth for small instances.

Nothing here is used by the detector except the small-instance fallback;
these functions exist to check the algebraic pipeline.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .fingerprint import QVector, SamplePoint, build_perturbed_laplacian, term_value, with_ring
from .graph import DirectedGraph, SplitGraph
from .ring import RingElement, RingParams, ring_one, ring_zero

MAX_DP_VERTICES = 24
MAX_PATH_VERTICES = 12
MAX_FULLSUM_VARS = 16


def is_hamiltonian_bruteforce(g: DirectedGraph) -> bool:
    """Held-Karp style reachability DP over vertex subsets containing vertex 0."""
    n = g.vertex_count
    if n > MAX_DP_VERTICES:
        raise ValueError(f"subset DP limited to n <= {MAX_DP_VERTICES}, got {n}")
    if n < 2:
        return False
    out = [sum(1 << w for w in g.out_neighbors[v]) for v in range(n)]
    full = (1 << n) - 1
    # ends[mask]: bitset of vertices v such that some path 0 -> ... -> v visits exactly mask
    ends = [0] * (1 << n)
    ends[1] = 1
    for mask in range(1, full + 1, 2):
        e = ends[mask]
        while e:
            low = e & -e
            v = low.bit_length() - 1
            e ^= low
            nxt = out[v] & ~mask
            while nxt:
                bit = nxt & -nxt
                nxt ^= bit
                ends[mask | bit] |= bit
    e = ends[full]
    return any(e >> v & 1 and out[v] & 1 for v in range(n))


def count_hamiltonian_cycles(g: DirectedGraph) -> int:
    """Directed Hamiltonian cycles, counted by permutation enumeration from vertex 0."""
    n = g.vertex_count
    if n < 2:
        return 0
    count = 0
    for rest in permutations(range(1, n)):
        cycle = (0, *rest, 0)
        if all(g.has_arc(a, b) for a, b in zip(cycle, cycle[1:])):
            count += 1
    return count


def hamiltonian_st_paths(g: SplitGraph) -> Iterator[tuple[int, ...]]:
    """Vertex sequences of all Hamiltonian s-t paths, by DFS with an on-path bitmask."""
    total = g.base.vertex_count
    outs = g.base.out_neighbors
    full = (1 << total) - 1
    path = [g.s]

    def extend(v: int, visited: int):
        if v == g.t:
            if visited == full:
                yield tuple(path)
            return
        for w in outs[v]:
            if not visited >> w & 1:
                path.append(w)
                yield from extend(w, visited | 1 << w)
                path.pop()

    yield from extend(g.s, 1 << g.s)


def evaluate_p_direct(g: SplitGraph, sp: SamplePoint, rp: RingParams | None = None) -> RingElement:
    """Sum over Hamiltonian s-t paths of the product of their arc values."""
    if g.n > MAX_PATH_VERTICES:
        raise ValueError(f"path enumeration limited to n <= {MAX_PATH_VERTICES}, got {g.n}")
    rp = rp or sp.ring
    z = with_ring(sp, rp).z if rp != sp.ring else sp.z
    total = ring_zero(rp)
    for path in hamiltonian_st_paths(g):
        term = ring_one(rp)
        for a, b in zip(path, path[1:]):
            term = term * z[a, b]
        total = total + term
    return total


def evaluate_p_fullsum(
    g: SplitGraph, sp: SamplePoint, q: QVector, rp: RingParams | None = None
) -> RingElement:
    """Unsieved inclusion-exclusion: every assignment's signed determinant."""
    if g.n > MAX_FULLSUM_VARS:
        raise ValueError(f"full sum limited to n <= {MAX_FULLSUM_VARS}, got {g.n}")
    rp = rp or sp.ring
    total = ring_zero(rp)
    for y in range(1 << g.n):
        total = total + term_value(g, sp, q, y, rp)
    return total


def even_rows_in_z(g: SplitGraph, sp: SamplePoint, q: QVector, y: int) -> int:
    """All-even rows among Z_y (T-vertices with y_v = 0, and t), read off the matrix."""
    mat = build_perturbed_laplacian(g, sp, q, y)
    pos = {v: i for i, v in enumerate(g.non_source)}
    count = 0
    for v in sp.T:
        if v != g.t and y >> v & 1:
            continue
        row = mat.entries[pos[v]]
        if all(c % 2 == 0 for e in row for c in e.coeffs):
            count += 1
    return count


def contributing_set_bruteforce(g: SplitGraph, sp: SamplePoint, q: QVector, k: int) -> set[int]:
    """Assignments with fewer than k all-even rows in Z_y, by scanning all 2^n of them."""
    return {y for y in range(1 << g.n) if even_rows_in_z(g, sp, q, y) < k}
