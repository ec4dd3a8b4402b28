"""Listing the assignments whose perturbed Laplacian is not trivially zero.

For v in T the in-arcs carry z = 1, so the diagonal of row v is the integer
(#in-neighbours w with y_w = 1) - q_v, and the off-diagonal part of the row
vanishes when y_v = 0 (or v = t).  The rows of Z_y can therefore be all-even,
and once k of them are, the determinant is a multiple of 2^k and vanishes.
The parity of each diagonal in Z_y is a linear form in the free y-variables,
so the surviving assignments are the solutions of one GF(2) system per
(restriction y* of y to T \\ {t}, parity pattern p on Z_{y*}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .fingerprint import QVector, SamplePoint
from .gf2 import Gf2Solution, Gf2System, embed, solve, stream_solutions
from .graph import SplitGraph


def z_set(T: Iterable[int], t: int, y_star: int) -> frozenset[int]:
    """Members of T that y* sets to 0, plus t when t is in T."""
    return frozenset(v for v in T if v == t or not y_star >> v & 1)


def free_variables(g: SplitGraph, T: Iterable[int]) -> tuple[int, ...]:
    """Vertices whose y-variable is not fixed by y*: (V \\ {t}) \\ T, ascending."""
    in_T = set(T)
    return tuple(v for v in range(g.base.vertex_count) if v != g.t and v not in in_T)


class _EquationBuilder:
    def __init__(self, g: SplitGraph, T: Sequence[int]):
        self.free = free_variables(g, T)
        var_of = {v: i for i, v in enumerate(self.free)}
        in_T = set(T)
        self.coeffs: dict[int, int] = {}
        self.fixed_mask: dict[int, int] = {}
        for v in T:
            c = f = 0
            for w in g.base.in_neighbors[v]:
                if w in in_T:
                    f |= 1 << w
                else:
                    c |= 1 << var_of[w]
            self.coeffs[v] = c
            self.fixed_mask[v] = f

    def system(self, y_star: int, p: Mapping[int, int], q: QVector) -> Gf2System:
        rows = []
        for v in sorted(p):
            rhs = (p[v] + q.get(v, 0) + (y_star & self.fixed_mask[v]).bit_count()) & 1
            rows.append((self.coeffs[v], rhs))
        return Gf2System(len(self.free), tuple(rows))


def build_equation_system(
    g: SplitGraph, y_star: int, p: Mapping[int, int], q: QVector, T: Sequence[int]
) -> Gf2System:
    """E(y*, p): for v in Z, sum of y_w over in-arcs wv plus q_v equals p_v (mod 2).

    Unknowns are the free vertices in ``free_variables`` order; in-neighbours
    inside T contribute their y* value to the right-hand side.
    """
    return _EquationBuilder(g, T).system(y_star, p, q)


@dataclass(frozen=True)
class Branch:
    y_star: int
    parity: tuple[tuple[int, int], ...]
    solution: Gf2Solution  # in vertex-bit coordinates

    @property
    def count(self) -> int:
        return self.solution.count

    def assignments(self) -> Iterator[int]:
        for v in stream_solutions(self.solution):
            yield self.y_star | v


def parity_patterns(z: Iterable[int], k: int) -> Iterator[dict[int, int]]:
    """Patterns p on Z with at most k-1 zeros, by increasing number of zeros."""
    members = sorted(z)
    for zeros in range(min(k - 1, len(members)) + 1):
        for chosen in combinations(members, zeros):
            p = dict.fromkeys(members, 1)
            for v in chosen:
                p[v] = 0
            yield p


def branches(g: SplitGraph, T: Sequence[int], q: QVector, k: int) -> Iterator[Branch]:
    """Feasible (y*, p) branches in deterministic order.

    y* runs over T \\ {t} in counting order (bit i of the counter is the i-th
    smallest vertex); infeasible systems are skipped.
    """
    T = tuple(sorted(T))
    builder = _EquationBuilder(g, T)
    fixed = [v for v in T if v != g.t]
    for counter in range(1 << len(fixed)):
        y_star = 0
        for i, v in enumerate(fixed):
            if counter >> i & 1:
                y_star |= 1 << v
        for p in parity_patterns(z_set(T, g.t, y_star), k):
            sol = solve(builder.system(y_star, p, q))
            if sol is None:
                continue
            yield Branch(y_star, tuple(sorted(p.items())), embed(sol, builder.free))


def listing_terms(g: SplitGraph, sp: SamplePoint, q: QVector, k: int) -> Iterator[int]:
    """Every assignment with fewer than k even diagonals inside Z_y, once each."""
    for br in branches(g, sp.T, q, k):
        yield from br.assignments()


def count_terms(
    g: SplitGraph, T: Sequence[int], q: QVector, k: int, limit: int | None = None
) -> int:
    """Length of the ``listing_terms`` stream without walking it.

    With ``limit`` set, stops as soon as the running total exceeds it and
    returns that partial total.
    """
    total = 0
    for br in branches(g, T, q, k):
        total += br.count
        if limit is not None and total > limit:
            break
    return total


def contributing_probability(z_size: int, k: int) -> Fraction:
    """Pr over q that fewer than k of |Z_y| independent fair parities are even."""
    return Fraction(sum(comb(z_size, i) for i in range(min(k, z_size + 1))), 1 << z_size)


def expected_contributing_count(n_vars: int, tau_prime: int, t_in_T: bool, k: int) -> Fraction:
    """Exact E[Y] over q, summed over all 2^n_vars assignments.

    ``tau_prime`` = |T \\ {t}|; an assignment with j zeros on T \\ {t} has
    |Z_y| = j + [t in T].
    """
    if not 0 <= tau_prime <= n_vars:
        raise ValueError("need 0 <= tau_prime <= n_vars")
    if k < 1:
        raise ValueError("k must be positive")
    b = int(bool(t_in_T))
    per_restriction = sum(
        comb(tau_prime, j) * contributing_probability(j + b, k) for j in range(tau_prime + 1)
    )
    return per_restriction * (1 << (n_vars - tau_prime))


def expected_for_sample(g: SplitGraph, T: Sequence[int], k: int) -> Fraction:
    t_in = g.t in T
    return expected_contributing_count(g.n, len(T) - t_in, t_in, k)
