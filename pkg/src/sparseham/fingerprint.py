"""Sample points, q-perturbations and the punctured Laplacian terms.

Assignments ``y`` are int bitmasks over vertex ids of the split graph: bit
``v`` is ``y_v``.  The sink ``t`` carries no variable, so bit ``t`` is never
set and an assignment ranges over ``2^n`` values for an n-vertex input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping

import numpy as np
from gmpy2 import mpz

from .determinant import RingMatrix, det, det_packed
from .graph import Arc, SplitGraph
from .ring import MAX_K, RingElement, RingParams, ring_one, ring_zero

QVector = Mapping[int, int]

WEIGHT_FACTOR = 100  # ell = WEIGHT_FACTOR * |A|
TAU_DIVISOR = 20  # tau = n / (TAU_DIVISOR * delta)
K_DIVISOR = 10  # k = tau / K_DIVISOR
REPS_FACTOR = 100  # reps = REPS_FACTOR * ln n


@dataclass(frozen=True)
class Params:
    tau: int
    k: int
    ell: int
    m: int
    reps: int
    abort_factor: int

    def validate(self, n: int) -> "Params":
        if not 1 <= self.tau <= max(n, 1):
            raise ValueError(f"tau must be in [1, {n}], got {self.tau}")
        if not 1 <= self.k <= MAX_K:
            raise ValueError(f"k must be in [1, {MAX_K}], got {self.k}")
        for name in ("ell", "m", "reps", "abort_factor"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        return self

    @property
    def ring(self) -> RingParams:
        return RingParams(self.k, self.m)


def derive_params(
    g: SplitGraph,
    *,
    tau: int | None = None,
    k: int | None = None,
    ell: int | None = None,
    m: int | None = None,
    reps: int | None = None,
    abort_factor: int | None = None,
) -> Params:
    """Default parameters from the input size n and arc count |A|.

    tau = ceil(n / (20 delta)) with delta = |A|/n, k = ceil(tau / 10),
    ell = 100 |A|, m = n ell + 1, reps = ceil(100 ln n), abort factor n.
    Overriding tau re-derives k and overriding ell re-derives m unless those
    are overridden as well.
    """
    n = g.n
    arcs = g.base.arc_count
    if tau is None:
        tau = math.ceil(Fraction(n * n, TAU_DIVISOR * arcs)) if arcs else n
        tau = min(max(1, tau), max(n, 1))
    if k is None:
        k = max(1, math.ceil(Fraction(tau, K_DIVISOR)))
    if ell is None:
        ell = max(1, WEIGHT_FACTOR * arcs)
    if m is None:
        m = n * ell + 1
    if reps is None:
        reps = max(1, math.ceil(REPS_FACTOR * math.log(n))) if n > 1 else 1
    if abort_factor is None:
        abort_factor = max(1, n)
    return Params(tau, k, ell, m, reps, abort_factor).validate(n)


@dataclass(frozen=True)
class SamplePoint:
    """Sampled set T plus arc weights; arcs into T get value 1, others x^w."""

    T: tuple[int, ...]
    weights: Mapping[Arc, int]
    ring: RingParams
    arcs: tuple[Arc, ...] = field(repr=False)
    sink: int = field(repr=False)

    @cached_property
    def z(self) -> dict[Arc, RingElement]:
        one, zero = ring_one(self.ring), ring_zero(self.ring)
        out = {}
        for arc in self.arcs:
            w = self.weights.get(arc)
            if w is None:
                out[arc] = one
            elif w < self.ring.m:
                out[arc] = RingElement(self.ring, self.ring.monomial(w))
            else:
                out[arc] = zero  # x^w vanishes mod x^m
        return out

    @property
    def t_in_T(self) -> bool:
        return self.sink in self.T


def sample_point(
    g: SplitGraph, p: Params, rng: np.random.Generator, ring: RingParams | None = None
) -> SamplePoint:
    candidates = g.non_source
    if p.tau > len(candidates):
        raise ValueError(f"tau={p.tau} exceeds |V \\ {{s}}|={len(candidates)}")
    T = tuple(sorted(int(v) for v in rng.choice(candidates, size=p.tau, replace=False)))
    in_T = set(T)
    weighted = [arc for arc in g.base.arcs if arc[1] not in in_T]
    draws = rng.integers(1, p.ell, size=len(weighted), endpoint=True)
    weights = {arc: int(w) for arc, w in zip(weighted, draws)}
    return SamplePoint(T, weights, ring or p.ring, g.base.arcs, g.t)


def sample_q(T: tuple[int, ...], rng: np.random.Generator) -> dict[int, int]:
    bits = rng.integers(0, 2, size=len(T))
    return {v: int(b) for v, b in zip(T, bits)}


def with_ring(sp: SamplePoint, ring: RingParams) -> SamplePoint:
    return replace(sp, ring=ring)


def build_perturbed_laplacian(
    g: SplitGraph, sp: SamplePoint, q: QVector, y: int, rp: RingParams | None = None
) -> RingMatrix:
    """L^q with row and column s removed, rows/columns in ``g.non_source`` order.

    Diagonal (v, v) is the sum of z_wv y_w over arcs wv, minus q_v when v is
    in T; entry (u, v) is -z_uv y_u for every arc uv.
    """
    rp = rp or sp.ring
    if rp != sp.ring:
        sp = with_ring(sp, rp)
    if y >> g.t & 1:
        raise ValueError("the sink t carries no y-variable")
    order = g.non_source
    pos = {v: i for i, v in enumerate(order)}
    zero, one = ring_zero(rp), ring_one(rp)
    z = sp.z
    rows = [[zero] * len(order) for _ in order]
    for v in order:
        d = zero
        for w in g.base.in_neighbors[v]:
            if y >> w & 1:
                d = d + z[w, v]
        if v in q and q[v]:
            d = d - one
        rows[pos[v]][pos[v]] = d
    for u, v in g.base.arcs:
        if u in pos and y >> u & 1:
            rows[pos[u]][pos[v]] = -z[u, v]
    return RingMatrix(rows, rp)


def sign_is_negative(n_vars: int, y: int) -> bool:
    return (n_vars - y.bit_count()) % 2 == 1


def term_value(
    g: SplitGraph, sp: SamplePoint, q: QVector, y: int, rp: RingParams | None = None
) -> RingElement:
    """(-1)^(n - |y|) det(L^q_s(y, z))."""
    d = det(build_perturbed_laplacian(g, sp, q, y, rp))
    return -d if sign_is_negative(g.n, y) else d


class LaplacianEvaluator:
    """Packed-value version of ``term_value`` for one fixed (z, T, q).

    Arc values are packed once; each call only assembles the matrix for a new
    assignment and takes its determinant.
    """

    def __init__(self, g: SplitGraph, sp: SamplePoint, q: QVector):
        rp = sp.ring
        self.ring = rp
        self.n_vars = g.n
        order = g.non_source
        pos = {v: i for i, v in enumerate(order)}
        z = {arc: e.packed for arc, e in sp.z.items()}
        self._dim = len(order)
        self._in = [[(w, z[w, v]) for w in g.base.in_neighbors[v] if z[w, v]] for v in order]
        minus_one = rp.neg(mpz(1))
        self._shift = [minus_one if q.get(v, 0) else mpz(0) for v in order]
        self._off = [
            (pos[u], pos[v], u, rp.neg(z[u, v]))
            for u, v in g.base.arcs
            if u in pos and z[u, v]
        ]

    def matrix(self, y: int) -> list[list[mpz]]:
        mask = self.ring.mask
        dim = self._dim
        a = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            d = self._shift[i]
            for w, zp in self._in[i]:
                if y >> w & 1:
                    d = d + zp
            a[i][i] = d & mask
        for i, j, u, nz in self._off:
            if y >> u & 1:
                a[i][j] = nz
        return a

    def term(self, y: int) -> mpz:
        d = det_packed(self.matrix(y), self.ring)
        if sign_is_negative(self.n_vars, y):
            d = self.ring.neg(d)
        return d
