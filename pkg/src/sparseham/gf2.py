"""Linear systems over GF(2) with bit-packed rows.

A row is a Python int whose bit ``i`` is the coefficient of variable ``i``;
vectors are packed the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Gf2System:
    num_vars: int
    rows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        limit = 1 << self.num_vars
        for coeffs, rhs in self.rows:
            if coeffs < 0 or coeffs >= limit:
                raise ValueError(f"row {coeffs:#x} does not fit {self.num_vars} variables")
            if rhs not in (0, 1):
                raise ValueError("right-hand side must be a bit")
        object.__setattr__(self, "rows", tuple(self.rows))

    def satisfied_by(self, v: int) -> bool:
        return all((coeffs & v).bit_count() % 2 == rhs for coeffs, rhs in self.rows)


@dataclass(frozen=True)
class Gf2Solution:
    particular: int
    null_basis: tuple[int, ...]

    @property
    def count(self) -> int:
        return 1 << len(self.null_basis)


def solve(sys: Gf2System) -> Gf2Solution | None:
    """Gauss-Jordan elimination; returns None when the system is inconsistent.

    Pivots are taken at the lowest-index available column, so the result is
    deterministic.  Free variables are 0 in the particular solution.
    """
    pivots: list[tuple[int, int, int]] = []  # (column, row, rhs), reduced
    for coeffs, rhs in sys.rows:
        for col, prow, prhs in pivots:
            if coeffs >> col & 1:
                coeffs ^= prow
                rhs ^= prhs
        if not coeffs:
            if rhs:
                return None
            continue
        col = (coeffs & -coeffs).bit_length() - 1
        # keep earlier pivot rows reduced in the new column
        pivots = [
            (c, r ^ coeffs, h ^ rhs) if r >> col & 1 else (c, r, h) for c, r, h in pivots
        ]
        pivots.append((col, coeffs, rhs))

    particular = 0
    pivot_cols = 0
    for col, _, rhs in pivots:
        pivot_cols |= 1 << col
        if rhs:
            particular |= 1 << col
    basis = []
    for f in range(sys.num_vars):
        if pivot_cols >> f & 1:
            continue
        v = 1 << f
        for col, row, _ in pivots:
            if row >> f & 1:
                v |= 1 << col
        basis.append(v)
    return Gf2Solution(particular, tuple(basis))


def rank(sys: Gf2System) -> int:
    sol = solve(Gf2System(sys.num_vars, tuple((c, 0) for c, _ in sys.rows)))
    return sys.num_vars - len(sol.null_basis)


def stream_solutions(sol: Gf2Solution) -> Iterator[int]:
    """All ``particular ^ span(null_basis)`` vectors in Gray-code order.

    Consecutive outputs differ by exactly one basis vector; state is O(1).
    """
    v = sol.particular
    yield v
    basis = sol.null_basis
    for i in range(1, 1 << len(basis)):
        v ^= basis[(i & -i).bit_length() - 1]
        yield v


def embed(sol: Gf2Solution, positions: Sequence[int]) -> Gf2Solution:
    """Relabel variable ``i`` as bit ``positions[i]`` of a wider vector."""

    def spread(v: int) -> int:
        out = 0
        while v:
            low = v & -v
            out |= 1 << positions[low.bit_length() - 1]
            v ^= low
        return out

    return Gf2Solution(spread(sol.particular), tuple(spread(b) for b in sol.null_basis))
