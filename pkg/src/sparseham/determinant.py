"""Division-free determinants over Z_{2^k}[x]/(x^m).

The ring has zero divisors, so elimination with pivot division is out.
``det`` permutes the matrix into block-triangular form along the strongly
connected components of its nonzero pattern (the determinant is the product
of the diagonal blocks' determinants) and runs Bird's iterated-product
algorithm on every nontrivial block.  ``det_reference`` is the Leibniz sum,
kept as an oracle for small matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from gmpy2 import mpz

from .ring import ACCUMULATE, RingElement, RingParams

LEIBNIZ_MAX_DIM = 7


@dataclass(frozen=True)
class RingMatrix:
    params: RingParams
    entries: tuple[tuple[RingElement, ...], ...]

    def __init__(self, entries: Sequence[Sequence[RingElement]], params: RingParams | None = None):
        rows = tuple(tuple(r) for r in entries)
        if not rows:
            raise ValueError("matrix must have dimension >= 1")
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("matrix must be square")
        if params is None:
            params = rows[0][0].params
        if any(e.params != params for r in rows for e in r):
            raise ValueError("matrix entries use mixed ring parameters")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_packed(cls, params: RingParams, packed: Sequence[Sequence[int]]) -> "RingMatrix":
        return cls([[RingElement(params, v) for v in row] for row in packed], params)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def packed(self) -> list[list[mpz]]:
        return [[e.packed for e in row] for row in self.entries]

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        i, j = ij
        return self.entries[i][j]


def det(mat: RingMatrix) -> RingElement:
    return RingElement(mat.params, det_packed(mat.packed(), mat.params))


def det_packed(a: list[list[mpz]], p: RingParams) -> mpz:
    """Determinant of a square matrix of packed ring values."""
    mask = p.mask
    blocks = strong_components(a)
    singles = [a[b[0]][b[0]] for b in blocks if len(b) == 1]
    if not all(singles):
        return mpz(0)
    result = _product(singles, mask)
    if not result:
        return result
    for block in blocks:
        if len(block) > 1:
            d = bird_det([[a[i][j] for j in block] for i in block], p)
            result = (result * d) & mask
            if not result:
                break
    return result


def _product(values: list, mask: mpz) -> mpz:
    """Balanced product tree: operands of similar size multiply faster."""
    if not values:
        return mpz(1)
    while len(values) > 1:
        paired = [(values[i] * values[i + 1]) & mask for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0]


def strong_components(a: Sequence[Sequence]) -> list[list[int]]:
    """SCCs of the digraph with an arc i->j for every nonzero off-diagonal a[i][j]."""
    n = len(a)
    succ = [[j for j in range(n) if j != i and a[i][j]] for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        # iterative Tarjan: frames of (vertex, next successor position)
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def bird_det(a: list[list[mpz]], p: RingParams) -> mpz:
    """Bird's division-free determinant, O(n) matrix products.

    With mu(X) the upper-triangular matrix that keeps X above the diagonal and
    puts -(X[i+1][i+1] + ... + X[n-1][n-1]) at (i, i), iterating X <- mu(X) A
    n-1 times from X = A leaves (-1)^(n-1) det(A) at position (0, 0).
    Only the rows of mu(X) on and right of the diagonal are touched, and
    zero entries of A are skipped.
    """
    n = len(a)
    if n == 1:
        return a[0][0]
    mask = p.mask
    rows_nz = [[(j, v) for j, v in enumerate(row) if v] for row in a]
    col0 = [row[0] for row in a]
    x = a
    for step in range(n - 1):
        suffix = [mpz(0)] * n
        acc = mpz(0)
        for i in range(n - 1, -1, -1):
            suffix[i] = p.neg(acc)
            acc = (acc + x[i][i]) & mask
        if step == n - 2:
            # only entry (0, 0) of the final product is needed
            total = suffix[0] * col0[0]
            pending = 1
            for l in range(1, n):
                c = x[0][l]
                if c and col0[l]:
                    total += c * col0[l]
                    pending += 1
                    if pending >= ACCUMULATE:
                        total &= mask
                        pending = 0
            r = total & mask
            return r if n % 2 else p.neg(r)
        new = []
        for i in range(n):
            out = [0] * n
            pending = 0
            d = suffix[i]
            if d:
                for j, v in rows_nz[i]:
                    out[j] = d * v
                pending = 1
            xi = x[i]
            for l in range(i + 1, n):
                c = xi[l]
                if not c:
                    continue
                for j, v in rows_nz[l]:
                    out[j] += c * v
                pending += 1
                if pending >= ACCUMULATE:
                    out = [o & mask for o in out]
                    pending = 0
            new.append([o & mask for o in out])
        x = new
    raise AssertionError("unreachable")


def _permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_reference(mat: RingMatrix) -> RingElement:
    """Leibniz expansion; factorial cost, so limited to small matrices."""
    n = mat.dim
    if n > LEIBNIZ_MAX_DIM:
        raise ValueError(f"Leibniz determinant limited to dim <= {LEIBNIZ_MAX_DIM}, got {n}")
    p = mat.params
    total = RingElement(p, 0)
    for perm in permutations(range(n)):
        term = RingElement(p, 1)
        for i, j in enumerate(perm):
            term = term * mat.entries[i][j]
        total = total + term if _permutation_sign(perm) > 0 else total - term
    return total
