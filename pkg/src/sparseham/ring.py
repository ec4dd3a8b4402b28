"""Truncated polynomials Z_{2^k}[x]/(x^m).

An element is stored as a single gmpy2 integer holding the m coefficients in
fixed-width slots (Kronecker packing).  A slot is wide enough that a product
of two reduced elements, or a sum of up to ``ACCUMULATE`` such products, never
carries into the next slot.  That makes the ring operations big-integer
operations followed by one bitmask:

* coefficient reduction mod 2^k and truncation at degree m are both an AND
  with the same mask (low k bits of each of the first m slots);
* multiplication is one big-integer product, i.e. the convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpz

# Max number of unreduced products that may be summed before masking.
ACCUMULATE = 15
_HEADROOM = ACCUMULATE.bit_length()

MAX_K = 64


@dataclass(frozen=True)
class RingParams:
    k: int
    m: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise ValueError(f"k must be in [1, {MAX_K}], got {self.k}")
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")

    @property
    def modulus(self) -> int:
        return 1 << self.k

    @cached_property
    def slot_bits(self) -> int:
        return 2 * self.k + self.m.bit_length() + _HEADROOM

    @cached_property
    def mask(self) -> mpz:
        return self._repeat(self.modulus - 1)

    @cached_property
    def neg_base(self) -> mpz:
        # 2^k in every slot; subtracting a reduced element from it never borrows
        return self._repeat(self.modulus)

    def _repeat(self, value: int) -> mpz:
        b = self.slot_bits
        # doubling construction: O(log m) big-integer ops
        unit, count, out = mpz(value), 1, mpz(0)
        shift = 0
        m = self.m
        while m:
            if m & 1:
                out |= unit << shift
                shift += count * b
            unit |= unit << (count * b)
            count *= 2
            m >>= 1
        return out

    # packed-value helpers used by the determinant and Laplacian kernels

    def pack(self, coeffs: Sequence[int]) -> mpz:
        if len(coeffs) > self.m:
            raise ValueError(f"{len(coeffs)} coefficients exceed truncation m={self.m}")
        b, mod = self.slot_bits, self.modulus - 1
        v = mpz(0)
        for d in range(len(coeffs) - 1, -1, -1):
            v = (v << b) | (int(coeffs[d]) & mod)
        return v

    def unpack(self, v: mpz) -> tuple[int, ...]:
        b = self.slot_bits
        if v == 0:
            return (0,) * self.m
        bits = gmpy2.digits(v, 2)[::-1]
        return tuple(
            int(bits[d * b:(d + 1) * b][::-1] or "0", 2) for d in range(self.m)
        )

    def reduce(self, v: mpz) -> mpz:
        return v & self.mask

    def neg(self, v: mpz) -> mpz:
        return (self.neg_base - v) & self.mask

    def monomial(self, degree: int, coefficient: int = 1) -> mpz:
        if not 0 <= degree < self.m:
            raise ValueError(f"degree {degree} outside [0, {self.m})")
        return mpz(coefficient & (self.modulus - 1)) << (degree * self.slot_bits)


class RingElement:
    """Immutable element of Z_{2^k}[x]/(x^m)."""

    __slots__ = ("params", "_v")

    def __init__(self, params: RingParams, packed):
        self.params = params
        self._v = mpz(packed)

    @classmethod
    def from_coeffs(cls, params: RingParams, coeffs: Iterable[int]) -> "RingElement":
        return cls(params, params.pack(list(coeffs)))

    @property
    def packed(self) -> mpz:
        return self._v

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.params.unpack(self._v)

    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient, -1 for zero."""
        if not self._v:
            return -1
        return (self._v.bit_length() - 1) // self.params.slot_bits

    def is_zero(self) -> bool:
        return not self._v

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.params != self.params:
            raise ValueError(f"ring parameter mismatch: {self.params} vs {other.params}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.params, (self._v + other._v) & self.params.mask)

    def __neg__(self) -> "RingElement":
        return RingElement(self.params, self.params.neg(self._v))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.params, (self._v * other._v) & self.params.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.params == other.params and self._v == other._v

    def __hash__(self) -> int:
        return hash((self.params, int(self._v)))

    def __bool__(self) -> bool:
        return bool(self._v)

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if d == 0 else f"{c}*x" if d == 1 else f"{c}*x^{d}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"RingElement(k={self.params.k}, m={self.params.m}, {self})"


def ring_zero(p: RingParams) -> RingElement:
    return RingElement(p, 0)


def ring_one(p: RingParams) -> RingElement:
    return RingElement(p, 1)


def ring_monomial(p: RingParams, degree: int, coefficient: int = 1) -> RingElement:
    return RingElement(p, p.monomial(degree, coefficient))


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def is_zero(a: RingElement) -> bool:
    return a.is_zero()
