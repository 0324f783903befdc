"""Characteristic-2 field tower GF(2) <= GF(2^f) <= GF(2^{2f}).

Elements are plain integers whose binary digits are the GF(2)-coordinates
in the polynomial basis (little-endian: bit i is the coefficient of x^i).
Zero and one are therefore encoded as 0 and 1.  Addition is XOR.

Every field is defined by the Conway polynomial of its degree, so element
encodings are bit-exact across runs.  The table below was derived from the
defining property (lexicographically least monic primitive polynomial whose
roots are norm-compatible with the Conway polynomials of all proper
subfield degrees); ``compute_conway_poly`` re-derives any entry and is
exercised by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Conway polynomials over GF(2) as bitmasks, keyed by degree.
CONWAY_POLY_2 = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10001101111,
    11: 0b100000000101,
    12: 0b1000011101011,
    13: 0b10000000011011,
    14: 0b100000010101001,
    15: 0b1000000000110101,
    16: 0b10000000000101101,
    17: 0b100000000000001001,
    18: 0b1000001010000000011,
    19: 0b10000000000000100111,
    20: 0b100000000011011110011,
}

MAX_DEGREE = 20


class FieldError(ValueError):
    """Raised for unsupported fields, mismatched fields or zero division."""


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(2^{f*delta}) in its fixed Conway-polynomial encoding.

    delta distinguishes the role of the field in the tower: delta=1 is the
    ground field GF(q) with q = 2^f, delta=2 the quadratic extension
    GF(q^2) used by the unitary groups.
    """

    f: int
    delta: int

    def __post_init__(self):
        if self.delta not in (1, 2):
            raise FieldError(f"delta must be 1 or 2, got {self.delta}")
        if not 1 <= self.f * self.delta <= MAX_DEGREE:
            raise FieldError(
                f"field degree {self.f}*{self.delta} outside supported range "
                f"1..{MAX_DEGREE}"
            )

    @property
    def degree(self) -> int:
        return self.f * self.delta

    @property
    def q(self) -> int:
        """The 'q' of the tower: 2^f (not the field size when delta=2)."""
        return 1 << self.f

    @property
    def size(self) -> int:
        return 1 << self.degree

    @property
    def defining_poly(self) -> int:
        return CONWAY_POLY_2[self.degree]

    def descriptor(self) -> str:
        return f"GF(2^{self.degree})/conway"

    # --- raw arithmetic on integer encodings ---------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        n = self.degree
        mod = self.defining_poly
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if (a >> n) & 1:
                a ^= mod
        return r

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise FieldError("zero has no negative powers")
            return 0
        if e < 0:
            a = self.inv(a)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            a = self.mul(a, a)
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero is not invertible")
        return self.pow(a, self.size - 2)

    def elements(self) -> range:
        return range(self.size)

    def nonzero(self) -> range:
        return range(1, self.size)


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec, encoded as an integer bitmask."""

    field: FieldSpec
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < self.field.size:
            raise FieldError(f"encoding {self.bits} out of range for {self.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        _check_same_field(self, other)
        return FieldElement(self.field, self.bits ^ other.bits)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        _check_same_field(self, other)
        return FieldElement(self.field, self.field.mul(self.bits, other.bits))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.bits, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.bits))

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == 1


def _check_same_field(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field} vs {b.field}")


@lru_cache(maxsize=None)
def make_field(f: int, delta: int = 1) -> FieldSpec:
    """Canonical FieldSpec for GF(2^{f*delta}); deterministic by construction."""
    return FieldSpec(f, delta)


def fe(field: FieldSpec, bits: int) -> FieldElement:
    return FieldElement(field, bits)


def zero(field: FieldSpec) -> FieldElement:
    return FieldElement(field, 0)


def one(field: FieldSpec) -> FieldElement:
    return FieldElement(field, 1)


def gen(field: FieldSpec) -> FieldElement:
    """The canonical generator x; primitive for every Conway polynomial."""
    if field.degree == 1:
        return one(field)
    return FieldElement(field, 2)


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_inv(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise FieldError("zero is not invertible")
    return a.inv()


def frobenius(a: FieldElement, power: int = 1) -> FieldElement:
    """a^(2^power): 'power' applications of the squaring map."""
    bits = a.bits
    fld = a.field
    for _ in range(power % fld.degree if power else 0):
        bits = fld.sqr(bits)
    return FieldElement(fld, bits)


@lru_cache(maxsize=None)
def _factor_small(n: int) -> tuple[int, ...]:
    """Prime factors of n (n <= 2^20 - 1 here, so trial division suffices)."""
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return tuple(primes)


def fe_order(a: FieldElement) -> int:
    """Least n >= 1 with a^n = 1; divides 2^{f*delta} - 1."""
    if a.is_zero():
        raise FieldError("zero has no multiplicative order")
    n = a.field.size - 1
    for p in _factor_small(n):
        while n % p == 0 and a.field.pow(a.bits, n // p) == 1:
            n //= p
    return n


@lru_cache(maxsize=None)
def _embedding_powers(f: int) -> tuple[int, ...]:
    """Powers g^0..g^{f-1} of the canonical image of x_f inside GF(2^{2f}).

    g = x^((2^{2f}-1)/(2^f-1)) is the norm-compatible image of the degree-f
    Conway generator; compatibility of the Conway table makes x -> g a field
    embedding GF(2^f) -> GF(2^{2f}).
    """
    big = make_field(f, 2)
    if f == 1:
        return (1,)
    g = big.pow(2, (big.size - 1) // ((1 << f) - 1))
    powers = [1]
    for _ in range(f - 1):
        powers.append(big.mul(powers[-1], g))
    return tuple(powers)


def embed(a: FieldElement) -> FieldElement:
    """Canonical embedding GF(2^f) -> GF(2^{2f}) (delta=1 into delta=2)."""
    if a.field.delta != 1:
        raise FieldError("embed expects a delta=1 element")
    big = make_field(a.field.f, 2)
    powers = _embedding_powers(a.field.f)
    bits = 0
    for i in range(a.field.degree):
        if (a.bits >> i) & 1:
            bits ^= powers[i]
    return FieldElement(big, bits)


def subfield_image(field: FieldSpec) -> frozenset[int]:
    """Encodings of the embedded GF(2^f) inside the delta=2 field."""
    if field.delta != 2:
        raise FieldError("subfield_image expects a delta=2 field")
    small = make_field(field.f, 1)
    return frozenset(embed(FieldElement(small, b)).bits for b in small.elements())


# --- Conway polynomial re-derivation (used for table verification) ------


def _polymulmod2(a: int, b: int, mod: int, n: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> n) & 1:
            a ^= mod
    return r


def _polypowmod2(a: int, e: int, mod: int, n: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _polymulmod2(r, a, mod, n)
        e >>= 1
        a = _polymulmod2(a, a, mod, n)
    return r


@lru_cache(maxsize=None)
def compute_conway_poly(n: int) -> int:
    """Re-derive the degree-n Conway polynomial from its definition."""
    if n == 1:
        return 0b11
    size = 1 << n
    top = size - 1
    factors = _factor_small(top)
    divisors = [m for m in range(1, n) if n % m == 0]

    def primitive(cand: int) -> bool:
        if _polypowmod2(2, top, cand, n) != 1:
            return False
        return all(_polypowmod2(2, top // p, cand, n) != 1 for p in factors)

    def compatible(cand: int) -> bool:
        for m in divisors:
            alpha = _polypowmod2(2, top // ((1 << m) - 1), cand, n)
            lower = compute_conway_poly(m)
            # evaluate the lower Conway polynomial at alpha
            r = 0
            for i in range(lower.bit_length() - 1, -1, -1):
                r = _polymulmod2(r, alpha, cand, n)
                if (lower >> i) & 1:
                    r ^= 1
            if r != 0:
                return False
        return True

    # scan in lexicographic order on the coefficient word a_{n-1},...,a_1
    for w in range(1 << (n - 1)):
        mid = 0
        for i in range(n - 1):
            if (w >> (n - 2 - i)) & 1:
                mid |= 1 << (n - 1 - i)
        cand = size | mid | 1
        if primitive(cand) and compatible(cand):
            return cand
    raise FieldError(f"no Conway polynomial found for degree {n}")
