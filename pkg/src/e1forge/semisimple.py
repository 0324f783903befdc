"""Semisimple class data for GL_d(q) and GU_d(q) in characteristic 2.

A class is identified by (epsilon, d, q) and the factored characteristic
polynomial Xi over GF(q^delta) — a complete conjugacy invariant for
semisimple (odd-order) elements.  From the factorization alone this module
reads off the centralizer shape and order, realness, the odd-index
statistics, the case classifier for real classes with gcd(d, q-eps) > 1,
and the explicit palindromic/involution element constructions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import gl_order, group_order_eps, gu_order, odd_part
from .gf2k import FieldElement, FieldSpec, fe_order, gen, make_field
from .polyfield import (
    Factorization,
    MonicPoly,
    is_unitary_compatible,
    poly_dagger,
    poly_factor,
    poly_star,
    x_plus,
)


class SemisimpleError(ValueError):
    """Raised for invalid class data or classifier preconditions."""


def _delta(epsilon: int) -> int:
    return 2 if epsilon == -1 else 1


@dataclass(frozen=True)
class SemisimpleClass:
    """(epsilon, d, q, factored Xi) naming a semisimple class of GL_d^eps(q)."""

    epsilon: int
    d: int
    q: int
    xi: Factorization

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise SemisimpleError("epsilon must be +1 or -1")
        if self.q < 2 or self.q & (self.q - 1):
            raise SemisimpleError(f"q must be a power of 2, got {self.q}")
        if self.xi.base_field != self.field:
            raise SemisimpleError(
                f"xi lives over {self.xi.base_field}, expected {self.field}"
            )
        if self.xi.degree != self.d:
            raise SemisimpleError(
                f"xi has degree {self.xi.degree}, class dimension is {self.d}"
            )
        for p, _ in self.xi.factors:
            if p.constant_term() == 0:
                raise SemisimpleError("Xi(0) = 0: element not invertible")
        if self.epsilon == -1 and not is_unitary_compatible(self.xi.expand()):
            raise SemisimpleError("Xi != Xi-dagger: no unitary element has this Xi")

    @property
    def f(self) -> int:
        return self.q.bit_length() - 1

    @property
    def field(self) -> FieldSpec:
        return make_field(self.f, _delta(self.epsilon))

    @property
    def d1(self) -> int:
        return self.xi.multiplicity_of(x_plus(self.field, 1))

    @property
    def e(self) -> int:
        return math.gcd(self.d, self.q - self.epsilon)

    def is_identity(self) -> bool:
        return self.d1 == self.d


def semisimple_class(epsilon: int, d: int, q: int, xi) -> SemisimpleClass:
    """Build a class from either a MonicPoly or a ready Factorization."""
    if isinstance(xi, MonicPoly):
        xi = poly_factor(xi)
    return SemisimpleClass(epsilon, d, q, xi)


# --- centralizer shape and index ----------------------------------------


@dataclass(frozen=True)
class CentralizerShape:
    factors: tuple[tuple[str, int, int], ...]  # (kind, m, Q)
    order: int
    odd_part: int


def centralizer_shape(c: SemisimpleClass) -> CentralizerShape:
    """Direct-product shape of C(s) read off the factorization of Xi."""
    shape: list[tuple[str, int, int]] = []
    if c.epsilon == 1:
        for p, m in c.xi.factors:
            shape.append(("GL", m, c.q**p.degree))
    else:
        seen: set = set()
        for p, m in c.xi.factors:
            if p in seen:
                continue
            dag = poly_dagger(p)
            if dag == p:
                shape.append(("GU", m, c.q**p.degree))
                seen.add(p)
            else:
                if c.xi.multiplicity_of(dag) != m:
                    raise SemisimpleError(
                        "dagger pairing failed: Xi is not unitary-compatible"
                    )
                shape.append(("GL", m, c.q ** (2 * p.degree)))
                seen.add(p)
                seen.add(dag)
    order = 1
    for kind, m, Q in shape:
        order *= gu_order(m, Q) if kind == "GU" else gl_order(m, Q)
    return CentralizerShape(tuple(shape), order, odd_part(order))


def index_odd_part(c: SemisimpleClass) -> int:
    """Odd part of [GL_d^eps(q) : C(s)]."""
    g = odd_part(group_order_eps(c.epsilon, c.d, c.q))
    cc = centralizer_shape(c).odd_part
    if g % cc:
        raise SemisimpleError("centralizer odd part does not divide group odd part")
    return g // cc


# --- realness -------------------------------------------------------------


@dataclass(frozen=True)
class RealnessStructure:
    real: bool
    pairing: tuple[tuple[MonicPoly, MonicPoly], ...]
    self_dagger: tuple[tuple[MonicPoly, bool], ...]  # epsilon = -1 only


def realness_structure(c: SemisimpleClass) -> RealnessStructure:
    one_factor = x_plus(c.field, 1)
    real = True
    pairing = []
    seen: set = set()
    for p, m in c.xi.factors:
        if p == one_factor or p in seen:
            continue
        star = poly_star(p)
        if c.xi.multiplicity_of(star) != m:
            real = False
            continue
        pairing.append((p, star) if p.coeffs <= star.coeffs else (star, p))
        seen.add(p)
        seen.add(star)
    dagger_flags = []
    if c.epsilon == -1:
        for p, _ in c.xi.factors:
            if p != one_factor:
                dagger_flags.append((p, poly_dagger(p) == p))
    return RealnessStructure(
        real, tuple(pairing) if real else (), tuple(dagger_flags)
    )


def is_real_class(c: SemisimpleClass) -> bool:
    return realness_structure(c).real


def eigenspace_dimension_bound(c: SemisimpleClass) -> bool:
    """d >= d1 + 2mk for every non-(x+1) factor of a real unitary class."""
    one_factor = x_plus(c.field, 1)
    return all(
        c.d >= c.d1 + 2 * m * p.degree
        for p, m in c.xi.factors
        if p != one_factor
    )


# --- scalar twists and lifts ----------------------------------------------


def scale_charpoly(xi: MonicPoly, kappa) -> MonicPoly:
    """Characteristic polynomial of kappa*s: every root scales by kappa."""
    bits = kappa.bits if isinstance(kappa, FieldElement) else kappa
    fld = xi.field
    if bits == 0:
        raise SemisimpleError("kappa must be nonzero")
    d = xi.degree
    return MonicPoly(
        fld,
        tuple(fld.mul(c, fld.pow(bits, d - i)) for i, c in enumerate(xi.coeffs)),
    )


def real_lift_scalar(zeta: FieldElement) -> FieldElement:
    """The unique xi with xi^(-2) = zeta (squaring is bijective here)."""
    if zeta.is_zero():
        raise SemisimpleError("zeta must be nonzero")
    half = zeta.field.size >> 1  # square root exponent
    return zeta.inv() ** half


# --- PGL / PGU projections -------------------------------------------------


def _central_scalars(c: SemisimpleClass):
    """Encodings of mu_{q-eps} inside GF(q^delta)."""
    fld = c.field
    n = c.q - c.epsilon
    g = gen(fld)
    root = g ** ((fld.size - 1) // n)
    out = []
    acc = 1
    for _ in range(n):
        out.append(acc)
        acc = fld.mul(acc, root.bits)
    return out


def pgl_is_real(c: SemisimpleClass) -> bool:
    """Real in PGL^eps: some central scalar twist of Xi equals Xi-star."""
    xi = c.xi.expand()
    star = poly_star(xi)
    return any(scale_charpoly(xi, k) == star for k in _central_scalars(c))


def pgl_centralizer_order(c: SemisimpleClass) -> int:
    """|C_PGL(t)| = |C_GL(s)| * #{kappa central: kappa*s ~ s} / (q - eps)."""
    xi = c.xi.expand()
    stab = sum(1 for k in _central_scalars(c) if scale_charpoly(xi, k) == xi)
    return centralizer_shape(c).order * stab // (c.q - c.epsilon)


# --- the case classifier ----------------------------------------------------


@dataclass(frozen=True)
class GUdPrepCase:
    cases: frozenset
    witnesses: dict

    def __post_init__(self):
        if not self.cases:
            raise SemisimpleError("classifier produced an empty case set")


def _structural_case_b(c: SemisimpleClass):
    """Xi = (x+1)^d1 * Delta^floor(d/2) with deg Delta = 2, Delta = Delta-star."""
    half = c.d // 2
    one_factor = x_plus(c.field, 1)
    rest = [(p, m) for p, m in c.xi.factors if p != one_factor]
    if c.d1 != c.d - 2 * half:
        return None
    if len(rest) == 1:
        p, m = rest[0]
        if p.degree == 2 and m == half and poly_star(p) == p:
            return {"delta": str(p), "delta_reducible": False}
    if len(rest) == 2:
        (p1, m1), (p2, m2) = rest
        if (
            p1.degree == p2.degree == 1
            and m1 == m2 == half
            and poly_star(p1) == p2
        ):
            return {"delta": str(p1 * p2), "delta_reducible": True}
    return None


def classify_gudprep(c: SemisimpleClass) -> GUdPrepCase:
    """Which of the cases (a)-(h) hold, with exact integer witnesses.

    Fractional exponents q^{d(d+1)/4} are handled by comparing fourth
    powers throughout.
    """
    if c.d < 5:
        raise SemisimpleError("classifier needs d >= 5")
    if c.e <= 1:
        raise SemisimpleError("classifier needs gcd(d, q - eps) > 1")
    if c.is_identity():
        raise SemisimpleError("classifier excludes the identity class")
    if not is_real_class(c):
        raise SemisimpleError("classifier needs a real class")

    cases = set()
    witnesses: dict = {}
    d, q, eps = c.d, c.q, c.epsilon
    if 3 * c.d1 >= d:
        cases.add("a")
        witnesses["a"] = {"d1": c.d1, "d": d}
    b = _structural_case_b(c)
    if b is not None:
        cases.add("b")
        witnesses["b"] = b

    idx = index_odd_part(c)
    idx4 = idx**4
    qpow = q ** (d * (d + 1))  # (q^{d(d+1)/4})^4
    delta, f = _delta(eps), c.f

    thresholds = [
        ("c", (delta * c.e * f * (q - eps)) ** 4, False, True),
        ("d", 45**4, False, eps == -1 and q == 4),
        ("e", 15**4, False, eps == -1 and q == 2),
        ("f", 12**4, True, eps == -1 and (d, q) == (5, 4)),
        ("g", 51**4, True, eps == -1 and (d, q) == (6, 8)),
    ]
    for name, coeff, strict, applies in thresholds:
        if not applies:
            continue
        bound = coeff * qpow
        if idx4 > bound or (not strict and idx4 == bound):
            cases.add(name)
            witnesses[name] = {
                "index_odd_part": str(idx),
                "bound_fourth_power": str(bound),
                "strict": strict,
            }
    if eps == -1 and (d, q) == (6, 2):
        cases.add("h")
        witnesses["h"] = {"epsilon": eps, "d": d, "q": q}
    return GUdPrepCase(frozenset(cases), witnesses)


# --- the D statistic ---------------------------------------------------------


def d_statistic_fourth(c: SemisimpleClass) -> Fraction:
    """D^4 where D = [G:C]_odd * q^{-d(d+1)/4}."""
    return Fraction(index_odd_part(c) ** 4, c.q ** (c.d * (c.d + 1)))


def d_bound_fourth(c: SemisimpleClass) -> Fraction:
    """Fourth power of (1 - 1/q - 1/q^2)^{l'+1} q^{d(d-2d'-1)/4}."""
    q, d = c.q, c.d
    mults = [m for _, m in c.xi.factors]
    d_prime = max(mults)
    one_factor = x_plus(c.field, 1)
    l = 1 + sum(1 for p, _ in c.xi.factors if p != one_factor)
    l_prime = 0 if c.epsilon == 1 else l
    gap = Fraction(q * q - q - 1, q * q)
    exponent = d * (d - 2 * d_prime - 1)
    power = (
        Fraction(q**exponent) if exponent >= 0 else Fraction(1, q**-exponent)
    )
    return gap ** (4 * (l_prime + 1)) * power


def d_statistic_cmp(c: SemisimpleClass, bound: Fraction | None = None) -> int:
    """Sign of D^4 - bound^4 (bound defaults to the centralizer estimate)."""
    rhs = d_bound_fourth(c) if bound is None else Fraction(bound) ** 4
    lhs = d_statistic_fourth(c)
    return (lhs > rhs) - (lhs < rhs)


# --- explicit elements --------------------------------------------------------


@dataclass(frozen=True)
class DiagonalElement:
    field: FieldSpec
    entries: tuple[int, ...]
    epsilon: int
    q: int

    def det(self) -> int:
        r = 1
        for a in self.entries:
            r = self.field.mul(r, a)
        return r

    def is_palindromic(self) -> bool:
        return self.entries == tuple(reversed(self.entries))

    def charpoly(self) -> MonicPoly:
        out = MonicPoly(self.field, ())
        for a in self.entries:
            out = out * x_plus(self.field, a)
        return out


def _mu_generator(field: FieldSpec, n: int) -> int:
    """A fixed generator of the order-n subgroup of the multiplicative group."""
    if (field.size - 1) % n:
        raise SemisimpleError(f"no subgroup of order {n} in {field}")
    return gen(field).field.pow(gen(field).bits, (field.size - 1) // n)


def _discrete_log_small(field: FieldSpec, base: int, target: int, n: int) -> int:
    acc = 1
    for k in range(n):
        if acc == target:
            return k
        acc = field.mul(acc, base)
    raise SemisimpleError("target not in the cyclic group generated by base")


_SMALL_PATTERNS = {
    3: (1, 0, 1),  # positions of zeta (1) vs one (0)
    5: (1, 0, 0, 0, 1),
    6: (1, 1, 0, 0, 1, 1),
    7: (1, 1, 0, 0, 0, 1, 1),
}


def palindromic_element(
    d: int, q: int, epsilon: int, det_target: int | FieldElement
) -> DiagonalElement:
    """The palindromic diagonal with prescribed determinant.

    Entries lie in the order-(q - eps) subgroup, so the element belongs to
    GL_d(q) for eps = +1 and to GU_d(q) (anti-diagonal Hermitian form) for
    eps = -1.
    """
    if epsilon not in (1, -1):
        raise SemisimpleError("epsilon must be +1 or -1")
    fld = make_field(q.bit_length() - 1, _delta(epsilon))
    target = det_target.bits if isinstance(det_target, FieldElement) else det_target
    n = q - epsilon
    if fld.pow(target, n) != 1:
        raise SemisimpleError(
            f"determinant target {target} is not in the order-{n} subgroup"
        )
    root = _mu_generator(fld, n)

    if d in _SMALL_PATTERNS:
        pattern = _SMALL_PATTERNS[d]
        count = sum(pattern)
        # zeta^count = target has a unique order-n solution: n is odd and
        # count is a power of 2
        inv_count = pow(count, -1, n)
        s = _discrete_log_small(fld, root, target, n)
        zeta = fld.pow(root, (s * inv_count) % n)
        entries = tuple(zeta if bit else 1 for bit in pattern)
        return DiagonalElement(fld, entries, epsilon, q)

    if d < 9:
        raise SemisimpleError(f"no palindromic pattern for d = {d}")
    d_bar = 1 if d % 2 else 2
    d_p = (d - d_bar) // 4
    zeta = root  # order exactly n
    if d - d_bar == 4 * d_p:
        zeta_exp = 2 * d_p
        core = (
            [zeta] * d_p + [1] * d_p + ["xi"] * d_bar + [1] * d_p + [zeta] * d_p
        )
    else:
        zeta_exp = 2 * d_p - 2
        zinv = fld.inv(zeta)
        core = (
            [zeta] * d_p
            + [1] * d_p
            + [zinv]
            + ["xi"] * d_bar
            + [zinv]
            + [1] * d_p
            + [zeta] * d_p
        )
    # xi = zeta^j with zeta^(j*d_bar + zeta_exp) = target
    s = _discrete_log_small(fld, root, target, n)
    j = ((s - zeta_exp) * pow(d_bar, -1, n)) % n
    xi = fld.pow(zeta, j)
    entries = tuple(xi if a == "xi" else a for a in core)
    elem = DiagonalElement(fld, entries, epsilon, q)
    if elem.det() != target or len(entries) != d:
        raise SemisimpleError("internal error: palindromic construction failed")
    return elem


@dataclass(frozen=True)
class InvolutionBlocks:
    d: int
    l: int
    q: int
    epsilon: int
    rows: tuple[tuple[int, ...], ...]
    centralizer_order: int


def involution_with_blocks(d: int, l: int, q: int, epsilon: int) -> InvolutionBlocks:
    """Identity plus an l x l corner block: an involution with l Jordan
    2-blocks, plus its predicted centralizer order q^{2ld-3l^2} *
    |GL_l^eps(q)| * |GL_{d-2l}^eps(q)|.
    """
    if not 0 <= 2 * l <= d:
        raise SemisimpleError("need 0 <= 2l <= d")
    rows = []
    for i in range(d):
        row = [0] * d
        row[i] = 1
        if i < l:
            row[d - l + i] = 1
        rows.append(tuple(row))
    order = (
        q ** (2 * l * d - 3 * l * l)
        * group_order_eps(epsilon, l, q)
        * group_order_eps(epsilon, d - 2 * l, q)
    ) if l else group_order_eps(epsilon, d, q)
    return InvolutionBlocks(d, l, q, epsilon, tuple(rows), order)


def min_character_degree(c: SemisimpleClass) -> int:
    """Clifford floor: ceil([G:C]_odd / gcd(d, q - eps))."""
    idx = index_odd_part(c)
    return -(-idx // c.e)
