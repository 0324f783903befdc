"""Exact group orders, centralizer-bound constants, and the inequality
certifier.

All inequalities live in two integer variables q and f with q = 2^f.  An
expression parses into a sparse polynomial {(e_q, e_f): coeff}, so every
verdict is an exact integer comparison.  Finite f-ranges are checked
exhaustively; tail ranges (f >= a) are certified by leading-term dominance
with an explicit crossover point f0 and an exhaustive check of [a, f0].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources


class BoundsError(ValueError):
    """Raised for malformed expressions, ranges or descriptors."""


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


# --- group orders --------------------------------------------------------


def gl_order(m: int, Q: int) -> int:
    r = Q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        r *= Q**i - 1
    return r


def gu_order(m: int, Q: int) -> int:
    r = Q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        r *= Q**i - (-1) ** i
    return r


@dataclass(frozen=True)
class GroupOrder:
    kind: str
    d: int
    q: int
    value: int
    odd_part: int


GROUP_KINDS = ("GL", "GU", "SL", "SU", "PGL", "PGU")


def group_order(kind: str, d: int, q: int) -> GroupOrder:
    if kind not in GROUP_KINDS:
        raise BoundsError(f"unsupported group kind {kind!r}")
    if d < 1 or q < 2 or q & (q - 1):
        raise BoundsError(f"need d >= 1 and q a power of 2, got d={d}, q={q}")
    if kind.endswith("GU") or kind == "SU":
        base = gu_order(d, q)
        center = q + 1
    else:
        base = gl_order(d, q)
        center = q - 1
    value = base if kind in ("GL", "GU") else base // center
    return GroupOrder(kind, d, q, value, odd_part(value))


def group_order_eps(epsilon: int, d: int, q: int) -> int:
    """|GL_d^epsilon(q)| as a plain integer."""
    return gu_order(d, q) if epsilon == -1 else gl_order(d, q)


def order_estimate_check(a, m: int) -> bool:
    """Two-sided bounds on prod(a^i - 1) and prod(a^i - (-1)^i), exactly."""
    a = Fraction(a)
    if a < 2 or m < 2:
        raise BoundsError("need a >= 2 and m >= 2")
    lead = a ** (m * (m + 1) // 2)
    gap = 1 - 1 / a - 1 / a**2
    prod_lin = Fraction(1)
    prod_uni = Fraction(1)
    for i in range(1, m + 1):
        prod_lin *= a**i - 1
        prod_uni *= a**i - (-1) ** i
    return (
        lead * gap <= prod_lin <= lead
        and lead * gap <= prod_uni <= lead / gap
    )


# --- the M_G table -------------------------------------------------------


@dataclass(frozen=True)
class MGValue:
    descriptor: str
    value: int


def mg(kind: str, q: int, d: int | None = None, epsilon: int = 1) -> MGValue:
    """Per-group centralizer bound: E6, PSL/PSU of degree 3 or >= 5, POmega8+."""
    eps_tag = "+" if epsilon == 1 else "-"
    if kind == "E6":
        return MGValue(f"E6^{eps_tag}({q})", q**48)
    if kind == "PSL":
        if d is None:
            raise BoundsError("PSL needs a degree")
        desc = f"PSL{eps_tag}_{d}({q})"
        if d >= 5:
            return MGValue(desc, q ** (d * (d + 1) // 2))
        if d == 3:
            if epsilon == 1:
                return MGValue(desc, 62401 if q == 16 else q**4)
            return MGValue(desc, q**4 + q**3)
        raise BoundsError(f"degree {d} outside the table")
    if kind == "PO8+":
        return MGValue(f"POmega8+({q})", q**14 + q**12)
    raise BoundsError(f"unknown group kind {kind!r}")


# --- expression parser: sparse polynomials in q = 2^f and f --------------

_TOKEN_RE = re.compile(r"\s*(\d+|[qf+\-*^()])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise BoundsError(f"bad character in expression at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (ea, ja), ca in a.items():
        for (eb, jb), cb in b.items():
            k = (ea + eb, ja + jb)
            out[k] = out.get(k, 0) + ca * cb
            if out[k] == 0:
                del out[k]
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> dict:
        poly = self.expr()
        if self.peek() is not None:
            raise BoundsError(f"trailing input at token {self.peek()!r}")
        return poly

    def expr(self) -> dict:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        out = _poly_add({}, self.term(), sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            out = _poly_add(out, self.term(), 1 if op == "+" else -1)
        return out

    def term(self) -> dict:
        out = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                out = _poly_mul(out, self.factor())
            elif tok is not None and (tok.isdigit() or tok in ("q", "f", "(")):
                out = _poly_mul(out, self.factor())  # juxtaposition
            else:
                return out

    def factor(self) -> dict:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise BoundsError("exponent must be a literal integer")
            out = {(0, 0): 1}
            for _ in range(int(tok)):
                out = _poly_mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        if tok is None:
            raise BoundsError("unexpected end of expression")
        if tok.isdigit():
            return {(0, 0): int(tok)}
        if tok == "q":
            return {(1, 0): 1}
        if tok == "f":
            return {(0, 1): 1}
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise BoundsError("unbalanced parentheses")
            return inner
        raise BoundsError(f"unexpected token {tok!r}")


def parse_expression(text: str) -> dict:
    """Parse into {(e_q, e_f): integer coefficient} with q treated as 2^f."""
    return _Parser(text).parse()


def eval_poly(poly: dict, f: int) -> int:
    return sum(c * (1 << (e * f)) * f**j for (e, j), c in poly.items())


# --- certification -------------------------------------------------------

RELATIONS = (">", ">=", "<", "<=")


@dataclass(frozen=True)
class InequalityCert:
    id: str
    lhs: str
    rel: str
    rhs: str
    range_start: int
    range_end: int | None  # None means the tail f >= range_start
    status: str  # verified | failed | tail-unproved
    witness: dict
    anchor: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "verified"


def _difference(lhs: dict, rhs: dict, rel: str) -> tuple[dict, bool]:
    """Rewrite as P >= 0 (or P > 0); returns (P, strict)."""
    if rel in (">", ">="):
        return _poly_add(lhs, rhs, -1), rel == ">"
    if rel in ("<", "<="):
        return _poly_add(rhs, lhs, -1), rel == "<"
    raise BoundsError(f"unknown relation {rel!r}")


def _holds(value: int, strict: bool) -> bool:
    return value > 0 if strict else value >= 0


def _tail_witness(poly: dict, start: int) -> dict | None:
    """Dominance certificate: beyond f0 the leading term alone wins.

    Splits the leading coefficient into equal weights over the remaining
    terms and demands a factor-2 margin per term, so the conclusion is
    strict positivity.  Returns None when no such certificate exists.
    """
    if not poly:
        return None
    lead = max(poly)  # lexicographic on (e_q, e_f)
    c_lead = poly[lead]
    if c_lead <= 0:
        return None
    others = [(k, v) for k, v in poly.items() if k != lead]
    if not others:
        return {"f0": start, "leading": [*lead, str(c_lead)], "terms": []}
    E, J = lead
    for (e, j), _ in others:
        if e == E and j >= J:
            return None
        if e == E and j < J:
            continue
        # e < E: exponential gap available
    weight = Fraction(c_lead, len(others))
    for f0 in range(start, start + 512):
        good = True
        for (e, j), c in others:
            de, dj = E - e, J - j
            if de == 0 and dj < 0:
                good = False
                break
            ratio = Fraction(1 << (de * f0)) * Fraction(f0) ** dj
            if weight * ratio < 2 * abs(c):
                good = False
                break
            if dj < 0:
                # ratio must be nondecreasing beyond f0:
                # (f0+1)^m <= 2^de * f0^m with m = -dj
                m = -dj
                if (f0 + 1) ** m > (1 << de) * f0**m:
                    good = False
                    break
        if good:
            return {
                "f0": f0,
                "leading": [E, J, str(c_lead)],
                "terms": [[e, j, str(c)] for (e, j), c in others],
            }
    return None


def certify(
    cert_id: str,
    lhs: str,
    rel: str,
    rhs: str,
    range_start: int,
    range_end: int | None,
    anchor: str = "",
) -> InequalityCert:
    if rel not in RELATIONS:
        raise BoundsError(f"unknown relation {rel!r}")
    if range_start < 1:
        raise BoundsError("f ranges start at 1")
    lp, rp = parse_expression(lhs), parse_expression(rhs)
    diff, strict = _difference(lp, rp, rel)

    def finite_ok(a: int, b: int) -> bool:
        return all(_holds(eval_poly(diff, f), strict) for f in range(a, b + 1))

    if range_end is not None:
        status = "verified" if finite_ok(range_start, range_end) else "failed"
        witness = {"checked": [range_start, range_end]}
        return InequalityCert(
            cert_id, lhs, rel, rhs, range_start, range_end, status, witness, anchor
        )

    witness = _tail_witness(diff, range_start)
    if witness is None:
        return InequalityCert(
            cert_id, lhs, rel, rhs, range_start, None, "tail-unproved", {}, anchor
        )
    if not finite_ok(range_start, witness["f0"]):
        return InequalityCert(
            cert_id, lhs, rel, rhs, range_start, None, "failed", witness, anchor
        )
    return InequalityCert(
        cert_id, lhs, rel, rhs, range_start, None, "verified", witness, anchor
    )


def replay_witness(cert: InequalityCert) -> bool:
    """Re-validate a tail certificate from its stored witness data."""
    if cert.range_end is not None or not cert.witness:
        return False
    diff, strict = _difference(
        parse_expression(cert.lhs), parse_expression(cert.rhs), cert.rel
    )
    f0 = cert.witness["f0"]
    E, J, c_lead = cert.witness["leading"]
    if diff.get((E, J), 0) != int(c_lead) or int(c_lead) <= 0:
        return False
    others = [(k, v) for k, v in diff.items() if k != (E, J)]
    stored = {(e, j): int(c) for e, j, c in cert.witness["terms"]}
    if dict(others) != stored:
        return False
    weight = Fraction(int(c_lead), max(len(others), 1))
    for (e, j), c in others:
        de, dj = E - e, J - j
        if de == 0 and dj < 0:
            return False
        ratio = Fraction(1 << (de * f0)) * Fraction(f0) ** dj
        if weight * ratio < 2 * abs(c):
            return False
        if dj < 0 and (f0 + 1) ** (-dj) > (1 << de) * f0 ** (-dj):
            return False
    return all(
        _holds(eval_poly(diff, f), strict) for f in range(cert.range_start, f0 + 1)
    )


# --- registry ------------------------------------------------------------


def parse_range(text: str) -> tuple[int, int | None]:
    text = text.strip()
    if text.endswith("+"):
        return int(text[:-1]), None
    if ".." in text:
        a, b = text.split("..")
        return int(a), int(b)
    raise BoundsError(f"bad f-range {text!r}")


def load_registry(path=None) -> list[tuple]:
    """Entries as (id, lhs, rel, rhs, start, end, anchor) tuples."""
    if path is None:
        source = (
            resources.files("e1forge").joinpath("data/registry.txt").read_text()
        )
    else:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    entries = []
    for lineno, line in enumerate(source.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 6:
            raise BoundsError(f"registry line {lineno}: expected 6 fields")
        cert_id, lhs, rel, rhs, frange, anchor = parts
        start, end = parse_range(frange)
        entries.append((cert_id, lhs, rel, rhs, start, end, anchor))
    return entries


def certify_all(path=None) -> list[InequalityCert]:
    return [certify(*entry[:6], anchor=entry[6]) for entry in load_registry(path)]
