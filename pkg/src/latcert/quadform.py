"""Diophantine kernel for binary quadratic forms of rank-2 lattices.

Representability decisions run as a staged pipeline (content filter,
congruence filter, Pell-class search with an exact class bound) and
return an honest "unknown" when the search budget is exhausted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .lattice import GramLattice, signature
from .matrices import Matrix, from_rows

DEFAULT_MODULI = (3, 5, 8, 16)

# Reason codes for negative/unknown representability outcomes.
REASON_CONTENT = "content-divisibility"
REASON_CONGRUENCE = "congruence-filter"
REASON_NONSQUARE_DISC = "nonsquare-discriminant"
REASON_PELL = "pell-exhausted"


@dataclass(frozen=True)
class BinaryForm:
    """f(x, y) = a*x^2 + b*x*y + c*y^2 with integer coefficients."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    D: int
    N: int

    def __post_init__(self):
        if self.x * self.x - self.D * self.y * self.y != self.N:
            raise ValueError("not a solution of x^2 - D*y^2 = N")


@dataclass(frozen=True)
class Representation:
    """Outcome of a representability query: yes / no / unknown."""

    status: str  # "yes", "no" or "unknown"
    witness: Optional[tuple[int, int]] = None
    reason: Optional[str] = None

    @property
    def is_yes(self) -> bool:
        return self.status == "yes"

    @property
    def is_no(self) -> bool:
        return self.status == "no"


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def to_binary_form(g: GramLattice) -> BinaryForm:
    """The quadratic form f(x, y) = norm(g, (x, y)) of a rank-2 lattice."""
    if g.rank != 2:
        raise ValueError("binary form requires a rank-2 lattice")
    e = g.entries
    return BinaryForm(a=e[0][0], b=2 * e[0][1], c=e[1][1])


def content(f: BinaryForm) -> int:
    return math.gcd(f.a, f.b, f.c)


def represents_zero_nontrivially(f: BinaryForm) -> bool:
    """A nondegenerate integral binary form has a nontrivial zero iff
    its discriminant is a perfect square."""
    disc = f.discriminant
    if disc == 0:
        raise ValueError("degenerate form")
    return _is_square(disc)


def zero_witness(f: BinaryForm) -> tuple[int, int]:
    """A nonzero integer pair (x, y) with f(x, y) = 0."""
    if not represents_zero_nontrivially(f):
        raise ValueError("form has no nontrivial zero")
    if f.a == 0:
        return (1, 0)
    s = math.isqrt(f.discriminant)
    x, y = -f.b + s, 2 * f.a
    if x == 0:
        x, y = -f.b - s, 2 * f.a
    g = math.gcd(x, y)
    return (x // g, y // g)


def pell_fundamental(d: int) -> PellSolution:
    """Minimal positive solution of x^2 - d*y^2 = 1, via the periodic
    continued-fraction expansion of sqrt(d)."""
    if d <= 0:
        raise ValueError("d must be positive")
    a0 = math.isqrt(d)
    if a0 * a0 == d:
        raise ValueError("d must not be a perfect square")
    m, q, a = 0, 1, a0
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    while p_cur * p_cur - d * q_cur * q_cur != 1:
        m = q * a - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    return PellSolution(x=p_cur, y=q_cur, D=d, N=1)


def _congruence_blocks(f: BinaryForm, t: int, moduli) -> bool:
    """True if some modulus rules out f(x, y) = t."""
    for k in moduli:
        attained = {
            f.evaluate(x, y) % k for x in range(k) for y in range(k)
        }
        if t % k not in attained:
            return True
    return False


def _divisor_search(f: BinaryForm, t: int) -> Optional[tuple[int, int]]:
    """Solve f(x, y) = t != 0 when the discriminant is a perfect square
    or a degenerate-looking coefficient pattern allows factoring.

    4*a*f = (2ax + by)^2 - disc*y^2 factors over Z, so solutions come
    from divisor pairs of 4*a*t. Complete for t != 0.
    """
    a, b, c = f.a, f.b, f.c
    if a == 0 and c == 0:
        # f = b*x*y
        if t % b == 0:
            return (1, t // b)
        for y in _signed_divisors(t):
            if (t // y) % b == 0:
                return ((t // y) // b, y)
        return None
    if a == 0:
        # swap variables so the leading coefficient is nonzero
        w = _divisor_search(BinaryForm(c, b, a), t)
        return None if w is None else (w[1], w[0])
    s = math.isqrt(abs(f.discriminant))
    target = 4 * a * t
    for p in _signed_divisors(target):
        q = target // p
        # p = 2ax + (b - s)y, q = 2ax + (b + s)y
        if s == 0:
            continue
        if (q - p) % (2 * s) != 0:
            continue
        y = (q - p) // (2 * s)
        num = p + q - 2 * b * y
        if num % (4 * a) != 0:
            continue
        x = num // (4 * a)
        if f.evaluate(x, y) == t:
            return (x, y)
    return None


def _signed_divisors(n: int):
    n = abs(n)
    divs = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            divs.extend((d, n // d))
    out = sorted(set(divs))
    return [s * d for d in out for s in (1, -1)]


def _pell_class_search(
    f: BinaryForm, t: int, search_bound: int
) -> Representation:
    """Decide f(x, y) = t for a form with leading coefficient 1 and
    positive nonsquare discriminant.

    Completing the square gives u^2 - disc*y^2 = 4t with u = 2x + b*y.
    Every solution class of the generalized Pell equation contains a
    representative with |y| below an exact bound derived from the
    fundamental unit, so a finite scan is a complete decision.
    """
    assert f.a == 1
    disc = f.discriminant
    n = 4 * t
    fund = pell_fundamental(disc)
    bound_sq = (fund.y * fund.y * abs(n)) // (2 * (fund.x - 1))
    y_bound = math.isqrt(bound_sq) + 1
    for y in range(min(y_bound, search_bound) + 1):
        rhs = n + disc * y * y
        if rhs < 0 or not _is_square(rhs):
            continue
        u = math.isqrt(rhs)
        for uu in ({u, -u} if u else {0}):
            if (uu - f.b * y) % 2 == 0:
                x = (uu - f.b * y) // 2
                if f.evaluate(x, y) == t:
                    return Representation(status="yes", witness=(x, y))
    if y_bound > search_bound:
        return Representation(status="unknown", reason=REASON_PELL)
    return Representation(status="no", reason=REASON_PELL)


def _unimodular_to_leading_one(
    f: BinaryForm, box: int
) -> Optional[tuple[BinaryForm, Matrix]]:
    """Search a small box for a primitive value +-1 of f and return an
    equivalent form with leading coefficient +-1 plus the change of
    variables (as a column-action matrix)."""
    for r in range(-box, box + 1):
        for s in range(-box, box + 1):
            if math.gcd(r, s) != 1:
                continue
            if abs(f.evaluate(r, s)) != 1:
                continue
            # complete (r, s) to a unimodular matrix [[r, p], [s, q]]
            _, xg, yg = _extended_gcd(r, s)
            q, p = xg, -yg  # r*q - s*p = r*xg + s*yg = 1
            a2 = f.evaluate(r, s)
            b2 = 2 * f.a * r * p + f.b * (r * q + s * p) + 2 * f.c * s * q
            c2 = f.evaluate(p, q)
            return BinaryForm(a2, b2, c2), from_rows([[r, p], [s, q]])
    return None


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def represents_value(
    g: GramLattice,
    t: int,
    search_bound: int = 1000,
    moduli=DEFAULT_MODULI,
) -> Representation:
    """Decide whether the rank-2 lattice g represents the integer t.

    Pipeline: zero criterion / content filter / congruence filter /
    Pell-class search on the primitive part, with a direct box scan
    before conceding "unknown".
    """
    sig = signature(g)
    if (sig.positive, sig.negative) != (1, 1):
        raise ValueError(
            "representability pipeline requires signature (1,1)"
        )
    f = to_binary_form(g)
    if t == 0:
        if represents_zero_nontrivially(f):
            return Representation(status="yes", witness=zero_witness(f))
        return Representation(status="no", reason=REASON_NONSQUARE_DISC)
    cont = content(f)
    if t % cont != 0:
        return Representation(status="no", reason=REASON_CONTENT)
    if _congruence_blocks(f, t, moduli):
        return Representation(status="no", reason=REASON_CONGRUENCE)
    f0 = BinaryForm(f.a // cont, f.b // cont, f.c // cont)
    t0 = t // cont
    result = _decide_primitive(f0, t0, search_bound)
    if result.is_yes:
        x, y = result.witness
        assert f.evaluate(x, y) == t
    return result


def _decide_primitive(
    f0: BinaryForm, t0: int, search_bound: int
) -> Representation:
    if f0.a == 0 or f0.c == 0 or _is_square(f0.discriminant):
        w = _divisor_search(f0, t0)
        if w is not None:
            return Representation(status="yes", witness=w)
        return Representation(status="no", reason=REASON_PELL)
    if f0.a == 1:
        return _pell_class_search(f0, t0, search_bound)
    if f0.c == 1:
        r = _pell_class_search(BinaryForm(f0.c, f0.b, f0.a), t0, search_bound)
        if r.is_yes:
            return Representation(status="yes", witness=r.witness[::-1])
        return r
    if f0.a == -1 or f0.c == -1:
        neg = BinaryForm(-f0.a, -f0.b, -f0.c)
        r = _decide_primitive(neg, -t0, search_bound)
        return r
    # leading coefficient not +-1: try a unimodular change of variables
    found = _unimodular_to_leading_one(f0, box=20)
    if found is not None:
        f1, m = found
        r = _decide_primitive(f1, t0, search_bound)
        if r.is_yes:
            u, v = r.witness
            x = m[0][0] * u + m[0][1] * v
            y = m[1][0] * u + m[1][1] * v
            return Representation(status="yes", witness=(x, y))
        return r
    # fall back to a direct witness scan before answering "unknown"
    box = min(max(50, 1), search_bound)
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            if f0.evaluate(x, y) == t0:
                return Representation(status="yes", witness=(x, y))
    return Representation(status="unknown", reason=REASON_PELL)


def automorph_generator(f: BinaryForm) -> Matrix:
    """The standard proper automorph of a primitive indefinite form,
    built from the minimal solution of t^2 - disc*u^2 = 4 with u > 0."""
    if content(f) != 1:
        raise ValueError("form must be primitive")
    disc = f.discriminant
    if disc <= 0 or _is_square(disc):
        raise ValueError("form must be indefinite with nonsquare discriminant")
    u = 1
    while True:
        rhs = disc * u * u + 4
        if _is_square(rhs):
            t = math.isqrt(rhs)
            break
        u += 1
    m = from_rows(
        [
            [(t - f.b * u) // 2, -f.c * u],
            [f.a * u, (t + f.b * u) // 2],
        ]
    )
    return m
