"""Independent brute-force verifiers.

Every decision procedure in the package must agree with these scans on
small instances; the CLI exposes them behind --verify and `enumerate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .isometry import is_isometry
from .lattice import GramLattice, inner, norm
from .matrices import Matrix, Vector, mat_vec
from .quadform import PellSolution

DEFAULT_BOX_RADIUS = 50


@dataclass(frozen=True)
class LowDegreeClass:
    coords: Vector
    degree: int
    square: int
    multiple_of_h: Optional[int]


def brute_values(g: GramLattice, radius: int) -> dict[int, Vector]:
    """All norms attained on the box [-radius, radius]^rank, with one
    witness each; the zero vector is excluded so the t = 0 entry means a
    nontrivial zero."""
    if g.rank > 2:
        raise ValueError("value scan supports rank <= 2 only")
    if radius < 1:
        raise ValueError("radius must be >= 1")
    out: dict[int, Vector] = {}
    if g.rank == 1:
        vectors = ((x,) for x in range(-radius, radius + 1))
    else:
        vectors = (
            (x, y)
            for x in range(-radius, radius + 1)
            for y in range(-radius, radius + 1)
        )
    for v in vectors:
        if all(c == 0 for c in v):
            continue
        t = norm(g, v)
        if t not in out:
            out[t] = v
    return out


def _ceil_sqrt_fraction(q: Fraction) -> int:
    """Smallest integer >= sqrt(q) for a nonnegative rational q."""
    if q < 0:
        raise ValueError("negative radicand")
    # ceil(sqrt(p/r)) = ceil(sqrt(p*r)/r)
    p, r = q.numerator, q.denominator
    s = math.isqrt(p * r)
    if s * s < p * r:
        s += 1
    return -(-s // r)


def required_box_radius(g: GramLattice, h: Vector, bound: int) -> int:
    """A box radius provably containing every class C with
    0 < inner(C, h) < bound and norm(C) > 0, for rank-2 g.

    Splits C = t*h + s*v0 with v0 a primitive vector orthogonal to h;
    norm(v0) < 0 in signature (1,1), so norm(C) > 0 bounds |s|.
    """
    if g.rank != 2:
        raise ValueError("rank 2 only")
    nh = norm(g, h)
    if nh <= 0:
        raise ValueError("polarization must have positive norm")
    w = mat_vec(g.entries, h)
    gcd_w = math.gcd(*w)
    v0 = (w[1] // gcd_w, -w[0] // gcd_w)
    nv0 = norm(g, v0)
    if nv0 >= 0:
        raise ValueError("orthogonal direction not negative; signature not (1,1)?")
    t_max = Fraction(bound - 1, nh)
    s_max_sq = t_max * t_max * Fraction(nh, -nv0)
    s_max = _ceil_sqrt_fraction(s_max_sq)
    radius = 0
    for i in range(2):
        radius = max(
            radius,
            _ceil_sqrt_fraction((t_max * abs(h[i]) + s_max * abs(v0[i])) ** 2),
        )
    return radius + 1


def brute_low_degree(
    g: GramLattice, h: Vector, bound: int, radius: Optional[int] = None
) -> list[LowDegreeClass]:
    """Exhaustive box enumeration of classes with 0 < degree < bound and
    positive square. The box radius is validated (or derived) from the
    exact degree-window analysis, so the scan is provably complete."""
    needed = required_box_radius(g, h, bound)
    if radius is None:
        radius = needed
    elif radius < needed:
        raise ValueError(
            f"box radius {radius} insufficient; need at least {needed}"
        )
    out = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            c = (x, y)
            d = inner(g, c, h)
            if not 0 < d < bound:
                continue
            sq = norm(g, c)
            if sq <= 0:
                continue
            out.append(
                LowDegreeClass(
                    coords=c,
                    degree=d,
                    square=sq,
                    multiple_of_h=multiple_of(c, h),
                )
            )
    out.sort(key=lambda cls: (cls.degree, cls.coords))
    return out


def multiple_of(c: Vector, h: Vector) -> Optional[int]:
    for m_cand in set(
        ci // hi for ci, hi in zip(c, h) if hi != 0 and ci % hi == 0
    ):
        if all(ci == m_cand * hi for ci, hi in zip(c, h)):
            return m_cand
    return None


def brute_pell(d: int, y_max: int) -> Optional[PellSolution]:
    """Smallest y in 1..y_max with d*y^2 + 1 a perfect square, if any."""
    if d <= 0 or math.isqrt(d) ** 2 == d:
        raise ValueError("d must be a positive nonsquare")
    for y in range(1, y_max + 1):
        rhs = d * y * y + 1
        x = math.isqrt(rhs)
        if x * x == rhs:
            return PellSolution(x=x, y=y, D=d, N=1)
    return None


def brute_action_order(
    g: GramLattice, m: Matrix, cap: Optional[int] = None
) -> Optional[int]:
    """Least n with m^n acting trivially on L*/L, found by pushing the
    explicit dual generators through m until every class returns to
    itself. Independent of the structured action machinery."""
    from .discgroup import discriminant_group

    if not is_isometry(g, m):
        raise ValueError("matrix is not an isometry")
    group = discriminant_group(g)
    if group.is_trivial:
        return 1
    if cap is None:
        cap = group.order
    current = [tuple(Fraction(x) for x in w) for w in group.generators]
    for n in range(1, cap + 1):
        current = [
            tuple(
                sum(Fraction(m[i][j]) * w[j] for j in range(g.rank))
                for i in range(g.rank)
            )
            for w in current
        ]
        if all(
            all((wi - oi).denominator == 1 for wi, oi in zip(w, orig))
            for w, orig in zip(current, group.generators)
        ):
            return n
    return None
