"""Complete toric surfaces given by 2D lattice fans.

Rays are primitive integer vectors kept in counterclockwise order, starting
from the ray of least angle in [0, 2*pi).  Intersection numbers and K^2 are
exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from math import ceil, floor, gcd
from typing import NamedTuple, Optional, Sequence

from . import kernels
from .errors import InvalidFan, NotWellFormed
from .quotsing import (
    CyclicQuotSing,
    SingularityClass,
    normalize,
)


class LatticeVector(NamedTuple):
    x: int
    y: int


def det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def is_primitive(v) -> bool:
    return gcd(v[0], v[1]) == 1


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = det(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = cmp_to_key(_angle_cmp)


@dataclass(frozen=True)
class Fan:
    """A validated complete fan.  Build it with :func:`fan_from_rays`."""

    rays: tuple

    def __len__(self):
        return len(self.rays)

    def cones(self):
        k = len(self.rays)
        return [(self.rays[i], self.rays[(i + 1) % k]) for i in range(k)]

    def to_json(self) -> dict:
        return {"rays": [[v.x, v.y] for v in self.rays]}

    @classmethod
    def from_json(cls, obj: dict) -> "Fan":
        return fan_from_rays(obj["rays"])

    def transform(self, m) -> "Fan":
        """Image under the integer matrix ((a, b), (c, d)) of determinant 1."""
        (a, b), (c, d) = m
        if a * d - b * c != 1:
            raise InvalidFan("transform must have determinant 1")
        return fan_from_rays([(a * x + b * y, c * x + d * y) for x, y in self.rays])


def fan_from_rays(rays: Sequence) -> Fan:
    """Validate ray data and sort it counterclockwise.

    Raises InvalidFan for fewer than three rays, non-primitive or repeated
    rays, and ray sets whose cones are not all strictly convex (which covers
    incomplete fans: rays in a half-plane leave a gap of angle >= pi).
    """
    vs = [LatticeVector(int(v[0]), int(v[1])) for v in rays]
    if len(vs) < 3:
        raise InvalidFan(f"need at least 3 rays, got {len(vs)}")
    for v in vs:
        if not is_primitive(v):
            raise InvalidFan(f"ray {tuple(v)} is not primitive")
    if len(set(vs)) != len(vs):
        raise InvalidFan("duplicate ray")
    vs.sort(key=angle_key)
    k = len(vs)
    for i in range(k):
        u, w = vs[i], vs[(i + 1) % k]
        if det(u, w) <= 0:
            raise InvalidFan(
                f"cone <{tuple(u)}, {tuple(w)}> is not strictly convex; fan not complete"
            )
    return Fan(tuple(vs))


def parse_rays(text: str) -> Fan:
    """Parse ``"x,y;x,y;..."``."""
    try:
        rays = [tuple(int(c) for c in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise InvalidFan(f"cannot parse rays {text!r}") from exc
    if any(len(r) != 2 for r in rays):
        raise InvalidFan(f"cannot parse rays {text!r}")
    return fan_from_rays(rays)


def _complement_basis(v):
    """Some u with det(v, u) = 1."""
    x, y = v
    # extended Euclid on (x, y): s*x + t*y = 1
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert old_r == 1
    # det((x, y), (-t, s)) = x*s + y*t = 1
    return (-old_t, old_s)


def _oriented(v1, v2):
    r = det(v1, v2)
    if r == 0:
        raise InvalidFan(f"rays {tuple(v1)}, {tuple(v2)} span no cone")
    return (v1, v2, r) if r > 0 else (v2, v1, -r)


def cone_normal_form(v1, v2) -> tuple[int, int]:
    """(r, q) with the cone <v1, v2> unimodularly equal to <e2, r e1 - q e2>.

    A clockwise pair is read as the same cone with the rays swapped.
    """
    v1, v2, r = _oriented(v1, v2)
    if r == 1:
        return (1, 0)
    u = _complement_basis(v1)
    # in the basis (v1, u): v2 = alpha*v1 + r*u
    alpha = det(v2, u)
    p = alpha % r
    return (r, (r - p) % r)


def cone_singularity(v1, v2) -> CyclicQuotSing:
    """Canonical germ of the affine toric surface of the cone <v1, v2>."""
    r, q = cone_normal_form(v1, v2)
    return normalize(r, q)


def boundary_resolution(v1, v2) -> list[int]:
    """Resolution chain of <v1, v2> read off the lattice polygon.

    Takes the compact boundary of conv((cone ∩ Z^2) minus 0) from v1 to
    v2; consecutive boundary points u_{i-1}, u_i, u_{i+1} satisfy
    u_{i-1} + u_{i+1} = b_i u_i.  Uses no continued fractions, so it checks
    :func:`cone_singularity` independently.
    """
    v1, v2, r = _oriented(v1, v2)
    # hull vertices are row extremes of the fundamental parallelogram
    ys = [0, v1[1], v2[1], v1[1] + v2[1]]
    cand = set()
    for y in range(min(ys), max(ys) + 1):
        # s*v1 + t*v2 = (x, y) with 0 <= s, t <= 1: s = det(p, v2)/r, t = det(v1, p)/r
        # det(p, v2) = x*v2y - y*v2x ; det(v1, p) = v1x*y - v1y*x
        lo, hi = None, None
        for coef, const in ((v2[1], -y * v2[0]), (-v1[1], v1[0] * y)):
            # 0 <= coef*x + const <= r
            if coef == 0:
                if not (0 <= const <= r):
                    lo, hi = 1, 0
                    break
                continue
            if coef > 0:
                a_, b_ = -(const // coef), (r - const) // coef
            else:
                a_, b_ = -((r - const) // -coef), const // -coef
            lo = a_ if lo is None else max(lo, a_)
            hi = b_ if hi is None else min(hi, b_)
        if lo is None or hi is None or lo > hi:
            continue
        if y == 0 and lo <= 0 <= hi:
            for x in (lo, -1, 1, hi):
                if lo <= x <= hi and x != 0:
                    cand.add((x, y))
        else:
            cand.add((lo, y))
            cand.add((hi, y))
    pts = sorted(cand, key=cmp_to_key(lambda p, q: -1 if det(p, q) > 0 else (1 if det(p, q) < 0 else 0)))
    # keep the point nearest the origin on each ray
    chain = []
    for p in pts:
        if chain and det(chain[-1], p) == 0:
            if abs(p[0]) + abs(p[1]) < abs(chain[-1][0]) + abs(chain[-1][1]):
                chain[-1] = p
            continue
        chain.append(p)
    hull = []
    for p in chain:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if det((b[0] - a[0], b[1] - a[1]), (p[0] - b[0], p[1] - b[1])) > 0:
                hull.pop()
            else:
                break
        hull.append(p)
    assert tuple(hull[0]) == tuple(v1) and tuple(hull[-1]) == tuple(v2)
    boundary = [hull[0]]
    for a, b in zip(hull, hull[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = gcd(dx, dy)
        for k in range(1, g + 1):
            boundary.append((a[0] + k * dx // g, a[1] + k * dy // g))
    return [det(boundary[i - 1], boundary[i + 1]) for i in range(1, len(boundary) - 1)]


def singularity_content(f: Fan) -> tuple:
    """Sorted tuple of the singular points, one per cone of determinant > 1."""
    out = []
    for v1, v2 in f.cones():
        if det(v1, v2) > 1:
            out.append(SingularityClass.from_germ(cone_singularity(v1, v2)))
    return tuple(sorted(out, key=SingularityClass.sort_key))


def picard_rank(f: Fan) -> int:
    return len(f.rays) - 2


def intersection_numbers(f: Fan) -> list[list[Fraction]]:
    """Matrix of D_i . D_j for the torus-invariant prime divisors."""
    v = f.rays
    k = len(v)
    m = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        prev, cur, nxt = v[i - 1], v[i], v[(i + 1) % k]
        m[i][i] = Fraction(-det(prev, nxt), det(prev, cur) * det(cur, nxt))
        j = (i + 1) % k
        m[i][j] = m[j][i] = Fraction(1, det(cur, nxt))
    return m


def k_squared(f: Fan) -> Fraction:
    """K^2 = (sum of the boundary divisors)^2."""
    return sum((x for row in intersection_numbers(f) for x in row), Fraction(0))


def cone_dual_vertex(v1, v2) -> tuple[Fraction, Fraction]:
    """The m with <m, v1> = <m, v2> = -1."""
    r = det(v1, v2)
    # Cramer: m = (-(v2y - v1y), (v2x - v1x)) / r  up to sign conventions below
    mx = Fraction(-(v2[1] - v1[1]), r)
    my = Fraction(v2[0] - v1[0], r)
    return (mx, my)


def _support_margins(f: Fan):
    """Yield <m_sigma, v_j> + 1 for every cone sigma and ray v_j outside it."""
    k = len(f.rays)
    for i in range(k):
        v1, v2 = f.rays[i], f.rays[(i + 1) % k]
        mx, my = cone_dual_vertex(v1, v2)
        for j in range(k):
            if j != i and j != (i + 1) % k:
                vx, vy = f.rays[j]
                yield mx * vx + my * vy + 1


def is_del_pezzo(f: Fan) -> bool:
    """-K ample: the anticanonical support function is strictly convex."""
    return all(m > 0 for m in _support_margins(f))


def is_anticanonical_nef(f: Fan) -> bool:
    """-K nef (and then automatically big for a complete toric surface)."""
    return all(m >= 0 for m in _support_margins(f))


def anticanonical_polygon(f: Fan) -> list[tuple[Fraction, Fraction]]:
    """Vertices of {m : <m, v_i> >= -1} for nef -K, one per cone."""
    return [cone_dual_vertex(v1, v2) for v1, v2 in f.cones()]


def anticanonical_point_count(f: Fan, n: int = 1) -> int:
    """Number of lattice points m with <m, v_i> >= -n for every ray.

    This is h^0(-nK).  The x-range is taken from the cone vertices, which
    bound the polygon whether or not -K is nef.
    """
    if n < 1:
        raise ValueError("n must be positive")
    xs = [n * vx for vx, _ in anticanonical_polygon(f)]
    # vertices of the true polygon lie among pairwise line intersections;
    # widen with those for non-nef fans
    if not is_anticanonical_nef(f):
        xs = []
        rays = f.rays
        for i in range(len(rays)):
            for j in range(i + 1, len(rays)):
                d = det(rays[i], rays[j])
                if d:
                    xs.append(Fraction(-n * (rays[j][1] - rays[i][1]), d))
    xmin, xmax = ceil(min(xs)), floor(max(xs))
    return kernels.count_polygon_points([tuple(v) for v in f.rays], n, xmin, xmax)


def check_weights(w0: int, w1: int, w2: int) -> None:
    ws = (w0, w1, w2)
    if any(w < 1 for w in ws):
        raise NotWellFormed(f"weights must be positive, got {ws}")
    for i, j in ((0, 1), (0, 2), (1, 2)):
        g = gcd(ws[i], ws[j])
        if g != 1:
            raise NotWellFormed(f"weights {ws} not well-formed: gcd(w{i}, w{j}) = {g}")


def wps_fan(w0: int, w1: int, w2: int) -> Fan:
    """Fan of the weighted projective plane P(w0, w1, w2).

    The rays are the columns of a basis (m1, m2) of the integer vectors
    orthogonal to w, so w0 v0 + w1 v1 + w2 v2 = 0 by construction.
    """
    check_weights(w0, w1, w2)
    g = gcd(w0, w1)
    # s*w0 + t*w1 = g
    old_r, r = w0, w1
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    s, t = old_s, old_t
    m1 = (w1 // g, -w0 // g, 0)
    m2 = (s * w2, t * w2, -g)
    rays = [(m1[i], m2[i]) for i in range(3)]
    assert sum(w * v[0] for w, v in zip((w0, w1, w2), rays)) == 0
    assert sum(w * v[1] for w, v in zip((w0, w1, w2), rays)) == 0
    return fan_from_rays(rays)


def varsigma_toric(f: Fan) -> int:
    """rho + 2 - ||D|| for the reduced invariant boundary D (one per ray)."""
    return picard_rank(f) + 2 - len(f.rays)


def s_count(f: Fan) -> int:
    """Number of singular points where K is not Cartier."""
    return sum(1 for c in singularity_content(f) if c.gorenstein_index > 1)


def noether_defect(rho: int, k2: Fraction, sings) -> Optional[Fraction]:
    """10 - K^2 - rho - sum of Milnor numbers; None unless every point is T."""
    if not all(c.is_t for c in sings):
        return None
    return Fraction(10) - k2 - rho - sum(c.milnor for c in sings)


def fraction_json(x: Optional[Fraction]):
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator}


class ToricSurface:
    """A fan together with its cached invariants."""

    def __init__(self, fan: Fan):
        self.fan = fan

    @cached_property
    def singularities(self) -> tuple:
        return singularity_content(self.fan)

    @cached_property
    def rho(self) -> int:
        return picard_rank(self.fan)

    @cached_property
    def k2(self) -> Fraction:
        return k_squared(self.fan)

    @cached_property
    def del_pezzo(self) -> bool:
        return is_del_pezzo(self.fan)

    @property
    def s(self) -> int:
        return sum(1 for c in self.singularities if c.gorenstein_index > 1)

    @property
    def all_t(self) -> bool:
        return all(c.is_t for c in self.singularities)

    @property
    def noether_defect(self) -> Optional[Fraction]:
        return noether_defect(self.rho, self.k2, self.singularities)

    def report(self) -> dict:
        return {
            "rays": [[v.x, v.y] for v in self.fan.rays],
            "singularities": [c.to_json() for c in self.singularities],
            "rho": self.rho,
            "k2": fraction_json(self.k2),
            "del_pezzo": self.del_pezzo,
            "s": self.s,
            "noether_defect": fraction_json(self.noether_defect),
        }
