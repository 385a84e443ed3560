from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from tdelpezzo.errors import InvalidFan, NotWellFormed
from tdelpezzo.quotsing import SingularityClass, hj_expansion, normalize
from tdelpezzo.toric import (
    ToricSurface,
    anticanonical_point_count,
    boundary_resolution,
    cone_singularity,
    det,
    fan_from_rays,
    intersection_numbers,
    is_anticanonical_nef,
    is_del_pezzo,
    k_squared,
    parse_rays,
    picard_rank,
    s_count,
    singularity_content,
    varsigma_toric,
    wps_fan,
)

P2 = [(1, 0), (0, 1), (-1, -1)]
HIRZEBRUCH_2 = [(1, 0), (0, 1), (-1, 2), (0, -1)]
SL2 = [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 3), (1, 2)), ((1, 0), (-4, 1))]


def brute_count(rays, n):
    """Lattice points with <m, v> >= -n, by scanning a generous box."""
    box = 40 * n
    return sum(
        1
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if all(x * vx + y * vy >= -n for vx, vy in rays)
    )


def cls(r, a):
    return SingularityClass.cyclic(r, a)


# ---- fans --------------------------------------------------------------


def test_projective_plane_fan():
    f = fan_from_rays(P2)
    assert len(f) == 3
    assert picard_rank(f) == 1
    assert singularity_content(f) == ()


def test_weighted_fan_from_rays():
    f = fan_from_rays([(1, 0), (0, 1), (-1, -2)])
    assert singularity_content(f) == singularity_content(wps_fan(1, 1, 2))
    assert k_squared(f) == k_squared(wps_fan(1, 1, 2))


@pytest.mark.parametrize(
    "rays",
    [
        [(1, 0), (0, 1), (2, 1)],  # half-plane
        [(1, 0), (0, 1)],  # too few
        [(2, 0), (0, 1), (-1, -1)],  # non-primitive
        [(1, 0), (1, 0), (0, 1), (-1, -1)],  # duplicate
        [(1, 0), (0, 1), (-1, 0)],  # flat cone
    ],
)
def test_fan_errors(rays):
    with pytest.raises(InvalidFan):
        fan_from_rays(rays)


def test_rays_sorted_counterclockwise():
    f = fan_from_rays([(-1, -1), (0, 1), (1, 0)])
    assert [tuple(v) for v in f.rays] == P2
    for u, w in f.cones():
        assert det(u, w) > 0


def test_parse_rays():
    assert parse_rays("1,0;0,1;-1,-1") == fan_from_rays(P2)
    with pytest.raises(InvalidFan):
        parse_rays("1,0;0;1")


# ---- cones -------------------------------------------------------------


def test_cone_examples():
    assert cone_singularity((1, 0), (0, 1)).is_smooth
    assert cone_singularity((1, 0), (1, 2)) == normalize(2, 1)
    assert boundary_resolution((1, 0), (1, 2)) == [2]
    # clockwise pair; oracle chain [5] fixes the weight
    assert boundary_resolution((0, 1), (5, -1)) == [5]
    assert cone_singularity((0, 1), (5, -1)) == normalize(5, 1)


def test_cone_rejects_degenerate():
    with pytest.raises(InvalidFan):
        cone_singularity((1, 0), (-1, 0))


prim = st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(lambda v: gcd(*v) == 1)


@given(prim, prim)
def test_cone_matches_boundary_oracle(u, w):
    if det(u, w) == 0:
        return
    g = cone_singularity(u, w)
    assert g.r == abs(det(u, w))
    chain = boundary_resolution(u, w)
    assert chain in (hj_expansion(g), hj_expansion(g)[::-1])


@given(prim, prim, st.sampled_from(SL2))
def test_cone_unimodular_invariance(u, w, m):
    if det(u, w) == 0:
        return
    (a, b), (c, d) = m
    tu = (a * u[0] + b * u[1], c * u[0] + d * u[1])
    tw = (a * w[0] + b * w[1], c * w[0] + d * w[1])
    assert cone_singularity(tu, tw) == cone_singularity(u, w)


# ---- content, intersections, K^2 --------------------------------------


def test_content_examples():
    assert singularity_content(wps_fan(1, 1, 2)) == (cls(2, 1),)
    assert singularity_content(wps_fan(1, 4, 5)) == tuple(
        sorted([cls(4, 1), cls(5, 4)], key=SingularityClass.sort_key)
    )


def test_intersections_projective_plane():
    m = intersection_numbers(fan_from_rays(P2))
    assert all(x == 1 for row in m for x in row)


def test_intersections_hirzebruch():
    f = fan_from_rays(HIRZEBRUCH_2)
    m = intersection_numbers(f)
    idx = {tuple(v): i for i, v in enumerate(f.rays)}
    assert m[idx[(0, 1)]][idx[(0, 1)]] == -2
    assert m[idx[(0, -1)]][idx[(0, -1)]] == 2


@pytest.mark.parametrize("rays", [P2, HIRZEBRUCH_2, [(1, 0), (1, 2), (-1, 0), (-1, -2)], [(1, 0), (3, 5), (-2, -1), (1, -3)]])
def test_linear_relations_vanish(rays):
    f = fan_from_rays(rays)
    m = intersection_numbers(f)
    for coord in (0, 1):
        for j in range(len(f.rays)):
            assert sum(f.rays[i][coord] * m[i][j] for i in range(len(f.rays))) == 0


def test_k_squared_examples():
    assert k_squared(fan_from_rays(P2)) == 9
    assert k_squared(wps_fan(1, 1, 2)) == 8
    assert k_squared(wps_fan(1, 4, 5)) == 5
    assert k_squared(wps_fan(1, 9, 20)) == 5


weights = st.tuples(st.integers(1, 60), st.integers(1, 60), st.integers(1, 60)).filter(
    lambda w: gcd(w[0], w[1]) == gcd(w[0], w[2]) == gcd(w[1], w[2]) == 1
)


@given(weights)
def test_wps_k_squared_formula(w):
    f = wps_fan(*w)
    assert k_squared(f) == Fraction(sum(w) ** 2, w[0] * w[1] * w[2])


@given(weights)
def test_wps_content_matches_weights(w):
    f = wps_fan(*w)
    expected = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        if w[i] > 1:
            # 1/w_i(w_j, w_k) = 1/w_i(1, w_k / w_j)
            expected.append(cls(w[i], w[k] * pow(w[j], -1, w[i])))
    assert singularity_content(f) == tuple(sorted(expected, key=SingularityClass.sort_key))


def test_wps_examples():
    assert k_squared(wps_fan(1, 1, 1)) == 9 and singularity_content(wps_fan(1, 1, 1)) == ()
    content = singularity_content(wps_fan(1, 9, 20))
    assert content == (cls(9, 2), cls(20, 9))


@pytest.mark.parametrize("w", [(2, 4, 1), (3, 3, 1), (6, 10, 15), (0, 1, 1)])
def test_wps_rejects_non_well_formed(w):
    with pytest.raises(NotWellFormed):
        wps_fan(*w)


# ---- del Pezzo, sections ----------------------------------------------


def test_del_pezzo_examples():
    assert is_del_pezzo(fan_from_rays(P2))
    assert is_del_pezzo(wps_fan(1, 4, 5))
    h = fan_from_rays(HIRZEBRUCH_2)
    assert not is_del_pezzo(h)
    assert is_anticanonical_nef(h)
    assert not is_anticanonical_nef(fan_from_rays([(1, 0), (0, 1), (-1, 3), (0, -1)]))


@pytest.mark.parametrize(
    "fan,n,expected",
    [
        (fan_from_rays(P2), 1, 10),
        (wps_fan(1, 1, 2), 1, 9),
        (wps_fan(1, 4, 5), 2, 16),
        (fan_from_rays(HIRZEBRUCH_2), 1, 9),
    ],
)
def test_point_count_examples(fan, n, expected, backend):
    assert anticanonical_point_count(fan, n) == expected
    assert brute_count(fan.rays, n) == expected


@settings(max_examples=40, deadline=None)
@given(
    st.lists(prim, min_size=3, max_size=6, unique=True),
    st.integers(1, 3),
)
def test_point_count_matches_brute_force(rays, n):
    try:
        f = fan_from_rays(rays)
    except InvalidFan:
        return
    if max(abs(c) for v in f.rays for c in v) > 30:
        return
    assert anticanonical_point_count(f, n) == brute_count(f.rays, n)


def test_point_count_non_t_breaks_formula():
    # 1/3(1,1) is not T; h^0(-K) is not 1/2*2*K^2 + 1 = 28/3
    f = wps_fan(1, 1, 3)
    assert k_squared(f) == Fraction(25, 3)
    assert anticanonical_point_count(f, 1) != Fraction(25, 3) + 1


# ---- varsigma, s -------------------------------------------------------


def test_varsigma_zero():
    assert varsigma_toric(fan_from_rays(P2)) == 0
    assert varsigma_toric(fan_from_rays([(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)])) == 0
    assert varsigma_toric(wps_fan(1, 4, 5)) == 0


def test_s_count_examples():
    assert s_count(wps_fan(1, 1, 2)) == 0
    assert s_count(wps_fan(1, 4, 5)) == 1
    assert s_count(wps_fan(1, 9, 20)) == 2


def test_surface_report_schema():
    rep = ToricSurface(wps_fan(1, 4, 5)).report()
    assert set(rep) == {"rays", "singularities", "rho", "k2", "del_pezzo", "s", "noether_defect"}
    assert rep["k2"] == {"num": 5, "den": 1}
    assert rep["noether_defect"] == {"num": 0, "den": 1}
    assert rep["singularities"] == [{"r": 4, "a": 1}, {"r": 5, "a": 4}]
    assert ToricSurface(wps_fan(1, 1, 3)).report()["noether_defect"] is None


@settings(deadline=None)
@given(weights, st.sampled_from(SL2))
def test_unimodular_invariance(w, m):
    f = wps_fan(*w)
    g = f.transform(m)
    a, b = ToricSurface(f), ToricSurface(g)
    assert a.singularities == b.singularities
    assert a.k2 == b.k2 and a.rho == b.rho and a.del_pezzo == b.del_pezzo
