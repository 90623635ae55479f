"""Moduli space: coordinates, rotation parametrization, loci, samplers."""

import numpy as np
import pytest

from nilherm.catalog import load
from nilherm.errors import InvalidInputError, NotInModuliError
from nilherm.exterior import Multivector, e, inner
from nilherm.hermitian import J_from_omega, omega_from_J
from nilherm.moduli import (
    PI_VERTEX_FORMS,
    VERTEX_FORMS,
    Cp3Point,
    SO4Element,
    SphereS,
    cp3_from_J,
    from_cp3,
    omega_from_cp3,
    omega_pab,
    parse_locus,
    sample_circle,
    sample_cp3,
    sample_so4,
    so4_blocks,
    two_form_from_spec,
)

RNG = np.random.default_rng(100)


# ---------------------------------------------------------------------------
# coordinates <-> structures


def test_vertices_from_coordinates():
    for i in range(4):
        u = np.zeros(4)
        u[i] = 1.0
        assert omega_from_cp3(u).isclose(VERTEX_FORMS[i], 1e-12), i


def test_J0_coordinates():
    j = J_from_omega(VERTEX_FORMS[0])
    u = cp3_from_J(j)
    assert u.isclose(Cp3Point([1, 0, 0, 0]), 1e-9)


def test_wrong_orientation_rejected():
    j0 = J_from_omega(VERTEX_FORMS[0])
    minus = J_from_omega(-VERTEX_FORMS[0])
    assert not minus.is_positively_oriented
    with pytest.raises(NotInModuliError):
        cp3_from_J(minus)
    assert j0.is_positively_oriented


def test_roundtrip_coordinates():
    rng = np.random.default_rng(1)
    for _ in range(200):
        u = sample_cp3(rng)
        j = from_cp3(u)
        assert cp3_from_J(j).isclose(u, 1e-8)


def test_from_cp3_always_positively_oriented():
    rng = np.random.default_rng(2)
    vol = e(1, 2, 3, 4, 5, 6)
    for _ in range(200):
        w = omega_from_cp3(sample_cp3(rng))
        assert ((w ^ w ^ w) - 6 * vol).norm() < 1e-8


# ---------------------------------------------------------------------------
# rotation-angle parametrization


def test_omega_pab_special_values():
    ident = SO4Element(np.eye(4))
    assert omega_pab(ident, 1, 0) == VERTEX_FORMS[0]
    assert omega_pab(ident, -1, 0) == VERTEX_FORMS[2]
    assert omega_pab(ident, 0, 1) == -e(1, 5) + e(2, 6) + e(3, 4)
    assert omega_pab(ident, 0, -1) == e(1, 5) - e(2, 6) + e(3, 4)


def test_omega_pab_rejects_off_circle():
    with pytest.raises(InvalidInputError):
        omega_pab(SO4Element(np.eye(4)), 0.5, 0.5)


def test_omega_pab_kernel_of_action():
    rng = np.random.default_rng(3)
    for _ in range(25):
        P = sample_so4(rng)
        a, b = sample_circle(rng)
        w1 = omega_pab(P, a, b)
        w2 = omega_pab(SO4Element(-P.matrix), a, -b)
        assert w1.isclose(w2, 1e-12)


def test_omega_pab_always_valid():
    rng = np.random.default_rng(4)
    vol = e(1, 2, 3, 4, 5, 6)
    for _ in range(1000):
        w = omega_pab(sample_so4(rng), *sample_circle(rng))
        assert ((w ^ w ^ w) - 6 * vol).norm() < 1e-9
        assert abs(complex(inner(w, w)).real - 3) < 1e-9
        J_from_omega(w)  # does not raise


def test_b_zero_exceptional_orbits():
    rng = np.random.default_rng(5)
    e03 = parse_locus("edge:0,3")
    e12 = parse_locus("edge:1,2")
    for _ in range(25):
        P = sample_so4(rng)
        assert e03.contains(omega_pab(P, 1, 0), 1e-9)
        assert e12.contains(omega_pab(P, -1, 0), 1e-9)


def test_wire_meets_both_edges():
    rng = np.random.default_rng(6)
    e03 = parse_locus("edge:0,3")
    e12 = parse_locus("edge:1,2")
    for _ in range(10):
        P = sample_so4(rng)
        assert e03.contains(omega_pab(P, 1, 0))
        assert e12.contains(omega_pab(P, -1, 0))
        mid = omega_pab(P, 0.6, 0.8)
        assert not e03.contains(mid) and not e12.contains(mid)


# ---------------------------------------------------------------------------
# rotation blocks


def test_blocks_identity():
    p, m = so4_blocks(SO4Element(np.eye(4)))
    assert np.allclose(p, np.eye(3)) and np.allclose(m, np.eye(3))


def test_blocks_are_rotations():
    rng = np.random.default_rng(7)
    for _ in range(100):
        P = sample_so4(rng)
        bp, bm = so4_blocks(P)
        for b in (bp, bm):
            assert np.linalg.norm(b.T @ b - np.eye(3)) < 1e-10
            assert abs(np.linalg.det(b) - 1) < 1e-10
        bp2, bm2 = so4_blocks(SO4Element(-P.matrix))
        assert np.allclose(bp, bp2) and np.allclose(bm, bm2)


def test_block_fixing_first_axis():
    th = 0.77
    c, s = np.cos(th), np.sin(th)
    r12 = np.eye(4)
    r12[:2, :2] = [[c, -s], [s, c]]
    r34 = np.eye(4)
    r34[2:, 2:] = [[c, -s], [s, c]]
    P = SO4Element(r12 @ r34)
    bp, _ = so4_blocks(P)
    assert np.allclose(bp @ np.array([1, 0, 0]), [1, 0, 0], atol=1e-12)
    assert P.apply(e(1, 2) + e(3, 4)).isclose(e(1, 2) + e(3, 4), 1e-12)


# ---------------------------------------------------------------------------
# samplers


def test_cp3_sampler_uniformity():
    rng = np.random.default_rng(8)
    total = 0.0
    n = 30000
    for _ in range(n):
        total += abs(sample_cp3(rng).u[0]) ** 2
    assert abs(total / n - 0.25) < 0.01


def test_so4_sampler_orthogonality():
    rng = np.random.default_rng(9)
    for _ in range(200):
        P = sample_so4(rng)
        assert np.linalg.norm(P.matrix.T @ P.matrix - np.eye(4)) < 1e-12
        assert abs(np.linalg.det(P.matrix) - 1) < 1e-12


# ---------------------------------------------------------------------------
# loci


def test_pi_vertices_match_rotated_values():
    expected = (
        -e(1, 5) + e(2, 6) + e(3, 4),
        -e(1, 5) - e(2, 6) - e(3, 4),
        e(1, 5) - e(2, 6) + e(3, 4),
        e(1, 5) + e(2, 6) - e(3, 4),
    )
    for got, want in zip(PI_VERTEX_FORMS, expected):
        assert got == want
    # each is a valid moduli point
    for w in PI_VERTEX_FORMS:
        J_from_omega(w)


def test_all_locus_samplers_pass_membership():
    rng = np.random.default_rng(10)
    specs = [
        "vertex:w0",
        "vertex:w2",
        "pivertex:1",
        "edge:0,3",
        "edge:1,2",
        "edge:0,2",
        "face:0",
        "face:3",
        "equator:0,3",
        "equator:0,2",
        "equator:1,3",
        "gen-edge:+56",
        "gen-edge:-15",
        "gen-edge:26",
        "polar:13+42",
        "polar:56",
        "sphere:S",
        "circle:CS",
        "circle:CS'",
        "cp3:uniform",
    ]
    for spec in specs:
        locus = parse_locus(spec)
        for _ in range(12):
            w = locus.sample(rng)
            assert locus.contains(w, 1e-10), spec
            J_from_omega(w)  # every sample is a valid point


def test_vertex_face_combinatorics():
    for i in range(4):
        for j in range(4):
            face = parse_locus(f"face:{j}")
            assert face.contains(VERTEX_FORMS[i], 1e-9) == (i != j)


def test_edge_is_projective_line():
    """Edge samples drawn through coordinates satisfy the sigma-sphere
    description, and sphere-description points lie on the coordinate line."""
    rng = np.random.default_rng(11)
    edge = parse_locus("edge:0,3")
    for _ in range(20):
        w = edge.geometry.sample(rng)  # sphere route
        u = cp3_from_J(J_from_omega(w)).u
        assert abs(u[1]) < 1e-8 and abs(u[2]) < 1e-8
    for _ in range(20):
        w = edge.sample(rng)  # coordinate route
        assert edge.geometry.contains(w, 1e-9)


def test_equator_contains_eth_family():
    eq03 = parse_locus("equator:0,3")
    e03 = parse_locus("edge:0,3")
    for th in np.linspace(0, 2 * np.pi, 17):
        w = e(5, 6) + np.cos(th) * (e(1, 3) + e(4, 2)) + np.sin(th) * (e(1, 4) + e(2, 3))
        assert e03.contains(w, 1e-10)
        assert eq03.contains(w, 1e-10)
    # vertices are on the edge but not the equator
    assert not eq03.contains(VERTEX_FORMS[0], 1e-8)


def test_pi0_in_polar_and_equator():
    pi0 = -e(1, 5) + e(2, 6) + e(3, 4)
    assert parse_locus("polar:56").contains(pi0, 1e-12)
    assert parse_locus("equator:0,2").contains(pi0, 1e-10)
    # and the pi-vertices sit on the stated equators
    assert parse_locus("equator:1,3").contains(PI_VERTEX_FORMS[1], 1e-10)
    assert parse_locus("equator:0,2").contains(PI_VERTEX_FORMS[2], 1e-10)


def test_sphere_samples_are_closed_on_heisenberg():
    alg = load("iwasawa").algebra
    rng = np.random.default_rng(12)
    s = parse_locus("sphere:S")
    for _ in range(50):
        w = s.sample(rng)
        assert alg.d(w).norm() < 1e-12


def test_sphere_contains_pi0():
    assert parse_locus("sphere:S").contains(-e(1, 5) + e(2, 6) + e(3, 4), 1e-10)


def test_sphere_hopf_projection_covers_sphere():
    """Opposite-pole projections of samples cover the whole 2-sphere."""
    rng = np.random.default_rng(13)
    s = SphereS()
    pts = np.array([s.minus_pole(s.sample(rng)) for _ in range(4000)])
    assert np.all(np.abs(np.linalg.norm(pts, axis=1) - 1) < 1e-8)
    # fibonacci grid of directions; every cell must be visited within 0.2
    n = 400
    k = np.arange(n) + 0.5
    phi = np.arccos(1 - 2 * k / n)
    theta = np.pi * (1 + 5**0.5) * k
    grid = np.column_stack(
        [np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta), np.cos(phi)]
    )
    d2 = np.linalg.norm(grid[:, None, :] - pts[None, :, :], axis=2).min(axis=1)
    assert d2.max() < 0.2


def test_minus_pole_lands_on_edge12():
    rng = np.random.default_rng(14)
    s = SphereS()
    e12 = parse_locus("edge:1,2")
    for _ in range(20):
        w = s.sample(rng)
        coords = s.minus_pole(w)
        asd = (e(1, 2) - e(3, 4), e(1, 3) - e(4, 2), e(1, 4) - e(2, 3))
        p_minus = -e(5, 6)
        for c, b in zip(coords, asd):
            p_minus = p_minus + float(c) * b
        assert e12.contains(p_minus, 1e-9)


def test_cs_circle_values():
    cs = parse_locus("circle:CS")
    w = cs.point(0.0)  # A=1, B=0
    assert w == -e(3, 5) + e(1, 6) + e(2, 4)
    alg = load("g2").algebra
    assert alg.d(w).norm() < 1e-12


def test_polar_set_samples_on_random_two_form():
    rng = np.random.default_rng(15)
    sigma = two_form_from_spec("12-34")
    polar = parse_locus("polar:12-34")
    for _ in range(10):
        w = polar.sample(rng)
        assert abs(complex(inner(w, sigma))) < 1e-10


# ---------------------------------------------------------------------------
# parsing


def test_parse_rejects_unknown():
    for bad in ("blob:1", "edge:0", "edge:0,0", "vertex:w9", "gen-edge:1",
                "polar:", "circle:X", "cp3:grid"):
        with pytest.raises(InvalidInputError):
            parse_locus(bad)


def test_two_form_spec_parsing():
    assert two_form_from_spec("13+42") == e(1, 3) + e(4, 2)
    assert two_form_from_spec("-15") == -e(1, 5)
    assert two_form_from_spec("56") == e(5, 6)
    with pytest.raises(InvalidInputError):
        two_form_from_spec("13+")
