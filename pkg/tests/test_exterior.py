"""Exterior algebra unit tests: products, Hodge star, inner products."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilherm.exterior import (
    DROP_TOL,
    OMEGA0,
    VOLUME,
    Multivector,
    basis_masks,
    e,
    evaluate,
    inner,
    star,
    volume_form,
    wedge,
    wedge_tensor,
)

RNG = np.random.default_rng(12345)

PI0 = -e(1, 5) + e(2, 6) + e(3, 4)


def random_form(k, rng=RNG, complex_coeffs=False):
    masks = basis_masks(k)
    coeffs = rng.normal(size=len(masks))
    if complex_coeffs:
        coeffs = coeffs + 1j * rng.normal(size=len(masks))
    return Multivector(dict(zip(masks, coeffs.tolist())))


# ---------------------------------------------------------------------------
# wedge


def test_wedge_basis_products():
    assert e(1) ^ e(2) == e(1, 2)
    assert e(2) ^ e(1) == -e(1, 2)
    assert (e(1) ^ e(1)).is_zero
    assert e(4, 2) == -e(2, 4)


def test_wedge_square_of_two_form():
    a = e(1, 2) + e(3, 4)
    assert a ^ a == 2 * e(1, 2, 3, 4)


def test_omega0_cubed():
    w3 = OMEGA0 ^ OMEGA0 ^ OMEGA0
    assert w3 == 6 * VOLUME


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (2, 3), (1, 4), (3, 3)])
def test_graded_anticommutativity(p, q):
    for _ in range(5):
        a = random_form(p, complex_coeffs=True)
        b = random_form(q, complex_coeffs=True)
        lhs = a ^ b
        rhs = (b ^ a) * ((-1) ** (p * q))
        assert lhs.isclose(rhs, 1e-12)


def test_wedge_associative_random():
    for _ in range(5):
        a, b, c = random_form(1), random_form(2), random_form(2)
        assert ((a ^ b) ^ c).isclose(a ^ (b ^ c), 1e-12)


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
@settings(max_examples=40, deadline=None)
def test_wedge_bilinear_exact(x, y, z):
    a = x * e(1, 2) + y * e(3, 4)
    b = z * e(5, 6) + e(1, 3)
    c = e(2, 4)
    assert (a + b) ^ c == (a ^ c) + (b ^ c)


# ---------------------------------------------------------------------------
# star


def oracle_star_two_form(w):
    """Solve sigma ^ X = inner(sigma, w) * vol for X over the degree-2 basis.

    Independent of the star implementation: only wedge and the orthonormal
    monomial inner product are used.
    """
    masks2 = basis_masks(2)
    masks4 = basis_masks(4)
    A = np.zeros((len(masks2), len(masks4)))
    rhs = np.zeros(len(masks2))
    for r, ms in enumerate(masks2):
        sigma = Multivector.basis(ms)
        for c, mx in enumerate(masks4):
            prod = sigma ^ Multivector.basis(mx)
            A[r, c] = float(complex(prod.coeff(1, 2, 3, 4, 5, 6)).real)
        rhs[r] = float(complex(inner(sigma, w)).real)
    x = np.linalg.solve(A, rhs)
    return Multivector(dict(zip(masks4, x.tolist())))


def test_star_basis_examples():
    assert star(e(1, 2)) == e(3, 4, 5, 6)
    assert star(VOLUME) == Multivector.scalar(1)
    assert star(Multivector.scalar(1)) == VOLUME


def test_star_omega0_against_oracle():
    expected = oracle_star_two_form(OMEGA0)
    assert star(OMEGA0).isclose(expected, 1e-12)
    # frozen value: half of omega0 wedge omega0
    assert star(OMEGA0) == e(1, 2, 3, 4) + e(1, 2, 5, 6) + e(3, 4, 5, 6)
    assert (OMEGA0 ^ OMEGA0) == 2 * star(OMEGA0)


def test_star_random_two_forms_against_oracle():
    for _ in range(5):
        w = random_form(2)
        assert star(w).isclose(oracle_star_two_form(w), 1e-10)


def test_star_star_sign():
    for k in range(7):
        sgn = (-1) ** (k * (6 - k))
        for m in basis_masks(k):
            a = Multivector.basis(m)
            assert star(star(a)) == sgn * a


def test_defining_identity_full_two_form_basis():
    for ms in basis_masks(2):
        for mt in basis_masks(2):
            s, t = Multivector.basis(ms), Multivector.basis(mt)
            lhs = s ^ star(t)
            rhs = inner(s, t) * VOLUME
            assert (lhs - rhs).norm() == 0


def test_conjugation_commutes_with_wedge_and_star():
    for _ in range(5):
        a = random_form(2, complex_coeffs=True)
        b = random_form(1, complex_coeffs=True)
        assert (a ^ b).conjugate().isclose(a.conjugate() ^ b.conjugate(), 1e-12)
        assert star(a).conjugate().isclose(star(a.conjugate()), 1e-12)


# ---------------------------------------------------------------------------
# inner product


def test_inner_examples():
    assert inner(e(1, 2), e(1, 2)) == 1
    assert inner(OMEGA0, OMEGA0) == 3
    assert inner(PI0, e(5, 6)) == 0


def test_inner_positive_definite():
    for _ in range(5):
        a = random_form(3, complex_coeffs=True)
        v = complex(inner(a, a))
        assert v.real > 0 and abs(v.imag) < 1e-12
        assert abs(v.real - a.norm() ** 2) < 1e-10


def test_inner_hermitian_symmetry():
    a = random_form(2, complex_coeffs=True)
    b = random_form(2, complex_coeffs=True)
    assert abs(complex(inner(a, b)) - complex(inner(b, a)).conjugate()) < 1e-12


def test_inner_degree_mismatch_is_zero():
    assert inner(e(1), e(1, 2)) == 0


# ---------------------------------------------------------------------------
# grading and canonicalization


def test_grade_projection():
    a = Multivector.scalar(1) + e(1, 2)
    assert a.grade(2) == e(1, 2)
    assert a.grade(1).is_zero
    assert e(1, 2).grade(1).is_zero


def test_grade_sum_recovers():
    a = random_form(1) + random_form(3) + random_form(5)
    total = Multivector.zero()
    for k in range(7):
        total = total + a.grade(k)
    assert total.isclose(a, 0)


def test_grade_linear():
    a, b = random_form(2), random_form(2)
    assert ((a + b).grade(2) - a.grade(2) - b.grade(2)).norm() < 1e-14


def test_canonicalization_drops_tiny_floats():
    a = Multivector({0b11: 1e-20})
    assert a.is_zero
    b = e(1, 2) - e(1, 2)
    assert b.is_zero


def test_exact_scalars_survive():
    tiny = Fraction(1, 10**30)
    a = Multivector({0b11: tiny})
    assert not a.is_zero
    assert a.coeff(1, 2) == tiny
    b = Multivector({0b11: Fraction(1, 3)}) ^ Multivector({0b1100: Fraction(3, 1)})
    assert b.coeff(1, 2, 3, 4) == 1


# ---------------------------------------------------------------------------
# gram-metric variants


def test_star_rejects_bad_gram():
    with pytest.raises(ValueError):
        star(e(1, 2), gram=-np.eye(6))
    with pytest.raises(ValueError):
        inner(e(1), e(1), gram=np.ones((6, 6)))


def test_gram_diagonal_inner():
    # metric 1/4 * e1 x e1 + ... makes e1 a length-2 coframe element
    g = np.diag([0.25, 0.25, 1, 1, 1, 1])
    assert abs(complex(inner(e(1), e(1), gram=g)) - 4.0) < 1e-12
    assert abs(complex(inner(e(1, 3), e(1, 3), gram=g)) - 4.0) < 1e-12
    assert abs(complex(inner(e(5, 6), e(5, 6), gram=g)) - 1.0) < 1e-12


def test_gram_defining_identity_random():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(6, 6))
    g = m @ m.T + 6 * np.eye(6)
    vol = volume_form(g)
    for _ in range(4):
        s = random_form(2, rng)
        t = random_form(2, rng)
        lhs = s ^ star(t, gram=g)
        rhs = complex(inner(s, t, gram=g)).real * vol
        assert lhs.isclose(rhs, 1e-9)


def test_volume_form_scaling():
    g = np.diag([0.25, 0.25, 1, 1, 1, 1])
    assert volume_form(g).isclose(0.25 * VOLUME, 1e-12)


# ---------------------------------------------------------------------------
# evaluation and wedge tensor


def test_evaluate_determinant_convention():
    assert evaluate(e(1, 2), (1, 2)) == 1
    assert evaluate(e(1, 2), (2, 1)) == -1
    assert evaluate(e(1, 2), (1, 3)) == 0
    assert evaluate(e(1, 3, 5), (5, 3, 1)) == -1


def test_wedge_tensor_matches_multivector_product():
    t = wedge_tensor(2, 1)
    a = random_form(2, complex_coeffs=True)
    b = random_form(1, complex_coeffs=True)
    via_tensor = np.einsum(
        "i,j,ijk->k", a.coeff_vector(2), b.coeff_vector(1), t
    )
    assert np.allclose(via_tensor, (a ^ b).coeff_vector(3), atol=1e-12)
