"""Lie algebra layer: differential, cohomology, nilpotency, conjugation."""

import json
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from nilherm.catalog import load
from nilherm.errors import InvalidInputError
from nilherm.exterior import Multivector, basis_masks, e
from nilherm.liealg import LieAlgebra

PI0 = -e(1, 5) + e(2, 6) + e(3, 4)


@pytest.fixture(scope="module")
def iwasawa():
    return load("iwasawa").algebra


@pytest.fixture(scope="module")
def g2():
    return load("g2").algebra


@pytest.fixture(scope="module")
def g3():
    return load("g3").algebra


@pytest.fixture(scope="module")
def abelian():
    return load("abelian").algebra


ALL_NAMES = ["abelian", "iwasawa", "g2", "g3"]


# ---------------------------------------------------------------------------
# the differential


def test_structure_equations(iwasawa, g2, g3):
    assert iwasawa.d(e(5)) == e(1, 3) + e(4, 2)
    assert iwasawa.d(e(6)) == e(1, 4) + e(2, 3)
    assert g2.d(e(5)) == e(1, 2)
    assert g2.d(e(6)) == e(1, 4) + e(2, 3)
    assert g3.d(e(6)) == e(1, 5) + e(3, 4)
    for i in range(1, 5):
        assert iwasawa.d(e(i)).is_zero


def test_d_of_pi0_closed(iwasawa):
    assert iwasawa.d(PI0).is_zero


def test_d_squared_zero_exact():
    for name in ALL_NAMES:
        alg = load(name).algebra
        for k in range(7):
            for m in basis_masks(k):
                dd = alg.d(alg.d(Multivector.basis(m)))
                assert dd.is_zero, (name, m)


def test_leibniz_rule(iwasawa):
    rng = np.random.default_rng(3)
    for p in (1, 2, 3):
        a = Multivector(dict(zip(basis_masks(p), rng.normal(size=len(basis_masks(p))))))
        b = Multivector(dict(zip(basis_masks(2), rng.normal(size=15))))
        lhs = iwasawa.d(a ^ b)
        rhs = (iwasawa.d(a) ^ b) + ((-1) ** p) * (a ^ iwasawa.d(b))
        assert lhs.isclose(rhs, 1e-12)


def test_d_of_five_forms_vanishes():
    for name in ALL_NAMES:
        alg = load(name).algebra
        for m in basis_masks(5):
            assert alg.d(Multivector.basis(m)).is_zero, name


def test_rejects_non_differential():
    # d(d e^5) = d(e^{36}) = -e^3 ^ e^{45} != 0
    bad = [Multivector.zero()] * 4 + [e(3, 6), e(4, 5)]
    with pytest.raises(InvalidInputError):
        LieAlgebra("bad", bad)


# ---------------------------------------------------------------------------
# cohomology


def brute_force_rank(alg, k):
    """Independent rank of d on degree k via numpy SVD."""
    cols = []
    for m in basis_masks(k):
        cols.append(alg.d(Multivector.basis(m)).coeff_vector(k + 1).real)
    mat = np.array(cols).T
    return int(np.linalg.matrix_rank(mat, tol=1e-10))


def test_abelian_betti(abelian):
    assert abelian.cohomology().betti == (1, 6, 15, 20, 15, 6, 1)


def test_iwasawa_betti(iwasawa):
    prof = iwasawa.cohomology()
    assert prof.betti[1] == 4
    # derived via brute-force ranks on degrees 1..3
    r1, r2 = brute_force_rank(iwasawa, 1), brute_force_rank(iwasawa, 2)
    assert prof.betti[2] == 15 - r2 - r1 == 8


def test_b1_is_four_for_all_nilpotent_entries():
    for name in ("iwasawa", "g2", "g3"):
        assert load(name).algebra.cohomology().betti[1] == 4


def test_betti_consistency():
    for name in ALL_NAMES:
        prof = load(name).algebra.cohomology()
        assert prof.betti[0] == prof.betti[6] == 1
        assert sum((-1) ** k * b for k, b in enumerate(prof.betti)) == 0
        # image dimension complements b1
        assert len(prof.image_basis) == 6 - prof.betti[1]
        assert len(prof.kernel_basis) == prof.betti[1]


def test_cohomology_bases(iwasawa):
    prof = iwasawa.cohomology()
    for kv in prof.kernel_basis:
        assert iwasawa.d(kv).is_zero
    # image basis spans {d e^i}
    span = np.array([b.coeff_vector(2).real for b in prof.image_basis])
    for i in range(1, 7):
        img = iwasawa.d(e(i)).coeff_vector(2).real
        coef, *_ = np.linalg.lstsq(span.T, img, rcond=None)
        assert np.linalg.norm(span.T @ coef - img) < 1e-10


# ---------------------------------------------------------------------------
# nilpotency


def test_nilpotency_steps():
    expected = {"abelian": 1, "iwasawa": 2, "g2": 2, "g3": 3}
    for name, step in expected.items():
        assert load(name).algebra.nilpotency_step() == step


def test_not_nilpotent_detected():
    # d e^2 = e^{12} is the dual of a solvable, non-nilpotent algebra
    dg = [Multivector.zero()] * 6
    dg[1] = e(1, 2)
    alg = LieAlgebra("solvable", dg)
    assert alg.nilpotency_step() is None
    assert not alg.is_nilpotent


# ---------------------------------------------------------------------------
# conjugated differential


def so4_sample(rng):
    from nilherm.moduli import sample_so4

    return sample_so4(rng)


def test_conjugated_d_identity(iwasawa):
    rng = np.random.default_rng(0)
    for k in (2, 5):
        a = Multivector(dict(zip(basis_masks(k), np.random.default_rng(1).normal(size=len(basis_masks(k)))))
        )
        assert iwasawa.conjugated_d(np.eye(4), a).isclose(iwasawa.d(a), 1e-12)


def test_conjugated_d_iwasawa_self_dual_coefficients(iwasawa):
    """d^P e^5 has self-dual coordinates given by the second row of P_plus."""
    from nilherm.moduli import SO4Element, sample_so4, so4_blocks

    rng = np.random.default_rng(42)
    sd_basis = [e(1, 2) + e(3, 4), e(1, 3) + e(4, 2), e(1, 4) + e(2, 3)]
    for _ in range(10):
        P = sample_so4(rng)
        pp, _ = so4_blocks(P)
        img = iwasawa.conjugated_d(P, e(5))
        coords = [complex(pr).real for pr in (
            _proj_coeff(img, b) for b in sd_basis)]
        assert np.allclose(coords, pp[1, :], atol=1e-12)
        img6 = iwasawa.conjugated_d(P, e(6))
        coords6 = [complex(pr).real for pr in (_proj_coeff(img6, b) for b in sd_basis)]
        assert np.allclose(coords6, pp[2, :], atol=1e-12)


def _proj_coeff(form, basis_form):
    from nilherm.exterior import inner

    return inner(form, basis_form) / inner(basis_form, basis_form)


def test_conjugated_d_g2_both_blocks(g2):
    """d^P e^5 = (r, u, x)/2 in the self-dual and (r', u', x')/2 in the
    anti-self-dual coordinates: the first rows of the two blocks."""
    from nilherm.moduli import sample_so4, so4_blocks

    rng = np.random.default_rng(43)
    sd = [e(1, 2) + e(3, 4), e(1, 3) + e(4, 2), e(1, 4) + e(2, 3)]
    asd = [e(1, 2) - e(3, 4), e(1, 3) - e(4, 2), e(1, 4) - e(2, 3)]
    for _ in range(10):
        P = sample_so4(rng)
        pp, pm = so4_blocks(P)
        img = g2.conjugated_d(P, e(5))
        plus = [complex(_proj_coeff(img, b)).real for b in sd]
        minus = [complex(_proj_coeff(img, b)).real for b in asd]
        assert np.allclose(plus, pp[0, :] / 2, atol=1e-12)
        assert np.allclose(minus, pm[0, :] / 2, atol=1e-12)


# ---------------------------------------------------------------------------
# serialization and frames


def test_json_roundtrip(tmp_path, iwasawa):
    data = iwasawa.to_dict()
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(data))
    loaded = LieAlgebra.load(path)
    for i in range(1, 7):
        assert loaded.d(e(i)) == iwasawa.d(e(i))


def test_json_fraction_strings():
    alg = LieAlgebra.from_dict({"name": "t", "d": {"5": [[1, 2, "1/2"]]}})
    assert alg.d(e(5)) == Fraction(1, 2) * e(1, 2)
    assert alg.is_exact


def test_json_malformed():
    with pytest.raises(InvalidInputError):
        LieAlgebra.from_dict({"d": {"9": [[1, 2, 1]]}})
    with pytest.raises(InvalidInputError):
        LieAlgebra.from_dict({"d": {"5": [[1, 2, "x"]]}})
    with pytest.raises(InvalidInputError):
        LieAlgebra.from_dict({"d": {"5": [[1, 2, 1]]}, "gram": np.ones((6, 6)).tolist()})


def test_orthonormalized_modified_metric():
    entry = load("g2-modified-metric")
    alg = entry.algebra
    assert alg.gram is not None
    ortho = alg.orthonormalized()
    assert ortho.gram is None
    # f1 = e1/2, f2 = e2/2 so d f^5 = e^{12} = 4 f^{12}
    assert ortho.d(e(5)).isclose(4 * e(1, 2), 1e-12)
    assert ortho.d(e(6)).isclose(2 * e(1, 4) + 2 * e(2, 3), 1e-12)


def test_orthonormalized_random_gram_d_squared():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(6, 6))
    gram = m @ m.T + 6 * np.eye(6)
    base = load("g3").algebra
    alg = LieAlgebra("g3g", base.d_gen, gram=gram)
    ortho = alg.orthonormalized()
    for i in range(1, 7):
        assert ortho.d(ortho.d(e(i))).norm() < 1e-9
