"""Catalog entries and the verification suites at reduced sample counts."""

import numpy as np
import pytest

from nilherm.catalog import load, names, resolve_algebra, run_suite
from nilherm.errors import InvalidInputError
from nilherm.exterior import e
from nilherm.ghclass import classify
from nilherm.hermitian import J_from_omega
from nilherm.moduli import VERTEX_FORMS, parse_locus


def test_names_and_load():
    assert set(names()) == {"abelian", "iwasawa", "g2", "g3", "g2-modified-metric"}
    for name in names():
        entry = load(name)
        assert entry.name == name
    with pytest.raises(InvalidInputError):
        load("heisenberg7")


def test_entries_structure():
    assert load("iwasawa").algebra.d(e(6)) == e(1, 4) + e(2, 3)
    assert load("g3").algebra.nilpotency_step() == 3
    assert load("abelian").algebra.cohomology().betti[1] == 6
    gram = load("g2-modified-metric").algebra.gram
    assert np.allclose(gram, np.diag([0.25, 0.25, 1, 1, 1, 1]))


def test_known_results_pass():
    rng = np.random.default_rng(0)
    for name in names():
        entry = load(name)
        for res in entry.known_results:
            locus = parse_locus(res["locus"])
            for _ in range(5):
                w = locus.sample(rng)
                sig = classify(entry.algebra, J_from_omega(w))
                for comp in res["vanishes"]:
                    assert sig.vanishing[comp - 1], (name, res["claim"])


def test_resolve_algebra_path(tmp_path):
    import json

    path = tmp_path / "a.json"
    path.write_text(json.dumps(load("g2").algebra.to_dict()))
    alg = resolve_algebra(str(path))
    assert alg.d(e(5)) == e(1, 2)
    assert resolve_algebra("iwasawa").name == "iwasawa"


def test_cross_algebra_classification():
    j = J_from_omega(VERTEX_FORMS[0])
    assert classify(load("abelian").algebra, j).label == "Kähler"
    assert classify(load("iwasawa").algebra, j).label == "W3 (cosymplectic Hermitian)"


# ---------------------------------------------------------------------------
# suites (fast versions; the acceptance module runs the full counts)


def test_theorem1_suite_fast():
    rep = run_suite("theorem1", samples_per_locus=30)
    assert rep.passed, rep.summary()
    assert rep.total_indeterminate <= rep.total_samples * 0.01


def test_theorem2_suite_fast():
    rep = run_suite(
        "theorem2", circle_samples=15, off_samples=50, locus_samples=10, metric_samples=15
    )
    assert rep.passed, rep.summary()
    assert any("four integrable points" in line for line in rep.info)


def test_theorem3_suite_fast():
    rep = run_suite("theorem3", uniform_samples=250, locus_samples=12)
    assert rep.passed, rep.summary()
    assert any("equators" in line for line in rep.info)


def test_prop4_suite_fast():
    rep = run_suite("prop4", grams_per_algebra=2)
    assert rep.passed, rep.summary()
    assert rep.total_samples == 15  # 5 algebras x (shipped + 2 random)


def test_oracles_suite_fast():
    rep = run_suite("oracles", pairs=40)
    assert rep.passed, rep.summary()


def test_unknown_suite():
    with pytest.raises(InvalidInputError):
        run_suite("theorem4")


def test_report_json_deterministic():
    a = run_suite("prop4", seed=3, grams_per_algebra=2).to_json()
    b = run_suite("prop4", seed=3, grams_per_algebra=2).to_json()
    assert a == b
    c = run_suite("prop4", seed=4, grams_per_algebra=2).to_json()
    assert a != c


def test_report_shape():
    rep = run_suite("prop4", grams_per_algebra=1)
    data = rep.to_dict()
    assert set(data) == {
        "suite",
        "seed",
        "tolerances",
        "pass",
        "n_samples",
        "indeterminate",
        "assertions",
        "info",
    }
    for a in data["assertions"]:
        assert {"claim", "ref", "n_samples", "pass", "witnesses", "min_norms", "indeterminate"} <= set(a)
