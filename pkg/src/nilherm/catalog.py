"""Built-in algebras and the theorem-verification suites.

Five entries ship: the abelian algebra, the complex Heisenberg algebra
("iwasawa"), two further nilpotent algebras g2 and g3 with first Betti
number 4, and g2 with the modified metric diag(1/4, 1/4, 1, 1, 1, 1).

The verification suites reproduce this package's classification theorems
by deterministic point checks plus seeded sampling:

* ``theorem1`` -- the sixteen classes on the Heisenberg algebra,
* ``theorem2`` -- the g2 classes, including the modified-metric example,
* ``theorem3`` -- the g3 classes and the empty classes of its corollary,
* ``prop4``    -- cosymplectic points exist for every metric,
* ``oracles``  -- canonical projection norms agree with the
  wedge-equation residual detectors.

Set equalities are tested in both directions (samples of the claimed set
are members, off-set samples are not); statements that are inclusions are
tested one way only.  All sampling is seeded; reports carry seeds, counts
and minima so runs are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from nilherm.errors import InvalidInputError
from nilherm.exterior import Multivector, e
from nilherm.ghclass import (
    NONVANISH_FLOOR,
    VANISH_TOL,
    classify,
    cosymplectic_construct,
    image_orthogonality_residual,
    lemma1_residual,
    lemma2_residual,
    lemma3_residual,
    lemma4_residual,
    w4_norm,
)
from nilherm.hermitian import J_from_omega, nijenhuis_norm
from nilherm.liealg import LieAlgebra
from nilherm.moduli import (
    PI_VERTEX_FORMS,
    VERTEX_FORMS,
    omega_from_cp3,
    parse_locus,
    sample_cp3,
)

MAX_RESAMPLES = 3


@dataclass(frozen=True)
class CatalogEntry:
    algebra: LieAlgebra
    known_results: tuple[dict, ...] = ()

    @property
    def name(self) -> str:
        return self.algebra.name


def _entries() -> dict[str, CatalogEntry]:
    zero = Multivector.zero()
    abelian = LieAlgebra("abelian", [zero] * 6)
    iwasawa = LieAlgebra(
        "iwasawa",
        [zero, zero, zero, zero, e(1, 3) + e(4, 2), e(1, 4) + e(2, 3)],
    )
    g2 = LieAlgebra("g2", [zero, zero, zero, zero, e(1, 2), e(1, 4) + e(2, 3)])
    g3 = LieAlgebra("g3", [zero, zero, zero, zero, e(1, 2), e(1, 5) + e(3, 4)])
    g2m = LieAlgebra(
        "g2-modified-metric",
        g2.d_gen,
        gram=np.diag([0.25, 0.25, 1, 1, 1, 1]),
    )
    return {
        "abelian": CatalogEntry(
            abelian,
            (
                {"claim": "every point is flat Kähler", "locus": "cp3:uniform", "vanishes": (1, 2, 3, 4)},
            ),
        ),
        "iwasawa": CatalogEntry(
            iwasawa,
            (
                {"claim": "face 3 kills the first component", "locus": "face:3", "vanishes": (1,), "ref": "theorem1"},
                {"claim": "edge 1,2 is integrable cosymplectic", "locus": "edge:1,2", "vanishes": (1, 2, 4), "ref": "theorem1"},
                {"claim": "the 3-sphere S is symplectic", "locus": "sphere:S", "vanishes": (1, 3, 4), "ref": "theorem1"},
                {"claim": "face 0 is cosymplectic", "locus": "face:0", "vanishes": (4,), "ref": "theorem1"},
            ),
        ),
        "g2": CatalogEntry(
            g2,
            (
                {"claim": "circle CS is symplectic", "locus": "circle:CS", "vanishes": (1, 3, 4), "ref": "theorem2"},
                {"claim": "circle CS' is cosymplectic", "locus": "circle:CS'", "vanishes": (4,), "ref": "theorem2"},
            ),
        ),
        "g3": CatalogEntry(
            g3,
            (
                {"claim": "edge 0,2 kills the first component", "locus": "edge:0,2", "vanishes": (1,), "ref": "theorem3"},
                {"claim": "equator 0,3 is cosymplectic", "locus": "equator:0,3", "vanishes": (4,), "ref": "theorem3"},
            ),
        ),
        "g2-modified-metric": CatalogEntry(g2m),
    }


_CACHE: dict[str, CatalogEntry] | None = None


def names() -> tuple[str, ...]:
    return ("abelian", "iwasawa", "g2", "g3", "g2-modified-metric")


def load(name: str) -> CatalogEntry:
    """Fetch a built-in entry by name; unknown names raise InvalidInputError."""
    global _CACHE
    if _CACHE is None:
        _CACHE = _entries()
    try:
        return _CACHE[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown catalog algebra {name!r}; choices: {', '.join(names())}"
        ) from None


def resolve_algebra(ref: str) -> LieAlgebra:
    """Catalog name or path to an algebra JSON file."""
    if ref in names():
        return load(ref).algebra
    return LieAlgebra.load(ref)


# ---------------------------------------------------------------------------
# suite machinery


@dataclass
class Assertion:
    claim: str
    ref: str = ""
    n_samples: int = 0
    passed: bool = True
    witnesses: list = field(default_factory=list)
    min_norms: dict = field(default_factory=dict)
    indeterminate: int = 0

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "ref": self.ref,
            "n_samples": self.n_samples,
            "pass": self.passed,
            "witnesses": self.witnesses,
            "min_norms": self.min_norms,
            "indeterminate": self.indeterminate,
        }


@dataclass
class Report:
    suite: str
    seed: int
    tol: float
    floor: float
    assertions: list[Assertion] = field(default_factory=list)
    info: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def total_samples(self) -> int:
        return sum(a.n_samples for a in self.assertions)

    @property
    def total_indeterminate(self) -> int:
        return sum(a.indeterminate for a in self.assertions)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "tolerances": {"vanish": self.tol, "nonvanish_floor": self.floor},
            "pass": self.passed,
            "n_samples": self.total_samples,
            "indeterminate": self.total_indeterminate,
            "assertions": [a.to_dict() for a in self.assertions],
            "info": self.info,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for a in self.assertions:
            status = "PASS" if a.passed else "FAIL"
            extra = f" [{a.indeterminate} indeterminate]" if a.indeterminate else ""
            lines.append(f"  {status}  {a.claim} (n={a.n_samples}){extra}")
        for line in self.info:
            lines.append(f"  INFO  {line}")
        return "\n".join(lines)


def _witness(omega: Multivector, sig=None) -> dict:
    out = {"omega": [round(float(x.real), 12) for x in omega.coeff_vector(2)]}
    if sig is not None:
        out["norms"] = [round(n, 14) for n in sig.norms]
    return out


class _Checker:
    """Classify-with-resampling helper shared by the suites."""

    def __init__(self, algebra, rng, tol, floor):
        self.algebra = algebra
        self.rng = rng
        self.tol = tol
        self.floor = floor
        self.collected: list[tuple[str, Multivector, object]] = []

    def classify(self, omega):
        return classify(self.algebra, J_from_omega(omega), self.tol, self.floor)

    def run(
        self,
        assertion: Assertion,
        draw,
        n: int,
        vanish=(),
        nonvanish=(),
        tag: str = "",
        collect: bool = True,
        extra=None,
    ):
        """Check that components in ``vanish`` are below tol and those in
        ``nonvanish`` above the floor on n draws, resampling indeterminates."""
        for _ in range(n):
            sig = omega = None
            for _ in range(MAX_RESAMPLES + 1):
                omega = draw(self.rng)
                sig = self.classify(omega)
                pending = [
                    i
                    for i in (*vanish, *nonvanish)
                    if self.tol < sig.norms[i - 1] <= self.floor
                ]
                if not pending:
                    break
            assertion.n_samples += 1
            if pending:
                assertion.indeterminate += 1
                continue
            ok = all(sig.norms[i - 1] <= self.tol for i in vanish) and all(
                sig.norms[i - 1] > self.floor for i in nonvanish
            )
            if extra is not None and ok:
                ok = extra(omega, sig)
            if not ok:
                assertion.passed = False
                if len(assertion.witnesses) < 5:
                    assertion.witnesses.append(_witness(omega, sig))
            for i in (*vanish, *nonvanish):
                key = f"w{i}"
                cur = assertion.min_norms.get(key)
                val = sig.norms[i - 1]
                if cur is None or val < cur:
                    assertion.min_norms[key] = val
            if collect:
                self.collected.append((tag, omega, sig))


def _locus_draw(locus):
    return locus.sample


def _const_draw(omega):
    return lambda rng: omega


def _uniform_off(avoid_loci=(), avoid_points=(), guard=1e-3):
    """Uniform draw conditioned off the listed sets (guard = rejection band)."""

    def draw(rng):
        for _ in range(200):
            w = omega_from_cp3(sample_cp3(rng))
            if any(loc.contains(w, guard) for loc in avoid_loci):
                continue
            if any((w - p).norm() < guard for p in avoid_points):
                continue
            return w
        raise RuntimeError("conditioned sampler starved")

    return draw


# ---------------------------------------------------------------------------
# theorem 1: the Heisenberg algebra


def verify_theorem1(
    seed: int = 0,
    samples_per_locus: int = 200,
    tol: float = VANISH_TOL,
    floor: float = NONVANISH_FLOOR,
) -> Report:
    """Class-by-class reproduction of the Heisenberg classification.

    The four maximal classes are F3, {w0} + edge(1,2), {w3} + the sphere S
    and F0 + F3; the derived lattice collapses exactly as stated in the
    companion corollary.
    """
    entry = load("iwasawa")
    rng = np.random.default_rng(seed)
    rep = Report("theorem1", seed, tol, floor)
    chk = _Checker(entry.algebra, rng, tol, floor)
    n = samples_per_locus

    f3, f0 = parse_locus("face:3"), parse_locus("face:0")
    e12 = parse_locus("edge:1,2")
    sphere = parse_locus("sphere:S")
    w0, w3 = VERTEX_FORMS[0], VERTEX_FORMS[3]

    a = Assertion("face 3 lies in the no-first-component class", "theorem1")
    chk.run(a, _locus_draw(f3), n, vanish=(1,), tag="F3")
    rep.assertions.append(a)

    a = Assertion("uniform points off face 3 have a first component", "theorem1")
    chk.run(a, _uniform_off([f3]), n, nonvanish=(1,), tag="uniform")
    rep.assertions.append(a)

    a = Assertion("w0 and edge 1,2 have no second component", "theorem1")
    chk.run(a, _const_draw(w0), 1, vanish=(2,), tag="w0")
    chk.run(a, _locus_draw(e12), n, vanish=(2,), tag="E12")
    rep.assertions.append(a)

    a = Assertion("points off {w0} + edge 1,2 have a second component", "theorem1")
    chk.run(a, _uniform_off([e12], [w0]), n, nonvanish=(2,), tag="uniform")
    rep.assertions.append(a)

    a = Assertion("w3 and the sphere S have no third component", "theorem1")
    chk.run(a, _const_draw(w3), 1, vanish=(3,), tag="w3")
    chk.run(a, _locus_draw(sphere), n, vanish=(3,), tag="S")
    rep.assertions.append(a)

    a = Assertion("points off {w3} + S have a third component", "theorem1")
    chk.run(a, _uniform_off([sphere], [w3]), n, nonvanish=(3,), tag="uniform")
    rep.assertions.append(a)

    a = Assertion("faces 0 and 3 are cosymplectic", "theorem1")
    chk.run(a, _locus_draw(f0), n, vanish=(4,), tag="F0")
    chk.run(a, _locus_draw(f3), n, vanish=(4,), tag="F3")
    rep.assertions.append(a)

    a = Assertion("points off faces 0 and 3 are not cosymplectic", "theorem1")
    chk.run(a, _uniform_off([f0, f3]), n, nonvanish=(4,), tag="uniform")
    rep.assertions.append(a)

    _corollary1_lattice(rep, chk, e12, sphere, w0, w3, tol, floor)

    a = Assertion("50 sphere samples are closed to 1e-12", "corollary1")
    alg = entry.algebra
    for _ in range(50):
        w = sphere.sample(rng)
        a.n_samples += 1
        if alg.d(w).norm() > 1e-12:
            a.passed = False
            a.witnesses.append(_witness(w))
    rep.assertions.append(a)

    a = Assertion("no sampled point is Kähler", "introduction")
    for _, _, sig in chk.collected:
        a.n_samples += 1
        if max(sig.norms) <= floor:
            a.passed = False
    rep.assertions.append(a)
    return rep


def _corollary1_lattice(rep, chk, e12, sphere, w0, w3, tol, floor):
    """Derived class identities over everything the suite classified."""
    z2_eq = Assertion("only-second-component pattern happens exactly on S", "corollary1")
    z3_eq = Assertion("no-second-component pattern happens exactly on {w0} + edge 1,2", "corollary1")
    empty = Assertion("patterns W1, W4 and W1+W4 never occur", "corollary1")
    z23 = Assertion("no-first-component points are cosymplectic (Z23 = Z234)", "corollary1")
    z12 = Assertion("no-third-component points are cosymplectic (Z12 = Z124)", "corollary1")
    for tag, omega, sig in chk.collected:
        for a in (z2_eq, z3_eq, empty, z23, z12):
            a.n_samples += 1
        if sig.in_z(2, 4):  # w1 = w3 = 0
            if not (sig.in_z(2) and sphere.contains(omega, 1e-6)):
                z2_eq.passed = False
                z2_eq.witnesses.append(_witness(omega, sig))
        if tag == "S" and not sig.in_z(2):
            z2_eq.passed = False
            z2_eq.witnesses.append(_witness(omega, sig))
        if sig.in_z(1, 3, 4):  # w2 = 0
            on_set = e12.contains(omega, 1e-6) or (omega - w0).norm() < 1e-6
            if not (sig.in_z(3) and on_set):
                z3_eq.passed = False
                z3_eq.witnesses.append(_witness(omega, sig))
        if sig.in_z(1, 4) or sig.in_z(1) or sig.in_z(4):
            empty.passed = False
            empty.witnesses.append(_witness(omega, sig))
        if sig.vanishing[0] and not sig.vanishing[3]:
            z23.passed = False
            z23.witnesses.append(_witness(omega, sig))
        if sig.vanishing[2] and not sig.vanishing[3]:
            z12.passed = False
            z12.witnesses.append(_witness(omega, sig))
    rep.assertions.extend([z2_eq, z3_eq, empty, z23, z12])


# ---------------------------------------------------------------------------
# theorem 2: g2 and the modified metric


def _epsilon(theta: float) -> Multivector:
    return (
        e(5, 6)
        + float(np.cos(theta)) * (e(1, 3) + e(4, 2))
        + float(np.sin(theta)) * (e(1, 4) + e(2, 3))
    )


def verify_theorem2(
    seed: int = 0,
    circle_samples: int = 50,
    off_samples: int = 500,
    locus_samples: int = 50,
    metric_samples: int = 100,
    tol: float = VANISH_TOL,
    floor: float = NONVANISH_FLOOR,
) -> Report:
    """The g2 classes: four integrable points, the symplectic circle CS,
    cosymplectic circles, and the modified metric with three integrable
    points."""
    entry = load("g2")
    alg = entry.algebra
    rng = np.random.default_rng(seed)
    rep = Report("theorem2", seed, tol, floor)
    chk = _Checker(alg, rng, tol, floor)

    w1f, w2f = VERTEX_FORMS[1], VERTEX_FORMS[2]
    four = [w1f, w2f, _epsilon(2 * np.pi / 3), _epsilon(-2 * np.pi / 3)]
    cs = parse_locus("circle:CS")
    csp = parse_locus("circle:CS'")

    a = Assertion("the four named points are integrable", "theorem2")
    for w in four:
        chk.run(a, _const_draw(w), 1, vanish=(1, 2), tag="four")
    rep.assertions.append(a)

    a = Assertion("uniform points off the four have a second component", "theorem2")
    chk.run(a, _uniform_off([], four), off_samples, nonvanish=(2,), tag="uniform")
    rep.assertions.append(a)

    a = Assertion("circle CS has no third component", "theorem2")
    chk.run(a, _locus_draw(cs), circle_samples, vanish=(3,), tag="CS")
    rep.assertions.append(a)

    a = Assertion("points off CS have a third component", "theorem2")
    chk.run(a, _uniform_off([cs]), off_samples, nonvanish=(3,), tag="uniform")
    rep.assertions.append(a)

    a = Assertion("eps(0), eps(pi), CS, CS', equators 0-2, 1-3, 1-2 are cosymplectic", "theorem2")
    chk.run(a, _const_draw(_epsilon(0.0)), 1, vanish=(4,), tag="eps0")
    chk.run(a, _const_draw(_epsilon(np.pi)), 1, vanish=(4,), tag="epspi")
    chk.run(a, _locus_draw(cs), locus_samples, vanish=(4,), tag="CS")
    chk.run(a, _locus_draw(csp), locus_samples, vanish=(4,), tag="CS'")
    for spec in ("equator:0,2", "equator:1,3", "equator:1,2"):
        chk.run(a, _locus_draw(parse_locus(spec)), locus_samples, vanish=(4,), tag=spec)
    rep.assertions.append(a)

    a = Assertion("CS samples are closed to 1e-12; no other sample is closed", "corollary2")
    for tag, omega, sig in chk.collected:
        a.n_samples += 1
        closed = alg.d(omega).norm()
        if tag == "CS" and closed > 1e-12:
            a.passed = False
            a.witnesses.append(_witness(omega, sig))
        if tag != "CS" and closed <= floor and not cs.contains(omega, 1e-6):
            a.passed = False
            a.witnesses.append(_witness(omega, sig))
    rep.assertions.append(a)

    hermitian_pts = [w for w in four]
    on_cs03 = [w for w in hermitian_pts if parse_locus("equator:0,3").contains(w, 1e-9)]
    rep.info.append(
        "the four integrable points split as "
        f"{len(on_cs03)} on the equator 0-3 and {len(hermitian_pts) - len(on_cs03)} "
        "vertices of edge 1,2; the count of four matches the corollary but not "
        "its placement on the equator, so only the explicit point list is asserted"
    )

    _modified_metric_checks(rep, rng, metric_samples, tol, floor)
    return rep


def _modified_metric_checks(rep, rng, n, tol, floor):
    """Exactly three integrable points survive the modified metric.

    Working in the orthonormal frame of diag(1/4, 1/4, 1, 1, 1, 1), the
    integrable candidates are confined to edges 1,2 and 0,3; the vertices
    w1, w2 persist while the equator pair collapses to the single point
    eps(pi), which maps back to -1/2 e13 - 1/2 e42 + e56 in the original
    frame.
    """
    entry = load("g2-modified-metric")
    alg = entry.algebra
    three = [VERTEX_FORMS[1], VERTEX_FORMS[2], _epsilon(np.pi)]

    a = Assertion("modified metric: the three named points are integrable", "section5")
    for w in three:
        a.n_samples += 1
        if nijenhuis_norm(alg.orthonormalized(), J_from_omega(w)) > tol:
            a.passed = False
            a.witnesses.append(_witness(w))
    rep.assertions.append(a)

    a = Assertion(
        "modified metric: edge samples off the three points are not integrable",
        "section5",
    )
    ortho = alg.orthonormalized()
    for spec in ("edge:1,2", "edge:0,3"):
        locus = parse_locus(spec)
        for _ in range(n):
            w = None
            nj = 0.0
            for _ in range(MAX_RESAMPLES + 1):
                w = locus.sample(rng)
                if any((w - p).norm() < 1e-3 for p in three):
                    continue
                nj = nijenhuis_norm(ortho, J_from_omega(w))
                if not (tol < nj <= floor):
                    break
            a.n_samples += 1
            if tol < nj <= floor:
                a.indeterminate += 1
            elif nj <= tol:
                a.passed = False
                if len(a.witnesses) < 5:
                    a.witnesses.append(_witness(w))
    rep.assertions.append(a)

    a = Assertion(
        "modified metric: the equator point maps back to -1/2 e13 - 1/2 e42 + e56",
        "section5",
    )
    a.n_samples = 1
    frame = alg.orthonormal_frame()
    back = frame.from_orthonormal(_epsilon(np.pi))
    expected = -0.5 * e(1, 3) - 0.5 * e(4, 2) + e(5, 6)
    if (back - expected).norm() > 1e-9:
        a.passed = False
        a.witnesses.append(_witness(back))
    rep.assertions.append(a)


# ---------------------------------------------------------------------------
# theorem 3: the 3-step algebra


def verify_theorem3(
    seed: int = 0,
    uniform_samples: int = 10000,
    locus_samples: int = 50,
    tol: float = VANISH_TOL,
    floor: float = NONVANISH_FLOOR,
) -> Report:
    """The 3-step algebra: no integrable structures at all, exactly two
    points without third component, and the stated cosymplectic and
    no-first-component inclusions."""
    entry = load("g3")
    alg = entry.algebra
    rng = np.random.default_rng(seed)
    rep = Report("theorem3", seed, tol, floor)
    chk = _Checker(alg, rng, tol, floor)
    p1, p2 = PI_VERTEX_FORMS[1], PI_VERTEX_FORMS[2]

    a = Assertion("no uniform sample loses its second component", "theorem3")
    chk.run(
        a,
        lambda r: omega_from_cp3(sample_cp3(r)),
        uniform_samples,
        nonvanish=(2,),
        tag="uniform",
    )
    rep.assertions.append(a)

    a = Assertion("edges 0-2, 1-3 and both generalized 15-edges kill the first component", "theorem3")
    for spec in ("edge:0,2", "edge:1,3", "gen-edge:+15", "gen-edge:-15"):
        chk.run(a, _locus_draw(parse_locus(spec)), locus_samples, vanish=(1,), tag=spec)
    rep.assertions.append(a)

    a = Assertion("the two pi-vertices have no third component", "theorem3")
    chk.run(a, _const_draw(p1), 1, vanish=(3,), tag="pi1")
    chk.run(a, _const_draw(p2), 1, vanish=(3,), tag="pi2")
    rep.assertions.append(a)

    a = Assertion("points off the two pi-vertices have a third component", "theorem3")
    chk.run(a, _uniform_off([], [p1, p2]), locus_samples * 4, nonvanish=(3,), tag="uniform")
    rep.assertions.append(a)

    a = Assertion("equators 0-3, 1-2 and the generalized 26-edge are cosymplectic", "theorem3")
    for spec in ("equator:0,3", "equator:1,2", "gen-edge:26"):
        chk.run(a, _locus_draw(parse_locus(spec)), locus_samples, vanish=(4,), tag=spec)
    rep.assertions.append(a)

    # the other equator pair meets the cosymplectic class only in one
    # pi-vertex each; record the measured minima so the discrepancy between
    # the stated pair (0-2, 1-3) and the derived pair (0-3, 1-2) is visible
    probe_mins = {}
    for spec in ("equator:0,2", "equator:1,3"):
        locus = parse_locus(spec)
        vals = [
            chk.classify(locus.sample(rng)).norms[3] for _ in range(locus_samples)
        ]
        probe_mins[spec] = min(vals)
    rep.info.append(
        "the cosymplectic class meets edges 0-3 and 1-2 in their full "
        "equators but meets edges 0-2 and 1-3 only at one pi-vertex each "
        "(sampled fourth-component minima: "
        + ", ".join(f"{k}: {v:.2e}" for k, v in probe_mins.items())
        + "); the derived equator pair is asserted"
    )

    a = Assertion("d of the pi-vertices is exactly their conformal product with e2", "section6")
    a.n_samples = 2
    if (alg.d(p1) + (p1 ^ e(2))).norm() > 1e-12:
        a.passed = False
        a.witnesses.append(_witness(p1))
    if (alg.d(p2) - (p2 ^ e(2))).norm() > 1e-12:
        a.passed = False
        a.witnesses.append(_witness(p2))
    rep.assertions.append(a)

    empty_patterns = {
        "Z1": (2, 3, 4),
        "Z2": (1, 3, 4),
        "Z3": (1, 2, 4),
        "Z4": (1, 2, 3),
        "Z12": (3, 4),
        "Z13": (2, 4),
        "Z14": (2, 3),
        "Z34": (1, 2),
        "Z134": (2,),
    }
    a = Assertion("the nine corollary classes are empty over all samples", "corollary3")
    for _, omega, sig in chk.collected:
        a.n_samples += 1
        for name, vanish_set in empty_patterns.items():
            if all(sig.vanishing[i - 1] for i in vanish_set):
                a.passed = False
                if len(a.witnesses) < 5:
                    w = _witness(omega, sig)
                    w["class"] = name
                    a.witnesses.append(w)
    rep.assertions.append(a)

    mins = {}
    for _, _, sig in chk.collected:
        for i in range(4):
            key = f"w{i + 1}"
            if key not in mins or sig.norms[i] < mins[key]:
                mins[key] = sig.norms[i]
    rep.info.append(
        "minimum norms over all classified samples: "
        + ", ".join(f"{k}={v:.3e}" for k, v in sorted(mins.items()))
    )
    return rep


# ---------------------------------------------------------------------------
# prop4 and oracle suites


def verify_prop4(
    seed: int = 0,
    grams_per_algebra: int = 20,
    tol: float = VANISH_TOL,
    floor: float = NONVANISH_FLOOR,
) -> Report:
    """Cosymplectic points exist for every left-invariant metric."""
    rng = np.random.default_rng(seed)
    rep = Report("prop4", seed, tol, floor)
    for name in names():
        entry = load(name)
        a = Assertion(f"{name}: construction succeeds under random metrics", "prop4")
        for k in range(grams_per_algebra + 1):
            if k == 0:
                alg = entry.algebra  # the shipped metric
            else:
                m = rng.normal(size=(6, 6))
                gram = m @ m.T + np.eye(6)
                alg = LieAlgebra(name, entry.algebra.d_gen, gram=gram)
            w = cosymplectic_construct(alg)
            j = J_from_omega(w)
            val = w4_norm(alg, j)
            a.n_samples += 1
            key = "w4"
            if key not in a.min_norms or val > a.min_norms[key]:
                a.min_norms[key] = val  # track the worst case
            if val > tol or not j.is_positively_oriented:
                a.passed = False
                a.witnesses.append(_witness(w))
        rep.assertions.append(a)
    return rep


def verify_oracles(
    seed: int = 0,
    pairs: int = 1000,
    tol: float = VANISH_TOL,
    floor: float = NONVANISH_FLOOR,
) -> Report:
    """Projection norms and wedge-equation residuals agree on vanishing.

    Uniform (algebra, point) pairs exercise the non-vanishing side; a
    smaller block of locus samples with known zero components exercises
    the vanishing side.  The linear description of the cosymplectic class
    (pairing with the image of d) is compared with the direct product
    d(omega) ^ omega on every pair.
    """
    rng = np.random.default_rng(seed)
    rep = Report("oracles", seed, tol, floor)
    pool = [load(n).algebra for n in names()]

    agree = Assertion("detector verdicts agree on uniform pairs", "lemmas1-4")
    ortho_eq = Assertion(
        "image orthogonality matches d(omega) ^ omega on every pair", "eq123"
    )
    resampled = 0
    for k in range(pairs):
        alg = pool[k % len(pool)]
        settled = False
        for _ in range(MAX_RESAMPLES + 1):
            omega = omega_from_cp3(sample_cp3(rng))
            j = J_from_omega(omega)
            sig = classify(alg, j, tol, floor)
            residuals = (
                lemma1_residual(alg, j),
                lemma2_residual(alg, j),
                lemma3_residual(alg, j, omega),
                lemma4_residual(alg, j, omega),
            )
            linear = image_orthogonality_residual(alg, omega)
            vals = (*sig.norms, *residuals, linear)
            if not any(tol < v <= floor for v in vals):
                settled = True
                break
            resampled += 1
        if not settled:
            agree.indeterminate += 1
            continue
        # every value is now cleanly below tol or above the floor
        agree.n_samples += 1
        if any((c <= tol) != (r <= tol) for c, r in zip(sig.norms, residuals)):
            agree.passed = False
            if len(agree.witnesses) < 5:
                agree.witnesses.append(_witness(omega, sig))
        ortho_eq.n_samples += 1
        if (sig.norms[3] <= tol) != (linear <= tol):
            ortho_eq.passed = False
            if len(ortho_eq.witnesses) < 5:
                ortho_eq.witnesses.append(_witness(omega, sig))
    rep.assertions.append(agree)
    rep.assertions.append(ortho_eq)
    rep.info.append(f"{resampled} indeterminate pairs were resampled")

    vanish_cases = [
        ("iwasawa", "sphere:S", {1: True, 2: False, 3: True, 4: True}),
        ("iwasawa", "edge:1,2", {1: True, 2: True, 3: False, 4: True}),
        ("g2", "circle:CS", {1: True, 2: False, 3: True, 4: True}),
        ("g3", "equator:0,3", {4: True}),
    ]
    a = Assertion("both detector routes see the known zero components", "lemmas1-4")
    for name, spec, expected in vanish_cases:
        alg = load(name).algebra
        locus = parse_locus(spec)
        for _ in range(25):
            omega = locus.sample(rng)
            j = J_from_omega(omega)
            sig = classify(alg, j, tol, floor)
            residuals = (
                lemma1_residual(alg, j),
                lemma2_residual(alg, j),
                lemma3_residual(alg, j, omega),
                lemma4_residual(alg, j, omega),
            )
            a.n_samples += 1
            for comp, should_vanish in expected.items():
                canon_v = sig.norms[comp - 1] <= tol
                res_v = residuals[comp - 1] <= 10 * tol
                if canon_v != should_vanish or res_v != should_vanish:
                    a.passed = False
                    if len(a.witnesses) < 5:
                        a.witnesses.append(_witness(omega, sig))
    rep.assertions.append(a)
    return rep


SUITES = {
    "theorem1": verify_theorem1,
    "theorem2": verify_theorem2,
    "theorem3": verify_theorem3,
    "prop4": verify_prop4,
    "oracles": verify_oracles,
}


def run_suite(name: str, seed: int = 0, tol: float = VANISH_TOL, floor: float = NONVANISH_FLOOR, **counts) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown suite {name!r}; choices: {', '.join(sorted(SUITES))}"
        ) from None
    return fn(seed=seed, tol=tol, floor=floor, **counts)
