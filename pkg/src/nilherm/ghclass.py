"""Torsion-component norms and the sixteen-class labels.

The intrinsic torsion of a compatible structure splits into four
unitary-irreducible components.  In six dimensions everything is readable
from two objects:

* d(omega) carries the first, third and fourth components: its
  (3,0)+(0,3) part, its effective (primitive) (2,1)+(1,2) part, and its
  omega ^ (1-form) part, which are mutually orthogonal;
* the Nijenhuis tensor carries the first and second: the second component
  is the deviation of the lowered tensor from total skew-symmetry.

The canonical norms here are those orthogonal projections, so they do not
depend on any coframe choice.  A second, independent route evaluates the
classical wedge-equation residuals for each class in a unitary coframe
(lemma1_residual .. lemma4_residual); both routes must agree on vanishing,
which the verification suites check on seeded samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from nilherm.errors import NotNilpotentError
from nilherm.exterior import (
    Multivector,
    e,
    inner,
    wedge_tensor,
)
from nilherm.hermitian import (
    AlmostComplexStructure,
    UnitaryCoframe,
    nijenhuis,
    omega_from_J,
    unitary_coframe,
)

#: norms below this vanish
VANISH_TOL = 1e-9
#: norms above this definitely do not vanish; in between is indeterminate
NONVANISH_FLOOR = 1e-6

_LABELS = {
    frozenset(): "Kähler",
    frozenset({1}): "W1 (nearly Kähler)",
    frozenset({2}): "W2 (almost Kähler)",
    frozenset({3}): "W3 (cosymplectic Hermitian)",
    frozenset({4}): "W4 (locally conformal Kähler)",
    frozenset({1, 2, 3}): "W1⊕W2⊕W3 (semi-Kähler)",
    frozenset({1, 2, 3, 4}): "generic",
}


def _label(present: frozenset[int]) -> str:
    named = _LABELS.get(present)
    if named is not None:
        return named
    return "⊕".join(f"W{i}" for i in sorted(present))


@dataclass(frozen=True)
class GHSignature:
    """Component norms, vanishing pattern and class label of one structure."""

    w1: float
    w2: float
    w3: float
    w4: float
    vanishing: tuple[bool, bool, bool, bool]
    label: str
    indeterminate: tuple[int, ...] = ()

    @property
    def norms(self) -> tuple[float, float, float, float]:
        return (self.w1, self.w2, self.w3, self.w4)

    def in_z(self, *components: int) -> bool:
        """Membership in the class allowing only the listed components.

        ``sig.in_z(2, 3, 4)`` asks whether the first component vanishes;
        ``sig.in_z()`` is the Kähler condition.
        """
        others = {1, 2, 3, 4}.difference(components)
        return all(self.vanishing[i - 1] for i in others)

    def to_dict(self) -> dict:
        return {
            "w1": self.w1,
            "w2": self.w2,
            "w3": self.w3,
            "w4": self.w4,
            "vanishing": list(self.vanishing),
            "label": self.label,
            "indeterminate": list(self.indeterminate),
        }


class _Context:
    """Shared per-(algebra, J) data for the component norms."""

    def __init__(self, algebra, J: AlmostComplexStructure, omega=None):
        self.algebra = algebra.orthonormalized()
        self.J = J
        self.omega = omega if omega is not None else omega_from_J(J)
        self.w_vec = self.omega.coeff_vector(2).real
        self.domega_vec = self.algebra.d_matrix(2) @ self.w_vec
        self.coframe = unitary_coframe(J)
        sig = np.array([s.coeff_vector(1) for s in self.coframe])  # (3, 6)
        w11 = wedge_tensor(1, 1)
        w21 = wedge_tensor(2, 1)
        pairs = np.array(
            [
                np.einsum("i,j,ijk->k", sig[a], sig[b], w11)
                for a, b in ((0, 1), (0, 2), (1, 2))
            ]
        )
        scale = 1.0 / (2.0 * np.sqrt(2.0))
        self.m30 = np.einsum("i,j,ijk->k", pairs[0], sig[2], w21) * scale
        m21 = np.einsum("pi,cj,ijk->pck", pairs, sig.conj(), w21) * scale
        self.m21 = m21.reshape(9, -1)
        # unit vectors of omega ^ (1,0)-coframe directions, in m21 coordinates
        wprod = np.array(
            [np.einsum("i,j,ijk->k", self.w_vec, sig[c], w21) / 2.0 for c in range(3)]
        )
        self.q = self.m21.conj() @ wprod.T  # (9, 3): columns are the directions
        self._c30 = None
        self._c21 = None

    @property
    def c30(self) -> complex:
        if self._c30 is None:
            self._c30 = complex(np.vdot(self.m30, self.domega_vec))
        return self._c30

    @property
    def c21(self) -> np.ndarray:
        if self._c21 is None:
            self._c21 = self.m21.conj() @ self.domega_vec
        return self._c21

    def split(self) -> tuple[float, float, float]:
        """Norms of the three orthogonal pieces of d(omega)."""
        t = self.q.conj().T @ self.c21
        eff = self.c21 - self.q @ t
        sqrt2 = float(np.sqrt(2.0))
        return (
            sqrt2 * float(abs(self.c30)),
            sqrt2 * float(np.linalg.norm(eff)),
            sqrt2 * float(np.linalg.norm(t)),
        )


def w1_norm(algebra, J: AlmostComplexStructure, omega=None) -> float:
    """Norm of the (3,0)+(0,3) part of d(omega)."""
    ctx = _Context(algebra, J, omega)
    return np.sqrt(2.0) * abs(ctx.c30)


def w2_norm(algebra, J: AlmostComplexStructure) -> float:
    """Deviation of the lowered Nijenhuis tensor from total skew-symmetry."""
    n = nijenhuis(algebra.orthonormalized(), J)
    a3 = np.transpose(n, (1, 2, 0))
    alt = (
        a3
        - a3.transpose(1, 0, 2)
        + a3.transpose(1, 2, 0)
        - a3.transpose(2, 1, 0)
        + a3.transpose(2, 0, 1)
        - a3.transpose(0, 2, 1)
    ) / 6.0
    return float(np.linalg.norm(a3 - alt))


def w3_norm(algebra, J: AlmostComplexStructure, omega=None) -> float:
    """Norm of the effective (2,1)+(1,2) part of d(omega)."""
    return _Context(algebra, J, omega).split()[1]


def w4_norm(algebra, J: AlmostComplexStructure, omega=None) -> float:
    """Norm of d(omega) ^ omega, the conformal-component detector."""
    ctx = _Context(algebra, J, omega)
    five = np.einsum("i,j,ijk->k", ctx.domega_vec, ctx.w_vec, wedge_tensor(3, 2))
    return float(np.linalg.norm(five))


def lee_form(algebra, J: AlmostComplexStructure, omega=None) -> Multivector:
    """The 1-form theta with omega ^ theta the conformal part of d(omega)."""
    ctx = _Context(algebra, J, omega)
    w21 = wedge_tensor(2, 1)
    m = np.einsum("i,ijk->kj", ctx.w_vec, w21)  # columns: omega ^ e^j
    theta, *_ = np.linalg.lstsq(m, ctx.domega_vec, rcond=None)
    return Multivector({1 << i: float(theta[i]) for i in range(6)})


def domega_split(algebra, J: AlmostComplexStructure, omega=None):
    """The three mutually orthogonal piece norms of d(omega).

    Returns (first-component norm, effective norm, conformal norm); their
    squares sum to |d omega|^2.
    """
    return _Context(algebra, J, omega).split()


def classify(
    algebra,
    J: AlmostComplexStructure,
    tol: float = VANISH_TOL,
    floor: float = NONVANISH_FLOOR,
    omega=None,
) -> GHSignature:
    """Full signature: four norms, vanishing pattern, label.

    Components with norm in (tol, floor] are flagged indeterminate; callers
    that sample may resample such points.
    """
    ctx = _Context(algebra, J, omega)
    s1, s3, _ = ctx.split()
    five = np.einsum("i,j,ijk->k", ctx.domega_vec, ctx.w_vec, wedge_tensor(3, 2))
    s4 = float(np.linalg.norm(five))
    s2 = w2_norm(algebra, J)
    norms = tuple(float(n) for n in (s1, s2, s3, s4))
    vanishing = tuple(bool(n <= tol) for n in norms)
    indet = tuple(i + 1 for i, n in enumerate(norms) if tol < n <= floor)
    present = frozenset(i + 1 for i, v in enumerate(vanishing) if not v)
    return GHSignature(*norms, vanishing=vanishing, label=_label(present), indeterminate=indet)


# ---------------------------------------------------------------------------
# wedge-equation residuals (the independent detector route)


def effective_basis(coframe: UnitaryCoframe) -> tuple[Multivector, ...]:
    """The six effective (2,1)-forms spanning the third-component pairing."""
    a, b, g = coframe
    ab, ag, bg = a ^ b, a ^ g, b ^ g
    ac, bc, gc = a.conjugate(), b.conjugate(), g.conjugate()
    return (
        ab ^ gc,
        bg ^ ac,
        ag ^ bc,
        (ab ^ bc) - (ag ^ gc),
        -(ab ^ ac) - (bg ^ gc),
        -(ag ^ ac) + (bg ^ bc),
    )


def _top(form: Multivector) -> complex:
    return complex(form.coeff(1, 2, 3, 4, 5, 6))


def lemma1_residual(algebra, J: AlmostComplexStructure) -> float:
    """Residual of the single first-component wedge equation."""
    algebra = algebra.orthonormalized()
    a, b, g = unitary_coframe(J)
    total = (
        (algebra.d(a) ^ b ^ g ^ a ^ a.conjugate())
        + (algebra.d(b) ^ g ^ a ^ b ^ b.conjugate())
        + (algebra.d(g) ^ a ^ b ^ g ^ g.conjugate())
    )
    return abs(_top(total))


def lemma2_residual(algebra, J: AlmostComplexStructure) -> float:
    """Aggregate residual of the seven second-component equations."""
    algebra = algebra.orthonormalized()
    a, b, g = unitary_coframe(J)
    da, db, dg = algebra.d(a), algebra.d(b), algebra.d(g)
    ac, bc, gc = a.conjugate(), b.conjugate(), g.conjugate()
    vals = [
        _top(da ^ g ^ a ^ b ^ bc),
        _top(da ^ a ^ b ^ g ^ gc),
        _top(db ^ a ^ b ^ g ^ gc),
        _top(db ^ b ^ g ^ a ^ ac),
        _top(dg ^ b ^ g ^ a ^ ac),
        _top(dg ^ g ^ a ^ b ^ bc),
    ]
    chain = [
        _top(da ^ b ^ g ^ a ^ ac),
        _top(db ^ g ^ a ^ b ^ bc),
        _top(dg ^ a ^ b ^ g ^ gc),
    ]
    vals.append(chain[0] - chain[1])
    vals.append(chain[1] - chain[2])
    return float(np.sqrt(sum(abs(v) ** 2 for v in vals)))


def lemma3_residual(algebra, J: AlmostComplexStructure, omega=None) -> float:
    """Aggregate residual of (d omega) ^ eta_i over the effective basis."""
    algebra = algebra.orthonormalized()
    domega = algebra.d(omega if omega is not None else omega_from_J(J))
    etas = effective_basis(unitary_coframe(J))
    return float(np.sqrt(sum(abs(_top(domega ^ eta)) ** 2 for eta in etas)))


def lemma4_residual(algebra, J: AlmostComplexStructure, omega=None) -> float:
    """Aggregate residual of (d sigma) ^ omega ^ omega over the coframe.

    Only valid for nilpotent algebras (the equivalence with the conformal
    component uses that invariant 5-forms are closed).
    """
    algebra = algebra.orthonormalized()
    if not algebra.is_nilpotent:
        raise NotNilpotentError(
            "the coframe shortcut requires a nilpotent algebra; "
            "use w4_norm, which is definition-direct"
        )
    w = omega if omega is not None else omega_from_J(J)
    ww = w ^ w
    vals = [_top(algebra.d(s) ^ ww) for s in unitary_coframe(J)]
    return float(np.sqrt(sum(abs(v) ** 2 for v in vals)))


def image_orthogonality_residual(algebra, omega: Multivector) -> float:
    """Residual of the pairing of omega with the image basis of d.

    For nilpotent algebras this vanishes exactly when omega is
    cosymplectic, giving a linear description of that class.
    """
    algebra = algebra.orthonormalized()
    prof = algebra.cohomology()
    return float(
        np.sqrt(
            sum(abs(complex(inner(omega, s))) ** 2 for s in prof.image_basis)
        )
    )


# ---------------------------------------------------------------------------
# cosymplectic existence construction


def cosymplectic_construct(algebra) -> Multivector:
    """A moduli point orthogonal to the image of d, for any metric.

    Works in the orthonormal frame of the algebra's gram: picks an adapted
    orthonormal basis refining the nilpotency filtration, then combines
    the three final directions with a frame (f1, f2, f3) of the first
    three chosen to kill every pairing with the image of d.  Raises
    :class:`NotNilpotentError` for non-nilpotent input.
    """
    ortho = algebra.orthonormalized()
    if ortho.nilpotency_step() is None:
        raise NotNilpotentError(f"{algebra.name} is not nilpotent")
    basis = _adapted_orthonormal_basis(ortho)
    # transported algebra in the adapted frame
    c = np.column_stack(basis)  # columns: adapted coframe in e-coordinates
    from nilherm.exterior import linear_map_images, substitute

    to_adapted = linear_map_images(c.T)
    from_adapted = linear_map_images(c)
    d_adapted = [
        substitute(ortho.d(substitute(e(i), from_adapted)), to_adapted)
        for i in range(1, 7)
    ]

    def coeff(form, i, j):
        return float(complex(form.coeff(i, j)).real)

    xi5 = np.array([coeff(d_adapted[4], i, 4) for i in (1, 2, 3)])
    xi6 = np.array([coeff(d_adapted[5], i, 4) for i in (1, 2, 3)])
    f1 = _unit_perp([xi5, xi6])
    zeta = np.array([coeff(d_adapted[5], i, 5) for i in (1, 2, 3)])
    f2 = _unit_perp([zeta, f1])
    f3 = np.cross(f1, f2)
    of = [_three_form_vec(v) for v in (f1, f2, f3)]
    w = (e(4) ^ of[0]) + (e(5) ^ of[1]) + (e(6) ^ of[2])
    if complex((w ^ w ^ w).coeff(1, 2, 3, 4, 5, 6)).real < 0:
        w = (e(4) ^ of[0]) + (e(5) ^ of[1]) - (e(6) ^ of[2])
    return substitute(w, from_adapted)


def _three_form_vec(v) -> Multivector:
    return Multivector({1 << i: float(v[i]) for i in range(3) if v[i] != 0})


def _unit_perp(constraints) -> np.ndarray:
    """Deterministic unit 3-vector orthogonal to the given vectors."""
    rows = [np.asarray(c, dtype=float) for c in constraints]
    rows = [r for r in rows if np.linalg.norm(r) > 1e-12]
    if not rows:
        return np.array([1.0, 0.0, 0.0])
    _, s, vt = np.linalg.svd(np.array(rows))
    null = vt[np.sum(s > 1e-10) :]
    if null.shape[0] == 0:
        raise NotNilpotentError("no orthogonal direction available")
    return null[0] / np.linalg.norm(null[0])


def _adapted_orthonormal_basis(ortho) -> list[np.ndarray]:
    """Orthonormal coframe basis with d(x_k) in the span of earlier wedges.

    Refines the ascending filtration V1 = ker d, V_{s+1} = {a : da in
    Lambda^2 V_s} and orthonormalizes level by level, which preserves the
    refinement.
    """
    from nilherm.liealg import _nullspace_float

    d1 = ortho.d_matrix(1)
    levels: list[np.ndarray] = []
    v_rows = [f.coeff_vector(1).real for f in ortho.cohomology().kernel_basis]
    chosen: list[np.ndarray] = []

    def absorb(rows):
        for r in rows:
            v = np.asarray(r, dtype=float)
            for w in chosen:
                v = v - np.dot(w, v) * w
            n = np.linalg.norm(v)
            if n > 1e-9:
                chosen.append(v / n)

    absorb(v_rows)
    while len(chosen) < 6:
        vs = [Multivector({1 << i: float(r[i]) for i in range(6)}) for r in chosen]
        lam2 = [
            (vs[a] ^ vs[b]).coeff_vector(2).real
            for a in range(len(vs))
            for b in range(a + 1, len(vs))
        ]
        proj = np.eye(d1.shape[0])
        if lam2:
            u, s, _ = np.linalg.svd(np.array(lam2).T, full_matrices=False)
            cols = u[:, s > 1e-10]
            proj = proj - cols @ cols.T
        nxt = _nullspace_float(proj @ d1)
        before = len(chosen)
        absorb(nxt)
        if len(chosen) == before:
            raise NotNilpotentError("filtration stalled; algebra not nilpotent")
    if np.linalg.det(np.column_stack(chosen)) < 0:
        chosen[-1] = -chosen[-1]
    return chosen
