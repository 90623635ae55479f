"""Metric-compatible almost complex structures in an orthonormal coframe.

Everything here works in an orthonormal frame: algebras carrying a
non-identity gram are orthonormalized first (see
:meth:`nilherm.liealg.LieAlgebra.orthonormalized`) and J matrices, fundamental
forms and coframes are all expressed in that frame.

Conventions fixed once:

* J acts on the coframe; ``matrix[i, j]`` is the e^{i+1}-component of
  J e^{j+1}, and the fundamental 2-form is omega = sum_{i<j} matrix[i, j] e^{ij}.
* The (1, 0)-forms are the +i eigenvectors of J, calibrated so that the
  standard structure J0 (J0 e^1 = -e^2, ...) makes e^1 + i e^2 type (1, 0).
* Coframe elements are normalized to norm sqrt(2), so that
  omega = (i/2)(alpha ^ conj alpha + beta ^ conj beta + gamma ^ conj gamma).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from nilherm.errors import NotInModuliError
from nilherm.exterior import (
    NGEN,
    Multivector,
    basis_masks,
    inner,
)

#: tolerance for "is a valid point of the moduli space"
J_TOL = 1e-8


class AlmostComplexStructure:
    """Orthogonal almost complex structure J with J^2 = -I, J^T = -J."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = J_TOL):
        m = np.array(matrix, dtype=float)
        if m.shape != (NGEN, NGEN):
            raise NotInModuliError("J must be a 6x6 real matrix")
        if np.linalg.norm(m + m.T) > tol:
            raise NotInModuliError("J is not skew-symmetric")
        if np.linalg.norm(m @ m + np.eye(NGEN)) > tol:
            raise NotInModuliError("J does not square to -identity")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, *a):
        raise AttributeError("AlmostComplexStructure is immutable")

    @property
    def is_positively_oriented(self) -> bool:
        w = omega_from_J(self)
        top = (w ^ w ^ w).coeff(1, 2, 3, 4, 5, 6)
        return complex(top).real > 0

    def __call__(self, onecoeffs: np.ndarray) -> np.ndarray:
        """Apply to a coframe coefficient vector."""
        return self.matrix @ np.asarray(onecoeffs)

    def isclose(self, other: "AlmostComplexStructure", tol: float = 1e-9) -> bool:
        return bool(np.linalg.norm(self.matrix - other.matrix) <= tol)

    def __repr__(self):
        return f"AlmostComplexStructure({self.matrix.round(6).tolist()})"


class UnitaryCoframe(NamedTuple):
    alpha: Multivector
    beta: Multivector
    gamma: Multivector


def omega_from_J(J: AlmostComplexStructure) -> Multivector:
    """Fundamental 2-form of (g, J) in the orthonormal frame."""
    if not isinstance(J, AlmostComplexStructure):
        J = AlmostComplexStructure(J)
    m = J.matrix
    coeffs = {}
    for mask in basis_masks(2):
        bits = [i for i in range(NGEN) if mask >> i & 1]
        coeffs[mask] = float(m[bits[0], bits[1]])
    return Multivector(coeffs)


def J_from_omega(omega: Multivector, tol: float = J_TOL) -> AlmostComplexStructure:
    """Endomorphism whose fundamental form is the given unit-type 2-form.

    Raises :class:`NotInModuliError` when the raised endomorphism fails
    J^2 = -I within tolerance (the 2-form is then not a moduli point).
    """
    if not omega.is_real:
        raise NotInModuliError("fundamental forms are real 2-forms")
    extra = omega - omega.grade(2)
    if extra.norm() > tol:
        raise NotInModuliError("fundamental forms are homogeneous of degree 2")
    m = np.zeros((NGEN, NGEN))
    for mask, v in omega.grade(2).items():
        bits = [i for i in range(NGEN) if mask >> i & 1]
        val = complex(v).real
        m[bits[0], bits[1]] = val
        m[bits[1], bits[0]] = -val
    return AlmostComplexStructure(m, tol=tol)


def holomorphic_projector(J: AlmostComplexStructure) -> np.ndarray:
    """Hermitian projector of C^6 onto the (1, 0) coframe subspace."""
    return (np.eye(NGEN) - 1j * J.matrix) / 2.0


def unitary_coframe(J: AlmostComplexStructure) -> UnitaryCoframe:
    """Deterministic (1, 0) coframe (alpha, beta, gamma), each of norm sqrt 2.

    Projects e^1, e^2, ... in order onto the (1, 0) subspace and keeps the
    first three independent directions (Gram-Schmidt in the Hermitian
    metric), so the result is reproducible and J0 yields exactly
    (e^1 + i e^2, e^3 + i e^4, e^5 + i e^6).
    """
    proj = holomorphic_projector(J)
    chosen: list[np.ndarray] = []
    for k in range(NGEN):
        v = proj[:, k].copy()
        for w in chosen:
            v -= np.vdot(w, v) * w
        n = np.linalg.norm(v)
        if n > 1e-8:
            chosen.append(v / n)
        if len(chosen) == 3:
            break
    vecs = [np.sqrt(2.0) * v for v in chosen]
    forms = [
        Multivector({1 << i: complex(v[i]) for i in range(NGEN)}) for v in vecs
    ]
    return UnitaryCoframe(*forms)


def _type_monomials(coframe: UnitaryCoframe, p: int, q: int) -> list[Multivector]:
    from itertools import combinations

    hol = list(coframe)
    anti = [s.conjugate() for s in hol]
    out = []
    for holo_ix in combinations(range(3), p):
        for anti_ix in combinations(range(3), q):
            term = Multivector.scalar(1)
            for i in holo_ix:
                term = term ^ hol[i]
            for i in anti_ix:
                term = term ^ anti[i]
            out.append(term)
    return out


def pq_project(a: Multivector, J: AlmostComplexStructure, p: int, q: int) -> Multivector:
    """Projection onto the (p, q)-type part relative to J."""
    k = p + q
    if not 0 <= p <= 3 or not 0 <= q <= 3:
        raise ValueError("type indices must lie in 0..3")
    part = a.grade(k)
    if part.is_zero:
        return Multivector.zero()
    coframe = unitary_coframe(J)
    norm_sq = 2.0**k
    out = Multivector.zero()
    for mono in _type_monomials(coframe, p, q):
        out = out + (inner(part, mono) / norm_sq) * mono
    return out


def fundamental_form_from_coframe(coframe: UnitaryCoframe) -> Multivector:
    """omega = (i/2) sum of sigma ^ conj(sigma) over the coframe."""
    total = Multivector.zero()
    for s in coframe:
        total = total + (s ^ s.conjugate())
    return (0.5j * total).real()


def nijenhuis(algebra, J: AlmostComplexStructure) -> np.ndarray:
    """Nijenhuis tensor N(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY].

    Returns the (6, 6, 6) array N[k, i, j] of frame components; the frame
    action of J on vectors is the transpose of its coframe matrix.
    """
    c = algebra.structure_constants
    b = J.matrix.T
    t1 = np.einsum("pi,qj,kpq->kij", b, b, c)
    t2 = c
    t3 = np.einsum("kl,pi,lpj->kij", b, b, c)
    t4 = np.einsum("kl,qj,liq->kij", b, b, c)
    return t1 - t2 - t3 - t4


def nijenhuis_norm(algebra, J: AlmostComplexStructure) -> float:
    return float(np.linalg.norm(nijenhuis(algebra, J)))
