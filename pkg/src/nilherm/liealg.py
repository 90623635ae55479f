"""Six-dimensional Lie algebras presented dually by d on generator 1-forms.

The differential is extended to all degrees by the graded Leibniz rule;
structure constants stay exact (ints / Fractions) unless a metric
orthonormalization or a sampled input introduces floats.  Rank
computations pick exact elimination when every entry is exact, and
partial-pivoted elimination with a relative 1e-10 threshold otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from nilherm.errors import InvalidInputError
from nilherm.exterior import (
    NGEN,
    Multivector,
    OrthonormalFrame,
    _is_exact,
    basis_masks,
    e,
    indices_of,
    linear_map_images,
    substitute,
)

JACOBI_TOL = 1e-10
RANK_TOL = 1e-10


@dataclass(frozen=True)
class CohomologyProfile:
    """Betti numbers and echelonized bases of ker d (degree 1) and im d."""

    betti: tuple[int, ...]
    kernel_basis: tuple[Multivector, ...]
    image_basis: tuple[Multivector, ...]
    step: int | None

    def to_dict(self) -> dict:
        return {
            "betti": list(self.betti),
            "kernel_basis": [[str(c) for c in b.coeff_vector(1)] for b in self.kernel_basis],
            "image_basis": [[str(c) for c in b.coeff_vector(2)] for b in self.image_basis],
            "step": self.step,
        }


class LieAlgebra:
    """Lie algebra given by the value of d on the six generator 1-forms.

    Parameters
    ----------
    name:
        Label used in reports.
    d_gen:
        Six degree-2 multivectors, ``d_gen[i]`` being d(e^{i+1}).
    gram:
        Optional SPD metric on generators (vectors); None means the
        generators are an orthonormal coframe already.
    dist:
        Indices of the distinguished closed 4-dimensional subspace used by
        the rotation action; the standard choice is (1, 2, 3, 4).
    """

    def __init__(self, name, d_gen, gram=None, dist=(1, 2, 3, 4), check=True):
        d_gen = tuple(d_gen)
        if len(d_gen) != NGEN:
            raise InvalidInputError("d must be given on all 6 generators")
        for dg in d_gen:
            if not dg.is_zero and dg.degrees() != (2,):
                raise InvalidInputError("d of a generator must be a 2-form")
            if not dg.is_real:
                raise InvalidInputError("structure constants must be real")
        self.name = str(name)
        self.d_gen = d_gen
        self.gram = None if gram is None else np.asarray(gram, dtype=float)
        if self.gram is not None:
            OrthonormalFrame(self.gram)  # validates SPD
            if np.allclose(self.gram, np.eye(NGEN), atol=1e-14):
                self.gram = None
        self.dist = tuple(dist)
        if sorted(self.dist) != sorted(set(self.dist)) or len(self.dist) != 4:
            raise InvalidInputError("dist must list 4 distinct generator indices")
        self._d_cache: dict[int, Multivector] = {}
        self._dmat_cache: dict[int, np.ndarray] = {}
        self._ortho = None
        self._sc = None
        if check:
            bad = max((self.d(self.d(e(i))).norm() for i in range(1, NGEN + 1)))
            if bad > JACOBI_TOL:
                raise InvalidInputError(
                    f"d is not a differential (d(d(e^i)) has norm {bad:.2e})"
                )

    # -- the differential ------------------------------------------------

    def _d_basis(self, mask: int) -> Multivector:
        cached = self._d_cache.get(mask)
        if cached is not None:
            return cached
        out = Multivector.zero()
        ix = indices_of(mask)
        for pos, i in enumerate(ix):
            di = self.d_gen[i - 1]
            if di.is_zero:
                continue
            before = e(*ix[:pos]) if pos else Multivector.scalar(1)
            after = e(*ix[pos + 1 :]) if pos + 1 < len(ix) else Multivector.scalar(1)
            term = before ^ di ^ after
            out = out + ((-1) ** pos) * term
        self._d_cache[mask] = out
        return out

    def d(self, a: Multivector) -> Multivector:
        """Exterior derivative, extended by the graded Leibniz rule."""
        out = Multivector.zero()
        for mask, c in a.items():
            if mask == 0:
                continue
            out = out + c * self._d_basis(mask)
        return out

    def d_matrix(self, k: int) -> np.ndarray:
        """Float matrix of d: degree k -> k+1 in ascending-mask coordinates."""
        if k in self._dmat_cache:
            return self._dmat_cache[k]
        src = basis_masks(k)
        dim_out = len(basis_masks(k + 1)) if k < NGEN else 0
        mat = np.zeros((dim_out, len(src)))
        for j, m in enumerate(src):
            if k < NGEN:
                mat[:, j] = self._d_basis(m).coeff_vector(k + 1).real
        self._dmat_cache[k] = mat
        return mat

    def _d_rows_exact(self, k: int):
        """Rows of d on degree k as exact Fractions, or None if floats present."""
        if not self.is_exact:
            return None
        rows = []
        for m in basis_masks(k):
            img = self._d_basis(m)
            row = [Fraction(0)] * len(basis_masks(k + 1))
            pos = {mm: p for p, mm in enumerate(basis_masks(k + 1))}
            for mm, c in img.items():
                row[pos[mm]] = Fraction(c)
            rows.append(row)
        return rows

    @property
    def is_exact(self) -> bool:
        return all(
            all(_is_exact(c) for _, c in dg.items()) for dg in self.d_gen
        )

    # -- invariants --------------------------------------------------------

    @property
    def structure_constants(self) -> np.ndarray:
        """c[k, i, j] with [X_i, X_j] = sum_k c[k, i, j] X_k (0-based)."""
        if self._sc is None:
            c = np.zeros((NGEN, NGEN, NGEN))
            for k in range(NGEN):
                for m, v in self.d_gen[k].items():
                    i, j = indices_of(m)
                    val = float(v)
                    # d e^k (X_i, X_j) = -e^k([X_i, X_j])
                    c[k, i - 1, j - 1] = -val
                    c[k, j - 1, i - 1] = val
            self._sc = c
        return self._sc

    def cohomology(self) -> CohomologyProfile:
        """Betti numbers with echelonized kernel (degree 1) and image bases."""
        self._require_differential()
        ranks = []
        for k in range(NGEN + 1):
            exact = self._d_rows_exact(k) if k < NGEN else None
            if k == NGEN:
                ranks.append(0)
            elif exact is not None:
                ranks.append(_exact_rref(exact)[0])
            else:
                ranks.append(_float_rank(self.d_matrix(k).T))
        betti = []
        for k in range(NGEN + 1):
            dim = len(basis_masks(k))
            ker = dim - ranks[k]
            im_prev = ranks[k - 1] if k > 0 else 0
            betti.append(ker - im_prev)
        kernel = self._kernel_one_forms()
        image = self._image_two_forms()
        return CohomologyProfile(tuple(betti), tuple(kernel), tuple(image), self.nilpotency_step())

    def _require_differential(self):
        bad = max(self.d(self.d(e(i))).norm() for i in range(1, NGEN + 1))
        if bad > JACOBI_TOL:
            raise InvalidInputError("d squared is nonzero; not a Lie algebra differential")

    def _kernel_one_forms(self) -> list[Multivector]:
        exact = self._d_rows_exact(1)
        if exact is not None:
            rows = [[exact[i][r] for i in range(NGEN)] for r in range(len(exact[0]))]
            null = _nullspace_exact(rows)
        else:
            null = _nullspace_float(self.d_matrix(1))
        return [Multivector.from_coeff_vector(1, v) for v in null]

    def _image_two_forms(self) -> list[Multivector]:
        exact = self._d_rows_exact(1)
        if exact is not None:
            _, rows = _exact_rref(exact)
            return [
                Multivector.from_coeff_vector(2, [float(x) for x in r]) for r in rows
            ]
        mat = self.d_matrix(1).T
        _, rows = _float_rref(mat)
        return [Multivector.from_coeff_vector(2, r) for r in rows]

    def nilpotency_step(self) -> int | None:
        """Length of the dual ascending filtration; None when not nilpotent.

        V_1 = ker d and V_{s+1} = {a : d a in Lambda^2 V_s}; the algebra is
        nilpotent of step s when V_s first reaches the whole space.
        """
        self._require_differential()
        d1 = self.d_matrix(1)
        v_rows = [w.coeff_vector(1).real for w in self._kernel_one_forms()]
        step = 1
        while True:
            if len(v_rows) == NGEN:
                return step
            vs = [Multivector.from_coeff_vector(1, r) for r in v_rows]
            lam2 = [
                (vs[a] ^ vs[b]).coeff_vector(2).real
                for a in range(len(vs))
                for b in range(a + 1, len(vs))
            ]
            # a is in the next filtration level iff d(a) lies in Lambda^2 V
            proj = np.eye(d1.shape[0])
            if lam2:
                u, s, _ = np.linalg.svd(np.array(lam2).T, full_matrices=False)
                cols = u[:, s > RANK_TOL]
                proj = proj - cols @ cols.T
            null = _nullspace_float(proj @ d1)
            if len(null) == len(v_rows):
                return None
            v_rows = null
            step += 1

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_step() is not None

    # -- frames and conjugation ---------------------------------------------

    def orthonormal_frame(self) -> OrthonormalFrame:
        return OrthonormalFrame(self.gram)

    def orthonormalized(self) -> "LieAlgebra":
        """Equivalent algebra whose generators are an orthonormal coframe."""
        if self.gram is None:
            return self
        if self._ortho is None:
            frame = self.orthonormal_frame()
            L = np.linalg.cholesky(self.gram)
            d_new = []
            for a in range(NGEN):
                # d f^a = sum_i L[i, a] d e^i, transported to the f-frame
                img = Multivector.zero()
                for i in range(NGEN):
                    if L[i, a] != 0:
                        img = img + float(L[i, a]) * self.d_gen[i]
                d_new.append(frame.to_orthonormal(img))
            self._ortho = LieAlgebra(self.name, d_new, gram=None, dist=self.dist)
        return self._ortho

    def conjugated_d(self, P, a: Multivector) -> Multivector:
        """d conjugated by a rotation of the distinguished subspace.

        Returns P^{-1}(d(P(a))) where P acts on the coframe span of
        ``dist`` and fixes the remaining generators.
        """
        mat = _rotation_matrix6(P, self.dist)
        fwd = linear_map_images(mat)
        bwd = linear_map_images(mat.T)
        return substitute(self.d(substitute(a, fwd)), bwd)

    def conjugated(self, P) -> "LieAlgebra":
        """Algebra whose differential is the conjugated one."""
        d_new = [self.conjugated_d(P, e(i)) for i in range(1, NGEN + 1)]
        return LieAlgebra(f"{self.name}^P", d_new, gram=self.gram, dist=self.dist)

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        dd = {}
        for i in range(NGEN):
            entries = []
            for m, c in self.d_gen[i].items():
                a, b = indices_of(m)
                entries.append([a, b, _coeff_to_json(c)])
            if entries:
                dd[str(i + 1)] = entries
        out = {"name": self.name, "d": dd}
        if self.gram is not None:
            out["gram"] = self.gram.tolist()
        if self.dist != (1, 2, 3, 4):
            out["D"] = list(self.dist)
        return out

    @staticmethod
    def from_dict(data: dict) -> "LieAlgebra":
        try:
            name = data.get("name", "custom")
            d_gen = [Multivector.zero()] * NGEN
            for key, entries in data.get("d", {}).items():
                i = int(key)
                if not 1 <= i <= NGEN:
                    raise InvalidInputError(f"bad generator index {key!r}")
                total = Multivector.zero()
                for a, b, c in entries:
                    total = total + _coeff_from_json(c) * e(int(a), int(b))
                d_gen[i - 1] = total
            gram = data.get("gram")
            dist = tuple(data.get("D", (1, 2, 3, 4)))
            return LieAlgebra(name, d_gen, gram=gram, dist=dist)
        except InvalidInputError:
            raise
        except (ValueError, TypeError, KeyError) as ex:
            raise InvalidInputError(f"malformed algebra description: {ex}") from ex

    @staticmethod
    def load(path) -> "LieAlgebra":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as ex:
            raise InvalidInputError(f"cannot read algebra file: {ex}") from ex
        return LieAlgebra.from_dict(data)

    def __repr__(self):
        return f"LieAlgebra({self.name!r})"


def _coeff_to_json(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, complex):
        return c.real
    return c


def _coeff_from_json(c):
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, (int, float)):
        return Fraction(c) if float(c).is_integer() else float(c)
    raise InvalidInputError(f"bad coefficient {c!r}")


def _rotation_matrix6(P, dist=(1, 2, 3, 4)) -> np.ndarray:
    """Extend a 4x4 rotation of the distinguished coframe block to 6x6."""
    mat = np.asarray(getattr(P, "matrix", P), dtype=float)
    if mat.shape == (NGEN, NGEN):
        return mat
    if mat.shape != (4, 4):
        raise InvalidInputError("rotation must be 4x4 or 6x6")
    out = np.eye(NGEN)
    ix = [i - 1 for i in dist]
    for r, i in enumerate(ix):
        for c, j in enumerate(ix):
            out[i, j] = mat[r, c]
    return out


# -- linear algebra helpers ----------------------------------------------------


def _exact_rref(rows) -> tuple[int, list[list[Fraction]]]:
    """Row-reduce a list of Fraction rows; returns (rank, echelon rows)."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return r, rows[:r]


def _float_rref(mat: np.ndarray) -> tuple[int, list[np.ndarray]]:
    """Partial-pivoted elimination with a relative threshold."""
    a = np.array(mat, dtype=float)
    if a.size == 0:
        return 0, []
    scale = max(np.abs(a).max(), 1.0)
    r = 0
    rows = []
    for c in range(a.shape[1]):
        if r >= a.shape[0]:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= RANK_TOL * scale:
            continue
        a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(a.shape[0]):
            if i != r:
                a[i] -= a[i, c] * a[r]
        r += 1
    rows = [a[i] for i in range(r)]
    return r, rows


def _float_rank(mat: np.ndarray) -> int:
    return _float_rref(mat)[0]


def _nullspace_exact(rows) -> list[np.ndarray]:
    """Basis of {x : M x = 0} for M given by its Fraction rows."""
    ncols = len(rows[0]) if rows else 0
    _, red = _exact_rref(rows)
    pivots = [next(i for i, x in enumerate(row) if x != 0) for row in red]
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(np.array([float(x) for x in v]))
    return basis


def _nullspace_float(mat: np.ndarray) -> list[np.ndarray]:
    """Echelonized basis of {x : mat @ x = 0}."""
    ncols = mat.shape[1]
    _, red = _float_rref(np.array(mat, dtype=float))
    pivots = [int(np.argmax(np.abs(r) > 0.5)) for r in red]
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = np.zeros(ncols)
        v[f] = 1.0
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def d(algebra: LieAlgebra, a: Multivector) -> Multivector:
    return algebra.d(a)


def cohomology(algebra: LieAlgebra) -> CohomologyProfile:
    return algebra.cohomology()


def nilpotency_step(algebra: LieAlgebra) -> int | None:
    return algebra.nilpotency_step()


def conjugated_d(algebra: LieAlgebra, P, a: Multivector) -> Multivector:
    return algebra.conjugated_d(P, a)
