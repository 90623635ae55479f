"""Exterior algebra over a fixed oriented 6-dimensional inner-product space.

Multivectors are stored sparsely as a map from a 6-bit basis mask to a
scalar coefficient: bit ``i`` of the mask means the generator ``e^{i+1}``
is present in the basis monomial.  Signs are fixed once and for all by the
total order e1 < e2 < ... < e6 and counted by transpositions, so
``e(4, 2) == -e(2, 4)``.

Scalars may be ints, :class:`fractions.Fraction`, floats or complex
numbers.  Exact scalars are never thresholded, which keeps identities like
d(d(a)) = 0 exact for rational structure constants; float/complex entries
below ``DROP_TOL`` are dropped after arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping

import numpy as np

NGEN = 6
FULL_MASK = (1 << NGEN) - 1
#: magnitude below which inexact coefficients are dropped
DROP_TOL = 1e-14

_EXACT_TYPES = (int, Fraction)


def _is_exact(c) -> bool:
    return isinstance(c, _EXACT_TYPES)


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def _negligible(c) -> bool:
    if _is_exact(c):
        return c == 0
    return abs(c) < DROP_TOL


def mask_of(indices: Iterable[int]) -> int:
    """Bit mask of a set of generator indices (1-based, must be distinct)."""
    m = 0
    for i in indices:
        if not 1 <= i <= NGEN:
            raise ValueError(f"generator index out of range: {i}")
        bit = 1 << (i - 1)
        if m & bit:
            raise ValueError(f"repeated generator index: {i}")
        m |= bit
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    """Increasing generator indices present in a basis mask."""
    return tuple(i + 1 for i in range(NGEN) if mask >> i & 1)


def sign_merge(a: int, b: int) -> int:
    """Sign of e^A wedge e^B relative to e^{A union B}; 0 if they overlap.

    Counts the transpositions needed to sort the concatenation (A, B).
    """
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        # generators of `a` strictly above this bit must move past it
        swaps += (a >> low.bit_length()).bit_count()
        bb ^= low
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def basis_masks(k: int) -> tuple[int, ...]:
    """Masks of the degree-k basis monomials in ascending mask order.

    This ordering (lexicographic on the bitmask integer) is the wire
    format for coefficient vectors, e.g. the 15 degree-2 coefficients.
    """
    if not 0 <= k <= NGEN:
        raise ValueError(f"degree out of range: {k}")
    return tuple(sorted(mask_of(c) for c in combinations(range(1, NGEN + 1), k)))


@lru_cache(maxsize=None)
def _mask_position(k: int) -> dict[int, int]:
    return {m: p for p, m in enumerate(basis_masks(k))}


class Multivector:
    """Immutable element of the complexified exterior algebra on e1..e6."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c: dict[int, object] = {}
        if coeffs:
            for m, v in coeffs.items():
                if not 0 <= m <= FULL_MASK:
                    raise ValueError(f"invalid basis mask: {m}")
                if m in c:
                    v = c[m] + v
                if not _negligible(v):
                    c[m] = v
                elif m in c:
                    del c[m]
        object.__setattr__(self, "_c", c)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def zero() -> "Multivector":
        return _ZERO

    @staticmethod
    def scalar(c) -> "Multivector":
        return Multivector({0: c})

    @staticmethod
    def basis(mask: int, coeff=1) -> "Multivector":
        return Multivector({mask: coeff})

    @staticmethod
    def from_coeff_vector(k: int, vec) -> "Multivector":
        """Inverse of :meth:`coeff_vector` for the fixed degree-k ordering."""
        masks = basis_masks(k)
        vec = np.asarray(vec)
        if vec.shape != (len(masks),):
            raise ValueError(f"expected {len(masks)} coefficients for degree {k}")
        out = {}
        for m, v in zip(masks, vec.tolist()):
            out[m] = v
        return Multivector(out)

    # -- inspection ----------------------------------------------------------

    def items(self) -> Iterator[tuple[int, object]]:
        return iter(sorted(self._c.items()))

    def coeff(self, *indices: int):
        """Coefficient of the monomial e^{indices}, with the written order's sign."""
        sorted_ix = tuple(sorted(indices))
        sgn = _perm_sign(indices, sorted_ix)
        return sgn * self._c.get(mask_of(sorted_ix), 0)

    def coeff_vector(self, k: int) -> np.ndarray:
        """Degree-k coefficients as a complex vector in ascending-mask order."""
        masks = basis_masks(k)
        out = np.zeros(len(masks), dtype=complex)
        pos = _mask_position(k)
        for m, v in self._c.items():
            if m in pos:
                out[pos[m]] = complex(v)
        return out

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({_popcount(m) for m in self._c}))

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous multivector (0 for zero)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("multivector is not homogeneous")
        return degs[0] if degs else 0

    @property
    def is_real(self) -> bool:
        return all(
            not isinstance(v, complex) or abs(v.imag) < DROP_TOL
            for v in self._c.values()
        )

    # -- algebra -------------------------------------------------------------

    def grade(self, k: int) -> "Multivector":
        """Projection onto the degree-k part."""
        if not 0 <= k <= NGEN:
            raise ValueError(f"degree out of range: {k}")
        return Multivector({m: v for m, v in self._c.items() if _popcount(m) == k})

    def conjugate(self) -> "Multivector":
        return Multivector({m: _conj(v) for m, v in self._c.items()})

    def real(self) -> "Multivector":
        return Multivector(
            {m: v.real if isinstance(v, complex) else v for m, v in self._c.items()}
        )

    def imag(self) -> "Multivector":
        return Multivector(
            {m: v.imag for m, v in self._c.items() if isinstance(v, complex)}
        )

    def wedge(self, other: "Multivector") -> "Multivector":
        out: dict[int, object] = {}
        for ma, va in self._c.items():
            for mb, vb in other._c.items():
                s = sign_merge(ma, mb)
                if s == 0:
                    continue
                m = ma | mb
                term = va * vb if s > 0 else -(va * vb)
                if m in out:
                    out[m] = out[m] + term
                else:
                    out[m] = term
        return Multivector(out)

    def norm(self) -> float:
        """Euclidean (orthonormal-frame) norm."""
        return float(np.sqrt(sum(abs(v) ** 2 for v in self._c.values())))

    def isclose(self, other: "Multivector", tol: float = 1e-10) -> bool:
        return (self - other).norm() <= tol

    # -- operators -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        out = dict(self._c)
        for m, v in other._c.items():
            out[m] = out[m] + v if m in out else v
        return Multivector(out)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Multivector({m: -v for m, v in self._c.items()})

    def __mul__(self, c):
        if isinstance(c, Multivector):
            return NotImplemented
        return Multivector({m: v * c for m, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Multivector({m: v / c for m, v in self._c.items()})

    def __xor__(self, other):
        """``a ^ b`` is the wedge product."""
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.wedge(other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset((m, complex(v)) for m, v in self._c.items()))

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for m, v in sorted(self._c.items()):
            mono = "e" + "".join(str(i) for i in indices_of(m)) if m else "1"
            parts.append(f"({v})*{mono}" if m else f"({v})")
        return " + ".join(parts)


_ZERO = Multivector({})


def _popcount(m: int) -> int:
    return m.bit_count()


def _perm_sign(seq, sorted_seq) -> int:
    seq = list(seq)
    sgn = 1
    for i, want in enumerate(sorted_seq):
        j = seq.index(want, i)
        if j != i:
            seq[i], seq[j] = seq[j], seq[i]
            sgn = -sgn
    return sgn


def e(*indices: int) -> Multivector:
    """Basis monomial e^{i1 i2 ...} with the sign of the written order.

    ``e(1, 3)`` is the canonical e13 while ``e(4, 2)`` equals ``-e(2, 4)``.
    ``e()`` is the scalar 1.
    """
    if not indices:
        return Multivector.scalar(1)
    sorted_ix = tuple(sorted(indices))
    sgn = _perm_sign(indices, sorted_ix)
    return Multivector({mask_of(sorted_ix): sgn})


VOLUME = e(1, 2, 3, 4, 5, 6)
OMEGA0 = e(1, 2) + e(3, 4) + e(5, 6)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return a.wedge(b)


def grade(a: Multivector, k: int) -> Multivector:
    return a.grade(k)


# -- metric-dependent operations ---------------------------------------------


def _check_gram(gram) -> np.ndarray | None:
    """Validate an SPD gram matrix (metric on generators); None = identity."""
    if gram is None:
        return None
    g = np.asarray(gram, dtype=float)
    if g.shape != (NGEN, NGEN) or not np.allclose(g, g.T, atol=1e-12):
        raise ValueError("gram must be a symmetric 6x6 matrix")
    if np.allclose(g, np.eye(NGEN), atol=1e-14):
        return None
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError:
        raise ValueError("gram must be positive definite") from None
    return g


def substitute(a: Multivector, images: list[Multivector]) -> Multivector:
    """Algebra map sending generator e^i to ``images[i-1]``, extended by wedge."""
    if len(images) != NGEN:
        raise ValueError("need images for all 6 generators")
    out = Multivector.zero()
    for m, v in a._c.items():
        term = Multivector.scalar(1)
        for i in indices_of(m):
            term = term.wedge(images[i - 1])
        out = out + term * v
    return out


def linear_map_images(matrix) -> list[Multivector]:
    """1-form images e^i -> sum_j matrix[j, i] e^j of a matrix on the coframe."""
    mat = np.asarray(matrix)
    return [
        Multivector({1 << j: mat[j, i] for j in range(NGEN) if mat[j, i] != 0})
        for i in range(NGEN)
    ]


class OrthonormalFrame:
    """Coordinate change between a gram metric and an orthonormal coframe.

    With ``G = L L^T`` the forms ``f^a = sum_i L[i, a] e^i`` are an
    orthonormal coframe for the metric with gram ``G`` on generators
    (vectors), and coefficient vectors transform by ``L^{-1}``.
    """

    def __init__(self, gram):
        g = _check_gram(gram)
        self.gram = g
        if g is None:
            self._to = None
            self._back = None
        else:
            L = np.linalg.cholesky(g)
            self._to = linear_map_images(np.linalg.inv(L))  # e^i in the f-frame
            self._back = linear_map_images(L)  # f^a in the e-frame

    @property
    def is_identity(self) -> bool:
        return self.gram is None

    def to_orthonormal(self, a: Multivector) -> Multivector:
        return a if self._to is None else substitute(a, self._to)

    def from_orthonormal(self, a: Multivector) -> Multivector:
        return a if self._back is None else substitute(a, self._back)


def star(a: Multivector, gram=None) -> Multivector:
    """Hodge star fixed by sigma ^ star(tau) = inner(sigma, tau) * volume.

    Complex-linear; the volume form is the metric's own unit 6-form, which
    is e123456 for the identity gram.
    """
    frame = OrthonormalFrame(gram)
    if not frame.is_identity:
        return frame.from_orthonormal(star(frame.to_orthonormal(a)))
    out: dict[int, object] = {}
    for m, v in a._c.items():
        comp = FULL_MASK ^ m
        s = sign_merge(m, comp)
        out[comp] = out.get(comp, 0) + (v if s > 0 else -v)
    return Multivector(out)


def inner(a: Multivector, b: Multivector, gram=None):
    """Hermitian inner product; sesquilinear (conjugate-linear in ``b``).

    Basis monomials of an orthonormal coframe are orthonormal; forms of
    different degree are orthogonal by convention.
    """
    frame = OrthonormalFrame(gram)
    if not frame.is_identity:
        a = frame.to_orthonormal(a)
        b = frame.to_orthonormal(b)
    total = 0
    for m, v in a._c.items():
        w = b._c.get(m)
        if w is not None:
            total = total + v * _conj(w)
    return total


def volume_form(gram=None) -> Multivector:
    """Unit-volume 6-form of the metric (e123456 for the identity gram)."""
    frame = OrthonormalFrame(gram)
    return frame.from_orthonormal(VOLUME)


def evaluate(a: Multivector, vector_indices: tuple[int, ...]):
    """Evaluate a k-form on the listed orthonormal frame vectors.

    Uses the determinant convention: (e^i ^ e^j)(X_i, X_j) = 1 for i < j.
    """
    k = len(vector_indices)
    if len(set(vector_indices)) != k:
        return 0
    sorted_ix = tuple(sorted(vector_indices))
    sgn = _perm_sign(vector_indices, sorted_ix)
    return sgn * a._c.get(mask_of(sorted_ix), 0)


@lru_cache(maxsize=None)
def wedge_tensor(p: int, q: int) -> np.ndarray:
    """Structure tensor of the wedge Lambda^p x Lambda^q -> Lambda^{p+q}.

    Entry [i, j, k] is the coefficient of the k-th (p+q)-monomial in the
    product of the i-th p-monomial with the j-th q-monomial, reusing the
    Multivector product so there is a single source of sign truth.
    """
    if p + q > NGEN:
        raise ValueError("degree overflow")
    pm, qm, rm = basis_masks(p), basis_masks(q), basis_masks(p + q)
    pos = _mask_position(p + q)
    out = np.zeros((len(pm), len(qm), len(rm)))
    for i, ma in enumerate(pm):
        for j, mb in enumerate(qm):
            prod = Multivector.basis(ma).wedge(Multivector.basis(mb))
            for m, v in prod._c.items():
                out[i, j, pos[m]] = float(v)
    return out
