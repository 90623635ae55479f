"""The moduli space of compatible positively-oriented almost complex structures.

The space is a complex projective 3-space.  Homogeneous coordinates come
from a fixed unitary 4-space V with an identification of its 2-vectors
with the complexified coframe:

    2 v01 = e1 + i e2,   2 v23 = e1 - i e2,
    2 v02 = e3 + i e4,   2 v31 = e3 - i e4,
    2 v03 = e5 + i e6,   2 v12 = e5 - i e6.

A coordinate line [u] determines the (1, 0) space {u ^ v} and hence a
structure J; the four coordinate vertices have fundamental forms

    w0 =  e12 + e34 + e56,      w1 =  e12 - e34 - e56,
    w2 = -e12 + e34 - e56,      w3 = -e12 - e34 + e56.

Alternatively a point is a rotation of the distinguished 4-space D =
<e1..e4> together with an angle: omega(P; a, b) with a^2 + b^2 = 1.  Named
subsets (edges, faces, equators, generalized edges, polar sets, the
almost-Kaehler 3-sphere, and two distinguished circles) are provided as
:class:`Locus` objects with a seeded sampler and a membership predicate.
"""

from __future__ import annotations

import re

import numpy as np

from nilherm.errors import InvalidInputError, NotInModuliError
from nilherm.exterior import (
    NGEN,
    Multivector,
    e,
    inner,
    linear_map_images,
    substitute,
)
from nilherm.hermitian import (
    AlmostComplexStructure,
    J_from_omega,
    holomorphic_projector,
    omega_from_J,
)

VERTEX_FORMS = (
    e(1, 2) + e(3, 4) + e(5, 6),
    e(1, 2) - e(3, 4) - e(5, 6),
    -e(1, 2) + e(3, 4) - e(5, 6),
    -e(1, 2) - e(3, 4) + e(5, 6),
)

#: rotation by 90 degrees in the <e2, e5> plane: e2 -> -e5, e5 -> e2
_PI_ROTATION = [e(1), -e(5), e(3), e(4), e(2), e(6)]

PI_VERTEX_FORMS = tuple(
    substitute(w, _PI_ROTATION) for w in VERTEX_FORMS
)

SELF_DUAL_BASIS = (e(1, 2) + e(3, 4), e(1, 3) + e(4, 2), e(1, 4) + e(2, 3))
ANTI_SELF_DUAL_BASIS = (e(1, 2) - e(3, 4), e(1, 3) - e(4, 2), e(1, 4) - e(2, 3))

# index pairs (k, l), k < l is implicit in sign handling below
_V_PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))
_V_TO_E = (
    (e(1) + 1j * e(2)) * 0.5,
    (e(3) + 1j * e(4)) * 0.5,
    (e(5) + 1j * e(6)) * 0.5,
    (e(1) - 1j * e(2)) * 0.5,
    (e(3) - 1j * e(4)) * 0.5,
    (e(5) - 1j * e(6)) * 0.5,
)


class Cp3Point:
    """Homogeneous coordinates, normalized to unit length with the first
    nonzero coordinate real and positive."""

    __slots__ = ("u",)

    def __init__(self, u):
        v = np.asarray(u, dtype=complex).reshape(4)
        n = np.linalg.norm(v)
        if n < 1e-12:
            raise InvalidInputError("zero vector is not a projective point")
        v = v / n
        for k in range(4):
            if abs(v[k]) > 1e-9:
                v = v * (abs(v[k]) / v[k])
                break
        v.setflags(write=False)
        object.__setattr__(self, "u", v)

    def __setattr__(self, *a):
        raise AttributeError("Cp3Point is immutable")

    def isclose(self, other: "Cp3Point", tol: float = 1e-9) -> bool:
        return bool(np.linalg.norm(self.u - other.u) <= tol)

    def __repr__(self):
        return f"Cp3Point({self.u.round(9).tolist()})"


class SO4Element:
    """Rotation of the distinguished coframe 4-space D = <e1..e4>."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = 1e-9):
        m = np.array(matrix, dtype=float)
        if m.shape != (4, 4):
            raise InvalidInputError("rotation must be a 4x4 matrix")
        if np.linalg.norm(m.T @ m - np.eye(4)) > tol:
            raise InvalidInputError("rotation must be orthogonal")
        if np.linalg.det(m) < 0:
            raise InvalidInputError("rotation must have determinant +1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, *a):
        raise AttributeError("SO4Element is immutable")

    def coframe_images(self) -> list[Multivector]:
        """f^i = P(e^i) for i = 1..4 as 1-forms, plus fixed e5, e6."""
        six = np.eye(NGEN)
        six[:4, :4] = self.matrix
        return linear_map_images(six)

    def apply(self, a: Multivector) -> Multivector:
        return substitute(a, self.coframe_images())

    def __repr__(self):
        return f"SO4Element({self.matrix.round(6).tolist()})"


# ---------------------------------------------------------------------------
# coordinates <-> structures


def _vcoords_from_phi(phi: np.ndarray) -> np.ndarray:
    """Convert e-frame 1-form coefficients to 2-vector coordinates on V."""
    c = phi
    return np.array(
        [
            c[0] - 1j * c[1],
            c[2] - 1j * c[3],
            c[4] - 1j * c[5],
            c[0] + 1j * c[1],
            c[2] + 1j * c[3],
            c[4] + 1j * c[5],
        ]
    )


def from_cp3(u: Cp3Point | "np.ndarray") -> AlmostComplexStructure:
    """Structure whose (1, 0) space is {u ^ v : v in V} under the pairing."""
    if not isinstance(u, Cp3Point):
        u = Cp3Point(u)
    uu = u.u
    skip = int(np.argmax(np.abs(uu)))  # u ^ v^j for the other j are independent
    cols = []
    for j in range(4):
        if j == skip:
            continue
        # expand u ^ v^j over the ordered pair basis
        coeffs = np.zeros(6, dtype=complex)
        for pos, (k, l) in enumerate(_V_PAIRS):
            if l == j:
                coeffs[pos] += uu[k]
            if k == j:
                coeffs[pos] -= uu[l]
        form = Multivector.zero()
        for pos in range(6):
            if coeffs[pos] != 0:
                form = form + coeffs[pos] * _V_TO_E[pos]
        cols.append(form.coeff_vector(1))
    phi = np.array(cols).T
    q, _ = np.linalg.qr(phi)
    jmat = -2.0 * np.imag(q @ q.conj().T)
    return AlmostComplexStructure(jmat)


def cp3_from_J(J: AlmostComplexStructure) -> Cp3Point:
    """Homogeneous coordinates of a positively-oriented structure.

    The (1, 0) space of a wrongly-oriented structure is not of the form
    {u ^ v}; those inputs raise :class:`NotInModuliError`.
    """
    proj = holomorphic_projector(J)
    sigma = []
    for k in range(NGEN):
        v = proj[:, k].copy()
        for w in sigma:
            v -= np.vdot(w, v) * w
        n = np.linalg.norm(v)
        if n > 1e-8:
            sigma.append(v / n)
        if len(sigma) == 3:
            break
    acc = np.zeros((4, 4), dtype=complex)
    for v in sigma:
        x = _vcoords_from_phi(v)
        psi = np.zeros((4, 4), dtype=complex)
        for pos, (k, l) in enumerate(_V_PAIRS):
            psi[k, l] += x[pos]
            psi[l, k] -= x[pos]
        uu, _, _ = np.linalg.svd(psi)
        plane = uu[:, :2]
        acc = acc + np.eye(4) - plane @ plane.conj().T
    vals, vecs = np.linalg.eigh(acc)
    if vals[0] > 1e-6:
        raise NotInModuliError(
            "structure has the wrong orientation (no common factor line)"
        )
    return Cp3Point(vecs[:, 0])


def omega_from_cp3(u) -> Multivector:
    return omega_from_J(from_cp3(u))


# ---------------------------------------------------------------------------
# the rotation-angle parametrization


def omega_pab(P: SO4Element, a: float, b: float) -> Multivector:
    """Fundamental form e5 ^ (a e6 + b f1) - f2 ^ (a f1 - b e6) + f3 ^ f4."""
    if abs(a * a + b * b - 1.0) > 1e-12:
        raise InvalidInputError("(a, b) must lie on the unit circle")
    if not isinstance(P, SO4Element):
        P = SO4Element(P)
    f = P.coframe_images()
    f1, f2, f3, f4 = f[0], f[1], f[2], f[3]
    return (
        (e(5) ^ (a * e(6) + b * f1))
        - (f2 ^ (a * f1 - b * e(6)))
        + (f3 ^ f4)
    )


def so4_blocks(P: SO4Element) -> tuple[np.ndarray, np.ndarray]:
    """Action of P on the self-dual and anti-self-dual 2-form bases.

    Columns are images: P(basis_j) = sum_i block[i, j] basis_i; both blocks
    are rotations and are unchanged under P -> -P.
    """
    if not isinstance(P, SO4Element):
        P = SO4Element(P)
    plus = np.zeros((3, 3))
    minus = np.zeros((3, 3))
    for j in range(3):
        img_p = P.apply(SELF_DUAL_BASIS[j])
        img_m = P.apply(ANTI_SELF_DUAL_BASIS[j])
        for i in range(3):
            plus[i, j] = complex(inner(img_p, SELF_DUAL_BASIS[i])).real / 2.0
            minus[i, j] = complex(inner(img_m, ANTI_SELF_DUAL_BASIS[i])).real / 2.0
    return plus, minus


# ---------------------------------------------------------------------------
# samplers


def sample_cp3(rng: np.random.Generator) -> Cp3Point:
    """Uniform point of the projective space (normalized complex Gaussian)."""
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return Cp3Point(z)


def _quat_matrices(p):
    w, x, y, z = p
    left = np.array(
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    )
    return left


def _quat_right(r):
    """Matrix of x -> x r on quaternion coordinates."""
    w, x, y, z = r
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


def sample_so4(rng: np.random.Generator) -> SO4Element:
    """Haar-uniform rotation from a pair of unit quaternions (x -> p x q*)."""
    p = rng.normal(size=4)
    q = rng.normal(size=4)
    p /= np.linalg.norm(p)
    q /= np.linalg.norm(q)
    qc = np.array([q[0], -q[1], -q[2], -q[3]])
    return SO4Element(_quat_matrices(p) @ _quat_right(qc))


def sample_circle(rng: np.random.Generator) -> tuple[float, float]:
    th = rng.uniform(0.0, 2.0 * np.pi)
    return float(np.cos(th)), float(np.sin(th))


# ---------------------------------------------------------------------------
# loci


class Locus:
    """A named subset with a seeded sampler and a membership predicate."""

    spec = "locus"

    def sample(self, rng: np.random.Generator) -> Multivector:
        raise NotImplementedError

    def contains(self, omega: Multivector, tol: float = 1e-8) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return f"<locus {self.spec}>"


class Vertex(Locus):
    def __init__(self, i: int):
        if not 0 <= i <= 3:
            raise InvalidInputError("vertex index must be 0..3")
        self.i = i
        self.form = VERTEX_FORMS[i]
        self.spec = f"vertex:w{i}"

    def sample(self, rng):
        return self.form

    def contains(self, omega, tol=1e-8):
        return (omega - self.form).norm() <= tol


class PiVertex(Locus):
    def __init__(self, i: int):
        if not 0 <= i <= 3:
            raise InvalidInputError("pivertex index must be 0..3")
        self.i = i
        self.form = PI_VERTEX_FORMS[i]
        self.spec = f"pivertex:{i}"

    def sample(self, rng):
        return self.form

    def contains(self, omega, tol=1e-8):
        return (omega - self.form).norm() <= tol


class GeneralizedEdge(Locus):
    """Points sigma + tau with tau on the compatible 2-sphere.

    sigma must be a decomposable unit 2-form e ^ f; tau ranges over the
    self-dual unit sphere of the orthogonal 4-space, oriented so that the
    total form is a positively-oriented moduli point.
    """

    def __init__(self, sigma: Multivector, spec: str | None = None):
        if sigma.degrees() != (2,) or not sigma.is_real:
            raise InvalidInputError("sigma must be a real 2-form")
        if abs(sigma.norm() - 1.0) > 1e-9:
            raise InvalidInputError("sigma must have unit norm")
        s = np.zeros((NGEN, NGEN))
        for mask, v in sigma.items():
            bits = [i for i in range(NGEN) if mask >> i & 1]
            s[bits[0], bits[1]] = complex(v).real
            s[bits[1], bits[0]] = -complex(v).real
        uu, sv, _ = np.linalg.svd(s)
        if sv[2] > 1e-9:
            raise InvalidInputError("sigma must be decomposable")
        plane = uu[:, :2]
        u1 = _one_form(plane[:, 0])
        u2 = _one_form(plane[:, 1])
        if complex(inner(sigma, u1 ^ u2)).real < 0:
            u1, u2 = u2, u1
        if (sigma - (u1 ^ u2)).norm() > 1e-9:
            raise InvalidInputError("sigma must be decomposable")
        h = [_one_form(uu[:, k]) for k in range(2, 6)]
        orient = sigma ^ (h[0] ^ h[1]) ^ (h[2] ^ h[3])
        if complex(orient.coeff(1, 2, 3, 4, 5, 6)).real < 0:
            h[2], h[3] = h[3], h[2]
        self.sigma = sigma
        self.sphere_basis = (
            (h[0] ^ h[1]) + (h[2] ^ h[3]),
            (h[0] ^ h[2]) + (h[3] ^ h[1]),
            (h[0] ^ h[3]) + (h[1] ^ h[2]),
        )
        self.spec = spec or "gen-edge:custom"

    def point(self, coords) -> Multivector:
        coords = np.asarray(coords, dtype=float)
        coords = coords / np.linalg.norm(coords)
        out = self.sigma
        for c, b in zip(coords, self.sphere_basis):
            out = out + float(c) * b
        return out

    def sphere_coords(self, omega) -> np.ndarray:
        return np.array(
            [complex(inner(omega, b)).real / 2.0 for b in self.sphere_basis]
        )

    def sample(self, rng):
        return self.point(rng.normal(size=3))

    def contains(self, omega, tol=1e-8):
        if abs(complex(inner(omega, self.sigma)).real - 1.0) > tol:
            return False
        rebuilt = self.sigma
        for c, b in zip(self.sphere_coords(omega), self.sphere_basis):
            rebuilt = rebuilt + float(c) * b
        return (omega - rebuilt).norm() <= tol


class Edge(Locus):
    """The projective line through two coordinate vertices.

    Sampling goes through homogeneous coordinates; membership uses the
    equivalent description as the generalized edge of (w_i + w_j) / 2.
    """

    def __init__(self, i: int, j: int):
        if not (0 <= i <= 3 and 0 <= j <= 3 and i != j):
            raise InvalidInputError("edge needs two distinct vertex indices 0..3")
        self.i, self.j = min(i, j), max(i, j)
        sigma = (VERTEX_FORMS[self.i] + VERTEX_FORMS[self.j]) * 0.5
        self.geometry = GeneralizedEdge(sigma)
        self.axis = (VERTEX_FORMS[self.i] - VERTEX_FORMS[self.j]) * 0.5
        self.spec = f"edge:{self.i},{self.j}"

    def sample(self, rng):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        u = np.zeros(4, dtype=complex)
        u[self.i], u[self.j] = z[0], z[1]
        return omega_from_cp3(u)

    def contains(self, omega, tol=1e-8):
        return self.geometry.contains(omega, tol)


class Face(Locus):
    """The projective plane of points whose i-th coordinate vanishes."""

    def __init__(self, i: int):
        if not 0 <= i <= 3:
            raise InvalidInputError("face index must be 0..3")
        self.i = i
        self.spec = f"face:{i}"

    def sample(self, rng):
        u = rng.normal(size=4) + 1j * rng.normal(size=4)
        u[self.i] = 0.0
        return omega_from_cp3(u)

    def contains(self, omega, tol=1e-8):
        try:
            u = cp3_from_J(J_from_omega(omega)).u
        except NotInModuliError:
            return False
        return abs(u[self.i]) <= tol


class Equator(Locus):
    """Points of an edge equidistant from its two vertices."""

    def __init__(self, i: int, j: int):
        edge = Edge(i, j)
        self.i, self.j = edge.i, edge.j
        self.geometry = edge.geometry
        axis = edge.geometry.sphere_coords(edge.axis)
        base = np.eye(3)[int(np.argmin(np.abs(axis)))]
        b2 = np.cross(axis, base)
        b2 /= np.linalg.norm(b2)
        b3 = np.cross(axis, b2)
        self._frame = (axis, b2, b3)
        self.spec = f"equator:{self.i},{self.j}"

    def point(self, theta: float) -> Multivector:
        axis, b2, b3 = self._frame
        return self.geometry.point(np.cos(theta) * b2 + np.sin(theta) * b3)

    def sample(self, rng):
        return self.point(rng.uniform(0.0, 2.0 * np.pi))

    def contains(self, omega, tol=1e-8):
        if not self.geometry.contains(omega, tol):
            return False
        gap = inner(omega, VERTEX_FORMS[self.i]) - inner(omega, VERTEX_FORMS[self.j])
        return abs(complex(gap)) <= 2 * tol


class PolarSet(Locus):
    """Points whose fundamental form is orthogonal to a fixed 2-form.

    Sampling draws chord endpoints of opposite pairing sign in homogeneous
    coordinates and bisects; the distribution is not the invariant measure
    but every sample satisfies the membership identity to ~1e-12.
    """

    def __init__(self, sigma: Multivector, spec: str | None = None):
        if sigma.degrees() != (2,) or sigma.norm() < 1e-12:
            raise InvalidInputError("polar set needs a nonzero 2-form")
        self.sigma = sigma
        self.spec = spec or "polar:custom"

    def _value(self, u) -> float:
        return complex(inner(omega_from_cp3(u), self.sigma)).real

    def sample(self, rng):
        for _ in range(200):
            u0, u1 = sample_cp3(rng).u, sample_cp3(rng).u
            ip = np.vdot(u0, u1)
            if abs(ip) > 1e-12:
                u1 = u1 * (ip.conjugate() / abs(ip))
            v0, v1 = self._value(u0), self._value(u1)
            if v0 == 0.0:
                return omega_from_cp3(u0)
            if v0 * v1 < 0:
                lo, hi = 0.0, 1.0
                for _ in range(100):
                    mid = 0.5 * (lo + hi)
                    um = (1 - mid) * u0 + mid * u1
                    vm = self._value(um)
                    if vm == 0.0:
                        break
                    if v0 * vm < 0:
                        hi = mid
                    else:
                        lo = mid
                return omega_from_cp3((1 - 0.5 * (lo + hi)) * u0 + 0.5 * (lo + hi) * u1)
        raise InvalidInputError("could not find a sign change for the polar set")

    def contains(self, omega, tol=1e-8):
        return abs(complex(inner(omega, self.sigma))) <= tol


class SphereS(Locus):
    """The 3-sphere of forms e5 ^ f1 + f2 ^ e6 + f3 ^ f4 with f2 = J3 f1.

    Equivalently omega(P; 0, 1) with the self-dual block of P fixing
    e12 + e34; on the complex Heisenberg algebra these are exactly the
    almost Kaehler structures.
    """

    spec = "sphere:S"

    _J3D = np.array(
        [
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
    )

    def point(self, f1: np.ndarray, angle: float = 0.0) -> Multivector:
        f1 = np.asarray(f1, dtype=float)
        f1 = f1 / np.linalg.norm(f1)
        f2 = self._J3D @ f1
        # orthonormal completion of the plane <f1, f2> inside D
        basis = [f1, f2]
        for seed in np.eye(4):
            v = seed - sum(np.dot(w, seed) * w for w in basis)
            n = np.linalg.norm(v)
            if n > 1e-8:
                basis.append(v / n)
            if len(basis) == 4:
                break
        f3 = np.cos(angle) * basis[2] + np.sin(angle) * basis[3]
        f4 = -np.sin(angle) * basis[2] + np.cos(angle) * basis[3]
        if np.linalg.det(np.column_stack([f1, f2, f3, f4])) < 0:
            f4 = -f4
        of = [_one_form(v) for v in (f1, f2, f3, f4)]
        return (e(5) ^ of[0]) + (of[1] ^ e(6)) + (of[2] ^ of[3])

    def sample(self, rng):
        return self.point(rng.normal(size=4), rng.uniform(0, 2 * np.pi))

    def contains(self, omega, tol=1e-8):
        if abs(complex(inner(omega, e(5, 6)))) > tol:
            return False
        dpart = Multivector(
            {m: v for m, v in omega.items() if (m & 0b110000) == 0}
        )
        # the 2-plane part f3 ^ f4 meets the self-dual axis in exactly r
        r = complex(inner(dpart, SELF_DUAL_BASIS[0])).real
        return abs(r - 1.0) <= tol

    def minus_pole(self, omega: Multivector) -> np.ndarray:
        """Anti-self-dual unit coordinates of the opposite-pole edge point.

        The opposite pole of the wire through omega = e5 ^ f1 + f2 ^ e6
        + f3 ^ f4 is -e56 - f1 ^ f2 + f3 ^ f4, an edge point whose sphere
        part is anti-self-dual.
        """
        f1 = np.array(
            [-complex(inner(omega, e(i) ^ e(5))).real for i in range(1, 5)]
        )
        f1 /= np.linalg.norm(f1)
        f2 = self._J3D @ f1
        f12 = _one_form(f1) ^ _one_form(f2)
        dpart = Multivector({m: v for m, v in omega.items() if (m & 0b110000) == 0})
        minus_part = dpart - f12
        return np.array(
            [complex(inner(minus_part, b)).real / 2.0 for b in ANTI_SELF_DUAL_BASIS]
        )


class CircleCS(Locus):
    """The circle -(A e3 + B e4) ^ e5 + (A e1 - B e2) ^ e6
    + (B e1 + A e2) ^ (-B e3 + A e4)."""

    spec = "circle:CS"
    _sign = 1.0

    def point(self, theta: float) -> Multivector:
        a, b = np.cos(theta), np.sin(theta)
        first = -self._sign * ((a * e(3) + b * e(4)) ^ e(5))
        second = (a * e(1) - b * e(2)) ^ e(6)
        third = self._sign * ((b * e(1) + a * e(2)) ^ (-b * e(3) + a * e(4)))
        return first + second + third

    def sample(self, rng):
        return self.point(rng.uniform(0.0, 2.0 * np.pi))

    def contains(self, omega, tol=1e-8):
        a = -self._sign * complex(omega.coeff(3, 5)).real
        b = -self._sign * complex(omega.coeff(4, 5)).real
        n = np.hypot(a, b)
        if n < 0.5:
            return False
        theta = np.arctan2(b / n, a / n)
        return (omega - self.point(theta)).norm() <= tol


class CircleCSPrime(CircleCS):
    """Mirror circle with the e5 and plane terms negated."""

    spec = "circle:CS'"
    _sign = -1.0


class Cp3Uniform(Locus):
    spec = "cp3:uniform"

    def sample(self, rng):
        return omega_from_cp3(sample_cp3(rng))

    def contains(self, omega, tol=1e-8):
        try:
            J_from_omega(omega)
        except NotInModuliError:
            return False
        return True


def _one_form(coeffs) -> Multivector:
    return Multivector(
        {1 << i: float(coeffs[i]) for i in range(len(coeffs)) if coeffs[i] != 0}
    )


# ---------------------------------------------------------------------------
# locus parsing


_TERM_RE = re.compile(r"([+-]?)(\d)(\d)")


def two_form_from_spec(text: str) -> Multivector:
    """Parse strings like '13+42', '-15' or '56' into 2-forms."""
    out = Multivector.zero()
    consumed = 0
    for m in _TERM_RE.finditer(text):
        if m.start() != consumed:
            raise InvalidInputError(f"cannot parse 2-form spec {text!r}")
        consumed = m.end()
        sgn = -1 if m.group(1) == "-" else 1
        out = out + sgn * e(int(m.group(2)), int(m.group(3)))
    if consumed != len(text) or out.is_zero:
        raise InvalidInputError(f"cannot parse 2-form spec {text!r}")
    return out


def parse_locus(text: str) -> Locus:
    """Build a locus from its command-line spec string."""
    try:
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        arg = arg.strip()
        if kind == "vertex":
            return Vertex(int(arg.lstrip("wW")))
        if kind == "pivertex":
            return PiVertex(int(arg))
        if kind == "edge":
            i, j = (int(x) for x in arg.split(","))
            return Edge(i, j)
        if kind == "face":
            return Face(int(arg))
        if kind == "equator":
            i, j = (int(x) for x in arg.split(","))
            return Equator(i, j)
        if kind == "gen-edge":
            return GeneralizedEdge(two_form_from_spec(arg), spec=f"gen-edge:{arg}")
        if kind == "polar":
            return PolarSet(two_form_from_spec(arg), spec=f"polar:{arg}")
        if kind == "sphere" and arg.upper() == "S":
            return SphereS()
        if kind == "circle":
            name = arg.upper().replace("PRIME", "'").replace("CSP", "CS'")
            if name == "CS":
                return CircleCS()
            if name == "CS'":
                return CircleCSPrime()
        if kind == "cp3" and arg == "uniform":
            return Cp3Uniform()
    except InvalidInputError:
        raise
    except (ValueError, TypeError) as ex:
        raise InvalidInputError(f"bad locus spec {text!r}: {ex}") from ex
    raise InvalidInputError(f"unknown locus spec {text!r}")


def locus_sample(locus: Locus, rng: np.random.Generator) -> Multivector:
    return locus.sample(rng)


def locus_contains(locus: Locus, omega: Multivector, tol: float = 1e-8) -> bool:
    return locus.contains(omega, tol)
