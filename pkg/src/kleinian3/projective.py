"""Numeric geometry of CP^2: points, lines, unit-determinant lifts,
quasi-projective maps and the central projection.

Representatives are normalized so the largest-modulus coordinate equals 1
with the first such coordinate real positive; this makes quasi-projective
limits unique and hashable.  Projective equality is chordal at 1e-9,
singular values below 1e-10 count as rank deficiency.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BasePointOnLine,
    CoincidentLines,
    CoincidentPoints,
    ProjectingBasePoint,
    SingularMatrix,
)

TOL_EQUAL = 1e-9
TOL_RANK = 1e-10
TOL_DET = 1e-14


def normalize_homogeneous(v):
    """Scale so the largest-modulus entry is 1 (real positive phase)."""
    v = np.asarray(v, dtype=complex).ravel()
    mags = np.abs(v)
    top = mags.max()
    if top == 0 or not np.isfinite(top):
        raise ValueError("cannot normalize a zero or non-finite vector")
    idx = int(np.argmax(mags >= top * (1 - 1e-12)))
    return v / v[idx]


def chordal_distance_vectors(a, b) -> float:
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    inner = np.vdot(a, b)
    na2 = np.vdot(a, a).real
    nb2 = np.vdot(b, b).real
    val = 1.0 - (abs(inner) ** 2) / (na2 * nb2)
    return float(np.sqrt(max(val, 0.0)))


class ProjectivePoint:
    """Point of CP^2 held as a normalized coordinate triple."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = normalize_homogeneous(coords)

    @classmethod
    def e(cls, i):
        v = np.zeros(3, dtype=complex)
        v[i - 1] = 1.0
        return cls(v)

    def distance(self, other: "ProjectivePoint") -> float:
        return chordal_distance_vectors(self.coords, other.coords)

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.distance(other) <= TOL_EQUAL

    def __hash__(self):
        raise TypeError("use quantized_key for hashing points")

    def quantized_key(self, resolution=1e-8):
        return _quantize(self.coords, resolution)

    def __repr__(self):
        return "[" + " : ".join(f"{c:.6g}" for c in self.coords) + "]"


def _quantize(v, resolution):
    re = np.round(v.real / resolution).astype(np.int64)
    im = np.round(v.imag / resolution).astype(np.int64)
    return tuple(re) + tuple(im)


class ProjectiveLine:
    """Line {z : dual . z = 0}, dual coordinates normalized like a point."""

    __slots__ = ("dual",)

    def __init__(self, dual):
        self.dual = normalize_homogeneous(dual)

    @classmethod
    def through(cls, p: ProjectivePoint, q: ProjectivePoint):
        return line_through(p, q)

    def contains(self, p: ProjectivePoint, tol=TOL_EQUAL) -> bool:
        return self.distance_to_point(p) <= tol

    def distance_to_point(self, p: ProjectivePoint) -> float:
        """Chordal distance from p to the nearest point of the line:
        |dual . p| / (|dual| |p|)."""
        num = abs(np.dot(self.dual, p.coords))
        den = np.linalg.norm(self.dual) * np.linalg.norm(p.coords)
        return float(num / den)

    def __eq__(self, other):
        return (
            isinstance(other, ProjectiveLine)
            and chordal_distance_vectors(self.dual, other.dual) <= TOL_EQUAL
        )

    def quantized_key(self, resolution=1e-8):
        return _quantize(self.dual, resolution)

    def __repr__(self):
        return "line<" + " : ".join(f"{c:.6g}" for c in self.dual) + ">"


E1 = ProjectivePoint.e(1)
E2 = ProjectivePoint.e(2)
E3 = ProjectivePoint.e(3)
LINE_E2E3 = ProjectiveLine([1, 0, 0])
LINE_E1E3 = ProjectiveLine([0, 1, 0])
LINE_E1E2 = ProjectiveLine([0, 0, 1])


def normalize_lift(m) -> np.ndarray:
    """Scale a nonsingular 3x3 matrix to determinant 1 using the principal
    cube root of 1/det (argument in (-pi/3, pi/3])."""
    m = np.asarray(m, dtype=complex)
    det = np.linalg.det(m)
    if abs(det) < TOL_DET:
        raise SingularMatrix(f"|det| = {abs(det):.3e} below {TOL_DET}")
    ang = -np.angle(det)
    if ang <= -np.pi:
        ang += 2 * np.pi
    scale = abs(det) ** (-1.0 / 3.0) * np.exp(1j * ang / 3.0)
    return m * scale


def apply(g, z: ProjectivePoint) -> ProjectivePoint:
    """Image of a point under a projective transformation."""
    g = np.asarray(g, dtype=complex)
    return ProjectivePoint(g @ z.coords)


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> ProjectiveLine:
    if p == q:
        raise CoincidentPoints("no unique line through coincident points")
    return ProjectiveLine(np.cross(p.coords, q.coords))


def line_meet(l1: ProjectiveLine, l2: ProjectiveLine) -> ProjectivePoint:
    if l1 == l2:
        raise CoincidentLines("no unique meet of coincident lines")
    return ProjectivePoint(np.cross(l1.dual, l2.dual))


def projective_distance(p: ProjectivePoint, q: ProjectivePoint) -> float:
    """Chordal Fubini-Study distance in [0, 1]."""
    return p.distance(q)


def central_projection(
    p: ProjectivePoint, ell: ProjectiveLine, x: ProjectivePoint
) -> ProjectivePoint:
    """pi_{p,ell}(x) = ell meet <p, x>."""
    if ell.contains(p):
        raise BasePointOnLine("projection base point lies on the target line")
    if p == x:
        raise ProjectingBasePoint("cannot project the base point itself")
    return line_meet(ell, line_through(p, x))


class ProjectiveSubspace:
    """Kernel/image carrier: empty set, point, line, or all of CP^2."""

    __slots__ = ("dim", "point", "line")

    def __init__(self, dim, point=None, line=None):
        self.dim = dim  # -1 empty, 0 point, 1 line, 2 whole space
        self.point = point
        self.line = line

    @classmethod
    def empty(cls):
        return cls(-1)

    @classmethod
    def of_point(cls, p):
        return cls(0, point=p)

    @classmethod
    def of_line(cls, ell):
        return cls(1, line=ell)

    @classmethod
    def whole(cls):
        return cls(2)

    def __eq__(self, other):
        if not isinstance(other, ProjectiveSubspace) or self.dim != other.dim:
            return False
        if self.dim == 0:
            return self.point == other.point
        if self.dim == 1:
            return self.line == other.line
        return True

    def contains_point(self, p: ProjectivePoint, tol=TOL_EQUAL):
        if self.dim == 2:
            return True
        if self.dim == 1:
            return self.line.contains(p, tol)
        if self.dim == 0:
            return self.point.distance(p) <= tol
        return False

    def __repr__(self):
        if self.dim == -1:
            return "subspace<empty>"
        if self.dim == 0:
            return f"subspace<point {self.point!r}>"
        if self.dim == 1:
            return f"subspace<{self.line!r}>"
        return "subspace<CP^2>"


class QuasiProjectiveMap:
    """Nonzero 3x3 matrix mod scalar, possibly singular."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        m = np.asarray(entries, dtype=complex)
        self.entries = normalize_homogeneous(m.ravel()).reshape(3, 3)

    def rank(self, tol=TOL_RANK) -> int:
        s = np.linalg.svd(self.entries, compute_uv=False)
        return int(np.sum(s > tol))

    def kernel_image(self, tol=TOL_RANK):
        """(kernel, image) as projective subspaces via SVD."""
        u, s, vh = np.linalg.svd(self.entries)
        r = int(np.sum(s > tol))
        if r == 3:
            return ProjectiveSubspace.empty(), ProjectiveSubspace.whole()
        if r == 2:
            ker = ProjectiveSubspace.of_point(ProjectivePoint(vh[2].conj()))
            img = ProjectiveSubspace.of_line(
                ProjectiveLine(np.cross(u[:, 0], u[:, 1]))
            )
            return ker, img
        # rank 1
        kdual = np.conj(vh[0])  # row space spans the annihilator
        ker = ProjectiveSubspace.of_line(ProjectiveLine(np.cross(vh[1].conj(), vh[2].conj())))
        img = ProjectiveSubspace.of_point(ProjectivePoint(u[:, 0]))
        return ker, img

    def apply(self, z: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(self.entries @ z.coords)

    def to_unit_det(self) -> np.ndarray:
        return normalize_lift(self.entries)

    def distance(self, other: "QuasiProjectiveMap") -> float:
        return float(np.max(np.abs(self.entries - other.entries)))

    def __eq__(self, other):
        return isinstance(other, QuasiProjectiveMap) and self.distance(other) <= 1e-7

    def quantized_key(self, resolution=1e-8):
        return _quantize(self.entries.ravel(), resolution)

    def __repr__(self):
        rows = [
            "[" + ", ".join(f"{c:.4g}" for c in row) + "]" for row in self.entries
        ]
        return "QP(" + "; ".join(rows) + ")"


def qp_kernel_image(t, tol=TOL_RANK):
    """Kernel and image of a quasi-projective map given as matrix-like."""
    if not isinstance(t, QuasiProjectiveMap):
        t = QuasiProjectiveMap(t)
    return t.kernel_image(tol)
