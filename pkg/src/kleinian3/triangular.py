"""Upper-triangular toolkit: diagonal-ratio morphisms, the control morphism,
the affine morphism, F-classes, core elements and the invariant pencil.

Operations accept either numpy 3x3 arrays (numeric) or ExactMatrix lifts;
the formulas are shared, only zero tests dispatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EmptyCore, IdentityElement, NotUpperTriangular
from .exact import ExactComplex, ExactMatrix
from .projective import (
    E1,
    ProjectivePoint,
    normalize_homogeneous,
)

F1, F2, F3, F4 = "F1", "F2", "F3", "F4"

_ZERO_ENTRY_TOL = 1e-12


def _is_exact(g):
    return isinstance(g, ExactMatrix)


def _entry(g, i, j):
    return g.entry(i, j) if _is_exact(g) else g[i, j]


def _entry_is_zero(v):
    if isinstance(v, ExactComplex):
        return v.is_zero()
    return abs(v) <= _ZERO_ENTRY_TOL


def require_upper_triangular(g):
    if _is_exact(g):
        if not g.is_upper_triangular():
            raise NotUpperTriangular("exact lift has entries below the diagonal")
        return g
    g = np.asarray(g, dtype=complex)
    scale = max(float(np.max(np.abs(g))), 1.0)
    if max(abs(g[1, 0]), abs(g[2, 0]), abs(g[2, 1])) > _ZERO_ENTRY_TOL * scale:
        raise NotUpperTriangular("entries below the diagonal exceed tolerance")
    return g


def is_projective_identity(g) -> bool:
    if _is_exact(g):
        return g.is_scalar()
    g = np.asarray(g, dtype=complex)
    n = normalize_homogeneous(g.ravel()).reshape(3, 3)
    return bool(np.max(np.abs(n - np.eye(3))) <= 1e-10)


def lambda_(g, which: int):
    """Diagonal-ratio morphisms: 12 -> a11/a22, 23 -> a22/a33, 13 -> a11/a33."""
    g = require_upper_triangular(g)
    d = [_entry(g, i, i) for i in range(3)]
    if which == 12:
        return d[0] / d[1]
    if which == 23:
        return d[1] / d[2]
    if which == 13:
        return d[0] / d[2]
    raise ValueError("which must be one of 12, 23, 13")


def control_pi(g) -> np.ndarray:
    """Control morphism for p = e1, ell = <e2,e3>: the lower right block,
    scaled to determinant 1.  A PSL(2,C) representative (sign ambiguity)."""
    g = require_upper_triangular(g)
    if _is_exact(g):
        g = g.numpy()
    block = np.array([[g[1, 1], g[1, 2]], [0.0, g[2, 2]]], dtype=complex)
    det = block[0, 0] * block[1, 1]
    return block / np.sqrt(det)


def control_translation(g):
    """For g with lambda_23(g) = 1 the control map is z -> z + t; return t.

    Exact input returns an ExactComplex, numeric a complex number.
    """
    g = require_upper_triangular(g)
    return _entry(g, 1, 2) / _entry(g, 2, 2)


def pi_star(g):
    """Affine morphism z -> a z + b with a = g11/g22, b = g12/g22."""
    g = require_upper_triangular(g)
    return (_entry(g, 0, 0) / _entry(g, 1, 1), _entry(g, 0, 1) / _entry(g, 1, 1))


def f_class(g) -> str:
    """Zero-pattern class from entries (1,2) and (2,3)."""
    g = require_upper_triangular(g)
    if is_projective_identity(g):
        raise IdentityElement("the identity has no F-class")
    z12 = _entry_is_zero(_entry(g, 0, 1))
    z23 = _entry_is_zero(_entry(g, 1, 2))
    if z12 and z23:
        return F1
    if not z12 and z23:
        return F2
    if z12 and not z23:
        return F3
    return F4


def commutes(g, h, tol=1e-10) -> bool:
    """True iff the commutator is projectively trivial."""
    if _is_exact(g) and _is_exact(h):
        comm = (g @ h) @ (h @ g).inverse()
        return comm.is_scalar()
    g = np.asarray(g, dtype=complex)
    h = np.asarray(h, dtype=complex)
    gh = g @ h
    hg = h @ g
    comm = gh @ np.linalg.inv(hg)
    n = normalize_homogeneous(comm.ravel()).reshape(3, 3)
    return bool(np.max(np.abs(n - np.eye(3))) <= tol)


@dataclass(frozen=True)
class CoreElement:
    """g_{x,y} = [[1,x,y],[0,1,0],[0,0,1]]; x, y complex or ExactComplex."""

    x: object
    y: object

    def matrix(self, basis=None):
        if isinstance(self.x, ExactComplex):
            b = self.x.basis
            z = ExactComplex.zero(b)
            o = ExactComplex.one(b)
            return ExactMatrix(b, [[o, self.x, self.y], [z, o, z], [z, z, o]])
        return np.array(
            [[1.0, self.x, self.y], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            dtype=complex,
        )

    def is_identity(self):
        return _entry_is_zero(self.x) and _entry_is_zero(self.y)

    def pencil_direction(self) -> Optional[ProjectivePoint]:
        """Direction [0 : -y : x] on <e2,e3> of the line this element fills."""
        if self.is_identity():
            return None
        x = self.x.value() if isinstance(self.x, ExactComplex) else complex(self.x)
        y = self.y.value() if isinstance(self.y, ExactComplex) else complex(self.y)
        return ProjectivePoint([0.0, -y, x])


def core_conjugate(gamma, g: CoreElement) -> CoreElement:
    """Closed form of gamma g_{x,y} gamma^{-1} for upper-triangular gamma:
    g_{(g11/g22) x, (g11/(g22 g33))(g22 y - g23 x)}."""
    gamma = require_upper_triangular(gamma)
    d11, d22, d33 = (_entry(gamma, i, i) for i in range(3))
    c23 = _entry(gamma, 1, 2)
    x, y = g.x, g.y
    new_x = d11 / d22 * x
    new_y = d11 / (d22 * d33) * (d22 * y - c23 * x)
    return CoreElement(new_x, new_y)


def pencil_line_parameters(gamma, x, y):
    """The pencil line ell_{x,y} maps to ell_{g33 x, g22 y - g23 x}."""
    gamma = require_upper_triangular(gamma)
    d22, d33 = _entry(gamma, 1, 1), _entry(gamma, 2, 2)
    c23 = _entry(gamma, 1, 2)
    return d33 * x, d22 * y - c23 * x


CLOSURE_POINT = "point"
CLOSURE_REAL_CIRCLE = "real_circle"
CLOSURE_FULL_LINE = "full_line"


@dataclass
class PencilDescription:
    """Closure of the core pencil: lines through e1 with the given
    directions on <e2,e3>; closure_kind is the trichotomy verdict."""

    base_point: ProjectivePoint
    directions: list
    closure_kind: str
    direction_vectors: list  # (x, y) pairs as complex numbers


def core_pencil(core_gens) -> PencilDescription:
    """Trichotomy of the closure of the Z-span of the (x, y) vectors:
    single direction, a real circle of directions, or the whole line."""
    gens = [g for g in core_gens if not g.is_identity()]
    if not gens:
        raise EmptyCore("need at least one non-identity core generator")
    vecs = []
    for g in gens:
        x = g.x.value() if isinstance(g.x, ExactComplex) else complex(g.x)
        y = g.y.value() if isinstance(g.y, ExactComplex) else complex(g.y)
        vecs.append((x, y))
    arr = np.array(vecs, dtype=complex)
    c_rank = int(
        np.sum(np.linalg.svd(arr, compute_uv=False) > 1e-10 * max(1.0, np.abs(arr).max()))
    )
    real_arr = np.hstack([arr.real, arr.imag]).astype(float)
    gram_scale = max(1.0, float(np.abs(real_arr).max()))
    r_rank = int(
        np.sum(np.linalg.svd(real_arr, compute_uv=False) > 1e-10 * gram_scale)
    )
    if c_rank <= 1:
        kind = CLOSURE_POINT
    elif r_rank <= 2:
        kind = CLOSURE_REAL_CIRCLE
    else:
        kind = CLOSURE_FULL_LINE
    dirs = []
    for g in gens:
        d = g.pencil_direction()
        if d is not None and not any(d == e for e in dirs):
            dirs.append(d)
    return PencilDescription(E1, dirs, kind, vecs)
