"""Element taxonomy for PSL(3,C) via eigen-structure.

Classes: elliptic, parabolic, loxodromic; loxodromic subtypes split by the
eigenvalue pattern into loxo-parabolic, complex homothety, rational and
irrational screws, and strongly loxodromic.

The "type I" homothety attribute (isolated eigenvalue in the first diagonal
slot, pattern Diag(l^-2, l, l)) is positional: it depends on the triangular
embedding and is reported only for upper-triangular input.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import IdentityElement
from .exact import ExactMatrix
from .projective import ProjectiveLine, ProjectivePoint, normalize_homogeneous

KIND_ELLIPTIC = "elliptic"
KIND_PARABOLIC = "parabolic"
KIND_LOXODROMIC = "loxodromic"

SUB_LOXO_PARABOLIC = "loxo_parabolic"
SUB_HOMOTHETY_TYPE_I = "complex_homothety_type_i"
SUB_HOMOTHETY = "complex_homothety"
SUB_RATIONAL_SCREW = "rational_screw"
SUB_IRRATIONAL_SCREW = "irrational_screw"
SUB_STRONGLY_LOXODROMIC = "strongly_loxodromic"

_HOMOTHETY_SUBTYPES = {SUB_HOMOTHETY, SUB_HOMOTHETY_TYPE_I}


@dataclass(frozen=True)
class RotationKind:
    kind: str  # "rational" | "irrational" | "not_unit_modulus"
    numerator: int = 0
    denominator: int = 1
    marginal: bool = False

    @classmethod
    def rational(cls, p, q, marginal=False):
        g = math.gcd(p, q)
        return cls("rational", p // g, q // g, marginal)

    @classmethod
    def irrational(cls, marginal=False):
        return cls("irrational", marginal=marginal)

    @classmethod
    def not_unit_modulus(cls):
        return cls("not_unit_modulus")


@dataclass(frozen=True)
class ElementClass:
    kind: str
    subtype: Optional[str] = None
    unipotent_rank: int = 0
    rotation: Optional[RotationKind] = None
    eigenvalues: tuple = ()
    marginal: bool = False
    homothety_isolated_position: Optional[int] = None

    @property
    def family(self) -> str:
        """Conjugation-invariant label (collapses positional homothety types)."""
        if self.kind != KIND_LOXODROMIC:
            return self.kind
        if self.subtype in _HOMOTHETY_SUBTYPES:
            return "loxodromic/complex_homothety"
        return f"{self.kind}/{self.subtype}"

    def is_loxo_parabolic(self):
        return self.subtype == SUB_LOXO_PARABOLIC

    def is_homothety(self):
        return self.subtype in _HOMOTHETY_SUBTYPES


def _is_upper_triangular(g, tol=1e-12):
    scale = max(np.max(np.abs(g)), 1.0)
    return (
        abs(g[1, 0]) <= tol * scale
        and abs(g[2, 0]) <= tol * scale
        and abs(g[2, 1]) <= tol * scale
    )


def eigenvalues3(g) -> tuple:
    """Roots of the characteristic cubic by closed-form Cardano.

    Upper-triangular input returns its diagonal as given; otherwise the
    roots come back sorted by (-|z|, arg z) for determinism.
    """
    g = np.asarray(g, dtype=complex)
    if _is_upper_triangular(g):
        return (g[0, 0], g[1, 1], g[2, 2])
    tr = np.trace(g)
    m2 = 0.5 * (tr * tr - np.trace(g @ g))  # sum of principal 2x2 minors
    det = np.linalg.det(g)
    # monic cubic: z^3 - tr z^2 + m2 z - det
    a, b, c = -tr, m2, -det
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    disc = q * q / 4.0 + p**3 / 27.0
    s = cmath.sqrt(disc)
    # pick the sqrt branch that avoids cancellation in -q/2 + s
    u3 = -q / 2.0 + s if abs(-q / 2.0 + s) >= abs(-q / 2.0 - s) else -q / 2.0 - s
    omega = cmath.exp(2j * cmath.pi / 3.0)
    if abs(u3) < 1e-300:
        ts = [cmath.exp(1j * cmath.phase(-q) / 3) * abs(q) ** (1 / 3) * omega**k
              for k in range(3)] if abs(q) > 0 else [0.0, 0.0, 0.0]
    else:
        u = u3 ** (1.0 / 3.0)
        ts = []
        for k in range(3):
            w = u * omega**k
            ts.append(w - p / (3.0 * w))
    roots = [t - a / 3.0 for t in ts]
    roots.sort(key=lambda z: (-abs(z), cmath.phase(z)))
    return tuple(roots)


def _continued_fraction_convergents(theta, max_denominator):
    """Convergents p/q of theta in [0,1) with q <= max_denominator."""
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    x = theta
    for _ in range(64):
        a = math.floor(x)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_denominator:
            break
        out.append((p1, q1))
        frac = x - a
        if frac < 1e-17:
            break
        x = 1.0 / frac
    return out


def rotation_type(u, max_denominator=10**6) -> RotationKind:
    """Classify u = e^{2 pi i theta} as a bounded-denominator rational
    rotation or (semidecidably) an irrational one."""
    u = complex(u)
    if abs(abs(u) - 1.0) > 1e-9:
        return RotationKind.not_unit_modulus()
    theta = (cmath.phase(u) / (2 * math.pi)) % 1.0
    best = None
    for p, q in _continued_fraction_convergents(theta, max_denominator):
        err = abs(theta - p / q)
        bound = 1.0 / (2.0 * q * max_denominator)
        if err < bound:
            return RotationKind.rational(p % q if q > 1 else p, q,
                                         marginal=err > bound / 2)
        if best is None or err < best:
            best = err
    # near-miss convergents make the verdict marginal
    marginal = best is not None and any(
        abs(theta - p / q) < 2.0 / (2.0 * q * max_denominator)
        for p, q in _continued_fraction_convergents(theta, max_denominator)
    )
    return RotationKind.irrational(marginal=marginal)


def _geometric_multiplicity(g, lam, scale):
    s = np.linalg.svd(g - lam * np.eye(3), compute_uv=False)
    return int(np.sum(s <= 1e-8 * max(scale, 1.0)))


def _canonical_rotation_angle(u):
    """Ratio or its inverse, whichever has argument in [0, pi]."""
    if (cmath.phase(u) % (2 * math.pi)) > math.pi:
        return 1.0 / u
    return u


def classify_element(g, tol=1e-9) -> ElementClass:
    """Taxonomy of a unit-determinant 3x3 matrix at the given unit-modulus
    tolerance.  Boundary verdicts are flagged marginal."""
    g = np.asarray(g, dtype=complex)
    scale = float(np.max(np.abs(g)))
    lams = eigenvalues3(g)
    moduli = [abs(z) for z in lams]
    eigtol = 1e-8 * max(scale, 1.0)

    marginal = any(tol < abs(m - 1.0) <= 2 * tol for m in moduli)

    # eigenvalue coincidences (as numbers)
    pairs = [(i, j) for i in range(3) for j in range(i + 1, 3)]
    equal_pairs = [(i, j) for i, j in pairs if abs(lams[i] - lams[j]) <= eigtol]

    all_unit = all(abs(m - 1.0) <= tol for m in moduli)
    if all_unit:
        if not equal_pairs:
            return ElementClass(KIND_ELLIPTIC, eigenvalues=lams, marginal=marginal)
        geo = sum(
            _geometric_multiplicity(g, lam, scale) for lam in _distinct(lams, eigtol)
        )
        if geo >= 3:
            return ElementClass(KIND_ELLIPTIC, eigenvalues=lams, marginal=marginal)
        return ElementClass(
            KIND_PARABOLIC,
            unipotent_rank=3 - geo,
            eigenvalues=lams,
            marginal=marginal,
        )

    # loxodromic
    if equal_pairs:
        i, j = equal_pairs[0]
        k = ({0, 1, 2} - {i, j}).pop()
        lam = lams[i]
        geo = _geometric_multiplicity(g, lam, scale)
        if geo >= 2:
            pos = None
            if _is_upper_triangular(g):
                diag = [g[0, 0], g[1, 1], g[2, 2]]
                dists = [abs(d - lams[k]) for d in diag]
                pos = 1 + int(np.argmin(dists))
            subtype = SUB_HOMOTHETY_TYPE_I if pos == 1 else SUB_HOMOTHETY
            return ElementClass(
                KIND_LOXODROMIC,
                subtype=subtype,
                eigenvalues=lams,
                marginal=marginal,
                homothety_isolated_position=pos,
            )
        return ElementClass(
            KIND_LOXODROMIC,
            subtype=SUB_LOXO_PARABOLIC,
            eigenvalues=lams,
            marginal=marginal,
        )

    # three distinct eigenvalues: strongly loxodromic or screw
    mod_pairs = [(i, j) for i, j in pairs if abs(moduli[i] - moduli[j]) <= tol]
    if any(tol < abs(moduli[i] - moduli[j]) <= 2 * tol for i, j in pairs):
        marginal = True
    if not mod_pairs:
        return ElementClass(
            KIND_LOXODROMIC,
            subtype=SUB_STRONGLY_LOXODROMIC,
            eigenvalues=lams,
            marginal=marginal,
        )
    i, j = mod_pairs[0]
    ratio = _canonical_rotation_angle(lams[i] / lams[j])
    rot = rotation_type(ratio)
    subtype = (
        SUB_RATIONAL_SCREW if rot.kind == "rational" else SUB_IRRATIONAL_SCREW
    )
    return ElementClass(
        KIND_LOXODROMIC,
        subtype=subtype,
        rotation=rot,
        eigenvalues=lams,
        marginal=marginal or rot.marginal,
    )


def _distinct(lams, eigtol):
    reps = []
    for lam in lams:
        if not any(abs(lam - r) <= eigtol for r in reps):
            reps.append(lam)
    return reps


def fixed_points(g):
    """(points, pointwise-fixed lines) of a non-identity automorphism."""
    g = np.asarray(g, dtype=complex)
    norm = normalize_homogeneous(g.ravel()).reshape(3, 3)
    if np.max(np.abs(norm - np.eye(3))) <= 1e-10:
        raise IdentityElement("identity fixes every point")
    scale = float(np.max(np.abs(g)))
    lams = eigenvalues3(g)
    eigtol = 1e-8 * max(scale, 1.0)
    points, lines = [], []
    for lam in _distinct(lams, eigtol):
        u, s, vh = np.linalg.svd(g - lam * np.eye(3))
        null_dim = int(np.sum(s <= 1e-8 * max(scale, 1.0)))
        if null_dim == 1:
            points.append(ProjectivePoint(vh[2].conj()))
        elif null_dim == 2:
            lines.append(ProjectiveLine(np.cross(vh[1].conj(), vh[2].conj())))
    return points, lines


# ---------------------------------------------------------------------------
# exact path for upper-triangular lifts


def classify_exact_triangular(m: ExactMatrix) -> ElementClass:
    """Exact taxonomy of an upper-triangular exact lift.

    Diagonal entries must be monomial scalars; every modulus, equality and
    rotation decision is then exact over the declared basis.  All tests are
    ratio-based, so any projective lift (not only unit-determinant ones)
    classifies correctly.
    """
    if not m.is_upper_triangular():
        raise ValueError("exact classification needs an upper-triangular lift")
    d = [m.entry(i, i).to_scalar() for i in range(3)]
    lams = tuple(s.value() for s in d)

    mod = [s.modulus2_record() for s in d]
    # for a unit-determinant representative "all eigenvalues unit modulus"
    # is equivalent to all moduli of any lift agreeing
    all_unit = mod[0] == mod[1] and mod[1] == mod[2]
    equal_pairs = [
        (i, j) for i in range(3) for j in range(i + 1, 3) if d[i] == d[j]
    ]

    if all_unit:
        if _exact_diagonalizable(m, d, equal_pairs):
            return ElementClass(KIND_ELLIPTIC, eigenvalues=lams)
        geo = _exact_total_geo(m, d)
        return ElementClass(KIND_PARABOLIC, unipotent_rank=3 - geo, eigenvalues=lams)

    if equal_pairs:
        i, j = equal_pairs[0]
        k = ({0, 1, 2} - {i, j}).pop()
        rank = _exact_rank(m, d[i])
        if rank == 1:  # geometric multiplicity 2: diagonalizable pair
            pos = k + 1
            subtype = SUB_HOMOTHETY_TYPE_I if pos == 1 else SUB_HOMOTHETY
            return ElementClass(
                KIND_LOXODROMIC,
                subtype=subtype,
                eigenvalues=lams,
                homothety_isolated_position=pos,
            )
        return ElementClass(
            KIND_LOXODROMIC, subtype=SUB_LOXO_PARABOLIC, eigenvalues=lams
        )

    # distinct eigenvalues: compare moduli exactly
    mod = [s.modulus2_record() for s in d]
    same_mod = [
        (i, j)
        for i in range(3)
        for j in range(i + 1, 3)
        if mod[i] == mod[j]
    ]
    if not same_mod:
        return ElementClass(
            KIND_LOXODROMIC, subtype=SUB_STRONGLY_LOXODROMIC, eigenvalues=lams
        )
    i, j = same_mod[0]
    ratio = d[i] / d[j]
    if ratio.is_root_of_unity():
        theta = ratio.rotation_fraction()
        if theta > Fraction(1, 2):
            theta = 1 - theta
        rot = RotationKind.rational(theta.numerator, theta.denominator)
        return ElementClass(
            KIND_LOXODROMIC,
            subtype=SUB_RATIONAL_SCREW,
            rotation=rot,
            eigenvalues=lams,
        )
    return ElementClass(
        KIND_LOXODROMIC,
        subtype=SUB_IRRATIONAL_SCREW,
        rotation=RotationKind.irrational(),
        eigenvalues=lams,
    )


def _exact_rank(m: ExactMatrix, lam):
    """rank(m - lam I) via exact minors (no division needed)."""
    from .exact import ExactComplex

    basis = m.basis
    lam_ec = ExactComplex.from_scalar(lam)
    a = [
        [
            m.entry(i, j) - lam_ec if i == j else m.entry(i, j)
            for j in range(3)
        ]
        for i in range(3)
    ]
    det = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    if not det.is_zero():
        return 3
    for i1 in range(3):
        for i2 in range(i1 + 1, 3):
            for j1 in range(3):
                for j2 in range(j1 + 1, 3):
                    minor = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1]
                    if not minor.is_zero():
                        return 2
    if any(not a[i][j].is_zero() for i in range(3) for j in range(3)):
        return 1
    return 0


def _exact_distinct(d):
    reps = []
    for s in d:
        if not any(s == r for r in reps):
            reps.append(s)
    return reps


def _exact_total_geo(m, d):
    return sum(3 - _exact_rank(m, lam) for lam in _exact_distinct(d))


def _exact_diagonalizable(m, d, equal_pairs):
    if not equal_pairs:
        return True
    return _exact_total_geo(m, d) == 3
