"""Commutative triangular groups: the five abelian normal forms, the
additive-morphism family (W, mu), the two-parameter diagonal family, their
discreteness tests and Kulkarni limit sets.

Discreteness and the sequence conditions (C) and (F) are limit statements;
here rank and rotation structure are decided exactly over the declared
basis while sequence conditions run as bounded searches returning explicit
semidecisions (NoViolationFound / NoneFound), with any witness reported.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    CountMismatch,
    InvalidLift,
    NoLoxodromic,
    NonCommutativeInput,
    NotDiscreteInput,
    TorsionDetected,
    UnclassifiedModulusPattern,
    UnsupportedExactOperation,
)
from .exact import (
    Basis,
    ExactComplex,
    ExactMatrix,
    GaussianRational,
    SymbolicScalar,
)
from .lattice import (
    AdditiveLattice,
    contains_irrational_rotation,
    contains_rational_rotation,
    relation_search,
)
from .limitsets import (
    LimitSetDescription,
    LinePiece,
    PointPiece,
    line_e1e2_piece,
    line_e2e3_piece,
    points_e1_e2,
)
from .presentation import GroupPresentation
from .projective import E1, E2, E3
from .triangular import lambda_

C1, C2, C3, C4, C5 = "C1", "C2", "C3", "C4", "C5"


@dataclass
class CommutativeForm:
    label: str
    conjugator: ExactMatrix


# ---------------------------------------------------------------------------
# normal form C1..C5 (constructive case analysis)


def _entry(g, i, j):
    return g.entry(i, j)


def _scalar(e: ExactComplex) -> SymbolicScalar:
    return e.to_scalar()


def _normalize_unipotent(g: ExactMatrix) -> ExactMatrix:
    """Scale a projectively unipotent lift so the diagonal is exactly 1."""
    d = _entry(g, 0, 0)
    inv = d.invert()
    return ExactMatrix(g.basis, [[e * inv for e in row] for row in g.rows])


def _pi_parabolic(g) -> bool:
    return _entry(g, 1, 1) == _entry(g, 2, 2) and not _entry(g, 1, 2).is_zero()


def _pistar_parabolic(g) -> bool:
    return _entry(g, 0, 0) == _entry(g, 1, 1) and not _entry(g, 0, 1).is_zero()


def _exact_diag(basis, values) -> ExactMatrix:
    z = ExactComplex.zero(basis)
    rows = [[z, z, z], [z, z, z], [z, z, z]]
    for i, v in enumerate(values):
        rows[i][i] = v
    return ExactMatrix(basis, rows)


def _exact_elementary(basis, i, j, value) -> ExactMatrix:
    m = ExactMatrix.identity(basis)
    m.rows[i][j] = value
    return m


def _check_torsion_free(gens):
    lam12 = []
    lam23 = []
    for g in gens:
        lam12.append(_scalar(lambda_(g, 12)))
        lam23.append(_scalar(lambda_(g, 23)))
    if contains_rational_rotation([v for v in lam12 if not v.is_one()]):
        raise TorsionDetected("torsion in the (1,2) diagonal-ratio image")
    if contains_rational_rotation([v for v in lam23 if not v.is_one()]):
        raise TorsionDetected("torsion in the (2,3) diagonal-ratio image")


def commutative_normal_form(p: GroupPresentation) -> CommutativeForm:
    """Conjugate a commutative upper-triangular group into one of the five
    abelian Lie-group patterns, following the constructive case split on
    whether the control and affine images contain parabolic elements."""
    gens = [g for g in p.generators if not g.is_scalar()]
    if not gens:
        return CommutativeForm(C2, ExactMatrix.identity(p.basis))
    if not p.pairwise_commutative():
        raise NonCommutativeInput("generators do not pairwise commute")
    _check_torsion_free(gens)
    basis = p.basis

    pi_par = any(_pi_parabolic(g) for g in gens)
    pistar_par = any(_pistar_parabolic(g) for g in gens)

    if pi_par and pistar_par:
        # every element is unipotent; rescale diagonals to 1 exactly
        unis = [_normalize_unipotent(g) for g in gens]
        h = next(
            (
                g
                for g in unis
                if not _entry(g, 0, 1).is_zero() and not _entry(g, 1, 2).is_zero()
            ),
            None,
        )
        if h is None:
            ga = next(g for g in unis if not _entry(g, 0, 1).is_zero())
            gc = next(g for g in unis if not _entry(g, 1, 2).is_zero())
            h = ga @ gc  # entries (1,2) and (2,3) add, neither cancels
        a = _entry(h, 0, 1)
        c = _entry(h, 1, 2)
        conj = _exact_diag(basis, [a.invert(), ExactComplex.one(basis), c])
        return CommutativeForm(C5, conj)

    if pistar_par and not pi_par:
        # all lambda_12 trivial; kill the control fixed point w
        w = _common_fixed_point(gens, lambda g: (_entry(g, 1, 1), _entry(g, 2, 2), _entry(g, 1, 2)))
        h = _exact_elementary(basis, 1, 2, w)
        conj = h
        gens1 = [h @ g @ h.inverse() for g in gens]
        if any(_pi1_parabolic(g) for g in gens1):
            return CommutativeForm(C4, conj)
        pfix = _common_fixed_point(gens1, lambda g: (_entry(g, 0, 0), _entry(g, 2, 2), _entry(g, 0, 2)))
        h1 = _exact_elementary(basis, 0, 2, pfix)
        sigma = ExactMatrix(basis, _perm_rows(basis, [2, 0, 1]))
        return CommutativeForm(C1, sigma @ h1 @ conj)

    if pi_par and not pistar_par:
        z = _common_fixed_point(gens, lambda g: (_entry(g, 0, 0), _entry(g, 1, 1), _entry(g, 0, 1)))
        h = _exact_elementary(basis, 0, 1, z)
        conj = h
        gens1 = [h @ g @ h.inverse() for g in gens]
        if any(_pi1_parabolic(g) for g in gens1):
            return CommutativeForm(C3, conj)
        pfix = _common_fixed_point(gens1, lambda g: (_entry(g, 0, 0), _entry(g, 2, 2), _entry(g, 0, 2)))
        h1 = _exact_elementary(basis, 0, 2, pfix)
        return CommutativeForm(C1, h1 @ conj)

    # neither image has a parabolic element
    z = _common_fixed_point(gens, lambda g: (_entry(g, 0, 0), _entry(g, 1, 1), _entry(g, 0, 1)))
    w = _common_fixed_point(gens, lambda g: (_entry(g, 1, 1), _entry(g, 2, 2), _entry(g, 1, 2)))
    h = ExactMatrix.identity(basis)
    h.rows[0][1] = z
    h.rows[1][2] = w
    gens1 = [h @ g @ h.inverse() for g in gens]
    if any(_pi1_parabolic(g) for g in gens1):
        swap = ExactMatrix(basis, _perm_rows(basis, [1, 0, 2]))
        return CommutativeForm(C1, swap @ h)
    pfix = _common_fixed_point(gens1, lambda g: (_entry(g, 0, 0), _entry(g, 2, 2), _entry(g, 0, 2)))
    h1 = _exact_elementary(basis, 0, 2, pfix)
    return CommutativeForm(C2, h1 @ h)


def _pi1_parabolic(g):
    """Parabolic test for the secondary projection z -> (g00/g22) z + g02/g22."""
    return _entry(g, 0, 0) == _entry(g, 2, 2) and not _entry(g, 0, 2).is_zero()


def _common_fixed_point(gens, pick):
    """Fixed point b/(d - a) of the affine maps z -> (a z + b)/d shared by a
    commuting family; zero when the family acts trivially."""
    for g in gens:
        a, d, b = pick(g)
        if a != d:
            return b * (d - a).invert()
    first = gens[0]
    return ExactComplex.zero(first.basis)


def _perm_rows(basis, images):
    """Permutation matrix sending e_i to e_{images[i]}."""
    z = ExactComplex.zero(basis)
    o = ExactComplex.one(basis)
    rows = [[z, z, z], [z, z, z], [z, z, z]]
    for src, dst in enumerate(images):
        rows[dst][src] = o
    return rows


PATTERNS = {
    C1: {(0, 1), (0, 2), (1, 0), (2, 0), (2, 1)},
    C2: {(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)},
    C3: {(0, 1), (1, 0), (2, 0), (2, 1)},
    C4: {(1, 0), (1, 2), (2, 0), (2, 1)},
    C5: {(1, 0), (2, 0), (2, 1)},
}


def matches_pattern(g: ExactMatrix, label: str) -> bool:
    """Entrywise zero-pattern check for a conjugated generator."""
    for i, j in PATTERNS[label]:
        if not _entry(g, i, j).is_zero():
            return False
    if label in (C3, C4, C5):
        d = [_entry(g, i, i) for i in range(3)]
        if not (d[0] == d[1] and d[1] == d[2]):
            return False
    if label == C1:
        if not (_entry(g, 1, 1) == _entry(g, 2, 2)):
            return False
    if label == C5:
        if not (_entry(g, 0, 1) == _entry(g, 1, 2)):
            return False
    return True


# ---------------------------------------------------------------------------
# the (W, mu) family


class GammaWMu:
    """Commutative family [[mu(w)^-2,0,0],[0,mu(w),w mu(w)],[0,0,mu(w)]]
    indexed by an additive group W with a morphism mu into C*."""

    def __init__(self, basis: Basis, w_gens, mu_values):
        if len(w_gens) != len(mu_values):
            raise CountMismatch(
                f"{len(w_gens)} additive generators vs {len(mu_values)} mu values"
            )
        self.basis = basis
        self.w_gens = [self._as_exact(w) for w in w_gens]
        self.mu_values = list(mu_values)
        for w in self.w_gens:
            if w.is_zero():
                raise InvalidLift("additive generators must be nonzero")
        for m in self.mu_values:
            if m.coeff.is_zero():
                raise InvalidLift("mu values must be nonzero")
        self.lattice = AdditiveLattice(self.w_gens)

    def _as_exact(self, w):
        if isinstance(w, ExactComplex):
            return w
        if isinstance(w, SymbolicScalar):
            return ExactComplex.from_scalar(w)
        return ExactComplex.from_rational(self.basis, w)

    @property
    def rank(self):
        return self.lattice.rank

    def w_of(self, coeffs) -> ExactComplex:
        out = ExactComplex.zero(self.basis)
        for n, w in zip(coeffs, self.w_gens):
            if n:
                out = out + w * SymbolicScalar.from_rational(self.basis, n)
        return out

    def mu_of(self, coeffs) -> SymbolicScalar:
        out = SymbolicScalar.from_rational(self.basis, 1)
        for n, m in zip(coeffs, self.mu_values):
            if n:
                out = out * m**n
        return out

    def element(self, coeffs) -> ExactMatrix:
        """The lift [[mu^-2,0,0],[0,mu,w mu],[0,0,mu]] at w = sum n_i w_i."""
        mu = self.mu_of(coeffs)
        w = self.w_of(coeffs)
        z = ExactComplex.zero(self.basis)
        mu_e = ExactComplex.from_scalar(mu)
        return ExactMatrix(
            self.basis,
            [
                [ExactComplex.from_scalar((mu * mu).invert()), z, z],
                [z, mu_e, w * mu],
                [z, z, mu_e],
            ],
        )

    def presentation(self, name="gamma_w_mu") -> GroupPresentation:
        gens = [
            self.element(tuple(int(i == j) for j in range(len(self.w_gens))))
            for i in range(len(self.w_gens))
        ]
        return GroupPresentation(name, self.basis, gens)

    def numeric_path_matrix(self, coeffs, k: int) -> np.ndarray:
        """Normalized numeric matrix of element(k * coeffs), safe for large k:
        [[1,0,0],[0,mu^3,k w mu^3],[0,0,mu^3]] or the reciprocal scaling."""
        log_mu = sum(c * math.log(abs(m.value())) for c, m in zip(coeffs, self.mu_values))
        arg_mu = sum(c * np.angle(m.value()) for c, m in zip(coeffs, self.mu_values))
        w = complex(sum(c * wg.value() for c, wg in zip(coeffs, self.w_gens)))
        # entries of the normalized form diag(mu^-3, 1, .) * [1, w-part]
        lm3 = 3 * k * log_mu
        ph3 = 3 * k * arg_mu
        wk = k * w
        # candidate magnitudes: |mu^-3k|, max(1, |k w|)
        if -lm3 >= math.log(max(abs(wk), 1.0)):
            # mu^-3k dominates: divide through by it
            s = math.exp(lm3) * np.exp(1j * ph3) if lm3 > -700 else 0.0
            m = np.array([[1.0, 0, 0], [0, s, wk * s], [0, 0, s]], dtype=complex)
        else:
            m = np.array(
                [
                    [math.exp(-lm3) * np.exp(-1j * ph3) if -lm3 < 700 else np.inf, 0, 0],
                    [0, 1.0, wk],
                    [0, 0, 1.0],
                ],
                dtype=complex,
            )
        return m


def build_gamma_w_mu(basis, w_gens, mu_values) -> GammaWMu:
    return GammaWMu(basis, w_gens, mu_values)


@dataclass
class DiscretenessVerdict:
    status: str  # "discrete" | "not_discrete" | "no_violation_found"
    witness: Optional[dict] = None
    reason: str = ""

    @property
    def admissible(self):
        return self.status in ("discrete", "no_violation_found")


def _coefficient_box(r, bound):
    ranges = [range(-bound, bound + 1)] * r
    for tup in itertools.product(*ranges):
        if any(tup):
            yield tup


def _vectorized_box(g: GammaWMu, bound):
    """(coeffs, w values, log|mu|, arg mu) over the coefficient box."""
    r = len(g.w_gens)
    axes = [np.arange(-bound, bound + 1)] * r
    grids = np.meshgrid(*axes, indexing="ij")
    coeffs = np.stack([a.ravel() for a in grids], axis=1)
    coeffs = coeffs[np.any(coeffs != 0, axis=1)]
    wvals = np.array([w.value() for w in g.w_gens])
    mulog = np.array([math.log(abs(m.value())) for m in g.mu_values])
    muarg = np.array([np.angle(m.value()) for m in g.mu_values])
    return coeffs, coeffs @ wvals, coeffs @ mulog, coeffs @ muarg


def c1_discreteness(g: GammaWMu, sample_bound=50) -> DiscretenessVerdict:
    """Exact rank bound, exact lattice discreteness, then a bounded search
    for small w with |mu(w)| away from 0 and infinity."""
    if g.rank > 3:
        return DiscretenessVerdict("not_discrete", reason="rank(W) > 3")
    if g.lattice.is_discrete():
        return DiscretenessVerdict("discrete", reason="W is a discrete lattice")
    coeffs, w, logmu, argmu = _vectorized_box(g, sample_bound)
    small = np.abs(w) < 1e-3
    mid = (logmu >= math.log(0.5)) & (logmu <= math.log(2.0))
    hits = np.where(small & mid)[0]
    if len(hits):
        order = hits[np.argsort(np.abs(w[hits]))]
        i = int(order[0])
        witness = {
            "coeffs": [int(c) for c in coeffs[i]],
            "w": complex(w[i]),
            "abs_mu": math.exp(logmu[i]),
        }
        return DiscretenessVerdict(
            "not_discrete", witness=witness, reason="condition (C) violated in box"
        )
    return DiscretenessVerdict(
        "no_violation_found", reason=f"bounded search |n_i| <= {sample_bound}"
    )


@dataclass
class ConditionFResult:
    status: str  # "found_witness" | "none_found"
    b: Optional[complex] = None
    sequence_head: list = field(default_factory=list)

    @property
    def holds(self):
        return self.status == "found_witness"


def c1_condition_F(g: GammaWMu, sample_bound=50) -> ConditionFResult:
    """Bounded search for w -> infinity, mu(w) -> 0, w mu(w)^3 -> b in C*."""
    coeffs, w, logmu, argmu = _vectorized_box(g, sample_bound)
    absw = np.abs(w)
    with np.errstate(divide="ignore"):
        logw = np.where(absw > 0, np.log(np.maximum(absw, 1e-300)), -np.inf)
    logprod = logw + 3.0 * logmu
    ok = (
        (absw > 1e3)
        & (logmu < math.log(1e-3))
        & (logprod >= math.log(1e-3))
        & (logprod <= math.log(1e3))
    )
    hits = np.where(ok)[0]
    if not len(hits):
        return ConditionFResult("none_found")
    prods = w[hits] * np.exp(3.0 * logmu[hits]) * np.exp(3j * argmu[hits])
    # cluster candidate b values greedily
    clusters = []
    for v in prods:
        for c in clusters:
            if abs(v - c[0]) <= 0.25 * max(abs(c[0]), 1e-6):
                c[1].append(v)
                break
        else:
            clusters.append([v, [v]])
    clusters.sort(key=lambda c: -len(c[1]))
    b = complex(np.mean(clusters[0][1]))
    head = [
        {
            "coeffs": [int(c) for c in coeffs[i]],
            "w": complex(w[i]),
            "w_mu3": complex(pv),
        }
        for i, pv in list(zip(hits, prods))[:5]
    ]
    return ConditionFResult("found_witness", b=b, sequence_head=head)


# the theorem's case table, kept twice: computed and as an independent
# literal lookup for cross-checking
_C1_SHAPES = {
    ("C1.1", False): "line12",
    ("C1.1", True): "line12",
    ("C1.2", False): "two_lines",
    ("C1.2", True): "two_lines",
    ("C1.3", False): "points12",
    ("C1.3", True): "line12",
    ("C1.4", False): "points12",
    ("C1.4", True): "line12",
    ("C1.5", False): "point1_line23",
    ("C1.5", True): "two_lines",
    ("C1.6", False): "point1_line23",
    ("C1.6", True): "two_lines",
}


def _shape_pieces(shape):
    if shape == "points12":
        return points_e1_e2()
    if shape == "line12":
        return [line_e1e2_piece()]
    if shape == "point1_line23":
        return [PointPiece(E1), line_e2e3_piece()]
    if shape == "two_lines":
        return [line_e1e2_piece(), line_e2e3_piece()]
    raise AssertionError(shape)


def c1_case_label(g: GammaWMu):
    """(case_label, w_discrete, has_rational, has_irrational), all exact."""
    w_discrete = g.lattice.is_discrete()
    mu = [m for m in g.mu_values if not m.is_one()]
    has_rat = contains_rational_rotation(mu)
    has_irr = contains_irrational_rotation(mu)
    if has_rat:
        label = "C1.1" if w_discrete else "C1.2"
    elif has_irr:
        label = "C1.3" if w_discrete else "C1.5"
    else:
        label = "C1.4" if w_discrete else "C1.6"
    return label, w_discrete, has_rat, has_irr


def c1_limit_set(g: GammaWMu, sample_bound=50) -> LimitSetDescription:
    """Kulkarni limit set of a discrete (W, mu) group: one of four shapes
    selected by lattice discreteness, rotation content and condition (F)."""
    verdict = c1_discreteness(g, sample_bound)
    if not verdict.admissible:
        raise NotDiscreteInput(verdict.reason)
    notes = []
    if verdict.status == "no_violation_found":
        notes.append("discreteness: no violation found in bounded search")

    if g.rank == 1:
        combo = g.lattice.basis_combinations()[0]
        mu = g.mu_of(combo)
        if mu.is_unit_modulus():
            return LimitSetDescription(
                [line_e1e2_piece()], "C1.cyclic-ellipto-parabolic", notes
            )
        return LimitSetDescription(
            [line_e1e2_piece(), line_e2e3_piece()], "C1.cyclic-loxo-parabolic", notes
        )

    label, w_discrete, has_rat, has_irr = c1_case_label(g)
    f_res = c1_condition_F(g, sample_bound)
    f_holds = f_res.holds
    if label in ("C1.1", "C1.2"):
        notes.append("rational rotations present: torsion tension in the "
                     "(1,2) ratio image (implemented as stated)")
    if not f_holds and label not in ("C1.1", "C1.2"):
        notes.append("condition (F): none found in bounded search")

    shape = _C1_SHAPES[(label, f_holds)]
    # independent recomputation of the same table from the raw flags
    if has_rat:
        expected = "line12" if w_discrete else "two_lines"
    elif w_discrete:
        expected = "line12" if f_holds else "points12"
    else:
        expected = "two_lines" if f_holds else "point1_line23"
    if shape != expected:
        raise AssertionError(f"case table mismatch: {shape} vs {expected}")
    return LimitSetDescription(_shape_pieces(shape), label, notes)


# ---------------------------------------------------------------------------
# the diagonal family


class GammaAlphaBeta:
    """Diag(alpha^n, beta^m, 1) as projective representatives."""

    def __init__(self, alpha: SymbolicScalar, beta: SymbolicScalar):
        self.alpha = alpha
        self.beta = beta

    def numeric_element(self, n, m) -> np.ndarray:
        a, b = self.alpha.value(), self.beta.value()
        return np.diag([a**n, b**m, 1.0]).astype(complex)

    def numeric_path_matrix(self, coeffs, k: int) -> np.ndarray:
        """Normalized Diag(alpha^{k c1}, beta^{k c2}, 1) via log scaling."""
        la = math.log(abs(self.alpha.value()))
        lb = math.log(abs(self.beta.value()))
        aa = np.angle(self.alpha.value())
        ab = np.angle(self.beta.value())
        logs = np.array([k * coeffs[0] * la, k * coeffs[1] * lb, 0.0])
        args = np.array([k * coeffs[0] * aa, k * coeffs[1] * ab, 0.0])
        top = logs.max()
        vals = np.exp(np.maximum(logs - top, -745)) * np.exp(1j * args)
        return np.diag(vals)


@dataclass
class DiagonalCase:
    label: str  # D1..D5
    l0: LimitSetDescription
    l1: LimitSetDescription
    swapped: bool = False
    relation: Optional[tuple] = None


def _check_diag_torsion(alpha, beta):
    for s, name in ((alpha, "alpha"), (beta, "beta")):
        if s.is_one():
            raise InvalidLift(f"{name} = 1 makes the family cyclic; use the "
                              "power-sequence tools instead")
        if s.is_root_of_unity():
            raise TorsionDetected(f"{name} is a nontrivial root of unity")


def _log_abs(s: SymbolicScalar) -> float:
    return math.log(abs(s.value()))


def diagonal_case_classify(g: GammaAlphaBeta) -> DiagonalCase:
    """D1..D5 case split with the L0/L1 sets of the two lemmas."""
    alpha, beta = g.alpha, g.beta
    _check_diag_torsion(alpha, beta)
    a_unit = alpha.is_unit_modulus()
    b_unit = beta.is_unit_modulus()
    if a_unit and b_unit:
        raise NoLoxodromic("both parameters have unit modulus")

    if a_unit:
        inner = diagonal_case_classify(GammaAlphaBeta(beta, alpha))
        return DiagonalCase(
            inner.label,
            inner.l0.swap_coordinates(0, 1),
            inner.l1.swap_coordinates(0, 1),
            swapped=not inner.swapped,
            relation=None if inner.relation is None else inner.relation[::-1],
        )

    if b_unit:
        # beta is an irrational rotation (torsion checked above)
        l0 = LimitSetDescription(
            [PointPiece(E1), PointPiece(E2), PointPiece(E3)], "D5.L0"
        )
        l1 = LimitSetDescription([PointPiece(E1), line_e2e3_piece()], "D5.L1")
        return DiagonalCase("D5", l0, l1)

    if alpha.modulus2_record() == beta.modulus2_record():
        raise UnclassifiedModulusPattern(
            "|alpha| = |beta| != 1 is outside the diagonal case table"
        )
    la, lb = _log_abs(alpha), _log_abs(beta)
    opposite = (la > 0 > lb) or (la < 0 < lb)
    if not opposite and abs(lb) > abs(la):
        inner = diagonal_case_classify(GammaAlphaBeta(beta, alpha))
        return DiagonalCase(
            inner.label,
            inner.l0.swap_coordinates(0, 1),
            inner.l1.swap_coordinates(0, 1),
            swapped=not inner.swapped,
            relation=None if inner.relation is None else inner.relation[::-1],
        )

    rel = relation_search(alpha, beta)
    has_rel = rel is not None
    if has_rel:
        l0 = LimitSetDescription([line_e1e2_piece(), PointPiece(E3)], "L0.relation")
        label = "D1" if opposite else "D2"
    else:
        l0 = LimitSetDescription(
            [PointPiece(E1), PointPiece(E2), PointPiece(E3)], "L0.free"
        )
        label = "D3" if opposite else "D4"
    if opposite:
        l1 = LimitSetDescription(points_e1_e2(), "L1.opposite")
    else:
        l1 = LimitSetDescription([PointPiece(E1), PointPiece(E3)], "L1.same-side")
    return DiagonalCase(label, l0, l1, relation=rel)


def diagonal_limit_set(g: GammaAlphaBeta) -> LimitSetDescription:
    """Kulkarni limit set of the diagonal family by case."""
    case = diagonal_case_classify(g)
    if case.label in ("D1", "D2"):
        desc = LimitSetDescription(
            [line_e1e2_piece(), PointPiece(E3)], case.label
        )
    elif case.label in ("D3", "D4"):
        desc = LimitSetDescription(
            [PointPiece(E1), PointPiece(E2), PointPiece(E3)], case.label
        )
    else:
        desc = LimitSetDescription(
            [line_e1e2_piece(), line_e2e3_piece()], case.label
        )
    if case.swapped:
        desc = desc.swap_coordinates(0, 1)
        desc.case_label = case.label + ".swapped"
    return desc
