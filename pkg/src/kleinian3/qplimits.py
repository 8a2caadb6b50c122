"""Numeric quasi-projective limits of element sequences, the published
limit tables as oracles, and equicontinuity-region kernel arrangements.

Sequences of distinct projective transformations converge (along
subsequences) to quasi-projective maps uniformly off the limit's kernel;
this module detects that convergence numerically on a geometric probe
schedule and reads kernels/images off the normalized limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .commutative import GammaAlphaBeta, GammaWMu
from .errors import DegenerateSequence, NoMatchingRow
from .exact import ExactMatrix
from .presentation import GroupPresentation
from .projective import (
    E1,
    E2,
    E3,
    LINE_E1E2,
    LINE_E1E3,
    LINE_E2E3,
    ProjectiveSubspace,
    QuasiProjectiveMap,
    normalize_homogeneous,
)

POWER = "power"
LATTICE_PATH = "lattice_path"
EXPLICIT = "explicit"


class SequenceSpec:
    """A recipe for a sequence of distinct group elements."""

    def __init__(self, kind, element=None, sign=+1, family=None, coeffs=None,
                 matrices=None):
        self.kind = kind
        self.element = element
        self.sign = sign
        self.family = family
        self.coeffs = tuple(coeffs) if coeffs is not None else None
        self.matrices = matrices

    @classmethod
    def power(cls, element, sign=+1):
        if isinstance(element, ExactMatrix):
            element = element.numpy()
        return cls(POWER, element=np.asarray(element, dtype=complex), sign=sign)

    @classmethod
    def lattice_path(cls, family, coeffs):
        return cls(LATTICE_PATH, family=family, coeffs=coeffs)

    @classmethod
    def explicit(cls, matrices):
        return cls(EXPLICIT, matrices=[np.asarray(m, dtype=complex) for m in matrices])

    def term_count(self, n_max):
        if self.kind == EXPLICIT:
            return min(n_max, len(self.matrices))
        return n_max

    def term_at(self, k: int):
        """Normalized k-th term.  Power terms use square-multiply with
        renormalization (projectively exact, no overflow); lattice paths
        are closed-form, so k may be astronomically large."""
        if self.kind == POWER:
            g = self.element if self.sign > 0 else np.linalg.inv(self.element)
            acc = None
            sq = _renormalize(g)
            n = k
            while n:
                if n & 1:
                    acc = sq if acc is None else _renormalize(acc @ sq)
                n >>= 1
                if n:
                    sq = _renormalize(sq @ sq)
            return acc
        if self.kind == LATTICE_PATH:
            return _renormalize(self.family.numeric_path_matrix(self.coeffs, k))
        return _renormalize(self.matrices[k - 1])


def _renormalize(m):
    flat = np.asarray(m, dtype=complex).ravel()
    mags = np.abs(flat)
    top = mags.max()
    if top == 0 or not np.isfinite(top):
        finite = np.isfinite(mags)
        if not finite.any() or mags[finite].max() == 0:
            raise DegenerateSequence("sequence term collapsed to zero or overflowed")
        flat = np.where(np.isfinite(flat), flat, 0.0)
        mags = np.abs(flat)
        top = mags.max()
    idx = int(np.argmax(mags >= top * (1 - 1e-12)))
    return (flat / flat[idx]).reshape(3, 3)


@dataclass
class QPLimitReport:
    limit: Optional[QuasiProjectiveMap]
    kernel: Optional[ProjectiveSubspace]
    image: Optional[ProjectiveSubspace]
    residuals: list
    converged: bool
    classes: list = field(default_factory=list)

    def to_json(self):
        out = {
            "converged": self.converged,
            "residuals": [[int(k), float(d)] for k, d in self.residuals],
        }
        if self.limit is not None:
            out["limit"] = [
                [[float(c.real), float(c.imag)] for c in row]
                for row in self.limit.entries
            ]
            out["kernel"] = repr(self.kernel)
            out["image"] = repr(self.image)
        if self.classes:
            out["oscillation_classes"] = len(self.classes)
        return out


def _probe_schedule(n_max):
    ks = sorted({max(1, n_max // 8), max(2, n_max // 4), max(3, n_max // 2), n_max})
    return ks


def _check_distinct(spec):
    """Reject recipes that repeat elements: finite projective order for
    power sequences, duplicate matrices in explicit lists, trivial lattice
    directions."""
    if spec.kind == POWER:
        g = spec.element
        acc = np.eye(3, dtype=complex)
        for k in range(1, 17):
            acc = _renormalize(acc @ g)
            if np.max(np.abs(acc - np.eye(3))) <= 1e-10:
                raise DegenerateSequence(
                    f"element has finite projective order {k}"
                )
    elif spec.kind == EXPLICIT:
        head = [_renormalize(m) for m in spec.matrices[:16]]
        for i in range(len(head)):
            for j in range(i + 1, len(head)):
                if np.max(np.abs(head[i] - head[j])) <= 1e-12:
                    raise DegenerateSequence(
                        f"explicit terms {i + 1} and {j + 1} coincide"
                    )
    else:
        m1 = _renormalize(spec.family.numeric_path_matrix(spec.coeffs, 1))
        m2 = _renormalize(spec.family.numeric_path_matrix(spec.coeffs, 2))
        if np.max(np.abs(m1 - m2)) <= 1e-13:
            raise DegenerateSequence("lattice direction acts trivially")


def sequence_qp_limit(spec: SequenceSpec, n_max=200, tol=1e-8,
                      selector=None) -> QPLimitReport:
    """Detect Cauchy behavior of normalized matrices on a geometric probe
    schedule; on convergence return the limit with kernel and image.

    selector optionally filters term indices (subsequence extraction).
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    _check_distinct(spec)
    count = spec.term_count(n_max)
    indices = [k for k in range(1, count + 1)] if selector is not None else None
    if selector is not None:
        indices = [k for k in indices if selector(k)]
        if len(indices) < 8:
            raise DegenerateSequence("selector keeps fewer than 8 terms")

    def nth(i):
        # i-th retained term (1-based)
        k = indices[i - 1] if indices is not None else i
        return spec.term_at(k)

    retained = len(indices) if indices is not None else count
    schedule = _probe_schedule(retained)
    probes = {i: nth(i) for i in schedule}
    ks = sorted(probes)
    residuals = []
    for a, b in zip(ks, ks[1:]):
        residuals.append((b, float(np.max(np.abs(probes[a] - probes[b])))))
    converged = bool(residuals and residuals[-1][1] <= tol)
    if converged:
        limit = QuasiProjectiveMap(probes[ks[-1]])
        # the limit entries are only known to residual accuracy, so the
        # rank threshold must not undercut it
        rank_tol = max(1e-10, 3.0 * residuals[-1][1])
        kernel, image = limit.kernel_image(tol=rank_tol)
        return QPLimitReport(limit, kernel, image, residuals, True)
    tail = [nth(i) for i in range(max(1, retained - 7), retained + 1)]
    classes = _cluster_matrices(tail, 1e-6)
    return QPLimitReport(None, None, None, residuals, False, classes=classes)


def _cluster_matrices(mats, resolution):
    reps = []
    for m in mats:
        q = QuasiProjectiveMap(m)
        if not any(q.distance(r) <= resolution for r in reps):
            reps.append(q)
        if len(reps) >= 6:
            break
    return reps


# ---------------------------------------------------------------------------
# the two limit tables


def _tau(rows):
    return QuasiProjectiveMap(np.array(rows, dtype=complex))


_KER_IM = {
    "e1": ProjectiveSubspace.of_point(E1),
    "e2": ProjectiveSubspace.of_point(E2),
    "e3": ProjectiveSubspace.of_point(E3),
    "l12": ProjectiveSubspace.of_line(LINE_E1E2),
    "l13": ProjectiveSubspace.of_line(LINE_E1E3),
    "l23": ProjectiveSubspace.of_line(LINE_E2E3),
}


def c1_table_lookup(behavior, b=0j):
    """Expected limit for a (W, mu) sequence with the given asymptotics.

    behavior keys: w in {"finite","infinity"}, mu in {"zero","finite",
    "infinity"}, product (w mu^3) in {"zero","finite","infinity"} or None.
    Returns (row, tau, kernel, image).
    """
    w = behavior.get("w")
    mu = behavior.get("mu")
    prod = behavior.get("product")
    if w == "finite" and mu == "zero":
        return "i", _tau([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), _KER_IM["l23"], _KER_IM["e1"]
    if w == "infinity" and mu == "zero" and prod == "zero":
        return "i", _tau([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), _KER_IM["l23"], _KER_IM["e1"]
    if w == "finite" and mu == "infinity":
        return (
            "ii",
            _tau([[0, 0, 0], [0, 1, b], [0, 0, 1]]),
            _KER_IM["e1"],
            _KER_IM["l23"],
        )
    if w == "infinity" and mu in ("infinity", "finite"):
        return (
            "iii",
            _tau([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
            _KER_IM["l12"],
            _KER_IM["e2"],
        )
    if w == "infinity" and mu == "zero" and prod == "infinity":
        return (
            "iii",
            _tau([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
            _KER_IM["l12"],
            _KER_IM["e2"],
        )
    if w == "infinity" and mu == "zero" and prod == "finite":
        return (
            "iv",
            _tau([[1, 0, 0], [0, 0, b], [0, 0, 0]]),
            _KER_IM["e2"],
            _KER_IM["l12"],
        )
    raise NoMatchingRow(f"no table row for {behavior}")


def diag_table_lookup(behavior, b=0j):
    """Expected limit for a diagonal-path sequence: behavior keys alpha,
    beta in {"zero","finite","infinity"} (limits of alpha^{n_k}, beta^{m_k})
    and ratio = limit of alpha^{n_k} beta^{-m_k} where needed."""
    a = behavior.get("alpha")
    be = behavior.get("beta")
    ratio = behavior.get("ratio")
    if a == "infinity" and be in ("finite", "zero"):
        return "i", _tau(np.diag([1, 0, 0])), _KER_IM["l23"], _KER_IM["e1"]
    if a == "infinity" and be == "infinity" and ratio == "infinity":
        return "i", _tau(np.diag([1, 0, 0])), _KER_IM["l23"], _KER_IM["e1"]
    if a == "zero" and be == "infinity":
        return "ii", _tau(np.diag([0, 1, 0])), _KER_IM["l13"], _KER_IM["e2"]
    if a == "infinity" and be == "infinity" and ratio == "zero":
        return "ii", _tau(np.diag([0, 1, 0])), _KER_IM["l13"], _KER_IM["e2"]
    if a == "zero" and be == "zero":
        return "iii", _tau(np.diag([0, 0, 1])), _KER_IM["l12"], _KER_IM["e3"]
    if a == "finite" and be == "zero":
        return "iv", _tau(np.diag([b, 0, 1])), _KER_IM["e2"], _KER_IM["l13"]
    if a == "infinity" and be == "infinity" and ratio == "finite":
        return "v", _tau(np.diag([b, 1, 0])), _KER_IM["e3"], _KER_IM["l12"]
    if a == "zero" and be == "finite":
        return "vi", _tau(np.diag([0, b, 1])), _KER_IM["e1"], _KER_IM["l23"]
    raise NoMatchingRow(f"no table row for {behavior}")


# ---------------------------------------------------------------------------
# equicontinuity kernels


@dataclass
class EquicontinuityReport:
    kernels: list
    stabilized: bool
    description: str

    def kernel_lines(self):
        return [k.line for k in self.kernels if k.dim == 1]

    def kernel_points(self):
        return [k.point for k in self.kernels if k.dim == 0]


def _ray_directions(r, spread=1):
    out = []
    seen = set()
    rng = range(-spread, spread + 1)
    import itertools

    for tup in itertools.product(*([rng] * r)):
        if not any(tup):
            continue
        g = 0
        for t in tup:
            g = math.gcd(g, abs(t))
        prim = tuple(t // g for t in tup)
        canon = prim if prim > tuple(-t for t in prim) else tuple(-t for t in prim)
        if canon not in seen:
            seen.add(canon)
            out.append(prim)
    return out


def _family_sequences(target, n_max):
    seqs = []
    if isinstance(target, GammaWMu):
        r = len(target.w_gens)
        for d in _ray_directions(r):
            seqs.append(SequenceSpec.lattice_path(target, d))
            seqs.append(SequenceSpec.lattice_path(target, tuple(-x for x in d)))
    elif isinstance(target, GammaAlphaBeta):
        for d in _ray_directions(2):
            seqs.append(SequenceSpec.lattice_path(target, d))
            seqs.append(SequenceSpec.lattice_path(target, tuple(-x for x in d)))
    elif isinstance(target, GroupPresentation):
        gens = target.numeric_generators()
        pool = list(gens)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                pool.append(gens[i] @ gens[j])
        for g in pool:
            seqs.append(SequenceSpec.power(g, +1))
            seqs.append(SequenceSpec.power(g, -1))
    else:
        raise TypeError(f"unsupported target {type(target)!r}")
    return seqs


def _collect_kernels(target, n_max):
    kernels = []
    keys = set()
    for spec in _family_sequences(target, n_max):
        try:
            rep = sequence_qp_limit(spec, n_max=n_max, tol=2e-7)
        except DegenerateSequence:
            continue
        if not rep.converged or rep.kernel is None or rep.kernel.dim < 0:
            continue
        piece = rep.kernel
        key = (
            ("line",) + piece.line.quantized_key(1e-6)
            if piece.dim == 1
            else ("point",) + piece.point.quantized_key(1e-6)
        )
        if key not in keys:
            keys.add(key)
            kernels.append(piece)
    return kernels


def equicontinuity_kernels(target, power_bound=1 << 24) -> EquicontinuityReport:
    """Kernels of quasi-projective limits along canonical divergent
    sequences (generator powers and lattice rays); the complement of their
    union estimates the equicontinuity region.  Stability is checked by
    doubling the power bound.

    Power terms cost O(log k), so bounds around 2^24 keep even 1/k-rate
    limits below the convergence tolerance."""
    k1 = _collect_kernels(target, power_bound)
    k2 = _collect_kernels(target, 2 * power_bound)

    def sig(ks):
        out = set()
        for p in ks:
            out.add(
                ("line",) + p.line.quantized_key(1e-6)
                if p.dim == 1
                else ("point",) + p.point.quantized_key(1e-6)
            )
        return out

    stabilized = sig(k1) == sig(k2)
    lines = sum(1 for k in k2 if k.dim == 1)
    pts = sum(1 for k in k2 if k.dim == 0)
    desc = (
        f"complement of {lines} line(s) and {pts} point(s); "
        f"{'stable' if stabilized else 'NOT stable'} under doubling the bound"
    )
    return EquicontinuityReport(k2, stabilized, desc)
