"""Integer-lattice algebra: Hermite normal form, kernels, and the exact
bookkeeping for finitely generated subgroups of (C*, *) and (C, +).

All rank and torsion decisions run over exponent vectors with arbitrary
precision integers; nothing here touches floating point except the
discreteness test of additive lattices, whose real-span dimension is a
geometric quantity (rank over Z stays exact).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import TorsionDetected
from .exact import ExactComplex, GaussianRational, SymbolicScalar


# ---------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(rows):
    """Row-style HNF with transform: returns (H, U, rank) with U @ M = H,
    U unimodular, pivots positive, entries above each pivot reduced."""
    M = [list(map(int, r)) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        # clear column c below row r by gcd row reduction
        while True:
            piv = None
            best = None
            for i in range(r, m):
                v = abs(M[i][c])
                if v and (best is None or v < best):
                    best, piv = v, i
            if piv is None:
                break
            if piv != r:
                M[r], M[piv] = M[piv], M[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    for j in range(n):
                        M[i][j] -= q * M[r][j]
                    for j in range(m):
                        U[i][j] -= q * U[r][j]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < m and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
                U[r] = [-x for x in U[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    for j in range(n):
                        M[i][j] -= q * M[r][j]
                    for j in range(m):
                        U[i][j] -= q * U[r][j]
            r += 1
    return M, U, r


def lattice_rank(rows) -> int:
    if not rows:
        return 0
    _, _, r = hermite_normal_form(rows)
    return r


def lattice_kernel(rows):
    """Basis of the right kernel {v : M v = 0}, sign-normalized."""
    if not rows:
        return []
    n = len(rows[0])
    transpose = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    _, U, r = hermite_normal_form(transpose)
    out = []
    for i in range(r, n):
        v = U[i]
        for x in v:
            if x:
                if x < 0:
                    v = [-y for y in v]
                break
        out.append(list(v))
    return out


def left_kernel(rows):
    """Basis of {a : a M = 0}."""
    if not rows:
        return []
    _, U, r = hermite_normal_form(rows)
    out = []
    for i in range(r, len(rows)):
        v = U[i]
        for x in v:
            if x:
                if x < 0:
                    v = [-y for y in v]
                break
        out.append(list(v))
    return out


def solve_left(rows, target):
    """Integer x with x M = target, or None."""
    if not rows:
        return None if any(target) else []
    H, U, r = hermite_normal_form(rows)
    n = len(target)
    t = list(map(int, target))
    y = [0] * len(rows)
    pivots = []
    for i in range(r):
        c = next(j for j in range(n) if H[i][j])
        pivots.append((i, c))
    for i, c in pivots:
        if t[c] % H[i][c] != 0:
            return None
        q = t[c] // H[i][c]
        y[i] = q
        if q:
            for j in range(n):
                t[j] -= q * H[i][j]
    if any(t):
        return None
    m = len(rows)
    return [sum(y[i] * U[i][j] for i in range(m)) for j in range(m)]


# ---------------------------------------------------------------------------
# multiplicative subgroups of C*


def _free_matrix(values):
    """Stack free exponent vectors of SymbolicScalars over a shared
    deterministic column order.  Returns (matrix, keys, rotations)."""
    records = [v.mult_record() for v in values]
    keys = sorted({k for free, _ in records for k in free}, key=repr)
    mat = [[free.get(k, 0) for k in keys] for free, _ in records]
    rots = [rot for _, rot in records]
    return mat, keys, rots


def multiplicative_rank(values) -> int:
    mat, _, _ = _free_matrix(values)
    return lattice_rank(mat)


def _product_over(values, exponents) -> SymbolicScalar:
    out = None
    for v, e in zip(values, exponents):
        if e == 0:
            continue
        t = v**e
        out = t if out is None else out * t
    if out is None:
        out = SymbolicScalar(values[0].basis, GaussianRational.one())
    return out


def image_generators(values):
    """Minimal generating data for the multiplicative group <values>.

    Returns (generators, rank, torsion, transform_rows): generators realize
    the HNF basis of the free exponent lattice as actual products of the
    inputs (transform_rows records which products); torsion lists the
    nontrivial roots of unity arising from exponent relations.
    """
    values = list(values)
    if not values:
        return [], 0, [], []
    mat, _, _ = _free_matrix(values)
    H, U, r = hermite_normal_form(mat)
    gens = [_product_over(values, U[i]) for i in range(r)]
    transform = [list(U[i]) for i in range(r)]
    torsion = []
    seen = set()
    for i in range(r, len(values)):
        t = _product_over(values, U[i])
        if not t.is_one() and t not in seen:
            torsion.append(t)
            seen.add(t)
    return gens, r, torsion, transform


def contains_rational_rotation(values) -> bool:
    """True iff the group generated contains a root of unity != 1."""
    values = [v for v in values if not v.is_one()]
    if not values:
        return False
    _, _, torsion, _ = image_generators(values)
    return bool(torsion)


def contains_irrational_rotation(values) -> bool:
    """True iff the group contains a non-torsion unit-modulus element."""
    values = [v for v in values if not v.is_one()]
    if not values:
        return False
    recs = [v.modulus2_record() for v in values]
    keys = sorted({k for rec in recs for k in rec}, key=repr)
    mat = [[rec.get(k, 0) for k in keys] for rec in recs]
    if keys:
        kernel = left_kernel(mat)
    else:
        kernel = [[int(i == j) for j in range(len(values))] for i in range(len(values))]
    for a in kernel:
        s = _product_over(values, a)
        if not s.is_root_of_unity():
            return True
    return False


def require_torsion_free(values, where=""):
    if contains_rational_rotation(values):
        raise TorsionDetected(f"torsion in {where or 'multiplicative image'}")


def relation_search(alpha, beta, bound=0, exact=True):
    """Nonzero (n, m) with alpha^n = beta^m, or None.

    Exact mode solves the integer system on exponent vectors (complete).
    Numeric mode searches |n|, |m| <= bound for |alpha^n beta^-m - 1| <= 1e-9
    and flags the result as bounded.
    """
    if exact:
        mat, _, rots = _free_matrix([alpha, beta])
        rows = [mat[0], [-x for x in mat[1]]]
        if not rows[0]:
            rows = [[0], [0]]  # no free part at all
            kernel = [[1, 0], [0, 1]]
        else:
            kernel = left_kernel(rows)
        if not kernel:
            return None
        ta, tb = rots[0], rots[1]
        # impose the torsion congruence n*ta - m*tb = 0 mod 1 on the kernel
        deltas = [v[0] * ta - v[1] * tb for v in kernel]
        L = 1
        for d in deltas:
            L = L * d.denominator // math.gcd(L, d.denominator)
        if L == 1:
            sol = kernel[0]
        else:
            ints = [int(d * L) % L for d in deltas]
            rows2 = [[ints[i]] for i in range(len(kernel))] + [[L]]
            combos = left_kernel(rows2)
            sol = None
            for cmb in combos:
                coeffs = cmb[: len(kernel)]
                if any(coeffs):
                    cand = [
                        sum(coeffs[i] * kernel[i][j] for i in range(len(kernel)))
                        for j in range(2)
                    ]
                    if any(cand):
                        sol = cand
                        break
            if sol is None:
                return None
        n, m = sol
        if n < 0 or (n == 0 and m < 0):
            n, m = -n, -m
        g = math.gcd(abs(n), abs(m))
        if g > 1:
            # the kernel basis may be non-primitive only through the torsion
            # congruence; keep as computed unless trivially reducible
            cand = (n // g, m // g)
            if _check_relation(alpha, beta, *cand):
                n, m = cand
        return (n, m)
    # numeric bounded search
    va, vb = complex(alpha), complex(beta)
    la, lb = np.log(abs(va)), np.log(abs(vb))
    best = None
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            if (n, m) == (0, 0):
                continue
            if abs(n * la - m * lb) > 1e-6:
                continue
            if abs(va**n * vb**-m - 1) <= 1e-9:
                cand = (n, m)
                if best is None or abs(n) + abs(m) < abs(best[0]) + abs(best[1]):
                    best = cand
    return best


def _check_relation(alpha, beta, n, m):
    try:
        return (alpha**n * beta**-m).is_one()
    except Exception:
        return False


# ---------------------------------------------------------------------------
# additive subgroups of C over exact coordinates


def _rational_coordinates(values):
    """Each ExactComplex becomes a rational vector over (monomial, re|im)
    coordinates.  Distinct monomials are Q-linearly independent by the
    basis declaration, so Z-linear algebra on these vectors is exact."""
    keys = sorted(
        {p for v in values for p in v.terms}, key=repr
    )
    rows = []
    for v in values:
        row = []
        for p in keys:
            c = v.terms.get(p)
            row.append(c.re if c else Fraction(0))
            row.append(c.im if c else Fraction(0))
        rows.append(row)
    return rows, keys


def _clear_denominators(rows):
    """Scale columns by integer factors (a Z-module isomorphism)."""
    if not rows:
        return []
    ncol = len(rows[0])
    out = [[0] * ncol for _ in rows]
    for j in range(ncol):
        L = 1
        for r in rows:
            d = r[j].denominator
            L = L * d // math.gcd(L, d)
        for i, r in enumerate(rows):
            out[i][j] = int(r[j] * L)
    return out


class AdditiveLattice:
    """Z-span of finitely many exact complex values inside (C, +)."""

    def __init__(self, values):
        self.values = list(values)
        rat, self._keys = _rational_coordinates(self.values)
        self._mat = _clear_denominators(rat)
        if self._mat:
            self._hnf, self._transform, self.rank = hermite_normal_form(self._mat)
        else:
            self._hnf, self._transform, self.rank = [], [], 0

    def basis_combinations(self):
        """Rows of the unimodular transform realizing an HNF basis of the
        lattice as integer combinations of the input values."""
        return [list(self._transform[i]) for i in range(self.rank)]

    def member_coefficients(self, value: ExactComplex):
        """Integer coefficients over the input values, or None."""
        rat, keys = _rational_coordinates(self.values + [value])
        mat = _clear_denominators(rat)
        target = mat[-1]
        return solve_left(mat[:-1], target)

    def real_dimension(self) -> int:
        """Dimension of the real span of the values in C (numeric)."""
        pts = np.array(
            [[v.value().real, v.value().imag] for v in self.values], dtype=float
        )
        if not len(pts) or not np.any(np.abs(pts) > 0):
            return 0
        s = np.linalg.svd(pts, compute_uv=False)
        return int(np.sum(s > 1e-9 * max(s[0], 1.0)))

    def is_discrete(self) -> bool:
        """A finitely generated subgroup of C is discrete iff its Z-rank
        equals the dimension of its real span."""
        return self.rank == self.real_dimension()
