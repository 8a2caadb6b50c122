"""Exact scalar arithmetic over a declared independent basis.

A scalar is (Gaussian rational) * (monomial in declared basis symbols).
The user declares the symbols multiplicatively/algebraically independent;
everything rank- or torsion-critical downstream (lattice ranks, rotation
detection, relation search) reduces to integer linear algebra on exponent
vectors, so the decisions are exact whenever the declaration is honest.

Gaussian-rational coefficients are factored over the Gaussian primes whose
norms have rational prime factors <= 10^4, together with the units
{1, i, -1, -i}.  Anything beyond that raises UnfactorableCoefficient.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import UnfactorableCoefficient, UnsupportedExactOperation

_PRIME_BOUND = 10_000


def _sieve(bound):
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(bound**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [p for p in range(bound + 1) if flags[p]]


_PRIMES = _sieve(_PRIME_BOUND)


class GaussianRational:
    """a + b*i with a, b rational; exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def one(cls):
        return cls(1, 0)

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        n2 = other.norm2()
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def __eq__(self, other):
        return isinstance(other, GaussianRational) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def value(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


_I_UNITS = {
    (1, 0): 0,
    (0, 1): 1,
    (-1, 0): 2,
    (0, -1): 3,
}


def _factor_int(n):
    """Factor a positive integer over primes <= 10^4 or raise."""
    out = {}
    for p in _PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            break
    if n != 1:
        raise UnfactorableCoefficient(f"prime factor of {n} exceeds {_PRIME_BOUND}")
    return out


def _gaussian_divmod(a, b):
    """Nearest-rounding division of Gaussian integers (a, b as (x, y) pairs)."""
    ax, ay = a
    bx, by = b
    n = bx * bx + by * by
    qx = Fraction(ax * bx + ay * by, n)
    qy = Fraction(ay * bx - ax * by, n)
    kx = int(qx + Fraction(1, 2)) if qx >= 0 else -int(-qx + Fraction(1, 2))
    ky = int(qy + Fraction(1, 2)) if qy >= 0 else -int(-qy + Fraction(1, 2))
    rx = ax - (kx * bx - ky * by)
    ry = ay - (kx * by + ky * bx)
    return (kx, ky), (rx, ry)


def _gaussian_gcd(a, b):
    while b != (0, 0):
        _, r = _gaussian_divmod(a, b)
        a, b = b, r
    return a


def _canonical_associate(z):
    """Rotate z by a power of i into {a > 0, -a < b <= a}; return (assoc, k)
    with z = i^k * assoc."""
    x, y = z
    for k in range(4):
        if x > 0 and -x < y <= x:
            return (x, y), k % 4
        x, y = y, -x  # multiply current candidate by -i, i.e. z = i * candidate'
    raise AssertionError("no canonical associate (zero input?)")


_SPLIT_PRIME_CACHE = {}


def _prime_above(p):
    """A Gaussian prime above p = 1 mod 4, canonical associate."""
    if p in _SPLIT_PRIME_CACHE:
        return _SPLIT_PRIME_CACHE[p]
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    g = _gaussian_gcd((p, 0), (x, 1))
    g, _ = _canonical_associate(g)
    _SPLIT_PRIME_CACHE[p] = g
    return g


def _divide_exact(z, w):
    """z / w for Gaussian integers when exact, else None."""
    q, r = _gaussian_divmod(z, w)
    if r == (0, 0):
        return q
    return None


def factor_gaussian_integer(z):
    """z = i^k * prod(pi^e) over canonical Gaussian primes.

    Returns (k, {tag: e}) with tags ('p', p) for inert primes and
    ('g', a, b) for canonical Gaussian primes (norm 2 or split).
    """
    if z == (0, 0):
        raise ZeroDivisionError("factoring zero")
    n = z[0] * z[0] + z[1] * z[1]
    nf = _factor_int(n)
    exps = {}
    for p, en in sorted(nf.items()):
        if p == 2:
            pi = (1, 1)
            for _ in range(en):
                z = _divide_exact(z, pi)
            exps[("g", 1, 1)] = exps.get(("g", 1, 1), 0) + en
        elif p % 4 == 3:
            assert en % 2 == 0
            for _ in range(en // 2):
                z = _divide_exact(z, (p, 0))
            exps[("p", p)] = exps.get(("p", p), 0) + en // 2
        else:
            pi = _prime_above(p)
            pic = _canonical_associate((pi[0], -pi[1]))[0]
            cnt = 0
            while True:
                z2 = _divide_exact(z, pi)
                if z2 is None:
                    break
                z = z2
                cnt += 1
            ccnt = 0
            while True:
                z2 = _divide_exact(z, pic)
                if z2 is None:
                    break
                z = z2
                ccnt += 1
            assert cnt + ccnt == en
            if cnt:
                exps[("g",) + pi] = exps.get(("g",) + pi, 0) + cnt
            if ccnt:
                exps[("g",) + pic] = exps.get(("g",) + pic, 0) + ccnt
    k = _I_UNITS.get(z)
    if k is None:
        raise AssertionError(f"nonunit remainder {z} after factoring")
    return k, exps


def factor_gaussian_rational(g: GaussianRational):
    """g = i^k * prod(pi^e), exponents in Z.  Raises UnfactorableCoefficient
    beyond the prime bound."""
    if g.is_zero():
        raise ZeroDivisionError("factoring zero")
    den = (g.re.denominator * g.im.denominator) // math.gcd(
        g.re.denominator, g.im.denominator
    )
    x = int(g.re * den)
    y = int(g.im * den)
    k_num, e_num = factor_gaussian_integer((x, y))
    k_den, e_den = factor_gaussian_integer((den, 0))
    exps = dict(e_num)
    for tag, e in e_den.items():
        exps[tag] = exps.get(tag, 0) - e
        if exps[tag] == 0:
            del exps[tag]
    return (k_num - k_den) % 4, exps


# ---------------------------------------------------------------------------
# basis declarations

KIND_POSITIVE = "positive"  # positive real, declared mult. independent
KIND_UNIT = "unit"  # unit modulus, declared mult. independent
KIND_ROOT_OF_UNITY = "root_of_unity"  # torsion: value e^{2 pi i p/q}


class BasisSymbol:
    """A declared scalar with a name, numeric value and independence class.

    additive_only marks symbols (like sqrt2) that are only Q-linearly
    independent: they may appear in additive coordinates but never be
    multiplied against another additive_only monomial.
    """

    __slots__ = ("name", "kind", "_value", "rotation", "additive_only")

    def __init__(self, name, value=None, kind=KIND_POSITIVE, rotation=None,
                 additive_only=False):
        self.name = name
        self.kind = kind
        self.rotation = Fraction(rotation) if rotation is not None else None
        if kind == KIND_ROOT_OF_UNITY:
            if self.rotation is None:
                raise ValueError("root_of_unity symbol needs rotation p/q")
            self._value = cmath.exp(2j * cmath.pi * float(self.rotation))
        else:
            if value is None:
                raise ValueError(f"symbol {name!r} needs a numeric value")
            self._value = complex(value)
        self.additive_only = additive_only

    @property
    def value(self) -> complex:
        return self._value

    @property
    def order(self):
        return self.rotation.denominator if self.rotation is not None else None

    def __repr__(self):
        return f"BasisSymbol({self.name!r}, kind={self.kind!r})"


class Basis:
    """Ordered collection of declared-independent symbols."""

    def __init__(self, symbols=()):
        self.symbols = list(symbols)
        self._index = {s.name: i for i, s in enumerate(self.symbols)}
        if len(self._index) != len(self.symbols):
            raise ValueError("duplicate symbol names")

    def __len__(self):
        return len(self.symbols)

    def index(self, name):
        return self._index[name]

    def symbol(self, name):
        return self.symbols[self._index[name]]

    def names(self):
        return [s.name for s in self.symbols]


EMPTY_BASIS = Basis()


class SymbolicScalar:
    """Nonzero exact scalar: coeff * prod(symbol^power)."""

    __slots__ = ("basis", "coeff", "powers")

    def __init__(self, basis: Basis, coeff: GaussianRational, powers=None):
        if coeff.is_zero():
            raise ZeroDivisionError("SymbolicScalar must be nonzero")
        if powers is None:
            powers = (0,) * len(basis)
        powers = list(powers)
        # torsion symbols live in Z/q
        for i, s in enumerate(basis.symbols):
            if s.kind == KIND_ROOT_OF_UNITY and powers[i]:
                powers[i] %= s.order
        self.basis = basis
        self.coeff = coeff
        self.powers = tuple(powers)

    @classmethod
    def from_rational(cls, basis, re, im=0):
        return cls(basis, GaussianRational(re, im))

    @classmethod
    def from_symbol(cls, basis, name, power=1):
        p = [0] * len(basis)
        p[basis.index(name)] = power
        return cls(basis, GaussianRational.one(), p)

    def __mul__(self, other):
        self._check_basis(other)
        return SymbolicScalar(
            self.basis,
            self.coeff * other.coeff,
            [a + b for a, b in zip(self.powers, other.powers)],
        )

    def __truediv__(self, other):
        return self * other.invert()

    def invert(self):
        return SymbolicScalar(
            self.basis,
            GaussianRational.one() / self.coeff,
            [-p for p in self.powers],
        )

    def __pow__(self, n: int):
        if n == 0:
            return SymbolicScalar(self.basis, GaussianRational.one())
        base = self if n > 0 else self.invert()
        e = abs(n)
        coeff = GaussianRational.one()
        acc = base.coeff
        k = e
        while k:
            if k & 1:
                coeff = coeff * acc
            acc = acc * acc
            k >>= 1
        return SymbolicScalar(self.basis, coeff, [p * e for p in base.powers])

    def __eq__(self, other):
        return (
            isinstance(other, SymbolicScalar)
            and self.coeff == other.coeff
            and self.powers == other.powers
        )

    def __hash__(self):
        return hash((self.coeff, self.powers))

    def is_one(self):
        return self.coeff == GaussianRational.one() and not any(self.powers)

    def value(self) -> complex:
        v = self.coeff.value()
        for s, p in zip(self.basis.symbols, self.powers):
            if p:
                v *= s.value**p
        return v

    def _check_basis(self, other):
        if self.basis is not other.basis and self.basis.names() != other.basis.names():
            raise ValueError("mixing scalars over different bases")

    # --- exact multiplicative fingerprints -------------------------------

    def mult_record(self):
        """(free exponent dict, rotation Fraction mod 1).

        Free keys: ('sym', name) for positive/unit symbols, Gaussian-prime
        tags for the coefficient.  The rotation collects i-powers and
        root-of-unity symbols.
        """
        k, exps = factor_gaussian_rational(self.coeff)
        free = dict(exps)
        rot = Fraction(k, 4)
        for s, p in zip(self.basis.symbols, self.powers):
            if p == 0:
                continue
            if s.kind == KIND_ROOT_OF_UNITY:
                rot += p * s.rotation
            else:
                free[("sym", s.name)] = free.get(("sym", s.name), 0) + p
        rot -= math.floor(rot)
        return free, rot

    def modulus2_record(self):
        """Exponent dict of |value|^2 over rational primes and positive
        symbols; unit-kind symbols and torsion contribute nothing."""
        free, _ = self.mult_record()
        out = {}
        for tag, e in free.items():
            if tag[0] == "p":  # inert prime p: |p|^2 = p^2
                out[("prime", tag[1])] = out.get(("prime", tag[1]), 0) + 2 * e
            elif tag[0] == "g":  # Gaussian prime of norm n: |pi|^2 = n
                n = tag[1] * tag[1] + tag[2] * tag[2]
                out[("prime", n)] = out.get(("prime", n), 0) + e
            else:
                s = self.basis.symbol(tag[1])
                if s.kind == KIND_POSITIVE:
                    out[tag] = out.get(tag, 0) + 2 * e
        return {k: v for k, v in out.items() if v}

    def angle_free_record(self):
        """Free (non-torsion) part of the argument: unit symbols and split
        Gaussian prime angles.  Zero together with modulus 1 iff the value
        is a root of unity."""
        free, _ = self.mult_record()
        out = {}
        for tag, e in free.items():
            if tag[0] == "g" and tag[2] != 0:  # (1,1) and split primes carry angle
                out[tag] = out.get(tag, 0) + e
            elif tag[0] == "sym":
                s = self.basis.symbol(tag[1])
                if s.kind == KIND_UNIT:
                    out[tag] = out.get(tag, 0) + e
        return {k: v for k, v in out.items() if v}

    def is_unit_modulus(self):
        return not self.modulus2_record()

    def is_root_of_unity(self):
        if not self.is_unit_modulus():
            return False
        return not self.angle_free_record()

    def rotation_fraction(self):
        """theta with value = e^{2 pi i theta}, for roots of unity only."""
        assert self.is_root_of_unity()
        _, rot = self.mult_record()
        return rot

    def __repr__(self):
        parts = [str(self.coeff)]
        for s, p in zip(self.basis.symbols, self.powers):
            if p:
                parts.append(f"{s.name}^{p}" if p != 1 else s.name)
        return "*".join(parts)


# ---------------------------------------------------------------------------
# sums of monomial terms and 3x3 exact matrices


class ExactComplex:
    """Finite sum of (Gaussian rational) * monomial terms over one basis."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: Basis, terms=None):
        self.basis = basis
        self.terms = {}
        if terms:
            for powers, coeff in terms.items():
                if not coeff.is_zero():
                    self.terms[tuple(powers)] = coeff

    @classmethod
    def zero(cls, basis):
        return cls(basis)

    @classmethod
    def one(cls, basis):
        return cls.from_rational(basis, 1)

    @classmethod
    def from_rational(cls, basis, re, im=0):
        g = GaussianRational(re, im)
        if g.is_zero():
            return cls(basis)
        return cls(basis, {(0,) * len(basis): g})

    @classmethod
    def from_scalar(cls, s: SymbolicScalar):
        return cls(s.basis, {s.powers: s.coeff})

    def is_zero(self):
        return not self.terms

    def is_single_term(self):
        return len(self.terms) == 1

    def to_scalar(self) -> SymbolicScalar:
        if not self.is_single_term():
            raise UnsupportedExactOperation(
                f"not a single-term value: {len(self.terms)} terms"
            )
        (powers, coeff), = self.terms.items()
        return SymbolicScalar(self.basis, coeff, powers)

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p)
            out[p] = c if s is None else s + c
        return ExactComplex(self.basis, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactComplex(self.basis, {p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymbolicScalar):
            other = ExactComplex.from_scalar(other)
        out = {}
        for pa, ca in self.terms.items():
            for pb, cb in other.terms.items():
                self._check_product(pa, pb)
                p = self._merge_powers(pa, pb)
                c = ca * cb
                s = out.get(p)
                out[p] = c if s is None else s + c
        return ExactComplex(self.basis, out)

    def _merge_powers(self, pa, pb):
        merged = []
        for i, (a, b) in enumerate(zip(pa, pb)):
            e = a + b
            s = self.basis.symbols[i]
            if s.kind == KIND_ROOT_OF_UNITY and e:
                e %= s.order
            merged.append(e)
        return tuple(merged)

    def _check_product(self, pa, pb):
        for i, (a, b) in enumerate(zip(pa, pb)):
            if a and b and self.basis.symbols[i].additive_only:
                raise UnsupportedExactOperation(
                    f"product would square additive-only symbol "
                    f"{self.basis.symbols[i].name!r}"
                )

    def invert(self):
        return ExactComplex.from_scalar(self.to_scalar().invert())

    def __truediv__(self, other):
        if isinstance(other, SymbolicScalar):
            return self * other.invert()
        return self * other.invert()

    def __eq__(self, other):
        return isinstance(other, ExactComplex) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def value(self) -> complex:
        v = 0j
        for powers, coeff in self.terms.items():
            t = coeff.value()
            for s, p in zip(self.basis.symbols, powers):
                if p:
                    t *= s.value**p
            v += t
        return v

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            repr(SymbolicScalar(self.basis, c, p)) for p, c in sorted(self.terms.items())
        )


class ExactMatrix:
    """3x3 matrix of ExactComplex entries."""

    __slots__ = ("basis", "rows")

    def __init__(self, basis, rows):
        self.basis = basis
        self.rows = [[e for e in r] for r in rows]

    @classmethod
    def identity(cls, basis):
        z = ExactComplex.zero(basis)
        o = ExactComplex.one(basis)
        return cls(basis, [[o, z, z], [z, o, z], [z, z, o]])

    @classmethod
    def from_rational_rows(cls, basis, rows):
        return cls(
            basis,
            [[ExactComplex.from_rational(basis, v) for v in r] for r in rows],
        )

    def entry(self, i, j) -> ExactComplex:
        return self.rows[i][j]

    def __matmul__(self, other):
        rows = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = ExactComplex.zero(self.basis)
                for k in range(3):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(row)
        return ExactMatrix(self.basis, rows)

    def det(self) -> ExactComplex:
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def inverse(self):
        """Adjugate over determinant; the determinant must be a monomial."""
        d = self.det()
        dinv = d.invert()
        r = self.rows
        cof = [
            [
                r[1][1] * r[2][2] - r[1][2] * r[2][1],
                -(r[0][1] * r[2][2] - r[0][2] * r[2][1]),
                r[0][1] * r[1][2] - r[0][2] * r[1][1],
            ],
            [
                -(r[1][0] * r[2][2] - r[1][2] * r[2][0]),
                r[0][0] * r[2][2] - r[0][2] * r[2][0],
                -(r[0][0] * r[1][2] - r[0][2] * r[1][0]),
            ],
            [
                r[1][0] * r[2][1] - r[1][1] * r[2][0],
                -(r[0][0] * r[2][1] - r[0][1] * r[2][0]),
                r[0][0] * r[1][1] - r[0][1] * r[1][0],
            ],
        ]
        return ExactMatrix(
            self.basis, [[cof[i][j] * dinv for j in range(3)] for i in range(3)]
        )

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactMatrix.identity(self.basis)
        acc = self
        while n:
            if n & 1:
                out = out @ acc
            n >>= 1
            if n:
                acc = acc @ acc
        return out

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and all(
            self.rows[i][j] == other.rows[i][j] for i in range(3) for j in range(3)
        )

    def is_identity(self):
        return self == ExactMatrix.identity(self.basis)

    def is_scalar(self):
        """Projectively trivial: a scalar multiple of the identity."""
        r = self.rows
        off_zero = all(
            r[i][j].is_zero() for i in range(3) for j in range(3) if i != j
        )
        return off_zero and r[0][0] == r[1][1] and r[1][1] == r[2][2]

    def is_upper_triangular(self):
        r = self.rows
        return r[1][0].is_zero() and r[2][0].is_zero() and r[2][1].is_zero()

    def numpy(self):
        import numpy as np

        return np.array(
            [[self.rows[i][j].value() for j in range(3)] for i in range(3)],
            dtype=complex,
        )

    def __repr__(self):
        return "ExactMatrix([" + ", ".join(
            "[" + ", ".join(repr(e) for e in row) + "]" for row in self.rows
        ) + "])"
