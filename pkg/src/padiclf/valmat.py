"""Finite matrices over a valued scalar model: column Hodge, Hodge and
Newton polygons, slope slicing, r-perturbations and semilinear iteration.

The scalar model is duck-typed: it supplies ring constants, arithmetic,
and an exact valuation.  Hodge data comes from exhaustive minors up to
size 8 and valuation-pivoted elimination beyond; characteristic
polynomials come from the principal-minor sums, which keeps everything
division-free over the model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cyclotomic import INFINITE, CyclotomicInteger
from .polygons import SlopePolygon, ValUnit

EXHAUSTIVE_MINOR_LIMIT = 8


class IntPadicModel:
    """Plain integers with the p-adic valuation."""

    def __init__(self, p: int):
        self.p = p
        self.unit = ValUnit.q_adic(p)

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, v: int):
        return v

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def val(self, a):
        if a == 0:
            return INFINITE
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return Fraction(v)


class CyclotomicModel:
    """Exact Z[zeta_{p^n}] scalars with the pi-adic valuation."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.unit = ValUnit.pi_adic(p, n)

    def zero(self):
        return CyclotomicInteger.zero(self.p, self.n)

    def one(self):
        return CyclotomicInteger.one(self.p, self.n)

    def from_int(self, v: int):
        return CyclotomicInteger.from_int(self.p, self.n, v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def val(self, a):
        v = a.pi_valuation()
        return v if v is INFINITE else Fraction(v)


class UnramifiedQuadraticModel:
    """Z_q for q = p^2: pairs a + b*w with w^2 = w + 1 lifted mod p^mexp.

    The Frobenius sends w to the Hensel lift of its conjugate root, i.e.
    the canonical lift of x -> x^p; it squares to the identity.
    """

    def __init__(self, p: int, mexp: int = 20):
        if p % 5 in (0, 1, 4):
            # x^2 - x - 1 factors mod p when 5 is a square mod p
            raise ValueError("p must be inert in x^2 - x - 1 (p = 2, 3 mod 5)")
        self.p = p
        self.mexp = mexp
        self.mod = p**mexp
        self.unit = ValUnit.q_adic(p)
        self._frob_w = self._lift_frobenius()

    def _lift_frobenius(self) -> tuple[int, int]:
        # Solve h(y) = y^2 - y - 1 = 0 with y = w^p mod p, by Newton iteration.
        y = self._pow_basis(self.p)
        for _ in range(self.mexp.bit_length() + 2):
            hy = self._sub(self._mul(y, y), self._add(y, (1, 0)))
            hpy = self._sub(self._add(y, y), (1, 0))
            y = self._sub(y, self._mul(hy, self._inv_unit(hpy)))
        assert self._sub(self._mul(y, y), self._add(y, (1, 0))) == (0, 0)
        return y

    def _pow_basis(self, e: int) -> tuple[int, int]:
        result = (1, 0)
        base = (0, 1)
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _add(self, a, b):
        return ((a[0] + b[0]) % self.mod, (a[1] + b[1]) % self.mod)

    def _sub(self, a, b):
        return ((a[0] - b[0]) % self.mod, (a[1] - b[1]) % self.mod)

    def _mul(self, a, b):
        # (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
        a1b1 = a[1] * b[1]
        return (
            (a[0] * b[0] + a1b1) % self.mod,
            (a[0] * b[1] + a[1] * b[0] + a1b1) % self.mod,
        )

    def _inv_unit(self, a):
        # Newton lifting of the inverse from mod p; requires a unit.
        n0 = (a[0] * (a[0] + a[1]) - a[1] * a[1]) % self.p  # norm mod p
        if n0 == 0:
            raise ZeroDivisionError("not a unit in the quadratic model")
        conj = ((a[0] + a[1]) % self.mod, (-a[1]) % self.mod)
        norm = self._mul(a, conj)[0]
        ninv = pow(norm, -1, self.mod)
        return ((conj[0] * ninv) % self.mod, (conj[1] * ninv) % self.mod)

    zero = staticmethod(lambda: (0, 0))
    one = staticmethod(lambda: (1, 0))

    def from_int(self, v: int):
        return (v % self.mod, 0)

    def add(self, a, b):
        return self._add(a, b)

    def sub(self, a, b):
        return self._sub(a, b)

    def mul(self, a, b):
        return self._mul(a, b)

    def neg(self, a):
        return ((-a[0]) % self.mod, (-a[1]) % self.mod)

    def is_zero(self, a) -> bool:
        return a == (0, 0)

    def val(self, a):
        if a == (0, 0):
            return INFINITE
        v = 0
        a0, a1 = a
        while a0 % self.p == 0 and a1 % self.p == 0:
            a0 //= self.p
            a1 //= self.p
            v += 1
        return Fraction(v)

    def frob(self, a):
        w = self._frob_w
        return self._add((a[0] % self.mod, 0), self._mul((a[1], 0), w))

    def coordinates(self, a) -> tuple[int, int]:
        """Z_p-coordinates of a on the basis {1, w}."""
        return a


@dataclass(frozen=True)
class ValuedMatrix:
    """Square matrix over a scalar model; rows index the output side."""

    entries: tuple[tuple, ...]
    model: object

    @classmethod
    def make(cls, rows, model) -> ValuedMatrix:
        rows = tuple(tuple(r) for r in rows)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        return cls(rows, model)

    @property
    def size(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.size))

    def column_valuation(self, j: int):
        vals = [self.model.val(x) for x in self.column(j)]
        finite = [v for v in vals if v is not INFINITE]
        return min(finite) if finite else INFINITE

    def add(self, other: ValuedMatrix) -> ValuedMatrix:
        self._shape_check(other)
        m = self.model
        return ValuedMatrix.make(
            [
                [m.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            m,
        )

    def sub(self, other: ValuedMatrix) -> ValuedMatrix:
        self._shape_check(other)
        m = self.model
        return ValuedMatrix.make(
            [
                [m.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            m,
        )

    def matmul(self, other: ValuedMatrix) -> ValuedMatrix:
        self._shape_check(other)
        m = self.model
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = m.zero()
                for k in range(n):
                    acc = m.add(acc, m.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            rows.append(row)
        return ValuedMatrix.make(rows, m)

    def _shape_check(self, other: ValuedMatrix) -> None:
        if self.size != other.size:
            raise ValueError("matrix shape mismatch")

    def submatrix(self, rows, cols) -> ValuedMatrix:
        return ValuedMatrix.make(
            [[self.entries[i][j] for j in cols] for i in rows], self.model
        )

    def determinant(self):
        """Division-free determinant by expansion over column subsets."""
        m = self.model
        n = self.size
        if n == 0:
            return m.one()
        # dp[frozenset of used columns] after filling rows 0..k-1
        dp = {0: m.one()}
        for i in range(n):
            ndp = {}
            for mask, acc in dp.items():
                sign_flips = 0
                for j in range(n):
                    bit = 1 << j
                    if mask & bit:
                        sign_flips += 1
                        continue
                    e = self.entries[i][j]
                    if m.is_zero(e):
                        continue
                    term = m.mul(acc, e)
                    if sign_flips % 2:
                        term = m.neg(term)
                    key = mask | bit
                    ndp[key] = m.add(ndp[key], term) if key in ndp else term
            dp = ndp
        full = (1 << n) - 1
        return dp.get(full, m.zero())


def charpoly_coefficients(mat: ValuedMatrix) -> list:
    """Coefficients c_0..c_N of det(I - s*M): c_k = (-1)^k * (sum of k x k
    principal minors)."""
    m = mat.model
    n = mat.size
    out = [m.one()]
    for k in range(1, n + 1):
        acc = m.zero()
        for subset in combinations(range(n), k):
            acc = m.add(acc, mat.submatrix(subset, subset).determinant())
        out.append(acc if k % 2 == 0 else m.neg(acc))
    return out


def column_hodge(mat: ValuedMatrix) -> SlopePolygon:
    """Polygon of per-column minimum valuations; zero columns counted as
    infinite slopes."""
    slopes = []
    infinite = 0
    for j in range(mat.size):
        v = mat.column_valuation(j)
        if v is INFINITE:
            infinite += 1
        else:
            slopes.append(v)
    return SlopePolygon.from_slopes(slopes, mat.model.unit, infinite)


def hodge_polygon(mat: ValuedMatrix) -> SlopePolygon:
    """Hull of (k, min valuation over k x k minors).

    Exhaustive minors up to size 8; valuation-pivoted elimination (the
    invariant-factor route) for larger matrices on models exposing
    ``exact_div``.
    """
    n = mat.size
    if n <= EXHAUSTIVE_MINOR_LIMIT:
        vals = [Fraction(0)]
        for k in range(1, n + 1):
            best = INFINITE
            for rows in combinations(range(n), k):
                for cols in combinations(range(n), k):
                    v = mat.model.val(mat.submatrix(rows, cols).determinant())
                    if v is not INFINITE and (best is INFINITE or v < best):
                        best = v
            vals.append(best)
        return SlopePolygon.from_point_valuations(vals, mat.model.unit)
    return _hodge_by_elimination(mat)


def _hodge_by_elimination(mat: ValuedMatrix) -> SlopePolygon:
    """Invariant factors via elimination with minimal-valuation pivots.

    Works over the fraction field with exact arithmetic; only valid for the
    integer model, which is the one that needs large sizes.
    """
    if not isinstance(mat.model, IntPadicModel):
        raise NotImplementedError(
            "elimination Hodge polygon implemented for the integer model only"
        )
    p = mat.model.p
    a = [[Fraction(x) for x in row] for row in mat.entries]
    n = mat.size

    def vp(x: Fraction):
        if x == 0:
            return INFINITE
        v = 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        return v

    pivots = []
    rows = list(range(n))
    cols = list(range(n))
    while rows and cols:
        best = None
        for i in rows:
            for j in cols:
                v = vp(a[i][j])
                if v is not INFINITE and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        pivots.append(Fraction(v))
        piv = a[pi][pj]
        for i in rows:
            if i == pi:
                continue
            factor = a[i][pj] / piv
            for j in cols:
                a[i][j] -= factor * a[pi][j]
        rows.remove(pi)
        cols.remove(pj)
    pivots.sort()
    return SlopePolygon.from_slopes(pivots, mat.model.unit)


def newton_polygon(mat: ValuedMatrix) -> SlopePolygon:
    """pi-adic Newton polygon of det(I - s*M)."""
    coeffs = charpoly_coefficients(mat)
    vals = [mat.model.val(c) for c in coeffs]
    finite_idx = [i for i, v in enumerate(vals) if v is not INFINITE]
    top = max(finite_idx)
    return SlopePolygon.from_point_valuations(vals[: top + 1], mat.model.unit)


def slice_below(mat: ValuedMatrix, r) -> tuple[tuple[int, ...], ValuedMatrix]:
    """Indices with column valuation < r and the principal submatrix on them."""
    r = Fraction(r)
    idx = tuple(
        j
        for j in range(mat.size)
        if (v := mat.column_valuation(j)) is not INFINITE and v < r
    )
    return idx, mat.submatrix(idx, idx)


def is_r_perturbation(mat: ValuedMatrix, other: ValuedMatrix, r) -> bool:
    """Column conditions on eps = other - mat: strictly above the small
    columns, at least r elsewhere."""
    mat._shape_check(other)
    r = Fraction(r)
    eps = other.sub(mat)
    small, _ = slice_below(mat, r)
    small_set = set(small)
    for j in range(mat.size):
        ev = eps.column_valuation(j)
        if j in small_set:
            cv = mat.column_valuation(j)
            if not (ev is INFINITE or ev > cv):
                return False
        else:
            if not (ev is INFINITE or ev >= r):
                return False
    return True


def touching(mat: ValuedMatrix, r) -> bool:
    """Terminal-point equality of the r-truncated Newton and column Hodge
    polygons."""
    r = Fraction(r)
    np_t = newton_polygon(mat).truncate_below(r)
    chp_t = column_hodge(mat).truncate_below(r)
    return np_t.shares_terminal_point(chp_t)


def semilinear_iterate(mat: ValuedMatrix, v: int) -> ValuedMatrix:
    """F^(v-1)(M) * F^(v-2)(M) * ... * M for a model with a Frobenius."""
    if not hasattr(mat.model, "frob"):
        raise TypeError("scalar model has no Frobenius")
    if v < 1:
        raise ValueError("iteration count must be >= 1")

    def fmap(m: ValuedMatrix) -> ValuedMatrix:
        return ValuedMatrix.make(
            [[mat.model.frob(x) for x in row] for row in m.entries], mat.model
        )

    frobs = [mat]
    for _ in range(v - 1):
        frobs.append(fmap(frobs[-1]))
    out = frobs[-1]
    for m in reversed(frobs[:-1]):
        out = out.matmul(m)
    return out


def associated_block_matrix(mat: ValuedMatrix) -> ValuedMatrix:
    """Z_p-linear matrix of the semilinear operator on the basis
    {w_b e_j} for the quadratic model; the test apparatus for the
    root-of-iterate comparison."""
    model = mat.model
    if not isinstance(model, UnramifiedQuadraticModel):
        raise TypeError("block form needs the quadratic model")
    n = mat.size
    intmodel = IntPadicModel(model.p)
    size = 2 * n
    rows = [[0] * size for _ in range(size)]
    basis = [(1, 0), (0, 1)]
    for j in range(n):
        for b in range(2):
            # operator applied to w_b e_j: column entries Psi_ij * F^{-1}(w_b);
            # F has order 2 so F^{-1} = F.
            wb = model.frob(basis[b])
            for i in range(n):
                val = model.mul(mat.entries[i][j], wb)
                a0, a1 = model.coordinates(val)
                rows[2 * i + 0][2 * j + b] = _lift_signed(a0, model.mod)
                rows[2 * i + 1][2 * j + b] = _lift_signed(a1, model.mod)
    return ValuedMatrix.make(rows, intmodel)


def _lift_signed(a: int, mod: int) -> int:
    return a - mod if a > mod // 2 else a
