"""Independent local Newton-polygon oracle for order-p characters, q = p.

The route is classical: a root pi_D of x^(p-1) = -p picked out by
pi_D = zeta - 1 mod pi^2, the splitting series exp(pi_D(u - u^p)), the
product Frobenius structure E, and the matrix of U_p after E on the
monomial basis.  The characteristic series of the truncated matrix is
computed exactly from traces; its truncated Newton polygon, after one
slope-0 segment is stripped, reproduces the local L-function polygon.
Soundness of the truncation is certified two ways: an interior tail
bound from the actual entry valuations, and a re-run at doubled sizes
that must report the identical polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import INFINITE, CyclotomicInteger
from .polygons import SlopePolygon, ValUnit
from .valmat import ValuedMatrix

# ---------------------------------------------------------------------------
# scalars: Z[zeta_p] mod p^mexp with a tracked pi-adic precision


def _reduce_tuple(coeffs: list[int], p: int, mod: int) -> tuple[int, ...]:
    e = p - 1
    out = list(coeffs) + [0] * (2 * e - 1 - len(coeffs))
    for i in range(2 * e - 2, e - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for t in range(e):
                out[i - e + t] -= c
    return tuple(v % mod for v in out[:e])


def _cmul(a: tuple, b: tuple, p: int, mod: int) -> tuple[int, ...]:
    e = p - 1
    out = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _reduce_tuple(out, p, mod)


def _cadd(a: tuple, b: tuple, mod: int) -> tuple[int, ...]:
    return tuple((x + y) % mod for x, y in zip(a, b))


def _csub(a: tuple, b: tuple, mod: int) -> tuple[int, ...]:
    return tuple((x - y) % mod for x, y in zip(a, b))


def _cneg(a: tuple, mod: int) -> tuple[int, ...]:
    return tuple((-x) % mod for x in a)


def _cval(a: tuple, p: int, n_cap: int):
    """Exact pi-valuation of the representative, or None when >= n_cap."""
    if not any(a):
        return None
    c = CyclotomicInteger(p, 1, list(a))
    v = 0
    while v < n_cap:
        if c.evaluate_at_one() % p:
            return Fraction(v)
        c = c.divide_exact_by_pi()
        v += 1
    return None


def _cinv_unit(a: tuple, p: int, mod: int, mexp: int) -> tuple[int, ...]:
    """Inverse of a unit by Newton iteration from the residue field."""
    r = sum(a) % p
    if r == 0:
        raise ZeroDivisionError("not a unit mod pi")
    x = tuple([pow(r, -1, p)] + [0] * (p - 2))
    two = tuple([2] + [0] * (p - 2))
    steps = (mexp * (p - 1)).bit_length() + 2
    for _ in range(steps):
        x = _cmul(x, _csub(two, _cmul(a, x, p, mod), mod), p, mod)
    if _cmul(a, x, p, mod) != tuple([1] + [0] * (p - 2)):
        raise AssertionError("unit inversion failed to converge")
    return x


def _cdiv_exact_p(a: tuple, p: int, k: int) -> tuple[int, ...]:
    if k == 0:
        return a
    pk = p**k
    if any(c % pk for c in a):
        raise ArithmeticError(f"representative not divisible by p^{k}")
    return tuple(c // pk for c in a)


@dataclass(frozen=True)
class PadicScalar:
    """Cyclotomic integer mod pi^prec, stored mod p^mexp with mexp*(p-1) >= prec."""

    p: int
    coeffs: tuple[int, ...]
    mexp: int
    prec: int

    @classmethod
    def from_cyclotomic(cls, c: CyclotomicInteger, prec: int) -> PadicScalar:
        if c.n != 1:
            raise ValueError("the oracle scalar model is restricted to n = 1")
        mexp = -(-prec // (c.p - 1))
        mod = c.p**mexp
        return cls(c.p, tuple(v % mod for v in c.coeffs), mexp, prec)

    @classmethod
    def from_int(cls, p: int, value: int, prec: int) -> PadicScalar:
        return cls.from_cyclotomic(CyclotomicInteger.from_int(p, 1, value), prec)

    def _mod(self) -> int:
        return self.p**self.mexp

    def _align(self, other: PadicScalar) -> tuple[int, int, int]:
        if self.p != other.p:
            raise ValueError("mixed primes")
        mexp = min(self.mexp, other.mexp)
        prec = min(self.prec, other.prec, mexp * (self.p - 1))
        return mexp, self.p**mexp, prec

    def __add__(self, other: PadicScalar) -> PadicScalar:
        mexp, mod, prec = self._align(other)
        return PadicScalar(
            self.p,
            tuple((x + y) % mod for x, y in zip(self.coeffs, other.coeffs)),
            mexp,
            prec,
        )

    def __sub__(self, other: PadicScalar) -> PadicScalar:
        mexp, mod, prec = self._align(other)
        return PadicScalar(
            self.p,
            tuple((x - y) % mod for x, y in zip(self.coeffs, other.coeffs)),
            mexp,
            prec,
        )

    def __neg__(self) -> PadicScalar:
        mod = self._mod()
        return PadicScalar(self.p, _cneg(self.coeffs, mod), self.mexp, self.prec)

    def __mul__(self, other: PadicScalar) -> PadicScalar:
        mexp, mod, prec = self._align(other)
        return PadicScalar(
            self.p, _cmul(self.coeffs, other.coeffs, self.p, mod), mexp, prec
        )

    def is_zero_rep(self) -> bool:
        return not any(self.coeffs)

    def valuation(self):
        """Exact valuation when < prec, else None (meaning >= prec)."""
        return _cval(self.coeffs, self.p, self.prec)


class PadicModel:
    """Scalar model adapter so ValuedMatrix can hold PadicScalars."""

    def __init__(self, p: int, prec: int):
        self.p = p
        self.prec = prec
        self.unit = ValUnit.pi_adic(p, 1)

    def zero(self):
        return PadicScalar.from_int(self.p, 0, self.prec)

    def one(self):
        return PadicScalar.from_int(self.p, 1, self.prec)

    def from_int(self, v: int):
        return PadicScalar.from_int(self.p, v, self.prec)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero_rep()

    def val(self, a):
        v = a.valuation()
        return INFINITE if v is None else v


class StabilizationError(Exception):
    """The truncated polygon kept changing; reports the sizes tried."""


class PrecisionError(Exception):
    """A needed valuation exceeded the working precision."""


# ---------------------------------------------------------------------------
# Dwork pi and the splitting series


@dataclass(frozen=True)
class DworkPi:
    """Root of x^(p-1) = -p congruent to zeta - 1 mod pi^2."""

    p: int
    value: PadicScalar


def dwork_pi(p: int, prec: int) -> DworkPi:
    if p == 2:
        raise ValueError("odd p only")
    if prec < 3:
        raise ValueError("precision must be at least 3")
    mexp = -(-prec // (p - 1)) + 2
    mod = p**mexp
    # w = -p / pi^(p-1), an exact unit of Z[zeta]
    w = CyclotomicInteger.from_int(p, 1, -p)
    for _ in range(p - 1):
        w = w.divide_exact_by_pi()
    if w.residue_mod_p() != 1:
        raise AssertionError("-p/pi^(p-1) is not 1 mod pi; Hensel seed invalid")
    wt = tuple(v % mod for v in w.coeffs)
    # solve u^(p-1) = w with u = 1 mod pi by Newton iteration
    e = p - 1
    u = tuple([1] + [0] * (e - 1))
    for _ in range((mexp * (p - 1)).bit_length() + 3):
        upow = u
        for _ in range(p - 3):
            upow = _cmul(upow, u, p, mod)  # u^(p-2)
        gu = _csub(_cmul(upow, u, p, mod), wt, mod)
        if not any(gu):
            break
        gprime = tuple((x * (p - 1)) % mod for x in upow)
        u = _csub(u, _cmul(gu, _cinv_unit(gprime, p, mod, mexp), p, mod), mod)
    pi_t = tuple([mod - 1, 1] + [0] * (e - 2))  # zeta - 1
    pd = _cmul(pi_t, u, p, mod)
    # defining relation must hold exactly in the finite ring
    check = pd
    for _ in range(p - 2):
        check = _cmul(check, pd, p, mod)
    if any(_cadd(check, tuple([p] + [0] * (e - 1)), mod)):
        raise AssertionError("Dwork uniformizer does not satisfy x^(p-1) = -p")
    diff = _csub(pd, pi_t, mod)
    v = _cval(diff, p, 3)
    if v is not None and v < 2:
        raise AssertionError("Dwork uniformizer is not zeta - 1 mod pi^2")
    scalar = PadicScalar(p, pd, mexp, mexp * (p - 1))
    return DworkPi(p, scalar)


@dataclass(frozen=True)
class TruncatedSeries:
    """Polynomial-side truncation of a power series with a growth tag.

    The certificate (m, b) claims v_pi(c_k) >= (k - b)/m; validate_growth
    re-checks it against the actual coefficients.
    """

    p: int
    coeffs: tuple[PadicScalar, ...]
    growth_m: Fraction
    growth_b: Fraction

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def validate_growth(self) -> bool:
        """True unless some coefficient provably violates the certificate.

        Coefficients whose valuation exceeds the working precision cannot
        violate a claim below that precision; claims above it are counted
        as unverifiable rather than failed.
        """
        for k, c in enumerate(self.coeffs):
            claim = (Fraction(k) - self.growth_b) / self.growth_m
            v = c.valuation()
            if v is not None and v < claim:
                return False
        return True


def _factorial_split(k: int, p: int) -> tuple[int, int]:
    """k! = p^a * u; returns (a, u mod nothing -- exact integer u)."""
    a = 0
    u = 1
    for i in range(2, k + 1):
        m = i
        while m % p == 0:
            m //= p
            a += 1
        u *= m
    return a, u


def splitting_function(pi_d: DworkPi, M: int, prec: int) -> TruncatedSeries:
    """exp(pi_D u - pi_D u^p) to u-degree M, coefficients mod pi^prec.

    Computed as exp(pi_D u) * exp(-pi_D u^p) with the factorial
    denominators split into a unit (inverted mod p^big) and a p-power
    (divided exactly); every division is asserted exact.
    """
    p = pi_d.p
    e = p - 1
    loss = _factorial_split(M, p)[0]
    big = -(-prec // (p - 1)) + loss + 2
    mod = p**big
    if pi_d.value.mexp < big:
        pd = _rebuild_dwork_pi(p, big)
    else:
        pd = tuple(v % mod for v in pi_d.value.coeffs)
    pows = [tuple([1] + [0] * (e - 1))]
    for _ in range(M):
        pows.append(_cmul(pows[-1], pd, p, mod))

    out_mod = p ** (big - loss)

    def exp_terms(count: int, negative: bool) -> list[tuple[int, ...]]:
        # (+-pi_D)^k / k!, reduced to the common working modulus
        out = []
        a, u = 0, 1
        for k in range(count):
            if k >= 2:
                m = k
                while m % p == 0:
                    m //= p
                    a += 1
                u = u * m % mod
            t = _cmul(pows[k], _cinv_unit(tuple([u] + [0] * (e - 1)), p, mod, big), p, mod)
            t = _cdiv_exact_p(t, p, a)
            if negative and k % 2:
                t = _cneg(t, out_mod)
            out.append(tuple(v % out_mod for v in t))
        return out

    aterms = exp_terms(M + 1, False)
    bterms = exp_terms(M // p + 1, True)
    theta = [tuple([0] * e) for _ in range(M + 1)]
    for j, bt in enumerate(bterms):
        base = p * j
        for i in range(M - base + 1):
            theta[base + i] = _cadd(theta[base + i], _cmul(aterms[i], bt, p, out_mod), out_mod)
    final_mexp = -(-prec // (p - 1))
    final_mod = p**final_mexp
    coeffs = tuple(
        PadicScalar(p, tuple(v % final_mod for v in c), final_mexp, prec)
        for c in theta
    )
    series = TruncatedSeries(p, coeffs, Fraction(p * p, p - 1), Fraction(0))
    if not series.validate_growth():
        raise AssertionError("splitting series violated its growth certificate")
    if coeffs[0].coeffs != tuple([1] + [0] * (e - 1)):
        raise AssertionError("splitting series constant term is not 1")
    return series


def _rebuild_dwork_pi(p: int, mexp: int) -> tuple[int, ...]:
    return tuple(
        v % p**mexp for v in dwork_pi(p, mexp * (p - 1)).value.coeffs
    )


def teichmueller_int(a: int, p: int, mexp: int) -> int:
    """Teichmueller lift of a mod p to Z/p^mexp, or 0."""
    a %= p
    if a == 0:
        return 0
    return pow(a, p ** (mexp - 1), p**mexp)


def frobenius_structure(
    f_coeffs: dict[int, int], pi_d: DworkPi, M: int, prec: int
) -> TruncatedSeries:
    """E(u) = prod over terms a_j u^j of theta(tau(a_j) u^j), to degree M.

    Requires p not dividing any exponent j; the growth tag records
    v(E_k) >= k(p-1)^2/(p^2 d) with d the largest exponent -- the bound
    inherited termwise from the splitting series -- and is re-verified on
    the computed coefficients.
    """
    p = pi_d.p
    e = p - 1
    terms = {j: a % p for j, a in f_coeffs.items() if a % p}
    if not terms:
        one = PadicScalar.from_int(p, 1, prec)
        zero = PadicScalar.from_int(p, 0, prec)
        return TruncatedSeries(
            p, (one,) + (zero,) * M, Fraction(1), Fraction(0)
        )
    if any(j <= 0 for j in terms):
        raise ValueError("exponents must be positive")
    if any(j % p == 0 for j in terms):
        raise ValueError("reduced input required: p divides a polar exponent")
    d = max(terms)
    theta = splitting_function(pi_d, M, prec)
    mexp = theta.coeffs[0].mexp
    mod = p**mexp
    out = [tuple([1] + [0] * (e - 1))] + [tuple([0] * e)] * M
    for j, a in sorted(terms.items()):
        tau = teichmueller_int(a, p, mexp)
        tau_pow = [1]
        for _ in range(M // j):
            tau_pow.append(tau_pow[-1] * tau % mod)
        nxt = [tuple([0] * e)] * (M + 1)
        for i in range(0, M + 1, 1):
            if not any(out[i]):
                continue
            for m in range(0, (M - i) // j + 1):
                lam = theta.coeffs[m].coeffs
                if not any(lam):
                    continue
                scaled = tuple(v * tau_pow[m] % mod for v in lam)
                nxt[i + j * m] = _cadd(
                    nxt[i + j * m], _cmul(out[i], scaled, p, mod), mod
                )
        out = nxt
    coeffs = tuple(PadicScalar(p, c, mexp, prec) for c in out)
    series = TruncatedSeries(
        p, coeffs, Fraction(p * p * d, (p - 1) ** 2), Fraction(0)
    )
    if not series.validate_growth():
        raise AssertionError("Frobenius structure violated its growth certificate")
    if coeffs[0].coeffs != tuple([1] + [0] * (e - 1)):
        raise AssertionError("Frobenius structure must have constant term 1")
    for k in range(1, len(coeffs)):
        v = coeffs[k].valuation()
        if v is not None and v < 1:
            raise AssertionError("Frobenius structure is not 1 mod pi")
    return series


def theta_matrix(series: TruncatedSeries, size: int) -> ValuedMatrix:
    """Matrix of u^k -> U_p(E u^k) on the monomial basis u^0..u^(size-1):
    entry (m, k) is the coefficient of u^(pm - k) in E."""
    p = series.p
    if series.degree < p * size:
        raise ValueError("series degree too small for the requested matrix")
    prec = series.coeffs[0].prec
    zero = PadicScalar.from_int(p, 0, prec)
    rows = []
    for m in range(size):
        row = []
        for k in range(size):
            idx = p * m - k
            row.append(series.coeffs[idx] if 0 <= idx <= series.degree else zero)
        rows.append(row)
    return ValuedMatrix.make(rows, PadicModel(p, prec))


# ---------------------------------------------------------------------------
# exact characteristic series from traces


def _pack(t: tuple, width: int) -> int:
    acc = 0
    for c in reversed(t):
        acc = (acc << width) | c
    return acc


def _unpack(z: int, width: int, count: int) -> list[int]:
    mask = (1 << width) - 1
    out = []
    for _ in range(count):
        out.append(z & mask)
        z >>= width
    return out


def _traces_of_powers(
    rows: list[list[tuple]], p: int, mod: int, n_max: int
) -> list[tuple]:
    """Tr(Psi^k) for k = 1..n_max via packed big-integer dot products."""
    e = p - 1
    n = len(rows)
    width = (mod * mod * e * max(n, 1)).bit_length() + 1
    packed = [[_pack(t, width) for t in row] for row in rows]
    cols = [[packed[i][j] for i in range(n)] for j in range(n)]

    def unpack_entry(z: int) -> tuple:
        return _reduce_tuple(_unpack(z, width, 2 * e - 1), p, mod)

    def repack(t: tuple) -> int:
        return _pack(t, width)

    traces = []
    cur = packed
    for k in range(1, n_max + 1):
        if k > 1:
            nxt = []
            for i in range(n):
                ri = cur[i]
                nxt.append(
                    [repack(unpack_entry(sum(ri[t] * col[t] for t in range(n))))
                     for col in cols]
                )
            cur = nxt
        diag = sum(cur[i][i] for i in range(n))
        traces.append(_reduce_tuple(_unpack(diag, width, 2 * e - 1), p, mod))
    return traces


def char_series_coefficients(
    mat: ValuedMatrix, n_max: int
) -> list[PadicScalar]:
    """c_0..c_{n_max} of det(I - s*Psi) by Newton's identities on traces.

    Divisions by n split into a unit (inverted) and a p-power (divided
    exactly); the per-coefficient precision shrinks accordingly and is
    recorded on the returned scalars.
    """
    model = mat.model
    if not isinstance(model, PadicModel):
        raise TypeError("trace-based characteristic series needs the p-adic model")
    p = model.p
    first = mat.entries[0][0]
    mexp = first.mexp
    mod = p**mexp
    rows = [[x.coeffs for x in row] for row in mat.entries]
    n_max = min(n_max, mat.size)
    traces = _traces_of_powers(rows, p, mod, n_max)
    e = p - 1
    one = tuple([1] + [0] * (e - 1))
    coeffs = [(one, mexp)]
    for n in range(1, n_max + 1):
        acc = tuple([0] * e)
        acc_mexp = mexp
        for i in range(1, n + 1):
            cprev, cm = coeffs[n - i]
            acc_mexp = min(acc_mexp, cm)
            acc = _cadd(acc, _cmul(cprev, traces[i - 1], p, mod), mod)
        a = 0
        m = n
        while m % p == 0:
            m //= p
            a += 1
        cur_mod = p**acc_mexp
        acc = tuple(v % cur_mod for v in acc)
        acc = _cdiv_exact_p(acc, p, a)
        acc_mexp -= a
        cur_mod = p**acc_mexp
        inv = _cinv_unit(tuple([m % cur_mod] + [0] * (e - 1)), p, cur_mod, acc_mexp)
        acc = _cneg(_cmul(acc, inv, p, cur_mod), cur_mod)
        coeffs.append((acc, acc_mexp))
    return [
        PadicScalar(p, t, me, me * (p - 1)) for t, me in coeffs
    ]


# ---------------------------------------------------------------------------
# the oracle itself


@dataclass(frozen=True)
class OracleDiagnostics:
    size: int
    prec: int
    char_points: tuple


class _Unsound(Exception):
    pass


def _truncated_char_np(
    f_coeffs: dict[int, int], p: int, cutoff: Fraction, size: int, prec: int
) -> tuple[tuple[Fraction, ...], OracleDiagnostics]:
    """pi-adic slopes below ``cutoff`` of det(I - s Psi) for the size-truncated
    Dwork matrix, with interior tail-soundness checks."""
    d = max(j for j, a in f_coeffs.items() if a % p)
    # expected x-range of the polygon below cutoff: one slope-0 plus d
    # slopes per full block of width (p-1)
    blocks = int(cutoff / (p - 1)) + 1
    n0 = min(size, blocks * d + 3)
    # headroom for the p-parts of the Newton-identity divisions
    loss = _factorial_split(min(size, 2 * n0 + 6), p)[0]
    work = prec + (loss + 2) * (p - 1)
    pd = dwork_pi(p, work + 4 * (p - 1))
    series = frobenius_structure(f_coeffs, pd, p * size, work)
    mat = theta_matrix(series, size)

    while True:
        cs = char_series_coefficients(mat, n0)
        points = []
        low_bounds = {}
        for i, c in enumerate(cs):
            v = c.valuation()
            if v is None:
                low_bounds[i] = Fraction(c.prec)
            else:
                points.append((i, v))
        if not points or points[0] != (0, Fraction(0)):
            raise PrecisionError("constant coefficient lost")
        hull_poly = SlopePolygon.from_point_valuations(
            _sparse_vals(points, n0), ValUnit.pi_adic(p, 1)
        )
        trunc = hull_poly.truncate_below(cutoff)
        T, V = trunc.terminal()

        # soundness: every point we did not pin down exactly must stay above
        # both the hull (interior) and the cutoff extension line (beyond)
        phi_sorted = _column_tail_bounds(series, size, p, d)
        ok = True
        for i in range(n0 + 1):
            if i in low_bounds:
                bound = max(low_bounds[i], _phi_sum(phi_sorted, i))
                need = (
                    hull_poly.y_at(i)
                    if i <= len(hull_poly.slopes)
                    else V + (i - T) * cutoff
                )
                if bound < need:
                    ok = False
                    break
        if ok:
            for i in range(n0 + 1, size + 1):
                if _phi_sum(phi_sorted, i) < V + (i - T) * cutoff:
                    ok = False
                    break
        if ok and len(trunc.slopes) >= len(hull_poly.slopes) and n0 < size:
            # polygon may continue past the computed range; widen
            ok = False
        if ok:
            diag = OracleDiagnostics(size, prec, tuple(points))
            return trunc.slopes, diag
        if n0 >= size:
            raise _Unsound(
                f"truncation at size {size}, precision {prec} cannot certify "
                f"the polygon below {cutoff}"
            )
        n0 = min(size, n0 + d + 2)


def _sparse_vals(points, n0):
    out = [INFINITE] * (n0 + 1)
    for i, v in points:
        out[i] = v
    top = max(i for i, _ in points)
    return out[: top + 1]


def _column_tail_bounds(
    series: TruncatedSeries, size: int, p: int, d: int
) -> list[Fraction]:
    """Sorted per-column lower bounds phi(k) for minor valuations, after
    conjugating by the weight k*p/d (the natural basis rescaling)."""
    weight = Fraction(p, d)
    vE = []
    for c in series.coeffs:
        v = c.valuation()
        vE.append(Fraction(c.prec) if v is None else v)
    phis = []
    for k in range(size):
        best = None
        for m in range(size):
            idx = p * m - k
            if idx < 0 or idx > series.degree:
                continue
            cand = vE[idx] + (k - m) * weight
            if best is None or cand < best:
                best = cand
        phis.append(best if best is not None else Fraction(10**9))
    phis.sort()
    return phis


def _phi_sum(phi_sorted: list[Fraction], n: int) -> Fraction:
    return sum(phi_sorted[:n], Fraction(0))


def _stabilized_slopes(
    f_coeffs: dict[int, int],
    p: int,
    cutoff: Fraction,
    size: int,
    prec: int,
    max_doublings: int = 3,
):
    tried = []
    prev = None
    cur_size, cur_prec = size, prec
    for _ in range(max_doublings + 1):
        try:
            slopes, diag = _truncated_char_np(f_coeffs, p, cutoff, cur_size, cur_prec)
        except _Unsound:
            slopes, diag = None, None
        tried.append((cur_size, cur_prec))
        if slopes is not None and prev is not None and slopes == prev:
            return slopes, diag
        prev = slopes
        cur_size *= 2
        cur_prec += 20
    raise StabilizationError(
        f"truncated polygon did not stabilize; sizes tried: {tried}"
    )


def _poly_dict(f) -> dict[int, int]:
    if isinstance(f, dict):
        return dict(f)
    return {j: a for j, a in enumerate(f) if a}


def default_sizes(f_coeffs: dict[int, int], p: int) -> tuple[int, int]:
    d = max(f_coeffs)
    return max(8, 10 * d), max(40, 4 * (p - 1) * d)


def local_np_oracle(
    f, p: int, r=1, size: int | None = None, prec: int | None = None
) -> SlopePolygon:
    """q-adic local Newton polygon (q = p) of the order-p character with
    polynomial f at infinity, from the Fredholm determinant.

    Strips the single slope-0 factor contributed by the constant term of
    the characteristic series and rescales pi-adic to q-adic units.
    """
    r = Fraction(r)
    if r > 1:
        raise ValueError("the oracle reads slopes below 1 only")
    f_coeffs = _poly_dict(f)
    if any(a % p and j % p == 0 and j > 0 for j, a in f_coeffs.items()):
        raise ValueError("input must be reduced (no p-divisible exponents)")
    d0, n0 = default_sizes(f_coeffs, p)
    size = size if size is not None else d0
    prec = prec if prec is not None else n0
    cutoff = r * (p - 1)
    slopes, _ = _stabilized_slopes(f_coeffs, p, cutoff, size, prec)
    slopes = list(slopes)
    if not slopes or slopes[0] != 0:
        raise AssertionError("characteristic series lost its slope-0 segment")
    slopes.pop(0)
    if 0 in slopes:
        raise AssertionError("local L-function produced a slope-0 zero")
    return SlopePolygon.from_slopes(slopes, ValUnit.pi_adic(p, 1)).scale(
        Fraction(1, p - 1), ValUnit.q_adic(p)
    )


@dataclass(frozen=True)
class BoundCheckResult:
    ok: bool
    np_polygon: SlopePolygon
    hp_polygon: SlopePolygon

    def __bool__(self) -> bool:
        return self.ok


def hodge_bound_check(
    f, p: int, r=1, size: int | None = None, prec: int | None = None
) -> BoundCheckResult:
    """Truncated characteristic-series NP (slope-0 stripped) against the
    lower-bound polygon with slopes k(p-1)/delta."""
    r = Fraction(r)
    f_coeffs = _poly_dict(f)
    d = max(f_coeffs)
    d0, n0 = default_sizes(f_coeffs, p)
    size = size if size is not None else d0
    prec = prec if prec is not None else n0
    cutoff = r * (p - 1)
    slopes, _ = _stabilized_slopes(f_coeffs, p, cutoff, size, prec)
    slopes = list(slopes)
    if slopes and slopes[0] == 0:
        slopes.pop(0)
    unit = ValUnit.pi_adic(p, 1)
    np_poly = SlopePolygon.from_slopes(slopes, unit)
    hp_slopes = []
    k = 1
    while Fraction(k * (p - 1), d) < cutoff:
        hp_slopes.append(Fraction(k * (p - 1), d))
        k += 1
    hp_poly = SlopePolygon.from_slopes(hp_slopes, unit)
    return BoundCheckResult(np_poly.lies_on_or_above(hp_poly), np_poly, hp_poly)


@dataclass(frozen=True)
class PeriodicityResult:
    ok: bool
    comparisons: tuple[tuple[int, int, Fraction, Fraction], ...]

    def __bool__(self) -> bool:
        return self.ok


def block_periodicity_check(
    f, p: int, blocks: int, size: int | None = None, prec: int | None = None
) -> PeriodicityResult:
    """The characteristic-series NP (slope-0 stripped) and the delta-Hodge
    polygon must agree at x = n*d - 1 and x = n*d for n = 1..blocks."""
    f_coeffs = _poly_dict(f)
    d = max(f_coeffs)
    cutoff = blocks * (p - 1) + Fraction(p - 1, 2 * d)
    d0, n0 = default_sizes(f_coeffs, p)
    size = size if size is not None else d0
    if prec is None:
        top = (p - 1) * (blocks * d) * (blocks * d + 1) // (2 * d)
        prec = max(n0, top + 24)
    slopes, _ = _stabilized_slopes(f_coeffs, p, cutoff, size, prec)
    slopes = list(slopes)
    if not slopes or slopes[0] != 0:
        raise AssertionError("characteristic series lost its slope-0 segment")
    slopes.pop(0)
    if len(slopes) < blocks * d:
        raise PrecisionError("not enough slopes below the cutoff for all blocks")
    np_poly = SlopePolygon.from_slopes(slopes, ValUnit.pi_adic(p, 1))

    def hp_y(x: int) -> Fraction:
        return sum((Fraction(k * (p - 1), d) for k in range(1, x + 1)), Fraction(0))

    comps = []
    ok = True
    for nb in range(1, blocks + 1):
        for x in (nb * d - 1, nb * d):
            lhs = np_poly.y_at(x)
            rhs = hp_y(x)
            comps.append((nb, x, lhs, rhs))
            if lhs != rhs:
                ok = False
    return PeriodicityResult(ok, tuple(comps))
