"""Exact L-polynomials of characters on open subsets of P^1 via point counts.

S_k accumulates, for every F_{q^k}-point, the residue class of the traced
Witt value of the character; the L-polynomial is the exact exponential of
the resulting log series.  Everything downstream (Newton polygons,
touching reports, zeta assembly) consumes these exact coefficients.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction

from .characters import (
    ASWCharacter,
    Place,
    SwanData,
    global_hodge_polygon,
    local_hodge_polygon,
    swan_conductors,
)
from .cyclotomic import CyclotomicInteger
from .finitefield import (
    FieldParams,
    absolute_trace,
    batch_inverse,
    embed,
    field,
)
from .polygons import SlopePolygon, ValUnit
from .ratfunc import Poly, RationalFunction
from .wittvec import (
    WittVector,
    build_structure,
    to_residue,
    witt_add,
    witt_frobenius_ff,
    witt_neg,
    witt_trace,
)

POINT_BUDGET = 10**9


class FeasibilityError(Exception):
    """Raised when a computation would exceed the enumeration budget."""


@dataclass(frozen=True)
class LPolynomial:
    """Element of 1 + s*Z[zeta_{p^n}][s] of exact degree len(coeffs)-1."""

    p: int
    n: int
    q: int
    coeffs: tuple[CyclotomicInteger, ...]
    char_desc: str = ""

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _base_exponent(char: ASWCharacter) -> int:
    a = 0
    m = char.q
    while m > 1:
        m //= char.p
        a += 1
    return a


def _embedded_coords(char: ASWCharacter, target: FieldParams):
    """Coordinate functions with coefficients pushed into the point field."""
    out = []
    for f in char.coords:
        num = Poly.make(target, [embed(c, target) for c in f.num.coeffs])
        den = Poly.make(target, [embed(c, target) for c in f.den.coeffs])
        out.append((num, den))
    return out


def _excluded_indices(char: ASWCharacter, target: FieldParams) -> set[int]:
    out = set()
    for place in char.ramified:
        if not place.at_infinity:
            out.add(embed(place.a, target).index())
    return out


def _infinity_values(char: ASWCharacter, target: FieldParams):
    """Value vector of the coordinates at infinity, or None if infinity is in S."""
    if any(pl.at_infinity for pl in char.ramified):
        return None
    return tuple(embed(f.value_at_infinity(), target) for f in char.coords)


def residue_counts(char: ASWCharacter, k: int, threads: int = 1) -> list[int]:
    """Occurrences of each residue class of the traced character value
    over the points of X(F_{q^k})."""
    q = char.q
    if q**k > POINT_BUDGET:
        raise FeasibilityError(
            f"enumerating q^k = {q}^{k} = {q ** k} points exceeds the "
            f"budget of {POINT_BUDGET}"
        )
    target = field(char.p, _base_exponent(char) * k)
    if threads <= 1:
        counts = _count_chunk(char, target, 0, target.order)
    else:
        nchunks = threads * 4
        size = (target.order + nchunks - 1) // nchunks
        ranges = [
            (i * size, min((i + 1) * size, target.order))
            for i in range(nchunks)
            if i * size < target.order
        ]
        counts = [0] * (char.p**char.n)
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_count_chunk, char, target, lo, hi) for lo, hi in ranges
            ]
            for fut in futures:
                for j, c in enumerate(fut.result()):
                    counts[j] += c
    inf_vals = _infinity_values(char, target)
    if inf_vals is not None:
        counts[_residue_of_values(char, target, inf_vals)] += 1
    return counts


def _count_chunk(
    char: ASWCharacter, target: FieldParams, start: int, stop: int
) -> list[int]:
    """Residue-class counts over one slice of the element enumeration."""
    p, n = char.p, char.n
    counts = [0] * (p**n)
    excluded = _excluded_indices(char, target)
    coords = _embedded_coords(char, target)
    points = [
        target.from_index(m) for m in range(start, stop) if m not in excluded
    ]
    values = []
    for num, den in coords:
        nv = [num.evaluate(x) for x in points]
        if den.degree() == 0:
            dinv = den.coeffs[0].inverse()
            values.append([v * dinv for v in nv])
        else:
            dv = [den.evaluate(x) for x in points]
            dv_inv = batch_inverse(dv, target)
            values.append([a * b for a, b in zip(nv, dv_inv)])
    if n == 1:
        for v in values[0]:
            counts[absolute_trace(v)] += 1
        return counts
    structure = build_structure(p, n)
    fi = target.from_int
    for i in range(len(points)):
        w = WittVector(structure, tuple(values[j][i] for j in range(n)))
        counts[to_residue(witt_trace(w, fi))] += 1
    return counts


def _residue_of_values(char: ASWCharacter, target: FieldParams, vals) -> int:
    if char.n == 1:
        return absolute_trace(vals[0])
    structure = build_structure(char.p, char.n)
    w = WittVector(structure, vals)
    return to_residue(witt_trace(w, target.from_int))


def character_sum(char: ASWCharacter, k: int, threads: int = 1) -> CyclotomicInteger:
    """S_k = sum over X(F_{q^k}) of zeta^(residue of the traced value)."""
    counts = residue_counts(char, k, threads)
    acc = CyclotomicInteger.zero(char.p, char.n)
    for j, c in enumerate(counts):
        if c:
            acc = acc + CyclotomicInteger.zeta_power(char.p, char.n, j) * c
    return acc


def l_degree(swan: SwanData) -> int:
    """Degree 2g - 2 + sum (d_P + 1) with g = 0."""
    return -2 + sum(swan.conductor(pl) + 1 for pl, _ in swan.entries)


def l_polynomial(
    char: ASWCharacter,
    threads: int = 1,
    verify_degree: bool = True,
    check_bounds: bool = True,
) -> LPolynomial:
    """L(char, s) from power sums: exact exp of sum_k S_k s^k / k up to degree D.

    Asserts integrality of every coefficient, a nonzero leading coefficient,
    vanishing of the (D+1)-st log coefficient when affordable, and the
    Newton-over-Hodge bound with equal endpoints.
    """
    swan = swan_conductors(char)
    D = l_degree(swan)
    sums = [character_sum(char, k, threads) for k in range(1, D + 1)]
    coeffs = [CyclotomicInteger.one(char.p, char.n)]
    for m in range(1, D + 1):
        acc = CyclotomicInteger.zero(char.p, char.n)
        for k in range(1, m + 1):
            acc = acc + sums[k - 1] * coeffs[m - k]
        coeffs.append(acc.divide_exact_by_int(m))
    if D > 0 and coeffs[D].is_zero():
        raise AssertionError("leading coefficient vanished; degree bookkeeping bug")
    if verify_degree and char.q ** (D + 1) <= POINT_BUDGET:
        s_next = character_sum(char, D + 1, threads)
        acc = s_next
        for k in range(1, D + 1):
            acc = acc + sums[k - 1] * coeffs[D + 1 - k]
        if not acc.is_zero():
            raise AssertionError(
                "log series does not terminate at the predicted degree; "
                "input is likely not reduced"
            )
    result = LPolynomial(char.p, char.n, char.q, tuple(coeffs), char.describe())
    if check_bounds:
        np_ = newton_polygon(result)
        hp = global_hodge_polygon(swan, char.q)
        if not (np_.lies_on_or_above(hp) and np_.shares_terminal_point(hp)):
            raise AssertionError("Newton polygon escaped its Hodge bound")
    return result


def newton_polygon(lpoly: LPolynomial) -> SlopePolygon:
    """q-adic Newton polygon of the L-polynomial."""
    vals = [c.q_valuation(lpoly.q) for c in lpoly.coeffs]
    return SlopePolygon.from_point_valuations(vals, ValUnit.q_adic(lpoly.q))


def euler_l_polynomial(
    char: ASWCharacter, degree: int
) -> tuple[CyclotomicInteger, ...]:
    """Euler-product route: expand prod over closed points of 1/(1 - rho(Frob) s^deg)
    truncated past ``degree``.  Cross-check for the power-sum route."""
    p, n, q = char.p, char.n, char.q
    series = [CyclotomicInteger.one(p, n)] + [
        CyclotomicInteger.zero(p, n) for _ in range(degree)
    ]

    def mul_factor(beta: CyclotomicInteger, d: int) -> None:
        # multiply series by 1/(1 - beta s^d) = sum beta^i s^(d*i)
        for i in range(d, degree + 1):
            series[i] = series[i] + beta * series[i - d]

    for d in range(1, degree + 1):
        target = field(p, _base_exponent(char) * d)
        excluded = _excluded_indices(char, target)
        coords = _embedded_coords(char, target)
        seen: set[int] = set()
        for m in range(target.order):
            if m in seen or m in excluded:
                continue
            x = target.from_index(m)
            orbit = [x]
            y = x
            for _ in range(d - 1):
                y = y**q
                orbit.append(y)
            orbit_idx = [e.index() for e in orbit]
            seen.update(orbit_idx)
            if len(set(orbit_idx)) != d:
                continue  # residue degree < d; counted at its own level
            vals = []
            for num, den in coords:
                dv = den.evaluate(x)
                vals.append(num.evaluate(x) * dv.inverse())
            j = _residue_of_values(char, target, tuple(vals))
            mul_factor(CyclotomicInteger.zeta_power(p, n, j), d)
        if d == 1:
            inf_vals = _infinity_values(char, target)
            if inf_vals is not None:
                j = _residue_of_values(char, target, inf_vals)
                mul_factor(CyclotomicInteger.zeta_power(p, n, j), 1)
    return tuple(series)


def localize(char: ASWCharacter, place: Place) -> ASWCharacter:
    """Character on A^1 (ramified only at infinity) built from the polar
    parts of the coordinates at ``place``, in the coordinate u = 1/t_P."""
    if place not in char.ramified:
        raise ValueError(f"{place} is not a ramified place of the character")
    base = char.base
    new_coords = []
    for f in char.coords:
        if place.at_infinity:
            cs = f.polar_part_at_infinity()
        else:
            cs = f.polar_part_at(place.a)
        poly = Poly.make(base, [base.zero()] + list(cs))
        new_coords.append(RationalFunction.from_poly(poly))
    return ASWCharacter.build(char.p, char.n, base, new_coords)


@dataclass(frozen=True)
class TouchingReport:
    """Terminal-point comparison of truncated Newton and Hodge polygons,
    globally and at each ramified place."""

    r: Fraction
    global_touching: bool
    local_touching: tuple[tuple[Place, bool], ...]
    theorem_consistent: bool
    np_global: SlopePolygon
    hp_global: SlopePolygon
    np_local: tuple[tuple[Place, SlopePolygon], ...]
    hp_local: tuple[tuple[Place, SlopePolygon], ...]


def check_touching(char: ASWCharacter, r, threads: int = 1) -> TouchingReport:
    """Compare truncated NP/HP terminal points globally and locally.

    The biconditional between the global and the joint local touching is
    the empirical content; ``theorem_consistent`` records it.
    """
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError("truncation bound must lie in [0, 1]")
    swan = swan_conductors(char)
    q = char.q
    lp = l_polynomial(char, threads)
    np_g = newton_polygon(lp)
    hp_g = global_hodge_polygon(swan, q)
    global_touch = np_g.truncate_below(r).shares_terminal_point(
        hp_g.truncate_below(r)
    )
    locals_: list[tuple[Place, bool]] = []
    np_locals: list[tuple[Place, SlopePolygon]] = []
    hp_locals: list[tuple[Place, SlopePolygon]] = []
    for place in char.ramified:
        loc = reduce_local(localize(char, place))
        lp_loc = l_polynomial(loc, threads)
        np_l = newton_polygon(lp_loc)
        hp_l = local_hodge_polygon(swan.conductor(place), q)
        locals_.append(
            (place, np_l.truncate_below(r).shares_terminal_point(hp_l.truncate_below(r)))
        )
        np_locals.append((place, np_l))
        hp_locals.append((place, hp_l))
    consistent = global_touch == all(t for _, t in locals_)
    return TouchingReport(
        r,
        global_touch,
        tuple(locals_),
        consistent,
        np_g,
        hp_g,
        tuple(np_locals),
        tuple(hp_locals),
    )


def reduce_local(char: ASWCharacter) -> ASWCharacter:
    from .characters import reduce_character

    return reduce_character(char)


def scale_character(j: int, char: ASWCharacter) -> ASWCharacter:
    """The j-fold Witt multiple of the character, with leading zero
    coordinates stripped (a multiple divisible by p has smaller order)."""
    p, n = char.p, char.n
    j %= p**n
    if j == 0:
        raise ValueError("the trivial multiple has no L-function data")
    base = char.base
    from_int = lambda v: RationalFunction.from_int(base, v)
    structure = build_structure(p, n)
    wv = WittVector(structure, char.coords)
    acc = WittVector(structure, tuple(from_int(0) for _ in range(n)))
    bit = wv
    e = j
    while e:
        if e & 1:
            acc = witt_add(acc, bit, from_int)
        e >>= 1
        if e:
            bit = witt_add(bit, bit, from_int)
    comps = list(acc.comps)
    drop = 0
    while drop < n and comps[drop].is_zero():
        drop += 1
    if drop == n:
        raise AssertionError("nonzero multiple collapsed to the zero vector")
    from .characters import reduce_character

    out = ASWCharacter.build(p, n - drop, base, comps[drop:])
    return reduce_character(out)


@dataclass(frozen=True)
class ZetaCoverResult:
    """Assembled numerator of the zeta function of the covering curve."""

    coeffs: tuple[int, ...]
    point_counts: tuple[int, ...]
    direct_counts: tuple[int, ...]
    factors: tuple[LPolynomial, ...]


def zeta_cover(char: ASWCharacter, threads: int = 1) -> ZetaCoverResult:
    """prod over j of L(j*char, s): integer coefficients, checked against
    direct point counts of the covering for k = 1, 2."""
    p, n = char.p, char.n
    factors = []
    for j in range(1, p**n):
        factors.append(l_polynomial(scale_character(j, char), threads))
    prod = [CyclotomicInteger.one(p, n)]
    for f in factors:
        lifted = [c.lift_level(n) for c in f.coeffs]
        out = [
            CyclotomicInteger.zero(p, n) for _ in range(len(prod) + len(lifted) - 1)
        ]
        for i, a in enumerate(prod):
            for k, b in enumerate(lifted):
                out[i + k] = out[i + k] + a * b
        prod = out
    int_coeffs = []
    for c in prod:
        if any(v != 0 for v in c.coeffs[1:]):
            raise AssertionError("zeta assembly produced non-rational coefficients")
        int_coeffs.append(c.coeffs[0])
    q = char.q
    power_sums = _reciprocal_root_power_sums(int_coeffs, 2)
    counts = tuple(q**k + 1 - power_sums[k - 1] for k in (1, 2))
    direct = tuple(_direct_cover_count(char, k) for k in (1, 2))
    if counts != direct:
        raise AssertionError(
            f"zeta point counts {counts} disagree with direct counts {direct}"
        )
    return ZetaCoverResult(tuple(int_coeffs), counts, direct, tuple(factors))


def _reciprocal_root_power_sums(coeffs: list[int], upto: int) -> list[int]:
    """Power sums of the alpha_i for P(s) = prod (1 - alpha_i s)."""
    out = []
    a = list(coeffs) + [0] * max(0, upto + 1 - len(coeffs))
    for k in range(1, upto + 1):
        s = -k * a[k]
        for j in range(1, k):
            s -= out[j - 1] * a[k - j]
        out.append(s)
    return out


def _direct_cover_count(char: ASWCharacter, k: int) -> int:
    """Brute-force count of F_{q^k}-points of the smooth covering curve:
    solutions of F(y) - y = f(x) over X, plus one point above each P in S."""
    p, n = char.p, char.n
    target = field(p, _base_exponent(char) * k)
    if target.order ** (n + 1) > 10**7:
        raise FeasibilityError("direct cover count too large")
    structure = build_structure(p, n)
    fi = target.from_int
    ys = []
    for m in range(target.order**n):
        comp_idx = []
        mm = m
        for _ in range(n):
            mm, r = divmod(mm, target.order)
            comp_idx.append(r)
        y = WittVector(structure, tuple(target.from_index(i) for i in comp_idx))
        fy = witt_frobenius_ff(y)
        lhs = witt_add(fy, witt_neg(y, fi), fi)
        ys.append(lhs.comps)
    excluded = _excluded_indices(char, target)
    coords = _embedded_coords(char, target)
    total = 0
    for m in range(target.order):
        if m in excluded:
            continue
        x = target.from_index(m)
        vals = []
        for num, den in coords:
            dv = den.evaluate(x)
            vals.append(num.evaluate(x) * dv.inverse())
        vals = tuple(vals)
        total += sum(1 for lhs in ys if lhs == vals)
    inf_vals = _infinity_values(char, target)
    if inf_vals is not None:
        total += sum(1 for lhs in ys if lhs == inf_vals)
    return total + len(char.ramified)
