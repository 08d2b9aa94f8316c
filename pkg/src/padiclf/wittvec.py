"""p-typical Witt vectors of finite length over any commutative ring.

Structure polynomials are solved triangularly from the ghost components
w_i = sum_{j<=i} p^j x_j^(p^(i-j)) over the rationals; integrality of the
result is asserted, which doubles as a self-check of the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


# Sparse multivariate polynomials over Q: {exponent tuple: Fraction}.
# Variables 0..n-1 are x_0..x_{n-1}, variables n..2n-1 are y_0..y_{n-1}.
_Poly = dict


def _pvar(index: int, nvars: int) -> _Poly:
    e = [0] * nvars
    e[index] = 1
    return {tuple(e): Fraction(1)}


def _padd(a: _Poly, b: _Poly) -> _Poly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, Fraction(0)) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pscale(a: _Poly, c) -> _Poly:
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _pmul(a: _Poly, b: _Poly) -> _Poly:
    out: _Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, Fraction(0)) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _ppow(a: _Poly, e: int) -> _Poly:
    if e < 1:
        raise ValueError("polynomial powers here are always >= 1")
    result: _Poly | None = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else _pmul(result, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return result if result is not None else {}


def _arity(a: _Poly) -> int:
    for m in a:
        return len(m)
    return 0


def _ghost(vars_: list[_Poly], i: int, p: int) -> _Poly:
    out: _Poly = {}
    for j in range(i + 1):
        out = _padd(out, _pscale(_ppow(vars_[j], p ** (i - j)), p**j))
    return out


@dataclass(frozen=True)
class WittStructure:
    """Integer structure polynomials for W_n; built once per (p, n) and cached."""

    p: int
    n: int
    sum_polys: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]
    prod_polys: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]


def _freeze(poly: _Poly) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for m in sorted(poly):
        c = poly[m]
        if c.denominator != 1:
            raise AssertionError("non-integral structure polynomial coefficient")
        out.append((m, c.numerator))
    return tuple(out)


@lru_cache(maxsize=None)
def build_structure(p: int, n: int) -> WittStructure:
    """Solve the ghost equations for the addition and multiplication laws."""
    if n > 4:
        raise ValueError("Witt length capped at 4")
    nv = 2 * n
    xs = [_pvar(i, nv) for i in range(n)]
    ys = [_pvar(n + i, nv) for i in range(n)]

    def solve(target):
        polys: list[_Poly] = []
        for i in range(n):
            rhs = target(i)
            for j in range(i):
                rhs = _padd(rhs, _pscale(_ppow(polys[j], p ** (i - j)), -(p**j)))
            polys.append(_pscale(rhs, Fraction(1, p**i)))
        return tuple(_freeze(q) for q in polys)

    sums = solve(lambda i: _padd(_ghost(xs, i, p), _ghost(ys, i, p)))
    prods = solve(lambda i: _pmul(_ghost(xs, i, p), _ghost(ys, i, p)))
    return WittStructure(p, n, sums, prods)


def _evaluate(frozen, a_comps, b_comps, from_int):
    """Evaluate a frozen integer polynomial at ring values (x=a, y=b)."""
    vals = list(a_comps) + list(b_comps)
    acc = from_int(0)
    for mono, coeff in frozen:
        term = from_int(coeff)
        for var, e in enumerate(mono):
            if e:
                term = term * vals[var] ** e
        acc = acc + term
    return acc


@dataclass(frozen=True)
class WittVector:
    """Length-n Witt vector with components in an arbitrary commutative ring.

    The ring is captured by ``from_int`` (coercion of integer constants);
    components must support +, *, ** with integer exponents.
    """

    structure: WittStructure
    comps: tuple

    def _check(self, other: WittVector) -> None:
        if self.structure is not other.structure and self.structure != other.structure:
            raise ValueError("Witt structure mismatch")


def witt_add(a: WittVector, b: WittVector, from_int) -> WittVector:
    a._check(b)
    out = tuple(
        _evaluate(sp, a.comps, b.comps, from_int) for sp in a.structure.sum_polys
    )
    return WittVector(a.structure, out)


def witt_mul(a: WittVector, b: WittVector, from_int) -> WittVector:
    a._check(b)
    out = tuple(
        _evaluate(pp, a.comps, b.comps, from_int) for pp in a.structure.prod_polys
    )
    return WittVector(a.structure, out)


def witt_neg(a: WittVector, from_int) -> WittVector:
    """Additive inverse; componentwise negation (valid for odd p)."""
    if a.structure.p == 2:
        raise NotImplementedError("componentwise negation requires odd p")
    return WittVector(a.structure, tuple(from_int(-1) * c for c in a.comps))


def witt_scale(j: int, a: WittVector, from_int) -> WittVector:
    """j-fold Witt sum of a with itself (j >= 0)."""
    zero = WittVector(a.structure, tuple(from_int(0) for _ in range(a.structure.n)))
    acc = zero
    for _ in range(j):
        acc = witt_add(acc, a, from_int)
    return acc


def ghost_components(a: WittVector) -> tuple:
    """Ghost vector over rings where p is not a zero divisor (e.g. Z)."""
    p = a.structure.p
    out = []
    for i in range(a.structure.n):
        acc = 0
        for j in range(i + 1):
            acc = acc + (p**j) * a.comps[j] ** (p ** (i - j))
        out.append(acc)
    return tuple(out)


def witt_frobenius_ff(a: WittVector) -> WittVector:
    """Witt Frobenius over a perfect field of characteristic p: componentwise p-power."""
    p = a.structure.p
    return WittVector(a.structure, tuple(c**p for c in a.comps))


def witt_trace(a: WittVector, from_int) -> WittVector:
    """Sum of all Frobenius iterates F^i(a), i < m, for components in F_{p^m}.

    Lands in W_n(F_p); the caller's ring must be a finite field of
    characteristic p exposing ``params`` on its elements.
    """
    params = a.comps[0].params
    m = params.k
    acc = a
    cur = a
    for _ in range(m - 1):
        cur = witt_frobenius_ff(cur)
        acc = witt_add(acc, cur, from_int)
    for c in acc.comps:
        if not c.is_prime_field():
            raise AssertionError("Witt trace landed outside W_n(F_p)")
    return acc


def to_residue(a: WittVector) -> int:
    """The isomorphism W_n(F_p) -> Z/p^nZ via Teichmueller digits.

    (a_0, ..., a_{n-1}) maps to sum_i p^i * tau(a_i) mod p^n, where tau(a)
    is computed as a^(p^(n-1)) on any integer lift.
    """
    p = a.structure.p
    n = a.structure.n
    mod = p**n
    total = 0
    for i, c in enumerate(a.comps):
        ci = c.as_int() if hasattr(c, "as_int") else int(c) % p
        tau = pow(ci, p ** (n - 1), mod)
        total = (total + p**i * tau) % mod
    return total
