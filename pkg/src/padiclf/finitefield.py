"""Exact arithmetic in F_{p^k} for small p and k up to ~12.

The modulus of each field is the lexicographically smallest monic
irreducible of its degree (coefficient vectors read as base-p integers,
constant digit least significant), and embeddings send the canonical
generator to the lexicographically smallest root in the target field.
Everything is deterministic so outputs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a, b, mod, p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a, mod, p: int) -> tuple[int, ...]:
    a = list(a)
    k = len(mod) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i] % p
        if c:
            for j in range(k):
                a[i - k + j] = (a[i - k + j] - c * mod[j]) % p
        a[i] = 0
    return _poly_trim(a[:k])


def _poly_powmod(a, e: int, mod, p: int) -> tuple[int, ...]:
    result = (1,)
    base = _poly_rem(list(a), mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p: int) -> tuple[int, ...]:
    a, b = list(a), list(b)
    while b:
        # reduce a mod b
        binv = pow(b[-1], p - 2, p)
        a = list(a)
        for i in range(len(a) - 1, len(b) - 2, -1):
            c = (a[i] * binv) % p
            if c:
                for j in range(len(b)):
                    a[i - len(b) + 1 + j] = (a[i - len(b) + 1 + j] - c * b[j]) % p
        a = list(_poly_trim(a))
        a, b = b, a
    return tuple(a)


def _is_irreducible(mod, p: int, k: int) -> bool:
    """x^(p^k) == x mod f, and gcd(x^(p^(k/l)) - x, f) = 1 for primes l | k."""
    x = (0, 1)
    xq = _poly_powmod(x, p**k, mod, p)
    if xq != _poly_rem([0, 1], mod, p):
        return False
    for ell in _prime_divisors(k):
        t = _poly_powmod(x, p ** (k // ell), mod, p)
        diff = list(t)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(mod, _poly_trim(diff), p)
        if len(g) > 1:
            return False
    return True


def _prime_divisors(k: int) -> list[int]:
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


@dataclass(frozen=True)
class FieldParams:
    """Immutable description of F_{p^k}; shareable across threads."""

    p: int
    k: int
    modulus: tuple[int, ...]  # monic, length k+1, low-to-high coefficients

    @property
    def order(self) -> int:
        return self.p**self.k

    def element(self, coeffs) -> FFElem:
        cs = [c % self.p for c in coeffs]
        cs += [0] * (self.k - len(cs))
        return FFElem(self, tuple(cs[: self.k]))

    def from_int(self, value: int) -> FFElem:
        return self.element([value])

    def zero(self) -> FFElem:
        return self.from_int(0)

    def one(self) -> FFElem:
        return self.from_int(1)

    def gen(self) -> FFElem:
        """The class of x; canonical generator used by embeddings."""
        return self.element([0, 1])

    def from_index(self, m: int) -> FFElem:
        cs = []
        for _ in range(self.k):
            m, r = divmod(m, self.p)
            cs.append(r)
        return FFElem(self, tuple(cs))


@lru_cache(maxsize=None)
def field(p: int, k: int) -> FieldParams:
    """F_{p^k} with the lexicographically smallest monic irreducible modulus."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be positive")
    for m in range(p**k):
        tail = []
        mm = m
        for _ in range(k):
            mm, r = divmod(mm, p)
            tail.append(r)
        mod = tuple(tail) + (1,)
        if k == 1 or _is_irreducible(mod, p, k):
            return FieldParams(p, k, mod)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FFElem:
    """Element of F_{p^k} as a dense coefficient vector."""

    params: FieldParams
    coeffs: tuple[int, ...]

    def _check(self, other: FFElem) -> None:
        if self.params != other.params:
            raise ValueError("mixed finite fields")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.params.from_int(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        self._check(other)
        p = self.params.p
        return FFElem(
            self.params, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.params.p
        return FFElem(self.params, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.params.from_int(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.params.p
            return FFElem(self.params, tuple((other * a) % p for a in self.coeffs))
        if not isinstance(other, FFElem):
            return NotImplemented
        self._check(other)
        p = self.params.p
        prod = _poly_mulmod(self.coeffs, other.coeffs, self.params.modulus, p)
        return self.params.element(list(prod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = _poly_powmod(self.coeffs, e, self.params.modulus, self.params.p)
        return self.params.element(list(out))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def inverse(self) -> FFElem:
        if not self:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self ** (self.params.order - 2)

    def __truediv__(self, other: FFElem) -> FFElem:
        return self * other.inverse()

    def frobenius(self) -> FFElem:
        return self ** self.params.p

    def is_prime_field(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_int(self) -> int:
        """Residue mod p; only valid for prime-field elements."""
        if not self.is_prime_field():
            raise ValueError("element does not lie in the prime field")
        return self.coeffs[0]

    def index(self) -> int:
        m = 0
        for c in reversed(self.coeffs):
            m = m * self.params.p + c
        return m

    def __repr__(self):
        return f"FFElem(p={self.params.p},k={self.params.k},{list(self.coeffs)})"


def enumerate_elements(params: FieldParams, start: int = 0, stop: int | None = None):
    """All field elements in lexicographic coefficient order.

    start/stop index into that order, so disjoint chunks of the index range
    enumerate disjoint sets of elements (parallel consumption).
    """
    if stop is None:
        stop = params.order
    for m in range(start, stop):
        yield params.from_index(m)


@lru_cache(maxsize=None)
def trace_vector(params: FieldParams) -> tuple[int, ...]:
    """Traces of the basis monomials x^i; makes absolute_trace a dot product."""
    out = []
    for i in range(params.k):
        basis = params.element([0] * i + [1])
        acc = basis
        cur = basis
        for _ in range(params.k - 1):
            cur = cur.frobenius()
            acc = acc + cur
        if not acc.is_prime_field():
            raise AssertionError("trace landed outside the prime field")
        out.append(acc.as_int())
    return tuple(out)


def absolute_trace(x: FFElem) -> int:
    """Tr(x) = x + x^p + ... + x^(p^(k-1)) as an element of F_p."""
    tv = trace_vector(x.params)
    return sum(c * t for c, t in zip(x.coeffs, tv)) % x.params.p


@lru_cache(maxsize=None)
def _embedding_powers(src: FieldParams, target: FieldParams) -> tuple[FFElem, ...]:
    if target.k % src.k:
        raise ValueError(f"no embedding: {src.k} does not divide {target.k}")
    if src.p != target.p:
        raise ValueError("mixed characteristics")
    # Lexicographically smallest root of the source modulus in the target.
    root = None
    for cand in enumerate_elements(target):
        acc = target.zero()
        for c in reversed(src.modulus):
            acc = acc * cand + c
        if not acc:
            root = cand
            break
    if root is None:
        raise AssertionError("modulus has no root in the target field")
    powers = [target.one()]
    for _ in range(src.k - 1):
        powers.append(powers[-1] * root)
    return tuple(powers)


def embed(x: FFElem, target: FieldParams) -> FFElem:
    """Image of x under the fixed embedding F_{p^a} -> F_{p^(ab)}."""
    if x.params == target:
        return x
    if x.params.k == 1:
        return target.from_int(x.coeffs[0])
    powers = _embedding_powers(x.params, target)
    acc = target.zero()
    for c, w in zip(x.coeffs, powers):
        if c:
            acc = acc + w * c
    return acc


def pth_root(x: FFElem) -> FFElem:
    """Unique p-th root in F_{p^k} (Frobenius is bijective)."""
    return x ** (x.params.p ** (x.params.k - 1))


def batch_inverse(elems: list[FFElem], params: FieldParams) -> list[FFElem]:
    """Montgomery trick: invert a list of nonzero elements with one inversion."""
    if not elems:
        return []
    prefix = [params.one()]
    for e in elems:
        prefix.append(prefix[-1] * e)
    inv = prefix[-1].inverse()
    out = [params.zero()] * len(elems)
    for i in range(len(elems) - 1, -1, -1):
        out[i] = inv * prefix[i]
        inv = inv * elems[i]
    return out
