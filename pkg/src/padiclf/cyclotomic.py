"""Exact arithmetic in Z[zeta] for zeta a primitive p^n-th root of unity.

Elements are integer vectors on the power basis of Z[x]/Phi_{p^n}(x).
The distinguished uniformizer is pi = zeta - 1; exact division by pi and
the resulting pi-adic valuation underpin every polygon in this package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class _Infinite:
    """Valuation of zero; compares above every rational."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INFINITE

    def __gt__(self, other):
        return other is not INFINITE

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


@lru_cache(maxsize=None)
def phi_degree(p: int, n: int) -> int:
    """Degree p^(n-1)*(p-1) of the p^n-th cyclotomic polynomial."""
    return p ** (n - 1) * (p - 1)


@lru_cache(maxsize=None)
def cyclotomic_modulus(p: int, n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of Phi_{p^n}(x) = sum_j x^(j*p^(n-1))."""
    step = p ** (n - 1)
    deg = phi_degree(p, n)
    coeffs = [0] * (deg + 1)
    for j in range(p):
        coeffs[j * step] = 1
    return tuple(coeffs)


def _reduce_mod_phi(coeffs: list[int], p: int, n: int) -> list[int]:
    # x^deg = -(x^(0*s) + ... + x^((p-2)*s)) with s = p^(n-1)
    deg = phi_degree(p, n)
    step = p ** (n - 1)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = 0
            base = i - deg
            for j in range(p - 1):
                coeffs[base + j * step] -= c
    del coeffs[deg:]
    while len(coeffs) < deg:
        coeffs.append(0)
    return coeffs


class CyclotomicInteger:
    """Element of Z[zeta_{p^n}] in the power basis mod Phi_{p^n}."""

    __slots__ = ("p", "n", "coeffs")

    def __init__(self, p: int, n: int, coeffs) -> None:
        deg = phi_degree(p, n)
        cs = list(coeffs)
        if len(cs) > deg:
            cs = _reduce_mod_phi(cs, p, n)
        elif len(cs) < deg:
            cs = cs + [0] * (deg - len(cs))
        self.p = p
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def from_int(cls, p: int, n: int, value: int) -> CyclotomicInteger:
        return cls(p, n, [value])

    @classmethod
    def zero(cls, p: int, n: int) -> CyclotomicInteger:
        return cls.from_int(p, n, 0)

    @classmethod
    def one(cls, p: int, n: int) -> CyclotomicInteger:
        return cls.from_int(p, n, 1)

    @classmethod
    def zeta_power(cls, p: int, n: int, k: int) -> CyclotomicInteger:
        """zeta^k for any integer k (k reduced mod p^n)."""
        k %= p**n
        cs = [0] * (k + 1)
        cs[k] = 1
        return cls(p, n, cs)

    @classmethod
    def pi(cls, p: int, n: int) -> CyclotomicInteger:
        """The uniformizer zeta - 1."""
        return cls.zeta_power(p, n, 1) - cls.one(p, n)

    def _check(self, other: CyclotomicInteger) -> None:
        if self.p != other.p or self.n != other.n:
            raise ValueError("mixed cyclotomic rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInteger.from_int(self.p, self.n, other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        self._check(other)
        return CyclotomicInteger(
            self.p, self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = CyclotomicInteger.from_int(self.p, self.n, other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, self.n, [other * a for a in self.coeffs])
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return CyclotomicInteger(self.p, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = CyclotomicInteger.one(self.p, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInteger.from_int(self.p, self.n, other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return (self.p, self.n, self.coeffs) == (other.p, other.n, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.n, self.coeffs))

    def __repr__(self):
        return f"CyclotomicInteger(p={self.p}, n={self.n}, {list(self.coeffs)})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate_at_one(self) -> int:
        return sum(self.coeffs)

    def residue_mod_p(self) -> int:
        """Image under the residue map zeta -> 1 into Z/pZ."""
        return self.evaluate_at_one() % self.p

    def galois_conjugate(self, a: int) -> CyclotomicInteger:
        """Apply zeta -> zeta^a; a must be coprime to p."""
        if a % self.p == 0:
            raise ValueError("conjugation exponent must be coprime to p")
        out = CyclotomicInteger.zero(self.p, self.n)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CyclotomicInteger.zeta_power(self.p, self.n, a * i) * c
        return out

    def lift_level(self, m: int) -> CyclotomicInteger:
        """Embed Z[zeta_{p^n}] into Z[zeta_{p^m}] via zeta_{p^n} = zeta_{p^m}^(p^(m-n))."""
        if m < self.n:
            raise ValueError("can only lift to a larger level")
        if m == self.n:
            return self
        t = self.p ** (m - self.n)
        out = [0] * (t * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[t * i] = c
        return CyclotomicInteger(self.p, m, out)

    def divide_exact_by_int(self, m: int) -> CyclotomicInteger:
        """Exact division by a rational integer; raises if any coefficient resists."""
        if any(c % m for c in self.coeffs):
            raise ArithmeticError(f"not divisible by {m}")
        return CyclotomicInteger(self.p, self.n, [c // m for c in self.coeffs])

    def divide_exact_by_pi(self) -> CyclotomicInteger:
        """Exact division by pi = zeta - 1.

        Uses Phi_{p^n}(1) = p: c is divisible by pi iff c(1) = p*m, and then
        the quotient is (c(x) - m*Phi_{p^n}(x)) / (x - 1) reduced mod Phi.
        """
        s = self.evaluate_at_one()
        if s % self.p:
            raise ArithmeticError("not divisible by pi")
        m = s // self.p
        phi = cyclotomic_modulus(self.p, self.n)
        diff = [c - m * f for c, f in zip(list(self.coeffs) + [0], phi)]
        # Synthetic division by (x - 1); remainder must vanish.
        quot = [0] * (len(diff) - 1)
        acc = 0
        for i in range(len(diff) - 1, 0, -1):
            acc += diff[i]
            quot[i - 1] = acc
        if acc + diff[0] != 0:
            raise AssertionError("division by (x-1) left a remainder")
        return CyclotomicInteger(self.p, self.n, quot)

    def pi_valuation(self):
        """Largest k with pi^k dividing self; INFINITE for zero."""
        if self.is_zero():
            return INFINITE
        v = 0
        c = self
        while True:
            if c.evaluate_at_one() % self.p:
                return v
            c = c.divide_exact_by_pi()
            v += 1

    def q_valuation(self, q: int) -> Fraction | _Infinite:
        """pi-adic valuation renormalized so v(q) = 1; q must be a power of p."""
        vq = _prime_power_exponent(q, self.p)
        v = self.pi_valuation()
        if v is INFINITE:
            return INFINITE
        return Fraction(v, vq * phi_degree(self.p, self.n))

    def norm(self) -> int:
        """Product of all Galois conjugates; an exact rational integer."""
        prod = CyclotomicInteger.one(self.p, self.n)
        for a in range(1, self.p**self.n):
            if a % self.p:
                prod = prod * self.galois_conjugate(a)
        if any(c != 0 for c in prod.coeffs[1:]):
            raise AssertionError("norm did not land in Z")
        return prod.coeffs[0]


def _prime_power_exponent(q: int, p: int) -> int:
    """The exponent a with q = p^a; rejects any other q."""
    a = 0
    m = q
    while m > 1 and m % p == 0:
        m //= p
        a += 1
    if m != 1 or a == 0:
        raise ValueError(f"{q} is not a positive power of {p}")
    return a
