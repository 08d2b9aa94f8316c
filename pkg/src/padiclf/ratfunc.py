"""Polynomials and rational functions over F_q: the coordinate ring of P^1.

Places of P^1 here are always F_q-rational: a finite place is the monic
linear polynomial x - a (stored as the element a), plus the symbol at
infinity.  Polar parts, pole orders and Taylor shifts are all exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .finitefield import FFElem, FieldParams, embed


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over F_q; coeffs low-to-high with no trailing zeros."""

    params: FieldParams
    coeffs: tuple[FFElem, ...]

    @classmethod
    def make(cls, params: FieldParams, coeffs) -> Poly:
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        return cls(params, tuple(cs))

    @classmethod
    def from_int_coeffs(cls, params: FieldParams, ints) -> Poly:
        return cls.make(params, [params.from_int(c) for c in ints])

    @classmethod
    def constant(cls, params: FieldParams, value: FFElem) -> Poly:
        return cls.make(params, [value])

    @classmethod
    def x_minus(cls, params: FieldParams, a: FFElem) -> Poly:
        return cls.make(params, [-a, params.one()])

    def degree(self) -> int:
        """Degree with deg(0) = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FFElem:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly.make(self.params, out)

    def __neg__(self) -> Poly:
        return Poly(self.params, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if isinstance(other, FFElem):
            return Poly.make(self.params, [c * other for c in self.coeffs])
        if isinstance(other, int):
            return Poly.make(self.params, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly(self.params, ())
        out = [self.params.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly.make(self.params, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        result = Poly.constant(self.params, self.params.one())
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(self.params, ()), self
        inv_lead = other.leading().inverse()
        quot = [self.params.zero()] * (dq + 1)
        for i in range(len(rem) - 1, len(other.coeffs) - 2, -1):
            c = rem[i] * inv_lead
            if c:
                quot[i - len(other.coeffs) + 1] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - len(other.coeffs) + 1 + j] = (
                        rem[i - len(other.coeffs) + 1 + j] - c * b
                    )
        return Poly.make(self.params, quot), Poly.make(self.params, rem)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * self.leading().inverse()

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def evaluate(self, x: FFElem) -> FFElem:
        acc = x.params.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + (c if c.params == x.params else embed(c, x.params))
        return acc

    def shift(self, a: FFElem) -> Poly:
        """Coefficients of self(x + a), by repeated synthetic division by (x - a)."""
        work = list(self.coeffs)
        out = []
        while work:
            quot = []
            acc = self.params.zero()
            for c in reversed(work):
                acc = acc * a + c
                quot.append(acc)
            rem = quot.pop()
            quot.reverse()
            out.append(rem)
            work = quot
        return Poly.make(self.params, out)

    def multiplicity_at(self, a: FFElem) -> int:
        """Multiplicity of the root a (0 if not a root)."""
        m = 0
        cur = self
        lin = Poly.x_minus(self.params, a)
        while not cur.is_zero():
            q, r = cur.divmod(lin)
            if not r.is_zero():
                break
            m += 1
            cur = q
        return m

    def series_inverse(self, m: int) -> Poly:
        """Inverse of self as a power series mod x^m; constant term must be nonzero."""
        if self.is_zero() or not self.coeffs[0]:
            raise ZeroDivisionError("series inverse needs a unit constant term")
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        for k in range(1, m):
            acc = self.params.zero()
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-inv0 * acc)
        return Poly.make(self.params, out)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c.as_int()) if c.is_prime_field() else f"[{','.join(map(str, c.coeffs))}]"
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*x" if cs != "1" else "x")
            else:
                terms.append(f"{cs}*x^{i}" if cs != "1" else f"x^{i}")
        return " + ".join(terms)


@dataclass(frozen=True)
class RationalFunction:
    """num/den over F_q, denominator monic, gcd(num, den) = 1."""

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> RationalFunction:
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            one = Poly.constant(num.params, num.params.one())
            return cls(num, one)
        g = num.gcd(den)
        if g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead_inv = den.leading().inverse()
        return cls(num * lead_inv, den * lead_inv)

    @classmethod
    def from_poly(cls, poly: Poly) -> RationalFunction:
        return cls.make(poly, Poly.constant(poly.params, poly.params.one()))

    @classmethod
    def from_int(cls, params: FieldParams, value: int) -> RationalFunction:
        return cls.from_poly(Poly.from_int_coeffs(params, [value]))

    @property
    def params(self) -> FieldParams:
        return self.num.params

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if isinstance(other, int):
            other = RationalFunction.from_int(self.params, other)
        return RationalFunction.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RationalFunction.from_int(self.params, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RationalFunction.make(self.num * other, self.den)
        return RationalFunction.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction.make(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction.make(self.den, self.num) ** (-e)
        result = RationalFunction.from_int(self.params, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pole_order_at(self, a: FFElem) -> int:
        """Order of the pole at the finite place x = a (0 if regular)."""
        return self.den.multiplicity_at(a)

    def pole_order_at_infinity(self) -> int:
        return max(self.num.degree() - self.den.degree(), 0)

    def finite_pole_places(self) -> list[FFElem]:
        """All finite poles, required to be F_q-rational; rejects higher-degree places."""
        den = self.den
        roots = []
        for m in range(self.params.order):
            a = self.params.from_index(m)
            mult = den.multiplicity_at(a)
            if mult:
                roots.append(a)
                den = den.divmod(Poly.x_minus(self.params, a) ** mult)[0]
        if den.degree() > 0:
            raise ValueError(
                "denominator has a non-rational irreducible factor; "
                "only degree-1 places are supported"
            )
        return roots

    def polar_part_at(self, a: FFElem) -> list[FFElem]:
        """Coefficients [c_1, ..., c_m] of the polar part sum c_j (x-a)^(-j)."""
        m = self.pole_order_at(a)
        if m == 0:
            return []
        lin = Poly.x_minus(self.params, a) ** m
        den1 = self.den.divmod(lin)[0]
        num_t = self.num.shift(a)
        den1_t = den1.shift(a)
        h = (num_t * den1_t.series_inverse(m)).coeffs[:m]
        h = list(h) + [self.params.zero()] * (m - len(h))
        # coefficient of t^j in h is the coefficient of (x-a)^(j-m)
        return [h[m - j] for j in range(1, m + 1)]

    def polar_part_at_infinity(self) -> list[FFElem]:
        """Coefficients [c_1, ..., c_d] of the polynomial part sum c_j x^j."""
        d = self.pole_order_at_infinity()
        if d == 0:
            return []
        q, _ = self.num.divmod(self.den)
        cs = list(q.coeffs[1:]) + [self.params.zero()] * (d - q.degree())
        return cs[:d]

    def value_at_infinity(self) -> FFElem:
        """Regular value at infinity; requires deg num <= deg den."""
        dn, dd = self.num.degree(), self.den.degree()
        if dn > dd:
            raise ValueError("pole at infinity")
        if dn < dd:
            return self.params.zero()
        return self.num.leading() / self.den.leading()

    def __str__(self) -> str:
        if self.den.degree() == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"
