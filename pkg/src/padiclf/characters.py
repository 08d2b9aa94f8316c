"""Order-p^n characters of the fundamental group of open subsets of P^1.

A character is a length-n Witt vector of rational functions; the covering
it cuts out satisfies F(y) - y = f.  Reduction strips p-divisible leading
polar terms so that pole orders become the ramification breaks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .finitefield import FFElem, FieldParams, pth_root
from .polygons import SlopePolygon, ValUnit
from .ratfunc import Poly, RationalFunction


@dataclass(frozen=True)
class Place:
    """F_q-rational place of P^1: a finite point x = a, or infinity."""

    at_infinity: bool
    a: FFElem | None = None

    @classmethod
    def infinity(cls) -> Place:
        return cls(True, None)

    @classmethod
    def finite(cls, a: FFElem) -> Place:
        return cls(False, a)

    def sort_key(self) -> tuple[int, int]:
        return (1, 0) if self.at_infinity else (0, self.a.index())

    def __str__(self) -> str:
        if self.at_infinity:
            return "inf"
        if self.a.is_prime_field():
            return f"x-{self.a.as_int()}"
        return f"x-[{','.join(map(str, self.a.coeffs))}]"


@dataclass(frozen=True)
class SwanData:
    """Break sequences and Swan conductors of a reduced character."""

    p: int
    n: int
    entries: tuple[tuple[Place, tuple[int, ...]], ...]

    def places(self) -> tuple[Place, ...]:
        return tuple(pl for pl, _ in self.entries)

    def breaks(self, place: Place) -> tuple[int, ...]:
        for pl, br in self.entries:
            if pl == place:
                return br
        raise KeyError(f"no ramification data at {place}")

    def conductor(self, place: Place) -> int:
        return self.breaks(place)[-1]

    def delta(self, place: Place) -> Fraction:
        return Fraction(self.conductor(place), self.p ** (self.n - 1))


@dataclass(frozen=True)
class ASWCharacter:
    """Witt vector of rational functions on P^1 over F_q, poles inside S."""

    p: int
    n: int
    base: FieldParams
    coords: tuple[RationalFunction, ...]
    ramified: tuple[Place, ...]

    @classmethod
    def build(cls, p: int, n: int, base: FieldParams, coords) -> ASWCharacter:
        if base.p != p:
            raise ValueError("base field characteristic must equal p")
        coords = tuple(coords)
        if len(coords) != n:
            raise ValueError(f"expected {n} Witt coordinates, got {len(coords)}")
        places: set[Place] = set()
        for f in coords:
            for a in f.finite_pole_places():
                places.add(Place.finite(a))
            if f.pole_order_at_infinity() > 0:
                places.add(Place.infinity())
        ramified = tuple(sorted(places, key=Place.sort_key))
        return cls(p, n, base, coords, ramified)

    @property
    def q(self) -> int:
        return self.base.order

    def pole_order(self, f: RationalFunction, place: Place) -> int:
        if place.at_infinity:
            return f.pole_order_at_infinity()
        return f.pole_order_at(place.a)

    def describe(self) -> str:
        body = "; ".join(str(f) for f in self.coords)
        return f"p={self.p} n={self.n} q={self.q} f=({body})"

    def is_reduced(self) -> bool:
        for f in self.coords:
            for place in self.ramified:
                m = self.pole_order(f, place)
                if m and m % self.p == 0:
                    return False
        return True


def reduce_character(char: ASWCharacter) -> ASWCharacter:
    """Strip p-divisible leading polar terms, coordinate by coordinate.

    Each step replaces f by f - g^p + g where g kills the offending term;
    the substitution y -> y + g identifies the two coverings, so character
    sums are unchanged.  Pole orders strictly decrease, so this terminates.
    """
    p = char.p
    base = char.base
    x = Poly.from_int_coeffs(base, [0, 1])
    new_coords = []
    for f in char.coords:
        while True:
            changed = False
            d = f.pole_order_at_infinity()
            if d and d % p == 0:
                c = f.polar_part_at_infinity()[-1]
                g = RationalFunction.from_poly(x ** (d // p) * pth_root(c))
                f = f - g**p + g
                changed = True
            for a in f.finite_pole_places():
                m = f.pole_order_at(a)
                if m % p == 0:
                    c = f.polar_part_at(a)[-1]
                    g = RationalFunction.make(
                        Poly.constant(base, pth_root(c)),
                        Poly.x_minus(base, a) ** (m // p),
                    )
                    f = f - g**p + g
                    changed = True
                    break
            if not changed:
                break
        new_coords.append(f)
    return ASWCharacter.build(p, char.n, base, new_coords)


def swan_conductors(char: ASWCharacter) -> SwanData:
    """Break sequence d_i = max_{j<i} p^(i-1-j) * ord_P(f_j) at each P in S."""
    if not char.is_reduced():
        raise ValueError("character must be reduced before computing conductors")
    if not char.ramified:
        raise ValueError("unramified character has no conductor data")
    p, n = char.p, char.n
    entries = []
    for place in char.ramified:
        orders = [char.pole_order(f, place) for f in char.coords]
        if orders[0] == 0:
            raise ValueError(
                f"f_0 must have a pole at every ramified place; fails at {place} "
                "(totally-ramified guard)"
            )
        breaks = []
        for i in range(1, n + 1):
            breaks.append(max(p ** (i - 1 - j) * orders[j] for j in range(i)))
        for i in range(n - 1):
            if breaks[i + 1] < p * breaks[i]:
                raise AssertionError("break sequence violates d_{i+1} >= p*d_i")
        if breaks[-1] < p ** (n - 1):
            raise AssertionError("Swan conductor below p^(n-1)")
        entries.append((place, tuple(breaks)))
    return SwanData(p, n, tuple(entries))


def local_hodge_polygon(d: int, q: int) -> SlopePolygon:
    """Slope set {1/d, ..., (d-1)/d} in q-adic units."""
    if d < 1:
        raise ValueError("conductor must be >= 1")
    return SlopePolygon.from_slopes(
        [Fraction(k, d) for k in range(1, d)], ValUnit.q_adic(q)
    )


def global_hodge_polygon(swan: SwanData, q: int, genus: int = 0) -> SlopePolygon:
    """Concatenation of local polygons with g-1+|S| slopes 0 and slopes 1."""
    m = genus - 1 + len(swan.entries)
    if m < 0:
        raise ValueError("g - 1 + |S| must be nonnegative")
    unit = ValUnit.q_adic(q)
    poly = SlopePolygon.from_slopes([0] * m + [1] * m, unit)
    for place, _ in swan.entries:
        poly = poly.concat(local_hodge_polygon(swan.conductor(place), q))
    return poly


def check_equality_conditions(
    swan: SwanData, genus: int = 0, ordinary: bool = True
) -> bool:
    """The three equality conditions: ordinary, integral delta, p = 1 mod delta."""
    if not ordinary:
        return False
    for place, _ in swan.entries:
        delta = swan.delta(place)
        if delta.denominator != 1:
            return False
        if (swan.p - 1) % delta.numerator != 0:
            return False
    return True
