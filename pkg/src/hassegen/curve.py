"""Genus 0 and genus 1 curves over ``F_q``: points, places, zeta data, Mordell group.

Affine points are tuples of field elements: ``(t,)`` on the projective line,
``(x, y)`` on ``y^2 = x^3 + a x + b``.  The point at infinity is ``INF``.
Points are ordered with ``INF`` first, then lexicographically on the
concatenated coefficient vectors of their coordinates.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .abgroup import FgGroup
from .errors import HasseBoundViolation, InvalidCurve, OffCurvePoint, UnsupportedField
from .finitefield import Embedding, FFElem, FieldSpec, field_bound, make_field, standard_embedding

LINE = "line"
ELLIPTIC = "elliptic"


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Point = Union[tuple, _Infinity]


def point_key(pt: Point) -> tuple:
    if pt is INF:
        return (0,)
    return (1,) + tuple(c for x in pt for c in x.coeffs)


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    field: FieldSpec
    a: FFElem | None = None
    b: FFElem | None = None

    def __post_init__(self):
        if self.kind == LINE:
            if self.a is not None or self.b is not None:
                raise InvalidCurve("the projective line takes no coefficients")
            return
        if self.kind != ELLIPTIC:
            raise InvalidCurve(f"unknown curve kind {self.kind!r}")
        a, b = self.field.elem(self.a), self.field.elem(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.field.p == 3:
            singular = a.is_zero()
        else:
            singular = (4 * a**3 + 27 * b**2).is_zero()
        if singular:
            raise InvalidCurve(f"y^2 = x^3 + {a}x + {b} is singular over {self.field}")

    @classmethod
    def projective_line(cls, field: FieldSpec) -> CurveSpec:
        return cls(LINE, field)

    @classmethod
    def elliptic(cls, field: FieldSpec, a, b) -> CurveSpec:
        return cls(ELLIPTIC, field, field.elem(a), field.elem(b))

    @property
    def genus(self) -> int:
        return 0 if self.kind == LINE else 1

    @property
    def q(self) -> int:
        return self.field.size

    def extension(self, d: int) -> tuple[FieldSpec, Embedding]:
        """``F_{q^d}`` and the embedding of the constant field into it."""
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        if self.q**d > field_bound():
            raise UnsupportedField(f"{self.q}^{d} exceeds the field bound {field_bound()}")
        big = make_field(self.field.p, self.field.k * d)
        return big, standard_embedding(self.field, big)

    def base_change(self, d: int) -> CurveSpec:
        return _base_change(self, d)

    def __str__(self) -> str:
        if self.kind == LINE:
            return f"P^1/{self.field}"
        return f"y^2=x^3+{self.a}x+{self.b}/{self.field}"


@functools.lru_cache(maxsize=None)
def _base_change(curve: CurveSpec, d: int) -> CurveSpec:
    if d == 1:
        return curve
    big, emb = curve.extension(d)
    if curve.kind == LINE:
        return CurveSpec.projective_line(big)
    return CurveSpec(ELLIPTIC, big, emb(curve.a), emb(curve.b))


def on_curve(curve: CurveSpec, pt: Point) -> bool:
    if pt is INF:
        return True
    if any(c.field != curve.field for c in pt):
        return False
    if curve.kind == LINE:
        return len(pt) == 1
    x, y = pt
    return y * y == x**3 + curve.a * x + curve.b


# --- enumeration ---------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _sqrt_table(field: FieldSpec) -> dict[FFElem, list[FFElem]]:
    table: dict[FFElem, list[FFElem]] = {}
    for y in field.elements():
        table.setdefault(y * y, []).append(y)
    return table


@functools.lru_cache(maxsize=None)
def rational_points(curve: CurveSpec) -> tuple[Point, ...]:
    """All ``F_q``-points in canonical order."""
    f = curve.field
    if curve.kind == LINE:
        pts = [(t,) for t in f.elements()]
    else:
        roots = _sqrt_table(f)
        pts = []
        for x in f.elements():
            for y in roots.get(x**3 + curve.a * x + curve.b, ()):
                pts.append((x, y))
    pts.sort(key=point_key)
    return (INF,) + tuple(pts)


def point_count(curve: CurveSpec, d: int = 1) -> int:
    """Number of ``F_{q^d}``-rational points."""
    return len(rational_points(curve.base_change(d)))


def l_polynomial(curve: CurveSpec) -> list[int]:
    """Coefficients (constant term first) of ``L(T)``; ``Z(T) = L(T)/((1-T)(1-qT))``."""
    if curve.genus == 0:
        return [1]
    q = curve.q
    trace = q + 1 - point_count(curve, 1)
    if trace * trace > 4 * q:
        raise HasseBoundViolation(f"|a|={abs(trace)} exceeds 2*sqrt({q}) for {curve}")
    return [1, -trace, q]


def predicted_count(lpoly: list[int], q: int, d: int) -> int:
    """``N_d = q^d + 1 - sum(alpha_i^d)`` from Newton's identities on ``L(T)``."""
    # reciprocal roots of L(T) = 1 + c1 T + c2 T^2 are roots of X^2 + c1 X + c2
    e = [1] + [((-1) ** i) * c for i, c in enumerate(lpoly[1:], start=1)]
    g = len(e) - 1
    s = [g]
    for k in range(1, d + 1):
        total = sum(((-1) ** (i - 1)) * e[i] * s[k - i] for i in range(1, min(k, g + 1)))
        if k <= g:
            total += ((-1) ** (k - 1)) * k * e[k]
        s.append(total)
    return q**d + 1 - s[d]


def frobenius_point(pt: Point, q: int) -> Point:
    if pt is INF:
        return INF
    return tuple(c**q for c in pt)


def frobenius_orbit(pt: Point, q: int) -> list[Point]:
    orbit = [pt]
    nxt = frobenius_point(pt, q)
    while nxt != pt:
        orbit.append(nxt)
        nxt = frobenius_point(nxt, q)
    return orbit


@dataclass(frozen=True)
class Place:
    """Closed point: a Frobenius orbit of size ``degree`` among ``F_{q^degree}``-points."""

    curve: CurveSpec
    degree: int
    rep: Point
    index: int

    @property
    def residue_size(self) -> int:
        return self.curve.q**self.degree

    def points(self) -> list[Point]:
        return frobenius_orbit(self.rep, self.curve.q)

    def __str__(self) -> str:
        if self.rep is INF:
            return "inf"
        coords = ",".join(repr(c) for c in self.rep)
        return f"deg{self.degree}#{self.index}({coords})"


@functools.lru_cache(maxsize=None)
def places_of_degree(curve: CurveSpec, d: int) -> tuple[Place, ...]:
    """Places of degree ``d`` in canonical order (``INF`` first, then lex on representatives)."""
    q = curve.q
    seen: set = set()
    reps = []
    for pt in rational_points(curve.base_change(d)):
        if pt in seen:
            continue
        orbit = frobenius_orbit(pt, q)
        seen.update(orbit)
        if len(orbit) == d:
            reps.append(min(orbit, key=point_key))
    reps.sort(key=point_key)
    return tuple(Place(curve, d, r, i) for i, r in enumerate(reps))


def place_at(curve: CurveSpec, degree: int, index: int) -> Place:
    places = places_of_degree(curve, degree)
    if not 0 <= index < len(places):
        raise IndexError(f"{curve} has {len(places)} places of degree {degree}; index {index} out of range")
    return places[index]


def infinity_place(curve: CurveSpec) -> Place:
    return places_of_degree(curve, 1)[0]


def mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def expected_place_count(counts: dict[int, int], d: int) -> int:
    """``(1/d) sum_{e | d} mu(d/e) N_e``."""
    total = sum(mobius(d // e) * counts[e] for e in range(1, d + 1) if d % e == 0)
    return total // d


# --- group law -----------------------------------------------------------------


def _require_elliptic(curve: CurveSpec):
    if curve.kind != ELLIPTIC:
        raise InvalidCurve("group law needs an elliptic curve")


def ec_neg(curve: CurveSpec, pt: Point) -> Point:
    if pt is INF:
        return INF
    x, y = pt
    return (x, -y)


def ec_add(curve: CurveSpec, p1: Point, p2: Point) -> Point:
    _require_elliptic(curve)
    for pt in (p1, p2):
        if not on_curve(curve, pt):
            raise OffCurvePoint(f"{pt} is not on {curve}")
    if p1 is INF:
        return p2
    if p2 is INF:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if (y1 + y2).is_zero():
            return INF
        lam = (3 * x1 * x1 + curve.a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def ec_mul(curve: CurveSpec, n: int, pt: Point) -> Point:
    if n < 0:
        return ec_mul(curve, -n, ec_neg(curve, pt))
    result, base = INF, pt
    while n:
        if n & 1:
            result = ec_add(curve, result, base)
        base = ec_add(curve, base, base)
        n >>= 1
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def point_order(curve: CurveSpec, pt: Point, group_order: int | None = None) -> int:
    n = group_order or len(rational_points(curve))
    for d in _divisors(n):
        if ec_mul(curve, d, pt) is INF:
            return d
    raise AssertionError("point order does not divide the group order")  # pragma: no cover


class ECStructure(NamedTuple):
    group: FgGroup
    generators: tuple[Point, ...]
    table: dict  # point -> canonical coordinates

    def coords(self, pt: Point) -> tuple[int, ...]:
        return self.table[pt]

    def point(self, coords) -> Point:
        return self.inverse[tuple(c % d for c, d in zip(coords, self.group.invariant_factors))]

    @property
    def inverse(self) -> dict:
        return {v: k for k, v in self.table.items()}


@functools.lru_cache(maxsize=None)
def ec_group_structure(curve: CurveSpec) -> ECStructure:
    """``E(F_q) = Z/d1 x Z/d2`` with generators and a discrete-log table."""
    _require_elliptic(curve)
    pts = rational_points(curve)
    n = len(pts)
    orders = {pt: point_order(curve, pt, n) for pt in pts}
    d2 = max(orders.values())
    d1 = n // d2
    big = next(pt for pt in pts if orders[pt] == d2)
    span_big = []
    acc = INF
    for _ in range(d2):
        span_big.append(acc)
        acc = ec_add(curve, acc, big)
    if d1 == 1:
        gens = (big,) if d2 > 1 else ()
        table = {pt: (i,) for i, pt in enumerate(span_big)} if d2 > 1 else {INF: ()}
        return ECStructure(FgGroup((d2,) if d2 > 1 else ()), gens, table)
    in_big = set(span_big)
    small = None
    for pt in pts:
        if orders[pt] != d1:
            continue
        acc, ok = pt, True
        for _ in range(1, d1):
            if acc in in_big:
                ok = False
                break
            acc = ec_add(curve, acc, pt)
        if ok:
            small = pt
            break
    if small is None:  # pragma: no cover
        raise AssertionError("no complementary generator found")
    table = {}
    row = INF
    for i in range(d1):
        for j, b in enumerate(span_big):
            table[ec_add(curve, row, b)] = (i, j)
        row = ec_add(curve, row, small)
    if len(table) != n:  # pragma: no cover
        raise AssertionError("generators do not span E(F_q)")
    group = FgGroup((d1, d2))
    if math.gcd(d2, curve.q - 1) % d1:  # pragma: no cover - Weil pairing constraint
        raise AssertionError("d1 does not divide q - 1")
    return ECStructure(group, (small, big), table)


# --- divisor classes -------------------------------------------------------------


@dataclass(frozen=True)
class PicClass:
    """Class in ``Pic(C) = Z + Pic^0(C)``: degree plus, for elliptic curves, a point of ``E(F_q)``."""

    degree: int
    zero_part: Point | None = None


def descend_point(curve: CurveSpec, d: int, pt: Point) -> Point:
    """Rewrite a point of ``C(F_{q^d})`` fixed by Frobenius as an ``F_q``-point."""
    if pt is INF or d == 1:
        return pt
    _, emb = curve.extension(d)
    coords = tuple(emb.preimage(c) for c in pt)
    if any(c is None for c in coords):
        raise ValueError(f"{pt} is not defined over {curve.field}")
    return coords


def trace_point(curve: CurveSpec, d: int, pt: Point) -> Point:
    """``sum_{i<d} phi^i(P)`` for ``P`` in ``E(F_{q^d})``, returned in ``E(F_q)``."""
    ext = curve.base_change(d)
    acc, cur = INF, pt
    for _ in range(d):
        acc = ec_add(ext, acc, cur)
        cur = frobenius_point(cur, curve.q)
    return descend_point(curve, d, acc)


def place_class(curve: CurveSpec, place: Place) -> PicClass:
    if place.curve != curve:
        raise ValueError("place does not lie on this curve")
    if curve.kind == LINE:
        return PicClass(place.degree)
    if place.rep is INF:
        return PicClass(1, INF)
    ext = curve.base_change(place.degree)
    acc = INF
    for pt in place.points():
        acc = ec_add(ext, acc, pt)
    return PicClass(place.degree, descend_point(curve, place.degree, acc))


def pic_group(curve: CurveSpec) -> FgGroup:
    """``Pic(C) = E(F_q) + Z`` (just ``Z`` on the line), canonical layout."""
    if curve.kind == LINE:
        return FgGroup((), 1)
    return FgGroup(ec_group_structure(curve).group.invariant_factors, 1)


def pic_coords(curve: CurveSpec, cls: PicClass) -> tuple[int, ...]:
    """Coordinates of a class in ``pic_group(curve)``: Mordell-group coordinates, then the degree."""
    if curve.kind == LINE:
        return (cls.degree,)
    return ec_group_structure(curve).coords(cls.zero_part) + (cls.degree,)


def pic_class_from_coords(curve: CurveSpec, coords) -> PicClass:
    if curve.kind == LINE:
        return PicClass(coords[0])
    st = ec_group_structure(curve)
    acc = INF
    for c, g in zip(coords[:-1], st.generators):
        acc = ec_add(curve, acc, ec_mul(curve, c, g))
    return PicClass(coords[-1], acc)
