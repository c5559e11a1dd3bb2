"""Brute-force cross-checks.

Nothing here reuses the field, curve or Smith-form code it checks: field
elements are plain integers (base-``p`` digits are coefficients), moduli are
found by trial division, the chord-tangent law is written out again, and
determinants come from the Leibniz expansion.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

# --- integer-encoded finite fields ---------------------------------------------------------


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(c: Sequence[int], p: int) -> int:
    v = 0
    for a in reversed(c):
        v = v * p + a
    return v


def _polyrem(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _irreducible_by_trial(f: list[int], p: int) -> bool:
    k = len(f) - 1
    for dg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=dg):
            g = list(tail) + [1]
            if not any(_polyrem(f, g, p)[:dg]):
                return False
    return True


class GF:
    """``F_{p^k}`` with elements encoded as integers ``0 .. p^k - 1``."""

    def __init__(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p**k
        if k == 1:
            self.modulus = [0, 1]
        else:
            for tail in itertools.product(range(p), repeat=k):
                # lex order on coefficient tuples, lowest degree first
                f = list(tail) + [1]
                if _irreducible_by_trial(f, p):
                    self.modulus = f
                    break
        self._mul: dict[tuple[int, int], int] = {}

    def add(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p)

    def neg(self, a: int) -> int:
        p, k = self.p, self.k
        return _undigits([(-x) % p for x in _digits(a, p, k)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        p, k = self.p, self.k
        if k == 1:
            r = a * b % p
        else:
            da, db = _digits(a, p, k), _digits(b, p, k)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            r = _undigits(_polyrem(prod, self.modulus, p), p)
        if len(self._mul) < 4_000_000:
            self._mul[key] = r
        return r

    def power(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.q - 2)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.power(a, (self.q - 1) // 2) == 1

    def root_of(self, poly: Sequence[int]) -> int:
        """Some root of a polynomial over ``F_p`` (coefficients low degree first)."""
        for x in range(self.q):
            acc = 0
            for c in reversed(poly):
                acc = self.add(self.mul(acc, x), c)
            if acc == 0:
                return x
        raise ValueError("no root in this field")

    def embed_from(self, small: GF, root: int):
        """Map integers of ``small`` into ``self`` by sending its generator to ``root``."""

        def phi(x: int) -> int:
            acc = 0
            for c in reversed(_digits(x, small.p, small.k)):
                acc = self.add(self.mul(acc, root), c)
            return acc

        return phi


# --- elliptic curves, written out again ----------------------------------------------------

O = None  # point at infinity


class OracleCurve:
    def __init__(self, F: GF, a: int, b: int):
        self.F, self.a, self.b = F, a, b

    def rhs(self, x: int) -> int:
        F = self.F
        return F.add(F.add(F.mul(F.mul(x, x), x), F.mul(self.a, x)), self.b)

    def points(self) -> list:
        F = self.F
        sq: dict[int, list[int]] = {}
        for y in range(F.q):
            sq.setdefault(F.mul(y, y), []).append(y)
        pts = [O]
        for x in range(F.q):
            for y in sq.get(self.rhs(x), []):
                pts.append((x, y))
        return pts

    def count(self) -> int:
        F = self.F
        n = 1
        for x in range(F.q):
            r = self.rhs(x)
            n += 1 if r == 0 else (2 if F.is_square(r) else 0)
        return n

    def add(self, P, Q):
        F = self.F
        if P is O:
            return Q
        if Q is O:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if F.add(y1, y2) == 0:
                return O
            num = F.add(F.mul(3 % F.p, F.mul(x1, x1)), self.a)
            lam = F.mul(num, F.inv(F.add(y1, y1)))
        else:
            lam = F.mul(F.sub(y2, y1), F.inv(F.sub(x2, x1)))
        x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def order(self, P) -> int:
        n, R = 1, P
        while R is not O:
            R = self.add(R, P)
            n += 1
        return n


def _order_profile(d1: int, d2: int) -> Counter:
    """Element-order histogram of ``Z/d1 x Z/d2`` by enumeration."""
    c = Counter()
    for x in range(d1):
        for y in range(d2):
            c[math.lcm(d1 // math.gcd(x, d1), d2 // math.gcd(y, d2))] += 1
    return c


# --- reports -----------------------------------------------------------------------------


@dataclass
class OracleReport:
    subject: str
    instances: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __str__(self) -> str:
        state = "ok" if self.ok else f"{len(self.mismatches)} mismatches"
        return f"{self.subject}: {self.instances} instances, {state}"


def _coeffs_of(elem) -> list[int]:
    return list(elem.coeffs)


def _oracle_curve_over(curve, d: int = 1) -> OracleCurve:
    """The curve's equation over an independently built ``F_{q^d}``."""
    fld = curve.field
    base = GF(fld.p, fld.k)
    big = GF(fld.p, fld.k * d) if d > 1 else base
    phi = big.embed_from(base, big.root_of(base.modulus)) if d > 1 else (lambda x: x)
    a = phi(_undigits(_coeffs_of(fld.elem(curve.a)), fld.p))
    b = phi(_undigits(_coeffs_of(fld.elem(curve.b)), fld.p))
    return OracleCurve(big, a, b)


def oracle_ec_structure(curve) -> OracleReport:
    from .curve import ec_group_structure

    rep = OracleReport(f"ec_structure[{curve}]", 1)
    if tuple(curve.field.modulus) != tuple(GF(curve.field.p, curve.field.k).modulus):
        rep.mismatches.append("field modulus differs from the trial-division choice")
        return rep
    E = _oracle_curve_over(curve)
    pts = E.points()
    if len(pts) > 10_000:
        rep.mismatches.append(f"{len(pts)} points exceeds oracle bound")
        return rep
    orders = Counter(E.order(P) for P in pts)
    n = len(pts)
    d2 = max(orders)
    d1 = n // d2
    if _order_profile(d1, d2) != orders:
        rep.mismatches.append(f"order statistics {dict(orders)} are not those of Z/{d1} x Z/{d2}")
    st = ec_group_structure(curve).group
    facs = st.invariant_factors
    got = (1, facs[0]) if len(facs) == 1 else tuple(facs) if facs else (1, 1)
    if got != (d1, d2):
        rep.mismatches.append(f"structure Z/{got[0]} x Z/{got[1]} but oracle says Z/{d1} x Z/{d2}")
    if (curve.q - 1) % d1:
        rep.mismatches.append(f"d1={d1} does not divide q-1")
    return rep


def _power_sum_counts(lpoly: Sequence[int], q: int, dmax: int) -> list[int]:
    """``N_d = q^d + 1 - s_d`` with ``s_d`` the power sums of the reciprocal roots."""
    # L = 1 - a T + q T^2: the reciprocal roots have e1 = a, e2 = q
    e1 = -lpoly[1] if len(lpoly) > 1 else 0
    e2 = lpoly[2] if len(lpoly) > 2 else 0
    s = [2 if len(lpoly) > 1 else 0, e1]
    for d in range(2, dmax + 1):
        s.append(e1 * s[d - 1] - e2 * s[d - 2])
    return [q**d + 1 - s[d] for d in range(1, dmax + 1)]


def oracle_zeta(curve, d_max: int) -> OracleReport:
    from .curve import LINE, l_polynomial, point_count

    rep = OracleReport(f"zeta[{curve}, d<={d_max}]")
    lp = l_polynomial(curve)
    predicted = _power_sum_counts(lp, curve.q, d_max)
    for d in range(1, d_max + 1):
        rep.instances += 1
        if curve.kind == LINE:
            direct = curve.q**d + 1
        else:
            direct = _oracle_curve_over(curve, d).count()
        if direct != predicted[d - 1]:
            rep.mismatches.append(f"d={d}: enumeration {direct}, L-polynomial {predicted[d - 1]}")
        if point_count(curve, d) != direct:
            rep.mismatches.append(f"d={d}: point_count {point_count(curve, d)}, enumeration {direct}")
    return rep


def _group_profile(moduli: Sequence[int]) -> Counter:
    c = Counter()
    for x in itertools.product(*(range(m) for m in moduli)):
        o = 1
        for v, m in zip(x, moduli):
            o = math.lcm(o, m // math.gcd(v, m))
        c[o] += 1
    return c


def oracle_kernels(hom, name: str = "hom") -> OracleReport:
    from .abgroup import hom_kernel

    rep = OracleReport(f"kernel[{name}]", 1)
    dom, cod = hom.domain, hom.codomain
    if not dom.is_finite or dom.order > 10_000:
        rep.mismatches.append("domain is infinite or too large for enumeration")
        return rep
    dm = list(dom.invariant_factors)
    cm = list(cod.invariant_factors) + [0] * cod.free_rank
    kernel = []
    for x in itertools.product(*(range(m) for m in dm)):
        img = [sum(xi * row[j] for xi, row in zip(x, hom.matrix)) for j in range(len(cm))]
        if all((v % m if m else v) == 0 for v, m in zip(img, cm)):
            kernel.append(x)
    kgrp = hom_kernel(hom)
    k_prof = Counter()
    for x in kernel:
        o = 1
        for v, m in zip(x, dm):
            o = math.lcm(o, m // math.gcd(v, m))
        k_prof[o] += 1
    if kgrp.group.order != len(kernel):
        rep.mismatches.append(f"kernel order {kgrp.group.order}, enumeration {len(kernel)}")
    elif _group_profile(kgrp.group.invariant_factors) != k_prof:
        rep.mismatches.append(f"kernel {kgrp.group} has the wrong element-order profile")
    kset = set(kernel)
    for row in kgrp.inclusion.matrix:
        if tuple(v % m for v, m in zip(row, dm)) not in kset:
            rep.mismatches.append(f"inclusion image {row} is not in the kernel")
    return rep


# --- Smith normal form -----------------------------------------------------------------------


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= m[i][perm[i]]
            if not term:
                break
        total += term
    return total


def _minor_gcd(m: Sequence[Sequence[int]], k: int) -> int:
    g = 0
    for rows in itertools.combinations(range(len(m)), k):
        for cols in itertools.combinations(range(len(m[0])), k):
            g = math.gcd(g, _det([[m[r][c] for c in cols] for r in rows]))
    return g


def _mm(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def check_snf(mat: Sequence[Sequence[int]]) -> list[str]:
    from .abgroup import smith_normal_form

    r, c = len(mat), len(mat[0])
    U, D, V = smith_normal_form([list(row) for row in mat], c)
    out = []
    if _mm(_mm(U, mat), V) != [list(row) for row in D]:
        out.append(f"U*M*V != D for {mat}")
    if abs(_det(U)) != 1 or abs(_det(V)) != 1:
        out.append(f"non-unimodular transform for {mat}")
    diag = [D[i][i] for i in range(min(r, c))]
    if any(D[i][j] for i in range(r) for j in range(c) if i != j):
        out.append(f"D not diagonal for {mat}")
    if any(x < 0 for x in diag):
        out.append(f"negative diagonal entry for {mat}")
    for x, y in zip(diag, diag[1:]):
        if (x == 0 and y != 0) or (x and y % x):
            out.append(f"divisibility chain broken {diag} for {mat}")
            break
    prod = 1
    for k, dk in enumerate(diag, 1):
        prod *= dk
        if prod != _minor_gcd(mat, k):
            out.append(f"d_1...d_{k} != gcd of {k}x{k} minors for {mat}")
            break
    return out


def oracle_snf(max_dim: int = 3, entry_bound: int = 5, samples: int = 10_000, seed: int = 20240521) -> OracleReport:
    rep = OracleReport(f"snf[dim<={max_dim}, |a|<={entry_bound}]")
    values = range(-entry_bound, entry_bound + 1)
    rng = random.Random(seed)
    big_shapes = []
    for r in range(1, max_dim + 1):
        for c in range(1, max_dim + 1):
            if len(values) ** (r * c) <= 20_000:
                for flat in itertools.product(values, repeat=r * c):
                    mat = [list(flat[i * c:(i + 1) * c]) for i in range(r)]
                    rep.instances += 1
                    rep.mismatches.extend(check_snf(mat))
            else:
                big_shapes.append((r, c))
    if big_shapes:
        per = -(-samples // len(big_shapes))
        for r, c in big_shapes:
            for _ in range(per):
                mat = [[rng.choice(values) for _ in range(c)] for _ in range(r)]
                rep.instances += 1
                rep.mismatches.extend(check_snf(mat))
    return rep


# --- shipped corpus ---------------------------------------------------------------------------


def corpus_reports(quick: bool = False) -> list[OracleReport]:
    """Run every oracle over the fixed example corpus."""
    from .abgroup import FgGroup, GroupHom
    from .curve import CurveSpec, place_at, places_of_degree
    from .finitefield import make_field
    from .hassedomain import HasseDomain, make_cover, norm_N2

    F3, F5, F7 = make_field(3), make_field(5), make_field(7)
    curves = [
        CurveSpec.elliptic(F3, 1, 0),
        CurveSpec.elliptic(F5, -1, 0),
        CurveSpec.elliptic(F5, 0, 2),
        CurveSpec.elliptic(F7, 3, 1),
        CurveSpec.elliptic(make_field(3, 2), 1, 1),
    ]
    reports = [oracle_ec_structure(c) for c in curves]
    reports += [oracle_zeta(c, 3) for c in curves]
    reports.append(oracle_zeta(CurveSpec.projective_line(F5), 3))
    L5 = CurveSpec.projective_line(F5)
    dom = HasseDomain(L5, (place_at(L5, 2, 0), place_at(L5, 1, 0)))
    homs = {
        "N2 split place F5": norm_N2(make_cover(dom, "constant", 2), 2),
        "zero Z/6": GroupHom.zero(FgGroup.cyclic(6), FgGroup.cyclic(6)),
        "identity Z/2xZ/4": GroupHom.identity(FgGroup((2, 4))),
        "sum (Z/3)^2": GroupHom(FgGroup((3, 3)), FgGroup.cyclic(3), ((1,), (1,))),
        "Z/12 -> Z/4 x Z": GroupHom(FgGroup.cyclic(12), FgGroup((4,), 1), ((1, 0),)),
    }
    L7 = CurveSpec.projective_line(F7)
    dom7 = HasseDomain(L7, tuple(places_of_degree(L7, 1)[:3]))
    homs["N2 constant F7 three places"] = norm_N2(make_cover(dom7, "constant", 2), 3)
    reports += [oracle_kernels(h, k) for k, h in homs.items()]
    reports.append(oracle_snf(2 if quick else 3, 5, 2_000 if quick else 10_000))
    return reports
