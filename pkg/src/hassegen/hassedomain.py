"""Hasse domains ``O_S`` and finite etale covers ``R / O_S``.

Picard groups are explicit quotients of ``Pic(C) = E(F_q) + Z`` by the
classes of the places in ``S``; Brauer ``m``-torsion is the zero-sum model
of local invariants over ``S``; the three norm maps act on these models.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .abgroup import FgGroup, GroupHom, Presentation, hermite_rows, hom_kernel, induced_maps, present, vecmat
from .curve import (
    ELLIPTIC,
    INF,
    CurveSpec,
    Place,
    ec_group_structure,
    frobenius_orbit,
    pic_class_from_coords,
    pic_coords,
    pic_group,
    place_class,
    places_of_degree,
    trace_point,
)
from .errors import FiberSumMismatch, InvalidDomain, UnsupportedCover, UnsupportedField
from .finitefield import find_embedding

IDENTITY = "identity"
CONSTANT = "constant"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class HasseDomain:
    curve: CurveSpec
    S: tuple[Place, ...]

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(self.S))
        if not self.S:
            raise InvalidDomain("S must be nonempty")
        if len(set(self.S)) != len(self.S):
            raise InvalidDomain("places in S must be distinct")
        if any(p.curve != self.curve for p in self.S):
            raise InvalidDomain("every place of S must lie on the curve")

    @property
    def q(self) -> int:
        return self.curve.q

    def __str__(self) -> str:
        return f"O_S({self.curve}; S=[{', '.join(str(p) for p in self.S)}])"


# --- Picard group -------------------------------------------------------------


@dataclass(frozen=True)
class PicardData:
    domain: HasseDomain
    presentation: Presentation = field(repr=False)

    @property
    def group(self) -> FgGroup:
        return self.presentation.group

    def class_of(self, place: Place) -> tuple[int, ...]:
        return self.presentation.coords(pic_coords(self.domain.curve, place_class(self.domain.curve, place)))

    def coords_of(self, pic_vector: Sequence[int]) -> tuple[int, ...]:
        """Image in ``Pic(O_S)`` of a vector in ``pic_group(curve)`` coordinates."""
        return self.presentation.coords(pic_vector)


def _curve_relations(curve: CurveSpec) -> list[list[int]]:
    n = pic_group(curve).ngens
    return [[d if j == i else 0 for j in range(n)] for i, d in enumerate(pic_group(curve).invariant_factors)]


@functools.lru_cache(maxsize=None)
def picard(domain: HasseDomain) -> PicardData:
    """``Pic(O_S) = Pic(C) / <[p] : p in S>``."""
    curve = domain.curve
    rels = _curve_relations(curve)
    rels += [list(pic_coords(curve, place_class(curve, p))) for p in domain.S]
    return PicardData(domain, present(pic_group(curve).ngens, rels))


# --- units ----------------------------------------------------------------------


@dataclass(frozen=True)
class UnitData:
    """``O_S^x = F_q^x x Z^{|S|-1}``; the free part as the lattice of principal divisors on ``S``."""

    torsion_order: int
    lattice: FgGroup
    lattice_basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return self.lattice.free_rank


def class_map(domain: HasseDomain) -> GroupHom:
    """``Z^S -> Pic(C)``, ``p -> [p]``."""
    curve = domain.curve
    rows = tuple(pic_coords(curve, place_class(curve, p)) for p in domain.S)
    return GroupHom(FgGroup((), len(domain.S)), pic_group(curve), rows)


@functools.lru_cache(maxsize=None)
def unit_data(domain: HasseDomain) -> UnitData:
    k = hom_kernel(class_map(domain))
    basis = hermite_rows(k.inclusion.matrix, len(domain.S))
    return UnitData(domain.q - 1, k.group, tuple(tuple(b) for b in basis))


# --- Brauer torsion ---------------------------------------------------------------


@dataclass(frozen=True)
class BrauerTorsion:
    """``Br(O_S)[m] = {x in (Z/m)^S : sum x = 0}``."""

    m: int
    n_places: int

    @property
    def group(self) -> FgGroup:
        if self.m == 1 or self.n_places <= 1:
            return FgGroup()
        return FgGroup((self.m,) * (self.n_places - 1))

    @property
    def order(self) -> int:
        return self.m ** (self.n_places - 1)

    def to_group(self, x: Sequence[int]) -> tuple[int, ...]:
        if sum(x) % self.m:
            raise ValueError(f"{tuple(x)} is not a zero-sum vector mod {self.m}")
        if self.group.is_trivial:
            return ()
        return tuple(v % self.m for v in x[:-1])

    def from_group(self, y: Sequence[int]) -> tuple[int, ...]:
        if self.group.is_trivial:
            return (0,) * self.n_places
        y = [v % self.m for v in y]
        return tuple(y) + ((-sum(y)) % self.m,)

    def coordinate_model(self) -> Iterator[tuple[int, ...]]:
        """Enumerate the zero-sum tuples directly."""
        import itertools

        for x in itertools.product(range(self.m), repeat=self.n_places):
            if sum(x) % self.m == 0:
                yield x


def brauer_torsion(domain: HasseDomain, m: int) -> BrauerTorsion:
    if m < 1:
        raise ValueError("m must be >= 1")
    return BrauerTorsion(m, len(domain.S))


# --- covers -----------------------------------------------------------------------


@dataclass(frozen=True)
class Fiber:
    place: Place
    above: tuple[tuple[Place, int], ...]  # (cover place, residue degree)


@dataclass(frozen=True)
class CoverDescriptor:
    base: HasseDomain
    kind: str
    cover_curve: CurveSpec
    degree: int
    fibers: tuple[Fiber, ...]
    d: int = 1  # constant-extension degree for CONSTANT covers

    @property
    def q_cover(self) -> int:
        return self.cover_curve.q

    @property
    def constant_degree(self) -> int:
        """``[F_{q'} : F_q]``."""
        return self.cover_curve.field.k // self.base.curve.field.k

    @property
    def cover_places(self) -> tuple[Place, ...]:
        return tuple(pl for fb in self.fibers for pl, _ in fb.above)

    @property
    def cover_domain(self) -> HasseDomain:
        return HasseDomain(self.cover_curve, self.cover_places)

    def fiber_index(self) -> list[int]:
        """For each place of ``S'``, the index in ``S`` of the place below it."""
        return [j for j, fb in enumerate(self.fibers) for _ in fb.above]

    def __str__(self) -> str:
        label = {IDENTITY: "identity", CONSTANT: f"constant({self.d})", EXPLICIT: "explicit"}[self.kind]
        return f"{label} cover of degree {self.degree} by {self.cover_curve}"


def _constant_fiber(base_curve: CurveSpec, cover_curve: CurveSpec, d: int, place: Place) -> tuple[tuple[Place, int], ...]:
    e = place.degree
    g = math.gcd(e, d)
    e_cov = e // g
    f = d // g
    if place.rep is INF:
        return ((places_of_degree(cover_curve, 1)[0], f),)
    big_cover, emb_cover = cover_curve.extension(e_cov)
    small, emb_small = base_curve.extension(e)
    _, emb_d = base_curve.extension(d)
    gen = base_curve.field.gen()
    phi = find_embedding(small, big_cover, [(emb_small(gen), emb_cover(emb_d(gen)))])
    image = {tuple(phi(c) for c in pt) for pt in frobenius_orbit(place.rep, base_curve.q)}
    above = [(pl, f) for pl in places_of_degree(cover_curve, e_cov) if pl.rep in image]
    if len(above) != g:  # pragma: no cover - orbit bookkeeping
        raise AssertionError(f"expected {g} places above {place}, found {len(above)}")
    return tuple(above)


def make_cover(
    base: HasseDomain,
    kind: str = IDENTITY,
    d: int | None = None,
    cover_curve: CurveSpec | None = None,
    degree: int | None = None,
    fibers: dict[Place, Sequence[tuple[Place, int]]] | None = None,
) -> CoverDescriptor:
    """Build a cover descriptor.

    ``kind="identity"`` is ``R = O_S``.  ``kind="constant"`` with ``d`` is
    the constant field extension ``O_S tensor F_{q^d}``.  ``kind="explicit"``
    takes a cover curve, the degree ``n`` and, for every place of ``S``, the
    places above it with their residue degrees; only local consistency is
    checked.
    """
    curve = base.curve
    if kind == IDENTITY:
        fb = tuple(Fiber(p, ((p, 1),)) for p in base.S)
        return CoverDescriptor(base, IDENTITY, curve, 1, fb)
    if kind == CONSTANT:
        if d is None or d < 2:
            raise ValueError("a constant extension needs d >= 2")
        cov = curve.base_change(d)
        fb = tuple(Fiber(p, _constant_fiber(curve, cov, d, p)) for p in base.S)
        return CoverDescriptor(base, CONSTANT, cov, d, fb, d)
    if kind != EXPLICIT:
        raise ValueError(f"unknown cover kind {kind!r}")
    if cover_curve is None or degree is None or fibers is None:
        raise ValueError("an explicit cover needs cover_curve, degree and fibers")
    if degree < 1:
        raise ValueError("cover degree must be positive")
    if cover_curve.field.p != curve.field.p or cover_curve.field.k % curve.field.k:
        raise UnsupportedField(f"{cover_curve.field} does not contain {curve.field}")
    dc = cover_curve.field.k // curve.field.k
    if degree % dc:
        raise FiberSumMismatch(f"constant field degree {dc} does not divide the cover degree {degree}")
    out = []
    seen = set()
    for p in base.S:
        above = tuple(fibers.get(p, ()))
        if not above:
            raise FiberSumMismatch(f"no cover places listed above {p}")
        for pl, f in above:
            if pl.curve != cover_curve:
                raise FiberSumMismatch(f"{pl} is not a place of the cover curve")
            if pl in seen:
                raise FiberSumMismatch(f"{pl} listed above two places")
            if f < 1:
                raise FiberSumMismatch("residue degrees must be positive")
            seen.add(pl)
        total = sum(f for _, f in above)
        if total != degree:
            raise FiberSumMismatch(f"residue degrees above {p} sum to {total}, expected {degree}")
        out.append(Fiber(p, above))
    extra = set(fibers) - set(base.S)
    if extra:
        raise FiberSumMismatch(f"fibers given over places outside S: {sorted(map(str, extra))}")
    return CoverDescriptor(base, EXPLICIT, cover_curve, degree, tuple(out), dc)


# --- norm maps ----------------------------------------------------------------------


def norm_N2(cover: CoverDescriptor, m: int) -> GroupHom:
    """Corestriction ``Br(R)[m] -> Br(O_S)[m]``: sum the local invariants in each fiber."""
    src = BrauerTorsion(m, len(cover.cover_places))
    dst = BrauerTorsion(m, len(cover.base.S))
    below = cover.fiber_index()
    rows = []
    for y in _unit_vectors(src.group.ngens):
        x = src.from_group(y)
        image = [0] * dst.n_places
        for v, j in zip(x, below):
            image[j] += v
        rows.append(dst.to_group(image))
    return GroupHom(src.group, dst.group, tuple(rows))


def _unit_vectors(n: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def norm_N1(cover: CoverDescriptor) -> GroupHom:
    """Pushforward ``Pic(R) -> Pic(O_S)``."""
    pic_s = picard(cover.base)
    if cover.kind == IDENTITY:
        return GroupHom.identity(pic_s.group)
    pic_r = picard(cover.cover_domain)
    if cover.kind == EXPLICIT:
        if pic_s.group.is_trivial or pic_r.group.is_trivial:
            return GroupHom.zero(pic_r.group, pic_s.group)
        raise UnsupportedCover("explicit cover: images of Pic(R) generators are not determined by fiber data")
    base, cov, d = cover.base.curve, cover.cover_curve, cover.d
    rows = []
    for i in range(pic_r.group.ngens):
        cls = pic_class_from_coords(cov, pic_r.presentation.lift(i))
        if base.kind == ELLIPTIC:
            image = ec_group_structure(base).coords(trace_point(base, d, cls.zero_part)) + (d * cls.degree,)
        else:
            image = (d * cls.degree,)
        rows.append(pic_s.coords_of(image))
    return GroupHom(pic_r.group, pic_s.group, tuple(rows))


def constant_norm_map(q: int, q_cover: int, degree: int) -> GroupHom:
    """Norm on constant units ``F_{q'}^x -> F_q^x`` as ``Z/(q'-1) -> Z/(q-1)``.

    Bases: a generator ``g'`` of ``F_{q'}^x`` and its field norm, which
    generates ``F_q^x``.  The norm of the cover restricted to constants is
    the field norm raised to ``degree / [F_{q'}:F_q]``.
    """
    dc = round(math.log(q_cover, q))
    if q**dc != q_cover:
        raise UnsupportedField(f"{q_cover} is not a power of {q}")
    if degree % dc:
        raise FiberSumMismatch("constant field degree does not divide the cover degree")
    src, dst = FgGroup.cyclic(q_cover - 1), FgGroup.cyclic(q - 1)
    if src.is_trivial:
        return GroupHom.zero(src, dst)
    return GroupHom(src, dst, ((degree // dc,) if not dst.is_trivial else (),))


@dataclass(frozen=True)
class NormZeroKernels:
    ker_torsion_m: FgGroup
    ker_mod_m: FgGroup | None
    reason: str = ""

    @property
    def available(self) -> bool:
        return self.ker_mod_m is not None

    def ratio(self) -> Fraction | None:
        if self.ker_mod_m is None:
            return None
        return Fraction(self.ker_torsion_m.order, self.ker_mod_m.order)


def constant_norm_kernels(q: int, q_cover: int, degree: int, m: int) -> tuple[FgGroup, FgGroup]:
    """``(ker N[m], ker N/m)`` for the norm on constant units."""
    f_tors, f_quot = induced_maps(constant_norm_map(q, q_cover, degree), m)
    return hom_kernel(f_tors).group, hom_kernel(f_quot).group


def norm_N0(cover: CoverDescriptor, m: int) -> NormZeroKernels:
    """Kernels of ``N^(0)[m]`` and ``N^(0)/m`` on units.

    The mod-``m`` kernel is only determined when the units of ``R`` are
    constants (``|S'| = 1``) or the cover is trivial.
    """
    if cover.kind == IDENTITY:
        return NormZeroKernels(FgGroup(), FgGroup())
    k_tors, k_quot = constant_norm_kernels(cover.base.q, cover.q_cover, cover.degree, m)
    if len(cover.cover_places) == 1:
        return NormZeroKernels(k_tors, k_quot)
    return NormZeroKernels(k_tors, None, "unit-norm-data")


def vector_image(f: GroupHom, x: Sequence[int]) -> tuple[int, ...]:
    return f.codomain.reduce(vecmat(x, f.matrix, f.codomain.ngens))
