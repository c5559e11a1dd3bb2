"""Semisimple group catalog and the verdicts derived from its fundamental group."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .abgroup import FgGroup
from .errors import (
    HassegenError,
    InconsistentTwist,
    NoSplittingPoint,
    NotAdmissible,
    NotApplicable,
    UnsupportedGroup,
)
from .fundgroup import (
    RES_MU,
    RES_ONE_MU,
    Factor,
    FundGroup,
    admissibility,
    h_vector,
    i_group,
    j_group,
    l_value,
)
from .hassedomain import CoverDescriptor, HasseDomain, make_cover, picard

ADJOINT = "adjoint"
SIMPLY_CONNECTED = "simply_connected"

INNER_TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "PGL", "SO")
OUTER_TYPES = ("2D", "3D4", "6D4", "2E6", "RES_PGL")
DYNKIN_LABELS = INNER_TYPES + OUTER_TYPES

# outer type -> (flavor, m, allowed cover degrees); RES_PGL takes m from the rank
_OUTER = {
    "2D": (RES_MU, 2, (2,)),
    "3D4": (RES_ONE_MU, 2, (3,)),
    "6D4": (RES_ONE_MU, 2, (3, 6)),
    "2E6": (RES_ONE_MU, 3, (2,)),
}

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "PGL": 2, "SO": 3, "RES_PGL": 2, "2D": 4}
_FIXED_RANK = {"E6": 6, "2E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2, "3D4": 4, "6D4": 4}

HOLDS = "holds"
FAILS = "fails"
HOLDS_IF_NONCOMPACT = "holds_if_noncompact"
SUFFICIENT_ONLY = "sufficient_only"


@dataclass(frozen=True)
class GroupSpec:
    """A semisimple ``O_S``-group described by its type and twisting data.

    ``rank`` is the Dynkin rank, except for ``PGL`` and ``RES_PGL`` where it
    is the matrix size ``n`` and for ``SO`` where it is the dimension of the
    quadratic space.  ``gs_noncompact`` defaults to true away from type A
    and must be given for type A.  ``splitting_place_ok`` defaults to
    "every place above the single place of ``S`` has residue degree 1".
    """

    domain: HasseDomain
    dynkin: str
    rank: int | None = None
    isogeny: str = ADJOINT
    twist_cover: CoverDescriptor | None = None
    gs_noncompact: bool | None = None
    splitting_place_ok: bool | None = None

    def __post_init__(self):
        if self.dynkin not in DYNKIN_LABELS:
            raise UnsupportedGroup(f"unknown Dynkin label {self.dynkin!r}")
        if self.isogeny not in (ADJOINT, SIMPLY_CONNECTED):
            raise UnsupportedGroup(f"isogeny {self.isogeny!r} is neither adjoint nor simply connected")
        rank = self.rank if self.rank is not None else _FIXED_RANK.get(self.dynkin)
        if rank is None:
            raise UnsupportedGroup(f"type {self.dynkin} needs a rank")
        if self.dynkin in _FIXED_RANK and rank != _FIXED_RANK[self.dynkin]:
            raise UnsupportedGroup(f"type {self.dynkin} has rank {_FIXED_RANK[self.dynkin]}, got {rank}")
        if rank < _MIN_RANK.get(self.dynkin, 1):
            raise UnsupportedGroup(f"type {self.dynkin} needs rank >= {_MIN_RANK[self.dynkin]}")
        if self.dynkin == "2D" and rank % 2:
            raise UnsupportedGroup("outer type D is supported for even rank only")
        object.__setattr__(self, "rank", rank)
        if self.dynkin in OUTER_TYPES:
            if self.twist_cover is None:
                raise InconsistentTwist(f"outer type {self.dynkin} needs a twisting cover")
            if self.twist_cover.base != self.domain:
                raise InconsistentTwist("twisting cover lives over a different Hasse domain")
            if self.dynkin in _OUTER and self.twist_cover.degree not in _OUTER[self.dynkin][2]:
                allowed = " or ".join(map(str, _OUTER[self.dynkin][2]))
                raise InconsistentTwist(f"type {self.dynkin} needs a cover of degree {allowed}, got {self.twist_cover.degree}")
        elif self.twist_cover is not None and self.twist_cover.degree != 1:
            raise InconsistentTwist(f"inner type {self.dynkin} takes no twisting cover")
        if self.gs_noncompact is None:
            if self.is_type_a:
                raise UnsupportedGroup("gs_noncompact must be given explicitly for type A")
            object.__setattr__(self, "gs_noncompact", True)
        if self.splitting_place_ok is None:
            object.__setattr__(self, "splitting_place_ok", self._default_splitting())

    @property
    def is_type_a(self) -> bool:
        if self.dynkin in ("A", "PGL", "RES_PGL"):
            return True
        return self.dynkin == "SO" and self.rank in (3, 4, 6)

    @property
    def label(self) -> str:
        if self.dynkin in ("PGL", "RES_PGL", "SO"):
            return f"{self.dynkin}_{self.rank}"
        if self.dynkin in _FIXED_RANK:
            return self.dynkin
        return f"{self.dynkin}{self.rank}"

    def _default_splitting(self) -> bool:
        if len(self.domain.S) != 1:
            return False
        if self.twist_cover is None:
            return True
        return all(f == 1 for fb in self.twist_cover.fibers for _, f in fb.above)

    def identity_cover(self) -> CoverDescriptor:
        return make_cover(self.domain)


def _split_factors(spec: GroupSpec) -> list[int]:
    d, r = spec.dynkin, spec.rank
    if d == "A":
        return [r + 1]
    if d == "PGL":
        return [r]
    if d in ("B", "C", "E7", "SO"):
        return [2]
    if d == "D":
        return [4] if r % 2 else [2, 2]
    if d == "E6":
        return [3]
    return []  # E8, F4, G2


def fundamental_group_of(spec: GroupSpec) -> FundGroup:
    if spec.isogeny == SIMPLY_CONNECTED:
        return FundGroup()
    if spec.dynkin in INNER_TYPES:
        cover = spec.identity_cover()
        return FundGroup(tuple(Factor(RES_MU, cover, m) for m in _split_factors(spec)))
    cover = spec.twist_cover
    if spec.dynkin == "RES_PGL":
        return FundGroup((Factor(RES_ONE_MU, cover, spec.rank),))
    flavor, m, _ = _OUTER[spec.dynkin]
    return FundGroup((Factor(flavor, cover, m),))


def _require_admissible(F: FundGroup) -> None:
    ok, why = admissibility(F)
    if not ok:
        raise NotAdmissible(why)


# --- verdicts ---------------------------------------------------------------------


def genera_count(spec: GroupSpec) -> int:
    return i_group(fundamental_group_of(spec)).order


@dataclass(frozen=True)
class ClassNumber:
    value: int
    exact: bool

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def class_number(spec: GroupSpec) -> ClassNumber:
    """``|j(F)|``; exact when ``G_S`` is non-compact, otherwise a lower bound."""
    j = j_group(fundamental_group_of(spec)).order
    return ClassNumber(j, bool(spec.gs_noncompact))


def _h1_applies(spec: GroupSpec, F: FundGroup) -> tuple[bool, str]:
    if not spec.is_type_a:
        return True, ""
    if len(spec.domain.S) == 1 and spec.gs_noncompact and all(len(f.cover.cover_places) == 1 for f in F.factors):
        return True, ""
    return False, "type A outside the imaginary single-place case"


def h1_size(spec: GroupSpec) -> int:
    F = fundamental_group_of(spec)
    ok, why = _h1_applies(spec, F)
    if not ok:
        raise NotApplicable(why)
    h2 = h_vector(F)[2]
    if spec.gs_noncompact:
        g, c = genera_count(spec), class_number(spec).value
        if g * c != h2:  # pragma: no cover - would indicate an engine bug
            raise AssertionError(f"genera {g} x class number {c} != h2 {h2}")
    return h2


@dataclass(frozen=True)
class HasseVerdict:
    verdict: str
    route: str


def hasse_verdict(spec: GroupSpec) -> HasseVerdict:
    F = fundamental_group_of(spec)
    _require_admissible(F)
    if all(f.flavor == RES_MU for f in F.factors):
        gcd_ok = all(math.gcd(picard(f.cover.cover_domain).group.order, f.m) == 1 for f in F.factors)
        if spec.gs_noncompact:
            return HasseVerdict(HOLDS if gcd_ok else FAILS, "pic-gcd")
        return HasseVerdict(HOLDS_IF_NONCOMPACT if gcd_ok else FAILS, "pic-gcd-necessary")
    try:
        j = j_group(F).order
    except HassegenError:
        gcd_ok = all(math.gcd(picard(f.cover.cover_domain).group.order, f.m) == 1 for f in F.factors)
        return HasseVerdict(SUFFICIENT_ONLY if gcd_ok else HOLDS_IF_NONCOMPACT, "pic-gcd-sufficient")
    if j > 1:
        return HasseVerdict(FAILS, "class-number")
    return HasseVerdict(HOLDS if spec.gs_noncompact else HOLDS_IF_NONCOMPACT, "class-number")


@dataclass(frozen=True)
class TamagawaResult:
    tau: Fraction
    route: str
    crosscheck: Fraction
    crosscheck_ok: bool


def tamagawa(spec: GroupSpec) -> TamagawaResult:
    """``tau = l(F) |F|`` at a splitting point, cross-checked by ``h2 |F| h0 / (|i| h1)``."""
    if spec.is_type_a:
        raise NotApplicable("Tamagawa number is computed for non-type-A groups only")
    if len(spec.domain.S) != 1:
        raise NotApplicable("Tamagawa number needs |S| = 1")
    if not spec.splitting_place_ok:
        raise NoSplittingPoint("the place of S is not a splitting point of G")
    F = fundamental_group_of(spec)
    _require_admissible(F)
    t = F.order
    tau = l_value(F) * t
    h0, h1, h2 = h_vector(F)
    cross = Fraction(h2 * h0, i_group(F).order * h1) * t
    return TamagawaResult(tau, "l-times-t", cross, cross == tau)


# --- one-shot evaluation -------------------------------------------------------------


@dataclass
class Verdict:
    spec: GroupSpec
    fund_group: FundGroup
    genera_count: int | None = None
    class_number: ClassNumber | None = None
    h1_size: int | None = None
    hasse: HasseVerdict | None = None
    tamagawa: TamagawaResult | None = None
    unavailable: dict[str, str] = field(default_factory=dict)


def evaluate(spec: GroupSpec) -> Verdict:
    out = Verdict(spec, fundamental_group_of(spec))
    steps = (
        ("genera_count", genera_count),
        ("class_number", class_number),
        ("h1_size", h1_size),
        ("hasse", hasse_verdict),
        ("tamagawa", tamagawa),
    )
    for key, fn in steps:
        try:
            setattr(out, key, fn(spec))
        except HassegenError as exc:
            out.unavailable[key] = exc.kind
    return out


def i_and_j(spec: GroupSpec) -> tuple[FgGroup, FgGroup]:
    F = fundamental_group_of(spec)
    return i_group(F), j_group(F)
