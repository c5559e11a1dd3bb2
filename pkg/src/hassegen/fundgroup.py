"""Fundamental groups ``F = prod Res(mu_m) x prod Res^(1)(mu_m)`` and their invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .abgroup import FgGroup, direct_product, hom_kernel, induced_maps, torsion_and_quotient
from .errors import HassegenError, NotAdmissible, UnitsUnavailable
from .hassedomain import CoverDescriptor, brauer_torsion, norm_N0, norm_N1, norm_N2, picard

RES_MU = "ResMu"
RES_ONE_MU = "ResOneMu"


@dataclass(frozen=True)
class Factor:
    flavor: str
    cover: CoverDescriptor
    m: int

    def __post_init__(self):
        if self.flavor not in (RES_MU, RES_ONE_MU):
            raise ValueError(f"unknown factor flavor {self.flavor!r}")
        if self.m < 2:
            raise ValueError("m must be >= 2")

    @property
    def n(self) -> int:
        return self.cover.degree

    @property
    def order(self) -> int:
        """``|F_k|``: ``m^n`` for the Weil restriction, ``m^(n-1)`` for the norm-one torus."""
        return self.m ** (self.n if self.flavor == RES_MU else self.n - 1)

    def __str__(self) -> str:
        name = "Res" if self.flavor == RES_MU else "Res1"
        return f"{name}(mu_{self.m}; n={self.n})"


@dataclass(frozen=True)
class FundGroup:
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def order(self) -> int:
        return math.prod(f.order for f in self.factors)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        return " x ".join(map(str, self.factors)) if self.factors else "1"


def admissibility(F: FundGroup) -> tuple[bool, str]:
    for fac in F.factors:
        p = fac.cover.base.curve.field.p
        if fac.m % p == 0:
            return False, f"m={fac.m} is divisible by the characteristic {p}"
        if fac.flavor == RES_ONE_MU and math.gcd(fac.n, fac.m) != 1:
            return False, f"norm-one factor with [R:O_S]={fac.n} not prime to m={fac.m}"
    return True, "ok"


def is_admissible(F: FundGroup) -> bool:
    return admissibility(F)[0]


def _require_admissible(F: FundGroup) -> None:
    ok, why = admissibility(F)
    if not ok:
        raise NotAdmissible(why)


# --- per-factor pieces ------------------------------------------------------------


def factor_i(fac: Factor) -> FgGroup:
    if fac.flavor == RES_MU:
        return brauer_torsion(fac.cover.cover_domain, fac.m).group
    return hom_kernel(norm_N2(fac.cover, fac.m)).group


def factor_j(fac: Factor) -> FgGroup:
    pic_r = picard(fac.cover.cover_domain).group
    if fac.flavor == RES_MU:
        return torsion_and_quotient(pic_r, fac.m)[1]
    _, mod_m = induced_maps(norm_N1(fac.cover), fac.m)
    return hom_kernel(mod_m).group


def _unit_index(fac: Factor) -> int:
    """``[R^x : (R^x)^m]`` for ``R^x = mu_(q'-1) x Z^(|S'|-1)``."""
    return math.gcd(fac.m, fac.cover.q_cover - 1) * fac.m ** (len(fac.cover.cover_places) - 1)


def factor_l(fac: Factor) -> Fraction:
    if fac.flavor == RES_MU:
        return Fraction(1, fac.m ** (len(fac.cover.cover_places) - 1))
    k = norm_N0(fac.cover, fac.m)
    if not k.available:
        raise UnitsUnavailable(f"{fac}: norm on non-constant units of R is not determined by the cover data")
    return k.ratio()


def factor_h(fac: Factor) -> tuple[int, int, int]:
    m = fac.m
    if fac.flavor == RES_MU:
        pic_r = picard(fac.cover.cover_domain).group
        tors, quot = torsion_and_quotient(pic_r, m)
        br = brauer_torsion(fac.cover.cover_domain, m).order
        return math.gcd(m, fac.cover.q_cover - 1), _unit_index(fac) * tors.order, quot.order * br
    k0 = norm_N0(fac.cover, m)
    if not k0.available:
        raise UnitsUnavailable(f"{fac}: ker(N0/m) unavailable")
    f_tors, f_quot = induced_maps(norm_N1(fac.cover), m)
    k1_tors = hom_kernel(f_tors).group.order
    k1_quot = hom_kernel(f_quot).group.order
    k2 = hom_kernel(norm_N2(fac.cover, m)).group.order
    return k0.ker_torsion_m.order, k0.ker_mod_m.order * k1_tors, k1_quot * k2


# --- whole-group invariants -------------------------------------------------------------


def i_group(F: FundGroup) -> FgGroup:
    _require_admissible(F)
    return direct_product([factor_i(f) for f in F.factors])


def j_group(F: FundGroup) -> FgGroup:
    _require_admissible(F)
    return direct_product([factor_j(f) for f in F.factors])


def l_value(F: FundGroup, *, check_admissible: bool = True) -> Fraction:
    if check_admissible:
        _require_admissible(F)
    return math.prod((factor_l(f) for f in F.factors), start=Fraction(1))


def h_vector(F: FundGroup) -> tuple[int, int, int]:
    _require_admissible(F)
    h = (1, 1, 1)
    for fac in F.factors:
        h = tuple(a * b for a, b in zip(h, factor_h(fac)))
    return h


def chi(F: FundGroup) -> Fraction:
    h0, h1, h2 = h_vector(F)
    return Fraction(h0 * h2, h1)


@dataclass
class InvariantBundle:
    """All invariants of ``F``; entries that cannot be computed stay ``None`` with a reason."""

    fund_group: FundGroup
    i: FgGroup | None = None
    j: FgGroup | None = None
    l: Fraction | None = None
    h: tuple[int, int, int] | None = None
    chi: Fraction | None = None
    unavailable: dict[str, str] = field(default_factory=dict)

    @property
    def identity_holds(self) -> bool | None:
        """``chi = l * |i|`` when all three are known."""
        if self.chi is None or self.l is None or self.i is None:
            return None
        return self.chi == self.l * self.i.order


def invariants(F: FundGroup) -> InvariantBundle:
    out = InvariantBundle(F)
    ok, why = admissibility(F)
    if not ok:
        for key in ("i", "j", "l", "h", "chi"):
            out.unavailable[key] = f"not-admissible: {why}"
        return out
    for key, fn in (("i", i_group), ("j", j_group), ("l", l_value), ("h", h_vector), ("chi", chi)):
        try:
            setattr(out, key, fn(F))
        except HassegenError as exc:
            out.unavailable[key] = exc.kind
    return out


def split_fund_group(cover: CoverDescriptor, ms: Sequence[int]) -> FundGroup:
    """``prod mu_m`` over the identity cover."""
    return FundGroup(tuple(Factor(RES_MU, cover, m) for m in ms))
