from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import line_domain
from hassegen.abgroup import FgGroup
from hassegen.curve import CurveSpec, places_of_degree
from hassegen.errors import NotAdmissible, UnitsUnavailable
from hassegen.finitefield import make_field
from hassegen.fundgroup import (
    RES_MU,
    RES_ONE_MU,
    Factor,
    FundGroup,
    admissibility,
    chi,
    factor_h,
    factor_l,
    h_vector,
    i_group,
    invariants,
    j_group,
    l_value,
    split_fund_group,
)
from hassegen.hassedomain import HasseDomain, make_cover


class TestFactor:
    def test_orders(self, laurent):
        c = make_cover(laurent, "constant", 2)
        assert Factor(RES_MU, c, 3).order == 9
        assert Factor(RES_ONE_MU, c, 3).order == 3
        assert FundGroup().order == 1 and FundGroup().is_trivial

    def test_bad_flavor(self, laurent):
        with pytest.raises(ValueError):
            Factor("Mu", make_cover(laurent), 2)
        with pytest.raises(ValueError):
            Factor(RES_MU, make_cover(laurent), 1)


class TestAdmissibility:
    def test_characteristic(self, laurent):
        ok, why = admissibility(split_fund_group(make_cover(laurent), [3]))
        assert not ok and "characteristic" in why
        with pytest.raises(NotAdmissible):
            i_group(split_fund_group(make_cover(laurent), [6]))

    def test_norm_one_degree(self, F5):
        c = make_cover(line_domain(F5, [(1, 0)]), "constant", 2)
        assert not admissibility(FundGroup((Factor(RES_ONE_MU, c, 2),)))[0]
        assert admissibility(FundGroup((Factor(RES_ONE_MU, c, 3),)))[0]

    def test_bundle_marks_everything(self, laurent):
        b = invariants(split_fund_group(make_cover(laurent), [3]))
        assert set(b.unavailable) == {"i", "j", "l", "h", "chi"}
        assert all(v.startswith("not-admissible") for v in b.unavailable.values())


class TestSplit:
    def test_laurent_mu2(self, laurent):
        F = split_fund_group(make_cover(laurent), [2])
        assert i_group(F) == FgGroup((2,))
        assert j_group(F).is_trivial
        assert l_value(F) == Fraction(1, 2)
        assert h_vector(F) == (2, 4, 2)
        assert chi(F) == 1

    def test_elliptic_affine_mu2(self, e3_affine):
        F = split_fund_group(make_cover(e3_affine), [2])
        assert i_group(F).is_trivial
        assert j_group(F) == FgGroup((2,))
        assert l_value(F) == 1
        assert h_vector(F) == (2, 4, 2)

    def test_product_is_multiplicative(self, laurent):
        c = make_cover(laurent)
        F2, F22 = split_fund_group(c, [2]), split_fund_group(c, [2, 2])
        assert i_group(F22) == FgGroup((2, 2))
        assert l_value(F22) == l_value(F2) ** 2
        assert h_vector(F22) == tuple(x * x for x in h_vector(F2))


class TestNormOne:
    def test_inert_quadratic_2e6(self, F5):
        c = make_cover(line_domain(F5, [(1, 0)]), "constant", 2)
        F = FundGroup((Factor(RES_ONE_MU, c, 3),))
        assert i_group(F).is_trivial
        assert j_group(F).is_trivial
        assert l_value(F) == 1

    def test_units_unavailable(self, F5):
        c = make_cover(line_domain(F5, [(1, 0), (1, 1)]), "constant", 2)
        fac = Factor(RES_ONE_MU, c, 3)
        with pytest.raises(UnitsUnavailable):
            factor_l(fac)
        with pytest.raises(UnitsUnavailable):
            factor_h(fac)
        b = invariants(FundGroup((fac,)))
        assert b.l is None and b.unavailable["l"] == "unit-norm-data"
        assert b.i is not None and b.identity_holds is None

    def test_explicit_cover(self, elliptic_cover_5):
        F = FundGroup((Factor(RES_ONE_MU, elliptic_cover_5, 3),))
        b = invariants(F)
        assert not b.unavailable
        assert b.identity_holds


def _domains():
    out = []
    for p, a, b in [(3, 1, 0), (5, 4, 0), (5, 1, 1), (7, 3, 1)]:
        E = CurveSpec.elliptic(make_field(p), a, b)
        rational = places_of_degree(E, 1)
        out.append(HasseDomain(E, (rational[0],)))
        out.append(HasseDomain(E, tuple(rational[:2])))
        out.append(HasseDomain(E, (places_of_degree(E, 2)[0],)))
    for p in (3, 5, 7):
        L = CurveSpec.projective_line(make_field(p))
        out.append(HasseDomain(L, tuple(places_of_degree(L, 1)[:3])))
    return out


DOMAINS = _domains()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(DOMAINS), st.sampled_from([2, 3, 4, 5, 7]), st.sampled_from([1, 2, 3]), st.booleans())
def test_euler_characteristic_identity(dom, m, d, norm_one):
    """chi = l |i| whenever everything is defined."""
    assume(d < 3 or dom.curve.q ** (d * max(pl.degree for pl in dom.S)) <= 3**6)
    cover = make_cover(dom) if d == 1 else make_cover(dom, "constant", d)
    flavor = RES_ONE_MU if norm_one and d > 1 else RES_MU
    F = FundGroup((Factor(flavor, cover, m),))
    b = invariants(F)
    if b.unavailable:
        return
    assert b.identity_holds, (dom, m, d, flavor, b)
