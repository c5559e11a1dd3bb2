import pytest

from hassegen.abgroup import FgGroup
from hassegen.curve import (
    INF,
    CurveSpec,
    PicClass,
    descend_point,
    ec_add,
    ec_group_structure,
    ec_mul,
    ec_neg,
    expected_place_count,
    frobenius_orbit,
    l_polynomial,
    on_curve,
    pic_class_from_coords,
    pic_coords,
    place_class,
    places_of_degree,
    point_count,
    predicted_count,
    rational_points,
)
from hassegen.errors import InvalidCurve, OffCurvePoint, UnsupportedField
from hassegen.finitefield import make_field

CURVES = [
    (3, 1, 0),
    (3, 2, 1),
    (5, 4, 0),
    (5, 0, 2),
    (5, 1, 1),
    (7, 3, 1),
    (7, 0, 1),
]


def ell(p, a, b):
    return CurveSpec.elliptic(make_field(p), a, b)


class TestCurveSpec:
    def test_singular_rejected(self):
        with pytest.raises(InvalidCurve):
            ell(5, 0, 0)
        with pytest.raises(InvalidCurve):
            ell(3, 0, 1)  # a = 0 is singular in characteristic 3

    def test_genus(self, F3, E3):
        assert CurveSpec.projective_line(F3).genus == 0
        assert E3.genus == 1


class TestPointCount:
    def test_spec_examples(self, F3, E3):
        assert point_count(CurveSpec.projective_line(F3), 1) == 4
        assert point_count(E3, 1) == 4
        assert point_count(ell(5, -1, 0), 1) == 8

    def test_rational_points_order(self, E3, F3):
        pts = rational_points(E3)
        assert pts[0] is INF
        assert [tuple(int(c) for c in pt) for pt in pts[1:]] == [(0, 0), (2, 1), (2, 2)]

    def test_bound(self, monkeypatch, E3):
        monkeypatch.setenv("HASSEGEN_FIELD_BOUND", "50")
        with pytest.raises(UnsupportedField):
            point_count(E3, 4)


class TestLPolynomial:
    def test_spec_examples(self, F3, E3):
        assert l_polynomial(E3) == [1, 0, 3]
        assert l_polynomial(ell(5, -1, 0)) == [1, 2, 5]
        assert l_polynomial(CurveSpec.projective_line(F3)) == [1]

    @pytest.mark.parametrize("p,a,b", CURVES)
    def test_zeta_consistency(self, p, a, b):
        E = ell(p, a, b)
        lp = l_polynomial(E)
        assert sum(lp) == point_count(E, 1)
        for d in (1, 2, 3):
            assert predicted_count(lp, E.q, d) == point_count(E, d)
        assert (lp[1]) ** 2 <= 4 * E.q


class TestPlaces:
    def test_spec_examples(self, F3, E3):
        L = CurveSpec.projective_line(F3)
        assert len(places_of_degree(L, 1)) == 4
        assert len(places_of_degree(L, 2)) == 3
        assert len(places_of_degree(E3, 2)) == 6

    @pytest.mark.parametrize("p,a,b", CURVES[:5])
    def test_degree_sum(self, p, a, b):
        E = ell(p, a, b)
        counts = {d: point_count(E, d) for d in (1, 2, 3)}
        for d in (1, 2, 3):
            assert sum(e * len(places_of_degree(E, e)) for e in (1, 2, 3) if d % e == 0) == counts[d]
            assert len(places_of_degree(E, d)) == expected_place_count(counts, d)

    def test_ordering(self, E3):
        for d in (1, 2):
            places = places_of_degree(E3, d)
            assert [pl.index for pl in places] == list(range(len(places)))
            for pl in places:
                assert len(pl.points()) == d
                assert pl.residue_size == 3**d
        assert places_of_degree(E3, 1)[0].rep is INF


class TestGroupLaw:
    def test_spec_examples(self, E3, F3):
        P = (F3(2), F3(1))
        assert ec_add(E3, P, INF) == P
        assert ec_add(E3, P, P) == (F3(0), F3(0))
        assert ec_add(E3, P, ec_neg(E3, P)) is INF

    def test_off_curve(self, E3, F3):
        with pytest.raises(OffCurvePoint):
            ec_add(E3, (F3(1), F3(1)), INF)

    @pytest.mark.parametrize("p,a,b", CURVES)
    def test_group_axioms(self, p, a, b):
        E = ell(p, a, b)
        pts = rational_points(E)
        sample = pts[:: max(1, len(pts) // 6)]
        for P in sample:
            for Q in sample:
                R = ec_add(E, P, Q)
                assert on_curve(E, R)
                assert R == ec_add(E, Q, P)
                for T in sample[:3]:
                    assert ec_add(E, R, T) == ec_add(E, P, ec_add(E, Q, T))
            assert ec_mul(E, len(pts), P) is INF


class TestStructure:
    def test_spec_examples(self, E3, F3):
        st = ec_group_structure(E3)
        assert st.group == FgGroup((4,))
        assert st.generators == ((F3(2), F3(1)),)
        assert ec_group_structure(ell(5, -1, 0)).group == FgGroup((2, 4))
        assert ec_group_structure(ell(5, 0, 2)).group == FgGroup((6,))

    @pytest.mark.parametrize("p,a,b", CURVES)
    def test_table_is_bijective(self, p, a, b):
        E = ell(p, a, b)
        st = ec_group_structure(E)
        assert st.group.order == point_count(E, 1)
        facs = st.group.invariant_factors
        if len(facs) == 2:
            assert (E.q - 1) % facs[0] == 0
        seen = set()
        for P in rational_points(E):
            c = st.coords(P)
            assert st.point(c) == P
            seen.add(c)
        assert len(seen) == st.group.order


class TestPlaceClass:
    def test_infinity_and_rational(self, E3, F3):
        inf, P = places_of_degree(E3, 1)[0], places_of_degree(E3, 1)[2]
        assert place_class(E3, inf) == PicClass(1, INF)
        assert place_class(E3, P) == PicClass(1, P.rep)

    def test_degree_two_classes_rational(self, E3):
        rational = set(rational_points(E3))
        for pl in places_of_degree(E3, 2):
            cls = place_class(E3, pl)
            assert cls.degree == 2 and cls.zero_part in rational

    def test_independent_of_representative(self, E3):
        ext = E3.base_change(2)
        for pl in places_of_degree(E3, 2):
            orbit = frobenius_orbit(pl.rep, E3.q)
            alt = ec_add(ext, orbit[1], orbit[0])
            assert place_class(E3, pl).zero_part == descend_point(E3, 2, alt)

    def test_pic_coords_roundtrip(self, E3):
        for pl in places_of_degree(E3, 1) + places_of_degree(E3, 2):
            cls = place_class(E3, pl)
            assert pic_class_from_coords(E3, pic_coords(E3, cls)) == cls

