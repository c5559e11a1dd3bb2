import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_domain
from hassegen.abgroup import FgGroup, GroupHom, hom_kernel
from hassegen.curve import CurveSpec, INF, ec_mul, infinity_place, place_at, places_of_degree, point_count
from hassegen.errors import FiberSumMismatch, InvalidDomain, UnsupportedCover
from hassegen.finitefield import make_field
from hassegen.hassedomain import (
    BrauerTorsion,
    HasseDomain,
    brauer_torsion,
    constant_norm_kernels,
    make_cover,
    norm_N0,
    norm_N1,
    norm_N2,
    picard,
    unit_data,
)


def _spans_equal(a, b):
    """Row spans over Z agree (compared through the kernel/HNF of the stacked rows)."""
    from hassegen.abgroup import hermite_rows

    n = len(a[0]) if a else len(b[0])
    return hermite_rows(a, n) == hermite_rows(b, n)


class TestDomain:
    def test_empty_rejected(self, F3):
        with pytest.raises(InvalidDomain, match="nonempty"):
            HasseDomain(CurveSpec.projective_line(F3), ())

    def test_duplicates_rejected(self, F3):
        L = CurveSpec.projective_line(F3)
        with pytest.raises(InvalidDomain):
            HasseDomain(L, (infinity_place(L), infinity_place(L)))


class TestPicard:
    def test_laurent_trivial(self, laurent):
        assert picard(laurent).group.is_trivial

    def test_elliptic_affine(self, e3_affine):
        assert picard(e3_affine).group == FgGroup((4,))

    def test_elliptic_two_places(self, E3):
        dom = HasseDomain(E3, (infinity_place(E3), place_at(E3, 1, 2)))
        assert str(place_at(E3, 1, 2)) == "deg1#2(2,1)"
        assert picard(dom).group.is_trivial

    def test_class_of(self, e3_affine, E3):
        pic = picard(e3_affine)
        assert pic.class_of(infinity_place(E3)) == (0,)
        gen = place_at(E3, 1, 2)
        assert pic.class_of(gen) in {(1,), (3,)}

    @pytest.mark.parametrize("p,a,b", [(3, 1, 0), (5, 4, 0), (5, 1, 1), (7, 3, 1)])
    def test_quotient_order(self, p, a, b):
        # one degree-2 place: (E x Z) / <(P, 2)> has order 2|E|
        E = CurveSpec.elliptic(make_field(p), a, b)
        for pl in places_of_degree(E, 2)[:3]:
            dom = HasseDomain(E, (pl,))
            order = picard(dom).group.order
            assert order == 2 * point_count(E, 1)


class TestUnits:
    def test_single_place(self, e3_affine, F5):
        u = unit_data(e3_affine)
        assert u.rank == 0 and u.torsion_order == 2
        dom = line_domain(F5, [(1, 0)])
        assert unit_data(dom).torsion_order == 4

    def test_laurent(self, laurent):
        u = unit_data(laurent)
        assert u.rank == 1
        assert _spans_equal(list(u.lattice_basis), [(1, -1)])

    def test_elliptic_two_places(self, E3):
        dom = HasseDomain(E3, (infinity_place(E3), place_at(E3, 1, 2)))
        u = unit_data(dom)
        assert u.rank == 1
        assert _spans_equal(list(u.lattice_basis), [(-4, 4)])

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from([(3, 1, 0), (5, 4, 0), (7, 3, 1), (5, 1, 1)]), st.integers(1, 4), st.data())
    def test_dirichlet_rank(self, curve, size, data):
        p, a, b = curve
        E = CurveSpec.elliptic(make_field(p), a, b)
        pool = list(places_of_degree(E, 1)) + list(places_of_degree(E, 2))
        S = data.draw(st.lists(st.sampled_from(pool), min_size=size, max_size=size, unique=True))
        u = unit_data(HasseDomain(E, tuple(S)))
        assert u.rank == size - 1
        for vec in u.lattice_basis:
            assert sum(c * pl.degree for c, pl in zip(vec, S)) == 0


class TestBrauer:
    def test_spec_examples(self, laurent, e3_affine, F5):
        assert brauer_torsion(e3_affine, 7).group.is_trivial
        assert brauer_torsion(laurent, 2).group == FgGroup((2,))
        dom3 = line_domain(F5, [(1, 0), (1, 1), (1, 2)])
        assert brauer_torsion(dom3, 3).group == FgGroup((3, 3))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_model_roundtrip(self, n):
        for m in range(1, 7):
            bt = BrauerTorsion(m, n)
            model = list(bt.coordinate_model())
            assert len(model) == bt.order == m ** (n - 1)
            for x in model:
                assert bt.from_group(bt.to_group(x)) == x

    def test_rejects_nonzero_sum(self):
        with pytest.raises(ValueError):
            BrauerTorsion(3, 2).to_group((1, 1))


class TestCovers:
    def test_constant_over_rational_inf(self, e3_affine):
        c = make_cover(e3_affine, "constant", 2)
        (fb,) = c.fibers
        assert len(fb.above) == 1 and fb.above[0][1] == 2
        assert c.q_cover == 9 and c.degree == 2

    def test_identity(self, laurent):
        c = make_cover(laurent)
        assert c.degree == 1
        assert all(fb.above == ((fb.place, 1),) for fb in c.fibers)

    def test_explicit_accepted(self, elliptic_cover_5):
        assert elliptic_cover_5.degree == 2
        assert len(elliptic_cover_5.cover_places) == 1

    def test_explicit_fiber_sum(self, line5_inf, F5):
        E = CurveSpec.elliptic(F5, 0, 2)
        with pytest.raises(FiberSumMismatch):
            make_cover(line5_inf, "explicit", cover_curve=E, degree=3, fibers={line5_inf.S[0]: [(infinity_place(E), 2)]})

    @pytest.mark.parametrize("p", [3, 5])
    def test_splitting_counts(self, p):
        """Places above a degree-e place of S: gcd(e, d) of them, residue degree d/gcd."""
        L = CurveSpec.projective_line(make_field(p))
        for e in (1, 2):
            for d in (2, 3) if p == 3 else (2,):
                S = tuple(places_of_degree(L, e)[:2])
                c = make_cover(HasseDomain(L, S), "constant", d)
                g = __import__("math").gcd(e, d)
                cover_points = set()
                for fb in c.fibers:
                    assert len(fb.above) == g
                    assert sum(f for _, f in fb.above) == d
                    for pl, f in fb.above:
                        assert f == d // g and pl.degree == e // g
                        cover_points.update(pl.points())
                assert len(cover_points) == sum(pl.degree for fb in c.fibers for pl, _ in fb.above)

    def test_elliptic_degree_two_split(self, E3):
        pl = places_of_degree(E3, 2)[0]
        c = make_cover(HasseDomain(E3, (pl,)), "constant", 2)
        (fb,) = c.fibers
        assert len(fb.above) == 2
        assert {p.rep for p, _ in fb.above} == set(pl.points())


class TestNorms:
    def test_n2_imaginary_trivial(self, e3_affine):
        f = norm_N2(make_cover(e3_affine, "constant", 2), 3)
        assert f.domain.is_trivial and hom_kernel(f).group.is_trivial

    def test_n2_f7_two_rational(self, F7):
        dom = line_domain(F7, [(1, 0), (1, 1)])
        assert hom_kernel(norm_N2(make_cover(dom, "constant", 2), 3)).group.is_trivial

    def test_n2_f5_split_place(self, F5):
        dom = line_domain(F5, [(2, 0), (1, 0)])
        f = norm_N2(make_cover(dom, "constant", 2), 2)
        assert hom_kernel(f).group == FgGroup((2,))
        bt_src = BrauerTorsion(2, 3)
        count = sum(1 for x in bt_src.coordinate_model() if (x[0] + x[1]) % 2 == 0 and x[2] % 2 == 0)
        assert count == 2

    def test_n2_lands_in_zero_sum(self, F5):
        dom = line_domain(F5, [(2, 0), (1, 0), (1, 1)])
        c = make_cover(dom, "constant", 2)
        f = norm_N2(c, 4)
        dst = BrauerTorsion(4, len(dom.S))
        for x in itertools.islice(f.domain.elements(), 200):
            y = dst.from_group(f(x))
            assert sum(y) % 4 == 0

    def test_n1_identity(self, e3_affine):
        f = norm_N1(make_cover(e3_affine))
        assert f == GroupHom.identity(FgGroup((4,)))

    def test_n1_trace_on_rational_points(self, e3_affine, E3):
        c = make_cover(e3_affine, "constant", 2)
        f = norm_N1(c)
        pic_r = picard(c.cover_domain)
        # classes of rational points of E lifted to E(F_9): trace is 2P
        from hassegen.curve import PicClass, pic_coords, rational_points
        from hassegen.finitefield import standard_embedding

        emb = standard_embedding(E3.field, c.cover_curve.field)
        for P in rational_points(E3):
            lifted = INF if P is INF else tuple(emb(x) for x in P)
            coords = pic_r.coords_of(pic_coords(c.cover_curve, PicClass(0, lifted)))
            image = f(coords)
            expected = picard(e3_affine).coords_of(pic_coords(E3, PicClass(0, ec_mul(E3, 2, P))))
            assert image == expected

    def test_n1_explicit_zero(self, elliptic_cover_5):
        f = norm_N1(elliptic_cover_5)
        assert f.codomain.is_trivial and f.domain == FgGroup((6,))

    def test_n1_explicit_unsupported(self, F3, E3):
        dom = HasseDomain(E3, (infinity_place(E3),))
        E2 = CurveSpec.elliptic(F3, 2, 1)
        c = make_cover(dom, "explicit", cover_curve=E2, degree=2, fibers={dom.S[0]: [(infinity_place(E2), 2)]})
        if picard(c.cover_domain).group.is_trivial:
            pytest.skip("cover Picard group trivial")
        with pytest.raises(UnsupportedCover):
            norm_N1(c)

    def test_n0_identity(self, laurent):
        k = norm_N0(make_cover(laurent), 2)
        assert k.ker_torsion_m.is_trivial and k.ker_mod_m.is_trivial

    def test_n0_q4_q16(self):
        tors, quot = constant_norm_kernels(4, 16, 2, 3)
        assert tors.is_trivial and quot.is_trivial

    def test_n0_q3_q9(self, F3):
        tors, quot = constant_norm_kernels(3, 9, 2, 2)
        assert tors == FgGroup((2,)) and quot.is_trivial
        L = CurveSpec.projective_line(F3)
        k = norm_N0(make_cover(HasseDomain(L, (infinity_place(L),)), "constant", 2), 2)
        assert k.available and k.ratio() == 2

    def test_n0_unavailable(self, F5):
        dom = line_domain(F5, [(1, 0), (1, 1)])
        k = norm_N0(make_cover(dom, "constant", 2), 3)
        assert not k.available and k.reason == "unit-norm-data"
