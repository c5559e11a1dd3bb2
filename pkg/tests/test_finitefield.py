import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hassegen.errors import FFZeroDivision, FieldMismatch, UnsupportedField
from hassegen.finitefield import (
    arith,
    field_bound,
    find_embedding,
    is_irreducible,
    is_square,
    make_field,
    multiplicative_order,
    norm_to_base,
    standard_embedding,
    subfield_elements,
)

SMALL_FIELDS = [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)]


class TestMakeField:
    def test_prime_field_modulus(self):
        assert make_field(3, 1).modulus == (0, 1)

    def test_f9_modulus(self):
        assert make_field(3, 2).modulus == (1, 0, 1)

    def test_char_two_rejected(self):
        with pytest.raises(UnsupportedField, match="characteristic"):
            make_field(2, 1)

    def test_non_prime_and_bound(self):
        with pytest.raises(UnsupportedField):
            make_field(9, 1)
        with pytest.raises(UnsupportedField):
            make_field(3, 13)

    def test_env_lowers_bound(self, monkeypatch):
        monkeypatch.setenv("HASSEGEN_FIELD_BOUND", "100")
        assert field_bound() == 100
        with pytest.raises(UnsupportedField):
            make_field(5, 3)
        monkeypatch.setenv("HASSEGEN_FIELD_BOUND", str(1 << 30))
        assert field_bound() == 1 << 20

    def test_modulus_is_lex_smallest(self):
        for p, k in [(3, 2), (5, 2), (3, 3)]:
            f = make_field(p, k)
            for low in itertools.product(range(p), repeat=k):
                cand = tuple(low) + (1,)
                if cand == f.modulus:
                    break
                assert not is_irreducible(list(cand), p)


class TestArith:
    def test_spec_examples(self):
        F5, F9 = make_field(5), make_field(3, 2)
        assert arith(F5(2), F5(3), "mul") == F5(1)
        u = F9.gen()
        assert arith(u, u, "mul") == F9(2)
        assert F5(3).inverse() == F5(2)
        assert arith(F5(1), F5(3), "div") == F5(2)
        assert arith(F5(2), 3, "pow") == F5(3)

    def test_division_by_zero(self):
        F5 = make_field(5)
        with pytest.raises(FFZeroDivision):
            F5(1) / F5(0)
        with pytest.raises(ZeroDivisionError):
            F5(0).inverse()

    def test_mismatch(self):
        with pytest.raises(FieldMismatch):
            make_field(5)(1) + make_field(7)(1)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(SMALL_FIELDS), st.data())
    def test_field_axioms(self, pk, data):
        F = make_field(*pk)
        draw = lambda: F([data.draw(st.integers(0, F.p - 1)) for _ in range(F.k)])  # noqa: E731
        a, b, c = draw(), draw(), draw()
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert a - a == F.zero()
        if a:
            assert a * a.inverse() == F.one()
            assert a ** (F.q - 1) == F.one()


class TestFrobenius:
    @pytest.mark.parametrize("pk", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2)])
    def test_additive_multiplicative_and_period(self, pk):
        F = make_field(*pk)
        els = list(F.elements())
        for a, b in itertools.product(els[:: max(1, len(els) // 9)], els[:: max(1, len(els) // 7)]):
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        for a in els:
            assert a.frobenius(F.k) == a


class TestNorm:
    def test_u_in_f9(self):
        F3, F9 = make_field(3), make_field(3, 2)
        assert norm_to_base(F9.gen(), F3) == F3(1)

    def test_identity_case(self):
        F5 = make_field(5)
        for x in F5.elements():
            assert norm_to_base(x, F5) == x

    def test_generator_f25(self):
        F5, F25 = make_field(5), make_field(5, 2)
        g = F25.primitive_element()
        n = norm_to_base(g, F5)
        assert n == standard_embedding(F5, F25).preimage(g**6)
        assert multiplicative_order(n) == 4

    @pytest.mark.parametrize("q,d", [((3, 1), 2), ((3, 1), 3), ((3, 1), 4), ((3, 2), 2)])
    def test_surjective_and_multiplicative(self, q, d):
        base = make_field(*q)
        big = make_field(base.p, base.k * d)
        images = set()
        els = [x for x in big.elements() if x]
        for x in els:
            images.add(norm_to_base(x, base))
        assert images == {x for x in base.elements() if x}
        for x, y in zip(els[::5], els[3::7]):
            assert norm_to_base(x * y, base) == norm_to_base(x, base) * norm_to_base(y, base)

    def test_not_a_subfield(self):
        with pytest.raises(FieldMismatch):
            norm_to_base(make_field(3, 2).gen(), make_field(3, 3))


class TestSquares:
    def test_spec_examples(self):
        F5 = make_field(5)
        assert is_square(F5(4)) == (True, F5(2))
        assert is_square(F5(2)) == (False, None)
        assert is_square(F5(0)) == (True, F5(0))

    @pytest.mark.parametrize("pk", SMALL_FIELDS)
    def test_count_and_roots(self, pk):
        F = make_field(*pk)
        squares = 0
        for x in F.elements():
            ok, r = is_square(x)
            if ok:
                assert r * r == x
                assert not (-r) < r  # the lexicographically smaller root
                squares += x.is_zero() is False
        assert squares == (F.q - 1) // 2


class TestEmbeddings:
    def test_subfield_sizes(self):
        F81 = make_field(3, 4)
        assert len(subfield_elements(F81, 2)) == 9
        assert len(subfield_elements(F81, 1)) == 3

    def test_embedding_is_homomorphism(self):
        F9, F81 = make_field(3, 2), make_field(3, 4)
        e = standard_embedding(F9, F81)
        for a, b in itertools.product(list(F9.elements()), repeat=2):
            assert e(a * b) == e(a) * e(b)
            assert e(a + b) == e(a) + e(b)
        assert all(e.preimage(e(a)) == a for a in F9.elements())

    def test_constraint(self):
        F9, F81 = make_field(3, 2), make_field(3, 4)
        e = standard_embedding(F9, F81)
        other = e(F9.gen()).frobenius()
        f = find_embedding(F9, F81, [(F9.gen(), other)])
        assert f(F9.gen()) == other != e(F9.gen())
