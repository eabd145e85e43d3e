import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonorbracket.laurent import (
    LOOP,
    ClassPoly,
    JPoly,
    LaurentU,
    PolyParseError,
    add,
    canonical_pair,
    mul,
    parse,
    serialize,
    substitute_u_inverse,
)

u = LaurentU.monomial


def P(d):
    return LaurentU.from_dict(d)


laurents = st.dictionaries(st.integers(-12, 12), st.integers(-50, 50), max_size=6).map(P)
jpolys = st.builds(JPoly, st.integers(0, 5), laurents)
class_keys = st.sampled_from([(0, 1), (1, 0), (1, 1)])
classpolys = st.builds(
    ClassPoly,
    st.lists(st.tuples(st.lists(class_keys, max_size=3).map(tuple), laurents), max_size=4).map(tuple),
    st.integers(0, 4),
)


class TestArithmetic:
    def test_additive_inverse(self):
        assert add(u(2), -u(2)).is_zero()

    def test_cancellation(self):
        assert add(LOOP, u(-2)) == -u(2)

    def test_d3_partial_sum(self):
        assert add(P({6: 1, 2: 2, -2: 1}), P({2: -1, -2: -1})) == P({6: 1, 2: 1})

    def test_inverse_monomials(self):
        assert mul(u(1), u(-1)) == LaurentU.const(1)

    def test_loop_squared(self):
        assert mul(LOOP, LOOP) == P({4: 1, 0: 2, -4: 1})

    def test_first_state_weight_of_d3(self):
        assert u(2) * LOOP ** 2 == P({6: 1, 2: 2, -2: 1})

    def test_zero_coefficients_pruned(self):
        assert P({3: 0, 1: 2}).terms == ((1, 2),)

    def test_big_coefficients_exact(self):
        big = LaurentU.const(2**70) * LaurentU.const(2**70)
        assert big.terms == ((0, 2**140),)

    def test_negative_power_of_monomial(self):
        assert (2 * u(3)) ** 0 == LaurentU.const(1)
        assert u(3) ** -2 == u(-6)
        with pytest.raises(ValueError):
            LOOP ** -1

    def test_exact_division(self):
        assert (LOOP * P({1: 3, -5: 2})).exact_div(LOOP) == P({1: 3, -5: 2})
        with pytest.raises(ValueError):
            P({0: 1}).exact_div(LOOP)

    def test_evaluation(self):
        assert LOOP(1) == -2

    @given(laurents, laurents, laurents)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(laurents, laurents)
    def test_substitution_is_involutive_homomorphism(self, a, b):
        s = substitute_u_inverse
        assert s(s(a)) == a
        assert s(a + b) == s(a) + s(b)
        assert s(a * b) == s(a) * s(b)


class TestCanonical:
    def test_monomial(self):
        assert substitute_u_inverse(u(6)) == u(-6)

    def test_d4_body(self):
        assert substitute_u_inverse(u(2) + 1 * u(0) - u(-4)) == u(-2) + u(0) - u(4)

    def test_zero_fixed(self):
        assert substitute_u_inverse(LaurentU()) == LaurentU()

    def test_u6v2(self):
        assert canonical_pair(JPoly(2, u(6))) == JPoly(2, u(-6))

    def test_d4_pair(self):
        a = JPoly(2, u(2) + u(0) - u(-4))
        b = JPoly(2, u(-2) + u(0) - u(4))
        # sorted term lists: a = [(-4,-1),(0,1),(2,1)], b = [(-2,1),(0,1),(4,-1)]
        assert canonical_pair(a) == canonical_pair(b) == a

    def test_palindrome(self):
        assert canonical_pair(LOOP) == LOOP

    @given(jpolys)
    def test_idempotent_and_substitution_stable(self, a):
        c = canonical_pair(a)
        assert canonical_pair(c) == c
        assert canonical_pair(substitute_u_inverse(a)) == c
        assert c.v_exp == a.v_exp


class TestJPoly:
    def test_zero_has_no_v(self):
        assert JPoly(3, LaurentU()).v_exp == 0

    def test_negative_v_rejected(self):
        with pytest.raises(ValueError):
            JPoly(-1, u(0))


class TestClassPoly:
    def test_trivial_key_rejected(self):
        with pytest.raises(ValueError):
            ClassPoly(((((0, 0),), u(0)),))

    def test_merges_and_prunes(self):
        cp = ClassPoly(((((1, 0),), u(1)), (((1, 0),), -u(1)), (((0, 1), (1, 0)), u(2)),
                        (((1, 0), (0, 1)), u(2))))
        assert cp.terms == ((((0, 1), (1, 0)), 2 * u(2)),)

    def test_specialize(self):
        cp = ClassPoly(((((1, 0), (1, 0)), u(0)), ((), u(3))))
        assert cp.specialize() == LOOP * LOOP + u(3)


class TestSerialize:
    def test_text_jpoly(self):
        assert serialize(JPoly(2, u(6))) == "v^2*(u^6)"

    def test_parse_d4(self):
        assert parse("v^2*(-u^-4 + 1 + u^2)") == JPoly(2, -u(-4) + u(0) + u(2))

    def test_whitespace_and_star_optional(self):
        assert parse(" v^2 * ( -u^-4+1 +3u^2 )") == JPoly(2, -u(-4) + u(0) + 3 * u(2))

    def test_d2_star_roundtrip(self):
        text = ("u^-18 - u^-14 + u^-10 - u^-6 - u^-2 - u^2 - u^6 + u^10 - u^14 + u^18")
        p = parse(text)
        assert len(p.terms) == 10
        assert serialize(p) == text

    def test_json_shape(self):
        assert serialize(JPoly(2, -u(-4) + u(0)), "json") == \
            '{"v": 2, "u_terms": [[-4, -1], [0, 1]]}'

    def test_json_rejects_unsorted(self):
        with pytest.raises(PolyParseError):
            parse('{"v": 0, "u_terms": [[2, 1], [0, 1]]}', "json")

    @pytest.mark.parametrize("bad", ["v^2*(u^6", "v^*(u)", "u^^2", "v^2*(u^6) x", "3*"])
    def test_malformed_reports_position(self, bad):
        with pytest.raises(PolyParseError) as err:
            parse(bad)
        assert "column" in str(err.value)

    @given(st.one_of(laurents, jpolys, classpolys), st.sampled_from(["text", "json"]))
    def test_roundtrip(self, a, fmt):
        assert parse(serialize(a, fmt), fmt) == a
