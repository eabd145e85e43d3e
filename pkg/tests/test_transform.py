import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonorbracket.cabling import crossing_sign, crossing_type, is_pseudo_classical, propagate_labels, writhe_numbers
from nonorbracket.laurent import LaurentU, canonical_pair
from nonorbracket.statesum import classical_bracket, j_polynomial
from nonorbracket.surface import Diagram, validate
from nonorbracket.transform import (
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    MoveError,
    applicable_moves,
    apply_move,
    chart_faces,
    crossing_change,
    double_cover,
    gaps,
    is_realizable,
    random_move_sequence,
    reverse_orientation,
)

from conftest import klein_knots, torus_knots

any_knot = st.one_of(klein_knots(), torus_knots())


def canonical_j(d):
    return canonical_pair(j_polynomial(d))


def all_moves(d, kind, cap=12):
    return applicable_moves(d, cap)[kind]


class TestEdits:
    @given(any_knot, st.data())
    def test_crossing_change_involution(self, d, data):
        if not d.n_crossings:
            return
        x = data.draw(st.integers(1, d.n_crossings))
        assert crossing_change(crossing_change(d, x), x) == d

    def test_crossing_change_bad_id(self, corpus):
        with pytest.raises(KeyError):
            crossing_change(corpus["d3"], 3)

    @given(any_knot)
    def test_reverse_involution(self, d):
        assert reverse_orientation(reverse_orientation(d)) == d

    def test_d2_reduces_to_d1(self, corpus):
        e = apply_move(crossing_change(corpus["d2"], 6), R2Remove((5, 6)))
        assert e.components == corpus["d1"].components
        assert e.handedness == corpus["d1"].handedness


class TestFaces:
    def test_corpus_realizable(self, corpus):
        for name in ("d1", "d2", "d3", "d4"):
            f = chart_faces(corpus[name])
            assert f.genus_ok
            # the outer face lies beyond the rectangle's boundary
            assert f.outer not in f.left.values() and f.outer not in f.right.values()
            assert is_realizable(corpus[name])

    def test_unrealizable(self):
        assert not is_realizable(Diagram.from_code("torus", ["r1 l1 1 2 t1 b1 -1 -2"], [1, 1]))

    def test_gaps_skip_wall_jumps(self):
        d = Diagram.from_code("klein", ["1 -1 r1 l1"], [1])
        # 1->-1, -1->r1, l1->1 ; r1->l1 is a jump through the wall
        assert len(gaps(d)) == 3


class TestR1:
    @given(any_knot, st.data())
    def test_add_then_remove(self, d, data):
        mv = data.draw(st.sampled_from(all_moves(d, "R1Add", cap=100)))
        e = apply_move(d, mv)
        assert e.n_crossings == d.n_crossings + 1
        assert apply_move(e, R1Remove(e.n_crossings)) == d

    @given(klein_knots(), st.data())
    def test_kink_is_type_one(self, d, data):
        mv = data.draw(st.sampled_from(all_moves(d, "R1Add", cap=100)))
        e = apply_move(d, mv)
        x = e.n_crossings
        assert crossing_type(e, x) == 1
        assert crossing_sign(e, propagate_labels(e), x) in (1, -1)
        w, w1, w2 = writhe_numbers(e, propagate_labels(e))
        _, v1, v2 = writhe_numbers(d, propagate_labels(d))
        assert w2 == v2 and abs(w1 - v1) == 1

    def test_remove_needs_kink(self, corpus):
        with pytest.raises(MoveError):
            apply_move(corpus["d3"], R1Remove(1))


class TestR2:
    @given(klein_knots(), st.data())
    def test_new_pair(self, d, data):
        moves = all_moves(d, "R2Add")
        if not moves:
            return
        e = apply_move(d, data.draw(st.sampled_from(moves)))
        m = e.n_crossings
        la = propagate_labels(e)
        assert crossing_type(e, m - 1) == crossing_type(e, m)
        assert crossing_sign(e, la, m - 1) + crossing_sign(e, la, m) == 0
        assert (m - 1, m) in [mv.crossings for mv in all_moves(e, "R2Remove")]
        assert apply_move(e, R2Remove((m - 1, m))) == d

    def test_same_gap_rejected(self, corpus):
        g = gaps(corpus["d1"])[0]
        with pytest.raises(MoveError):
            apply_move(corpus["d1"], R2Add(g, g, 1))

    def test_remove_needs_bigon(self, corpus):
        with pytest.raises(MoveError):
            apply_move(corpus["d1"], R2Remove((1, 2)))


class TestR3:
    def test_trefoil_has_no_triangle_move(self):
        # the standard trefoil's triangles alternate, so no strand can slide
        d = Diagram.from_code("torus", ["1 -2 3 -1 2 -3"], [1, 1, 1])
        assert all_moves(d, "R3") == []

    def test_planar_triangle(self):
        d = Diagram.from_code("torus", ["-1 2 4 -4 -3 1 -2 3"], [1, 1, 1, 1])
        moves = all_moves(d, "R3")
        assert [mv.crossings for mv in moves] == [(2, 3, 4)]
        e = apply_move(d, moves[0])
        assert validate(e) == [] and is_realizable(e)
        assert writhe_numbers(e, propagate_labels(e)) == writhe_numbers(d, propagate_labels(d))
        assert classical_bracket(e) == classical_bracket(d)
        # sliding back is available
        assert all_moves(e, "R3")

    def test_klein_triangle(self):
        d = Diagram.from_code("klein", ["2 t3 b3 -3 -1 -4 t2 b2 t4 b4 3 -2 4 t1 b1 r1 l1 1"],
                              [1, 1, 1, -1])
        moves = all_moves(d, "R3")
        assert moves
        for mv in moves:
            assert canonical_j(apply_move(d, mv)) == canonical_j(d)

    def test_rejects_non_triangle(self, corpus):
        g = gaps(corpus["d1"])
        with pytest.raises(MoveError):
            apply_move(corpus["d1"], R3((1, 2, 3), (g[0], g[1], g[2])))


class TestMoveProperties:
    @settings(max_examples=40)
    @given(any_knot, st.integers(0, 2**16))
    def test_preserve_structure(self, d, seed):
        pc = is_pseudo_classical(d)
        for mv, e in random_move_sequence(d, 6, seed):
            assert validate(e) == []
            assert is_realizable(e)
            assert is_pseudo_classical(e) == pc

    @settings(max_examples=40)
    @given(klein_knots(), st.integers(0, 2**16))
    def test_writhe_behaviour(self, d, seed):
        prev = writhe_numbers(d, propagate_labels(d))
        for mv, e in random_move_sequence(d, 6, seed):
            cur = writhe_numbers(e, propagate_labels(e))
            if isinstance(mv, (R2Add, R2Remove, R3)):
                # labeling A may flip globally when event 0 moves; compare up to sign
                assert cur[0] in (prev[0], -prev[0])
            else:
                assert abs(cur[2]) == abs(prev[2])
            assert abs(cur[2]) == abs(prev[2])
            prev = cur

    @settings(max_examples=25)
    @given(klein_knots(max_crossings=7), st.integers(0, 2**16))
    def test_j_invariance(self, d, seed):
        ref = canonical_j(d)
        for mv, e in random_move_sequence(d, 5, seed, max_crossings=10):
            assert canonical_j(e) == ref, mv

    @settings(max_examples=25)
    @given(torus_knots(max_crossings=7), st.integers(0, 2**16))
    def test_classical_invariance(self, d, seed):
        ref = canonical_pair(classical_bracket(d))
        for mv, e in random_move_sequence(d, 5, seed, max_crossings=10):
            assert canonical_pair(classical_bracket(e)) == ref, mv

    def test_deterministic(self, corpus):
        a = random_move_sequence(corpus["d1"], 15, seed=3)
        b = random_move_sequence(corpus["d1"], 15, seed=3)
        assert a == b

    def test_cap(self, corpus):
        for _, e in random_move_sequence(corpus["d2"], 30, seed=1, max_crossings=8):
            assert e.n_crossings <= 8

    def test_all_kinds_reachable(self, corpus):
        seen = set()
        for seed in range(20):
            for mv, _ in random_move_sequence(corpus["d3"], 20, seed):
                seen.add(type(mv).__name__)
        assert seen == {"R1Add", "R1Remove", "R2Add", "R2Remove", "R3"}


class TestDoubleCover:
    def test_d1_star(self, corpus):
        c = double_cover(corpus["d1"])
        assert c.components == corpus["d1_star"].components
        assert c.handedness == corpus["d1_star"].handedness

    def test_brackets_match_appendix(self, corpus):
        assert classical_bracket(double_cover(corpus["d1"])) == classical_bracket(corpus["d1_star"])
        assert classical_bracket(double_cover(corpus["d2"])) == classical_bracket(corpus["d2_star"])

    def test_sizes(self, corpus):
        assert double_cover(corpus["d1"]).n_crossings == 8
        assert double_cover(corpus["d2"]).n_crossings == 12

    def test_d3_d4_covers_agree(self, corpus):
        p3 = canonical_pair(classical_bracket(double_cover(corpus["d3"])))
        p4 = canonical_pair(classical_bracket(double_cover(corpus["d4"])))
        assert p3 == p4 == -LaurentU.monomial(-2) - LaurentU.monomial(2)

    @given(klein_knots())
    def test_cover_shape(self, d):
        c = double_cover(d)
        assert c.surface.name == "torus"
        assert validate(c) == []
        assert is_realizable(c)
        assert c.n_crossings == 2 * d.n_crossings
        assert len(c.components) == (2 if is_pseudo_classical(d) else 1)

    def test_one_sided_lift(self):
        c = double_cover(Diagram.from_code("klein", ["t1 b1"], []))
        assert len(c.components) == 1

    def test_non_klein(self):
        with pytest.raises(ValueError):
            double_cover(Diagram.from_code("torus", ["t1 b1"], []))
