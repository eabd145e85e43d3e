import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonorbracket.corpus import corpus_text
from nonorbracket.surface import (
    SURFACES,
    CrossingPass,
    Diagram,
    DiagramError,
    DiagramSyntaxError,
    WallPass,
    arcs,
    diagram_from_json,
    diagram_to_json,
    parse_diagram,
    parse_diagram_file,
    port_partner,
    serialize_diagram,
    validate,
    wall_flip,
    wall_pairs,
)

from conftest import klein_knots, torus_knots

TORUS, KLEIN = SURFACES["torus"], SURFACES["klein"]


def kinds(d):
    return {p.kind for p in validate(d)}


class TestParse:
    def test_d1_star_block(self):
        d = parse_diagram(corpus_text("d1_star"))
        assert d.surface == TORUS
        assert d.n_crossings == 8
        assert len(d.components) == 2
        assert d.handedness == (1, 1, 1, 1, -1, -1, -1, -1)

    def test_d2_star_block(self):
        d = parse_diagram(corpus_text("d2_star"))
        assert d.n_crossings == 12 and len(d.components) == 2

    def test_kink_on_klein(self):
        d = parse_diagram("surface klein\ncrossings 1\nhandedness 1\ncode 1 -1\nend\n")
        assert d.surface == KLEIN and d.n_crossings == 1

    def test_signs_alias_and_comments(self):
        text = "# header\nsurface klein  # the bottle\nlink K\ncrossings 1\nsigns -1\ncode -1 1\nend\n"
        d = parse_diagram(text)
        assert d.handedness == (-1,) and d.name == "K"

    def test_several_blocks(self):
        text = corpus_text("d1") + corpus_text("d3")
        assert [d.n_crossings for d in parse_diagram_file(text)] == [4, 2]

    def test_token_error_location(self):
        with pytest.raises(DiagramSyntaxError) as err:
            parse_diagram("crossings 1\nsigns 1\ncode 1 x7 -1\nend\n")
        assert (err.value.line, err.value.column) == (3, 8)

    def test_unknown_surface(self):
        with pytest.raises(DiagramSyntaxError) as err:
            parse_diagram("surface sphere\ncrossings 0\ncode t1 b1\nend\n")
        assert err.value.line == 1

    def test_missing_end(self):
        with pytest.raises(DiagramSyntaxError, match="end"):
            parse_diagram("crossings 0\ncode t1 b1\n")

    def test_handedness_count(self):
        with pytest.raises(DiagramSyntaxError, match="handedness"):
            parse_diagram("crossings 2\nsigns 1\ncode 1 -1 2 -2\nend\n")

    def test_invalid_block_reports_start_line(self):
        with pytest.raises(DiagramError) as err:
            parse_diagram("\n\nsurface klein\ncrossings 1\nsigns 1\ncode 1 1\nend\n")
        assert err.value.line == 3
        assert "crossing 1" in str(err.value)


class TestValidate:
    def test_appendix_blocks_valid(self):
        for name in ("d1_star", "d2_star"):
            assert validate(parse_diagram_file(corpus_text(name))[0]) == []

    def test_double_over(self):
        d = Diagram.from_code(KLEIN, ["1 1"], [1])
        problems = validate(d)
        assert any("crossing 1" in str(p) for p in problems)

    def test_port_count_mismatch(self):
        d = Diagram.from_code(KLEIN, ["t1 b1 t2 b1"], [])
        assert "port" in kinds(d)

    def test_port_on_free_side(self):
        d = Diagram.from_code(SURFACES["annulus-v"], ["t1 b1"], [])
        assert validate(d)

    def test_wrong_reentry(self):
        # on the torus with two ports t1 pairs with b2, not b1
        d = Diagram.from_code(TORUS, ["t1 b1", "t2 b2"], [])
        assert validate(d)
        assert validate(Diagram.from_code(TORUS, ["t1 b2", "t2 b1"], [])) == []

    def test_no_glued_pair(self):
        from nonorbracket.surface import Surface
        d = Diagram(Surface("disk", None, None), ((CrossingPass(1, True), CrossingPass(1, False)),), (1,))
        assert "surface" in kinds(d)

    def test_bad_handedness_value(self):
        d = Diagram.from_code(KLEIN, ["1 -1"], [0])
        assert "handedness" in kinds(d)


class TestGluing:
    def test_torus_pairs_from_appendix(self):
        assert port_partner(TORUS, WallPass("t", 1), 2) == WallPass("b", 2)
        assert port_partner(TORUS, WallPass("r", 2), 2) == WallPass("l", 1)

    def test_klein_twisted_pair(self):
        assert port_partner(KLEIN, WallPass("t", 1), 2) == WallPass("b", 1)
        assert port_partner(KLEIN, WallPass("l", 1), 2) == WallPass("r", 2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            port_partner(TORUS, WallPass("t", 3), 2)

    @given(st.sampled_from(sorted(SURFACES)), st.sampled_from("ltrb"), st.integers(1, 9), st.data())
    def test_involution(self, name, side, k, data):
        s = SURFACES[name]
        if s.gluing(side) is None:
            with pytest.raises(ValueError):
                port_partner(s, WallPass(side, 1), k)
            return
        w = WallPass(side, data.draw(st.integers(1, k)))
        p = port_partner(s, w, k)
        assert p.side != w.side
        assert port_partner(s, p, k) == w

    def test_wall_flip(self):
        assert wall_flip(KLEIN, WallPass("t", 1)) and wall_flip(KLEIN, WallPass("b", 3))
        assert not wall_flip(KLEIN, WallPass("l", 1)) and not wall_flip(KLEIN, WallPass("r", 1))
        assert not any(wall_flip(TORUS, WallPass(s, 1)) for s in "ltrb")

    def test_wrapped_wall_pair(self):
        comp = Diagram.from_code(KLEIN, ["b1 -1 1 t1"], [1]).components[0]
        assert wall_pairs(comp) == [(3, 0)]

    def test_arc_parities(self):
        d = parse_diagram(corpus_text("d3"))
        total = [0, 0, 0]
        for a in arcs(d):
            total[0] += a.v_passes
            total[1] += a.h_passes
            total[2] += a.flips
        assert total == [1, 4, 4]


class TestSerialize:
    def test_roundtrip_appendix(self):
        for name in ("d1_star", "d2_star", "d1", "d2", "d3", "d4"):
            d = parse_diagram(corpus_text(name))
            text = serialize_diagram(d)
            assert parse_diagram(text) == d
            assert serialize_diagram(parse_diagram(text)) == text

    def test_torus_header(self):
        assert serialize_diagram(parse_diagram(corpus_text("d1_star"))).startswith("surface torus\n")

    def test_token_order_preserved(self):
        d = parse_diagram(corpus_text("d1_star"))
        assert "code -4 8 l2 r1 5 -6 7 -5 6 -7 t2 b1" in serialize_diagram(d).splitlines()

    def test_whitespace_insensitive(self):
        messy = "  surface   klein\nlink D\ncrossings 1\nhandedness   1\ncode  1    -1\nend\n"
        assert serialize_diagram(parse_diagram(messy)) == \
            "surface klein\nlink D\ncrossings 1\nhandedness 1\ncode 1 -1\nend\n"

    @given(st.one_of(klein_knots(), torus_knots()))
    def test_roundtrip_random(self, d):
        assert parse_diagram(serialize_diagram(d)) == d
        assert diagram_from_json(json.loads(json.dumps(diagram_to_json(d)))) == d
