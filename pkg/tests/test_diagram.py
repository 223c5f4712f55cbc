from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft_engine.diagram import (
    RED,
    BichromeDiagram,
    MorphismEntry,
    Slice,
    bcoupon_i,
    bcoupon_j,
    bottom_presentation,
    cap,
    coupon,
    cross_neg,
    cross_pos,
    cup,
    cut_at_projective_edge,
    diagram,
    is_admissible,
    parse,
    red_structure,
    resolve_color,
    serialize,
    validate,
)
from tqft_engine.exact import FieldMatrix


def _red_unknot():
    return diagram((), (), [cup(0), cap(0)])


def _plat_hopf():
    # two cups, inner legs crossed twice the same way, then closed
    return diagram((), (), [cup(0), cup(2), cross_neg(1), cross_neg(1),
                            cap(0), cap(0)])


def _p1_loop_with_coupon(H):
    ident = FieldMatrix.identity(H.field, 4)
    mor = {"f": MorphismEntry(((1, "P1"),), ((1, "P1"),), ident)}
    return diagram((), (), [cup(0, "left", "P1"), coupon(0, "f", 1, 1),
                            cap(0, "left", "P1")], mor)


def test_red_unknot_is_one_cycle_without_writhe():
    d = _red_unknot()
    levels = validate(d)
    assert levels == ((), ((1, RED), (-1, RED)), ())
    rs = red_structure(d)
    assert len(rs.cycles) == 1
    assert rs.writhe(0) == 0
    assert rs.open_chains == ()


def test_kink_carries_its_sign_as_writhe():
    plus = diagram((), (), [cup(0), cup(1), cross_pos(0), cap(1), cap(0)])
    minus = diagram((), (), [cup(0), cup(1), cross_neg(0), cap(1), cap(0)])
    assert red_structure(plus).writhe(0) == 1
    assert red_structure(minus).writhe(0) == -1


def test_plat_hopf_link_has_linking_one():
    rs = red_structure(_plat_hopf())
    assert len(rs.cycles) == 2
    assert rs.linking(0, 1) == 1
    assert rs.writhe(0) == 0 and rs.writhe(1) == 0
    assert rs.linking_matrix() == [[0, 1], [1, 0]]


def test_joined_bichrome_coupons_close_one_cycle():
    d = diagram(((1, "E"),), ((1, "L"),),
                [bcoupon_j(0), cross_pos(0), bcoupon_i(0)])
    rs = red_structure(d)
    assert len(rs.cycles) == 1


def test_validation_names_the_offending_slice():
    with pytest.raises(ValueError, match=r"slice 0: cap at 0 needs two"):
        validate(diagram((), (), [cap(0)]))
    with pytest.raises(ValueError, match=r"slice 1: cap expects"):
        validate(diagram((), (), [cup(0), cap(0, "right")]))
    with pytest.raises(ValueError, match=r"slice 1: cap expects \[\+B -B\]"):
        validate(diagram((), (), [cup(0, "left", "A"), cap(0, "left", "B")]))
    with pytest.raises(ValueError, match=r"slice 0: unknown morphism"):
        validate(diagram((), (), [coupon(0, "nope", 1, 1)]))
    with pytest.raises(ValueError, match=r"slice 0: BCouponI expects"):
        validate(diagram((), (), [bcoupon_i(0)]))
    with pytest.raises(ValueError, match=r"top boundary"):
        validate(diagram((), ((1, "A"),), [cup(0, "left", "A")]))


def test_coupon_legs_must_be_blue():
    bad = {"f": MorphismEntry(((1, RED),), ((1, RED),),
                              FieldMatrix.identity(
                                  _red_unknot_field(), 1))}
    d = BichromeDiagram(((1, RED),), ((1, RED),),
                        (coupon(0, "f", 1, 1),), bad)
    with pytest.raises(ValueError, match=r"slice 0: .* red leg"):
        validate(d)


def _red_unknot_field():
    from tqft_engine.exact import QQ
    return QQ


def test_serialize_parse_round_trip(sweedler16):
    d = _p1_loop_with_coupon(sweedler16)
    text = serialize(d)
    back = parse(text)
    assert back == d
    assert serialize(back) == text


def test_parse_rejects_malformed_input():
    with pytest.raises(ValueError, match="schema"):
        parse('{"schema": "nope"}')
    with pytest.raises(ValueError, match=r"slice 0: unknown kind"):
        parse('{"schema": "diagram/v1", "bottom": [], "top": [],'
              ' "slices": [{"kind": "Twist"}], "morphisms": {}}')
    with pytest.raises(ValueError, match="not valid JSON"):
        parse("{")


def test_bottom_presentation_of_the_red_unknot():
    d_bot, n = bottom_presentation(_red_unknot())
    assert n == 1
    assert d_bot.bottom == ((-1, RED), (1, RED))
    assert d_bot.top == ()
    # the exact rewrite is pinned: a kink on the fresh wire, the shifted
    # cup, one compensating crossing, and the two closing caps
    assert [(s.kind, s.pos) for s in d_bot.slices] == [
        ("Cup", 2), ("CrossPos", 1), ("Cap", 2),
        ("Cup", 2), ("CrossNeg", 1), ("Cap", 0), ("Cap", 0)]
    rs = red_structure(d_bot)
    assert rs.cycles == ()
    assert len(rs.open_chains) == 1


def test_bottom_presentation_leaves_no_closed_cycle():
    two = diagram((), (), [cup(0), cap(0), cup(0), cap(0)])
    for kwargs in ({}, {"order": (1, 0)}, {"route_over": False},
                   {"curls": {0: 1, 1: -1}}, {"basepoints": {0: 0}}):
        d_bot, n = bottom_presentation(two, **kwargs)
        assert n == 2
        assert d_bot.bottom == ((-1, RED), (1, RED)) * 2
        rs = red_structure(d_bot)
        assert rs.cycles == ()
        assert len(rs.open_chains) == 2


def test_bottom_presentation_flips_keep_the_word_valid():
    hopf = _plat_hopf()
    base, n = bottom_presentation(hopf)
    assert n == 2
    for flips in ({0}, {1}, {0, 1, 2, 3}):
        d_bot, _ = bottom_presentation(hopf, flips=flips)
        assert len(d_bot.slices) == len(base.slices)
        assert d_bot != base


def test_bottom_presentation_rejects_bad_order():
    with pytest.raises(ValueError, match="not a permutation"):
        bottom_presentation(_red_unknot(), order=(1,))


def test_cut_at_projective_edge_pins_the_rewrite(sweedler16):
    d = _p1_loop_with_coupon(sweedler16)
    d_cut, P = cut_at_projective_edge(d, sweedler16)
    assert d_cut.bottom == ((1, "P1"),)
    assert d_cut.top == ((1, "P1"),)
    assert P is resolve_color(sweedler16, "P1")
    assert P.dim == 4
    assert [(s.kind, s.pos) for s in d_cut.slices] == [
        ("Cup", 1), ("CrossPos", 1), ("Coupon", 0), ("Cap", 0)]


def test_cut_offers_every_projective_edge(sweedler16):
    H = sweedler16
    ident = FieldMatrix.identity(H.field, 4)
    mor = {"f": MorphismEntry(((1, "P1"),), ((1, "P1"),), ident)}
    d = diagram((), (), [cup(0, "left", "P1"), coupon(0, "f", 1, 1),
                         cap(0, "left", "P1"),
                         cup(0, "left", "P1"), cap(0, "left", "P1")], mor)
    first, _ = cut_at_projective_edge(d, H, index=0)
    second, _ = cut_at_projective_edge(d, H, index=1)
    assert first != second
    validate(first)
    validate(second)
    with pytest.raises(ValueError, match="out of range"):
        cut_at_projective_edge(d, H, index=2)


def test_cut_refuses_red_only_and_open_diagrams(sweedler16):
    with pytest.raises(ValueError, match="no blue edge"):
        cut_at_projective_edge(_red_unknot(), sweedler16)
    open_d = diagram(((1, "P1"),), ((1, "P1"),), [])
    with pytest.raises(ValueError, match="closed"):
        cut_at_projective_edge(open_d, sweedler16)


def test_cut_needs_a_projective_color(sweedler16):
    d = diagram((), (), [cup(0, "left", "S[0]"), cap(0, "left", "S[0]")])
    with pytest.raises(ValueError, match="inadmissible"):
        cut_at_projective_edge(d, sweedler16)


def test_admissibility(sweedler16, cyclic2):
    assert is_admissible(_p1_loop_with_coupon(sweedler16), sweedler16)
    assert not is_admissible(_red_unknot(), sweedler16)
    blue_simple = diagram((), (), [cup(0, "left", "S[0]"),
                                   cap(0, "left", "S[0]")])
    assert not is_admissible(blue_simple, sweedler16)
    # semisimple: nothing to require
    assert is_admissible(_red_unknot(), cyclic2)
    with pytest.raises(ValueError, match="closed"):
        is_admissible(diagram(((1, RED),), ((1, RED),), []), sweedler16)


def test_resolve_color_knows_the_standard_names(sweedler16):
    H = sweedler16
    assert resolve_color(H, "1").dim == 1
    assert resolve_color(H, "H").dim == 16
    assert resolve_color(H, "P1") is resolve_color(H, "P[0]")
    assert resolve_color(H, "L").dim == 16
    assert resolve_color(H, "E").dim == 16
    with pytest.raises(ValueError, match="unknown module color"):
        resolve_color(H, "nope")


# -- randomized words -------------------------------------------------------

_COLORS = (RED, "A", "B")


def _cap_candidates(pat):
    found = []
    for pos in range(len(pat) - 1):
        color = pat[pos][1]
        if pat[pos + 1][1] != color and not (
                pat[pos + 1][1] is RED and color is RED):
            continue
        for chir in ("left", "right"):
            signs = (1, -1) if chir == "left" else (-1, 1)
            if (pat[pos][0], pat[pos + 1][0]) == signs \
                    and pat[pos][1] == pat[pos + 1][1]:
                found.append((pos, chir, color))
    return found


@st.composite
def _random_words(draw):
    slices = []
    pat = []
    for _ in range(draw(st.integers(min_value=1, max_value=14))):
        moves = ["cup"]
        if len(pat) >= 2:
            moves.append("cross")
        if _cap_candidates(pat):
            moves.append("cap")
        move = draw(st.sampled_from(moves))
        if move == "cup":
            pos = draw(st.integers(min_value=0, max_value=len(pat)))
            chir = draw(st.sampled_from(("left", "right")))
            color = draw(st.sampled_from(_COLORS))
            s = cup(pos, chir, color)
            a, b = ((1, color), (-1, color)) if chir == "left" \
                else ((-1, color), (1, color))
            pat[pos:pos] = [a, b]
        elif move == "cross":
            pos = draw(st.integers(min_value=0, max_value=len(pat) - 2))
            kind = draw(st.sampled_from(("CrossPos", "CrossNeg")))
            s = Slice(kind, pos)
            pat[pos], pat[pos + 1] = pat[pos + 1], pat[pos]
        else:
            pos, chir, color = draw(st.sampled_from(_cap_candidates(pat)))
            s = cap(pos, chir, color)
            del pat[pos:pos + 2]
        slices.append(s)
    return diagram((), tuple(pat), slices)


@settings(max_examples=40, deadline=None)
@given(_random_words())
def test_random_words_round_trip_and_count_consistently(d):
    validate(d)
    assert parse(serialize(d)) == d
    first = red_structure(d)
    again = red_structure(d)
    assert first == again
    mat = first.linking_matrix()
    for i in range(len(mat)):
        for j in range(len(mat)):
            assert mat[i][j] == mat[j][i]
    if not d.top:
        d_bot, n = bottom_presentation(d)
        assert n == len(first.cycles)
        assert red_structure(d_bot).cycles == ()
