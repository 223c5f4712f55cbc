from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft_engine.exact import FieldMatrix
from tqft_engine.hopf import double_sweedler
from tqft_engine.mtrace import (
    ModifiedTrace,
    mtrace_eval,
    partial_trace_left,
    partial_trace_right,
    regular_trace_exponent,
    solve_modified_trace,
    split_projective,
)
from tqft_engine.rep import (
    Intertwiner,
    decompose_regular,
    hom_space,
    projective_cover_of_unit,
    regular_module,
    simple_modules,
    tensor_module,
    trivial_module,
)


def _identity_endo(P):
    return Intertwiner(P, P, FieldMatrix.identity(P.algebra.field, P.dim))


def test_semisimple_trace_is_the_categorical_trace(cyclic2):
    t = solve_modified_trace(cyclic2)
    g = cyclic2.pivot()
    for s in decompose_regular(cyclic2):
        P = s.module
        qd = cyclic2.field.zero
        gm = P.act_element(g)
        for i in range(P.dim):
            qd = qd + gm.get(i, i)
        assert mtrace_eval(t, _identity_endo(P)) == qd
    assert t.normalization_witness == 1


def test_normalization_witness(sweedler16):
    t = solve_modified_trace(sweedler16)
    p1, eta1, eps1 = projective_cover_of_unit(sweedler16)
    val = mtrace_eval(t, Intertwiner(p1, p1, eta1.matrix * eps1.matrix))
    assert val == 1
    assert t.normalization_witness == 1


def test_solver_is_cached(sweedler16):
    assert solve_modified_trace(sweedler16) is solve_modified_trace(sweedler16)


def test_zero_and_linearity(sweedler16):
    t = solve_modified_trace(sweedler16)
    p1 = decompose_regular(sweedler16)[0].module
    zero = Intertwiner(p1, p1, FieldMatrix.zeros(sweedler16.field, p1.dim, p1.dim))
    assert not mtrace_eval(t, zero)
    basis = hom_space(p1, p1)
    a, b = basis[0], basis[1]
    lhs = mtrace_eval(t, Intertwiner(p1, p1, a.matrix + b.matrix))
    assert lhs == mtrace_eval(t, a) + mtrace_eval(t, b)


def test_cyclicity_over_all_class_pairs(sweedler16):
    t = solve_modified_trace(sweedler16)
    classes = [s.module for s in decompose_regular(sweedler16)]
    for P in classes:
        for Q in classes:
            for fm in hom_space(Q, P):
                for gm in hom_space(P, Q):
                    fg = Intertwiner(P, P, fm.matrix * gm.matrix)
                    gf = Intertwiner(Q, Q, gm.matrix * fm.matrix)
                    assert mtrace_eval(t, fg) == mtrace_eval(t, gf)


def test_right_and_left_partial_traces(sweedler16):
    # closing a tensor leg before or after evaluating must agree; the
    # spanning endomorphisms run through the splitting slots
    t = solve_modified_trace(sweedler16)
    p1 = decompose_regular(sweedler16)[0].module
    for V in simple_modules(sweedler16)[:2]:
        M = tensor_module(p1, V)
        parts = split_projective(M)
        classes = [s.module for s in decompose_regular(sweedler16)]
        for ks, inc_s, proj_s in parts[:3]:
            for kt, inc_t, proj_t in parts[:3]:
                for phi in hom_space(classes[kt], classes[ks]):
                    h = Intertwiner(M, M,
                                    inc_s.matrix * phi.matrix * proj_t.matrix)
                    closed = partial_trace_right(h, p1, V)
                    assert mtrace_eval(t, h) == mtrace_eval(t, closed)
        W = tensor_module(V, p1)
        witnessed = False
        for ks, inc_s, proj_s in split_projective(W)[:3]:
            h = Intertwiner(W, W, inc_s.matrix * proj_s.matrix)
            closed = partial_trace_left(h, V, p1)
            if V.dim == 1:
                assert mtrace_eval(t, h) == mtrace_eval(t, closed)
            else:
                # the pivot of this double is not spherical: closing a two
                # dimensional simple on the left flips the sign, because the
                # central element u*S(u) acts there as -1 while the pivot
                # squares to the identity.  We pin the defect rather than the
                # left identity, which only holds for the ribbon built-ins.
                assert mtrace_eval(t, closed) == -mtrace_eval(t, h)
                witnessed = witnessed or bool(mtrace_eval(t, h))
        if V.dim > 1:
            assert witnessed, "sign defect never exercised on a nonzero trace"


def test_left_closure_matches_on_ribbon_double(cyclic2):
    t = solve_modified_trace(cyclic2)
    classes = [s.module for s in decompose_regular(cyclic2)]
    for P in classes:
        for V in simple_modules(cyclic2):
            W = tensor_module(V, P)
            for ks, inc_s, proj_s in split_projective(W):
                h = Intertwiner(W, W, inc_s.matrix * proj_s.matrix)
                closed = partial_trace_left(h, V, P)
                assert mtrace_eval(t, h) == mtrace_eval(t, closed)


def test_pairing_with_simples_has_full_rank(sweedler16):
    t = solve_modified_trace(sweedler16)
    f = sweedler16.field
    classes = [s.module for s in decompose_regular(sweedler16)]
    for P in classes:
        for V in simple_modules(sweedler16):
            ins = hom_space(V, P)
            outs = hom_space(P, V)
            assert len(ins) == len(outs)
            if not ins:
                continue
            gram = FieldMatrix.zeros(f, len(ins), len(outs))
            for i, fm in enumerate(ins):
                for j, gm in enumerate(outs):
                    val = mtrace_eval(t, Intertwiner(P, P, fm.matrix * gm.matrix))
                    if val:
                        gram.set(i, j, val)
            gram.inverse()  # raises if degenerate


def test_split_projective_rejects_non_projective(sweedler16):
    one = trivial_module(sweedler16)
    with pytest.raises(ArithmeticError, match="not split"):
        split_projective(one)


def test_split_projective_covers_the_regular_module(sweedler16):
    reg = regular_module(sweedler16)
    parts = split_projective(reg)
    dims = sorted(inc.source.dim for _, inc, _ in parts)
    assert dims == [2, 2, 2, 2, 4, 4]
    total = FieldMatrix.zeros(sweedler16.field, reg.dim, reg.dim)
    for _, inc, proj in parts:
        total = total + inc.matrix * proj.matrix
    assert total == FieldMatrix.identity(sweedler16.field, reg.dim)


def test_regular_module_closed_formula(cyclic3, sweedler16):
    # the symmetrized-integral expression matches for exactly one pivot
    # power once calibrated; for the Sweedler double the pivot is
    # nontrivial so the exponent is pinned
    for H in (cyclic3, sweedler16):
        t = solve_modified_trace(H)
        cal = regular_trace_exponent(H, t)
        assert cal is not None
    assert regular_trace_exponent(sweedler16, solve_modified_trace(sweedler16))[0] == -1


_RANDOM: dict = {}


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_cyclicity_for_random_map_combinations(cf, cg):
    if not _RANDOM:
        H = double_sweedler()
        t = solve_modified_trace(H)
        classes = [s.module for s in decompose_regular(H)]
        P, Q = classes[0], classes[3]
        _RANDOM.update(H=H, t=t, P=P, Q=Q,
                       fwd=hom_space(Q, P), bwd=hom_space(P, Q))
    H, t, P, Q = _RANDOM["H"], _RANDOM["t"], _RANDOM["P"], _RANDOM["Q"]
    f = H.field
    fm = FieldMatrix.zeros(f, P.dim, Q.dim)
    for c, b in zip(cf, _RANDOM["fwd"]):
        if c:
            fm = fm + b.matrix.scale(f.rational(c))
    gm = FieldMatrix.zeros(f, Q.dim, P.dim)
    for c, b in zip(cg, _RANDOM["bwd"]):
        if c:
            gm = gm + b.matrix.scale(f.rational(c))
    lhs = mtrace_eval(t, Intertwiner(P, P, fm * gm))
    rhs = mtrace_eval(t, Intertwiner(Q, Q, gm * fm))
    assert lhs == rhs
