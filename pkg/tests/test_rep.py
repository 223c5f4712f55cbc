"""Module category layer: duality, hom spaces, braiding, decomposition."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from tqft_engine.exact import FieldMatrix
from tqft_engine.hopf import double_cyclic
from tqft_engine.rep import (
    HModule,
    Intertwiner,
    braiding,
    coev_left,
    coev_right,
    decompose_regular,
    double_dual_iso,
    dual_module,
    ev_left,
    ev_right,
    hom_space,
    is_projective,
    modules_isomorphic,
    projective_cover_of_unit,
    radical_rows,
    regular_module,
    simple_modules,
    tensor_module,
    trivial_module,
    twist,
    twist_inv,
)


def _identity_on(V):
    return Intertwiner(V, V, FieldMatrix.identity(V.algebra.field, V.dim))


def test_builtin_modules_satisfy_module_axiom(cyclic2, sweedler16):
    for H in (cyclic2, sweedler16):
        assert trivial_module(H).verify()
        assert regular_module(H).verify()
        assert dual_module(regular_module(H)).verify()
        assert tensor_module(trivial_module(H), regular_module(H)).verify()


def test_tensor_dimension_multiplies(cyclic2):
    reg = regular_module(cyclic2)
    one = trivial_module(cyclic2)
    assert tensor_module(reg, reg).dim == 16
    assert tensor_module(reg, one).dim == 4
    assert dual_module(reg).dim == 4


def test_tensor_is_strictly_associative(cyclic2):
    reg = regular_module(cyclic2)
    one = trivial_module(cyclic2)
    a = tensor_module(tensor_module(reg, one), reg)
    b = tensor_module(reg, tensor_module(one, reg))
    assert all(a.act(i) == b.act(i) for i in range(cyclic2.dim))


def test_dual_of_trivial_is_trivial(cyclic2, sweedler16):
    for H in (cyclic2, sweedler16):
        one = trivial_module(H)
        assert modules_isomorphic(dual_module(one), one)


def test_mixed_algebra_operations_rejected(cyclic2, cyclic3):
    with pytest.raises(ValueError):
        tensor_module(trivial_module(cyclic2), trivial_module(cyclic3))
    with pytest.raises(ValueError):
        hom_space(trivial_module(cyclic2), trivial_module(cyclic3))


def test_duality_zig_zag_left(cyclic2):
    reg = regular_module(cyclic2)
    idm = _identity_on(reg)
    z = idm.tensor(ev_left(reg)).matrix * coev_left(reg).tensor(idm).matrix
    assert z == idm.matrix


def test_duality_zig_zag_right_uses_pivot(cyclic2, sweedler16):
    for H in (cyclic2, sweedler16):
        reg = regular_module(H)
        idm = _identity_on(reg)
        z = ev_right(reg).tensor(idm).matrix * idm.tensor(coev_right(reg)).matrix
        assert z == idm.matrix
        assert ev_right(reg).verify()
        assert coev_right(reg).verify()


def test_hom_space_dimensions(cyclic2):
    one = trivial_module(cyclic2)
    reg = regular_module(cyclic2)
    assert len(hom_space(one, one)) == 1
    assert len(hom_space(reg, one)) == 1
    assert len(hom_space(one, reg)) == 1


def test_hom_space_is_deterministic(sweedler16):
    p1, _, _ = projective_cover_of_unit(sweedler16)
    a = hom_space(p1, p1)
    b = hom_space(p1, p1)
    assert len(a) == len(b)
    for f, g in zip(a, b):
        assert f.matrix == g.matrix


def test_hom_space_elements_intertwine(sweedler16):
    reg = regular_module(sweedler16)
    one = trivial_module(sweedler16)
    for f in hom_space(reg, one):
        assert f.verify()


def test_schur_distinct_simples(uqsl2_3):
    sims = simple_modules(uqsl2_3)
    assert len(sims) >= 2
    for i in range(len(sims)):
        for j in range(len(sims)):
            expected = 1 if i == j else 0
            assert len(hom_space(sims[i], sims[j])) == expected


def test_braiding_with_unit_is_identity(sweedler16):
    one = trivial_module(sweedler16)
    for V in simple_modules(sweedler16):
        c = braiding(one, V)
        assert c.matrix == FieldMatrix.identity(sweedler16.field, V.dim)
        assert braiding(V, one).matrix == FieldMatrix.identity(
            sweedler16.field, V.dim)


def test_braiding_and_twist_are_intertwiners(uqsl2_3):
    sims = simple_modules(uqsl2_3)
    v, w = sims[1], sims[2]
    assert braiding(v, w).verify()
    assert twist(v).verify()


def test_twist_of_unit_is_one(cyclic2, sweedler16, uqsl2_3):
    for H in (cyclic2, sweedler16, uqsl2_3):
        t = twist(trivial_module(H))
        assert t.matrix == FieldMatrix.identity(H.field, 1)


def test_twist_inverse_really_inverts(uqsl2_3):
    for V in simple_modules(uqsl2_3):
        prod = twist(V).matrix * twist_inv(V).matrix
        assert prod == FieldMatrix.identity(uqsl2_3.field, V.dim)


def test_twist_on_tensor_is_double_braiding(uqsl2_3):
    sims = simple_modules(uqsl2_3)
    v, w = sims[1], sims[2]
    lhs = twist(tensor_module(v, w)).matrix
    rhs = (braiding(w, v).matrix * braiding(v, w).matrix
           * twist(v).matrix.kron(twist(w).matrix))
    assert lhs == rhs


def test_braiding_hexagon(uqsl2_3):
    sims = simple_modules(uqsl2_3)
    u, v, w = sims[1], sims[1], sims[2]
    lhs = braiding(u, tensor_module(v, w)).matrix
    rhs = (_identity_on(v).tensor(braiding(u, w)).matrix
           * braiding(u, v).tensor(_identity_on(w)).matrix)
    assert lhs == rhs


def test_double_dual_is_pivotal_isomorphism(sweedler16, uqsl2_3):
    for H in (sweedler16, uqsl2_3):
        for V in simple_modules(H):
            dd = double_dual_iso(V)
            assert dd.verify()
            assert dd.is_invertible()


def test_decompose_regular_cyclic2(cyclic2):
    assert radical_rows(cyclic2).nrows == 0
    summands = decompose_regular(cyclic2)
    assert len(summands) == 4
    for s in summands:
        assert s.module.dim == 1
        assert s.multiplicity == 1
        assert s.idempotent.verify()


def test_decompose_regular_sweedler(sweedler16):
    assert radical_rows(sweedler16).nrows > 0
    summands = decompose_regular(sweedler16)
    assert sum(s.multiplicity * s.module.dim for s in summands) == 16
    assert any(s.module.dim > 1 for s in summands)
    assert sorted(s.top.dim for s in summands) == [1, 1, 2, 2]


def test_decompose_regular_small_quantum_group(uqsl2_3):
    summands = decompose_regular(uqsl2_3)
    assert sum(s.multiplicity * s.module.dim for s in summands) == 27
    assert sorted(s.top.dim for s in summands) == [1, 2, 3]
    # the dim-3 simple is its own projective cover, with multiplicity 3
    steinberg = [s for s in summands if s.top.dim == 3][0]
    assert steinberg.module.dim == 3
    assert steinberg.multiplicity == 3


def test_summand_tops_are_inequivalent(sweedler16):
    summands = decompose_regular(sweedler16)
    for i in range(len(summands)):
        for j in range(len(summands)):
            if i != j:
                assert not hom_space(summands[i].top, summands[j].top)


def test_projective_cover_of_unit_semisimple_case(cyclic2):
    p1, eta1, eps1 = projective_cover_of_unit(cyclic2)
    assert p1.dim == 1
    assert (eps1.matrix * eta1.matrix) == FieldMatrix.identity(cyclic2.field, 1)


def test_projective_cover_of_unit_sweedler(sweedler16):
    p1, eta1, eps1 = projective_cover_of_unit(sweedler16)
    assert p1.dim == 4
    assert len(hom_space(trivial_module(sweedler16), p1)) == 1
    assert len(hom_space(p1, trivial_module(sweedler16))) == 1
    assert not (eta1.matrix * eps1.matrix).is_zero()
    assert eta1.verify() and eps1.verify()


def _direct_section_exists(V):
    """Literal splitting of the free cover, feasible only for small V."""
    H = V.algebra
    f = H.field
    reg = regular_module(H)
    d, n = V.dim, H.dim
    eye_v = FieldMatrix.identity(f, d)
    free = HModule(H, n * d, [reg.act(i).kron(eye_v) for i in range(n)], "free")
    eye_free = FieldMatrix.identity(f, n * d)
    blocks = [eye_free.kron(V.act(g).transpose()) - free.act(g).kron(eye_v)
              for g in H.generating_set()]
    pi = FieldMatrix.zeros(f, d, n * d)
    for i in range(n):
        m = V.act(i)
        for k in range(d):
            for x in range(d):
                c = m.get(k, x)
                if c:
                    pi.set(k, i * d + x, c)
    sys = blocks[0]
    for extra in blocks[1:]:
        sys = sys.col_join(extra)
    full = sys.col_join(pi.kron(eye_v))
    rhs = FieldMatrix.zeros(f, sys.nrows, 1).col_join(
        FieldMatrix.identity(f, d).flatten_column())
    return full.solve_right(rhs) is not None


def test_is_projective_basic_answers(cyclic2, sweedler16):
    assert is_projective(regular_module(cyclic2))
    assert is_projective(trivial_module(cyclic2))
    assert is_projective(regular_module(sweedler16))
    assert not is_projective(trivial_module(sweedler16))


def test_is_projective_matches_direct_section_solve(sweedler16):
    one = trivial_module(sweedler16)
    assert is_projective(one) == _direct_section_exists(one)
    for s in decompose_regular(sweedler16):
        if s.top.dim <= 2:
            assert is_projective(s.top) == _direct_section_exists(s.top)


def test_projective_absorbs_tensor(sweedler16):
    p1, _, _ = projective_cover_of_unit(sweedler16)
    for V in simple_modules(sweedler16):
        assert is_projective(tensor_module(p1, V))
        assert is_projective(tensor_module(V, p1))


def test_module_json_shape(cyclic2):
    data = regular_module(cyclic2).to_json()
    assert data["dim"] == 4
    assert len(data["action"]) == 4
    assert len(data["action"][0]) == 4
    assert all(isinstance(entry, str) for row in data["action"][0] for entry in row)


_NATURALITY = {}


def _naturality_setup():
    if not _NATURALITY:
        H = double_cyclic(3)
        V = regular_module(H)
        W = dual_module(V)
        _NATURALITY["H"] = H
        _NATURALITY["c"] = braiding(V, W).matrix
        _NATURALITY["src"] = tensor_module(V, W)
        _NATURALITY["tgt"] = tensor_module(W, V)
    return _NATURALITY


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
def test_braiding_naturality_on_algebra_elements(i, j):
    data = _naturality_setup()
    H = data["H"]
    # c must intertwine the diagonal action of a_i a_j
    x = H.el_mul({i: H.field.one}, {j: H.field.one})
    src = data["src"].act_element(x)
    tgt = data["tgt"].act_element(x)
    assert data["c"] * src == tgt * data["c"]
