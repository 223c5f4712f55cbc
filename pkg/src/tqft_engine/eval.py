"""Evaluating diagram words against a concrete algebra.

``rt_eval`` folds an all-blue word slice by slice over sparse leg states.
``f_lambda_eval`` extends this to red content: the word is rewritten by
``bottom_presentation`` so every red cycle hangs off a bottom pair, and
each pair is seeded with the cointegral on the downward leg and the unit
on the upward one, which is exactly the integral of the coend pushed
through the universal coupon.  ``f_prime_eval`` renormalizes closed
admissible words: cut one projective blue edge, evaluate the resulting
endomorphism, take its modified trace.

``hennings_oracle`` recomputes red-only links by the classical bead
calculus instead: expand crossings into bead sums, walk each component,
correct extrema with pivot powers, feed the cointegral.  It shares no
code with the folding route on purpose, so the two can check each other.
"""

from __future__ import annotations

from ._legops import LegEngine
from .coend import build_coend, dinat_i, dinat_j
from .diagram import (RED, BichromeDiagram, bottom_presentation,
                      cut_at_projective_edge, point_module, resolve_color,
                      validate)
from .exact import Cyclo, FieldMatrix
from .hopf import RibbonHopfAlgebra
from .mtrace import mtrace_eval, solve_modified_trace
from .rep import Intertwiner, dual_module, regular_module


def _engine(H: RibbonHopfAlgebra) -> LegEngine:
    eng = H._cache.get("leg_engine")
    if eng is None:
        eng = LegEngine(H)
        H._cache["leg_engine"] = eng
    return eng


# ---------------------------------------------------------------------------
# slice compilation
# ---------------------------------------------------------------------------

def _unflatten(flat: int, dims) -> tuple:
    out = []
    for d in reversed(dims):
        out.append(flat % d)
        flat //= d
    return tuple(reversed(out))


def _sparse_columns(m: FieldMatrix, out_dims) -> list:
    """Nonzero entries per column, rows pre-split into leg indices."""
    cols = [[] for _ in range(m.ncols)]
    for i in range(m.nrows):
        mid = _unflatten(i, out_dims)
        for j in range(m.ncols):
            v = m.get(i, j)
            if v:
                cols[j].append((mid, v))
    return cols


def _apply_columns(state: dict, p: int, k_in: int, in_dims, cols) -> dict:
    out: dict = {}
    for key, c in state.items():
        flat = 0
        for x, d in zip(key[p:p + k_in], in_dims):
            flat = flat * d + x
        for mid, v in cols[flat]:
            nk = key[:p] + mid + key[p + k_in:]
            cur = out.get(nk)
            out[nk] = c * v if cur is None else cur + c * v
    return {k: v for k, v in out.items() if v}


def _coupon_op(p: int, src_mods: tuple, tgt_mods: tuple, cols):
    k_in = len(src_mods)
    in_dims = [v.dim for v in src_mods]

    def op(mods, state):
        return (mods[:p] + tgt_mods + mods[p + k_in:],
                _apply_columns(state, p, k_in, in_dims, cols))
    return op


def _bichrome_tables(H: RibbonHopfAlgebra) -> dict:
    """Column tables of the two universal coupons on the regular module."""
    got = H._cache.get("eval_bichrome")
    if got is None:
        reg = regular_module(H)
        C = build_coend(H)
        got = {
            "I": ((dual_module(reg), reg), (C.L,),
                  _sparse_columns(dinat_i(reg).matrix, (C.L.dim,))),
            "J": ((C.E,), (reg, dual_module(reg)),
                  _sparse_columns(dinat_j(reg).matrix, (reg.dim, reg.dim))),
        }
        H._cache["eval_bichrome"] = got
    return got


def _compile(d: BichromeDiagram, H: RibbonHopfAlgebra, extra) -> list:
    eng = _engine(H)
    ops = []
    for s in d.slices:
        p = s.pos
        if s.kind == "Id":
            continue
        if s.kind == "Cup":
            V = (regular_module(H) if s.color is RED
                 else resolve_color(H, s.color, extra))
            if s.chirality == "left":
                ops.append(lambda mods, st, p=p, V=V:
                           eng.coev_left(mods, st, p, V))
            else:
                ops.append(lambda mods, st, p=p, V=V:
                           eng.coev_right(mods, st, p, V))
        elif s.kind == "Cap":
            if s.chirality == "left":
                ops.append(lambda mods, st, p=p: eng.ev_right(mods, st, p))
            else:
                ops.append(lambda mods, st, p=p: eng.ev_left(mods, st, p))
        elif s.kind in ("CrossPos", "CrossNeg"):
            inv = s.kind == "CrossNeg"
            ops.append(lambda mods, st, p=p, inv=inv:
                       eng.braid(mods, st, p, inv))
        elif s.kind == "Coupon":
            entry = d.morphisms[s.morphism]
            src = tuple(point_module(H, pt, extra) for pt in entry.source)
            tgt = tuple(point_module(H, pt, extra) for pt in entry.target)
            cols = _sparse_columns(entry.matrix, tuple(v.dim for v in tgt))
            ops.append(_coupon_op(p, src, tgt, cols))
        elif s.kind == "BCouponI":
            src, tgt, cols = _bichrome_tables(H)["I"]
            ops.append(_coupon_op(p, src, tgt, cols))
        elif s.kind == "BCouponJ":
            src, tgt, cols = _bichrome_tables(H)["J"]
            ops.append(_coupon_op(p, src, tgt, cols))
    return ops


def _run(field, pre_mods, pre_state, bot_mods, top_mods, ops) -> FieldMatrix:
    """Fold the compiled ops once per basis vector of the plain bottom legs;
    ``pre_state`` seeds extra legs standing to their left."""
    dims = [v.dim for v in bot_mods]
    total_in = 1
    for d in dims:
        total_in *= d
    total_out = 1
    for v in top_mods:
        total_out *= v.dim
    out = FieldMatrix.zeros(field, total_out, total_in)
    for col in range(total_in):
        tail = _unflatten(col, dims)
        mods = pre_mods + bot_mods
        state = {pk + tail: c for pk, c in pre_state.items()}
        for op in ops:
            mods, state = op(mods, state)
        for key, c in state.items():
            flat = 0
            for x, v in zip(key, top_mods):
                flat = flat * v.dim + x
            out.set(flat, col, c)
    return out


# ---------------------------------------------------------------------------
# the three evaluation routes
# ---------------------------------------------------------------------------

def rt_eval(d: BichromeDiagram, H: RibbonHopfAlgebra, extra=None) -> FieldMatrix:
    """Matrix of an all-blue word, legs flattened row-major.

    The empty word gives the 1x1 matrix [1].  Red strands are refused;
    they need the cointegral route of f_lambda_eval.
    """
    levels = validate(d)
    for pat in levels:
        for _, color in pat:
            if color is RED:
                raise ValueError("red strands present; rt_eval handles "
                                 "all-blue words, use f_lambda_eval")
    bot = tuple(point_module(H, pt, extra) for pt in d.bottom)
    top = tuple(point_module(H, pt, extra) for pt in d.top)
    ops = _compile(d, H, extra)
    return _run(H.field, (), {(): H.field.one}, bot, top, ops)


def _pair_state(H: RibbonHopfAlgebra) -> dict:
    """Seed of one bottom red pair: cointegral on the downward leg, unit
    on the upward one.

    Checked once per algebra: pushing the seed through the universal
    coupon must land on the integral of the coend, otherwise every red
    evaluation would silently use a wrong functional.
    """
    got = H._cache.get("eval_pair_state")
    if got is None:
        lam = compute_integrals(H).right_cointegral
        state = {}
        for a, la in enumerate(lam):
            if not la:
                continue
            for b, cb in H.unit.items():
                state[(a, b)] = la * cb
        src, _, cols = _bichrome_tables(H)["I"]
        image = _apply_columns(state, 0, 2, [v.dim for v in src], cols)
        C = build_coend(H)
        want = {}
        for h in range(C.L.dim):
            v = C.Lambda.matrix.get(h, 0)
            if v:
                want[(h,)] = v
        if image != want:
            raise ArithmeticError(
                "cointegral seed does not reproduce the coend integral")
        H._cache["eval_pair_state"] = state
        got = state
    return got


def f_lambda_eval(d: BichromeDiagram, H: RibbonHopfAlgebra, extra=None, *,
                  order=None, basepoints=None, route_over=True, curls=None,
                  flips=None) -> FieldMatrix:
    """Matrix of a bichrome word with every red cycle fed the cointegral.

    The keyword knobs are passed through to bottom_presentation; they
    perturb presentation choices the value must not depend on, which is
    what the invariance tests exercise.  With no red content this agrees
    with rt_eval.
    """
    d_bot, n = bottom_presentation(d, order=order, basepoints=basepoints,
                                   route_over=route_over, curls=curls,
                                   flips=flips)
    pre_state = {(): H.field.one}
    if n:
        pair = _pair_state(H)
        for _ in range(n):
            pre_state = {k + pk: c * pc for k, c in pre_state.items()
                         for pk, pc in pair.items()}
    reg = regular_module(H)
    pre_mods = (dual_module(reg), reg) * n
    bot = tuple(point_module(H, pt, extra) for pt in d.bottom)
    top = tuple(point_module(H, pt, extra) for pt in d.top)
    ops = _compile(d_bot, H, extra)
    return _run(H.field, pre_mods, pre_state, bot, top, ops)


def f_prime_eval(d: BichromeDiagram, H: RibbonHopfAlgebra, extra=None, *,
                 trace=None, cut_index=0) -> Cyclo:
    """Renormalized value of a closed admissible word.

    Cuts the word at a projective blue edge, evaluates the cut word to an
    endomorphism of the edge color, and returns its modified trace.  The
    trace is solved on demand and cached; pass ``trace`` to reuse one.
    """
    d_cut, P = cut_at_projective_edge(d, H, extra=extra, index=cut_index)
    m = f_lambda_eval(d_cut, H, extra)
    t = trace if trace is not None else solve_modified_trace(H)
    return mtrace_eval(t, Intertwiner(P, P, m))


# ---------------------------------------------------------------------------
# bead oracle for red-only links
# ---------------------------------------------------------------------------

# Conventions the bead calculus does not determine by itself: which leg of
# the R-matrix sits on the strand entering a crossing from the lower left,
# the antipode power applied to beads collected while walking down the
# page, and the pivot power attached to the rotation number of each
# component.  They were calibrated once against f_lambda_eval on unknots,
# kinked unknots and Hopf links over two algebras, then frozen here.
_BEAD_FIRST_POS = True     # positive crossing: in_l strand beads the first leg
_BEAD_FIRST_NEG = True     # negative crossing: same for the inverse R-matrix
_BEAD_DOWN_S = 1           # antipode power on beads collected heading down
_BEAD_ROT_COEF = -1        # pivot exponent = coef * rotation + base
_BEAD_ROT_BASE = -1
_BEAD_APPEND_RIGHT = True  # running product grows as acc * bead
_BEAD_PIVOT_LEFT = True    # pivot correction multiplies from the left


def _bead_graph(d: BichromeDiagram):
    """Monotone strand records of a closed red-only word.

    Every record runs upward from a cup to a cap and logs the crossings
    it passes; traversal along orientation walks records with sign +1
    forward and the others backward.
    """
    rec_sign = []
    rec_cross = []               # [(crossing id, "l" or "r")] in level order
    rec_birth = []               # (cup id, side)
    rec_death = {}               # record id -> (cap id, side)
    cups = []                    # (left record, right record)
    caps = []
    kinds = []                   # +1 positive crossing, -1 negative
    cols = []
    for s in d.slices:
        p = s.pos
        if s.kind == "Cup":
            signs = (1, -1) if s.chirality == "left" else (-1, 1)
            first = len(rec_sign)
            for k, sg in enumerate(signs):
                rec_sign.append(sg)
                rec_cross.append([])
                rec_birth.append((len(cups), "l" if k == 0 else "r"))
            cups.append((first, first + 1))
            cols[p:p] = [first, first + 1]
        elif s.kind == "Cap":
            rec_death[cols[p]] = (len(caps), "l")
            rec_death[cols[p + 1]] = (len(caps), "r")
            caps.append((cols[p], cols[p + 1]))
            del cols[p:p + 2]
        else:
            cid = len(kinds)
            kinds.append(1 if s.kind == "CrossPos" else -1)
            rec_cross[cols[p]].append((cid, "l"))
            rec_cross[cols[p + 1]].append((cid, "r"))
            cols[p], cols[p + 1] = cols[p + 1], cols[p]
    return rec_sign, rec_cross, rec_birth, rec_death, cups, caps, kinds


def _walk_components(graph):
    """Yield (crossing stream, rotation number) per link component.

    The stream lists (crossing id, role, downward) along the orientation;
    the rotation number is half the signed count of extremum turns."""
    rec_sign, rec_cross, rec_birth, rec_death, cups, caps, _ = graph
    seen = [False] * len(rec_sign)
    for start in range(len(rec_sign)):
        if seen[start] or rec_sign[start] < 0:
            continue
        stream = []
        turns = 0
        rid = start
        while True:
            seen[rid] = True
            if rec_sign[rid] > 0:
                for cid, role in rec_cross[rid]:
                    stream.append((cid, role, False))
                cap_id, side = rec_death[rid]
                turns += 1 if side == "l" else -1
                left, right = caps[cap_id]
                rid = right if side == "l" else left
            else:
                for cid, role in reversed(rec_cross[rid]):
                    stream.append((cid, role, True))
                cup_id, side = rec_birth[rid]
                turns += 1 if side == "r" else -1
                left, right = cups[cup_id]
                rid = right if side == "l" else left
            if rid == start:
                break
        yield stream, turns // 2


def _key_take(key: tuple, cid: int):
    for n, (c0, t0) in enumerate(key):
        if c0 == cid:
            return t0, key[:n] + key[n + 1:]
    return None, key


def _pivot_power(H: RibbonHopfAlgebra, k: int) -> dict:
    powers = H._cache.setdefault("eval_pivot_powers", {})
    got = powers.get(k)
    if got is None:
        got = dict(H.unit)
        step = H.pivot() if k >= 0 else H.pivot_inv()
        for _ in range(abs(k)):
            got = H.el_mul(got, step)
        powers[k] = got
    return got


def _oracle_value(d: BichromeDiagram, H: RibbonHopfAlgebra, *,
                  first_pos=_BEAD_FIRST_POS, first_neg=_BEAD_FIRST_NEG,
                  down_s=_BEAD_DOWN_S, rot_coef=_BEAD_ROT_COEF,
                  rot_base=_BEAD_ROT_BASE, append_right=_BEAD_APPEND_RIGHT,
                  pivot_left=_BEAD_PIVOT_LEFT) -> Cyclo:
    levels = validate(d)
    if d.bottom or d.top:
        raise ValueError("bead calculus needs a closed diagram")
    for pat in levels:
        for _, color in pat:
            if color is not RED:
                raise ValueError("blue content present; the bead calculus "
                                 "covers red-only links")
    graph = _bead_graph(d)
    kinds = graph[6]
    f = H.field
    lam = compute_integrals(H).right_cointegral
    pos_terms = [(i, j, c) for (i, j), c in sorted(H.r_matrix.items())]
    neg_terms = [(i, j, c) for (i, j), c in sorted(H.r_inv.items())]

    def bead(cid, role, tix, down):
        i, j, c = (pos_terms if kinds[cid] > 0 else neg_terms)[tix]
        first = first_pos if kinds[cid] > 0 else first_neg
        idx = i if (role == "l") == first else j
        el = H.el_basis(idx)
        if down:
            el = H.el_antipode(el) if down_s > 0 else H.el_antipode_inv(el)
        return el, c

    def absorb(elem, cid, role, tix, down, coeff):
        el, c = bead(cid, role, tix, down)
        out = H.el_mul(elem, el) if append_right else H.el_mul(el, elem)
        return H.el_scale(c, out) if coeff else out

    # Branches are keyed by the term chosen at each still-open crossing;
    # everything applied later is linear, so branches that agree on the
    # open choices merge by adding their partial products.
    branches = {(): f.one}
    for stream, rot in _walk_components(graph):
        lifted = {key: H.el_scale(c, H.unit) for key, c in branches.items()}
        for cid, role, down in stream:
            nxt: dict = {}
            for key, elem in lifted.items():
                tix, rest = _key_take(key, cid)
                if tix is None:
                    terms = pos_terms if kinds[cid] > 0 else neg_terms
                    for t in range(len(terms)):
                        nk = tuple(sorted(key + ((cid, t),)))
                        grown = absorb(elem, cid, role, t, down, coeff=True)
                        _merge(H, nxt, nk, grown)
                else:
                    grown = absorb(elem, cid, role, tix, down, coeff=False)
                    _merge(H, nxt, rest, grown)
            lifted = {k: v for k, v in nxt.items() if v}
        g = _pivot_power(H, rot_coef * rot + rot_base)
        branches = {}
        for key, elem in lifted.items():
            elem = H.el_mul(g, elem) if pivot_left else H.el_mul(elem, g)
            val = f.zero
            for i, ci in elem.items():
                if lam[i]:
                    val = val + lam[i] * ci
            if val:
                branches[key] = val
    result = f.zero
    for key, v in branches.items():
        if key:
            raise ArithmeticError("crossing left open after the walk")
        result = result + v
    return result


def _merge(H, acc: dict, key, elem):
    cur = acc.get(key)
    acc[key] = elem if cur is None else H.el_add(cur, elem)


def hennings_oracle(d: BichromeDiagram, H: RibbonHopfAlgebra) -> Cyclo:
    """Value of a closed red-only link by the bead calculus.

    Independent of the folding route: crossings expand into bead sums
    walked along each component, extrema contribute pivot powers, the
    cointegral closes each component.  Must agree with f_lambda_eval.
    """
    return _oracle_value(d, H)
