"""Coend and end of the module category, with the braided Hopf structure.

Over a ribbon Hopf algebra the coend of V* (x) V is the dual space H*
carrying the coadjoint action, and the end of V (x) V* is H with the
adjoint action.  The coend is a Hopf algebra inside the module category;
it carries a pairing omega, a two-sided integral, a twist transform and
the monodromy transport into the end.  The scalars extracted here, the
modularity parameter zeta and the stabilization factors delta_plus and
delta_minus, normalize everything downstream.

Structure maps are not transcribed from closed formulas.  Each is
computed by evaluating its defining diagram at the universal point:
since i_H(phi (x) 1) = phi, feeding phi (x) 1 through the diagram with
the sparse leg moves of _legops determines the map on all of H*.  The
binary choices a flat diagram leaves open (which strand crosses over,
how dual towers collapse back onto the object) are pinned by the
identity battery: forward crossings in the product, pairing and
monodromy folds, and an inverse pivot on both collapsed legs of the
dual comparison maps.  Flipping any of these breaks at least one exact
identity on the noncommutative built-ins; the pivot direction needs the
small quantum group to show, since the doubles square it away.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ._legops import LegEngine, _acc
from .exact import Cyclo, FieldMatrix
from .hopf import AxiomReport, RibbonHopfAlgebra, compute_integrals
from .rep import (HModule, Intertwiner, decompose_regular, dual_module,
                  projective_cover_of_unit, regular_module, simple_modules,
                  tensor_module, trivial_module, twist)


# ---------------------------------------------------------------------------
# the two carrier modules and the dinatural legs
# ---------------------------------------------------------------------------

def coadjoint_module(H: RibbonHopfAlgebra) -> HModule:
    """H* as a module: (a . F)(h) = sum F(S(a') h a'') over the coproduct."""
    cached = H._cache.get("mod_coadjoint")
    if cached is not None:
        return cached
    n = H.dim
    f = H.field

    def build(i: int) -> FieldMatrix:
        mat = FieldMatrix.zeros(f, n, n)
        for (i1, i2), c in H.comult[i].items():
            s = H.antipode[i1]
            e2 = H.el_basis(i2)
            for j in range(n):
                prod = H.el_mul(H.el_mul(s, H.el_basis(j)), e2)
                for m, d in prod.items():
                    mat.set(j, m, mat.get(j, m) + c * d)
        return mat

    V = HModule(H, n, build, "coend")
    H._cache["mod_coadjoint"] = V
    return V


def adjoint_module(H: RibbonHopfAlgebra) -> HModule:
    """H as a module under a . h = sum a' h S(a'')."""
    cached = H._cache.get("mod_adjoint")
    if cached is not None:
        return cached
    n = H.dim
    f = H.field

    def build(i: int) -> FieldMatrix:
        mat = FieldMatrix.zeros(f, n, n)
        for (i1, i2), c in H.comult[i].items():
            e1 = H.el_basis(i1)
            s2 = H.antipode[i2]
            for m in range(n):
                prod = H.el_mul(H.el_mul(e1, H.el_basis(m)), s2)
                for k, d in prod.items():
                    mat.set(k, m, mat.get(k, m) + c * d)
        return mat

    V = HModule(H, n, build, "end")
    H._cache["mod_adjoint"] = V
    return V


def dinat_i(X: HModule) -> Intertwiner:
    """The matrix-coefficient map X* (x) X -> coend, phi (x) x -> phi(. x)."""
    H = X.algebra
    n, d = H.dim, X.dim
    mat = FieldMatrix.zeros(H.field, n, d * d)
    for h in range(n):
        m = X.act(h)
        for a in range(d):
            for b in range(d):
                v = m.get(a, b)
                if v:
                    mat.set(h, a * d + b, v)
    return Intertwiner(tensor_module(dual_module(X), X), coadjoint_module(H), mat)


def dinat_j(X: HModule) -> Intertwiner:
    """end -> X (x) X*, h -> the action matrix of h read as a tensor."""
    H = X.algebra
    n, d = H.dim, X.dim
    mat = FieldMatrix.zeros(H.field, d * d, n)
    for h in range(n):
        m = X.act(h)
        for a in range(d):
            for b in range(d):
                v = m.get(a, b)
                if v:
                    mat.set(a * d + b, h, v)
    return Intertwiner(adjoint_module(H), tensor_module(X, dual_module(X)), mat)


# ---------------------------------------------------------------------------
# universal-point machinery
# ---------------------------------------------------------------------------

def _engine(H: RibbonHopfAlgebra) -> LegEngine:
    eng = H._cache.get("leg_engine")
    if eng is None:
        eng = LegEngine(H)
        H._cache["leg_engine"] = eng
    return eng


def _integrals(H: RibbonHopfAlgebra):
    ints = H._cache.get("integrals")
    if ints is None:
        ints = compute_integrals(H)
        H._cache["integrals"] = ints
    return ints


def _entry_tables(H: RibbonHopfAlgebra, V: HModule):
    """Reverse indexes of the action: which algebra elements hit entry (r,c)."""
    cache = H._cache.setdefault("coend_entries", {})
    got = cache.get(id(V))
    if got is None:
        idx: dict = {}
        look: dict = {}
        for i in range(H.dim):
            m = V.act(i)
            for r in range(V.dim):
                for c in range(V.dim):
                    v = m.get(r, c)
                    if v:
                        idx.setdefault((r, c), []).append((i, v))
                        look[(i, r, c)] = v
        got = (idx, look, V)
        cache[id(V)] = got
    return got[0], got[1]


def _copair(H: RibbonHopfAlgebra) -> dict:
    """(t1, t2) -> list of (h, coeff) with a_t1 (x) a_t2 in the coproduct of a_h."""
    got = H._cache.get("coend_copair")
    if got is None:
        got = {}
        for h in range(H.dim):
            for (t1, t2), c in H.el_copower(H.el_basis(h), 2).items():
                got.setdefault((t1, t2), []).append((h, c))
        H._cache["coend_copair"] = got
    return got


def _contract_universal(H, eng, parts, state: dict) -> dict:
    """Image in the coend of a state over legs [Pk*, .., P1*, P1, .., Pk].

    The functional sends a_h to the matrix coefficients of the iterated
    coproduct of a_h in the parts, contracted against the state.  Only one
    or two parts are ever needed.
    """
    out: dict = {}
    if len(parts) == 1:
        idx, _ = _entry_tables(H, parts[0])
        for (d1, x1), c in state.items():
            for t, e in idx.get((d1, x1), ()):
                _acc(out, t, c * e)
        return {h: v for h, v in out.items() if v}
    if len(parts) != 2:
        raise ValueError("universal contraction implemented for one or two parts")
    idx1, _ = _entry_tables(H, parts[0])
    idx2, _ = _entry_tables(H, parts[1])
    copair = _copair(H)
    part: dict = {}
    for (d2, d1, x1, x2), c in state.items():
        for t1, e1 in idx1.get((d1, x1), ()):
            _acc(part.setdefault(t1, {}), (d2, x2), c * e1)
    for t1, sub in part.items():
        for (d2, x2), ca in sub.items():
            if not ca:
                continue
            for t2, e2 in idx2.get((d2, x2), ()):
                hits = copair.get((t1, t2))
                if hits:
                    for h, cc in hits:
                        _acc(out, h, ca * e2 * cc)
    return {h: v for h, v in out.items() if v}


def _pair_inputs(H):
    """Iterate (a, b, state) with state = phi_a (x) 1 (x) phi_b (x) 1."""
    n = H.dim
    for a in range(n):
        for b in range(n):
            state = {}
            for u1, c1 in H.unit.items():
                for u2, c2 in H.unit.items():
                    state[(a, u1, b, u2)] = c1 * c2
            yield a, b, state


def _fold_mu(H, eng) -> FieldMatrix:
    """Product on the coend: cross the right dual strand through the left
    pair, then read off the matrix coefficients of the tensor square."""
    n = H.dim
    reg = regular_module(H)
    regd = dual_module(reg)
    mat = FieldMatrix.zeros(H.field, n, n * n)
    for a, b, state in _pair_inputs(H):
        mods = (regd, reg, regd, reg)
        mods, state = eng.braid(mods, state, 1, inverse=False)
        mods, state = eng.braid(mods, state, 0, inverse=False)
        vec = _contract_universal(H, eng, (reg, reg), state)
        for h, c in vec.items():
            mat.set(h, a * n + b, c)
    return mat


def _fold_omega(H, eng, under: bool = False) -> FieldMatrix:
    """Pairing on the coend: monodromy of the two middle strands, then caps.

    With under=True the crossings are inverted; that mirrored diagram is
    compared against omega (S (x) id) in the identity suite."""
    n = H.dim
    reg = regular_module(H)
    regd = dual_module(reg)
    row = FieldMatrix.zeros(H.field, 1, n * n)
    for a, b, state in _pair_inputs(H):
        mods = (regd, reg, regd, reg)
        mods, state = eng.braid(mods, state, 1, inverse=under)
        mods, state = eng.braid(mods, state, 1, inverse=under)
        mods, state = eng.ev_left(mods, state, 0)
        mods, state = eng.ev_left(mods, state, 0)
        c = state.get((), None)
        if c:
            row.set(0, a * n + b, c)
    return row


def _fold_chi(H, eng) -> FieldMatrix:
    """Monodromy transport H* (x) H -> H (x) H* at the universal point:
    open a coevaluation pair, run the monodromy, close the source pair."""
    n = H.dim
    reg = regular_module(H)
    regd = dual_module(reg)
    mat = FieldMatrix.zeros(H.field, n * n, n)
    for a in range(n):
        mods = (regd, reg)
        state = {(a, u): c for u, c in H.unit.items()}
        mods, state = eng.coev_left(mods, state, 2, reg)
        mods, state = eng.braid(mods, state, 1, inverse=False)
        mods, state = eng.braid(mods, state, 1, inverse=False)
        mods, state = eng.ev_left(mods, state, 0)
        for (y, yd), c in state.items():
            mat.set(y * n + yd, a, c)
    return mat


def _delta_matrix(H) -> FieldMatrix:
    """Coproduct on the coend.  Splitting the universal pair with a left
    coevaluation gives Delta(phi) = sum_e phi(. a_e) (x) f^e, which is the
    transpose of the multiplication table."""
    n = H.dim
    mat = FieldMatrix.zeros(H.field, n * n, n)
    for h in range(n):
        for e in range(n):
            for a, c in H.mult[h][e].items():
                mat.set(h * n + e, a, c)
    return mat


def _t_matrix(H, inverse: bool = False) -> FieldMatrix:
    """Twist transform on the coend: precompose with right multiplication
    by the element the twist acts by."""
    plain = H._cache.get("twist_plain", False)
    if inverse:
        el = H.ribbon_inv if plain else H.ribbon
    else:
        el = H.ribbon if plain else H.ribbon_inv
    n = H.dim
    mat = FieldMatrix.zeros(H.field, n, n)
    for h in range(n):
        for a, c in H.el_mul(H.el_basis(h), el).items():
            mat.set(h, a, c)
    return mat


# ---------------------------------------------------------------------------
# linear solves: antipode, integral, cointegral
# ---------------------------------------------------------------------------

def _solve_antipode(f, mu, delta, eta, eps, n) -> FieldMatrix:
    """Antipode of the coend from mu (S (x) id) Delta = eta eps; the other
    composition order is verified afterwards."""
    m = FieldMatrix.zeros(f, n * n, n * n)
    rhs = FieldMatrix.zeros(f, n * n, 1)
    for a in range(n):
        for t in range(n):
            for j in range(n):
                d = delta.get(t * n + j, a)
                if not d:
                    continue
                for s in range(n):
                    col = s * n + j
                    for h in range(n):
                        v = mu.get(h, col)
                        if v:
                            m.set(h * n + a, s * n + t,
                                  m.get(h * n + a, s * n + t) + d * v)
        for h in range(n):
            e = eta.get(h, 0) * eps.get(0, a)
            if e:
                rhs.set(h * n + a, 0, e)
    sol = m.solve_right(rhs)
    if sol is None:
        raise ArithmeticError("coend antipode system is inconsistent")
    smat = FieldMatrix.zeros(f, n, n)
    for s in range(n):
        for t in range(n):
            v = sol.get(s * n + t, 0)
            if v:
                smat.set(s, t, v)
    # other side: mu (id (x) S) Delta = eta eps
    for a in range(n):
        got = {}
        for t in range(n):
            for j in range(n):
                d = delta.get(t * n + j, a)
                if not d:
                    continue
                for s in range(n):
                    v = smat.get(s, j)
                    if not v:
                        continue
                    for h in range(n):
                        w = mu.get(h, t * n + s)
                        if w:
                            _acc(got, h, d * v * w)
        for h in range(n):
            want = eta.get(h, 0) * eps.get(0, a)
            if got.get(h, f.zero) != want:
                raise ArithmeticError("coend antipode fails the right axiom")
    return smat


def _solve_integral(f, mu, eps, n) -> FieldMatrix:
    """Kernel of mu (Lambda (x) id) - Lambda eps, required 1-dimensional."""
    m = FieldMatrix.zeros(f, n * n, n)
    for h in range(n):
        for j in range(n):
            for a in range(n):
                c = mu.get(h, a * n + j)
                if a == h:
                    c = c - eps.get(0, j)
                if c:
                    m.set(h * n + j, a, c)
    kb = m.kernel_basis()
    if len(kb) != 1:
        raise ArithmeticError(
            f"coend integral space has dimension {len(kb)}, expected 1")
    return kb[0]


def _solve_cointegral(f, delta, eta, n) -> FieldMatrix:
    """Kernel of (L^co (x) id) Delta - eta L^co, required 1-dimensional."""
    m = FieldMatrix.zeros(f, n * n, n)
    for i in range(n):
        for j in range(n):
            for a in range(n):
                c = delta.get(a * n + i, j)
                if a == j:
                    c = c - eta.get(i, 0)
                if c:
                    m.set(i * n + j, a, c)
    kb = m.kernel_basis()
    if len(kb) != 1:
        raise ArithmeticError(
            f"coend cointegral space has dimension {len(kb)}, expected 1")
    return kb[0].transpose()


def _proportion(vec: FieldMatrix, target: FieldMatrix):
    """Scalar t with t * vec = target, or None."""
    f = vec.field
    t = None
    for i in range(vec.nrows):
        v = vec.get(i, 0)
        if v:
            t = target.get(i, 0) / v
            break
    if t is None:
        return None
    if vec.scale(t) == target:
        return t
    return None


# ---------------------------------------------------------------------------
# dual-tower comparison maps
# ---------------------------------------------------------------------------

def _k_matrix_for(H, eng, X: HModule) -> FieldMatrix:
    """Transpose of the dinatural leg of X*, collapsed back onto X (x) X*.

    Each of the two dual-tower collapses costs one inverse pivot.  Dropping
    either breaks the evaluation transport on the Sweedler double, and the
    direction (inverse rather than direct) only shows up once the pivot has
    order bigger than two, as for the small quantum group."""
    n, d = H.dim, X.dim
    f = H.field
    ixd = dinat_i(dual_module(X)).matrix
    A = eng.pivot_matrix(X, inverse=True)
    B = eng.pivot_matrix(dual_module(X), inverse=True)
    mat = FieldMatrix.zeros(f, d * d, n)
    for h in range(n):
        for al in range(d):
            for be in range(d):
                v = ixd.get(h, al * d + be)
                if not v:
                    continue
                for x in range(d):
                    ax = A.get(x, be)
                    if not ax:
                        continue
                    for y in range(d):
                        by = B.get(y, al)
                        if by:
                            mat.set(x * d + y, h,
                                    mat.get(x * d + y, h) + v * ax * by)
    return mat


def _l_matrix_for(H, eng, X: HModule) -> FieldMatrix:
    """Transpose of the dinatural projection of X*, read on X* (x) X.

    Same collapse convention as the inclusion side: inverse pivot on both
    legs."""
    n, d = H.dim, X.dim
    f = H.field
    jxd = dinat_j(dual_module(X)).matrix
    A = eng.pivot_matrix(dual_module(X), inverse=True)
    B = eng.pivot_matrix(dual_module(dual_module(X)), inverse=True)
    mat = FieldMatrix.zeros(f, n, d * d)
    for e in range(n):
        for al in range(d):
            for be in range(d):
                v = jxd.get(al * d + be, e)
                if not v:
                    continue
                for x in range(d):
                    ax = A.get(x, al)
                    if not ax:
                        continue
                    for a in range(d):
                        ba = B.get(a, be)
                        if ba:
                            mat.set(e, a * d + x,
                                    mat.get(e, a * d + x) + v * ax * ba)
    return mat


# ---------------------------------------------------------------------------
# the realization
# ---------------------------------------------------------------------------

@dataclass
class CoendRealization:
    algebra: RibbonHopfAlgebra
    L: HModule
    E: HModule
    mu: Intertwiner
    deltaL: Intertwiner
    antipodeL: Intertwiner
    antipodeL_inv: Intertwiner
    etaL: Intertwiner
    epsL: Intertwiner
    omega: Intertwiner
    Lambda: Intertwiner
    Lambda_co: Intertwiner
    zeta: Cyclo
    T_transform: Intertwiner
    delta_plus: Cyclo
    delta_minus: Cyclo
    drinfeld: Intertwiner
    drinfeld_inv: Intertwiner
    k_tilde: Intertwiner
    l_tilde: Intertwiner
    T_inverse: Intertwiner
    dual_transport: Intertwiner  # the cross-check inverse of the monodromy transport
    integral_side: str


def build_coend(H: RibbonHopfAlgebra) -> CoendRealization:
    cached = H._cache.get("coend")
    if cached is not None:
        return cached
    if H.r_matrix is None or H.ribbon is None:
        raise ValueError("coend construction needs quasi-triangular ribbon data")
    ints = _integrals(H)
    if not ints.unimodular:
        raise ArithmeticError("algebra is not unimodular")
    f = H.field
    n = H.dim
    eng = _engine(H)
    reg = regular_module(H)
    L = coadjoint_module(H)
    E = adjoint_module(H)
    one = trivial_module(H)
    LL = tensor_module(L, L)

    # seed sanity: phi (x) 1 really maps to phi
    imat = dinat_i(reg).matrix
    for a in range(n):
        for h in range(n):
            got = f.zero
            for u, cu in H.unit.items():
                got = got + imat.get(h, a * n + u) * cu
            if got != (f.one if h == a else f.zero):
                raise ArithmeticError("universal point is not the identity seed")

    mu = _fold_mu(H, eng)
    delta = _delta_matrix(H)
    eta = FieldMatrix.zeros(f, n, 1)
    for h in range(n):
        if H.counit[h]:
            eta.set(h, 0, H.counit[h])
    eps = FieldMatrix.zeros(f, 1, n)
    for h, c in H.unit.items():
        eps.set(0, h, c)

    smat = _solve_antipode(f, mu, delta, eta, eps, n)
    sinv = smat.inverse()

    omega = _fold_omega(H, eng)

    lam0 = _solve_integral(f, mu, eps, n)
    lamco0 = _solve_cointegral(f, delta, eta, n)

    # Absolute scale.  The solved integral and cointegral are each only
    # defined up to a factor, and the pair (sigma L, L^co / sigma) keeps
    # the normalization L^co o L = 1 while rescaling zeta by sigma^2.
    # The cointegral restricted along the leg of the unit cover must be
    # exactly the outer product of the cover's unit and counit maps; that
    # pins the cointegral, and then the integral through L^co o L = 1.
    p1, eta1, eps1 = projective_cover_of_unit(H)
    dp = p1.dim
    row = lamco0 * dinat_i(p1).matrix
    tgt = FieldMatrix.zeros(f, 1, dp * dp)
    for al in range(dp):
        va = eta1.matrix.get(al, 0)
        if not va:
            continue
        for be in range(dp):
            vb = eps1.matrix.get(0, be)
            if vb:
                tgt.set(0, al * dp + be, va * vb)
    t = _proportion(row.transpose(), tgt.transpose())
    if t is None or not t:
        raise ArithmeticError(
            "cointegral does not restrict to the counit pairing on the unit cover")
    lamco = lamco0.scale(t)
    kappa = (lamco * lam0).get(0, 0)
    if not kappa:
        raise ArithmeticError("cointegral pairs to zero against the integral")
    lam = lam0.scale(kappa.inverse())

    # cross-check against the algebra level: the coend integral must be a
    # scalar multiple of a cointegral of H itself
    side = "right"
    target = FieldMatrix.zeros(f, n, 1)
    for i, v in enumerate(ints.right_cointegral):
        if v:
            target.set(i, 0, v)
    if _proportion(lam, target) is None:
        side = "left"
        target = FieldMatrix.zeros(f, n, 1)
        for i, v in enumerate(ints.left_cointegral):
            if v:
                target.set(i, 0, v)
        if _proportion(lam, target) is None:
            raise ArithmeticError(
                "coend integral is not proportional to either cointegral of H")

    wrow = FieldMatrix.zeros(f, 1, n)
    for j in range(n):
        acc = f.zero
        for a in range(n):
            v = lam.get(a, 0)
            if v:
                acc = acc + v * omega.get(0, a * n + j)
        if acc:
            wrow.set(0, j, acc)
    zeta = _proportion(lamco.transpose(), wrow.transpose())
    if zeta is None:
        raise ArithmeticError("pairing of the integral is not a cointegral multiple")
    if not zeta:
        raise ArithmeticError("not factorizable")

    tmat = _t_matrix(H)
    tinv = _t_matrix(H, inverse=True)
    if tmat * tinv != FieldMatrix.identity(f, n):
        raise ArithmeticError("twist transform is not invertible")
    delta_plus = (eps * (tmat * lam)).get(0, 0)
    delta_minus = (eps * (tinv * lam)).get(0, 0)
    if not (delta_plus * delta_minus):
        raise ArithmeticError("twist degenerate")

    chi = _fold_chi(H, eng)
    jmat = dinat_j(reg).matrix
    dmat = jmat.solve_right(chi)
    if dmat is None:
        raise ArithmeticError("monodromy transport has no universal solution")
    try:
        dinv = dmat.inverse()
    except ZeroDivisionError:
        raise ArithmeticError("not factorizable") from None

    ktilde = jmat.solve_right(_k_matrix_for(H, eng, reg))
    if ktilde is None:
        raise ArithmeticError("dual comparison map has no universal solution")
    lfull = _l_matrix_for(H, eng, reg)
    ltilde = FieldMatrix.zeros(f, n, n)
    for e in range(n):
        for a in range(n):
            acc = f.zero
            for u, cu in H.unit.items():
                acc = acc + lfull.get(e, a * n + u) * cu
            if acc:
                ltilde.set(e, a, acc)

    # Inverse transport out of the end.  Two integral insertions, matching
    # the quadratic scaling of zeta: first pair one coproduct leg of the
    # integral against the end through the dual comparison map, then run
    # the result through the antipode-dressed pairing against a second
    # coproduct of the integral.
    dl = delta * lam
    bmat = FieldMatrix.zeros(f, n, n)
    for i in range(n):
        for j in range(n):
            c = dl.get(i * n + j, 0)
            if not c:
                continue
            for e in range(n):
                v = ltilde.get(e, j)
                if v:
                    bmat.set(i, e, bmat.get(i, e) + c * v)
    gram_s = FieldMatrix.zeros(f, n, n)
    for x in range(n):
        for y in range(n):
            acc = f.zero
            for s in range(n):
                v = smat.get(s, y)
                if v:
                    acc = acc + omega.get(0, x * n + s) * v
            if acc:
                gram_s.set(x, y, acc)
    amat = FieldMatrix.zeros(f, n, n)
    for o in range(n):
        for x in range(n):
            acc = f.zero
            for a in range(n):
                c = dl.get(a * n + o, 0)
                if c:
                    acc = acc + gram_s.get(x, a) * c
            if acc:
                amat.set(o, x, acc)
    dtilde = amat * bmat
    zid = FieldMatrix.identity(f, n).scale(zeta)
    if dtilde * dmat != zid or dmat * dtilde != zid:
        raise ArithmeticError("inverse transport cross-check failed")

    real = CoendRealization(
        algebra=H,
        L=L,
        E=E,
        mu=Intertwiner(LL, L, mu),
        deltaL=Intertwiner(L, LL, delta),
        antipodeL=Intertwiner(L, L, smat),
        antipodeL_inv=Intertwiner(L, L, sinv),
        etaL=Intertwiner(one, L, eta),
        epsL=Intertwiner(L, one, eps),
        omega=Intertwiner(LL, one, omega),
        Lambda=Intertwiner(one, L, lam),
        Lambda_co=Intertwiner(L, one, lamco),
        zeta=zeta,
        T_transform=Intertwiner(L, L, tmat),
        delta_plus=delta_plus,
        delta_minus=delta_minus,
        drinfeld=Intertwiner(L, E, dmat),
        drinfeld_inv=Intertwiner(E, L, dinv),
        k_tilde=Intertwiner(dual_module(L), E, ktilde),
        l_tilde=Intertwiner(L, dual_module(E), ltilde),
        T_inverse=Intertwiner(L, L, tinv),
        dual_transport=Intertwiner(E, L, dtilde),
        integral_side=side,
    )
    H._cache["coend"] = real
    return real


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

def _braid_matrix(eng, V, W, inverse: bool = False) -> FieldMatrix:
    f = eng.field
    dv, dw = V.dim, W.dim
    mat = FieldMatrix.zeros(f, dv * dw, dv * dw)
    for cv in range(dv):
        for cw in range(dw):
            for (rw, rv), c in eng._braid_col(V, W, inverse, (cv, cw)).items():
                mat.set(rw * dv + rv, cv * dw + cw, c)
    return mat


def _mu_columns(mu: FieldMatrix, n: int) -> dict:
    cols: dict = {}
    for a in range(n):
        for b in range(n):
            entries = []
            for h in range(n):
                v = mu.get(h, a * n + b)
                if v:
                    entries.append((h, v))
            cols[(a, b)] = entries
    return cols


def _delta_columns(delta: FieldMatrix, n: int) -> dict:
    cols: dict = {}
    for a in range(n):
        entries = []
        for h in range(n):
            for e in range(n):
                v = delta.get(h * n + e, a)
                if v:
                    entries.append(((h, e), v))
        cols[a] = entries
    return cols


def coend_identity_suite(C: CoendRealization) -> AxiomReport:
    """Exact re-verification of the Hopf, pairing, integral and transport
    identities of the realization.  Failures are reported, not raised."""
    start = time.perf_counter()
    rep = AxiomReport()
    H = C.algebra
    f = H.field
    n = H.dim
    eng = _engine(H)
    mu = C.mu.matrix
    delta = C.deltaL.matrix
    smat = C.antipodeL.matrix
    sinv = C.antipodeL_inv.matrix
    eta = C.etaL.matrix
    eps = C.epsL.matrix
    omega = C.omega.matrix
    lam = C.Lambda.matrix
    lamco = C.Lambda_co.matrix
    mu_cols = _mu_columns(mu, n)
    d_cols = _delta_columns(delta, n)

    def dicts_equal(x: dict, y: dict) -> bool:
        for k, v in x.items():
            if y.get(k, f.zero) != v:
                return False
        for k, v in y.items():
            if k not in x and v:
                return False
        return True

    # associativity and unit
    ok = True
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs: dict = {}
                for h, v in mu_cols[(a, b)]:
                    for k, w in mu_cols[(h, c)]:
                        _acc(lhs, k, v * w)
                rhs: dict = {}
                for h, v in mu_cols[(b, c)]:
                    for k, w in mu_cols[(a, h)]:
                        _acc(rhs, k, v * w)
                if not dicts_equal(lhs, rhs):
                    ok = False
    rep.add("product associative", ok)

    ok = True
    for a in range(n):
        left: dict = {}
        right: dict = {}
        for h in range(n):
            e = eta.get(h, 0)
            if e:
                for k, w in mu_cols[(h, a)]:
                    _acc(left, k, e * w)
                for k, w in mu_cols[(a, h)]:
                    _acc(right, k, e * w)
        want = {a: f.one}
        if not (dicts_equal(left, want) and dicts_equal(right, want)):
            ok = False
    rep.add("product unit", ok)

    # coassociativity and counit
    ok = True
    for a in range(n):
        lhs, rhs = {}, {}
        for (h, e), v in d_cols[a]:
            for (p, q), w in d_cols[h]:
                _acc(lhs, (p, q, e), v * w)
            for (p, q), w in d_cols[e]:
                _acc(rhs, (h, p, q), v * w)
        if not dicts_equal(lhs, rhs):
            ok = False
    rep.add("coproduct coassociative", ok)

    ok = True
    for a in range(n):
        left, right = {}, {}
        for (h, e), v in d_cols[a]:
            _acc(left, e, v * eps.get(0, h))
            _acc(right, h, v * eps.get(0, e))
        want = {a: f.one}
        if not (dicts_equal({k: v for k, v in left.items() if v}, want)
                and dicts_equal({k: v for k, v in right.items() if v}, want)):
            ok = False
    rep.add("coproduct counit", ok)

    # bialgebra compatibility in the braided sense; full below a size
    # cutoff, a fixed deterministic sample of columns above it
    if n <= 8:
        sample = [(a, b) for a in range(n) for b in range(n)]
        note = "all columns"
    else:
        sample = [(a, b) for a in range(n) for b in range(n)
                  if (5 * a + 3 * b) % 21 == 0]
        note = f"{len(sample)} of {n * n} columns"
    ok = True
    for a, b in sample:
        lhs: dict = {}
        for h, v in mu_cols[(a, b)]:
            for (p, q), w in d_cols[h]:
                _acc(lhs, (p, q), v * w)
        rhs: dict = {}
        for (p, q), v in d_cols[a]:
            for (r, s), w in d_cols[b]:
                c = v * w
                for (rr, qq), bb in eng._braid_col(C.L, C.L, False, (q, r)).items():
                    cc = c * bb
                    for h1, m1 in mu_cols[(p, rr)]:
                        for h2, m2 in mu_cols[(qq, s)]:
                            _acc(rhs, (h1, h2), cc * m1 * m2)
        if not dicts_equal({k: v for k, v in lhs.items() if v},
                           {k: v for k, v in rhs.items() if v}):
            ok = False
    rep.add("product-coproduct compatibility", ok, note)

    # antipode axioms
    okl = ok_r = True
    for a in range(n):
        gotl: dict = {}
        gotr: dict = {}
        for (t, j), d in d_cols[a]:
            for s in range(n):
                v = smat.get(s, t)
                if v:
                    for h, w in mu_cols[(s, j)]:
                        _acc(gotl, h, d * v * w)
                v = smat.get(s, j)
                if v:
                    for h, w in mu_cols[(t, s)]:
                        _acc(gotr, h, d * v * w)
        want = {h: eta.get(h, 0) * eps.get(0, a) for h in range(n)
                if eta.get(h, 0) * eps.get(0, a)}
        if not dicts_equal({k: v for k, v in gotl.items() if v}, want):
            okl = False
        if not dicts_equal({k: v for k, v in gotr.items() if v}, want):
            ok_r = False
    rep.add("antipode axiom left", okl)
    rep.add("antipode axiom right", ok_r)

    # antipode against the coproduct, with the braiding
    c_ll = _braid_matrix(eng, C.L, C.L)
    lhs_m = delta * smat
    rhs_m = c_ll * (smat.kron(smat) * delta)
    rep.add("antipode flips coproduct through braiding", lhs_m == rhs_m)

    # pairing identities
    ok = True
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs_v = f.zero
                for w, v in mu_cols[(y, z)]:
                    lhs_v = lhs_v + omega.get(0, x * n + w) * v
                rhs_v = f.zero
                for (p, q), v in d_cols[x]:
                    rhs_v = rhs_v + v * omega.get(0, q * n + y) * omega.get(0, p * n + z)
                if lhs_v != rhs_v:
                    ok = False
    rep.add("pairing splits the product", ok)

    ok = True
    for x in range(n):
        for y in range(n):
            lhs_v = f.zero
            rhs_v = f.zero
            for s in range(n):
                v = smat.get(s, x)
                if v:
                    lhs_v = lhs_v + v * omega.get(0, s * n + y)
                v = smat.get(s, y)
                if v:
                    rhs_v = rhs_v + v * omega.get(0, x * n + s)
            if lhs_v != rhs_v:
                ok = False
    rep.add("pairing balances the antipode", ok)

    ok = True
    for x in range(n):
        for y in range(n):
            lhs_v = f.zero
            for (rw, rv), c in eng._braid_col(C.L, C.L, True, (x, y)).items():
                lhs_v = lhs_v + c * omega.get(0, rw * n + rv)
            rhs_v = f.zero
            for s in range(n):
                vx = smat.get(s, x)
                if not vx:
                    continue
                for t in range(n):
                    vy = smat.get(t, y)
                    if vy:
                        rhs_v = rhs_v + vx * vy * omega.get(0, s * n + t)
            if lhs_v != rhs_v:
                ok = False
    rep.add("pairing through inverse braiding equals doubled antipode", ok)

    # the mirrored pairing diagram evaluates to omega (S (x) id)
    mirrored = _fold_omega(H, eng, under=True)
    ok = True
    for x in range(n):
        for y in range(n):
            v = f.zero
            for s in range(n):
                w = smat.get(s, x)
                if w:
                    v = v + w * omega.get(0, s * n + y)
            if v != mirrored.get(0, x * n + y):
                ok = False
    rep.add("mirrored pairing diagram", ok)

    # integrals
    lhs_m = FieldMatrix.zeros(f, n, n)
    rhs_m = FieldMatrix.zeros(f, n, n)
    for j in range(n):
        for a in range(n):
            v = lam.get(a, 0)
            if v:
                for h, w in mu_cols[(a, j)]:
                    lhs_m.set(h, j, lhs_m.get(h, j) + v * w)
                for h, w in mu_cols[(j, a)]:
                    rhs_m.set(h, j, rhs_m.get(h, j) + v * w)
    right_side = lam * eps
    rep.add("integral defining equation", lhs_m == right_side)
    rep.add("integral two-sided", rhs_m == right_side)

    ok_r = True
    ok_l = True
    for j in range(n):
        vec_r: dict = {}
        vec_l: dict = {}
        for (p, q), v in d_cols[j]:
            _acc(vec_r, q, lamco.get(0, p) * v)
            _acc(vec_l, p, lamco.get(0, q) * v)
        want = {h: eta.get(h, 0) * lamco.get(0, j) for h in range(n)
                if eta.get(h, 0) * lamco.get(0, j)}
        if not dicts_equal({k: v for k, v in vec_r.items() if v}, want):
            ok_r = False
        if not dicts_equal({k: v for k, v in vec_l.items() if v}, want):
            ok_l = False
    rep.add("cointegral defining equation", ok_r)
    rep.add("cointegral two-sided", ok_l)

    rep.add("integral normalization", (lamco * lam).get(0, 0) == f.one)
    rep.add("antipode fixes integral", smat * lam == lam)

    dlam = delta * lam
    ok = True
    vec_a: dict = {}
    vec_b: dict = {}
    for i in range(n):
        for j in range(n):
            v = dlam.get(i * n + j, 0)
            if not v:
                continue
            for s in range(n):
                w = smat.get(s, i)
                if w:
                    _acc(vec_a, (s, j), v * w)
                w = smat.get(s, j)
                if w:
                    _acc(vec_b, (i, s), v * w)
    rep.add("coproduct of integral balances antipode",
            dicts_equal({k: v for k, v in vec_a.items() if v},
                        {k: v for k, v in vec_b.items() if v}))

    vec_a = {}
    for i in range(n):
        for j in range(n):
            v = dlam.get(i * n + j, 0)
            if not v:
                continue
            for s in range(n):
                ws = smat.get(s, i)
                if not ws:
                    continue
                for t in range(n):
                    wt = sinv.get(t, j)
                    if wt:
                        _acc(vec_a, (s, t), v * ws * wt)
    silam = delta * (sinv * lam)
    vec_b = {}
    for i in range(n):
        for j in range(n):
            v = silam.get(i * n + j, 0)
            if v:
                vec_b[(i, j)] = v
    rep.add("antipode square of integral coproduct",
            dicts_equal({k: v for k, v in vec_a.items() if v}, vec_b))

    wrow = FieldMatrix.zeros(f, 1, n)
    for j in range(n):
        acc2 = f.zero
        for a in range(n):
            v = lam.get(a, 0)
            if v:
                acc2 = acc2 + v * omega.get(0, a * n + j)
        wrow.set(0, j, acc2)
    rep.add("modularity parameter equation", wrow == lamco.scale(C.zeta))
    rep.add("stabilization factors multiply to the modularity parameter",
            C.delta_minus * C.delta_plus == C.zeta)

    # cointegral against the projective legs: zero off the unit cover and
    # exactly the outer product of the cover's unit and counit maps on it
    p1, eta1, eps1 = projective_cover_of_unit(H)
    ok_zero = True
    ok_unit = True
    for s in decompose_regular(H):
        pv = s.module
        d = pv.dim
        ipv = dinat_i(pv).matrix
        m = FieldMatrix.zeros(f, d, d)
        for al in range(d):
            for be in range(d):
                acc2 = f.zero
                for h in range(n):
                    v = lamco.get(0, h)
                    if v:
                        acc2 = acc2 + v * ipv.get(h, al * d + be)
                if acc2:
                    m.set(al, be, acc2)
        if pv is p1:
            for al in range(d):
                for be in range(d):
                    want = eta1.matrix.get(al, 0) * eps1.matrix.get(0, be)
                    if m.get(al, be) != want:
                        ok_unit = False
        else:
            if not m.is_zero():
                ok_zero = False
    rep.add("cointegral kills non-unit projective legs", ok_zero)
    rep.add("cointegral on the unit cover is the counit pairing", ok_unit)

    # twist transform naturality
    ok = True
    for V in (regular_module(H), simple_modules(H)[0]):
        iv = dinat_i(V).matrix
        th = twist(V).matrix
        lhs_m = C.T_transform.matrix * iv
        rhs_m = iv * FieldMatrix.identity(f, V.dim).kron(th)
        if lhs_m != rhs_m:
            ok = False
    rep.add("twist transform matches the twist on legs", ok)

    # transports
    dmat = C.drinfeld.matrix
    rep.add("monodromy transport invertible",
            C.drinfeld_inv.matrix * dmat == FieldMatrix.identity(f, n))
    zid = FieldMatrix.identity(f, n).scale(C.zeta)
    rep.add("inverse transport cross-check",
            C.dual_transport.matrix * dmat == zid
            and dmat * C.dual_transport.matrix == zid)
    rep.add("integral source at the algebra level", True, C.integral_side)

    ktilde = C.k_tilde.matrix
    ltilde = C.l_tilde.matrix
    ok = True
    for a in range(n):
        for b in range(n):
            acc2 = f.zero
            for e in range(n):
                acc2 = acc2 + ltilde.get(e, a) * dmat.get(e, b)
            if acc2 != omega.get(0, a * n + b):
                ok = False
    rep.add("dual comparison pairs to the Hopf pairing", ok)

    gl = eng.pivot_matrix(C.L)
    ok = True
    for b in range(n):
        for a in range(n):
            acc2 = f.zero
            for e in range(n):
                acc2 = acc2 + ltilde.get(e, b) * ktilde.get(e, a)
            if acc2 != gl.get(a, b):
                ok = False
    rep.add("dual comparison transports the right evaluation", ok)

    gli = eng.pivot_matrix(C.L, inverse=True)
    ok = True
    for p in range(n):
        for q in range(n):
            acc2 = f.zero
            for i in range(n):
                for b in range(n):
                    v = gli.get(b, i)
                    if v:
                        acc2 = acc2 + v * ktilde.get(p, i) * ltilde.get(q, b)
            want = f.one if p == q else f.zero
            if acc2 != want:
                ok = False
    rep.add("dual comparison transports the right coevaluation", ok)

    hstar = dual_module(regular_module(H))
    rep.add("dual comparison consistent across objects, inclusion side",
            dinat_j(hstar).matrix * ktilde == _k_matrix_for(H, eng, hstar))
    rep.add("dual comparison consistent across objects, projection side",
            ltilde * dinat_i(hstar).matrix == _l_matrix_for(H, eng, hstar))

    rep.elapsed = time.perf_counter() - start
    return rep
