"""The module category of H: objects, intertwiners, duality, decomposition.

Modules carry one action matrix per H-basis element. Tensor products act
through the coproduct, duals through the antipode transpose, and the right
duality maps carry the pivot. Intertwiner spaces are solved as linear systems
over a small generating set of H, which is enough because intertwining with
generators forces intertwining with all products.

decompose_regular splits H itself: Dickson's trace form gives the radical,
the semisimple quotient is cut into blocks by factoring minimal polynomials
of central (then corner) elements, and the resulting primitive idempotents
are lifted back through the radical by Newton iteration. Simple modules are
the tops of the indecomposable projective summands.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Cyclo, FieldMatrix
from ._rootutil import factors_over_cyclotomic
from .hopf import RibbonHopfAlgebra, _SpanTracker, _acc


class HModule:
    """A finite-dimensional left H-module given by its action matrices.

    `action` is either a full list of FieldMatrix (one per H-basis element)
    or a callable index -> FieldMatrix; the callable form materializes
    matrices on demand, which keeps large tensor products affordable when
    only a few basis actions are ever needed.
    """

    def __init__(self, algebra: RibbonHopfAlgebra, dim: int, action,
                 label: str = ""):
        self.algebra = algebra
        self.dim = dim
        if callable(action):
            self._builder = action
            self._built = {}
        else:
            self._builder = None
            self._built = None
            self.action = action      # eager list
        self.label = label or f"module{dim}"

    def __repr__(self):
        return f"HModule({self.label}, dim={self.dim})"

    def act(self, i: int) -> FieldMatrix:
        if self._builder is None:
            return self.action[i]
        m = self._built.get(i)
        if m is None:
            m = self._builder(i)
            self._built[i] = m
        return m

    def materialized_action(self) -> list:
        return [self.act(i) for i in range(self.algebra.dim)]

    def act_element(self, x: dict) -> FieldMatrix:
        """Action matrix of a sparse H-element."""
        out = FieldMatrix.zeros(self.algebra.field, self.dim, self.dim)
        for i, c in x.items():
            out = out + self.act(i).scale(c)
        return out

    def verify(self) -> bool:
        """Module axiom on all basis pairs, plus unit."""
        H = self.algebra
        if not self.act_element(H.unit) == FieldMatrix.identity(H.field, self.dim):
            return False
        for i in range(H.dim):
            for j in range(H.dim):
                lhs = self.act(i) * self.act(j)
                rhs = self.act_element(H.mult[i][j])
                if lhs != rhs:
                    return False
        return True

    def to_json(self) -> dict:
        def mat(m: FieldMatrix) -> list:
            return [[",".join(str(c) for c in m.get(r, s).in_field(self.algebra.field).coeffs)
                     for s in range(m.ncols)] for r in range(m.nrows)]
        return {"dim": self.dim, "label": self.label,
                "action": [mat(a) for a in self.materialized_action()]}


class Intertwiner:
    """An H-linear map between modules, stored as a plain matrix."""

    def __init__(self, source: HModule, target: HModule, matrix: FieldMatrix):
        if source.algebra is not target.algebra:
            raise ValueError("intertwiner between modules over different algebras")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __repr__(self):
        return f"Intertwiner({self.source.label} -> {self.target.label})"

    def verify(self) -> bool:
        H = self.source.algebra
        for g in H.generating_set():
            if self.matrix * self.source.act(g) != self.target.act(g) * self.matrix:
                return False
        return True

    def compose(self, other: "Intertwiner") -> "Intertwiner":
        """self after other."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("composition dimension mismatch")
        return Intertwiner(other.source, self.target, self.matrix * other.matrix)

    def tensor(self, other: "Intertwiner") -> "Intertwiner":
        return Intertwiner(tensor_module(self.source, other.source),
                           tensor_module(self.target, other.target),
                           self.matrix.kron(other.matrix))

    def scale(self, c) -> "Intertwiner":
        return Intertwiner(self.source, self.target, self.matrix.scale(c))

    def __add__(self, other: "Intertwiner") -> "Intertwiner":
        return Intertwiner(self.source, self.target, self.matrix + other.matrix)

    def is_invertible(self) -> bool:
        return (self.source.dim == self.target.dim
                and self.matrix.rank() == self.source.dim)


# ---------------------------------------------------------------------------
# object constructors
# ---------------------------------------------------------------------------

def trivial_module(H: RibbonHopfAlgebra) -> HModule:
    key = "mod_trivial"
    if key not in H._cache:
        action = [FieldMatrix.from_rows(H.field, [[H.counit[i]]])
                  for i in range(H.dim)]
        H._cache[key] = HModule(H, 1, action, "1")
    return H._cache[key]


def regular_module(H: RibbonHopfAlgebra) -> HModule:
    key = "mod_regular"
    if key not in H._cache:
        action = []
        for i in range(H.dim):
            m = FieldMatrix.zeros(H.field, H.dim, H.dim)
            for j in range(H.dim):
                for k, c in H.mult[i][j].items():
                    m.set(k, j, c)
            action.append(m)
        H._cache[key] = HModule(H, H.dim, action, "H")
    return H._cache[key]


def tensor_module(V: HModule, W: HModule) -> HModule:
    if V.algebra is not W.algebra:
        raise ValueError("tensor of modules over different algebras")
    H = V.algebra

    def build(i: int) -> FieldMatrix:
        m = FieldMatrix.zeros(H.field, V.dim * W.dim, V.dim * W.dim)
        for (j, k), c in H.comult[i].items():
            m = m + V.act(j).kron(W.act(k)).scale(c)
        return m

    return HModule(H, V.dim * W.dim, build, f"({V.label}(x){W.label})")


def dual_module(V: HModule) -> HModule:
    # memoized on the module: callers compare legs by identity
    cached = getattr(V, "_dual", None)
    if cached is not None:
        return cached
    H = V.algebra

    def build(i: int) -> FieldMatrix:
        return V.act_element(H.antipode[i]).transpose()

    dual = HModule(H, V.dim, build, f"({V.label})*")
    V._dual = dual
    return dual


def ev_left(V: HModule) -> Intertwiner:
    """V* (x) V -> 1, the plain pairing."""
    H = V.algebra
    d = V.dim
    m = FieldMatrix.zeros(H.field, 1, d * d)
    for a in range(d):
        m.set(0, a * d + a, H.field.one)
    return Intertwiner(tensor_module(dual_module(V), V), trivial_module(H), m)


def coev_left(V: HModule) -> Intertwiner:
    """1 -> V (x) V*, the plain copairing."""
    H = V.algebra
    d = V.dim
    m = FieldMatrix.zeros(H.field, d * d, 1)
    for a in range(d):
        m.set(a * d + a, 0, H.field.one)
    return Intertwiner(trivial_module(H), tensor_module(V, dual_module(V)), m)


def ev_right(V: HModule) -> Intertwiner:
    """V (x) V* -> 1, pairing twisted by the pivot g."""
    H = V.algebra
    d = V.dim
    g = V.act_element(H.pivot())
    m = FieldMatrix.zeros(H.field, 1, d * d)
    for b in range(d):
        for a in range(d):
            c = g.get(a, b)
            if c:
                m.set(0, b * d + a, c)
    return Intertwiner(tensor_module(V, dual_module(V)), trivial_module(H), m)


def coev_right(V: HModule) -> Intertwiner:
    """1 -> V* (x) V, copairing twisted by the inverse pivot."""
    H = V.algebra
    d = V.dim
    gi = V.act_element(H.pivot_inv())
    m = FieldMatrix.zeros(H.field, d * d, 1)
    for i in range(d):
        for b in range(d):
            c = gi.get(b, i)
            if c:
                m.set(i * d + b, 0, c)
    return Intertwiner(trivial_module(H), tensor_module(dual_module(V), V), m)


def braiding(V: HModule, W: HModule) -> Intertwiner:
    """c_{V,W} = flip after acting by the R-matrix."""
    H = V.algebra
    dv, dw = V.dim, W.dim
    acted = FieldMatrix.zeros(H.field, dv * dw, dv * dw)
    for (i, j), c in H.r_matrix.items():
        acted = acted + V.act(i).kron(W.act(j)).scale(c)
    flipped = FieldMatrix.zeros(H.field, dw * dv, dv * dw)
    for v in range(dv):
        for w in range(dw):
            for col in range(dv * dw):
                c = acted.get(v * dw + w, col)
                if c:
                    flipped.set(w * dv + v, col, c)
    return Intertwiner(tensor_module(V, W), tensor_module(W, V), flipped)


def twist(V: HModule) -> Intertwiner:
    """theta_V, the action of the inverse ribbon element.

    With the braiding c = flip . R and the coproduct identity
    Delta(v) (R_21 R) = v (x) v, only the inverse makes
    theta_{V(x)W} = c_{W,V} c_{V,W} (theta_V (x) theta_W) come out right;
    acting by v itself produces the inverse monodromy instead.
    """
    H = V.algebra
    el = H.ribbon if H._cache.get("twist_plain", False) else H.ribbon_inv
    return Intertwiner(V, V, V.act_element(el))


def twist_inv(V: HModule) -> Intertwiner:
    H = V.algebra
    el = H.ribbon_inv if H._cache.get("twist_plain", False) else H.ribbon
    return Intertwiner(V, V, V.act_element(el))


def double_dual_iso(V: HModule) -> Intertwiner:
    """V -> V**, the pivotal identification x -> <., g x>."""
    H = V.algebra
    return Intertwiner(V, dual_module(dual_module(V)),
                       V.act_element(H.pivot()))


# ---------------------------------------------------------------------------
# intertwiner spaces
# ---------------------------------------------------------------------------

def hom_space(V: HModule, W: HModule) -> list:
    """Canonical basis of the space of H-linear maps V -> W.

    The unknown matrix is vectorized row-major; for each algebra generator g
    the condition X rho_V(g) = rho_W(g) X contributes a block
    kron(I, rho_V(g)^T) - kron(rho_W(g), I).
    """
    if V.algebra is not W.algebra:
        raise ValueError("hom between modules over different algebras")
    H = V.algebra
    f = H.field
    gens = H.generating_set()
    n_unknowns = W.dim * V.dim
    eye_w = FieldMatrix.identity(f, W.dim)
    eye_v = FieldMatrix.identity(f, V.dim)
    blocks = []
    for g in gens:
        a = eye_w.kron(V.act(g).transpose())
        b = W.act(g).kron(eye_v)
        blocks.append(a - b)
    if not blocks:
        system = FieldMatrix.zeros(f, 1, n_unknowns)
    else:
        system = blocks[0]
        for extra in blocks[1:]:
            system = system.col_join(extra)
    out = []
    for vec in system.kernel_basis():
        m = FieldMatrix.zeros(f, W.dim, V.dim)
        for r in range(W.dim):
            for c in range(V.dim):
                val = vec.get(r * V.dim + c, 0)
                if val:
                    m.set(r, c, val)
        out.append(Intertwiner(V, W, m))
    return out


def modules_isomorphic(V: HModule, W: HModule) -> bool:
    """Search hom bases for a two-sided invertible pair."""
    if V.dim != W.dim:
        return False
    fwd = hom_space(V, W)
    for h in fwd:
        if h.is_invertible():
            return True
    # an isomorphism, if any, is a combination; for indecomposables a basis
    # sweep can in principle miss it, so also try pair sums
    for i in range(len(fwd)):
        for j in range(i + 1, len(fwd)):
            if (fwd[i] + fwd[j]).is_invertible():
                return True
    return False


# ---------------------------------------------------------------------------
# polynomial helpers over the coefficient field (dense, low degree first)
# ---------------------------------------------------------------------------

def _p_normalize(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _p_mul(f, p: list, q: list) -> list:
    out = [f.zero] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _p_normalize(out)


def _p_divmod(f, p: list, q: list):
    p = list(p)
    d = len(q) - 1
    lead_inv = q[-1].inverse()
    quot = [f.zero] * max(len(p) - d, 0)
    while len(p) - 1 >= d and p:
        c = p[-1] * lead_inv
        k = len(p) - 1 - d
        quot[k] = c
        for i in range(len(q)):
            p[k + i] = p[k + i] - c * q[i]
        _p_normalize(p)
        if not p:
            break
    return _p_normalize(quot), p


def _p_xgcd(f, p: list, q: list):
    """(g, s, t) with s p + t q = g, g monic."""
    r0, r1 = list(p), list(q)
    s0, s1 = [f.one], []
    t0, t1 = [], [f.one]
    while r1:
        quot, rem = _p_divmod(f, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _p_normalize([a - b for a, b in
                                   _zip_pad(f, s0, _p_mul(f, quot, s1))])
        t0, t1 = t1, _p_normalize([a - b for a, b in
                                   _zip_pad(f, t0, _p_mul(f, quot, t1))])
    if r0:
        inv = r0[-1].inverse()
        r0 = [c * inv for c in r0]
        s0 = [c * inv for c in s0]
        t0 = [c * inv for c in t0]
    return r0, s0, t0


def _zip_pad(f, p: list, q: list):
    n = max(len(p), len(q))
    p = p + [f.zero] * (n - len(p))
    q = q + [f.zero] * (n - len(q))
    return list(zip(p, q))


# ---------------------------------------------------------------------------
# decomposition of the regular module
# ---------------------------------------------------------------------------

@dataclass
class ProjectiveSummand:
    idempotent: Intertwiner        # regular -> regular projection
    module: HModule                # the summand P
    multiplicity: int
    top: HModule                   # P / rad P, a simple module
    include: Intertwiner           # P -> regular
    project: Intertwiner           # regular -> P


def radical_rows(H: RibbonHopfAlgebra) -> FieldMatrix:
    """Basis of the Jacobson radical via Dickson's trace-form criterion."""
    key = "radical_rows"
    if key in H._cache:
        return H._cache[key]
    n = H.dim
    f = H.field
    # T[i][j] = trace of left multiplication by a_i a_j
    trace_of = [f.zero] * n  # trace of L_{a_k}
    for k in range(n):
        t = f.zero
        for m in range(n):
            c = H.mult[k][m].get(m)
            if c:
                t = t + c
        trace_of[k] = t
    form = FieldMatrix.zeros(f, n, n)
    for i in range(n):
        for j in range(n):
            t = f.zero
            for k, c in H.mult[i][j].items():
                if trace_of[k]:
                    t = t + c * trace_of[k]
            if t:
                form.set(i, j, t)
    kb = form.kernel_basis()
    rows = FieldMatrix.zeros(f, len(kb), n)
    for r, vec in enumerate(kb):
        for c in range(n):
            val = vec.get(c, 0)
            if val:
                rows.set(r, c, val)
    rows = rows.rref()[0] if kb else rows
    H._cache[key] = rows
    return rows


class _Quotient:
    """H / J with a fixed complement basis and exact projection."""

    def __init__(self, H: RibbonHopfAlgebra):
        self.H = H
        f = H.field
        rad = radical_rows(H)
        red, pivots = rad.rref()
        self.rad_red = red
        self.rad_pivots = list(pivots)
        self.basis = [i for i in range(H.dim) if i not in set(pivots)]
        self.dim = len(self.basis)
        self.index_of = {b: i for i, b in enumerate(self.basis)}

    def project(self, x: dict) -> dict:
        """Sparse H-element to sparse quotient coords."""
        f = self.H.field
        dense = [f.zero] * self.H.dim
        for k, c in x.items():
            dense[k] = c
        for r, p in enumerate(self.rad_pivots):
            c = dense[p]
            if c:
                for j in range(self.H.dim):
                    v = self.rad_red.get(r, j)
                    if v:
                        dense[j] = dense[j] - c * v
        out = {}
        for b, i in self.index_of.items():
            if dense[b]:
                out[i] = dense[b]
        return out

    def lift(self, x: dict) -> dict:
        return {self.basis[i]: c for i, c in x.items()}

    def mul(self, x: dict, y: dict) -> dict:
        return self.project(self.H.el_mul(self.lift(x), self.lift(y)))

    def unit(self) -> dict:
        return self.project(self.H.unit)


def _quotient_min_poly(Q: _Quotient, x: dict, unit: dict) -> list:
    """Monic minimal polynomial of x in the corner with the given unit."""
    f = Q.H.field
    span = _SpanTracker(f, Q.dim)
    powers = [unit]
    span.insert(unit)
    cur = unit
    while True:
        cur = Q.mul(cur, x)
        if not span.insert(cur):
            break
        powers.append(cur)
    # express cur in the powers: solve sum c_k powers[k] = cur
    m = FieldMatrix.zeros(f, Q.dim, len(powers))
    for k, p in enumerate(powers):
        for idx, c in p.items():
            m.set(idx, k, c)
    rhs = FieldMatrix.zeros(f, Q.dim, 1)
    for idx, c in cur.items():
        rhs.set(idx, 0, c)
    sol = m.solve_right(rhs)
    coeffs = [-sol.get(k, 0) for k in range(len(powers))] + [f.one]
    return coeffs


def _poly_eval_in_quotient(Q: _Quotient, poly: list, x: dict, unit: dict) -> dict:
    out = {}
    cur = unit
    for c in poly:
        if c:
            for idx, v in cur.items():
                _acc(out, idx, c * v)
        cur = Q.mul(cur, x)
    return out


def _squarefree_distinct_factors(field, poly: list) -> list:
    facs = factors_over_cyclotomic([c for c in poly], field)
    return [f for f, _mult in facs]


def _split_idempotent(Q: _Quotient, e: dict, x: dict) -> list | None:
    """Split corner idempotent e along the factors of the min poly of exe."""
    f = Q.H.field
    x = Q.mul(Q.mul(e, x), e)
    mu = _quotient_min_poly(Q, x, e)
    factors = _squarefree_distinct_factors(f, mu)
    if len(factors) < 2:
        return None
    pieces = []
    for fac in factors:
        g, _ = _p_divmod(f, mu, fac)
        _, s, _t = _p_xgcd(f, g, fac)
        idem_poly = _p_mul(f, s, g)
        piece = _poly_eval_in_quotient(Q, idem_poly, x, e)
        pieces.append(piece)
    return pieces


def _corner_basis(Q: _Quotient, e: dict) -> list:
    found = []
    span = _SpanTracker(Q.H.field, Q.dim)
    for i in range(Q.dim):
        cand = Q.mul(Q.mul(e, {i: Q.H.field.one}), e)
        if cand and span.insert(cand):
            found.append(cand)
    return found


def _refine_to_primitive(Q: _Quotient, e: dict) -> list:
    """Split e into primitive idempotents inside its corner algebra."""
    basis = _corner_basis(Q, e)
    if len(basis) == 1:
        return [e]
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(len(basis)):
            candidates.append(Q.mul(basis[i], basis[j]))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = dict(basis[i])
            for k, c in basis[j].items():
                _acc(s, k, c)
            candidates.append(s)
    for x in candidates:
        pieces = _split_idempotent(Q, e, x)
        if pieces:
            out = []
            for p in pieces:
                out.extend(_refine_to_primitive(Q, p))
            return out
    # no split found: the corner must be commutative (a field) for e to be
    # primitive; anything else means the sweep above was not enough
    for a in basis:
        for b in basis:
            if Q.mul(a, b) != Q.mul(b, a):
                raise ArithmeticError(
                    "indecomposable split not found in a noncommutative corner")
    return [e]


def _newton_lift(H: RibbonHopfAlgebra, x: dict, max_iter: int = 64) -> dict:
    for _ in range(max_iter):
        sq = H.el_mul(x, x)
        if H.el_equal(sq, x):
            return x
        # x <- 3x^2 - 2x^3
        cube = H.el_mul(sq, x)
        nxt = {}
        for k, c in sq.items():
            _acc(nxt, k, c + c + c)
        for k, c in cube.items():
            _acc(nxt, k, -(c + c))
        x = nxt
    raise ArithmeticError("idempotent lift did not converge")


def _summand_from_idempotent(H: RibbonHopfAlgebra, e: dict, label: str):
    """The left module H e with inclusion/projection to the regular module."""
    f = H.field
    n = H.dim
    reg = regular_module(H)
    # right multiplication by e is the H-linear projection onto He
    rmat = FieldMatrix.zeros(f, n, n)
    for j in range(n):
        prod = H.el_mul({j: f.one}, e)
        for k, c in prod.items():
            rmat.set(k, j, c)
    red, pivots = rmat.transpose().rref()
    d = len(pivots)
    basis_rows = [[red.get(r, c) for c in range(n)] for r in range(d)]

    def coords(dense: list) -> list:
        vec = list(dense)
        out = []
        for r, p in enumerate(pivots):
            c = vec[p]
            out.append(c)
            if c:
                for j in range(n):
                    v = basis_rows[r][j]
                    if v:
                        vec[j] = vec[j] - c * v
        if any(vec):
            raise ArithmeticError("vector not in summand span")
        return out

    include = FieldMatrix.zeros(f, n, d)
    for k in range(d):
        for j in range(n):
            if basis_rows[k][j]:
                include.set(j, k, basis_rows[k][j])
    action = []
    for i in range(n):
        m = FieldMatrix.zeros(f, d, d)
        for k in range(d):
            img = [f.zero] * n
            for j in range(n):
                b = basis_rows[k][j]
                if b:
                    for t, c in H.mult[i][j].items():
                        img[t] = img[t] + c * b
            for r, c in enumerate(coords(img)):
                if c:
                    m.set(r, k, c)
        action.append(m)
    mod = HModule(H, d, action, label)
    # projection: reduce e_j * e through the basis
    proj = FieldMatrix.zeros(f, d, n)
    for j in range(n):
        img = [f.zero] * n
        prod = H.el_mul({j: f.one}, e)
        for k, c in prod.items():
            img[k] = c
        for r, c in enumerate(coords(img)):
            if c:
                proj.set(r, j, c)
    return (Intertwiner(reg, reg, rmat), mod,
            Intertwiner(mod, reg, include), Intertwiner(reg, mod, proj))


def _top_of_summand(H: RibbonHopfAlgebra, summand: HModule,
                    include: Intertwiner) -> HModule:
    """P / (J P) with the induced action."""
    f = H.field
    rad = radical_rows(H)
    d = summand.dim
    n = H.dim
    rows = []
    for r in range(rad.nrows):
        x = {j: rad.get(r, j) for j in range(n) if rad.get(r, j)}
        xm = summand.act_element(x)
        for k in range(d):
            row = [xm.get(i, k) for i in range(d)]
            if any(row):
                rows.append(row)
    if not rows:
        return HModule(H, d, summand.materialized_action(),
                       summand.label + "/rad")
    sub = FieldMatrix.from_rows(f, rows)
    red, pivots = sub.rref()
    comp = [i for i in range(d) if i not in set(pivots)]

    def reduce_vec(vec: list) -> list:
        vec = list(vec)
        for r, p in enumerate(pivots):
            c = vec[p]
            if c:
                for j in range(d):
                    v = red.get(r, j)
                    if v:
                        vec[j] = vec[j] - c * v
        return [vec[i] for i in comp]

    action = []
    for i in range(n):
        m = FieldMatrix.zeros(f, len(comp), len(comp))
        for col, b in enumerate(comp):
            img = [summand.act(i).get(r, b) for r in range(d)]
            for r, c in enumerate(reduce_vec(img)):
                if c:
                    m.set(r, col, c)
        action.append(m)
    return HModule(H, len(comp), action, summand.label + "/rad")


def decompose_regular(H: RibbonHopfAlgebra) -> list:
    """Indecomposable projective summands of H with multiplicities.

    Returns a list of ProjectiveSummand, one per isomorphism class.
    """
    key = "decompose_regular"
    if key in H._cache:
        return H._cache[key]
    f = H.field
    Q = _Quotient(H)

    # primitive central idempotents of the semisimple quotient
    blocks = [Q.unit()]
    center = _quotient_center_basis(Q)
    changed = True
    while changed:
        changed = False
        for z in center:
            nxt = []
            for e in blocks:
                pieces = _split_idempotent(Q, e, z)
                if pieces:
                    nxt.extend(pieces)
                    changed = True
                else:
                    nxt.append(e)
            blocks = nxt
    primitive = []
    for e in blocks:
        primitive.extend(_refine_to_primitive(Q, e))

    # lift to H, keeping the family orthogonal by working in corners
    lifted = []
    used = {}  # running sum of lifted idempotents
    for k, ebar in enumerate(primitive):
        if k == len(primitive) - 1:
            last = dict(H.unit)
            for idx, c in used.items():
                _acc(last, idx, -c)
            lifted.append(last)
            break
        x = Q.lift(ebar)
        if used:
            # (1 - f) x (1 - f)
            fx = H.el_mul(used, x)
            xf = H.el_mul(x, used)
            fxf = H.el_mul(used, xf)
            y = dict(x)
            for idx, c in fx.items():
                _acc(y, idx, -c)
            for idx, c in xf.items():
                _acc(y, idx, -c)
            for idx, c in fxf.items():
                _acc(y, idx, c)
            x = y
        e = _newton_lift(H, x)
        lifted.append(e)
        for idx, c in e.items():
            _acc(used, idx, c)

    pieces = []
    for k, e in enumerate(lifted):
        idem, mod, inc, proj = _summand_from_idempotent(H, e, f"P[{k}]")
        top = _top_of_summand(H, mod, inc)
        pieces.append((idem, mod, inc, proj, top))

    # group by isomorphism of tops (Schur: simples are isomorphic iff
    # a nonzero hom exists)
    classes = []
    for piece in pieces:
        placed = False
        for cls in classes:
            rep_top = cls[0][4]
            if piece[4].dim == rep_top.dim and hom_space(piece[4], rep_top):
                cls.append(piece)
                placed = True
                break
        if not placed:
            classes.append([piece])
    out = []
    for cls in classes:
        idem, mod, inc, proj, top = cls[0]
        mod.label = f"P[{top.label}]"
        out.append(ProjectiveSummand(
            idempotent=idem, module=mod, multiplicity=len(cls), top=top,
            include=inc, project=proj))
    total = sum(s.multiplicity * s.module.dim for s in out)
    if total != H.dim:
        raise ArithmeticError(
            f"summand dimensions {total} do not add up to dim H = {H.dim}")
    H._cache[key] = out
    return out


def _quotient_center_basis(Q: _Quotient) -> list:
    """Kernel of the commutator system z b - b z = 0 over all quotient basis b."""
    f = Q.H.field
    d = Q.dim
    basis = [{i: f.one} for i in range(d)]
    sys_rows = []
    for b_idx in range(d):
        b = basis[b_idx]
        col_entries = []
        for i in range(d):
            zb = Q.mul(basis[i], b)
            bz = Q.mul(b, basis[i])
            diff = dict(zb)
            for k, c in bz.items():
                _acc(diff, k, -c)
            col_entries.append(diff)
        for out_idx in range(d):
            row = [col_entries[i].get(out_idx, f.zero) for i in range(d)]
            if any(row):
                sys_rows.append(row)
    if not sys_rows:
        return basis
    m = FieldMatrix.from_rows(f, sys_rows)
    out = []
    for vec in m.kernel_basis():
        z = {i: vec.get(i, 0) for i in range(d) if vec.get(i, 0)}
        out.append(z)
    return out


def simple_modules(H: RibbonHopfAlgebra) -> list:
    """One simple module per isomorphism class (tops of the projectives)."""
    key = "simple_modules"
    if key not in H._cache:
        sims = [s.top for s in decompose_regular(H)]
        for i, s in enumerate(sims):
            s.label = f"S[{i}]"
        H._cache[key] = sims
    return H._cache[key]


def projective_cover_of_unit(H: RibbonHopfAlgebra):
    """(P_1, eta_1 : 1 -> P_1, eps_1 : P_1 -> 1)."""
    key = "projective_cover_of_unit"
    if key in H._cache:
        return H._cache[key]
    one = trivial_module(H)
    found = []
    for s in decompose_regular(H):
        if hom_space(s.top, one):
            found.append(s)
    if len(found) != 1:
        raise ArithmeticError(
            f"expected exactly one projective cover of the unit, got {len(found)}")
    p1 = found[0].module
    eps_basis = hom_space(p1, one)
    eta_basis = hom_space(one, p1)
    if len(eps_basis) != 1 or len(eta_basis) != 1:
        raise ArithmeticError(
            "hom spaces C(P_1, 1) and C(1, P_1) must both be 1-dimensional, "
            f"got {len(eps_basis)} and {len(eta_basis)}")
    eta1, eps1 = eta_basis[0], eps_basis[0]
    # eta_1 eps_1 : P_1 -> 1 -> P_1 hits the socle from the top; it vanishes
    # only if the cover or the embedding is broken
    if (eta1.matrix * eps1.matrix).is_zero():
        raise ArithmeticError("eta_1 after eps_1 vanished; socle/top mismatch")
    H._cache[key] = (p1, eta1, eps1)
    return H._cache[key]


def is_projective(V: HModule) -> bool:
    """Splitting test for the action map H (x) V -> V.

    A section sigma(x) = sum c_(1) (x) phi(S(c_(2)) x) is H-linear for any
    linear phi (c is the two-sided integral), and splits the action map
    exactly when sum rho(c_(1)) phi rho(S(c_(2))) = id_V has a solution phi.
    That reduces the section solve to dim(V)^2 unknowns.
    """
    H = V.algebra
    f = H.field
    from .hopf import compute_integrals
    key = "integral_element"
    if key not in H._cache:
        H._cache[key] = compute_integrals(H).integral_element
    c = H._cache[key]
    d = V.dim
    # sum over Delta(c): kron(rho(c1), rho(S(c2))^T) acting on vec(phi)
    system = FieldMatrix.zeros(f, d * d, d * d)
    for (i, j), coeff in H.el_coproduct(c).items():
        a = V.act(i)
        b = V.act_element(H.antipode[j]).transpose()
        system = system + a.kron(b).scale(coeff)
    rhs = FieldMatrix.zeros(f, d * d, 1)
    for i in range(d):
        rhs.set(i * d + i, 0, f.one)
    return system.solve_right(rhs) is not None
