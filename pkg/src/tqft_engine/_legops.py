"""Sparse states on tensor products of module legs.

Coend structure maps and diagram evaluation both come down to short
sequences of elementary moves: act on one leg, braid two neighbouring
legs, cap a pair with an evaluation, insert a coevaluation pair, twist a
strand.  The states these moves ever see have a handful of nonzero
coordinates, while the ambient tensor product is huge (four legs of the
regular module of a 16-dimensional algebra already span a
65536-dimensional space), so nothing here ever builds a Kronecker
matrix.  A state is a dict mapping index tuples, one entry per leg, to
field scalars; a move rewrites keys locally.

Moves take and return a pair (mods, state): the tuple of modules
labelling the legs and the sparse state.  Inputs are never mutated.
"""

from __future__ import annotations


def _acc(d: dict, key, c) -> None:
    cur = d.get(key)
    d[key] = c if cur is None else cur + c


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def basis_state(field, idx: tuple) -> dict:
    return {tuple(idx): field.one}


def state_scalar(field, state: dict):
    """Value of a fully contracted (zero-leg) state."""
    return state.get((), field.zero)


def state_to_vec(field, mods, state: dict):
    """Pack a state into a column vector, legs flattened row-major."""
    from .exact import FieldMatrix
    total = 1
    for v in mods:
        total *= v.dim
    out = FieldMatrix.zeros(field, total, 1)
    for key, c in state.items():
        flat = 0
        for pos, v in zip(key, mods):
            flat = flat * v.dim + pos
        out.set(flat, 0, out.get(flat, 0) + c)
    return out


def vec_to_state(mods, vec) -> dict:
    dims = [v.dim for v in mods]
    out = {}
    for flat in range(vec.nrows):
        c = vec.get(flat, 0)
        if not c:
            continue
        key = []
        rem = flat
        for d in reversed(dims):
            key.append(rem % d)
            rem //= d
        out[tuple(reversed(key))] = c
    return out


class LegEngine:
    """Per-algebra caches for leg moves.

    Holds action columns per (module, algebra index), braid columns per
    ordered module pair, and pivot matrices per module.  Modules are
    kept alive in an id-keyed registry so the caches stay valid.
    """

    def __init__(self, H):
        self.H = H
        self.field = H.field
        self._cols: dict = {}
        self._braids: dict = {}
        self._pivots: dict = {}
        self._keep: dict = {}

    def _reg(self, V) -> int:
        self._keep[id(V)] = V
        return id(V)

    def action_columns(self, V, i: int):
        """Columns of rho_V(a_i) as dicts row -> scalar."""
        key = (self._reg(V), i)
        cols = self._cols.get(key)
        if cols is None:
            m = V.act(i)
            cols = tuple({} for _ in range(V.dim))
            for r in range(V.dim):
                for c in range(V.dim):
                    x = m.get(r, c)
                    if x:
                        cols[c][r] = x
            self._cols[key] = cols
        return cols

    def pivot_matrix(self, V, inverse: bool = False):
        key = (self._reg(V), inverse)
        m = self._pivots.get(key)
        if m is None:
            g = self.H.pivot_inv() if inverse else self.H.pivot()
            m = V.act_element(g)
            self._pivots[key] = m
        return m

    # -- single-leg operators ------------------------------------------------

    def act_index(self, mods, state, leg, i):
        cols = self.action_columns(mods[leg], i)
        out = {}
        for key, c in state.items():
            for r, m in cols[key[leg]].items():
                _acc(out, key[:leg] + (r,) + key[leg + 1:], c * m)
        return _clean(out)

    def act_element(self, mods, state, leg, x: dict):
        out = {}
        for i, ci in x.items():
            if not ci:
                continue
            cols = self.action_columns(mods[leg], i)
            for key, c in state.items():
                for r, m in cols[key[leg]].items():
                    _acc(out, key[:leg] + (r,) + key[leg + 1:], c * ci * m)
        return _clean(out)

    def act_matrix(self, mods, state, leg, mat):
        """Apply an arbitrary matrix (same source and target) on one leg."""
        out = {}
        for key, c in state.items():
            col = key[leg]
            for r in range(mat.nrows):
                m = mat.get(r, col)
                if m:
                    _acc(out, key[:leg] + (r,) + key[leg + 1:], c * m)
        return _clean(out)

    def twist(self, mods, state, leg, inverse: bool = False):
        plain = self.H._cache.get("twist_plain", False)
        fwd = self.H.ribbon if plain else self.H.ribbon_inv
        bwd = self.H.ribbon_inv if plain else self.H.ribbon
        return mods, self.act_element(mods, state, leg, bwd if inverse else fwd)

    # -- braiding ------------------------------------------------------------

    def _braid_col(self, V, W, inverse: bool, pair):
        key = (self._reg(V), self._reg(W), inverse)
        table = self._braids.setdefault(key, {})
        out = table.get(pair)
        if out is None:
            cv, cw = pair
            rm = self.H.r_inv if inverse else self.H.r_matrix
            out = {}
            if inverse:
                # negative crossing: flip first, then act by R^{-1}
                for (i, j), c in rm.items():
                    for rw, a in self.action_columns(W, i)[cw].items():
                        for rv, b in self.action_columns(V, j)[cv].items():
                            _acc(out, (rw, rv), c * a * b)
            else:
                # positive crossing: act by R, then flip
                for (i, j), c in rm.items():
                    for rv, a in self.action_columns(V, i)[cv].items():
                        for rw, b in self.action_columns(W, j)[cw].items():
                            _acc(out, (rw, rv), c * a * b)
            out = _clean(out)
            table[pair] = out
        return out

    def braid(self, mods, state, leg, inverse: bool = False):
        """Cross legs (leg, leg+1); positive crossing by default."""
        V, W = mods[leg], mods[leg + 1]
        out = {}
        for key, c in state.items():
            col = self._braid_col(V, W, inverse, (key[leg], key[leg + 1]))
            for (rw, rv), d in col.items():
                _acc(out, key[:leg] + (rw, rv) + key[leg + 2:], c * d)
        return mods[:leg] + (W, V) + mods[leg + 2:], _clean(out)

    # -- duality caps and cups -----------------------------------------------

    def ev_left(self, mods, state, leg):
        """Cap legs (V*, V): f^a x e_b -> delta_ab."""
        out = {}
        for key, c in state.items():
            if key[leg] == key[leg + 1]:
                _acc(out, key[:leg] + key[leg + 2:], c)
        return mods[:leg] + mods[leg + 2:], _clean(out)

    def ev_right(self, mods, state, leg):
        """Cap legs (V, V*) through the pivot: e_b x f^a -> rho_V(g)[a,b]."""
        g = self.pivot_matrix(mods[leg])
        out = {}
        for key, c in state.items():
            m = g.get(key[leg + 1], key[leg])
            if m:
                _acc(out, key[:leg] + key[leg + 2:], c * m)
        return mods[:leg] + mods[leg + 2:], _clean(out)

    def coev_left(self, mods, state, leg, V):
        """Insert legs (V, V*) at position leg: sum_e e x f^e."""
        from .rep import dual_module
        out = {}
        for key, c in state.items():
            for e in range(V.dim):
                _acc(out, key[:leg] + (e, e) + key[leg:], c)
        return mods[:leg] + (V, dual_module(V)) + mods[leg:], _clean(out)

    def coev_right(self, mods, state, leg, V):
        """Insert legs (V*, V) at position leg: sum rho_V(g^-1)[b,i] f^i x e_b."""
        from .rep import dual_module
        gi = self.pivot_matrix(V, inverse=True)
        out = {}
        for key, c in state.items():
            for i in range(V.dim):
                for b in range(V.dim):
                    m = gi.get(b, i)
                    if m:
                        _acc(out, key[:leg] + (i, b) + key[leg:], c * m)
        return mods[:leg] + (dual_module(V), V) + mods[leg:], _clean(out)
