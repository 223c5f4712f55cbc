"""Modified trace on the ideal of projective modules.

The trace is a family of linear functionals t_P on End(P), one per
indecomposable projective, tied together by cyclicity and compatible
with partial closure of tensor legs.  Those constraints form one linear
system over the unknown functionals; its solution space is required to
be exactly one-dimensional, and the normalization t_{P1}(eta1 o eps1) = 1
picks the generator.  Nothing here depends on a closed formula: the
solver is the definition, and the symmetrized-integral expression on the
regular module is only calibrated against it afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Cyclo, FieldMatrix
from .hopf import RibbonHopfAlgebra
from .rep import (HModule, Intertwiner, coev_right, decompose_regular,
                  ev_right, hom_space, projective_cover_of_unit,
                  regular_module, simple_modules, tensor_module)


# ---------------------------------------------------------------------------
# partial closure of a tensor leg
# ---------------------------------------------------------------------------

def partial_trace_right(h: Intertwiner, P: HModule, V: HModule) -> Intertwiner:
    """Close the right leg of h in End(P (x) V) with the pivot duality."""
    f = P.algebra.field
    dp, dv = P.dim, V.dim
    evr = ev_right(V).matrix
    out = FieldMatrix.zeros(f, dp, dp)
    for p in range(dp):
        for q in range(dp):
            acc = f.zero
            for a in range(dv):
                for b in range(dv):
                    w = evr.get(0, a * dv + b)
                    if w:
                        v = h.matrix.get(p * dv + a, q * dv + b)
                        if v:
                            acc = acc + v * w
            if acc:
                out.set(p, q, acc)
    return Intertwiner(P, P, out)


def partial_trace_left(h: Intertwiner, V: HModule, P: HModule) -> Intertwiner:
    """Close the left leg of h in End(V (x) P)."""
    f = P.algebra.field
    dp, dv = P.dim, V.dim
    cvr = coev_right(V).matrix
    out = FieldMatrix.zeros(f, dp, dp)
    for p in range(dp):
        for q in range(dp):
            acc = f.zero
            for i in range(dv):
                for b in range(dv):
                    w = cvr.get(i * dv + b, 0)
                    if w:
                        v = h.matrix.get(i * dp + p, b * dp + q)
                        if v:
                            acc = acc + v * w
            if acc:
                out.set(p, q, acc)
    return Intertwiner(P, P, out)


# ---------------------------------------------------------------------------
# splitting a projective module into the regular summands
# ---------------------------------------------------------------------------

def split_projective(M: HModule) -> list:
    """Complete orthogonal splitting of M along the indecomposable
    projectives of the regular module.

    Returns (class_index, inc, proj) triples with proj o inc = id and all
    cross compositions zero.  The search only ever tests single basis
    pairs of the dressed hom spaces: the endomorphism ring of an
    indecomposable is local, so a summand forces some pair to compose to
    a unit.  A leftover complement means M was not projective.
    """
    H = M.algebra
    f = H.field
    summands = decompose_regular(H)
    comp = FieldMatrix.identity(f, M.dim)
    remaining = M.dim
    out = []
    for k, s in enumerate(summands):
        P = s.module
        if remaining < P.dim:
            continue
        fs = hom_space(P, M)
        gs = hom_space(M, P)
        if not fs or not gs:
            continue
        while remaining >= P.dim:
            hit = None
            for g in gs:
                gc = g.matrix * comp
                if gc.is_zero():
                    continue
                for fm in fs:
                    u = gc * fm.matrix
                    try:
                        uinv = u.inverse()
                    except ZeroDivisionError:
                        continue
                    hit = (comp * fm.matrix * uinv, gc)
                    break
                if hit:
                    break
            if hit is None:
                break
            inc, proj = hit
            out.append((k, Intertwiner(P, M, inc), Intertwiner(M, P, proj)))
            comp = comp - inc * proj
            remaining -= P.dim
    if not comp.is_zero():
        raise ArithmeticError(
            "module does not split into projective summands "
            f"(complement of dimension {remaining} left over)")
    return out


# ---------------------------------------------------------------------------
# the trace itself
# ---------------------------------------------------------------------------

@dataclass
class ModifiedTrace:
    algebra: RibbonHopfAlgebra
    modules: list            # indecomposable projectives, decompose order
    end_bases: list          # canonical End(P_i) bases
    functionals: list        # one covector (list of scalars) per class
    normalization_witness: Cyclo

    def class_of(self, P: HModule) -> int:
        for k, mod in enumerate(self.modules):
            if mod is P:
                return k
        raise ValueError("module is not one of the regular summands")

    def on_class(self, k: int, endo: FieldMatrix) -> Cyclo:
        coords = _end_coords(self.algebra.field, self.end_bases[k], endo)
        acc = self.algebra.field.zero
        for r, c in enumerate(coords):
            if c:
                acc = acc + self.functionals[k][r] * c
        return acc


def _end_coords(f, basis: list, endo: FieldMatrix) -> list:
    d = endo.nrows
    m = FieldMatrix.zeros(f, d * d, len(basis))
    for col, b in enumerate(basis):
        for r in range(d):
            for c in range(d):
                v = b.matrix.get(r, c)
                if v:
                    m.set(r * d + c, col, v)
    rhs = FieldMatrix.zeros(f, d * d, 1)
    for r in range(d):
        for c in range(d):
            v = endo.get(r, c)
            if v:
                rhs.set(r * d + c, 0, v)
    sol = m.solve_right(rhs)
    if sol is None:
        raise ArithmeticError("endomorphism lies outside the computed hom basis")
    return [sol.get(r, 0) for r in range(len(basis))]


def solve_modified_trace(H: RibbonHopfAlgebra) -> ModifiedTrace:
    cached = H._cache.get("modified_trace")
    if cached is not None:
        return cached
    f = H.field
    summands = decompose_regular(H)
    classes = [s.module for s in summands]
    ends = [hom_space(P, P) for P in classes]
    offsets = []
    total = 0
    for e in ends:
        offsets.append(total)
        total += len(e)

    rows: list = []

    def coords_into(row: dict, k: int, endo: FieldMatrix, sign: int) -> None:
        for r, c in enumerate(_end_coords(f, ends[k], endo)):
            if c:
                col = offsets[k] + r
                cur = row.get(col, f.zero)
                row[col] = cur + c if sign > 0 else cur - c

    # cyclicity across every ordered pair of classes
    for i, Pi in enumerate(classes):
        for j, Pj in enumerate(classes):
            for fm in hom_space(Pj, Pi):
                for gm in hom_space(Pi, Pj):
                    row: dict = {}
                    coords_into(row, i, fm.matrix * gm.matrix, +1)
                    coords_into(row, j, gm.matrix * fm.matrix, -1)
                    if row:
                        rows.append(row)

    # closing a tensor leg: on P_i (x) V the transported trace must agree
    # with the trace of the partial closure, for V over the simples and
    # the regular module.  The splitting slots give a spanning set of
    # endomorphisms inc_s o phi o proj_t, and on those the transported
    # side collapses to a single functional value.
    tests = list(simple_modules(H)) + [regular_module(H)]
    cross: dict = {}
    for i, Pi in enumerate(classes):
        for V in tests:
            M = tensor_module(Pi, V)
            parts = split_projective(M)
            for si, (ks, inc_s, proj_s) in enumerate(parts):
                for ti, (kt, inc_t, proj_t) in enumerate(parts):
                    key = (kt, ks)
                    if key not in cross:
                        cross[key] = hom_space(classes[kt], classes[ks])
                    for phi in cross[key]:
                        h = Intertwiner(
                            M, M, inc_s.matrix * phi.matrix * proj_t.matrix)
                        closed = partial_trace_right(h, Pi, V)
                        row = {}
                        coords_into(row, i, closed.matrix, -1)
                        if si == ti:
                            coords_into(row, ks, phi.matrix, +1)
                        if row:
                            rows.append(row)

    system = FieldMatrix.zeros(f, max(len(rows), 1), total)
    for r, row in enumerate(rows):
        for c, v in row.items():
            if v:
                system.set(r, c, v)
    kernel = system.kernel_basis()
    if len(kernel) != 1:
        raise ArithmeticError(
            f"trace constraint system has solution dimension {len(kernel)}, "
            "expected 1")
    vec = kernel[0]

    p1, eta1, eps1 = projective_cover_of_unit(H)
    k1 = next(k for k, P in enumerate(classes) if P is p1)
    witness_coords = _end_coords(f, ends[k1], eta1.matrix * eps1.matrix)
    w = f.zero
    for r, c in enumerate(witness_coords):
        if c:
            w = w + vec.get(offsets[k1] + r, 0) * c
    if not w:
        raise ArithmeticError("trace vanishes on eta1 o eps1, cannot normalize")
    winv = w.inverse()
    functionals = []
    for k in range(len(classes)):
        functionals.append([vec.get(offsets[k] + r, 0) * winv
                            for r in range(len(ends[k]))])

    t = ModifiedTrace(
        algebra=H, modules=classes, end_bases=ends, functionals=functionals,
        normalization_witness=f.one)
    H._cache["modified_trace"] = t
    return t


def mtrace_eval(t: ModifiedTrace, f: Intertwiner) -> Cyclo:
    """Value of the trace on an endomorphism of any projective module."""
    P = f.source
    if f.target is not P and f.target.dim != P.dim:
        raise ValueError("modified trace needs an endomorphism")
    acc = t.algebra.field.zero
    for k, inc, proj in split_projective(P):
        acc = acc + t.on_class(k, proj.matrix * f.matrix * inc.matrix)
    return acc


def regular_trace_exponent(H: RibbonHopfAlgebra, t: ModifiedTrace):
    """Pivot power k with t(right mult by b) = lambda(g^k b) for all b.

    The symmetrized-integral expression for the trace on the regular
    module holds for exactly one exponent; which one depends on duality
    conventions, so it is calibrated here rather than assumed.  Returns
    (k, scale) or None if no small exponent matches.
    """
    from .hopf import compute_integrals
    f = H.field
    n = H.dim
    reg = regular_module(H)
    lam = compute_integrals(H).right_cointegral
    values = []
    for b in range(n):
        rm = FieldMatrix.zeros(f, n, n)
        for a in range(n):
            for k2, c in H.el_mul(H.el_basis(a), H.el_basis(b)).items():
                rm.set(k2, a, c)
        values.append(mtrace_eval(t, Intertwiner(reg, reg, rm)))
    for k in (-2, -1, 0, 1, 2):
        g = H.unit
        step = H.pivot() if k >= 0 else H.pivot_inv()
        for _ in range(abs(k)):
            g = H.el_mul(g, step)
        scale = None
        ok = True
        for b in range(n):
            pred = f.zero
            for m, c in H.el_mul(g, H.el_basis(b)).items():
                pred = pred + lam[m] * c
            got = values[b]
            if scale is None:
                if pred:
                    scale = got / pred
                elif got:
                    ok = False
                    break
            if scale is not None and got != scale * pred:
                ok = False
                break
        if ok and scale is not None and scale:
            return k, scale
    return None
