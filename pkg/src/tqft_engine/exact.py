"""Exact arithmetic over small cyclotomic fields Q(zeta_N).

Scalars are coefficient vectors of rationals (gmpy2.mpq) of length phi(N) in the
power basis 1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial. Equality of reduced vectors is therefore canonical equality of field
elements. Fields embed into each other along divisibility (z_M = z_N^(N/M)), and
binary operations on scalars from different fields lift both operands into the
compositum Q(zeta_lcm) first.

Matrices are dense with deterministic leftmost-pivot Gaussian elimination; there
is no pivot-size heuristic, so ranks, echelon forms and kernel bases are
reproducible byte for byte. No floating point appears anywhere.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, low degree first, as mpq tuple."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (mpq(-1), mpq(1))
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    num = [mpq(0)] * (n + 1)
    num[0] = mpq(-1)
    num[n] = mpq(1)
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(num: list, den: list) -> list:
    """Exact polynomial division (remainder must vanish)."""
    num = list(num)
    out = [mpq(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] / lead
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


class CyclotomicField:
    """The field Q(zeta_n), interned per conductor n."""

    _interned: dict = {}

    def __new__(cls, n: int):
        field = cls._interned.get(n)
        if field is None:
            field = object.__new__(cls)
            field._init(n)
            cls._interned[n] = field
        return field

    def _init(self, n: int) -> None:
        self.n = n
        phi = cyclotomic_polynomial(n)
        self.degree = len(phi) - 1
        self._phi = phi
        # Rows expressing z^k in the power basis, for k from degree up to
        # max(2*degree - 2, n - 1): products need 2d-2, zeta(power) needs n-1.
        rows = []
        top = [-c for c in phi[: self.degree]]  # z^degree
        cur = top
        top_power = max(2 * self.degree - 2, n - 1)
        for _ in range(self.degree, top_power + 1):
            rows.append(tuple(cur))
            nxt = [_MPQ_ZERO] + cur[:-1]
            lead = cur[-1]
            if lead:
                nxt = [a + lead * b for a, b in zip(nxt, top)]
            cur = nxt
        self._red_rows = rows
        self.zero = Cyclo(self, (_MPQ_ZERO,) * self.degree)
        one = [_MPQ_ZERO] * self.degree
        one[0] = _MPQ_ONE
        self.one = Cyclo(self, tuple(one))
        self._embed_cache = {}

    def __repr__(self):
        return f"Q(zeta_{self.n})"

    def __reduce__(self):  # keep interning through pickling
        return (CyclotomicField, (self.n,))

    # -- scalar constructors -------------------------------------------------

    def rational(self, value) -> "Cyclo":
        c = [_MPQ_ZERO] * self.degree
        c[0] = mpq(value)
        return Cyclo(self, tuple(c))

    def scalar(self, coeffs: Iterable) -> "Cyclo":
        c = [mpq(x) for x in coeffs]
        if len(c) > self.degree:
            raise ValueError("coefficient vector too long")
        c += [_MPQ_ZERO] * (self.degree - len(c))
        return Cyclo(self, tuple(c))

    def zeta(self, power: int = 1) -> "Cyclo":
        """z_n^power as a field element."""
        power %= self.n
        raw = [_MPQ_ZERO] * (power + 1)
        raw[power] = _MPQ_ONE
        return Cyclo(self, self.raw_reduce(raw))

    # -- raw coefficient-tuple kernel ---------------------------------------
    # Hot loops (matrix elimination, diagram state folding) work on bare coeff
    # tuples through these methods to avoid wrapper overhead.

    def raw_reduce(self, coeffs: Sequence) -> tuple:
        d = self.degree
        if len(coeffs) <= d:
            return tuple(coeffs) + (_MPQ_ZERO,) * (d - len(coeffs))
        out = list(coeffs[:d])
        rows = self._red_rows
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = rows[k - d]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return tuple(out)

    def raw_add(self, a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def raw_sub(self, a: tuple, b: tuple) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def raw_neg(self, a: tuple) -> tuple:
        return tuple(-x for x in a)

    def raw_mul(self, a: tuple, b: tuple) -> tuple:
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [_MPQ_ZERO] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return self.raw_reduce(conv)

    def raw_scale(self, c, a: tuple) -> tuple:
        return tuple(c * x for x in a)

    def raw_inv(self, a: tuple) -> tuple:
        d = self.degree
        if d == 1:
            if not a[0]:
                raise ZeroDivisionError("inverse of zero")
            return (_MPQ_ONE / a[0],)
        # Solve (mult-by-a) x = 1 in the power basis by dense elimination.
        cols = []
        pw = tuple([_MPQ_ONE] + [_MPQ_ZERO] * (d - 1))
        for j in range(d):
            cols.append(self.raw_mul(a, pw))
            if j < d - 1:
                pw = self.raw_reduce([_MPQ_ZERO] + list(pw))
        # rows of the system: sum_j M[i][j] x_j = e0[i], M[i][j] = cols[j][i]
        aug = [[cols[j][i] for j in range(d)] + [_MPQ_ONE if i == 0 else _MPQ_ZERO]
               for i in range(d)]
        for col in range(d):
            piv = None
            for r in range(col, d):
                if aug[r][col]:
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("inverse of zero")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return tuple(aug[i][d] for i in range(d))

    def raw_div(self, a: tuple, b: tuple) -> tuple:
        return self.raw_mul(a, self.raw_inv(b))

    # -- embeddings ----------------------------------------------------------

    def embedding_rows(self, target: "CyclotomicField") -> list:
        """Images of this field's basis powers z_M^j inside the target field."""
        if target.n % self.n:
            raise ValueError(f"no embedding {self} -> {target}")
        rows = self._embed_cache.get(target.n)
        if rows is None:
            step = target.n // self.n
            rows = [target.zeta(step * j).coeffs for j in range(self.degree)]
            self._embed_cache[target.n] = rows
        return rows

    def embed(self, x: "Cyclo", target: "CyclotomicField") -> "Cyclo":
        if target is self:
            return x
        rows = self.embedding_rows(target)
        out = [_MPQ_ZERO] * target.degree
        for c, row in zip(x.coeffs, rows):
            if c:
                for j, rj in enumerate(row):
                    if rj:
                        out[j] += c * rj
        return Cyclo(target, tuple(out))


def common_field(f1: CyclotomicField, f2: CyclotomicField) -> CyclotomicField:
    if f1 is f2:
        return f1
    return CyclotomicField(math.lcm(f1.n, f2.n))


class Cyclo:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- coercion ------------------------------------------------------------

    @staticmethod
    def _pair(a: "Cyclo", b):
        if not isinstance(b, Cyclo):
            b = a.field.rational(b)
        if a.field is b.field:
            return a, b
        f = common_field(a.field, b.field)
        return a.field.embed(a, f), b.field.embed(b, f)

    def in_field(self, field: CyclotomicField) -> "Cyclo":
        return self.field.embed(self, field)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = Cyclo._pair(self, other)
        return Cyclo(a.field, a.field.raw_add(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = Cyclo._pair(self, other)
        return Cyclo(a.field, a.field.raw_sub(a.coeffs, b.coeffs))

    def __rsub__(self, other):
        a, b = Cyclo._pair(self, other)
        return Cyclo(a.field, a.field.raw_sub(b.coeffs, a.coeffs))

    def __neg__(self):
        return Cyclo(self.field, self.field.raw_neg(self.coeffs))

    def __mul__(self, other):
        a, b = Cyclo._pair(self, other)
        return Cyclo(a.field, a.field.raw_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = Cyclo._pair(self, other)
        return Cyclo(a.field, a.field.raw_div(a.coeffs, b.coeffs))

    def __rtruediv__(self, other):
        a, b = Cyclo._pair(self, other)
        return Cyclo(a.field, a.field.raw_div(b.coeffs, a.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Cyclo":
        return Cyclo(self.field, self.field.raw_inv(self.coeffs))

    # -- predicates ----------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclo) and other.field is self.field:
            return self.coeffs == other.coeffs
        if isinstance(other, (int, mpq)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = Cyclo._pair(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # Hash through the rational value when possible so that equal scalars
        # in different (compatible) fields collide correctly.
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.n, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- presentation --------------------------------------------------------

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                z = f"z{self.field.n}" if j == 1 else f"z{self.field.n}^{j}"
                if c == 1:
                    term = z
                elif c == -1:
                    term = f"-{z}"
                else:
                    term = f"{c}*{z}"
                parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Cyclo({self})"

    def to_json(self) -> dict:
        return {"order": self.field.n, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data: dict) -> "Cyclo":
        field = CyclotomicField(int(data["order"]))
        return field.scalar([mpq(s) for s in data["coeffs"]])


QQ = CyclotomicField(1)


def sqrt_in_field(a: Cyclo) -> "Cyclo | None":
    """A square root of a within its own field, or None.

    The candidate root is normalized so its first nonzero coefficient is
    positive, making the choice deterministic.
    """
    f = a.field
    if not a:
        return f.zero
    if f.degree == 1:
        num, den = a.coeffs[0].numerator, a.coeffs[0].denominator
        if num < 0:
            return None
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return f.rational(mpq(rn, rd))
        return None
    from . import _rootutil

    roots = _rootutil.roots_in_cyclotomic([-a, f.zero, f.one], f)
    if not roots:
        return None
    r = roots[0]
    for c in r.coeffs:
        if c:
            return r if c > 0 else -r
    return r


class FieldMatrix:
    """Dense matrix over one cyclotomic field.

    Entries are stored as raw coefficient tuples; the public accessors wrap
    them back into Cyclo. All elimination is leftmost-pivot and deterministic.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: CyclotomicField, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = field.zero.coeffs
            rows = [[z] * ncols for _ in range(nrows)]
        self.rows = rows

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zeros(field, nrows, ncols) -> "FieldMatrix":
        return FieldMatrix(field, nrows, ncols)

    @staticmethod
    def identity(field, n) -> "FieldMatrix":
        m = FieldMatrix(field, n, n)
        one = field.one.coeffs
        for i in range(n):
            m.rows[i][i] = one
        return m

    @staticmethod
    def from_rows(field, data) -> "FieldMatrix":
        """data: iterable of iterables of Cyclo / int / mpq."""
        rows = []
        for r in data:
            row = []
            for x in r:
                if isinstance(x, Cyclo):
                    row.append(x.in_field(field).coeffs)
                else:
                    row.append(field.rational(x).coeffs)
            rows.append(row)
        ncols = len(rows[0]) if rows else 0
        return FieldMatrix(field, len(rows), ncols, rows)

    @staticmethod
    def column(field, entries) -> "FieldMatrix":
        return FieldMatrix.from_rows(field, [[x] for x in entries])

    @staticmethod
    def row_vector(field, entries) -> "FieldMatrix":
        return FieldMatrix.from_rows(field, [list(entries)])

    def copy(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.nrows, self.ncols,
                           [row[:] for row in self.rows])

    def in_field(self, field) -> "FieldMatrix":
        if field is self.field:
            return self
        emb = self.field.embed
        rows = [[emb(Cyclo(self.field, x), field).coeffs for x in row]
                for row in self.rows]
        return FieldMatrix(field, self.nrows, self.ncols, rows)

    @staticmethod
    def _common(a: "FieldMatrix", b: "FieldMatrix"):
        f = common_field(a.field, b.field)
        return a.in_field(f), b.in_field(f)

    # -- element access ------------------------------------------------------

    def get(self, i: int, j: int) -> Cyclo:
        return Cyclo(self.field, self.rows[i][j])

    def set(self, i: int, j: int, value) -> None:
        if not isinstance(value, Cyclo):
            value = self.field.rational(value)
        self.rows[i][j] = value.in_field(self.field).coeffs

    def entries(self):
        for i in range(self.nrows):
            for j in range(self.ncols):
                yield i, j, Cyclo(self.field, self.rows[i][j])

    def scalar_value(self) -> Cyclo:
        if self.nrows != 1 or self.ncols != 1:
            raise ValueError("not a 1x1 matrix")
        return self.get(0, 0)

    # -- algebra -------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Cyclo) or isinstance(other, (int, mpq)):
            return self.scale(other)
        a, b = FieldMatrix._common(self, other)
        if a.ncols != b.nrows:
            raise ValueError(f"shape mismatch {a.nrows}x{a.ncols} * {b.nrows}x{b.ncols}")
        f = a.field
        mul, add = f.raw_mul, f.raw_add
        zero = f.zero.coeffs
        out = [[zero] * b.ncols for _ in range(a.nrows)]
        brows = b.rows
        for i in range(a.nrows):
            arow = a.rows[i]
            orow = out[i]
            for k in range(a.ncols):
                c = arow[k]
                if not any(c):
                    continue
                brow = brows[k]
                for j in range(b.ncols):
                    e = brow[j]
                    if any(e):
                        orow[j] = add(orow[j], mul(c, e))
        return FieldMatrix(f, a.nrows, b.ncols, out)

    def scale(self, c) -> "FieldMatrix":
        if not isinstance(c, Cyclo):
            c = self.field.rational(c)
        a = self.in_field(common_field(self.field, c.field))
        c = c.in_field(a.field)
        mul = a.field.raw_mul
        rows = [[mul(c.coeffs, x) for x in row] for row in a.rows]
        return FieldMatrix(a.field, a.nrows, a.ncols, rows)

    __rmul__ = scale

    def __add__(self, other):
        a, b = FieldMatrix._common(self, other)
        if (a.nrows, a.ncols) != (b.nrows, b.ncols):
            raise ValueError("shape mismatch in add")
        add = a.field.raw_add
        rows = [[add(x, y) for x, y in zip(ra, rb)]
                for ra, rb in zip(a.rows, b.rows)]
        return FieldMatrix(a.field, a.nrows, a.ncols, rows)

    def __sub__(self, other):
        a, b = FieldMatrix._common(self, other)
        if (a.nrows, a.ncols) != (b.nrows, b.ncols):
            raise ValueError("shape mismatch in sub")
        sub = a.field.raw_sub
        rows = [[sub(x, y) for x, y in zip(ra, rb)]
                for ra, rb in zip(a.rows, b.rows)]
        return FieldMatrix(a.field, a.nrows, a.ncols, rows)

    def __neg__(self):
        neg = self.field.raw_neg
        return FieldMatrix(self.field, self.nrows, self.ncols,
                           [[neg(x) for x in row] for row in self.rows])

    def kron(self, other) -> "FieldMatrix":
        a, b = FieldMatrix._common(self, other)
        f = a.field
        mul = f.raw_mul
        zero = f.zero.coeffs
        nr, nc = a.nrows * b.nrows, a.ncols * b.ncols
        rows = [[zero] * nc for _ in range(nr)]
        for i1 in range(a.nrows):
            for j1 in range(a.ncols):
                c = a.rows[i1][j1]
                if not any(c):
                    continue
                for i2 in range(b.nrows):
                    tr = rows[i1 * b.nrows + i2]
                    br = b.rows[i2]
                    off = j1 * b.ncols
                    for j2 in range(b.ncols):
                        e = br[j2]
                        if any(e):
                            tr[off + j2] = mul(c, e)
        return FieldMatrix(f, nr, nc, rows)

    def transpose(self) -> "FieldMatrix":
        rows = [[self.rows[i][j] for i in range(self.nrows)]
                for j in range(self.ncols)]
        return FieldMatrix(self.field, self.ncols, self.nrows, rows)

    def row_join(self, other) -> "FieldMatrix":
        a, b = FieldMatrix._common(self, other)
        if a.nrows != b.nrows:
            raise ValueError("row_join shape mismatch")
        rows = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        return FieldMatrix(a.field, a.nrows, a.ncols + b.ncols, rows)

    def col_join(self, other) -> "FieldMatrix":
        a, b = FieldMatrix._common(self, other)
        if a.ncols != b.ncols:
            raise ValueError("col_join shape mismatch")
        return FieldMatrix(a.field, a.nrows + b.nrows, a.ncols,
                           [r[:] for r in a.rows] + [r[:] for r in b.rows])

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not any(x) for row in self.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        a, b = FieldMatrix._common(self, other)
        return a.rows == b.rows

    def __hash__(self):
        return hash((self.field.n, self.nrows, self.ncols,
                     tuple(tuple(row) for row in self.rows)))

    # -- elimination ---------------------------------------------------------

    def rref(self):
        """Reduced row echelon form. Returns (matrix, pivot column list)."""
        f = self.field
        mul, sub, div = f.raw_mul, f.raw_sub, f.raw_div
        rows = [row[:] for row in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = None
            for i in range(r, self.nrows):
                if any(rows[i][c]):
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            prow = rows[r]
            p = prow[c]
            if p != f.one.coeffs:
                pinv = f.raw_inv(p)
                rows[r] = prow = [mul(pinv, x) if any(x) else x for x in prow]
            for i in range(self.nrows):
                if i != r:
                    fac = rows[i][c]
                    if any(fac):
                        ri = rows[i]
                        rows[i] = [sub(x, mul(fac, y)) if any(y) else x
                                   for x, y in zip(ri, prow)]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return FieldMatrix(f, self.nrows, self.ncols, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list:
        """Canonical kernel basis (one vector per free column, as columns)."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        f = self.field
        out = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for r, pc in enumerate(pivots):
                e = red.rows[r][fc]
                if any(e):
                    v[pc] = Cyclo(f, f.raw_neg(e))
            out.append(FieldMatrix.column(f, v))
        return out

    def solve_right(self, rhs: "FieldMatrix"):
        """One solution of self * x = rhs, or None if inconsistent."""
        a, b = FieldMatrix._common(self, rhs)
        aug, pivots = a.row_join(b).rref()
        for p in pivots:
            if p >= a.ncols:
                return None
        f = a.field
        x = FieldMatrix.zeros(f, a.ncols, b.ncols)
        for r, pc in enumerate(pivots):
            x.rows[pc] = aug.rows[r][a.ncols:]
        return x

    def inverse(self) -> "FieldMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        aug, pivots = self.row_join(
            FieldMatrix.identity(self.field, self.nrows)).rref()
        if pivots[: self.nrows] != list(range(self.nrows)):
            raise ZeroDivisionError("matrix is singular")
        rows = [aug.rows[i][self.nrows:] for i in range(self.nrows)]
        return FieldMatrix(self.field, self.nrows, self.ncols, rows)

    def trace(self) -> Cyclo:
        if self.nrows != self.ncols:
            raise ValueError("trace of non-square matrix")
        t = self.field.zero.coeffs
        for i in range(self.nrows):
            t = self.field.raw_add(t, self.rows[i][i])
        return Cyclo(self.field, t)

    # -- reshaping helpers ---------------------------------------------------

    def flatten_column(self) -> "FieldMatrix":
        """Row-major flattening of the matrix into a single column."""
        return FieldMatrix(self.field, self.nrows * self.ncols, 1,
                           [[x] for row in self.rows for x in row])

    @staticmethod
    def from_flat_column(field, vec: "FieldMatrix", nrows: int, ncols: int) -> "FieldMatrix":
        v = vec.in_field(field)
        rows = [[v.rows[i * ncols + j][0] for j in range(ncols)]
                for i in range(nrows)]
        return FieldMatrix(field, nrows, ncols, rows)

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            body = "; ".join(
                " ".join(str(self.get(i, j)) for j in range(self.ncols))
                for i in range(self.nrows))
            return f"FieldMatrix[{self.nrows}x{self.ncols}: {body}]"
        return f"FieldMatrix[{self.nrows}x{self.ncols}]"


def signature_symmetric(m: FieldMatrix) -> int:
    """Signature of a symmetric matrix with rational entries.

    Exact symmetric congruence reduction; zero diagonal entries are repaired
    with the usual row+column addition before eliminating.
    """
    n = m.nrows
    if n != m.ncols:
        raise ValueError("signature of non-square matrix")
    a = [[m.get(i, j).rational_value() for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    sig = 0
    live = list(range(n))
    while live:
        k = None
        for i in live:
            if a[i][i]:
                k = i
                break
        if k is None:
            found = None
            for i in live:
                for j in live:
                    if i != j and a[i][j]:
                        found = (i, j)
                        break
                if found:
                    break
            if not found:
                break  # remaining block is zero
            i, j = found
            for c in live:
                a[i][c] += a[j][c]
            for c in live:
                a[c][i] += a[c][j]
            continue
        d = a[k][k]
        sig += 1 if d > 0 else -1
        live.remove(k)
        for i in live:
            f = a[i][k] / d
            if f:
                for j in live:
                    a[i][j] -= f * a[k][j]
        for i in live:
            a[i][k] = _MPQ_ZERO
            a[k][i] = _MPQ_ZERO
    return sig
