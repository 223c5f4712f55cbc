from __future__ import annotations

from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from tqft_engine.exact import (
    QQ,
    Cyclo,
    CyclotomicField,
    FieldMatrix,
    common_field,
    cyclotomic_polynomial,
    signature_symmetric,
    sqrt_in_field,
)


def test_cyclotomic_polynomials_small_orders():
    # classical tables
    assert cyclotomic_polynomial(1) == (mpq(-1), mpq(1))
    assert cyclotomic_polynomial(2) == (mpq(1), mpq(1))
    assert cyclotomic_polynomial(4) == (mpq(1), mpq(0), mpq(1))
    assert cyclotomic_polynomial(6) == (mpq(1), mpq(-1), mpq(1))
    assert cyclotomic_polynomial(12) == (mpq(1), mpq(0), mpq(-1), mpq(0), mpq(1))


def test_zeta_is_primitive_root():
    for n in (2, 3, 4, 5, 6, 8, 12):
        f = CyclotomicField(n)
        z = f.zeta()
        assert z ** n == f.one
        for k in range(1, n):
            assert z ** k != f.one, (n, k)


def test_field_interning_and_degree():
    assert CyclotomicField(6) is CyclotomicField(6)
    assert CyclotomicField(1).degree == 1
    assert CyclotomicField(12).degree == 4


def test_cross_field_arithmetic_lands_in_common_field():
    a = CyclotomicField(4).zeta()       # i
    b = CyclotomicField(3).zeta()       # zeta_3
    s = a * b
    assert s.field.n == 12
    assert s ** 12 == CyclotomicField(12).one
    assert common_field(CyclotomicField(4), CyclotomicField(3)).n == 12


def test_rational_recognition():
    f = CyclotomicField(4)
    x = f.zeta() * f.zeta()  # -1
    assert x.is_rational()
    assert x.rational_value() == -1
    assert x == -1
    assert str(f.rational(mpq(1, 2))) == "1/2"


def test_inverse_round_trip():
    f = CyclotomicField(5)
    x = f.one + f.zeta() + f.zeta(3)
    assert x * x.inverse() == f.one


def test_sqrt_in_field():
    assert sqrt_in_field(QQ.rational(mpq(9, 4))) == QQ.rational(mpq(3, 2))
    i = sqrt_in_field(CyclotomicField(4).rational(-1))
    assert i is not None and i * i == -1
    # 2 is not a square in Q
    assert sqrt_in_field(QQ.rational(2)) is None
    # sign normalization: first nonzero coefficient positive
    two = sqrt_in_field(CyclotomicField(8).rational(4))
    assert two == 2


def test_matrix_rref_solve_kernel():
    f = QQ
    m = FieldMatrix.from_rows(f, [
        [1, 2, 3],
        [2, 4, 6],
        [1, 0, 1],
    ])
    assert m.rank() == 2
    kb = m.kernel_basis()
    assert len(kb) == 1
    # the kernel vector really is annihilated
    v = FieldMatrix.column(f, [kb[0].get(i, 0) for i in range(3)])
    assert (m * v).is_zero()


def test_matrix_inverse():
    f = CyclotomicField(3)
    z = f.zeta()
    m = FieldMatrix.from_rows(f, [[f.one, z], [z, f.one + z]])
    inv = m.inverse()
    assert m * inv == FieldMatrix.identity(f, 2)


def test_kron_row_major_convention():
    f = QQ
    a = FieldMatrix.from_rows(f, [[1, 2]])
    b = FieldMatrix.from_rows(f, [[3], [4]])
    k = a.kron(b)
    assert (k.nrows, k.ncols) == (2, 2)
    assert k.get(0, 0) == 3 and k.get(0, 1) == 6
    assert k.get(1, 0) == 4 and k.get(1, 1) == 8


def test_signature_symmetric():
    f = QQ
    assert signature_symmetric(FieldMatrix.from_rows(f, [[2, 0], [0, -3]])) == 0
    assert signature_symmetric(FieldMatrix.from_rows(f, [[1, 0], [0, 1]])) == 2
    # zero diagonal hyperbolic plane has signature 0
    assert signature_symmetric(FieldMatrix.from_rows(f, [[0, 1], [1, 0]])) == 0
    assert signature_symmetric(FieldMatrix.zeros(f, 3, 3)) == 0


def test_scalar_json_round_trip():
    f = CyclotomicField(6)
    x = f.zeta() - f.rational(mpq(7, 3))
    data = x.to_json()
    assert data["order"] == 6
    assert Cyclo.from_json(data) == x


@settings(max_examples=40, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 29),
       st.integers(-30, 30))
def test_field_ops_match_rationals(a, b, d, c):
    # Q embeds in any cyclotomic field compatibly with all operations
    f = CyclotomicField(7)
    x = f.rational(mpq(a, d))
    y = f.rational(mpq(b, d))
    assert (x + y).rational_value() == mpq(a, d) + mpq(b, d)
    assert (x * y).rational_value() == mpq(a, d) * mpq(b, d)
    assert (x - y).rational_value() == mpq(a - b, d)
    z = f.rational(c)
    if c:
        assert (x / z).rational_value() == mpq(a, d) / c


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_mul_commutes_and_distributes(xs, ys):
    f = CyclotomicField(5)
    x = f.scalar(xs)
    y = f.scalar(ys)
    assert x * y == y * x
    assert (x + y) * (x - y) == x * x - y * y
