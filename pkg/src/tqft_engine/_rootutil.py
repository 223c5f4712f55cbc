"""Polynomial factorization over cyclotomic fields, via sympy.

Coefficients cross the boundary exactly: a scalar with coordinates
(c_0, ..., c_{d-1}) in powers of zeta maps to a sympy algebraic number over
QQ<exp(2*pi*i/n)>, whose generator is the same primitive root. The factor
list coming back is re-multiplied in our own arithmetic and compared with
the input, so a conversion mistake fails loudly instead of corrupting a
decomposition.
"""

from __future__ import annotations

from functools import lru_cache

import sympy
from gmpy2 import mpq

from .exact import Cyclo, CyclotomicField

_X = sympy.symbols("_factor_var")


@lru_cache(maxsize=None)
def _domain(n: int):
    if n == 1:
        return sympy.QQ
    return sympy.QQ.algebraic_field(sympy.exp(2 * sympy.I * sympy.pi / n))


def _to_dom(c: Cyclo, dom, n: int):
    if n == 1:
        q = c.coeffs[0]
        return sympy.QQ(int(q.numerator), int(q.denominator))
    return dom([sympy.QQ(int(q.numerator), int(q.denominator))
                for q in reversed(c.coeffs)])


def _from_dom(a, field: CyclotomicField, n: int) -> Cyclo:
    if n == 1:
        return field.rational(mpq(int(a.numerator), int(a.denominator)))
    rep = list(a.rep)  # powers of the generator, highest first
    rep.reverse()
    return field.scalar([mpq(int(q.numerator), int(q.denominator)) for q in rep])


def _pmul(field, p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    while out and not out[-1]:
        out.pop()
    return out


def factors_over_cyclotomic(poly: list, field: CyclotomicField) -> list:
    """Irreducible factors of a polynomial over the given cyclotomic field.

    Input and output polynomials are coefficient lists, constant term first.
    Returns [(factor, multiplicity), ...] with monic factors.
    """
    coeffs = list(poly)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    n = field.n
    dom = _domain(n)
    as_dict = {k: _to_dom(c, dom, n) for k, c in enumerate(coeffs) if c}
    p = sympy.Poly.from_dict(as_dict, _X, domain=dom)
    _const, raw = p.factor_list()
    out = []
    for fac, mult in raw:
        fc = [_from_dom(a, field, n) for a in fac.rep.to_list()]
        fc.reverse()
        lead = fc[-1]
        if lead != field.one:
            inv = lead.inverse()
            fc = [c * inv for c in fc]
        out.append((fc, int(mult)))
    # exactness check: the monic factors must multiply back to the input
    # divided by its leading coefficient
    prod = [field.one]
    for fac, mult in out:
        for _ in range(mult):
            prod = _pmul(field, prod, fac)
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    if len(prod) != len(monic) or any(a != b for a, b in zip(prod, monic)):
        raise ArithmeticError("factorization did not multiply back exactly")
    return out


def roots_in_cyclotomic(poly: list, field: CyclotomicField) -> list:
    """Roots of the polynomial that lie in the field itself.

    Each root appears once per multiplicity, read off the monic linear
    factors. The order follows the factor list, which is deterministic.
    """
    out = []
    for fac, mult in factors_over_cyclotomic(poly, field):
        if len(fac) == 2:
            out.extend([-fac[0]] * mult)
    return out
