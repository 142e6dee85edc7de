"""Commutative carriers of the q-Witt algebras.

LaurentPoly is K[x, 1/x] with the Jackson operator and tau: x -> qx.
DividedElement lives in the q-divided power algebra with generators x^(a),
x^(a) x^(b) = [a+b, a]_q x^(a+b), truncated to a < l at a root of unity.
"""

from enum import Enum

from qarith import (
    Combination,
    Scalar,
    ScalarField,
    gauss_binomial,
    q_factorial,
    q_integer,
    q_power,
)


class Carrier(Enum):
    LAURENT = "laurent"
    DIVIDED = "divided"


class LaurentPoly(Combination):
    def _key_text(self, n: int) -> str:
        if n == 0:
            return ""
        return "x" if n == 1 else f"x^{n}"

    # highest power first
    def _sort_key(self, n: int):
        return -n

    @classmethod
    def monomial(cls, field: ScalarField, n: int, c=1) -> "LaurentPoly":
        return cls(field, {n: c})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            terms: dict[int, Scalar] = {}
            for m, a in self.terms.items():
                for n, b in other.terms.items():
                    terms[m + n] = terms[m + n] + a * b if m + n in terms else a * b
            return LaurentPoly(self.field, terms)
        return super().__mul__(other)

    def __pow__(self, k: int) -> "LaurentPoly":
        if len(self.terms) == 1:
            ((n, c),) = self.terms.items()
            return LaurentPoly(self.field, {n * k: c**k})
        if k < 0:
            raise ValueError("only monomials have negative powers")
        result = LaurentPoly.monomial(self.field, 0)
        for _ in range(k):
            result = result * self
        return result


class DividedElement(Combination):
    def __init__(self, field: ScalarField, terms=None) -> None:
        super().__init__(field, terms)
        for a in self.terms:
            if a < 0 or (field.is_root and a >= field.l):
                raise ValueError(f"x^({a}) is not a divided power generator over {field}")

    def _key_text(self, a: int) -> str:
        return f"x^({a})"

    @classmethod
    def monomial(cls, field: ScalarField, a: int, c=1) -> "DividedElement":
        return cls(field, {a: c})

    def __mul__(self, other):
        if isinstance(other, DividedElement):
            return dp_multiply(self, other)
        return super().__mul__(other)

    def __pow__(self, k: int) -> "DividedElement":
        return dp_power(self, k)


def jackson_derivative(p: LaurentPoly) -> LaurentPoly:
    """x^n -> (n)_q x^(n-1)"""
    return LaurentPoly(p.field, {n - 1: c * q_integer(p.field, n) for n, c in p.terms.items()})


def difference_quotient(p: LaurentPoly) -> LaurentPoly:
    # (P(qx) - P(x)) / (qx - x), term by term
    field = p.field
    shifted = LaurentPoly(field, {n: c * (q_power(field, n) - 1) for n, c in p.terms.items()})
    return LaurentPoly(field, {n - 1: c / (field.q - 1) for n, c in shifted.terms.items()})


def tau(p: LaurentPoly | DividedElement) -> LaurentPoly | DividedElement:
    return type(p)(p.field, {n: c * q_power(p.field, n) for n, c in p.terms.items()})


def dp_multiply(u: DividedElement, v: DividedElement, strict: bool = False) -> DividedElement:
    u._check(v)
    field = u.field
    terms: dict[int, Scalar] = {}
    for a, x in u.terms.items():
        for b, y in v.terms.items():
            c = x * y * gauss_binomial(field, a + b, a)
            if field.is_root and a + b >= field.l:
                # x^(a+b) does not exist; the coefficient should already vanish
                if strict and c:
                    raise ValueError(f"x^({a}) x^({b}) truncated a nonzero coefficient {c}")
                continue
            terms[a + b] = terms[a + b] + c if a + b in terms else c
    return DividedElement(field, terms)


def dp_power(u: DividedElement, k: int) -> DividedElement:
    if k < 0:
        raise ValueError("divided powers have no inverses")
    result = DividedElement.monomial(u.field, 0)
    for _ in range(k):
        result = dp_multiply(result, u)
    return result


def dp_derivative(u: DividedElement) -> DividedElement:
    return DividedElement(u.field, {a - 1: c for a, c in u.terms.items() if a >= 1})


def _check_e_index(field: ScalarField, n: int) -> None:
    if n < -1 or (field.is_root and n > field.l - 2):
        top = "" if not field.is_root else f" <= {field.l - 2}"
        raise ValueError(f"e({n}) needs -1 <= n{top}")


def apply_e(n: int, u: DividedElement) -> DividedElement:
    """e_(n) = x^(n+1) d_q: x^(a) -> [a+n, n+1]_q x^(a+n)"""
    field = u.field
    _check_e_index(field, n)
    terms = {}
    for a, c in u.terms.items():
        if a == 0 or (field.is_root and a + n >= field.l):
            continue
        terms[a + n] = c * gauss_binomial(field, a + n, n + 1)
    return DividedElement(field, terms)


def apply_laurent_e(n: int, p: LaurentPoly) -> LaurentPoly:
    """e_n = x^(n+1) d_q acting on Laurent polynomials"""
    return LaurentPoly.monomial(p.field, n + 1) * jackson_derivative(p)


def verify_skew_leibniz(kind: Carrier, u, v) -> bool:
    if kind is Carrier.LAURENT:
        lhs = jackson_derivative(u * v)
        rhs = jackson_derivative(u) * v + tau(u) * jackson_derivative(v)
    else:
        lhs = dp_derivative(dp_multiply(u, v))
        rhs = dp_multiply(dp_derivative(u), v) + dp_multiply(tau(u), dp_derivative(v))
    return lhs == rhs


def to_laurent(u: DividedElement) -> LaurentPoly:
    """x^(a) = x^a / (a)_q! (generic mode only)"""
    if u.field.is_root:
        raise ValueError("(a)_q! vanishes at a root of unity for a >= l")
    return LaurentPoly(u.field, {a: c / q_factorial(u.field, a) for a, c in u.terms.items()})


def verify_rescaling(field: ScalarField, n: int, max_degree: int) -> bool:
    # e_n = (n+1)_q! e_(n) on the monomials x^0 .. x^max_degree
    scale = q_factorial(field, n + 1)
    for a in range(max_degree + 1):
        u = DividedElement.monomial(field, a)
        lhs = to_laurent(apply_e(n, u)).scale(scale)
        rhs = apply_laurent_e(n, to_laurent(u))
        if lhs != rhs:
            return False
    return True
