"""Exact coefficient arithmetic for q-deformed algebras.

Scalars live either in the rational-function field in q (generic mode) or in
the l-th cyclotomic field, where q is a primitive l-th root of unity written e
(root mode). Both can adjoin named parameters such as a weight t. The heavy
lifting is done by sympy's sparse polynomial rings and fraction fields.
"""

from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import lcm

from sympy import QQ, ZZ, Symbol
from sympy.polys.fields import FracField
from sympy.polys.rings import PolyRing
from sympy.polys.specialpolys import cyclotomic_poly


class Mode(Enum):
    GENERIC = "generic"
    ROOT = "root"


@lru_cache(maxsize=None)
def _generic_field(params: tuple[str, ...]) -> FracField:
    return FracField(("q",) + params, ZZ)


@lru_cache(maxsize=None)
def _root_ring(l: int, params: tuple[str, ...]) -> tuple[PolyRing, object]:
    R = PolyRing(("q",) + params, QQ)
    return R, R(cyclotomic_poly(l, Symbol("q")))


@lru_cache(maxsize=None)
def _univariate_ring(l: int) -> tuple[PolyRing, object]:
    R = PolyRing(("q",), QQ)
    return R, R(cyclotomic_poly(l, Symbol("q")))


class ScalarField:
    """Generic mode (l is None) or root mode at a primitive l-th root of unity."""

    def __init__(self, mode: Mode = Mode.GENERIC, l: int | None = None, params=()) -> None:
        if mode is Mode.ROOT:
            if not isinstance(l, int) or l < 2:
                raise ValueError(f"root of unity order must be an integer >= 2, got {l}")
        elif l is not None:
            raise ValueError("generic mode takes no root of unity order")
        params = tuple(params)
        for p in params:
            if not p.isidentifier() or p in ("q", "e", "x", "C", "L"):
                raise ValueError(f"invalid parameter name: {p!r}")
        self.mode: Mode = mode
        self.l: int | None = l
        self.params: tuple[str, ...] = params

    @classmethod
    def generic(cls, params=()) -> "ScalarField":
        return cls(Mode.GENERIC, None, params)

    @classmethod
    def root(cls, l: int, params=()) -> "ScalarField":
        return cls(Mode.ROOT, l, params)

    def with_params(self, params) -> "ScalarField":
        return ScalarField(self.mode, self.l, params)

    @property
    def is_root(self) -> bool:
        return self.mode is Mode.ROOT

    @property
    def domain(self):
        if self.is_root:
            return _root_ring(self.l, self.params)[0]
        return _generic_field(self.params)

    @property
    def symbols(self) -> tuple[str, ...]:
        # the printed name of q is e at a root of unity
        return ("e" if self.is_root else "q",) + self.params

    def __hash__(self) -> int:
        return hash((self.mode, self.l, self.params))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScalarField)
            and self.mode == other.mode
            and self.l == other.l
            and self.params == other.params
        )

    def __str__(self) -> str:
        s = f"root(l={self.l})" if self.is_root else "generic"
        if self.params:
            s += f"[{','.join(self.params)}]"
        return s

    __repr__ = __str__

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise TypeError(f"scalar from {value.field} used in {self}")
            return value
        return Scalar(self, self._raw(value))

    def _raw(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot convert {type(value).__name__} to a scalar")
        value = Fraction(value)
        D = self.domain
        if self.is_root:
            return D.ground_new(QQ(value.numerator, value.denominator))
        return D.new(D.ring.ground_new(value.numerator), D.ring.ground_new(value.denominator))

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.domain.zero)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.domain.one)

    @property
    def q(self) -> "Scalar":
        return q_power(self, 1)

    def param(self, name: str) -> "Scalar":
        if name not in self.params:
            raise ValueError(f"{name} is not a parameter of {self}")
        return Scalar(self, self.domain.gens[1 + self.params.index(name)])

    def from_laurent(self, coeffs: dict[int, int | Fraction]) -> "Scalar":
        """sum of c*q^k over a finite map k -> c, k may be negative"""
        coeffs = {k: Fraction(c) for k, c in coeffs.items() if c}
        if not coeffs:
            return self.zero
        rest = (0,) * len(self.params)
        if self.is_root:
            R, phi = _root_ring(self.l, self.params)
            folded: dict[int, Fraction] = {}
            for k, c in coeffs.items():
                folded[k % self.l] = folded.get(k % self.l, 0) + c
            poly = R.from_dict(
                {(k,) + rest: QQ(c.numerator, c.denominator) for k, c in folded.items() if c}
            )
            return Scalar(self, poly.rem(phi))
        K = self.domain
        lo = min(min(coeffs), 0)
        den = lcm(*(c.denominator for c in coeffs.values()))
        numer = K.ring.from_dict(
            {(k - lo,) + rest: ZZ(int(c * den)) for k, c in coeffs.items()}
        )
        denom = K.ring.from_dict({(-lo,) + rest: ZZ(den)})
        return Scalar(self, K.new(numer, denom))


@total_ordering
class Scalar:
    """Immutable element of a ScalarField in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: ScalarField, value) -> None:
        self.field: ScalarField = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise TypeError(f"cannot combine scalars from {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field._raw(other)
        return None

    def _reduce(self, value) -> "Scalar":
        if self.field.is_root:
            value = value.rem(_root_ring(self.field.l, self.field.params)[1])
        return Scalar(self.field, value)

    def __add__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.value + v)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def __sub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, self.value - v)

    def __rsub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, v - self.value)

    def __mul__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self._reduce(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self * Scalar(self.field, v).inverse()

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Scalar(self.field, v) * self.inverse()

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError(f"division by zero in {self.field}")
        if not self.field.is_root:
            return Scalar(self.field, self.field.domain.one / self.value)
        if not self.is_param_free:
            raise ValueError(f"{self} depends on {','.join(self.field.params)} and cannot be inverted")
        l = self.field.l
        R1, phi1 = _univariate_ring(l)
        u = R1.from_dict({(m[0],): c for m, c in self.value.terms()})
        s, _, h = u.gcdex(phi1)
        s = s.quo_ground(h.LC)
        rest = (0,) * len(self.field.params)
        R = self.field.domain
        return Scalar(self.field, R.from_dict({(m[0],) + rest: c for m, c in s.terms()}))

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            raise TypeError(f"scalar exponent must be an integer, got {n!r}")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.value == self.field._raw(other)
        return NotImplemented

    # sorting only, for stable report ordering
    def __lt__(self, other) -> bool:
        return str(self) < str(other)

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    @property
    def is_param_free(self) -> bool:
        polys = [self.value] if self.field.is_root else [self.value.numer, self.value.denom]
        return all(not any(m[1:]) for p in polys for m in p.itermonoms())

    def at_one(self) -> Fraction:
        """specialize q to 1 (generic mode, no parameters)"""
        if self.field.is_root or not self.is_param_free:
            raise ValueError(f"cannot specialize {self} in {self.field} at q = 1")
        num = sum(int(c) for c in self.value.numer.coeffs())
        den = sum(int(c) for c in self.value.denom.coeffs())
        if den == 0:
            raise ZeroDivisionError(f"{self} has a pole at q = 1")
        return Fraction(num, den)

    def is_term(self) -> bool:
        """true when the text form is a single signed monomial"""
        s = str(self)
        return " + " not in s and " - " not in s and not s.startswith("(")

    def __str__(self) -> str:
        names = self.field.symbols
        if self.field.is_root:
            return _poly_text(_terms(self.value, shift=0), names)
        numer, denom = self.value.numer, self.value.denom
        if denom.is_term and not any(denom.LM[1:]):
            d, shift = int(denom.LC), denom.LM[0]
            return _poly_text(_terms(numer, shift, d), names)
        return f"({_poly_text(_terms(numer), names)})/({_poly_text(_terms(denom), names)})"

    def __repr__(self) -> str:
        return f"Scalar({self}, {self.field})"


def _terms(poly, shift: int = 0, den: int = 1) -> list[tuple[tuple[int, ...], Fraction]]:
    out = []
    for monom, c in poly.terms():
        if hasattr(c, "denominator") and not isinstance(c, int):
            c = Fraction(int(c.numerator), int(c.denominator))
        else:
            c = Fraction(int(c))
        out.append(((monom[0] - shift,) + tuple(monom[1:]), c / den))
    return out


def _poly_text(terms, names) -> str:
    if not terms:
        return "0"
    parts = []
    for monom, c in sorted(terms, key=lambda t: t[0], reverse=True):
        factors = [
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, monom) if k != 0
        ]
        mono = "*".join(factors)
        if not mono:
            text = str(c)
        elif c == 1:
            text = mono
        elif c == -1:
            text = f"-{mono}"
        else:
            text = f"{c}*{mono}"
        parts.append(text)
    return join_signed(parts)


def join_signed(parts: list[str]) -> str:
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


@lru_cache(maxsize=None)
def q_power(field: ScalarField, k: int) -> Scalar:
    return field.from_laurent({k: 1})


def q_integer(field: ScalarField, n: int) -> Scalar:
    """(n)_q = 1 + q + ... + q^(n-1); (-n)_q = -q^(-n) (n)_q"""
    if n == 0:
        return field.zero
    if n < 0:
        return -q_power(field, n) * q_integer(field, -n)
    return field.from_laurent({k: 1 for k in range(n)})


def q_factorial(field: ScalarField, n: int) -> Scalar:
    if n < 0:
        raise ValueError(f"q-factorial of negative integer {n}")
    result = field.one
    for k in range(2, n + 1):
        result = result * q_integer(field, k)
    return result


@lru_cache(maxsize=None)
def gaussian_coefficients(n: int, r: int) -> tuple[tuple[int, int], ...]:
    """Laurent coefficients (exponent, c) of the Gaussian polynomial [n, r] in z.

    Extended to negative n by running the q-Pascal rule
    [n+1, r] = [n, r-1] + z^r [n, r] backwards.
    """
    if r < 0:
        return ()
    if r == 0:
        return ((0, 1),)
    if n >= 0:
        if n < r:
            return ()
        coeffs = dict(gaussian_coefficients(n - 1, r - 1))
        for k, c in gaussian_coefficients(n - 1, r):
            coeffs[k + r] = coeffs.get(k + r, 0) + c
    else:
        coeffs = {k - r: c for k, c in gaussian_coefficients(n + 1, r)}
        for k, c in gaussian_coefficients(n, r - 1):
            coeffs[k - r] = coeffs.get(k - r, 0) - c
    return tuple(sorted((k, c) for k, c in coeffs.items() if c))


def gauss_binomial(field: ScalarField, n: int, r: int, power: int = 1) -> Scalar:
    """the Gaussian binomial [n, r] evaluated at z = q^power"""
    return field.from_laurent({k * power: c for k, c in gaussian_coefficients(n, r)})


def verify_q_pascal(field: ScalarField, a: int, b: int) -> bool:
    qa = q_power(field, a)
    sums = q_integer(field, a) + qa * q_integer(field, b) == q_integer(field, a + b)
    pascal = gauss_binomial(field, a + b - 1, a - 1) + qa * gauss_binomial(
        field, a + b - 1, a
    ) == gauss_binomial(field, a + b, a)
    return sums and pascal


def truncation_vanishing(field: ScalarField) -> list[tuple[int, int]]:
    """pairs (a, b) below l with a + b >= l whose product coefficient is NOT zero"""
    if not field.is_root:
        raise ValueError("truncation only happens at a root of unity")
    l = field.l
    return [
        (a, b)
        for a in range(l)
        for b in range(l)
        if a + b >= l and gauss_binomial(field, a + b, a)
    ]


class Combination:
    """Finite linear combination of hashable keys with Scalar coefficients.

    Subclasses choose how keys print and sort; zero coefficients are never stored.
    """

    def __init__(self, field: ScalarField, terms=None) -> None:
        self.field: ScalarField = field
        self.terms: dict = {}
        for key, c in (terms or {}).items():
            c = field(c)
            if c:
                self.terms[key] = c

    def _new(self, terms) -> "Combination":
        return type(self)(self.field, terms)

    def _key_text(self, key) -> str:
        return str(key)

    def _sort_key(self, key):
        return key

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
        if other.field != self.field:
            raise TypeError(f"cannot combine elements over {self.field} and {other.field}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not other:
            return self
        if not isinstance(other, Combination):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not other:
            return self
        if not isinstance(other, Combination):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, c):
        c = self.field(c)
        if not c:
            return self._new({})
        return self._new({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(self.field.one / other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        if not isinstance(other, Combination) or type(other) is not type(self):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.field, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, self.field.zero)

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def __iter__(self):
        return iter(self.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.items():
            text = self._key_text(key)
            if not text:
                parts.append(str(c))
            elif c == 1:
                parts.append(text)
            elif c == -1:
                parts.append(f"-{text}")
            elif c.is_term():
                parts.append(f"{c}*{text}")
            else:
                parts.append(f"({c})*{text}")
        return join_signed(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list[list[str]]:
        return [[self._key_text(k) or "1", str(c)] for k, c in self.items()]
