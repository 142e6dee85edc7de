"""Expression language for scalars, generators and carrier elements.

    expr    :: ['+' | '-'] term [ ('+' | '-') term ]*
    term    :: factor [ ('*' | '/') factor ]*
    factor  :: atom [ '^' integer ]
    atom    :: 'e(' integer ')' | 'L(' integer ')' | 'x^(' natural ')' | 'x^' integer
             | natural | identifier | '(' expr ')'

Identifiers are q, e (the root of unity), C, x and field parameters such as t.
Everything printed by the Scalar and Combination classes parses back.
"""

from dataclasses import dataclass, field as dataclass_field

from pyparsing import (
    Forward,
    Literal,
    Optional,
    ParseBaseException,
    Regex,
    Word,
    ZeroOrMore,
    alphanums,
    alphas,
    nums,
    one_of,
)

from qarith import Scalar, ScalarField
from qdivided import DividedElement, LaurentPoly
from qlie import AlgebraElement, BasisElement, Family, GradedAlgebra
from pbw import NoncommPoly


class ParseError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset: int = offset


@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class Symbol:
    name: str
    loc: int = dataclass_field(default=0, compare=False)


@dataclass(frozen=True)
class Generator:
    family: str
    index: int = 0
    loc: int = dataclass_field(default=0, compare=False)


@dataclass(frozen=True)
class Divided:
    a: int


@dataclass(frozen=True)
class Laurent:
    n: int


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Product:
    factors: tuple  # of (op, node)


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


Node = Number | Symbol | Generator | Divided | Laurent | Sum | Product | Power

ATOMS = (Number, Symbol, Generator)


def _identifier(s, loc, t):
    match t[0]:
        case "x":
            return Laurent(1)
        case "C":
            return Generator("C", 0, loc)
        case name:
            return Symbol(name, loc)


def _factor(t):
    return Power(t[0], t[1]) if len(t) == 2 else t[0]


def _term(t):
    if len(t) == 1:
        return t[0]
    return Product((("*", t[0]),) + tuple(zip(t[1::2], t[2::2])))


def _expr(t):
    t = list(t)
    sign = t.pop(0) if isinstance(t[0], str) else "+"
    terms = ((sign, t[0]),) + tuple(zip(t[1::2], t[2::2]))
    if len(terms) == 1 and sign == "+":
        return t[0]
    return Sum(terms)


def _grammar():
    integer = Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))
    natural = Word(nums).set_parse_action(lambda t: int(t[0]))
    lpar, rpar = Literal("(").suppress(), Literal(")").suppress()

    expr = Forward()
    gen_e = (Literal("e(").suppress() - integer + rpar).set_parse_action(
        lambda s, loc, t: Generator("e", t[0], loc)
    )
    gen_L = (Literal("L(").suppress() - integer + rpar).set_parse_action(
        lambda s, loc, t: Generator("L", t[0], loc)
    )
    divided = (Literal("x^(").suppress() - natural + rpar).set_parse_action(lambda t: Divided(t[0]))
    laurent = (Literal("x^").suppress() - integer).set_parse_action(lambda t: Laurent(t[0]))
    number = natural.copy().set_parse_action(lambda t: Number(int(t[0])))
    ident = Word(alphas + "_", alphanums + "_").set_parse_action(_identifier)
    atom = gen_e | gen_L | divided | laurent | number | ident | (lpar + expr + rpar)

    factor = (atom + Optional(Literal("^").suppress() - integer)).set_parse_action(_factor)
    term = (factor + ZeroOrMore(one_of("* /") + factor)).set_parse_action(_term)
    expr <<= (Optional(one_of("+ -")) + term + ZeroOrMore(one_of("+ -") + term)).set_parse_action(_expr)
    return expr


GRAMMAR = _grammar()


def parse(text: str) -> Node:
    try:
        return GRAMMAR.parse_string(text, parse_all=True)[0]
    except ParseBaseException as err:
        # offsets count UTF-8 bytes
        raise ParseError(f"syntax error: {err.msg}", len(text[: err.loc].encode())) from None


def _wrap(node) -> str:
    text = unparse(node)
    return text if isinstance(node, ATOMS) else f"({text})"


def unparse(node) -> str:
    match node:
        case Number(value):
            return str(value)
        case Symbol(name):
            return name
        case Generator("C"):
            return "C"
        case Generator(family, index):
            return f"{family}({index})"
        case Divided(a):
            return f"x^({a})"
        case Laurent(n):
            return "x" if n == 1 else f"x^{n}"
        case Power(base, exponent):
            return f"{_wrap(base)}^{exponent}"
        case Product(factors):
            head = factors[0][1]
            text = unparse(head) if isinstance(head, (Power,) + ATOMS) else _wrap(head)
            for op, f in factors[1:]:
                text += op + (unparse(f) if isinstance(f, (Power,) + ATOMS) else _wrap(f))
            return text
        case Sum(terms):
            parts = []
            for k, (sign, t) in enumerate(terms):
                body = _wrap(t) if isinstance(t, Sum) else unparse(t)
                if k == 0:
                    parts.append(body if sign == "+" else f"-{body}")
                else:
                    parts.append(f" {sign} {body}")
            return "".join(parts)
    raise TypeError(f"not an expression node: {node!r}")


class _Scalars:
    """Evaluation target for plain scalars; carriers override the hooks."""

    what = "scalar"

    def __init__(self, field: ScalarField) -> None:
        self.field: ScalarField = field

    def symbol(self, node: Symbol) -> Scalar:
        f = self.field
        match node.name:
            case "q":
                return f.q
            case "e" if f.is_root:
                return f.q
            case "e":
                raise ValueError(f"e names a root of unity, use q in generic mode (offset {node.loc})")
            case name if name in f.params:
                return f.param(name)
            case name:
                raise ValueError(f"unknown symbol {name!r} at offset {node.loc}")

    def lift(self, c: Scalar):
        return c

    def generator(self, node: Generator):
        raise ValueError(f"generator {unparse(node)} is not a {self.what} (offset {node.loc})")

    def divided(self, node: Divided):
        raise ValueError(f"{unparse(node)} is not a {self.what}")

    def laurent(self, node: Laurent):
        raise ValueError(f"{unparse(node)} is not a {self.what}")


class _Noncomm(_Scalars):
    what = "enveloping algebra element"

    def __init__(self, algebra: GradedAlgebra) -> None:
        super().__init__(algebra.field)
        self.algebra: GradedAlgebra = algebra

    def basis_element(self, node: Generator) -> BasisElement:
        b = BasisElement(Family(node.family), node.index)
        if not self.algebra.legal(b):
            raise ValueError(f"{b} is not a basis element of {self.algebra} (offset {node.loc})")
        return b

    def generator(self, node: Generator):
        return NoncommPoly.word(self.field, self.basis_element(node))

    def lift(self, c: Scalar):
        return NoncommPoly.constant(self.field, c)


class _Elements(_Noncomm):
    what = "Lie algebra element"

    def generator(self, node: Generator):
        return AlgebraElement.basis(self.field, self.basis_element(node))

    def lift(self, c: Scalar):
        if c:
            raise ValueError(f"the constant {c} is not a Lie algebra element")
        return AlgebraElement(self.field)


class _Divided(_Scalars):
    what = "divided power element"

    def divided(self, node: Divided):
        return DividedElement.monomial(self.field, node.a)

    def lift(self, c: Scalar):
        return DividedElement.monomial(self.field, 0, c)


class _Laurent(_Scalars):
    what = "Laurent polynomial"

    def laurent(self, node: Laurent):
        return LaurentPoly.monomial(self.field, node.n)

    def lift(self, c: Scalar):
        return LaurentPoly.monomial(self.field, 0, c)


def _same(target: _Scalars, a, b):
    if isinstance(a, Scalar) and not isinstance(b, Scalar):
        return target.lift(a), b
    if isinstance(b, Scalar) and not isinstance(a, Scalar):
        return a, target.lift(b)
    return a, b


def _evaluate(node, target: _Scalars):
    match node:
        case Number(value):
            return target.field(value)
        case Symbol():
            return target.symbol(node)
        case Generator():
            return target.generator(node)
        case Divided():
            return target.divided(node)
        case Laurent():
            return target.laurent(node)
        case Power(base, exponent):
            value = _evaluate(base, target)
            if isinstance(value, AlgebraElement):
                raise ValueError(f"powers of Lie algebra elements are not defined: {unparse(node)}")
            return value**exponent
        case Product(factors):
            value = _evaluate(factors[0][1], target)
            for op, f in factors[1:]:
                rhs = _evaluate(f, target)
                if op == "/":
                    if not isinstance(rhs, Scalar):
                        raise ValueError(f"cannot divide by {unparse(f)}: not a scalar")
                    value = value / rhs
                elif isinstance(value, Scalar) or isinstance(rhs, Scalar):
                    value = value * rhs
                elif isinstance(value, AlgebraElement):
                    raise ValueError(f"products of Lie algebra elements are not defined: {unparse(node)}")
                else:
                    value = value * rhs
            return value
        case Sum(terms):
            total = None
            for sign, t in terms:
                value = _evaluate(t, target)
                if sign == "-":
                    value = -value
                if total is None:
                    total = value
                else:
                    total, value = _same(target, total, value)
                    total = total + value
            return total
    raise TypeError(f"not an expression node: {node!r}")


def _finish(value, target: _Scalars):
    return target.lift(value) if isinstance(value, Scalar) else value


def to_scalar(text: str, field: ScalarField) -> Scalar:
    return _evaluate(parse(text), _Scalars(field))


def to_noncomm(text: str, algebra: GradedAlgebra) -> NoncommPoly:
    target = _Noncomm(algebra)
    return _finish(_evaluate(parse(text), target), target)


def to_element(text: str, algebra: GradedAlgebra) -> AlgebraElement:
    target = _Elements(algebra)
    return _finish(_evaluate(parse(text), target), target)


def to_divided(text: str, field: ScalarField) -> DividedElement:
    target = _Divided(field)
    return _finish(_evaluate(parse(text), target), target)


def to_laurent(text: str, field: ScalarField) -> LaurentPoly:
    target = _Laurent(field)
    return _finish(_evaluate(parse(text), target), target)

