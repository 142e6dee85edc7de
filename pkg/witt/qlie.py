"""Catalog of graded q-Lie algebras and the verifiers that run over it.

Every algebra is a structure-constant function on a graded basis. Infinite
families are enumerated through an index window; the bracket itself is exact
for any legal index.
"""

from enum import Enum
from functools import lru_cache

from linalg import nullspace, row_echelon
from qarith import (
    Combination,
    Scalar,
    ScalarField,
    gauss_binomial,
    q_integer,
    q_power,
)
from qdivided import LaurentPoly, apply_laurent_e


class Family(Enum):
    E = "e"
    L = "L"
    C = "C"


_RANK = {Family.E: 0, Family.L: 1, Family.C: 2}


# hashable basis vector e(i), L(j) or the central C
class BasisElement:
    __slots__ = ("family", "index")

    def __init__(self, family: Family, index: int = 0) -> None:
        self.family: Family = family
        self.index: int = 0 if family is Family.C else index

    @property
    def degree(self) -> int:
        return 0 if self.family is Family.C else self.index

    @property
    def sort_key(self) -> tuple[int, int]:
        return (_RANK[self.family], self.index)

    def __hash__(self) -> int:
        return hash((self.family, self.index))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BasisElement)
            and self.family == other.family
            and self.index == other.index
        )

    # PBW order: e's by index, then L's by index, then C
    def __lt__(self, other) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.family is Family.C:
            return "C"
        return f"{self.family.value}({self.index})"

    __repr__ = __str__


def e(i: int) -> BasisElement:
    return BasisElement(Family.E, i)


def L(j: int) -> BasisElement:
    return BasisElement(Family.L, j)


C = BasisElement(Family.C)


class AlgebraElement(Combination):
    def _sort_key(self, b: BasisElement):
        return b.sort_key

    @classmethod
    def basis(cls, field: ScalarField, b: BasisElement, c=1) -> "AlgebraElement":
        return cls(field, {b: c})

    @property
    def degrees(self) -> set[int]:
        return {b.degree for b in self.terms}


class AlgebraKind(Enum):
    WITT_Q = "witt-q"
    WITT_Q1 = "witt-q1"
    WITT_EPS = "witt-eps"
    VIRASORO_Q = "virasoro-q"
    HOLOMORPH_Q = "holomorph-q"
    HOLOMORPH_EPS = "holomorph-eps"
    Q_ABELIAN = "q-abelian"


ROOT_ONLY = {AlgebraKind.WITT_EPS, AlgebraKind.HOLOMORPH_EPS}
GENERIC_ONLY = {AlgebraKind.VIRASORO_Q}


class GradedAlgebra:
    def __init__(self, kind: AlgebraKind, field: ScalarField, window: int = 8) -> None:
        if kind in ROOT_ONLY and not field.is_root:
            raise ValueError(f"{kind.value} needs a root of unity (root mode with --l)")
        if kind in GENERIC_ONLY and field.is_root:
            raise ValueError(
                f"{kind.value} is only defined for generic q: its cocycle divides by (2)_(q^i)"
            )
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        self.kind: AlgebraKind = kind
        self.field: ScalarField = field
        self.window: int = window

    def __hash__(self) -> int:
        return hash((self.kind, self.field, self.window))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedAlgebra)
            and (self.kind, self.field, self.window) == (other.kind, other.field, other.window)
        )

    def __str__(self) -> str:
        return f"{self.kind.value} over {self.field}"

    @property
    def finite(self) -> bool:
        return self.field.is_root and self.kind in ROOT_ONLY | {AlgebraKind.Q_ABELIAN}

    def windowed(self, window: int) -> "GradedAlgebra":
        return GradedAlgebra(self.kind, self.field, window)

    def legal(self, b: BasisElement) -> bool:
        """index validity, ignoring the sweep window"""
        l = self.field.l
        i = b.index
        match self.kind, b.family:
            case AlgebraKind.WITT_Q, Family.E:
                return True
            case AlgebraKind.VIRASORO_Q, Family.E | Family.C:
                return True
            case (AlgebraKind.WITT_Q1 | AlgebraKind.HOLOMORPH_Q), Family.E:
                return i >= -1
            case (AlgebraKind.WITT_EPS | AlgebraKind.HOLOMORPH_EPS), Family.E:
                return -1 <= i <= l - 2
            case AlgebraKind.HOLOMORPH_Q, Family.L:
                return i >= 0
            case AlgebraKind.HOLOMORPH_EPS, Family.L:
                return 0 <= i <= l - 1
            case AlgebraKind.Q_ABELIAN, Family.L:
                return i >= 0 and (l is None or i <= l - 1)
            case _, _:
                return False

    def check(self, b: BasisElement) -> BasisElement:
        if not self.legal(b):
            raise ValueError(f"{b} is not a basis element of {self}")
        return b

    @property
    def basis(self) -> list[BasisElement]:
        l, w = self.field.l, self.window
        match self.kind:
            case AlgebraKind.WITT_Q:
                return [e(i) for i in range(-w, w + 1)]
            case AlgebraKind.VIRASORO_Q:
                return [e(i) for i in range(-w, w + 1)] + [C]
            case AlgebraKind.WITT_Q1:
                return [e(i) for i in range(-1, w + 1)]
            case AlgebraKind.WITT_EPS:
                return [e(i) for i in range(-1, l - 1)]
            case AlgebraKind.HOLOMORPH_Q:
                return [e(i) for i in range(-1, w + 1)] + [L(j) for j in range(w + 1)]
            case AlgebraKind.HOLOMORPH_EPS:
                return [e(i) for i in range(-1, l - 1)] + [L(j) for j in range(l)]
            case AlgebraKind.Q_ABELIAN:
                return [L(j) for j in range(l if l else w + 1)]

    def element(self, b: BasisElement, c=1) -> AlgebraElement:
        return AlgebraElement.basis(self.field, self.check(b), c)

    def bracket(self, x: BasisElement, y: BasisElement) -> AlgebraElement:
        return bracket(self, x, y)


def witt_constant(field: ScalarField, i: int, j: int) -> Scalar:
    """{e_i, e_j} = [(j+1)_q - (i+1)_q] e_(i+j)"""
    return q_integer(field, j + 1) - q_integer(field, i + 1)


def divided_constant(field: ScalarField, i: int, j: int) -> Scalar:
    n = i + j + 1
    return gauss_binomial(field, n, i + 1) - gauss_binomial(field, n, j + 1)


def holomorph_constant(field: ScalarField, i: int, j: int) -> Scalar:
    """{e_(i), L_j} = q^(i+1) [i+j, i+1]_q L_(i+j)"""
    return q_power(field, i + 1) * gauss_binomial(field, i + j, i + 1)


def degenerate_structure_constant(i: int, j: int):
    return witt_constant(ScalarField.generic(), i, j).at_one()


def virasoro_cocycle(field: ScalarField, i: int) -> Scalar:
    """coefficient of C in {e_i, e_-i}"""
    if field.is_root:
        raise ValueError("the Virasoro cocycle is only defined for generic q")
    qi = q_power(field, i)
    num = q_integer(field, i - 1) * q_integer(field, i) * q_integer(field, i + 1)
    den = qi * (1 + qi) * q_integer(field, 2) * q_integer(field, 3)
    return num / den


@lru_cache(maxsize=None)
def _structure(kind: AlgebraKind, field: ScalarField, l, x: BasisElement, y: BasisElement):
    if kind is AlgebraKind.Q_ABELIAN or x.family is Family.C or y.family is Family.C:
        return ()
    i, j = x.index, y.index
    match x.family, y.family:
        case Family.E, Family.E:
            if kind in (AlgebraKind.WITT_Q, AlgebraKind.VIRASORO_Q):
                out = [(e(i + j), witt_constant(field, i, j))]
                if kind is AlgebraKind.VIRASORO_Q and i + j == 0:
                    out.append((C, virasoro_cocycle(field, i)))
                return tuple(out)
            return ((e(i + j), divided_constant(field, i, j)),)
        case Family.E, Family.L:
            return ((L(i + j), holomorph_constant(field, i, j)),)
        case Family.L, Family.E:
            return ((L(i + j), -holomorph_constant(field, j, i)),)
    return ()


def bracket(alg: GradedAlgebra, x: BasisElement, y: BasisElement) -> AlgebraElement:
    alg.check(x)
    alg.check(y)
    terms = {}
    for b, c in _structure(alg.kind, alg.field, alg.field.l, x, y):
        # targets outside the algebra (truncation, L(-1)) are zero
        if c and alg.legal(b):
            terms[b] = c
    return AlgebraElement(alg.field, terms)


def _as_element(alg: GradedAlgebra, x) -> AlgebraElement:
    if isinstance(x, BasisElement):
        return alg.element(x)
    return x


def bracket_inhomogeneous(alg: GradedAlgebra, x, y) -> AlgebraElement:
    x, y = _as_element(alg, x), _as_element(alg, y)
    result = AlgebraElement(alg.field)
    for a, c in x.terms.items():
        for b, d in y.terms.items():
            result = result + bracket(alg, a, b).scale(c * d)
    return result


def tilde_weight(alg: GradedAlgebra, x) -> AlgebraElement:
    """x~ = sum of q^(i+1) x_i over homogeneous components"""
    x = _as_element(alg, x)
    return AlgebraElement(
        alg.field, {b: c * q_power(alg.field, b.degree + 1) for b, c in x.terms.items()}
    )


def _degree(x: AlgebraElement) -> int:
    degrees = x.degrees
    if len(degrees) > 1:
        raise ValueError(f"{x} is not homogeneous")
    return degrees.pop() if degrees else 0


def jacobi_sum(alg: GradedAlgebra, x, y, z) -> AlgebraElement:
    x, y, z = (_as_element(alg, a) for a in (x, y, z))
    total = AlgebraElement(alg.field)
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        # central C has degree 0, weight (2)_1 = 2
        weight = 1 + q_power(alg.field, _degree(a))
        total = total + bracket_inhomogeneous(alg, a, bracket_inhomogeneous(alg, b, c)).scale(weight)
    return total


def verify_weighted_jacobi(alg: GradedAlgebra, x, y, z) -> bool:
    return not jacobi_sum(alg, x, y, z)


def verify_antisymmetry(alg: GradedAlgebra, x: BasisElement, y: BasisElement) -> bool:
    return bracket(alg, x, y) == -bracket(alg, y, x) and not bracket(alg, x, x)


def _solve(field: ScalarField, basis: list[BasisElement], columns: list[dict]) -> list[AlgebraElement]:
    # nullspace of c -> sum of c_b * columns[b], one row per constraint key
    keys = sorted({k for col in columns for k in col}, key=lambda kt: (kt[0], kt[1].sort_key))
    rows = [[col.get(k, field.zero) for col in columns] for k in keys]
    return [AlgebraElement(field, dict(zip(basis, v))) for v in nullspace(field, rows, len(basis))]


def _constraints(brackets) -> dict:
    # tag each coefficient with the index of the element it came from
    return {(k, t): c for k, x in enumerate(brackets) for t, c in x.terms.items()}


def q_centralizer(alg: GradedAlgebra, subset, window: int | None = None) -> list[AlgebraElement]:
    """basis of {x : {x, s} = 0 for every s in subset}"""
    if window is not None:
        alg = alg.windowed(window)
    basis = alg.basis
    subset = [_as_element(alg, s) for s in subset]
    columns = [_constraints(bracket_inhomogeneous(alg, b, s) for s in subset) for b in basis]
    return _solve(alg.field, basis, columns)


def q_normalizer(alg: GradedAlgebra, subspace, window: int | None = None) -> list[AlgebraElement]:
    """basis of {x : {x, S} is contained in S}"""
    if window is not None:
        alg = alg.windowed(window)
    basis = alg.basis
    subspace = [_as_element(alg, s) for s in subspace]
    keys = sorted({k for s in subspace for k in s.terms}, key=lambda b: b.sort_key)
    reduced, pivots = row_echelon(alg.field, [[s.coefficient(k) for k in keys] for s in subspace])
    spanning = [AlgebraElement(alg.field, dict(zip(keys, row))) for row in reduced]

    # v lies in S iff v minus its pivot-coordinate combination vanishes
    def residual(v: AlgebraElement) -> AlgebraElement:
        for p, s in zip(pivots, spanning):
            c = v.coefficient(keys[p])
            if c:
                v = v - s.scale(c)
        return v

    columns = [
        _constraints(residual(bracket_inhomogeneous(alg, b, s)) for s in spanning) for b in basis
    ]
    return _solve(alg.field, basis, columns)


def is_q_central(alg: GradedAlgebra, x) -> bool:
    return all(not bracket_inhomogeneous(alg, x, b) for b in alg.basis)


def verify_central_split(l: int) -> bool:
    """L_0 is central in span{L_0} + W and the e's close among themselves"""
    alg = GradedAlgebra(AlgebraKind.HOLOMORPH_EPS, ScalarField.root(l))
    es = [b for b in alg.basis if b.family is Family.E]
    if any(bracket(alg, x, L(0)) for x in es):
        return False
    return all(
        t.family is Family.E for x in es for y in es for t in bracket(alg, x, y).terms
    )


def verify_cocycle_antisymmetry(field: ScalarField, i: int) -> bool:
    return virasoro_cocycle(field, -i) == -virasoro_cocycle(field, i)


def cocycle_delta(field: ScalarField, r: int) -> Scalar:
    """Delta(r) = q^r (2)_(q^r) c(r, -r)"""
    qr = q_power(field, r)
    return qr * (1 + qr) * virasoro_cocycle(field, r)


def verify_cocycle_recursion(field: ScalarField, r_max: int) -> bool:
    """iterate Delta(r) = (r+1)_q / (r-2)_q Delta(r-1) from Delta(2) = 1"""
    if field.is_root:
        raise ValueError("the cocycle recursion is only defined for generic q")
    if r_max < 3:
        raise ValueError(f"r_max must be >= 3, got {r_max}")
    six = q_integer(field, 2) * q_integer(field, 3)
    delta = field.one
    if cocycle_delta(field, 2) != delta:
        return False
    for r in range(3, r_max + 1):
        ratio = q_integer(field, r + 1) / q_integer(field, r - 2)
        printed = (q_power(field, 2) - q_power(field, 1 - r)) / (
            q_power(field, -1) - q_power(field, 1 - r)
        )
        if ratio != printed:
            return False
        delta = delta * ratio
        closed = q_integer(field, r + 1) * q_integer(field, r) * q_integer(field, r - 1) / six
        if delta != closed or delta != cocycle_delta(field, r):
            return False
    return True


def verify_operator_consistency(field: ScalarField, i: int, j: int, n: int) -> bool:
    """q^(i+1) e_i e_j - q^(j+1) e_j e_i = [(j+1)_q - (i+1)_q] e_(i+j) on x^n"""
    x = LaurentPoly.monomial(field, n)
    lhs = apply_laurent_e(i, apply_laurent_e(j, x)).scale(q_power(field, i + 1)) - apply_laurent_e(
        j, apply_laurent_e(i, x)
    ).scale(q_power(field, j + 1))
    rhs = apply_laurent_e(i + j, x).scale(witt_constant(field, i, j))
    return lhs == rhs
