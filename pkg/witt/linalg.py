# exact matrices over Scalar, stored as sympy DomainMatrix
from functools import lru_cache

from sympy import I, QQ, exp, pi
from sympy.polys.matrices import DomainMatrix

from qarith import Scalar, ScalarField


@lru_cache(maxsize=None)
def cyclotomic_field(l: int):
    """Q(e) for a primitive l-th root of unity e, minimal polynomial Phi_l"""
    return QQ.algebraic_field(exp(2 * pi * I / l))


@lru_cache(maxsize=None)
def storage_domain(field: ScalarField):
    # root mode keeps e inside the algebraic field, parameters as polynomial variables
    if not field.is_root:
        return field.domain.to_domain()
    K = cyclotomic_field(field.l)
    return K.poly_ring(*field.params) if field.params else K


def to_domain(field: ScalarField, s: Scalar):
    if not field.is_root:
        return s.value
    K = cyclotomic_field(field.l)
    by_params: dict[tuple, dict[int, object]] = {}
    for monom, c in s.value.terms():
        by_params.setdefault(monom[1:], {})[monom[0]] = c
    if not field.params:
        return K.new(by_params.get((), {}))
    return storage_domain(field).ring.from_dict({pm: K.new(cs) for pm, cs in by_params.items()})


def from_domain(field: ScalarField, x) -> Scalar:
    if not field.is_root:
        return Scalar(field, x)
    items = x.items() if field.params else [((), x)]
    terms = {}
    for pm, a in items:
        coeffs = a.to_list()
        for k, c in enumerate(coeffs):
            if c:
                terms[(len(coeffs) - 1 - k,) + pm] = c
    return Scalar(field, field.domain.from_dict(terms))


class Matrix:
    def __init__(self, field: ScalarField, rows) -> None:
        rows = [[to_domain(field, field(x)) for x in row] for row in rows]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError(f"ragged matrix rows: {sorted(widths)}")
        shape = (len(rows), widths.pop() if widths else 0)
        self.field: ScalarField = field
        self.dm: DomainMatrix = DomainMatrix(rows, shape, storage_domain(field))

    @classmethod
    def wrap(cls, field: ScalarField, dm: DomainMatrix) -> "Matrix":
        m = cls.__new__(cls)
        m.field, m.dm = field, dm.to_dense()
        return m

    @classmethod
    def zeros(cls, field: ScalarField, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls.wrap(field, DomainMatrix.zeros((n, m), storage_domain(field)))

    @classmethod
    def identity(cls, field: ScalarField, n: int) -> "Matrix":
        return cls.wrap(field, DomainMatrix.eye(n, storage_domain(field)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.dm.shape

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    @property
    def rows(self) -> list[list[Scalar]]:
        return [[from_domain(self.field, x) for x in row] for row in self.dm.to_list()]

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        return from_domain(self.field, self.dm[ij].element)

    def column(self, j: int) -> list[Scalar]:
        return [self[i, j] for i in range(self.shape[0])]

    def _check(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise TypeError(f"cannot combine matrices over {self.field} and {other.field}")

    def _same_shape(self, other: "Matrix") -> None:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix.wrap(self.field, self.dm + other.dm)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix.wrap(self.field, self.dm - other.dm)

    def __neg__(self) -> "Matrix":
        return Matrix.wrap(self.field, -self.dm)

    def scale(self, c) -> "Matrix":
        return Matrix.wrap(self.field, self.dm.scalarmul(to_domain(self.field, self.field(c))))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix.wrap(self.field, self.dm.matmul(other.dm))
        return self.scale(other)

    def __rmul__(self, other) -> "Matrix":
        return self.scale(other)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        n, m = self.shape
        p, r = other.shape
        entries = {
            (i * p + s, j * r + t): a * b
            for (i, j), a in self.dm.to_dok().items()
            for (s, t), b in other.dm.to_dok().items()
        }
        return Matrix.wrap(self.field, DomainMatrix.from_dok(entries, (n * p, m * r), self.dm.domain))

    def is_zero(self) -> bool:
        return self.dm.is_zero_matrix

    def nonzero(self) -> list[tuple[int, int]]:
        return sorted(self.dm.to_dok())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.dm.to_dok() == other.dm.to_dok()

    def __hash__(self) -> int:
        return hash((self.field, self.shape, str(self)))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)


def _field_matrix(field: ScalarField, rows) -> DomainMatrix:
    if field.is_root and field.params:
        raise ValueError(f"row reduction needs a field, {field} has parameters")
    return Matrix(field, rows).dm


def row_echelon(field: ScalarField, vectors) -> tuple[list[list[Scalar]], list[int]]:
    """reduced row echelon form: (nonzero rows, pivot column of each row)"""
    vectors = list(vectors)
    if not vectors:
        return [], []
    reduced, pivots = _field_matrix(field, vectors).rref(method="GJ")
    rows = Matrix.wrap(field, reduced).rows
    return rows[: len(pivots)], list(pivots)


def nullspace(field: ScalarField, rows, ncols: int) -> list[list[Scalar]]:
    """basis of {v : rows . v = 0}, one free coordinate set to 1 per vector"""
    rows = list(rows)
    if not rows:
        return Matrix.identity(field, ncols).rows
    reduced, pivots = _field_matrix(field, rows).rref(method="GJ")
    return Matrix.wrap(field, reduced.nullspace_from_rref(pivots)).rows
