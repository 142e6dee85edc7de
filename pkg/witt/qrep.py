"""Matrix realizations of graded q-Witt modules.

The mixed-product module A(1) (x) V(t) with V(t) one-dimensional, its graded
submodule lattice, and the representations built from a holomorph triple
(phi, psi, rho(omega)).
"""

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import comb

from linalg import Matrix
from qarith import Scalar, ScalarField, gauss_binomial, q_power
from qlie import AlgebraElement, AlgebraKind, BasisElement, GradedAlgebra, bracket, e

Weight = int | Fraction | Scalar | str


class ModuleRealization:
    """Generators of a graded algebra acting by square matrices.

    grading[c] is the degree of the c-th basis vector, or None for a
    non-graded representation. A window W marks a realization cut off at
    grade W: matrix identities are only compared on columns whose
    intermediate grades stay inside the window.
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        dim: int,
        action: dict[BasisElement, Matrix],
        grading: list[int] | None = None,
        window: int | None = None,
        weight: Scalar | None = None,
    ) -> None:
        if dim < 1:
            raise ValueError(f"module dimension must be positive, got {dim}")
        for b, m in action.items():
            algebra.check(b)
            if m.shape != (dim, dim):
                raise ValueError(f"action of {b} has shape {m.shape}, expected {(dim, dim)}")
        if grading is not None and len(grading) != dim:
            raise ValueError(f"grading has {len(grading)} entries for dimension {dim}")
        if window is not None and grading is None:
            raise ValueError("a windowed realization needs a grading")
        self.algebra: GradedAlgebra = algebra
        self.field: ScalarField = algebra.field
        self.dim: int = dim
        self.action: dict[BasisElement, Matrix] = action
        self.grading: list[int] | None = grading
        self.window: int | None = window
        self.weight: Scalar | None = weight

    @property
    def generators(self) -> list[BasisElement]:
        return sorted(self.action)

    def matrix(self, b: BasisElement) -> Matrix:
        # generators without a matrix act by zero (truncated or L(-1))
        m = self.action.get(b)
        return m if m is not None else Matrix.zeros(self.field, self.dim)

    def act(self, x: AlgebraElement) -> Matrix:
        total = Matrix.zeros(self.field, self.dim)
        for b, c in x.terms.items():
            total = total + self.matrix(b).scale(c)
        return total

    def columns(self, i: int, j: int) -> list[int]:
        if self.window is None:
            return list(range(self.dim))
        return [c for c in range(self.dim) if max(i, j) + self.grading[c] <= self.window]

    def is_graded(self) -> bool:
        if self.grading is None:
            return False
        return all(
            self.grading[r] == self.grading[c] + b.degree
            for b, m in self.action.items()
            for r, c in m.nonzero()
        )

    def represent(self, p) -> Matrix:
        """image of a noncommutative polynomial, word x y z acting as x.(y.(z.v))"""
        total = Matrix.zeros(self.field, self.dim)
        for word, c in p.terms.items():
            image = Matrix.identity(self.field, self.dim)
            for b in word:
                image = image * self.matrix(b)
            total = total + image.scale(c)
        return total

    def to_json(self) -> dict:
        return {str(b): self.action[b].to_json() for b in self.generators}

    def __str__(self) -> str:
        weight = "" if self.weight is None else f", weight {self.weight}"
        return f"{self.algebra} on dimension {self.dim}{weight}"


def _agree(a: Matrix, b: Matrix, columns: list[int]) -> bool:
    return all(a.column(c) == b.column(c) for c in columns)


def _weight(field: ScalarField, t: Weight) -> Scalar:
    if isinstance(t, str):
        return field.param(t)
    return field(t)


def _field_for(base: ScalarField, t: Weight) -> ScalarField:
    if isinstance(t, Scalar):
        return t.field
    if isinstance(t, str):
        return base.with_params((t,))
    return base


def module_axiom_failures(m: ModuleRealization) -> list[tuple[BasisElement, BasisElement]]:
    """pairs (x, y) with {x, y}.v != q^(i+1) x.(y.v) - q^(j+1) y.(x.v)"""
    failures = []
    for x in m.generators:
        for y in m.generators:
            i, j = x.degree, y.degree
            ax, ay = m.matrix(x), m.matrix(y)
            rhs = (ax * ay).scale(q_power(m.field, i + 1)) - (ay * ax).scale(q_power(m.field, j + 1))
            if not _agree(m.act(bracket(m.algebra, x, y)), rhs, m.columns(i, j)):
                failures.append((x, y))
    return failures


def verify_module_axiom(m: ModuleRealization) -> bool:
    return not module_axiom_failures(m)


def _mixed_product(field: ScalarField, top: int, i: int, t: Scalar) -> Matrix:
    # x^(a) (x) v -> ([a+i, i+1] + t q^a [a+i, i]) x^(a+i) (x) v
    rows = [[field.zero] * (top + 1) for _ in range(top + 1)]
    for a in range(top + 1):
        if 0 <= a + i <= top:
            rows[a + i][a] = gauss_binomial(field, a + i, i + 1) + t * q_power(field, a) * gauss_binomial(
                field, a + i, i
            )
    return Matrix(field, rows)


def realize_module(l: int, t: Weight = 0) -> ModuleRealization:
    """W(1,1) at a primitive l-th root of unity acting on A(1,1) (x) V(t)"""
    field = _field_for(ScalarField.root(l), t)
    if not field.is_root or field.l != l:
        raise ValueError(f"weight {t} does not live over root(l={l})")
    w = _weight(field, t)
    alg = GradedAlgebra(AlgebraKind.WITT_EPS, field)
    action = {b: _mixed_product(field, l - 1, b.index, w) for b in alg.basis}
    return ModuleRealization(alg, l, action, list(range(l)), weight=w)


def realize_module_generic(window: int, t: Weight = 0) -> ModuleRealization:
    """W(1) for generic q on A(1) (x) V(t), cut off at grade window"""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    field = _field_for(ScalarField.generic(), t)
    if field.is_root:
        raise ValueError(f"weight {t} is not a generic-mode scalar")
    w = _weight(field, t)
    alg = GradedAlgebra(AlgebraKind.WITT_Q1, field, window)
    action = {b: _mixed_product(field, window, b.index, w) for b in alg.basis}
    return ModuleRealization(alg, window + 1, action, list(range(window + 1)), window, w)


def _closure(m: ModuleRealization, start: set[int]) -> frozenset[int]:
    span = set(start)
    frontier = list(start)
    while frontier:
        c = frontier.pop()
        for mat in m.action.values():
            for r in range(m.dim):
                if mat[r, c] and r not in span:
                    span.add(r)
                    frontier.append(r)
    return frozenset(span)


def graded_submodules(m: ModuleRealization) -> list[frozenset[int]]:
    """coordinate subspaces closed under every generator, smallest first"""
    principal = {_closure(m, {c}) for c in range(m.dim)}
    found = {frozenset()}
    for p in principal:
        found |= {s | p for s in found}
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def composition_series(submodules: list[frozenset[int]]) -> list[frozenset[int]]:
    series = [submodules[0]]
    top = submodules[-1]
    while series[-1] != top:
        # the smallest strict superset has nothing strictly between
        series.append(next(s for s in submodules if s > series[-1]))
    return series


def expected_top_eigenvalue(t: Scalar) -> Scalar:
    """(-1)_e (1 - t) = -e^-1 (1 - t)"""
    return -q_power(t.field, -1) * (1 - t)


def base_top_eigenvalues(m: ModuleRealization) -> tuple[Scalar, Scalar]:
    h = m.matrix(e(0))
    base, top = h[0, 0], h[m.dim - 1, m.dim - 1]
    if m.field.is_root and m.weight is not None:
        if base != m.weight or top != expected_top_eigenvalue(m.weight):
            raise ArithmeticError(f"eigenvalues ({base}, {top}) do not match weight {m.weight}")
    return base, top


@dataclass
class ModuleReport:
    l: int | None
    t: str
    matrices: dict
    grading: list[int] | None
    submodules: list[list[int]]
    composition_series: list[list[int]]
    dims: list[int]
    irreducible: bool
    base_eigenvalue: str
    top_eigenvalue: str
    module_axiom: bool = True

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "t": self.t,
            "matrices": self.matrices,
            "grading": self.grading,
            "submodules": self.submodules,
            "composition_series": self.composition_series,
            "dims": self.dims,
            "irreducible": self.irreducible,
            "base_eigenvalue": self.base_eigenvalue,
            "top_eigenvalue": self.top_eigenvalue,
            "module_axiom": self.module_axiom,
        }


def graded_submodule_analysis(m: ModuleRealization) -> ModuleReport:
    subs = graded_submodules(m)
    series = composition_series(subs)
    dims = [len(b) - len(a) for a, b in zip(series, series[1:])]
    base, top = base_top_eigenvalues(m)
    return ModuleReport(
        l=m.field.l,
        t=str(m.weight) if m.weight is not None else "",
        matrices=m.to_json(),
        grading=m.grading,
        submodules=[sorted(s) for s in subs],
        composition_series=[sorted(s) for s in series],
        dims=dims,
        irreducible=len(subs) == 2,
        base_eigenvalue=str(base),
        top_eigenvalue=str(top),
        module_axiom=verify_module_axiom(m),
    )


def classical_limit_failures(m: ModuleRealization, t: int | Fraction, k: int = 1) -> list[tuple[int, int]]:
    """entries that at q = 1 differ from C(a+i, i+1) + k t C(a+i, i)"""
    failures = []
    for b in m.generators:
        i = b.index
        for a in range(m.dim):
            if not 0 <= a + i < m.dim:
                continue
            expect = comb(a + i, i + 1) + k * t * (comb(a + i, i) if i >= 0 else 0)
            if m.matrix(b)[a + i, a].at_one() != expect:
                failures.append((i, a))
    return failures


@dataclass
class HolomorphRepTriple:
    phi: ModuleRealization
    psi: dict[int, Matrix]
    rho_omega: Matrix

    @property
    def field(self) -> ScalarField:
        return self.phi.field

    def psi_matrix(self, j: int) -> Matrix:
        # L(-1) and L's outside the range act by zero
        m = self.psi.get(j)
        return m if m is not None else Matrix.zeros(self.field, self.phi.dim)


def _phi_psi(field: ScalarField, top: int, k: Scalar, e_top: int):
    # phi on e(-1)..e(e_top), psi on L(0)..L(top)
    phi, psi = {}, {}
    for i in range(-1, e_top + 1):
        rows = [[field.zero] * (top + 1) for _ in range(top + 1)]
        for a in range(top + 1):
            if 0 <= a + i <= top:
                rows[a + i][a] = gauss_binomial(field, a + i, i + 1)
        phi[i] = Matrix(field, rows)
    for j in range(top + 1):
        rows = [[field.zero] * (top + 1) for _ in range(top + 1)]
        for a in range(top + 1 - j):
            rows[a + j][a] = k * q_power(field, a) * gauss_binomial(field, a + j, j)
        psi[j] = Matrix(field, rows)
    return phi, psi


def example_triple(l: int, k: Weight = 1, t: Weight = 1) -> HolomorphRepTriple:
    """phi = x^(i+1) d, psi(L_j) = k x^(j) tau on A(1,1), rho(omega) = [t]"""
    field = _field_for(_field_for(ScalarField.root(l), k), t)
    phi, psi = _phi_psi(field, l - 1, _weight(field, k), l - 2)
    alg = GradedAlgebra(AlgebraKind.WITT_EPS, field)
    realization = ModuleRealization(alg, l, {e(i): m for i, m in phi.items()}, list(range(l)))
    return HolomorphRepTriple(realization, psi, Matrix(field, [[_weight(field, t)]]))


def example_triple_generic(window: int, k: Weight = 1, t: Weight = 1) -> HolomorphRepTriple:
    field = _field_for(_field_for(ScalarField.generic(), k), t)
    phi, psi = _phi_psi(field, window, _weight(field, k), window)
    alg = GradedAlgebra(AlgebraKind.WITT_Q1, field, window)
    realization = ModuleRealization(
        alg, window + 1, {e(i): m for i, m in phi.items()}, list(range(window + 1)), window
    )
    return HolomorphRepTriple(realization, psi, Matrix(field, [[_weight(field, t)]]))


@dataclass
class CompatReport:
    compatible: bool = True
    normalization: str = "printed"
    pairs: list[dict] = dataclass_field(default_factory=list)
    failures: list[dict] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.compatible and self.normalization in ("printed", "any")

    def to_dict(self) -> dict:
        return {
            "compatible": self.compatible,
            "normalization": self.normalization,
            "pairs": self.pairs,
            "failures": self.failures,
        }


def holomorph_compat_check(triple: HolomorphRepTriple) -> CompatReport:
    """phi(e_i) psi(L_j) - e^(j-i) psi(L_j) phi(e_i) against mu_ij psi(L_(i+j))"""
    phi, f = triple.phi, triple.field
    report = CompatReport()
    printed_ok = weighted_ok = True
    for x in phi.generators:
        i = x.index
        for j in sorted(triple.psi):
            columns = phi.columns(i, j)
            lhs = phi.matrix(x) * triple.psi_matrix(j) - (triple.psi_matrix(j) * phi.matrix(x)).scale(
                q_power(f, j - i)
            )
            target = triple.psi_matrix(i + j)
            entries = [(r, c) for c in columns for r in range(phi.dim) if target[r, c]]
            if not entries:
                if any(lhs[r, c] for c in columns for r in range(phi.dim)):
                    report.compatible = False
                    report.failures.append({"i": i, "j": j, "reason": "psi(L_(i+j)) vanishes"})
                continue
            r, c = entries[0]
            mu = lhs[r, c] / target[r, c]
            if not _agree(lhs, target.scale(mu), columns):
                report.compatible = False
                report.failures.append({"i": i, "j": j, "reason": "not proportional"})
                continue
            printed = gauss_binomial(f, i + j, i + 1)
            weighted = q_power(f, i + 1) * printed
            printed_ok &= mu == printed
            weighted_ok &= mu == weighted
            report.pairs.append(
                {"i": i, "j": j, "mu": str(mu), "printed": mu == printed, "weighted": mu == weighted}
            )
    match printed_ok, weighted_ok:
        case True, True:
            report.normalization = "any"
        case True, False:
            report.normalization = "printed"
        case False, True:
            report.normalization = "weighted"
        case _:
            report.normalization = "neither"
    return report


def psi_commutation_failures(triple: HolomorphRepTriple) -> list[tuple[int, int]]:
    """pairs with e^(i+1) psi_i psi_j != e^(j+1) psi_j psi_i"""
    f, phi = triple.field, triple.phi
    failures = []
    for i in sorted(triple.psi):
        for j in sorted(triple.psi):
            pi, pj = triple.psi[i], triple.psi[j]
            lhs = (pi * pj).scale(q_power(f, i + 1))
            rhs = (pj * pi).scale(q_power(f, j + 1))
            if not _agree(lhs, rhs, phi.columns(i, j)):
                failures.append((i, j))
    return failures


def deform_representation(triple: HolomorphRepTriple, a: Weight) -> ModuleRealization:
    """phi_(a psi)(e_i) = phi(e_i) + a psi(L_i)"""
    if not holomorph_compat_check(triple).ok:
        raise ValueError("phi and psi are not compatible; cannot deform")
    phi = triple.phi
    a = _weight(phi.field, a)
    action = {x: phi.matrix(x) + triple.psi_matrix(x.index).scale(a) for x in phi.generators}
    return ModuleRealization(phi.algebra, phi.dim, action, phi.grading, phi.window, a)


def tensor_representation(
    triple: HolomorphRepTriple, omega_matrix: Matrix | None = None, graded: bool = True
) -> ModuleRealization:
    """phi(e_i) (x) id + psi(L_i) (x) rho(omega) on the tensor product space"""
    if not holomorph_compat_check(triple).ok:
        raise ValueError("phi and psi are not compatible; no tensor representation")
    rho = triple.rho_omega if omega_matrix is None else omega_matrix
    phi = triple.phi
    if not rho.is_square:
        raise ValueError(f"rho(omega) must be square, got shape {rho.shape}")
    if rho.field != phi.field:
        raise ValueError(f"rho(omega) is over {rho.field}, the module over {phi.field}")
    n = rho.shape[0]
    identity = Matrix.identity(phi.field, n)
    action = {
        x: phi.matrix(x).kron(identity) + triple.psi_matrix(x.index).kron(rho) for x in phi.generators
    }
    grading = None
    if graded and phi.grading is not None:
        grading = [g for g in phi.grading for _ in range(n)]
    window = phi.window if grading is not None else None
    return ModuleRealization(phi.algebra, phi.dim * n, action, grading, window)


def superpose(
    phi: ModuleRealization, psis: list[tuple[Weight, dict[int, Matrix]]], rho: Matrix
) -> HolomorphRepTriple:
    """(phi, sum of k_a psi_a, rho)"""
    total: dict[int, Matrix] = {}
    for k, psi in psis:
        k = _weight(phi.field, k)
        for j, m in psi.items():
            total[j] = total[j] + m.scale(k) if j in total else m.scale(k)
    return HolomorphRepTriple(phi, total, rho)
