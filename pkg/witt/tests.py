from fractions import Fraction
from functools import reduce
import json

from click.testing import CliRunner
import pytest

import cli
from linalg import Matrix, nullspace, row_echelon
from pbw import (
    NoncommPoly,
    ReductionSystem,
    Strategy,
    central_elements,
    central_elements_check,
    check_confluence,
    defining_relation_failures,
    derived_power_coefficient,
    eps_system,
    graded_leading_term_check,
    leading_coefficients,
    power_commutation_check,
    rules_compatible,
    strategy_agreement,
    verify_inhomogeneous,
    zero_divisor_sample,
)
from qarith import (
    ScalarField,
    gauss_binomial,
    q_factorial,
    q_integer,
    q_power,
    truncation_vanishing,
    verify_q_pascal,
)
from qdivided import (
    Carrier,
    DividedElement,
    LaurentPoly,
    apply_e,
    difference_quotient,
    dp_multiply,
    jackson_derivative,
    to_laurent as divided_to_laurent,
    verify_rescaling,
    verify_skew_leibniz,
)
from qlie import (
    C,
    AlgebraElement,
    AlgebraKind,
    GradedAlgebra,
    L,
    bracket,
    degenerate_structure_constant,
    e,
    is_q_central,
    q_centralizer,
    q_normalizer,
    verify_antisymmetry,
    verify_central_split,
    verify_cocycle_antisymmetry,
    verify_cocycle_recursion,
    verify_operator_consistency,
    verify_weighted_jacobi,
    virasoro_cocycle,
)
from qparse import (
    Generator,
    ParseError,
    Product,
    parse,
    to_divided,
    to_element,
    to_laurent,
    to_noncomm,
    to_scalar,
    unparse,
)
from qrep import (
    base_top_eigenvalues,
    classical_limit_failures,
    deform_representation,
    example_triple,
    example_triple_generic,
    expected_top_eigenvalue,
    graded_submodule_analysis,
    holomorph_compat_check,
    psi_commutation_failures,
    realize_module,
    realize_module_generic,
    superpose,
    tensor_representation,
    verify_module_axiom,
)

G = ScalarField.generic()


def g(text):
    """helper, parse a generic-mode scalar"""
    return to_scalar(text, G)


def eps(l, text="e"):
    """helper, parse a scalar at a primitive l-th root of unity"""
    return to_scalar(text, ScalarField.root(l))


def alg(kind, l=None, window=8):
    """helper, catalog algebra by kind value"""
    field = ScalarField.root(l) if l else G
    return GradedAlgebra(AlgebraKind(kind), field, window)


# q-integers, factorials, Gaussian binomials
@pytest.mark.parametrize(
    "input, expect",
    [
        ((q_integer, 3), "q^2 + q + 1"),
        ((q_integer, 0), "0"),
        ((q_integer, -2), "-q^-1 - q^-2"),
        ((q_factorial, 3), "q^3 + 2*q^2 + 2*q + 1"),
        ((q_factorial, 0), "1"),
    ],
)
def test_q_numbers(input, expect):
    fn, n = input
    assert str(fn(G, n)) == expect
    assert g(expect) == fn(G, n)


@pytest.mark.parametrize(
    "input, expect",
    [
        ((4, 2), "q^4 + q^3 + 2*q^2 + q + 1"),
        ((5, 0), "1"),
        ((3, 4), "0"),
        ((3, -1), "0"),
    ],
)
def test_gauss_binomial(input, expect):
    assert str(gauss_binomial(G, *input)) == expect


def test_gauss_symmetry():
    assert all(gauss_binomial(G, n, k) == gauss_binomial(G, n, n - k) for n in range(13) for k in range(n + 1))


def test_q_factorial_negative():
    with pytest.raises(ValueError):
        q_factorial(G, -1)


@pytest.mark.parametrize(
    "input, expect",
    [
        (gauss_binomial(G, 6, 2), 15),
        (q_integer(G, -3), -3),
        (q_factorial(G, 4), 24),
        (gauss_binomial(G, -3, 2), 6),
    ],
)
def test_at_one(input, expect):
    assert input.at_one() == expect


def test_from_laurent_fractions():
    s = G.from_laurent({-1: Fraction(1, 2), 0: Fraction(1, 4), 2: Fraction(1, 3)})
    assert s * 12 == 6 * q_power(G, -1) + 3 + 4 * q_power(G, 2)


@pytest.mark.parametrize("field", [G] + [ScalarField.root(l) for l in (3, 5, 7, 8, 12)])
def test_q_pascal(field):
    assert all(verify_q_pascal(field, a, b) for a in range(-6, 13) for b in range(-6, 13))


@pytest.mark.parametrize("l", [3, 5, 7, 8, 12])
def test_root_vanishing(l):
    field = ScalarField.root(l)
    assert q_integer(field, l) == 0
    assert q_integer(field, 2 * l) == 0
    assert all(gauss_binomial(field, l, i) == 0 for i in range(1, l))
    assert q_power(field, l) == 1
    assert truncation_vanishing(field) == []


def test_truncation_needs_root():
    with pytest.raises(ValueError):
        truncation_vanishing(G)


@pytest.mark.parametrize(
    "input, expect",
    [
        ((3, 2), "-e - 1"),
        ((5, 5), "1"),
        ((5, -1), "-e^3 - e^2 - e - 1"),
    ],
)
def test_root_printing(input, expect):
    l, k = input
    assert str(q_power(ScalarField.root(l), k)) == expect


def test_root_inverse():
    field = ScalarField.root(5)
    for x in (field.q, 1 - field.q, q_integer(field, 3)):
        assert x * x.inverse() == 1


def test_scalar_errors():
    with pytest.raises(ZeroDivisionError):
        G.one / G.zero
    with pytest.raises(TypeError):
        G.q + ScalarField.root(5).q
    with pytest.raises(ValueError):
        ScalarField.root(1)
    with pytest.raises(ValueError):
        ScalarField.generic(("q",))
    with pytest.raises(ValueError):
        # parameter-dependent elements are not invertible at a root of unity
        ScalarField.root(5, ("t",)).param("t").inverse()


# commutative carriers
def test_jackson_derivative():
    assert str(jackson_derivative(LaurentPoly.monomial(G, 3))) == "(q^2 + q + 1)*x^2"
    assert str(jackson_derivative(LaurentPoly.monomial(G, -1))) == "-q^-1*x^-2"


def test_difference_quotient():
    p = to_laurent("x^3 - 2*x^-2 + 5", G)
    assert difference_quotient(p) == jackson_derivative(p)


@pytest.mark.parametrize("field", [G, ScalarField.root(5)])
def test_laurent_leibniz(field):
    monomials = [LaurentPoly.monomial(field, n) for n in range(-4, 5)]
    assert all(verify_skew_leibniz(Carrier.LAURENT, u, v) for u in monomials for v in monomials)
    u, v = to_laurent("x^2 + 3*x^-1", field), to_laurent("q*x - 1", field)
    assert verify_skew_leibniz(Carrier.LAURENT, u, v)


@pytest.mark.parametrize("input, expect", [(ScalarField.root(3), 3), (ScalarField.root(5), 5), (G, 7)])
def test_divided_leibniz(input, expect):
    monomials = [DividedElement.monomial(input, a) for a in range(expect)]
    assert all(verify_skew_leibniz(Carrier.DIVIDED, u, v) for u in monomials for v in monomials)


def test_divided_product():
    x1 = DividedElement.monomial(G, 1)
    assert str(x1 * x1) == "(q + 1)*x^(2)"
    field = ScalarField.root(3)
    # x^(1) x^(2) = (3)_e x^(3) vanishes, nothing is lost by truncating
    assert dp_multiply(DividedElement.monomial(field, 1), DividedElement.monomial(field, 2), strict=True) == 0
    with pytest.raises(ValueError):
        DividedElement.monomial(field, 3)


@pytest.mark.parametrize("field", [G, ScalarField.root(5)])
def test_divided_algebra(field):
    xs = [DividedElement.monomial(field, a) for a in range(5)]
    assert all(dp_multiply(u, v) == dp_multiply(v, u) for u in xs for v in xs)
    assert all(
        dp_multiply(dp_multiply(u, v), w) == dp_multiply(u, dp_multiply(v, w)) for u in xs for v in xs for w in xs
    )


@pytest.mark.parametrize("l", [3, 5, 7])
def test_divided_nilpotent(l):
    field = ScalarField.root(l)
    assert all(reduce(dp_multiply, [DividedElement.monomial(field, a)] * l) == 0 for a in range(1, l))


@pytest.mark.parametrize(
    "input, expect",
    [
        ((-1, 3), "x^(2)"),
        ((1, 0), "0"),
        ((0, 2), "(q + 1)*x^(2)"),
        ((1, 2), "(q^2 + q + 1)*x^(3)"),
    ],
)
def test_apply_e(input, expect):
    n, a = input
    assert str(apply_e(n, DividedElement.monomial(G, a))) == expect


@pytest.mark.parametrize("n", [-1, 0, 1, 2, 3])
def test_rescaling(n):
    assert verify_rescaling(G, n, 5)


def test_divided_to_laurent():
    assert divided_to_laurent(DividedElement.monomial(G, 2)) == to_laurent("x^2/(q + 1)", G)
    with pytest.raises(ValueError):
        divided_to_laurent(DividedElement.monomial(ScalarField.root(5), 2))


# brackets and the weighted Jacobi identity
@pytest.mark.parametrize(
    "input, expect",
    [
        (("witt-q1", e(0), e(1)), "q*e(1)"),
        (("witt-q1", e(1), e(0)), "-q*e(1)"),
        (("witt-q", e(1), e(2)), "q^2*e(3)"),
        (("witt-q", e(2), e(-2)), "(-q^2 - q - 1 - q^-1)*e(0)"),
        (("holomorph-q", e(0), L(2)), "(q^2 + q)*L(2)"),
        (("holomorph-q", e(-1), L(0)), "0"),
        (("q-abelian", L(1), L(2)), "0"),
    ],
)
def test_bracket(input, expect):
    kind, x, y = input
    assert str(bracket(alg(kind), x, y)) == expect


def test_virasoro_bracket():
    vir = alg("virasoro-q")
    value = bracket(vir, e(2), e(-2))
    assert value.coefficient(C) == virasoro_cocycle(G, 2)
    assert virasoro_cocycle(G, 2) == G.one / (q_power(G, 2) * (1 + q_power(G, 2)))


def test_degenerate_constants():
    assert all(degenerate_structure_constant(i, j) == j - i for i in range(-12, 13) for j in range(-12, 13))


@pytest.mark.parametrize(
    "algebra",
    [alg("witt-eps", 3), alg("witt-eps", 5), alg("holomorph-eps", 3), alg("witt-q", window=3)],
)
def test_antisymmetry(algebra):
    assert all(verify_antisymmetry(algebra, x, y) for x in algebra.basis for y in algebra.basis)


@pytest.mark.parametrize(
    "algebra",
    [
        alg("witt-eps", 3),
        alg("witt-eps", 5),
        alg("witt-eps", 7),
        alg("holomorph-eps", 3),
        alg("holomorph-eps", 5),
        alg("witt-q", window=10),
        alg("witt-q1", window=10),
        alg("holomorph-q", window=10),
    ],
)
def test_weighted_jacobi(algebra):
    basis = algebra.basis
    assert all(verify_weighted_jacobi(algebra, x, y, z) for x in basis for y in basis for z in basis)


def test_virasoro_jacobi():
    vir = alg("virasoro-q", window=8)
    triples = [(x, y, z) for x in vir.basis for y in vir.basis for z in vir.basis]
    triples = [t for t in triples if sum(b.degree for b in t) == 0]
    assert all(verify_weighted_jacobi(vir, *t) for t in triples)


def test_inhomogeneous_jacobi():
    algebra = alg("witt-eps", 5)
    x = to_element("e(0) + 2*e(1)", algebra)
    y = to_element("e(-1) - e(3)", algebra)
    z = to_element("e*e(2)", algebra)
    with pytest.raises(ValueError):
        # the weight needs homogeneous arguments
        verify_weighted_jacobi(algebra, x, y, z)


def test_mode_restrictions():
    with pytest.raises(ValueError):
        GradedAlgebra(AlgebraKind.WITT_EPS, G)
    with pytest.raises(ValueError):
        GradedAlgebra(AlgebraKind.VIRASORO_Q, ScalarField.root(5))
    with pytest.raises(ValueError):
        virasoro_cocycle(ScalarField.root(5), 2)
    with pytest.raises(ValueError):
        bracket(alg("witt-eps", 5), e(4), e(0))


def test_centralizer_normalizer():
    algebra = alg("witt-eps", 3)
    assert [str(x) for x in q_centralizer(algebra, [e(0)])] == ["e(0)"]
    assert [str(x) for x in q_normalizer(algebra, [e(0)])] == ["e(0)"]
    assert len(q_normalizer(algebra, algebra.basis)) == len(algebra.basis)
    assert is_q_central(alg("virasoro-q", window=3), C)
    assert not is_q_central(alg("witt-q", window=3), e(0))


def test_centralizer_examples():
    holomorph = alg("holomorph-eps", 5)
    assert "L(0)" in [str(x) for x in q_centralizer(holomorph, holomorph.basis)]
    witt = alg("witt-eps", 5)
    assert q_centralizer(witt, witt.basis) == []


@pytest.mark.parametrize("l", [3, 5, 7])
def test_central_split(l):
    assert verify_central_split(l)


def test_cocycle():
    assert all(verify_cocycle_antisymmetry(G, i) for i in range(1, 13))
    assert verify_cocycle_recursion(G, 20)
    with pytest.raises(ValueError):
        verify_cocycle_recursion(ScalarField.root(5), 6)


def test_operator_consistency():
    cases = [(i, j, n) for i in range(-6, 7) for j in range(-6, 7) for n in range(-6, 7)]
    assert all(verify_operator_consistency(G, *c) for c in cases)


# enveloping algebra
def test_noncomm_printing():
    assert str(NoncommPoly.word(G, e(0), e(0), e(1))) == "e(0)^2*e(1)"
    assert str(NoncommPoly.constant(G, 3) + NoncommPoly.word(G, e(1))) == "e(1) + 3"


@pytest.mark.parametrize(
    "input, expect",
    [
        ("e(1)*e(0)", "q^-1*e(0)*e(1) - q^-1*e(1)"),
        ("e(0)*e(1)", "e(0)*e(1)"),
        ("e(0)*e(-1)", "q^-1*e(-1)*e(0) - q^-1*e(-1)"),
        ("e(1)*e(0) - q^-1*e(0)*e(1)", "-q^-1*e(1)"),
    ],
)
def test_normal_form(input, expect):
    algebra = alg("witt-q1")
    nf = ReductionSystem(algebra).normal_form(to_noncomm(input, algebra))
    assert str(nf) == expect
    assert to_noncomm(str(nf), algebra) == nf


def test_normal_form_properties():
    sys = eps_system(3)
    p = to_noncomm("e(1)*e(0)*e(-1) - 2*e(1)*e(-1)", sys.algebra)
    nf = sys.normal_form(p)
    assert nf.is_ordered()
    assert sys.normal_form(nf) == nf
    assert sys.normal_form(p, Strategy.RIGHTMOST) == nf
    r = to_noncomm("e(1)*e(1)*e(0)", sys.algebra)
    assert sys.normal_form(p.scale(3) + r.scale(eps(3))) == nf.scale(3) + sys.normal_form(r).scale(eps(3))


@pytest.mark.parametrize(
    "input, expect",
    [
        (("witt-eps", 3), (1, 0)),
        (("witt-eps", 5), (10, 4)),
        (("witt-eps", 7), (35, 18)),
        (("holomorph-eps", 3), (20, 4)),
        (("holomorph-eps", 5), (120, 45)),
    ],
)
def test_confluence(input, expect):
    sys = ReductionSystem(alg(*input))
    report = check_confluence(sys)
    assert (report.triples, len(report.unresolved)) == expect
    assert report.to_dict()["unresolved_count"] == expect[1]
    assert report.ok == (expect[1] == 0)
    assert rules_compatible(sys)
    assert defining_relation_failures(sys) == []


def test_confluence_threads():
    assert check_confluence(eps_system(5), jobs=4).to_dict() == check_confluence(eps_system(5)).to_dict()


def test_unresolved_overlaps_act_by_zero():
    sys = eps_system(5)
    word = (e(2), e(1), e(-1))
    start = sys.word(*word)
    left = sys.normal_form(sys.reduce_step(start, word, 0))
    right = sys.normal_form(sys.reduce_step(start, word, 1))
    assert left != right
    assert realize_module(5, 3).represent(left - right).is_zero()
    report = check_confluence(sys, module=realize_module(5, 3))
    assert "e(2)*e(1)*e(-1)" in report.unresolved_words
    assert all(r["acts_by_zero"] for r in report.unresolved)
    assert report.image_failures() == []
    with pytest.raises(ValueError):
        check_confluence(sys, module=realize_module_generic(4))


def test_strategy_agreement():
    assert strategy_agreement(eps_system(3), 1000, 4, seed=0) == []


def test_zero_divisors():
    assert zero_divisor_sample(eps_system(3), 10, seed=1) == []


def test_inhomogeneous_relation():
    algebra = alg("witt-q1")
    x = to_element("e(0) + e(1)", algebra)
    y = to_element("e(-1) + 2*e(2)", algebra)
    assert verify_inhomogeneous(ReductionSystem(algebra), x, y)


@pytest.mark.parametrize(
    "input, expect",
    [
        ((5, 1, 0, 1), True),
        ((5, 3, 0, 0), True),
        ((5, -1, 1, 3), True),
        ((5, 2, -1, 2), True),
        ((3, 1, 1, 3), True),
    ],
)
def test_power_commutation(input, expect):
    assert power_commutation_check(*input).first_equality == expect


@pytest.mark.parametrize("l", [3, 5])
def test_power_commutation_zero(l):
    assert all(power_commutation_check(l, i, 0, n).ok for i in range(-1, l - 1) for n in range(1, l + 1))


@pytest.mark.parametrize("l", [3, 5])
def test_power_commutation_sweep(l):
    cases = [(i, j, n) for i in range(-1, l - 1) for j in range(-1, l - 1) if j for n in range(1, 5)]
    assert all(power_commutation_check(l, *c).first_equality for c in cases)


def test_power_coefficient_report():
    # e_(-1) e_(1) - e^2 e_(1) e_(-1) = e_(0)
    assert derived_power_coefficient(5, -1, 1, 1) == 1
    report = power_commutation_check(5, -1, 1, 2)
    assert report.first_equality
    assert any(d["k"] == 1 for d in report.discrepancies)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_central_elements(l):
    report = central_elements_check(l)
    assert report.ok
    assert report.commutators == l * l
    assert sorted(central_elements(l)) == sorted(f"z({i})" for i in range(-1, l - 1))


@pytest.mark.parametrize("l", [3, 5, 7])
def test_graded_law(l):
    assert graded_leading_term_check(l)


def test_leading_coefficient():
    assert leading_coefficients(3)[(1, -1)] == eps(3, "e^-2")


# representations
@pytest.mark.parametrize("l", [3, 5, 7])
@pytest.mark.parametrize("t", [0, 1, 2, "t", "e", "1 + e"])
def test_module_axiom(l, t):
    weight = t if t == "t" or isinstance(t, int) else eps(l, t)
    assert verify_module_axiom(realize_module(l, weight))


def test_realize_module_entries():
    m = realize_module(5, 2)
    # e_(i) x^(0) = t x^(i) and e_(-1) x^(m) = x^(m-1)
    assert all(m.matrix(e(i))[i, 0] == 2 for i in range(0, 4))
    assert all(m.matrix(e(-1))[a - 1, a] == 1 for a in range(1, 5))
    assert realize_module(5, 1).matrix(e(0))[4, 4] == 0
    assert m.is_graded()


@pytest.mark.parametrize("l", [3, 5, 7])
@pytest.mark.parametrize(
    "input, expect",
    [
        (0, lambda l: [1, l - 1]),
        (1, lambda l: [l - 1, 1]),
        (2, lambda l: [l]),
        ("e", lambda l: [l]),
        ("1 + e", lambda l: [l]),
    ],
)
def test_submodule_analysis(l, input, expect):
    weight = input if isinstance(input, int) else eps(l, input)
    report = graded_submodule_analysis(realize_module(l, weight))
    assert report.dims == expect(l)
    assert report.irreducible == (len(expect(l)) == 1)
    assert report.module_axiom


def test_submodule_bottoms():
    assert graded_submodule_analysis(realize_module(5, 0)).composition_series[1] == [0]
    assert graded_submodule_analysis(realize_module(5, 1)).composition_series[1] == [0, 1, 2, 3]


@pytest.mark.parametrize(
    "input, expect",
    [
        (0, ("0", "e^3 + e^2 + e + 1")),
        (1, ("1", "0")),
    ],
)
def test_eigenvalues(input, expect):
    base, top = base_top_eigenvalues(realize_module(5, input))
    assert (str(base), str(top)) == expect


def test_symbolic_eigenvalues():
    m = realize_module(5, "t")
    base, top = base_top_eigenvalues(m)
    assert base == m.field.param("t")
    assert top == expected_top_eigenvalue(m.field.param("t"))
    assert graded_submodule_analysis(m).irreducible


def test_generic_realization():
    m = realize_module_generic(5, 2)
    assert verify_module_axiom(m)
    assert classical_limit_failures(realize_module_generic(8, 2), 2) == []
    assert verify_module_axiom(realize_module_generic(1, "t"))


def test_compat_example():
    report = holomorph_compat_check(example_triple(5))
    assert report.compatible
    assert report.normalization == "printed"
    assert psi_commutation_failures(example_triple(5)) == []
    scaled = holomorph_compat_check(example_triple(5, k=3))
    assert scaled.to_dict()["pairs"] == report.to_dict()["pairs"]


def test_compat_zero_psi():
    triple = example_triple(3)
    zero = {j: Matrix.zeros(triple.field, 3) for j in triple.psi}
    report = holomorph_compat_check(superpose(triple.phi, [(1, zero)], triple.rho_omega))
    assert report.compatible and report.pairs == []


@pytest.mark.parametrize("a", [0, 1, -1, 2])
def test_deform(a):
    triple = example_triple(5)
    m = deform_representation(triple, a)
    assert verify_module_axiom(m)
    assert m.action == realize_module(5, a).action


def test_deform_symbolic():
    m = deform_representation(example_triple(5, t="t"), "t")
    assert m.action == realize_module(5, "t").action


def test_deform_generic_limit():
    m = deform_representation(example_triple_generic(6, k=2), 3)
    assert verify_module_axiom(m)
    assert classical_limit_failures(m, 3, k=2) == []


@pytest.mark.parametrize("omega", ["0", "1", "e"])
def test_tensor(omega):
    triple = example_triple(5)
    rho = Matrix(triple.field, [[eps(5, omega)]])
    m = tensor_representation(triple, rho)
    assert verify_module_axiom(m)
    assert m.action == deform_representation(triple, eps(5, omega)).action


def test_tensor_two_dimensional():
    triple = example_triple(3)
    f = triple.field
    rho = Matrix(f, [[f.one, f.q], [f.zero, f.one]])
    m = tensor_representation(triple, rho, graded=False)
    assert m.dim == 6 and m.grading is None
    with pytest.raises(ValueError):
        tensor_representation(triple, Matrix(f, [[1, 2]]))


def test_tensor_needs_compatible_triple():
    triple = example_triple(3)
    f = triple.field
    broken = superpose(triple.phi, [(1, {0: Matrix.identity(f, 3)})], triple.rho_omega)
    assert not holomorph_compat_check(broken).ok
    with pytest.raises(ValueError):
        tensor_representation(broken)
    with pytest.raises(ValueError):
        deform_representation(broken, 1)


def test_superpose():
    triple = example_triple(5)
    summed = superpose(triple.phi, [(1, triple.psi), (2, triple.psi)], triple.rho_omega)
    assert holomorph_compat_check(summed).ok
    assert verify_module_axiom(deform_representation(summed, 1))


# linear algebra
def test_row_echelon_nullspace():
    rows, pivots = row_echelon(G, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert pivots == [0, 1]
    basis = nullspace(G, [[1, 2, 3], [0, 1, 1]], 3)
    assert [[str(x) for x in v] for v in basis] == [["-1", "-1", "1"]]


def test_root_nullspace():
    field = ScalarField.root(5)
    q = field.q
    basis = nullspace(field, [[field.one, q]], 2)
    assert basis == [[-q, field.one]]
    m = Matrix(field, [[q, q * q], [q**4, field.one]])
    assert m[1, 0] == q**4
    assert (m * Matrix.identity(field, 2)) == m
    with pytest.raises(ValueError):
        nullspace(ScalarField.root(5, ["t"]), [[1, 1]], 2)


def test_kron():
    a = Matrix(G, [[1, 2], [0, 1]])
    b = Matrix.identity(G, 2)
    assert a.kron(b).shape == (4, 4)
    assert a.kron(b)[0, 2] == 2


# parser
@pytest.mark.parametrize(
    "input, expect",
    [
        ("e(1)*e(0)", Product((("*", Generator("e", 1)), ("*", Generator("e", 0))))),
        ("C", Generator("C")),
        ("L(3)", Generator("L", 3)),
    ],
)
def test_parse(input, expect):
    assert parse(input) == expect


@pytest.mark.parametrize(
    "input, expect",
    # offsets count UTF-8 bytes, the Arabic-Indic digit takes two
    [("e(", 2), ("L(", 2), ("x^(", 3), ("e(\u0663", 4)],
)
def test_parse_errors(input, expect):
    with pytest.raises(ParseError) as err:
        parse(input)
    assert err.value.offset == expect


@pytest.mark.parametrize(
    "input",
    [
        "q^-1*e(0)*e(1) - q^-1*e(1)",
        "-(q + 1)^2",
        "x^(3) + 2*x^(1)",
        "(q^2 + 1)/(q^3 - q)",
        "(x)^2 - x^-1",
        "3/2*q^2*(e(0) - C)",
    ],
)
def test_unparse_roundtrip(input):
    assert parse(unparse(parse(input))) == parse(input)


@pytest.mark.parametrize(
    "input",
    [
        q_integer(G, -2),
        virasoro_cocycle(G, 3),
        gauss_binomial(ScalarField.root(5), 4, 2),
        q_integer(G, 3) / 2,
        realize_module(5, "t").matrix(e(1))[2, 1],
    ],
)
def test_scalar_roundtrip(input):
    assert to_scalar(str(input), input.field) == input


@pytest.mark.parametrize(
    "input, expect",
    [
        (("e^5", ScalarField.root(5)), "1"),
        (("q^2 - q^2 + 1/2", G), "1/2"),
        (("(q - 1)/(q - 1)", G), "1"),
        (("t*q", G.with_params(("t",))), "q*t"),
    ],
)
def test_to_scalar(input, expect):
    assert str(to_scalar(*input)) == expect


@pytest.mark.parametrize("input", ["e", "t", "e(1)", "x^(2)", "1/0"])
def test_to_scalar_errors(input):
    with pytest.raises((ValueError, ZeroDivisionError)):
        to_scalar(input, G)


def test_carrier_parsing():
    assert to_divided("x^(1)*x^(1)", G) == DividedElement.monomial(G, 2, q_integer(G, 2))
    assert str(to_laurent("x^-1 + 3", G)) == "3 + x^-1"
    assert to_laurent("x^2", G) == LaurentPoly.monomial(G, 1) ** 2
    algebra = alg("witt-eps", 5)
    assert to_element("0", algebra) == AlgebraElement(algebra.field)
    with pytest.raises(ValueError):
        to_element("e(9)", algebra)
    with pytest.raises(ValueError):
        to_element("1", algebra)
    with pytest.raises(ValueError):
        to_element("e(0)*e(1)", algebra)


# command line
def run(*args):
    """helper, invoke the cli and return the result"""
    return CliRunner().invoke(cli.main, list(args))


def test_cli_bracket():
    result = run("bracket", "--algebra", "witt-q1", "--lhs", "e(0)", "--rhs", "e(1)")
    assert result.exit_code == 0
    assert result.output.strip() == "q*e(1)"


def test_cli_jacobi():
    result = run("verify", "jacobi", "--algebra", "witt-eps", "--l", "5", "--json")
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["triples"] == 125 and report["ok"]


def test_cli_jacobi_zero_sum():
    result = run("verify", "jacobi", "--algebra", "virasoro-q", "--window", "3", "--zero-sum", "--jobs", "2")
    assert result.exit_code == 0


def test_cli_failure(monkeypatch):
    monkeypatch.setattr(cli, "jacobi_sum", lambda algebra, x, y, z: algebra.element(x))
    result = run("verify", "jacobi", "--algebra", "witt-eps", "--l", "3")
    assert result.exit_code == 1
    assert "counterexample" in result.output
    assert "failure(s)" in result.output


@pytest.mark.parametrize(
    "input, expect",
    [
        ((0, "--json"), [1, 4]),
        ((1, "--json"), [4, 1]),
        ((2, "--json"), [5]),
    ],
)
def test_cli_module(input, expect):
    t, flag = input
    result = run("module", "--l", "5", "--t", str(t), flag)
    assert result.exit_code == 0
    assert json.loads(result.output)["dims"] == expect


def test_cli_module_subcommands():
    assert run("module", "analyze", "--l", "3", "--t", "t").exit_code == 0
    assert run("module", "--l", "5", "compat").exit_code == 0
    assert run("module", "deform", "--l", "5", "--a", "2").exit_code == 0
    assert run("module", "tensor", "--l", "5", "--omega", "e").exit_code == 0
    assert run("module", "realize", "--window", "3", "--t", "2").exit_code == 0


@pytest.mark.parametrize(
    "input",
    [
        ("module", "compat", "--l", "5", "--t", "2"),
        ("module", "--l", "5", "--t", "2", "deform"),
        ("module", "tensor", "--l", "5", "--t", "t"),
    ],
)
def test_cli_triple_rejects_weight(input):
    assert run(*input).exit_code == 2


def test_cli_bracket_table():
    result = run("bracket-table", "--algebra", "witt-eps", "--l", "3", "--json")
    assert result.exit_code == 0
    records = json.loads(result.output)["brackets"]
    assert {"lhs": "e(-1)", "rhs": "e(0)", "result": [["e(-1)", "1"]]} in records
    assert all(set(r) == {"lhs", "rhs", "result"} for r in records)


@pytest.mark.parametrize(
    "input, expect",
    [
        (("qnum", "binomial", "4", "2"), "q^4 + q^3 + 2*q^2 + q + 1"),
        (("qnum", "integer", "5", "--l", "5"), "0"),
        (("qnum", "eval", "q^2*q^-2"), "1"),
        (("pbw", "normal-form", "--algebra", "witt-q1", "e(1)*e(0)"), "q^-1*e(0)*e(1) - q^-1*e(1)"),
    ],
)
def test_cli_output(input, expect):
    result = run(*input)
    assert result.exit_code == 0
    assert result.output.strip() == expect


@pytest.mark.parametrize(
    "input",
    [
        ("pbw", "normal-form", "--algebra", "witt-q1", "e("),
        ("verify", "jacobi", "--algebra", "witt-eps"),
        ("verify", "cocycle", "--l", "5"),
        ("bracket", "--algebra", "witt-eps", "--l", "5", "--lhs", "e(7)", "--rhs", "e(0)"),
        ("qnum", "binomial", "4"),
    ],
)
def test_cli_usage_errors(input):
    assert run(*input).exit_code == 2


def test_cli_pbw():
    result = run("pbw", "central", "--l", "3", "--json")
    assert result.exit_code == 0
    assert json.loads(result.output)["commutators"] == 9
    assert run("pbw", "confluence", "--algebra", "witt-eps", "--l", "3", "--samples", "10").exit_code == 0
    assert run("pbw", "power-comm", "--l", "5", "--i", "-1", "--j", "1", "--n", "2").exit_code == 0
    assert run("pbw", "graded-law", "--l", "3").exit_code == 0
    assert run("pbw", "zero-divisors", "--algebra", "witt-eps", "--l", "3", "--samples", "5").exit_code == 0
