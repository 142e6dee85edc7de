"""Enveloping algebras as rewriting systems.

Words are tuples of BasisElement. A descending pair y x (y > x, degrees j and
i) is rewritten with the defining relation solved for y x:

    y x -> q^(i-j) x y - q^-(j+1) {x, y}

so normal forms are combinations of nondecreasing words.
"""

from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from functools import lru_cache
from itertools import combinations
import random
from concurrent.futures import ThreadPoolExecutor

from qarith import Combination, Scalar, ScalarField, gauss_binomial, q_integer, q_power
from qlie import (
    AlgebraElement,
    AlgebraKind,
    BasisElement,
    GradedAlgebra,
    bracket,
    bracket_inhomogeneous,
    e,
    tilde_weight,
)

Word = tuple[BasisElement, ...]


def word_text(word: Word) -> str:
    # runs of one letter print as powers
    parts = []
    k = 0
    while k < len(word):
        run = 1
        while k + run < len(word) and word[k + run] == word[k]:
            run += 1
        parts.append(str(word[k]) if run == 1 else f"{word[k]}^{run}")
        k += run
    return "*".join(parts)


def word_key(word: Word) -> tuple:
    """degree-lexicographic: shorter words first, then letter by letter"""
    return (len(word), tuple(b.sort_key for b in word))


class NoncommPoly(Combination):
    def _key_text(self, word: Word) -> str:
        return word_text(word)

    # longest words first
    def _sort_key(self, word: Word):
        return (-len(word), tuple(b.sort_key for b in word))

    @classmethod
    def word(cls, field: ScalarField, *letters: BasisElement, c=1) -> "NoncommPoly":
        return cls(field, {tuple(letters): c})

    @classmethod
    def constant(cls, field: ScalarField, c=1) -> "NoncommPoly":
        return cls(field, {(): c})

    @classmethod
    def from_element(cls, x: AlgebraElement) -> "NoncommPoly":
        return cls(x.field, {(b,): c for b, c in x.terms.items()})

    @property
    def length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __mul__(self, other):
        if isinstance(other, NoncommPoly):
            self._check(other)
            terms: dict[Word, Scalar] = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    terms[u + v] = terms[u + v] + a * b if u + v in terms else a * b
            return NoncommPoly(self.field, terms)
        return super().__mul__(other)

    def __pow__(self, k: int) -> "NoncommPoly":
        if k < 0:
            raise ValueError("no inverses in the enveloping algebra")
        result = NoncommPoly.constant(self.field)
        for _ in range(k):
            result = result * self
        return result

    def is_ordered(self) -> bool:
        return all(list(w) == sorted(w) for w in self.terms)


class Strategy(Enum):
    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


class ReductionSystem:
    """Rules for every descending pair of the algebra's basis.

    Immutable apart from the normal-form memo, which only ever caches values.
    """

    def __init__(self, algebra: GradedAlgebra) -> None:
        self.algebra: GradedAlgebra = algebra
        self.field: ScalarField = algebra.field
        self._memo: dict[Strategy, dict[Word, dict[Word, Scalar]]] = {s: {} for s in Strategy}

    @property
    def basis(self) -> list[BasisElement]:
        return sorted(self.algebra.basis)

    def rule(self, y: BasisElement, x: BasisElement) -> NoncommPoly:
        """right side for the descending word y x"""
        if not x < y:
            raise ValueError(f"{y}*{x} is not a descending pair")
        i, j = x.degree, y.degree
        swapped = NoncommPoly.word(self.field, x, y, c=q_power(self.field, i - j))
        return swapped - NoncommPoly.from_element(bracket(self.algebra, x, y)).scale(
            q_power(self.field, -(j + 1))
        )

    def _descent(self, word: Word, strategy: Strategy) -> int | None:
        positions = range(len(word) - 1)
        if strategy is Strategy.RIGHTMOST:
            positions = reversed(positions)
        for p in positions:
            if word[p + 1] < word[p]:
                return p
        return None

    def _reduce(self, word: Word, strategy: Strategy) -> dict[Word, Scalar]:
        memo = self._memo[strategy]
        if word in memo:
            return memo[word]
        p = self._descent(word, strategy)
        if p is None:
            result = {word: self.field.one}
        else:
            result = {}
            prefix, suffix = word[:p], word[p + 2 :]
            for w, c in self.rule(word[p], word[p + 1]).terms.items():
                for v, d in self._reduce(prefix + w + suffix, strategy).items():
                    result[v] = result[v] + c * d if v in result else c * d
            result = {v: c for v, c in result.items() if c}
        memo[word] = result
        return result

    def reduce_step(self, p: NoncommPoly, word: Word, position: int) -> NoncommPoly:
        """apply the rule at one position of one word of p"""
        c = p.coefficient(word)
        rest = p - NoncommPoly(self.field, {word: c})
        replaced = NoncommPoly.word(self.field, *word[:position]) * self.rule(
            word[position], word[position + 1]
        ) * NoncommPoly.word(self.field, *word[position + 2 :])
        return rest + replaced.scale(c)

    def normal_form(self, p: NoncommPoly, strategy: Strategy = Strategy.LEFTMOST) -> NoncommPoly:
        for w in p.terms:
            for b in w:
                self.algebra.check(b)
        terms: dict[Word, Scalar] = {}
        for w, c in p.terms.items():
            for v, d in self._reduce(w, strategy).items():
                terms[v] = terms[v] + c * d if v in terms else c * d
        return NoncommPoly(self.field, terms)

    def multiply(self, a: NoncommPoly, b: NoncommPoly) -> NoncommPoly:
        return self.normal_form(a * b)

    def word(self, *letters: BasisElement) -> NoncommPoly:
        return NoncommPoly.word(self.field, *letters)


@lru_cache(maxsize=None)
def eps_system(l: int) -> ReductionSystem:
    return ReductionSystem(GradedAlgebra(AlgebraKind.WITT_EPS, ScalarField.root(l)))


def rules_compatible(sys: ReductionSystem) -> bool:
    """every rule's right side is below its left side in the degree-lex order"""
    for x, y in combinations(sys.basis, 2):
        top = word_key((y, x))
        if any(word_key(w) >= top for w in sys.rule(y, x).terms):
            return False
    return True


def ideal_generator(sys: ReductionSystem, x: BasisElement, y: BasisElement) -> NoncommPoly:
    """J(x, y) = q^(i+1) x y - q^(j+1) y x - {x, y}"""
    f = sys.field
    return (
        sys.word(x, y).scale(q_power(f, x.degree + 1))
        - sys.word(y, x).scale(q_power(f, y.degree + 1))
        - NoncommPoly.from_element(bracket(sys.algebra, x, y))
    )


def defining_relation_failures(sys: ReductionSystem) -> list[tuple[BasisElement, BasisElement]]:
    return [
        (x, y)
        for x in sys.basis
        for y in sys.basis
        if sys.normal_form(ideal_generator(sys, x, y))
    ]


def jacobi_element(sys: ReductionSystem, x: BasisElement, y: BasisElement, z: BasisElement) -> NoncommPoly:
    """the six-term q-Jacobi sum J(z, y, x) for x < y < z"""
    f = sys.field
    i, j, k = x.degree, y.degree, z.degree

    def br(a, b) -> NoncommPoly:
        return NoncommPoly.from_element(bracket(sys.algebra, a, b))

    def w(c) -> NoncommPoly:
        return sys.word(c)

    terms = [
        (j + k, br(z, y) * w(x)),
        (None, (w(x) * br(z, y)).scale(-q_power(f, 2 * i))),
        (i + j, br(y, x) * w(z)),
        (None, (w(z) * br(y, x)).scale(-q_power(f, 2 * k))),
        (i + k, br(x, z) * w(y)),
        (None, (w(y) * br(x, z)).scale(-q_power(f, 2 * j))),
    ]
    total = NoncommPoly(f)
    for power, p in terms:
        total = total + (p if power is None else p.scale(q_power(f, power)))
    return total


@dataclass
class ConfluenceReport:
    algebra: str
    triples: int = 0
    unresolved: list[dict] = dataclass_field(default_factory=list)
    jacobi_nonzero: list[dict] = dataclass_field(default_factory=list)
    module: str | None = None

    @property
    def ok(self) -> bool:
        return not self.unresolved and not self.jacobi_nonzero

    @property
    def unresolved_words(self) -> list[str]:
        return [r["word"] for r in self.unresolved]

    def image_failures(self) -> list[str]:
        """unresolved overlaps whose two normal forms act differently on the module"""
        return [r["word"] for r in self.unresolved if r.get("acts_by_zero") is False]

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "triples": self.triples,
            "resolvable": self.ok,
            "unresolved_count": len(self.unresolved),
            "unresolved_words": self.unresolved_words,
            "unresolved": self.unresolved,
            "jacobi_nonzero": self.jacobi_nonzero,
            "module": self.module,
        }


def resolve_ambiguity(
    sys: ReductionSystem, x: BasisElement, y: BasisElement, z: BasisElement, module=None
) -> dict:
    """reduce z y x at either pair first; module, if given, must act on the difference by zero"""
    word = (z, y, x)
    start = sys.word(*word)
    left = sys.normal_form(sys.reduce_step(start, word, 0))
    right = sys.normal_form(sys.reduce_step(start, word, 1))
    jacobi = sys.normal_form(jacobi_element(sys, x, y, z))
    result = {
        "word": word_text(word),
        "resolvable": left == right,
        "difference": str(left - right),
        "jacobi": str(jacobi),
    }
    if module is not None:
        result["acts_by_zero"] = module.represent(left - right).is_zero()
    return result


def check_confluence(sys: ReductionSystem, jobs: int = 1, module=None) -> ConfluenceReport:
    """resolve every overlap z y x with x < y < z both ways

    Overlaps need not resolve: on witt-eps with l >= 5 and on holomorph-eps
    the two reductions can differ by an element of the ideal that no single
    rule exposes. An unwindowed module realization checks that every such
    difference still acts by zero.
    """
    if module is not None and module.window is not None:
        raise ValueError("module images need an unwindowed realization")
    if module is not None and module.field != sys.field:
        raise ValueError(f"module is over {module.field}, the algebra over {sys.field}")
    triples = list(combinations(sys.basis, 3))
    report = ConfluenceReport(str(sys.algebra), len(triples), module=None if module is None else str(module))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: resolve_ambiguity(sys, *t, module=module), triples))
    else:
        results = [resolve_ambiguity(sys, *t, module=module) for t in triples]
    for r in results:
        if not r["resolvable"]:
            entry = {"word": r["word"], "difference": r["difference"]}
            if "acts_by_zero" in r:
                entry["acts_by_zero"] = r["acts_by_zero"]
            report.unresolved.append(entry)
        if r["jacobi"] != "0":
            report.jacobi_nonzero.append({"word": r["word"], "normal_form": r["jacobi"]})
    return report


def strategy_agreement(sys: ReductionSystem, samples: int, length: int = 4, seed: int = 0) -> list[str]:
    """random words whose leftmost and rightmost normal forms differ"""
    rng = random.Random(seed)
    basis = sys.basis
    disagreements = []
    for _ in range(samples):
        word = tuple(rng.choice(basis) for _ in range(length))
        p = sys.word(*word)
        if sys.normal_form(p, Strategy.LEFTMOST) != sys.normal_form(p, Strategy.RIGHTMOST):
            disagreements.append(word_text(word))
    return disagreements


def _random_poly(sys: ReductionSystem, rng: random.Random) -> NoncommPoly:
    p = NoncommPoly(sys.field)
    while not p:
        for _ in range(rng.randint(1, 3)):
            word = tuple(rng.choice(sys.basis) for _ in range(rng.randint(0, 2)))
            p = p + sys.word(*word).scale(rng.choice([-3, -2, -1, 1, 2, 3]))
        p = sys.normal_form(p)
    return p


def zero_divisor_sample(sys: ReductionSystem, samples: int, seed: int = 0) -> list[tuple[str, str]]:
    """pairs of nonzero normal forms whose product reduces to zero"""
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        a, b = _random_poly(sys, rng), _random_poly(sys, rng)
        if not sys.multiply(a, b):
            failures.append((str(a), str(b)))
    return failures


def verify_inhomogeneous(sys: ReductionSystem, x, y) -> bool:
    """x~ x' - x'~ x reduces to the bracket {x, x'}"""
    alg = sys.algebra
    lhs = NoncommPoly.from_element(tilde_weight(alg, x)) * NoncommPoly.from_element(
        _element(alg, y)
    ) - NoncommPoly.from_element(tilde_weight(alg, y)) * NoncommPoly.from_element(_element(alg, x))
    return sys.normal_form(lhs) == NoncommPoly.from_element(bracket_inhomogeneous(alg, x, y))


def _element(alg: GradedAlgebra, x) -> AlgebraElement:
    return alg.element(x) if isinstance(x, BasisElement) else x


def _legal_e(l: int, i: int) -> bool:
    return -1 <= i <= l - 2


def printed_power_coefficient(l: int, i: int, j: int, k: int) -> Scalar:
    """H_ij^(k) in the closed form stated for the root-of-unity center"""
    field = ScalarField.root(l)
    if k == 0:
        return field.one
    if not -1 <= i + j <= l - 2:
        return field.zero
    h = q_power(field, -k - j * k * (k + 1) // 2)
    for s in range(1, k + 1):
        n = i + s * j + 1
        h = h * (gauss_binomial(field, n, j) - gauss_binomial(field, n, j + 1))
    return h


def iterated_brackets(l: int, i: int, j: int, n: int) -> list[NoncommPoly]:
    """X_0 = e_(i), X_(k+1) = X_k e_(j) - e^(j - i - kj) e_(j) X_k"""
    sys = eps_system(l)
    ej = sys.word(e(j))
    xs = [sys.word(e(i))]
    for k in range(n):
        twist = q_power(sys.field, j - (i + k * j))
        xs.append(sys.normal_form(xs[k] * ej - (ej * xs[k]).scale(twist)))
    return xs


def derived_power_coefficient(l: int, i: int, j: int, k: int) -> Scalar:
    """h_k with X_k = h_k e_(i+kj), read off the normal form"""
    x = iterated_brackets(l, i, j, k)[k]
    target = i + k * j
    if not _legal_e(l, target):
        if x:
            raise ArithmeticError(f"iterated bracket {x} should vanish")
        return x.field.zero
    if set(x.terms) - {(e(target),)}:
        raise ArithmeticError(f"iterated bracket {x} is not a multiple of e({target})")
    return x.coefficient((e(target),))


@dataclass
class PowerReport:
    l: int
    i: int
    j: int
    n: int
    first_equality: bool
    closed_form: bool | None = None
    discrepancies: list[dict] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first_equality

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "i": self.i,
            "j": self.j,
            "n": self.n,
            "first_equality": self.first_equality,
            "closed_form": self.closed_form,
            "discrepancies": self.discrepancies,
        }


def power_commutation_check(l: int, i: int, j: int, n: int) -> PowerReport:
    sys = eps_system(l)
    f = sys.field
    for a in (i, j):
        if not _legal_e(l, a):
            raise ValueError(f"e({a}) needs -1 <= index <= {l - 2}")
    if n < 0:
        raise ValueError(f"power must be >= 0, got {n}")
    ei, ej = sys.word(e(i)), sys.word(e(j))
    lhs = sys.normal_form(ei * ej**n)
    if j == 0:
        # e_(i) e_(0)^n = e^(-in) (e_(0) - (i)_e)^n e_(i)
        shifted = ej - NoncommPoly.constant(f, q_integer(f, i))
        rhs = (shifted**n * ei).scale(q_power(f, -i * n))
        return PowerReport(l, i, j, n, lhs == sys.normal_form(rhs))
    xs = iterated_brackets(l, i, j, n)
    first = NoncommPoly(f)
    closed = NoncommPoly(f)
    discrepancies = []
    for k in range(n + 1):
        binom = gauss_binomial(f, n, k, power=-j)
        first = first + (ej ** (n - k) * xs[k]).scale(binom * q_power(f, (n - k) * (j - i)))
        if _legal_e(l, i + k * j):
            h = printed_power_coefficient(l, i, j, k)
            closed = closed + (ej ** (n - k) * sys.word(e(i + k * j))).scale(binom * h)
        printed, derived = printed_power_coefficient(l, i, j, k), derived_power_coefficient(l, i, j, k)
        if printed != derived:
            discrepancies.append({"k": k, "printed": str(printed), "derived": str(derived)})
    closed = closed.scale(q_power(f, n * (j - i)))
    return PowerReport(
        l,
        i,
        j,
        n,
        lhs == sys.normal_form(first),
        lhs == sys.normal_form(closed),
        discrepancies,
    )


def central_elements(l: int) -> dict[str, NoncommPoly]:
    """z_i = e_(i)^l for i != 0 and z_0 = (e_(0) - 1/(1-e))^l"""
    sys = eps_system(l)
    f = sys.field
    zs = {}
    for b in sys.basis:
        if b.index == 0:
            shifted = sys.word(b) - NoncommPoly.constant(f, f.one / (1 - f.q))
            zs[f"z({b.index})"] = sys.normal_form(shifted**l)
        else:
            zs[f"z({b.index})"] = sys.normal_form(sys.word(b) ** l)
    return zs


@dataclass
class CentralReport:
    l: int
    commutators: int = 0
    nonzero: list[dict] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nonzero

    def to_dict(self) -> dict:
        return {"l": self.l, "commutators": self.commutators, "central": self.ok, "nonzero": self.nonzero}


def central_elements_check(l: int) -> CentralReport:
    sys = eps_system(l)
    report = CentralReport(l)
    for name, z in central_elements(l).items():
        for g in sys.basis:
            gw = sys.word(g)
            commutator = sys.normal_form(gw * z - z * gw)
            report.commutators += 1
            if commutator:
                report.nonzero.append({"generator": str(g), "element": name, "commutator": str(commutator)})
    return report


def leading_coefficients(l: int) -> dict[tuple[int, int], Scalar]:
    """coefficient of e_(j) e_(i) in the normal form of e_(i) e_(j), i > j"""
    sys = eps_system(l)
    out = {}
    for x, y in combinations(sys.basis, 2):
        out[(y.index, x.index)] = sys.normal_form(sys.word(y, x)).coefficient((x, y))
    return out


def graded_leading_term_check(l: int) -> bool:
    """e_(i) e_(j) = e^(j-i) e_(j) e_(i) + shorter words"""
    sys = eps_system(l)
    f = sys.field
    for x, y in combinations(sys.basis, 2):
        nf = sys.normal_form(sys.word(y, x))
        if nf.coefficient((x, y)) != q_power(f, x.index - y.index):
            return False
        if any(len(w) >= 2 for w in nf.terms if w != (x, y)):
            return False
    return True
