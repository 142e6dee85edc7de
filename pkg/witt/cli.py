#!/usr/bin/env python
# command line for the q-Witt toolkit
# run like: python witt/cli.py verify jacobi --algebra witt-eps --l 5
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
import json
import os
from pathlib import Path
import sys

import click
from dotenv import load_dotenv
import yaml

from linalg import Matrix
from pbw import (
    ReductionSystem,
    Strategy,
    central_elements_check,
    check_confluence,
    defining_relation_failures,
    graded_leading_term_check,
    leading_coefficients,
    power_commutation_check,
    rules_compatible,
    strategy_agreement,
    zero_divisor_sample,
)
from qarith import (
    ScalarField,
    gauss_binomial,
    q_factorial,
    q_integer,
    truncation_vanishing,
    verify_q_pascal,
)
from qdivided import Carrier, DividedElement, LaurentPoly, verify_skew_leibniz
from qlie import (
    AlgebraKind,
    GradedAlgebra,
    bracket,
    bracket_inhomogeneous,
    jacobi_sum,
    verify_antisymmetry,
    verify_cocycle_antisymmetry,
    verify_cocycle_recursion,
    verify_operator_consistency,
)
from qparse import ParseError, to_element, to_noncomm, to_scalar
from qrep import (
    deform_representation,
    example_triple,
    example_triple_generic,
    graded_submodule_analysis,
    holomorph_compat_check,
    module_axiom_failures,
    psi_commutation_failures,
    realize_module,
    realize_module_generic,
    tensor_representation,
)

# load defaults from .env
load_dotenv()
default_jobs: int = int(os.environ.get("QWITT_JOBS") or 1)
default_seed: int = int(os.environ.get("QWITT_SEED") or 0)

# algebra catalog sits in the repo root
catalog_path: Path = Path(__file__).resolve().parent.parent / "catalog" / "algebras.yaml"
verbose: bool = False


def verbose_print(*args) -> None:
    if verbose:
        click.echo(" ".join(str(a) for a in args), err=True)


def load_catalog() -> dict[str, dict]:
    with open(catalog_path, "r") as fh:
        entries = yaml.load(fh, Loader=yaml.FullLoader)
    return {entry["name"]: entry for entry in entries}


catalog: dict[str, dict] = load_catalog()


@contextmanager
def user_input():
    # bad arguments and expressions are usage errors (exit 2)
    try:
        yield
    except (ParseError, ValueError, ZeroDivisionError) as err:
        raise click.UsageError(str(err))


@dataclass
class Settings:
    mode: str | None
    l: int | None
    window: int | None
    as_json: bool
    jobs: int
    seed: int

    @property
    def resolved_mode(self) -> str:
        return self.mode or ("root" if self.l is not None else "generic")

    def field(self, params=()) -> ScalarField:
        with user_input():
            if self.resolved_mode == "root":
                if self.l is None:
                    raise ValueError("root mode needs --l")
                return ScalarField.root(self.l, params)
            if self.l is not None:
                raise ValueError("--l only applies in root mode")
            return ScalarField.generic(params)

    def header(self) -> dict:
        return {
            "command": click.get_current_context().command_path,
            "mode": self.resolved_mode,
            "l": self.l,
        }


def common_options(f):
    options = [
        click.option("--mode", type=click.Choice(["generic", "root"]), help="Scalar mode (root if --l is given)"),
        click.option("--l", "l", type=int, help="Order of the root of unity"),
        click.option("--window", type=int, help="Index window for infinite bases"),
        click.option("--json", "as_json", is_flag=True, help="Print a JSON report"),
        click.option("--jobs", type=int, help="Worker threads for sweeps"),
        click.option("--seed", type=int, help="Seed for random sampling"),
        click.option("--verbose", "-v", "is_verbose", is_flag=True, help="Print more output"),
        click.help_option("-h", "--help"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def configure(opts: dict, fallback: dict | None = None) -> Settings:
    global verbose
    fallback = fallback or {}

    def pick(key):
        value = opts.get(key)
        return fallback.get(key) if value is None or value is False else value

    verbose = bool(pick("is_verbose"))
    return Settings(
        mode=pick("mode"),
        l=pick("l"),
        window=pick("window"),
        as_json=bool(pick("as_json")),
        jobs=pick("jobs") or default_jobs,
        seed=pick("seed") if pick("seed") is not None else default_seed,
    )


def algebra_for(name: str, cfg: Settings) -> GradedAlgebra:
    entry = catalog[name]
    if entry["mode"] == "root" and cfg.l is None:
        raise click.UsageError(f"{name} lives at a root of unity, pass --l")
    with user_input():
        return GradedAlgebra(AlgebraKind(entry["kind"]), cfg.field(), cfg.window or entry["window"])


def algebra_option(f):
    return click.option(
        "--algebra", "-a", type=click.Choice(list(catalog)), required=True, help="Algebra from the catalog"
    )(f)


def sweep(fn, items: list, jobs: int) -> list:
    # map keeps input order so reports are deterministic
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def emit(cfg: Settings, report: dict, text: str) -> None:
    if cfg.as_json:
        click.echo(json.dumps(report, indent=2))
    else:
        click.echo(text)


def finish(cfg: Settings, report: dict, text: str, ok: bool, failures: list) -> None:
    report["ok"] = ok
    if not ok:
        text += "\n" + "\n".join(f"counterexample: {json.dumps(f)}" for f in failures)
    emit(cfg, report, text)
    if not ok:
        click.echo(f"{len(failures)} failure(s)", err=True)
        sys.exit(1)


def _ints(args: tuple[str, ...], count: int) -> list[int]:
    if len(args) != count:
        raise ValueError(f"expected {count} integer argument(s), got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise ValueError(f"arguments must be integers: {' '.join(args)}")


@click.group(help="Exact computations with q-deformed Witt, Virasoro and holomorph algebras.")
@click.help_option("-h", "--help")
def main():
    pass


@main.command(help="Evaluate (n)_q, (n)_q!, the Gaussian binomial [n, k] or a scalar expression.")
@click.argument("kind", type=click.Choice(["integer", "factorial", "binomial", "eval"]))
@click.argument("args", nargs=-1, required=True)
@click.option("--power", type=int, default=1, help="Evaluate the binomial at q^power")
@click.option("--param", "params", multiple=True, help="Adjoin a named parameter")
@common_options
def qnum(kind: str, args: tuple[str, ...], power: int, params: tuple[str, ...], **opts):
    cfg = configure(opts)
    field = cfg.field(params)
    with user_input():
        match kind:
            case "eval":
                value = to_scalar(" ".join(args), field)
            case "integer":
                (n,) = _ints(args, 1)
                value = q_integer(field, n)
            case "factorial":
                (n,) = _ints(args, 1)
                value = q_factorial(field, n)
            case "binomial":
                n, k = _ints(args, 2)
                value = gauss_binomial(field, n, k, power)
    emit(cfg, {**cfg.header(), "kind": kind, "args": list(args), "value": str(value)}, str(value))


@main.command("bracket", help="Bracket two Lie algebra elements, e.g. --lhs 'e(0)' --rhs 'e(1)'.")
@algebra_option
@click.option("--lhs", required=True, help="Left element")
@click.option("--rhs", required=True, help="Right element")
@common_options
def bracket_cmd(algebra: str, lhs: str, rhs: str, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    with user_input():
        x, y = to_element(lhs, alg), to_element(rhs, alg)
    value = bracket_inhomogeneous(alg, x, y)
    report = {**cfg.header(), "algebra": algebra, "lhs": str(x), "rhs": str(y), "bracket": str(value)}
    emit(cfg, report, str(value))


@main.command("bracket-table", help="All nonzero brackets of basis elements inside the window.")
@algebra_option
@common_options
def bracket_table(algebra: str, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    rows = []
    lines = []
    for x in alg.basis:
        for y in alg.basis:
            value = bracket(alg, x, y)
            if value:
                rows.append({"lhs": str(x), "rhs": str(y), "result": value.to_json()})
                lines.append(f"{{{x}, {y}}} = {value}")
    text = "\n".join(lines)
    emit(cfg, {**cfg.header(), "algebra": algebra, "brackets": rows}, text or "all brackets vanish")


@main.group(help="Check the identities of the catalog algebras exhaustively on a window.")
@click.help_option("-h", "--help")
def verify():
    pass


@verify.command(help="Weighted q-Jacobi identity on all triples of basis elements.")
@algebra_option
@click.option("--zero-sum", is_flag=True, help="Only triples whose degrees sum to zero")
@common_options
def jacobi(algebra: str, zero_sum: bool, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    basis = alg.basis
    triples = [(x, y, z) for x in basis for y in basis for z in basis]
    if zero_sum:
        triples = [t for t in triples if sum(b.degree for b in t) == 0]

    def check(t):
        s = jacobi_sum(alg, *t)
        verbose_print(f"{t[0]} {t[1]} {t[2]}: {'ok' if not s else s}")
        return s

    sums = sweep(check, triples, cfg.jobs)
    failures = [
        {"x": str(x), "y": str(y), "z": str(z), "sum": str(s)} for (x, y, z), s in zip(triples, sums) if s
    ]
    report = {**cfg.header(), "algebra": algebra, "triples": len(triples), "failures": failures}
    text = f"jacobi on {alg}: {len(triples)} triples checked, {len(failures)} failures"
    finish(cfg, report, text, not failures, failures)


@verify.command(help="Antisymmetry of the bracket on all pairs of basis elements.")
@algebra_option
@common_options
def antisym(algebra: str, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    pairs = [(x, y) for x in alg.basis for y in alg.basis]
    verdicts = sweep(lambda p: verify_antisymmetry(alg, *p), pairs, cfg.jobs)
    failures = [{"x": str(x), "y": str(y)} for (x, y), ok in zip(pairs, verdicts) if not ok]
    report = {**cfg.header(), "algebra": algebra, "pairs": len(pairs), "failures": failures}
    text = f"antisymmetry on {alg}: {len(pairs)} pairs checked, {len(failures)} failures"
    finish(cfg, report, text, not failures, failures)


@verify.command(help="Twisted Leibniz rule of the Jackson derivative on monomials.")
@click.option("--carrier", type=click.Choice([c.value for c in Carrier]), default="laurent")
@common_options
def leibniz(carrier: str, **opts):
    cfg = configure(opts)
    field = cfg.field()
    kind = Carrier(carrier)
    w = cfg.window or 6
    if kind is Carrier.LAURENT:
        monomials = [LaurentPoly.monomial(field, n) for n in range(-w, w + 1)]
    else:
        top = field.l - 1 if field.is_root else w
        monomials = [DividedElement.monomial(field, a) for a in range(top + 1)]
    pairs = [(u, v) for u in monomials for v in monomials]
    verdicts = sweep(lambda p: verify_skew_leibniz(kind, *p), pairs, cfg.jobs)
    failures = [{"u": str(u), "v": str(v)} for (u, v), ok in zip(pairs, verdicts) if not ok]
    report = {**cfg.header(), "carrier": carrier, "pairs": len(pairs), "failures": failures}
    text = f"leibniz on {carrier} over {field}: {len(pairs)} pairs checked, {len(failures)} failures"
    finish(cfg, report, text, not failures, failures)


@verify.command(help="q-integer addition and q-Pascal rules, plus vanishing at a root of unity.")
@common_options
def pascal(**opts):
    cfg = configure(opts)
    field = cfg.field()
    w = cfg.window or 6
    pairs = [(a, b) for a in range(-w, 2 * w + 1) for b in range(-w, 2 * w + 1)]
    verdicts = sweep(lambda p: verify_q_pascal(field, *p), pairs, cfg.jobs)
    failures = [{"a": a, "b": b} for (a, b), ok in zip(pairs, verdicts) if not ok]
    report = {**cfg.header(), "pairs": len(pairs)}
    if field.is_root:
        l = field.l
        for k in range(1, 4):
            if q_integer(field, k * l):
                failures.append({"q_integer": k * l})
        for i in range(1, l):
            if gauss_binomial(field, l, i):
                failures.append({"binomial": [l, i]})
        failures += [{"truncation": list(p)} for p in truncation_vanishing(field)]
    report["failures"] = failures
    text = f"pascal over {field}: {len(pairs)} pairs checked, {len(failures)} failures"
    finish(cfg, report, text, not failures, failures)


@verify.command(help="q-Virasoro cocycle: antisymmetry and the recursion from Delta(2) = 1.")
@common_options
def cocycle(**opts):
    cfg = configure(opts)
    field = cfg.field()
    w = cfg.window or 12
    with user_input():
        failures = [{"i": i} for i in range(1, w + 1) if not verify_cocycle_antisymmetry(field, i)]
        recursion = verify_cocycle_recursion(field, max(w, 3))
    if not recursion:
        failures.append({"recursion": max(w, 3)})
    report = {**cfg.header(), "window": w, "recursion": recursion, "failures": failures}
    text = f"cocycle over {field}: antisymmetry up to {w}, recursion {'holds' if recursion else 'fails'}"
    finish(cfg, report, text, not failures, failures)


@verify.command(help="The operator and bracket forms of the q-Witt relation agree on x^n.")
@common_options
def operator(**opts):
    cfg = configure(opts)
    field = cfg.field()
    w = cfg.window or 6
    cases = [(i, j, n) for i in range(-w, w + 1) for j in range(-w, w + 1) for n in range(-w, w + 1)]
    verdicts = sweep(lambda c: verify_operator_consistency(field, *c), cases, cfg.jobs)
    failures = [{"i": i, "j": j, "n": n} for (i, j, n), ok in zip(cases, verdicts) if not ok]
    report = {**cfg.header(), "cases": len(cases), "failures": failures}
    text = f"operator consistency over {field}: {len(cases)} cases checked, {len(failures)} failures"
    finish(cfg, report, text, not failures, failures)


@main.group(help="Normal forms and the center of the enveloping algebra.")
@click.help_option("-h", "--help")
def pbw():
    pass


@pbw.command("normal-form", help="Reduce an expression such as 'e(1)*e(0)' to ordered words.")
@algebra_option
@click.argument("expr")
@click.option("--strategy", type=click.Choice([s.value for s in Strategy]), default="leftmost")
@common_options
def normal_form(algebra: str, expr: str, strategy: str, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    with user_input():
        p = to_noncomm(expr, alg)
    nf = ReductionSystem(alg).normal_form(p, Strategy(strategy))
    pairs = nf.to_json()
    report = {
        **cfg.header(),
        "algebra": algebra,
        "input": expr,
        "normal_form": str(nf),
        "words": [w for w, _ in pairs],
        "coefficients": [c for _, c in pairs],
    }
    emit(cfg, report, str(nf))


@pbw.command(help="Resolve every overlap ambiguity z*y*x both ways and reduce the Jacobi sums.")
@algebra_option
@click.option("--samples", type=int, default=0, help="Also compare strategies on N random 4-letter words")
@common_options
def confluence(algebra: str, samples: int, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    sys_ = ReductionSystem(alg)
    result = check_confluence(sys_, cfg.jobs)
    verbose_print(f"{result.triples} overlaps resolved")
    compatible = rules_compatible(sys_)
    relations = defining_relation_failures(sys_)
    disagreements = strategy_agreement(sys_, samples, 4, cfg.seed) if samples else []
    report = {
        **cfg.header(),
        **result.to_dict(),
        "rules_compatible": compatible,
        "relation_failures": [f"{x}*{y}" for x, y in relations],
        "samples": samples,
        "strategy_disagreements": disagreements,
    }
    failures = (
        result.unresolved
        + result.jacobi_nonzero
        + [{"relation": r} for r in report["relation_failures"]]
        + [{"word": w} for w in disagreements]
    )
    ok = result.ok and compatible and not relations and not disagreements
    text = f"confluence on {alg}: {result.triples} ambiguities, {'all resolvable' if result.ok else 'unresolved'}"
    if samples:
        text += f"; {samples} sampled words, {len(disagreements)} strategy disagreements"
    finish(cfg, report, text, ok, failures)


@pbw.command(help="The l^2 commutators of generators with z_i = e_(i)^l vanish.")
@common_options
def central(**opts):
    cfg = configure(opts)
    if cfg.l is None:
        raise click.UsageError("central elements need --l")
    with user_input():
        result = central_elements_check(cfg.l)
    report = {**cfg.header(), **result.to_dict()}
    text = f"center at l={cfg.l}: {result.commutators} commutators, {len(result.nonzero)} nonzero"
    finish(cfg, report, text, result.ok, result.nonzero)


@pbw.command("power-comm", help="Commute e_(i) past a power of e_(j).")
@click.option("--i", "i", type=int, required=True)
@click.option("--j", "j", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@common_options
def power_comm(i: int, j: int, n: int, **opts):
    cfg = configure(opts)
    if cfg.l is None:
        raise click.UsageError("power commutation needs --l")
    with user_input():
        result = power_commutation_check(cfg.l, i, j, n)
    report = {**cfg.header(), **result.to_dict()}
    text = f"e({i}) e({j})^{n} at l={cfg.l}: first equality {'holds' if result.first_equality else 'fails'}"
    if result.closed_form is not None:
        text += f", closed form {'matches' if result.closed_form else 'differs'}"
        for d in result.discrepancies:
            text += f"\n  k={d['k']}: printed {d['printed']}, derived {d['derived']}"
    finish(cfg, report, text, result.ok, [result.to_dict()])


@pbw.command("graded-law", help="Leading terms e_(i) e_(j) = e^(j-i) e_(j) e_(i) + lower.")
@common_options
def graded_law(**opts):
    cfg = configure(opts)
    if cfg.l is None:
        raise click.UsageError("the graded law needs --l")
    with user_input():
        ok = graded_leading_term_check(cfg.l)
        coefficients = leading_coefficients(cfg.l)
    rows = [{"i": i, "j": j, "coefficient": str(c)} for (i, j), c in sorted(coefficients.items())]
    report = {**cfg.header(), "pairs": rows}
    text = "\n".join(f"e({r['i']}) e({r['j']}): {r['coefficient']}" for r in rows)
    finish(cfg, report, text, ok, [] if ok else rows)


@pbw.command("zero-divisors", help="Sample products of nonzero normal forms.")
@algebra_option
@click.option("--samples", type=int, default=50)
@common_options
def zero_divisors(algebra: str, samples: int, **opts):
    cfg = configure(opts)
    alg = algebra_for(algebra, cfg)
    found = zero_divisor_sample(ReductionSystem(alg), samples, cfg.seed)
    failures = [{"a": a, "b": b} for a, b in found]
    report = {**cfg.header(), "algebra": algebra, "samples": samples, "seed": cfg.seed, "failures": failures}
    text = f"{samples} sampled products on {alg}, {len(found)} zero"
    finish(cfg, report, text, not found, failures)


def module_options(f):
    f = click.option("--t", "t", help="Weight of e_(0) on V(t): a scalar or a parameter name")(f)
    return common_options(f)


def weight_of(text: str | None, field: ScalarField):
    text = text or "0"
    if text.isidentifier() and text not in ("q", "e"):
        return text
    with user_input():
        return to_scalar(text, field)


def _realization(cfg: Settings, t: str | None):
    if cfg.l is not None:
        with user_input():
            return realize_module(cfg.l, weight_of(t, ScalarField.root(cfg.l)))
    return realize_module_generic(cfg.window or 6, weight_of(t, ScalarField.generic()))


def _triple(cfg: Settings, k: int, symbol: str | None = None):
    # rho(omega) is [1], or the indeterminate when a symbol is given
    t = symbol or 1
    with user_input():
        if cfg.l is not None:
            return example_triple(cfg.l, k, t)
        return example_triple_generic(cfg.window or 6, k, t)


@main.group(
    invoke_without_command=True,
    help="Graded modules A(1) (x) V(t); without a subcommand, analyze the submodule lattice.",
)
@module_options
@click.pass_context
def module(ctx: click.Context, t: str | None, **opts):
    ctx.obj = {"t": t, **opts}
    if ctx.invoked_subcommand is None:
        ctx.invoke(analyze)


def _module_settings(ctx: click.Context, t: str | None, opts: dict) -> tuple[Settings, str | None]:
    parent = ctx.obj or {}
    return configure(opts, parent), t if t is not None else parent.get("t")


def _triple_settings(ctx: click.Context, t: str | None, opts: dict) -> Settings:
    # the holomorph triple fixes its own weights
    cfg, t = _module_settings(ctx, t, opts)
    if t is not None:
        raise click.UsageError(f"--t does not apply to module {ctx.info_name}")
    return cfg


@module.command(help="Print the matrices of the generators.")
@module_options
@click.pass_context
def realize(ctx: click.Context, t: str | None = None, **opts):
    cfg, t = _module_settings(ctx, t, opts)
    m = _realization(cfg, t)
    failures = [f"{x},{y}" for x, y in module_axiom_failures(m)]
    report = {**cfg.header(), "t": str(m.weight), "dim": m.dim, "matrices": m.to_json(), "failures": failures}
    text = "\n".join(f"{b}:\n{m.action[b]}" for b in m.generators)
    finish(cfg, report, text, not failures, failures)


@module.command(help="Graded submodules, composition series and base/top eigenvalues.")
@module_options
@click.pass_context
def analyze(ctx: click.Context, t: str | None = None, **opts):
    cfg, t = _module_settings(ctx, t, opts)
    m = _realization(cfg, t)
    result = graded_submodule_analysis(m)
    report = {**cfg.header(), **result.to_dict()}
    verbose_print(f"{len(result.submodules)} graded submodules")
    text = "\n".join(
        [
            f"module A(1) (x) V({result.t}) over {m.field}, dimension {m.dim}",
            f"irreducible: {result.irreducible}",
            f"composition series: {result.composition_series}",
            f"factor dimensions: {result.dims}",
            f"base eigenvalue: {result.base_eigenvalue}",
            f"top eigenvalue: {result.top_eigenvalue}",
        ]
    )
    finish(cfg, report, text, result.module_axiom, [] if result.module_axiom else [{"module_axiom": False}])


@module.command(help="Deform phi by a psi: phi(e_i) + a psi(L_i).")
@click.option("--a", "a", default="1", help="Deformation scalar or parameter name")
@click.option("--k", "k", type=int, default=1, help="Scale of psi")
@module_options
@click.pass_context
def deform(ctx: click.Context, a: str, k: int, t: str | None = None, **opts):
    cfg = _triple_settings(ctx, t, opts)
    symbolic = a.isidentifier() and a not in ("q", "e")
    triple = _triple(cfg, k, a if symbolic else None)
    with user_input():
        m = deform_representation(triple, weight_of(a, triple.field))
    failures = [f"{x},{y}" for x, y in module_axiom_failures(m)]
    report = {**cfg.header(), "a": a, "k": k, "matrices": m.to_json(), "failures": failures}
    text = f"deformed by a={a}: module axiom {'holds' if not failures else 'fails'}"
    finish(cfg, report, text, not failures, failures)


@module.command(help="phi (x) id + psi (x) rho(omega) with a one-dimensional rho(omega).")
@click.option("--omega", default="1", help="The scalar rho(omega)")
@module_options
@click.pass_context
def tensor(ctx: click.Context, omega: str, t: str | None = None, **opts):
    cfg = _triple_settings(ctx, t, opts)
    triple = _triple(cfg, 1)
    with user_input():
        rho = Matrix(triple.field, [[to_scalar(omega, triple.field)]])
        m = tensor_representation(triple, rho)
    failures = [f"{x},{y}" for x, y in module_axiom_failures(m)]
    report = {**cfg.header(), "omega": omega, "dim": m.dim, "failures": failures}
    text = f"tensor with rho(omega)={omega}: module axiom {'holds' if not failures else 'fails'}"
    finish(cfg, report, text, not failures, failures)


@module.command(help="Compatibility of phi and psi, and the e-commutation of the psi's.")
@click.option("--k", "k", type=int, default=1, help="Scale of psi")
@module_options
@click.pass_context
def compat(ctx: click.Context, k: int, t: str | None = None, **opts):
    cfg = _triple_settings(ctx, t, opts)
    triple = _triple(cfg, k)
    result = holomorph_compat_check(triple)
    commutation = psi_commutation_failures(triple)
    report = {**cfg.header(), **result.to_dict(), "psi_commutation_failures": [list(p) for p in commutation]}
    text = f"compatible: {result.compatible}, normalization: {result.normalization}"
    failures = result.failures + [{"psi": list(p)} for p in commutation]
    finish(cfg, report, text, result.ok and not commutation, failures)


if __name__ == "__main__":
    main()
