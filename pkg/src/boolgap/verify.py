"""Seeded instance generators and property checks against the brute-force oracle.

Every property returns a ``PropertyReport``; a report passes when it has no
failures and, for gap-transport properties, every class met its quota of
in-class trials.  Reports are reproducible from (name, seed, caps).
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import corpus, oracle
from .core import BoolgapError, Instance, PpFormula, Relation, RelationAtom, Template, relation_of_pp
from .galois import TotalOperation, c_closure, polymorphisms, preserves
from .goldens import EXPECTED, PRINTED
from .post import Coclone, classify, redundancy_report, weak_base
from .reductions import (ReductionTrace, chi2_reduction, chi_reduction, diag_family, flatten_power,
                         hom_image_reduction, rewrite_ca, sharp_reduction, star_reduction, subalgebra_reduction)
from .solvers import (decide_robust, decide_sep, robust_via_constants, sep_via_constants, solve_csp,
                      solve_fast, with_constants)


class TooFewVariables(BoolgapError, ValueError):
    pass


@dataclass
class PropertyReport:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)  # (seed, source, observed, expected)
    elapsed: float = 0.0
    hits: dict[str, int] = field(default_factory=dict)
    skipped: int = 0
    quota: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures and all(n >= self.quota for n in self.hits.values())

    def lines(self) -> list[str]:
        out = [f"property: {self.name}", f"status: {'pass' if self.passed else 'FAIL'}",
               f"trials: {self.trials}", f"failures: {len(self.failures)}"]
        for cls, n in sorted(self.hits.items()):
            out.append(f"hits.{cls}: {n}")
        if self.quota:
            out.append(f"quota: {self.quota}")
            out.append(f"skipped: {self.skipped}")
        out.append(f"elapsed: {self.elapsed:.2f}s")
        for seed, _, observed, expected in self.failures[:5]:
            out.append(f"failure: seed={seed} observed={observed} expected={expected}")
        return out


# -- generators -------------------------------------------------------------------

def gen_instance(template: Template, n_vars: int, n_constraints: int, seed,
                 distinct_scope_vars: bool = False, bot_top_convention: bool = False,
                 cover_all_vars: bool = False, planted: int = 0, symbols: Sequence[str] | None = None) -> Instance:
    """A random instance, deterministic in ``seed``.

    ``bot_top_convention`` names the last two variables ``bot`` and ``top`` and
    puts them at the final two coordinates of every scope.  ``planted`` draws
    that many hidden assignments and keeps only constraints they all satisfy
    (with bot=0, top=1).  ``cover_all_vars`` prefers unused variables when
    filling scopes and adds constraints until every variable occurs."""
    rng = random.Random(seed)
    symbols = sorted(symbols or template.relations)
    arities = {s: template[s].arity for s in symbols}
    reserved = 2 if bot_top_convention else 0
    pool = [f"x{i + 1}" for i in range(n_vars - reserved)]
    variables = tuple(pool) + (("bot", "top") if bot_top_convention else ())
    need = max(arities.values()) - reserved if symbols else 0
    if n_vars < reserved or (distinct_scope_vars and len(pool) < need) or (symbols and not pool and need > 0):
        raise TooFewVariables(f"{n_vars} variables cannot fill scopes of arity {max(arities.values())}")
    hidden = []
    for _ in range(planted):
        h = {v: rng.randrange(template.domain_size) for v in pool}
        if bot_top_convention:
            h.update(bot=0, top=1)
        hidden.append(h)
    unused = list(pool)
    rng.shuffle(unused)
    cons = []

    def draw():
        sym = rng.choice(symbols)
        k = arities[sym] - reserved
        if distinct_scope_vars:
            fresh = [v for v in unused if v][:k] if cover_all_vars else []
            rest = [v for v in pool if v not in fresh]
            scope = fresh + rng.sample(rest, k - len(fresh))
            rng.shuffle(scope)
        else:
            scope = []
            for _ in range(k):
                if cover_all_vars and unused and rng.random() < 0.7:
                    scope.append(unused[0] if unused[0] not in scope else rng.choice(pool))
                else:
                    scope.append(rng.choice(pool))
        scope = tuple(scope) + (("bot", "top") if bot_top_convention else ())
        return scope, sym

    attempts = 0
    while (len(cons) < n_constraints or (cover_all_vars and unused)) and attempts < 50 * (n_constraints + n_vars + 1):
        attempts += 1
        scope, sym = draw()
        rows = template[sym]
        if any(tuple(h[v] for v in scope) not in rows for h in hidden):
            continue
        cons.append((scope, sym))
        for v in scope:
            if v in unused:
                unused.remove(v)
    return Instance(variables, template, cons, ("bot", "top") if bot_top_convention else None)


def random_relation(rng: random.Random, arity: int, domain_size: int = 2, density: float = 0.5) -> Relation:
    rows = [t for t in itertools.product(range(domain_size), repeat=arity) if rng.random() < density]
    if not rows:
        rows = [tuple(rng.randrange(domain_size) for _ in range(arity))]
    return Relation(rows, domain_size, arity)


def random_ca_formula(rng: random.Random, template: Template, arity: int, n_atoms: int) -> PpFormula:
    """A random equality-free conjunct-atomic formula using every free variable."""
    free = tuple(f"x{i + 1}" for i in range(arity))
    while True:
        atoms = []
        for _ in range(n_atoms):
            sym = rng.choice(sorted(template.relations))
            atoms.append(RelationAtom(sym, tuple(rng.choice(free) for _ in range(template[sym].arity))))
        used = {x for a in atoms for x in a.args}
        missing = [x for x in free if x not in used]
        if missing:
            sym = rng.choice(sorted(template.relations))
            k = template[sym].arity
            args = list(missing[:k]) + [rng.choice(free) for _ in range(k - len(missing[:k]))]
            atoms.append(RelationAtom(sym, tuple(args)))
            if len(missing) > k:
                continue
        phi = PpFormula(free, (), tuple(atoms))
        if oracle.formula_relation(phi, template):
            return phi


def random_pp_formula(rng: random.Random, template: Template, arity: int, n_bound: int, n_atoms: int) -> PpFormula:
    free = tuple(f"x{i + 1}" for i in range(arity))
    bound = tuple(f"w{i + 1}" for i in range(n_bound))
    names = free + bound
    atoms = []
    for _ in range(n_atoms):
        sym = rng.choice(sorted(template.relations))
        atoms.append(RelationAtom(sym, tuple(rng.choice(names) for _ in range(template[sym].arity))))
    return PpFormula(free, bound, tuple(atoms))


def _key(a: dict) -> tuple:
    return tuple(sorted(a.items()))


def _sol_set(instance: Instance, sols=None) -> set:
    return {_key(s) for s in (oracle.all_solutions(instance) if sols is None else sols)}


# -- solution preservation ---------------------------------------------------------

@dataclass(frozen=True)
class PreservationCase:
    make: Callable[[random.Random, int, int], Instance]
    reduce: Callable[[Instance, random.Random], ReductionTrace]
    compare: Callable[[Instance, ReductionTrace], tuple[bool, object, object]]


_BASE = Template.of(or2=corpus.or2(), plus1in3=corpus.plus1in3(), nae3=corpus.nae3(),
                    implication=corpus.implication())


def _make_rewrite(rng, max_vars, max_cons):
    defs = {}
    rels = {}
    for i in range(rng.randint(1, 2)):
        phi = random_ca_formula(rng, _BASE, rng.randint(2, 3), rng.randint(1, 3))
        defs[f"r{i + 1}"] = phi
        rels[f"r{i + 1}"] = relation_of_pp(phi, _BASE)
    src = Template(2, rels)
    inst = gen_instance(src, rng.randint(2, max_vars), rng.randint(0, max_cons), rng.random())
    return inst, defs


def _same_solutions(source, trace):
    a, b = _sol_set(source), _sol_set(trace.target)
    return a == b, len(b), len(a)


PRESERVATION: dict[str, PreservationCase] = {}


def _case_rewrite() -> PreservationCase:
    store = {}

    def make(rng, max_vars, max_cons):
        inst, defs = _make_rewrite(rng, max_vars, max_cons)
        store[id(inst)] = defs
        return inst

    def reduce(inst, rng):
        return rewrite_ca(inst, store.pop(id(inst)), _BASE)

    return PreservationCase(make, reduce, _same_solutions)


def _star_compare(source, trace):
    neg, bot, top = trace.notes["negation"], trace.notes["bot"], trace.notes["top"]
    src = oracle.all_solutions(source)
    lifted = set()
    for s in src:
        full = dict(s)
        full.update({neg[v]: 1 - a for v, a in s.items()})
        full.update({bot: 0, top: 1})
        lifted.add(_key(full))
    tgt = _sol_set(trace.target)
    return lifted == tgt, len(tgt), len(lifted)


def _src_vars(max_vars: int) -> int:
    # star/sharp targets have 2n + 2 variables
    return max(3, (max_vars - 2) // 2)


def _one_in_three(rng, max_vars, max_cons, distinct=True):
    n = rng.randint(3, max(3, max_vars))
    # every variable must occur, or its negated copy in the target is unconstrained
    return gen_instance(corpus.language("plus1in3"), n, rng.randint(0, max_cons), rng.random(),
                        distinct_scope_vars=distinct, cover_all_vars=True)


def _subalgebra_case() -> PreservationCase:
    def make(rng, max_vars, max_cons):
        return gen_instance(_BASE, rng.randint(1, max_vars), rng.randint(0, max_cons), rng.random())

    def reduce(inst, rng):
        # keep size ** n within reach of the brute-force oracle
        n = len(inst.variables)
        sizes = [d for d in (2, 3, 4) if d ** n <= 20000] or [2]
        size = rng.choice(sizes)
        emb = rng.sample(range(size), 2)
        return subalgebra_reduction(inst, emb, size)

    def compare(source, trace):
        emb = trace.notes["embedding"]
        lifted = {_key({v: emb[a] for v, a in s.items()}) for s in oracle.all_solutions(source)}
        tgt = _sol_set(trace.target)
        return lifted == tgt, len(tgt), len(lifted)

    return PreservationCase(make, reduce, compare)


PRESERVATION.update({
    "rewrite_ca": _case_rewrite(),
    "star": PreservationCase(lambda rng, v, c: _one_in_three(rng, _src_vars(v), c),
                             lambda inst, rng: star_reduction(inst), _star_compare),
    "subalgebra": _subalgebra_case(),
})


def check_solution_preservation(name: str, trials: int = 200, max_vars: int = 12, max_constraints: int = 8,
                                seed: int = 0, reduction: Callable | None = None) -> PropertyReport:
    """Compare solution sets of source and target per the reduction's certificate.

    ``reduction`` overrides the registered construction (used to check that
    the harness notices a broken reduction)."""
    case = PRESERVATION[name]
    report = PropertyReport(f"{name}-preservation")
    start = time.perf_counter()
    for t in range(trials):
        rng = random.Random(f"{seed}:{name}:{t}")
        source = case.make(rng, max_vars, max_constraints)
        trace = reduction(source) if reduction is not None else case.reduce(source, rng)
        if len(trace.target.variables) > max_vars:
            report.skipped += 1
            continue
        ok, observed, expected = case.compare(source, trace)
        report.trials += 1
        if not ok:
            report.failures.append((t, source, observed, expected))
    report.elapsed = time.perf_counter() - start
    return report


# -- gap transport -----------------------------------------------------------------

def _in_class(cls: str, instance: Instance, family=None) -> bool:
    sols = oracle.all_solutions(instance)
    if cls == "N_CSP":
        return not sols
    if cls == "N_NTriv":
        return not oracle.ntriv(instance, sols)
    if cls == "Y_SEP":
        return oracle.sep(instance, sols)
    if cls == "Y_(2,F)":
        return oracle.robust(instance, 2, family, sols)
    if cls == "Y_SEP∩(2,F)":
        return oracle.sep(instance, sols) and oracle.robust(instance, 2, family, sols)
    raise ValueError(cls)


@dataclass(frozen=True)
class GapCase:
    make: Callable[[random.Random, int], Instance]
    reduce: Callable[[Instance], ReductionTrace]
    no: tuple[str, str]
    yes: tuple[str, str]


def _gap_1in3(rng: random.Random, n: int) -> Instance:
    # alternate dense instances (often unsatisfiable) with sparse planted ones
    lang = corpus.language("plus1in3")
    if rng.random() < 0.5:
        k = rng.randint(3, max(3, min(n, 5)))
        return gen_instance(lang, k, rng.randint(k, 2 * k), rng.random(), distinct_scope_vars=True,
                            cover_all_vars=True)
    k = rng.randint(3, max(3, n))
    return gen_instance(lang, k, rng.randint(1, k // 2 + 1), rng.random(), distinct_scope_vars=True,
                        cover_all_vars=True, planted=rng.randint(2, 4))


def _flatten_source(rng: random.Random, n: int) -> Instance:
    rels = {}
    for i in range(rng.randint(1, 2)):
        rels[f"q{i + 1}"] = random_relation(rng, 2, 4, density=rng.choice((0.3, 0.5, 0.7)))
    t = Template(4, rels)
    k = rng.randint(2, max(2, n))
    return gen_instance(t, k, rng.randint(1, 2 * k), rng.random(), cover_all_vars=True)


def _hs_source(rng: random.Random, n: int) -> Instance:
    lang = Template.of(plus1in3=corpus.plus1in3(), or2=corpus.or2())
    k = rng.randint(2, max(2, n))
    return gen_instance(lang, k, rng.randint(1, 2 * k), rng.random(), cover_all_vars=True,
                        planted=rng.choice((0, 0, 2, 3)))


def _hs_chain(inst: Instance) -> ReductionTrace:
    from .core import projections_family
    fam = projections_family(inst.template)
    hom = hom_image_reduction(inst, (0, 1, 1), fam)
    sub = subalgebra_reduction(hom.target, (0, 1, 2), 4, hom.formula_map)
    return ReductionTrace("hom+subalgebra", inst, sub.target, dict(hom.variable_map), sub.formula_map)


GAPS: dict[str, GapCase] = {
    "star": GapCase(lambda rng, n: _gap_1in3(rng, _src_vars(n)), star_reduction,
                    ("N_CSP", "N_CSP"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
    "sharp": GapCase(lambda rng, n: _gap_1in3(rng, _src_vars(n)), sharp_reduction,
                     ("N_CSP", "N_CSP"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
    "chi-ii1": GapCase(lambda rng, n: star_reduction(_gap_1in3(rng, _src_vars(n))).target,
                       lambda i: chi_reduction(i, "II1"), ("N_CSP", "N_NTriv"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
    "chi-ii0": GapCase(lambda rng, n: star_reduction(_gap_1in3(rng, _src_vars(n))).target,
                       lambda i: chi_reduction(i, "II0"), ("N_CSP", "N_NTriv"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
    "chi1-ii": GapCase(lambda rng, n: star_reduction(_gap_1in3(rng, _src_vars(n))).target,
                       lambda i: chi_reduction(i, "II"), ("N_CSP", "N_NTriv"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
    "chi2-in": GapCase(lambda rng, n: sharp_reduction(_gap_1in3(rng, _src_vars(n))).target,
                       chi2_reduction, ("N_CSP", "N_NTriv"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
    "flatten": GapCase(lambda rng, n: _flatten_source(rng, max(2, n // 2)), lambda i: flatten_power(i, 2, 2),
                       ("N_CSP", "N_CSP"), ("Y_(2,F)", "Y_SEP")),
    "hs-chain": GapCase(lambda rng, n: _hs_source(rng, min(n, 6)), _hs_chain,
                        ("N_CSP", "N_CSP"), ("Y_SEP∩(2,F)", "Y_SEP∩(2,F)")),
}


def check_gap_transport(name: str, trials: int = 200, max_vars: int = 12, seed: int = 0,
                        quota: int = 10) -> PropertyReport:
    """Sources in the declared NO (YES) class must map into the target's NO (YES) class.

    The family F is all projections of the source template; on the target it
    is the translated family when the reduction produces one, else all
    projections of the target template.  Sources in neither class are
    skipped but counted."""
    case = GAPS[name]
    report = PropertyReport(f"{name}-gap", hits={"NO": 0, "YES": 0}, quota=quota)
    start = time.perf_counter()
    for t in range(trials):
        rng = random.Random(f"{seed}:{name}:{t}")
        source = case.make(rng, max_vars)
        report.trials += 1
        if _in_class(case.no[0], source):
            side, (src_cls, tgt_cls) = "NO", case.no
        elif _in_class(case.yes[0], source):
            side, (src_cls, tgt_cls) = "YES", case.yes
        else:
            report.skipped += 1
            continue
        report.hits[side] += 1
        trace = case.reduce(source)
        family = trace.formula_map
        if not _in_class(tgt_cls, trace.target, family):
            report.failures.append((t, source, f"target not in {tgt_cls}", f"source in {src_cls}"))
    report.elapsed = time.perf_counter() - start
    return report


# -- weak bases --------------------------------------------------------------------

def _swap01(rows: Sequence[str]) -> list[str]:
    return ["".join("1" if c == "0" else "0" for c in row) for row in rows]


def golden_matrices(reference: str = "literal") -> dict[str, list[str]]:
    """Reference matrices: ``literal`` uses the printed matrices (II0 as the
    0/1 swap of the printed II1 matrix); ``corrected`` the closure-correct ones."""
    if reference == "corrected":
        return {k: list(v) for k, v in EXPECTED.items()}
    if reference != "literal":
        raise ValueError("reference must be 'literal' or 'corrected'")
    out = {"II2": PRINTED["II2"], "IN2": PRINTED["IN2"], "II1": PRINTED["II1"], "II": PRINTED["II"],
           "IN": PRINTED["IN"], "II0": _swap01(PRINTED["II1"])}
    return {k: list(out[k]) for k in ("II2", "IN2", "II0", "II1", "II", "IN")}


def check_weak_base_goldens(reference: str = "literal") -> PropertyReport:
    """Closure output against the reference matrices (as row sets), plus the
    classification and irredundancy of every weak base."""
    report = PropertyReport(f"weak-base-goldens[{reference}]")
    start = time.perf_counter()
    for cid, rows in golden_matrices(reference).items():
        report.trials += 1
        got = weak_base(cid)
        want = set(rows)
        have = set(got.to_strings())
        if have != want:
            report.failures.append((cid, None, sorted(have - want), sorted(want - have)))
        c = classify([got])
        if c.coclone is not Coclone.parse(cid):
            report.failures.append((cid, None, str(c), cid))
        if not redundancy_report(got).irredundant:
            report.failures.append((cid, None, "redundant", "irredundant"))
    report.elapsed = time.perf_counter() - start
    return report


# -- solver agreement ----------------------------------------------------------------

_WITNESS_OPS = ("and", "or", "maj", "min")


def random_tractable_template(rng: random.Random) -> tuple[Template, TotalOperation]:
    """Random relations closed under one Schaefer operation."""
    from .galois import PROBES
    op = PROBES[rng.choice(_WITNESS_OPS)]
    rels = {}
    for i in range(rng.randint(1, 3)):
        r = random_relation(rng, rng.randint(1, 3), 2, density=rng.choice((0.2, 0.35, 0.5)))
        rels[f"t{i + 1}"] = c_closure(r, [op])
    return Template(2, rels), op


def check_fast_solvers(trials: int = 1000, max_vars: int = 12, seed: int = 0) -> PropertyReport:
    """solve_fast and solve_csp agree on satisfiability; fast answers are solutions."""
    report = PropertyReport("fast-solvers")
    start = time.perf_counter()
    for t in range(trials):
        rng = random.Random(f"{seed}:fast:{t}")
        template, _ = random_tractable_template(rng)
        n = rng.randint(1, max_vars)
        inst = gen_instance(template, n, rng.randint(0, 2 * n), rng.random())
        report.trials += 1
        fast = solve_fast(inst, classify(template))
        slow = solve_csp(inst)
        if (fast is None) != (slow is None) or (fast is not None and not inst.is_solution(fast)):
            report.failures.append((t, inst, fast, slow))
    report.elapsed = time.perf_counter() - start
    return report


_CONST_LANGS = ("plus1in3", "nae3", "or2", "implication", "xor")


def check_constants(trials: int = 300, max_vars: int = 7, seed: int = 0) -> PropertyReport:
    """The oracle-based SEP and robust procedures agree with the direct deciders."""
    report = PropertyReport("constants")
    start = time.perf_counter()
    for t in range(trials):
        rng = random.Random(f"{seed}:const:{t}")
        names = rng.sample(_CONST_LANGS, rng.randint(1, 2))
        template = Template(2, {n: corpus.RELATIONS[n]() for n in names})
        n = rng.randint(1, max_vars)
        inst = gen_instance(template, n, rng.randint(0, n + 1), rng.random())
        report.trials += 1
        got = (sep_via_constants(inst).answer, robust_via_constants(inst, 2).answer)
        want = (decide_sep(inst).answer, decide_robust(inst, 2).answer)
        if got != want:
            report.failures.append((t, inst, got, want))
    report.elapsed = time.perf_counter() - start
    return report


def check_diag_family(trials: int = 100, max_vars: int = 8, seed: int = 0) -> PropertyReport:
    """OR over diag_family equals SEP on the source with constants."""
    report = PropertyReport("diag-family")
    start = time.perf_counter()
    cores = [corpus.language("nae3"), corpus.language("plus1in3")]
    for t in range(trials):
        rng = random.Random(f"{seed}:diag:{t}")
        core = cores[t % 2]
        con = with_constants(core)
        n = rng.randint(2, max_vars)
        inst = gen_instance(con, n, rng.randint(0, n), rng.random())
        report.trials += 1
        direct = oracle.sep(inst)
        via = any(oracle.sep(m.target) for m in diag_family(inst, core))
        if direct != via:
            report.failures.append((t, inst, via, direct))
    report.elapsed = time.perf_counter() - start
    return report


def check_galois_soundness(trials: int = 100, seed: int = 0) -> PropertyReport:
    """Polymorphisms of arity <= 3 preserve every pp-definable relation."""
    report = PropertyReport("galois-soundness")
    start = time.perf_counter()
    for t in range(trials):
        rng = random.Random(f"{seed}:galois:{t}")
        rels = {f"s{i + 1}": random_relation(rng, rng.randint(1, 3), 2, rng.choice((0.3, 0.5, 0.7)))
                for i in range(rng.randint(1, 3))}
        template = Template(2, rels)
        phi = random_pp_formula(rng, template, rng.randint(1, 3), rng.randint(0, 2), rng.randint(1, 4))
        report.trials += 1
        rows = oracle.formula_relation(phi, template)
        if not rows:
            continue
        defined = relation_of_pp(phi, template)
        if set(defined.rows) != set(rows):
            report.failures.append((t, str(phi), defined.rows, sorted(rows)))
            continue
        for arity in (1, 2, 3):
            for f in polymorphisms(template, arity):
                if not preserves(f, defined):
                    report.failures.append((t, str(phi), f.to_string(), "preserved"))
    report.elapsed = time.perf_counter() - start
    return report


# -- registry ------------------------------------------------------------------------

def run_property(name: str, trials: int | None = None, seed: int = 0, max_vars: int | None = None) -> PropertyReport:
    """Dispatch by property name (see ``PROPERTY_NAMES``)."""
    kw = {} if trials is None else {"trials": trials}
    mv = {} if max_vars is None else {"max_vars": max_vars}
    if name.endswith("-preservation") and name[: -len("-preservation")] in PRESERVATION:
        return check_solution_preservation(name[: -len("-preservation")], seed=seed, **kw, **mv)
    if name.endswith("-gap") and name[: -len("-gap")] in GAPS:
        return check_gap_transport(name[: -len("-gap")], seed=seed, **kw, **mv)
    if name.startswith("weak-base-goldens"):
        return check_weak_base_goldens("corrected" if name.endswith("corrected") else "literal")
    simple = {"fast-solvers": check_fast_solvers, "constants": check_constants, "diag-family": check_diag_family}
    if name in simple:
        return simple[name](seed=seed, **kw, **mv)
    if name == "galois-soundness":
        return check_galois_soundness(seed=seed, **kw)
    raise KeyError(f"unknown property {name!r}")


PROPERTY_NAMES = ([f"{n}-preservation" for n in PRESERVATION] + [f"{n}-gap" for n in GAPS]
                  + ["weak-base-goldens", "weak-base-goldens-corrected", "fast-solvers", "constants",
                     "diag-family", "galois-soundness"])
