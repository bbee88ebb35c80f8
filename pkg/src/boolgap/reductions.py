"""Instance transformations between constraint languages.

Every reduction returns a ``ReductionTrace`` holding the target instance and
a certificate: how source variables embed in the target, the translated
compatibility family (when the construction has one) and which case fired.

Fresh variables are named ``not:v`` (negated copy of v), ``v#p`` (coordinate p
of a product variable) and ``diag:a`` (the variable standing for element a).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, perm
from typing import Iterable, Mapping, Sequence

from .core import (BoolgapError, Constraint, Equality, Instance, PpFormula, Relation, RelationAtom,
                   Template, derive_F_constraints, projections_family, relation_of_pp)
from .post import Coclone, cols3, is_core, weak_base
from .solvers import compatible_assignments, decide_sep, solve_csp, with_constants


class NotEqualityFree(BoolgapError, ValueError):
    pass


class NotQuantifierFree(BoolgapError, ValueError):
    pass


class BadDefinition(BoolgapError, ValueError):
    pass


class BadNoInstance(BoolgapError, ValueError):
    pass


class WrongSourceLanguage(BoolgapError, ValueError):
    pass


class MissingBotTopConvention(BoolgapError, ValueError):
    pass


class NotSurjective(BoolgapError, ValueError):
    pass


class EmptySubset(BoolgapError, ValueError):
    pass


class BadProductArity(BoolgapError, ValueError):
    pass


class NotCore(BoolgapError, ValueError):
    pass


@dataclass(frozen=True)
class ReductionTrace:
    name: str
    source: Instance
    target: Instance
    variable_map: dict[str, object] = field(default_factory=dict)
    formula_map: tuple[PpFormula, ...] | None = None
    case_tag: str | None = None
    notes: dict = field(default_factory=dict)


PLUS_1IN3 = Relation.from_strings(["100", "010", "001"])


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


# -- conjunct-atomic rewriting --------------------------------------------------

def _substitute(formula: PpFormula, args: Sequence[str]) -> list:
    sub = dict(zip(formula.free_vars, args))
    out = []
    for a in formula.atoms:
        if isinstance(a, Equality):
            out.append(Equality(sub[a.left], sub[a.right]))
        else:
            out.append(RelationAtom(a.symbol, tuple(sub[x] for x in a.args)))
    return out


def _check_defs(defs: Mapping[str, PpFormula], source: Template, target: Template, allow_equality: bool):
    for sym, phi in defs.items():
        if not phi.is_conjunct_atomic:
            raise NotQuantifierFree(f"definition of {sym!r} has bound variables")
        if not allow_equality and not phi.is_equality_free:
            raise NotEqualityFree(f"definition of {sym!r} uses equality")
        if sym in source and relation_of_pp(phi, target) != source[sym]:
            raise BadDefinition(f"definition of {sym!r} does not define it")


def translate_family(family: Iterable[PpFormula], defs: Mapping[str, PpFormula]) -> tuple[PpFormula, ...]:
    """Replace each relation atom by the conjuncts of its definition."""
    out = []
    for rho in family:
        atoms = []
        for a in rho.atoms:
            if isinstance(a, RelationAtom):
                atoms.extend(_substitute(defs[a.symbol], a.args))
            else:
                atoms.append(a)
        out.append(PpFormula(rho.free_vars, rho.bound_vars, tuple(atoms), rho.name))
    return tuple(out)


def _rewrite(instance: Instance, defs, target: Template, family):
    cons = []
    equalities = []
    for scope, sym in instance.constraints:
        if sym not in defs:
            raise BadDefinition(f"no definition for {sym!r}")
        for a in _substitute(defs[sym], scope):
            if isinstance(a, Equality):
                equalities.append(a)
            else:
                cons.append(Constraint(a.args, a.symbol))
    fam = None if family is None else translate_family(family, defs)
    return cons, equalities, fam


def rewrite_ca(instance: Instance, defs: Mapping[str, PpFormula], target: Template,
               family: Iterable[PpFormula] | None = None) -> ReductionTrace:
    """Replace each constraint by the conjuncts of its equality-free definition."""
    _check_defs(defs, instance.template, target, allow_equality=False)
    cons, _, fam = _rewrite(instance, defs, target, family)
    out = Instance(instance.variables, target, tuple(dict.fromkeys(cons)), instance.bot_top)
    return ReductionTrace("rewrite_ca", instance, out, {v: v for v in instance.variables}, fam)


def default_no_instance(template: Template, max_vars: int = 3, budget: int = 20000) -> Instance:
    """A small instance that is a NO instance of SEP, and of CSP when some
    instance of CSP is unsatisfiable.

    With both constants present: a spare variable plus one variable pinned to
    0 and to 1.  Otherwise a search over single constraints (then pairs) on at
    most ``max_vars`` variables, always padded to two variables so that SEP is
    not vacuous."""
    consts = {}
    for name, r in template.relations.items():
        if r.arity == 1 and len(r) == 1:
            consts.setdefault(r.rows[0][0], name)
    if len(consts) >= 2:
        a, b = sorted(consts)[:2]
        return Instance(("j1", "j2"), template, [(("j1",), consts[a]), (("j1",), consts[b])])
    names = tuple(f"j{i + 1}" for i in range(max_vars))
    candidates = []
    for sym, r in template.relations.items():
        for scope in itertools.product(names, repeat=r.arity):
            candidates.append(Constraint(scope, sym))
            if len(candidates) > budget:
                break
    sep_no = None
    for count in (1, 2):
        for combo in itertools.combinations(candidates, count):
            used = sorted({v for c in combo for v in c.scope}, key=names.index)
            if len(used) < 2:
                used.append(next(n for n in names if n not in used))
            inst = Instance(tuple(used), template, combo)
            if solve_csp(inst) is None:
                return inst
            if sep_no is None and not decide_sep(inst).answer:
                sep_no = inst
        if count == 1 and len(candidates) ** 2 > budget * 50:
            break
    if sep_no is not None:
        return sep_no
    raise BadNoInstance("no small NO instance of SEP found for this template")


def _verify_no_instance(j: Instance):
    if len(j.variables) < 2 or decide_sep(j).answer:
        raise BadNoInstance("J is not a NO instance of SEP")


def rewrite_with_equality(instance: Instance, defs: Mapping[str, PpFormula], target: Template,
                          family: Iterable[PpFormula] | None = None, no_instance: Instance | None = None) -> ReductionTrace:
    """Conjunct-atomic rewriting where definitions may use equality.

    Case 1: some equality instantiates to two distinct variables; the output
    is the fixed NO instance J.  Case 2: all equalities are trivial and are
    dropped."""
    _check_defs(defs, instance.template, target, allow_equality=True)
    j = no_instance if no_instance is not None else default_no_instance(target)
    _verify_no_instance(j)
    cons, eqs, fam = _rewrite(instance, defs, target, family)
    nontrivial = [e for e in eqs if e.left != e.right]
    if nontrivial:
        return ReductionTrace("rewrite_with_equality", instance, j, {}, fam, "1",
                              {"equality": tuple(nontrivial[0])})
    out = Instance(instance.variables, target, tuple(dict.fromkeys(cons)), instance.bot_top)
    return ReductionTrace("rewrite_with_equality", instance, out, {v: v for v in instance.variables}, fam, "2")


# -- the Cols3 family of reductions ---------------------------------------------

def _require_source(instance: Instance, relation: Relation, what: str):
    for sym in {c.symbol for c in instance.constraints}:
        if instance.template[sym] != relation:
            raise WrongSourceLanguage(f"relation {sym!r} is not {what}")


def _negated_copy(instance: Instance):
    taken = set(instance.variables)
    neg = {v: _fresh("not:" + v, taken) for v in instance.variables}
    bot = _fresh("bot", taken)
    top = _fresh("top", taken)
    return neg, bot, top


def star_reduction(instance: Instance) -> ReductionTrace:
    """Positive 1-in-3 instance to a Cols3 instance."""
    _require_source(instance, PLUS_1IN3, "positive 1-in-3")
    neg, bot, top = _negated_copy(instance)
    variables = instance.variables + tuple(neg[v] for v in instance.variables) + (bot, top)
    cons = []
    for (x, y, z), _ in instance.constraints:
        cons.append(((x, y, z, neg[x], neg[y], neg[z], bot, top), "cols3"))
    target = Instance(variables, Template.of(cols3=cols3()), tuple(dict.fromkeys(cons)), (bot, top))
    vmap = {v: v for v in instance.variables}
    return ReductionTrace("star", instance, target, vmap, None, None,
                          {"negation": neg, "bot": bot, "top": top})


def sharp_reduction(instance: Instance) -> ReductionTrace:
    """Positive 1-in-3 instance to an N2(Cols3) instance, two constraints per clause."""
    _require_source(instance, PLUS_1IN3, "positive 1-in-3")
    neg, bot, top = _negated_copy(instance)
    variables = instance.variables + tuple(neg[v] for v in instance.variables) + (bot, top)
    cons = []
    for (x, y, z), _ in instance.constraints:
        cons.append(((x, y, z, neg[x], neg[y], neg[z], bot, top), "n2cols3"))
        cons.append(((neg[x], neg[y], neg[z], x, y, z, top, bot), "n2cols3"))
    target = Instance(variables, Template.of(n2cols3=weak_base(Coclone.IN2)), tuple(dict.fromkeys(cons)), (bot, top))
    vmap = {v: v for v in instance.variables}
    return ReductionTrace("sharp", instance, target, vmap, None, None,
                          {"negation": neg, "bot": bot, "top": top})


_CHI_SYMBOL = {Coclone.II1: "i1cols3", Coclone.II0: "i0cols3", Coclone.II: "icols3", Coclone.IN: "ncols3"}


def _swap(instance: Instance, source_rel: Relation, target_id: Coclone, allowed_tails, name: str) -> ReductionTrace:
    if instance.bot_top is None:
        raise MissingBotTopConvention("the source instance must declare its bot/top variables")
    bot, top = instance.bot_top
    tails = {(bot, top) if t == "bt" else (top, bot) for t in allowed_tails}
    _require_source(instance, source_rel, "the expected weak base")
    for scope, _ in instance.constraints:
        if tuple(scope[-2:]) not in tails:
            raise MissingBotTopConvention(f"constraint {scope} does not end with the bot/top variables")
    sym = _CHI_SYMBOL[target_id]
    target = Instance(instance.variables, Template.of(**{sym: weak_base(target_id)}),
                      tuple(dict.fromkeys(Constraint(s, sym) for s, _ in instance.constraints)), instance.bot_top)
    return ReductionTrace(name, instance, target, {v: v for v in instance.variables}, None, str(target_id))


def chi_reduction(instance: Instance, target_id="II1") -> ReductionTrace:
    """Cols3 instance to a weak-base instance for II1, II0 or II (constant rows added)."""
    tid = Coclone.parse(target_id)
    if tid not in (Coclone.II1, Coclone.II0, Coclone.II):
        raise ValueError("chi targets II1, II0 or II")
    return _swap(instance, cols3(), tid, ("bt",), "chi")


def chi2_reduction(instance: Instance) -> ReductionTrace:
    """N2(Cols3) instance to an N(Cols3) instance."""
    return _swap(instance, weak_base(Coclone.IN2), Coclone.IN, ("bt", "tb"), "chi2")


# -- algebraic reductions -------------------------------------------------------

def preimage(r: Relation, phi: Sequence[int], domain_size: int) -> Relation:
    """phi^-1(r): tuples over A whose image under phi lies in r."""
    return Relation((t for t in itertools.product(range(domain_size), repeat=r.arity)
                     if tuple(phi[a] for a in t) in r), domain_size, r.arity)


def kernel(phi: Sequence[int]) -> Relation:
    n = len(phi)
    return Relation(((a, b) for a in range(n) for b in range(n) if phi[a] == phi[b]), n, 2)


def _rename_family(family, rename: Mapping[str, str], equality_symbol: str | None = None):
    out = []
    for rho in family:
        atoms = []
        for a in rho.atoms:
            if isinstance(a, RelationAtom):
                atoms.append(RelationAtom(rename[a.symbol], a.args))
            elif equality_symbol is not None:
                atoms.append(RelationAtom(equality_symbol, (a.left, a.right)))
            else:
                atoms.append(a)
        out.append(PpFormula(rho.free_vars, rho.bound_vars, tuple(atoms), rho.name))
    return tuple(out)


def hom_image_reduction(instance: Instance, phi: Sequence[int],
                        family: Iterable[PpFormula] | None = None) -> ReductionTrace:
    """Instance over B to an instance over A, given a surjection phi: A -> B.

    ``phi[a]`` is the image of a.  Every relation r becomes phi^-1(r); the
    target template also carries ker(phi), which replaces equality in the
    translated family."""
    phi = tuple(phi)
    b = instance.domain_size
    if not phi or set(phi) != set(range(b)):
        raise NotSurjective(f"{phi} is not a surjection onto 0..{b - 1}")
    a = len(phi)
    rels = {}
    rename = {}
    for sym, r in instance.template.relations.items():
        rename[sym] = sym
        rels[sym] = preimage(r, phi, a)
    ker_name = "ker"
    while ker_name in rels:
        ker_name += "_"
    rels[ker_name] = kernel(phi)
    target_t = Template(a, rels)
    target = Instance(instance.variables, target_t, instance.constraints, instance.bot_top)
    fam = None if family is None else _rename_family(family, rename, ker_name)
    return ReductionTrace("hom_image", instance, target, {v: v for v in instance.variables}, fam, None,
                          {"phi": phi, "kernel": ker_name})


def subalgebra_reduction(instance: Instance, embedding: Sequence[int], domain_size: int,
                         family: Iterable[PpFormula] | None = None) -> ReductionTrace:
    """Instance over B to an instance over A, where B sits inside A.

    ``embedding[i]`` is the element of A that stands for element i of B.
    Every variable gets the unary constraint (v) in B."""
    emb = tuple(embedding)
    if not emb:
        raise EmptySubset("B must be non-empty")
    if len(set(emb)) != len(emb) or len(emb) != instance.domain_size:
        raise ValueError("embedding must be injective and cover the source domain")
    if any(not 0 <= x < domain_size for x in emb):
        raise ValueError("embedding leaves the target domain")
    rels = {sym: Relation((tuple(emb[v] for v in t) for t in r.rows), domain_size, r.arity)
            for sym, r in instance.template.relations.items()}
    sub = "sub"
    while sub in rels:
        sub += "_"
    rels[sub] = Relation(((x,) for x in emb), domain_size, 1)
    target_t = Template(domain_size, rels)
    cons = instance.constraints + tuple(Constraint((v,), sub) for v in instance.variables)
    target = Instance(instance.variables, target_t, cons, instance.bot_top)
    fam = None
    if family is not None:
        fam = tuple(family) + (PpFormula(("x",), (), (RelationAtom(sub, ("x",)),), name=f"in:{sub}"),)
    return ReductionTrace("subalgebra", instance, target, {v: v for v in instance.variables}, fam, None,
                          {"embedding": emb, "subset": sub})


def digits(e: int, base: int, ell: int) -> tuple[int, ...]:
    """Big-endian base-``base`` digits of ``e`` (coordinate 0 first)."""
    out = []
    for _ in range(ell):
        out.append(e % base)
        e //= base
    return tuple(reversed(out))


def flat(r: Relation, base: int, ell: int) -> Relation:
    """r over A^ell read as an (ell*k)-ary relation over A."""
    return Relation((tuple(x for e in t for x in digits(e, base, ell)) for t in r.rows), base, r.arity * ell)


def flatten_power(instance: Instance, ell: int, base: int, family: Iterable[PpFormula] | None = None) -> ReductionTrace:
    """Instance over A^ell to an instance over A, with local reflection.

    Equalities between coordinate variables are added when every F-compatible
    assignment on the pair forces them, and then eliminated by keeping the
    earliest variable (declaration order) of each class."""
    if ell < 1 or base < 1 or instance.domain_size != base ** ell:
        raise BadProductArity(f"domain {instance.domain_size} is not {base}**{ell}")
    fam = projections_family(instance.template) if family is None else list(family)
    vs = instance.variables
    coord = {(v, p): f"{v}#{p}" for v in vs for p in range(ell)}
    order = [coord[(v, p)] for v in vs for p in range(ell)]
    rels = {sym: flat(r, base, ell) for sym, r in instance.template.relations.items()}
    t_flat = Template(base, rels)
    fcs = derive_F_constraints(instance, fam)

    equalities = []
    for i, v in enumerate(vs):
        # assignments on {v, v'} with v' the next variable (cyclically)
        partner = vs[(i + 1) % len(vs)]
        alphas = list(compatible_assignments(instance, tuple(dict.fromkeys((v, partner))), fcs))
        for p, q in itertools.combinations(range(ell), 2):
            if all(digits(al[v], base, ell)[p] == digits(al[v], base, ell)[q] for al in alphas):
                equalities.append((coord[(v, p)], coord[(v, q)]))
    for u, w in itertools.combinations(vs, 2):
        alphas = list(compatible_assignments(instance, (u, w), fcs))
        for p, q in itertools.product(range(ell), repeat=2):
            if all(digits(al[u], base, ell)[p] == digits(al[w], base, ell)[q] for al in alphas):
                equalities.append((coord[(u, p)], coord[(w, q)]))

    rank = {x: i for i, x in enumerate(order)}
    parent = {x: x for x in order}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in equalities:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rank[rb] < rank[ra]:
                ra, rb = rb, ra
            parent[rb] = ra
    sigma = {x: find(x) for x in order}
    new_vars = tuple(x for x in order if sigma[x] == x)
    cons = []
    for scope, sym in instance.constraints:
        cons.append(Constraint(tuple(sigma[coord[(v, p)]] for v in scope for p in range(ell)), sym))
    target = Instance(new_vars, t_flat, tuple(dict.fromkeys(cons)))
    vmap = {v: tuple(sigma[coord[(v, p)]] for p in range(ell)) for v in vs}
    return ReductionTrace("flatten_power", instance, target, vmap, None, None,
                          {"equalities": tuple(equalities), "sigma": sigma, "base": base, "ell": ell})


def idempotent_language(template: Template) -> Template:
    """The template with every singleton unary relation {(a)} added."""
    return with_constants(template)


def _constant_of(r: Relation) -> int | None:
    return r.rows[0][0] if r.arity == 1 and len(r) == 1 else None


def diag_family(instance: Instance, core: Template, no_instance: Instance | None = None) -> list[ReductionTrace]:
    """Turing reduction from SEP over the core with constants to SEP over the core.

    The source is SEP-YES iff some member of the returned family is SEP-YES."""
    if not is_core(core):
        raise NotCore("the template is not a core")
    d = core.domain_size
    pins: dict[str, set[int]] = {}
    plain = []
    for scope, sym in instance.constraints:
        r = instance.template[sym]
        a = _constant_of(r)
        if a is not None:
            pins.setdefault(scope[0], set()).add(a)
            continue
        name = core.name_of(r)
        if name is None:
            raise WrongSourceLanguage(f"relation {sym!r} is neither a constant nor in the core template")
        plain.append(Constraint(scope, name))
    pinned_to: dict[int, list[str]] = {}
    for v, values in pins.items():
        for a in values:
            pinned_to.setdefault(a, []).append(v)
    clash = any(len(vs) > 1 for vs in pinned_to.values()) or any(len(values) > 1 for values in pins.values())
    if clash:
        j = no_instance if no_instance is not None else default_no_instance(core)
        _verify_no_instance(j)
        return [ReductionTrace("diag", instance, j, {}, None, "1")]

    taken = set(instance.variables)
    diag_var = {a: _fresh(f"diag:{a}", taken) for a in range(d)}
    diagram = [Constraint(tuple(diag_var[x] for x in t), sym)
               for sym, r in core.relations.items() for t in r.rows]
    unused = [a for a in range(d) if a not in pinned_to]
    free_vars = [v for v in instance.variables if v not in pins]
    base_alias = {diag_var[a]: vs[0] for a, vs in pinned_to.items()}

    family = []
    for size in range(len(unused) + 1):
        for subset in itertools.combinations(unused, size):
            for image in itertools.permutations(free_vars, size):
                alias = dict(base_alias)
                alias.update({diag_var[a]: v for a, v in zip(subset, image)})
                variables = instance.variables + tuple(diag_var[a] for a in range(d) if diag_var[a] not in alias)
                cons = list(plain) + [Constraint(tuple(alias.get(x, x) for x in c.scope), c.symbol) for c in diagram]
                target = Instance(variables, core, tuple(dict.fromkeys(cons)))
                iota = dict(zip(subset, image))
                family.append(ReductionTrace("diag", instance, target, {v: v for v in instance.variables},
                                             None, "2", {"iota": iota, "alias": alias}))
    return family


def diag_family_size(m: int, unused: int) -> int:
    """sum_i P(m, i) * C(unused, i)."""
    return sum(perm(m, i) * comb(unused, i) for i in range(min(m, unused) + 1))
