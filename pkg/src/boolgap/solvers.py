"""Exact deciders for CSP, CSP_NTriv, SEP, (k,F)-Robust, EQUIV and IMPL,
polynomial-time solvers for the tractable side, and the reduction of SEP and
robust satisfiability to CSP with constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

import networkx as nx

from ._search import Problem
from .core import (BoolgapError, Constraint, FConstraint, Instance, Relation, Template,
                   derive_F_constraints, projections_family)
from .galois import AND, MAJ, MIN, OR, preserves
from .post import Classification, Coclone

Assignment = dict


class NotTractable(BoolgapError, ValueError):
    pass


# -- search helpers ---------------------------------------------------------

def _problem(instance: Instance, extra=()) -> tuple[Problem, dict[str, int]]:
    index = {v: i for i, v in enumerate(instance.variables)}
    cons = [(tuple(index[v] for v in scope), instance.template[sym].rows) for scope, sym in instance.constraints]
    for scope, rows in extra:
        cons.append((tuple(index[v] for v in scope), rows))
    return Problem(instance.domain_size, len(index), cons), index


def _as_assignment(instance: Instance, values) -> Assignment:
    return dict(zip(instance.variables, values))


def solutions(instance: Instance) -> Iterator[Assignment]:
    """All solutions, in lexicographic order of value tuples."""
    problem, _ = _problem(instance)
    for values in problem.solutions():
        yield _as_assignment(instance, values)


def extend(instance: Instance, partial: Mapping[str, int]) -> Assignment | None:
    """A solution agreeing with ``partial``, or None."""
    problem, index = _problem(instance)
    values = problem.first({index[v]: a for v, a in partial.items()})
    return None if values is None else _as_assignment(instance, values)


def solve_csp(instance: Instance) -> Assignment | None:
    return extend(instance, {})


# -- CSP_NTriv ----------------------------------------------------------------

@dataclass(frozen=True)
class NtrivReport:
    answer: bool
    witness: Assignment | None = None


def decide_ntriv(instance: Instance) -> NtrivReport:
    vs = instance.variables
    if len(vs) < 2:
        return NtrivReport(False)
    problem, _ = _problem(instance)
    d = instance.domain_size
    # a non-constant solution differs from the first variable somewhere
    for j in range(1, len(vs)):
        for a, b in itertools.permutations(range(d), 2):
            values = problem.first({0: a, j: b})
            if values is not None:
                return NtrivReport(True, _as_assignment(instance, values))
    return NtrivReport(False)


# -- SEP ------------------------------------------------------------------------

@dataclass(frozen=True)
class SepReport:
    answer: bool
    witnesses: dict[tuple[str, str], Assignment] = field(default_factory=dict)
    failing_pair: tuple[str, str] | None = None
    queries: int = 0


def decide_sep(instance: Instance) -> SepReport:
    vs = instance.variables
    problem, _ = _problem(instance)
    d = instance.domain_size
    found: list[tuple[int, ...]] = []
    witnesses = {}
    queries = 0
    for i, j in itertools.combinations(range(len(vs)), 2):
        hit = next((s for s in found if s[i] != s[j]), None)
        if hit is None:
            for a, b in itertools.permutations(range(d), 2):
                queries += 1
                hit = problem.first({i: a, j: b})
                if hit is not None:
                    found.append(hit)
                    break
        if hit is None:
            return SepReport(False, witnesses, (vs[i], vs[j]), queries)
        witnesses[(vs[i], vs[j])] = _as_assignment(instance, hit)
    return SepReport(True, witnesses, None, queries)


# -- (k,F)-Robust -------------------------------------------------------------

@dataclass(frozen=True)
class RobustReport:
    answer: bool
    counterexample: tuple[tuple[str, ...], Assignment] | None = None
    checked: int = 0
    extensions: dict = field(default_factory=dict)


def _family(instance: Instance, family) -> list:
    if family is None or family == "projections":
        return projections_family(instance.template)
    return list(family)


def compatible_assignments(instance: Instance, subset: Sequence[str],
                           fconstraints: Sequence[FConstraint]) -> Iterator[Assignment]:
    """Assignments on ``subset`` satisfying every F-constraint whose scope lies in it."""
    inside = set(subset)
    index = {v: i for i, v in enumerate(subset)}
    cons = [(tuple(index[v] for v in fc.scope), fc.rows)
            for fc in fconstraints if set(fc.scope) <= inside]
    for values in Problem(instance.domain_size, len(subset), cons).solutions():
        yield dict(zip(subset, values))


def robust_subsets(variables: Sequence[str], k: int) -> Iterator[tuple[str, ...]]:
    """Subsets of size <= k: by size, then lexicographically in declaration order."""
    for size in range(0, min(k, len(variables)) + 1):
        yield from itertools.combinations(variables, size)


def decide_robust(instance: Instance, k: int, family=None, keep_extensions: bool = False) -> RobustReport:
    if k < 0:
        raise ValueError("k must be non-negative")
    fcs = derive_F_constraints(instance, _family(instance, family))
    problem, index = _problem(instance)
    found: list[tuple[int, ...]] = []
    checked = 0
    extensions = {}
    for subset in robust_subsets(instance.variables, k):
        idx = [index[v] for v in subset]
        for alpha in compatible_assignments(instance, subset, fcs):
            checked += 1
            vals = [alpha[v] for v in subset]
            hit = next((s for s in found if all(s[i] == a for i, a in zip(idx, vals))), None)
            if hit is None:
                hit = problem.first(dict(zip(idx, vals)))
                if hit is None:
                    return RobustReport(False, (subset, alpha), checked, extensions)
                found.append(hit)
            if keep_extensions:
                extensions[(subset, tuple(vals))] = _as_assignment(instance, hit)
    return RobustReport(True, None, checked, extensions)


# -- EQUIV and IMPL -------------------------------------------------------------

def _same_variables(i1: Instance, i2: Instance):
    if set(i1.variables) != set(i2.variables):
        raise ValueError("EQUIV and IMPL need instances over the same variables")
    if i1.domain_size != i2.domain_size:
        raise ValueError("instances live on different domains")


def decide_impl(i1: Instance, i2: Instance) -> bool:
    """Is every solution of ``i1`` a solution of ``i2``?

    Each constraint of ``i2`` is tested by searching for a solution of ``i1``
    that lands in the complement of its relation."""
    _same_variables(i1, i2)
    mine = {(c.scope, i1.template[c.symbol]) for c in i1.constraints}
    for scope, sym in dict.fromkeys(i2.constraints):
        r = i2.template[sym]
        if (scope, r) in mine:
            continue
        outside = sorted(r.complement())
        if not outside:
            continue
        problem, _ = _problem(i1, [(scope, outside)])
        if problem.satisfiable():
            return False
    return True


def decide_equiv(i1: Instance, i2: Instance) -> bool:
    return decide_impl(i1, i2) and decide_impl(i2, i1)


def merge_templates(t1: Template, t2: Template) -> tuple[Template, dict[str, str]]:
    """Union of two templates; symbols of ``t2`` that clash are renamed."""
    rels = dict(t1.relations)
    renames = {}
    for name, r in t2.relations.items():
        target = name
        n = 1
        while target in rels and rels[target] != r:
            n += 1
            target = f"{name}_{n}"
        rels[target] = r
        renames[name] = target
    return Template(t1.domain_size, rels), renames


def conjoin(i1: Instance, i2: Instance) -> Instance:
    """The instance (V; A; C1 u C2)."""
    template, renames = merge_templates(i1.template, i2.template)
    extra = [Constraint(c.scope, renames[c.symbol]) for c in i2.constraints]
    return Instance(i1.variables, template, i1.constraints, i1.bot_top).with_constraints(extra)


def impl_via_equiv(i1: Instance, i2: Instance, equiv=decide_equiv) -> bool:
    return equiv(i1, conjoin(i1, i2))


def equiv_via_impl(i1: Instance, i2: Instance, impl=decide_impl) -> bool:
    return impl(i1, i2) and impl(i2, i1)


# -- polynomial-time solvers ------------------------------------------------------

def _usable_rows(scope: Sequence[str], r: Relation) -> list[tuple[int, ...]]:
    # rows consistent with repeated variables in the scope
    first = {}
    for p, v in enumerate(scope):
        first.setdefault(v, p)
    return [t for t in r.rows if all(t[p] == t[first[v]] for p, v in enumerate(scope))]


def _horn(instance: Instance, dual: bool) -> Assignment | None:
    start, better = (1, lambda a, b: a >= b) if dual else (0, lambda a, b: a <= b)
    op = AND.table if not dual else OR.table
    value = {v: start for v in instance.variables}
    cons = [(scope, _usable_rows(scope, instance.template[sym])) for scope, sym in instance.constraints]
    changed = True
    while changed:
        changed = False
        for scope, rows in cons:
            cur = tuple(value[v] for v in scope)
            if cur in rows:
                continue
            above = [t for t in rows if all(better(c, x) for c, x in zip(cur, t))]
            if not above:
                return None
            least = above[0]
            for t in above[1:]:
                least = tuple(op[2 * a + b] for a, b in zip(least, t))
            for v, x in zip(scope, least):
                if value[v] != x:
                    value[v] = x
                    changed = True
    return value


def _two_sat(instance: Instance) -> Assignment | None:
    # literal (v, a) means "v takes value a"
    g = nx.DiGraph()
    vs = instance.variables
    for v in vs:
        g.add_node((v, 0))
        g.add_node((v, 1))

    def clause(l1, l2):
        # l1 or l2
        g.add_edge((l1[0], 1 - l1[1]), l2)
        g.add_edge((l2[0], 1 - l2[1]), l1)

    for scope, sym in instance.constraints:
        rows = _usable_rows(scope, instance.template[sym])
        if not rows:
            return None
        for p in range(len(scope)):
            seen = {t[p] for t in rows}
            for a in (0, 1):
                if a not in seen:
                    clause((scope[p], 1 - a), (scope[p], 1 - a))
        for p, q in itertools.combinations(range(len(scope)), 2):
            x, y = scope[p], scope[q]
            if x == y:
                continue
            seen = {(t[p], t[q]) for t in rows}
            for a, b in itertools.product((0, 1), repeat=2):
                if (a, b) not in seen:
                    clause((x, 1 - a), (y, 1 - b))
    comp = {}
    cond = nx.condensation(g)
    order = {c: i for i, c in enumerate(nx.topological_sort(cond))}
    for node, c in cond.graph["mapping"].items():
        comp[node] = order[c]
    value = {}
    for v in vs:
        if comp[(v, 0)] == comp[(v, 1)]:
            return None
        # pick the literal whose component comes later in topological order
        value[v] = 1 if comp[(v, 1)] > comp[(v, 0)] else 0
    return value


def _affine_equations(r: Relation) -> list[tuple[int, int]]:
    """Equations (mask, rhs) over the coordinates whose solution set is ``r``."""
    k = r.arity
    bits = [sum(b << (k - 1 - i) for i, b in enumerate(t)) for t in r.rows]
    b0 = bits[0]
    # basis of the direction space
    basis: list[int] = []
    for x in bits[1:]:
        x ^= b0
        for e in basis:
            x = min(x, x ^ e)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    eqs = []
    for mask in _nullspace(basis, k):
        rhs = bin(mask & b0).count("1") & 1
        eqs.append((mask, rhs))
    return eqs


def _nullspace(rows: list[int], k: int) -> list[int]:
    """Basis of {a : popcount(a & r) even for every r in rows} over GF(2)^k."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, pr in pivots.items():
            if r >> col & 1:
                r ^= pr
        if r:
            col = r.bit_length() - 1
            for c2 in list(pivots):
                if pivots[c2] >> col & 1:
                    pivots[c2] ^= r
            pivots[col] = r
    out = []
    for free in range(k):
        if free in pivots:
            continue
        a = 1 << free
        for col, pr in pivots.items():
            if pr >> free & 1:
                a |= 1 << col
        out.append(a)
    return out


def _affine(instance: Instance) -> Assignment | None:
    vs = instance.variables
    index = {v: i for i, v in enumerate(vs)}
    rows: list[tuple[int, int]] = []
    for scope, sym in instance.constraints:
        r = instance.template[sym]
        k = len(scope)
        for mask, rhs in _affine_equations(r):
            lhs = 0
            for p in range(k):
                if mask >> (k - 1 - p) & 1:
                    lhs ^= 1 << index[scope[p]]
            rows.append((lhs, rhs))
    pivots: dict[int, tuple[int, int]] = {}
    for lhs, rhs in rows:
        for col, (pl, pr) in pivots.items():
            if lhs >> col & 1:
                lhs ^= pl
                rhs ^= pr
        if not lhs:
            if rhs:
                return None
            continue
        col = lhs.bit_length() - 1
        for c2, (pl, pr) in list(pivots.items()):
            if pl >> col & 1:
                pivots[c2] = (pl ^ lhs, pr ^ rhs)
        pivots[col] = (lhs, rhs)
    value = [0] * len(vs)
    # reduced form: each pivot row is pivot + free columns; free variables are 0
    for col, (lhs, rhs) in pivots.items():
        value[col] = rhs
    return dict(zip(vs, value))


_FAST = {"and": lambda i: _horn(i, False), "or": lambda i: _horn(i, True), "maj": _two_sat, "min": _affine}
_WITNESS_OPS = {"and": AND, "or": OR, "maj": MAJ, "min": MIN}


def solve_fast(instance: Instance, classification: Classification) -> Assignment | None:
    """Polynomial-time solver chosen by the tractability witness."""
    w = classification.witness
    if classification.coclone is not Coclone.TRACTABLE or w not in _FAST:
        raise NotTractable(f"{classification} carries no tractability witness")
    if instance.domain_size != 2:
        raise NotTractable("fast solvers are Boolean only")
    op = _WITNESS_OPS[w]
    for sym in {c.symbol for c in instance.constraints}:
        if not preserves(op, instance.template[sym]):
            raise NotTractable(f"{w} does not preserve relation {sym!r}")
    result = _FAST[w](instance)
    if result is not None and not instance.is_solution(result):
        raise AssertionError(f"fast solver ({w}) returned a non-solution")
    return result


# -- reduction to CSP with constants --------------------------------------------

def constant_symbol(a: int) -> str:
    return f"const{a}"


def with_constants(template: Template) -> Template:
    """The template extended by every singleton unary relation {(a)}."""
    rels = dict(template.relations)
    present = set(rels.values())
    for a in range(template.domain_size):
        r = Relation([(a,)], template.domain_size, 1)
        if r in present:
            continue
        name = constant_symbol(a)
        while name in rels:
            name += "_"
        rels[name] = r
    return Template(template.domain_size, rels)


def _constant_names(template: Template) -> dict[int, str]:
    out = {}
    for name, r in template.relations.items():
        if r.arity == 1 and len(r) == 1:
            out.setdefault(r.rows[0][0], name)
    return out


def _pin(instance: Instance, template: Template, pins: Mapping[str, int]) -> Instance:
    names = _constant_names(template)
    base = Instance(instance.variables, template, instance.constraints, instance.bot_top)
    return base.with_constraints([Constraint((v,), names[a]) for v, a in pins.items()])


def _default_oracle(instance: Instance) -> bool:
    return solve_csp(instance) is not None


@dataclass(frozen=True)
class OracleRun:
    answer: bool
    queries: int
    failing: object = None


def sep_via_constants(instance: Instance, oracle: Callable[[Instance], bool] | None = None) -> OracleRun:
    oracle = oracle or _default_oracle
    template = with_constants(instance.template)
    d = instance.domain_size
    queries = 0
    for u, v in itertools.combinations(instance.variables, 2):
        for a, b in itertools.permutations(range(d), 2):
            queries += 1
            if oracle(_pin(instance, template, {u: a, v: b})):
                break
        else:
            return OracleRun(False, queries, (u, v))
    return OracleRun(True, queries)


def robust_via_constants(instance: Instance, k: int, family=None,
                         oracle: Callable[[Instance], bool] | None = None) -> OracleRun:
    """One oracle query per compatible assignment; stops at the first failure."""
    oracle = oracle or _default_oracle
    template = with_constants(instance.template)
    fcs = derive_F_constraints(instance, _family(instance, family))
    queries = 0
    for subset in robust_subsets(instance.variables, k):
        for alpha in compatible_assignments(instance, subset, fcs):
            queries += 1
            if not oracle(_pin(instance, template, alpha)):
                return OracleRun(False, queries, (subset, alpha))
    return OracleRun(True, queries)
