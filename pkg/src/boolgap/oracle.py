"""Brute-force reference deciders.

Everything here enumerates assignments directly with ``itertools.product``
and never calls the search engine, the matcher or the solvers, so it can be
used to check them.  Only suitable for small instances.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .core import Equality, Instance, PpFormula, Template


def _tables(instance: Instance):
    return [(scope, frozenset(instance.template.relations[sym].rows)) for scope, sym in instance.constraints]


def all_solutions(instance: Instance) -> list[dict[str, int]]:
    vs = instance.variables
    tables = _tables(instance)
    out = []
    for values in itertools.product(range(instance.domain_size), repeat=len(vs)):
        a = dict(zip(vs, values))
        if all(tuple(a[v] for v in scope) in rows for scope, rows in tables):
            out.append(a)
    return out


def csp(instance: Instance, sols=None) -> bool:
    return bool(all_solutions(instance) if sols is None else sols)


def ntriv(instance: Instance, sols=None) -> bool:
    sols = all_solutions(instance) if sols is None else sols
    return any(len(set(s.values())) > 1 for s in sols)


def sep(instance: Instance, sols=None) -> bool:
    sols = all_solutions(instance) if sols is None else sols
    return all(any(s[u] != s[v] for s in sols) for u, v in itertools.combinations(instance.variables, 2))


def formula_relation(formula: PpFormula, template: Template) -> frozenset:
    """The relation defined by ``formula``, by enumerating every variable."""
    names = formula.free_vars + formula.bound_vars
    out = set()
    for values in itertools.product(range(template.domain_size), repeat=len(names)):
        a = dict(zip(names, values))
        ok = True
        for atom in formula.atoms:
            if isinstance(atom, Equality):
                ok = a[atom.left] == a[atom.right]
            else:
                ok = tuple(a[x] for x in atom.args) in template.relations[atom.symbol].rows
            if not ok:
                break
        if ok:
            out.add(tuple(a[x] for x in formula.free_vars))
    return frozenset(out)


def formula_scopes(formula: PpFormula, instance: Instance) -> set[tuple[str, ...]]:
    """Variable tuples on which ``formula`` is syntactically witnessed.

    Each relation atom is matched against every constraint of the same symbol;
    a combination is kept when the induced binding is consistent and every
    equality atom binds both sides to the same variable."""
    rel_atoms = [a for a in formula.atoms if not isinstance(a, Equality)]
    eqs = [a for a in formula.atoms if isinstance(a, Equality)]
    options = [[c.scope for c in instance.constraints if c.symbol == a.symbol] for a in rel_atoms]
    out = set()
    for choice in itertools.product(*options):
        binding: dict[str, str] = {}
        ok = True
        for atom, scope in zip(rel_atoms, choice):
            for x, v in zip(atom.args, scope):
                if binding.setdefault(x, v) != v:
                    ok = False
            if not ok:
                break
        if not ok:
            continue
        # unbound formula variables range over all instance variables
        loose = [x for x in formula.free_vars + formula.bound_vars if x not in binding]
        for values in itertools.product(instance.variables, repeat=len(loose)):
            full = dict(binding, **dict(zip(loose, values)))
            if all(full[e.left] == full[e.right] for e in eqs):
                out.add(tuple(full[x] for x in formula.free_vars))
    return out


def f_constraints(instance: Instance, family: Iterable[PpFormula]) -> list[tuple[tuple[str, ...], frozenset]]:
    out = []
    for rho in family:
        scopes = formula_scopes(rho, instance)
        if scopes:
            rel = formula_relation(rho, instance.template)
            out.extend((s, rel) for s in sorted(scopes))
    return out


def locally_compatible(instance: Instance, alpha: dict[str, int]) -> bool:
    """Compatibility for the family of all projections: every constraint has a
    row agreeing with ``alpha`` wherever its scope meets the domain of alpha."""
    for scope, sym in instance.constraints:
        rows = instance.template.relations[sym].rows
        if not any(all(row[i] == alpha[v] for i, v in enumerate(scope) if v in alpha) for row in rows):
            return False
    return True


def robust(instance: Instance, k: int, family: Sequence[PpFormula] | None = None, sols=None) -> bool:
    """(k,F)-robust satisfiability; ``family=None`` means all projections."""
    sols = all_solutions(instance) if sols is None else sols
    fcs = None if family is None else f_constraints(instance, family)
    d = instance.domain_size
    for size in range(min(k, len(instance.variables)) + 1):
        for subset in itertools.combinations(instance.variables, size):
            for values in itertools.product(range(d), repeat=size):
                alpha = dict(zip(subset, values))
                if fcs is None:
                    ok = locally_compatible(instance, alpha)
                else:
                    ok = all(tuple(alpha[v] for v in s) in rel for s, rel in fcs if set(s) <= set(subset))
                if ok and not any(all(s[v] == a for v, a in alpha.items()) for s in sols):
                    return False
    return True


def implies(i1: Instance, i2: Instance) -> bool:
    s2 = {tuple(sorted(s.items())) for s in all_solutions(i2)}
    return all(tuple(sorted(s.items())) in s2 for s in all_solutions(i1))


def equivalent(i1: Instance, i2: Instance) -> bool:
    return implies(i1, i2) and implies(i2, i1)
