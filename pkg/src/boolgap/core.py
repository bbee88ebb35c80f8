"""Relations, templates, instances and primitive-positive formulas.

Everything here is immutable once built.  Tuples are plain Python tuples of
small ints; a relation keeps its rows sorted so that two relations with the
same tuple set compare (and hash) equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence, Union


class BoolgapError(Exception):
    """Base class for errors raised by this package."""


class UnknownSymbol(BoolgapError, KeyError):
    pass


class EmptyDefinedRelation(BoolgapError, ValueError):
    pass


class DomainMismatch(BoolgapError, ValueError):
    pass


class Relation:
    """A non-empty finite relation over ``{0, ..., domain_size - 1}``."""

    __slots__ = ("arity", "domain_size", "rows", "_set", "_mask")

    def __init__(self, tuples: Iterable[Sequence[int]], domain_size: int = 2, arity: int | None = None):
        rows = sorted({tuple(int(v) for v in t) for t in tuples})
        if not rows:
            raise EmptyDefinedRelation("relations must be non-empty")
        if arity is None:
            arity = len(rows[0])
        if arity < 1:
            raise ValueError("relations must have positive arity")
        if domain_size < 1:
            raise ValueError("domain_size must be positive")
        for t in rows:
            if len(t) != arity:
                raise ValueError(f"tuple {t} does not have arity {arity}")
            if any(v < 0 or v >= domain_size for v in t):
                raise ValueError(f"tuple {t} leaves the domain 0..{domain_size - 1}")
        self.arity = arity
        self.domain_size = domain_size
        self.rows: tuple[tuple[int, ...], ...] = tuple(rows)
        self._set = frozenset(rows)
        self._mask = None

    @classmethod
    def from_strings(cls, lines: Iterable[str], domain_size: int = 2) -> "Relation":
        """Build from digit strings such as ``["100", "010", "001"]``."""
        return cls([tuple(int(c) for c in line.strip()) for line in lines], domain_size)

    @classmethod
    def full(cls, arity: int, domain_size: int = 2) -> "Relation":
        return cls(itertools.product(range(domain_size), repeat=arity), domain_size, arity)

    @classmethod
    def equality(cls, domain_size: int = 2) -> "Relation":
        return cls(((a, a) for a in range(domain_size)), domain_size, 2)

    def __contains__(self, t) -> bool:
        return tuple(t) in self._set

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return (self.arity, self.domain_size, self.rows) == (other.arity, other.domain_size, other.rows)

    def __hash__(self) -> int:
        return hash((self.arity, self.domain_size, self.rows))

    def __repr__(self) -> str:
        return f"Relation({self.to_strings()!r}, domain_size={self.domain_size})"

    def canonical(self) -> "Relation":
        return self

    def encode(self, t: Sequence[int]) -> int:
        """Pack a tuple as an integer, one base-``domain_size`` digit per coordinate."""
        code = 0
        for v in t:
            code = code * self.domain_size + v
        return code

    @property
    def packed(self) -> frozenset[int]:
        return frozenset(self.encode(t) for t in self.rows)

    @property
    def bitmask(self) -> int | None:
        """Characteristic bit vector of length ``2**arity`` (Boolean, arity <= 16 only)."""
        if self.domain_size != 2 or self.arity > 16:
            return None
        if self._mask is None:
            m = 0
            for t in self.rows:
                m |= 1 << self.encode(t)
            self._mask = m
        return self._mask

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    def to_strings(self) -> list[str]:
        sep = "" if self.domain_size <= 10 else " "
        return [sep.join(str(v) for v in t) for t in self.rows]

    def project(self, coords: Sequence[int]) -> "Relation":
        """Projection onto 0-based ``coords`` (in the given order)."""
        return Relation((tuple(t[i] for i in coords) for t in self.rows), self.domain_size, len(coords))

    def complement(self) -> frozenset[tuple[int, ...]]:
        return frozenset(itertools.product(range(self.domain_size), repeat=self.arity)) - self._set


def relations_of(language) -> list[Relation]:
    """Accept a Template, a mapping of relations, or an iterable of relations."""
    if isinstance(language, Template):
        return list(language.relations.values())
    if isinstance(language, Relation):
        return [language]
    if isinstance(language, Mapping):
        return list(language.values())
    return list(language)


@dataclass(frozen=True, eq=False)
class Template:
    domain_size: int
    relations: Mapping[str, Relation]

    def __post_init__(self):
        rels = dict(self.relations)
        if not rels:
            raise ValueError("a template needs at least one relation")
        for name, r in rels.items():
            if not isinstance(r, Relation):
                raise TypeError(f"{name!r} is not a Relation")
            if r.domain_size != self.domain_size:
                raise DomainMismatch(f"relation {name!r} has domain {r.domain_size}, template has {self.domain_size}")
        object.__setattr__(self, "relations", MappingProxyType(rels))

    @classmethod
    def of(cls, domain_size: int = 2, **relations: Relation) -> "Template":
        return cls(domain_size, relations)

    def __getitem__(self, name: str) -> Relation:
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def __contains__(self, name) -> bool:
        return name in self.relations

    def __eq__(self, other) -> bool:
        if not isinstance(other, Template):
            return NotImplemented
        return self.domain_size == other.domain_size and dict(self.relations) == dict(other.relations)

    def __hash__(self) -> int:
        return hash((self.domain_size, tuple(sorted(self.relations.items(), key=lambda kv: kv[0]))))

    def extend(self, **relations: Relation) -> "Template":
        rels = dict(self.relations)
        rels.update(relations)
        return Template(self.domain_size, rels)

    def name_of(self, r: Relation) -> str | None:
        for name, s in self.relations.items():
            if s == r:
                return name
        return None


class Constraint(NamedTuple):
    scope: tuple[str, ...]
    symbol: str


@dataclass(frozen=True)
class Instance:
    """A constraint instance ``(V; A; C)`` over a template.

    ``bot_top`` optionally names the two variables that occupy the final two
    coordinates of every 8-ary weak-base constraint.
    """

    variables: tuple[str, ...]
    template: Template
    constraints: tuple[Constraint, ...] = ()
    bot_top: tuple[str, str] | None = None

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        cons = tuple(Constraint(tuple(s), sym) for s, sym in self.constraints)
        known = set(variables)
        for scope, sym in cons:
            r = self.template[sym]
            if len(scope) != r.arity:
                raise ValueError(f"constraint {sym}{scope} has wrong arity (expected {r.arity})")
            missing = [v for v in scope if v not in known]
            if missing:
                raise ValueError(f"constraint {sym}{scope} uses undeclared variables {missing}")
        if self.bot_top is not None:
            bt = tuple(self.bot_top)
            if len(bt) != 2 or any(v not in known for v in bt):
                raise ValueError("bot_top must name two declared variables")
            object.__setattr__(self, "bot_top", bt)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", cons)

    @property
    def domain_size(self) -> int:
        return self.template.domain_size

    def relation(self, c: Constraint) -> Relation:
        return self.template[c.symbol]

    def canonical(self) -> "Instance":
        """Drop duplicate constraints, keeping first occurrences."""
        return Instance(self.variables, self.template, tuple(dict.fromkeys(self.constraints)), self.bot_top)

    def is_solution(self, assignment: Mapping[str, int]) -> bool:
        for scope, sym in self.constraints:
            if tuple(assignment[v] for v in scope) not in self.template[sym]:
                return False
        return True

    def with_constraints(self, extra: Iterable[Constraint], template: Template | None = None) -> "Instance":
        return Instance(self.variables, template or self.template,
                        self.constraints + tuple(Constraint(tuple(s), sym) for s, sym in extra), self.bot_top)


# --- pp-formulas ---------------------------------------------------------

class Equality(NamedTuple):
    left: str
    right: str


class RelationAtom(NamedTuple):
    symbol: str
    args: tuple[str, ...]


Atom = Union[Equality, RelationAtom]


@dataclass(frozen=True)
class PpFormula:
    """``(exists bound_vars) AND atoms`` with the free variables in order."""

    free_vars: tuple[str, ...]
    bound_vars: tuple[str, ...] = ()
    atoms: tuple[Atom, ...] = ()
    name: str = ""

    def __post_init__(self):
        free, bound = tuple(self.free_vars), tuple(self.bound_vars)
        if len(set(free)) != len(free) or len(set(bound)) != len(bound):
            raise ValueError("free and bound variables must be distinct names")
        if set(free) & set(bound):
            raise ValueError("free and bound variables overlap")
        atoms = []
        for a in self.atoms:
            if isinstance(a, Equality):
                atoms.append(a)
            elif isinstance(a, RelationAtom):
                atoms.append(RelationAtom(a.symbol, tuple(a.args)))
            else:
                raise TypeError(f"not an atom: {a!r}")
        allowed = set(free) | set(bound)
        for a in atoms:
            names = (a.left, a.right) if isinstance(a, Equality) else a.args
            bad = [x for x in names if x not in allowed]
            if bad:
                raise ValueError(f"atom {a} uses unknown variables {bad}")
        object.__setattr__(self, "free_vars", free)
        object.__setattr__(self, "bound_vars", bound)
        object.__setattr__(self, "atoms", tuple(atoms))

    @property
    def arity(self) -> int:
        return len(self.free_vars)

    @property
    def is_conjunct_atomic(self) -> bool:
        return not self.bound_vars

    @property
    def is_equality_free(self) -> bool:
        return not any(isinstance(a, Equality) for a in self.atoms)

    @property
    def symbols(self) -> set[str]:
        return {a.symbol for a in self.atoms if isinstance(a, RelationAtom)}

    def __str__(self) -> str:
        parts = []
        for a in self.atoms:
            if isinstance(a, Equality):
                parts.append(f"{a.left}={a.right}")
            else:
                parts.append(f"{a.symbol}({','.join(a.args)})")
        body = " & ".join(parts) or "true"
        head = f"exists {' '.join(self.bound_vars)} . " if self.bound_vars else ""
        return f"({','.join(self.free_vars)}) :- {head}{body}"


def relation_of_pp(formula: PpFormula, template: Template) -> Relation:
    """The relation on the template's domain defined by ``formula``."""
    from ._search import Problem

    for sym in formula.symbols:
        template[sym]
    names = formula.free_vars + formula.bound_vars
    index = {v: i for i, v in enumerate(names)}
    d = template.domain_size
    cons = []
    eq = Relation.equality(d)
    for a in formula.atoms:
        if isinstance(a, Equality):
            cons.append(((index[a.left], index[a.right]), eq.rows))
        else:
            cons.append((tuple(index[x] for x in a.args), template[a.symbol].rows))
    problem = Problem(d, len(names), cons)
    free = list(range(len(formula.free_vars)))
    rows = list(problem.project(free))
    if not rows:
        raise EmptyDefinedRelation(f"formula {formula} defines the empty relation")
    return Relation(rows, d, len(free))


@dataclass(frozen=True)
class FConstraint:
    """``relation`` is None when the formula defines the empty relation."""

    scope: tuple[str, ...]
    relation: Relation | None = field(compare=False)
    formula: str = ""

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return () if self.relation is None else self.relation.rows


def _match_formula(formula: PpFormula, instance: Instance):
    """Yield substitutions (free-var tuples) under which every atom of
    ``formula`` is syntactically present in the instance."""
    # equalities must instantiate to identical variables: merge their names
    parent = {v: v for v in formula.free_vars + formula.bound_vars}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in formula.atoms:
        if isinstance(a, Equality):
            ra, rb = find(a.left), find(a.right)
            if ra != rb:
                parent[rb] = ra
    rel_atoms = [RelationAtom(a.symbol, tuple(find(x) for x in a.args))
                 for a in formula.atoms if isinstance(a, RelationAtom)]
    by_symbol: dict[str, list[tuple[str, ...]]] = {}
    for scope, sym in instance.constraints:
        by_symbol.setdefault(sym, []).append(scope)
    for k in by_symbol:
        by_symbol[k] = list(dict.fromkeys(by_symbol[k]))

    free_roots = [find(v) for v in formula.free_vars]
    results = []

    def extend(i, binding):
        if i == len(rel_atoms):
            results.append(dict(binding))
            return
        sym, args = rel_atoms[i]
        for scope in by_symbol.get(sym, ()):
            new = {}
            ok = True
            for x, v in zip(args, scope):
                cur = binding.get(x, new.get(x))
                if cur is None:
                    new[x] = v
                elif cur != v:
                    ok = False
                    break
            if ok:
                binding.update(new)
                extend(i + 1, binding)
                for x in new:
                    del binding[x]

    extend(0, {})
    if not instance.variables:
        return
    seen = set()
    for binding in results:
        loose = [r for r in dict.fromkeys(free_roots) if r not in binding]
        for values in itertools.product(instance.variables, repeat=len(loose)):
            full = dict(binding)
            full.update(zip(loose, values))
            scope = tuple(full[r] for r in free_roots)
            if scope not in seen:
                seen.add(scope)
                yield scope


def derive_F_constraints(instance: Instance, family: Iterable[PpFormula]) -> list[FConstraint]:
    """The constraints defined by each formula of ``family`` from the
    instance's constraint list (syntactic matching)."""
    out = []
    for rho in family:
        missing = object()
        rel = missing
        for scope in _match_formula(rho, instance):
            if rel is missing:
                try:
                    rel = relation_of_pp(rho, instance.template)
                except EmptyDefinedRelation:
                    rel = None
            out.append(FConstraint(scope, rel, rho.name or str(rho)))
    return out


def projections_family(language) -> list[PpFormula]:
    """pp-formulas defining every projection of every relation symbol.

    ``language`` is a Template or a mapping ``name -> Relation`` (or arity).
    """
    rels = language.relations if isinstance(language, Template) else language
    out = []
    for name, r in rels.items():
        k = r if isinstance(r, int) else r.arity
        for size in range(1, k + 1):
            for keep in itertools.combinations(range(k), size):
                free = tuple(f"x{j + 1}" for j in range(size))
                bound = tuple(f"w{i + 1}" for i in range(k) if i not in keep)
                args = []
                pos = 0
                for i in range(k):
                    if i in keep:
                        args.append(free[pos])
                        pos += 1
                    else:
                        args.append(f"w{i + 1}")
                coords = ",".join(str(i + 1) for i in keep)
                out.append(PpFormula(free, bound, (RelationAtom(name, tuple(args)),), name=f"proj:{name}:{coords}"))
    return out
