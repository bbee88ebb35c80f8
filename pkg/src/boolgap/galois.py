"""Operations, partial operations and the Pol/Inv correspondence.

Operation tables are row-major in lexicographic argument order, so the table
of a binary Boolean operation lists f(0,0), f(0,1), f(1,0), f(1,1).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

from ._search import Problem
from .core import BoolgapError, DomainMismatch, PpFormula, Relation, RelationAtom, Equality, Template, relations_of


class ArityTooLarge(BoolgapError, ValueError):
    pass


class InfeasibleArity(BoolgapError, ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


# Largest number of candidate tables d**(d**n) that polymorphisms() will enumerate.
POLY_TABLE_CAP = _env_int("BOOLGAP_POLY_CAP", 2 ** 16)
# Largest indicator problem (number of constraints) the membership search builds.
INDICATOR_CAP = _env_int("BOOLGAP_INDICATOR_CAP", 1_000_000)
# Largest number of candidate scopes per relation for the canonical formula.
SCOPE_CAP = _env_int("BOOLGAP_SCOPE_CAP", 2 ** 24)


def _args(domain_size: int, arity: int):
    return list(itertools.product(range(domain_size), repeat=arity))


def _index(args: Sequence[int], domain_size: int) -> int:
    i = 0
    for a in args:
        i = i * domain_size + a
    return i


@dataclass(frozen=True)
class TotalOperation:
    arity: int
    table: tuple[int, ...]
    domain_size: int = 2
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        if self.arity < 1:
            raise ValueError("operations have positive arity")
        if len(table) != self.domain_size ** self.arity:
            raise ValueError(f"table has {len(table)} entries, expected {self.domain_size ** self.arity}")
        if any(v < 0 or v >= self.domain_size for v in table):
            raise ValueError("table value outside the domain")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_function(cls, arity: int, fn: Callable[..., int], domain_size: int = 2, name: str = "") -> "TotalOperation":
        return cls(arity, tuple(fn(*a) for a in _args(domain_size, arity)), domain_size, name)

    @classmethod
    def projection(cls, i: int, arity: int, domain_size: int = 2) -> "TotalOperation":
        """The projection onto the 0-based argument ``i``."""
        return cls.from_function(arity, lambda *a: a[i], domain_size, f"pi{i + 1}/{arity}")

    @classmethod
    def from_string(cls, arity: int, digits: str, domain_size: int = 2) -> "TotalOperation":
        return cls(arity, tuple(int(c) for c in digits), domain_size)

    def __call__(self, *args: int) -> int:
        return self.table[_index(args, self.domain_size)]

    def __str__(self) -> str:
        return self.name or "".join(map(str, self.table))

    def to_string(self) -> str:
        return "".join(map(str, self.table))

    def apply_rows(self, rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Columnwise application to ``arity`` rows of equal length."""
        d = self.domain_size
        return tuple(self.table[_index(col, d)] for col in zip(*rows))


@dataclass(frozen=True)
class PartialOperation:
    """A partial operation; ``None`` marks undefined argument tuples."""

    arity: int
    table: tuple[int | None, ...]
    domain_size: int = 2
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = tuple(None if v is None else int(v) for v in self.table)
        if len(table) != self.domain_size ** self.arity:
            raise ValueError("table length does not match arity")
        if all(v is None for v in table):
            raise ValueError("a partial operation needs at least one defined point")
        if any(v is not None and not 0 <= v < self.domain_size for v in table):
            raise ValueError("table value outside the domain")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_total(cls, f: TotalOperation) -> "PartialOperation":
        return cls(f.arity, f.table, f.domain_size, f.name)

    @classmethod
    def restrict(cls, f: TotalOperation, dom: Iterable[Sequence[int]]) -> "PartialOperation":
        keep = {_index(a, f.domain_size) for a in dom}
        return cls(f.arity, tuple(v if i in keep else None for i, v in enumerate(f.table)), f.domain_size, f.name)

    @property
    def dom(self) -> frozenset[tuple[int, ...]]:
        args = _args(self.domain_size, self.arity)
        return frozenset(a for a, v in zip(args, self.table) if v is not None)

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.table)

    def __call__(self, *args: int) -> int | None:
        return self.table[_index(args, self.domain_size)]


def _check_domain(f, r: Relation):
    if f.domain_size != r.domain_size:
        raise DomainMismatch(f"operation on domain {f.domain_size}, relation on domain {r.domain_size}")


def preserves(f: TotalOperation, r: Relation) -> bool:
    """True iff ``f`` is a polymorphism of ``r``."""
    _check_domain(f, r)
    for rows in itertools.product(r.rows, repeat=f.arity):
        if f.apply_rows(rows) not in r:
            return False
    return True


def preserves_partial(f: PartialOperation, r: Relation) -> bool:
    _check_domain(f, r)
    d, table = f.domain_size, f.table
    for rows in itertools.product(r.rows, repeat=f.arity):
        image = []
        for col in zip(*rows):
            v = table[_index(col, d)]
            if v is None:
                break
            image.append(v)
        else:
            if tuple(image) not in r:
                return False
    return True


def preserves_all(f, language) -> bool:
    check = preserves if isinstance(f, TotalOperation) else preserves_partial
    return all(check(f, r) for r in relations_of(language))


# -- the standard Boolean probes ----------------------------------------------

NOT = TotalOperation.from_function(1, lambda x: 1 - x, name="not")
C0 = TotalOperation.from_function(1, lambda x: 0, name="c0")
C1 = TotalOperation.from_function(1, lambda x: 1, name="c1")
AND = TotalOperation.from_function(2, lambda x, y: x & y, name="and")
OR = TotalOperation.from_function(2, lambda x, y: x | y, name="or")
MAJ = TotalOperation.from_function(3, lambda x, y, z: (x & y) | (y & z) | (x & z), name="maj")
MIN = TotalOperation.from_function(3, lambda x, y, z: x ^ y ^ z, name="min")
PROBES = {op.name: op for op in (NOT, C0, C1, AND, OR, MAJ, MIN)}


# -- polymorphisms via the indicator problem ----------------------------------

def _domain_of(language, domain_size: int | None) -> int:
    rels = relations_of(language)
    sizes = {r.domain_size for r in rels}
    if isinstance(language, Template):
        sizes.add(language.domain_size)
    if domain_size is not None:
        sizes.add(domain_size)
    if len(sizes) > 1:
        raise DomainMismatch(f"mixed domain sizes {sorted(sizes)}")
    if not sizes:
        raise ValueError("domain_size is required for an empty language")
    return sizes.pop()


def indicator_problem(rels: Sequence[Relation], d: int, n: int, cap: int = INDICATOR_CAP) -> Problem:
    """CSP whose solutions are exactly the n-ary polymorphisms of ``rels``.

    Variable i stands for the value of f on the i-th argument tuple."""
    size = sum(len(r) ** n for r in rels)
    if size > cap:
        raise InfeasibleArity(f"indicator problem would need {size} constraints (cap {cap})")
    cons = []
    for r in rels:
        for rows in itertools.product(r.rows, repeat=n):
            scope = tuple(_index(col, d) for col in zip(*rows))
            cons.append((scope, r.rows))
    return Problem(d, d ** n, cons)


def polymorphisms(language, arity: int, domain_size: int | None = None) -> list[TotalOperation]:
    """All ``arity``-ary polymorphisms, ordered by table."""
    d = _domain_of(language, domain_size)
    if arity < 1:
        raise ValueError("arity must be positive")
    if d ** (d ** arity) > POLY_TABLE_CAP:
        raise ArityTooLarge(f"{d}**({d}**{arity}) candidate tables exceeds cap {POLY_TABLE_CAP}")
    problem = indicator_problem(relations_of(language), d, arity)
    return [TotalOperation(arity, t, d) for t in problem.solutions()]


def clone_closure(generators: Iterable[TotalOperation], arity_bound: int,
                  domain_size: int = 2) -> list[TotalOperation]:
    """Operations of arity <= ``arity_bound`` in the clone generated by ``generators``."""
    gens = list(generators)
    if gens:
        domain_size = gens[0].domain_size
        if any(g.domain_size != domain_size for g in gens):
            raise DomainMismatch("generators live on different domains")
    out: list[TotalOperation] = []
    for n in range(1, arity_bound + 1):
        # n-ary term operations: close the n-ary projections under the generators
        level = {TotalOperation.projection(i, n, domain_size).table for i in range(n)}
        frontier = set(level)
        while frontier:
            fresh = set()
            current = sorted(level)
            for g in gens:
                for combo in itertools.product(current, repeat=g.arity):
                    if not any(t in frontier for t in combo):
                        continue
                    table = tuple(g.table[_index(col, domain_size)] for col in zip(*combo))
                    if table not in level:
                        fresh.add(table)
            level |= fresh
            frontier = fresh
        out.extend(TotalOperation(n, t, domain_size) for t in sorted(level))
    return out


def c_closure(r: Relation, generators: Iterable[TotalOperation]) -> Relation:
    """Least superset of ``r`` closed under every generator."""
    gens = list(generators)
    for g in gens:
        _check_domain(g, r)
    rows = set(r.rows)
    frontier = set(rows)
    while frontier:
        fresh = set()
        current = sorted(rows)
        for g in gens:
            for combo in itertools.product(current, repeat=g.arity):
                if g.arity > 1 and not any(t in frontier for t in combo):
                    continue
                image = g.apply_rows(combo)
                if image not in rows:
                    fresh.add(image)
        if not gens:
            break
        rows |= fresh
        frontier = fresh
    return Relation(rows, r.domain_size, r.arity)


# -- co-clone membership --------------------------------------------------------

class Membership(NamedTuple):
    member: bool
    mode: str  # "trivial", "enumeration" or "search"


def coclone_membership(r: Relation, language, enumerate_up_to: int = 4) -> Membership:
    """Decide whether ``r`` is pp-definable from ``language``.

    Uses the finite Galois test with polymorphism arity m = |r|: ``r`` is
    pp-definable iff every m-ary polymorphism maps the matrix of ``r``
    (read columnwise) back into ``r``.
    """
    rels = relations_of(language)
    d = _domain_of(language, r.domain_size)
    if r in rels:
        return Membership(True, "trivial")
    m = len(r)
    cols = [_index(c, d) for c in r.columns]
    if m <= enumerate_up_to and d ** (d ** m) <= POLY_TABLE_CAP:
        for f in polymorphisms(rels, m, d):
            if tuple(f.table[i] for i in cols) not in r:
                return Membership(False, "enumeration")
        return Membership(True, "enumeration")
    if d ** m > 64 * INDICATOR_CAP:
        raise InfeasibleArity(f"indicator problem on {d}**{m} argument tuples is too large")
    problem = indicator_problem(rels, d, m)
    distinct = list(dict.fromkeys(cols))
    for values in problem.project(distinct):
        lookup = dict(zip(distinct, values))
        if tuple(lookup[i] for i in cols) not in r:
            return Membership(False, "search")
    return Membership(True, "search")


def coclone_member(r: Relation, language) -> bool:
    return coclone_membership(r, language).member


def _atom_scopes(r: Relation, s: Relation) -> list[tuple[int, ...]]:
    """Scopes over r's coordinates on which every row of r lands in s."""
    k, a = r.arity, s.arity
    if k ** a > SCOPE_CAP:
        raise InfeasibleArity(f"{k}**{a} candidate scopes exceeds cap {SCOPE_CAP}")
    prefixes = [s.project(list(range(j))).packed if j else None for j in range(a + 1)]
    cols = r.columns
    out = []

    def rec(scope, partial):
        j = len(scope)
        if j == a:
            out.append(tuple(scope))
            return
        for i in range(k):
            ext = [p * s.domain_size + v for p, v in zip(partial, cols[i])]
            if all(x in prefixes[j + 1] for x in ext):
                scope.append(i)
                rec(scope, ext)
                scope.pop()

    rec([], [0] * len(r))
    return out


def canonical_definition(r: Relation, language, with_equality: bool = True) -> PpFormula:
    """Conjunction of every atom over x1..xk that holds on all rows of ``r``."""
    if isinstance(language, Template):
        named = dict(language.relations)
    elif isinstance(language, dict):
        named = dict(language)
    else:
        named = {f"r{i + 1}": s for i, s in enumerate(relations_of(language))}
    xs = tuple(f"x{i + 1}" for i in range(r.arity))
    atoms: list = []
    if with_equality:
        cols = r.columns
        for i, j in itertools.combinations(range(r.arity), 2):
            if cols[i] == cols[j]:
                atoms.append(Equality(xs[i], xs[j]))
    for name, s in named.items():
        if s.domain_size != r.domain_size:
            raise DomainMismatch(f"relation {name!r} is on a different domain")
        for scope in _atom_scopes(r, s):
            atoms.append(RelationAtom(name, tuple(xs[i] for i in scope)))
    return PpFormula(xs, (), tuple(atoms))


def weak_coclone_member(r: Relation, language, with_equality: bool = True) -> bool:
    """Decide conjunct-atomic definability (with or without equality atoms)."""
    formula = canonical_definition(r, language, with_equality)
    named = dict(language.relations) if isinstance(language, Template) else (
        dict(language) if isinstance(language, dict)
        else {f"r{i + 1}": s for i, s in enumerate(relations_of(language))})
    index = {x: i for i, x in enumerate(formula.free_vars)}
    d = r.domain_size
    eq = Relation.equality(d).rows
    cons = []
    for a in formula.atoms:
        if isinstance(a, Equality):
            cons.append(((index[a.left], index[a.right]), eq))
        else:
            cons.append((tuple(index[x] for x in a.args), named[a.symbol].rows))
    # r satisfies every atom, so the defined relation contains r; count past |r|
    count = 0
    for _ in Problem(d, r.arity, cons).solutions():
        count += 1
        if count > len(r):
            return False
    return True
