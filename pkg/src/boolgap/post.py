"""Classification of Boolean constraint languages over the NP-hard upset of
Post's co-clone lattice, complexity verdicts, weak bases and redundancy."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .core import BoolgapError, Relation, Template, relations_of
from .galois import AND, C0, C1, MAJ, MIN, NOT, OR, TotalOperation, c_closure, polymorphisms, preserves


class NonBooleanDomain(BoolgapError, ValueError):
    pass


class UnknownCoclone(BoolgapError, KeyError):
    pass


class Coclone(str, enum.Enum):
    II2 = "II2"
    IN2 = "IN2"
    II0 = "II0"
    II1 = "II1"
    II = "II"
    IN = "IN"
    TRACTABLE = "TRACTABLE"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text) -> "Coclone":
        if isinstance(text, Coclone):
            return text
        try:
            return cls(str(text).strip().upper())
        except ValueError:
            raise UnknownCoclone(text) from None


HARD = (Coclone.II2, Coclone.IN2, Coclone.II0, Coclone.II1, Coclone.II, Coclone.IN)

# Generators of the clone whose invariants form each co-clone.
WEAK_BASE_GENERATORS: dict[Coclone, tuple[TotalOperation, ...]] = {
    Coclone.II2: (),
    Coclone.IN2: (NOT,),
    Coclone.II0: (C0,),
    Coclone.II1: (C1,),
    Coclone.II: (C0, C1),
    Coclone.IN: (NOT, C0),
}

_BY_FLAGS = {
    (False, False, False): Coclone.II2,
    (True, False, False): Coclone.IN2,
    (False, True, False): Coclone.II0,
    (False, False, True): Coclone.II1,
    (False, True, True): Coclone.II,
    (True, True, True): Coclone.IN,
}

TRACTABLE_WITNESSES = (AND, OR, MAJ, MIN)


@dataclass(frozen=True)
class ProbeReport:
    has_not: bool
    has_c0: bool
    has_c1: bool
    has_and: bool
    has_or: bool
    has_maj: bool
    has_min: bool

    @property
    def consistent(self) -> bool:
        # negation conjugates the two constants
        return not self.has_not or self.has_c0 == self.has_c1

    def as_dict(self) -> dict[str, bool]:
        return {"not": self.has_not, "c0": self.has_c0, "c1": self.has_c1, "and": self.has_and,
                "or": self.has_or, "maj": self.has_maj, "min": self.has_min}


@dataclass(frozen=True)
class Classification:
    coclone: Coclone
    witness: str | None = None
    probes: ProbeReport | None = None

    def __str__(self) -> str:
        if self.coclone is Coclone.TRACTABLE:
            return f"TRACTABLE({self.witness})"
        return str(self.coclone)


P, NPC = "P", "NP-complete"
GAP_CSP = "GAP(N_CSP, Y_SEP∩(2,F))"
GAP_NTRIV = "GAP(N_NTriv, Y_SEP∩(2,F))"
PROBLEMS = ("CSP", "NTriv", "SEP", "(2,F)-Robust")


@dataclass(frozen=True)
class Verdict:
    classification: Classification
    csp: str
    ntriv: str
    sep: str
    robust: str
    gap: str | None

    def entries(self) -> dict[str, str]:
        return dict(zip(PROBLEMS, (self.csp, self.ntriv, self.sep, self.robust)))

    def summary(self) -> str:
        groups: dict[str, list[str]] = {}
        for name, value in self.entries().items():
            groups.setdefault(value, []).append(name)
        parts = [str(self.classification)]
        for value in (P, NPC):
            if value in groups:
                parts.append(f"{', '.join(groups[value])}: {value}")
        parts.append(self.gap or "no gap")
        return "; ".join(parts)


def _boolean_relations(language) -> list[Relation]:
    rels = relations_of(language)
    if isinstance(language, Template) and language.domain_size != 2:
        raise NonBooleanDomain("classification needs a Boolean template")
    for r in rels:
        if r.domain_size != 2:
            raise NonBooleanDomain("classification needs Boolean relations")
    return rels


def probe(language) -> ProbeReport:
    rels = _boolean_relations(language)

    def ok(op):
        return all(preserves(op, r) for r in rels)

    return ProbeReport(ok(NOT), ok(C0), ok(C1), ok(AND), ok(OR), ok(MAJ), ok(MIN))


def classify(language) -> Classification:
    report = probe(language)
    flags = report.as_dict()
    for op in TRACTABLE_WITNESSES:
        if flags[op.name]:
            return Classification(Coclone.TRACTABLE, op.name, report)
    key = (report.has_not, report.has_c0, report.has_c1)
    if key not in _BY_FLAGS:
        # unreachable for genuine probe reports: see ProbeReport.consistent
        raise AssertionError(f"inconsistent probe report {report}")
    return Classification(_BY_FLAGS[key], None, report)


def verdict(c: Classification) -> Verdict:
    if c.coclone is Coclone.TRACTABLE:
        return Verdict(c, P, P, P, P, None)
    if c.coclone in (Coclone.II2, Coclone.IN2):
        return Verdict(c, NPC, NPC, NPC, NPC, GAP_CSP)
    # a constant map solves every instance, so only CSP itself is easy
    return Verdict(c, P, NPC, NPC, NPC, GAP_NTRIV)


def cols3() -> Relation:
    """The 8-ary relation whose columns run through all of {0,1}^3."""
    return Relation.from_strings(["10001101", "01010101", "00111001"])


def weak_base(coclone_id) -> Relation:
    cid = Coclone.parse(coclone_id)
    if cid not in WEAK_BASE_GENERATORS:
        raise UnknownCoclone(coclone_id)
    return c_closure(cols3(), WEAK_BASE_GENERATORS[cid])


@dataclass(frozen=True)
class RedundancyReport:
    equal_column_pairs: tuple[tuple[int, int], ...]
    free_coordinates: tuple[int, ...]

    @property
    def eq_redundant(self) -> bool:
        return bool(self.equal_column_pairs)

    @property
    def top_redundant(self) -> bool:
        return bool(self.free_coordinates)

    @property
    def irredundant(self) -> bool:
        return not (self.eq_redundant or self.top_redundant)


def redundancy_report(r: Relation) -> RedundancyReport:
    """Equal column pairs (1-based) and free coordinates (1-based).

    A coordinate is free when ``r`` is, up to moving that column last, a
    product ``s x A``."""
    cols = r.columns
    pairs = tuple((i + 1, j + 1) for i, j in itertools.combinations(range(r.arity), 2) if cols[i] == cols[j])
    free = []
    for i in range(r.arity):
        ok = True
        for t in r.rows:
            for a in range(r.domain_size):
                if t[:i] + (a,) + t[i + 1:] not in r:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            free.append(i + 1)
    return RedundancyReport(pairs, tuple(free))


def is_core(template) -> bool:
    """True iff every unary polymorphism is a bijection of the domain."""
    d = template.domain_size if isinstance(template, Template) else relations_of(template)[0].domain_size
    return all(len(set(f.table)) == d for f in polymorphisms(template, 1, d))
