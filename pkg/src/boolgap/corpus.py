"""Built-in relations, languages and worked instances."""

from __future__ import annotations

import itertools
from typing import Callable

from .core import Instance, Relation, Template
from .post import cols3, weak_base


def plus1in3() -> Relation:
    return Relation.from_strings(["100", "010", "001"])


def nae3() -> Relation:
    return Relation(t for t in itertools.product((0, 1), repeat=3) if len(set(t)) == 2)


def or2() -> Relation:
    return Relation.from_strings(["01", "10", "11"])


def implication() -> Relation:
    return Relation.from_strings(["00", "01", "11"])


def xor3() -> Relation:
    """Ternary odd parity: x + y + z = 1 (mod 2)."""
    return Relation(t for t in itertools.product((0, 1), repeat=3) if sum(t) % 2 == 1)


RELATIONS: dict[str, Callable[[], Relation]] = {
    "cols3": cols3,
    "i0cols3": lambda: weak_base("II0"),
    "i1cols3": lambda: weak_base("II1"),
    "icols3": lambda: weak_base("II"),
    "n2cols3": lambda: weak_base("IN2"),
    "ncols3": lambda: weak_base("IN"),
    "plus1in3": plus1in3,
    "nae3": nae3,
    "or2": or2,
    "implication": implication,
    "xor": xor3,
}


def language(name: str) -> Template:
    """The single-relation template named ``name``; the symbol is the name."""
    if name not in RELATIONS:
        raise KeyError(f"unknown corpus language {name!r}; known: {', '.join(RELATIONS)}")
    return Template.of(**{name: RELATIONS[name]()})


def _one_clause() -> Instance:
    return Instance(("x", "y", "z"), language("plus1in3"), [(("x", "y", "z"), "plus1in3")])


def _k4() -> Instance:
    vs = ("a", "b", "c", "d")
    return Instance(vs, language("plus1in3"), [(t, "plus1in3") for t in itertools.combinations(vs, 3)])


def _star_one_clause() -> Instance:
    from .reductions import star_reduction
    return star_reduction(_one_clause()).target


def _sharp_one_clause() -> Instance:
    from .reductions import sharp_reduction
    return sharp_reduction(_one_clause()).target


INSTANCES: dict[str, Callable[[], Instance]] = {
    "one-clause": _one_clause,
    "k4": _k4,
    "star-one-clause": _star_one_clause,
    "sharp-one-clause": _sharp_one_clause,
}


def instance(name: str) -> Instance:
    if name not in INSTANCES:
        raise KeyError(f"unknown corpus instance {name!r}; known: {', '.join(INSTANCES)}")
    return INSTANCES[name]()
