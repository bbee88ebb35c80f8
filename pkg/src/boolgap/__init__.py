"""Separation and robust satisfiability for constraint languages: co-clone
classification, exact and fast deciders, and gap-preserving reductions."""

from .core import (Constraint, Equality, FConstraint, Instance, PpFormula, Relation, RelationAtom, Template,
                   derive_F_constraints, projections_family, relation_of_pp)
from .post import Coclone, classify, verdict, weak_base
from .solvers import decide_ntriv, decide_robust, decide_sep, solve_csp, solve_fast

__all__ = [
    "Coclone", "Constraint", "Equality", "FConstraint", "Instance", "PpFormula", "Relation", "RelationAtom",
    "Template", "classify", "decide_ntriv", "decide_robust", "decide_sep", "derive_F_constraints",
    "projections_family", "relation_of_pp", "solve_csp", "solve_fast", "verdict", "weak_base",
]

__version__ = "0.1.0"
