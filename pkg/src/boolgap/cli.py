"""Command-line interface: ``boolgap <command> ...``.

Exit codes: 0 success (or YES), 1 decision NO or failed property, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import corpus, formats, verify
from .core import BoolgapError, Instance, projections_family
from .goldens import EXPECTED
from .post import Coclone, classify, verdict, weak_base
from .reductions import (ReductionTrace, chi2_reduction, chi_reduction, diag_family, flatten_power,
                         hom_image_reduction, rewrite_ca, rewrite_with_equality, sharp_reduction,
                         star_reduction, subalgebra_reduction)
from .solvers import (decide_equiv, decide_impl, decide_ntriv, decide_robust, decide_sep,
                      robust_via_constants, sep_via_constants, solve_csp, solve_fast)

OK, NO, USAGE = 0, 1, 2


class UsageError(BoolgapError):
    pass


def _emit(args, human: str, fields: Sequence[tuple[str, object]] = ()):
    if args.format == "structured":
        for key, value in fields:
            print(f"{key}: {value}")
    else:
        print(human)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _assignment(a) -> str:
    return " ".join(f"{v}={x}" for v, x in a.items()) if a else "-"


# -- commands ------------------------------------------------------------------------

def cmd_classify(args) -> int:
    template = formats.load_language(args.language)
    c = classify(template)
    v = verdict(c)
    fields = [("coclone", c.coclone), ("witness", c.witness or "-")]
    fields += [(f"probe.{k}", int(x)) for k, x in c.probes.as_dict().items()]
    fields += list(v.entries().items()) + [("gap", v.gap or "-")]
    _emit(args, v.summary(), fields)
    return OK


def _family(args, instance: Instance):
    if args.family in (None, "projections"):
        return projections_family(instance.template)
    return formats.load_family(args.family, instance.template)


def cmd_solve(args) -> int:
    instance = formats.load_instance(args.instance)
    problem = args.problem
    if problem in ("equiv", "impl"):
        if args.other is None:
            raise UsageError(f"{problem} needs a second instance")
        other = formats.load_instance(args.other)
        answer = (decide_equiv if problem == "equiv" else decide_impl)(instance, other)
        _emit(args, "YES" if answer else "NO", [("problem", problem), ("answer", "YES" if answer else "NO")])
        return OK if answer else NO
    if args.other is not None:
        raise UsageError(f"{problem} takes a single instance")
    fields: list[tuple[str, object]] = [("problem", problem), ("engine", args.engine)]
    if problem == "csp":
        if args.engine == "fast":
            sol = solve_fast(instance, classify(instance.template))
        elif args.engine == "brute":
            sol = solve_csp(instance)
        else:
            raise UsageError("csp supports --engine brute or fast")
        answer = sol is not None
        fields.append(("solution", _assignment(sol)))
        human = f"YES {_assignment(sol)}" if answer else "NO"
    elif problem == "ntriv":
        if args.engine != "brute":
            raise UsageError("ntriv supports --engine brute only")
        report = decide_ntriv(instance)
        answer = report.answer
        fields.append(("witness", _assignment(report.witness)))
        human = f"YES {_assignment(report.witness)}" if answer else "NO"
    elif problem == "sep":
        if args.engine == "constants":
            run = sep_via_constants(instance)
            answer, failing = run.answer, run.failing
            fields.append(("queries", run.queries))
        elif args.engine == "brute":
            report = decide_sep(instance)
            answer, failing = report.answer, report.failing_pair
            fields.append(("queries", report.queries))
        else:
            raise UsageError("sep supports --engine brute or constants")
        fields.append(("failing_pair", " ".join(failing) if failing else "-"))
        human = "YES" if answer else f"NO (cannot separate {failing[0]} and {failing[1]})"
    else:
        family = _family(args, instance)
        if args.engine == "constants":
            run = robust_via_constants(instance, args.k, family)
            answer, bad = run.answer, run.failing
            fields.append(("queries", run.queries))
        elif args.engine == "brute":
            report = decide_robust(instance, args.k, family)
            answer, bad = report.answer, report.counterexample
            fields.append(("checked", report.checked))
        else:
            raise UsageError("robust supports --engine brute or constants")
        fields.append(("k", args.k))
        fields.append(("counterexample", _assignment(bad[1]) if bad else "-"))
        human = "YES" if answer else f"NO (assignment {_assignment(bad[1]) if bad[1] else 'on no variables'} does not extend)"
    fields.insert(1, ("answer", "YES" if answer else "NO"))
    _emit(args, human, fields)
    return OK if answer else NO


def _certificate(trace: ReductionTrace) -> list[str]:
    out = [f"# reduction: {trace.name}"]
    if trace.case_tag is not None:
        out.append(f"# case: {trace.case_tag}")
    for v, image in trace.variable_map.items():
        shown = " ".join(image) if isinstance(image, tuple) else image
        out.append(f"# map {v} -> {shown}")
    if trace.formula_map is not None:
        for phi in trace.formula_map:
            out.append("# " + formats.format_formula(phi))
    return out


def _reduce(args, instance: Instance) -> list[ReductionTrace]:
    name = args.reduction
    if name == "star":
        return [star_reduction(instance)]
    if name == "sharp":
        return [sharp_reduction(instance)]
    if name == "chi":
        return [chi_reduction(instance, args.target or "II1")]
    if name == "chi2":
        return [chi2_reduction(instance)]
    if name == "hom-image":
        if not args.phi:
            raise UsageError("hom-image needs --phi")
        return [hom_image_reduction(instance, _ints(args.phi), _family(args, instance))]
    if name == "subalgebra":
        if not args.embedding or args.domain is None:
            raise UsageError("subalgebra needs --embedding and --domain")
        return [subalgebra_reduction(instance, _ints(args.embedding), args.domain, _family(args, instance))]
    if name == "flatten":
        if args.ell is None:
            raise UsageError("flatten needs --ell")
        base = round(instance.domain_size ** (1 / args.ell))
        return [flatten_power(instance, args.ell, base, _family(args, instance))]
    if name in ("rewrite", "rewrite-eq"):
        if not args.defs or not args.target_language:
            raise UsageError(f"{name} needs --defs and --target-language")
        target = formats.load_language(args.target_language)
        defs = {phi.name: phi for phi in formats.load_family(args.defs, target)}
        fam = _family(args, instance)
        if name == "rewrite":
            return [rewrite_ca(instance, defs, target, fam)]
        return [rewrite_with_equality(instance, defs, target, fam)]
    if name == "diag":
        if not args.core:
            raise UsageError("diag needs --core")
        return diag_family(instance, formats.load_language(args.core))
    raise UsageError(f"unknown reduction {name!r}")


def cmd_reduce(args) -> int:
    instance = formats.load_instance(args.instance)
    traces = _reduce(args, instance)
    chunks = []
    for i, trace in enumerate(traces):
        head = [f"# member {i + 1} of {len(traces)}"] if len(traces) > 1 else []
        chunks.append("\n".join(head + [formats.dump_instance(trace.target).rstrip("\n")] + _certificate(trace)))
    text = "\n\n".join(chunks) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(traces)} instance(s) to {args.output}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_verify(args) -> int:
    if args.property not in verify.PROPERTY_NAMES:
        raise UsageError(f"unknown property {args.property!r}; known: {', '.join(verify.PROPERTY_NAMES)}")
    report = verify.run_property(args.property, trials=args.trials, seed=args.seed, max_vars=args.max_vars)
    if args.format == "structured":
        print("\n".join(line for line in report.lines() if not line.startswith("elapsed")))
    else:
        print("\n".join(report.lines()))
    return OK if report.passed else NO


def cmd_weak_base(args) -> int:
    cid = Coclone.parse(args.coclone)
    if cid is Coclone.TRACTABLE:
        raise UsageError("TRACTABLE has no weak base")
    r = weak_base(cid)
    rows = r.to_strings()
    if set(rows) == set(EXPECTED[cid.value]):
        rows = list(EXPECTED[cid.value])
    if args.format == "structured":
        print(f"coclone: {cid}")
        print(f"arity: {r.arity}")
        print(f"rows: {len(rows)}")
        for row in rows:
            print(f"row: {row}")
    else:
        print("\n".join(rows))
    return OK


def cmd_corpus(args) -> int:
    if args.name is None:
        print("languages: " + " ".join(corpus.RELATIONS))
        print("instances: " + " ".join(corpus.INSTANCES))
        return OK
    if args.name in corpus.RELATIONS:
        sys.stdout.write(formats.dump_language(corpus.language(args.name)))
    elif args.name in corpus.INSTANCES:
        sys.stdout.write(formats.dump_instance(corpus.instance(args.name)))
    else:
        raise UsageError(f"unknown corpus entry {args.name!r}")
    return OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boolgap", description="Separation, robust satisfiability and gap reductions "
                                                          "for Boolean constraint languages.")
    p.add_argument("--format", choices=("text", "structured"), default="text", help="output style")
    # also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="co-clone and complexity verdict of a language")
    c.add_argument("language", help="corpus:NAME or a language file")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", parents=[common], help="decide CSP, NTriv, SEP, robust satisfiability, EQUIV or IMPL")
    s.add_argument("problem", choices=("csp", "ntriv", "sep", "robust", "equiv", "impl"))
    s.add_argument("instance", help="corpus:NAME or an instance file")
    s.add_argument("other", nargs="?", help="second instance (equiv, impl)")
    s.add_argument("--k", type=int, default=2, help="subset size for robust (default 2)")
    s.add_argument("--family", help="'projections' (default) or a formula file")
    s.add_argument("--engine", choices=("brute", "fast", "constants"), default="brute")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", parents=[common], help="apply a reduction and print the target with its certificate")
    r.add_argument("reduction", choices=("star", "sharp", "chi", "chi2", "hom-image", "subalgebra", "flatten",
                                         "rewrite", "rewrite-eq", "diag"))
    r.add_argument("instance")
    r.add_argument("-o", "--output", help="write here instead of stdout")
    r.add_argument("--target", help="chi target: II1, II0 or II")
    r.add_argument("--phi", help="hom-image surjection as a,b,c (image of 0,1,2,...)")
    r.add_argument("--embedding", help="subalgebra embedding as a,b,...")
    r.add_argument("--domain", type=int, help="subalgebra target domain size")
    r.add_argument("--ell", type=int, help="flatten power")
    r.add_argument("--defs", help="formula file, one definition per source symbol (rewrite)")
    r.add_argument("--target-language", help="language the definitions are written in (rewrite)")
    r.add_argument("--core", help="core template for diag")
    r.add_argument("--family", help="'projections' (default) or a formula file")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", parents=[common], help="run a property check against the brute-force oracle")
    v.add_argument("property", help="one of: " + ", ".join(verify.PROPERTY_NAMES))
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    default_vars = os.environ.get("BOOLGAP_MAX_VARS")
    v.add_argument("--max-vars", type=int, default=int(default_vars) if default_vars else None)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("weak-base", parents=[common], help="print the weak base of a co-clone")
    w.add_argument("coclone", help="II2, IN2, II0, II1, II or IN")
    w.set_defaults(func=cmd_weak_base)

    k = sub.add_parser("corpus", parents=[common], help="list or print built-in languages and instances")
    k.add_argument("name", nargs="?")
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoolgapError as exc:
        # bad input, unknown names, a fast engine asked for an intractable language, ...
        print(f"boolgap: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
