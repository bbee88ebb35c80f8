import itertools

import pytest

from boolgap import corpus, oracle
from boolgap.core import Equality, Instance, PpFormula, Relation, RelationAtom, Template
from boolgap.post import Coclone, weak_base
from boolgap.reductions import (BadDefinition, BadNoInstance, BadProductArity, EmptySubset, MissingBotTopConvention,
                                NotCore, NotEqualityFree, NotQuantifierFree, NotSurjective, WrongSourceLanguage,
                                chi2_reduction, chi_reduction, default_no_instance, diag_family, diag_family_size,
                                digits, flat, flatten_power, hom_image_reduction, kernel, preimage, rewrite_ca,
                                rewrite_with_equality, sharp_reduction, star_reduction, subalgebra_reduction)
from boolgap.solvers import decide_sep, with_constants

OR2 = Relation.from_strings(["01", "10", "11"])
P13 = corpus.language("plus1in3")


def sols(inst):
    return oracle.all_solutions(inst)


# -- algebraic helpers --------------------------------------------------------

def test_preimage_and_kernel():
    phi = (0, 1, 1)
    pre = preimage(OR2, phi, 3)
    assert len(pre) == 8
    assert (0, 0) not in pre and (0, 1) in pre and (2, 2) in pre
    assert kernel(phi).rows == ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2))


def test_digits_and_flat():
    assert digits(5, 2, 3) == (1, 0, 1)
    assert digits(3, 3, 2) == (1, 0)
    r = Relation([(1, 2)], 4, 2)
    assert flat(r, 2, 2).rows == ((0, 1, 1, 0),)


# -- the Cols3 family ---------------------------------------------------------

def test_star_on_one_clause():
    trace = star_reduction(corpus.instance("one-clause"))
    t = trace.target
    assert len(t.variables) == 8 and t.bot_top == ("bot", "top")
    assert t.constraints[0].scope == ("x", "y", "z", "not:x", "not:y", "not:z", "bot", "top")
    got = sols(t)
    assert len(got) == 3
    assert all(s["bot"] == 0 and s["top"] == 1 and s["not:x"] == 1 - s["x"] for s in got)
    assert trace.notes["negation"]["y"] == "not:y"


def test_sharp_on_one_clause():
    t = sharp_reduction(corpus.instance("one-clause")).target
    assert len(t.constraints) == 2
    # the negation-closed target also has the complemented solutions
    assert len(sols(t)) == 6


def test_star_rejects_other_languages():
    inst = Instance(("a", "b"), corpus.language("or2"), [(("a", "b"), "or2")])
    with pytest.raises(WrongSourceLanguage):
        star_reduction(inst)


def test_fresh_names_avoid_clashes():
    inst = Instance(("bot", "top", "not:bot"), P13, [(("bot", "top", "not:bot"), "plus1in3")])
    t = star_reduction(inst).target
    assert len(set(t.variables)) == 8


@pytest.mark.parametrize("tid", ["II1", "II0", "II"])
def test_chi_keeps_solutions_with_bot_top_fixed(tid):
    src = corpus.instance("star-one-clause")
    trace = chi_reduction(src, tid)
    assert trace.case_tag == tid
    assert list(trace.target.template.relations.values()) == [weak_base(tid)]
    fixed = [s for s in sols(trace.target) if s["bot"] == 0 and s["top"] == 1]
    assert fixed == sols(src)


def test_chi2_keeps_solutions():
    src = corpus.instance("sharp-one-clause")
    target = chi2_reduction(src).target
    assert list(target.template.relations.values()) == [weak_base(Coclone.IN)]
    assert {tuple(s.items()) for s in sols(src)} <= {tuple(s.items()) for s in sols(target)}


def test_chi_needs_the_convention():
    src = corpus.instance("star-one-clause")
    with pytest.raises(MissingBotTopConvention):
        chi_reduction(Instance(src.variables, src.template, src.constraints))
    with pytest.raises(ValueError):
        chi_reduction(src, "IN")


# -- rewriting ----------------------------------------------------------------

def test_rewrite_ca_preserves_solutions():
    four = Relation(((a, b, c, a) for a, b, c in P13["plus1in3"].rows))
    src_t = Template.of(four=four)
    defs = {"four": PpFormula(("x1", "x2", "x3", "x4"), (), (RelationAtom("plus1in3", ("x1", "x2", "x3")),
                                                            RelationAtom("plus1in3", ("x4", "x2", "x3"))))}
    inst = Instance(("a", "b", "c", "d", "e"), src_t, [(("a", "b", "c", "d"), "four"), (("e", "b", "a", "c"), "four")])
    trace = rewrite_ca(inst, defs, P13)
    assert len(trace.target.constraints) == 4
    assert sols(trace.target) == sols(inst)


def test_rewrite_ca_translates_families():
    src_t = Template.of(r=P13["plus1in3"])
    defs = {"r": PpFormula(("x1", "x2", "x3"), (), (RelationAtom("plus1in3", ("x2", "x3", "x1")),))}
    fam = [PpFormula(("y",), ("w1", "w2"), (RelationAtom("r", ("y", "w1", "w2")),), name="first")]
    inst = Instance(("a", "b", "c"), src_t, [(("a", "b", "c"), "r")])
    trace = rewrite_ca(inst, defs, P13, fam)
    assert trace.formula_map[0].atoms == (RelationAtom("plus1in3", ("w1", "w2", "y")),)
    assert trace.formula_map[0].name == "first"


def test_rewrite_ca_errors():
    src_t = Template.of(r=P13["plus1in3"])
    inst = Instance(("a", "b", "c"), src_t, [(("a", "b", "c"), "r")])
    with pytest.raises(NotEqualityFree):
        rewrite_ca(inst, {"r": PpFormula(("x1", "x2", "x3"), (), (RelationAtom("plus1in3", ("x1", "x2", "x3")),
                                                                   Equality("x1", "x1")))}, P13)
    with pytest.raises(NotQuantifierFree):
        rewrite_ca(inst, {"r": PpFormula(("x1", "x2", "x3"), ("w",), (RelationAtom("plus1in3", ("x1", "x2", "w")),
                                                                       RelationAtom("plus1in3", ("w", "x2", "x3"))))},
                   P13)
    with pytest.raises(BadDefinition):
        rewrite_ca(inst, {"r": PpFormula(("x1", "x2", "x3"), (), (RelationAtom("plus1in3", ("x1", "x1", "x3")),))},
                   P13)
    with pytest.raises(BadDefinition):
        rewrite_ca(inst, {}, P13)


EQ_DEFS = {"e": PpFormula(("x1", "x2"), (), (Equality("x1", "x2"),)),
           "r": PpFormula(("x1", "x2", "x3"), (), (RelationAtom("plus1in3", ("x1", "x2", "x3")),))}
EQ_SRC = Template.of(e=Relation.equality(2), r=P13["plus1in3"])


def test_rewrite_with_equality_case_1():
    inst = Instance(("a", "b", "c"), EQ_SRC, [(("a", "b"), "e"), (("a", "b", "c"), "r")])
    trace = rewrite_with_equality(inst, EQ_DEFS, P13)
    assert trace.case_tag == "1"
    assert not decide_sep(trace.target).answer
    assert trace.notes["equality"] == ("a", "b")


def test_rewrite_with_equality_case_2():
    inst = Instance(("a", "b", "c"), EQ_SRC, [(("a", "a"), "e"), (("a", "b", "c"), "r")])
    trace = rewrite_with_equality(inst, EQ_DEFS, P13)
    assert trace.case_tag == "2"
    assert len(trace.target.constraints) == 1
    assert sols(trace.target) == sols(inst)


def test_rewrite_with_equality_checks_the_no_instance():
    inst = Instance(("a", "b"), EQ_SRC, [(("a", "b"), "e")])
    with pytest.raises(BadNoInstance):
        rewrite_with_equality(inst, EQ_DEFS, P13, no_instance=Instance(("j1", "j2"), P13))


def test_default_no_instance():
    j = default_no_instance(P13)
    assert len(j.variables) >= 2 and not decide_sep(j).answer
    jc = default_no_instance(with_constants(P13))
    assert jc.variables == ("j1", "j2") and not oracle.csp(jc)
    with pytest.raises(BadNoInstance):
        default_no_instance(Template.of(full=Relation.full(2)))


# -- homomorphic images and subalgebras -------------------------------------------

def test_hom_image_preserves_csp():
    src = Instance(("a", "b", "c"), corpus.language("or2"), [(("a", "b"), "or2"), (("b", "c"), "or2")])
    trace = hom_image_reduction(src, (0, 1, 1))
    t = trace.target
    assert t.domain_size == 3 and "ker" in t.template
    images = {tuple((0, 1, 1)[s[v]] for v in t.variables) for s in sols(t)}
    assert images == {tuple(s[v] for v in src.variables) for s in sols(src)}


def test_hom_image_family_replaces_equality_with_kernel():
    fam = [PpFormula(("x", "y"), (), (RelationAtom("or2", ("x", "y")), Equality("x", "y")))]
    trace = hom_image_reduction(Instance(("a",), corpus.language("or2")), (1, 0, 0), fam)
    assert trace.formula_map[0].atoms[1] == RelationAtom("ker", ("x", "y"))
    with pytest.raises(NotSurjective):
        hom_image_reduction(Instance(("a",), corpus.language("or2")), (0, 0))


def test_subalgebra_reduction():
    src = corpus.instance("one-clause")
    trace = subalgebra_reduction(src, (0, 2), 3, family=[])
    t = trace.target
    assert len(t.constraints) == 1 + len(src.variables)
    assert [{v: {0: 0, 2: 1}[x] for v, x in s.items()} for s in sols(t)] == sols(src)
    assert trace.formula_map[-1].name == "in:sub"
    with pytest.raises(EmptySubset):
        subalgebra_reduction(src, (), 3)
    with pytest.raises(ValueError):
        subalgebra_reduction(src, (0, 0), 3)


# -- powers -------------------------------------------------------------------------

def test_flatten_merges_forced_coordinates():
    # over {0,1}^2, the relation keeps both coordinates equal
    diag = Relation([(0, 0), (3, 3)], 4, 2)
    inst = Instance(("u", "w"), Template.of(4, d=diag), [(("u", "w"), "d")])
    trace = flatten_power(inst, 2, 2)
    # all four coordinates are forced equal and collapse onto u#0
    assert trace.target.variables == ("u#0",)
    assert trace.variable_map == {"u": ("u#0", "u#0"), "w": ("u#0", "u#0")}
    assert len(sols(trace.target)) == 2


def test_flatten_without_merging():
    inst = Instance(("u", "w"), Template.of(4, any=Relation.full(2, 4)), [(("u", "w"), "any")])
    trace = flatten_power(inst, 2, 2)
    assert trace.target.variables == ("u#0", "u#1", "w#0", "w#1")
    assert len(sols(trace.target)) == 16
    with pytest.raises(BadProductArity):
        flatten_power(inst, 3, 2)


def test_flatten_solutions_project_back():
    r = Relation([(1, 2), (2, 1), (3, 0)], 4, 2)
    inst = Instance(("a", "b", "c"), Template.of(4, r=r), [(("a", "b"), "r"), (("b", "c"), "r")])
    trace = flatten_power(inst, 2, 2)
    back = []
    for s in sols(trace.target):
        back.append({v: int("".join(str(s[x]) for x in trace.variable_map[v]), 2) for v in inst.variables})
    assert sorted(map(sorted, (d.items() for d in back))) == sorted(map(sorted, (d.items() for d in sols(inst))))


# -- constants ------------------------------------------------------------------------

def test_diag_family_size_formula():
    for m in range(5):
        assert diag_family_size(m, 2) == 1 + 2 * m + m * (m - 1)
    assert diag_family_size(3, 0) == 1


def _pinned(pins, extra=()):
    t = with_constants(P13)
    cons = [((v,), f"const{a}") for v, a in pins] + list(extra)
    return Instance(("a", "b", "c"), t, cons)


def test_diag_family_enumerates_injections():
    inst = _pinned([], [(("a", "b", "c"), "plus1in3")])
    fam = diag_family(inst, P13)
    assert len(fam) == diag_family_size(3, 2)
    assert all(tr.case_tag == "2" for tr in fam)
    assert fam[0].notes["iota"] == {}
    assert fam[1].notes["iota"] == {0: "a"}


def test_diag_family_equivalence_on_small_cases():
    for pins in ([], [("a", 1)], [("a", 0), ("b", 1)], [("a", 0)]):
        inst = _pinned(pins, [(("a", "b", "c"), "plus1in3")])
        want = oracle.sep(inst)
        assert any(oracle.sep(tr.target) for tr in diag_family(inst, P13)) == want


def test_diag_family_case_1():
    fam = diag_family(_pinned([("a", 0), ("b", 0)]), P13)
    assert len(fam) == 1 and fam[0].case_tag == "1" and not decide_sep(fam[0].target).answer
    fam = diag_family(_pinned([("a", 0), ("a", 1)]), P13)
    assert fam[0].case_tag == "1"


def test_diag_family_needs_a_core():
    with pytest.raises(NotCore):
        diag_family(Instance(("a", "b"), corpus.language("or2")), corpus.language("or2"))
    other = Instance(("a", "b"), corpus.language("nae3"), [(("a", "b", "b"), "nae3")])
    with pytest.raises(WrongSourceLanguage):
        diag_family(other, P13)


def test_diag_diagram_pins_elements():
    fam = diag_family(_pinned([("a", 1)]), P13)
    # element 1 is represented by a itself, so no diag:1 variable appears
    for tr in fam:
        assert "diag:1" not in tr.target.variables
    assert len(fam) == diag_family_size(2, 1)
    assert len(list(itertools.chain.from_iterable(tr.target.constraints for tr in fam))) > 0
