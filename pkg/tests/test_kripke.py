import json
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qslogic.formula import (
    And, Atom, Diamond, Meas, Neg, Or, Signature, Star, box, implies, neg3, parse,
)
from qslogic.kripke import (
    AcceptabilityViolation, Frame, FrameClass, Model, ModelError, UnknownBasicFormula,
    cat_model, check_acceptability, check_frame_class, check_orthogonality, dump_model,
    euclidean_closure, eval_formula, holds_everywhere, is_admissible, load_model,
    missing_euclidean_edges, model_from_dict, model_to_dict,
)
from qslogic.validity import SearchBound, enumerate_models

from strategies import basic_formulas, formulas, models_for

a, b, p = Atom("a"), Atom("b"), Atom("p")
alive, dead = Atom("alive"), Atom("dead")
ab = Star(a, b)


def one_world(true, domain, loop=True):
    return Model(Frame(("w",), {("w", "w")} if loop else set()), domain, {"w": true})


class TestFrames:
    def test_cat_frame_is_t_but_not_euclidean(self):
        report = check_frame_class(cat_model().frame, "T")
        assert report.ok
        assert report.reflexive and report.transitive
        assert not report.symmetric
        assert not report.euclidean

    def test_empty_relation_lacks_reflexivity(self):
        report = check_frame_class(Frame(("w0", "w1"), set()), FrameClass.T)
        assert report.missing == ["reflexive"]

    def test_universal_relation_is_s5(self):
        ws = ("w0", "w1")
        report = check_frame_class(Frame(ws, {(x, y) for x in ws for y in ws}), "S5")
        assert report.ok and report.euclidean

    def test_s4_missing_transitivity(self):
        ws = ("w0", "w1", "w2")
        rel = {(w, w) for w in ws} | {("w0", "w1"), ("w1", "w2")}
        assert check_frame_class(Frame(ws, rel), "S4").missing == ["transitive"]

    def test_euclidean_closure(self):
        frame = cat_model().frame
        assert {("w1", "w2"), ("w2", "w1")} <= missing_euclidean_edges(frame)
        closed = euclidean_closure(frame)
        assert closed.is_euclidean()
        assert missing_euclidean_edges(closed) == set()

    def test_frame_validation(self):
        with pytest.raises(ValueError):
            Frame((), set())
        with pytest.raises(ValueError):
            Frame(("w0",), {("w0", "w9")})


class TestAcceptability:
    def test_star_with_component_violates(self):
        m = one_world({ab, a}, [a, b, ab])
        assert check_acceptability(m) == [AcceptabilityViolation("w", ab, a)]

    def test_star_without_components_ok(self):
        assert check_acceptability(one_world({ab}, [a, b, ab])) == []

    def test_no_star_ok(self):
        assert check_acceptability(one_world({a, b}, [a, b])) == []

    def test_nested_star_forbids_inner_subformulas(self):
        c = Atom("c")
        outer = Star(ab, c)
        m = one_world({outer, a}, [a, b, ab, c, outer])
        assert [v.offending for v in check_acceptability(m)] == [a]

    def test_orthogonality(self):
        sig = Signature.from_pairs(["a", "b"], [("a", "b")])
        m = Model(Frame(("w",), set()), [a, b], {"w": {a, b}}, sig)
        assert m.orthogonality
        assert len(check_orthogonality(m)) == 1
        assert not is_admissible(m)
        assert is_admissible(replace(m, orthogonality=False))


class TestEval:
    def test_cat_measurement_true_at_superposed_world(self):
        assert eval_formula(cat_model(), "w0", Meas(Star(alive, dead)))

    def test_cat_measurement_false_at_branches(self):
        m = cat_model()
        assert not eval_formula(m, "w1", Meas(Star(alive, dead)))

    def test_cat_axiom_one_instance(self):
        f = implies(Star(alive, dead), Neg(Or(alive, dead)))
        assert eval_formula(cat_model(), "w0", f)
        assert holds_everywhere(cat_model(), f)

    def test_cat_atom_not_everywhere(self):
        assert not holds_everywhere(cat_model(), alive)

    def test_measurement_needs_distinct_world(self):
        assert not eval_formula(one_world({p}, [p]), "w", Meas(p))

    def test_measurement_on_atom(self):
        frame = Frame(("w0", "w1"), {("w0", "w1")})
        m = Model(frame, [p], {"w0": {p}, "w1": {p}})
        assert eval_formula(m, "w0", Meas(p))
        assert not eval_formula(m, "w1", Meas(p))
        m = Model(frame, [p], {"w0": set(), "w1": {p}})
        assert not eval_formula(m, "w0", Meas(p))

    def test_measurement_does_not_require_superposition_at_w(self):
        frame = Frame(("w0", "w1"), {("w0", "w1")})
        m = Model(frame, [a, b, ab], {"w0": set(), "w1": {a}})
        assert eval_formula(m, "w0", Meas(ab))

    def test_measurement_needs_every_branch_to_separate(self):
        ws = ("w0", "w1", "w2")
        frame = Frame(ws, {("w0", "w1"), ("w0", "w2")})
        m = Model(frame, [a, b, ab], {"w0": {ab}, "w1": {a}, "w2": {a, b}})
        assert not eval_formula(m, "w0", Meas(ab))

    def test_reflexive_unsuperposed_world_must_separate(self):
        # w0 sees itself and w1; a & b hold at w0 without the superposition.
        frame = Frame(("w0", "w1"), {("w0", "w0"), ("w0", "w1")})
        m = Model(frame, [a, b, ab], {"w0": {a, b}, "w1": {a}})
        assert not eval_formula(m, "w0", Meas(ab))
        lit = replace(m, literal_meas=True)
        assert eval_formula(lit, "w0", Meas(ab))
        assert not eval_formula(lit, "w0", implies(Meas(ab), Neg(Diamond(And(a, b)))))

    def test_tautology_single_world(self):
        assert holds_everywhere(one_world({p}, [p]), Neg(And(p, Neg(p))))

    def test_unknown_basic_formula(self):
        with pytest.raises(UnknownBasicFormula):
            eval_formula(one_world({p}, [p]), "w", Atom("q"))

    def test_extend_domain(self):
        m = cat_model().extend_domain([Atom("decay")])
        assert not eval_formula(m, "w0", Atom("decay"))


class TestModelValidation:
    def test_domain_must_be_closed(self):
        with pytest.raises(ModelError):
            Model(Frame(("w",), set()), [ab], {"w": set()})

    def test_domain_must_be_basic(self):
        with pytest.raises(ModelError):
            Model(Frame(("w",), set()), [p, Neg(p)], {"w": set()})

    def test_true_formulas_in_domain(self):
        with pytest.raises(ModelError):
            Model(Frame(("w",), set()), [p], {"w": {Atom("q")}})

    def test_unknown_world(self):
        with pytest.raises(ModelError):
            Model(Frame(("w",), set()), [p], {"v": {p}})


# ---------------------------------------------------------------------------
# Properties over random admissible models
# ---------------------------------------------------------------------------

@settings(max_examples=200)
@given(st.data(), basic_formulas(max_atoms=1))
def test_measurement_is_factive_on_atoms(data, atom):
    m = data.draw(models_for([atom]))
    for w in m.worlds:
        assert not eval_formula(m, w, Meas(atom)) or eval_formula(m, w, atom)


@settings(max_examples=200)
@given(st.data(), basic_formulas(max_atoms=3).filter(lambda f: isinstance(f, Star)))
def test_superposition_excludes_components(data, star):
    m = data.draw(models_for([star]))
    for w in m.worlds:
        if eval_formula(m, w, star):
            assert not eval_formula(m, w, star.left)
            assert not eval_formula(m, w, star.right)


@settings(max_examples=200)
@given(st.data(), formulas(pool=["p", "q", "r"], max_atoms=2, max_leaves=4))
def test_box_diamond_duality(data, f):
    m = data.draw(models_for([f]))
    for w in m.worlds:
        assert eval_formula(m, w, box(f)) == (not eval_formula(m, w, Diamond(Neg(f))))


def test_box_diamond_duality_exhaustive():
    f = Or(p, Diamond(Atom("q")))
    bound = SearchBound(2, "K")
    for m in enumerate_models([p, Atom("q")], None, bound):
        for w in m.worlds:
            assert eval_formula(m, w, box(f)) == (not eval_formula(m, w, Diamond(Neg(f))))


class TestNegationSquare:
    sig = Signature.from_pairs(["a", "a_perp"], [("a", "a_perp")])
    ap = Atom("a_perp")

    def models(self, cls):
        domain = [a, self.ap, Star(a, self.ap)]
        return enumerate_models(domain, self.sig, SearchBound(2, cls, orthogonality=True))

    def test_contraries_never_both_true(self):
        for m in self.models("K"):
            for w in m.worlds:
                assert not (eval_formula(m, w, a) and eval_formula(m, w, self.ap))

    def test_contraries_both_false_in_superposition(self):
        assert any(eval_formula(m, w, And(Star(a, self.ap), And(Neg(a), Neg(self.ap))))
                   for m in self.models("T") for w in m.worlds)

    @pytest.mark.parametrize("cls", ["T", "S4", "S5"])
    def test_subcontraries_never_both_false_on_reflexive_frames(self, cls):
        for m in self.models(cls):
            for w in m.worlds:
                assert eval_formula(m, w, Or(a, neg3(a)))

    def test_subcontraries_both_true_somewhere(self):
        assert any(eval_formula(m, w, And(a, neg3(a)))
                   for m in self.models("S5") for w in m.worlds)

    def test_subcontrariety_fails_without_reflexivity(self):
        assert any(not eval_formula(m, w, Or(a, neg3(a)))
                   for m in self.models("K") for w in m.worlds)


class TestModelFile:
    def test_cat_round_trip(self):
        m = cat_model()
        again = model_from_dict(json.loads(dump_model(m)))
        assert again == m

    def test_absent_formulas_false(self):
        data = {"worlds": ["w0", "w1"], "rel": [["w0", "w1"]], "frame_class": "K",
                "atoms": ["p", "q"], "perp": [], "valuation": {"w1": ["|p>"]},
                "orthogonality": False}
        m = model_from_dict(data)
        assert not eval_formula(m, "w0", p)
        assert eval_formula(m, "w0", Diamond(p))
        assert not eval_formula(m, "w1", Atom("q"))

    def test_star_listed_extends_domain(self):
        data = {"worlds": ["w0"], "rel": [], "atoms": [], "valuation": {"w0": ["|a> * |b>"]}}
        m = model_from_dict(data)
        assert {a, b, ab} == set(m.domain)

    def test_rejects_molecular_valuation(self):
        with pytest.raises(ModelError):
            model_from_dict({"worlds": ["w0"], "valuation": {"w0": ["~|p>"]}})

    def test_dump_shape(self):
        d = model_to_dict(cat_model())
        assert d["frame_class"] == "T"
        assert d["perp"] == [["alive", "dead"]]
        assert d["valuation"]["w0"] == ["(|alive> * |dead>)"]

    def test_load_file(self, tmp_path):
        path = tmp_path / "cat.json"
        path.write_text(dump_model(cat_model()))
        assert load_model(path) == cat_model()

    def test_parse_valuation_with_neg2(self):
        data = {"worlds": ["w0"], "atoms": ["up", "down"], "perp": [["up", "down"]],
                "valuation": {"w0": ["~2 |down>"]}}
        m = model_from_dict(data)
        assert eval_formula(m, "w0", Atom("up"))
        assert eval_formula(m, "w0", parse("~|down>"))
