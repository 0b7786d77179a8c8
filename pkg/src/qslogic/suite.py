"""Acceptance battery shared by the ``suite`` command and the test-suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .formula import And, Atom, Diamond, Meas, Neg, Or, Signature, Star, implies, neg3, parse
from .kripke import (
    Frame, FrameClass, Model, cat_model, check_acceptability, check_frame_class,
    euclidean_closure, eval_formula, missing_euclidean_edges, reflexive_closure,
)
from .proofs import check_proof, instantiate_axiom, semantic_check, theorem_library
from .qdeduction import check_nonadjunction
from .validity import (
    SatWitness, SearchBound, ValidUpToBound, check_validity, enumerate_models,
    is_satisfiable, models_of_size,
)


@dataclass
class Criterion:
    number: int
    title: str
    checks: list = field(default_factory=list)   # (description, passed)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok in self.checks)

    def add(self, description: str, ok: bool) -> None:
        self.checks.append((description, bool(ok)))


_a, _b = Atom("a"), Atom("b")
_s = Star(_a, _b)


def axiom_instances() -> dict:
    ab = {"alpha": _a, "beta": _b}
    return {
        "QS1": instantiate_axiom("QS1", ab),
        "QS2": instantiate_axiom("QS2", {"alpha": _a}),
        "QS3": instantiate_axiom("QS3", ab),
        "QS4": instantiate_axiom("QS4", ab),
    }


def axiom_regression() -> Criterion:
    c = Criterion(1, "axiom regression")
    for name, f in axiom_instances().items():
        classes = ("S4", "T", "K") if name == "QS4" else ("S4", "T")
        for cls in classes:
            v = check_validity(f, SearchBound(3, cls))
            c.add(f"{name} at (3, {cls}): {v}", isinstance(v, ValidUpToBound))
    return c


def worked_validities() -> Criterion:
    c = Criterion(2, "worked validities")
    formulas = {
        "star -> ~a & ~b": implies(_s, And(Neg(_a), Neg(_b))),
        "M a -> a": implies(Meas(_a), _a),
        "M(star) -> ~<>(a & b)": implies(Meas(_s), Neg(Diamond(And(_a, _b)))),
        "star & M(star) -> <>a \\/ <>b": implies(And(_s, Meas(_s)), Or(Diamond(_a), Diamond(_b))),
    }
    for label, f in formulas.items():
        for cls in ("S4", "K"):
            v = check_validity(f, SearchBound(3, cls))
            c.add(f"{label} at (3, {cls}): {v}", isinstance(v, ValidUpToBound))
    return c


def theorem_library_check() -> Criterion:
    c = Criterion(3, "theorem library")
    for name, script in theorem_library().items():
        c.add(f"{name} proof: {check_proof(script)}", check_proof(script).ok)
        v = semantic_check(script, 3)
        c.add(f"{name} semantic (3, {script.frame_class.value}): {v}", isinstance(v, ValidUpToBound))
    return c


def nonadjunction() -> Criterion:
    c = Criterion(4, "non-adjunction")
    report = check_nonadjunction(SearchBound(2, FrameClass.S5, orthogonality=True))
    for description, ok in report.results:
        c.add(description, ok)
    return c


def cat_checks() -> Criterion:
    c = Criterion(5, "cat model")
    m = cat_model()
    alive, dead = Atom("alive"), Atom("dead")
    c.add("acceptability holds", not check_acceptability(m))
    c.add("M(alive * dead) true at w0", eval_formula(m, "w0", Meas(Star(alive, dead))))
    bare = Frame(m.worlds, {("w0", "w1"), ("w0", "w2")})
    c.add("reflexive closure of the branching frame is a T frame",
          check_frame_class(reflexive_closure(bare), "T").ok)
    report = check_frame_class(m.frame, "T")
    c.add("cat frame is T", report.ok)
    c.add("cat frame is not euclidean", not report.euclidean)
    branches = {("w1", "w2"), ("w2", "w1")}
    c.add("missing euclidean edges include w1<->w2", branches <= missing_euclidean_edges(m.frame))
    closed = euclidean_closure(m.frame)
    c.add("euclidean closure adds w1<->w2", branches <= closed.rel - m.frame.rel)
    c.add("closed frame reported euclidean", check_frame_class(closed, "T").euclidean)
    return c


def negation_square() -> Criterion:
    c = Criterion(6, "negation square")
    a, ap = Atom("a"), Atom("a_perp")
    sig = Signature.from_pairs(["a", "a_perp"], [("a", "a_perp")])
    domain = [a, ap, Star(a, ap)]
    for cls in ("K", "T", "S4", "S5"):
        bound = SearchBound(2, cls, orthogonality=True)
        both_true = any(eval_formula(m, w, And(a, ap))
                        for m in enumerate_models(domain, sig, bound) for w in m.worlds)
        c.add(f"no world with a & a_perp ({cls})", not both_true)
    bound = SearchBound(2, "T", orthogonality=True)
    w = is_satisfiable([Star(a, ap), Neg(a), Neg(ap)], bound, sig)
    c.add("superposition world with a and a_perp both false exists", isinstance(w, SatWitness))
    for cls in ("T", "S4", "S5"):
        v = check_validity(Or(a, neg3(a)), SearchBound(2, cls), sig)
        c.add(f"a \\/ ~3a valid at (2, {cls})", isinstance(v, ValidUpToBound))
    w = is_satisfiable([a, neg3(a)], bound, sig)
    c.add("a & ~3a both true somewhere", isinstance(w, SatWitness))
    return c


def sasaki_hook() -> Criterion:
    c = Criterion(7, "Sasaki hook equals material implication")
    hook = parse("|a> -> |b>")
    mat = parse("~|a> \\/ |b>")
    frame = Frame(("w0",), {("w0", "w0")})
    for va, vb in product((False, True), repeat=2):
        val = {"w0": {f for f, v in ((_a, va), (_b, vb)) if v}}
        m = Model(frame, {_a, _b}, val)
        c.add(f"a={int(va)} b={int(vb)}", eval_formula(m, "w0", hook) == eval_formula(m, "w0", mat))
    return c


def enumerator_counts() -> Criterion:
    c = Criterion(8, "enumerator count")
    got = sum(1 for _ in models_of_size(1, [_a, _b, _s], None, SearchBound(1, "T")))
    brute = sum(1 for va, vb, vs in product((0, 1), repeat=3) if not (vs and (va or vb)))
    c.add(f"enumerator {got}, brute force {brute}, expected 5", got == brute == 5)
    return c


CRITERIA = [axiom_regression, worked_validities, theorem_library_check, nonadjunction,
            cat_checks, negation_square, sasaki_hook, enumerator_counts]


def run_suite() -> list[Criterion]:
    return [f() for f in CRITERIA]
