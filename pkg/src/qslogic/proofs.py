"""
Hilbert-style proof checking for S4 plus the four superposition axioms.

A script is a list of numbered lines, each a formula with a justification.
The propositional base is a single rule: any instance of a classical
tautology may be written down, where modal, measurement and basic
subformulas count as opaque letters.  Modal reasoning uses the axiom
schemata K, T, 4 and 5 (gated by the script's frame class), necessitation,
and the duality rewrites between ``~<>`` and ``[]~``.

Superposition axioms, with ``alpha`` and ``beta`` ranging over basic
formulas:

    QS1   alpha * beta -> ~(alpha \\/ beta)
    QS2   M alpha -> alpha                       (alpha not a superposition)
    QS3   M(alpha * beta) & (alpha * beta) -> (<>alpha \\/ <>beta)
    QS4   M(alpha * beta) -> ~<>(alpha & beta)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence, Union

from .formula import (
    And, Atom, Diamond, Formula, Meas, Neg, Or, Signature, Star, box, implies,
    is_basic, parse, render, substitute, well_formed,
)
from .kripke import FrameClass
from .validity import SearchBound, check_validity, entails

__all__ = [
    "AxiomSchema", "AXIOMS", "IllFormedInstance", "ScriptError",
    "Hypothesis", "AxiomInstance", "PCTautology", "ModusPonens", "Necessitation",
    "DualityRewrite", "Definition", "Justification", "ProofLine", "ProofScript", "ProofReport",
    "instantiate_axiom", "is_pc_tautology", "duality_rewrites", "check_proof",
    "theorem_library", "semantic_check", "script_to_dict", "script_from_dict", "load_script",
]


class IllFormedInstance(ValueError):
    pass


class ScriptError(ValueError):
    """Malformed proof script file."""


# ---------------------------------------------------------------------------
# Axiom schemata
# ---------------------------------------------------------------------------

_A, _B = Atom("A"), Atom("B")
_al, _be = Atom("alpha"), Atom("beta")
_S = Star(_al, _be)

_ALL = frozenset(FrameClass)
_REFLEXIVE = frozenset({FrameClass.T, FrameClass.S4, FrameClass.S5})


@dataclass(frozen=True)
class AxiomSchema:
    id: str
    template: Formula | None
    variables: tuple[str, ...] = ()
    basic_vars: tuple[str, ...] = ()
    atomic_vars: tuple[str, ...] = ()
    classes: frozenset = _ALL

    def available_in(self, cls: FrameClass) -> bool:
        return FrameClass(cls) in self.classes


AXIOMS: dict[str, AxiomSchema] = {s.id: s for s in [
    AxiomSchema("PC-taut", None),
    AxiomSchema("K", implies(box(implies(_A, _B)), implies(box(_A), box(_B))), ("A", "B")),
    AxiomSchema("T", implies(box(_A), _A), ("A",), classes=_REFLEXIVE),
    AxiomSchema("4", implies(box(_A), box(box(_A))), ("A",),
                classes=frozenset({FrameClass.S4, FrameClass.S5})),
    AxiomSchema("5", implies(Diamond(_A), box(Diamond(_A))), ("A",),
                classes=frozenset({FrameClass.S5})),
    AxiomSchema("QS1", implies(_S, Neg(Or(_al, _be))),
                ("alpha", "beta"), ("alpha", "beta")),
    AxiomSchema("QS2", implies(Meas(_al), _al), ("alpha",), ("alpha",), ("alpha",)),
    AxiomSchema("QS3", implies(And(Meas(_S), _S), Or(Diamond(_al), Diamond(_be))),
                ("alpha", "beta"), ("alpha", "beta")),
    AxiomSchema("QS4", implies(Meas(_S), Neg(Diamond(And(_al, _be)))),
                ("alpha", "beta"), ("alpha", "beta")),
]}


def instantiate_axiom(schema: AxiomSchema | str, subst: Mapping[str, Formula]) -> Formula:
    if isinstance(schema, str):
        schema = AXIOMS[schema]
    if schema.template is None:
        raise IllFormedInstance(f"{schema.id} has no template; cite a tautology instead")
    missing = set(schema.variables) - set(subst)
    extra = set(subst) - set(schema.variables)
    if missing or extra:
        raise IllFormedInstance(
            f"{schema.id}: substitution must cover exactly {sorted(schema.variables)}")
    for v in schema.basic_vars:
        if not is_basic(subst[v]):
            raise IllFormedInstance(f"{schema.id}: {v} needs a basic formula, got {render(subst[v])}")
    for v in schema.atomic_vars:
        if isinstance(subst[v], Star):
            raise IllFormedInstance(f"{schema.id}: {v} may not be a superposition")
    f = substitute(schema.template, subst)
    violations = well_formed(f)
    if violations:
        raise IllFormedInstance(f"{schema.id}: {violations[0].message}")
    return f


# ---------------------------------------------------------------------------
# Propositional tautologies and duality rewrites
# ---------------------------------------------------------------------------

def _letters(f: Formula, out: dict) -> None:
    if isinstance(f, Neg):
        _letters(f.arg, out)
    elif isinstance(f, (And, Or)):
        _letters(f.left, out)
        _letters(f.right, out)
    else:
        out.setdefault(f, len(out))


def _pc_value(f: Formula, v: dict) -> bool:
    if isinstance(f, Neg):
        return not _pc_value(f.arg, v)
    if isinstance(f, And):
        return _pc_value(f.left, v) and _pc_value(f.right, v)
    if isinstance(f, Or):
        return _pc_value(f.left, v) or _pc_value(f.right, v)
    return v[f]


def is_pc_tautology(f: Formula) -> bool:
    """Truth-table check with non-Boolean subformulas as opaque letters."""
    letters: dict = {}
    _letters(f, letters)
    for bits in product((False, True), repeat=len(letters)):
        if not _pc_value(f, dict(zip(letters, bits))):
            return False
    return True


def _rewrite_top(f: Formula) -> list[Formula]:
    out = []
    if isinstance(f, Neg) and isinstance(f.arg, Diamond):
        phi = f.arg.arg
        out.append(Neg(Diamond(Neg(Neg(phi)))))                        # ~<>p  =>  []~p
        if isinstance(phi, Neg) and isinstance(phi.arg, Neg):
            out.append(Neg(Diamond(phi.arg.arg)))                       # []~p  =>  ~<>p
    if isinstance(f, Neg) and isinstance(f.arg, Neg) and isinstance(f.arg.arg, Diamond) \
            and isinstance(f.arg.arg.arg, Neg):
        out.append(f.arg.arg)                                           # ~[]p  =>  <>~p
    if isinstance(f, Diamond) and isinstance(f.arg, Neg):
        out.append(Neg(Neg(f)))                                         # <>~p  =>  ~[]p
    return out


def duality_rewrites(f: Formula) -> set[Formula]:
    """Formulas reachable from ``f`` by one duality step at any position."""
    out = set(_rewrite_top(f))
    if isinstance(f, (Neg, Diamond, Meas)):
        out.update(type(f)(g) for g in duality_rewrites(f.arg))
    elif isinstance(f, (And, Or)):
        out.update(type(f)(g, f.right) for g in duality_rewrites(f.left))
        out.update(type(f)(f.left, g) for g in duality_rewrites(f.right))
    return out


def _mp_conclusions(minor: Formula, major: Formula) -> list[Formula]:
    # major is minor -> B, either as the hook ~A \/ (A & B) or materially ~A \/ B
    if not (isinstance(major, Or) and major.left == Neg(minor)):
        return []
    out = [major.right]
    if isinstance(major.right, And) and major.right.left == minor:
        out.append(major.right.right)
    return out


# ---------------------------------------------------------------------------
# Scripts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hypothesis:
    pass


@dataclass(frozen=True)
class AxiomInstance:
    schema: str
    subst: Mapping[str, Formula] = field(default_factory=dict)

    def __hash__(self):
        return hash((self.schema, tuple(sorted(self.subst.items(), key=lambda kv: kv[0]))))


@dataclass(frozen=True)
class PCTautology:
    pass


@dataclass(frozen=True)
class ModusPonens:
    minor: int
    major: int


@dataclass(frozen=True)
class Necessitation:
    line: int


@dataclass(frozen=True)
class DualityRewrite:
    line: int


@dataclass(frozen=True)
class Definition:
    line: int


Justification = Union[Hypothesis, AxiomInstance, PCTautology, ModusPonens,
                      Necessitation, DualityRewrite, Definition]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    why: Justification


@dataclass(frozen=True)
class ProofScript:
    name: str
    frame_class: FrameClass
    hypotheses: tuple
    lines: tuple
    sig: Signature = field(default_factory=Signature)
    statement: Formula | None = None

    def __post_init__(self):
        object.__setattr__(self, "frame_class", FrameClass(self.frame_class))
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula


@dataclass(frozen=True)
class ProofReport:
    ok: bool
    line: int | None = None
    message: str = ""

    def __str__(self) -> str:
        return "ok" if self.ok else f"line {self.line}: {self.message}"


def _cited(script_lines, n: int, i: int) -> Formula:
    if not 1 <= i < n:
        raise _Bad(f"cites line {i}, which does not precede it")
    return script_lines[i - 1].formula


class _Bad(Exception):
    pass


def _check_line(script: ProofScript, n: int, line: ProofLine, uses_hyp: list[bool]) -> bool:
    """Verify one line; return whether it depends on hypotheses."""
    f, why = line.formula, line.why
    lines = script.lines
    if well_formed(f):
        raise _Bad(well_formed(f)[0].message)
    if isinstance(why, Hypothesis):
        if f not in script.hypotheses:
            raise _Bad("formula is not among the hypotheses")
        return True
    if isinstance(why, PCTautology) or (isinstance(why, AxiomInstance) and why.schema == "PC-taut"):
        if not is_pc_tautology(f):
            raise _Bad("not a propositional tautology")
        return False
    if isinstance(why, AxiomInstance):
        schema = AXIOMS.get(why.schema)
        if schema is None:
            raise _Bad(f"unknown axiom schema {why.schema!r}")
        if not schema.available_in(script.frame_class):
            raise _Bad(f"axiom {schema.id} is not available in {script.frame_class.value}")
        try:
            expected = instantiate_axiom(schema, why.subst)
        except IllFormedInstance as e:
            raise _Bad(str(e)) from None
        if expected != f:
            raise _Bad(f"formula is not the {schema.id} instance {render(expected)}")
        return False
    if isinstance(why, ModusPonens):
        a = _cited(lines, n, why.minor)
        b = _cited(lines, n, why.major)
        if f in _mp_conclusions(a, b) or f in _mp_conclusions(b, a):
            return uses_hyp[why.minor - 1] or uses_hyp[why.major - 1]
        raise _Bad(f"modus ponens on lines {why.minor}, {why.major} does not yield this formula")
    if isinstance(why, Necessitation):
        g = _cited(lines, n, why.line)
        if uses_hyp[why.line - 1]:
            raise _Bad(f"necessitation applied to line {why.line}, which depends on hypotheses")
        if f != box(g):
            raise _Bad(f"formula is not the necessitation of line {why.line}")
        return False
    if isinstance(why, DualityRewrite):
        g = _cited(lines, n, why.line)
        if f not in duality_rewrites(g):
            raise _Bad(f"formula is not a duality rewrite of line {why.line}")
        return uses_hyp[why.line - 1]
    if isinstance(why, Definition):
        # Derived connectives are expanded in the AST, so unfolding is identity.
        g = _cited(lines, n, why.line)
        if f != g:
            raise _Bad(f"formula differs from line {why.line} beyond definitional unfolding")
        return uses_hyp[why.line - 1]
    raise _Bad(f"unknown justification {why!r}")


def check_proof(script: ProofScript) -> ProofReport:
    if not script.lines:
        return ProofReport(False, None, "empty script")
    for h in script.hypotheses:
        if well_formed(h):
            return ProofReport(False, None, f"ill-formed hypothesis {render(h)}")
    uses_hyp: list[bool] = []
    for n, line in enumerate(script.lines, start=1):
        try:
            uses_hyp.append(_check_line(script, n, line, uses_hyp))
        except _Bad as e:
            return ProofReport(False, n, str(e))
    if script.statement is not None and script.conclusion != script.statement:
        return ProofReport(False, len(script.lines), "final line is not the stated theorem")
    return ProofReport(True)


def semantic_check(script: ProofScript, max_worlds: int = 3):
    """Bounded semantic re-check of ``hypotheses |- conclusion``."""
    bound = SearchBound(max_worlds, script.frame_class)
    if script.hypotheses:
        return entails(list(script.hypotheses), script.conclusion, bound, script.sig)
    return check_validity(script.conclusion, bound, script.sig)


# ---------------------------------------------------------------------------
# Theorem library
# ---------------------------------------------------------------------------

def _L(f, why) -> ProofLine:
    return ProofLine(f, why)


def _corollary_family(name: str, cls: FrameClass, a: Atom, b: Atom, target: Formula,
                      sig: Signature) -> ProofScript:
    # QS1 followed by one propositional step.
    s = Star(a, b)
    qs1 = instantiate_axiom("QS1", {"alpha": a, "beta": b})
    goal = implies(s, target)
    return ProofScript(name, cls, (), (
        _L(qs1, AxiomInstance("QS1", {"alpha": a, "beta": b})),
        _L(implies(qs1, goal), PCTautology()),
        _L(goal, ModusPonens(1, 2)),
    ), sig, goal)


def _from_hypothesis(name: str, hyp: Formula, a: Atom, b: Atom) -> ProofScript:
    s = Star(a, b)
    qs1 = instantiate_axiom("QS1", {"alpha": a, "beta": b})
    bridge = implies(hyp, Neg(s))
    return ProofScript(name, FrameClass.S4, (hyp,), (
        _L(hyp, Hypothesis()),
        _L(qs1, AxiomInstance("QS1", {"alpha": a, "beta": b})),
        _L(implies(qs1, bridge), PCTautology()),
        _L(bridge, ModusPonens(2, 3)),
        _L(Neg(s), ModusPonens(1, 4)),
    ), statement=Neg(s))


def _measured_superposition() -> ProofScript:
    a, b = Atom("psi1"), Atom("psi2")
    s, x = Star(a, b), And(a, b)
    qs4 = instantiate_axiom("QS4", {"alpha": a, "beta": b})
    t = instantiate_axiom("T", {"A": Neg(x)})
    return ProofScript("thm-3.3", FrameClass.T, (Meas(s),), (
        _L(Meas(s), Hypothesis()),
        _L(qs4, AxiomInstance("QS4", {"alpha": a, "beta": b})),
        _L(Neg(Diamond(x)), ModusPonens(1, 2)),
        _L(box(Neg(x)), DualityRewrite(3)),
        _L(t, AxiomInstance("T", {"A": Neg(x)})),
        _L(Neg(x), ModusPonens(4, 5)),
    ), statement=Neg(x))


def _no_paraconsistent_contradiction(sig: Signature) -> ProofScript:
    """Superposition of orthogonal states refutes necessity of their conjunction."""
    p, q = Atom("psi"), Atom("psi_perp")
    s, y = Star(p, q), And(p, q)
    ny = Neg(y)
    t = instantiate_axiom("T", {"A": Neg(ny)})                # []~~Y -> ~~Y
    contra = implies(ny, Neg(box(Neg(ny))))                   # ~Y -> ~[]~~Y
    doubled = implies(ny, Neg(Neg(Diamond(ny))))              # ~Y -> ~~<>~Y
    t_dual = implies(ny, Diamond(ny))                         # ~Y -> <>~Y
    to_neg3 = implies(Diamond(ny), Neg(box(y)))               # <>~Y -> ~[]Y
    qs1 = instantiate_axiom("QS1", {"alpha": p, "beta": q})
    goal = implies(s, Neg(box(y)))
    chain = implies(t_dual, implies(to_neg3, goal))
    return ProofScript("thm-4.1", FrameClass.S5, (), (
        _L(t, AxiomInstance("T", {"A": Neg(ny)})),
        _L(implies(t, contra), PCTautology()),
        _L(contra, ModusPonens(1, 2)),
        _L(doubled, DualityRewrite(3)),
        _L(implies(doubled, t_dual), PCTautology()),
        _L(t_dual, ModusPonens(4, 5)),
        _L(to_neg3, PCTautology()),
        _L(qs1, AxiomInstance("QS1", {"alpha": p, "beta": q})),
        _L(implies(qs1, chain), PCTautology()),
        _L(chain, ModusPonens(8, 9)),
        _L(implies(to_neg3, goal), ModusPonens(6, 10)),
        _L(goal, ModusPonens(7, 11)),
    ), sig, goal)


def theorem_library() -> dict[str, ProofScript]:
    """Checked scripts for the superposition theorems, keyed by name."""
    a, b = Atom("psi1"), Atom("psi2")
    p, q = Atom("psi"), Atom("psi_perp")
    plain = Signature()
    ortho = Signature.from_pairs(["psi", "psi_perp"], [("psi", "psi_perp")])
    scripts = [
        _corollary_family("thm-3.1", FrameClass.S4, a, b, And(Neg(a), Neg(b)), plain),
        _corollary_family("thm-3.2", FrameClass.S4, a, b, Neg(And(a, b)), plain),
        _corollary_family("cor-3.1", FrameClass.S4, p, q, Neg(And(p, q)), ortho),
        _measured_superposition(),
        _from_hypothesis("thm-3.4", a, a, b),
        _from_hypothesis("thm-3.5", And(a, b), a, b),
        _no_paraconsistent_contradiction(ortho),
    ]
    return {s.name: s for s in scripts}


# ---------------------------------------------------------------------------
# Script files
# ---------------------------------------------------------------------------

def _why_to_row(why: Justification) -> tuple[str, list[int], dict]:
    if isinstance(why, Hypothesis):
        return "hypothesis", [], {}
    if isinstance(why, PCTautology):
        return "pc-tautology", [], {}
    if isinstance(why, AxiomInstance):
        return f"axiom:{why.schema}", [], {k: render(v) for k, v in sorted(why.subst.items())}
    if isinstance(why, ModusPonens):
        return "mp", [why.minor, why.major], {}
    if isinstance(why, Necessitation):
        return "nec", [why.line], {}
    if isinstance(why, DualityRewrite):
        return "duality", [why.line], {}
    return "definition", [why.line], {}


def script_to_dict(script: ProofScript) -> dict:
    out = {
        "name": script.name,
        "class": script.frame_class.value,
        "atoms": sorted(script.sig.atoms),
        "perp": [list(p) for p in script.sig.pairs()],
        "hypotheses": [render(h) for h in script.hypotheses],
        "lines": [[n, render(line.formula), *_why_to_row(line.why)]
                  for n, line in enumerate(script.lines, start=1)],
    }
    if script.statement is not None:
        out["statement"] = render(script.statement)
    return out


_CITING = {"mp": 2, "nec": 1, "duality": 1, "definition": 1}


def script_from_dict(data: Mapping) -> ProofScript:
    """Read the file layout.  Formulas use the surface syntax."""
    try:
        sig = Signature.from_pairs(data.get("atoms", []), [tuple(p) for p in data.get("perp", [])])
        rd = lambda text: parse(text, sig, strict=False)  # noqa: E731
        hyps = [rd(h) for h in data.get("hypotheses", [])]
        lines = []
        for expected_n, row in enumerate(data["lines"], start=1):
            n, text, kind = row[0], row[1], row[2]
            cited = list(row[3]) if len(row) > 3 else []
            subst = dict(row[4]) if len(row) > 4 else {}
            if n != expected_n:
                raise ScriptError(f"line numbers must run 1, 2, ...; found {n} at position {expected_n}")
            if kind in _CITING and len(cited) != _CITING[kind]:
                raise ScriptError(f"line {n}: {kind} cites {_CITING[kind]} line(s)")
            if kind == "hypothesis":
                why = Hypothesis()
            elif kind == "pc-tautology":
                why = PCTautology()
            elif kind.startswith("axiom:"):
                why = AxiomInstance(kind[len("axiom:"):], {k: rd(v) for k, v in subst.items()})
            elif kind == "mp":
                why = ModusPonens(*cited)
            elif kind == "nec":
                why = Necessitation(*cited)
            elif kind == "duality":
                why = DualityRewrite(*cited)
            elif kind == "definition":
                why = Definition(*cited)
            else:
                raise ScriptError(f"line {n}: unknown justification {kind!r}")
            lines.append(ProofLine(rd(text), why))
        statement = rd(data["statement"]) if "statement" in data else None
        return ProofScript(data.get("name", "unnamed"), FrameClass(data.get("class", "S4")),
                           tuple(hyps), tuple(lines), sig, statement)
    except (KeyError, IndexError, TypeError) as e:
        raise ScriptError(f"malformed proof script: {e!r}") from e


def load_script(path) -> ProofScript:
    with open(path) as fh:
        return script_from_dict(json.load(fh))
