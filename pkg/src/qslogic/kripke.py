"""
Frames, models, the acceptability filter and truth evaluation.

A model assigns truth values to *basic* formulas (atoms and superpositions)
world by world.  Only acceptable valuations are meaningful: wherever a
superposition ``a * b`` holds, ``a``, ``b`` and all their subformulas fail.

Measurement is evaluated as follows (``succ`` are the accessible worlds other
than ``w`` itself):

* ``M a`` for an atom ``a`` holds at ``w`` iff ``a`` holds at ``w`` and at some
  world of ``succ``.
* ``M (a * b)`` holds at ``w`` iff some world of ``succ`` separates ``a`` from
  ``b`` (exactly one of them true), every world of ``succ`` separates them,
  and, when ``w`` accesses itself without being in the superposition, ``w``
  separates them too.

The last conjunct is what makes ``M(a*b) -> ~<>(a & b)`` valid on frames with
self loops.  ``Model(literal_meas=True)`` drops it and evaluates the
two-world clause alone.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .formula import (
    And, Atom, Diamond, Formula, Meas, Neg, Or, Signature, Star,
    basic_subformulas, is_basic, parse, render, subformulas,
)

__all__ = [
    "Frame", "FrameClass", "FrameReport", "Model", "ModelError", "UnknownBasicFormula",
    "AcceptabilityViolation", "OrthogonalityViolation",
    "check_frame_class", "check_acceptability", "check_orthogonality", "is_admissible",
    "eval_formula", "holds_everywhere", "reflexive_closure", "euclidean_closure",
    "missing_euclidean_edges",
    "model_to_dict", "model_from_dict", "load_model", "dump_model", "cat_model",
]


class FrameClass(enum.Enum):
    K = "K"
    T = "T"
    S4 = "S4"
    S5 = "S5"

    @property
    def requires(self) -> tuple[str, ...]:
        return _REQUIREMENTS[self]


_REQUIREMENTS = {
    FrameClass.K: (),
    FrameClass.T: ("reflexive",),
    FrameClass.S4: ("reflexive", "transitive"),
    FrameClass.S5: ("reflexive", "transitive", "symmetric"),
}


@dataclass(frozen=True)
class Frame:
    worlds: tuple
    rel: frozenset

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "rel", frozenset(tuple(p) for p in self.rel))
        if not self.worlds:
            raise ValueError("a frame needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise ValueError("duplicate world ids")
        ws = set(self.worlds)
        for a, b in self.rel:
            if a not in ws or b not in ws:
                raise ValueError(f"edge {(a, b)} leaves the world set")

    @cached_property
    def succ(self) -> dict:
        out = {w: [] for w in self.worlds}
        for w in self.worlds:
            out[w] = [v for v in self.worlds if (w, v) in self.rel]
        return out

    def is_reflexive(self) -> bool:
        return all((w, w) in self.rel for w in self.worlds)

    def is_symmetric(self) -> bool:
        return all((b, a) in self.rel for a, b in self.rel)

    def is_transitive(self) -> bool:
        return all((a, c) in self.rel for a, b in self.rel for c in self.succ[b])

    def is_euclidean(self) -> bool:
        return all((b, c) in self.rel
                   for a in self.worlds for b in self.succ[a] for c in self.succ[a])

    def sorted_rel(self) -> list[tuple]:
        index = {w: i for i, w in enumerate(self.worlds)}
        return sorted(self.rel, key=lambda p: (index[p[0]], index[p[1]]))


def reflexive_closure(frame: Frame) -> Frame:
    return Frame(frame.worlds, frame.rel | {(w, w) for w in frame.worlds})


def missing_euclidean_edges(frame: Frame) -> set:
    """Pairs ``(b, c)`` absent from the relation although some ``a`` sees both."""
    return {(b, c) for a in frame.worlds for b in frame.succ[a] for c in frame.succ[a]} - frame.rel


def euclidean_closure(frame: Frame) -> Frame:
    rel = set(frame.rel)
    while True:
        extra = {(b, c) for a in frame.worlds
                 for b in frame.worlds if (a, b) in rel
                 for c in frame.worlds if (a, c) in rel} - rel
        if not extra:
            return Frame(frame.worlds, rel)
        rel |= extra


@dataclass(frozen=True)
class FrameReport:
    frame_class: FrameClass
    reflexive: bool
    transitive: bool
    symmetric: bool
    euclidean: bool

    @property
    def missing(self) -> list[str]:
        return [p for p in self.frame_class.requires if not getattr(self, p)]

    @property
    def ok(self) -> bool:
        return not self.missing


def check_frame_class(frame: Frame, cls: FrameClass | str) -> FrameReport:
    cls = FrameClass(cls)
    return FrameReport(cls, frame.is_reflexive(), frame.is_transitive(),
                       frame.is_symmetric(), frame.is_euclidean())


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

class ModelError(ValueError):
    pass


class UnknownBasicFormula(ModelError):
    pass


@dataclass(frozen=True)
class Model:
    """Frame plus a valuation of basic formulas.

    ``val`` maps each world to the set of basic formulas true there; every
    other formula of ``domain`` is false at that world.  ``orthogonality``
    defaults to on exactly when the signature declares perp pairs.
    """

    frame: Frame
    domain: frozenset
    val: Mapping
    sig: Signature = field(default_factory=Signature)
    frame_class: FrameClass = FrameClass.K
    orthogonality: bool | None = None
    literal_meas: bool = False

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "frame_class", FrameClass(self.frame_class))
        val = {w: frozenset(self.val.get(w, ())) for w in self.frame.worlds}
        extra = set(self.val) - set(val)
        if extra:
            raise ModelError(f"valuation names unknown worlds {sorted(extra)}")
        object.__setattr__(self, "val", val)
        if self.orthogonality is None:
            object.__setattr__(self, "orthogonality", bool(self.sig.perp))
        for f in self.domain:
            if not is_basic(f):
                raise ModelError(f"{render(f)} is not a basic formula")
            for g in subformulas(f):
                if g not in self.domain:
                    raise ModelError(f"domain not closed under subformula: {render(g)} missing")
        for w, true in val.items():
            if not true <= self.domain:
                bad = min(map(render, true - self.domain))
                raise ModelError(f"{bad} is true at {w} but outside the domain")

    @property
    def worlds(self) -> tuple:
        return self.frame.worlds

    def value(self, f: Formula, w) -> bool:
        if f not in self.domain:
            raise UnknownBasicFormula(f"{render(f)} is outside the model domain")
        return f in self.val[w]

    def extend_domain(self, formulas: Iterable[Formula]) -> "Model":
        """Add the basic subformulas of ``formulas``, false everywhere."""
        domain = self.domain | set(basic_subformulas(formulas))
        return Model(self.frame, domain, self.val, self.sig, self.frame_class,
                     self.orthogonality, self.literal_meas)


def _trusted_model(frame, domain, val, sig, frame_class, orthogonality, literal_meas) -> Model:
    # Skips validation; callers guarantee the invariants.
    m = object.__new__(Model)
    for k, v in (("frame", frame), ("domain", domain), ("val", val), ("sig", sig),
                 ("frame_class", frame_class), ("orthogonality", orthogonality),
                 ("literal_meas", literal_meas)):
        object.__setattr__(m, k, v)
    return m


@dataclass(frozen=True)
class AcceptabilityViolation:
    world: object
    star: Star
    offending: Formula

    def __str__(self) -> str:
        return f"{self.world}: {render(self.star)} true together with {render(self.offending)}"


@dataclass(frozen=True)
class OrthogonalityViolation:
    world: object
    atom: str
    perp: str

    def __str__(self) -> str:
        return f"{self.world}: |{self.atom}> and its orthocomplement |{self.perp}> both true"


def _star_conflicts(star: Star) -> list[Formula]:
    return list(dict.fromkeys(subformulas(star.left) + subformulas(star.right)))


def check_acceptability(model: Model) -> list[AcceptabilityViolation]:
    out = []
    stars = [f for f in model.domain if isinstance(f, Star)]
    stars.sort(key=render)
    for w in model.worlds:
        true = model.val[w]
        for s in stars:
            if s in true:
                out.extend(AcceptabilityViolation(w, s, g)
                           for g in _star_conflicts(s) if g in true)
    return out


def check_orthogonality(model: Model) -> list[OrthogonalityViolation]:
    out = []
    for w in model.worlds:
        true = model.val[w]
        for a, b in model.sig.pairs():
            if Atom(a) in true and Atom(b) in true:
                out.append(OrthogonalityViolation(w, a, b))
    return out


def is_admissible(model: Model) -> bool:
    """Acceptable, and orthogonal when the model asks for it."""
    if check_acceptability(model):
        return False
    return not (model.orthogonality and check_orthogonality(model))


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_formula(model: Model, w, f: Formula) -> bool:
    """Truth value of ``f`` at world ``w``."""
    if isinstance(f, (Atom, Star)):
        return model.value(f, w)
    if isinstance(f, Neg):
        return not eval_formula(model, w, f.arg)
    if isinstance(f, And):
        return eval_formula(model, w, f.left) and eval_formula(model, w, f.right)
    if isinstance(f, Or):
        return eval_formula(model, w, f.left) or eval_formula(model, w, f.right)
    if isinstance(f, Diamond):
        return any(eval_formula(model, v, f.arg) for v in model.frame.succ[w])
    if isinstance(f, Meas):
        return _eval_meas(model, w, f.arg)
    raise TypeError(f"not a formula: {f!r}")


def _eval_meas(model: Model, w, target: Formula) -> bool:
    others = [v for v in model.frame.succ[w] if v != w]
    if isinstance(target, Atom):
        return model.value(target, w) and any(model.value(target, v) for v in others)
    if not isinstance(target, Star):
        raise ModelError(f"M applied to non-basic formula {render(target)}")
    a, b = target.left, target.right

    def splits(v) -> bool:
        return model.value(a, v) != model.value(b, v)

    if not others or not all(splits(v) for v in others):
        return False
    if model.literal_meas or w not in model.frame.succ[w] or model.value(target, w):
        return True
    return splits(w)


def holds_everywhere(model: Model, f: Formula) -> bool:
    return all(eval_formula(model, w, f) for w in model.worlds)


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------

def model_to_dict(model: Model) -> dict:
    true_lists = {str(w): sorted(render(f) for f in model.val[w]) for w in model.worlds}
    atoms = sorted({f.name for f in model.domain if isinstance(f, Atom)} | set(model.sig.atoms))
    out = {
        "worlds": [str(w) for w in model.worlds],
        "rel": [[str(a), str(b)] for a, b in model.frame.sorted_rel()],
        "frame_class": model.frame_class.value,
        "atoms": atoms,
        "perp": [list(p) for p in model.sig.pairs()],
        "valuation": true_lists,
        "orthogonality": bool(model.orthogonality),
    }
    stars = sorted(render(f) for f in model.domain if isinstance(f, Star))
    if stars:
        out["domain"] = stars
    return out


def model_from_dict(data: Mapping) -> Model:
    """Build a model from the JSON-compatible file layout.

    The domain is the declared atoms, any ``domain`` entries and every basic
    formula listed in the valuation, closed under subformula.  Listed formulas
    are true at their world; everything else in the domain is false there.
    """
    try:
        worlds = [str(w) for w in data["worlds"]]
        rel = {(str(a), str(b)) for a, b in data.get("rel", [])}
        sig = Signature.from_pairs(data.get("atoms", []),
                                   [tuple(p) for p in data.get("perp", [])])
        raw_val = data.get("valuation", {})
    except (KeyError, TypeError, ValueError) as e:
        raise ModelError(f"malformed model file: {e}") from e

    def read(text: str) -> Formula:
        f = parse(text, sig, strict=False)
        if not is_basic(f):
            raise ModelError(f"valuation entry {text!r} is not a basic formula")
        return f

    val = {str(w): {read(t) for t in ts} for w, ts in raw_val.items()}
    extra = [read(t) for t in data.get("domain", [])]
    atoms = [Atom(a) for a in sig.atoms]
    listed = [f for fs in val.values() for f in fs]
    domain = basic_subformulas(atoms + extra + listed)
    return Model(Frame(worlds, rel), domain, val, sig,
                 FrameClass(data.get("frame_class", "K")),
                 data.get("orthogonality"))


def load_model(path) -> Model:
    with open(path) as fh:
        return model_from_dict(json.load(fh))


def dump_model(model: Model) -> str:
    """Model file text: one top-level key per line, compact values."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in model_to_dict(model).items())
    return "{\n" + body + "\n}"


def cat_model() -> Model:
    """The three-world cat scenario.

    ``w0`` is superposed (alive * dead); measurement branches to ``w1``
    (alive) and ``w2`` (dead), which do not see each other.
    """
    alive, dead = Atom("alive"), Atom("dead")
    star = Star(alive, dead)
    worlds = ("w0", "w1", "w2")
    rel = {("w0", "w1"), ("w0", "w2")} | {(w, w) for w in worlds}
    sig = Signature.from_pairs(["alive", "dead"], [("alive", "dead")])
    val = {"w0": {star}, "w1": {alive}, "w2": {dead}}
    return Model(Frame(worlds, rel), {alive, dead, star}, val, sig, FrameClass.T)
