"""
Bounded model enumeration, validity, entailment and satisfiability.

Every verdict is relative to a ``SearchBound``: frames with at most
``max_worlds`` worlds, satisfying the frame class, carrying every
acceptable valuation of the target formulas' basic subformulas.  A
``ValidUpToBound`` verdict never claims more than that.

Enumeration order is fixed and defines the tie-break for reported models:
fewer worlds first, then smaller relation mask, then smaller valuation (per
world, in world order).  Worlds are labelled ``w0, w1, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence, Union

from .formula import Atom, Formula, Signature, Star, basic_subformulas, render, subformulas
from .kripke import (
    Frame, FrameClass, Model, _trusted_model, check_acceptability, check_frame_class,
    check_orthogonality, eval_formula,
)

__all__ = [
    "SearchBound", "BoundTooLarge", "SearchInvariantError",
    "ValidUpToBound", "Countermodel", "Unknown", "SatWitness", "UnsatUpToBound", "Verdict",
    "DEFAULT_LIMIT", "valuation_options", "enumerate_frames", "enumerate_models",
    "models_of_size", "check_validity", "entails", "is_satisfiable",
]

DEFAULT_LIMIT = 2 ** 24


class BoundTooLarge(RuntimeError):
    pass


class SearchInvariantError(AssertionError):
    """A reported witness failed its own re-verification."""


@dataclass(frozen=True)
class SearchBound:
    max_worlds: int
    frame_class: FrameClass = FrameClass.S4
    orthogonality: bool = True
    literal_meas: bool = False

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        object.__setattr__(self, "frame_class", FrameClass(self.frame_class))

    def __str__(self) -> str:
        return f"{self.max_worlds}, {self.frame_class.value}"


@dataclass(frozen=True)
class ValidUpToBound:
    bound: SearchBound

    def __str__(self) -> str:
        return f"ValidUpToBound({self.bound.max_worlds})"


@dataclass(frozen=True)
class Countermodel:
    model: Model
    world: str

    def __str__(self) -> str:
        return f"Countermodel(worlds={len(self.model.worlds)}, world={self.world})"


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __str__(self) -> str:
        return "Unknown"


@dataclass(frozen=True)
class SatWitness:
    model: Model
    world: str

    def __str__(self) -> str:
        return f"SatWitness(worlds={len(self.model.worlds)}, world={self.world})"


@dataclass(frozen=True)
class UnsatUpToBound:
    bound: SearchBound

    def __str__(self) -> str:
        return f"UnsatUpToBound({self.bound.max_worlds})"


Verdict = Union[ValidUpToBound, Countermodel, Unknown]


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _canonical_domain(domain: Iterable[Formula]) -> list[Formula]:
    dom = basic_subformulas(domain)
    if set(dom) != set(domain):
        raise ValueError("domain must consist of basic formulas closed under subformula")
    return sorted(dom, key=lambda f: (len(subformulas(f)), render(f)))


def valuation_options(domain: Sequence[Formula], sig: Signature, orthogonality: bool) -> list[frozenset]:
    """Admissible sets of true basic formulas at a single world.

    Ordered by bitmask over ``domain`` (first formula = lowest bit).
    """
    conflicts = [(s, [g for g in subformulas(s.left) + subformulas(s.right)])
                 for s in domain if isinstance(s, Star)]
    pairs = [(Atom(a), Atom(b)) for a, b in sig.pairs()] if orthogonality else []
    out = []
    for mask in range(2 ** len(domain)):
        true = frozenset(f for i, f in enumerate(domain) if mask >> i & 1)
        if any(s in true and any(g in true for g in gs) for s, gs in conflicts):
            continue
        if any(a in true and b in true for a, b in pairs):
            continue
        out.append(true)
    return out


def enumerate_frames(n: int, cls: FrameClass) -> Iterator[Frame]:
    """All frames on ``w0..w{n-1}`` in the class, by ascending relation mask.

    For reflexive classes the diagonal is fixed and the mask ranges over
    the off-diagonal pairs only.
    """
    cls = FrameClass(cls)
    worlds = tuple(f"w{i}" for i in range(n))
    reflexive = "reflexive" in cls.requires
    fixed = {(w, w) for w in worlds} if reflexive else set()
    free = [(a, b) for a in worlds for b in worlds if not (reflexive and a == b)]
    for mask in range(2 ** len(free)):
        rel = fixed | {p for i, p in enumerate(free) if mask >> i & 1}
        frame = Frame(worlds, rel)
        if check_frame_class(frame, cls).ok:
            yield frame


def models_of_size(n: int, domain: Iterable[Formula], sig: Signature | None,
                   bound: SearchBound, limit: int = DEFAULT_LIMIT) -> Iterator[Model]:
    sig = sig if sig is not None else Signature()
    dom = _canonical_domain(domain)
    options = valuation_options(dom, sig, bound.orthogonality)
    reflexive = "reflexive" in FrameClass(bound.frame_class).requires
    relations = 2 ** (n * n - (n if reflexive else 0))
    if relations * len(options) ** n > limit:
        raise BoundTooLarge(
            f"{relations} candidate relations times {len(options)}^{n} valuations "
            f"on {n} worlds exceed the limit of {limit}")
    domain_set = frozenset(dom)
    ortho = bound.orthogonality and bool(sig.perp)
    for frame in enumerate_frames(n, bound.frame_class):
        for combo in product(options, repeat=n):
            yield _trusted_model(frame, domain_set, dict(zip(frame.worlds, combo)), sig,
                                 bound.frame_class, ortho, bound.literal_meas)


def enumerate_models(domain: Iterable[Formula], sig: Signature | None, bound: SearchBound,
                     limit: int = DEFAULT_LIMIT) -> Iterator[Model]:
    """Every admissible model with 1 to ``bound.max_worlds`` worlds."""
    domain = list(domain)
    for n in range(1, bound.max_worlds + 1):
        yield from models_of_size(n, domain, sig, bound, limit)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

def _verify(model: Model, world: str, bound: SearchBound, holds, fails) -> None:
    if check_acceptability(model):
        raise SearchInvariantError("witness violates acceptability")
    if model.orthogonality and check_orthogonality(model):
        raise SearchInvariantError("witness violates orthogonality")
    if not check_frame_class(model.frame, bound.frame_class).ok:
        raise SearchInvariantError("witness frame is outside the class")
    if not all(eval_formula(model, world, f) for f in holds):
        raise SearchInvariantError("witness does not satisfy the premises")
    if any(eval_formula(model, world, f) for f in fails):
        raise SearchInvariantError("witness satisfies the refuted formula")


def _search(holds: list[Formula], fails: list[Formula], bound: SearchBound,
            sig: Signature | None, limit: int):
    domain = basic_subformulas(holds + fails)
    for model in enumerate_models(domain, sig, bound, limit):
        for w in model.worlds:
            if all(eval_formula(model, w, f) for f in holds) and \
                    not any(eval_formula(model, w, f) for f in fails):
                _verify(model, w, bound, holds, fails)
                return model, w
    return None


def check_validity(f: Formula, bound: SearchBound, sig: Signature | None = None,
                   limit: int = DEFAULT_LIMIT) -> ValidUpToBound | Countermodel:
    hit = _search([], [f], bound, sig, limit)
    if hit is None:
        return ValidUpToBound(bound)
    return Countermodel(*hit)


def entails(gamma: Sequence[Formula], f: Formula, bound: SearchBound,
            sig: Signature | None = None, limit: int = DEFAULT_LIMIT) -> ValidUpToBound | Countermodel:
    """Local consequence: at every world where all of ``gamma`` hold, ``f`` holds.

    Same verdict as ``check_validity`` on the material conditional
    ``conj(gamma) -> f``.
    """
    hit = _search(list(gamma), [f], bound, sig, limit)
    if hit is None:
        return ValidUpToBound(bound)
    return Countermodel(*hit)


def is_satisfiable(formulas: Sequence[Formula], bound: SearchBound,
                   sig: Signature | None = None, limit: int = DEFAULT_LIMIT) -> SatWitness | UnsatUpToBound:
    hit = _search(list(formulas), [], bound, sig, limit)
    if hit is None:
        return UnsatUpToBound(bound)
    return SatWitness(*hit)
