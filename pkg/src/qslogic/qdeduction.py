"""
The three negations and non-adjunctive quantum deduction.

``alpha`` is quantum-derivable from ``gamma`` when one of three clauses
holds:

1. membership: ``alpha`` is in ``gamma``;
2. thesis: ``alpha`` is the conclusion of a checked hypothesis-free library
   script, or is valid up to the search bound;
3. subset: some ``delta`` within ``gamma`` is such that ``delta + [alpha]`` is
   satisfiable (hence non-trivial) and ``delta`` entails ``alpha`` up to the
   bound.

Subsets are tried smallest first, then in index order, so traces are
reproducible.  Because clause 3 only ever combines a satisfiable
selection, ``{p, ~3 p}`` yields ``p & ~3 p`` but never an arbitrary ``q``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .formula import (
    And, Atom, Formula, Neg, Neg2OnNonAtom, Neg2Undeclared, Signature, Star, Meas, Diamond,
    neg3, render,
)
from .kripke import FrameClass
from .proofs import ProofScript, check_proof, theorem_library
from .validity import (
    BoundTooLarge, Countermodel, SatWitness, SearchBound, UnsatUpToBound, ValidUpToBound,
    check_validity, entails, is_satisfiable,
)

__all__ = [
    "NegationKind", "Derivability", "QDeductionTrace", "QDeductionResult",
    "apply_negation", "quantum_derives", "library_theses",
    "NonAdjunctionReport", "check_nonadjunction", "CLAUSES",
]

CLAUSES = ("membership", "thesis", "subset")


class NegationKind(enum.Enum):
    NEG1 = 1   # exclusion: classical complement at a world
    NEG2 = 2   # contrary: orthocomplement partner of an atom
    NEG3 = 3   # subcontrary: ~[]


def apply_negation(kind: NegationKind | int, f: Formula, sig: Signature | None = None) -> Formula:
    kind = NegationKind(kind)
    if kind is NegationKind.NEG1:
        return Neg(f)
    if kind is NegationKind.NEG3:
        return neg3(f)
    if not isinstance(f, Atom):
        raise Neg2OnNonAtom(f"~2 applied to non-atom {render(f)}")
    partner = sig.perp_of(f.name) if sig is not None else None
    if partner is None:
        raise Neg2Undeclared(f"no orthocomplement declared for {render(f)}")
    return Atom(partner)


class Derivability(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class QDeductionTrace:
    clause: str | None = None
    thesis_source: str | None = None          # "library:<name>" or "semantic"
    subset: tuple | None = None
    witness: SatWitness | None = None
    verdict: ValidUpToBound | Countermodel | None = None
    attempts: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"clause: {self.clause or 'none'}"]
        if self.thesis_source:
            out.append(f"thesis_source: {self.thesis_source}")
        if self.subset is not None:
            out.append("subset: {" + ", ".join(render(f) for f in self.subset) + "}")
        if self.witness is not None:
            out.append(f"nontrivial: {self.witness}")
        if self.verdict is not None:
            out.append(f"entailment: {self.verdict}")
        for subset, reason in self.attempts:
            out.append("rejected: {" + ", ".join(render(f) for f in subset) + f"}} {reason}")
        return out


@dataclass
class QDeductionResult:
    answer: Derivability
    trace: QDeductionTrace

    def __bool__(self) -> bool:
        return self.answer is Derivability.YES


def library_theses(library: dict[str, ProofScript] | None = None) -> dict[Formula, str]:
    """Conclusions of hypothesis-free library scripts that pass the checker."""
    library = theorem_library() if library is None else library
    return {s.conclusion: name for name, s in library.items()
            if not s.hypotheses and check_proof(s).ok}


def quantum_derives(gamma: Sequence[Formula], alpha: Formula, bound: SearchBound,
                    sig: Signature | None = None, *, theses: dict | None = None,
                    clause_order: Sequence[str] = CLAUSES) -> QDeductionResult:
    if sorted(clause_order) != sorted(CLAUSES):
        raise ValueError(f"clause_order must be a permutation of {CLAUSES}")
    gamma = list(dict.fromkeys(gamma))
    theses = library_theses() if theses is None else theses
    trace = QDeductionTrace()
    blocked = False

    for clause in clause_order:
        try:
            if clause == "membership" and alpha in gamma:
                trace.clause = "membership"
                return QDeductionResult(Derivability.YES, trace)
            if clause == "thesis":
                if alpha in theses:
                    trace.clause, trace.thesis_source = "thesis", f"library:{theses[alpha]}"
                    return QDeductionResult(Derivability.YES, trace)
                verdict = check_validity(alpha, bound, sig)
                if isinstance(verdict, ValidUpToBound):
                    trace.clause, trace.thesis_source, trace.verdict = "thesis", "semantic", verdict
                    return QDeductionResult(Derivability.YES, trace)
            if clause == "subset" and _subset_clause(gamma, alpha, bound, sig, trace):
                return QDeductionResult(Derivability.YES, trace)
        except BoundTooLarge as e:
            blocked = True
            trace.attempts.append(((), f"{clause}: {e}"))
    return QDeductionResult(Derivability.UNKNOWN if blocked else Derivability.NO, trace)


def _subset_clause(gamma, alpha, bound, sig, trace) -> bool:
    for k in range(len(gamma) + 1):
        for idx in combinations(range(len(gamma)), k):
            delta = tuple(gamma[i] for i in idx)
            sat = is_satisfiable(list(delta) + [alpha], bound, sig)
            if isinstance(sat, UnsatUpToBound):
                trace.attempts.append((delta, "trivial together with alpha"))
                continue
            verdict = entails(list(delta), alpha, bound, sig)
            if isinstance(verdict, ValidUpToBound):
                trace.clause, trace.subset = "subset", delta
                trace.witness, trace.verdict = sat, verdict
                return True
            trace.attempts.append((delta, f"countermodel at {verdict.world}"))
    return False


# ---------------------------------------------------------------------------
# Non-adjunction report
# ---------------------------------------------------------------------------

@dataclass
class NonAdjunctionReport:
    results: list = field(default_factory=list)   # (description, passed)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.results)

    @property
    def failures(self) -> list[str]:
        return [d for d, passed in self.results if not passed]


def _battery(p, q, a, ap) -> list[list[Formula]]:
    s = Star(a, ap)
    return [
        [p], [Neg(p)], [p, q], [p, neg3(p)], [a, neg3(a)], [s], [s, Meas(s)],
        [a, Diamond(ap)], [neg3(a), Diamond(a)], [p, neg3(p), q],
    ]


def check_nonadjunction(bound: SearchBound | None = None) -> NonAdjunctionReport:
    """Run the paraconsistency / non-adjunction property suite."""
    bound = bound or SearchBound(2, FrameClass.S5, orthogonality=True)
    p, q, a, ap = Atom("p"), Atom("q"), Atom("a"), Atom("a_perp")
    sig = Signature.from_pairs(["p", "q", "a", "a_perp"], [("a", "a_perp")])
    theses = library_theses()
    report = NonAdjunctionReport()
    check = report.results.append

    def qd(g, f):
        return quantum_derives(g, f, bound, sig, theses=theses).answer

    gamma = [p, neg3(p)]
    check(("{p, ~3p} is satisfiable",
           isinstance(is_satisfiable(gamma, bound, sig), SatWitness)))
    check(("{p, ~3p} quantum-derives p & ~3p", qd(gamma, And(p, neg3(p))) is Derivability.YES))
    check(("{p, ~3p} does not quantum-derive q", qd(gamma, q) is Derivability.NO))
    check(("{p, ~3p} does not quantum-derive ~1 q", qd(gamma, Neg(q)) is Derivability.NO))
    check(("{p & ~1p} is unsatisfiable",
           isinstance(is_satisfiable([And(p, Neg(p))], bound, sig), UnsatUpToBound)))
    neg2_a = apply_negation(NegationKind.NEG2, a, sig)
    check(("{a & ~2a} is unsatisfiable under orthogonality",
           isinstance(is_satisfiable([And(a, neg2_a)], bound, sig), UnsatUpToBound)))

    for g in _battery(p, q, a, ap):
        label = "{" + ", ".join(render(f) for f in g) + "}"
        if not isinstance(is_satisfiable(g, bound, sig), SatWitness):
            check((f"battery set {label} is satisfiable", False))
            continue
        for target in (And(p, Neg(p)), And(a, Neg(a)), And(a, neg2_a)):
            if target in g:
                continue
            check((f"{label} does not quantum-derive {render(target)}",
                   qd(g, target) is Derivability.NO))
    return report
