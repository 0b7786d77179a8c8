"""
Object language: AST, parser, printer and well-formedness.

The canonical AST has seven node kinds: ``Atom``, ``Star`` (superposition),
``Neg``, ``And``, ``Or``, ``Diamond`` and ``Meas`` (measurement).  Everything
else in the surface syntax is an abbreviation expanded while parsing:

    A -> B      ~A \\/ (A & B)              (Sasaki hook)
    A <-> B     (A -> B) & (B -> A)
    [] A        ~<>~A
    ~3 A        ~[]A                       (subcontrary negation)
    ~2 |a>      |b>  where b is the declared orthocomplement of a

Surface grammar, tightest binding first::

    unary   ~  ~2  ~3  <>  []  M
    *       left associative
    &       left associative
    \\/      left associative
    ->      right associative
    <->     left associative

Atoms are kets, ``|name>``, with ``name`` made of letters, digits and ``_``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Atom", "Star", "Neg", "And", "Or", "Diamond", "Meas", "Formula",
    "Signature", "Violation",
    "FormulaError", "FormulaSyntaxError", "UnknownAtom", "DuplicateStarOperand",
    "StarOnMolecular", "MOnMolecular", "Neg2OnNonAtom", "Neg2Undeclared",
    "parse", "render", "subformulas", "basic_subformulas", "atoms_of",
    "is_basic", "well_formed", "check_well_formed",
    "implies", "material", "iff", "box", "neg3", "conj", "disj", "substitute",
]


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Star:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Neg:
    arg: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Diamond:
    arg: "Formula"

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Meas:
    arg: "Formula"

    def __str__(self) -> str:
        return render(self)


Formula = Union[Atom, Star, Neg, And, Or, Diamond, Meas]

_BINARY = (Star, And, Or)
_UNARY = (Neg, Diamond, Meas)


def children(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, _UNARY):
        return (f.arg,)
    return (f.left, f.right)


# ---------------------------------------------------------------------------
# Derived connectives
# ---------------------------------------------------------------------------

def implies(a: Formula, b: Formula) -> Formula:
    """Sasaki hook: ``~a \\/ (a & b)``."""
    return Or(Neg(a), And(a, b))


def material(a: Formula, b: Formula) -> Formula:
    return Or(Neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def box(a: Formula) -> Formula:
    return Neg(Diamond(Neg(a)))


def neg3(a: Formula) -> Formula:
    """Subcontrary (paraconsistent) negation, ``~[]a``."""
    return Neg(box(a))


def conj(formulas: Iterable[Formula]) -> Formula | None:
    """Left-nested conjunction, ``None`` for an empty sequence."""
    out = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return out


def disj(formulas: Iterable[Formula]) -> Formula | None:
    out = None
    for f in formulas:
        out = f if out is None else Or(out, f)
    return out


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Replace atoms by name; atoms missing from ``mapping`` are kept."""
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    if isinstance(f, _UNARY):
        return type(f)(substitute(f.arg, mapping))
    return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))


# ---------------------------------------------------------------------------
# Signature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Atom inventory plus orthocomplement pairs used by ``~2``.

    ``perp`` is stored symmetrically: declaring ``(a, b)`` makes both
    ``perp_of("a") == "b"`` and ``perp_of("b") == "a"``.
    """

    atoms: frozenset = frozenset()
    perp: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        perp = dict(self.perp)
        for a, b in list(perp.items()):
            if a == b:
                raise ValueError(f"atom {a!r} cannot be its own orthocomplement")
            if perp.setdefault(b, a) != a:
                raise ValueError(f"conflicting orthocomplements for {b!r}")
        object.__setattr__(self, "perp", perp)
        object.__setattr__(self, "atoms", frozenset(self.atoms) | frozenset(perp))

    @classmethod
    def from_pairs(cls, atoms: Iterable[str] = (), perp: Iterable[tuple[str, str]] = ()) -> "Signature":
        table: dict[str, str] = {}
        for a, b in perp:
            if a == b:
                raise ValueError(f"atom {a!r} cannot be its own orthocomplement")
            for x, y in ((a, b), (b, a)):
                if table.setdefault(x, y) != y:
                    raise ValueError(f"conflicting orthocomplements for {x!r}")
        return cls(frozenset(atoms), table)

    def perp_of(self, name: str) -> str | None:
        return self.perp.get(name)

    def pairs(self) -> list[tuple[str, str]]:
        """Each declared pair once, in sorted order."""
        return sorted((a, b) for a, b in self.perp.items() if a < b)

    def with_atoms(self, names: Iterable[str]) -> "Signature":
        return Signature(self.atoms | frozenset(names), self.perp)

    def __hash__(self):
        return hash((self.atoms, tuple(sorted(self.perp.items()))))


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class FormulaError(ValueError):
    """Base class for parse and well-formedness errors."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class FormulaSyntaxError(FormulaError):
    pass


class UnknownAtom(FormulaError):
    pass


class DuplicateStarOperand(FormulaError):
    pass


class StarOnMolecular(FormulaError):
    pass


class MOnMolecular(FormulaError):
    pass


class Neg2OnNonAtom(FormulaError):
    pass


class Neg2Undeclared(FormulaError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    node: Formula
    message: str

    def exception(self) -> FormulaError:
        return _VIOLATION_ERRORS[self.kind](self.message)


_VIOLATION_ERRORS = {
    "DuplicateStarOperand": DuplicateStarOperand,
    "StarOnMolecular": StarOnMolecular,
    "MOnMolecular": MOnMolecular,
}


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

def _postorder(f: Formula) -> Iterator[Formula]:
    for c in children(f):
        yield from _postorder(c)
    yield f


def subformulas(f: Formula) -> list[Formula]:
    """All subformulas of ``f``, ``f`` included, deduplicated, post-order."""
    return list(dict.fromkeys(_postorder(f)))


def basic_subformulas(formulas: Iterable[Formula]) -> list[Formula]:
    """Basic subformulas of several formulas, deduplicated, post-order.

    Closed under subformula, since every subformula of a basic formula is
    basic.
    """
    seen: dict[Formula, None] = {}
    for f in formulas:
        for g in _postorder(f):
            if is_basic(g):
                seen.setdefault(g, None)
    return list(seen)


def atoms_of(f: Formula) -> list[str]:
    return list(dict.fromkeys(g.name for g in _postorder(f) if isinstance(g, Atom)))


def is_basic(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Star):
        return is_basic(f.left) and is_basic(f.right)
    return False


def _star_violation(s: Star) -> Violation | None:
    if not (is_basic(s.left) and is_basic(s.right)):
        return Violation("StarOnMolecular", s,
                         f"superposition of non-basic formula in {render(s)}")
    shared = set(subformulas(s.left)) & set(subformulas(s.right))
    if shared:
        first = min(shared, key=render)
        return Violation("DuplicateStarOperand", s,
                         f"operands of {render(s)} share subformula {render(first)}")
    return None


def _meas_violation(m: Meas) -> Violation | None:
    if not is_basic(m.arg):
        return Violation("MOnMolecular", m, f"M applied to non-basic formula {render(m.arg)}")
    return None


def well_formed(f: Formula) -> list[Violation]:
    """Every violation in ``f``; an empty list means well formed."""
    out = []
    for g in subformulas(f):
        v = None
        if isinstance(g, Star):
            v = _star_violation(g)
        elif isinstance(g, Meas):
            v = _meas_violation(g)
        if v is not None:
            out.append(v)
    return out


def check_well_formed(f: Formula) -> Formula:
    """Return ``f`` unchanged or raise the first violation."""
    violations = well_formed(f)
    if violations:
        raise violations[0].exception()
    return f


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

_BIN_TOKENS = {Star: "*", And: "&", Or: "\\/"}
_UN_TOKENS = {Neg: "~", Diamond: "<>", Meas: "M"}


def render(f: Formula) -> str:
    """Fully parenthesized surface text; ``parse(render(f)) == f``.

    Binary nodes carry their own parentheses; a unary operand is wrapped
    only when it is itself unary.
    """
    if isinstance(f, Atom):
        return f"|{f.name}>"
    if isinstance(f, _UNARY):
        inner = render(f.arg)
        if isinstance(f.arg, _UNARY):
            inner = f"({inner})"
        return _UN_TOKENS[type(f)] + inner
    return f"({render(f.left)} {_BIN_TOKENS[type(f)]} {render(f.right)})"


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ket>\|[A-Za-z0-9_]+>)
  | (?P<op><->|<>|->|\[\]|\\/|~2|~3|~|\*|&|M|\(|\))
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.group(), pos))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature | None, strict: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.strict = strict

    @property
    def tok(self) -> str:
        return self.tokens[self.i][0]

    @property
    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> tuple[str, int]:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, tok: str) -> None:
        if self.tok != tok:
            raise FormulaSyntaxError(f"expected {tok!r}, found {self.tok!r}", self.pos)
        self.i += 1

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok != "<eof>":
            raise FormulaSyntaxError(f"unexpected token {self.tok!r}", self.pos)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.tok == "<->":
            self.take()
            f = iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.tok == "->":
            self.take()
            return implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.tok == "\\/":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.star()
        while self.tok == "&":
            self.take()
            f = And(f, self.star())
        return f

    def star(self) -> Formula:
        f = self.unary()
        while self.tok == "*":
            _, at = self.take()
            s = Star(f, self.unary())
            v = _star_violation(s)
            if v is not None:
                raise _VIOLATION_ERRORS[v.kind](v.message, at)
            f = s
        return f

    def unary(self) -> Formula:
        tok, at = self.tokens[self.i]
        if tok == "~":
            self.take()
            return Neg(self.unary())
        if tok == "<>":
            self.take()
            return Diamond(self.unary())
        if tok == "[]":
            self.take()
            return box(self.unary())
        if tok == "~3":
            self.take()
            return neg3(self.unary())
        if tok == "M":
            self.take()
            m = Meas(self.unary())
            v = _meas_violation(m)
            if v is not None:
                raise MOnMolecular(v.message, at)
            return m
        if tok == "~2":
            self.take()
            arg = self.unary()
            if not isinstance(arg, Atom):
                raise Neg2OnNonAtom(f"~2 applied to non-atom {render(arg)}", at)
            partner = self.sig.perp_of(arg.name) if self.sig is not None else None
            if partner is None:
                raise Neg2Undeclared(f"no orthocomplement declared for {render(arg)}", at)
            return Atom(partner)
        return self.primary()

    def primary(self) -> Formula:
        tok, at = self.take()
        if tok.startswith("|"):
            name = tok[1:-1]
            if self.strict and self.sig is not None and name not in self.sig.atoms:
                raise UnknownAtom(f"atom {tok} is not in the signature", at)
            return Atom(name)
        if tok == "(":
            f = self.iff()
            self.expect(")")
            return f
        raise FormulaSyntaxError(f"unexpected token {tok!r}", at)


def parse(text: str, sig: Signature | None = None, *, strict: bool | None = None) -> Formula:
    """Parse surface text into the canonical AST.

    With a signature, unknown kets raise ``UnknownAtom`` unless
    ``strict=False``.  An empty signature (or none) accepts any atom.
    ``~2`` always needs a signature declaring the partner.
    """
    if strict is None:
        strict = sig is not None and bool(sig.atoms)
    f = _Parser(text, sig, strict).parse()
    return check_well_formed(f)
