"""
Parsing and printing formulas
=============================

Kets are written ``|name>``.  Superposition is ``*``, measurement is ``M``,
and the derived connectives expand into the core syntax as they are read.
"""

from qslogic import Signature, parse, render, is_basic, subformulas
from qslogic.formula import FormulaError

# A superposition of two states is a basic formula.
cat = parse("|alive> * |dead>")
print(render(cat), is_basic(cat))

# Box and the third negation are abbreviations, so they disappear on parsing.
print(render(parse("[]|p>")))
print(render(parse("~3 |p>")))

# The arrow is the Sasaki hook ~A \/ (A & B).
print(render(parse("|a> -> |b>")))

# Declaring an orthocomplement pair lets ~2 name the partner state.
sig = Signature.from_pairs(["up", "down"], [("up", "down")])
print(render(parse("~2 |up>", sig)))

# Ill-formed input is reported with a position.
for text in ["|psi> * |psi>", "M (|a> & |b>)", "|a> &"]:
    try:
        parse(text)
    except FormulaError as err:
        print(f"{text!r}: {type(err).__name__}: {err}")

print([render(f) for f in subformulas(parse("(|a> * |b>) * |c>"))])
