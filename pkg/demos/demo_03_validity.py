"""
Bounded validity and countermodels
==================================

Validity is checked by enumerating every admissible model up to a number of
worlds.  A positive answer means "valid up to the bound"; a negative answer
comes with a concrete countermodel.
"""

from qslogic import SearchBound, check_validity, dump_model, is_satisfiable, parse

for text, cls in [
    ("M |psi> -> |psi>", "T"),
    ("|psi1> * |psi2> -> ~|psi1> & ~|psi2>", "T"),
    ("M(|psi1> * |psi2>) -> ~<>(|psi1> & |psi2>)", "K"),
    ("<>|p> -> []<>|p>", "S4"),
    ("<>|p> -> []<>|p>", "S5"),
]:
    print(f"{text:48s} {cls:3s} {check_validity(parse(text), SearchBound(3, cls))}")

verdict = check_validity(parse("<>|p> -> []|p>"), SearchBound(2, "T"))
print("countermodel at", verdict.world)
print(dump_model(verdict.model))

# The subcontrary pair p, ~3 p can hold together.
print(is_satisfiable([parse("|p>"), parse("~3 |p>")], SearchBound(2, "S5")))
