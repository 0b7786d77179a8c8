"""
The cat model
=============

Three worlds: ``w0`` holds the superposition of a live and a dead cat, and
measurement leads to ``w1`` (alive) or ``w2`` (dead).
"""

from qslogic import (
    cat_model, check_acceptability, check_frame_class, eval_formula, euclidean_closure,
    missing_euclidean_edges, parse, dump_model,
)

m = cat_model()
print(dump_model(m))

# The valuation is acceptable: the superposed world makes neither component true.
print("violations:", check_acceptability(m))

for text in ["M (|alive> * |dead>)", "<>|alive> & <>|dead>", "|alive> \\/ |dead>"]:
    f = parse(text)
    print(text, {w: eval_formula(m, w, f) for w in m.worlds})

# The frame is reflexive and transitive but the branches do not see each other.
report = check_frame_class(m.frame, "S5")
print("missing for S5:", report.missing)
print("edges the Euclidean closure would add:", sorted(missing_euclidean_edges(m.frame)))
print("closed frame Euclidean:", euclidean_closure(m.frame).is_euclidean())
