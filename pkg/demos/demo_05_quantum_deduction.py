"""
Quantum deduction without explosion
===================================

A conclusion follows when it is a member of the premises, a thesis, or the
consequence of a satisfiable selection of premises.  Contradictory premises
therefore do not entail everything.
"""

from qslogic import SearchBound, Signature, check_nonadjunction, parse, quantum_derives

sig = Signature.from_pairs(["p", "q"], [])
bound = SearchBound(2, "S5")
gamma = [parse("|p>"), parse("~3 |p>")]

for alpha in ["|p> & ~3 |p>", "|q>", "~|q>", "|p> & ~|p>"]:
    result = quantum_derives(gamma, parse(alpha), bound, sig)
    print(f"{alpha:14s} {result.answer.value}")
    for line in result.trace.lines():
        print("   ", line)

report = check_nonadjunction()
print("non-adjunction report ok:", report.ok, f"({len(report.results)} checks)")
