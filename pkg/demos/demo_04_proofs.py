"""
Checking proof scripts
======================

Proofs are numbered lines, each justified by a hypothesis, an axiom
instance, a tautology, modus ponens, necessitation or a duality rewrite.
"""

from pathlib import Path

from qslogic import check_proof, load_script, render, semantic_check, theorem_library

for name, script in theorem_library().items():
    report = check_proof(script)
    print(f"{name:8s} {script.frame_class.value:3s} {report} {semantic_check(script)}")

script = theorem_library()["thm-3.3"]
for n, line in enumerate(script.lines, start=1):
    print(f"{n:2d}. {render(line.formula):40s} {type(line.why).__name__}")

path = Path(__file__).with_name("measured_superposition.json")
print(path.name, check_proof(load_script(path)))
