"""
Hilbert-style proofs, checked step by step
==========================================

The calculus is GL plus the J axioms for the binary modality, with modus
ponens and necessitation.  Tautology steps are discharged semantically
over opaque components, so no propositional axiom base needs memorizing.
"""

import json

from ilkit import (
    ProofBuilder, TOP, check_proof, derived_theorems, parse, proof_to_dict,
    to_str,
)
from ilkit.formula import Implies

# T |> T in four lines: tautology, necessitation, J1, modus ponens.
b = ProofBuilder()
s1 = b.taut(Implies(TOP, TOP))
s2 = b.nec(s1)
s3 = b.axiom("J1", alpha=TOP, beta=TOP)
b.mp(s2, s3)
verdict = check_proof(b.build())
print("proved:", to_str(verdict.conclusion), "->", verdict.valid)

# The builder refuses illegal moves immediately and leaves the proof
# untouched, so a typo cannot smuggle in a false lemma.
try:
    b.taut(parse("[]p"))
except ValueError as exc:
    print("rejected step:", exc)

# Stock theorems ship with their full proofs; "four" is the classic
# fixed-point derivation of []p -> [][]p from GL.
for name, (conclusion, proof) in derived_theorems().items():
    v = check_proof(proof)
    print(f"{name:>12}: {to_str(conclusion)}  "
          f"[{len(proof.steps)} steps, valid={v.valid}]")

# Proofs serialize to JSON for the `ilkit prove-check` subcommand.
payload = proof_to_dict(derived_theorems()["rhd-refl"][1])
print(json.dumps(payload, indent=1)[:200], "...")
