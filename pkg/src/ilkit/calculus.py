"""Hilbert-style proof checking.

A proof is a list of steps, each carrying its conclusion and one of five
justifications: a propositional tautology, an instance of a named axiom
schema (K, GL, J1..J5), modus ponens from two earlier steps, necessitation
of an earlier step (disallowed once hypotheses are present), or a copy of a
hypothesis.  Tautology steps are verified semantically — truth tables over
the step's maximal box/``|>``/atom subterms treated as opaque components —
so no particular propositional axiom basis is baked in; steps with more
than 16 distinct components are rejected rather than guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (BOT, Atom, Bottom, Box, Formula, Implies, Rhd, conj, dia,
                      disj, iff, neg, parse, to_str)

TAUT_COMPONENT_LIMIT = 16


@dataclass(frozen=True, slots=True)
class Taut:
    pass


@dataclass(frozen=True, slots=True)
class AxiomInstance:
    schema: str


@dataclass(frozen=True, slots=True)
class MP:
    premise: int
    implication: int


@dataclass(frozen=True, slots=True)
class Nec:
    premise: int


@dataclass(frozen=True, slots=True)
class Hyp:
    index: int


@dataclass(frozen=True, slots=True)
class ProofStep:
    conclusion: Formula
    rule: object


@dataclass(frozen=True)
class Proof:
    hypotheses: tuple
    steps: tuple


@dataclass(frozen=True)
class ProofVerdict:
    valid: bool
    conclusion: Formula | None = None
    failed_step: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.valid


_A, _B, _C = Atom("alpha"), Atom("beta"), Atom("gamma")
_META = ("alpha", "beta", "gamma")

SCHEMAS = {
    "K": Implies(Box(Implies(_A, _B)), Implies(Box(_A), Box(_B))),
    "GL": Implies(Box(Implies(Box(_A), _A)), Box(_A)),
    "J1": Implies(Box(Implies(_A, _B)), Rhd(_A, _B)),
    "J2": Implies(conj(Rhd(_A, _B), Rhd(_B, _C)), Rhd(_A, _C)),
    "J3": Implies(conj(Rhd(_A, _C), Rhd(_B, _C)), Rhd(disj(_A, _B), _C)),
    "J4": Implies(Rhd(_A, _B), Implies(dia(_A), dia(_B))),
    "J5": Rhd(dia(_A), _A),
}


def match_schema(pattern: Formula, candidate: Formula, binding=None):
    """Substitution sending the schema to the candidate, or None.

    Metavariables are the pattern atoms named alpha/beta/gamma; repeated
    occurrences must bind the same subformula.
    """
    if binding is None:
        binding = {}
    if isinstance(pattern, Atom) and pattern.name in _META:
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = candidate
            return binding
        return binding if bound == candidate else None
    if isinstance(pattern, (Atom, Bottom)):
        return binding if pattern == candidate else None
    if type(pattern) is not type(candidate):
        return None
    if isinstance(pattern, Box):
        return match_schema(pattern.body, candidate.body, binding)
    if match_schema(pattern.lhs, candidate.lhs, binding) is None:
        return None
    return match_schema(pattern.rhs, candidate.rhs, binding)


def instantiate(pattern: Formula, binding: dict) -> Formula:
    if isinstance(pattern, Atom) and pattern.name in _META:
        return binding[pattern.name]
    if isinstance(pattern, (Atom, Bottom)):
        return pattern
    if isinstance(pattern, Box):
        return Box(instantiate(pattern.body, binding))
    if isinstance(pattern, Implies):
        return Implies(instantiate(pattern.lhs, binding),
                       instantiate(pattern.rhs, binding))
    return Rhd(instantiate(pattern.lhs, binding),
               instantiate(pattern.rhs, binding))


def axiom_instance(schema: str, **binding) -> Formula:
    return instantiate(SCHEMAS[schema], binding)


def _components(f, acc):
    if isinstance(f, Implies):
        _components(f.lhs, acc)
        _components(f.rhs, acc)
    elif not isinstance(f, Bottom):
        # atoms, boxes and |>-formulas are opaque to the propositional layer
        if f not in acc:
            acc[f] = len(acc)


def is_tautology(f: Formula):
    """True/False, or None when the component cap is exceeded."""
    acc = {}
    _components(f, acc)
    if len(acc) > TAUT_COMPONENT_LIMIT:
        return None

    def ev(g, bits):
        if isinstance(g, Bottom):
            return False
        if isinstance(g, Implies):
            return not ev(g.lhs, bits) or ev(g.rhs, bits)
        return bool(bits >> acc[g] & 1)

    return all(ev(f, bits) for bits in range(1 << len(acc)))


def check_proof(p: Proof) -> ProofVerdict:
    """Validate every step; the verdict carries the first failure."""

    def bad(idx, reason):
        return ProofVerdict(False, None, idx, reason)

    if not p.steps:
        return ProofVerdict(False, None, None, "empty proof")
    hyps = tuple(p.hypotheses)
    for idx, step in enumerate(p.steps):
        rule = step.rule
        c = step.conclusion
        if isinstance(rule, Taut):
            t = is_tautology(c)
            if t is None:
                return bad(idx, "tautology check overflow")
            if not t:
                return bad(idx, "not a tautology over opaque components")
        elif isinstance(rule, AxiomInstance):
            pattern = SCHEMAS.get(rule.schema)
            if pattern is None:
                return bad(idx, f"unknown schema {rule.schema!r}")
            if match_schema(pattern, c) is None:
                return bad(idx, f"does not match schema {rule.schema}")
        elif isinstance(rule, MP):
            i, j = rule.premise, rule.implication
            if not (0 <= i < idx and 0 <= j < idx):
                return bad(idx, "modus ponens references a step out of range")
            if p.steps[j].conclusion != Implies(p.steps[i].conclusion, c):
                return bad(idx, "modus ponens mismatch")
        elif isinstance(rule, Nec):
            if hyps:
                return bad(idx, "necessitation not allowed under hypotheses")
            i = rule.premise
            if not 0 <= i < idx:
                return bad(idx, "necessitation references a step out of range")
            if c != Box(p.steps[i].conclusion):
                return bad(idx, "necessitation mismatch")
        elif isinstance(rule, Hyp):
            k = rule.index
            if not 0 <= k < len(hyps):
                return bad(idx, "hypothesis index out of range")
            if c != hyps[k]:
                return bad(idx, "hypothesis mismatch")
        else:
            return bad(idx, f"unknown justification {rule!r}")
    return ProofVerdict(True, p.steps[-1].conclusion)


class ProofBuilder:
    """Grow a proof step by step, failing fast on any illegal move."""

    def __init__(self, hypotheses=()):
        self.hypotheses = tuple(hypotheses)
        self.steps = []

    def _add(self, conclusion, rule):
        self.steps.append(ProofStep(conclusion, rule))
        verdict = check_proof(self.build())
        if not verdict.valid:
            self.steps.pop()
            raise ValueError(f"{verdict.reason}: {to_str(conclusion)}")
        return len(self.steps) - 1

    def taut(self, f):
        return self._add(f, Taut())

    def axiom(self, schema, **binding):
        return self._add(axiom_instance(schema, **binding), AxiomInstance(schema))

    def mp(self, premise, implication):
        imp = self.steps[implication].conclusion
        if not isinstance(imp, Implies) or imp.lhs != self.steps[premise].conclusion:
            raise ValueError("modus ponens does not apply to these steps")
        return self._add(imp.rhs, MP(premise, implication))

    def nec(self, premise):
        return self._add(Box(self.steps[premise].conclusion), Nec(premise))

    def hyp(self, k):
        return self._add(self.hypotheses[k], Hyp(k))

    def taut_mp(self, premises, conclusion):
        """Glue step: assert the implication chain from the given earlier
        steps to ``conclusion`` as one tautology, then discharge each
        premise by modus ponens."""
        f = conclusion
        for i in reversed(premises):
            f = Implies(self.steps[i].conclusion, f)
        idx = self.taut(f)
        for i in premises:
            idx = self.mp(i, idx)
        return idx

    def formula(self, idx):
        return self.steps[idx].conclusion

    def build(self):
        return Proof(self.hypotheses, tuple(self.steps))


def theorem_four(a: Formula) -> Proof:
    """Box is idempotent upward: a proof of ``[]a -> [][]a``.

    Runs the fixed-point trick through chi = a & []a: the schema GL applied
    at chi needs ``[](box chi -> chi)``, which follows from ``a`` once
    ``box chi -> box a`` is available.
    """
    chi = conj(a, Box(a))
    b = ProofBuilder()
    s1 = b.taut(Implies(chi, a))
    s2 = b.nec(s1)
    s3 = b.axiom("K", alpha=chi, beta=a)
    s4 = b.mp(s2, s3)                          # box chi -> box a
    s5 = b.taut(Implies(b.formula(s4), Implies(a, Implies(Box(chi), chi))))
    s6 = b.mp(s4, s5)                          # a -> (box chi -> chi)
    s7 = b.nec(s6)
    s8 = b.axiom("K", alpha=a, beta=Implies(Box(chi), chi))
    s9 = b.mp(s7, s8)                          # box a -> box(box chi -> chi)
    s10 = b.axiom("GL", alpha=chi)
    s11 = b.taut_mp([s9, s10], Implies(Box(a), Box(chi)))
    s12 = b.taut(Implies(chi, Box(a)))
    s13 = b.nec(s12)
    s14 = b.axiom("K", alpha=chi, beta=Box(a))
    s15 = b.mp(s13, s14)                       # box chi -> box box a
    b.taut_mp([s11, s15], Implies(Box(a), Box(Box(a))))
    return b.build()


def theorem_box_iff_rhd(a: Formula) -> Proof:
    """Box through the binary modality: ``[]a <-> (~a |> F)``."""
    na = neg(a)
    nna = neg(na)
    b = ProofBuilder()
    s1 = b.taut(Implies(a, nna))
    s2 = b.nec(s1)
    s3 = b.axiom("K", alpha=a, beta=nna)
    s4 = b.mp(s2, s3)                          # box a -> box ~~a
    s5 = b.axiom("J1", alpha=na, beta=BOT)     # box(~a -> F) -> (~a |> F)
    fwd = b.taut_mp([s4, s5], Implies(Box(a), Rhd(na, BOT)))
    s6 = b.axiom("J4", alpha=na, beta=BOT)     # (~a |> F) -> (<>~a -> <>F)
    s7 = b.taut(neg(BOT))
    s8 = b.nec(s7)                             # box ~F
    s9 = b.taut(Implies(nna, a))
    s10 = b.nec(s9)
    s11 = b.axiom("K", alpha=nna, beta=a)
    s12 = b.mp(s10, s11)                       # box ~~a -> box a
    bwd = b.taut_mp([s6, s8, s12], Implies(Rhd(na, BOT), Box(a)))
    b.taut_mp([fwd, bwd], iff(Box(a), Rhd(na, BOT)))
    return b.build()


def theorem_rhd_refl(a: Formula) -> Proof:
    """``~a |> ~a`` from a tautology, necessitation and J1."""
    na = neg(a)
    b = ProofBuilder()
    s1 = b.taut(Implies(na, na))
    s2 = b.nec(s1)
    s3 = b.axiom("J1", alpha=na, beta=na)
    b.mp(s2, s3)
    return b.build()


def theorem_dia_rhd(a: Formula) -> Proof:
    """``<>a |> a`` is the J5 axiom itself."""
    b = ProofBuilder()
    b.axiom("J5", alpha=a)
    return b.build()


def theorem_rhd_mono(a: Formula, b: Formula, c: Formula) -> Proof:
    """``(b -> c) -> (a |> b -> a |> c)`` for tautologous ``b -> c``.

    The antecedent must be a propositional tautology over opaque
    components — the fully general monotonicity schema is not a theorem
    here (small frames refute it; see the calculus tests), and these
    provable instances are the ones anything downstream relies on.
    """
    pb = ProofBuilder()
    s1 = pb.taut(Implies(b, c))
    s2 = pb.nec(s1)
    s3 = pb.axiom("J1", alpha=b, beta=c)
    s4 = pb.mp(s2, s3)                         # b |> c
    s5 = pb.axiom("J2", alpha=a, beta=b, gamma=c)
    pb.taut_mp([s4, s5], Implies(Implies(b, c), Implies(Rhd(a, b), Rhd(a, c))))
    return pb.build()


def derived_theorems() -> dict:
    """Stock derived laws as name -> (formula, checked proof)."""
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    proofs = {
        "four": theorem_four(p),
        "box-iff-rhd": theorem_box_iff_rhd(p),
        "rhd-refl": theorem_rhd_refl(p),
        "dia-rhd": theorem_dia_rhd(p),
        "rhd-mono": theorem_rhd_mono(p, conj(q, r), disj(q, r)),
    }
    return {name: (proof.steps[-1].conclusion, proof)
            for name, proof in proofs.items()}


def proof_to_dict(p: Proof) -> dict:
    steps = []
    for st in p.steps:
        d = {"formula": to_str(st.conclusion)}
        r = st.rule
        if isinstance(r, Taut):
            d["rule"] = "taut"
        elif isinstance(r, AxiomInstance):
            d["rule"] = "axiom"
            d["schema"] = r.schema
        elif isinstance(r, MP):
            d["rule"] = "mp"
            d["premise"] = r.premise
            d["implication"] = r.implication
        elif isinstance(r, Nec):
            d["rule"] = "nec"
            d["premise"] = r.premise
        elif isinstance(r, Hyp):
            d["rule"] = "hyp"
            d["index"] = r.index
        else:
            raise TypeError(f"unknown justification {r!r}")
        steps.append(d)
    return {"hypotheses": [to_str(h) for h in p.hypotheses], "steps": steps}


def proof_from_dict(d: dict) -> Proof:
    hyps = tuple(parse(h) for h in d.get("hypotheses", ()))
    steps = []
    for sd in d.get("steps", ()):
        kind = sd.get("rule")
        if kind == "taut":
            rule = Taut()
        elif kind == "axiom":
            rule = AxiomInstance(sd["schema"])
        elif kind == "mp":
            rule = MP(int(sd["premise"]), int(sd["implication"]))
        elif kind == "nec":
            rule = Nec(int(sd["premise"]))
        elif kind == "hyp":
            rule = Hyp(int(sd["index"]))
        else:
            raise ValueError(f"unknown rule {kind!r}")
        steps.append(ProofStep(parse(sd["formula"]), rule))
    return Proof(hyps, tuple(steps))
