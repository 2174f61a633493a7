"""The pencil condition and the non-definability demo pair.

The pencil condition is the first-order frame property

    x R y  &  y S_x z  &  z R u  &  y R v  &  v S_x u   implies   y R u.

``build_demo_pair`` constructs two frames that witness why no modal formula
can pin the condition down: ``bad`` violates it, ``good`` (one extra fan
world and one fewer S-pair) satisfies it vacuously, yet for every valuation
on ``bad`` the transferred valuation on ``good`` makes the paired points
bisimilar — so the two frames force exactly the same formulas where it
matters while sitting on opposite sides of the class boundary.

Frame layout (m = fan size): world 0 = x, 1 = y, 2 = z, 3 = u, and fan
worlds 4..4+m-1 (``good`` appends one more).  R sends x below everything,
y below u, z below the first fan world; S_x relates y to z and u to each
fan world — ``good`` drops the pair into the first fan world, which is
what rescues the condition there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .frames import Frame, Model, WorldSet, complete
from .semantics import check_bisim, equiv_up_to


@dataclass(frozen=True, slots=True)
class PencilWitness:
    x: int
    y: int
    z: int
    u: int
    v: int


@dataclass(frozen=True)
class PencilVerdict:
    in_class: bool
    witness: PencilWitness | None = None

    def __bool__(self):
        return self.in_class


def pencil_check(fr: Frame) -> PencilVerdict:
    """Exhaustive sweep; worlds may coincide.  The witness, if any, is the
    lexicographically first assignment (x, y, z, u, v)."""
    n, r, s = fr.n, fr.r_succ, fr.s_succ
    for x in range(n):
        sx = s[x]
        for y in range(n):
            if not r[x] >> y & 1:
                continue
            for z in range(n):
                if not sx[y] >> z & 1:
                    continue
                for u in range(n):
                    if not r[z] >> u & 1 or r[y] >> u & 1:
                        continue
                    for v in range(n):
                        if r[y] >> v & 1 and sx[v] >> u & 1:
                            return PencilVerdict(False, PencilWitness(x, y, z, u, v))
    return PencilVerdict(True)


class SearchExhausted(RuntimeError):
    pass


def _demo_candidate(m, removed):
    """The two frames with S_x missing the pair into fan world ``removed``
    on the good side, plus the shift pairing."""
    bad_n = 4 + m
    r_pairs = [(0, 1), (0, 2), (1, 3), (2, 4), (0, 3)]
    r_pairs += [(0, 4 + i) for i in range(m)]
    s_bad = [(0, 1, 2)] + [(0, 3, 4 + i) for i in range(m)]
    bad = complete(Frame.build(bad_n, r_pairs, s_bad))

    good_n = bad_n + 1
    r_good = r_pairs + [(0, 4 + m)]
    s_good = [(0, 1, 2)] + [(0, 3, 4 + i) for i in range(m + 1) if i != removed]
    good = complete(Frame.build(good_n, r_good, s_good))

    z_template = tuple((w, w) for w in range(5))
    z_template += tuple((4 + i, 5 + i) for i in range(m))
    return good, bad, z_template


def build_demo_pair(m: int):
    """Returns (good, bad, z_template) for fan size m >= 1.

    Candidates are certified before being handed out: ``bad`` must yield a
    pencil witness, ``good`` must be in the class, and the shift pairing
    must pass a bisimulation spot-check on a handful of valuations.  The
    primary construction drops the S-pair into the first fan world; if it
    ever failed certification, the other drop positions are searched before
    giving up.
    """
    if m < 1:
        raise ValueError("fan size must be at least 1")
    for removed in range(m + 1):
        good, bad, z_template = _demo_candidate(m, removed)
        if pencil_check(bad).in_class or not pencil_check(good).in_class:
            continue
        rng = random.Random(m)
        spot = [0, (1 << bad.n) - 1] + [rng.randrange(1 << bad.n) for _ in range(6)]
        if all(check_bisim(Model(bad, {"p": WorldSet(bad.n, mask)}),
                           Model(good, transfer_valuation({"p": WorldSet(bad.n, mask)}, m)),
                           z_template).ok
               for mask in spot):
            return good, bad, z_template
    raise SearchExhausted(
        f"no certified frame pair with fan size {m} (tried {m + 1} variants)")


def transfer_valuation(ev: dict, m: int) -> dict:
    """Move a valuation across the pairing: shared worlds copy over, the
    first fan world is duplicated onto its shifted image, and every other
    fan world shifts up by one."""
    out = {}
    for name, ws in ev.items():
        bad_mask = ws.mask if isinstance(ws, WorldSet) else int(ws)
        good_mask = bad_mask & 0b11111 | (bad_mask >> 4) << 5
        out[name] = WorldSet(5 + m, good_mask)
    return out


@dataclass
class DemoReport:
    fan: int
    trials: int
    depth: int
    bad_witness: PencilWitness
    good_in_class: bool
    bisim_ok: bool
    equiv_ok: bool
    failure: tuple | None = None

    @property
    def ok(self):
        return self.good_in_class and self.bisim_ok and self.equiv_ok

    def __bool__(self):
        return self.ok


def nondefinability_demo(m: int = 3, trials: int = 100, depth: int = 2,
                         seed: int = 0, size_bound: int = 2) -> DemoReport:
    """Run the whole argument at desk scale.

    Builds the certified pair and, for ``trials`` seeded random valuations
    of two atoms on ``bad``, verifies that the transferred models pass the
    bisimulation check on the pairing and that every paired point forces
    the same formulas up to the given depth and size.  Any failure is
    recorded with its witness and stops the run.
    """
    good, bad, z_template = build_demo_pair(m)
    bad_verdict = pencil_check(bad)
    good_verdict = pencil_check(good)
    report = DemoReport(m, trials, depth, bad_verdict.witness,
                        good_verdict.in_class, True, True)
    if not report.good_in_class:
        report.failure = ("pencil", good_verdict.witness)
        return report
    rng = random.Random(seed)
    atoms = ("p", "q")
    for trial in range(trials):
        ev_bad = {a: WorldSet(bad.n, rng.randrange(1 << bad.n)) for a in atoms}
        ev_good = transfer_valuation(ev_bad, m)
        mb = Model(bad, ev_bad)
        mg = Model(good, ev_good)
        verdict = check_bisim(mb, mg, z_template)
        if not verdict.ok:
            report.bisim_ok = False
            report.failure = ("bisim", trial, ev_bad, verdict)
            return report
        for wb, wg in z_template:
            apart = equiv_up_to(mb, wb, mg, wg, depth, atoms, size_bound)
            if apart is not None:
                report.equiv_ok = False
                report.failure = ("equiv", trial, ev_bad, (wb, wg), apart)
                return report
    return report
