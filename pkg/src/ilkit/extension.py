"""Ultrafilter extensions of finite Veltman frames.

An extension world pairs an ultrafilter with the path of filter labels that
reached it: the roots are (f, ()) for every ultrafilter f, and whenever
``assuring(fr, f, l, g)`` holds, (f, sigma) spawns (g, sigma + (l,)).  The
edge relation is the transitive closure of those one-step moves, and the
per-world S relation is generated — inside the successor set of (f, sigma)
— by reflexivity, the edge relation itself, and agreement of labels at
position len(sigma).  The recursion bottoms out because a world whose
ultrafilter sits at an R-leaf of the base frame assures nothing, so label
paths never outgrow the longest base R-chain.

The construction also covers the classical unary-modality extension as a
baseline: over a finite frame that one is isomorphic to the frame itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import r_inv_dual_mask, r_inv_mask, s_inv_mask
from .filters import (Filter, Ultrafilter, all_proper_filters, all_ultrafilters,
                      assuring)
from .formula import TOP, conj, dia
from .frames import Frame, Model, WorldSet, _closure, complete
from .semantics import extension as forcing_extension
from .semantics import force


class ResourceLimitError(RuntimeError):
    """The extension would exceed the configured world cap."""


@dataclass(frozen=True, slots=True)
class UEWorld:
    uf: Ultrafilter
    labels: tuple

    def __repr__(self):
        path = ",".join(repr(l) for l in self.labels)
        return f"({self.uf!r},[{path}])"


class UEFrame:
    """Extension frame: the worlds list, their index map, and a plain Frame
    over the indices (so every frame/semantics tool applies directly)."""

    def __init__(self, base, worlds, frame, one_step):
        self.base = base
        self.worlds = list(worlds)
        self.frame = frame
        self.one_step = tuple(one_step)
        self.index = {w: i for i, w in enumerate(self.worlds)}

    def __len__(self):
        return len(self.worlds)


def build_ue(base: Frame, labels=None, max_worlds: int = 100_000) -> UEFrame:
    """Construct the extension of a frame.

    ``labels`` restricts the label alphabet (default: every proper filter).
    Worlds are discovered level by level — all label paths of one length
    before any longer path — parents in index order and, per parent, labels
    by minimum mask, target ultrafilters by witness.  Exceeding
    ``max_worlds`` raises ResourceLimitError rather than truncating.
    """
    if labels is None:
        labels = all_proper_filters(base.n)
    else:
        labels = list(labels)
        for l in labels:
            if not l.is_proper:
                raise ValueError("labels must be proper filters")
    ufs = all_ultrafilters(base)
    worlds = [UEWorld(uf, ()) for uf in ufs]
    index = {w: i for i, w in enumerate(worlds)}
    memo = {}

    def assures(f, l, g):
        key = (f.witness, l.min_mask, g.witness)
        got = memo.get(key)
        if got is None:
            got = memo[key] = assuring(base, f, l, g)
        return got

    one_step = []
    frontier = list(worlds)
    while frontier:
        fresh = []
        for w in frontier:
            wi = index[w]
            for l in labels:
                for g in ufs:
                    if not assures(w.uf, l, g):
                        continue
                    child = UEWorld(g, w.labels + (l,))
                    ci = index.get(child)
                    if ci is None:
                        if len(worlds) >= max_worlds:
                            raise ResourceLimitError(
                                f"extension exceeds {max_worlds} worlds; "
                                "raise the cap or restrict the labels")
                        ci = len(worlds)
                        index[child] = ci
                        worlds.append(child)
                        fresh.append(child)
                    one_step.append((wi, ci))
        frontier = fresh

    n = len(worlds)
    r = [0] * n
    for i, j in one_step:
        r[i] |= 1 << j
    _closure(r)
    s_rows = []
    for i, w in enumerate(worlds):
        succ = r[i]
        k = len(w.labels)
        rows = [0] * n
        members = [j for j in range(n) if succ >> j & 1]
        cliques = {}
        for j in members:
            lj = worlds[j].labels[k]
            cliques[lj] = cliques.get(lj, 0) | 1 << j
        for j in members:
            rows[j] = (1 << j) | (r[j] & succ) | cliques[worlds[j].labels[k]]
        # Warshall restricted to the successor set; rows elsewhere are empty
        for j in members:
            bit = 1 << j
            rj = rows[j]
            for j2 in members:
                if rows[j2] & bit:
                    rows[j2] |= rj
        s_rows.append(tuple(rows))
    frame = Frame(n, tuple(r), tuple(s_rows))
    return UEFrame(base, worlds, frame, one_step)


@dataclass
class UEModel:
    ue: UEFrame
    model: Model


def build_ue_model(m: Model, labels=None, max_worlds: int = 100_000) -> UEModel:
    """Extension of a model: a world holds an atom iff the atom's base
    extension belongs to the world's ultrafilter."""
    ue = build_ue(m.frame, labels, max_worlds)
    ev = {}
    for name, ws in m.ev.items():
        mask = 0
        for i, w in enumerate(ue.worlds):
            if w.uf.contains(ws):
                mask |= 1 << i
        ev[name] = WorldSet(len(ue.worlds), mask)
    return UEModel(ue, Model(ue.frame, ev))


def ue_force(um: UEModel, w, f) -> bool:
    """Forcing inside the extension; ``w`` is a UEWorld or an index."""
    i = um.ue.index[w] if isinstance(w, UEWorld) else w
    return force(um.model, i, f)


@dataclass(frozen=True)
class UEVerdict:
    ok: bool
    detail: tuple | None = None

    def __bool__(self):
        return self.ok


def check_truth_theorem(m: Model, pool, ue_model: UEModel = None) -> UEVerdict:
    """Base and extension agree: world x forces a pool formula exactly when
    every extension world built on the ultrafilter at x does."""
    um = ue_model if ue_model is not None else build_ue_model(m)
    base_cache, ue_cache = {}, {}
    for f in pool:
        base_ext = forcing_extension(m, f, base_cache)
        ue_ext = forcing_extension(um.model, f, ue_cache)
        for i, w in enumerate(um.ue.worlds):
            if (i in ue_ext) != (w.uf.witness in base_ext):
                return UEVerdict(False, (w.uf.witness, w, f))
    return UEVerdict(True)


def check_saturation(um: UEModel, pool, pool_limit: int = 12) -> UEVerdict:
    """Modal saturation over a finite pool.

    A set of pool formulas is locally possible at a world when, for every
    finite subset, the diamond of its conjunction is forced there; the
    model is saturated when each such set is jointly forced at a single
    successor.  The detail of a failure is (world, offending tuple).
    """
    pool = list(pool)
    if len(pool) > pool_limit:
        raise ValueError(f"pool of {len(pool)} formulas means "
                         f"2^{len(pool)} subsets; limit is {pool_limit}")
    model = um.model
    cache = {}
    conj_mask = {}
    dia_mask = {}
    for bits in range(1 << len(pool)):
        g = TOP
        chosen = [pool[t] for t in range(len(pool)) if bits >> t & 1]
        for h in chosen:
            g = h if g is TOP else conj(g, h)
        conj_mask[bits] = forcing_extension(model, g, cache).mask
        dia_mask[bits] = forcing_extension(model, dia(g), cache).mask
    for i in range(model.frame.n):
        succ = model.frame.r_succ[i]
        for bits in range(1 << len(pool)):
            possible = True
            sub = bits
            while True:
                if not dia_mask[sub] >> i & 1:
                    possible = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & bits
            if possible and succ & conj_mask[bits] == 0:
                sigma = tuple(pool[t] for t in range(len(pool)) if bits >> t & 1)
                return UEVerdict(False, (um.ue.worlds[i], sigma))
    return UEVerdict(True)


def check_label_saturation(fr: Frame, member_limit: int = 8) -> UEVerdict:
    """If every finite subfamily of a proper filter label admits an assured
    successor, the whole filter does.  Checked literally: the hypothesis
    ranges over all subfamilies of the filter's member list."""
    ufs = all_ultrafilters(fr)
    full = fr.full_mask
    sinv = {}

    def sinv_at(x, y):
        got = sinv.get((x, y))
        if got is None:
            got = sinv[(x, y)] = s_inv_mask(fr, x, y)
        return got

    rdual = [r_inv_dual_mask(fr, a) for a in range(1 << fr.n)]

    def family_ok(f, member_masks, g):
        unions = {0}
        for m in member_masks:
            c = full & ~m
            unions |= {u | c for u in unions}
        for amask in range(1 << fr.n):
            abar = full & ~amask
            if any(sinv_at(abar, u) >> f.witness & 1 for u in unions):
                if not (amask >> g.witness & 1 and rdual[amask] >> g.witness & 1):
                    return False
        return True

    for l in all_proper_filters(fr.n):
        members = [ws.mask for ws in l.members()]
        if len(members) > member_limit:
            raise ValueError(f"filter has {len(members)} members; "
                             f"limit is {member_limit}")
        for f in ufs:
            hypothesis = all(
                any(family_ok(f, [members[t] for t in range(len(members))
                                  if bits >> t & 1], g)
                    for g in ufs)
                for bits in range(1 << len(members)))
            if hypothesis and not any(family_ok(f, [l.min_mask], h) for h in ufs):
                return UEVerdict(False, (f, l))
    return UEVerdict(True)


def find_assured_successor(fr: Frame, f: Ultrafilter, l: Filter,
                           a: WorldSet, b: WorldSet):
    """Witness for the successor-transfer law.

    Preconditions (ValueError if unmet): the set of worlds moving their
    a-successors into b lies in f, and some assured successor of f under l
    holds a.  Returns the first assured successor holding b, or None —
    and None here means a genuine counterexample, which the test suite
    treats as a failure.
    """
    if not s_inv_mask(fr, a.mask, b.mask) >> f.witness & 1:
        raise ValueError("precondition: transfer set not in the source ultrafilter")
    ufs = all_ultrafilters(fr)
    if not any(assuring(fr, f, l, g) and g.contains(a) for g in ufs):
        raise ValueError("precondition: no assured successor holds the source set")
    for h in ufs:
        if assuring(fr, f, l, h) and h.contains(b):
            return h
    return None


def witness_from_negated(fr: Frame, f: Ultrafilter, a: WorldSet, b: WorldSet):
    """Witness extraction from a negated transfer set.

    Precondition (ValueError if unmet): the complement of the transfer set
    for (a, b) lies in f.  Searches for a pair (g, l) with a in g, the
    complement of b a member of l, and g an assured successor under l;
    labels are tried by minimum mask, ultrafilters by witness.
    """
    full = fr.full_mask
    if not (full & ~s_inv_mask(fr, a.mask, b.mask)) >> f.witness & 1:
        raise ValueError("precondition: complemented transfer set not in f")
    bbar = full & ~b.mask
    for l in all_proper_filters(fr.n):
        if l.min_mask & ~bbar:
            continue
        for g in all_ultrafilters(fr):
            if g.contains(a) and assuring(fr, f, l, g):
                return (g, l)
    return None


@dataclass
class ClassicalUE:
    frame: Frame
    witnesses: tuple
    model: Model | None = None


def classical_ue(fr: Frame, m: Model = None) -> ClassicalUE:
    """The classical unary-modality extension, by the book.

    Worlds are the ultrafilters (indexed by witness); f sees g exactly when
    every set in g has its R-preimage in f, checked literally against all
    subsets.  The S component is completed minimally from the edge relation
    since only the box fragment is meaningful here.
    """
    ufs = all_ultrafilters(fr)
    n = fr.n
    pairs = []
    for f in ufs:
        for g in ufs:
            if all(not g.contains(x) or f.contains(r_inv_mask(fr, x))
                   for x in range(1 << n)):
                pairs.append((f.witness, g.witness))
    frame = complete(Frame.build(n, pairs))
    model = None
    if m is not None:
        ev = {}
        for name, ws in m.ev.items():
            mask = 0
            for f in ufs:
                if f.contains(ws):
                    mask |= 1 << f.witness
            ev[name] = WorldSet(n, mask)
        model = Model(frame, ev)
    return ClassicalUE(frame, tuple(f.witness for f in ufs), model)


def ue_to_dict(ue: UEFrame) -> dict:
    """JSON-ready shape: worlds with their witness and label minimum sets,
    the edge list, and the per-world S families."""
    worlds = [{"ultrafilter_witness": w.uf.witness,
               "label_min_sets": [sorted(l.min_set()) for l in w.labels]}
              for w in ue.worlds]
    edges = [[i, j] for i, j in ue.frame.r_pairs()]
    s_families = {str(i): [[u, v] for u, v in ue.frame.s_pairs(i)]
                  for i in range(len(ue.worlds)) if ue.frame.r_succ[i]}
    return {"base_worlds": ue.base.n, "worlds": worlds,
            "edges": edges, "s_families": s_families}


def ue_to_dot(ue: UEFrame, name: str = "ue") -> str:
    def tag(w):
        mins = ";".join("{" + ",".join(map(str, l.min_set())) + "}"
                        for l in w.labels)
        return f"U{w.uf.witness}" + (f" [{mins}]" if mins else "")

    lines = [f"digraph {name} {{"]
    for i, w in enumerate(ue.worlds):
        lines.append(f'  {i} [label="{tag(w)}"];')
    for i, j in ue.frame.r_pairs():
        lines.append(f"  {i} -> {j};")
    for w in range(len(ue.worlds)):
        for i, j in ue.frame.s_pairs(w):
            if i != j:
                lines.append(f'  {i} -> {j} [style=dashed, label="S({w})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
