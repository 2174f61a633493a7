"""Forcing semantics over finite Veltman models.

The binary modality is read existentially through the per-world relation:
``w`` forces ``a |> b`` when every R-successor of ``w`` forcing ``a`` has an
S_w-successor forcing ``b``.  Extensions are computed bottom-up as bitmasks,
so model checking a formula costs one pass over its subterms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Atom, Bottom, Box, Formula, Implies, Rhd, enumerate_formulas
from .frames import Frame, Model, WorldSet

VALUATION_BITS_LIMIT = 20


def _extension_mask(m: Model, f: Formula, cache) -> int:
    got = cache.get(f)
    if got is not None:
        return got
    fr = m.frame
    full = fr.full_mask
    if isinstance(f, Atom):
        mask = m.ev_mask(f.name)
    elif isinstance(f, Bottom):
        mask = 0
    elif isinstance(f, Implies):
        mask = (full & ~_extension_mask(m, f.lhs, cache)) | _extension_mask(m, f.rhs, cache)
    elif isinstance(f, Box):
        body = _extension_mask(m, f.body, cache)
        mask = 0
        for w in range(fr.n):
            if fr.r_succ[w] & ~body == 0:
                mask |= 1 << w
    elif isinstance(f, Rhd):
        amask = _extension_mask(m, f.lhs, cache)
        bmask = _extension_mask(m, f.rhs, cache)
        mask = 0
        for w in range(fr.n):
            hits = fr.r_succ[w] & amask
            ok = True
            u = 0
            while hits:
                if hits & 1 and fr.s_succ[w][u] & bmask == 0:
                    ok = False
                    break
                hits >>= 1
                u += 1
            if ok:
                mask |= 1 << w
    else:
        raise TypeError(f"not a formula node: {f!r}")
    cache[f] = mask
    return mask


def extension(m: Model, f: Formula, cache=None) -> WorldSet:
    """The set of worlds forcing ``f``."""
    if cache is None:
        cache = {}
    return WorldSet(m.frame.n, _extension_mask(m, f, cache))


def force(m: Model, w: int, f: Formula, cache=None) -> bool:
    return w in extension(m, f, cache)


def model_valid(m: Model, f: Formula) -> bool:
    return extension(m, f).mask == m.frame.full_mask


@dataclass(frozen=True)
class FrameVerdict:
    valid: bool
    ev: dict | None = None
    world: int | None = None

    def __bool__(self):
        return self.valid


def frame_valid(fr: Frame, f: Formula, bits_limit=VALUATION_BITS_LIMIT) -> FrameVerdict:
    """Validity of ``f`` on the frame: quantify over all valuations.

    Valuations are swept as integers whose bits lay out the atom masks
    atom-major, world-minor (sorted atoms), so the reported counterexample
    is the one with the smallest such integer, then the smallest world.
    """
    names = sorted(set(a.name for a in _atoms_of(f)))
    n = fr.n
    bits = len(names) * n
    if bits > bits_limit:
        raise ValueError(
            f"refusing to sweep 2^{bits} valuations (limit 2^{bits_limit})")
    for vid in range(1 << bits):
        ev = {name: WorldSet(n, vid >> i * n & fr.full_mask)
              for i, name in enumerate(names)}
        got = extension(Model(fr, ev), f)
        if got.mask != fr.full_mask:
            world = min(w for w in range(n) if not got.mask >> w & 1)
            return FrameVerdict(False, ev, world)
    return FrameVerdict(True)


def _atoms_of(f):
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, (Implies, Rhd)):
        yield from _atoms_of(f.lhs)
        yield from _atoms_of(f.rhs)
    elif isinstance(f, Box):
        yield from _atoms_of(f.body)


@dataclass(frozen=True)
class BisimVerdict:
    ok: bool
    pair: tuple | None = None
    clause: str | None = None   # "atoms" | "forth" | "back"
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _zigzag_ok(ml, wl, ul, mr, wr, z_fwd):
    """One direction of the inner clause: choose a partner for ul among the
    R-successors of wr such that every S-successor on the right is matched
    by an S-successor on the left."""
    frl, frr = ml.frame, mr.frame
    for ur in range(frr.n):
        if not frr.r_succ[wr] >> ur & 1 or ur not in z_fwd.get(ul, ()):
            continue
        good = True
        for vr in range(frr.n):
            if not frr.s_succ[wr][ur] >> vr & 1:
                continue
            if not any(frl.s_succ[wl][ul] >> vl & 1 and vr in z_fwd.get(vl, ())
                       for vl in range(frl.n)):
                good = False
                break
        if good:
            return True
    return False


def check_bisim(ml: Model, mr: Model, z) -> BisimVerdict:
    """Check that the pair set ``z`` is a bisimulation between the models.

    Reports the first failing pair with the broken clause: ``atoms`` (the
    two worlds disagree on some atom), ``forth`` (an R-successor on the left
    has no matching successor on the right whose S-successors can all be
    pulled back), or ``back`` (the mirror image).  The witness is the
    orphaned successor.
    """
    pairs = sorted(set(z))
    z_fwd = {}
    z_bwd = {}
    for wl, wr in pairs:
        z_fwd.setdefault(wl, set()).add(wr)
        z_bwd.setdefault(wr, set()).add(wl)
    names = sorted(set(ml.ev) | set(mr.ev))
    for wl, wr in pairs:
        for name in names:
            if (wl in ml.ev_set(name)) != (wr in mr.ev_set(name)):
                return BisimVerdict(False, (wl, wr), "atoms", (name,))
        for ul in range(ml.frame.n):
            if ml.frame.r_succ[wl] >> ul & 1:
                if not _zigzag_ok(ml, wl, ul, mr, wr, z_fwd):
                    return BisimVerdict(False, (wl, wr), "forth", (ul,))
        for ur in range(mr.frame.n):
            if mr.frame.r_succ[wr] >> ur & 1:
                if not _zigzag_ok(mr, wr, ur, ml, wl, z_bwd):
                    return BisimVerdict(False, (wl, wr), "back", (ur,))
    return BisimVerdict(True)


def max_bisim(ml: Model, mr: Model) -> frozenset:
    """The largest bisimulation between the models (greatest fixpoint)."""
    names = sorted(set(ml.ev) | set(mr.ev))
    pairs = set()
    for wl in range(ml.frame.n):
        for wr in range(mr.frame.n):
            if all((wl in ml.ev_set(a)) == (wr in mr.ev_set(a)) for a in names):
                pairs.add((wl, wr))
    while True:
        z_fwd = {}
        z_bwd = {}
        for wl, wr in pairs:
            z_fwd.setdefault(wl, set()).add(wr)
            z_bwd.setdefault(wr, set()).add(wl)
        keep = set()
        for wl, wr in pairs:
            ok = all(_zigzag_ok(ml, wl, ul, mr, wr, z_fwd)
                     for ul in range(ml.frame.n)
                     if ml.frame.r_succ[wl] >> ul & 1)
            ok = ok and all(_zigzag_ok(mr, wr, ur, ml, wl, z_bwd)
                            for ur in range(mr.frame.n)
                            if mr.frame.r_succ[wr] >> ur & 1)
            if ok:
                keep.add((wl, wr))
        if keep == pairs:
            return frozenset(pairs)
        pairs = keep


def equiv_up_to(ml: Model, wl: int, mr: Model, wr: int, depth: int,
                pool=None, size_bound: int = 3):
    """First formula within the bounds telling the two points apart, or None.

    ``pool`` defaults to the atoms named by either model.
    """
    if pool is None:
        pool = set(ml.ev) | set(mr.ev)
    cl, cr = {}, {}
    for f in enumerate_formulas(pool, depth, size_bound):
        if force(ml, wl, f, cl) != force(mr, wr, f, cr):
            return f
    return None
