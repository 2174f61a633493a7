"""Filters, ultrafilters, and the label-indexed assuring relation.

Over a finite world set every filter is the up-set of its least element, so
a filter is stored as that minimum (``min_mask``); the whole powerset — the
improper filter — is the up-set of the empty set.  Ultrafilters are
principal and carry just their witness world.

``assuring(fr, f, l, g)`` is the relation between ultrafilters indexed by a
proper filter label ``l``: for every set A, if the worlds forced to move
A-complement successors into the complement of some member of ``l`` form a
set in ``f``, then both A and its box-preimage must lie in ``g``.  Because
``s_inv`` is monotone in its second argument and ``l`` is the up-set of its
minimum B, quantifying over all finite choices of members collapses to the
single choice {B}; ``assuring_family`` keeps the raw quantifier for
arbitrary finite families, and the test suite holds a naive oracle against
the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import r_inv_dual_mask, s_inv_mask
from .frames import Frame, WorldSet


@dataclass(frozen=True, order=True, slots=True)
class Ultrafilter:
    n: int
    witness: int

    def __post_init__(self):
        if not 0 <= self.witness < self.n:
            raise ValueError(f"witness {self.witness} out of range for n={self.n}")

    def contains(self, ws) -> bool:
        mask = ws.mask if isinstance(ws, WorldSet) else int(ws)
        return bool(mask >> self.witness & 1)

    def as_filter(self):
        return Filter(self.n, 1 << self.witness)

    def __repr__(self):
        return f"U{self.witness}"


@dataclass(frozen=True, order=True, slots=True)
class Filter:
    n: int
    min_mask: int

    def __post_init__(self):
        if not 0 <= self.min_mask < (1 << self.n):
            raise ValueError(f"min mask {self.min_mask:#x} out of range")

    @property
    def is_proper(self) -> bool:
        return self.min_mask != 0

    def min_set(self) -> WorldSet:
        return WorldSet(self.n, self.min_mask)

    def contains(self, ws) -> bool:
        mask = ws.mask if isinstance(ws, WorldSet) else int(ws)
        return self.min_mask & ~mask == 0

    def members(self) -> list[WorldSet]:
        """All member sets, smallest mask first."""
        return [WorldSet(self.n, m) for m in range(1 << self.n)
                if m & self.min_mask == self.min_mask]

    def __repr__(self):
        return f"up{self.min_set()!r}"


def all_ultrafilters(fr: Frame) -> list[Ultrafilter]:
    return [Ultrafilter(fr.n, w) for w in range(fr.n)]


def principal_filter(n: int, w: int) -> Filter:
    return Filter(n, 1 << w)


def all_proper_filters(n: int) -> list[Filter]:
    """Every proper filter, ordered by minimum mask."""
    return [Filter(n, m) for m in range(1, 1 << n)]


def has_fip(sets) -> bool:
    """Finite intersection property of a finite family of world sets.

    At finite scale every finite subfamily's intersection contains the
    total intersection, so the property collapses to one test; the empty
    family has it vacuously.
    """
    sets = list(sets)
    if not sets:
        return True
    mask = sets[0].mask
    n = sets[0].n
    for ws in sets[1:]:
        if ws.n != n:
            raise ValueError("family mixes world-set sizes")
        mask &= ws.mask
    return mask != 0


def generate_filter(n: int, sets) -> Filter:
    """The filter generated by a family: up-set of the total intersection.

    Improper (min empty) exactly when the family lacks the finite
    intersection property; the empty family generates the up-set of W.
    """
    mask = (1 << n) - 1
    for ws in sets:
        if ws.n != n:
            raise ValueError("family member has wrong size")
        mask &= ws.mask
    return Filter(n, mask)


def f_box(fr: Frame, f: Ultrafilter) -> Filter:
    """The necessity projection {Y : the worlds boxed into Y lie in f}.

    For a principal ultrafilter this is the up-set of R[witness]; at an
    R-leaf the projection is improper (the whole powerset).
    """
    return Filter(fr.n, fr.r_succ[f.witness])


def assuring(fr: Frame, f: Ultrafilter, l: Filter, g: Ultrafilter) -> bool:
    """The label-indexed successor relation between ultrafilters."""
    if not l.is_proper:
        raise ValueError("label must be a proper filter")
    full = fr.full_mask
    ybar = full & ~l.min_mask
    fw, gw = f.witness, g.witness
    for amask in range(1 << fr.n):
        if s_inv_mask(fr, full & ~amask, ybar) >> fw & 1:
            if not (amask >> gw & 1 and r_inv_dual_mask(fr, amask) >> gw & 1):
                return False
    return True


def assuring_family(fr: Frame, f: Ultrafilter, sets, g: Ultrafilter) -> bool:
    """The same relation indexed by a raw finite family of nonempty sets.

    Quantifies over every finite choice from the family, including the
    empty choice (whose union of complements is the empty set).
    """
    sets = list(sets)
    full = fr.full_mask
    comps = []
    for ws in sets:
        if ws.n != fr.n:
            raise ValueError("family member has wrong size")
        if ws.mask == 0:
            raise ValueError("family members must be nonempty")
        comps.append(full & ~ws.mask)
    unions = {0}
    for c in comps:
        unions |= {u | c for u in unions}
    unions = sorted(unions)
    fw, gw = f.witness, g.witness
    for amask in range(1 << fr.n):
        abar = full & ~amask
        if any(s_inv_mask(fr, abar, u) >> fw & 1 for u in unions):
            if not (amask >> gw & 1 and r_inv_dual_mask(fr, amask) >> gw & 1):
                return False
    return True


def b_set(fr: Frame, f: Ultrafilter, l: Filter) -> list[WorldSet]:
    """The derived family of sets whose hypothesis fires in ``f``.

    Contains every A such that moving A-complement successors into the
    complement of a member of ``l`` is a set in ``f``; computed through the
    same least-member reduction as ``assuring``.
    """
    if not l.is_proper:
        raise ValueError("label must be a proper filter")
    full = fr.full_mask
    ybar = full & ~l.min_mask
    out = []
    for amask in range(1 << fr.n):
        if s_inv_mask(fr, full & ~amask, ybar) >> f.witness & 1:
            out.append(WorldSet(fr.n, amask))
    return out


def all_assuring_triples(fr: Frame):
    """Every (f, l, g) with the relation, in witness/label order."""
    out = []
    ufs = all_ultrafilters(fr)
    for f in ufs:
        for l in all_proper_filters(fr.n):
            for g in ufs:
                if assuring(fr, f, l, g):
                    out.append((f, l, g))
    return out
