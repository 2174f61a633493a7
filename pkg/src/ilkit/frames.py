"""Finite Veltman frames and models.

Worlds are the integers ``0..n-1``.  Relations are stored as bitmask rows:
``r_succ[w]`` is the successor set of ``w`` under R, and ``s_succ[w][u]``
is the successor set of ``u`` under the per-world relation S_w.  A frame
is legal when R is transitive and irreflexive and each S_w is a reflexive,
transitive relation on R[w] that contains R restricted to R[w].
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field


@dataclass(frozen=True, order=True, slots=True)
class WorldSet:
    """A subset of the worlds ``0..n-1``, stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#x} out of range for n={self.n}")

    @classmethod
    def from_iter(cls, n, worlds):
        mask = 0
        for w in worlds:
            if not 0 <= w < n:
                raise ValueError(f"world {w} out of range for n={n}")
            mask |= 1 << w
        return cls(n, mask)

    @classmethod
    def full(cls, n):
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n):
        return cls(n, 0)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("world sets belong to different frames")

    def __contains__(self, w):
        return 0 <= w < self.n and bool(self.mask >> w & 1)

    def __iter__(self):
        for w in range(self.n):
            if self.mask >> w & 1:
                yield w

    def __len__(self):
        return self.mask.bit_count()

    def __or__(self, other):
        self._check(other)
        return WorldSet(self.n, self.mask | other.mask)

    def __and__(self, other):
        self._check(other)
        return WorldSet(self.n, self.mask & other.mask)

    def __sub__(self, other):
        self._check(other)
        return WorldSet(self.n, self.mask & ~other.mask)

    def complement(self):
        return WorldSet(self.n, self.mask ^ (1 << self.n) - 1)

    def issubset(self, other):
        self._check(other)
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return "{" + ",".join(str(w) for w in self) + "}"


@dataclass(frozen=True)
class Frame:
    """A finite Veltman frame over worlds ``0..n-1``."""

    n: int
    r_succ: tuple[int, ...]
    s_succ: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n, r_pairs=(), s_triples=()):
        """Assemble a (possibly law-violating) frame from relation pairs."""
        r = [0] * n
        for i, j in r_pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"R pair ({i},{j}) out of range")
            r[i] |= 1 << j
        s = [[0] * n for _ in range(n)]
        for w, i, j in s_triples:
            if not (0 <= w < n and 0 <= i < n and 0 <= j < n):
                raise ValueError(f"S triple ({w},{i},{j}) out of range")
            s[w][i] |= 1 << j
        return cls(n, tuple(r), tuple(tuple(row) for row in s))

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def r_pairs(self):
        for i in range(self.n):
            row = self.r_succ[i]
            for j in range(self.n):
                if row >> j & 1:
                    yield (i, j)

    def s_pairs(self, w):
        for i in range(self.n):
            row = self.s_succ[w][i]
            for j in range(self.n):
                if row >> j & 1:
                    yield (i, j)

    def r_set(self, w):
        return WorldSet(self.n, self.r_succ[w])


class CompletionError(ValueError):
    """The least legal extension of the given seed relations does not exist."""


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


def validate(fr: Frame) -> Verdict:
    """Check every frame law; the verdict lists all violations with witnesses.

    Law names: ``R-irreflexive`` (w,), ``R-transitive`` (w,u,v),
    ``S-domain`` (w,u,v), ``S-reflexive`` (w,u), ``S-transitive`` (w,u,v,x),
    ``S-contains-R`` (w,u,v).
    """
    bad = []
    n, r, s = fr.n, fr.r_succ, fr.s_succ
    for w in range(n):
        if r[w] >> w & 1:
            bad.append(("R-irreflexive", (w,)))
        for u in range(n):
            if r[w] >> u & 1 and r[u] & ~r[w]:
                v = (r[u] & ~r[w]).bit_length() - 1
                bad.append(("R-transitive", (w, u, v)))
    for w in range(n):
        rw = r[w]
        for u in range(n):
            row = s[w][u]
            if row and not rw >> u & 1:
                bad.append(("S-domain", (w, u, row.bit_length() - 1)))
            elif row & ~rw:
                bad.append(("S-domain", (w, u, (row & ~rw).bit_length() - 1)))
            if rw >> u & 1 and not row >> u & 1:
                bad.append(("S-reflexive", (w, u)))
            rest = row
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if s[w][v] & ~row:
                    x = (s[w][v] & ~row).bit_length() - 1
                    bad.append(("S-transitive", (w, u, v, x)))
            if rw >> u & 1 and r[u] & rw & ~row:
                v = (r[u] & rw & ~row).bit_length() - 1
                bad.append(("S-contains-R", (w, u, v)))
    return Verdict(not bad, tuple(bad))


def _closure(rows):
    """In-place Warshall transitive closure of bitmask rows."""
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return rows


def _find_cycle(fr, start):
    """A world on an R-cycle was detected; recover a concrete cycle path."""
    # BFS from start back to itself along the seed edges.
    parent = {start: None}
    queue = [start]
    while queue:
        cur = queue.pop(0)
        for nxt in range(fr.n):
            if fr.r_succ[cur] >> nxt & 1:
                if nxt == start:
                    path = []
                    node = cur
                    while node is not None:
                        path.append(node)
                        node = parent[node]
                    path.reverse()
                    return path + [start]
                if nxt not in parent:
                    parent[nxt] = cur
                    queue.append(nxt)
    return [start, start]


def complete(fr: Frame) -> Frame:
    """Least legal frame extending the seed relations.

    R is replaced by its transitive closure (a resulting self-loop means the
    seeds contain a cycle, which no legal frame extends).  Each S_w picks up
    reflexivity on R[w], the pairs of R inside R[w], and transitivity.  An
    S_w seed pair that leaves R[w] x R[w] is unfixable and rejected.
    """
    r = _closure(list(fr.r_succ))
    for w in range(fr.n):
        if r[w] >> w & 1:
            cycle = _find_cycle(fr, w)
            raise CompletionError(
                "R closure creates a cycle: " + " -> ".join(map(str, cycle)))
    s = [list(row) for row in fr.s_succ]
    for w in range(fr.n):
        rw = r[w]
        for u in range(fr.n):
            if s[w][u] and (not rw >> u & 1 or s[w][u] & ~rw):
                raise CompletionError(
                    f"S_{w} seed at {u} leaves R[{w}] x R[{w}]")
        for u in range(fr.n):
            if rw >> u & 1:
                s[w][u] |= 1 << u | (r[u] & rw)
        _closure(s[w])
    return Frame(fr.n, tuple(r), tuple(tuple(row) for row in s))


class Model:
    """A frame together with a valuation of atoms as world sets."""

    def __init__(self, frame: Frame, ev=None):
        self.frame = frame
        self.ev = {}
        for name, ws in dict(ev or {}).items():
            if isinstance(ws, WorldSet):
                if ws.n != frame.n:
                    raise ValueError(f"valuation of {name!r} has wrong size")
                self.ev[name] = ws
            else:
                self.ev[name] = WorldSet.from_iter(frame.n, ws)

    def ev_mask(self, atom: str) -> int:
        ws = self.ev.get(atom)
        return ws.mask if ws is not None else 0

    def ev_set(self, atom: str) -> WorldSet:
        return self.ev.get(atom, WorldSet.empty(self.frame.n))


def chain(k: int) -> Frame:
    """The strict linear order on k worlds, with the forced S structure."""
    return complete(Frame.build(k, [(i, i + 1) for i in range(k - 1)]))


def fan(k: int) -> Frame:
    """A root below an antichain of k worlds."""
    return complete(Frame.build(k + 1, [(0, i) for i in range(1, k + 1)]))


def tree(branching: int, depth: int) -> Frame:
    """The full tree, with R the ancestor relation."""
    pairs = []
    nodes = 1
    level = [0]
    for _ in range(depth):
        nxt = []
        for parent in level:
            for _ in range(branching):
                pairs.append((parent, nodes))
                nxt.append(nodes)
                nodes += 1
        level = nxt
    return complete(Frame.build(nodes, pairs))


def longest_chain(fr: Frame) -> int:
    """Length (edge count) of the longest R-path; bounds label sequences."""
    best = {}

    def depth(w):
        if w not in best:
            best[w] = 0
            row = fr.r_succ[w]
            for u in range(fr.n):
                if row >> u & 1:
                    best[w] = max(best[w], 1 + depth(u))
        return best[w]

    return max((depth(w) for w in range(fr.n)), default=0)


def _transitive(pairs_mask_rows, domain_mask, n):
    for u in range(n):
        if not domain_mask >> u & 1:
            continue
        row = pairs_mask_rows[u]
        for v in range(n):
            if row >> v & 1 and pairs_mask_rows[v] & ~row:
                return False
    return True


def _s_rows_options(n, r, w):
    """All legal S_w rows for a fixed transitive irreflexive R, sorted."""
    rw = r[w]
    members = [u for u in range(n) if rw >> u & 1]
    mandatory = {u: (1 << u) | (r[u] & rw) for u in members}
    optional = []
    for u in members:
        for v in members:
            if v != u and not mandatory[u] >> v & 1:
                optional.append((u, v))
    out = []
    for bits in range(1 << len(optional)):
        rows = [0] * n
        for u in members:
            rows[u] = mandatory[u]
        for idx, (u, v) in enumerate(optional):
            if bits >> idx & 1:
                rows[u] |= 1 << v
        if _transitive(rows, rw, n):
            out.append(tuple(rows))
    out.sort()
    return out


def all_frames(n: int):
    """Every legal frame on n worlds, in a fixed deterministic order.

    R ranges over all strict orders (transitive irreflexive relations) and,
    per world, S_w over every relation between the forced core and the full
    square on R[w] that stays transitive.
    """
    off_diag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(off_diag)):
        r = [0] * n
        for idx, (i, j) in enumerate(off_diag):
            if bits >> idx & 1:
                r[i] |= 1 << j
        if any(r[i] >> j & 1 and r[j] & ~r[i] for i in range(n) for j in range(n)):
            continue
        per_world = [_s_rows_options(n, r, w) for w in range(n)]
        for combo in itertools.product(*per_world):
            yield Frame(n, tuple(r), tuple(combo))


def random_frame(n: int, seed: int) -> Frame:
    """A random legal frame: random strict order, random extra S pairs."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                pairs.append((order[i], order[j]))
    base = complete(Frame.build(n, pairs))
    triples = []
    for w in range(n):
        rw = base.r_succ[w]
        members = [u for u in range(n) if rw >> u & 1]
        for u in members:
            for v in members:
                if u != v and rng.random() < 0.25:
                    triples.append((w, u, v))
    return complete(Frame.build(n, pairs, triples))
