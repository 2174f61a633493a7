"""Formulas of interpretability logic.

The object language has five core node kinds: atoms, falsum, implication,
the unary box, and the binary ``|>`` modality.  Every other connective
(negation, conjunction, disjunction, equivalence, diamond, verum) is
definable and gets expanded eagerly by the builder functions, so the rest
of the toolkit only ever pattern-matches on the core.

ASCII grammar (loosest binding first)::

    imp      ::= rhd (("->" | "<->") imp)?          right-associative
    rhd      ::= junction ("|>" junction)?          non-associative
    junction ::= unary (("&" | "|") unary)*         left-associative
    unary    ::= ("~" | "[]" | "<>") unary | primary
    primary  ::= atom | "F" | "T" | "(" imp ")"

Atoms match ``[a-z][a-z0-9_]*``.  An unparenthesized ``a |> b |> c`` is a
parse error rather than a silent grouping choice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class Formula:
    """Base class for formula nodes; all nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class Rhd(Formula):
    lhs: Formula
    rhs: Formula


BOT = Bottom()
TOP = Implies(BOT, BOT)


def neg(a: Formula) -> Formula:
    return Implies(a, BOT)


def conj(a: Formula, b: Formula) -> Formula:
    return neg(Implies(a, neg(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Implies(a, b), Implies(b, a))


def dia(a: Formula) -> Formula:
    return neg(Box(neg(a)))


def atoms(f: Formula) -> frozenset[str]:
    """The set of atom names occurring in ``f``."""
    if isinstance(f, Atom):
        return frozenset((f.name,))
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, Box):
        return atoms(f.body)
    return atoms(f.lhs) | atoms(f.rhs)


def modal_depth(f: Formula) -> int:
    """Maximum nesting of box/``|>`` (each ``|>`` counts one level)."""
    if isinstance(f, (Atom, Bottom)):
        return 0
    if isinstance(f, Box):
        return 1 + modal_depth(f.body)
    if isinstance(f, Rhd):
        return 1 + max(modal_depth(f.lhs), modal_depth(f.rhs))
    return max(modal_depth(f.lhs), modal_depth(f.rhs))


def size(f: Formula) -> int:
    """Number of core connective nodes (implication, box, ``|>``)."""
    if isinstance(f, (Atom, Bottom)):
        return 0
    if isinstance(f, Box):
        return 1 + size(f.body)
    return 1 + size(f.lhs) + size(f.rhs)


class ParseError(ValueError):
    """Malformed formula text; ``position`` is the 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_FIXED_TOKENS = ("<->", "<>", "[]", "->", "|>", "~", "&", "|", "(", ")", "F", "T")
_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        for fixed in _FIXED_TOKENS:
            if text.startswith(fixed, i):
                toks.append((fixed, fixed, i))
                i += len(fixed)
                break
        else:
            m = _ATOM_RE.match(text, i)
            if m is None:
                raise ParseError(f"unexpected character {text[i]!r}", i)
            toks.append(("atom", m.group(), i))
            i = m.end()
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return t

    def run(self):
        f = self.imp()
        t = self.peek()
        if t is not None:
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return f

    def imp(self):
        left = self.rhd()
        t = self.peek()
        if t is not None and t[0] in ("->", "<->"):
            self.take()
            right = self.imp()
            return Implies(left, right) if t[0] == "->" else iff(left, right)
        return left

    def rhd(self):
        left = self.junction()
        t = self.peek()
        if t is None or t[0] != "|>":
            return left
        self.take()
        right = self.junction()
        t = self.peek()
        if t is not None and t[0] == "|>":
            raise ParseError("|> is non-associative; parenthesize the chain", t[2])
        return Rhd(left, right)

    def junction(self):
        left = self.unary()
        while True:
            t = self.peek()
            if t is None or t[0] not in ("&", "|"):
                return left
            self.take()
            right = self.unary()
            left = conj(left, right) if t[0] == "&" else disj(left, right)

    def unary(self):
        t = self.peek()
        if t is not None and t[0] in ("~", "[]", "<>"):
            self.take()
            body = self.unary()
            if t[0] == "~":
                return neg(body)
            if t[0] == "[]":
                return Box(body)
            return dia(body)
        return self.primary()

    def primary(self):
        t = self.take()
        if t[0] == "atom":
            return Atom(t[1])
        if t[0] == "F":
            return BOT
        if t[0] == "T":
            return TOP
        if t[0] == "(":
            f = self.imp()
            t = self.take()
            if t[0] != ")":
                raise ParseError(f"expected ')', got {t[1]!r}", t[2])
            return f
        raise ParseError(f"unexpected {t[1]!r}", t[2])


def parse(text: str) -> Formula:
    """Parse ASCII formula text into the five-connective core."""
    return _Parser(text).run()


def _view(f):
    """Recognize a core node as the derived connective it prints best as.

    The patterns mirror the expansion equations exactly, so re-parsing the
    sugared output always rebuilds the identical tree.  Match order inside
    the negation shape matters: diamond and equivalence are special cases
    of the conjunction pattern.
    """
    if isinstance(f, Atom):
        return ("atom", f.name)
    if isinstance(f, Bottom):
        return ("bot",)
    if isinstance(f, Box):
        return ("box", f.body)
    if isinstance(f, Rhd):
        return ("rhd", f.lhs, f.rhs)
    a, b = f.lhs, f.rhs
    if b == BOT:
        if a == BOT:
            return ("top",)
        if isinstance(a, Box) and isinstance(a.body, Implies) and a.body.rhs == BOT:
            return ("dia", a.body.lhs)
        if isinstance(a, Implies) and isinstance(a.rhs, Implies) and a.rhs.rhs == BOT:
            x, y = a.lhs, a.rhs.lhs
            if (isinstance(x, Implies) and isinstance(y, Implies)
                    and x.lhs == y.rhs and x.rhs == y.lhs):
                return ("iff", x.lhs, x.rhs)
            return ("and", x, y)
        return ("not", a)
    if isinstance(a, Implies) and a.rhs == BOT:
        return ("or", a.lhs, b)
    return ("imp", a, b)


def _core_view(f):
    if isinstance(f, Atom):
        return ("atom", f.name)
    if isinstance(f, Bottom):
        return ("bot",)
    if isinstance(f, Box):
        return ("box", f.body)
    if isinstance(f, Rhd):
        return ("rhd", f.lhs, f.rhs)
    return ("imp", f.lhs, f.rhs)


_ASCII = {"bot": "F", "top": "T", "not": "~", "box": "[]", "dia": "<>",
          "and": "&", "or": "|", "rhd": "|>", "imp": "->", "iff": "<->"}
_UNICODE = {"bot": "⊥", "top": "⊤", "not": "¬", "box": "□",
            "dia": "◊", "and": "∧", "or": "∨", "rhd": "▷",
            "imp": "→", "iff": "↔"}

# Binding strength used when deciding parentheses; matches the grammar.
_LEVEL = {"imp": 1, "iff": 1, "rhd": 2, "and": 3, "or": 3,
          "not": 4, "box": 4, "dia": 4, "atom": 5, "bot": 5, "top": 5}


def to_str(f: Formula, unicode: bool = False, sugar: bool = True) -> str:
    """Print a formula; ``parse(to_str(f)) == f`` for every formula."""
    syms = _UNICODE if unicode else _ASCII
    view = _view if sugar else _core_view

    def emit(g, need):
        v = view(g)
        tag = v[0]
        if tag == "atom":
            return v[1]
        if tag in ("bot", "top"):
            return syms[tag]
        if tag in ("not", "box", "dia"):
            s = syms[tag] + emit(v[1], 4)
        elif tag in ("and", "or"):
            s = emit(v[1], 3) + " " + syms[tag] + " " + emit(v[2], 4)
        elif tag == "rhd":
            s = emit(v[1], 3) + " " + syms[tag] + " " + emit(v[2], 3)
        else:  # imp, iff
            s = emit(v[1], 2) + " " + syms[tag] + " " + emit(v[2], 1)
        return "(" + s + ")" if _LEVEL[tag] < need else s

    return emit(f, 1)


def enumerate_formulas(pool, depth: int, size_bound: int,
                       modalities=("box", "rhd")):
    """Yield every formula over the atom ``pool`` within the bounds.

    The stream is deterministic and duplicate-free: formulas are grouped by
    core size and, within one size, implications come first (grouped by the
    size of the left subtree), then boxes, then ``|>``-formulas.  Size 0 is
    the sorted atoms followed by falsum.  ``depth`` bounds the modal depth;
    ``modalities`` can drop ``"rhd"`` (or ``"box"``) for fragment pools.
    """
    names = sorted(set(pool))
    levels = [[Atom(a) for a in names] + [BOT]]
    depths = {g: 0 for g in levels[0]}
    yield from levels[0]
    for k in range(1, size_bound + 1):
        level = []
        for i in range(k):
            for l in levels[i]:
                for r in levels[k - 1 - i]:
                    g = Implies(l, r)
                    depths[g] = max(depths[l], depths[r])
                    level.append(g)
        if "box" in modalities:
            for b in levels[k - 1]:
                if depths[b] < depth:
                    g = Box(b)
                    depths[g] = depths[b] + 1
                    level.append(g)
        if "rhd" in modalities:
            for i in range(k):
                for l in levels[i]:
                    for r in levels[k - 1 - i]:
                        if depths[l] < depth and depths[r] < depth:
                            g = Rhd(l, r)
                            depths[g] = max(depths[l], depths[r]) + 1
                            level.append(g)
        levels.append(level)
        yield from level
