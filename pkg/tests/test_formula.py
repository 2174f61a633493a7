import pytest
from hypothesis import given, strategies as st

from ilkit.formula import (
    Atom, Bottom, Box, Implies, Rhd, BOT, TOP,
    atoms, conj, dia, disj, enumerate_formulas, iff, modal_depth, neg,
    parse, ParseError, size, to_str,
)

import oracles


def test_parse_basics():
    assert parse("p") == Atom("p")
    assert parse("F") == Bottom()
    assert parse("p -> q") == Implies(Atom("p"), Atom("q"))
    assert parse("[]p") == Box(Atom("p"))
    assert parse("p |> q") == Rhd(Atom("p"), Atom("q"))
    assert parse("long_name2") == Atom("long_name2")


def test_parse_precedence():
    # implication is right-associative and loosest
    assert parse("a -> b -> c") == parse("a -> (b -> c)")
    # & and | sit at one level, left-associative
    assert parse("a & b | c") == parse("(a & b) | c")
    assert parse("a | b & c") == parse("(a | b) & c")
    # unary binds tightest
    assert parse("~[]a") == neg(Box(Atom("a")))
    assert parse("<>a & b") == conj(dia(Atom("a")), Atom("b"))
    # |> binds looser than & but tighter than ->
    assert parse("a & b |> c") == Rhd(conj(Atom("a"), Atom("b")), Atom("c"))
    assert parse("a |> b -> c") == Implies(Rhd(Atom("a"), Atom("b")), Atom("c"))


def test_rhd_chain_is_an_error():
    with pytest.raises(ParseError):
        parse("a |> b |> c")
    # parenthesised chains are fine
    assert parse("(a |> b) |> c") == Rhd(Rhd(Atom("a"), Atom("b")), Atom("c"))
    assert parse("a |> (b |> c)") == Rhd(Atom("a"), Rhd(Atom("b"), Atom("c")))


def test_parse_errors_carry_positions():
    for text, pos in [("", 0), ("a &", 3), ("(a -> b", 7), ("a @ b", 2),
                      ("A", 0)]:
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.position == pos


def test_sugar_expands_eagerly():
    assert parse("T") == Implies(BOT, BOT)
    assert parse("~a") == Implies(Atom("a"), BOT)
    assert parse("a & b") == neg(Implies(Atom("a"), neg(Atom("b"))))
    assert parse("a | b") == Implies(neg(Atom("a")), Atom("b"))
    assert parse("a <-> b") == conj(Implies(Atom("a"), Atom("b")),
                                    Implies(Atom("b"), Atom("a")))
    assert parse("<>a") == neg(Box(neg(Atom("a"))))
    assert TOP == parse("T")


def test_print_resugars():
    assert to_str(parse("a & b")) == "a & b"
    assert to_str(parse("<>~a")) == "<>~a"
    assert to_str(parse("a |> b -> c")) == "a |> b -> c"
    assert to_str(parse("a |> (b -> c)")) == "a |> (b -> c)"
    assert to_str(parse("T |> a")) == "T |> a"
    assert to_str(parse("p -> q -> r")) == "p -> q -> r"
    assert to_str(parse("(p -> q) -> r")) == "(p -> q) -> r"


def test_unicode_rendering():
    # eager expansion stores (x & y) -> z as ~(x -> ~y) -> z, which the
    # printer re-sugars as an or-chain; the output still re-parses equal
    f = parse("~a & []b -> (c |> <>d)")
    assert to_str(f, unicode=True) == "a ∨ ¬□b ∨ (c ▷ ◊d)"
    assert to_str(parse("(a -> b) & ~c"), unicode=True) == "(a → b) ∧ ¬c"
    assert parse(to_str(f)) == f


def test_core_printing_skips_sugar():
    f = parse("a & b")
    assert to_str(f, sugar=False) == "(a -> b -> F) -> F"
    assert parse(to_str(f, sugar=False)) == f


def test_measures():
    f = parse("[]p -> (q |> []r)")
    assert atoms(f) == frozenset({"p", "q", "r"})
    assert modal_depth(f) == 2
    assert size(f) == 4
    assert size(parse("p")) == 0
    assert modal_depth(parse("p -> q")) == 0


def _formula_trees(pool):
    leaves = st.sampled_from([Atom(a) for a in pool] + [BOT])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(Implies, sub, sub),
            st.builds(Box, sub),
            st.builds(Rhd, sub, sub),
        ),
        max_leaves=14)


@given(_formula_trees(["p", "q", "r_2"]))
def test_roundtrip_ascii(f):
    assert parse(to_str(f)) == f


@given(_formula_trees(["p", "q"]))
def test_roundtrip_core(f):
    assert parse(to_str(f, sugar=False)) == f


def test_enumeration_counts_frozen():
    assert sum(1 for _ in enumerate_formulas(["p"], 1, 3)) == 508
    assert sum(1 for _ in enumerate_formulas(["p", "q"], 2, 2)) == 297
    assert sum(1 for _ in enumerate_formulas(["p", "q"], 1, 2)) == 213
    assert sum(1 for _ in enumerate_formulas(["p", "q"], 2, 2,
                                             modalities=("box",))) == 99


@pytest.mark.parametrize("pool,depth,bound,with_rhd", [
    (["p"], 1, 3, True),
    (["p", "q"], 2, 2, True),
    (["p", "q"], 1, 2, True),
    (["p", "q"], 2, 2, False),
    (["p", "q", "r"], 1, 2, True),
    (["p"], 3, 4, False),
])
def test_enumeration_matches_counting_oracle(pool, depth, bound, with_rhd):
    mods = ("box", "rhd") if with_rhd else ("box",)
    got = list(enumerate_formulas(pool, depth, bound, modalities=mods))
    assert len(got) == len(set(got))
    assert all(modal_depth(f) <= depth and size(f) <= bound for f in got)
    assert len(got) == oracles.count_formulas(len(pool), depth, bound,
                                              with_rhd=with_rhd)


def test_enumeration_respects_modalities():
    seen = list(enumerate_formulas(["p"], 2, 2, modalities=("box",)))
    assert not any(isinstance(f, Rhd) for f in seen)
    assert any(isinstance(f, Box) for f in seen)
    rhd_only = list(enumerate_formulas(["p"], 2, 2, modalities=("rhd",)))
    assert not any(isinstance(f, Box) for f in rhd_only)
