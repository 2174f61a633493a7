import pytest
from hypothesis import given, settings, strategies as st

from ilkit.algebra import (
    BoxOp, Complement, DiaOp, Empty, Full, Intersection, SOp, Union, Var,
    agreement, eval_term, r_inv, r_inv_dual, s_inv, term_to_str, translate,
)
from ilkit.corpus import corpus_models
from ilkit.formula import enumerate_formulas, parse
from ilkit.frames import Model, WorldSet, chain, fan, random_frame
from ilkit.semantics import extension

import oracles


def ws(n, worlds):
    return WorldSet.from_iter(n, worlds)


def test_preimage_operators():
    fr = chain(3)
    assert r_inv(fr, ws(3, [2])) == ws(3, [0, 1])
    assert r_inv(fr, ws(3, [])) == ws(3, [])
    assert r_inv_dual(fr, ws(3, [1, 2])) == WorldSet.full(3)
    assert r_inv_dual(fr, ws(3, [2])) == ws(3, [1, 2])
    # leaves satisfy every box
    assert 2 in r_inv_dual(fr, ws(3, []))


def test_s_preimage_examples():
    fr = chain(3)
    # moving {1} into {2}: world 0 can (1 S_0 2); 1 and 2 vacuously,
    # since the constraint set is x intersected with each world's R-row
    assert s_inv(fr, ws(3, [1]), ws(3, [2])) == WorldSet.full(3)
    assert s_inv(fr, ws(3, [2]), ws(3, [1])) == ws(3, [2])
    assert s_inv(fr, ws(3, []), ws(3, [])) == WorldSet.full(3)


masks5 = st.integers(min_value=0, max_value=31)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 200), masks5, masks5, masks5)
def test_preimage_laws(seed, xm, ym, zm):
    fr = random_frame(5, seed)
    x, y, z = WorldSet(5, xm), WorldSet(5, ym), WorldSet(5, zm)
    # duality
    assert r_inv_dual(fr, y) == r_inv(fr, y.complement()).complement()
    # monotonicity
    if xm & ~ym == 0:
        assert r_inv(fr, x).issubset(r_inv(fr, y))
        assert s_inv(fr, z, x).issubset(s_inv(fr, z, y))
        assert s_inv(fr, y, z).issubset(s_inv(fr, x, z))
    # union/intersection behaviour
    assert r_inv(fr, x | y) == r_inv(fr, x) | r_inv(fr, y)
    assert r_inv_dual(fr, x & y) == r_inv_dual(fr, x) & r_inv_dual(fr, y)
    assert s_inv(fr, x | y, z) == s_inv(fr, x, z) & s_inv(fr, y, z)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 200), masks5, masks5)
def test_preimages_against_oracle(seed, xm, ym):
    fr = random_frame(5, seed)
    xs = frozenset(w for w in range(5) if xm >> w & 1)
    ys = frozenset(w for w in range(5) if ym >> w & 1)
    assert frozenset(r_inv(fr, WorldSet(5, xm))) == oracles.r_inv_naive(fr, xs)
    assert (frozenset(r_inv_dual(fr, WorldSet(5, ym)))
            == oracles.r_inv_dual_naive(fr, ys))
    assert (frozenset(s_inv(fr, WorldSet(5, xm), WorldSet(5, ym)))
            == oracles.s_inv_naive(fr, xs, ys))


def test_translate_shapes():
    assert translate(parse("p")) == Var("p")
    assert translate(parse("F")) == Empty()
    assert translate(parse("p -> q")) == Union(Complement(Var("p")), Var("q"))
    assert translate(parse("[]p")) == BoxOp(Var("p"))
    assert translate(parse("p |> q")) == SOp(Var("p"), Var("q"))
    assert (term_to_str(translate(parse("p |> []q")))
            == "S_inv(A_p, Rhat_inv(A_q))")
    assert term_to_str(translate(parse("~p"))) == "(comp(A_p) | empty)"


def test_eval_term_basics():
    fr = chain(2)
    env = {"p": ws(2, [1])}
    assert eval_term(fr, env, Full()) == WorldSet.full(2)
    assert eval_term(fr, env, Intersection(Var("p"), Full())) == ws(2, [1])
    assert eval_term(fr, env, DiaOp(Var("p"))) == ws(2, [0])
    with pytest.raises(ValueError):
        eval_term(fr, env, Var("missing"))


def test_translation_agrees_with_forcing():
    pool = list(enumerate_formulas(["p", "q"], 2, 2))
    for name, m in corpus_models():
        if m.frame.n > 3:
            continue
        for f in pool[::5]:
            assert agreement(m, f), (name, f)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 300), st.integers(0, 15), st.integers(0, 15))
def test_translation_agrees_on_random_models(seed, pm, qm):
    m = Model(random_frame(4, seed), {"p": WorldSet(4, pm), "q": WorldSet(4, qm)})
    for text in ["p |> q", "[]p -> p |> q", "<>(p & q) |> (p | q)"]:
        f = parse(text)
        t = translate(f)
        assert eval_term(m.frame, m.ev, t) == extension(m, f)


def test_eval_caches_repeated_subterms():
    fr = fan(3)
    t = translate(parse("(p |> p) & (p |> p)"))
    cache = {}
    got = eval_term(fr, {"p": ws(4, [1, 2])}, t, cache)
    assert translate(parse("p |> p")) in cache
    assert got == eval_term(fr, {"p": ws(4, [1, 2])}, t)
