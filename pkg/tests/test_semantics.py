import pytest
from hypothesis import given, settings, strategies as st

from ilkit.corpus import corpus_models, load
from ilkit.formula import TOP, enumerate_formulas, parse
from ilkit.frames import Model, WorldSet, chain, fan, random_frame
from ilkit.semantics import (
    check_bisim, equiv_up_to, extension, force, frame_valid, max_bisim,
    model_valid,
)

import oracles


def test_worked_examples():
    m2 = Model(chain(2), {"p": [1]})
    assert extension(m2, parse("<>p")) == WorldSet.from_iter(2, [0])
    assert extension(m2, parse("[]p")) == WorldSet.from_iter(2, [0, 1])
    assert force(m2, 0, parse("p |> p"))

    m3 = Model(chain(3), {"p": [1], "q": [2]})
    # from 0 the only p-successor is 1, and 1 S_0 2 lands in q
    assert extension(m3, parse("p |> q")) == WorldSet.full(3)
    # but no S-move reaches back into p, so q |> p holds only vacuously
    assert extension(m3, parse("q |> p")) == WorldSet.from_iter(3, [2])
    assert extension(m3, parse("<>q")) == WorldSet.from_iter(3, [0, 1])
    assert model_valid(m3, parse("p -> <>q"))
    assert not model_valid(m3, parse("p | q"))


def test_formula_pool_against_forcing_oracle():
    pool = list(enumerate_formulas(["p", "q"], 2, 2))[::7]
    for name in ["chain3", "fan2", "fan2-sym", "chain3-square"]:
        m = load(name)
        cache = {}
        for f in pool:
            got = extension(m, f, cache)
            assert frozenset(got) == oracles.extension_naive(m, f), (name, f)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 500), st.integers(0, 255), st.integers(0, 255))
def test_random_models_against_forcing_oracle(seed, pmask, qmask):
    fr = random_frame(4, seed)
    m = Model(fr, {"p": WorldSet(4, pmask & 0xF), "q": WorldSet(4, qmask & 0xF)})
    for text in ["p |> q", "<>p & ~q", "[](p -> q) -> (p |> q)", "p |> p & q"]:
        f = parse(text)
        assert frozenset(extension(m, f)) == oracles.extension_naive(m, f)


def test_frame_valid_reports_least_counterexample():
    v = frame_valid(chain(2), parse("a -> []a"))
    assert not v.valid
    assert v.ev == {"a": WorldSet.from_iter(2, [0])}
    assert v.world == 0
    assert frame_valid(chain(2), parse("[](a -> a)")).valid
    assert frame_valid(chain(2), parse("[]a -> [][]a")).valid
    # GL's frame counterpart holds on every finite transitive frame
    assert frame_valid(fan(2), parse("[]([]a -> a) -> []a")).valid


def test_frame_valid_refuses_oversized_sweeps():
    f = parse("a -> b -> c")   # 3 atoms x 7 worlds = 21 bits
    with pytest.raises(ValueError):
        frame_valid(random_frame(7, 0), f)
    taut = parse("a & b -> a")
    with pytest.raises(ValueError):
        frame_valid(chain(2), taut, bits_limit=3)
    assert frame_valid(chain(2), taut).valid


def test_frame_valid_closed_formulas():
    assert frame_valid(chain(3), TOP).valid
    assert frame_valid(chain(3), parse("T |> T")).valid
    assert not frame_valid(chain(3), parse("F")).valid


def test_check_bisim_identity_and_defects():
    m = load("chain3")
    ident = [(w, w) for w in range(3)]
    assert check_bisim(m, m, ident).ok

    other = Model(m.frame, {"p": [2], "q": [1]})
    v = check_bisim(m, other, ident)
    assert not v.ok and v.clause == "atoms" and v.pair == (1, 1)

    # relate the chain root to a leaf: the leaf cannot answer the forth move
    bare = Model(chain(3))
    leaf = check_bisim(bare, bare, [(0, 2)])
    assert not leaf.ok and leaf.clause == "forth" and leaf.witness == (1,)
    back = check_bisim(bare, bare, [(2, 0)])
    assert not back.ok and back.clause == "back"


def test_check_bisim_s_matching_matters():
    # fan2 and fan2-sym differ only in S_0; relating the frames pointwise
    # fails because the symmetric frame S-moves where the plain fan cannot,
    # and the clause names the side holding the unmatched move
    plain, sym = load("fan2"), load("fan2-sym")
    z = [(0, 0), (1, 1), (2, 2)]
    v = check_bisim(sym, plain, z)
    assert not v.ok and v.pair == (0, 0) and v.clause == "back"
    mirror = check_bisim(plain, sym, z)
    assert not mirror.ok and mirror.clause == "forth"


def test_max_bisim_is_a_bisimulation_containing_identity():
    for name in ["chain2", "chain3", "fan2", "fan3"]:
        m = load(name)
        z = max_bisim(m, m)
        assert {(w, w) for w in range(m.frame.n)} <= z
        assert check_bisim(m, m, z).ok


def test_max_bisim_collapses_duplicate_branches():
    m = Model(fan(2), {"p": [1, 2]})
    z = max_bisim(m, m)
    assert (1, 2) in z and (2, 1) in z


def test_pencil_pair_bisimulation():
    bad, good = load("pencil-bad1"), load("pencil-good1")
    z = [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (4, 5)]
    assert check_bisim(bad, good, z).ok
    assert set(z) <= max_bisim(bad, good)


def test_equiv_up_to_finds_separating_formula():
    m3 = load("chain3")
    f = equiv_up_to(m3, 0, m3, 2, depth=1)
    assert f is not None
    assert force(m3, 0, f) != force(m3, 2, f)

    # worlds 1 and 2 of the duplicated fan agree on everything bounded
    m = Model(fan(2), {"p": [1, 2]})
    assert equiv_up_to(m, 1, m, 2, depth=2) is None
