import pytest
from hypothesis import given, strategies as st

from ilkit.frames import (
    CompletionError, Frame, Model, WorldSet, all_frames, chain, complete,
    fan, longest_chain, random_frame, tree, validate,
)

import oracles


# ---------------------------------------------------------------- WorldSet

def test_worldset_basics():
    a = WorldSet.from_iter(4, [0, 2])
    assert list(a) == [0, 2]
    assert len(a) == 2
    assert 2 in a and 1 not in a and 7 not in a
    assert a.complement() == WorldSet.from_iter(4, [1, 3])
    assert WorldSet.full(4).mask == 0b1111
    assert WorldSet.empty(4).mask == 0
    assert repr(a) == "{0,2}"


def test_worldset_guards():
    with pytest.raises(ValueError):
        WorldSet(2, 0b100)
    with pytest.raises(ValueError):
        WorldSet.from_iter(2, [5])
    with pytest.raises(ValueError):
        WorldSet(2, 1) | WorldSet(3, 1)


masks = st.integers(min_value=0, max_value=31)


@given(masks, masks, masks)
def test_worldset_algebra(x, y, z):
    a, b, c = (WorldSet(5, m) for m in (x, y, z))
    assert (a | b) & c == (a & c) | (b & c)
    assert a - b == a & b.complement()
    assert a.complement().complement() == a
    assert (a | b).complement() == a.complement() & b.complement()
    assert a.issubset(a | b)
    assert (a & b).issubset(a)
    assert a.issubset(b) == all(w in b for w in a)


# ------------------------------------------------------------------ frames

def test_build_collects_pairs():
    fr = Frame.build(3, [(0, 1), (1, 2), (0, 1)], [(0, 1, 1), (0, 1, 2)])
    assert fr.r_succ == (0b010, 0b100, 0)
    assert fr.s_succ[0][1] == 0b110
    assert sorted(fr.r_pairs()) == [(0, 1), (1, 2)]
    assert sorted(fr.s_pairs(0)) == [(1, 1), (1, 2)]
    with pytest.raises(ValueError):
        Frame.build(2, [(0, 5)])


def test_validate_flags_each_law():
    ok = chain(3)
    assert validate(ok).ok
    assert validate(ok).violations == ()

    reflexive = Frame.build(2, [(0, 0), (0, 1)], [(0, 0, 0), (0, 1, 1)])
    assert ("R-irreflexive", (0,)) in validate(reflexive).violations

    not_trans = Frame.build(3, [(0, 1), (1, 2)], [(0, 1, 1), (1, 2, 2)])
    assert ("R-transitive", (0, 1, 2)) in validate(not_trans).violations

    stray_s = Frame.build(3, [(0, 1)], [(0, 1, 1), (0, 1, 2)])
    assert ("S-domain", (0, 1, 2)) in validate(stray_s).violations

    no_refl = Frame.build(2, [(0, 1)])
    assert ("S-reflexive", (0, 1)) in validate(no_refl).violations

    fr = fan(3)
    rows = [list(r) for r in fr.s_succ]
    rows[0][1] |= 1 << 2   # add 1 S_0 2 without 2 S_0 1's consequences
    rows[0][2] |= 1 << 3
    broken = Frame(fr.n, fr.r_succ, tuple(tuple(r) for r in rows))
    kinds = {k for k, _ in validate(broken).violations}
    assert "S-transitive" in kinds

    missing_r = chain(3)
    rows = [list(r) for r in missing_r.s_succ]
    rows[0][1] &= ~(1 << 2)  # drop 1 S_0 2 although 1 R 2 inside R[0]
    broken = Frame(missing_r.n, missing_r.r_succ, tuple(tuple(r) for r in rows))
    assert ("S-contains-R", (0, 1, 2)) in validate(broken).violations


def test_complete_closes_seeds():
    fr = complete(Frame.build(3, [(0, 1), (1, 2)]))
    assert fr.r_succ == (0b110, 0b100, 0)
    assert validate(fr).ok
    # S_0 must relate 1 to 2 (from R) and be reflexive on {1, 2}
    assert fr.s_succ[0][1] == 0b110
    assert fr.s_succ[0][2] == 0b100


def test_complete_is_idempotent_and_minimal():
    for seed in range(20):
        fr = random_frame(4, seed)
        assert complete(fr) == fr  # already legal, nothing to add
    seeded = Frame.build(4, [(0, 1), (1, 2), (2, 3)], [(0, 1, 3)])
    done = complete(seeded)
    assert validate(done).ok
    assert done.s_succ[0][1] >> 3 & 1
    assert complete(done) == done


def test_complete_rejects_cycles():
    with pytest.raises(CompletionError) as err:
        complete(Frame.build(3, [(0, 1), (1, 2), (2, 0)]))
    assert "cycle" in str(err.value)
    assert "0" in str(err.value)


def test_complete_rejects_stray_s_seed():
    # S_0 pair touching a world outside R[0] cannot be legalized
    with pytest.raises(CompletionError):
        complete(Frame.build(3, [(0, 1)], [(0, 1, 2)]))
    with pytest.raises(CompletionError):
        complete(Frame.build(3, [(0, 1)], [(2, 0, 0)]))


def test_shapes():
    assert chain(1).n == 1 and chain(1).r_succ == (0,)
    assert chain(4).r_succ == (0b1110, 0b1100, 0b1000, 0)
    assert fan(3).r_succ == (0b1110, 0, 0, 0)
    t = tree(2, 2)
    assert t.n == 7
    assert validate(t).ok
    # edge count, not world count
    assert longest_chain(chain(4)) == 3
    assert longest_chain(fan(5)) == 1
    assert longest_chain(tree(2, 2)) == 2
    assert longest_chain(chain(1)) == 0


def test_model_valuation_guards():
    fr = chain(2)
    m = Model(fr, {"p": [1], "q": WorldSet(2, 0b01)})
    assert m.ev_mask("p") == 0b10
    assert m.ev_set("missing") == WorldSet.empty(2)
    with pytest.raises(ValueError):
        Model(fr, {"p": WorldSet(3, 0b1)})
    with pytest.raises(ValueError):
        Model(fr, {"p": [4]})


# ------------------------------------------------------------- enumeration

def test_all_frames_counts_frozen():
    assert sum(1 for _ in all_frames(1)) == 1
    assert sum(1 for _ in all_frames(2)) == 3
    assert sum(1 for _ in all_frames(3)) == 34


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_frames_matches_brute_oracle(n):
    frames = list(all_frames(n))
    assert len(frames) == oracles.count_frames_brute(n)
    assert len(set(frames)) == len(frames)
    assert all(validate(fr).ok for fr in frames)


def test_random_frame_is_deterministic_and_legal():
    for n in (1, 3, 5, 8):
        for seed in range(10):
            fr = random_frame(n, seed)
            assert fr == random_frame(n, seed)
            assert validate(fr).ok
    assert random_frame(5, 0) != random_frame(5, 1)
