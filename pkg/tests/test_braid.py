import pytest
from hypothesis import given, strategies as st

from conftest import braid_words
from knotbraid.braid import (
    NEG,
    POS,
    SING,
    BraidError,
    BraidLetter,
    BraidWord,
    MarkovMove,
    apply_markov,
    band_generator,
    can_destabilize,
    linking_number,
    pure_lcs_element,
    random_markov_walk,
    resolve,
    smooth,
    switch,
)
from knotbraid.skein import SkeinSystem, evaluate

W = BraidWord.parse


def test_token_roundtrip():
    text = "n=3 -1 -1 2 -1 t2"
    assert str(W(text)) == text


@pytest.mark.parametrize("bad", ["3 1 2", "n=2 2", "n=2 0", "n=2 x", "n=0"])
def test_parse_rejects(bad):
    with pytest.raises(BraidError):
        W(bad)


def test_permutations():
    assert W("n=2 1").permutation() == (2, 1)
    assert W("n=2 1 1").permutation() == (1, 2)
    assert W("n=3 -1 -1 2 -1").closure_components() == 1
    assert W("n=2 t1").permutation() == (2, 1)


def test_component_counts():
    assert W("n=3").closure_components() == 3
    assert W("n=2 1 1 1").closure_components() == 1
    assert W("n=2 1 1").closure_components() == 2


def test_exponent_sum():
    assert W("n=2 1 1 1").exponent_sum() == 3
    assert W("n=2 1 -1").exponent_sum() == 0
    assert W("n=2 t1 1").exponent_sum() == 1


def test_markov_examples():
    w = W("n=2 -1 -1 -1")
    st_ = apply_markov(w, MarkovMove.stabilize(1))
    assert st_ == W("n=3 -1 -1 -1 2")
    conj = apply_markov(st_, MarkovMove.conjugate(-1))
    assert conj == W("n=3 -1 -1 2 -1")
    assert apply_markov(st_, MarkovMove.destabilize()) == w


def test_bad_destabilize():
    w = W("n=3 2 1 2")
    assert not can_destabilize(w)
    with pytest.raises(BraidError):
        apply_markov(w, MarkovMove.destabilize())


def test_walk_basics():
    w = W("n=3 1 -2 1 -2")
    assert random_markov_walk(w, 0, 7) == w
    assert random_markov_walk(w, 30, 7) == random_markov_walk(w, 30, 7)
    for seed in range(20):
        u = random_markov_walk(w, 30, seed)
        assert u.n <= 8 and len(u) <= 64


def test_resolutions():
    tre = W("n=2 1 1 1")
    assert switch(tre, 1) == W("n=2 1 -1 1")
    assert switch(tre, 1).free_reduce() == W("n=2 1")
    assert smooth(tre, 1) == W("n=2 1 1")
    assert resolve(W("n=2 t1"), 0, 1) == W("n=2 1")
    with pytest.raises(BraidError):
        resolve(tre, 0, 1)
    with pytest.raises(BraidError):
        switch(W("n=2 t1"), 0)


def test_linking_numbers():
    assert linking_number(W("n=2 1 1"), 1, 2) == 1
    assert linking_number(W("n=2 -1 -1"), 1, 2) == -1
    assert linking_number(W("n=2"), 1, 2) == 0
    with pytest.raises(BraidError):
        linking_number(W("n=2 1 1"), 1, 1)


def test_component_ids_are_smallest_strand():
    w = W("n=3 2 2 1 1")
    assert sorted(set(w.component_ids())) == [1, 2, 3] or w.closure_components() < 3
    w = W("n=3 2")
    assert sorted(set(w.component_ids())) == [1, 2]


@given(braid_words(max_n=5, max_len=10))
def test_switch_is_involution(w):
    for p in range(len(w)):
        assert switch(switch(w, p), p) == w


@given(braid_words(max_n=5, max_len=10))
def test_free_reduction_keeps_closure_data(w):
    r = w.free_reduce()
    assert r.permutation() == w.permutation()
    assert r.closure_components() == w.closure_components()
    assert r.exponent_sum() == w.exponent_sum()


@given(braid_words(max_n=4, max_len=6))
def test_free_reduction_keeps_jones(w):
    j = SkeinSystem.jones()
    assert evaluate(w.free_reduce(), j) == evaluate(w, j)


@given(braid_words(max_n=4, max_len=8))
def test_stabilize_then_destabilize(w):
    up = apply_markov(w, MarkovMove.stabilize(-1))
    assert apply_markov(up, MarkovMove.destabilize()) == w


@given(st.integers(3, 5), st.integers(1, 4), st.integers(0, 10**6))
def test_lcs_elements_are_pure(n, k, seed):
    a = pure_lcs_element(n, k, seed)
    assert a.permutation() == tuple(range(1, n + 1))
    if k >= 2:
        assert a.exponent_sum() == 0


def test_band_generator():
    assert band_generator(3, 1, 3) == W("n=3 2 1 1 -2")
    assert band_generator(3, 1, 2) == W("n=3 1 1")
    with pytest.raises(BraidError):
        band_generator(3, 2, 2)


def test_letter_kinds():
    assert BraidLetter.parse("t3") == BraidLetter(3, SING)
    assert BraidLetter.parse("-2").inverse() == BraidLetter(2, POS)
    assert BraidLetter(1, NEG).token() == "-1"
