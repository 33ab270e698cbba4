from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from knotbraid.algebra import HalfLaurent
from knotbraid.braid import NEG, POS, SING, BraidLetter, BraidWord

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


coeffs = st.one_of(
    st.integers(-5, 5),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def half_laurents(draw, max_terms=5, span=8):
    ks = draw(st.lists(st.integers(-span, span), max_size=max_terms))
    return HalfLaurent({k: draw(coeffs) for k in ks})


@st.composite
def braid_words(draw, max_n=4, max_len=8, singular=0, min_n=2):
    """Random words; ``singular`` tau letters are inserted at random places."""
    n = draw(st.integers(min_n, max_n))
    length = draw(st.integers(0, max_len))
    letters = [
        BraidLetter(draw(st.integers(1, n - 1)), draw(st.sampled_from((POS, NEG))))
        for _ in range(length)
    ]
    for _ in range(singular):
        pos = draw(st.integers(0, len(letters)))
        letters.insert(pos, BraidLetter(draw(st.integers(1, n - 1)), SING))
    return BraidWord(n, tuple(letters))


def random_word(rng, n, length, taus=0):
    letters = [BraidLetter(rng.randrange(1, n), rng.choice((POS, NEG))) for _ in range(length)]
    for _ in range(taus):
        letters.insert(rng.randrange(len(letters) + 1), BraidLetter(rng.randrange(1, n), SING))
    return BraidWord(n, tuple(letters))


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record
