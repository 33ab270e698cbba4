"""The ten acceptance criteria, each reported on one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are also repeated
in the terminal summary.  ``python3 tests/test_acceptance.py`` runs the same
checks without pytest.
"""

import itertools
import random
import time
from fractions import Fraction

from conftest import random_word
from knotbraid.algebra import parse_poly
from knotbraid.braid import NEG, POS, SING, BraidLetter, BraidWord, random_markov_walk, resolve, smooth
from knotbraid.chords import weight_space_dimension
from knotbraid.cli import run
from knotbraid.fixtures import fixture, knot_fixtures, load_fixtures
from knotbraid.rmatrix import builtin_jones, represent, trace_invariant
from knotbraid.skein import SkeinSystem, evaluate
from knotbraid.vassiliev import expand_invariant, stanford_check, u_coefficients, v2

E = builtin_jones()
JONES = SkeinSystem.jones()
ALEX = SkeinSystem.alexander()
SIX_ONE = parse_poly("q^-4 - q^-3 + q^-2 - 2*q^-1 + 2 - q + q^2")


def _cli(*argv):
    import io

    out = io.StringIO()
    code = run(list(argv), out=out, err=io.StringIO())
    return code, out.getvalue().strip()


def test_criterion_01_six_one_jones(acceptance_line):
    w = fixture("6_1").braid
    t0 = time.perf_counter()
    sk = evaluate(w, JONES)
    rm = trace_invariant(w, E)
    dt = time.perf_counter() - t0
    ok = sk == SIX_ONE and rm == SIX_ONE and dt < 1.0
    acceptance_line(1, ok, f"6_1 Jones skein={sk} rmatrix={rm} ({dt:.3f}s)")
    assert ok


def test_criterion_02_dimension_table(acceptance_line):
    expected = [0, 1, 1, 3, 4, 9]
    got, times = [], []
    weight_space_dimension.cache_clear()
    for i in range(1, 7):
        t0 = time.perf_counter()
        code, out = _cli("dims", "--order", str(i))
        times.append(time.perf_counter() - t0)
        got.append(int(out) if code == 0 else None)
    ok = got == expected and sum(times[:5]) < 10 and times[5] < 600
    acceptance_line(2, ok, f"m_1..m_6 = {got} (i<=5 {sum(times[:5]):.1f}s, i=6 {times[5]:.1f}s)")
    assert ok


def _all_words(n, max_len):
    alphabet = [BraidLetter(i, k) for i in range(1, n) for k in (POS, NEG)]
    for length in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=length):
            yield BraidWord(n, letters)


def test_criterion_03_engine_sweep(acceptance_line):
    t0 = time.perf_counter()
    total = mismatches = 0
    for n in (1, 2, 3):
        for w in _all_words(n, 6):
            total += 1
            if trace_invariant(w, E) != evaluate(w, JONES):
                mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 300
    acceptance_line(3, ok, f"{total} words, {mismatches} mismatches ({dt:.1f}s)")
    assert ok


def test_criterion_04_markov_fuzz(acceptance_line):
    fixtures = load_fixtures()
    assert len(fixtures) >= 20
    systems = [JONES, ALEX, SkeinSystem.homfly(2)]
    rng = random.Random(20240404)
    t0 = time.perf_counter()
    walks = failures = 0
    first = None
    for k in range(200):
        f = fixtures[k % 20]
        seed = rng.getrandbits(64)
        u = random_markov_walk(f.braid, 20, seed)
        walks += 1
        for s in systems:
            if evaluate(u, s) != evaluate(f.braid, s):
                failures += 1
                first = first or (f.name, s.name, str(u))
        if trace_invariant(u, E) != trace_invariant(f.braid, E):
            failures += 1
            first = first or (f.name, "rmatrix", str(u))
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 300
    where = f" first at {first}" if first else ""
    acceptance_line(4, ok, f"{walks} walks over 20 fixtures, {failures} changes{where} ({dt:.1f}s)")
    assert ok


def test_criterion_05_skein_identities(acceptance_line):
    rng = random.Random(5)
    systems = [JONES, ALEX] + [SkeinSystem.homfly(n) for n in range(-2, 3)]
    bad = 0
    for _ in range(100):
        w = random_word(rng, rng.randint(2, 4), rng.randint(1, 8))
        p = rng.randrange(len(w))
        i = w.letters[p].index
        plus = w.with_letters(w.letters[:p] + ((i, POS),) + w.letters[p + 1 :])
        minus = w.with_letters(w.letters[:p] + ((i, NEG),) + w.letters[p + 1 :])
        zero = smooth(plus, p)
        for s in systems:
            if not s.relation_holds(evaluate(plus, s), evaluate(minus, s), evaluate(zero, s)):
                bad += 1
    specialised = 0
    for f in load_fixtures():
        if evaluate(f.braid, SkeinSystem.homfly(1)) != evaluate(f.braid, JONES):
            specialised += 1
        if evaluate(f.braid, SkeinSystem.homfly(0)) != evaluate(f.braid, ALEX):
            specialised += 1
    ok = bad == 0 and specialised == 0
    acceptance_line(5, ok, f"100 (word, position) pairs x 7 systems: {bad} violations; specialisation mismatches {specialised}")
    assert ok


def test_criterion_06_vanishing(acceptance_line):
    rng = random.Random(6)
    bad = 0
    for k in range(50):
        j = 1 + k % 4
        w = random_word(rng, rng.randint(2, 4), rng.randint(0, 5), taus=j)
        s = expand_invariant(w, order=j)
        if any(s.coeff(t) != 0 for t in range(j)):
            bad += 1
    knots = knot_fixtures()
    low = [u_coefficients(f.braid, 1) for f in knots]
    low_ok = all(u[0] == 1 and u[1] == 0 for u in low)
    ok = bad == 0 and low_ok
    acceptance_line(6, ok, f"50 singular words: {bad} with a nonzero coefficient below x^j; u_0=1, u_1=0 on {len(knots)} knots: {low_ok}")
    assert ok


def test_criterion_07_crossing_change(acceptance_line):
    rng = random.Random(7)
    N = 6
    bad = 0
    for _ in range(50):
        w = random_word(rng, rng.randint(2, 4), rng.randint(0, 5), taus=rng.randint(1, 3))
        taus = [k for k, l in enumerate(w.letters) if l.kind == SING]
        p = rng.choice(taus)
        diff = expand_invariant(resolve(w, p, 1), order=N) - expand_invariant(resolve(w, p, -1), order=N)
        if diff != expand_invariant(w, order=N):
            bad += 1
    ok = bad == 0
    acceptance_line(7, ok, f"50 (singular word, tau position) pairs through x^{N}: {bad} mismatches")
    assert ok


def test_criterion_08_v2(acceptance_line):
    base = v2(BraidWord(1)) == 0 and v2(BraidWord(2, (1, 1, 1))) == 1
    fuzz_bad = 0
    for f in knot_fixtures():
        for seed in range(3):
            if v2(random_markov_walk(f.braid, 20, seed)) != v2(f.braid):
                fuzz_bad += 1
    ratios = {}
    for f in knot_fixtures():
        val = v2(f.braid)
        if val:
            ratios[f.name] = Fraction(u_coefficients(f.braid, 2)[2]) / val
    constant = len(set(ratios.values())) == 1 and len(ratios) >= 5
    ok = base and fuzz_bad == 0 and constant
    acceptance_line(
        8, ok, f"v2(unknot)=0, v2(trefoil)=1: {base}; fuzz changes {fuzz_bad}; u_2/v2 = {', '.join(sorted({str(r) for r in ratios.values()}))} over {len(ratios)} knots"
    )
    assert ok


def test_criterion_09_stanford(acceptance_line):
    beta = fixture("4_1").braid
    t0 = time.perf_counter()
    failures = []
    for k in (2, 3):
        for seed in range(5):
            rep = stanford_check(beta, 3, k, seed)
            if not rep.agree:
                failures.append(f"k={k} seed={seed} u_{rep.first_disagreement()}")
    dt = time.perf_counter() - t0
    ok = not failures and dt < 600
    acceptance_line(9, ok, f"10 commutators on 4_1: disagreements {failures} ({dt:.1f}s)")
    assert ok


def _rho(letters, n=4):
    return represent(BraidWord(n, tuple(letters)), E)


def test_criterion_10_singular_relations(acceptance_line):
    n = 4
    idx = range(1, n)
    sig = [(i, s) for i in idx for s in (POS, NEG)]
    bad = []
    for i, j in itertools.product(idx, idx):
        if abs(i - j) >= 2:
            pairs = [((i, s), (j, t)) for s in (POS, NEG, SING) for t in (POS, NEG, SING)]
            for a, b in pairs:
                if _rho([a, b]) != _rho([b, a]):
                    bad.append(("11a", a, b))
        if i == j:
            for s in (POS, NEG):
                if _rho([(i, s), (i, SING)]) != _rho([(i, SING), (i, s)]):
                    bad.append(("11b", i, s))
        if abs(i - j) == 1:
            if _rho([i, j, i]) != _rho([j, i, j]):
                bad.append(("11c", i, j))
            if _rho([i, j, (i, SING)]) != _rho([(j, SING), i, j]):
                bad.append(("11d", i, j))
    ok = not bad
    acceptance_line(10, ok, f"relations on B_4 generator instances: {len(bad)} failures {bad[:3] if bad else ''}".rstrip())
    assert ok


if __name__ == "__main__":
    import sys

    def line(number, ok, detail=""):
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(line)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
