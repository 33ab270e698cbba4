"""Skein-relation evaluation of the Alexander-Conway, Jones and H_{q,n}
polynomials on braid closures.

A system is given by weights ``(wp, wm, z)`` with

    wp * F(K+) + wm * F(K-) = z * F(K0)

and the unlink ratio ``delta`` forced by applying the relation to a kink.
sigma_i is declared to be the positive crossing.  For the unknotting
traversal, the arc of sigma_i that moves from position i to i+1 is taken to
be the over-arc (for sigma_i^-1 the other arc is over).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .algebra import ONE, HalfLaurent
from .braid import NEG, POS, SING, BraidError, BraidWord

__all__ = [
    "SkeinSystem",
    "TraversalOrder",
    "traversal_order",
    "layered_check",
    "unlink_value",
    "evaluate",
    "SkeinEvaluator",
    "parse_system",
]

_Z = HalfLaurent({1: 1, -1: -1})  # q^(1/2) - q^(-1/2)


@dataclass(frozen=True)
class SkeinSystem:
    name: str
    wp: HalfLaurent
    wm: HalfLaurent
    z: HalfLaurent
    delta: HalfLaurent

    @classmethod
    def homfly(cls, n: int) -> "SkeinSystem":
        wp = HalfLaurent.monomial(-2 * n)
        wm = HalfLaurent.monomial(2 * n, -1)
        delta = (wp + wm) / _Z
        return cls(f"homfly:{n}", wp, wm, _Z, delta)

    @classmethod
    def jones(cls) -> "SkeinSystem":
        s = cls.homfly(1)
        return cls("jones", s.wp, s.wm, s.z, s.delta)

    @classmethod
    def alexander(cls) -> "SkeinSystem":
        s = cls.homfly(0)
        return cls("alexander", s.wp, s.wm, s.z, s.delta)

    def relation_holds(self, plus: HalfLaurent, minus: HalfLaurent, zero: HalfLaurent) -> bool:
        return self.wp * plus + self.wm * minus == self.z * zero


def parse_system(text: str) -> SkeinSystem:
    if text == "jones":
        return SkeinSystem.jones()
    if text == "alexander":
        return SkeinSystem.alexander()
    if text.startswith("homfly:"):
        try:
            return SkeinSystem.homfly(int(text.split(":", 1)[1]))
        except ValueError:
            pass
    raise ValueError(f"unknown skein system {text!r}")


@dataclass(frozen=True)
class TraversalOrder:
    """Crossing visits ``(letter position, is_over)`` in traversal order.

    Components are walked in increasing component id, each starting at its
    smallest strand on the splitting plane.  ``is_over`` is None for tau.
    """

    visits: tuple


def traversal_order(w: BraidWord) -> TraversalOrder:
    return TraversalOrder(tuple(_visits(w.n, w.letters, w.cycles())))


def _visits(n, letters, cycles):
    for cyc in cycles:
        start = cyc[0] - 1
        p = start
        while True:
            for t, l in enumerate(letters):
                i = l.index
                if p == i - 1:
                    yield t, (None if l.kind == SING else l.kind == POS)
                    p = i
                elif p == i:
                    yield t, (None if l.kind == SING else l.kind == NEG)
                    p = i - 1
            if p == start:
                break


def _first_bad(w: BraidWord) -> int | None:
    seen = set()
    for t, over in _visits(w.n, w.letters, w.cycles()):
        if t in seen:
            continue
        seen.add(t)
        if over is None:
            raise BraidError("singular letter in skein traversal")
        if not over:
            return t
    return None


def layered_check(w: BraidWord, t: TraversalOrder | None = None) -> int | None:
    """None if every crossing is first met as an over-pass, else the
    position of the first crossing met as an under-pass."""
    if w.is_singular():
        raise BraidError("layered_check needs a word without tau letters")
    if t is None:
        return _first_bad(w)
    seen = set()
    for pos, over in t.visits:
        if pos in seen:
            continue
        seen.add(pos)
        if not over:
            return pos
    return None


def unlink_value(sys: SkeinSystem, mu: int) -> HalfLaurent:
    if mu < 1:
        raise ValueError("an unlink has at least one component")
    return sys.delta ** (mu - 1)


# word simplification shared with the v2 recursion

def reduce_word(w: BraidWord) -> BraidWord:
    """Free and cyclic reduction."""
    w = w.free_reduce()
    letters = w.letters
    a, b = 0, len(letters)
    while b - a >= 2 and letters[a].index == letters[b - 1].index and letters[a].kind == -letters[b - 1].kind != 0:
        a += 1
        b -= 1
    return BraidWord(w.n, letters[a:b])


def destabilized(w: BraidWord) -> BraidWord | None:
    """Drop a strand whose top or bottom generator occurs exactly once."""
    if w.n < 2:
        return None
    for idx in (w.n - 1, 1):
        where = [k for k, l in enumerate(w.letters) if l.index == idx]
        if len(where) == 1 and w.letters[where[0]].kind != SING:
            k = where[0]
            rest = w.letters[k + 1 :] + w.letters[:k]
            if idx == w.n - 1:
                return BraidWord(w.n - 1, rest)
            return BraidWord(w.n - 1, tuple((l.index - 1, l.kind) for l in rest))
    return None


def split(w: BraidWord) -> tuple | None:
    """If some generator index is absent, the closure is a split union."""
    used = {l.index for l in w.letters}
    for k in range(1, w.n):
        if k not in used:
            left = BraidWord(k, tuple(l for l in w.letters if l.index < k))
            right = BraidWord(w.n - k, tuple((l.index - k, l.kind) for l in w.letters if l.index > k))
            return left, right
    return None


def memo_key(w: BraidWord) -> tuple:
    """Key invariant under cyclic rotation (conjugation) of the word."""
    letters = w.letters
    if not letters:
        return (w.n, ())
    best = min(letters[k:] + letters[:k] for k in range(len(letters)))
    return (w.n, best)


class SkeinEvaluator:
    """Memoized evaluator for one skein system.

    The memo table is shared across calls; inserts are guarded by a lock and
    all stored values are equal by purity, so concurrent use is safe.
    """

    def __init__(self, system: SkeinSystem):
        self.system = system
        self.memo: dict = {}
        self._lock = threading.Lock()

    def __call__(self, w: BraidWord) -> HalfLaurent:
        if w.is_singular():
            raise BraidError("skein evaluation needs a word without tau letters")
        return self._eval(w)

    def _eval(self, w: BraidWord) -> HalfLaurent:
        sys = self.system
        w = reduce_word(w)
        key = memo_key(w)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        parts = split(w)
        if parts is not None:
            val = sys.delta * self._eval(parts[0]) * self._eval(parts[1])
        elif w.n == 1:
            val = ONE
        else:
            d = destabilized(w)
            if d is not None:
                val = self._eval(d)
            else:
                val = self._crossing(w)
        with self._lock:
            self.memo.setdefault(key, val)
        return val

    def _crossing(self, w: BraidWord) -> HalfLaurent:
        sys = self.system
        bad = _first_bad(w)
        if bad is None:
            return unlink_value(sys, w.closure_components())
        l = w.letters[bad]
        flipped = list(w.letters)
        flipped[bad] = l.inverse()
        other = self._eval(w.with_letters(flipped))
        zero = self._eval(w.with_letters(w.letters[:bad] + w.letters[bad + 1 :]))
        if l.kind == POS:
            return (sys.z * zero - sys.wm * other) / sys.wp
        return (sys.z * zero - sys.wp * other) / sys.wm


_EVALUATORS: dict = {}
_EVAL_LOCK = threading.Lock()


def evaluator(sys: SkeinSystem) -> SkeinEvaluator:
    with _EVAL_LOCK:
        ev = _EVALUATORS.get(sys)
        if ev is None:
            ev = _EVALUATORS[sys] = SkeinEvaluator(sys)
    return ev


def evaluate(w: BraidWord, sys: SkeinSystem) -> HalfLaurent:
    """Invariant of the closure of ``w``, normalized to 1 on the unknot."""
    return evaluator(sys)(w)
