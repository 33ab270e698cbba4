"""Braid and singular-braid words and the combinatorics of their closures.

Token format: ``n=3 -1 -1 2 -1`` where ``i`` is sigma_i, ``-i`` its inverse
and ``ti`` the singular generator tau_i.  Strands and generator indices are
1-based in the public API.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "BraidError",
    "BraidLetter",
    "BraidWord",
    "MarkovMove",
    "POS",
    "NEG",
    "SING",
    "apply_markov",
    "random_markov_walk",
    "resolve",
    "smooth",
    "switch",
    "linking_number",
    "band_generator",
    "pure_lcs_element",
    "commutator",
]

POS, NEG, SING = 1, -1, 0

MAX_WALK_STRANDS = 8
MAX_WALK_LENGTH = 64


class BraidError(ValueError):
    """Malformed word or violated precondition on a braid operation."""


class BraidLetter(NamedTuple):
    index: int
    kind: int  # POS, NEG or SING

    @classmethod
    def parse(cls, tok: str) -> "BraidLetter":
        try:
            if tok.startswith("t"):
                return cls(int(tok[1:]), SING)
            v = int(tok)
        except ValueError:
            raise BraidError(f"bad braid token {tok!r}") from None
        if v == 0:
            raise BraidError("generator index 0 is not allowed")
        return cls(abs(v), POS if v > 0 else NEG)

    def token(self) -> str:
        if self.kind == SING:
            return f"t{self.index}"
        return str(self.index * self.kind)

    def inverse(self) -> "BraidLetter":
        if self.kind == SING:
            raise BraidError("singular generators are not invertible")
        return BraidLetter(self.index, -self.kind)

    def __str__(self):
        return self.token()


def _letters(items: Iterable) -> tuple:
    out = []
    for x in items:
        if isinstance(x, BraidLetter):
            out.append(x)
        elif isinstance(x, int):
            out.append(BraidLetter(abs(x), POS if x > 0 else NEG))
        elif isinstance(x, str):
            out.append(BraidLetter.parse(x))
        elif isinstance(x, tuple) and len(x) == 2:
            out.append(BraidLetter(*x))
        else:
            raise BraidError(f"cannot interpret {x!r} as a braid letter")
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _letters(self.letters))
        if self.n < 1:
            raise BraidError("a braid needs at least one strand")
        for l in self.letters:
            if not 1 <= l.index < self.n:
                raise BraidError(f"letter {l.token()} out of range for {self.n} strands")
            if l.kind not in (POS, NEG, SING):
                raise BraidError(f"bad letter kind {l.kind}")

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        toks = text.split()
        if not toks or not toks[0].startswith("n="):
            raise BraidError("braid text must start with 'n=<strands>'")
        try:
            n = int(toks[0][2:])
        except ValueError:
            raise BraidError(f"bad strand header {toks[0]!r}") from None
        return cls(n, tuple(BraidLetter.parse(t) for t in toks[1:]))

    def __str__(self):
        return " ".join([f"n={self.n}"] + [l.token() for l in self.letters])

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        n = max(self.n, other.n)
        return BraidWord(n, self.letters + other.letters)

    def with_letters(self, letters: Sequence) -> "BraidWord":
        return BraidWord(self.n, tuple(letters))

    def embed(self, n: int) -> "BraidWord":
        if n < self.n:
            raise BraidError("cannot embed into fewer strands")
        return BraidWord(n, self.letters)

    @property
    def singular_count(self) -> int:
        return sum(1 for l in self.letters if l.kind == SING)

    def is_singular(self) -> bool:
        return any(l.kind == SING for l in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(l.inverse() for l in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        """Flip every crossing; tau letters are their own mirror image."""
        return BraidWord(self.n, tuple(l if l.kind == SING else l.inverse() for l in self.letters))

    def free_reduce(self) -> "BraidWord":
        stack: list = []
        for l in self.letters:
            if stack and l.kind != SING and stack[-1].index == l.index and stack[-1].kind == -l.kind:
                stack.pop()
            else:
                stack.append(l)
        return BraidWord(self.n, tuple(stack))

    def exponent_sum(self) -> int:
        return sum(l.kind for l in self.letters)

    # closure combinatorics

    def _final_positions(self) -> list:
        arr = list(range(self.n))  # arr[position] = strand starting there
        for l in self.letters:
            i = l.index
            arr[i - 1], arr[i] = arr[i], arr[i - 1]
        pos = [0] * self.n
        for p, strand in enumerate(arr):
            pos[strand] = p
        return pos

    def permutation(self) -> tuple:
        """Image of each top position 1..n at the bottom of the braid."""
        return tuple(p + 1 for p in self._final_positions())

    def cycles(self) -> list:
        """Closure components as sorted lists of 1-based top positions."""
        perm = self._final_positions()
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            p = start
            while not seen[p]:
                seen[p] = True
                cyc.append(p + 1)
                p = perm[p]
            out.append(sorted(cyc))
        return out

    def closure_components(self) -> int:
        return len(self.cycles())

    def component_ids(self) -> tuple:
        """Component id (smallest strand of its cycle) for each top position."""
        ids = [0] * self.n
        for cyc in self.cycles():
            for p in cyc:
                ids[p - 1] = cyc[0]
        return tuple(ids)

    def crossing_components(self) -> list:
        """For each letter, the component ids of its left and right incoming arcs."""
        arr = list(self.component_ids())
        out = []
        for l in self.letters:
            i = l.index
            out.append((arr[i - 1], arr[i]))
            arr[i - 1], arr[i] = arr[i], arr[i - 1]
        return out


def exponent_sum(w: BraidWord) -> int:
    return w.exponent_sum()


@dataclass(frozen=True)
class MarkovMove:
    """One Markov move.

    ``kind`` is ``"conjugate"`` (word -> g^-1 w g, freely reduced),
    ``"stabilize"`` (append sigma_n^sign on a new strand) or ``"destabilize"``.
    """

    kind: str
    generator: BraidLetter | None = None
    sign: int = 1

    @classmethod
    def conjugate(cls, g) -> "MarkovMove":
        return cls("conjugate", _letters([g])[0])

    @classmethod
    def stabilize(cls, sign: int = 1) -> "MarkovMove":
        return cls("stabilize", sign=sign)

    @classmethod
    def destabilize(cls) -> "MarkovMove":
        return cls("destabilize")


def can_destabilize(w: BraidWord) -> bool:
    if w.n < 2 or not w.letters:
        return False
    last = w.letters[-1]
    if last.index != w.n - 1 or last.kind == SING:
        return False
    return sum(1 for l in w.letters if l.index == w.n - 1) == 1


def apply_markov(w: BraidWord, m: MarkovMove) -> BraidWord:
    if m.kind == "conjugate":
        g = m.generator
        if g is None or g.kind == SING:
            raise BraidError("conjugation needs an invertible generator")
        if not 1 <= g.index < w.n:
            raise BraidError(f"generator {g.token()} out of range")
        return BraidWord(w.n, (g.inverse(),) + w.letters + (g,)).free_reduce()
    if m.kind == "stabilize":
        if m.sign not in (1, -1):
            raise BraidError("stabilization sign must be +1 or -1")
        return BraidWord(w.n + 1, w.letters + (BraidLetter(w.n, m.sign),))
    if m.kind == "destabilize":
        if not can_destabilize(w):
            raise BraidError(f"cannot destabilize {w}")
        return BraidWord(w.n - 1, w.letters[:-1])
    raise BraidError(f"unknown Markov move {m.kind!r}")


def random_markov_walk(
    w: BraidWord,
    steps: int,
    seed: int,
    max_strands: int = MAX_WALK_STRANDS,
    max_length: int = MAX_WALK_LENGTH,
) -> BraidWord:
    """A seeded random sequence of Markov moves starting from ``w``.

    All randomness comes from ``random.Random(seed)``.  Words with tau letters
    are only conjugated by rotation and (de)stabilized.
    """
    rng = random.Random(seed)
    cur = w
    for _ in range(steps):
        options = []
        if cur.n >= 2 and len(cur) + 2 <= max_length and not cur.is_singular():
            options.append("conjugate")
        if cur.letters and cur.letters[0].kind != SING:
            options.append("rotate")
        if cur.n < max_strands and len(cur) + 1 <= max_length:
            options.append("stabilize")
        top = [k for k, l in enumerate(cur.letters) if l.index == cur.n - 1]
        if cur.n >= 2 and len(top) == 1 and cur.letters[top[0]].kind != SING:
            pre = cur.letters[: top[0] + 1]
            if all(l.kind != SING for l in pre):
                options.append("destabilize")
        if not options:
            continue
        choice = rng.choice(options)
        if choice == "conjugate":
            g = BraidLetter(rng.randrange(1, cur.n), rng.choice((POS, NEG)))
            cur = apply_markov(cur, MarkovMove.conjugate(g))
        elif choice == "rotate":
            cur = apply_markov(cur, MarkovMove.conjugate(cur.letters[0]))
        elif choice == "stabilize":
            cur = apply_markov(cur, MarkovMove.stabilize(rng.choice((1, -1))))
        else:
            # rotate the lone top-index letter to the end, then destabilize
            k = top[0] + 1
            cur = BraidWord(cur.n, cur.letters[k:] + cur.letters[:k])
            cur = apply_markov(cur, MarkovMove.destabilize())
    return cur


def _check_pos(w: BraidWord, pos: int, singular: bool) -> BraidLetter:
    if not 0 <= pos < len(w):
        raise BraidError(f"position {pos} out of range")
    l = w.letters[pos]
    if singular and l.kind != SING:
        raise BraidError(f"letter at {pos} is {l.token()}, expected a tau")
    if not singular and l.kind == SING:
        raise BraidError(f"letter at {pos} is singular, expected a sigma")
    return l


def resolve(w: BraidWord, pos: int, sign: int) -> BraidWord:
    """Replace the tau at ``pos`` by sigma^sign."""
    l = _check_pos(w, pos, singular=True)
    if sign not in (1, -1):
        raise BraidError("sign must be +1 or -1")
    letters = list(w.letters)
    letters[pos] = BraidLetter(l.index, sign)
    return w.with_letters(letters)


def smooth(w: BraidWord, pos: int) -> BraidWord:
    """Oriented smoothing of the crossing at ``pos`` (the letter is deleted)."""
    _check_pos(w, pos, singular=False)
    return w.with_letters(w.letters[:pos] + w.letters[pos + 1 :])


def switch(w: BraidWord, pos: int) -> BraidWord:
    """Crossing change at ``pos``."""
    l = _check_pos(w, pos, singular=False)
    letters = list(w.letters)
    letters[pos] = l.inverse()
    return w.with_letters(letters)


def linking_number(w: BraidWord, a: int, b: int) -> int:
    """Linking number of closure components ``a`` and ``b``.

    Components are named by their smallest strand index.
    """
    if a == b:
        raise BraidError("linking number needs two distinct components")
    ids = set(w.component_ids())
    if a not in ids or b not in ids:
        raise BraidError(f"components must be among {sorted(ids)}")
    total = 0
    for l, (c1, c2) in zip(w.letters, w.crossing_components()):
        if {c1, c2} == {a, b}:
            if l.kind == SING:
                raise BraidError("unresolved double point between the two components")
            total += l.kind
    if total % 2:
        raise AssertionError("odd crossing count between two components")
    return total // 2


def band_generator(n: int, i: int, j: int) -> BraidWord:
    """The pure braid A_ij = (s_{j-1}..s_{i+1}) s_i^2 (s_{i+1}..s_{j-1})^-1."""
    if not 1 <= i < j <= n:
        raise BraidError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    down = list(range(j - 1, i, -1))
    letters = down + [i, i] + [-k for k in reversed(down)]
    return BraidWord(n, tuple(letters))


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    return (a * b * a.inverse() * b.inverse()).free_reduce()


def pure_lcs_element(n: int, k: int, seed: int) -> BraidWord:
    """A left-normed commutator [[..[X1, X2], ..], Xk] of random band generators.

    The result lies in the k-th term of the lower central series of P_n.
    """
    if n < 3 or k < 1:
        raise BraidError("need n >= 3 and k >= 1")
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    first = rng.choice(pairs)
    elem = band_generator(n, *first)
    if k >= 2:
        second = rng.choice([p for p in pairs if p != first])
        elem = commutator(elem, band_generator(n, *second))
    for _ in range(k - 2):
        elem = commutator(elem, band_generator(n, *rng.choice(pairs)))
    return elem
