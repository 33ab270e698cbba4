"""Chord diagrams up to rotation and the 1T/4T weight-system dimension.

A diagram of order i is a perfect matching of the points 0..2i-1 placed
clockwise on an oriented circle.  It is stored as its partner array
``p`` (``p[a]`` is the other end of the chord at ``a``), reduced to the
lexicographically smallest of its 2i rotations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .algebra import RationalMatrix

__all__ = [
    "MAX_ORDER",
    "ChordDiagram",
    "WeightSystemSpace",
    "enumerate_configurations",
    "four_term_rows",
    "weight_space",
    "weight_space_dimension",
]

MAX_ORDER = 7


def _rotate(p: tuple, r: int) -> tuple:
    m = len(p)
    return tuple((p[(x + r) % m] - r) % m for x in range(m))


def _canonical(p: tuple) -> tuple:
    return min(_rotate(p, r) for r in range(len(p))) if p else p


def _check_order(i: int):
    if not 1 <= i <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {i}")


@dataclass(frozen=True)
class ChordDiagram:
    partners: tuple

    def __post_init__(self):
        p = tuple(self.partners)
        m = len(p)
        if m == 0 or m % 2:
            raise ValueError("a chord diagram needs an even, positive number of points")
        if sorted(p) != list(range(m)) or any(p[a] == a or p[p[a]] != a for a in range(m)):
            raise ValueError(f"not a perfect matching: {p}")
        object.__setattr__(self, "partners", _canonical(p))

    @classmethod
    def from_chords(cls, chords) -> "ChordDiagram":
        chords = [tuple(c) for c in chords]
        m = 2 * len(chords)
        p = [-1] * m
        for a, b in chords:
            if not (0 <= a < m and 0 <= b < m) or p[a] != -1 or p[b] != -1 or a == b:
                raise ValueError(f"bad chord list {chords}")
            p[a], p[b] = b, a
        return cls(tuple(p))

    @classmethod
    def parse(cls, text: str) -> "ChordDiagram":
        m = re.fullmatch(r"\s*i=(\d+)\s*((?:\(\s*\d+\s+\d+\s*\)\s*)*)", text)
        if not m:
            raise ValueError(f"cannot parse chord diagram {text!r}")
        chords = [(int(a), int(b)) for a, b in re.findall(r"\(\s*(\d+)\s+(\d+)\s*\)", m.group(2))]
        if len(chords) != int(m.group(1)):
            raise ValueError(f"order {m.group(1)} does not match {len(chords)} chords")
        return cls.from_chords(chords)

    @property
    def order(self) -> int:
        return len(self.partners) // 2

    def chords(self) -> list:
        return [(a, b) for a, b in enumerate(self.partners) if a < b]

    def __str__(self):
        body = "".join(f"({a} {b})" for a, b in self.chords())
        return f"i={self.order} {body}"

    def crosses(self, c1: tuple, c2: tuple) -> bool:
        a, b = c1
        return (a < c2[0] < b) != (a < c2[1] < b)

    def has_isolated_chord(self) -> bool:
        """True if some chord is crossed by no other chord."""
        cs = self.chords()
        return any(not any(self.crosses(c, d) for d in cs if d != c) for c in cs)


def _matchings(points: list):
    if not points:
        yield ()
        return
    a = points[0]
    for k in range(1, len(points)):
        b = points[k]
        rest = points[1:k] + points[k + 1 :]
        for m in _matchings(rest):
            yield ((a, b),) + m


@lru_cache(maxsize=None)
def _configurations(i: int) -> tuple:
    seen = set()
    for m in _matchings(list(range(2 * i))):
        p = [0] * (2 * i)
        for a, b in m:
            p[a], p[b] = b, a
        seen.add(_canonical(tuple(p)))
    return tuple(sorted(seen))


def enumerate_configurations(i: int) -> list:
    """Every order-i chord diagram up to rotation, canonical and sorted."""
    _check_order(i)
    return [ChordDiagram(p) for p in _configurations(i)]


def _from_sequence(labels: list) -> tuple:
    """Canonical partner array of a cyclic sequence of chord labels."""
    first = {}
    p = [0] * len(labels)
    for x, lab in enumerate(labels):
        if lab in first:
            y = first[lab]
            p[x], p[y] = y, x
        else:
            first[lab] = x
    return _canonical(tuple(p))


def four_term_rows(i: int, index: dict | None = None) -> list:
    """All four-term relations among order-i diagrams as sparse rows.

    Fix a chord b with ends P, Q and let one end y of another chord a move.
    With the remaining endpoints fixed,

        D(y just before P) - D(y just after P)
      + D(y just before Q) - D(y just after Q) = 0.

    Every instance arises from some diagram by removing one end of a and
    picking b, so walking (diagram, a, end of a, b) finds them all.
    Rows whose terms cancel are dropped and duplicates are merged.
    """
    _check_order(i)
    if index is None:
        index = {p: k for k, p in enumerate(_configurations(i))}
    rows = set()
    for p in _configurations(i):
        m = len(p)
        labels = [min(x, p[x]) for x in range(m)]
        for y in range(m):
            a = labels[y]
            base = labels[:y] + labels[y + 1 :]
            for b in set(base):
                if b == a:
                    continue
                ends = [x for x, lab in enumerate(base) if lab == b]
                row: dict = {}
                for end in ends:
                    for offset, sign in ((0, 1), (1, -1)):
                        at = end + offset
                        seq = base[:at] + [a] + base[at:]
                        col = index[_from_sequence(seq)]
                        row[col] = row.get(col, 0) + sign
                row = {c: v for c, v in row.items() if v}
                if not row:
                    continue
                # fix an overall sign so that r and -r coincide
                lead = min(row)
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                rows.add(tuple(sorted(row.items())))
    return [dict(r) for r in sorted(rows)]


@dataclass
class WeightSystemSpace:
    order: int
    basis: list
    relations: RationalMatrix
    dimension: int


def weight_space(i: int) -> WeightSystemSpace:
    """Build the 1T + 4T system on order-i diagrams and solve for its nullity."""
    _check_order(i)
    configs = _configurations(i)
    index = {p: k for k, p in enumerate(configs)}
    basis = [ChordDiagram(p) for p in configs]
    rows = [{k: 1} for k, d in enumerate(basis) if d.has_isolated_chord()]
    isolated = {next(iter(r)) for r in rows}
    for r in four_term_rows(i, index):
        # isolated-chord columns are already pinned to zero
        r = {c: v for c, v in r.items() if c not in isolated}
        if r:
            rows.append(r)
    mat = RationalMatrix(len(rows), len(basis), rows)
    return WeightSystemSpace(i, basis, mat, mat.nullity())


@lru_cache(maxsize=None)
def weight_space_dimension(i: int) -> int:
    return weight_space(i).dimension
