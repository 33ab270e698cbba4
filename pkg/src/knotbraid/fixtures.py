"""Named knot and link braid words with golden Jones and Alexander values.

The data file has one record per line, ``name | braid | jones | alexander``;
lines starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .algebra import HalfLaurent, parse_poly
from .braid import BraidWord

__all__ = ["Fixture", "load_fixtures", "fixture", "knot_fixtures"]


@dataclass(frozen=True)
class Fixture:
    name: str
    braid: BraidWord
    jones: HalfLaurent
    alexander: HalfLaurent

    @property
    def is_knot(self) -> bool:
        return self.braid.closure_components() == 1


def parse_fixtures(text: str) -> list:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 4 fields, got {len(parts)}")
        name, braid, jones, alex = parts
        out.append(Fixture(name, BraidWord.parse(braid), parse_poly(jones), parse_poly(alex)))
    return out


@lru_cache(maxsize=None)
def _all() -> tuple:
    text = resources.files("knotbraid").joinpath("data/knots.txt").read_text()
    return tuple(parse_fixtures(text))


def load_fixtures() -> list:
    return list(_all())


def fixture(name: str) -> Fixture:
    for f in _all():
        if f.name == name:
            return f
    raise KeyError(name)


def knot_fixtures() -> list:
    return [f for f in _all() if f.is_knot]
