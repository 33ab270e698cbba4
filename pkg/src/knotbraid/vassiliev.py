"""Power-series expansion of R-matrix invariants (q = e^x), vanishing order on
singular braids, the order-two invariant v2, Stanford's lower-central-series
test harness.  Chord diagrams and weight systems live in ``chords`` and are
re-exported here."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .algebra import TruncSeries
from .braid import POS, BraidError, BraidWord, linking_number, pure_lcs_element
from .chords import ChordDiagram, WeightSystemSpace, enumerate_configurations, weight_space_dimension
from .rmatrix import EnhancedRMatrix, builtin_jones, trace_invariant
from .skein import _first_bad, destabilized, memo_key, reduce_word

__all__ = [
    "DEFAULT_ORDER",
    "expand_invariant",
    "vanishing_order",
    "v2",
    "StanfordReport",
    "stanford_check",
    "u_coefficients",
    "ChordDiagram",
    "WeightSystemSpace",
    "enumerate_configurations",
    "weight_space_dimension",
]

DEFAULT_ORDER = 8


def expand_invariant(
    w: BraidWord, E: EnhancedRMatrix | None = None, order: int = DEFAULT_ORDER
) -> TruncSeries:
    """Normalized trace invariant with q = e^x, through x^order.

    Singular words are accepted; tau_i is sent to R - R^-1."""
    if E is None:
        E = builtin_jones()
    return trace_invariant(w, E).expand(order)


def vanishing_order(w: BraidWord, E: EnhancedRMatrix | None = None, order: int | None = None) -> int:
    """First t with a nonzero x^t coefficient; ``order + 1`` if none up to ``order``."""
    j = w.singular_count
    if order is None:
        order = max(j, DEFAULT_ORDER)
    if order < j:
        raise ValueError(f"order {order} is below the {j} singular letters")
    v = expand_invariant(w, E, order).valuation()
    return order + 1 if v is None else v


_V2_MEMO: dict = {}
_V2_LOCK = threading.Lock()


def v2(w: BraidWord) -> int:
    """Order-two invariant from v2(K+) - v2(K-) = lk(K0), v2(unknot) = 0.

    Uses the same unknotting traversal as the skein evaluator."""
    if w.is_singular():
        raise BraidError("v2 needs a word without tau letters")
    if w.closure_components() != 1:
        raise BraidError("v2 is defined on knots only")
    return _v2(w)


def _v2(w: BraidWord) -> int:
    w = reduce_word(w)
    key = memo_key(w)
    hit = _V2_MEMO.get(key)
    if hit is not None:
        return hit
    if w.n == 1:
        val = 0
    else:
        d = destabilized(w)
        if d is not None:
            val = _v2(d)
        else:
            bad = _first_bad(w)
            if bad is None:
                val = 0
            else:
                l = w.letters[bad]
                flipped = list(w.letters)
                flipped[bad] = l.inverse()
                other = _v2(w.with_letters(flipped))
                smoothed = w.with_letters(w.letters[:bad] + w.letters[bad + 1 :])
                a, b = sorted(set(smoothed.component_ids()))
                lk = linking_number(smoothed, a, b)
                val = other + lk if l.kind == POS else other - lk
    with _V2_LOCK:
        _V2_MEMO.setdefault(key, val)
    return val


@dataclass(frozen=True)
class StanfordReport:
    n: int
    depth: int
    seed: int
    alpha: BraidWord
    base: tuple  # u_0..u_depth of the closure of beta
    twisted: tuple  # u_0..u_depth of the closure of alpha*beta

    @property
    def agree(self) -> bool:
        return self.base == self.twisted

    def first_disagreement(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.base, self.twisted)):
            if a != b:
                return i
        return None


def stanford_check(
    beta: BraidWord, n: int, depth: int, seed: int, E: EnhancedRMatrix | None = None
) -> StanfordReport:
    """Compare u_0..u_depth of the closures of beta and alpha*beta, where alpha
    is drawn from the depth-th lower central series term of P_n."""
    if beta.n > n:
        raise BraidError(f"beta has {beta.n} strands, more than n={n}")
    beta = beta.embed(n)
    if beta.closure_components() != 1:
        raise BraidError("beta must close to a knot")
    alpha = pure_lcs_element(n, depth, seed)
    base = expand_invariant(beta, E, depth).coeffs
    twisted = expand_invariant(alpha * beta, E, depth).coeffs
    return StanfordReport(n, depth, seed, alpha, tuple(base), tuple(twisted))


def u_coefficients(w: BraidWord, order: int = DEFAULT_ORDER, E: EnhancedRMatrix | None = None) -> list:
    return [Fraction(c) for c in expand_invariant(w, E, order).coeffs]
