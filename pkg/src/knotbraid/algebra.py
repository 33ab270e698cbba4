"""Exact arithmetic: Laurent polynomials in q^(1/2), truncated power series,
matrices over those rings, and rational linear algebra.

Exponents of :class:`HalfLaurent` are stored doubled, so the key ``k`` stands
for ``q^(k/2)``.  Coefficients are Python ints or :class:`fractions.Fraction`;
integral fractions are collapsed to ints so that equality and hashing agree.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "HalfLaurent",
    "TruncSeries",
    "RingMatrix",
    "RationalMatrix",
    "nullity",
    "parse_poly",
    "Q",
    "S",
    "ONE",
    "ZERO",
]


def _norm(c) -> Rational:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    return _norm(Fraction(c))


class HalfLaurent:
    """Immutable sparse Laurent polynomial in ``s = q^(1/2)``.

    ``HalfLaurent({2: 1, 0: -1})`` is ``q - 1``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _norm(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "HalfLaurent":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Rational) -> "HalfLaurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "HalfLaurent":
        """``c * q^(k/2)``."""
        return cls({k: c})

    @classmethod
    def coerce(cls, x) -> "HalfLaurent":
        if isinstance(x, HalfLaurent):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to HalfLaurent")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, k: int) -> Rational:
        return self._terms.get(k, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # ring operations

    def __add__(self, other):
        try:
            other = HalfLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return HalfLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = HalfLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return HalfLaurent.coerce(other) - self

    def __mul__(self, other):
        try:
            other = HalfLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return HalfLaurent._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "HalfLaurent":
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit")
        (k, c), = self._terms.items()
        return HalfLaurent._raw({-k: _norm(Fraction(1) / c)})

    def divmod(self, other: "HalfLaurent"):
        """Long division in ``Q[s, 1/s]`` after shifting both to polynomials."""
        other = HalfLaurent.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return ZERO, ZERO
        lo_d = other.min_exp()
        d = [other.coeff(lo_d + i) for i in range(other.max_exp() - lo_d + 1)]
        lo_n = self.min_exp()
        n = [Fraction(self.coeff(lo_n + i)) for i in range(self.max_exp() - lo_n + 1)]
        lead = Fraction(d[-1])
        quot: dict = {}
        for top in range(len(n) - 1, len(d) - 2, -1):
            c = n[top]
            if not c:
                continue
            f = c / lead
            shift = top - (len(d) - 1)
            quot[shift] = f
            for j, dj in enumerate(d):
                n[shift + j] -= f * dj
        shift0 = lo_n - lo_d
        q = HalfLaurent({k + shift0: c for k, c in quot.items()})
        r = HalfLaurent({i + lo_n: c for i, c in enumerate(n) if c})
        return q, r

    def __truediv__(self, other):
        other = HalfLaurent.coerce(other)
        if other.is_monomial():
            return self * other.inverse()
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HalfLaurent.const(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitutions

    def involute(self) -> "HalfLaurent":
        """The mirror substitution ``q -> 1/q``."""
        return HalfLaurent._raw({-k: c for k, c in self._terms.items()})

    def eval_one(self) -> Rational:
        """Value at ``q = 1``."""
        return _norm(sum(self._terms.values(), 0))

    def expand(self, order: int) -> "TruncSeries":
        """Substitute ``q = e^x`` and expand through ``x^order``."""
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = [Fraction(0)] * (order + 1)
        facts = [math.factorial(t) for t in range(order + 1)]
        for k, c in self._terms.items():
            half = Fraction(k, 2)
            p = Fraction(1)
            for t in range(order + 1):
                coeffs[t] += c * p / facts[t]
                p *= half
        return TruncSeries(coeffs)

    def substitute_shift(self, k: int) -> "HalfLaurent":
        return HalfLaurent._raw({e + k: c for e, c in self._terms.items()})

    # text form

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(sorted(self._terms.items())):
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = str(a)
            else:
                if k % 2 == 0:
                    mono = "q" if k == 2 else f"q^{k // 2}"
                else:
                    mono = f"q^({k}/2)"
                body = mono if a == 1 else f"{a}*{mono}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"HalfLaurent({self})"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
    (?:(?P<coef>\d+(?:/\d+)?)(?P<star>\*)?)?
    (?P<q>q(?:\^(?:\((?P<half>-?\d+)/2\)|(?P<int>-?\d+)))?)?
    \s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> HalfLaurent:
    """Inverse of ``str(HalfLaurent)``."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("q") is None):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if m.group("star") and m.group("q") is None:
            raise ValueError(f"dangling '*' in {text!r}")
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        if m.group("q") is None:
            k = 0
        elif m.group("half") is not None:
            k = int(m.group("half"))
            if k % 2 == 0:
                raise ValueError(f"even half-exponent in {text!r}")
        elif m.group("int") is not None:
            k = 2 * int(m.group("int"))
        else:
            k = 2
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    return HalfLaurent(terms)


ZERO = HalfLaurent()
ONE = HalfLaurent.const(1)
Q = HalfLaurent.monomial(2)
S = HalfLaurent.monomial(1)


class TruncSeries:
    """Rational power series in ``x`` known through ``x^order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Rational]):
        if not coeffs:
            raise ValueError("a series needs at least the constant term")
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def const(cls, c: Rational, order: int) -> "TruncSeries":
        return cls([c] + [0] * order)

    def coeff(self, t: int) -> Fraction:
        if t > self.order:
            raise IndexError(f"coefficient {t} beyond order {self.order}")
        return self.coeffs[t]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all vanish."""
        for t, c in enumerate(self.coeffs):
            if c:
                return t
        return None

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1])

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries.const(other, self.order)
        raise TypeError

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        return TruncSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return TruncSeries(
            [sum(a[s] * b[t - s] for s in range(t + 1)) for t in range(n + 1)]
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return " + ".join(f"({c})*x^{t}" for t, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"TruncSeries({[str(c) for c in self.coeffs]})"


class RingMatrix:
    """Dense matrix over HalfLaurent (or TruncSeries) entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, d: int, one=ONE, zero=ZERO) -> "RingMatrix":
        return cls([[one if i == j else zero for j in range(d)] for i in range(d)])

    @classmethod
    def zeros(cls, r: int, c: int, zero=ZERO) -> "RingMatrix":
        return cls([[zero] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = None
                for k, a in enumerate(row):
                    b = other.entries[k][j]
                    if _is_zero(a) or _is_zero(b):
                        continue
                    acc = a * b if acc is None else acc + a * b
                new.append(acc if acc is not None else _zero_like(row[0]))
            out.append(new)
        return RingMatrix(out)

    mat_mul = __matmul__

    def _zip(self, other, op):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RingMatrix(
            [[op(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def scale(self, c) -> "RingMatrix":
        return RingMatrix([[c * a for a in row] for row in self.entries])

    def map(self, f) -> "RingMatrix":
        return RingMatrix([[f(a) for a in row] for row in self.entries])

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = self.entries[0][0]
        for i in range(1, self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def kron(self, other: "RingMatrix") -> "RingMatrix":
        out = []
        for r1 in self.entries:
            for r2 in other.entries:
                out.append([a * b for a in r1 for b in r2])
        return RingMatrix(out)

    def transpose(self) -> "RingMatrix":
        return RingMatrix(list(zip(*self.entries)))

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols})"


def _is_zero(a) -> bool:
    if isinstance(a, HalfLaurent):
        return a.is_zero()
    if isinstance(a, TruncSeries):
        return not any(a.coeffs)
    return a == 0


def _zero_like(a):
    if isinstance(a, TruncSeries):
        return TruncSeries.const(0, a.order)
    return ZERO


class RationalMatrix:
    """Sparse-row matrix of rationals; rows are dicts ``col -> value``."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[Mapping[int, Rational]] = ()):
        self.rows = rows
        self.cols = cols
        self.data = []
        for r in data:
            row = {}
            for j, v in r.items():
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range")
                v = Fraction(v)
                if v:
                    row[j] = v
            self.data.append(row)
        self.data += [{} for _ in range(rows - len(self.data))]
        if len(self.data) != rows:
            raise ValueError("more data rows than declared")

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[Rational]]) -> "RationalMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return cls(rows, cols, [{j: v for j, v in enumerate(r) if v} for r in entries])

    def to_dense(self) -> list:
        return [[r.get(j, Fraction(0)) for j in range(self.cols)] for r in self.data]

    def rank(self) -> int:
        """Exact rank by column-wise elimination.

        The pivot in each column is the candidate row whose entry has the
        smallest ``|numerator * denominator|`` (ties: lowest row index).
        """
        rows = {i: dict(r) for i, r in enumerate(self.data) if r}
        by_col: dict = {}
        for i, r in rows.items():
            for j in r:
                by_col.setdefault(j, set()).add(i)
        rank = 0
        for col in sorted(by_col):
            cand = by_col.get(col)
            if not cand:
                continue
            piv = min(cand, key=lambda i: (abs(rows[i][col].numerator * rows[i][col].denominator), i))
            prow = rows.pop(piv)
            for j in prow:
                by_col[j].discard(piv)
            pv = prow[col]
            for i in list(by_col[col]):
                row = rows[i]
                f = row[col] / pv
                for j, v in prow.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        if j not in row:
                            by_col.setdefault(j, set()).add(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
                        by_col[j].discard(i)
                if not row:
                    del rows[i]
            rank += 1
            del by_col[col]
        return rank

    def nullity(self) -> int:
        return self.cols - self.rank()


def nullity(a: RationalMatrix) -> int:
    """Dimension of the kernel of ``a`` acting on column vectors."""
    return a.nullity()
