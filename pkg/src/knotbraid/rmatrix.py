"""Enhanced R-matrices, the tensor-slot braid representations they generate,
and the Markov-trace invariant.

The representation engine never builds Kronecker products.  A matrix over
``Z[s, 1/s]`` (``s = q^(1/2)``) is held as an integer array of shape
``(degrees, N, N)`` plus the exponent of its lowest degree and a rational
scale, and a letter acts by contracting two adjacent tensor slots of the
column index with an ``m^2 x m^2`` block.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra import ONE, ZERO, HalfLaurent, RingMatrix, parse_poly
from .braid import NEG, POS, SING, BraidError, BraidWord

__all__ = [
    "RMatrixError",
    "Check",
    "EnhancedRMatrix",
    "check_qybe",
    "check_enhancement",
    "represent",
    "trace_invariant",
    "rescale",
    "builtin_jones",
    "flip_matrix",
    "load_rmatrix",
    "dump_rmatrix",
    "parse_rmatrix",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 4096
_INT_LIMIT = 2**62


class RMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    ok: bool
    detail: object = None

    def __bool__(self):
        return self.ok


def _is_square(d: int) -> int | None:
    m = math.isqrt(d)
    return m if m * m == d else None


def _det(rows: list) -> HalfLaurent:
    """Bareiss fraction-free determinant over Q[s, 1/s]."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _ring_inverse(a: RingMatrix) -> RingMatrix:
    """Adjugate inverse over Q[s, 1/s]; the determinant must be a monomial."""
    n = a.rows
    if n != a.cols:
        raise RMatrixError("only square matrices are invertible")
    rows = [list(r) for r in a.entries]
    det = _det(rows)
    if det.is_zero() or not det.is_monomial():
        raise RMatrixError(f"determinant {det} is not a unit")
    inv_det = det.inverse()
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
            c = _det(minor)
            out[j][i] = c * inv_det if (i + j) % 2 == 0 else -c * inv_det
    return RingMatrix(out)


def _kron_id(a: RingMatrix, left: int, right: int) -> RingMatrix:
    out = a
    if left > 1:
        out = RingMatrix.identity(left).kron(out)
    if right > 1:
        out = out.kron(RingMatrix.identity(right))
    return out


def check_qybe(R: RingMatrix) -> Check:
    """Exact check of (R x I)(I x R)(R x I) == (I x R)(R x I)(I x R).

    On failure ``detail`` is the first unequal entry ``(row, col)``."""
    if R.rows != R.cols:
        raise RMatrixError("R must be square")
    m = _is_square(R.rows)
    if m is None:
        raise RMatrixError(f"R has size {R.rows}, not a perfect square")
    a = _kron_id(R, 1, m)
    b = _kron_id(R, m, 1)
    lhs = a @ b @ a
    rhs = b @ a @ b
    for i in range(lhs.rows):
        for j in range(lhs.cols):
            if lhs[i, j] != rhs[i, j]:
                return Check(False, (i, j))
    return Check(True)


@dataclass(frozen=True, eq=False)
class EnhancedRMatrix:
    """R-matrix data ``(R, R^-1, mu)``; ``gamma`` records a rescaling of R."""

    m: int
    R: RingMatrix
    R_inv: RingMatrix
    mu: tuple
    gamma: HalfLaurent = ONE

    @classmethod
    def build(cls, R: RingMatrix, mu, gamma: HalfLaurent = ONE) -> "EnhancedRMatrix":
        m = _is_square(R.rows)
        if m is None or R.rows != R.cols:
            raise RMatrixError("R must be square of perfect-square size")
        mu = tuple(HalfLaurent.coerce(x) for x in mu)
        if len(mu) != m:
            raise RMatrixError(f"need {m} enhancement weights, got {len(mu)}")
        return cls(m, R, _ring_inverse(R), mu, gamma)

    @functools.cached_property
    def _ops(self) -> dict:
        return {
            POS: _SlotOp.from_matrix(self.R),
            NEG: _SlotOp.from_matrix(self.R_inv),
            SING: _SlotOp.from_matrix(self.R - self.R_inv),
        }

    @property
    def mu_sum(self) -> HalfLaurent:
        acc = ZERO
        for x in self.mu:
            acc = acc + x
        return acc


def check_enhancement(E: EnhancedRMatrix) -> Check:
    """Verify the enhancement conditions for both R and R^-1.

    ``detail`` names the failing condition: ``"inverse"``, ``"mu-unit"``,
    ``"commutes"`` (mu x mu must commute with R) or ``"partial-trace"``
    (sum_j R^{kj}_{ij} mu_j = gamma^{+-1} delta_ik)."""
    m = E.m
    ident = RingMatrix.identity(m * m)
    if E.R @ E.R_inv != ident:
        return Check(False, "inverse")
    if any(not x.is_monomial() for x in E.mu):
        return Check(False, "mu-unit")
    for M in (E.R, E.R_inv):
        for i1 in range(m):
            for i2 in range(m):
                for j1 in range(m):
                    for j2 in range(m):
                        r, c = i1 * m + i2, j1 * m + j2
                        if M[r, c] * E.mu[j1] * E.mu[j2] != E.mu[i1] * E.mu[i2] * M[r, c]:
                            return Check(False, "commutes")
    for M, scale in ((E.R, E.gamma), (E.R_inv, E.gamma.inverse())):
        for i in range(m):
            for k in range(m):
                acc = ZERO
                for j in range(m):
                    acc = acc + M[i * m + j, k * m + j] * E.mu[j]
                if acc != (scale if i == k else ZERO):
                    return Check(False, "partial-trace")
    return Check(True)


def flip_matrix(m: int) -> RingMatrix:
    """The swap of tensor factors on V x V."""
    d = m * m
    rows = [[ZERO] * d for _ in range(d)]
    for a in range(m):
        for b in range(m):
            rows[a * m + b][b * m + a] = ONE
    return RingMatrix(rows)


def rescale(E: EnhancedRMatrix, gamma) -> EnhancedRMatrix:
    """Replace R by gamma*R; invariants correct by gamma^(-exponent sum)."""
    gamma = HalfLaurent.coerce(gamma)
    if not gamma.is_monomial():
        raise RMatrixError(f"rescaling factor {gamma} is not invertible")
    g_inv = gamma.inverse()
    return EnhancedRMatrix(
        E.m, E.R.scale(gamma), E.R_inv.scale(g_inv), E.mu, E.gamma * gamma
    )


# representation engine

class _SlotOp:
    """``sum_e mats[e] * s^(lo+e) / denom`` with integer ``mats``."""

    __slots__ = ("lo", "mats", "denom", "nz", "rowsum")

    def __init__(self, lo, mats, denom):
        self.lo = lo
        self.mats = mats
        self.denom = denom
        self.nz = [e for e in range(mats.shape[0]) if mats[e].any()]
        self.rowsum = int(np.abs(mats).sum(axis=(0, 2)).max()) if mats.size else 0

    @classmethod
    def from_matrix(cls, M: RingMatrix) -> "_SlotOp":
        exps = [k for row in M.entries for x in row for k in x.terms]
        if not exps:
            return cls(0, np.zeros((1, M.rows, M.cols), dtype=np.int64), 1)
        lo, hi = min(exps), max(exps)
        denom = 1
        for row in M.entries:
            for x in row:
                for c in x.terms.values():
                    denom = math.lcm(denom, Fraction(c).denominator)
        mats = np.zeros((hi - lo + 1, M.rows, M.cols), dtype=object)
        mats[...] = 0
        for r, row in enumerate(M.entries):
            for c, x in enumerate(row):
                for k, v in x.terms.items():
                    mats[k - lo, r, c] = int(v * denom)
        if max(abs(int(v)) for v in mats.flat) < _INT_LIMIT:
            mats = mats.astype(np.int64)
        return cls(lo, mats, denom)


class _PolyArray:
    """Matrix over Z[s, 1/s] times a rational scale."""

    __slots__ = ("lo", "arr", "scale")

    def __init__(self, lo, arr, scale):
        self.lo = lo
        self.arr = arr
        self.scale = scale

    @classmethod
    def identity(cls, N: int) -> "_PolyArray":
        return cls(0, np.eye(N, dtype=np.int64)[None, :, :], Fraction(1))

    def apply(self, op: _SlotOp, slot: int, m: int, n: int) -> "_PolyArray":
        """Right-multiply by the operator acting on tensor slots slot, slot+1 (0-based)."""
        arr = self.arr
        if arr.dtype != object:
            bound = int(np.abs(arr).max()) if arr.size else 0
            if bound * max(op.rowsum, 1) >= _INT_LIMIT:
                arr = arr.astype(object)
        mats = op.mats
        if arr.dtype == object and mats.dtype != object:
            mats = mats.astype(object)
        elif mats.dtype == object and arr.dtype != object:
            arr = arr.astype(object)
        D, N = arr.shape[0], arr.shape[1]
        pre, post = m**slot, m ** (n - slot - 2)
        view = arr.reshape(D, N, pre, m * m, post)
        E = mats.shape[0]
        out = np.zeros((D + E - 1, N, pre, m * m, post), dtype=arr.dtype)
        for e in op.nz:
            # contract the two-slot index a with the block's row index
            out[e : e + D] += np.einsum("dnpas,ab->dnpbs", view, mats[e])
        out = out.reshape(D + E - 1, N, N)
        res = _PolyArray(self.lo + op.lo, out, self.scale / op.denom)
        return res.trim()

    def trim(self) -> "_PolyArray":
        arr = self.arr
        nz = [d for d in range(arr.shape[0]) if arr[d].any()]
        if not nz:
            return _PolyArray(0, arr[:1] * 0, self.scale)
        a, b = nz[0], nz[-1]
        if a == 0 and b == arr.shape[0] - 1:
            return self
        return _PolyArray(self.lo + a, arr[a : b + 1], self.scale)

    def entry(self, r: int, c: int) -> HalfLaurent:
        col = self.arr[:, r, c]
        return HalfLaurent({self.lo + d: Fraction(int(v)) * self.scale for d, v in enumerate(col) if v})

    def to_ring(self) -> RingMatrix:
        N = self.arr.shape[1]
        return RingMatrix([[self.entry(r, c) for c in range(N)] for r in range(N)])


def _check_word(w: BraidWord, E: EnhancedRMatrix, cap: int):
    dim = E.m**w.n
    if dim > cap:
        raise RMatrixError(f"representation dimension {dim} exceeds cap {cap}")
    if w.is_singular() and E.gamma != ONE:
        raise RMatrixError("singular letters need unscaled R-matrix data")


def _represent_array(w: BraidWord, E: EnhancedRMatrix, cap: int) -> _PolyArray:
    _check_word(w, E, cap)
    ops = E._ops
    acc = _PolyArray.identity(E.m**w.n)
    for l in w.letters:
        acc = acc.apply(ops[l.kind], l.index - 1, E.m, w.n)
    return acc


def represent(w: BraidWord, E: EnhancedRMatrix, cap: int = DEFAULT_CAP) -> RingMatrix:
    """Matrix of ``w`` acting on V^(x n): sigma_i -> R on slots i, i+1,
    sigma_i^-1 -> R^-1, tau_i -> R - R^-1."""
    return _represent_array(w, E, cap).to_ring()


def _mu_weights(E: EnhancedRMatrix, n: int) -> list:
    """(coefficient, exponent) of mu^(x n) on each basis vector."""
    for x in E.mu:
        if not x.is_monomial():
            raise RMatrixError("enhancement weights must be monomials")
    mono = [next(iter(x.terms.items())) for x in E.mu]
    weights = [(Fraction(1), 0)]
    for _ in range(n):
        weights = [(c * Fraction(mc), k + mk) for c, k in weights for mk, mc in mono]
    return weights


def raw_trace(w: BraidWord, E: EnhancedRMatrix, cap: int = DEFAULT_CAP) -> HalfLaurent:
    """Ordinary trace of rho(w) * mu^(x n), before any correction."""
    acc = _represent_array(w, E, cap)
    diag = np.einsum("dii->di", acc.arr)
    weights = _mu_weights(E, w.n)
    groups: dict = {}
    for r, (c, k) in enumerate(weights):
        groups.setdefault((k, c), []).append(r)
    terms: dict = {}
    for (k, c), idx in groups.items():
        col = diag[:, idx].sum(axis=1)
        for d, v in enumerate(col):
            if v:
                e = acc.lo + d + k
                terms[e] = terms.get(e, 0) + Fraction(int(v)) * c * acc.scale
    return HalfLaurent(terms)


def trace_invariant(
    w: BraidWord, E: EnhancedRMatrix, normalized: bool = True, cap: int = DEFAULT_CAP
) -> HalfLaurent:
    """The Markov-trace invariant of the closure of ``w``.

    Unnormalized it takes the value ``mu_1 + ... + mu_m`` on the unknot; the
    normalized value is divided by that sum.  Rescaled data is corrected by
    ``gamma^(-exponent sum)``."""
    val = raw_trace(w, E, cap)
    if E.gamma != ONE:
        val = val * E.gamma ** (-w.exponent_sum())
    if normalized:
        val = val / E.mu_sum
    return val


# data files

def parse_rmatrix(text: str) -> EnhancedRMatrix:
    """Parse ``m=<rank>``, m^4 entry lines, then ``mu=a ; b ; ...``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("m="):
        raise RMatrixError("R-matrix file must start with 'm=<rank>'")
    try:
        m = int(lines[0][2:])
    except ValueError:
        raise RMatrixError(f"bad rank line {lines[0]!r}") from None
    d = m * m
    body = lines[1:]
    if len(body) != d * d + 1 or not body[-1].startswith("mu="):
        raise RMatrixError(f"expected {d * d} entries followed by a mu= line")
    try:
        vals = [parse_poly(x) for x in body[:-1]]
        mu = [parse_poly(x) for x in body[-1][3:].split(";")]
    except ValueError as exc:
        raise RMatrixError(str(exc)) from None
    R = RingMatrix([vals[r * d : (r + 1) * d] for r in range(d)])
    return EnhancedRMatrix.build(R, mu)


def dump_rmatrix(E: EnhancedRMatrix) -> str:
    lines = [f"m={E.m}"]
    for row in E.R.entries:
        lines.extend(str(x) for x in row)
    lines.append("mu=" + " ; ".join(str(x) for x in E.mu))
    return "\n".join(lines) + "\n"


def load_rmatrix(path) -> EnhancedRMatrix:
    return parse_rmatrix(Path(path).read_text())


@functools.lru_cache(maxsize=None)
def builtin_jones() -> EnhancedRMatrix:
    """Rank-2 enhanced R-matrix whose normalized trace is the Jones polynomial.

    The data is validated on every load."""
    text = resources.files("knotbraid").joinpath("data/jones.rmat").read_text()
    E = parse_rmatrix(text)
    q = check_qybe(E.R)
    if not q:
        raise RMatrixError(f"builtin R-matrix fails the Yang-Baxter check at {q.detail}")
    enh = check_enhancement(E)
    if not enh:
        raise RMatrixError(f"builtin R-matrix fails the enhancement check ({enh.detail})")
    return E
