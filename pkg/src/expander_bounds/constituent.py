"""Constituent codes and their weight enumerators.

Exact enumerators are integer counts obtained by listing every codeword.  The
analytic estimates (Reed-Solomon and expurgated-random spectra) are stored as
natural logarithms of their coefficients, with ``-inf`` marking zeros, since
coefficients such as C(1024, 512) * 1023**512 overflow any float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import log

import numpy as np
from scipy.special import gammaln, logsumexp

from .galois import FieldSpec
from .matrix import MatrixGF, nullspace, rank

MAX_ENUMERATION = 1 << 24
_CHUNK = 1 << 14

EXACT = "exact"
ESTIMATE_RS = "estimate_rs"
ESTIMATE_EXPURGATED = "estimate_expurgated"


class InstanceTooLarge(ValueError):
    """Raised when exhaustive enumeration would exceed the desk-scale cap."""


@dataclass(frozen=True)
class ConstituentCode:
    """A linear (length, dimension) code given by its parity-check matrix."""

    length: int
    dimension: int
    H0: MatrixGF
    family: str = "explicit"

    def __post_init__(self):
        if self.H0.cols != self.length:
            raise ValueError(f"H0 has {self.H0.cols} columns, expected {self.length}")
        if self.H0.rows != self.length - self.dimension or rank(self.H0) != self.H0.rows:
            raise ValueError("H0 must be a full-rank (length - dimension) x length matrix")

    @property
    def field(self) -> FieldSpec:
        return self.H0.field

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dimension, self.length)


@dataclass(frozen=True, eq=False)
class WeightEnumerator:
    """Coefficients A(0..n) of a weight generating function.

    For ``kind == "exact"`` the coefficients are Python ints; for the analytic
    kinds they are natural logs (``-inf`` for a zero coefficient).
    """

    coeffs: tuple
    kind: str = EXACT

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def length(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def log_coeffs(self) -> np.ndarray:
        if self.is_exact:
            return np.array([log(c) if c > 0 else -np.inf for c in self.coeffs])
        return np.asarray(self.coeffs, dtype=float)

    def total(self) -> int:
        if not self.is_exact:
            raise TypeError("total() is defined for exact enumerators only")
        return sum(self.coeffs)

    def min_weight(self) -> int | None:
        for w, c in enumerate(self.coeffs[1:], start=1):
            if (c > 0) if self.is_exact else np.isfinite(c):
                return w
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return self.kind == other.kind and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"WeightEnumerator({self.kind}, {list(self.coeffs)!r})"


def _evaluation_points(field: FieldSpec, length: int) -> np.ndarray:
    # powers of the primitive element, then 0 for the full-length code
    pts, x = [], 1
    for _ in range(min(length, field.q - 1)):
        pts.append(x)
        x = int(field.mul(x, field.generator))
    if length == field.q:
        pts.append(0)
    return np.array(pts, dtype=np.int64)


def rs_parity_check(field: FieldSpec, length: int, dimension: int) -> ConstituentCode:
    """Reed-Solomon code as the kernel of a Vandermonde matrix.

    Row ``j`` of H0 holds ``x**j`` over ``length`` distinct evaluation points
    (nonzero points first; 0 is used only when ``length == q``).  Any
    ``length - dimension`` columns are independent, so the code is MDS.
    """
    if not 1 <= dimension < length:
        raise ValueError(f"need 1 <= k0 < n0, got n0={length}, k0={dimension}")
    if length > field.q:
        raise ValueError(f"Vandermonde RS length {length} exceeds q={field.q}")
    pts = _evaluation_points(field, length)
    r = length - dimension
    H = np.stack([field.pow(pts, j) for j in range(r)]) if r else np.zeros((0, length), dtype=np.int64)
    return ConstituentCode(length, dimension, MatrixGF(field, H), family="reed_solomon")


def enumerate_weights(G: MatrixGF, cap: int = MAX_ENUMERATION) -> list[int]:
    """Weight distribution of the row span of ``G`` (rows assumed independent)."""
    f = G.field
    k, n = G.shape
    total = f.q**k
    if total > cap:
        raise InstanceTooLarge(f"{f.q}^{k} codewords exceeds the enumeration cap {cap}")
    counts = np.zeros(n + 1, dtype=np.int64)
    gen = G.entries
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        words = np.zeros((idx.size, n), dtype=np.int64)
        for j in range(k):
            digit = (idx // f.q**j) % f.q
            words = f.add(words, f.mul(digit[:, None], gen[j][None, :]))
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    return [int(c) for c in counts]


def exact_weight_enumerator(code: ConstituentCode) -> WeightEnumerator:
    return WeightEnumerator(enumerate_weights(nullspace(code.H0)), EXACT)


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _dimension(length: int, rate) -> int:
    k0 = Fraction(rate) * length
    if k0.denominator != 1:
        raise ValueError(f"R0 * n0 = {k0} is not an integer")
    return int(k0)


def _order(field) -> int:
    return field.q if isinstance(field, FieldSpec) else int(field)


@lru_cache(maxsize=4096)
def _rs_logs(q: int, length: int, k0: int) -> tuple:
    d0 = length - k0 + 1
    out = np.full(length + 1, -np.inf)
    out[0] = 0.0
    i = np.arange(d0, length + 1)
    out[d0:] = _log_binom(length, i) + (i - d0 + 1) * log(q - 1)
    return tuple(out)


def g0_estimate_rs(field, length: int, rate) -> WeightEnumerator:
    """Upper estimate of an RS spectrum: C(n0, i) (q-1)**(i - d0 + 1) for i >= d0."""
    q = _order(field)
    if length > q + 1:
        raise ValueError(f"RS length {length} exceeds q + 1 = {q + 1}")
    k0 = _dimension(length, rate)
    if not 1 <= k0 < length:
        raise ValueError(f"RS dimension {k0} out of range for length {length}")
    return WeightEnumerator(_rs_logs(q, length, k0), ESTIMATE_RS)


@lru_cache(maxsize=4096)
def _expurgated_logs(q: int, length: int, k0: int) -> tuple:
    i = np.arange(length + 1)
    out = log(2 * length) + _log_binom(length, i) + i * log(q - 1) - (length - k0) * log(q)
    out[0] = 0.0
    return tuple(out)


def g0_estimate_expurgated(field, length: int, rate) -> WeightEnumerator:
    """Spectrum bound 2 n0 C(n0, i) (q-1)**i q**(-(n0 - k0)) for i >= 1, without flooring."""
    q = _order(field)
    k0 = _dimension(length, rate)
    if not 0 <= k0 <= length:
        raise ValueError(f"dimension {k0} out of range for length {length}")
    return WeightEnumerator(_expurgated_logs(q, length, k0), ESTIMATE_EXPURGATED)


def eval_log_g0(g: WeightEnumerator, t):
    """log(sum_i c_i * exp(i * t)), vectorised over ``t``."""
    lc = g.log_coeffs()
    keep = np.isfinite(lc)
    w = np.flatnonzero(keep)
    lc = lc[keep]
    t = np.asarray(t, dtype=float)
    out = logsumexp(lc[None, :] + np.multiply.outer(t.ravel(), w), axis=1)
    return out.reshape(t.shape) if t.shape else float(out[0])

