"""Parity-check matrices of expander codes and layered LDPC ensembles."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constituent import ConstituentCode, rs_parity_check
from .galois import FieldSpec
from .matrix import ColumnMap, MatrixGF, apply_column_map, vstack

E1 = "E1"
E3 = "E3"


def block_diagonal(H0: MatrixGF, b: int) -> MatrixGF:
    """``b`` copies of ``H0`` along the diagonal."""
    if b < 1:
        raise ValueError(f"block count must be >= 1, got {b}")
    r, c = H0.shape
    out = np.zeros((r * b, c * b), dtype=np.int64)
    for k in range(b):
        out[k * r:(k + 1) * r, k * c:(k + 1) * c] = H0.entries
    return MatrixGF(H0.field, out)


def _diag_of(codes: Sequence[ConstituentCode]) -> MatrixGF:
    rows = sum(c.H0.rows for c in codes)
    cols = sum(c.length for c in codes)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c0 = 0
    for code in codes:
        h = code.H0.entries
        out[r:r + h.shape[0], c0:c0 + h.shape[1]] = h
        r += h.shape[0]
        c0 += h.shape[1]
    return MatrixGF(codes[0].field, out)


@dataclass(frozen=True)
class ExpanderParams:
    """A (Delta1, Delta2)-regular bipartite graph's constituent assignment."""

    field: FieldSpec
    delta1: int
    delta2: int
    b1: int
    b2: int
    constituents1: tuple[ConstituentCode, ...]
    constituents2: tuple[ConstituentCode, ...]

    def __post_init__(self):
        if self.b1 * self.delta1 != self.b2 * self.delta2:
            raise ValueError("b1 * Delta1 must equal b2 * Delta2")
        if len(self.constituents1) != self.b1 or len(self.constituents2) != self.b2:
            raise ValueError("one constituent code per vertex is required")
        if any(c.length != self.delta1 for c in self.constituents1):
            raise ValueError("layer-1 constituent lengths must equal Delta1")
        if any(c.length != self.delta2 for c in self.constituents2):
            raise ValueError("layer-2 constituent lengths must equal Delta2")

    @property
    def n(self) -> int:
        return self.b1 * self.delta1

    @classmethod
    def uniform(cls, c1: ConstituentCode, b1: int, c2: ConstituentCode, b2: int) -> ExpanderParams:
        return cls(c1.field, c1.length, c2.length, b1, b2, (c1,) * b1, (c2,) * b2)


def assemble_expander(params: ExpanderParams, edge_orders: Sequence[Sequence[int]]) -> MatrixGF:
    """Stack the two permuted block-diagonal layers.

    ``edge_orders[i][s]`` is the edge (code coordinate) carried by local slot
    ``s`` of layer ``i``, where slots ``k*Delta_i .. (k+1)*Delta_i - 1`` are the
    edges at vertex ``k`` of that side.
    """
    if len(edge_orders) != 2:
        raise ValueError("an expander code has exactly two layers")
    n = params.n
    layers = []
    for codes, order in zip((params.constituents1, params.constituents2), edge_orders):
        order = np.asarray(order, dtype=np.int64)
        if order.size != n or not np.array_equal(np.sort(order), np.arange(n)):
            raise ValueError("each edge order must be a bijection onto the n edges")
        # output column order[s] takes slot s
        phi = ColumnMap(np.argsort(order), np.ones(n, dtype=np.int64))
        layers.append(apply_column_map(_diag_of(codes), phi))
    return vstack(layers)


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of a layered ensemble with an RS constituent.

    ``k0`` is the constituent dimension ``R0 * delta0``.
    """

    kind: str
    field: FieldSpec
    delta0: int
    k0: int
    b: int
    ell: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (E1, E3):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.kind == E1 and self.ell != 2:
            raise ValueError("E1 has exactly two layers")
        if self.ell < 2:
            raise ValueError("at least two layers are required")
        if self.b < 1:
            raise ValueError("b must be >= 1")
        if not 1 <= self.k0 < self.delta0 <= self.field.q:
            raise ValueError("need 1 <= k0 < delta0 <= q for a Vandermonde RS constituent")

    @property
    def n(self) -> int:
        return self.delta0 * self.b

    @property
    def r0(self) -> Fraction:
        return Fraction(self.k0, self.delta0)

    @property
    def design_rate(self) -> Fraction:
        return 1 - self.ell * (1 - self.r0)


@dataclass(frozen=True)
class CodeSample:
    H: MatrixGF
    maps: tuple[ColumnMap, ...]
    spec: EnsembleSpec
    constituent: ConstituentCode = dc_field(repr=False)

    @property
    def design_rate(self) -> Fraction:
        return self.spec.design_rate

    @property
    def layer_rows(self) -> int:
        return self.constituent.H0.rows * self.spec.b

    def layer(self, i: int) -> MatrixGF:
        r = self.layer_rows
        return self.H.row_block(slice(i * r, (i + 1) * r))


def draw_column_map(rng: np.random.Generator, n: int, q: int) -> ColumnMap:
    return ColumnMap(rng.permutation(n), rng.integers(1, q, size=n))


def sample(spec: EnsembleSpec) -> CodeSample:
    """Draw one code: every layer gets its own uniform permutation and nonzero scalars."""
    rng = np.random.default_rng(spec.seed)
    c0 = rs_parity_check(spec.field, spec.delta0, spec.k0)
    Hb = block_diagonal(c0.H0, spec.b)
    maps = tuple(draw_column_map(rng, spec.n, spec.field.q) for _ in range(spec.ell))
    H = vstack([apply_column_map(Hb, m) for m in maps])
    return CodeSample(H, maps, spec, c0)


def normalized_parity_check(s: CodeSample) -> MatrixGF:
    """Equivalent matrix whose first layer is exactly the block-diagonal H_b."""
    return apply_column_map(s.H, s.maps[0].inverse(s.H.field))


def subcode_range(s: CodeSample, rate: Fraction | None = None) -> range:
    """Admissible block counts b' for the subcode of an E1 sample."""
    spec = s.spec
    r1 = spec.r0
    R = spec.design_rate if rate is None else Fraction(rate)
    lo = (r1 - R) / r1 * spec.b + Fraction(1, 1) / (r1 * spec.delta0)
    first = max(1, -(-lo.numerator // lo.denominator))
    return range(first, spec.b + 1)


def zero_prefix_subcode(s: CodeSample, b_prime: int) -> MatrixGF:
    """Parity-check matrix of the length ``b_prime * delta0`` subcode.

    After normalising layer 1 to block-diagonal form, the subcode consists of
    codewords that vanish on all but the last ``b_prime`` blocks.  Its checks
    are the last ``b_prime`` layer-1 blocks stacked over the matching trailing
    columns of the normalised layer 2.  Prefixing ``n - b_prime * delta0``
    zeros to any of its codewords gives a codeword of
    :func:`normalized_parity_check`.
    """
    spec = s.spec
    if spec.ell != 2:
        raise ValueError("the subcode construction applies to two-layer (E1) samples")
    if not 1 <= b_prime <= spec.b:
        raise ValueError(f"b' must lie in [1, {spec.b}], got {b_prime}")
    Hn = normalized_parity_check(s)
    r = s.layer_rows
    tail = slice(spec.n - b_prime * spec.delta0, spec.n)
    top = block_diagonal(s.constituent.H0, b_prime)
    bottom = MatrixGF(Hn.field, Hn.entries[r:, tail])
    return vstack([top, bottom])


def zero_pad(word, n: int) -> np.ndarray:
    w = np.atleast_2d(np.asarray(word, dtype=np.int64))
    return np.hstack([np.zeros((w.shape[0], n - w.shape[1]), dtype=np.int64), w])
