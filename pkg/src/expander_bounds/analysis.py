"""Exact analytics of small codes and the ensemble-average spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .constituent import EXACT, MAX_ENUMERATION, WeightEnumerator, enumerate_weights
from .matrix import MatrixGF, nullspace


@dataclass(frozen=True)
class CodeReport:
    n: int
    k: int
    d_min: int | None  # None when the code is {0}
    enumerator: WeightEnumerator

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def to_text(self) -> str:
        spectrum = " ".join(f"{w}:{c}" for w, c in enumerate(self.enumerator.coeffs) if c)
        lines = [
            f"n={self.n}",
            f"k={self.k}",
            f"rate={self.rate}",
            f"d_min={'inf' if self.d_min is None else self.d_min}",
            f"spectrum={spectrum}",
        ]
        return "\n".join(lines) + "\n"


def analyze(H: MatrixGF, cap: int = MAX_ENUMERATION) -> CodeReport:
    """Dimension, minimum distance and weight enumerator of ker(H) by enumeration."""
    G = nullspace(H)
    enum = WeightEnumerator(enumerate_weights(G, cap), EXACT)
    return CodeReport(H.cols, G.rows, enum.min_weight(), enum)


def layer_enumerator(h0_enum: WeightEnumerator, b: int) -> WeightEnumerator:
    """Weight enumerator of ``b`` disjoint copies of a code: the b-th power of its polynomial."""
    if not h0_enum.is_exact:
        raise TypeError("layer_enumerator needs an exact enumerator")
    if b < 1:
        raise ValueError("b must be >= 1")
    base = list(h0_enum.coeffs)
    out = [1]
    for _ in range(b):
        nxt = [0] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            if a:
                for j, c in enumerate(base):
                    nxt[i + j] += a * c
        out = nxt
    return WeightEnumerator(out, EXACT)


def average_spectrum(layer: WeightEnumerator, n: int, W: int, q: int, ell: int = 2) -> float:
    """Mean number of weight-W codewords over the layered ensemble.

    Each layer independently contains a fixed weight-W word with probability
    A1(W) / ((q-1)^W C(n, W)), so the mean is A1(W)^ell / ((q-1)^W C(n, W))^(ell-1).
    """
    if not 0 <= W <= n:
        raise ValueError(f"weight {W} outside [0, {n}]")
    a1 = layer.coeffs[W] if W < len(layer.coeffs) else 0
    volume = (q - 1) ** W * comb(n, W)
    return float(Fraction(a1**ell, volume ** (ell - 1)))
