"""Finite-sample checks of the structural claims on seeded ensemble samples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Iterable, Sequence

import numpy as np

from . import bounds
from .analysis import analyze, layer_enumerator, average_spectrum
from .constituent import exact_weight_enumerator, rs_parity_check
from .ensemble import (
    E1,
    E3,
    EnsembleSpec,
    block_diagonal,
    normalized_parity_check,
    sample,
    zero_prefix_subcode,
    zero_pad,
)
from .galois import field_of_order
from .matrix import nullspace, rank


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


# (q, delta0, k0, b) configurations used by the subcode, rate and upper checks
DEFAULT_CORPUS: tuple[tuple[int, int, int, int], ...] = (
    (4, 4, 2, 2),
    (4, 4, 3, 2),
    (4, 4, 3, 3),
    (8, 4, 3, 2),
    (8, 4, 3, 3),
    (8, 8, 5, 2),
    (8, 8, 5, 3),
)


# With 200 samples the weight-4 count at q=4 is usually zero in every sample,
# which leaves no variance estimate; 1000 samples avoid that.
SPECTRUM_SAMPLES = 1000


def _spec(q, delta0, k0, b, seed, ell=2) -> EnsembleSpec:
    return EnsembleSpec(E1 if ell == 2 else E3, field_of_order(q), delta0, k0, b, ell, seed)


def spectrum_monte_carlo(q: int = 4, delta0: int = 4, k0: int = 2, b: int = 2, samples: int = SPECTRUM_SAMPLES,
                       seed: int = 0, ell: int = 2, sigmas: float = 3.0) -> CheckResult:
    """Mean per-weight codeword counts over seeded samples vs the ensemble average.

    Passes when every weight 1..n lies within ``sigmas`` standard errors of
    the formula.  A weight whose sample counts never vary passes only when the
    sample mean equals the formula exactly.
    """
    f = field_of_order(q)
    n = delta0 * b
    layer = layer_enumerator(exact_weight_enumerator(rs_parity_check(f, delta0, k0)), b)
    counts = np.zeros((samples, n + 1))
    for i in range(samples):
        s = sample(_spec(q, delta0, k0, b, seed + i, ell))
        counts[i] = analyze(s.H).enumerator.coeffs
    mean = counts.mean(axis=0)
    se = counts.std(axis=0, ddof=1) / sqrt(samples)
    failures = []
    worst = 0.0
    for W in range(1, n + 1):
        expected = average_spectrum(layer, n, W, q, ell)
        gap = abs(mean[W] - expected)
        if se[W] == 0:
            ok = gap <= 1e-12 * max(1.0, expected)
        else:
            worst = max(worst, gap / se[W])
            ok = gap <= sigmas * se[W]
        if not ok:
            failures.append(f"W={W}: mean {mean[W]:.4f} expected {expected:.4f} se {se[W]:.4f}")
    detail = f"q={q} delta0={delta0} k0={k0} b={b} ell={ell} samples={samples}, max |z| = {worst:.2f}"
    return CheckResult("spectrum", not failures, detail, failures)


def _corpus_samples(corpus, samples_per_config: int, seed: int):
    for q, d0, k0, b in corpus:
        for i in range(samples_per_config):
            yield sample(_spec(q, d0, k0, b, seed + i))


def rate_check(corpus=DEFAULT_CORPUS, samples: int = 50, seed: int = 0, ells: Sequence[int] = (2, 3)) -> CheckResult:
    """k/n >= 1 - ell(1 - R0) on every sample (only rank is needed)."""
    failures = []
    total = 0
    per = max(1, -(-samples // (len(corpus) * len(ells))))
    for ell in ells:
        for q, d0, k0, b in corpus:
            for i in range(per):
                s = sample(_spec(q, d0, k0, b, seed + i, ell))
                k = s.H.cols - rank(s.H)
                total += 1
                if Fraction(k, s.H.cols) < s.design_rate:
                    failures.append(f"q={q} delta0={d0} k0={k0} b={b} ell={ell} seed={seed + i}: k={k}")
    return CheckResult("rate", not failures, f"{total} samples, {len(failures)} violations", failures)


def subcode_check(corpus=DEFAULT_CORPUS, samples: int = 50, seed: int = 0) -> CheckResult:
    """Zero-padded kernel vectors of every subcode matrix lie in the sample's code."""
    failures = []
    total = 0
    per = max(1, -(-samples // len(corpus)))
    for s in _corpus_samples(corpus, per, seed):
        total += 1
        n = s.spec.n
        Hn = normalized_parity_check(s)
        for bp in range(1, s.spec.b + 1):
            basis = nullspace(zero_prefix_subcode(s, bp))
            if basis.rows and np.any(Hn.syndrome(zero_pad(basis.entries, n))):
                failures.append(f"seed={s.spec.seed} b'={bp}: padded subcode word outside the code")
        # the normalised matrix defines the same code up to the inverse column map
        k_n = n - rank(Hn)
        if k_n != n - rank(s.H):
            failures.append(f"seed={s.spec.seed}: normalisation changed the dimension")
    return CheckResult("subcode", not failures, f"{total} samples, {len(failures)} violations", failures)


def upper_check(corpus=DEFAULT_CORPUS, samples: int = 50, seed: int = 0) -> CheckResult:
    """Brute-force d_min never exceeds the finite upper bound at the sample's true rate.

    Samples with k = 0 have no minimum distance and are counted as skipped.
    """
    failures = []
    checked = skipped = 0
    per = max(1, -(-samples // len(corpus)))
    for s in _corpus_samples(corpus, per, seed):
        rep = analyze(s.H)
        if rep.d_min is None:
            skipped += 1
            continue
        checked += 1
        r0 = s.spec.r0
        ub = bounds.upper_finite(s.H.field.q, r0, r0, s.spec.delta0, s.spec.b, rate=rep.rate)
        if rep.d_min > ub.bound + 1e-9:
            failures.append(f"seed={s.spec.seed}: d_min={rep.d_min} > {ub.bound:.4f}")
    detail = f"{checked} samples checked, {skipped} with k=0 skipped, {len(failures)} violations"
    return CheckResult("upper", not failures and checked > 0, detail, failures)


def mds_instances(fields: Iterable[int] = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16), limit: int = 1 << 20):
    """Every (q, delta0, k0) with 1 <= k0 < delta0 <= q and q**k0 <= limit."""
    for q in fields:
        for d0 in range(2, q + 1):
            for k0 in range(1, d0):
                if q**k0 <= limit:
                    yield q, d0, k0


def mds_check(instances=None) -> CheckResult:
    failures = []
    total = 0
    for q, d0, k0 in (mds_instances() if instances is None else instances):
        code = rs_parity_check(field_of_order(q), d0, k0)
        d = exact_weight_enumerator(code).min_weight()
        total += 1
        if d != d0 - k0 + 1:
            failures.append(f"q={q} delta0={d0} k0={k0}: d={d}")
    return CheckResult("mds", not failures, f"{total} codes, {len(failures)} violations", failures)


def layer_check(q: int = 4, delta0: int = 4, k0: int = 2, bs: Sequence[int] = (1, 2, 3)) -> CheckResult:
    """The convolved layer enumerator equals brute force on the block-diagonal code."""
    f = field_of_order(q)
    code = rs_parity_check(f, delta0, k0)
    failures = []
    for b in bs:
        conv = layer_enumerator(exact_weight_enumerator(code), b)
        brute = analyze(block_diagonal(code.H0, b)).enumerator
        if conv != brute:
            failures.append(f"b={b}: {conv.coeffs} != {brute.coeffs}")
    return CheckResult("layer", not failures, f"q={q} delta0={delta0} k0={k0} b in {list(bs)}", failures)


TABLE_RATES = tuple(Fraction(k, 8) for k in range(1, 8))


def ordering_check(qs: Sequence[int] = (64,), rates: Sequence[Fraction] = TABLE_RATES) -> CheckResult:
    """VG and the asymptotic upper bound decrease in R; optimized E1/E2 roots stay below the upper bound."""
    failures = []
    grid = [Fraction(k, 51) for k in range(1, 51)]
    for q in qs:
        vg = [bounds.vg_bound(q, r).delta for r in grid]
        up = [bounds.upper_asymptotic(q, r).delta for r in grid]
        if any(b >= a for a, b in zip(vg, vg[1:])):
            failures.append(f"q={q}: VG not strictly decreasing")
        if any(b >= a for a, b in zip(up, up[1:])):
            failures.append(f"q={q}: upper bound not strictly decreasing")
        for r in rates:
            top = bounds.upper_asymptotic(q, r).delta
            for kind in ("e1", "e2"):
                low = bounds.optimize_delta0(kind, q, r).delta
                if low is not None and low >= top:
                    failures.append(f"q={q} R={r} {kind}: {low:.4f} >= {top:.4f}")
    return CheckResult("bounds", not failures, f"q in {list(qs)}, {len(rates)} rates", failures)


SUITES = ("spectrum", "rate", "subcode", "upper", "mds", "layer", "bounds")


def run_suite(name: str, *, samples: int | None = None, seed: int = 0, q: int | None = None,
              delta0: int | None = None, b: int | None = None, k0: int | None = None) -> list[CheckResult]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, samples=samples, seed=seed)]
    if name == "spectrum":
        if q is None:
            return [spectrum_monte_carlo(4, 4, 2, 2, samples or SPECTRUM_SAMPLES, seed), spectrum_monte_carlo(8, 4, 2, 2, samples or SPECTRUM_SAMPLES, seed)]
        d0 = delta0 or 4
        return [spectrum_monte_carlo(q, d0, k0 or d0 // 2, b or 2, samples or SPECTRUM_SAMPLES, seed)]
    corpus = DEFAULT_CORPUS
    if q is not None:
        d0 = delta0 or 4
        corpus = ((q, d0, k0 or (3 * d0) // 4, b or 2),)
    if name == "rate":
        return [rate_check(corpus, samples or 50, seed)]
    if name == "subcode":
        return [subcode_check(corpus, samples or 50, seed)]
    if name == "upper":
        return [upper_check(corpus, samples or 50, seed)]
    if name == "mds":
        return [mds_check()]
    if name == "layer":
        return [layer_check()]
    if name == "bounds":
        return [ordering_check((q,) if q else (64,))]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
