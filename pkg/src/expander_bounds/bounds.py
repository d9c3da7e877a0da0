"""Distance bounds for expander codes and layered LDPC ensembles over GF(q).

Upper side: the Varshamov-Gilbert reference, the finite-length Plotkin bound
applied to the zero-prefixed subcode, and its asymptotic form.  Lower side:
the exponent

    F(delta) = (ell - 1) * (h_q(delta) + delta*log_q(q-1))
               + ell * max_s [delta*log_q(s) - log_q(g0(s)) / Delta0]

for a constituent spectrum g0, whose first positive root is the guaranteed
relative distance of the ensemble.  Two layers with a Reed-Solomon spectrum
give E1, two layers with the expurgated random spectrum give E2, and
``ell`` layers with the RS spectrum give E3.

Everything runs in natural logs internally and is converted to base q on
return.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, log
from typing import Iterable, NamedTuple

import numpy as np
from scipy.optimize import bisect
from scipy.special import logsumexp, xlogy

from .constituent import WeightEnumerator, g0_estimate_expurgated, g0_estimate_rs

SCAN_START = 1e-6
SCAN_STEP = 1e-4
ROOT_XTOL = 1e-9
TIE_TOL = 1e-9
E2_MAX_LENGTH = 1024
DEFAULT_ELLS = range(2, 9)

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

ENSEMBLES = ("e1", "e2", "e3")
_F_NAMES = {"F1": "e1", "F2": "e2", "F3": "e3"}


class BracketError(RuntimeError):
    """The inner maximisation could not bracket its optimum."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x).limit_denominator(1 << 20)
    return Fraction(x)


@dataclass(frozen=True)
class BoundResult:
    """A relative-distance bound together with the parameters that achieved it.

    ``delta`` is None when a lower-bound equation has no positive root.
    """

    kind: str
    delta: float | None
    q: int
    rate: Fraction
    delta0: int | None = None
    ell: int | None = None
    s_star: float | None = None
    b_prime: int | None = None
    k_tilde: int | None = None
    bound: float | None = None
    note: str = ""

    def describe(self) -> str:
        parts = [f"{self.kind}: delta={'none' if self.delta is None else f'{self.delta:.6f}'}"]
        for name in ("delta0", "ell", "s_star", "b_prime", "k_tilde", "bound"):
            v = getattr(self, name)
            if v is not None:
                parts.append(f"{name}={v:.6g}" if isinstance(v, float) else f"{name}={v}")
        if self.note:
            parts.append(f"({self.note})")
        return " ".join(parts)


# -- entropy, VG, Plotkin, upper bounds --

def _volume_nats(delta, q: int):
    """h(delta) + delta*ln(q-1) in nats; the growth rate of a Hamming sphere."""
    d = np.asarray(delta, dtype=float)
    return -xlogy(d, d) - xlogy(1.0 - d, 1.0 - d) + d * log(q - 1)


def entropy_q(delta: float, q: int) -> float:
    """q-ary entropy -d log_q d - (1-d) log_q (1-d), zero at both endpoints."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    return float(-xlogy(delta, delta) - xlogy(1.0 - delta, 1.0 - delta)) / log(q)


def vg_bound(q: int, rate) -> BoundResult:
    R = as_fraction(rate)
    top = (q - 1) / q
    target = float(1 - R) * log(q)
    if target <= 0:
        delta = 0.0
    elif R <= 0:
        delta = top
    else:
        delta = bisect(lambda d: float(_volume_nats(d, q)) - target, 0.0, top, xtol=1e-12)
    return BoundResult("vg", delta, q, R)


def plotkin_term(k_tilde: int, q: int, length) -> float:
    """Plotkin bound q^(k-1) (q-1) / (q^k - 1) * length for a k-dimensional code."""
    if k_tilde < 1:
        raise ValueError(f"the Plotkin bound needs dimension >= 1, got {k_tilde}")
    if k_tilde * log(q, 2) <= 256:
        return float(Fraction(q ** (k_tilde - 1) * (q - 1), q**k_tilde - 1) * Fraction(length))
    return float(length) * (q - 1) / q / -np.expm1(-k_tilde * log(q))


def upper_finite(q: int, r1, r2, delta1: int, b1: int, *, delta2: int | None = None, rate=None) -> BoundResult:
    """Minimum of the subcode Plotkin bound over admissible block counts b'.

    ``rate`` defaults to the design rate r1 + r2 - 1; pass the true rate of a
    concrete code to tighten the dimension estimate (it is floored).
    """
    r1, r2 = as_fraction(r1), as_fraction(r2)
    n = b1 * delta1
    if r1 > r2:
        if delta2 is None:
            raise ValueError("r1 > r2: pass delta2 so the layers can be swapped")
        if n % delta2:
            raise ValueError("delta2 does not divide the length")
        r1, r2, delta1, b1 = r2, r1, delta2, n // delta2
    R = r1 + r2 - 1 if rate is None else as_fraction(rate)
    lower = (r1 - R) / r1 * b1 + Fraction(1) / (r1 * delta1)
    first = max(1, ceil(lower))
    if first > b1:
        raise ValueError(f"empty b' range: need b' >= {float(lower):.4f} but b1 = {b1}")
    best = None
    for bp in range(first, b1 + 1):
        k_t = floor(bp * r1 * delta1 - (r1 - R) * n)
        value = plotkin_term(k_t, q, bp * delta1)
        if best is None or value < best[0]:
            best = (value, bp, k_t)
    value, bp, k_t = best
    return BoundResult("upper_finite", value / n, q, R, b_prime=bp, k_tilde=k_t, bound=value)


def upper_asymptotic(q: int, rate) -> BoundResult:
    R = as_fraction(rate)
    if not 0 <= R <= 1:
        raise ValueError(f"rate must lie in [0, 1], got {R}")
    return BoundResult("upper_asymptotic", float(Fraction(q - 1, q) * (1 - R) / (1 + R)), q, R)


# -- the inner maximisation over s --

class InnerMax(NamedTuple):
    value: float  # in base-q units
    s_star: float
    t_star: float


def _support(g: WeightEnumerator) -> tuple[np.ndarray, np.ndarray]:
    lc = g.log_coeffs()
    keep = np.isfinite(lc)
    return lc[keep], np.flatnonzero(keep).astype(float)


def _phi_factory(g: WeightEnumerator, delta: float, delta0: int):
    lc, w = _support(g)

    def phi(t: float) -> float:
        return delta * t - float(logsumexp(lc + w * t)) / delta0

    def slope(t: float) -> float:
        a = lc + w * t
        p = np.exp(a - a.max())
        return delta - float(p @ w / p.sum()) / delta0

    return phi, slope


def inner_max(g: WeightEnumerator, delta: float, delta0: int, q: int, tol: float = 1e-10) -> InnerMax:
    """max over s > 0 of delta*log_q(s) - log_q(g0(s)) / delta0.

    The objective is concave in t = ln(s), so a golden-section search on a
    bracket where its slope changes sign finds the maximum.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    phi, slope = _phi_factory(g, delta, delta0)
    lo, hi = -1.0, 1.0
    for _ in range(80):
        if slope(lo) > 0:
            break
        lo *= 2.0
    else:
        raise BracketError(f"no lower bracket for delta={delta}, delta0={delta0}: slope({lo})={slope(lo)}")
    for _ in range(80):
        if slope(hi) < 0:
            break
        hi *= 2.0
    else:
        raise BracketError(f"no upper bracket for delta={delta}, delta0={delta0}: slope({hi})={slope(hi)}")
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = phi(x1), phi(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = phi(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = phi(x1)
    t = 0.5 * (a + b)
    return InnerMax(phi(t) / log(q), float(np.exp(t)), t)


def concavity_certificate(g: WeightEnumerator, delta: float, delta0: int, t: float, h: float = 1e-3) -> bool:
    """Check that ``t`` is a concave maximum: midpoint inequality, no uphill
    neighbour, and a vanishing slope (|phi'(t)| <= 1e-6)."""
    phi, slope = _phi_factory(g, delta, delta0)
    left, mid, right = phi(t - h), phi(t), phi(t + h)
    slack = 1e-12 * max(1.0, abs(mid))
    return (
        mid + slack >= 0.5 * (left + right)
        and mid + slack >= left
        and mid + slack >= right
        and abs(slope(t)) <= 1e-6
    )


# -- ensemble exponents --

def ensemble_name(kind: str) -> str:
    k = _F_NAMES.get(kind, kind).lower()
    if k not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {kind!r}")
    return k


def constituent_rate(kind: str, rate, ell: int = 2) -> Fraction:
    """Constituent rate R0 giving design rate ``rate`` with ``ell`` layers."""
    kind = ensemble_name(kind)
    R = as_fraction(rate)
    if kind in ("e1", "e2") and ell != 2:
        raise ValueError(f"{kind} has exactly two layers")
    return 1 - (1 - R) / ell


def constituent_spectrum(kind: str, q: int, delta0: int, rate, ell: int = 2) -> WeightEnumerator:
    kind = ensemble_name(kind)
    r0 = constituent_rate(kind, rate, ell)
    if kind == "e2":
        return g0_estimate_expurgated(q, delta0, r0)
    return g0_estimate_rs(q, delta0, r0)


def F(kind: str, delta: float, delta0: int, q: int, rate, ell: int = 2) -> float:
    """The lower-bound exponent F1/F2/F3 at ``delta`` (base-q units)."""
    kind = ensemble_name(kind)
    if kind != "e3":
        ell = 2
    g = constituent_spectrum(kind, q, delta0, rate, ell)
    m = inner_max(g, delta, delta0, q)
    return ((ell - 1) * float(_volume_nats(delta, q)) / log(q)) + ell * m.value


class ExponentCurve:
    """Vectorised evaluation of F(delta) for one constituent spectrum.

    The inner maximum is the convex conjugate psi*(delta) of
    psi(t) = log g0(e^t) / delta0; it is found from its stationarity condition
    (tilted mean weight = delta * delta0) by bracketed Newton iteration.
    """

    def __init__(self, g: WeightEnumerator, delta0: int, q: int, ell: int = 2):
        self.lc, self.w = _support(g)
        self.w2 = self.w * self.w
        self.delta0 = delta0
        self.q = q
        self.ell = ell
        self.lnq = log(q)

    def _moments(self, t: np.ndarray):
        a = self.lc[None, :] + t[:, None] * self.w[None, :]
        m = a.max(axis=1)
        e = np.exp(a - m[:, None])
        z = e.sum(axis=1)
        mean = (e @ self.w) / z
        var = np.maximum((e @ self.w2) / z - mean * mean, 0.0)
        return mean, var, m + np.log(z)

    def tilt(self, deltas) -> tuple[np.ndarray, np.ndarray]:
        """Optimal t = ln(s) for each delta, and log g0 at that point."""
        d = np.atleast_1d(np.asarray(deltas, dtype=float))
        target = d * self.delta0
        lo = -np.ones_like(d)
        hi = np.ones_like(d)
        for _ in range(80):
            bad = self._moments(lo)[0] >= target
            if not bad.any():
                break
            lo[bad] *= 2.0
        for _ in range(80):
            bad = self._moments(hi)[0] <= target
            if not bad.any():
                break
            hi[bad] *= 2.0
        t = 0.5 * (lo + hi)
        for _ in range(200):
            mean, var, lse = self._moments(t)
            gap = mean - target
            lo = np.where(gap < 0, t, lo)
            hi = np.where(gap > 0, t, hi)
            done = (np.abs(gap) <= 1e-12 * np.maximum(1.0, target)) | (hi - lo <= 1e-15 * np.maximum(1.0, np.abs(t)))
            if done.all():
                break
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                step = t - gap / var
            ok = np.isfinite(step) & (step > lo) & (step < hi)
            t = np.where(done, t, np.where(ok, step, 0.5 * (lo + hi)))
        return t, self._moments(t)[2]

    def conjugate(self, deltas) -> tuple[np.ndarray, np.ndarray]:
        """psi*(delta) in nats and the maximising t."""
        d = np.atleast_1d(np.asarray(deltas, dtype=float))
        t, lse = self.tilt(d)
        return d * t - lse / self.delta0, t

    def __call__(self, deltas):
        d = np.atleast_1d(np.asarray(deltas, dtype=float))
        psi, _ = self.conjugate(d)
        return ((self.ell - 1) * _volume_nats(d, self.q) + self.ell * psi) / self.lnq

    def lower_envelope(self, deltas, anchors) -> np.ndarray:
        """Certified lower bounds on F at ``deltas``.

        For any t, delta*t - psi(t) <= psi*(delta), so the upper envelope of
        the tangent lines taken at ``anchors`` bounds psi* from below.
        """
        d = np.asarray(deltas, dtype=float)
        t, lse = self.tilt(anchors)
        psi_lb = np.max(d[:, None] * t[None, :] - (lse / self.delta0)[None, :], axis=1)
        return ((self.ell - 1) * _volume_nats(d, self.q) + self.ell * psi_lb) / self.lnq


def _anchors() -> np.ndarray:
    return np.concatenate([np.geomspace(SCAN_START, 0.02, 40, endpoint=False), np.arange(0.02, 0.9995, 0.005)])


def scan_grid() -> np.ndarray:
    """The root-scan grid: the start point, then every multiple of the step below 1."""
    k = np.arange(1, int(round(1.0 / SCAN_STEP)))
    return np.concatenate([[SCAN_START], k * SCAN_STEP])


_GRID = scan_grid()
_ANCHORS = _anchors()


def first_positive_root(curve: ExponentCurve, chunk: int = 64) -> float | None:
    """First sign change of F on the scan grid, refined by bisection.

    Grid points whose certified lower bound is positive are skipped without
    evaluating F exactly; the result equals a plain scan of every grid point.
    """
    if curve(_GRID[:1])[0] <= 0:
        return None
    lb = curve.lower_envelope(_GRID, _ANCHORS)
    cand = np.flatnonzero(lb <= 1e-12)
    cand = cand[cand > 0]
    for start in range(0, cand.size, chunk):
        idx = cand[start:start + chunk]
        vals = curve(_GRID[idx])
        neg = np.flatnonzero(vals <= 0)
        if neg.size:
            k = int(idx[neg[0]])
            a, b = float(_GRID[k - 1]), float(_GRID[k])
            if vals[neg[0]] == 0:
                return b
            return bisect(lambda x: float(curve([x])[0]), a, b, xtol=ROOT_XTOL)
    return None


@lru_cache(maxsize=8192)
def _curve(kind: str, q: int, delta0: int, rate: Fraction, ell: int) -> ExponentCurve:
    return ExponentCurve(constituent_spectrum(kind, q, delta0, rate, ell), delta0, q, ell)


def _check_admissible(kind: str, q: int, delta0: int, rate: Fraction, ell: int) -> None:
    r0 = constituent_rate(kind, rate, ell)
    if (r0 * delta0).denominator != 1:
        raise ValueError(f"R0 * Delta0 = {r0 * delta0} is not an integer")
    if kind in ("e1", "e3") and delta0 > q + 1:
        raise ValueError(f"Reed-Solomon constituents need Delta0 <= q + 1 = {q + 1}")


def lower_bound_root(kind: str, q: int, rate, delta0: int, ell: int | None = None) -> BoundResult:
    """Relative distance guaranteed by the first positive root of the ensemble exponent."""
    kind = ensemble_name(kind)
    ell = 2 if kind != "e3" or ell is None else ell
    R = as_fraction(rate)
    _check_admissible(kind, q, delta0, R, ell)
    curve = _curve(kind, q, delta0, R, ell)
    root = first_positive_root(curve)
    if root is None:
        return BoundResult(f"lower_{kind}", None, q, R, delta0, ell, note="no positive root")
    g = constituent_spectrum(kind, q, delta0, R, ell)
    s_star = inner_max(g, root, delta0, q).s_star
    return BoundResult(f"lower_{kind}", root, q, R, delta0, ell, s_star=s_star)


def default_candidates(kind: str, q: int, rate, ells: Iterable[int] = DEFAULT_ELLS) -> list[tuple[int, int]]:
    """Admissible (Delta0, ell) pairs: integral R0*Delta0, Delta0 <= q+1 for RS
    constituents and Delta0 <= 1024 for the expurgated one."""
    kind = ensemble_name(kind)
    R = as_fraction(rate)
    ell_list = list(ells) if kind == "e3" else [2]
    top = E2_MAX_LENGTH if kind == "e2" else q + 1
    out = []
    for ell in ell_list:
        r0 = constituent_rate(kind, R, ell)
        for d0 in range(2, top + 1):
            k0 = r0 * d0
            if k0.denominator == 1 and 1 <= k0 < d0:
                out.append((d0, ell))
    return out


def _grid_floor(x: float) -> float:
    k = floor(x / SCAN_STEP)
    return SCAN_START if k < 1 else float(_GRID[min(k, _GRID.size - 1)])


def optimize_delta0(kind: str, q: int, rate, candidates: Iterable | None = None,
                    ells: Iterable[int] = DEFAULT_ELLS) -> BoundResult:
    """Largest lower bound over (Delta0, ell) candidates.

    Candidates may be plain Delta0 values or (Delta0, ell) pairs.  Near-ties
    (within 1e-9) go to the smallest Delta0, then the smallest ell.  A
    candidate is skipped once F is non-positive at a grid point below the
    current best, since its first root cannot then exceed the best.
    """
    kind = ensemble_name(kind)
    R = as_fraction(rate)
    if candidates is None:
        cands = default_candidates(kind, q, R, ells)
    else:
        cands = [(c, 2) if isinstance(c, int) else tuple(c) for c in candidates]
        if kind != "e3":
            cands = [(d0, 2) for d0, _ in cands]
        ok = []
        for d0, ell in cands:
            try:
                _check_admissible(kind, q, d0, R, ell)
            except ValueError:
                continue
            ok.append((d0, ell))
        cands = ok
    if not cands:
        raise ValueError(f"no admissible Delta0 for {kind} at q={q}, R={R}")
    best: tuple[float, int, int] | None = None
    for d0, ell in sorted(set(cands), key=lambda c: (-c[1], -c[0])):
        curve = _curve(kind, q, d0, R, ell)
        if best is not None:
            g = _grid_floor(best[0] - TIE_TOL)
            if curve([g])[0] <= 0:
                continue
        root = first_positive_root(curve)
        if root is None:
            continue
        if best is None or root > best[0] + TIE_TOL:
            best = (root, d0, ell)
        elif abs(root - best[0]) <= TIE_TOL and (d0, ell) < (best[1], best[2]):
            best = (root, d0, ell)
    if best is None:
        return BoundResult(f"lower_{kind}", None, q, R, note="no positive root for any candidate")
    root, d0, ell = best
    g0 = constituent_spectrum(kind, q, d0, R, ell)
    return BoundResult(f"lower_{kind}", root, q, R, d0, ell, s_star=inner_max(g0, root, d0, q).s_star)
