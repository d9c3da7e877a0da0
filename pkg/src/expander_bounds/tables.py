"""Bound tables over a list of rates: VG, asymptotic upper bound and the
optimized ensemble lower bounds, with CSV and markdown rendering."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Sequence

from .galois import is_prime_power
from .bounds import as_fraction, optimize_delta0, upper_asymptotic, vg_bound

TABLE_RATES = tuple(Fraction(k, 8) for k in range(1, 8))
MAX_TABLE_Q = 1024


@dataclass(frozen=True)
class TableRow:
    rate: Fraction
    vg: float
    upper: float
    delta1: float | None
    delta1_delta0: int | None
    delta2: float | None
    delta2_delta0: int | None
    delta3: float | None
    delta3_delta0: int | None
    delta3_ell: int | None


def compute_row(q: int, rate) -> TableRow:
    R = as_fraction(rate)
    e1 = optimize_delta0("e1", q, R)
    e2 = optimize_delta0("e2", q, R)
    e3 = optimize_delta0("e3", q, R)
    return TableRow(R, vg_bound(q, R).delta, upper_asymptotic(q, R).delta,
                    e1.delta, e1.delta0, e2.delta, e2.delta0, e3.delta, e3.delta0, e3.ell)


def compute_table(q: int, rates: Sequence = TABLE_RATES, workers: int = 1) -> list[TableRow]:
    if not (2 < q <= MAX_TABLE_Q and is_prime_power(q)):
        raise ValueError(f"unsupported q={q}: tables need a prime power in [3, {MAX_TABLE_Q}]")
    rates = [as_fraction(r) for r in rates]
    if workers <= 1:
        return [compute_row(q, r) for r in rates]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(lambda r: compute_row(q, r), rates))


_COLUMNS = [f.name for f in fields(TableRow)]


def _cell(v) -> str:
    return "" if v is None else repr(v) if isinstance(v, float) else str(v)


def to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_COLUMNS)
    for row in rows:
        w.writerow([_cell(getattr(row, c)) for c in _COLUMNS])
    return buf.getvalue()


def from_csv(text: str) -> list[TableRow]:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        vals = {}
        for f in fields(TableRow):
            raw = rec[f.name]
            if f.name == "rate":
                vals[f.name] = Fraction(raw)
            elif raw == "":
                vals[f.name] = None
            elif f.name in ("vg", "upper", "delta1", "delta2", "delta3"):
                vals[f.name] = float(raw)
            else:
                vals[f.name] = int(raw)
        out.append(TableRow(**vals))
    return out


def _pair(delta, *extra) -> str:
    if delta is None:
        return "-"
    return f"{delta:.4f}; " + "; ".join(str(e) for e in extra)


def to_markdown(rows: Sequence[TableRow], q: int | None = None) -> str:
    head = ["R", "VG", "Upper", "δ1; Δ0", "δ2; Δ0", "δ3; Δ0; ℓ"]
    body = [
        [str(r.rate), f"{r.vg:.4f}", f"{r.upper:.4f}",
         _pair(r.delta1, r.delta1_delta0), _pair(r.delta2, r.delta2_delta0),
         _pair(r.delta3, r.delta3_delta0, r.delta3_ell)]
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    fmt = lambda cells: "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    lines = [f"q = {q}", ""] if q is not None else []
    lines += [fmt(head), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines += [fmt(b) for b in body]
    return "\n".join(lines) + "\n"
