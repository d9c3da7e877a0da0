"""Dense matrices over GF(q): elimination, rank, nullspace, column maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .galois import FieldSpec


@dataclass(frozen=True, eq=False)
class MatrixGF:
    """A rows x cols matrix of field encodings."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"matrix entries must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError(f"entries outside {self.field!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> MatrixGF:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> MatrixGF:
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"MatrixGF({self.field!r}, {self.rows}x{self.cols})"

    def columns(self, idx) -> MatrixGF:
        return MatrixGF(self.field, self.entries[:, idx])

    def row_block(self, idx) -> MatrixGF:
        return MatrixGF(self.field, self.entries[idx, :])

    def matmul(self, other: MatrixGF) -> MatrixGF:
        if other.field != self.field:
            raise ValueError("mixed fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for j in range(self.cols):
            out = f.add(out, f.mul(self.entries[:, j, None], other.entries[None, j, :]))
        return MatrixGF(f, out)

    def syndrome(self, words) -> np.ndarray:
        """H @ w^T for each row w of ``words``; returns shape (len(words), rows)."""
        w = np.atleast_2d(np.asarray(words, dtype=np.int64))
        if w.shape[1] != self.cols:
            raise ValueError(f"word length {w.shape[1]} != {self.cols}")
        f = self.field
        out = np.zeros((w.shape[0], self.rows), dtype=np.int64)
        for j in range(self.cols):
            out = f.add(out, f.mul(w[:, j, None], self.entries[None, :, j]))
        return out

    def transpose(self) -> MatrixGF:
        return MatrixGF(self.field, self.entries.T)

    def to_text(self) -> str:
        """Plain-text dump: ``"q rows cols"`` then one line of integers per row."""
        lines = [f"{self.field.q} {self.rows} {self.cols}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in self.entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: FieldSpec | None = None) -> MatrixGF:
        from .galois import field_of_order

        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        q, rows, cols = (int(t) for t in lines[0].split())
        field = field or field_of_order(q)
        if field.q != q:
            raise ValueError(f"header says q={q} but field is {field!r}")
        if len(lines) - 1 != rows:
            raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
        data = [[int(t) for t in ln.split()] for ln in lines[1:]]
        if any(len(r) != cols for r in data):
            raise ValueError(f"every row must have {cols} entries")
        return cls(field, np.array(data, dtype=np.int64).reshape(rows, cols))


def vstack(blocks: Sequence[MatrixGF]) -> MatrixGF:
    if not blocks:
        raise ValueError("nothing to stack")
    field = blocks[0].field
    if any(b.field != field for b in blocks):
        raise ValueError("mixed fields")
    return MatrixGF(field, np.vstack([b.entries for b in blocks]))


def rref(M: MatrixGF) -> tuple[MatrixGF, list[int]]:
    """Reduced row echelon form and pivot columns.

    Columns are scanned left to right; the pivot is the first nonzero entry at
    or below the current pivot row.
    """
    f = M.field
    A = np.array(M.entries, dtype=np.int64)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = f.mul(f.inv(A[r, c]), A[r])
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            A[hit] = f.sub(A[hit], f.mul(factors[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return MatrixGF(f, A), pivots


def rank(M: MatrixGF) -> int:
    return len(rref(M)[1])


def nullspace(M: MatrixGF) -> MatrixGF:
    """Basis of {v : M v^T = 0}, one basis vector per row."""
    f = M.field
    R, pivots = rref(M)
    n = M.cols
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = f.neg(R.entries[row, fc])
    return MatrixGF(f, basis.reshape(len(free), n))


@dataclass(frozen=True, eq=False)
class ColumnMap:
    """Column permutation with nonzero column scalings.

    Applying the map sends column ``perm[j]`` of the input, scaled by
    ``scalars[j]``, to column ``j`` of the output.
    """

    perm: np.ndarray
    scalars: np.ndarray

    def __post_init__(self):
        perm = np.array(self.perm, dtype=np.int64, copy=True)
        scalars = np.array(self.scalars, dtype=np.int64, copy=True)
        n = perm.size
        if scalars.size != n:
            raise ValueError(f"{n} permutation entries but {scalars.size} scalars")
        if not np.array_equal(np.sort(perm), np.arange(n)):
            raise ValueError("perm is not a bijection on [0, n)")
        if np.any(scalars == 0):
            raise ValueError("column scalars must be nonzero")
        perm.setflags(write=False)
        scalars.setflags(write=False)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "scalars", scalars)

    @classmethod
    def identity(cls, n: int) -> ColumnMap:
        return cls(np.arange(n), np.ones(n, dtype=np.int64))

    @property
    def size(self) -> int:
        return self.perm.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColumnMap):
            return NotImplemented
        return np.array_equal(self.perm, other.perm) and np.array_equal(self.scalars, other.scalars)

    def inverse(self, field: FieldSpec) -> ColumnMap:
        inv_perm = np.argsort(self.perm)
        return ColumnMap(inv_perm, field.inv(self.scalars[inv_perm]))

    def map_word(self, field: FieldSpec, word) -> np.ndarray:
        """Carry a codeword of ``ker(H)`` to the matching codeword of ``ker(apply_column_map(H, self))``."""
        w = np.asarray(word, dtype=np.int64)
        return field.div(w[..., self.perm], self.scalars)


def apply_column_map(M: MatrixGF, phi: ColumnMap) -> MatrixGF:
    if phi.size != M.cols:
        raise ValueError(f"column map of size {phi.size} for a matrix with {M.cols} columns")
    f = M.field
    if np.any(phi.scalars >= f.q):
        raise ValueError(f"scalars outside {f!r}")
    return MatrixGF(f, f.mul(M.entries[:, phi.perm], phi.scalars[None, :]))

