"""Exact linear algebra over the rationals.

Every rank, kernel, image and quotient dimension in the package goes through
this module. Scalars are :class:`fractions.Fraction`; matrices are sparse and
immutable. Elimination is fraction-free: rows are cleared of denominators,
combined with integer multipliers and divided by their content, so entry
growth stays bounded without ever rounding.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

ExactScalar = Fraction
SparseVector = Dict[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integral(row: Mapping[int, object]) -> Dict[int, int]:
    """Scale a sparse rational row to a primitive integer row."""
    den = 1
    vals = {}
    for c, v in row.items():
        if v:
            q = Fraction(v)
            vals[c] = q
            den = _lcm(den, q.denominator)
    out = {c: int(q * den) for c, q in vals.items()}
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


class ExactMatrix:
    """Sparse rational matrix; entries are stored only when nonzero."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[Tuple[int, int], object] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        data = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols} matrix")
            q = Fraction(v)
            if q:
                data[(r, c)] = q
        self._entries = dict(sorted(data.items()))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], cols: int | None = None) -> "ExactMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, object]], cols: int) -> "ExactMatrix":
        entries = {}
        for r, row in enumerate(rows):
            for c, v in row.items():
                entries[(r, c)] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(key)
        return self._entries.get((r, c), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self._entries.items())))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    def items(self) -> Iterator[Tuple[Tuple[int, int], Fraction]]:
        """Nonzero entries in (row, col) order."""
        return iter(self._entries.items())

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def row_dicts(self) -> List[SparseVector]:
        out: List[SparseVector] = [{} for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def is_zero(self) -> bool:
        return not self._entries

    def apply(self, vec: Mapping[int, object] | Sequence[object]) -> SparseVector:
        """Matrix-vector product with a sparse or dense column vector."""
        if not isinstance(vec, Mapping):
            if len(vec) != self.cols:
                raise ValueError("vector length does not match column count")
            vec = {i: v for i, v in enumerate(vec) if v}
        out: SparseVector = {}
        for (r, c), v in self._entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (r, k), v in self._entries.items():
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return ExactMatrix(self.rows, other.cols, acc)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        """Entry (r, c) moves to (row_perm[r], col_perm[c])."""
        return ExactMatrix(
            self.rows,
            self.cols,
            {(row_perm[r], col_perm[c]): v for (r, c), v in self._entries.items()},
        )


class Echelon:
    """Row-echelon basis of a subspace of Q^ncols, built one row at a time.

    The pivot of a row is its smallest column index. Pivot rows are kept
    integral and primitive with a positive pivot entry, and every other entry
    of a pivot row lies to the right of its pivot. Columns without a pivot
    index a canonical complement, which is what :meth:`reduce` returns
    coordinates on.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True if it enlarged the span."""
        r = _integral(row)
        pivots = self.pivots
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                return True
            a = r[c]
            b = p[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {k: b * v for k, v in r.items() if k != c}
            for k, v in p.items():
                if k == c:
                    continue
                w = new.get(k, 0) - a * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            r = _primitive(new)
        return False

    def extend(self, rows: Iterable[Mapping[int, object]]) -> int:
        n = 0
        for row in rows:
            n += self.add(row)
        return n

    def copy(self) -> "Echelon":
        out = Echelon(self.ncols)
        out.pivots = dict(self.pivots)
        return out

    def free_columns(self) -> List[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def reduce(self, vec: Mapping[int, object]) -> SparseVector:
        """Remainder of ``vec`` modulo the span, supported on non-pivot columns."""
        num: Dict[int, int] = {}
        den = 1
        fr = {c: Fraction(v) for c, v in vec.items() if v}
        for q in fr.values():
            den = _lcm(den, q.denominator)
        for c, q in fr.items():
            num[c] = int(q * den)
        pivots = self.pivots
        heap = [c for c in num if c in pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = num.get(c)
            if not a:
                continue
            p = pivots[c]
            b = p[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if b != 1:
                for k in num:
                    num[k] *= b
                den *= b
            del num[c]
            for k, v in p.items():
                if k == c:
                    continue
                w = num.get(k, 0) - a * v
                if w:
                    if k not in num and k in pivots:
                        heapq.heappush(heap, k)
                    num[k] = w
                else:
                    num.pop(k, None)
            if den != 1 and num:
                g = den
                for v in num.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g != 1:
                    num = {k: v // g for k, v in num.items()}
                    den //= g
        return {c: Fraction(v, den) for c, v in sorted(num.items()) if v}

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def rref(self) -> Dict[int, SparseVector]:
        """Fully reduced rows keyed by pivot column, each with pivot entry 1."""
        tails: Dict[int, SparseVector] = {}
        for c in sorted(self.pivots, reverse=True):
            p = self.pivots[c]
            lead = p[c]
            tail: SparseVector = {}
            for k, v in p.items():
                if k == c:
                    continue
                q = Fraction(v, lead)
                sub = tails.get(k)
                if sub is None:
                    tail[k] = tail.get(k, 0) + q
                else:
                    for f, s in sub.items():
                        tail[f] = tail.get(f, 0) - q * s
            tails[c] = {k: v for k, v in tail.items() if v}
        out: Dict[int, SparseVector] = {}
        for c in sorted(tails):
            row: SparseVector = {c: Fraction(1)}
            row.update(sorted(tails[c].items()))
            out[c] = row
        return out


def _echelon_of(m: ExactMatrix) -> Echelon:
    ech = Echelon(m.cols)
    ech.extend(m.row_dicts())
    return ech


def rank(m: ExactMatrix) -> int:
    """Rank of ``m`` over Q."""
    return _echelon_of(m).rank


def kernel_basis(m: ExactMatrix) -> List[List[Fraction]]:
    """Canonical basis of the right null space, one vector per free column.

    The vector attached to free column f has a 1 in position f, zeros in the
    other free positions, and is determined on pivot positions by the
    reduced echelon form.
    """
    return [_densify(v, m.cols) for v in kernel_sparse(m)]


def kernel_sparse(m: ExactMatrix) -> List[SparseVector]:
    ech = _echelon_of(m)
    rows = ech.rref()
    basis = []
    for f in ech.free_columns():
        v: SparseVector = {f: Fraction(1)}
        for c, row in rows.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(dict(sorted(v.items())))
    return basis


def _densify(v: Mapping[int, Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k] = x
    return out


def _as_sparse(v: Sequence[object] | Mapping[int, object]) -> Dict[int, object]:
    if isinstance(v, Mapping):
        return dict(v)
    return {i: x for i, x in enumerate(v) if x}


def span_dims(a: Sequence[Sequence[object]], b: Sequence[Sequence[object]]) -> Tuple[int, int, int, int]:
    """Return (dim A, dim B, dim A+B, dim A∩B) for the spans of two vector lists."""
    lengths = {len(v) for v in list(a) + list(b)}
    if len(lengths) > 1:
        raise ValueError(f"vectors of different lengths: {sorted(lengths)}")
    n = lengths.pop() if lengths else 0
    ea = Echelon(n)
    ea.extend(_as_sparse(v) for v in a)
    eb = Echelon(n)
    eb.extend(_as_sparse(v) for v in b)
    both = ea.copy()
    both.extend(_as_sparse(v) for v in b)
    return ea.rank, eb.rank, both.rank, ea.rank + eb.rank - both.rank
