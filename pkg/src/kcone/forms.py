"""Graded pieces of the Kähler forms Omega^j_{R/Q} and their torsion.

(Omega^j)_t is modelled as the span of f dx_I (f a standard monomial of
R_{t-j}, I a j-subset of the variables) modulo the span of
f dg ∧ dx_I' over ideal generators g and (j-1)-subsets I'. This is the
usual presentation of an exterior power of coker(R^gens -> R^{N+1}).

Torsion is the part killed by a power of every variable. Off the cone
vertex the inputs are smooth, so this is the same as the kernel to
cdh-forms.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import StabilizationError
from .graded import GradedQuotient
from .linalg import Echelon, ExactMatrix, SparseVector, kernel_sparse, rank
from .poly import Exponent, add_exp

Subset = Tuple[int, ...]


def _wedge_sign(k: int, subset: Subset) -> Tuple[int, Subset]:
    """dx_k ∧ dx_I = sign * dx_{I ∪ k}; sign 0 when k is already in I."""
    if k in subset:
        return 0, subset
    pos = sum(1 for i in subset if i < k)
    merged = subset[:pos] + (k,) + subset[pos:]
    return (-1) ** pos, merged


@dataclass
class FormsPiece:
    """One graded piece (Omega^j)_t with chosen representatives."""

    j: int
    t: int
    ambient_dim: int
    relation_rows: List[SparseVector]
    dimension: int
    basis: List[Tuple[Subset, Exponent]]
    _echelon: Echelon = field(repr=False)
    _columns: List[Tuple[Subset, Exponent]] = field(repr=False)
    _free_pos: Dict[int, int] = field(repr=False)

    @property
    def relation_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_sparse_rows(self.relation_rows, self.ambient_dim)

    def reduce(self, ambient: SparseVector) -> SparseVector:
        """Quotient coordinates of an ambient vector."""
        rem = self._echelon.reduce(ambient) if self._echelon.rank else ambient
        return {self._free_pos[c]: v for c, v in rem.items() if v}


@dataclass
class TorsionPiece:
    j: int
    t: int
    dimension: int
    basis: List[SparseVector]
    exponent: int


@dataclass
class TorsionReport:
    j: int
    dims: Dict[int, int]
    exponent: int
    verified_stable: bool

    @property
    def total(self) -> int:
        return sum(self.dims.values())


class FormsComplex:
    """Cached forms pieces, de Rham maps and torsion for one graded quotient."""

    def __init__(self, Q: GradedQuotient, exponent_cap: Optional[int] = None):
        self.Q = Q
        self.N1 = Q.nvars
        top = max((g.degree for g in Q.generators), default=1)
        self.exponent_cap = 3 * top + 3 if exponent_cap is None else exponent_cap
        self._subsets: Dict[int, List[Subset]] = {}
        self._pieces: Dict[Tuple[int, int], FormsPiece] = {}
        self._torsion: Dict[Tuple[int, int], TorsionPiece] = {}
        self._lock = threading.RLock()

    def subsets(self, j: int) -> List[Subset]:
        s = self._subsets.get(j)
        if s is None:
            s = list(combinations(range(self.N1), j)) if 0 <= j <= self.N1 else []
            self._subsets[j] = s
        return s

    # -- pieces ---------------------------------------------------------------

    def piece(self, j: int, t: int) -> FormsPiece:
        key = (j, t)
        p = self._pieces.get(key)
        if p is None:
            with self._lock:
                p = self._pieces.get(key)
                if p is None:
                    p = self._build(j, t)
                    self._pieces[key] = p
        return p

    def _layout(self, j: int, t: int) -> Tuple[List[Tuple[Subset, Exponent]], Dict[Tuple[Subset, Exponent], int]]:
        std = self.Q.standard_monomials(t - j) if j >= 0 else ()
        cols = [(I, s) for I in self.subsets(j) for s in std]
        return cols, {c: i for i, c in enumerate(cols)}

    def _build(self, j: int, t: int) -> FormsPiece:
        Q = self.Q
        cols, index = self._layout(j, t)
        ech = Echelon(len(cols))
        rows: List[SparseVector] = []
        if cols and j >= 1:
            for g in Q.generators:
                grad = g.gradient()
                for f in Q.standard_monomials(t - g.degree - (j - 1)):
                    for I in self.subsets(j - 1):
                        terms: Dict[Tuple[Subset, Exponent], Fraction] = {}
                        for k, dk in enumerate(grad):
                            sign, J = _wedge_sign(k, I)
                            if not sign or not dk:
                                continue
                            for e, c in dk.terms.items():
                                m = add_exp(e, f)
                                terms[(J, m)] = terms.get((J, m), 0) + sign * c
                        row = self._to_ambient(terms, j, t, index)
                        if row:
                            rows.append(row)
                            ech.add(row)
        free = ech.free_columns()
        free_pos = {c: i for i, c in enumerate(free)}
        return FormsPiece(
            j=j,
            t=t,
            ambient_dim=len(cols),
            relation_rows=rows,
            dimension=len(free),
            basis=[cols[c] for c in free],
            _echelon=ech,
            _columns=cols,
            _free_pos=free_pos,
        )

    def _to_ambient(self, terms, j: int, t: int, index) -> SparseVector:
        """Sparse ambient vector from {(I, monomial of S): coeff}, coefficients reduced to normal form."""
        Q = self.Q
        acc: Dict[int, Fraction] = {}
        std = Q.standard_monomials(t - j)
        for (I, m), c in terms.items():
            if not c:
                continue
            for s, w in Q.nf_monomial(m).items():
                col = index[(I, std[s])]
                acc[col] = acc.get(col, 0) + c * w
        return {k: v for k, v in acc.items() if v}

    def element(self, j: int, t: int, terms: Dict[Tuple[Subset, Exponent], object]) -> SparseVector:
        """Quotient coordinates of sum c * m dx_I given as {(I, m): c}."""
        piece = self.piece(j, t)
        if not piece.ambient_dim:
            return {}
        _, index = self._layout(j, t)
        return piece.reduce(self._to_ambient(terms, j, t, index))

    # -- maps -----------------------------------------------------------------

    def de_rham(self, j: int, t: int) -> ExactMatrix:
        """Matrix of d: (Omega^j)_t -> (Omega^{j+1})_t on the representative bases."""
        src = self.piece(j, t)
        dst = self.piece(j + 1, t)
        entries = {}
        for col, (I, s) in enumerate(src.basis):
            terms = {}
            for k in range(self.N1):
                if not s[k]:
                    continue
                sign, J = _wedge_sign(k, I)
                if not sign:
                    continue
                e = list(s)
                e[k] -= 1
                key = (J, tuple(e))
                terms[key] = terms.get(key, 0) + sign * s[k]
            for row, v in self.element(j + 1, t, terms).items():
                entries[(row, col)] = v
        return ExactMatrix(dst.dimension, src.dimension, entries)

    def multiply(self, j: int, t: int, mono: Exponent) -> ExactMatrix:
        """Matrix of multiplication by a monomial, (Omega^j)_t -> (Omega^j)_{t+deg}."""
        src = self.piece(j, t)
        u = t + sum(mono)
        dst = self.piece(j, u)
        entries = {}
        for col, (I, s) in enumerate(src.basis):
            for row, v in self.element(j, u, {(I, add_exp(s, mono)): 1}).items():
                entries[(row, col)] = v
        return ExactMatrix(dst.dimension, src.dimension, entries)

    def _annihilator_matrix(self, j: int, t: int, E: int) -> ExactMatrix:
        blocks = []
        for k in range(self.N1):
            mono = tuple(E if i == k else 0 for i in range(self.N1))
            blocks.append(self.multiply(j, t, mono))
        height = sum(b.rows for b in blocks)
        entries = {}
        off = 0
        for b in blocks:
            for (r, c), v in b.items():
                entries[(off + r, c)] = v
            off += b.rows
        return ExactMatrix(height, self.piece(j, t).dimension, entries)

    # -- torsion --------------------------------------------------------------

    def torsion(self, j: int, t: int) -> TorsionPiece:
        key = (j, t)
        tp = self._torsion.get(key)
        if tp is not None:
            return tp
        with self._lock:
            tp = self._torsion.get(key)
            if tp is None:
                tp = self._compute_torsion(j, t)
                self._torsion[key] = tp
        return tp

    def _compute_torsion(self, j: int, t: int) -> TorsionPiece:
        dim = self.piece(j, t).dimension
        if dim == 0:
            return TorsionPiece(j, t, 0, [], 0)
        if self.exponent_cap < 1:
            raise StabilizationError(f"stabilization not reached within cap {self.exponent_cap} for torsion of Omega^{j} in degree {t}")
        prev = None
        for E in range(1, self.exponent_cap + 1):
            m = self._annihilator_matrix(j, t, E)
            kdim = m.cols - rank(m)
            if prev is not None and kdim == prev[0]:
                return TorsionPiece(j, t, kdim, kernel_sparse(prev[1]), E - 1)
            prev = (kdim, m)
        raise StabilizationError(
            f"stabilization not reached within cap {self.exponent_cap} for torsion of Omega^{j} in degree {t}; raise the window"
        )

    def torsion_report(self, j: int, window: Sequence[int]) -> TorsionReport:
        dims = {}
        exponent = 0
        for t in window:
            tp = self.torsion(j, t)
            dims[t] = tp.dimension
            exponent = max(exponent, tp.exponent)
        ts = sorted(dims)
        tail = ts[-3:]
        stable = len(tail) == 3 and all(dims[t] == 0 for t in tail)
        return TorsionReport(j, dims, exponent, stable)

    def torsion_de_rham(self, j: int, t: int) -> ExactMatrix:
        """d restricted to tors (Omega^j)_t, with values in (Omega^{j+1})_t coordinates."""
        tp = self.torsion(j, t)
        d = self.de_rham(j, t)
        entries = {}
        for col, v in enumerate(tp.basis):
            for row, x in d.apply(v).items():
                entries[(row, col)] = x
        return ExactMatrix(d.rows, tp.dimension, entries)

    def torsion_quotient(self, j: int, t: int) -> int:
        """dim (tors Omega^j / d tors Omega^{j-1})_t, with tors Omega^0 = nil(R) = 0."""
        tp = self.torsion(j, t)
        if j <= 1 or tp.dimension == 0:
            return tp.dimension
        image = self.torsion_de_rham(j - 1, t)
        span = Echelon(self.piece(j, t).dimension)
        span.extend(tp.basis)
        for col in image.transpose().row_dicts():
            assert span.contains(col), f"d(tors Omega^{j - 1}) leaves the torsion in degree {t}"
        return tp.dimension - rank(image)

    def torsion_exactness(self, j: int, t: int) -> Tuple[int, int]:
        """(dim ker of d on tors Omega^j, rank of d on tors Omega^{j-1}) in degree t."""
        tp = self.torsion(j, t)
        kernel = tp.dimension - rank(self.torsion_de_rham(j, t)) if tp.dimension else 0
        image = rank(self.torsion_de_rham(j - 1, t)) if j >= 2 else 0
        return kernel, image


_complexes: "weakref.WeakKeyDictionary[GradedQuotient, FormsComplex]" = weakref.WeakKeyDictionary()
_registry_lock = threading.Lock()


def complex_for(Q: GradedQuotient) -> FormsComplex:
    with _registry_lock:
        fc = _complexes.get(Q)
        if fc is None:
            fc = FormsComplex(Q)
            _complexes[Q] = fc
        return fc


def forms_piece(Q: GradedQuotient, j: int, t: int) -> FormsPiece:
    return complex_for(Q).piece(j, t)


def de_rham_matrix(Q: GradedQuotient, j: int, t: int) -> ExactMatrix:
    return complex_for(Q).de_rham(j, t)


def torsion_piece(Q: GradedQuotient, j: int, t: int) -> Tuple[int, List[SparseVector]]:
    tp = complex_for(Q).torsion(j, t)
    return tp.dimension, tp.basis


def torsion_report(Q: GradedQuotient, j: int, window: Sequence[int]) -> TorsionReport:
    return complex_for(Q).torsion_report(j, window)


def torsion_quotient_dim(Q: GradedQuotient, j: int, t: int) -> int:
    return complex_for(Q).torsion_quotient(j, t)
