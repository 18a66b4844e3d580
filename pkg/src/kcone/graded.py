"""Graded quotients S/I of a standard-graded polynomial ring, degree by degree.

Nothing here needs a Groebner basis. Each question is about one graded
piece, so the ideal piece I_t is spanned explicitly (generators times
monomials) and row reduced with columns in grevlex-descending order. The
pivots of that echelon form are the leading monomials of I_t, and the
remaining monomials are the standard basis of R_t.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NotACurveError
from .linalg import Echelon, ExactMatrix, SparseVector, kernel_sparse
from .poly import Exponent, HPoly, RingContext, add_exp, monomial_index, monomials, parse_homogeneous


@dataclass
class _Piece:
    degree: int
    monos: Tuple[Exponent, ...]
    echelon: Optional[Echelon]
    standard: Tuple[Exponent, ...]
    std_index: Dict[Exponent, int]
    nf: Dict[Exponent, SparseVector] = field(default_factory=dict)


class GradedQuotient:
    """R = Q[x_0..x_N] / I for a homogeneous ideal I given by generators.

    Per-degree data is computed on first use and never changes afterwards;
    a lock makes the fill write-once under concurrent readers.

    ``toric`` optionally gives, for each variable, an integer weight vector
    such that I is exactly the kernel of x_i -> u^{weight_i}. Normal forms then
    come from fibre lookups instead of elimination; the standard monomials
    are the same (the grevlex-smallest monomial of each fibre).
    """

    def __init__(self, ring: RingContext, generators: Sequence[HPoly] = (), *, toric: Optional[Sequence[Sequence[int]]] = None, name: str = ""):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[HPoly, ...] = tuple(gens)
        self.toric = tuple(tuple(w) for w in toric) if toric is not None else None
        if self.toric is not None and len(self.toric) != ring.nvars:
            raise ValueError("toric weights must be given for every variable")
        self.name = name
        self._pieces: Dict[int, _Piece] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        label = self.name or ", ".join(str(g) for g in self.generators) or "0"
        return f"GradedQuotient({label})"

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    # -- degree pieces -------------------------------------------------------

    def _ideal_rows(self, t: int) -> List[Dict[int, Fraction]]:
        n = self.nvars
        index = monomial_index(n, t)
        rows = []
        for g in self.generators:
            for m in monomials(n, t - g.degree):
                rows.append({index[add_exp(m, e)]: c for e, c in g.terms.items()})
        return rows

    def piece(self, t: int) -> _Piece:
        p = self._pieces.get(t)
        if p is not None:
            return p
        with self._lock:
            p = self._pieces.get(t)
            if p is None:
                p = self._build(t)
                self._pieces[t] = p
        return p

    def _build(self, t: int) -> _Piece:
        n = self.nvars
        monos = monomials(n, t)
        if self.toric is not None:
            best: Dict[Tuple[int, ...], Exponent] = {}
            for m in monos:  # grevlex-descending, so the last one seen is the smallest
                best[self._weight(m)] = m
            std_set = set(best.values())
            standard = tuple(m for m in monos if m in std_set)
            std_index = {m: i for i, m in enumerate(standard)}
            piece = _Piece(t, monos, None, standard, std_index)
            fibre = {w: std_index[m] for w, m in best.items()}
            for m in monos:
                piece.nf[m] = {fibre[self._weight(m)]: Fraction(1)}
            return piece
        ech = Echelon(len(monos))
        ech.extend(self._ideal_rows(t))
        standard = tuple(m for i, m in enumerate(monos) if i not in ech.pivots)
        std_index = {m: i for i, m in enumerate(standard)}
        piece = _Piece(t, monos, ech, standard, std_index)
        # Pivot rows only reach to the right, so fill normal forms right to left.
        for c in range(len(monos) - 1, -1, -1):
            m = monos[c]
            row = ech.pivots.get(c)
            if row is None:
                piece.nf[m] = {std_index[m]: Fraction(1)}
                continue
            lead = row[c]
            acc: Dict[int, Fraction] = {}
            for k, v in row.items():
                if k == c:
                    continue
                q = Fraction(-v, lead)
                for s, w in piece.nf[monos[k]].items():
                    acc[s] = acc.get(s, 0) + q * w
            piece.nf[m] = {s: w for s, w in sorted(acc.items()) if w}
        return piece

    def _weight(self, m: Exponent) -> Tuple[int, ...]:
        acc = [0] * len(self.toric[0])
        for a, w in zip(m, self.toric):
            if a:
                for k, x in enumerate(w):
                    acc[k] += a * x
        return tuple(acc)

    def dim(self, t: int) -> int:
        if t < 0:
            return 0
        return len(self.piece(t).standard)

    def standard_monomials(self, t: int) -> Tuple[Exponent, ...]:
        if t < 0:
            return ()
        return self.piece(t).standard

    def nf_monomial(self, m: Exponent) -> SparseVector:
        """Normal form of a monomial, as coordinates on the standard basis of its degree."""
        return self.piece(sum(m)).nf[tuple(m)]

    def nf_terms(self, terms: Dict[Exponent, object], degree: int) -> SparseVector:
        acc: Dict[int, Fraction] = {}
        if degree < 0:
            return acc
        nf = self.piece(degree).nf
        for e, c in terms.items():
            for s, w in nf[e].items():
                acc[s] = acc.get(s, 0) + c * w
        return {s: w for s, w in sorted(acc.items()) if w}

    def times_monomial(self, vec: SparseVector, t: int, mono: Exponent) -> SparseVector:
        """Multiply an element of R_t (standard coordinates) by a monomial."""
        std = self.piece(t).standard
        target = self.piece(t + sum(mono)).nf
        acc: Dict[int, Fraction] = {}
        for i, c in vec.items():
            for s, w in target[add_exp(std[i], mono)].items():
                acc[s] = acc.get(s, 0) + c * w
        return {s: w for s, w in sorted(acc.items()) if w}

    def monomial_map(self, t: int, mono: Exponent) -> ExactMatrix:
        """Matrix of multiplication by ``mono`` from R_t to R_{t+deg mono}."""
        src = self.standard_monomials(t)
        u = t + sum(mono)
        entries = {}
        if u >= 0 and src:
            nf = self.piece(u).nf
            for j, s in enumerate(src):
                for i, w in nf[add_exp(s, mono)].items():
                    entries[(i, j)] = w
        return ExactMatrix(self.dim(u), len(src), entries)

    def element(self, vec: SparseVector, t: int) -> HPoly:
        """The polynomial spelled by standard coordinates in degree t."""
        std = self.standard_monomials(t)
        return HPoly(self.ring, t, {std[i]: c for i, c in vec.items()})


def ideal_degree_piece(Q: GradedQuotient, t: int) -> ExactMatrix:
    """Rows are all products m*g of generators with monomials, in S_t coordinates."""
    ncols = comb(t + Q.nvars - 1, Q.nvars - 1) if t >= 0 else 0
    if t < 0:
        return ExactMatrix(0, 0)
    return ExactMatrix.from_sparse_rows(Q._ideal_rows(t), ncols)


def quotient_basis(Q: GradedQuotient, t: int) -> Tuple[int, List[Exponent]]:
    std = list(Q.standard_monomials(t))
    return len(std), std


def normal_form(Q: GradedQuotient, f: HPoly) -> List[Fraction]:
    """Dense coefficient vector of f over the standard monomials of R_deg(f)."""
    if f.ring != Q.ring:
        raise ValueError("polynomial lives in a different ring")
    vec = Q.nf_terms(f.terms, f.degree)
    out = [Fraction(0)] * Q.dim(f.degree)
    for i, c in vec.items():
        out[i] = c
    return out


def in_ideal(Q: GradedQuotient, f: HPoly) -> bool:
    return not Q.nf_terms(f.terms, f.degree)


@dataclass(frozen=True)
class HilbertProfile:
    values: Dict[int, int]
    stable_from: int
    degree: int
    genus: int

    def polynomial(self, t: int) -> int:
        return self.degree * t + 1 - self.genus


def hilbert_profile(Q: GradedQuotient, t_max: int) -> HilbertProfile:
    """Hilbert function up to ``t_max`` and its eventual linear polynomial d*t + 1 - g."""
    values = {t: Q.dim(t) for t in range(t_max + 1)}
    if t_max < 2:
        raise NotACurveError("no linear stabilization within t_max (need at least three degrees)")
    d = values[t_max] - values[t_max - 1]
    if values[t_max - 1] - values[t_max - 2] != d:
        raise NotACurveError(f"no linear stabilization within t_max={t_max}; raise t_max or the input is not a curve")
    if d <= 0:
        raise NotACurveError("Hilbert function is eventually constant: not a curve")
    g = 1 - (values[t_max] - d * t_max)
    t0 = t_max
    while t0 > 0 and values[t0 - 1] == d * (t0 - 1) + 1 - g:
        t0 -= 1
    return HilbertProfile(values, t0, d, g)


def smoothness_check(F: HPoly) -> bool:
    """True iff the plane curve F = 0 has no singular point over an algebraic closure."""
    if F.ring.nvars != 3:
        raise ValueError("smoothness_check expects a form in three variables")
    n = F.degree
    if not F or n < 1:
        raise ValueError("need a nonzero form of positive degree")
    if n == 1:
        return True
    gens = [F] + [g for g in F.gradient() if g]
    t_star = max(0, 3 * (n - 1) - 2)
    return GradedQuotient(F.ring, gens).dim(t_star) == 0


def saturation_piece(Q: GradedQuotient, t: int, E: int) -> int:
    """dim {f in S_t : x_j^E f in I for every j}."""
    if t < 0:
        return 0
    n = Q.nvars
    src = monomials(n, t)
    target = Q.piece(t + E)
    width = len(target.standard)
    entries = {}
    for col, m in enumerate(src):
        for j in range(n):
            shift = [0] * n
            shift[j] = E
            for i, w in target.nf[add_exp(m, tuple(shift))].items():
                entries[(j * width + i, col)] = w
    return len(kernel_sparse(ExactMatrix(n * width, len(src), entries)))


def saturated_dim(Q: GradedQuotient, t: int, max_exponent: int = 64) -> Tuple[int, int]:
    """Iterate :func:`saturation_piece` until two exponents agree; return (dim, E)."""
    prev = saturation_piece(Q, t, 1)
    for E in range(2, max_exponent + 1):
        cur = saturation_piece(Q, t, E)
        if cur == prev:
            return cur, E - 1
        prev = cur
    from .errors import StabilizationError

    raise StabilizationError(f"saturation in degree {t} did not stabilize by exponent {max_exponent}")


# -- ring constructors used by the built-in families -------------------------

PLANE = RingContext(("x", "y", "z"))


def plane_curve_ring(F: HPoly | str) -> GradedQuotient:
    if isinstance(F, str):
        F = parse_homogeneous(F, PLANE)
    return GradedQuotient(F.ring, [F], name=str(F))


def veronese_ring(ambient_dim: int, degree: int) -> GradedQuotient:
    """Homogeneous coordinate ring of the degree-d Veronese embedding of P^r.

    Variables are indexed by the degree-d monomials of P^r in grevlex order
    and named ``v0, v1, ...``; the ideal is generated by the quadratic
    binomials v_a v_b - v_c v_e whose exponent sums agree.
    """
    if ambient_dim < 1 or degree < 1:
        raise ValueError("Veronese embedding needs ambient_dim >= 1 and degree >= 1")
    points = monomials(ambient_dim + 1, degree)
    ring = RingContext(tuple(f"v{i}" for i in range(len(points))))
    nv = len(points)
    by_weight: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for a, b in combinations_with_replacement(range(nv), 2):
        by_weight.setdefault(add_exp(points[a], points[b]), []).append((a, b))
    gens = []
    for pairs in by_weight.values():
        first = pairs[0]
        for other in pairs[1:]:
            e1 = [0] * nv
            e2 = [0] * nv
            e1[first[0]] += 1
            e1[first[1]] += 1
            e2[other[0]] += 1
            e2[other[1]] += 1
            gens.append(HPoly(ring, 2, {tuple(e1): 1, tuple(e2): -1}))
    return GradedQuotient(ring, gens, toric=points, name=f"veronese(P^{ambient_dim}, d={degree})")


def skew_lines_ring() -> GradedQuotient:
    """Q[x1,x2,y1,y2]/(x_i y_j): two skew lines in P^3."""
    ring = RingContext(("x1", "x2", "y1", "y2"))
    gens = [parse_homogeneous(f"x{i}*y{j}", ring) for i in (1, 2) for j in (1, 2)]
    return GradedQuotient(ring, gens, name="skew_lines")
