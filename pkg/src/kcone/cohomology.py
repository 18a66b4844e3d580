"""Cohomology of twisted line bundles and 1-forms on the supported varieties.

Closed forms come from projective normality, adjunction and Serre duality
for smooth plane curves, and from Bott's formula for Veronese embeddings
of projective space. Twists are always in units of O_X(1) for the given
projective embedding; for a degree-d Veronese, O_X(t) is O_{P^r}(d*t).

:func:`cech_oracle` recomputes h^q(O_X(m)) from a truncated Čech complex on
the coordinate charts, independently of every closed form here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Tuple

from .errors import NotACurveError, SingularCurveError, StabilizationError
from .graded import GradedQuotient, PLANE, hilbert_profile, plane_curve_ring, smoothness_check, veronese_ring
from .linalg import ExactMatrix, rank
from .poly import HPoly, parse_homogeneous
from itertools import combinations, product


def canonical_twist(n: int) -> int:
    """Omega^1 of a smooth plane curve of degree n is O_X(n - 3)."""
    return n - 3


@dataclass(frozen=True)
class CurveModel:
    """X = Proj(R) for one of the built-in families.

    ``family`` is ``"plane_curve"`` (``form`` set, ``n`` its degree) or
    ``"veronese"`` (``ambient_dim`` r and embedding ``twist`` d). Veronese
    models with r >= 2 are surfaces or higher; only Bott-formula values are
    available for them.
    """

    family: str
    quotient: GradedQuotient
    degree: int
    genus: int
    form: Optional[HPoly] = None
    ambient_dim: int = 1
    twist: int = 1

    @property
    def n(self) -> int:
        return self.form.degree if self.form is not None else self.twist

    @property
    def dimension(self) -> int:
        return 1 if self.family == "plane_curve" else self.ambient_dim

    @property
    def is_curve(self) -> bool:
        return self.dimension == 1

    @property
    def is_conic(self) -> bool:
        if self.family == "plane_curve":
            return self.n == 2
        return self.ambient_dim == 1 and self.twist == 2

    def describe(self) -> Dict[str, object]:
        out: Dict[str, object] = {"family": self.family, "dimension": self.dimension}
        if self.family == "plane_curve":
            out["polynomial"] = str(self.form)
            out["n"] = self.n
        else:
            out["ambient_dim"] = self.ambient_dim
            out["degree"] = self.twist
        if self.is_curve:
            out["curve_degree"] = self.degree
            out["genus"] = self.genus
        out["variables"] = list(self.quotient.ring.names)
        return out


def find_rational_singular_point(F: HPoly, bound: int = 3) -> Optional[Tuple[int, int, int]]:
    """Search small integer points of P^2 where F and its gradient vanish."""
    grad = F.gradient()
    rng = range(-bound, bound + 1)
    for p in product(rng, repeat=3):
        if not any(p):
            continue
        first = next(v for v in p if v)
        if first < 0:
            continue
        if F.evaluate(p) == 0 and all(g.evaluate(p) == 0 for g in grad):
            return p
    return None


def plane_curve(F: HPoly | str) -> CurveModel:
    """Model of the smooth plane curve F = 0; raises on singular input."""
    if isinstance(F, str):
        F = parse_homogeneous(F, PLANE)
    if F.ring.nvars != 3:
        raise NotACurveError("a plane curve needs exactly three variables")
    n = F.degree
    if n < 2:
        raise NotACurveError("a plane curve here has degree at least 2")
    if not smoothness_check(F):
        point = find_rational_singular_point(F)
        where = f"; singular at ({point[0]}:{point[1]}:{point[2]})" if point else ""
        raise SingularCurveError(f"curve {F} = 0 is singular{where}", point)
    Q = plane_curve_ring(F)
    prof = hilbert_profile(Q, n + 3)
    g = (n - 1) * (n - 2) // 2
    if (prof.degree, prof.genus) != (n, g):
        raise NotACurveError(f"Hilbert polynomial gives (d, g) = {(prof.degree, prof.genus)}, expected {(n, g)}")
    return CurveModel("plane_curve", Q, n, g, form=F)


def veronese(ambient_dim: int, degree: int) -> CurveModel:
    Q = veronese_ring(ambient_dim, degree)
    if ambient_dim == 1:
        prof = hilbert_profile(Q, 4)
        if (prof.degree, prof.genus) != (degree, 0):
            raise NotACurveError("Veronese Hilbert polynomial mismatch")
        return CurveModel("veronese", Q, degree, 0, ambient_dim=1, twist=degree)
    return CurveModel("veronese", Q, degree**ambient_dim, 0, ambient_dim=ambient_dim, twist=degree)


@dataclass(frozen=True)
class CohomologyValue:
    q: int
    sheaf: str
    dimension: int
    method: str = "closed-form"

    def __int__(self) -> int:
        return self.dimension


def bott(r: int, p: int, q: int, m: int) -> int:
    """h^q(P^r, Omega^p(m))."""
    if not (0 <= p <= r and 0 <= q <= r):
        raise ValueError("need 0 <= p, q <= r")
    if q == 0 and m > p:
        return comb(m + r - p, m) * comb(m - 1, p)
    if q == p and m == 0:
        return 1
    if q == r and m < p - r:
        return comb(-m + p, -m) * comb(-m - 1, r - p)
    return 0


def h_line_bundle(c: CurveModel, q: int, m: int) -> CohomologyValue:
    """h^q(X, O_X(m))."""
    sheaf = f"O({m})"
    if c.family == "plane_curve":
        if q == 0:
            dim = c.quotient.dim(m) if m >= 0 else 0
        elif q == 1:
            dim = c.quotient.dim(canonical_twist(c.n) - m)
        else:
            dim = 0
    elif c.ambient_dim == 1:
        a = c.twist * m
        dim = max(0, a + 1) if q == 0 else max(0, -a - 1) if q == 1 else 0
    else:
        dim = bott(c.ambient_dim, 0, q, c.twist * m) if q <= c.ambient_dim else 0
    return CohomologyValue(q, sheaf, dim)


def h_twisted_forms(c: CurveModel, q: int, t: int) -> CohomologyValue:
    """h^q(X, Omega^1_{X/Q}(t))."""
    sheaf = f"Omega1({t})"
    if c.family == "plane_curve":
        dim = h_line_bundle(c, q, t + canonical_twist(c.n)).dimension
    elif c.ambient_dim == 1:
        a = c.twist * t - 2
        dim = max(0, a + 1) if q == 0 else max(0, -a - 1) if q == 1 else 0
    else:
        dim = bott(c.ambient_dim, 1, q, c.twist * t) if q <= c.ambient_dim else 0
    return CohomologyValue(q, sheaf, dim)


def riemann_roch_check(c: CurveModel, m: int) -> bool:
    if not c.is_curve:
        raise NotACurveError("Riemann-Roch check applies to curves only")
    chi = h_line_bundle(c, 0, m).dimension - h_line_bundle(c, 1, m).dimension
    return chi == c.degree * m + 1 - c.genus


# -- truncated Čech oracle ----------------------------------------------------


def _cech_term(Q: GradedQuotient, m: int, E: int, p: int) -> Tuple[List[Tuple[int, ...]], int, int]:
    charts = list(combinations(range(Q.nvars), p + 1))
    deg = m + (p + 1) * E
    return charts, deg, Q.dim(deg)


def _cech_differential(Q: GradedQuotient, m: int, E: int, p: int) -> ExactMatrix:
    """d: C^p -> C^{p+1}; a chain on U_J is f/(x_J)^E with f in R_{m+|J|E}."""
    src_charts, src_deg, src_w = _cech_term(Q, m, E, p)
    dst_charts, dst_deg, dst_w = _cech_term(Q, m, E, p + 1)
    src_pos = {J: i for i, J in enumerate(src_charts)}
    entries = {}
    if src_w and dst_w:
        std = Q.standard_monomials(src_deg)
        nf = Q.piece(dst_deg).nf
        n = Q.nvars
        for a, Jp in enumerate(dst_charts):
            for i, k in enumerate(Jp):
                J = Jp[:i] + Jp[i + 1:]
                b = src_pos[J]
                sign = -1 if i % 2 else 1
                for col, s in enumerate(std):
                    e = list(s)
                    e[k] += E
                    for row, w in nf[tuple(e)].items():
                        entries[(a * dst_w + row, b * src_w + col)] = sign * w
    return ExactMatrix(len(dst_charts) * dst_w, len(src_charts) * src_w, entries)


def cech_oracle(c: CurveModel | GradedQuotient, q: int, m: int, E: int) -> Tuple[int, bool]:
    """h^q(O_X(m)) from the Čech complex truncated at denominator exponent E.

    Returns (dimension at E, whether E and E+1 give the same value).
    """
    Q = c.quotient if isinstance(c, CurveModel) else c
    for x in range(Q.nvars):
        mono = tuple(int(i == x) for i in range(Q.nvars))
        if not Q.nf_monomial(mono):
            raise ValueError("a coordinate lies in the ideal; its chart is empty")
    here = _cech_h(Q, q, m, E)
    return here, here == _cech_h(Q, q, m, E + 1)


def _cech_h(Q: GradedQuotient, q: int, m: int, E: int) -> int:
    if q < 0 or q >= Q.nvars:
        return 0
    _, _, w = _cech_term(Q, m, E, q)
    charts = comb(Q.nvars, q + 1)
    dim = charts * w
    if dim == 0:
        return 0
    out = rank(_cech_differential(Q, m, E, q)) if q + 1 < Q.nvars else 0
    into = rank(_cech_differential(Q, m, E, q - 1)) if q >= 1 else 0
    return dim - out - into


def cech_dimension(c: CurveModel, q: int, m: int, cap: Optional[int] = None) -> int:
    """Run the truncation schedule until three consecutive exponents agree."""
    start = max(1, abs(m))
    if cap is None:
        cap = 4 * (c.n + abs(m))
    values: List[int] = []
    for E in range(start, cap + 1):
        values.append(_cech_h(c.quotient, q, m, E))
        if len(values) >= 3 and values[-1] == values[-2] == values[-3]:
            return values[-1]
    raise StabilizationError(f"Čech oracle for h^{q}(O({m})) not stabilized by exponent {cap}; raise the cap")
