"""Known-value fixtures run by ``kcone selftest``.

Each fixture returns a list of mismatch strings; an empty list is a pass.
Exceptions inside a fixture are reported as failures of that fixture only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, List, Optional, Tuple

from .cohomology import h_line_bundle, h_twisted_forms, plane_curve, veronese
from .forms import FormsComplex
from .ktheory import Assembler, fixture, oracle_suite, report
from .linalg import rank


@dataclass
class FixtureResult:
    name: str
    passed: bool
    details: List[str]


CONIC = "z^2 - x*y"
FERMAT = {n: f"x^{n} + y^{n} + z^{n}" for n in (3, 4, 5)}


def _forms(model, cap: Optional[int]) -> FormsComplex:
    return FormsComplex(model.quotient, exponent_cap=cap if cap is not None else 8)


def conic_table(cap):
    c = plane_curve(CONIC)
    totals = report(c, (1, 8), "symbolic", exponent_cap=cap).totals()
    bad = []
    for n in range(1, 8 + 1):
        for r in range(5):
            want = sum(comb(r, n - 1 - 2 * j) for j in range(n) if n - 1 - 2 * j >= 0)
            got = totals[n].evaluate(r)
            if got != want:
                bad.append(f"n={n} r={r}: {got} != {want}")
    return bad


def conic_ring(cap):
    c = plane_curve(CONIC)
    return [f"dim R_{t} = {c.quotient.dim(t)}" for t in range(21) if c.quotient.dim(t) != 2 * t + 1]


def conic_forms(cap):
    c = plane_curve(CONIC)
    fc = _forms(c, cap)
    bad = []
    for t in range(1, 11):
        want = 3 if t == 1 else 4 * t
        got = fc.piece(1, t).dimension
        if got != want:
            bad.append(f"dim Omega1_{t} = {got}, want {want}")
    return bad


def conic_twisted_forms(cap):
    c = plane_curve(CONIC)
    return [f"h0(Omega1({t})) = {h_twisted_forms(c, 0, t).dimension}, want {2 * t - 1}"
            for t in range(1, 11) if h_twisted_forms(c, 0, t).dimension != 2 * t - 1]


def conic_torsion_free(cap):
    fc = _forms(plane_curve(CONIC), cap)
    return [f"tors Omega1_{t} = {fc.torsion(1, t).dimension}" for t in range(1, 9) if fc.torsion(1, t).dimension]


def conic_two_form(cap):
    fc = _forms(plane_curve(CONIC), cap)
    dims = {t: fc.torsion(2, t).dimension for t in range(1, 9)}
    bad = []
    if dims != {t: int(t == 3) for t in dims}:
        bad.append(f"tors Omega2 by degree {dims}")
    if fc.piece(3, 3).dimension != 1 or rank(fc.torsion_de_rham(2, 3)) != 1:
        bad.append("d: tors Omega2_3 -> Omega3_3 is not an isomorphism")
    return bad


def murthy(cap):
    rep = report(plane_curve(CONIC), (-1, 0), "symbolic", exponent_cap=cap)
    t = rep.totals()
    return [f"K_{n} extra = {t[n]}" for n in (-1, 0) if t[n] is None or not t[n].is_zero()]


def fermat_negative(cap):
    bad = []
    for n, want in ((4, 1), (5, 4)):
        c = plane_curve(FERMAT[n])
        got = sum(h_line_bundle(c, 1, t).dimension for t in range(1, 3 * n + 4))
        if got != want:
            bad.append(f"degree {n}: K_-1 = {got}, want {want}")
    return bad


def degree_one(cap):
    bad = []
    models = [plane_curve(CONIC)] + [plane_curve(FERMAT[n]) for n in (3, 4, 5)] + [veronese(1, d) for d in (2, 3, 4, 5)]
    for c in models:
        asm = Assembler(c, exponent_cap=cap)
        got, want = asm.k12_cell(1), c.degree + c.genus - 1
        if got != want:
            bad.append(f"{c.describe()}: {got} != d+g-1 = {want}")
    return bad


def skew_lines(cap):
    fx = fixture("skew_lines")
    fc = _forms(fx, cap)
    bad = []
    dims = {t: fc.torsion(1, t).dimension for t in range(1, 7)}
    if dims != {t: 4 * (t == 2) for t in dims}:
        bad.append(f"tors Omega1 by degree {dims}")
    rep = report(fx, (2, 2), 0, exponent_cap=cap)
    if rep.cell(2, 2).dim.evaluate(0) != 4:
        bad.append(f"K_2 weight 2 = {rep.cell(2, 2).dim}")
    for t in range(1, 6):
        for j in (1, 2, 3):
            ker, img = fc.torsion_exactness(j, t)
            if ker != img:
                bad.append(f"torsion de Rham not exact at j={j}, t={t}")
    return bad


def oracle(cap):
    bad = []
    for F in (CONIC, FERMAT[3]):
        res = oracle_suite(plane_curve(F), range(-3, 5))
        bad += [d for d in res.details if "DISAGREE" in d or "not stabilized" in d]
    return bad


def veronese_vanishing(cap):
    rep = report(veronese(2, 2), (-3, -1), 0, t_max=4)
    return [f"K_{c.n}^({c.i}) = {c.dim}" for c in rep.total_cells() if not c.dim.is_zero()]


FIXTURE_LIST: List[Tuple[str, Callable]] = [
    ("conic K-table matches the alternating binomial sum", conic_table),
    ("conic dim R_t = 2t+1", conic_ring),
    ("conic Omega1 graded dimensions 3, 4t", conic_forms),
    ("conic h0(Omega1(t)) = 2t-1", conic_twisted_forms),
    ("conic Omega1 torsion-free", conic_torsion_free),
    ("conic torsion 2-form maps onto Omega3", conic_two_form),
    ("conic K_0 and K_-1 trivial", murthy),
    ("Fermat quartic and quintic K_-1", fermat_negative),
    ("degree-one K_1^(2) = d+g-1", degree_one),
    ("skew lines torsion 1-forms", skew_lines),
    ("Cech oracle agrees with closed forms", oracle),
    ("Veronese surface negative K vanishes", veronese_vanishing),
]


def run_selftest(torsion_cap: Optional[int] = None) -> List[FixtureResult]:
    out = []
    for name, fn in FIXTURE_LIST:
        try:
            bad = fn(torsion_cap)
        except Exception as exc:  # reported per fixture
            bad = [f"{type(exc).__name__}: {exc}"]
        out.append(FixtureResult(name, not bad, bad))
    return out
