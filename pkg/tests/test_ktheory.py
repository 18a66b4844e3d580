from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kcone.cohomology as cohomology
from kcone.errors import ConsistencyError
from kcone.ktheory import (
    PROVENANCE,
    STATUSES,
    Assembler,
    BinomDim,
    TransDeg,
    WeightCell,
    cdh_dims,
    hc_conic,
    k0,
    k1,
    k2,
    k_higher,
    k_negative,
    report,
)


def conic_total(n, r):
    return sum(comb(r, n - 1 - 2 * j) for j in range(n) if n - 1 - 2 * j >= 0)


def total(cells, n, i):
    (c,) = [c for c in cells if (c.n, c.i, c.t) == (n, i, "total")]
    return c


def test_binom_dim_algebra():
    a = BinomDim.term(1, 2) + BinomDim.const(3)
    assert a.coeffs == (3, 2)
    assert a.evaluate(4) == 11
    assert str(a) == "2*binom(r,1) + 3"
    assert str(BinomDim.term(1)) == "binom(r,1)"
    assert BinomDim((0, 0, 0)).is_zero() and str(BinomDim()) == "0"
    assert a.scaled(-1).evaluate(1) == -5


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), max_size=6), st.lists(st.integers(-5, 5), max_size=6), st.integers(0, 8))
def test_binom_dim_evaluation_is_additive(a, b, r):
    x, y = BinomDim(tuple(a)), BinomDim(tuple(b))
    assert (x + y).evaluate(r) == x.evaluate(r) + y.evaluate(r)


def test_trans_deg_parsing():
    assert TransDeg.parse("symbolic").symbolic
    assert TransDeg.parse(3).value == 3
    with pytest.raises(ValueError):
        TransDeg.parse(-1)
    assert TransDeg(2).serialize(BinomDim((1, 1))) == 3
    assert TransDeg().serialize(BinomDim((1, 1))) == {"binom_coeffs": [1, 1]}


def test_cell_validation():
    with pytest.raises(ValueError):
        WeightCell(1, 2, 1, BinomDim(), "made-up")
    with pytest.raises(ValueError):
        WeightCell(1, 2, 1, BinomDim(), "K12", "guessed")


def test_hc_conic():
    assert hc_conic(2, 2) == 1
    assert hc_conic(3, 2) == 0
    assert hc_conic(6, 4) == 1


def test_cdh_dims(conic, quartic):
    assert all(cdh_dims(conic, 1, 1, t) == 0 for t in range(1, 6))
    assert cdh_dims(quartic, 1, 1, 1) == 1
    assert all(cdh_dims(quartic, 3, 1, t) == 0 for t in range(1, 6))


def test_k_negative(conic, quartic, quintic):
    assert total(k_negative(conic), -1, 1).dim.is_zero()
    cells = k_negative(quartic)
    assert total(cells, -1, 1).dim.evaluate(0) == 1
    assert [c.t for c in cells if c.i == 1 and c.t != "total"] == [1]
    cells = k_negative(quintic)
    assert {c.t: c.dim.evaluate(0) for c in cells if c.i == 1} == {1: 3, 2: 1, "total": 4}
    for m in (2, 3):
        assert all(c.dim.is_zero() and c.status == "zero_by_theorem" for c in k_negative(quintic, m))


def test_k0(conic, quartic):
    assert all(c.dim.is_zero() for c in k0(conic))
    cells = k0(quartic)
    assert total(cells, 0, 1).dim.is_zero()
    assert total(cells, 0, 2).dim == BinomDim.term(1, 1)
    assert total(cells, 0, 2).dim.evaluate(0) == 0


def test_k1(conic, twisted_cubic):
    cells = k1(conic)
    w2 = [c for c in cells if c.i == 2]
    assert [(c.t, c.dim.evaluate(0)) for c in w2] == [(1, 1), ("total", 1)]
    assert total(cells, 1, 3).dim.is_zero()
    assert Assembler(twisted_cubic).k12_cell(1) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_degree_one_plane_curves(n):
    c = cohomology.plane_curve(f"x^{n}+y^{n}+z^{n}")
    assert Assembler(c).k12_cell(1) == n * (n - 1) // 2 == c.degree + c.genus - 1


def test_k2(conic, quartic, skew):
    cells = k2(conic)
    assert [total(cells, 2, i).dim for i in (2, 3, 4)] == [BinomDim(), BinomDim.term(1), BinomDim()]
    cells = k2(quartic, TransDeg(0))
    assert all(total(cells, 2, i).dim.evaluate(0) == 0 for i in (2, 3, 4))
    cells = k2(skew)
    assert total(cells, 2, 2).dim.evaluate(0) == 4
    assert total(cells, 2, 3).status == "not_applicable"


def test_k_higher_conic(conic):
    for n in (3, 4, 6):
        cells = k_higher(conic, n)
        s = BinomDim()
        for c in cells:
            if c.t == "total":
                s = s + c.dim
        assert [s.evaluate(r) for r in range(5)] == [conic_total(n, r) for r in range(5)]
    cells = k_higher(conic, 6)
    assert total(cells, 6, 5).dim == BinomDim.term(1) and total(cells, 6, 5).provenance == "HC-conic"
    with pytest.raises(ValueError):
        k_higher(conic, 2)


def test_k_higher_nonconic_marks_hc_unavailable(cubic):
    cells = k_higher(cubic, 4, TransDeg(0))
    assert [total(cells, 4, i).status for i in (2, 3)] == ["unavailable_hc"] * 2
    assert total(cells, 4, 5).status == "zero_by_theorem" and total(cells, 4, 5).provenance == "K12"


def test_conic_report_table(conic):
    rep = report(conic, (-2, 8), "symbolic", torsion_exactness=True)
    assert rep.passed
    t = rep.totals()
    for n in range(1, 9):
        assert [t[n].evaluate(r) for r in range(5)] == [conic_total(n, r) for r in range(5)]
    assert str(t[6]) == "binom(r,5) + binom(r,3) + binom(r,1)"
    assert all(c.provenance in PROVENANCE and c.status in STATUSES for c in rep.cells)
    keys = [c.sort_key() for c in rep.cells]
    assert keys == sorted(keys)


def test_quartic_report(quartic):
    rep = report(quartic, (-2, 2), 1)
    assert rep.cell(-1, 1).dim.evaluate(1) == 1
    assert (rep.cell(0, 1).dim + rep.cell(0, 2).dim).evaluate(1) == 1
    k12 = rep.cell(1, 2).dim.evaluate(0)
    assert k12 > 0
    assert rep.cell(2, 3).dim.evaluate(1) == k12


def test_skew_report(skew):
    rep = report(skew, (-1, 3), 0)
    populated = [c for c in rep.total_cells() if c.status == "computed"]
    assert [(c.n, c.i, c.dim.evaluate(0)) for c in populated] == [(2, 2, 4)]
    assert all(c.status == "not_applicable" for c in rep.total_cells() if (c.n, c.i) != (2, 2))
    assert report(skew, (2, 2), "symbolic").warnings


def test_veronese_surface_negative_vanishing():
    rep = report(cohomology.veronese(2, 2), (-3, 0), 0, t_max=5)
    assert all(c.dim.is_zero() for c in rep.cells if c.n < 0)


def test_twist_mutation_is_caught(monkeypatch, conic):
    monkeypatch.setattr(cohomology, "canonical_twist", lambda n: n - 2)
    assert cohomology.h_twisted_forms(conic, 0, 1).dimension != 1
    with pytest.raises(ConsistencyError):
        report(conic, (1, 1), 0)
