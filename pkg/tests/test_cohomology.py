import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcone.cohomology import (
    bott,
    cech_dimension,
    cech_oracle,
    h_line_bundle,
    h_twisted_forms,
    plane_curve,
    riemann_roch_check,
    veronese,
)
from kcone.errors import NotACurveError, SingularCurveError
from kcone.graded import veronese_ring


def test_line_bundles(conic, quartic):
    assert h_line_bundle(conic, 0, 1).dimension == 3
    assert h_line_bundle(quartic, 1, 1).dimension == 1
    assert h_line_bundle(quartic, 0, -2).dimension == 0
    assert h_line_bundle(veronese(1, 3), 0, -2).dimension == 0


def test_twisted_forms(conic, quartic, cubic, quintic):
    assert [h_twisted_forms(conic, 0, t).dimension for t in range(1, 11)] == [2 * t - 1 for t in range(1, 11)]
    assert h_twisted_forms(quartic, 0, 1).dimension == 6
    for c in (conic, cubic, quartic, quintic, veronese(1, 4)):
        assert all(h_twisted_forms(c, 1, t).dimension == 0 for t in range(1, 8))


def test_bott_examples():
    assert bott(1, 1, 1, 0) == 1
    assert all(bott(1, 0, 0, m) == m + 1 for m in range(0, 10))
    for r in (1, 2, 3):
        for p in range(r + 1):
            assert all(bott(r, p, r, m) == 0 for m in range(1, 6))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(-6, 6))
def test_bott_euler_characteristic(r, p, m):
    # Euler sequence: 0 -> Omega^p -> binom(r+1,p) O(-p) -> Omega^{p-1} -> 0
    if p > r:
        return
    from math import comb

    def chi(pp, mm):
        return sum((-1) ** q * bott(r, pp, q, mm) for q in range(r + 1))

    def chi_O(mm):
        return comb(mm + r, r) if mm >= 0 else (-1) ** r * comb(-mm - 1, r)

    if p == 0:
        assert chi(0, m) == chi_O(m)
    else:
        assert chi(p, m) == comb(r + 1, p) * chi_O(m - p) - chi(p - 1, m)


def test_bott_sections_match_veronese_ring():
    # h^0(P^2, O(2t)) equals the degree-t piece of the degree-2 Veronese ring.
    Q = veronese_ring(2, 2)
    assert [bott(2, 0, 0, 2 * t) for t in range(4)] == [Q.dim(t) for t in range(4)]


def test_riemann_roch(conic, quintic):
    assert all(riemann_roch_check(conic, m) for m in range(-6, 9))
    assert riemann_roch_check(quintic, 1)
    assert h_line_bundle(quintic, 0, 1).dimension == h_line_bundle(quintic, 1, 1).dimension == 3
    assert riemann_roch_check(veronese(1, 3), 2)
    with pytest.raises(NotACurveError):
        riemann_roch_check(veronese(2, 2), 1)


def test_cech_examples(conic, quartic):
    assert cech_oracle(conic, 1, 1, 2) == (0, True)
    assert cech_dimension(quartic, 1, 1) == 1
    assert cech_dimension(conic, 0, 2) == conic.quotient.dim(2)


def test_cech_against_closed_forms_on_p1():
    c = veronese(1, 2)
    for m in range(-3, 4):
        for q in (0, 1):
            assert cech_dimension(c, q, m) == h_line_bundle(c, q, m).dimension


def test_singular_curve_names_point():
    with pytest.raises(SingularCurveError) as err:
        plane_curve("y^2*z - x^3")
    assert err.value.point == (0, 0, 1)
    assert "(0:0:1)" in str(err.value)


def test_models(conic, quartic, twisted_cubic):
    assert (conic.degree, conic.genus, conic.is_conic) == (2, 0, True)
    assert (quartic.degree, quartic.genus) == (4, 3)
    assert (twisted_cubic.degree, twisted_cubic.genus, twisted_cubic.is_conic) == (3, 0, False)
    assert veronese(1, 2).is_conic
    assert not veronese(2, 2).is_curve
    with pytest.raises(NotACurveError):
        plane_curve("x+y+z")


@settings(max_examples=12, deadline=None)
@given(st.integers(2, 3), st.lists(st.integers(-2, 2), min_size=10, max_size=10))
def test_oracle_on_random_smooth_curves(n, coeffs):
    from hypothesis import assume

    from kcone.graded import PLANE, smoothness_check
    from kcone.poly import HPoly, monomials

    F = HPoly(PLANE, n, dict(zip(monomials(3, n), coeffs)))
    assume(F and smoothness_check(F))
    c = plane_curve(F)
    for m in range(-3, 4):
        for q in (0, 1):
            assert cech_dimension(c, q, m) == h_line_bundle(c, q, m).dimension
