#!/usr/bin/python

# to run, make sure you are in the root of the repo, and
#   pytest analysis/tests.py

from fractions import Fraction
import numpy as np
import pytest
import sympy as sp
from scipy.special import hyp2f1

from analysis.bounds import *
from analysis.minimal import *
from analysis.nevanlinna import *
from jets.factory import JetFactory
from jets.wronskian import HyperplaneArrangement, build_wronskian
from util.geometry import EnumNorm, circle_points
from util.util import ContainmentError, DomainError, PoleError, SingularCircleError
from math import gamma, log, pi


GRID = [ 0.5, 0.6, 0.7, 0.8, 0.9, 0.95 ]


# test the degree bound arithmetic
def test_jet_parameters():
    p = jet_parameters(2)
    assert (p.k, p.k_prime, p.delta, p.r0) == (3, 6, 11, 18876)
    assert jet_parameters(1).r0 == 210
    for n in range(1, 13):
        p = jet_parameters(n)
        assert p.r0_agree and 2 * p.k_prime == p.delta + 1
    with pytest.raises(DomainError):
        jet_parameters(0)


def test_key_inequality():
    assert all(key_inequality(n) for n in range(1, 13))


def test_threshold_vs_stated_bound():
    assert threshold_vs_stated_bound(2) == (207691, 248832, True)
    assert threshold_vs_stated_bound(1) == (1070, 1296, True)
    assert all(threshold_vs_stated_bound(n).ok for n in range(1, 13))


def test_main_theorem_bound():
    assert main_theorem_bound(3) == 248832
    assert main_theorem_bound(2) == 1296
    for n in range(2, 9):
        assert main_theorem_bound(n) == threshold_vs_stated_bound(n - 1).stated
    with pytest.raises(DomainError):
        main_theorem_bound(1)


def test_decompose_degree():
    dec = decompose_degree(2, 207691)
    assert (dec.epsilon, dec.r, dec.holds) == (11, 18877, True)
    assert dec.epsilon + (dec.r + 3) * 11 == 207691
    assert dec.r > r_bound(2, dec.epsilon)
    assert decompose_degree(2, 100) is None
    with pytest.raises(DomainError):
        decompose_degree(2, 0)


def test_decompose_degree_above_threshold():
    for n in range(1, 7):
        p = jet_parameters(n)
        t = degree_threshold(n)
        for d in (t, t + 1, t + p.delta - 1, t + 7 * p.delta + 3):
            dec = decompose_degree(n, d)
            assert dec.holds
            assert p.k <= dec.epsilon <= p.k + p.delta - 1
            assert dec.epsilon + (dec.r + p.k) * p.delta == d


def test_twist_ratio_limit():
    t = twist_ratio_limit(2, [ 1, 2, 10, 100 ])
    assert t.ok and t.limit < Fraction(1, 2)
    assert all(r < Fraction(1, 2) for r in t.ratios)
    assert all(r == t.limit for r in t.ratios) and t.limit == Fraction(726, 2905)

    shifted = twist_ratio_limit(2, [ 1, 10, 1000 ], beta = 5000, beta_tilde = 0)
    assert shifted.ratios[0] > shifted.ratios[-1] > shifted.limit
    with pytest.raises(DomainError):
        twist_ratio_limit(2, [ 1 ], d = 100)


def test_bounds_table():
    rows = bounds_table(range(1, 7))
    assert len(rows) == 6 and all(row[-1] for row in rows)
    assert rows[1] == [ 2, 3, 6, 11, 18876, 207691, 248832, True ]
    assert fujimoto_regime(1, 5) and not fujimoto_regime(1, 4)


# test divisors and counting functions
def test_disc_divisor():
    E = DiscDivisor([ (0.5, 3), (-0.25, 1) ], origin = 2)
    assert E.degree == 6
    assert truncated_degree(E, 0.75) == 6
    assert truncated_degree(E, 0.75, 2) == 5
    assert truncated_degree(E, 0.3) == 3
    assert truncated_degree(E, 0.75, INFINITY) == 6

    N = counting_function(E, 0.75)
    assert abs(N - (2 * log(0.75) + 3 * log(1.5) + log(3))) < 1e-12
    N1 = counting_function(E, 0.75, 1)
    assert abs(N1 - (log(0.75) + log(1.5) + log(3))) < 1e-12


def test_disc_divisor_errors():
    with pytest.raises(DomainError):
        DiscDivisor([ (0.5, 1), (0.5, 2) ])
    with pytest.raises(DomainError):
        DiscDivisor([ (1.5, 1) ])
    with pytest.raises(DomainError):
        DiscDivisor([ (0.5, 0) ])
    with pytest.raises(DomainError):
        truncated_degree(DiscDivisor(), 0.5, 0)


def test_counting_function_properties():
    E1 = DiscDivisor([ (0.5, 1) ])
    E2 = DiscDivisor([ (0.5, 2), (0.1j, 1) ], origin = 1)
    E = E1 + E2
    assert E.support == [ (0.1j, 1), (0.5, 3) ] and E.origin == 1
    for r in GRID:
        assert abs(counting_function(E, r) - counting_function(E1, r) - counting_function(E2, r)) < 1e-12
    for (r, s) in zip(GRID, GRID[1:]):
        assert counting_function(E, r) <= counting_function(E, s)
    for k in (1, 2):
        assert counting_function(E, 0.9, k) <= counting_function(E, 0.9, k + 1)


# test curves, hypersurfaces and pullbacks
def test_hypersurface():
    D = Hypersurface('z0*z2 - 2*z1^2', 2)
    assert D.d == 2 and D.norm == 2
    assert Hypersurface.from_dict({ 'n': 1, 'Q': 'z1' }).d == 1
    with pytest.raises(DomainError):
        Hypersurface('z0 + z1^2', 1)
    with pytest.raises(DomainError):
        Hypersurface('1', 1)
    with pytest.raises(DomainError):
        Hypersurface('z3', 1)


def test_from_components():
    f = ProjectiveCurve.from_components([ 'z', 'z^2' ])
    assert f.components == (sp.Integer(1), sp.Symbol('z'))
    g = ProjectiveCurve.from_components([ '1', '1/(1-z)' ])
    assert sp.expand(g.components[0] * -1 - (1 - z)) == 0
    assert not g.is_constant()
    with pytest.raises(DomainError):
        ProjectiveCurve.from_components([ '0', '0' ])
    with pytest.raises(DomainError):
        ProjectiveCurve([ 'exp(z)', '1' ])


def test_common_zero_is_refused():
    with pytest.raises(DomainError):
        ProjectiveCurve([ 'z', 'z^2' ])
    with pytest.raises(DomainError):
        ProjectiveCurve([ 'z - 1/2', '0' ])
    f = ProjectiveCurve.from_components([ 'z', 'z^2' ])
    assert divisor_of_pullback(f, Hypersurface('z1', 1)).origin == 1
    assert divisor_of_pullback(f, Hypersurface('z0', 1)).origin == 0


def test_divisor_of_pullback():
    f = ProjectiveCurve.from_components([ '1', 'z' ])
    E = divisor_of_pullback(f, Hypersurface('z1 - 9/20*z0', 1))
    assert E.origin == 0 and len(E.support) == 1
    assert abs(E.support[0][0] - 0.45) < 1e-12 and E.support[0][1] == 1

    E = divisor_of_pullback(f, Hypersurface('(z1 - z0/4)^2', 1))
    assert len(E.support) == 1 and E.support[0][1] == 2
    assert abs(E.support[0][0] - 0.25) < 1e-8

    E = divisor_of_pullback(ProjectiveCurve.from_components([ '1', 'z', 'z^2' ]),
                            Hypersurface('z0*z2 - 2*z1^2', 2))
    assert E.origin == 2 and E.support == []


def test_containment():
    g = gauss_map(preset('enneper'))
    with pytest.raises(ContainmentError):
        divisor_of_pullback(g, Hypersurface('z0^2 + z1^2 + z2^2', 2))
    with pytest.raises(ContainmentError):
        proximity_function(ProjectiveCurve([ 1, 0 ]), Hypersurface('z1', 1), 0.5)


def test_order_function():
    f = ProjectiveCurve.from_components([ '1', 'z^2 + 3' ])
    for r in GRID:
        assert abs(order_function(f, r) - log(3)) < 1e-8
    with pytest.raises(DomainError):
        order_function(f, 0.99)


def test_proximity_sign():
    pairs = [ (['1', 'z'], 'z1', 1), ([ '1', 'z', 'z^2' ], 'z0*z2 - 2*z1^2', 2),
              ([ '1 - z^2', 'I*(1 + z^2)', '2*z' ], 'z2', 2) ]
    for (components, Q, n) in pairs:
        f = ProjectiveCurve.from_components(components)
        assert all(proximity_function(f, Hypersurface(Q, n), r) >= -1e-8 for r in GRID)

    # several monomials: |Q(f)| may exceed ||Q|| ||f||^d
    f = ProjectiveCurve.from_components([ '2 + z', 'z', '1' ])
    assert proximity_function(f, Hypersurface('z0 + z1 + z2', 2), 0.5) < 0


def test_singular_circle():
    f = ProjectiveCurve.from_components([ '1', 'z' ])
    with pytest.raises(SingularCircleError):
        proximity_function(f, Hypersurface('z1 - z0/2', 1), 0.5)


# the defect m + N - dT equals log ||Q|| - log |c|, c the leading coefficient of Q(f)
FMT_CASES = [
    ([ '1', 'z' ], 'z1', 1, 0.0),
    ([ '1', 'z' ], 'z1 - 9/20*z0', 1, log(20 / 9)),
    ([ '1', 'z', 'z^2' ], 'z0*z2 - 2*z1^2', 2, log(2)),
    ([ '2 + z', 'z', '1' ], 'z0 + z1 + z2', 2, -log(3)),
    ([ '1 - z^2', 'I*(1 + z^2)', '2*z' ], 'z2', 2, -log(2)),
    ([ '1', '1/(1-z)' ], 'z0', 1, 0.0),
]


@pytest.mark.parametrize('components, Q, n, expected', FMT_CASES)
def test_first_main_theorem(components, Q, n, expected):
    f = ProjectiveCurve.from_components(components)
    defects = fmt_defect(f, Hypersurface(Q, n), GRID)
    assert max(defects) - min(defects) < 1e-6
    assert all(abs(d - expected) < 1e-6 for d in defects)


def test_fmt_scaling():
    f = ProjectiveCurve.from_components([ '2 + z', 'z', '1' ])
    D = Hypersurface('z0 + z1 + z2', 2)
    g = f.scaled(3)
    for r in (0.5, 0.8):
        assert abs(order_function(g, r) - order_function(f, r) - log(3)) < 1e-8
        assert abs(proximity_function(g, D, r) - proximity_function(f, D, r)) < 1e-8
    shift = np.array(fmt_defect(g, D, GRID)) - np.array(fmt_defect(f, D, GRID))
    assert np.allclose(shift, -D.d * log(3), atol = 1e-6)


def test_fmt_table():
    f = ProjectiveCurve.from_components([ '1', 'z' ])
    rows = fmt_table(f, Hypersurface('z1', 1), GRID)
    assert len(rows) == len(GRID) and FMT_HEADER == [ 'r', 'm', 'N', 'T', 'defect' ]
    for (r, m, N, T, defect) in rows:
        assert abs(m + log(r)) < 1e-8 and abs(N - log(r)) < 1e-12 and abs(T) < 1e-12


# test growth of curves and the logarithmic derivative integrals
def test_transcendence_ratio():
    f = ProjectiveCurve.from_components([ '1', 'z^2 + 3' ])
    ratios = transcendence_ratio(f, GRID)
    assert all(abs(q - log(3) / log(1 / (1 - r))) < 1e-8 for (r, q) in zip(GRID, ratios))

    g = JetFactory.germ_curve({ 'components': [ '1', 'exp(z)' ] })
    grid = [ 0.5, 0.6, 0.7, 0.8 ]
    ratios = transcendence_ratio(g, grid)
    assert all(abs(q - (r / pi) / log(1 / (1 - r))) < 1e-6 for (r, q) in zip(grid, ratios))


def test_avoidance_check():
    line = ProjectiveCurve.from_components([ '1', 'z' ])
    check = avoidance_check(line, Hypersurface('z0^1296', 1), GRID)
    assert (check.degree, check.stated) == (1296, stated_bound(1))
    assert check.applies and check.bounded
    assert all(q == 0 for q in check.ratios)

    check = avoidance_check(ProjectiveCurve.from_components([ '1 - z', '1' ]), Hypersurface('z1', 1), GRID)
    assert check.avoids and not check.degree_ok and not check.applies
    assert check.bounded and max(check.ratios) < 1

    check = avoidance_check(ProjectiveCurve.from_components([ '1', '4*z' ]), Hypersurface('z0', 1), [ 0.3, 0.5 ])
    assert not check.bounded
    assert abs(check.ratios[0] - log(1.2) / log(1 / 0.7)) < 1e-8

    assert not avoidance_check(line, Hypersurface('z1', 1), GRID).avoids
    assert not avoidance_check(ProjectiveCurve([ 1, 0 ]), Hypersurface('z1', 1), GRID).avoids
    with pytest.raises(DomainError):
        avoidance_check(line, Hypersurface('z2', 2), GRID)
    with pytest.raises(DomainError):
        avoidance_check(JetFactory.germ_curve({ 'components': [ '1', 'exp(z)' ] }), Hypersurface('z0', 1), GRID)


LDL_GRID = [ 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99 ]


def bounded_by_first(ratios):
    return all(q <= ratios[0] for q in ratios[1:])


def test_ldl_ratio_closed_forms():
    for (r, q) in zip(LDL_GRID, ldl_ratio('exp(z)', 1, LDL_GRID)):
        assert abs(q - 2 * pi * (1 - r) / log(1 / (1 - r))) < 1e-8

    for (r, q) in zip(LDL_GRID, ldl_ratio('1/(1-z)', 1, LDL_GRID)):
        expected = 2 * pi * hyp2f1(0.5, 0.5, 1, r * r) * (1 - r) / log(1 / (1 - r))
        assert abs(q - expected) < 1e-6 * expected


@pytest.mark.parametrize('phi', [ 'exp(z)', '1/(1-z)' ])
@pytest.mark.parametrize('lam', [ 1, 2, 3 ])
def test_ldl_ratio_bounded(phi, lam):
    ratios = ldl_ratio(phi, lam, LDL_GRID)
    assert all(np.isfinite(ratios)) and bounded_by_first(ratios)


def test_ldl_product_ratio():
    ratios = ldl_product_ratio([ 'exp(z)', '1/(1-z)' ], [ 1, 1 ], 0.25, LDL_GRID)
    assert all(q > 0 for q in ratios) and bounded_by_first(ratios)
    ratios = ldl_product_ratio([ '1/(1-z)', '1/(1-z)' ], [ 2, 3 ], 0.4, LDL_GRID)
    assert bounded_by_first(ratios)
    with pytest.raises(DomainError):
        ldl_product_ratio([ 'exp(z)', '1/(1-z)' ], [ 1, 1 ], 0.5, LDL_GRID)
    with pytest.raises(DomainError):
        ldl_product_ratio([ 'exp(z)' ], [ 1 ], 0, LDL_GRID)


def test_ldl_poles():
    with pytest.raises(PoleError):
        ldl_ratio('1/(z - 1/2)', 1, LDL_GRID)
    with pytest.raises(PoleError):
        ldl_ratio('z - 3/10', 2, LDL_GRID)
    with pytest.raises(DomainError):
        ldl_ratio('exp(z)', 0, LDL_GRID)


# test minimal surfaces and their Gauss maps
def test_conformality():
    assert verify_conformality(preset('plane'))
    assert verify_conformality(preset('enneper'))
    assert verify_conformality(preset('catenoid'))
    assert not verify_conformality(WeierstrassSurface([ 1, 1, 0 ]))
    with pytest.raises(DomainError):
        gauss_map(WeierstrassSurface([ 1, 1, 0 ]))
    with pytest.raises(PoleError):
        WeierstrassSurface([ '1/(z - 1/2)', 'I/(z - 1/2)', 0 ])


def test_weierstrass_data_is_conformal():
    for (F, G) in [ ('(z + 3)/(z - 5)', '2*z^2 - z/3'), ('1 + z^3', '1/(z + 4)'), ('7/2', 'z^5 - I*z') ]:
        assert verify_conformality(weierstrass(F, G))


def test_gauss_map():
    assert gauss_map(preset('plane')).is_constant()
    g = gauss_map(preset('enneper'))
    assert not g.is_constant()
    expected = [ 1 - z ** 2, sp.I * (1 + z ** 2), 2 * z ]
    assert all(sp.expand(a - b) == 0 for (a, b) in zip(g.components, expected))
    assert not gauss_map(preset('catenoid')).is_constant()


def test_holomorphy_residual():
    samples = circle_points(0.3, 16)
    g = gauss_map(preset('enneper'))
    assert holomorphy_residual(g, samples) <= 1e-8
    assert holomorphy_residual(gauss_map(preset('plane')), samples) == 0.0
    assert holomorphy_residual(conjugate_component(g, 2), samples) > 1e-2
    with pytest.raises(DomainError):
        holomorphy_residual(g, [ 0.99 ])
    with pytest.raises(DomainError):
        conjugate_component(g, 3)


def test_area_form_density():
    plane, enneper = preset('plane'), preset('enneper')
    assert abs(area_form_density(plane, 0.3 + 0.1j) - 4) < 1e-12
    assert abs(area_form_density(plane, 0.3, EnumNorm.MAX) - 2) < 1e-12
    assert abs(area_form_density(enneper, 0) - 1) < 1e-12

    Z = circle_points(0.7, 32)
    quotient = area_form_density(enneper, Z) / area_form_density(enneper, Z, EnumNorm.MAX)
    assert np.all(quotient >= 1 - 1e-12) and np.all(quotient <= 3 + 1e-12)


def test_reconstruct_immersion():
    x = reconstruct_immersion(preset('plane'), 0.1 + 0.2j)
    assert np.allclose(x, [ 0.2, -0.4, 0 ])
    x = reconstruct_immersion(preset('enneper'), 0.0)
    assert np.allclose(x, 0)


def test_yau_integral_divergence():
    eps = [ 0.5, 0.1, 0.01 ]
    values = yau_integral_divergence(1, EnumModel.CONSTANT, eps)
    assert np.allclose(values, [ 4 * pi * (1 - e) ** 2 for e in eps ])

    eps = [ 10.0 ** -e for e in range(1, 7) ]
    values = yau_integral_divergence(2, EnumModel.POLE, eps)
    expected = [ 4 * pi * log(1 / (1 - (1 - e) ** 2)) for e in eps ]
    assert np.allclose(values, expected, rtol = 1e-6)
    assert all(a < b for (a, b) in zip(values, values[1:]))

    with pytest.raises(DomainError):
        yau_integral_divergence(0, EnumModel.POLE, eps)
    with pytest.raises(DomainError):
        yau_integral_divergence(1, EnumModel.POLE, [ 0.01, 0.1 ])


@pytest.mark.parametrize('a, verdict', [
    (0.25, EnumVerdict.CONVERGING), (0.5, EnumVerdict.CONVERGING), (0.9, EnumVerdict.CONVERGING),
    (0.97, EnumVerdict.CONVERGING), (0.99, EnumVerdict.CONVERGING),
    (1.0, EnumVerdict.DIVERGING), (1.5, EnumVerdict.DIVERGING), (2.0, EnumVerdict.DIVERGING) ])
def test_proof_integral_convergence(a, verdict):
    result = proof_integral_convergence(a)
    assert result.verdict == verdict
    assert all(u < v for (u, v) in zip(result.values, result.values[1:]))
    if verdict == EnumVerdict.CONVERGING:
        assert result.tail_bound >= 0


@pytest.mark.parametrize('a', [ 0.5, 0.9, 0.97 ])
def test_proof_integral_tail_brackets_limit(a):
    limit = gamma(a + 1) * ((1 - a) ** -(a + 1) - (2 - a) ** -(a + 1))
    result = proof_integral_convergence(a)
    assert result.values[-1] <= limit * (1 + 1e-9)
    assert result.values[-1] + result.tail_bound >= limit * (1 - 1e-9)
    if a == 0.5:
        assert result.tail_bound < 1e-6


def test_proof_integral_closed_form():
    S = log(100)
    values = proof_integral_convergence(1.0).values
    assert abs(values[1] - (S * S / 2 - (1 - np.exp(-S) * (1 + S)))) < 1e-8
    with pytest.raises(DomainError):
        proof_integral_convergence(0)
    with pytest.raises(DomainError):
        proof_integral_convergence(0.5, [ 0.1, 0.01 ])


# test the normalised circle integral of the Wronskian differential
POINTS = [ [ -2, 1 ], [ 2, 1 ], [ -3, 1 ], [ 3, 1 ], [ 1, 0 ] ]


def test_jet_norm_circle_integral():
    w = build_wronskian(HyperplaneArrangement(1, POINTS))
    ratios = jet_norm_circle_integral(w, ProjectiveCurve.from_components([ '1', 'z' ]), GRID)
    assert all(q > 0 for q in ratios)
    assert max(ratios) / np.median(ratios) <= 5

    constant = jet_norm_circle_integral(w, ProjectiveCurve.from_components([ '1', '1/2' ]), GRID)
    assert all(q == 0 for q in constant)


def test_jet_norm_circle_integral_errors():
    f = ProjectiveCurve.from_components([ '1', 'z' ])
    w = build_wronskian(HyperplaneArrangement(1, [ [ '-1/2', 1 ] ] + POINTS[1:]))
    with pytest.raises(SingularCircleError):
        jet_norm_circle_integral(w, f, GRID)
    w = build_wronskian(HyperplaneArrangement(1, POINTS[:4]))
    with pytest.raises(DomainError):
        jet_norm_circle_integral(w, f, GRID)
