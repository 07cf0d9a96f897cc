#!/usr/bin/python

# to run, make sure you are in the root of the repo, and
#   pytest jets/tests.py

from fractions import Fraction
import json
import random
import numpy as np
import pytest
import sympy as sp
from click.testing import CliRunner

from jets.algebra import *
from jets.factory import EnumGerms, JetFactory
from jets.germ import *
from jets.main import options
from jets.wronskian import *
from analysis.bounds import fujimoto_regime, stated_bound
from analysis.nevanlinna import parse_disc_function
from util.util import DomainError, InsufficientOrderError, InvalidArrangementError, PoleError


def q(text):
    return exact(text)


# test coordinates, arithmetic and the text grammar
def test_variable_and_weight():
    p = plain(1, 2) * plain(2, 1) - 3 * dlog(1, 3)
    assert weight_of(p) == 3
    assert weight_of(plain(1, 1) + plain(1, 2)) == MIXED
    assert weight_of(JetPolynomial()) == 0
    assert p.max_order() == 3
    with pytest.raises(DomainError):
        JetPolynomial.variable(EnumJet.PLAIN, 0, 1)
    with pytest.raises(DomainError):
        plain(1, 1) ** -1


def test_parse_and_format():
    p = JetPolynomial.parse('d[1]^2 + 2*d[2]')
    assert p == plain(1, 2) + 2 * plain(2, 1)
    assert str(p) == 'd[1]^2 + 2*d[2]^1'

    r = JetPolynomial.parse('(1/2-I)*ratio[1] - (dlog[2]^1)^2')
    assert r == ratio(1, 1) * q('1/2-I') - dlog(2, 1) ** 2
    assert JetPolynomial.parse(str(r)) == r
    assert str(JetPolynomial()) == '0'


def test_parse_errors():
    with pytest.raises(DomainError):
        JetPolynomial.parse('d[1]^1 +')
    with pytest.raises(DomainError):
        JetPolynomial.parse('1/d[1]')


def test_exact_refuses_floats():
    assert exact('1/3') == exact(Fraction(1, 3))
    assert exact(2) == q('2')
    with pytest.raises(DomainError):
        exact(0.5)


def test_substitute():
    p = plain(1, 1) ** 2 + plain(2, 1)
    s = p.substitute({ JetCoordinate(EnumJet.PLAIN, 1, 1): plain(2, 1) + 1 })
    assert s == plain(2, 1) ** 2 + 3 * plain(2, 1) + 1


# test the Faa di Bruno expansions
def test_faa_di_bruno_low_orders():
    assert faa_di_bruno_log(1, 1) == ratio(1, 1)
    assert faa_di_bruno_log(1, 2) == ratio(1, 2) - ratio(1, 1) ** 2
    assert faa_di_bruno_log(2, 3) == ratio(2, 3) - 3 * ratio(2, 1) * ratio(2, 2) + 2 * ratio(2, 1) ** 3
    assert faa_di_bruno_inverse(1, 2) == dlog(1, 2) + dlog(1, 1) ** 2
    with pytest.raises(DomainError):
        faa_di_bruno_log(1, 7, 6)
    with pytest.raises(DomainError):
        faa_di_bruno_log(1, 0)


def test_faa_di_bruno_matches_direct_differentiation():
    z = sp.Symbol('z')
    germ = Germ.polynomial([ 2, 3, -1, 5, 0, 1 ])
    jv = jet_of([ germ ], 6, 0, [ 1 ])
    g = sp.log(2 + 3 * z - z ** 2 + 5 * z ** 3 + z ** 5)
    for j in range(1, 7):
        assert jv.get(EnumJet.LOG, 1, j) == exact(sp.diff(g, z, j).subs(z, 0))
        assert weight_of(faa_di_bruno_log(1, j)) == j


def test_trivialization_round_trip():
    for j in range(1, 7):
        p = dlog(1, j)
        there = convert_trivialization(p, EnumBasis.LOG_TO_RATIO)
        assert weight_of(there) == j
        assert convert_trivialization(there, EnumBasis.RATIO_TO_LOG) == p


def test_trivialization_errors():
    with pytest.raises(DomainError):
        convert_trivialization(dlog(1, 1) + dlog(1, 2), EnumBasis.LOG_TO_RATIO)
    with pytest.raises(DomainError):
        convert_trivialization(dlog(2, 1), EnumBasis.LOG_TO_RATIO, ell = 1)


def test_trivialization_round_trip_isobaric():
    rng = random.Random(6)
    coords = [ JetCoordinate(kind, i, j) for kind in (EnumJet.PLAIN, EnumJet.LOG)
               for i in (1, 2) for j in range(1, 7) ]
    for _ in range(3):
        p = random_isobaric(rng, 6, coords, size = 8)
        there = convert_trivialization(p, EnumBasis.LOG_TO_RATIO)
        assert weight_of(there) == 6
        assert convert_trivialization(there, EnumBasis.RATIO_TO_LOG) == p


def test_faa_di_bruno_integral_coefficients():
    for j in range(1, 7):
        for p in (faa_di_bruno_log(1, j), faa_di_bruno_inverse(1, j)):
            for term in p.terms:
                assert term.coefficient.y == 0 and term.coefficient.x.denominator == 1


def test_isobaric_monomials():
    coords = [ JetCoordinate(EnumJet.PLAIN, 1, 1), JetCoordinate(EnumJet.PLAIN, 1, 2) ]
    assert isobaric_monomials(2, coords) == [ plain(1, 2), plain(1, 1) ** 2 ]
    assert len(isobaric_monomials(4, coords)) == 3
    assert all(weight_of(m) == 5 for m in isobaric_monomials(5, coords))


# test germ arithmetic and jets
def test_germ_arithmetic():
    g = Germ.polynomial([ 1, 1 ])
    assert g * g.reciprocal() == Germ.polynomial([ 1 ])
    assert (g + g - g) == g
    assert g.compose_homothety(2) == Germ.polynomial([ 1, 2 ])
    assert hash(g + g - g) == hash(g)
    assert len({ g, Germ.polynomial([ 1, 1 ]), g.to_float(), g.to_float() }) == 2
    with pytest.raises(PoleError):
        Germ.polynomial([ 0, 1 ]).reciprocal()


def test_germ_evaluation():
    g = Germ.polynomial([ 1, 2, 3 ])
    assert g.value_at(q('1/2')) == q('11/4')
    assert g.derivative_at(1, q('1/2')) == q('5')
    assert g.derivative_at(2, q('1/2')) == q('6')
    assert Germ.polynomial([ 0, 0, 1 ]).recenter(1).coefficients[:3] == (q(1), q(2), q(1))
    assert np.allclose(g.values(np.array([ 0.5, 1j ])), [ 2.75, 1 + 2j - 3 ])


def test_germ_order_errors():
    with pytest.raises(InsufficientOrderError):
        Germ([ 1, 2, 3 ]).derivative_at(3, 0)
    with pytest.raises(InsufficientOrderError):
        Germ([ 1 ] * 10, radius = 1.0).value_at(0.95)
    with pytest.raises(InsufficientOrderError):
        jet_of([ Germ([ 1, 1 ]) ], 2, 0)


def test_log_derivative_of_exp():
    e = JetFactory.germ('exp(z)')
    d = e.log_derivative()
    assert d.coefficients[0] == q(1)
    assert all(not c for c in d.coefficients[1:])


def test_leibniz_rule():
    f = Germ([ 1, 2, Fraction(1, 3), -1, 0, 5, Fraction(-2, 7) ])
    g = Germ([ Fraction(1, 2), 0, 3, 1, -4, 1, 2 ])
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
    h = Germ.polynomial([ 1, '1+I', 0, 2 ])
    assert (f * h).derivative() == f.derivative() * h + f * h.derivative()


@pytest.mark.parametrize('text', [ '1 + z', '1 - 2*z + z^3', '1/(1-z)', '(2 + z)/(1 - z^2)' ])
def test_log_derivative_series(text):
    z = sp.Symbol('z')
    f = JetFactory.germ(text)
    d = f.log_derivative()
    series = sp.series(sp.diff(sp.log(parse_disc_function(text)), z), z, 0, d.K + 1).removeO()
    assert d.coefficients == tuple(q(series.coeff(z, j)) for j in range(d.K + 1))


def test_jet_of_log_coordinates():
    jv = jet_of([ Germ.polynomial([ 1, 1 ]) ], 3, 0, [ 1 ])
    assert jv.get(EnumJet.LOG, 1, 1) == q(1)
    assert jv.get(EnumJet.LOG, 1, 2) == q(-1)
    assert jv.get(EnumJet.LOG, 1, 3) == q(2)
    assert jv.get(EnumJet.RATIO, 1, 2) == q(0)
    with pytest.raises(PoleError):
        jet_of([ Germ.polynomial([ 0, 1 ]) ], 2, 0, [ 1 ])
    with pytest.raises(DomainError):
        evaluate(dlog(1, 1), jet_of([ Germ.polynomial([ 1, 1 ]) ], 1, 0))


# test homogeneity under z -> lam z
def test_homothety_of_wronskian():
    w = build_wronskian(moment_arrangement(2, 6))
    germs = [ Germ.polynomial([ 1, 2, 0, -1 ]), Germ.polynomial([ 0, 1, 3, 0, 1 ]) ]
    assert homothety_weight_check(w.numerator, 3, germs, q('1/2'), q('1/5'))
    assert homothety_weight_check(w.numerator, 3, germs, 0.7 + 0.2j, 0.1)


def test_homothety_of_log_polynomial():
    p = dlog(1, 2) * plain(2, 1)
    germs = [ Germ.polynomial([ 1, 1 ]), Germ.polynomial([ 0, 1, 1 ]) ]
    assert homothety_weight_check(p, 3, germs, q(2), q('1/10'))
    assert not homothety_weight_check(p, 2, germs, q(2), q('1/10'))
    mixed = plain(1, 1) + plain(1, 2)
    assert not homothety_weight_check(mixed, 1, [ Germ.polynomial([ 0, 1, 0, 1 ]) ], q(2), q('1/10'))


HOMOTHETY_LAMBDAS = [ '2', '1/3', '-3/2', '1+I', '1/2+I/3', '-I', '2-I/2' ]


def random_isobaric(rng, m, coords, size = 5):
    monomials = isobaric_monomials(m, coords)
    p = JetPolynomial()
    for mono in rng.sample(monomials, min(size, len(monomials))):
        p = p + rng.randint(-3, 3) * mono
    return p if not p.is_zero() else monomials[0]


@pytest.mark.parametrize('seed', range(50))
def test_homothety_random_isobaric(seed):
    rng = random.Random(seed)
    coords = [ JetCoordinate(kind, i, j) for kind in (EnumJet.PLAIN, EnumJet.LOG)
               for i in (1, 2) for j in (1, 2, 3) ]
    if seed % 10 == 0:
        p, m = symbolic_wronskian([ 1, 2 ]), 3
    else:
        m = rng.randint(1, 6)
        p = random_isobaric(rng, m, coords)
    germs = [ Germ.polynomial([ rng.randint(1, 3) ] + [ rng.randint(-3, 3) for _ in range(4) ])
              for _ in range(2) ]
    lam = q(HOMOTHETY_LAMBDAS[seed % len(HOMOTHETY_LAMBDAS)])
    assert homothety_weight_check(p, m, germs, lam, Fraction(1, 20))


# test the Wronskian differential
FORMS_COLLINEAR = [ [ 0, 1, 0 ], [ 0, 0, 1 ], [ -1, 1, 1 ], [ -1, 1, -1 ] ]
FORMS_GENERAL   = [ [ 0, 1, 0 ], [ 0, 0, 1 ], [ -1, 1, 1 ], [ -2, 1, -1 ] ]
FORMS_POINTS    = [ [ -2, 1 ], [ 2, 1 ], [ -3, 1 ], [ 3, 1 ], [ 1, 0 ] ]


def test_general_position():
    # x1 + x2 = 1, x1 - x2 = 1 and x2 = 0 all pass through (1, 0)
    bad = HyperplaneArrangement(2, FORMS_COLLINEAR)
    assert not check_general_position(bad)
    assert dependent_subsets(bad) == [ (2, 3, 4) ]
    assert check_general_position(HyperplaneArrangement(2, FORMS_GENERAL))
    with pytest.raises(InvalidArrangementError):
        build_wronskian(bad)
    with pytest.raises(DomainError):
        dependent_subsets(HyperplaneArrangement(2, FORMS_GENERAL[:2]))


def test_arrangement_from_dict():
    a = HyperplaneArrangement.from_dict({ 'n': 1, 'forms': [ [ '1/2', 1 ], [ 1, 0 ] ] })
    assert a.forms[0] == (Fraction(1, 2), Fraction(1))
    assert HyperplaneArrangement.from_dict(a.to_dict()).forms == a.forms
    with pytest.raises(DomainError):
        HyperplaneArrangement(1, [ [ 0, 0 ] ])
    with pytest.raises(DomainError):
        HyperplaneArrangement(2, [ [ 1, 0 ] ])


def test_wronskian_numerator():
    w = build_wronskian(HyperplaneArrangement(2, FORMS_GENERAL))
    assert w.numerator == plain(1, 1) * plain(2, 2) - plain(1, 2) * plain(2, 1)
    assert (w.weight, w.vanishing_order) == (3, 1)
    assert symbolic_wronskian([ 2, 1 ]) == -w.numerator


def test_wronskian_numerology():
    for n in range(1, 6):
        w = build_wronskian(moment_arrangement(n, n + 2))
        assert w.weight == n * (n + 1) // 2
    for n in (2, 3):
        for q_ in (n + 2, 2 * n * n):
            w = build_wronskian(moment_arrangement(n, q_))
            assert w.vanishing_order == q_ - (n + 1)
    with pytest.raises(DomainError):
        build_wronskian(moment_arrangement(2, 4), k = 1)


def test_local_log_form():
    w = build_wronskian(HyperplaneArrangement(2, FORMS_GENERAL))
    form = local_log_form(w, (1, 2))
    assert form.verified and form.constant == 1
    form = local_log_form(w, (3, 4))
    assert form.verified and form.constant == Fraction(-1, 2)
    assert weight_of(form.polynomial) == 3

    w3 = build_wronskian(moment_arrangement(3, 6))
    assert local_log_form(w3, (2, 3, 4), seed = 1).verified


def test_local_log_form_errors():
    w = build_wronskian(moment_arrangement(2, 5))
    with pytest.raises(DomainError):
        local_log_form(w, (1, 2))
    with pytest.raises(DomainError):
        local_log_form(w, (2, 2))
    with pytest.raises(DomainError):
        local_log_form(w, (2, 9))


def test_evaluate_wronskian():
    w = build_wronskian(HyperplaneArrangement(1, FORMS_POINTS))
    assert evaluate_wronskian(w, [ Germ.polynomial([ 0, 1 ]) ], 0) == q('1/36')
    with pytest.raises(PoleError):
        evaluate_wronskian(w, [ Germ.polynomial([ 2, 1 ]) ], 0)


def test_wronskian_vanishes_on_dependent_components():
    x1 = Germ.polynomial([ 1, 1, 1, 0, 2 ])
    w = build_wronskian(HyperplaneArrangement(2, FORMS_GENERAL))
    assert evaluate_wronskian(w, [ x1, 2 * x1 ], q('1/7')) == q(0)
    assert evaluate(symbolic_wronskian([ 1, 2 ]), jet_of([ x1, 2 * x1 + 3 ], 2, q('1/5'))) == q(0)
    assert evaluate_wronskian(w, [ x1, x1 * x1 ], q('1/7')) != q(0)


def test_recover_fujimoto_weight():
    assert recover_fujimoto_weight(1, 5) == (1, 3)
    assert recover_fujimoto_weight(2, 10) == (3, 7)
    for n in range(1, 5):
        m, m_tilde = recover_fujimoto_weight(n, (n + 1) ** 2)
        assert m_tilde == 2 * m and not fujimoto_regime(n, (n + 1) ** 2)
        m, m_tilde = recover_fujimoto_weight(n, (n + 1) ** 2 + 1)
        assert m_tilde > 2 * m and fujimoto_regime(n, (n + 1) ** 2 + 1)
    with pytest.raises(DomainError):
        recover_fujimoto_weight(2, 3)


# test the loaders
def test_factory_germs():
    g = JetFactory.germ('1 + 2*z - z^3')
    assert g.exact and g.coefficients[:4] == (q(1), q(2), q(0), q(-1))
    e = JetFactory.germ('exp(z)')
    assert e.exact and e.radius == 1.0 and e.coefficients[3] == q('1/6')
    assert not JetFactory.germ('exp(sqrt(2)*z)').exact
    assert EnumGerms.from_str('taylor') == EnumGerms.SERIES
    with pytest.raises(DomainError):
        JetFactory.germ('exp(z)', kind = 'polynomial')


# test the command line
def run(args, tmp_path):
    out = tmp_path / 'out.txt'
    result = CliRunner().invoke(options, [ '--out', str(out) ] + args)
    return result, (out.read_text() if out.exists() else '')


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_cli_bounds(tmp_path):
    result, text = run([ 'bounds', '--n', '1..6' ], tmp_path)
    assert result.exit_code == 0
    lines = text.splitlines()
    assert lines[0] == "n,k,k',delta,r0,threshold,stated_bound,ok"
    assert len(lines) == 7
    assert lines[2] == '2,3,6,11,18876,207691,248832,true'

    result, _ = run([ 'bounds', '--n', '0' ], tmp_path)
    assert result.exit_code == 2

    result, text = run([ '--json', 'bounds', '--n', '3' ], tmp_path)
    doc = json.loads(text)
    assert doc['version'] == '1'
    assert doc['rows'][0][6] == str(stated_bound(3))


def test_cli_faa(tmp_path):
    result, text = run([ 'faa', '--order', '3' ], tmp_path)
    assert result.exit_code == 0
    assert f"expansion,{faa_di_bruno_log(1, 3, 3)}" in text.splitlines()


def test_cli_wronskian(tmp_path):
    path = write(tmp_path, 'arr.json', { 'n': 1, 'forms': FORMS_POINTS })
    result, text = run([ 'wronskian', '--file', path ], tmp_path)
    assert result.exit_code == 0
    lines = text.splitlines()
    assert 'weight,1' in lines and 'vanishing_order,3' in lines

    path = write(tmp_path, 'bad.json', { 'n': 2, 'forms': FORMS_COLLINEAR })
    result, _ = run([ 'wronskian', '--file', path ], tmp_path)
    assert result.exit_code == 3


def test_cli_fmt_check(tmp_path):
    curve = write(tmp_path, 'curve.json', { 'components': [ '1', 'z' ] })
    hyp = write(tmp_path, 'hyp.json', { 'n': 1, 'Q': 'z1' })
    result, text = run([ '--grid', '0.5:0.95:20', 'fmt-check', '-c', curve, '-d', hyp ], tmp_path)
    assert result.exit_code == 0
    lines = text.splitlines()
    assert lines[0] == 'r,m,N,T,defect' and len(lines) == 21
    assert all(abs(float(line.split(',')[-1])) < 1e-6 for line in lines[1:])

    inside = write(tmp_path, 'inside.json', { 'components': [ '1', '0' ] })
    result, _ = run([ 'fmt-check', '-c', inside, '-d', hyp ], tmp_path)
    assert result.exit_code == 3


def test_cli_gauss_and_proof_integral(tmp_path):
    result, text = run([ 'gauss', '--preset', 'enneper', '--check', 'holomorphy' ], tmp_path)
    assert result.exit_code == 0
    assert 'holomorphic,true' in text.splitlines()

    result, text = run([ '--json', 'proof-integral', '--ratio', '0.5' ], tmp_path)
    assert result.exit_code == 0
    assert json.loads(text)['verdict'] == 'converging'


def test_cli_germ_curves(tmp_path):
    exp = write(tmp_path, 'exp.json', { 'components': [ '1', 'exp(z)' ] })
    result, text = run([ 'transcendence', '-c', exp, '--germs' ], tmp_path)
    assert result.exit_code == 0
    radii = [ float(line.split(',')[0]) for line in text.splitlines()[1:] ]
    assert radii == [ 0.5, 0.6, 0.7, 0.8 ]

    result, _ = run([ '--grid', '0.92,0.95', 'transcendence', '-c', exp, '--germs' ], tmp_path)
    assert result.exit_code == 2

    germs = write(tmp_path, 'germs.json', { 'kind': 'germs', 'components': [ '1', 'exp(z)' ] })
    hyp = write(tmp_path, 'hyp.json', { 'n': 1, 'Q': 'z1' })
    result, _ = run([ 'fmt-check', '-c', germs, '-d', hyp ], tmp_path)
    assert result.exit_code == 2


def test_cli_jet_eval_tolerance(tmp_path, monkeypatch):
    seen = []
    def check(*args, **kwargs):
        seen.append(kwargs.get('tol'))
        return True
    monkeypatch.setattr('jets.main.homothety_weight_check', check)

    args = [ 'jet-eval', '-p', 'dlog[1]^2 + d[2]^1', '-g', '1 + z', '-g', 'z^2', '--z', '1/3', '-m', '2' ]
    result, text = run(args, tmp_path)
    assert result.exit_code == 0 and 'homogeneous,true' in text.splitlines()
    result, _ = run([ '--tol', '1e-3' ] + args, tmp_path)
    assert result.exit_code == 0
    assert seen == [ None, 1e-3 ]


def test_cli_avoidance(tmp_path):
    curve = write(tmp_path, 'curve.json', { 'components': [ '1 - z', '1' ] })
    hyp = write(tmp_path, 'hyp.json', { 'n': 1, 'Q': 'z1^1296' })
    result, text = run([ 'avoidance', '-c', curve, '-d', hyp ], tmp_path)
    assert result.exit_code == 0
    lines = text.splitlines()
    assert 'applies,true' in lines and 'bounded,true' in lines and 'stated_bound,1296' in lines
