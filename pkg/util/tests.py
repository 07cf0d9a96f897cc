#!/usr/bin/python

# to run, make sure you are in the root of the repo, and
#   pytest util/tests.py

from fractions import Fraction
import json
import numpy as np
import pytest

from util.geometry import *
from util.util import *
from math import log, pi


# test exact parsing of rationals, grids and ranges
def test_parse_fraction():
    assert parse_fraction('1/3') == Fraction(1, 3)
    assert parse_fraction('0.25') == Fraction(1, 4)
    assert parse_fraction(-2) == Fraction(-2)
    with pytest.raises(DomainError):
        parse_fraction('one third')
    with pytest.raises(DomainError):
        parse_fraction('1/0')


def test_parse_grid():
    assert np.allclose(parse_grid('0.5:0.9:5'), [ 0.5, 0.6, 0.7, 0.8, 0.9 ])
    assert np.allclose(parse_grid('0.5,0.95'), [ 0.5, 0.95 ])
    assert len(parse_grid('0.5:0.95:20')) == 20
    with pytest.raises(DomainError):
        parse_grid('0.5:0.9')
    with pytest.raises(DomainError):
        parse_grid('0.5:0.9:0')


def test_parse_range():
    assert parse_range('1..6') == [ 1, 2, 3, 4, 5, 6 ]
    assert parse_range('3') == [ 3 ]
    with pytest.raises(DomainError):
        parse_range('6..1')
    with pytest.raises(DomainError):
        parse_range('a..b')


def test_check_radius_and_grid():
    assert check_radius(0.5) == 0.5
    for r in (0, 1, -0.1, 1.5):
        with pytest.raises(DomainError):
            check_radius(r)
    assert check_grid([ 0.5, 0.6 ]) == [ 0.5, 0.6 ]
    with pytest.raises(DomainError):
        check_grid([ 0.6, 0.5 ])


# test reproducible formatting
def test_format_number():
    assert format_number(0.1) == '0.1'
    assert format_number(248832) == '248832'
    assert format_number(Fraction(3, 4)) == '3/4'
    assert format_number(True) == 'true'
    assert format_number(1 / 3) == repr(1 / 3)


def test_save_rows_and_json(tmp_path):
    text = save_rows([ [ 0.5, 1, Fraction(1, 2) ] ], [ 'r', 'n', 'q' ])
    assert text == 'r,n,q\n0.5,1,1/2\n'

    path = tmp_path / 'out' / 'table.csv'
    assert save_rows([ [ 1 ] ], [ 'n' ], str(path)) == path.read_text()

    doc = json.loads(save_json({ 'b': 207691, 'a': [ 0.5, True ] }))
    assert doc == { 'a': [ '0.5', True ], 'b': '207691' }


def test_load_json(tmp_path):
    path = tmp_path / 'hyp.json'
    path.write_text('{"n": 1, "Q": "z1"}')
    assert load_json(str(path)) == { 'n': 1, 'Q': 'z1' }
    with pytest.raises(DomainError):
        load_json(str(tmp_path / 'missing.json'))


def test_exit_codes():
    assert DomainError.exit_code == 2
    assert ContainmentError.exit_code == 3
    assert SingularCircleError.exit_code == 3
    assert NonConvergenceError.exit_code == 4
    assert issubclass(NonConvergenceError, ArithmeticError)
    assert issubclass(PoleError, ValueError)


# test circle sampling and norms
def test_circle_points():
    Z = circle_points(0.5, 4)
    assert np.allclose(Z, [ 0.5, 0.5j, -0.5, -0.5j ])
    assert np.allclose(np.abs(circle_points(0.3, 7, 0.1)), 0.3)


def test_vector_norm():
    V = np.array([ [ 1, 3j ], [ 1j, -4 ], [ 0, 0 ] ])
    assert np.allclose(vector_norm(V, EnumNorm.MAX), [ 1, 4 ])
    assert np.allclose(vector_norm(V, EnumNorm.EUCLIDEAN), [ np.sqrt(2), 5 ])


def test_check_circle():
    assert check_circle(0.5, [ 0.9, -0.1 ]) == []
    assert check_circle(0.5, [ 0.505j, 0.9 ]) == [ 0.505j ]
    with pytest.raises(SingularCircleError):
        check_circle(0.5, [ 0.5 ])


# test circle averages against Jensen's formula
def test_circle_mean():
    assert abs(circle_mean(lambda Z: np.abs(Z) ** 2, 0.7) - 0.49) < 1e-12
    assert abs(circle_mean(lambda Z: np.log(np.abs(Z - 2)), 0.5) - log(2)) < 1e-8
    assert abs(circle_mean(lambda Z: np.log(np.abs(Z - 0.2)), 0.5) - log(0.5)) < 1e-8


def test_circle_mean_near_zero():
    near = check_circle(0.5, [ 0.505 ])
    value = circle_mean(lambda Z: np.log(np.abs(Z - 0.505)), 0.5, near)
    assert abs(value - log(0.505)) < 1e-6


def test_circle_mean_nonconvergence():
    with pytest.raises(NonConvergenceError):
        circle_mean(lambda Z: np.abs(Z - 0.5), 0.5, (), { 'start': 4, 'cap': 8, 'tol': 1e-300 })


def test_node_offset():
    assert node_offset(16, []) == 0.0
    offset = node_offset(16, [ 0.5 ])
    assert abs(offset - pi / 16) < 1e-12
