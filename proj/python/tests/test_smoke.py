import json
from fractions import Fraction

import pytest

import gammamod

LINE = [[-1]]


def test_principal_distance():
    a = gammamod.principal_module(LINE, [0])
    b = gammamod.principal_module(LINE, [3])
    r = gammamod.interleaving_distance(a, b, [1])
    assert r["value"] == 3
    assert r["attained"]
    assert gammamod.interleaving_distance(a, b, [Fraction(3)])["value"] == 1


def test_bisection_brackets_exact_value():
    a = gammamod.principal_module(LINE, [0])
    b = gammamod.principal_module(LINE, [Fraction(5, 2)])
    r = gammamod.interleaving_distance(a, b, [1], tol=Fraction(1, 1 << 20))
    assert not r["exact"]
    assert r["lo"] <= Fraction(5, 2) <= r["hi"]
    assert r["hi"] - r["lo"] <= Fraction(1, 1 << 20)


def test_convolution_matches_interleaving():
    assert gammamod.convolution_distance([0, 10], [1, 10])["value"] == 1
    assert gammamod.convolution_distance([0], [])["infinite"]
    assert gammamod.convolution_distance([0], [3], unit=3)["value"] == 1


def test_functors_round_trip():
    a = gammamod.principal_module(LINE, [0])
    assert gammamod.document_type(a) == "arr-module"
    g = gammamod.functor("beta-star", a)
    assert gammamod.document_type(g) == "gamma-module"
    assert json.loads(gammamod.functor("beta-star", gammamod.functor("alpha-star", g))) == json.loads(g)
    with pytest.raises(gammamod.DomainError):
        gammamod.functor("alpha-star", a)


def test_errors():
    with pytest.raises(gammamod.ParseError):
        gammamod.document_type('{"version": 1}')
    a = gammamod.principal_module(LINE, [0])
    with pytest.raises(gammamod.DomainError):
        gammamod.interleaving_distance(a, a, [-1])
    with pytest.raises(gammamod.Error):
        gammamod.principal_module([[1, 0]], [0, 0])


def test_gauge():
    assert gammamod.gauge([[-1, 0], [0, -1]], [1, 2], [3, -1]) == 3


def test_suites_run():
    assert "gauge" in gammamod.suite_names()
    r = gammamod.run_suite("gauge", seed=5, count=40)
    assert r["passed"] == 40
    assert r["failures"] == []
