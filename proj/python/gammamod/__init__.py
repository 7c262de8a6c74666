"""Persistence modules over cone orders: exact interleaving and convolution distances."""

from fractions import Fraction

from . import _gammamod
from ._gammamod import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    Error,
    InvariantError,
    ParseError,
    document_type,
    functor,
    run_suite,
    suite_names,
)

__all__ = [
    "BudgetExceeded",
    "DimensionError",
    "DomainError",
    "Error",
    "InvariantError",
    "ParseError",
    "convolution_distance",
    "document_type",
    "functor",
    "gauge",
    "interleaving_distance",
    "principal_module",
    "run_suite",
    "suite_names",
]


def _s(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def _vec(xs):
    return [_s(x) for x in xs]


def _fractions(d):
    out = dict(d)
    for key in ("value", "lo", "hi"):
        if out[key] is not None:
            out[key] = Fraction(out[key])
    return out


def interleaving_distance(first, second, direction, tol=None, budget=20):
    """Distance between two module documents (JSON text) along `direction`.

    Returns a dict with `value` (Fraction, None when infinite), `attained`,
    `lo`/`hi` brackets and `decisions`. Passing `tol` selects bisection.
    """
    r = _gammamod.interleaving_distance(first, second, _vec(direction), None if tol is None else _s(tol), budget)
    return _fractions(r)


def convolution_distance(first, second, unit=1):
    """Convolution distance between two ray sheaves given by their births."""
    return _fractions(_gammamod.convolution_distance(_vec(first), _vec(second), _s(unit)))


def principal_module(normals, point, prime=2):
    return _gammamod.principal_module([_vec(r) for r in normals], _vec(point), prime)


def gauge(normals, direction, point):
    return Fraction(_gammamod.gauge([_vec(r) for r in normals], _vec(direction), _vec(point)))
