"""Typed error conditions and the Unavailable signal."""

from __future__ import annotations


class RandHeatError(Exception):
    """Base class for all library-specific errors."""


class DomainError(RandHeatError):
    """Argument outside the mathematical domain of an operation (e.g. MGF)."""


class InvalidInterval(RandHeatError):
    """Interval endpoints are not ordered L1 < L2."""


class OutOfDomain(RandHeatError):
    """Spatial point outside [L1, L2] (or [0, 1] in canonical coordinates)."""


class SingularPoint(RandHeatError):
    """Density evaluation requested where sin(pi y) vanishes (or nearly so)."""


class UnsupportedN(RandHeatError):
    """Truncation order beyond the configured quadrature cap."""


class DegenerateCoefficient(RandHeatError):
    """A Fourier coefficient with zero eigenvalue has no density."""


class MassDeficit(RandHeatError):
    """Density grid captures too little probability mass for moment extraction."""


class RangeMismatch(RandHeatError):
    """Too many empirical samples fall outside the analytic curve's grid."""


class ConfigError(RandHeatError):
    """Malformed or inconsistent run configuration."""


class _Unavailable:
    """Singleton signal for 'no closed form exists'; falsy, not an error.

    Returned (never raised) by operations like ``mgf`` or
    ``lipschitz_constant`` when the requested quantity has no closed form for
    the distribution at hand.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "Unavailable"


UNAVAILABLE = _Unavailable()


def is_unavailable(value) -> bool:
    return value is UNAVAILABLE
