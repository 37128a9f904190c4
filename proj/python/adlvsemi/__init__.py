"""Python front end for the adlv semi-module library.

Reports come back as plain dicts with the same layout as the CLI's JSON output.
"""

import json

from . import _core
from ._core import AdlvError, adlv_dimension, newton_lambda, weight_multiplicity

__all__ = [
    "AdlvError",
    "adlv_dimension",
    "case",
    "default_battery",
    "dims",
    "enumerate",
    "lattice_check",
    "multiplicity_check",
    "newton_lambda",
    "verify",
    "weight_multiplicity",
]


def case(n, d, mu, *, m=None, q=2, window=None, precision=None):
    """A case dict; mu is a list of 0/1 vectors or a string such as "10/10"."""
    out = {"n": n, "d": d, "mu": mu, "q": q}
    if m is not None:
        out["m"] = m
    if window is not None:
        out["window"] = window
    if precision is not None:
        out["precision"] = precision
    return out


def default_battery():
    return json.loads(_core.default_battery())


def verify(cases=None, jobs=1):
    """Runs the verification; cases defaults to the shipped battery."""
    battery = default_battery() if cases is None else {"schema": 1, "cases": list(cases)}
    return json.loads(_core.verify(json.dumps(battery), jobs))


def enumerate(spec):
    return json.loads(_core.enumerate(json.dumps(spec)))


def dims(spec):
    return json.loads(_core.dims(json.dumps(spec)))


def lattice_check(spec, abar=None, iota=None, samples=4, r=0, seed=0):
    """abar: list of (tau, i) pairs, or plain integers when d = 1."""
    if abar is not None:
        abar = [(0, p) if isinstance(p, int) else tuple(p) for p in abar]
    return json.loads(_core.lattice_check(json.dumps(spec), abar, iota, samples, r, seed))


def multiplicity_check(n, fundamentals):
    return json.loads(_core.multiplicity_check(n, list(fundamentals)))
