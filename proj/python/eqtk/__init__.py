"""Exact polytope, lattice and counting experiments."""

from fractions import Fraction
import json

from . import _core
from ._core import (
    DomainError,
    Error,
    InvariantViolation,
    a_t,
    constant_c1,
    constant_c2,
    count_points,
    exterior_power,
    oscillatory_integral,
    sheared_orbit_point,
    shortest_vector,
    tensor,
    u_v,
    wedge_closure,
    xi,
)

__all__ = [
    "DomainError", "Error", "InvariantViolation", "a_t", "classify", "constant_c1", "constant_c2",
    "count_points", "exterior_power", "oscillatory_integral", "run", "sheared_orbit_point",
    "shortest_vector", "tensor", "u_v", "vertices", "volume", "wedge_closure", "xi",
]


def _frac(x):
    return Fraction(x)


def classify(dim, functionals, schedule):
    out = _core.classify(dim, functionals, schedule)
    out["w_basis"] = [[_frac(x) for x in v] for v in out["w_basis"]]
    out["u_basis"] = [[_frac(x) for x in v] for v in out["u_basis"]]
    return out


def volume(dim, constraints):
    """Exact volume of {v : normal . v >= offset} as a Fraction."""
    return _frac(_core.volume(dim, [(n, o) for n, o in constraints]))


def vertices(dim, constraints):
    return [[_frac(x) for x in v] for v in _core.vertices(dim, [(n, o) for n, o in constraints])]


def run(command, params=None, seed=None, format="json", threads=1):
    """Runs a command-line subcommand in-process and returns (exit_code, output, errors)."""
    return _core.run(command, json.dumps(params or {}), seed, format, threads)
