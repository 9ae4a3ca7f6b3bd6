"""Certified constants for sums of four prime cubes."""

from fractions import Fraction
import json

from . import _core
from ._core import (
    BoundFailure,
    DomainError,
    ReportParseError,
    module_names,
    precision,
    restricted_moments,
    set_precision,
    t_value_oracle,
    weil_audit,
    capital_R,
    congruence_audit,
    four_cube_count,
)

__version__ = _core.version


def _fraction(pair):
    return Fraction(int(pair[0]), int(pair[1]))


def _interval(d):
    return (_fraction(d["lo"]), _fraction(d["hi"]))


def t_value(d, q):
    """Exact T_d(q) as a Fraction."""
    return _fraction(_core.t_value(d, q))


def interval_op(op, a, b=0, exponent=1):
    """Outward-rounded enclosure (lo, hi) of op(a, b) with rational operands."""
    return _interval(_core.interval_op(op, str(Fraction(a)), str(Fraction(b)), str(Fraction(exponent))))


def zeta(s, terms=100000):
    return _interval(_core.zeta(str(Fraction(s)), terms))


def admissible_density():
    return _fraction(_core.admissible_density())


def _product(d):
    out = dict(d)
    out["explicit_exact"] = _fraction(d["explicit_exact"])
    for key in ("weil_segment", "tail_segment", "value"):
        out[key] = _interval(d[key])
    return out


def omega_product(plan="certified_omega", threads=0):
    return _product(_core.omega_product(plan, threads))


def singular_series(plan="certified_sigma", threads=0):
    return _product(_core.singular_series(plan, threads))


def sieve_constant_W():
    return _interval(_core.sieve_constant_W())


def triple_integral(target_width=0.005, max_boxes=50_000_000, threads=0, region="full", substituted=False):
    out = _core.triple_integral(target_width, max_boxes, threads, region, substituted)
    out["J"] = _interval(out["J"])
    return out


def run_all(skip=(), threads=0, target_width=0.005):
    """Verification report as a dict parsed from the JSON document."""
    return json.loads(_core.run_all(list(skip), threads, target_width))
