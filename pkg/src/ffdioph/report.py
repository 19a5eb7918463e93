"""JSON-compatible report trees.

Every number is written as an exact rational string ("5", "-7/10"); floats
never appear.  Dumping uses sorted keys and a fixed indent so identical input
gives byte-identical output.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from numbers import Rational

from .exceptional import CurveRecord, ExceptionalSetDescription, LambdaConstraint, PairData
from .heights import ProjectivePoint
from .hypotheses import HypothesisReport
from .logderiv import LogOneForm, UnitTuple
from .mpoly import MultiPolynomial
from .places import Place, PlaceSet
from .poly import UniPoly
from .ratfunc import RationalFunction

SCHEMA_VERSION = "1"


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _constraint(c: LambdaConstraint) -> dict:
    root = c.root_value()
    return {
        "polynomial": c.to_str("L"),
        "source": c.source,
        "multiplicity": rational_str(c.multiplicity),
        "rational": c.rational,
        "root": None if root is None else rational_str(root),
    }


def _curve(c: CurveRecord) -> dict:
    return {
        "exponents": [rational_str(e) for e in c.exponents],
        "equation": c.describe(),
        "constraint": _constraint(c.constraint),
    }


def _pair(p: PairData) -> dict:
    sub = p.substitution
    out = {
        "pair": [rational_str(e) for e in p.pair.curve_exponents],
        "a": rational_str(p.pair.a),
        "b": rational_str(p.pair.b),
        "B": sub.B.to_str(),
        "deg_T": rational_str(sub.degree_T),
        "resultant": None,
        "top_form": [_constraint(c) for c in p.top_form],
    }
    if p.resultant is not None:
        R = p.resultant
        out["resultant"] = {
            "R": [c.to_str() for c in R.R],
            "lambda_power": rational_str(R.lambda_power),
            "roots": [rational_str(r) for r in R.roots],
        }
    return out


def _exceptional(d: ExceptionalSetDescription) -> dict:
    return {
        "G": d.G.to_str(),
        "m_bound": rational_str(d.m_bound),
        "S": to_tree(d.S),
        "includes_G_zero_locus": d.includes_G_zero_locus,
        "defined_over_k": d.defined_over_k,
        "curves": [_curve(c) for c in d.curves],
        "pairs": [_pair(p) for p in d.pairs],
        "height_threshold_note": to_tree(d.height_threshold_note),
    }


def to_tree(obj):
    """Convert library values into JSON-compatible data."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Rational):
        return rational_str(obj)
    if isinstance(obj, (RationalFunction, MultiPolynomial)):
        return obj.to_str()
    if isinstance(obj, UniPoly):
        return obj.to_str("t")
    if isinstance(obj, Place):
        return str(obj)
    if isinstance(obj, PlaceSet):
        return [str(p) for p in obj]
    if isinstance(obj, ProjectivePoint):
        return [c.to_str() for c in obj.coords]
    if isinstance(obj, UnitTuple):
        return [u.to_str() for u in obj.entries]
    if isinstance(obj, LogOneForm):
        return {"exponents": [rational_str(m) for m in obj.exponents], "alpha": obj.alpha.to_str()}
    if isinstance(obj, LambdaConstraint):
        return _constraint(obj)
    if isinstance(obj, CurveRecord):
        return _curve(obj)
    if isinstance(obj, ExceptionalSetDescription):
        return _exceptional(obj)
    if isinstance(obj, HypothesisReport):
        return {
            "no_monomial_factor": obj.no_monomial_factor,
            "squarefree": obj.squarefree,
            "nonvanishing_at_coordinate_points": obj.nonvanishing_at_coordinate_points,
            "failures": list(obj.failures),
            "ok": obj.ok,
        }
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_tree(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(to_tree(k)) if not isinstance(k, str) else k: to_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_tree(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(subcommand: str, status: str, inputs: dict, result) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "status": status,
        "input": to_tree(inputs),
        "result": to_tree(result),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
