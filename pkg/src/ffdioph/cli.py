"""Command-line entry point.

A job is a JSON object (from ``--config``) overlaid with command-line flags;
flags win.  Exit status: 0 on success, 2 when an input violates a standing
hypothesis, 1 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import jsonschema

from .counting import count_gcd, count_zeros, divisor_decomposition, gcd_breakdown, weil_lambda, weil_total
from .exceptional import HypothesisError, build_exceptional_set, member
from .geometry import (
    FormSystem,
    euler_check,
    euler_reduction,
    general_position_by_specialization,
    general_position_n2,
    jacobian_form,
    transversal_n2,
)
from .heights import ProjectivePoint, height_point, poly_height
from .hypotheses import validate_hypotheses
from .logderiv import (
    LogOneForm,
    UnitTuple,
    coprime_with_du,
    d_u,
    du_height_bound,
    log_derivatives,
    split_ab,
    unit_sum_check,
)
from .parser import (
    infer_names,
    parse_form,
    parse_place,
    parse_place_set,
    parse_ratfunc,
    parse_rational,
)
from .places import PlaceSet, chi_s, enumerate_s_units, height, unit_count_bound
from .ratfunc import derive, rf
from .report import dumps, envelope
from .verifier import RamifiedCoverSpec, abc_report, gcd_conclusion_report, ramified_cover_report

SUBCOMMANDS = ("height", "count", "weil", "dlog", "units", "exceptional", "genpos", "ram", "verify")

_STR = {"type": "string"}
_STRS = {"type": "array", "items": _STR}

JOB_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "subcommand": {"enum": list(SUBCOMMANDS)},
        "S": _STRS,
        "epsilon": {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"},
        "m_bound": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "repetitions": {"type": "integer", "minimum": 1},
        "out": _STR,
        "elements": _STRS,
        "points": {"type": "array", "items": _STRS},
        "forms": _STRS,
        "f": _STR,
        "g": _STR,
        "F": _STR,
        "G": _STR,
        "truncation": {"type": "integer", "minimum": 1},
        "point": _STRS,
        "place": _STR,
        "units": _STRS,
        "factors": _STRS,
        "H": {"type": "integer", "minimum": 0},
        "log_forms": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["exponents", "alpha"],
                "properties": {"exponents": {"type": "array", "items": {"type": "integer"}}, "alpha": _STR},
            },
        },
    },
}


class InputError(ValueError):
    pass


def _require(job: dict, *keys: str):
    missing = [k for k in keys if k not in job]
    if missing:
        raise InputError(f"{job['subcommand']} needs: " + ", ".join(missing))


def _S(job: dict) -> PlaceSet:
    return parse_place_set(job.get("S", []))


def _epsilon(job: dict):
    eps = parse_rational(job.get("epsilon", "1/10"))
    if eps <= 0:
        raise InputError("epsilon must be positive")
    return eps


def _xnames(count: int, start: int = 0) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(start, start + count))


def _point(texts: Sequence[str]) -> ProjectivePoint:
    return ProjectivePoint([parse_ratfunc(s) for s in texts])


def _units(job: dict, S: PlaceSet) -> UnitTuple:
    return UnitTuple([parse_ratfunc(s) for s in job["units"]], S)


# -- subcommands: each returns (status, result)


def run_height(job):
    out = {}
    if "elements" in job:
        out["elements"] = [{"value": parse_ratfunc(s), "height": height(parse_ratfunc(s))} for s in job["elements"]]
    if "points" in job:
        out["points"] = [{"point": (x := _point(p)), "height": height_point(x)} for p in job["points"]]
    if "forms" in job:
        names = infer_names(job["forms"])
        rows = []
        for s in job["forms"]:
            F = parse_form(s, names)
            h, vh = poly_height(F)
            rows.append({"form": F, "h": h, "relevant_height": vh})
        out["forms"] = rows
    if not out:
        raise InputError("height needs elements, points or forms")
    return "ok", out


def run_count(job):
    _require(job, "f")
    S = _S(job)
    f = parse_ratfunc(job["f"])
    m = job.get("truncation", 1)
    full = count_zeros(f, S)
    cut = count_zeros(f, S, m)
    out = {
        "f": f,
        "truncation": m,
        "N": full.total,
        "N_truncated": cut.total,
        "breakdown": full.contributions,
        "truncated_breakdown": cut.contributions,
    }
    if "g" in job:
        g = parse_ratfunc(job["g"])
        n, h = count_gcd(f, g, S)
        out["gcd"] = {"g": g, "n_gcd": n, "h_gcd": h, "breakdown": gcd_breakdown(f, g, S).contributions}
    return "ok", out


def run_weil(job):
    _require(job, "F", "point")
    S = _S(job)
    x = _point(job["point"])
    F = parse_form(job["F"], _xnames(len(x)))
    dec = divisor_decomposition(F, x, S, job.get("truncation"))
    out = {
        "F": F,
        "point": x,
        "proximity": dec.proximity,
        "counting": dec.counting,
        "truncated_counting": dec.truncated_counting,
        "lambdas": dec.lambdas,
        "total": dec.total,
        "full_sum": weil_total(F, x),
        # lambdas cover every place where they are nonzero, not only S
        "full_sum_identity": sum(p.degree * v for p, v in dec.lambdas.items()) == weil_total(F, x),
    }
    if "place" in job:
        p = parse_place(job["place"])
        out["lambda_at_place"] = {"place": p, "lambda": weil_lambda(F, x, p)}
    return "ok", out


def run_dlog(job):
    S = _S(job)
    out = {}
    if "elements" in job:
        out["derivatives"] = [{"f": (f := parse_ratfunc(s)), "derivative": derive(f)} for s in job["elements"]]
    if "F" in job:
        _require(job, "units")
        u = _units(job, S)
        F = parse_form(job["F"], _xnames(len(u)))
        D = d_u(F, u)
        value = rf(F.evaluate(list(u.entries)))
        out["d_u"] = {
            "F": F,
            "units": u,
            "log_derivatives": log_derivatives(u),
            "D_u_F": D,
            "identity": rf(D.evaluate(list(u.entries))) == derive(value),
            "height_bound": du_height_bound(F, S),
            "relevant_height_D": poly_height(D)[1] if D else 0,
            "coprime_with_D": coprime_with_du(F, u),
        }
        if "factors" in job:
            factors = [parse_form(s, _xnames(len(u))) for s in job["factors"]]
            res = split_ab(F, factors, u, repetitions=job.get("repetitions", 8), seed=job.get("seed", 0))
            out["split"] = {
                "A": res.A,
                "B": res.B,
                "a_factors": res.a_factors,
                "b_factors": res.b_factors,
                "B_at_u": rf(res.B.evaluate(list(u.entries))),
                "certificate": res.certificate,
            }
    if not out:
        raise InputError("dlog needs elements, or F with units")
    return "ok", out


def run_units(job):
    S = _S(job)
    out = {"S": S, "chi_S": chi_s(S)}
    if "H" in job:
        H = job["H"]
        units = enumerate_s_units(S, H)
        out["enumeration"] = {"H": H, "count": len(units), "bound": unit_count_bound(S, H), "units": units}
    if "units" in job:
        out["unit_sum"] = unit_sum_check([parse_ratfunc(s) for s in job["units"]], S)
    if len(out) == 2:
        raise InputError("units needs H or units")
    return "ok", out


def run_exceptional(job):
    _require(job, "G")
    S = _S(job)
    G = parse_form(job["G"], infer_names([job["G"]]))
    m_bound = job.get("m_bound", 2 * G.degree)
    try:
        desc = build_exceptional_set(G, m_bound, S)
    except HypothesisError as e:
        return "hypothesis_failure", {"G": G, "reason": str(e)}
    out = {"description": desc}
    points = list(job.get("points", [])) + ([job["point"]] if "point" in job else [])
    if points:
        rows = []
        for p in points:
            mem = member([parse_ratfunc(s) for s in p], desc)
            rows.append({"point": p, "member": mem.member, "on_divisor": mem.on_divisor,
                         "witness": mem.witness.describe() if mem.witness else None})
        out["membership"] = rows
    return "ok", out


def run_genpos(job):
    _require(job, "forms")
    names = infer_names(job["forms"])
    forms = [parse_form(s, names) for s in job["forms"]]
    out = {"forms": forms}
    if len(names) == 3:
        out["general_position"] = general_position_n2(forms)
        out["transversal"] = transversal_n2(forms)
    if "place" in job:
        cert = general_position_by_specialization(forms, parse_place(job["place"]))
        out["specialization"] = cert
    return "ok", out


def run_ram(job):
    _require(job, "forms")
    names = infer_names(job["forms"])
    forms = [parse_form(s, names) for s in job["forms"]]
    system = FormSystem(forms)
    eul = euler_reduction(system)
    out = {
        "forms": forms,
        "b": system.b,
        "jacobian": jacobian_form(system),
        "jacobian_exponentiated": jacobian_form(system, exponentiated=True),
        "euler": [euler_check(F) for F in forms],
        "euler_reduction": {"holds": eul.holds, "sign": eul.sign},
    }
    if "point" in job:
        try:
            spec = RamifiedCoverSpec(system, _S(job), parse_place(job.get("place", "t")))
            out["cover"] = ramified_cover_report(spec, _point(job["point"]), _epsilon(job))
        except HypothesisError as e:
            out["reason"] = str(e)
            return "hypothesis_failure", out
    return "ok", out


def run_verify(job):
    _require(job, "G")
    S = _S(job)
    seed, reps = job.get("seed", 0), job.get("repetitions", 8)
    if "F" in job:
        _require(job, "units")
        u = _units(job, S)
        names = _xnames(len(u), start=1)
        F, G = parse_form(job["F"], names), parse_form(job["G"], names)
        return "ok", {"gcd": gcd_conclusion_report(F, G, u, S, _epsilon(job), job.get("m_bound"))}
    if "units" in job:
        u = _units(job, S)
        G = parse_form(job["G"], _xnames(len(u) + 1))
    else:
        u = None
        G = parse_form(job["G"], infer_names([job["G"]]))
    hyp = validate_hypotheses(G, reps, seed)
    out = {"G": G, "hypotheses": hyp}
    if u is not None:
        forms = [LogOneForm(w["exponents"], parse_ratfunc(w["alpha"])) for w in job.get("log_forms", [])]
        rep = abc_report(G, u, S, _epsilon(job), log_forms=forms, m_bound=job.get("m_bound"),
                         repetitions=reps, seed=seed)
        out["abc"] = rep
    return ("ok" if hyp.ok else "hypothesis_failure"), out


RUNNERS = {
    "height": run_height,
    "count": run_count,
    "weil": run_weil,
    "dlog": run_dlog,
    "units": run_units,
    "exceptional": run_exceptional,
    "genpos": run_genpos,
    "ram": run_ram,
    "verify": run_verify,
}


# keys each subcommand reads; anything else is an input error rather than
# being silently ignored
ACCEPTED = {
    "height": {"elements", "forms", "points"},
    "count": {"f", "g", "truncation", "S"},
    "weil": {"F", "point", "place", "truncation", "S"},
    "dlog": {"F", "units", "factors", "elements", "seed", "repetitions", "S"},
    "units": {"H", "units", "S"},
    "exceptional": {"G", "m_bound", "point", "points", "S"},
    "genpos": {"forms", "place"},
    "ram": {"forms", "point", "place", "epsilon", "S"},
    "verify": {"F", "G", "units", "log_forms", "m_bound", "seed", "repetitions", "epsilon", "S"},
}


def run(job: dict) -> tuple[int, dict]:
    """Validate and execute a job; returns (exit code, report document)."""
    jsonschema.validate(job, JOB_SCHEMA)
    if "subcommand" not in job:
        raise InputError("no subcommand given")
    unused = sorted(set(job) - ACCEPTED[job["subcommand"]] - {"subcommand", "out"})
    if unused:
        raise InputError(f"{job['subcommand']} does not use: " + ", ".join(unused))
    status, result = RUNNERS[job["subcommand"]](job)
    inputs = {k: v for k, v in job.items() if k not in ("out", "subcommand")}
    return (0 if status == "ok" else 2), envelope(job["subcommand"], status, inputs, result)


def _csv(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors (exit 1); argparse would use 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="ffdioph", description="Exact Diophantine computations over Q(t).")
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--config", metavar="PATH", help="JSON job file; flags override its entries")
    ap.add_argument("--epsilon", metavar="P/Q")
    ap.add_argument("--s", metavar="PLACE[,PLACE...]", help='places such as "t", "t^2+1" or "inf"')
    ap.add_argument("--m-bound", type=int, metavar="N")
    ap.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    ap.add_argument("--seed", type=int, metavar="N")
    ap.add_argument("--repetitions", type=int, metavar="N")
    g = ap.add_argument_group("inputs")
    g.add_argument("--G", dest="G", metavar="EXPR")
    g.add_argument("--F", dest="F", metavar="EXPR")
    g.add_argument("--f", dest="f", metavar="EXPR")
    g.add_argument("--g", dest="g", metavar="EXPR")
    g.add_argument("--form", dest="forms", action="append", metavar="EXPR")
    g.add_argument("--factor", dest="factors", action="append", metavar="EXPR")
    g.add_argument("--element", dest="elements", action="append", metavar="EXPR")
    g.add_argument("--point", metavar="C0,C1,...")
    g.add_argument("--units", metavar="U1,U2,...")
    g.add_argument("--place", metavar="PLACE")
    g.add_argument("--truncation", type=int)
    g.add_argument("--H", dest="H", type=int)
    return ap


def job_from_args(args: argparse.Namespace) -> dict:
    job: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            job = json.load(fh)
        if not isinstance(job, dict):
            raise InputError("config must be a JSON object")
        if job.get("subcommand", args.subcommand) != args.subcommand:
            raise InputError(f"config is for {job['subcommand']!r}, not {args.subcommand!r}")
    job["subcommand"] = args.subcommand
    flags = {
        "epsilon": args.epsilon,
        "S": _csv(args.s) if args.s is not None else None,
        "m_bound": args.m_bound,
        "out": args.out,
        "seed": args.seed,
        "repetitions": args.repetitions,
        "G": args.G,
        "F": args.F,
        "f": args.f,
        "g": args.g,
        "forms": args.forms,
        "factors": args.factors,
        "elements": args.elements,
        "point": _csv(args.point) if args.point else None,
        "units": _csv(args.units) if args.units else None,
        "place": args.place,
        "truncation": args.truncation,
        "H": args.H,
    }
    job.update({k: v for k, v in flags.items() if v is not None})
    return job


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
        code, doc = run(job)
    except jsonschema.ValidationError as e:
        print(f"ffdioph: invalid job: {e.message}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, ZeroDivisionError, OSError) as e:
        print(f"ffdioph: {e}", file=sys.stderr)
        return 1
    text = dumps(doc)
    if job.get("out"):
        with open(job["out"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


__all__ = ["JOB_SCHEMA", "build_parser", "job_from_args", "main", "run"]
