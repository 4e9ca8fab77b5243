"""Scenario-driven command line front end.

A scenario is a JSON object ``{"command": ..., "seed": ..., "params": {...}}``
(parameters may also sit at the top level).  Exit codes: 0 when every check
passes, 1 when a check fails or a mathematical precondition is violated,
2 on malformed input or IO errors.  All randomness comes from
``numpy.random.default_rng(seed)`` (PCG64).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import jsonschema
import numpy as np

from . import attainment, certificates, gallery, invariance, perturbation, separation
from .errors import InvBanachError
from .norms import NormSpec, dual_norm, is_norm_invariant, norm, unit_ball_vertices
from .operators import Operator
from .perm_group import (
    Permutation,
    PermutationGroup,
    block_group,
    cyclic_group,
    generate_group,
    symmetric_group,
    transposition,
    trivial_group,
)

RNG_NAME = "numpy.random.default_rng (PCG64)"
DEFAULT_TOL = 1e-9
COMMANDS = ("orbits", "symmetrize", "separate", "certify-alpha", "certify-beta", "perturb", "slice", "gallery",
            "auxlemma")

# -- schemas ---------------------------------------------------------------------

_VEC = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_MAT = {"type": "array", "items": _VEC, "minItems": 1}
_SPEC = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["L1", "L2", "Lp", "Linf", "LorentzD", "LorentzPredual", "Xw", "StrictC0"]},
        "w": _VEC,
        "p": {"type": "number"},
        "theta": {"type": "number"},
    },
    "required": ["kind"],
    "additionalProperties": False,
}
_GROUP = {
    "oneOf": [
        {"enum": ["trivial", "symmetric", "cyclic", "swap"]},
        {
            "type": "object",
            "properties": {
                "degree": {"type": "integer", "minimum": 1},
                "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "named": {"enum": ["trivial", "symmetric", "cyclic", "swap"]},
                "blocks": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 1}}},
                "kind": {"enum": ["symmetric", "cyclic"]},
            },
            "additionalProperties": False,
        },
    ]
}
_OPERATOR = {
    "type": "object",
    "properties": {
        "matrix": _MAT,
        "random": {
            "type": "object",
            "properties": {"m": {"type": "integer", "minimum": 1}, "n": {"type": "integer", "minimum": 1}},
            "required": ["m", "n"],
            "additionalProperties": False,
        },
        "symmetrize": {"type": "boolean"},
        "domain": _SPEC,
        "codomain": _SPEC,
    },
    "required": ["domain", "codomain"],
    "oneOf": [{"required": ["matrix"]}, {"required": ["random"]}],
    "additionalProperties": False,
}
_BODY = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"generators": _MAT, "absolutely_convex": {"type": "boolean"}},
            "required": ["generators"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"ball": _SPEC, "dim": {"type": "integer", "minimum": 1}},
            "required": ["ball", "dim"],
            "additionalProperties": False,
        },
    ]
}
_CERT = {"type": "object", "required": ["pairs", "rho", "spec", "group"]}
_N = {"type": "integer", "minimum": 1}
_POS = {"type": "number", "exclusiveMinimum": 0}

PARAM_SCHEMAS: dict[str, dict] = {
    "orbits": {"properties": {"group": _GROUP, "n": _N}, "required": ["group"]},
    "symmetrize": {
        "properties": {"group": _GROUP, "n": _N, "x": _VEC, "f": _VEC, "operator": _OPERATOR, "spec": _SPEC},
        "required": ["group"],
        "anyOf": [{"required": ["x"]}, {"required": ["f"]}, {"required": ["operator"]}],
    },
    "separate": {
        "properties": {"body": _BODY, "x0": _VEC, "group": _GROUP, "n": _N, "delta": {"type": "number", "minimum": 0},
                       "ambient": _SPEC},
        "required": ["body", "x0"],
    },
    "certify-alpha": {"properties": {"group": _GROUP, "n": _N, "rho": {}, "certificate": _CERT},
                      "anyOf": [{"required": ["group"]}, {"required": ["certificate"]}]},
    "certify-beta": {"properties": {"group": _GROUP, "n": _N, "certificate": _CERT, "samples": _N},
                     "anyOf": [{"required": ["group"]}, {"required": ["certificate"]}]},
    "perturb": {
        "properties": {
            "scheme": {"enum": ["lindenstrauss", "quasi-alpha", "beta"]},
            "operator": _OPERATOR,
            "group": _GROUP,
            "n": _N,
            "eps": {"type": "number", "minimum": 0},
            "delta": {"type": "number", "minimum": 0},
            "K": _N,
            "min_steps": {"type": "integer", "minimum": 0},
            "certificate": _CERT,
            "codomain_group": _GROUP,
        },
        "required": ["scheme", "operator", "group", "eps"],
    },
    "slice": {
        "properties": {"operator": _OPERATOR, "B": _MAT, "ball": _SPEC, "group": _GROUP, "n": _N, "eta": _POS,
                       "eps": _POS},
        "required": ["operator", "group"],
        "oneOf": [{"required": ["B"]}, {"required": ["ball"]}],
    },
    "gallery": {
        "properties": {
            "construction": {"enum": ["c0", "dstar", "xw"]},
            "group": _GROUP,
            "n": _N,
            "w": _VEC,
            "p": {"type": "number", "exclusiveMinimum": 1},
            "m": _N,
            "theta": _POS,
            "normalized": {"type": "boolean"},
            "C": _N,
            "cutoff": {"type": "integer", "minimum": 0},
            "trials": {"type": "integer", "minimum": 0},
            "jensen_samples": {"type": "integer", "minimum": 0},
        },
        "required": ["construction", "group", "cutoff"],
    },
    "auxlemma": {"properties": {"w": _VEC, "group": _GROUP, "n": _N}, "required": ["w", "group"]},
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2 ** 64 - 1},
        "params": {"type": "object"},
        "output": {
            "type": "object",
            "properties": {"path": {"type": "string"}, "format": {"enum": ["json", "csv"]}},
            "additionalProperties": False,
        },
        "name": {"type": "string"},
        "description": {"type": "string"},
    },
    "required": ["command"],
}


class ScenarioError(Exception):
    """Malformed scenario; carries JSON-pointer paths of the offending fields."""

    def __init__(self, errors: list[dict]):
        super().__init__("; ".join(f"{e['path']}: {e['message']}" for e in errors))
        self.errors = errors


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path)


def _validate(instance, schema, prefix=()) -> None:
    v = jsonschema.Draft202012Validator(schema)
    errs = sorted(v.iter_errors(instance), key=lambda e: list(map(str, e.absolute_path)))
    if errs:
        raise ScenarioError([{"path": _pointer(list(prefix) + list(e.absolute_path)), "message": e.message}
                             for e in errs])


def split_scenario(scn: dict) -> tuple[str, dict]:
    _validate(scn, SCENARIO_SCHEMA)
    cmd = scn["command"]
    if "params" in scn:
        params = scn["params"]
        prefix = ("params",)
    else:
        params = {k: v for k, v in scn.items() if k not in SCENARIO_SCHEMA["properties"]}
        prefix = ()
    schema = {"type": "object", "additionalProperties": False, **PARAM_SCHEMAS[cmd]}
    _validate(params, schema, prefix)
    return cmd, params


# -- parameter decoding ----------------------------------------------------------

def _named_group(name: str, n: int) -> PermutationGroup:
    if name == "trivial":
        return trivial_group(n)
    if name == "symmetric":
        return symmetric_group(n)
    if name == "cyclic":
        return cyclic_group(n)
    if name == "swap":
        return generate_group(n, [transposition(n, 1, 2)] if n >= 2 else [])
    raise ScenarioError([{"path": "/group", "message": f"unknown group {name!r}"}])


def _degree(params: dict, key: str, obj) -> int:
    n = obj.get("degree") if isinstance(obj, dict) else None
    n = n if n is not None else params.get("n")
    if n is None:
        raise ScenarioError([{"path": f"/{key}", "message": "group degree missing (give 'degree' or 'n')"}])
    return int(n)


def group_param(params: dict, key: str = "group", default_degree: int | None = None) -> PermutationGroup:
    obj = params[key]
    if isinstance(obj, str):
        n = params.get("n", default_degree)
        if n is None:
            raise ScenarioError([{"path": f"/{key}", "message": "group degree missing (give 'n')"}])
        return _named_group(obj, int(n))
    n = obj.get("degree", params.get("n", default_degree))
    if n is None:
        raise ScenarioError([{"path": f"/{key}", "message": "group degree missing"}])
    n = int(n)
    if "named" in obj:
        return _named_group(obj["named"], n)
    if "blocks" in obj:
        return block_group(n, obj["blocks"], obj.get("kind", "symmetric"))
    return generate_group(n, [Permutation.from_one_based(g) for g in obj.get("generators", [])])


def operator_param(obj: dict, rng: np.random.Generator, G: PermutationGroup | None = None) -> Operator:
    dom, cod = NormSpec.from_json(obj["domain"]), NormSpec.from_json(obj["codomain"])
    if "matrix" in obj:
        M = np.asarray(obj["matrix"], dtype=float)
    else:
        M = rng.standard_normal((obj["random"]["m"], obj["random"]["n"]))
    T = Operator(M, dom, cod)
    if obj.get("symmetrize") and G is not None:
        T = invariance.symmetrize_operator(T, G)
    return T


def body_param(obj: dict) -> separation.ConvexBody:
    if "ball" in obj:
        spec = NormSpec.from_json(obj["ball"])
        return separation.ConvexBody(unit_ball_vertices(spec, obj["dim"]), True)
    return separation.ConvexBody(np.asarray(obj["generators"], dtype=float), bool(obj.get("absolutely_convex", False)))


# -- commands --------------------------------------------------------------------

class Outcome:
    def __init__(self):
        self.checks: dict[str, bool] = {}
        self.result: dict[str, Any] = {}
        self.rows: list[dict] = []

    def check(self, name: str, ok) -> None:
        self.checks[name] = bool(ok)


def cmd_orbits(params, rng, tol) -> Outcome:
    G = group_param(params)
    out = Outcome()
    part = G.orbit_partition
    out.result = {"degree": G.degree, "order": len(G), "blocks": part.to_json(), "sizes": list(part.sizes)}
    out.rows = [{"block": k + 1, "size": len(b), "members": " ".join(str(i + 1) for i in b)}
                for k, b in enumerate(part.blocks)]
    out.check("partition_covers", sorted(i for b in part.blocks for i in b) == list(range(G.degree)))
    return out


def cmd_symmetrize(params, rng, tol) -> Outcome:
    G = group_param(params)
    out = Outcome()
    spec = NormSpec.from_json(params["spec"]) if "spec" in params else None
    if "x" in params:
        x = np.asarray(params["x"], dtype=float)
        xb = invariance.symmetrize_point(x, G)
        out.result["x_bar"] = xb
        out.check("x_invariant", invariance.is_invariant_point(xb, G))
        out.check("x_idempotent", np.abs(invariance.symmetrize_point(xb, G) - xb).max() <= 1e-12)
        if spec is not None and is_norm_invariant(spec, G)[0]:
            out.result["norm_x"], out.result["norm_x_bar"] = float(norm(x, spec)), float(norm(xb, spec))
            out.check("x_contraction", out.result["norm_x_bar"] <= out.result["norm_x"] + tol)
    if "f" in params:
        f = np.asarray(params["f"], dtype=float)
        fb = invariance.symmetrize_functional(f, G)
        out.result["f_bar"] = fb
        out.check("f_invariant", invariance.is_invariant_functional(fb, G))
        out.check("f_idempotent", np.abs(invariance.symmetrize_functional(fb, G) - fb).max() <= 1e-12)
    if "operator" in params:
        T = operator_param(params["operator"], rng)
        Tb = invariance.symmetrize_operator(T, G)
        out.result["T_bar"] = Tb.matrix
        out.check("T_invariant", invariance.is_invariant_operator(Tb, G))
        out.check("T_idempotent", np.abs(invariance.symmetrize_operator(Tb, G).matrix - Tb.matrix).max() <= 1e-12)
        if is_norm_invariant(T.domain, G)[0]:
            try:
                a, b = attainment.operator_norm(T).operator_norm, attainment.operator_norm(Tb).operator_norm
            except InvBanachError:
                a = b = None
            if a is not None:
                out.result["norm_T"], out.result["norm_T_bar"] = a, b
                out.check("T_contraction", b <= a + tol)
    out.rows = [{"check": k, "passed": v} for k, v in out.checks.items()]
    return out


def cmd_separate(params, rng, tol) -> Outcome:
    C = body_param(params["body"])
    x0 = np.asarray(params["x0"], dtype=float)
    ambient = NormSpec.from_json(params["ambient"]) if "ambient" in params else None
    out = Outcome()
    if "group" not in params:
        res = separation.separate(C, x0)
        mode = "classical"
    else:
        G = group_param(params, default_degree=C.dim)
        if "delta" in params:
            res = separation.separate_with_margin(C, G, x0, params["delta"], ambient)
            mode = "margin"
            dn = float(dual_norm(res.functional, ambient or NormSpec("L2")))
            out.check("dual_norm_one", abs(dn - 1) <= tol)
            out.check("margin_exceeds_delta", res.margin > params["delta"])
        else:
            res = separation.separate_invariant(C, G, x0, ambient)
            mode = "invariant"
        out.check("functional_invariant", invariance.is_invariant_functional(res.functional, G))
    out.check("positive_margin", res.margin > 0)
    out.result = {"mode": mode, **res.to_json()}
    out.rows = [{"mode": mode, "margin": res.margin, "sup_over_C": res.sup_over_C, "value_at_x0": res.value_at_x0,
                 "functional": " ".join(repr(float(v)) for v in res.functional)}]
    return out


def _alpha_cert(params) -> certificates.AlphaCertificate:
    if "certificate" in params:
        return certificates.AlphaCertificate.from_json(params["certificate"])
    G = group_param(params)
    cert = certificates.build_alpha_ell1(G, G.degree)
    if "rho" in params:
        cert = certificates.alpha_with_rho(cert, params["rho"])
    return cert


def cmd_certify_alpha(params, rng, tol) -> Outcome:
    cert = _alpha_cert(params)
    out = Outcome()
    quasi = isinstance(cert.rho, tuple)
    rep_q = certificates.verify_quasi_alpha(cert)
    out.result = {"certificate": cert.to_json(), "rho": cert.to_json()["rho"], "quasi_alpha": rep_q.to_json()}
    if not quasi:
        rep = certificates.verify_alpha(cert)
        out.result["alpha"] = rep.to_json()
        out.check("alpha", rep.passed)
        out.rows = [{"property": "alpha", "condition": k, "passed": v} for k, v in rep.conditions.items()]
    out.check("quasi_alpha", rep_q.passed)
    out.rows += [{"property": "quasi-alpha", "condition": k, "passed": v} for k, v in rep_q.conditions.items()]
    return out


def cmd_certify_beta(params, rng, tol) -> Outcome:
    if "certificate" in params:
        cert = certificates.BetaCertificate.from_json(params["certificate"])
    else:
        cert = certificates.dualize_alpha(_alpha_cert(params))
    seed = int(rng.integers(0, 2 ** 63))
    rep = certificates.verify_beta(cert, params.get("samples", 1000), seed)
    out = Outcome()
    out.result = {"certificate": cert.to_json(), "beta": rep.to_json()}
    out.check("beta", rep.passed)
    out.rows = [{"property": "beta", "condition": k, "passed": v} for k, v in rep.conditions.items()]
    return out


def cmd_perturb(params, rng, tol) -> Outcome:
    G = group_param(params)
    T = operator_param(params["operator"], rng, G)
    eps = float(params["eps"])
    out = Outcome()
    scheme = params["scheme"]
    if scheme == "lindenstrauss":
        Tinf, trace = perturbation.lindenstrauss_iterate(T, G, eps, params.get("K", 8), tol=max(tol, 1e-7),
                                                         min_steps=params.get("min_steps", 0))
        nT = attainment.operator_norm(T).operator_norm
        drift = attainment.operator_norm(Tinf.with_matrix(Tinf.matrix - T.matrix)).operator_norm
        out.result = {"T": T.matrix, "T_inf": Tinf.matrix, "trace": [r.to_json() for r in trace],
                      "drift": drift, "norm_T": nT}
        out.check("invariant", invariance.is_invariant_operator(Tinf, G))
        out.check("drift_below_eps", drift < eps * nT or nT == 0)
        out.check("attained", attainment.operator_norm(Tinf).defect <= max(tol, 1e-7))
        out.rows = [r.to_json() for r in trace]
        return out
    delta = float(params.get("delta", 0.0))
    if scheme == "quasi-alpha":
        cert = (certificates.AlphaCertificate.from_json(params["certificate"]) if "certificate" in params
                else certificates.build_alpha_ell1(G, G.degree))
        res = perturbation.quasi_alpha_perturb(T, cert, G, eps, delta)
        c = res.checks
        if res.lambda0 is not None:
            out.check("lower_bound", c["norm_S_x0"] >= c["lower"] - tol)
            out.check("others_bounded", c["max_other"] <= c["upper_other"] + tol)
            out.check("distance", c["distance"] <= c["distance_bound"] + tol)
    else:
        if "certificate" in params:
            cert = certificates.BetaCertificate.from_json(params["certificate"])
        else:
            H = (group_param(params, "codomain_group", T.m) if "codomain_group" in params else trivial_group(T.m))
            cert = certificates.dualize_alpha(certificates.build_alpha_ell1(H, T.m))
        res = perturbation.beta_perturb(T, cert, G, eps, delta)
        c = res.checks
        if res.lambda0 is not None:
            out.check("distance", c["distance"] <= c["distance_bound"] + tol)
            out.check("attained", c["defect"] <= 1e-7)
    out.check("invariant", invariance.is_invariant_operator(res.S, G))
    out.result = {"T": T.matrix, **res.to_json()}
    out.rows = [{"check": k, "value": v} for k, v in res.checks.items()]
    return out


def cmd_slice(params, rng, tol) -> Outcome:
    G = group_param(params)
    T = operator_param(params["operator"], rng, G)
    if "B" in params:
        B = np.asarray(params["B"], dtype=float)
    else:
        V = unit_ball_vertices(NormSpec.from_json(params["ball"]), T.n)
        B = np.vstack([V, -V])
    out = Outcome()
    sup_B = attainment.sup_on_set(T, B)
    eta = params.get("eta", sup_B / 2 if sup_B > 0 else 0.5)
    S = attainment.slice(T, B, G, eta)
    a = attainment.in_A_eps(T, B, G, params.get("eps", 0.1))
    e = attainment.absolutely_exposing_check(T, B, G)
    out.result = {"slice": S.to_json(), "in_A_eps": a.to_json(), "exposing": e.to_json()}
    out.check("slice_members_valid", bool(np.all(S.values > sup_B - eta)))
    out.rows = [{"eta": S.eta, "slice_size": len(S), "sup_on_B": sup_B, "in_A_eps": a.member,
                 "exposing": e.exposing}]
    return out


def cmd_gallery(params, rng, tol) -> Outcome:
    G = group_param(params)
    kind = params["construction"]
    if kind == "c0":
        cx = gallery.build_c0_counterexample(G, params.get("theta", 0.1), params.get("normalized", True))
    elif kind == "dstar":
        cx = gallery.build_dstar_counterexample(G, params["w"], params.get("p", 2.0), params.get("C"))
    else:
        cx = gallery.build_xw_counterexample(G, params["w"], params.get("m"), params.get("C"))
    seed = int(rng.integers(0, 2 ** 63))
    rep = gallery.distance_to_truncated(cx, params["cutoff"], params.get("trials", 1000), seed)
    out = Outcome()
    out.result = {"counterexample": cx.to_json(), "truncation": rep.to_json()}
    out.check("invariant", invariance.is_invariant_operator(cx.operator, G))
    out.check("certified_bound", rep.certified)
    out.check("empirical_min", rep.empirical_min is None or rep.empirical_min >= 1 - 1e-9)
    if kind == "dstar" and params.get("jensen_samples", 10_000) > 0:
        j = gallery.jensen_check(cx, params.get("jensen_samples", 10_000), int(rng.integers(0, 2 ** 63)))
        out.result["jensen"] = j.to_json()
        out.check("jensen", j.violations == 0)
    out.rows = [rep.csv_row()]
    return out


def cmd_auxlemma(params, rng, tol) -> Outcome:
    w = params["w"]
    G = group_param(params, default_degree=len(w))
    wit = gallery.auxlemma_witness(w, G)
    out = Outcome()
    out.result = wit.to_json()
    out.check("strict_gap", wit.gap > 1e-12)
    out.rows = [{"construction": wit.construction, "norm_x": wit.norm_x, "norm_gx": wit.norm_gx, "gap": wit.gap,
                 "x": " ".join(repr(float(v)) for v in wit.x), "g": " ".join(map(str, wit.g.to_json()))}]
    return out


HANDLERS: dict[str, Callable] = {
    "orbits": cmd_orbits,
    "symmetrize": cmd_symmetrize,
    "separate": cmd_separate,
    "certify-alpha": cmd_certify_alpha,
    "certify-beta": cmd_certify_beta,
    "perturb": cmd_perturb,
    "slice": cmd_slice,
    "gallery": cmd_gallery,
    "auxlemma": cmd_auxlemma,
}


# -- running and emitting --------------------------------------------------------

def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(u) for k, u in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        f = float(v)
        if math.isnan(f):
            return "nan"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    return v


def run_scenario(scn: dict, seed: int | None = None, tol: float | None = None) -> tuple[int, dict, list[dict]]:
    """Run one scenario; returns (exit code, JSON report, CSV rows)."""
    try:
        cmd, params = split_scenario(scn)
    except ScenarioError as e:
        return 2, {"status": "error", "error": {"type": "SchemaError", "message": str(e), "paths": e.errors}}, []
    seed = int(scn.get("seed", 0)) if seed is None else int(seed)
    tol = DEFAULT_TOL if tol is None else float(tol)
    report: dict[str, Any] = {"command": cmd, "seed": seed, "rng": RNG_NAME, "tol": tol, "params": params}
    rng = np.random.default_rng(seed)
    try:
        out = HANDLERS[cmd](params, rng, tol)
    except ScenarioError as e:
        report.update(status="error", error={"type": "SchemaError", "message": str(e), "paths": e.errors})
        return 2, _jsonable(report), []
    except InvBanachError as e:
        code = 2 if e.input_error else 1
        report.update(status="error" if code == 2 else "fail", error={"type": type(e).__name__, "message": str(e)})
        return code, _jsonable(report), [{"status": report["status"], "error": type(e).__name__, "message": str(e)}]
    failed = [k for k, v in out.checks.items() if not v]
    report.update(status="fail" if failed else "pass", checks=out.checks, result=out.result)
    if failed:
        report["failures"] = failed
    return (1 if failed else 0), _jsonable(report), _jsonable(out.rows)


def dumps_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def dumps_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        cols = list(rows[0].keys())
        for r in rows[1:]:
            cols += [c for c in r if c not in cols]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


@dataclass(frozen=True)
class RunConfig:
    """Command-line overrides; None defers to the scenario file."""

    scenario: str
    seed: int | None = None
    out: str | None = None
    format: str | None = None
    tol: float | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(args.scenario, args.seed, args.out, args.format, args.tol)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invbanach", description="Run a group-invariance scenario from a JSON file.")
    p.add_argument("--scenario", required=True, help="path to the scenario JSON file ('-' for stdin)")
    p.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed (overrides the scenario)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="output format (default json)")
    p.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    return p


def main(argv: list[str] | None = None) -> int:
    args = RunConfig.from_args(build_parser().parse_args(argv))
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print(json.dumps({"status": "error", "error": {"type": "SchemaError", "message": "seed must be a u64"}}),
              file=sys.stderr)
        return 2
    try:
        text = sys.stdin.read() if args.scenario == "-" else Path(args.scenario).read_text()
        scn = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        print(json.dumps({"status": "error", "error": {"type": type(e).__name__, "message": str(e)}}), file=sys.stderr)
        return 2
    code, report, rows = run_scenario(scn if isinstance(scn, dict) else {"command": None}, args.seed, args.tol)
    output = scn.get("output", {}) if isinstance(scn, dict) else {}
    fmt = args.format or output.get("format", "json")
    path = args.out or output.get("path")
    text = dumps_csv(rows) if fmt == "csv" and code != 2 else dumps_json(report)
    try:
        if path:
            Path(path).write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as e:
        print(json.dumps({"status": "error", "error": {"type": type(e).__name__, "message": str(e)}}), file=sys.stderr)
        return 2
    if code != 0 and path:
        print(json.dumps({"status": report.get("status"), "error": report.get("error"),
                          "failures": report.get("failures")}, sort_keys=True), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
