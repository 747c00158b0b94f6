"""``kaehler`` command line.

Exit codes: 0 when every check passed, 1 when a mathematical check failed,
2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import formats
from .core import KINDS, Structure, first_nonzero, is_curvature_tensor, tensor_ip
from .csc import corrected_metric, kaehler_form_d_series, solve_csc
from .decomposition import tv_project_closed_form, tv_project_gram
from .engine import curvature_at, kaehler_form_d_at, parse_point, scalar_curvature_at
from .errors import (
    BadDimension,
    BadThetaSymmetry,
    BianchiViolation,
    FormatError,
    KaehlerError,
    SymmetryConflict,
    UnknownFixture,
    WrongKind,
)
from .fixtures import COORDINATES_R6, NAMES, fixture
from .identities import check_bianchi, check_gray, check_kaehler, contractions, random_model
from .realization import L, PolynomialMetric, apply_K, in_kernel, metric_from_theta, realize

INPUT_ERRORS = (
    FormatError,
    BadDimension,
    BadThetaSymmetry,
    BianchiViolation,
    SymmetryConflict,
    UnknownFixture,
    WrongKind,
    ValueError,
)

R = formats.Q


class Report:
    def __init__(self, command: str, **inputs):
        self.command = command
        self.inputs = {k: v for k, v in inputs.items() if v is not None}
        self.checks: list[dict] = []
        self.values: dict = {}
        self.outputs: list[str] = []
        self.result = None

    def check(self, name: str, holds: bool, witness=None) -> None:
        entry = {"name": name, "holds": bool(holds)}
        if not holds:
            entry["witness"] = witness
        self.checks.append(entry)

    @property
    def passed(self) -> bool:
        return all(c["holds"] for c in self.checks)

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "checks": self.checks, "values": self.values}
        if self.outputs:
            out["outputs"] = self.outputs
        if self.result is not None:
            out["result"] = self.result
        return out

    def render(self) -> str:
        lines = [self.command + "".join(f" {k}={v}" for k, v in self.inputs.items())]
        for c in self.checks:
            if c["holds"]:
                lines.append(f"  {c['name']}: pass")
            else:
                lines.append(f"  {c['name']}: FAIL  witness {json.dumps(c['witness'])}")
        for k, v in self.values.items():
            lines.append(f"  {k} = {v if isinstance(v, str) else json.dumps(v)}")
        for p in self.outputs:
            lines.append(f"  wrote {p}")
        if self.result is not None:
            lines.append(formats.dumps(self.result).rstrip())
        return "\n".join(lines)


def _tensor_witness(T: np.ndarray):
    hit = first_nonzero(T)
    if hit is None:
        return None
    idx, v = hit
    return {"at": [int(i) + 1 for i in idx], "value": R(v)}


def _identity(report: Report, rep, prefix: str = "") -> None:
    witness = None if rep.holds else {"at": list(rep.at), "value": R(rep.value)}
    report.check(prefix + rep.identity, rep.holds, witness)


def _matrix(M) -> list[list[str]]:
    return [[R(v) for v in row] for row in M]


def _write(report: Report, path, doc) -> None:
    formats.write(path, doc)
    report.outputs.append(str(path))


def _random_point(rng: random.Random, m: int) -> list[Fraction]:
    return [Fraction(rng.randint(-3, 3), rng.choice((4, 8, 16))) for _ in range(m)]


def _point_str(p) -> str:
    return ",".join(R(x) for x in p)


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> Report:
    M = formats.load_model(args.model, validate=False)
    report = Report("check", model=args.model)
    _identity(report, check_bianchi(M))
    if report.passed:
        _identity(report, check_gray(M))
        _identity(report, check_kaehler(M))
        c = contractions(M)
        report.values["tau"] = R(c.tau)
        report.values["tau_star"] = R(c.tau_star)
    return report


def cmd_contract(args) -> Report:
    M = formats.load_model(args.model)
    c = contractions(M)
    report = Report("contract", model=args.model)
    report.values = {
        "rho": _matrix(c.rho),
        "rho_star": _matrix(c.rho_star),
        "tau": R(c.tau),
        "tau_star": R(c.tau_star),
    }
    return report


def cmd_decompose(args) -> Report:
    M = formats.load_model(args.model)
    S = M.structure
    report = Report("decompose", model=args.model)
    rep = check_kaehler(M)
    _identity(report, rep)
    if not rep.holds:
        return report
    gram = args.gram or S.kind != "complex"
    split = tv_project_gram(M) if gram else tv_project_closed_form(M)
    report.values["route"] = "gram" if gram else "closed-form"
    p1, p2, p3 = split.parts()
    report.check("sum", not np.any(p1 + p2 + p3 - M.A != 0), _tensor_witness(p1 + p2 + p3 - M.A))
    report.values["norms"] = {
        "A": R(tensor_ip(M.A, M.A, S)),
        "p1": R(tensor_ip(p1, p1, S)),
        "p2": R(tensor_ip(p2, p2, S)),
        "p3": R(tensor_ip(p3, p3, S)),
    }
    docs = {f"p{i}": formats.model_to_json(p, S) for i, p in enumerate(split.parts(), 1)}
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for name, doc in docs.items():
            _write(report, out / f"{name}.model.json", doc)
    else:
        report.result = docs
    return report


def cmd_realize(args) -> Report:
    if args.random:
        if args.model or args.m is None:
            raise ValueError("--random needs --m (and no model file)")
        S = Structure(args.m, args.kind)
        M = random_model(S, args.seed, kaehler_only=True)
        report = Report("realize", random=True, m=args.m, kind=args.kind, seed=args.seed)
    else:
        if not args.model:
            raise ValueError("realize needs a model file or --random")
        M = formats.load_model(args.model)
        report = Report("realize", model=args.model)
    rep = check_kaehler(M)
    _identity(report, rep)
    if not rep.holds:
        return report
    theta = realize(M)
    report.check("L(theta)=A", not np.any(L(theta) - M.A != 0), _tensor_witness(L(theta) - M.A))
    # re-read what we emit so the file itself is what gets checked
    doc = formats.theta_to_json(theta)
    reloaded = formats.theta_from_json(json.loads(formats.dumps(doc)))
    report.check("apply_K=0", in_kernel(reloaded), _tensor_witness(apply_K(reloaded)))
    if args.output:
        _write(report, args.output, doc)
    else:
        report.result = doc
    if args.metric:
        _write(report, args.metric, formats.metric_to_json(metric_from_theta(theta)))
    return report


def cmd_curvature(args) -> Report:
    g = formats.load_metric(args.metric)
    p = parse_point(args.at, g.m)
    report = Report("curvature", metric=args.metric, at=_point_str(p))
    Rm = curvature_at(g, p)
    report.check("curvature symmetries", is_curvature_tensor(Rm), None)
    report.values["tau"] = R(scalar_curvature_at(g, p))
    report.result = formats.model_to_json(Rm, g.structure)
    return report


def _point_checks(report: Report, g: PolynomialMetric, S: Structure, points) -> None:
    for p in points:
        ps = _point_str(p)
        d = kaehler_form_d_at(g, p)
        report.check(f"dOmega=0 at {ps}", not np.any(d != 0), _point_witness(d, ps))
        rep = check_kaehler(curvature_at(g, p), S)
        if rep.holds:
            report.check(f"kaehler at {ps}", True)
        else:
            report.check(f"kaehler at {ps}", False, {"point": ps, "at": list(rep.at), "value": R(rep.value)})


def _point_witness(d, ps):
    hit = first_nonzero(d)
    if hit is None:
        return None
    idx, v = hit
    return {"point": ps, "at": [int(i) + 1 for i in idx], "value": R(v)}


def cmd_verify(args) -> Report:
    M = formats.load_model(args.model)
    S = M.structure
    doc = formats.read(args.realization)
    report = Report("verify", model=args.model, realization=args.realization, points=args.points, seed=args.seed)
    if "Theta" in doc:
        theta = formats.theta_from_json(doc)
        if theta.structure != S:
            raise BadDimension("model and theta have different structures")
        report.check("apply_K=0", in_kernel(theta), _tensor_witness(apply_K(theta)))
        report.check("L(theta)=A", not np.any(L(theta) - M.A != 0), _tensor_witness(L(theta) - M.A))
        g = metric_from_theta(theta)
    else:
        g = formats.metric_from_json(doc)
        if g.structure != S:
            raise BadDimension("model and metric have different structures")
    origin = curvature_at(g, [0] * S.m)
    report.check("curvature at origin = A", not np.any(origin - M.A != 0), _tensor_witness(origin - M.A))
    rng = random.Random(args.seed)
    _point_checks(report, g, S, [_random_point(rng, S.m) for _ in range(args.points)])
    return report


def cmd_csc(args) -> Report:
    theta = formats.load_theta(args.theta)
    S = theta.structure
    N = args.degree if args.degree is not None else (8 if S.m <= 4 else 6)
    c = formats.linalg.parse_rational(args.c) if args.c is not None else None
    report = Report("csc", theta=args.theta, c=args.c, degree=N)
    P = solve_csc(theta, c, N)
    report.values["c"] = R(P.c)
    report.values["leading_coefficient"] = R(P.leading_coefficient)
    report.values["residual_zero_through"] = P.residual_checked_through
    report.check("residual", P.residual_checked_through >= N - 4, {"through": P.residual_checked_through})
    g = corrected_metric(theta, P.phi.to_poly())
    d = kaehler_form_d_series(g, S)
    bad = [(a, b, e) for a in range(S.m) for b in range(S.m) for e in range(S.m) if not d[a][b][e].is_zero()]
    report.check("dOmega=0", not bad, {"at": [x + 1 for x in bad[0]]} if bad else None)
    if P.phi.valuation >= 5:
        diff = curvature_at(g, [0] * S.m) - L(theta)
        report.check("origin curvature unchanged", not np.any(diff != 0), _tensor_witness(diff))
    doc = formats.potential_to_json(P)
    if args.output:
        _write(report, args.output, doc)
    else:
        report.result = doc
    return report


def cmd_fixture(args) -> Report:
    obj = fixture(args.name)
    report = Report("fixture", name=args.name)
    if args.name == "gray-nonintegrable-r6":
        J0, dJ = obj["jet"]
        docs = {
            "jet": formats.jet_to_json(J0, dJ, COORDINATES_R6),
            "metric": formats.metric_to_json(obj["metric"]),
        }
    else:
        docs = {"model": formats.model_to_json(obj["model"]), "theta": formats.theta_to_json(obj["theta"])}
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for kind, doc in docs.items():
            _write(report, out / f"{args.name}.{kind}.json", doc)
    else:
        report.result = docs
    return report


def cmd_random(args) -> Report:
    S = Structure(args.m, args.kind)
    M = random_model(S, args.seed, kaehler_only=args.kaehler)
    report = Report("random", m=args.m, kind=args.kind, seed=args.seed, kaehler=args.kaehler or None)
    doc = formats.model_to_json(M)
    if args.output:
        _write(report, args.output, doc)
    else:
        report.result = doc
    return report


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable report")

    parser = argparse.ArgumentParser(prog="kaehler", description="Exact (para-)Kaehler curvature models.")
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check curvature identities of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("contract", parents=[common], help="Ricci and scalar contractions")
    p.add_argument("model")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("decompose", parents=[common], help="split a Kaehler model into W1, W2, W3")
    p.add_argument("model")
    p.add_argument("--gram", action="store_true", help="use the Gram route instead of the closed form")
    p.add_argument("-o", "--output", help="directory for p1/p2/p3 model files")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("realize", parents=[common], help="find Theta with L(Theta) = A")
    p.add_argument("model", nargs="?")
    p.add_argument("--random", action="store_true", help="realize a random Kaehler model")
    p.add_argument("--m", type=int)
    p.add_argument("--kind", choices=KINDS, default="complex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="theta file")
    p.add_argument("--metric", help="also write the polynomial metric")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("curvature", parents=[common], help="curvature of a metric at a point")
    p.add_argument("metric")
    p.add_argument("--at", required=True, help="comma-separated rationals, e.g. 1/4,0,0,0")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("verify", parents=[common], help="check a realization against a model")
    p.add_argument("model")
    p.add_argument("realization", help="theta or metric file")
    p.add_argument("--points", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("csc", parents=[common], help="constant scalar curvature potential")
    p.add_argument("theta")
    p.add_argument("--c", help="target scalar curvature (default: tau at the origin)")
    p.add_argument("--degree", type=int, help="truncation degree N (default 8 for m=4, 6 above)")
    p.add_argument("-o", "--output", help="potential file")
    p.set_defaults(func=cmd_csc)

    p = sub.add_parser("fixture", parents=[common], help="write a shipped example")
    p.add_argument("name", help=", ".join(NAMES))
    p.add_argument("-o", "--output", help="directory")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("random", parents=[common], help="seeded random model")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, default="complex")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--kaehler", action="store_true")
    p.add_argument("-o", "--output", help="model file")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report = args.func(args)
    except INPUT_ERRORS as exc:
        print(f"kaehler {args.command}: input error: {exc}", file=sys.stderr)
        return 2
    except KaehlerError as exc:
        print(f"kaehler {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        sys.stdout.write(formats.dumps(report.to_json()))
    else:
        print(report.render())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
