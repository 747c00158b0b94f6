"""JSON file formats. Indices are 1-based and rationals are always strings."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import linalg
from .core import (
    KINDS,
    CurvatureModel,
    Structure,
    ThetaTensor,
    model_from_components,
    sparse_components,
    theta_components,
    theta_from_components,
)
from .csc import Potential
from .errors import FormatError, KaehlerError
from .polynomial import Poly, TruncSeries
from .realization import PolynomialMetric

Q = linalg.format_rational


def _structure(doc: dict) -> Structure:
    try:
        m, kind = doc["m"], doc.get("kind", "complex")
    except (KeyError, TypeError):
        raise FormatError("missing 'm'") from None
    if not isinstance(m, int) or kind not in KINDS:
        raise FormatError(f"bad structure m={m!r} kind={kind!r}")
    return Structure(m, kind)


def _rat(v) -> Fraction:
    if not isinstance(v, str):
        raise FormatError(f"rationals must be strings, got {v!r}")
    return linalg.parse_rational(v)


def _entries(items, m: int) -> list:
    out = []
    try:
        for e in items:
            out.append((int(e["i"]), int(e["j"]), int(e["k"]), int(e["l"]), _rat(e["v"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad tensor entry: {exc}") from None
    for e in out:
        if not all(1 <= t <= m for t in e[:4]):
            raise FormatError(f"index {e[:4]} out of range 1..{m}")
    return out


def _tensor_items(comps) -> list[dict]:
    return [
        {"i": i, "j": j, "k": k, "l": l, "v": Q(v)} for (i, j, k, l), v in comps
    ]


# -- models ------------------------------------------------------------------


def model_to_json(M: CurvatureModel | np.ndarray, S: Structure | None = None) -> dict:
    if isinstance(M, CurvatureModel):
        S, A = M.structure, M.A
    else:
        A = M
    return {"m": S.m, "kind": S.kind, "A": _tensor_items(sparse_components(A))}


def model_from_json(doc: dict, validate: bool = True) -> CurvatureModel:
    S = _structure(doc)
    if "A" not in doc:
        raise FormatError("model file has no 'A'")
    return model_from_components(S, _entries(doc["A"], S.m), validate)


# -- theta -------------------------------------------------------------------


def theta_to_json(theta: ThetaTensor) -> dict:
    S = theta.structure
    return {"m": S.m, "kind": S.kind, "Theta": _tensor_items(theta_components(theta.entries))}


def theta_from_json(doc: dict) -> ThetaTensor:
    S = _structure(doc)
    if "Theta" not in doc:
        raise FormatError("theta file has no 'Theta'")
    return theta_from_components(S, _entries(doc["Theta"], S.m))


# -- polynomials, metrics, potentials ----------------------------------------


def _monomials_to_json(p: Poly) -> list[dict]:
    keys = sorted(p.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    return [{"exp": list(e), "c": Q(p.terms[e])} for e in keys]


def _monomials_from_json(items, m: int) -> dict:
    terms: dict = {}
    try:
        for t in items:
            e = tuple(int(x) for x in t["exp"])
            if len(e) != m or min(e) < 0:
                raise FormatError(f"bad exponent {t['exp']!r}")
            terms[e] = terms.get(e, 0) + _rat(t["c"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad monomial: {exc}") from None
    return terms


def metric_to_json(g: PolynomialMetric) -> dict:
    S = g.structure
    entries = []
    for i in range(S.m):
        for j in range(i, S.m):
            p = g.entries[i][j]
            if not p.is_zero():
                entries.append({"i": i + 1, "j": j + 1, "monomials": _monomials_to_json(p)})
    return {"m": S.m, "kind": S.kind, "entries": entries}


def metric_from_json(doc: dict) -> PolynomialMetric:
    S = _structure(doc)
    m = S.m
    rows = [[Poly(m) for _ in range(m)] for _ in range(m)]
    try:
        for e in doc["entries"]:
            i, j = int(e["i"]) - 1, int(e["j"]) - 1
            if not (0 <= i < m and 0 <= j < m):
                raise FormatError(f"metric index ({i + 1},{j + 1}) out of range")
            p = Poly(m, _monomials_from_json(e["monomials"], m))
            rows[i][j] = rows[j][i] = p
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad metric file: {exc}") from None
    return PolynomialMetric(S, rows)


def potential_to_json(P: Potential) -> dict:
    S = P.structure
    return {
        "m": S.m,
        "kind": S.kind,
        "c": Q(P.c),
        "N": P.N,
        "phi": _monomials_to_json(P.phi),
        "residual_zero_through": P.residual_checked_through,
        "leading_coefficient": Q(P.leading_coefficient),
    }


def potential_from_json(doc: dict) -> Potential:
    S = _structure(doc)
    try:
        N = int(doc["N"])
        phi = TruncSeries(S.m, N, _monomials_from_json(doc["phi"], S.m))
        return Potential(
            S,
            phi,
            _rat(doc["c"]),
            N,
            int(doc["residual_zero_through"]),
            _rat(doc.get("leading_coefficient", "-1/4")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad potential file: {exc}") from None


# -- J jets (non-integrable structure fixture) -------------------------------


def jet_to_json(J0: np.ndarray, dJ: np.ndarray, coordinates: list[str]) -> dict:
    m = J0.shape[0]
    return {
        "m": m,
        "coordinates": coordinates,
        "J0": [[Q(J0[a, x]) for x in range(m)] for a in range(m)],
        "dJ": [[[Q(dJ[k, a, x]) for x in range(m)] for a in range(m)] for k in range(m)],
    }


def jet_from_json(doc: dict) -> tuple[np.ndarray, np.ndarray]:
    try:
        J0 = linalg.as_matrix([[_rat(v) for v in row] for row in doc["J0"]])
        dJ = np.array([[[_rat(v) for v in row] for row in mat] for mat in doc["dJ"]], dtype=object)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad jet file: {exc}") from None
    return J0, dJ


# -- files -------------------------------------------------------------------


def dumps(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def write(path: str | Path, doc) -> None:
    Path(path).write_text(dumps(doc))


def read(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def load_model(path, validate: bool = True) -> CurvatureModel:
    return model_from_json(read(path), validate)


def load_theta(path) -> ThetaTensor:
    return theta_from_json(read(path))


def load_metric(path) -> PolynomialMetric:
    return metric_from_json(read(path))


__all__ = [
    "KaehlerError",
    "model_to_json",
    "model_from_json",
    "theta_to_json",
    "theta_from_json",
    "metric_to_json",
    "metric_from_json",
    "potential_to_json",
    "potential_from_json",
    "jet_to_json",
    "jet_from_json",
]
