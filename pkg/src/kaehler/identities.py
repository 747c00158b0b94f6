"""Curvature identities of (para-)Hermitian geometry and the Kaehler tensor space."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from . import linalg
from .core import (
    COMPLEX,
    CurvatureModel,
    Structure,
    act,
    act_all,
    first_nonzero,
    pair_coords,
    pullback2,
    tensor_ip,
)

# (slots fed through J) for the six mixed terms of the Gray identity
_GRAY_MIXED = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    holds: bool
    at: tuple[int, int, int, int] | None = None  # 1-based
    value: Fraction | None = None

    def to_json(self) -> dict:
        out = {"identity": self.identity, "holds": self.holds}
        if not self.holds:
            out["at"] = list(self.at)
            out["value"] = linalg.format_rational(self.value)
        return out


def _report(name: str, defect: np.ndarray) -> IdentityReport:
    hit = first_nonzero(defect)
    if hit is None:
        return IdentityReport(name, True)
    idx, v = hit
    return IdentityReport(name, False, tuple(int(i) + 1 for i in idx), v)


def _tensor(M):
    return M.A if isinstance(M, CurvatureModel) else M


def gray_defect(A: np.ndarray, S: Structure) -> np.ndarray:
    """Eight-term Gray sum; mixed terms carry -1 (complex) or +1 (para)."""
    J = S.J
    total = A + act_all(A, J, (0, 1, 2, 3))
    mixed = sum(act_all(A, J, slots) for slots in _GRAY_MIXED)
    return total - S.sigma * mixed


def kaehler_defect(A: np.ndarray, S: Structure) -> np.ndarray:
    return A - S.sigma * act_all(A, S.J, (0, 1))


def check_gray(M, S: Structure | None = None) -> IdentityReport:
    """Gray identity (para-Gray for the para kind) on every basis quadruple.

    ``M`` is a CurvatureModel, or a raw tensor together with ``S``.
    """
    S = S or M.structure
    return _report("gray", gray_defect(_tensor(M), S))


def check_kaehler(M, S: Structure | None = None) -> IdentityReport:
    """``A(x,y,z,w) = sigma A(Jx,Jy,z,w)`` on every basis quadruple."""
    S = S or M.structure
    return _report("kaehler", kaehler_defect(_tensor(M), S))


def check_bianchi(M) -> IdentityReport:
    from .core import reindex

    A = _tensor(M)
    return _report("bianchi", A + reindex(A, "yzxw", "xyzw") + reindex(A, "zxyw", "xyzw"))


@dataclass(frozen=True)
class ContractionReport:
    rho: np.ndarray
    rho_star: np.ndarray
    tau: Fraction
    tau_star: Fraction


def _trace_23(A: np.ndarray, eps) -> np.ndarray:
    """``sum_i eps_i A(x, e_i, e_i, y)``."""
    m = A.shape[0]
    out = linalg.zeros(m, m)
    for x, y in product(range(m), repeat=2):
        out[x, y] = sum((eps[i] * A[x, i, i, y] for i in range(m)), Fraction(0))
    return out


def contractions(M: CurvatureModel) -> ContractionReport:
    """Ricci, star-Ricci, scalar and star-scalar curvature.

    Sums run over the orthonormal basis with each index weighted by its
    signature sign, so in neutral signature this is the trace against g0.
    """
    S, A = M.structure, M.A
    eps = S.eps
    rho = _trace_23(A, eps)
    rho_star = _trace_23(act_all(A, S.J, (2, 3)), eps)
    tau = sum((eps[i] * rho[i, i] for i in range(S.m)), Fraction(0))
    tau_star = sum((eps[i] * rho_star[i, i] for i in range(S.m)), Fraction(0))
    if S.kind != COMPLEX and not np.any(kaehler_defect(A, S) != 0):
        assert np.all(pullback2(rho, S.J) == -rho), "para-Kaehler Ricci must be J-anti-invariant"
    return ContractionReport(rho, rho_star, tau, tau_star)


def nijenhuis_at(J0, dJ, i: int, j: int, kind: str = COMPLEX) -> np.ndarray:
    """Nijenhuis tensor ``N(d_i, d_j)`` at a point from the 1-jet of ``J``.

    ``J0[a, x]`` is the ``a``-component of ``J d_x`` at the point and
    ``dJ[k, a, x]`` its derivative along ``d_k``. Indices are 0-based.
    """
    J0 = linalg.as_matrix(J0)
    m = J0.shape[0]
    dJ = np.asarray(dJ, dtype=object)
    # [J d_i, d_j] = -(d_j J^a_i) d_a,  [d_i, J d_j] = (d_i J^a_j) d_a
    br_Ji_j = np.array([-dJ[j, a, i] for a in range(m)], dtype=object)
    br_i_Jj = np.array([dJ[i, a, j] for a in range(m)], dtype=object)
    br_Ji_Jj = np.array(
        [
            sum(J0[a, i] * dJ[a, b, j] for a in range(m)) - sum(J0[a, j] * dJ[a, b, i] for a in range(m))
            for b in range(m)
        ],
        dtype=object,
    )
    if kind == COMPLEX:
        out = J0.dot(br_Ji_j) + J0.dot(br_i_Jj) - br_Ji_Jj
    else:
        out = -J0.dot(br_Ji_j) - J0.dot(br_i_Jj) + br_Ji_Jj
    return np.array([Fraction(x) for x in out], dtype=object)


# -- the Kaehler tensor space ------------------------------------------------


def _bianchi_rows(m: int) -> list[np.ndarray]:
    pc = pair_coords(m)
    rows = []
    for x, y, z, w in product(range(m), repeat=4):
        # cyclic sum only needs distinct x<y<z up to the symmetries already built in
        if not (x < y < z):
            continue
        rows.append(pc.constraint_row([(1, (x, y, z, w)), (1, (y, z, x, w)), (1, (z, x, y, w))]))
    return rows


def _kaehler_rows(S: Structure) -> list[np.ndarray]:
    pc = pair_coords(S.m)
    J, m = S.J, S.m
    rows = []
    for x, y, z, w in product(range(m), repeat=4):
        if x >= y or z >= w:
            continue
        terms = [(1, (x, y, z, w))]
        for a, b in product(range(m), repeat=2):
            c = J[a, x] * J[b, y]
            if c != 0:
                terms.append((-S.sigma * c, (a, b, z, w)))
        rows.append(pc.constraint_row(terms))
    return rows


@lru_cache(maxsize=None)
def curvature_space_coords(m: int) -> tuple[np.ndarray, ...]:
    """Basis (in pair coordinates) of all algebraic curvature tensors."""
    return tuple(linalg.nullspace(_bianchi_rows(m)))


@lru_cache(maxsize=None)
def kaehler_space_coords(S: Structure) -> tuple[np.ndarray, ...]:
    """Basis (in pair coordinates) of the kind's Kaehler curvature tensors."""
    return tuple(linalg.nullspace(_bianchi_rows(S.m) + _kaehler_rows(S)))


def kaehler_space_basis(S: Structure) -> list[np.ndarray]:
    pc = pair_coords(S.m)
    return [pc.from_coords(v) for v in kaehler_space_coords(S)]


def coords_ip(S: Structure):
    w = pair_coords(S.m).weights(S)

    def ip(u, v):
        return Fraction(np.dot(w * u, v))

    return ip


def random_rational(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_model(S: Structure, seed: int, kaehler_only: bool = False) -> CurvatureModel:
    """Seed-deterministic random model; Kaehler when ``kaehler_only``."""
    rng = random.Random(seed)
    basis = kaehler_space_coords(S) if kaehler_only else curvature_space_coords(S.m)
    coeffs = [random_rational(rng) for _ in basis]
    x = linalg.combine(coeffs, basis, len(pair_coords(S.m)))
    return CurvatureModel(S, pair_coords(S.m).from_coords(x))


def project_to_kaehler(A: np.ndarray, S: Structure) -> np.ndarray:
    """``tensor_ip``-orthogonal projection onto the Kaehler tensor space.

    Raises DegenerateGram if the form restricted to that space is singular.
    """
    pc = pair_coords(S.m)
    _, proj = linalg.gram_project(list(kaehler_space_coords(S)), pc.to_coords(A), coords_ip(S))
    return pc.from_coords(proj)


__all__ = [
    "IdentityReport",
    "ContractionReport",
    "check_gray",
    "check_kaehler",
    "check_bianchi",
    "contractions",
    "gray_defect",
    "kaehler_defect",
    "nijenhuis_at",
    "kaehler_space_basis",
    "kaehler_space_coords",
    "curvature_space_coords",
    "random_model",
    "project_to_kaehler",
    "tensor_ip",
]
