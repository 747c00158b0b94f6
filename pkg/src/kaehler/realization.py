"""Realizing (para-)Kaehler curvature models by explicit polynomial metrics.

A metric ``g_ij = g0_ij + Theta_ijkl u_k u_l`` is Kaehler exactly when the
linearized constraint ``apply_K(Theta)`` vanishes, and its curvature at the
origin is the linear map ``L(Theta)``. Realizing a model means solving
``L(Theta) = A`` on the kernel of ``apply_K``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .core import (
    CurvatureModel,
    Structure,
    ThetaTensor,
    act,
    pair_coords,
    pullback2,
    reindex,
    sym_product,
    tensors_equal,
)
from .errors import NoSolution, NotKaehler
from .identities import check_kaehler, random_rational
from .polynomial import Poly


def symmetric_basis(m: int) -> list[np.ndarray]:
    out = []
    for i in range(m):
        for j in range(i, m):
            E = linalg.zeros(m, m)
            E[i, j] = E[j, i] = Fraction(1)
            out.append(E)
    return out


@lru_cache(maxsize=None)
def _eigenspace_coords(S: Structure) -> tuple[np.ndarray, ...]:
    basis = symmetric_basis(S.m)
    cols = [(E - S.sigma * pullback2(E, S.J)).reshape(-1) for E in basis]
    return tuple(linalg.nullspace(np.array(cols, dtype=object).T))


def eigenspace_basis(S: Structure) -> list[np.ndarray]:
    """Basis of ``{theta in S^2 : J* theta = sigma theta}``."""
    basis = symmetric_basis(S.m)
    return [linalg.combine(z, basis) for z in _eigenspace_coords(S)]


@lru_cache(maxsize=None)
def _theta_entries(S: Structure) -> tuple[np.ndarray, ...]:
    return tuple(sym_product(a, b) for a in eigenspace_basis(S) for b in symmetric_basis(S.m))


def theta_basis(S: Structure) -> list[ThetaTensor]:
    """Basis of ``S^2_sigma (x) S^2``: eigenspace forms times elementary symmetric forms."""
    return [ThetaTensor(S, T.copy(), validate=False) for T in _theta_entries(S)]


def apply_K(theta: ThetaTensor) -> np.ndarray:
    """``K(x,y,z)(w) = Theta(x,Jy,z,w) + Theta(y,Jz,x,w) + Theta(z,Jx,y,w)``."""
    T1 = act(theta.entries, theta.structure.J, 1)
    return T1 + reindex(T1, "yzxw", "xyzw") + reindex(T1, "zxyw", "xyzw")


@lru_cache(maxsize=None)
def _kernel_entries(S: Structure) -> tuple[np.ndarray, ...]:
    basis = _theta_entries(S)
    cols = [apply_K(ThetaTensor(S, T, validate=False)).reshape(-1) for T in basis]
    coeffs = linalg.nullspace(np.array(cols, dtype=object).T)
    return tuple(linalg.combine(z, basis) for z in coeffs)


def K_kernel_basis(S: Structure) -> list[ThetaTensor]:
    """Basis of ``ker(apply_K)`` inside the Theta space."""
    return [ThetaTensor(S, T.copy(), validate=False) for T in _kernel_entries(S)]


def L(theta: ThetaTensor) -> np.ndarray:
    """Curvature at the origin of ``metric_from_theta(theta)``."""
    T = theta.entries
    return (
        reindex(T, "xzyw", "xyzw")
        + reindex(T, "ywxz", "xyzw")
        - reindex(T, "xwyz", "xyzw")
        - reindex(T, "yzxw", "xyzw")
    )


@lru_cache(maxsize=None)
def _L_on_kernel(S: Structure) -> np.ndarray:
    pc = pair_coords(S.m)
    cols = [pc.to_coords(L(ThetaTensor(S, T, validate=False))) for T in _kernel_entries(S)]
    return np.array(cols, dtype=object).T


def L_kernel_rank(S: Structure) -> int:
    return linalg.rank(_L_on_kernel(S))


def realize(M: CurvatureModel) -> ThetaTensor:
    """A Theta in ``ker(apply_K)`` with ``L(Theta) = M.A``; free coordinates zeroed."""
    rep = check_kaehler(M)
    if not rep.holds:
        raise NotKaehler(f"Kaehler identity fails at {rep.at} (value {rep.value})")
    S = M.structure
    x = linalg.solve_linear(_L_on_kernel(S), pair_coords(S.m).to_coords(M.A))
    if x is None:
        raise NoSolution("L restricted to ker K does not reach this model")
    theta = ThetaTensor(S, linalg.combine(x, _kernel_entries(S)), validate=False)
    if not tensors_equal(L(theta), M.A) or np.any(apply_K(theta) != 0):
        raise NoSolution("realization failed its own post-check")
    return theta


def in_kernel(theta: ThetaTensor) -> bool:
    return not np.any(apply_K(theta) != 0)


def random_theta(S: Structure, seed: int, kernel: bool = False) -> ThetaTensor:
    """Seed-deterministic random Theta, drawn from ``ker(apply_K)`` when ``kernel``."""
    rng = random.Random(seed)
    if kernel:
        basis = _kernel_entries(S)
    else:
        basis = _theta_entries(S)
    coeffs = [random_rational(rng, span=3, den=3) if rng.random() < 0.5 else 0 for _ in basis]
    if all(c == 0 for c in coeffs):
        coeffs[rng.randrange(len(coeffs))] = Fraction(1)
    return ThetaTensor(S, linalg.combine(coeffs, basis), validate=False)


@dataclass(eq=False)
class PolynomialMetric:
    """Symmetric matrix of polynomials in ``u_1..u_m``."""

    structure: Structure
    entries: list[list[Poly]]

    def __post_init__(self):
        m = self.structure.m
        if len(self.entries) != m or any(len(r) != m for r in self.entries):
            raise ValueError("metric must be an m x m matrix")
        for i in range(m):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"metric not symmetric at ({i + 1},{j + 1})")

    @property
    def m(self) -> int:
        return self.structure.m

    def __eq__(self, other):
        if not isinstance(other, PolynomialMetric):
            return NotImplemented
        return self.structure == other.structure and self.entries == other.entries

    def at(self, point) -> np.ndarray:
        return linalg.as_matrix([[p(point) for p in row] for row in self.entries])


def flat_metric(S: Structure) -> PolynomialMetric:
    m = S.m
    return PolynomialMetric(
        S, [[Poly.constant(m, S.g0[i, j]) for j in range(m)] for i in range(m)]
    )


def metric_from_theta(theta: ThetaTensor) -> PolynomialMetric:
    S = theta.structure
    m = S.m
    T = theta.entries
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            terms = {(0,) * m: S.g0[i, j]}
            for k in range(m):
                for l in range(m):
                    c = T[i, j, k, l]
                    if c != 0:
                        e = [0] * m
                        e[k] += 1
                        e[l] += 1
                        e = tuple(e)
                        terms[e] = terms.get(e, 0) + c
            row.append(Poly(m, terms))
        rows.append(row)
    return PolynomialMetric(S, rows)
