"""Levi-Civita curvature of polynomial metrics, evaluated exactly at rational points.

Convention: ``R(x,y,z,w) = g(R(x,y)z, w)`` with
``R(x,y) = [nabla_x, nabla_y] - nabla_[x,y]``. Under it the curvature of
``metric_from_theta(theta)`` at the origin is exactly ``L(theta)``, and a
round sphere has ``R(x,y,y,x) > 0``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import linalg
from .errors import SingularMatrix, SingularMetric
from .realization import PolynomialMetric


def parse_point(text: str, m: int | None = None) -> list[Fraction]:
    """Parse ``"1/4,0,0,0"``."""
    pt = [linalg.parse_rational(t) for t in text.split(",")]
    if m is not None and len(pt) != m:
        raise ValueError(f"point has {len(pt)} coordinates, expected {m}")
    return pt


class _Jet:
    """Value, first and second derivatives of a polynomial metric at one point."""

    def __init__(self, g: PolynomialMetric, p):
        m = g.m
        p = [linalg.Q(x) for x in p]
        if len(p) != m:
            raise ValueError(f"point must have {m} coordinates")
        E = g.entries
        d1 = [[[E[i][j].diff(a) for j in range(m)] for i in range(m)] for a in range(m)]
        self.G = linalg.as_matrix([[E[i][j](p) for j in range(m)] for i in range(m)])
        self.dG = np.array(
            [[[d1[a][i][j](p) for j in range(m)] for i in range(m)] for a in range(m)], dtype=object
        )
        self.ddG = np.array(
            [
                [[[d1[a][i][j].diff(b)(p) for j in range(m)] for i in range(m)] for b in range(m)]
                for a in range(m)
            ],
            dtype=object,
        )
        try:
            self.Ginv = linalg.inverse(self.G)
        except SingularMatrix:
            raise SingularMetric(f"metric is degenerate at {tuple(str(x) for x in p)}") from None


def _first_kind(dG: np.ndarray) -> np.ndarray:
    # Gamma_{s,jk} = 1/2 (d_j g_ks + d_k g_js - d_s g_jk); dG[a, i, j] = d_a g_ij
    return (
        np.einsum("jks->sjk", dG) + np.einsum("kjs->sjk", dG) - np.einsum("sjk->sjk", dG)
    ) * Fraction(1, 2)


def christoffels_at(g: PolynomialMetric, p) -> np.ndarray:
    """``Gamma[l, j, k]`` at ``p``."""
    jet = _Jet(g, p)
    return np.einsum("ls,sjk->ljk", jet.Ginv, _first_kind(jet.dG))


def _curvature(jet: _Jet) -> np.ndarray:
    Ginv, dG, ddG = jet.Ginv, jet.dG, jet.ddG
    first = _first_kind(dG)
    gamma = np.einsum("ls,sjk->ljk", Ginv, first)
    # d_i Gamma_{s,jk} from ddG[i, a, u, v] = d_i d_a g_uv
    d_first = (
        np.einsum("ijks->isjk", ddG) + np.einsum("ikjs->isjk", ddG) - np.einsum("isjk->isjk", ddG)
    ) * Fraction(1, 2)
    d_ginv = -np.einsum("la,iab,bs->ils", Ginv, dG, Ginv)
    d_gamma = np.einsum("ils,sjk->iljk", d_ginv, first) + np.einsum("ls,isjk->iljk", Ginv, d_first)
    # R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik} + Gamma^l_{ip} Gamma^p_{jk} - Gamma^l_{jp} Gamma^p_{ik}
    up = (
        np.einsum("iljk->lkij", d_gamma)
        - np.einsum("jlik->lkij", d_gamma)
        + np.einsum("lip,pjk->lkij", gamma, gamma)
        - np.einsum("ljp,pik->lkij", gamma, gamma)
    )
    return np.einsum("lw,lkij->ijkw", jet.G, up)


def curvature_at(g: PolynomialMetric, p) -> np.ndarray:
    """Full curvature tensor ``R[x, y, z, w]`` at ``p``."""
    return _curvature(_Jet(g, p))


def scalar_curvature_at(g: PolynomialMetric, p) -> Fraction:
    jet = _Jet(g, p)
    R = _curvature(jet)
    return Fraction(np.einsum("ia,jb,ijba->", jet.Ginv, jet.Ginv, R))


def kaehler_form_d_at(g: PolynomialMetric, p) -> np.ndarray:
    """``(d Omega)[a, b, c]`` at ``p`` for ``Omega(x, y) = g(x, Jy)``."""
    jet = _Jet(g, p)
    J = g.structure.J
    d_omega = np.einsum("abd,dc->abc", jet.dG, J)  # d_a Omega_bc
    return d_omega - np.einsum("bac->abc", d_omega) + np.einsum("cab->abc", d_omega)
