"""Constant scalar curvature through a Kaehler potential.

Given a Kaehler ``Theta`` we look for a potential ``Phi`` with vanishing
Cauchy data on ``u_m = 0`` such that ``g_Theta + kappa(Phi)`` has constant
scalar curvature ``c``. The equation is fourth order and quasi-linear with
``d_m^4 Phi`` as its principal term, so it is solved formally, one total
degree at a time: the degree ``d`` slice of ``Phi`` is fixed by the degree
``d - 4`` part of the residual through a square constant-coefficient system.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .core import CurvatureModel, Structure, ThetaTensor
from .errors import LeadingCoefficientDegenerate, NoSolution, NotInKernel, SingularMatrix, SingularMetric
from .identities import contractions
from .polynomial import Poly, TruncSeries, monomials
from .realization import L, PolynomialMetric, in_kernel, metric_from_theta

log = logging.getLogger(__name__)

Matrix = list  # list of lists of series


def hessian(phi: Poly) -> list[list[Poly]]:
    n = phi.nvars
    first = [phi.diff(a) for a in range(n)]
    return [[first[a].diff(b) for b in range(n)] for a in range(n)]


def kappa(phi: Poly, S: Structure) -> Matrix:
    """``1/4 (Hess Phi + sigma J* Hess Phi)``: the J-invariant (complex) or
    J-anti-invariant (para) part of the Hessian, halved."""
    m = S.m
    H = hessian(phi)
    J = S.J
    nz = [(c, a) for a in range(m) for c in range(m) if J[c, a] != 0]
    out = []
    for a in range(m):
        row = []
        for b in range(m):
            jh = None
            for c, a2 in nz:
                if a2 != a:
                    continue
                for d, b2 in nz:
                    if b2 != b:
                        continue
                    term = (J[c, a] * J[d, b]) * H[c][d]
                    jh = term if jh is None else jh + term
            total = H[a][b] + S.sigma * jh if jh is not None else H[a][b]
            row.append(Fraction(1, 4) * total)
        out.append(row)
    return out


def _as_series(h: Matrix, D: int) -> Matrix:
    out = []
    for row in h:
        new = []
        for p in row:
            if isinstance(p, TruncSeries):
                if p.D < D:
                    raise ValueError(f"metric entry known only through degree {p.D}, need {D}")
                new.append(p.with_degree(D))
            else:
                new.append(TruncSeries.from_poly(p, D))
        out.append(new)
    return out


def _sum(terms, zero):
    out = zero
    for t in terms:
        out = out + t
    return out


def inverse_series(h: Matrix, D: int) -> Matrix:
    """Inverse of a series-valued matrix through degree ``D`` (Neumann series)."""
    m = len(h)
    nv = h[0][0].nvars
    G0 = linalg.as_matrix([[h[i][j].constant_term() for j in range(m)] for i in range(m)])
    try:
        G0inv = linalg.inverse(G0)
    except SingularMatrix:
        raise SingularMetric("metric is degenerate at the origin") from None
    zero = TruncSeries(nv, D)
    # E = G0^{-1} (h - G0), of positive valuation
    E = [
        [
            _sum(
                (G0inv[i, k] * (h[k][j] - G0[k, j]) for k in range(m) if G0inv[i, k] != 0), zero
            ).with_degree(D)
            for j in range(m)
        ]
        for i in range(m)
    ]
    const = [[TruncSeries.constant(nv, G0inv[i, j], D) for j in range(m)] for i in range(m)]
    out = [row[:] for row in const]
    term = const
    sign = -1
    for _ in range(D):
        # term <- E * term
        term = [
            [
                _sum((E[i][k] * term[k][j] for k in range(m)), zero).with_degree(D)
                for j in range(m)
            ]
            for i in range(m)
        ]
        if all(t.is_zero() for row in term for t in row):
            break
        out = [[out[i][j] + sign * term[i][j] for j in range(m)] for i in range(m)]
        sign = -sign
    return out


def _christoffels(h: Matrix, D: int):
    """``(ginv, gamma)`` through degree ``D`` with gamma[l][j][k] = Gamma^l_jk."""
    m = len(h)
    nv = h[0][0].nvars
    hs = _as_series(h, D + 1)
    ginv = inverse_series(hs, D)
    dh = [[[hs[i][j].diff(a) for j in range(m)] for i in range(m)] for a in range(m)]
    zero = TruncSeries(nv, D)
    first = [
        [
            [Fraction(1, 2) * (dh[j][k][s] + dh[k][j][s] - dh[s][j][k]) for k in range(m)]
            for j in range(m)
        ]
        for s in range(m)
    ]
    gamma = [[[None] * m for _ in range(m)] for _ in range(m)]
    for l in range(m):
        for j in range(m):
            for k in range(j, m):
                v = _sum((ginv[l][s] * first[s][j][k] for s in range(m)), zero).with_degree(D)
                gamma[l][j][k] = gamma[l][k][j] = v
    return ginv, gamma


def ricci_series(h: Matrix, D: int):
    """``(ginv, Ric)`` through degree ``D``; ``h`` must be known through ``D + 2``."""
    m = len(h)
    nv = h[0][0].nvars
    ginv, gamma = _christoffels(h, D + 1)
    zero = TruncSeries(nv, D)
    trace = [_sum((gamma[i][i][p] for i in range(m)), TruncSeries(nv, D + 1)) for p in range(m)]
    ric = [[None] * m for _ in range(m)]
    for b in range(m):
        for j in range(b, m):
            # Ric_bj = d_i Gamma^i_jb - d_j Gamma^i_ib + Gamma^i_ip Gamma^p_jb - Gamma^i_jp Gamma^p_ib
            v = _sum((gamma[i][j][b].diff(i) for i in range(m)), zero) - trace[b].diff(j)
            v = v + _sum((trace[p] * gamma[p][j][b] for p in range(m)), zero).with_degree(D)
            v = v - _sum(
                (gamma[i][j][p] * gamma[p][i][b] for i in range(m) for p in range(m)), zero
            ).with_degree(D)
            ric[b][j] = ric[j][b] = v.with_degree(D)
    return [[x.with_degree(D) for x in row] for row in ginv], ric


def scalar_curvature_series(h: Matrix, S: Structure | None = None, D: int = 0) -> TruncSeries:
    """Scalar curvature of ``h`` as a series through degree ``D``.

    ``h`` is an ``m x m`` matrix of polynomials or series known through
    degree ``D + 2``.
    """
    if isinstance(h, PolynomialMetric):
        h = h.entries
    m = len(h)
    ginv, ric = ricci_series(h, D)
    zero = TruncSeries(h[0][0].nvars, D)
    return _sum((ginv[j][b] * ric[b][j] for j in range(m) for b in range(m)), zero).with_degree(D)


def riemann_series(h: Matrix, D: int) -> list:
    """``R[x][y][z][w]`` through degree ``D`` in the engine's convention."""
    if isinstance(h, PolynomialMetric):
        h = h.entries
    m = len(h)
    nv = h[0][0].nvars
    _, gamma = _christoffels(h, D + 1)
    hs = _as_series(h, D)
    zero = TruncSeries(nv, D)
    up = {}
    for l in range(m):
        for k in range(m):
            for i in range(m):
                for j in range(m):
                    v = gamma[l][j][k].diff(i) - gamma[l][i][k].diff(j)
                    v = v + _sum(
                        (gamma[l][i][p] * gamma[p][j][k] - gamma[l][j][p] * gamma[p][i][k] for p in range(m)),
                        zero,
                    )
                    up[l, k, i, j] = v.with_degree(D)
    R = [[[[None] * m for _ in range(m)] for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for w in range(m):
                    R[i][j][k][w] = _sum((hs[l][w] * up[l, k, i, j] for l in range(m)), zero).with_degree(D)
    return R


def kaehler_form_d_series(h: Matrix, S: Structure) -> list:
    """``(d Omega)[a][b][c]`` for ``Omega(x, y) = h(x, Jy)``, as exact polynomials/series."""
    if isinstance(h, PolynomialMetric):
        h = h.entries
    m = S.m
    J = S.J
    omega = [
        [_sum((J[d, c] * h[b][d] for d in range(m) if J[d, c] != 0), 0 * h[0][0]) for c in range(m)]
        for b in range(m)
    ]
    d_om = [[[omega[b][c].diff(a) for c in range(m)] for b in range(m)] for a in range(m)]
    return [
        [[d_om[a][b][c] - d_om[b][a][c] + d_om[c][a][b] for c in range(m)] for b in range(m)]
        for a in range(m)
    ]


def corrected_metric(theta: ThetaTensor, phi: Poly) -> PolynomialMetric:
    """``g_Theta + kappa(phi)`` as a polynomial metric."""
    g = metric_from_theta(theta)
    k = kappa(phi, theta.structure)
    m = theta.m
    return PolynomialMetric(
        theta.structure, [[g.entries[i][j] + k[i][j] for j in range(m)] for i in range(m)]
    )


def _linearized_tau(hp: Matrix, eps) -> Poly:
    """Principal part at the origin: ``sum eps_i eps_j (d_i d_j h_ij - d_i^2 h_jj)``."""
    m = len(hp)
    out = 0 * hp[0][0]
    for i in range(m):
        for j in range(m):
            s = eps[i] * eps[j]
            out = out + s * (hp[i][j].diff(i).diff(j) - hp[j][j].diff(i).diff(i))
    return out


def leading_coefficient(S: Structure) -> Fraction:
    """Coefficient of ``d_m^4 Phi`` in the linearized scalar curvature at the origin."""
    m = S.m
    e = [0] * m
    e[-1] = 4
    mono = Poly(m, {tuple(e): Fraction(1, 24)})
    return _linearized_tau(kappa(mono, S), S.eps).coefficient((0,) * m)


@lru_cache(maxsize=None)
def _slice_system(S: Structure, d: int):
    """Unknown monomials of degree ``d`` and the square matrix taking them to degree ``d - 4``."""
    m = S.m
    unknowns = [e for e in monomials(m, d) if e[-1] >= 4]
    targets = [e[:-1] + (e[-1] - 4,) for e in unknowns]
    cols = []
    for e in unknowns:
        lin = _linearized_tau(kappa(Poly(m, {e: 1}), S), S.eps)
        cols.append([lin.coefficient(t) for t in targets])
    return unknowns, targets, linalg.as_matrix(cols).T


@dataclass(eq=False)
class Potential:
    structure: Structure
    phi: TruncSeries
    c: Fraction
    N: int
    residual_checked_through: int
    leading_coefficient: Fraction

    @property
    def m(self) -> int:
        return self.structure.m

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return (
            self.structure == other.structure
            and self.phi.terms == other.phi.terms
            and self.c == other.c
            and self.N == other.N
            and self.residual_checked_through == other.residual_checked_through
        )


def residual_series(theta: ThetaTensor, phi: Poly, c, D: int) -> TruncSeries:
    """``tau(g_Theta + kappa(phi)) - c`` through degree ``D``."""
    h = corrected_metric(theta, phi).entries
    return scalar_curvature_series(h, theta.structure, D) - linalg.Q(c)


def vanishing_through(s: TruncSeries) -> int:
    """Largest ``k <= s.D`` such that every coefficient of degree ``<= k`` is zero (``-1`` if none)."""
    low = s.valuation
    return min(low - 1, s.D)


def solve_csc(theta: ThetaTensor, c=None, N: int = 8) -> Potential:
    """Formal potential making the scalar curvature equal ``c`` through degree ``N - 4``.

    ``c`` defaults to the scalar curvature of ``L(theta)``, in which case the
    potential starts in degree 5 and the curvature at the origin is unchanged.
    """
    S = theta.structure
    m = S.m
    if N < 5:
        raise ValueError("truncation degree must be at least 5")
    if not in_kernel(theta):
        raise NotInKernel("theta does not define a Kaehler metric")
    if c is None:
        c = contractions(CurvatureModel(S, L(theta))).tau
    c = linalg.Q(c)
    lead = leading_coefficient(S)
    if lead == 0:
        raise LeadingCoefficientDegenerate("principal d_m^4 coefficient vanishes")
    phi = Poly(m)
    for d in range(4, N + 1):
        k = d - 4
        r = residual_series(theta, phi, c, k).to_poly().homogeneous_part(k)
        unknowns, targets, A = _slice_system(S, d)
        rhs = [-r.coefficient(t) for t in targets]
        try:
            x = linalg.solve_unique(A, rhs)
        except SingularMatrix:
            raise LeadingCoefficientDegenerate(f"degree {d} slice system is singular") from None
        phi = phi + Poly(m, dict(zip(unknowns, x)))
        log.debug("degree %d: %d unknowns, %d nonzero", d, len(unknowns), sum(1 for v in x if v))
    through = vanishing_through(residual_series(theta, phi, c, N - 4))
    if through < N - 4:
        raise NoSolution(f"residual survives at degree {through + 1}")
    return Potential(S, TruncSeries.from_poly(phi, N), c, N, through, lead)
