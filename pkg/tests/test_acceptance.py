"""Acceptance criteria 1-8, one test each; every test prints a PASS/FAIL line."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from kaehler import linalg
from kaehler.core import COMPLEX, PARA, CurvatureModel, Structure, tensor_ip
from kaehler.csc import corrected_metric, kaehler_form_d_series, residual_series, solve_csc, vanishing_through
from kaehler.decomposition import (
    phi,
    pi1,
    pi2,
    psi,
    subspace_dimensions,
    tv_project_closed_form,
    tv_project_gram,
)
from kaehler.engine import curvature_at, kaehler_form_d_at
from kaehler.fixtures import rotating_structure_jet, rotating_structure_metric, surface_model, surface_theta
from kaehler.identities import check_gray, check_kaehler, contractions, kaehler_space_basis, nijenhuis_at, random_model
from kaehler.realization import K_kernel_basis, L, in_kernel, metric_from_theta, random_theta, realize, theta_basis

F = Fraction
BOTH = (COMPLEX, PARA)


@pytest.fixture
def verdict(capsys):
    @contextmanager
    def record(number: int, title: str):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            took = time.perf_counter() - start
            with capsys.disabled():
                print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({took:.1f}s)")

    return record


def points(seed: int, m: int, n: int):
    rng = random.Random(seed)
    return [[F(rng.randint(-3, 3), rng.choice((4, 8))) for _ in range(m)] for _ in range(n)]


def test_criterion_1_worked_values(verdict):
    with verdict(1, "worked example values at m=4"):
        S = Structure(4, COMPLEX)
        q = (2, 3, 3, 2)
        assert pi1(S)[q] == 1 and pi2(S)[q] == 3
        assert phi(S.g0, S)[q] == 2 and psi(S.g0, S)[q] == 6
        M = surface_model()
        c = contractions(M)
        assert phi(c.rho, S)[q] == 0 and psi(c.rho, S)[q] == 0
        assert c.tau == 2 and c.tau_star == 2 and c.rho[0, 0] == 1
        split = tv_project_closed_form(M)
        assert split.p1[q] == F(1, 3)
        assert split.p2[q] == F(-1, 2)
        assert split.p3[q] == F(1, 6)


def test_criterion_2_engine_equals_L(verdict):
    with verdict(2, "engine curvature at origin equals L(Theta), 100 random Theta per kind"):
        origin = [0] * 4
        for kind in BOTH:
            S = Structure(4, kind)
            for seed in range(100):
                th = random_theta(S, seed)
                assert np.all(curvature_at(metric_from_theta(th), origin) == L(th)), (kind, seed)
        R = curvature_at(metric_from_theta(surface_theta()), origin)
        assert R[0, 1, 1, 0] == -1 and abs(R[0, 1, 1, 0]) == surface_model().component(1, 2, 2, 1)


def _span_equal(U, V) -> bool:
    a = np.array([u.reshape(-1) for u in U], dtype=object)
    b = np.array([v.reshape(-1) for v in V], dtype=object)
    return linalg.rank(a) == linalg.rank(b) == linalg.rank(np.vstack([a, b]))


def test_criterion_3_kernel_equivalence(verdict):
    with verdict(3, "ker K equals nullspace of the engine's dOmega linearization"):
        for kind in BOTH:
            S = Structure(4, kind)
            basis = theta_basis(S)
            cols = []
            for th in basis:
                g = metric_from_theta(th)
                col = []
                for k in range(4):
                    p = [0] * 4
                    p[k] = F(1, 8)
                    col.extend(kaehler_form_d_at(g, p).reshape(-1))
                cols.append(col)
            null = linalg.nullspace(linalg.as_matrix(cols).T)
            engine = [linalg.combine(z, [t.entries for t in basis]) for z in null]
            assert _span_equal([t.entries for t in K_kernel_basis(S)], engine), kind


def _round_trip(S: Structure, seed: int) -> None:
    M = random_model(S, seed, kaehler_only=True)
    th = realize(M)
    assert np.all(L(th) == M.A) and in_kernel(th)
    g = metric_from_theta(th)
    for p in points(seed, S.m, 5):
        assert not np.any(kaehler_form_d_at(g, p) != 0)
    near = [[x / 4 for x in p] for p in points(seed + 1, S.m, 3)]
    for p in near:
        assert check_kaehler(curvature_at(g, p), S).holds


def test_criterion_4_realization_round_trip(verdict):
    with verdict(4, "realization round trip, 25+25 at m=4 and 5+5 at m=6"):
        for kind in BOTH:
            for seed in range(25):
                _round_trip(Structure(4, kind), seed)
            for seed in range(5):
                _round_trip(Structure(6, kind), 1000 + seed)


def test_criterion_5_gray_off_kernel(verdict):
    with verdict(5, "Gray identity holds off ker K, Kaehler identity fails somewhere"):
        S = Structure(4, COMPLEX)
        violated = False
        for seed in range(25):
            th = random_theta(S, seed)
            assert not in_kernel(th)
            g = metric_from_theta(th)
            for p in points(seed, 4, 2):
                p = [x / 2 for x in p]
                R = curvature_at(g, p)
                assert check_gray(R, S).holds
                violated |= not check_kaehler(R, S).holds
        assert violated


def test_criterion_6_flat_non_integrable(verdict):
    with verdict(6, "rotating structure on flat R^6 is not integrable"):
        J0, dJ = rotating_structure_jet()
        N = nijenhuis_at(J0, dJ, 0, 4)
        assert list(N) == [0, 0, 1, 0, 0, 0]
        g = rotating_structure_metric()
        for p in points(6, 6, 3) + [[0] * 6]:
            assert not np.any(curvature_at(g, p) != 0)


def test_criterion_7_decomposition_structure(verdict):
    with verdict(7, "Kaehler space dimensions, W1/W2/W3, projector agreement and orthogonality"):
        for kind in BOTH:
            assert len(kaehler_space_basis(Structure(4, kind))) == 9
            assert len(kaehler_space_basis(Structure(6, kind))) == 36
            assert subspace_dimensions(Structure(4, kind)) == (1, 3, 5)
        S = Structure(4, COMPLEX)
        for seed in range(50):
            M = random_model(S, seed, kaehler_only=True)
            assert tv_project_closed_form(M) == tv_project_gram(M)
        for kind in BOTH:
            S = Structure(4, kind)
            for seed in range(5):
                parts = tv_project_gram(random_model(S, 500 + seed, kaehler_only=True)).parts()
                for i, p in enumerate(parts):
                    again = tv_project_gram(CurvatureModel(S, p)).parts()
                    assert np.all(again[i] == p)
                    for j in range(3):
                        if j != i:
                            assert not np.any(again[j] != 0)
                            assert tensor_ip(p, parts[j], S) == 0


def test_criterion_8_constant_scalar_curvature(verdict):
    with verdict(8, "formal constant scalar curvature potential, N=8, both kinds"):
        start = time.perf_counter()
        for kind in BOTH:
            th = surface_theta(kind)
            S = th.structure
            c = contractions(CurvatureModel(S, L(th))).tau
            if kind == COMPLEX:
                assert c == -2
            P = solve_csc(th, c, 8)
            assert vanishing_through(residual_series(th, P.phi, c, 4)) >= 4
            assert all(sum(e) >= 5 for e in P.phi.terms)
            g = corrected_metric(th, P.phi.to_poly())
            assert np.all(curvature_at(g, [0] * 4) == L(th))
            d = kaehler_form_d_series(g, S)
            assert all(x.is_zero() for plane in d for row in plane for x in row)
        assert time.perf_counter() - start < 600
