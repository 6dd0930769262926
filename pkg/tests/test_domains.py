import math

import numpy as np
import pytest
import sympy

from pelwedge.domains import (
    BallPoint,
    embedding_trial_stats,
    in_ball,
    op_norm,
    satake_matrix,
)
from pelwedge.serretate import DeformationParams, contract


def test_ball_point_validation():
    BallPoint.of([0.5, 0.5])
    with pytest.raises(ValueError):
        BallPoint.of([1.0, 0.0])
    outside = BallPoint.of([2.0], require_in_ball=False)
    assert outside.norm == 2.0


def test_satake_matrix_row_case():
    # k=1 rows are indexed by the empty set: the matrix is the row vector x
    x = BallPoint.of([0.3, 0.4j])
    mat = satake_matrix(x, 3, 1)
    assert mat.shape == (1, 2)
    assert mat[0, 0] == 0.3
    assert mat[0, 1] == 0.4j


def test_satake_matrix_column_case():
    # n=3, k=2: rows {1},{2}; col {1,2}; entries (-x2, x1)
    x = BallPoint.of([0.3, 0.4])
    mat = satake_matrix(x, 3, 2)
    assert mat.shape == (2, 1)
    assert mat[0, 0] == -0.4
    assert mat[1, 0] == 0.3


def test_satake_matrix_shapes_and_validation():
    x = BallPoint.of([0.1, 0.2, 0.1])
    for k in range(1, 4):
        mat = satake_matrix(x, 4, k)
        assert mat.shape == (math.comb(3, k - 1), math.comb(3, k))
    with pytest.raises(ValueError):
        satake_matrix(x, 4, 4)
    with pytest.raises(ValueError):
        satake_matrix(x, 3, 1)


def test_satake_matches_contraction_pattern():
    # same entry rule as the symbolic parameter contraction
    coords = [0.1, -0.2, 0.15]
    syms = sympy.symbols("x1 x2 x3")
    phi = DeformationParams(1, 3, (syms,))
    subs = dict(zip(syms, coords))
    x = BallPoint.of(coords)
    for k in range(1, 4):
        mat = satake_matrix(x, 4, k)
        sym = contract(phi, k)
        for i in range(sym.a):
            for j in range(sym.b):
                expected = complex(sympy.Float(sympy.simplify(sym.phi[i][j].subs(subs)), 15)) \
                    if isinstance(sym.phi[i][j], sympy.Basic) else complex(sym.phi[i][j])
                assert mat[i, j] == pytest.approx(expected)


def test_satake_linearity():
    a = BallPoint.of([0.1, 0.2])
    b = BallPoint.of([0.05, -0.1])
    s = BallPoint.of([0.15, 0.1])
    for k in (1, 2):
        assert np.allclose(
            satake_matrix(s, 3, k),
            satake_matrix(a, 3, k) + satake_matrix(b, 3, k),
        )


def test_op_norm_examples():
    assert op_norm(np.array([[3.0, 4.0]])) == pytest.approx(5.0)
    assert op_norm(np.zeros((0, 2))) == 0.0
    assert op_norm(np.eye(3) * 0.5) == pytest.approx(0.5)


def test_in_ball():
    assert in_ball(np.array([[0.5]]))
    assert not in_ball(np.array([[1.0]]))
    assert not in_ball(np.array([[1 - 1e-12]]))  # inside the guard band


def test_norm_never_exceeds_point_norm():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        raw = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        raw = raw / np.linalg.norm(raw) * rng.uniform(0, 0.999)
        point = BallPoint.of(raw)
        for k in range(1, n):
            assert op_norm(satake_matrix(point, n, k)) <= point.norm + 1e-12


def test_embedding_trial_stats():
    stats = embedding_trial_stats(4, 2, 200, seed=3)
    assert stats["failures"] == 0
    assert 0 < stats["max_norm_ratio"] <= 1 + 1e-12
    again = embedding_trial_stats(4, 2, 200, seed=3)
    assert stats == again
