import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from citegraph.envnet import Mode
from citegraph.errors import ConvergenceError, UndefinedEntryError, ValidationError
from citegraph.simalg import (
    Kind,
    Orientation,
    SimilarityMatrix,
    cosine_matrix,
    default_orientation,
    display_network,
    drop_degenerate,
    jacobi_eigh,
    pearson_matrix,
    principal_components,
    profile_vectors,
    similarity_matrix,
)

from oracles import char_poly_eigenvalues


def test_profile_vectors():
    m = [[5, 3], [2, 0]]
    assert [list(v) for v in profile_vectors(m, Orientation.ROWS)] == [[5, 3], [2, 0]]
    assert [list(v) for v in profile_vectors(m, Orientation.COLUMNS)] == [[5, 2], [3, 0]]
    assert [list(v) for v in profile_vectors([[5]], "rows")] == [[5]]
    assert [list(v) for v in profile_vectors(m, "rows", include_self=False)] == [[0, 3], [2, 0]]
    with pytest.raises(ValidationError):
        profile_vectors([[1, 2, 3]], "rows")


def test_default_orientation():
    assert default_orientation(Mode.CITING) is Orientation.ROWS
    assert default_orientation(Mode.CITED) is Orientation.COLUMNS


def test_cosine_examples():
    assert cosine_matrix([(2, 1, 3), (2, 1, 3)]).values[0, 1] == 1.0
    assert cosine_matrix([(1, 0), (0, 7)]).values[0, 1] == 0.0
    # (1*1 + 0*1 + 1*0) / (sqrt 2 * sqrt 2)
    assert cosine_matrix([(1, 0, 1), (1, 1, 0)]).values[0, 1] == pytest.approx(0.5, abs=1e-15)


def test_cosine_zero_vector_is_degenerate():
    sim = cosine_matrix([(0, 0), (1, 2)], members=["Z", "A"])
    assert sim.degenerate == (0,)
    np.testing.assert_array_equal(sim.values, [[0.0, 0.0], [0.0, 1.0]])
    assert sim.value("A", "A") == 1.0


def test_cosine_length_mismatch():
    with pytest.raises(ValidationError):
        cosine_matrix([(1, 2), (1, 2, 3)])
    with pytest.raises(ValidationError):
        cosine_matrix([])


def test_pearson_examples():
    assert pearson_matrix([(1, 2, 3), (2, 4, 6)]).values[0, 1] == pytest.approx(1.0, abs=1e-15)
    assert pearson_matrix([(1, 2, 3), (3, 2, 1)]).values[0, 1] == pytest.approx(-1.0, abs=1e-15)
    sim = pearson_matrix([(1, 1, 1), (1, 5, 2)])
    assert sim.degenerate == (0,)
    assert math.isnan(sim.values[0, 1]) and math.isnan(sim.values[0, 0])
    assert sim.values[1, 1] == 1.0
    with pytest.raises(ValidationError):
        pearson_matrix([(1,), (2,)])
    with pytest.raises(ValidationError):
        pearson_matrix([(1, 2), (1, 2, 3)])


def test_pearson_matches_numpy():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 30, size=(6, 9))
    np.testing.assert_allclose(pearson_matrix(x).values, np.corrcoef(x), atol=1e-12)


def test_display_network_examples():
    sim = cosine_matrix([(1, 0, 1), (1, 1, 0)], members=["A", "B"])
    net = display_network(sim, 0.2)
    assert net.edges == ((0, 1, pytest.approx(0.5)),)

    low = SimilarityMatrix(("A", "B"), Kind.COSINE, np.array([[1.0, 0.19], [0.19, 1.0]]))
    net = display_network(low, 0.2)
    assert net.edges == () and net.isolated() == ["A", "B"]

    full = cosine_matrix(np.eye(4))
    assert len(display_network(full, 0.0).edges) == 6


def test_display_network_skips_undefined():
    sim = pearson_matrix([(1, 1, 1), (1, 5, 2), (2, 9, 4)])
    net = display_network(sim, -1.0)
    assert [(i, j) for i, j, _ in net.edges] == [(1, 2)]


profiles = arrays(np.int64, st.tuples(st.integers(1, 8), st.integers(1, 8)), elements=st.integers(0, 50))


@settings(max_examples=200, deadline=None)
@given(profiles, st.integers(1, 1000))
def test_cosine_properties(m, scale):
    sim = cosine_matrix(m)
    v = sim.values
    assert np.array_equal(v, v.T)
    assert ((v >= 0) & (v <= 1)).all()
    for i in range(len(m)):
        assert v[i, i] == (1.0 if m[i].any() else 0.0)
    scaled = m.copy()
    scaled[0] *= scale
    assert np.allclose(cosine_matrix(scaled).values[0], v[0], rtol=0, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(profiles, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_display_edges_monotone(m, a, b):
    sim = cosine_matrix(m)
    lo, hi = sorted((a, b))
    assert len(display_network(sim, hi).edges) <= len(display_network(sim, lo).edges)
    assert all(w >= hi for _, _, w in display_network(sim, hi).edges)


def test_similarity_matrix_wrapper():
    m = np.array([[5, 3, 0], [2, 0, 1], [0, 4, 4]])
    sim = similarity_matrix(m, ["A", "B", "C"], "cosine", "cols")
    assert sim.orientation is Orientation.COLUMNS
    np.testing.assert_array_equal(sim.values, cosine_matrix(m.T).values)
    p = similarity_matrix(m, ["A", "B", "C"], Kind.PEARSON, "rows")
    assert p.kind is Kind.PEARSON


def test_components_2x2():
    sim = SimilarityMatrix(("A", "B"), Kind.PEARSON, np.array([[1.0, 0.5], [0.5, 1.0]]))
    comp = principal_components(sim)
    np.testing.assert_allclose(comp.eigenvalues, [1.5, 0.5], atol=1e-12)
    first = comp.loadings[:, 0] / math.sqrt(1.5)
    np.testing.assert_allclose(first, [1 / math.sqrt(2)] * 2, atol=1e-12)


def test_components_identity():
    sim = SimilarityMatrix(tuple("ABCD"), Kind.PEARSON, np.eye(4))
    np.testing.assert_allclose(principal_components(sim).eigenvalues, np.ones(4), atol=1e-15)


def test_components_random_against_characteristic_polynomial():
    rng = np.random.default_rng(5)
    sim = pearson_matrix(rng.integers(0, 20, size=(5, 12)))
    comp = principal_components(sim)
    np.testing.assert_allclose(comp.eigenvalues, char_poly_eigenvalues(sim.values), atol=1e-6)
    assert comp.eigenvalues.sum() == pytest.approx(5.0, abs=1e-9)


def test_components_reconstruct_and_sign():
    rng = np.random.default_rng(11)
    sim = pearson_matrix(rng.normal(size=(7, 20)))
    comp = principal_components(sim)
    assert np.all(np.diff(comp.eigenvalues) <= 1e-12)
    np.testing.assert_allclose(comp.loadings @ comp.loadings.T, sim.values, atol=1e-6)
    for k in range(comp.n_components):
        col = comp.loadings[:, k]
        assert col[np.argmax(np.abs(col))] > 0
    assert principal_components(sim, 2).loadings.shape == (7, 2)


def test_components_errors():
    sim = pearson_matrix([(1, 1, 1), (1, 5, 2), (2, 9, 4)], members=["K", "A", "B"])
    with pytest.raises(UndefinedEntryError):
        principal_components(sim)
    clean = drop_degenerate(sim)
    assert clean.members == ("A", "B")
    assert principal_components(clean, 1).n_components == 1
    with pytest.raises(ValidationError):
        principal_components(clean, 3)


def test_jacobi_iteration_budget():
    a = np.array([[2.0, 1.0], [1.0, 3.0]])
    with pytest.raises(ConvergenceError):
        jacobi_eigh(a, max_sweeps=0)
    vals, vecs, sweeps = jacobi_eigh(a)
    np.testing.assert_allclose(vecs @ np.diag(vals) @ vecs.T, a, atol=1e-12)
    assert sweeps >= 1


def test_jacobi_deterministic():
    rng = np.random.default_rng(3)
    sim = pearson_matrix(rng.normal(size=(6, 10)))
    a = principal_components(sim)
    b = principal_components(sim)
    assert np.array_equal(a.loadings, b.loadings) and np.array_equal(a.eigenvalues, b.eigenvalues)
