import json

import numpy as np
import pytest

import _dcd


def test_graph_roundtrip():
    g = _dcd.DirectedGraph(3, [(0, 1), (1, 2), (0, 1)])
    assert g.num_nodes == 3
    assert g.num_edges == 2  # duplicate collapsed
    assert g.has_edge(0, 1)
    assert not g.has_edge(1, 0)
    assert g.out_neighbors(0) == [1]
    assert g.in_neighbors(2) == [1]
    assert g.edge_list() == [(0, 1), (1, 2)]


def test_params_json_roundtrip():
    cfg = {
        "K": 2,
        "B": [1.0, 0.4, 0.4, 1.0],
        "n": 50,
        "seed": 3,
        "theta_spec": [[0.5, 0.05], [0.1, 0.05], [0.6, 0.4]],
        "delta_same_as_theta": True,
        "label_proportions": [0.5, 0.5],
    }
    p = _dcd.params_from_json(json.dumps(cfg))
    assert p.K == 2
    assert p.n == 50
    assert p.B.shape == (2, 2)
    np.testing.assert_allclose(p.theta, p.delta)
    back = _dcd.params_from_json(_dcd.params_to_json(p))
    np.testing.assert_allclose(back.theta, p.theta)
    assert back.labels == p.labels


def test_sampling_is_deterministic():
    p = _dcd.scenario_params("dcbm_symmetric_dense", 80, 11)
    a = _dcd.sample_adjacency(p, 4)
    b = _dcd.sample_adjacency(p, 4)
    assert a.edge_list() == b.edge_list()
    assert a.edge_list() != _dcd.sample_adjacency(p, 5).edge_list()


def test_theoretical_svd_matches_numpy():
    p = _dcd.scenario_params("sbm_symmetric", 60, 2)
    u, sigma, v = _dcd.theoretical_svd(p)
    omega = _dcd.expected_matrix(p)
    np.testing.assert_allclose(u @ np.diag(sigma) @ v.T, omega, atol=1e-10)
    sv = np.linalg.svd(omega, compute_uv=False)
    np.testing.assert_allclose(sigma, sv[:2], rtol=1e-10)


def test_pipeline_and_misclustering():
    p = _dcd.scenario_params("sbm_symmetric", 150, 21)
    g = _dcd.sample_adjacency(p, 6)
    res = _dcd.run_pipeline(g, 2, algorithm="dscore", approach="entire", seed=9)
    assert len(res.labels) == 150
    assert res.features.shape == (150, 2)
    report = _dcd.misclustering(res.labels, p.labels, 2)
    assert 0.0 <= report.rate <= 1.0
    attach = _dcd.run_pipeline(g, 2, algorithm="dscore",
                               approach="intersection_attach", seed=9)
    assert set(attach.core).isdisjoint(attach.attached)


def test_run_simulation_schema():
    cfg = {
        "scenario": "sbm_symmetric",
        "n_grid": [60],
        "replicates": 2,
        "roster": ["dscore"],
        "approaches": ["entire"],
        "seed": 1,
    }
    csv, report_json = _dcd.run_simulation(json.dumps(cfg))
    header = csv.splitlines()[0]
    assert header == ("scenario,n,algorithm,approach,mean_count,mean_rate,"
                      "stderr,replicates")
    cells = json.loads(report_json)["cells"]
    assert len(cells) == 1
    assert cells[0]["algorithm"] == "dscore"
    assert cells[0]["replicates"] + cells[0]["failed_replicates"] == 2


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        _dcd.load_graph("/nonexistent/path")
    with pytest.raises(ValueError):
        _dcd.misclustering([0, 1], [0], 2)
    g = _dcd.DirectedGraph(4, [(0, 1), (2, 3)])
    with pytest.raises(ArithmeticError):
        _dcd.run_pipeline(g, 2, algorithm="opca",
                          approach="intersection_attach", seed=1)
