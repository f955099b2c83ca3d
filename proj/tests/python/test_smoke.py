import math

import pytest

import advcurate as ac


def test_combine_and_intervals():
    m = ac.LabelMatrix(["a", "b", "c"], [[1, 1, 2], [0, 0, 0]])
    assert m.num_samples == 2 and m.num_classes == 2
    w = ac.majority_weights(m)
    lab = ac.combine(m, w, 0)
    assert lab.label == 1
    assert lab.confidence == pytest.approx(math.exp(2) / (math.exp(2) + math.exp(1)))
    cis = ac.intervals_for_matrix(m, w)
    assert cis[1].lower == 0.0 and cis[1].upper == 1.0


def test_clopper_pearson_and_spearman():
    ci = ac.clopper_pearson(10, 5.0, 0.05)
    assert ci.lower == pytest.approx(0.18708602844739855, abs=1e-9)
    assert abs(ac.spearman_p_value(-0.730, 10) - 0.017) <= 0.001
    rho, p = ac.spearman([0.9, 0.8, 0.7, 0.6])
    assert rho == -1.0 and p == 0.0
    assert ac.validity_verdict(0.964, 0.0) == "invalid"


def test_cliques_and_errors():
    assert ac.maximal_cliques(4, [(0, 1), (1, 2), (0, 2)]) == [[0, 1, 2], [3]]
    with pytest.raises(ValueError):
        ac.clopper_pearson(3, 4.0, 0.05)
    with pytest.raises(ValueError):
        ac.prefix_sizes(5, 0)


def test_pipeline_on_benchmark():
    matrix, truth, hard = ac.generate_benchmark(1, 2000)
    assert matrix.num_lfs == 12 and len(truth) == 2000 and len(hard) == 2000
    pruned = ac.prune(matrix, 0.5)
    assert len(pruned["kept"]) == 8
    out = ac.run_pipeline(matrix, truth)
    assert out["report"]["verdict"] == "valid_adversarial"
    assert out["report"]["rho"] <= -0.7
    assert out["prefix_sizes"][-1] == 2000
