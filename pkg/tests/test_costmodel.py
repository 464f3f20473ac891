import numpy as np
import pytest

from uqpc.costmodel import (
    CoefficientMoments,
    CostModel,
    break_even_nested,
    coefficient_variance_model,
    samples_for_budget,
)


def test_validation():
    with pytest.raises(ValueError):
        CostModel(c_total=0.0, c_xi=1.0, c_eta=1.0)
    with pytest.raises(ValueError):
        CostModel(c_total=1.0, c_xi=-1.0, c_eta=1.0)
    with pytest.raises(ValueError):
        CostModel(c_total=1.0, c_xi=1.0, c_eta=0.0)
    with pytest.raises(ValueError):
        CoefficientMoments(var_qpsi=-1.0, noise_term=1.0, b_k=1.0)
    with pytest.raises(ValueError):
        CoefficientMoments(var_qpsi=1.0, noise_term=-1.0, b_k=1.0)
    with pytest.raises(ValueError):
        CoefficientMoments(var_qpsi=1.0, noise_term=1.0, b_k=0.0)


def test_samples_for_budget():
    assert samples_for_budget(CostModel(1000.0, 0.0, 1.0), 1) == pytest.approx(1000.0)
    assert samples_for_budget(CostModel(1000.0, 1.0, 1.0), 1) == pytest.approx(500.0)
    assert samples_for_budget(CostModel(1200.0, 2.0, 1.0), 10) == pytest.approx(100.0)
    with pytest.raises(ValueError):
        samples_for_budget(CostModel(1000.0, 1.0, 1.0), 0)


def test_variance_model_by_hand():
    cost = CostModel(c_total=1000.0, c_xi=0.0, c_eta=1.0)
    mom = CoefficientMoments(var_qpsi=1.0, noise_term=2.0, b_k=1.0)
    # (1 + 2/1) * (0 + 1) / 1000
    assert coefficient_variance_model(cost, mom, 1) == pytest.approx(0.003, abs=1e-18)
    # equivalently (var + noise/n_eta)/n_xi with n_xi from the budget
    n_xi = samples_for_budget(cost, 4)
    assert coefficient_variance_model(cost, mom, 4) == pytest.approx(
        (1.0 + 2.0 / 4.0) / n_xi, rel=1e-15
    )
    with pytest.raises(ValueError):
        coefficient_variance_model(cost, mom, 0)


def test_variance_model_scalings():
    mom = CoefficientMoments(var_qpsi=0.7, noise_term=1.3, b_k=0.2)
    v1 = coefficient_variance_model(CostModel(500.0, 3.0, 1.0), mom, 5)
    v2 = coefficient_variance_model(CostModel(1000.0, 3.0, 1.0), mom, 5)
    assert v2 == pytest.approx(0.5 * v1, rel=1e-15)
    # pure noise with free sample setup: total histories is all that counts,
    # so the split cannot matter
    flat = CoefficientMoments(var_qpsi=0.0, noise_term=1.3, b_k=0.2)
    free = CostModel(500.0, 0.0, 1.0)
    assert coefficient_variance_model(free, flat, 1) == pytest.approx(
        coefficient_variance_model(free, flat, 37), rel=1e-15
    )
    # noise-free: every extra history per sample at fixed budget is waste
    quiet = CoefficientMoments(var_qpsi=0.7, noise_term=0.0, b_k=0.2)
    assert coefficient_variance_model(free, quiet, 37) == pytest.approx(
        37.0 * coefficient_variance_model(free, quiet, 1), rel=1e-15
    )


def test_break_even_by_hand():
    mom = CoefficientMoments(var_qpsi=1.0, noise_term=2.0, b_k=1.0)
    assert break_even_nested(CostModel(100.0, 0.0, 1.0), mom) == 0.0
    assert break_even_nested(CostModel(100.0, 5.0, 1.0), mom) == pytest.approx(10.0)
    quiet = CoefficientMoments(var_qpsi=1.0, noise_term=0.0, b_k=1.0)
    assert break_even_nested(CostModel(100.0, 5.0, 1.0), quiet) == 0.0
    degenerate = CoefficientMoments(var_qpsi=0.0, noise_term=1.0, b_k=1.0)
    with pytest.raises(ValueError):
        break_even_nested(CostModel(100.0, 5.0, 1.0), degenerate)


def test_break_even_consistent_with_model():
    # for n_eta above the threshold the direct split must beat nested, below
    # it nested must beat direct, across random parameter sets
    rng = np.random.default_rng(41001)
    for _ in range(100):
        cost = CostModel(
            c_total=float(rng.uniform(10.0, 1e4)),
            c_xi=float(rng.uniform(0.0, 20.0)),
            c_eta=float(rng.uniform(0.1, 5.0)),
        )
        mom = CoefficientMoments(
            var_qpsi=float(rng.uniform(0.01, 2.0)),
            noise_term=float(rng.uniform(0.0, 2.0)),
            b_k=float(rng.uniform(0.05, 1.0)),
        )
        threshold = break_even_nested(cost, mom)
        direct = coefficient_variance_model(cost, mom, 1)
        for n_eta in (2.0, 7.0, 40.0):
            if abs(n_eta - threshold) < 1e-9:
                continue
            nested = coefficient_variance_model(cost, mom, n_eta)
            if n_eta > threshold:
                assert direct < nested * (1.0 + 1e-12)
            else:
                assert nested < direct * (1.0 + 1e-12)
