import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from admmrecon import ADMMReconstructor, MaskSpec, TransformPlan, random_mask, reconstruct
from admmrecon.phantom import shepp_logan
from admmrecon.solver import SolverConfig


@pytest.fixture
def problem():
    x = shepp_logan(32)
    mask = random_mask(MaskSpec("random", 32, 32, target_fraction=0.4, seed=2))
    return x, TransformPlan(32).forward(x) * mask, mask


def test_params_round_trip():
    est = ADMMReconstructor(mu2=25.0, max_iters=10)
    assert est.get_params() == {"mu1": 10.0, "mu2": 25.0, "max_iters": 10, "tol": 1e-6, "record_trace": True}
    other = clone(est).set_params(mu1=3.0)
    assert other.mu1 == 3.0 and est.mu1 == 10.0
    assert "mu2=25.0" in repr(est)


def test_fit_matches_functional_api(problem):
    x, y0, mask = problem
    est = ADMMReconstructor(max_iters=40, tol=0.0).fit(y0, mask, reference=x)
    image, report = reconstruct(y0, mask, SolverConfig(max_iters=40, tol=0.0))
    np.testing.assert_array_equal(est.image_, image)
    assert est.n_iter_ == report.n_iter == 40
    assert est.score(x) == pytest.approx(est.report_.final_psnr)
    assert est.score(x) > est.report_.initial_psnr
    np.testing.assert_allclose(est.zero_filled_, TransformPlan(32).inverse(y0))


def test_fit_transform_returns_image(problem):
    _, y0, mask = problem
    est = ADMMReconstructor(max_iters=5)
    np.testing.assert_array_equal(est.fit_transform(y0, mask), est.image_)


def test_invalid_params_raise_at_fit(problem):
    _, y0, mask = problem
    with pytest.raises(ValueError, match="mu2"):
        ADMMReconstructor(mu2=0).fit(y0, mask)


def test_score_before_fit():
    with pytest.raises(NotFittedError):
        ADMMReconstructor().score(np.ones((4, 4)))


def test_mask_shape_checked(problem):
    _, y0, _ = problem
    with pytest.raises(ValueError):
        ADMMReconstructor().fit(y0, np.ones((8, 8), bool))
