import numpy as np
import pytest


@pytest.fixture(autouse=True)
def _seed_numpy_global():
    # tests draw through explicit RngState streams; the global seed only
    # pins stray scipy internals so reruns stay byte-identical
    np.random.seed(12345)
    yield
