import numpy as np
import pytest

from cmlhdc import backend


def rng_of(seed=0):
    return np.random.default_rng(seed)


def test_backend_name_is_known():
    assert backend.backend_name() in ("numba", "numpy")


@pytest.mark.skipif(backend._sum_clip_nb is None, reason="numba unavailable")
def test_sum_clip_backends_agree():
    rng = rng_of(1)
    for b, d in ((3, 1000), (25, 5000), (7, 64)):
        stack = rng.choice(np.array([-1, 1], dtype=np.int8), size=(b, d))
        assert np.array_equal(backend._sum_clip_np(stack),
                              backend._sum_clip_nb(stack))


@pytest.mark.skipif(backend._bipolar_matvec_nb is None, reason="numba unavailable")
def test_bipolar_matvec_backends_agree():
    rng = rng_of(2)
    for n, d in ((10, 1000), (100, 5000)):
        mat = rng.choice(np.array([-1, 1], dtype=np.int8), size=(n, d))
        vec = rng.choice(np.array([-1, 1], dtype=np.int8), size=d)
        assert np.array_equal(backend._bipolar_matvec_np(mat, vec),
                              backend._bipolar_matvec_nb(mat, vec))


def test_numpy_fallback_selected_by_env(tmp_path):
    import subprocess
    import sys

    code = ("import cmlhdc.backend as b; print(b.backend_name())")
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "CMLHDC_BACKEND": "numpy"},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
