import os
import subprocess
import sys

import numpy as np
import pytest

from hbar_dicke import _fallback, kernels

from oracles import naive_phase_sum

try:
    from hbar_dicke import _kernels as compiled
except ImportError:  # pragma: no cover - build without the extension
    compiled = None

BACKENDS = [pytest.param(_fallback, id="python")]
BACKENDS.append(pytest.param(compiled, id="cython",
                             marks=pytest.mark.skipif(compiled is None, reason="extension not built")))


@pytest.mark.parametrize("impl", BACKENDS)
def test_phase_sum_matches_naive_loop(impl, rng):
    w = rng.normal(size=5) + 1j * rng.normal(size=5)
    r = rng.normal(scale=10, size=5)
    t = np.linspace(0, 2, 37)
    got = impl.phase_sum(np.ascontiguousarray(w), np.ascontiguousarray(r), t)
    np.testing.assert_allclose(got, naive_phase_sum(w, r, t), rtol=0, atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS)
def test_phase_sum_rows_matches_rowwise(impl, rng):
    w = rng.normal(size=(4, 6)) + 1j * rng.normal(size=(4, 6))
    r = rng.normal(scale=30, size=6)
    t = np.linspace(0, 1, 11)
    got = impl.phase_sum_rows(np.ascontiguousarray(w), r, t)
    assert got.shape == (11, 4)
    for k in range(4):
        np.testing.assert_allclose(got[:, k], naive_phase_sum(w[k], r, t), atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS)
def test_length_mismatch_rejected(impl):
    with pytest.raises(ValueError):
        impl.phase_sum(np.ones(3, complex), np.ones(2), np.zeros(1))


def test_backend_flag_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    forced = bool(os.environ.get("HBAR_DICKE_PURE_PYTHON"))
    assert kernels.BACKEND == ("cython" if compiled is not None and not forced else "python")


def test_env_forces_fallback():
    code = "import hbar_dicke.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, HBAR_DICKE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
