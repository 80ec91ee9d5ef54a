import os
import subprocess
import sys

import numpy as np

from floatlab.bodies import lp_ball
from floatlab.floating import floating_body


def test_thread_count_does_not_change_results(monkeypatch):
    monkeypatch.setenv("FLOATLAB_THREADS", "1")
    serial = floating_body(lp_ball(2, 3), 0.1, 2048).support_levels
    monkeypatch.setenv("FLOATLAB_THREADS", "4")
    threaded = floating_body(lp_ball(2, 3), 0.1, 2048).support_levels
    assert np.array_equal(serial, threaded)


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, FLOATLAB_PURE_PYTHON="1")
    code = "from floatlab import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.strip() == "python"
