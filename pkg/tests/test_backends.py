import os
import subprocess
import sys

import pytest

from flasque import available_backends, backend, use_backend
from flasque.klein import verify_all

SCRIPT = """
import flasque
from flasque.cohomology import h1
from flasque.lattices import augmentation_kernel
g = flasque.klein_four()
print(flasque.backend(), h1(g.whole, augmentation_kernel(g)[0]))
"""


def test_pure_python_forced_by_environment():
    env = dict(os.environ, FLASQUE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "Z/4"]


def test_default_backend_prefers_compiled():
    expected = "compiled" if "compiled" in available_backends() else "python"
    assert backend() == expected


@pytest.mark.skipif("compiled" not in available_backends(), reason="compiled kernel not built")
def test_klein_suite_identical_on_both_backends(kd):
    with use_backend("python"):
        py = verify_all(kd).to_json()
    with use_backend("compiled"):
        c = verify_all(kd).to_json()
    assert py == c
