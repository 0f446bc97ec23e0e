import sys
from pathlib import Path

import numpy as np
import pytest

# Add the project root to the Python path
project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.construction import MeasurementFamily, build_measurements  # noqa: E402
from src.graph_core import build_family_graph  # noqa: E402


@pytest.fixture
def family7():
    return build_measurements(7)


@pytest.fixture
def family8():
    return build_measurements(8)


@pytest.fixture
def pentagon():
    return build_family_graph(5)


@pytest.fixture
def umbrella():
    """Pentagon orthonormal representation with the handle along |0>; top eigenvalue sqrt(5)."""
    cos_phi = 5 ** -0.25
    sin_phi = np.sqrt(1 - cos_phi ** 2)
    vectors = {}
    for j in range(5):
        angle = 4 * np.pi * j / 5
        vectors[j + 1] = np.array([cos_phi, sin_phi * np.cos(angle), sin_phi * np.sin(angle)])
    return MeasurementFamily(n=5, d=3, vectors=vectors, state=np.array([1.0, 0.0, 0.0]))

