import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# keep the expensive scan cache inside the workspace so repeated runs reuse it
os.environ.setdefault("DPK_CACHE_DIR", str(Path(__file__).parent.parent / ".dpk-cache"))

from dpk.lattice import PicLattice  # noqa: E402
from dpk.weyl import closure_matrices  # noqa: E402


@pytest.fixture(scope="session")
def lattices():
    return {d: PicLattice(d) for d in range(1, 9)}


@pytest.fixture(scope="session")
def weyl_mats():
    """Full Weyl groups for the enumerable degrees, as int16 arrays."""
    return {d: closure_matrices(PicLattice(d)) for d in (6, 5, 4, 3)}


@pytest.fixture(scope="session")
def e6_trace_set(weyl_mats):
    import numpy as np

    return {int(t) for t in np.trace(weyl_mats[3], axis1=1, axis2=2)}
