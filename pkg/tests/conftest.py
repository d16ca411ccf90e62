"""测试夹具"""

from pathlib import Path

import pytest

from lie_sw.config import Settings
from lie_sw.services.curvature import Metric
from lie_sw.services.lie_algebra import LieAlgebra

from .corpus import SIGNATURES

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture(params=sorted(SIGNATURES))
def diagonal_metric(request) -> Metric:
    return Metric.diag(SIGNATURES[request.param])


@pytest.fixture
def heisenberg() -> LieAlgebra:
    """Heisenberg × R: [e1, e2] = e3"""
    return LieAlgebra(4, {(1, 2, 3): 1})


@pytest.fixture
def su2_r() -> LieAlgebra:
    """su(2) ⊕ R: [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2"""
    return LieAlgebra(4, {(1, 2, 3): 1, (2, 3, 1): 1, (1, 3, 2): -1})


@pytest.fixture
def settings() -> Settings:
    return Settings(parallel_cases=False, log_to_file=False)


@pytest.fixture
def sample_path():
    def resolve(name: str) -> str:
        return str(SAMPLES / name)
    return resolve
