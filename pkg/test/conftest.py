import sys
from pathlib import Path

import pytest

# app.py 와 같은 방식으로 프로젝트 루트를 import 경로에 추가
project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from configs.solver_conf import SolverSettings  # noqa: E402
from modules.model import Regime, SystemConfig  # noqa: E402


@pytest.fixture
def settings() -> SolverSettings:
    return SolverSettings()


@pytest.fixture
def unit_above() -> SystemConfig:
    """V=1, L=1, c=1 (V/(1+c) = 0.5)"""
    return SystemConfig(V=1.0, L=1.0, c=1.0, regime=Regime.ABOVE)


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(20240611)
