"""
Scan Preset Configuration
그림 캡션의 파라미터 세트 (fig1 ~ fig7)
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Tuple
import logging

from modules.errors import ConfigError

logger = logging.getLogger(__name__)


def _c_ratios(count: int) -> Tuple[float, ...]:
    """c = 0.2·n, n = 1..count"""
    return tuple(round(0.2 * n, 10) for n in range(1, count + 1))


@dataclass(frozen=True)
class ScanPreset:
    """스캔 프리셋 데이터클래스"""
    name: str
    V: float
    L: float
    regime: str
    c_values: Tuple[float, ...]
    kappa_grid: Tuple[float, float, float] = (0.0, 25.0, 0.05)
    branches: Tuple[int, int] = (0, 3)
    mode: str = 'paper-faithful'
    description: str = ''

    def as_dict(self) -> Dict[str, Any]:
        """설정을 딕셔너리로 변환"""
        return asdict(self)

    def run_defaults(self) -> Dict[str, Any]:
        """RunConfig 병합용 기본값"""
        return {
            'preset': self.name,
            'V': self.V,
            'L': self.L,
            'regime': self.regime,
            'c_sweep': list(self.c_values),
            'kappa_grid': self.kappa_grid,
            'branches': self.branches,
            'mode': self.mode,
        }


class PresetRegistry:
    """프리셋 관리자"""

    DEFAULT_PRESETS = (
        ScanPreset('fig1', V=15.0, L=100.0, regime='above', c_values=_c_ratios(9),
                   description='large L above the barrier'),
        ScanPreset('fig2', V=15.0, L=5.0, regime='above', c_values=_c_ratios(9),
                   description='intermediate L above the barrier'),
        ScanPreset('fig3', V=15.0, L=0.3, regime='above', c_values=_c_ratios(9),
                   description='small L above the barrier'),
        ScanPreset('fig4', V=15.0, L=30.0, regime='below', c_values=_c_ratios(14),
                   description='large L below the barrier'),
        ScanPreset('fig5', V=15.0, L=5.0, regime='below', c_values=_c_ratios(14),
                   description='intermediate L below the barrier'),
        ScanPreset('fig6', V=15.0, L=0.8, regime='below', c_values=_c_ratios(14),
                   description='small L below the barrier'),
        ScanPreset('fig7', V=15.0, L=0.278, regime='below', c_values=_c_ratios(14),
                   description='recurring gaps below the barrier'),
    )

    def __init__(self):
        self._presets: Dict[str, ScanPreset] = {p.name: p for p in self.DEFAULT_PRESETS}

    def names(self) -> List[str]:
        return sorted(self._presets)

    def get(self, name: str) -> ScanPreset:
        """이름으로 프리셋 조회"""
        try:
            return self._presets[name.lower()]
        except KeyError:
            raise ConfigError(f"Unknown preset '{name}'. Available: {', '.join(self.names())}") from None


# 전역 인스턴스
preset_registry = PresetRegistry()
