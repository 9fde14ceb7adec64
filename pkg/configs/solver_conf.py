"""
Solver Configuration
수치 해석기 허용오차 및 동시성 설정 (MBSPEC_* 환경변수)
"""

from functools import lru_cache
from typing import Any, Dict
import logging

from pydantic_settings import BaseSettings, SettingsConfigDict

from configs.base_config import config
from configs.base_path import ROOT_DIR

logger = logging.getLogger(__name__)


class SolverSettings(BaseSettings):
    """솔버 설정 클래스"""

    # 동시성
    threads: int = 4

    # model
    ev_exclusion: float = 1e-9          # |E-V| < ev_exclusion*V 구간 제외
    sinc_series: float = 1e-4           # |φ| 미만이면 sin(φ)/φ 급수 사용

    # dispersion
    pole_eps: float = 1e-6
    root_xtol: float = 1e-12            # |ΔE| < root_xtol*max(1, E)
    residual_tol: float = 1e-8
    tangency_tol: float = 1e-12
    grid_divisions: int = 8             # step = π/(grid_divisions*L²)
    window_divisions: int = 1024
    max_grid_points: int = 2_000_000
    max_kappa_step: float = 0.5
    jump_fraction: float = 0.05
    plateau_c: float = 0.05
    small_l_theta: float = 0.1

    # chain / multichannel
    renorm_limit: float = 1e150
    kl_guard: float = 0.01

    model_config = SettingsConfigDict(
        env_prefix='MBSPEC_',
        case_sensitive=False,
        env_file=str(ROOT_DIR / '.env'),
        env_file_encoding='utf-8',
        extra='ignore'
    )

    def model_post_init(self, _):
        """설정 검증"""
        # MBSPEC_THREADS 는 ConfigurationManager 를 거쳐 최소 1 보장
        self.threads = config.get_int('MBSPEC_THREADS', self.threads, minimum=1)
        if self.grid_divisions < 2:
            raise ValueError("grid_divisions must be at least 2 (half a tangent quasi-period)")
        if self.window_divisions < 1 or self.max_grid_points < 16:
            raise ValueError("window_divisions and max_grid_points must be positive")

    def with_overrides(self, overrides: Dict[str, Any]) -> "SolverSettings":
        """CLI --tol-* 값 반영한 사본 반환"""
        unknown = set(overrides) - set(type(self).model_fields)
        if unknown:
            raise ValueError(f"Unknown solver settings: {sorted(unknown)}")
        if not overrides:
            return self
        # model_validate 는 환경변수를 다시 읽지 않고 타입만 검증
        return type(self).model_validate({**self.model_dump(), **overrides})

    def as_tolerances(self) -> Dict[str, Any]:
        """JSON sidecar 에 기록할 설정값 (threads 는 출력에 영향 없음)"""
        return self.model_dump(exclude={'threads'})


@lru_cache()
def get_solver_settings() -> SolverSettings:
    """솔버 설정 싱글톤 인스턴스 반환"""
    try:
        settings = SolverSettings()
        logger.debug(f"Solver configuration loaded: {settings.model_dump()}")
        return settings
    except Exception as e:
        logger.error(f"Error initializing solver settings: {e}")
        raise
