"""
Run Configuration
CLI 플래그 / --config JSON / 프리셋을 병합한 실행 설정
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union
import json
import logging

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from configs.preset_conf import preset_registry
from modules.errors import ConfigError
from modules.model import Regime, SystemConfig

logger = logging.getLogger(__name__)

Subcommand = Literal['spectrum', 'bands', 'converge', 'multichannel', 'table1']


def _split(text: str, sep: str, count: int, label: str) -> List[str]:
    parts = [p.strip() for p in str(text).split(sep)]
    if len(parts) != count or any(p == '' for p in parts):
        raise ConfigError(f"Invalid {label} '{text}'")
    return parts


def parse_kappa_grid(text: str) -> Tuple[float, float, float]:
    """'a:b:step' -> (a, b, step)"""
    try:
        start, stop, step = (float(p) for p in _split(text, ':', 3, 'kappa grid (expected a:b:step)'))
    except ValueError as e:
        raise ConfigError(f"Invalid kappa grid '{text}': {e}") from None
    return start, stop, step


def parse_window(text: str) -> Tuple[float, float]:
    """'lo:hi' -> (lo, hi)"""
    try:
        lo, hi = (float(p) for p in _split(text, ':', 2, 'energy window (expected lo:hi)'))
    except ValueError as e:
        raise ConfigError(f"Invalid energy window '{text}': {e}") from None
    return lo, hi


def parse_branches(text: str) -> Tuple[int, int]:
    """'n0:n1' -> (n0, n1)"""
    try:
        n0, n1 = (int(p) for p in _split(text, ':', 2, 'branch window (expected n0:n1)'))
    except ValueError as e:
        raise ConfigError(f"Invalid branch window '{text}': {e}") from None
    return n0, n1


def parse_float_list(text: str) -> List[float]:
    """'v1,v2,...' -> [v1, v2, ...]"""
    try:
        values = [float(p) for p in str(text).split(',') if p.strip()]
    except ValueError as e:
        raise ConfigError(f"Invalid list '{text}': {e}") from None
    if not values:
        raise ConfigError(f"Empty list '{text}'")
    return values


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in (p.strip() for p in str(text).split(',')) if v]
    except ValueError as e:
        raise ConfigError(f"Invalid integer list '{text}': {e}") from None


class RunConfig(BaseModel):
    """실행 설정 (모든 기본값은 sidecar JSON 에 그대로 기록됨)"""

    model_config = ConfigDict(extra='forbid')

    subcommand: Subcommand = 'spectrum'
    preset: Optional[str] = None

    # 시스템
    V: float = 15.0
    L: float = 1.0
    c: float = 1.0
    regime: Regime = Regime.ABOVE
    c_sweep: Optional[List[float]] = None

    # 분산관계 스캔
    mode: Literal['paper-faithful', 'first-principles'] = 'paper-faithful'
    method: Literal['exact', 'small-l'] = 'exact'
    kappa_grid: Tuple[float, float, float] = (0.0, 25.0, 0.05)
    e_window: Optional[Tuple[float, float]] = None
    branches: Tuple[int, int] = (0, 3)

    # converge
    energy: float = 16.0
    n_list: List[int] = Field(default_factory=lambda: [2 ** i for i in range(15)])

    # multichannel
    mc_channels: List[int] = Field(default_factory=lambda: [1, 3, 10, 100])
    mc_scatterers: List[int] = Field(default_factory=lambda: [10 ** 6])
    mc_wavenumbers: List[float] = Field(default_factory=lambda: [1e3])
    mc_beta: Optional[float] = None

    # table1
    n_max: int = 3

    # 출력
    out: str = 'mbspec_out'
    format: Literal['csv', 'json'] = 'csv'
    threads: Optional[int] = None
    tolerances: Dict[str, Union[int, float]] = Field(default_factory=dict)

    @field_validator('threads')
    @classmethod
    def _positive_threads(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError('threads must be at least 1')
        return v

    @model_validator(mode='after')
    def _check_ranges(self) -> 'RunConfig':
        start, stop, step = self.kappa_grid
        if not step > 0 or stop < start:
            raise ValueError(f'kappa grid {start}:{stop}:{step} is empty')
        if self.branches[1] < self.branches[0]:
            raise ValueError(f'branch window {self.branches[0]}:{self.branches[1]} is empty')
        if self.c_sweep is not None and not self.c_sweep:
            raise ValueError('c sweep is empty')
        if self.n_max < 0:
            raise ValueError('n_max must be non-negative')
        return self

    @property
    def c_values(self) -> List[float]:
        return list(self.c_sweep) if self.c_sweep else [self.c]

    def system_config(self, c: Optional[float] = None) -> SystemConfig:
        return SystemConfig(V=self.V, L=self.L, c=self.c if c is None else c, regime=self.regime)

    @classmethod
    def from_sources(cls, cli: Dict[str, Any], config_path: Optional[str] = None) -> 'RunConfig':
        """우선순위: 프리셋 < --config JSON < CLI 플래그"""
        file_values: Dict[str, Any] = {}
        if config_path:
            path = Path(config_path)
            try:
                file_values = json.loads(path.read_text(encoding='utf-8'))
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"Cannot read config file {path}: {e}") from None
            if not isinstance(file_values, dict):
                raise ConfigError(f"Config file {path} must contain a JSON object")

        overrides = {k: v for k, v in cli.items() if v is not None}
        preset_name = overrides.get('preset') or file_values.get('preset')

        data: Dict[str, Any] = {}
        if preset_name:
            data.update(preset_registry.get(preset_name).run_defaults())
        data.update(file_values)
        data.update(overrides)
        if 'tolerances' in file_values and 'tolerances' in overrides:
            data['tolerances'] = {**file_values['tolerances'], **overrides['tolerances']}

        try:
            run_config = cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid run configuration: {e}") from None
        logger.debug(f"Run configuration: {run_config.model_dump()}")
        return run_config
