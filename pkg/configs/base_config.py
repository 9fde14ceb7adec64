"""
Base configuration manager for environment variables and the project .env file.
"""

import os
import logging
from typing import Dict, Any, Optional
from dotenv import load_dotenv
from .base_path import get_project_root

logger = logging.getLogger(__name__)


class ConfigurationManager:
    """Configuration manager for local runs (system env > .env > defaults)."""

    ENVIRONMENTS = ('dev', 'prd')

    def __init__(self, env_file: Optional[str] = None):
        logger.debug("Initializing ConfigurationManager...")

        # 1. 시스템 환경변수 저장 (우선순위 높음, .env 로드 전에 스냅샷)
        self._system_env: Dict[str, str] = dict(os.environ)

        # 2. .env 파일 로드
        self._dotenv: Dict[str, str] = {}
        self._load_env_file(env_file)

        # 3. 환경 설정
        self._environment = str(self.get('APP_ENV', 'dev')).lower()
        if self._environment not in self.ENVIRONMENTS:
            logger.warning(f"Invalid APP_ENV: {self._environment}. Using 'dev' as default")
            self._environment = 'dev'

    def _load_env_file(self, env_file: Optional[str]) -> None:
        """환경 설정을 위한 .env 파일 로드"""
        try:
            env_path = get_project_root() / (env_file or '.env')
            if not env_path.exists():
                logger.debug(f".env file not found at {env_path}")
                return

            load_dotenv(env_path, override=False)  # 시스템 환경변수 우선
            for key, value in os.environ.items():
                if key not in self._system_env:
                    self._dotenv[key] = value
            logger.debug(f"Loaded .env file: {len(self._dotenv)} keys")
        except Exception as e:
            logger.error(f"Error loading .env file: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        설정값 조회 (우선순위: 시스템 환경변수 > .env 파일 > 기본값)
        """
        value = self._system_env.get(key)
        if value is None:
            value = os.getenv(key)
        if value is None:
            value = self._dotenv.get(key)
        return default if value in (None, '') else value

    def get_int(self, key: str, default: int, minimum: Optional[int] = None) -> int:
        """정수 설정값 조회 (잘못된 값이면 기본값 사용)"""
        try:
            value = int(self.get(key, default))
        except (ValueError, TypeError) as e:
            logger.warning(f"Invalid {key} value, using default value {default}: {e}")
            value = default
        return value if minimum is None else max(minimum, value)

    def is_development(self) -> bool:
        """개발 환경 여부 확인"""
        return self._environment == 'dev'

    def is_production(self) -> bool:
        """운영 환경 여부 확인"""
        return self._environment == 'prd'

    def get_environment(self) -> str:
        """현재 환경 반환"""
        return self._environment

    def log_level(self) -> str:
        """기본 로그 레벨 (MBSPEC_LOG_LEVEL > 환경별 기본값, prd 는 WARNING)"""
        default = 'WARNING' if self.is_production() else 'INFO'
        return str(self.get('MBSPEC_LOG_LEVEL', default)).upper()

    def __getattr__(self, name: str) -> Any:
        """속성 스타일 접근 지원"""
        if name.startswith('_'):
            raise AttributeError(name)
        value = self.get(name)
        if value is not None:
            return value
        raise AttributeError(f"Configuration has no attribute '{name}'")


# Global configuration instance
config = ConfigurationManager()
