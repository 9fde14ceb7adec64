from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Awaitable, Callable, List, Sequence, TypeVar
import asyncio
import logging

from configs.run_conf import RunConfig
from configs.solver_conf import SolverSettings

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


class BaseCollector(ABC):
    """스캔 실행을 위한 기본 콜렉터 클래스 (collect: 계산, process: 출력)"""

    def __init__(self, run_config: RunConfig, settings: SolverSettings):
        self.config = run_config
        self.settings = settings

    @property
    def threads(self) -> int:
        return max(1, self.config.threads or self.settings.threads)

    async def run_chunked(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        items 를 스레드 수 단위 청크로 asyncio.to_thread 에 분배.
        결과는 입력 순서 그대로 반환
        """
        results: List[R] = []
        chunk_size = self.threads
        for i in range(0, len(items), chunk_size):
            chunk = items[i:i + chunk_size]
            tasks: List[Awaitable[R]] = [asyncio.to_thread(func, item) for item in chunk]
            results.extend(await asyncio.gather(*tasks))
        return results

    @abstractmethod
    async def collect(self) -> Any:
        """계산 수행 메서드"""
        pass

    @abstractmethod
    async def process(self) -> List[Path]:
        """결과 기록 메서드 (작성한 파일 경로 반환)"""
        pass
