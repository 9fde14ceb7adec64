# collectors/convergence_collector.py

import asyncio
import logging
from pathlib import Path
from typing import Dict, List, Optional

from configs.run_conf import RunConfig
from configs.solver_conf import SolverSettings, get_solver_settings
from modules.chain import ConvergenceRow, convergence_report, effective_medium_transmission
from modules.collectors import BaseCollector
from modules.model import Regime, SystemConfig
from modules.result_writer import ResultWriter

logger = logging.getLogger(__name__)

CONVERGENCE_HEADER = ('n', 'distance_literal', 'distance_unimodular', 'T', 'R')


class ConvergenceCollector(BaseCollector):
    """유한 사슬 T(n) 과 극한 행렬까지의 거리 측정"""

    def __init__(self, run_config: RunConfig, settings: SolverSettings):
        super().__init__(run_config, settings)
        self.rows: Dict[float, List[ConvergenceRow]] = {}

    def system_config(self, c: float) -> SystemConfig:
        """탐침 에너지로 영역 결정"""
        regime = Regime.ABOVE if self.config.energy > self.config.V else Regime.BELOW
        return self.config.system_config(c).with_regime(regime)

    async def collect(self) -> Dict[float, List[ConvergenceRow]]:
        for c in self.config.c_values:
            cfg = self.system_config(c)

            # n 값마다 독립 계산, 결과는 n 순서로 병합
            def measure(n: int, cfg: SystemConfig = cfg) -> List[ConvergenceRow]:
                return convergence_report(cfg, self.config.energy, [n], self.settings)

            chunks = await self.run_chunked(measure, sorted(set(self.config.n_list)))
            self.rows[c] = [row for chunk in chunks for row in chunk]
            last = self.rows[c][-1]
            logger.info(f"c={c}: n={last.n} T={last.T:.12g} distance={last.distance_literal:.3e}")
        return self.rows

    async def process(self) -> List[Path]:
        writer = ResultWriter(self.config.out)
        paths: List[Path] = []
        summary = []
        for c in sorted(self.rows):
            cfg = self.system_config(c)
            rows = [(r.n, r.distance_literal, r.distance_unimodular, r.T, r.R) for r in self.rows[c]]
            paths.append(writer.write_rows(f"converge_{writer.c_suffix(c)}.csv", CONVERGENCE_HEADER, rows))
            summary.append({
                'c': c,
                'energy': self.config.energy,
                'effective_medium_T': effective_medium_transmission(cfg, self.config.energy),
                'rows': [dict(zip(CONVERGENCE_HEADER, row)) for row in rows],
            })
        paths.append(writer.write_json('converge.json', {
            'config': self.config.model_dump(mode='json'),
            'tolerances': self.settings.as_tolerances(),
            'runs': summary,
        }))
        return paths


async def cmd_converge(run_config: RunConfig, settings: Optional[SolverSettings] = None) -> List[Path]:
    collector = ConvergenceCollector(run_config, settings or get_solver_settings())
    await collector.collect()
    return await collector.process()


if __name__ == "__main__":
    from modules.common_logger import setup_logger

    setup_logger()
    asyncio.run(cmd_converge(RunConfig.from_sources({'subcommand': 'converge'})))
