# collectors/multichannel_collector.py

import logging
from pathlib import Path
from typing import Dict, List, Optional

from configs.run_conf import RunConfig
from configs.solver_conf import SolverSettings, get_solver_settings
from modules.collectors import BaseCollector
from modules.multichannel import MultiChannelSpec, bounded_regime_check
from modules.result_writer import ResultWriter

logger = logging.getLogger(__name__)

MULTICHANNEL_HEADER = ('system', 'N', 'n', 'k', 'l', 'Re_R', 'Im_R', 'R2', 'T_prob', 'k_beta', 'regime', 'R2_limit')


class MultiChannelCollector(BaseCollector):
    """채널 수 / 산란체 수 / 파수 스윕"""

    def __init__(self, run_config: RunConfig, settings: SolverSettings):
        super().__init__(run_config, settings)
        self.reports: List[Dict] = []

    def specs(self) -> List[MultiChannelSpec]:
        cfg = self.config
        specs = []
        for N in cfg.mc_channels:
            for k in cfg.mc_wavenumbers:
                specs.extend(MultiChannelSpec.bounded(N, n, cfg.L, k) for n in cfg.mc_scatterers)
                # β 가 주어지면 같은 (N, k) 의 무한계 근사 행을 덧붙임
                if cfg.mc_beta is not None:
                    specs.append(MultiChannelSpec.unbounded(N, k, cfg.mc_beta))
        return specs

    async def collect(self) -> List[Dict]:
        self.reports = [bounded_regime_check(spec, self.settings) for spec in self.specs()]
        logger.info(f"Evaluated {len(self.reports)} multichannel specs")
        return self.reports

    async def process(self) -> List[Path]:
        writer = ResultWriter(self.config.out)
        rows = [
            ('bounded' if r['n'] is not None else 'unbounded', r['N'], r['n'], r['k'], r['l'],
             r['R_exact'].real, r['R_exact'].imag, r['R2_exact'], r['T_prob'], r['k_beta'], r['regime'], r['R2_limit'])
            for r in self.reports
        ]
        paths = [writer.write_rows('multichannel.csv', MULTICHANNEL_HEADER, rows)]
        if self.config.format == 'json':
            paths.append(writer.write_json('multichannel.json', {
                'config': self.config.model_dump(mode='json'),
                'reports': self.reports,
            }))
        return paths


async def cmd_multichannel(run_config: RunConfig, settings: Optional[SolverSettings] = None) -> List[Path]:
    collector = MultiChannelCollector(run_config, settings or get_solver_settings())
    await collector.collect()
    return await collector.process()
