# collectors/table1_collector.py

import logging
from pathlib import Path
from typing import Dict, List, Optional

from configs.run_conf import RunConfig
from configs.solver_conf import SolverSettings, get_solver_settings
from modules.collectors import BaseCollector
from modules.dispersion import KappaClass, KappaKind, special_kappa_row
from modules.result_writer import ResultWriter

logger = logging.getLogger(__name__)

TABLE1_HEADER = ('c', 'kind', 'sign', 'N', 'kappa', 'E', 'admissible', 'inequality', 'reason', 'flags')


class Table1Collector(BaseCollector):
    """특수 κ 에서의 닫힌 형태 허용 에너지 표"""

    def __init__(self, run_config: RunConfig, settings: SolverSettings):
        super().__init__(run_config, settings)
        self.rows: List[Dict] = []

    async def collect(self) -> List[Dict]:
        self.rows = []
        for c in self.config.c_values:
            cfg = self.config.system_config(c)
            for kind in (KappaKind.HALF_ODD, KappaKind.INTEGER_PI):
                for sign in (1, -1):
                    for N in range(self.config.n_max + 1):
                        self.rows.append({'c': c, **special_kappa_row(KappaClass(kind, sign), N, cfg)})
        rejected = sum(1 for r in self.rows if not r['admissible'])
        logger.info(f"Special-kappa table: {len(self.rows)} rows, {rejected} inadmissible")
        return self.rows

    async def process(self) -> List[Path]:
        writer = ResultWriter(self.config.out)
        if self.config.format == 'json':
            return [writer.write_json('table1.json', {
                'config': self.config.model_dump(mode='json'),
                'rows': self.rows,
            })]
        rows = [tuple(r[key] for key in TABLE1_HEADER) for r in self.rows]
        return [writer.write_rows('table1.csv', TABLE1_HEADER, rows)]


async def cmd_table1(run_config: RunConfig, settings: Optional[SolverSettings] = None) -> List[Path]:
    collector = Table1Collector(run_config, settings or get_solver_settings())
    await collector.collect()
    return await collector.process()
