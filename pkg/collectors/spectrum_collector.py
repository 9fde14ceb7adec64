# collectors/spectrum_collector.py

import asyncio
import logging
from functools import partial
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from configs.run_conf import RunConfig
from configs.solver_conf import SolverSettings, get_solver_settings
from modules.collectors import BaseCollector
from modules.dispersion import (
    BandGapReport,
    DispersionMode,
    SpectrumSample,
    branch_window_energies,
    build_band_report,
    check_kappa_grid,
    constant_energy_plateau,
    linear_regime_valid,
    make_kappa_grid,
    small_L_energies,
    solve_energies,
    verify_sample,
)
from modules.errors import ConfigError, MbspecError
from modules.model import SystemConfig
from modules.result_writer import ResultWriter, sample_dict

logger = logging.getLogger(__name__)


def _solve_at(cfg: SystemConfig, window: Tuple[float, float], mode: DispersionMode,
              method: str, settings: SolverSettings, kappa: float) -> List[SpectrumSample]:
    """κ 하나에 대한 계산 (to_thread 작업 단위)"""
    if method == 'small-l':
        return small_L_energies(cfg, kappa, window, settings)
    return solve_energies(cfg, kappa, window, mode, settings=settings)


class SpectrumCollector(BaseCollector):
    """c 값별 κ 스캔 수집기 (spectrum / bands 공용)"""

    def __init__(self, run_config: RunConfig, settings: SolverSettings):
        super().__init__(run_config, settings)
        self.mode = DispersionMode(run_config.mode)
        self.reports: Dict[float, BandGapReport] = {}

    def energy_window(self, cfg: SystemConfig) -> Tuple[float, float]:
        """--e-window 가 없으면 상대 분기 창에서 계산"""
        if self.config.e_window is not None:
            return self.config.e_window
        return branch_window_energies(cfg, self.config.branches, self.mode, self.settings)

    async def scan(self, cfg: SystemConfig) -> BandGapReport:
        kappas = [float(k) for k in make_kappa_grid(*self.config.kappa_grid)]
        if not kappas:
            raise ConfigError(f"kappa grid {self.config.kappa_grid} is empty")
        check_kappa_grid(kappas, self.settings)

        window = self.energy_window(cfg)
        worker = partial(_solve_at, cfg, window, self.mode, self.config.method, self.settings)
        per_kappa = await self.run_chunked(worker, kappas)
        return build_band_report(cfg, kappas, per_kappa, window, self.mode, self.settings)

    async def collect(self) -> Dict[float, BandGapReport]:
        for c in self.config.c_values:
            cfg = self.config.system_config(c)
            try:
                report = await self.scan(cfg)
            except MbspecError as e:
                logger.error(f"Scan failed for c={c}: {e}")
                raise
            for sample in report.samples:
                verify_sample(cfg, sample, self.settings)
            self.reports[c] = report
            logger.info(f"c={c}: {report.n_samples} samples, {len(report.gaps)} gaps, "
                        f"energy window {report.energy_window}")
        return self.reports

    def _run_summary(self, c: float, report: BandGapReport) -> Dict:
        cfg = self.config.system_config(c)
        return {
            'c': c,
            'energy_window': list(report.energy_window),
            'plateau': constant_energy_plateau(cfg, self.settings),
            'linear_regime_valid': linear_regime_valid(cfg, report.energy_window),
            'n_samples': report.n_samples,
            'gaps': [g.to_dict() for g in report.gaps],
        }

    def _metadata(self) -> Dict:
        return {
            'config': self.config.model_dump(mode='json'),
            'tolerances': self.settings.as_tolerances(),
        }

    async def process(self) -> List[Path]:
        """c 값마다 샘플 파일 하나와 sidecar JSON"""
        writer = ResultWriter(self.config.out)
        paths: List[Path] = []
        for c in sorted(self.reports):
            report = self.reports[c]
            stem = f"spectrum_{writer.c_suffix(c)}"
            if self.config.format == 'csv':
                paths.append(writer.write_spectrum(f"{stem}.csv", report.samples))
            else:
                paths.append(writer.write_json(f"{stem}.json", {
                    'c': c, 'samples': [sample_dict(s) for s in report.samples],
                }))

        sidecar = self._metadata()
        sidecar['runs'] = [self._run_summary(c, self.reports[c]) for c in sorted(self.reports)]
        paths.append(writer.write_json('spectrum.json', sidecar))
        return paths

    async def process_bands(self) -> List[Path]:
        """BandGapReport JSON (c 값별)"""
        writer = ResultWriter(self.config.out)
        payload = self._metadata()
        payload['reports'] = [
            {'c': c, **self.reports[c].to_dict()} for c in sorted(self.reports)
        ]
        return [writer.write_json('bands.json', payload)]


async def cmd_spectrum(run_config: RunConfig, settings: Optional[SolverSettings] = None) -> List[Path]:
    collector = SpectrumCollector(run_config, settings or get_solver_settings())
    await collector.collect()
    return await collector.process()


async def cmd_bands(run_config: RunConfig, settings: Optional[SolverSettings] = None) -> List[Path]:
    collector = SpectrumCollector(run_config, settings or get_solver_settings())
    await collector.collect()
    return await collector.process_bands()


if __name__ == "__main__":
    import argparse

    from modules.common_logger import setup_logger

    parser = argparse.ArgumentParser(description='Dispersion spectrum scan for a figure preset')
    parser.add_argument('--preset', required=True, help='fig1 .. fig7')
    parser.add_argument('--out', default='mbspec_out')
    args = parser.parse_args()

    setup_logger()
    asyncio.run(cmd_spectrum(RunConfig.from_sources({'preset': args.preset, 'out': args.out})))
