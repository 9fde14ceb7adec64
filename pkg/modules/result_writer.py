"""
Result writer
CSV (샘플/표) 와 JSON sidecar 출력. 단일 writer, 정렬된 순서로만 기록
"""

from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence
import csv
import json
import logging

import numpy as np

from configs.base_path import resolve_output_path
from modules.dispersion import SpectrumSample

logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ('kappa', 'E', 'branch_N', 'multiplicity', 'mode', 'regime', 'flags')


def format_value(value: Any) -> str:
    """float 은 repr (왕복 가능한 최단 표현) 로 기록"""
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ''
    return str(value)


def _json_default(value: Any) -> Any:
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if hasattr(value, 'value'):
        return value.value
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def sample_row(sample: SpectrumSample) -> List[str]:
    N, N_energy = sample.branch
    return [
        format_value(sample.kappa),
        format_value(sample.E),
        f"{N}:{N_energy}",
        str(sample.multiplicity),
        sample.mode.value,
        sample.regime.value,
        ';'.join(sample.flags),
    ]


def sample_dict(sample: SpectrumSample) -> Dict[str, Any]:
    return {
        'kappa': sample.kappa, 'E': sample.E,
        'branch': list(sample.branch), 'multiplicity': sample.multiplicity,
        'mode': sample.mode.value, 'regime': sample.regime.value,
        'flags': list(sample.flags), 'residual': sample.residual,
    }


def ordered_samples(samples: Iterable[SpectrumSample]) -> List[SpectrumSample]:
    """κ 오름차순, 같은 κ 에서는 E 오름차순"""
    return sorted(samples, key=lambda s: (s.kappa, s.E))


class ResultWriter:
    """출력 디렉토리 관리 및 파일 기록"""

    def __init__(self, out: str):
        self.out_dir: Path = resolve_output_path(out)

    def _path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / name

    @staticmethod
    def c_suffix(c: float) -> str:
        return f"c{float(c)!r}"

    def write_rows(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self._path(name)
        with path.open('w', encoding='utf-8', newline='') as fh:
            writer = csv.writer(fh, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
        logger.info(f"Wrote {path}")
        return path

    def write_spectrum(self, name: str, samples: Iterable[SpectrumSample]) -> Path:
        path = self._path(name)
        with path.open('w', encoding='utf-8', newline='') as fh:
            writer = csv.writer(fh, lineterminator='\n')
            writer.writerow(SPECTRUM_HEADER)
            for sample in ordered_samples(samples):
                writer.writerow(sample_row(sample))
        logger.info(f"Wrote {path}")
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self._path(name)
        text = json.dumps(payload, sort_keys=True, indent=2, default=_json_default, allow_nan=True)
        path.write_text(text + '\n', encoding='utf-8')
        logger.info(f"Wrote {path}")
        return path
