"""
Finite multibarrier chain
장벽 n 개의 전달행렬 곱 (전역 평면파 e^{±ikx} 기준 진폭), 투과/반사 확률,
극한 행렬로의 수렴 측정
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from configs.solver_conf import SolverSettings, get_solver_settings
from modules.errors import DomainError, SingularityError
from modules.model import MatrixForm, SystemConfig, TransferMatrix2, limit_matrix, sinc

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainSpec:
    """장벽 n 개, 폭 w = a/n, 간격 s = b/(n−1). 배열은 [−L/2, L/2] 를 차지"""
    cfg: SystemConfig
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"chain needs at least one barrier (n={self.n})")

    @property
    def width(self) -> float:
        return self.cfg.a / self.n

    @property
    def spacing(self) -> Optional[float]:
        return None if self.n == 1 else self.cfg.b / (self.n - 1)

    def positions(self) -> np.ndarray:
        return barrier_positions(self)


@dataclass(frozen=True)
class ScatteringResult:
    """
    matrix 는 exp(log_scale) 로 나눠진 상태로 보관 (장벽 아래 사슬의 지수적 증가 대비).
    T = 1/|m22|², R = 1 − T. log_det 은 인자별 log|det| 의 합
    """
    T: float
    R: float
    matrix: TransferMatrix2
    log_scale: float = 0.0
    log_det: float = 0.0

    def full_matrix(self) -> TransferMatrix2:
        if self.log_scale == 0.0:
            return self.matrix
        with np.errstate(over='ignore'):
            return self.matrix.scaled(math.exp(self.log_scale))

    def log_abs_determinant(self) -> float:
        return self.log_det


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    distance_literal: float
    distance_unimodular: float
    T: float
    R: float


def barrier_positions(spec: ChainSpec) -> np.ndarray:
    """각 장벽의 왼쪽 끝 좌표. n = 1 이면 폭 a 의 장벽 하나를 원점 중심에 둠"""
    L = spec.cfg.L
    if spec.n == 1:
        return np.array([-0.5 * spec.cfg.a])
    period = spec.width + spec.spacing
    return -0.5 * L + period * np.arange(spec.n)


def _plane_wave_basis(k: float, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(A, B) -> (ψ, ψ') 행렬 W(x) 와 그 역행렬"""
    e_plus = np.exp(1j * k * x)
    e_minus = np.exp(-1j * k * x)
    W = np.empty(x.shape + (2, 2), dtype=complex)
    W[..., 0, 0] = e_plus
    W[..., 0, 1] = e_minus
    W[..., 1, 0] = 1j * k * e_plus
    W[..., 1, 1] = -1j * k * e_minus
    W_inv = np.empty_like(W)
    W_inv[..., 0, 0] = 0.5 * e_minus
    W_inv[..., 0, 1] = 0.5 * e_minus / (1j * k)
    W_inv[..., 1, 0] = 0.5 * e_plus
    W_inv[..., 1, 1] = -0.5 * e_plus / (1j * k)
    return W, W_inv


def _interior_propagator(E: float, V: float, w: float) -> np.ndarray:
    """장벽 내부에서 (ψ, ψ') 를 폭 w 만큼 전달"""
    if E == V:
        raise SingularityError(f"E = V = {V}: interior wavenumber vanishes")
    K = np.sqrt(complex(E - V))
    Kw = K * w
    return np.array([[np.cos(Kw), np.sin(Kw) / K],
                     [-K * np.sin(Kw), np.cos(Kw)]], dtype=complex)


def _barrier_stack(E: float, V: float, w: float, x0: np.ndarray) -> np.ndarray:
    if not E > 0:
        raise DomainError(f"energy must be positive (E={E})")
    if not w > 0:
        raise DomainError(f"barrier width must be positive (w={w})")
    k = math.sqrt(E)
    P = _interior_propagator(E, V, w)
    W_left, _ = _plane_wave_basis(k, x0)
    _, W_right_inv = _plane_wave_basis(k, x0 + w)
    return W_right_inv @ P @ W_left


def single_barrier_matrix(E: float, V: float, w: float, x0: float = 0.0) -> TransferMatrix2:
    """[x0, x0+w] 구간 장벽 하나의 전달행렬 (경계에서 ψ, ψ' 연속)"""
    return TransferMatrix2(_barrier_stack(E, V, w, np.array([float(x0)]))[0])


def rectangular_barrier_transmission(E: float, V: float, w: float) -> float:
    """T = [1 + V² w² (sin(qw)/(qw))² / (4E)]⁻¹, q = √(E−V) (E < V 이면 sinh 형태)"""
    q = np.sqrt(complex(E - V))
    s = sinc(q * w)
    return float(1.0 / (1.0 + (V * w) ** 2 * abs(s) ** 2 / (4.0 * E)))


def _ordered_product(stack: np.ndarray, limit: float) -> Tuple[np.ndarray, float]:
    result = np.eye(2, dtype=complex)
    log_scale = 0.0
    for M in stack:
        result = M @ result
        peak = float(np.max(np.abs(result)))
        if peak > limit:
            result = result / peak
            log_scale += math.log(peak)
    return result, log_scale


def _scattering(product: np.ndarray, log_scale: float, log_det: float) -> ScatteringResult:
    matrix = TransferMatrix2(product)
    m22 = abs(matrix.m22)
    T = min(1.0, math.exp(-2.0 * (log_scale + math.log(m22))))
    if T < 0.5:
        R = 1.0 - T
    else:
        # T ≥ 1/2 이면 R 을 |m21/m22|² 에서 구함
        R = min(1.0, (abs(matrix.m21) / m22) ** 2)
        T = 1.0 - R
    return ScatteringResult(T=float(T), R=float(R), matrix=matrix, log_scale=log_scale, log_det=log_det)


def chain_segment(spec: ChainSpec, E: float, start: int, stop: int,
                  settings: Optional[SolverSettings] = None) -> ScatteringResult:
    """장벽 [start, stop) 구간만의 순서 곱"""
    settings = settings if settings is not None else get_solver_settings()
    if not 0 <= start < stop <= spec.n:
        raise DomainError(f"invalid barrier range [{start}, {stop}) for n={spec.n}")
    positions = barrier_positions(spec)[start:stop]
    stack = _barrier_stack(E, spec.cfg.V, spec.width, positions)
    product, log_scale = _ordered_product(stack, settings.renorm_limit)
    # log|det| 은 재규격화된 곱이 아니라 인자에서 누적
    log_det = float(np.sum(np.log(np.abs(np.linalg.det(stack)))))
    return _scattering(product, log_scale, log_det)


def chain_product(spec: ChainSpec, E: float, settings: Optional[SolverSettings] = None) -> ScatteringResult:
    """P^(n)···P^(1), 간격 구간의 위상은 전역 평면파 기준 진폭에 흡수됨"""
    result = chain_segment(spec, E, 0, spec.n, settings)
    if result.log_scale:
        logger.debug(f"Chain n={spec.n} renormalized, log_scale={result.log_scale:.6g}")
    return result


def recenter(matrix: TransferMatrix2, k: float, shift: float) -> TransferMatrix2:
    """원점 이동 x' = x + shift 에 따른 진폭 변환 S M S⁻¹, S = diag(e^{−ik·shift}, e^{ik·shift})"""
    phase = np.exp(-1j * k * shift)
    S = np.diag([phase, 1.0 / phase])
    S_inv = np.diag([1.0 / phase, phase])
    return TransferMatrix2(S @ matrix.entries @ S_inv)


def effective_medium_transmission(cfg: SystemConfig, E: float) -> float:
    """높이 V/(1+c), 길이 L 의 균질 장벽 하나의 투과확률 (극한 행렬의 닫힌 형태)"""
    if E == cfg.effective_height:
        return float(1.0 / (1.0 + cfg.effective_height ** 2 * cfg.L ** 2 / (4.0 * E)))
    return rectangular_barrier_transmission(E, cfg.effective_height, cfg.L)


def convergence_report(cfg: SystemConfig, E: float, n_list: Sequence[int],
                       settings: Optional[SolverSettings] = None) -> List[ConvergenceRow]:
    """n 별 극한 행렬까지의 Frobenius 거리와 T(n). 수렴 여부는 판정하지 않고 측정만 함"""
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError(f"n_list must be strictly ascending: {n_list}")

    literal = limit_matrix(cfg, E, MatrixForm.LITERAL)
    unimodular = limit_matrix(cfg, E, MatrixForm.UNIMODULAR)
    k = math.sqrt(E)
    rows = []
    for n in n_list:
        result = chain_product(ChainSpec(cfg, n), E, settings)
        # 사슬은 중심 좌표, 극한 행렬은 왼쪽 끝 원점
        left_edge = recenter(result.full_matrix(), k, 0.5 * cfg.L)
        rows.append(ConvergenceRow(
            n=n,
            distance_literal=left_edge.frobenius_distance(literal),
            distance_unimodular=left_edge.frobenius_distance(unimodular),
            T=result.T, R=result.R,
        ))
        logger.debug(f"convergence n={n} T={result.T:.12g} d_lit={rows[-1].distance_literal:.3e}")
    return rows
