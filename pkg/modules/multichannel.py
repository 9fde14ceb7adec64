"""
Multi-channel scatterer reflection
N 채널 산란체 하나의 반사 진폭과 두 극한 (무한계 전반사 / 유한계 완전투과)
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional
import logging
import math

from configs.solver_conf import SolverSettings, get_solver_settings
from modules.errors import DomainError

logger = logging.getLogger(__name__)

TRANSMISSION_KB = 0.1
REFLECTION_KB = 10.0


class ScatteringRegime(str, Enum):
    TRANSMISSION = 'transmission-dominated'
    INTERMEDIATE = 'intermediate'
    REFLECTION = 'reflection-dominated'


@dataclass(frozen=True)
class Reflection:
    """반사 진폭. 확률은 |R|², 투과확률은 1 − |R|²"""
    amplitude: complex
    at_pole: bool = False

    @property
    def probability(self) -> float:
        return abs(self.amplitude) ** 2

    @property
    def transmission(self) -> float:
        return 1.0 - self.probability


@dataclass(frozen=True)
class MultiChannelSpec:
    """N: 채널 수, k: 파수, l: 산란체 길이, β = N·l. 유한계에서는 l = L/n"""
    N: int
    k: float
    l: float
    n: Optional[int] = None
    L: Optional[float] = None

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"channel count must be at least 1 (N={self.N})")
        if self.k < 0 or not self.l > 0:
            raise DomainError(f"need k >= 0 and l > 0 (k={self.k}, l={self.l})")

    @classmethod
    def bounded(cls, N: int, n: int, L: float, k: float) -> "MultiChannelSpec":
        if n < 1 or not L > 0:
            raise DomainError(f"bounded system needs n >= 1 and L > 0 (n={n}, L={L})")
        return cls(N=N, k=k, l=L / n, n=n, L=L)

    @classmethod
    def unbounded(cls, N: int, k: float, beta: float) -> "MultiChannelSpec":
        """무한계 근사: β 고정, l = β/N"""
        return cls(N=N, k=k, l=beta / N)

    @property
    def beta(self) -> float:
        return self.N * self.l

    @property
    def k_beta(self) -> float:
        return self.k * self.beta

    @property
    def kl(self) -> float:
        return self.k * self.l


def reflection_exact(N: int, k: float, l: float, settings: Optional[SolverSettings] = None) -> Reflection:
    """
    R = (1 − N²)/(N² + 2iN·cot(kl) + 1)
    분자·분모에 sin(kl) 을 곱한 형태로 계산하므로 sin(kl) = 0 에서 R = 0
    """
    settings = settings if settings is not None else get_solver_settings()
    kl = k * l
    s, c = math.sin(kl), math.cos(kl)
    n2 = float(N) * float(N)
    amplitude = (1.0 - n2) * s / ((n2 + 1.0) * s + 2j * N * c)
    return Reflection(complex(amplitude), at_pole=abs(s) < settings.pole_eps)


def reflection_limit(beta: float, k: float) -> Reflection:
    """R = −(1 + 2i/(kβ))⁻¹ = −kβ/(kβ + 2i), kβ = 0 이면 0"""
    x = k * beta
    if x == 0.0:
        return Reflection(0j)
    return Reflection(complex(-x / (x + 2j)))


def classify(k_beta: float) -> ScatteringRegime:
    if k_beta < TRANSMISSION_KB:
        return ScatteringRegime.TRANSMISSION
    if k_beta > REFLECTION_KB:
        return ScatteringRegime.REFLECTION
    return ScatteringRegime.INTERMEDIATE


def discrepancy_bound(spec: MultiChannelSpec) -> float:
    """근사 두 개 (kl ≪ 1, N² ≫ 1) 에서 오는 상대오차 한계"""
    return 5.0 * max(spec.kl, 1.0 / spec.N ** 2)


def bounded_regime_check(spec: MultiChannelSpec, settings: Optional[SolverSettings] = None) -> Dict:
    """kβ 로 분류하고 정확식/극한식의 |R|² 와 차이를 보고"""
    settings = settings if settings is not None else get_solver_settings()
    exact = reflection_exact(spec.N, spec.k, spec.l, settings)
    limit = reflection_limit(spec.beta, spec.k)
    diff = abs(exact.amplitude - limit.amplitude)
    relative = diff / abs(limit.amplitude) if limit.amplitude != 0 else diff
    guards = spec.kl < settings.kl_guard and 1.0 / spec.N ** 2 < settings.kl_guard
    if not guards:
        logger.debug(f"Approximation guards do not hold: kl={spec.kl:.3g}, N={spec.N}")
    return {
        'N': spec.N, 'n': spec.n, 'L': spec.L, 'k': spec.k, 'l': spec.l,
        'beta': spec.beta, 'k_beta': spec.k_beta,
        'regime': classify(spec.k_beta).value,
        'R_exact': exact.amplitude, 'R_limit': limit.amplitude,
        'R2_exact': exact.probability, 'R2_limit': limit.probability,
        'T_prob': exact.transmission,
        'discrepancy': diff, 'relative_discrepancy': relative,
        'bound': discrepancy_bound(spec), 'guards_hold': guards,
        'at_pole': exact.at_pole,
    }
