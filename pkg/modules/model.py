"""
Bounded multibarrier model
시스템 설정, 파생 파라미터, 극한 전달행렬 및 고유값 구조

Units follow hbar = 1, m = 1/2, so k = sqrt(E) and q = sqrt(|E - V|).
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple
import logging

import numpy as np

from configs.solver_conf import get_solver_settings
from modules.errors import BranchError, DomainError, SingularityError

logger = logging.getLogger(__name__)


class Regime(str, Enum):
    """에너지 영역 (장벽 위 / 장벽 아래)"""
    ABOVE = 'above'
    BELOW = 'below'


class MatrixForm(str, Enum):
    """극한 전달행렬 표기 방식"""
    LITERAL = 'literal'         # 좌하단 성분 -e^{iz} d sinφ/φ (E > V 에서 det != 1)
    UNIMODULAR = 'unimodular'   # 좌하단 성분 -i e^{iz} d sinφ/φ, det = 1


def derive_geometry(L: float, c: float) -> Tuple[float, float]:
    """전체 길이 L 과 비율 c 로부터 (a, b) = (총 장벽 폭, 총 간격) 계산"""
    if not L > 0 or not c > 0:
        raise DomainError(f"L and c must be positive (L={L}, c={c})")
    a = L / (1.0 + c)
    b = L * c / (1.0 + c)
    return a, b


@dataclass(frozen=True)
class SystemConfig:
    """물리 시스템 설정 데이터클래스"""
    V: float
    L: float
    c: float
    regime: Regime = Regime.ABOVE

    def __post_init__(self):
        object.__setattr__(self, 'regime', Regime(self.regime))
        if self.V < 0:
            raise DomainError(f"barrier height must be non-negative (V={self.V})")
        if self.V == 0 and self.regime is Regime.BELOW:
            raise DomainError("V = 0 has no below-barrier regime")
        derive_geometry(self.L, self.c)

    @property
    def a(self) -> float:
        return derive_geometry(self.L, self.c)[0]

    @property
    def b(self) -> float:
        return derive_geometry(self.L, self.c)[1]

    @property
    def effective_height(self) -> float:
        """V/(1+c): 장벽을 전체 길이에 평균낸 높이 (φ = 0 인 에너지)"""
        return self.V / (1.0 + self.c)

    @property
    def linear_threshold(self) -> float:
        """V L² c/(1+c): Nπ ± κ 가 넘어야(장벽 위) / 넘지 말아야(장벽 아래) 하는 값"""
        return self.V * self.L ** 2 * self.c / (1.0 + self.c)

    def with_c(self, c: float) -> "SystemConfig":
        return replace(self, c=c)

    def with_regime(self, regime: Regime) -> "SystemConfig":
        return replace(self, regime=Regime(regime))


@dataclass(frozen=True)
class WaveNumbers:
    """파수 데이터클래스 (k 외부, q 내부)"""
    k: float
    q: float
    xi: float
    eta: float


def wavenumbers(E: float, V: float, regime: Regime) -> WaveNumbers:
    """영역별 k, q, ξ = q/k + k/q, η = q/k - k/q"""
    regime = Regime(regime)
    if not E > 0:
        raise DomainError(f"energy must be positive (E={E})")
    if E == V:
        raise SingularityError(f"E = V = {V}: q = 0 makes xi and eta singular")
    if regime is Regime.ABOVE and not E > V:
        raise DomainError(f"above-barrier regime requires E > V (E={E}, V={V})")
    if regime is Regime.BELOW and not E < V:
        raise DomainError(f"below-barrier regime requires E < V (E={E}, V={V})")

    k = float(np.sqrt(E))
    q = float(np.sqrt(abs(E - V)))
    if q == 0.0:
        raise SingularityError(f"q underflows to zero at E={E}, V={V}")
    return WaveNumbers(k=k, q=q, xi=q / k + k / q, eta=q / k - k / q)


@dataclass(frozen=True)
class ShapeParams:
    """f, d, z, φ. 장벽 아래에서 E < V/(1+c) 이면 φ 는 순허수"""
    f: float
    d: float
    z: float
    phi: complex
    phi_squared: float
    regime: Regime
    waves: WaveNumbers

    @property
    def is_real(self) -> bool:
        return self.phi_squared >= 0.0


def shape_params(cfg: SystemConfig, E: float) -> ShapeParams:
    """영역에 맞는 f, d, z, φ 계산"""
    w = wavenumbers(E, cfg.V, cfg.regime)
    a, b = cfg.a, cfg.b
    if cfg.regime is Regime.ABOVE:
        f = w.k * b + a * w.q * w.xi / 2.0
        d = a * w.q * w.eta / 2.0
    else:
        f = w.k * b - a * w.q * w.eta / 2.0
        d = a * w.q * w.xi / 2.0

    # f^2 - d^2 를 인수분해 형태로 계산 (E ~ V/(1+c) 근처 상쇄 완화)
    phi_sq = (f - d) * (f + d)
    phi = complex(np.sqrt(complex(phi_sq)))
    return ShapeParams(f=f, d=d, z=w.k * cfg.L, phi=phi, phi_squared=phi_sq,
                       regime=cfg.regime, waves=w)


def sinc(phi: complex, threshold: Optional[float] = None) -> complex:
    """sin(φ)/φ, |φ| 가 작으면 급수 1 - φ²/6 + φ⁴/120"""
    if threshold is None:
        threshold = get_solver_settings().sinc_series
    phi = complex(phi)
    if abs(phi) < threshold:
        phi2 = phi * phi
        return 1.0 - phi2 / 6.0 + phi2 * phi2 / 120.0
    return complex(np.sin(phi) / phi)


@dataclass(frozen=True, eq=False)
class TransferMatrix2:
    """2x2 복소 전달행렬"""
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"transfer matrix must be 2x2, got {m.shape}")
        object.__setattr__(self, 'entries', m)

    @classmethod
    def from_entries(cls, m11: complex, m12: complex, m21: complex, m22: complex) -> "TransferMatrix2":
        return cls(np.array([[m11, m12], [m21, m22]], dtype=complex))

    @classmethod
    def identity(cls) -> "TransferMatrix2":
        return cls(np.eye(2, dtype=complex))

    @property
    def m11(self) -> complex:
        return complex(self.entries[0, 0])

    @property
    def m12(self) -> complex:
        return complex(self.entries[0, 1])

    @property
    def m21(self) -> complex:
        return complex(self.entries[1, 0])

    @property
    def m22(self) -> complex:
        return complex(self.entries[1, 1])

    def determinant(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: "TransferMatrix2") -> "TransferMatrix2":
        return TransferMatrix2(self.entries @ other.entries)

    def scaled(self, factor: float) -> "TransferMatrix2":
        return TransferMatrix2(self.entries * factor)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def frobenius_distance(self, other: "TransferMatrix2") -> float:
        return float(np.linalg.norm(self.entries - other.entries, 'fro'))


def limit_matrix(cfg: SystemConfig, E: float, form: MatrixForm = MatrixForm.LITERAL) -> TransferMatrix2:
    """장벽 위 / 장벽 아래 영역의 n -> ∞ 전달행렬"""
    sp = shape_params(cfg, E)
    s = sinc(sp.phi)
    cos_phi = complex(np.cos(sp.phi))
    e_minus = np.exp(-1j * sp.z)
    e_plus = np.exp(1j * sp.z)

    m11 = e_minus * (cos_phi + 1j * sp.f * s)
    m22 = e_plus * (cos_phi - 1j * sp.f * s)
    if cfg.regime is Regime.ABOVE:
        m12 = 1j * e_minus * sp.d * s
        if MatrixForm(form) is MatrixForm.LITERAL:
            m21 = -e_plus * sp.d * s
        else:
            m21 = -1j * e_plus * sp.d * s
    else:
        m12 = -1j * e_minus * sp.d * s
        m21 = 1j * e_plus * sp.d * s
    return TransferMatrix2.from_entries(m11, m12, m21, m22)


@dataclass(frozen=True)
class EigenStructure:
    """κ, τ 및 고유값 λ1, λ2"""
    kappa: float
    tau: float
    lambda1: complex
    lambda2: complex


def eigen_structure(sp: ShapeParams) -> EigenStructure:
    """κ = arg(cosφ + i f sinφ/φ), τ = 1 + d² sin²φ/φ², λ 는 특성방정식의 근. 실수 φ 에서만 정의"""
    if not sp.is_real:
        raise BranchError(
            f"phi is imaginary (phi^2={sp.phi_squared:.6g}); restrict to E > V/(1+c)"
        )
    phi = sp.phi.real
    s = sinc(phi).real
    kappa = float(np.arctan2(sp.f * s, np.cos(phi)))
    if kappa == -np.pi:
        kappa = float(np.pi)
    tau = 1.0 + (sp.d * s) ** 2
    trace_half = tau * np.cos(phi - kappa)
    root = np.sqrt(complex(trace_half ** 2 - 1.0))
    return EigenStructure(kappa=kappa, tau=tau,
                          lambda1=complex(trace_half + root),
                          lambda2=complex(trace_half - root))


def cos_kappa_from_tangent(sp: ShapeParams) -> float:
    """cos κ = 1/sqrt(1 + f² tan²φ/φ²), cos φ 의 부호 포함"""
    if not sp.is_real:
        raise BranchError("the tangent form of cos(kappa) needs a real phi")
    phi = sp.phi.real
    cos_phi = np.cos(phi)
    # f tanφ/φ = f (sinφ/φ) / cosφ
    ratio = sp.f * sinc(phi).real / cos_phi
    return float(np.copysign(1.0, cos_phi) / np.sqrt(1.0 + ratio * ratio))


def kappa_phasor(sp: ShapeParams) -> complex:
    """단위 복소수 e^{iκ}"""
    s = sinc(sp.phi)
    num = complex(np.cos(sp.phi)) + 1j * sp.f * s
    return num / abs(num)
