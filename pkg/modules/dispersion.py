"""
Dispersion relation solver
κ 와 E 를 잇는 초월방정식 tan²κ = g(E)·tan²(arg) 의 근 탐색, 특수 κ 의 닫힌 해,
허용 에너지 부등식 및 밴드/갭 보고서

arg 는 모드에 따라 θ = L²(E − V/(1+c)) (PaperFaithful) 또는 φ = √θ (FirstPrinciples).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from scipy import optimize

from configs.solver_conf import SolverSettings, get_solver_settings
from modules.errors import (
    DomainError,
    ExcludedEnergyError,
    GridTooCoarseError,
    PoleError,
    ResidualError,
    SmallLengthError,
    WindowError,
)
from modules.model import Regime, SystemConfig, wavenumbers

logger = logging.getLogger(__name__)

_RTOL = 4 * np.finfo(float).eps

# 장벽 아래 음의 부호 특수해: E < V/(1+c) 로 허용 구간 (V/(1+c), V) 밖
OUTSIDE_RANGE_FLAG = 'outside-allowed-range'


class DispersionMode(str, Enum):
    PAPER_FAITHFUL = 'paper-faithful'
    FIRST_PRINCIPLES = 'first-principles'


class KappaKind(str, Enum):
    """닫힌 해가 있는 특수 κ 종류"""
    HALF_ODD = 'half-odd'       # κ = ±(2N+1)π/2
    INTEGER_PI = 'integer-pi'   # κ = ±Nπ


@dataclass(frozen=True)
class KappaClass:
    kind: KappaKind
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'kind', KappaKind(self.kind))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def kappa(self, N: int) -> float:
        if self.kind is KappaKind.HALF_ODD:
            return self.sign * (2 * N + 1) * math.pi / 2.0
        return self.sign * N * math.pi

    def label(self) -> str:
        sign = '+' if self.sign > 0 else '-'
        return f"{sign}{self.kind.value}"


@dataclass(frozen=True)
class Cos2Kappa:
    value: float
    at_pole: bool = False


@dataclass(frozen=True)
class SpectrumSample:
    """분산관계의 한 해 (κ, E)"""
    kappa: float
    E: float
    branch: Tuple[int, int]
    mode: DispersionMode
    regime: Regime
    multiplicity: int = 1
    flags: Tuple[str, ...] = ()
    residual: float = 0.0


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    inequality: str
    reason: str
    outside_allowed_range: bool = False


@dataclass(frozen=True)
class KappaInterval:
    lo: float
    hi: float
    closed_lo: bool = True
    closed_hi: bool = True

    def to_dict(self) -> Dict:
        return {'lo': self.lo, 'hi': self.hi,
                'closed_lo': self.closed_lo, 'closed_hi': self.closed_hi}


@dataclass(frozen=True)
class Jump:
    kappa: float
    E_left: float
    E_right: float

    def to_dict(self) -> Dict:
        return {'kappa': self.kappa, 'E_left': self.E_left, 'E_right': self.E_right}


@dataclass
class BandGapReport:
    """κ 격자 스캔 결과: 밴드(닫힌 구간), 갭(나머지), 에너지 점프"""
    bands: List[KappaInterval]
    gaps: List[KappaInterval]
    jumps: List[Jump]
    kappa_window: Tuple[float, float]
    kappa_step: float
    energy_window: Tuple[float, float]
    energy_step: float
    jump_threshold: float
    mode: DispersionMode
    regime: Regime
    n_samples: int = 0
    samples: List[SpectrumSample] = field(default_factory=list, repr=False)

    def to_dict(self) -> Dict:
        return {
            'bands': [b.to_dict() for b in self.bands],
            'gaps': [g.to_dict() for g in self.gaps],
            'jumps': [j.to_dict() for j in self.jumps],
            'metadata': {
                'kappa_window': list(self.kappa_window),
                'kappa_step': self.kappa_step,
                'energy_window': list(self.energy_window),
                'energy_step': self.energy_step,
                'jump_threshold': self.jump_threshold,
                'mode': self.mode.value,
                'regime': self.regime.value,
                'n_samples': self.n_samples,
            },
        }


def _settings(settings: Optional[SolverSettings]) -> SolverSettings:
    return settings if settings is not None else get_solver_settings()


# ---------------------------------------------------------------------------
# 계수 및 잔차
# ---------------------------------------------------------------------------

def coefficient_g(E: float, V: float, c: float) -> float:
    """g = 1 + V²/(4E(1+c)(E(1+c)−V)). E > V 이면 g > 1, E < V/(1+c) 이면 g <= 0"""
    if not E > 0:
        raise DomainError(f"energy must be positive (E={E})")
    u = E * (1.0 + c)
    denom = 4.0 * u * (u - V)
    if denom == 0.0:
        raise PoleError(f"E(1+c) = V at E={E}: coefficient g diverges")
    return 1.0 + V * V / denom


def _g_values(E: np.ndarray, V: float, c: float) -> np.ndarray:
    u = E * (1.0 + c)
    with np.errstate(divide='ignore', invalid='ignore'):
        return 1.0 + V * V / (4.0 * u * (u - V))


def tangent_argument(cfg: SystemConfig, E, mode: DispersionMode = DispersionMode.PAPER_FAITHFUL):
    """θ = L²(E − V/(1+c)) 또는 φ = √θ (스칼라/배열 모두 허용)"""
    theta = cfg.L ** 2 * (np.asarray(E, dtype=float) - cfg.effective_height)
    if DispersionMode(mode) is DispersionMode.FIRST_PRINCIPLES:
        theta = np.sqrt(np.maximum(theta, 0.0))
    return float(theta) if np.ndim(theta) == 0 else theta


def energy_from_argument(cfg: SystemConfig, arg, mode: DispersionMode = DispersionMode.PAPER_FAITHFUL):
    arg = np.asarray(arg, dtype=float)
    if DispersionMode(mode) is DispersionMode.FIRST_PRINCIPLES:
        arg = np.maximum(arg, 0.0) ** 2
    E = cfg.effective_height + arg / cfg.L ** 2
    return float(E) if np.ndim(E) == 0 else E


def energy_branch(arg: float) -> int:
    """tan 인자의 분기 Ń: arg − Ńπ ∈ [−π/2, π/2)"""
    return int(math.floor(arg / math.pi + 0.5))


def kappa_branch(kappa: float) -> int:
    """κ 의 분기 N: κ − Nπ ∈ [−π/2, π/2)"""
    return int(math.floor(kappa / math.pi + 0.5))


def cos2_kappa(cfg: SystemConfig, E: float,
               mode: DispersionMode = DispersionMode.PAPER_FAITHFUL,
               settings: Optional[SolverSettings] = None) -> Cos2Kappa:
    """cos²κ = 1/(1 + g·tan²(arg)), tan 극점 근처에서는 정확히 0 과 극점 플래그"""
    settings = _settings(settings)
    wavenumbers(E, cfg.V, cfg.regime)
    g = coefficient_g(E, cfg.V, cfg.c)
    if g <= 0.0:
        raise ExcludedEnergyError(
            f"g = {g:.6g} <= 0 at E={E}: allowed energies satisfy V > E > V/(1+c)"
        )
    arg = tangent_argument(cfg, E, mode)
    cos_a = math.cos(arg)
    if abs(cos_a) < settings.pole_eps:
        return Cos2Kappa(0.0, at_pole=True)
    # cos² 형태: 1/(1+g tan²) 와 같지만 극점 근처에서 유한
    cos2 = cos_a * cos_a
    return Cos2Kappa(cos2 / (cos2 + g * math.sin(arg) ** 2))


def _signed_branches(cfg: SystemConfig, E, kappa: float, mode: DispersionMode,
                     linearized: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    F± = √g·sin(arg)·cosκ ∓ cos(arg)·sinκ
    잔차 cos²κ − cos²a/(cos²a + g sin²a) = F+·F−/(cos²a + g sin²a) 이므로 F± 의 부호변화가 곧 근
    linearized 이면 tan(arg) → θ 로 치환 (작은 L 근사)
    """
    E = np.asarray(E, dtype=float)
    g = _g_values(E, cfg.V, cfg.c)
    arg = np.asarray(tangent_argument(cfg, E, mode), dtype=float)
    with np.errstate(invalid='ignore'):
        root_g = np.sqrt(g)
    if linearized:
        s, co = arg, np.ones_like(arg)
    else:
        s, co = np.sin(arg), np.cos(arg)
    ck, sk = math.cos(kappa), math.sin(kappa)
    with np.errstate(invalid='ignore'):
        plus = root_g * s * ck - co * sk
        minus = root_g * s * ck + co * sk
    return plus, minus


# ---------------------------------------------------------------------------
# 에너지 창 / 격자
# ---------------------------------------------------------------------------

def regime_window(cfg: SystemConfig, settings: Optional[SolverSettings] = None) -> Tuple[float, float]:
    """영역별 허용 구간: [V + ε_V, ∞) 또는 (V/(1+c), V − ε_V]"""
    settings = _settings(settings)
    band = settings.ev_exclusion * cfg.V
    if cfg.regime is Regime.ABOVE:
        return cfg.V + band, math.inf
    return math.nextafter(cfg.effective_height, math.inf), cfg.V - band


def _admissible_window(cfg: SystemConfig, window: Tuple[float, float],
                       settings: SolverSettings) -> Tuple[float, float]:
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise WindowError(f"empty energy window [{lo}, {hi}]")
    if not math.isfinite(hi):
        raise WindowError("energy window must be bounded above")

    r_lo, r_hi = regime_window(cfg, settings)
    if cfg.regime is Regime.ABOVE:
        if lo < r_lo:
            raise WindowError(
                f"above-barrier window [{lo}, {hi}] touches the E = V exclusion band "
                f"(lower edge must be >= {r_lo})"
            )
        return lo, hi

    c_lo, c_hi = max(lo, r_lo), min(hi, r_hi)
    if not c_lo < c_hi:
        raise WindowError(
            f"below-barrier window [{lo}, {hi}] misses the allowed range ({r_lo}, {r_hi})"
        )
    if (c_lo, c_hi) != (lo, hi):
        logger.debug(f"Window [{lo}, {hi}] clipped to ({c_lo}, {c_hi})")
    return c_lo, c_hi


def energy_grid(cfg: SystemConfig, window: Tuple[float, float],
                mode: DispersionMode = DispersionMode.PAPER_FAITHFUL,
                settings: Optional[SolverSettings] = None) -> np.ndarray:
    """
    균등 E 격자 (window_divisions) 와 tan 인자 균등 격자 (π/grid_divisions) 의 합집합.
    PaperFaithful 에서는 간격 min(π/(8L²), 폭/1024) 와 같다.
    """
    settings = _settings(settings)
    lo, hi = _admissible_window(cfg, window, settings)
    a_lo, a_hi = tangent_argument(cfg, lo, mode), tangent_argument(cfg, hi, mode)
    arg_step = math.pi / settings.grid_divisions
    n_arg = int(math.ceil((a_hi - a_lo) / arg_step))
    total = settings.window_divisions + n_arg + 2
    if total > settings.max_grid_points:
        raise GridTooCoarseError(
            f"window [{lo}, {hi}] spans {(a_hi - a_lo) / math.pi:.3g} tangent quasi-periods; "
            f"{total} grid points exceed max_grid_points={settings.max_grid_points}. "
            f"Narrow the window or the branch range"
        )

    parts = [np.linspace(lo, hi, settings.window_divisions + 1)]
    if n_arg > 0:
        parts.append(np.asarray(energy_from_argument(cfg, np.linspace(a_lo, a_hi, n_arg + 1), mode)))
    grid = np.unique(np.concatenate(parts))
    return grid[(grid >= lo) & (grid <= hi)]


def branch_window_energies(cfg: SystemConfig, branches: Tuple[int, int],
                           mode: DispersionMode = DispersionMode.PAPER_FAITHFUL,
                           settings: Optional[SolverSettings] = None) -> Tuple[float, float]:
    """
    상대 분기 창 (n0, n1) 을 에너지 창으로 변환.
    분기 0 은 첫 허용 분기 (장벽 위: E = V 가 속한 분기, 장벽 아래: arg = 0 분기)
    """
    settings = _settings(settings)
    n0, n1 = branches
    if n1 < n0:
        raise WindowError(f"branch window {n0}:{n1} is empty")

    r_lo, r_hi = regime_window(cfg, settings)
    base = energy_branch(tangent_argument(cfg, r_lo, mode)) if cfg.regime is Regime.ABOVE else 0
    e_lo = energy_from_argument(cfg, (base + n0 - 0.5) * math.pi, mode)
    e_hi = energy_from_argument(cfg, (base + n1 + 0.5) * math.pi, mode)
    lo, hi = max(e_lo, r_lo), min(e_hi, r_hi)
    if not lo < hi:
        raise WindowError(f"branch window {n0}:{n1} has no admissible energies")
    return lo, hi


# ---------------------------------------------------------------------------
# 근 탐색
# ---------------------------------------------------------------------------

def _root_xtol(cfg: SystemConfig, E: float, settings: SolverSettings) -> float:
    # tan 인자 기준으로도 분해되도록 L² 로 나눔
    return settings.root_xtol * max(1.0, abs(E)) / max(1.0, cfg.L ** 2)


def _grid_roots(func: Callable[[float], float], grid: np.ndarray, values: np.ndarray,
                xtol: float) -> Tuple[List[float], List[float]]:
    """부호변화 근 (brentq) 과 접선 후보 (|F| 국소 최소, minimize_scalar)"""
    crossings: List[float] = []
    tangencies: List[float] = []
    finite = np.isfinite(values)

    for i in np.flatnonzero(finite & (values == 0.0)):
        crossings.append(float(grid[i]))

    change = finite[:-1] & finite[1:] & (values[:-1] * values[1:] < 0.0)
    for i in np.flatnonzero(change):
        crossings.append(float(optimize.brentq(func, grid[i], grid[i + 1], xtol=xtol, rtol=_RTOL)))

    if len(grid) >= 3:
        mag = np.abs(values)
        candidate = (
            finite[:-2] & finite[1:-1] & finite[2:]
            & (mag[1:-1] < mag[:-2]) & (mag[1:-1] < mag[2:])
            & (values[:-2] * values[1:-1] > 0.0) & (values[1:-1] * values[2:] > 0.0)
        )
        for j in np.flatnonzero(candidate):
            res = optimize.minimize_scalar(
                lambda e: abs(func(e)), bounds=(grid[j], grid[j + 2]),
                method='bounded', options={'xatol': xtol}
            )
            tangencies.append(float(res.x))
    return crossings, tangencies


def _merge_roots(tagged: List[Tuple[float, str]], tol: float) -> List[Tuple[float, int, Tuple[str, ...]]]:
    """같은 에너지의 F+, F− 근을 하나로 합치고 중복도 합산"""
    merged: List[Tuple[float, int, Tuple[str, ...]]] = []
    for E, tag in sorted(tagged):
        mult = 2 if tag == 'tangency' else 1
        if merged and abs(E - merged[-1][0]) <= tol:
            prev_E, prev_mult, prev_tags = merged[-1]
            tags = prev_tags if tag in prev_tags else prev_tags + (tag,)
            merged[-1] = (prev_E, max(2, prev_mult), tags)
        else:
            merged.append((E, mult, (tag,)))
    return merged


def constant_energy_plateau(cfg: SystemConfig, settings: Optional[SolverSettings] = None) -> Optional[float]:
    """작은 c 의 상수 에너지 해: 장벽 위 E ≈ V, 장벽 아래 E ≈ V/(1+c)"""
    settings = _settings(settings)
    if cfg.c >= settings.plateau_c:
        return None
    return cfg.V if cfg.regime is Regime.ABOVE else cfg.effective_height


def _is_plateau(cfg: SystemConfig, E: float, plateau: Optional[float]) -> bool:
    return plateau is not None and abs(E - plateau) <= cfg.c * cfg.V


def _collect_samples(cfg: SystemConfig, kappa: float, window: Tuple[float, float],
                     mode: DispersionMode, settings: SolverSettings,
                     grid: np.ndarray, linearized: bool) -> List[SpectrumSample]:
    xtol = _root_xtol(cfg, window[1], settings)
    plus_vals, minus_vals = _signed_branches(cfg, grid, kappa, mode, linearized)

    def plus(e: float) -> float:
        return float(_signed_branches(cfg, e, kappa, mode, linearized)[0])

    def minus(e: float) -> float:
        return float(_signed_branches(cfg, e, kappa, mode, linearized)[1])

    tagged: List[Tuple[float, str]] = []
    for tag, func, values in (('+', plus, plus_vals), ('-', minus, minus_vals)):
        crossings, tangencies = _grid_roots(func, grid, values, xtol)
        tagged.extend((E, tag) for E in crossings)
        for E in tangencies:
            if abs(_residual(cfg, kappa, E, mode, settings, linearized)[0]) < settings.tangency_tol:
                tagged.append((E, 'tangency'))

    if cfg.regime is Regime.BELOW:
        # E = V/(1+c) 에서 sin θ = 0 이 되는 경계 해는 허용 구간 밖
        inside = [(E, tag) for E, tag in tagged if E > cfg.effective_height]
        if len(inside) < len(tagged):
            logger.debug(f"Dropped {len(tagged) - len(inside)} root(s) at E <= V/(1+c) for kappa={kappa}")
        tagged = inside

    plateau = constant_energy_plateau(cfg, settings)
    kappa_n = kappa_branch(kappa)
    samples = []
    for E, multiplicity, tags in _merge_roots(tagged, max(1e3 * xtol, 1e-14 * abs(window[1]))):
        residual, at_pole = _residual(cfg, kappa, E, mode, settings, linearized)
        if abs(residual) > settings.residual_tol:
            raise ResidualError(
                f"root E={E!r} at kappa={kappa!r} fails re-verification "
                f"(|residual|={abs(residual):.3g} > {settings.residual_tol})"
            )
        flags = []
        if at_pole:
            flags.append('pole')
        if 'tangency' in tags:
            flags.append('tangency')
        if linearized:
            flags.append('small-L')
        if _is_plateau(cfg, E, plateau):
            flags.append('plateau')
        samples.append(SpectrumSample(
            kappa=kappa, E=E,
            branch=(kappa_n, energy_branch(tangent_argument(cfg, E, mode))),
            mode=mode, regime=cfg.regime, multiplicity=multiplicity,
            flags=tuple(flags), residual=abs(residual),
        ))
    return samples


def _residual(cfg: SystemConfig, kappa: float, E: float, mode: DispersionMode,
              settings: SolverSettings, linearized: bool) -> Tuple[float, bool]:
    target = math.cos(kappa) ** 2
    if linearized:
        theta = tangent_argument(cfg, E, mode)
        g = coefficient_g(E, cfg.V, cfg.c)
        return target - 1.0 / (1.0 + g * theta * theta), False
    value = cos2_kappa(cfg, E, mode, settings)
    return target - value.value, value.at_pole


def verify_sample(cfg: SystemConfig, sample: SpectrumSample,
                  settings: Optional[SolverSettings] = None) -> float:
    """출력 직전 잔차 재검증, 허용오차를 넘으면 ResidualError"""
    settings = _settings(settings)
    linearized = 'small-L' in sample.flags
    residual, _ = _residual(cfg, sample.kappa, sample.E, sample.mode, settings, linearized)
    if abs(residual) > settings.residual_tol:
        raise ResidualError(
            f"sample (kappa={sample.kappa!r}, E={sample.E!r}) has residual {abs(residual):.3g}"
        )
    return abs(residual)


def solve_energies(cfg: SystemConfig, kappa: float, E_window: Tuple[float, float],
                   mode: DispersionMode = DispersionMode.PAPER_FAITHFUL,
                   max_roots: Optional[int] = None,
                   settings: Optional[SolverSettings] = None) -> List[SpectrumSample]:
    """
    창 안의 tan²κ = g·tan²(arg) 의 모든 근 (E 오름차순)

    F± 의 부호변화를 격자에서 찾아 brentq 로 정밀화하고, F+ 와 F− 가 공유하는 근
    (κ ≡ 0, π/2 mod π) 과 접선 근은 중복도 2 로 보고한다.
    """
    settings = _settings(settings)
    mode = DispersionMode(mode)
    grid = energy_grid(cfg, E_window, mode, settings)
    window = (float(grid[0]), float(grid[-1]))
    logger.debug(f"solve_energies kappa={kappa} window={window} grid={len(grid)} mode={mode.value}")
    samples = _collect_samples(cfg, kappa, window, mode, settings, grid, linearized=False)
    return samples if max_roots is None else samples[:max_roots]


def small_L_energies(cfg: SystemConfig, kappa: float, E_window: Tuple[float, float],
                     settings: Optional[SolverSettings] = None) -> List[SpectrumSample]:
    """tan θ ≈ θ 선형화: tan²κ = g·θ². |θ| < small_l_theta 가 창 전체에서 성립해야 함"""
    settings = _settings(settings)
    lo, hi = _admissible_window(cfg, E_window, settings)
    theta_max = max(abs(tangent_argument(cfg, lo)), abs(tangent_argument(cfg, hi)))
    if theta_max >= settings.small_l_theta:
        raise SmallLengthError(
            f"|theta| reaches {theta_max:.4g} in [{lo}, {hi}] (guard {settings.small_l_theta}); "
            f"the tangent linearization is not valid for L={cfg.L}"
        )
    grid = np.linspace(lo, hi, settings.window_divisions + 1)
    return _collect_samples(cfg, kappa, (lo, hi), DispersionMode.PAPER_FAITHFUL,
                            settings, grid, linearized=True)


# ---------------------------------------------------------------------------
# 특수 κ 닫힌 해 / 부등식
# ---------------------------------------------------------------------------

def _special_energy(kappa_class: KappaClass, N: int, cfg: SystemConfig) -> float:
    step = (2 * N + 1) * math.pi / (2.0 * cfg.L ** 2) if kappa_class.kind is KappaKind.HALF_ODD \
        else N * math.pi / cfg.L ** 2
    # 장벽 위에서는 κ 부호와 무관하게 + 형태
    sign = kappa_class.sign if cfg.regime is Regime.BELOW else 1
    return sign * step + cfg.effective_height


def admissible(kappa_class: KappaClass, N: int, cfg: SystemConfig) -> Admissibility:
    """x = (2N+1)π/2 또는 Nπ 일 때 x(1+c)/(cL²) 와 V 비교, 장벽 아래 음의 부호는 E > 0 부가조건"""
    if N < 0:
        raise DomainError(f"branch index must be non-negative (N={N})")
    half_odd = kappa_class.kind is KappaKind.HALF_ODD
    x = (2 * N + 1) * math.pi / 2.0 if half_odd else N * math.pi
    lhs = x * (1.0 + cfg.c) / (cfg.c * cfg.L ** 2)

    if cfg.regime is Regime.ABOVE:
        name = 'x(1+c)/(cL^2) > V'
        ok = lhs > cfg.V
        reason = f"{lhs:.6g} {'>' if ok else '<='} V={cfg.V:g}"
        return Admissibility(ok, name, reason)

    name = 'x(1+c)/(cL^2) < V'
    if kappa_class.sign > 0:
        ok = lhs < cfg.V
        reason = f"{lhs:.6g} {'<' if ok else '>='} V={cfg.V:g}"
        # N = 0 의 정수배 κ 는 E = V/(1+c), 열린 구간 경계
        outside = ok and x == 0.0
        return Admissibility(ok, name, reason, outside_allowed_range=outside)

    # 음의 부호: -lhs < V 는 항상 성립, x/L² < V/(1+c) (즉 E > 0) 이 부가조건
    shift = x / cfg.L ** 2
    ok = shift < cfg.effective_height
    reason = (f"{x:.6g}/L^2 = {shift:.6g} {'<' if ok else '>='} V/(1+c)={cfg.effective_height:.6g}")
    return Admissibility(ok, 'x/L^2 < V/(1+c)', reason, outside_allowed_range=True)


def special_energies(kind: KappaKind, sign: int, N: int, cfg: SystemConfig) -> Optional[float]:
    """특수 κ 의 닫힌 해, 부등식을 만족할 때만 반환"""
    kappa_class = KappaClass(kind, sign)
    verdict = admissible(kappa_class, N, cfg)
    if not verdict.ok:
        return None
    return _special_energy(kappa_class, N, cfg)


def special_kappa_row(kappa_class: KappaClass, N: int, cfg: SystemConfig) -> Dict:
    verdict = admissible(kappa_class, N, cfg)
    return {
        'kind': kappa_class.kind.value,
        'sign': '+' if kappa_class.sign > 0 else '-',
        'N': N,
        'kappa': kappa_class.kappa(N),
        'E': _special_energy(kappa_class, N, cfg),
        'admissible': verdict.ok,
        'inequality': verdict.inequality,
        'reason': verdict.reason,
        'flags': OUTSIDE_RANGE_FLAG if verdict.outside_allowed_range else '',
    }


# ---------------------------------------------------------------------------
# 선형 영역 (c > 3)
# ---------------------------------------------------------------------------

def linear_admissible(kappa: float, N: int, sign: int, cfg: SystemConfig) -> Admissibility:
    """
    장벽 위: Nπ ± κ > VL²c/(1+c)
    장벽 아래: 0 < Nπ ± κ 이고 (1+c)(Nπ ± κ)/(L²c) < V
    """
    x = N * math.pi + sign * kappa
    if cfg.regime is Regime.ABOVE:
        threshold = cfg.linear_threshold
        ok = x > threshold
        return Admissibility(ok, 'E > V', f"N*pi{'+' if sign > 0 else '-'}kappa = {x:.6g} "
                                          f"{'>' if ok else '<='} {threshold:.6g}")
    lhs = (1.0 + cfg.c) * x / (cfg.L ** 2 * cfg.c)
    ok = 0.0 < x and lhs < cfg.V
    return Admissibility(ok, '(1+c)x/(L^2 c) < V', f"(1+c)x/(L^2 c) = {lhs:.6g} with x = {x:.6g}, V={cfg.V:g}")


def linear_regime_energy(kappa: float, N: int, sign: int, cfg: SystemConfig) -> Optional[float]:
    """E = (Nπ ± κ)/L² + V/(1+c), 영역 조건을 만족할 때만"""
    if not linear_admissible(kappa, N, sign, cfg).ok:
        return None
    return (N * math.pi + sign * kappa) / cfg.L ** 2 + cfg.effective_height


def linear_regime_valid(cfg: SystemConfig, window: Tuple[float, float], tol: float = 1e-2) -> bool:
    """c > 3 이거나 창 전체에서 |g − 1| <= tol (g 는 창 안에서 감소하므로 하한에서 확인)"""
    if cfg.c > 3.0:
        return True
    lo = max(float(window[0]), math.nextafter(cfg.effective_height, math.inf))
    try:
        return abs(coefficient_g(lo, cfg.V, cfg.c) - 1.0) <= tol
    except PoleError:
        return False


# ---------------------------------------------------------------------------
# 밴드 스캔
# ---------------------------------------------------------------------------

def make_kappa_grid(start: float, stop: float, step: float) -> np.ndarray:
    """[start, stop] 포함 등간격 κ 격자"""
    if not step > 0:
        raise ValueError(f"kappa step must be positive (step={step})")
    if stop < start:
        return np.empty(0)
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def check_kappa_grid(kappa_grid: Sequence[float], settings: SolverSettings) -> float:
    grid = np.asarray(kappa_grid, dtype=float)
    if grid.size == 0:
        raise WindowError("kappa grid is empty")
    if grid.size == 1:
        return 0.0
    steps = np.diff(grid)
    if np.any(steps <= 0):
        raise WindowError("kappa grid must be strictly increasing")
    step = float(np.max(steps))
    if step > settings.max_kappa_step:
        raise GridTooCoarseError(f"kappa step {step} exceeds max_kappa_step={settings.max_kappa_step}")
    return step


def build_band_report(cfg: SystemConfig, kappa_grid: Sequence[float],
                      per_kappa: Sequence[List[SpectrumSample]],
                      E_window: Tuple[float, float],
                      mode: DispersionMode = DispersionMode.PAPER_FAITHFUL,
                      settings: Optional[SolverSettings] = None) -> BandGapReport:
    """κ 별 근 목록으로부터 밴드/갭 분할과 점프 목록 생성"""
    settings = _settings(settings)
    grid = np.asarray(kappa_grid, dtype=float)
    kappa_step = check_kappa_grid(grid, settings)
    e_grid = energy_grid(cfg, E_window, mode, settings)
    window = (float(e_grid[0]), float(e_grid[-1]))
    threshold = settings.jump_fraction * (window[1] - window[0])

    has_root = [len(s) > 0 for s in per_kappa]
    bands: List[KappaInterval] = []
    gaps: List[KappaInterval] = []
    i, n = 0, len(grid)
    while i < n:
        j = i
        while j + 1 < n and has_root[j + 1] == has_root[i]:
            j += 1
        if has_root[i]:
            bands.append(KappaInterval(float(grid[i]), float(grid[j])))
        else:
            # 밴드 사이의 갭은 열린 구간, 창 끝에 닿으면 그쪽은 닫힘
            lo = float(grid[i - 1]) if i > 0 else float(grid[0])
            hi = float(grid[j + 1]) if j + 1 < n else float(grid[-1])
            gaps.append(KappaInterval(lo, hi, closed_lo=(i == 0), closed_hi=(j + 1 == n)))
        i = j + 1

    jumps: List[Jump] = []
    for k in range(n - 1):
        if has_root[k] and has_root[k + 1]:
            left, right = per_kappa[k][0].E, per_kappa[k + 1][0].E
            if abs(right - left) > threshold:
                jumps.append(Jump(float(0.5 * (grid[k] + grid[k + 1])), left, right))

    samples = [s for group in per_kappa for s in group]
    if gaps:
        logger.info(f"Band scan: {len(bands)} bands, {len(gaps)} gaps, {len(jumps)} jumps")
    return BandGapReport(
        bands=bands, gaps=gaps, jumps=jumps,
        kappa_window=(float(grid[0]), float(grid[-1])), kappa_step=kappa_step,
        energy_window=window, energy_step=float(np.max(np.diff(e_grid))),
        jump_threshold=threshold, mode=DispersionMode(mode), regime=cfg.regime,
        n_samples=len(samples), samples=samples,
    )


def scan_bands(cfg: SystemConfig, kappa_grid: Sequence[float], E_window: Tuple[float, float],
               mode: DispersionMode = DispersionMode.PAPER_FAITHFUL,
               settings: Optional[SolverSettings] = None) -> BandGapReport:
    """κ 격자 순차 스캔 (동시 실행은 collectors.spectrum_collector)"""
    settings = _settings(settings)
    check_kappa_grid(kappa_grid, settings)
    per_kappa = [solve_energies(cfg, float(k), E_window, mode, settings=settings) for k in kappa_grid]
    return build_band_report(cfg, kappa_grid, per_kappa, E_window, mode, settings)
