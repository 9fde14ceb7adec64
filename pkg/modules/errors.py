"""Exception hierarchy shared by the library, the collectors and the CLI"""


class MbspecError(Exception):
    """모든 도메인 오류의 기본 클래스 (exit_code 는 CLI 종료 코드)"""

    exit_code = 1


class ConfigError(MbspecError, ValueError):
    """잘못된 설정/CLI 입력"""

    exit_code = 2


class DomainError(MbspecError, ValueError):
    """물리 파라미터가 정의역 밖에 있음"""

    exit_code = 2


class SingularityError(DomainError):
    """E = V (q = 0) 에서 ξ, η 발산"""


class PoleError(DomainError):
    """E(1+c) = V 에서 g 발산"""


class BranchError(DomainError):
    """허수 φ (E < V/(1+c)) 는 실수 스펙트럼 분기가 아님"""


class ExcludedEnergyError(DomainError):
    """g <= 0, 분산관계의 우변이 음수가 되는 에너지"""


class SolverRefusal(MbspecError):
    """근을 놓칠 수 있는 입력은 조용히 넘기지 않고 거부"""

    exit_code = 3


class WindowError(SolverRefusal):
    """빈 에너지 창 또는 E = V 제외 구간과 겹치는 창"""


class GridTooCoarseError(SolverRefusal):
    """요구 격자점 수가 한도를 넘음"""


class SmallLengthError(SolverRefusal):
    """tan 선형화 유효 조건 위반"""


class ResidualError(SolverRefusal):
    """출력 직전 재검증에서 잔차가 허용오차를 넘음"""
