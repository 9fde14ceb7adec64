"""Common logging configuration module"""
import logging
import sys
from typing import Union


def setup_logger(level: Union[int, str] = logging.INFO) -> None:
    """Configure common logging settings (진단은 stderr, 데이터는 stdout/파일)"""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO

    # 기존 핸들러 모두 제거
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)

    # 스트림 핸들러 생성 및 설정
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setLevel(level)
    formatter = logging.Formatter('%(asctime)s - %(name)s - [%(levelname)s] - %(message)s')
    stream_handler.setFormatter(formatter)

    # 루트 로거 설정
    root.setLevel(level)
    root.addHandler(stream_handler)

    # collectors 네임스페이스 로거 설정
    logging.getLogger('collectors').setLevel(level)
