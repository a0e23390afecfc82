"""
COSETLAB: 코셋 코드 구조의 정보 이론적 이점 검증 도구
"""
__version__ = "1.0.0"
