from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "Coset Code Lab"

    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = ""
    LOG_JSON: bool = False

    # COSETLAB_THREADS
    THREADS: int = 1

    PMF_TOL: float = 1e-12
    CHANNEL_ROW_TOL: float = 1e-9
    COST_SLACK: float = 1e-9

    # C₁ 최적화 (격자 → 황금분할)
    C1_GRID_STEP: float = 1e-3
    C1_GOLDEN_TOL: float = 1e-7
    C1_MAX_ITER: int = 200

    # MAC-DSTx 좌표 상승법
    ASCENT_RESTARTS: int = 20
    ASCENT_COARSE_STEP: float = 0.02
    ASCENT_FINE_STEP: float = 0.002
    ASCENT_MAX_SWEEPS: int = 25
    ASCENT_POLISH_TOP: int = 3

    ENUM_GUARD: int = 2 ** 20
    DECODE_GUARD: int = 2 ** 16
    DEFAULT_SEED: int = 7

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="COSETLAB_",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()


def validate_settings(config: Settings = None) -> bool:
    config = config or settings
    errors = []

    if config.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"LOG_LEVEL이 올바르지 않습니다: {config.LOG_LEVEL}")

    if config.THREADS < 1:
        errors.append("THREADS는 1 이상이어야 합니다.")

    for name in ("PMF_TOL", "CHANNEL_ROW_TOL", "COST_SLACK", "C1_GRID_STEP",
                 "C1_GOLDEN_TOL", "ASCENT_COARSE_STEP", "ASCENT_FINE_STEP"):
        if getattr(config, name) <= 0:
            errors.append(f"{name}은(는) 양수여야 합니다.")

    for name in ("C1_MAX_ITER", "ASCENT_RESTARTS", "ASCENT_MAX_SWEEPS",
                 "ENUM_GUARD", "DECODE_GUARD"):
        if getattr(config, name) < 1:
            errors.append(f"{name}은(는) 1 이상이어야 합니다.")

    if errors:
        raise ValueError("\n".join(errors))

    return True


if __name__ == "__main__":
    print("=== 설정 확인 ===")
    print(f"프로젝트명: {settings.PROJECT_NAME}")
    print(f"로그 레벨: {settings.LOG_LEVEL}")
    print(f"워커 수: {settings.THREADS}")
    print(f"C₁ 격자 간격: {settings.C1_GRID_STEP}, 황금분할 허용오차: {settings.C1_GOLDEN_TOL}")
    print(f"좌표 상승 재시작: {settings.ASCENT_RESTARTS}")
    print(f"복호 열거 한도: {settings.DECODE_GUARD}")
    validate_settings()
    print("\n✅ 설정 로드 완료!")
