"""
코셋 코드 시뮬레이션 모듈

기능:
- F_q 위 무작위 선형 코드와 코셋 열거
- 합 닫힘 성질 확인 (두 코셋의 합은 단일 코셋)
- 예제 1 채널 위 합 복호 몬테카를로

난수: Philox 카운터 기반 생성기, 키 (seed, 스트림), 시행마다 별도 스트림
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from COSETLAB.config import settings
from COSETLAB.core.exceptions import DomainError, GuardExceededError, ModulusMismatchError
from COSETLAB.schemas.report import ClosureReport, SimReport
from COSETLAB.services.finite_math import SUPPORTED_FIELDS, binary_entropy, check_prob, fq_rank
from COSETLAB.services.region_analysis import (
    IcParams,
    coset_sum_margin,
    embedded_joint,
    ex1_joint,
    sum_decode_bound,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """k×n 생성 행렬 G 의 F_q 선형 코드"""
    n: int
    k: int
    q: int
    G: np.ndarray

    def __post_init__(self):
        if self.q not in SUPPORTED_FIELDS:
            raise ModulusMismatchError(self.q)
        if not 0 <= self.k <= self.n:
            raise DomainError("k", self.k, f"[0, n={self.n}]")
        G = np.asarray(self.G, dtype=np.int64).reshape(self.k, self.n)
        if G.size and (G.min() < 0 or G.max() >= self.q):
            raise DomainError("G", "원소", f"[0, {self.q})")
        G.setflags(write=False)
        object.__setattr__(self, "G", G)

    @property
    def rank(self) -> int:
        return fq_rank(self.G, self.q) if self.k else 0


@dataclass(frozen=True, eq=False)
class CosetCodebook:
    """코셋 C + shift"""
    code: LinearCode
    shift: np.ndarray

    def __post_init__(self):
        shift = np.asarray(self.shift, dtype=np.int64).reshape(-1)
        if shift.size != self.code.n:
            raise DomainError("shift 길이", shift.size, f"{{{self.code.n}}}")
        if shift.min(initial=0) < 0 or shift.max(initial=0) >= self.code.q:
            raise DomainError("shift", "원소", f"[0, {self.code.q})")
        shift.setflags(write=False)
        object.__setattr__(self, "shift", shift)


# Philox 키 두 번째 원소: 용도별 스트림
_STREAM_CODE = 0
_STREAM_SHIFTS = 1
_STREAM_CONTRAST = 2
_STREAM_SHAPING = 3
_STREAM_TRIALS = 1 << 32


def _philox(seed: int, stream: int) -> np.random.Generator:
    """키 (seed, stream) 의 Philox 생성기"""
    return np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))


def _check_seed(seed: int) -> int:
    if not 0 <= seed < 2 ** 64:
        raise DomainError("seed", seed, "[0, 2^64)")
    return int(seed)


def sample_code(n: int, k: int, q: int, seed: int) -> LinearCode:
    """원소가 F_q 위 균등 iid 인 무작위 생성 행렬"""
    if q not in SUPPORTED_FIELDS:
        raise ModulusMismatchError(q)
    if not 0 <= k <= n:
        raise DomainError("k", k, f"[0, n={n}]")
    rng = _philox(_check_seed(seed), _STREAM_CODE)
    return LinearCode(n=n, k=k, q=q, G=rng.integers(0, q, size=(k, n)))


def _all_messages(k: int, q: int) -> np.ndarray:
    """F_q^k 전체 메시지 [q^k, k], 사전식"""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q ** k)
    return np.stack(np.unravel_index(idx, (q,) * k), axis=1).astype(np.int64)


def _codewords(code: LinearCode, guard: int) -> np.ndarray:
    size = code.q ** code.k
    if size > guard:
        raise GuardExceededError("코드북 크기", size, guard)
    return (_all_messages(code.k, code.q) @ code.G) % code.q


def enumerate_coset(cb: CosetCodebook) -> np.ndarray:
    """{mG + shift : m ∈ F_q^k} [q^k, n] (중복 포함, 메시지 순서)"""
    return (_codewords(cb.code, settings.ENUM_GUARD) + cb.shift) % cb.code.q


def _distinct_pair_sums(a: np.ndarray, b: np.ndarray, q: int) -> int:
    pairs = a.shape[0] * b.shape[0]
    if pairs > settings.ENUM_GUARD:
        raise GuardExceededError("코드워드 쌍", pairs, settings.ENUM_GUARD)
    sums = (a[:, None, :] + b[None, :, :]) % q
    return int(np.unique(sums.reshape(pairs, -1), axis=0).shape[0])


def sum_support_count(a: CosetCodebook, b: CosetCodebook) -> int:
    """|{u_a ⊕_q u_b}|, 같은 코드의 두 코셋이면 q^rank(G)"""
    if a.code is not b.code and not (
        a.code.q == b.code.q and a.code.G.shape == b.code.G.shape and np.array_equal(a.code.G, b.code.G)
    ):
        raise DomainError("codebook", "서로 다른 코드", "같은 LinearCode")
    return _distinct_pair_sums(enumerate_coset(a), enumerate_coset(b), a.code.q)


def independent_sum_count(n: int, k: int, q: int, seed: int) -> int:
    """서로 독립인 두 무작위 코드북 (각 q^k 단어) 의 서로 다른 합 개수"""
    if q not in SUPPORTED_FIELDS:
        raise ModulusMismatchError(q)
    rng = _philox(_check_seed(seed), _STREAM_CONTRAST)
    size = q ** k
    a = rng.integers(0, q, size=(size, n))
    b = rng.integers(0, q, size=(size, n))
    return _distinct_pair_sums(a, b, q)


def closure_report(n: int, k: int, q: int, seed: int) -> ClosureReport:
    """닫힘 성질과 독립 코드북 대조"""
    code = sample_code(n, k, q, seed)
    rng = _philox(seed, _STREAM_SHIFTS)
    a = CosetCodebook(code, rng.integers(0, q, size=n))
    b = CosetCodebook(code, rng.integers(0, q, size=n))
    rank = code.rank
    count = sum_support_count(a, b)
    if count != q ** rank:
        logger.warning(f"⚠️ 합 지지 개수 {count} ≠ q^rank = {q ** rank}")
    return ClosureReport(
        n=n, k=k, q=q, seed=seed,
        rank=rank,
        sum_support_count=count,
        expected_count=q ** rank,
        independent_sum_count=independent_sum_count(n, k, q, seed),
        pair_count=q ** (2 * k),
    )


def interference_bit(v: np.ndarray) -> np.ndarray:
    """삼진 합 v = x₂ ⊕₃ x₃ 로부터 x₂ ∨ x₃ = 1[v ≠ 0]"""
    return (np.asarray(v) != 0).astype(np.int64)


def or_is_function_of_sum() -> bool:
    """{0,1}² 네 쌍 모두에서 x₂ ∨ x₃ 가 x₂ ⊕₃ x₃ 의 함수인지"""
    seen = {}
    for a in (0, 1):
        for b in (0, 1):
            s, o = (a + b) % 3, a | b
            if seen.setdefault(s, o) != o:
                return False
    return True


# ============================================
# 합 복호 몬테카를로
# ============================================

ENCODERS = ("coset", "dither")

_TRIAL_CHUNK = 64
_RANK_ATTEMPTS = 64


def covering_dimension(n: int, tau: float, q: int = 3) -> int:
    """목표 조성 (1−τ, τ, 0, …) 으로 덮는 데 필요한 성형 행 수 ⌈n(log₂q − h_b(τ))/log₂q⌉"""
    if not 0.0 <= tau <= 0.5:
        raise DomainError("tau", tau, "[0, 0.5]")
    log_q = math.log2(q)
    return int(math.ceil(n * (log_q - binary_entropy(tau)) / log_q - 1e-12))


def _max_enum_dim(q: int, guard: int) -> int:
    dim = 0
    while q ** (dim + 1) <= guard:
        dim += 1
    return dim


def _shaping_dimension(n: int, k: int, q: int, tau: float, shaping_k: Optional[int]) -> int:
    """성형 행 수: 지정값 검사, 없으면 덮개 차원을 복호 한도 안에서"""
    room = _max_enum_dim(q, settings.DECODE_GUARD) - k
    if shaping_k is None:
        cover = covering_dimension(n, tau, q)
        chosen = max(0, min(cover, n - k, room))
        if chosen < cover:
            logger.warning(f"⚠️ 성형 행 {chosen}개 (덮개 차원 {cover}, 복호 한도로 제한)")
        return chosen
    if not 0 <= shaping_k <= n - k:
        raise DomainError("shaping_k", shaping_k, f"[0, n−k={n - k}]")
    if shaping_k > room:
        raise GuardExceededError("합 코셋 복호", q ** (k + shaping_k), settings.DECODE_GUARD)
    return shaping_k


def _shaping_generator(code: LinearCode, shaping_k: int, seed: int) -> np.ndarray:
    """[G; G_s] 가 가능한 최대 계수가 되도록 성형 행 G_s 추출"""
    n, q = code.n, code.q
    if shaping_k == 0:
        return np.zeros((0, n), dtype=np.int64)
    rng = _philox(seed, _STREAM_SHAPING)
    target = min(code.k + shaping_k, n)
    for _ in range(_RANK_ATTEMPTS):
        G_s = rng.integers(0, q, size=(shaping_k, n))
        if fq_rank(np.vstack([code.G, G_s]), q) == target:
            return G_s
    logger.warning(f"⚠️ {_RANK_ATTEMPTS}회 추출 후에도 [G; G_s] 계수 {target} 미달")
    return G_s


@dataclass(frozen=True, eq=False)
class _SimSetup:
    """시행 간 공유하는 코드 / 이동 / 열거 결과"""
    code: LinearCode
    encoder: str
    shifts: np.ndarray          # [2, n], 사용자 2, 3 의 공개 코셋 이동
    shaping_words: np.ndarray   # [q^k_s, n]
    sum_words: np.ndarray       # [q^(k+k_s), n], 합 코셋의 이동 전 단어
    target: np.ndarray          # [q], 목표 조성
    weight: int
    seed: int
    delta1: float
    tau1: float


def _nearest_composition(base: np.ndarray, setup: _SimSetup) -> np.ndarray:
    """코셋 base + C_s 에서 조성이 목표에 L1 로 가장 가까운 단어 (동률은 작은 인덱스)"""
    q = setup.code.q
    cands = (setup.shaping_words + base) % q
    freqs = np.stack([(cands == a).mean(axis=1) for a in range(q)], axis=1)
    dist = np.abs(freqs - setup.target).sum(axis=1)
    return cands[int(np.argmin(dist))]


def _shaped_word(rng: np.random.Generator, n: int, weight: int) -> np.ndarray:
    """무게 weight 인 이진 단어 균등 추출"""
    word = np.zeros(n, dtype=np.int64)
    word[rng.permutation(n)[:weight]] = 1
    return word


def _encode_pair(rng: np.random.Generator, setup: _SimSetup) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(u₂, u₃, 합 코셋 이동)"""
    code = setup.code
    n, k, q = code.n, code.k, code.q
    m2 = rng.integers(0, q, size=k)
    m3 = rng.integers(0, q, size=k)
    if setup.encoder == "coset":
        u2 = _nearest_composition((m2 @ code.G + setup.shifts[0]) % q, setup)
        u3 = _nearest_composition((m3 @ code.G + setup.shifts[1]) % q, setup)
        return u2, u3, (setup.shifts[0] + setup.shifts[1]) % q
    u2 = _shaped_word(rng, n, setup.weight)
    u3 = _shaped_word(rng, n, setup.weight)
    # u_j 가 C + m_j G 에 들어가도록 하는 디더, 수신기 1 과 공유
    d2 = (u2 - m2 @ code.G) % q
    d3 = (u3 - m3 @ code.G) % q
    return u2, u3, (d2 + d3) % q


def _run_trials(setup: _SimSetup, start: int, stop: int) -> int:
    """시행 [start, stop) 의 오류 개수"""
    n, q = setup.code.n, setup.code.q
    errors = 0
    for trial in range(start, stop):
        rng = _philox(setup.seed, _STREAM_TRIALS + trial)
        u2, u3, shift = _encode_pair(rng, setup)
        v = (u2 + u3) % q
        x1 = (rng.random(n) < setup.tau1).astype(np.int64)
        noise = (rng.random(n) < setup.delta1).astype(np.int64)
        y = x1 ^ interference_bit(v) ^ noise

        cands = (setup.sum_words + shift) % q
        # 최소 불일치, 동률은 가장 작은 인덱스
        disagreement = ((cands != 0) != y.astype(bool)).sum(axis=1)
        decoded = cands[int(np.argmin(disagreement))]
        if not np.array_equal(decoded, v):
            errors += 1
    return errors


def _ex1_embedded(delta1: float, tau1: float, tau: float, q: int):
    # δ₂, δ₃ 는 Y₁ 분포에 영향 없음
    return embedded_joint(ex1_joint(IcParams(tau1, tau, delta1, delta1)), q=q)


def sum_decode_threshold(delta1: float, tau1: float, tau: float, q: int = 3) -> float:
    """log₂q − H(U₂⊕_qU₃|Y₁): 합 코셋 전체 전송률이 넘으면 합 복호가 깨지는 한계"""
    joint = _ex1_embedded(delta1, tau1, tau, q)
    return sum_decode_bound(joint, receiver_axis=3, sum_axes=(1, 2), q=q)


def simulate_ex1_sum_decode(
    n: int,
    k: int,
    q: int = 3,
    delta1: float = 0.01,
    tau1: float = 1 / 90,
    tau: float = 0.15,
    trials: int = 2000,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    shaping_k: Optional[int] = None,
    encoder: str = "coset",
) -> SimReport:
    """
    예제 1 수신기 1 의 합 코드워드 ML 복호 오류율

    encoder="coset": 메시지 m_j 가 코셋 m_jG + C_s + s_j 를 정하고, 그 안에서
    조성이 (1−τ, τ, 0) 에 가장 가까운 단어를 보냄. 합은 [G; G_s] 코드의 코셋
    C + s₂ + s₃ 안에 있고 수신기 1 은 그 전체를 열거해 복호.
    encoder="dither": 무게 ⌊τn⌉ 단어를 직접 뽑고 디더를 수신기 1 과 공유.

    Args:
        n, k, q: 블록 길이, 메시지 차원, 체 크기 (전송률 k·log₂q/n)
        delta1: 수신기 1 BSC 교차 확률
        tau1: X₁ ~ Bern(τ₁)
        tau: 사용자 2, 3 의 목표 무게 비율
        trials: 시행 수
        seed: Philox 시드 (기본 settings.DEFAULT_SEED)
        threads: 시행 묶음 병렬 워커 수 (기본 settings.THREADS)
        shaping_k: 성형 행 수 (기본: 덮개 차원, q^(k+k_s) ≤ DECODE_GUARD 로 제한)
        encoder: "coset" | "dither"
    """
    if q != 3:
        raise DomainError("q", q, "{3}")
    if encoder not in ENCODERS:
        raise DomainError("encoder", encoder, "{coset, dither}")
    delta1 = check_prob(delta1, "delta1")
    tau1 = check_prob(tau1, "tau1")
    tau = check_prob(tau, "tau")
    if delta1 >= 0.5:
        raise DomainError("delta1", delta1, "[0, 0.5)")
    if tau1 >= 0.5:
        raise DomainError("tau1", tau1, "[0, 0.5)")
    if not 0 < tau < 0.5:
        raise DomainError("tau", tau, "(0, 0.5)")
    if trials < 1:
        raise DomainError("trials", trials, "[1, ∞)")
    if q ** k > settings.DECODE_GUARD:
        raise GuardExceededError("합 코셋 복호", q ** k, settings.DECODE_GUARD)
    seed = _check_seed(settings.DEFAULT_SEED if seed is None else seed)
    threads = threads or settings.THREADS

    code = sample_code(n, k, q, seed)
    if encoder == "dither":
        if shaping_k:
            raise DomainError("shaping_k", shaping_k, "{0} (dither)")
        shaping_k = 0
    shaping_k = _shaping_dimension(n, k, q, tau, shaping_k)
    G_s = _shaping_generator(code, shaping_k, seed)
    fine = np.vstack([code.G, G_s]).astype(np.int64)
    target = np.zeros(q)
    target[0], target[1] = 1.0 - tau, tau

    setup = _SimSetup(
        code=code,
        encoder=encoder,
        shifts=_philox(seed, _STREAM_SHIFTS).integers(0, q, size=(2, n)),
        shaping_words=(_all_messages(shaping_k, q) @ G_s) % q,
        sum_words=(_all_messages(k + shaping_k, q) @ fine) % q,
        target=target,
        weight=int(math.floor(tau * n + 0.5)),
        seed=seed,
        delta1=delta1,
        tau1=tau1,
    )
    rate = k * math.log2(q) / n
    sum_rate = (k + shaping_k) * math.log2(q) / n

    joint = _ex1_embedded(delta1, tau1, tau, q)
    margin = coset_sum_margin(joint, receiver_axis=3, sum_axes=(1, 2), q=q, user_axis=1)
    threshold = sum_decode_bound(joint, receiver_axis=3, sum_axes=(1, 2), q=q)
    logger.info(
        f"🚀 합 복호 시뮬레이션 ({encoder}): n={n}, k={k}, k_s={shaping_k}, "
        f"전송률 {rate:.4f} (코셋 여유 {margin:.4f}), 합 코셋 {sum_rate:.4f} "
        f"(복호 한계 {threshold:.4f}), 시행 {trials}"
    )

    bounds: List[Tuple[int, int]] = [
        (s, min(s + _TRIAL_CHUNK, trials)) for s in range(0, trials, _TRIAL_CHUNK)
    ]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(lambda b: _run_trials(setup, b[0], b[1]), bounds))
    else:
        counts = [_run_trials(setup, s, e) for s, e in bounds]
    errors = sum(counts)

    report = SimReport(
        n=n, k=k, q=q, trials=trials,
        encoder=encoder,
        shaping_k=shaping_k,
        rate=rate,
        sum_coset_rate=sum_rate,
        decode_error_rate=errors / trials,
        errors=errors,
        seed=seed,
        code_rank=fq_rank(fine, q) if fine.shape[0] else 0,
        delta1=delta1, tau1=tau1, tau=tau,
        coset_sum_margin=margin,
        sum_decode_threshold=threshold,
    )
    logger.info(f"📊 합 복호 오류율: {report.decode_error_rate:.4f} ({errors}/{trials})")
    return report
