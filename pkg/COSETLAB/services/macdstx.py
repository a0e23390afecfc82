"""
MAC-DSTx 합 전송률 경계 모듈

두 인코더가 각자의 상태 성분 S_j 를 비인과적으로 아는 MAC 에서
- iid 경계:   max [I(U₁,U₂;Y) − I(U₁;S₁) − I(U₂;S₂)]⁺
- 코셋 경계:  max [min{H(U₁|S₁), H(U₂|S₂)} − H(U₁⊕_q U₂|Y)]⁺
를 비용 제약 E[κ_j(X_j)] ≤ τ 아래에서 계산

최적화:
1. 결정적 사상 x_j(u, s) 쌍 전수 열거 (U 재표기 대칭 제거)
2. 모든 쌍을 비용 경계 시작점과 소수 재시작으로 선별 → 상위 쌍에 전체 재시작 좌표 상승 (거친 격자 → 세밀 격자)
3. 상위 후보를 SLSQP 로 다듬기
"""
import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.special import entr

from COSETLAB.config import settings
from COSETLAB.core.exceptions import DimensionMismatchError, DomainError, GuardExceededError
from COSETLAB.schemas.report import BoundResult, DstxTestChannelModel, SweepRow
from COSETLAB.services.channel_models import ChannelModel, CostFn
from COSETLAB.services.finite_math import SUPPORTED_FIELDS, check_prob

logger = logging.getLogger(__name__)

BOUNDS = ("iid", "coset")
COSET_FIELDS = (2, 3)
MAX_AUX = 4

# 선별 단계 재시작 수와 정밀 탐색으로 넘길 사상 쌍 수
SCREEN_RESTARTS = 4
TOP_PAIRS = 10

_EVAL_CHUNK = 8192
_INFEASIBLE = -10.0
_ZERO = 1e-12
_LN2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class DstxTestChannel:
    """인코더별 P(U_j|S_j) 와 결정적 사상 x_j(u, s)"""
    q: Optional[int]
    aux_sizes: Tuple[int, int]
    u_laws: Tuple[np.ndarray, np.ndarray]
    x_maps: Tuple[np.ndarray, np.ndarray]

    def to_model(self) -> DstxTestChannelModel:
        return DstxTestChannelModel(
            q=self.q,
            aux_sizes=list(self.aux_sizes),
            u_laws=[law.tolist() for law in self.u_laws],
            x_maps=[m.tolist() for m in self.x_maps],
        )


# ============================================
# 사상 열거
# ============================================

def enumerate_maps(n_x: int, n_s: int, aux: int, symmetry: str) -> np.ndarray:
    """
    x(u, s) 사상 열거 [M, aux, n_s]

    symmetry="permutation": U 순열 동치류 대표 (iid 경계)
    symmetry="translation": F_q 평행이동 동치류 대표 (코셋 경계)
    """
    columns = np.array(list(product(range(n_x), repeat=n_s)), dtype=np.int64).reshape(-1, n_s)
    n_cols = columns.shape[0]
    if symmetry == "permutation":
        tuples = list(combinations_with_replacement(range(n_cols), aux))
    elif symmetry == "translation":
        tuples = [
            t for t in product(range(n_cols), repeat=aux)
            if t == min(tuple(t[(u + a) % aux] for u in range(aux)) for a in range(aux))
        ]
    else:
        raise DomainError("symmetry", symmetry, "{permutation, translation}")
    return columns[np.array(tuples, dtype=np.int64)]


def _sticks(c: np.ndarray) -> np.ndarray:
    """막대 나누기 좌표 [..., A−1] → 확률 [..., A]"""
    remain = np.cumprod(1.0 - c, axis=-1)
    return np.concatenate([c[..., :1], c[..., 1:] * remain[..., :-1], remain[..., -1:]], axis=-1)



def _unstick(p: np.ndarray) -> np.ndarray:
    """확률 [..., A] → 막대 나누기 좌표 [..., A−1]"""
    before = np.concatenate([np.ones(p.shape[:-1] + (1,)), 1.0 - np.cumsum(p, axis=-1)[..., :-2]], axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = np.where(before > 1e-15, p[..., :-1] / before, 0.5)
    return np.clip(c, 0.0, 1.0)

def _cost_table(ch: ChannelModel, terminal: int) -> np.ndarray:
    fns: List[CostFn] = [fn for fn in ch.cost_fns if fn.terminal == terminal]
    if not fns:
        return np.zeros(ch.input_dims[terminal])
    return fns[0].as_array()


# ============================================
# 경계 문제
# ============================================

class _BoundProblem:
    """한 채널·τ·경계 종류에 대한 벡터화 목적함수"""

    def __init__(self, ch: ChannelModel, tau: float, bound: str, aux: int, q: Optional[int]):
        if ch.n_inputs != 2 or len(ch.state_dims) != 2:
            raise DimensionMismatchError("MAC-DSTx 채널 (입력, 상태)", (2, 2), (ch.n_inputs, len(ch.state_dims)))
        self.tau = tau
        self.bound = bound
        self.aux = aux
        self.q = q
        self.slack = settings.COST_SLACK

        n_x1, n_x2 = ch.input_dims
        self.n_s1, self.n_s2 = ch.state_dims
        n_y = math.prod(ch.output_dims)
        self.log_y = math.log2(n_y)
        W5 = ch.W.reshape(n_x1, n_x2, self.n_s1, self.n_s2, n_y)
        self.ws = ch.state_law.reshape(self.n_s1, self.n_s2)
        self.ps1 = self.ws.sum(axis=1)
        self.ps2 = self.ws.sum(axis=0)

        symmetry = "permutation" if bound == "iid" else "translation"
        self.maps1 = enumerate_maps(n_x1, self.n_s1, aux, symmetry)
        self.maps2 = enumerate_maps(n_x2, self.n_s2, aux, symmetry)
        n_pairs = len(self.maps1) * len(self.maps2)
        if n_pairs > settings.ENUM_GUARD:
            raise GuardExceededError("사상 쌍", n_pairs, settings.ENUM_GUARD)
        self.pairs = np.array(list(product(range(len(self.maps1)), range(len(self.maps2)))), dtype=np.int64)

        f1 = self.maps1[self.pairs[:, 0]]  # [P, A, S1]
        f2 = self.maps2[self.pairs[:, 1]]  # [P, A, S2]
        s1 = np.arange(self.n_s1)[None, None, None, :, None]
        s2 = np.arange(self.n_s2)[None, None, None, None, :]
        # [P, S1, S2, A, A, Y]
        wmap = W5[f1[:, :, None, :, None], f2[:, None, :, None, :], s1, s2]
        self.wmap = np.ascontiguousarray(wmap.transpose(0, 3, 4, 1, 2, 5))
        self.k1 = _cost_table(ch, 0)[f1].transpose(0, 2, 1)  # [P, S1, A]
        self.k2 = _cost_table(ch, 1)[f2].transpose(0, 2, 1)  # [P, S2, A]

        self.d1 = self.n_s1 * (aux - 1)
        self.dim = self.d1 + self.n_s2 * (aux - 1)
        if bound == "coset":
            onehot = np.zeros((aux, aux, q))
            for u1, u2 in np.ndindex(aux, aux):
                onehot[u1, u2, (u1 + u2) % q] = 1.0
            self.sum_onehot = onehot
        self.evaluations = 0

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def laws(self, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n = theta.shape[0]
        p1 = _sticks(theta[:, :self.d1].reshape(n, self.n_s1, self.aux - 1))
        p2 = _sticks(theta[:, self.d1:].reshape(n, self.n_s2, self.aux - 1))
        return p1, p2

    def costs(self, theta: np.ndarray, pidx: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        p1, p2 = self.laws(theta)
        cost1 = np.einsum("a,nau,nau->n", self.ps1, p1, self.k1[pidx])
        cost2 = np.einsum("b,nbv,nbv->n", self.ps2, p2, self.k2[pidx])
        return cost1, cost2

    def _evaluate_chunk(self, theta: np.ndarray, pidx: np.ndarray) -> Dict[str, np.ndarray]:
        p1, p2 = self.laws(theta)
        # p(s1, s2, u1, u2)
        psu = self.ws[None, :, :, None, None] * p1[:, :, None, :, None] * p2[:, None, :, None, :]
        joint = psu[..., None] * self.wmap[pidx]

        def H(*keep: int) -> np.ndarray:
            drop = tuple(a for a in range(1, 6) if a not in keep)
            m = joint.sum(axis=drop)
            return entr(m).reshape(m.shape[0], -1).sum(axis=1) / _LN2

        h_s1, h_s2 = H(1), H(2)
        h_s1u1, h_s2u2 = H(1, 3), H(2, 4)
        out = {}
        if self.bound == "iid":
            info_y = H(3, 4) + H(5) - H(3, 4, 5)
            info_1 = H(3) + h_s1 - h_s1u1
            info_2 = H(4) + h_s2 - h_s2u2
            out["objective"] = info_y - info_1 - info_2
        else:
            h1 = h_s1u1 - h_s1
            h2 = h_s2u2 - h_s2
            pwy = np.einsum("nuvy,uvw->nwy", joint.sum(axis=(1, 2)), self.sum_onehot)
            h_y = entr(pwy.sum(axis=1)).sum(axis=1) / _LN2
            h_w_given_y = entr(pwy).reshape(pwy.shape[0], -1).sum(axis=1) / _LN2 - h_y
            out.update(h1=h1, h2=h2, h_sum=h_w_given_y)
            out["objective"] = np.minimum(h1, h2) - h_w_given_y

        cost1 = np.einsum("a,nau,nau->n", self.ps1, p1, self.k1[pidx])
        cost2 = np.einsum("b,nbv,nbv->n", self.ps2, p2, self.k2[pidx])
        violation = np.maximum(cost1 - self.tau, 0.0) + np.maximum(cost2 - self.tau, 0.0)
        feasible = (cost1 <= self.tau + self.slack) & (cost2 <= self.tau + self.slack)
        out.update(cost1=cost1, cost2=cost2)
        out["score"] = np.where(feasible, out["objective"], _INFEASIBLE - violation)
        return out

    def evaluate(self, theta: np.ndarray, pidx: np.ndarray) -> Dict[str, np.ndarray]:
        theta = np.clip(theta, 0.0, 1.0)
        self.evaluations += theta.shape[0]
        chunks = [
            self._evaluate_chunk(theta[i:i + _EVAL_CHUNK], pidx[i:i + _EVAL_CHUNK])
            for i in range(0, theta.shape[0], _EVAL_CHUNK)
        ]
        return {key: np.concatenate([c[key] for c in chunks]) for key in chunks[0]}

    def score(self, theta: np.ndarray, pidx: np.ndarray) -> np.ndarray:
        return self.evaluate(theta, pidx)["score"]

    def initial_thetas(self, restarts: int, seed: int) -> np.ndarray:
        """첫 재시작은 균등 분포, 나머지는 시드 고정 난수"""
        uniform = np.tile(
            np.array([1.0 / (self.aux - i) for i in range(self.aux - 1)]),
            self.n_s1 + self.n_s2,
        )
        rng = np.random.default_rng(seed)
        return np.vstack([uniform[None, :], rng.random((restarts - 1, self.dim))])

    def _shaped_law(self, k: np.ndarray, ps: np.ndarray) -> np.ndarray:
        """
        상태마다 가장 싼 U 에 1−t, 나머지에 t 를 고르게 준 법칙 [N, S, A]

        t 는 평균 비용이 τ 가 되는 값 (균등 법칙에서 멈춤)
        """
        aux = self.aux
        cheap = np.argmin(k, axis=2)[..., None]
        low = np.take_along_axis(k, cheap, axis=2)[..., 0]
        rest = (k.sum(axis=2) - low) / (aux - 1)
        base, spread = low @ ps, rest @ ps
        flat = (aux - 1) / aux
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(spread - base > 1e-15, (self.tau - base) / (spread - base), flat)
        t = np.clip(t, 0.0, flat)
        law = np.broadcast_to((t / (aux - 1))[:, None, None], k.shape).copy()
        np.put_along_axis(law, cheap, np.broadcast_to((1.0 - t)[:, None, None], cheap.shape), axis=2)
        return law

    def shaped_thetas(self, pidx: np.ndarray) -> np.ndarray:
        """사상 쌍별 비용 경계 위 시작점 (x = u ⊕ s 사상이면 Bern(τ) 입력)"""
        n = len(pidx)
        p1 = self._shaped_law(self.k1[pidx], self.ps1)
        p2 = self._shaped_law(self.k2[pidx], self.ps2)
        return np.hstack([_unstick(p1).reshape(n, -1), _unstick(p2).reshape(n, -1)])

    # ============================================
    # 좌표 상승
    # ============================================

    def _boundary(self, theta: np.ndarray, pidx: np.ndarray, d: int) -> np.ndarray:
        """좌표 d 만 움직일 때 비용이 정확히 τ 가 되는 값 (비용은 각 좌표에 대해 아핀)"""
        which = 0 if d < self.d1 else 1
        at0, at1 = theta.copy(), theta.copy()
        at0[:, d], at1[:, d] = 0.0, 1.0
        c0 = self.costs(at0, pidx)[which]
        c1 = self.costs(at1, pidx)[which]
        slope = c1 - c0
        with np.errstate(divide="ignore", invalid="ignore"):
            root = np.where(np.abs(slope) > 1e-15, (self.tau - c0) / slope, np.nan)
        ok = np.isfinite(root) & (root >= 0.0) & (root <= 1.0)
        return np.where(ok, root, theta[:, d])

    def ascend(self, theta: np.ndarray, pidx: np.ndarray, fine: bool) -> Tuple[np.ndarray, np.ndarray]:
        theta = theta.copy()
        n = theta.shape[0]
        rows = np.arange(n)
        if fine:
            half = settings.ASCENT_COARSE_STEP
            offsets = np.linspace(-half, half, int(round(2 * half / settings.ASCENT_FINE_STEP)) + 1)
        else:
            grid = np.linspace(0.0, 1.0, int(round(1.0 / settings.ASCENT_COARSE_STEP)) + 1)

        score = self.score(theta, pidx)
        for sweep in range(settings.ASCENT_MAX_SWEEPS):
            before = score.copy()
            for d in range(self.dim):
                current = theta[:, d:d + 1]
                if fine:
                    values = np.clip(current + offsets[None, :], 0.0, 1.0)
                else:
                    values = np.broadcast_to(grid, (n, grid.size))
                boundary = self._boundary(theta, pidx, d)[:, None]
                cands = np.hstack([current, values, boundary])
                g = cands.shape[1]
                trial = np.repeat(theta[:, None, :], g, axis=1)
                trial[:, :, d] = cands
                s = self.score(trial.reshape(n * g, self.dim), np.repeat(pidx, g)).reshape(n, g)
                best = np.argmax(s, axis=1)  # 동률이면 현재 값 유지
                theta[:, d] = cands[rows, best]
                score = s[rows, best]
            if np.max(score - before) <= 1e-12:
                logger.debug(f"좌표 상승 수렴: {sweep + 1}회 스윕 ({'세밀' if fine else '거친'} 격자)")
                break
        else:
            logger.warning(f"⚠️ 좌표 상승 스윕 한도 {settings.ASCENT_MAX_SWEEPS}회 도달, 최선값 사용")
        return theta, score

    # ============================================
    # SLSQP 다듬기
    # ============================================

    def _strictly_feasible(self, theta: np.ndarray, pidx: np.ndarray) -> bool:
        cost1, cost2 = self.costs(np.clip(theta, 0.0, 1.0)[None, :], pidx)
        return bool(cost1[0] <= self.tau + 1e-15 and cost2[0] <= self.tau + 1e-15)

    def _pull_back(self, start: np.ndarray, cand: np.ndarray, pidx: np.ndarray) -> np.ndarray:
        """cand 가 비용을 넘으면 start 쪽으로 이분 탐색해 되돌림"""
        if self._strictly_feasible(cand, pidx):
            return cand
        if not self._strictly_feasible(start, pidx):
            return start
        lo, hi = 0.0, 1.0
        for _ in range(50):
            mid = (lo + hi) / 2
            if self._strictly_feasible(start + mid * (cand - start), pidx):
                lo = mid
            else:
                hi = mid
        return start + lo * (cand - start)

    def polish(self, theta0: np.ndarray, pair: int) -> np.ndarray:
        pidx = np.array([pair])
        dim = self.dim
        cache: Dict[bytes, Dict[str, np.ndarray]] = {}

        def parts(z: np.ndarray) -> Dict[str, np.ndarray]:
            key = z.tobytes()
            if key not in cache:
                if len(cache) > 512:
                    cache.clear()
                cache[key] = self.evaluate(z[None, :dim], pidx)
            return cache[key]

        constraints = [
            {"type": "ineq", "fun": lambda z: self.tau - parts(z)["cost1"][0]},
            {"type": "ineq", "fun": lambda z: self.tau - parts(z)["cost2"][0]},
        ]
        bounds = [(0.0, 1.0)] * dim
        if self.bound == "iid":
            x0 = theta0.copy()
            fun = lambda z: -parts(z)["objective"][0]
        else:
            start = parts(theta0)
            x0 = np.append(theta0, min(start["h1"][0], start["h2"][0]))
            fun = lambda z: -(z[dim] - parts(z)["h_sum"][0])
            constraints += [
                {"type": "ineq", "fun": lambda z: parts(z)["h1"][0] - z[dim]},
                {"type": "ineq", "fun": lambda z: parts(z)["h2"][0] - z[dim]},
            ]
            bounds.append((0.0, math.log2(self.aux)))

        res = minimize(
            fun, x0, method="SLSQP", bounds=bounds, constraints=constraints,
            options={"ftol": 1e-13, "maxiter": 200},
        )
        if not res.success:
            logger.debug(f"SLSQP: {res.message}")
        cand = np.clip(res.x[:dim], 0.0, 1.0)
        return self._pull_back(theta0, cand, pidx)

    def test_channel(self, theta: np.ndarray, pair: int) -> DstxTestChannel:
        p1, p2 = self.laws(np.clip(theta, 0.0, 1.0)[None, :])
        i1, i2 = self.pairs[pair]
        return DstxTestChannel(
            q=self.q if self.bound == "coset" else None,
            aux_sizes=(self.aux, self.aux),
            u_laws=(p1[0], p2[0]),
            x_maps=(self.maps1[i1], self.maps2[i2]),
        )


# ============================================
# 공개 API
# ============================================

def _validate(tau: float, aux: int) -> float:
    tau = check_prob(tau, "tau")
    if tau > 0.5:
        raise DomainError("tau", tau, "[0, 0.5]")
    if not 2 <= aux <= MAX_AUX:
        raise DomainError("aux_size", aux, f"[2, {MAX_AUX}]")
    return tau


def optimize_bound(
    ch: ChannelModel,
    tau: float,
    bound: str,
    aux_size: int = 2,
    q: Optional[int] = None,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
) -> BoundResult:
    """
    경계 최적화 (달성 테스트 채널 포함)

    Args:
        ch: 두 인코더, 두 상태 성분 채널
        tau: 인코더별 비용 예산
        bound: "iid" 또는 "coset"
        aux_size: |U_j| (코셋 경계는 q 로 고정)
        q: 코셋 경계의 체 크기 (2 또는 3)
        restarts: 좌표 상승 재시작 수 (기본 settings.ASCENT_RESTARTS)
        seed: 재시작 난수 시드 (기본 settings.DEFAULT_SEED)
    """
    if bound not in BOUNDS:
        raise DomainError("bound", bound, str(BOUNDS))
    if bound == "coset":
        if q not in COSET_FIELDS or q not in SUPPORTED_FIELDS:
            raise DomainError("q", q, str(COSET_FIELDS))
        aux_size = q
    tau = _validate(tau, aux_size)
    restarts = restarts or settings.ASCENT_RESTARTS
    seed = settings.DEFAULT_SEED if seed is None else seed

    problem = _BoundProblem(ch, tau, bound, aux_size, q)
    inits = problem.initial_thetas(restarts, seed)
    n_pairs = problem.n_pairs

    # 1. 선별: 모든 사상 쌍 × (비용 경계 시작점 + 소수 재시작)
    screen = inits[:min(SCREEN_RESTARTS, restarts)]
    all_pairs = np.arange(n_pairs)
    theta = np.vstack([problem.shaped_thetas(all_pairs), np.tile(screen, (n_pairs, 1))])
    pidx = np.concatenate([all_pairs, np.repeat(all_pairs, screen.shape[0])])
    theta, score = problem.ascend(theta, pidx, fine=False)
    per_pair = np.full(n_pairs, -np.inf)
    np.maximum.at(per_pair, pidx, score)
    top = np.argsort(-per_pair, kind="stable")[:TOP_PAIRS]
    # 쌍별 선별 최선점
    leaders = np.array([
        int(np.flatnonzero(pidx == p)[np.argmax(score[pidx == p])]) for p in top
    ], dtype=np.int64)

    # 2. 상위 쌍: 선별 최선점 + 비용 경계 시작점 + 전체 재시작, 거친 격자 → 세밀 격자
    theta = np.vstack([theta[leaders], problem.shaped_thetas(top), np.tile(inits, (top.size, 1))])
    pidx = np.concatenate([top, top, np.repeat(top, restarts)])
    theta, score = problem.ascend(theta, pidx, fine=False)
    theta, score = problem.ascend(theta, pidx, fine=True)

    # 3. SLSQP 다듬기
    order = np.argsort(-score, kind="stable")
    for i in order[:settings.ASCENT_POLISH_TOP]:
        if score[i] <= _INFEASIBLE:
            continue
        polished = problem.polish(theta[i], int(pidx[i]))
        polished_score = problem.score(polished[None, :], pidx[i:i + 1])[0]
        if polished_score > score[i]:
            theta[i], score[i] = polished, polished_score

    best = int(np.argmax(score))
    value = float(score[best])
    value = 0.0 if value < _ZERO else min(value, problem.log_y)
    test_channel = problem.test_channel(theta[best], int(pidx[best]))
    logger.debug(
        f"{bound} 경계 τ={tau:.4f}: {value:.9f} "
        f"(사상 쌍 {n_pairs}, 평가 {problem.evaluations}회)"
    )
    return BoundResult(
        bound=bound,
        tau=tau,
        value=value,
        test_channel=test_channel.to_model(),
        map_pairs=n_pairs,
        evaluations=problem.evaluations,
    )


def iid_sum_rate_ub(
    ch: ChannelModel,
    tau: float,
    aux_size: int = 2,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
) -> float:
    """max [I(U₁,U₂;Y) − I(U₁;S₁) − I(U₂;S₂)]⁺ (독립 iid 비닝)"""
    return optimize_bound(ch, tau, "iid", aux_size=aux_size, restarts=restarts, seed=seed).value


def coset_sum_rate_lb(
    ch: ChannelModel,
    tau: float,
    q: int = 2,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
) -> float:
    """max [min{H(U₁|S₁), H(U₂|S₂)} − H(U₁⊕_q U₂|Y)]⁺ (공통 코셋 코드 분할)"""
    return optimize_bound(ch, tau, "coset", q=q, restarts=restarts, seed=seed).value


def _carry_forward(results: List[BoundResult]) -> List[BoundResult]:
    """τ 오름차순으로 이전 점의 더 나은 테스트 채널을 이어받음 (가능 집합이 포함 관계)"""
    out: List[BoundResult] = []
    for res in results:
        if out and out[-1].value > res.value:
            logger.debug(f"τ={res.tau:.4f}: {res.bound} 경계 {res.value:.9f} → {out[-1].value:.9f} (이월)")
            res = out[-1].model_copy(update={"tau": res.tau})
        out.append(res)
    return out


def sweep_tau_detailed(
    ch: ChannelModel,
    grid_size: int,
    aux_size: int = 2,
    q: int = 2,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
) -> Tuple[List[BoundResult], List[BoundResult]]:
    """[0, 0.5] 균등 격자 위 두 경계 (테스트 채널 포함)"""
    if grid_size < 2:
        raise DomainError("grid_size", grid_size, "[2, ∞)")
    taus = np.linspace(0.0, 0.5, grid_size)
    threads = threads or settings.THREADS
    logger.info(f"🚀 τ 스윕 시작: {grid_size}점, aux={aux_size}, q={q}, 워커 {threads}")

    def point(tau: float) -> Tuple[BoundResult, BoundResult]:
        iid = optimize_bound(ch, tau, "iid", aux_size=aux_size, restarts=restarts, seed=seed)
        coset = optimize_bound(ch, tau, "coset", q=q, restarts=restarts, seed=seed)
        return iid, coset

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(point, [float(t) for t in taus]))

    iid = _carry_forward([r[0] for r in results])
    coset = _carry_forward([r[1] for r in results])
    logger.info("✅ τ 스윕 완료")
    return iid, coset


def sweep_tau(
    ch: ChannelModel,
    grid_size: int,
    aux_size: int = 2,
    q: int = 2,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
) -> List[SweepRow]:
    """τ 오름차순 SweepRow 목록"""
    iid, coset = sweep_tau_detailed(ch, grid_size, aux_size, q, restarts, seed, threads)
    return [
        SweepRow(tau=a.tau, iid_upper=a.value, coset_lower=b.value)
        for a, b in zip(iid, coset)
    ]


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    """헤더 tau,iid_upper,coset_lower, 유효숫자 9자리"""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tau", "iid_upper", "coset_lower"])
    for row in rows:
        writer.writerow([f"{row.tau:.9g}", f"{row.iid_upper:.9g}", f"{row.coset_lower:.9g}"])
    return buf.getvalue()


# ============================================
# 점검용 채널
# ============================================

def _sanity_channel(name: str, output_bit, tau: float) -> ChannelModel:
    W = np.zeros((16, 2))
    for row, (x1, x2, s1, s2) in enumerate(np.ndindex(2, 2, 2, 2)):
        W[row, output_bit(x1, x2, s1, s2)] = 1.0
    return ChannelModel(
        name=name,
        input_dims=(2, 2),
        state_dims=(2, 2),
        output_dims=(2,),
        W=W,
        cost_fns=(CostFn(0, (0.0, 1.0)), CostFn(1, (0.0, 1.0))),
        cost_budgets=(tau, tau),
        state_law=np.full(4, 0.25),
    )


def make_doubly_dirty(tau: float = 0.5) -> ChannelModel:
    """Y = X₁ ⊕ X₂ ⊕ S₁ ⊕ S₂ (잡음 없음)"""
    return _sanity_channel("doubly_dirty", lambda x1, x2, s1, s2: x1 ^ x2 ^ s1 ^ s2, tau)


def make_noiseless_adder(tau: float = 0.5) -> ChannelModel:
    """Y = X₁ ⊕ X₂ (상태 무관)"""
    return _sanity_channel("noiseless_adder", lambda x1, x2, s1, s2: x1 ^ x2, tau)
