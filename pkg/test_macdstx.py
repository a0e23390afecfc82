"""
macdstx 테스트

점검용 채널:
- 잡음 없는 가산기 Y = X₁⊕X₂: τ = 0.5 에서 두 경계 모두 1
- 이중 더러운 채널 Y = X₁⊕X₂⊕S₁⊕S₂: 코셋 경계 = h_b(τ)
"""
import math
import time

import numpy as np
import pytest

from COSETLAB.core.exceptions import DimensionMismatchError, DomainError
from COSETLAB.schemas.report import BoundResult, DstxTestChannelModel, SweepRow
from COSETLAB.services.channel_models import make_ex1, make_ex5
from COSETLAB.services.macdstx import (
    _carry_forward,
    coset_sum_rate_lb,
    _BoundProblem,
    enumerate_maps,
    iid_sum_rate_ub,
    make_doubly_dirty,
    make_noiseless_adder,
    optimize_bound,
    rows_to_csv,
    sweep_tau,
)


def _hb(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


# ============================================
# 사상 열거
# ============================================

def test_enumerate_maps_counts():
    # 이진 X, 이진 S: 열 4개
    assert enumerate_maps(2, 2, 2, "permutation").shape == (10, 2, 2)
    assert enumerate_maps(2, 2, 2, "translation").shape == (10, 2, 2)
    # 길이 3 순환 이동 궤도 수 (4³ + 2·4) / 3
    assert enumerate_maps(2, 2, 3, "translation").shape == (24, 3, 2)
    assert enumerate_maps(2, 2, 3, "permutation").shape == (20, 3, 2)


def test_enumerate_maps_rejects_unknown_symmetry():
    with pytest.raises(DomainError):
        enumerate_maps(2, 2, 2, "reflection")


# ============================================
# 점검용 채널
# ============================================

def test_noiseless_adder_at_full_budget():
    ch = make_noiseless_adder()
    assert iid_sum_rate_ub(ch, 0.5) == pytest.approx(1.0, abs=1e-9)
    assert coset_sum_rate_lb(ch, 0.5) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("tau", [0.05, 0.1, 0.2, 0.3, 0.4, 0.5])
def test_doubly_dirty_coset_bound_is_binary_entropy(tau):
    assert coset_sum_rate_lb(make_doubly_dirty(), tau) == pytest.approx(_hb(tau), abs=1e-6)


@pytest.mark.parametrize("tau", [0.1, 0.25, 0.4])
def test_doubly_dirty_coset_dominates_iid(tau):
    ch = make_doubly_dirty()
    iid = iid_sum_rate_ub(ch, tau)
    coset = coset_sum_rate_lb(ch, tau)
    assert coset >= iid - 1e-6
    assert iid <= _hb(tau) + 1e-6


def test_shaped_starts_reach_xor_map_optimum():
    tau = 0.1
    problem = _BoundProblem(make_doubly_dirty(), tau, "coset", 2, 2)
    pairs = np.arange(problem.n_pairs)
    theta = problem.shaped_thetas(pairs)
    assert theta.shape == (problem.n_pairs, problem.dim)
    out = problem.evaluate(theta, pairs)
    assert out["score"].max() == pytest.approx(_hb(tau), abs=1e-9)
    best = int(np.argmax(out["score"]))
    assert out["cost1"][best] == pytest.approx(tau, abs=1e-12)
    assert out["cost2"][best] == pytest.approx(tau, abs=1e-12)


def test_raw_coset_bound_increases_on_doubly_dirty():
    ch = make_doubly_dirty()
    values = [optimize_bound(ch, tau, "coset", q=2).value for tau in (0.05, 0.1, 0.15, 0.2)]
    for prev, cur in zip(values, values[1:]):
        assert cur > prev


def _ex5_xor_coset_value(tau: float) -> float:
    """x_j = u_j ⊕ s_j, X_j ~ Bern(τ) 일 때 h_b(τ) − H(U₁⊕U₂|Y)"""
    W = make_ex5().W.reshape(2, 2, 2, 2, 2)
    px = np.array([1 - tau, tau])
    pzy = np.zeros((2, 2))
    for x1, x2, s1, s2 in np.ndindex(2, 2, 2, 2):
        pzy[x1 ^ x2 ^ s1 ^ s2] += px[x1] * px[x2] * 0.25 * W[x1, x2, s1, s2]
    py = pzy.sum(axis=0)
    h_z_given_y = -(pzy * np.log2(pzy / py)).sum()
    return _hb(tau) - h_z_given_y


@pytest.mark.parametrize("tau", [0.1, 0.15])
def test_ex5_low_budget_coset_reaches_xor_test_channel(tau):
    reference = _ex5_xor_coset_value(tau)
    assert reference > 0.0
    assert optimize_bound(make_ex5(), tau, "coset", q=2).value >= reference - 1e-9


def test_zero_budget_gives_zero():
    ch = make_ex5()
    assert iid_sum_rate_ub(ch, 0.0) == 0.0
    assert coset_sum_rate_lb(ch, 0.0) == 0.0


# ============================================
# 결과 / 결정성
# ============================================

def test_bound_result_carries_test_channel():
    result = optimize_bound(make_ex5(), 0.25, "coset", q=2, restarts=4)
    assert isinstance(result, BoundResult)
    assert isinstance(result.test_channel, DstxTestChannelModel)
    assert result.test_channel.q == 2
    for law in result.test_channel.u_laws:
        np.testing.assert_allclose(np.sum(law, axis=1), 1.0, atol=1e-12)
    assert 0.0 <= result.value <= 1.0
    assert result.map_pairs == 100


def test_same_seed_same_result():
    a = optimize_bound(make_ex5(), 0.2, "iid", restarts=4, seed=3)
    b = optimize_bound(make_ex5(), 0.2, "iid", restarts=4, seed=3)
    assert a == b


def test_preconditions():
    ch = make_ex5()
    with pytest.raises(DomainError):
        iid_sum_rate_ub(ch, 0.6)
    with pytest.raises(DomainError):
        iid_sum_rate_ub(ch, 0.2, aux_size=5)
    with pytest.raises(DomainError):
        coset_sum_rate_lb(ch, 0.2, q=5)
    with pytest.raises(DomainError):
        optimize_bound(ch, 0.2, "lattice")
    with pytest.raises(DimensionMismatchError):
        iid_sum_rate_ub(make_ex1(0.01, 0.067, 0.067), 0.2)


def test_carry_forward_keeps_curve_nondecreasing():
    tc = DstxTestChannelModel(q=None, aux_sizes=[2, 2], u_laws=[], x_maps=[])
    results = [
        BoundResult(bound="iid", tau=t, value=v, test_channel=tc, map_pairs=1, evaluations=1)
        for t, v in ((0.0, 0.0), (0.1, 0.3), (0.2, 0.25), (0.3, 0.4))
    ]
    out = _carry_forward(results)
    assert [r.value for r in out] == [0.0, 0.3, 0.3, 0.4]
    assert [r.tau for r in out] == [0.0, 0.1, 0.2, 0.3]


# ============================================
# 스윕
# ============================================

def test_small_sweep_and_csv():
    rows = sweep_tau(make_ex5(), 3, restarts=4)
    assert [r.tau for r in rows] == [0.0, 0.25, 0.5]
    assert rows[0].iid_upper == 0.0 and rows[0].coset_lower == 0.0
    for prev, cur in zip(rows, rows[1:]):
        assert cur.iid_upper >= prev.iid_upper - 1e-6
        assert cur.coset_lower >= prev.coset_lower - 1e-6

    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "tau,iid_upper,coset_lower"
    assert len(lines) == 4
    assert lines[2].startswith("0.25,")


def test_rows_to_csv_format():
    text = rows_to_csv([SweepRow(tau=0.5, iid_upper=1 / 3, coset_lower=0.0)])
    assert text == "tau,iid_upper,coset_lower\n0.5,0.333333333,0\n"


@pytest.mark.slow
def test_full_table_i_sweep():
    start = time.monotonic()
    rows = sweep_tau(make_ex5(), 50)
    elapsed = time.monotonic() - start
    assert len(rows) == 50
    assert elapsed < 300
    assert rows[0].iid_upper == 0.0 and rows[0].coset_lower == 0.0
    for prev, cur in zip(rows, rows[1:]):
        assert 0.0 <= cur.iid_upper <= 1.0
        assert 0.0 <= cur.coset_lower <= 1.0
        assert cur.iid_upper >= prev.iid_upper - 1e-6
        assert cur.coset_lower >= prev.coset_lower - 1e-6


@pytest.mark.slow
def test_more_restarts_do_not_change_optimum():
    ch = make_ex5()
    a = iid_sum_rate_ub(ch, 0.25, restarts=20)
    b = iid_sum_rate_ub(ch, 0.25, restarts=40)
    assert b == pytest.approx(a, abs=1e-3)

@pytest.mark.slow
def test_ex5_quarter_budget_is_restart_stable():
    ch = make_ex5()
    for bound, kwargs in (("iid", {"aux_size": 2}), ("coset", {"q": 2})):
        a = optimize_bound(ch, 0.25, bound, restarts=20, **kwargs)
        b = optimize_bound(ch, 0.25, bound, restarts=40, **kwargs)
        assert b.value == pytest.approx(a.value, abs=1e-3)
        assert 0.0 <= a.value <= 1.0
    assert optimize_bound(ch, 0.25, "coset", q=2).value >= _ex5_xor_coset_value(0.25) - 1e-9


@pytest.mark.slow
def test_coset_bound_restart_stable_on_ex5_grid():
    ch = make_ex5()
    for tau in np.linspace(0.0, 0.5, 5):
        a = coset_sum_rate_lb(ch, float(tau), restarts=20)
        b = coset_sum_rate_lb(ch, float(tau), restarts=40)
        assert b == pytest.approx(a, abs=1e-3)


@pytest.mark.slow
def test_raw_iid_bound_is_nondecreasing_on_ex5():
    ch = make_ex5()
    values = [optimize_bound(ch, tau, "iid").value for tau in (0.1, 0.2, 0.3, 0.4, 0.5)]
    for prev, cur in zip(values, values[1:]):
        assert cur >= prev - 1e-6

