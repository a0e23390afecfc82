"""
finite_math 테스트

엔트로피 / 상호정보량은 정의식 그대로의 합산과 비교
"""
import itertools
import math

import numpy as np
import pytest

from COSETLAB.core.exceptions import (
    AxisError,
    DomainError,
    InvalidDistributionError,
    ModulusMismatchError,
)
from COSETLAB.services.finite_math import (
    SUPPORTED_FIELDS,
    FieldElem,
    JointPmf,
    Pmf,
    bconv,
    binary_entropy,
    bsc_capacity_cost,
    cond_entropy,
    cond_mutual_info,
    embed_axes,
    entropy,
    fq_add,
    fq_inv,
    fq_mul,
    fq_neg,
    fq_rank,
    fq_sub,
    joint_entropy,
    marginal,
    mutual_info,
    normalize,
    with_sum_axis,
)


def _hb(x: float) -> float:
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def _brute_marginal(arr: np.ndarray, axes):
    """{(axis 값들): 확률} 사전"""
    out = {}
    for idx in itertools.product(*(range(d) for d in arr.shape)):
        key = tuple(idx[a] for a in axes)
        out[key] = out.get(key, 0.0) + arr[idx]
    return out


def _brute_entropy(arr: np.ndarray, axes) -> float:
    return -sum(p * math.log2(p) for p in _brute_marginal(arr, axes).values() if p > 0)


def _random_joint(rng: np.random.Generator) -> JointPmf:
    ndim = int(rng.integers(2, 5))
    dims = tuple(int(d) for d in rng.integers(1, 5, size=ndim))
    table = rng.dirichlet(np.full(math.prod(dims), 0.5))
    # 일부 칸을 정확히 0 으로
    table[rng.random(table.size) < 0.2] = 0.0
    if table.sum() == 0:
        table[0] = 1.0
    return JointPmf(dims, table / table.sum())


# ============================================
# 스칼라 함수
# ============================================

def test_binary_entropy_endpoints_and_peak():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)
    assert binary_entropy(0.067) == pytest.approx(_hb(0.067), abs=1e-12)


def test_binary_entropy_rejects_out_of_range():
    with pytest.raises(DomainError):
        binary_entropy(1.2)
    with pytest.raises(DomainError):
        binary_entropy(-0.1)


def test_binary_entropy_symmetric_on_grid():
    grid = np.linspace(0.0, 1.0, 1001)
    values = np.array([binary_entropy(float(x)) for x in grid])
    np.testing.assert_allclose(values, values[::-1], atol=1e-12)
    assert values.max() == pytest.approx(1.0, abs=1e-15)
    assert int(np.argmax(values)) == 500


def test_bconv_formula_and_symmetry():
    assert bconv(0.15, 0.067) == pytest.approx(0.15 * 0.933 + 0.85 * 0.067, abs=1e-15)
    assert bconv(0.2, 0.3) == pytest.approx(bconv(0.3, 0.2), abs=1e-15)
    assert bconv(0.0, 0.3) == pytest.approx(0.3, abs=1e-15)
    assert bconv(0.5, 0.3) == pytest.approx(0.5, abs=1e-15)


def test_bconv_associative_and_bounded():
    rng = np.random.default_rng(5)
    for a, b, c in rng.random((500, 3)):
        assert bconv(bconv(a, b), c) == pytest.approx(bconv(a, bconv(b, c)), abs=1e-12)
    for a, b in 0.5 * rng.random((500, 2)):
        ab = bconv(a, b)
        assert max(a, b) - 1e-15 <= ab <= 0.5 + 1e-15
    assert bconv(0.01, 0.2775) == pytest.approx(0.28195, abs=1e-12)


def test_bsc_capacity_cost_nonnegative_and_zero_only_at_edges():
    grid = np.linspace(0.0, 0.5, 11)
    for tau, delta in itertools.product(grid, grid):
        value = bsc_capacity_cost(float(tau), float(delta))
        if tau == 0.0 or delta == 0.5:
            assert value == pytest.approx(0.0, abs=1e-15)
        else:
            assert value > 0.0
    assert bsc_capacity_cost(0.2, 0.0) == pytest.approx(_hb(0.2), abs=1e-12)


def test_bsc_capacity_cost_anchor():
    """δh(0.15, 0.067) ≈ 0.3611"""
    expected = _hb(0.15 * 0.933 + 0.85 * 0.067) - _hb(0.067)
    assert bsc_capacity_cost(0.15, 0.067) == pytest.approx(expected, abs=1e-12)
    assert bsc_capacity_cost(0.15, 0.067) == pytest.approx(0.3611, abs=1e-4)
    assert bsc_capacity_cost(0.0, 0.067) == pytest.approx(0.0, abs=1e-15)
    assert bsc_capacity_cost(0.5, 0.0) == pytest.approx(1.0, abs=1e-15)


# ============================================
# 분포 값 객체
# ============================================

def test_pmf_validation():
    with pytest.raises(InvalidDistributionError):
        Pmf([0.5, 0.6])
    with pytest.raises(InvalidDistributionError):
        Pmf([1.5, -0.5])
    with pytest.raises(InvalidDistributionError):
        Pmf([])
    p = Pmf.bernoulli(0.25)
    assert p.probs.tolist() == [0.75, 0.25]
    assert Pmf.uniform(4).size == 4
    assert Pmf.point_mass(3, 1).probs.tolist() == [0.0, 1.0, 0.0]


def test_pmf_is_read_only():
    p = Pmf([0.5, 0.5])
    with pytest.raises(ValueError):
        p.probs[0] = 1.0


def test_normalize():
    assert normalize([1, 3]).probs.tolist() == [0.25, 0.75]
    with pytest.raises(InvalidDistributionError):
        normalize([0, 0])
    with pytest.raises(InvalidDistributionError):
        normalize([1, -1])


def test_marginal_respects_requested_order():
    arr = np.arange(24, dtype=float).reshape(2, 3, 4)
    j = JointPmf.from_array(arr / arr.sum())
    m = marginal(j, (2, 0)).to_array()
    assert m.shape == (4, 2)
    np.testing.assert_allclose(m, (arr / arr.sum()).sum(axis=1).T)


def test_axis_errors():
    j = JointPmf((2, 2), [0.25] * 4)
    with pytest.raises(AxisError):
        joint_entropy(j, 2)
    with pytest.raises(AxisError):
        cond_entropy(j, 0, 0)
    with pytest.raises(AxisError):
        mutual_info(j, (0, 1), 1)


# ============================================
# 정보량 (정의식 대조)
# ============================================

def test_information_measures_match_brute_force():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        j = _random_joint(rng)
        arr = j.to_array()
        axes = list(range(j.ndim))
        rng.shuffle(axes)
        a, b, rest = axes[0], axes[1], axes[2:]

        assert entropy(j) == pytest.approx(_brute_entropy(arr, tuple(range(j.ndim))), abs=1e-12)

        h_a_given_b = _brute_entropy(arr, (a, b)) - _brute_entropy(arr, (b,))
        assert cond_entropy(j, a, b) == pytest.approx(max(h_a_given_b, 0.0), abs=1e-12)

        info = _brute_entropy(arr, (a,)) + _brute_entropy(arr, (b,)) - _brute_entropy(arr, (a, b))
        assert mutual_info(j, a, b) == pytest.approx(max(info, 0.0), abs=1e-12)

        if rest:
            c = tuple(rest)
            cmi = (
                _brute_entropy(arr, (a,) + c) + _brute_entropy(arr, (b,) + c)
                - _brute_entropy(arr, (a, b) + c) - _brute_entropy(arr, c)
            )
            assert cond_mutual_info(j, a, b, c) == pytest.approx(max(cmi, 0.0), abs=1e-12)


def test_three_point_law_entropy_grouping():
    tau = 0.15
    law = Pmf([(1 - tau) ** 2, 2 * tau * (1 - tau), tau ** 2])
    rest = 2 * tau - tau ** 2
    expected = _hb((1 - tau) ** 2) + rest * _hb(tau ** 2 / rest)
    assert entropy(law) == pytest.approx(expected, abs=1e-12)


def test_deterministic_target_has_zero_conditional_entropy():
    j = JointPmf((2, 2), [0.3, 0.0, 0.0, 0.7])
    assert cond_entropy(j, 0, 1) == 0.0
    assert mutual_info(j, 0, 1) == pytest.approx(_hb(0.3), abs=1e-12)


def test_sum_axis_and_embedding():
    j = JointPmf.from_array(np.outer([0.8, 0.2], [0.6, 0.4]))
    e = embed_axes(j, (0, 1), 3)
    assert e.dims == (3, 3)
    s = with_sum_axis(e, 0, 1, 3)
    law = marginal(s, 2).table
    np.testing.assert_allclose(law, [0.8 * 0.6, 0.8 * 0.4 + 0.2 * 0.6, 0.2 * 0.4], atol=1e-15)


# ============================================
# F_q
# ============================================

def test_field_arithmetic():
    a, b = FieldElem(5, 3), FieldElem(5, 4)
    assert fq_add(a, b).v == 2
    assert fq_mul(a, b).v == 2
    assert fq_sub(a, b).v == 4
    for q in (2, 3, 5, 7):
        for v in range(1, q):
            x = FieldElem(q, v)
            assert fq_mul(x, fq_inv(x)).v == 1


@pytest.mark.parametrize("q", SUPPORTED_FIELDS)
def test_field_axioms_full_tables(q):
    elems = [FieldElem(q, v) for v in range(q)]
    zero, one = FieldElem(q, 0), FieldElem(q, 1)
    for a in elems:
        assert fq_add(a, zero) == a
        assert fq_mul(a, one) == a
        assert fq_mul(a, zero) == zero
        assert fq_add(a, fq_neg(a)) == zero
        if a.v:
            assert fq_mul(a, fq_inv(a)) == one
        for b in elems:
            assert fq_add(a, b) == fq_add(b, a)
            assert fq_mul(a, b) == fq_mul(b, a)
            assert fq_add(fq_sub(a, b), b) == a
            for c in elems:
                assert fq_add(fq_add(a, b), c) == fq_add(a, fq_add(b, c))
                assert fq_mul(fq_mul(a, b), c) == fq_mul(a, fq_mul(b, c))
                assert fq_mul(a, fq_add(b, c)) == fq_add(fq_mul(a, b), fq_mul(a, c))


def test_field_errors():
    with pytest.raises(ModulusMismatchError):
        FieldElem(4, 1)
    with pytest.raises(ModulusMismatchError):
        fq_add(FieldElem(3, 1), FieldElem(5, 1))
    with pytest.raises(DomainError):
        fq_inv(FieldElem(7, 0))


def test_fq_rank():
    assert fq_rank(np.eye(3, dtype=int), 3) == 3
    assert fq_rank(np.array([[1, 2], [2, 1]]), 3) == 1
    assert fq_rank(np.array([[1, 2], [2, 1]]), 5) == 2
    assert fq_rank(np.zeros((2, 4), dtype=int), 2) == 0
    assert fq_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), 2) == 2
