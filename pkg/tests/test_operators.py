import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from interpkit.measure_core import (
    INF, DomainError, SampledFunction, StructuralError, grid_edges, integrate, lebesgue_norm,
    random_simple_function, sample,
)
from interpkit.operators import (
    DiscreteConvolution, HardyOperator, IdentityOperator, convolve, estimate_operator_norm,
    hardy_apply, hardy_ratio_sweep, norm_ratio,
)


def on_edges(values, edges):
    edges = np.asarray(edges, float)
    return SampledFunction(values, np.diff(edges), edges=edges)


def uniform(n, L=1.0):
    e = grid_edges(-L, L, n)
    return e, np.diff(e)


def test_hardy_constant():
    e = grid_edges(0, 3, 30)
    hf = hardy_apply(on_edges(np.full(30, 2.5), e))
    assert np.allclose(hf.values, 2.5, rtol=1e-14)


def test_hardy_half_indicator():
    e = grid_edges(0, 2, 8)
    hf = hardy_apply(on_edges([1, 1, 1, 1, 0, 0, 0, 0], e))
    x = e[1:]
    assert np.allclose(hf.values, np.where(x <= 1, 1.0, 1.0 / x), rtol=1e-14)


@pytest.mark.parametrize("a", [-0.5, 0.0, 1.0, 2.5])
def test_hardy_power_refinement(a):
    # exact cell averages of x^a; the prefix sums then hit x^a/(a+1) exactly at right endpoints
    errs = []
    for n in (50, 100, 200):
        e = grid_edges(0, 1, n)
        avg = (e[1:] ** (a + 1) - e[:-1] ** (a + 1)) / ((a + 1) * np.diff(e))
        hf = hardy_apply(on_edges(avg, e))
        errs.append(np.max(np.abs(hf.values - e[1:] ** a / (a + 1))))
    assert max(errs) < 1e-12
    # midpoint sampling converges with a definite direction
    mid = []
    for n in (50, 100, 200):
        e = grid_edges(0, 1, n)
        f = sample(lambda x: x ** a, e)
        hf = hardy_apply(f)
        mid.append(abs(hf.values[-1] - 1 / (a + 1)))
    assert mid[0] + 1e-15 >= mid[1] and mid[1] + 1e-15 >= mid[2]


def test_hardy_errors():
    with pytest.raises(StructuralError):
        hardy_apply(SampledFunction([1.0], [1.0]))
    with pytest.raises(DomainError):
        hardy_apply(on_edges([1.0, 1.0], [-1, 0, 1]))
    with pytest.raises(DomainError):
        HardyOperator([-1.0, 0.5, 1.0])


@settings(max_examples=100)
@given(st.lists(st.floats(0, 10), min_size=20, max_size=20), st.lists(st.floats(0, 10), min_size=20, max_size=20))
def test_hardy_positive_and_monotone(u, v):
    e = np.geomspace(1e-3, 1, 21)
    f = on_edges(np.minimum(u, v), e)
    g = on_edges(np.maximum(u, v), e)
    hf, hg = hardy_apply(f), hardy_apply(g)
    assert np.all(hf.values >= 0) and np.all(hf.values <= hg.values)


@pytest.mark.parametrize("p", [1.25, 1.5, 2, 4])
def test_hardy_sharp_bound_on_random_inputs(p, rng):
    op = HardyOperator.geometric(1e-4, 1.0, 20)
    for i in range(200):
        f = op.random_input(np.random.default_rng([7, i]))
        assert norm_ratio(op, f, p, p) <= p / (p - 1) * (1 + 1e-6)


def test_hardy_sweep_examples():
    rows = hardy_ratio_sweep(2, [0.25, 0.01])
    assert rows[0].ratio == pytest.approx(4 / 3, rel=5e-3) and rows[0].bound == 2.0
    assert 1.9 < rows[1].ratio < 2.0
    assert rows[1].ratio == pytest.approx(1 / 0.51, rel=1e-2)


def test_hardy_sweep_refinement_is_monotone():
    seq = [hardy_ratio_sweep(2, [0.1], cells_per_decade=c)[0].ratio for c in (25, 50, 100)]
    assert seq[0] < seq[1] < seq[2] < 2.0
    assert seq[-1] == pytest.approx(1 / 0.6, rel=5e-3)


def test_hardy_sweep_constant_input_ratio_one():
    e = np.concatenate([[0.0], np.geomspace(1e-3, 1.0, 300)])
    assert norm_ratio(HardyOperator(e), on_edges(np.ones(300), e), 3, 3) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("p", [1, 0.5])
def test_hardy_unbounded_endpoint(p):
    with pytest.raises(DomainError, match="unbounded endpoint"):
        hardy_ratio_sweep(p, [0.1])


def point_mass_kernel(n=32):
    e, m = uniform(n)
    v = np.zeros(n)
    v[0] = 1.0 / m[0]
    return SampledFunction(v, m, edges=e)


def test_convolution_identity_kernel(rng):
    k = point_mass_kernel()
    f = random_simple_function(rng, k.measures, signed=True, edges=k.edges)
    assert np.allclose(convolve(DiscreteConvolution(k), f).values, f.values, rtol=1e-14, atol=1e-14)


def test_box_convolved_with_box_is_hat():
    errs = []
    for n in (256, 512, 1024):
        e, m = uniform(n, 4.0)
        x = 0.5 * (e[1:] + e[:-1])
        # box of width 1 starting at index 0 of the periodic grid
        box = SampledFunction(np.where((x >= -4) & (x < -3), 1.0, 0.0), m, edges=e)
        out = convolve(DiscreteConvolution(box), box).values
        shift = (x + 4) % 8.0
        hat = np.clip(1 - np.abs(shift - 1.0), 0, None)
        errs.append(np.max(np.abs(out - hat)))
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-2


def test_young_with_unit_exponent(rng):
    e, m = uniform(64)
    for i in range(500):
        r = np.random.default_rng([11, i])
        k = random_simple_function(r, m, signed=True, edges=e)
        f = random_simple_function(r, m, signed=True, edges=e)
        p = [1, 1.5, 2, 3, INF][i % 5]
        assert lebesgue_norm(convolve(DiscreteConvolution(k), f), p) <= \
            lebesgue_norm(k, 1) * lebesgue_norm(f, p) * (1 + 1e-12) + 1e-300


def test_convolution_commutes_with_translation_exactly(rng):
    e, m = uniform(48)
    k = random_simple_function(rng, m, signed=True, edges=e)
    f = random_simple_function(rng, m, signed=True, edges=e)
    op = DiscreteConvolution(k)
    for s in (1, 5, 17, 47):
        shifted = SampledFunction(np.roll(f.values, s), m, signed=True, edges=e)
        assert np.array_equal(convolve(op, shifted).values, np.roll(convolve(op, f).values, s))


def test_convolution_grid_errors():
    k = point_mass_kernel(16)
    with pytest.raises(StructuralError):
        convolve(DiscreteConvolution(k), SampledFunction(np.ones(8), np.full(8, 0.25)))
    with pytest.raises(StructuralError):
        DiscreteConvolution(SampledFunction([1, 1], [1, 2]))


def test_convolution_is_linear(rng):
    e, m = uniform(32)
    op = DiscreteConvolution(random_simple_function(rng, m, edges=e))
    f, g = (random_simple_function(rng, m, signed=True, edges=e) for _ in range(2))
    lhs = convolve(op, 2 * f + 3 * g).values
    rhs = 2 * convolve(op, f).values + 3 * convolve(op, g).values
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


def test_identity_norm_estimate_is_one():
    e, m = uniform(20)
    est = estimate_operator_norm(IdentityOperator(m, e), 3, 3, 50, seed=4)
    assert est.lower_bound == pytest.approx(1.0, rel=1e-14)


def test_positive_convolution_l1_norm_estimate():
    e, m = uniform(64)
    x = 0.5 * (e[1:] + e[:-1])
    k = SampledFunction(np.exp(-x ** 2 / 0.1), m, edges=e)
    op = DiscreteConvolution(k)
    est = estimate_operator_norm(op, 1, 1, 100, seed=0)
    assert est.lower_bound == pytest.approx(op.mass, rel=1e-12)
    assert est.lower_bound <= integrate(k) * (1 + 1e-12)


def test_hardy_norm_estimate_near_sharp():
    op = HardyOperator.geometric(1e-150, 1.0, 20)
    est = estimate_operator_norm(op, 2, 2, 20, seed=0)
    assert 1.9 <= est.lower_bound <= 2.0 * (1 + 1e-6)


def test_hardy_estimates_increase_as_p_decreases():
    op = HardyOperator.geometric(1e-200, 1.0, 10)
    seq = [estimate_operator_norm(op, p, p, 10, seed=0).lower_bound for p in (2, 1.5, 1.25, 1.1)]
    assert all(a < b for a, b in zip(seq, seq[1:]))


def test_estimate_is_deterministic_and_witness_reproduces():
    e, m = uniform(32)
    op = DiscreteConvolution(SampledFunction(np.abs(np.sin(np.arange(32.0))), m, edges=e))
    a = estimate_operator_norm(op, 2, 4, 200, seed=9)
    b = estimate_operator_norm(op, 2, 4, 200, seed=9)
    assert a.lower_bound == b.lower_bound and a.samples_used == b.samples_used
    assert np.array_equal(a.witness.values, b.witness.values)
    assert norm_ratio(op, a.witness, 2, 4) == pytest.approx(a.lower_bound, rel=1e-9)
    assert a.library_version == "1"


def test_estimate_rejects_zero_samples():
    with pytest.raises(DomainError):
        estimate_operator_norm(IdentityOperator([1.0]), 2, 2, 0)
