import statistics
from collections import Counter
from fractions import Fraction as F
from math import comb, sqrt

import numpy as np
import pytest
import sympy

from hyperhomophily import (
    ClassLabel,
    HSBMParams,
    affinity_profile,
    baseline_profile,
    convergence_experiment,
    edge_type_counts,
    sample_hsbm,
    sample_hsbm_poisson,
    validate,
)
from hyperhomophily.errors import ParamOutOfRangeError
from hyperhomophily.nullmodels import (
    _unrank_combinations,
    expected_type_counts,
    max_ratio_deviation,
    reports_to_csv,
    seed_schedule,
    type_tuple_counts,
)

A, B = ClassLabel.A, ClassLabel.B
METHODS = ("enumerate", "two_stage")


@pytest.mark.parametrize("bad", [dict(p=1.5), dict(p=-0.1), dict(n_a=11), dict(p=(0.1, 0.2))])
def test_params_validation(bad):
    kw = dict(n=10, k=3, n_a=5, p=0.1)
    kw.update(bad)
    with pytest.raises(ParamOutOfRangeError):
        HSBMParams(**kw)


@pytest.mark.parametrize("method", METHODS)
def test_p_zero_is_empty(method):
    assert sample_hsbm(HSBMParams(12, 3, 5, 0.0), method).num_edges == 0
    assert sample_hsbm_poisson(HSBMParams(12, 3, 5, 0.0)).num_edges == 0


@pytest.mark.parametrize("method", METHODS)
def test_p_one_is_complete(method):
    h = sample_hsbm(HSBMParams(9, 3, 4, 1.0), method)
    assert h.num_edges == comb(9, 3)
    assert len({frozenset(e) for e in h.edges}) == comb(9, 3)
    for cls in (A, B):
        assert affinity_profile(edge_type_counts(h), cls) == baseline_profile(4, 5, 3, cls)


@pytest.mark.parametrize("method", METHODS)
def test_determinism_and_validity(method):
    p = HSBMParams(20, 3, 8, (0.1, 0.2, 0.3, 0.4), seed=42)
    h1, h2 = sample_hsbm(p, method), sample_hsbm(p, method)
    assert h1.edges == h2.edges
    validate(h1)
    assert all(len(set(e)) == 3 for e in h1.edges)
    assert len({frozenset(e) for e in h1.edges}) == h1.num_edges  # Bernoulli: no repeats


@pytest.mark.parametrize("method", METHODS)
def test_per_type_counts_near_binomial_mean(method):
    n_t = type_tuple_counts(15, 15, 3)
    for seed in range(5):
        m = edge_type_counts(sample_hsbm(HSBMParams(30, 3, 15, 0.5, seed), method)).m
        for t in range(4):
            assert abs(m[t] - 0.5 * n_t[t]) <= 4 * sqrt(n_t[t] * 0.25)


def test_per_type_probabilities_respected():
    # only type-1 tuples allowed
    h = sample_hsbm(HSBMParams(40, 3, 20, (0, 0.05, 0, 0), seed=3), "two_stage")
    m = edge_type_counts(h).m
    assert m[0] == m[2] == m[3] == 0 and m[1] > 0


def test_unrank_is_bijection():
    for pool, size in [(7, 3), (6, 1), (5, 5), (9, 4)]:
        rows = _unrank_combinations(np.arange(comb(pool, size)), pool, size)
        as_sets = {tuple(r) for r in rows.tolist()}
        assert len(as_sets) == comb(pool, size)
        assert all(list(r) == sorted(set(r)) and 0 <= min(r) and max(r) < pool for r in as_sets)


def test_two_stage_matches_enumeration_in_distribution():
    """Total-variation distance of per-type count marginals over 10^4 draws."""
    draws = 10_000
    params = [HSBMParams(4, 2, 2, 0.5, seed=s) for s in range(draws)]
    tallies = {}
    for method in METHODS:
        rows = [edge_type_counts(sample_hsbm(p, method)).m for p in params]
        tallies[method] = [Counter(r[t] for r in rows) for t in range(3)]
    for t in range(3):
        e, s = tallies["enumerate"][t], tallies["two_stage"][t]
        tv = sum(abs(e[v] - s[v]) for v in set(e) | set(s)) / (2 * draws)
        assert tv < 0.02, (t, tv)


def test_large_population_uses_rejection_path():
    # C(300, 10) exceeds int64 ranks; the sampler must still produce valid edges
    h = sample_hsbm(HSBMParams(300, 10, 150, 1e-15, seed=1), "two_stage")
    validate(h)
    assert h.k == 10


def test_poisson_means():
    p = HSBMParams(12, 3, 6, 0.3)
    n_t = type_tuple_counts(6, 6, 3)
    seeds = 200
    totals = np.array(
        [edge_type_counts(sample_hsbm_poisson(HSBMParams(12, 3, 6, 0.3, seed=s))).m for s in range(seeds)]
    )
    for t in range(4):
        mean = 0.3 * n_t[t]
        se = sqrt(mean / seeds)
        assert abs(totals[:, t].mean() - mean) <= 3 * se
    total = totals.sum(axis=1)
    assert abs(total.var(ddof=1) / total.mean() - 1) < 0.3
    assert p.n_b == 6


def test_poisson_allows_repeats():
    h = sample_hsbm_poisson(HSBMParams(5, 2, 2, 3.0 / 3.0, seed=0))
    assert h.num_edges > len({frozenset(e) for e in h.edges})


def test_expected_counts_identity_numeric():
    for n_a, n_b, k in [(3, 4, 3), (5, 2, 4), (6, 6, 5)]:
        e = expected_type_counts(n_a, n_b, k, F(1, 7))
        for cls in (A, B):
            assert affinity_profile(e, cls) == baseline_profile(n_a, n_b, k, cls)


@pytest.mark.parametrize("k", range(1, 7))
def test_expected_counts_identity_symbolic(k):
    """t E[M_t] / sum_i i E[M_i] == b_t(A) for symbolic class sizes and p."""
    a, b, p = sympy.symbols("a b p", positive=True)
    binom = lambda n, r: sympy.expand_func(sympy.binomial(n, r))
    em = [p * binom(a, t) * binom(b, k - t) for t in range(k + 1)]
    denom = sum(i * em[i] for i in range(1, k + 1))
    for t in range(1, k + 1):
        base = binom(a - 1, t - 1) * binom(b, k - t) / binom(a + b - 1, k - 1)
        assert sympy.simplify(sympy.cancel(t * em[t] / denom - base)) == 0


def test_convergence_p_one_is_exact():
    reps = convergence_experiment([8, 10], 3, F(1, 2), 1.0, [0, 1])
    assert all(r.max_abs_ratio_deviation == 0 for r in reps)


def test_convergence_trend():
    seeds = seed_schedule(0, 10)
    reps = convergence_experiment([50, 200], 3, F(1, 2), 0.01, seeds)
    med = {n: statistics.median(r.max_abs_ratio_deviation for r in reps if r.n == n) for n in (50, 200)}
    assert med[200] < med[50]


def test_convergence_rejects_bad_p():
    with pytest.raises(ParamOutOfRangeError):
        convergence_experiment([10], 3, F(1, 2), 0.0, [0])


def test_max_ratio_deviation_empty_class():
    h = sample_hsbm(HSBMParams(10, 2, 5, 0.0))
    assert max_ratio_deviation(h) == float("inf")


def test_seed_schedule_and_csv():
    assert seed_schedule(5, 3) == [5, 6, 7]
    reps = convergence_experiment([10], 2, F(1, 2), 1.0, [0])
    text = reports_to_csv(reps)
    assert text.splitlines()[0] == "n,seed,edges,max_deviation"
    assert text.splitlines()[1].startswith("10,0,45,")
