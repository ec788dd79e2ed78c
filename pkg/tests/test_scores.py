import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperhomophily import (
    ClassLabel,
    EdgeTypeCounts,
    Profile,
    affinity_profile,
    alternative_affinity_profile,
    alternative_baseline_profile,
    asymptotic_baseline_profile,
    baseline_profile,
    complete_hypergraph,
    edge_type_counts,
    group_homophily_index,
    homophily_verdict,
    ratio_profile,
)
from hyperhomophily.errors import (
    AlphaOutOfRangeError,
    EmptyClassDegreeError,
    EmptyClassEdgeSetError,
    FOutOfRangeError,
    InsufficientNodesError,
    ProfileMismatchError,
    ZeroBaselineError,
)
from hyperhomophily.scores import (
    binomial_log_likelihood,
    class_proportion,
    degree_likelihood_data,
    edge_likelihood_data,
    graph_homophily_index,
    hypergraph_affinity,
    majority_types,
)
from strategies import brute_force_baseline, grid_refine_argmax, hypergraphs, random_hypergraph

A, B = ClassLabel.A, ClassLabel.B
EX = EdgeTypeCounts((0, 1, 1, 1))


def vals(p):
    return tuple(p.values)


# --- affinity ----------------------------------------------------------------------

def test_affinity_example_a():
    assert vals(affinity_profile(EX, A)) == (F(1, 6), F(1, 3), F(1, 2))


def test_affinity_example_b():
    assert vals(affinity_profile(EX, B)) == (F(1, 3), F(2, 3), F(0))


def test_affinity_matches_typed_degree_oracle(example_h):
    for cls in (A, B):
        assert hypergraph_affinity(example_h, cls) == affinity_profile(edge_type_counts(example_h), cls)


def test_complete_affinity_equals_baseline():
    assert affinity_profile(EdgeTypeCounts((0, 3, 6, 1)), A) == baseline_profile(3, 2, 3, A)


def test_affinity_empty_class():
    with pytest.raises(EmptyClassDegreeError):
        affinity_profile(EdgeTypeCounts((0, 0, 0, 5)), B)


def test_profile_is_one_based():
    p = affinity_profile(EX, A)
    assert p[1] == F(1, 6) and p[3] == F(1, 2)
    with pytest.raises(IndexError):
        p[0]


# --- baselines -----------------------------------------------------------------------

def test_baseline_examples():
    assert vals(baseline_profile(3, 2, 3, A)) == (F(1, 6), F(2, 3), F(1, 6))
    assert vals(baseline_profile(3, 2, 3, B)) == (F(1, 2), F(1, 2), F(0))


@pytest.mark.parametrize("n_a,n_b,k", [(3, 2, 3), (4, 3, 3), (2, 5, 4), (5, 5, 5), (1, 6, 2)])
def test_baseline_matches_enumeration(n_a, n_b, k):
    for cls, x in ((A, n_a), (B, n_b)):
        if x:
            assert vals(baseline_profile(n_a, n_b, k, cls)) == brute_force_baseline(n_a, n_b, k, cls.value)


def test_baseline_k2_graph_reduction():
    for n_a, n_b in [(3, 7), (10, 2), (1, 1)]:
        n = n_a + n_b
        assert baseline_profile(n_a, n_b, 2, A)[2] == F(n_a - 1, n - 1)
        assert baseline_profile(n_a, n_b, 2, B)[2] == F(n_b - 1, n - 1)


def test_baseline_errors():
    with pytest.raises(InsufficientNodesError):
        baseline_profile(0, 5, 3, A)
    with pytest.raises(InsufficientNodesError):
        baseline_profile(1, 1, 3, A)


def test_asymptotic_examples():
    assert vals(asymptotic_baseline_profile(F(1, 2), 3, A)) == (F(1, 4), F(1, 2), F(1, 4))
    for k in range(1, 9):
        v = vals(asymptotic_baseline_profile(F(1, 2), k, B))
        assert v == v[::-1]


@pytest.mark.parametrize("alpha", [0, 1, F(3, 2), -1])
def test_asymptotic_alpha_range(alpha):
    with pytest.raises(AlphaOutOfRangeError):
        asymptotic_baseline_profile(alpha, 3, A)


def test_exact_converges_to_asymptotic():
    n = 10**5
    for alpha in (F(1, 2), F(1, 5)):
        n_a = int(alpha * n)
        for cls in (A, B):
            exact = baseline_profile(n_a, n - n_a, 4, cls)
            asym = asymptotic_baseline_profile(alpha, 4, cls)
            assert max(abs(x - y) for x, y in zip(exact, asym)) < F(1, 1000)


def test_alternative_affinity_examples():
    assert vals(alternative_affinity_profile(EX, A)) == (F(1, 3),) * 3
    assert vals(alternative_affinity_profile(EX, B)) == (F(1, 2), F(1, 2), F(0))
    with pytest.raises(EmptyClassEdgeSetError):
        alternative_affinity_profile(EdgeTypeCounts((0, 0, 2)), B)


def test_alternative_baseline_examples():
    assert vals(alternative_baseline_profile(3, 2, 3, A)) == (F(3, 10), F(6, 10), F(1, 10))
    assert vals(alternative_baseline_profile(3, 2, 3, B)) == (F(6, 9), F(3, 9), F(0))
    assert vals(alternative_baseline_profile(4, 0, 3, A)) == (0, 0, 1)


def test_class_proportion():
    assert class_proportion(22, 78, A) == F(22, 100)
    assert class_proportion(22, 78, B) == F(78, 100)


# --- ratio, GHI, verdicts ---------------------------------------------------------

def test_ratio_examples():
    b = baseline_profile(3, 2, 3, A)
    assert vals(ratio_profile(b, b)) == (1, 1, 1)
    assert vals(ratio_profile(affinity_profile(EX, A), b)) == (1, F(1, 2), 3)


def test_ratio_zero_baseline():
    with pytest.raises(ZeroBaselineError) as exc:
        ratio_profile(affinity_profile(EX, B), baseline_profile(3, 2, 3, B))
    assert exc.value.t == 3
    out = ratio_profile(affinity_profile(EX, B), baseline_profile(3, 2, 3, B), allow_undefined=True)
    assert out[3] is None


def test_profile_mismatch():
    with pytest.raises(ProfileMismatchError):
        ratio_profile(affinity_profile(EX, A), baseline_profile(3, 2, 3, B))


def test_ghi_examples():
    b = baseline_profile(3, 2, 3, A)
    assert group_homophily_index(b, b) == 0
    assert group_homophily_index(affinity_profile(EX, A), b) == 1


def test_verdict_examples():
    b = baseline_profile(3, 2, 3, A)
    v = homophily_verdict(b, b)
    assert (v.simple, v.majority, v.monotonic, v.ghi) == (False, False, False, 0)
    v = homophily_verdict(affinity_profile(EX, A), b)
    assert (v.simple, v.majority, v.monotonic, v.ghi) == (True, False, False, 1)


def test_majority_types():
    assert list(majority_types(3)) == [2, 3]
    assert list(majority_types(4)) == [3, 4]


def test_even_k_mid_flags():
    h = affinity_profile(EdgeTypeCounts((1, 1, 5, 1, 1)), A)
    v = homophily_verdict(h, asymptotic_baseline_profile(F(1, 2), 4, A))
    assert v.mid_above is True and v.mid_ratio_increase is True
    assert v.majority is False


@given(hypergraphs(min_edges=1), st.sampled_from([A, B]))
@settings(max_examples=200, deadline=None)
def test_verdict_invariants(h, cls):
    try:
        aff = affinity_profile(edge_type_counts(h), cls)
    except EmptyClassDegreeError:
        return
    if h.k < 2:
        return
    base = asymptotic_baseline_profile(F(2, 5), h.k, cls)
    v = homophily_verdict(aff, base)
    assert v.simple == (v.ghi >= 1)
    if v.majority:
        assert v.ghi >= len(majority_types(h.k))
    assert v.ghi <= h.k - 1  # baselines positive and both profiles sum to one


@given(st.lists(st.integers(0, 50), min_size=4, max_size=4))
@settings(max_examples=300, deadline=None)
def test_odd_k_never_both_majority(m):
    counts = EdgeTypeCounts(tuple(m))
    try:
        verdicts = [homophily_verdict(affinity_profile(counts, c), asymptotic_baseline_profile(F(1, 3), 3, c)) for c in (A, B)]
    except EmptyClassDegreeError:
        return
    assert not (verdicts[0].majority and verdicts[1].majority)


# --- normalization and the complete hypergraph -------------------------------------------------

@given(hypergraphs(min_edges=1))
@settings(max_examples=200, deadline=None)
def test_profiles_sum_to_one(h):
    counts = edge_type_counts(h)
    for cls in (A, B):
        for fn in (affinity_profile, alternative_affinity_profile):
            try:
                assert fn(counts, cls).total() == 1
            except (EmptyClassDegreeError, EmptyClassEdgeSetError):
                pass
        x = h.class_size(cls)
        if x >= 1:
            assert baseline_profile(h.class_size(A), h.class_size(B), h.k, cls).total() == 1


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_hypergraph_matches_baseline(n):
    for k in range(1, min(5, n) + 1):
        for n_a in range(1, n):
            c = edge_type_counts(complete_hypergraph(n_a, n - n_a, k))
            for cls in (A, B):
                assert affinity_profile(c, cls) == baseline_profile(n_a, n - n_a, k, cls)
                assert alternative_affinity_profile(c, cls) == alternative_baseline_profile(n_a, n - n_a, k, cls)
                assert set(ratio_profile(affinity_profile(c, cls), baseline_profile(n_a, n - n_a, k, cls), True)) <= {1, None}


# --- likelihood -----------------------------------------------------------------------

def test_log_likelihood_value():
    import math

    assert binomial_log_likelihood(0.25, [1, 2], [4, 4]) == pytest.approx(3 * math.log(0.25) + 5 * math.log(0.75))


@pytest.mark.parametrize("f", [0, 1, 1.5, -0.1])
def test_log_likelihood_f_range(f):
    with pytest.raises(FOutOfRangeError):
        binomial_log_likelihood(f, [1], [2])


def test_mle_matches_closed_form():
    s, n = [3, 1, 4], [5, 9, 6]
    f_hat = grid_refine_argmax(lambda f: binomial_log_likelihood(f, s, n))
    assert abs(f_hat - sum(s) / sum(n)) < 1e-9


def test_mle_recovers_affinities():
    rng = random.Random(7)
    for _ in range(10):
        h = random_hypergraph(rng, 5, 6, 3, 30)
        counts = edge_type_counts(h)
        for cls in (A, B):
            aff = affinity_profile(counts, cls)
            alt = alternative_affinity_profile(counts, cls)
            for t in range(1, 4):
                if 0 < aff[t] < 1:
                    s, n = degree_likelihood_data(h, cls, t)
                    f_hat = grid_refine_argmax(lambda f: binomial_log_likelihood(f, s, n))
                    assert abs(f_hat - float(aff[t])) < 1e-9
                if 0 < alt[t] < 1:
                    s, n = edge_likelihood_data(counts, cls, t)
                    f_hat = grid_refine_argmax(lambda f: binomial_log_likelihood(f, s, n))
                    assert abs(f_hat - float(alt[t])) < 1e-9


# --- graph reduction ---------------------------------------------------------------------

def test_graph_homophily_k2_equals_affinity():
    c = EdgeTypeCounts((4, 7, 9))
    for cls in (A, B):
        assert graph_homophily_index({2: c}, cls) == affinity_profile(c, cls)[2]


def test_graph_homophily_clique_expansion():
    # one triangle a1a2b1: pairs a1a2 (AA), a1b1, a2b1 -> A endpoints: 2 same, 2 cross
    hg = graph_homophily_index({3: EdgeTypeCounts((0, 0, 1, 0))}, A)
    assert hg == F(2, 4)
    assert graph_homophily_index({3: EdgeTypeCounts((0, 0, 1, 0))}, B) == 0
