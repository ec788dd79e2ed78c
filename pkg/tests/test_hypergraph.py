import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperhomophily import (
    ClassLabel,
    EdgeTypeCounts,
    TwoClassHypergraph,
    complete_hypergraph,
    edge_type_counts,
    project_to_binary,
    typed_degrees,
)
from hyperhomophily.errors import (
    DuplicateMemberError,
    FocalLabelAbsentError,
    SizeMismatchError,
    UnknownNodeError,
    UnlabeledNodeError,
)
from strategies import hypergraphs

A, B = ClassLabel.A, ClassLabel.B


# --- validate -----------------------------------------------------------------

def test_valid_single_edge():
    h = TwoClassHypergraph({"a1": "A", "a2": "A", "a3": "A"}, [("a1", "a2", "a3")], 3)
    assert h.num_edges == 1


def test_duplicate_member():
    with pytest.raises(DuplicateMemberError) as exc:
        TwoClassHypergraph({"a1": "A", "a2": "A"}, [("a1", "a1", "a2")], 3)
    assert exc.value.node == "a1"


def test_size_mismatch():
    with pytest.raises(SizeMismatchError) as exc:
        TwoClassHypergraph({"a1": "A", "a2": "A"}, [("a1", "a2")], 3)
    assert exc.value.size == 2


def test_unlabeled_node():
    with pytest.raises(UnlabeledNodeError):
        TwoClassHypergraph({"a1": "A", "a2": "A"}, [("a1", "a2", "zz")], 3)


def test_hypergraph_is_immutable(example_h):
    with pytest.raises(Exception):
        example_h.k = 4
    with pytest.raises(TypeError):
        example_h.nodes["a1"] = B


# --- edge_type_counts -----------------------------------------------------------

def test_edge_type_counts_example(example_h):
    assert edge_type_counts(example_h).m == (0, 1, 1, 1)


def test_edge_type_counts_empty():
    h = TwoClassHypergraph({"a": "A", "b": "B"}, [], 2)
    assert edge_type_counts(h).m == (0, 0, 0)


def test_complete_3_3_2():
    counts = edge_type_counts(complete_hypergraph(3, 2, 3))
    assert counts.m == (0, 3, 6, 1)
    # brute-force enumeration oracle
    labels = ["A"] * 3 + ["B"] * 2
    brute = [0] * 4
    for s in combinations(range(5), 3):
        brute[sum(labels[i] == "A" for i in s)] += 1
    assert list(counts.m) == brute


def test_multiplicity_preserved():
    h = TwoClassHypergraph({"a": "A", "b": "B"}, [("a", "b"), ("b", "a")], 2)
    assert edge_type_counts(h).m == (0, 2, 0)


def test_edge_type_counts_class_view():
    c = EdgeTypeCounts((0, 1, 1, 1))
    assert c.for_class(B) == (1, 1, 1, 0)
    assert c.total == 3 and c.k == 3


@pytest.mark.parametrize("bad", [(-1, 2), (1.5, 2), (True, 1), (1,)])
def test_edge_type_counts_rejects(bad):
    with pytest.raises(ValueError):
        EdgeTypeCounts(bad)


# --- typed_degrees ---------------------------------------------------------------

def test_typed_degrees_b1(example_h):
    assert typed_degrees(example_h, "b1").d == (1, 1, 0)


def test_typed_degrees_a1(example_h):
    assert typed_degrees(example_h, "a1").d == (1, 1, 1)


def test_typed_degrees_isolated():
    h = TwoClassHypergraph({"a": "A", "b": "B", "c": "A"}, [("a", "b")], 2)
    assert typed_degrees(h, "c").d == (0, 0)
    assert h.class_size(A) == 2


def test_typed_degrees_unknown(example_h):
    with pytest.raises(UnknownNodeError):
        typed_degrees(example_h, "nope")


# --- project_to_binary --------------------------------------------------------

def test_project_basic():
    out = project_to_binary({"x": "red", "y": "blue", "z": "green"}, "red")
    assert out == {"x": A, "y": B, "z": B}


def test_project_all_focal():
    out = project_to_binary({"x": "red", "y": "red"}, "red")
    assert set(out.values()) == {A}


def test_project_absent():
    with pytest.raises(FocalLabelAbsentError):
        project_to_binary({"x": "red"}, "purple")


# --- properties ------------------------------------------------------------------

@given(hypergraphs())
@settings(max_examples=200, deadline=None)
def test_degree_edge_identity(h):
    counts = edge_type_counts(h)
    k = h.k
    for cls in (A, B):
        sums = [0] * k
        for v in h.class_nodes(cls):
            for i, d in enumerate(typed_degrees(h, v).d):
                sums[i] += d
        mx = counts.for_class(cls)
        assert sums == [t * mx[t] for t in range(1, k + 1)]


@given(hypergraphs())
@settings(max_examples=100, deadline=None)
def test_total_degree_matches_incidence(h):
    for v in h.nodes:
        assert typed_degrees(h, v).total == len(h.incident_edges(v))
    assert edge_type_counts(h).total == h.num_edges


@given(hypergraphs(), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_counts_permutation_invariant(h, rnd):
    edges = list(h.edges)
    rnd.shuffle(edges)
    # class-preserving relabeling: permute ids within each class
    perm = {}
    for cls in (A, B):
        ids = h.class_nodes(cls)
        shuffled = ids[:]
        rnd.shuffle(shuffled)
        perm.update({old: "n_" + new for old, new in zip(ids, shuffled)})
    relabeled = TwoClassHypergraph(
        {perm[v]: c for v, c in h.nodes.items()},
        [tuple(perm[v] for v in rnd.sample(e, len(e))) for e in edges],
        h.k,
    )
    assert edge_type_counts(relabeled) == edge_type_counts(h)


def test_complete_hypergraph_counts_are_binomial_products():
    rng = random.Random(1)
    for _ in range(20):
        n_a, n_b = rng.randint(0, 6), rng.randint(0, 6)
        if n_a + n_b == 0:
            continue
        k = rng.randint(1, n_a + n_b)
        assert edge_type_counts(complete_hypergraph(n_a, n_b, k)).m == tuple(
            comb(n_a, t) * comb(n_b, k - t) for t in range(k + 1)
        )
