"""Two-class, k-uniform hypergraphs, typed degrees and edge-type counts.

A hyperedge of *absolute type t* has exactly ``t`` members from class A.
From class X's point of view an edge is of type (X, t) when ``t`` of its
members are in X, so ``m_t(B) = m_{k-t}``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Mapping

from .errors import (
    DuplicateMemberError,
    FocalLabelAbsentError,
    SizeMismatchError,
    UnknownNodeError,
    UnlabeledNodeError,
)


class ClassLabel(str, enum.Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "ClassLabel":
        return ClassLabel.B if self is ClassLabel.A else ClassLabel.A

    def __str__(self) -> str:
        return self.value


def as_class(value) -> ClassLabel:
    """Coerce ``"A"``/``"B"`` (any case) or a ClassLabel to a ClassLabel."""
    if isinstance(value, ClassLabel):
        return value
    return ClassLabel(str(value).upper())


@dataclass(frozen=True)
class EdgeTypeCounts:
    """Absolute hyperedge type counts ``m = (m_0, ..., m_k)``.

    ``m[t]`` is the number of hyperedges with exactly ``t`` class-A members.
    """

    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(self.m)
        if len(m) < 2:
            raise ValueError("EdgeTypeCounts needs k+1 >= 2 entries")
        for v in m:
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"type counts must be nonnegative integers, got {v!r}")
        object.__setattr__(self, "m", tuple(int(v) for v in m))

    @property
    def k(self) -> int:
        return len(self.m) - 1

    @property
    def total(self) -> int:
        return sum(self.m)

    def for_class(self, cls) -> tuple[int, ...]:
        """Counts ``m_t(X)`` indexed t = 0..k from class X's perspective."""
        if as_class(cls) is ClassLabel.A:
            return self.m
        return self.m[::-1]

    def __getitem__(self, t: int) -> int:
        return self.m[t]

    def __len__(self) -> int:
        return len(self.m)

    def __iter__(self):
        return iter(self.m)


@dataclass(frozen=True)
class TypedDegree:
    node: str
    d: tuple[int, ...]  # d[t-1] = type-t degree, t = 1..k

    @property
    def total(self) -> int:
        return sum(self.d)


@dataclass(frozen=True)
class TwoClassHypergraph:
    """Immutable k-uniform multiset of hyperedges over A/B-labeled nodes.

    Parameters
    ----------
    nodes : mapping
        Node id -> :class:`ClassLabel` (``"A"``/``"B"`` strings are accepted).
        Nodes that appear in no edge are kept; they count toward class sizes.
    edges : iterable of sequences
        Hyperedges; repeated member sets are kept with multiplicity.
    k : int
        Uniform edge size.

    The constructor runs :func:`validate`, so every instance is well formed.
    """

    nodes: Mapping[str, ClassLabel]
    edges: tuple[tuple[str, ...], ...]
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        labels = {str(v): as_class(c) for v, c in dict(self.nodes).items()}
        object.__setattr__(self, "nodes", MappingProxyType(labels))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "k", int(self.k))
        validate(self)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def class_size(self, cls) -> int:
        cls = as_class(cls)
        return self._class_sizes[cls]

    @cached_property
    def _class_sizes(self) -> dict:
        sizes = Counter(self.nodes.values())
        return {ClassLabel.A: sizes[ClassLabel.A], ClassLabel.B: sizes[ClassLabel.B]}

    def class_nodes(self, cls) -> list[str]:
        cls = as_class(cls)
        return [v for v, c in self.nodes.items() if c is cls]

    @cached_property
    def edge_types(self) -> tuple[int, ...]:
        """Absolute type (number of class-A members) of each edge, in edge order."""
        labels = self.nodes
        a = ClassLabel.A
        return tuple(sum(1 for v in e if labels[v] is a) for e in self.edges)

    @cached_property
    def _incidence(self) -> dict:
        inc: dict[str, list[int]] = {}
        for i, e in enumerate(self.edges):
            for v in e:
                inc.setdefault(v, []).append(i)
        return inc

    def incident_edges(self, v: str) -> list[int]:
        if v not in self.nodes:
            raise UnknownNodeError(v)
        return list(self._incidence.get(v, ()))


def validate(h: TwoClassHypergraph) -> None:
    """Check that every edge has k distinct, labeled members.

    Raises
    ------
    DuplicateMemberError, SizeMismatchError, UnlabeledNodeError
    """
    labels = h.nodes
    k = h.k
    for e in h.edges:
        if len(set(e)) != len(e):
            seen = set()
            for v in e:
                if v in seen:
                    raise DuplicateMemberError(e, v)
                seen.add(v)
        if len(e) != k:
            raise SizeMismatchError(e, len(e), k)
        for v in e:
            if v not in labels:
                raise UnlabeledNodeError(v)


def edge_type_counts(h: TwoClassHypergraph) -> EdgeTypeCounts:
    """Count hyperedges by number of class-A members (with multiplicity)."""
    m = [0] * (h.k + 1)
    for t in h.edge_types:
        m[t] += 1
    return EdgeTypeCounts(tuple(m))


def typed_degrees(h: TwoClassHypergraph, v: str) -> TypedDegree:
    """Type-t degrees of ``v``: incident edges with exactly t members of v's class.

    The count includes ``v`` itself, so ``t`` ranges over 1..k.
    """
    if v not in h.nodes:
        raise UnknownNodeError(v)
    mine = h.nodes[v]
    d = [0] * h.k
    for i in h._incidence.get(v, ()):
        t = sum(1 for u in h.edges[i] if h.nodes[u] is mine)
        d[t - 1] += 1
    return TypedDegree(v, tuple(d))


def project_to_binary(labels: Mapping[str, str], focal: str) -> dict[str, ClassLabel]:
    """Map nodes carrying ``focal`` to class A and every other node to B."""
    if focal not in set(labels.values()):
        raise FocalLabelAbsentError(focal)
    return {v: (ClassLabel.A if lab == focal else ClassLabel.B) for v, lab in labels.items()}


def complete_hypergraph(n_a: int, n_b: int, k: int) -> TwoClassHypergraph:
    """Every k-subset of ``n_a + n_b`` nodes as a hyperedge (nodes ``a0..``, ``b0..``)."""
    from itertools import combinations

    nodes = {f"a{i}": ClassLabel.A for i in range(n_a)}
    nodes.update({f"b{i}": ClassLabel.B for i in range(n_b)})
    return TwoClassHypergraph(nodes, tuple(combinations(list(nodes), k)), k)

