"""File formats, per-size slicing, composition-only input and the bootstrap.

Formats (UTF-8; blank lines and lines starting with ``#`` are ignored):

* edges file: one hyperedge per line, node ids separated by commas and/or
  whitespace;
* labels file: ``node,label`` per line (comma or whitespace separated);
* compositions file: ``k,t,count`` per line, ``t`` being the number of
  focal-class members of a size-k group and ``count`` how many such groups
  were observed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Union

import numpy as np

from .errors import (
    DuplicateMemberError,
    EmptyClassDegreeError,
    NoEdgesOfSizeError,
    ParseError,
    TOutOfRangeError,
    UnlabeledNodeError,
)
from .hypergraph import ClassLabel, EdgeTypeCounts, TwoClassHypergraph, project_to_binary
from .scores import Profile, affinity_profile

PathLike = Union[str, Path]
_SEP = re.compile(r"[,\s]+")


def _data_lines(path: PathLike):
    """Yield (line number, tokens) for every non-blank, non-comment line."""
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            yield line_no, [tok for tok in _SEP.split(s) if tok]


def load_edge_list(path: PathLike, dedup_within_edge: bool = False) -> list[tuple[int, tuple[str, ...]]]:
    """Parse an edges file into ``(line number, members)`` pairs.

    A node repeated inside one line raises :class:`ParseError` unless
    ``dedup_within_edge`` collapses the repeats (keeping first occurrence).
    """
    out = []
    for line_no, toks in _data_lines(path):
        if dedup_within_edge:
            toks = list(dict.fromkeys(toks))
        seen = set()
        for v in toks:
            if v in seen:
                try:
                    raise DuplicateMemberError(toks, v)
                except DuplicateMemberError as exc:
                    raise ParseError(line_no, str(exc), path) from exc
            seen.add(v)
        out.append((line_no, tuple(toks)))
    return out


def load_labels(path: PathLike) -> dict[str, str]:
    """Parse a labels file into ``node -> raw label``."""
    labels: dict[str, str] = {}
    for line_no, toks in _data_lines(path):
        if len(toks) != 2:
            raise ParseError(line_no, f"expected 'node,label', got {len(toks)} fields", path)
        node, lab = toks
        if node in labels and labels[node] != lab:
            raise ParseError(line_no, f"node {node!r} labeled both {labels[node]!r} and {lab!r}", path)
        labels[node] = lab
    return labels


def _prepare(edges, binary, dedup, on_unlabeled):
    if on_unlabeled not in ("error", "drop"):
        raise ValueError("on_unlabeled must be 'error' or 'drop'")
    kept = []
    for _, e in edges:
        missing = [v for v in e if v not in binary]
        if missing:
            if on_unlabeled == "error":
                raise UnlabeledNodeError(missing[0])
            continue
        kept.append(e)
    if dedup:
        seen: set = set()
        unique = []
        for e in kept:
            key = frozenset(e)
            if key not in seen:
                seen.add(key)
                unique.append(e)
        kept = unique
    return kept


def load_hypergraphs(
    edges_path: PathLike,
    labels_path: PathLike,
    focal_label: str,
    k_values: Optional[Iterable[int]] = None,
    dedup: bool = False,
    dedup_within_edge: bool = False,
    on_unlabeled: str = "error",
) -> dict[int, TwoClassHypergraph]:
    """Slice a mixed-size edges file into one hypergraph per edge size.

    Every slice keeps all labeled nodes, so class sizes (and hence baselines)
    refer to the whole labeled population. ``k_values`` selects sizes; by
    default every size present in the file is returned.
    """
    binary = project_to_binary(load_labels(labels_path), focal_label)
    edges = _prepare(load_edge_list(edges_path, dedup_within_edge), binary, dedup, on_unlabeled)
    sizes = sorted({len(e) for e in edges}) if k_values is None else sorted(set(k_values))
    by_k: dict[int, list] = {k: [] for k in sizes}
    for e in edges:
        if len(e) in by_k:
            by_k[len(e)].append(e)
    return {k: TwoClassHypergraph(binary, by_k[k], k) for k in sizes}


def load_labeled_hypergraph(
    edges_path: PathLike,
    labels_path: PathLike,
    focal_label: str,
    k_filter: Optional[int] = None,
    dedup: bool = False,
    dedup_within_edge: bool = False,
    on_unlabeled: str = "error",
) -> TwoClassHypergraph:
    """Load one k-uniform hypergraph; nodes with ``focal_label`` become class A.

    Without ``k_filter`` the file must be uniform. With it, only size-k lines
    are kept (possibly none).

    Raises
    ------
    ParseError, UnlabeledNodeError, FocalLabelAbsentError
    """
    if k_filter is None:
        sizes = {len(e) for _, e in load_edge_list(edges_path, dedup_within_edge)}
        if len(sizes) != 1:
            reason = "no hyperedges" if not sizes else f"mixed edge sizes {sorted(sizes)}; pass k_filter"
            raise ParseError(0, reason, edges_path)
        k_filter = sizes.pop()
    return load_hypergraphs(
        edges_path, labels_path, focal_label, [k_filter], dedup, dedup_within_edge, on_unlabeled
    )[k_filter]


# --- compositions -----------------------------------------------------------

@dataclass(frozen=True)
class CompositionRecord:
    """``multiplicity`` observed groups of size ``k`` with ``t`` focal members."""

    k: int
    t: int
    multiplicity: int

    def __post_init__(self):
        if not 0 <= self.t <= self.k:
            raise TOutOfRangeError(0, f"t={self.t} outside 0..{self.k}")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


def load_compositions(path: PathLike) -> list[CompositionRecord]:
    records = []
    for line_no, toks in _data_lines(path):
        if len(toks) != 3:
            raise ParseError(line_no, f"expected 'k,t,count', got {len(toks)} fields", path)
        try:
            k, t, count = (int(x) for x in toks)
        except ValueError as exc:
            raise ParseError(line_no, f"non-integer field in {toks}", path) from exc
        if k < 1:
            raise ParseError(line_no, f"group size must be positive, got {k}", path)
        if not 0 <= t <= k:
            raise TOutOfRangeError(line_no, f"t={t} outside 0..{k}", path)
        if count < 1:
            raise ParseError(line_no, f"count must be positive, got {count}", path)
        records.append(CompositionRecord(k, t, count))
    return records


def compositions_to_counts(records: Iterable[CompositionRecord], k: int) -> EdgeTypeCounts:
    """Absolute type counts (focal class = A) of the size-k records."""
    m = [0] * (k + 1)
    for rec in records:
        if rec.k == k:
            m[rec.t] += rec.multiplicity
    return EdgeTypeCounts(tuple(m))


def composition_sizes(records: Iterable[CompositionRecord]) -> list[int]:
    return sorted({rec.k for rec in records})


def affinity_from_compositions(records, k: int, class_side: str = "in-class") -> Profile:
    """Affinity of the focal class (``in-class``) or of everyone else (``out-class``)."""
    if class_side not in ("in-class", "out-class"):
        raise ValueError("class_side must be 'in-class' or 'out-class'")
    counts = compositions_to_counts(records, k)
    return affinity_profile(counts, ClassLabel.A if class_side == "in-class" else ClassLabel.B)


def member_share(records: Iterable[CompositionRecord], k: int) -> Fraction:
    """Fraction of focal members among all size-k group seats."""
    records = [r for r in records if r.k == k]
    seats = sum(r.k * r.multiplicity for r in records)
    if seats == 0:
        raise NoEdgesOfSizeError(k)
    return Fraction(sum(r.t * r.multiplicity for r in records), seats)


# --- writers ------------------------------------------------------------------

def write_edges(h: TwoClassHypergraph, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in h.edges:
            fh.write(" ".join(e) + "\n")


def write_labels(h: TwoClassHypergraph, path: PathLike, names: Optional[Mapping] = None) -> None:
    """One ``node,label`` line per node; ``names`` maps ClassLabel to a label string."""
    names = names or {ClassLabel.A: "A", ClassLabel.B: "B"}
    with open(path, "w", encoding="utf-8") as fh:
        for v, c in h.nodes.items():
            fh.write(f"{v},{names[c]}\n")


# --- bootstrap ----------------------------------------------------------------

@dataclass(frozen=True)
class BootstrapReport:
    """Affinity point estimate and bootstrap mean / standard error per t.

    ``stderr[t-1]`` is the sample standard deviation of the rep affinities
    divided by sqrt(reps); it is 0 when only one rep is available.
    """

    k: int
    cls: ClassLabel
    point: Profile
    mean: tuple[Fraction, ...]
    stderr: tuple[float, ...]
    reps: int
    seed: int


Resampler = Callable[[np.random.Generator, int], np.ndarray]


def _uniform_resample(rng: np.random.Generator, m: int) -> np.ndarray:
    return rng.integers(0, m, size=m)


def bootstrap(
    h: TwoClassHypergraph,
    k: Optional[int] = None,
    reps: int = 100,
    seed: int = 0,
    resampler: Resampler = _uniform_resample,
) -> dict[ClassLabel, BootstrapReport]:
    """Resample the size-k hyperedges with replacement and recompute affinities.

    Rep i draws ``m_k`` edge indices using a PCG64 generator seeded with
    ``seed + i``. A rep in which a class has zero degree is skipped for that
    class; ``reps`` in the report counts the reps actually used.

    Raises
    ------
    NoEdgesOfSizeError
        ``h`` has no edges of size ``k``.
    """
    k = h.k if k is None else k
    if k != h.k:
        raise NoEdgesOfSizeError(k)
    return bootstrap_edge_types(h.edge_types, k, reps, seed, resampler)


def bootstrap_compositions(records, k: int, reps: int = 100, seed: int = 0) -> dict[ClassLabel, BootstrapReport]:
    """Bootstrap on composition records; each group is one resampling unit."""
    counts = compositions_to_counts(records, k)
    return bootstrap_edge_types(np.repeat(np.arange(k + 1), counts.m), k, reps, seed)


def bootstrap_edge_types(
    edge_types,
    k: int,
    reps: int = 100,
    seed: int = 0,
    resampler: Resampler = _uniform_resample,
) -> dict[ClassLabel, BootstrapReport]:
    """Bootstrap core on an array of absolute edge types (class-A member counts)."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    types = np.asarray(edge_types, dtype=np.int64)
    if len(types) == 0:
        raise NoEdgesOfSizeError(k)
    m = len(types)
    full = EdgeTypeCounts(tuple(int(c) for c in np.bincount(types, minlength=k + 1)))
    samples: dict[ClassLabel, list] = {ClassLabel.A: [], ClassLabel.B: []}
    for i in range(reps):
        rng = np.random.Generator(np.random.PCG64(seed + i))
        idx = np.asarray(resampler(rng, m))
        if len(idx) != m:
            raise ValueError(f"resample size {len(idx)} differs from m_k={m}")
        edge_counts = EdgeTypeCounts(tuple(int(c) for c in np.bincount(types[idx], minlength=k + 1)))
        for cls in (ClassLabel.A, ClassLabel.B):
            try:
                samples[cls].append(affinity_profile(edge_counts, cls).values)
            except EmptyClassDegreeError:
                continue
    reports = {}
    for cls in (ClassLabel.A, ClassLabel.B):
        try:
            point = affinity_profile(full, cls)
        except EmptyClassDegreeError:
            continue
        rows = samples[cls]
        if not rows:
            continue
        n = len(rows)
        mean = tuple(sum(col, Fraction(0)) / n for col in zip(*rows))
        if n > 1:
            arr = np.array([[float(v) for v in row] for row in rows])
            stderr = tuple(float(s) for s in arr.std(axis=0, ddof=1) / np.sqrt(n))
        else:
            stderr = (0.0,) * k
        reports[cls] = BootstrapReport(k, cls, point, mean, stderr, n, seed)
    return reports
