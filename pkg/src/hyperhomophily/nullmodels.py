"""Cardinality-based hypergraph stochastic block models.

A type-t k-tuple (t members from class A) becomes a hyperedge with
probability ``p[t]``. Two samplers are provided:

* ``method="enumerate"`` flips one coin per k-tuple, exactly as the model is
  defined. Used automatically when C(n, k) <= 10**6.
* ``method="two_stage"`` draws the per-type totals ``M_t ~ Binomial(N_t, p_t)``
  and then ``M_t`` distinct type-t tuples uniformly at random. The joint law
  is the same and nothing of size C(n, k) is materialized.

Random numbers come from numpy's PCG64 bit generator, which produces the
same stream on every platform for a given seed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, compress, product
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyClassDegreeError, ParamOutOfRangeError
from .hypergraph import ClassLabel, TwoClassHypergraph, edge_type_counts
from .scores import affinity_profile, baseline_profile

ENUMERATION_LIMIT = 10**6
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class HSBMParams:
    n: int
    k: int
    n_a: int
    p: tuple[float, ...]
    seed: int = 0

    def __post_init__(self):
        p = (self.p,) * (self.k + 1) if np.ndim(self.p) == 0 else tuple(self.p)
        object.__setattr__(self, "p", tuple(float(x) for x in p))
        if self.k < 1 or self.n < 0:
            raise ParamOutOfRangeError(f"need k >= 1 and n >= 0 (k={self.k}, n={self.n})")
        if not 0 <= self.n_a <= self.n:
            raise ParamOutOfRangeError(f"need 0 <= n_a <= n (n_a={self.n_a}, n={self.n})")
        if len(self.p) != self.k + 1:
            raise ParamOutOfRangeError(f"p needs k+1={self.k + 1} entries, got {len(self.p)}")
        if any(not 0.0 <= x <= 1.0 for x in self.p):
            raise ParamOutOfRangeError(f"probabilities must lie in [0, 1]: {self.p}")

    @property
    def n_b(self) -> int:
        return self.n - self.n_a


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def type_tuple_counts(n_a: int, n_b: int, k: int) -> tuple[int, ...]:
    """``N_t = C(|A|, t) C(|B|, k-t)``, the number of type-t k-sets."""
    return tuple(comb(n_a, t) * comb(n_b, k - t) for t in range(k + 1))


def expected_type_counts(n_a: int, n_b: int, k: int, p) -> tuple[Fraction, ...]:
    """``E[M_t] = p_t N_t`` with exact rational ``p``."""
    if not isinstance(p, (list, tuple)):
        p = [p] * (k + 1)
    return tuple(Fraction(pt) * nt for pt, nt in zip(p, type_tuple_counts(n_a, n_b, k)))


def _node_ids(params: HSBMParams) -> tuple[list[str], list[str]]:
    return [f"a{i}" for i in range(params.n_a)], [f"b{i}" for i in range(params.n_b)]


def _labels(a_ids, b_ids) -> dict:
    labels = {v: ClassLabel.A for v in a_ids}
    labels.update({v: ClassLabel.B for v in b_ids})
    return labels


def _unrank_combinations(ranks: np.ndarray, pool: int, size: int) -> np.ndarray:
    """Colex unranking: row i is the ``ranks[i]``-th ``size``-subset of range(pool)."""
    out = np.empty((len(ranks), size), dtype=np.int64)
    rest = ranks.astype(np.int64).copy()
    cs = np.arange(pool)
    for pos in range(size, 0, -1):
        table = np.array([min(comb(int(c), pos), _INT64_SAFE) for c in cs], dtype=np.int64)
        c = np.searchsorted(table, rest, side="right") - 1
        out[:, pos - 1] = c
        rest -= table[c]
    return out


def _distinct_type_tuples(rng, n_a, n_b, t, k, count, replace=False) -> np.ndarray:
    """``count`` type-t tuples as (A indices, B indices) rows, uniformly drawn."""
    s = k - t
    n_t = comb(n_a, t) * comb(n_b, s)
    if count == 0:
        return np.empty((0, k), dtype=np.int64)
    if n_t < _INT64_SAFE:
        if replace:
            ranks = rng.integers(0, n_t, size=count, dtype=np.int64)
        else:
            ranks = rng.choice(n_t, size=count, replace=False)
        nb = comb(n_b, s)
        ra, rb = np.divmod(np.asarray(ranks, dtype=np.int64), nb)
        a_part = _unrank_combinations(ra, n_a, t)
        b_part = _unrank_combinations(rb, n_b, s)
        return np.hstack([a_part, b_part + n_a])
    # population too large for int64 ranks: rejection on sorted index rows
    rows: list = []
    seen: set = set()
    while len(rows) < count:
        need = count - len(rows)
        a_part = np.sort(rng.integers(0, n_a, size=(2 * need, t)), axis=1)
        b_part = np.sort(rng.integers(0, n_b, size=(2 * need, s)), axis=1) + n_a
        cand = np.hstack([a_part, b_part])
        ok = np.all(np.diff(cand[:, :t], axis=1) > 0, axis=1) & np.all(
            np.diff(cand[:, t:], axis=1) > 0, axis=1
        )
        for row in map(tuple, cand[ok].tolist()):
            if replace or row not in seen:
                seen.add(row)
                rows.append(row)
                if len(rows) == count:
                    break
    return np.array(rows, dtype=np.int64).reshape(count, k)


def _assemble(params, per_type_rows) -> TwoClassHypergraph:
    a_ids, b_ids = _node_ids(params)
    ids = np.array(a_ids + b_ids, dtype=object)
    edges = []
    for rows in per_type_rows:
        if len(rows):
            edges.extend(map(tuple, ids[rows].tolist()))
    return TwoClassHypergraph(_labels(a_ids, b_ids), edges, params.k)


def _sample_enumerate(params: HSBMParams, rng) -> TwoClassHypergraph:
    a_ids, b_ids = _node_ids(params)
    k = params.k
    edges = []
    for t in range(k + 1):
        n_t = comb(params.n_a, t) * comb(params.n_b, k - t)
        if n_t == 0:
            continue
        keep = rng.random(n_t) < params.p[t]
        tuples = product(combinations(a_ids, t), combinations(b_ids, k - t))
        edges.extend(a + b for a, b in compress(tuples, keep))
    return TwoClassHypergraph(_labels(a_ids, b_ids), edges, k)


def _sample_two_stage(params: HSBMParams, rng) -> TwoClassHypergraph:
    k = params.k
    per_type = []
    for t, n_t in enumerate(type_tuple_counts(params.n_a, params.n_b, k)):
        if n_t == 0:
            continue
        m_t = int(rng.binomial(n_t, params.p[t])) if params.p[t] < 1 else n_t
        per_type.append(_distinct_type_tuples(rng, params.n_a, params.n_b, t, k, m_t))
    return _assemble(params, per_type)


def sample_hsbm(params: HSBMParams, method: str = "auto") -> TwoClassHypergraph:
    """Draw a hypergraph from the Bernoulli cardinality-based HSBM.

    Parameters
    ----------
    params : HSBMParams
        Sizes, per-type probabilities and seed. Identical params give an
        identical hypergraph for a given ``method``.
    method : {"auto", "enumerate", "two_stage"}
        ``auto`` enumerates when C(n, k) <= 10**6.
    """
    rng = make_rng(params.seed)
    if method == "auto":
        method = "enumerate" if comb(params.n, params.k) <= ENUMERATION_LIMIT else "two_stage"
    if method == "enumerate":
        return _sample_enumerate(params, rng)
    if method == "two_stage":
        return _sample_two_stage(params, rng)
    raise ValueError(f"unknown sampling method {method!r}")


def sample_hsbm_poisson(params: HSBMParams) -> TwoClassHypergraph:
    """Multigraph variant: each type-t tuple carries Poisson(p_t) copies.

    Sampled as ``M_t ~ Poisson(N_t p_t)`` followed by ``M_t`` tuples drawn
    uniformly with replacement from the type-t tuples.
    """
    rng = make_rng(params.seed)
    k = params.k
    per_type = []
    for t, n_t in enumerate(type_tuple_counts(params.n_a, params.n_b, k)):
        if n_t == 0:
            continue
        m_t = int(rng.poisson(n_t * params.p[t]))
        per_type.append(_distinct_type_tuples(rng, params.n_a, params.n_b, t, k, m_t, replace=True))
    return _assemble(params, per_type)


@dataclass(frozen=True)
class ConvergenceReport:
    n: int
    seed: int
    edge_count: int
    max_abs_ratio_deviation: float


def max_ratio_deviation(h: TwoClassHypergraph) -> float:
    """max over t and both classes of |h_t / b_t - 1| against exact baselines.

    Types whose baseline is zero are skipped; an empty class degree gives inf.
    """
    counts = edge_type_counts(h)
    n_a, n_b = h.class_size(ClassLabel.A), h.class_size(ClassLabel.B)
    worst = 0.0
    for cls in ClassLabel:
        try:
            aff = affinity_profile(counts, cls)
        except EmptyClassDegreeError:
            return float("inf")
        base = baseline_profile(n_a, n_b, h.k, cls)
        for hv, bv in zip(aff.values, base.values):
            if bv:
                worst = max(worst, abs(float(hv / bv) - 1.0))
    return worst


def convergence_experiment(
    n_values: Iterable[int],
    k: int,
    alpha,
    p: float,
    seeds: Sequence[int],
    method: str = "auto",
) -> list[ConvergenceReport]:
    """Ratio scores of uniform-p HSBM samples against exact baselines.

    For each n, ``round(alpha * n)`` nodes go to class A and every seed in
    ``seeds`` produces one sample and one report.
    """
    if not 0 < p <= 1:
        raise ParamOutOfRangeError(f"p must lie in (0, 1], got {p}")
    alpha = Fraction(alpha)
    reports = []
    for n in n_values:
        n_a = round(alpha * n)
        for seed in seeds:
            h = sample_hsbm(HSBMParams(n, k, n_a, (p,) * (k + 1), seed), method=method)
            reports.append(ConvergenceReport(n, seed, h.num_edges, max_ratio_deviation(h)))
    return reports


def seed_schedule(master_seed: int, count: int) -> list[int]:
    """Seeds ``master_seed + i`` for experiment index i."""
    return [master_seed + i for i in range(count)]


def reports_to_csv(reports: Iterable[ConvergenceReport], out: Optional[io.TextIOBase] = None) -> str:
    buf = out if out is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "seed", "edges", "max_deviation"])
    for r in reports:
        writer.writerow([r.n, r.seed, r.edge_count, repr(r.max_abs_ratio_deviation)])
    return buf.getvalue() if out is None else ""
