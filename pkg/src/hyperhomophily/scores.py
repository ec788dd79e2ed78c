"""Affinity, baseline and ratio profiles, homophily predicates and the GHI.

All scores are :class:`fractions.Fraction` values. Comparisons behind the
homophily predicates are strict inequalities, so nothing here rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence

from .errors import (
    AlphaOutOfRangeError,
    EmptyClassDegreeError,
    EmptyClassEdgeSetError,
    FOutOfRangeError,
    InsufficientNodesError,
    InvalidKError,
    ProfileMismatchError,
    ZeroBaselineError,
)
from .hypergraph import ClassLabel, EdgeTypeCounts, TwoClassHypergraph, as_class, typed_degrees


@dataclass(frozen=True)
class Profile:
    """Per-type scores ``values[t-1]`` for t = 1..k and one class.

    Ratio profiles may hold ``None`` where the baseline is zero.
    """

    k: int
    cls: ClassLabel
    values: tuple[Optional[Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "cls", as_class(self.cls))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.k:
            raise ValueError(f"profile for k={self.k} needs {self.k} values")

    def __getitem__(self, t: int) -> Optional[Fraction]:
        """Score at type ``t`` (1-based, matching the type index)."""
        if not 1 <= t <= self.k:
            raise IndexError(f"type index {t} outside 1..{self.k}")
        return self.values[t - 1]

    def __iter__(self):
        return iter(self.values)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def _counts(counts) -> tuple:
    if isinstance(counts, EdgeTypeCounts):
        return counts.m
    return tuple(counts)


def _check_pair(a: Profile, b: Profile) -> None:
    if a.k != b.k or a.cls is not b.cls:
        raise ProfileMismatchError(
            f"profiles disagree: k={a.k}/{b.k}, class={a.cls}/{b.cls}"
        )


# --- affinities -----------------------------------------------------------

def affinity_profile(counts, cls) -> Profile:
    """Degree-based affinity ``h_t(X) = t m_t(X) / sum_i i m_i(X)``.

    ``counts`` is an :class:`EdgeTypeCounts` or any length k+1 sequence of
    nonnegative numbers (fractions are accepted, e.g. expected counts).
    """
    cls = as_class(cls)
    m = _counts(counts)
    k = len(m) - 1
    mx = m if cls is ClassLabel.A else m[::-1]
    degree = sum(i * mx[i] for i in range(1, k + 1))
    if degree == 0:
        raise EmptyClassDegreeError(f"class {cls} has zero total degree")
    return Profile(k, cls, tuple(Fraction(t * mx[t]) / degree for t in range(1, k + 1)))


def alternative_affinity_profile(counts, cls) -> Profile:
    """Edge-count affinity ``a_t(X) = m_t(X) / sum_{i>=1} m_i(X)``."""
    cls = as_class(cls)
    m = _counts(counts)
    k = len(m) - 1
    mx = m if cls is ClassLabel.A else m[::-1]
    total = sum(mx[1:])
    if total == 0:
        raise EmptyClassEdgeSetError(f"no hyperedge contains a class-{cls} node")
    return Profile(k, cls, tuple(Fraction(mx[t]) / total for t in range(1, k + 1)))


def hypergraph_affinity(h: TwoClassHypergraph, cls) -> Profile:
    """Affinity computed straight from typed degrees of class members.

    Independent of :func:`affinity_profile`; used to cross-check the
    edge-count formula.
    """
    cls = as_class(cls)
    num = [0] * h.k
    for v in h.class_nodes(cls):
        for i, d in enumerate(typed_degrees(h, v).d):
            num[i] += d
    total = sum(num)
    if total == 0:
        raise EmptyClassDegreeError(f"class {cls} has zero total degree")
    return Profile(h.k, cls, tuple(Fraction(x, total) for x in num))


# --- baselines ------------------------------------------------------------

def _sizes(n_a: int, n_b: int, cls) -> tuple[int, int]:
    cls = as_class(cls)
    if n_a < 0 or n_b < 0:
        raise InsufficientNodesError("class sizes must be nonnegative")
    return (n_a, n_b) if cls is ClassLabel.A else (n_b, n_a)


def baseline_profile(n_a: int, n_b: int, k: int, cls) -> Profile:
    """Probability that a class-X node lands in a type-t group of k.

    The node picks its k-1 partners uniformly from the other n-1 nodes::

        b_t(X) = C(|X|-1, t-1) C(n-|X|, k-t) / C(n-1, k-1)
    """
    x, y = _sizes(n_a, n_b, cls)
    n = x + y
    if x < 1:
        raise InsufficientNodesError(f"class {as_class(cls)} is empty")
    if k < 1 or n - 1 < k - 1:
        raise InsufficientNodesError(f"need at least k={k} nodes, have {n}")
    denom = comb(n - 1, k - 1)
    return Profile(
        k, cls, tuple(Fraction(comb(x - 1, t - 1) * comb(y, k - t), denom) for t in range(1, k + 1))
    )


def asymptotic_baseline_profile(alpha, k: int, cls) -> Profile:
    """Large-n baseline: Binomial(k-1, alpha) mass shifted to t = 1..k.

    ``alpha`` is the class-A proportion; class B uses ``1 - alpha``.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise AlphaOutOfRangeError(f"alpha must lie in (0, 1), got {alpha}")
    cls = as_class(cls)
    q = alpha if cls is ClassLabel.A else 1 - alpha
    return Profile(
        k, cls, tuple(comb(k - 1, t - 1) * q ** (t - 1) * (1 - q) ** (k - t) for t in range(1, k + 1))
    )


def alternative_baseline_profile(n_a: int, n_b: int, k: int, cls) -> Profile:
    """Share of type-(X, t) k-sets among all k-sets with at least one X node."""
    x, y = _sizes(n_a, n_b, cls)
    if x < 1:
        raise InsufficientNodesError(f"class {as_class(cls)} is empty")
    nums = [comb(x, t) * comb(y, k - t) for t in range(1, k + 1)]
    denom = sum(nums)
    if denom == 0:
        raise InsufficientNodesError(f"no k-set of size {k} contains a class-{as_class(cls)} node")
    return Profile(k, cls, tuple(Fraction(v, denom) for v in nums))


def class_proportion(n_a: int, n_b: int, cls) -> Fraction:
    x, y = _sizes(n_a, n_b, cls)
    return Fraction(x, x + y)


# --- ratios and predicates ------------------------------------------------

def ratio_profile(affinity: Profile, baseline: Profile, allow_undefined: bool = False) -> Profile:
    """Componentwise ``h_t / b_t``.

    With ``allow_undefined`` a zero baseline yields ``None`` at that t instead
    of raising :class:`ZeroBaselineError`.
    """
    _check_pair(affinity, baseline)
    out = []
    for t, (h, b) in enumerate(zip(affinity.values, baseline.values), start=1):
        if b == 0:
            if not allow_undefined:
                raise ZeroBaselineError(t)
            out.append(None)
        else:
            out.append(h / b)
    return Profile(affinity.k, affinity.cls, tuple(out))


def majority_types(k: int) -> range:
    """Types t with t > k - t (the class holds a strict majority)."""
    return range(k // 2 + 1, k + 1)


def group_homophily_index(affinity: Profile, baseline: Profile) -> int:
    """Largest j with h_t > b_t strictly for each of the top j types t = k-j+1..k."""
    _check_pair(affinity, baseline)
    j = 0
    for t in range(affinity.k, 0, -1):
        if affinity[t] > baseline[t]:
            j += 1
        else:
            break
    return j


@dataclass(frozen=True)
class HomophilyVerdict:
    simple: bool
    majority: bool
    monotonic: bool
    ghi: int
    # even k only: h_{k/2} > b_{k/2}, and r_{k/2} > r_{k/2-1} (None when k = 2)
    mid_above: Optional[bool] = None
    mid_ratio_increase: Optional[bool] = None


def _ratio_at(affinity: Profile, baseline: Profile, t: int) -> Fraction:
    b = baseline[t]
    if b == 0:
        raise ZeroBaselineError(t)
    return affinity[t] / b


def homophily_verdict(affinity: Profile, baseline: Profile) -> HomophilyVerdict:
    """Simple, majority and monotonic homophily plus the GHI for one class."""
    _check_pair(affinity, baseline)
    k = affinity.k
    if k < 2:
        raise InvalidKError("homophily notions need k >= 2")
    major = majority_types(k)
    simple = affinity[k] > baseline[k]
    majority = all(affinity[t] > baseline[t] for t in major)
    monotonic = all(
        _ratio_at(affinity, baseline, t) > _ratio_at(affinity, baseline, t - 1) for t in major
    )
    mid_above = mid_increase = None
    if k % 2 == 0:
        ell = k // 2
        mid_above = affinity[ell] > baseline[ell]
        if ell >= 2:
            mid_increase = _ratio_at(affinity, baseline, ell) > _ratio_at(affinity, baseline, ell - 1)
    return HomophilyVerdict(
        simple=simple,
        majority=majority,
        monotonic=monotonic,
        ghi=group_homophily_index(affinity, baseline),
        mid_above=mid_above,
        mid_ratio_increase=mid_increase,
    )


# --- likelihood -----------------------------------------------------------

def binomial_log_likelihood(f, successes: Sequence[int], totals: Sequence[int]) -> float:
    """``sum_i s_i ln f + (n_i - s_i) ln(1 - f)``, binomial constants dropped."""
    f = float(f)
    if not 0 < f < 1:
        raise FOutOfRangeError(f"f must lie in (0, 1), got {f}")
    if len(successes) != len(totals):
        raise ValueError("successes and totals differ in length")
    s = sum(successes)
    n = sum(totals)
    if any(si > ni or si < 0 for si, ni in zip(successes, totals)):
        raise ValueError("need 0 <= successes_i <= totals_i")
    return s * math.log(f) + (n - s) * math.log1p(-f)


def degree_likelihood_data(h: TwoClassHypergraph, cls, t: int) -> tuple[list[int], list[int]]:
    """Per-node (type-t degree, total degree) for every node of class X."""
    succ, tot = [], []
    for v in h.class_nodes(cls):
        d = typed_degrees(h, v)
        succ.append(d.d[t - 1])
        tot.append(d.total)
    return succ, tot


def edge_likelihood_data(counts, cls, t: int) -> tuple[list[int], list[int]]:
    """Single observation: m_t(X) type-(X, t) edges out of all edges touching X."""
    m = _counts(counts)
    mx = m if as_class(cls) is ClassLabel.A else m[::-1]
    return [mx[t]], [sum(mx[1:])]


# --- graph reduction ------------------------------------------------------

def graph_homophily_index(counts_by_k: Mapping[int, object], cls) -> Fraction:
    """Homophily index of the clique expansion of several edge sizes.

    Each size-k edge with t class-X members contributes t(t-1) same-class
    and t(k-1) total incident pair endpoints to class X. Repeated pairs are
    counted with multiplicity (the projected graph is a multigraph).
    """
    same = total = 0
    for k, counts in counts_by_k.items():
        m = _counts(counts)
        mx = m if as_class(cls) is ClassLabel.A else m[::-1]
        for t in range(1, k + 1):
            same += mx[t] * t * (t - 1)
            total += mx[t] * t * (k - 1)
    if total == 0:
        raise EmptyClassDegreeError(f"class {as_class(cls)} has no pairwise ties")
    return Fraction(same, total)
