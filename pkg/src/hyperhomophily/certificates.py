"""Exact-rational LP certificates for the group homophily impossibility results.

The question "can both classes be majority-homophilous at once?" is the
linear program

    maximize gamma  s.t.  B x >= gamma,  sum(x) = 1,  x >= 0

over normalized edge-type counts ``x = (x_0, ..., x_k)``. Rows of ``B`` are
the majority constraints ``h_t(X) > g_t(X)`` for both classes, written as
linear functions of ``x``. A nonnegative ``y`` with ``B^T y = 0`` proves the
optimum is zero (nothing strictly feasible), and the theorems give such ``y``
in closed form. This module builds ``B``, the dual vectors, the witnesses
showing every single constraint is necessary, and a randomized oracle.

Everything is :class:`fractions.Fraction`; nothing is solved numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CertificateConstructionFailed,
    EmptyClassDegreeError,
    EmptyClassEdgeSetError,
    InvalidKError,
    NonpositiveBaselineError,
    NoWitnessError,
    TheoremViolationError,
    ZeroWitnessCountError,
)
from .hypergraph import ClassLabel, EdgeTypeCounts, as_class
from .scores import Profile, affinity_profile, alternative_affinity_profile

Rational = Fraction
A, B = ClassLabel.A, ClassLabel.B

VARIANTS = ("standard", "alternative")
BASELINE_KINDS = ("standard-exact", "asymptotic", "alternative", "custom-witness")

Row = tuple  # (ClassLabel, t)


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return variant


# --- generalized baselines --------------------------------------------------

@dataclass(frozen=True)
class GeneralizedBaseline:
    """Baseline scores realized as the affinity scores of witness counts ``M``.

    ``g_t(X)`` is the standard (degree-based) or alternative (edge-based)
    affinity of the witness, depending on the ``variant`` asked for. All
    ``M_t`` must be positive, which makes ``g_t(X) > 0`` for every t in
    1..k under both variants.
    """

    witness: EdgeTypeCounts
    kind: str = "custom-witness"

    def __post_init__(self):
        if not isinstance(self.witness, EdgeTypeCounts):
            object.__setattr__(self, "witness", EdgeTypeCounts(tuple(self.witness)))
        if self.kind not in BASELINE_KINDS:
            raise ValueError(f"kind must be one of {BASELINE_KINDS}, got {self.kind!r}")
        m = self.witness.m
        k = len(m) - 1
        # g_t(A) = 0 iff M_t = 0 (t >= 1); g_t(B) = 0 iff M_{k-t} = 0
        for t in range(1, k + 1):
            if m[t] == 0:
                raise NonpositiveBaselineError(A, t)
        if m[0] == 0:
            raise NonpositiveBaselineError(B, k)

    @property
    def k(self) -> int:
        return self.witness.k

    def scores(self, cls, variant: str = "standard") -> Profile:
        if _check_variant(variant) == "standard":
            return affinity_profile(self.witness, cls)
        return alternative_affinity_profile(self.witness, cls)

    def g(self, cls, t: int, variant: str = "standard") -> Fraction:
        return self.scores(cls, variant)[t]

    def mirrored(self) -> "GeneralizedBaseline":
        """The same baseline with the class names swapped (``M`` reversed)."""
        return GeneralizedBaseline(EdgeTypeCounts(self.witness.m[::-1]), self.kind)

    @classmethod
    def from_witness(cls, counts, kind: str = "custom-witness") -> "GeneralizedBaseline":
        return cls(counts if isinstance(counts, EdgeTypeCounts) else EdgeTypeCounts(tuple(counts)), kind)

    @classmethod
    def standard_exact(cls, n_a: int, n_b: int, k: int) -> "GeneralizedBaseline":
        """Counts of the complete k-uniform hypergraph on (n_a, n_b) nodes."""
        return cls(EdgeTypeCounts(tuple(comb(n_a, t) * comb(n_b, k - t) for t in range(k + 1))), "standard-exact")

    @classmethod
    def alternative_exact(cls, n_a: int, n_b: int, k: int) -> "GeneralizedBaseline":
        """Complete-hypergraph counts, meant for the alternative scores."""
        return cls(cls.standard_exact(n_a, n_b, k).witness, "alternative")

    @classmethod
    def asymptotic(cls, alpha, k: int) -> "GeneralizedBaseline":
        """Integer witness ``M_t = C(k,t) p^t (q-p)^(k-t)`` for ``alpha = p/q``.

        Its standard affinity equals the large-n baseline
        ``C(k-1,t-1) alpha^(t-1) (1-alpha)^(k-t)`` exactly.
        """
        alpha = Fraction(alpha)
        p, q = alpha.numerator, alpha.denominator
        return cls(EdgeTypeCounts(tuple(comb(k, t) * p**t * (q - p) ** (k - t) for t in range(k + 1))), "asymptotic")

    @classmethod
    def binomial(cls, k: int) -> "GeneralizedBaseline":
        """``M_t = C(k, t)``: the alpha = 1/2 asymptotic baseline."""
        return cls.asymptotic(Fraction(1, 2), k)


def generalized_baseline_from_witness(counts, kind: str = "custom-witness") -> GeneralizedBaseline:
    return GeneralizedBaseline.from_witness(counts, kind)


# --- the majority LP --------------------------------------------------------

def _first_index(k: int) -> int:
    """r: smallest majority type."""
    return (k + 1) // 2 if k % 2 else k // 2 + 1


def own_column(row: Row, k: int) -> int:
    """Variable ``x_j`` a row's positive term sits on: t for A, k-t for B."""
    cls, t = row
    return t if cls is A else k - t


def constraint_value(row: Row, x: Sequence, g: GeneralizedBaseline, variant: str) -> Fraction:
    """Evaluate ``h_t(X)·D - g_t(X)·D`` as a linear function of ``x``.

    Standard: ``t x_c - g_t(X) sum_i i x_{c(i)}`` with ``D = sum_i i x_{c(i)}``.
    Alternative: ``x_c - g_t(X) sum_{i>=1} x_{c(i)}``. Here ``c(i)`` maps the
    class-X type i to the absolute index (i for A, k-i for B).
    """
    cls, t = row
    k = g.k
    idx = (lambda i: i) if cls is A else (lambda i: k - i)
    gt = g.g(cls, t, variant)
    if variant == "standard":
        return t * x[idx(t)] - gt * sum(i * x[idx(i)] for i in range(1, k + 1))
    return x[idx(t)] - gt * sum(x[idx(i)] for i in range(1, k + 1))


@dataclass(frozen=True)
class MajorityLP:
    """Constraint matrix of the majority-homophily LP, one row per (class, t).

    Rows: ``(B,k), ..., (B,r)``, then the optional even-k row ``(X, k/2)``,
    then ``(A,r), ..., (A,k)``. Columns: ``x_0, ..., x_k``.
    """

    k: int
    r: int
    rows: tuple[Row, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    baseline: GeneralizedBaseline
    variant: str
    even_extra: Optional[ClassLabel] = None

    @property
    def include_mid(self) -> bool:
        return self.even_extra is not None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.k + 1

    def row_index(self, row) -> int:
        cls, t = row
        return self.rows.index((as_class(cls), t))

    def slacks(self, x: Sequence) -> tuple[Fraction, ...]:
        """``B x`` for normalized counts ``x`` (any numbers; Fractions stay exact)."""
        return tuple(sum(b * xi for b, xi in zip(brow, x)) for brow in self.matrix)

    def gamma(self, x: Sequence, exclude: Optional[Row] = None) -> Fraction:
        """Minimum slack over all rows, optionally skipping one."""
        skip = None if exclude is None else self.row_index(exclude)
        return min(s for i, s in enumerate(self.slacks(x)) if i != skip)

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.matrix])


def _lp_rows(k: int, r: int, even_extra: Optional[ClassLabel]) -> tuple[Row, ...]:
    rows = [(B, t) for t in range(k, r - 1, -1)]
    if even_extra is not None:
        rows.append((even_extra, k // 2))
    rows += [(A, t) for t in range(r, k + 1)]
    return tuple(rows)


def _check_decomposition(k, rows, matrix, g, variant) -> None:
    """B = D_k - D_g R (standard) or B = I - D_g E (alternative), entrywise."""
    for (cls, t), brow in zip(rows, matrix):
        c = own_column((cls, t), k)
        gt = g.g(cls, t, variant)
        for j in range(k + 1):
            i = j if cls is A else k - j  # class-X type carried by x_j
            if variant == "standard":
                expected = (t if j == c else 0) - gt * i
            else:
                expected = (1 if j == c else 0) - gt * (1 if i >= 1 else 0)
            if brow[j] != expected:
                raise CertificateConstructionFailed(
                    f"decomposition fails at row ({cls},{t}), column {j}: {brow[j]} != {expected}"
                )


def build_majority_lp(
    k: int,
    g: GeneralizedBaseline,
    variant: str = "standard",
    even_extra=None,
) -> MajorityLP:
    """Assemble the exact constraint matrix for one variant.

    Parameters
    ----------
    k : int
        Edge size, k >= 2 and equal to ``g.k``.
    g : GeneralizedBaseline
    variant : {"standard", "alternative"}
    even_extra : {None, "A", "B"}
        For even k, add the row ``h_{k/2}(X) > g_{k/2}(X)`` for that class.
    """
    _check_variant(variant)
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise InvalidKError(f"the majority LP needs k >= 2, got {k!r}")
    if g.k != k:
        raise InvalidKError(f"baseline is for k={g.k}, LP asked for k={k}")
    if even_extra is not None:
        even_extra = as_class(even_extra)
        if k % 2:
            raise InvalidKError("the extra middle constraint only exists for even k")
    r = _first_index(k)
    rows = _lp_rows(k, r, even_extra)
    unit = [[int(i == j) for i in range(k + 1)] for j in range(k + 1)]
    matrix = tuple(tuple(constraint_value(row, unit[j], g, variant) for j in range(k + 1)) for row in rows)
    _check_decomposition(k, rows, matrix, g, variant)
    return MajorityLP(k, r, rows, matrix, g, variant, even_extra)


# --- dual certificates ------------------------------------------------------

@dataclass(frozen=True)
class DualCertificate:
    """Dual vector ``y`` indexed by LP row; ``delta`` is the standard-variant scale."""

    rows: tuple[Row, ...]
    y: tuple[Fraction, ...]
    delta: Optional[Fraction]
    normalized: bool

    def __getitem__(self, row) -> Fraction:
        cls, t = row
        return self.y[self.rows.index((as_class(cls), t))]

    def as_dict(self) -> dict:
        return dict(zip(self.rows, self.y))

    def normalize(self) -> "DualCertificate":
        total = sum(self.y, Fraction(0))
        if total == 0:
            raise CertificateConstructionFailed("dual vector sums to zero")
        return DualCertificate(self.rows, tuple(v / total for v in self.y), self.delta, True)


def _delta(k: int, r: int) -> Fraction:
    base = 2 * k * sum(Fraction(1, t) for t in range(r, k + 1))
    return base + 2 if k % 2 == 0 else base


def _standard_dual(lp: MajorityLP) -> dict:
    k, r = lp.k, lp.r
    gB = lp.baseline.scores(B, "standard")
    delta = _delta(k, r)
    num = sum((Fraction(k, i) - 1) * gB[i] for i in range(r, k + 1))
    den = 1 - sum((2 - Fraction(k, i)) * gB[i] for i in range(r, k + 1))
    y_bk = (2 / delta) * num / den
    y = {}
    for t in range(r, k + 1):
        y[(B, t)] = (2 / delta) * (Fraction(k, t) - 1) + (2 - Fraction(k, t)) * y_bk
        y[(A, t)] = Fraction(2 * k) / (delta * t) - y[(B, t)]
    if k % 2 == 0:
        y[(A, k // 2)] = 2 / delta
    return y, delta


def _alternative_dual(lp: MajorityLP) -> dict:
    k, r = lp.k, lp.r
    g = lp.baseline
    z = Fraction(1)
    start_a = k // 2 if k % 2 == 0 else r
    y = {row: z for row in lp.rows}
    gB, gA = g.scores(B, "alternative"), g.scores(A, "alternative")
    y[(B, k)] = z * sum((gB[i] for i in range(r, k)), Fraction(0)) / (1 - gB[k])
    y[(A, k)] = z * sum((gA[i] for i in range(start_a, k)), Fraction(0)) / (1 - gA[k])
    return y, None


def _transpose_product(lp: MajorityLP, y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum(lp.matrix[i][j] * y[i] for i in range(len(y))) for j in range(lp.k + 1))


def dual_certificate_majority(lp: MajorityLP, normalize: bool = True) -> DualCertificate:
    """Closed-form dual vector showing the LP optimum is zero.

    Even k needs the extra middle row. With the extra row on class B the
    problem is solved on the class-swapped LP and the labels mapped back.

    Raises
    ------
    CertificateConstructionFailed
        Missing even-k extra row, or the closed form fails its own exact
        check (impossible for a valid baseline).
    """
    if lp.k % 2 == 0 and lp.even_extra is None:
        raise CertificateConstructionFailed(
            f"k={lp.k} is even: the majority LP is feasible without the extra k/2 row"
        )
    if lp.even_extra is B:
        mirror = build_majority_lp(lp.k, lp.baseline.mirrored(), lp.variant, A)
        inner = dual_certificate_majority(mirror, normalize=False)
        ydict = {(cls.other, t): v for (cls, t), v in inner.as_dict().items()}
        delta = inner.delta
    else:
        ydict, delta = (_standard_dual if lp.variant == "standard" else _alternative_dual)(lp)
    try:
        raw = DualCertificate(lp.rows, tuple(ydict[row] for row in lp.rows), delta, False)
    except KeyError as exc:  # pragma: no cover - row bookkeeping bug
        raise CertificateConstructionFailed(f"no closed form for row {exc}") from exc
    except ZeroDivisionError as exc:
        raise CertificateConstructionFailed("closed-form denominator vanished") from exc
    report = verify_certificate(lp, raw.normalize())
    if not report.passed:
        raise CertificateConstructionFailed("closed-form dual failed verification:\n" + report.to_text())
    return raw.normalize() if normalize else raw


def yb_k_two_ways(lp: MajorityLP) -> tuple[Fraction, Fraction]:
    """``y_{B,k}`` via the class-B expression and via the class-A expression.

    Both must agree for any valid baseline (standard variant, extra row on A
    for even k).
    """
    if lp.variant != "standard":
        raise ValueError("the two expressions belong to the standard variant")
    k, r = lp.k, lp.r
    delta = _delta(k, r)
    gA, gB = lp.baseline.scores(A), lp.baseline.scores(B)
    via_b = (2 / delta) * sum((Fraction(k, i) - 1) * gB[i] for i in range(r, k + 1)) / (
        1 - sum((2 - Fraction(k, i)) * gB[i] for i in range(r, k + 1))
    )
    start = k // 2 if k % 2 == 0 else r
    via_a = (2 / delta) * (1 - sum(gA[i] for i in range(start, k + 1))) / (
        1 - sum(gA[i] * (2 - Fraction(k, i)) for i in range(start, k + 1))
    )
    return via_b, via_a


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: Fraction


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self) -> str:
        return "\n".join(f"{c.name}\t{'PASS' if c.passed else 'FAIL'}\t{c.residual}" for c in self.checks)


def verify_certificate(lp: MajorityLP, cert: DualCertificate) -> VerificationReport:
    """Exact checks ``y >= 0``, ``B^T y = 0`` and ``sum(y) = 1``.

    Residuals: the smallest entry of y, the largest ``|(B^T y)_j|``, and
    ``sum(y) - 1``.
    """
    if tuple(cert.rows) != tuple(lp.rows):
        raise ValueError("certificate rows do not match the LP rows")
    y = cert.y
    product = _transpose_product(lp, y)
    low = min(y)
    worst = max(abs(v) for v in product)
    excess = sum(y, Fraction(0)) - 1
    return VerificationReport(
        (
            Check("y>=0", low >= 0, Fraction(low)),
            Check("B^T y=0", worst == 0, Fraction(worst)),
            Check("sum(y)=1", excess == 0, Fraction(excess)),
        )
    )


# --- monotonic homophily ----------------------------------------------------

@dataclass(frozen=True)
class MonotonicReport:
    """Chain check ``h_t/g_t > h_{t-1}/g_{t-1}`` for t = k..r, per class.

    ``failures[X]`` lists the t whose step fails; an empty class degree
    fails the whole chain (listed as every t).
    """

    k: int
    r: int
    chain_holds: dict
    failures: dict
    reduced: dict  # m_r/M_r vs m_{r-1}/M_{r-1} in integers, per class

    @property
    def failing_classes(self) -> tuple[ClassLabel, ...]:
        return tuple(c for c in (A, B) if not self.chain_holds[c])


def _scores_or_none(counts, cls, variant):
    try:
        if variant == "standard":
            return affinity_profile(counts, cls)
        return alternative_affinity_profile(counts, cls)
    except (EmptyClassDegreeError, EmptyClassEdgeSetError):
        return None


def _chain(counts, g, cls, variant, types) -> tuple[int, ...]:
    """Types t in ``types`` where the ratio step t-1 -> t is not a strict increase."""
    h = _scores_or_none(counts, cls, variant)
    if h is None:
        return tuple(types)
    base = g.scores(cls, variant)
    return tuple(t for t in types if not h[t] / base[t] > h[t - 1] / base[t - 1])


def monotonic_contradiction(counts, g: GeneralizedBaseline, variant: str = "standard") -> MonotonicReport:
    """Evaluate both monotonic chains for odd k; they never hold together.

    Raises
    ------
    InvalidKError
        Even k or k < 3.
    ZeroWitnessCountError
        ``M_r`` or ``M_{r-1}`` is zero.
    TheoremViolationError
        Both chains hold (impossible).
    """
    counts = counts if isinstance(counts, EdgeTypeCounts) else EdgeTypeCounts(tuple(counts))
    k = counts.k
    if k % 2 == 0 or k < 3:
        raise InvalidKError(f"the monotonic contradiction needs odd k >= 3, got {k}")
    if g.k != k:
        raise InvalidKError(f"baseline is for k={g.k}, counts for k={k}")
    r = (k + 1) // 2
    M, m = g.witness.m, counts.m
    if M[r] == 0 or M[r - 1] == 0:
        raise ZeroWitnessCountError(f"witness counts M_{r - 1}, M_{r} must be positive")
    types = range(r, k + 1)
    failures = {cls: _chain(counts, g, cls, variant, types) for cls in (A, B)}
    holds = {cls: not failures[cls] for cls in (A, B)}
    # the two middle steps, cross-multiplied: class A needs m_r/M_r > m_{r-1}/M_{r-1},
    # class B needs the reverse
    reduced = {A: m[r] * M[r - 1] > m[r - 1] * M[r], B: m[r - 1] * M[r] > m[r] * M[r - 1]}
    if holds[A] and holds[B]:
        raise TheoremViolationError(f"both monotonic chains hold for m={m}, M={M}")
    return MonotonicReport(k, r, holds, failures, reduced)


@dataclass(frozen=True)
class EvenMonotonicReport:
    k: int
    monotonic: dict
    dip: dict  # h_l/g_l < h_{l-1}/g_{l-1}, per class (None when class degree is empty)

    @property
    def both_monotonic(self) -> bool:
        return self.monotonic[A] and self.monotonic[B]

    @property
    def holds(self) -> bool:
        return not self.both_monotonic or (self.dip[A] and self.dip[B])


def even_monotonic_consequence(counts, g: GeneralizedBaseline, variant: str = "standard") -> EvenMonotonicReport:
    """For even k >= 4: both classes monotonic forces a ratio dip at k/2 for both.

    Raises
    ------
    InvalidKError, ZeroWitnessCountError, TheoremViolationError
    """
    counts = counts if isinstance(counts, EdgeTypeCounts) else EdgeTypeCounts(tuple(counts))
    k = counts.k
    if k % 2 or k < 4:
        raise InvalidKError(f"the even-k consequence needs even k >= 4, got {k}")
    if g.k != k:
        raise InvalidKError(f"baseline is for k={g.k}, counts for k={k}")
    ell = k // 2
    M = g.witness.m
    if any(M[j] == 0 for j in (ell - 1, ell, ell + 1)):
        raise ZeroWitnessCountError(f"witness counts around k/2={ell} must be positive")
    monotonic, dip = {}, {}
    for cls in (A, B):
        monotonic[cls] = not _chain(counts, g, cls, variant, range(ell + 1, k + 1))
        h = _scores_or_none(counts, cls, variant)
        if h is None:
            dip[cls] = None
            continue
        base = g.scores(cls, variant)
        dip[cls] = h[ell] / base[ell] < h[ell - 1] / base[ell - 1]
    report = EvenMonotonicReport(k, monotonic, dip)
    if not report.holds:
        raise TheoremViolationError(f"both classes monotonic without the k/2 dip: m={counts.m}")
    return report


# --- witnesses for the necessity of each constraint -------------------------

@dataclass(frozen=True)
class Witness:
    """Normalized counts satisfying every LP row except ``removed_constraint``."""

    x: tuple[Fraction, ...]
    gamma: Fraction
    removed_constraint: Row
    epsilon: Optional[Fraction] = None


def _boundary_without_bk(lp: MajorityLP) -> tuple[list[Fraction], Fraction]:
    """Perturbed witness when the (B,k) row, i.e. the x_0 bound, is dropped."""
    k, r = lp.k, lp.r
    M = lp.baseline.witness.m
    total = sum(M)
    xt = [Fraction(v, total) for v in M]
    gB = lp.baseline.scores(B)
    c = sum(Fraction(k - i, i) for i in range(1, r)) - sum(Fraction(k - i, i) for i in range(r, k))
    bounds = []
    for t in range(1, r):
        g_kt = gB[k - t]
        coef = Fraction(k - t, t) - g_kt * c
        if coef > 0:
            bounds.append(k * xt[0] * g_kt / coef)
        bounds.append(t * xt[t])  # keeps x_t = xt_t - eps/t nonnegative
    eps = min(bounds) / 2
    x = [Fraction(0)] * (k + 1)
    for t in range(1, k + 1):
        x[t] = xt[t] + eps / t if t >= r else xt[t] - eps / t
    return x, eps


def constraint_removal_witness(lp: MajorityLP, removed) -> Witness:
    """Counts strictly satisfying all rows but ``removed`` (standard variant, odd k).

    Interior constraints (own column 1..k-1) are dropped by zeroing that
    type in the witness counts. The two boundary rows use an
    epsilon-perturbation of the witness that shifts weight toward the
    majority types.

    Raises
    ------
    NoWitnessError
        Unsupported LP, or the construction leaves a retained slack <= 0.
    """
    cls, t = as_class(removed[0]), removed[1]
    removed = (cls, t)
    if lp.variant != "standard" or lp.k % 2 == 0 or lp.even_extra is not None:
        raise NoWitnessError("witnesses are constructed for the standard odd-k LP only")
    if removed not in lp.rows:
        raise NoWitnessError(f"{removed} is not a row of this LP")
    k = lp.k
    j = own_column(removed, k)
    M = lp.baseline.witness.m
    eps = None
    if 1 <= j <= k - 1:
        x = [Fraction(v) for v in M]
        x[j] = Fraction(0)
    elif j == 0:
        x, eps = _boundary_without_bk(lp)
    else:
        mirror = build_majority_lp(k, lp.baseline.mirrored(), "standard")
        x_m, eps = _boundary_without_bk(mirror)
        x = x_m[::-1]
    total = sum(x)
    x = tuple(v / total for v in x)
    if min(x) < 0:
        raise NoWitnessError(f"construction produced negative counts for {removed}")
    gamma = lp.gamma(x, exclude=removed)
    if gamma <= 0:
        raise NoWitnessError(f"retained slack {gamma} is not positive after removing {removed}")
    return Witness(x, gamma, removed, eps)


# --- randomized impossibility oracle ----------------------------------------

GRID = 1000


@dataclass(frozen=True)
class SearchReport:
    k: int
    variant: str
    trials: int
    seed: int
    both_majority: int
    both_majority_mid: dict  # even k: both majority plus h_l > g_l for class X
    both_monotonic: int
    both_monotonic_mid: int  # even k: both monotonic plus a ratio increase at l
    violations: int
    max_gamma: float  # max over trials of min slack of the (full) majority LP
    examples: dict = field(default_factory=dict)
    planted: Optional[tuple[int, ...]] = None
    planted_both_majority: Optional[bool] = None

    @property
    def found_violation(self) -> bool:
        return self.violations > 0

    def to_text(self) -> str:
        lines = [
            f"k\t{self.k}",
            f"variant\t{self.variant}",
            f"trials\t{self.trials}",
            f"seed\t{self.seed}",
            f"both_majority\t{self.both_majority}",
        ]
        for cls in (A, B):
            if cls in self.both_majority_mid:
                lines.append(f"both_majority_mid_{cls}\t{self.both_majority_mid[cls]}")
        lines += [
            f"both_monotonic\t{self.both_monotonic}",
            f"both_monotonic_mid\t{self.both_monotonic_mid}",
            f"violations\t{self.violations}",
            f"max_gamma\t{self.max_gamma!r}",
        ]
        if self.planted is not None:
            lines.append(f"planted\t{' '.join(map(str, self.planted))}\tboth_majority={self.planted_both_majority}")
        return "\n".join(lines)


def _weights(k: int, variant: str) -> list[int]:
    """Per class-type numerator weight: t (standard) or 1 (alternative)."""
    return [t if variant == "standard" else (1 if t >= 1 else 0) for t in range(k + 1)]


class _IntegerPredicates:
    """Homophily predicates on integer counts by cross-multiplication only."""

    def __init__(self, M: Sequence[int], variant: str):
        self.k = len(M) - 1
        self.w = _weights(self.k, variant)
        self.ell = self.k // 2
        self.major = range(self.k // 2 + 1, self.k + 1)
        self.G = {cls: self._num(M, cls) for cls in (A, B)}

    def _num(self, m, cls):
        mx = m if cls is A else m[::-1]
        nums = [self.w[t] * mx[t] for t in range(self.k + 1)]
        return nums, sum(nums[1:])

    def evaluate(self, m) -> dict:
        out = {}
        for cls in (A, B):
            n, d = self._num(m, cls)
            G, gd = self.G[cls]
            if d == 0:
                out[cls] = None
                continue
            above = {t: n[t] * gd > G[t] * d for t in range(1, self.k + 1)}
            incr = {t: n[t] * G[t - 1] > n[t - 1] * G[t] for t in range(2, self.k + 1)}
            out[cls] = (above, incr)
        return out

    def summary(self, m) -> dict:
        ev = self.evaluate(m)
        s = {"maj": {}, "mono": {}, "mid_above": {}, "mid_incr": {}}
        for cls in (A, B):
            if ev[cls] is None:
                s["maj"][cls] = s["mono"][cls] = s["mid_above"][cls] = s["mid_incr"][cls] = False
                continue
            above, incr = ev[cls]
            s["maj"][cls] = all(above[t] for t in self.major)
            s["mono"][cls] = all(incr.get(t, False) for t in self.major)
            s["mid_above"][cls] = above.get(self.ell, False) if self.k % 2 == 0 else False
            s["mid_incr"][cls] = incr.get(self.ell, False) if self.k % 2 == 0 else False
        return s


def _random_counts(rng, M: Sequence[int], trials: int) -> np.ndarray:
    """Half uniform integer grid points, half jittered rescalings of ``M``."""
    k = len(M) - 1
    half = trials // 2
    uniform = rng.integers(0, GRID + 1, size=(trials - half, k + 1))
    scale = np.array([float(v) for v in M]) / float(max(M))
    jitter = rng.uniform(0.5, 1.5, size=(half, k + 1))
    near = np.rint(jitter * scale * (GRID / 1.5)).astype(np.int64)
    return np.vstack([uniform, near])


def brute_force_impossibility_search(
    k: int,
    g: GeneralizedBaseline,
    variant: str = "standard",
    trials: int = 10**5,
    seed: int = 0,
    keep_examples: int = 3,
) -> SearchReport:
    """Look for count vectors violating the impossibility results.

    A violation is: for odd k, both classes majority (or both monotonic);
    for even k, both majority together with ``h_{k/2} > g_{k/2}`` for either
    class, or both monotonic with a ratio increase at k/2. Plain both-majority
    for even k is allowed and counted; the witness with every type-k/2 edge
    deleted is evaluated as a planted positive control.
    """
    _check_variant(variant)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if g.k != k:
        raise InvalidKError(f"baseline is for k={g.k}, search asked for k={k}")
    rng = np.random.Generator(np.random.PCG64(seed))
    M = g.witness.m
    pred = _IntegerPredicates(M, variant)
    even = k % 2 == 0
    lp = build_majority_lp(k, g, variant, A if even else None)
    bmat = lp.to_float()
    samples = _random_counts(rng, M, trials)

    sums = samples.sum(axis=1, keepdims=True).astype(float)
    sums[sums == 0] = 1.0
    max_gamma = float(np.max(np.min((samples / sums) @ bmat.T, axis=1)))

    n_maj = n_mono = n_mono_mid = violations = 0
    n_maj_mid = {A: 0, B: 0}
    examples: dict = {}

    def keep(name, m):
        bucket = examples.setdefault(name, [])
        if len(bucket) < keep_examples:
            bucket.append(m)

    for row in samples.tolist():
        m = tuple(int(v) for v in row)
        s = pred.summary(m)
        both_maj = s["maj"][A] and s["maj"][B]
        both_mono = s["mono"][A] and s["mono"][B]
        bad = False
        if both_maj:
            n_maj += 1
            keep("both_majority", m)
            if even:
                for cls in (A, B):
                    if s["mid_above"][cls]:
                        n_maj_mid[cls] += 1
                        bad = True
            else:
                bad = True
        if both_mono:
            n_mono += 1
            keep("both_monotonic", m)
            if even:
                if s["mid_incr"][A] or s["mid_incr"][B]:
                    n_mono_mid += 1
                    bad = True
            else:
                bad = True
        if bad:
            violations += 1
            keep("violation", m)

    planted = planted_maj = None
    if even:
        planted = tuple(0 if j == k // 2 else v for j, v in enumerate(M))
        s = pred.summary(planted)
        planted_maj = s["maj"][A] and s["maj"][B]

    return SearchReport(
        k=k,
        variant=variant,
        trials=trials,
        seed=seed,
        both_majority=n_maj,
        both_majority_mid=n_maj_mid if even else {},
        both_monotonic=n_mono,
        both_monotonic_mid=n_mono_mid,
        violations=violations,
        max_gamma=max_gamma,
        examples={name: tuple(v) for name, v in examples.items()},
        planted=planted,
        planted_both_majority=planted_maj,
    )
