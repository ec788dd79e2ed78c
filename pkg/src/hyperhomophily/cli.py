"""Command-line interface.

Exit status: 0 on success, 1 on a data error (the error class name is printed
on standard error), 2 on a usage error. ``search`` exits 3 when it finds a
violation of an impossibility result.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import certificates as cert
from . import ingest, nullmodels
from .errors import EmptyClassDegreeError, HomophilyError, ZeroBaselineError
from .hypergraph import ClassLabel, EdgeTypeCounts, edge_type_counts
from .scores import (
    affinity_profile,
    asymptotic_baseline_profile,
    baseline_profile,
    class_proportion,
    group_homophily_index,
    homophily_verdict,
    majority_types,
)

EXIT_OK, EXIT_DATA, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3
SUBCOMMANDS = ("scores", "ghi", "verdict", "bootstrap", "hsbm", "converge", "verify", "witness", "search")
CLASSES = (ClassLabel.A, ClassLabel.B)


class UsageError(Exception):
    pass


# --- formatting -------------------------------------------------------------

@dataclass(frozen=True)
class Formatter:
    exact: bool = False
    precision: int = 6

    def __call__(self, v) -> str:
        if v is None:
            return "undefined"
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, int):
            return str(v)
        if self.exact and isinstance(v, Fraction):
            return str(v)
        return format(float(v), f".{self.precision}g")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- data sources -----------------------------------------------------------

@dataclass
class Slice:
    """Edge-type counts of one edge size, with class sizes when known."""

    k: int
    counts: EdgeTypeCounts
    n_a: Optional[int] = None
    n_b: Optional[int] = None
    hypergraph: object = None
    records: object = None


def _k_values(args, present: Sequence[int]) -> list[int]:
    if args.k is not None:
        return [args.k]
    lo = args.k_min if args.k_min is not None else (min(present) if present else 0)
    hi = args.k_max if args.k_max is not None else (max(present) if present else -1)
    if args.k_min is not None or args.k_max is not None:
        return list(range(lo, hi + 1))
    return sorted(present)


def _load_slices(args) -> list[Slice]:
    if args.compositions:
        if args.edges or args.labels:
            raise UsageError("give either --compositions or --edges/--labels, not both")
        records = ingest.load_compositions(args.compositions)
        ks = _k_values(args, ingest.composition_sizes(records))
        return [Slice(k, ingest.compositions_to_counts(records, k), records=records) for k in ks]
    if not (args.edges and args.labels and args.focal is not None):
        raise UsageError("need --edges, --labels and --focal (or --compositions)")
    sizes = sorted({len(e) for _, e in ingest.load_edge_list(args.edges, args.dedup_within_edge)})
    ks = _k_values(args, sizes)
    graphs = ingest.load_hypergraphs(
        args.edges,
        args.labels,
        args.focal,
        ks,
        dedup=args.dedup,
        dedup_within_edge=args.dedup_within_edge,
        on_unlabeled=args.on_unlabeled,
    )
    out = []
    for k in ks:
        h = graphs[k]
        out.append(Slice(k, edge_type_counts(h), h.class_size(ClassLabel.A), h.class_size(ClassLabel.B), h))
    return out


def _alpha(args, s: Slice) -> Fraction:
    if args.alpha is not None:
        return Fraction(args.alpha)
    if s.n_a is not None:
        return class_proportion(s.n_a, s.n_b, ClassLabel.A)
    return ingest.member_share(s.records, s.k)


def _baseline(args, s: Slice, cls):
    if args.baseline == "exact":
        if s.n_a is None:
            raise UsageError("--baseline exact needs node labels (--edges/--labels)")
        return baseline_profile(s.n_a, s.n_b, s.k, cls)
    return asymptotic_baseline_profile(_alpha(args, s), s.k, cls)


def _affinity(s: Slice, cls):
    try:
        return affinity_profile(s.counts, cls)
    except EmptyClassDegreeError:
        return None


# --- subcommands ------------------------------------------------------------

def cmd_scores(args, fmt) -> int:
    rows = []
    for s in _load_slices(args):
        for t in range(1, s.k + 1):
            for cls in CLASSES:
                aff, base = _affinity(s, cls), _baseline(args, s, cls)
                h = None if aff is None else aff[t]
                b = base[t]
                ratio = None if h is None or b == 0 else h / b
                rows.append([s.k, t, str(cls), fmt(h), fmt(b), fmt(ratio)])
    _emit(args, _csv(["k", "t", "class", "affinity", "baseline", "ratio"], rows))
    return EXIT_OK


def _verdicts(args):
    """(slice, class, verdict fields) with monotonic predicates None when a ratio is undefined."""
    for s in _load_slices(args):
        for cls in CLASSES:
            aff = _affinity(s, cls)
            if aff is None:
                yield s, cls, None
                continue
            base = _baseline(args, s, cls)
            try:
                v = homophily_verdict(aff, base)
                yield s, cls, (v.simple, v.majority, v.monotonic, v.ghi, v.mid_above, v.mid_ratio_increase)
            except ZeroBaselineError:
                major = majority_types(s.k)
                mid = aff[s.k // 2] > base[s.k // 2] if s.k % 2 == 0 else None
                yield s, cls, (
                    aff[s.k] > base[s.k],
                    all(aff[t] > base[t] for t in major),
                    None,
                    group_homophily_index(aff, base),
                    mid,
                    None,
                )


def cmd_ghi(args, fmt) -> int:
    rows = [[s.k, str(cls), fmt(None if v is None else v[3])] for s, cls, v in _verdicts(args)]
    _emit(args, _csv(["k", "class", "ghi"], rows))
    return EXIT_OK


def cmd_verdict(args, fmt) -> int:
    rows = [[s.k, str(cls)] + (["undefined"] * 6 if v is None else [fmt(x) for x in v]) for s, cls, v in _verdicts(args)]
    header = ["k", "class", "simple", "majority", "monotonic", "ghi", "mid_above", "mid_ratio_increase"]
    _emit(args, _csv(header, rows))
    return EXIT_OK


def cmd_bootstrap(args, fmt) -> int:
    rows = []
    for s in _load_slices(args):
        if s.hypergraph is not None:
            reports = ingest.bootstrap(s.hypergraph, s.k, args.reps, args.seed)
        else:
            reports = ingest.bootstrap_compositions(s.records, s.k, args.reps, args.seed)
        for t in range(1, s.k + 1):
            for cls in CLASSES:
                base = _baseline(args, s, cls)[t]
                rep = reports.get(cls)
                h = None if rep is None else rep.point[t]
                ratio = None if h is None or base == 0 else h / base
                mean = None if rep is None else rep.mean[t - 1]
                se = None if rep is None else rep.stderr[t - 1]
                rows.append([s.k, t, str(cls), fmt(h), fmt(base), fmt(ratio), fmt(mean), fmt(se)])
    header = ["k", "t", "class", "affinity", "baseline", "ratio", "boot_mean", "boot_stderr"]
    _emit(args, _csv(header, rows))
    return EXIT_OK


def _probabilities(text: str):
    parts = [float(x) for x in text.split(",")]
    return parts[0] if len(parts) == 1 else tuple(parts)


def cmd_hsbm(args, fmt) -> int:
    if args.k is None or args.n is None:
        raise UsageError("hsbm needs --n and --k")
    if not (args.edges_out and args.labels_out):
        raise UsageError("hsbm needs --edges-out and --labels-out")
    n_a = args.n_a if args.n_a is not None else round(Fraction(args.alpha or "1/2") * args.n)
    params = nullmodels.HSBMParams(args.n, args.k, n_a, _probabilities(args.p), args.seed)
    h = nullmodels.sample_hsbm(params, method=args.method)
    ingest.write_edges(h, args.edges_out)
    ingest.write_labels(h, args.labels_out)
    _emit(args, f"edges\t{h.num_edges}\nn\t{h.n}\nn_a\t{n_a}\nseed\t{args.seed}\n")
    return EXIT_OK


def cmd_converge(args, fmt) -> int:
    k = args.k if args.k is not None else 3
    n_values = [int(x) for x in args.n_values.split(",")]
    seeds = nullmodels.seed_schedule(args.seed, args.seeds)
    reports = nullmodels.convergence_experiment(
        n_values, k, Fraction(args.alpha or "1/2"), float(args.p), seeds, method=args.method
    )
    _emit(args, nullmodels.reports_to_csv(reports))
    return EXIT_OK


def _witness_baseline(args, k: int) -> cert.GeneralizedBaseline:
    if args.witness == "binomial":
        return cert.GeneralizedBaseline.binomial(k)
    if args.witness == "asymptotic":
        if args.alpha is None:
            raise UsageError("--witness asymptotic needs --alpha")
        return cert.GeneralizedBaseline.asymptotic(Fraction(args.alpha), k)
    if args.witness == "exact":
        if args.n_a is None or args.n_b is None:
            raise UsageError("--witness exact needs --n-a and --n-b")
        return cert.GeneralizedBaseline.standard_exact(args.n_a, args.n_b, k)
    if not args.counts:
        raise UsageError("--witness counts needs --counts m0,m1,...,mk")
    counts = [int(x) for x in args.counts.split(",")]
    if len(counts) != k + 1:
        raise UsageError(f"--counts needs k+1={k + 1} entries")
    return cert.GeneralizedBaseline.from_witness(counts)


def _need_k(args) -> int:
    if args.k is None:
        raise UsageError(f"{args.command} needs --k")
    return args.k


def _row_label(row) -> str:
    return f"{row[0]},{row[1]}"


def cmd_verify(args, fmt) -> int:
    k = _need_k(args)
    lp = cert.build_majority_lp(k, _witness_baseline(args, k), args.variant, args.extra)
    raw = cert.dual_certificate_majority(lp, normalize=False)
    norm = raw.normalize()
    report = cert.verify_certificate(lp, norm)
    lines = [f"k\t{k}", f"variant\t{args.variant}", f"delta\t{fmt(raw.delta)}"]
    for row, y_raw, y in zip(lp.rows, raw.y, norm.y):
        lines.append(f"y[{_row_label(row)}]\t{fmt(y_raw)}\t{fmt(y)}")
    lines.append(report.to_text())
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_DATA


def cmd_witness(args, fmt) -> int:
    k = _need_k(args)
    lp = cert.build_majority_lp(k, _witness_baseline(args, k), "standard")
    if args.remove:
        cls, _, t = args.remove.partition(",")
        try:
            targets = [(ClassLabel(cls.strip().upper()), int(t))]
        except ValueError as exc:
            raise UsageError(f"--remove expects CLASS,T (e.g. A,2), got {args.remove!r}") from exc
    else:
        targets = list(lp.rows)
    rows = []
    for target in targets:
        w = cert.constraint_removal_witness(lp, target)
        rows.append([str(target[0]), target[1], fmt(w.gamma), fmt(w.epsilon)] + [fmt(v) for v in w.x])
    header = ["class", "t", "gamma", "epsilon"] + [f"x{j}" for j in range(k + 1)]
    _emit(args, _csv(header, rows))
    return EXIT_OK


def cmd_search(args, fmt) -> int:
    k = _need_k(args)
    report = cert.brute_force_impossibility_search(
        k, _witness_baseline(args, k), args.variant, args.trials, args.seed
    )
    _emit(args, report.to_text() + "\n")
    return EXIT_VIOLATION if report.found_violation else EXIT_OK


COMMANDS = {
    "scores": cmd_scores,
    "ghi": cmd_ghi,
    "verdict": cmd_verdict,
    "bootstrap": cmd_bootstrap,
    "hsbm": cmd_hsbm,
    "converge": cmd_converge,
    "verify": cmd_verify,
    "witness": cmd_witness,
    "search": cmd_search,
}


# --- argument parsing -------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write output here instead of standard output")
    p.add_argument("--exact", action="store_true", help="print rationals as p/q")
    p.add_argument("--precision", type=int, default=6, help="significant digits of decimal output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int)


def _inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--edges", help="edges file: one hyperedge per line")
    p.add_argument("--labels", help="labels file: node,label per line")
    p.add_argument("--focal", help="label treated as class A; every other label is class B")
    p.add_argument("--compositions", help="k,t,count file (instead of edges/labels)")
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--baseline", choices=("exact", "asymptotic"), default="asymptotic")
    p.add_argument("--alpha", help="class-A proportion for the asymptotic baseline (e.g. 1/2 or 0.3)")
    p.add_argument("--dedup", action="store_true", help="collapse repeated member sets")
    p.add_argument("--dedup-within-edge", action="store_true", help="drop repeated nodes inside a line")
    p.add_argument("--on-unlabeled", choices=("error", "drop"), default="error")


def _certificate_inputs(p: argparse.ArgumentParser, variants: bool = True) -> None:
    p.add_argument(
        "--witness",
        choices=("binomial", "asymptotic", "exact", "counts"),
        default="binomial",
        help="witness counts behind the baseline: C(k,t); alpha-binomial; complete hypergraph; or --counts",
    )
    p.add_argument("--counts", help="witness counts m0,...,mk for --witness counts")
    p.add_argument("--n-a", type=int)
    p.add_argument("--n-b", type=int)
    p.add_argument("--alpha")
    if variants:
        p.add_argument("--variant", choices=cert.VARIANTS, default="standard")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperhomophily", description="Group homophily in two-class hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "scores": "affinity, baseline and ratio per k, t and class",
        "ghi": "group homophily index per k and class",
        "verdict": "simple / majority / monotonic homophily per k and class",
        "bootstrap": "affinity bootstrap mean and standard error",
        "hsbm": "sample a hypergraph from the cardinality-based HSBM",
        "converge": "ratio deviation of HSBM samples from the exact baseline",
        "verify": "build and check the exact dual certificate (exit 0 iff all checks pass)",
        "witness": "witness that each single majority constraint is necessary (odd k)",
        "search": "randomized search for impossibility violations (exit 3 if found)",
    }
    subs = {name: sub.add_parser(name, help=helps[name], description=helps[name]) for name in SUBCOMMANDS}
    for p in subs.values():
        _common(p)
    for name in ("scores", "ghi", "verdict", "bootstrap"):
        _inputs(subs[name])
    subs["bootstrap"].add_argument("--reps", type=int, default=100)

    hs = subs["hsbm"]
    hs.add_argument("--n", type=int)
    hs.add_argument("--n-a", type=int, help="class-A size (default round(alpha*n))")
    hs.add_argument("--alpha")
    hs.add_argument("--p", default="0.01", help="edge probability, or k+1 comma-separated per-type values")
    hs.add_argument("--method", choices=("auto", "enumerate", "two_stage"), default="auto")
    hs.add_argument("--edges-out")
    hs.add_argument("--labels-out")

    cv = subs["converge"]
    cv.add_argument("--n-values", default="50,100,200,400")
    cv.add_argument("--alpha")
    cv.add_argument("--p", default="0.01")
    cv.add_argument("--seeds", type=int, default=20, help="number of seeds (seed, seed+1, ...)")
    cv.add_argument("--method", choices=("auto", "enumerate", "two_stage"), default="auto")

    _certificate_inputs(subs["verify"])
    subs["verify"].add_argument("--extra", choices=("A", "B"), help="even k: class of the extra k/2 row")
    _certificate_inputs(subs["witness"], variants=False)
    subs["witness"].add_argument("--remove", help="single constraint CLASS,T to drop (default: each in turn)")
    _certificate_inputs(subs["search"])
    subs["search"].add_argument("--trials", type=int, default=10**5)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = Formatter(args.exact, args.precision)
    try:
        return COMMANDS[args.command](args, fmt)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HomophilyError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, ZeroDivisionError) as exc:  # malformed flag values, e.g. --alpha x
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
