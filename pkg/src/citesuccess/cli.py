"""Command-line front end.

Subcommands: compare, matrix, fit, estimate, gen-synthetic, plot-data.
Values print as percentages with one decimal by default; --fraction
switches to 4-decimal fractions.  Exit codes: 0 success, 1 I/O or parse
failure, 2 usage or domain error, 3 fit failure.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

from .corpus import (
    DEFAULT_MIN_ARTICLES,
    CorpusConfig,
    LoadResult,
    SyntheticSpec,
    export_corpus,
    generate_synthetic_corpus,
    load_corpus,
)
from .distributions import (
    DEFAULT_IF_ADJUSTMENT,
    CitationDistribution,
    impact_factor,
    log_binned_histogram,
    success_index_exact,
    success_value_matrix,
    summarize,
)
from .errors import DomainError, FitError, ParseError
from .fitting import (
    DEFAULT_K,
    DEFAULT_UNCITED_PARAMS,
    MODE_RATIO_ONLY,
    UncitedCurveParams,
    bin_success_curve,
    estimate_matrix_residuals,
    estimate_success_index,
    fit_k_distribution,
    fit_uncited_curve,
    predict_uncited_fraction,
)

PLOT_KINDS = (
    "reference_scatter",
    "distribution",
    "success_curve",
    "uncited_scatter",
    "k_histogram",
    "residual_histogram",
)


def _fmt(value: float, fraction: bool) -> str:
    return f"{value:.4f}" if fraction else f"{100.0 * value:.1f}"


def _add_corpus_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", required=True, help="corpus file (CSV or JSON)")
    p.add_argument(
        "--min-articles", type=int, default=DEFAULT_MIN_ARTICLES,
        help="exclude journals with fewer articles (default %(default)s)",
    )
    p.add_argument(
        "--adjustment", type=float, default=DEFAULT_IF_ADJUSTMENT,
        help="impact factor adjustment; use 1.0 for official IFs (default %(default)s)",
    )


def _add_constants_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", help="key=value file with alpha, beta, q, k (as written by fit)")
    p.add_argument("--alpha", type=float, help="uncited-curve exponent override")
    p.add_argument("--beta", type=float, help="uncited-curve exponent override")
    p.add_argument("--q", type=float, help="uncited-curve factor override")
    p.add_argument("--k", type=float, help="success-curve exponent override")


def read_params_file(path: str | Path) -> dict[str, float]:
    values: dict[str, float] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"{path} line {lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in ("alpha", "beta", "q", "k"):
            raise ParseError(f"{path} line {lineno}: unknown parameter {key!r}")
        try:
            values[key] = float(val.strip())
        except ValueError:
            raise ParseError(f"{path} line {lineno}: {val.strip()!r} is not a number") from None
    return values


def _resolve_constants(args) -> tuple[UncitedCurveParams, float]:
    base = {
        "alpha": DEFAULT_UNCITED_PARAMS.alpha,
        "beta": DEFAULT_UNCITED_PARAMS.beta,
        "q": DEFAULT_UNCITED_PARAMS.q,
        "k": DEFAULT_K,
    }
    if getattr(args, "params", None):
        base.update(read_params_file(args.params))
    for key in ("alpha", "beta", "q", "k"):
        override = getattr(args, key, None)
        if override is not None:
            base[key] = override
    params = UncitedCurveParams(alpha=base["alpha"], beta=base["beta"], q=base["q"])
    if base["k"] <= 0:
        raise DomainError(f"k must be positive, got {base['k']}")
    return params, base["k"]


def _load(args) -> LoadResult:
    config = CorpusConfig(min_articles=args.min_articles, if_adjustment=args.adjustment)
    return load_corpus(args.corpus, config)


def _find_journal(loaded: LoadResult, journal_id: str) -> CitationDistribution:
    for dist in loaded.distributions:
        if dist.journal_id == journal_id:
            return dist
    raise DomainError(f"journal {journal_id!r} not found in corpus (after filtering)")


def _out(args):
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8", newline="")
    return contextlib.nullcontext(sys.stdout)


def cmd_compare(args) -> int:
    loaded = _load(args)
    target = _find_journal(loaded, args.target_id)
    reference = _find_journal(loaded, args.reference_id)
    params, k = _resolve_constants(args)
    st = summarize(target, args.adjustment)
    sr = summarize(reference, args.adjustment)
    s_fwd = success_index_exact(target, reference).value
    s_bwd = success_index_exact(reference, target).value
    est_fwd = estimate_success_index(st.impact_factor, sr.impact_factor, params, k)
    est_bwd = estimate_success_index(sr.impact_factor, st.impact_factor, params, k)
    f = args.fraction
    print(f"target:    {st.journal_id}  IF={st.impact_factor:.3f}  f0={st.uncited_fraction:.4f}  articles={st.n_articles}")
    print(f"reference: {sr.journal_id}  IF={sr.impact_factor:.3f}  f0={sr.uncited_fraction:.4f}  articles={sr.n_articles}")
    print(f"exact:     {_fmt(s_fwd, f)} / {_fmt(s_bwd, f)}")
    print(
        f"estimated: {_fmt(est_fwd.index.value, f)} / {_fmt(est_bwd.index.value, f)}"
        f"  (mode {est_fwd.mode}/{est_bwd.mode})"
    )
    return 0


def cmd_matrix(args) -> int:
    loaded = _load(args)
    journals = list(loaded.distributions)
    if args.ids:
        wanted = [j.strip() for j in args.ids.split(",") if j.strip()]
        journals = [_find_journal(loaded, j) for j in wanted]
    elif args.min_if is not None:
        journals = [d for d in journals if impact_factor(d, args.adjustment) > args.min_if]
    if len(journals) < 2:
        raise DomainError(f"matrix needs at least 2 journals, selection has {len(journals)}")
    values = success_value_matrix(journals)
    with _out(args) as out:
        ids = [d.journal_id for d in journals]
        out.write("journal_id," + ",".join(ids) + "\n")
        for i, jid in enumerate(ids):
            row = ",".join(_fmt(float(values[i, j]), args.fraction) for j in range(len(ids)))
            out.write(f"{jid},{row}\n")
    return 0


def cmd_fit(args) -> int:
    loaded = _load(args)
    params = fit_uncited_curve(loaded.summaries)
    report = fit_k_distribution(
        loaded.distributions,
        min_reference_if=args.min_if,
        adjustment=args.adjustment,
        bin_width=args.bin_width,
        log_base=args.log_base,
    )
    mean_k = report.mean_k()
    res = estimate_matrix_residuals(
        loaded.distributions, params, mean_k, adjustment=args.adjustment
    )
    print(f"journals: {len(loaded.distributions)} (skipped below threshold: {len(loaded.skipped)})")
    print(f"uncited curve: alpha={params.alpha:.6f} beta={params.beta:.6f} q={params.q:.6f}")
    print(f"exponent fits: {len(report.fits)} references, {len(report.failures)} failures")
    print(f"k: mean={mean_k:.6f} std={report.std_k():.6f}")
    for ref_id, message in report.failures:
        print(f"  fit failure for {ref_id}: {message}")
    print(f"residuals (estimated - exact): mean={res.mean:.6f} std={res.std:.6f} pairs={res.count}")
    if args.output:
        Path(args.output).write_text(
            f"alpha={params.alpha!r}\nbeta={params.beta!r}\nq={params.q!r}\nk={mean_k!r}\n",
            encoding="utf-8",
        )
        print(f"parameters written to {args.output}")
    return 0


def cmd_estimate(args) -> int:
    if args.if_target < 0:
        raise DomainError(f"target impact factor must be non-negative, got {args.if_target}")
    if args.if_reference <= 0:
        raise DomainError(f"reference impact factor must be positive, got {args.if_reference}")
    params, k = _resolve_constants(args)
    fwd = estimate_success_index(args.if_target, args.if_reference, params, k, ratio_only=args.ratio_only)
    f = args.fraction
    print(f"forward:  S({args.if_target:g} over {args.if_reference:g}) = {_fmt(fwd.index.value, f)}"
          f"  ratio={fwd.ratio_x:.4f}  f0(reference)={fwd.f0_reference:.4f}  mode={fwd.mode}")
    if fwd.mode == MODE_RATIO_ONLY and not args.ratio_only:
        print("note: reference uncited fraction < 0.005; ratio-only fast path applies")
    if args.if_target > 0:
        bwd = estimate_success_index(args.if_reference, args.if_target, params, k, ratio_only=args.ratio_only)
        print(f"backward: S({args.if_reference:g} over {args.if_target:g}) = {_fmt(bwd.index.value, f)}"
              f"  ratio={bwd.ratio_x:.4f}  f0(reference)={bwd.f0_reference:.4f}  mode={bwd.mode}")
    return 0


def cmd_gen_synthetic(args) -> int:
    arts: int | tuple[int, int]
    if len(args.articles) == 1:
        arts = args.articles[0]
    elif len(args.articles) == 2:
        arts = (args.articles[0], args.articles[1])
    else:
        raise DomainError("--articles takes one value or a min and max")
    spec = SyntheticSpec(
        n_journals=args.n_journals,
        if_range=(args.if_range[0], args.if_range[1]),
        articles_per_journal=arts,
        family=args.family,
        seed=args.seed,
    )
    corpus = generate_synthetic_corpus(spec)
    export_corpus(corpus, args.output)
    print(f"wrote {len(corpus)} journals to {args.output}")
    return 0


def _plot_distribution(args, loaded: LoadResult, out) -> None:
    dist = _find_journal(loaded, args.journal)
    binned = log_binned_histogram(dist, args.bins_per_decade)
    out.write("citations,density\n")
    if binned.zero_fraction > 0:
        out.write(f"0,{binned.zero_fraction!r}\n")
    for center, density in binned.bins:
        out.write(f"{center!r},{density!r}\n")


def _plot_reference_scatter(args, loaded: LoadResult, out) -> None:
    reference = _find_journal(loaded, args.reference)
    out.write("journal_id,impact_factor,success_index\n")
    for dist in loaded.distributions:
        if dist.journal_id == reference.journal_id:
            continue
        s = success_index_exact(dist, reference).value
        out.write(f"{dist.journal_id},{impact_factor(dist, args.adjustment)!r},{s!r}\n")


def _plot_success_curve(args, loaded: LoadResult, out) -> None:
    dists = loaded.distributions
    ifs = [impact_factor(d, args.adjustment) for d in dists]
    values = success_value_matrix(dists)
    if args.reference:
        refs = [i for i, d in enumerate(dists) if d.journal_id == args.reference]
        if not refs:
            raise DomainError(f"journal {args.reference!r} not found in corpus (after filtering)")
    else:
        refs = range(len(dists))
    pairs = [
        (ifs[t] / ifs[r], float(values[t, r]))
        for r in refs
        for t in range(len(dists))
        if t != r and ifs[t] > 0 and ifs[r] > 0
    ]
    curve = bin_success_curve(pairs, args.bin_width, log_base=args.log_base, min_count=1)
    out.write("log_ratio_center,mean_index,pair_count\n")
    for b in curve.bins:
        out.write(f"{b.log_ratio_center!r},{b.mean_index!r},{b.pair_count}\n")


def _plot_uncited_scatter(args, loaded: LoadResult, out) -> None:
    params, _ = _resolve_constants(args)
    out.write("journal_id,impact_factor,uncited_fraction,predicted\n")
    for s in loaded.summaries:
        pred = predict_uncited_fraction(s.impact_factor, params)
        out.write(f"{s.journal_id},{s.impact_factor!r},{s.uncited_fraction!r},{pred!r}\n")


def _plot_k_histogram(args, loaded: LoadResult, out) -> None:
    report = fit_k_distribution(
        loaded.distributions,
        min_reference_if=args.min_if,
        adjustment=args.adjustment,
        bin_width=args.bin_width,
        log_base=args.log_base,
    )
    if not report.fits:
        raise FitError("no reference journal produced a successful exponent fit")
    width = args.hist_bin_width
    counts: dict[int, int] = {}
    for fit in report.fits:
        idx = int(round(fit.k / width))
        counts[idx] = counts.get(idx, 0) + 1
    out.write("k_bin_center,count\n")
    for idx in sorted(counts):
        out.write(f"{idx * width!r},{counts[idx]}\n")


def _plot_residual_histogram(args, loaded: LoadResult, out) -> None:
    params, k = _resolve_constants(args)
    res = estimate_matrix_residuals(
        loaded.distributions, params, k,
        adjustment=args.adjustment, hist_bin_width=args.hist_bin_width,
    )
    out.write("residual_bin_center,count\n")
    for center, count in res.histogram:
        out.write(f"{center!r},{count}\n")


def cmd_plot_data(args) -> int:
    loaded = _load(args)
    with _out(args) as out:
        if args.kind == "distribution":
            if not args.journal:
                raise DomainError("--journal is required for kind=distribution")
            _plot_distribution(args, loaded, out)
        elif args.kind == "reference_scatter":
            if not args.reference:
                raise DomainError("--reference is required for kind=reference_scatter")
            _plot_reference_scatter(args, loaded, out)
        elif args.kind == "success_curve":
            _plot_success_curve(args, loaded, out)
        elif args.kind == "uncited_scatter":
            _plot_uncited_scatter(args, loaded, out)
        elif args.kind == "k_histogram":
            _plot_k_histogram(args, loaded, out)
        else:
            _plot_residual_histogram(args, loaded, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citesuccess",
        description="Pairwise journal comparison via the citation success index.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="exact success index for two journals in a corpus")
    _add_corpus_flags(p)
    _add_constants_flags(p)
    p.add_argument("target_id")
    p.add_argument("reference_id")
    p.add_argument("--fraction", action="store_true", help="print 4-decimal fractions instead of percent")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("matrix", help="success index matrix as CSV")
    _add_corpus_flags(p)
    p.add_argument("--ids", help="comma-separated journal ids to include (default: all)")
    p.add_argument("--min-if", type=float, help="include only journals with IF above this")
    p.add_argument("--fraction", action="store_true")
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("fit", help="fit uncited curve and success-curve exponent on a corpus")
    _add_corpus_flags(p)
    p.add_argument("--min-if", type=float, default=3.0,
                   help="reference journals for the exponent fit need IF above this (default %(default)s)")
    p.add_argument("--bin-width", type=float, default=0.05,
                   help="log-ratio bin width (default %(default)s)")
    p.add_argument("--log-base", type=float, default=10.0,
                   help="log base for ratio binning (default %(default)s)")
    p.add_argument("-o", "--output", help="write fitted constants as a key=value file")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("estimate", help="estimate the success index from two impact factors")
    p.add_argument("if_target", type=float)
    p.add_argument("if_reference", type=float)
    _add_constants_flags(p)
    p.add_argument("--ratio-only", action="store_true",
                   help="force the pure IF-ratio form (no plateau)")
    p.add_argument("--fraction", action="store_true")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("gen-synthetic", help="generate a reproducible synthetic corpus")
    p.add_argument("-o", "--output", required=True, help="corpus file to write (CSV or JSON)")
    p.add_argument("-n", "--n-journals", type=int, required=True)
    p.add_argument("--if-range", type=float, nargs=2, default=[0.3, 30.0], metavar=("MIN", "MAX"))
    p.add_argument("--articles", type=int, nargs="+", default=[1000],
                   help="articles per journal: one value, or min and max")
    p.add_argument("--family", choices=("hurdle_geometric", "discrete_lognormal"),
                   default="hurdle_geometric")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_synthetic)

    p = sub.add_parser(
        "plot-data",
        help="emit CSV series for plotting",
        description=(
            "Emit plain CSV for external plotting tools. Columns per kind: "
            "reference_scatter: journal_id,impact_factor,success_index (exact index of "
            "every journal over --reference). "
            "distribution: citations,density (log-binned; the row with citations=0 "
            "carries the zero-citation probability mass, not a density; needs --journal). "
            "success_curve: log_ratio_center,mean_index,pair_count (binned exact indices "
            "vs log IF ratio, pooled over all references or restricted to --reference). "
            "uncited_scatter: journal_id,impact_factor,uncited_fraction,predicted. "
            "k_histogram: k_bin_center,count (per-reference fitted exponents). "
            "residual_histogram: residual_bin_center,count (estimated minus exact)."
        ),
    )
    _add_corpus_flags(p)
    _add_constants_flags(p)
    p.add_argument("--kind", required=True, choices=PLOT_KINDS)
    p.add_argument("--journal", help="journal id (kind=distribution)")
    p.add_argument("--reference", help="reference journal id")
    p.add_argument("--bins-per-decade", type=int, default=10)
    p.add_argument("--bin-width", type=float, default=0.05)
    p.add_argument("--log-base", type=float, default=10.0)
    p.add_argument("--min-if", type=float, default=3.0)
    p.add_argument("--hist-bin-width", type=float, default=0.01)
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_plot_data)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
