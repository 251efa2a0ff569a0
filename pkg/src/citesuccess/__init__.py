"""citesuccess: pairwise journal comparison via the citation success index.

Exact index computation from citation distributions, universal-curve
fitting, an impact-factor-only estimator, corpus tooling, a CLI, and an
HTTP service.
"""

from .corpus import (
    CorpusConfig,
    LoadResult,
    SkippedJournal,
    SyntheticSpec,
    export_corpus,
    generate_synthetic_corpus,
    load_corpus,
)
from .distributions import (
    DEFAULT_IF_ADJUSTMENT,
    CitationDistribution,
    JournalSummary,
    LogBinnedHistogram,
    SuccessIndex,
    ccdf,
    impact_factor,
    log_binned_histogram,
    pmf,
    success_index_brute,
    success_index_exact,
    success_matrix,
    success_value_matrix,
    summarize,
    total_citations,
    uncited_fraction,
)
from .errors import (
    CiteSuccessError,
    DomainError,
    FitError,
    GenerationError,
    ParseError,
)
from .fitting import (
    DEFAULT_K,
    DEFAULT_UNCITED_PARAMS,
    MODE_PLATEAU,
    MODE_RATIO_ONLY,
    BinnedCurve,
    CurveBin,
    KFitReport,
    PairEstimate,
    ResidualStats,
    SuccessCurveFit,
    UncitedCurveParams,
    bin_success_curve,
    estimate_matrix_residuals,
    estimate_success_index,
    fit_k,
    fit_k_distribution,
    fit_uncited_curve,
    predict_uncited_fraction,
)

__version__ = "0.1.0"

__all__ = [
    "CitationDistribution",
    "JournalSummary",
    "SuccessIndex",
    "LogBinnedHistogram",
    "UncitedCurveParams",
    "BinnedCurve",
    "CurveBin",
    "SuccessCurveFit",
    "PairEstimate",
    "KFitReport",
    "ResidualStats",
    "CorpusConfig",
    "SyntheticSpec",
    "LoadResult",
    "SkippedJournal",
    "CiteSuccessError",
    "DomainError",
    "ParseError",
    "FitError",
    "GenerationError",
    "impact_factor",
    "uncited_fraction",
    "total_citations",
    "summarize",
    "pmf",
    "ccdf",
    "success_index_exact",
    "success_index_brute",
    "success_matrix",
    "success_value_matrix",
    "log_binned_histogram",
    "predict_uncited_fraction",
    "fit_uncited_curve",
    "bin_success_curve",
    "fit_k",
    "estimate_success_index",
    "fit_k_distribution",
    "estimate_matrix_residuals",
    "load_corpus",
    "export_corpus",
    "generate_synthetic_corpus",
    "DEFAULT_IF_ADJUSTMENT",
    "DEFAULT_K",
    "DEFAULT_UNCITED_PARAMS",
    "MODE_PLATEAU",
    "MODE_RATIO_ONLY",
    "__version__",
]
