"""Universal success-curve machinery.

Three related pieces:

* **Uncited-fraction curve** -- the fraction of a journal's articles
  with zero citations is a tight generalized-logistic function of its
  impact factor:  f0(IF) = 1 / (1 + q * IF**alpha)**beta.
* **Success-curve exponent** -- against a fixed reference journal, the
  exact success index follows a sigmoid in the log IF ratio
  x = IF_target / IF_reference with a plateau at f0_ref / 2:
  S(x) = f0/2 + (1 - f0/2) / (1 + Q * x**(-k)),  Q = 1/(1 - f0),
  which pins S(1) = 0.5; the single fitted parameter is the exponent k.
* **IF-only estimator** -- combining the two curves predicts the success
  index of any journal pair from the two impact factors alone.

Shipped default constants come from a large-corpus calibration:
alpha=0.94, beta=2.37, q=0.33, k=1.23.  Every entry point accepts
overrides so a refitted corpus can replace them.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .distributions import CitationDistribution, SuccessIndex, impact_factor, success_value_matrix, uncited_fraction
from .errors import DomainError, FitError
from .optimize import golden_section, grid_golden_min

DEFAULT_ALPHA = 0.94
DEFAULT_BETA = 2.37
DEFAULT_Q = 0.33
DEFAULT_K = 1.23

# Below this reference uncited fraction the plateau is negligible and the
# estimator switches to the pure IF-ratio form (documented fast path).
RATIO_ONLY_F0_THRESHOLD = 0.005

MODE_PLATEAU = "plateau"
MODE_RATIO_ONLY = "ratio_only"


@dataclass(frozen=True)
class UncitedCurveParams:
    """Parameters of the uncited-fraction curve f0(IF) = (1 + q*IF**alpha)**-beta."""

    alpha: float
    beta: float
    q: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "q"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"uncited-curve parameter {name} must be positive, got {v}")


DEFAULT_UNCITED_PARAMS = UncitedCurveParams(alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA, q=DEFAULT_Q)


@dataclass(frozen=True)
class CurveBin:
    log_ratio_center: float
    mean_index: float
    pair_count: int


@dataclass(frozen=True)
class BinnedCurve:
    """Success indices averaged in equal bins of log IF ratio."""

    bin_width: float
    log_base: float
    bins: tuple[CurveBin, ...]


@dataclass(frozen=True)
class SuccessCurveFit:
    """Fitted success-curve exponent for one reference journal."""

    reference_id: str
    k: float
    f0_ref: float
    n_bins_used: int
    sum_sq_residual: float

    def __post_init__(self) -> None:
        if self.k <= 0:
            raise DomainError(f"fitted exponent k must be positive, got {self.k}")
        if not 0.0 <= self.f0_ref < 1.0:
            raise DomainError(f"f0_ref must be in [0, 1), got {self.f0_ref}")


@dataclass(frozen=True)
class PairEstimate:
    """IF-only estimate of the success index for one ordered journal pair."""

    if_target: float
    if_reference: float
    ratio_x: float
    f0_reference: float
    index: SuccessIndex
    mode: str  # MODE_PLATEAU | MODE_RATIO_ONLY


def predict_uncited_fraction(
    if_value: float, params: UncitedCurveParams = DEFAULT_UNCITED_PARAMS
) -> float:
    """Predicted fraction of uncited articles for a journal with the
    given impact factor; 1 at IF=0, strictly decreasing for IF > 0."""
    if if_value < 0 or not math.isfinite(if_value):
        raise DomainError(f"impact factor must be a finite non-negative real, got {if_value}")
    return (1.0 + params.q * if_value**params.alpha) ** -params.beta


def _uncited_ssq(ifs: np.ndarray, f0s: np.ndarray, alpha: float, beta: float, q: float) -> float:
    model = (1.0 + q * ifs**alpha) ** -beta
    d = f0s - model
    return float(d @ d)


def _linearized_start(ifs: np.ndarray, f0s: np.ndarray) -> tuple[float, float, float] | None:
    """Warm start via the exact linearization f0**(-1/beta) - 1 = q * IF**alpha.

    For a trial beta, log(f0**(-1/beta) - 1) is linear in log IF, so alpha
    and q come from ordinary least squares; beta itself is bracketed by a
    scan plus golden section on the true squared error.  Returns None when
    too few points survive the transform.
    """
    ok = (ifs > 0) & (f0s > 1e-12) & (f0s < 1.0 - 1e-12)
    x = np.log(ifs[ok])
    f = f0s[ok]
    if len(x) < 3 or np.ptp(x) == 0:
        return None

    def ols_for_beta(beta: float) -> tuple[float, float]:
        y = f ** (-1.0 / beta) - 1.0
        good = y > 0
        if good.sum() < 3:
            return math.nan, math.nan
        ly = np.log(y[good])
        lx = x[good]
        alpha, lnq = np.polyfit(lx, ly, 1)
        return float(alpha), float(math.exp(lnq))

    def objective(beta: float) -> float:
        alpha, q = ols_for_beta(beta)
        if not (math.isfinite(alpha) and alpha > 0 and q > 0):
            return math.inf
        return _uncited_ssq(ifs, f0s, alpha, beta, q)

    grid = np.logspace(math.log10(0.2), math.log10(20.0), 41)
    beta, _, at_edge = grid_golden_min(objective, list(grid), tol=1e-10, is_log=True)
    if at_edge and not math.isfinite(objective(beta)):
        return None
    alpha, q = ols_for_beta(beta)
    if not (math.isfinite(alpha) and alpha > 0 and q > 0):
        return None
    return alpha, beta, q


def _coordinate_descent(
    ifs: np.ndarray,
    f0s: np.ndarray,
    start: tuple[float, float, float],
    tol: float,
    max_cycles: int = 80,
) -> tuple[tuple[float, float, float], float]:
    params = list(start)

    def line(idx: int) -> None:
        def f(v: float) -> float:
            trial = list(params)
            trial[idx] = v
            return _uncited_ssq(ifs, f0s, *trial)

        v, _ = golden_section(f, params[idx] / 8.0, params[idx] * 8.0, tol=tol, is_log=True)
        params[idx] = v

    for _ in range(max_cycles):
        before = list(params)
        for idx in range(3):
            line(idx)
        if max(abs(a - b) / max(abs(b), 1e-30) for a, b in zip(params, before)) < tol:
            break
    return (params[0], params[1], params[2]), _uncited_ssq(ifs, f0s, *params)


def fit_uncited_curve(
    journals: Sequence, *, tol: float = 1e-9
) -> UncitedCurveParams:
    """Least-squares fit of the uncited-fraction curve to per-journal
    (impact factor, uncited fraction) points, one point per journal.

    Needs at least 10 journals whose impact factors span a decade.
    Deterministic: multi-start coordinate descent (log-spaced grid of
    starting points plus a linearized warm start), best final squared
    error wins.
    """
    ifs = np.array([j.impact_factor for j in journals], dtype=np.float64)
    f0s = np.array([j.uncited_fraction for j in journals], dtype=np.float64)
    if len(ifs) < 10:
        raise FitError(f"uncited-curve fit needs >= 10 journals, got {len(ifs)}")
    positive = ifs[ifs > 0]
    if len(positive) < 2 or positive.max() / positive.min() < 10.0:
        raise FitError("uncited-curve fit needs impact factors spanning at least one decade")

    starts: list[tuple[float, float, float]] = []
    warm = _linearized_start(ifs, f0s)
    if warm is not None:
        starts.append(warm)
    for alpha in (0.3, 1.0, 3.0):
        for beta in (0.7, 2.0, 6.0):
            for q in (0.03, 0.3, 3.0):
                starts.append((alpha, beta, q))

    best: tuple[float, tuple[float, float, float]] | None = None
    for start in starts:
        fitted, ssq = _coordinate_descent(ifs, f0s, start, tol)
        if best is None or (ssq, fitted) < best:
            best = (ssq, fitted)
    alpha, beta, q = best[1]
    return UncitedCurveParams(alpha=alpha, beta=beta, q=q)


def bin_success_curve(
    pairs: Sequence[tuple[float, float]],
    bin_width: float = 0.05,
    *,
    log_base: float = 10.0,
    min_count: int = 3,
) -> BinnedCurve:
    """Average (IF ratio, success index) pairs in equal bins of log ratio.

    Bin i is centered on i * bin_width in log space; bins holding fewer
    than `min_count` pairs are dropped.  Downstream fits weight bins
    equally so sparsely and densely populated ratio ranges count the
    same.
    """
    if not pairs:
        raise DomainError("no pairs to bin")
    if bin_width <= 0:
        raise DomainError(f"bin_width must be positive, got {bin_width}")
    if log_base <= 1:
        raise DomainError(f"log_base must exceed 1, got {log_base}")
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    lb = math.log(log_base)
    for x, s in pairs:
        if x <= 0:
            raise DomainError(f"IF ratio must be positive, got {x}")
        idx = math.floor(math.log(x) / lb / bin_width + 0.5)
        sums[idx] = sums.get(idx, 0.0) + s
        counts[idx] = counts.get(idx, 0) + 1
    bins = tuple(
        CurveBin(
            log_ratio_center=idx * bin_width,
            mean_index=sums[idx] / counts[idx],
            pair_count=counts[idx],
        )
        for idx in sorted(sums)
        if counts[idx] >= min_count
    )
    return BinnedCurve(bin_width=bin_width, log_base=log_base, bins=bins)


def _plateau_curve(x: np.ndarray, k: float, f0: float) -> np.ndarray:
    q = 1.0 / (1.0 - f0)
    # x**-k may overflow to inf for extreme trial exponents; the resulting
    # S -> f0/2 is the correct limit, so silence the warning.
    with np.errstate(over="ignore"):
        return f0 / 2.0 + (1.0 - f0 / 2.0) / (1.0 + q * x**-k)


def fit_k(
    curve: BinnedCurve,
    f0_reference: float,
    *,
    reference_id: str = "",
    tol: float = 1e-9,
) -> SuccessCurveFit:
    """One-parameter least-squares fit of the success-curve exponent k.

    The plateau factor is fixed at 1/(1 - f0_reference) so the model
    passes through 0.5 at ratio 1; bins are weighted equally.
    """
    if not 0.0 <= f0_reference < 1.0:
        raise DomainError(f"f0_reference must be in [0, 1), got {f0_reference}")
    if len(curve.bins) < 5:
        raise FitError(
            f"exponent fit needs >= 5 retained bins, got {len(curve.bins)}"
            + (f" (reference {reference_id})" if reference_id else "")
        )
    x = np.array([curve.log_base**b.log_ratio_center for b in curve.bins])
    s = np.array([b.mean_index for b in curve.bins])

    def ssq(k: float) -> float:
        d = s - _plateau_curve(x, k, f0_reference)
        return float(d @ d)

    grid = np.logspace(math.log10(0.005), math.log10(200.0), 97)
    k, fk, at_edge = grid_golden_min(ssq, list(grid), tol=tol, is_log=True)
    if at_edge:
        raise FitError(
            f"exponent fit did not bracket an optimum (best k at search bound {k:g})"
            + (f" (reference {reference_id})" if reference_id else "")
        )
    return SuccessCurveFit(
        reference_id=reference_id,
        k=k,
        f0_ref=f0_reference,
        n_bins_used=len(curve.bins),
        sum_sq_residual=fk,
    )


def _estimate_value(
    if_target: float,
    if_reference: float,
    params: UncitedCurveParams,
    k: float,
    ratio_only: bool,
) -> tuple[float, float, float, str]:
    """Scalar estimator core; returns (s, ratio_x, f0_reference, mode)."""
    if if_reference <= 0 or not math.isfinite(if_reference):
        raise DomainError(f"reference impact factor must be positive, got {if_reference}")
    if if_target < 0 or not math.isfinite(if_target):
        raise DomainError(f"target impact factor must be non-negative, got {if_target}")
    if k <= 0:
        raise DomainError(f"exponent k must be positive, got {k}")
    f0 = predict_uncited_fraction(if_reference, params)
    x = if_target / if_reference
    if ratio_only or f0 < RATIO_ONLY_F0_THRESHOLD:
        if x == 0.0:
            s = 0.0
        elif x == 1.0:
            s = 0.5
        else:
            s = 1.0 / (1.0 + x**-k)
        return s, x, f0, MODE_RATIO_ONLY
    if x == 0.0:
        s = f0 / 2.0  # plateau: ties against the reference's uncited articles
    elif x == 1.0:
        s = 0.5
    else:
        q = 1.0 / (1.0 - f0)
        s = f0 / 2.0 + (1.0 - f0 / 2.0) / (1.0 + q * x**-k)
    return s, x, f0, MODE_PLATEAU


def estimate_success_index(
    if_target: float,
    if_reference: float,
    params: UncitedCurveParams = DEFAULT_UNCITED_PARAMS,
    k: float = DEFAULT_K,
    *,
    ratio_only: bool = False,
    target_id: str = "",
    reference_id: str = "",
) -> PairEstimate:
    """Estimate the success index of the target journal over the
    reference journal from the two impact factors alone.

    The reference's uncited fraction comes from the fitted f0(IF) curve
    and sets the plateau; equal impact factors give exactly 0.5, and a
    zero-IF target returns the plateau value f0/2.  When the reference's
    predicted uncited fraction is negligible (< 0.005), or on request via
    `ratio_only`, the estimate depends on the IF ratio only.
    """
    s, x, f0, mode = _estimate_value(if_target, if_reference, params, k, ratio_only)
    return PairEstimate(
        if_target=if_target,
        if_reference=if_reference,
        ratio_x=x,
        f0_reference=f0,
        index=SuccessIndex(value=s, method="estimated", target_id=target_id, reference_id=reference_id),
        mode=mode,
    )


@dataclass(frozen=True)
class KFitReport:
    """Per-reference exponent fits over a corpus, failures included."""

    fits: tuple[SuccessCurveFit, ...]
    failures: tuple[tuple[str, str], ...]  # (reference_id, message)

    def mean_k(self) -> float:
        if not self.fits:
            raise FitError("no successful exponent fits")
        return float(np.mean([f.k for f in self.fits]))

    def std_k(self) -> float:
        if not self.fits:
            raise FitError("no successful exponent fits")
        return float(np.std([f.k for f in self.fits]))


def fit_k_distribution(
    corpus: Sequence[CitationDistribution],
    min_reference_if: float = 3.0,
    *,
    adjustment: float = 1.0,
    bin_width: float = 0.05,
    log_base: float = 10.0,
    min_bin_count: int = 3,
) -> KFitReport:
    """Fit the success-curve exponent once per qualifying reference journal.

    Every journal with impact factor above `min_reference_if` serves as a
    reference; its exact success indices against all other journals are
    binned in log IF ratio and the exponent fitted.  References whose fit
    fails are reported, not dropped.
    """
    ifs = [impact_factor(d, adjustment) for d in corpus]
    refs = [i for i, v in enumerate(ifs) if v > min_reference_if]
    if len(refs) < 2:
        raise DomainError(
            f"need >= 2 journals with impact factor above {min_reference_if}, got {len(refs)}"
        )
    s = success_value_matrix(corpus)
    fits: list[SuccessCurveFit] = []
    failures: list[tuple[str, str]] = []
    for r in refs:
        # zero-IF targets have no place on a log-ratio axis
        pairs = [
            (ifs[t] / ifs[r], float(s[t, r]))
            for t in range(len(corpus))
            if t != r and ifs[t] > 0
        ]
        ref_id = corpus[r].journal_id
        try:
            curve = bin_success_curve(pairs, bin_width, log_base=log_base, min_count=min_bin_count)
            fits.append(
                fit_k(curve, uncited_fraction(corpus[r]), reference_id=ref_id)
            )
        except (DomainError, FitError) as exc:
            failures.append((ref_id, str(exc)))
    return KFitReport(fits=tuple(fits), failures=tuple(failures))


@dataclass(frozen=True)
class ResidualStats:
    """Distribution of (estimated - exact) success indices over a corpus."""

    mean: float
    std: float
    count: int
    histogram: tuple[tuple[float, int], ...]  # (bin center, pairs)
    skipped_pairs: int = 0


def estimate_matrix_residuals(
    corpus: Sequence[CitationDistribution],
    params: UncitedCurveParams = DEFAULT_UNCITED_PARAMS,
    k: float = DEFAULT_K,
    *,
    adjustment: float = 1.0,
    hist_bin_width: float = 0.01,
) -> ResidualStats:
    """Residuals of the IF-only estimator against the exact index over
    every ordered pair of corpus journals.

    Pairs whose reference journal has zero impact factor fall outside the
    estimator's domain and are counted in `skipped_pairs`.
    """
    if len(corpus) < 2:
        raise DomainError("residual statistics need at least 2 journals")
    ifs = [impact_factor(d, adjustment) for d in corpus]
    s = success_value_matrix(corpus)
    residuals: list[float] = []
    skipped = 0
    for j, if_ref in enumerate(ifs):
        if if_ref <= 0:
            skipped += len(corpus) - 1
            continue
        for i in range(len(corpus)):
            if i == j:
                continue
            est, _, _, _ = _estimate_value(ifs[i], if_ref, params, k, ratio_only=False)
            residuals.append(est - float(s[i, j]))
    res = np.array(residuals)
    hist: dict[int, int] = {}
    for v in res:
        idx = math.floor(v / hist_bin_width + 0.5)
        hist[idx] = hist.get(idx, 0) + 1
    return ResidualStats(
        mean=float(res.mean()),
        std=float(res.std()),
        count=len(res),
        histogram=tuple((idx * hist_bin_width, hist[idx]) for idx in sorted(hist)),
        skipped_pairs=skipped,
    )
