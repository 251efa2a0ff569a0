"""Corpus loading, export, and synthetic generation.

Two file schemas are accepted, both as CSV (UTF-8, header required) and
as a JSON array of row objects with the same field names:

* histogram rows:   journal_id,citations,n_articles
  one row per (journal, citation count) bin;
* per-article rows: journal_id,citations
  one row per article.

Export always writes the histogram schema with rows sorted by
(journal_id, citations) so identical corpora produce identical bytes.

The synthetic generator stands in for a real bibliographic corpus: each
journal draws a target impact factor log-uniformly, then samples article
citation counts from a count family whose parameters are solved so the
expected mean matches the target IF and the expected zero fraction
matches the fitted uncited-fraction curve.  Per-journal RNG streams are
spawned from the corpus seed, so output is reproducible and independent
of generation order.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .distributions import (
    DEFAULT_IF_ADJUSTMENT,
    CitationDistribution,
    JournalSummary,
    summarize,
)
from .errors import DomainError, GenerationError, ParseError
from .fitting import DEFAULT_UNCITED_PARAMS, UncitedCurveParams, predict_uncited_fraction

DEFAULT_MIN_ARTICLES = 25

HISTOGRAM_HEADER = ("journal_id", "citations", "n_articles")
PER_ARTICLE_HEADER = ("journal_id", "citations")

FAMILIES = ("hurdle_geometric", "discrete_lognormal")


@dataclass(frozen=True)
class CorpusConfig:
    """Corpus conventions: census year, window, size threshold, IF adjustment."""

    census_year: int = 2010
    publication_window: tuple[int, int] | None = None
    min_articles: int = DEFAULT_MIN_ARTICLES
    if_adjustment: float = DEFAULT_IF_ADJUSTMENT

    def __post_init__(self) -> None:
        if self.publication_window is None:
            object.__setattr__(
                self, "publication_window", (self.census_year - 2, self.census_year - 1)
            )
        if not all(y < self.census_year for y in self.publication_window):
            raise DomainError(
                f"publication window {self.publication_window} must precede "
                f"census year {self.census_year}"
            )
        if self.min_articles < 1:
            raise DomainError(f"min_articles must be >= 1, got {self.min_articles}")
        if self.if_adjustment <= 0:
            raise DomainError(f"if_adjustment must be positive, got {self.if_adjustment}")


@dataclass(frozen=True)
class SkippedJournal:
    journal_id: str
    n_articles: int


@dataclass(frozen=True)
class LoadResult:
    distributions: tuple[CitationDistribution, ...]
    summaries: tuple[JournalSummary, ...]
    skipped: tuple[SkippedJournal, ...]


def _parse_int(value, what: str, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{where}: {what} {value!r} is not an integer")
    if isinstance(value, int):
        n = value
    else:
        text = str(value).strip()
        try:
            n = int(text)
        except ValueError:
            raise ParseError(f"{where}: {what} {text!r} is not an integer") from None
    if n < minimum:
        raise ParseError(f"{where}: {what} {n} must be >= {minimum}")
    return n


def _rows_from_csv(path: Path) -> tuple[tuple[str, ...], list[tuple[int, list[str]]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, header required") from None
        rows = [
            (lineno, row)
            for lineno, row in enumerate(reader, start=2)
            if row and any(cell.strip() for cell in row)
        ]
    return tuple(h.strip().lower() for h in header), rows


def _rows_from_json(path: Path) -> tuple[tuple[str, ...], list[tuple[int, list[str]]]]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a top-level JSON array of row objects")
    if not data:
        return HISTOGRAM_HEADER, []
    first = data[0]
    if not isinstance(first, dict):
        raise ParseError(f"{path}: row 1 is not an object")
    header = HISTOGRAM_HEADER if "n_articles" in first else PER_ARTICLE_HEADER
    rows = []
    for i, item in enumerate(data, start=1):
        if not isinstance(item, dict):
            raise ParseError(f"{path}: row {i} is not an object")
        missing = [k for k in header if k not in item]
        if missing:
            raise ParseError(f"{path}: row {i} missing field(s) {', '.join(missing)}")
        rows.append((i, [str(item[k]) for k in header]))
    return header, rows


def load_corpus(path: str | Path, config: CorpusConfig = CorpusConfig()) -> LoadResult:
    """Load per-journal citation histograms from a corpus file.

    Journals below `config.min_articles` are excluded and listed in the
    skip report.  Malformed rows and duplicate (journal, citation count)
    bins raise ParseError naming the offending line.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"{path}: no such file")
    if path.suffix.lower() == ".json":
        header, rows = _rows_from_json(path)
    else:
        header, rows = _rows_from_csv(path)

    if header == HISTOGRAM_HEADER:
        per_article = False
    elif header == PER_ARTICLE_HEADER:
        per_article = True
    else:
        raise ParseError(
            f"{path}: unrecognized header {','.join(header)!r}; expected "
            f"{','.join(HISTOGRAM_HEADER)!r} or {','.join(PER_ARTICLE_HEADER)!r}"
        )

    hists: dict[str, dict[int, int]] = {}
    first_seen: dict[tuple[str, int], int] = {}
    for lineno, row in rows:
        where = f"{path} line {lineno}"
        if len(row) != len(header):
            raise ParseError(f"{where}: expected {len(header)} columns, got {len(row)}")
        journal_id = row[0].strip()
        if not journal_id:
            raise ParseError(f"{where}: empty journal_id")
        citations = _parse_int(row[1], "citation count", where)
        hist = hists.setdefault(journal_id, {})
        if per_article:
            hist[citations] = hist.get(citations, 0) + 1
        else:
            n = _parse_int(row[2], "article count", where, minimum=1)
            key = (journal_id, citations)
            if key in first_seen:
                raise ParseError(
                    f"{where}: duplicate bin for journal {journal_id!r} at "
                    f"citation count {citations} (first seen line {first_seen[key]})"
                )
            first_seen[key] = lineno
            hist[citations] = n

    distributions: list[CitationDistribution] = []
    summaries: list[JournalSummary] = []
    skipped: list[SkippedJournal] = []
    for journal_id, hist in hists.items():
        dist = CitationDistribution.from_histogram(journal_id, hist)
        if dist.n_articles < config.min_articles:
            skipped.append(SkippedJournal(journal_id, dist.n_articles))
            continue
        distributions.append(dist)
        summaries.append(summarize(dist, config.if_adjustment))
    return LoadResult(
        distributions=tuple(distributions),
        summaries=tuple(summaries),
        skipped=tuple(skipped),
    )


def export_corpus(corpus, path: str | Path) -> None:
    """Write a corpus in the histogram schema (CSV, or JSON for a .json
    path), rows sorted by (journal_id, citations) for byte stability."""
    path = Path(path)
    rows = sorted(
        (d.journal_id, c, n)
        for d in corpus
        for c, n in d.histogram.items()
    )
    if path.suffix.lower() == ".json":
        payload = [
            {"journal_id": jid, "citations": c, "n_articles": n} for jid, c, n in rows
        ]
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HISTOGRAM_HEADER)
        writer.writerows(rows)


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a reproducible synthetic corpus."""

    n_journals: int
    if_range: tuple[float, float] = (0.3, 30.0)
    articles_per_journal: int | tuple[int, int] = 1000
    family: str = "hurdle_geometric"
    seed: int = 0
    lognormal_sigma: float = 1.2  # tail heaviness of the discrete_lognormal family

    def __post_init__(self) -> None:
        if self.n_journals < 1:
            raise DomainError(f"n_journals must be >= 1, got {self.n_journals}")
        lo, hi = self.if_range
        if not (0 < lo <= hi):
            raise DomainError(f"if_range must satisfy 0 < min <= max, got {self.if_range}")
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        arts = self.articles_per_journal
        if isinstance(arts, int):
            if arts < 1:
                raise DomainError(f"articles_per_journal must be >= 1, got {arts}")
        else:
            a_lo, a_hi = arts
            if not (1 <= a_lo <= a_hi):
                raise DomainError(f"articles_per_journal range invalid: {arts}")
        if self.lognormal_sigma <= 0:
            raise DomainError(f"lognormal_sigma must be positive, got {self.lognormal_sigma}")


def _norm_cdf(z: np.ndarray) -> np.ndarray:
    # Abramowitz-Stegun 7.1.26 rational erf approximation, |err| < 1.5e-7;
    # plenty for calibrating a sampler, and keeps the generator dependency-free.
    x = np.asarray(z, dtype=np.float64) / math.sqrt(2.0)
    sign = np.sign(x)
    ax = np.abs(x)
    t = 1.0 / (1.0 + 0.3275911 * ax)
    poly = t * (
        0.254829592
        + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429)))
    )
    erf = sign * (1.0 - poly * np.exp(-ax * ax))
    return 0.5 * (1.0 + erf)


def _lognormal_positive_mean(mu: float, sigma: float) -> float:
    """Mean of max(1, round(X)) for lognormal X, via the tail-sum identity."""
    k_max = int(min(math.exp(mu + 7.5 * sigma) + 2.0, 2_000_000.0))
    j = np.arange(2, k_max + 2, dtype=np.float64)
    tail = 1.0 - _norm_cdf((np.log(j - 0.5) - mu) / sigma)
    return 1.0 + float(tail.sum())


def _solve_lognormal_mu(target_mean: float, sigma: float, journal_id: str) -> float:
    if target_mean <= 1.0 + 1e-9:
        raise GenerationError(
            f"journal {journal_id}: positive-part mean {target_mean:.4f} is not "
            "achievable by the discrete_lognormal family (floor is 1)"
        )
    lo = math.log(0.01)
    hi = math.log(target_mean) + 2.0
    while _lognormal_positive_mean(hi, sigma) < target_mean:
        hi += 1.0
        if hi > 30:
            raise GenerationError(f"journal {journal_id}: lognormal mean solve diverged")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _lognormal_positive_mean(mid, sigma) < target_mean:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sample_journal(
    journal_id: str,
    rng: np.random.Generator,
    spec: SyntheticSpec,
    params: UncitedCurveParams,
) -> CitationDistribution:
    arts = spec.articles_per_journal
    if isinstance(arts, int):
        n = arts
    else:
        n = int(rng.integers(arts[0], arts[1] + 1))
    lo, hi = spec.if_range
    if_target = float(np.exp(rng.uniform(math.log(lo), math.log(hi))))
    f0 = predict_uncited_fraction(if_target, params)

    # solve family parameters first: infeasible targets must fail even if
    # the zero mask happens to cover every article
    if spec.family == "hurdle_geometric":
        theta = (1.0 - f0) / if_target
        if not 0.0 < theta <= 1.0:
            raise GenerationError(
                f"journal {journal_id}: target IF {if_target:.4f} infeasible for "
                f"hurdle_geometric (success probability {theta:.4f})"
            )
    else:
        mu = _solve_lognormal_mu(if_target / (1.0 - f0), spec.lognormal_sigma, journal_id)

    zero = rng.random(n) < f0
    n_pos = int(n - zero.sum())
    counts = np.zeros(n, dtype=np.int64)
    if n_pos > 0:
        if spec.family == "hurdle_geometric":
            counts[~zero] = rng.geometric(theta, size=n_pos)
        else:
            draws = rng.lognormal(mean=mu, sigma=spec.lognormal_sigma, size=n_pos)
            counts[~zero] = np.maximum(1, np.rint(draws).astype(np.int64))
    return CitationDistribution.from_counts(journal_id, counts.tolist())


def generate_synthetic_corpus(spec: SyntheticSpec) -> list[CitationDistribution]:
    """Generate a reproducible synthetic corpus per `spec`.

    Each journal gets its own RNG stream spawned from the corpus seed, so
    the result does not depend on generation order.
    """
    children = np.random.SeedSequence(spec.seed).spawn(spec.n_journals)
    width = max(4, len(str(spec.n_journals)))
    return [
        _sample_journal(
            f"synthetic-{i:0{width}d}", np.random.default_rng(children[i]), spec,
            DEFAULT_UNCITED_PARAMS,
        )
        for i in range(spec.n_journals)
    ]
