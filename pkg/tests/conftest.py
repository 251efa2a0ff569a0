import numpy as np
from hypothesis import HealthCheck, settings

from citesuccess import CitationDistribution, predict_uncited_fraction

settings.register_profile(
    "ci", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")


def random_distribution(
    rng: np.random.Generator,
    journal_id: str,
    max_articles: int = 100,
    max_citations: int = 50,
) -> CitationDistribution:
    n = int(rng.integers(1, max_articles + 1))
    counts = rng.integers(0, max_citations + 1, size=n)
    return CitationDistribution.from_counts(journal_id, counts.tolist())


def analytic_hurdle_geometric_success(if_target: float, if_reference: float) -> float:
    """Closed-form exact success index for two hurdle-geometric journals
    calibrated on the default uncited-fraction curve.

    With P(0) = f0 and P(c) = (1-f0) * theta * (1-theta)**(c-1) for c >= 1,
    the rank-sum series telescopes to
        S = b(1 - a/2) + (1-a)(1-b) v (1 - u/2) / (u + v - uv)
    where (a, u) and (b, v) are the target's and reference's (f0, theta).
    Serves as the sampling-free oracle for generator-based pipelines.
    """
    a = predict_uncited_fraction(if_target)
    u = (1.0 - a) / if_target
    b = predict_uncited_fraction(if_reference)
    v = (1.0 - b) / if_reference
    return b * (1 - a / 2) + (1 - a) * (1 - b) * v * (1 - u / 2) / (u + v - u * v)
