"""Exception hierarchy shared across the toolkit."""


class CiteSuccessError(Exception):
    """Base class for all toolkit errors."""


class DomainError(CiteSuccessError):
    """Invalid value or operation outside a function's domain (empty
    distribution, negative impact factor, oversized brute-force request...)."""


class ParseError(CiteSuccessError):
    """Malformed corpus file. Messages include the offending line/row."""


class FitError(CiteSuccessError):
    """A curve fit could not be performed (too little data, degenerate
    input, or the optimum pinned at a search bound)."""


class GenerationError(CiteSuccessError):
    """Synthetic corpus generation failed (family parameters unsolvable
    for the requested impact factor)."""
