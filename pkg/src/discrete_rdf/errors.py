"""Exception hierarchy.

Every error raised on invalid input derives from :class:`DiscreteRdfError`,
which is a :class:`ValueError`, so callers that only care about "bad input"
can catch that.
"""


class DiscreteRdfError(ValueError):
    """Base class for all input/contract errors in this package."""


class ZeroWeightEntry(DiscreteRdfError):
    pass


class BadExponent(DiscreteRdfError):
    pass


class LambdaOutOfRange(DiscreteRdfError):
    pass


class LengthMismatch(DiscreteRdfError):
    pass


class AlphaOutOfRange(DiscreteRdfError):
    pass


class GammaOutOfRange(DiscreteRdfError):
    pass


class ZeroPrefixSum(DiscreteRdfError):
    pass


class NegativeEntry(DiscreteRdfError):
    pass


class BudgetTooSmall(DiscreteRdfError):
    pass


class UnsupportedOperator(DiscreteRdfError):
    pass


class NonconvergentSeries(DiscreteRdfError):
    """Term norms of a Rubio de Francia series stopped decaying.

    Usually means the constant ``K`` is smaller than the operator norm.
    """


class ExponentOrder(DiscreteRdfError):
    pass


class BadPhiDescriptor(DiscreteRdfError):
    pass


class EmptyCorpus(DiscreteRdfError):
    pass


class BadForm(DiscreteRdfError):
    pass


class HypothesisViolation(DiscreteRdfError):
    pass


class TooShort(DiscreteRdfError):
    pass


class UnsupportedFormat(DiscreteRdfError):
    pass


class BadSpec(DiscreteRdfError):
    """Unparseable generator spec or weight file."""
