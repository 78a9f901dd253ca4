"""Domain errors raised across the toolkit.

Every error carries a stable ``code`` string so the HTTP layer can map it
onto structured ``{code, message}`` JSON without string matching.
"""


class AdforgeError(Exception):
    """Base class for all domain errors."""

    code = "AdforgeError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class EmptyDocument(AdforgeError):
    code = "EmptyDocument"


class EmptyAd(AdforgeError):
    code = "EmptyAd"


class EmptyText(AdforgeError):
    code = "EmptyText"


class MissingDefault(AdforgeError):
    code = "MissingDefault"


class NoPairs(AdforgeError):
    code = "NoPairs"


class ShapeMismatch(AdforgeError):
    code = "ShapeMismatch"


class EmptyTarget(AdforgeError):
    code = "EmptyTarget"


class NonFinite(AdforgeError):
    code = "NonFinite"


class DegenerateDataset(AdforgeError):
    code = "DegenerateDataset"


class BadFoldCount(AdforgeError):
    code = "BadFoldCount"


class TooFewLabels(AdforgeError):
    code = "TooFewLabels"


class ZeroVariance(AdforgeError):
    code = "ZeroVariance"


class EmptyPopulation(AdforgeError):
    code = "EmptyPopulation"


class NoContent(AdforgeError):
    code = "NoContent"


class NoModelForDomain(AdforgeError):
    code = "NoModelForDomain"


class UnfilledPlaceholder(AdforgeError):
    code = "UnfilledPlaceholder"


class FetchFailed(AdforgeError):
    code = "FetchFailed"


class ModelUnavailable(AdforgeError):
    code = "ModelUnavailable"


class InvalidTransition(AdforgeError):
    code = "InvalidTransition"


class NotFound(AdforgeError):
    code = "NotFound"


class ConfigError(AdforgeError):
    code = "ConfigError"
