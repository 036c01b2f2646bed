"""Exception hierarchy shared by every fusionbench module."""


class FusionBenchError(Exception):
    """Base class for all errors raised by fusionbench."""


class ConfigError(FusionBenchError):
    """Inconsistent or invalid run configuration (CLI exit code 2)."""


class DataError(FusionBenchError):
    """Problem with the input data itself (CLI exit code 3)."""


class EmptyImage(DataError):
    pass


class BlankImage(DataError):
    """Raised when an operation needs at least one ink pixel."""


class InsufficientSamples(DataError):
    pass


class ManifestError(DataError):
    pass


class DimensionMismatch(FusionBenchError, ValueError):
    pass


class LengthMismatch(FusionBenchError, ValueError):
    pass


class LabelOutOfRange(FusionBenchError, ValueError):
    pass


class DegenerateInput(FusionBenchError, ValueError):
    pass


class EmptyModel(FusionBenchError, ValueError):
    pass


class InvalidK(FusionBenchError, ValueError):
    pass


class InvalidPriors(FusionBenchError, ValueError):
    pass


class InvalidAlpha(FusionBenchError, ValueError):
    pass


class InvalidReliability(FusionBenchError, ValueError):
    pass


class TotalConflict(FusionBenchError, ArithmeticError):
    """Dempster's rule is undefined: the two mass functions fully contradict."""


class DegenerateWeakLearner(FusionBenchError, RuntimeError):
    pass
