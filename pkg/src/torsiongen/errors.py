"""Exception types shared across the toolkit."""


class TorsionGenError(Exception):
    """Base class for all toolkit errors."""


class MalformedCycle(TorsionGenError):
    pass


class PointOutOfRange(TorsionGenError):
    pass


class RepeatedPoint(TorsionGenError):
    pass


class DegreeMismatch(TorsionGenError):
    pass


class EmptyGeneratorList(TorsionGenError):
    pass


class InvalidParams(TorsionGenError):
    pass


class OverlapError(TorsionGenError):
    pass


class RangeError(TorsionGenError):
    pass


class OddK(TorsionGenError):
    pass


class SearchExhausted(TorsionGenError):
    pass


class CaseUndefined(TorsionGenError):
    pass


class InvalidDecomposition(TorsionGenError):
    pass


class UnsupportedK(TorsionGenError):
    pass


class PlusOneUnsupported(TorsionGenError):
    pass


class ZeroVector(TorsionGenError):
    pass


class TooLarge(TorsionGenError):
    pass


class MissingLanternData(TorsionGenError):
    pass


class HypothesisFailure(TorsionGenError):
    pass


class RewriteStepInvalid(TorsionGenError):
    pass


class InvalidSampler(TorsionGenError):
    pass


class TrialsZero(TorsionGenError):
    pass
