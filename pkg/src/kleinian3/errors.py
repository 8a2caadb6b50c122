"""Exception hierarchy shared by all kleinian3 modules."""


class Kleinian3Error(Exception):
    """Base class for all library errors."""


# projective core
class SingularMatrix(Kleinian3Error):
    pass


class CoincidentPoints(Kleinian3Error):
    pass


class CoincidentLines(Kleinian3Error):
    pass


class BasePointOnLine(Kleinian3Error):
    pass


class ProjectingBasePoint(Kleinian3Error):
    pass


# classification / triangular
class IdentityElement(Kleinian3Error):
    pass


class EmptyCore(Kleinian3Error):
    pass


class NotUpperTriangular(Kleinian3Error):
    pass


# exact arithmetic / lattices
class UnfactorableCoefficient(Kleinian3Error):
    """A Gaussian-rational coefficient has a prime factor beyond the
    supported bound; declare it as an extra basis symbol instead."""


class UnsupportedExactOperation(Kleinian3Error):
    """The requested exact operation would leave the declared-independent
    monomial algebra (e.g. squaring an additive-only symbol)."""


class InvalidLift(Kleinian3Error):
    pass


# decomposition
class TorsionDetected(Kleinian3Error):
    pass


class CommutativeInput(Kleinian3Error):
    pass


class NonCommutativeInput(Kleinian3Error):
    pass


class RankBoundViolated(Kleinian3Error):
    pass


# commutative families
class CountMismatch(Kleinian3Error):
    pass


class NotDiscreteInput(Kleinian3Error):
    pass


class NoLoxodromic(Kleinian3Error):
    pass


class UnclassifiedModulusPattern(Kleinian3Error):
    """|alpha| = |beta| != 1: outside the diagonal case table."""


# qp limits
class NoMatchingRow(Kleinian3Error):
    pass


class DegenerateSequence(Kleinian3Error):
    pass


# orbit simulation
class ExplosionGuard(Kleinian3Error):
    pass


class EmptyBall(Kleinian3Error):
    pass


class UnrepresentableInChart(Kleinian3Error):
    pass


# group files
class GroupFileError(Kleinian3Error):
    pass
