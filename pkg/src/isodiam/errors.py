"""Exception hierarchy shared by all modules."""


class IsodiamError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(IsodiamError, ValueError):
    def __init__(self, rank, dim):
        self.rank = rank
        self.dim = dim
        super().__init__(
            f"points span an affine subspace of rank {rank}, need {dim}")


class ParamOutOfRange(IsodiamError, ValueError):
    pass


class OriginNotInterior(IsodiamError, ValueError):
    def __init__(self, facet, normal, offset):
        self.facet = facet
        self.normal = normal
        self.offset = offset
        super().__init__(
            f"origin not interior: facet {facet} has offset {offset:.3e}")


class RankDeficientBasis(IsodiamError, ValueError):
    pass


class NotSymmetric(IsodiamError, ValueError):
    pass


class RankDeficient(IsodiamError, ValueError):
    pass


class MaxIterations(IsodiamError, RuntimeError):
    def __init__(self, iterations, gap):
        self.iterations = iterations
        self.gap = gap
        super().__init__(
            f"no convergence after {iterations} iterations (gap {gap:.3e})")


class NotContainedInBall(IsodiamError, ValueError):
    pass


class ShapeMismatch(IsodiamError, ValueError):
    pass


class InfeasibleDecomposition(IsodiamError):
    """Raised when no nonnegative weights reach the requested residual.

    The best weights found and their residual are kept on the exception.
    """

    def __init__(self, residual, weights):
        self.residual = residual
        self.weights = weights
        super().__init__(f"best achievable residual {residual:.3e}")


class CombinatorialBlowup(IsodiamError, ValueError):
    pass


class NotInBehrendPosition(IsodiamError, ValueError):
    pass


class CertificateError(IsodiamError):
    """A numeric claim that should hold for the input failed to verify."""


class InvalidQuery(IsodiamError, ValueError):
    pass


class UnknownWitness(IsodiamError, KeyError):
    pass


class InputError(IsodiamError, ValueError):
    """Malformed or inconsistent input files."""
