"""Exception hierarchy shared by all modules."""


class InvBanachError(Exception):
    """Base class; the CLI maps these to exit code 1 (failed check) or 2 (bad input)."""

    input_error = False


class InputError(InvBanachError):
    input_error = True


class InvalidPermutation(InputError):
    pass


class CapExceeded(InvBanachError):
    pass


class DimensionMismatch(InputError):
    pass


class InvalidSpec(InputError):
    pass


class ZeroVector(InputError):
    pass


class NonPolyhedral(InvBanachError):
    pass


class VertexBudgetExceeded(InvBanachError):
    pass


class UnsupportedDual(InvBanachError):
    pass


class UnsupportedDomain(InvBanachError):
    pass


class NotInvariant(InvBanachError):
    pass


class PreconditionFailed(InvBanachError):
    pass


class PointInsideBody(InvBanachError):
    pass


class BodyNotInvariant(InvBanachError):
    pass


class PointNotInvariant(InvBanachError):
    pass


class MarginInfeasible(InvBanachError):
    pass


class OriginNotInterior(InvBanachError):
    pass


class NotUnitVector(InvBanachError):
    pass


class NormNotInvariant(InvBanachError):
    pass


class SetNotInvariant(InvBanachError):
    pass


class WrongDomainKind(InvBanachError):
    pass


class BadEps(InputError):
    pass


class NoConvergence(InvBanachError):
    pass


class NoEligibleLambda(InvBanachError):
    pass


class DeltaInfeasible(InvBanachError):
    pass


class CertInvalid(InvBanachError):
    pass


class BlockTooBig(InvBanachError):
    pass


class NoBlockBeyondCutoff(InvBanachError):
    pass


class NoWitness(InvBanachError):
    pass
