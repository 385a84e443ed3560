"""Exception hierarchy shared by all modules."""


class TDPError(ValueError):
    """Base class for every domain error raised by this package."""


class InvalidGerm(TDPError):
    """(r, a) does not describe a cyclic quotient germ."""


class InvalidChain(TDPError):
    """A Hirzebruch-Jung chain has an entry below 2."""


class NotTSingularity(TDPError):
    """An operation that needs a T-singularity got something else."""


class NotDuVal(TDPError):
    pass


class InvalidFan(TDPError):
    """Ray data does not define a complete 2D fan."""


class NotWellFormed(TDPError):
    """Weights of a weighted projective plane share a common factor."""


class MutationUndefined(TDPError):
    """The Vieta jump leaves the positive integers."""


class InvalidDeformation(TDPError):
    pass


class BoundViolation(TDPError):
    """s > rho + 2 on a record where that is supposed to be impossible."""
