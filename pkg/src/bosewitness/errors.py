"""Exception hierarchy shared by all modules."""


class BoseWitnessError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BoseWitnessError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class DivergentZeta(DomainError):
    """zeta(s) requested at s <= 1, where the series diverges."""


class NoFiniteCondensation(DomainError):
    """The ideal gas has no finite BEC temperature in this dimension."""


class PhaseError(DomainError):
    """Normal-phase quantity requested inside the condensed phase."""


class UnknownSpecies(BoseWitnessError, LookupError):
    pass


class CutoffTooSmall(BoseWitnessError):
    """The mode set does not reach far enough into the Boltzmann tail."""


class ConvergenceFailure(BoseWitnessError):
    pass


class TooCoarse(BoseWitnessError):
    """A spatial subset holds too few grid points for a faithful eigen-solve."""


class NoCrossing(BoseWitnessError):
    """U(T) never meets the separable energy floor inside the search bracket."""


class ParseError(BoseWitnessError):
    """Malformed scenario file or command-line value."""
