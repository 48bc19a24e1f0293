"""Exception hierarchy shared by all macsi modules."""


class MacsiError(Exception):
    """Base class for every error raised by this package."""


# -- probability core -------------------------------------------------------

class UndeterminedVariable(MacsiError):
    pass


class ConflictingFactor(MacsiError):
    pass


class CyclicFactors(MacsiError):
    pass


class AlphabetMismatch(MacsiError):
    pass


class UnknownVariable(MacsiError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class OverlappingSets(MacsiError):
    pass


class OutOfRange(MacsiError, ValueError):
    pass


class InvalidDistribution(MacsiError, ValueError):
    pass


class ConsistencyError(MacsiError):
    """An information quantity came out negative beyond rounding noise."""


# -- channel files ----------------------------------------------------------

class ChannelFileError(MacsiError):
    pass


class ParseError(ChannelFileError):
    pass


class SchemaError(ChannelFileError):
    pass


class NormalizationError(ChannelFileError):
    pass


class NegativeProbability(ChannelFileError):
    pass


# -- regions ----------------------------------------------------------------

class MissingVariable(UnknownVariable):
    pass


class R1Infeasible(MacsiError):
    pass


class DegenerateBundle(MacsiError):
    pass


# -- simulator --------------------------------------------------------------

class Overflow(MacsiError):
    """Codeword did not fit its bit budget."""

    def __init__(self, length, budget):
        super().__init__(f"codeword needs {length} bits, budget is {budget}")
        self.length = length
        self.budget = budget


class ConfigError(MacsiError, ValueError):
    pass


class StructuralMismatch(MacsiError):
    pass
