"""Exception hierarchy shared by all temperkit modules."""


class TemperkitError(Exception):
    """Base class for every error raised by temperkit."""


class InvalidInputError(TemperkitError, ValueError):
    """Malformed arguments: rank mismatch, bad composition, bad file."""


class DegenerateDenominatorError(TemperkitError, ArithmeticError):
    """Every candidate has a zero denominator (only central directions)."""


class InvalidSubalgebraError(InvalidInputError):
    """An epsilon matrix that is not closed under the bracket.

    ``triple`` holds the 1-based indices (i, j, k) with eps[i][j] = eps[j][k] = 1
    but eps[i][k] = 0.
    """

    def __init__(self, triple):
        self.triple = tuple(triple)
        i, j, k = self.triple
        super().__init__(
            f"not bracket-closed: E_{i}{j} and E_{j}{k} present but E_{i}{k} missing "
            f"(violating triple ({i}, {j}, {k}))"
        )


class SizeLimitError(TemperkitError, ValueError):
    """An exhaustive enumeration would exceed the configured cap."""


class UnsupportedExponentError(TemperkitError, ValueError):
    """The almost-L^p criterion is only available for even p."""


class InvalidFormError(TemperkitError, ValueError):
    """Out-of-range or non-simple parameters for a root datum."""


class UnsupportedFormError(TemperkitError, ValueError):
    """A real form whose restricted-root data is not implemented."""
