"""Exception and warning types shared across the package."""


class InputError(Exception):
    """Bad user-supplied data or parameters (CLI exit code 1)."""


class CsvParseError(InputError):
    """CSV row rejected; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class FastaParseError(InputError):
    """Malformed FASTA input."""


class UnusablePairError(InputError):
    """Aligned pair too short for any causal analysis."""


class DegenerateSeriesWarning(UserWarning):
    """Constant real-valued series was binarized to all zeros."""
