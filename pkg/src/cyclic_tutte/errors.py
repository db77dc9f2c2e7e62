"""Exception hierarchy shared by the engines and the CLI.

Every exception raised on purpose by `cyclic_tutte` derives from
`CyclicTutteError`. The CLI maps the families to stable exit codes:

| Family | Exit code |
|---|---|
| `ValidationError`, `EnumerationLimitError` | 2 |
| `NotRealizableError`, `InfeasibleDesignError` | 3 |
| oracle mismatch (CLI only) | 4 |
"""

EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_ORACLE_MISMATCH = 4


class CyclicTutteError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ValidationError(CyclicTutteError):
    """Raised when input doesn't conform to the expected structure."""

    exit_code = EXIT_VALIDATION


class MatroidError(ValidationError):
    """Raised for invalid matroid data or out-of-range elements."""


class ConfigurationError(ValidationError):
    """Raised for an invalid configuration or interval query."""


class CondensationError(ValidationError):
    """Raised when a partition fails the condensation conditions."""


class PmdSpecError(ValidationError):
    """Raised for a malformed perfect matroid design sequence."""


class SettingsError(ValidationError):
    """Raised for unparsable settings values."""


class EnumerationLimitError(CyclicTutteError):
    """Raised when a ground set is too large for an exhaustive enumeration."""

    exit_code = EXIT_VALIDATION

    def __init__(self, what: str, n: int, limit: int):
        self.what = what
        self.n = n
        self.limit = limit
        super().__init__(
            f"{what} needs n <= {limit}, got n = {n}. "
            f"Raise the limit with a flag or in `cyclic-tutte config`."
        )


class NotRealizableError(CyclicTutteError):
    """Raised when the cloud/flock recursion produces a negative coefficient.

    Attributes:
        interval: The `(lo, hi)` node or block pair whose polynomial went negative.
        which: Either `"cloud"` or `"flock"`.
    """

    exit_code = EXIT_INFEASIBLE

    def __init__(self, interval: tuple[int, int], which: str, detail: str = ""):
        self.interval = interval
        self.which = which
        message = f"Negative coefficient in {which} polynomial of interval {interval}: not the configuration of any matroid."
        if detail:
            message += f" {detail}"
        super().__init__(message)


class InfeasibleDesignError(CyclicTutteError):
    """Raised when a perfect matroid design count is not a positive integer.

    Attributes:
        i: Rank of the contained flats.
        j: Rank of the containing flat.
        fraction: Unreduced product, e.g. `"56/6"`.
    """

    exit_code = EXIT_INFEASIBLE

    def __init__(self, i: int, j: int, fraction: str = "", detail: str = ""):
        self.i = i
        self.j = j
        self.fraction = fraction
        if not detail:
            detail = f"count is {fraction}, not a positive integer."
        super().__init__(f"Infeasible PMD sequence at (i, j) = ({i}, {j}): {detail}")
