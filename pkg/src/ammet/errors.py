"""Exception hierarchy shared across the toolkit.

The CLI maps these onto its exit codes: usage problems (UsageError and
DomainError raised for caller-supplied values) exit 1, data problems
(ParseError and the World Bank client errors) exit 2, numeric failures
(ConvergenceError) exit 3.
"""


class AmmetError(Exception):
    """Base class for all toolkit errors."""


class DomainError(AmmetError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(AmmetError, ValueError):
    """A request is malformed (bad flag, unknown format token, ...)."""


class ConvergenceError(AmmetError, ArithmeticError):
    """An iterative solver exhausted its iteration budget."""


class ParseError(AmmetError, ValueError):
    """Input data does not match the expected layout.

    Messages name the offending line and column so broken files can be
    located without a debugger.
    """


class IndicatorMismatchError(ParseError):
    """A data row carries a different indicator code than requested."""


class WorldBankApiError(AmmetError):
    """Base class for failures of the live indicator client."""


class TransportError(WorldBankApiError):
    """The HTTP request itself failed (DNS, connection, timeout)."""


class ApiStatusError(WorldBankApiError):
    """The API answered with a non-200 status code."""

    def __init__(self, status: int, url: str):
        super().__init__(f"HTTP {status} from {url}")
        self.status = status
        self.url = url


class PayloadError(WorldBankApiError):
    """The API answered 200 but the body is not the documented payload."""
