"""Exception types shared across the package.

Each carries the process exit code the command-line front end reports.
"""


class PermcatError(Exception):
    exit_code = 1


class InputError(PermcatError, ValueError):
    """Malformed or out-of-domain input."""

    exit_code = 2


class ResourceError(PermcatError, RuntimeError):
    """A configured size or truncation bound was exceeded."""

    exit_code = 3


class GenericPointError(PermcatError, ArithmeticError):
    """Two supposedly generic evaluation points gave different answers."""

    exit_code = 1


class VerificationFailure(PermcatError, AssertionError):
    exit_code = 1
