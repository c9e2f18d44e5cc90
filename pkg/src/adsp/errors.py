"""Exception types shared across the package.

The command-line front end maps these onto exit codes, so every public
operation raises one of them (or lets a plain bug propagate).
"""


class InputError(ValueError):
    """Malformed or inadmissible input (exit code 1)."""


class InternalError(AssertionError):
    """A postcondition check failed; indicates a bug, never bad input (exit code 2)."""


class ResourceError(RuntimeError):
    """A configured size cap was exceeded (exit code 3)."""
