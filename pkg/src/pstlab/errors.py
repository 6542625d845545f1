"""Exception taxonomy shared by the library and the CLI exit codes."""


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class PreconditionError(InputError):
    """An operation precondition failed; carries a witness when available."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GuardError(RuntimeError):
    """A size/enumeration guard was exceeded (CLI exit code 3)."""


class NumericError(RuntimeError):
    """A numerical kernel failed to converge (CLI exit code 3)."""
