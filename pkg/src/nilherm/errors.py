"""Shared exception types with stable machine-readable codes."""


class NilhermError(Exception):
    """Base class for package errors."""

    code = "error"


class InvalidInputError(NilhermError):
    """Malformed user input: bad algebra file, point spec, locus string..."""

    code = "invalid_input"


class NotInModuliError(NilhermError):
    """A 2-form or endomorphism that is not a point of the moduli space."""

    code = "not_in_moduli"


class NotNilpotentError(NilhermError):
    """Operation requires a nilpotent algebra."""

    code = "not_nilpotent"
