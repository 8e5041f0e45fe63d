"""Exceptions shared across the package."""


class ValidationError(ValueError):
    """Bad input: malformed file, broken invariant, unknown node, out-of-range value.

    The CLI maps this to exit code 2; anything else that escapes is a
    runtime error (exit code 3).
    """
