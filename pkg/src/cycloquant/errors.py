"""Exception types shared across the package.

Contract violations (bad dimensions, negative multiplicities, parity) raise
plain ``ValueError``; the classes here mark the two other failure kinds the
command line distinguishes.
"""


class ParseError(ValueError):
    """Malformed textual input: circuit strings, cyclotomic literals, models."""


class ResourceLimitError(RuntimeError):
    """A configured enumeration or series ceiling would be exceeded."""
