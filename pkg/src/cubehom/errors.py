"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user input: bad graph files, out-of-range ids, unknown names."""


class ResourceLimitError(RuntimeError):
    """A computation was refused because its projected cost exceeds a configured cap."""
