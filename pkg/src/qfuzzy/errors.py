"""Exception types shared across the package."""


class ResourceLimitError(Exception):
    """A register allocation would exceed the configured qubit cap."""
