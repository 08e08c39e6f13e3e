"""Shared exception hierarchy.

Specific error classes live in the module that owns the failing check, so
``type(exc).__module__`` identifies the subsystem that raised. The CLI maps
these onto exit codes: SchemaError -> 2 (bad input file / usage), every
other ToolkitError -> 1 (domain error).
"""


class ToolkitError(Exception):
    """Base class for all irjoint errors."""


class InvariantError(ToolkitError, ValueError):
    """A value object was constructed with inconsistent fields."""


class DomainError(ToolkitError, ValueError):
    """An operation was called outside its admissible input range."""


class SchemaError(ToolkitError, ValueError):
    """A spec file does not match the documented JSON schema."""
