"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """A precondition of a mathematical operation failed.

    ``clause`` is a short stable identifier of what went wrong; the CLI
    prints it and exits with status 1.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        self.detail = detail
        super().__init__(f"{clause}: {detail}" if detail else clause)


class MalformedInput(ValueError):
    """Input data could not be parsed (CLI exit status 2)."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")
