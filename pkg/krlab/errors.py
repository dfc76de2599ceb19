from __future__ import annotations

from typing import Any, Optional


class KrlabError(Exception):
    """Base class for every error raised by krlab."""


class ValidationError(KrlabError):
    """A group table or element failed a structural check."""


class RegularityError(KrlabError):
    """A structure matrix has an all-zero row or column."""


class FormatError(KrlabError, ValueError):
    """A description file or certificate is malformed."""


class ParseError(KrlabError, ValueError):
    def __init__(self, message: str, position: int = 0) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ContextMismatch(KrlabError):
    """Two lattice values belong to different (B, G) contexts."""


class UnknownGenerator(KrlabError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown generator"


class UnknownEntry(KrlabError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown catalog entry"


class BudgetExceeded(KrlabError):
    def __init__(self, message: str, limit: Optional[int] = None) -> None:
        super().__init__(message)
        self.limit = limit


class ElementBudgetExceeded(BudgetExceeded):
    """Semigroup closure grew past the element budget."""


class IterationBudgetExceeded(BudgetExceeded):
    """A fixpoint iteration did not stabilize within budget."""


class CapExceeded(KrlabError):
    """An enumeration produced more results than the caller allowed."""


class IndeterminateBounds(KrlabError):
    def __init__(self, interval: Any) -> None:
        super().__init__(f"complexity not determined: {interval}")
        self.interval = interval
