class SGCAError(Exception):
    """Base class for all errors raised by this package."""


class IndexParityError(SGCAError, ValueError):
    pass


class GradingError(SGCAError, ValueError):
    pass


class WindowTooSmall(SGCAError, ValueError):
    pass


class DomainError(SGCAError, ValueError):
    pass


class FractionalExponentError(SGCAError, ValueError):
    pass


class FitInconsistent(SGCAError):
    pass


class AnsatzInsufficient(SGCAError):
    pass


class ParseError(SGCAError, ValueError):
    """Malformed literal; carries the offending text and a character position."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(message)

    def annotated(self) -> str:
        return f"{self.args[0]} at position {self.pos}:\n  {self.text}\n  {' ' * self.pos}^"
