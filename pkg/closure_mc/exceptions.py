"""
Exceptions raised by closure_mc.

Every error the package raises on purpose derives from ClosureModelError, so
front ends can catch one type and map it to an exit status.
"""

from typing import Optional


class ClosureModelError(Exception):
    """Base class for all closure_mc errors"""


class InvalidPointSetError(ClosureModelError, ValueError):
    """A point or point set does not fit the space it is used with"""


class SizeLimitError(ClosureModelError):
    """An exhaustive procedure was asked to run on a too large input"""


class SpecProgramError(ClosureModelError):
    """A spec program is well formed but cannot be executed"""


class FormulaSyntaxError(ClosureModelError, ValueError):
    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        text: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.text = text
        self.message = message
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ModelFormatError(ClosureModelError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidSpaceError(ClosureModelError, ValueError):
    """A space cannot be built from the given parameters"""


class TextEncodingError(ClosureModelError, ValueError):
    """A text input is not valid UTF-8"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
