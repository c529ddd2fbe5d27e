from typing import Any, Dict, List, Optional, Tuple


class STGError(Exception):
    """Base exception for the state-transition grammar parser"""

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary format"""
        return {"error": type(self).__name__, "message": self.message}


class NotationError(STGError):
    """Malformed state notation"""

    def __init__(self, message: str, position: int = 0):
        self.position = position
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "position": self.position}


class CorpusFormatError(STGError):
    """Malformed treebank line"""

    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "line": self.line, "column": self.column}


class CorpusValidationError(STGError):
    """One or more sentences in a treebank fail validation"""

    def __init__(self, violations: List[Tuple[int, Any]]):
        self.violations = violations
        details = "; ".join(f"line {line}: {violation}" for line, violation in violations)
        super().__init__(f"{len(violations)} invalid analyses: {details}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            **super().to_dict(),
            "violations": [{"line": line, "violation": str(v)} for line, v in self.violations],
        }


class CoordinationError(STGError):
    """Schema cannot be turned into a coordination schema"""


class NoTransitionDataError(STGError):
    """No distribution is available for a word"""

    def __init__(self, surface: str, message: Optional[str] = None):
        self.surface = surface
        super().__init__(message or f"no transition data for {surface!r}")


class NoScoreError(STGError):
    """A transition of a parse lies outside the model's support"""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"token {position}: {message}")


class SearchBudgetExceeded(STGError):
    """Exhaustive search expanded more nodes than allowed"""


class EmptySentenceError(STGError):
    """Decoder was given no tokens"""

    def __init__(self):
        super().__init__("cannot decode an empty sentence")


class ModelFormatError(STGError):
    """Malformed model file"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "line": self.line}
