from __future__ import annotations

from typing import List, Union

from .tokens import Token


class JacobiError(RuntimeError):
    """
    Base class of every error raised by the diagram library.
    """

    ...


class ParseError(JacobiError):
    """
    Represents a syntax error in the diagram DSL.

    Attributes:
        token (Token): The token where the error occurred.
    """

    __slots__ = ("token",)

    def __init__(self, token: Token, message: str) -> None:
        """
        Initialize a ParseError with a specific token and message.

        Args:
            token (Token): The token where the error occurred.
            message (str): The error message.
        """
        super().__init__(message)
        self.token: Token = token

    @property
    def position(self) -> int:
        return self.token.position


class GenusError(ParseError):
    """
    Raised when a label index exceeds the declared genus.
    """

    ...


class PairingError(ParseError):
    """
    Raised when a generic G[...] diagram uses a half-edge id other than exactly twice.
    """

    ...


class StratumError(JacobiError):
    """
    Raised when a diagram lies outside the stratum an operation expects, or
    fails a loop-number precondition.
    """

    ...


class CapExceededError(JacobiError):
    """
    Raised when a computation is requested beyond the configured degree cap.

    Attributes:
        requested (int): The internal degree that was asked for.
        cap (int): The configured maximum.
    """

    __slots__ = ("requested", "cap")

    def __init__(self, requested: int, cap: int) -> None:
        super().__init__(f"internal degree {requested} exceeds the configured cap {cap}")
        self.requested = requested
        self.cap = cap


class LiftError(JacobiError):
    """
    Raised for invalid lifted diagrams and symmetry witnesses.
    """

    ...


class WeightError(JacobiError):
    """
    Raised for invalid structure constants or failed halving of a weight.
    """

    ...


class ErrorHandler:
    """
    Collects positioned errors reported while scanning and parsing the DSL.
    """

    __slots__ = ("errors", "positions", "had_error")

    def __init__(self) -> None:
        self.errors: List[str] = []
        self.positions: List[int] = []
        self.had_error: bool = False

    def error(self, position_or_token: Union[int, Token], message: str) -> None:
        """
        Report an error at a given column or token.

        Args:
            position_or_token (Union[int, Token]): Column offset or token of the error.
            message (str): The error message.
        """
        position = (
            position_or_token.position
            if isinstance(position_or_token, Token)
            else position_or_token
        )
        self.had_error = True
        self.positions.append(position)
        self.errors.append(f"[col {position}] Error: {message}")

    def parse_error(self, token: Token, message: str) -> ParseError:
        """
        Record a parse error and return the exception for the caller to raise.

        Args:
            token (Token): The token where the error occurred.
            message (str): The error message.

        Returns:
            ParseError: The exception describing the error.
        """
        self.error(token, message)
        return ParseError(token, message)

    def first_error(self) -> str:
        """
        The first recorded message, used as the exception text by callers.

        Returns:
            str: The first message, or an empty string if nothing was reported.
        """
        return self.errors[0] if self.errors else ""

    def reset(self) -> None:
        """
        Forget every recorded error so the handler can serve another input.
        """
        self.errors.clear()
        self.positions.clear()
        self.had_error = False

