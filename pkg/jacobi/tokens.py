from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Final, Optional


class TokenType(Enum):
    """
    Enumeration of the token types of the diagram DSL.

    Categories:
        Single-character tokens: punctuation of the T/O/theta/G forms.
        Literals: integers.
        Keywords: the diagram constructors.
        EOF: Represents the end of the input.
    """

    # Single-character tokens
    LEFT_PAREN = "("
    RIGHT_PAREN = ")"
    LEFT_BRACKET = "["
    RIGHT_BRACKET = "]"
    COMMA = ","
    SEMICOLON = ";"
    PLUS = "+"
    MINUS = "-"
    UNDERSCORE = "_"
    TILDE = "~"
    EQUAL = "="
    CARET = "^"
    PIPE = "|"

    # Literals
    INTEGER = "INTEGER"
    IDENTIFIER = "IDENTIFIER"

    # Keywords
    TREE = "T"
    CIRCLE = "O"
    THETA = "theta"
    GRAPH = "G"
    TRIVALENT = "t"
    UNIVALENT = "u"

    # End of input
    EOF = "EOF"


class Token:
    """
    Represents a token produced by the scanner.

    Attributes:
        type (TokenType): The type of the token.
        lexeme (str): The text of the token.
        literal (Optional[Any]): The integer value of INTEGER tokens.
        position (int): Column offset of the first character in the input.
    """

    __slots__ = ("type", "lexeme", "literal", "position")

    def __init__(
        self, type: TokenType, lexeme: str, literal: Optional[Any], position: int
    ) -> None:
        self.type: TokenType = type
        self.lexeme: str = lexeme
        self.literal: Optional[Any] = literal
        self.position: int = position

    def __str__(self) -> str:
        return f"{self.type} {self.lexeme} {self.literal}"

    def __repr__(self) -> str:
        return f"Token({self.type.name}, {self.lexeme!r}, {self.position})"


KEYWORDS: Final[Dict[str, TokenType]] = {
    token_type.value: token_type
    for token_type in (
        TokenType.TREE,
        TokenType.CIRCLE,
        TokenType.THETA,
        TokenType.GRAPH,
        TokenType.TRIVALENT,
        TokenType.UNIVALENT,
    )
}

SINGLE_CHARACTERS: Final[Dict[str, TokenType]] = {
    token_type.value: token_type
    for token_type in (
        TokenType.LEFT_PAREN,
        TokenType.RIGHT_PAREN,
        TokenType.LEFT_BRACKET,
        TokenType.RIGHT_BRACKET,
        TokenType.COMMA,
        TokenType.SEMICOLON,
        TokenType.PLUS,
        TokenType.MINUS,
        TokenType.UNDERSCORE,
        TokenType.TILDE,
        TokenType.EQUAL,
        TokenType.CARET,
        TokenType.PIPE,
    )
}
