from __future__ import annotations

from typing import List, Optional

from .error_handler import ErrorHandler
from .tokens import KEYWORDS, SINGLE_CHARACTERS, Token, TokenType


class Scanner:
    """
    Scanner for the diagram DSL.

    Tokenizes expressions such as "T(1+,2-)", "theta(1+;;~2-_1)" or
    "G[t1=(a,b,c); u(1+)=a, ...]". Positions are column offsets into the
    input so that errors can point at the offending character.
    """

    __slots__ = ("source", "error_handler", "tokens", "start", "current")

    def __init__(self, source: str, error_handler: ErrorHandler):
        self.source: str = source
        self.error_handler: ErrorHandler = error_handler
        self.tokens: List[Token] = []
        self.start: int = 0
        self.current: int = 0

    def scan_tokens(self) -> List[Token]:
        """
        Tokenize the entire source string.

        Returns:
            List[Token]: The tokens, terminated by EOF.
        """
        while not self._is_at_end():
            self.start = self.current
            self.scan_token()
        self.tokens.append(
            Token(type=TokenType.EOF, lexeme="", literal=None, position=self.current)
        )
        return self.tokens

    def scan_token(self) -> None:
        c: str = self._advance()
        match c:
            case " " | "\r" | "\t" | "\n":
                ...
            case _ if c in SINGLE_CHARACTERS:
                self.add_token(SINGLE_CHARACTERS[c])
            case _:
                if c.isdigit():
                    self.integer()
                elif c.isalpha():
                    self.identifier()
                else:
                    self.error_handler.error(
                        self.start, f"Unexpected character {c!r}"
                    )

    def add_token(self, type: TokenType, literal: Optional[object] = None) -> None:
        text = self.source[self.start : self.current]
        self.tokens.append(
            Token(type=type, lexeme=text, literal=literal, position=self.start)
        )

    def integer(self) -> None:
        while self._peek().isdigit():
            self._advance()
        self.add_token(TokenType.INTEGER, int(self.source[self.start : self.current]))

    def identifier(self) -> None:
        """
        Handle keywords and identifiers such as half-edge names or "t3".
        """
        while self._peek().isalnum():
            self._advance()
        text: str = self.source[self.start : self.current]
        self.add_token(KEYWORDS.get(text, TokenType.IDENTIFIER))

    def _is_at_end(self) -> bool:
        return self.current >= len(self.source)

    def _advance(self) -> str:
        self.current += 1
        return self.source[self.current - 1]

    def _peek(self) -> str:
        if self._is_at_end():
            return "\0"
        return self.source[self.current]
