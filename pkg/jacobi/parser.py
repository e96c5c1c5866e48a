from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .diagram import JacobiDiagram, circle_diagram, theta_diagram, tree_diagram
from .error_handler import ErrorHandler, GenusError, PairingError, ParseError
from .labels import Label
from .scanner import Scanner
from .tokens import Token, TokenType


class Parser:
    """
    Recursive-descent parser for the diagram DSL.

    Grammar:
        label    := ["~"] INT ("+" | "-") ["_" INT]
        labels   := label ("," label)*
        diagram  := "T(" labels ")" | "O(" labels ")"
                  | "theta(" labels? ";" labels? ";" labels? ")"
                  | "G[" trivalent ("," trivalent)* ";" leg ("," leg)* "]"
        trivalent:= "t<i>" "=" "(" id "," id "," id ")"
        leg      := "u(" label ")" "=" id
        necklace := "O(" labels "^" labels ")" | "O(" labels "|" label "|" labels? ")"
    """

    __slots__ = ("tokens", "current", "error_handler", "genus")

    def __init__(
        self,
        tokens: List[Token],
        error_handler: ErrorHandler,
        genus: Optional[int] = None,
    ) -> None:
        self.tokens: List[Token] = tokens
        self.current: int = 0
        self.error_handler: ErrorHandler = error_handler
        self.genus: Optional[int] = genus

    def parse(self) -> JacobiDiagram:
        """
        Parse a single diagram spanning the whole input.

        Returns:
            JacobiDiagram: The parsed diagram.

        Raises:
            ParseError: On syntax errors, genus violations or unpaired half-edges.
        """
        diagram = self.diagram()
        self._consume(TokenType.EOF, "Expect end of input after diagram.")
        return diagram

    def diagram(self) -> JacobiDiagram:
        if self._match(TokenType.TREE):
            return self._tree()
        if self._match(TokenType.CIRCLE):
            return self._circle()
        if self._match(TokenType.THETA):
            return self._theta()
        if self._match(TokenType.GRAPH):
            return self._graph()
        raise self.error_handler.parse_error(
            self._peek(), "Expect T(...), O(...), theta(...) or G[...]."
        )

    def necklace(self) -> Tuple[List[Label], Optional[Label], List[Label]]:
        """
        Parse a necklace with arrow into (before, head bead, after).

        The head bead is None when the arrow points at a midpoint.
        """
        self._consume(TokenType.CIRCLE, "Expect O(...) necklace.")
        self._consume(TokenType.LEFT_PAREN, "Expect '(' after 'O'.")
        before = self.labels()
        head: Optional[Label] = None
        if self._match(TokenType.PIPE):
            head = self.label()
            self._consume(TokenType.PIPE, "Expect '|' after the head bead.")
            after = self.labels(allow_empty=True)
        else:
            self._consume(TokenType.CARET, "Expect '^' or '|' in a necklace.")
            after = self.labels()
        self._consume(TokenType.RIGHT_PAREN, "Expect ')' after necklace.")
        self._consume(TokenType.EOF, "Expect end of input after necklace.")
        return before, head, after

    def _tree(self) -> JacobiDiagram:
        open_paren = self._consume(TokenType.LEFT_PAREN, "Expect '(' after 'T'.")
        labels = self.labels()
        self._consume(TokenType.RIGHT_PAREN, "Expect ')' after labels.")
        if len(labels) < 2:
            raise self.error_handler.parse_error(open_paren, "T(...) needs at least two labels.")
        return tree_diagram(labels)

    def _circle(self) -> JacobiDiagram:
        self._consume(TokenType.LEFT_PAREN, "Expect '(' after 'O'.")
        labels = self.labels()
        self._consume(TokenType.RIGHT_PAREN, "Expect ')' after labels.")
        return circle_diagram(labels)

    def _theta(self) -> JacobiDiagram:
        self._consume(TokenType.LEFT_PAREN, "Expect '(' after 'theta'.")
        blocks: List[List[Label]] = []
        for closing in (TokenType.SEMICOLON, TokenType.SEMICOLON, TokenType.RIGHT_PAREN):
            blocks.append(self.labels(allow_empty=True))
            self._consume(closing, f"Expect '{closing.value}' in theta(...).")
        return theta_diagram(*blocks)

    def _graph(self) -> JacobiDiagram:
        self._consume(TokenType.LEFT_BRACKET, "Expect '[' after 'G'.")
        uses: Dict[str, List[Token]] = {}
        vertices: List[Tuple[str, str, str]] = []
        legs: List[Tuple[str, Label]] = []
        if not self._check(TokenType.SEMICOLON):
            vertices.append(self._trivalent(uses))
            while self._match(TokenType.COMMA):
                vertices.append(self._trivalent(uses))
        self._consume(TokenType.SEMICOLON, "Expect ';' between vertices and legs.")
        if not self._check(TokenType.RIGHT_BRACKET):
            legs.append(self._univalent(uses))
            while self._match(TokenType.COMMA):
                legs.append(self._univalent(uses))
        self._consume(TokenType.RIGHT_BRACKET, "Expect ']' after legs.")
        for name, tokens in uses.items():
            if len(tokens) != 2:
                message = f"Half-edge '{name}' is used {len(tokens)} time(s), expected 2."
                self.error_handler.error(tokens[0], message)
                raise PairingError(tokens[0], message)
        # Each id names an edge; its two occurrences are the two half-edges.
        vertex_darts = [
            tuple((name, self._occurrence(uses, name, token)) for name, token in triple)
            for triple in vertices
        ]
        leg_darts = [
            ((name, self._occurrence(uses, name, token)), label)
            for (name, token), label in legs
        ]
        edges = [((name, 0), (name, 1)) for name in uses]
        return JacobiDiagram.from_parts(vertex_darts, leg_darts, edges)

    @staticmethod
    def _occurrence(uses: Dict[str, List[Token]], name: str, token: Token) -> int:
        return uses[name].index(token)

    def _trivalent(self, uses: Dict[str, List[Token]]):
        name = self._consume(TokenType.IDENTIFIER, "Expect vertex name 't<i>'.")
        if not (name.lexeme.startswith("t") and name.lexeme[1:].isdigit()):
            raise self.error_handler.parse_error(name, "Vertex names have the form t<i>.")
        self._consume(TokenType.EQUAL, "Expect '=' after vertex name.")
        self._consume(TokenType.LEFT_PAREN, "Expect '(' before half-edges.")
        triple = [self._half_edge(uses)]
        for _ in range(2):
            self._consume(TokenType.COMMA, "Expect ',' between half-edges.")
            triple.append(self._half_edge(uses))
        self._consume(TokenType.RIGHT_PAREN, "Expect ')' after three half-edges.")
        return tuple(triple)

    def _univalent(self, uses: Dict[str, List[Token]]):
        self._consume(TokenType.UNIVALENT, "Expect leg 'u(label)=id'.")
        self._consume(TokenType.LEFT_PAREN, "Expect '(' after 'u'.")
        label = self.label()
        self._consume(TokenType.RIGHT_PAREN, "Expect ')' after leg label.")
        self._consume(TokenType.EQUAL, "Expect '=' after leg label.")
        return self._half_edge(uses), label

    def _half_edge(self, uses: Dict[str, List[Token]]) -> Tuple[str, Token]:
        if self._match(TokenType.INTEGER, TokenType.IDENTIFIER, TokenType.TRIVALENT,
                       TokenType.UNIVALENT):
            token = self._previous()
            uses.setdefault(token.lexeme, []).append(token)
            return token.lexeme, token
        raise self.error_handler.parse_error(self._peek(), "Expect half-edge id.")

    def labels(self, allow_empty: bool = False) -> List[Label]:
        """
        Parse a comma-separated label list.

        Args:
            allow_empty (bool): Accept an empty list (theta blocks).
        """
        if allow_empty and not self._check(TokenType.INTEGER, TokenType.TILDE):
            return []
        result = [self.label()]
        while self._match(TokenType.COMMA):
            result.append(self.label())
        return result

    def label(self) -> Label:
        barred = self._match(TokenType.TILDE)
        index = self._consume(TokenType.INTEGER, "Expect label index.")
        if not self._match(TokenType.PLUS, TokenType.MINUS):
            raise self.error_handler.parse_error(self._peek(), "Expect '+' or '-' after label index.")
        sign = 1 if self._previous().type == TokenType.PLUS else -1
        subscript = None
        if self._match(TokenType.UNDERSCORE):
            subscript = self._consume(TokenType.INTEGER, "Expect subscript after '_'.").literal
        if self.genus is not None and index.literal > self.genus:
            message = f"Label index {index.literal} exceeds genus {self.genus}."
            self.error_handler.error(index, message)
            raise GenusError(index, message)
        try:
            return Label(index.literal, sign, subscript, barred)
        except ValueError as error:
            raise self.error_handler.parse_error(index, str(error))

    def _consume(self, type: TokenType, message: str) -> Token:
        if self._check(type):
            return self._advance()
        raise self.error_handler.parse_error(self._peek(), message)

    def _match(self, *types: TokenType) -> bool:
        if self._check(*types):
            self._advance()
            return True
        return False

    def _check(self, *types: TokenType) -> bool:
        return self._peek().type in types

    def _advance(self) -> Token:
        if not self._is_at_end():
            self.current += 1
        return self._previous()

    def _is_at_end(self) -> bool:
        return self._peek().type == TokenType.EOF

    def _peek(self) -> Token:
        return self.tokens[self.current]

    def _previous(self) -> Token:
        return self.tokens[self.current - 1]


def tokenize(text: str, error_handler: ErrorHandler) -> List[Token]:
    """
    Scan `text`, raising on the first lexical error.
    """
    tokens = Scanner(text, error_handler).scan_tokens()
    if error_handler.had_error:
        position = error_handler.positions[0]
        raise ParseError(
            Token(TokenType.EOF, "", None, position), error_handler.first_error()
        )
    return tokens


def parse(text: str, genus: Optional[int] = None) -> JacobiDiagram:
    """
    Parse a diagram written in the DSL.

    Args:
        text (str): The expression, e.g. "theta(1+;2+;1-)".
        genus (Optional[int]): If given, labels with a larger index are rejected.

    Returns:
        JacobiDiagram: The diagram with the planar cyclic orders of the notation.

    Raises:
        ParseError: With the column of the offending token.
    """
    error_handler = ErrorHandler()
    tokens = tokenize(text, error_handler)
    return Parser(tokens, error_handler, genus).parse()
