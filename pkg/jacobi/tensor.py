"""
Tensor words over the labels and the tree map eta.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .diagram import Dart, JacobiDiagram, circle_diagram
from .error_handler import StratumError
from .labels import Label
from .sums import DiagramSum

Word = Tuple[Label, ...]


def _word_key(word: Word) -> Tuple[int, ...]:
    return tuple(label.code for label in word)


class TensorWord:
    """
    Integer combination of words of labels, an element of a tensor power of H.

    Attributes:
        terms (Dict[Word, int]): Nonzero coefficients by word.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, int]] = None) -> None:
        self.terms: Dict[Word, int] = {}
        for word, coefficient in (terms or {}).items():
            self._accumulate(tuple(word), coefficient)

    def _accumulate(self, word: Word, coefficient: int) -> None:
        value = self.terms.get(word, 0) + coefficient
        if value:
            self.terms[word] = value
        else:
            self.terms.pop(word, None)

    @classmethod
    def letter(cls, label: Label) -> TensorWord:
        return cls({(label,): 1})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Word, int]]) -> TensorWord:
        result = cls()
        for word, coefficient in pairs:
            result._accumulate(tuple(word), coefficient)
        return result

    @property
    def lengths(self) -> set:
        return {len(word) for word in self.terms}

    def items(self) -> Iterator[Tuple[Word, int]]:
        for word in sorted(self.terms, key=_word_key):
            yield word, self.terms[word]

    def coefficient(self, word: Iterable[Label]) -> int:
        return self.terms.get(tuple(word), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: TensorWord) -> TensorWord:
        result = TensorWord(self.terms)
        for word, coefficient in other.terms.items():
            result._accumulate(word, coefficient)
        return result

    def __neg__(self) -> TensorWord:
        return TensorWord({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: TensorWord) -> TensorWord:
        return self + (-other)

    def __mul__(self, other):
        """
        Scalar multiple, or concatenation product with another TensorWord.
        """
        if isinstance(other, TensorWord):
            return TensorWord.from_terms(
                (u + v, a * b)
                for u, a in self.terms.items()
                for v, b in other.terms.items()
            )
        return TensorWord({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, scalar: int) -> TensorWord:
        return self * scalar

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorWord):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def reverse(self) -> TensorWord:
        return TensorWord({w[::-1]: c for w, c in self.terms.items()})

    def signed_reverse(self, n: int) -> TensorWord:
        """
        The involution w -> (-1)^n reverse(w).
        """
        return self.reverse() * (-1) ** n

    def mod2(self) -> TensorWord:
        return TensorWord({w: 1 for w, c in self.terms.items() if c % 2})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, coefficient in self.items():
            text = "".join(f"({label})" for label in word)
            parts.append(f"{coefficient:+d}*{text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TensorWord({self})"


def bracket(x: TensorWord, y: TensorWord) -> TensorWord:
    return x * y - y * x


def dynkin(x: TensorWord) -> TensorWord:
    """
    Left-normed bracketing of every word: a1 a2 ... ak -> [..[a1, a2], ..., ak].
    """
    result = TensorWord()
    for word, coefficient in x.terms.items():
        if not word:
            continue
        nested = TensorWord.letter(word[0])
        for label in word[1:]:
            nested = bracket(nested, TensorWord.letter(label))
        result = result + nested * coefficient
    return result


def is_lie_element(x: TensorWord) -> bool:
    """
    Dynkin-Specht-Wever test: a homogeneous x of length k is a Lie element
    exactly when its left-normed bracketing equals k * x.
    """
    lengths = x.lengths
    if not lengths:
        return True
    if len(lengths) != 1:
        return False
    (k,) = lengths
    return dynkin(x) == x * k


def rooted_bracket(diagram: JacobiDiagram, dart: Dart) -> TensorWord:
    """
    Bracket word of the subtree entered through `dart`.

    A leg gives its label; a vertex entered with cyclic order (d, x, y)
    gives B(x) B(y) - B(y) B(x).
    """
    root = diagram.mate[dart]
    if diagram.is_leg_dart(root):
        return TensorWord.letter(diagram.leg_label(root))
    x, y = diagram.siblings(root)
    return bracket(rooted_bracket(diagram, x), rooted_bracket(diagram, y))


def _require_tree(diagram: JacobiDiagram) -> None:
    stats = diagram.stats()
    if not stats.connected or stats.betti != 0:
        raise StratumError(f"eta is defined on connected trees, got {diagram!r}")


def eta_components(diagram: JacobiDiagram) -> List[Tuple[Label, TensorWord]]:
    """
    For every leg v, its label and the bracket word of the tree rooted at v.

    Raises:
        StratumError: If the diagram is not a connected tree.
    """
    _require_tree(diagram)
    return [(label, rooted_bracket(diagram, dart)) for dart, label in diagram.legs]


def eta(diagram: JacobiDiagram) -> TensorWord:
    """
    The image of a tree under eta followed by the inclusion into words:
    the sum over legs v of l(v) followed by the bracket word rooted at v.

    Returns:
        TensorWord: Homogeneous of length ideg + 2.

    Raises:
        StratumError: If the diagram is not a connected tree.
    """
    result = TensorWord()
    for label, word in eta_components(diagram):
        result = result + TensorWord.letter(label) * word
    return result


def eta_sum(x: DiagramSum) -> TensorWord:
    result = TensorWord()
    for diagram, coefficient in x.terms.items():
        result = result + eta(diagram) * coefficient
    return result


def palindrome_circle(word: Word) -> JacobiDiagram:
    """
    O(a1, ..., am, ..., a1) for the word a1 ... am.
    """
    return circle_diagram(list(word) + list(word[-2::-1]))


def iota_eta_diagram(diagram: JacobiDiagram) -> DiagramSum:
    """
    Send each word a1..am of eta(J) to O(a1, ..., am, ..., a1), mod 2.

    This is the blow-up image of the tree map into the symmetric one-loop
    diagrams of internal degree 2 ideg + 3.
    """
    return DiagramSum.from_terms(
        (palindrome_circle(word), coefficient)
        for word, coefficient in eta(diagram).terms.items()
    ).mod2()
