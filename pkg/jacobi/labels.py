from __future__ import annotations

from dataclasses import dataclass, replace
from functools import total_ordering
from typing import Final, List, Optional

SUBSCRIPT_SLOTS: Final[int] = 64


@total_ordering
@dataclass(frozen=True)
class Label:
    """
    Label of a univalent vertex.

    A plain label is one of 1+, 1-, ..., g+, g-. A lifted label additionally
    carries a positive subscript and may be barred.

    Attributes:
        index (int): The index i in 1..g.
        sign (int): +1 or -1.
        subscript (Optional[int]): The lift subscript, None for plain labels.
        barred (bool): Whether the lifted label carries an overline.
    """

    index: int
    sign: int
    subscript: Optional[int] = None
    barred: bool = False

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"label index must be positive, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"label sign must be +1 or -1, got {self.sign}")
        if self.subscript is not None and not 0 < self.subscript < SUBSCRIPT_SLOTS:
            raise ValueError(f"label subscript out of range: {self.subscript}")
        if self.barred and self.subscript is None:
            raise ValueError("only lifted labels can be barred")

    @property
    def code(self) -> int:
        """
        Positive integer that orders labels; used by canonical encodings.
        """
        base = self.index * 2 + (1 if self.sign < 0 else 0)
        return (base * SUBSCRIPT_SLOTS + (self.subscript or 0)) * 2 + int(self.barred) + 1

    @property
    def is_lifted(self) -> bool:
        return self.subscript is not None

    def star(self) -> Label:
        """
        The label with opposite sign, (i+)* = i- and (i-)* = i+.
        """
        return replace(self, sign=-self.sign)

    def bar(self) -> Label:
        return replace(self, barred=not self.barred)

    def plain(self) -> Label:
        """
        Projection of a lifted label onto {1+, ..., g-}.
        """
        if self.subscript is None:
            return self
        return Label(self.index, self.sign)

    def lift(self, subscript: int, barred: bool = False) -> Label:
        return Label(self.index, self.sign, subscript, barred)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Label):
            return NotImplemented
        return self.code < other.code

    def __str__(self) -> str:
        text = f"{self.index}{'+' if self.sign > 0 else '-'}"
        if self.subscript is not None:
            text += f"_{self.subscript}"
        return f"~{text}" if self.barred else text

    def __repr__(self) -> str:
        return f"Label({self})"

    @classmethod
    def parse(cls, text: str) -> Label:
        """
        Parse a single label such as "1+", "2-_3" or "~1+_2".

        Raises:
            ValueError: If the text is not a label.
        """
        barred = text.startswith("~")
        body = text[1:] if barred else text
        head, _, sub = body.partition("_")
        if len(head) < 2 or head[-1] not in "+-" or not head[:-1].isdigit():
            raise ValueError(f"not a label: {text!r}")
        subscript = int(sub) if sub else None
        return cls(int(head[:-1]), 1 if head[-1] == "+" else -1, subscript, barred)


def alphabet(genus: int) -> List[Label]:
    """
    The plain labels 1+, 1-, ..., g+, g- in code order.

    Args:
        genus (int): The genus g >= 1.

    Returns:
        List[Label]: 2g labels.
    """
    if genus < 1:
        raise ValueError(f"genus must be at least 1, got {genus}")
    return [Label(i, s) for i in range(1, genus + 1) for s in (1, -1)]
