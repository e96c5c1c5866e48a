from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Optional, Set, Tuple

from .canonical import canonicalize, sort_key, unoriented_form
from .diagram import JacobiDiagram


class DiagramSum:
    """
    Formal integer combination of canonical Jacobi diagrams.

    Keys are canonicalized on insertion and zero coefficients are never
    stored, so two sums are equal exactly when they agree term by term.
    """

    __slots__ = ("terms",)

    def __init__(
        self, terms: Optional[Mapping[JacobiDiagram, int]] = None
    ) -> None:
        self.terms: Dict[JacobiDiagram, int] = {}
        for diagram, coefficient in (terms or {}).items():
            self._accumulate(diagram, coefficient)

    def _accumulate(self, diagram: JacobiDiagram, coefficient: int) -> None:
        if not coefficient:
            return
        key = canonicalize(diagram)
        value = self.terms.get(key, 0) + coefficient
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)

    @classmethod
    def of(cls, diagram: JacobiDiagram, coefficient: int = 1) -> DiagramSum:
        return cls({diagram: coefficient})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[JacobiDiagram, int]]) -> DiagramSum:
        result = cls()
        for diagram, coefficient in pairs:
            result._accumulate(diagram, coefficient)
        return result

    def items(self) -> Iterator[Tuple[JacobiDiagram, int]]:
        """
        Terms in a deterministic order.
        """
        for diagram in sorted(self.terms, key=sort_key):
            yield diagram, self.terms[diagram]

    def coefficient(self, diagram: JacobiDiagram) -> int:
        return self.terms.get(canonicalize(diagram), 0)

    def __iter__(self) -> Iterator[Tuple[JacobiDiagram, int]]:
        return self.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: DiagramSum) -> DiagramSum:
        result = DiagramSum()
        result.terms = dict(self.terms)
        for diagram, coefficient in other.terms.items():
            result._accumulate(diagram, coefficient)
        return result

    def __neg__(self) -> DiagramSum:
        result = DiagramSum()
        result.terms = {d: -c for d, c in self.terms.items()}
        return result

    def __sub__(self, other: DiagramSum) -> DiagramSum:
        return self + (-other)

    def __mul__(self, scalar: int) -> DiagramSum:
        result = DiagramSum()
        if scalar:
            result.terms = {d: c * scalar for d, c in self.terms.items()}
        return result

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def mod2(self) -> DiagramSum:
        """
        The mod-2 view: coefficients reduced to 0 or 1.
        """
        result = DiagramSum()
        result.terms = {d: 1 for d, c in self.terms.items() if c % 2}
        return result

    def as_reduce(self) -> DiagramSum:
        """
        Normal form modulo the AS relation.

        Each term is replaced by its signed class representative; classes with
        an odd automorphism are 2-torsion and keep their coefficient mod 2.
        """
        totals: Dict[JacobiDiagram, int] = {}
        torsion: Set[JacobiDiagram] = set()
        for diagram, coefficient in self.terms.items():
            form = unoriented_form(diagram)
            key = form.representative
            totals[key] = totals.get(key, 0) + form.sign * coefficient
            if form.two_torsion:
                torsion.add(key)
        return DiagramSum.from_terms(
            (key, value % 2 if key in torsion else value)
            for key, value in totals.items()
        )

    def strata(self) -> Set[Tuple[int, int]]:
        """
        (internal degree, Betti number) pairs of the terms.
        """
        return {(d.ideg, d.betti) for d in self.terms}

    def map_diagrams(self, fn) -> DiagramSum:
        """
        Extend a diagram-valued linear map term-wise; `fn` returns a DiagramSum.
        """
        result = DiagramSum()
        for diagram, coefficient in self.terms.items():
            for image, value in fn(diagram).terms.items():
                result._accumulate(image, coefficient * value)
        return result

    def __str__(self) -> str:
        from .printer import format_sum

        return format_sum(self)

    def __repr__(self) -> str:
        return f"DiagramSum({self})"


def diagram_sum(*pairs: Tuple[JacobiDiagram, int]) -> DiagramSum:
    return DiagramSum.from_terms(pairs)
