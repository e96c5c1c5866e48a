"""
Relators and integer presentations of the modules of connected Jacobi
diagrams of fixed internal degree, loop number and genus.
"""

from __future__ import annotations

import csv
import logging
from itertools import product
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    TextIO,
    Tuple,
    Union,
)

from .canonical import unoriented_form
from .diagram import Dart, JacobiDiagram, theta_diagram
from .enumeration import as_classes, check_degree, enumerate_diagrams, validate_stratum
from .error_handler import StratumError
from .labels import Label, alphabet
from .printer import SCHEMA_VERSION, format_diagram, format_sum
from .smith import Coordinates, SmithDecomposition
from .sums import DiagramSum

logger = logging.getLogger(__name__)

Element = Union[JacobiDiagram, DiagramSum]
Term = Tuple[JacobiDiagram, int]


def as_sum(x: Element) -> DiagramSum:
    return DiagramSum.of(x) if isinstance(x, JacobiDiagram) else x


def as_relator(diagram: JacobiDiagram, vertex: int) -> DiagramSum:
    """
    J + J', J' being J with the cyclic order at `vertex` reversed.
    """
    return DiagramSum.from_terms([(diagram, 1), (diagram.flip(vertex), 1)])


def internal_edges(diagram: JacobiDiagram) -> List[Dart]:
    """
    One half-edge per edge joining two distinct trivalent vertices.
    """
    found = []
    for dart, other in enumerate(diagram.mate):
        if dart > other or diagram.is_leg_dart(dart) or diagram.is_leg_dart(other):
            continue
        if diagram.owner(dart) != diagram.owner(other):
            found.append(dart)
    return found


def _ihx_terms(diagram: JacobiDiagram, dart: Dart) -> List[Term]:
    # u = (e, a, b) and w = (e', c, d) around the edge e e'
    u, w = diagram.owner(dart), diagram.owner(diagram.mate[dart])
    e, e_ = dart, diagram.mate[dart]
    a, b = diagram.siblings(e)
    c, d = diagram.siblings(e_)
    terms: List[Term] = []
    for u_triple, w_triple in (
        ((e, a, b), (e_, c, d)),
        ((e, b, c), (e_, a, d)),
        ((e, c, a), (e_, b, d)),
    ):
        vertices = list(diagram.vertices)
        vertices[u] = u_triple
        vertices[w] = w_triple
        terms.append((JacobiDiagram(vertices, diagram.legs, diagram.mate), 1))
    return terms


def ihx_relator(diagram: JacobiDiagram, dart: Dart) -> DiagramSum:
    """
    The three-term relator I + H + X at the internal edge containing `dart`.

    With u = (e, a, b) and w = (e', c, d) the other two terms move the
    half-edges around the edge: u = (e, b, c), w = (e', a, d) and
    u = (e, c, a), w = (e', b, d).

    Raises:
        ValueError: If the edge does not join two distinct trivalent vertices.
    """
    other = diagram.mate[dart]
    if (
        diagram.is_leg_dart(dart)
        or diagram.is_leg_dart(other)
        or diagram.owner(dart) == diagram.owner(other)
    ):
        raise ValueError(f"half-edge {dart} does not lie on an internal edge")
    return DiagramSum.from_terms(_ihx_terms(diagram, dart))


def relators(
    n: int, l: int, g: int, max_degree: Optional[int] = None
) -> List[DiagramSum]:
    """
    AS, IHX and self-loop relators over the oriented diagrams of a stratum.

    Args:
        n (int): Internal degree.
        l (int): Loop number.
        g (int): Genus.
        max_degree (Optional[int]): Degree cap.

    Returns:
        List[DiagramSum]: Per diagram in enumeration order, the AS relators
        of its vertices, the IHX relators of its internal edges and, if it
        has a self-loop, the diagram itself.

    Raises:
        CapExceededError: If n is above the cap.
    """
    result: List[DiagramSum] = []
    for diagram in enumerate_diagrams(n, l, g, max_degree):
        result.extend(as_relator(diagram, v) for v in range(diagram.ideg))
        result.extend(ihx_relator(diagram, e) for e in internal_edges(diagram))
        if diagram.has_self_loop():
            result.append(DiagramSum.of(diagram))
    return result


class ModuleInvariants(NamedTuple):
    """
    Rank and nontrivial invariant factors of a finitely generated abelian group.
    """

    rank: int
    invariant_factors: Tuple[int, ...]

    @property
    def torsion_free(self) -> bool:
        return not self.invariant_factors

    def two_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d % 2 == 0)


class ModulePresentation:
    """
    Integer presentation of a stratum of connected Jacobi diagrams, possibly
    divided by extra relators.

    In the AS-reduced form (the default) there is one generator per class of
    diagrams modulo AS; classes with an odd automorphism carry the relator
    2 * class. Otherwise every oriented diagram is a generator and the AS
    relators are listed explicitly.

    Attributes:
        n (int): Internal degree.
        l (int): Loop number.
        g (int): Genus.
        generators (Tuple[JacobiDiagram, ...]): Generators in a fixed order.
        relators (Tuple[Dict[int, int], ...]): Sparse relator rows.
        extras (Tuple[DiagramSum, ...]): Quotient relators given by the caller.
        as_reduced (bool): Whether generators are AS classes.
    """

    __slots__ = (
        "n",
        "l",
        "g",
        "generators",
        "relators",
        "extras",
        "as_reduced",
        "_index",
        "_smith",
    )

    def __init__(
        self,
        n: int,
        l: int,
        g: int,
        generators: Sequence[JacobiDiagram],
        relators: Sequence[Mapping[int, int]],
        extras: Sequence[DiagramSum] = (),
        as_reduced: bool = True,
    ) -> None:
        self.n = n
        self.l = l
        self.g = g
        self.generators: Tuple[JacobiDiagram, ...] = tuple(generators)
        self.relators: Tuple[Dict[int, int], ...] = tuple(dict(r) for r in relators)
        self.extras: Tuple[DiagramSum, ...] = tuple(extras)
        self.as_reduced = as_reduced
        self._index: Dict[JacobiDiagram, int] = {
            d: i for i, d in enumerate(self.generators)
        }
        self._smith: Optional[SmithDecomposition] = None
        for row in self.relators:
            for column in row:
                if not 0 <= column < len(self.generators):
                    raise ValueError(f"relator column {column} out of range")

    @property
    def smith(self) -> SmithDecomposition:
        if self._smith is None:
            self._smith = SmithDecomposition.compute(self.relators, len(self.generators))
        return self._smith

    def contains(self, diagram: JacobiDiagram) -> bool:
        stats = diagram.stats()
        return (
            stats.connected
            and stats.ideg == self.n
            and stats.betti == self.l
            and all(not lb.is_lifted and lb.index <= self.g for lb in diagram.labels)
        )

    def vector(self, x: Element) -> Dict[int, int]:
        """
        Generator coordinates of an element before reduction.

        Raises:
            StratumError: If a term lies outside the stratum.
        """
        result: Dict[int, int] = {}
        for diagram, coefficient in as_sum(x).terms.items():
            if not self.contains(diagram):
                raise StratumError(
                    f"{format_diagram(diagram)} is not in the stratum "
                    f"(n={self.n}, l={self.l}, g={self.g})"
                )
            if self.as_reduced:
                form = unoriented_form(diagram)
                column, value = self._index[form.representative], form.sign * coefficient
            else:
                column, value = self._index[diagram], coefficient
            total = result.get(column, 0) + value
            if total:
                result[column] = total
            else:
                result.pop(column, None)
        return result

    def element(self, vector: Mapping[int, int]) -> DiagramSum:
        return DiagramSum.from_terms(
            (self.generators[c], v) for c, v in vector.items()
        )

    def __repr__(self) -> str:
        return (
            f"ModulePresentation(n={self.n}, l={self.l}, g={self.g}, "
            f"generators={len(self.generators)}, relators={len(self.relators)}, "
            f"extras={len(self.extras)})"
        )


def _term_rows(terms: Iterable[Term], index: Mapping[JacobiDiagram, int]) -> Dict[int, int]:
    row: Dict[int, int] = {}
    for diagram, coefficient in terms:
        form = unoriented_form(diagram)
        column = index[form.representative]
        row[column] = row.get(column, 0) + form.sign * coefficient
    return {c: v for c, v in row.items() if v}


def build_presentation(
    n: int,
    l: int,
    g: int,
    quotient_extras: Iterable[Element] = (),
    as_reduced: bool = True,
    max_degree: Optional[int] = None,
) -> ModulePresentation:
    """
    Assemble the presentation of the stratum (n, l, g) modulo `quotient_extras`.

    Args:
        n (int): Internal degree.
        l (int): Loop number.
        g (int): Genus.
        quotient_extras: Elements of the same stratum to divide out.
        as_reduced (bool): Use AS classes as generators.
        max_degree (Optional[int]): Degree cap.

    Returns:
        ModulePresentation: The presentation.

    Raises:
        CapExceededError: If n is above the cap.
        StratumError: If the stratum is invalid or an extra leaves it.
    """
    check_degree(n, max_degree)
    validate_stratum(n, l, g)
    extras = [as_sum(x) for x in quotient_extras]
    rows: List[Dict[int, int]] = []
    if as_reduced:
        generators = list(as_classes(n, l, g))
        index = {d: i for i, d in enumerate(generators)}
        for column, diagram in enumerate(generators):
            if unoriented_form(diagram).two_torsion:
                rows.append({column: 2})
            if diagram.has_self_loop():
                rows.append({column: 1})
            for dart in internal_edges(diagram):
                row = _term_rows(_ihx_terms(diagram, dart), index)
                if row:
                    rows.append(row)
    else:
        generators = enumerate_diagrams(n, l, g, max_degree)
        index = {d: i for i, d in enumerate(generators)}
        for diagram in generators:
            sums = [as_relator(diagram, v) for v in range(diagram.ideg)]
            sums += [ihx_relator(diagram, e) for e in internal_edges(diagram)]
            if diagram.has_self_loop():
                sums.append(DiagramSum.of(diagram))
            for relator in sums:
                row = {index[d]: c for d, c in relator.terms.items()}
                if row:
                    rows.append(row)
    base = ModulePresentation(n, l, g, generators, rows, (), as_reduced)
    rows.extend(row for row in (base.vector(extra) for extra in extras) if row)
    presentation = ModulePresentation(n, l, g, generators, rows, extras, as_reduced)
    logger.debug(
        "presentation (n=%d, l=%d, g=%d): %d generators, %d relators",
        n,
        l,
        g,
        len(generators),
        len(rows),
    )
    return presentation


def rank_and_torsion(presentation: ModulePresentation) -> ModuleInvariants:
    """
    Rank and invariant factors (those above 1) of the presented module.
    """
    smith = presentation.smith
    return ModuleInvariants(smith.rank, tuple(smith.torsion))


def reduce(x: Element, presentation: ModulePresentation) -> Coordinates:
    """
    Normal-form coordinates of `x` in the presented module.

    Torsion coordinates are taken modulo their invariant factor, so `x` is
    zero exactly when every coordinate vanishes.

    Raises:
        StratumError: If a term of `x` lies outside the stratum.
    """
    return presentation.smith.coordinates(presentation.vector(x))


def is_zero(x: Element, presentation: ModulePresentation) -> bool:
    return reduce(x, presentation).is_zero()


def reduce_mod2(x: Element, presentation: ModulePresentation) -> Tuple[int, ...]:
    """
    Coordinates of `x` in the presented module tensored with Z/2.
    """
    return presentation.smith.coordinates_mod2(presentation.vector(x))


def torsion_mod2(x: Element, presentation: ModulePresentation) -> Tuple[int, ...]:
    """
    Coordinates of a torsion element along the Z/2 summands.
    """
    return presentation.smith.torsion_coordinates_mod2(presentation.vector(x))


def _blocks(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _blocks(total - first, parts - 1):
            yield (first,) + rest


def _palindrome(word: Sequence[Label]) -> bool:
    return list(word) == list(word)[::-1]


def theta_submodule_generators(
    n: int, g: int, symmetric_only: bool = False
) -> List[DiagramSum]:
    """
    The diagrams theta(a; b; c) with three nonempty blocks and internal degree n.

    Args:
        n (int): Internal degree; the blocks have p + q + r = n - 2 labels.
        g (int): Genus.
        symmetric_only (bool): Keep only diagrams whose blocks are palindromes.

    Returns:
        List[DiagramSum]: One sum per distinct diagram, in a fixed order.
    """
    labels = alphabet(g)
    found: Dict[JacobiDiagram, None] = {}
    if n - 2 < 3:
        return []
    for p, q, r in _blocks(n - 2, 3):
        for word in product(labels, repeat=n - 2):
            top, chord, bottom = word[:p], word[p:p + q], word[p + q:]
            if symmetric_only and not (
                _palindrome(top) and _palindrome(chord) and _palindrome(bottom)
            ):
                continue
            found.setdefault(theta_diagram(top, chord, bottom).canonical())
    return [DiagramSum.of(d) for d in found]


def presentation_to_json(presentation: ModulePresentation) -> Dict[str, Any]:
    """
    Generators as DSL strings and relators as sparse (row, column, value) triplets.
    """
    return {
        "schema_version": SCHEMA_VERSION,
        "n": presentation.n,
        "l": presentation.l,
        "g": presentation.g,
        "as_reduced": presentation.as_reduced,
        "generators": [format_diagram(d) for d in presentation.generators],
        "relators": [
            [row, column, value]
            for row, relator in enumerate(presentation.relators)
            for column, value in sorted(relator.items())
        ],
        "extras": [format_sum(x) for x in presentation.extras],
    }


def invariants_to_json(
    presentation: ModulePresentation, invariants: ModuleInvariants
) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": presentation.n,
        "l": presentation.l,
        "g": presentation.g,
        "generators": len(presentation.generators),
        "relators": len(presentation.relators),
        "rank": invariants.rank,
        "invariant_factors": list(invariants.invariant_factors),
    }


RANK_TABLE_FIELDS = ("n", "l", "g", "generators", "rank", "torsion")


def write_rank_table(records: Iterable[Mapping[str, Any]], stream: TextIO) -> None:
    """
    Write rank reports as CSV; torsion is written as e.g. "2 2 4".
    """
    writer = csv.DictWriter(stream, fieldnames=RANK_TABLE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(
            {
                "n": record["n"],
                "l": record["l"],
                "g": record["g"],
                "generators": record["generators"],
                "rank": record["rank"],
                "torsion": " ".join(str(d) for d in record["invariant_factors"]),
            }
        )
