"""
Canonical forms of Jacobi diagrams.

The oriented form respects cyclic orders and identifies isomorphic diagrams.
The unoriented form forgets cyclic orders: it names the AS class of a
diagram together with the sign relating the diagram to the class
representative.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .diagram import Dart, JacobiDiagram

logger = logging.getLogger(__name__)

Code = Tuple[Tuple[int, int, int], ...]


class UnorientedForm(NamedTuple):
    """
    AS class of a diagram.

    Attributes:
        representative: Canonical diagram of the class, every vertex read in
            increasing half-edge order.
        sign: +1 or -1 with diagram = sign * representative modulo AS.
        two_torsion: True if the diagram has an automorphism reversing an odd
            number of cyclic orders, so that 2 * representative = 0.
    """

    representative: JacobiDiagram
    sign: int
    two_torsion: bool


def _label_code(diagram: JacobiDiagram, dart: Dart) -> int:
    return diagram.leg_label(dart).code if diagram.is_leg_dart(dart) else 0


def refine_colours(diagram: JacobiDiagram) -> List[int]:
    """
    Colour refinement on half-edges, ignoring cyclic orders.

    Returns:
        List[int]: An isomorphism-invariant colour per half-edge.
    """
    size = len(diagram.mate)
    colours = _rank(
        [(int(diagram.is_leg_dart(d)), _label_code(diagram, d)) for d in range(size)]
    )
    classes = len(set(colours))
    while True:
        signatures = []
        for d in range(size):
            siblings = () if diagram.is_leg_dart(d) else tuple(
                sorted(colours[s] for s in diagram.siblings(d))
            )
            signatures.append((colours[d], colours[diagram.mate[d]], siblings))
        refined = _rank(signatures)
        refined_classes = len(set(refined))
        colours = refined
        if refined_classes == classes:
            return colours
        classes = refined_classes


def _rank(values: Sequence) -> List[int]:
    order = {value: rank for rank, value in enumerate(sorted(set(values)))}
    return [order[value] for value in values]


def _start_darts(darts: Sequence[Dart], colours: Sequence[int]) -> List[Dart]:
    by_colour: Dict[int, List[Dart]] = {}
    for d in darts:
        by_colour.setdefault(colours[d], []).append(d)
    best = min(by_colour, key=lambda colour: (len(by_colour[colour]), colour))
    return by_colour[best]


def _oriented_walk(diagram: JacobiDiagram, start: Dart) -> Tuple[Code, List[Dart]]:
    number: Dict[Dart, int] = {start: 0}
    order = [start]
    index = 0
    while index < len(order):
        dart = order[index]
        index += 1
        for nxt in (diagram.sigma(dart), diagram.mate[dart]):
            if nxt not in number:
                number[nxt] = len(order)
                order.append(nxt)
    code = tuple(
        (number[diagram.sigma(d)], number[diagram.mate[d]], _label_code(diagram, d))
        for d in order
    )
    return code, order


def _component_darts(diagram: JacobiDiagram) -> List[List[Dart]]:
    seen: set = set()
    components = []
    for root in range(len(diagram.mate)):
        if root in seen:
            continue
        stack = [root]
        seen.add(root)
        members = []
        while stack:
            dart = stack.pop()
            members.append(dart)
            for nxt in (diagram.sigma(dart), diagram.mate[dart]):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        components.append(sorted(members))
    return components


@lru_cache(maxsize=1 << 16)
def _oriented(diagram: JacobiDiagram) -> Tuple[Tuple[Code, ...], JacobiDiagram]:
    colours = refine_colours(diagram)
    walks = []
    for darts in _component_darts(diagram):
        walks.append(
            min(_oriented_walk(diagram, s) for s in _start_darts(darts, colours))
        )
    walks.sort()
    number: Dict[Dart, int] = {}
    for _, order in walks:
        for dart in order:
            number[dart] = len(number)
    vertices = []
    for vertex in diagram.vertices:
        triple = [number[d] for d in vertex]
        shift = triple.index(min(triple))
        vertices.append(tuple(triple[shift:] + triple[:shift]))
    legs = sorted((number[d], label) for d, label in diagram.legs)
    mate = [0] * len(number)
    for dart, other in enumerate(diagram.mate):
        mate[number[dart]] = number[other]
    canonical = JacobiDiagram(sorted(vertices), legs, mate)
    return tuple(code for code, _ in walks), canonical


def canonicalize(diagram: JacobiDiagram) -> JacobiDiagram:
    """
    Canonical representative of the isomorphism class of `diagram`.

    Isomorphisms preserve labels, edges and every cyclic order. The result is
    idempotent and constant on isomorphism classes; no AS sign is involved.

    Args:
        diagram (JacobiDiagram): Any diagram, possibly disconnected.

    Returns:
        JacobiDiagram: The canonical diagram.
    """
    return _oriented(diagram)[1]


def oriented_code(diagram: JacobiDiagram) -> Tuple[Code, ...]:
    return _oriented(diagram)[0]


def sort_key(diagram: JacobiDiagram) -> Tuple:
    return (diagram.ideg, diagram.n_legs, oriented_code(diagram))


def _unoriented_walks(
    diagram: JacobiDiagram, start: Dart, colours: Sequence[int]
) -> List[List[Dart]]:
    """
    All breadth-first numberings from `start` where the two unnumbered
    siblings of a newly reached vertex are ordered by colour, branching on ties.
    """
    results: List[List[Dart]] = []

    def opened(order: List[Dart], dart: Dart) -> List[List[Dart]]:
        order = order + [dart]
        if diagram.is_leg_dart(dart):
            return [order]
        a, b = diagram.siblings(dart)
        if colours[a] < colours[b]:
            return [order + [a, b]]
        if colours[b] < colours[a]:
            return [order + [b, a]]
        return [order + [a, b], order + [b, a]]

    def extend(order: List[Dart], index: int) -> None:
        numbered = set(order)
        while index < len(order):
            dart = order[index]
            index += 1
            other = diagram.mate[dart]
            if other in numbered:
                continue
            branches = opened(order, other)
            if len(branches) > 1:
                for branch in branches:
                    extend(branch, index)
                return
            order = branches[0]
            numbered.update(order[-3:])
        results.append(order)

    for first in opened([], start):
        extend(first, 0)
    return results


def _unoriented_code(diagram: JacobiDiagram, order: Sequence[Dart]) -> Code:
    number = {dart: position for position, dart in enumerate(order)}
    return tuple(
        (
            int(diagram.is_leg_dart(d)),
            number[diagram.mate[d]],
            _label_code(diagram, d),
        )
        for d in order
    )


def _orientation_parity(diagram: JacobiDiagram, order: Sequence[Dart]) -> int:
    number = {dart: position for position, dart in enumerate(order)}
    parity = 0
    for vertex in diagram.vertices:
        a, b, c = (number[d] for d in vertex)
        low = min(a, b, c)
        rotated = (a, b, c) if low == a else (b, c, a) if low == b else (c, a, b)
        parity ^= int(rotated[1] > rotated[2])
    return parity


@lru_cache(maxsize=1 << 18)
def unoriented_form(diagram: JacobiDiagram) -> UnorientedForm:
    """
    AS class of a connected diagram.

    Args:
        diagram (JacobiDiagram): A connected diagram.

    Returns:
        UnorientedForm: Class representative, sign and 2-torsion flag.

    Raises:
        ValueError: If the diagram is disconnected.
    """
    if not diagram.is_connected:
        raise ValueError("AS classes are only computed for connected diagrams")
    colours = refine_colours(diagram)
    best: Optional[Code] = None
    parities: set = set()
    best_order: List[Dart] = []
    for start in _start_darts(range(len(diagram.mate)), colours):
        for order in _unoriented_walks(diagram, start, colours):
            code = _unoriented_code(diagram, order)
            if best is None or code < best:
                best, best_order, parities = code, order, set()
            if code == best:
                parities.add(_orientation_parity(diagram, order))
    assert best is not None
    number = {dart: position for position, dart in enumerate(best_order)}
    vertices = sorted(tuple(sorted(number[d] for d in v)) for v in diagram.vertices)
    legs = sorted((number[d], label) for d, label in diagram.legs)
    mate = [0] * len(number)
    for dart, other in enumerate(diagram.mate):
        mate[number[dart]] = number[other]
    representative = JacobiDiagram(vertices, legs, mate)
    sign = -1 if _orientation_parity(diagram, best_order) else 1
    return UnorientedForm(representative, sign, len(parities) > 1)


def unoriented_key(diagram: JacobiDiagram) -> JacobiDiagram:
    return unoriented_form(diagram).representative
