"""
Exhaustive generation of connected Jacobi diagrams by stratum.

Unlabelled shapes are grown from the strut: trees by attaching a leg in
the middle of an edge, and higher loop numbers by gluing two legs together.
Labelled classes are then obtained by assigning labels to the legs.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Tuple

from .canonical import canonicalize, sort_key, unoriented_form
from .config import default_max_degree
from .diagram import DiagramBuilder, JacobiDiagram, tree_diagram
from .error_handler import CapExceededError, StratumError
from .labels import Label, alphabet

logger = logging.getLogger(__name__)

UNIFORM = Label(1, 1)


def check_degree(n: int, max_degree: Optional[int] = None) -> None:
    cap = default_max_degree() if max_degree is None else max_degree
    if n > cap:
        raise CapExceededError(n, cap)


def leg_count(n: int, l: int) -> int:
    return n - 2 * l + 2


def _attachments(diagram: JacobiDiagram) -> Iterator[JacobiDiagram]:
    for a, b in enumerate(diagram.mate):
        if a > b:
            continue
        builder = DiagramBuilder.from_diagram(diagram)
        side, x, y = builder.new_darts(3)
        builder.connect(a, x)
        builder.connect(y, b)
        builder.add_vertex(side, x, y)
        builder.new_leg(side, UNIFORM)
        yield builder.build()


def _gluings(diagram: JacobiDiagram) -> Iterator[JacobiDiagram]:
    for (p, _), (q, _) in combinations(diagram.legs, 2):
        if diagram.mate[p] == q:
            continue
        builder = DiagramBuilder.from_diagram(diagram)
        a, b = diagram.mate[p], diagram.mate[q]
        builder.remove_leg(p)
        builder.remove_leg(q)
        builder.connect(a, b)
        yield builder.build()


def _dedupe(diagrams: Iterator[JacobiDiagram]) -> List[JacobiDiagram]:
    seen: Dict[JacobiDiagram, JacobiDiagram] = {}
    for diagram in diagrams:
        key = unoriented_form(diagram).representative
        seen.setdefault(key, key)
    return sorted(seen.values(), key=sort_key)


@lru_cache(maxsize=None)
def shapes(n: int, l: int) -> Tuple[JacobiDiagram, ...]:
    """
    Connected uni-trivalent graphs with n trivalent vertices and Betti number
    l, one per isomorphism class, every leg carrying the same label.
    """
    if n < 0 or l < 0 or leg_count(n, l) < 0:
        return ()
    if l == 0:
        if n == 0:
            return (tree_diagram([UNIFORM, UNIFORM]),)
        found = _dedupe(d for s in shapes(n - 1, 0) for d in _attachments(s))
    else:
        if n == 0:
            return ()
        found = _dedupe(d for s in shapes(n, l - 1) for d in _gluings(s))
    logger.debug("shapes(n=%d, l=%d): %d", n, l, len(found))
    return tuple(found)


@lru_cache(maxsize=None)
def as_classes(n: int, l: int, g: int) -> Tuple[JacobiDiagram, ...]:
    """
    Labelled diagrams of the stratum, one per class modulo isomorphism and
    cyclic-order reversal, as unoriented representatives.
    """
    labels = alphabet(g)
    found: Dict[JacobiDiagram, None] = {}
    for shape in shapes(n, l):
        for assignment in product(labels, repeat=shape.n_legs):
            found.setdefault(unoriented_form(shape.relabel(assignment)).representative)
    result = tuple(sorted(found, key=sort_key))
    logger.debug("as_classes(n=%d, l=%d, g=%d): %d", n, l, g, len(result))
    return result


def validate_stratum(n: int, l: int, g: int) -> None:
    if n < 0 or l < 0 or g < 1 or leg_count(n, l) < 0:
        raise StratumError(f"empty or invalid stratum (n={n}, l={l}, g={g})")


def enumerate_diagrams(
    n: int, l: int, g: int, max_degree: Optional[int] = None
) -> List[JacobiDiagram]:
    """
    All connected diagrams of internal degree n, Betti number l and genus g.

    Args:
        n (int): Internal degree.
        l (int): First Betti number.
        g (int): Genus; labels range over 1+..g-.
        max_degree (Optional[int]): Degree cap; defaults to the configured one.

    Returns:
        List[JacobiDiagram]: Canonical diagrams, one per isomorphism class, sorted.

    Raises:
        CapExceededError: If n is above the cap.
        StratumError: If the stratum parameters are invalid.
    """
    check_degree(n, max_degree)
    validate_stratum(n, l, g)
    found: Dict[JacobiDiagram, None] = {}
    for representative in as_classes(n, l, g):
        for flips in product((False, True), repeat=representative.ideg):
            diagram = representative
            for vertex, flipped in enumerate(flips):
                if flipped:
                    diagram = diagram.flip(vertex)
            found.setdefault(canonicalize(diagram))
    return sorted(found, key=sort_key)

