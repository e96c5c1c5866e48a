"""
Diagram-level maps between modules of Jacobi diagrams.

Legs are addressed by their position in `JacobiDiagram.legs`. Every map is
defined on single diagrams and extended linearly to DiagramSums.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .diagram import Dart, DiagramBuilder, JacobiDiagram, SpinePath, SpineType, circle_diagram
from .error_handler import StratumError
from .labels import Label
from .relations import Element, ModulePresentation, as_sum, reduce_mod2
from .sums import DiagramSum

logger = logging.getLogger(__name__)

Expansion = List[Tuple[int, Tuple[Label, ...]]]


def linear(fn: Callable[[JacobiDiagram], DiagramSum]) -> Callable[[Element], DiagramSum]:
    """
    Extend a map on diagrams to DiagramSums.
    """

    def extended(x: Element) -> DiagramSum:
        return as_sum(x).map_diagrams(fn)

    extended.__name__ = fn.__name__
    extended.__doc__ = fn.__doc__
    return extended


def _leg(diagram: JacobiDiagram, leg: int) -> Tuple[Dart, Label, Dart]:
    if not 0 <= leg < diagram.n_legs:
        raise IndexError(f"no leg {leg} in a diagram with {diagram.n_legs} legs")
    dart, label = diagram.legs[leg]
    attach = diagram.mate[dart]
    if diagram.is_leg_dart(attach):
        raise StratumError("a strut has no trivalent vertex next to its legs")
    return dart, label, attach


def doubled_edge(
    diagram: JacobiDiagram, leg: int, label: Optional[Label] = None
) -> JacobiDiagram:
    """
    Double the edge of `leg`: its vertex u = (h, x, y) becomes (l1, e1, y)
    and (l2, x, e2) with e1 e2 a new edge and two legs carrying the label.
    """
    dart, own, h = _leg(diagram, leg)
    label = own if label is None else label
    x, y = diagram.siblings(h)
    builder = DiagramBuilder.from_diagram(diagram)
    builder.remove_vertex(diagram.owner(h))
    builder.remove_leg(dart)
    p1, p2, e1, e2 = builder.new_darts(4)
    builder.add_vertex(p1, e1, y)
    builder.add_vertex(p2, x, e2)
    builder.connect(e1, e2)
    builder.new_leg(p1, label)
    builder.new_leg(p2, label)
    return builder.build()


def starred_y(diagram: JacobiDiagram, leg: int) -> JacobiDiagram:
    """
    Replace `leg` by a Y whose free legs read (l*, l) after the stem.
    """
    dart, label, h = _leg(diagram, leg)
    builder = DiagramBuilder.from_diagram(diagram)
    builder.remove_leg(dart)
    stem, first, second = builder.new_darts(3)
    builder.add_vertex(stem, first, second)
    builder.connect(stem, h)
    builder.new_leg(first, label.star())
    builder.new_leg(second, label)
    return builder.build()


def glued_y(
    diagram: JacobiDiagram, v: int, w: int, label: Optional[Label] = None
) -> JacobiDiagram:
    """
    Glue a Y along legs v and w: both legs are removed and a vertex
    (new leg, toward w, toward v) is added.
    """
    if v == w:
        raise ValueError("gluing needs two different legs")
    v_dart, v_label = diagram.legs[v]
    w_dart, _ = diagram.legs[w]
    label = v_label if label is None else label
    towards_v, towards_w = diagram.mate[v_dart], diagram.mate[w_dart]
    builder = DiagramBuilder.from_diagram(diagram)
    builder.remove_leg(v_dart)
    builder.remove_leg(w_dart)
    side, p, q = builder.new_darts(3)
    builder.add_vertex(side, p, q)
    builder.new_leg(side, label)
    if towards_v == w_dart:
        builder.connect(p, q)
    else:
        builder.connect(p, towards_w)
        builder.connect(q, towards_v)
    return builder.build()


def delta_v(diagram: JacobiDiagram, leg: int) -> DiagramSum:
    """
    The doubled-edge diagram plus the starred-Y diagram at `leg`.

    Raises:
        StratumError: If `leg` belongs to a strut.
    """
    return DiagramSum.from_terms(
        [(doubled_edge(diagram, leg), 1), (starred_y(diagram, leg), 1)]
    )


def delta_vw(diagram: JacobiDiagram, v: int, w: int) -> DiagramSum:
    """
    The Y-glued diagram along two legs with the same label.

    Raises:
        ValueError: If the labels of v and w differ.
    """
    if diagram.legs[v][1] != diagram.legs[w][1]:
        raise ValueError(
            f"legs {v} and {w} carry different labels "
            f"{diagram.legs[v][1]} and {diagram.legs[w][1]}"
        )
    return DiagramSum.of(glued_y(diagram, v, w))


@linear
def delta_prime(diagram: JacobiDiagram) -> DiagramSum:
    """
    Sum of delta_v over all legs.
    """
    result = DiagramSum()
    for leg in range(diagram.n_legs):
        result = result + delta_v(diagram, leg)
    return result


def delta_double_prime(x: Element, order: Optional[Sequence[int]] = None) -> DiagramSum:
    """
    Sum of delta_vw over pairs v < w of legs with equal labels.

    Args:
        x: A diagram or a sum of diagrams.
        order: A permutation of leg positions defining the order of legs; the
            leg order of each diagram by default. Only the class mod 2 of the
            result is independent of it.
    """

    def single(diagram: JacobiDiagram) -> DiagramSum:
        ranking = list(order) if order is not None else list(range(diagram.n_legs))
        if sorted(ranking) != list(range(diagram.n_legs)):
            raise ValueError("order must be a permutation of the legs")
        result = DiagramSum()
        for i, v in enumerate(ranking):
            for w in ranking[i + 1:]:
                if diagram.legs[v][1] == diagram.legs[w][1]:
                    result = result + delta_vw(diagram, v, w)
        return result

    return as_sum(x).map_diagrams(single)


def delta(x: Element) -> DiagramSum:
    return delta_prime(x) + delta_double_prime(x)


def _check_source(x: DiagramSum, n: int) -> None:
    for diagram in x.terms:
        if diagram.ideg != n or not diagram.is_connected:
            raise StratumError(
                f"expected connected diagrams of internal degree {n}, got {diagram!r}"
            )


def delta_prime_mod2(x: Element, target: ModulePresentation) -> Tuple[int, ...]:
    """
    Coordinates of delta'(x) in the target module tensored with Z/2.

    Raises:
        StratumError: If x is not of internal degree target.n - 1.
    """
    x = as_sum(x)
    _check_source(x, target.n - 1)
    return reduce_mod2(delta_prime(x), target)


def delta_double_prime_mod2(x: Element, target: ModulePresentation) -> Tuple[int, ...]:
    x = as_sum(x)
    _check_source(x, target.n - 1)
    return reduce_mod2(delta_double_prime(x), target)


def blow_up(diagram: JacobiDiagram, vertex: int = 0) -> JacobiDiagram:
    """
    Replace a trivalent vertex (x1, x2, x3) by a triangle with corners
    (x1, s12, s13), (x2, s23, s21), (x3, s31, s32), sij and sji being mates.

    Raises:
        StratumError: If the diagram has no trivalent vertex.
    """
    if not diagram.ideg:
        raise StratumError("blow-up needs a trivalent vertex")
    x1, x2, x3 = diagram.vertices[vertex]
    builder = DiagramBuilder.from_diagram(diagram)
    builder.remove_vertex(vertex)
    s12, s13, s21, s23, s31, s32 = builder.new_darts(6)
    builder.add_vertex(x1, s12, s13)
    builder.add_vertex(x2, s23, s21)
    builder.add_vertex(x3, s31, s32)
    builder.connect(s12, s21)
    builder.connect(s13, s31)
    builder.connect(s23, s32)
    return builder.build()


@linear
def bu(diagram: JacobiDiagram) -> DiagramSum:
    """
    Blow up the first vertex of the canonical form; the class of the result
    does not depend on the vertex.
    """
    return DiagramSum.of(blow_up(diagram.canonical(), 0))


def bu_iter(x: Element, k: int) -> DiagramSum:
    result = as_sum(x)
    for _ in range(k):
        result = bu(result)
    return result


def _require_two_loops(diagram: JacobiDiagram) -> None:
    stats = diagram.stats()
    if not stats.connected or stats.betti != 2:
        raise StratumError(f"expected a connected two-loop diagram, got {diagram!r}")


def _cyclic_match(triple: Sequence[Dart], target: Sequence[Dart]) -> int:
    """
    +1 if `triple` is a rotation of `target`, -1 if of its reverse.
    """
    a, b, c = target
    return 1 if tuple(triple) in ((a, b, c), (b, c, a), (c, a, b)) else -1


def _thread(
    builder: DiagramBuilder, start: Dart, hangs: Sequence[Dart], target: Dart
) -> None:
    current = start
    for hang in hangs:
        left, right = builder.new_darts(2)
        builder.add_vertex(hang, left, right)
        builder.connect(current, left)
        current = right
    builder.connect(current, target)


@linear
def eyeglass_to_theta(diagram: JacobiDiagram) -> DiagramSum:
    """
    Rewrite a two-loop diagram as a combination of theta-spine diagrams.

    Theta-spine diagrams are returned unchanged. For an eyeglass with
    branch vertices x_L = (b0, c1, c2) and x_R = (bR, d1, d2) joined by a
    bridge carrying trees t1..tr, every split of the trees into a top and a
    bottom sequence gives the term with the left loop opened at c1 and c2,
    the two new branch vertices (top, c1, chord) and (bottom, chord, c2),
    the top path ending on the d2 side of the right loop and the bottom
    path on the d1 side, minus the same term with c1 and c2 exchanged.
    Eyeglasses with a loop made of a single edge map to zero.

    Raises:
        StratumError: If the diagram is not a connected two-loop diagram.
    """
    _require_two_loops(diagram)
    diagram = diagram.canonical()
    if diagram.spine_type() is SpineType.THETA:
        return DiagramSum.of(diagram)
    branches, paths = diagram.spine()
    left = branches[0]
    bridge = next(
        path
        for path in paths
        if diagram.owner(path.start) == left and diagram.owner(path.end) != left
    )
    c1, c2 = diagram.siblings(bridge.start)
    d1, d2 = diagram.siblings(bridge.end)
    if diagram.mate[c1] == c2 or diagram.mate[d1] == d2:
        return DiagramSum()
    sign = 1
    for step in bridge.steps:
        sign *= _cyclic_match(diagram.vertices[step.vertex], (step.hang, step.entry, step.exit))
    base = DiagramBuilder.from_diagram(diagram)
    base.remove_vertex(left)
    base.remove_vertex(diagram.owner(bridge.end))
    for step in bridge.steps:
        base.remove_vertex(step.vertex)
    hangs = [step.hang for step in bridge.steps]
    top_target, bottom_target = diagram.mate[d2], diagram.mate[d1]
    terms = []
    for mask in product((True, False), repeat=len(hangs)):
        top = [h for h, up in zip(hangs, mask) if up]
        bottom = [h for h, up in zip(hangs, mask) if not up]
        for coefficient, (upper, lower) in ((1, (c1, c2)), (-1, (c2, c1))):
            builder = base.copy()
            tp, vt, bp, vb = builder.new_darts(4)
            builder.add_vertex(tp, upper, vt)
            builder.add_vertex(bp, vb, lower)
            builder.connect(vt, vb)
            _thread(builder, tp, top, top_target)
            _thread(builder, bp, bottom, bottom_target)
            terms.append((builder.build(), sign * coefficient))
    return DiagramSum.from_terms(terms)


def _multiply(first: Expansion, second: Expansion) -> Expansion:
    return [(a * b, u + v) for a, u in first for b, v in second]


def _subtree(diagram: JacobiDiagram, dart: Dart) -> Expansion:
    # root (r, x, y) expands to E(y)E(x) - E(x)E(y)
    root = diagram.mate[dart]
    if diagram.is_leg_dart(root):
        return [(1, (diagram.leg_label(root),))]
    x, y = diagram.siblings(root)
    ex, ey = _subtree(diagram, x), _subtree(diagram, y)
    return _multiply(ey, ex) + [(-c, w) for c, w in _multiply(ex, ey)]


def _path_expansion(diagram: JacobiDiagram, path: SpinePath) -> Expansion:
    """
    Legs along a spine path after moving every hanging tree onto the path,
    each term read from the start with vertices (leg, backward, forward).
    """
    result: Expansion = [(1, ())]
    for step in path.steps:
        sign = _cyclic_match(diagram.vertices[step.vertex], (step.hang, step.entry, step.exit))
        local = [(sign * c, w) for c, w in _subtree(diagram, step.hang)]
        result = _multiply(result, local)
    return result


def _leaf_count(diagram: JacobiDiagram, path: SpinePath) -> int:
    return sum(len(diagram.hanging_leaves(step.hang)) for step in path.steps)


def theta_readings(diagram: JacobiDiagram) -> List[Tuple[int, SpinePath, SpinePath, SpinePath]]:
    """
    The six ways of reading a theta-spine diagram as theta(top; chord; bottom).

    Returns:
        List[Tuple[int, SpinePath, SpinePath, SpinePath]]: The sign of the
        far branch vertex and the top, chord and bottom paths.
    """
    branches, paths = diagram.spine()
    by_start = {path.start: path for path in paths}
    readings = []
    for left in branches:
        darts = diagram.vertices[left]
        for shift in range(3):
            chord, top, bottom = (by_start[darts[(shift + k) % 3]] for k in range(3))
            right = diagram.owner(top.end)
            sign = _cyclic_match(diagram.vertices[right], (top.end, chord.end, bottom.end))
            readings.append((sign, top, chord, bottom))
    return readings


def _blow_down_theta(diagram: JacobiDiagram) -> DiagramSum:
    readings = theta_readings(diagram)
    for sign, top, chord, bottom in readings:
        p, q, r = (_leaf_count(diagram, path) for path in (top, chord, bottom))
        if p >= r >= q:
            break
    else:
        raise StratumError(f"no theta reading of {diagram!r}")
    if q:
        return DiagramSum()
    terms = []
    for (a, upper), (b, lower) in product(
        _path_expansion(diagram, top), _path_expansion(diagram, bottom)
    ):
        coefficient = sign * a * b * (-1) ** r
        if r:
            terms.append((circle_diagram(upper + lower[::-1]), coefficient))
        else:
            terms.append((circle_diagram(upper), 2 * coefficient))
    return DiagramSum.from_terms(terms)


@linear
def bd(diagram: JacobiDiagram) -> DiagramSum:
    """
    Blow down a two-loop diagram to the one-loop stratum two degrees lower.

    The diagram is first rewritten on theta spines. Reading a theta diagram
    with blocks of sizes p >= r >= q, the result is 0 if q > 0,
    O(a1..ap, cr..c1) if q = 0 < r and 2 O(a1..ap) if q = r = 0.

    Raises:
        StratumError: If the diagram is not a connected two-loop diagram.
    """
    _require_two_loops(diagram)
    return eyeglass_to_theta(diagram).map_diagrams(_blow_down_theta)


def fold_map(x: Element, target: ModulePresentation) -> Tuple[int, ...]:
    """
    Coordinates mod 2 of bd(delta''(x)) in the one-loop stratum 2m-2.

    For x of internal degree 2m-1 and loop number 1, delta''(x) is the
    two-loop part of delta(x); theta diagrams with three nonempty blocks
    are killed by bd.

    Raises:
        StratumError: If x or the target is in the wrong stratum.
    """
    x = as_sum(x)
    _check_source(x, target.n + 1)
    if any(d.betti != 1 for d in x.terms) or target.l != 1:
        raise StratumError("fold map goes from one-loop diagrams to one-loop diagrams")
    return reduce_mod2(bd(delta_double_prime(x)), target)
