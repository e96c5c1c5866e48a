"""
Lifted diagrams, line symmetries and the relations they produce.

A lifted diagram carries subscripted labels such as 1+_2 and barred labels
such as ~1+_2. Symmetric diagrams come with a witness: an involution on
half-edges that reverses every cyclic order and preserves labels.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .diagram import Dart, JacobiDiagram, circle_diagram, theta_diagram, tree_diagram
from .error_handler import LiftError
from .labels import Label
from .maps import doubled_edge, glued_y
from .sums import DiagramSum

logger = logging.getLogger(__name__)


class LiftedDiagram:
    """
    A connected diagram whose labels are all lifted.

    For every plain label i+- the subscripts in use are exactly 1..n(i+-),
    each once, regardless of bars.

    Attributes:
        diagram (JacobiDiagram): The diagram with lifted labels.
        counts (Dict[Label, int]): n(i+-) per plain label.
    """

    __slots__ = ("diagram", "counts")

    def __init__(self, diagram: JacobiDiagram) -> None:
        self.diagram = diagram
        self.counts: Dict[Label, int] = self._validate()

    def _validate(self) -> Dict[Label, int]:
        if not self.diagram.is_connected:
            raise LiftError("a lifted diagram must be connected")
        subscripts: Dict[Label, List[int]] = {}
        for _, label in self.diagram.legs:
            if not label.is_lifted:
                raise LiftError(f"label {label} carries no subscript")
            subscripts.setdefault(label.plain(), []).append(label.subscript)
        for plain, used in subscripts.items():
            if sorted(used) != list(range(1, len(used) + 1)):
                raise LiftError(
                    f"subscripts of {plain} must be 1..{len(used)} each once, got {sorted(used)}"
                )
        return {plain: len(used) for plain, used in subscripts.items()}

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self.diagram.labels

    def subscript(self, leg: int) -> int:
        return self.diagram.legs[leg][1].subscript

    def barred_count(self, exclude: Optional[int] = None) -> int:
        return sum(
            1
            for leg, (_, label) in enumerate(self.diagram.legs)
            if label.barred and leg != exclude
        )

    def projected(self) -> JacobiDiagram:
        """
        The diagram with every label sent to its plain label.
        """
        return self.diagram.map_labels(Label.plain)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LiftedDiagram):
            return NotImplemented
        return self.diagram == other.diagram

    def __hash__(self) -> int:
        return hash(self.diagram)

    def __repr__(self) -> str:
        return f"LiftedDiagram({self.diagram!r})"


class SymmetricDiagramWitness(NamedTuple):
    """
    A diagram together with a line symmetry r.

    `darts[d]` is r(d); r commutes with the edge involution, satisfies
    r(sigma(d)) = sigma^-1(r(d)) and preserves plain labels. `legs[k]` is
    the leg position of r(v) for the leg at position k.
    """

    diagram: JacobiDiagram
    darts: Tuple[Dart, ...]
    legs: Tuple[int, ...]

    def fixed_legs(self) -> List[int]:
        return [k for k, image in enumerate(self.legs) if image == k]

    def validate(self) -> None:
        """
        Raises:
            LiftError: If r is not an involutive line symmetry of the diagram.
        """
        diagram, r = self.diagram, self.darts
        if sorted(r) != list(range(len(diagram.mate))):
            raise LiftError("the symmetry is not a permutation of half-edges")
        for dart, image in enumerate(r):
            if r[image] != dart:
                raise LiftError("the symmetry is not an involution")
            if r[diagram.mate[dart]] != diagram.mate[image]:
                raise LiftError("the symmetry does not map edges to edges")
            if diagram.is_leg_dart(dart) != diagram.is_leg_dart(image):
                raise LiftError("the symmetry mixes legs and trivalent vertices")
            if diagram.is_leg_dart(dart):
                if diagram.leg_label(dart).plain() != diagram.leg_label(image).plain():
                    raise LiftError("the symmetry does not preserve labels")
            else:
                nxt = diagram.sigma(dart)
                if diagram.sigma(r[nxt]) != image:
                    raise LiftError("the symmetry does not reverse cyclic orders")


def _propagate(diagram: JacobiDiagram, start: Dart, image: Dart) -> Optional[List[Dart]]:
    """
    Extend d0 -> image to a map on all half-edges using
    r(mate d) = mate r(d) and r(sigma d) = sigma^-1 r(d).
    """
    size = len(diagram.mate)
    r: List[Optional[Dart]] = [None] * size
    r[start] = image
    queue = deque([start])

    def assign(dart: Dart, target: Dart) -> bool:
        if r[dart] is None:
            r[dart] = target
            queue.append(dart)
            return True
        return r[dart] == target

    while queue:
        dart = queue.popleft()
        target = r[dart]
        if diagram.is_leg_dart(dart) != diagram.is_leg_dart(target):
            return None
        if not assign(diagram.mate[dart], diagram.mate[target]):
            return None
        if not diagram.is_leg_dart(dart):
            _, before = diagram.siblings(target)
            if not assign(diagram.sigma(dart), before):
                return None
    if any(image is None for image in r):
        return None
    return r


def find_line_symmetry(
    diagram: JacobiDiagram, leg_map: Optional[Sequence[int]] = None
) -> Optional[SymmetricDiagramWitness]:
    """
    Search for an involutive line symmetry of a connected diagram.

    Args:
        diagram (JacobiDiagram): A connected diagram.
        leg_map (Optional[Sequence[int]]): Required action on leg positions.

    Returns:
        Optional[SymmetricDiagramWitness]: The first symmetry found in
        half-edge order, or None.
    """
    if not diagram.is_connected:
        raise LiftError("line symmetries are searched on connected diagrams")
    position = {dart: k for k, (dart, _) in enumerate(diagram.legs)}
    start = diagram.legs[0][0] if diagram.legs else 0
    for image in range(len(diagram.mate)):
        r = _propagate(diagram, start, image)
        if r is None:
            continue
        legs = tuple(position[r[dart]] for dart, _ in diagram.legs)
        if leg_map is not None and tuple(leg_map) != legs:
            continue
        witness = SymmetricDiagramWitness(diagram, tuple(r), legs)
        try:
            witness.validate()
        except LiftError:
            continue
        return witness
    return None


class SymmetricFamily(Enum):
    TREE_ODD = "T-odd"  # T(a1..am, a(m+1), am..a1)
    TREE_EVEN = "T-even"  # T(a1..am, am..a1)
    LOOP_ODD = "O-odd"  # O(a1..am..a1)
    LOOP_EVEN = "O-even"  # O(a1..am, am..a1)
    LOOP_FIXED = "O-fixed"  # O(a1..am, a(m+1), am..a2)


def _family_diagram(
    family: SymmetricFamily, labels: Sequence[Label]
) -> Tuple[JacobiDiagram, List[int]]:
    labels = list(labels)
    if family is SymmetricFamily.TREE_ODD:
        word = labels + labels[-2::-1]
    elif family is SymmetricFamily.TREE_EVEN:
        word = labels + labels[::-1]
    elif family is SymmetricFamily.LOOP_ODD:
        word = labels + labels[-2::-1]
    elif family is SymmetricFamily.LOOP_EVEN:
        word = labels + labels[::-1]
    else:
        word = labels + labels[-2:0:-1]
    size = len(word)
    if family in (SymmetricFamily.TREE_ODD, SymmetricFamily.TREE_EVEN):
        if size < 3:
            raise LiftError("a symmetric tree needs at least three legs")
        return tree_diagram(word), [size - 1 - k for k in range(size)]
    if family is SymmetricFamily.LOOP_FIXED:
        return circle_diagram(word), [(-k) % size for k in range(size)]
    return circle_diagram(word), [size - 1 - k for k in range(size)]


def witness_for(family: SymmetricFamily, labels: Sequence[Label]) -> SymmetricDiagramWitness:
    """
    The diagram of a symmetric family with its mirror symmetry.

    Raises:
        LiftError: If the labels are too few for the family.
    """
    if not labels:
        raise LiftError("a symmetric family needs labels")
    diagram, legs = _family_diagram(family, labels)
    witness = find_line_symmetry(diagram, legs)
    if witness is None:
        raise LiftError(f"no line symmetry of {diagram!r} realizes the mirror")
    return witness


def good_lift(witness: SymmetricDiagramWitness) -> LiftedDiagram:
    """
    Lift the labels with consecutive subscripts on every pair (v, r(v)).

    Legs are visited in position order; a fixed leg takes the next subscript
    of its label, a pair takes the next two with the lower one on the leg
    visited first.
    """
    witness.validate()
    counter: Counter = Counter()
    lifted: Dict[int, Label] = {}
    for leg, (_, label) in enumerate(witness.diagram.legs):
        if leg in lifted:
            continue
        plain = label.plain()
        partner = witness.legs[leg]
        counter[plain] += 1
        lifted[leg] = plain.lift(counter[plain])
        if partner != leg:
            counter[plain] += 1
            lifted[partner] = plain.lift(counter[plain])
    labels = [lifted[leg] for leg in range(witness.diagram.n_legs)]
    return LiftedDiagram(witness.diagram.relabel(labels))


def lifted_rev(lifted: LiftedDiagram) -> LiftedDiagram:
    """
    Flip every cyclic order and toggle the bar on every label.
    """
    return LiftedDiagram(lifted.diagram.mirror().map_labels(Label.bar))


def lower_legs(witness: SymmetricDiagramWitness, lifted: LiftedDiagram) -> List[int]:
    """
    Legs whose subscript is lower than that of their mirror image.
    """
    return [
        leg
        for leg, partner in enumerate(witness.legs)
        if lifted.subscript(leg) < lifted.subscript(partner)
    ]


def delta_tilde_v(lifted: LiftedDiagram, leg: int) -> DiagramSum:
    """
    (-1)^k times the doubled-edge diagram at `leg` with projected labels,
    k being the number of barred labels on the other legs.
    """
    sign = (-1) ** lifted.barred_count(exclude=leg)
    return DiagramSum.of(doubled_edge(lifted.projected(), leg), sign)


def delta_tilde_vw(lifted: LiftedDiagram, v: int, w: int) -> DiagramSum:
    """
    (-1)^k times the Y-glued diagram along v and w with projected labels,
    k being the number of barred labels.

    Raises:
        LiftError: If v and w do not carry i_j and i_(j+1) for one plain label.
    """
    first, second = lifted.labels[v], lifted.labels[w]
    if first.plain() != second.plain() or second.subscript != first.subscript + 1:
        raise LiftError(f"cannot glue legs labelled {first} and {second}")
    sign = (-1) ** lifted.barred_count()
    return DiagramSum.of(glued_y(lifted.projected(), v, w, first.plain()), sign)


def _resolve(
    witness: SymmetricDiagramWitness, lifted: Optional[LiftedDiagram]
) -> LiftedDiagram:
    if lifted is None:
        return good_lift(witness)
    if lifted.projected() != witness.diagram.map_labels(Label.plain):
        raise LiftError("the lift does not project onto the witness diagram")
    for leg, partner in enumerate(witness.legs):
        if abs(lifted.subscript(leg) - lifted.subscript(partner)) > 1:
            raise LiftError("the lift is not a good lift for this symmetry")
    return lifted


def _glued_pairs(witness: SymmetricDiagramWitness, lifted: LiftedDiagram) -> DiagramSum:
    result = DiagramSum()
    for leg in lower_legs(witness, lifted):
        result = result + delta_tilde_vw(lifted, leg, witness.legs[leg])
    return result


def sym_relation_even(
    witness: SymmetricDiagramWitness, lifted: Optional[LiftedDiagram] = None
) -> DiagramSum:
    """
    The combination of fixed-leg doubled edges and lower-pair gluings that
    vanishes for a symmetric diagram of even internal degree.

    Raises:
        LiftError: If the internal degree is odd or the lift is not good.
    """
    if witness.diagram.ideg % 2:
        raise LiftError(f"internal degree {witness.diagram.ideg} is odd")
    lifted = _resolve(witness, lifted)
    result = DiagramSum()
    for leg in witness.fixed_legs():
        result = result + delta_tilde_v(lifted, leg)
    return result + _glued_pairs(witness, lifted)


def sym_relation_odd(
    witness: SymmetricDiagramWitness, lifted: Optional[LiftedDiagram] = None
) -> DiagramSum:
    """
    The combination equal to twice the lifted class of a symmetric diagram of
    odd internal degree: minus all doubled edges minus the lower-pair gluings.

    Raises:
        LiftError: If the internal degree is even or the lift is not good.
    """
    if witness.diagram.ideg % 2 == 0:
        raise LiftError(f"internal degree {witness.diagram.ideg} is even")
    lifted = _resolve(witness, lifted)
    result = DiagramSum()
    for leg in range(witness.diagram.n_legs):
        result = result - delta_tilde_v(lifted, leg)
    result = result - _glued_pairs(witness, lifted)
    logger.debug("symmetric relation of %r has %d terms", witness.diagram, len(result))
    return result


def one_loop_kernel_element(labels: Sequence[Label]) -> DiagramSum:
    """
    O(a1..a(m-1), am, a(m-1)..a1) + O(am..a2, a1, a2..am) plus, for
    i = 2..m-1, theta(a(i-1)..a1..a(i-1); ai; a(i+1)..am..a(i+1)).

    Raises:
        ValueError: If fewer than two labels are given.
    """
    a = list(labels)
    m = len(a)
    if m < 2:
        raise ValueError("the one-loop kernel element needs at least two labels")

    def palindrome(word: List[Label]) -> List[Label]:
        return word + word[-2::-1]

    terms = [
        (circle_diagram(palindrome(a)), 1),
        (circle_diagram(palindrome(a[::-1])), 1),
    ]
    for i in range(2, m):
        top = palindrome(a[i - 2 :: -1])
        bottom = palindrome(a[i:])
        terms.append((theta_diagram(top, [a[i - 1]], bottom), 1))
    return DiagramSum.from_terms(terms)


def two_torsion_relation(kind: str, labels: Sequence[Label]) -> DiagramSum:
    """
    Twice the lifted class of T(a1..am, a(m+1), am..a1) (kind "T", m + 1
    labels) or O(a1..am..a1) (kind "O", m labels) as a combination of
    diagrams one degree higher.

    The signs of the glued terms depend on the good lift chosen by
    `good_lift`.

    Raises:
        ValueError: If kind is not "T" or "O", or m < 2.
    """
    families = {"T": SymmetricFamily.TREE_ODD, "O": SymmetricFamily.LOOP_ODD}
    if kind not in families:
        raise ValueError(f"kind must be 'T' or 'O', got {kind!r}")
    m = len(labels) - 1 if kind == "T" else len(labels)
    if m < 2:
        raise ValueError(f"two-torsion relations need m >= 2, got m = {m}")
    return sym_relation_odd(witness_for(families[kind], labels))


def symmetric_generators(labels: Sequence[Label], n: int) -> List[JacobiDiagram]:
    """
    The symmetric one-loop diagrams of internal degree n for a word of labels.

    Even n = 2m takes m + 1 labels and gives O(a1..am, am..a1) and
    O(a1..am, a(m+1), am..a2); odd n = 2m - 1 takes m labels and gives
    O(a1..am..a1).
    """
    if n % 2:
        return [_family_diagram(SymmetricFamily.LOOP_ODD, labels)[0]]
    mirrored = _family_diagram(SymmetricFamily.LOOP_EVEN, labels[:-1])[0]
    fixed = _family_diagram(SymmetricFamily.LOOP_FIXED, labels)[0]
    return [mirrored, fixed]
