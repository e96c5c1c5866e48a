from __future__ import annotations

from enum import Enum
from typing import (
    Dict,
    Hashable,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from .error_handler import StratumError
from .labels import Label

Dart = int
Vertex = Tuple[Dart, Dart, Dart]


class DiagramStats(NamedTuple):
    ideg: int
    betti: int
    legs: int
    connected: bool


class SpineType(Enum):
    THETA = "Theta"
    EYEGLASS = "Eyeglass"


class PathStep(NamedTuple):
    """
    A degree-two vertex of the spine walked from `entry` to `exit`; `hang` is
    the dart leading into the hanging tree or leg.
    """

    vertex: int
    entry: Dart
    exit: Dart
    hang: Dart


class SpinePath(NamedTuple):
    start: Dart
    end: Dart
    steps: Tuple[PathStep, ...]


class JacobiDiagram:
    """
    A uni-trivalent graph with a cyclic order at each trivalent vertex.

    Half-edges (darts) are the integers 0..N-1. Each trivalent vertex is a
    triple of darts read in its cyclic order, each univalent vertex (leg)
    owns one dart and a label, and `mate` pairs darts into edges.

    Attributes:
        vertices (Tuple[Vertex, ...]): Trivalent vertices.
        legs (Tuple[Tuple[Dart, Label], ...]): Univalent vertices with labels.
        mate (Tuple[Dart, ...]): The edge involution on darts.
    """

    __slots__ = ("vertices", "legs", "mate", "_owner", "_hash", "_canonical")

    def __init__(
        self,
        vertices: Sequence[Sequence[Dart]],
        legs: Sequence[Tuple[Dart, Label]],
        mate: Sequence[Dart],
    ) -> None:
        self.vertices: Tuple[Vertex, ...] = tuple(
            (v[0], v[1], v[2]) for v in vertices
        )
        self.legs: Tuple[Tuple[Dart, Label], ...] = tuple(
            (d, label) for d, label in legs
        )
        self.mate: Tuple[Dart, ...] = tuple(mate)
        self._hash: Optional[int] = None
        self._canonical: Optional[JacobiDiagram] = None
        self._owner: List[int] = self._validate()

    def _validate(self) -> List[int]:
        size = len(self.mate)
        owner = [-(size + 1)] * size
        for index, vertex in enumerate(self.vertices):
            if len(set(vertex)) != 3:
                raise ValueError(f"vertex {index} repeats a half-edge: {vertex}")
            for dart in vertex:
                self._claim(owner, dart, index)
        for index, (dart, label) in enumerate(self.legs):
            if not isinstance(label, Label):
                raise ValueError(f"leg {index} has no label")
            self._claim(owner, dart, -1 - index)
        for dart, other in enumerate(self.mate):
            if not 0 <= other < size or other == dart or self.mate[other] != dart:
                raise ValueError(f"half-edge {dart} is not paired")
        return owner

    def _claim(self, owner: List[int], dart: Dart, who: int) -> None:
        if not 0 <= dart < len(self.mate):
            raise ValueError(f"half-edge {dart} out of range")
        if owner[dart] != -(len(self.mate) + 1):
            raise ValueError(f"half-edge {dart} is used twice")
        owner[dart] = who

    @classmethod
    def from_parts(
        cls,
        vertices: Iterable[Sequence[Hashable]],
        legs: Iterable[Tuple[Hashable, Label]],
        edges: Iterable[Tuple[Hashable, Hashable]],
    ) -> JacobiDiagram:
        """
        Build a diagram from arbitrary hashable half-edge names.

        Args:
            vertices: Triples of half-edge names in cyclic order.
            legs: (half-edge name, label) pairs.
            edges: Pairs of half-edge names forming the edges.

        Returns:
            JacobiDiagram: The diagram with half-edges renumbered 0..N-1.

        Raises:
            ValueError: If some half-edge is unused, reused or unpaired.
        """
        vertices = [tuple(v) for v in vertices]
        legs = list(legs)
        number: Dict[Hashable, int] = {}
        for vertex in vertices:
            for name in vertex:
                number.setdefault(name, len(number))
        for name, _ in legs:
            number.setdefault(name, len(number))
        mate = [-1] * len(number)
        for a, b in edges:
            if a not in number or b not in number:
                raise ValueError(f"edge ({a}, {b}) uses an unknown half-edge")
            if mate[number[a]] != -1 or mate[number[b]] != -1:
                raise ValueError(f"edge ({a}, {b}) reuses a half-edge")
            mate[number[a]] = number[b]
            mate[number[b]] = number[a]
        return cls(
            [tuple(number[x] for x in v) for v in vertices],
            [(number[name], label) for name, label in legs],
            mate,
        )

    @property
    def ideg(self) -> int:
        return len(self.vertices)

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    @property
    def n_edges(self) -> int:
        return len(self.mate) // 2

    @property
    def betti(self) -> int:
        return self.n_edges - self.ideg - self.n_legs + self.components()

    @property
    def labels(self) -> Tuple[Label, ...]:
        return tuple(label for _, label in self.legs)

    def owner(self, dart: Dart) -> int:
        """
        Index of the vertex owning `dart`, or -1-k for the k-th leg.
        """
        return self._owner[dart]

    def is_leg_dart(self, dart: Dart) -> bool:
        return self._owner[dart] < 0

    def leg_label(self, dart: Dart) -> Label:
        return self.legs[-1 - self._owner[dart]][1]

    def sigma(self, dart: Dart) -> Dart:
        """
        The next half-edge in the cyclic order at the owner of `dart`.
        """
        who = self._owner[dart]
        if who < 0:
            return dart
        a, b, c = self.vertices[who]
        return b if dart == a else c if dart == b else a

    def siblings(self, dart: Dart) -> Tuple[Dart, Dart]:
        nxt = self.sigma(dart)
        return nxt, self.sigma(nxt)

    def components(self) -> int:
        parent = list(range(len(self.mate)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            parent[find(x)] = find(y)

        for a, b, c in self.vertices:
            union(a, b)
            union(b, c)
        for dart, other in enumerate(self.mate):
            union(dart, other)
        return len({find(x) for x in range(len(self.mate))})

    @property
    def is_connected(self) -> bool:
        return self.components() == 1

    def stats(self) -> DiagramStats:
        """
        Internal degree, first Betti number, number of legs and connectedness.
        """
        return DiagramStats(self.ideg, self.betti, self.n_legs, self.is_connected)

    def self_loop_vertices(self) -> List[int]:
        return [
            index
            for index, vertex in enumerate(self.vertices)
            if any(self._owner[self.mate[d]] == index for d in vertex)
        ]

    def has_self_loop(self) -> bool:
        return bool(self.self_loop_vertices())

    def mirror(self) -> JacobiDiagram:
        """
        Reverse the cyclic order at every trivalent vertex.
        """
        return JacobiDiagram(
            [(a, c, b) for a, b, c in self.vertices], self.legs, self.mate
        )

    def flip(self, vertex: int) -> JacobiDiagram:
        vertices = list(self.vertices)
        a, b, c = vertices[vertex]
        vertices[vertex] = (a, c, b)
        return JacobiDiagram(vertices, self.legs, self.mate)

    def relabel(self, labels: Sequence[Label]) -> JacobiDiagram:
        """
        Replace the leg labels, in leg order.
        """
        if len(labels) != len(self.legs):
            raise ValueError("label count does not match the number of legs")
        return JacobiDiagram(
            self.vertices,
            [(dart, label) for (dart, _), label in zip(self.legs, labels)],
            self.mate,
        )

    def map_labels(self, fn) -> JacobiDiagram:
        return self.relabel([fn(label) for label in self.labels])

    def canonical(self) -> JacobiDiagram:
        if self._canonical is None:
            from .canonical import canonicalize

            self._canonical = canonicalize(self)
        return self._canonical

    def core_vertices(self) -> List[int]:
        """
        Trivalent vertices surviving repeated removal of degree-one vertices.
        """
        live = set(range(self.ideg))
        changed = True
        while changed:
            changed = False
            for index in sorted(live):
                degree = sum(
                    1
                    for d in self.vertices[index]
                    if self._owner[self.mate[d]] in live
                )
                if degree <= 1:
                    live.discard(index)
                    changed = True
        return sorted(live)

    def spine(self) -> Tuple[List[int], List[SpinePath]]:
        """
        Branch vertices of the spine and the paths between them.

        Every spine path is reported once from each end.

        Returns:
            Tuple[List[int], List[SpinePath]]: Degree-three core vertices and
            the walks leaving them.
        """
        core = set(self.core_vertices())

        def core_darts(index: int) -> List[Dart]:
            return [d for d in self.vertices[index] if self._owner[self.mate[d]] in core]

        branches = [index for index in sorted(core) if len(core_darts(index)) == 3]
        paths: List[SpinePath] = []
        if not branches:
            return branches, paths
        for index in branches:
            for start in self.vertices[index]:
                steps: List[PathStep] = []
                current = self.mate[start]
                while self._owner[current] not in branches:
                    who = self._owner[current]
                    exit_dart = next(d for d in core_darts(who) if d != current)
                    hang = next(d for d in self.vertices[who] if d not in (current, exit_dart))
                    steps.append(PathStep(who, current, exit_dart, hang))
                    current = self.mate[exit_dart]
                paths.append(SpinePath(start, current, tuple(steps)))
        return branches, paths

    def spine_type(self) -> SpineType:
        """
        Classify a connected two-loop diagram by its spine.

        Raises:
            StratumError: If the diagram is disconnected or its Betti number is not 2.
        """
        stats = self.stats()
        if not stats.connected or stats.betti != 2:
            raise StratumError(
                f"spine type needs a connected diagram with Betti number 2, got {stats}"
            )
        branches, paths = self.spine()
        for path in paths:
            if self._owner[path.end] == self._owner[path.start]:
                return SpineType.EYEGLASS
        return SpineType.THETA

    def hanging_leaves(self, dart: Dart) -> List[Dart]:
        """
        Leg darts of the tree entered through `dart`, in cyclic order.
        """
        current = self.mate[dart]
        if self._owner[current] < 0:
            return [current]
        x, y = self.siblings(current)
        return self.hanging_leaves(x) + self.hanging_leaves(y)

    def _key(self) -> Tuple:
        return (self.vertices, self.legs, self.mate)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JacobiDiagram):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __lt__(self, other: JacobiDiagram) -> bool:
        from .canonical import sort_key

        return sort_key(self) < sort_key(other)

    def __repr__(self) -> str:
        from .printer import format_diagram

        return f"JacobiDiagram({format_diagram(self)})"


class DiagramBuilder:
    """
    Mutable workspace for surgery on diagrams; half-edge names are kept
    from the source diagram so edits can reuse them.
    """

    __slots__ = ("vertices", "legs", "mate", "_next")

    def __init__(self) -> None:
        self.vertices: Dict[int, Tuple[Dart, Dart, Dart]] = {}
        self.legs: Dict[Dart, Label] = {}
        self.mate: Dict[Dart, Dart] = {}
        self._next: int = 0

    @classmethod
    def from_diagram(cls, diagram: JacobiDiagram) -> DiagramBuilder:
        builder = cls()
        builder.vertices = dict(enumerate(diagram.vertices))
        builder.legs = {dart: label for dart, label in diagram.legs}
        builder.mate = dict(enumerate(diagram.mate))
        builder._next = len(diagram.mate)
        return builder

    def copy(self) -> DiagramBuilder:
        builder = DiagramBuilder()
        builder.vertices = dict(self.vertices)
        builder.legs = dict(self.legs)
        builder.mate = dict(self.mate)
        builder._next = self._next
        return builder

    def new_dart(self) -> Dart:
        self._next += 1
        return self._next - 1

    def new_darts(self, count: int) -> List[Dart]:
        return [self.new_dart() for _ in range(count)]

    def connect(self, a: Dart, b: Dart) -> None:
        self.mate[a] = b
        self.mate[b] = a

    def add_vertex(self, a: Dart, b: Dart, c: Dart) -> int:
        key = max(self.vertices, default=-1) + 1
        self.vertices[key] = (a, b, c)
        return key

    def add_leg(self, dart: Dart, label: Label) -> None:
        self.legs[dart] = label

    def new_leg(self, attach: Dart, label: Label) -> Dart:
        """
        Create a leg and connect it to `attach`.
        """
        dart = self.new_dart()
        self.add_leg(dart, label)
        self.connect(dart, attach)
        return dart

    def remove_vertex(self, key: int) -> Tuple[Dart, Dart, Dart]:
        return self.vertices.pop(key)

    def remove_leg(self, dart: Dart) -> Label:
        self.mate.pop(dart, None)
        return self.legs.pop(dart)

    def build(self) -> JacobiDiagram:
        used = {d for v in self.vertices.values() for d in v} | set(self.legs)
        edges = {(min(a, b), max(a, b)) for a, b in self.mate.items() if a in used}
        return JacobiDiagram.from_parts(
            [self.vertices[key] for key in sorted(self.vertices)],
            sorted(self.legs.items()),
            sorted(edges),
        )


def tree_diagram(labels: Sequence[Label]) -> JacobiDiagram:
    """
    The tree T(a1, ..., an) with legs along a path of n-2 trivalent vertices.

    T(a, b) is the strut. Vertex k carries leg a(k+1) and reads (leg, previous,
    next); the first and last vertices use a1 and an as previous and next.

    Args:
        labels (Sequence[Label]): At least two labels.

    Returns:
        JacobiDiagram: The tree.
    """
    n = len(labels)
    if n < 2:
        raise ValueError("T(...) needs at least two labels")
    builder = DiagramBuilder()
    if n == 2:
        a, b = builder.new_darts(2)
        builder.add_leg(a, labels[0])
        builder.add_leg(b, labels[1])
        builder.connect(a, b)
        return builder.build()
    previous = builder.new_dart()
    builder.add_leg(previous, labels[0])
    for k in range(1, n - 1):
        side, back, forward = builder.new_darts(3)
        builder.new_leg(side, labels[k])
        builder.connect(back, previous)
        builder.add_vertex(side, back, forward)
        previous = forward
    builder.new_leg(previous, labels[-1])
    return builder.build()


def circle_diagram(labels: Sequence[Label]) -> JacobiDiagram:
    """
    The one-loop diagram O(a1, ..., an).

    Vertex k reads (leg k, edge from vertex k-1, edge to vertex k+1), indices mod n.

    Args:
        labels (Sequence[Label]): At least one label.

    Returns:
        JacobiDiagram: The wheel-like diagram.
    """
    n = len(labels)
    if n < 1:
        raise ValueError("O(...) needs at least one label")
    builder = DiagramBuilder()
    incoming = builder.new_darts(n)
    outgoing = builder.new_darts(n)
    for k, label in enumerate(labels):
        side = builder.new_dart()
        builder.new_leg(side, label)
        builder.add_vertex(side, incoming[k], outgoing[k])
        builder.connect(outgoing[k], incoming[(k + 1) % n])
    return builder.build()


def theta_diagram(
    top: Sequence[Label], chord: Sequence[Label], bottom: Sequence[Label]
) -> JacobiDiagram:
    """
    The two-loop diagram theta(top; chord; bottom).

    Two branch vertices L = (chord, top, bottom) and R = (top, chord, bottom)
    are joined by three paths whose legs are read from L to R. Top and chord
    vertices read (leg, toward L, toward R), bottom vertices (leg, toward R,
    toward L). An empty block is a direct edge.
    """
    builder = DiagramBuilder()
    l_chord, l_top, l_bottom = builder.new_darts(3)
    r_top, r_chord, r_bottom = builder.new_darts(3)
    builder.add_vertex(l_chord, l_top, l_bottom)
    builder.add_vertex(r_top, r_chord, r_bottom)
    for start, end, block, reversed_path in (
        (l_top, r_top, top, False),
        (l_chord, r_chord, chord, False),
        (l_bottom, r_bottom, bottom, True),
    ):
        current = start
        for label in block:
            side, left, right = builder.new_darts(3)
            builder.new_leg(side, label)
            if reversed_path:
                builder.add_vertex(side, right, left)
            else:
                builder.add_vertex(side, left, right)
            builder.connect(current, left)
            current = right
        builder.connect(current, end)
    return builder.build()
