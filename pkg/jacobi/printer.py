from __future__ import annotations

from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .diagram import (
    JacobiDiagram,
    circle_diagram,
    theta_diagram,
    tree_diagram,
)
from .labels import Label

SCHEMA_VERSION = 1


def _labels_text(labels: Sequence[Label]) -> str:
    return ",".join(str(label) for label in labels)


def _codes(labels: Sequence[Label]) -> Tuple[int, ...]:
    return tuple(label.code for label in labels)


def _circle_reading(diagram: JacobiDiagram) -> Optional[List[Label]]:
    if diagram.betti != 1 or not diagram.is_connected or diagram.ideg != diagram.n_legs:
        return None
    if diagram.ideg == 0:
        return None
    labels: List[Label] = []
    current = 0
    entry: Optional[int] = None
    for _ in range(diagram.ideg):
        darts = diagram.vertices[current]
        sides = [d for d in darts if diagram.is_leg_dart(diagram.mate[d])]
        if len(sides) != 1:
            return None
        labels.append(diagram.leg_label(diagram.mate[sides[0]]))
        others = [d for d in darts if d != sides[0]]
        out = others[1] if others[0] == entry else others[0]
        entry = diagram.mate[out]
        current = diagram.owner(entry)
    candidates = []
    for reading in (labels, labels[::-1]):
        for shift in range(len(reading)):
            rotated = reading[shift:] + reading[:shift]
            candidates.append(rotated)
    target = diagram.canonical()
    matches = [c for c in candidates if circle_diagram(c).canonical() == target]
    return min(matches, key=_codes) if matches else None


def _tree_reading(diagram: JacobiDiagram) -> Optional[List[Label]]:
    if diagram.betti != 0 or not diagram.is_connected:
        return None
    if diagram.ideg == 0:
        return sorted(diagram.labels, key=lambda label: label.code)
    # caterpillar: every vertex has a leg, and walking the internal edges is a path
    ends = []
    for index, vertex in enumerate(diagram.vertices):
        internal = [d for d in vertex if not diagram.is_leg_dart(diagram.mate[d])]
        if len(internal) == 3:
            return None
        if len(internal) <= 1:
            ends.append(index)
    if diagram.ideg == 1:
        ends = [0, 0]
    if len(ends) != 2:
        return None
    target = diagram.canonical()
    found: List[List[Label]] = []
    for first in ends:
        path = [first]
        previous: Optional[int] = None
        while len(path) < diagram.ideg:
            current = path[-1]
            nxt = [
                diagram.owner(diagram.mate[d])
                for d in diagram.vertices[current]
                if not diagram.is_leg_dart(diagram.mate[d])
                and diagram.owner(diagram.mate[d]) != previous
            ]
            if not nxt:
                return None
            previous = current
            path.append(nxt[0])
        middle = []
        for index in path[1:-1]:
            middle.extend(
                diagram.leg_label(diagram.mate[d])
                for d in diagram.vertices[index]
                if diagram.is_leg_dart(diagram.mate[d])
            )
        head = [
            diagram.leg_label(diagram.mate[d])
            for d in diagram.vertices[path[0]]
            if diagram.is_leg_dart(diagram.mate[d])
        ]
        tail = [
            diagram.leg_label(diagram.mate[d])
            for d in diagram.vertices[path[-1]]
            if diagram.is_leg_dart(diagram.mate[d])
        ]
        if diagram.ideg == 1:
            for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)):
                found.append([head[a], head[b], head[c]])
            continue
        for h, t in product(range(2), range(2)):
            found.append([head[h], head[1 - h]] + middle + [tail[1 - t], tail[t]])
    matches = [c for c in found if tree_diagram(c).canonical() == target]
    return min(matches, key=_codes) if matches else None


def _theta_reading(
    diagram: JacobiDiagram,
) -> Optional[Tuple[List[Label], List[Label], List[Label]]]:
    if diagram.betti != 2 or not diagram.is_connected:
        return None
    branches, paths = diagram.spine()
    if len(branches) != 2 or diagram.core_vertices() != list(range(diagram.ideg)):
        return None
    target = diagram.canonical()
    readings = []
    for path in paths:
        if diagram.owner(path.end) == diagram.owner(path.start):
            return None
    by_start = {path.start: path for path in paths}
    for left in branches:
        darts = diagram.vertices[left]
        for shift in range(3):
            chord, top, bottom = (darts[(shift + k) % 3] for k in range(3))
            blocks = []
            for dart in (top, chord, bottom):
                steps = by_start[dart].steps
                blocks.append([diagram.leg_label(diagram.mate[s.hang]) for s in steps])
            readings.append(tuple(blocks))
    matches = [r for r in readings if theta_diagram(*r).canonical() == target]
    if not matches:
        return None
    return min(matches, key=lambda r: tuple(_codes(block) for block in r))


def format_diagram(diagram: JacobiDiagram) -> str:
    """
    Render a diagram in the DSL, preferring the T, O and theta notations.

    The generic G[...] form is used when no notation matches; parsing the
    output always gives back an isomorphic diagram.
    """
    reading = _circle_reading(diagram)
    if reading is not None:
        return f"O({_labels_text(reading)})"
    reading = _tree_reading(diagram)
    if reading is not None:
        return f"T({_labels_text(reading)})"
    blocks = _theta_reading(diagram)
    if blocks is not None:
        return "theta(" + ";".join(_labels_text(b) for b in blocks) + ")"
    return format_generic(diagram)


def format_generic(diagram: JacobiDiagram) -> str:
    edge_name = {}
    for dart, other in enumerate(diagram.mate):
        edge_name[dart] = f"e{min(dart, other)}"
    vertices = ",".join(
        f"t{index + 1}=({','.join(edge_name[d] for d in vertex)})"
        for index, vertex in enumerate(diagram.vertices)
    )
    legs = ",".join(f"u({label})={edge_name[dart]}" for dart, label in diagram.legs)
    return f"G[{vertices};{legs}]"


def format_sum(diagram_sum) -> str:
    """
    Render a DiagramSum such as "2*O(1+,2+) - T(1+,2+,1+)".
    """
    parts: List[str] = []
    for diagram, coefficient in diagram_sum.items():
        text = format_diagram(diagram)
        magnitude = abs(coefficient)
        body = text if magnitude == 1 else f"{magnitude}*{text}"
        if not parts:
            parts.append(body if coefficient > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coefficient > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"


def diagram_to_json(diagram: JacobiDiagram) -> Dict[str, Any]:
    """
    JSON-ready description of the canonical form of a diagram.
    """
    canonical = diagram.canonical()
    stats = canonical.stats()
    edges = sorted(
        [d, other] for d, other in enumerate(canonical.mate) if d < other
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "dsl": format_diagram(canonical),
        "ideg": stats.ideg,
        "betti": stats.betti,
        "legs": stats.legs,
        "connected": stats.connected,
        "vertices": [list(v) for v in canonical.vertices],
        "univalent": [[dart, str(label)] for dart, label in canonical.legs],
        "edges": edges,
    }


def diagram_from_json(data: Dict[str, Any]) -> JacobiDiagram:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('schema_version')}")
    return JacobiDiagram.from_parts(
        [tuple(v) for v in data["vertices"]],
        [(dart, Label.parse(text)) for dart, text in data["univalent"]],
        [tuple(edge) for edge in data["edges"]],
    )


def sum_to_json(diagram_sum) -> List[Dict[str, Any]]:
    return [
        {"diagram": format_diagram(diagram), "coefficient": coefficient}
        for diagram, coefficient in diagram_sum.items()
    ]
