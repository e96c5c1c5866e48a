"""
Integral weight systems from structure constants.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from .diagram import JacobiDiagram, tree_diagram
from .error_handler import WeightError
from .labels import Label, alphabet
from .maps import bu_iter, delta_double_prime
from .relations import Element, as_sum, build_presentation, rank_and_torsion, torsion_mod2
from .smith import rank_mod2
from .sums import DiagramSum

logger = logging.getLogger(__name__)

Monomial = Tuple[Tuple[Label, int], ...]


@dataclass(frozen=True)
class StructureConstants:
    """
    Constants c_ijk on colours 1..d.

    Attributes:
        dimension (int): The number d of colours.
        entries (Tuple[Tuple[Tuple[int, int, int], int], ...]): Nonzero values.
    """

    dimension: int
    entries: Tuple[Tuple[Tuple[int, int, int], int], ...]

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise WeightError(f"dimension must be positive, got {self.dimension}")
        for (i, j, k), _ in self.entries:
            if not all(1 <= x <= self.dimension for x in (i, j, k)):
                raise WeightError(f"index ({i}, {j}, {k}) out of range 1..{self.dimension}")

    @classmethod
    def from_mapping(cls, dimension: int, values: Mapping[Tuple[int, int, int], int]) -> StructureConstants:
        """
        Build constants from a table of values; zero entries are dropped.

        Args:
            dimension (int): The number d of colours.
            values (Mapping[Tuple[int, int, int], int]): c_ijk by index triple.

        Raises:
            WeightError: If d < 1 or an index lies outside 1..d.
        """
        return cls(dimension, tuple(sorted((key, v) for key, v in values.items() if v)))

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> StructureConstants:
        """
        Read {"d": 3, "entries": [[i, j, k, c], ...]}.

        Raises:
            WeightError: If the document is malformed.
        """
        try:
            dimension = int(data["d"])
            values = {(int(i), int(j), int(k)): int(c) for i, j, k, c in data["entries"]}
        except (KeyError, TypeError, ValueError) as error:
            raise WeightError(f"malformed structure constants: {error}") from error
        return cls.from_mapping(dimension, values)

    @classmethod
    def load(cls, path: str) -> StructureConstants:
        """
        Read constants from a JSON file in the `from_json` layout.

        Args:
            path (str): Path of the file.

        Raises:
            WeightError: If the file is not valid JSON or is malformed.
            OSError: If the file cannot be read.
        """
        with open(path, encoding="utf-8") as stream:
            try:
                data = json.load(stream)
            except json.JSONDecodeError as error:
                raise WeightError(f"malformed structure constants in {path}: {error}") from error
        return cls.from_json(data)

    def to_json(self) -> Dict[str, Any]:
        """
        The inverse of `from_json`.
        """
        return {
            "d": self.dimension,
            "entries": [[i, j, k, c] for (i, j, k), c in self.entries],
        }

    @cached_property
    def table(self) -> Dict[Tuple[int, int, int], int]:
        return dict(self.entries)

    def c(self, i: int, j: int, k: int) -> int:
        """
        The constant c_ijk, zero when not listed.
        """
        return self.table.get((i, j, k), 0)

    @cached_property
    def violations(self) -> Tuple[str, ...]:
        """
        Names of the violated axioms: antisymmetry, Jacobi, self-loop, cyclic.
        """
        colours = range(1, self.dimension + 1)
        c = self.c
        found: List[str] = []
        if any(c(i, j, k) != -c(j, i, k) for i, j, k in product(colours, repeat=3)):
            found.append("antisymmetry")
        for i, j, k, l in product(colours, repeat=4):
            total = sum(
                c(i, j, m) * c(m, k, l) - c(l, i, m) * c(m, j, k) + c(l, j, m) * c(m, i, k)
                for m in colours
            )
            if total:
                found.append("jacobi")
                break
        if any(c(i, i, k) for i, k in product(colours, repeat=2)):
            found.append("self-loop")
        if any(
            not c(i, j, k) == c(j, k, i) == c(k, i, j)
            for i, j, k in product(colours, repeat=3)
        ):
            found.append("cyclic")
        return tuple(found)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def require_valid(self) -> None:
        """
        Raises:
            WeightError: If any axiom in `violations` fails.
        """
        if self.violations:
            raise WeightError(f"structure constants violate {', '.join(self.violations)}")

    def swap_sign(self, colour: int) -> int:
        """
        For d = 3, the sign e with c(s i, s j, s k) = e c(i, j, k), s swapping
        the two colours other than `colour`.

        Raises:
            WeightError: If there is no such symmetry.
        """
        if self.dimension != 3 or colour not in (1, 2, 3):
            raise WeightError("the colour-swap argument needs three colours")
        p, q = (x for x in (1, 2, 3) if x != colour)
        swap = {colour: colour, p: q, q: p}
        for sign in (1, -1):
            if all(
                self.c(swap[i], swap[j], swap[k]) == sign * self.c(i, j, k)
                for i, j, k in product((1, 2, 3), repeat=3)
            ):
                return sign
        raise WeightError(f"no colour swap fixing {colour} preserves the constants")


def sl2() -> StructureConstants:
    """
    c_ijk = sgn(ijk) on distinct triples, 0 otherwise.
    """
    values = {}
    for i, j, k in product((1, 2, 3), repeat=3):
        if len({i, j, k}) == 3:
            inversions = (i > j) + (i > k) + (j > k)
            values[(i, j, k)] = -1 if inversions % 2 else 1
    return StructureConstants.from_mapping(3, values)


PRESETS = {"sl2": sl2}


class WeightPolynomial:
    """
    Integer combination of monomials in the symmetric algebra on H (x) g.

    A monomial is a sorted tuple of (label, colour) factors.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None) -> None:
        self.terms: Dict[Monomial, int] = {}
        for monomial, value in (terms or {}).items():
            self._accumulate(monomial, value)

    @staticmethod
    def monomial(factors: Iterable[Tuple[Label, int]]) -> Monomial:
        """
        Normal form of a product of (label, colour) factors.
        """
        return tuple(sorted(factors))

    def _accumulate(self, monomial: Monomial, value: int) -> None:
        key = self.monomial(monomial)
        total = self.terms.get(key, 0) + value
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        for monomial in sorted(self.terms):
            yield monomial, self.terms[monomial]

    def coefficient(self, factors: Iterable[Tuple[Label, int]]) -> int:
        """
        Coefficient of the monomial with these factors, in any order.
        """
        return self.terms.get(self.monomial(factors), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: WeightPolynomial) -> WeightPolynomial:
        result = WeightPolynomial(self.terms)
        for monomial, value in other.terms.items():
            result._accumulate(monomial, value)
        return result

    def __mul__(self, scalar: int) -> WeightPolynomial:
        return WeightPolynomial({m: v * scalar for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> WeightPolynomial:
        return self * -1

    def __sub__(self, other: WeightPolynomial) -> WeightPolynomial:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def mod2(self) -> WeightPolynomial:
        """
        Coefficients reduced to 0 or 1.
        """
        return WeightPolynomial({m: 1 for m, v in self.terms.items() if v % 2})

    def project(self, colour: int) -> WeightPolynomial:
        """
        Keep the monomials whose factors all carry `colour`.
        """
        return WeightPolynomial(
            {m: v for m, v in self.terms.items() if all(c == colour for _, c in m)}
        )

    def half(self) -> WeightPolynomial:
        """
        Divide every coefficient by two.

        Raises:
            WeightError: If some coefficient is odd.
        """
        odd = [m for m, v in self.terms.items() if v % 2]
        if odd:
            raise WeightError(f"odd coefficient at {_format_monomial(odd[0])}")
        return WeightPolynomial({m: v // 2 for m, v in self.terms.items()})

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"monomial": [[str(label), colour] for label, colour in m], "coefficient": v}
            for m, v in self.items()
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{v:+d}*{_format_monomial(m)}" for m, v in self.items())

    def __repr__(self) -> str:
        return f"WeightPolynomial({self})"


def _format_monomial(monomial: Monomial) -> str:
    return "".join(f"({label}@e{colour})" for label, colour in monomial)


def _evaluate_diagram(constants: StructureConstants, diagram: JacobiDiagram) -> WeightPolynomial:
    edges = sorted({(min(a, b), max(a, b)) for a, b in enumerate(diagram.mate)})
    edge_of: Dict[int, int] = {}
    for index, (a, b) in enumerate(edges):
        edge_of[a] = edge_of[b] = index
    completes: List[List[Tuple[int, int, int]]] = [[] for _ in edges]
    for vertex in diagram.vertices:
        indices = tuple(edge_of[d] for d in vertex)
        completes[max(indices)].append(indices)
    legs = [(edge_of[dart], label) for dart, label in diagram.legs]
    colours = [0] * len(edges)
    palette = range(1, constants.dimension + 1)
    totals: Dict[Monomial, int] = {}

    def walk(position: int, weight: int) -> None:
        if position == len(edges):
            key = WeightPolynomial.monomial((label, colours[e]) for e, label in legs)
            totals[key] = totals.get(key, 0) + weight
            return
        for colour in palette:
            colours[position] = colour
            value = weight
            for i, j, k in completes[position]:
                value *= constants.c(colours[i], colours[j], colours[k])
                if not value:
                    break
            if value:
                walk(position + 1, value)

    walk(0, 1)
    return WeightPolynomial(totals)


def evaluate(constants: StructureConstants, x: Element) -> WeightPolynomial:
    """
    Sum over colourings of the edges of the product of the constants at the
    trivalent vertices times the product of (label, colour) at the legs.

    Raises:
        WeightError: If the constants violate an axiom.
    """
    constants.require_valid()
    result = WeightPolynomial()
    for diagram, coefficient in as_sum(x).terms.items():
        result = result + _evaluate_diagram(constants, diagram) * coefficient
    return result


def project_half(constants: StructureConstants, x: Element, colour: int) -> WeightPolynomial:
    """
    Half of the projection of the weight onto monomials in one colour.

    Raises:
        WeightError: Without a colour swap symmetry fixing `colour`, or if a
            projected coefficient is odd.
    """
    constants.swap_sign(colour)
    return evaluate(constants, x).project(colour).half()


class HigherLoopReport(NamedTuple):
    torsion_rank: int
    kernel_rank: int
    image_rank: int


def _tree_pairs(k: int, g: int) -> Dict[Tuple[Label, Label], DiagramSum]:
    return {
        (a, b): bu_iter(tree_diagram([a, b, a]), k)
        for a, b in product(alphabet(g), repeat=2)
    }


def higher_loop_bounds(k: int, g: int, max_degree: Optional[int] = None) -> HigherLoopReport:
    """
    For the stratum (2k+1, k): the Z/2 rank of the torsion, the rank of the
    span of bu^k(T(a,b,a)) - bu^k(T(b,a,b)) in it, and the rank of the image
    of bu^k(T(a,b,a)) under half the colour-1 weight of delta''.

    Raises:
        CapExceededError: If 2k+2 is above the degree cap.
    """
    presentation = build_presentation(2 * k + 1, k, g, max_degree=max_degree)
    torsion_rank = rank_and_torsion(presentation).two_rank()
    images = _tree_pairs(k, g)
    labels = alphabet(g)
    differences = [
        list(torsion_mod2(images[(a, b)] - images[(b, a)], presentation))
        for i, a in enumerate(labels)
        for b in labels[i + 1:]
    ]
    constants = sl2()
    monomials: Dict[Monomial, int] = {}
    rows = []
    for x in images.values():
        weight = project_half(constants, delta_double_prime(x), 1).mod2()
        rows.append({monomials.setdefault(m, len(monomials)) for m in weight.terms})
    vectors = [[int(i in row) for i in range(len(monomials))] for row in rows]
    report = HigherLoopReport(torsion_rank, rank_mod2(differences), rank_mod2(vectors))
    logger.debug("higher loop bounds k=%d g=%d: %s", k, g, report)
    return report
