"""
Necklaces with arrow: coordinates for the symmetric one-loop diagrams.

A necklace of 2m beads is stored as its bead word read from the tail of
the arrow. When the arrow points at a midpoint the word is
a1..am am..a1 with the head between the two am, written "O(a1,...,am ^ am,...,a1)".
When it points at a bead the word is t a1..a(m-1) b a(m-1)..a1 with tail
bead t and head bead b, written "O(t,a1,...,a(m-1) | b | a(m-1),...,a1)".
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .diagram import JacobiDiagram, circle_diagram
from .enumeration import check_degree
from .error_handler import ErrorHandler, StratumError
from .labels import Label, alphabet
from .maps import delta_prime_mod2, fold_map
from .parser import Parser, tokenize
from .relations import ModulePresentation, build_presentation, torsion_mod2
from .smith import kernel_mod2, rank_mod2, same_span_mod2
from .sums import DiagramSum
from .tensor import TensorWord

logger = logging.getLogger(__name__)


class NecklaceWithArrow(NamedTuple):
    """
    Attributes:
        beads (Tuple[Label, ...]): 2m beads read from the tail of the arrow.
        prime (bool): True when the arrow points at a bead.
    """

    beads: Tuple[Label, ...]
    prime: bool

    @property
    def m(self) -> int:
        return len(self.beads) // 2

    def validate(self) -> None:
        """
        Raises:
            ValueError: If the bead count is odd or the arrow is not an axis.
        """
        size = len(self.beads)
        if size == 0 or size % 2:
            raise ValueError(f"a necklace with arrow has an even positive length, got {size}")
        for k in range(size):
            mirror = (-k) % size if self.prime else size - 1 - k
            if self.beads[k] != self.beads[mirror]:
                raise ValueError(f"the arrow of {self} is not an axis of symmetry")

    def rotate_arrow(self, half_steps: int) -> NecklaceWithArrow:
        """
        Rotate only the arrow by `half_steps` half-bead positions.

        Raises:
            ValueError: If the rotated arrow is not an axis of symmetry.
        """
        size = len(self.beads)
        tail = (0 if self.prime else -1) + half_steps
        prime = tail % 2 == 0
        start = (tail if prime else tail + 1) // 2
        beads = tuple(self.beads[(start + k) % size] for k in range(size))
        result = NecklaceWithArrow(beads, prime)
        result.validate()
        return result

    def _arrow_invariant(self, half_steps: int) -> bool:
        if half_steps % 2:
            return False
        try:
            return self.rotate_arrow(half_steps) == self
        except ValueError:
            return False

    def __str__(self) -> str:
        m = self.m
        if self.prime:
            before = ",".join(str(b) for b in self.beads[:m])
            after = ",".join(str(b) for b in self.beads[m + 1:])
            return f"O({before} | {self.beads[m]} | {after})"
        before = ",".join(str(b) for b in self.beads[:m])
        after = ",".join(str(b) for b in self.beads[m:])
        return f"O({before} ^ {after})"


def necklace(beads: Sequence[Label], prime: bool = False) -> NecklaceWithArrow:
    result = NecklaceWithArrow(tuple(beads), prime)
    result.validate()
    return result


def double_from_half(half: Sequence[Label]) -> NecklaceWithArrow:
    """
    O(a1,...,am ^ am,...,a1).
    """
    half = list(half)
    return NecklaceWithArrow(tuple(half + half[::-1]), False)


def prime_from_parts(tail: Label, side: Sequence[Label], head: Label) -> NecklaceWithArrow:
    """
    O(t, a1,...,a(m-1) | b | a(m-1),...,a1).
    """
    side = list(side)
    return NecklaceWithArrow(tuple([tail] + side + [head] + side[::-1]), True)


def parse_necklace(text: str, genus: Optional[int] = None) -> NecklaceWithArrow:
    """
    Raises:
        ParseError: On malformed input.
        ValueError: If the arrow is not an axis of symmetry.
    """
    error_handler = ErrorHandler()
    before, head, after = Parser(tokenize(text, error_handler), error_handler, genus).necklace()
    if head is None:
        return necklace(before + after, prime=False)
    return necklace(before + [head] + after, prime=True)


def enumerate_necklaces(
    length: int, g: int, max_degree: Optional[int] = None
) -> Tuple[List[NecklaceWithArrow], List[NecklaceWithArrow]]:
    """
    All necklaces with arrow of `length` = 2m beads.

    Returns:
        Tuple[List[NecklaceWithArrow], List[NecklaceWithArrow]]: The (2g)^(m+1)
        bead-pointing and the (2g)^m midpoint-pointing necklaces.

    Raises:
        ValueError: If the length is not a positive even number.
        CapExceededError: If 2m is above the degree cap.
    """
    if length < 2 or length % 2:
        raise ValueError(f"necklace length must be positive and even, got {length}")
    check_degree(length, max_degree)
    m = length // 2
    labels = alphabet(g)
    primes = [
        prime_from_parts(word[0], word[1:m], word[m])
        for word in product(labels, repeat=m + 1)
    ]
    doubles = [double_from_half(word) for word in product(labels, repeat=m)]
    return primes, doubles


def period_exponent(x: NecklaceWithArrow) -> int:
    """
    The least e with x differing from x rotated (arrow only) by pi / 2^e.
    """
    half_steps = len(x.beads)
    e = 0
    while x._arrow_invariant(half_steps):
        half_steps //= 2
        e += 1
    return e


def iota(x: NecklaceWithArrow) -> NecklaceWithArrow:
    """
    Rotate the arrow by pi / 2^e(x); an involution without fixed points.
    """
    return x.rotate_arrow(len(x.beads) >> period_exponent(x))


def _sort_key(x: NecklaceWithArrow) -> Tuple:
    return (x.prime, tuple(b.code for b in x.beads))


def orbit_representatives(necklaces: Sequence[NecklaceWithArrow]) -> List[NecklaceWithArrow]:
    """
    The smaller element of every iota orbit meeting `necklaces`.
    """
    found: Dict[NecklaceWithArrow, None] = {}
    for x in necklaces:
        found.setdefault(min(x, iota(x), key=_sort_key))
    return sorted(found, key=_sort_key)


def _require_double(x: NecklaceWithArrow) -> None:
    if x.prime:
        raise StratumError(f"{x} points at a bead; merging needs a midpoint arrow")


def mh(x: NecklaceWithArrow) -> JacobiDiagram:
    """
    Merge the two beads next to the head: O(a1..am ^ am..a1) -> O(a1..am..a1).

    Raises:
        StratumError: If the arrow points at a bead.
    """
    _require_double(x)
    m = x.m
    return circle_diagram(x.beads[:m] + x.beads[m + 1:])


def mht(x: NecklaceWithArrow) -> JacobiDiagram:
    """
    Merge next to the head and next to the tail: O(a1..am ^ am..a1) -> O(a1..am..a2).

    Raises:
        StratumError: If the arrow points at a bead.
        ValueError: If m < 2.
    """
    _require_double(x)
    m = x.m
    if m < 2:
        raise ValueError("merging at both ends needs at least four beads")
    return circle_diagram(x.beads[:m] + x.beads[m + 1: 2 * m - 1])


def forget(x: NecklaceWithArrow) -> JacobiDiagram:
    """
    The symmetric one-loop diagram of the beads.
    """
    return circle_diagram(x.beads)


def period_image(x: NecklaceWithArrow) -> TensorWord:
    """
    For x = O(w, w~, ..., w, w~ ^ ...) with 2^e blocks on each side, the mod 2
    element w w~ ... + w~ w ... of length m/2, each term made of 2^(e-1) blocks.

    Raises:
        ValueError: If x points at a bead, has e(x) = 0 or iota(x) points at a bead.
    """
    _require_double(x)
    e = period_exponent(x)
    if e == 0 or iota(x).prime:
        raise ValueError(f"{x} has no period decomposition")
    m = x.m
    block = m >> e
    word = x.beads[:block]
    reverse = word[::-1]
    count = 1 << (e - 1)
    first = sum(((word, reverse)[k % 2] for k in range(count)), ())
    second = sum(((reverse, word)[k % 2] for k in range(count)), ())
    return TensorWord.from_terms([(first, 1), (second, 1)]).mod2()


def kernel_rank_formula(m: int, g: int) -> int:
    d = 2 * g
    return (d**m - d ** ((m + 1) // 2)) // 2


class KernelReport(NamedTuple):
    """
    Attributes:
        basis: mh(x) + mh(iota(x)) for x with e(x) = 0, one per orbit.
        rank: Dimension over Z/2 of their span in the torsion of the source.
        formula: The closed-form rank.
        matches_combined_kernel: Whether the span equals the kernel of the
            combined map on the torsion.
    """

    basis: List[DiagramSum]
    rank: int
    formula: int
    matches_combined_kernel: bool


def kernel_basis(m: int, g: int) -> Tuple[List[DiagramSum], List[NecklaceWithArrow]]:
    """
    The sums mh(x) + mh(iota(x)) over orbit representatives x with e(x) = 0.

    Raises:
        ValueError: If m < 2.
    """
    if m < 2:
        raise ValueError(f"the one-loop kernel needs m >= 2, got {m}")
    _, doubles = enumerate_necklaces(2 * m, g)
    untwisted = [x for x in doubles if period_exponent(x) == 0]
    representatives = orbit_representatives(untwisted)
    basis = [
        (DiagramSum.of(mh(x)) + DiagramSum.of(mh(iota(x)))).mod2()
        for x in representatives
    ]
    return basis, representatives


def combined_images(
    doubles: Sequence[NecklaceWithArrow],
    upper: ModulePresentation,
    lower: Optional[ModulePresentation] = None,
) -> List[List[int]]:
    """
    For every mh(x), delta' mod 2 in the upper module, followed by the fold
    map in the lower module when one is given (m even).
    """
    rows = []
    for x in doubles:
        row = list(delta_prime_mod2(mh(x), upper))
        if lower is not None:
            row.extend(fold_map(mh(x), lower))
        rows.append(row)
    return rows


def kernel_report(m: int, g: int, max_degree: Optional[int] = None) -> KernelReport:
    """
    The kernel basis with its rank inside the torsion of the (2m-1)-stratum
    and a comparison with the kernel of the combined map.

    Raises:
        ValueError: If m < 2.
        CapExceededError: If 2m is above the degree cap.
    """
    check_degree(2 * m, max_degree)
    basis, _ = kernel_basis(m, g)
    source = build_presentation(2 * m - 1, 1, g, max_degree=max_degree)
    upper = build_presentation(2 * m, 1, g, max_degree=max_degree)
    lower = build_presentation(2 * m - 2, 1, g, max_degree=max_degree) if m % 2 == 0 else None
    coordinates = [list(torsion_mod2(b, source)) for b in basis]
    rank = rank_mod2(coordinates)
    _, doubles = enumerate_necklaces(2 * m, g)
    kernel = kernel_mod2(combined_images(doubles, upper, lower))
    kernel_sums = [
        DiagramSum.from_terms(
            (mh(x), 1) for x, bit in zip(doubles, vector) if bit
        )
        for vector in kernel
    ]
    kernel_coordinates = [list(torsion_mod2(k, source)) for k in kernel_sums]
    matches = same_span_mod2(coordinates, kernel_coordinates)
    logger.debug(
        "one-loop kernel m=%d g=%d: rank %d, combined kernel dimension %d",
        m,
        g,
        rank,
        rank_mod2(kernel_coordinates),
    )
    return KernelReport(basis, rank, kernel_rank_formula(m, g), matches)
