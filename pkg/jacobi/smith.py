"""
Smith decomposition of integer relator matrices.

Rows are relators over a set of generators. Relators with a unit entry are
eliminated sparsely first; the residual matrix is diagonalized densely with
the column transform recorded, so that arbitrary vectors can be reduced to
normal-form coordinates in the presented abelian group.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Set, Tuple

logger = logging.getLogger(__name__)

SparseRow = Dict[int, int]


class Coordinates(NamedTuple):
    """
    Normal form of an element of a finitely presented abelian group.

    Attributes:
        torsion: One entry per invariant factor d > 1, taken modulo d.
        free: One entry per free generator.
    """

    torsion: Tuple[int, ...]
    free: Tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)


def _axpy(
    target: SparseRow,
    source: Mapping[int, int],
    factor: int,
    row_id: int,
    columns: Dict[int, Set[int]],
) -> None:
    for column, value in source.items():
        updated = target.get(column, 0) + factor * value
        if updated:
            if column not in target:
                columns.setdefault(column, set()).add(row_id)
            target[column] = updated
        elif column in target:
            del target[column]
            columns[column].discard(row_id)


def _dense_smith(
    matrix: List[List[int]], width: int
) -> Tuple[List[int], List[List[int]]]:
    """
    Diagonalize `matrix` by unimodular row and column operations.

    Returns:
        Tuple[List[int], List[List[int]]]: The positive diagonal entries, each
        dividing the next, and the accumulated column transform V.
    """
    a = [row[:] for row in matrix]
    height = len(a)
    v = [[int(i == j) for j in range(width)] for i in range(width)]

    def swap_columns(x: int, y: int) -> None:
        for row in a:
            row[x], row[y] = row[y], row[x]
        for row in v:
            row[x], row[y] = row[y], row[x]

    def add_column(target: int, source: int, factor: int) -> None:
        for row in a:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    diagonal: List[int] = []
    t = 0
    while t < min(height, width):
        best = None
        for i in range(t, height):
            for j in range(t, width):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        a[t], a[best[0]] = a[best[0]], a[t]
        swap_columns(t, best[1])
        while True:
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, height):
                if a[i][t]:
                    q = a[i][t] // pivot
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, width):
                if a[t][j]:
                    q = a[t][j] // pivot
                    if q:
                        add_column(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                candidates = [(abs(a[i][t]), i, t) for i in range(t + 1, height) if a[i][t]]
                candidates += [(abs(a[t][j]), t, j) for j in range(t + 1, width) if a[t][j]]
                _, i, j = min(candidates)
                if i != t:
                    a[t], a[i] = a[i], a[t]
                else:
                    swap_columns(t, j)
                continue
            offending = next(
                (
                    i
                    for i in range(t + 1, height)
                    for j in range(t + 1, width)
                    if a[i][j] % pivot
                ),
                None,
            )
            if offending is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offending])]
        if a[t][t] < 0:
            for row in a:
                row[t] = -row[t]
            for row in v:
                row[t] = -row[t]
        diagonal.append(a[t][t])
        t += 1
    return diagonal, v


class SmithDecomposition:
    """
    Smith decomposition of a sparse integer relator matrix.

    Attributes:
        n_columns (int): Number of generators.
        pivots (List[Tuple[int, SparseRow]]): Unit-pivot eliminations in order.
        residual_columns (List[int]): Generators left after unit elimination.
        diagonal (List[int]): Diagonal of the dense residual Smith form.
        transform (List[List[int]]): Column transform V of the residual.
    """

    __slots__ = ("n_columns", "pivots", "residual_columns", "diagonal", "transform")

    def __init__(
        self,
        n_columns: int,
        pivots: List[Tuple[int, SparseRow]],
        residual_columns: List[int],
        diagonal: List[int],
        transform: List[List[int]],
    ) -> None:
        self.n_columns = n_columns
        self.pivots = pivots
        self.residual_columns = residual_columns
        self.diagonal = diagonal
        self.transform = transform

    @classmethod
    def compute(
        cls, rows: Iterable[Mapping[int, int]], n_columns: int
    ) -> SmithDecomposition:
        """
        Decompose the matrix whose rows are the given sparse relators.

        Args:
            rows: Sparse rows {column: coefficient}.
            n_columns (int): Number of generators.

        Returns:
            SmithDecomposition: The decomposition.
        """
        matrix: List[SparseRow] = []
        columns: Dict[int, Set[int]] = {}
        for row in rows:
            cleaned = {c: v for c, v in row.items() if v}
            if not cleaned:
                continue
            for column in cleaned:
                if not 0 <= column < n_columns:
                    raise ValueError(f"relator column {column} out of range")
                columns.setdefault(column, set()).add(len(matrix))
            matrix.append(cleaned)
        alive = set(range(len(matrix)))
        pivots: List[Tuple[int, SparseRow]] = []
        progress = True
        while progress:
            progress = False
            for row_id in sorted(alive, key=lambda r: (len(matrix[r]), r)):
                if row_id not in alive:
                    continue
                row = matrix[row_id]
                if not row:
                    alive.discard(row_id)
                    continue
                units = [c for c, value in row.items() if value in (1, -1)]
                if not units:
                    continue
                column = min(units, key=lambda c: (len(columns[c]), c))
                unit = row[column]
                for other in list(columns[column]):
                    if other != row_id:
                        _axpy(matrix[other], row, -matrix[other][column] * unit, other, columns)
                for c in row:
                    columns[c].discard(row_id)
                alive.discard(row_id)
                pivots.append((column, dict(row)))
                progress = True
        pivot_columns = {column for column, _ in pivots}
        residual_columns = [c for c in range(n_columns) if c not in pivot_columns]
        position = {c: i for i, c in enumerate(residual_columns)}
        dense = []
        for row_id in sorted(alive):
            if matrix[row_id]:
                line = [0] * len(residual_columns)
                for column, value in matrix[row_id].items():
                    line[position[column]] = value
                dense.append(line)
        logger.debug(
            "smith: %d generators, %d unit pivots, residual %dx%d",
            n_columns,
            len(pivots),
            len(dense),
            len(residual_columns),
        )
        diagonal, transform = _dense_smith(dense, len(residual_columns))
        return cls(n_columns, pivots, residual_columns, diagonal, transform)

    @property
    def invariant_factors(self) -> List[int]:
        """
        All nonzero invariant factors, units included, in dividing order.
        """
        return [1] * len(self.pivots) + list(self.diagonal)

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.diagonal if d > 1]

    @property
    def rank(self) -> int:
        return self.n_columns - len(self.pivots) - len(self.diagonal)

    def residual(self, vector: Mapping[int, int]) -> List[int]:
        x: SparseRow = {c: v for c, v in vector.items() if v}
        for column, row in self.pivots:
            value = x.get(column)
            if value:
                factor = value * row[column]
                for c, entry in row.items():
                    updated = x.get(c, 0) - factor * entry
                    if updated:
                        x[c] = updated
                    else:
                        x.pop(c, None)
        width = len(self.residual_columns)
        position = {c: i for i, c in enumerate(self.residual_columns)}
        dense = [0] * width
        for column, value in x.items():
            dense[position[column]] = value
        return [
            sum(dense[i] * self.transform[i][j] for i in range(width) if dense[i])
            for j in range(width)
        ]

    def coordinates(self, vector: Mapping[int, int]) -> Coordinates:
        """
        Normal-form coordinates of a vector of generator coefficients.
        """
        y = self.residual(vector)
        rank = len(self.diagonal)
        torsion = tuple(
            y[j] % d for j, d in enumerate(self.diagonal) if d > 1
        )
        return Coordinates(torsion, tuple(y[rank:]))

    def coordinates_mod2(self, vector: Mapping[int, int]) -> Tuple[int, ...]:
        """
        Coordinates of the image in the group tensored with Z/2.
        """
        y = self.residual(vector)
        rank = len(self.diagonal)
        even = tuple(y[j] % 2 for j, d in enumerate(self.diagonal) if d % 2 == 0)
        return even + tuple(value % 2 for value in y[rank:])

    def torsion_coordinates_mod2(self, vector: Mapping[int, int]) -> Tuple[int, ...]:
        """
        Mod-2 coordinates along the invariant factors equal to 2.
        """
        y = self.residual(vector)
        return tuple(y[j] % 2 for j, d in enumerate(self.diagonal) if d == 2)


def _to_mask(vector: Sequence[int]) -> int:
    mask = 0
    for index, value in enumerate(vector):
        if value % 2:
            mask |= 1 << index
    return mask


def rank_mod2(vectors: Iterable[Sequence[int]]) -> int:
    """
    Dimension of the GF(2)-span of integer vectors read mod 2.
    """
    basis: Dict[int, int] = {}
    for vector in vectors:
        mask = _to_mask(vector)
        while mask:
            top = mask.bit_length() - 1
            if top not in basis:
                basis[top] = mask
                break
            mask ^= basis[top]
    return len(basis)


def kernel_mod2(images: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Basis of {c in GF(2)^k : sum c_i images[i] = 0}.

    Args:
        images: The image vectors of the k domain basis elements.

    Returns:
        List[List[int]]: Kernel vectors as 0/1 lists of length k.
    """
    k = len(images)
    basis: Dict[int, Tuple[int, int]] = {}
    kernel: List[List[int]] = []
    for index, image in enumerate(images):
        mask = _to_mask(image)
        tag = 1 << index
        while mask:
            top = mask.bit_length() - 1
            if top not in basis:
                basis[top] = (mask, tag)
                break
            pivot_mask, pivot_tag = basis[top]
            mask ^= pivot_mask
            tag ^= pivot_tag
        if not mask:
            kernel.append([(tag >> i) & 1 for i in range(k)])
    return kernel


def same_span_mod2(
    first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]
) -> bool:
    r1 = rank_mod2(first)
    r2 = rank_mod2(second)
    return r1 == r2 == rank_mod2(list(first) + list(second))
