"""
Closed-form ranks: free Lie algebras, tree modules and the degree four
one-loop module.
"""

from __future__ import annotations

from typing import Dict, Iterator, Tuple

from sympy import Rational
from sympy.functions.combinatorial.numbers import mobius, totient
from sympy.ntheory import divisors


def _check(n: int, d: int) -> None:
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    if d < 1:
        raise ValueError(f"alphabet size must be positive, got {d}")


def witt_rank(n: int, d: int) -> int:
    """
    Rank of the degree n part of the free Lie algebra on d generators,
    (1/n) sum over e | n of mu(e) d^(n/e).
    """
    _check(n, d)
    return int(sum(mobius(e) * d ** (n // e) for e in divisors(n)) // n)


def rank_d(n: int, d: int) -> int:
    """
    Rank of the kernel of the bracket H (x) L(n+1) -> L(n+2) for rank H = d.
    """
    _check(n, d)
    return d * witt_rank(n + 1, d) - witt_rank(n + 2, d)


def rank_a41(genus: int) -> int:
    """
    2g^4 + 2g^3 + 3g^2/2 + g/2.
    """
    if genus < 1:
        raise ValueError(f"genus must be at least 1, got {genus}")
    g = Rational(genus)
    value = 2 * g**4 + 2 * g**3 + Rational(3, 2) * g**2 + Rational(1, 2) * g
    return int(value)


def necklace_count(n: int, d: int) -> int:
    """
    Number of necklaces of length n over d letters up to rotation.
    """
    _check(n, d)
    return int(sum(totient(e) * d ** (n // e) for e in divisors(n)) // n)


def rank_a41_necklace_form(genus: int) -> int:
    """
    Half the length-four necklaces plus a quarter of (d + 1) d^2, d = 2g.
    """
    if genus < 1:
        raise ValueError(f"genus must be at least 1, got {genus}")
    d = 2 * genus
    value = Rational(necklace_count(4, d), 2) + Rational((d + 1) * d**2, 4)
    if not value.is_integer:
        raise ArithmeticError(f"non-integral rank {value} for genus {genus}")
    return int(value)


def rank_sym2(genus: int) -> int:
    d = 2 * genus
    return d * (d + 1) // 2


def a4_decomposition(genus: int) -> Dict[str, int]:
    """
    Ranks of the summands of the connected degree four module: trees,
    one loop, two loops (isomorphic to S^2 H) and three loops.
    """
    parts = {
        "trees": rank_d(4, 2 * genus),
        "one_loop": rank_a41(genus),
        "two_loop": rank_sym2(genus),
        "three_loop": 1,
    }
    parts["total"] = sum(parts.values())
    return parts


def lyndon_words(n: int, d: int) -> Iterator[Tuple[int, ...]]:
    """
    Lyndon words of length exactly n over 0..d-1, in lexicographic order.
    """
    _check(n, d)
    word = [-1]
    while word:
        word[-1] += 1
        if len(word) == n:
            yield tuple(word)
        m = len(word)
        while len(word) < n:
            word.append(word[len(word) - m])
        while word and word[-1] == d - 1:
            word.pop()
