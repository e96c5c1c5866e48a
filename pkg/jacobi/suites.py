"""
Named verification suites.

Each suite returns check records {name, expected, actual, passed,
provenance}; expected values are literal, provenance says where they come
from.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, List, NamedTuple, Optional

from .config import RunConfig
from .diagram import circle_diagram, theta_diagram, tree_diagram
from .enumeration import as_classes
from .labels import alphabet
from .lifts import SymmetricFamily, one_loop_kernel_element, sym_relation_even, two_torsion_relation, witness_for
from .maps import bd, blow_up, bu
from .necklace import enumerate_necklaces, forget, iota, kernel_report, orbit_representatives, period_exponent
from .relations import (
    as_relator,
    build_presentation,
    ihx_relator,
    internal_edges,
    is_zero,
    rank_and_torsion,
    reduce,
    theta_submodule_generators,
)
from .smith import SmithDecomposition
from .sums import DiagramSum
from .tensor import eta, eta_components, is_lie_element
from .weight import PRESETS, evaluate, higher_loop_bounds, project_half
from .witt import a4_decomposition, lyndon_words, rank_a41, rank_a41_necklace_form, witt_rank

logger = logging.getLogger(__name__)


class CheckRecord(NamedTuple):
    name: str
    expected: Any
    actual: Any
    passed: bool
    provenance: str

    def to_json(self) -> Dict[str, Any]:
        return self._asdict()


def check(name: str, expected: Any, actual: Any, provenance: str) -> CheckRecord:
    record = CheckRecord(name, expected, actual, expected == actual, provenance)
    logger.info("%s %s: expected %r, got %r", "PASS" if record.passed else "FAIL", name, expected, actual)
    return record


@dataclass(frozen=True)
class SuiteOptions:
    """
    Attributes:
        config (RunConfig): Genus and degree cap.
        m (int): Half length for necklace and kernel suites.
        k (Optional[int]): Loop parameter of the higher-loop suite; 0..2 when None.
        system (str): Structure constant preset.
    """

    config: RunConfig = RunConfig()
    m: int = 2
    k: Optional[int] = None
    system: str = "sl2"


Suite = Callable[[SuiteOptions], List[CheckRecord]]
SUITES: Dict[str, Suite] = {}


def suite(name: str) -> Callable[[Suite], Suite]:
    def register(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn

    return register


@suite("ker-sn1")
def kernel_one_loop(options: SuiteOptions) -> List[CheckRecord]:
    m, g = options.m, options.config.genus
    report = kernel_report(m, g, options.config.max_degree)
    provenance = "one-loop kernel rank (1/2)((2g)^m - (2g)^ceil(m/2))"
    return [
        check(f"kernel rank m={m} g={g}", report.formula, report.rank, provenance),
        check(
            f"combined kernel m={m} g={g}",
            True,
            report.matches_combined_kernel,
            "kernel of delta' and the fold map equals the span of orbit pairs",
        ),
    ]


@suite("bu-isom")
def blow_up_isomorphism(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    records = []
    for n in (1, 2, 3):
        lower = build_presentation(n, 1, g, max_degree=options.config.max_degree)
        upper = build_presentation(n + 2, 2, g, max_degree=options.config.max_degree)
        failures = [
            d for d in lower.generators if not is_zero(bd(bu(d)) - DiagramSum.of(d), lower)
        ]
        records.append(
            check(f"bd(bu(J)) = J on (n={n}, l=1)", 0, len(failures), "blow-down inverts blow-up")
        )
        dependent = [
            d
            for d in lower.generators
            if any(
                not is_zero(DiagramSum.of(blow_up(d, v)) - bu(d), upper)
                for v in range(d.ideg)
            )
        ]
        records.append(
            check(
                f"bu independent of the vertex on (n={n}, l=1)",
                0,
                len(dependent),
                "blow-up class does not depend on the vertex",
            )
        )
    return records


@suite("bu-quotient")
def blow_up_quotient(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    records = []
    for n in (5, 6, 7):
        quotient = build_presentation(
            n,
            2,
            g,
            quotient_extras=theta_submodule_generators(n, g),
            max_degree=options.config.max_degree,
        )
        lower = build_presentation(n - 2, 1, g, max_degree=options.config.max_degree)
        expected, actual = rank_and_torsion(lower), rank_and_torsion(quotient)
        records.append(
            check(
                f"A({n},2) / theta(>=1) against A({n - 2},1)",
                [expected.rank, list(expected.invariant_factors)],
                [actual.rank, list(actual.invariant_factors)],
                "bu is an isomorphism onto the quotient by three-block theta diagrams",
            )
        )
    return records


@suite("theta-vanish")
def theta_vanishing(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    presentation = build_presentation(5, 2, g, max_degree=options.config.max_degree)
    labels = alphabet(g)
    nonzero = [
        (a, b, c)
        for a, b, c in product(labels, repeat=3)
        if not is_zero(theta_diagram([a], [b], [c]), presentation)
    ]
    return [check("theta(a;b;c) = 0", 0, len(nonzero), "IHX plus blow-up of O(a,b,c)")]


@suite("weight-axioms")
def weight_axioms(options: SuiteOptions) -> List[CheckRecord]:
    constants = PRESETS[options.system]()
    records = [check(f"{options.system} axioms", (), constants.violations, "axioms checked exhaustively")]
    if constants.violations:
        return records
    g = min(options.config.genus, 2)
    relator_failures = 0
    bu_failures = 0
    odd = 0
    for n, l in ((1, 0), (2, 0), (2, 1), (3, 0), (3, 1)):
        for diagram in as_classes(n, l, g):
            relators = [as_relator(diagram, v) for v in range(diagram.ideg)]
            relators += [ihx_relator(diagram, e) for e in internal_edges(diagram)]
            relator_failures += sum(1 for r in relators if evaluate(constants, r))
            if evaluate(constants, bu(diagram)) != -evaluate(constants, diagram):
                bu_failures += 1
            if options.system == "sl2":
                for colour in (1, 2, 3):
                    projected = evaluate(constants, diagram).project(colour)
                    odd += sum(1 for v in projected.terms.values() if v % 2)
    records.append(check("weight kills AS and IHX relators", 0, relator_failures, "well-definedness"))
    records.append(check("W(bu(J)) = -W(J)", 0, bu_failures, "blow-up reverses the weight"))
    if options.system == "sl2":
        records.append(check("single-colour projections are even", 0, odd, "colour swap pairing"))
        a, b = alphabet(g)[:2]
        value = project_half(constants, circle_diagram([a, b]), 1)
        records.append(check("half of W1(O(a,b))", -1, value.coefficient([(a, 1), (b, 1)]), "weight of O(a,b)"))
    return records


@suite("higher-loop")
def higher_loop(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    ks = (options.k,) if options.k is not None else (0, 1, 2)
    records = []
    for k in ks:
        report = higher_loop_bounds(k, g, options.config.max_degree)
        expected = (4 * g * g, g * (2 * g - 1), g * (2 * g + 1))
        records.append(
            check(
                f"torsion, kernel and image ranks k={k} g={g}",
                expected,
                tuple(report),
                "ranks 4g^2, g(2g-1), g(2g+1) for k <= 2",
            )
        )
    return records


def _span_rank(vectors: List[Dict[int, int]], width: int) -> int:
    return width - SmithDecomposition.compute(vectors, width).rank


@suite("necklace-counts")
def necklace_counts(options: SuiteOptions) -> List[CheckRecord]:
    m, g = options.m, options.config.genus
    d = 2 * g
    primes, doubles = enumerate_necklaces(2 * m, g, options.config.max_degree)
    everything = primes + doubles
    orbits = orbit_representatives(everything)
    records = [
        check(f"prime count m={m}", d ** (m + 1), len(primes), "(2g)^(m+1)"),
        check(f"midpoint count m={m}", d**m, len(doubles), "(2g)^m"),
        check(f"orbit count m={m}", (d ** (m + 1) + d**m) // 2, len(orbits), "iota is a free involution"),
        check(
            "iota is an involution without fixed points",
            0,
            sum(1 for x in everything if iota(x) == x or iota(iota(x)) != x),
            "arrow rotation by pi / 2^e",
        ),
        check(
            "untwisted midpoint necklaces",
            d**m - d ** ((m + 1) // 2),
            sum(1 for x in doubles if period_exponent(x) == 0),
            "e(x) = 0 unless the half word is a palindrome",
        ),
    ]
    presentation = build_presentation(2 * m, 1, g, max_degree=options.config.max_degree)
    free = [reduce(forget(x), presentation).free for x in orbits]
    width = len(free[0]) if free else 0
    vectors = [{i: v for i, v in enumerate(row) if v} for row in free]
    records.append(
        check(
            "rank of the symmetric submodule",
            (2 * g + 1) * d**m // 2,
            _span_rank(vectors, width),
            "(1/2)(2g+1)(2g)^m",
        )
    )
    return records


def _up_to_sign(relation: DiagramSum, expected: DiagramSum) -> bool:
    relation, expected = relation.as_reduce(), expected.as_reduce()
    return relation == expected or relation == -expected


@suite("sym-relations")
def symmetric_relations(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    labels = alphabet(g)
    i, j = labels[0], labels[1]
    loop = DiagramSum.from_terms(
        [
            (circle_diagram([i, j, j, i]), 1),
            (circle_diagram([i, i, j, i]), 2),
            (theta_diagram([], [i], [j]), 1),
        ]
    )
    relation = two_torsion_relation("O", [i, j]).as_reduce()
    # needs three distinct labels, so at least genus two
    a, b, c = alphabet(max(g, 2))[:3]
    tree = DiagramSum.from_terms(
        [
            (tree_diagram([a, b, c, c, b, a]), 1),
            (tree_diagram([b, a, a, c, b, a]), 2),
            (tree_diagram([a, b, b, c, b, a]), 2),
            (circle_diagram([c, b, a, b]), 1),
            (circle_diagram([c, a, b, a]), 1),
        ]
    )
    records = [
        check(
            "twice the lift of O(i1,j1,i2)",
            True,
            _up_to_sign(relation, loop),
            "O(i,j,j,i) + 2 O(i,i,j,i) + theta(;i;j) up to a global sign",
        ),
        check("terms in the O(i,j,i) relation", 3, len(relation), "three diagram classes"),
        check(
            "twice the lift of T(i1,j1,k1,j2,i2)",
            True,
            _up_to_sign(two_torsion_relation("T", [a, b, c]), tree),
            "T(i,j,k,k,j,i) + 2 T(j,i,i,k,j,i) + 2 T(i,j,j,k,j,i) + O(k,j,i,j) + O(k,i,j,i) up to a global sign",
        ),
    ]
    mismatches = 0
    for m in (2, 3):
        for word in product(labels, repeat=m):
            even = sym_relation_even(witness_for(SymmetricFamily.LOOP_FIXED, word))
            if even.as_reduce().mod2() != one_loop_kernel_element(word).as_reduce().mod2():
                mismatches += 1
    records.append(
        check("even relation of O(a1..am..a2) mod 2", 0, mismatches, "one-loop kernel element")
    )
    return records


@suite("eta-symmetry")
def eta_symmetry(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    asymmetric = 0
    not_lie = 0
    for n in (1, 2, 3):
        for tree in as_classes(n, 0, g):
            word = eta(tree)
            if word.signed_reverse(n) != word:
                asymmetric += 1
            not_lie += sum(1 for _, bracket in eta_components(tree) if not is_lie_element(bracket))
    return [
        check("eta fixed by signed reversal", 0, asymmetric, "w -> (-1)^n reverse(w)"),
        check("rooted brackets are Lie elements", 0, not_lie, "Dynkin operator test"),
    ]


@suite("a4-decomposition")
def a4_ranks(options: SuiteOptions) -> List[CheckRecord]:
    g = options.config.genus
    expected = a4_decomposition(g)
    found = {}
    torsion = []
    for name, l in (("trees", 0), ("one_loop", 1), ("two_loop", 2), ("three_loop", 3)):
        invariants = rank_and_torsion(build_presentation(4, l, g, max_degree=options.config.max_degree))
        found[name] = invariants.rank
        torsion.extend(invariants.invariant_factors)
    found["total"] = sum(found.values())
    return [
        check("degree four ranks", expected, found, "trees + one loop + S^2 H + Z"),
        check("degree four torsion", [], torsion, "connected degree four module is torsion free"),
        check("one-loop closed forms agree", rank_a41(g), rank_a41_necklace_form(g), "necklace sum form"),
        check(
            "Witt rank equals Lyndon count",
            witt_rank(5, 2 * g),
            sum(1 for _ in lyndon_words(5, 2 * g)),
            "Lyndon words",
        ),
    ]


DEFAULT_ORDER = (
    "necklace-counts",
    "eta-symmetry",
    "theta-vanish",
    "weight-axioms",
    "bu-isom",
    "bu-quotient",
    "sym-relations",
    "a4-decomposition",
    "higher-loop",
    "ker-sn1",
)


class UnknownSuiteError(KeyError):
    ...


def run_suite(name: str, options: SuiteOptions) -> List[CheckRecord]:
    """
    Run one suite, or every suite for "all".

    Raises:
        UnknownSuiteError: If the name is not registered.
    """
    if name == "all":
        records: List[CheckRecord] = []
        for each in DEFAULT_ORDER:
            records.extend(SUITES[each](options))
        return records
    if name not in SUITES:
        raise UnknownSuiteError(name)
    return SUITES[name](options)


def report_to_json(name: str, records: List[CheckRecord]) -> Dict[str, Any]:
    return {
        "suite": name,
        "passed": all(r.passed for r in records),
        "checks": [r.to_json() for r in records],
    }
