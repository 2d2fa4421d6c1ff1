"""Desk-scale executable re-verification of the structural results.

Every numbered claim behind the library is re-checked on bounded
families: stars admit exactly at size 2^n - 2, trees admit only as that
star, paths and cycles never admit, complete graphs never admit (parity
plus an exhaustive K_4 sweep plus the power-of-two counting equation),
and every witness respects the edge-count and pendant lower bounds.

Nonexistence claims are universally quantified over ground sets; the
harness bounds the quantifier (canonical ground sets, bounded max
element) and records the bound, so results are confirmations within a
bound, never proofs. A check is never Confirmed from a budget-exceeded
search: only exhausted or gate-rejected outcomes count as nonexistence
evidence, anything else degrades the check to Unknown-budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .graphs import FREE_TREE_CAP, Graph, enumerate_free_trees, generate, pendant_vertices
from .labeling import Labeling, structural_gate, verify_iasgl, zero_vertex
from .realisation import build_realisation
from .search import SearchConfig, SearchStatus, search_iasgl, sweep_ground_sets
from .sets import (
    GroundSet,
    SummandMode,
    classify_ground_set,
    enumerate_canonical_ground_sets,
)

CONFIRMED = "Confirmed"
REFUTED = "Refuted"
UNKNOWN = "Unknown-budget"

#: Search outcomes that certify nonexistence.
_NONEXISTENCE = {SearchStatus.EXHAUSTED_NONE, SearchStatus.GATE_REJECTED}

Witness = tuple[GroundSet, Graph, Labeling]


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    anchor: str
    status: str
    evidence: str

    def to_obj(self) -> dict:
        return {
            "id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class HarnessConfig:
    n_range: tuple[int, int] = (2, 4)
    max_element: int = 8
    tree_sizes: tuple[int, ...] = (3, 7)
    path_cycle_range: tuple[int, int] = (3, 8)
    complete_range: tuple[int, int] = (2, 8)
    diophantine_max: int = 30
    mode: SummandMode = SummandMode.DISTINCT_LABELS
    node_budget: int = 2_000_000
    time_budget_ms: int = 120_000

    def search_config(self, **overrides) -> SearchConfig:
        return SearchConfig(
            mode=self.mode,
            node_budget=self.node_budget,
            time_budget_ms=self.time_budget_ms,
            **overrides,
        )

    def bounds_obj(self) -> dict:
        return {
            "n_range": list(self.n_range),
            "max_element": self.max_element,
            "tree_sizes": list(self.tree_sizes),
            "path_cycle_range": list(self.path_cycle_range),
            "complete_range": list(self.complete_range),
            "diophantine_max": self.diophantine_max,
            "mode": self.mode.value,
        }


@dataclass
class TheoremReport:
    checks: list[CheckResult]
    bounds: dict
    totals: dict[str, int] = field(default_factory=dict)
    generated_at: str | None = None

    def __post_init__(self) -> None:
        ids = [c.check_id for c in self.checks]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate check id in report")
        if not self.totals:
            self.totals = {
                status: sum(1 for c in self.checks if c.status == status)
                for status in (CONFIRMED, REFUTED, UNKNOWN)
            }

    @property
    def refuted(self) -> int:
        return self.totals.get(REFUTED, 0)

    def to_obj(self) -> dict:
        obj = {
            "checks": [c.to_obj() for c in self.checks],
            "bounds": self.bounds,
            "totals": self.totals,
        }
        if self.generated_at is not None:
            obj["generated_at"] = self.generated_at
        return obj


def _power_of_two_exponent(value: int) -> int | None:
    if value >= 2 and value & (value - 1) == 0:
        return value.bit_length() - 1
    return None


def _star_order(n: int) -> int:
    return (1 << n) - 2


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def check_star_theorem(
    n_range: tuple[int, int] = (2, 4),
    max_element: int = 8,
    config: HarnessConfig | None = None,
    registry: list[Witness] | None = None,
) -> list[CheckResult]:
    """Stars admit exactly at size 2^n - 2.

    Forward: K(1, 2^n - 2) is Found for every canonical ground set of
    size n. Converse: every other star size is rejected by the edge
    count rule for every ground set cardinality in range.
    """
    config = config or HarnessConfig(n_range=n_range, max_element=max_element)
    cfg = config.search_config()
    results = []
    anchor = "star K(1,m) admits a graceful set-indexer iff m = 2^n - 2"

    for n in range(n_range[0], n_range[1] + 1):
        star = generate("star", _star_order(n))
        found = 0
        budget = 0
        family = enumerate_canonical_ground_sets(n, max_element)
        for x in family:
            outcome = search_iasgl(star, x, cfg)
            if outcome.found:
                witness = outcome.witnesses[0]
                assert verify_iasgl(star, witness)
                if registry is not None:
                    registry.append((x, star, witness))
                found += 1
            elif outcome.status is SearchStatus.BUDGET_EXCEEDED:
                budget += 1
        if budget:
            status, evidence = UNKNOWN, (
                f"{budget}/{len(family)} ground sets hit the search budget"
            )
        elif found == len(family):
            status = CONFIRMED
            evidence = f"K(1,{_star_order(n)}) found for all {len(family)} canonical ground sets"
        else:
            status = REFUTED
            evidence = f"only {found}/{len(family)} ground sets admit K(1,{_star_order(n)})"
        results.append(CheckResult(f"star-theorem/forward-n={n}", anchor, status, evidence))

    n_max = n_range[1]
    rejected = []
    for m in range(1, _star_order(n_max) + 1):
        if _power_of_two_exponent(m + 2) is not None:
            continue
        star = generate("star", m)
        for n in range(n_range[0], n_range[1] + 1):
            x = GroundSet.of(*range(n))
            gate = structural_gate(star, x, config.mode)
            if gate.passed or "R1" not in {v.rule for v in gate.violations}:
                results.append(
                    CheckResult(
                        "star-theorem/converse",
                        anchor,
                        REFUTED,
                        f"edge-count rule failed to reject K(1,{m}) at n={n}",
                    )
                )
                return results
        rejected.append(m)
    results.append(
        CheckResult(
            "star-theorem/converse",
            anchor,
            CONFIRMED,
            f"edge-count rule rejects K(1,m) for m in {rejected} at every n in range",
        )
    )
    return results


def check_tree_theorem(
    m_values: Iterable[int] = (3, 7),
    max_element: int = 8,
    config: HarnessConfig | None = None,
    registry: list[Witness] | None = None,
) -> list[CheckResult]:
    """Among trees, only the star K(1, 2^n - 2) admits.

    For each m with 1 + m a power of two, every free tree on m vertices
    is decided for every canonical ground set of the forced cardinality:
    the star must be Found, everything else must be exhausted to
    nonexistence (the gate-free run certifies full exploration).
    """
    config = config or HarnessConfig(max_element=max_element)
    anchor = "a tree admits a graceful set-indexer iff it is the star K(1,2^n-2)"
    results = []
    for m in sorted(set(m_values)):
        check_id = f"tree-theorem/m={m}"
        n = _power_of_two_exponent(m + 1)
        if n is None:
            results.append(
                CheckResult(
                    check_id,
                    anchor,
                    CONFIRMED,
                    f"1+m = {m + 1} is not a power of two, so no tree on {m} vertices admits",
                )
            )
            continue
        if m > FREE_TREE_CAP:
            results.append(
                CheckResult(
                    check_id,
                    anchor,
                    UNKNOWN,
                    f"free-tree enumeration is capped at {FREE_TREE_CAP} vertices",
                )
            )
            continue

        trees = enumerate_free_trees(m)
        family = enumerate_canonical_ground_sets(n, max_element)
        stars = 0
        star_found = 0
        nonstar_exhausted = True
        budget = 0
        cfg = config.search_config()
        nogate = config.search_config(disabled_rules=frozenset({"gate"}))
        for tree in trees:
            is_star = max(tree.degree(v) for v in tree.vertex_ids) == m - 1
            for x in family:
                if is_star:
                    outcome = search_iasgl(tree, x, cfg)
                    if outcome.found:
                        star_found += 1
                        if registry is not None:
                            registry.append((x, tree, outcome.witnesses[0]))
                    elif outcome.status is SearchStatus.BUDGET_EXCEEDED:
                        budget += 1
                else:
                    outcome = search_iasgl(tree, x, nogate)
                    if outcome.status is SearchStatus.BUDGET_EXCEEDED:
                        budget += 1
                    elif outcome.status not in _NONEXISTENCE:
                        nonstar_exhausted = False
            if is_star:
                stars += 1

        if budget:
            results.append(
                CheckResult(check_id, anchor, UNKNOWN, f"{budget} searches hit the budget")
            )
        elif stars == 1 and star_found == len(family) and nonstar_exhausted:
            results.append(
                CheckResult(
                    check_id,
                    anchor,
                    CONFIRMED,
                    f"{len(trees)} trees on {m} vertices: the star admits for all "
                    f"{len(family)} canonical ground sets, the other {len(trees) - 1} "
                    f"trees are exhausted to nonexistence everywhere",
                )
            )
        else:
            results.append(
                CheckResult(
                    check_id,
                    anchor,
                    REFUTED,
                    f"tree family on {m} vertices violated the star characterization "
                    f"(stars={stars}, star_found={star_found}/{len(family)}, "
                    f"nonstar_clear={nonstar_exhausted})",
                )
            )
    return results


def check_path_cycle(
    m_range: tuple[int, int] = (3, 8),
    max_element: int = 8,
    config: HarnessConfig | None = None,
) -> list[CheckResult]:
    """Paths on four or more vertices and all cycles never admit.

    The 3-vertex path is the star K(1,2) and does admit; the check pins
    that exception explicitly instead of misreporting it. For the unique
    cardinality matching the edge count the whole canonical family is
    swept; other cardinalities are rejected by arithmetic. The counting
    contradiction (m = 2^n - 2 forces more vertex labels than the
    pendant-free bound 2^(n-1) - 1 allows) is confirmed for cycles
    whenever the edge count matches at all.
    """
    config = config or HarnessConfig(max_element=max_element)
    cfg = config.search_config()
    results = []

    def decide(kind: str, m: int, graph: Graph, anchor: str) -> CheckResult:
        check_id = f"{kind}-nonexistence/m={m}"
        edges = graph.edge_count()
        n = _power_of_two_exponent(edges + 2)
        if n is None:
            return CheckResult(
                check_id,
                anchor,
                CONFIRMED,
                f"|E| = {edges} never equals 2^n - 2, rejected by arithmetic",
            )
        outcomes = sweep_ground_sets(graph, n, max_element, cfg)
        found = sum(1 for o in outcomes.values() if o.found)
        budget = sum(1 for o in outcomes.values() if o.status is SearchStatus.BUDGET_EXCEEDED)
        if budget:
            return CheckResult(check_id, anchor, UNKNOWN, f"{budget} sweep items hit the budget")
        if kind == "path" and m == 3:
            # P_3 is the star K(1,2): the only path that admits. A sweep
            # reporting otherwise would contradict the star theorem.
            if found:
                return CheckResult(
                    check_id,
                    anchor,
                    CONFIRMED,
                    "P_3 is the star K(1,2) and admits (the one path exception); "
                    "nonexistence starts at 4 vertices",
                )
            return CheckResult(
                check_id, anchor, REFUTED, "the star path P_3 = K(1,2) failed to admit"
            )
        if found:
            return CheckResult(check_id, anchor, REFUTED, f"{found} ground sets admitted {kind} {m}")
        contradiction = ""
        if kind == "cycle":
            # Pendant-free graphs cannot label with the maximal element,
            # leaving 2^(n-1) - 1 usable labels for m vertices.
            if not (m == (1 << n) - 2 and m > (1 << (n - 1)) - 1):
                return CheckResult(
                    check_id,
                    anchor,
                    REFUTED,
                    f"counting contradiction failed at m={m}, n={n}",
                )
            contradiction = (
                f"; counting contradiction confirmed: m = 2^{n} - 2 = {m} > "
                f"2^{n - 1} - 1 = {(1 << (n - 1)) - 1}"
            )
        return CheckResult(
            check_id,
            anchor,
            CONFIRMED,
            f"all {len(outcomes)} canonical ground sets at n={n} report nonexistence"
            + contradiction,
        )

    for m in range(m_range[0], m_range[1] + 1):
        results.append(
            decide(
                "path",
                m,
                generate("path", m),
                "no path on four or more vertices admits; P_3 = K(1,2) is the exception",
            )
        )
    for m in range(m_range[0], m_range[1] + 1):
        results.append(
            decide("cycle", m, generate("cycle", m), "the cycle C_m never admits")
        )
    return results


def diophantine_solutions(n_max: int) -> list[tuple[int, int, str]]:
    """Odd non-negative k with 4k^2 +/- k + 1 = 2^n, found via the
    discriminant: k = (+-1 +- sqrt(2^(n+4) - 15)) / 8 must be integral.

    Returns (n, k, branch) triples; every candidate is re-verified
    against the original equation before being reported.
    """
    solutions = []
    for n in range(0, n_max + 1):
        d = (1 << (n + 4)) - 15
        if d < 0:
            continue
        s = math.isqrt(d)
        if s * s != d:
            continue
        for num in (1 + s, 1 - s, -1 + s, -1 - s):
            if num < 0 or num % 8:
                continue
            k = num // 8
            if k % 2 == 0:
                continue
            if 4 * k * k + k + 1 == 1 << n:
                solutions.append((n, k, "plus"))
            if 4 * k * k - k + 1 == 1 << n:
                solutions.append((n, k, "minus"))
    return sorted(set(solutions))


def check_complete_graphs(
    m_range: tuple[int, int] = (2, 8),
    n_diophantine_max: int = 30,
    config: HarnessConfig | None = None,
) -> list[CheckResult]:
    """Complete graphs never admit a graceful set-indexer.

    K_2 and K_3 fall to parity, every other size in range except K_4
    fails the edge-count match, and K_4 (the one survivor of the
    counting equation, via k = 1) is exhausted over the whole canonical
    n = 3 family with the gate disabled so the sweep itself is the
    evidence. The counting equation 4k^2 +/- k + 1 = 2^n is then shown
    to have no further odd solutions up to the exponent bound.
    """
    config = config or HarnessConfig()
    anchor = "no complete graph admits a graceful set-indexer"
    results = []
    gate_cleared = []
    for m in range(m_range[0], m_range[1] + 1):
        edges = m * (m - 1) // 2
        n = _power_of_two_exponent(edges + 2)
        if n is None:
            gate_cleared.append(m)
            continue
        check_id = f"complete/exhaustive-K{m}"
        nogate = config.search_config(disabled_rules=frozenset({"gate"}))
        outcomes = sweep_ground_sets(generate("complete", m), n, config.max_element, nogate)
        exhausted = sum(
            1 for o in outcomes.values() if o.status is SearchStatus.EXHAUSTED_NONE
        )
        found = sum(1 for o in outcomes.values() if o.found)
        if found:
            results.append(
                CheckResult(check_id, anchor, REFUTED, f"{found} ground sets admitted K_{m}")
            )
        elif exhausted == len(outcomes):
            results.append(
                CheckResult(
                    check_id,
                    anchor,
                    CONFIRMED,
                    f"K_{m} exhaustively refuted over all {len(outcomes)} canonical "
                    f"ground sets of size {n} (max element {config.max_element})",
                )
            )
        else:
            results.append(
                CheckResult(check_id, anchor, UNKNOWN, "sweep items hit the budget")
            )
    results.insert(
        0,
        CheckResult(
            "complete/edge-count",
            anchor,
            CONFIRMED,
            f"edge counts m(m-1)/2 for m in {gate_cleared} never equal 2^n - 2 "
            "(K_2 and K_3 have odd size)",
        ),
    )

    sols = diophantine_solutions(n_diophantine_max)
    covered = [s for s in sols if 4 * s[1] in range(m_range[0], m_range[1] + 1)]
    stray = [s for s in sols if s not in covered]
    if stray:
        results.append(
            CheckResult(
                "complete/diophantine",
                anchor,
                REFUTED,
                f"unexpected odd solutions of 4k^2 +/- k + 1 = 2^n: {stray}",
            )
        )
    else:
        detail = (
            f"only odd solution up to n = {n_diophantine_max} is {sols}"
            " and the matching K_4 is exhaustively refuted above"
            if sols
            else f"no odd solution up to n = {n_diophantine_max}"
        )
        results.append(CheckResult("complete/diophantine", anchor, CONFIRMED, detail))
    return results


def check_pendant_bounds(
    n_range: tuple[int, int] = (2, 4),
    max_element: int = 8,
    config: HarnessConfig | None = None,
    registry: list[Witness] | None = None,
) -> list[CheckResult]:
    """Pendant lower bounds on every classification and every witness.

    |neither| >= n - 1 for every canonical ground set, and every
    witness has a {0}-vertex hosting at least |neither| pendant
    neighbors, with the neither-labeled and max-element-labeled
    vertices pendant on it.
    """
    config = config or HarnessConfig(n_range=n_range, max_element=max_element)
    anchor = "at least |X| - 1 pendants hang on the {0}-vertex"
    results = []
    families = 0
    for n in range(n_range[0], n_range[1] + 1):
        for x in enumerate_canonical_ground_sets(n, max_element):
            cls = classify_ground_set(x, config.mode)
            if len(cls.neither) < n - 1:
                results.append(
                    CheckResult(
                        "pendant-bounds/classification",
                        anchor,
                        REFUTED,
                        f"|neither| = {len(cls.neither)} < {n - 1} at X = {x}",
                    )
                )
                return results
            families += 1
    results.append(
        CheckResult(
            "pendant-bounds/classification",
            anchor,
            CONFIRMED,
            f"|neither| >= n - 1 for all {families} canonical ground sets in range",
        )
    )

    witnesses = registry if registry is not None else []
    if not witnesses:
        for n in range(n_range[0], n_range[1] + 1):
            for x in enumerate_canonical_ground_sets(n, max_element):
                built = build_realisation(x, mode=config.mode)
                witnesses.append((x, built.graph, built.labeling))

    checked = 0
    for x, graph, labeling in witnesses:
        cls = classify_ground_set(x, config.mode)
        v0 = zero_vertex(graph, labeling)
        if v0 is None:
            results.append(
                CheckResult(
                    "pendant-bounds/witnesses", anchor, REFUTED,
                    f"witness over {x} has no {{0}}-labeled vertex",
                )
            )
            return results
        pendants = set(pendant_vertices(graph))
        hosted = sum(1 for w in graph.neighbors(v0) if w in pendants)
        neither = set(cls.neither)
        max_el = x.max_element
        ok = len(pendants) >= len(neither) and hosted >= len(neither)
        for vid in graph.vertex_ids:
            lab = labeling.label_of(vid)
            forced = lab in neither or max_el in lab
            if forced and vid != v0:
                ok = ok and vid in pendants and graph.neighbors(vid) == (v0,)
        if not ok:
            results.append(
                CheckResult(
                    "pendant-bounds/witnesses", anchor, REFUTED,
                    f"witness over {x} violates a pendant bound",
                )
            )
            return results
        checked += 1
    results.append(
        CheckResult(
            "pendant-bounds/witnesses",
            anchor,
            CONFIRMED,
            f"{checked} witnesses respect pendant count, hosting, and placement bounds",
        )
    )
    return results


def check_edge_count(
    n_range: tuple[int, int] = (2, 4),
    config: HarnessConfig | None = None,
    registry: list[Witness] | None = None,
) -> list[CheckResult]:
    """|E| = 2^n - 2 and n = log2(|E| + 2), exactly, on every witness."""
    config = config or HarnessConfig(n_range=n_range)
    anchor = "every gracefully labeled graph has exactly 2^n - 2 edges"
    witnesses = registry if registry is not None else []
    if not witnesses:
        cfg = config.search_config()
        for n in range(n_range[0], n_range[1] + 1):
            x = GroundSet.of(*range(n))
            star = generate("star", _star_order(n))
            outcome = search_iasgl(star, x, cfg)
            if outcome.found:
                witnesses.append((x, star, outcome.witnesses[0]))
            built = build_realisation(x, mode=config.mode)
            witnesses.append((x, built.graph, built.labeling))
    for x, graph, _ in witnesses:
        edges = graph.edge_count()
        n = _power_of_two_exponent(edges + 2)
        if edges != (1 << x.n) - 2 or n != x.n:
            return [
                CheckResult(
                    "edge-count",
                    anchor,
                    REFUTED,
                    f"witness over {x} has {edges} edges, expected {(1 << x.n) - 2}",
                )
            ]
    return [
        CheckResult(
            "edge-count",
            anchor,
            CONFIRMED,
            f"{len(witnesses)} witnesses match both |E| = 2^n - 2 and n = log2(|E| + 2)",
        )
    ]


def run_all(config: HarnessConfig | None = None) -> TheoremReport:
    """Run every check at desk-scale bounds and aggregate a report.

    Witnesses produced by the star, tree, and pendant checks feed the
    edge-count check, so every labeling the harness accepts anywhere is
    also size-checked. Identical configs give identical reports.
    """
    config = config or HarnessConfig()
    registry: list[Witness] = []
    checks: list[CheckResult] = []
    checks += check_star_theorem(config.n_range, config.max_element, config, registry)
    checks += check_tree_theorem(config.tree_sizes, config.max_element, config, registry)
    checks += check_path_cycle(config.path_cycle_range, config.max_element, config)
    checks += check_complete_graphs(config.complete_range, config.diophantine_max, config)
    for n in range(config.n_range[0], config.n_range[1] + 1):
        for x in enumerate_canonical_ground_sets(n, config.max_element):
            built = build_realisation(x, mode=config.mode)
            registry.append((x, built.graph, built.labeling))
    checks += check_pendant_bounds(config.n_range, config.max_element, config, registry)
    checks += check_edge_count(config.n_range, config, registry)
    return TheoremReport(checks=checks, bounds=config.bounds_obj())
