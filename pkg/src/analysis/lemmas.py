"""
Structural scanner for generation, level and sharp-generation identities.

Every check is exact integer arithmetic on vertex generations. A failed
check is recorded with its node id; nothing is raised, so one pass over a
mesh reports every problem it finds.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..bisection.rules import bisection_edge_positions, gensharp, levelsharp, subsimplex_bisection_positions
from ..core.arith import level_of, type_of
from ..forest.forest import Forest
from ..forest.triangulation import Triangulation
from ..utils import get_logger

logger = get_logger(__name__)

CHECKS = (
    "distinct-vertex-generations",
    "oldest-vertex-on-bisection-edge",
    "oldest-edge-generation",
    "edge-level-bounds",
    "bisection-edge-level",
    "type-one-bisection-edge",
    "facet-generation",
    "type-one-edges",
    "type-d-simplex",
    "levelsharp-edge",
    "sharp-oldest-bisection-edge",
    "gensharp-bisection-edge",
    "gensharp-edge-children",
    "gensharp-spread",
    "subsimplex-consistency",
)


@dataclass(frozen=True)
class LemmaViolation:
    check: str
    node: int
    detail: str


@dataclass
class LemmaReport:
    checked: Counter = field(default_factory=Counter)
    violations: List[LemmaViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, check: str, node: int, detail: str) -> None:
        self.violations.append(LemmaViolation(check, node, detail))

    def to_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "violations": [{"check": v.check, "node": v.node, "detail": v.detail} for v in self.violations],
        }


def _edge_gen(g: Sequence[int], i: int, j: int) -> Sequence[int]:
    return (g[i], g[j]) if g[i] > g[j] else (g[j], g[i])


def _check_simplex(forest: Forest, nid: int, report: LemmaReport, subsimplices: bool) -> None:
    d = forest.d
    ids = forest.node_vertices[nid]
    g = forest.vertex_generations(nid)
    gen = forest.node_generation[nid]
    level = level_of(gen, d)
    type_ = type_of(gen, d)
    a, b = forest.bse[nid]
    bse_gen = max(forest.vertices.generation(a), forest.vertices.generation(b))
    checked = report.checked

    checked["distinct-vertex-generations"] += 1
    if any(g[i] <= g[i + 1] for i in range(d)):
        report.fail("distinct-vertex-generations", nid, f"vertex generations {g} are not strictly decreasing")
        return

    checked["oldest-vertex-on-bisection-edge"] += 1
    if ids[d] not in (a, b):
        report.fail("oldest-vertex-on-bisection-edge", nid, f"oldest vertex {ids[d]} not on bse ({a}, {b})")

    checked["oldest-edge-generation"] += 1
    if g[d - 1] > gen - d + 1:
        report.fail("oldest-edge-generation", nid, f"oldest edge generation {g[d - 1]} > {gen - d + 1}")

    edges = list(combinations(range(d + 1), 2))
    edge_levels = [level_of(max(g[i], g[j]), d) for i, j in edges]
    checked["edge-level-bounds"] += 1
    if any(not lv <= level <= lv + 1 for lv in edge_levels):
        report.fail("edge-level-bounds", nid, f"edge levels {edge_levels} against level {level}")

    checked["bisection-edge-level"] += 1
    expected = level if type_ == d else level - 1
    if level_of(bse_gen, d) != expected:
        report.fail("bisection-edge-level", nid, f"bse level {level_of(bse_gen, d)}, expected {expected}")

    checked["type-one-bisection-edge"] += 1
    if (type_of(bse_gen, d) == 1) != (type_ == d):
        report.fail("type-one-bisection-edge", nid, f"bse type {type_of(bse_gen, d)} with simplex type {type_}")

    checked["facet-generation"] += 1
    for skip in range(d + 1):
        facet_gen = max(g[i] for i in range(d + 1) if i != skip)
        if not gen - 1 <= facet_gen <= gen:
            report.fail("facet-generation", nid, f"facet without vertex {ids[skip]} has generation {facet_gen}")
            break

    checked["type-one-edges"] += 1
    type_one = [(i, j) for i, j in edges if type_of(max(g[i], g[j]), d) == 1]
    if len(type_one) != d - type_ + 1 or any(level_of(max(g[i], g[j]), d) != level for i, j in type_one):
        report.fail("type-one-edges", nid, f"{len(type_one)} type-one edges, expected {d - type_ + 1} at level {level}")

    sharp = {}
    checked["levelsharp-edge"] += 1
    for (i, j), lv in zip(edges, edge_levels):
        pair = _edge_gen(g, i, j)
        sharp[(i, j)] = gensharp(pair, d)
        if levelsharp(pair, d) != lv + 1:
            report.fail("levelsharp-edge", nid, f"edge ({ids[i]}, {ids[j]}) levelsharp != level + 1")
            break

    checked["gensharp-bisection-edge"] += 1
    bse_pos = tuple(sorted((ids.index(a), ids.index(b))))
    if sharp[bse_pos] != gen + 1:
        report.fail("gensharp-bisection-edge", nid, f"gensharp(bse) = {sharp[bse_pos]}, expected {gen + 1}")

    checked["gensharp-spread"] += 1
    for v in range(d + 1):
        values = sorted(s for (i, j), s in sharp.items() if v in (i, j))
        if values[-1] - values[0] > d - 1 or len(set(values)) != len(values):
            report.fail("gensharp-spread", nid, f"gensharp values {values} at vertex {ids[v]}")
            break

    sizes = range(3, d + 2) if subsimplices else (d + 1,)
    for size in sizes:
        for subset in combinations(range(d + 1), size):
            checked["sharp-oldest-bisection-edge"] += 1
            sub_g = [g[i] for i in subset]
            p, q, _ = subsimplex_bisection_positions(sub_g, d)
            key = (subset[p], subset[q])
            best = sharp[key]
            others = [sharp[e] for e in combinations(subset, 2) if e != key]
            if min(others) <= best:
                report.fail(
                    "sharp-oldest-bisection-edge",
                    nid,
                    f"subsimplex {[ids[i] for i in subset]}: bse gensharp {best} not below {min(others)}",
                )


def _check_inner(forest: Forest, nid: int, report: LemmaReport, subsimplices: bool) -> None:
    """Checks tying a bisected node to its children."""
    d = forest.d
    ids = forest.node_vertices[nid]
    g = forest.vertex_generations(nid)
    gen = forest.node_generation[nid]
    a, b = forest.bse[nid]
    mid = forest.node_vertices[forest.child1[nid]][0]
    gen_of = forest.vertices.generation

    report.checked["gensharp-edge-children"] += 1
    parent_sharp = gensharp(sorted((gen_of(a), gen_of(b)), reverse=True), d)
    for end in (a, b):
        child_sharp = gensharp((gen_of(mid), gen_of(end)), d)
        if child_sharp != parent_sharp + d:
            report.fail("gensharp-edge-children", nid, f"half ({mid}, {end}) has gensharp {child_sharp}")
            break

    ia, ib = ids.index(a), ids.index(b)
    rest = [i for i in range(d + 1) if i not in (ia, ib)]
    sizes = range(0, len(rest) + 1) if subsimplices else (len(rest),)
    for size in sizes:
        for extra in combinations(rest, size):
            report.checked["subsimplex-consistency"] += 1
            subset = sorted((ia, ib) + extra)
            p, q, gen_b = subsimplex_bisection_positions([g[i] for i in subset], d)
            if {ids[subset[p]], ids[subset[q]]} != {a, b} or gen_b != gen + 1:
                report.fail(
                    "subsimplex-consistency",
                    nid,
                    f"subsimplex {[ids[i] for i in subset]} bisects ({ids[subset[p]]}, {ids[subset[q]]}) "
                    f"with generation {gen_b}",
                )


def _descend_keeping_edge(forest: Forest, nid: int, u: int, w: int, target: int):
    """
    Vertex ids and generation of the descendant of ``nid`` at ``target`` that keeps edge (u, w).

    Existing forest nodes are followed first. Below the leaves the generation
    rule runs on vertex generations only, with -1 standing for new vertices,
    so the forest is never bisected. The descent stops early once (u, w) is
    the bisection edge.
    """
    d = forest.d
    node = nid
    while forest.node_generation[node] < target and forest.child1[node] >= 0 and set(forest.bse[node]) != {u, w}:
        c1 = forest.child1[node]
        node = c1 if u in forest.node_vertices[c1] and w in forest.node_vertices[c1] else forest.child2[node]
    ids = forest.node_vertices[node]
    gens = forest.vertex_generations(node)
    gen = forest.node_generation[node]
    while gen < target:
        i, j = bisection_edge_positions(gens, d)
        if {ids[i], ids[j]} == {u, w}:
            break
        drop = j if ids[i] in (u, w) else i
        gen += 1
        ids = (-1,) + ids[:drop] + ids[drop + 1 :]
        gens = (gen,) + gens[:drop] + gens[drop + 1 :]
    return ids, gen


def _check_type_d(tria: Triangulation, report: LemmaReport) -> None:
    """Every mesh edge lies in a type-d simplex of generation level(e) * d."""
    forest = tria.forest
    d = forest.d
    gen_of = forest.vertices.generation
    for (u, w), owners in tria.edges().items():
        report.checked["type-d-simplex"] += 1
        target = level_of(max(gen_of(u), gen_of(w)), d) * d
        if target < 0:
            continue
        nid = owners[0]
        if target <= forest.node_generation[nid]:
            node = forest.ancestor_at_generation(nid, target)
            verts, gen = forest.node_vertices[node], target
        else:
            verts, gen = _descend_keeping_edge(forest, nid, u, w, target)
        if gen != target or u not in verts or w not in verts:
            report.fail("type-d-simplex", nid, f"edge ({u}, {w}) has no type-d simplex of generation {target}")


def scan_lemmas(
    tria: Triangulation,
    subsimplices: bool = True,
    include_inner: bool = True,
    checks: Optional[Sequence[str]] = None,
) -> LemmaReport:
    """
    Run the structural checks on a triangulation and its ancestors.

    Args:
        tria: Triangulation to scan
        subsimplices: Also check every subsimplex (2^(d+1) subsets per simplex)
        include_inner: Also scan the bisected ancestors of the leaves
        checks: Restrict the report to these check names

    Returns:
        LemmaReport with counts per check and all violations
    """
    forest = tria.forest
    report = LemmaReport()
    if include_inner:
        nodes = np.flatnonzero(tria.forest_mask())
    else:
        nodes = tria.leaf_ids
    for nid in nodes:
        nid = int(nid)
        _check_simplex(forest, nid, report, subsimplices)
        if forest.child1[nid] >= 0:
            _check_inner(forest, nid, report, subsimplices)
    _check_type_d(tria, report)

    if checks is not None:
        wanted = set(checks)
        report.checked = Counter({k: v for k, v in report.checked.items() if k in wanted})
        report.violations = [v for v in report.violations if v.check in wanted]
    if report.violations:
        logger.warning(f"Structural scan: {len(report.violations)} violations")
    else:
        logger.info(f"Structural scan passed on {len(nodes)} simplices")
    return report
