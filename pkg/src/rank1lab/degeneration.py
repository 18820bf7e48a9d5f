"""Combinatorial limit of pinching every core curve in a periodic direction.

Cutting an origami along the core curves of all cylinders in one direction
leaves pieces that retract onto the connected components of the graph of
saddle connections (zeros as vertices).  Each piece becomes a part of the
noded limit surface; each pinched cylinder is a node joining the part that
holds its bottom boundary to the part that holds its top boundary, and
carries a pair of simple poles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .cylinders import CylinderDecomposition, configuration_check, direction_decomposition
from .errors import InternalInconsistency
from .origami import Origami, genus, vertex_ids
from .sl2z import DEFAULT_ORBIT_CAP, cusps, orbit


class Verdict(enum.Enum):
    CASE1 = "ConfigCase1"
    CASE2 = "ConfigCase2"
    CASE3 = "ConfigCase3"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class Part:
    zero_orders: tuple
    poles: int  # cylinder ends attached to this part
    saddle_connections: tuple = ()

    @property
    def euler_char(self) -> int:
        """``2 - 2 g'`` from the per-part Chern formula (may be odd when infeasible)."""
        return self.poles - sum(self.zero_orders)

    @property
    def genus(self):
        twice = sum(self.zero_orders) - self.poles + 2
        return twice // 2 if twice % 2 == 0 else twice / 2

    @property
    def is_twice_punctured_sphere(self) -> bool:
        return not self.zero_orders and self.poles == 2


@dataclass(frozen=True)
class ConnectivityGraph:
    vertices: tuple
    edges: tuple  # (part, part, cylinder index, carries poles)

    def pole_edges(self) -> list:
        return [e for e in self.edges if e[3]]

    def degree(self, x: int, edges=None) -> int:
        edges = self.pole_edges() if edges is None else edges
        return sum((a == x) + (b == x) for a, b, *_ in edges)


@dataclass(frozen=True)
class DegenerateConfig:
    graph: ConnectivityGraph
    source_direction: tuple
    verdict: Verdict
    detail: str = ""


def part_feasibility(p: Part) -> bool:
    twice = sum(p.zero_orders) - p.poles + 2
    return twice >= 0 and twice % 2 == 0 and not p.is_twice_punctured_sphere


def _components(nv: int, edges) -> list[int]:
    comp = list(range(nv))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for a, b, *_ in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            comp[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(nv)]


def cycle_space_dim(g: ConnectivityGraph, edges=None) -> int:
    edges = list(g.edges) if edges is None else edges
    nv = len(g.vertices)
    return len(edges) - nv + len(set(_components(nv, edges)))


def gp_is_cycle(g: ConnectivityGraph) -> bool:
    """Pole edges form exactly one cycle; every other vertex is isolated."""
    edges = g.pole_edges()
    if not edges:
        return False
    touched = {x for a, b, *_ in edges for x in (a, b)}
    if any(g.degree(x, edges) != 2 for x in touched):
        return False
    comp = _components(len(g.vertices), edges)
    return len({comp[x] for x in touched}) == 1


def pinch(o: Origami, d: CylinderDecomposition) -> DegenerateConfig:
    surf = d.surface
    _, mult = vertex_ids(surf)

    # connected components of the saddle-connection graph
    zeros = sorted({x for s in d.saddle_connections for x in (s.start, s.end)})
    zi = {z: k for k, z in enumerate(zeros)}
    comp = _components(len(zeros), [(zi[s.start], zi[s.end]) for s in d.saddle_connections])
    roots = sorted(set(comp))
    part_of_zero = {z: roots.index(comp[zi[z]]) for z in zeros}
    part_of_sc = {s.id: part_of_zero[s.start] for s in d.saddle_connections}

    if not zeros:
        # no singular line: one part, the cylinder closes up on itself
        nparts = 1
        edges = tuple((0, 0, c.index, True) for c in d.cylinders)
    else:
        nparts = len(roots)
        edges = tuple(
            (part_of_sc[c.bottom_word[0]], part_of_sc[c.top_word[0]], c.index, True) for c in d.cylinders
        )

    parts = []
    for k in range(nparts):
        orders = tuple(sorted((mult[z] - 1 for z in zeros if part_of_zero[z] == k), reverse=True))
        poles = sum((a == k) + (b == k) for a, b, *_ in edges)
        scs = tuple(sorted(s for s, p in part_of_sc.items() if p == k))
        part = Part(orders, poles, scs)
        # Euler characteristic of the capped ribbon graph must match Chern
        nz = sum(1 for z in zeros if part_of_zero[z] == k)
        if zeros and nz - len(scs) + poles != part.euler_char:
            raise InternalInconsistency("part Euler characteristic disagrees with Chern formula")
        parts.append(part)

    graph = ConnectivityGraph(tuple(parts), edges)
    verdict, detail = _classify(graph, genus(o))
    return DegenerateConfig(graph, d.direction, verdict, detail)


def _classify(g: ConnectivityGraph, surface_genus: int) -> tuple[Verdict, str]:
    nv = len(g.vertices)
    edges = g.pole_edges()
    if nv == 1 and len(edges) <= 1:
        verdict = Verdict.CASE1
    elif nv == 2 and len(edges) == 2 and all(a != b for a, b, *_ in edges):
        verdict = Verdict.CASE2
    elif nv >= 3 and len(edges) == nv and gp_is_cycle(g):
        verdict = Verdict.CASE3
    else:
        return Verdict.INFEASIBLE, (
            f"{nv} parts joined by {len(edges)} pole pairs (cycle space dimension {cycle_space_dim(g)})"
        )
    if surface_genus >= 2:
        for k, p in enumerate(g.vertices):
            if not part_feasibility(p):
                what = "twice-punctured sphere" if p.is_twice_punctured_sphere else "Chern formula has no solution"
                return Verdict.INFEASIBLE, (
                    f"part {k} with zeros {list(p.zero_orders)} and {p.poles} poles: {what}"
                )
    return verdict, "ok"


@dataclass
class FilterReport:
    origami: Origami
    directions_checked: int = 0
    failures: list = field(default_factory=list)
    cusp_count: int = 0
    orbit_size: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "origami": self.origami.to_dict(),
            "directions_checked": self.directions_checked,
            "pass": self.passed,
            "failures": self.failures,
        }


STAGES = ("config", "pinch")


def rank1_filter(
    o: Origami,
    stages=STAGES,
    *,
    orb=None,
    first_failure_only: bool = True,
    cap: int = DEFAULT_ORBIT_CAP,
) -> FilterReport:
    """Necessary conditions for the orbit of ``o`` to lie in the rank-one locus,
    checked in one direction per cusp."""
    orb = orb if orb is not None else orbit(o, cap)
    cs = cusps(orb)
    rep = FilterReport(o, cusp_count=len(cs), orbit_size=len(orb))
    for c in cs:
        d = direction_decomposition(o, *c.direction)
        rep.directions_checked += 1
        if "config" in stages:
            cr = configuration_check(d)
            if not cr.passed:
                rep.failures.append({"direction": list(c.direction), "stage": "config", "detail": cr.reason()})
                if first_failure_only:
                    break
                continue
        if "pinch" in stages:
            dc = pinch(o, d)
            if dc.verdict is Verdict.INFEASIBLE:
                rep.failures.append({"direction": list(c.direction), "stage": "pinch", "detail": dc.detail})
                if first_failure_only:
                    break
    return rep
