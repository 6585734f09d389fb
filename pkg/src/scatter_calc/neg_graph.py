"""Parametric triangle-free graph recursion on a columns-by-rows grid.

Vertices are pairs (column, row) with column < k and row < l.  Row by row,
finite guess sets are combined through injections and an increasing family
to produce candidate sets C, and every edge joins a smaller column at a
higher row to a larger column at a lower row.  The subtraction built into
the C recursion makes the edge set triangle-free for every parameter
choice; the checkers verify this exhaustively.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import ScatterCalcError
from .partition import Labeling, PairColoring

Vertex = Tuple[int, int]            # (column, row)
Edge = Tuple[Vertex, Vertex]        # canonical: smaller column first


class NegGraphError(ScatterCalcError):
    pass


class InvalidParams(NegGraphError):
    def __init__(self, field_name: str, detail: str):
        super().__init__(f"invalid {field_name}: {detail}")
        self.field_name = field_name


class NotABijection(NegGraphError):
    pass


class DomainMismatch(NegGraphError):
    pass


@dataclass(frozen=True)
class NegGraphParams:
    """Finite mock of the hypothesis families behind the recursion.

    d: guess sets, one finite subset of rho per row rho in [k, l);
    u: per-row strictly increasing k-tuples of naturals;
    g: per-row injections of the column set into the rows below.
    """

    k: int
    l: int
    d: Dict[int, FrozenSet[int]]
    u: Dict[int, Tuple[int, ...]]
    g: Dict[int, Tuple[int, ...]]

    def validate(self) -> None:
        if self.k < 1:
            raise InvalidParams("k", "need at least one column")
        if self.l < self.k:
            raise InvalidParams("l", "need at least k rows")
        for rho, dset in self.d.items():
            if not (self.k <= rho < self.l):
                raise InvalidParams("d", f"row {rho} outside [k, l)")
            if any(not (0 <= x < rho) for x in dset):
                raise InvalidParams("d", f"d({rho}) not a subset of {rho}")
        for rho, seq in self.u.items():
            if not (0 <= rho < self.l):
                raise InvalidParams("u", f"row {rho} outside [0, l)")
            if len(seq) != self.k:
                raise InvalidParams("u", f"u_{rho} must have length k")
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise InvalidParams("u", f"u_{rho} is not strictly increasing")
            if any(x < 0 for x in seq):
                raise InvalidParams("u", f"u_{rho} has negative entries")
        for gamma, seq in self.g.items():
            if not (self.k <= gamma < self.l):
                raise InvalidParams("g", f"row {gamma} outside [k, l)")
            if len(seq) != self.k:
                raise InvalidParams("g", f"g_{gamma} must have length k")
            if len(set(seq)) != len(seq):
                raise InvalidParams("g", f"g_{gamma} is not injective")
            if any(not (0 <= x < gamma) for x in seq):
                raise InvalidParams("g", f"g_{gamma} does not map into {gamma}")
        for rho in range(self.l):
            if rho not in self.u:
                raise InvalidParams("u", f"missing u_{rho}")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "d": {str(r): sorted(s) for r, s in sorted(self.d.items())},
            "u": {str(r): list(s) for r, s in sorted(self.u.items())},
            "g": {str(r): list(s) for r, s in sorted(self.g.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "NegGraphParams":
        params = cls(
            k=data["k"],
            l=data["l"],
            d={int(r): frozenset(v) for r, v in data["d"].items()},
            u={int(r): tuple(v) for r, v in data["u"].items()},
            g={int(r): tuple(v) for r, v in data["g"].items()},
        )
        params.validate()
        return params


@dataclass
class GridGraph:
    k: int
    l: int
    edges: FrozenSet[Edge]
    provenance: Dict[Edge, Tuple[int, int]] = field(default_factory=dict)
    csets: Dict[Tuple[int, int], Tuple[int, ...]] = field(default_factory=dict)

    def vertices(self) -> List[Vertex]:
        return [(c, r) for c in range(self.k) for r in range(self.l)]

    def edge_lookup(self) -> FrozenSet[FrozenSet[Vertex]]:
        return frozenset(frozenset(e) for e in self.edges)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "edges": [[list(a), list(b)] for a, b in sorted(self.edges)],
            "provenance": [
                {"edge": [list(a), list(b)], "rho": p[0], "zeta": p[1]}
                for (a, b), p in sorted(self.provenance.items())
            ],
            "csets": [
                {"row": row, "col": col, "entries": list(entries)}
                for (row, col), entries in sorted(self.csets.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GridGraph":
        edges = frozenset(
            (tuple(a), tuple(b)) for a, b in (map(tuple, e) for e in data["edges"]))
        provenance = {
            (tuple(p["edge"][0]), tuple(p["edge"][1])): (p["rho"], p["zeta"])
            for p in data.get("provenance", [])
        }
        csets = {
            (c["row"], c["col"]): tuple(c["entries"])
            for c in data.get("csets", [])
        }
        return cls(data["k"], data["l"], edges, provenance, csets)


def build_neg_graph(params: NegGraphParams) -> GridGraph:
    """Run the row recursion and return the resulting graph with provenance.

    For each row rho and column zeta, every pair (iota < zeta, mu below
    u_rho(zeta)) contributes the minimum of the guess set reached through the
    composed injections, after subtracting the C-sets of rows already used at
    this column; undefined lookups and empty differences contribute nothing.
    """
    params.validate()
    k, l = params.k, params.l
    C: Dict[Tuple[int, int], FrozenSet[int]] = {}
    edges = set()
    provenance: Dict[Edge, Tuple[int, int]] = {}
    for rho in range(l):
        urow = params.u[rho]
        for zeta in range(k):
            subtract = set()
            for nu in range(zeta):
                for theta in C[(rho, nu)]:
                    subtract |= C.get((theta, zeta), frozenset())
            entries = set()
            grho = params.g.get(rho)
            if grho is not None:
                for iota in range(zeta):
                    gamma1 = grho[iota]
                    ginner = params.g.get(gamma1)
                    if ginner is None:
                        continue
                    for mu in range(urow[zeta]):
                        if mu >= k:
                            continue
                        dset = params.d.get(ginner[mu])
                        if dset is None:
                            continue
                        candidates = dset - subtract
                        if candidates:
                            entries.add(min(candidates))
            C[(rho, zeta)] = frozenset(entries)
        for nu in range(k):
            for xi in sorted(C[(rho, nu)]):
                for iota in range(nu):
                    edge = ((iota, rho), (nu, xi))
                    if edge not in edges:
                        edges.add(edge)
                        provenance[edge] = (rho, nu)
    csets = {key: tuple(sorted(v)) for key, v in C.items() if v}
    return GridGraph(k, l, frozenset(edges), provenance, csets)


def find_triangle(graph: GridGraph) -> Optional[Tuple[Vertex, Vertex, Vertex]]:
    """Exhaustive triangle scan; returns the least witness triple or None."""
    verts = graph.vertices()
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for a, b in graph.edges:
        ia, ib = index[a], index[b]
        masks[ia] |= 1 << ib
        masks[ib] |= 1 << ia
    for a, b in sorted(graph.edges):
        common = masks[index[a]] & masks[index[b]]
        if common:
            low = common & -common
            c = verts[low.bit_length() - 1]
            return tuple(sorted((a, b, c)))
    return None


def check_triangle_free(graph: GridGraph) -> Optional[Tuple[Vertex, Vertex, Vertex]]:
    """None when triangle-free, otherwise a witness triple."""
    return find_triangle(graph)


def check_corner_invariant(graph: GridGraph) -> Optional[Edge]:
    """Every edge must join a smaller column at a higher row to a larger
    column at a lower row, and per-column down-degrees must stay within the
    recorded C-set sizes.  Returns a witness edge on failure."""
    for edge in sorted(graph.edges):
        (a, ra), (b, rb) = edge
        if not (a < b and rb < ra):
            return edge
    counts: Counter = Counter()
    first_edge: Dict[Tuple[Vertex, int], Edge] = {}
    for edge in sorted(graph.edges):
        (a, ra), (b, rb) = edge
        key = ((a, ra), b)
        counts[key] += 1
        first_edge.setdefault(key, edge)
    for ((a, ra), b), count in sorted(counts.items()):
        if count > len(graph.csets.get((ra, b), ())):
            return first_edge[((a, ra), b)]
    return None


def column_lift(graph: GridGraph, row_map) -> GridGraph:
    """Transport the graph through a bijective relabelling of the rows."""
    if isinstance(row_map, dict):
        mapping = dict(row_map)
    else:
        mapping = {i: v for i, v in enumerate(row_map)}
    if sorted(mapping.keys()) != list(range(graph.l)) or \
            sorted(mapping.values()) != list(range(graph.l)):
        raise NotABijection("row map must be a bijection of the row index set")
    edges = set()
    provenance = {}
    for edge in graph.edges:
        (a, ra), (b, rb) = edge
        lifted = ((a, mapping[ra]), (b, mapping[rb]))
        edges.add(lifted)
        if edge in graph.provenance:
            rho, zeta = graph.provenance[edge]
            provenance[lifted] = (mapping[rho], zeta)
    csets = {(mapping[row], col): entries
             for (row, col), entries in graph.csets.items()}
    return GridGraph(graph.k, graph.l, frozenset(edges), provenance, csets)


def compose_negative_coloring(labeling: Labeling, graph: GridGraph,
                              correspondence: Sequence[Vertex]) -> PairColoring:
    """Pair colouring on the labelled domain: colour 1 exactly on graph edges."""
    labeling.validate()
    if len(correspondence) != len(labeling.elements):
        raise DomainMismatch("correspondence must cover the labelled domain")
    vertices = set(graph.vertices())
    corr = [tuple(v) for v in correspondence]
    if len(set(corr)) != len(corr):
        raise DomainMismatch("correspondence must be injective")
    if any(v not in vertices for v in corr):
        raise DomainMismatch("correspondence leaves the vertex grid")
    lookup = graph.edge_lookup()

    def colour(i: int, j: int) -> int:
        return 1 if frozenset((corr[i], corr[j])) in lookup else 0

    return PairColoring.from_function(labeling.elements, 2, colour)
