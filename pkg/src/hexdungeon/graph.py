"""Dual graphs of G2 regions and the exact matching engines' shared core.

The dual graph has one vertex per cell and one edge per pair of adjacent
cells inside the region, typed by the tile shape the pair forms.  Tile
weights are x, y, z by kind (symbolic mode) or exact rationals (numeric
mode).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .lattice import (
    BLACK,
    EQUILATERAL,
    KITE,
    OBTUSE,
    CellRef,
    cell_centroid,
    cell_partners,
    chirality,
)
from .polyring import GFPoly

KIND_MONO = {OBTUSE: (1, 0, 0), EQUILATERAL: (0, 1, 0), KITE: (0, 0, 1)}


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration exceeds its node budget."""

    def __init__(self, nodes: int, partial_terms: int):
        super().__init__(
            f"enumeration budget exceeded after {nodes} nodes "
            f"({partial_terms} partial terms accumulated)")
        self.nodes = nodes
        self.partial_terms = partial_terms


class DualGraph:
    """Immutable dual graph of a cell set.

    Vertices are indices into the sorted cell tuple; edges are (i, j, kind)
    with i < j.  The planar embedding maps each vertex to the exact centroid
    of its cell.
    """

    def __init__(self, cells: Iterable[CellRef]):
        self.cells: Tuple[CellRef, ...] = tuple(sorted(set(cells)))
        self.index: Dict[CellRef, int] = {c: i for i, c in enumerate(self.cells)}
        edges = []
        for i, c in enumerate(self.cells):
            for partner, kind in cell_partners(c):
                j = self.index.get(partner)
                if j is not None and i < j:
                    edges.append((i, j, kind))
        self.edges: Tuple[Tuple[int, int, int], ...] = tuple(edges)
        self.points = [cell_centroid(c) for c in self.cells]

    def __len__(self) -> int:
        return len(self.cells)

    def adjacency(self) -> Dict[int, Dict[int, int]]:
        adj: Dict[int, Dict[int, int]] = {i: {} for i in range(len(self.cells))}
        for i, j, kind in self.edges:
            adj[i][j] = kind
            adj[j][i] = kind
        return adj

    def colors(self) -> List[int]:
        return [chirality(c) for c in self.cells]

    def is_connected(self) -> bool:
        n = len(self.cells)
        if n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == n

    def without_cells(self, removed: Iterable[CellRef]) -> "DualGraph":
        removed = set(removed)
        return DualGraph(c for c in self.cells if c not in removed)

    def induced(self, keep: Iterable[CellRef]) -> "DualGraph":
        keep = set(keep)
        return DualGraph(c for c in self.cells if c in keep)


def force_reduce(graph: DualGraph):
    """Peel forced tiles: returns (reduced DualGraph, weight GFPoly).

    A degree-0 vertex annihilates every matching (weight 0); a degree-1
    vertex forces its unique edge, removing both endpoints and multiplying
    the accumulated monomial by the edge weight.
    """
    adj = graph.adjacency()
    acc = [0, 0, 0]
    queue = [v for v, nb in adj.items() if len(nb) <= 1]
    while queue:
        v = queue.pop()
        if v not in adj:
            continue
        if not adj[v]:
            return DualGraph(()), GFPoly.zero()
        if len(adj[v]) > 1:
            continue
        (u, kind), = adj[v].items()
        mono = KIND_MONO[kind]
        acc[0] += mono[0]
        acc[1] += mono[1]
        acc[2] += mono[2]
        for w in (v, u):
            for nbr in adj[w]:
                if nbr not in (v, u):
                    del adj[nbr][w]
                    if len(adj[nbr]) <= 1:
                        queue.append(nbr)
            del adj[w]
    reduced = DualGraph(graph.cells[v] for v in adj)
    return reduced, GFPoly.monomial(*acc)


def gf_enumerate(graph: DualGraph, budget: int = 10 ** 7) -> GFPoly:
    """Exact tiling generating function by branching enumeration.

    Sums x**m y**n z**l over all perfect matchings of the dual graph, where
    (m, n, l) count obtuse, equilateral and kite tiles.  Forced edges are
    propagated eagerly; branching picks a minimum-degree vertex.  Raises
    BudgetExceeded past the node budget.
    """
    adj = graph.adjacency()
    counts: Dict[Tuple[int, int, int], int] = {}
    acc = [0, 0, 0]
    state = {"nodes": 0}

    def remove_pair(v: int, u: int, log: list, queue: list):
        for w in (v, u):
            nbrs = adj.pop(w)
            log.append((w, nbrs))
            other = u if w == v else v
            for nbr in nbrs:
                if nbr != other and nbr in adj:
                    del adj[nbr][w]
                    if len(adj[nbr]) <= 1:
                        queue.append(nbr)

    def undo(log: list):
        for w, nbrs in reversed(log):
            adj[w] = nbrs
            for nbr in nbrs:
                if nbr in adj and nbr != w:
                    adj[nbr][w] = nbrs[nbr]

    def take(v: int, u: int, log: list, queue: list) -> int:
        kind = adj[v][u]
        mono = KIND_MONO[kind]
        acc[0] += mono[0]
        acc[1] += mono[1]
        acc[2] += mono[2]
        remove_pair(v, u, log, queue)
        return kind

    def untake(kinds: list):
        for kind in reversed(kinds):
            mono = KIND_MONO[kind]
            acc[0] -= mono[0]
            acc[1] -= mono[1]
            acc[2] -= mono[2]

    def solve(queue: list):
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise BudgetExceeded(state["nodes"], len(counts))
        log: list = []
        kinds: list = []
        dead = False
        while queue:
            v = queue.pop()
            if v not in adj:
                continue
            if not adj[v]:
                dead = True
                break
            if len(adj[v]) > 1:
                continue
            u = next(iter(adj[v]))
            kinds.append(take(v, u, log, queue))
        if not dead:
            if not adj:
                mono = (acc[0], acc[1], acc[2])
                counts[mono] = counts.get(mono, 0) + 1
            else:
                v = min(adj, key=lambda w: (len(adj[w]), w))
                for u in sorted(adj[v]):
                    sublog: list = []
                    subqueue: list = []
                    kind = take(v, u, sublog, subqueue)
                    solve(subqueue)
                    untake([kind])
                    undo(sublog)
        untake(kinds)
        undo(log)

    solve([v for v, nb in adj.items() if len(nb) <= 1])
    return GFPoly(counts)


# ---------------------------------------------------------------------------
# Reference oracle: exhaustive matching sum for tiny graphs with arbitrary
# weights (Fractions or polynomials) and possible parallel edges.
# ---------------------------------------------------------------------------

class WeightedGraph:
    """A small weighted graph for the transformation laws.

    Edges are (i, j, weight) with parallel edges allowed; weights are
    Fractions (or any commutative ring element for the brute-force oracle).
    """

    def __init__(self, n: int, edges: Sequence[Tuple[int, int, object]],
                 points: Optional[List[Tuple[int, int]]] = None):
        self.n = n
        self.edges = [(min(i, j), max(i, j), w) for i, j, w in edges]
        self.points = points

    @staticmethod
    def from_dual(graph: DualGraph, x: Fraction, y: Fraction, z: Fraction
                  ) -> "WeightedGraph":
        vals = {OBTUSE: Fraction(x), EQUILATERAL: Fraction(y), KITE: Fraction(z)}
        return WeightedGraph(
            len(graph), [(i, j, vals[k]) for i, j, k in graph.edges],
            points=list(graph.points))

    def merge_parallel(self) -> "WeightedGraph":
        merged: Dict[Tuple[int, int], object] = {}
        for i, j, w in self.edges:
            if (i, j) in merged:
                merged[(i, j)] = merged[(i, j)] + w
            else:
                merged[(i, j)] = w
        return WeightedGraph(self.n, [(i, j, w) for (i, j), w in merged.items()],
                             points=self.points)


def brute_match_sum(graph: WeightedGraph):
    """Sum of matching weights by explicit recursion; exponential, for
    graphs small enough to serve as an independent oracle."""
    incident: Dict[int, List[Tuple[int, object]]] = {v: [] for v in range(graph.n)}
    for i, j, w in graph.edges:
        incident[i].append((j, w))
        incident[j].append((i, w))

    def rec(alive: frozenset):
        if not alive:
            return 1
        v = min(alive)
        total = 0
        rest = alive - {v}
        for u, w in incident[v]:
            if u in rest:
                total = total + w * rec(rest - {u})
        return total

    return rec(frozenset(range(graph.n)))
