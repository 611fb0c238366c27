"""Orthogonality graphs of UOMs, canonical labelling and subgraph embedding.

Rows are vertices; every (row pair, column) orthogonality gives one edge
labelled by the column. Column subgraphs are compared up to isomorphism with
a small individualisation-refinement canonical labeller: equitable colour
refinement, branching on the first non-singleton cell, and pruning by
automorphisms discovered from repeated leaf certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import IndexOutOfRange, TooLarge
from .uom import Uom, require_validated

MAX_VERTICES = 16

# edge colours for DOT export, one per column, cycling
PALETTE = ("blue", "gold", "green", "grey", "red", "purple", "orange", "cyan", "brown", "magenta")


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        norm = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise IndexOutOfRange(f"edge ({a}, {b}) outside {n} vertices")
            norm.add((min(a, b), max(a, b)))
        return cls(n, frozenset(norm))

    def adjacency(self) -> list[int]:
        """Neighbourhoods as bitmasks."""
        adj = [0] * self.n
        for a, b in self.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return adj

    def degrees(self) -> list[int]:
        return [mask.bit_count() for mask in self.adjacency()]

    def permuted(self, perm) -> SimpleGraph:
        """Relabel vertex ``v`` as ``perm[v]``."""
        return SimpleGraph.from_edges(self.n, ((perm[a], perm[b]) for a, b in self.edges))

    def padded(self, n: int) -> SimpleGraph:
        if n < self.n:
            raise ValueError("cannot pad to fewer vertices")
        return SimpleGraph(n, self.edges)


@dataclass(frozen=True)
class OrthoGraph:
    n: int
    edges: tuple[tuple[int, int, int], ...]  # (i, k, column) with i < k, sorted


def build_graph(u: Uom) -> OrthoGraph:
    require_validated(u, "build_graph")
    edges = []
    for i, k in itertools.combinations(range(u.rows), 2):
        mask = u.orth_mask(i, k)
        edges.extend((i, k, j) for j in range(u.cols) if mask >> j & 1)
    return OrthoGraph(u.rows, tuple(edges))


def is_complete_single_pair(u: Uom) -> bool:
    """True iff every pair of rows is separated by exactly one column."""
    g = build_graph(u)
    pairs = {(i, k) for i, k, _ in g.edges}
    return len(g.edges) == u.rows * (u.rows - 1) // 2 == len(pairs)


def column_subgraph(g: OrthoGraph, j: int, cols: int | None = None) -> SimpleGraph:
    """Simple graph of the edges attributed to column ``j``.

    ``cols`` (the column count of the source matrix) enables the range check;
    without it only negative indices are rejected.
    """
    if j < 0 or (cols is not None and j >= cols):
        raise IndexOutOfRange(f"column {j} out of range")
    return SimpleGraph(g.n, frozenset((i, k) for i, k, c in g.edges if c == j))


def column_subgraphs(u: Uom) -> list[SimpleGraph]:
    g = build_graph(u)
    return [column_subgraph(g, j, u.cols) for j in range(u.cols)]


# --------------------------------------------------------------------------
# Canonical labelling
# --------------------------------------------------------------------------

def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; sub-cells ordered by neighbour count."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            splitter = 0
            for v in cells[s]:
                splitter |= 1 << v
            out = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & splitter).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    out.extend(groups[key] for key in sorted(groups))
                    changed = True
            cells = out
            if changed:
                break
    return cells


def _certificate(adj: list[int], order: list[int]) -> tuple[int, ...]:
    n = len(order)
    return tuple(
        (adj[order[a]] >> order[b]) & 1 for a in range(n) for b in range(a + 1, n)
    )


def _orbit_roots(n: int, generators: list[list[int]], fixed: list[int]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in generators:
        if all(gamma[v] == v for v in fixed):
            for v in range(n):
                a, b = find(v), find(gamma[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def _canonical_order(g: SimpleGraph) -> tuple[tuple[int, ...], list[int]]:
    adj = g.adjacency()
    n = g.n
    state = {"first": None, "best": None}
    generators: list[list[int]] = []

    def leaf(cells, path):
        order = [c[0] for c in cells]
        cert = _certificate(adj, order)
        first, best = state["first"], state["best"]
        if first is None:
            state["first"] = state["best"] = (cert, order, path)
            return None
        for ref in (first, best):
            if cert == ref[0]:
                gamma = [0] * n
                for a, b in zip(ref[1], order):
                    gamma[a] = b
                generators.append(gamma)
                return _common_prefix(ref[2], path)
        if cert < best[0]:
            state["best"] = (cert, order, path)
        return None

    def search(cells, path):
        cells = _refine(adj, cells)
        if len(cells) == n:
            return leaf(cells, path)
        t = next(idx for idx, c in enumerate(cells) if len(c) > 1)
        tried: list[int] = []
        for v in cells[t]:
            if tried:
                roots = _orbit_roots(n, generators, path)
                if roots[v] in {roots[w] for w in tried}:
                    continue
            tried.append(v)
            child = cells[:t] + [[v], [w for w in cells[t] if w != v]] + cells[t + 1:]
            jump = search(child, path + [v])
            if jump is not None and jump < len(path):
                return jump
        return None

    if n:
        search([list(range(n))], [])
        cert, order, _ = state["best"]
    else:
        cert, order = (), []
    return cert, order


def _common_prefix(a: list[int], b: list[int]) -> int:
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


def canonical_label(g: SimpleGraph) -> bytes:
    """A byte string equal for two graphs iff they are isomorphic."""
    if g.n > MAX_VERTICES:
        raise TooLarge(f"canonical labelling supports at most {MAX_VERTICES} vertices, got {g.n}")
    cert, _ = _canonical_order(g)
    bits = "".join(map(str, cert))
    return f"{g.n}:{bits}".encode()


def canonical_relabeling(g: SimpleGraph) -> list[int]:
    """Vertex order realising :func:`canonical_label` (position -> vertex)."""
    if g.n > MAX_VERTICES:
        raise TooLarge(f"canonical labelling supports at most {MAX_VERTICES} vertices, got {g.n}")
    return _canonical_order(g)[1]


def _partition(keys: list) -> tuple[tuple[int, ...], ...]:
    groups: dict = {}
    for j, key in enumerate(keys):
        groups.setdefault(key, []).append(j)
    return tuple(tuple(cols) for cols in groups.values())


def iso_classes(u: Uom) -> tuple[tuple[int, ...], ...]:
    """Columns grouped by isomorphism type of their subgraphs, by first column."""
    return _partition([canonical_label(h) for h in column_subgraphs(u)])


# --------------------------------------------------------------------------
# Subgraph embedding
# --------------------------------------------------------------------------

def subgraph_embeds(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    """Is there an injective vertex map sending every edge of g1 to an edge of g2?

    The embedding need not be induced, so a graph on fewer vertices is
    implicitly padded with isolated vertices.
    """
    if max(g1.n, g2.n) > MAX_VERTICES:
        raise TooLarge(f"subgraph search supports at most {MAX_VERTICES} vertices")
    if g1.n > g2.n or len(g1.edges) > len(g2.edges):
        return False
    adj1, adj2 = g1.adjacency(), g2.adjacency()
    deg1, deg2 = g1.degrees(), g2.degrees()
    if not _dominated(deg1, deg2):
        return False
    # place high-degree vertices first, preferring neighbours of placed ones
    order: list[int] = []
    remaining = set(range(g1.n))
    while remaining:
        placed = 0
        for v in order:
            placed |= 1 << v
        v = max(remaining, key=lambda x: ((adj1[x] & placed).bit_count(), deg1[x], -x))
        order.append(v)
        remaining.remove(v)
    image = [-1] * g1.n

    def rec(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for w in range(g2.n):
            if used >> w & 1 or deg2[w] < deg1[v]:
                continue
            ok = True
            for prev in order[:idx]:
                if adj1[v] >> prev & 1 and not adj2[w] >> image[prev] & 1:
                    ok = False
                    break
            if ok:
                image[v] = w
                if rec(idx + 1, used | 1 << w):
                    return True
        image[v] = -1
        return False

    return rec(0, 0)


def _dominated(deg1: list[int], deg2: list[int]) -> bool:
    a = sorted(deg1, reverse=True)
    b = sorted(deg2, reverse=True)
    return all(x <= y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# DOT export
# --------------------------------------------------------------------------

def ortho_graph_dot(g: OrthoGraph, name: str = "uom", columns: Iterable[int] | None = None) -> str:
    """DOT multigraph; vertices ``V1..Vm`` and edge attribute ``column`` are 1-based."""
    keep = None if columns is None else set(columns)
    lines = [f"graph {name} {{"]
    lines += [f"  V{i + 1};" for i in range(g.n)]
    for i, k, j in g.edges:
        if keep is not None and j not in keep:
            continue
        colour = PALETTE[j % len(PALETTE)]
        lines.append(f'  V{i + 1} -- V{k + 1} [column={j + 1}, color="{colour}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def simple_graph_dot(g: SimpleGraph, name: str = "g") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  V{i + 1};" for i in range(g.n)]
    lines += [f"  V{a + 1} -- V{b + 1};" for a, b in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
