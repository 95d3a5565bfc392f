"""Folded subgroup graphs for finitely generated subgroups.

A graph stores, for each generator label, deterministic outgoing and
incoming edges; reduced loops at the base vertex spell exactly the subgroup
elements.  Construction folds a bouquet of generator loops with a union-find
worklist, restricts to the base component, trims degree-one hairs (the base
vertex is kept), and relabels vertices by a BFS from the base so that equal
subgroups produce identical graphs.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Optional, Sequence

from .errors import ContextMismatchError
from .words import FreeGroupContext, Word

Edge = tuple[int, int, int]  # (source, label, target)


class SubgroupGraph:
    """Immutable folded core graph with base vertex 0."""

    __slots__ = ("context", "num_vertices", "edges", "_out", "_in", "_hash")

    def __init__(
        self,
        context: FreeGroupContext,
        num_vertices: int,
        edges: tuple[Edge, ...],
    ):
        self.context = context
        self.num_vertices = num_vertices
        self.edges = edges
        self._out = {(u, lab): v for (u, lab, v) in edges}
        self._in = {(v, lab): u for (u, lab, v) in edges}
        self._hash: int | None = None

    @property
    def base(self) -> int:
        return 0

    def trace(self, w: Word) -> Optional[int]:
        """Vertex reached by reading ``w`` from the base, or None."""
        vertex = 0
        for letter in w.letters:
            if letter > 0:
                vertex = self._out.get((vertex, letter))
            else:
                vertex = self._in.get((vertex, -letter))
            if vertex is None:
                return None
        return vertex

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SubgroupGraph)
            and self.context == other.context
            and self.num_vertices == other.num_vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context.rank, self.num_vertices, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return (
            f"<SubgroupGraph rank={self.context.rank} "
            f"V={self.num_vertices} E={len(self.edges)}>"
        )


def _folded(raw_edges: list[tuple[Hashable, int, Hashable]]):
    """Union-find folding: merge targets (sources) of equally labeled edges."""
    parent: dict[Hashable, Hashable] = {}

    def find(v: Hashable) -> Hashable:
        parent.setdefault(v, v)
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(a: Hashable, b: Hashable) -> None:
        parent[find(a)] = find(b)

    while True:
        edges = {(find(u), lab, find(v)) for (u, lab, v) in raw_edges}
        out_seen: dict[tuple[Hashable, int], Hashable] = {}
        in_seen: dict[tuple[Hashable, int], Hashable] = {}
        merged = False
        for (u, lab, v) in edges:
            if (u, lab) in out_seen and out_seen[(u, lab)] != v:
                union(out_seen[(u, lab)], v)
                merged = True
                break
            out_seen[(u, lab)] = v
            if (v, lab) in in_seen and in_seen[(v, lab)] != u:
                union(in_seen[(v, lab)], u)
                merged = True
                break
            in_seen[(v, lab)] = u
        if not merged:
            return edges, find


def _finish(
    context: FreeGroupContext,
    raw_edges: list[tuple[Hashable, int, Hashable]],
    base: Hashable,
) -> SubgroupGraph:
    edges, find = _folded(raw_edges)
    base = find(base)

    adjacency: dict[Hashable, set[tuple[int, Hashable, bool]]] = {}
    for (u, lab, v) in edges:
        adjacency.setdefault(u, set()).add((lab, v, True))
        adjacency.setdefault(v, set()).add((lab, u, False))
    adjacency.setdefault(base, set())

    # Base component only.
    component = {base}
    stack = [base]
    while stack:
        vertex = stack.pop()
        for (_, other, _) in adjacency[vertex]:
            if other not in component:
                component.add(other)
                stack.append(other)
    edges = {(u, lab, v) for (u, lab, v) in edges if u in component}

    # Core: iteratively trim non-base vertices of degree <= 1.
    degree: dict[Hashable, int] = {v: 0 for v in component}
    for (u, lab, v) in edges:
        degree[u] += 1
        degree[v] += 1
    hairs = [v for v in component if v != base and degree[v] <= 1]
    while hairs:
        vertex = hairs.pop()
        if vertex not in degree or vertex == base:
            continue
        del degree[vertex]
        dangling = {
            (u, lab, v) for (u, lab, v) in edges if u == vertex or v == vertex
        }
        for (u, lab, v) in dangling:
            edges.discard((u, lab, v))
            for end in (u, v):
                if end in degree and end != vertex:
                    degree[end] -= 1
                    if end != base and degree[end] <= 1:
                        hairs.append(end)

    # Canonical numbering: BFS from base, outgoing labels then incoming.
    out_map = {(u, lab): v for (u, lab, v) in edges}
    in_map = {(v, lab): u for (u, lab, v) in edges}
    order: dict[Hashable, int] = {base: 0}
    queue = [base]
    while queue:
        vertex = queue.pop(0)
        for lab in range(1, context.rank + 1):
            for neighbor in (out_map.get((vertex, lab)), in_map.get((vertex, lab))):
                if neighbor is not None and neighbor not in order:
                    order[neighbor] = len(order)
                    queue.append(neighbor)
    canonical = tuple(
        sorted((order[u], lab, order[v]) for (u, lab, v) in edges)
    )
    return SubgroupGraph(context, len(order), canonical)


def build_graph(
    generators: Sequence[Word], context: FreeGroupContext | None = None
) -> SubgroupGraph:
    """Folded core graph of the subgroup the given words generate."""
    if context is None:
        if not generators:
            raise ValueError("need a context when the generator list is empty")
        context = generators[0].context
    raw_edges: list[tuple[Hashable, int, Hashable]] = []
    fresh = 0
    for word in generators:
        if word.context != context:
            raise ContextMismatchError("generator context differs")
        if word.is_identity:
            continue
        previous: Hashable = "base"
        for position, letter in enumerate(word.letters):
            last = position == len(word.letters) - 1
            target: Hashable = "base" if last else ("v", fresh)
            fresh += 1
            if letter > 0:
                raw_edges.append((previous, letter, target))
            else:
                raw_edges.append((target, -letter, previous))
            previous = target
    return _finish(context, raw_edges, "base")


def full_graph(context: FreeGroupContext) -> SubgroupGraph:
    """Graph of the whole group: the rose with one loop per generator."""
    return build_graph(context.generators(), context)


def contains(graph: SubgroupGraph, w: Word) -> bool:
    """Membership: trace ``w`` from the base and end at the base."""
    if graph.context != w.context:
        raise ContextMismatchError("graph and word contexts differ")
    return graph.trace(w) == 0


def rank(graph: SubgroupGraph) -> int:
    """Free rank of the subgroup: ``|E| - |V| + 1`` of the core graph."""
    return len(graph.edges) - graph.num_vertices + 1


def intersect(g1: SubgroupGraph, g2: SubgroupGraph) -> SubgroupGraph:
    """Fiber product restricted to the component of the base pair."""
    if g1.context != g2.context:
        raise ContextMismatchError("graph contexts differ")
    context = g1.context
    start = (0, 0)
    seen = {start}
    queue = [start]
    product_edges: list[tuple[Hashable, int, Hashable]] = []
    while queue:
        (a, b) = queue.pop(0)
        for lab in range(1, context.rank + 1):
            fa, fb = g1._out.get((a, lab)), g2._out.get((b, lab))
            if fa is not None and fb is not None:
                product_edges.append(((a, b), lab, (fa, fb)))
                if (fa, fb) not in seen:
                    seen.add((fa, fb))
                    queue.append((fa, fb))
            ra, rb = g1._in.get((a, lab)), g2._in.get((b, lab))
            if ra is not None and rb is not None:
                if (ra, rb) not in seen:
                    seen.add((ra, rb))
                    queue.append((ra, rb))
    return _finish(context, product_edges, start)


def same_subgroup(g1: SubgroupGraph, g2: SubgroupGraph) -> bool:
    """Equality of subgroups via canonical folded cores."""
    return g1 == g2


def dump_graph(graph: SubgroupGraph) -> str:
    """One edge per line, ``v1 --x<i>--> v2``; the base vertex is starred."""

    def name(vertex: int) -> str:
        return f"*{vertex}" if vertex == 0 else str(vertex)

    return "\n".join(
        f"{name(u)} --x{lab}--> {name(v)}" for (u, lab, v) in graph.edges
    )
