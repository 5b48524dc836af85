"""The triangular (contracted) snake graph and the matching/route bijection.

Each tile loses one horizontal edge to contraction: under the standard
assignment odd tiles contract their north edge and even tiles their south
edge; the opposite assignment swaps the two.  The surviving edges become
arcs pointing left to right, and every tile becomes a triangle (an up
triangle when its north edge was contracted, a down triangle otherwise).

Every arc runs from a vertex of one parity (``x + y`` even for standard,
odd for opposite) to a vertex of the other.  Uncontracted vertices are the
terminals: sources on the tail parity, sinks on the head parity.

Node coordinates: a contraction node sits at the midpoint of its edge; a
source at ``(x - 1/2, y)`` and a sink at ``(x + 1/2, y)``.  With these,
every arc strictly increases ``x``, so sorting nodes by ``(x, y)`` gives a
topological order.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import AmbiguousTerminalOrder, BrokenRoute, NotAMatching, NotARoute, UnknownNode
from .matchings import PerfectMatching, check_matching
from .snakecore import Edge, SnakeGraph, Vertex, make_edge, vertex_parity

HALF = Fraction(1, 2)


class Assignment(enum.Enum):
    STANDARD = "standard"
    OPPOSITE = "opposite"

    @property
    def tail_parity(self) -> int:
        return 0 if self is Assignment.STANDARD else 1

    def contracted_side(self, tile: int) -> str:
        odd = tile % 2 == 1
        return "N" if odd == (self is Assignment.STANDARD) else "S"


@dataclass(frozen=True)
class Node:
    x: Fraction
    y: Fraction
    edge: Edge | None = None  # set on contraction nodes
    vertex: Vertex | None = None  # set on terminals

    @property
    def is_contraction(self) -> bool:
        return self.edge is not None

    @property
    def members(self) -> tuple[Vertex, ...]:
        """Snake graph vertices merged into this node."""
        return self.edge if self.edge is not None else (self.vertex,)

    def label(self) -> str:
        where = f"({_fmt(self.x)},{_fmt(self.y)})"
        if self.edge is not None:
            return f"contract {self.edge[0]}-{self.edge[1]} @ {where}"
        return f"vertex {self.vertex} @ {where}"


@dataclass(frozen=True, order=True)
class Arc:
    tail: int
    head: int
    edge: Edge


@dataclass(frozen=True)
class Triangle:
    label: int
    up: bool
    nodes: tuple[int, int, int]
    arcs: tuple[int, int, int]
    contracted: int  # node id of this tile's own contracted edge


@dataclass(frozen=True)
class TriDag:
    nodes: tuple[Node, ...]  # topologically ordered by (x, y)
    arcs: tuple[Arc, ...]
    triangles: tuple[Triangle, ...]
    assignment: Assignment

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.nodes]
        for i, a in enumerate(self.arcs):
            out[a.tail].append(i)
        return tuple(map(tuple, out))

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in self.nodes]
        for i, a in enumerate(self.arcs):
            inc[a.head].append(i)
        return tuple(map(tuple, inc))

    @cached_property
    def arc_by_edge(self) -> dict[Edge, int]:
        return {a.edge: i for i, a in enumerate(self.arcs)}

    @cached_property
    def contraction_nodes(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.nodes) if n.is_contraction)

    def node_id(self, node: int | Node) -> int:
        if isinstance(node, Node):
            try:
                return self.nodes.index(node)
            except ValueError:
                raise UnknownNode(f"{node} is not a node of this graph") from None
        if isinstance(node, int) and not isinstance(node, bool) and 0 <= node < len(self.nodes):
            return node
        raise UnknownNode(f"no node {node!r}")

    def to_json(self) -> dict:
        term = terminals(self)
        return {
            "assignment": self.assignment.value,
            "nodes": [
                {
                    "id": i,
                    "x": float(n.x),
                    "y": float(n.y),
                    "origin": (
                        {"contraction": [list(n.edge[0]), list(n.edge[1])]}
                        if n.edge is not None
                        else {"terminal": list(n.vertex)}
                    ),
                }
                for i, n in enumerate(self.nodes)
            ],
            "arcs": [
                {"tail": a.tail, "head": a.head, "edge": [list(a.edge[0]), list(a.edge[1])]}
                for a in self.arcs
            ],
            "triangles": [
                {"label": t.label, "up": t.up, "nodes": list(t.nodes), "arcs": list(t.arcs)}
                for t in self.triangles
            ],
            "sources": list(term.sources),
            "sinks": list(term.sinks),
        }

    def to_dot(self) -> str:
        term = terminals(self)
        sources, sinks = set(term.sources), set(term.sinks)
        g = decontract(self)
        edge_index = {e: i for i, e in enumerate(g.edges)}
        lines = [f'digraph "{g.word or "tile"}_{self.assignment.value}" {{', "  rankdir=LR;"]
        for i, n in enumerate(self.nodes):
            pos = f'pos="{_fmt(n.x)},{_fmt(n.y)}!"'
            if i in sources:
                name = f"s{term.sources.index(i) + 1}"
                lines.append(f'  n{i} [shape=circle, label="{name}", {pos}, tooltip="{n.label()}"];')
            elif i in sinks:
                name = f"t{term.sinks.index(i) + 1}"
                lines.append(f'  n{i} [shape=doublecircle, label="{name}", {pos}, tooltip="{n.label()}"];')
            else:
                lines.append(f'  n{i} [shape=point, xlabel="e{edge_index[n.edge]}", {pos}, tooltip="{n.label()}"];')
        for a in self.arcs:
            lines.append(f'  n{a.tail} -> n{a.head} [label="e{edge_index[a.edge]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else str(float(q))


def contract(g: SnakeGraph, assignment: Assignment = Assignment.STANDARD) -> TriDag:
    tail_parity = assignment.tail_parity
    owner: dict[Vertex, Edge] = {}
    tiles = []
    for i in range(1, g.d + 1):
        sides = g.tile_edges(i)
        side = assignment.contracted_side(i)
        c = sides[side]
        for v in c:
            if owner.get(v, c) != c:
                raise AssertionError(f"vertex {v} lies on two contracted edges")
            owner[v] = c
        tiles.append((i, sides, side))

    arc_dir: dict[Edge, tuple[Vertex, Vertex]] = {}
    for i, sides, side in tiles:
        for e in _tile_arcs(sides, side):
            tail, head = e
            if vertex_parity(tail) != tail_parity or vertex_parity(head) == tail_parity:
                raise AssertionError(f"arc {tail}->{head} of tile {i} breaks the parity orientation")
            if arc_dir.setdefault(make_edge(tail, head), e) != e:
                raise AssertionError(f"shared edge {e} oriented two ways")
    contracted = set(owner.values())
    if contracted & set(arc_dir):
        raise AssertionError("an edge is both contracted and an arc")

    nodes: list[Node] = [Node(Fraction(u[0] + v[0], 2), Fraction(u[1] + v[1], 2), edge=(u, v)) for u, v in contracted]
    for v in g.vertices:
        if v not in owner:
            dx = -HALF if vertex_parity(v) == tail_parity else HALF
            nodes.append(Node(v[0] + dx, Fraction(v[1]), vertex=v))
    nodes.sort(key=lambda n: (n.x, n.y))
    if len({(n.x, n.y) for n in nodes}) != len(nodes):
        raise AssertionError("two nodes share a position")

    node_of: dict[Vertex, int] = {}
    for idx, n in enumerate(nodes):
        for v in n.members:
            node_of[v] = idx
    arcs = sorted(Arc(node_of[t], node_of[h], make_edge(t, h)) for t, h in arc_dir.values())
    arcs_t = tuple(arcs)
    arc_id = {a.edge: i for i, a in enumerate(arcs_t)}

    triangles = []
    for i, sides, side in tiles:
        own = node_of[sides[side][0]]
        tri_arcs = tuple(arc_id[make_edge(*e)] for e in _tile_arcs(sides, side))
        tri_nodes = tuple(sorted({own} | {x for a in tri_arcs for x in (arcs_t[a].tail, arcs_t[a].head)}))
        if len(tri_nodes) != 3:
            raise AssertionError(f"tile {i} does not collapse to a triangle")
        triangles.append(Triangle(i, side == "N", tri_nodes, tri_arcs, own))
    return TriDag(tuple(nodes), arcs_t, tuple(triangles), assignment)


def _tile_arcs(sides: dict[str, Edge], contracted_side: str) -> list[tuple[Vertex, Vertex]]:
    (sw, se), (nw, ne) = sides["S"], sides["N"]
    if contracted_side == "N":
        return [(sw, se), (sw, nw), (ne, se)]
    return [(nw, ne), (nw, sw), (se, ne)]


# ---------------------------------------------------------------------------
# terminals and hourglasses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Terminals:
    sources: tuple[int, ...]
    sinks: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.sources)


def terminals(t: TriDag) -> Terminals:
    sources = [i for i in range(len(t.nodes)) if not t.in_arcs[i]]
    sinks = [i for i in range(len(t.nodes)) if not t.out_arcs[i]]

    def key(i: int) -> tuple[Fraction, Fraction]:
        return (t.nodes[i].y, t.nodes[i].x)

    sources.sort(key=key)
    sinks.sort(key=key)
    for name, group in (("sources", sources), ("sinks", sinks)):
        ys = [t.nodes[i].y for i in group]
        if len(set(ys)) != len(ys):
            raise AmbiguousTerminalOrder(f"{name} share a y-coordinate: {[t.nodes[i].label() for i in group]}")
    return Terminals(tuple(sources), tuple(sinks))


def hourglass_count(t: TriDag) -> int:
    return sum(
        1
        for a, b in zip(t.triangles, t.triangles[1:])
        if len(set(a.nodes) & set(b.nodes)) == 1
    )


# ---------------------------------------------------------------------------
# decontraction and the matching <-> route bijection
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Route:
    """``paths[i]`` is the list of arc ids of the path from ``s_i`` to ``t_i``."""

    paths: tuple[tuple[int, ...], ...]

    def to_json(self, t: TriDag) -> list:
        return [[[a, t.arcs[a].tail, t.arcs[a].head] for a in p] for p in self.paths]


def path_nodes(t: TriDag, path: tuple[int, ...]) -> list[int]:
    if not path:
        return []
    return [t.arcs[path[0]].tail] + [t.arcs[a].head for a in path]


def decontract(t: TriDag) -> SnakeGraph:
    """Split every contraction node back into its edge: arcs entering the
    node attach to one end, arcs leaving it to the other."""
    edges: set[Edge] = set()
    for i, n in enumerate(t.nodes):
        if not n.is_contraction:
            continue
        ends = set(n.edge)
        entering = {v for a in t.in_arcs[i] for v in t.arcs[a].edge} & ends
        leaving = {v for a in t.out_arcs[i] for v in t.arcs[a].edge} & ends
        if len(entering) > 1 or len(leaving) > 1 or (entering and entering == leaving):
            raise ValueError(f"contraction node {n.label()} cannot be split")
        edges.add(n.edge)
    edges.update(a.edge for a in t.arcs)

    cells = []
    for tri in sorted(t.triangles, key=lambda tr: tr.label):
        tile_edges = {t.arcs[a].edge for a in tri.arcs} | {t.nodes[tri.contracted].edge}
        cells.append(min(v for e in tile_edges for v in e))
    word = []
    for (x0, y0), (x1, y1) in zip(cells, cells[1:]):
        if (x1 - x0, y1 - y0) == (1, 0):
            word.append("R")
        elif (x1 - x0, y1 - y0) == (0, 1):
            word.append("U")
        else:
            raise ValueError(f"tiles at {(x0, y0)} and {(x1, y1)} are not adjacent")
    g = SnakeGraph("".join(word))
    if set(g.edges) != edges:
        raise ValueError("decontracted edges do not form the snake graph of the triangles")
    return g


def matching_to_route(t: TriDag, m: PerfectMatching) -> Route:
    try:
        check_matching(decontract(t), m)
    except NotAMatching as exc:
        raise BrokenRoute(f"not a perfect matching of the decontracted graph: {exc}") from exc
    term = terminals(t)
    chosen = {t.arc_by_edge[e] for e in m.edges if e in t.arc_by_edge}
    used: set[int] = set()
    paths = []
    for s, sink in zip(term.sources, term.sinks):
        path = []
        node = s
        while t.out_arcs[node]:
            nxt = [a for a in t.out_arcs[node] if a in chosen]
            if len(nxt) != 1:
                raise BrokenRoute(f"{len(nxt)} matched arcs leave {t.nodes[node].label()}")
            path.append(nxt[0])
            node = t.arcs[nxt[0]].head
        if node != sink:
            raise BrokenRoute(f"path from {t.nodes[s].label()} ends at {t.nodes[node].label()}")
        used.update(path)
        paths.append(tuple(path))
    if used != chosen:
        raise BrokenRoute("matched arcs left outside every path")
    route = Route(tuple(paths))
    _check_route(t, route, term, BrokenRoute)
    return route


def _check_route(t: TriDag, r: Route, term: Terminals, error) -> None:
    if len(r.paths) != term.k:
        raise error(f"route has {len(r.paths)} paths, graph has {term.k} sources")
    seen: set[int] = set()
    for i, path in enumerate(r.paths):
        if not path:
            raise error(f"path {i + 1} is empty")
        for a in path:
            if not isinstance(a, int) or not 0 <= a < len(t.arcs):
                raise error(f"path {i + 1} uses unknown arc {a!r}")
        for a, b in zip(path, path[1:]):
            if t.arcs[a].head != t.arcs[b].tail:
                raise error(f"path {i + 1} is not contiguous at arc {b}")
        nodes = path_nodes(t, path)
        if nodes[0] != term.sources[i] or nodes[-1] != term.sinks[i]:
            raise error(f"path {i + 1} does not run from s_{i + 1} to t_{i + 1}")
        if seen & set(nodes):
            raise error(f"path {i + 1} meets an earlier path")
        seen.update(nodes)


def route_to_matching(t: TriDag, r: Route) -> PerfectMatching:
    term = terminals(t)
    _check_route(t, r, term, NotARoute)
    visited = {v for p in r.paths for v in path_nodes(t, p)}
    edges = [t.arcs[a].edge for p in r.paths for a in p]
    edges += [t.nodes[i].edge for i in t.contraction_nodes if i not in visited]
    m = PerfectMatching(tuple(edges))
    try:
        check_matching(decontract(t), m)
    except NotAMatching as exc:
        raise BrokenRoute(f"route does not decontract to a perfect matching: {exc}") from exc
    return m


def tridag_json(t: TriDag) -> str:
    return json.dumps(t.to_json(), sort_keys=True)
