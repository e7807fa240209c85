"""GLM graphs of groups: every vertex and edge group is Z^n.

An edge pair is stored once with its two inclusion matrices; orientation is
derived, so reversal is total and always consistent.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace

from .errors import CapExceeded, CollapseError, ParseError, ValidationError
from .exact import MatQ


@dataclass(frozen=True)
class EdgePair:
    id: str
    source: str
    target: str
    matrix_from: MatQ
    matrix_to: MatQ

    @property
    def is_loop(self):
        return self.source == self.target


@dataclass(frozen=True)
class OrientedEdge:
    pair: EdgePair
    forward: bool = True

    @property
    def id(self):
        return self.pair.id

    @property
    def initial(self):
        """i(e)."""
        return self.pair.source if self.forward else self.pair.target

    @property
    def terminal(self):
        return self.pair.target if self.forward else self.pair.source

    @property
    def matrix(self):
        """A_e, the inclusion of the edge group into G_{i(e)}."""
        return self.pair.matrix_from if self.forward else self.pair.matrix_to

    @property
    def reverse_matrix(self):
        return self.reverse().matrix

    def reverse(self):
        return OrientedEdge(self.pair, not self.forward)

    @property
    def is_loop(self):
        return self.pair.is_loop

    def __str__(self):
        return self.id if self.forward else f"{self.id}~"


@dataclass(frozen=True)
class GLMGraph:
    rank: int
    vertices: tuple
    edges: tuple  # of EdgePair

    def edge(self, edge_id):
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def oriented_edges(self):
        """Every oriented edge: listed order, forward before reverse."""
        for e in self.edges:
            yield OrientedEdge(e, True)
            yield OrientedEdge(e, False)

    def outgoing(self, v):
        return [e for e in self.oriented_edges() if e.initial == v]

    def validate(self):
        if self.rank < 1:
            raise ValidationError("rank must be at least 1", "rank")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex identifier", "vertices")
        if not self.vertices:
            raise ValidationError("graph has no vertices", "vertices")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate edge identifier", "edges")
        vs = set(self.vertices)
        for k, e in enumerate(self.edges):
            for end, v in (("from", e.source), ("to", e.target)):
                if v not in vs:
                    raise ValidationError(f"unknown vertex {v!r}", f"edges[{k}].{end}")
            for name in ("matrix_from", "matrix_to"):
                m = getattr(e, name)
                if m.shape != (self.rank, self.rank):
                    raise ValidationError(f"expected a {self.rank}x{self.rank} matrix",
                                          f"edges[{k}].{name}")
                if not m.is_integral():
                    raise ValidationError("entries must be integers", f"edges[{k}].{name}")
                if m.det() == 0:
                    raise ValidationError(f"inclusion matrix of edge {e.id!r} is singular",
                                          f"edges[{k}].{name}")
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for e in self.edges:
                for a, b in ((e.source, e.target), (e.target, e.source)):
                    if a == v and b not in seen:
                        seen.add(b)
                        stack.append(b)
        if len(seen) != len(self.vertices):
            missing = sorted(vs - seen)
            raise ValidationError(f"graph is disconnected; unreachable vertices {missing}",
                                  "edges")
        return self

    def to_dict(self):
        return {
            "rank": self.rank,
            "vertices": list(self.vertices),
            "edges": [
                {
                    "id": e.id,
                    "from": e.source,
                    "to": e.target,
                    "matrix_from": [[int(x) for x in r] for r in e.matrix_from.rows],
                    "matrix_to": [[int(x) for x in r] for r in e.matrix_to.rows],
                }
                for e in self.edges
            ],
        }


def build(rank, vertices, edges):
    """Convenience constructor.

    ``edges`` holds ``(id, from, to, matrix_from, matrix_to)`` tuples with
    nested-list matrices.
    """
    pairs = tuple(EdgePair(i, s, t, MatQ(a), MatQ(b)) for i, s, t, a, b in edges)
    return GLMGraph(rank, tuple(vertices), pairs).validate()


def _field(obj, key, where, kind):
    path = f"{where}.{key}" if where else key
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}", path)
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseError(f"field {key!r} must be an integer", path)
    if kind is not int and not isinstance(val, kind):
        raise ParseError(f"field {key!r} has the wrong type", path)
    return val


def _matrix(val, where):
    if not isinstance(val, list) or not val or not all(isinstance(r, list) for r in val):
        raise ParseError("matrix must be a non-empty list of rows", where)
    for i, r in enumerate(val):
        for j, x in enumerate(r):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError("matrix entries must be integers", f"{where}[{i}][{j}]")
    if any(len(r) != len(val) for r in val):
        raise ParseError("matrix must be square", where)
    return MatQ(val)


def from_dict(doc):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    rank = _field(doc, "rank", "", int)
    if rank < 1:
        raise ValidationError("rank must be at least 1", "rank")
    vertices = _field(doc, "vertices", "", list)
    for k, v in enumerate(vertices):
        if not isinstance(v, str):
            raise ParseError("vertex identifiers must be strings", f"vertices[{k}]")
    raw_edges = _field(doc, "edges", "", list)
    pairs = []
    for k, e in enumerate(raw_edges):
        where = f"edges[{k}]"
        if not isinstance(e, dict):
            raise ParseError("edge must be an object", where)
        eid = _field(e, "id", where, str)
        src = _field(e, "from", where, str)
        dst = _field(e, "to", where, str)
        a = _matrix(_field(e, "matrix_from", where, list), f"{where}.matrix_from")
        b = _matrix(_field(e, "matrix_to", where, list), f"{where}.matrix_to")
        pairs.append(EdgePair(eid, src, dst, a, b))
    return GLMGraph(rank, tuple(vertices), tuple(pairs)).validate()


def parse(text):
    """Parse and validate a graph document (JSON text)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(doc)


def serialize(g):
    return json.dumps(g.to_dict(), indent=2)


def load(path):
    with open(path) as fh:
        return parse(fh.read())


# spanning trees ---------------------------------------------------------------


@dataclass(frozen=True)
class SpanningTree:
    edges: frozenset
    root: str

    def __contains__(self, edge_id):
        return edge_id in self.edges


def spanning_tree(g, root=None, edge_order=None):
    """Breadth-first spanning tree.

    Defaults: root is the lexicographically least vertex id and edges are tried
    in listed order.  ``edge_order`` (a sequence of edge ids) overrides the
    order, which gives other trees of the same graph.
    """
    root = min(g.vertices) if root is None else root
    if edge_order is None:
        pairs = list(g.edges)
    else:
        pairs = [g.edge(i) for i in edge_order]
    visited = {root}
    queue = deque([root])
    tree = set()
    while queue:
        v = queue.popleft()
        for e in pairs:
            if e.is_loop:
                continue
            if e.source == v:
                w = e.target
            elif e.target == v:
                w = e.source
            else:
                continue
            if w not in visited:
                visited.add(w)
                tree.add(e.id)
                queue.append(w)
    return SpanningTree(frozenset(tree), root)


def all_spanning_trees(g, limit=None):
    """Distinct BFS trees over every root and rotation of the edge order."""
    ids = [e.id for e in g.edges]
    seen = []
    for root in sorted(g.vertices):
        for shift in range(max(len(ids), 1)):
            t = spanning_tree(g, root, ids[shift:] + ids[:shift])
            if all(t.edges != s.edges for s in seen):
                seen.append(t)
                if limit and len(seen) >= limit:
                    return seen
            t = spanning_tree(g, root, (ids[shift:] + ids[:shift])[::-1])
            if all(t.edges != s.edges for s in seen):
                seen.append(t)
                if limit and len(seen) >= limit:
                    return seen
    return seen


# edge classification and collapse moves ----------------------------------------


@dataclass(frozen=True)
class EdgeClass:
    ascending: bool
    strictly_ascending: bool


def classify_edge(g, e):
    near = abs(e.matrix.det())
    far = abs(e.reverse_matrix.det())
    return EdgeClass(near == 1, near == 1 and far > 1)


def is_collapsible(e):
    return not e.is_loop and abs(e.matrix.det()) == 1


def collapse_move(g, e):
    """Contract the ascending non-loop edge e into its terminal vertex."""
    if e.is_loop:
        raise CollapseError(f"edge {e.id!r} is a loop")
    if abs(e.matrix.det()) != 1:
        raise CollapseError(f"edge {e} is not ascending")
    gone, keep = e.initial, e.terminal
    push = e.reverse_matrix @ e.matrix.inverse()
    edges = []
    for f in g.edges:
        if f.id == e.id:
            continue
        a, b, s, t = f.matrix_from, f.matrix_to, f.source, f.target
        if s == gone:
            s, a = keep, push @ a
        if t == gone:
            t, b = keep, push @ b
        edges.append(replace(f, source=s, target=t, matrix_from=a, matrix_to=b))
    vertices = tuple(v for v in g.vertices if v != gone)
    return GLMGraph(g.rank, vertices, tuple(edges))


def reduce(g):
    while True:
        for e in g.oriented_edges():
            if is_collapsible(e):
                g = collapse_move(g, e)
                break
        else:
            return g


def is_reduced(g):
    return not any(is_collapsible(e) for e in g.oriented_edges())


# standard presentation ----------------------------------------------------------


def stable_letter(edge_id):
    return f"t[{edge_id}]"


def vertex_letter(v, k):
    return f"{v}[{k}]"


def inverse_word(word):
    return [(x, -s) for x, s in reversed(word)]


@dataclass(frozen=True)
class StandardPresentation:
    generators: tuple
    relators: tuple  # each a tuple of (letter, +-1)
    labels: tuple = field(default=(), compare=False)  # human-readable origin of each relator

    def __iter__(self):
        return iter(self.relators)


def _vector_word(v, coeffs):
    word = []
    for k, c in enumerate(coeffs):
        c = int(c)
        word.extend([(vertex_letter(v, k), 1 if c > 0 else -1)] * abs(c))
    return word


def _stable(e, sign=1):
    return (stable_letter(e.id), sign if e.forward else -sign)


def standard_presentation(g, tree):
    n = g.rank
    gens = [stable_letter(e.id) for e in g.edges]
    gens += [vertex_letter(v, k) for v in g.vertices for k in range(n)]
    rels, labels = [], []
    for e in g.oriented_edges():
        cols_e = e.matrix.columns()
        cols_r = e.reverse_matrix.columns()
        for k in range(n):
            w = [_stable(e)] + _vector_word(e.initial, cols_e[k]) + [_stable(e, -1)]
            w += inverse_word(_vector_word(e.terminal, cols_r[k]))
            rels.append(tuple(w))
            labels.append(f"edge {e} generator {k}")
    for e in g.edges:
        oe = OrientedEdge(e, True)
        # t_e t_ebar with t_ebar folded to t_e^-1
        rels.append((_stable(oe), _stable(oe.reverse())))
        labels.append(f"pair {e.id}")
        if e.id in tree:
            rels.append((_stable(oe),))
            labels.append(f"tree edge {e.id}")
    for v in g.vertices:
        for i in range(n):
            for j in range(i + 1, n):
                a, b = vertex_letter(v, i), vertex_letter(v, j)
                rels.append(((a, 1), (b, 1), (a, -1), (b, -1)))
                labels.append(f"commutator {a} {b}")
    return StandardPresentation(tuple(gens), tuple(rels), tuple(labels))


def word_str(word):
    return " ".join(x if s == 1 else f"{x}^-1" for x, s in word) or "1"


# Bass-Serre tree balls ------------------------------------------------------------


@dataclass(frozen=True)
class TreeNode:
    path: tuple  # ((edge label, coset), ...) from the centre
    vertex_type: str
    depth: int
    degree: int


@dataclass(frozen=True)
class TreeBall:
    radius: int
    nodes: tuple
    adjacency: tuple  # (parent index, child index, edge label, coset)

    @property
    def center(self):
        return self.nodes[0]

    def ball_degree(self, idx):
        return sum(1 for a, b, *_ in self.adjacency if idx in (a, b))

    def restrict(self, radius):
        keep = [i for i, nd in enumerate(self.nodes) if nd.depth <= radius]
        remap = {old: new for new, old in enumerate(keep)}
        adj = tuple((remap[a], remap[b], lab, c) for a, b, lab, c in self.adjacency
                    if a in remap and b in remap)
        return TreeBall(radius, tuple(self.nodes[i] for i in keep), adj)

    def to_dot(self):
        lines = ["graph ball {"]
        for i, nd in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{nd.vertex_type}"];')
        for a, b, lab, c in self.adjacency:
            lines.append(f'  n{a} -- n{b} [label="{lab}:{c}"];')
        lines.append("}")
        return "\n".join(lines)


def vertex_degree(g, v):
    return sum(int(abs(e.matrix.det())) for e in g.outgoing(v))


def tree_ball(g, radius, root=None, cap=100_000):
    """Ball around a vertex of type ``root`` in the Bass-Serre tree.

    A vertex of type w has |det A_e| incident edges of type e for every
    oriented edge e with i(e) = w, labelled by cosets 0..|det A_e|-1.  The
    edge leading back to the parent is coset 0 of the reversed type.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    root = spanning_tree(g).root if root is None else root
    degrees = {v: vertex_degree(g, v) for v in g.vertices}
    out = {v: g.outgoing(v) for v in g.vertices}
    nodes = [TreeNode((), root, 0, degrees[root])]
    adjacency = []
    arrived = {0: None}
    frontier = [0]
    for depth in range(1, radius + 1):
        nxt = []
        for idx in frontier:
            node = nodes[idx]
            back = arrived[idx]
            for e in out[node.vertex_type]:
                count = int(abs(e.matrix.det()))
                for coset in range(count):
                    if back is not None and e == back and coset == 0:
                        continue
                    if len(nodes) >= cap:
                        raise CapExceeded(f"tree ball exceeds {cap} vertices", len(nodes))
                    child = TreeNode(node.path + ((str(e), coset),), e.terminal, depth,
                                     degrees[e.terminal])
                    nodes.append(child)
                    cidx = len(nodes) - 1
                    arrived[cidx] = e.reverse()
                    adjacency.append((idx, cidx, str(e), coset))
                    nxt.append(cidx)
        frontier = nxt
    return TreeBall(radius, tuple(nodes), tuple(adjacency))
