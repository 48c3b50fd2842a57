"""Embedded trivalent graphs (crushtaceans) and their colour-preserving involutions.

A graph is stored as a combinatorial map.  Edge ``e`` joining ``u`` to ``v``
owns two darts: ``2e`` based at ``u`` and ``2e + 1`` based at ``v``, so the
edge involution is ``d ^ 1``.  The rotation system lists, for each vertex, its
incident edges in counter-clockwise order.

A map automorphism is a dart permutation ``phi`` that commutes with ``d ^ 1``,
preserves edge colours, and satisfies either ``phi(s(d)) = s(phi(d))``
(orientation preserving, "rotational") or ``phi(s(d)) = s^-1(phi(d))``
(orientation reversing, "reflective"), where ``s`` is the rotation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

GREEN = "green"
PLAIN = "plain"
COLORS = (GREEN, PLAIN)

PRESERVING = "preserving"
REVERSING = "reversing"
ORIENTATIONS = (PRESERVING, REVERSING)

GRAPH_SCHEMA = "pretzelfal.embedded-graph"
GRAPH_SCHEMA_VERSION = 1


class GraphError(ValueError):
    pass


class EmbeddedGraph:
    """Immutable graph with a rotation system and coloured edges.

    ``edges`` is a sequence of ``(u, v)`` or ``(u, v, color)``; multi-edges are
    allowed, loops are not.  ``rotation[v]`` is the cyclic order of edge indices
    at ``v``.  Degrees are unrestricted here; :attr:`is_trivalent` reports
    whether the graph is a proper crushtacean.
    """

    __slots__ = ("_n", "_edges", "_colors", "_rotation", "_sigma", "_sigma_inv", "_vertex_of", "_hash")

    def __init__(self, num_vertices, edges, rotation, colors=None):
        n = int(num_vertices)
        ends, cols = [], []
        for i, item in enumerate(edges):
            if len(item) == 3:
                u, v, c = item
            else:
                (u, v), c = item, PLAIN
            if colors is not None:
                c = colors[i]
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {i} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"edge {i} is a loop")
            if c not in COLORS:
                raise GraphError(f"edge {i} has unknown colour {c!r}")
            ends.append((u, v))
            cols.append(c)
        if len(rotation) != n:
            raise GraphError("rotation system must list every vertex")
        rot = tuple(tuple(int(e) for e in r) for r in rotation)

        incident = [[] for _ in range(n)]
        for e, (u, v) in enumerate(ends):
            incident[u].append(e)
            incident[v].append(e)
        for v in range(n):
            if sorted(rot[v]) != sorted(incident[v]):
                raise GraphError(f"rotation at vertex {v} does not match its incident edges")

        vertex_of = [0] * (2 * len(ends))
        sigma = [0] * (2 * len(ends))
        sigma_inv = [0] * (2 * len(ends))
        for e, (u, v) in enumerate(ends):
            vertex_of[2 * e], vertex_of[2 * e + 1] = u, v
        for v in range(n):
            darts = [2 * e if ends[e][0] == v else 2 * e + 1 for e in rot[v]]
            for i, d in enumerate(darts):
                nxt = darts[(i + 1) % len(darts)]
                sigma[d] = nxt
                sigma_inv[nxt] = d

        self._n = n
        self._edges = tuple(ends)
        self._colors = tuple(cols)
        self._rotation = rot
        self._sigma = tuple(sigma)
        self._sigma_inv = tuple(sigma_inv)
        self._vertex_of = tuple(vertex_of)
        self._hash = hash((n, self._edges, self._colors, self._rotation))

    # basic data

    @property
    def num_vertices(self):
        return self._n

    @property
    def num_edges(self):
        return len(self._edges)

    @property
    def edges(self):
        return self._edges

    @property
    def colors(self):
        return self._colors

    @property
    def rotation(self):
        return self._rotation

    def color(self, e):
        return self._colors[e]

    def green_edges(self):
        return tuple(e for e, c in enumerate(self._colors) if c == GREEN)

    def degree(self, v):
        return len(self._rotation[v])

    @property
    def is_trivalent(self):
        return all(len(r) == 3 for r in self._rotation)

    def dart_vertex(self, d):
        return self._vertex_of[d]

    def first_dart(self, v):
        r = self._rotation[v]
        if not r:
            return None
        e = r[0]
        return 2 * e if self._edges[e][0] == v else 2 * e + 1

    def components(self):
        """Vertex sets of connected components, each sorted, ordered by least vertex."""
        parent = list(range(self._n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self._edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups = {}
        for v in range(self._n):
            groups.setdefault(find(v), []).append(v)
        return [groups[k] for k in sorted(groups)]

    def faces(self):
        """Face boundaries as dart cycles under ``d -> s(d ^ 1)``."""
        seen = [False] * len(self._sigma)
        out = []
        for d0 in range(len(self._sigma)):
            if seen[d0]:
                continue
            cyc, d = [], d0
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = self._sigma[d ^ 1]
            out.append(tuple(cyc))
        return out

    def genus(self):
        """Total genus of the embedding (sum over components)."""
        comps = self.components()
        isolated = sum(1 for c in comps if len(c) == 1 and not self._rotation[c[0]])
        f = len(self.faces()) + isolated
        twice = 2 * len(comps) - self._n + len(self._edges) - f
        return twice // 2

    def relabel(self, perm):
        """Copy with vertex ``v`` renamed ``perm[v]``; edge indices are kept."""
        if sorted(perm) != list(range(self._n)):
            raise GraphError("relabelling must be a permutation of the vertices")
        rot = [None] * self._n
        for v in range(self._n):
            rot[perm[v]] = self._rotation[v]
        edges = [(perm[u], perm[v], c) for (u, v), c in zip(self._edges, self._colors)]
        return EmbeddedGraph(self._n, edges, rot)

    def mirror(self):
        """Same graph with every rotation reversed."""
        return EmbeddedGraph(self._n, self.edge_triples(), [tuple(reversed(r)) for r in self._rotation])

    def edge_triples(self):
        return [(u, v, c) for (u, v), c in zip(self._edges, self._colors)]

    # equality / hashing so graphs can key caches

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self._n, self._edges, self._colors, self._rotation) == (
            other._n, other._edges, other._colors, other._rotation)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"EmbeddedGraph(V={self._n}, E={len(self._edges)}, green={len(self.green_edges())})"

    # serialisation

    def to_json(self):
        return {
            "schema": GRAPH_SCHEMA,
            "version": GRAPH_SCHEMA_VERSION,
            "vertices": self._n,
            "edges": [{"ends": [u, v], "color": c} for (u, v), c in zip(self._edges, self._colors)],
            "rotation": [list(r) for r in self._rotation],
        }

    @classmethod
    def from_json(cls, data):
        if data.get("schema") != GRAPH_SCHEMA or data.get("version") != GRAPH_SCHEMA_VERSION:
            raise GraphError("not a version-1 embedded graph document")
        edges = [(e["ends"][0], e["ends"][1], e.get("color", PLAIN)) for e in data["edges"]]
        return cls(data["vertices"], edges, data["rotation"])

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path):
        return cls.from_json(json.loads(Path(path).read_text()))


def rotation_from_coordinates(coords, edges):
    """Counter-clockwise rotation system of a straight-line plane drawing."""
    rot = []
    for v, (x, y) in enumerate(coords):
        inc = []
        for e, item in enumerate(edges):
            u, w = item[0], item[1]
            if v in (u, w):
                ox, oy = coords[w if u == v else u]
                inc.append((math.atan2(oy - y, ox - x), e))
        angles = [a for a, _ in inc]
        if len(set(angles)) != len(angles):
            raise GraphError(f"overlapping edges at vertex {v}; give the rotation explicitly")
        rot.append(tuple(e for _, e in sorted(inc)))
    return rot


@lru_cache(maxsize=128)
def build_pretzel_crushtacean(n):
    """Circular ladder with green rungs, drawn as two concentric n-gons.

    Outer vertices ``0..n-1``, inner vertices ``n..2n-1``; rung ``c_{k+1}`` is
    edge ``2n + k`` joining ``k`` and ``n + k``.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    coords = []
    for radius in (2.0, 1.0):
        for k in range(n):
            t = 2 * math.pi * k / n
            coords.append((radius * math.cos(t), radius * math.sin(t)))
    edges = [(k, (k + 1) % n, PLAIN) for k in range(n)]
    edges += [(n + k, n + (k + 1) % n, PLAIN) for k in range(n)]
    edges += [(k, n + k, GREEN) for k in range(n)]
    return EmbeddedGraph(2 * n, edges, rotation_from_coordinates(coords, edges))


# automorphism search


@dataclass(frozen=True)
class GraphInvolution:
    vertex_perm: tuple
    dart_perm: tuple
    orientation: str

    @property
    def reflective(self):
        return self.orientation == REVERSING

    @property
    def rotational(self):
        return self.orientation == PRESERVING

    def is_involution(self):
        return all(self.dart_perm[self.dart_perm[d]] == d for d in range(len(self.dart_perm)))


def _step(g, orientation):
    return g._sigma if orientation == PRESERVING else g._sigma_inv


def _propagate(g, phi, inv, d, t, orientation, involution):
    """Extend the partial dart map with ``d -> t``; return new assignments or None on conflict."""
    sig, step = g._sigma, _step(g, orientation)
    added = []
    stack = [(d, t)]
    while stack:
        a, b = stack.pop()
        if phi[a] is not None or inv[b] is not None:
            if phi[a] != b:
                break
            continue
        if g._colors[a >> 1] != g._colors[b >> 1] or g.degree(g._vertex_of[a]) != g.degree(g._vertex_of[b]):
            break
        phi[a], inv[b] = b, a
        added.append(a)
        stack.append((a ^ 1, b ^ 1))
        stack.append((sig[a], step[b]))
        if involution:
            stack.append((b, a))
    else:
        return added
    for a in added:
        inv[phi[a]] = None
        phi[a] = None
    return None


def _vertex_perm(g, phi):
    perm = list(range(g.num_vertices))
    for v in range(g.num_vertices):
        d = g.first_dart(v)
        if d is not None:
            perm[v] = g._vertex_of[phi[d]]
    return tuple(perm)


def _search(g, orientation, seeds=(), involution=False):
    """Yield every map automorphism (as a dart tuple) extending ``seeds``.

    Isolated vertices are held fixed.
    """
    m = 2 * g.num_edges
    phi, inv = [None] * m, [None] * m
    for d, t in seeds:
        if _propagate(g, phi, inv, d, t, orientation, involution) is None:
            return
    bases = [g.first_dart(c[0]) for c in g.components() if g.first_dart(c[0]) is not None]

    def rec(i):
        while i < len(bases) and phi[bases[i]] is not None:
            i += 1
        if i == len(bases):
            yield tuple(phi)
            return
        d = bases[i]
        for t in range(m):
            if inv[t] is not None:
                continue
            added = _propagate(g, phi, inv, d, t, orientation, involution)
            if added is None:
                continue
            yield from rec(i + 1)
            for a in added:
                inv[phi[a]] = None
                phi[a] = None

    yield from rec(0)


def automorphisms(g, orientation=PRESERVING):
    """All colour-preserving map automorphisms of the given orientation type."""
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    return [GraphInvolution(_vertex_perm(g, p), p, orientation) for p in _search(g, orientation)]


@dataclass(frozen=True)
class InvolutionReport:
    edge: int
    has_reflective: bool
    has_rotational: bool
    reflective_witness: GraphInvolution | None = None
    rotational_witness: GraphInvolution | None = None

    @property
    def witnesses(self):
        return tuple(w for w in (self.reflective_witness, self.rotational_witness) if w is not None)


@lru_cache(maxsize=4096)
def find_involutions(g, e):
    """Search for reflective and rotational involutions fixing edge ``e`` and swapping its ends."""
    if not 0 <= e < g.num_edges:
        raise GraphError(f"edge {e} is not an edge of the graph")
    if g.color(e) != GREEN:
        raise GraphError(f"edge {e} is not a crossing-circle (green) edge")
    found = {}
    for orientation in ORIENTATIONS:
        hit = next(_search(g, orientation, seeds=[(2 * e, 2 * e + 1)], involution=True), None)
        found[orientation] = None if hit is None else GraphInvolution(_vertex_perm(g, hit), hit, orientation)
    return InvolutionReport(
        e,
        found[REVERSING] is not None,
        found[PRESERVING] is not None,
        found[REVERSING],
        found[PRESERVING],
    )


@dataclass(frozen=True)
class CdwEdgeResult:
    edge: int
    twisted: bool
    required: str
    satisfied: bool
    witness: GraphInvolution | None


@dataclass(frozen=True)
class CdwReport:
    edges: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return all(r.satisfied for r in self.edges)

    def __bool__(self):
        return self.passed

    def failures(self):
        return [r for r in self.edges if not r.satisfied]


def cdw_criterion(g, twists):
    """Untwisted green edges need a reflective involution, twisted ones a rotational one.

    ``twists`` is indexed by the green edges in increasing edge order.
    """
    greens = g.green_edges()
    twists = [int(t) for t in twists]
    if len(twists) != len(greens):
        raise ValueError(f"twist vector has length {len(twists)}, graph has {len(greens)} green edges")
    if any(t not in (0, 1) for t in twists):
        raise ValueError("twist entries must be 0 or 1")
    out = []
    for e, t in zip(greens, twists):
        rep = find_involutions(g, e)
        if t:
            out.append(CdwEdgeResult(e, True, PRESERVING, rep.has_rotational, rep.rotational_witness))
        else:
            out.append(CdwEdgeResult(e, False, REVERSING, rep.has_reflective, rep.reflective_witness))
    return CdwReport(tuple(out))


# edge-symmetric spanning forests


@dataclass(frozen=True)
class SpanningForest:
    edges: tuple
    middle_edges: tuple


@dataclass(frozen=True)
class ForestReport:
    valid: bool
    reason: str
    detail: str = ""

    def __bool__(self):
        return self.valid


def _rooted_code(adj, root, parent):
    # AHU canonical string of the subtree at root, iterative to avoid deep recursion
    order, stack = [], [(root, parent)]
    while stack:
        v, p = stack.pop()
        order.append((v, p))
        stack.extend((w, v) for w in adj[v] if w != p)
    code = {}
    for v, p in reversed(order):
        code[v] = "(" + "".join(sorted(code[w] for w in adj[v] if w != p)) + ")"
    return code[root]


def validate_forest(g, forest):
    """Check that ``forest`` is an edge-symmetric spanning forest of ``g``.

    Each tree must contain exactly one designated middle edge, and the two
    rooted halves left after deleting it must be isomorphic; that is exactly
    when a tree involution swapping the middle edge's ends exists.
    """
    edges = tuple(forest.edges)
    for e in edges + tuple(forest.middle_edges):
        if not 0 <= e < g.num_edges:
            raise GraphError(f"edge {e} is not an edge of the graph")
    if len(set(edges)) != len(edges):
        return ForestReport(False, "cyclic", "an edge is repeated")
    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = [[] for _ in range(g.num_vertices)]
    for e in edges:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru == rv:
            return ForestReport(False, "cyclic", f"edge {e} closes a cycle")
        parent[ru] = rv
        adj[u].append(v)
        adj[v].append(u)
    uncovered = [v for v in range(g.num_vertices) if not adj[v]]
    if uncovered:
        return ForestReport(False, "not_spanning", f"vertices {uncovered} lie on no forest edge")

    middles = {}
    for e in forest.middle_edges:
        if e not in edges:
            return ForestReport(False, "bad_middle", f"middle edge {e} is not in the forest")
        root = find(g.edges[e][0])
        if root in middles:
            return ForestReport(False, "bad_middle", "a tree has two middle edges")
        middles[root] = e
    roots = {find(v) for v in range(g.num_vertices)}
    if roots - set(middles):
        return ForestReport(False, "bad_middle", "a tree has no middle edge")
    for root in sorted(middles):
        e = middles[root]
        u, v = g.edges[e]
        if _rooted_code(adj, u, v) != _rooted_code(adj, v, u):
            return ForestReport(False, "asymmetric_tree", f"no involution swaps the ends of edge {e}")
    return ForestReport(True, "ok")


def example_nested_forest():
    """An edge-symmetric spanning forest of the five-rung crushtacean.

    Two trees: ``{0,1,5,6}`` with middle edge ``0-1`` and ``{2,3,4,7,8,9}``
    with middle rung ``3-8``.
    """
    g = build_pretzel_crushtacean(5)
    index = {frozenset(uv): e for e, uv in enumerate(g.edges)}

    def edge(u, v):
        return index[frozenset((u, v))]

    tree_a = [edge(0, 1), edge(0, 5), edge(1, 6)]
    tree_b = [edge(3, 8), edge(2, 3), edge(3, 4), edge(7, 8), edge(8, 9)]
    return g, SpanningForest(tuple(tree_a + tree_b), (edge(0, 1), edge(3, 8)))
