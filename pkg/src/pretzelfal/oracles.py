"""Slow, independent reference implementations used to cross-check the fast routes."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import mpmath
import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .crushtacean import GREEN, PLAIN


def totient_bruteforce(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def _poly_divexact(num, den):
    # integer coefficient lists, lowest degree first; den monic
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        for j, b in enumerate(den):
            num[i + j] -= c * b
    if any(num):
        raise ArithmeticError("division was not exact")
    return q


def cyclotomic_bruteforce(n):
    """Phi_n by dividing ``x^n - 1`` by every Phi_d with ``d | n, d < n`` (recursive)."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_bruteforce(d))
    return num


def lobachevsky_quadrature(theta, prec=256):
    """``-int_0^theta log|2 sin x| dx`` by tanh-sinh quadrature, split at multiples of pi."""
    with mpmath.workprec(prec + 20):
        theta = mpmath.mpf(theta)
        sign = 1
        if theta < 0:
            theta, sign = -theta, -1
        pts = [mpmath.mpf(0)]
        k = 1
        while k * mpmath.pi < theta:
            pts.append(k * mpmath.pi)
            k += 1
        pts.append(theta)
        v = -mpmath.quad(lambda x: mpmath.log(abs(2 * mpmath.sin(x))), pts)
    with mpmath.workprec(prec):
        return +(sign * v)


def lobachevsky_clausen(theta, prec=256):
    """``Cl_2(2 theta) / 2`` via mpmath's Clausen function."""
    with mpmath.workprec(prec + 20):
        v = mpmath.clsin(2, 2 * mpmath.mpf(theta)) / 2
    with mpmath.workprec(prec):
        return +v


def gram_entry_fraction(n):
    """Gram entry for the three n with rational ``sin^2(pi/n)``."""
    s = {3: Fraction(3, 4), 4: Fraction(1, 2), 6: Fraction(1, 4)}[n]
    return -2 * (1 + s) / (1 - s)


# graph oracles, valid for simple graphs


def _neighbour_rotation(g):
    rot = []
    for v in range(g.num_vertices):
        rot.append(tuple(u if w == v else w for u, w in (g.edges[e] for e in g.rotation[v])))
    return rot


def _cyclic_equal(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(tuple(b[i:] + b[:i]) == tuple(a) for i in range(len(b)))


def _edge_colors(g):
    cols = {}
    for (u, v), c in zip(g.edges, g.colors):
        key = frozenset((u, v))
        if key in cols:
            raise ValueError("oracle needs a simple graph")
        cols[key] = c
    return cols


def _perm_orientation_flags(g, perm, rot, cols):
    """(preserving, reversing) flags of a vertex permutation, or (False, False) if not an automorphism."""
    for (u, v), c in zip(g.edges, g.colors):
        if cols.get(frozenset((perm[u], perm[v]))) != c:
            return False, False
    pres = rev = True
    for v in range(g.num_vertices):
        image = tuple(perm[w] for w in rot[v])
        target = rot[perm[v]]
        if pres and not _cyclic_equal(image, target):
            pres = False
        if rev and not _cyclic_equal(image, tuple(reversed(target))):
            rev = False
        if not (pres or rev):
            break
    return pres, rev


def _involutions_on(items):
    """All involutions (as dicts) on a list of items."""
    if not items:
        yield {}
        return
    first, rest = items[0], items[1:]
    for sub in _involutions_on(rest):
        yield {first: first, **sub}
    for i, other in enumerate(rest):
        for sub in _involutions_on(rest[:i] + rest[i + 1:]):
            yield {first: other, other: first, **sub}


def involutions_bruteforce(g, e):
    """Exhaustively decide (has_reflective, has_rotational) for green edge ``e`` of a simple graph."""
    if g.color(e) != GREEN:
        raise ValueError("edge must be green")
    rot, cols = _neighbour_rotation(g), _edge_colors(g)
    u, v = g.edges[e]
    rest = [w for w in range(g.num_vertices) if w not in (u, v)]
    refl = rota = False
    for partial in _involutions_on(rest):
        perm = dict(partial)
        perm[u], perm[v] = v, u
        p, r = _perm_orientation_flags(g, perm, rot, cols)
        rota |= p
        refl |= r
        if refl and rota:
            break
    return refl, rota


def map_automorphism_counts(g):
    """Count (preserving, reversing) colour-preserving map automorphisms of a simple connected graph.

    Enumerates abstract graph automorphisms with networkx and keeps those
    compatible with the rotation system.
    """
    h = nx.Graph()
    h.add_nodes_from(range(g.num_vertices))
    for (u, v), c in zip(g.edges, g.colors):
        h.add_edge(u, v, color=c)
    rot, cols = _neighbour_rotation(g), _edge_colors(g)
    gm = GraphMatcher(h, h, edge_match=lambda a, b: a["color"] == b["color"])
    pres = rev = 0
    for iso in gm.isomorphisms_iter():
        p, r = _perm_orientation_flags(g, iso, rot, cols)
        pres += p
        rev += r
    return pres, rev


def tree_has_swap_bruteforce(edge_list, middle):
    """Whether some automorphism of the tree exchanges the ends of ``middle``."""
    h = nx.Graph(edge_list)
    u, v = middle
    for iso in GraphMatcher(h, h).isomorphisms_iter():
        if iso[u] == v and iso[v] == u:
            return True
    return False


def random_embedded_graph(rng, num_vertices, green_fraction=0.4):
    """Random simple cubic graph with a random rotation system and random green edges."""
    from .crushtacean import EmbeddedGraph

    h = nx.random_regular_graph(3, num_vertices, seed=rng.randrange(2 ** 31))
    edges = sorted(tuple(sorted(e)) for e in h.edges())
    colored = [(u, v, GREEN if rng.random() < green_fraction else PLAIN) for u, v in edges]
    if not any(c == GREEN for _, _, c in colored):
        u, v, _ = colored[0]
        colored[0] = (u, v, GREEN)
    rot = []
    for w in range(num_vertices):
        inc = [i for i, (a, b, _) in enumerate(colored) if w in (a, b)]
        rng.shuffle(inc)
        rot.append(tuple(inc))
    return EmbeddedGraph(num_vertices, colored, rot)


def all_twist_vectors(n):
    return itertools.product((0, 1), repeat=n)
