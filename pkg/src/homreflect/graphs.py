"""Simple undirected graphs: construction, generators, colourings, peeling, file I/O.

Vertices are dense integers 0..n-1.  Optional labels (cube bitstrings,
ground-set subsets, surviving original ids) live in a side table so the
counting kernels never see them.  Graphs are immutable after construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb


class GraphError(ValueError):
    """Invalid input (bad vertex ids, malformed files, broken preconditions)."""


class CapabilityError(RuntimeError):
    """Request exceeds a documented size or budget cap."""


class Graph:
    """Immutable simple undirected graph with neighbour sets and bitmasks."""

    __slots__ = ("n", "adj", "nbr_mask", "labels", "_parts")

    def __init__(self, n: int, adj: tuple[frozenset[int], ...], labels=None):
        self.n = n
        self.adj = adj
        self.nbr_mask = tuple(_mask(s) for s in adj)
        self.labels = labels
        self._parts = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def max_degree(self) -> int:
        return max(self.degrees()) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[frozenset[int]]:
        out, seen = [], set()
        for s in range(self.n):
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                for w in self.adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def bipartition(self) -> tuple[frozenset[int], frozenset[int]] | None:
        """Two colour classes, or None if an odd cycle exists.

        Within each connected component the class containing its smallest
        vertex goes to side 0, so the split is deterministic.
        """
        if self._parts is not None:
            return self._parts if self._parts != () else None
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] != -1:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if colour[w] == -1:
                        colour[w] = 1 - colour[u]
                        stack.append(w)
                    elif colour[w] == colour[u]:
                        self._parts = ()
                        return None
        parts = (frozenset(v for v in range(self.n) if colour[v] == 0),
                 frozenset(v for v in range(self.n) if colour[v] == 1))
        self._parts = parts
        return parts

    def side_of(self, v: int) -> int:
        parts = self.bipartition()
        if parts is None:
            raise GraphError("graph is not bipartite")
        return 0 if v in parts[0] else 1


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def make_graph(n: int, edges, labels=None) -> Graph:
    """Build a Graph from an edge list, deduplicating and symmetrising."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    g = Graph(n, tuple(frozenset(s) for s in adj), labels)
    _check_invariants(g)
    return g


def _check_invariants(g: Graph) -> None:
    for u in range(g.n):
        if u in g.adj[u]:
            raise GraphError(f"self-loop at vertex {u}")
        for v in g.adj[u]:
            if u not in g.adj[v]:
                raise GraphError(f"asymmetric adjacency at ({u},{v})")


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def cube_vertex(bits: str) -> int:
    """Vertex id of a cube coordinate string; character i is coordinate i+1."""
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def cube_label(v: int, d: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(d))


def gen_hypercube(d: int) -> Graph:
    """d-dimensional cube: vertices are 0/1 vectors joined when they differ
    in exactly one coordinate.  Coordinate i+1 of vertex v is bit i of v."""
    if not 1 <= d <= 20:
        raise GraphError(f"cube dimension must be in [1,20], got {d}")
    n = 1 << d
    adj = tuple(frozenset(v ^ (1 << i) for i in range(d)) for v in range(n))
    return Graph(n, adj, labels=tuple(cube_label(v, d) for v in range(n)))


def gen_set_graph(ell: int, k: int) -> Graph:
    """Bipartite containment graph on the ell-subsets and (k-ell)-subsets of
    {1..k}: S ~ T iff S is a subset of T.  Regular of degree C(k-ell, ell)."""
    if not 1 <= ell or not 2 * ell < k:
        raise GraphError(f"need 1 <= ell < k/2, got ell={ell}, k={k}")
    if comb(k, ell) > 10 ** 5:
        raise CapabilityError(f"set graph ({ell},{k}) exceeds the size cap")
    small = [frozenset(c) for c in combinations(range(1, k + 1), ell)]
    large = [frozenset(c) for c in combinations(range(1, k + 1), k - ell)]
    off = len(small)
    edges = [(i, off + j)
             for i, s in enumerate(small)
             for j, t in enumerate(large)
             if s <= t]
    return make_graph(off + len(large), edges, labels=tuple(small + large))


def set_graph_vertex(g: Graph, subset) -> int:
    """Vertex id carrying the given ground-set subset label."""
    want = frozenset(subset)
    for v, lab in enumerate(g.labels):
        if lab == want:
            return v
    raise GraphError(f"no vertex labelled {sorted(want)}")


def gen_random(n: int, p: Fraction, seed: int) -> Graph:
    """Binomial random graph with exact edge probability p = num/den.

    One randrange(den) draw from random.Random(seed) per unordered pair,
    scanned in lexicographic order; the same (n, p, seed) always rebuilds
    the identical graph.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphError(f"edge probability must be in [0,1], got {p}")
    rng = random.Random(seed)
    num, den = p.numerator, p.denominator
    edges = [(u, v)
             for u in range(n) for v in range(u + 1, n)
             if rng.randrange(den) < num]
    return make_graph(n, edges)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def gen_clique_union(size: int, count: int) -> Graph:
    """Disjoint union of `count` complete graphs on `size` vertices each."""
    if size < 1 or count < 1:
        raise GraphError("clique union needs positive size and count")
    edges = []
    for c in range(count):
        base = c * size
        edges.extend((base + u, base + v)
                     for u in range(size) for v in range(u + 1, size))
    return make_graph(size * count, edges)


def gen_cycle_blowup(length: int) -> Graph:
    """2-blowup of an even cycle: each vertex doubled, each edge replaced by
    a complete bipartite K_{2,2} between the copies."""
    if length < 3:
        raise GraphError(f"cycle length must be at least 3, got {length}")
    edges = []
    for i in range(length):
        j = (i + 1) % length
        for a in range(2):
            for b in range(2):
                edges.append((2 * i + a, 2 * j + b))
    return make_graph(2 * length, edges)


# ---------------------------------------------------------------------------
# Density and peeling
# ---------------------------------------------------------------------------

def edge_density(g: Graph) -> Fraction:
    """p with e(G) = p n^2 / 2, i.e. 2e/n^2."""
    if g.n == 0:
        raise GraphError("edge density undefined for the empty vertex set")
    return Fraction(2 * g.edge_count(), g.n * g.n)


def peel_min_degree(g: Graph, t: int) -> Graph:
    """Repeatedly delete vertices of current degree below t.

    The survivor set does not depend on deletion order; the returned graph
    (possibly empty) has min degree >= t and carries the surviving original
    ids as labels.
    """
    if t < 1:
        raise GraphError(f"threshold must be at least 1, got {t}")
    deg = g.degrees()
    alive = [True] * g.n
    queue = [v for v in range(g.n) if deg[v] < t]
    while queue:
        v = queue.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < t:
                    queue.append(w)
    kept = [v for v in range(g.n) if alive[v]]
    index = {v: i for i, v in enumerate(kept)}
    edges = [(index[u], index[v]) for u, v in g.edges() if alive[u] and alive[v]]
    return make_graph(len(kept), edges, labels=tuple(kept))


# ---------------------------------------------------------------------------
# Edge colourings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeColouring:
    """Colour ids per unordered edge, with a properness flag."""

    colours: dict = field(compare=False)
    proper: bool

    def of(self, u: int, v: int) -> int:
        return self.colours[(u, v) if u < v else (v, u)]

    def colour_set(self) -> set[int]:
        return set(self.colours.values())

    def colour_count(self) -> int:
        return len(self.colour_set())


def validate_colouring(g: Graph, colouring: EdgeColouring) -> None:
    """Every edge coloured exactly once; properness flag backed by a check."""
    edges = set(g.edges())
    coloured = set(colouring.colours)
    if coloured != edges:
        raise GraphError("colouring does not cover exactly the edge set")
    if colouring.proper and not _is_proper(g, colouring):
        raise GraphError("colouring flagged proper but two adjacent edges share a colour")


def _is_proper(g: Graph, colouring: EdgeColouring) -> bool:
    for u in range(g.n):
        seen = set()
        for v in g.adj[u]:
            c = colouring.of(u, v)
            if c in seen:
                return False
            seen.add(c)
    return True


def greedy_proper_colouring(g: Graph, seed: int) -> EdgeColouring:
    """Smallest-free-colour greedy over a seeded random edge order.

    Uses at most 2*maxdeg - 1 colours; the result is verified proper.
    """
    rng = random.Random(seed)
    edges = g.edges()
    rng.shuffle(edges)
    at_vertex = [set() for _ in range(g.n)]
    colours = {}
    for u, v in edges:
        used = at_vertex[u] | at_vertex[v]
        c = 0
        while c in used:
            c += 1
        colours[(u, v)] = c
        at_vertex[u].add(c)
        at_vertex[v].add(c)
    colouring = EdgeColouring(colours, proper=True)
    validate_colouring(g, colouring)
    return colouring


def rainbow_colouring(g: Graph) -> EdgeColouring:
    """Every edge its own colour (proper by construction)."""
    colours = {e: i for i, e in enumerate(g.edges())}
    return EdgeColouring(colours, proper=True)


def direction_colouring(d: int) -> tuple[Graph, EdgeColouring]:
    """The d-cube with each edge coloured by the coordinate its endpoints
    differ in: a proper colouring with exactly d colours."""
    g = gen_hypercube(d)
    colours = {}
    for u, v in g.edges():
        colours[(u, v)] = (u ^ v).bit_length() - 1
    colouring = EdgeColouring(colours, proper=True)
    validate_colouring(g, colouring)
    return g, colouring


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def write_edge_list(g: Graph, path) -> None:
    """Line 1 is "n m"; then one "u v" line per edge, 0-indexed, LF ends."""
    edges = g.edges()
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{g.n} {len(edges)}\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        lines = [ln for ln in (raw.strip() for raw in fh) if ln]
    if not lines:
        raise GraphError(f"{path}: empty edge-list file")
    try:
        n, m = map(int, lines[0].split())
    except ValueError:
        raise GraphError(f"{path}: bad header line {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise GraphError(f"{path}: header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            u, v = map(int, ln.split())
        except ValueError:
            raise GraphError(f"{path}: bad edge line {ln!r}") from None
        edges.append((u, v))
    return make_graph(n, edges)


def write_colouring(g: Graph, colouring: EdgeColouring, path) -> None:
    """One "u v colourId" line per edge, sorted by (u, v)."""
    with open(path, "w", newline="\n") as fh:
        for u, v in g.edges():
            fh.write(f"{u} {v} {colouring.of(u, v)}\n")


def read_colouring(g: Graph, path) -> EdgeColouring:
    colours = {}
    with open(path) as fh:
        for raw in fh:
            ln = raw.strip()
            if not ln:
                continue
            try:
                u, v, c = map(int, ln.split())
            except ValueError:
                raise GraphError(f"{path}: bad colour line {ln!r}") from None
            key = (u, v) if u < v else (v, u)
            if key in colours:
                raise GraphError(f"{path}: edge {key} coloured twice")
            colours[key] = c
    colouring = EdgeColouring(colours, proper=False)
    if set(colours) != set(g.edges()):
        raise GraphError(f"{path}: colouring does not cover exactly the edge set")
    proper = _is_proper(g, colouring)
    return EdgeColouring(colours, proper=proper)
