"""Independent brute-force oracles for the test suite.

Everything here enumerates naively and shares no strategy with the package
kernels: automorphisms filter all permutations, homomorphism counts walk
plain product spaces with per-edge checks, injective counts come from the
coincidence-partition inclusion-exclusion, and cycle weights enumerate
closed walks one by one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial


def all_automorphisms(g) -> list[tuple[int, ...]]:
    out = []
    for perm in permutations(range(g.n)):
        if all(perm[v] in g.adj[perm[u]] for u in range(g.n) for v in g.adj[u]):
            out.append(perm)
    return out


def hom_count_naive(h, g, constraint=None) -> int:
    """Walk V(G)^V(H) directly; the constraint forces equal images."""
    edges = h.edges()
    fixed = sorted(constraint) if constraint else []
    count = 0
    for image in product(range(g.n), repeat=h.n):
        if fixed and any(image[v] != image[fixed[0]] for v in fixed[1:]):
            continue
        if all(image[v] in g.adj[image[u]] for u, v in edges):
            count += 1
    return count


def injective_count_naive(h, g) -> int:
    edges = h.edges()
    count = 0
    for image in permutations(range(g.n), h.n):
        if all(image[v] in g.adj[image[u]] for u, v in edges):
            count += 1
    return count


def _partitions(items: list[int]):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i, block in enumerate(part):
            yield part[:i] + [[head] + block] + part[i + 1:]
        yield [[head]] + part


def injective_by_partition_moebius(h, g, hom_counter) -> int:
    """Inclusion-exclusion over coincidence partitions of V(H): each
    partition contributes the quotient's homomorphism count weighted by the
    product of (-1)^(|B|-1) (|B|-1)! over its blocks."""
    from homreflect.graphs import GraphError
    from homreflect.homcount import quotient_graph

    total = 0
    for part in _partitions(list(range(h.n))):
        quotient = h
        ok = True
        blocks = [sorted(b) for b in part if len(b) > 1]
        mapping = list(range(h.n))
        for block in sorted(blocks):
            try:
                current = sorted({mapping[v] for v in block})
                quotient = quotient_graph(quotient, current)
            except GraphError:
                ok = False
                break
            rep = min(current)
            removed = [v for v in current if v != rep]
            new_map = []
            for old in mapping:
                shift = sum(1 for r in removed if r < old)
                new_map.append(rep if old in current else old - shift)
            mapping = new_map
        if not ok:
            continue
        weight = 1
        for b in part:
            weight *= (-1) ** (len(b) - 1) * factorial(len(b) - 1)
        total += weight * hom_counter(quotient, g)
    return total


def closed_walk_weight_sum(g, length: int, colour_match=None, colouring=None) -> Fraction:
    """Enumerate every closed walk of the given length; optionally restrict
    to walks whose steps i and j (1-based) share a colour."""
    total = Fraction(0)
    degs = g.degrees()
    for seq in product(range(g.n), repeat=length):
        if not all(seq[(t + 1) % length] in g.adj[seq[t]] for t in range(length)):
            continue
        if colour_match is not None:
            i, j = colour_match
            ci = colouring.of(seq[i - 1], seq[i % length])
            cj = colouring.of(seq[j - 1], seq[j % length])
            if ci != cj:
                continue
        w = Fraction(1)
        for v in seq:
            w /= degs[v]
        total += w
    return total


def simple_cycles(g, max_len=None) -> list[tuple[int, ...]]:
    """Every simple cycle once, rooted at its smallest vertex, one
    orientation (second vertex smaller than last)."""
    max_len = g.n if max_len is None else max_len
    out = []

    def extend(s, path, used):
        v = path[-1]
        for w in sorted(g.adj[v]):
            if w == s and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
            if w <= s or w in used or len(path) >= max_len:
                continue
            path.append(w)
            used.add(w)
            extend(s, path, used)
            path.pop()
            used.remove(w)

    for s in range(g.n):
        extend(s, [s], {s})
    return out


def graphs_isomorphic(g1, g2) -> tuple[int, ...] | None:
    """First isomorphism found by raw permutation filtering, or None."""
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    e1 = g1.edges()
    e2 = set(g2.edges())
    for perm in permutations(range(g2.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in e2 for u, v in e1):
            return perm
    return None
