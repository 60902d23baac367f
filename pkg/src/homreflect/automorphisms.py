"""Automorphisms and involutions of small pattern graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import CapabilityError, Graph, GraphError

_VERTEX_CAP = 32


@dataclass(frozen=True)
class Automorphism:
    """Adjacency-preserving vertex permutation, stored as its image array."""

    perm: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.perm[v]

    def apply_set(self, vertices) -> frozenset[int]:
        return frozenset(self.perm[v] for v in vertices)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: v -> self(other(v))."""
        return Automorphism(tuple(self.perm[other.perm[v]] for v in range(len(self.perm))))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for v, w in enumerate(self.perm):
            inv[w] = v
        return Automorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(w == v for v, w in enumerate(self.perm))

    @property
    def is_involution(self) -> bool:
        return all(self.perm[w] == v for v, w in enumerate(self.perm))

    def fixed_set(self) -> frozenset[int]:
        return frozenset(v for v, w in enumerate(self.perm) if v == w)

    def serialize(self) -> str:
        return " ".join(str(w) for w in self.perm)


def identity(n: int) -> Automorphism:
    return Automorphism(tuple(range(n)))


def is_automorphism(h: Graph, perm) -> bool:
    perm = tuple(perm)
    if sorted(perm) != list(range(h.n)):
        return False
    return all(perm[v] in h.adj[perm[u]] for u in range(h.n) for v in h.adj[u] if u < v)


def fixed_set(phi: Automorphism) -> frozenset[int]:
    return phi.fixed_set()


def _signatures(h: Graph) -> list[tuple]:
    """Degree plus sorted neighbour-degree multiset; invariant under Aut(H)."""
    deg = h.degrees()
    return [(deg[v], tuple(sorted(deg[w] for w in h.adj[v]))) for v in range(h.n)]


def enumerate_automorphisms(h: Graph) -> list[Automorphism]:
    """The full automorphism group by backtracking with signature pruning,
    sorted lexicographically by image array."""
    if h.n > _VERTEX_CAP:
        raise CapabilityError(f"automorphism enumeration capped at {_VERTEX_CAP} vertices")
    if h.n == 0:
        return [identity(0)]
    sig = _signatures(h)
    candidates = [
        [w for w in range(h.n) if sig[w] == sig[v]]
        for v in range(h.n)
    ]
    # Assign high-degree, rare-signature vertices first to fail fast.
    order = sorted(range(h.n), key=lambda v: (len(candidates[v]), -h.degree(v)))
    placed_nbrs = [[u for u in order[:i] if u in h.adj[v]] for i, v in enumerate(order)]
    image = [-1] * h.n
    used = [False] * h.n
    found: list[Automorphism] = []

    def extend(i: int) -> None:
        if i == h.n:
            found.append(Automorphism(tuple(image)))
            return
        v = order[i]
        for w in candidates[v]:
            if used[w]:
                continue
            ok = True
            for u in placed_nbrs[i]:
                if image[u] not in h.adj[w]:
                    ok = False
                    break
            if not ok:
                continue
            # Non-neighbours must stay non-neighbours (v's placed non-nbrs).
            for j in range(i):
                u = order[j]
                if u not in h.adj[v] and image[u] in h.adj[w]:
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(i + 1)
                image[v] = -1
                used[w] = False

    extend(0)
    found.sort(key=lambda a: a.perm)
    return found


def enumerate_involutions(h: Graph) -> list[Automorphism]:
    """All non-identity automorphisms equal to their own inverse."""
    return [a for a in enumerate_automorphisms(h)
            if a.is_involution and not a.is_identity]


def parse_automorphism(h: Graph, text: str) -> Automorphism:
    """Inverse of Automorphism.serialize, validated against H."""
    try:
        perm = tuple(int(tok) for tok in text.split())
    except ValueError:
        raise GraphError(f"bad permutation text {text!r}") from None
    if not is_automorphism(h, perm):
        raise GraphError("permutation is not an automorphism of the graph")
    return Automorphism(perm)
