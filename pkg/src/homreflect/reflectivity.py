"""Reflection triples, the set-reflection map, and reflectivity certificates.

A reflection triple on a connected bipartite pattern H is (A, B, phi) where
phi is a non-identity involutive automorphism, A, B and the fixed set F of
phi partition V(H), no edge joins A and B, and phi maps A onto B.  The
reflection map keeps the members of a constraint set R lying in A or F and
replaces its B-part by the mirror image of its A-part.

H is certified reflective from a starting pair R0 when a chain of such
reflections grows R0 to a full side of the bipartition; the certificate
records every step and yields the amplification exponent 2^m.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .automorphisms import Automorphism, enumerate_automorphisms, enumerate_involutions, is_automorphism
from .graphs import CapabilityError, Graph, GraphError, cube_vertex, gen_hypercube, gen_set_graph

_SIDE_CAP = 20
DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class ReflectionTriple:
    side_a: frozenset[int]
    side_b: frozenset[int]
    swap: Automorphism

    @property
    def fixed(self) -> frozenset[int]:
        return self.swap.fixed_set()

    def flipped(self) -> "ReflectionTriple":
        return ReflectionTriple(self.side_b, self.side_a, self.swap)

    def sort_key(self):
        return (self.swap.perm, tuple(sorted(self.side_a)))


def verify_reflection_triple(h: Graph, a, b, phi: Automorphism) -> tuple[bool, str | None]:
    """Check the four triple conditions; on failure name the first violated one."""
    if not is_automorphism(h, phi.perm):
        raise GraphError("phi is not an automorphism of the pattern")
    a, b = frozenset(a), frozenset(b)
    if not phi.is_involution or phi.is_identity:
        return False, "swap map is not a non-identity involution"
    fixed = phi.fixed_set()
    if a | b | fixed != frozenset(range(h.n)) or (a & b) or (a & fixed) or (b & fixed):
        return False, "A, B and the fixed set do not partition the vertices"
    for u in a:
        if h.adj[u] & b:
            return False, "an edge joins A and B"
    if phi.apply_set(a) != b:
        return False, "swap map does not carry A onto B"
    return True, None


def enumerate_reflection_triples(h: Graph) -> list[ReflectionTriple]:
    """All reflection triples of H, both orientations of each component pairing.

    For each involution: remove its fixed set, take connected components,
    and demand the involution move every component; each way of assigning
    the component pairs to the two sides yields one triple.
    """
    if h.n > 32:
        raise CapabilityError("triple enumeration capped at 32 vertices")
    triples: list[ReflectionTriple] = []
    for phi in enumerate_involutions(h):
        fixed = phi.fixed_set()
        comps = _components_without(h, fixed)
        pairs = []
        ok = True
        seen = set()
        for comp in comps:
            if comp in seen:
                continue
            img = phi.apply_set(comp)
            if img == comp:
                ok = False
                break
            pairs.append((comp, img))
            seen.add(comp)
            seen.add(img)
        if not ok or not pairs:
            continue
        for assign in range(1 << len(pairs)):
            a: set[int] = set()
            b: set[int] = set()
            for idx, (left, right) in enumerate(pairs):
                if (assign >> idx) & 1:
                    a |= right
                    b |= left
                else:
                    a |= left
                    b |= right
            triple = ReflectionTriple(frozenset(a), frozenset(b), phi)
            good, why = verify_reflection_triple(h, triple.side_a, triple.side_b, phi)
            if not good:
                raise AssertionError(f"enumerated triple fails validation: {why}")
            triples.append(triple)
    triples.sort(key=ReflectionTriple.sort_key)
    return triples


def _components_without(h: Graph, removed: frozenset[int]) -> list[frozenset[int]]:
    out, seen = [], set(removed)
    for s in range(h.n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            for w in h.adj[stack.pop()]:
                if w not in comp and w not in removed:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_admissible(h: Graph, triple: ReflectionTriple, r) -> bool:
    """R sits inside one side of the bipartition and meets both A-with-F
    and B-with-F."""
    parts = h.bipartition()
    if parts is None:
        raise GraphError("admissibility needs a bipartite pattern")
    r = frozenset(r)
    if not r:
        return False
    if not (r <= parts[0] or r <= parts[1]):
        return False
    fixed = triple.fixed
    return bool(r & (triple.side_a | fixed)) and bool(r & (triple.side_b | fixed))


def reflect_set(h: Graph, triple: ReflectionTriple, r) -> frozenset[int]:
    """Keep R's members in A or F and mirror its A-part across the swap."""
    r = frozenset(r)
    if not is_admissible(h, triple, r):
        raise GraphError("constraint set is not admissible for the triple")
    kept = r & (triple.side_a | triple.fixed)
    out = kept | triple.swap.apply_set(r & triple.side_a)
    assert out, "reflection of an admissible set is never empty"
    parts = h.bipartition()
    side = parts[0] if r <= parts[0] else parts[1]
    assert out <= side, "reflection left the bipartition side"
    return out


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateStep:
    triple: ReflectionTriple
    r_next: frozenset[int]


@dataclass(frozen=True)
class ReflectionCertificate:
    start: frozenset[int]
    side: frozenset[int]
    steps: tuple[CertificateStep, ...]

    @property
    def num_steps(self) -> int:
        return len(self.steps)

    @property
    def amplification_exponent(self) -> int:
        """s = 2^m for the final homomorphism inequality."""
        return 1 << len(self.steps)

    def sets(self) -> list[frozenset[int]]:
        return [self.start] + [st.r_next for st in self.steps]


def verify_certificate(h: Graph, cert: ReflectionCertificate) -> tuple[bool, list[str]]:
    """Validate every certificate invariant, independent of any search.

    Returns (ok, report).  The report lists one line per step plus which
    steps used a proper subset of the reflected set (the relaxed rule).
    """
    report: list[str] = []
    parts = h.bipartition()
    if parts is None:
        return False, ["pattern is not bipartite"]
    if not cert.start:
        return False, ["empty starting set"]
    if cert.side not in parts:
        return False, ["target is not a bipartition side"]
    if not cert.start <= cert.side:
        return False, ["start does not lie in the target side"]
    current = cert.start
    for j, step in enumerate(cert.steps):
        t = step.triple
        try:
            good, why = verify_reflection_triple(h, t.side_a, t.side_b, t.swap)
        except GraphError as exc:
            raise GraphError(f"step {j}: {exc}") from None
        if not good:
            return False, report + [f"step {j}: malformed triple: {why}"]
        if not is_admissible(h, t, current):
            return False, report + [f"step {j}: set not admissible"]
        reflected = reflect_set(h, t, current)
        if not step.r_next <= reflected:
            return False, report + [f"step {j}: next set not contained in the reflection"]
        if not step.r_next:
            return False, report + [f"step {j}: empty next set"]
        tag = "subset" if step.r_next < reflected else "exact"
        report.append(f"step {j}: |R|={len(current)} -> {len(step.r_next)} ({tag})")
        current = step.r_next
    if current != cert.side:
        return False, report + ["final set is not the full side"]
    report.append(f"reached full side after {cert.num_steps} steps; exponent {cert.amplification_exponent}")
    return True, report


def relaxed_steps(h: Graph, cert: ReflectionCertificate) -> list[int]:
    """Indices of steps where the recorded set is a proper subset of the
    reflection (allowed, but worth surfacing)."""
    out = []
    current = cert.start
    for j, step in enumerate(cert.steps):
        if step.r_next < reflect_set(h, step.triple, current):
            out.append(j)
        current = step.r_next
    return out


def conjugate_certificate(cert: ReflectionCertificate,
                          sigma: Automorphism) -> ReflectionCertificate:
    """Push a certificate through an automorphism of its graph, or through
    an isomorphism onto another graph."""
    inv = sigma.inverse()
    steps = tuple(
        CertificateStep(
            ReflectionTriple(
                sigma.apply_set(st.triple.side_a),
                sigma.apply_set(st.triple.side_b),
                sigma.compose(st.triple.swap).compose(inv),
            ),
            sigma.apply_set(st.r_next),
        )
        for st in cert.steps
    )
    return ReflectionCertificate(sigma.apply_set(cert.start),
                                 sigma.apply_set(cert.side), steps)


def certificate_to_json(cert: ReflectionCertificate) -> str:
    data = {
        "start": sorted(cert.start),
        "side": sorted(cert.side),
        "steps": [
            {
                "A": sorted(st.triple.side_a),
                "B": sorted(st.triple.side_b),
                "phi": list(st.triple.swap.perm),
                "R_next": sorted(st.r_next),
            }
            for st in cert.steps
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True)


def certificate_from_json(h: Graph, text: str) -> ReflectionCertificate:
    try:
        data = json.loads(text)
        steps = tuple(
            CertificateStep(
                ReflectionTriple(frozenset(st["A"]), frozenset(st["B"]),
                                 Automorphism(tuple(st["phi"]))),
                frozenset(st["R_next"]),
            )
            for st in data["steps"]
        )
        return ReflectionCertificate(frozenset(data["start"]),
                                     frozenset(data["side"]), steps)
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed certificate: {exc}") from None


# ---------------------------------------------------------------------------
# Certificate search
# ---------------------------------------------------------------------------

@dataclass
class ReflectivitySearch:
    """Outcome of one breadth-first certificate search."""

    certificate: ReflectionCertificate | None
    states_visited: int
    budget_exhausted: bool

    @property
    def known_reflective(self) -> bool:
        return self.certificate is not None


def certify_reflective(h: Graph, r0, budget: int = DEFAULT_BUDGET,
                       triples: list[ReflectionTriple] | None = None) -> ReflectivitySearch:
    """Breadth-first search for a reflection chain from r0 to a full side.

    States are constraint sets; a new state contained in an already-visited
    one is discarded, which is sound because larger sets reflect to larger
    sets.  No certificate within budget yields an unknown outcome, never a
    negative one.
    """
    parts = h.bipartition()
    if parts is None or not h.is_connected():
        raise GraphError("certificate search needs a connected bipartite pattern")
    r0 = frozenset(r0)
    side = parts[0] if r0 <= parts[0] else parts[1] if r0 <= parts[1] else None
    if side is None:
        raise GraphError("starting set must lie inside one bipartition side")
    if len(side) > _SIDE_CAP:
        raise CapabilityError(f"side size {len(side)} exceeds the search cap {_SIDE_CAP}")
    if triples is None:
        triples = enumerate_reflection_triples(h)

    start = _mask_of(r0)
    target = _mask_of(side)
    # Per-triple bitmask tables so each transition is a few integer ops.
    table = []
    for t in triples:
        keep = _mask_of(t.side_a | t.fixed)
        a_mask = _mask_of(t.side_a)
        need_b = _mask_of(t.side_b | t.fixed)
        images = {1 << v: 1 << t.swap(v) for v in t.side_a}
        table.append((keep, a_mask, need_b, images))

    parent: dict[int, tuple[int, int]] = {start: (-1, -1)}
    visited_max: list[int] = [start]
    frontier = [start]
    visited = 0
    exhausted_budget = False
    goal = start if start == target else None

    while frontier and goal is None:
        nxt = []
        for state in frontier:
            visited += 1
            if visited > budget:
                exhausted_budget = True
                break
            for idx, (keep, a_mask, need_b, images) in enumerate(table):
                if not (state & (keep)) or not (state & need_b):
                    continue
                moved = state & a_mask
                new = state & keep
                while moved:
                    bit = moved & -moved
                    new |= images[bit]
                    moved ^= bit
                if new == state or new in parent:
                    continue
                if any(new & v == new for v in visited_max):
                    continue
                parent[new] = (state, idx)
                visited_max[:] = [v for v in visited_max if v & new != v]
                visited_max.append(new)
                if new == target:
                    goal = new
                    break
                nxt.append(new)
            if goal is not None:
                break
        if exhausted_budget:
            break
        frontier = nxt

    if goal is None:
        return ReflectivitySearch(None, visited, exhausted_budget)

    chain = []
    cur = goal
    while parent[cur][0] != -1:
        prev, idx = parent[cur]
        chain.append((triples[idx], cur))
        cur = prev
    chain.reverse()
    steps = tuple(CertificateStep(t, _unmask(m)) for t, m in chain)
    cert = ReflectionCertificate(r0, side, steps)
    ok, rep = verify_certificate(h, cert)
    if not ok:
        raise AssertionError(f"search produced an invalid certificate: {rep}")
    return ReflectivitySearch(cert, visited, False)


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _unmask(mask: int) -> frozenset[int]:
    out = set()
    while mask:
        bit = mask & -mask
        out.add(bit.bit_length() - 1)
        mask ^= bit
    return frozenset(out)


def reflectivity_report(h: Graph, budget: int = DEFAULT_BUDGET) -> dict:
    """Run the certificate search from every size-2 start on both sides.

    When some automorphism exchanges the two sides, the second side is
    skipped and marked as covered by symmetry.  Verdict is "yes" only if
    every pair certifies; otherwise "unknown".
    """
    parts = h.bipartition()
    if parts is None or not h.is_connected():
        raise GraphError("reflectivity report needs a connected bipartite graph")
    triples = enumerate_reflection_triples(h)
    swap_sides = any(a.apply_set(parts[0]) == parts[1]
                     for a in enumerate_automorphisms(h))
    sides = [parts[0]] if swap_sides else [parts[0], parts[1]]
    pair_results = []
    all_ok = True
    any_budget = False
    for side in sides:
        for r0 in combinations(sorted(side), 2):
            res = certify_reflective(h, r0, budget=budget, triples=triples)
            pair_results.append({
                "start": list(r0),
                "certified": res.known_reflective,
                "steps": res.certificate.num_steps if res.certificate else None,
                "states": res.states_visited,
                "certificate": res.certificate,
            })
            all_ok &= res.known_reflective
            any_budget |= res.budget_exhausted
    return {
        "verdict": "yes" if all_ok else "unknown",
        "sides_checked": len(sides),
        "side_swap_symmetry": swap_sides,
        "pairs": pair_results,
        "budget_exhausted": any_budget,
    }


# ---------------------------------------------------------------------------
# Explicit hypercube chain
# ---------------------------------------------------------------------------

def _coord(v: int, i: int) -> int:
    """Coordinate i (1-based) of cube vertex v."""
    return (v >> (i - 1)) & 1


def _swap_coords_perm(d: int, i: int, j: int) -> Automorphism:
    perm = []
    for v in range(1 << d):
        w = v
        bi, bj = _coord(v, i), _coord(v, j)
        if bi != bj:
            w ^= (1 << (i - 1)) | (1 << (j - 1))
        perm.append(w)
    return Automorphism(tuple(perm))


def _flip_swap_coords_perm(d: int, i: int, j: int) -> Automorphism:
    """Coordinates i and j exchanged and complemented, the rest untouched."""
    perm = []
    for v in range(1 << d):
        w = v & ~((1 << (i - 1)) | (1 << (j - 1)))
        if not _coord(v, j):
            w |= 1 << (i - 1)
        if not _coord(v, i):
            w |= 1 << (j - 1)
        perm.append(w)
    return Automorphism(tuple(perm))


def _translate_perm(d: int, shift: int) -> Automorphism:
    return Automorphism(tuple(v ^ shift for v in range(1 << d)))


def _coord_perm(d: int, mapping: dict[int, int]) -> Automorphism:
    """Permutation of coordinates: coordinate mapping[i] of the image reads
    coordinate i of the argument."""
    full = dict(mapping)
    rest_src = [i for i in range(1, d + 1) if i not in mapping]
    rest_dst = [i for i in range(1, d + 1) if i not in mapping.values()]
    full.update(zip(rest_src, rest_dst))
    perm = []
    for v in range(1 << d):
        w = 0
        for i in range(1, d + 1):
            if _coord(v, i):
                w |= 1 << (full[i] - 1)
        perm.append(w)
    return Automorphism(tuple(perm))


def _even_prefix_set(d: int, k: int) -> frozenset[int]:
    """Even-parity cube vertices supported on the first k coordinates."""
    return frozenset(v for v in range(1 << d)
                     if v < (1 << k) and bin(v).count("1") % 2 == 0)


def _even_prefix_trimmed(d: int, k: int) -> frozenset[int]:
    """Even-parity vertices supported on the first k+1 coordinates whose
    (k, k+1) coordinates are not both 1."""
    return frozenset(v for v in range(1 << d)
                     if v < (1 << (k + 1))
                     and bin(v).count("1") % 2 == 0
                     and not (_coord(v, k) and _coord(v, k + 1)))


def hypercube_growth_step(d: int, k: int) -> tuple[ReflectionTriple, ReflectionTriple]:
    """The two triples that grow the prefix set at coordinate k: a plain
    coordinate swap then a flip-swap, for 2 <= k <= d-1."""
    swap = _swap_coords_perm(d, k, k + 1)
    a = frozenset(v for v in range(1 << d) if _coord(v, k) and not _coord(v, k + 1))
    b = frozenset(v for v in range(1 << d) if not _coord(v, k) and _coord(v, k + 1))
    first = ReflectionTriple(a, b, swap)
    flip = _flip_swap_coords_perm(d, k, k + 1)
    a2 = frozenset(v for v in range(1 << d) if not _coord(v, k) and not _coord(v, k + 1))
    b2 = frozenset(v for v in range(1 << d) if _coord(v, k) and _coord(v, k + 1))
    second = ReflectionTriple(a2, b2, flip)
    return first, second


def hypercube_reflection_chain(d: int, r0) -> ReflectionCertificate:
    """Explicit certificate for the d-cube from any same-parity pair.

    One normalisation step first brings the pair to distance two (a
    coordinate swap fixing one endpoint when the pair is not antipodal, a
    flip-swap otherwise), then a relabelling reduces to the pair {0...0,
    110...0}, and alternating swap / flip-swap steps grow that pair one
    coordinate at a time to the full parity class.  Every claimed identity
    is recomputed through the reflection map and asserted.
    """
    if not 3 <= d <= 6:
        raise GraphError(f"explicit cube chain supports 3 <= d <= 6, got {d}")
    h = gen_hypercube(d)
    r0 = frozenset(r0)
    if len(r0) != 2:
        raise GraphError("starting set must have exactly two vertices")
    u, v = sorted(r0)
    if bin(u).count("1") % 2 != bin(v).count("1") % 2:
        raise GraphError("starting vertices lie in different parity classes")

    steps: list[CertificateStep] = []
    diff = u ^ v
    if bin(diff).count("1") == 2:
        pair = (u, v)
    elif diff == (1 << d) - 1:
        # Antipodal: flip-swap on the first two coordinates, conjugated so
        # that u plays the all-zero corner.
        tau = _translate_perm(d, u)
        base = ReflectionTriple(
            frozenset(x for x in range(1 << d) if not _coord(x, 1) and not _coord(x, 2)),
            frozenset(x for x in range(1 << d) if _coord(x, 1) and _coord(x, 2)),
            _flip_swap_coords_perm(d, 1, 2))
        triple = _conjugate_triple(base, tau)
        new = reflect_set(h, triple, r0)
        assert new == frozenset({u, u ^ 0b11})
        steps.append(CertificateStep(triple, new))
        pair = tuple(sorted(new))
    else:
        # Generic far pair: swap a coordinate where u, v differ with one
        # where they agree, fixing u; the image holds v and its mirror.
        w = diff
        i = (w & -w).bit_length()
        j = next(c for c in range(1, d + 1) if c != i and _coord(w, c) != _coord(w, i))
        tau = _translate_perm(d, u)
        wi, wj = _coord(w, i), _coord(w, j)
        base = ReflectionTriple(
            frozenset(x for x in range(1 << d) if _coord(x, i) == wi and _coord(x, j) == wj),
            frozenset(x for x in range(1 << d) if _coord(x, i) != wi and _coord(x, j) != wj),
            _swap_coords_perm(d, i, j))
        triple = _conjugate_triple(base, tau)
        full = reflect_set(h, triple, r0)
        mirror = triple.swap(v)
        assert v in full and mirror in full and bin(v ^ mirror).count("1") == 2
        steps.append(CertificateStep(triple, frozenset({v, mirror})))
        pair = tuple(sorted((v, mirror)))

    # Relabel so the distance-two pair becomes {0, e1+e2}, run the canonical
    # growth chain, and conjugate it back.
    a, b = pair
    w = a ^ b
    c1 = (w & -w).bit_length()
    c2 = (w ^ (1 << (c1 - 1))).bit_length()
    sigma = _translate_perm(d, a).compose(_coord_perm(d, {1: c1, 2: c2}))
    current = frozenset(pair)
    assert sigma.apply_set(_even_prefix_set(d, 2)) == current
    for k in range(2, d):
        grow, finish = hypercube_growth_step(d, k)
        for base_triple, canonical_target in (
            (grow, _even_prefix_trimmed(d, k)),
            (finish, _even_prefix_set(d, k + 1)),
        ):
            triple = _conjugate_triple(base_triple, sigma)
            new = reflect_set(h, triple, current)
            assert new == sigma.apply_set(canonical_target)
            steps.append(CertificateStep(triple, new))
            current = new

    side = h.bipartition()[h.side_of(u)]
    cert = ReflectionCertificate(r0, side, tuple(steps))
    ok, rep = verify_certificate(h, cert)
    if not ok:
        raise AssertionError(f"cube chain failed validation: {rep}")
    return cert


def _conjugate_triple(t: ReflectionTriple, sigma: Automorphism) -> ReflectionTriple:
    return ReflectionTriple(
        sigma.apply_set(t.side_a),
        sigma.apply_set(t.side_b),
        sigma.compose(t.swap).compose(sigma.inverse()),
    )


# ---------------------------------------------------------------------------
# Explicit set-graph chain
# ---------------------------------------------------------------------------

_SET_GRAPH_SUPPORTED = {(1, 3), (1, 4), (2, 5), (1, 5)}


def _element_swap(g: Graph, i: int, j: int) -> ReflectionTriple:
    """Triple from the ground-set transposition (i j): A holds the vertices
    containing i but not j, B the reverse."""
    perm = []
    index = {lab: v for v, lab in enumerate(g.labels)}
    for lab in g.labels:
        if i in lab and j not in lab:
            moved = (lab - {i}) | {j}
        elif j in lab and i not in lab:
            moved = (lab - {j}) | {i}
        else:
            moved = lab
        perm.append(index[moved])
    swap = Automorphism(tuple(perm))
    a = frozenset(v for v, lab in enumerate(g.labels) if i in lab and j not in lab)
    b = frozenset(v for v, lab in enumerate(g.labels) if j in lab and i not in lab)
    return ReflectionTriple(a, b, swap)


def set_graph_reflection_chain(ell: int, k: int, r0) -> ReflectionCertificate:
    """Explicit certificate for the containment graph from a pair of
    ell-subsets.

    A pair differing in more than one element is first reflected through a
    transposition moving one private element onto a fresh one, giving a pair
    differing in a single element; a ground-set relabelling then reduces to
    the pair {1..ell} / {1..ell-1, ell+1}, which a fixed transposition
    schedule grows to all ell-subsets.  The prefix-coverage invariant of the
    schedule is asserted after every step.
    """
    if (ell, k) not in _SET_GRAPH_SUPPORTED:
        raise CapabilityError(f"explicit chain not provided for ({ell},{k})")
    g = gen_set_graph(ell, k)
    r0 = frozenset(r0)
    if len(r0) != 2:
        raise GraphError("starting set must have exactly two vertices")
    labels = {v: g.labels[v] for v in r0}
    if any(len(lab) != ell for lab in labels.values()):
        raise GraphError("starting vertices must be small-side subsets")

    steps: list[CertificateStep] = []
    va, vb = sorted(r0)
    sa, sb = g.labels[va], g.labels[vb]
    if len(sa ^ sb) > 2:
        i = min(sa - sb)
        j = min(set(range(1, k + 1)) - (sa | sb))
        triple = _element_swap(g, i, j)
        if va not in triple.side_a:
            triple = triple.flipped()
        full = reflect_set(g, triple, r0)
        mirror = triple.swap(va)
        assert va in full and mirror in full
        steps.append(CertificateStep(triple, frozenset({va, mirror})))
        va, vb = sorted((va, mirror))
        sa, sb = g.labels[va], g.labels[vb]

    # Ground-set relabelling onto the canonical adjacent pair.
    shared = sorted(sa & sb)
    lone_a = min(sa - sb)
    lone_b = min(sb - sa)
    source = shared + [lone_a, lone_b]
    mapping = {}
    mapping.update(zip(range(1, ell), source[:ell - 1]))
    mapping[ell] = source[ell - 1]
    mapping[ell + 1] = source[ell]
    rest_src = [x for x in range(1, k + 1) if x not in mapping]
    rest_dst = [x for x in range(1, k + 1) if x not in mapping.values()]
    mapping.update(zip(rest_src, rest_dst))
    index = {lab: v for v, lab in enumerate(g.labels)}
    sigma = Automorphism(tuple(index[frozenset(mapping[x] for x in lab)]
                               for lab in g.labels))
    canon_pair = {frozenset(range(1, ell + 1)),
                  frozenset(range(1, ell)) | {ell + 1}}
    current = frozenset({va, vb})
    assert sigma.apply_set({index[lab] for lab in canon_pair}) == current

    schedule = [(i, j) for i in range(ell, 0, -1) for j in range(i + 1, k + 1)]
    small_side = frozenset(v for v, lab in enumerate(g.labels) if len(lab) == ell)
    for i, j in schedule:
        triple = _conjugate_triple(_element_swap(g, i, j), sigma)
        current = reflect_set(g, triple, current)
        steps.append(CertificateStep(triple, current))
        covered = {index[frozenset(mapping[x] for x in lab)]
                   for lab in _prefix_cover(ell, k, i, j)}
        assert covered <= current, f"coverage invariant failed at swap ({i},{j})"
    assert current == small_side

    cert = ReflectionCertificate(r0, small_side, tuple(steps))
    ok, rep = verify_certificate(g, cert)
    if not ok:
        raise AssertionError(f"set-graph chain failed validation: {rep}")
    return cert


def _prefix_cover(ell: int, k: int, i: int, j: int) -> list[frozenset[int]]:
    """ell-subsets containing {1..i-1} and meeting {i..j}."""
    out = []
    for c in combinations(range(1, k + 1), ell):
        s = frozenset(c)
        if frozenset(range(1, i)) <= s and s & frozenset(range(i, j + 1)):
            out.append(s)
    return out


def cube_pair(d: int, bits_a: str, bits_b: str) -> frozenset[int]:
    """Convenience: a starting pair given as coordinate strings."""
    if len(bits_a) != d or len(bits_b) != d:
        raise GraphError("coordinate strings must have length d")
    return frozenset({cube_vertex(bits_a), cube_vertex(bits_b)})
