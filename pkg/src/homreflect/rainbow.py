"""Degree-weighted closed-walk sums and rainbow-cycle machinery.

A homomorphic cycle of length 2k is a closed walk u_0 ... u_{2k-1}; its
weight is the reciprocal of the product of the degrees along it, so the
total weight equals the trace of the 2k-th power of the degree-normalised
step matrix.  The colour-matched variant restricts to walks whose steps i
and j carry the same edge colour.  Everything in this module is exact
rational arithmetic except the explicitly spectral evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import CapabilityError, EdgeColouring, Graph, GraphError, validate_colouring

_FRACTION_HOST_CAP = 64
_INT_OVERFLOW_GUARD = 1 << 62


def _require_positive_degrees(g: Graph) -> None:
    if g.n == 0 or g.min_degree() == 0:
        raise GraphError("walk weights need every vertex to have positive degree")


class _WalkEngine:
    """Exact powers of the step matrix M[u][v] = 1/deg(u) on edges.

    Regular hosts use an integer adjacency-power table with a common
    denominator; others multiply Fraction matrices directly, which caps the
    host size.
    """

    def __init__(self, g: Graph, max_power: int):
        _require_positive_degrees(g)
        self.g = g
        self.n = g.n
        degs = g.degrees()
        self.regular_degree = degs[0] if len(set(degs)) == 1 else None
        if self.regular_degree is not None and \
                g.n * g.n * self.regular_degree ** max(max_power, 2) < _INT_OVERFLOW_GUARD:
            a = np.zeros((g.n, g.n), dtype=np.int64)
            for u, v in g.edges():
                a[u, v] = a[v, u] = 1
            powers = [np.eye(g.n, dtype=np.int64)]
            for _ in range(max_power):
                powers.append(powers[-1] @ a)
            self._int_powers = powers
            self._frac_powers = None
        else:
            if g.n > _FRACTION_HOST_CAP:
                raise CapabilityError(
                    f"exact walk table capped at {_FRACTION_HOST_CAP} vertices for irregular hosts")
            self.regular_degree = None
            step = [[Fraction(1, degs[u]) if v in g.adj[u] else Fraction(0)
                     for v in range(g.n)] for u in range(g.n)]
            powers = [[[Fraction(int(u == v)) for v in range(g.n)] for u in range(g.n)]]
            for _ in range(max_power):
                powers.append(_frac_matmul(powers[-1], step))
            self._frac_powers = powers
            self._int_powers = None

    def step_trace(self, t: int) -> Fraction:
        """Total weight of the closed walks of length t."""
        if self._int_powers is not None:
            return Fraction(int(np.trace(self._int_powers[t])), self.regular_degree ** t)
        return sum((self._frac_powers[t][u][u] for u in range(self.n)), Fraction(0))

    def matched_trace(self, colouring: EdgeColouring, a: int, b: int) -> Fraction:
        """Sum over colours of tr(M^a E M^b E) with E the colour's oriented
        step matrix: closed walks of length a+b+2 whose two marked steps
        share that colour."""
        by_colour: dict[int, list[tuple[int, int]]] = {}
        for u, v in self.g.edges():
            c = colouring.of(u, v)
            by_colour.setdefault(c, []).append((u, v))
            by_colour[c].append((v, u))
        if self._int_powers is not None:
            pa, pb = self._int_powers[a], self._int_powers[b]
            total = 0
            for oriented in by_colour.values():
                xs = np.array([e[0] for e in oriented])
                ys = np.array([e[1] for e in oriented])
                # sum over oriented pairs (x,y),(z,p) of pa[p,x] * pb[y,z]
                left = pa[np.ix_(ys, xs)]
                right = pb[np.ix_(ys, xs)]
                total += int(np.sum(left.T * right))
            return Fraction(total, self.regular_degree ** (a + b + 2))
        pa, pb = self._frac_powers[a], self._frac_powers[b]
        inv_deg = [Fraction(1, self.g.degree(u)) for u in range(self.n)]
        total = Fraction(0)
        for oriented in by_colour.values():
            for x, y in oriented:
                w_x = inv_deg[x]
                for z, p in oriented:
                    total += pa[p][x] * pb[y][z] * w_x * inv_deg[z]
        return total


def _frac_matmul(a, b):
    n = len(a)
    out = []
    for u in range(n):
        row_a = a[u]
        row = []
        for v in range(n):
            acc = Fraction(0)
            for w in range(n):
                x = row_a[w]
                if x:
                    acc += x * b[w][v]
            row.append(acc)
        out.append(row)
    return out


def cycle_weight_sum(g: Graph, k: int) -> Fraction:
    """Total weight of the homomorphic cycles of length 2k, exactly."""
    if k < 1:
        raise GraphError(f"half-length must be positive, got {k}")
    return _WalkEngine(g, 2 * k).step_trace(2 * k)


@dataclass(frozen=True)
class SpectralValue:
    value: float
    error_bound: float


def cycle_weight_sum_spectral(g: Graph, k: int) -> SpectralValue:
    """Floating evaluation through the eigenvalues of the symmetric
    degree-normalised adjacency matrix."""
    _require_positive_degrees(g)
    if k < 1:
        raise GraphError(f"half-length must be positive, got {k}")
    inv_sqrt = np.array([1.0 / np.sqrt(d) for d in g.degrees()])
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        w = inv_sqrt[u] * inv_sqrt[v]
        a[u, v] = a[v, u] = w
    eig = np.linalg.eigvalsh(a)
    value = float(np.sum(eig ** (2 * k)))
    bound = 4.0e-13 * g.n * 2 * k + 1e-13 * abs(value)
    return SpectralValue(value, bound)


def canonical_pattern_offset(i: int, j: int, two_k: int) -> int:
    """Rotate the marked steps (i, j) so the later one sits at position 2k,
    then fold by traversal reversal into 1..k."""
    if not 1 <= i < j <= two_k:
        raise GraphError(f"marked steps must satisfy 1 <= i < j <= {two_k}")
    off = i + two_k - j
    return two_k - off if off > two_k // 2 else off


def coincidence_weight(g: Graph, colouring: EdgeColouring, k: int,
                       i: int, j: int) -> Fraction:
    """Total weight of the 2k-cycles whose steps i and j share a colour."""
    if k < 1:
        raise GraphError(f"half-length must be positive, got {k}")
    ell = canonical_pattern_offset(i, j, 2 * k)
    engine = _WalkEngine(g, max(2 * k - 2, 0))
    return engine.matched_trace(colouring, ell - 1, 2 * k - ell - 1)


def coincidence_table(g: Graph, colouring: EdgeColouring, k: int,
                      engine: _WalkEngine | None = None) -> dict[tuple[int, int], Fraction]:
    """All C(2k,2) coincidence weights, evaluated once per canonical offset."""
    if engine is None:
        engine = _WalkEngine(g, 2 * k)
    canon = {ell: engine.matched_trace(colouring, ell - 1, 2 * k - ell - 1)
             for ell in range(1, k + 1)}
    return {(i, j): canon[canonical_pattern_offset(i, j, 2 * k)]
            for i in range(1, 2 * k + 1) for j in range(i + 1, 2 * k + 1)}


# ---------------------------------------------------------------------------
# Inequality chains
# ---------------------------------------------------------------------------

def check_pattern_chain(g: Graph, colouring: EdgeColouring, k: int) -> dict:
    """Evaluate the full coincidence table and the inequality chain.

    The pairwise, extremal and shortening inequalities must hold for every
    proper colouring; a failure there is an implementation bug.  The
    no-rainbow bounds are hypothesis-dependent: a violation certifies that
    a rainbow cycle exists.
    """
    validate_colouring(g, colouring)
    if not colouring.proper:
        raise GraphError("pattern chain needs a proper colouring")
    if k < 1:
        raise GraphError(f"half-length must be positive, got {k}")
    engine = _WalkEngine(g, 2 * k)
    delta = g.min_degree()
    h = {2 * j: engine.step_trace(2 * j) for j in range(1, k + 1)}
    table = coincidence_table(g, colouring, k, engine)
    two_k = 2 * k
    checks = []

    def add(name: str, lhs: Fraction, rhs: Fraction, conditional: bool) -> None:
        checks.append({"name": name, "lhs": lhs, "rhs": rhs,
                       "holds": lhs <= rhs, "conditional": conditional})

    top = table[(1, two_k)]
    for ell in range(1, k + 1):
        add(f"pairwise_split_l{ell}",
            table[(ell, two_k)] ** 2,
            top * table[(ell, two_k + 1 - ell)],
            conditional=False)
    add("extremal_pattern", max(table.values()), top, conditional=False)
    if k >= 2:
        add("shorten_step", top, h[two_k - 2] / delta, conditional=False)
    for j in range(2, k + 1):
        add(f"no_rainbow_step_k{j}", h[2 * j],
            Fraction(2 * j * j, delta) * h[2 * j - 2], conditional=True)
    if k >= 2:
        add("no_rainbow_total", h[two_k],
            Fraction(2 * k * k, delta) ** k * g.n, conditional=True)
    return {
        "k": k,
        "n": g.n,
        "min_degree": delta,
        "weights": h,
        "patterns": table,
        "checks": checks,
        "unconditional_ok": all(c["holds"] for c in checks if not c["conditional"]),
        "conditional_ok": all(c["holds"] for c in checks if c["conditional"]),
    }


def check_variant_chain(g: Graph, colouring: EdgeColouring, k: int, eps) -> dict:
    """The almost-rainbow variant of the chain at colour-deficiency eps.

    A violated bound certifies a cycle carrying more than (1-eps) distinct
    colours per edge; the counting cross-check compares the coincidence
    total with 2*eps*k times the plain weight.
    """
    eps = Fraction(eps)
    if not Fraction(0) < eps < Fraction(1, 2):
        raise GraphError("colour deficiency must lie strictly between 0 and 1/2")
    validate_colouring(g, colouring)
    if not colouring.proper:
        raise GraphError("variant chain needs a proper colouring")
    if k < 1:
        raise GraphError(f"half-length must be positive, got {k}")
    engine = _WalkEngine(g, 2 * k)
    delta = g.min_degree()
    h = {2 * j: engine.step_trace(2 * j) for j in range(1, k + 1)}
    table = coincidence_table(g, colouring, k, engine)
    checks = []

    def add(name, lhs, rhs, conditional):
        checks.append({"name": name, "lhs": lhs, "rhs": rhs,
                       "holds": lhs <= rhs, "conditional": conditional})

    for j in range(2, k + 1):
        add(f"variant_step_k{j}", h[2 * j],
            Fraction(j) / (eps * delta) * h[2 * j - 2], conditional=True)
    if k >= 2:
        add("variant_total", h[2 * k],
            (Fraction(k) / (eps * delta)) ** k * g.n, conditional=True)
    add("coincidence_counting", 2 * eps * k * h[2 * k],
        sum(table.values(), Fraction(0)), conditional=True)
    return {
        "k": k,
        "n": g.n,
        "eps": eps,
        "min_degree": delta,
        "weights": h,
        "patterns": table,
        "checks": checks,
        "conditional_ok": all(c["holds"] for c in checks),
    }


# ---------------------------------------------------------------------------
# Cycle search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleSearchResult:
    cycle: tuple[int, ...] | None
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.cycle is not None


def find_rainbow_cycle(g: Graph, colouring: EdgeColouring,
                       max_len: int | None = None,
                       node_budget: int = 5 * 10 ** 6) -> CycleSearchResult:
    """Search for a simple cycle whose edge colours are pairwise distinct.

    Exhaustive (a certified "none") when the search finished inside the
    node budget; otherwise the miss only means not-found-within-budget.
    """
    validate_colouring(g, colouring)
    max_len = g.n if max_len is None else min(max_len, g.n)
    nodes = 0
    truncated = False

    def extend(s: int, v: int, path: list[int], used_v: set[int],
               used_c: set[int]) -> tuple[int, ...] | None:
        nonlocal nodes, truncated
        nodes += 1
        if nodes > node_budget:
            truncated = True
            return None
        for w in sorted(g.adj[v]):
            if truncated:
                return None
            if w == s and len(path) >= 3 and colouring.of(v, w) not in used_c:
                return tuple(path)
            if w <= s or w in used_v or len(path) >= max_len:
                continue
            c = colouring.of(v, w)
            if c in used_c:
                continue
            path.append(w)
            used_v.add(w)
            used_c.add(c)
            hit = extend(s, w, path, used_v, used_c)
            if hit:
                return hit
            path.pop()
            used_v.remove(w)
            used_c.remove(c)
        return None

    for s in range(g.n):
        if truncated:
            break
        hit = extend(s, s, [s], {s}, set())
        if hit:
            assert is_rainbow_cycle(g, colouring, hit)
            return CycleSearchResult(hit, exhaustive=True)
    return CycleSearchResult(None, exhaustive=not truncated)


def find_almost_rainbow(g: Graph, colouring: EdgeColouring, eps,
                        max_len: int | None = None,
                        node_budget: int = 5 * 10 ** 6) -> CycleSearchResult:
    """Search for a simple cycle of some length L with more than (1-eps)L
    distinct colours.  Paths whose colour repetitions already exceed
    eps * max_len can never close such a cycle and are pruned."""
    eps = Fraction(eps)
    if not Fraction(0) < eps < Fraction(1, 2):
        raise GraphError("colour deficiency must lie strictly between 0 and 1/2")
    validate_colouring(g, colouring)
    max_len = g.n if max_len is None else min(max_len, g.n)
    slack_cap = eps * max_len
    nodes = 0
    truncated = False

    def extend(s, v, path, used_v, counts):
        nonlocal nodes, truncated
        nodes += 1
        if nodes > node_budget:
            truncated = True
            return None
        edges_placed = len(path) - 1
        distinct = len(counts)
        for w in sorted(g.adj[v]):
            if truncated:
                return None
            if w == s and len(path) >= 3:
                c = colouring.of(v, w)
                length = len(path)
                final_distinct = distinct + (0 if c in counts else 1)
                if Fraction(final_distinct) > (1 - eps) * length:
                    return tuple(path)
            if w <= s or w in used_v or len(path) >= max_len:
                continue
            c = colouring.of(v, w)
            wasted = (edges_placed + 1) - (distinct + (0 if c in counts else 1))
            if Fraction(wasted) >= slack_cap:
                continue
            path.append(w)
            used_v.add(w)
            counts[c] = counts.get(c, 0) + 1
            hit = extend(s, w, path, used_v, counts)
            if hit:
                return hit
            path.pop()
            used_v.remove(w)
            counts[c] -= 1
            if not counts[c]:
                del counts[c]
        return None

    for s in range(g.n):
        if truncated:
            break
        hit = extend(s, s, [s], {s}, {})
        if hit:
            length = len(hit)
            got = distinct_colour_count(g, colouring, hit)
            assert Fraction(got) > (1 - eps) * length
            return CycleSearchResult(hit, exhaustive=True)
    return CycleSearchResult(None, exhaustive=not truncated)


# ---------------------------------------------------------------------------
# Homomorphic-cycle utilities
# ---------------------------------------------------------------------------

def decompose_hom_cycle(seq) -> list[tuple[int, ...]]:
    """Split a closed walk at repeated vertices until every piece is a
    simple cycle or a 2-cycle; the pieces partition the walk's steps."""
    seq = tuple(seq)
    if len(seq) < 2:
        raise GraphError("homomorphic cycles have length at least 2")
    if len(seq) == 2 or len(set(seq)) == len(seq):
        return [seq]
    first_at: dict[int, int] = {}
    for pos, v in enumerate(seq):
        if v in first_at:
            i, j = first_at[v], pos
            piece = seq[i:j]
            rest = seq[:i] + seq[j:]
            return decompose_hom_cycle(piece) + decompose_hom_cycle(rest)
        first_at[v] = pos
    raise AssertionError("unreachable: non-injective walk without a repeat")


def hom_cycle_weight(g: Graph, seq) -> Fraction:
    """Weight of a closed walk: the reciprocal of the product of the
    degrees along it."""
    seq = tuple(seq)
    if len(seq) < 2:
        raise GraphError("homomorphic cycles have length at least 2")
    for t, u in enumerate(seq):
        v = seq[(t + 1) % len(seq)]
        if v not in g.adj[u]:
            raise GraphError(f"({u},{v}) is not an edge")
    out = Fraction(1)
    for u in seq:
        out /= g.degree(u)
    return out


def cycle_step_colours(g: Graph, colouring: EdgeColouring, seq) -> list[int]:
    seq = tuple(seq)
    return [colouring.of(seq[t], seq[(t + 1) % len(seq)]) for t in range(len(seq))]


def distinct_colour_count(g: Graph, colouring: EdgeColouring, seq) -> int:
    return len(set(cycle_step_colours(g, colouring, seq)))


def is_simple_cycle(g: Graph, seq) -> bool:
    seq = tuple(seq)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    return all(seq[(t + 1) % len(seq)] in g.adj[seq[t]] for t in range(len(seq)))


def is_rainbow_cycle(g: Graph, colouring: EdgeColouring, seq) -> bool:
    seq = tuple(seq)
    if not is_simple_cycle(g, seq):
        return False
    cols = cycle_step_colours(g, colouring, seq)
    return len(set(cols)) == len(cols)
