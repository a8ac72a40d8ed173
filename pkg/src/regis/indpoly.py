"""Exact independent-set counting and the independence polynomial."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator

import mpmath

from .errors import CapacityError, DomainError
from .graph import Graph, bits, is_bipartite

MAX_ENUM_VERTICES = 24
MAX_SCAN_VERTICES = 22


class IndependencePolynomial(tuple):
    """Coefficient tuple; entry ``k`` counts independent sets of size ``k``."""

    def __new__(cls, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return super().__new__(cls, coeffs)

    @property
    def independence_number(self) -> int:
        return len(self) - 1

    def __call__(self, lam):
        return evaluate(self, lam)

    def __repr__(self):
        return f"IndependencePolynomial({list(self)})"


def _add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def _mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _components(adj, mask):
    comps = []
    rest = mask
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def independence_polynomial(g: Graph) -> IndependencePolynomial:
    """P(x, G) by branching on a maximum-degree vertex: P(G) = P(G-v) + x P(G-N[v]).

    Connected components are solved separately and multiplied.  The memo
    table is keyed on the residual vertex mask and lives for one call only.
    """
    adj = g.adj
    memo = {0: [1]}

    def solve(mask):
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comps = _components(adj, mask)
        if len(comps) > 1:
            out = [1]
            for c in comps:
                out = _mul(out, solve(c))
            memo[mask] = out
            return out
        best, best_deg = -1, -1
        for v in bits(mask):
            deg = (adj[v] & mask).bit_count()
            if deg > best_deg:
                best, best_deg = v, deg
        if best_deg == 0:
            out = [1, 1]
        elif best_deg == 1:
            out = [1, 2]  # a single edge
        else:
            without = solve(mask & ~(1 << best))
            with_v = solve(mask & ~(adj[best] | 1 << best))
            out = _add(without, [0] + with_v)
        memo[mask] = out
        return out

    return IndependencePolynomial(solve(g.full))


def evaluate(poly, lam):
    """Horner evaluation; exact for int/Fraction, mpmath for real ``lam``."""
    if isinstance(lam, str):
        lam = Fraction(lam)
    if lam < 0:
        raise DomainError(f"lambda must be non-negative, got {lam}")
    if isinstance(lam, (int, Rational)):
        acc = Fraction(0) if not isinstance(lam, int) else 0
    else:
        lam = mpmath.mpf(lam)
        acc = mpmath.mpf(0)
    for c in reversed(poly):
        acc = acc * lam + c
    return acc


def count_independent_sets(g: Graph) -> int:
    """i(G), the number of independent sets including the empty one."""
    return sum(independence_polynomial(g))


def enumerate_independent_sets(g: Graph) -> Iterator[int]:
    """All independent sets as bitmasks, ascending by mask value."""
    if g.n > MAX_ENUM_VERTICES:
        raise CapacityError(f"enumeration capped at n <= {MAX_ENUM_VERTICES}")
    adj = g.adj
    # ind[s] for s in ascending order: s independent iff s minus its top bit is,
    # and the top vertex has no neighbour below it inside s
    ind = bytearray(1 << g.n)
    ind[0] = 1
    yield 0
    for s in range(1, 1 << g.n):
        top = s.bit_length() - 1
        rest = s ^ (1 << top)
        if ind[rest] and not adj[top] & rest:
            ind[s] = 1
            yield s


def bipartite_table(g: Graph) -> bytearray:
    """``table[s] == 1`` iff G[s] is bipartite, for every subset ``s``."""
    if g.n > MAX_SCAN_VERTICES:
        raise CapacityError(f"subset scan capped at n <= {MAX_SCAN_VERTICES}")
    size = 1 << g.n
    table = bytearray(size)
    for s in range(size):
        top = s.bit_length() - 1
        # non-bipartite is monotone: a superset of an odd cycle stays non-bipartite
        if s and not table[s ^ (1 << top)]:
            continue
        table[s] = is_bipartite(g, s) is not None
    return table


def count_nonbipartite_induced(g: Graph) -> int:
    """Number of vertex subsets S with G[S] non-bipartite."""
    table = bipartite_table(g)
    return len(table) - sum(table)
