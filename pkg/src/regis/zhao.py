"""Size-preserving bijection I(G) x I(G) <-> J(G) and the double-cover inequality.

J(G) is the set of pairs (A, B) of vertex subsets with no edge between A
and B and with G[A | B] bipartite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import CapacityError, ContractError, DomainError
from .graph import Graph, bits, connected_components, double_cover, is_bipartite, \
    is_regular, to_graph6, complete_bipartite
from .indpoly import (IndependencePolynomial, bipartite_table, count_nonbipartite_induced,
                      evaluate, independence_polynomial)

MAX_PAIR_VERTICES = 16
MAX_T_ENUM_VERTICES = 12


def _independent(g: Graph, s: int) -> bool:
    return all(not g.adj[v] & s for v in bits(s))


def _cross_free(g: Graph, a: int, b: int) -> bool:
    return all(not g.adj[v] & b for v in bits(a))


@dataclass(frozen=True)
class PairIJ:
    """Ordered pair of vertex subsets of ``host``."""

    a: int
    b: int
    host: Graph = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.a.bit_count() + self.b.bit_count()

    def on_i_side(self) -> bool:
        return _independent(self.host, self.a) and _independent(self.host, self.b)

    def on_j_side(self) -> bool:
        return (_cross_free(self.host, self.a, self.b)
                and is_bipartite(self.host, self.a | self.b) is not None)


def _cross_free_pairs(g: Graph) -> Iterator[tuple]:
    """Pairs (A, B) with no A-B edge, ordered by (A, B)."""
    adj = g.adj
    full = g.full
    for a in range(1 << g.n):
        nb = 0
        for v in bits(a):
            nb |= adj[v]
        free = full & ~nb
        # ascending submasks of ``free``
        b = 0
        while True:
            yield a, b
            if b == free:
                break
            b = (b - free) & free


def enumerate_J(g: Graph) -> Iterator[PairIJ]:
    if g.n > MAX_PAIR_VERTICES:
        raise CapacityError(f"J(G) enumeration capped at n <= {MAX_PAIR_VERTICES}")
    table = bipartite_table(g)
    for a, b in _cross_free_pairs(g):
        if table[a | b]:
            yield PairIJ(a, b, g)


def zhao_forward(p: PairIJ) -> PairIJ:
    """Map a pair of independent sets to J(G), preserving |A| + |B|.

    Vertices of A & B are isolated in G[A | B] and stay in both sets.  Every
    other component K of G[A | B] is split by A and B along its
    bipartition; K goes wholly to A' when K & A is the class holding min(K),
    otherwise wholly to B'.
    """
    if not p.on_i_side():
        raise ContractError("zhao_forward needs A and B independent")
    g = p.host
    both = p.a & p.b
    a_new = b_new = both
    for comp in connected_components(g, (p.a | p.b) & ~both):
        first = comp & -comp
        a_part = comp & p.a
        if a_part & first:
            a_new |= comp
        else:
            b_new |= comp
    return PairIJ(a_new, b_new, g)


def zhao_backward(p: PairIJ) -> PairIJ:
    """Inverse of :func:`zhao_forward`."""
    if not p.on_j_side():
        raise ContractError("zhao_backward needs a pair in J(G)")
    g = p.host
    both = p.a & p.b
    a_new = b_new = both
    for comp in connected_components(g, (p.a | p.b) & ~both):
        one, two = is_bipartite(g, comp)
        if comp & p.a:
            a_new |= one
            b_new |= two
        else:
            a_new |= two
            b_new |= one
    return PairIJ(a_new, b_new, g)


@dataclass
class ZhaoReport:
    graph6: str
    i_count: int
    j_count: int
    identity_checks: dict
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {"graph6": self.graph6, "i": self.i_count, "J": self.j_count,
                "gf_identity": {str(k): v for k, v in self.identity_checks.items()},
                "failures": self.failures, "holds": self.ok}


def verify_zhao(g: Graph, lambdas=(1,)) -> ZhaoReport:
    """Check bijectivity, size preservation and sum_J lam^size = P(lam, G)^2."""
    from .indpoly import enumerate_independent_sets

    if g.n > MAX_PAIR_VERTICES:
        raise CapacityError(f"verification capped at n <= {MAX_PAIR_VERTICES}")
    failures = []
    ind = list(enumerate_independent_sets(g))
    images = set()
    for a in ind:
        for b in ind:
            src = PairIJ(a, b, g)
            img = zhao_forward(src)
            if img.size != src.size:
                failures.append({"kind": "size", "pair": [a, b], "image": [img.a, img.b]})
            if not img.on_j_side():
                failures.append({"kind": "not_in_J", "pair": [a, b], "image": [img.a, img.b]})
            back = zhao_backward(img)
            if (back.a, back.b) != (a, b):
                failures.append({"kind": "backward_forward", "pair": [a, b]})
            images.add((img.a, img.b))
    if len(images) != len(ind) ** 2:
        failures.append({"kind": "not_injective", "images": len(images), "expected": len(ind) ** 2})

    sizes = Counter()
    j_count = 0
    for q in enumerate_J(g):
        j_count += 1
        sizes[q.size] += 1
        if (q.a, q.b) not in images:
            failures.append({"kind": "not_surjective", "pair": [q.a, q.b]})
        back = zhao_backward(q)
        fwd = zhao_forward(back)
        if (fwd.a, fwd.b) != (q.a, q.b):
            failures.append({"kind": "forward_backward", "pair": [q.a, q.b]})
    if j_count != len(ind) ** 2:
        failures.append({"kind": "cardinality", "J": j_count, "I2": len(ind) ** 2})

    poly = independence_polynomial(g)
    checks = {}
    for lam in lambdas:
        lam = Fraction(lam)
        lhs = sum(c * lam ** k for k, c in sizes.items())
        rhs = evaluate(poly, lam) ** 2
        checks[lam] = lhs == rhs
        if lhs != rhs:
            failures.append({"kind": "gf_identity", "lambda": str(lam),
                             "sum_J": str(lhs), "P2": str(rhs)})
    return ZhaoReport(to_graph6(g), len(ind), j_count, checks, failures)


def t_size_histogram(g: Graph) -> Counter:
    """Sizes |A|+|B| of cross-free pairs whose union is not bipartite."""
    if g.n > MAX_T_ENUM_VERTICES:
        raise CapacityError(f"direct T enumeration capped at n <= {MAX_T_ENUM_VERTICES}")
    table = bipartite_table(g)
    hist = Counter()
    for a, b in _cross_free_pairs(g):
        if not table[a | b]:
            hist[a.bit_count() + b.bit_count()] += 1
    return hist


def _num(x):
    """JSON-safe rendering: ints below 2^53 stay ints, everything else a string."""
    if isinstance(x, int) and abs(x) < 2 ** 53:
        return x
    if isinstance(x, Fraction) and x.denominator == 1 and abs(x) < 2 ** 53:
        return int(x)
    return str(x)


@dataclass
class Theorem2Report:
    graph6: str
    lam: Fraction
    d: int
    n: int
    lhs: Fraction
    T: Fraction
    C: int
    rhs: object  # Fraction when d | n, else mpmath real
    holds: bool
    strict: bool
    t_bound_holds: bool
    t_direct: Optional[Fraction] = None

    def to_dict(self):
        return {"graph6": self.graph6, "lambda": str(self.lam), "lhs": _num(self.lhs),
                "T": _num(self.T), "C": self.C,
                "rhs": _num(self.rhs) if isinstance(self.rhs, (int, Fraction))
                else float(self.rhs),
                "holds": self.holds}


def verify_theorem2(g: Graph, lam=1, cross_check: Optional[bool] = None) -> Theorem2Report:
    """Check P(lam,G)^2 <= P(lam,K_{d,d})^(n/d) - 2C for a d-regular graph.

    The comparison is exact: with Q = P(lam, K_{d,d}) the inequality is
    equivalent to (lhs + 2C)^d <= Q^n.
    """
    import mpmath

    d = is_regular(g)
    if d is None:
        raise ContractError("theorem 2 applies to regular graphs only")
    lam = Fraction(lam)
    if lam < 1:
        raise DomainError(f"theorem 2 needs lambda >= 1, got {lam}")
    n = g.n
    p = evaluate(independence_polynomial(g), lam)
    lhs = p * p
    cover = evaluate(independence_polynomial(double_cover(g)), lam)
    T = cover - lhs
    C = count_nonbipartite_induced(g)
    q = evaluate(independence_polynomial(complete_bipartite(d)), lam)
    if n % d == 0:
        rhs = q ** (n // d) - 2 * C
    else:
        with mpmath.workdps(40):
            rhs = mpmath.power(mpmath.mpf(q.numerator) / q.denominator, mpmath.mpf(n) / d) - 2 * C
    left, right = (lhs + 2 * C) ** d, q ** n
    t_direct = None
    if cross_check is None:
        cross_check = n <= MAX_T_ENUM_VERTICES
    if cross_check:
        hist = t_size_histogram(g)
        t_direct = sum(c * lam ** k for k, c in hist.items())
        if t_direct != T:
            raise AssertionError(f"T mismatch: subtraction {T}, enumeration {t_direct}")
    return Theorem2Report(to_graph6(g), lam, d, n, lhs, T, C, rhs,
                          holds=left <= right, strict=left < right,
                          t_bound_holds=T >= 2 * C, t_direct=t_direct)
