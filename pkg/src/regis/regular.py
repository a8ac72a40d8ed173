"""Canonical forms and exhaustive generation of d-regular graphs.

Canonical labelling uses equitable-partition refinement plus individualisation
over the full search tree; the canonical form is the lexicographically least
relabelled adjacency found at any leaf.  Swapping two twin vertices is an
automorphism fixing the current partition, so only one twin per class is
branched on.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .errors import CapacityError, ParityError, ParseError, SizeError, ValidationError
from .graph import Graph, bits, connected_components, from_graph6, is_connected, \
    is_regular, to_graph6

MAX_CANON_VERTICES = 16
# practical generation caps per degree
GENERATION_CAPS = {1: 16, 2: 16, 3: 14, 4: 11, 5: 10, 6: 10}


def _refine(adj, cells, splitters):
    """Refine an ordered partition (list of bitmasks) to the coarsest equitable one."""
    stack = list(splitters)
    while stack:
        if len(cells) == len(adj):
            break
        w = stack.pop()
        new_cells = []
        for x in cells:
            if x & (x - 1) == 0:
                new_cells.append(x)
                continue
            groups = {}
            for v in bits(x):
                k = (adj[v] & w).bit_count()
                groups[k] = groups.get(k, 0) | 1 << v
            if len(groups) == 1:
                new_cells.append(x)
                continue
            for k in sorted(groups):
                new_cells.append(groups[k])
                stack.append(groups[k])
        cells = new_cells
    return cells


def _certificate(adj, order):
    pos = [0] * len(adj)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        r = 0
        for u in bits(adj[v]):
            r |= 1 << pos[u]
        rows.append(r)
    return tuple(rows)


def canonical_labeling(g: Graph):
    """Return ``(order, rows)``: ``order[i]`` is the vertex placed at position i."""
    if g.n > MAX_CANON_VERTICES:
        raise CapacityError(f"canonical form capped at n <= {MAX_CANON_VERTICES}")
    adj = g.adj
    n = g.n
    if n == 0:
        return [], ()
    # degree-sorted start partition, then refine
    by_deg = {}
    for v in range(n):
        by_deg.setdefault(adj[v].bit_count(), []).append(v)
    cells = [sum(1 << v for v in by_deg[k]) for k in sorted(by_deg)]
    cells = _refine(adj, cells, cells)

    best = [None, None]

    def search(cells):
        if len(cells) == n:
            order = [c.bit_length() - 1 for c in cells]
            cert = _certificate(adj, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        idx = min((i for i, c in enumerate(cells) if c & (c - 1)),
                  key=lambda i: (cells[i].bit_count(), i))
        target = cells[idx]
        tried_open = set()
        tried_closed = set()
        for v in bits(target):
            op, cl = adj[v], adj[v] | 1 << v
            if op in tried_open or cl in tried_closed:
                continue
            tried_open.add(op)
            tried_closed.add(cl)
            single = 1 << v
            nxt = cells[:idx] + [single, target ^ single] + cells[idx + 1:]
            search(_refine(adj, nxt, [single]))

    search(cells)
    return best[1], best[0]


def canonical_graph(g: Graph) -> Graph:
    order, rows = canonical_labeling(g)
    return Graph(g.n, rows)


def canonical_form(g: Graph) -> bytes:
    """Relabelling-invariant byte string; equal iff the graphs are isomorphic."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labeling(g)[1] == canonical_labeling(h)[1]


@dataclass(frozen=True)
class RegularClassSpec:
    n: int
    d: int
    connected_only: bool = True

    def __post_init__(self):
        if self.n < 1 or self.d < 0:
            raise SizeError(f"invalid class n={self.n}, d={self.d}")
        if (self.n * self.d) % 2:
            raise ParityError(f"n*d = {self.n * self.d} is odd: no {self.d}-regular graph on {self.n} vertices")
        if self.d >= self.n:
            raise SizeError(f"degree {self.d} must be below n={self.n}")

    def check_caps(self):
        cap = GENERATION_CAPS.get(self.d, 10)
        if self.n > min(cap, MAX_CANON_VERTICES):
            raise CapacityError(f"generation of {self.d}-regular graphs capped at n <= {cap}")

    def matches(self, g: Graph) -> bool:
        return (g.n == self.n and (is_regular(g) == self.d or (self.d == 0 and g.num_edges() == 0))
                and (not self.connected_only or is_connected(g)))


def _feasible(adj, n, d, connected_only):
    unsat = 0
    for v in range(n):
        if adj[v].bit_count() < d:
            unsat |= 1 << v
    for v in bits(unsat):
        room = (unsat & ~adj[v] & ~(1 << v)).bit_count()
        if d - adj[v].bit_count() > room:
            return False
    if connected_only and unsat:
        # a saturated component can never grow
        g = Graph(n, tuple(adj))
        for comp in connected_components(g):
            if not comp & unsat:
                return False
    return True


def _expand(g: Graph, d: int, connected_only: bool) -> Iterator[tuple]:
    adj = list(g.adj)
    n = g.n
    deg = [r.bit_count() for r in adj]
    unsat = [v for v in range(n) if deg[v] < d]
    v = max(unsat, key=lambda u: (deg[u], -u))
    need = d - deg[v]
    free = [w for w in unsat if w != v and not adj[v] >> w & 1]
    iso = [w for w in free if deg[w] == 0]
    touched = [w for w in free if deg[w] > 0]
    for j in range(min(need, len(iso)) + 1):
        for combo in combinations(touched, need - j):
            new = adj[:]
            for w in list(combo) + iso[:j]:
                new[v] |= 1 << w
                new[w] |= 1 << v
            if _feasible(new, n, d, connected_only):
                yield tuple(new)


def enumerate_regular(spec: RegularClassSpec) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, ordered by canonical form.

    Generation saturates one vertex at a time and collapses isomorphic partial
    graphs: every d-regular completion of a partial graph depends only on its
    isomorphism class, so keeping one representative per class loses nothing.
    """
    spec.check_caps()
    n, d = spec.n, spec.d
    if d == 0:
        if not spec.connected_only or n == 1:
            yield Graph.empty(n)
        return
    total_edges = n * d // 2
    levels = {0: {canonical_form(Graph.empty(n)): canonical_graph(Graph.empty(n))}}
    done = {}
    for m in range(total_edges + 1):
        layer = levels.pop(m, {})
        for key in sorted(layer):
            g = layer[key]
            if m == total_edges:
                done[key] = g
                continue
            for rows in _expand(g, d, spec.connected_only):
                child = Graph(n, rows)
                canon = canonical_graph(child)
                ck = to_graph6(canon).encode("ascii")
                cm = child.num_edges()
                bucket = levels.setdefault(cm, {})
                if ck not in bucket:
                    bucket[ck] = canon
    for key in sorted(done):
        g = done[key]
        if spec.connected_only and not is_connected(g):
            continue
        yield g


def ingest_graph6_stream(lines: Iterable[str], spec: Optional[RegularClassSpec] = None) -> Iterator[Graph]:
    """Parse graph6 lines in order; blank lines are skipped."""
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            g = from_graph6(text)
        except ParseError as exc:
            raise ParseError(exc.reason, offset=exc.offset, line=lineno) from None
        if spec is not None and not spec.matches(g):
            raise ValidationError(f"line {lineno}: graph {text} is not in class n={spec.n}, d={spec.d}"
                                  + (", connected" if spec.connected_only else ""))
        yield g
