"""Bitset graphs on at most 64 vertices, special constructors and graph6 I/O.

A vertex set is a plain ``int`` bitmask; bit ``v`` set means vertex ``v`` is
in the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ParseError, SizeError

MAX_VERTICES = 64
MAX_GRAPH6_VERTICES = 62


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbourhood bitmask of ``v``."""

    n: int
    adj: tuple

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise SizeError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = self.full
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour >= n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if not 0 <= n <= MAX_VERTICES:
            raise SizeError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def full(self) -> int:
        """Bitmask of all vertices."""
        return (1 << self.n) - 1

    def edges(self) -> list:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list:
        return [popcount(r) for r in self.adj]

    def neighbors(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, tuple(adj))

    def check_vertex_set(self, s: int) -> None:
        if s < 0 or s & ~self.full:
            raise ValueError(f"vertex set {s:#x} not contained in V(G) for n={self.n}")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()})"


def complete_bipartite(d: int) -> Graph:
    """K_{d,d} with parts {0..d-1} and {d..2d-1}."""
    if not 1 <= d <= 32:
        raise SizeError(f"K_{{d,d}} needs 1 <= d <= 32, got {d}")
    left = (1 << d) - 1
    right = left << d
    return Graph(2 * d, tuple([right] * d + [left] * d))


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    if n > MAX_VERTICES:
        raise SizeError(f"union has {n} vertices, limit is {MAX_VERTICES}")
    adj = []
    offset = 0
    for g in graphs:
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(n, tuple(adj))


def alon_graph(d: int, k: int) -> Graph:
    """Disjoint union of ``k`` copies of K_{d,d}."""
    if d < 1 or k < 1:
        raise SizeError("alon_graph needs d >= 1 and k >= 1")
    if 2 * d * k > MAX_VERTICES:
        raise SizeError(f"2dk = {2 * d * k} exceeds {MAX_VERTICES}")
    return disjoint_union(*[complete_bipartite(d)] * k)


def cycle(n: int) -> Graph:
    if not 3 <= n <= MAX_VERTICES:
        raise SizeError(f"cycle length {n} outside 3..{MAX_VERTICES}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def prism(k: int = 3) -> Graph:
    """Circular ladder C_k x K_2 (k=3 gives the triangular prism)."""
    edges = []
    for i in range(k):
        j = (i + 1) % k
        edges += [(i, j), (k + i, k + j), (i, k + i)]
    return Graph.from_edges(2 * k, edges)


def induced(g: Graph, s: int) -> Graph:
    """Subgraph induced by ``s``, relabelled in increasing order of original index."""
    g.check_vertex_set(s)
    verts = list(bits(s))
    index = {v: i for i, v in enumerate(verts)}
    adj = tuple(mask_of(index[u] for u in bits(g.adj[v] & s)) for v in verts)
    return Graph(len(verts), adj)


def connected_components(g: Graph, s: Optional[int] = None) -> list:
    """Components of G[s] as bitmasks, ordered by minimum vertex."""
    if s is None:
        s = g.full
    g.check_vertex_set(s)
    comps = []
    rest = s
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def is_bipartite(g: Graph, s: Optional[int] = None) -> Optional[tuple]:
    """2-colouring of G[s] or ``None`` if G[s] has an odd cycle.

    In every component the minimum-index vertex lands in the first class.
    """
    if s is None:
        s = g.full
    g.check_vertex_set(s)
    one = two = 0
    for comp in connected_components(g, s):
        side_a = frontier = comp & -comp
        side_b = 0
        seen = side_a
        depth = 0
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= comp
            # an edge back into the current layer's colour class means an odd cycle
            own = side_a if depth % 2 == 0 else side_b
            if nxt & own:
                return None
            nxt &= ~seen
            if depth % 2 == 0:
                side_b |= nxt
            else:
                side_a |= nxt
            seen |= nxt
            frontier = nxt
            depth += 1
        one |= side_a
        two |= side_b
    return one, two


def double_cover(g: Graph) -> Graph:
    """Bipartite double cover G x K_2; vertex (v, s) has index v + s*n."""
    n = g.n
    if 2 * n > MAX_VERTICES:
        raise SizeError(f"double cover of n={n} exceeds {MAX_VERTICES} vertices")
    adj = [row << n for row in g.adj] + list(g.adj)
    return Graph(2 * n, tuple(adj))


def is_regular(g: Graph) -> Optional[int]:
    if g.n == 0:
        return None
    degs = set(g.degrees())
    return degs.pop() if len(degs) == 1 else None


def neighbor_witness(g: Graph, v: int) -> Optional[tuple]:
    """Least pair u < w of neighbours of ``v`` whose neighbourhoods differ."""
    nbrs = list(bits(g.neighbors(v)))
    for i, u in enumerate(nbrs):
        for w in nbrs[i + 1:]:
            if g.adj[u] != g.adj[w]:
                return u, w
    return None


def to_graph6(g: Graph) -> str:
    n = g.n
    if n > MAX_GRAPH6_VERTICES:
        raise SizeError(f"graph6 short form supports n <= {MAX_GRAPH6_VERTICES}")
    out = [chr(63 + n)]
    acc = nbits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[10:]
        base = 10
    else:
        base = 0
    if not s:
        raise ParseError("empty graph6 string", offset=base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", offset=base + k)
    n = ord(s[0]) - 63
    if n == 63:
        raise ParseError("long-form graph6 header (n > 62) unsupported", offset=base)
    nbits = n * (n - 1) // 2
    want = (nbits + 5) // 6
    if len(s) - 1 != want:
        raise ParseError(f"expected {want} data bytes for n={n}, got {len(s) - 1}",
                         offset=base + min(len(s), 1 + want))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (ord(s[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise ParseError("non-zero padding bits", offset=base + len(s) - 1)
    return Graph(n, tuple(adj))
