"""Census of d-regular graphs by number of independent sets, with a JSON-lines cache."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import mpmath

from . import __version__
from .graph import Graph, complete_bipartite, connected_components, disjoint_union, \
    from_graph6, induced, is_bipartite, is_connected, to_graph6
from .indpoly import count_independent_sets
from .regular import RegularClassSpec, canonical_form, canonical_graph, enumerate_regular, \
    is_isomorphic

log = logging.getLogger(__name__)

ENGINE_VERSION = __version__


def alon_base(d: int) -> int:
    """i(K_{d,d}) = 2^(d+1) - 1."""
    return 2 ** (d + 1) - 1


def hypothesis_holds(i: int, n: int, d: int) -> bool:
    """i <= (2^(d+1)-1)^(n/2d), compared exactly as i^(2d) <= base^n."""
    return i ** (2 * d) <= alon_base(d) ** n


def attains_bound(i: int, n: int, d: int) -> bool:
    return i ** (2 * d) == alon_base(d) ** n


def normalized_ratio(i: int, n: int, d: int):
    """i^(2d/n) / (2^(d+1) - 1); equals 1 exactly on the bound."""
    with mpmath.workdps(40):
        return mpmath.power(i, mpmath.mpf(2 * d) / n) / alon_base(d)


def is_alon(g: Graph, d: int) -> bool:
    """Every component is K_{d,d}."""
    kdd = complete_bipartite(d)
    for comp in connected_components(g):
        if comp.bit_count() != 2 * d or not is_isomorphic(induced(g, comp), kdd):
            return False
    return True


@dataclass
class CensusRecord:
    graph6: str
    n: int
    d: int
    i_count: str
    ratio: float
    is_alon: bool
    connected: bool
    bipartite: bool

    @property
    def i(self) -> int:
        return int(self.i_count)

    def to_dict(self):
        return asdict(self)


def make_record(g: Graph, d: int, i: Optional[int] = None) -> CensusRecord:
    if i is None:
        i = count_independent_sets(g)
    return CensusRecord(
        graph6=to_graph6(g), n=g.n, d=d, i_count=str(i),
        ratio=float(normalized_ratio(i, g.n, d)), is_alon=is_alon(g, d),
        connected=is_connected(g), bipartite=is_bipartite(g) is not None,
    )


def _partitions(n, parts, smallest=None):
    """Partitions of n into non-increasing parts drawn from ``parts``."""
    if n == 0:
        yield []
        return
    for p in sorted(parts, reverse=True):
        if p <= n and (smallest is None or p <= smallest):
            for rest in _partitions(n - p, parts, p):
                yield [p] + rest


def _multisets(items, k, start=0):
    if k == 0:
        yield []
        return
    for j in range(start, len(items)):
        for rest in _multisets(items, k - 1, j):
            yield [items[j]] + rest


def composed_graphs(n: int, d: int, counter=count_independent_sets):
    """All d-regular graphs on n vertices as (graph, i) pairs, built from connected pieces.

    i is the product of the component counts.
    """
    sizes = [m for m in range(d + 1, n + 1) if (m * d) % 2 == 0]
    pieces = {}
    for m in sizes:
        gs = list(enumerate_regular(RegularClassSpec(m, d, connected_only=True)))
        pieces[m] = [(g, counter(g)) for g in gs]
    seen = set()
    out = []
    for part in _partitions(n, [m for m in sizes if pieces[m]]):
        groups = {}
        for m in part:
            groups[m] = groups.get(m, 0) + 1
        choices = [[]]
        for m, k in sorted(groups.items(), reverse=True):
            choices = [c + ms for c in choices for ms in _multisets(pieces[m], k)]
        for combo in choices:
            g = disjoint_union(*[c[0] for c in combo])
            i = 1
            for _, ci in combo:
                i *= ci
            g = canonical_graph(g)
            key = to_graph6(g)
            if key not in seen:
                seen.add(key)
                out.append((g, i))
    return out


class CensusCache:
    """Append-only JSON-lines store of census records keyed by (n, d, flags, engine)."""

    def __init__(self, directory: Optional[os.PathLike] = None):
        if directory is None:
            directory = os.environ.get("REGIS_CACHE_DIR") or Path.home() / ".cache" / "regis"
        self.dir = Path(directory)
        self.path = self.dir / "census.jsonl"

    @staticmethod
    def key(n, d, all_graphs):
        return f"n={n};d={d};scope={'all' if all_graphs else 'connected'};engine={ENGINE_VERSION}"

    def load(self, key):
        """Return ``(records by graph6, complete count or None)``."""
        records, complete = {}, None
        if not self.path.exists():
            return records, complete
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    if obj["key"] != key:
                        continue
                    if obj["type"] == "complete":
                        complete = int(obj["count"])
                    else:
                        rec = CensusRecord(**obj["record"])
                        int(rec.i_count)
                        records[rec.graph6] = rec
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("ignoring corrupt cache line %d in %s: %s", lineno, self.path, exc)
        return records, complete

    def store(self, key, records):
        self.dir.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            # a previous partial line would swallow our first record
            if fh.tell() and not self._ends_with_newline():
                fh.write("\n")
            for rec in records:
                fh.write(json.dumps({"key": key, "type": "record", "record": rec.to_dict()}) + "\n")
            fh.write(json.dumps({"key": key, "type": "complete", "count": len(records)}) + "\n")

    def _ends_with_newline(self):
        with open(self.path, "rb") as fh:
            fh.seek(-1, os.SEEK_END)
            return fh.read(1) == b"\n"


def _count_g6(g6):
    return count_independent_sets(from_graph6(g6))


def sort_records(records):
    return sorted(records, key=lambda r: (-r.i, canonical_form(from_graph6(r.graph6))))


def run_census(n: int, d: int, all_graphs: bool = False, jobs: int = 1,
               cache: Optional[CensusCache] = None) -> list:
    """One record per isomorphism class, sorted by i descending then canonical form."""
    key = CensusCache.key(n, d, all_graphs)
    cached, complete = cache.load(key) if cache else ({}, None)
    if complete is not None and len(cached) == complete:
        return sort_records(cached.values())

    if all_graphs:
        pairs = composed_graphs(n, d)
        graphs = [g for g, _ in pairs]
        known = {to_graph6(g): i for g, i in pairs}
    else:
        graphs = list(enumerate_regular(RegularClassSpec(n, d, connected_only=True)))
        known = {}
    g6s = [to_graph6(g) for g in graphs]
    for g6, rec in cached.items():
        known.setdefault(g6, rec.i)
    todo = [g6 for g6 in g6s if g6 not in known]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(_count_g6, todo, chunksize=8))
    else:
        counts = [_count_g6(g6) for g6 in todo]
    known.update(zip(todo, counts))
    records = sort_records(make_record(g, d, known[g6]) for g, g6 in zip(graphs, g6s))
    if cache is not None:
        cache.store(key, records)
    return records


def census_verdict(records, n: int, d: int) -> dict:
    """Maximiser(s), uniqueness, runner-up gap and the non-Alon ratio envelope."""
    from .entropy import theorem5_constants

    out = {"n": n, "d": d, "classes": len(records)}
    if not records:
        out["maximizers"] = []
        return out
    top = records[0].i
    maxi = [r for r in records if r.i == top]
    out["maximizers"] = [r.graph6 for r in maxi]
    out["max_i"] = str(top)
    out["unique"] = len(maxi) == 1
    out["bound_attained"] = attains_bound(top, n, d)
    out["hypothesis_holds"] = all(hypothesis_holds(r.i, n, d) for r in records)
    out["equality_only_at_alon"] = all(attains_bound(r.i, n, d) == r.is_alon for r in records)
    if n % (2 * d) == 0:
        out["alon_unique_maximizer"] = out["unique"] and maxi[0].is_alon
    rest = [r for r in records if r.i < top]
    if rest:
        out["runner_up"] = rest[0].graph6
        out["runner_up_gap"] = str(top - rest[0].i)
    non_alon = [r for r in records if not r.is_alon]
    if non_alon:
        out["max_ratio_non_alon"] = max(r.ratio for r in non_alon)
    if d >= 2 and d <= 10:
        rep = theorem5_constants(d)
        out["D_uniq"] = float(rep.D_uniq)
        # i <= D_uniq * base^(n/2d) for every non-Alon graph
        with mpmath.workdps(50):
            limit = rep.D_uniq * mpmath.power(alon_base(d), mpmath.mpf(n) / (2 * d))
            out["uniqueness_bound_holds"] = all(r.i <= limit for r in non_alon)
    return out
