"""Shared independent oracles: plain subset scans and networkx."""

import itertools
import random

import networkx as nx
import pytest

from regis.graph import Graph


def brute_independent_sets(g):
    """Every subset checked edge by edge."""
    edges = g.edges()
    out = []
    for s in range(1 << g.n):
        if all(not (s >> u & 1 and s >> v & 1) for u, v in edges):
            out.append(s)
    return out


def brute_poly(g):
    coeffs = [0] * (g.n + 1)
    for s in brute_independent_sets(g):
        coeffs[bin(s).count("1")] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def to_nx(g, s=None):
    h = nx.Graph()
    verts = [v for v in range(g.n) if s is None or s >> v & 1]
    h.add_nodes_from(verts)
    h.add_edges_from((u, v) for u, v in g.edges() if u in h and v in h)
    return h


def has_odd_cycle(g, s):
    return not nx.is_bipartite(to_nx(g, s))


def random_graph(rng, n, p=None):
    if p is None:
        p = rng.random()
    return Graph.from_edges(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p])


def all_labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for m in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if m >> k & 1])


@pytest.fixture
def rng():
    return random.Random(20151)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("REGIS_CACHE_DIR", str(tmp_path / "cache"))


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and report.when == "call" \
            or ("test_acceptance.py::test_criterion_" in report.nodeid and report.when == "setup"
                and report.failed):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE.append((name, report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'}  {detail}")
