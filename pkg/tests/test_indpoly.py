from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from regis.errors import CapacityError, DomainError
from regis.graph import (Graph, alon_graph, complete, complete_bipartite, cycle,
                         disjoint_union, prism)
from regis.indpoly import (count_independent_sets, count_nonbipartite_induced,
                           enumerate_independent_sets, evaluate, independence_polynomial)

from conftest import brute_independent_sets, brute_poly, has_odd_cycle, random_graph


def test_c4_polynomial():
    assert brute_poly(cycle(4)) == [1, 4, 2]
    assert list(independence_polynomial(cycle(4))) == [1, 4, 2]


def test_k33_total():
    assert count_independent_sets(complete_bipartite(3)) == 15
    assert list(independence_polynomial(complete_bipartite(3))) == [1, 6, 6, 2]


def test_empty_graph():
    assert list(independence_polynomial(Graph.empty(0))) == [1]
    assert count_independent_sets(Graph.empty(0)) == 1


def test_counts():
    assert count_independent_sets(complete(2)) == 3
    assert len(brute_independent_sets(cycle(6))) == 18
    assert count_independent_sets(cycle(6)) == 18
    assert count_independent_sets(alon_graph(3, 2)) == 225


def test_evaluate():
    assert evaluate([1, 4, 2], 1) == 7
    assert evaluate(independence_polynomial(complete_bipartite(2)), 1) == 7
    assert evaluate(independence_polynomial(prism()), 0) == 1
    assert evaluate([1, 4, 2], Fraction(1, 2)) == Fraction(7, 2)
    assert evaluate([1, 4, 2], "1/2") == Fraction(7, 2)
    assert abs(evaluate([1, 4, 2], 0.5) - mpmath.mpf(3.5)) < 1e-30
    with pytest.raises(DomainError):
        evaluate([1, 4, 2], -1)


def test_enumerate_independent_sets():
    assert list(enumerate_independent_sets(complete(2))) == [0, 1, 2]
    c4 = list(enumerate_independent_sets(cycle(4)))
    assert len(c4) == 7 and 0b0101 in c4 and 0b1010 in c4
    assert list(enumerate_independent_sets(complete(3))) == [0, 1, 2, 4]
    with pytest.raises(CapacityError):
        next(enumerate_independent_sets(Graph.empty(25)))


def test_enumeration_matches_brute_force(rng):
    for _ in range(50):
        g = random_graph(rng, rng.randint(0, 11))
        assert list(enumerate_independent_sets(g)) == brute_independent_sets(g)


def test_nonbipartite_counts():
    assert count_nonbipartite_induced(cycle(3)) == 1
    assert count_nonbipartite_induced(cycle(4)) == 0
    c5 = cycle(5)
    assert sum(has_odd_cycle(c5, s) for s in range(32)) == 1
    assert count_nonbipartite_induced(c5) == 1


def test_nonbipartite_matches_oracle(rng):
    for _ in range(15):
        g = random_graph(rng, rng.randint(1, 8))
        want = sum(has_odd_cycle(g, s) for s in range(1 << g.n))
        assert count_nonbipartite_induced(g) == want


def test_polynomial_matches_brute_force(rng):
    for _ in range(150):
        g = random_graph(rng, rng.randint(0, 12))
        poly = independence_polynomial(g)
        assert list(poly) == brute_poly(g)
        assert poly[0] == 1
        assert g.n == 0 or poly[1] == g.n
        assert poly[-1] > 0
        assert evaluate(poly, 1) == sum(poly)


def test_multiplicative_over_components(rng):
    for _ in range(20):
        parts = [random_graph(rng, rng.randint(1, 7)) for _ in range(rng.randint(2, 4))]
        whole = disjoint_union(*parts)
        prod = 1
        for p in parts:
            prod *= count_independent_sets(p)
        assert count_independent_sets(whole) == prod


def test_lucas_recurrence():
    vals = {n: count_independent_sets(cycle(n)) for n in range(3, 21)}
    for n in range(5, 21):
        assert vals[n] == vals[n - 1] + vals[n - 2]


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("lam", [1, 2])
def test_kdd_closed_form(d, lam):
    assert evaluate(independence_polynomial(complete_bipartite(d)), lam) == 2 * (1 + lam) ** d - 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.randoms(use_true_random=False))
def test_polynomial_property(n, r):
    g = random_graph(r, n)
    assert list(independence_polynomial(g)) == brute_poly(g)


def test_larger_graph_runs():
    # 40-vertex circular ladder; transfer-matrix value for C_20 x K_2
    g = Graph.from_edges(40, [(i, (i + 1) % 20) for i in range(20)]
                         + [(20 + i, 20 + (i + 1) % 20) for i in range(20)]
                         + [(i, 20 + i) for i in range(20)])
    # trace of [[1,1,1],[1,0,1],[1,1,0]]^20: states empty / top / bottom per rung
    import numpy as np
    m = np.array([[1, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=object)
    acc = np.identity(3, dtype=object)
    for _ in range(20):
        acc = acc.dot(m)
    assert count_independent_sets(g) == sum(acc[i, i] for i in range(3))
