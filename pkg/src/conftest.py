"""Shared fixtures and hypothesis strategies for the flownet test modules."""

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flownet.gadgets import CnfFormula
from flownet.netcore import Flow, Network

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


@st.composite
def networks(draw, max_vertices: int = 7, max_arcs: int = 10, max_cap: int = 4, acyclic: bool = False, unit: bool = False):
    """Random multigraph networks; s = 0 and t = the last vertex."""
    n = draw(st.integers(min_value=2, max_value=max_vertices))
    m = draw(st.integers(min_value=0, max_value=max_arcs))
    triples = []
    for _ in range(m):
        u = draw(st.integers(min_value=0, max_value=n - 1))
        v = draw(st.integers(min_value=0, max_value=n - 1).filter(lambda w, u=u: w != u))
        if acyclic and u > v:
            u, v = v, u
        cap = 1 if unit else draw(st.integers(min_value=1, max_value=max_cap))
        triples.append((u, v, cap))
    return Network.build(n, triples, 0, n - 1)


@st.composite
def acyclic_networks(draw, max_vertices: int = 6, max_arcs: int = 9, max_cap: int = 4):
    return draw(networks(max_vertices=max_vertices, max_arcs=max_arcs, max_cap=max_cap, acyclic=True))


@st.composite
def unit_networks(draw, max_vertices: int = 7, max_arcs: int = 10):
    return draw(networks(max_vertices=max_vertices, max_arcs=max_arcs, unit=True))


@st.composite
def circulating_flows(draw, max_vertices: int = 7, max_paths: int = 2, max_cycles: int = 3, max_value: int = 4):
    """
    Flows laid out as s→t paths plus cycles, one fresh arc per step, each arc
    saturated. Cycles may pass through s or t.
    """
    n = draw(st.integers(min_value=3, max_value=max_vertices))
    s, t = 0, n - 1
    inner = list(range(1, n - 1))
    triples = []

    def lay(walk, value):
        for u, v in zip(walk, walk[1:]):
            triples.append((u, v, value))

    for _ in range(draw(st.integers(min_value=0, max_value=max_paths))):
        middle = draw(st.lists(st.sampled_from(inner), unique=True, max_size=len(inner)))
        lay([s] + middle + [t], draw(st.integers(min_value=1, max_value=max_value)))
    for _ in range(draw(st.integers(min_value=1, max_value=max_cycles))):
        ring = draw(st.lists(st.integers(min_value=0, max_value=n - 1), unique=True, min_size=2, max_size=n))
        lay(ring + ring[:1], draw(st.integers(min_value=1, max_value=max_value)))
    net = Network.build(n, triples, s, t)
    return Flow(net, {i: c for i, (_, _, c) in enumerate(triples)})


@st.composite
def cnf_formulas(draw, max_variables: int = 3, max_clauses: int = 3):
    n = draw(st.integers(min_value=1, max_value=max_variables))
    m = draw(st.integers(min_value=1, max_value=max_clauses))
    literal = st.integers(min_value=1, max_value=n).flatmap(lambda v: st.sampled_from((v, -v)))
    clauses = tuple(tuple(draw(literal) for _ in range(3)) for _ in range(m))
    return CnfFormula(n, clauses)


@pytest.fixture
def single_arc():
    """s→t with capacity 5."""
    return Network.build(2, [(0, 1, 5)], 0, 1)


@pytest.fixture
def parallel_31():
    """Two parallel s→t arcs with capacities 3 and 1."""
    return Network.build(2, [(0, 1, 3), (0, 1, 1)], 0, 1)


@pytest.fixture
def diamond():
    """s→a→t and s→b→t with unit capacities plus the chord a→b."""
    return Network.build(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (1, 2, 1)], 0, 3)
