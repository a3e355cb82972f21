import random

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from farey_lab.graph_core import Graph

settings.register_profile("repo", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges)
    return g


def random_graph(rng: random.Random, n: int, p: float, prefix: str = "v") -> Graph:
    V = [f"{prefix}{i:02d}" for i in range(n)]
    return Graph(V, [(V[i], V[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def two_triangles():
    return Graph("abcdef", [("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")])
