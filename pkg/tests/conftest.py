import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from f1rep import kernels
from f1rep.fixtures import ACYCLIC_TRIANGLE, TWO_LOOPS
from f1rep.generate import random_connected_winding
from f1rep.winding import Winding

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(params=kernels.backends())
def backend(request):
    """Run the test once per available kernel backend."""
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@st.composite
def windings(draw, base=None, max_per_vertex=4, min_per_vertex=0):
    """Random winding: a partial matching per base arrow between fibres."""
    if base is None:
        base = draw(st.sampled_from([TWO_LOOPS, ACYCLIC_TRIANGLE]))
    fibres = {}
    vertices = []
    for i in base.vertices:
        n = draw(st.integers(min_per_vertex, max_per_vertex))
        fibres[i] = [f"{i}.{k}" for k in range(n)]
        vertices += [(x, i) for x in fibres[i]]
    arrows = []
    for alpha in base.arrows:
        src, tgt = fibres[alpha.source], fibres[alpha.target]
        k = draw(st.integers(0, min(len(src), len(tgt))))
        s = draw(st.permutations(src))[:k]
        t = draw(st.permutations(tgt))[:k]
        arrows += [(f"{alpha.id}{n}", x, y, alpha.id) for n, (x, y) in enumerate(zip(s, t))]
    return Winding.build(base, vertices, arrows)


@st.composite
def winding_pairs(draw, max_per_vertex=4):
    base = draw(st.sampled_from([TWO_LOOPS, ACYCLIC_TRIANGLE]))
    return draw(windings(base, max_per_vertex)), draw(windings(base, max_per_vertex))


@st.composite
def connected_windings(draw, max_arrows=12):
    """Connected windings over the 2-loop quiver, built from a random spanning tree."""
    m = draw(st.integers(0, max_arrows))
    n = draw(st.integers(max(1, (m + 1) // 2), m + 1))
    return random_connected_winding(TWO_LOOPS, m, seed=draw(st.integers(0, 2**32)), n_vertices=n)
