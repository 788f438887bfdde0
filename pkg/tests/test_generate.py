import pytest
from hypothesis import given
from hypothesis import strategies as st

from f1rep.fixtures import ACYCLIC_TRIANGLE, TWO_LOOPS, fixture_c
from f1rep.generate import cyclic_lift, random_connected_winding, random_winding
from f1rep.winding import is_indecomposable, validate_winding


def test_density_zero_has_no_arrows():
    assert random_winding(TWO_LOOPS, 5, 0.0, seed=1).n_arrows == 0


def test_density_one_gives_bijections():
    w = random_winding(TWO_LOOPS, 5, 1.0, seed=2)
    assert w.n_arrows == 10
    for alpha in ("blue", "red"):
        arrows = [a for a in w.total.arrows if w.arrow_color[a.id] == alpha]
        assert sorted(a.source for a in arrows) == sorted(a.target for a in arrows) == sorted(w.total.vertices)


def test_seed_determinism():
    assert random_winding(ACYCLIC_TRIANGLE, 4, 0.5, 9) == random_winding(ACYCLIC_TRIANGLE, 4, 0.5, 9)
    assert random_connected_winding(TWO_LOOPS, 40, 9) == random_connected_winding(TWO_LOOPS, 40, 9)


def test_per_vertex_sizes():
    w = random_winding(ACYCLIC_TRIANGLE, {"1": 0, "2": 3, "3": 1}, 1.0, 0)
    assert [len(f) for f in w.fibers] == [0, 3, 1]
    assert w.n_arrows == 1  # only y has non-empty fibres on both ends
    with pytest.raises(ValueError):
        random_winding(ACYCLIC_TRIANGLE, [1, 2], 0.5, 0)
    with pytest.raises(ValueError):
        random_winding(TWO_LOOPS, 3, 1.5, 0)


def test_expected_matching_size():
    sizes = [random_winding(TWO_LOOPS, 10, 0.3, s).n_arrows for s in range(300)]
    mean = sum(sizes) / len(sizes)
    assert abs(mean - 2 * 10 * 0.3) < 0.5


@given(st.sampled_from([TWO_LOOPS, ACYCLIC_TRIANGLE]), st.integers(0, 8), st.floats(0, 1), st.integers(0, 2**32))
def test_random_windings_are_valid(base, n, density, seed):
    assert validate_winding(random_winding(base, n, density, seed)).ok


@given(st.integers(0, 60), st.integers(0, 2**32))
def test_connected_generator(m, seed):
    w = random_connected_winding(TWO_LOOPS, m, seed)
    assert w.n_arrows == m
    assert validate_winding(w).ok and is_indecomposable(w)


def test_connected_generator_limits():
    with pytest.raises(ValueError):
        random_connected_winding(TWO_LOOPS, 10, 0, n_vertices=3)
    with pytest.raises(ValueError):
        random_connected_winding(ACYCLIC_TRIANGLE, 3, 0)


def test_cyclic_lift():
    lift = cyclic_lift(fixture_c(), 2, {"c": 1})
    assert lift.n_vertices == 4 and lift.n_arrows == 6
    assert validate_winding(lift).ok and is_indecomposable(lift)
    assert not is_indecomposable(cyclic_lift(fixture_c(), 2))
    with pytest.raises(ValueError):
        cyclic_lift(fixture_c(), 0)
