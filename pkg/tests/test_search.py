import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramseycert.clique import Undecided
from ramseycert.core import CYCLIC, LINEAR, ColoringError, DistanceColoring
from ramseycert.search import SearchConfig, brute_force, exhaustive_nonexistence, search
from ramseycert.verifier import verify



def _solutions(cfg):
    return [cert.coloring for cert in search(cfg)]


def _canonical(c, classes):
    """True if interchangeable colours first appear in increasing id order."""
    first = {}
    for l in range(1, len(c.table)):
        first.setdefault(c.table[l], l)
    for cls in classes:
        seen = [first.get(s) for s in cls]
        used = [x for x in seen if x is not None]
        if used != sorted(used) or None in seen[:len(used)]:
            return False
    return True


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("avoid", [(3, 3), (3, 4), (4, 4), (3, 5), (2, 4)])
@pytest.mark.parametrize("fc", [False, True])
def test_matches_brute_force_cyclic(n, avoid, fc):
    bf = brute_force(n, CYCLIC, avoid)
    got = _solutions(SearchConfig(n, CYCLIC, avoid, symmetry_breaking=False, forward_check=fc))
    assert len(got) == len(set(got)) and set(got) == set(bf)


@pytest.mark.parametrize("n", range(2, 8))
@pytest.mark.parametrize("avoid", [(3, 3), (3, 4)])
def test_matches_brute_force_linear(n, avoid):
    bf = brute_force(n, LINEAR, avoid)
    got = _solutions(SearchConfig(n, LINEAR, avoid, symmetry_breaking=False))
    assert set(got) == set(bf) and len(got) == len(bf)


@pytest.mark.parametrize("n", range(3, 9))
def test_symmetry_breaking_keeps_one_per_orbit(n):
    bf = brute_force(n, CYCLIC, (3, 3))
    run = search(SearchConfig(n, CYCLIC, (3, 3)))
    got = [c.coloring for c in run]
    assert run.stats.symmetry_classes == [(1, 2)]
    assert set(got) == {c for c in bf if _canonical(c, [(1, 2)])}
    swapped = {DistanceColoring.from_sets(c.order, CYCLIC, [c.color_set(2), c.color_set(1)]) for c in got}
    assert swapped | set(got) == set(bf)


def test_pentagon():
    got = _solutions(SearchConfig(5, CYCLIC, (3, 3)))
    assert got == [DistanceColoring.from_sets(5, CYCLIC, [{1}, {2}])]


def test_order8_three_four():
    got = _solutions(SearchConfig(8, CYCLIC, (3, 4)))
    target = DistanceColoring.from_sets(8, CYCLIC, [{1, 4}, {2, 3}])
    assert target in got
    assert verify(target, (3, 4)).satisfied


@pytest.mark.parametrize("n,avoid,mode,expected", [
    (6, (3, 3), CYCLIC, True),
    (5, (3, 3), CYCLIC, False),
    (4, (3,), CYCLIC, True),
    (3, (3,), LINEAR, True),
    (2, (3,), LINEAR, False),
    (9, (3, 4), CYCLIC, True),
    (8, (3, 4), CYCLIC, False),
    (18, (4, 4), CYCLIC, True),
    (17, (4, 4), CYCLIC, False),
    (17, (3, 3, 3), CYCLIC, True),
])
def test_nonexistence(n, avoid, mode, expected):
    assert exhaustive_nonexistence(SearchConfig(n, mode, avoid)) is expected
    assert exhaustive_nonexistence(SearchConfig(n, mode, avoid, symmetry_breaking=False)) is expected


def test_nonexistence_budget_is_undecided():
    with pytest.raises(Undecided):
        exhaustive_nonexistence(SearchConfig(30, CYCLIC, (4, 5), node_budget=10))


def test_nonexistence_refuses_thresholds():
    with pytest.raises(ValueError):
        exhaustive_nonexistence(SearchConfig(6, CYCLIC, (3, 3), min_distance={2: 2}))


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 14), st.integers(1, 4), st.integers(1, 4))
def test_thresholds_are_respected(n, d1, d2):
    lim = n // 2
    md = {1: min(d1, lim), 2: min(d2, lim)}
    if min(md.values()) > 1:
        with pytest.raises(ColoringError, match="unsatisfiable"):
            search(SearchConfig(n, CYCLIC, (3, 4), min_distance=md))
        return
    for cert in search(SearchConfig(n, CYCLIC, (3, 4), min_distance=md, max_solutions=20)):
        for s, floor in md.items():
            assert all(l >= floor for l in cert.coloring.color_set(s))


def test_determinism():
    cfg = SearchConfig(13, CYCLIC, (3, 3, 3), max_solutions=10)
    assert _solutions(cfg) == _solutions(cfg)
    # representatives of colour orbits depend on branching order, so compare unbroken
    custom = SearchConfig(13, CYCLIC, (3, 3, 3), ordering=(6, 5, 4, 3, 2, 1), symmetry_breaking=False)
    plain = SearchConfig(13, CYCLIC, (3, 3, 3), symmetry_breaking=False)
    assert set(_solutions(custom)) == set(_solutions(plain))


def test_bad_configs():
    with pytest.raises(ValueError):
        search(SearchConfig(10, CYCLIC, (3, 3), ordering=(1, 2)))
    with pytest.raises(ValueError):
        search(SearchConfig(10, CYCLIC, (3, 3), min_distance={3: 1}))
    with pytest.raises(ValueError):
        search(SearchConfig(10, CYCLIC, (3, 3), min_distance={1: 12}))
    seed = DistanceColoring.from_sets(10, CYCLIC, {1: {1}, 2: {1}}, 2)
    with pytest.raises(ValueError, match="twice"):
        search(SearchConfig(10, CYCLIC, (3, 3), seed=seed))


def test_budget_and_stats():
    run = search(SearchConfig(40, CYCLIC, (4, 5), node_budget=50))
    assert list(run) == []
    assert run.stats.budget_exhausted and not run.stats.exhaustive
    assert "budget exhausted" in run.stats.summary()


def test_seeded_table1_completion(t1):
    # colours 1 and 2 fixed; colour 2 is only used from length 48 on
    seed = DistanceColoring.from_sets(173, CYCLIC, {s: t1.color_set(s) for s in (1, 2)}, 4)
    cfg = SearchConfig(173, CYCLIC, (3, 3, 4, 4), min_distance={2: 48}, seed=seed)
    run = search(cfg)
    sols = [c.coloring for c in run]
    assert run.stats.exhaustive
    assert t1 in sols
    assert all(verify(c, (3, 3, 4, 4)).satisfied for c in sols)
    assert all(min(c.color_set(2)) >= 48 for c in sols)


def test_seeded_contradiction_yields_nothing():
    seed = DistanceColoring.from_sets(5, CYCLIC, {1: {1, 2}}, 2)
    run = search(SearchConfig(5, CYCLIC, (3, 3), seed=seed))
    assert list(run) == [] and run.stats.exhaustive
