import pytest
from hypothesis import given, settings

from ramseycert.constructions import (
    DOUBLING_CANDIDATES,
    BandSpec,
    FillRule,
    GateFailure,
    apply_band,
    compound,
    compound_order,
    cyclify,
    extend_linear,
    gapped_cyclify,
    mathon_double,
    neighborhood_clique_numbers,
    neighborhood_subgraph,
    paley,
    quadruple,
)
from ramseycert.core import CYCLIC, LINEAR, ColoringError, DistanceColoring, color_degree
from ramseycert.verifier import explicit_clique_number, verify

from conftest import colourings


def k2():
    return DistanceColoring.from_sets(2, LINEAR, [{1}])


def test_cyclify_of_single_edge_is_pentagon():
    c = cyclify(k2())
    assert c == DistanceColoring.from_sets(5, CYCLIC, [{1}, {2}])
    assert verify(c).clique_numbers == (2, 2)


def test_cyclify_small_layout():
    u = DistanceColoring.from_sets(4, LINEAR, [{1}, {2, 3}])
    c = cyclify(u)
    assert c.order == 11
    assert [c.table[l] for l in range(1, 11)] == [1, 2, 2, 3, 3, 3, 3, 2, 2, 1]
    e = extend_linear(u)
    assert [e.table[l] for l in range(1, 11)] == [1, 2, 2, 3, 3, 3, 3, 1, 2, 2]


@settings(max_examples=200, deadline=None)
@given(colourings(max_order=15, max_colors=3, modes=(LINEAR,)))
def test_cyclify_keeps_clique_numbers(u):
    m = u.order
    c = cyclify(u)
    assert c.mode == CYCLIC and c.order == 3 * m - 1
    before = verify(u).clique_numbers
    after = verify(c).clique_numbers
    assert after[:-1] == before
    assert after[-1] == 2
    assert set(c.color_set(u.num_colors + 1)) == set(range(m, (3 * m - 1) // 2 + 1))


@settings(max_examples=100, deadline=None)
@given(colourings(max_order=12, max_colors=3, modes=(LINEAR,)))
def test_extend_linear_keeps_clique_numbers(u):
    e = extend_linear(u)
    assert e.mode == LINEAR and e.order == 3 * u.order - 1
    assert verify(e).clique_numbers == verify(u).clique_numbers + (2,)


@settings(max_examples=60, deadline=None)
@given(colourings(max_order=7, max_colors=2, modes=(LINEAR,)),
       colourings(max_order=5, max_colors=2, modes=(LINEAR,)))
def test_compound_keeps_clique_numbers(u, h):
    c = compound(u, h)
    assert c.order == compound_order(u.order, h.order)
    assert verify(c).clique_numbers == verify(u).clique_numbers + verify(h).clique_numbers


def test_compound_with_single_edge_is_extend():
    u = DistanceColoring.from_sets(4, LINEAR, [{1}, {2, 3}])
    assert compound(u, k2()).table == extend_linear(u).table


@pytest.mark.parametrize("m,n,p", [(202, 202, 81205), (562, 562, 630565), (5, 5, 41), (2, 2, 5)])
def test_compound_order(m, n, p):
    assert compound_order(m, n) == p


@pytest.mark.parametrize("q,w", [(5, 2), (13, 3), (17, 3), (29, 4), (101, 5)])
def test_paley_clique_numbers(q, w):
    c = paley(q)
    assert verify(c).clique_numbers == (w, w)
    assert color_degree(c, 1) == color_degree(c, 2) == (q - 1) // 2


@pytest.mark.parametrize("q", [7, 15, 4])
def test_paley_rejects_bad_order(q):
    with pytest.raises(ValueError):
        paley(q)


def test_doubling_paley101():
    cert = mathon_double(paley(101), (7, 7))
    assert cert.satisfied and cert.coloring.order == 202
    assert cert.clique_numbers == (6, 6)
    assert cert.provenance[0].startswith("double:")


def test_doubling_broken_candidate_is_refused():
    with pytest.raises(GateFailure) as info:
        mathon_double(paley(101), (7, 7), candidates=["crt-same-1"])
    exc = info.value
    assert exc.witnesses
    s, w = exc.witnesses[0]
    c = exc.certificate.coloring
    assert len(w) >= 7
    assert all(c.table[abs(a - b)] == s for a in w for b in w if a != b)


def test_doubling_extra_candidate_that_lies():
    # a map that ignores its input and returns a triangle-rich colouring
    liar = DistanceColoring.from_sets(202, CYCLIC, [range(1, 102), []])
    with pytest.raises(GateFailure):
        mathon_double(paley(101), (7, 7), candidates=[], extra=[("liar", lambda _: liar)])


def test_doubling_preconditions():
    with pytest.raises(ColoringError):
        mathon_double(DistanceColoring.from_sets(8, CYCLIC, [{1, 4}, {2, 3}]), (3, 4))


def test_gate_undecided_on_tiny_budget():
    with pytest.raises(GateFailure) as info:
        mathon_double(paley(101), (7, 7), candidates=["crt-swap-1"], budget=1)
    assert info.value.undecided or info.value.certificate.status == "violated"


def test_small_doubling_candidates_are_cyclic():
    for name, fn in DOUBLING_CANDIDATES.items():
        c = fn(paley(13))
        assert c.mode == CYCLIC and c.order == 26


def test_quadruple_refuses_failing_target():
    c = paley(5)
    with pytest.raises(GateFailure):
        quadruple(c, "cor3", (3, 3), own=(3, 3))


def test_quadruple_degree_check_rejects_before_verification():
    with pytest.raises(GateFailure) as info:
        quadruple(paley(13), "cor5", (7, 5), own=(4, 4), expect_degree=(1, 1))
    assert info.value.certificate is None
    assert info.value.rejected


def test_quadruple_unknown_variant():
    with pytest.raises(ValueError):
        quadruple(paley(13), "cor9", (7, 5))


def test_gap_free_band_spec_is_cyclify():
    u = DistanceColoring.from_sets(4, LINEAR, [{1}, {2, 3}])
    assert apply_band(u, BandSpec.gap_free(4)) == cyclify(u)


def test_band_spec_errors():
    u = DistanceColoring.from_sets(4, LINEAR, [{1}, {2, 3}])
    spec = BandSpec.gap_free(4)
    with pytest.raises(ColoringError, match="unassigned"):
        apply_band(u, BandSpec(11, spec.band, spec.rules[:1]))
    with pytest.raises(ColoringError, match="already has colour"):
        apply_band(u, BandSpec(11, spec.band | {3}, spec.rules))
    bad = (FillRule("copy", (1, 3), (1, 3)), FillRule("copy", (1, 3), (8, 10)))
    with pytest.raises(ColoringError, match="symmetry"):
        apply_band(u, BandSpec(11, spec.band, bad))
    with pytest.raises(ValueError):
        FillRule("copy", (1, 3), (1, 4))


def test_gapped_band_that_breaks_the_target_is_refused():
    # band colour on 1..2 forces a triangle (1 + 1 = 2)
    u = DistanceColoring.from_sets(3, LINEAR, [{1, 2}])
    spec = BandSpec(8, frozenset({1, 2, 6, 7}),
                    (FillRule("copy", (1, 2), (3, 4)), FillRule("reflect", (1, 2), (4, 5))))
    with pytest.raises((GateFailure, ColoringError)):
        gapped_cyclify(u, spec, (4, 3))


def test_neighbourhood_subgraph_matches_streaming():
    c = paley(29)
    e = neighborhood_subgraph(c, 1, 3)
    order, nums = neighborhood_clique_numbers(c, 1, 3)
    assert e.order == order == 14
    assert tuple(explicit_clique_number(e, s) for s in (1, 2)) == nums
    assert nums[0] == verify(c).clique_numbers[0] - 1


def test_explicit_cap_on_neighbourhood():
    with pytest.raises(ColoringError):
        neighborhood_subgraph(paley(101), 1, cap=10)
