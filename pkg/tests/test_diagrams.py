"""Diagram parsing, orientation, cabling, twist templates, resolutions."""

import random

import pytest

from skeinlab import diagrams as dg
from skeinlab.errors import ParseError, TopologyError


def test_parse_trefoil():
    d = dg.trefoil()
    assert d.crossing_count == 3
    assert d.component_count() == 1
    assert d.edge_labels() == [1, 2, 3, 4, 5, 6]


def test_parse_unknot_tokens():
    d = dg.parse_pd("U")
    assert d.crossing_count == 0
    assert d.component_count() == 1
    d2 = dg.parse_pd("U[1,2] U")
    assert d2.component_count() == 2
    assert len(d2.joins) == 2


def test_parse_rejects_empty_and_arity():
    with pytest.raises(ParseError):
        dg.parse_pd("")
    with pytest.raises(ParseError):
        dg.parse_pd("X[1,2,3]")
    with pytest.raises(ParseError):
        dg.parse_pd("X[1,4,2,5] garbage")


def test_parse_rejects_bad_labels():
    with pytest.raises(TopologyError):
        dg.parse_pd("X[1,4,2,5]")  # labels appear once
    with pytest.raises(TopologyError):
        dg.parse_pd("X[1,1,1,1]")


def test_roundtrip_parsed_diagrams():
    for text in (dg.TREFOIL_PD, dg.FIGURE_EIGHT_PD, dg.HOPF_PD,
                 "U[1,2] U[3,4]", "X[1,1,2,2] U", "U U U"):
        d = dg.parse_pd(text)
        assert dg.parse_pd(dg.to_text(d)) == d


def test_components():
    assert dg.hopf_link().component_count() == 2
    assert dg.figure_eight().component_count() == 1
    assert dg.parse_pd("U[1] U[2] U").component_count() == 3


def test_writhe_trefoil():
    assert abs(dg.writhe(dg.trefoil())) == 3


def test_writhe_positive_braid():
    assert dg.writhe(dg.braid_pd([1, 1, 1], 2)) == 3
    assert dg.writhe(dg.braid_pd([-1, -1], 2)) == -2


def test_writhe_unknot_and_connected_sum():
    assert dg.writhe(dg.parse_pd("U")) == 0
    square = dg.braid_pd([1, 1, 1, -2, -2, -2], 3)
    assert square.component_count() == 1
    assert dg.writhe(square) == 0


def test_positive_kink():
    kink = dg.braid_pd([1], 2)
    assert kink.crossing_count == 1
    assert kink.component_count() == 1
    assert dg.writhe(kink) == 1


def test_resolve_unknot():
    count, labels = dg.resolve(dg.parse_pd("U"), "")
    assert count == 1 and labels == {}


def test_resolve_braid_trefoil_states():
    d = dg.braid_pd([1, 1, 1], 2)
    # all-A smoothing of a 2-strand positive braid closure: 2 circles
    count, _ = dg.resolve(d, "000")
    assert count == 2
    # all-B: k-1 loops between the strands plus outer: 3 here
    count, _ = dg.resolve(d, "111")
    assert count == 3
    counts = [dg.resolve(d, s)[0] for s in range(8)]
    assert all(c >= 1 for c in counts)


def test_resolve_standard_trefoil_pd():
    # the stock 3_1 PD is the mirror presentation: all-A gives 3 circles
    d = dg.trefoil()
    assert dg.resolve(d, "000")[0] == 3
    assert dg.resolve(d, "111")[0] == 2


def test_cable_counts():
    d = dg.trefoil()
    c2 = dg.cable(d, 2)
    assert c2.crossing_count == 12
    assert c2.component_count() == 2
    assert dg.cable(dg.parse_pd("U"), 3).free_loops == 3
    assert dg.cable(d, 1) == dg.relabel(d)


def test_cable_writhe_scales_by_n_squared():
    for word in ([1, 1, 1], [1, -1, 1, 1]):
        d = dg.braid_pd(word, 2)
        w = dg.writhe(d)
        assert dg.writhe(dg.cable(d, 2)) == 4 * w


def test_cable_components_scale():
    d = dg.hopf_link()
    assert dg.cable(d, 3).component_count() == 6


def test_twist_fill_counts():
    t = dg.one_slot_template()
    for k, comps in ((0, 2), (1, 1), (2, 2), (3, 1), (4, 2)):
        d = dg.twist_fill(t, (k,))
        assert d.crossing_count == k
        assert d.component_count() == comps


def test_twist_fill_writhe_positive():
    t = dg.one_slot_template()
    for k in (2, 4, 6):
        # co-oriented parallel strands: all crossings positive
        assert abs(dg.writhe(dg.twist_fill(t, (k,)))) == k


def test_twist_fill_validation():
    t = dg.one_slot_template()
    with pytest.raises(ValueError):
        dg.twist_fill(t, (1, 2))
    with pytest.raises(ValueError):
        dg.twist_fill(t, (-1,))


def test_twist_fill_deterministic_numbering():
    t = dg.rational_template()
    d1 = dg.twist_fill(t, (2, 3))
    d2 = dg.twist_fill(t, (2, 3))
    assert d1 == d2
    assert d1.crossing_count == 5


def test_pretzel_template():
    t = dg.pretzel_template()
    d = dg.twist_fill(t, (1, 1, 1))
    assert d.crossing_count == 3
    # P(1,1,1) is a trefoil
    assert d.component_count() == 1


def test_template_validation():
    with pytest.raises(TopologyError):
        dg.TwistTemplate(dg.parse_pd("U[1,2]"), ((1, 1, 1),))
    with pytest.raises(TopologyError):
        dg.TwistTemplate(dg.parse_pd("U[1,2]"), ((1, 2, 2),))
    with pytest.raises(TopologyError):
        dg.TwistTemplate(dg.parse_pd("U[1,2]"), ((1, 7, 1),))


def test_random_diagrams_valid():
    rng = random.Random(7)
    for _ in range(50):
        d = dg.random_diagram(rng, max_crossings=10)
        assert d.crossing_count <= 10
        d.components()
        if d.crossings:
            dg.orient(d)


def test_resolve_never_zero_circles():
    rng = random.Random(11)
    for _ in range(20):
        d = dg.random_diagram(rng, max_crossings=8)
        for s in range(1 << min(d.crossing_count, 8)):
            assert dg.resolve(d, s)[0] >= 1
