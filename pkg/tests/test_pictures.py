from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordinv.chords import enumerate_diagrams, parse_diagram
from chordinv.errors import InvariantViolated, MalformedInput
from chordinv.pictures import (
    ClosedPicture,
    DiagramCombination,
    connect_components,
    diagram_picture,
    evaluate_picture,
    find_unique_cycle,
    jacobi_triple,
    mu_subgraph,
    off_cycle_count,
    picture_components,
    random_connected_picture,
    random_picture,
    reduce_picture,
    swap_inputs,
    theta_slide,
    validate_picture,
)
from chordinv.tensor_eval import evaluate_diagram

from conftest import algebra, killing


def mu(i, port):
    return ("mu", i, port)


def th(t, port):
    return ("theta", t, port)


def two_loops():
    """Two one-node circles whose first inputs are joined by one theta."""
    feed = {
        mu(0, "in2"): mu(0, "out"),
        mu(1, "in2"): mu(1, "out"),
        mu(0, "in1"): th(0, "p1"),
        mu(1, "in1"): th(0, "p2"),
    }
    return ClosedPicture.from_feed(2, 1, feed)


def value(p, name="sl3"):
    return evaluate_picture(p, algebra(name), killing(name))


def test_validate_ratio_and_open_port():
    p = ClosedPicture(3, 1, ((mu(0, "out"), mu(1, "in1")),))
    rep = validate_picture(p)
    assert rep.ratio is not None
    assert mu(0, "in2") in rep.open_ports
    assert not rep.empty
    with pytest.raises(MalformedInput):
        p.feed()


def test_validate_reuse_and_orientation():
    p = ClosedPicture(2, 1, ((mu(0, "out"), mu(1, "out")), (mu(0, "in1"), mu(0, "in1"))))
    rep = validate_picture(p)
    assert rep.orientation
    assert mu(0, "in1") in rep.reused_ports


def test_diagram_pictures_match_evaluator():
    sc, kd = algebra("sl3"), killing("sl3")
    for m in (1, 2, 3):
        for d in enumerate_diagrams(m):
            p = diagram_picture(d)
            assert validate_picture(p).empty
            assert evaluate_picture(p, sc, kd) == evaluate_diagram(d, sc, kd)


def test_swap_inputs_flips_sign():
    p = diagram_picture(parse_diagram("1-3,2-4"))
    q = ClosedPicture.from_feed(4, 2, swap_inputs(p.feed(), 2))
    assert value(q, "sl2") == -value(p, "sl2") != 0


def test_jacobi_triple_sums_to_zero():
    for seed in range(20):
        p = random_connected_picture(2, seed)
        feed = p.feed()
        nodes = [i for i in range(p.n_mu) if feed[mu(i, "in1")][0] == "mu" and feed[mu(i, "in1")][1] != i]
        for node in nodes:
            assert sum(value(q) for q in jacobi_triple(p, node)) == 0


@pytest.mark.parametrize("seed", range(25))
def test_theta_slide_preserves_value(seed):
    p = random_picture(2, seed)
    feed = p.feed()
    v = value(p)
    for leg in [th(t, x) for t in range(2) for x in ("p1", "p2")]:
        q = ClosedPicture.from_feed(p.n_mu, p.n_theta, theta_slide(feed, leg))
        assert value(q) == v


def test_theta_slide_both_legs_on_one_node():
    # theta^{ab} mu_{ab}^c: the far leg lands on the other input of the same node
    feed = {
        mu(0, "in1"): th(0, "p1"),
        mu(0, "in2"): th(0, "p2"),
        mu(1, "in1"): mu(0, "out"),
        mu(1, "in2"): mu(1, "out"),
    }
    p = ClosedPicture.from_feed(2, 1, feed)
    q = ClosedPicture.from_feed(2, 1, theta_slide(feed, th(0, "p1")))
    assert validate_picture(q).empty
    assert value(q) == value(p) == 0


def test_theta_slide_self_loop_case():
    # the node fed by the leg feeds its own other input
    p = two_loops()
    q = ClosedPicture.from_feed(2, 1, theta_slide(p.feed(), th(0, "p1")))
    assert validate_picture(q).empty
    for name in ("sl2", "sl3"):
        assert value(q, name) == value(p, name)


def test_connect_two_circles():
    p = two_loops()
    assert nx.number_weakly_connected_components(mu_subgraph(p)) == 2
    stats = {}
    q = connect_components(p, stats)
    assert stats["corollary_steps"] == 1
    assert nx.is_weakly_connected(mu_subgraph(q))
    assert value(q) == value(p) == 0


def test_reduce_two_circles():
    comb = reduce_picture(two_loops())
    assert comb.evaluate(algebra("sl3")) == 0


def test_disjoint_product():
    d = diagram_picture(parse_diagram("1-2"))
    feed = dict(d.feed())
    for (kind, i, port), (skind, j, sport) in d.feed().items():
        feed[(kind, i + 2, port)] = (skind, j + (2 if skind == "mu" else 1), sport)
    p = ClosedPicture.from_feed(4, 2, feed)
    assert len(picture_components(p)) == 2
    comb = reduce_picture(p)
    one = parse_diagram("1-2")
    assert comb.terms == {(one, one): 1}
    assert comb.evaluate(algebra("sl3")) == 64 == value(p)


def test_find_unique_cycle_errors():
    two = nx.DiGraph([(0, 1), (1, 0), (1, 2), (2, 1)])
    with pytest.raises(InvariantViolated):
        find_unique_cycle(two)
    tree = nx.DiGraph([(0, 1), (1, 2)])
    with pytest.raises(InvariantViolated):
        find_unique_cycle(tree)
    split = nx.DiGraph([(0, 0), (1, 1)])
    with pytest.raises(InvariantViolated):
        find_unique_cycle(split)
    assert find_unique_cycle(nx.DiGraph([(2, 0), (0, 1), (1, 2), (("leg", 0, "p1"), 1)])) == [0, 1, 2]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_reduction_sound_and_theta_preserving(k, seed):
    p = random_picture(k, seed)
    stats = {}
    comb = reduce_picture(p, stats)
    for key, c in comb.items():
        assert sum(d.m for d in key) == k
        assert c != 0
    assert comb.evaluate(algebra("sl2")) == value(p, "sl2")
    assert stats.get("jacobi_steps", 0) < 200


@pytest.mark.parametrize("seed", range(10))
def test_connected_pictures_reduce_to_single_diagrams(seed):
    p = random_connected_picture(3, seed)
    comb = reduce_picture(p)
    assert all(len(key) == 1 for key, _ in comb.items())
    assert comb.evaluate(algebra("sl3")) == value(p)


def test_chord_diagram_needs_no_rewriting():
    d = parse_diagram("1-4,2-5,3-6")
    p = diagram_picture(d)
    stats = {}
    assert off_cycle_count(p) == 0
    assert reduce_picture(p, stats).terms == {(d,): 1}
    assert stats.get("jacobi_steps", 0) == 0


def test_json_roundtrips():
    p = random_picture(3, 7)
    assert ClosedPicture.from_json(p.to_json()) == p
    comb = reduce_picture(p)
    assert DiagramCombination.from_json(comb.to_json()) == comb
    assert str(DiagramCombination()) == "0"


@pytest.mark.parametrize(
    "obj",
    [
        {"mu_nodes": 2, "theta_nodes": 1},
        {"mu_nodes": -1, "theta_nodes": 1, "edges": []},
        {"mu_nodes": 2, "theta_nodes": 1, "edges": [[0, "in1", 0]]},
        {"mu_nodes": 2, "theta_nodes": 1, "edges": [[0, "in3", 0, "p1"]]},
    ],
)
def test_picture_json_errors(obj):
    with pytest.raises(MalformedInput):
        ClosedPicture.from_json(obj)


def test_fraction_coefficients_exact():
    comb = DiagramCombination()
    comb.add((parse_diagram("1-2"),), Fraction(1, 3))
    comb.add((parse_diagram("1-2"),), Fraction(2, 3))
    assert comb.evaluate(algebra("sl2")) == 3
