import itertools

import pytest

from cubehom import (
    Graph,
    InputError,
    box_product,
    c5_star,
    complete_graph,
    connected_components,
    cycle_graph,
    from_edge_list,
    greene_sphere,
    hypercube_graph,
    path_graph,
    quotient,
    read_graph,
    standard_graph,
    torus3,
    write_graph,
)


def assert_reflexive_symmetric(g):
    for v in range(g.num_vertices):
        assert v in g.neighbors[v]
        for w in g.neighbors[v]:
            assert v in g.neighbors[w]


def test_from_edge_list_single_edge():
    g = from_edge_list(2, [(0, 1)])
    assert g.neighbors[0] == frozenset({0, 1})
    assert g.neighbors[1] == frozenset({0, 1})


def test_from_edge_list_isolated_vertex_is_reflexive():
    g = from_edge_list(1, [])
    assert g.neighbors[0] == frozenset({0})


def test_from_edge_list_duplicates_collapse():
    g = from_edge_list(3, [(0, 1), (1, 0), (0, 1)])
    assert g.num_edges() == 1


def test_c5_neighborhood_sizes():
    g = cycle_graph(5)
    assert g.num_vertices == 5
    assert all(g.degree(v) == 3 for v in range(5))


def test_from_edge_list_rejects_out_of_range():
    with pytest.raises(InputError):
        from_edge_list(5, [(0, 7)])


def test_box_product_square():
    i1 = path_graph(1)
    sq = box_product(i1, i1)
    assert sq.num_vertices == 4
    # the square is a 4-cycle: each vertex has 2 neighbors plus its loop
    assert all(sq.degree(v) == 3 for v in range(4))
    assert sq.num_edges() == 4


def test_box_product_identity_factor():
    g = cycle_graph(5)
    i0 = path_graph(0)
    assert box_product(g, i0) == g


def test_box_product_cube():
    i1 = path_graph(1)
    cube = box_product(box_product(i1, i1), i1)
    assert cube.num_vertices == 8
    assert all(cube.degree(v) == 4 for v in range(8))


def test_box_product_vertex_count_and_degree_law():
    g = cycle_graph(4)
    h = path_graph(2)
    gh = box_product(g, h)
    assert gh.num_vertices == g.num_vertices * h.num_vertices
    for v in range(g.num_vertices):
        for w in range(h.num_vertices):
            assert gh.degree(v * h.num_vertices + w) == g.degree(v) + h.degree(w) - 1


def test_quotient_path_ends_to_cycle():
    i5 = path_graph(5)
    classes = [[0, 5], [1], [2], [3], [4]]
    q = quotient(i5, classes)
    relabeled = {frozenset(q.neighbors[v]) for v in range(5)}
    expected = {frozenset(cycle_graph(5).neighbors[v]) for v in range(5)}
    assert q.num_vertices == 5
    assert all(q.degree(v) == 3 for v in range(5))
    assert relabeled == expected


def test_quotient_trivial_partition_is_identity():
    g = c5_star()
    q = quotient(g, [[v] for v in range(g.num_vertices)])
    assert q == g


def test_quotient_rejects_non_partition():
    g = cycle_graph(4)
    with pytest.raises(InputError):
        quotient(g, [[0, 1], [1, 2], [3]])
    with pytest.raises(InputError):
        quotient(g, [[0, 1], [2]])


def test_torus3_construction():
    t3 = torus3()
    assert t3.num_vertices == 125
    assert all(t3.degree(v) == 7 for v in range(125))
    assert_reflexive_symmetric(t3)


def test_complete_graph_neighborhoods():
    g = complete_graph(10)
    assert all(g.degree(v) == 10 for v in range(10))


def test_greene_sphere_shape():
    g = greene_sphere()
    assert g.num_vertices == 10
    assert g.num_edges() == 16
    assert_reflexive_symmetric(g)


def test_c5_star_shape():
    g = c5_star()
    assert g.num_vertices == 10
    assert g.num_edges() == 15
    # five cycle vertices of degree 4 (2 cycle + 2 apexes) and five apexes of degree 2
    degrees = sorted(g.degree(v) - 1 for v in range(10))
    assert degrees == [2, 2, 2, 2, 2, 4, 4, 4, 4, 4]


def test_standard_graph_names():
    assert standard_graph("c5") == cycle_graph(5)
    assert standard_graph("k10") == complete_graph(10)
    assert standard_graph("path:3") == path_graph(3)
    assert standard_graph("cycle:6") == cycle_graph(6)
    assert standard_graph("complete:4") == complete_graph(4)
    assert standard_graph("hypercube:2").num_vertices == 4
    with pytest.raises(InputError):
        standard_graph("moebius")
    with pytest.raises(InputError):
        standard_graph("cycle:0")
    with pytest.raises(InputError):
        standard_graph("cycle:x")


def test_hypercube_matches_box_power():
    nx = pytest.importorskip("networkx")
    i1 = path_graph(1)
    power = i1
    for n in range(2, 5):
        power = box_product(power, i1)
        hc = hypercube_graph(n)
        a = nx.Graph(hc.edges())
        b = nx.Graph(power.edges())
        assert nx.is_isomorphic(a, b), f"hypercube({n}) not isomorphic to box power"


def test_all_constructors_reflexive_symmetric():
    for g in [cycle_graph(5), complete_graph(6), path_graph(4), hypercube_graph(3),
              greene_sphere(), c5_star()]:
        assert_reflexive_symmetric(g)


def test_connected_components():
    g = from_edge_list(5, [(0, 1), (2, 3)])
    assert connected_components(g) == [[0, 1], [2, 3], [4]]


# ---------------------------------------------------------------------------
# file I/O
# ---------------------------------------------------------------------------


def test_read_text_format(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text("v 2\ne 0 1\n")
    g = read_graph(str(p))
    assert g == from_edge_list(2, [(0, 1)])


def test_read_ignores_comments_and_blanks(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text("# a comment\nv 3\n\ne 0 1\n# another\ne 1 2\n")
    g = read_graph(str(p))
    assert g == from_edge_list(3, [(0, 1), (1, 2)])


def test_write_read_round_trip(tmp_path):
    for name in ["c5", "greene_sphere", "c5_star", "torus3"]:
        g = standard_graph(name)
        p = tmp_path / f"{name}.graph"
        write_graph(g, str(p))
        assert read_graph(str(p)) == g


def test_json_round_trip(tmp_path):
    g = c5_star()
    p = tmp_path / "g.json"
    write_graph(g, str(p))
    assert read_graph(str(p)) == g


def test_read_rejects_out_of_range_edge(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text("v 5\ne 0 7\n")
    with pytest.raises(InputError) as err:
        read_graph(str(p))
    assert ":2:" in str(err.value)  # parse errors carry the line number


def test_read_rejects_garbage_line(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text("v 3\nedge 0 1\n")
    with pytest.raises(InputError) as err:
        read_graph(str(p))
    assert ":2:" in str(err.value)


def test_read_requires_header(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text("e 0 1\n")
    with pytest.raises(InputError):
        read_graph(str(p))
