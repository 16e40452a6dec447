import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cubehom import (
    ResourceLimitError,
    SingularCube,
    build_action_table,
    complete_graph,
    cycle_graph,
    dedupe_classes,
    direct_degeneracy,
    from_edge_list,
    initial_classes,
    is_pair_cube,
    naive_maps,
    next_dimension,
    next_dimension_classes,
    orbit_class,
    pair,
    path_graph,
    remove_semi_degenerate,
)


def random_graph_strategy(max_vertices=5):
    """Reflexive graphs drawn as (vertex count, edge subset)."""

    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_vertices))
        pairs = list(itertools.combinations(range(n), 2))
        mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        return from_edge_list(n, [p for p, keep in zip(pairs, mask) if keep])

    return build()


# ---------------------------------------------------------------------------
# brute-force generation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_naive_maps_complete_graph_count(m, n):
    assert len(naive_maps(complete_graph(m), n)) == m ** (2**n)


def test_naive_maps_c5_one_cubes():
    maps = naive_maps(cycle_graph(5), 1)
    assert len(maps) == 15
    assert sum(1 for c in maps if c.deg == 0) == 10


def test_naive_maps_single_vertex():
    g = path_graph(0)
    for n in range(4):
        maps = naive_maps(g, n)
        assert len(maps) == 1
        assert (maps[0].deg == 0) == (n == 0)


def test_naive_maps_cap_refusal():
    with pytest.raises(ResourceLimitError):
        naive_maps(complete_graph(10), 3, cap=10**6)


# ---------------------------------------------------------------------------
# pairing
# ---------------------------------------------------------------------------


def test_is_pair_cube_reflexive_self_pair():
    g = cycle_graph(5)
    a = SingularCube((0, 1))
    assert is_pair_cube(a, a, g)


def test_is_pair_cube_c5_cases():
    g = cycle_graph(5)
    assert is_pair_cube(SingularCube((0, 1)), SingularCube((1, 2)), g)
    assert not is_pair_cube(SingularCube((0, 1)), SingularCube((2, 3)), g)


def test_pair_constant_edge():
    c = pair(SingularCube((4,)), SingularCube((4,)))
    assert c.vertices == (4, 4)
    assert c.degenerate_coords == frozenset({1})


def test_pair_distinct_halves():
    c = pair(SingularCube((0, 1)), SingularCube((1, 2)))
    assert c.vertices == (0, 1, 1, 2)
    assert c.degenerate_coords == frozenset()


def test_pair_equal_halves_degenerate_on_top():
    c = pair(SingularCube((0, 1)), SingularCube((0, 1)))
    assert c.vertices == (0, 1, 0, 1)
    assert c.degenerate_coords == frozenset({2})


def test_next_dimension_counts():
    c5 = cycle_graph(5)
    zero = [SingularCube((v,)) for v in range(5)]
    ones = next_dimension(zero, c5)
    assert len(ones) == 15
    k3 = complete_graph(3)
    zero = [SingularCube((v,)) for v in range(3)]
    assert len(next_dimension(zero, k3)) == 9
    assert next_dimension([], c5) == []


@settings(max_examples=40, deadline=None)
@given(random_graph_strategy(max_vertices=4))
def test_pairing_matches_naive(g):
    cubes = [SingularCube((v,)) for v in range(g.num_vertices)]
    for n in (1, 2):
        cubes = next_dimension(cubes, g)
        expected = naive_maps(g, n)
        assert sorted(c.vertices for c in cubes) == sorted(c.vertices for c in expected)


@settings(max_examples=40, deadline=None)
@given(random_graph_strategy(max_vertices=4))
def test_degeneracy_tracking_matches_direct_comparison(g):
    cubes = [SingularCube((v,)) for v in range(g.num_vertices)]
    for _ in range(3):
        cubes = next_dimension(cubes, g)
        for c in cubes:
            assert c.deg == direct_degeneracy(c.vertices), c


# ---------------------------------------------------------------------------
# orbit classes
# ---------------------------------------------------------------------------


def test_initial_classes_are_singletons():
    cs = initial_classes(cycle_graph(5))
    assert len(cs) == 5
    cls = cs.class_at(2)
    assert cls.elements == (((2,), 1),)
    assert not cs.semi_degenerate_mask().any()


def test_c5_one_cube_classes():
    c5 = cycle_graph(5)
    d1 = next_dimension_classes(initial_classes(c5), c5)
    assert len(d1) == 10
    constants = [c for c in d1.to_classes() if c.representative[0] == c.representative[1]]
    edges = [c for c in d1.to_classes() if c.representative[0] != c.representative[1]]
    assert len(constants) == 5 and len(edges) == 5
    for c in edges:
        u, w = c.representative
        assert set(arr for arr, _ in c.elements) == {(u, w), (w, u)}
    # constants are semi-degenerate, edge classes are not
    assert int(d1.semi_degenerate_mask().sum()) == 5


def test_single_vertex_classes_every_dimension():
    g = path_graph(0)
    cs = initial_classes(g)
    for _ in range(3):
        cs = next_dimension_classes(cs, g)
        assert len(cs) == 1


def test_square_classes_of_interval():
    i1 = path_graph(1)
    d1 = next_dimension_classes(initial_classes(i1), i1)
    d2 = next_dimension_classes(d1, i1)
    reps = {c.representative for c in d2.to_classes()}
    assert (0, 1, 0, 1) in reps or (0, 1, 1, 0) in reps or (1, 0, 1, 0) in reps
    assert (0, 0, 0, 0) in reps and (1, 1, 1, 1) in reps


def test_class_soundness_against_naive_quotient():
    """Classes of the pairing generator partition exactly the naive cube lists."""
    for g in [cycle_graph(5), complete_graph(3), path_graph(2), c5_star_small()]:
        cs = initial_classes(g)
        for n in (1, 2):
            cs = next_dimension_classes(cs, g)
            table = build_action_table(n)
            all_cubes = {c.vertices for c in naive_maps(g, n)}
            union = set()
            for cls in cs.to_classes():
                arrays = {arr for arr, _ in cls.elements}
                assert arrays <= all_cubes
                assert not (union & arrays), "orbits must be disjoint"
                union |= arrays
            assert union == all_cubes


def c5_star_small():
    # a triangle with one pendant square: small but irregular
    return from_edge_list(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def test_dedupe_classes_identifies_rotated_orbits():
    c5 = cycle_graph(5)
    t1 = build_action_table(1)
    a = orbit_class((0, 1), t1)
    b = orbit_class((1, 0), t1)
    assert a.canonical_key == b.canonical_key
    assert dedupe_classes([a, b]) == [a]
    assert dedupe_classes([]) == []


def test_dedupe_matches_naive_quotient_on_c5():
    c5 = cycle_graph(5)
    t1 = build_action_table(1)
    raw = [orbit_class(c.vertices, t1) for c in naive_maps(c5, 1)]
    assert len(dedupe_classes(raw)) == 10


def test_remove_semi_degenerate_constant():
    t2 = build_action_table(2)
    const = orbit_class((3, 3, 3, 3), t2)
    assert const.is_semi_degenerate
    assert remove_semi_degenerate([const]) == []


def test_remove_semi_degenerate_keeps_free_orbit():
    # an injective square has trivial stabilizer, so its orbit survives
    t2 = build_action_table(2)
    cls = orbit_class((0, 1, 2, 3), t2)
    assert len({arr for arr, _ in cls.elements}) == 8
    assert not cls.is_semi_degenerate
    assert remove_semi_degenerate([cls]) == [cls]


def test_every_c5_two_class_is_semi_degenerate():
    # C5 has girth 5: every 2-cube repeats a vertex, and enumeration shows each
    # one is fixed by some negative symmetry, e.g. (0,1,4,0) by the half-turn
    # and (0,1,1,2) by the coordinate swap
    t2 = build_action_table(2)
    for cube in naive_maps(cycle_graph(5), 2):
        assert orbit_class(cube.vertices, t2).is_semi_degenerate


def test_zero_cubes_never_semi_degenerate():
    cs = initial_classes(complete_graph(4))
    assert remove_semi_degenerate(cs.to_classes()) == cs.to_classes()


def test_degenerate_class_representatives_are_semi_degenerate():
    for g in [cycle_graph(5), complete_graph(3)]:
        cs = initial_classes(g)
        for n in (1, 2):
            cs = next_dimension_classes(cs, g)
            mask = cs.semi_degenerate_mask()
            for i, cls in enumerate(cs.to_classes()):
                if direct_degeneracy(cls.representative):
                    assert mask[i], "degenerate cubes must be filtered as semi-degenerate"


def test_generation_is_thread_count_independent():
    g = cycle_graph(5)
    serial = initial_classes(g)
    threaded = initial_classes(g)
    for _ in range(2):
        serial = next_dimension_classes(serial, g, threads=1)
        threaded = next_dimension_classes(threaded, g, threads=3)
        assert serial.keys == threaded.keys
        assert (serial.elems == threaded.elems).all()
