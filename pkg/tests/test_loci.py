import itertools

import pytest

from wonderful.geometry import Component, GeometryConfig, Space, point_components
from wonderful.labels import Partition, mask_of, subsets
from wonderful.loci import (
    Diagonal,
    DLocus,
    PairPosition,
    center_to_locus,
    codimension,
    contains,
    contains_locus,
    dimension,
    intersect,
    intersect_all,
    pair_position,
    parse_center,
)
from oracles import GridModel, closed_form_pair_position


def bracket(n, comps, dim_x=2):
    return GeometryConfig(n, dim_x, tuple(Component("c%d" % (i + 1), d) for i, d in enumerate(comps)))


def all_centers(g, max_poly_blocks=1):
    """Every D-locus and every simple diagonal of the configuration."""
    out = []
    for c in range(1, g.n_components + 1):
        for m in subsets(g.n, min_size=1):
            out.append(DLocus(g.n, c, m))
    for m in subsets(g.n, min_size=2):
        out.append(Diagonal.simple(g.n, m))
    return out


def test_center_to_locus_definitions():
    g = bracket(3, [1])
    lo = center_to_locus(g, DLocus(3, 1, mask_of([1, 2])))
    assert lo.blocks == (0b001, 0b010, 0b100)
    assert lo.pins == (1, 1, None)
    lo2 = center_to_locus(g, Diagonal.simple(3, mask_of([1, 2])))
    assert lo2.blocks == (0b011, 0b100)
    assert lo2.pins == (None, None)
    g4 = bracket(4, [1])
    lo3 = center_to_locus(g4, Diagonal(Partition.from_blocks(4, [[1, 2], [3, 4]])))
    assert lo3.blocks == (0b0011, 0b1100)


def test_point_component_locus_merges():
    # dim-0 components force equality: D_{c,S} collapses to one pinned block
    g = bracket(3, [0])
    lo = center_to_locus(g, DLocus(3, 1, mask_of([1, 2])))
    assert lo.blocks == (0b011, 0b100)
    assert lo.pins == (1, None)


def test_intersect_diagonals_is_meet():
    g = bracket(3, [])
    a = center_to_locus(g, Diagonal.simple(3, mask_of([1, 2])))
    b = center_to_locus(g, Diagonal.simple(3, mask_of([2, 3])))
    li = intersect(g, a, b)
    assert li.blocks == (0b111,)
    assert li.pins == (None,)


def test_intersect_conflicting_pins_empty():
    g = bracket(2, [1, 1])
    a = center_to_locus(g, DLocus(2, 1, mask_of([1])))
    b = center_to_locus(g, DLocus(2, 2, mask_of([1])))
    assert intersect(g, a, b).is_empty


def test_intersect_pin_spreads_over_block():
    g = bracket(2, [1])
    a = center_to_locus(g, DLocus(2, 1, mask_of([1])))
    b = center_to_locus(g, Diagonal.simple(2, mask_of([1, 2])))
    li = intersect(g, a, b)
    assert li.blocks == (0b11,) and li.pins == (1,)
    model = GridModel(g)
    assert model.locus_points(li) == model.center_points(DLocus(2, 1, mask_of([1]))) & model.center_points(
        Diagonal.simple(2, mask_of([1, 2]))
    )


def test_dimension_examples():
    g = bracket(2, [], dim_x=2)
    assert dimension(g, center_to_locus(g, Diagonal.simple(2, 0b11))) == 2
    assert codimension(g, center_to_locus(g, Diagonal.simple(2, 0b11))) == 2
    g1 = bracket(2, [1], dim_x=2)
    assert dimension(g1, center_to_locus(g1, DLocus(2, 1, 0b11))) == 2
    li = intersect(
        g1,
        center_to_locus(g1, DLocus(2, 1, 0b01)),
        center_to_locus(g1, Diagonal.simple(2, 0b11)),
    )
    assert dimension(g1, li) == 1  # one point moving inside the component


def test_dimension_against_grid_model():
    for comps in ([], [0], [1], [0, 1]):
        g = bracket(3, comps, dim_x=2)
        model = GridModel(g)
        for c in all_centers(g):
            lo = center_to_locus(g, c)
            assert model.dimension_of(model.center_points(c)) == dimension(g, lo)


def test_intersection_against_grid_model_exhaustive_pairs():
    for comps in ([0], [1], [0, 1]):
        g = bracket(2, comps, dim_x=2)
        model = GridModel(g)
        centers = all_centers(g)
        for a, b in itertools.combinations_with_replacement(centers, 2):
            li = intersect(g, center_to_locus(g, a), center_to_locus(g, b))
            pts = model.center_points(a) & model.center_points(b)
            assert model.locus_points(li) == pts
            assert model.dimension_of(pts) == dimension(g, li)


def test_contains_examples():
    g = bracket(3, [1])
    assert contains(g, DLocus(3, 1, mask_of([1])), DLocus(3, 1, mask_of([1, 2])))
    assert not contains(g, DLocus(3, 1, mask_of([1, 2])), DLocus(3, 1, mask_of([1])))
    assert contains(g, Diagonal.simple(3, 0b011), Diagonal.simple(3, 0b111))
    g0 = bracket(3, [0])
    assert contains(g0, Diagonal.simple(3, 0b011), DLocus(3, 1, mask_of([1, 2])))
    assert not contains(bracket(3, [1]), Diagonal.simple(3, 0b011), DLocus(3, 1, mask_of([1, 2])))


def test_contains_against_grid_model():
    for comps in ([0], [1]):
        g = bracket(2, comps, dim_x=2)
        model = GridModel(g)
        centers = all_centers(g)
        for a, b in itertools.product(centers, repeat=2):
            expected = model.center_points(b) <= model.center_points(a)
            assert contains(g, a, b) == expected


def test_contains_mutual_means_equal_locus():
    g = bracket(3, [0, 1])
    centers = all_centers(g)
    for a, b in itertools.combinations(centers, 2):
        if contains(g, a, b) and contains(g, b, a):
            assert center_to_locus(g, a) == center_to_locus(g, b)


def test_empty_locus_is_contained_everywhere():
    g = bracket(2, [1, 1])
    empty = intersect(
        g, center_to_locus(g, DLocus(2, 1, 0b01)), center_to_locus(g, DLocus(2, 2, 0b01))
    )
    assert empty.is_empty
    assert contains_locus(g, center_to_locus(g, DLocus(2, 1, 0b01)), empty)
    assert not contains_locus(g, empty, center_to_locus(g, DLocus(2, 1, 0b01)))


def test_pair_position_examples():
    g = bracket(4, [1], dim_x=2)
    assert pair_position(g, Diagonal.simple(4, 0b0011), Diagonal.simple(4, 0b1100)) is PairPosition.TRANSVERSAL
    assert pair_position(g, Diagonal.simple(4, 0b0011), Diagonal.simple(4, 0b0110)) is PairPosition.TRANSVERSAL
    # excess (dim X - dim D_c) over the transversal count
    assert pair_position(g, DLocus(4, 1, 0b0011), Diagonal.simple(4, 0b0011)) is PairPosition.CLEAN_OVERLAP
    g0 = bracket(4, [0], dim_x=2)
    assert pair_position(g0, DLocus(4, 1, 0b0011), Diagonal.simple(4, 0b0011)) is PairPosition.CLEAN_CONTAINMENT


def test_pair_position_closed_forms_small():
    g = bracket(3, [1, 1], dim_x=2)
    # same component: transversal iff index sets disjoint
    assert pair_position(g, DLocus(3, 1, 0b001), DLocus(3, 1, 0b010)) is PairPosition.TRANSVERSAL
    assert pair_position(g, DLocus(3, 1, 0b011), DLocus(3, 1, 0b110)) is PairPosition.CLEAN_OVERLAP
    # different components: disjoint iff index sets meet
    assert pair_position(g, DLocus(3, 1, 0b001), DLocus(3, 2, 0b001)) is PairPosition.DISJOINT
    assert pair_position(g, DLocus(3, 1, 0b001), DLocus(3, 2, 0b010)) is PairPosition.TRANSVERSAL
    # mixed: shared indices at most one
    assert pair_position(g, DLocus(3, 1, 0b011), Diagonal.simple(3, 0b110)) is PairPosition.TRANSVERSAL
    assert pair_position(g, DLocus(3, 1, 0b001), Diagonal.simple(3, 0b110)) is PairPosition.TRANSVERSAL


def test_pair_position_matches_closed_form_table():
    for (d, d_c) in [(1, 0), (2, 0), (2, 1), (3, 1)]:
        g = bracket(3, [d_c], dim_x=d)
        centers = all_centers(g)
        for a, b in itertools.combinations_with_replacement(centers, 2):
            assert pair_position(g, a, b) is closed_form_pair_position(g, a, b), (a, b, d, d_c)


def test_pair_position_never_not_clean():
    g = bracket(3, [0, 1], dim_x=2)
    centers = all_centers(g)
    for a, b in itertools.combinations(centers, 2):
        assert pair_position(g, a, b) is not PairPosition.NOT_CLEAN


def test_cross_component_overlap_always_empty():
    for n in (2, 3, 4, 5):
        g = bracket(n, [0, 1], dim_x=2)
        for s1 in subsets(n, min_size=1):
            for s2 in subsets(n, min_size=1):
                if s1 & s2:
                    li = intersect(
                        g,
                        center_to_locus(g, DLocus(n, 1, s1)),
                        center_to_locus(g, DLocus(n, 2, s2)),
                    )
                    assert li.is_empty


def test_intersect_commutative_associative_exhaustive_n3():
    g = bracket(3, [0, 1], dim_x=2)
    loci = [center_to_locus(g, c) for c in all_centers(g)]
    for a, b in itertools.combinations(loci, 2):
        assert intersect(g, a, b) == intersect(g, b, a)
    for a, b, c in itertools.combinations(loci, 3):
        assert intersect(g, intersect(g, a, b), c) == intersect(g, a, intersect(g, b, c))


def test_intersect_all_matches_grid_model_triples():
    g = bracket(2, [0], dim_x=2)
    model = GridModel(g)
    centers = all_centers(g)
    for trio in itertools.combinations(centers, 3):
        li = intersect_all(g, [center_to_locus(g, c) for c in trio])
        pts = model.center_points(trio[0]) & model.center_points(trio[1]) & model.center_points(trio[2])
        assert model.locus_points(li) == pts


def test_center_labels_round_trip():
    g = bracket(4, [1, 0])
    for c in all_centers(g):
        assert parse_center(str(c), 4) == c
    poly = Diagonal(Partition.from_blocks(4, [[1, 2], [3, 4]]))
    assert parse_center(str(poly), 4) == poly
    with pytest.raises(ValueError):
        parse_center("X:{1}", 4)


def test_config_json_round_trip():
    from wonderful.geometry import config_from_json_dict

    g = GeometryConfig(3, 2, (Component("a", 0), Component("b", 1)), Space.XD_UPPER)
    assert config_from_json_dict(g.to_json_dict()) == g
    with pytest.raises(ValueError):
        config_from_json_dict({"n": 2, "dim_X": 1, "components": [{"name": "a", "dim": 1}]})
    with pytest.raises(ValueError):
        config_from_json_dict({"n": 2, "dim_X": 1, "bogus": 1})


def test_population_cap_enforced_at_config():
    with pytest.raises(ValueError):
        GeometryConfig(65, 1)
    assert point_components(1, n=64).n == 64
