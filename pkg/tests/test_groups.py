import random

import numpy as np
import pytest

from grahamcolour import cube, groups

# groups whose order is small enough to verify by element enumeration
ENUMERABLE_ORDERS = {
    "S_5@10": 120,
    "M_11@11": 7920,
    "Syl3S11@11": 81,
    "L2_11@11": 660,
    "M_12@12": 95040,
    "M_11@12": 7920,
    "Syl3S12@12": 243,
    "D4cubed@12": 512,
    "AGL1_5xL3_2@12": 3360,
    "C3wr4C4@12": 324,
    "C3wr4A4@12": 972,
    "L3_3@13": 5616,
    "S_9@9": 362880,
}


def test_parse_cycles_examples():
    p = groups.parse_cycles("(1 5 7)(2 9 4)(3 8 10)", 10)
    assert [p(i) for i in range(1, 11)] == [5, 9, 8, 2, 7, 6, 1, 10, 4, 3]
    assert groups.parse_cycles("", 9).is_identity()
    m = groups.parse_cycles("(2 10)(4 11)(5 7)(8 9)", 11)
    assert (m * m).is_identity()
    assert all(m(x) == x for x in (1, 3, 6))


def test_parse_cycles_commas_and_roundtrip():
    p = groups.parse_cycles("(1, 2, 3)(4 5)", 5)
    assert groups.parse_cycles(groups.format_cycles(p), 5) == p
    assert groups.format_cycles(groups.identity_permutation(4)) == "()"


def test_parse_cycles_errors():
    with pytest.raises(groups.CycleParseError):
        groups.parse_cycles("(1 2)(2 3)", 5)  # repeated point
    with pytest.raises(groups.CycleParseError):
        groups.parse_cycles("(1 9)", 5)  # point > degree
    with pytest.raises(groups.CycleParseError):
        groups.parse_cycles("(1 2", 5)  # unclosed
    with pytest.raises(groups.CycleParseError):
        groups.parse_cycles("1 2)", 5)
    err = None
    try:
        groups.parse_cycles("(1 2) (3 x)", 5)
    except groups.CycleParseError as exc:
        err = exc
    assert err is not None and err.position > 0


def test_apply_vertex_examples():
    ident = groups.identity_permutation(3)
    assert groups.apply_vertex(ident, 0b101) == 0b101
    swap = groups.parse_cycles("(1 2)", 2)
    assert groups.apply_vertex(swap, 0b01) == 0b10


def test_group_action_law():
    rng = random.Random(1)
    gens = groups.lookup("M_11", 11).generators + groups.lookup("L2_11").generators
    for _ in range(1000):
        a, b = rng.choice(gens), rng.choice(gens)
        v = rng.randrange(1 << 11)
        assert groups.apply_vertex(a * b, v) == groups.apply_vertex(
            a, groups.apply_vertex(b, v)
        )


def test_vertex_table_matches_scalar():
    for g in groups.lookup("S_5", 10).generators:
        table = groups.vertex_table(g)
        for v in (0, 1, 5, 77, 1023):
            assert table[v] == groups.apply_vertex(g, v)


def test_apply_edge():
    swap = groups.parse_cycles("(1 2)", 2)
    e = cube.edge_index(0b01, 0b11, 2)
    assert groups.apply_edge(swap, e) == cube.edge_index(0b10, 0b11, 2)
    ident = groups.identity_permutation(3)
    for e in range(cube.edge_count(3)):
        assert groups.apply_edge(ident, e) == e


def test_apply_edge_respects_canonicalisation():
    rng = random.Random(2)
    gens = groups.lookup("S_5", 10).generators
    for _ in range(200):
        g = rng.choice(gens)
        u, v = rng.sample(range(1 << 10), 2)
        e = cube.edge_index(u, v, 10)
        image = groups.apply_edge(g, e)
        pu, pv = groups.apply_vertex(g, u), groups.apply_vertex(g, v)
        assert set(cube.edge_endpoints(image, 10)) == {pu, pv}


def test_apply_quad_preserves_coplanarity():
    rng = random.Random(3)
    quads = list(cube.enumerate_planar_quads(4))
    grp = groups.GroupSpec(
        "test",
        4,
        (groups.parse_cycles("(1 2 3 4)", 4), groups.parse_cycles("(1 2)", 4)),
    )
    for _ in range(300):
        q = rng.choice(quads)
        g = rng.choice(grp.generators)
        image = groups.apply_quad(g, q)
        assert cube.is_coplanar(image.vertices, 4)
        assert image.edges == tuple(
            sorted(
                cube.edge_index(a, b, 4)
                for i, a in enumerate(image.vertices)
                for b in image.vertices[i + 1 :]
            )
        )


def test_edge_orbits_identity():
    om = groups.edge_orbits(3, groups.identity_group(3))
    assert om.n_orbits == 28
    assert np.array_equal(om.orbit_of_edge, np.arange(28))


def test_edge_orbits_swap_example():
    g = groups.GroupSpec("swap", 2, (groups.parse_cycles("(1 2)", 2),))
    om = groups.edge_orbits(2, g)
    E = cube.edge_index
    expect = {
        frozenset({E(0, 1, 2), E(0, 2, 2)}),
        frozenset({E(1, 3, 2), E(2, 3, 2)}),
        frozenset({E(0, 3, 2)}),
        frozenset({E(1, 2, 2)}),
    }
    assert {frozenset(s) for s in om.orbits_as_sets()} == expect
    assert om.n_orbits == 4


def test_s9_orbits_match_invariant_classes():
    """Pairs classified by (|u&v|, {|u\\v|, |v\\u|}) are exactly the orbits."""
    om = groups.edge_orbits(9, groups.lookup("S_9"))
    u, v = groups.edge_arrays(9)

    def cls(a, b):
        return (
            bin(a & b).count("1"),
            tuple(sorted((bin(a & ~b).count("1"), bin(b & ~a).count("1")))),
        )

    labels = {}
    for e in range(cube.edge_count(9)):
        labels.setdefault(int(om.orbit_of_edge[e]), set()).add(
            cls(int(u[e]), int(v[e]))
        )
    assert om.n_orbits == 115
    assert all(len(s) == 1 for s in labels.values())
    distinct = {next(iter(s)) for s in labels.values()}
    assert len(distinct) == 115


def test_orbits_independent_of_generator_order():
    g = groups.lookup("S_5", 10)
    reversed_g = groups.GroupSpec("S_5r", 10, tuple(reversed(g.generators)), g.order)
    a = groups.edge_orbits(10, g)
    b = groups.edge_orbits(10, reversed_g)
    assert a.n_orbits == b.n_orbits
    assert np.array_equal(a.orbit_of_edge, b.orbit_of_edge)
    assert np.array_equal(a.representatives, b.representatives)


def test_identity_orbits_refine_group_orbits():
    g = groups.lookup("S_5", 10)
    om = groups.edge_orbits(10, g)
    ident = groups.edge_orbits(10, groups.identity_group(10))
    # every identity orbit (a singleton) lies inside one group orbit
    assert ident.n_orbits == cube.edge_count(10) >= om.n_orbits


def test_orbit_representatives_are_minima():
    om = groups.edge_orbits(10, groups.lookup("S_5", 10))
    mins = np.full(om.n_orbits, 1 << 60)
    np.minimum.at(mins, om.orbit_of_edge, np.arange(cube.edge_count(10)))
    assert np.array_equal(mins, om.representatives)
    assert np.all(np.diff(om.representatives) > 0)


@pytest.mark.parametrize("key,order", sorted(ENUMERABLE_ORDERS.items()))
def test_enumerate_elements_orders(key, order):
    name, _, degree = key.partition("@")
    g = groups.lookup(name, int(degree))
    assert g.order == order
    assert len(groups.enumerate_elements(g, cap=500_000)) == order


def test_enumerate_elements_cap():
    assert len(groups.enumerate_elements(groups.identity_group(5), cap=1)) == 1
    with pytest.raises(groups.GroupOrderOverflow):
        groups.enumerate_elements(groups.lookup("L2_11"), cap=100)


def test_wreath_c3wr4c4_generators():
    g = groups.lookup("C3wr4C4")
    texts = {groups.format_cycles(p) for p in g.generators}
    assert texts == {
        "(1 2 3)",
        "(4 5 6)",
        "(7 8 9)",
        "(10 11 12)",
        "(1 4 7 10)(2 5 8 11)(3 6 9 12)",
    }
    assert g.order == 324


def test_wreath_order_matches_syl3s11():
    w = groups.wreath(3, 3, groups.cyclic_group(3))
    assert w.degree == 9
    assert len(groups.enumerate_elements(w, cap=1000)) == 81
    assert groups.lookup("Syl3S11").order == 81


def test_direct_product():
    s3 = groups.symmetric_group(3)
    s9 = groups.symmetric_group(9)
    g = groups.direct_product(s3, s9)
    assert g.degree == 12
    assert g.order == 6 * 362880
    # generators of the second factor act above the first factor's points
    for gen in g.generators[2:]:
        assert all(gen(i) == i for i in (1, 2, 3))


def test_catalog_contents():
    cat = {g.key: g for g in groups.catalog()}
    assert len(cat) >= 16
    l2 = cat["L2_11@11"]
    assert {groups.format_cycles(p) for p in l2.generators} == {
        "(1 5)(2 4)(3 10)(7 11)",
        "(3 11 5)(4 7 9)(6 8 10)",
    }
    assert l2.order == 660
    assert cat["L3_3@13"].order == 5616
    assert cat["M_11@12"].order == 7920
    assert cat["S5xS9@14"].order == 43545600
    assert cat["S_10@10"].order == 3628800


def test_lookup():
    assert groups.lookup("L2_11").degree == 11
    assert groups.lookup("M_11", 12).degree == 12
    assert groups.lookup("M_11@12").degree == 12
    assert groups.lookup("I", 7).is_identity_group()
    with pytest.raises(groups.UnknownGroupError):
        groups.lookup("nope")
    with pytest.raises(groups.UnknownGroupError):
        groups.lookup("M_11")  # ambiguous degree


def test_group_file_roundtrip(tmp_path):
    g = groups.lookup("L2_11")
    path = tmp_path / "l2_11.grp"
    groups.write_group_file(g, path)
    back = groups.read_group_file(path)
    assert back.name == g.name
    assert back.degree == g.degree
    assert back.order == g.order
    assert back.generators == g.generators
