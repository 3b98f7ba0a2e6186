from __future__ import annotations

import time
from itertools import permutations

import pytest

from spg.boards import (
    OUTER_EXTRA,
    BudgetExceeded,
    Piece,
    assembly_board,
    assembly_regions,
    board,
    board_from_obj,
    board_to_dot,
    board_to_obj,
    build_cycle,
    build_grid,
    build_path,
    check_edge_labeling,
    components,
    cycle_piece,
    default_edge_labeling,
    disjoint_union,
    distance,
    domino_piece,
    empty_board,
    gamma_board,
    gamma_piece,
    grid_from_cells,
    induced_embeddings,
    piece_placements,
    placement,
    vertex_piece,
)
from spg.complexes import from_facets
from conftest import all_labeled_complexes


P3_GAMMA = from_facets([["a", "b"], ["b", "c"]], {"a": "L", "b": "R", "c": "L"})


def placements_oracle(b, piece) -> set[frozenset[int]]:
    """Brute force: every injective vertex map sending piece edges to board
    edges, collapsed to occupied sets."""
    out = set()
    pv = list(piece.vertices)
    for image in permutations(b.vertices, len(pv)):
        m = dict(zip(pv, image))
        if all(tuple(sorted((m[a], m[c]))) in b.edges for a, c in piece.edges):
            out.add(frozenset(image))
    return out


def test_builders_shapes():
    p = build_path(4)
    assert p.vertices == (0, 1, 2, 3) and len(p.edges) == 3
    c = build_cycle(5)
    assert len(c.vertices) == 5 and len(c.edges) == 5
    g = build_grid(2, 3)
    assert len(g.vertices) == 6 and len(g.edges) == 7
    assert empty_board().vertices == ()


def test_grid_from_cells_lshape():
    b = grid_from_cells([(0, 0), (1, 0), (2, 0), (2, 1)])
    assert len(b.vertices) == 4
    assert b.edges == frozenset({(0, 1), (1, 2), (2, 3)})
    assert b.coords[3] == (2, 1)
    with pytest.raises(ValueError):
        grid_from_cells([(0, 0), (0, 0)])


def test_board_validation():
    from spg.boards import Board

    assert board([0, 0], []).vertices == (0,)  # the builder dedupes
    with pytest.raises(ValueError):
        Board((0, 0), frozenset())
    with pytest.raises(ValueError):
        board([0, 1], [(0, 2)])
    with pytest.raises(ValueError):
        board([0, 1], [(0, 1)], coords={0: (0, 0), 1: (0, 2)})
    with pytest.raises(ValueError):
        board([0, 1], [(0, 1)], coords={0: (0, 0), 1: (0, 0)})


def test_disjoint_union_offsets_and_components():
    u = disjoint_union(build_path(2), build_cycle(3))
    assert len(u.vertices) == 5 and len(u.edges) == 4
    assert not any({0, 1} & set(e) and {2, 3, 4} & set(e) for e in u.edges)
    assert [sorted(c) for c in components(u)] == [[0, 1], [2, 3, 4]]
    assert disjoint_union().vertices == ()


def test_piece_validation():
    with pytest.raises(ValueError):
        Piece("L", (), frozenset())
    with pytest.raises(ValueError):
        Piece("L", (0, 1), frozenset())  # disconnected
    with pytest.raises(ValueError):
        Piece("X", (0,), frozenset())


def test_placement_ordering_and_validation():
    a = placement("L", [2, 0])
    b = placement("L", [1])
    assert sorted([a, b]) == [a, b]  # (0,2) before (1,)
    with pytest.raises(ValueError):
        placement("L", [])


@pytest.mark.parametrize(
    "make_board,piece",
    [
        (lambda: build_path(4), domino_piece("L")),
        (lambda: build_grid(2, 3), domino_piece("R")),
        (lambda: build_cycle(4), cycle_piece(4, "L")),
        (lambda: build_grid(2, 2), cycle_piece(4, "R")),
        (lambda: build_path(3), vertex_piece("L")),
        (lambda: disjoint_union(build_path(2), build_cycle(3)), cycle_piece(3, "L")),
    ],
)
def test_piece_placements_match_oracle(make_board, piece):
    b = make_board()
    got = {p.occupied for p in piece_placements(b, piece)}
    assert got == placements_oracle(b, piece)
    players = {p.player for p in piece_placements(b, piece)}
    assert players <= {piece.player}


def test_piece_placements_sorted_and_deduped():
    b = build_path(3)
    ps = piece_placements(b, domino_piece("L"))
    assert [sorted(p.occupied) for p in ps] == [[0, 1], [1, 2]]


def test_placements_add_over_disjoint_union():
    left, right = build_path(3), build_cycle(4)
    u = disjoint_union(left, right)
    piece = domino_piece("L")
    total = len(piece_placements(left, piece)) + len(piece_placements(right, piece))
    assert len(piece_placements(u, piece)) == total


def test_embedding_deadline_raises():
    # the deadline is polled every couple thousand search nodes, so the
    # search must be big enough to reach the first poll
    with pytest.raises(BudgetExceeded):
        piece_placements(build_cycle(240), cycle_piece(24, "L"), deadline=time.monotonic() - 1)


def test_induced_embeddings_on_cycle():
    c = build_cycle(4)
    # a single edge has 8 induced embeddings: 4 edges, 2 orientations
    maps = induced_embeddings(c, [0, 1], [(0, 1)])
    assert len(maps) == 8
    assert all(tuple(sorted((m[0], m[1]))) in c.edges for m in maps)
    # two opposite vertices must stay non-adjacent
    maps = induced_embeddings(c, [0, 2], [])
    assert {frozenset((m[0], m[2])) for m in maps} == {frozenset((0, 2)), frozenset((1, 3))}


def test_induced_embeddings_across_components():
    u = disjoint_union(build_path(2), build_path(2))
    maps = induced_embeddings(u, [0, 2], [])
    # non-adjacent pair: one vertex per component, both assignments, both orders
    for m in maps:
        assert frozenset((m[0], m[2])) not in u.edges


def test_distance_bfs():
    p = build_path(5)
    assert distance(p, [0], [4]) == 4
    assert distance(p, [0, 1], [3, 4]) == 2
    assert distance(p, [2], [2]) == 0
    u = disjoint_union(build_path(2), build_path(2))
    assert distance(u, [0], [2]) == float("inf")


def test_default_edge_labeling_canonical():
    lab = default_edge_labeling(P3_GAMMA)
    # canonical order puts L-vertices a, c first; edges sort as (a,b) < (b,c)
    assert lab == {frozenset("ab"): 1, frozenset("bc"): 2}
    tri = from_facets([["a", "b", "c"]], {v: "L" for v in "abc"})
    assert sorted(default_edge_labeling(tri).values()) == [1, 2, 3]


def test_check_edge_labeling_errors():
    with pytest.raises(ValueError):
        check_edge_labeling(P3_GAMMA, {frozenset("ab"): 1})
    with pytest.raises(ValueError):
        check_edge_labeling(P3_GAMMA, {frozenset("ab"): 1, frozenset("bc"): 3})
    with pytest.raises(ValueError):
        check_edge_labeling(P3_GAMMA, {frozenset("ab"): 1, frozenset("ac"): 2})
    ok = check_edge_labeling(P3_GAMMA, {frozenset("ab"): 2, frozenset("bc"): 1})
    assert ok[frozenset("bc")] == 1


def expected_gamma_size(gamma, labeling) -> int:
    n = len(gamma.vertices)
    per_vertex = {
        v: n**4 + OUTER_EXTRA[gamma.part[v]] + (n - 1) * (n**3 - 1)
        for v in gamma.vertices
    }
    return sum(per_vertex.values()) + sum(labeling.values())


def test_gamma_board_single_edge_sizes():
    edge = from_facets([["a", "b"]], {"a": "L", "b": "R"})
    b = gamma_board(edge)
    assert len(b.vertices) == 56  # 20 + 7 + 21 + 7 + 1
    regions = assembly_regions(b)
    assert set(regions) == {"a", "b"}
    assert len(regions["a"]) == 27 and len(regions["b"]) == 28
    centre = set(b.vertices) - regions["a"] - regions["b"]
    assert len(centre) == 1


def test_gamma_board_sizes_match_formula_on_small_corpus():
    for gamma in all_labeled_complexes("abc", include_degenerate=False):
        if any(len(f) == 1 for f in gamma.facets):
            continue
        lab = default_edge_labeling(gamma)
        b = gamma_board(gamma)
        assert len(b.vertices) == expected_gamma_size(gamma, lab), gamma


def test_gamma_board_rejects_isolated_vertices():
    lonely = from_facets([["a"], ["b", "c"]], {v: "L" for v in "abc"})
    with pytest.raises(ValueError):
        gamma_board(lonely)


def test_gamma_board_empty_complex():
    from spg.complexes import empty_face_complex, void_complex

    assert gamma_board(void_complex()).vertices == ()
    assert gamma_board(empty_face_complex()).vertices == ()


def test_gamma_board_distances_are_label_plus_one():
    lab = {frozenset("ab"): 2, frozenset("bc"): 1}
    b = gamma_board(P3_GAMMA, lab)
    regions = assembly_regions(b)
    assert distance(b, regions["a"], regions["b"]) == 3
    assert distance(b, regions["b"], regions["c"]) == 2
    # a and c are not joined directly; nearest route runs through b's assembly
    assert distance(b, regions["a"], regions["c"]) > 3


def test_gamma_board_cycle_structure():
    b = gamma_board(P3_GAMMA)
    n = 3
    # restricted to one assembly, the only simple cycles are the outer cycle,
    # the inner cycles, and their vertex-identified composites
    regions = assembly_regions(b)
    from spg.boards import simple_cycle_lengths

    lengths = simple_cycle_lengths(b, regions["a"])
    outer, inner = n**4 + 4, n**3
    assert outer in lengths and inner in lengths
    assert all(l >= inner for l in lengths)


def test_assembly_board_matches_gamma_piece():
    for part in ("L", "R"):
        for n in (2, 3):
            free = assembly_board("z", part, n)
            piece = gamma_piece(n, part)
            assert len(free.vertices) == len(piece.vertices)
            assert len(free.edges) == len(piece.edges)
            assert assembly_regions(free) == {"z": frozenset(free.vertices)}
            # the piece tiles its own free assembly exactly once
            ps = piece_placements(free, piece)
            assert len(ps) == 1 and ps[0].occupied == frozenset(free.vertices)


def test_gamma_piece_embeds_once_per_matching_assembly():
    b = gamma_board(P3_GAMMA)
    regions = assembly_regions(b)
    left = piece_placements(b, gamma_piece(3, "L"))
    right = piece_placements(b, gamma_piece(3, "R"))
    assert {p.occupied for p in left} == {regions["a"], regions["c"]}
    assert {p.occupied for p in right} == {regions["b"]}


def test_board_json_roundtrip():
    b = grid_from_cells([(0, 0), (1, 0), (2, 0), (2, 1)])
    assert board_from_obj(board_to_obj(b)) == b
    plain = build_cycle(4)
    assert board_from_obj(board_to_obj(plain)) == plain
    with pytest.raises(ValueError):
        board_from_obj({"vertices": [0]})


def test_board_dot_output():
    text = board_to_dot(build_path(2))
    assert "graph board {" in text and "0 -- 1;" in text
