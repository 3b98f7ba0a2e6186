"""Game boards (finite simple graphs), pieces, placements, and embeddings.

Boards carry integer vertex ids, optional grid coordinates, and optional
role labels produced by the cycle constructions.  Pieces are connected graphs
owned by one player; a placement is the vertex image of an embedding of a
piece into a board.  Embeddings are not-necessarily-induced subgraph
embeddings found by anchored backtracking, deduplicated by occupied set.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .complexes import LabeledComplex, canonical_vertex_order, dimension, has_isolated_vertex


class BudgetExceeded(RuntimeError):
    """Raised when a search runs past its deadline."""


Edge = tuple[int, int]


def _norm_edge(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"loop edge at vertex {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class Board:
    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    coords: Optional[Mapping[int, tuple[int, int]]] = None
    cycle_labels: Optional[Mapping[int, tuple]] = None
    _adj: dict = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            if a not in vset or b not in vset:
                raise ValueError(f"edge ({a},{b}) uses unknown vertices")
            adj[a].add(b)
            adj[b].add(a)
        if self.coords is not None:
            vals = list(self.coords.values())
            if len(set(vals)) != len(vals):
                raise ValueError("coords are not injective")
            for a, b in self.edges:
                (ra, ca), (rb, cb) = self.coords[a], self.coords[b]
                if abs(ra - rb) + abs(ca - cb) != 1:
                    raise ValueError(f"edge ({a},{b}) is not orthogonally adjacent in coords")
        object.__setattr__(self, "_adj", {v: tuple(sorted(n)) for v, n in adj.items()})
        object.__setattr__(self, "_hash", hash((self.vertices, self.edges)))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Board):
            return NotImplemented
        mine = dict(self.coords) if self.coords is not None else None
        theirs = dict(other.coords) if other.coords is not None else None
        return self.vertices == other.vertices and self.edges == other.edges and mine == theirs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Board(n={len(self.vertices)}, m={len(self.edges)})"


def board(
    vertices: Iterable[int],
    edges: Iterable[tuple[int, int]],
    coords: Mapping[int, tuple[int, int]] | None = None,
    cycle_labels: Mapping[int, tuple] | None = None,
) -> Board:
    verts = tuple(sorted(set(vertices)))
    es = frozenset(_norm_edge(a, b) for a, b in edges)
    return Board(verts, es, dict(coords) if coords else None, dict(cycle_labels) if cycle_labels else None)


def empty_board() -> Board:
    return board([], [])


def build_path(n: int) -> Board:
    if n < 1:
        raise ValueError("a path needs at least one vertex")
    return board(range(n), [(i, i + 1) for i in range(n - 1)])


def build_cycle(n: int) -> Board:
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    return board(range(n), [(i, (i + 1) % n) for i in range(n)])


def build_grid(rows: int, cols: int) -> Board:
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    return grid_from_cells(cells)


def grid_from_cells(cells: Sequence[tuple[int, int]]) -> Board:
    """A grid board over an arbitrary cell set, ids assigned in sorted cell order."""
    uniq = sorted(set((int(r), int(c)) for r, c in cells))
    if len(uniq) != len(cells):
        raise ValueError("duplicate cells")
    index = {cell: i for i, cell in enumerate(uniq)}
    edges = []
    for (r, c), i in index.items():
        for nb in ((r + 1, c), (r, c + 1)):
            if nb in index:
                edges.append((i, index[nb]))
    return board(range(len(uniq)), edges, coords={i: cell for cell, i in index.items()})


def disjoint_union(*boards: Board) -> Board:
    """Relabel components to consecutive ids.  Coordinates are dropped; role
    labels are kept (they describe structure, not ids)."""
    verts: list[int] = []
    edges: list[Edge] = []
    labels: dict[int, tuple] = {}
    offset = 0
    for b in boards:
        remap = {v: offset + i for i, v in enumerate(b.vertices)}
        verts.extend(remap[v] for v in b.vertices)
        edges.extend((remap[a], remap[x]) for a, x in b.edges)
        if b.cycle_labels:
            labels.update({remap[v]: lab for v, lab in b.cycle_labels.items()})
        offset += len(b.vertices)
    return board(verts, edges, cycle_labels=labels or None)


# ---------------------------------------------------------------------------
# Pieces and placements


@dataclass(frozen=True, eq=False)
class Piece:
    """A connected graph shape owned by one player."""

    player: str
    vertices: tuple[int, ...]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.player not in ("L", "R"):
            raise ValueError(f"unknown player {self.player!r}")
        if not self.vertices:
            raise ValueError("a piece needs at least one vertex")
        adj = _adjacency(self.vertices, self.edges)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise ValueError("piece graph is not connected")

    def __repr__(self) -> str:
        return f"Piece({self.player}, n={len(self.vertices)}, m={len(self.edges)})"


def _adjacency(vertices: Sequence[int], edges: Iterable[Edge]) -> dict[int, tuple[int, ...]]:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return {v: tuple(sorted(n)) for v, n in adj.items()}


def vertex_piece(player: str) -> Piece:
    return Piece(player, (0,), frozenset())


def domino_piece(player: str) -> Piece:
    return Piece(player, (0, 1), frozenset({(0, 1)}))


def cycle_piece(n: int, player: str) -> Piece:
    if n < 3:
        raise ValueError("a cycle needs at least three vertices")
    return Piece(player, tuple(range(n)), frozenset(_norm_edge(i, (i + 1) % n) for i in range(n)))


def _cycle_with_attached_cycles(outer_len: int, inner_len: int, count: int):
    """Raw graph data for a cycle with ``count`` inner cycles, one joined (by
    vertex identification) to each of ``count`` consecutive outer vertices.

    Returns (num_vertices, edges, attachment_ids); the attachment ids are the
    consecutive outer vertices 0..count-1.
    """
    if count >= outer_len:
        raise ValueError("more attachment vertices than outer cycle vertices")
    edges = [_norm_edge(i, (i + 1) % outer_len) for i in range(outer_len)]
    nxt = outer_len
    for attach in range(count):
        ring = [attach] + list(range(nxt, nxt + inner_len - 1))
        nxt += inner_len - 1
        edges.extend(_norm_edge(ring[i], ring[(i + 1) % inner_len]) for i in range(inner_len))
    return nxt, edges, list(range(count))


def ringed_cycle_piece(outer_len: int, inner_len: int, count: int, player: str) -> Piece:
    n, edges, _ = _cycle_with_attached_cycles(outer_len, inner_len, count)
    return Piece(player, tuple(range(n)), frozenset(edges))


@dataclass(frozen=True, order=True)
class Placement:
    """One piece placed on a board: the owning player plus the occupied set."""

    player: str
    occupied: frozenset[int] = field(compare=False)
    sort_key: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sort_key", tuple(sorted(self.occupied)))


def placement(player: str, occupied: Iterable[int]) -> Placement:
    occ = frozenset(occupied)
    if not occ:
        raise ValueError("a placement must occupy at least one vertex")
    return Placement(player, occ)


# ---------------------------------------------------------------------------
# Subgraph embedding search


def _search_order(vertices: Sequence[int], adj: Mapping[int, tuple[int, ...]]) -> list[int]:
    """Static vertex order: start at a maximum-degree vertex, then repeatedly
    take the vertex with the most already-ordered neighbours."""
    remaining = set(vertices)
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        if not order:
            v = max(remaining, key=lambda u: (len(adj[u]), -u))
        else:
            v = max(remaining, key=lambda u: (sum(1 for w in adj[u] if w in placed), len(adj[u]), -u))
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


def _embeddings(
    p_vertices: Sequence[int],
    p_adj: Mapping[int, tuple[int, ...]],
    target: Board,
    induced: bool = False,
    deadline: float | None = None,
) -> Iterator[dict[int, int]]:
    """Yield every embedding of the pattern into the target board.

    Pattern edges must map to target edges; with ``induced`` pattern non-edges
    must map to target non-edges as well.  Connected patterns only.
    """
    if not p_vertices:
        yield {}
        return
    order = _search_order(p_vertices, p_adj)
    pos = {v: i for i, v in enumerate(order)}
    # for each vertex, the neighbours that come earlier in the order
    earlier = {v: [w for w in p_adj[v] if pos[w] < pos[v]] for v in order}
    non_nbrs = {}
    if induced:
        for v in order:
            non_nbrs[v] = [w for w in order if pos[w] < pos[v] and w not in p_adj[v]]
    t_adj = {v: set(target.neighbors(v)) for v in target.vertices}
    image: dict[int, int] = {}
    used: set[int] = set()
    ticks = 0

    def candidates(v: int) -> Iterable[int]:
        prior = earlier[v]
        if not prior:
            return [w for w in target.vertices if len(t_adj[w]) >= len(p_adj[v])]
        sets = sorted((t_adj[image[u]] for u in prior), key=len)
        base = set(sets[0])
        for s in sets[1:]:
            base &= s
        return sorted(
            w for w in base if w not in used and len(t_adj[w]) >= len(p_adj[v])
        )

    def extend(i: int) -> Iterator[dict[int, int]]:
        nonlocal ticks
        ticks += 1
        if deadline is not None and ticks % 2048 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("embedding search ran past its deadline")
        if i == len(order):
            yield dict(image)
            return
        v = order[i]
        for w in candidates(v):
            if induced and any(image[u] in t_adj[w] for u in non_nbrs[v]):
                continue
            image[v] = w
            used.add(w)
            yield from extend(i + 1)
            del image[v]
            used.remove(w)

    yield from extend(0)


def piece_placements(target: Board, piece: Piece, deadline: float | None = None) -> tuple[Placement, ...]:
    """All distinct occupied sets realising the piece on the board, in
    canonical (sorted occupied tuple) order."""
    p_adj = _adjacency(piece.vertices, piece.edges)
    images: set[frozenset[int]] = set()
    for emb in _embeddings(piece.vertices, p_adj, target, induced=False, deadline=deadline):
        images.add(frozenset(emb.values()))
    return tuple(placement(piece.player, img) for img in sorted(images, key=sorted))


def induced_embeddings(
    target: Board,
    sub_vertices: Sequence[int],
    sub_edges: Iterable[Edge],
    limit: int | None = None,
    deadline: float | None = None,
) -> list[dict[int, int]]:
    """Embeddings of an induced pattern (vertices plus exact edge set) into the
    board, non-edges required to stay non-edges.  Disconnected patterns are
    handled component by component with a cross-component non-adjacency check."""
    comps = _components_of(sub_vertices, sub_edges)
    sub_adj = _adjacency(sub_vertices, sub_edges)
    t_adj = {v: set(target.neighbors(v)) for v in target.vertices}
    results: list[dict[int, int]] = []

    def place(ci: int, acc: dict[int, int]) -> None:
        if limit is not None and len(results) >= limit:
            return
        if ci == len(comps):
            results.append(dict(acc))
            return
        comp = sorted(comps[ci])
        comp_adj = {v: tuple(w for w in sub_adj[v] if w in comps[ci]) for v in comp}
        for emb in _embeddings(comp, comp_adj, target, induced=True, deadline=deadline):
            vals = set(emb.values())
            if vals & set(acc.values()):
                continue
            # components are mutually non-adjacent in the pattern, so their
            # images must not touch either
            if any(t_adj[x] & vals for x in acc.values()):
                continue
            place(ci + 1, {**acc, **emb})
            if limit is not None and len(results) >= limit:
                return

    place(0, {})
    return results


def _components_of(vertices: Sequence[int], edges: Iterable[Edge]) -> list[set[int]]:
    adj = _adjacency(vertices, edges)
    seen: set[int] = set()
    comps: list[set[int]] = []
    for v in vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def components(b: Board) -> list[frozenset[int]]:
    """Connected components, sorted by smallest contained id."""
    comps = _components_of(b.vertices, b.edges)
    return sorted((frozenset(c) for c in comps), key=min)


# ---------------------------------------------------------------------------
# Distance

_DIST_CACHE: dict[tuple, object] = {}


def distance(b: Board, s1: Iterable[int], s2: Iterable[int]) -> int | float:
    """Length of a shortest path between two nonempty vertex sets on the bare
    board graph, ignoring occupancy.  ``inf`` when no path exists."""
    a, c = frozenset(s1), frozenset(s2)
    if not a or not c:
        raise ValueError("distance needs nonempty vertex sets")
    key = (b, frozenset((a, c)))
    hit = _DIST_CACHE.get(key)
    if hit is not None:
        return hit  # type: ignore[return-value]
    if a & c:
        _DIST_CACHE[key] = 0
        return 0
    frontier = set(a)
    seen = set(a)
    dist = 0
    result: int | float = float("inf")
    while frontier:
        dist += 1
        nxt: set[int] = set()
        for v in frontier:
            for w in b.neighbors(v):
                if w in seen:
                    continue
                if w in c:
                    _DIST_CACHE[key] = dist
                    return dist
                seen.add(w)
                nxt.add(w)
        frontier = nxt
    _DIST_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# The cycle-assembly board built from an illegal complex

OUTER_EXTRA = {"L": 4, "R": 5}


def default_edge_labeling(gamma: LabeledComplex) -> dict[frozenset[str], int]:
    """Edges of the 1-skeleton labelled 1..k in canonical lexicographic order."""
    index = {v: i for i, v in enumerate(gamma.vertices)}
    edges = {f for f in _one_faces(gamma)}
    ordered = sorted(edges, key=lambda e: tuple(sorted(index[v] for v in e)))
    return {e: i + 1 for i, e in enumerate(ordered)}


def _one_faces(gamma: LabeledComplex) -> set[frozenset[str]]:
    out: set[frozenset[str]] = set()
    for f in gamma.facets:
        out.update(frozenset(p) for p in combinations(sorted(f), 2))
    return out


def check_edge_labeling(gamma: LabeledComplex, labeling: Mapping[frozenset[str], int]) -> dict[frozenset[str], int]:
    edges = _one_faces(gamma)
    lab = {frozenset(e): v for e, v in labeling.items()}
    if set(lab) != edges:
        raise ValueError("labeling domain does not match the 1-dimensional faces")
    if sorted(lab.values()) != list(range(1, len(edges) + 1)):
        raise ValueError("labels must be a bijection onto 1..k")
    return lab


def gamma_board(
    gamma: LabeledComplex,
    edge_labeling: Mapping[frozenset[str], int] | None = None,
) -> Board:
    """The board realising ``gamma`` as an illegal complex.

    One large cycle per vertex of ``gamma`` (length n**4+4 for an L-vertex,
    n**4+5 for an R-vertex, n the number of vertices), each with n-1
    consecutive connection vertices joined to inner cycles of length n**3.
    An edge labelled l becomes a path of l new centre vertices whose ends are
    identified with the matching connection vertices.  An empty complex gives
    an empty board.
    """
    if gamma.is_empty:
        return empty_board()
    if has_isolated_vertex(gamma):
        bad = sorted(min(f) for f in gamma.facets if len(f) == 1)
        raise ValueError(
            f"complex has singleton facet(s) {bad}: a lone always-forbidden move "
            "cannot arise from piece patterns alone, so no placement-invariant "
            "ruleset realises it"
        )
    labeling = (
        default_edge_labeling(gamma)
        if edge_labeling is None
        else check_edge_labeling(gamma, edge_labeling)
    )
    names = gamma.vertices
    n = len(names)
    inner_len = n**3
    nxt = 0
    edges: list[Edge] = []
    labels: dict[int, tuple] = {}
    conn: dict[tuple[str, str], int] = {}
    for name in names:
        outer_len = n**4 + OUTER_EXTRA[gamma.part[name]]
        count, local_edges, attach = _cycle_with_attached_cycles(outer_len, inner_len, n - 1)
        remap = {v: nxt + v for v in range(count)}
        edges.extend((remap[a], remap[bb]) for a, bb in local_edges)
        others = [m for m in names if m != name]
        for v in range(count):
            if v in attach:
                other = others[attach.index(v)]
                labels[remap[v]] = ("connection", name, other)
                conn[(name, other)] = remap[v]
            elif v < outer_len:
                labels[remap[v]] = ("outer", name)
            else:
                which = others[(v - outer_len) // (inner_len - 1)]
                labels[remap[v]] = ("inner", name, which)
        nxt += count
    for e in sorted(labeling, key=labeling.get):
        l = labeling[e]
        u, v = sorted(e, key=names.index)
        path = [conn[(u, v)]] + list(range(nxt, nxt + l)) + [conn[(v, u)]]
        for c in range(nxt, nxt + l):
            labels[c] = ("centre", l)
        nxt += l
        edges.extend(_norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1))
    return board(range(nxt), edges, cycle_labels=labels)


def assembly_regions(b: Board) -> dict[str, frozenset[int]]:
    """Map each complex-vertex name to the ids of its cycle assembly (outer,
    connection and inner vertices; centre path vertices belong to no region)."""
    regions: dict[str, set[int]] = {}
    if not b.cycle_labels:
        return {}
    for vid, lab in b.cycle_labels.items():
        if lab[0] in ("outer", "connection", "inner"):
            regions.setdefault(lab[1], set()).add(vid)
    return {name: frozenset(ids) for name, ids in regions.items()}


def assembly_board(name: str, part: str, n: int) -> Board:
    """One free-standing cycle assembly labelled with ``name``: the component
    added for a complex vertex that lies in every facet of the legal complex
    being realised.  Shape matches the piece of the owning player."""
    if n < 2:
        raise ValueError("assemblies need n >= 2")
    outer_len = n**4 + OUTER_EXTRA[part]
    inner_len = n**3
    count, edges, attach = _cycle_with_attached_cycles(outer_len, inner_len, n - 1)
    labels: dict[int, tuple] = {}
    for v in range(count):
        if v in attach:
            labels[v] = ("connection", name, attach.index(v))
        elif v < outer_len:
            labels[v] = ("outer", name)
        else:
            labels[v] = ("inner", name, (v - outer_len) // (inner_len - 1))
    return board(range(count), edges, cycle_labels=labels)


def gamma_piece(n: int, player: str) -> Piece:
    """The piece played by ``player`` in the distance game for an n-vertex
    illegal complex: an (n**4+4 or +5)-cycle with n-1 inner n**3 cycles."""
    if n < 2:
        raise ValueError("distance-game pieces need n >= 2")
    return ringed_cycle_piece(n**4 + OUTER_EXTRA[player], n**3, n - 1, player)


def simple_cycle_lengths(b: Board, restrict: Iterable[int] | None = None) -> set[int]:
    """Lengths of all simple cycles, optionally within an induced vertex subset.

    Exhaustive DFS enumeration; intended for the small connection/centre
    subgraphs checked by the construction invariants.
    """
    allowed = set(b.vertices) if restrict is None else set(restrict)
    adj = {v: [w for w in b.neighbors(v) if w in allowed] for v in allowed}
    lengths: set[int] = set()

    def walk(start: int, v: int, path: list[int], on_path: set[int]) -> None:
        for w in adj[v]:
            if w == start and len(path) >= 3:
                lengths.add(len(path))
            elif w > start and w not in on_path:
                path.append(w)
                on_path.add(w)
                walk(start, w, path, on_path)
                on_path.remove(w)
                path.pop()

    for s in sorted(allowed):
        walk(s, s, [s], {s})
    return lengths


# ---------------------------------------------------------------------------
# Interchange formats


def board_to_obj(b: Board) -> dict:
    obj: dict = {
        "vertices": list(b.vertices),
        "edges": [list(e) for e in sorted(b.edges)],
    }
    if b.coords is not None:
        obj["coords"] = {str(v): list(b.coords[v]) for v in b.vertices if v in b.coords}
    return obj


def board_from_obj(obj: Mapping) -> Board:
    try:
        vertices = [int(v) for v in obj["vertices"]]
        edges = [(int(a), int(b)) for a, b in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed board object: {exc}") from exc
    coords = None
    if "coords" in obj and obj["coords"] is not None:
        coords = {int(k): (int(r), int(c)) for k, (r, c) in obj["coords"].items()}
    return board(vertices, edges, coords=coords)


def board_to_dot(b: Board, name: str = "board") -> str:
    lines = [f"graph {name} {{"]
    for v in b.vertices:
        attrs = ""
        if b.coords is not None and v in b.coords:
            r, c = b.coords[v]
            attrs = f' [pos="{c},{-r}!"]'
        lines.append(f"  {v}{attrs};")
    for a, c in sorted(b.edges):
        lines.append(f"  {a} -- {c};")
    lines.append("}")
    return "\n".join(lines) + "\n"
