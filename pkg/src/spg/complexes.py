"""Simplicial complexes with a Left/Right vertex bipartition, and square-free ideals.

The two central types are :class:`LabeledComplex` (a simplicial complex whose
vertices are assigned to player L or player R) and :class:`SquareFreeIdeal`
(a combinatorial stand-in for a square-free monomial ideal: an ordered variable
list plus an antichain of generating supports).  Four conversions connect them:

    facet_ideal    complex -> ideal   generators are the facets
    sr_ideal       complex -> ideal   generators are the minimal nonfaces
    facet_complex  ideal -> complex   facets are the minimal generators
    sr_complex     ideal -> complex   faces are the subsets containing no generator

Two degenerate complexes are distinguished.  The void complex has no faces at
all and is stored with an empty facet set.  The complex whose only face is the
empty set stores the single facet ``frozenset()``.  On the ideal side the unit
ideal is stored as the single empty generator; with that convention all four
conversions above are exact mutual inverses, including the degenerate cases.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional

PARTS = ("L", "R")

Face = frozenset


def _norm_faces(faces: Iterable[Iterable[str]]) -> set[frozenset[str]]:
    return {frozenset(f) for f in faces}


def _maximal(sets: set[frozenset[str]]) -> frozenset[frozenset[str]]:
    return frozenset(s for s in sets if not any(s < t for t in sets))


def _minimal(sets: set[frozenset[str]]) -> frozenset[frozenset[str]]:
    return frozenset(s for s in sets if not any(t < s for t in sets))


def canonical_vertex_order(names: Iterable[str], part: Mapping[str, str]) -> tuple[str, ...]:
    """All L-vertices before all R-vertices, each block sorted lexicographically."""
    left = sorted(n for n in names if part[n] == "L")
    right = sorted(n for n in names if part[n] == "R")
    return tuple(left + right)


@dataclass(frozen=True, eq=False)
class LabeledComplex:
    """A simplicial complex over named vertices, each owned by player L or R.

    Instances are built through :func:`from_facets`, which normalises the facet
    family to an inclusion-maximal antichain and derives the canonical vertex
    order.  Every vertex appears in at least one facet.
    """

    vertices: tuple[str, ...]
    part: Mapping[str, str]
    facets: frozenset[frozenset[str]]

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_empty(self) -> bool:
        """True when the complex has no vertices (the void and {{}} complexes)."""
        return not self.vertices

    @property
    def left(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.part[v] == "L")

    @property
    def right(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.part[v] == "R")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledComplex):
            return NotImplemented
        return self.facets == other.facets and dict(self.part) == dict(other.part)

    def __hash__(self) -> int:
        return hash((self.facets, frozenset(self.part.items())))

    def __repr__(self) -> str:
        if self.is_void:
            return "LabeledComplex(void)"
        names = sorted("".join(sorted(f)) if f else "{}" for f in self.facets)
        return f"LabeledComplex<{','.join(names)}>"


def from_facets(facets: Iterable[Iterable[str]], part: Mapping[str, str] | None = None) -> LabeledComplex:
    """Build a complex from a facet family, dropping dominated faces.

    An empty family yields the void complex.  A family whose maximal element is
    the empty set yields the complex whose only face is the empty set.  Every
    vertex of the normalised facets must carry a part in ``part``; entries for
    unused names are ignored.
    """
    part = dict(part or {})
    maximal = _maximal(_norm_faces(facets))
    used = sorted(set().union(*maximal)) if maximal else []
    for v in used:
        if v not in part:
            raise ValueError(f"vertex {v!r} has no part assignment")
        if part[v] not in PARTS:
            raise ValueError(f"vertex {v!r} has part {part[v]!r}, expected one of {PARTS}")
    kept = {v: part[v] for v in used}
    order = canonical_vertex_order(used, kept)
    return LabeledComplex(order, kept, maximal)


def void_complex() -> LabeledComplex:
    return from_facets([])


def empty_face_complex() -> LabeledComplex:
    """The complex whose single face is the empty set."""
    return from_facets([[]])


def faces(delta: LabeledComplex) -> frozenset[frozenset[str]]:
    """All faces, i.e. all subsets of facets.  Empty for the void complex."""
    out: set[frozenset[str]] = set()
    for f in delta.facets:
        fl = sorted(f)
        for k in range(len(fl) + 1):
            out.update(frozenset(c) for c in combinations(fl, k))
    return frozenset(out)


def dimension(delta: LabeledComplex) -> int:
    if delta.is_void:
        raise ValueError("the void complex has no faces and no dimension")
    return max(len(f) for f in delta.facets) - 1


def is_pure(delta: LabeledComplex) -> bool:
    """True when all facets share one dimension (vacuously true for void)."""
    return len({len(f) for f in delta.facets}) <= 1


def k_skeleton(delta: LabeledComplex, k: int) -> LabeledComplex:
    """The complex generated by all k-dimensional faces."""
    if delta.is_void:
        raise ValueError("the void complex has no skeleton")
    if not 0 <= k <= dimension(delta):
        raise ValueError(f"k={k} out of range for a complex of dimension {dimension(delta)}")
    wanted = {f for f in faces(delta) if len(f) == k + 1}
    return from_facets(wanted, delta.part)


def minimal_nonfaces(delta: LabeledComplex) -> frozenset[frozenset[str]]:
    """Inclusion-minimal subsets of the vertex set that are not faces.

    A simplex has none.  The void complex has exactly the empty set: nothing at
    all is a face of it.
    """
    face_set = faces(delta)
    verts = delta.vertices
    out: set[frozenset[str]] = set()
    for size in range(len(verts) + 1):
        for combo in combinations(verts, size):
            cand = frozenset(combo)
            if cand in face_set:
                continue
            if any(cand - {v} not in face_set for v in cand):
                continue
            out.add(cand)
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class SquareFreeIdeal:
    """An ordered variable list plus an antichain of square-free generators.

    The zero ideal has no generators.  The unit ideal is stored as the single
    empty generator.  Variables may be absent from every generator; the list is
    the ambient ring, not the support.
    """

    variables: tuple[str, ...]
    part: Mapping[str, str]
    generators: frozenset[frozenset[str]]

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return frozenset() in self.generators

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquareFreeIdeal):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.generators == other.generators
            and dict(self.part) == dict(other.part)
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.generators))

    def __repr__(self) -> str:
        gens = sorted("".join(sorted(g)) if g else "1" for g in self.generators)
        return f"SquareFreeIdeal({','.join(self.variables)}; <{','.join(gens)}>)"


def ideal(
    variables: Iterable[str],
    part: Mapping[str, str],
    generators: Iterable[Iterable[str]],
) -> SquareFreeIdeal:
    """Normalise a generating family to its minimal antichain."""
    variables = tuple(variables)
    vset = set(variables)
    if len(vset) != len(variables):
        raise ValueError("duplicate variable names")
    gens = _norm_faces(generators)
    for g in gens:
        extra = g - vset
        if extra:
            raise ValueError(f"generator uses undeclared variables {sorted(extra)}")
    part = {v: part[v] for v in variables}
    for v, p in part.items():
        if p not in PARTS:
            raise ValueError(f"variable {v!r} has part {p!r}, expected one of {PARTS}")
    return SquareFreeIdeal(variables, part, _minimal(gens))


def facet_ideal(delta: LabeledComplex) -> SquareFreeIdeal:
    """Generators are the facets; variables are the complex's vertices."""
    return ideal(delta.vertices, delta.part, delta.facets)


def sr_ideal(delta: LabeledComplex) -> SquareFreeIdeal:
    """Generators are the minimal nonfaces; variables are the complex's vertices."""
    return ideal(delta.vertices, delta.part, minimal_nonfaces(delta))


def facet_complex(ideal_: SquareFreeIdeal) -> LabeledComplex:
    """The complex whose facets are the ideal's minimal generators."""
    return from_facets(ideal_.generators, ideal_.part)


def sr_complex(ideal_: SquareFreeIdeal) -> LabeledComplex:
    """The complex whose faces are the variable subsets containing no generator.

    Facets are computed as the maximal generator-avoiding sets: each generator
    must be broken by removing at least one of its variables.
    """
    if ideal_.is_unit:
        return void_complex()
    candidates: set[frozenset[str]] = {frozenset(ideal_.variables)}
    for g in sorted(ideal_.generators, key=lambda s: tuple(sorted(s))):
        nxt: set[frozenset[str]] = set()
        for cand in candidates:
            if g <= cand:
                nxt.update(cand - {v} for v in g)
            else:
                nxt.add(cand)
        candidates = nxt
    return from_facets(_maximal(candidates), ideal_.part)


def is_flag(delta: LabeledComplex) -> bool:
    """True when every minimal nonface has exactly two vertices."""
    return all(len(n) == 2 for n in minimal_nonfaces(delta))


def is_simplex(delta: LabeledComplex) -> bool:
    """True when the vertex set itself is a face (a single full facet)."""
    return not delta.is_void and delta.facets == frozenset({frozenset(delta.vertices)})


def has_isolated_vertex(delta: LabeledComplex) -> bool:
    return any(len(f) == 1 for f in delta.facets)


def independence_complex(
    vertices: Iterable[str],
    edges: Iterable[Iterable[str]],
    part: Mapping[str, str],
) -> LabeledComplex:
    """The complex of independent sets of a graph given by vertices and edges."""
    verts = tuple(dict.fromkeys(vertices))
    edge_set = {frozenset(e) for e in edges}
    for e in edge_set:
        if len(e) != 2 or not e <= set(verts):
            raise ValueError(f"bad edge {sorted(e)}")
    adj: dict[str, set[str]] = {v: set() for v in verts}
    for a, b in (sorted(e) for e in edge_set):
        adj[a].add(b)
        adj[b].add(a)

    def independent(sub: tuple[str, ...]) -> bool:
        chosen = set(sub)
        return all(not adj[v] & chosen for v in sub)

    # brute force is fine at the scales this is used at (basic-position graphs)
    maximal = set()
    for size in range(len(verts) + 1):
        for combo in combinations(verts, size):
            if not independent(combo):
                continue
            chosen = set(combo)
            if all(v in chosen or adj[v] & chosen for v in verts):
                maximal.add(frozenset(combo))
    return from_facets(maximal, part)


def relabel(delta: LabeledComplex, mapping: Mapping[str, str]) -> LabeledComplex:
    """Rename vertices through an injective mapping, carrying parts along."""
    missing = [v for v in delta.vertices if v not in mapping]
    if missing:
        raise ValueError(f"mapping misses vertices {missing}")
    if len({mapping[v] for v in delta.vertices}) != len(delta.vertices):
        raise ValueError("mapping is not injective on the vertex set")
    part = {mapping[v]: delta.part[v] for v in delta.vertices}
    return from_facets([{mapping[v] for v in f} for f in delta.facets], part)


def _vertex_signature(delta: LabeledComplex, v: str) -> tuple:
    sizes = sorted(len(f) for f in delta.facets if v in f)
    return (delta.part[v], tuple(sizes))


def are_isomorphic(a: LabeledComplex, b: LabeledComplex) -> Optional[dict[str, str]]:
    """A part-preserving vertex bijection carrying facets onto facets, or None.

    Deterministic: candidates are tried in canonical vertex order, so equal
    inputs always produce the same witness bijection.
    """
    if a.is_void != b.is_void:
        return None
    if len(a.vertices) != len(b.vertices) or len(a.facets) != len(b.facets):
        return None
    if len(a.left) != len(b.left) or len(a.right) != len(b.right):
        return None
    if sorted(len(f) for f in a.facets) != sorted(len(f) for f in b.facets):
        return None
    sig_a = {v: _vertex_signature(a, v) for v in a.vertices}
    sig_b = {v: _vertex_signature(b, v) for v in b.vertices}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None

    b_facets = b.facets
    cofacet_a = {
        (u, v): any(u in f and v in f for f in a.facets)
        for u in a.vertices
        for v in a.vertices
    }

    order = a.vertices
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        if sig_a[v] != sig_b[w]:
            return False
        for u, x in assignment.items():
            share = any(x in f and w in f for f in b_facets)
            if cofacet_a[(u, v)] != share:
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            mapped = frozenset(frozenset(assignment[v] for v in f) for f in a.facets)
            return mapped == b_facets
        v = order[i]
        for w in b.vertices:
            if w in used or not consistent(v, w):
                continue
            assignment[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del assignment[v]
            used.remove(w)
        return False

    if extend(0):
        return dict(assignment)
    return None


# ---------------------------------------------------------------------------
# JSON interchange


def _facet_sort_key(delta: LabeledComplex):
    index = {v: i for i, v in enumerate(delta.vertices)}

    def key(f: frozenset[str]) -> tuple:
        return tuple(sorted(index[v] for v in f))

    return key


def complex_to_obj(delta: LabeledComplex) -> dict:
    key = _facet_sort_key(delta)
    facets = [f for f in delta.facets if f]
    return {
        "vertices": [{"id": v, "part": delta.part[v]} for v in delta.vertices],
        "facets": [sorted(f, key=lambda v: delta.vertices.index(v)) for f in sorted(facets, key=key)],
        "void": delta.is_void,
    }


def complex_from_obj(obj: Mapping) -> LabeledComplex:
    try:
        raw_vertices = obj["vertices"]
        raw_facets = obj["facets"]
        void = bool(obj.get("void", False))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed complex object: {exc}") from exc
    part: dict[str, str] = {}
    for entry in raw_vertices:
        vid, p = entry["id"], entry["part"]
        if vid in part:
            raise ValueError(f"duplicate vertex {vid!r}")
        part[vid] = p
    facets = [list(f) for f in raw_facets]
    if void:
        if facets or part:
            raise ValueError("a void complex must have no vertices and no facets")
        return void_complex()
    if not facets:
        if part:
            raise ValueError("vertices listed but no facet covers them")
        return empty_face_complex()
    delta = from_facets(facets, part)
    if set(delta.vertices) != set(part):
        unused = sorted(set(part) - set(delta.vertices))
        raise ValueError(f"vertices {unused} appear in no facet")
    return delta


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def complex_to_json(delta: LabeledComplex) -> str:
    return dumps(complex_to_obj(delta))


def complex_from_json(text: str) -> LabeledComplex:
    return complex_from_obj(json.loads(text))


def ideal_to_obj(ideal_: SquareFreeIdeal) -> dict:
    index = {v: i for i, v in enumerate(ideal_.variables)}
    gens = sorted(ideal_.generators, key=lambda g: tuple(sorted(index[v] for v in g)))
    return {
        "variables": list(ideal_.variables),
        "generators": [sorted(g, key=lambda v: index[v]) for g in gens],
    }


def ideal_to_json(ideal_: SquareFreeIdeal) -> str:
    return dumps(ideal_to_obj(ideal_))
