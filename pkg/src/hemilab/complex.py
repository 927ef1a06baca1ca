"""Abstract simplicial complexes with typed vertices.

Complexes are stored by their facets (maximal simplices).  A simplex is a
``frozenset`` of integer vertex ids; the empty frozenset is the empty simplex
and belongs to every complex, including the complex with no vertices.
"""

from __future__ import annotations

import json
from collections import defaultdict
from itertools import combinations
from typing import Iterable, Mapping

Simplex = frozenset

EMPTY: frozenset = frozenset()


class ComplexError(ValueError):
    """Raised on membership violations or incompatible join factors."""


def maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    """Inclusion-maximal members of ``sets`` (duplicates removed)."""
    uniq = sorted(set(sets), key=lambda s: (-len(s), sorted(s)))
    kept: list[frozenset] = []
    for s in uniq:
        if not any(s <= k for k in kept):
            kept.append(s)
    return kept


def sorted_simplex(s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


def _skey(s: frozenset) -> tuple:
    return (len(s), sorted(s))


class SimplicialComplex:
    """Immutable facet-based simplicial complex.

    Parameters
    ----------
    facets : iterable of vertex-id collections
        Generating simplices; non-maximal ones are dropped.
    vtype : mapping vertex id -> type
        Must cover every vertex that occurs in a facet.  Extra vertices
        (isolated, not in any facet) are not allowed; add them as 0-simplices.
    labels : optional mapping vertex id -> str
    typeset : optional explicit type set (defaults to the types in use)
    """

    __slots__ = ("facets", "vtype", "labels", "typeset", "_index", "_simplices", "_hash")

    def __init__(self, facets: Iterable[Iterable[int]], vtype: Mapping[int, int],
                 labels: Mapping[int, str] | None = None, typeset: Iterable[int] | None = None):
        fs = maximal(frozenset(f) for f in facets)
        # the complex with no vertices still holds the empty simplex
        if not fs:
            fs = [EMPTY]
        if len(fs) > 1 and EMPTY in fs:
            fs = [f for f in fs if f]
        verts = set().union(*fs)
        missing = verts - set(vtype)
        if missing:
            raise ComplexError(f"vertices without type: {sorted(missing)[:5]}")
        self.facets: tuple[frozenset, ...] = tuple(sorted(fs, key=_skey))
        self.vtype: dict[int, int] = {v: vtype[v] for v in sorted(verts)}
        lab = labels or {}
        self.labels: dict[int, str] = {v: lab.get(v, str(v)) for v in self.vtype}
        if typeset is None:
            typeset = set(self.vtype.values())
        self.typeset: tuple[int, ...] = tuple(sorted(typeset))
        index: dict[int, list[int]] = defaultdict(list)
        for i, f in enumerate(self.facets):
            for v in f:
                index[v].append(i)
        self._index = {v: tuple(ix) for v, ix in index.items()}
        self._simplices: tuple[frozenset, ...] | None = None
        self._hash: int | None = None

    # -- basic queries -------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self.vtype)

    def is_empty(self) -> bool:
        """True for the complex whose only simplex is the empty one."""
        return not self.vtype

    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def facet_ids_containing(self, sigma: Iterable[int]) -> tuple[int, ...]:
        sigma = frozenset(sigma)
        if not sigma:
            return tuple(range(len(self.facets)))
        best = None
        for v in sigma:
            ix = self._index.get(v)
            if ix is None:
                return ()
            if best is None or len(ix) < len(best):
                best = ix
        return tuple(i for i in best if sigma <= self.facets[i])

    def facets_containing(self, sigma: Iterable[int]) -> list[frozenset]:
        return [self.facets[i] for i in self.facet_ids_containing(sigma)]

    def __contains__(self, sigma) -> bool:
        sigma = frozenset(sigma)
        if not sigma:
            return True
        return bool(self.facet_ids_containing(sigma))

    def simplices(self) -> tuple[frozenset, ...]:
        """All simplices including the empty one, sorted by (dim, vertices)."""
        if self._simplices is None:
            out: set[frozenset] = set()
            for f in self.facets:
                fl = sorted(f)
                for k in range(len(fl) + 1):
                    out.update(frozenset(c) for c in combinations(fl, k))
            self._simplices = tuple(sorted(out, key=_skey))
        return self._simplices

    def simplices_of_dim(self, k: int) -> list[frozenset]:
        return [s for s in self.simplices() if len(s) == k + 1]

    def f_vector(self) -> tuple[int, ...]:
        """Number of simplices in dimensions 0..dim (empty simplex excluded)."""
        d = self.dim()
        counts = [0] * (d + 1)
        for s in self.simplices():
            if s:
                counts[len(s) - 1] += 1
        return tuple(counts)

    def chambers(self) -> tuple[frozenset, ...]:
        return self.facets

    def _check(self, sigma: frozenset) -> None:
        if sigma not in self:
            raise ComplexError(f"simplex {sorted_simplex(sigma)} is not in the complex")

    # -- derived complexes -----------------------------------------------
    def _sub(self, facets: Iterable[frozenset]) -> "SimplicialComplex":
        facets = list(facets)
        verts = set().union(*facets) if facets else set()
        return SimplicialComplex(facets, {v: self.vtype[v] for v in verts},
                                 {v: self.labels[v] for v in verts}, self.typeset)

    def star(self, sigma: Iterable[int]) -> "SimplicialComplex":
        """Closed star: every facet containing ``sigma`` with all its faces."""
        sigma = frozenset(sigma)
        self._check(sigma)
        return self._sub(self.facets_containing(sigma))

    def open_star(self, sigma: Iterable[int]) -> list[frozenset]:
        """Simplices containing ``sigma`` (a set of simplices, not a complex)."""
        sigma = frozenset(sigma)
        self._check(sigma)
        return [s for s in self.star(sigma).simplices() if sigma <= s]

    def link(self, sigma: Iterable[int]) -> "SimplicialComplex":
        sigma = frozenset(sigma)
        self._check(sigma)
        return self._sub(f - sigma for f in self.facets_containing(sigma))

    def boundary_of_star(self, sigma: Iterable[int]) -> "SimplicialComplex":
        """Closed star minus open star, i.e. the join of the boundary of sigma with its link."""
        sigma = frozenset(sigma)
        self._check(sigma)
        if not sigma:
            return self._sub([])
        return self._sub(f - {v} for f in self.facets_containing(sigma) for v in sigma)

    def full_subcomplex(self, vertices: Iterable[int]) -> "SimplicialComplex":
        keep = frozenset(vertices)
        return self._sub(f & keep for f in self.facets)

    def skeleton(self, k: int) -> "SimplicialComplex":
        if k < 0:
            return self._sub([])
        faces = set()
        for f in self.facets:
            if len(f) <= k + 1:
                faces.add(f)
            else:
                faces.update(frozenset(c) for c in combinations(sorted(f), k + 1))
        return self._sub(faces)

    def subcomplex(self, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Closure of a set of simplices of this complex."""
        gens = [frozenset(s) for s in simplices]
        for s in gens:
            self._check(s)
        return self._sub(gens)

    def components(self) -> list[frozenset]:
        """Vertex sets of the connected components, sorted by smallest vertex."""
        parent = {v: v for v in self.vtype}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for f in self.facets:
            fl = sorted(f)
            for w in fl[1:]:
                a, b = find(fl[0]), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, set] = defaultdict(set)
        for v in self.vtype:
            groups[find(v)].add(v)
        return [frozenset(groups[r]) for r in sorted(groups)]

    def relabel(self, perm: Mapping[int, int]) -> "SimplicialComplex":
        return SimplicialComplex(
            [frozenset(perm[v] for v in f) for f in self.facets],
            {perm[v]: t for v, t in self.vtype.items()},
            {perm[v]: l for v, l in self.labels.items()},
            self.typeset,
        )

    # -- comparison --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.facets) == set(other.facets)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.facets))
        return self._hash

    def __le__(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.vtype)}, f={self.f_vector()})"

    # -- serialization ------------------------------------------------------
    def to_json(self, realization: Mapping[int, Iterable[int]] | None = None) -> dict:
        doc = {
            "typeset": list(self.typeset),
            "vertices": [{"id": v, "vtype": self.vtype[v], "label": self.labels[v]}
                         for v in sorted(self.vtype)],
            "facets": sorted([sorted(f) for f in self.facets]),
        }
        if realization is not None:
            doc["realization"] = {str(v): list(realization[v]) for v in sorted(realization)}
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "SimplicialComplex":
        vtype = {int(v["id"]): v["vtype"] for v in doc["vertices"]}
        labels = {int(v["id"]): v.get("label", str(v["id"])) for v in doc["vertices"]}
        return cls([frozenset(f) for f in doc["facets"]], vtype, labels, doc.get("typeset"))

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(**kw), sort_keys=True, separators=(",", ":"))


def empty_complex(typeset: Iterable[int] = ()) -> SimplicialComplex:
    return SimplicialComplex([], {}, typeset=typeset)


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes on disjoint vertex ids and disjoint type sets."""
    if set(X.vtype) & set(Y.vtype):
        raise ComplexError("join factors share vertex ids")
    if set(X.vtype.values()) & set(Y.vtype.values()):
        raise ComplexError("join factors share vertex types")
    facets = [a | b for a in X.facets for b in Y.facets]
    vtype = {**X.vtype, **Y.vtype}
    labels = {**X.labels, **Y.labels}
    return SimplicialComplex(facets, vtype, labels, set(X.typeset) | set(Y.typeset))


def union(*complexes: SimplicialComplex) -> SimplicialComplex:
    vtype: dict[int, int] = {}
    labels: dict[int, str] = {}
    facets: list[frozenset] = []
    typeset: set = set()
    for c in complexes:
        vtype.update(c.vtype)
        labels.update(c.labels)
        typeset.update(c.typeset)
        facets.extend(c.facets)
    return SimplicialComplex(facets, vtype, labels, typeset)


def intersection(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    return X._sub(maximal(a & b for a in X.facets for b in Y.facets))


def from_simplices(simplices: Iterable[Iterable[int]], vtype: Mapping[int, int],
                   labels: Mapping[int, str] | None = None) -> SimplicialComplex:
    """Complex generated by arbitrary simplices (non-maximal ones allowed)."""
    gens = [frozenset(s) for s in simplices]
    verts = set().union(*gens) if gens else set()
    return SimplicialComplex(gens, {v: vtype[v] for v in verts},
                             {v: (labels or {}).get(v, str(v)) for v in verts})
