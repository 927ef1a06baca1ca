"""Integer simplicial homology, sphericity verdicts and a fundamental group check.

Boundary matrices use the orientation given by ascending vertex order and
include the augmentation, so every group computed here is reduced homology.
Ranks and torsion come from a Smith normal form over the integers: a sparse
elimination on unit pivots shrinks each matrix before a dense pass.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .complex import SimplicialComplex
from .coxeter import SizeBoundError

log = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 200000


# -- chain complexes ---------------------------------------------------------------

class ChainComplex:
    """Augmented simplicial chain complex; ``basis[k]`` lists the k-simplices (k >= -1)."""

    def __init__(self, X: SimplicialComplex, max_cells: int = DEFAULT_MAX_CELLS):
        simp = X.simplices()
        if len(simp) > max_cells:
            raise SizeBoundError(f"{len(simp)} simplices exceed the bound {max_cells}")
        self.dim = X.dim()
        self.basis: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(-1, self.dim + 1)}
        for s in simp:
            self.basis[len(s) - 1].append(tuple(sorted(s)))
        for k in self.basis:
            self.basis[k].sort()
        self.index = {k: {s: i for i, s in enumerate(b)} for k, b in self.basis.items()}

    def boundary(self, k: int) -> list[dict[int, int]]:
        """Sparse columns of d_k : C_k -> C_{k-1}, one dict per k-simplex."""
        if k < 0 or k > self.dim:
            return []
        rows = self.index[k - 1]
        cols = []
        for s in self.basis[k]:
            col = {}
            for i in range(len(s)):
                col[rows[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        return cols

    def check_dd(self) -> bool:
        """d_{k-1} d_k = 0 for all k."""
        for k in range(1, self.dim + 1):
            lower = self.boundary(k - 1)
            for col in self.boundary(k):
                acc: dict[int, int] = {}
                for r, a in col.items():
                    for r2, b in lower[r].items():
                        acc[r2] = acc.get(r2, 0) + a * b
                if any(acc.values()):
                    return False
        return True


# -- Smith normal form ---------------------------------------------------------------

def _eliminate_units(cols: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Pivot on +-1 entries; returns (number of unit pivots, remaining sparse columns)."""
    cols = [dict(c) for c in cols if c]
    # row -> set of column positions holding it
    where: dict[int, set[int]] = {}
    for j, c in enumerate(cols):
        for r in c:
            where.setdefault(r, set()).add(j)
    alive = set(range(len(cols)))
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(alive, key=lambda j: len(cols[j])):
            if j not in alive:
                continue
            piv = next((r for r, a in sorted(cols[j].items(), key=lambda t: len(where[t[0]]))
                        if abs(a) == 1), None)
            if piv is None:
                continue
            pc = cols[j]
            a = pc[piv]
            # clear row piv from every other column using column j
            for k in list(where[piv]):
                if k == j:
                    continue
                ck = cols[k]
                f = ck[piv] * a  # a = +-1 so a^{-1} = a
                for r, b in pc.items():
                    v = ck.get(r, 0) - f * b
                    if v:
                        if r not in ck:
                            where.setdefault(r, set()).add(k)
                        ck[r] = v
                    elif r in ck:
                        del ck[r]
                        where[r].discard(k)
                if not ck:
                    alive.discard(k)
            # column j and row piv now only meet at the pivot: drop both
            for r in pc:
                where[r].discard(j)
            del where[piv]
            alive.discard(j)
            units += 1
            progress = True
    rest = [cols[j] for j in sorted(alive) if cols[j]]
    return units, rest


def _dense(cols: list[dict[int, int]]) -> list[list[int]]:
    rows = sorted({r for c in cols for r in c})
    ri = {r: i for i, r in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        for r, a in c.items():
            M[ri[r]][j] = a
    return M


def invariant_factors(M: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (dense SNF, no transforms)."""
    return [d for d in _snf(M, track=False)[1] if d]


def smith_normal_form(M: list[list[int]]):
    """Return (U, D, V) with M = U D V, U and V unimodular and D in Smith normal form."""
    return _snf(M, track=True)[0]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(M, track: bool):
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    # A = U_acc * D * V_acc is maintained: row op on A <=> inverse column op on U_acc
    U = _identity(m) if track else None
    V = _identity(n) if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            for row in U:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            V[i], V[j] = V[j], V[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        if track:
            for row in U:
                row[src] -= f * row[dst]

    def add_col(src, dst, f):  # col_dst += f * col_src
        for row in A:
            row[dst] += f * row[src]
        if track:
            V[src] = [a - f * b for a, b in zip(V[src], V[dst])]

    def neg_row(i):
        A[i] = [-a for a in A[i]]
        if track:
            for row in U:
                row[i] = -row[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        done = False
            if done:
                # divisibility: the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]] + \
                 [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            neg_row(t)
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return (U, A, V), diag


def matrix_rank_and_torsion(cols: list[dict[int, int]]) -> tuple[int, list[int]]:
    units, rest = _eliminate_units(cols)
    if not rest:
        return units, []
    facs = invariant_factors(_dense(rest))
    return units + len(facs), sorted(d for d in facs if d > 1)


# -- homology profiles -------------------------------------------------------------

@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology: betti[k] and torsion[k] for k = -1 .. dim."""

    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]]
    f_vector: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.f_vector) - 1

    def is_zero(self) -> bool:
        return not any(self.betti.values()) and not any(self.torsion.values())

    def reduced_euler(self) -> int:
        return sum((-1) ** k * b for k, b in self.betti.items())

    def to_json(self) -> dict:
        return {"betti": {str(k): v for k, v in sorted(self.betti.items())},
                "torsion": {str(k): list(v) for k, v in sorted(self.torsion.items()) if v},
                "f_vector": list(self.f_vector)}


def reduced_homology(X: SimplicialComplex, max_cells: int = DEFAULT_MAX_CELLS) -> HomologyProfile:
    C = ChainComplex(X, max_cells)
    ranks: dict[int, int] = {}
    tors: dict[int, list[int]] = {}
    for k in range(0, C.dim + 1):
        ranks[k], tors[k] = matrix_rank_and_torsion(C.boundary(k))
    betti, torsion = {}, {}
    for k in range(-1, C.dim + 1):
        size = len(C.basis[k])
        betti[k] = size - ranks.get(k, 0) - ranks.get(k + 1, 0)
        torsion[k] = tuple(tors.get(k + 1, ()))
    f = tuple(len(C.basis[k]) for k in range(0, C.dim + 1))
    prof = HomologyProfile(betti, torsion, f)
    # chi bookkeeping: sum (-1)^k f_k over k >= -1 equals sum (-1)^k betti_k
    chi = sum((-1) ** k * len(C.basis[k]) for k in range(-1, C.dim + 1))
    if chi != prof.reduced_euler():
        raise AssertionError("Euler characteristic mismatch")
    return prof


def is_homology_spherical(X: SimplicialComplex, n: int, profile: HomologyProfile | None = None) -> bool:
    """dim X = n, reduced homology vanishes below n and H_n is free."""
    if n == -1:
        return X.is_empty()
    if X.dim() != n:
        return False
    p = reduced_homology(X) if profile is None else profile
    if any(p.betti.get(k, 0) or p.torsion.get(k) for k in range(-1, n)):
        return False
    return not p.torsion.get(n)


@dataclass
class ConnectivityVerdict:
    dim: int
    profile: HomologyProfile
    link_failures: list = field(default_factory=list)
    links_checked: int = 0
    pi1: str = "skipped"

    @property
    def homology_spherical(self) -> bool:
        return is_homology_spherical_from(self.profile, self.dim)

    @property
    def noncontractible(self) -> bool:
        return not self.profile.is_zero()

    @property
    def homotopy_CM(self) -> bool:
        return self.homology_spherical and not self.link_failures

    def to_json(self) -> dict:
        return {"dim": self.dim, "profile": self.profile.to_json(),
                "homology_spherical": self.homology_spherical,
                "noncontractible": self.noncontractible,
                "homotopy_CM_homological": self.homotopy_CM,
                "links_checked": self.links_checked,
                "link_failures": self.link_failures[:20],
                "pi1": self.pi1}


def is_homology_spherical_from(p: HomologyProfile, n: int) -> bool:
    if n == -1:
        return p.dim == -1
    if p.dim != n:
        return False
    if any(p.betti.get(k, 0) or p.torsion.get(k) for k in range(-1, n)):
        return False
    return not p.torsion.get(n)


def is_homotopy_CM(X: SimplicialComplex, max_cells: int = DEFAULT_MAX_CELLS, pi1: bool = False
                   ) -> ConnectivityVerdict:
    """Every link lk(sigma), sigma including the empty simplex, is (dim X - dim sigma - 1)-spherical."""
    d = X.dim()
    prof = reduced_homology(X, max_cells)
    v = ConnectivityVerdict(d, prof)
    for s in X.simplices():
        if not s:
            continue
        v.links_checked += 1
        lk = X.link(s)
        n = d - len(s)
        if not is_homology_spherical(lk, n):
            v.link_failures.append({"simplex": sorted(s), "expected_dim": n,
                                    "profile": reduced_homology(lk).to_json()})
    v.links_checked += 1
    if pi1 and d >= 2:
        v.pi1 = pi1_trivial(X)
    return v


# -- fundamental group ----------------------------------------------------------------

def _reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    # cyclic reduction
    i, j = 0, len(out) - 1
    while i < j and out[i] == -out[j]:
        i += 1
        j -= 1
    return tuple(out[i:j + 1])


def _substitute(word, g, repl):
    inv = tuple(-h for h in reversed(repl))
    out: list[int] = []
    for h in word:
        if h == g:
            out.extend(repl)
        elif h == -g:
            out.extend(inv)
        else:
            out.append(h)
    return _reduce(tuple(out))


def pi1_trivial(X: SimplicialComplex, max_rounds: int = 10000, max_len: int = 64) -> str:
    """'trivial' if Tietze moves kill the edge-path presentation, else 'unknown'."""
    if len(X.components()) != 1:
        return "unknown"
    verts = sorted(X.vertices)
    edges = sorted(tuple(sorted(e)) for e in X.simplices_of_dim(1))
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    tree = set()
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        u = stack.pop()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                stack.append(w)
    gens = {e: i + 1 for i, e in enumerate(e for e in edges if e not in tree)}

    def g(a, b):
        return gens.get((a, b))

    rels = []
    for t in X.simplices_of_dim(2):
        a, b, c = sorted(t)
        w = tuple(x for x in (g(a, b), g(b, c), -g(a, c) if g(a, c) else None) if x)
        w = _reduce(w)
        if w:
            rels.append(w)
    alive = set(gens.values())
    for _ in range(max_rounds):
        if not alive:
            return "trivial"
        rels = [r for r in {_reduce(r) for r in rels} if r]
        rels.sort(key=lambda r: (len(r), r))
        move = None
        for r in rels:
            counts: dict[int, int] = {}
            for h in r:
                counts[abs(h)] = counts.get(abs(h), 0) + 1
            once = [h for h in r if counts[abs(h)] == 1]
            if once and len(r) <= max_len:
                move = (r, once[0])
                break
        if move is None:
            return "unknown"
        r, h = move
        k = r.index(h)
        rest = r[k + 1:] + r[:k]
        # h * rest = 1  =>  h = rest^{-1}
        repl = tuple(-x for x in reversed(rest))
        gen = abs(h)
        if h < 0:
            repl = tuple(-x for x in reversed(repl))
        alive.discard(gen)
        rels = [_substitute(q, gen, repl) for q in rels if q is not r]
    return "unknown"


def profile_gcd_check(p: HomologyProfile) -> bool:
    """Invariant factors are listed in divisibility order."""
    for ts in p.torsion.values():
        for a, b in zip(ts, ts[1:]):
            if b % a:
                return False
    return True


__all__ = ["ChainComplex", "HomologyProfile", "ConnectivityVerdict", "reduced_homology",
           "is_homology_spherical", "is_homotopy_CM", "pi1_trivial", "smith_normal_form",
           "invariant_factors", "matrix_rank_and_torsion"]
