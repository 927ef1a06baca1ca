"""Linear algebra over the prime field F_p.

Vectors are tuples of ints in range(p).  Subspaces are identified by their
reduced row echelon basis, which is unique.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Sequence

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form with zero rows dropped."""
    M = [list(r) for r in rows]
    if not M:
        return ()
    ncols = len(M[0])
    lead = 0
    for c in range(ncols):
        piv = next((i for i in range(lead, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[lead], M[piv] = M[piv], M[lead]
        inv = pow(M[lead][c], p - 2, p)
        M[lead] = [(x * inv) % p for x in M[lead]]
        for i in range(len(M)):
            if i != lead and M[i][c] % p:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[lead])]
        lead += 1
        if lead == len(M):
            break
    return tuple(tuple(r) for r in M[:lead])


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p))


def span(basis: Sequence[Sequence[int]], p: int, N: int) -> frozenset:
    """All vectors of the span (including zero)."""
    vecs = {tuple([0] * N)}
    for coeffs in product(range(p), repeat=len(basis)):
        v = [0] * N
        for c, b in zip(coeffs, basis):
            if c:
                for k in range(N):
                    v[k] = (v[k] + c * b[k]) % p
        vecs.add(tuple(v))
    return frozenset(vecs)


def enumerate_subspaces(N: int, k: int, p: int) -> list[tuple[tuple[int, ...], ...]]:
    """All k-dimensional subspaces of F_p^N, as rref bases, in lexicographic order."""
    out = []
    for pivots in combinations(range(N), k):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, N) if c not in pivots]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * N for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), x in zip(free, vals):
                rows[i][c] = x
            out.append(tuple(tuple(r) for r in rows))
    return sorted(out)


def gaussian_binomial(N: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
