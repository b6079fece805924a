"""Exact integer and rational linear algebra.

Everything in this module works over Python ints and ``fractions.Fraction``;
no floating point is ever introduced.  The workhorses are a row-style Hermite
normal form, integer lattices with echelon membership tests, and small dense
rational solvers used for coordinate extraction.
"""

from __future__ import annotations

import math
from fractions import Fraction as Q
from typing import Iterable, List, Optional, Sequence, Tuple

Vec = Tuple[int, ...]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def hnf(rows: Iterable[Sequence[int]]) -> List[Vec]:
    """Canonical row Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows are dropped.  Two generating sets span the same lattice iff
    their HNFs are equal.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if not m[i][c]:
                continue
            a, b = m[r][c], m[i][c]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            m[r], m[i] = (
                [x * p + y * q for p, q in zip(m[r], m[i])],
                [-v * p + u * q for p, q in zip(m[r], m[i])],
            )
        if m[r][c] < 0:
            m[r] = [-p for p in m[r]]
        for j in range(r):
            q = m[j][c] // m[r][c]
            if q:
                m[j] = [p - q * t for p, t in zip(m[j], m[r])]
        r += 1
    return [tuple(row) for row in m[:r] if any(row)]


def integer_kernel_basis(mu: Sequence[int]) -> List[Vec]:
    """Canonical Z-basis of {theta in Z^n : sum theta_i * mu_i == 0}.

    For mu == 0 this is the standard basis; otherwise the basis has n - 1
    vectors and is HNF-reduced, hence deterministic.
    """
    n = len(mu)
    if n == 0:
        return []
    if not any(mu):
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    # Row-reduce the column vector mu with a unimodular transform; the rows
    # whose value becomes zero form a kernel basis.
    thetas = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    vals = list(mu)
    piv = None
    for i in range(n):
        if not vals[i]:
            continue
        if piv is None:
            piv = i
            continue
        a, b = vals[piv], vals[i]
        g, x, y = xgcd(a, b)
        u, v = a // g, b // g
        thetas[piv], thetas[i] = (
            [x * p + y * q for p, q in zip(thetas[piv], thetas[i])],
            [-v * p + u * q for p, q in zip(thetas[piv], thetas[i])],
        )
        vals[piv], vals[i] = g, 0
    kernel = [thetas[i] for i in range(n) if i != piv]
    return hnf(kernel)


class IntLattice:
    """Integer lattice in Z^n maintained as an echelon row basis.

    Supports incremental vector insertion and exact membership tests, in the
    style of a mutable HNF.  ``canonical()`` returns the full HNF.
    """

    def __init__(self, n: int, gens: Iterable[Sequence[int]] = ()):
        self.n = n
        self.rows: List[List[int]] = []  # echelon, pivot columns increasing
        self._pivots: List[int] = []
        for g in gens:
            self.add(g)

    def add(self, vec0: Sequence[int]) -> None:
        vec = list(vec0)
        assert len(vec) == self.n
        for idx in range(len(self.rows) + 1):
            j = next((c for c, x in enumerate(vec) if x), None)
            if j is None:
                return
            if idx == len(self.rows) or self._pivots[idx] > j:
                self.rows.insert(idx, vec)
                self._pivots.insert(idx, j)
                return
            if self._pivots[idx] < j:
                continue
            row = self.rows[idx]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, row)]
            else:
                g, x, y = xgcd(a, b)
                u, v = a // g, b // g
                self.rows[idx], vec = (
                    [x * p + y * q for p, q in zip(row, vec)],
                    [-v * p + u * q for p, q in zip(row, vec)],
                )

    def __contains__(self, vec0: Sequence[int]) -> bool:
        vec = list(vec0)
        for row, piv in zip(self.rows, self._pivots):
            if vec[piv]:
                if vec[piv] % row[piv]:
                    return False
                q = vec[piv] // row[piv]
                vec = [x - q * y for x, y in zip(vec, row)]
        return not any(vec)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def canonical(self) -> List[Vec]:
        return hnf(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntLattice) and self.canonical() == other.canonical()


class RatLattice:
    """Z-span of finitely many rational vectors, via a scaled IntLattice."""

    def __init__(self, n: int, gens: Iterable[Sequence[Q]] = ()):
        self.n = n
        gens = [list(map(Q, g)) for g in gens]
        self.scale = math.lcm(*(x.denominator for g in gens for x in g)) if gens else 1
        self.lat = IntLattice(n)
        for g in gens:
            self.lat.add([int(x * self.scale) for x in g])

    def __contains__(self, vec: Sequence) -> bool:
        scaled = [Q(x) * self.scale for x in vec]
        if any(x.denominator != 1 for x in scaled):
            return False
        return [int(x) for x in scaled] in self.lat

    @property
    def rank(self) -> int:
        return self.lat.rank

    def canonical(self) -> List[Tuple[Q, ...]]:
        return [tuple(Q(x, self.scale) for x in row) for row in self.lat.canonical()]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatLattice) and self.canonical() == other.canonical()


def rational_hnf_basis(vectors: Sequence[Sequence[Q]]) -> List[Tuple[Q, ...]]:
    """Canonical basis of the Z-span of rational vectors (scaled integer HNF)."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    return RatLattice(len(vectors[0]), vectors).canonical()


def solve_in_span(
    basis: Sequence[Sequence[Q]], target: Sequence[Q]
) -> Optional[List[Q]]:
    """Solve sum_j c_j * basis[j] == target exactly; None if insoluble.

    When the basis vectors are linearly dependent an arbitrary consistent
    solution is returned; callers needing unique coordinates pass a basis.
    """
    m = len(basis)
    if m == 0:
        return [] if not any(target) else None
    n = len(target)
    # Augmented rows of the n x m column system.
    rows = [[Q(basis[j][i]) for j in range(m)] + [Q(target[i])] for i in range(n)]
    piv_of_col: List[Optional[int]] = [None] * m
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_of_col[c] = r
        r += 1
    for i in range(r, n):
        if rows[i][m]:
            return None
    if any(any(rows[i][: m]) for i in range(r, n)):  # pragma: no cover - by rref
        return None
    sol = [Q(0)] * m
    for c in range(m):
        if piv_of_col[c] is not None:
            sol[c] = rows[piv_of_col[c]][m]
    return sol


def rational_rank(vectors: Sequence[Sequence[Q]]) -> int:
    vecs = [list(map(Q, v)) for v in vectors if any(v)]
    rank = 0
    pivots: List[Tuple[int, List[Q]]] = []
    for v in vecs:
        for j, row in pivots:
            if v[j]:
                f = v[j] / row[j]
                v = [x - f * y for x, y in zip(v, row)]
        j = next((c for c, x in enumerate(v) if x), None)
        if j is not None:
            pivots.append((j, v))
            rank += 1
    return rank


def sqrt_fraction(q: Q) -> Optional[Q]:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Q(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Q(rn, rd)
    return None


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor d of n > 0 with n/d a perfect square."""
    assert n > 0
    d = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return d * n
