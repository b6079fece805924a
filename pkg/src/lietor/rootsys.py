"""Finite irreducible root systems and extended affine root systems.

Roots are integer coordinate tuples over the simple-root basis; the bilinear
form is normalized so every short root has squared length 2, which makes the
maximal norm equal 2 for simply laced types, 4 for B/C/F and 6 for G2.
Extended affine roots pair a finite part with an integer lattice degree; all
infinite-set operations take a mandatory sup-norm ball radius.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import IsotropicRootError, LietorError, UnsupportedTypeError

Coords = Tuple[int, ...]
EalaRoot = Tuple[Tuple, Coords]  # (finite part, lattice part)

_CHAIN = lambda n: [(i, i + 1) for i in range(n - 1)]

# Dynkin data: d_i = (alpha_i, alpha_i)/2 and the diagram edges, Bourbaki
# numbering (0-based).
_TYPE_DATA = {
    "A": lambda n: ([1] * n, _CHAIN(n)),
    "B": lambda n: ([2] * (n - 1) + [1], _CHAIN(n)),
    "C": lambda n: ([1] * (n - 1) + [2], _CHAIN(n)),
    "D": lambda n: ([1] * n, _CHAIN(n - 1)[:-1] + [(n - 3, n - 2), (n - 3, n - 1)]),
    "E": lambda n: ([1] * n, [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]),
    "F": lambda n: ([2, 2, 1, 1], _CHAIN(4)),
    "G": lambda n: ([1, 3], [(0, 1)]),
}

_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def parse_type_label(label: str) -> Tuple[str, int]:
    label = label.strip()
    if label[:2].upper() == "BC":
        raise UnsupportedTypeError("type BC is non-reduced and out of scope")
    letter = label[:1].upper()
    if letter not in _TYPE_DATA:
        raise UnsupportedTypeError(f"unknown type letter {label!r}")
    try:
        rank = int(label[1:].lstrip("_"))
    except ValueError:
        raise UnsupportedTypeError(f"cannot parse rank in {label!r}") from None
    lo, hi = _RANK_BOUNDS[letter]
    if rank < lo or (hi is not None and rank > hi):
        raise UnsupportedTypeError(f"rank {rank} out of range for type {letter}")
    return letter, rank


class RootSystem:
    """A finite irreducible reduced root system with normalized form.

    Attributes:
        letter, rank: the type label.
        gram: integer Gram matrix of the simple roots, short roots norm 2.
        cartan: cartan[i][j] = <alpha_i, alpha_j^vee>.
        roots: all roots, ordered by (height, coordinates).
    """

    def __init__(self, label: str):
        self.letter, self.rank = parse_type_label(label)
        d, edges = _TYPE_DATA[self.letter](self.rank)
        n = self.rank
        self.d = list(d)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = 2 * d[i]
        for i, j in edges:
            gram[i][j] = gram[j][i] = -max(d[i], d[j])
        self.gram = [tuple(r) for r in gram]
        cartan = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                assert gram[i][j] % d[j] == 0
                cartan[i][j] = gram[i][j] // d[j]
        self.cartan = [tuple(r) for r in cartan]
        self.posroots = self._enumerate_positive()
        self.roots = sorted(
            [tuple(-c for c in r) for r in self.posroots] + self.posroots,
            key=lambda r: (sum(r), r),
        )
        self.rootset = frozenset(self.roots)
        self.k_max = max(self.norm(r) for r in self.roots)

    @property
    def label(self) -> str:
        return f"{self.letter}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.label})"

    def simple_root(self, i: int) -> Coords:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    @property
    def simple_roots(self) -> List[Coords]:
        return [self.simple_root(i) for i in range(self.rank)]

    def _enumerate_positive(self) -> List[Coords]:
        # Height-climbing: beta + alpha_i is a root iff the alpha_i-string
        # gives u = d - <beta, alpha_i^vee> > 0, with d read off from the
        # already-enumerated lower layers.
        known = {self.simple_root(i) for i in range(self.rank)}
        layer = sorted(known)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(self.rank):
                    ai = self.simple_root(i)
                    if beta == ai:
                        continue
                    d = 0
                    cur = tuple(b - a for b, a in zip(beta, ai))
                    while cur in known or tuple(-c for c in cur) in known:
                        d += 1
                        cur = tuple(b - a for b, a in zip(cur, ai))
                    if d - self.cartan_int(beta, ai) > 0:
                        up = tuple(b + a for b, a in zip(beta, ai))
                        if up not in known:
                            known.add(up)
                            nxt.append(up)
            layer = sorted(set(nxt))
        return sorted(known, key=lambda r: (sum(r), r))

    def pair(self, beta: Coords, gamma: Coords) -> int:
        return sum(
            b * self.gram[i][j] * g
            for i, b in enumerate(beta)
            if b
            for j, g in enumerate(gamma)
            if g
        )

    def norm(self, beta: Coords) -> int:
        return self.pair(beta, beta)

    def cartan_int(self, beta: Coords, alpha: Coords) -> int:
        num = 2 * self.pair(beta, alpha)
        den = self.norm(alpha)
        assert num % den == 0, (beta, alpha)
        return num // den

    def is_root(self, beta: Coords) -> bool:
        return tuple(beta) in self.rootset

    def is_positive(self, beta: Coords) -> bool:
        return next(c for c in beta if c) > 0

    def reflect(self, alpha: Coords, beta: Coords) -> Coords:
        """w_alpha(beta) = beta - <beta, alpha^vee> alpha."""
        c = self.cartan_int(beta, alpha)
        return tuple(b - c * a for b, a in zip(beta, alpha))

    def root_string(self, beta: Coords, alpha: Coords) -> Tuple[int, int]:
        """Maximal (d, u) with beta - d*alpha ... beta + u*alpha all roots."""
        if beta == alpha or beta == tuple(-a for a in alpha):
            raise LietorError("root string undefined for proportional roots")
        d = 0
        cur = tuple(b - a for b, a in zip(beta, alpha))
        while cur in self.rootset:
            d += 1
            cur = tuple(b - a for b, a in zip(cur, alpha))
        u = 0
        cur = tuple(b + a for b, a in zip(beta, alpha))
        while cur in self.rootset:
            u += 1
            cur = tuple(b + a for b, a in zip(cur, alpha))
        return d, u

    @property
    def highest_root(self) -> Coords:
        return self.roots[-1]

    def coroot_coords(self, alpha: Coords) -> Coords:
        """h_alpha as an integer vector over the simple coroots h_i."""
        nrm = self.norm(alpha)
        out = []
        for i, a in enumerate(alpha):
            c = Q(a * 2 * self.d[i], nrm)
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)


def build_root_system(type_label: str) -> RootSystem:
    return RootSystem(type_label)


def _as_q(x) -> Q:
    return x if isinstance(x, Q) else Q(x)


def canon_coord(x):
    q = _as_q(x)
    return int(q) if q.denominator == 1 else q


def canon_fin(fin: Sequence) -> Tuple:
    return tuple(canon_coord(x) for x in fin)


class EalaRootSystem:
    """Roots R = finite part + lattice degree, split isotropic/non-isotropic.

    Untwisted: R = (Delta union {0}) + Z^nu with full support.  Twisted
    systems are built from the support of a multi-loop Lie torus and carry
    half-integral fin coordinates in the ambient simple-root basis.
    """

    def __init__(
        self,
        fin_roots: Sequence[Tuple],
        gram: Sequence[Sequence],
        nullity: int,
        support: Optional[Callable[[Tuple, Coords], bool]] = None,
        base: Optional[RootSystem] = None,
        label: str = "",
    ):
        self.fin_roots = [canon_fin(r) for r in fin_roots]
        self.finset = frozenset(self.fin_roots)
        self.gram = [tuple(map(canon_coord, row)) for row in gram]
        self.nullity = nullity
        self.support = support or (lambda fin, lam: True)
        self.base = base
        self.label = label
        self.fin_rank = len(gram)
        from .exact import rational_rank

        self.dim_v = rational_rank([list(map(Q, r)) for r in self.fin_roots]) + nullity

    @classmethod
    def untwisted(cls, base: RootSystem, nullity: int) -> "EalaRootSystem":
        return cls(
            base.roots,
            base.gram,
            nullity,
            base=base,
            label=f"{base.label}+Z^{nullity}",
        )

    def __repr__(self) -> str:
        return f"EalaRootSystem({self.label or 'custom'})"

    def pair_fin(self, a: Tuple, b: Tuple) -> Q:
        return sum(
            _as_q(x) * self.gram[i][j] * _as_q(y)
            for i, x in enumerate(a)
            if x
            for j, y in enumerate(b)
            if y
        )

    def norm(self, root: EalaRoot) -> Q:
        fin, _ = root
        return self.pair_fin(fin, fin) if any(fin) else Q(0)

    def is_isotropic(self, root: EalaRoot) -> bool:
        return not any(root[0])

    def cartan_int(self, beta: EalaRoot, alpha: EalaRoot) -> int:
        if self.is_isotropic(alpha):
            raise IsotropicRootError("cannot pair against an isotropic root")
        c = 2 * self.pair_fin(beta[0], alpha[0]) / self.pair_fin(alpha[0], alpha[0])
        assert c.denominator == 1, (beta, alpha)
        return int(c)

    def reflect(self, alpha: EalaRoot, beta: EalaRoot) -> EalaRoot:
        """w_alpha(beta); alpha must be non-isotropic."""
        c = self.cartan_int(beta, alpha)
        fin = canon_fin(tuple(_as_q(b) - c * _as_q(a) for b, a in zip(beta[0], alpha[0])))
        lam = tuple(b - c * a for b, a in zip(beta[1], alpha[1]))
        return (fin, lam)

    def lattice_points(self, radius: int) -> List[Coords]:
        rng = range(-radius, radius + 1)
        return [tuple(p) for p in itertools.product(rng, repeat=self.nullity)]

    def nonisotropic_in_ball(self, radius: int) -> List[EalaRoot]:
        out = []
        for lam in self.lattice_points(radius):
            for fin in self.fin_roots:
                if self.support(fin, lam):
                    out.append((fin, lam))
        return sorted(out)

    def zero_fin(self) -> Tuple:
        return tuple(0 for _ in range(self.fin_rank))


@dataclass
class ReflectableBaseReport:
    """Outcome of a ball-bounded reflectable-base check or search.

    Coverage of R^x within a ball is a necessary condition for Pi to be a
    reflectable base, never a proof; `work_radius` records the truncation.
    """

    pi: Tuple[EalaRoot, ...]
    ball: int
    work_radius: int
    covers: bool
    covered_count: int
    target_count: int
    missing: List[EalaRoot] = field(default_factory=list)
    minimal_within_ball: Optional[bool] = None
    subset_failures: List[Tuple[EalaRoot, int]] = field(default_factory=list)
    index_estimate: Optional[int] = None
    budget_exhausted: bool = False

    @property
    def size(self) -> int:
        return len(self.pi)


class _OrbitIndex:
    """Numpy index tables for reflection orbits inside a lattice ball.

    Every non-isotropic root in the working ball gets an integer code; a
    generator's reflection becomes a code -> code table, so BFS closure is
    pure integer array indexing.
    """

    def __init__(self, ears: EalaRootSystem, work_radius: int):
        self.ears = ears
        self.w = work_radius
        self.fins = sorted(ears.finset)
        self.fin_index = {f: i for i, f in enumerate(self.fins)}
        nf = len(self.fins)
        # Cartan integers and finite reflection table over the fin set.
        self.ci = np.zeros((nf, nf), dtype=np.int64)
        self.fref = np.zeros((nf, nf), dtype=np.int64)
        for a, fa in enumerate(self.fins):
            for b, fb in enumerate(self.fins):
                c = ears.cartan_int((fb, ()), (fa, ()))
                self.ci[a, b] = c
                img = canon_fin(
                    tuple(_as_q(x) - c * _as_q(y) for x, y in zip(fb, fa))
                )
                self.fref[a, b] = self.fin_index[img]
        self.roots: List[EalaRoot] = ears.nonisotropic_in_ball(work_radius)
        self.code = {r: i for i, r in enumerate(self.roots)}
        self.fin_of = np.array([self.fin_index[r[0]] for r in self.roots], dtype=np.int64)
        self.lam_of = np.array([r[1] for r in self.roots], dtype=np.int64).reshape(
            len(self.roots), ears.nullity
        )
        self._gen_tables: Dict[int, np.ndarray] = {}

    def gen_table(self, gen_code: int) -> np.ndarray:
        """Image codes of every ball root under w_gen (-1 if out of ball)."""
        tab = self._gen_tables.get(gen_code)
        if tab is not None:
            return tab
        gf = self.fin_of[gen_code]
        glam = self.lam_of[gen_code]
        c = self.ci[gf, self.fin_of]
        img_f = self.fref[gf, self.fin_of]
        img_lam = self.lam_of - c[:, None] * glam[None, :]
        ok = np.all(np.abs(img_lam) <= self.w, axis=1)
        tab = np.full(len(self.roots), -1, dtype=np.int64)
        if self.ears.nullity:
            shifted = img_lam + self.w
            radix = 2 * self.w + 1
            flat = np.zeros(len(self.roots), dtype=np.int64)
            for j in range(self.ears.nullity):
                flat = flat * radix + shifted[:, j]
            lookup = {}
            own_flat = np.zeros(len(self.roots), dtype=np.int64)
            for j in range(self.ears.nullity):
                own_flat = own_flat * radix + (self.lam_of[:, j] + self.w)
            for i in range(len(self.roots)):
                lookup[(int(self.fin_of[i]), int(own_flat[i]))] = i
            for i in np.nonzero(ok)[0]:
                tab[i] = lookup.get((int(img_f[i]), int(flat[i])), -1)
        else:
            for i in range(len(self.roots)):
                tab[i] = self.code.get((self.fins[int(img_f[i])], ()), -1)
        self._gen_tables[gen_code] = tab
        return tab

    def closure(self, gen_codes: Sequence[int]) -> np.ndarray:
        """Boolean mask of the orbit W_Pi(Pi) within the working ball."""
        reached = np.zeros(len(self.roots), dtype=bool)
        for g in gen_codes:
            reached[g] = True
        tables = [self.gen_table(g) for g in gen_codes]
        changed = True
        while changed:
            changed = False
            for tab in tables:
                imgs = tab[reached]
                imgs = imgs[imgs >= 0]
                before = reached.sum()
                reached[imgs] = True
                if reached.sum() != before:
                    changed = True
        return reached


def _work_radius(ears: EalaRootSystem, pi: Sequence[EalaRoot], ball: int) -> int:
    gen_reach = max((max(map(abs, lam)) if lam else 0 for _, lam in pi), default=0)
    return ball + 2 + gen_reach


def check_reflectable_base(
    ears: EalaRootSystem,
    pi: Sequence[EalaRoot],
    ball_radius: int,
    check_minimality: bool = True,
) -> ReflectableBaseReport:
    """BFS the reflections of Pi inside a working ball; report coverage.

    Coverage of R^x within the ball is only a necessary condition for Pi to
    be a reflectable base; minimality is tested against maximal proper
    subsets (orbit monotonicity makes that sufficient within the ball).
    """
    if ball_radius < 1 and ears.nullity:
        raise LietorError("ball radius must be >= 1")
    pi = [(canon_fin(f), tuple(l)) for f, l in pi]
    for r in pi:
        if ears.is_isotropic(r):
            raise IsotropicRootError(f"candidate {r} is isotropic")
    w = _work_radius(ears, pi, ball_radius)
    idx = _OrbitIndex(ears, w)
    gen_codes = [idx.code[r] for r in pi]
    reached = idx.closure(gen_codes)
    in_ball = np.all(np.abs(idx.lam_of) <= ball_radius, axis=1)
    covered = reached & in_ball
    missing = [idx.roots[i] for i in np.nonzero(in_ball & ~reached)[0]]
    covers = not missing
    report = ReflectableBaseReport(
        pi=tuple(pi),
        ball=ball_radius,
        work_radius=w,
        covers=covers,
        covered_count=int(covered.sum()),
        target_count=int(in_ball.sum()),
        missing=missing[:16],
        index_estimate=len(pi) - ears.dim_v,
    )
    if covers and check_minimality:
        minimal = True
        for drop in range(len(pi)):
            sub = [g for i, g in enumerate(pi) if i != drop]
            sub_reached = idx.closure([idx.code[r] for r in sub])
            n_cov = int((sub_reached & in_ball).sum())
            if n_cov == report.target_count:
                minimal = False
            report.subset_failures.append((pi[drop], n_cov))
        report.minimal_within_ball = minimal
    return report


def _untwisted_guesses(ears: EalaRootSystem) -> List[List[EalaRoot]]:
    base = ears.base
    nu = ears.nullity
    zero = tuple(0 for _ in range(nu))
    simples = [(s, zero) for s in base.simple_roots]
    if nu == 0:
        return [simples]
    guesses = []
    theta = base.highest_root
    neg_theta = tuple(-c for c in theta)
    for ht in (neg_theta, theta):
        ext = [
            (ht, tuple(1 if j == i else 0 for j in range(nu))) for i in range(nu)
        ]
        guesses.append(simples + ext)
    return guesses


def search_reflectable_base(
    ears: EalaRootSystem, ball_radius: int, budget: int = 600
) -> ReflectableBaseReport:
    """Search for a small Pi whose reflection orbit covers R^x in the ball.

    Canonical affine-style candidates are tried first; a greedy cover with a
    pruning pass is the fallback.  The reported |Pi| is an upper bound for
    refl(R) only; the index estimate is |Pi| - dim V.
    """
    if ears.base is None:
        raise LietorError("search requires an untwisted EARS")
    if ball_radius < 1 and ears.nullity:
        raise LietorError("ball radius must be >= 1 (empty search space)")
    for guess in _untwisted_guesses(ears):
        rep = check_reflectable_base(ears, guess, ball_radius)
        if rep.covers:
            return rep

    # Greedy cover over fin-positive candidates with small lattice part.
    pool_rad = min(1, ball_radius)
    zero = tuple(0 for _ in range(ears.nullity))
    pool = [
        (f, lam)
        for lam in ears.lattice_points(pool_rad)
        for f in ears.fin_roots
        if ears.base.is_positive(f) and ears.support(f, lam)
    ]
    w = ball_radius + 3
    idx = _OrbitIndex(ears, w)
    in_ball = np.all(np.abs(idx.lam_of) <= ball_radius, axis=1)
    target = int(in_ball.sum())
    chosen: List[int] = []
    used = 0
    best_cov = 0
    while best_cov < target and used < budget:
        best = None
        for cand in pool:
            c = idx.code[cand]
            if c in chosen:
                continue
            cov = int((idx.closure(chosen + [c]) & in_ball).sum())
            used += 1
            if best is None or cov > best[0]:
                best = (cov, c)
            if used >= budget:
                break
        if best is None or best[0] <= best_cov:
            break
        best_cov, c = best
        chosen.append(c)
    # Prune redundant generators.
    for c in list(chosen):
        if len(chosen) == 1:
            break
        rest = [x for x in chosen if x != c]
        if int((idx.closure(rest) & in_ball).sum()) == best_cov:
            chosen = rest
    pi = [idx.roots[c] for c in chosen]
    rep = check_reflectable_base(ears, pi, ball_radius)
    rep.budget_exhausted = used >= budget and not rep.covers
    return rep
