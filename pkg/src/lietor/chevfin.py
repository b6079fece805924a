"""Finite-dimensional simple Lie algebras over Z in a Chevalley basis.

Structure constants are fixed by the extraspecial-pair sign convention with
respect to the deterministic root order, so tables are reproducible.  All
scalars stay exact; the table itself is integer valued and this is asserted
at build time.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .errors import BuildError, LietorError, MismatchedAlgebrasError, UnsupportedTypeError
from .rootsys import Coords, RootSystem
from .sparse import Elt, add_scaled, scaled, single

XKey = Tuple[str, Coords]


def _vsub(a: Coords, b: Coords) -> Coords:
    return tuple(x - y for x, y in zip(a, b))


def _vneg(a: Coords) -> Coords:
    return tuple(-x for x in a)


class FiniteChevalleyAlgebra:
    """Basis {x_alpha} u {h_i} with integer structure constants.

    Relations: [h_i, x_b] = <b, alpha_i^vee> x_b, [x_a, x_{-a}] = h_a, and
    [x_a, x_b] = N_{a,b} x_{a+b} with |N_{a,b}| = d_{ab} + 1.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.keys: List[Hashable] = [("x", r) for r in rs.roots] + [
            ("h", i) for i in range(rs.rank)
        ]
        self._n: Dict[Tuple[Coords, Coords], int] = {}
        self._build_constants()
        self._table: Dict[Tuple[Hashable, Hashable], Elt] = {}

    def __repr__(self) -> str:
        return f"FiniteChevalleyAlgebra({self.rs.label})"

    @property
    def dim(self) -> int:
        return len(self.keys)

    def zero_degree(self) -> Coords:
        return tuple(0 for _ in range(self.rs.rank))

    def degree(self, key: Hashable) -> Coords:
        return key[1] if key[0] == "x" else self.zero_degree()

    # -- structure constants ------------------------------------------------

    def _build_constants(self) -> None:
        rs = self.rs
        order = {r: i for i, r in enumerate(rs.posroots)}
        posset = set(rs.posroots)
        for gamma in rs.posroots:
            pairs = []
            for a in rs.posroots:
                if order[a] >= order[gamma]:
                    break
                b = _vsub(gamma, a)
                if b in posset and order[a] < order[b]:
                    pairs.append((a, b))
            if not pairs:
                continue
            a1, b1 = pairs[0]
            d, _ = rs.root_string(b1, a1)
            self._set(a1, b1, d + 1)
            for a, b in pairs[1:]:
                norm_g = rs.norm(gamma)
                t = Q(0)
                u = _vsub(b, a1)
                if u in rs.rootset:
                    t += Q(
                        self._nconst(b, _vneg(a1)) * self._nconst(a, _vneg(b1)),
                        rs.norm(u),
                    )
                v = _vsub(a, a1)
                if v in rs.rootset:
                    t += Q(
                        self._nconst(_vneg(a1), a) * self._nconst(b, _vneg(b1)),
                        rs.norm(v),
                    )
                val = -Q(norm_g) * t / self._nconst(_vneg(a1), _vneg(b1))
                assert val.denominator == 1, (a, b)
                ds, _ = rs.root_string(b, a)
                assert abs(int(val)) == ds + 1, (a, b, val)
                self._set(a, b, int(val))

    def _set(self, a: Coords, b: Coords, val: int) -> None:
        self._n[(a, b)] = val
        self._n[(b, a)] = -val

    def _nconst(self, a: Coords, b: Coords) -> int:
        """N_{a,b} for roots a, b with a + b a root."""
        got = self._n.get((a, b))
        if got is not None:
            return got
        rs = self.rs
        a_pos = rs.is_positive(a)
        b_pos = rs.is_positive(b)
        if not a_pos and not b_pos:
            val = -self._nconst(_vneg(a), _vneg(b))
        else:
            # Mixed signs: rotate via N_{a,b}/(z,z) = N_{b,z}/(a,a) = N_{z,a}/(b,b)
            # for a + b + z = 0, landing on a same-sign pair of smaller height.
            s = tuple(x + y for x, y in zip(a, b))
            z = _vneg(s)
            if a_pos and not b_pos:
                if rs.is_positive(s):
                    val = Q(rs.norm(z) * self._nconst(b, z), rs.norm(a))
                else:
                    val = Q(rs.norm(z) * self._nconst(z, a), rs.norm(b))
            else:
                if rs.is_positive(s):
                    val = Q(rs.norm(z) * self._nconst(z, a), rs.norm(b))
                else:
                    val = Q(rs.norm(z) * self._nconst(b, z), rs.norm(a))
            assert Q(val).denominator == 1, (a, b)
            val = int(val)
        self._set(a, b, val)
        return val

    def nconst(self, a: Coords, b: Coords) -> int:
        """Public N_{a,b}; requires a, b, a+b all roots."""
        s = tuple(x + y for x, y in zip(a, b))
        if s not in self.rs.rootset:
            raise LietorError(f"{a} + {b} is not a root")
        return self._nconst(tuple(a), tuple(b))

    # -- brackets and form ---------------------------------------------------

    def h_elt(self, alpha: Coords) -> Elt:
        """h_alpha as an integer combination of the simple h_i."""
        return {
            ("h", i): c for i, c in enumerate(self.rs.coroot_coords(alpha)) if c
        }

    def bracket_keys(self, k1: Hashable, k2: Hashable) -> Elt:
        cached = self._table.get((k1, k2))
        if cached is not None:
            return dict(cached)
        t1, t2 = k1[0], k2[0]
        if t1 == "h" and t2 == "h":
            out: Elt = {}
        elif t1 == "h":
            c = self.rs.cartan_int(k2[1], self.rs.simple_root(k1[1]))
            out = single(k2, c)
        elif t2 == "h":
            c = self.rs.cartan_int(k1[1], self.rs.simple_root(k2[1]))
            out = single(k1, -c)
        else:
            a, b = k1[1], k2[1]
            s = tuple(x + y for x, y in zip(a, b))
            if not any(s):
                out = self.h_elt(a)
            elif s in self.rs.rootset:
                out = single(("x", s), self._nconst(a, b))
            else:
                out = {}
        self._table[(k1, k2)] = out
        return dict(out)

    def bracket(self, e1: Elt, e2: Elt) -> Elt:
        out: Elt = {}
        for k1, c1 in e1.items():
            for k2, c2 in e2.items():
                add_scaled(out, self.bracket_keys(k1, k2), c1 * c2)
        return out

    def form_keys(self, k1: Hashable, k2: Hashable) -> Q:
        t1, t2 = k1[0], k2[0]
        if t1 == "x" and t2 == "x":
            if all(x + y == 0 for x, y in zip(k1[1], k2[1])):
                return Q(2, self.rs.norm(k1[1]))
            return Q(0)
        if t1 == "h" and t2 == "h":
            i, j = k1[1], k2[1]
            return Q(self.rs.gram[i][j], self.rs.d[i] * self.rs.d[j])
        return Q(0)

    def form(self, e1: Elt, e2: Elt) -> Q:
        total = Q(0)
        for k1, c1 in e1.items():
            for k2, c2 in e2.items():
                total += c1 * c2 * self.form_keys(k1, k2)
        return total


def build_chevalley_algebra(rs: RootSystem) -> FiniteChevalleyAlgebra:
    return FiniteChevalleyAlgebra(rs)


def bracket_fin(alg: FiniteChevalleyAlgebra, x: Elt, y: Elt) -> Elt:
    return alg.bracket(x, y)


def invariant_form_fin(alg: FiniteChevalleyAlgebra, x: Elt, y: Elt) -> Q:
    return alg.form(x, y)


class AlgebraAutomorphism:
    """Automorphism given by its action on basis keys.

    ``keymap`` sends a basis key to an element; ``apply`` is the linear
    extension.  ``order`` is the declared order (verified by the certificate
    engine, not assumed).
    """

    def __init__(
        self,
        algebra,
        keymap: Callable[[Hashable], Elt],
        order: Optional[int] = None,
        name: str = "",
    ):
        self.algebra = algebra
        self.keymap = keymap
        self.order = order
        self.name = name

    def __repr__(self) -> str:
        return f"AlgebraAutomorphism({self.name or 'unnamed'})"

    def apply(self, e: Elt) -> Elt:
        out: Elt = {}
        for k, c in e.items():
            add_scaled(out, self.keymap(k), c)
        return out

    def apply_power(self, e: Elt, m: int) -> Elt:
        for _ in range(m):
            e = self.apply(e)
        return e


def chevalley_involution(alg: FiniteChevalleyAlgebra) -> AlgebraAutomorphism:
    """tau with tau(x_a) = -x_{-a} and tau(h) = -h; an order-2 automorphism."""

    def keymap(key: Hashable) -> Elt:
        if key[0] == "x":
            return single(("x", _vneg(key[1])), -1)
        return single(key, -1)

    return AlgebraAutomorphism(alg, keymap, order=2, name="chevalley_involution")


def dynkin_symmetries(rs: RootSystem) -> List[Tuple[int, ...]]:
    """All permutations of the simple roots preserving the Cartan matrix."""
    import itertools as it

    out = []
    n = rs.rank
    for p in it.permutations(range(n)):
        if all(
            rs.cartan[p[i]][p[j]] == rs.cartan[i][j]
            for i in range(n)
            for j in range(n)
        ):
            out.append(p)
    return out


def diagram_flip(rs: RootSystem) -> Tuple[int, ...]:
    """The canonical order-2 diagram symmetry (A_n reversal, D_n leg swap,
    E6 flip); identity when none exists."""
    n = rs.rank
    if rs.letter == "A" and n >= 2:
        return tuple(n - 1 - i for i in range(n))
    if rs.letter == "D":
        return tuple(list(range(n - 2)) + [n - 1, n - 2])
    if rs.letter == "E" and n == 6:
        return (5, 1, 4, 3, 2, 0)
    return tuple(range(n))


def diagram_automorphism(
    alg: FiniteChevalleyAlgebra, symmetry: Sequence[int]
) -> AlgebraAutomorphism:
    """Extend a Dynkin-diagram symmetry of order 1 or 2 to the algebra.

    Signs on non-simple root vectors are propagated through the extraspecial
    decomposition; multiplicativity and the declared order are checked.
    """
    rs = alg.rs
    p = tuple(symmetry)
    n = rs.rank
    if sorted(p) != list(range(n)):
        raise BuildError(f"{p} is not a permutation of the simple roots")
    if any(
        rs.cartan[p[i]][p[j]] != rs.cartan[i][j] for i in range(n) for j in range(n)
    ):
        raise BuildError(f"{p} does not preserve the Cartan matrix")
    order = 1 if p == tuple(range(n)) else 2
    if any(p[p[i]] != i for i in range(n)):
        raise UnsupportedTypeError("diagram symmetries of order > 2 are out of scope")

    def permute(root: Coords) -> Coords:
        out = [0] * n
        for i, c in enumerate(root):
            out[p[i]] = c
        return tuple(out)

    sign: Dict[Coords, int] = {}
    for i in range(n):
        sign[rs.simple_root(i)] = 1
    order_idx = {r: i for i, r in enumerate(rs.posroots)}
    posset = set(rs.posroots)
    for gamma in rs.posroots:
        if gamma in sign:
            continue
        a1 = next(
            a
            for a in rs.posroots
            if _vsub(gamma, a) in posset
            and order_idx[a] < order_idx[_vsub(gamma, a)]
        )
        b1 = _vsub(gamma, a1)
        s = Q(
            sign[a1] * sign[b1] * alg.nconst(permute(a1), permute(b1)),
            alg.nconst(a1, b1),
        )
        assert s.denominator == 1 and abs(s) == 1, gamma
        sign[gamma] = int(s)
    for gamma in rs.posroots:
        sign[_vneg(gamma)] = sign[gamma]

    def keymap(key: Hashable) -> Elt:
        if key[0] == "x":
            r = key[1]
            return single(("x", permute(r)), sign[r])
        return single(("h", p[key[1]]))

    auto = AlgebraAutomorphism(alg, keymap, order=order, name=f"diagram{p}")
    _assert_automorphism(alg, auto)
    for key in alg.keys:
        if auto.apply_power(single(key), order) != single(key):
            raise BuildError(f"diagram automorphism is not of order {order} on {key}")
    return auto


def _assert_automorphism(alg: FiniteChevalleyAlgebra, auto: AlgebraAutomorphism) -> None:
    for k1 in alg.keys:
        im1 = auto.keymap(k1)
        for k2 in alg.keys:
            lhs = auto.apply(alg.bracket_keys(k1, k2))
            rhs = alg.bracket(im1, auto.keymap(k2))
            if lhs != rhs:
                raise BuildError(f"not multiplicative on ({k1}, {k2})")


def exp_ad(algebra, x: Elt, e: Elt, max_steps: int = 40) -> Elt:
    """exp(ad x) applied to e; ad x must be nilpotent (guarded)."""
    out = dict(e)
    term = e
    k = 1
    while term:
        if k > max_steps:
            raise LietorError("ad x does not look nilpotent")
        term = scaled(algebra.bracket(x, term), Q(1, k))
        add_scaled(out, term)
        k += 1
    return out


def n_alpha(
    alg: FiniteChevalleyAlgebra,
    alpha: Coords,
    chevalley_system: Optional[Dict[Coords, Elt]] = None,
) -> AlgebraAutomorphism:
    """exp(ad x_a) exp(-ad x_{-a}) exp(ad x_a) for the given Chevalley pair.

    Maps the beta root space onto the w_alpha(beta) one and preserves the
    Z-span of the Chevalley basis.
    """
    alpha = tuple(alpha)
    if alpha not in alg.rs.rootset:
        raise LietorError(f"{alpha} is not a root")
    if chevalley_system is None:
        xp: Elt = single(("x", alpha))
        xm: Elt = single(("x", _vneg(alpha)))
    else:
        xp = chevalley_system[alpha]
        xm = chevalley_system[_vneg(alpha)]
    xm_neg = scaled(xm, -1)

    def keymap(key: Hashable) -> Elt:
        e = exp_ad(alg, xp, single(key))
        e = exp_ad(alg, xm_neg, e)
        return exp_ad(alg, xp, e)

    return AlgebraAutomorphism(alg, keymap, name=f"n_{alpha}")
