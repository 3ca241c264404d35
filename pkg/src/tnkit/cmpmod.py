"""The module families M^iso, M^mid, M^rig and the maps between them.

Local coordinates are indexed by group elements.  Global coordinates are
pairs ``(sigma, w)`` flattened as ``sigma * |S_E| + w``; tensoring with a
lattice ``Y`` appends the ``Y`` coordinate last.
"""

from fractions import Fraction
from math import gcd

from .exactlin import (
    Lattice, Subquotient, condition_lattice, identity, mat_inverse, mat_mul,
    mat_scale, mat_vec, transpose,
)
from .gmod import GMap, GModule, induced_witness
from .sites import check_cover


class DivisibilityRequired(ValueError):
    pass


class CoverConditionFails(ValueError):
    def __init__(self, witness, label=None):
        super().__init__(f"cover condition fails; uncovered element {label or witness}")
        self.witness = witness
        self.label = label


class EmptyPlaceSet(ValueError):
    pass


class PlaceNotInDottedSet(ValueError):
    pass


def _frac_mod1(q):
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def _std_vecs(dim, idx):
    return [[1 if i == k else 0 for i in range(dim)] for k in idx]


# ---------------------------------------------------------------- local

class LocalLevel:
    """``M^iso = Z``, ``M^mid`` and ``M^rig`` for a group and a level ``N``."""

    def __init__(self, group, N):
        if N < 1:
            raise ValueError("N must be positive")
        self.group = group
        self.N = N
        n = group.order
        self.n = n
        reg = GModule.regular(group)
        self.M_iso = GModule.trivial(group, name="M_iso")
        L = condition_lattice(n, N, [], [[1] * n])
        self.M_mid = GModule(group, L, reg.action, name="M_mid", check=False)
        self.M_rig = GModule(group, L, reg.action, relations=Lattice.standard(n),
                             name="M_rig", check=False)
        self.c_iso = GMap(self.M_mid, self.M_iso, [[1] * n], name="c_iso")
        self.c_rig = GMap(self.M_mid, self.M_rig, mat_scale(identity(n), -1), name="c_rig")

    def __repr__(self):
        return f"LocalLevel({self.group.name}, N={self.N})"

    def delta(self, g):
        return tuple(Fraction(int(i == g)) for i in range(self.n))

    def convention_basis(self):
        """``delta_1`` and ``(delta_s - delta_1)/N`` for ``s != 1``."""
        e = self.group.identity
        out = [self.delta(e)]
        for s in self.group.elements:
            if s != e:
                out.append(tuple(Fraction(int(i == s) - int(i == e), self.N) for i in range(self.n)))
        return out

    def kernel_c_rig(self):
        ker = self.c_rig.kernel()
        return GModule(self.group, ker, self.M_mid.action, name="ker c_rig", check=False)

    def kernel_witness(self):
        return induced_witness(self.kernel_c_rig(), hint=[self.delta(self.group.identity)])

    def s_iso(self):
        n = self.n
        if self.N % n:
            raise DivisibilityRequired(f"|G| = {n} does not divide N = {self.N}")
        return GMap(self.M_iso, self.M_mid, [[Fraction(1, n)] for _ in range(n)], name="s_iso")

    def lift_crig(self, f_rig):
        """Representatives in ``[0, 1)`` of ``-f_rig``; these lie in M^mid."""
        return tuple(_frac_mod1(-x) for x in f_rig)

    def M_circ(self):
        """Kernel of ``c_iso`` (sum-zero functions with values in ``Z/N``)."""
        return self.c_iso.kernel()


def build_local(group, N):
    return LocalLevel(group, N)


def inflate_local(lower, upper, p, family):
    """Local inflation from ``lower`` (E, N) to ``upper`` (K, M) along ``p``."""
    if upper.N % lower.N:
        raise DivisibilityRequired(f"N = {lower.N} does not divide M = {upper.N}")
    GE, GK = lower.group, upper.group
    if family == "iso":
        deg = GK.order // GE.order
        return GMap(lower.M_iso, upper.M_iso, [[deg]], via=p, name="infl_iso")
    mat = [[1 if p[t] == s else 0 for s in GE.elements] for t in GK.elements]
    if family == "mid":
        return GMap(lower.M_mid, upper.M_mid, mat, via=p, name="infl_mid")
    if family == "rig":
        return GMap(lower.M_rig, upper.M_rig, mat, via=p, name="infl_rig")
    raise ValueError(f"unknown family {family!r}")


# --------------------------------------------------------- the dual module

class DualMid:
    """``M^{mid,v} = N Z[G] + Z`` inside ``Z[G]`` with the evaluation pairing."""

    def __init__(self, group, N):
        self.group = group
        self.N = N
        n = group.order
        gens = [[N if i == k else 0 for i in range(n)] for k in range(n)] + [[1] * n]
        self.lattice = Lattice.from_generators(gens, n)
        reg = GModule.regular(group)
        self.module = GModule(group, self.lattice, reg.action, name="M_mid_dual", check=False)
        self.level = LocalLevel(group, N)

    @staticmethod
    def pair(x, y):
        return sum(Fraction(a) * b for a, b in zip(x, y))

    def computed_dual(self):
        """Dual lattice of M^mid computed from its basis (full rank)."""
        B = [list(b) for b in self.level.M_mid.lattice.basis]
        D = transpose(mat_inverse(B), len(B))
        return Lattice.from_generators(D, len(B))

    def pairing_integral(self):
        return all(self.pair(x, y).denominator == 1
                   for x in self.level.M_mid.lattice.basis for y in self.lattice.basis)

    def pairing_perfect(self):
        return self.computed_dual() == self.lattice

    def gram_det(self):
        from .exactlin import det, int_matrix
        G = [[self.pair(x, y) for y in self.lattice.basis] for x in self.level.M_mid.lattice.basis]
        return det(int_matrix(G))

    def norm_of_delta_e(self):
        e = self.group.identity
        d = [int(i == e) for i in range(self.group.order)]
        return tuple(mat_vec(self.module.norm_matrix(), d))

    def norm_image(self):
        """Image of ``y -> sum_s y(s)`` as a sublattice of ``Z``."""
        return self.lattice.image([[1] * self.group.order], 1)


def dual_mid(group, N):
    return DualMid(group, N)


def dual_inflation_matrix(p, GE, GK):
    """``y^E(s) = sum over t -> s of y^K(t)``."""
    return [[1 if p[t] == s else 0 for t in GK.elements] for s in GE.elements]


class Node:
    """A lattice ``L`` modulo ``R`` (``R=None`` for none) in some ``Q^dim``."""

    def __init__(self, lattice, relations=None, name=""):
        self.lattice = lattice
        self.relations = relations
        self.name = name

    @property
    def dim(self):
        return self.lattice.dim

    def zero_lattice(self):
        return self.relations or Lattice.zero(self.dim)


def check_short_exact(A, B, C, f, g):
    """Exactness of ``0 -> A -f-> B -g-> C -> 0`` for lattice quotients.

    Returns a dict of booleans: well-defined maps, injective, middle, surjective.
    """
    out = {}
    fa = [mat_vec(f, v) for v in A.lattice.basis]
    gb = [mat_vec(g, v) for v in B.lattice.basis]
    out["f_defined"] = all(v in B.lattice for v in fa) and all(
        mat_vec(f, v) in B.zero_lattice() for v in A.zero_lattice().basis)
    out["g_defined"] = all(v in C.lattice for v in gb) and all(
        mat_vec(g, v) in C.zero_lattice() for v in B.zero_lattice().basis)
    ker_f = A.lattice.preimage(f, B.zero_lattice())
    out["injective"] = ker_f == A.zero_lattice()
    ker_g = B.lattice.preimage(g, C.zero_lattice())
    im_f = (Lattice.from_generators(fa, B.dim) if fa else Lattice.zero(B.dim)) + B.zero_lattice()
    out["middle"] = ker_g == im_f
    im_g = (Lattice.from_generators(gb, C.dim) if gb else Lattice.zero(C.dim)) + C.zero_lattice()
    out["surjective"] = im_g == C.lattice
    return out


def locmides(group, N):
    """The four short exact sequences around M^mid and its dual."""
    n = group.order
    e = group.identity
    lev = LocalLevel(group, N)
    dualm = DualMid(group, N)
    Zn = Lattice.standard(n)
    NinvZn = Lattice.standard(n, N)
    NZn = Lattice.from_generators([[N if i == k else 0 for i in range(n)] for k in range(n)], n)
    ident = identity(n)
    seqs = {}
    seqs["locmides1"] = (
        Node(lev.M_mid.lattice, None, "M_mid"),
        Node(NinvZn, None, "N^-1 Z[G]"),
        Node(Lattice.standard(1, N), Lattice.standard(1), "N^-1 Z/Z"),
        ident, [[1] * n])
    seqs["locmides2"] = (
        Node(Zn, None, "Z[G]"),
        Node(lev.M_mid.lattice, None, "M_mid"),
        Node(lev.M_mid.lattice, Zn, "(N^-1 Z/Z)[G]_0"),
        ident, ident)
    seqs["locmides3"] = (
        Node(NZn, None, "N Z[G]"),
        Node(dualm.lattice, None, "M_mid_dual"),
        Node(Lattice.standard(1), Lattice.from_generators([[N]], 1), "Z/N"),
        ident, [[int(i == e) for i in range(n)]])
    seqs["locmides4"] = (
        Node(dualm.lattice, None, "M_mid_dual"),
        Node(Zn, None, "Z[G]"),
        Node(Zn, dualm.lattice, "(Z/N)[G]/(Z/N)"),
        ident, ident)
    return {k: check_short_exact(*v) for k, v in seqs.items()}


# ---------------------------------------------------------------- global

class GlobalLevel:
    """The global modules for a site, at ``N = |G|``."""

    def __init__(self, site):
        if site.n_places == 0:
            raise EmptyPlaceSet("the place set is empty")
        self.site = site
        G = site.group
        self.group = G
        self.g = G.order
        self.s = site.n_points
        self.dim = self.g * self.s
        dotted = set(site.dotted)
        self.allowed = [site.act[G.inv(sig)][w] in dotted
                        for sig in G.elements for w in range(self.s)]
        g, s, dim = self.g, self.s, self.dim
        action = []
        for t in G.elements:
            A = [[0] * dim for _ in range(dim)]
            for sig in G.elements:
                for w in range(s):
                    A[self.idx(G.mul(t, sig), site.act[t][w])][self.idx(sig, w)] = 1
            action.append(A)
        self.action = action
        off = [i for i in range(dim) if not self.allowed[i]]
        rows = [[1 if i // s == sig else 0 for i in range(dim)] for sig in G.elements]
        cols = [[1 if i % s == w else 0 for i in range(dim)] for w in range(s)]
        Lmid = condition_lattice(dim, g, _std_vecs(dim, off) + rows, cols)
        Lrig = condition_lattice(dim, g, _std_vecs(dim, off), rows + cols)
        allowed_idx = [i for i in range(dim) if self.allowed[i]]
        Zsupp = Lattice.from_generators(_std_vecs(dim, allowed_idx), dim)
        self.M_mid = GModule(G, Lmid, action, name="M_mid", check=False)
        self.M_rig = GModule(G, Lrig, action, relations=Zsupp, name="M_rig", check=False)
        perm = []
        for t in G.elements:
            P = [[0] * s for _ in range(s)]
            for w in range(s):
                P[site.act[t][w]][w] = 1
            perm.append(P)
        self.perm = perm
        gens = [[int(i == k) - int(i == 0) for i in range(s)] for k in range(1, s)]
        Liso = Lattice.from_generators(gens, s) if gens else Lattice.zero(s)
        self.M_iso = GModule(G, Liso, perm, name="M_iso", check=False)
        ciso = [[1 if i % s == w else 0 for i in range(dim)] for w in range(s)]
        self.c_iso = GMap(self.M_mid, self.M_iso, ciso, name="c_iso", check=False)
        self.c_rig = GMap(self.M_mid, self.M_rig, mat_scale(identity(dim), -1), name="c_rig",
                          check=False)
        self.cover = check_cover(site)

    def __repr__(self):
        return f"GlobalLevel({self.site})"

    def idx(self, sig, w):
        return sig * self.s + w

    def kernel_c_rig(self):
        ker = self.c_rig.kernel()
        return GModule(self.group, ker, self.action, name="ker c_rig", check=False)

    def kernel_hint(self):
        """Row ``sigma = 1`` functions ``delta(1, vdot_k) - delta(1, vdot_0)``."""
        e = self.group.identity
        d = self.site.dotted
        out = []
        for k in range(1, len(d)):
            v = [Fraction(0)] * self.dim
            v[self.idx(e, d[k])] = Fraction(1)
            v[self.idx(e, d[0])] = Fraction(-1)
            out.append(tuple(v))
        return out

    def kernel_witness(self):
        return induced_witness(self.kernel_c_rig(), hint=self.kernel_hint())

    def require_cover(self):
        if not self.cover.covered:
            w = self.cover.witness
            raise CoverConditionFails(w, self.group.label(w))

    # -- constructive lift of c_rig
    def w_sigma(self, sig):
        """Least-index ``w`` with ``sigma^-1 w`` dotted."""
        return next(w for w in range(self.s) if self.allowed[self.idx(sig, w)])

    def lift_crig(self, f_rig):
        f_mid = [Fraction(0)] * self.dim
        for sig in self.group.elements:
            ws = self.w_sigma(sig)
            total = Fraction(0)
            for w in range(self.s):
                i = self.idx(sig, w)
                if not self.allowed[i] or w == ws:
                    continue
                f_mid[i] = _frac_mod1(-Fraction(f_rig[i]))
                total += f_mid[i]
            f_mid[self.idx(sig, ws)] = -total
        return tuple(f_mid)

    # -- support normalization and the splitting of c_iso
    def normalize_support(self, Y, f):
        """Move a ``Y``-valued function on S_E onto the dotted points.

        Returns ``(fdot, correction, terms)`` with ``fdot = f + correction``
        and ``terms`` a list of ``(sigma_w, h_w)`` whose ``(sigma_w - 1) h_w``
        sum to the correction.
        """
        self.require_cover()
        site, G = self.site, self.group
        dotted = set(site.dotted)
        dY = Y.dim
        zero = tuple(Fraction(0) for _ in range(dY))
        fd = [tuple(Fraction(x) for x in y) for y in f]
        corr = [list(zero) for _ in range(self.s)]
        terms = []
        for w in range(self.s):
            if w in dotted or not any(fd[w]):
                continue
            sw = next(g for g in G.elements if site.act[g][w] in dotted)
            vw = next(d for d in site.dotted if site.act[sw][d] == d)
            y = fd[w]
            gy = Y.act(sw, y)
            h = [list(zero) for _ in range(self.s)]
            h[w] = list(y)
            h[vw] = [a - b for a, b in zip(h[vw], y)]
            terms.append((sw, [tuple(v) for v in h]))
            for tgt, vec, sign in ((site.act[sw][w], gy, 1), (site.act[sw][vw], gy, -1),
                                   (w, y, -1), (vw, y, 1)):
                corr[tgt] = [a + sign * b for a, b in zip(corr[tgt], vec)]
        corr = [tuple(c) for c in corr]
        out = [tuple(a + b for a, b in zip(x, c)) for x, c in zip(fd, corr)]
        return out, corr, terms

    def split_invariant(self, Y, f, fdot=None):
        """``mu`` in ``(M^mid (x) Y)^G`` with ``sum_sigma mu(sigma, w) = f(w)``."""
        if fdot is None:
            fdot, _, _ = self.normalize_support(Y, f)
        G, site = self.group, self.site
        dY = Y.dim
        mu = [Fraction(0)] * (self.dim * dY)
        for sig in G.elements:
            si = G.inv(sig)
            for w in range(self.s):
                if not self.allowed[self.idx(sig, w)]:
                    continue
                val = Y.act(sig, fdot[site.act[si][w]])
                base = self.idx(sig, w) * dY
                for j in range(dY):
                    mu[base + j] = Fraction(val[j]) / self.g
        return tuple(mu)

    def s_iso(self):
        """The splitting of ``c_iso`` as a map ``M^iso -> M^mid``."""
        self.require_cover()
        G, site, s = self.group, self.site, self.s
        Yfun = GModule(G, Lattice.standard(s), self.perm, name="Z[S]", check=False)
        f = [tuple(Fraction(int(i == w)) for i in range(s)) for w in range(s)]
        fdot, _, _ = self.normalize_support(Yfun, f)
        mat = [[Fraction(0)] * s for _ in range(self.dim)]
        for sig in G.elements:
            si = G.inv(sig)
            for w in range(s):
                if not self.allowed[self.idx(sig, w)]:
                    continue
                phi = fdot[site.act[si][w]]
                row = mat[self.idx(sig, w)]
                for u in range(s):
                    row[u] = phi[site.act[si][u]] / self.g
        return GMap(self.M_iso, self.M_mid, mat, name="s_iso")

    def M_circ(self):
        return self.c_iso.kernel()

    # -- localization
    def localize(self, w):
        """Local level at a dotted point and the three localization maps."""
        if w not in self.site.dotted:
            raise PlaceNotInDottedSet(f"point {w} is not a chosen lift")
        H = self.site.stabilizer(w)
        sub, emb = self.group.subgroup_group(H)
        loc = LocalLevel(sub, self.g)
        iso = [[1 if u == w else 0 for u in range(self.s)]]
        mid = [[1 if i == self.idx(emb[k], w) else 0 for i in range(self.dim)]
               for k in range(len(emb))]
        maps = {
            "iso": GMap(self.M_iso, loc.M_iso, iso, via=emb, name="loc_iso"),
            "mid": GMap(self.M_mid, loc.M_mid, mid, via=emb, name="loc_mid"),
            "rig": GMap(self.M_rig, loc.M_rig, mid, via=emb, name="loc_rig"),
        }
        return loc, maps, emb


def build_global(site):
    return GlobalLevel(site)


def inflate_global(tower, lower, upper, family):
    """Global inflation along a validated tower, extended by zero to new places."""
    p = tower.p
    GK = upper.group
    if family == "iso":
        mat = [[0] * lower.s for _ in range(upper.s)]
        for u in range(upper.s):
            w = tower.point_map[u]
            if w is not None:
                mat[u][w] = tower.local_degree(u)
        return GMap(lower.M_iso, upper.M_iso, mat, via=p, name="infl_iso")
    mat = [[0] * lower.dim for _ in range(upper.dim)]
    for sig in GK.elements:
        for u in range(upper.s):
            w = tower.point_map[u]
            i = upper.idx(sig, u)
            if w is None or not upper.allowed[i]:
                continue
            mat[i][lower.idx(p[sig], w)] = 1
    if family == "mid":
        return GMap(lower.M_mid, upper.M_mid, mat, via=p, name="infl_mid")
    if family == "rig":
        return GMap(lower.M_rig, upper.M_rig, mat, via=p, name="infl_rig")
    raise ValueError(f"unknown family {family!r}")


def square_commutes(path1, path2, source_lattice, target_zero=None):
    """Whether two composite maps agree on every basis vector of the source.

    ``path1`` and ``path2`` are lists of matrices applied left to right.
    Returns ``(ok, witness)`` where ``witness`` is the first failing basis vector.
    """
    for b in source_lattice.basis:
        x, y = list(b), list(b)
        for m in path1:
            x = mat_vec(m, x)
        for m in path2:
            y = mat_vec(m, y)
        d = [a - c for a, c in zip(x, y)]
        if target_zero is None:
            if any(d):
                return False, b
        elif d not in target_zero:
            return False, b
    return True, None


def factorization_check(infl, source_circ, target_circ, degree):
    """Inflation on M^circ equals ``(infl / degree) o (degree * id)``.

    Returns the second factor's matrix when it is integral on ``M^circ``
    (maps ``source_circ`` into ``target_circ``), otherwise ``None``.
    """
    second = mat_scale(infl.matrix, Fraction(1, degree))
    for b in source_circ.basis:
        if tuple(mat_vec(second, b)) not in target_circ:
            return None
        lhs = mat_vec(infl.matrix, b)
        rhs = mat_vec(second, [degree * x for x in b])
        if lhs != rhs:
            return None
    return second


def norm_image_generator(group_order, M):
    return gcd(M, group_order)


# ------------------------------------------------------ tower operators

class TowerSplitting:
    """The support-moving operators on a two-level tower E (level 0) < K (level 1).

    ``Y`` is a module over the lower group; upstairs it acts through ``p``.
    Representatives ``g(k, x)`` are least-index elements of the top group in
    the kernel to level ``k-1`` with ``g . x`` dotted; the base point is the
    least-index place whose decomposition group contains ``g``.
    """

    def __init__(self, tower, Y):
        if tower.new_places:
            raise ValueError("tower operators need equal place sets")
        self.tower = tower
        self.Y = Y
        self.sites = [tower.lower, tower.upper]
        GK = tower.upper.group
        p = tower.p
        self.p = p
        self._levels = [None, None]
        self.kernels = [list(GK.elements), [t for t in GK.elements if p[t] == tower.lower.group.identity]]
        c = check_cover(tower.lower)
        if not c.covered:
            raise CoverConditionFails(c.witness, tower.lower.group.label(c.witness))
        # upstairs only the kernel of p has to be covered
        upper_cov = set()
        for _, H in tower.upper.places:
            upper_cov.update(H)
        for t in self.kernels[1]:
            if t not in upper_cov:
                raise CoverConditionFails(t, GK.label(t))

    def _act_point(self, level, t, w):
        site = self.sites[level]
        return site.act[self.p[t] if level == 0 else t][w]

    def _act_Y(self, t, y):
        return self.Y.act(self.p[t], y)

    def _proj(self, level, k, w):
        """Image at level ``k`` of a level ``level`` point (k <= level)."""
        if k == level:
            return w
        return self.tower.point_map[w]

    def rep(self, k, x):
        site = self.sites[k]
        dotted = set(site.dotted)
        g = next((t for t in self.kernels[k] if self._act_point(k, t, x) in dotted), None)
        if g is None:
            raise ValueError("no representative")
        gk = self.p[g] if k == 0 else g
        v = next((vi for vi in range(site.n_places) if gk in site.places[vi][1]), None)
        if v is None:
            raise CoverConditionFails(g)
        return g, v

    def pi_step(self, i, k, f):
        """``pi_{i,k}``: returns ``(new f, correction)``."""
        site = self.sites[i]
        dotted_k = set(self.sites[k].dotted)
        out = [list(map(Fraction, y)) for y in f]
        for w in range(site.n_points):
            y = f[w]
            if not any(y):
                continue
            x = self._proj(i, k, w)
            if x in dotted_k:
                continue
            g, v = self.rep(k, x)
            d = site.point(v)
            gy = self._act_Y(g, y)
            for tgt, vec, sign in ((self._act_point(i, g, w), gy, 1),
                                   (self._act_point(i, g, d), gy, -1),
                                   (w, y, -1), (d, y, 1)):
                out[tgt] = [a + sign * b for a, b in zip(out[tgt], vec)]
        out = [tuple(r) for r in out]
        corr = [tuple(a - Fraction(b) for a, b in zip(o, y)) for o, y in zip(out, f)]
        return out, corr

    def pi(self, i, f):
        g = [tuple(Fraction(x) for x in y) for y in f]
        for k in range(i + 1):
            g, _ = self.pi_step(i, k, g)
        return g

    def j(self, f):
        """Sum over fibres: upper functions to lower functions."""
        dY = self.Y.dim
        out = [[Fraction(0)] * dY for _ in range(self.sites[0].n_points)]
        for u, y in enumerate(f):
            w = self.tower.point_map[u]
            out[w] = [a + b for a, b in zip(out[w], y)]
        return [tuple(r) for r in out]

    def p_map(self, f):
        """Inflation of Y-valued functions: ``p(f)(u) = [K_u:E_w] f(w)``."""
        out = []
        for u in range(self.sites[1].n_points):
            w = self.tower.point_map[u]
            c = self.tower.local_degree(u)
            out.append(tuple(c * Fraction(x) for x in f[w]))
        return out

    def s(self, level, f):
        """``s_i(f)`` in ``M^mid (x) Y`` at the given level (flattened)."""
        site = self.sites[level]
        G = site.group
        if self._levels[level] is None:
            self._levels[level] = GlobalLevel(site)
        gl = self._levels[level]
        fd = self.pi(level, f)
        Yl = self.Y if level == 0 else GModule(G, self.Y.lattice,
                                                [self.Y.action[self.p[t]] for t in G.elements],
                                                check=False)
        return gl.split_invariant(Yl, f, fdot=fd), gl, Yl
