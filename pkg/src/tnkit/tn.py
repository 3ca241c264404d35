"""Tate-Nakayama data for tori at the level of cocharacter lattices.

A torus is given by its cocharacter lattice ``Y`` (a :class:`GModule`) and
optionally the saturated stable sublattice ``Y_Z`` of a subtorus.  Locally:

* ``Y^iso`` is the coinvariant group ``Y / IY``;
* ``Y^mid`` consists of pairs ``(lam, mu)`` with ``lam`` in ``Y`` (taken
  modulo ``IY``), ``mu`` in ``Q Y_Z`` and equal normalized norms;
* ``Y^rig`` is the torsion of ``QY / IY``.

Globally ``lam`` is a sum-zero ``Y``-valued function on the points of a site
and ``mu`` an invariant element of ``M^mid (x) Y_Z``.
"""

from fractions import Fraction

from .cmpmod import GlobalLevel, LocalLevel, CoverConditionFails
from .exactlin import (
    Lattice, Subquotient, as_fraction, common_denominator, kron, lcm,
    mat_scale, mat_sub, identity, mat_vec, solve_rational,
)
from .gmod import GModule, canonical_submodules, tensor


class NotTorsion(ValueError):
    pass


class PlaceMismatch(ValueError):
    pass


class NotSaturated(ValueError):
    pass


def _vec(v):
    return tuple(as_fraction(x) for x in v)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _scale(c, a):
    return tuple(c * x for x in a)


def direct_sum(*lattices):
    """``L_1 + ... + L_k`` inside the concatenated ambient space."""
    dims = [L.dim for L in lattices]
    total = sum(dims)
    gens = []
    off = 0
    for L, d in zip(lattices, dims):
        for b in L.basis:
            gens.append([0] * off + list(b) + [0] * (total - off - d))
        off += d
    return Lattice.from_generators(gens, total) if gens else Lattice.zero(total)


def invariant_lattice(M):
    """``M^G`` for a lattice module, as a sublattice of its lattice."""
    stacked = []
    for g in M.group.elements:
        stacked.extend(mat_sub(M.action[g], identity(M.dim)))
    return M.lattice.kernel(stacked)


# ------------------------------------------------------------------ local

class TorusData:
    """Cocharacter data of a torus ``T`` and optionally a subtorus ``Z``."""

    def __init__(self, Y, Y_Z=None, name=None):
        if not Y.is_lattice:
            raise ValueError("Y must be a lattice module")
        self.Y = Y
        self.group = Y.group
        self.dim = Y.dim
        self.order = Y.group.order
        self.name = name or Y.name
        YZ = Y.lattice if Y_Z is None else Y_Z
        if not YZ <= Y.lattice:
            raise NotSaturated("Y_Z is not contained in Y")
        if YZ.saturation_in(Y.lattice) != YZ:
            raise NotSaturated("Y_Z is not saturated in Y")
        for g in self.group.elements:
            for b in YZ.basis:
                if tuple(Y.act(g, b)) not in YZ:
                    raise ValueError("Y_Z is not stable under the group")
        self.Y_Z = YZ
        cs = canonical_submodules(Y)
        self.IY = cs.augmentation_submodule
        self.coinvariants = cs.coinvariants
        self.norm = Y.norm_matrix()
        self.norm_nat = mat_scale(self.norm, Fraction(1, self.order))

    def __repr__(self):
        return f"TorusData({self.name}, dim={self.dim}, group={self.group.name})"

    def N(self, v):
        return tuple(mat_vec(self.norm, v))

    def N_nat(self, v):
        return tuple(mat_vec(self.norm_nat, v))

    def restrict(self, H):
        """The same torus over the subgroup ``H`` (sorted element tuple)."""
        return TorusData(self.Y.restrict(H), self.Y_Z, name=self.name)

    def torsion_kernel(self):
        """``ker(N) / IY`` inside ``Y / IY``."""
        ker = self.Y.lattice.kernel(self.norm)
        return Subquotient(self.IY, ker)


def y_iso(T):
    """Local ``Y^iso = Y_G`` as a subquotient of ``Y``."""
    return T.coinvariants


class YRigClass:
    """A class in ``(QY / IY)[tor]`` with its torsion certificate ``n``."""

    def __init__(self, torus, rep, certificate):
        self.torus = torus
        self.rep = rep
        self.certificate = certificate

    def __repr__(self):
        return f"YRigClass({[str(x) for x in self.rep]}, n={self.certificate})"

    def __eq__(self, other):
        return isinstance(other, YRigClass) and self.torus is other.torus and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __add__(self, other):
        return y_rig_reduce(self.torus, _add(self.rep, other.rep),
                            lcm(self.certificate, other.certificate))

    def __neg__(self):
        return y_rig_reduce(self.torus, _scale(-1, self.rep), self.certificate)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not any(self.rep)

    def order(self):
        n = self.certificate
        for k in range(1, n + 1):
            if n % k == 0 and _scale(k, self.rep) in self.torus.IY:
                return k
        return n


def _denominator_in(L, v):
    c = L.rational_coords(v)
    if c is None:
        return None
    return common_denominator(c)


def y_rig_reduce(T, mu, n=None):
    """The class of ``mu`` in ``(QY / IY)[tor]``.

    ``n`` is a torsion certificate (``n mu in IY``); by default it is
    ``|G|`` times the denominator of ``mu`` relative to ``Y``.
    """
    mu = _vec(mu)
    if len(mu) != T.dim:
        raise ValueError("vector has the wrong length")
    d = _denominator_in(T.Y.lattice, mu)
    if d is None:
        raise ValueError("vector is not in QY")
    if n is None:
        n = T.order * d
    if n <= 0 or _scale(n, mu) not in T.IY:
        raise NotTorsion(f"{n} * mu is not in IY")
    return YRigClass(T, T.IY.reduce(mu), n)


class YMidElement:
    """A pair ``(lam, mu)``; ``lam`` is a representative of its class in ``Y_G``."""

    def __init__(self, torus, lam, mu):
        self.torus = torus
        self.lam = _vec(lam)
        self.mu = _vec(mu)

    def __repr__(self):
        return f"YMidElement(lam={[str(x) for x in self.lam]}, mu={[str(x) for x in self.mu]})"

    def __add__(self, other):
        return YMidElement(self.torus, _add(self.lam, other.lam), _add(self.mu, other.mu))

    def __neg__(self):
        return YMidElement(self.torus, _scale(-1, self.lam), _scale(-1, self.mu))

    def same(self, other):
        """Equality in ``Y^mid``: ``lam`` modulo ``IY`` and ``mu`` exactly."""
        return (_sub(self.lam, other.lam) in self.torus.IY) and self.mu == other.mu


def y_mid_check(T, lam, mu):
    """Whether ``(lam, mu)`` lies in local ``Y^mid(Z -> T)``."""
    lam, mu = _vec(lam), _vec(mu)
    if len(lam) != T.dim or len(mu) != T.dim:
        return False
    if lam not in T.Y.lattice or not T.Y_Z.span_contains(mu):
        return False
    return T.N(lam) == T.N(mu)


def _require_mid(T, x):
    if not y_mid_check(T, x.lam, x.mu):
        raise ValueError("pair is not in Y^mid")


def iso_to_mid(T, lam):
    """``lam -> (lam, N^nat(lam))``."""
    lam = _vec(lam)
    if lam not in T.Y.lattice:
        raise ValueError("lambda is not in Y")
    x = YMidElement(T, lam, T.N_nat(lam))
    _require_mid(T, x)
    return x


def mid_to_rig(T, x):
    """``(lam, mu) -> lam - mu``."""
    _require_mid(T, x)
    return y_rig_reduce(T, _sub(x.lam, x.mu))


def defect(T, x):
    """``(lam, mu) -> mu - N^nat(mu)``."""
    _require_mid(T, x)
    return y_rig_reduce(T, _sub(x.mu, T.N_nat(x.mu)))


def apply_map(phi, x, target):
    """Push a local ``Y^mid`` element along a lattice map ``phi: Y -> Y'``."""
    return YMidElement(target, mat_vec(phi, x.lam), mat_vec(phi, x.mu))


class LocalCartesian:
    """Fibre-product data for ``Y^mid`` at a finite level ``N``.

    ``P`` holds pairs ``(lam, mu)`` in ``Y + (1/N) Y_Z`` with equal norms;
    ``FP`` holds pairs ``(lam, F)`` with ``F`` invariant in
    ``M^mid_N (x) Y_Z`` and ``N(lam) = c_iso(F)``.  ``phi`` sends ``mu`` to
    ``sum_sigma sigma(mu) (x) delta_sigma``.
    """

    def __init__(self, T, N):
        self.T = T
        self.N = N
        G = T.group
        d, n = T.dim, G.order
        self.level = LocalLevel(G, N)
        YZ = GModule(G, T.Y_Z, T.Y.action, check=False)
        self.MY = tensor(self.level.M_mid, YZ)
        self.invariants = invariant_lattice(self.MY)
        # P
        amb = direct_sum(T.Y.lattice, T.Y_Z.scale(Fraction(1, N)))
        eq = [list(r) + [-x for x in s] for r, s in zip(T.norm, T.norm)]
        self.P = amb.kernel(eq)
        # FP
        ciso = [[1 if i % d == j else 0 for i in range(n * d)] for j in range(d)]
        amb2 = direct_sum(T.Y.lattice, self.invariants)
        eq2 = [list(r) + [-x for x in s] for r, s in zip(T.norm, ciso)]
        self.FP = amb2.kernel(eq2)
        # phi: (lam, mu) -> (lam, (sigma mu)_sigma)
        phi = [[0] * (2 * d) for _ in range(d + n * d)]
        for i in range(d):
            phi[i][i] = 1
        for sig in G.elements:
            A = T.Y.action[sig]
            for i in range(d):
                for j in range(d):
                    phi[d + sig * d + i][d + j] = A[i][j]
        self.phi = phi

    def image(self):
        return self.P.image(self.phi, len(self.phi))

    def is_bijection(self):
        img = self.image()
        return img == self.FP and img.rank == self.P.rank

    def kernel_column(self):
        """``ker(N)/IY`` against the torsion of ``Y/IY``."""
        tk = self.T.torsion_kernel()
        return tk.invariants, self.T.coinvariants.torsion_invariants

    def random_element(self, rng, bound=3):
        B = self.P.basis
        v = [Fraction(0)] * (2 * self.T.dim)
        for b in B:
            c = rng.randint(-bound, bound)
            v = [a + c * x for a, x in zip(v, b)]
        d = self.T.dim
        return YMidElement(self.T, v[:d], v[d:])


# ----------------------------------------------------------------- global

class GlobalTorus:
    """Global ``Y^iso`` and ``Y^mid`` for a torus over a site.

    ``lam`` is flattened with index ``w * dim Y + j``; ``mu`` lives in
    ``M^mid (x) Y_Z`` with index ``(sigma * |S| + w) * dim Y + j``.
    """

    def __init__(self, T, site, level=None):
        if T.group is not site.group:
            raise ValueError("torus and site must share the group")
        self.T = T
        self.site = site
        self.level = level or GlobalLevel(site)
        G = site.group
        s, d = site.n_points, T.dim
        self.s, self.d, self.g = s, d, G.order
        acts = [kron(self.level.perm[t], T.Y.action[t]) for t in G.elements]
        YS = direct_sum(*([T.Y.lattice] * s))
        summ = [[1 if i % d == j else 0 for i in range(s * d)] for j in range(d)]
        self.YS0_lattice = YS.kernel(summ)
        self.YS0 = GModule(G, self.YS0_lattice, acts, name="Y[S]_0", check=False)
        cs = canonical_submodules(self.YS0)
        self.I = cs.augmentation_submodule
        self.y_iso = cs.coinvariants
        self.norm = self.YS0.norm_matrix()
        YZ = GModule(G, T.Y_Z, T.Y.action, check=False)
        self.MY = tensor(self.level.M_mid, YZ)
        self.invariants = invariant_lattice(self.MY)
        n = self.level.dim * d
        self.ciso = [[1 if (i // d) % s == w and i % d == j else 0 for i in range(n)]
                     for w in range(s) for j in range(d)]
        self._fiber = None

    def __repr__(self):
        return f"GlobalTorus({self.T.name}, {self.site})"

    # -- coordinates
    def value(self, f, w):
        return tuple(f[w * self.d:(w + 1) * self.d])

    def mu_value(self, mu, sig, w):
        i = self.level.idx(sig, w) * self.d
        return tuple(mu[i:i + self.d])

    def function(self, values):
        """Flatten a list of per-point vectors."""
        return tuple(Fraction(x) for v in values for x in v)

    def points(self, f):
        return [self.value(f, w) for w in range(self.s)]

    def N(self, lam):
        return tuple(mat_vec(self.norm, lam))

    def c_iso(self, mu):
        return tuple(mat_vec(self.ciso, mu))

    # -- membership
    def check(self, lam, mu):
        """Whether ``(lam, mu)`` lies in global ``Y^mid(Z -> T)``."""
        lam, mu = _vec(lam), _vec(mu)
        if lam not in self.YS0_lattice or mu not in self.invariants:
            return False
        return self.N(lam) == self.c_iso(mu)

    def fiber_lattice(self):
        """All pairs ``(lam, mu)`` with matching norms, as one lattice."""
        if self._fiber is None:
            amb = direct_sum(self.YS0_lattice, self.invariants)
            eq = [list(r) + [-x for x in c] for r, c in zip(self.norm, self.ciso)]
            self._fiber = amb.kernel(eq)
        return self._fiber

    def random_element(self, rng, bound=3):
        B = self.fiber_lattice().basis
        n = self.s * self.d
        v = [Fraction(0)] * len(B[0]) if B else [Fraction(0)] * (n + len(self.ciso[0]))
        for b in B:
            c = rng.randint(-bound, bound)
            if c:
                v = [a + c * x for a, x in zip(v, b)]
        return tuple(v[:n]), tuple(v[n:])

    def solve_mu(self, lam):
        """Some ``mu`` completing ``lam`` to a ``Y^mid`` pair, or ``None``."""
        B = self.invariants.basis
        target = self.N(lam)
        A = [[mat_vec([row], b)[0] for b in B] for row in self.ciso]
        c = solve_rational(A, target, len(B))
        if c is None:
            return None
        mu = [Fraction(0)] * len(self.ciso[0])
        for coef, b in zip(c, B):
            mu = [a + coef * x for a, x in zip(mu, b)]
        mu = tuple(mu)
        return mu if mu in self.invariants else None

    # -- the place parametrization of the invariants
    def mu_from_places(self, mus):
        """``mu(sigma, w) = sigma mu_v`` when ``sigma^-1 w`` is the lift of ``v``."""
        G, site, d = self.site.group, self.site, self.d
        out = [Fraction(0)] * (self.level.dim * d)
        for sig in G.elements:
            si = G.inv(sig)
            for w in range(self.s):
                x = site.act[si][w]
                if x not in site.dotted:
                    continue
                v = site.place_of[x]
                val = self.T.Y.act(sig, mus[v])
                i = self.level.idx(sig, w) * d
                out[i:i + d] = val
        return tuple(out)

    def place_parametrization(self):
        """Lattice of ``(mu_v)_v`` in ``((1/|G|) Y_Z)^places`` with zero sum
        and ``N_v mu_v`` in ``Y_Z``, and the matrix to ``M^mid (x) Y_Z``."""
        site, d, T = self.site, self.d, self.T
        k = site.n_places
        amb = direct_sum(*([T.Y_Z.scale(Fraction(1, self.g))] * k))
        summ = [[1 if i % d == j else 0 for i in range(k * d)] for j in range(d)]
        L = amb.kernel(summ)
        blocks = []
        for v in range(k):
            Nv = T.Y.norm_matrix(site.decomposition_group(v))
            for r in Nv:
                blocks.append([0] * (v * d) + list(r) + [0] * ((k - 1 - v) * d))
        L = L.preimage(blocks, direct_sum(*([T.Y_Z] * k)))
        cols = []
        for i in range(k * d):
            e = [[Fraction(0)] * d for _ in range(k)]
            e[i // d][i % d] = Fraction(1)
            cols.append(self.mu_from_places(e))
        mat = [[c[r] for c in cols] for r in range(len(cols[0]))]
        return L, mat

    def cartesian_check(self):
        """The place parametrization is a bijection onto the invariants."""
        L, mat = self.place_parametrization()
        img = L.image(mat, len(mat))
        return img == self.invariants and img.rank == L.rank

    # -- localization and the product formula
    def local_torus(self, v):
        return self.T.restrict(self.site.decomposition_group(v))

    def localize(self, lam, mu, v, reps="least"):
        """``(lam_w, mu_w)`` at the lift ``w`` of place ``v``."""
        G, site = self.site.group, self.site
        H = site.decomposition_group(v)
        w = site.point(v)
        lw = tuple(Fraction(0) for _ in range(self.d))
        for coset in G.right_cosets(H):
            sig = coset[0] if reps == "least" else coset[-1]
            x = site.act[G.inv(sig)][w]
            lw = _add(lw, self.T.Y.act(sig, self.value(lam, x)))
        return YMidElement(self.local_torus(v), lw, self.mu_value(mu, G.identity, w))

    def place_defect(self, mu, v):
        """``mu(1, w) - (1/|G_w|) sum_{h in G_w} mu(h, w)`` at the lift ``w``."""
        H = self.site.decomposition_group(v)
        w = self.site.point(v)
        avg = tuple(Fraction(0) for _ in range(self.d))
        for h in H:
            avg = _add(avg, self.mu_value(mu, h, w))
        avg = _scale(Fraction(1, len(H)), avg)
        return _sub(self.mu_value(mu, self.site.group.identity, w), avg)

    def product_defect_sum(self, mu):
        """``sum_v mu(1, vdot)``."""
        e = self.site.group.identity
        total = tuple(Fraction(0) for _ in range(self.d))
        for v in range(self.site.n_places):
            total = _add(total, self.mu_value(mu, e, self.site.point(v)))
        return total

    # -- splitting and the support correction
    def _yz_module(self):
        return GModule(self.site.group, self.T.Y_Z, self.T.Y.action, check=False)

    def lift_iso(self, lam):
        """A ``mu`` over ``lam`` via the constructive splitting (needs cover)."""
        f = self.points(self.N(lam))
        return self.level.split_invariant(self._yz_module(), f)

    def epsilon_prime(self, eps):
        """A dotted-supported ``eps'`` with ``N^nat(eps') = eps`` for invariant ``eps``."""
        fdot, _, _ = self.level.normalize_support(self.T.Y, self.points(eps))
        return self.function(fdot)

    def N_nat(self, f):
        return _scale(Fraction(1, self.g), self.N(f))

    def supported_on_dotted(self, f):
        dotted = set(self.site.dotted)
        return all(not any(self.value(f, w)) for w in range(self.s) if w not in dotted)


def worked_example():
    """The rank one trivial torus over the C2 site ``{v1: C2, v2: 1}``.

    Returns ``(gt, lam, mu)`` with ``lam = delta_w1 - delta_w2`` and ``mu``
    obtained by solving the defining system.
    """
    from .gmod import FiniteGroup
    from .sites import build_site
    G = FiniteGroup.cyclic(2, "C2")
    site = build_site(G, [("v1", ["0", "1"]), ("v2", ["0"])], "C2 fixture")
    T = TorusData(GModule.trivial(G))
    gt = GlobalTorus(T, site)
    lam = [Fraction(0)] * site.n_points
    lam[site.point(0)] = Fraction(1)
    lam[site.point(1)] = Fraction(-1)
    lam = tuple(lam)
    return gt, lam, gt.solve_mu(lam)


# ------------------------------------------------------------ transitions

class GlobalTransition:
    """``j`` (sum over fibres) and ``!`` (its inverse on classes) on a tower."""

    def __init__(self, tower, T):
        if tower.new_places:
            raise ValueError("transition maps need equal place sets")
        self.tower = tower
        self.lower = GlobalTorus(T, tower.lower)
        GK = tower.upper.group
        YK = GModule(GK, T.Y.lattice, [T.Y.action[tower.p[t]] for t in GK.elements],
                     name=T.Y.name, check=False)
        TK = TorusData(YK, T.Y_Z if T.Y_Z != T.Y.lattice else None, name=T.name)
        self.upper = GlobalTorus(TK, tower.upper)
        self.d = T.dim

    def j(self, f):
        d = self.d
        out = [tuple(Fraction(0) for _ in range(d)) for _ in range(self.lower.s)]
        for u in range(self.upper.s):
            w = self.tower.point_map[u]
            out[w] = _add(out[w], self.upper.value(f, u))
        return self.lower.function(out)

    def section(self, rule="least"):
        """A section of the point map whose image contains the upper lifts."""
        tw = self.tower
        sec = {}
        for u in range(self.upper.s):
            w = tw.point_map[u]
            if u in tw.upper.dotted:
                sec[w] = u
        for u in (range(self.upper.s) if rule == "least" else reversed(range(self.upper.s))):
            sec.setdefault(tw.point_map[u], u)
        return sec

    def bang(self, f, rule="least", normalize=True):
        """``!``: place the value at ``w`` on the chosen upper point over ``w``."""
        pts = self.lower.points(f)
        if normalize:
            pts, _, _ = self.lower.level.normalize_support(self.lower.T.Y, pts)
        sec = self.section(rule)
        d = self.d
        out = [tuple(Fraction(0) for _ in range(d)) for _ in range(self.upper.s)]
        for w, y in enumerate(pts):
            out[sec[w]] = _add(out[sec[w]], y)
        return self.upper.function(out)


# ------------------------------------------------------------ semi-adelic

class SemiAdelic:
    """Per-place data over a site in the Q-limit form.

    A family is a dict keyed by place name with one vector in ``QY`` per place.
    """

    def __init__(self, T, site):
        if T.group is not site.group:
            raise ValueError("torus and site must share the group")
        self.T = T
        self.site = site
        self.names = site.place_names
        self.local = []
        for v in range(site.n_places):
            H = site.decomposition_group(v)
            Tv = T.restrict(H)
            self.local.append(Tv)
        self.IvY = [Tv.IY for Tv in self.local]
        self.Nv = [Tv.norm for Tv in self.local]
        self._ker = T.Y.lattice.kernel(T.norm)

    def _values(self, family):
        if set(family) != set(self.names) or len(family) != len(self.names):
            raise PlaceMismatch(f"expected places {self.names}, got {sorted(family)}")
        out = []
        for name in self.names:
            v = _vec(family[name])
            if len(v) != self.T.dim:
                raise PlaceMismatch(f"place {name!r}: vector of wrong length")
            out.append(v)
        return out

    def _sum(self, vals):
        total = tuple(Fraction(0) for _ in range(self.T.dim))
        for x in vals:
            total = _add(total, x)
        return total

    def iso_member(self, lams):
        vals = self._values(lams)
        if any(x not in self.T.Y.lattice for x in vals):
            return False
        return not any(self.T.N(self._sum(vals)))

    def mid_member(self, lams, mus):
        if not self.iso_member(lams):
            return False
        lv, mv = self._values(lams), self._values(mus)
        if any(self._sum(mv)):
            return False
        for k, (l, m) in enumerate(zip(lv, mv)):
            if any(mat_vec(self.Nv[k], _sub(l, m))):
                return False
        return True

    def rig_member(self, lams):
        vals = self._values(lams)
        for k, x in enumerate(vals):
            if not self.IvY[k].span_contains(x) and any(x):
                return False
        total = self._sum(vals)
        return total in self.T.Y.lattice and not any(self.T.N(total))

    def iota(self, lams):
        """``sum_v lam_v`` as a representative, reduced modulo ``IY``."""
        total = self._sum(self._values(lams))
        if total not in self.T.Y.lattice:
            raise ValueError("sum is not in Y")
        return self.T.IY.reduce(total)

    def iota_equal(self, a, b):
        return _sub(a, b) in self.T.IY

    def lift_to_mid(self, lams):
        """``mus`` making ``(lams, mus)`` a ``Y^mid_sa`` member, or ``None``."""
        vals = self._values(lams)
        d, k = self.T.dim, len(vals)
        base = [Tv.N_nat(x) for Tv, x in zip(self.local, vals)]
        rhs_sum = _scale(-1, self._sum(base))
        A, b = [], []
        for v in range(k):
            for r in self.Nv[v]:
                A.append([0] * (v * d) + list(r) + [0] * ((k - 1 - v) * d))
                b.append(0)
        for j in range(d):
            A.append([1 if i % d == j else 0 for i in range(k * d)])
            b.append(rhs_sum[j])
        c = solve_rational(A, b, k * d)
        if c is None:
            return None
        return {name: _add(base[v], tuple(c[v * d:(v + 1) * d]))
                for v, name in enumerate(self.names)}

    def random_iso(self, rng, bound=3):
        d = self.T.dim
        L = self.T.Y.lattice
        vals = [L.from_coords([rng.randint(-bound, bound) for _ in range(L.rank)])
                for _ in self.names]
        total = self._sum(vals)
        kappa = tuple(Fraction(0) for _ in range(d))
        for b in self._ker.basis:
            kappa = _add(kappa, _scale(rng.randint(-bound, bound), b))
        vals[0] = _add(_sub(vals[0], total), kappa)
        return dict(zip(self.names, vals))


__all__ = [
    "NotTorsion", "PlaceMismatch", "NotSaturated", "CoverConditionFails",
    "TorusData", "YRigClass", "YMidElement", "y_iso", "y_rig_reduce", "y_mid_check",
    "iso_to_mid", "mid_to_rig", "defect", "apply_map", "LocalCartesian",
    "GlobalTorus", "GlobalTransition", "SemiAdelic", "worked_example",
    "direct_sum", "invariant_lattice",
]
