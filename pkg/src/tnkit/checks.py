"""The named verification suite.

Every invariant of the library has a check id.  A check receives a
:class:`Context` (the validated catalog plus caches) and, when registered
``over`` a catalog collection, the name of one item.  It returns normally on
success, raises :class:`CheckFailure` with a witness, or raises :class:`Skip`.
"""

import random
from fractions import Fraction
from math import gcd

from .cmpmod import (
    CoverConditionFails, DivisibilityRequired, DualMid, GlobalLevel, LocalLevel,
    TowerSplitting, dual_inflation_matrix, factorization_check, inflate_global,
    inflate_local, locmides, square_commutes,
)
from .exactlin import (
    FgAbPresentation, Lattice, det, identity, mat_mul, mat_vec, snf, solve_rational,
)
from .gmod import (
    GModule, canonical_submodules, dual, equivariant_hom_lattice, hom_to_ambient,
    tate_cohomology, tensor, unflatten,
)
from .sites import GlobalSite, check_cover, enumerate_covers, search_lifts, simultaneous_conjugator
from .tn import (
    GlobalTorus, GlobalTransition, LocalCartesian, SemiAdelic, TorusData, apply_map,
    defect, invariant_lattice, iso_to_mid, mid_to_rig, worked_example, y_mid_check,
    y_rig_reduce,
)


class CheckFailure(AssertionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Skip(Exception):
    def __init__(self, reason, witness=None):
        super().__init__(reason)
        self.witness = witness


class Check:
    def __init__(self, cid, module, ref, func, over=None):
        self.id = cid
        self.module = module
        self.ref = ref
        self.func = func
        self.over = over


REGISTRY = {}


def check(cid, ref, over=None):
    def deco(func):
        if cid in REGISTRY:
            raise RuntimeError(f"duplicate check id {cid}")
        REGISTRY[cid] = Check(cid, cid.split(".")[0], ref, func, over)
        return func
    return deco


def require(cond, message, witness=None):
    if not cond:
        raise CheckFailure(message, witness)


class Context:
    """The catalog with cached levels and tori."""

    def __init__(self, catalog):
        self.cat = catalog
        self._local = {}
        self._global = {}
        self._tori = {}
        self._gtori = {}

    def local(self, G, N):
        key = (id(G), N)
        if key not in self._local:
            self._local[key] = LocalLevel(G, N)
        return self._local[key]

    def glevel(self, site):
        if site.name not in self._global:
            self._global[site.name] = GlobalLevel(site)
        return self._global[site.name]

    def torus(self, name):
        if name not in self._tori:
            self._tori[name] = TorusData(self.cat.modules[name])
        return self._tori[name]

    def lattice_modules(self, G=None):
        return sorted(k for k, M in self.cat.modules.items()
                      if M.is_lattice and (G is None or M.group is G))

    def global_tori(self, site):
        """Lattice modules small enough for global computations on ``site``."""
        G = site.group
        out = []
        for k in self.lattice_modules(G):
            M = self.cat.modules[k]
            if M.rank * G.order * site.n_points <= 72:
                out.append(k)
        return out

    def gtorus(self, name, site):
        key = (name, site.name)
        if key not in self._gtori:
            self._gtori[key] = GlobalTorus(self.torus(name), site, self.glevel(site))
        return self._gtori[key]

    def groups(self):
        return [self.cat.groups[k] for k in sorted(self.cat.groups)]


def _rng(tag):
    return random.Random(f"tnkit:{tag}")


def _cover_or_skip(site):
    c = check_cover(site)
    if not c.covered:
        raise Skip("cover condition fails", site.group.label(c.witness))


# =================================================================== exactlin

@check("exactlin.snf.identity", "Smith normal form: U A V = D, unimodular, divisibility")
def _snf_identity(ctx):
    rng = _rng("snf")
    for _ in range(200):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)]
        U, D, V = snf(A, m, n)
        require(mat_mul(mat_mul(U, A), V) == D, "U A V != D", A)
        require(abs(det(U)) == 1 and abs(det(V)) == 1, "transform not unimodular", A)
        diag = [D[i][i] for i in range(min(m, n))]
        require(all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j), "D not diagonal", A)
        require(all(d >= 0 for d in diag), "negative invariant factor", A)
        for a, b in zip(diag, diag[1:]):
            require((a == 0 and b == 0) or (a != 0 and b % a == 0), "divisibility chain broken", A)


@check("exactlin.condition_lattice.closure", "lattices cut out by integrality conditions")
def _condition_closure(ctx):
    rng = _rng("cond")
    for G in ctx.groups():
        n = G.order
        for N in ctx.cat.levels:
            L = ctx.local(G, N).M_mid.lattice
            B = L.basis
            for b in B:
                require(all((N * x).denominator == 1 for x in b) and sum(b).denominator == 1,
                        "basis vector violates the conditions", [str(x) for x in b])
            for a in B:
                for b in B:
                    require(tuple(x + y for x, y in zip(a, b)) in L, "not closed under addition")
                require(tuple(-x for x in a) in L, "not closed under negation")
            for _ in range(20):
                y = [rng.randint(-3 * N, 3 * N) for _ in range(n)]
                y[0] -= sum(y) % N
                require(tuple(Fraction(v, N) for v in y) in L, "admissible point missing", y)
                if N > 1:
                    y[0] += 1
                    require(tuple(Fraction(v, N) for v in y) not in L, "inadmissible point accepted", y)


def _random_unimodular(rng, n):
    U = identity(n)
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randint(-2, 2)
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return U


@check("exactlin.subquotient.basis_independence", "subquotient invariants do not depend on bases")
def _subquotient_bases(ctx):
    rng = _rng("subq")
    cases = []
    for k in ctx.lattice_modules():
        T = ctx.torus(k)
        cases.append((T.IY, T.Y.lattice))
    for G in ctx.groups():
        for N in ctx.cat.levels:
            lev = ctx.local(G, N)
            cases.append((Lattice.standard(G.order), lev.M_mid.lattice))
    for sub, amb in cases:
        base = FgAbPresentation(amb.rank, [amb.coords(v) for v in sub.basis]).invariants
        U = _random_unimodular(rng, amb.rank) if amb.rank else []
        V = _random_unimodular(rng, sub.rank) if sub.rank else []
        AB = mat_mul(U, [list(b) for b in amb.basis]) if amb.rank else []
        SB = mat_mul(V, [list(b) for b in sub.basis]) if sub.rank else []
        cols = []
        for s in SB:
            At = [[AB[r][i] for r in range(len(AB))] for i in range(amb.dim)]
            c = solve_rational(At, s, len(AB))
            require(c is not None and all(x.denominator == 1 for x in c), "coordinates not integral")
            cols.append([int(x) for x in c])
        require(FgAbPresentation(amb.rank, cols).invariants == base, "invariants changed", base)


# ======================================================================= gmod

@check("gmod.tate.induced_vanishing", "Tate cohomology of induced modules vanishes", over="groups")
def _induced_vanishing(ctx, gname):
    G = ctx.cat.groups[gname]
    reg = GModule.regular(G)
    for a in (1, 2, 3):
        if G.order * a > 12:
            break
        n = G.order * a
        action = [[[reg.action[g][i % G.order][j % G.order] if i // G.order == j // G.order else 0
                    for j in range(n)] for i in range(n)] for g in G.elements]
        M = GModule(G, Lattice.standard(n), action, name=f"Z[G]^{a}", check=False)
        for H in G.subgroups():
            for d in (-1, 0, 1):
                h = tate_cohomology(M, H, d)
                require(h.is_trivial(), "nonzero cohomology of an induced module",
                        {"rank": a, "subgroup": [G.label(x) for x in H], "degree": d,
                         "invariants": list(h.invariants)})


@check("gmod.tate.periodicity", "cyclic periodicity of Tate cohomology")
def _periodicity(ctx):
    for G in ctx.groups():
        g = G.generated([1]) if G.order > 1 else (0,)
        if len(g) != G.order:
            continue
        mods = [ctx.cat.modules[k] for k in ctx.lattice_modules(G)]
        for N in ctx.cat.levels:
            lev = ctx.local(G, N)
            mods += [lev.M_mid, lev.M_rig]
        for M in mods:
            pairs = ((1, -1), (2, 0))
            for a, b in pairs:
                ia = tate_cohomology(M, None, a).invariants
                ib = tate_cohomology(M, None, b).invariants
                require(ia == ib, "periodicity fails", {"module": M.name, "degrees": [a, b],
                                                         "invariants": [list(ia), list(ib)]})


@check("gmod.tate.regression", "Tate H^0 of the C2 mid module at level 2")
def _tate_regression(ctx):
    G = ctx.cat.groups.get("C2")
    if G is None:
        raise Skip("no group C2 in the config")
    h = tate_cohomology(ctx.local(G, 2).M_mid, None, 0)
    require(h.invariants == (2,), "unexpected value", list(h.invariants))


@check("gmod.norm.idempotent", "normalized norm is idempotent onto the invariants")
def _norm_idempotent(ctx):
    for k in ctx.lattice_modules():
        M = ctx.cat.modules[k]
        cs = canonical_submodules(M)
        P = cs.normalized_norm
        require(mat_mul(P, P) == P, "normalized norm not idempotent", k)
        inv = cs.invariants
        for v in inv.basis:
            require(tuple(mat_vec(P, v)) == v, "invariant vector moved", k)
        for b in M.lattice.basis:
            require(inv.span_contains(mat_vec(P, b)), "image leaves the invariants", k)


@check("gmod.canonical.inclusions", "norm lands in invariants, augmentation in the norm kernel")
def _canonical_inclusions(ctx):
    mods = [ctx.cat.modules[k] for k in sorted(ctx.cat.modules)]
    for G in ctx.groups():
        if G.order <= 4:
            mods.append(ctx.local(G, 2).M_rig)
    for M in mods:
        cs = canonical_submodules(M)
        R = M.relations or Lattice.zero(M.dim)
        for b in M.lattice.basis:
            require(cs.norm(b) in cs.invariants, "norm image not invariant", M.name)
        for a in cs.augmentation_submodule.basis:
            require(cs.norm(a) in R, "augmentation not killed by the norm", M.name)


@check("gmod.hom.rank", "equivariant homs have the rank of the invariants of the internal hom")
def _hom_rank(ctx):
    for G in ctx.groups():
        names = ctx.lattice_modules(G)
        for x in names:
            for m in names:
                X, M = ctx.cat.modules[x], ctx.cat.modules[m]
                if X.rank * M.rank > 16:
                    continue
                r1 = equivariant_hom_lattice(X, M).rank
                r2 = invariant_lattice(tensor(dual(X), M)).rank
                require(r1 == r2, "rank mismatch", {"source": x, "target": m, "ranks": [r1, r2]})


# ====================================================================== sites

@check("sites.cover.normalize", "cover condition iff support normalization succeeds", over="sites")
def _cover_normalize(ctx, sname):
    site = ctx.cat.sites[sname]
    lev = ctx.glevel(site)
    Y = GModule.trivial(site.group)
    gt = ctx.gtorus(_trivial_name(ctx, site.group), site) if _trivial_name(ctx, site.group) else None
    covered = check_cover(site).covered
    s = site.n_points
    ok = True
    for w in range(1, s):
        f = [(Fraction(int(u == w) - int(u == 0)),) for u in range(s)]
        try:
            fdot, corr, _ = lev.normalize_support(Y, f)
        except CoverConditionFails:
            ok = False
            break
        require(all(not any(fdot[u]) for u in range(s) if u not in site.dotted),
                "result not supported on the lifts", w)
        if gt is not None:
            require(tuple(x for c in corr for x in c) in gt.I, "correction not in I.Y[S]_0", w)
    require(ok == covered, "cover and normalization disagree", {"covered": covered})


def _trivial_name(ctx, G):
    for k in ctx.lattice_modules(G):
        M = ctx.cat.modules[k]
        if M.rank == 1 and all(M.action[g] == [[1]] for g in G.elements):
            return k
    return None


@check("sites.tower.equivariant", "tower point map is equivariant and respects lifts", over="towers")
def _tower_equivariant(ctx, tname):
    tw = ctx.cat.towers[tname]
    require(tw.check_equivariant(), "point map not equivariant")
    require(tw.check_dotted(), "a chosen lift maps outside the chosen lifts")


@check("sites.search.exhaustive", "lift search agrees with exhaustive enumeration", over="searches")
def _search(ctx, name):
    G, classes = ctx.cat.searches[name]
    found = search_lifts(G, classes)
    every = enumerate_covers(G, classes)
    if found is None:
        require(not every, "search missed a cover", [[G.label(x) for x in H] for H in every[0]] if every else None)
    else:
        u = set()
        for H in found:
            u.update(H)
        require(len(u) == G.order, "returned assignment does not cover")
        require(found in every, "assignment not among the enumerated covers")
        require(found == every[0], "not the first cover in enumeration order")


@check("sites.conjugator", "simultaneous conjugation of decomposition groups", over="sites")
def _conjugator(ctx, sname):
    site = ctx.cat.sites[sname]
    G = site.group
    for g in G.elements:
        moved = GlobalSite(G, [(n, G.conjugate_subgroup(H, g)) for n, H in site.places])
        h = simultaneous_conjugator(site, moved)
        require(h is not None, "conjugate site not recognised", G.label(g))
        require(all(G.conjugate_subgroup(H1, h) == H2
                    for (_, H1), (_, H2) in zip(site.places, moved.places)), "bad conjugator")
    # individually conjugate but not simultaneously: swap two nonconjugate-fixing places
    for (n1, H1) in site.places:
        for g in G.elements:
            K = G.conjugate_subgroup(H1, g)
            if K != H1:
                a = GlobalSite(G, [("x", H1), ("y", H1)])
                b = GlobalSite(G, [("x", H1), ("y", K)])
                require(simultaneous_conjugator(a, b) is None,
                        "found a conjugator that cannot exist", [G.label(x) for x in K])
                return


# ===================================================================== cmpmod

def _local_pairs(ctx):
    for G in ctx.groups():
        for N in ctx.cat.levels:
            yield G, N, ctx.local(G, N)


@check("cmpmod.local.surjective", "local comparison maps: orders, surjectivity, induced kernel")
def _local_surjective(ctx):
    for G, N, lev in _local_pairs(ctx):
        tag = {"group": G.name, "N": N}
        require(lev.c_iso.is_surjective(), "c_iso not surjective", tag)
        require(lev.c_rig.is_surjective(), "c_rig not surjective", tag)
        require(lev.M_rig.as_group().order == N ** (G.order - 1), "order of M_rig", tag)
        require(lev.kernel_witness() is not None, "kernel of c_rig not certified induced", tag)


@check("cmpmod.local.s_iso", "local splitting of c_iso when |G| divides N")
def _local_siso(ctx):
    for G, N, lev in _local_pairs(ctx):
        tag = {"group": G.name, "N": N}
        if N % G.order:
            try:
                lev.s_iso()
            except DivisibilityRequired:
                continue
            raise CheckFailure("missing divisibility error", tag)
        s = lev.s_iso()
        require(mat_mul(lev.c_iso.matrix, s.matrix) == [[1]], "c_iso o s_iso != id", tag)
        require(s.image() == invariant_lattice(lev.M_mid), "image is not the invariants", tag)


@check("cmpmod.local.convention_basis", "local mid basis convention")
def _convention(ctx):
    for G, N, lev in _local_pairs(ctx):
        L = Lattice.from_generators(lev.convention_basis(), G.order)
        require(L == lev.M_mid.lattice, "convention basis spans a different lattice",
                {"group": G.name, "N": N})


@check("cmpmod.local.lift_crig", "local lifts through c_rig")
def _local_lift(ctx):
    for G, N, lev in _local_pairs(ctx):
        for f in lev.M_rig.as_group().generators():
            m = lev.lift_crig(f)
            require(m in lev.M_mid.lattice, "lift outside M_mid", [str(x) for x in m])
            d = tuple(a - b for a, b in zip(lev.c_rig(m), f))
            require(d in lev.M_rig.relations, "c_rig(lift) != f", [str(x) for x in f])


@check("cmpmod.local.exact_sequences", "the four short exact sequences around M_mid")
def _locmides(ctx):
    for G in ctx.groups():
        for N in ctx.cat.levels:
            res = locmides(G, N)
            for name, parts in res.items():
                bad = [k for k, v in parts.items() if not v]
                require(not bad, "sequence not exact", {"group": G.name, "N": N, "seq": name, "fails": bad})


@check("cmpmod.local.dual", "dual of M_mid: perfect pairing and norm of delta_e")
def _local_dual(ctx):
    for G in ctx.groups():
        for N in ctx.cat.levels:
            D = DualMid(G, N)
            tag = {"group": G.name, "N": N}
            require(D.pairing_integral(), "pairing not integral", tag)
            require(D.pairing_perfect(), "pairing not perfect", tag)
            require(D.norm_of_delta_e() == tuple([1] * G.order), "norm of delta_e", tag)


def _level_pairs(levels):
    return [(N, M) for N in levels for M in levels if M % N == 0]


@check("cmpmod.local.inflation", "local inflation squares, factorization, dual inflation", over="towers")
def _local_inflation(ctx, tname):
    tw = ctx.cat.towers[tname]
    GE, GK, p = tw.lower.group, tw.upper.group, tw.p
    deg = GK.order // GE.order
    for N, M in _level_pairs(ctx.cat.levels):
        E, K = ctx.local(GE, N), ctx.local(GK, M)
        tag = {"N": N, "M": M}
        inf = {f: inflate_local(E, K, p, f) for f in ("iso", "mid", "rig")}
        ok, _ = square_commutes([E.c_iso.matrix, inf["iso"].matrix],
                                [inf["mid"].matrix, K.c_iso.matrix], E.M_mid.lattice)
        require(ok, "iso/mid square fails", tag)
        ok, _ = square_commutes([E.c_rig.matrix, inf["rig"].matrix],
                                [inf["mid"].matrix, K.c_rig.matrix], E.M_mid.lattice,
                                K.M_rig.relations)
        require(ok, "rig square fails", tag)
        if M == N * deg:
            sec = factorization_check(inf["mid"], E.M_circ(), K.M_circ(), deg)
            require(sec is not None, "inflation on M_circ does not factor", tag)
        Dm = dual_inflation_matrix(p, GE, GK)
        DK, DE = DualMid(GK, M), DualMid(GE, N)
        for y in DK.lattice.basis:
            require(tuple(mat_vec(Dm, y)) in DE.lattice, "dual inflation leaves the dual", tag)
            for x in E.M_mid.lattice.basis:
                lhs = DualMid.pair(mat_vec(inf["mid"].matrix, x), y)
                rhs = DualMid.pair(x, mat_vec(Dm, y))
                require(lhs == rhs, "dual inflation is not adjoint", tag)


@check("cmpmod.norm_image", "norm image of the dual module", over="towers")
def _norm_image(ctx, tname):
    GK = ctx.cat.towers[tname].upper.group
    for M in ctx.cat.levels:
        img = DualMid(GK, M).norm_image()
        require(img == Lattice.from_generators([[gcd(M, GK.order)]], 1), "norm image",
                {"M": M, "generator": [str(b[0]) for b in img.basis]})


@check("cmpmod.global.modules", "global modules: ranks, surjectivity, induced kernel", over="sites")
def _global_modules(ctx, sname):
    site = ctx.cat.sites[sname]
    lev = ctx.glevel(site)
    require(lev.M_iso.rank == site.n_points - 1, "rank of M_iso", lev.M_iso.rank)
    require(lev.M_mid.rank == site.group.order * (site.n_places - 1), "rank of M_mid", lev.M_mid.rank)
    require(lev.c_iso.is_surjective(), "c_iso not surjective")
    require(lev.c_rig.is_surjective(), "c_rig not surjective")
    require(lev.kernel_witness() is not None, "kernel of c_rig not certified induced")


@check("cmpmod.global.splitting", "global splitting of c_iso under the cover condition", over="sites")
def _global_split(ctx, sname):
    site = ctx.cat.sites[sname]
    lev = ctx.glevel(site)
    if not lev.cover.covered:
        try:
            lev.s_iso()
        except CoverConditionFails as e:
            raise Skip("cover condition fails", e.label) from None
        raise CheckFailure("splitting built without cover")
    s = lev.s_iso()
    for b in lev.M_iso.lattice.basis:
        require(lev.c_iso(s(b)) == b, "c_iso o s != id", [str(x) for x in b])


@check("cmpmod.global.lift_crig", "global lifts through c_rig", over="sites")
def _global_lift(ctx, sname):
    lev = ctx.glevel(ctx.cat.sites[sname])
    for f in lev.M_rig.as_group().generators():
        m = lev.lift_crig(f)
        require(m in lev.M_mid.lattice, "lift outside M_mid")
        d = tuple(a - b for a, b in zip(lev.c_rig(m), f))
        require(d in lev.M_rig.relations, "c_rig(lift) != f")


@check("cmpmod.global.inflation", "global inflation squares and factorization", over="towers")
def _global_inflation(ctx, tname):
    tw = ctx.cat.towers[tname]
    E, K = ctx.glevel(tw.lower), ctx.glevel(tw.upper)
    inf = {f: inflate_global(tw, E, K, f) for f in ("iso", "mid", "rig")}
    ok, w = square_commutes([E.c_iso.matrix, inf["iso"].matrix],
                            [inf["mid"].matrix, K.c_iso.matrix], E.M_mid.lattice)
    require(ok, "iso/mid square fails", w and [str(x) for x in w])
    ok, w = square_commutes([E.c_rig.matrix, inf["rig"].matrix],
                            [inf["mid"].matrix, K.c_rig.matrix], E.M_mid.lattice, K.M_rig.relations)
    require(ok, "rig square fails", w and [str(x) for x in w])
    require(factorization_check(inf["mid"], E.M_circ(), K.M_circ(), tw.degree) is not None,
            "inflation on M_circ does not factor")


def _restricted_map(tw, emb_u, emb_w):
    pos = {g: i for i, g in enumerate(emb_w)}
    return [pos[tw.p[t]] for t in emb_u]


@check("cmpmod.global.localization", "localization squares and compatibility with inflation", over="towers")
def _localization(ctx, tname):
    tw = ctx.cat.towers[tname]
    E, K = ctx.glevel(tw.lower), ctx.glevel(tw.upper)
    for lev in (E, K):
        for w in lev.site.dotted:
            loc, maps, _ = lev.localize(w)
            ok, _ = square_commutes([lev.c_iso.matrix, maps["iso"].matrix],
                                    [maps["mid"].matrix, loc.c_iso.matrix], lev.M_mid.lattice)
            require(ok, "iso/mid localization square fails", lev.site.point_label(w))
            ok, _ = square_commutes([lev.c_rig.matrix, maps["rig"].matrix],
                                    [maps["mid"].matrix, loc.c_rig.matrix], lev.M_mid.lattice,
                                    loc.M_rig.relations)
            require(ok, "rig localization square fails", lev.site.point_label(w))
    inf = {f: inflate_global(tw, E, K, f) for f in ("iso", "mid", "rig")}
    for u in tw.upper.dotted:
        w = tw.point_map[u]
        if w is None:
            continue
        locK, mapsK, embK = K.localize(u)
        locE, mapsE, embE = E.localize(w)
        pl = _restricted_map(tw, embK, embE)
        for fam in ("iso", "mid", "rig"):
            linf = inflate_local(locE, locK, pl, fam)
            zero = locK.M_rig.relations if fam == "rig" else None
            src = E.M_iso.lattice if fam == "iso" else E.M_mid.lattice
            ok, _ = square_commutes([inf[fam].matrix, mapsK[fam].matrix],
                                    [mapsE[fam].matrix, linf.matrix], src, zero)
            require(ok, "localization does not commute with inflation",
                    {"family": fam, "point": tw.upper.point_label(u)})


def _rand_fun(rng, n_points, L, zero_sum=True):
    """Random function on points with values in the lattice ``L``."""
    dim = L.dim
    f = [tuple(L.from_coords([rng.randint(-3, 3) for _ in range(L.rank)])) for _ in range(n_points)]
    if zero_sum:
        tot = [sum(y[j] for y in f) for j in range(dim)]
        f[0] = tuple(a - b for a, b in zip(f[0], tot))
    return f


@check("cmpmod.tower.split_infty", "tower-coherent support moving operators", over="towers")
def _split_infty(ctx, tname):
    tw = ctx.cat.towers[tname]
    if tw.new_places:
        raise Skip("tower adds places; operators need equal place sets")
    GE = tw.lower.group
    rng = _rng("split" + tname)
    for yname in ctx.lattice_modules(GE):
        Y = ctx.cat.modules[yname]
        TS = TowerSplitting(tw, Y)
        tr = GlobalTransition(tw, ctx.torus(yname))
        I = [tr.lower.I, tr.upper.I]
        for _ in range(10):
            f = _rand_fun(rng, tw.upper.n_points, Y.lattice)
            require(TS.j(TS.pi(1, f)) == TS.pi(0, TS.j(f)), "j o pi_1 != pi_0 o j", yname)
            g = f
            for k in (0, 1):
                g2, corr = TS.pi_step(1, k, g)
                require(tuple(x for c in corr for x in c) in I[1], "pi_{1,k} correction not in I",
                        {"module": yname, "k": k})
                g = g2
            h = _rand_fun(rng, tw.lower.n_points, Y.lattice)
            h2, corr = TS.pi_step(0, 0, h)
            require(tuple(x for c in corr for x in c) in I[0], "pi_{0,0} correction not in I", yname)
            a, b = TS.pi(1, TS.p_map(h)), TS.pi(0, h)
            for u in tw.upper.dotted:
                require(a[u] == tuple(tw.degree * x for x in b[tw.point_map[u]]),
                        "split_infty fails", {"module": yname, "point": tw.upper.point_label(u)})


# ========================================================================= tn

@check("tn.local.cartesian", "local Cartesian square for Y_mid", over="lattice_modules")
def _tn_local_cart(ctx, yname):
    T = ctx.torus(yname)
    for N in ctx.cat.levels:
        lc = LocalCartesian(T, N)
        require(lc.is_bijection(), "map to the fibre product is not a bijection", {"N": N})
        a, b = lc.kernel_column()
        require(a == b, "kernel column mismatch", {"N": N, "ker": list(a), "tor": list(b)})


def _random_pairs(ctx, yname, count):
    T = ctx.torus(yname)
    lc = LocalCartesian(T, 6 * T.order)
    rng = _rng("pairs" + yname)
    return T, [lc.random_element(rng) for _ in range(count)], rng


@check("tn.local.consistency", "mid/rig/defect identities on random pairs", over="lattice_modules")
def _tn_consistency(ctx, yname):
    T, xs, _ = _random_pairs(ctx, yname, 100)
    for x in xs:
        require(y_mid_check(T, x.lam, x.mu), "generated pair invalid")
        lhs = mid_to_rig(T, x) - mid_to_rig(T, iso_to_mid(T, x.lam))
        require(lhs == -defect(T, x), "identity fails", [str(v) for v in x.mu])
        require(defect(T, iso_to_mid(T, x.lam)).is_zero(), "defect of an iso element")


@check("tn.local.well_defined", "mid_to_rig and defect do not depend on representatives",
       over="lattice_modules")
def _tn_well_defined(ctx, yname):
    T, xs, rng = _random_pairs(ctx, yname, 30)
    IB = T.IY.basis
    for x in xs:
        i = [Fraction(0)] * T.dim
        for b in IB:
            c = rng.randint(-3, 3)
            i = [a + c * v for a, v in zip(i, b)]
        moved = type(x)(T, [a + b for a, b in zip(x.lam, i)], x.mu)
        require(mid_to_rig(T, moved) == mid_to_rig(T, x), "mid_to_rig depends on lambda rep")
        require(defect(T, moved) == defect(T, x), "defect depends on lambda rep")
        r = mid_to_rig(T, x)
        again = y_rig_reduce(T, [a + b for a, b in zip(r.rep, i)], r.certificate * 2)
        require(again == r, "class depends on the certificate or IY translate")


def _sample_maps(ctx, G):
    names = ctx.lattice_modules(G)
    out = []
    for x in names:
        for m in names:
            X, M = ctx.cat.modules[x], ctx.cat.modules[m]
            if X.rank * M.rank > 16:
                continue
            H = equivariant_hom_lattice(X, M)
            for t in H.basis[:3]:
                out.append((x, m, hom_to_ambient(X, M, unflatten(t, M.rank, X.rank))))
    return out


@check("tn.local.functoriality", "functoriality along equivariant lattice maps", over="groups")
def _tn_functorial(ctx, gname):
    G = ctx.cat.groups[gname]
    rng = _rng("func" + gname)
    for x, m, phi in _sample_maps(ctx, G):
        TX, TM = ctx.torus(x), ctx.torus(m)
        lc = LocalCartesian(TX, 6 * G.order)
        for _ in range(5):
            a = lc.random_element(rng)
            b = apply_map(phi, a, TM)
            tag = {"source": x, "target": m}
            require(y_mid_check(TM, b.lam, b.mu), "image pair invalid", tag)
            require(iso_to_mid(TM, b.lam).same(apply_map(phi, iso_to_mid(TX, a.lam), TM)),
                    "iso_to_mid not natural", tag)
            require(mid_to_rig(TM, b) == y_rig_reduce(TM, mat_vec(phi, mid_to_rig(TX, a).rep)),
                    "mid_to_rig not natural", tag)
            require(defect(TM, b) == y_rig_reduce(TM, mat_vec(phi, defect(TX, a).rep)),
                    "defect not natural", tag)


@check("tn.local.induced_vanishing", "induced tori have no coinvariant torsion", over="groups")
def _tn_induced(ctx, gname):
    G = ctx.cat.groups[gname]
    T = TorusData(GModule.regular(G))
    require(T.coinvariants.torsion_invariants == (), "coinvariant torsion")
    require(T.torsion_kernel().is_trivial(), "norm kernel exceeds IY")
    lc = LocalCartesian(T, G.order)
    rng = _rng("ind" + gname)
    for _ in range(10):
        a, b = lc.random_element(rng), lc.random_element(rng)
        c = type(a)(T, a.lam, b.mu)
        if y_mid_check(T, c.lam, c.mu):
            require(tuple(x - y for x, y in zip(a.lam, b.lam)) in T.IY or a.mu != b.mu,
                    "mu does not determine lambda")


@check("tn.global.cartesian", "global Cartesian square and place parametrization", over="sites")
def _tn_global_cart(ctx, sname):
    site = ctx.cat.sites[sname]
    for y in ctx.global_tori(site):
        gt = ctx.gtorus(y, site)
        require(gt.cartesian_check(), "place parametrization is not a bijection", y)


@check("tn.global.surjectivity", "Y_mid -> Y_iso is onto via the splitting", over="sites")
def _tn_global_surj(ctx, sname):
    site = ctx.cat.sites[sname]
    _cover_or_skip(site)
    rng = _rng("surj" + sname)
    for y in ctx.global_tori(site):
        gt = ctx.gtorus(y, site)
        lams = gt.y_iso.generators() + [gt.random_element(rng)[0] for _ in range(5)]
        for lam in lams:
            require(gt.check(lam, gt.lift_iso(lam)), "lifted pair invalid", y)


@check("tn.global.localization", "localization lands in local Y_mid; product formula", over="sites")
def _tn_global_loc(ctx, sname):
    site = ctx.cat.sites[sname]
    rng = _rng("loc" + sname)
    for y in ctx.global_tori(site):
        gt = ctx.gtorus(y, site)
        for _ in range(50):
            lam, mu = gt.random_element(rng)
            require(gt.check(lam, mu), "generated pair invalid", y)
            require(not any(gt.product_defect_sum(mu)), "product formula fails", y)
            for v in range(site.n_places):
                x = gt.localize(lam, mu, v)
                require(y_mid_check(x.torus, x.lam, x.mu), "localization not in local Y_mid",
                        {"module": y, "place": site.place_names[v]})
                require(x.same(gt.localize(lam, mu, v, "max")), "depends on coset reps",
                        {"module": y, "place": site.place_names[v]})
                require(defect(x.torus, x) == y_rig_reduce(x.torus, gt.place_defect(mu, v)),
                        "defect does not commute with localization", site.place_names[v])


@check("tn.global.epsilon_prime", "dotted-supported preimages under the normalized norm", over="sites")
def _tn_eps(ctx, sname):
    site = ctx.cat.sites[sname]
    _cover_or_skip(site)
    rng = _rng("eps" + sname)
    for y in ctx.global_tori(site):
        gt = ctx.gtorus(y, site)
        for _ in range(5):
            eps = gt.N_nat(gt.random_element(rng)[0])
            e2 = gt.epsilon_prime(eps)
            require(gt.N_nat(e2) == eps, "N_nat(eps') != eps", y)
            require(gt.supported_on_dotted(e2), "eps' not supported on the lifts", y)


@check("tn.global.transition", "j and its inverse on global coinvariants", over="towers")
def _tn_transition(ctx, tname):
    tw = ctx.cat.towers[tname]
    if tw.new_places:
        raise Skip("tower adds places; transition needs equal place sets")
    rng = _rng("tr" + tname)
    for y in ctx.lattice_modules(tw.lower.group):
        tr = GlobalTransition(tw, ctx.torus(y))
        lo, hi = tr.lower, tr.upper
        for _ in range(20):
            lam = lo.random_element(rng)[0]
            b = tr.bang(lam)
            require(b in hi.YS0_lattice, "! leaves Y[S]_0", y)
            require(lo.y_iso.equal(tr.j(b), lam), "j o ! != id", y)
            require(hi.y_iso.equal(tr.bang(lam, "max"), b), "depends on the section", y)
            h = hi.random_element(rng)[0]
            require(hi.y_iso.equal(tr.bang(tr.j(h)), h), "! o j != id", y)


@check("tn.global.worked_example", "the rank one C2 fixture")
def _tn_worked(ctx):
    gt, lam, mu = worked_example()
    e, s = 0, 1
    w1, w2 = gt.site.point(0), gt.site.point(1)
    sw2 = gt.site.act[s][w2]
    vals = {"mu(1,w1)": gt.mu_value(mu, e, w1), "mu(s,w1)": gt.mu_value(mu, s, w1),
            "mu(1,w2)": gt.mu_value(mu, e, w2), "mu(s,sw2)": gt.mu_value(mu, s, sw2)}
    require([v[0] for v in vals.values()] == [1, 1, -1, -1], "unexpected mu",
            {k: str(v[0]) for k, v in vals.items()})
    require(gt.check(lam, mu), "fixture not in Y_mid")
    a, b = gt.localize(lam, mu, 0), gt.localize(lam, mu, 1)
    require((a.lam, a.mu, b.lam, b.mu) == ((1,), (1,), (-1,), (-1,)), "localizations")


def _rig_family(sa, rng):
    T = sa.T
    fam = []
    for Tv in sa.local:
        sat = Tv.IY.saturation_in(T.Y.lattice)
        v = [Fraction(0)] * T.dim
        for b in sat.basis:
            c = rng.randint(-2, 2)
            v = [a + c * x for a, x in zip(v, b)]
        fam.append(v)
    k = len(fam)
    for i in range(k):
        for j in range(i + 1, k):
            both = sa.IvY[i].intersect(sa.IvY[j])
            for b in both.basis[:1]:
                n = rng.randint(2, 6)
                fam[i] = [a + x / n for a, x in zip(fam[i], b)]
                fam[j] = [a - x / n for a, x in zip(fam[j], b)]
    return {name: tuple(v) for name, v in zip(sa.names, fam)}


@check("tn.semiadelic.membership", "semi-adelic groups, iota maps and lifting to mid", over="sites")
def _tn_semiadelic(ctx, sname):
    site = ctx.cat.sites[sname]
    rng = _rng("sa" + sname)
    for y in ctx.global_tori(site):
        T = ctx.torus(y)
        sa = SemiAdelic(T, site)
        zero = {n: tuple([0] * T.dim) for n in sa.names}
        require(sa.iso_member(zero) and sa.mid_member(zero, zero) and sa.rig_member(zero),
                "zero family rejected", y)
        require(not any(sa.iota(zero)), "iota(0) != 0", y)
        for _ in range(30):
            lams = sa.random_iso(rng)
            require(sa.iso_member(lams), "random iso family rejected", y)
            mus = sa.lift_to_mid(lams)
            require(mus is not None and sa.mid_member(lams, mus), "no mid lift", y)
        a, b = sa.random_iso(rng), sa.random_iso(rng)
        s = {n: tuple(p + q for p, q in zip(a[n], b[n])) for n in sa.names}
        require(sa.iota_equal(sa.iota(s), tuple(p + q for p, q in zip(sa.iota(a), sa.iota(b)))),
                "iota not additive", y)
        for _ in range(5):
            r1, r2 = _rig_family(sa, rng), _rig_family(sa, rng)
            require(sa.rig_member(r1) and sa.rig_member(r2), "constructed rig family rejected", y)
            r = {n: tuple(p + q for p, q in zip(r1[n], r2[n])) for n in sa.names}
            require(sa.iota_equal(sa.iota(r), tuple(p + q for p, q in zip(sa.iota(r1), sa.iota(r2)))),
                    "iota not additive on rig families", y)
            broken = dict(r1)
            name = sa.names[-1]
            k = sa.names.index(name)
            basis = sa.IvY[k].basis or T.Y.lattice.basis
            bvec = basis[0]
            n = 1 + max(abs(c) for c in T.Y.lattice.rational_coords(bvec))
            broken[name] = tuple(p + x / n for p, x in zip(r1[name], bvec))
            require(not sa.rig_member(broken), "broken torsion sum not detected", y)


# ----------------------------------------------------------------- registry

REQUIRED_IDS = [
    "exactlin.snf.identity",
    "exactlin.condition_lattice.closure",
    "exactlin.subquotient.basis_independence",
    "gmod.tate.induced_vanishing",
    "gmod.tate.periodicity",
    "gmod.tate.regression",
    "gmod.norm.idempotent",
    "gmod.canonical.inclusions",
    "gmod.hom.rank",
    "sites.cover.normalize",
    "sites.tower.equivariant",
    "sites.search.exhaustive",
    "sites.conjugator",
    "cmpmod.local.surjective",
    "cmpmod.local.s_iso",
    "cmpmod.local.convention_basis",
    "cmpmod.local.lift_crig",
    "cmpmod.local.exact_sequences",
    "cmpmod.local.dual",
    "cmpmod.local.inflation",
    "cmpmod.norm_image",
    "cmpmod.global.modules",
    "cmpmod.global.splitting",
    "cmpmod.global.lift_crig",
    "cmpmod.global.inflation",
    "cmpmod.global.localization",
    "cmpmod.tower.split_infty",
    "tn.local.cartesian",
    "tn.local.consistency",
    "tn.local.well_defined",
    "tn.local.functoriality",
    "tn.local.induced_vanishing",
    "tn.global.cartesian",
    "tn.global.surjectivity",
    "tn.global.localization",
    "tn.global.epsilon_prime",
    "tn.global.transition",
    "tn.global.worked_example",
    "tn.semiadelic.membership",
]


def verify_registry(required=None):
    missing = [c for c in (REQUIRED_IDS if required is None else required) if c not in REGISTRY]
    if missing:
        raise RuntimeError(f"registered check ids without implementation: {missing}")


verify_registry()


def expand(ctx):
    """All ``(full id, check, item)`` triples in id order."""
    out = []
    for cid, chk in REGISTRY.items():
        if chk.over is None:
            out.append((cid, chk, None))
            continue
        if chk.over == "lattice_modules":
            items = ctx.lattice_modules()
        else:
            items = sorted(getattr(ctx.cat, chk.over))
        for it in items:
            out.append((f"{cid}[{it}]", chk, it))
    return sorted(out, key=lambda t: t[0])


# -------------------------------------------------------------------- runner

def encode(x):
    """JSON-friendly form: integral rationals as ints, others as ``"p/q"``."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return str(x)


def run_suite(ctx, pattern=None, timer=None):
    """Run every expanded check whose id matches the regex ``pattern``.

    Returns a report dict.  ``timer`` is a zero-argument clock; when given,
    each record gets a ``time`` field in seconds.
    """
    import re
    rx = re.compile(pattern) if pattern else None
    records = []
    for full, chk, item in expand(ctx):
        if rx is not None and not rx.search(full):
            continue
        t0 = timer() if timer else None
        rec = {"id": full, "module": chk.module, "ref": chk.ref, "witness": None}
        try:
            if item is None:
                chk.func(ctx)
            else:
                chk.func(ctx, item)
            rec["status"] = "pass"
        except CheckFailure as e:
            rec["status"] = "fail"
            rec["witness"] = encode({"message": str(e), "data": e.witness})
        except Skip as e:
            rec["status"] = "skip"
            rec["witness"] = encode({"message": str(e), "data": e.witness})
        except Exception as e:  # an invariant that crashes counts as failing
            rec["status"] = "fail"
            rec["witness"] = {"message": f"{type(e).__name__}: {e}", "data": None}
        if timer:
            rec["time"] = round(timer() - t0, 4)
        records.append(rec)
    summary = {s: sum(r["status"] == s for r in records) for s in ("pass", "fail", "skip")}
    return {"checks": records, "summary": summary}
