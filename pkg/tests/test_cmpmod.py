from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tnkit.cmpmod import (
    CoverConditionFails, DivisibilityRequired, DualMid, GlobalLevel, LocalLevel, TowerSplitting,
    inflate_global, inflate_local, square_commutes,
)
from tnkit.exactlin import Lattice, mat_mul
from tnkit.gmod import FiniteGroup, GModule
from tnkit.sites import Tower, build_site
from tnkit.tn import invariant_lattice, worked_example

C1 = FiniteGroup.trivial()
C2 = FiniteGroup.cyclic(2, "C2")
C3 = FiniteGroup.cyclic(3, "C3")
S3 = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]], 3, "S3")
V4 = FiniteGroup.direct_product(C2, C2, "C2xC2")


def fixture_site():
    return build_site(C2, [("v1", ["0", "1"]), ("v2", ["0"])])


def test_local_trivial_group():
    lev = LocalLevel(C1, 5)
    assert lev.M_mid.lattice == Lattice.standard(1)
    assert lev.c_iso.matrix == [[1]]
    assert lev.M_rig.as_group().is_trivial()
    assert lev.s_iso().matrix == [[1]]


def test_local_c2_level_2():
    lev = LocalLevel(C2, 2)
    assert lev.convention_basis() == [(1, 0), (Fraction(-1, 2), Fraction(1, 2))]
    assert Lattice.from_generators(lev.convention_basis(), 2) == lev.M_mid.lattice
    assert lev.M_rig.as_group().invariants == (2,)
    s = lev.s_iso()
    assert s((1,)) == (Fraction(1, 2), Fraction(1, 2))
    assert lev.c_iso(s((1,))) == (1,)
    with pytest.raises(DivisibilityRequired):
        LocalLevel(C2, 1).s_iso()


def test_local_c3_level_3():
    assert LocalLevel(C3, 3).M_rig.as_group().invariants == (3, 3)


@pytest.mark.parametrize("G", [C1, C2, C3, S3])
@pytest.mark.parametrize("N", [1, 2, 3, 6])
def test_local_orders_and_splitting(G, N):
    lev = LocalLevel(G, N)
    assert lev.M_rig.as_group().order == N ** (G.order - 1)
    assert lev.c_iso.is_surjective() and lev.c_rig.is_surjective()
    assert lev.kernel_witness() is not None
    if N % G.order == 0:
        assert lev.s_iso().image() == invariant_lattice(lev.M_mid)


def test_global_fixture_ranks_against_enumeration():
    site = fixture_site()
    lev = GlobalLevel(site)
    assert lev.M_iso.rank == 2
    # enumerate (1/2)-points on the allowed coordinates with zero row sums and integral column sums
    allowed = [i for i in range(lev.dim) if lev.allowed[i]]
    assert len(allowed) == 4
    pts = []
    for vals in product([Fraction(k, 2) for k in range(-2, 3)], repeat=4):
        f = [Fraction(0)] * lev.dim
        for i, x in zip(allowed, vals):
            f[i] = x
        rows_ok = all(sum(f[sig * lev.s + w] for w in range(lev.s)) == 0 for sig in range(2))
        cols_ok = all(sum(f[sig * lev.s + w] for sig in range(2)).denominator == 1 for w in range(lev.s))
        if rows_ok and cols_ok:
            pts.append(f)
    assert Lattice.from_generators(pts, lev.dim) == lev.M_mid.lattice
    assert lev.M_mid.rank == 2


def test_global_trivial_two_places():
    lev = GlobalLevel(build_site(C1, [("a", ["0"]), ("b", ["0"])]))
    assert lev.M_iso.rank == 1 and lev.M_mid.rank == 1
    assert lev.M_rig.as_group().is_trivial()
    s = lev.s_iso()
    for b in lev.M_iso.lattice.basis:
        assert lev.c_iso(s(b)) == b


def test_global_s3_example_records_missing_cover():
    site = build_site(S3, [("v1", ["()"]), ("v2", ["()", "(1 2)"]), ("v3", ["()", "(1 2 3)", "(1 3 2)"])])
    lev = GlobalLevel(site)
    assert not lev.cover.covered
    with pytest.raises(CoverConditionFails) as e:
        lev.s_iso()
    assert e.value.label == "(2 3)"


def test_global_lift_crig():
    lev = GlobalLevel(fixture_site())
    assert lev.lift_crig([0] * lev.dim) == tuple([0] * lev.dim)
    full = GlobalLevel(build_site(C2, [("v1", ["0", "1"]), ("v2", ["0", "1"])]))
    gens = full.M_rig.as_group().generators()
    assert gens
    for f in gens:
        m = full.lift_crig(f)
        assert m in full.M_mid.lattice
        assert all(x.denominator <= 2 for x in m)
        assert tuple(a - b for a, b in zip(full.c_rig(m), f)) in full.M_rig.relations


def test_global_splitting_on_fixture():
    site = fixture_site()
    lev = GlobalLevel(site)
    w1, w2 = site.point(0), site.point(1)
    sw2 = site.act[1][w2]
    f = [0] * 3
    f[w1], f[w2], f[sw2] = 2, -1, -1
    out = lev.s_iso()(f)
    assert out in lev.M_mid.lattice
    assert lev.c_iso(out) == tuple(f)


def test_normalize_support_fixture():
    site = fixture_site()
    lev = GlobalLevel(site)
    w1, w2 = site.point(0), site.point(1)
    sw2 = site.act[1][w2]
    Y = GModule.trivial(C2)
    f = [(0,)] * 3
    f[sw2], f[w1] = (1,), (-1,)
    fdot, corr, terms = lev.normalize_support(Y, f)
    want = [(0,)] * 3
    want[w2], want[w1] = (1,), (-1,)
    assert fdot == want
    # correction is (s - 1)(delta_sw2 - delta_w1)
    c = [(0,)] * 3
    c[w2], c[sw2] = (1,), (-1,)
    assert corr == c
    assert lev.normalize_support(Y, fdot)[0] == fdot
    assert lev.normalize_support(Y, [(0,)] * 3)[0] == [(0,)] * 3


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=7, max_size=7))
def test_split_invariant_recovers_function(vals):
    site = build_site(S3, [("a", ["()", "(1 2)"]), ("b", ["()", "(1 3)"]), ("c", ["()", "(2 3)"]),
                           ("d", ["()", "(1 2 3)", "(1 3 2)"])])
    lev = _cached_level(site)
    n = site.n_points
    h = [Fraction(v) for v in (vals * 3)[:n]]
    h[0] -= sum(h)
    # the splitting is defined on invariant functions, so take a norm
    f = [(sum(h[site.act[S3.inv(g)][w]] for g in S3.elements),) for w in range(n)]
    mu = lev.split_invariant(GModule.trivial(S3), f)
    assert mu in lev.M_mid.lattice
    assert lev.c_iso(mu) == tuple(y[0] for y in f)


_LEVELS = {}


def _cached_level(site):
    key = tuple(site.places)
    if key not in _LEVELS:
        _LEVELS[key] = GlobalLevel(site)
    return _LEVELS[key]


def test_local_inflation_examples():
    E, K = LocalLevel(C1, 1), LocalLevel(C3, 3)
    assert inflate_local(E, K, [0, 0, 0], "iso").matrix == [[3]]
    E, K = LocalLevel(C2, 2), LocalLevel(V4, 4)
    p = [0, 0, 1, 1]
    inf = inflate_local(E, K, p, "mid")
    for b in E.M_mid.lattice.basis:
        assert inf(b) in K.M_mid.lattice
    ok, _ = square_commutes([E.c_iso.matrix, inflate_local(E, K, p, "iso").matrix],
                            [inf.matrix, K.c_iso.matrix], E.M_mid.lattice)
    assert ok
    with pytest.raises(DivisibilityRequired):
        inflate_local(LocalLevel(C2, 4), LocalLevel(V4, 2), p, "mid")


def test_global_inflation_with_new_place_extends_by_zero():
    lower = fixture_site()
    upper = build_site(C2, [("v1", ["0", "1"]), ("v2", ["0"]), ("v3", ["0", "1"])])
    tw = Tower.identity(lower, upper)
    assert tw.new_places == [2]
    E, K = GlobalLevel(lower), GlobalLevel(upper)
    inf = {f: inflate_global(tw, E, K, f) for f in ("iso", "mid")}
    ok, _ = square_commutes([E.c_iso.matrix, inf["iso"].matrix],
                            [inf["mid"].matrix, K.c_iso.matrix], E.M_mid.lattice)
    assert ok
    new_pts = [u for u in range(upper.n_points) if upper.place_of[u] == 2]
    for b in E.M_iso.lattice.basis:
        assert all(inf["iso"](b)[u] == 0 for u in new_pts)


def test_localization_of_worked_example():
    gt, lam, mu = worked_example()
    lev, site = gt.level, gt.site
    w1, w2 = site.point(0), site.point(1)
    loc, maps, emb = lev.localize(w1)
    assert maps["mid"](mu) == (1, 1)
    loc, maps, emb = lev.localize(w2)
    assert loc.group.order == 1
    assert maps["mid"](mu) == (gt.mu_value(mu, 0, w2)[0],)


def test_dual_module():
    D = DualMid(C2, 4)
    assert D.norm_image() == Lattice.from_generators([[2]], 1)
    assert D.norm_of_delta_e() == (1, 1)
    assert D.pairing_perfect()
    T = DualMid(C1, 3)
    assert T.lattice == Lattice.standard(1)
    assert DualMid.pair((2,), (3,)) == 6


def test_tower_operators_need_cover_of_kernel():
    lower = fixture_site()
    upper = build_site(V4, [("v1", ["(0,0)", "(1,0)"]), ("v2", ["(0,0)"])])
    tw = Tower(lower, upper, [0, 0, 1, 1])
    with pytest.raises(CoverConditionFails):
        TowerSplitting(tw, GModule.trivial(C2))


def test_tower_operator_corrections_are_in_augmentation():
    lower = fixture_site()
    upper = build_site(V4, [("v1", ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]), ("v2", ["(0,0)", "(0,1)"])])
    tw = Tower(lower, upper, [0, 0, 1, 1])
    TS = TowerSplitting(tw, GModule.trivial(C2))
    f = [(Fraction(0),)] * upper.n_points
    f = [(Fraction(k - 1),) for k in range(upper.n_points)]
    f[0] = (f[0][0] - sum(y[0] for y in f),)
    g = TS.pi(1, f)
    assert all(not any(g[u]) for u in range(upper.n_points) if u not in upper.dotted)
    assert mat_mul([[1] * upper.n_points], [list(y) for y in g]) == [[0]]
