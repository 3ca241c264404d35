import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tnkit.exactlin import Lattice
from tnkit.gmod import FiniteGroup, GModule
from tnkit.sites import Tower, build_site
from tnkit.tn import (
    GlobalTorus, GlobalTransition, LocalCartesian, NotSaturated, NotTorsion, PlaceMismatch,
    SemiAdelic, TorusData, YMidElement, defect, iso_to_mid, mid_to_rig, worked_example,
    y_iso, y_mid_check, y_rig_reduce,
)

C2 = FiniteGroup.cyclic(2, "C2")
TRIV = TorusData(GModule.trivial(C2))
SIGN = TorusData(GModule.character(C2, [1, -1]))
REG = TorusData(GModule.regular(C2))


def fixture_site():
    return build_site(C2, [("v1", ["0", "1"]), ("v2", ["0"])])


def test_y_iso_examples():
    assert y_iso(TRIV).invariants == (0,)
    assert y_iso(SIGN).invariants == (2,)


def test_y_rig_examples():
    assert y_rig_reduce(SIGN, [2]).is_zero()
    assert y_rig_reduce(SIGN, [Fraction(1, 2)]).order() == 4
    with pytest.raises(NotTorsion):
        y_rig_reduce(TRIV, [Fraction(1, 2)])


def test_y_mid_check_examples():
    for lam in range(-2, 3):
        for mu in (Fraction(-1, 2), Fraction(0), Fraction(3, 4)):
            assert y_mid_check(SIGN, [lam], [mu])
            assert y_mid_check(TRIV, [lam], [mu]) == (lam == mu)
    gt, lam, mu = worked_example()
    assert gt.check(lam, mu)


def test_iso_to_mid_examples():
    x = iso_to_mid(TRIV, [0])
    assert (x.lam, x.mu) == ((0,), (0,))
    x = iso_to_mid(TRIV, [3])
    assert (x.lam, x.mu) == ((3,), (3,))
    x = iso_to_mid(SIGN, [1])
    assert (x.lam, x.mu) == ((1,), (0,))


def test_mid_to_rig_and_defect_examples():
    half = YMidElement(SIGN, [1], [Fraction(1, 2)])
    assert mid_to_rig(SIGN, half) == y_rig_reduce(SIGN, [Fraction(1, 2)])
    assert defect(SIGN, half) == y_rig_reduce(SIGN, [Fraction(1, 2)])
    for lam in (-3, 0, 5):
        x = iso_to_mid(TRIV, [lam])
        assert mid_to_rig(TRIV, x).is_zero()
        assert defect(TRIV, x).is_zero()
    assert mid_to_rig(SIGN, YMidElement(SIGN, [0], [2])).is_zero()


def test_subtorus_must_be_saturated():
    with pytest.raises(NotSaturated):
        TorusData(GModule.trivial(C2), Lattice.from_generators([[2]], 1))


@pytest.mark.parametrize("T", [TRIV, SIGN, REG], ids=["triv", "sign", "reg"])
@pytest.mark.parametrize("N", [1, 2, 4])
def test_local_cartesian(T, N):
    lc = LocalCartesian(T, N)
    assert lc.is_bijection()
    a, b = lc.kernel_column()
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.sampled_from([1, 2, 4, 8]))
def test_consistency_identity_regular(a, b, c, den):
    # a pair (lam, mu) for Z[C2] with equal norms
    lam = [a, b]
    mu = [Fraction(c, den), Fraction(a + b, 1) - Fraction(c, den)]
    x = YMidElement(REG, lam, mu)
    assert y_mid_check(REG, x.lam, x.mu)
    lhs = mid_to_rig(REG, x) - mid_to_rig(REG, iso_to_mid(REG, x.lam))
    assert lhs == -defect(REG, x)


def test_worked_example_numbers():
    gt, lam, mu = worked_example()
    site = gt.site
    w1, w2 = site.point(0), site.point(1)
    sw2 = site.act[1][w2]
    assert gt.mu_value(mu, 0, w1) == (1,) and gt.mu_value(mu, 1, w1) == (1,)
    assert gt.mu_value(mu, 0, w2) == (-1,) and gt.mu_value(mu, 1, sw2) == (-1,)
    a, b = gt.localize(lam, mu, 0), gt.localize(lam, mu, 1)
    assert (a.lam, a.mu) == ((1,), (1,))
    assert (b.lam, b.mu) == ((-1,), (-1,))
    assert gt.product_defect_sum(mu) == (0,)
    zero = tuple([0] * len(mu))
    assert gt.product_defect_sum(zero) == (0,)
    z = gt.localize(tuple([0] * len(lam)), zero, 0)
    assert (z.lam, z.mu) == ((0,), (0,))


def test_global_random_elements_on_fixture():
    gt = GlobalTorus(SIGN, fixture_site())
    rng = random.Random(7)
    assert gt.cartesian_check()
    for _ in range(20):
        lam, mu = gt.random_element(rng)
        assert gt.check(lam, mu)
        assert not any(gt.product_defect_sum(mu))
        for v in range(2):
            x = gt.localize(lam, mu, v)
            assert y_mid_check(x.torus, x.lam, x.mu)
            assert x.same(gt.localize(lam, mu, v, "max"))


def test_lift_iso_and_epsilon_prime():
    site = build_site(C2, [("v1", ["0", "1"]), ("v2", ["0", "1"])])
    gt = GlobalTorus(REG, site)
    rng = random.Random(3)
    for _ in range(5):
        lam = gt.random_element(rng)[0]
        assert gt.check(lam, gt.lift_iso(lam))
        eps = gt.N_nat(lam)
        e2 = gt.epsilon_prime(eps)
        assert gt.N_nat(e2) == eps and gt.supported_on_dotted(e2)


def test_transition_identity_tower():
    site = fixture_site()
    tr = GlobalTransition(Tower.identity(site), TRIV)
    rng = random.Random(11)
    for _ in range(20):
        lam = tr.lower.random_element(rng)[0]
        assert tr.lower.y_iso.equal(tr.j(tr.bang(lam)), lam)


def test_semiadelic_examples():
    site = build_site(C2, [("v1", ["0", "1"]), ("v2", ["0", "1"])])
    sa = SemiAdelic(SIGN, site)
    zero = {"v1": (0,), "v2": (0,)}
    assert sa.iso_member(zero) and sa.mid_member(zero, zero) and sa.rig_member(zero)
    assert sa.iota(zero) == (0,)
    assert sa.iso_member({"v1": (1,), "v2": (1,)})
    good = {"v1": (Fraction(1, 2),), "v2": (Fraction(-1, 2),)}
    assert sa.rig_member(good)
    bad = {"v1": (Fraction(1, 2),), "v2": (Fraction(-1, 4),)}
    assert not sa.rig_member(bad)
    with pytest.raises(PlaceMismatch):
        sa.iso_member({"v1": (0,)})
    lams = {"v1": (1,), "v2": (2,)}
    mus = sa.lift_to_mid(lams)
    assert mus is not None and sa.mid_member(lams, mus)
