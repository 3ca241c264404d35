from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tnkit.cmpmod import LocalLevel
from tnkit.exactlin import Lattice, mat_mul, subquotient
from tnkit.gmod import (
    FiniteGroup, GMap, GModule, canonical_submodules, dual, equivariant_hom_lattice,
    equivariant_lift, hom_to_ambient, induced_witness, tate_cohomology, tensor, unflatten,
)
from tnkit.tn import invariant_lattice

C2 = FiniteGroup.cyclic(2, "C2")
S3 = FiniteGroup.from_permutations([[1, 0, 2], [1, 2, 0]], 3, "S3")


def sign(G=C2):
    return GModule.character(G, [1, -1] if G is C2 else [1 if _even(G, g) else -1 for g in G.elements])


def _even(G, g):
    return G.label(g).count(" ") in (0, 2)


def test_group_tables():
    assert S3.order == 6
    assert S3.labels == ['()', '(2 3)', '(1 2)', '(1 2 3)', '(1 3 2)', '(1 3)']
    V4 = FiniteGroup.direct_product(C2, C2, "V4")
    assert V4.labels == ['(0,0)', '(0,1)', '(1,0)', '(1,1)']
    assert len(S3.subgroups()) == 6


def test_tate_examples():
    Z = GModule.trivial(C2)
    assert tate_cohomology(Z, None, -1).is_trivial()
    # oracle: the norm on trivial Z is multiplication by 2
    assert tate_cohomology(Z, None, 0).invariants == subquotient(
        Lattice.from_generators([[2]], 1), Lattice.standard(1)).invariants
    assert tate_cohomology(LocalLevel(C2, 2).M_mid, None, 0).invariants == (2,)
    assert tate_cohomology(sign(), None, 1).invariants == (2,)


def test_tate_mid_oracle_by_enumeration():
    # invariants of M_mid at level 2 are (1/2)Z(1,1); the norm image is Z(1,1)
    M = LocalLevel(C2, 2).M_mid
    inv = [v for v in ((Fraction(a, 2), Fraction(b, 2)) for a in range(-4, 5) for b in range(-4, 5))
           if v in M.lattice and v[0] == v[1]]
    assert Lattice.from_generators(inv, 2) == Lattice.from_generators([[Fraction(1, 2)] * 2], 2)
    cs = canonical_submodules(M)
    img = Lattice.from_generators([cs.norm(b) for b in M.lattice.basis], 2)
    assert img == Lattice.from_generators([[1, 1]], 2)


def test_canonical_submodules_examples():
    cs = canonical_submodules(GModule.trivial(C2))
    assert cs.invariants == Lattice.standard(1)
    assert cs.coinvariants.invariants == (0,)
    assert cs.normalized_norm == [[1]]
    assert cs.augmentation_submodule.rank == 0
    cs = canonical_submodules(sign())
    assert cs.invariants.rank == 0
    assert cs.coinvariants.invariants == (2,)
    assert cs.normalized_norm == [[0]]
    assert cs.augmentation_submodule == Lattice.from_generators([[2]], 1)
    cs = canonical_submodules(GModule.regular(C2))
    assert cs.invariants == Lattice.from_generators([[1, 1]], 2)
    assert cs.coinvariants.invariants == (0,)
    assert cs.augmentation_submodule == Lattice.from_generators([[1, -1]], 2)


def test_induced_witness_examples():
    lev = LocalLevel(C2, 2)
    w = lev.kernel_witness()
    assert w is not None and len(w.basis) == 2
    assert induced_witness(sign()) is None
    # the certificate of non-inducedness is in degree -1; degree 0 vanishes
    assert tate_cohomology(sign(), None, -1).invariants == (2,)
    assert tate_cohomology(sign(), None, 0).is_trivial()
    w = induced_witness(GModule.regular(C2))
    assert w is not None


def test_hom_examples():
    H = equivariant_hom_lattice(sign(), GModule.regular(C2))
    assert H.rank == 1
    T = unflatten(H.basis[0], 2, 1)
    A = hom_to_ambient(sign(), GModule.regular(C2), T)
    col = [A[0][0], A[1][0]]
    assert col[0] == -col[1] and col[0] != 0
    assert equivariant_hom_lattice(GModule.trivial(C2), sign()).rank == 0


@pytest.mark.parametrize("M", [GModule.trivial(C2), sign(), GModule.regular(C2), GModule.regular(S3)])
def test_hom_contains_identity(M):
    H = equivariant_hom_lattice(M, M)
    ident = [1 if i == j else 0 for i in range(M.rank) for j in range(M.rank)]
    assert tuple(Fraction(x) for x in ident) in H
    assert H.rank == invariant_lattice(tensor(dual(M), M)).rank


def test_equivariant_lift_through_c_rig():
    lev = LocalLevel(C2, 2)
    X = lev.M_mid
    lift = equivariant_lift(lev.c_rig, lev.c_rig)
    for b in X.lattice.basis:
        y = lift(b)
        assert y in X.lattice
        d = tuple(u - v for u, v in zip(lev.c_rig(y), lev.c_rig(b)))
        assert d in lev.M_rig.relations


def test_equivariant_lift_free_cover():
    # lift the identity of Z[C2] through the surjection Z[C2]^2 -> Z[C2]
    R = GModule.regular(C2)
    P = GModule(C2, Lattice.standard(4),
                [[[R.action[g][i % 2][j % 2] if i // 2 == j // 2 else 0 for j in range(4)]
                  for i in range(4)] for g in C2.elements], name="Z[C2]^2")
    p = GMap(P, R, [[1, 0, 1, 0], [0, 1, 0, 1]])
    f = GMap(R, R, [[1, 0], [0, 1]])
    lift = equivariant_lift(f, p)
    assert mat_mul(p.matrix, lift.matrix) == [[1, 0], [0, 1]]
    zero = equivariant_lift(GMap(R, R, [[0, 0], [0, 0]]), p)
    assert mat_mul(p.matrix, zero.matrix) == [[0, 0], [0, 0]]


@pytest.mark.parametrize("G", [C2, FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)])
def test_periodicity_on_mid_modules(G):
    for N in (1, 2, 4):
        M = LocalLevel(G, N).M_mid
        assert tate_cohomology(M, None, 1).invariants == tate_cohomology(M, None, -1).invariants
        assert tate_cohomology(M, None, 2).invariants == tate_cohomology(M, None, 0).invariants


def test_induced_vanishing_regular_s3():
    R = GModule.regular(S3)
    for H in S3.subgroups():
        for d in (-1, 0, 1):
            assert tate_cohomology(R, H, d).is_trivial()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(
    lambda m: m[0] * m[3] - m[1] * m[2] != 0))
def test_normalized_norm_idempotent_on_c2_lattices(m):
    # any full-rank sublattice of Z[C2] that is stable under the swap
    a, b, c, d = m
    gens = [[a, b], [c, d], [b, a], [d, c]]
    L = Lattice.from_generators(gens, 2)
    M = GModule(C2, L, GModule.regular(C2).action)
    cs = canonical_submodules(M)
    P = cs.normalized_norm
    assert mat_mul(P, P) == P
    for v in L.basis:
        assert cs.norm(v) in cs.invariants
