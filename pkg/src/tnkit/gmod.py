"""Finite groups, lattice modules over their group rings, and cohomology.

A :class:`GModule` is a lattice ``L`` in some ``Q^dim`` (optionally modulo a
stable sublattice ``R``) with one rational matrix per group element.  Most
computations happen in the integer coordinates of the Hermite basis of
``L``; the ambient matrices are what callers see.
"""

from fractions import Fraction
from itertools import combinations, permutations as _perms, product

from .exactlin import (
    Lattice, Subquotient, det, identity, int_kernel, int_matrix, kron,
    mat_inverse, mat_mul, mat_scale, mat_sub, mat_vec, solve_int, transpose,
)


class DegreeUnsupported(ValueError):
    pass


class RankTooLargeForSearch(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


class NotSurjective(ValueError):
    pass


class KernelNotInduced(ValueError):
    pass


SEARCH_RANK_BOUND = 12


# ------------------------------------------------------------------- groups

def _cycle_label(images):
    n = len(images)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i] or images[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = images[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


class FiniteGroup:
    """A finite group given by its multiplication table ``table[a][b] = a*b``."""

    def __init__(self, table, labels=None, name=None):
        n = len(table)
        if n == 0:
            raise ValueError("a group has at least one element")
        self.table = [list(r) for r in table]
        self.order = n
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(set(self.labels)) != n:
            raise ValueError("element labels must be distinct")
        for row in self.table:
            if len(row) != n or sorted(row) != list(range(n)):
                raise ValueError("multiplication table is not a Latin square")
        e = next((a for a in range(n) if all(self.table[a][b] == b for b in range(n))), None)
        if e is None:
            raise ValueError("no identity element")
        self.identity = e
        self.inverses = [next(b for b in range(n) if self.table[a][b] == e) for a in range(n)]
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError("multiplication is not associative")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._subgroups = None

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    @property
    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def index_of(self, label):
        if label not in self._index:
            raise KeyError(label)
        return self._index[label]

    def label(self, a):
        return self.labels[a]

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    # constructors
    @classmethod
    def cyclic(cls, n, name=None):
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(table, [str(k) for k in range(n)], name or f"C{n}")

    @classmethod
    def trivial(cls):
        return cls.cyclic(1, "C1")

    @classmethod
    def direct_product(cls, G, H, name=None):
        n, m = G.order, H.order
        table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m]
                  for b in range(n * m)] for a in range(n * m)]
        labels = [f"({G.labels[a // m]},{H.labels[a % m]})" for a in range(n * m)]
        return cls(table, labels, name or f"{G.name}x{H.name}")

    @classmethod
    def from_permutations(cls, generators, degree, name=None):
        """Closure of 0-based permutation tuples; elements in lexicographic order."""
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
        e = tuple(range(degree))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(g[x[i]] for i in range(degree))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        elems = sorted(seen)
        pos = {p: i for i, p in enumerate(elems)}
        # (s t)(i) = s(t(i))
        table = [[pos[tuple(s[t[i]] for i in range(degree))] for t in elems] for s in elems]
        G = cls(table, [_cycle_label(p) for p in elems], name)
        G.permutations = elems
        return G

    @classmethod
    def symmetric(cls, n, name=None):
        return cls.from_permutations(list(_perms(range(n))), n, name or f"S{n}")

    # subgroups and cosets
    def generated(self, gens):
        H = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in H:
                        H.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(H))

    def is_subgroup(self, elems):
        S = set(elems)
        if self.identity not in S:
            return False
        return all(self.table[a][self.inverses[b]] in S for a in S for b in S)

    def subgroups(self):
        """All subgroups as sorted index tuples, ordered by (size, tuple)."""
        if self._subgroups is None:
            found = {(self.identity,)}
            frontier = [(self.identity,)]
            while frontier:
                nxt = []
                for H in frontier:
                    Hs = set(H)
                    for g in self.elements:
                        if g not in Hs:
                            K = self.generated(H + (g,))
                            if K not in found:
                                found.add(K)
                                nxt.append(K)
                frontier = nxt
            self._subgroups = sorted(found, key=lambda H: (len(H), H))
        return list(self._subgroups)

    def left_cosets(self, H):
        """Left cosets ``gH`` as sorted tuples, ordered by least element."""
        out = []
        seen = set()
        for g in self.elements:
            if g in seen:
                continue
            c = tuple(sorted(self.table[g][h] for h in H))
            seen.update(c)
            out.append(c)
        return out

    def right_cosets(self, H):
        out = []
        seen = set()
        for g in self.elements:
            if g in seen:
                continue
            c = tuple(sorted(self.table[h][g] for h in H))
            seen.update(c)
            out.append(c)
        return out

    def conjugate_subgroup(self, H, g):
        gi = self.inverses[g]
        return tuple(sorted(self.table[self.table[g][h]][gi] for h in H))

    def subgroup_class(self, H):
        """Conjugacy class of ``H``, as a sorted list of sorted tuples."""
        return sorted({self.conjugate_subgroup(H, g) for g in self.elements})

    def subgroup_group(self, H):
        """``H`` as a group in its own right plus the embedding list."""
        H = tuple(sorted(H))
        if not self.is_subgroup(H):
            raise ValueError("not a subgroup")
        pos = {h: i for i, h in enumerate(H)}
        table = [[pos[self.table[a][b]] for b in H] for a in H]
        sub = FiniteGroup(table, [self.labels[h] for h in H],
                          f"{self.name}|{','.join(self.labels[h] for h in H)}")
        return sub, list(H)

    def is_homomorphism(self, other, images):
        """Whether ``images[a]`` (indices of ``other``) defines a homomorphism."""
        return all(images[self.table[a][b]] == other.table[images[a]][images[b]]
                   for a in self.elements for b in self.elements)


# ------------------------------------------------------------------ modules

def _int_coords(L, v):
    c = L.coords(v)
    if c is None:
        raise ValueError("vector not in lattice")
    return c


class GModule:
    """``L / R`` with a linear action of ``group``.

    ``action[g]`` is a ``dim x dim`` rational matrix acting on column vectors.
    ``relations`` is ``None`` for lattices or a stable sublattice ``R`` of ``L``.
    """

    def __init__(self, group, lattice, action, relations=None, name=None, check=True):
        self.group = group
        self.lattice = lattice
        self.dim = lattice.dim
        self.action = [[list(r) for r in A] for A in action]
        self.relations = relations
        self.name = name
        if len(self.action) != group.order:
            raise ValueError("need one action matrix per group element")
        B = lattice.basis
        self.rank = len(B)
        self.coord_action = []
        for A in self.action:
            cols = [_int_coords(lattice, mat_vec(A, b)) for b in B]
            self.coord_action.append(transpose(cols, self.rank) if cols else [])
        if relations is not None:
            if not relations <= lattice:
                raise ValueError("relations not contained in the lattice")
            self.rel_coords = [_int_coords(lattice, v) for v in relations.basis]
        else:
            self.rel_coords = []
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        C = self.coord_action
        if C[G.identity] != identity(self.rank):
            raise ValueError("identity does not act trivially")
        for a in G.elements:
            for b in G.elements:
                if mat_mul(C[a], C[b]) != C[G.mul(a, b)]:
                    raise ValueError("action is not a homomorphism")
        if self.relations is not None:
            for A in self.action:
                for v in self.relations.basis:
                    if mat_vec(A, v) not in self.relations:
                        raise ValueError("relations are not stable")

    def __repr__(self):
        return f"GModule({self.name or ''}, rank={self.rank}, group={self.group.name})"

    @property
    def is_lattice(self):
        return self.relations is None

    def act(self, g, v):
        return mat_vec(self.action[g], v)

    def coords(self, v):
        return self.lattice.coords(v)

    def from_coords(self, c):
        return self.lattice.from_coords(c)

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.dim))

    def equal(self, v, w):
        d = [a - b for a, b in zip(v, w)]
        if self.relations is None:
            return not any(d)
        return d in self.relations

    def contains(self, v):
        return v in self.lattice

    def as_group(self):
        """The underlying abelian group ``L/R`` as a presentation."""
        sub = self.relations if self.relations is not None else Lattice.zero(self.dim)
        return Subquotient(sub, self.lattice)

    def restrict(self, H):
        """Restriction to the subgroup ``H`` (sorted element tuple)."""
        sub, emb = self.group.subgroup_group(H)
        return GModule(sub, self.lattice, [self.action[h] for h in emb],
                       self.relations, self.name, check=False)

    def norm_matrix(self, H=None):
        H = self.group.elements if H is None else H
        N = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for h in H:
            A = self.action[h]
            for i in range(self.dim):
                for j in range(self.dim):
                    if A[i][j]:
                        N[i][j] += A[i][j]
        return N

    # constructors
    @classmethod
    def trivial(cls, G, rank=1, name="Z"):
        return cls(G, Lattice.standard(rank), [identity(rank) for _ in G.elements], name=name)

    @classmethod
    def character(cls, G, chi, name="Z(chi)"):
        """Rank one module where ``g`` acts by ``chi[g]`` in ``{1, -1}``."""
        return cls(G, Lattice.standard(1), [[[chi[g]]] for g in G.elements], name=name)

    @classmethod
    def regular(cls, G, name="Z[G]"):
        n = G.order
        action = []
        for g in G.elements:
            A = [[0] * n for _ in range(n)]
            for h in G.elements:
                A[G.mul(g, h)][h] = 1
            action.append(A)
        return cls(G, Lattice.standard(n), action, name=name)

    @classmethod
    def augmentation_kernel(cls, G, name="I_G"):
        """The sum-zero sublattice of ``Z[G]``."""
        R = cls.regular(G)
        n = G.order
        gens = [[(1 if i == k else 0) - (1 if i == 0 else 0) for i in range(n)] for k in range(1, n)]
        L = Lattice.from_generators(gens, n) if gens else Lattice.zero(n)
        return cls(G, L, R.action, name=name)

    @classmethod
    def permutation(cls, G, images, name="Z[X]"):
        """Permutation module: ``images[g][x]`` is the image of point ``x``."""
        n = len(images[G.identity])
        action = []
        for g in G.elements:
            A = [[0] * n for _ in range(n)]
            for x in range(n):
                A[images[g][x]][x] = 1
            action.append(A)
        return cls(G, Lattice.standard(n), action, name=name)


def tensor(X, M, name=None):
    """``X (x) M`` for lattice modules, ambient ``Q^(dim X * dim M)``."""
    if not (X.is_lattice and M.is_lattice) or X.group is not M.group:
        raise ValueError("tensor needs two lattice modules over the same group")
    gens = [[a * b for a in x for b in m] for x in X.lattice.basis for m in M.lattice.basis]
    dim = X.dim * M.dim
    L = Lattice.from_generators(gens, dim) if gens else Lattice.zero(dim)
    action = [kron(X.action[g], M.action[g]) for g in X.group.elements]
    return GModule(X.group, L, action, name=name or f"{X.name}*{M.name}", check=False)


def dual(X, name=None):
    """``Hom(X, Z)`` in the dual coordinates of the Hermite basis of ``X``."""
    if not X.is_lattice:
        raise ValueError("dual needs a lattice module")
    G = X.group
    action = [transpose(X.coord_action[G.inv(g)], X.rank) for g in G.elements]
    return GModule(G, Lattice.standard(X.rank), action, name=name or f"{X.name}^v", check=False)


# --------------------------------------------------------------------- maps

class GMap:
    """An equivariant map given by a rational ``target.dim x source.dim`` matrix.

    ``via[t]`` maps target-group elements to source-group elements; the
    equivariance checked is ``M * A_src(via[t]) == A_tgt(t) * M`` on ``L_src``
    (modulo the target relations).  ``via=None`` means the same group.
    """

    def __init__(self, source, target, matrix, via=None, name=None, check=True):
        self.source = source
        self.target = target
        self.matrix = [list(r) for r in matrix]
        self.via = via
        self.name = name
        if check:
            self.validate()

    def __repr__(self):
        return f"GMap({self.name or ''}: {self.source.name} -> {self.target.name})"

    def __call__(self, v):
        return tuple(Fraction(x) for x in mat_vec(self.matrix, v))

    def _tgt_zero(self, v):
        if self.target.relations is None:
            return not any(v)
        return v in self.target.relations

    def validate(self):
        src, tgt = self.source, self.target
        for b in src.lattice.basis:
            if self(b) not in tgt.lattice:
                raise ValueError(f"{self.name}: lattice not mapped into target")
        if src.relations is not None:
            for b in src.relations.basis:
                if not self._tgt_zero(self(b)):
                    raise ValueError(f"{self.name}: relations not mapped to relations")
        via = self.via
        if via is None and src.group is not tgt.group:
            raise ValueError("maps between different groups need a via list")
        for t in tgt.group.elements:
            s = t if via is None else via[t]
            lhs = mat_mul(self.matrix, src.action[s])
            rhs = mat_mul(tgt.action[t], self.matrix)
            D = mat_sub(lhs, rhs)
            for b in src.lattice.basis:
                if not self._tgt_zero(mat_vec(D, b)):
                    raise NotEquivariant(f"{self.name}: fails at {tgt.group.label(t)}")

    def compose(self, other):
        """``self o other``."""
        via = None
        if self.via is not None or other.via is not None:
            v1 = self.via or list(self.target.group.elements)
            v2 = other.via or list(self.source.group.elements)
            via = [v2[v1[t]] for t in self.target.group.elements]
        return GMap(other.source, self.target, mat_mul(self.matrix, other.matrix), via,
                    check=False)

    def image(self):
        gens = [self(b) for b in self.source.lattice.basis]
        L = Lattice.from_generators(gens, self.target.dim) if gens else Lattice.zero(self.target.dim)
        if self.target.relations is not None:
            L = L + self.target.relations
        return L

    def kernel(self):
        R = self.target.relations or Lattice.zero(self.target.dim)
        return self.source.lattice.preimage(self.matrix, R)

    def is_surjective(self):
        return self.image() == self.target.lattice

    def cokernel(self):
        return Subquotient(self.image(), self.target.lattice)

    def maps_into(self, L):
        return all(self(b) in L for b in self.source.lattice.basis)

    def coord_matrix(self):
        """Integer matrix in the Hermite coordinates of source and target."""
        cols = [_int_coords(self.target.lattice, self(b)) for b in self.source.lattice.basis]
        return transpose(cols, self.target.rank)


def identity_map(M):
    return GMap(M, M, identity(M.dim), check=False)


# --------------------------------------------------------------- cohomology

def _subgroup_elements(M, H):
    G = M.group
    if H is None:
        return list(G.elements)
    H = tuple(sorted(H))
    if not G.is_subgroup(H):
        raise ValueError("not a subgroup")
    return list(H)


def _preimage_rows(A_rows, nvars, R, blocks):
    """``{x in Z^nvars : A x in R^blocks}`` with ``R`` given by integer rows."""
    r = len(R)
    if r == 0:
        K = int_kernel(A_rows, nvars)
        return K
    dim = len(R[0])
    extra = r * blocks
    rows = []
    for t, row in enumerate(A_rows):
        b, i = divmod(t, dim)
        aug = list(row) + [0] * extra
        for s in range(r):
            if R[s][i]:
                aug[nvars + b * r + s] = -R[s][i]
        rows.append(aug)
    K = int_kernel(rows, nvars + extra)
    return [k[:nvars] for k in K]


def _lat(rows, n):
    return Lattice.from_int_rows(rows, n) if rows else Lattice.zero(n)


class CohomologyGroup(Subquotient):
    """A Tate/group cohomology group as cocycles modulo coboundaries.

    Elements are integer cochain vectors (blocks of module coordinates
    indexed by tuples of subgroup elements in lexicographic order).
    """

    def __init__(self, sub, amb, degree, H, rank):
        super().__init__(sub, amb)
        self.degree = degree
        self.subgroup = H
        self.module_rank = rank

    def is_cocycle(self, c):
        return self.contains(c)

    def same_class(self, c1, c2):
        return self.equal(c1, c2)


def tate_cohomology(M, H=None, degree=0):
    """Tate cohomology of ``M`` restricted to ``H`` (default: whole group).

    Degrees -1 and 0 use norm and augmentation; degrees 1 and 2 use
    inhomogeneous cochains.
    """
    if degree not in (-1, 0, 1, 2):
        raise DegreeUnsupported(f"degree {degree} not in -1..2")
    Hs = _subgroup_elements(M, H)
    r = M.rank
    C = M.coord_action
    R = M.rel_coords
    Rlat = _lat(R, r)
    G = M.group
    if degree == -1:
        N = [[0] * r for _ in range(r)]
        for h in Hs:
            for i in range(r):
                for j in range(r):
                    N[i][j] += C[h][i][j]
        Z = _lat(_preimage_rows(N, r, R, 1), r)
        gens = []
        for h in Hs:
            for j in range(r):
                gens.append([C[h][i][j] - (1 if i == j else 0) for i in range(r)])
        B = _lat(gens + R, r)
        return CohomologyGroup(B, Z, -1, Hs, r)
    if degree == 0:
        rows = []
        for h in Hs:
            for i in range(r):
                rows.append([C[h][i][j] - (1 if i == j else 0) for j in range(r)])
        Z = _lat(_preimage_rows(rows, r, R, len(Hs)), r)
        gens = []
        for j in range(r):
            gens.append([sum(C[h][i][j] for h in Hs) for i in range(r)])
        B = _lat(gens + R, r)
        return CohomologyGroup(B, Z, 0, Hs, r)
    k = len(Hs)
    pos = {h: i for i, h in enumerate(Hs)}
    mul = G.table

    def coboundary(p):
        """Matrix of d: C^p -> C^(p+1) as integer rows."""
        src_cells = list(product(range(k), repeat=p))
        src_index = {c: i for i, c in enumerate(src_cells)}
        rows = []
        for cell in product(range(k), repeat=p + 1):
            g = [Hs[i] for i in cell]
            # terms: g0 * phi(g1..gp) + sum (-1)^j phi(.., g_{j-1} g_j, ..) + (-1)^(p+1) phi(g0..g_{p-1})
            terms = []
            terms.append((1, cell[0], cell[1:]))
            for j in range(1, p + 1):
                merged = pos[mul[g[j - 1]][g[j]]]
                terms.append(((-1) ** j, None, cell[:j - 1] + (merged,) + cell[j + 1:]))
            terms.append(((-1) ** (p + 1), None, cell[:p]))
            for i in range(r):
                row = [0] * (len(src_cells) * r)
                for sign, act, sc in terms:
                    base = src_index[sc] * r
                    if act is None:
                        row[base + i] += sign
                    else:
                        A = C[Hs[act]]
                        for j in range(r):
                            if A[i][j]:
                                row[base + j] += sign * A[i][j]
                rows.append(row)
        return rows

    n_src = r * k ** degree
    d_next = coboundary(degree)
    Z = _lat(_preimage_rows(d_next, n_src, R, k ** (degree + 1)), n_src)
    d_prev = coboundary(degree - 1)
    gens = transpose(d_prev, r * k ** (degree - 1))
    Rblocks = []
    for b in range(k ** degree):
        for v in R:
            row = [0] * n_src
            row[b * r:(b + 1) * r] = v
            Rblocks.append(row)
    B = _lat([g for g in gens if any(g)] + Rblocks, n_src)
    return CohomologyGroup(B, Z, degree, Hs, r)


# ------------------------------------------------------ canonical submodules

class CanonicalSubmodules:
    """Invariants, coinvariants, norm and augmentation data of a module."""

    def __init__(self, M):
        G = M.group
        n = G.order
        dim = M.dim
        L = M.lattice
        self.module = M
        Nm = M.norm_matrix()
        self.norm = GMap(M, M, Nm, name="norm", check=False)
        self.normalized_norm = mat_scale(Nm, Fraction(1, n))
        stacked = []
        for g in G.elements:
            stacked.extend(mat_sub(M.action[g], identity(dim)))
        R = M.relations or Lattice.zero(dim)
        Rn = Lattice.from_generators(
            [[0] * (b * dim) + list(v) + [0] * ((n - 1 - b) * dim)
             for b in range(n) for v in R.basis], n * dim) if R.rank else Lattice.zero(n * dim)
        self.invariants = L.preimage(stacked, Rn)
        gens = [mat_vec(M.action[g], v) for g in G.elements for v in L.basis]
        gens = [[a - b for a, b in zip(w, v)] for w, v in zip(gens, [v for _ in G.elements for v in L.basis])]
        aug = Lattice.from_generators(gens, dim) if gens else Lattice.zero(dim)
        if M.relations is not None:
            aug = aug + M.relations
        self.augmentation_submodule = aug
        self.coinvariants = Subquotient(aug, L)

    def __getitem__(self, key):
        return getattr(self, key)


def canonical_submodules(M):
    return CanonicalSubmodules(M)


# --------------------------------------------------------------- induction

class InducedWitness:
    """``generators`` b_1..b_a such that ``{g b_k}`` is a Z-basis of the module."""

    def __init__(self, module, generators):
        self.module = module
        self.generators = [tuple(Fraction(x) for x in b) for b in generators]
        G = module.group
        # ordered basis: for each generator, its translates in group order
        self.basis = [tuple(Fraction(x) for x in module.act(g, b))
                      for b in self.generators for g in G.elements]

    def to_induced(self, v):
        """Coordinates of ``v`` in the induced basis (integer vector)."""
        M = self.module
        cols = [M.coords(b) for b in self.basis]
        A = transpose(cols, M.rank)
        x = solve_int(A, M.coords(v), len(cols))
        return x


def _is_orbit_basis(M, coord_gens):
    G = M.group
    cols = [mat_vec(M.coord_action[g], b) for b in coord_gens for g in G.elements]
    if len(cols) != M.rank:
        return False
    return abs(det(transpose(cols, M.rank))) == 1


def induced_witness(M, hint=None):
    """An explicit isomorphism with ``Ind_1^G(Z^a)``, or ``None``.

    ``hint`` is a list of ambient vectors to test directly.  Without a hint
    a deterministic search over small candidate vectors is run.
    """
    if not M.is_lattice:
        return None
    n = M.group.order
    r = M.rank
    if hint is not None:
        coord = []
        for v in hint:
            c = M.coords(v)
            if c is None:
                return None
            coord.append(c)
        return InducedWitness(M, hint) if _is_orbit_basis(M, coord) else None
    if r % n:
        return None
    if r > SEARCH_RANK_BOUND:
        raise RankTooLargeForSearch(f"rank {r} exceeds search bound {SEARCH_RANK_BOUND}")
    a = r // n
    if a == 0:
        return InducedWitness(M, [])
    pool = [[1 if i == j else 0 for i in range(r)] for j in range(r)]
    for i, j in combinations(range(r), 2):
        pool.append([(1 if t == i else 0) + (1 if t == j else 0) for t in range(r)])
        pool.append([(1 if t == i else 0) - (1 if t == j else 0) for t in range(r)])
    for idx in combinations(range(len(pool)), a):
        coord = [pool[i] for i in idx]
        if _is_orbit_basis(M, coord):
            return InducedWitness(M, [M.from_coords(c) for c in coord])
    return None


def cohomologically_trivial_low(M):
    """Whether Tate cohomology in degrees -1, 0, 1 vanishes for all subgroups.

    Returns ``(True, None)`` or ``(False, (subgroup, degree, invariants))``.
    """
    for H in M.group.subgroups():
        for d in (-1, 0, 1):
            h = tate_cohomology(M, H, d)
            if not h.is_trivial():
                return False, (H, d, h.invariants)
    return True, None


# ------------------------------------------------------ equivariant homs

def _hom_system(CX, CM, G, rX, rM):
    """Rows of ``CM_g T - T CX_g = 0`` for T flattened row-major (rM x rX)."""
    rows = []
    for g in G.elements:
        A, B = CM[g], CX[g]
        for i in range(rM):
            for j in range(rX):
                row = [0] * (rM * rX)
                for k in range(rM):
                    if A[i][k]:
                        row[k * rX + j] += A[i][k]
                for k in range(rX):
                    if B[k][j]:
                        row[i * rX + k] -= B[k][j]
                rows.append(row)
    return rows


def equivariant_hom_lattice(X, M):
    """Lattice of equivariant maps ``X -> M`` in Hermite coordinates.

    A point ``t`` of the result is a flattened integer matrix ``T``
    (``M.rank x X.rank``, row major); :func:`hom_to_ambient` converts it.
    """
    if not X.is_lattice:
        raise ValueError("source must be torsion-free")
    rX, rM = X.rank, M.rank
    rows = _hom_system(X.coord_action, M.coord_action, X.group, rX, rM)
    nv = rX * rM
    K = _preimage_rows(rows, nv, M.rel_coords, X.group.order * rX)
    return _lat(K, nv)


def unflatten(t, rM, rX):
    return [[int(t[i * rX + j]) for j in range(rX)] for i in range(rM)]


def hom_to_ambient(X, M, T):
    """Ambient rational matrix of the coordinate matrix ``T``.

    Defined on the rational span of ``X``; zero on a complement.
    """
    BX = [list(b) for b in X.lattice.basis]
    BM = [list(b) for b in M.lattice.basis]
    rX = len(BX)
    # left inverse of the basis matrix of X
    if rX == 0:
        return [[Fraction(0)] * X.dim for _ in range(M.dim)]
    G = mat_mul(BX, transpose(BX))
    Ginv = mat_inverse(G)
    left = mat_mul(Ginv, BX)  # rX x dimX, left @ b_j = e_j
    BMt = transpose(BM, M.dim)  # dimM x rM
    return mat_mul(mat_mul(BMt, T), left)


def equivariant_lift(f, p):
    """Lift ``f: X -> Q`` through ``p: P -> Q`` equivariantly.

    A plain integer lift ``T0`` is corrected by ``K`` solving the coboundary
    equation ``K - g.K = T0 - g.T0`` with ``K`` valued in ``ker p``.
    Returns a :class:`GMap` ``X -> P``.
    """
    X, Q = f.source, f.target
    P = p.source
    if p.target is not Q and p.target.lattice != Q.lattice:
        raise ValueError("f and p must share their target")
    if not X.is_lattice or not P.is_lattice:
        raise ValueError("source and cover must be lattices")
    if not p.is_surjective():
        raise NotSurjective("p is not surjective")
    G = X.group
    rX, rP, rQ = X.rank, P.rank, Q.rank
    Fc = f.coord_matrix()
    Pc = p.coord_matrix()
    RQ = Q.rel_coords
    # plain lift, column by column: P T0 + R y = F
    aug = [list(Pc[i]) + [v[i] for v in RQ] for i in range(rQ)]
    T0 = [[0] * rX for _ in range(rP)]
    for j in range(rX):
        x = solve_int(aug, [Fc[i][j] for i in range(rQ)], rP + len(RQ))
        if x is None:
            raise NotSurjective("no integral lift of a column")
        for i in range(rP):
            T0[i][j] = x[i]
    # kernel basis of p (coordinates in P)
    Kb = _preimage_rows(Pc, rP, RQ, 1)
    s = len(Kb)
    Bk = transpose(Kb, rP)  # rP x s
    CP, CX = P.coord_action, X.coord_action
    # unknown Kc (s x rX); equation: Bk Kc - CP_g Bk Kc CX_{g^-1} = T0 - CP_g T0 CX_{g^-1}
    rows, rhs = [], []
    for g in G.elements:
        A = mat_mul(CP[g], Bk) if s else [[] for _ in range(rP)]
        Bi = CX[G.inv(g)]
        rhs_m = mat_sub(T0, mat_mul(mat_mul(CP[g], T0), Bi))
        for i in range(rP):
            for j in range(rX):
                row = [0] * (s * rX)
                for a in range(s):
                    if Bk[i][a]:
                        row[a * rX + j] += Bk[i][a]
                    if A[i][a]:
                        for k in range(rX):
                            if Bi[k][j]:
                                row[a * rX + k] -= A[i][a] * Bi[k][j]
                rows.append(row)
                rhs.append(rhs_m[i][j])
    sol = solve_int(rows, rhs, s * rX) if s * rX else ([] if not any(rhs) else None)
    if sol is None:
        raise KernelNotInduced("coboundary equation has no integral solution")
    Kc = [[sol[a * rX + j] for j in range(rX)] for a in range(s)]
    Kmat = mat_mul(Bk, Kc) if s else [[0] * rX for _ in range(rP)]
    T = mat_sub(T0, Kmat)
    lift = GMap(X, P, hom_to_ambient(X, P, T), name="lift")
    return lift


def is_unimodular(A):
    return abs(det(A)) == 1


__all__ = [
    "FiniteGroup", "GModule", "GMap", "tensor", "dual", "tate_cohomology",
    "canonical_submodules", "induced_witness", "equivariant_hom_lattice",
    "equivariant_lift", "hom_to_ambient", "unflatten", "DegreeUnsupported",
    "RankTooLargeForSearch", "NotSurjective", "KernelNotInduced", "NotEquivariant",
    "cohomologically_trivial_low", "identity_map", "int_matrix",
]
