"""Exact integer and rational linear algebra.

Everything here works on plain Python lists of ``int`` / ``Fraction``.
Matrices are lists of rows and act on column vectors.  Lattices are kept
in Hermite normal form so that equal lattices compare equal.
"""

from fractions import Fraction
from math import gcd


class NotASublattice(ValueError):
    pass


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def lcm(a, b):
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd(a, b)


def common_denominator(values):
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = lcm(d, v.denominator)
    return d


def as_fraction(v):
    return v if isinstance(v, Fraction) else Fraction(v)


def frac_str(q):
    """Canonical text for a rational: ``"p/q"`` reduced, integers as ``"p"``."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- matrices

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def mat_mul(A, B, inner=None):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[c * a for a in row] for row in A]


def kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def is_zero_matrix(A):
    return all(not a for row in A for a in row)


def mat_inverse(A):
    """Exact inverse over Q (Gauss-Jordan); raises ``ValueError`` if singular."""
    n = len(A)
    M = [[as_fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def int_matrix(A):
    """Convert a rational matrix with integral entries to ints."""
    out = []
    for row in A:
        r = []
        for a in row:
            a = as_fraction(a)
            if a.denominator != 1:
                raise ValueError("matrix is not integral")
            r.append(a.numerator)
        out.append(r)
    return out


def det(A):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank_q(A):
    """Rank over Q."""
    M = [[as_fraction(a) for a in row] for row in A]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def solve_rational(A, b, ncols):
    """One rational solution of ``A x = b`` or ``None``."""
    m = len(A)
    M = [[as_fraction(a) for a in A[i]] + [as_fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(M[i][ncols] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = M[i][ncols]
    return x


# ------------------------------------------------------------ normal forms

def _row_hnf(A, m, n, track):
    """Row Hermite form keeping all ``m`` rows; returns ``(H, U)`` with ``U*A == H``."""
    H = [list(r) for r in A]
    U = identity(m) if track else None
    r = 0
    for j in range(n):
        if r == m:
            break
        live = [i for i in range(r, m) if H[i][j]]
        if not live:
            continue
        while len(live) > 1:
            p = min(live, key=lambda i: abs(H[i][j]))
            hp = H[p]
            for i in live:
                if i == p:
                    continue
                q = H[i][j] // hp[j]
                if q:
                    hi = H[i]
                    for k in range(j, n):
                        if hp[k]:
                            hi[k] -= q * hp[k]
                    if track:
                        up, ui = U[p], U[i]
                        for k in range(m):
                            if up[k]:
                                ui[k] -= q * up[k]
            live = [i for i in live if H[i][j]]
        p = live[0]
        if p != r:
            H[r], H[p] = H[p], H[r]
            if track:
                U[r], U[p] = U[p], U[r]
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            if track:
                U[r] = [-x for x in U[r]]
        piv = H[r][j]
        for i in range(r):
            q = H[i][j] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                if track:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def _is_diagonal(D):
    return all(not a or i == j for i, row in enumerate(D) for j, a in enumerate(row))


def snf(A, nrows=None, ncols=None):
    """Smith normal form ``U*A*V == D`` with unimodular ``U``, ``V``.

    The diagonal of ``D`` is non-negative and forms a divisibility chain.
    Alternating row and column Hermite reductions keep entries small;
    a final pass of 2x2 gcd moves repairs the divisibility chain.
    """
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)
    if m == 0 or n == 0:
        return U, [[0] * n for _ in range(m)], V
    while True:
        D, T = _row_hnf(D, m, n, True)
        U = mat_mul(T, U)
        if _is_diagonal(D):
            break
        Dt, S = _row_hnf(transpose(D), n, m, True)
        V = mat_mul(V, transpose(S))
        D = transpose(Dt)
        if _is_diagonal(D):
            break
    k = min(m, n)
    d = [D[i][i] for i in range(k)]
    # move zeros to the end
    order = [i for i in range(k) if d[i]] + [i for i in range(k) if not d[i]]
    if order != list(range(k)):
        U = [U[order[i]] for i in range(k)] + U[k:]
        V = [[row[order[i]] for i in range(k)] + row[k:] for row in V]
        d = [d[i] for i in order]
    nz = sum(1 for x in d if x)
    for i in range(nz):
        for j in range(i + 1, nz):
            a, b = d[i], d[j]
            if b % a == 0:
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            ui, uj = U[i], U[j]
            U[i] = [x * s + y * t for s, t in zip(ui, uj)]
            U[j] = [-bg * s + ag * t for s, t in zip(ui, uj)]
            for row in V:
                vi, vj = row[i], row[j]
                row[i] = vi + vj
                row[j] = -y * bg * vi + x * ag * vj
            d[i], d[j] = g, a * bg
    D = [[0] * n for _ in range(m)]
    for i in range(k):
        D[i][i] = d[i]
    return U, D, V


def hnf(rows, ncols):
    """Row Hermite normal form of an integer matrix; zero rows are dropped.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in rows if any(r)]
    H, _ = _row_hnf(A, len(A), ncols, False)
    return [row for row in H if any(row)]


def int_kernel(A, ncols):
    """A Z-basis of ``{x in Z^ncols : A x = 0}`` (saturated by construction).

    Equations are absorbed one at a time by unimodular column operations on
    the running basis, which keeps sparse cochain systems cheap.
    """
    K = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    for row in A:
        nz = [(j, a) for j, a in enumerate(row) if a]
        if not nz:
            continue
        vals = [sum(a * k[j] for j, a in nz) for k in K]
        live = [i for i, v in enumerate(vals) if v]
        if not live:
            continue
        while len(live) > 1:
            p = min(live, key=lambda i: abs(vals[i]))
            kp = K[p]
            for i in live:
                if i == p:
                    continue
                q = vals[i] // vals[p]
                if q:
                    K[i] = [x - q * y for x, y in zip(K[i], kp)]
                    vals[i] -= q * vals[p]
            live = [i for i in live if vals[i]]
        del K[live[0]]
    return K


def solve_int(A, b, ncols):
    """One integer solution of ``A x = b`` or ``None``."""
    m = len(A)
    if m == 0:
        return [0] * ncols
    U, D, V = snf(A, m, ncols)
    ub = mat_vec(U, b)
    y = [0] * ncols
    for i in range(m):
        d = D[i][i] if i < ncols else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return mat_vec(V, y)


# ----------------------------------------------------------------- lattices

class Lattice:
    """The lattice ``(1/den) * rowspan_Z(rows)`` in ``Q^dim``.

    ``rows`` is the canonical Hermite basis, so ``==`` is lattice equality.
    """

    __slots__ = ("dim", "den", "rows", "pivots")

    def __init__(self, dim, den, rows):
        self.dim = dim
        self.den = den
        self.rows = rows
        self.pivots = [next(j for j, a in enumerate(r) if a) for r in rows]

    @classmethod
    def from_int_rows(cls, rows, dim, den=1):
        H = hnf(rows, dim)
        if not H:
            return cls(dim, 1, [])
        g = den
        for row in H:
            for a in row:
                if a:
                    g = gcd(g, a)
        if g > 1:
            H = [[a // g for a in row] for row in H]
            den //= g
        return cls(dim, den, [tuple(r) for r in H])

    @classmethod
    def from_generators(cls, gens, dim):
        gens = [list(v) for v in gens]
        for v in gens:
            if len(v) != dim:
                raise ValueError("generator has wrong length")
        d = common_denominator(x for v in gens for x in v)
        rows = [[int(x * d) for x in v] for v in gens]
        return cls.from_int_rows(rows, dim, d)

    @classmethod
    def standard(cls, dim, den=1):
        return cls(dim, den, [tuple(r) for r in identity(dim)])

    @classmethod
    def zero(cls, dim):
        return cls(dim, 1, [])

    @property
    def rank(self):
        return len(self.rows)

    @property
    def basis(self):
        return [tuple(Fraction(a, self.den) for a in r) for r in self.rows]

    def __repr__(self):
        return f"Lattice(dim={self.dim}, rank={self.rank}, den={self.den})"

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.dim == other.dim
                and self.den == other.den and self.rows == other.rows)

    def __hash__(self):
        return hash((self.dim, self.den, tuple(self.rows)))

    def _scaled_int(self, v):
        out = []
        for x in v:
            x = as_fraction(x) * self.den
            if x.denominator != 1:
                return None
            out.append(x.numerator)
        return out

    def coords(self, v):
        """Integer coordinates of ``v`` in the Hermite basis, or ``None``."""
        w = self._scaled_int(v)
        if w is None:
            return None
        c = []
        for row, p in zip(self.rows, self.pivots):
            a = w[p]
            if a % row[p]:
                return None
            q = a // row[p]
            c.append(q)
            if q:
                for k in range(p, self.dim):
                    if row[k]:
                        w[k] -= q * row[k]
        if any(w):
            return None
        return c

    def __contains__(self, v):
        return self.coords(v) is not None

    def from_coords(self, c):
        v = [0] * self.dim
        for q, row in zip(c, self.rows):
            if q:
                for k in range(self.dim):
                    if row[k]:
                        v[k] += q * row[k]
        return tuple(Fraction(a, self.den) for a in v)

    def issubset(self, other):
        return all(v in other for v in self.basis)

    __le__ = issubset

    def __add__(self, other):
        d = lcm(self.den, other.den)
        rows = [[a * (d // self.den) for a in r] for r in self.rows]
        rows += [[a * (d // other.den) for a in r] for r in other.rows]
        return Lattice.from_int_rows(rows, self.dim, d)

    def scale(self, c):
        return Lattice.from_generators([[c * x for x in v] for v in self.basis], self.dim)

    def image(self, M, dim_out):
        """Image under the rational matrix ``M`` (``dim_out x dim``)."""
        return Lattice.from_generators([mat_vec(M, v) for v in self.basis], dim_out)

    def preimage(self, M, target):
        """``{x in self : M x in target}``."""
        imgs = [mat_vec(M, v) for v in self.basis]
        tb = target.basis
        r, s = len(imgs), len(tb)
        if r == 0:
            return Lattice.zero(self.dim)
        D = common_denominator([x for v in imgs for x in v] + [x for v in tb for x in v])
        m = target.dim
        A = []
        for i in range(m):
            row = [int(imgs[k][i] * D) for k in range(r)]
            row += [-int(tb[k][i] * D) for k in range(s)]
            A.append(row)
        K = int_kernel(A, r + s)
        return Lattice.from_generators([self.from_coords(k[:r]) for k in K], self.dim)

    def kernel(self, M):
        """``{x in self : M x = 0}``."""
        return self.preimage(M, Lattice.zero(len(M)))

    def intersect(self, other):
        ident = identity(self.dim)
        return self.preimage(ident, other)

    def reduce(self, v):
        """Hermite-reduced representative of ``v`` modulo the lattice.

        Pivot coordinates are brought into ``[0, pivot/den)``; two vectors
        differing by a lattice element reduce to the same tuple.
        """
        w = [as_fraction(x) * self.den for x in v]
        for row, p in zip(self.rows, self.pivots):
            q = w[p] // row[p]
            if q:
                for k in range(p, self.dim):
                    if row[k]:
                        w[k] -= q * row[k]
        return tuple(x / self.den for x in w)

    def rational_coords(self, v):
        """Coordinates of ``v`` in the Hermite basis over Q, or ``None``."""
        w = [as_fraction(x) * self.den for x in v]
        c = []
        for row, p in zip(self.rows, self.pivots):
            q = w[p] / row[p]
            c.append(q)
            if q:
                for k in range(p, self.dim):
                    if row[k]:
                        w[k] -= q * row[k]
        if any(w):
            return None
        return c

    def span_contains(self, v):
        return self.rational_coords(v) is not None

    def saturation_in(self, amb):
        """``amb`` intersected with the rational span of ``self``."""
        if self.rank == 0:
            return Lattice.zero(self.dim)
        # rational span = kernel of a complement of the row space
        B = [list(v) for v in self.basis]
        compl = rational_nullspace(B, self.dim)
        if not compl:
            return amb
        return amb.kernel(compl)


def rational_nullspace(A, ncols):
    """Rows spanning ``{x : A x = 0}`` over Q (integral, primitive)."""
    M = [[as_fraction(a) for a in row] for row in A]
    m = len(M)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        d = common_denominator(v)
        iv = [int(x * d) for x in v]
        g = 0
        for x in iv:
            g = gcd(g, x)
        out.append([x // g for x in iv])
    return out


def condition_lattice(n, d, Aeq=(), Bint=()):
    """``{x in (1/d)Z^n : Aeq x = 0 and Bint x integral}`` in Hermite form."""
    Aeq = [list(r) for r in Aeq]
    Bint = [list(r) for r in Bint]
    for r in Aeq + Bint:
        if len(r) != n:
            raise ValueError("condition row has wrong length")
    # x = y/d with y integral
    rows = []
    for r in Aeq:
        m = common_denominator(r)
        rows.append([int(a * m) for a in r] + [0] * len(Bint))
    for k, r in enumerate(Bint):
        m = common_denominator(r)
        slack = [0] * len(Bint)
        slack[k] = -m * d
        rows.append([int(a * m) for a in r] + slack)
    K = int_kernel(rows, n + len(Bint))
    return Lattice.from_int_rows([k[:n] for k in K], n, d)


# ----------------------------------------------- finitely generated groups

class FgAbPresentation:
    """``Z^n / colspan(R)`` with cached Smith data.

    Elements are integer coordinate vectors of length ``n``.
    """

    def __init__(self, n, relations):
        self.n = n
        self.relations = [list(c) for c in relations]  # columns
        k = len(self.relations)
        R = [[self.relations[j][i] for j in range(k)] for i in range(n)]
        U, D, V = snf(R, n, k)
        self.U = U
        self.diag = [D[i][i] if i < k else 0 for i in range(n)]
        self._Uinv = None

    @property
    def invariants(self):
        """Invariant factors ``d > 1`` followed by a ``0`` per free summand."""
        tors = [d for d in self.diag if d > 1]
        return tuple(sorted(tors) + [0] * self.free_rank)

    @property
    def torsion_invariants(self):
        return tuple(sorted(d for d in self.diag if d > 1))

    @property
    def free_rank(self):
        return sum(1 for d in self.diag if d == 0)

    @property
    def order(self):
        if self.free_rank:
            return None
        o = 1
        for d in self.diag:
            o *= d
        return o

    def is_trivial(self):
        return all(d == 1 for d in self.diag)

    def normal_form(self, c):
        uc = mat_vec(self.U, c)
        return tuple((x % d) if d else x for x, d in zip(uc, self.diag) if d != 1)

    def is_zero_coords(self, c):
        return not any(self.normal_form(c))

    def element_order_coords(self, c):
        uc = mat_vec(self.U, c)
        o = 1
        for x, d in zip(uc, self.diag):
            if d == 1:
                continue
            if d == 0:
                if x:
                    return None
                continue
            o = lcm(o, d // gcd(d, x % d))
        return o

    def generator_coords(self):
        """Coordinates of the cyclic generators, one per nontrivial factor."""
        if self._Uinv is None:
            self._Uinv = int_matrix(mat_inverse(self.U)) if self.n else []
        out = []
        for i, d in enumerate(self.diag):
            if d != 1:
                out.append([self._Uinv[r][i] for r in range(self.n)])
        return out


class Subquotient(FgAbPresentation):
    """``amb / sub`` for lattices ``sub <= amb``; elements are ambient vectors."""

    def __init__(self, sub, amb):
        rel = []
        for v in sub.basis:
            c = amb.coords(v)
            if c is None:
                raise NotASublattice(f"basis vector {[frac_str(x) for x in v]} not in ambient lattice")
            rel.append(c)
        super().__init__(amb.rank, rel)
        self.sub = sub
        self.amb = amb

    def _coords(self, v):
        c = self.amb.coords(v)
        if c is None:
            raise ValueError("vector is not in the ambient lattice")
        return c

    def contains(self, v):
        return v in self.amb

    def nf(self, v):
        return self.normal_form(self._coords(v))

    def is_zero(self, v):
        return v in self.sub

    def equal(self, v, w):
        return [a - b for a, b in zip(v, w)] in self.sub

    def element_order(self, v):
        return self.element_order_coords(self._coords(v))

    def generators(self):
        """Ambient representatives of the cyclic generators."""
        return [self.amb.from_coords(c) for c in self.generator_coords()]

    def torsion_generators(self):
        gens = self.generators()
        nontriv = [d for d in self.diag if d != 1]
        return [g for g, d in zip(gens, nontriv) if d > 1]


def subquotient(sub, amb):
    return Subquotient(sub, amb)
