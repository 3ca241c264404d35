"""Finite Galois site data: places, decomposition subgroups, towers.

A place is modeled only by its decomposition subgroup ``D_v``.  The set of
places above the place set is the disjoint union of the coset spaces
``G/D_v``; the identity cosets are the chosen lifts ("dotted" points).
"""

from itertools import product


class NotASubgroup(ValueError):
    def __init__(self, place, message=None):
        super().__init__(message or f"place {place!r}: elements do not form a subgroup")
        self.place = place


class UnknownGroupElement(KeyError):
    pass


class TowerMismatch(ValueError):
    pass


class GlobalSite:
    """A finite group with places ``(name, D_v)`` and the coset model of S_E.

    Points of S_E are indexed ``0..n-1``: places in the given order, cosets of
    each place ordered by least element index.  ``act[g][w]`` is ``g.w``.
    """

    def __init__(self, group, places, name=None):
        self.group = group
        self.name = name
        self.places = []
        names = set()
        for pname, H in places:
            if pname in names:
                raise ValueError(f"duplicate place name {pname!r}")
            names.add(pname)
            H = tuple(sorted(set(H)))
            if not group.is_subgroup(H):
                raise NotASubgroup(pname)
            self.places.append((pname, H))
        self.points = []  # (place index, coset tuple)
        self.dotted = []
        coset_pos = {}
        for v, (_, H) in enumerate(self.places):
            for c in group.left_cosets(H):
                if group.identity in c:
                    self.dotted.append(len(self.points))
                for g in c:
                    coset_pos[(v, g)] = len(self.points)
                self.points.append((v, c))
        self._coset_pos = coset_pos
        G = group
        self.act = [[coset_pos[(v, G.mul(g, c[0]))] for (v, c) in self.points]
                    for g in G.elements]
        self.place_of = [v for v, _ in self.points]

    def __repr__(self):
        return f"GlobalSite({self.name or ''}, |S_E|={self.n_points})"

    @property
    def n_points(self):
        return len(self.points)

    @property
    def n_places(self):
        return len(self.places)

    @property
    def place_names(self):
        return [p for p, _ in self.places]

    def place_index(self, name):
        for i, (p, _) in enumerate(self.places):
            if p == name:
                return i
        raise KeyError(name)

    def decomposition_group(self, v):
        return self.places[v][1]

    def point(self, v, g=None):
        """Index of the point ``g . vdot`` of place ``v``."""
        g = self.group.identity if g is None else g
        return self._coset_pos[(v, g)]

    def stabilizer(self, w):
        return tuple(g for g in self.group.elements if self.act[g][w] == w)

    def is_dotted(self, w):
        return w in self.dotted

    def point_label(self, w):
        v, c = self.points[w]
        name = self.places[v][0]
        if self.group.identity in c:
            return name
        return f"{self.group.label(c[0])}.{name}"

    def coset_rep(self, w):
        """Least-index ``g`` with ``g . vdot = w``."""
        return self.points[w][1][0]

    def describe(self):
        return {
            "group": self.group.name,
            "places": [{"name": p, "subgroup": [self.group.label(h) for h in H]}
                       for p, H in self.places],
            "n_points": self.n_points,
        }


def build_site(group, places, name=None):
    """Build a site from ``[(place name, [element labels]), ...]``."""
    resolved = []
    for pname, labels in places:
        idx = []
        for lab in labels:
            try:
                idx.append(group.index_of(lab))
            except KeyError:
                raise UnknownGroupElement(f"place {pname!r}: unknown element {lab!r}") from None
        resolved.append((pname, idx))
    return GlobalSite(group, resolved, name)


class CoverResult:
    def __init__(self, covered, witness):
        self.covered = covered
        self.witness = witness

    def __bool__(self):
        return self.covered

    def __repr__(self):
        return f"CoverResult(covered={self.covered}, witness={self.witness})"


def check_cover(site):
    """Whether the decomposition subgroups together exhaust the group."""
    covered = set()
    for _, H in site.places:
        covered.update(H)
    for g in site.group.elements:
        if g not in covered:
            return CoverResult(False, g)
    return CoverResult(True, None)


def _validate_class(G, cls):
    cls = sorted({tuple(sorted(H)) for H in cls})
    for H in cls:
        if not G.is_subgroup(H):
            raise NotASubgroup(None, f"{H} is not a subgroup")
        for g in G.elements:
            if G.conjugate_subgroup(H, g) not in cls:
                raise ValueError("class is not closed under conjugation")
    return cls


def search_lifts(G, classes):
    """Choose one conjugate per place so that their union is ``G``.

    Exhaustive backtracking in lexicographic order; returns the first cover
    found as a list of subgroups, or ``None`` when none exists.
    """
    classes = [_validate_class(G, c) for c in classes]
    n = G.order
    best = [max(len(H) for H in c) - 1 for c in classes]
    tail = [0] * (len(classes) + 1)
    for i in range(len(classes) - 1, -1, -1):
        tail[i] = tail[i + 1] + best[i]
    choice = []

    def rec(i, covered):
        if len(covered) == n:
            return True
        if i == len(classes) or n - len(covered) > tail[i]:
            return False
        for H in classes[i]:
            choice.append(H)
            if rec(i + 1, covered | set(H)):
                return True
            choice.pop()
        return False

    if rec(0, {G.identity}):
        # pad with first choices when the cover completed early
        while len(choice) < len(classes):
            choice.append(classes[len(choice)][0])
        return list(choice)
    return None


def enumerate_covers(G, classes):
    """All covering assignments, by brute force over the product."""
    classes = [_validate_class(G, c) for c in classes]
    out = []
    for pick in product(*classes):
        s = set()
        for H in pick:
            s.update(H)
        if len(s) == G.order:
            out.append(list(pick))
    return out


def simultaneous_conjugator(site1, site2):
    """Least ``g`` with ``g D_v g^-1 = D'_v`` for every place, or ``None``."""
    if site1.group is not site2.group or site1.n_places != site2.n_places:
        raise ValueError("sites must share the group and the number of places")
    G = site1.group
    for g in G.elements:
        if all(G.conjugate_subgroup(H1, g) == H2
               for (_, H1), (_, H2) in zip(site1.places, site2.places)):
            return g
    return None


class Tower:
    """Sites at levels E (``lower``) and K (``upper``) with ``p: G_K -> G_E``.

    ``p[t]`` is the image in the lower group of upper element ``t``.  Every
    lower place must exist upstairs with ``p(D'_v) = D_v``.
    """

    def __init__(self, lower, upper, p):
        self.lower = lower
        self.upper = upper
        self.p = list(p)
        GE, GK = lower.group, upper.group
        if len(self.p) != GK.order:
            raise TowerMismatch("p needs one image per upper element")
        if not GK.is_homomorphism(GE, self.p):
            raise TowerMismatch("p is not a homomorphism")
        if set(self.p) != set(GE.elements):
            raise TowerMismatch("p is not surjective")
        self.kernel = tuple(t for t in GK.elements if self.p[t] == GE.identity)
        self.degree = len(self.kernel)
        self.place_map = []
        for v, (name, H) in enumerate(lower.places):
            try:
                u = upper.place_index(name)
            except KeyError:
                raise TowerMismatch(f"place {name!r} missing at upper level") from None
            img = tuple(sorted({self.p[h] for h in upper.places[u][1]}))
            if img != H:
                raise TowerMismatch(f"place {name!r}: image of upper decomposition group differs")
            self.place_map.append(u)
        lower_of_upper = {u: v for v, u in enumerate(self.place_map)}
        # point map S_K -> S_E (None on new places)
        self.point_map = []
        for u_pt in range(upper.n_points):
            uplace, coset = upper.points[u_pt]
            v = lower_of_upper.get(uplace)
            if v is None:
                self.point_map.append(None)
            else:
                self.point_map.append(lower.point(v, self.p[coset[0]]))
        self.new_places = [u for u in range(upper.n_places) if u not in lower_of_upper]

    @classmethod
    def identity(cls, lower, upper=None):
        upper = upper or lower
        return cls(lower, upper, list(upper.group.elements))

    def local_degree(self, u):
        """``[K_u : E_w]`` for an upper point over a lower place."""
        w = self.point_map[u]
        return len(self.upper.stabilizer(u)) // len(self.lower.stabilizer(w))

    def check_equivariant(self):
        GK = self.upper.group
        for t in GK.elements:
            for u in range(self.upper.n_points):
                w = self.point_map[u]
                if w is None:
                    continue
                if self.point_map[self.upper.act[t][u]] != self.lower.act[self.p[t]][w]:
                    return False
        return True

    def check_dotted(self):
        return all(self.point_map[u] in self.lower.dotted
                   for u in self.upper.dotted if self.point_map[u] is not None)
