"""The built-in catalog and the translation of config dicts into objects."""

import copy
import json
from importlib import resources

import jsonschema

from .exactlin import Lattice, identity, mat_mul
from .gmod import FiniteGroup, GModule
from .sites import GlobalSite, NotASubgroup, Tower, TowerMismatch, UnknownGroupElement, build_site


class ConfigError(ValueError):
    """Invalid configuration; ``location`` is a JSON-pointer-like path."""

    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location


DEFAULT_CONFIG = {
    "groups": {
        "C1": {"cyclic": 1},
        "C2": {"cyclic": 2},
        "C3": {"cyclic": 3},
        "C4": {"cyclic": 4},
        "C2xC2": {"product": ["C2", "C2"]},
        "S3": {"permutations": [[1, 0, 2], [1, 2, 0]], "degree": 3},
    },
    "modules": {
        "C1.triv": {"group": "C1", "kind": "trivial"},
        "C1.reg": {"group": "C1", "kind": "regular"},
        "C2.triv": {"group": "C2", "kind": "trivial"},
        "C2.sign": {"group": "C2", "rank": 1, "action": {"1": [[-1]]}},
        "C2.reg": {"group": "C2", "kind": "regular"},
        "C2.norm1": {"group": "C2", "kind": "regular", "lattice": [[1, -1]]},
        "C3.triv": {"group": "C3", "kind": "trivial"},
        "C3.reg": {"group": "C3", "kind": "regular"},
        "C4.triv": {"group": "C4", "kind": "trivial"},
        "C4.sign": {"group": "C4", "rank": 1, "action": {"1": [[-1]]}},
        "C4.reg": {"group": "C4", "kind": "regular"},
        "C2xC2.triv": {"group": "C2xC2", "kind": "trivial"},
        "C2xC2.sign": {"group": "C2xC2", "rank": 1,
                       "action": {"(1,0)": [[-1]], "(0,1)": [[1]]}},
        "C2xC2.reg": {"group": "C2xC2", "kind": "regular"},
        "S3.triv": {"group": "S3", "kind": "trivial"},
        "S3.sign": {"group": "S3", "rank": 1,
                    "action": {"(1 2)": [[-1]], "(1 2 3)": [[1]]}},
        "S3.reg": {"group": "S3", "kind": "regular"},
    },
    "sites": {
        "fixture": {"group": "C2", "places": [
            {"name": "v1", "subgroup": ["0", "1"]},
            {"name": "v2", "subgroup": ["0"]}]},
        "c2_full": {"group": "C2", "places": [
            {"name": "v1", "subgroup": ["0", "1"]},
            {"name": "v2", "subgroup": ["0", "1"]}]},
        "trivial_two": {"group": "C1", "places": [
            {"name": "v1", "subgroup": ["0"]},
            {"name": "v2", "subgroup": ["0"]}]},
        "s3_example": {"group": "S3", "places": [
            {"name": "v1", "subgroup": ["()"]},
            {"name": "v2", "subgroup": ["()", "(1 2)"]},
            {"name": "v3", "subgroup": ["()", "(1 2 3)", "(1 3 2)"]}]},
        "s3_four": {"group": "S3", "places": [
            {"name": "a", "subgroup": ["()", "(1 2)"]},
            {"name": "b", "subgroup": ["()", "(1 3)"]},
            {"name": "c", "subgroup": ["()", "(2 3)"]},
            {"name": "d", "subgroup": ["()", "(1 2 3)", "(1 3 2)"]}]},
        "v4_over_fixture": {"group": "C2xC2", "places": [
            {"name": "v1", "subgroup": ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]},
            {"name": "v2", "subgroup": ["(0,0)", "(0,1)"]}]},
        "v4_over_fixture_new_place": {"group": "C2xC2", "places": [
            {"name": "v1", "subgroup": ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]},
            {"name": "v2", "subgroup": ["(0,0)", "(0,1)"]},
            {"name": "v3", "subgroup": ["(0,0)", "(1,0)"]}]},
        "v4_split": {"group": "C2xC2", "places": [
            {"name": "v1", "subgroup": ["(0,0)", "(1,0)"]},
            {"name": "v2", "subgroup": ["(0,0)", "(0,1)"]}]},
    },
    "towers": {
        "c2_to_v4": {"lower": "fixture", "upper": "v4_over_fixture",
                     "map": {"(0,0)": "0", "(0,1)": "0", "(1,0)": "1", "(1,1)": "1"}},
        "c2_to_v4_new_place": {"lower": "fixture", "upper": "v4_over_fixture_new_place",
                               "map": {"(0,0)": "0", "(0,1)": "0", "(1,0)": "1", "(1,1)": "1"}},
        "c2_to_v4_split": {"lower": "fixture", "upper": "v4_split",
                           "map": {"(0,0)": "0", "(0,1)": "0", "(1,0)": "1", "(1,1)": "1"}},
    },
    "levels": [1, 2, 4, 6],
    "searches": {
        "s3_two": {"group": "S3", "classes": [["()", "(1 2)"], ["()", "(1 2 3)", "(1 3 2)"]]},
        "s3_four": {"group": "S3", "classes": [["()", "(1 2)"], ["()", "(1 2)"], ["()", "(1 2)"],
                                               ["()", "(1 2 3)", "(1 3 2)"]]},
    },
}


def default_config():
    return copy.deepcopy(DEFAULT_CONFIG)


def load_schema():
    text = resources.files("tnkit").joinpath("config.schema.json").read_text()
    return json.loads(text)


def validate_schema(cfg):
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as e:
        loc = "/" + "/".join(str(p) for p in e.absolute_path)
        raise ConfigError(loc, e.message) from None


def _group(name, spec, built, loc):
    if "cyclic" in spec:
        return FiniteGroup.cyclic(spec["cyclic"], name)
    if "product" in spec:
        a, b = spec["product"]
        for x in (a, b):
            if x not in built:
                raise ConfigError(loc + "/product", f"unknown or later group {x!r}")
        return FiniteGroup.direct_product(built[a], built[b], name)
    if "permutations" in spec:
        try:
            return FiniteGroup.from_permutations(spec["permutations"], spec["degree"], name)
        except ValueError as e:
            raise ConfigError(loc, str(e)) from None
    try:
        return FiniteGroup(spec["table"], spec.get("labels"), name)
    except (ValueError, IndexError) as e:
        raise ConfigError(loc + "/table", str(e)) from None


def _module(name, spec, groups, loc):
    G = groups.get(spec["group"])
    if G is None:
        raise ConfigError(loc + "/group", f"unknown group {spec['group']!r}")
    kind = spec.get("kind")
    if kind == "trivial":
        rank = spec.get("rank", 1)
        action = [identity(rank) for _ in G.elements]
    elif kind == "regular":
        rank = G.order
        action = GModule.regular(G).action
    else:
        rank = spec["rank"]
        action = _close_action(G, rank, spec.get("action", {}), loc)
    lattice = Lattice.standard(rank)
    if "lattice" in spec:
        rows = spec["lattice"]
        if any(len(r) != rank for r in rows):
            raise ConfigError(loc + "/lattice", "row length differs from rank")
        lattice = Lattice.from_generators(rows, rank)
    relations = None
    if "relations" in spec:
        rows = spec["relations"]
        if any(len(r) != rank for r in rows):
            raise ConfigError(loc + "/relations", "row length differs from rank")
        relations = Lattice.from_generators(rows, rank) if rows else Lattice.zero(rank)
    try:
        return GModule(G, lattice, action, relations, name=name)
    except ValueError as e:
        raise ConfigError(loc, str(e)) from None


def _close_action(G, rank, gens, loc):
    """Extend generator matrices to all elements, checking consistency."""
    mats = {}
    for lab, A in gens.items():
        try:
            g = G.index_of(lab)
        except KeyError:
            raise ConfigError(loc + "/action", f"unknown element {lab!r}") from None
        if len(A) != rank or any(len(r) != rank for r in A):
            raise ConfigError(loc + "/action/" + lab, "matrix has the wrong shape")
        mats[g] = [list(r) for r in A]
    action = {G.identity: identity(rank)}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, A in mats.items():
                y = G.mul(g, x)
                B = mat_mul(A, action[x])
                if y in action:
                    if action[y] != B:
                        raise ConfigError(loc + "/action", "generator matrices do not define an action")
                else:
                    action[y] = B
                    nxt.append(y)
        frontier = nxt
    if len(action) != G.order:
        raise ConfigError(loc + "/action", "generators do not generate the group")
    return [action[g] for g in G.elements]


def _site(name, spec, groups, loc):
    G = groups.get(spec["group"])
    if G is None:
        raise ConfigError(loc + "/group", f"unknown group {spec['group']!r}")
    try:
        return build_site(G, [(p["name"], p["subgroup"]) for p in spec["places"]], name)
    except (NotASubgroup, UnknownGroupElement, ValueError) as e:
        raise ConfigError(loc + "/places", str(e).strip("'\"")) from None


def _tower(name, spec, sites, loc):
    lo, up = sites.get(spec["lower"]), sites.get(spec["upper"])
    if lo is None or up is None:
        raise ConfigError(loc, "unknown site reference")
    try:
        p = [None] * up.group.order
        for a, b in spec["map"].items():
            p[up.group.index_of(a)] = lo.group.index_of(b)
    except KeyError as e:
        raise ConfigError(loc + "/map", f"unknown element {e}") from None
    if None in p:
        raise ConfigError(loc + "/map", "map must cover every upper element")
    try:
        return Tower(lo, up, p)
    except TowerMismatch as e:
        raise ConfigError(loc, str(e)) from None


class Catalog:
    """Validated objects built from a config."""

    def __init__(self, cfg):
        validate_schema(cfg)
        self.config = cfg
        self.groups = {}
        for name, spec in cfg["groups"].items():
            self.groups[name] = _group(name, spec, self.groups, f"/groups/{name}")
        self.modules = {name: _module(name, spec, self.groups, f"/modules/{name}")
                        for name, spec in cfg.get("modules", {}).items()}
        self.sites = {name: _site(name, spec, self.groups, f"/sites/{name}")
                      for name, spec in cfg.get("sites", {}).items()}
        self.towers = {name: _tower(name, spec, self.sites, f"/towers/{name}")
                       for name, spec in cfg.get("towers", {}).items()}
        self.levels = list(cfg.get("levels", [1]))
        self.searches = {}
        for name, spec in cfg.get("searches", {}).items():
            loc = f"/searches/{name}"
            G = self.groups.get(spec["group"])
            if G is None:
                raise ConfigError(loc + "/group", f"unknown group {spec['group']!r}")
            classes = []
            for k, labels in enumerate(spec["classes"]):
                try:
                    H = tuple(sorted(G.index_of(x) for x in labels))
                except KeyError as e:
                    raise ConfigError(f"{loc}/classes/{k}", f"unknown element {e}") from None
                if not G.is_subgroup(H):
                    raise ConfigError(f"{loc}/classes/{k}", "not a subgroup")
                classes.append(G.subgroup_class(H))
            self.searches[name] = (G, classes)

    def lattice_modules(self, group_name=None):
        return {k: M for k, M in self.modules.items()
                if M.is_lattice and (group_name is None or M.group.name == group_name)}

    def modules_over(self, G):
        return {k: M for k, M in self.modules.items() if M.group is G}


def load_catalog(cfg=None):
    return Catalog(default_config() if cfg is None else cfg)
