"""JSON workspaces: named quivers, algebras, modules, maps, collections and A-objects.

Layout (every section optional except ``field``)::

    {
      "field": "Q" | "F:5",
      "quivers":   {name: {"vertices": [...], "arrows": [[arrow, source, target], ...],
                           "relations": [relation, ...]}},
      "relations": {quiver_name: [relation, ...]},
      "algebras":  {name: {"quiver": quiver_name}},
      "modules":   {name: {"base": quiver_name, "dims": [...], "maps": {arrow: rows}}},
      "homs":      {name: {"source": module, "target": module, "blocks": [rows, ...]}},
      "algebra_homs": {name: {"source": alg, "target": alg, "arrows": {arrow: element},
                              "vertex_map": [...]}},
      "collections": {name: [module, ...]},
      "aobjects":  {name: {"algebra": alg, "parts": [module, ...], "arrows": {arrow: hom}}},
      "sequences": {name: {"i": hom, "p": hom}}
    }

A relation is a walk string (``"x y"``) or a list of ``[coefficient, walk]``
pairs; an algebra element is a list of ``[coefficient, walk]`` pairs.  Scalars
are strings (``"3"``, ``"-1/2"``); plain integers are accepted on input.
Module maps are keyed by arrow name; an arrow ``u -> v`` carries a
``dims[u] x dims[v]`` matrix and may be omitted when zero.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import AlgebraError, AlgebraHom, BoundQuiver, PathAlgebra, Quiver, build_algebra
from .aobjects import AObject, AObjectError
from .homology import SES
from .linalg import Field, Matrix
from .rep import Rep, RepError, RepMap


class WorkspaceError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


SECTIONS = ("field", "quivers", "relations", "algebras", "modules", "homs", "algebra_homs",
            "collections", "aobjects", "sequences")


class Workspace:
    def __init__(self, field: Field):
        self.field = field
        self.bases: dict[str, BoundQuiver] = {}
        self.algebra_quiver: dict[str, str] = {}
        self._algebras: dict[str, PathAlgebra] = {}
        self.modules: dict[str, Rep] = {}
        self.homs: dict[str, RepMap] = {}
        self.algebra_homs: dict[str, AlgebraHom] = {}
        self.collections: dict[str, list[str]] = {}
        self.aobjects: dict[str, AObject] = {}
        self.sequences: dict[str, SES] = {}
        self._raw_algebra_homs: dict[str, dict] = {}

    # lookups ------------------------------------------------------------
    def _get(self, table: dict, kind: str, name: str):
        if name not in table:
            raise WorkspaceError(f"{kind}.{name}", f"unknown {kind[:-1] if kind.endswith('s') else kind} {name!r}")
        return table[name]

    def module(self, name: str) -> Rep:
        return self._get(self.modules, "modules", name)

    def hom(self, name: str) -> RepMap:
        return self._get(self.homs, "homs", name)

    def base(self, name: str) -> BoundQuiver:
        return self._get(self.bases, "quivers", name)

    def algebra(self, name: str) -> PathAlgebra:
        if name not in self._algebras:
            qname = self._get(self.algebra_quiver, "algebras", name)
            try:
                self._algebras[name] = build_algebra(self.base(qname))
            except AlgebraError as e:
                raise WorkspaceError(f"algebras.{name}", str(e)) from None
        return self._algebras[name]

    def algebra_name_of(self, base: BoundQuiver) -> str | None:
        for name, q in self.algebra_quiver.items():
            if self.bases[q] == base:
                return name
        return None

    def algebra_hom(self, name: str) -> AlgebraHom:
        if name not in self.algebra_homs:
            raw = self._get(self._raw_algebra_homs, "algebra_homs", name)
            self.algebra_homs[name] = _parse_algebra_hom(self, f"algebra_homs.{name}", raw)
        return self.algebra_homs[name]

    def collection(self, name: str) -> list[Rep]:
        return [self.module(m) for m in self._get(self.collections, "collections", name)]

    def aobject(self, name: str) -> AObject:
        return self._get(self.aobjects, "aobjects", name)

    def sequence(self, name: str) -> SES:
        return self._get(self.sequences, "sequences", name)

    def base_name(self, base: BoundQuiver) -> str:
        for name, b in self.bases.items():
            if b == base:
                return name
        raise KeyError("base not registered")

    # adding computed objects ----------------------------------------------
    def add_base(self, name: str, base: BoundQuiver):
        self.bases[name] = base

    def add_module(self, name: str, m: Rep):
        self._ensure_base(m.base)
        self.modules[name] = m

    def _ensure_base(self, base: BoundQuiver) -> str:
        try:
            return self.base_name(base)
        except KeyError:
            name = f"q{len(self.bases)}"
            self.bases[name] = base
            return name


# parsing ---------------------------------------------------------------------

def _expect(cond: bool, path: str, msg: str):
    if not cond:
        raise WorkspaceError(path, msg)


def _scalar(f: Field, x, path: str):
    try:
        return f.parse(x if isinstance(x, str) else str(x))
    except (ValueError, ZeroDivisionError) as e:
        raise WorkspaceError(path, f"bad scalar {x!r} ({e})") from None


def _matrix(f: Field, rows, nrows: int, ncols: int, path: str) -> Matrix:
    _expect(isinstance(rows, list), path, "matrix must be a list of rows")
    if nrows == 0 or ncols == 0:
        _expect(all(isinstance(r, list) and not r for r in rows) and len(rows) in (0, nrows), path,
                f"expected an empty {nrows}x{ncols} matrix")
        return Matrix.zeros(f, nrows, ncols)
    _expect(len(rows) == nrows, path, f"expected {nrows} rows, got {len(rows)}")
    out = []
    for r, row in enumerate(rows):
        _expect(isinstance(row, list) and len(row) == ncols, f"{path}[{r}]", f"expected {ncols} entries")
        out.append([_scalar(f, x, f"{path}[{r}][{c}]") for c, x in enumerate(row)])
    return Matrix(f, nrows, ncols, out)


def _relation(q: Quiver, f: Field, rel, path: str):
    if isinstance(rel, str):
        return [(1, rel)]
    _expect(isinstance(rel, list) and rel, path, "relation must be a walk string or [[coef, walk], ...]")
    out = []
    for k, term in enumerate(rel):
        _expect(isinstance(term, list) and len(term) == 2 and isinstance(term[1], str), f"{path}[{k}]",
                "term must be [coefficient, walk]")
        out.append((_scalar(f, term[0], f"{path}[{k}][0]"), term[1]))
    return out


def _parse_algebra_hom(ws: Workspace, path: str, raw: dict) -> AlgebraHom:
    _expect(isinstance(raw, dict), path, "expected an object")
    src = ws.algebra(raw.get("source", ""))
    tgt = ws.algebra(raw.get("target", ""))
    images = {}
    for arrow, el in (raw.get("arrows") or {}).items():
        _expect(isinstance(el, list), f"{path}.arrows.{arrow}", "element must be [[coef, walk], ...]")
        terms = []
        for k, t in enumerate(el):
            _expect(isinstance(t, list) and len(t) == 2, f"{path}.arrows.{arrow}[{k}]", "term must be [coef, walk]")
            terms.append((str(t[0]), t[1]))
        try:
            src.quiver.arrow_index(arrow)
            images[arrow] = tgt.element(terms) if terms else tgt.zero()
        except AlgebraError as e:
            raise WorkspaceError(f"{path}.arrows.{arrow}", str(e)) from None
    vmap = raw.get("vertex_map")
    if vmap is not None:
        _expect(isinstance(vmap, list) and len(vmap) == src.n, f"{path}.vertex_map",
                f"expected {src.n} target vertices")
        try:
            vmap = [tgt.quiver.vertex_index(v) for v in vmap]
        except AlgebraError as e:
            raise WorkspaceError(f"{path}.vertex_map", str(e)) from None
    return AlgebraHom.from_generators(src, tgt, images, vmap)


def parse_workspace(doc: dict[str, Any]) -> Workspace:
    _expect(isinstance(doc, dict), "$", "workspace must be a JSON object")
    for key in doc:
        _expect(key in SECTIONS, key, f"unknown section (expected one of {', '.join(SECTIONS)})")
    _expect("field" in doc, "field", "missing field")
    try:
        f = Field.from_name(str(doc["field"]))
    except ValueError as e:
        raise WorkspaceError("field", str(e)) from None
    ws = Workspace(f)
    extra_rel = doc.get("relations") or {}
    for name, q in (doc.get("quivers") or {}).items():
        path = f"quivers.{name}"
        _expect(isinstance(q, dict), path, "expected an object")
        try:
            quiver = Quiver.build(q.get("vertices", []), [tuple(a) for a in q.get("arrows", [])])
        except (AlgebraError, TypeError, ValueError) as e:
            raise WorkspaceError(path, f"bad quiver ({e})") from None
        rels = list(q.get("relations", [])) + list(extra_rel.get(name, []))
        parsed = [_relation(quiver, f, r, f"{path}.relations[{k}]") for k, r in enumerate(rels)]
        try:
            ws.bases[name] = BoundQuiver.build(quiver, parsed, f)
        except AlgebraError as e:
            raise WorkspaceError(f"{path}.relations", str(e)) from None
    for name in extra_rel:
        _expect(name in ws.bases, f"relations.{name}", "relations for an unknown quiver")
    for name, a in (doc.get("algebras") or {}).items():
        _expect(isinstance(a, dict) and a.get("quiver") in ws.bases, f"algebras.{name}.quiver",
                "must name a quiver of this workspace")
        ws.algebra_quiver[name] = a["quiver"]
    for name, m in (doc.get("modules") or {}).items():
        ws.modules[name] = _parse_module(ws, f"modules.{name}", m)
    for name, h in (doc.get("homs") or {}).items():
        path = f"homs.{name}"
        _expect(isinstance(h, dict), path, "expected an object")
        src = ws.module(h.get("source", ""))
        tgt = ws.module(h.get("target", ""))
        blocks = h.get("blocks")
        _expect(isinstance(blocks, list) and len(blocks) == len(src.dims), f"{path}.blocks",
                f"expected {len(src.dims)} blocks")
        mats = tuple(_matrix(f, b, tgt.dims[v], src.dims[v], f"{path}.blocks[{v}]") for v, b in enumerate(blocks))
        try:
            ws.homs[name] = RepMap.checked(src, tgt, mats)
        except RepError as e:
            raise WorkspaceError(path, str(e)) from None
    ws._raw_algebra_homs = dict(doc.get("algebra_homs") or {})
    for name, members in (doc.get("collections") or {}).items():
        path = f"collections.{name}"
        _expect(isinstance(members, list) and members, path, "expected a non-empty list of module names")
        for k, m in enumerate(members):
            _expect(m in ws.modules, f"{path}[{k}]", f"unknown module {m!r}")
        ws.collections[name] = list(members)
    for name, z in (doc.get("aobjects") or {}).items():
        ws.aobjects[name] = _parse_aobject(ws, f"aobjects.{name}", z)
    for name, s in (doc.get("sequences") or {}).items():
        path = f"sequences.{name}"
        _expect(isinstance(s, dict), path, "expected an object")
        i, p = ws.hom(s.get("i", "")), ws.hom(s.get("p", ""))
        ses = SES(i, p)
        _expect(i.target == p.source, path, "maps are not composable")
        _expect(ses.check(), path, "sequence is not short exact")
        ws.sequences[name] = ses
    return ws


def _parse_module(ws: Workspace, path: str, m) -> Rep:
    _expect(isinstance(m, dict), path, "expected an object")
    base = ws.bases.get(m.get("base"))
    _expect(base is not None, f"{path}.base", "must name a quiver of this workspace")
    dims = m.get("dims")
    _expect(isinstance(dims, list) and len(dims) == base.n and all(isinstance(d, int) and d >= 0 for d in dims),
            f"{path}.dims", f"expected {base.n} non-negative integers")
    raw = m.get("maps") or {}
    _expect(isinstance(raw, dict), f"{path}.maps", "expected an object keyed by arrow name")
    names = {a.name for a in base.quiver.arrows}
    for k in raw:
        _expect(k in names, f"{path}.maps.{k}", "unknown arrow")
    mats = []
    for a in base.quiver.arrows:
        r, c = dims[a.source], dims[a.target]
        if a.name in raw:
            mats.append(_matrix(ws.field, raw[a.name], r, c, f"{path}.maps.{a.name}"))
        else:
            mats.append(Matrix.zeros(ws.field, r, c))
    try:
        return Rep(base, dims, mats)
    except RepError as e:
        raise WorkspaceError(path, str(e)) from None


def _parse_aobject(ws: Workspace, path: str, z) -> AObject:
    _expect(isinstance(z, dict), path, "expected an object")
    A = ws.algebra(z.get("algebra", ""))
    parts = z.get("parts")
    _expect(isinstance(parts, list) and len(parts) == A.n, f"{path}.parts", f"expected {A.n} module names")
    reps = [ws.module(p) for p in parts]
    target = reps[0].base
    arrows = z.get("arrows") or {}
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        if a.name in arrows:
            g = ws.hom(arrows[a.name])
            _expect(g.source == reps[a.source] and g.target == reps[a.target], f"{path}.arrows.{a.name}",
                    "hom does not connect the right parts")
            maps.append(g)
        else:
            maps.append(RepMap.zero(reps[a.source], reps[a.target]))
    for key in arrows:
        _expect(any(a.name == key for a in A.quiver.arrows), f"{path}.arrows.{key}", "unknown arrow")
    try:
        return AObject(A, target, reps, maps)
    except AObjectError as e:
        raise WorkspaceError(path, str(e)) from None


def load_workspace(path: str | Path) -> Workspace:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise WorkspaceError("$", f"cannot read {path}: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceError("$", f"invalid JSON: {e}") from None
    return parse_workspace(doc)


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("ncdef") / "data" / name))


def load_bundled(name: str) -> Workspace:
    return load_workspace(bundled_path(name))


# serialization -------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> list:
    return m.to_strings()


def quiver_to_json(b: BoundQuiver) -> dict:
    q = b.quiver
    out = {"vertices": list(q.vertices),
           "arrows": [[a.name, q.vertices[a.source], q.vertices[a.target]] for a in q.arrows]}
    if b.relations:
        out["relations"] = [[[b.field.to_str(c), q.walk_str(w)] for c, w in rel] for rel in b.relations]
    return out


def module_to_json(m: Rep, base_name: str) -> dict:
    maps = {a.name: matrix_to_json(mat) for a, mat in zip(m.quiver.arrows, m.maps) if not mat.is_zero()}
    return {"base": base_name, "dims": list(m.dims), "maps": maps}


def hom_to_json(g: RepMap, src: str, tgt: str) -> dict:
    return {"source": src, "target": tgt, "blocks": [matrix_to_json(b) for b in g.blocks]}


def element_to_json(A: PathAlgebra, x) -> list:
    return [[A.field.to_str(c), A.quiver.walk_str(A.basis[j])] for j, c in enumerate(x) if c]


def dump_workspace(ws: Workspace) -> dict:
    """Canonical JSON form; modules and homs must be registered by name."""
    out: dict[str, Any] = {"field": ws.field.name}
    out["quivers"] = {n: quiver_to_json(b) for n, b in ws.bases.items()}
    out["algebras"] = {n: {"quiver": q} for n, q in ws.algebra_quiver.items()}
    mod_names = {}
    out["modules"] = {}
    for n, m in ws.modules.items():
        out["modules"][n] = module_to_json(m, ws.base_name(m.base))
        mod_names.setdefault(id(m), n)

    def mname(m: Rep) -> str:
        if id(m) in mod_names:
            return mod_names[id(m)]
        for n, x in ws.modules.items():
            if x == m:
                return n
        raise KeyError("module not registered")

    out["homs"] = {n: hom_to_json(g, mname(g.source), mname(g.target)) for n, g in ws.homs.items()}
    out["collections"] = {n: list(c) for n, c in ws.collections.items()}
    hom_names = {}
    for n, g in ws.homs.items():
        hom_names.setdefault(id(g), n)

    def hname(g: RepMap) -> str:
        if id(g) in hom_names:
            return hom_names[id(g)]
        for n, x in ws.homs.items():
            if x == g and x.source == g.source and x.target == g.target:
                return n
        raise KeyError("hom not registered")

    out["aobjects"] = {}
    for n, z in ws.aobjects.items():
        alg = next(a for a in ws.algebra_quiver if ws.algebra(a) is z.algebra or ws.algebra(a).bound == z.algebra.bound)
        arrows = {a.name: hname(g) for a, g in zip(z.algebra.quiver.arrows, z.arrow_maps) if not g.is_zero()}
        out["aobjects"][n] = {"algebra": alg, "parts": [mname(p) for p in z.parts], "arrows": arrows}
    out["algebra_homs"] = {}
    for n in list(ws._raw_algebra_homs) + [k for k in ws.algebra_homs if k not in ws._raw_algebra_homs]:
        h = ws.algebra_hom(n)
        src = next(a for a in ws.algebra_quiver if ws.algebra(a).bound == h.source.bound)
        tgt = next(a for a in ws.algebra_quiver if ws.algebra(a).bound == h.target.bound)
        vimg, aimg = getattr(h, "_generator_images", (None, None))
        if aimg is None:
            raise KeyError(f"algebra hom {n} has no generator images")
        out["algebra_homs"][n] = {
            "source": src, "target": tgt,
            "arrows": {a.name: element_to_json(h.target, aimg[k]) for k, a in enumerate(h.source.quiver.arrows)
                       if any(aimg[k])},
            "vertex_map": [h.target.quiver.vertices[v] for v in h.vertex_map]}
    out["sequences"] = {n: {"i": hname(s.i), "p": hname(s.p)} for n, s in ws.sequences.items()}
    return {k: v for k, v in out.items() if v or k == "field"}


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)
