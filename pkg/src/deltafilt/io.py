"""TOML system files and machine-readable reports.

A system file looks like::

    field = 2

    [quiver]
    vertices = ["1", "2"]
    arrows = [["a", "1", "2"]]          # name, source, target

    [[relations]]                        # optional; sum of coef * path
    terms = [[1, ["a", "b"]]]            # path = arrow names in traversal order

    [omega]
    elements = ["1", "2"]
    leq = [["2", "1"]]                   # pairs x <= y; x <= x is implied

    [delta.1]
    dims = { 1 = 1, 2 = 1 }
    maps = { a = [[1]] }                 # rows of the target x source matrix

    [delta.2]
    dims = { 2 = 1 }

    [modules.M]
    sum = ["1", "2"]                     # direct sum of named modules

    [filtrations.F]
    module = "M"
    steps = [ { label = "2", gens = { 2 = [[0, 1]] } },
              { label = "1", gens = { 1 = [[1]] } } ]

Names in ``sum``, ``module`` and on the command line resolve to entries of
``[modules]`` first, then to ``[delta]`` entries by their element label.
Filtration steps are cumulative: ``M_i`` is generated by ``M_{i-1}`` and the
vectors listed in step ``i``.  ``[homs.NAME]`` tables (``source``, ``target``,
``mats = { vertex = matrix }``) declare module maps, used as summand
injections by ``decompose``.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import tomli
import tomli_w

from .filtration import Filtration
from .linalg import PrimeField
from .modules import (BoundQuiverAlgebra, ModuleMap, Quiver, Relation, Representation, ShapeError, Submodule,
                      direct_sum, submodule_generated, validate_representation)
from .preorder import Preorder, PreorderError, transitive_closure_check
from .system import HomologicalSystem


class ParseError(ValueError):
    """Malformed text, with the position reported by the TOML reader."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.line, self.column = line, column


class SemanticError(ValueError):
    """Well-formed text describing invalid objects; the message names the failing invariant."""


@dataclass
class SystemFile:
    """Normalized plain data of a system file; :meth:`build` turns it into domain objects."""

    field: int
    vertices: list
    arrows: list
    relations: list = field(default_factory=list)
    omega_elements: list = field(default_factory=list)
    omega_pairs: list = field(default_factory=list)
    delta: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    filtrations: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)

    # ------------------------------------------------------------------ build

    def algebra(self) -> BoundQuiverAlgebra:
        try:
            field_ = PrimeField(self.field)
        except ValueError as exc:
            raise SemanticError(f"field: {exc}") from None
        try:
            quiver = Quiver(tuple(self.vertices), [tuple(a) for a in self.arrows])
        except ValueError as exc:
            raise SemanticError(f"quiver: {exc}") from None
        try:
            return BoundQuiverAlgebra(quiver, field_, [Relation(r) for r in self.relations])
        except (ValueError, KeyError) as exc:
            raise SemanticError(f"relations: {exc}") from None

    def build(self) -> "Workspace":
        return Workspace(self)


def _rep_from_entry(alg: BoundQuiverAlgebra, entry: dict, where: str) -> Representation:
    dims = {str(v): int(d) for v, d in entry.get("dims", {}).items()}
    for v in dims:
        if v not in alg.vertices:
            raise SemanticError(f"{where}: unknown vertex {v!r} in dims")
    maps = {}
    for name, m in entry.get("maps", {}).items():
        try:
            a = alg.quiver.arrow(name)
        except KeyError:
            raise SemanticError(f"{where}: unknown arrow {name!r}") from None
        shape = (dims.get(a.target, 0), dims.get(a.source, 0))
        try:
            maps[name] = np.asarray(m, dtype=np.int64).reshape(shape)
        except ValueError:
            raise SemanticError(f"{where}: arrow {name!r} needs a {shape[0]}x{shape[1]} matrix") from None
    try:
        rep = Representation(alg, dims, maps)
    except (ShapeError, ValueError) as exc:
        raise SemanticError(f"{where}: {exc}") from None
    bad = validate_representation(alg, rep)
    if bad:
        raise SemanticError(f"{where}: relations {bad} do not vanish")
    return rep


class Workspace:
    """Domain objects built from a :class:`SystemFile`, with name resolution."""

    def __init__(self, data: SystemFile):
        self.data = data
        self.algebra = data.algebra()
        self.system: Optional[HomologicalSystem] = None
        self.delta = {}
        for w, entry in data.delta.items():
            self.delta[w] = _rep_from_entry(self.algebra, entry, f"delta.{w}")
            self.delta[w].name = w
        self.omega = None
        if data.omega_elements:
            try:
                self.omega = Preorder.from_pairs(data.omega_elements, [tuple(x) for x in data.omega_pairs])
            except PreorderError as exc:
                raise SemanticError(f"omega: {exc}") from None
            missing = transitive_closure_check(self.omega)
            if missing:
                raise SemanticError(f"omega: relation is not transitive; missing pairs {missing}")
            if self.delta and set(self.delta) != set(data.omega_elements):
                raise SemanticError("delta: entries must match omega.elements exactly")
            if self.delta:
                self.system = HomologicalSystem(self.algebra, self.omega, self.delta)
        self.modules: dict = {}
        self.injections: dict = {}
        for name in data.modules:
            self.module(name)
        self.homs = {name: self._hom(name, entry) for name, entry in data.homs.items()}
        self.filtrations = {name: self._filtration(name, entry) for name, entry in data.filtrations.items()}

    def module(self, name: str, _stack: tuple = ()) -> Representation:
        if name in self.modules:
            return self.modules[name]
        if name in self.data.modules:
            if name in _stack:
                raise SemanticError(f"modules.{name}: circular definition")
            entry = self.data.modules[name]
            if "sum" in entry:
                parts = [self.module(n, _stack + (name,)) for n in entry["sum"]]
                ds = direct_sum(*parts)
                rep = ds.module
                self.injections[name] = dict(zip(entry["sum"], ds.injections))
            else:
                rep = _rep_from_entry(self.algebra, entry, f"modules.{name}")
            rep.name = name
            self.modules[name] = rep
            return rep
        if name in self.delta:
            return self.delta[name]
        raise SemanticError(f"unknown module {name!r}")

    def _hom(self, name: str, entry: dict) -> ModuleMap:
        src, tgt = self.module(entry["source"]), self.module(entry["target"])
        mats = []
        for v in self.algebra.vertices:
            m = entry.get("mats", {}).get(v)
            shape = (tgt.dim(v), src.dim(v))
            try:
                mats.append(np.zeros(shape, dtype=np.int64) if m is None
                            else np.asarray(m, dtype=np.int64).reshape(shape))
            except ValueError:
                raise SemanticError(f"homs.{name}: vertex {v!r} needs a {shape[0]}x{shape[1]} matrix") from None
        f = ModuleMap(src, tgt, mats)
        if not f.is_homomorphism():
            raise SemanticError(f"homs.{name}: matrices do not commute with the arrows")
        return f

    def _filtration(self, name: str, entry: dict) -> Filtration:
        if self.system is None:
            raise SemanticError(f"filtrations.{name}: needs [omega] and [delta]")
        m = self.module(entry["module"])
        chain = [Submodule.zero(m)]
        labels = []
        gens: dict = {v: [] for v in self.algebra.vertices}
        for k, step in enumerate(entry.get("steps", [])):
            for v, vecs in step.get("gens", {}).items():
                if v not in gens:
                    raise SemanticError(f"filtrations.{name}: step {k}: unknown vertex {v!r}")
                for vec in vecs:
                    if len(vec) != m.dim(v):
                        raise SemanticError(f"filtrations.{name}: step {k}: vector of length {len(vec)} "
                                            f"at vertex {v!r} of dimension {m.dim(v)}")
                    gens[v].append(vec)
            chain.append(submodule_generated(m, gens))
            label = str(step["label"])
            if label not in self.delta:
                raise SemanticError(f"filtrations.{name}: step {k}: unknown label {label!r}")
            labels.append(label)
        return Filtration(m, chain, labels)

    def injections_for(self, m: str, m1: str, m2: str) -> tuple[ModuleMap, ModuleMap]:
        target = self.module(m)
        if m in self.injections and list(self.injections[m]) == [m1, m2]:
            inj = self.injections[m]
            return inj[m1], inj[m2]
        found = []
        for part in (m1, m2):
            cands = [f for f in self.homs.values()
                     if f.source is self.module(part) and f.target is target]
            if len(cands) != 1:
                raise SemanticError(f"no unique injection {part} -> {m}: declare {m} as sum = [{m1!r}, {m2!r}] "
                                    "or give one [homs] entry per summand")
            found.append(cands[0])
        return found[0], found[1]


# ---------------------------------------------------------------------- parse

_POS = re.compile(r"\(at line (\d+), column (\d+)\)")


def _str_keys(d: dict) -> dict:
    return {str(k): v for k, v in d.items()}


def _normalize(raw: dict) -> SystemFile:
    def need(table: dict, key: str, where: str):
        if key not in table:
            raise SemanticError(f"{where}: missing key {key!r}")
        return table[key]

    quiver = need(raw, "quiver", "file")
    vertices = [str(v) for v in need(quiver, "vertices", "quiver")]
    arrows = [[str(x) for x in a] for a in quiver.get("arrows", [])]
    for a in arrows:
        if len(a) != 3:
            raise SemanticError(f"quiver.arrows: entry {a} must be [name, source, target]")
    relations = []
    for r in raw.get("relations", []):
        relations.append([[int(c), [str(x) for x in path]] for c, path in need(r, "terms", "relations")])
    omega = raw.get("omega", {})
    elements = [str(x) for x in omega.get("elements", [])]
    pairs = sorted({(str(x), str(y)) for x, y in omega.get("leq", []) if str(x) != str(y)})

    def rep_entry(entry: dict) -> dict:
        out = {}
        dims = {str(v): int(d) for v, d in entry.get("dims", {}).items() if int(d)}
        out["dims"] = dims
        maps = {str(n): [[int(x) for x in row] for row in m] for n, m in entry.get("maps", {}).items()
                if any(any(int(x) for x in row) for row in m)}
        if maps:
            out["maps"] = maps
        return out

    delta = {str(w): rep_entry(s) for w, s in raw.get("delta", {}).items()}
    modules = {}
    for name, entry in raw.get("modules", {}).items():
        modules[str(name)] = {"sum": [str(x) for x in entry["sum"]]} if "sum" in entry else rep_entry(entry)
    filtrations = {}
    for name, entry in raw.get("filtrations", {}).items():
        steps = []
        for st in entry.get("steps", []):
            gens = {str(v): [[int(x) for x in vec] for vec in vecs] for v, vecs in st.get("gens", {}).items() if vecs}
            steps.append({"label": str(need(st, "label", f"filtrations.{name}")), "gens": gens})
        filtrations[str(name)] = {"module": str(need(entry, "module", f"filtrations.{name}")), "steps": steps}
    homs = {}
    for name, entry in raw.get("homs", {}).items():
        homs[str(name)] = {"source": str(need(entry, "source", f"homs.{name}")),
                           "target": str(need(entry, "target", f"homs.{name}")),
                           "mats": {str(v): [[int(x) for x in row] for row in m]
                                    for v, m in entry.get("mats", {}).items() if m}}
    return SystemFile(int(raw.get("field", 2)), vertices, arrows, relations, elements,
                      [list(pr) for pr in pairs], delta, modules, filtrations, homs)


def parse(text: str) -> SystemFile:
    """Read and fully validate a system file.

    Raises :class:`ParseError` for malformed TOML and :class:`SemanticError`
    when the content violates an invariant (prime field, quiver, relations,
    preorder transitivity, ...).
    """
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = _POS.search(str(exc))
        line, col = (int(m.group(1)), int(m.group(2))) if m else (None, None)
        raise ParseError(str(exc), line, col) from None
    try:
        data = _normalize(raw)
    except (TypeError, ValueError, AttributeError, KeyError) as exc:
        if isinstance(exc, SemanticError):
            raise
        raise SemanticError(f"malformed entry: {exc}") from None
    data.build()
    return data


def serialize(data: SystemFile) -> str:
    doc: dict[str, Any] = {"field": data.field,
                           "quiver": {"vertices": data.vertices, "arrows": data.arrows}}
    if data.relations:
        doc["relations"] = [{"terms": r} for r in data.relations]
    if data.omega_elements:
        doc["omega"] = {"elements": data.omega_elements, "leq": data.omega_pairs}
    for key in ("delta", "modules", "filtrations", "homs"):
        if getattr(data, key):
            doc[key] = getattr(data, key)
    return tomli_w.dumps(doc)


# --------------------------------------------------------------------- report


@dataclass
class Report:
    command: str
    inputs_digest: str
    verdict: str
    exit_code: int
    seed: int
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "inputs_digest": self.inputs_digest,
                           "verdict": self.verdict, "exit_code": self.exit_code, "seed": self.seed,
                           "details": self.details}, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict}"]
        for key in sorted(self.details):
            lines.extend(_text_block(key, self.details[key]))
        lines.append(f"seed {self.seed}, input sha256 {self.inputs_digest[:16]}")
        return "\n".join(lines) + "\n"


def _text_block(key: str, value) -> list[str]:
    if isinstance(value, dict):
        out = [f"{key}:"]
        for k in sorted(value, key=str):
            out.append(f"  {k}: {_fmt(value[k])}")
        return out
    if isinstance(value, list) and value and isinstance(value[0], dict):
        return [f"{key}:"] + [f"  {_fmt(v)}" for v in value]
    return [f"{key}: {_fmt(value)}"]


def _fmt(v) -> str:
    if isinstance(v, list) and v and all(isinstance(x, list) for x in v):
        return " < ".join("(" + ",".join(str(y) for y in x) + ")" for x in v)
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in sorted(v.items(), key=lambda kv: str(kv[0])))
    return str(v)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
