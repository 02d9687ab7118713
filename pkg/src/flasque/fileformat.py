"""JSON lattice documents: one group, named lattices and named maps.

    {"group":    {"elements": [...], "table": [[...]]},
     "lattices": {name: {"rank": n, "action": {label: [[row-major]]}}},
     "maps":     {name: {"dom": name, "cod": name, "matrix": [[row-major]]}}}

Matrices act on column vectors.  Every group element, identity included,
must appear in each action.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .groups import FiniteGroup, GroupError, make_group
from .intmat import IntMatrix
from .lattices import GLattice, LatticeError, LatticeMap


class FormatError(ValueError):
    pass


@dataclass
class Document:
    group: FiniteGroup
    lattices: dict[str, GLattice] = field(default_factory=dict)
    maps: dict[str, LatticeMap] = field(default_factory=dict)

    def lattice(self, name: str) -> GLattice:
        try:
            return self.lattices[name]
        except KeyError:
            raise FormatError(f"no lattice named {name!r}; known: {', '.join(sorted(self.lattices))}") from None


def _matrix(rows, nrows: int, ncols: int, what: str) -> IntMatrix:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise FormatError(f"{what}: expected {nrows} rows")
    for r in rows:
        if not isinstance(r, list) or len(r) != ncols or not all(isinstance(x, int) and not isinstance(x, bool)
                                                                 for x in r):
            raise FormatError(f"{what}: every row must list {ncols} integers")
    return IntMatrix(rows, ncols)


def parse_document(data: dict) -> Document:
    if not isinstance(data, dict):
        raise FormatError("top level must be a JSON object")
    unknown = set(data) - {"group", "lattices", "maps"}
    if unknown:
        raise FormatError(f"unknown top-level keys: {sorted(unknown)}")
    try:
        grp = data["group"]
        group = make_group(grp["elements"], grp["table"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed group: {exc}") from None
    except GroupError as exc:
        raise FormatError(f"invalid group: {exc}") from None
    doc = Document(group)
    for name, spec in (data.get("lattices") or {}).items():
        try:
            rank = spec["rank"]
            action = spec["action"]
        except (KeyError, TypeError):
            raise FormatError(f"lattice {name!r} needs 'rank' and 'action'") from None
        if not isinstance(rank, int) or rank < 0:
            raise FormatError(f"lattice {name!r}: rank must be a nonnegative integer")
        missing = [g for g in group.elements if g not in action]
        if missing:
            raise FormatError(f"lattice {name!r}: action omits {missing}")
        extra = [g for g in action if g not in group.elements]
        if extra:
            raise FormatError(f"lattice {name!r}: action names unknown elements {extra}")
        mats = [_matrix(action[g], rank, rank, f"lattice {name!r}, element {g!r}") for g in group.elements]
        try:
            doc.lattices[name] = GLattice(group, rank, mats, name=name)
        except LatticeError as exc:
            raise FormatError(f"lattice {name!r}: {exc}") from None
    for name, spec in (data.get("maps") or {}).items():
        try:
            dom, cod = doc.lattices[spec["dom"]], doc.lattices[spec["cod"]]
        except KeyError as exc:
            raise FormatError(f"map {name!r}: unknown lattice {exc}") from None
        except TypeError:
            raise FormatError(f"map {name!r} needs 'dom', 'cod' and 'matrix'") from None
        mat = _matrix(spec.get("matrix"), cod.rank, dom.rank, f"map {name!r}")
        try:
            doc.maps[name] = LatticeMap(dom, cod, mat)
        except LatticeError as exc:
            raise FormatError(f"map {name!r}: {exc}") from None
    return doc


def load_document(path: str | Path) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    return parse_document(data)


def document_dict(group: FiniteGroup, lattices: dict[str, GLattice], maps: dict[str, LatticeMap]) -> dict:
    names = {id(m): n for n, m in lattices.items()}

    def lname(m: GLattice) -> str:
        if id(m) in names:
            return names[id(m)]
        for n, x in lattices.items():
            if x == m:
                return n
        raise FormatError("map refers to a lattice that is not in the document")

    return {
        "group": {"elements": list(group.elements), "table": [list(r) for r in group.table]},
        "lattices": {n: {"rank": m.rank, "action": {group.elements[g]: m.action[g].tolist()
                                                    for g in range(group.order)}}
                     for n, m in lattices.items()},
        "maps": {n: {"dom": lname(f.domain), "cod": lname(f.codomain), "matrix": f.matrix.tolist()}
                 for n, f in maps.items()},
    }


_INT_ROW = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def dumps(data: dict) -> str:
    """Deterministic text form; integer rows are kept on one line."""
    text = json.dumps(data, ensure_ascii=False, indent=1)
    return _INT_ROW.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text) + "\n"


def klein_preset_dict() -> dict:
    """The Klein-four lattices and maps: Z, Z[G], I_G, T_*, F_*, P_* and the arrows between them."""
    from .klein import build_T_star

    d = build_T_star()
    res = d.resolution
    lattices = {"Z": d.Z, "ZG": d.ZG, "IG": d.IG, "ZG_IG": d.source, "ZG_ZG": d.phi.codomain,
                "Tstar": d.Tstar, "Fstar": res.F, "Pstar": res.P}
    maps = {
        "augmentation": LatticeMap(d.ZG, d.Z, IntMatrix([[1] * d.G.order], d.G.order)),
        "ig_inclusion": d.ig_incl,
        "phi": d.phi,
        "tstar_embedding": d.embed,
        "fstar_inclusion": res.inj,
        "pstar_projection": res.surj,
    }
    return document_dict(d.G, lattices, maps)


def shipped_preset(name: str) -> str:
    """Text of a preset file shipped with the package."""
    return resources.files("flasque").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


PRESETS = {"klein": klein_preset_dict}


def preset_document(name: str) -> Document:
    if name not in PRESETS:
        raise FormatError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    return parse_document(PRESETS[name]())
