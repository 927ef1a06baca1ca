"""JSON specs for buildings, poles, supports and verification jobs, plus the on-disk cache."""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any

from .building import DEFAULT_MAX_CHAMBERS, FlagBuilding, JoinBuilding, ThinBuilding
from .metric import barycenter_pole, pole_from_frame, vertex_pole

SCHEMA = "hemilab/v1"
CHECKS = ("solomon-tits", "theorem-a", "theorem-b", "lemmas-metric", "lemmas-supports",
          "lemmas-filtration", "lemmas-cones")


class SpecError(ValueError):
    pass


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def spec_hash(doc: Any) -> str:
    return hashlib.sha256(canonical(doc).encode()).hexdigest()


# -- buildings ---------------------------------------------------------------------

def building_from_spec(doc: dict, max_chambers: int = DEFAULT_MAX_CHAMBERS):
    """{"family":"A","n":3,"q":2}, {"thin":{"family":"A","n":3}} or {"join":[spec, ...]}."""
    if "building" in doc:
        doc = doc["building"]
    if "join" in doc:
        parts = [building_from_spec(d, max_chambers) for d in doc["join"]]
        return JoinBuilding(parts)
    if "thin" in doc:
        inner = doc["thin"]
        _family(inner)
        return ThinBuilding(int(inner["n"]))
    if "q" in doc:
        _family(doc)
        return FlagBuilding(int(doc["n"]), int(doc["q"]), max_chambers)
    raise SpecError(f"unrecognised building spec: {canonical(doc)}")


def _family(doc):
    if doc.get("family", "A") != "A":
        raise SpecError(f"only type A is supported, got {doc.get('family')!r}")


# -- poles -----------------------------------------------------------------------------

def pole_from_spec(building, doc):
    """A pole from JSON or from the CLI shorthands ``vertex:ID`` and ``barycenter:ID,ID``."""
    if isinstance(doc, str):
        kind, _, arg = doc.partition(":")
        ids = [int(a) for a in arg.replace(";", ",").split(",") if a.strip()]
        if kind == "vertex" and len(ids) == 1:
            return vertex_pole(building, ids[0])
        if kind in ("barycenter", "midpoint") and ids:
            return barycenter_pole(building, ids)
        raise SpecError(f"bad pole shorthand {doc!r}")
    if "vertex" in doc:
        return vertex_pole(building, int(doc["vertex"]))
    if "barycenter" in doc:
        ws = doc.get("weights")
        return barycenter_pole(building, [int(v) for v in doc["barycenter"]],
                               None if ws is None else [Fraction(w) for w in ws])
    if "frame" in doc:
        return pole_from_frame(building, doc["frame"], [frozenset(S) for S in doc["carrier"]],
                               [Fraction(w) for w in doc["weights"]])
    raise SpecError(f"unrecognised pole spec: {canonical(doc)}")


def pole_label(doc) -> str:
    if isinstance(doc, str):
        return doc
    if "vertex" in doc:
        return f"vertex:{doc['vertex']}"
    if "barycenter" in doc:
        return "barycenter:" + ",".join(str(v) for v in doc["barycenter"])
    return "frame:" + spec_hash(doc)[:12]


def expand_poles(building, sel) -> list:
    """Pole specs for a selector: a list, "vertices", "edges", "all" or "types".

    "types" takes the first vertex of each type plus the first chamber edge
    joining the two extreme types.
    """
    X = building.complex
    if isinstance(sel, list):
        return sel
    if sel == "vertices":
        return [{"vertex": v} for v in X.vertices]
    if sel == "edges":
        return [{"barycenter": sorted(e)} for e in X.simplices_of_dim(1)]
    if sel == "all":
        return expand_poles(building, "vertices") + expand_poles(building, "edges")
    if sel == "types":
        out, seen = [], set()
        for v in X.vertices:
            if X.vtype[v] not in seen:
                seen.add(X.vtype[v])
                out.append({"vertex": v})
        C = sorted(X.facets[0], key=lambda v: X.vtype[v])
        out.append({"barycenter": sorted([C[0], C[-1]])})
        return out
    raise SpecError(f"unknown pole selector {sel!r}")


# -- jobs ------------------------------------------------------------------------------

def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def normalize_job(doc: dict, *, checks=None, poles=None, seed=None, max_cells=None) -> dict:
    """Fill defaults; CLI overrides win over file contents."""
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise SpecError(f"unsupported schema {doc['schema']!r}")
    building = doc.get("building", doc if ("q" in doc or "thin" in doc or "join" in doc) else None)
    if building is None:
        raise SpecError("job has no building")
    job = {
        "schema": SCHEMA,
        "building": building,
        "poles": doc.get("poles", "all"),
        "supports": doc.get("supports", []),
        "checks": list(doc.get("checks", ["theorem-a", "theorem-b"])),
        "seed": int(doc.get("seed", 0)),
        "bounds": {"max_cells": 200000, "samples": 10000, **doc.get("bounds", {})},
    }
    if checks:
        job["checks"] = list(checks)
    if poles is not None:
        job["poles"] = poles
    if seed is not None:
        job["seed"] = int(seed)
    if max_cells is not None:
        job["bounds"]["max_cells"] = int(max_cells)
    bad = [c for c in job["checks"] if c not in CHECKS]
    if bad:
        raise SpecError(f"unknown checks: {bad}")
    for sup in job["supports"]:
        _check_support(sup)
    return job


def _check_support(sup: dict) -> None:
    if "cap_complement" in sup:
        try:
            t = Fraction(sup["cap_complement"]["t"])
        except (KeyError, ValueError, TypeError) as exc:
            raise SpecError(f"cap_complement needs a rational t: {sup}") from exc
        if not -1 < t < 1:
            raise SpecError(f"cap threshold {t} outside (-1, 1)")
    elif "root_complement" in sup:
        root = sup["root_complement"].get("root")
        if not (isinstance(root, list) and len(root) == 2 and root[0] != root[1]):
            raise SpecError(f"root_complement needs a root [i, j] with i != j: {sup}")
    else:
        raise SpecError(f"unknown support spec: {sup}")


# -- cache -----------------------------------------------------------------------------

def cache_dir(explicit=None) -> Path:
    return Path(explicit or os.environ.get("HEMILAB_CACHE", ".cache"))


def cached_complex_path(spec: dict, directory=None) -> Path:
    return cache_dir(directory) / f"complex-{spec_hash(spec)}.json"


def write_cached_complex(building, spec: dict, directory=None) -> tuple[Path, bool]:
    """Write the complex file unless present; returns (path, hit)."""
    path = cached_complex_path(spec, directory)
    if path.exists():
        return path, True
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(building.complex.dumps() + "\n")
    tmp.replace(path)
    return path, False
