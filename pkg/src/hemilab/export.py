"""Graphviz DOT export of 1-skeletons with vertex classes annotated."""

from __future__ import annotations

from .complex import SimplicialComplex
from .metric import VertexClassification

DOT_COLOURS = {"LT": "lightblue", "EQ": "khaki", "GT": "salmon"}


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(X: SimplicialComplex, cls: VertexClassification | None = None, vertices=None,
           name: str = "skeleton") -> str:
    """Undirected graph of the 1-skeleton, restricted to ``vertices`` when given."""
    keep = set(X.vertices if vertices is None else vertices)
    lines = [f"graph {_quote(name)} {{", "  node [style=filled];"]
    for v in sorted(keep):
        attrs = {"label": X.labels.get(v, v), "type": X.vtype[v]}
        if cls is not None and v in cls.cls:
            c = cls.cls[v].name
            attrs["class"] = c
            attrs["fillcolor"] = DOT_COLOURS[c]
        body = ", ".join(f"{k}={_quote(val)}" for k, val in attrs.items())
        lines.append(f"  {v} [{body}];")
    for e in sorted(tuple(sorted(e)) for e in X.simplices_of_dim(1)):
        if set(e) <= keep:
            lines.append(f"  {e[0]} -- {e[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
