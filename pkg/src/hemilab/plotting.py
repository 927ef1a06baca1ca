"""Figures and CSV summaries for the ``report`` subcommand.

Each pole gets a drawing of the 1-skeleton of an apartment through it,
coloured by vertex class, and the job gets bar charts of homology ranks and
stage sizes.  Rendering uses the Agg backend so it runs headless.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .building import JoinBuilding  # noqa: E402
from .filtration import Filtration  # noqa: E402
from .homology import reduced_homology  # noqa: E402
from .metric import classify  # noqa: E402
from .specs import pole_label  # noqa: E402

CLASS_COLOURS = {"LT": "#4477aa", "EQ": "#ccbb44", "GT": "#ee6677"}
PNG_META = {"Software": None}

CSV_FIELDS = ["pole", "lt", "eq", "gt", "gt_f_vector", "gt_top_betti", "ge_top_betti",
              "equator_components", "N", "image_size"]


def _safe(label: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in label)


def skeleton_graph(X, vertices=None) -> nx.Graph:
    keep = set(X.vertices if vertices is None else vertices)
    G = nx.Graph()
    G.add_nodes_from(sorted(keep))
    for e in X.simplices_of_dim(1):
        if e <= keep:
            G.add_edge(*sorted(e))
    return G


def _layout(G: nx.Graph, seed: int):
    # a cycle is an apartment of a rank-2 building; draw it as a polygon
    if G.number_of_nodes() > 2 and all(d == 2 for _, d in G.degree()) and nx.is_connected(G):
        order = [u for u, _ in nx.find_cycle(G)]
        return {v: (math.cos(2 * math.pi * k / len(order)), math.sin(2 * math.pi * k / len(order)))
                for k, v in enumerate(order)}
    return nx.spring_layout(G, seed=seed)


def plot_skeleton(X, cls, path, vertices=None, title="", seed=0):
    G = skeleton_graph(X, vertices)
    pos = _layout(G, seed)
    fig, ax = plt.subplots(figsize=(5, 5))
    nx.draw_networkx_edges(G, pos, ax=ax, edge_color="#999999", width=0.8)
    for name, colour in CLASS_COLOURS.items():
        nodes = [v for v in G.nodes if cls.cls[v].name == name]
        nx.draw_networkx_nodes(G, pos, nodelist=nodes, node_color=colour, node_size=90,
                               ax=ax, label=f"{name} ({len(nodes)})")
    if G.number_of_nodes() <= 30:
        nx.draw_networkx_labels(G, pos, font_size=7, ax=ax)
    ax.set_title(title, fontsize=9)
    ax.legend(loc="upper right", fontsize=7, frameon=False)
    ax.set_axis_off()
    fig.savefig(path, dpi=120, metadata=PNG_META)
    plt.close(fig)


def plot_bars(rows, keys, path, ylabel, title=""):
    labels = [r["pole"] for r in rows]
    width = 0.8 / max(len(keys), 1)
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(rows) + 2), 3.5))
    for i, k in enumerate(keys):
        xs = [j + i * width for j in range(len(rows))]
        ax.bar(xs, [r[k] for r in rows], width=width, label=k)
    ax.set_xticks([j + width * (len(keys) - 1) / 2 for j in range(len(rows))])
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=9)
    ax.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=PNG_META)
    plt.close(fig)


def pole_row(B, x, label, max_cells=200000) -> dict:
    cls = classify(B, x)
    X = B.complex
    gt = X.full_subcomplex(cls.gt)
    ge = X.full_subcomplex(cls.ge)
    eq = X.full_subcomplex(cls.eq)
    pg, pe = reduced_homology(gt, max_cells), reduced_homology(ge, max_cells)
    row = {
        "pole": label,
        "lt": len(cls.lt), "eq": len(cls.eq), "gt": len(cls.gt),
        "gt_f_vector": " ".join(map(str, gt.f_vector())) if not gt.is_empty() else "",
        "gt_top_betti": pg.betti.get(gt.dim(), 0) if not gt.is_empty() else 0,
        "ge_top_betti": pe.betti.get(ge.dim(), 0) if not ge.is_empty() else 0,
        "equator_components": len(eq.components()) if not eq.is_empty() else 0,
        "N": "", "image_size": "",
    }
    if not isinstance(B, JoinBuilding):
        F = Filtration(B, cls=cls)
        row["N"], row["image_size"] = F.N, len(F.image)
        row["stages"] = [len(F.stage_simplices(k)) for k in range(F.N + 1)]
    return row


def write_report(B, poles, outdir, seed=0, max_cells=200000) -> list[Path]:
    """Render figures and summary.csv for every (pole spec, pole) pair; returns written paths."""
    from .specs import pole_from_spec

    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written, rows = [], []
    for doc in poles:
        x = pole_from_spec(B, doc)
        label = pole_label(doc)
        row = pole_row(B, x, label, max_cells)
        rows.append(row)
        cls = classify(B, x)
        if isinstance(B, JoinBuilding):
            verts, what = None, "building"
        else:
            verts, what = x.chart.image, "apartment"
        p = out / f"skeleton-{_safe(label)}.png"
        plot_skeleton(B.complex, cls, p, verts, f"{what} 1-skeleton, pole {label}", seed)
        written.append(p)
    p = out / "betti.png"
    plot_bars(rows, ["gt_top_betti", "ge_top_betti"], p, "top reduced Betti number")
    written.append(p)
    if rows and "stages" in rows[0]:
        depth = max(len(r["stages"]) for r in rows)
        for r in rows:
            for k in range(depth):
                r[f"F{k}"] = r["stages"][k] if k < len(r["stages"]) else r["stages"][-1]
        p = out / "stages.png"
        plot_bars(rows, [f"F{k}" for k in range(depth)], p, "simplices in stage")
        written.append(p)
    p = out / "summary.csv"
    with open(p, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    written.append(p)
    return written
