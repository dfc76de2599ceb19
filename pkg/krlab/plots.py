from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import networkx as nx

from .green import GreenData, green, j_poset
from .semigroup import SemigroupTable

logger = logging.getLogger(__name__)


def _layers(hasse: nx.DiGraph) -> Dict[int, Tuple[float, float]]:
    """Maximal classes on top; each class one row below its lowest cover."""
    level: Dict[int, int] = {}
    for v in nx.topological_sort(hasse):
        preds = list(hasse.predecessors(v))
        level[v] = 0 if not preds else 1 + max(level[p] for p in preds)
    rows: Dict[int, list] = {}
    for v, lv in level.items():
        rows.setdefault(lv, []).append(v)
    pos: Dict[int, Tuple[float, float]] = {}
    for lv, members in rows.items():
        for k, v in enumerate(sorted(members)):
            pos[v] = (k - (len(members) - 1) / 2.0, -float(lv))
    return pos


def plot_j_poset(
    table: SemigroupTable,
    output_png: str | Path,
    gd: Optional[GreenData] = None,
    title: Optional[str] = None,
) -> Path:
    """
    Draw the J-class Hasse diagram to a PNG.

    - non-aperiodic classes are filled, aperiodic ones hollow
    - node labels: class index, size and maximal subgroup order
    """
    gd = gd if gd is not None else green(table)
    hasse = j_poset(gd)
    pos = _layers(hasse)
    output_png = Path(output_png).expanduser().resolve()

    width = max(4.0, 1.2 * max(sum(1 for p in pos.values() if p[1] == y) for y in {p[1] for p in pos.values()}))
    height = max(3.0, 1.1 * (1 + max(-p[1] for p in pos.values())))
    fig, ax = plt.subplots(figsize=(width, height))
    colors = ["tab:red" if not gd.aperiodic_class(j) else "white" for j in hasse.nodes]
    nx.draw_networkx_edges(hasse, pos, ax=ax, arrows=False, width=0.8, alpha=0.6)
    nx.draw_networkx_nodes(hasse, pos, ax=ax, node_color=colors, edgecolors="black", node_size=700)
    members = gd.j_classes
    labels = {j: f"J{j}\n{len(members[j])}|{gd.max_subgroup_order[j]}" for j in hasse.nodes}
    nx.draw_networkx_labels(hasse, pos, labels=labels, ax=ax, font_size=7)
    ax.set_title(title or f"J-classes ({table.size} elements)")
    ax.set_axis_off()
    plt.tight_layout()
    plt.savefig(output_png, dpi=200)
    plt.close(fig)
    logger.info("J-class diagram saved to %s", output_png)
    return output_png
