"""Render distribution diagrams to image files.

Cells are drawn as circles (size inside, loop label above), laid out left to
right by distance from the seed and stacked vertically within a layer; each
directed multiplicity appears near its own end of the connecting edge, the
same way the reference diagrams annotate them.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import QuotientDiagram

_R = 0.30  # circle radius in layout units


def _layout(diagram: QuotientDiagram) -> list[tuple[float, float]]:
    layers: dict[int, list[int]] = {}
    for i, d in enumerate(diagram.dists):
        layers.setdefault(d, []).append(i)
    pos: list[tuple[float, float]] = [(0.0, 0.0)] * diagram.n_cells
    for d in sorted(layers):
        cells = layers[d]
        span = len(cells) - 1
        for row, cell in enumerate(cells):
            y = (span / 2.0 - row) * 1.6
            pos[cell] = (1.9 * d, y)
    return pos


def render_diagram(
    diagram: QuotientDiagram, path: str, title: str | None = None
) -> None:
    pos = _layout(diagram)
    fig, ax = plt.subplots(figsize=(1.8 + 2.1 * (max(diagram.dists) + 1), 4.2))
    ax.set_aspect("equal")
    ax.axis("off")

    for i in range(diagram.n_cells):
        for j in range(i + 1, diagram.n_cells):
            if not diagram.mult[i][j]:
                continue
            (x1, y1), (x2, y2) = pos[i], pos[j]
            dx, dy = x2 - x1, y2 - y1
            norm = (dx * dx + dy * dy) ** 0.5
            ux, uy = dx / norm, dy / norm
            ax.plot(
                [x1 + _R * ux, x2 - _R * ux],
                [y1 + _R * uy, y2 - _R * uy],
                color="black",
                lw=1.0,
                zorder=1,
            )
            # label each direction near its own endpoint, offset off the line
            off = 0.14
            px, py = -uy * off, ux * off
            ax.text(
                x1 + 0.62 * ux + px, y1 + 0.62 * uy + py,
                str(diagram.mult[i][j]), fontsize=9, ha="center", va="center",
            )
            ax.text(
                x2 - 0.62 * ux + px, y2 - 0.62 * uy + py,
                str(diagram.mult[j][i]), fontsize=9, ha="center", va="center",
            )

    for i, (x, y) in enumerate(pos):
        circ = plt.Circle((x, y), _R, fill=False, color="black", lw=1.2, zorder=2)
        ax.add_patch(circ)
        ax.text(x, y, str(diagram.sizes[i]), fontsize=10, ha="center", va="center")
        loop = diagram.mult[i][i]
        ax.text(
            x, y + _R + 0.17, str(loop) if loop else "-",
            fontsize=9, ha="center", va="center",
        )

    total = sum(diagram.sizes)
    label = f"v={total}" if title is None else title
    ax.text(
        max(p[0] for p in pos) + 1.0, 0.0, label,
        fontsize=11, ha="left", va="center",
    )
    ax.relim()
    ax.autoscale_view()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
