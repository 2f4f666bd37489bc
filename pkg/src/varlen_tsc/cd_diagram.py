"""Critical-difference diagram rendering (SVG and aligned text).

Both renderings are produced from the same (label, average rank) pairs:
a horizontal rank axis from k (left) to 1 (right), so the best column sits
rightmost; thick bars under the axis connect columns whose average ranks
fall inside one clique.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .ranking import RankTable

__all__ = ["cd_diagram_svg", "cd_diagram_text", "render_cd_diagram"]

_FONT = 12
_CHAR_W = 7.2  # monospace advance at font size 12
_ROW_H = 18
_BAR_H = 10


def _ordered(ranks: RankTable):
    order = sorted(
        range(ranks.k), key=lambda j: (ranks.average_rank[j], ranks.columns[j])
    )
    names = [ranks.columns[j] for j in order]
    avgs = [float(ranks.average_rank[j]) for j in order]
    return names, avgs


def _pack_rows(intervals: list[tuple[float, float]]) -> list[int]:
    """Greedy assignment of possibly overlapping intervals to display rows."""
    rows: list[list[tuple[float, float]]] = []
    assignment = []
    for lo, hi in intervals:
        for r, row in enumerate(rows):
            if all(hi < olo or ohi < lo for olo, ohi in row):
                row.append((lo, hi))
                assignment.append(r)
                break
        else:
            rows.append([(lo, hi)])
            assignment.append(len(rows) - 1)
    return assignment


def cd_diagram_svg(ranks: RankTable, groups, cd: float | None = None) -> str:
    """Standalone SVG document for the ranking and its cliques."""
    k = ranks.k
    if k < 2:
        raise ValueError("diagram needs at least 2 columns")
    names, avgs = _ordered(ranks)
    labels = [f"{n} ({a:.4f})" for n, a in zip(names, avgs)]
    avg_of = dict(zip(names, avgs))

    n_right = (k + 1) // 2
    right = list(range(n_right))
    left = list(range(n_right, k))
    left_w = max((len(labels[i]) for i in left), default=0) * _CHAR_W
    right_w = max((len(labels[i]) for i in right), default=0) * _CHAR_W

    x0 = 20 + left_w + 10
    x1 = x0 + max(360.0, 40.0 * (k - 1))
    width = x1 + 10 + right_w + 20
    axis_y = 46.0

    def x_at(rank: float) -> float:
        return x0 + (k - rank) / (k - 1) * (x1 - x0)

    bar_groups = [g for g in groups if len(g) >= 2]
    spans = [
        (min(avg_of[n] for n in g), max(avg_of[n] for n in g)) for g in bar_groups
    ]
    bar_rows = _pack_rows(spans)
    n_bar_rows = max(bar_rows, default=-1) + 1
    label_y0 = axis_y + 14 + n_bar_rows * _BAR_H + 16
    height = label_y0 + max(len(left), len(right), 1) * _ROW_H + 16

    e: list[str] = []
    e.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}" '
        f'font-family="monospace" font-size="{_FONT}">'
    )
    e.append(f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>')
    if cd is not None:
        e.append(
            f'<text class="cd" x="{(x0 + x1) / 2:.1f}" y="16" '
            f'text-anchor="middle">cd = {cd:.4f}</text>'
        )
    e.append(
        f'<line class="axis" x1="{x0:.1f}" y1="{axis_y}" x2="{x1:.1f}" '
        f'y2="{axis_y}" stroke="black"/>'
    )
    for r in range(1, k + 1):
        xt = x_at(r)
        e.append(
            f'<line class="tick" x1="{xt:.1f}" y1="{axis_y - 4}" x2="{xt:.1f}" '
            f'y2="{axis_y}" stroke="black"/>'
        )
        e.append(
            f'<text class="tickvalue" x="{xt:.1f}" y="{axis_y - 8}" '
            f'text-anchor="middle">{r}</text>'
        )
    for (lo, hi), row in zip(spans, bar_rows):
        yb = axis_y + 14 + row * _BAR_H
        e.append(
            f'<line class="clique" x1="{x_at(hi):.1f}" y1="{yb}" '
            f'x2="{x_at(lo):.1f}" y2="{yb}" stroke="black" stroke-width="4"/>'
        )

    def emit_label(slot: int, idx: int, side: str):
        y = label_y0 + slot * _ROW_H
        xr = x_at(avgs[idx])
        if side == "right":
            xe, anchor = x1 + 10, "start"
        else:
            xe, anchor = x0 - 10, "end"
        e.append(
            f'<polyline class="lead" fill="none" stroke="black" '
            f'points="{xr:.1f},{axis_y} {xr:.1f},{y - 4:.1f} {xe:.1f},{y - 4:.1f}"/>'
        )
        e.append(
            f'<text class="label" x="{xe:.1f}" y="{y:.1f}" '
            f'text-anchor="{anchor}">{escape(labels[idx])}</text>'
        )

    for slot, idx in enumerate(right):
        emit_label(slot, idx, "right")
    for slot, idx in enumerate(reversed(left)):
        emit_label(slot, idx, "left")
    e.append("</svg>")
    return "\n".join(e)


def cd_diagram_text(ranks: RankTable, groups, cd: float | None = None) -> str:
    """Aligned plain-text rendering listing the same (label, rank) pairs."""
    if ranks.k < 2:
        raise ValueError("diagram needs at least 2 columns")
    names, avgs = _ordered(ranks)
    lines = ["ranking (lowest average rank is best)"]
    if cd is not None:
        lines.append(f"cd = {cd:.4f}")
    lines.append("")
    name_w = max(len("column"), max(len(n) for n in names))
    lines.append(f"{'column'.ljust(name_w)}  avg_rank")
    for n, a in zip(names, avgs):
        lines.append(f"{n.ljust(name_w)}  {a:8.4f}")
    lines.append("")
    lines.append("cliques (average ranks closer than cd):")
    for g in groups:
        lines.append("  { " + ", ".join(g) + " }")
    return "\n".join(lines) + "\n"


def render_cd_diagram(
    ranks: RankTable, groups, svg_path, text_path, cd: float | None = None
) -> None:
    """Write both renderings to disk."""
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(cd_diagram_svg(ranks, groups, cd))
    with open(text_path, "w", encoding="utf-8") as fh:
        fh.write(cd_diagram_text(ranks, groups, cd))
