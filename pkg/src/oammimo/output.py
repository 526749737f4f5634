"""Result tables, their CSV encoding, and static SVG line plots."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


@dataclass
class ResultTable:
    name: str
    columns: list
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.data = np.atleast_2d(np.asarray(self.data, dtype=float))
        if len(self.columns) < 2:
            raise ValueError("a result table needs at least two columns")
        if self.data.shape[1] != len(self.columns):
            raise ValueError(
                f"{len(self.columns)} column names for {self.data.shape[1]} data columns"
            )

    def column(self, name) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def _fmt(v: float) -> str:
    return format(float(v), ".12g")


def table_to_csv(table: ResultTable) -> str:
    lines = [f"# name: {table.name}"]
    for key, value in table.metadata.items():
        lines.append(f"# {key}: {value}")
    lines.append(",".join(table.columns))
    for row in table.data:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def read_csv(path) -> ResultTable:
    metadata = {}
    name = None
    rows = []
    columns = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                if key == "name":
                    name = value
                else:
                    metadata[key] = value
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append([float(v) for v in line.split(",")])
    return ResultTable(name, columns, np.array(rows, dtype=float), metadata)


def table_to_svg(table: ResultTable, width=640, height=420) -> str:
    """One ``<polyline>`` per data column against the first column."""
    left, right, top, bottom = 70, 180, 30, 50
    x = table.data[:, 0]
    ys = table.data[:, 1:]
    finite = ys[np.isfinite(ys)]
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pw, ph = width - left - right, height - top - bottom

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + (1.0 - (v - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{escape(table.name)}</title>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
        f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="12">{escape(table.columns[0])}</text>',
        f'<text x="{left - 6}" y="{top + ph:.1f}" text-anchor="end" font-size="10">{y0:.4g}</text>',
        f'<text x="{left - 6}" y="{top + 10}" text-anchor="end" font-size="10">{y1:.4g}</text>',
        f'<text x="{left}" y="{top + ph + 16:.1f}" text-anchor="middle" font-size="10">{x0:.4g}</text>',
        f'<text x="{left + pw}" y="{top + ph + 16:.1f}" text-anchor="middle" font-size="10">{x1:.4g}</text>',
    ]
    for k, name in enumerate(table.columns[1:]):
        color = PALETTE[k % len(PALETTE)]
        col = ys[:, k]
        ok = np.isfinite(col)
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x[ok], col[ok]))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = top + 14 + 16 * k
        out.append(f'<line x1="{left + pw + 10}" y1="{ly - 4}" x2="{left + pw + 30}" '
                   f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 34}" y="{ly}" font-size="10">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_outputs(table: ResultTable, out_dir, svg: bool = False) -> list:
    """Write ``<name>.csv`` (and ``<name>.svg``) into ``out_dir``; return the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    csv_path = os.path.join(out_dir, f"{table.name}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(table_to_csv(table))
    paths.append(csv_path)
    if svg:
        svg_path = os.path.join(out_dir, f"{table.name}.svg")
        with open(svg_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(table_to_svg(table))
        paths.append(svg_path)
    return paths
