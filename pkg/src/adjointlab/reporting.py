"""Deterministic artifact emission: CSV, JSON, and minimal SVG scatter plots.

Byte-identical reruns are a hard requirement, so everything routes through
pinned float formatting (17 significant digits), sorted JSON keys, and
timestamp-free output.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1


def fmt(value) -> str:
    """Pinned scalar formatting: floats at 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def jsonable(obj):
    """Recursively convert to plain JSON types; floats round-trip exactly."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.17g}")
    if isinstance(obj, complex):
        return {"re": jsonable(obj.real), "im": jsonable(obj.imag)}
    return obj


def write_json(path, payload: dict, *, subcommand: str, seed: int) -> None:
    body = {"schema": SCHEMA_VERSION, "subcommand": subcommand, "seed": int(seed)}
    body.update(payload)
    text = json.dumps(jsonable(body), sort_keys=True, indent=2) + "\n"
    Path(path).write_text(text)


def write_csv(path, columns, rows, *, subcommand: str, seed: int, **tags) -> None:
    """CSV with a leading comment carrying schema, subcommand, seed, and tags."""
    parts = [f"schema={SCHEMA_VERSION}", f"subcommand={subcommand}", f"seed={int(seed)}"]
    parts += [f"{k}={v}" for k, v in sorted(tags.items())]
    lines = ["# " + " ".join(parts), ",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def svg_scatter(
    path,
    points,
    circles,
    *,
    size: int = 640,
    view: float = 1.15,
    point_radius: float = 2.0,
) -> None:
    """Scatter of complex points with overlaid circles, centered on the origin.

    points: iterable of (complex z, css color); circles: (center, radius,
    css color) with complex center. Coordinates land in a [-view, view] box.
    """
    half = size / 2.0
    scale = half / view

    def sx(x: float) -> str:
        return f"{half + scale * x:.6g}"

    def sy(y: float) -> str:
        return f"{half - scale * y:.6g}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{sy(0)}" x2="{size}" y2="{sy(0)}" stroke="#ccc"/>',
        f'<line x1="{sx(0)}" y1="0" x2="{sx(0)}" y2="{size}" stroke="#ccc"/>',
    ]
    for center, radius, color in circles:
        c = complex(center)
        parts.append(
            f'<circle cx="{sx(c.real)}" cy="{sy(c.imag)}" r="{scale * radius:.6g}" '
            f'fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
    for z, color in points:
        z = complex(z)
        parts.append(
            f'<circle cx="{sx(z.real)}" cy="{sy(z.imag)}" r="{point_radius}" '
            f'fill="{color}" fill-opacity="0.6"/>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
