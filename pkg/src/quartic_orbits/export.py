"""Writers for sampled geometry: CSV, OBJ, JSON, and rendered PNG views.

Text outputs are byte-deterministic for a fixed configuration: floats are
written with ``repr`` and row order follows the sampling order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .charts import GeometrySet
from .scalars import format_scalar, is_exact


def _coord_text(x) -> str:
    return repr(float(x))


def write_csv(gs: GeometrySet, path) -> Path:
    """Points as x,y,z rows (plus an audit column when present)."""
    path = Path(path)
    lines = []
    header = "x,y,z,audit" if gs.audits else "x,y,z"
    lines.append(header)
    for k, p in enumerate(gs.points):
        row = ",".join(_coord_text(c) for c in p)
        if gs.audits:
            row += f",{gs.audits[k]}"
        lines.append(row)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_obj(gs: GeometrySet, path) -> Path:
    """Wavefront OBJ: v records plus l (polyline) or f (triangle) records."""
    path = Path(path)
    lines = [f"# {gs.kind}"]
    for p in gs.points:
        x, y, z = (float(c) for c in p)
        lines.append(f"v {x!r} {y!r} {z!r}")
    for simplex in gs.connectivity:
        tag = "l" if len(simplex) == 2 else "f"
        lines.append(tag + "".join(f" {i + 1}" for i in simplex))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _jsonable(value):
    if is_exact(value):
        return format_scalar(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def write_json(gs: GeometrySet, path) -> Path:
    path = Path(path)
    doc = {
        "kind": gs.kind,
        "points": [[_coord_text(c) for c in p] for p in gs.points],
        "connectivity": [list(s) for s in gs.connectivity],
        "metadata": _jsonable(gs.metadata),
        "audits": list(gs.audits),
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_geometry(gs: GeometrySet, path, fmt: str) -> Path:
    writer = {"csv": write_csv, "obj": write_obj, "json": write_json}.get(fmt)
    if writer is None:
        raise ValueError(f"unknown geometry format {fmt!r}")
    return writer(gs, path)


_STYLE = {
    "curve": {"color": "red", "lw": 2.0, "zorder": 5},
    "surface": {"color": "green", "alpha": 0.55},
    "cloud": {"color": "tab:blue", "s": 4},
}


def render_views(
    sets,
    path,
    views=((22, -62), (8, 148)),
    title: str | None = None,
) -> Path:
    """Render the geometry sets into side-by-side 3D views and save a PNG.

    The curve is drawn red on top of the green surface, matching the
    convention used throughout the exports.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    path = Path(path)
    fig = plt.figure(figsize=(5.0 * len(views), 4.6))
    for k, (elev, azim) in enumerate(views, start=1):
        ax = fig.add_subplot(1, len(views), k, projection="3d")
        for gs in sets:
            pts = np.array([[float(c) for c in p] for p in gs.points])
            if pts.size == 0:
                continue
            style = _STYLE.get(gs.kind, _STYLE["cloud"])
            if gs.kind == "curve":
                ax.plot(pts[:, 0], pts[:, 1], pts[:, 2], **style)
            elif gs.kind == "surface" and gs.connectivity:
                tri = np.array(gs.connectivity)
                ax.plot_trisurf(
                    pts[:, 0], pts[:, 1], pts[:, 2],
                    triangles=tri, linewidth=0.0, antialiased=False, **style,
                )
            else:
                ax.scatter(pts[:, 0], pts[:, 1], pts[:, 2], **style)
        ax.view_init(elev=elev, azim=azim)
        ax.set_xlabel("b3")
        ax.set_ylabel("b2")
        ax.set_zlabel("b1")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
