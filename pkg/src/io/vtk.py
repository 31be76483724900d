"""Legacy VTK export through meshio (coordinates are rounded to floats)."""

from pathlib import Path
from typing import Dict, Optional

import meshio
import numpy as np

from ..core.arith import level_of, type_of
from ..forest.triangulation import Triangulation
from ..utils import get_config, get_logger

logger = get_logger(__name__)

CELL_TYPES = {2: "triangle", 3: "tetra"}
OUTSIDE_LAYER = -1


def _compact(tria: Triangulation):
    """Used vertex ids renumbered 0..n-1, in increasing id order."""
    used = np.unique(np.array([tria.forest.node_vertices[t] for t in tria.leaf_ids], dtype=np.int64))
    index = {int(v): i for i, v in enumerate(used)}
    return used, index


def to_meshio(tria: Triangulation, report=None, layers: Optional[Dict[int, int]] = None) -> meshio.Mesh:
    """
    Convert a triangulation to a meshio mesh with per-cell data.

    Cell data: generation, level, type; h_exponent when a GradingReport is
    given; layer when a leaf -> layer map is given (-1 for leaves outside
    the map). In dimension >= 4 only the vertices are written, projected to
    their first three coordinates.
    """
    forest = tria.forest
    d = tria.d
    used, index = _compact(tria)
    points = np.array([forest.vertices.point(int(v)).to_floats() for v in used])

    if d in CELL_TYPES:
        cells = np.array([[index[v] for v in forest.node_vertices[t]] for t in tria.leaf_ids], dtype=np.int64)
        gens = tria.generations()
        cell_data = {
            "generation": [gens],
            "level": [np.array([level_of(int(g), d) for g in gens], dtype=np.int64)],
            "type": [np.array([type_of(int(g), d) for g in gens], dtype=np.int64)],
        }
        if report is not None:
            if list(report.leaf_ids) != tria.leaves():
                raise ValueError("Grading report belongs to a different triangulation")
            cell_data["h_exponent"] = [np.asarray(report.h_exponent, dtype=np.int64)]
        if layers is not None:
            cell_data["layer"] = [np.array([layers.get(int(t), OUTSIDE_LAYER) for t in tria.leaf_ids], dtype=np.int64)]
        return meshio.Mesh(points, [(CELL_TYPES[d], cells)], cell_data=cell_data)

    logger.warning(f"VTK has no {d}-simplex cell; exporting {len(used)} vertices only")
    gens = np.array([forest.vertices.generation(int(v)) for v in used], dtype=np.int64)
    cells = np.arange(len(used), dtype=np.int64).reshape(-1, 1)
    return meshio.Mesh(points[:, :3], [("vertex", cells)], cell_data={"generation": [gens]})


def export_vtk(tria: Triangulation, path: Path, report=None, layers: Optional[Dict[int, int]] = None) -> None:
    """
    Write a legacy ASCII VTK unstructured grid.

    Args:
        tria: Triangulation to export
        path: Output file
        report: Optional GradingReport for the h_exponent array
        layers: Optional leaf -> layer map (e.g. ``aux.layer``)
    """
    mesh = to_meshio(tria, report=report, layers=layers)
    version = str(get_config().get("io", "vtk_format_version", default="4.2"))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meshio.write(str(path), mesh, file_format="vtk", binary=False, fmt_version=version)
    logger.info(f"Exported {len(tria)} cells to {path}")
