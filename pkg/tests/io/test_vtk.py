"""Tests for VTK export through meshio."""

from unittest.mock import patch

import numpy as np
import pytest


def _closed(d=2):
    from src.forest import bisect_with_closure, new_forest
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(d))
    return bisect_with_closure(tria, 0)


def test_triangles_carry_generation_level_and_type():
    from src.io import to_meshio

    tria = _closed()
    mesh = to_meshio(tria)
    assert mesh.points.shape == (5, 2)
    assert mesh.cells[0].type == "triangle"
    assert mesh.cells[0].data.shape == (4, 3)
    assert list(mesh.cell_data["generation"][0]) == [1, 1, 1, 1]
    assert list(mesh.cell_data["level"][0]) == [1, 1, 1, 1]
    assert list(mesh.cell_data["type"][0]) == [1, 1, 1, 1]


def test_tetrahedra_export():
    from src.forest import new_forest
    from src.io import to_meshio
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(3))
    mesh = to_meshio(tria)
    assert mesh.cells[0].type == "tetra"
    assert mesh.cells[0].data.shape == (6, 4)
    assert mesh.points.shape == (8, 3)


def test_high_dimensions_export_vertices_only():
    from src.forest import new_forest
    from src.io import to_meshio
    from src.seed import kuhn_cube

    _, tria = new_forest(kuhn_cube(4))
    mesh = to_meshio(tria)
    assert mesh.cells[0].type == "vertex"
    assert mesh.points.shape == (16, 3)


def test_grading_and_layer_arrays():
    from src.analysis import regularized_mesh_size
    from src.io import to_meshio

    tria = _closed()
    report = regularized_mesh_size(tria, with_jumps=False)
    leaves = tria.leaves()
    mesh = to_meshio(tria, report=report, layers={leaves[0]: 2})
    assert list(mesh.cell_data["h_exponent"][0]) == list(report.h_exponent)
    assert list(mesh.cell_data["layer"][0]) == [2, -1, -1, -1]


def test_report_of_another_mesh_is_rejected():
    from src.analysis import regularized_mesh_size
    from src.forest import new_forest
    from src.io import to_meshio
    from src.seed import kuhn_cube

    _, roots = new_forest(kuhn_cube(2))
    report = regularized_mesh_size(roots, with_jumps=False)
    with pytest.raises(ValueError):
        to_meshio(_closed(), report=report)


def test_export_writes_a_legacy_file(tmp_path):
    import meshio

    from src.io import export_vtk

    tria = _closed()
    path = tmp_path / "out" / "mesh.vtk"
    export_vtk(tria, path)
    assert path.read_text().startswith("# vtk DataFile Version")
    mesh = meshio.read(str(path))
    assert sum(len(block.data) for block in mesh.cells) == 4
    assert np.allclose(mesh.points[:, :2].max(axis=0), [1.0, 1.0])


def test_export_uses_the_configured_version(tmp_path):
    from src.io import export_vtk

    with patch("src.io.vtk.meshio.write") as write:
        export_vtk(_closed(), tmp_path / "mesh.vtk")
    kwargs = write.call_args.kwargs
    assert kwargs["file_format"] == "vtk"
    assert kwargs["binary"] is False
    assert kwargs["fmt_version"] == "4.2"
