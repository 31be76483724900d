"""Native mesh documents, VTK export and report files."""

from .native import FORMAT_VERSION, load_mesh, load_seed, mesh_document, save_mesh, save_seed
from .reports import write_histogram_csv, write_report_csv, write_report_json
from .vtk import export_vtk, to_meshio

__all__ = [
    "FORMAT_VERSION",
    "load_mesh",
    "load_seed",
    "mesh_document",
    "save_mesh",
    "save_seed",
    "write_histogram_csv",
    "write_report_csv",
    "write_report_json",
    "export_vtk",
    "to_meshio",
]
