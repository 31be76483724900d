"""
Native JSON documents for seeds, forests and triangulations.

Every coordinate numerator is a decimal string so no reader ever sees a
float. A mesh document lists all vertices of the forest, the roots, the
bisected nodes in the order they were bisected and the leaves of the
triangulation; loading replays the bisections and checks that the replay
reproduces every stored vertex and node id.

Mesh document::

    {
      "format": "bisectd-mesh", "version": 1, "dimension": 2,
      "seed_vertices": 4,
      "vertices": [{"numerators": ["0", "1"], "exponent": 0, "generation": -1, "color": 1}, ...],
      "roots": [[2, 1, 0], ...],
      "forest": {"bisected": [0, 1, 2]},
      "leaves": [5, 6, ...],
      "simplices": [[7, 2, 1], ...]
    }
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..core.dyadic import DyadicPoint
from ..core.exceptions import BisectionError, MeshFormatError
from ..core.vertices import VertexTable
from ..forest.forest import Forest
from ..forest.triangulation import Triangulation
from ..seed.seed import SeedTriangulation
from ..utils import get_config, get_logger

logger = get_logger(__name__)

FORMAT_VERSION = 1
MESH_FORMAT = "bisectd-mesh"
SEED_FORMAT = "bisectd-seed"

_INTEGER = re.compile(r"^-?[0-9]+$")


# ── Encoding ─────────────────────────────────────────────────────────────────


def _encode_point(point: DyadicPoint) -> Dict[str, Any]:
    return {"numerators": [str(n) for n in point.numerators], "exponent": point.exponent}


def _dump(document: Dict, path: Path) -> None:
    indent = get_config().get_io_config().get("json_indent", 2)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(document, f, indent=indent)
        f.write("\n")


def mesh_document(source: Union[Triangulation, Forest], include_forest: bool = True) -> Dict:
    """Build the mesh document of a triangulation (or of the root triangulation of a forest)."""
    if isinstance(source, Forest):
        tria = Triangulation(source, source.roots)
    else:
        tria = source
    forest = tria.forest
    colors = forest.colors
    n_seed = len(colors) if colors is not None else 1 + max(v for r in forest.roots for v in forest.node_vertices[r])

    bisected = sorted((nid for nid in range(len(forest)) if forest.child1[nid] >= 0), key=lambda n: forest.child1[n])
    if not include_forest and any(forest.node_generation[t] > 0 for t in tria.leaf_ids):
        raise ValueError("A refined triangulation needs the forest section")

    vertices = []
    for vid in range(len(forest.vertices)):
        entry = _encode_point(forest.vertices.point(vid))
        entry["generation"] = forest.vertices.generation(vid)
        if colors is not None and vid < n_seed:
            entry["color"] = colors[vid]
        vertices.append(entry)

    document: Dict[str, Any] = {
        "format": MESH_FORMAT,
        "version": FORMAT_VERSION,
        "dimension": forest.d,
        "seed_vertices": n_seed,
        "vertices": vertices,
        "roots": [list(forest.node_vertices[r]) for r in forest.roots],
    }
    if include_forest:
        document["forest"] = {"bisected": bisected}
    document["leaves"] = tria.leaves()
    document["simplices"] = [list(forest.node_vertices[t]) for t in tria.leaf_ids]
    return document


def save_mesh(source: Union[Triangulation, Forest], path: Path, include_forest: bool = True) -> None:
    """
    Write a triangulation with its genealogy.

    Args:
        source: Triangulation, or a Forest (its roots are written)
        path: Output path
        include_forest: Write the bisection history (required for refined meshes)
    """
    document = mesh_document(source, include_forest=include_forest)
    _dump(document, path)
    logger.info(f"Saved mesh with {len(document['leaves'])} leaves to {path}")


def save_seed(seed: SeedTriangulation, path: Path) -> None:
    """Write a (possibly uncolored) seed triangulation."""
    vertices = []
    for i, point in enumerate(seed.points):
        entry = _encode_point(point)
        if seed.colors is not None:
            entry["color"] = seed.colors[i]
        vertices.append(entry)
    document = {
        "format": SEED_FORMAT,
        "version": FORMAT_VERSION,
        "dimension": seed.dim,
        "name": seed.name,
        "vertices": vertices,
        "simplices": [list(s) for s in seed.simplices],
    }
    _dump(document, path)
    logger.info(f"Saved seed '{seed.name}' with {len(seed.simplices)} simplices to {path}")


# ── Decoding ─────────────────────────────────────────────────────────────────


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MeshFormatError(f"{what} must be an integer, got {value!r}")
    return value


def _int_list(value: Any, what: str) -> List[int]:
    if not isinstance(value, list):
        raise MeshFormatError(f"{what} must be a list, got {type(value).__name__}")
    return [_int(x, what) for x in value]


def _decode_point(entry: Any, dim: int, index: int) -> DyadicPoint:
    if not isinstance(entry, dict):
        raise MeshFormatError(f"Vertex {index} must be an object")
    numerators = entry.get("numerators")
    if not isinstance(numerators, list) or len(numerators) != dim:
        raise MeshFormatError(f"Vertex {index} needs {dim} numerators")
    values = []
    for n in numerators:
        if not isinstance(n, str) or not _INTEGER.match(n):
            raise MeshFormatError(f"Vertex {index} has a non-integer numerator {n!r}")
        values.append(int(n))
    exponent = _int(entry.get("exponent"), f"Exponent of vertex {index}")
    if exponent < 0:
        raise MeshFormatError(f"Vertex {index} has a negative exponent")
    return DyadicPoint(tuple(values), exponent)


def _read(path: Path, expected: str) -> Dict:
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise MeshFormatError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise MeshFormatError(f"{path} does not hold a JSON object")
    if document.get("format") != expected:
        raise MeshFormatError(f"{path} is not a {expected} document (format={document.get('format')!r})")
    if document.get("version") != FORMAT_VERSION:
        raise MeshFormatError(f"{path} has version {document.get('version')!r}, expected {FORMAT_VERSION}")
    dim = _int(document.get("dimension"), "dimension")
    if dim < 2:
        raise MeshFormatError(f"dimension must be at least 2, got {dim}")
    return document


def _decode_simplices(raw: Any, dim: int, n_vertices: int, what: str) -> List[Tuple[int, ...]]:
    if not isinstance(raw, list):
        raise MeshFormatError(f"{what} must be a list")
    simplices = []
    for i, ids in enumerate(raw):
        ids = _int_list(ids, f"{what}[{i}]")
        if len(ids) != dim + 1 or any(not 0 <= v < n_vertices for v in ids):
            raise MeshFormatError(f"{what}[{i}] = {ids} is not a simplex of the vertex list")
        simplices.append(tuple(ids))
    return simplices


def load_seed(path: Path) -> SeedTriangulation:
    """
    Read a seed document.

    Raises:
        MeshFormatError: On version mismatch or malformed content
    """
    document = _read(Path(path), SEED_FORMAT)
    dim = document["dimension"]
    raw = document.get("vertices")
    if not isinstance(raw, list) or not raw:
        raise MeshFormatError("Seed document has no vertices")
    points = [_decode_point(entry, dim, i) for i, entry in enumerate(raw)]
    colored = ["color" in entry for entry in raw]
    if any(colored) and not all(colored):
        raise MeshFormatError("Either all seed vertices carry a color or none")
    colors = [_int(entry["color"], f"Color of vertex {i}") for i, entry in enumerate(raw)] if all(colored) else None
    simplices = _decode_simplices(document.get("simplices"), dim, len(points), "simplices")
    name = document.get("name", Path(path).stem)
    logger.info(f"Loaded seed '{name}' with {len(simplices)} simplices from {path}")
    return SeedTriangulation(points, simplices, colors, name=str(name))


def load_mesh(path: Path) -> Tuple[Forest, Triangulation]:
    """
    Read a mesh document and rebuild its forest.

    Returns:
        (forest, triangulation)

    Raises:
        MeshFormatError: On version mismatch, malformed content, or a
            bisection history that does not reproduce the stored vertices
    """
    path = Path(path)
    document = _read(path, MESH_FORMAT)
    dim = document["dimension"]
    raw = document.get("vertices")
    if not isinstance(raw, list) or not raw:
        raise MeshFormatError("Mesh document has no vertices")
    n_seed = _int(document.get("seed_vertices"), "seed_vertices")
    if not 0 < n_seed <= len(raw):
        raise MeshFormatError(f"seed_vertices={n_seed} does not fit {len(raw)} vertices")

    points = [_decode_point(entry, dim, i) for i, entry in enumerate(raw)]
    generations = [_int(entry.get("generation"), f"Generation of vertex {i}") for i, entry in enumerate(raw)]
    colors: Optional[List[int]] = None
    if all("color" in raw[i] for i in range(n_seed)):
        colors = [_int(raw[i]["color"], f"Color of vertex {i}") for i in range(n_seed)]

    table = VertexTable(dim)
    for i in range(n_seed):
        table.add(points[i], generations[i])
    roots = _decode_simplices(document.get("roots"), dim, n_seed, "roots")
    try:
        forest = Forest(table, roots, colors=colors)
        for nid in _int_list(document.get("forest", {}).get("bisected", []), "forest.bisected"):
            if not 0 <= nid < len(forest):
                raise MeshFormatError(f"Bisected node {nid} does not exist at that point of the history")
            forest.bisect(nid)
    except MeshFormatError:
        raise
    except BisectionError as e:
        raise MeshFormatError(f"Mesh document has an inconsistent genealogy: {e}") from e

    if len(table) != len(points):
        raise MeshFormatError(f"Replay produced {len(table)} vertices, document lists {len(points)}")
    for vid, (point, gen) in enumerate(zip(points, generations)):
        if table.point(vid) != point or table.generation(vid) != gen:
            raise MeshFormatError(f"Vertex {vid} differs from the replayed bisection history")

    leaves = _int_list(document.get("leaves"), "leaves")
    if any(not 0 <= t < len(forest) for t in leaves):
        raise MeshFormatError("leaves must be nodes of the forest")
    tria = Triangulation(forest, leaves)
    simplices = document.get("simplices")
    if simplices is not None:
        stored = _decode_simplices(simplices, dim, len(points), "simplices")
        if [tuple(forest.node_vertices[t]) for t in tria.leaf_ids] != stored:
            raise MeshFormatError("simplices do not match the leaves of the forest")
    logger.info(f"Loaded mesh with {len(tria)} leaves and {len(forest)} forest nodes from {path}")
    return forest, tria
