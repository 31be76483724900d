"""Tests for native seed and mesh documents."""

import json

import pytest


def _refined(count=15, d=2):
    from src.forest import new_forest, random_refinement
    from src.seed import kuhn_cube

    forest, tria = new_forest(kuhn_cube(d))
    return forest, random_refinement(tria, count, seed=11)


def _rewrite(path, edit):
    document = json.loads(path.read_text())
    edit(document)
    path.write_text(json.dumps(document))


# ── Seeds ────────────────────────────────────────────────────────────────────


def test_colored_seed_survives_a_save(tmp_path):
    from src.io import load_seed, save_seed
    from src.seed import kuhn_cube

    seed = kuhn_cube(3)
    save_seed(seed, tmp_path / "cube.json")
    loaded = load_seed(tmp_path / "cube.json")
    assert loaded.name == "kuhn3"
    assert list(loaded.points) == list(seed.points)
    assert list(loaded.colors) == list(seed.colors)
    assert [tuple(s) for s in loaded.simplices] == [tuple(s) for s in seed.simplices]


def test_uncolored_seed_keeps_no_colors(tmp_path):
    from src.io import load_seed, save_seed
    from src.seed import square_seed

    save_seed(square_seed("anti"), tmp_path / "square.json")
    document = json.loads((tmp_path / "square.json").read_text())
    assert document["format"] == "bisectd-seed"
    assert all("color" not in v for v in document["vertices"])
    assert load_seed(tmp_path / "square.json").colors is None


def test_coordinates_are_written_as_strings(tmp_path):
    from src.io import save_seed
    from src.seed import kuhn_cube

    save_seed(kuhn_cube(2), tmp_path / "seed.json")
    document = json.loads((tmp_path / "seed.json").read_text())
    assert all(isinstance(n, str) for v in document["vertices"] for n in v["numerators"])


def test_seed_with_partial_colors_is_rejected(tmp_path):
    from src.core import MeshFormatError
    from src.io import load_seed, save_seed
    from src.seed import kuhn_cube

    path = tmp_path / "seed.json"
    save_seed(kuhn_cube(2), path)
    _rewrite(path, lambda doc: doc["vertices"][0].pop("color"))
    with pytest.raises(MeshFormatError, match="color"):
        load_seed(path)


# ── Meshes ───────────────────────────────────────────────────────────────────


def test_refined_mesh_replays_its_genealogy(tmp_path):
    from src.forest import is_conforming
    from src.io import load_mesh, save_mesh

    forest, tria = _refined()
    save_mesh(tria, tmp_path / "mesh.json")
    loaded_forest, loaded = load_mesh(tmp_path / "mesh.json")

    assert loaded.leaves() == tria.leaves()
    assert len(loaded_forest) == len(forest)
    assert len(loaded_forest.vertices) == len(forest.vertices)
    for t in tria.leaf_ids:
        assert loaded_forest.node_vertices[t] == forest.node_vertices[t]
        assert loaded_forest.node_generation[t] == forest.node_generation[t]
        assert loaded_forest.bse[t] == forest.bse[t]
    assert is_conforming(loaded)[0]


def test_forest_is_saved_as_its_roots(tmp_path):
    from src.io import load_mesh, save_mesh
    from src.seed import kuhn_cube
    from src.forest import new_forest

    forest, _ = new_forest(kuhn_cube(3))
    save_mesh(forest, tmp_path / "roots.json", include_forest=False)
    loaded_forest, loaded = load_mesh(tmp_path / "roots.json")
    assert len(loaded) == 6
    assert list(loaded_forest.colors) == list(forest.colors)


def test_refined_mesh_needs_the_forest_section():
    from src.io import mesh_document

    _, tria = _refined(3)
    with pytest.raises(ValueError):
        mesh_document(tria, include_forest=False)


@pytest.mark.parametrize(
    "edit, message",
    [
        (lambda doc: doc.update(version=99), "version"),
        (lambda doc: doc.update(format="something-else"), "not a bisectd-mesh"),
        (lambda doc: doc["vertices"][0].update(numerators=["0.5", "0"]), "non-integer"),
        (lambda doc: doc["forest"].update(bisected=[10**6]), "does not exist"),
        (lambda doc: doc["vertices"][-1].update(generation=99), "replayed"),
        (lambda doc: doc["simplices"].reverse(), "do not match"),
        (lambda doc: doc.update(leaves=[-1]), "nodes of the forest"),
        (lambda doc: doc.update(seed_vertices=0), "seed_vertices"),
    ],
)
def test_corrupted_mesh_documents_are_rejected(tmp_path, edit, message):
    from src.core import MeshFormatError
    from src.io import load_mesh, save_mesh

    _, tria = _refined(5)
    path = tmp_path / "mesh.json"
    save_mesh(tria, path)
    _rewrite(path, edit)
    with pytest.raises(MeshFormatError, match=message):
        load_mesh(path)


def test_invalid_json_is_a_format_error(tmp_path):
    from src.core import MeshFormatError
    from src.io import load_mesh

    path = tmp_path / "broken.json"
    path.write_text('{"format": "bisectd-mesh", ')
    with pytest.raises(MeshFormatError, match="not valid JSON"):
        load_mesh(path)


def test_json_indent_comes_from_config(tmp_path):
    from unittest.mock import patch

    from src.io import save_seed
    from src.seed import kuhn_cube
    from src.utils.config import Config

    with patch.object(Config, "get_io_config", return_value={"json_indent": None}):
        save_seed(kuhn_cube(2), tmp_path / "compact.json")
    assert (tmp_path / "compact.json").read_text().count("\n") == 1
