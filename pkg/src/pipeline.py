"""Batch orchestrator: seeds, refinement runs, analysis and verification suites."""

import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .analysis import (
    SeedConstants,
    brute_force_mesh_size,
    c_of_seed,
    edge_chain_estimate,
    gensharp_gap_stats,
    level_jump_stats,
    mesh_size_exponents,
    regularized_mesh_size,
    scan_lemmas,
    verify_level_estimate,
)
from .analysis.estimates import GENERATION, LEVEL
from .analysis.meshsize import GradingReport
from .auxtria import (
    AuxTriangulation,
    build_aux,
    check_bisection_edge_layers,
    check_finer_triangulation,
    check_leaving_neighborhood,
    check_staying_in_neighborhood,
    decompose_layers,
    minimal_patch_level,
    pick_interior_vertex,
    sharp_chain,
    type_one_diagonal_chains,
)
from .core.exceptions import InvariantViolation, MeshFormatError, SeedError
from .forest import (
    Forest,
    Triangulation,
    is_conforming,
    random_refinement,
    refine_marked,
    refine_to_size,
    uniform_refine,
)
from .io import export_vtk, load_mesh, load_seed, save_mesh, write_histogram_csv, write_report_csv, write_report_json
from .seed import SeedTriangulation, kuhn_cube, onboard_matching_neighbor, single_kuhn_simplex, square_seed
from .utils import get_config, get_logger

logger = get_logger(__name__)

SEED_KINDS = ("kuhn", "simplex", "square")
SUITES = ("lemmas", "grading", "jumps", "aux")
FORMATS = ("json", "csv", "vtk")


@dataclass
class RunConfig:
    """
    One batch run.

    ``source`` is either a builtin seed (``kuhn:3``, ``simplex:2``,
    ``square:main``) or a path to a seed or mesh document. At most one
    refinement script (uniform, random, size, marks) is given.
    """

    source: str
    uniform: int = 0
    random: int = 0
    size: int = 0
    rng: int = 0
    marks: Optional[Path] = None
    budget: Optional[int] = None
    onboard: bool = False
    out: Optional[Path] = None
    formats: Tuple[str, ...] = ("json",)
    suite: Optional[str] = None
    vertex: Optional[int] = None
    m: Optional[int] = None
    depth: Optional[int] = None

    def __post_init__(self):
        scripts = sum(1 for s in (self.uniform, self.random, self.size, self.marks) if s)
        if scripts > 1:
            raise ValueError("Give at most one refinement script (uniform, random, size or marks)")
        if min(self.uniform, self.random, self.size) < 0:
            raise ValueError("Refinement counts must be non-negative")
        for fmt in self.formats:
            if fmt not in FORMATS:
                raise ValueError(f"Unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
        if self.suite is not None and self.suite not in SUITES:
            raise ValueError(f"Unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")


@dataclass
class SuiteResult:
    """Outcome of one verification suite; ``checks`` maps check names to their reports."""

    suite: str
    ok: bool = True
    checks: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, details: Dict[str, Any]) -> None:
        self.checks[name] = details
        if not ok:
            self.ok = False
            self.failures.append(name)

    def to_dict(self) -> Dict:
        return {"suite": self.suite, "ok": self.ok, "failures": self.failures, "checks": self.checks}


def builtin_seed(kind: str, dim: int = 2, diagonal: str = "main") -> SeedTriangulation:
    """Seed by name: ``kuhn`` (cube), ``simplex`` (one Kuhn simplex) or ``square`` (uncolored)."""
    if kind == "kuhn":
        return kuhn_cube(dim)
    if kind == "simplex":
        return single_kuhn_simplex(dim)
    if kind == "square":
        return square_seed(diagonal)
    raise ValueError(f"Unknown seed kind {kind!r}; choose from {', '.join(SEED_KINDS)}")


def _document_format(path: Path) -> Optional[str]:
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise MeshFormatError(f"{path} is not valid JSON: {e}") from e
    return data.get("format") if isinstance(data, dict) else None


class BisectionPipeline:
    """Runs seed -> refine -> analyze/verify -> export on one forest."""

    def __init__(
        self,
        config_path: Optional[Path] = None,
        progress_callback: Optional[Callable[[str, int, str], None]] = None,
    ):
        """
        Initialize the pipeline.

        Args:
            config_path: Path to configuration file
            progress_callback: Optional callback(step_name, percent, message)
        """
        if config_path:
            from .utils.config import reload_config

            reload_config(str(config_path))

        self.config = get_config()

        self._lock = threading.Lock()
        self._progress_callback = progress_callback
        self.current_step: str = "idle"
        self.current_percent: int = 0
        self.log_buffer: List[Dict] = []
        self._constants: Dict[int, SeedConstants] = {}

        self.workers = self.config.num_workers()
        analysis_config = self.config.get_analysis_config()
        self.brute_force_limit = int(analysis_config.get("brute_force_limit", 2000))
        self.macro_histogram = bool(analysis_config.get("macro_histogram", True))
        self.default_depth = int(self.config.get_aux_config().get("default_depth", 12))

        logger.info("BisectionPipeline initialized")

    def _update_progress(self, step: str, percent: int, message: str):
        """Update progress state and invoke callback (thread-safe)."""
        with self._lock:
            self.current_step = step
            self.current_percent = percent
            self.log_buffer.append({"step": step, "percent": percent, "message": message})
        if self._progress_callback:
            self._progress_callback(step, percent, message)

    def get_progress(self) -> Dict:
        """Get current progress state (thread-safe)."""
        with self._lock:
            return {"step": self.current_step, "percent": self.current_percent, "logs": list(self.log_buffer)}

    # ── Loading ──────────────────────────────────────────────────────────────

    def load(self, source: str, onboard: bool = False) -> Tuple[Forest, Triangulation]:
        """
        Resolve a source to a forest and a triangulation.

        Raises:
            SeedError: For an uncolored seed without ``onboard``
            MeshFormatError: For unreadable documents
        """
        if ":" in source and not Path(source).exists():
            kind, _, arg = source.partition(":")
            if kind == "square":
                seed = builtin_seed(kind, diagonal=arg or "main")
            else:
                try:
                    dim = int(arg)
                except ValueError:
                    raise ValueError(f"Builtin seed {source!r} needs an integer dimension")
                seed = builtin_seed(kind, dim)
            return self._forest_from_seed(seed, onboard)

        path = Path(source)
        if not path.exists():
            raise FileNotFoundError(f"Input not found: {path}")
        fmt = _document_format(path)
        if fmt == "bisectd-seed":
            return self._forest_from_seed(load_seed(path), onboard)
        if fmt == "bisectd-mesh":
            return load_mesh(path)
        raise MeshFormatError(f"{path} is neither a seed nor a mesh document")

    def _forest_from_seed(self, seed: SeedTriangulation, onboard: bool) -> Tuple[Forest, Triangulation]:
        if onboard:
            self._update_progress("onboard", 0, f"Onboarding seed '{seed.name}'")
            seed = onboard_matching_neighbor(seed)
        elif not seed.is_colored:
            raise SeedError(f"Seed '{seed.name}' is not colored; pass --onboard")
        forest = Forest.from_seed(seed)
        return forest, Triangulation(forest, forest.roots)

    def constants(self, forest: Forest) -> SeedConstants:
        """Seed constants, computed once per forest."""
        key = id(forest)
        if key not in self._constants:
            self._constants[key] = c_of_seed(forest)
        return self._constants[key]

    # ── Refinement ───────────────────────────────────────────────────────────

    def refine(self, tria: Triangulation, run: RunConfig) -> Tuple[Triangulation, Dict[str, Any]]:
        """
        Apply the run's refinement script.

        Returns:
            (refined triangulation, stats with leaves, max generation, max level, wall time)
        """
        self._update_progress("refine", 0, "Refining")
        start = time.perf_counter()
        if run.uniform:
            tria = uniform_refine(tria, run.uniform)
        elif run.random:
            tria = random_refinement(tria, run.random, seed=run.rng, budget=run.budget)
        elif run.size:
            rng = np.random.Generator(np.random.PCG64(run.rng))
            tria = refine_to_size(tria, run.size, rng, budget=run.budget)
        elif run.marks:
            marks = [int(tok) for tok in Path(run.marks).read_text().split()]
            tria = refine_marked(tria, marks, budget=run.budget)
        elapsed = time.perf_counter() - start
        gens = tria.generations()
        stats = {
            "leaves": len(tria),
            "max_generation": int(gens.max()),
            "max_level": int(tria.levels().max()),
            "wall_time": round(elapsed, 3),
        }
        self._update_progress("refine", 100, f"{stats['leaves']} leaves")
        logger.info(
            f"Refined to {stats['leaves']} leaves (max gen {stats['max_generation']}, "
            f"max level {stats['max_level']}) in {elapsed:.2f}s"
        )
        return tria, stats

    # ── Analysis ─────────────────────────────────────────────────────────────

    def analyze(self, tria: Triangulation, aux: Optional[AuxTriangulation] = None) -> GradingReport:
        """Grading report of a triangulation, or of the refined patch of ``aux``."""
        target = aux.patch_triangulation() if aux is not None else tria
        constants = self.constants(tria.forest)
        self._update_progress("analyze", 0, f"Mesh size function on {len(target)} leaves")
        report = regularized_mesh_size(
            target, gamma_constant=constants.Gamma, with_jumps=self.macro_histogram, constants=constants
        )
        self._update_progress("analyze", 100, f"gamma={report.gamma:g}")
        return report

    def build_aux(
        self, tria: Triangulation, vertex: Optional[int] = None, m: Optional[int] = None, depth: Optional[int] = None
    ) -> AuxTriangulation:
        forest = tria.forest
        if vertex is None:
            vertex = pick_interior_vertex(tria)
        if m is None:
            m = minimal_patch_level(forest, vertex)
        if depth is None:
            depth = self.default_depth
        self._update_progress("aux", 0, f"Auxiliary triangulation at v={vertex}, m={m}, j={depth}")
        return build_aux(forest, vertex, m, depth)

    def write_outputs(
        self,
        tria: Triangulation,
        out: Path,
        formats: Tuple[str, ...],
        report: Optional[GradingReport] = None,
        layers: Optional[Dict[int, int]] = None,
    ) -> Dict[str, Path]:
        """
        Write the requested formats next to ``out`` (suffixes replaced).

        Returns:
            Dictionary of output file paths
        """
        out = Path(out)
        written: Dict[str, Path] = {}
        for fmt in formats:
            if fmt == "json":
                path = out.with_suffix(".json")
                if report is not None:
                    write_report_json(report, path)
                else:
                    save_mesh(tria, path)
                written["json"] = path
            elif fmt == "csv":
                if report is None:
                    raise ValueError("CSV output needs a grading report")
                path = out.with_suffix(".csv")
                write_report_csv(report, path)
                written["csv"] = path
                if report.jump_histogram:
                    hist = out.with_name(out.stem + "_jumps.csv")
                    write_histogram_csv(report.jump_histogram, hist)
                    written["histogram"] = hist
            elif fmt == "vtk":
                path = out.with_suffix(".vtk")
                export_vtk(tria, path, report=report, layers=layers)
                written["vtk"] = path
        return written

    # ── Verification ─────────────────────────────────────────────────────────

    def verify(
        self,
        tria: Triangulation,
        suite: str,
        vertex: Optional[int] = None,
        m: Optional[int] = None,
        depth: Optional[int] = None,
    ) -> SuiteResult:
        """
        Run one verification suite.

        Violations of checked invariants are recorded as failures rather
        than raised, so one run reports every failing check.
        """
        if suite not in SUITES:
            raise ValueError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        logger.info("=" * 60)
        logger.info(f"Verification suite '{suite}' on {len(tria)} leaves")
        result = SuiteResult(suite)
        if suite == "lemmas":
            self._verify_lemmas(tria, result)
        elif suite == "grading":
            self._verify_grading(tria, result)
        elif suite == "jumps":
            self._verify_jumps(tria, result)
        else:
            self._verify_aux(tria, result, vertex, m, depth)
        if result.ok:
            logger.info(f"Suite '{suite}' passed ({len(result.checks)} checks)")
        else:
            logger.warning(f"Suite '{suite}' failed: {', '.join(result.failures)}")
        return result

    def _verify_lemmas(self, tria: Triangulation, result: SuiteResult) -> None:
        ok, violation = is_conforming(tria)
        result.record("conforming", ok, {"ok": ok, "violation": str(violation) if violation else None})
        report = scan_lemmas(tria)
        result.record("structure", report.ok, report.to_dict())

    def _verify_grading(self, tria: Triangulation, result: SuiteResult) -> None:
        constants = self.constants(tria.forest)
        gamma = constants.Gamma
        tasks = {
            "level-estimate": lambda: verify_level_estimate(tria, gamma, form=LEVEL),
            "generation-estimate": lambda: verify_level_estimate(tria, gamma, form=GENERATION),
            "edge-chain-estimate": lambda: edge_chain_estimate(tria, gamma),
        }
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = {name: pool.submit(task) for name, task in tasks.items()}
            try:
                report = regularized_mesh_size(tria, gamma_constant=gamma, with_jumps=False)
                result.record("mesh-size-grading", report.gamma <= 2, report.summary())
            except InvariantViolation as e:
                result.record("mesh-size-grading", False, {"invariant": e.invariant, "detail": e.detail})
            for name, future in futures.items():
                estimate = future.result()
                result.record(name, estimate.ok, estimate.to_dict())

        if len(tria) <= self.brute_force_limit:
            fast = mesh_size_exponents(tria)
            slow = brute_force_mesh_size(tria)
            same = bool(np.array_equal(fast, slow))
            result.record("mesh-size-oracle", same, {"ok": same, "leaves": len(tria)})

    def _verify_jumps(self, tria: Triangulation, result: SuiteResult) -> None:
        constants = self.constants(tria.forest)
        result.checks["constants"] = constants.to_dict()
        for stats in (level_jump_stats(tria, constants), gensharp_gap_stats(tria, constants)):
            result.record(stats.quantity, stats.ok, stats.to_dict())

    def _verify_aux(
        self,
        tria: Triangulation,
        result: SuiteResult,
        vertex: Optional[int],
        m: Optional[int],
        depth: Optional[int],
    ) -> None:
        constants = self.constants(tria.forest)
        try:
            aux = self.build_aux(tria, vertex, m, depth)
            layers = decompose_layers(aux)
            result.record("layers", True, layers.to_dict())
            chains = type_one_diagonal_chains(aux, layers)
            result.record("type-one-diagonals", True, {"chains": [c.to_dict() for c in chains]})
            length = aux.depth // aux.d - 1
            if length >= 0:
                chain = sharp_chain(aux, length, layers)
                result.record("sharp-chain", True, {"length": length, "leaves": chain})
                report = regularized_mesh_size(aux.patch_triangulation(), with_jumps=False)
                sharp = length < 1 or report.gamma == 2
                result.record("aux-grading", sharp, report.summary())
        except InvariantViolation as e:
            result.record(e.invariant, False, {"invariant": e.invariant, "detail": e.detail})
            return

        scans = [check_bisection_edge_layers(aux, layers)]
        if aux.vertex in tria.vertex_star():
            scans.append(check_leaving_neighborhood(tria, aux))
            scans.append(check_staying_in_neighborhood(tria, aux))
        scans.append(check_finer_triangulation(tria, constants=constants))
        for scan in scans:
            result.record(scan.name, scan.ok, scan.to_dict())
