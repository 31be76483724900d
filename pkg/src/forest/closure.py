"""Bisection with conforming closure and the refinement loops built on it."""

from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Set

import numpy as np
from tqdm import tqdm

from ..core.exceptions import ClosureBudgetExceeded, NotALeafError
from ..utils import get_config, get_logger
from .triangulation import Triangulation

logger = get_logger(__name__)

DEFAULT_CLOSURE_BUDGET = 1 << 24


class Refiner:
    """
    Mutable refinement state on top of a forest.

    Holds the current leaf set and a vertex -> leaves incidence map so that
    the edge patch of a bisection edge is an intersection of two stars.
    All refinement entry points keep the leaf set conforming, except
    ``bisect_unclosed`` which exists to construct nonconforming test meshes.
    """

    def __init__(self, tria: Triangulation, budget: Optional[int] = None, config: Optional[Dict] = None):
        """
        Initialize a refiner.

        Args:
            tria: Starting triangulation
            budget: Maximum number of bisections per closure (default from config)
            config: Refinement configuration dictionary
        """
        if config is None:
            config = get_config().get_refinement_config()
        self.config = config
        self.budget = int(budget if budget is not None else config.get("closure_budget", DEFAULT_CLOSURE_BUDGET))
        self.show_progress = bool(config.get("progress", False))

        self.forest = tria.forest
        self.leaves: Set[int] = set(tria.leaf_set)
        self.star: Dict[int, Set[int]] = defaultdict(set)
        for nid in self.leaves:
            for v in self.forest.node_vertices[nid]:
                self.star[v].add(nid)
        self.bisections = 0

    def triangulation(self) -> Triangulation:
        return Triangulation(self.forest, self.leaves)

    def _split(self, nid: int) -> None:
        forest = self.forest
        c1, c2 = forest.bisect(nid)
        self.leaves.discard(nid)
        for v in forest.node_vertices[nid]:
            self.star[v].discard(nid)
        for c in (c1, c2):
            self.leaves.add(c)
            for v in forest.node_vertices[c]:
                self.star[v].add(c)
        self.bisections += 1

    def _key(self, nid: int):
        return (self.forest.node_generation[nid], nid)

    def bisect_unclosed(self, target: int) -> None:
        """Bisect one leaf without any closure (may break conformity)."""
        if target not in self.leaves:
            raise NotALeafError(target)
        self._split(target)

    def bisect_with_closure(self, target: int) -> int:
        """
        Bisect a leaf and every simplex needed to stay conforming.

        A leaf is bisected only together with its whole edge patch, and only
        once every simplex of that patch has the same bisection edge; the
        other patch members are refined first, recursively.

        Returns:
            Number of bisections performed

        Raises:
            NotALeafError: If target is not a current leaf
            ClosureBudgetExceeded: If more than ``budget`` bisections are needed
        """
        if target not in self.leaves:
            raise NotALeafError(target)
        forest = self.forest
        bse = forest.bse
        done = 0
        stack = [target]
        while stack:
            t = stack[-1]
            if t not in self.leaves:
                stack.pop()
                continue
            a, b = bse[t]
            patch = self.star[a] & self.star[b]
            blockers = [s for s in patch if bse[s] != (a, b)]
            if blockers:
                stack.extend(sorted(blockers, key=self._key, reverse=True))
                if len(stack) > self.budget:
                    raise ClosureBudgetExceeded(self.budget, target)
                continue
            for s in sorted(patch, key=self._key):
                self._split(s)
                done += 1
            if done > self.budget:
                raise ClosureBudgetExceeded(self.budget, target)
            stack.pop()
        logger.debug(f"Closure of {target}: {done} bisections")
        return done

    def refine_marked(self, marks: Iterable[int]) -> int:
        """
        Bisect every marked leaf at least once, keeping conformity.

        Marks are processed in (generation, id) order; marks already
        bisected by an earlier closure are skipped.

        Returns:
            Number of bisections performed
        """
        marks = list(marks)
        for m in marks:
            if m not in self.leaves:
                raise NotALeafError(m)
        done = 0
        ordered = sorted(set(marks), key=self._key)
        for m in tqdm(ordered, desc="Refining", disable=not self.show_progress or len(ordered) < 1000):
            if m in self.leaves:
                done += self.bisect_with_closure(m)
        return done

    def uniform_refine(self, steps: int) -> None:
        """Refine every leaf, ``steps`` times."""
        if steps < 0:
            raise ValueError(f"steps must be non-negative, got {steps}")
        for _ in range(steps):
            self.refine_marked(list(self.leaves))

    def random_refine(self, count: int, rng: np.random.Generator) -> None:
        """
        Perform ``count`` closure bisections on random leaves.

        At each step the target is ``sorted(leaves)[rng.integers(len(leaves))]``.
        """
        for _ in tqdm(range(count), desc="Random refinement", disable=not self.show_progress):
            self.bisect_with_closure(self.random_leaf(rng))

    def random_leaf(self, rng: np.random.Generator) -> int:
        ids = np.fromiter(self.leaves, dtype=np.int64, count=len(self.leaves))
        k = int(rng.integers(ids.size))
        return int(np.partition(ids, k)[k])


def bisect_with_closure(tria: Triangulation, target: int, budget: Optional[int] = None) -> Triangulation:
    """
    Smallest conforming refinement of ``tria`` in which ``target`` is bisected.

    Raises:
        NotALeafError: If target is not a leaf of tria
        ClosureBudgetExceeded: If the closure needs more than ``budget`` bisections
    """
    refiner = Refiner(tria, budget=budget)
    refiner.bisect_with_closure(target)
    return refiner.triangulation()


def refine_marked(tria: Triangulation, marks: Iterable[int], budget: Optional[int] = None) -> Triangulation:
    """Conforming refinement bisecting every marked leaf at least once."""
    marks = list(marks)
    if not marks:
        return tria
    refiner = Refiner(tria, budget=budget)
    refiner.refine_marked(marks)
    return refiner.triangulation()


def uniform_refine(tria: Triangulation, steps: int) -> Triangulation:
    """Raise every leaf generation by ``steps``; the leaf count grows by 2^steps."""
    if steps == 0:
        return tria
    refiner = Refiner(tria)
    refiner.uniform_refine(steps)
    result = refiner.triangulation()
    logger.info(f"Uniform refinement x{steps}: {len(tria)} -> {len(result)} leaves")
    return result


def bisect_unclosed(tria: Triangulation, target: int) -> Triangulation:
    """Bisect one leaf without closure. Intended for building nonconforming test meshes."""
    refiner = Refiner(tria, budget=DEFAULT_CLOSURE_BUDGET)
    refiner.bisect_unclosed(target)
    return refiner.triangulation()


def random_refinement(
    tria: Triangulation,
    count: int,
    seed: int = 0,
    budget: Optional[int] = None,
) -> Triangulation:
    """
    Reproducible random refinement with numpy's PCG64 generator.

    Args:
        tria: Starting triangulation
        count: Number of closure bisections
        seed: RNG seed
        budget: Closure budget

    Returns:
        Refined conforming triangulation
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    refiner = Refiner(tria, budget=budget)
    refiner.random_refine(count, rng)
    return refiner.triangulation()


def refine_to_size(
    tria: Triangulation,
    target_leaves: int,
    rng: np.random.Generator,
    budget: Optional[int] = None,
) -> Triangulation:
    """Random closure refinement until at least ``target_leaves`` leaves exist."""
    refiner = Refiner(tria, budget=budget)
    while len(refiner.leaves) < target_leaves:
        refiner.bisect_with_closure(refiner.random_leaf(rng))
    return refiner.triangulation()
