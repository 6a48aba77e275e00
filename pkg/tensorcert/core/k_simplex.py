"""Multi-start projected search of A x^k over {x >= 0, sum x_i^k = 1}."""
from dataclasses import dataclass
from typing import List

import numpy as np
from tqdm import tqdm

from tensorcert.core.sym_tensor import SymTensor, Vec, k_norm_normalize
from tensorcert.core.tensor_config import ASCENT_MAX_HALVINGS, ASCENT_MAX_STEPS
from util.logging_mixin import LoggingMixin


@dataclass(frozen=True)
class SearchOutcome:
    value: float
    point: Vec
    steps: int


class KSimplexSearch(LoggingMixin):
    """Projected gradient ascent (or descent) of the form A x^k.

    A step moves along the gradient projected onto the tangent space of the
    constraint, clamps negatives to zero and rescales to unit k-norm. The
    step length starts at 1.0 and is halved until the objective improves.
    """

    def __init__(self, tensor: SymTensor, maximize: bool = True, max_steps: int = ASCENT_MAX_STEPS):
        self.tensor = tensor
        self.sign = 1.0 if maximize else -1.0
        self.max_steps = max_steps

    def _objective(self, x: Vec) -> float:
        return self.sign * self.tensor.eval_form(x)

    def starting_points(self, restarts: int, seed: int) -> List[Vec]:
        """Uniform point, every vertex e^(i), then seeded random points.

        Every other random point has a random set of coordinates zeroed so
        that faces of the simplex get explored too.
        """
        n, k = self.tensor.dim, self.tensor.order
        starts = [np.full(n, n ** (-1.0 / k))]
        starts.extend(np.eye(n))
        rng = np.random.default_rng(seed)
        for restart in range(restarts):
            point = rng.random(n) + 1e-3
            if restart % 2 == 1 and n > 1:
                point[rng.random(n) < 0.5] = 0.0
                if not np.any(point > 0):
                    point[rng.integers(n)] = 1.0
            starts.append(k_norm_normalize(point, k))
        return starts

    def run_from(self, start: Vec) -> SearchOutcome:
        k = self.tensor.order
        x = k_norm_normalize(np.clip(start, 0.0, None), k)
        value = self._objective(x)
        steps = 0
        for steps in range(1, self.max_steps + 1):
            gradient = self.sign * k * self.tensor.apply(x)
            normal = x ** (k - 1)
            direction = gradient - (gradient @ normal) / (normal @ normal) * normal
            direction[(x <= 0) & (direction <= 0)] = 0.0
            scale = np.max(np.abs(direction))
            if scale <= 1e-14 * (1.0 + np.max(np.abs(gradient))):
                break
            direction /= scale

            step, improved = 1.0, False
            for _ in range(ASCENT_MAX_HALVINGS):
                candidate = np.clip(x + step * direction, 0.0, None)
                if np.any(candidate > 0):
                    candidate = k_norm_normalize(candidate, k)
                    candidate_value = self._objective(candidate)
                    if candidate_value > value:
                        improved = True
                        break
                step /= 2.0
            if not improved:
                break
            gain = candidate_value - value
            x, value = candidate, candidate_value
            if gain <= 1e-15 * (1.0 + abs(value)):
                break
        return SearchOutcome(self.sign * value, x, steps)

    def run(self, restarts: int, seed: int, show_progress: bool = False) -> SearchOutcome:
        """Best outcome over all starting points; ties keep the earlier start."""
        best = None
        starts = self.starting_points(restarts, seed)
        for start in tqdm(starts, desc="k-simplex search", unit="start", disable=not show_progress):
            outcome = self.run_from(start)
            self.logger.debug("start %s -> value %.12g after %d steps", np.round(start, 4), outcome.value,
                              outcome.steps)
            if best is None or self.sign * outcome.value > self.sign * best.value:
                best = outcome
        return best
