import os

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

from tensorcert.core.exceptions.tensor_format_error import TensorFormatError

load_dotenv()

SEED_ENV = "TENSORCERT_SEED"


def default_seed() -> int:
    """Seed from TENSORCERT_SEED, 0 when unset."""
    raw = os.getenv(SEED_ENV, "0").strip()
    try:
        seed = int(raw)
    except ValueError:
        raise TensorFormatError(f"{SEED_ENV} must be a nonnegative integer, got {raw!r}")
    if seed < 0:
        raise TensorFormatError(f"{SEED_ENV} must be a nonnegative integer, got {raw!r}")
    return seed


ITERATION_DEFAULTS = {
    "tolerance": 1e-10,
    "max_iterations": 100000,
    "shift": 1.0,
}

SEARCH_DEFAULTS = {
    "restarts": 50,
    "grid_resolution": 20,
    "tolerance": 1e-9,
}

# relative agreement of block eigenvalues for the H++ test
HPP_RELATIVE_TOLERANCE = 1e-8

VARIATIONAL_RESTARTS = 20

# subset enumeration for reducibility only up to this dimension
REDUCIBILITY_SUBSET_LIMIT = 12

GRID_ORACLE_MAX_DIM = 5

DENSE_ORACLE_MAX_ENTRIES = 5 ** 6

ASCENT_MAX_STEPS = 5000
ASCENT_MAX_HALVINGS = 60


class IterationConfig(BaseModel):
    """Settings of the shifted power iteration."""
    model_config = ConfigDict(frozen=True)

    tolerance: float = Field(default=ITERATION_DEFAULTS["tolerance"], gt=0,
                             description="Stop once the ratio bracket is this narrow (relative to 1 + |lambda|)")
    max_iterations: int = Field(default=ITERATION_DEFAULTS["max_iterations"], gt=0,
                                description="Iteration cap per block")
    shift: float = Field(default=ITERATION_DEFAULTS["shift"], ge=0,
                         description="Diagonal shift added during the iteration and subtracted afterwards")
    workers: int = Field(default=1, gt=0, description="Threads used for independent blocks")
    show_progress: bool = Field(default=False, description="Show a progress bar over blocks")


class SearchConfig(BaseModel):
    """Settings of the multi-start searches on the k-norm simplex."""
    model_config = ConfigDict(frozen=True)

    restarts: int = Field(default=SEARCH_DEFAULTS["restarts"], gt=0,
                          description="Random starting points on top of the uniform and vertex starts")
    grid_resolution: int = Field(default=SEARCH_DEFAULTS["grid_resolution"], gt=0,
                                 description="Composition total used by the grid oracle")
    tolerance: float = Field(default=SEARCH_DEFAULTS["tolerance"], gt=0,
                             description="Refutation threshold, scaled by the largest absolute entry")
    seed: int = Field(default_factory=default_seed, ge=0, description="Seed of the restart generator")
    show_progress: bool = Field(default=False, description="Show a progress bar over restarts")
