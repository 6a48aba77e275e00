from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from tensorcert.core.sym_tensor import Vec
from tensorcert.core.tensor_config import SearchConfig


class Verdict(Enum):
    COPOSITIVE_CERTIFIED = "copositive-certified"
    STRICTLY_COPOSITIVE_CERTIFIED = "strictly-copositive-certified"
    NOT_COPOSITIVE = "not-copositive"
    NUMERICALLY_COPOSITIVE = "numerically-copositive"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def exit_statuses(cls):
        return {
            cls.COPOSITIVE_CERTIFIED: 0,
            cls.STRICTLY_COPOSITIVE_CERTIFIED: 0,
            cls.NOT_COPOSITIVE: 1,
            cls.NUMERICALLY_COPOSITIVE: 3,
            cls.INCONCLUSIVE: 4,
        }


class Reason(Enum):
    DIAG_NECESSARY = "diag_necessary"
    DIAG_DOMINANCE_NONNEG = "diag_dominance_nonneg"
    DIAG_DOMINANCE_POS = "diag_dominance_pos"
    NONNEGATIVE_ENTRIES = "nonnegative_entries"
    ESS_NONPOS_ROWSUM = "ess_nonpos_rowsum"
    NMIN_SEARCH = "nmin_search"
    GRID_ORACLE = "grid_oracle"


class DominanceLevel(Enum):
    POSITIVE = "positive"
    NONNEGATIVE = "nonnegative"
    NEITHER = "neither"


@dataclass(frozen=True)
class CopositivityCertificate:
    verdict: Verdict
    reason: Reason
    witness: Optional[Vec] = None
    nmin_estimate: Optional[float] = None
    checks: Tuple[Tuple[str, str], ...] = ()
    config: Optional[SearchConfig] = field(default=None, compare=False)

    @property
    def is_certified(self) -> bool:
        return self.verdict in (Verdict.COPOSITIVE_CERTIFIED, Verdict.STRICTLY_COPOSITIVE_CERTIFIED)

    @property
    def is_strict(self) -> bool:
        return self.verdict is Verdict.STRICTLY_COPOSITIVE_CERTIFIED

    @property
    def exit_status(self) -> int:
        return Verdict.exit_statuses()[self.verdict]
