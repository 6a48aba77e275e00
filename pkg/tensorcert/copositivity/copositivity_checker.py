import math
from typing import Optional, Sequence

import numpy as np

from tensorcert.copositivity.models import CopositivityCertificate, DominanceLevel, Reason, Verdict
from tensorcert.copositivity.nmin_search import nmin_search
from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor, as_vec, cp_sum, inner_product, unit_vector
from tensorcert.core.tensor_config import SearchConfig
from tensorcert.spectral.models import eigen_residual
from util.logging_mixin import LoggingMixin

EIGENPAIR_TOLERANCE = 1e-8


def _require_symmetric(a: SymTensor) -> SymTensor:
    if not a.has_symmetric_values():
        raise TensorPreconditionError("copositivity is defined for symmetric tensors", requirement="symmetric")
    return a.symmetrize()


def _require_nonnegative_point(x) -> np.ndarray:
    if np.any(x < 0):
        raise TensorPreconditionError(f"point {x.tolist()} has a negative component", requirement="nonnegative")
    if not np.any(x > 0):
        raise TensorPreconditionError("point must be nonzero", requirement="nonzero")
    return x


def check_diag_necessary(a: SymTensor) -> bool:
    """d_min(A) >= 0, necessary for copositivity."""
    return a.diag_stats().d_min >= 0


def dominance_slacks(a: SymTensor) -> np.ndarray:
    """a_{i..i} plus every negative off-diagonal entry of row i, counted per position."""
    return a.symmetrize().nonpositive_part().row_sums()


def check_diag_dominance(a: SymTensor) -> DominanceLevel:
    slacks = dominance_slacks(a)
    if np.all(slacks > 0):
        return DominanceLevel.POSITIVE
    if np.all(slacks >= 0):
        return DominanceLevel.NONNEGATIVE
    return DominanceLevel.NEITHER


def check_ess_nonpos(a: SymTensor) -> Optional[Verdict]:
    """Row-sum certificate for essentially nonpositive tensors, None when it does not apply."""
    if any(v > 0 for v in a.off_diagonal_values()):
        return None
    r_min = a.row_stats().r_min
    if r_min > 0:
        return Verdict.STRICTLY_COPOSITIVE_CERTIFIED
    if r_min >= 0:
        return Verdict.COPOSITIVE_CERTIFIED
    return None


def _require_copositive(a: SymTensor, certificate: Optional[CopositivityCertificate]) -> None:
    """Certified or numerically copositive; runs ``certify`` when no certificate is given."""
    if certificate is None:
        certificate = certify(a)
    if certificate.verdict in (Verdict.NOT_COPOSITIVE, Verdict.INCONCLUSIVE):
        raise TensorPreconditionError(f"tensor is not known to be copositive ({certificate.verdict.value})",
                                      requirement="copositive")


def check_hplus_sign(a: SymTensor, eigenvalue: float, x, tolerance: float = 1e-9,
                     certificate: Optional[CopositivityCertificate] = None) -> bool:
    """A copositive tensor's H+-eigenvalues are nonnegative.

    ``x`` must be a nonnegative eigenvector; the eigenvalue is re-derived as
    A x^k / sum x_i^k and both values are checked.
    """
    _require_copositive(a, certificate)
    x = _require_nonnegative_point(as_vec(x, a.dim))
    x = x / np.sum(x ** a.order) ** (1.0 / a.order)
    if eigen_residual(a, eigenvalue, x) > EIGENPAIR_TOLERANCE * (1.0 + abs(eigenvalue)):
        raise TensorPreconditionError(f"({eigenvalue}, x) is not an eigenpair", requirement="eigenpair")
    rayleigh = a.eval_form(x)
    return eigenvalue >= -tolerance and rayleigh >= -tolerance


def check_zero_set_gradient(a: SymTensor, x, tolerance: float = 1e-9,
                            gradient_tolerance: Optional[float] = None,
                            certificate: Optional[CopositivityCertificate] = None) -> bool:
    """For copositive A, x >= 0 with A x^k = 0 forces A x^(k-1) >= 0."""
    _require_copositive(a, certificate)
    x = _require_nonnegative_point(as_vec(x, a.dim))
    value = a.eval_form(x)
    if abs(value) > tolerance:
        raise TensorPreconditionError(f"A x^k = {value} is not zero", requirement="zero_of_form")
    gradient_tolerance = tolerance if gradient_tolerance is None else gradient_tolerance
    return float(np.min(a.apply(x))) >= -gradient_tolerance


class CopositivityChecker(LoggingMixin):
    """Runs the cheap exact tests first and falls back to the N_min search."""

    def __init__(self, config: Optional[SearchConfig] = None):
        self.config = config or SearchConfig()

    def refutation_threshold(self, a: SymTensor) -> float:
        return self.config.tolerance * a.max_abs_entry()

    def _issue(self, verdict: Verdict, reason: Reason, checks, **evidence) -> CopositivityCertificate:
        self.logger.info("Verdict %s (%s)", verdict.value, reason.value)
        return CopositivityCertificate(verdict, reason, checks=tuple(checks), config=self.config, **evidence)

    def certify(self, a: SymTensor) -> CopositivityCertificate:
        a = _require_symmetric(a)
        checks = []

        diagonal = a.diagonal()
        if not check_diag_necessary(a):
            weakest = int(np.argmin(diagonal))
            checks.append((Reason.DIAG_NECESSARY.value, "fail"))
            return self._issue(Verdict.NOT_COPOSITIVE, Reason.DIAG_NECESSARY, checks,
                               witness=unit_vector(weakest + 1, a.dim), nmin_estimate=float(diagonal[weakest]))
        checks.append((Reason.DIAG_NECESSARY.value, "pass"))
        checks.append(("strict_diag_necessary", "pass" if diagonal.min() > 0 else "fail"))

        dominance = check_diag_dominance(a)
        if a.is_nonnegative():
            checks.append((Reason.NONNEGATIVE_ENTRIES.value, "pass"))
            if dominance is DominanceLevel.POSITIVE:
                return self._issue(Verdict.STRICTLY_COPOSITIVE_CERTIFIED, Reason.DIAG_DOMINANCE_POS, checks)
            return self._issue(Verdict.COPOSITIVE_CERTIFIED, Reason.NONNEGATIVE_ENTRIES, checks)
        checks.append((Reason.NONNEGATIVE_ENTRIES.value, "fail"))

        checks.append(("diag_dominance", dominance.value))
        if dominance is DominanceLevel.POSITIVE:
            return self._issue(Verdict.STRICTLY_COPOSITIVE_CERTIFIED, Reason.DIAG_DOMINANCE_POS, checks)
        if dominance is DominanceLevel.NONNEGATIVE:
            return self._issue(Verdict.COPOSITIVE_CERTIFIED, Reason.DIAG_DOMINANCE_NONNEG, checks)

        row_sum_verdict = check_ess_nonpos(a)
        checks.append((Reason.ESS_NONPOS_ROWSUM.value, row_sum_verdict.value if row_sum_verdict else "n/a"))
        if row_sum_verdict is not None:
            return self._issue(row_sum_verdict, Reason.ESS_NONPOS_ROWSUM, checks)

        estimate = nmin_search(a, self.config)
        checks.append((Reason.NMIN_SEARCH.value, f"{estimate.value:.6g}"))
        if not math.isfinite(estimate.value):
            return self._issue(Verdict.INCONCLUSIVE, Reason.NMIN_SEARCH, checks, nmin_estimate=estimate.value)
        if estimate.value < -self.refutation_threshold(a):
            return self._issue(Verdict.NOT_COPOSITIVE, Reason.NMIN_SEARCH, checks,
                               witness=estimate.argmin, nmin_estimate=estimate.value)
        self.logger.warning("No exact test applies; search minimum %.3g gives no certificate", estimate.value)
        return self._issue(Verdict.NUMERICALLY_COPOSITIVE, Reason.NMIN_SEARCH, checks,
                           nmin_estimate=estimate.value)

    def dual_pairing_check(self, a: SymTensor, factors: Sequence,
                           certificate: Optional[CopositivityCertificate] = None) -> bool:
        """<A, sum (y^(i))^k> >= 0, the pairing of a copositive tensor with a completely positive one."""
        _require_copositive(a, certificate if certificate is not None else self.certify(a))
        pairing = inner_product(a, cp_sum(factors, a.order))
        direct = sum(a.eval_form(y) for y in factors)
        if abs(pairing - direct) > 1e-9 * (1.0 + abs(direct)):
            self.logger.warning("Pairing %.15g differs from the summed forms %.15g", pairing, direct)
        return pairing >= -self.config.tolerance


def certify(a: SymTensor, cfg: Optional[SearchConfig] = None) -> CopositivityCertificate:
    return CopositivityChecker(cfg).certify(a)


def dual_pairing_check(a: SymTensor, factors: Sequence, cfg: Optional[SearchConfig] = None,
                       certificate: Optional[CopositivityCertificate] = None) -> bool:
    return CopositivityChecker(cfg).dual_pairing_check(a, factors, certificate)
