from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from tensorcert.copositivity.models import CopositivityCertificate
from tensorcert.core.sym_tensor import SymTensor
from tensorcert.core.tensor_config import IterationConfig, SearchConfig
from tensorcert.spectral.models import SpectralBounds, SpectralResult
from tensorcert.structure.tensor_structure import Partition, StructureClass


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.10g}"


class TensorSummary(BaseModel):
    order: int
    dim: int
    nnz: int = Field(description="Stored (canonical) entries")
    positions: int = Field(description="Nonzero positions among all n^k")


class ClassificationSection(BaseModel):
    flags: Dict[str, bool]
    row_sums: List[float]
    r_max: float
    r_min: float
    r_bar: float
    d_max: float
    d_min: float
    d_bar: float


class PartitionSection(BaseModel):
    blocks: List[List[int]]


class EigenSection(BaseModel):
    kind: str = Field(description="lambda_max or lambda_min")
    eigenvalue: float
    eigenvector: List[float]
    residual: float
    iterations: int
    block_lambdas: List[Tuple[List[int], float]]
    config: IterationConfig


class BoundsSection(BaseModel):
    kind: str = Field(description="lambda_max (row-sum sandwich) or lambda_min")
    lower: float
    upper: float


class CertificateSection(BaseModel):
    verdict: str
    reason: str
    exit_status: int = Field(description="CLI exit status of the verdict")
    witness: Optional[List[float]] = None
    witness_value: Optional[float] = None
    nmin_estimate: Optional[float] = None
    checks: List[Tuple[str, str]]
    config: SearchConfig


class OracleSection(BaseModel):
    value: float
    argmin: List[float]
    resolution: int


class PairingSection(BaseModel):
    inner_product: float
    nonnegative: bool
    tolerance: float


class Report(BaseModel):
    command: str
    tensor: TensorSummary
    classification: Optional[ClassificationSection] = None
    partition: Optional[PartitionSection] = None
    eigen: List[EigenSection] = Field(default_factory=list)
    bounds: List[BoundsSection] = Field(default_factory=list)
    certificate: Optional[CertificateSection] = None
    oracle: Optional[OracleSection] = None
    pairing: Optional[PairingSection] = None

    @classmethod
    def for_tensor(cls, command: str, a: SymTensor) -> "Report":
        return cls(command=command,
                   tensor=TensorSummary(order=a.order, dim=a.dim, nnz=a.nnz, positions=a.positions_count()))

    def add_classification(self, a: SymTensor, structure: StructureClass):
        rows, diag = a.row_stats(), a.diag_stats()
        self.classification = ClassificationSection(
            flags=dict(vars(structure)), row_sums=a.row_sums().tolist(),
            r_max=rows.r_max, r_min=rows.r_min, r_bar=rows.r_bar,
            d_max=diag.d_max, d_min=diag.d_min, d_bar=diag.d_bar)

    def add_partition(self, partition: Partition):
        self.partition = PartitionSection(blocks=[list(block) for block in partition.blocks])

    def add_eigen(self, kind: str, result: SpectralResult):
        self.eigen.append(EigenSection(
            kind=kind, eigenvalue=result.eigenvalue, eigenvector=result.eigenvector.tolist(),
            residual=result.residual, iterations=result.iterations,
            block_lambdas=[(list(block), value) for block, value in result.block_lambdas],
            config=result.config or IterationConfig()))

    def add_bounds(self, kind: str, bounds: SpectralBounds):
        self.bounds.append(BoundsSection(kind=kind, lower=bounds.lower, upper=bounds.upper))

    def add_certificate(self, a: SymTensor, certificate: CopositivityCertificate):
        witness = certificate.witness
        self.certificate = CertificateSection(
            verdict=certificate.verdict.value, reason=certificate.reason.value, exit_status=certificate.exit_status,
            witness=None if witness is None else witness.tolist(),
            witness_value=None if witness is None else a.eval_form(witness),
            nmin_estimate=certificate.nmin_estimate, checks=list(certificate.checks),
            config=certificate.config or SearchConfig())

    def to_text(self) -> str:
        lines = [f"tensor: order {self.tensor.order}, dim {self.tensor.dim}, "
                 f"{self.tensor.nnz} stored entries, {self.tensor.positions} nonzero positions"]
        if self.classification:
            c = self.classification
            lines.append("class: " + ", ".join(name for name, flag in c.flags.items() if flag))
            lines.append(f"rows: R_max {_fmt(c.r_max)}  R_min {_fmt(c.r_min)}  R_bar {_fmt(c.r_bar)}")
            lines.append(f"diagonal: d_max {_fmt(c.d_max)}  d_min {_fmt(c.d_min)}  d_bar {_fmt(c.d_bar)}")
        if self.partition:
            lines.append("blocks: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in self.partition.blocks))
        for eigen in self.eigen:
            lines.append(f"{eigen.kind}: {_fmt(eigen.eigenvalue)}  residual {eigen.residual:.3e}  "
                         f"iterations {eigen.iterations}  (tolerance {eigen.config.tolerance:g}, "
                         f"shift {eigen.config.shift:g})")
            lines.append("  eigenvector: " + " ".join(_fmt(v) for v in eigen.eigenvector))
            for block, value in eigen.block_lambdas:
                lines.append(f"  block {{{','.join(map(str, block))}}}: {_fmt(value)}")
        for bounds in self.bounds:
            lines.append(f"{bounds.kind} bounds: [{_fmt(bounds.lower)}, {_fmt(bounds.upper)}]")
        if self.certificate:
            cert = self.certificate
            lines.append(f"verdict: {cert.verdict}  (reason {cert.reason}, search tolerance "
                         f"{cert.config.tolerance:g}, restarts {cert.config.restarts}, seed {cert.config.seed})")
            if cert.nmin_estimate is not None:
                lines.append(f"  nmin_estimate: {_fmt(cert.nmin_estimate)}")
            if cert.witness is not None:
                lines.append("  witness: " + " ".join(_fmt(v) for v in cert.witness)
                             + f"  (A x^k = {_fmt(cert.witness_value)})")
            for name, outcome in cert.checks:
                lines.append(f"  check {name}: {outcome}")
        if self.oracle:
            lines.append(f"grid oracle (resolution {self.oracle.resolution}): {_fmt(self.oracle.value)} at "
                         + " ".join(_fmt(v) for v in self.oracle.argmin))
        if self.pairing:
            lines.append(f"<A, B> = {_fmt(self.pairing.inner_product)}  "
                         f"(nonnegative within {self.pairing.tolerance:g}: {self.pairing.nonnegative})")
        return "\n".join(lines)
