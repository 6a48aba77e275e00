import json

import pytest
from pydantic import ValidationError

from tensorcert.copositivity.copositivity_checker import certify
from tensorcert.core.tensor_config import IterationConfig, SearchConfig
from tensorcert.io.report import Report
from tensorcert.spectral.perron_iteration import lambda_max
from tensorcert.spectral.spectral_bounds import bounds_row_sums
from tensorcert.structure.tensor_structure import classify, weakly_irreducible_partition


def test_report_sections_carry_their_config(two_blocks):
    cfg = IterationConfig(tolerance=1e-11, shift=0.5)
    report = Report.for_tensor("eigen", two_blocks)
    report.add_classification(two_blocks, classify(two_blocks))
    report.add_partition(weakly_irreducible_partition(two_blocks))
    report.add_eigen("lambda_max", lambda_max(two_blocks, cfg))
    report.add_bounds("lambda_max", bounds_row_sums(two_blocks))

    data = json.loads(report.model_dump_json(indent=2))
    assert data["tensor"] == {"order": 3, "dim": 5, "nnz": 14, "positions": 2 ** 3 + 3 ** 3}
    assert data["partition"]["blocks"] == [[1, 2], [3, 4, 5]]
    assert data["eigen"][0]["config"]["tolerance"] == 1e-11
    assert data["eigen"][0]["config"]["shift"] == 0.5
    assert data["eigen"][0]["block_lambdas"][1][0] == [3, 4, 5]
    assert data["classification"]["flags"]["reducible"] is True

    text = report.to_text()
    assert "blocks: {1,2} {3,4,5}" in text
    assert "lambda_max bounds: [" in text
    assert "block {3,4,5}: 9" in text


def test_certificate_section(counterexample):
    report = Report.for_tensor("certify", counterexample)
    report.add_certificate(counterexample, certify(counterexample, SearchConfig(restarts=4, seed=2)))
    section = report.certificate
    assert section.verdict == "numerically-copositive"
    assert section.witness is None
    assert section.config.restarts == 4
    assert ("diag_dominance", "neither") in section.checks
    assert "check nmin_search:" in report.to_text()


def test_configs_validate():
    with pytest.raises(ValidationError):
        IterationConfig(tolerance=0.0)
    with pytest.raises(ValidationError):
        IterationConfig(shift=-1.0)
    with pytest.raises(ValidationError):
        SearchConfig(seed=-3)
    cfg = SearchConfig()
    with pytest.raises(ValidationError):
        cfg.restarts = 5
