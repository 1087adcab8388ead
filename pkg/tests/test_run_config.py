import json

import pytest

from app.algebra.cyclotomic import CycNum
from app.core.errors import EXIT_CONFIG, ConfigError
from app.schemas.report import CycNumOut, Report
from app.schemas.run import Mode, ScanMethod, load_run_config


def test_defaults_and_ranges() -> None:
    cfg = load_run_config(mode="pointcount", q=5, n_range="2..4", shards=None)
    assert cfg.d == 1
    assert cfg.ns == [2, 3, 4]
    assert cfg.method == ScanMethod.SCAN
    assert cfg.mode == Mode.POINTCOUNT
    assert "shards" not in cfg.echo()
    assert cfg.echo()["n_range"] == "2..4"


@pytest.mark.parametrize(
    "values",
    [
        dict(mode="pointcount", q=6, n=2),
        dict(mode="pointcount", q=7, d=4, n=2),
        dict(mode="pointcount", q=5, n=2, n_range="1..3"),
        dict(mode="pointcount", q=5),
        dict(mode="pointcount", q=5, n_range="4..2"),
        dict(mode="pointcount", q=5, n_range="1-3"),
        dict(mode="pointcount", q=5, n=2, stat="delta"),
        dict(mode="pointcount", q=5, n=0),
        dict(mode="normform", q=5, n=2, shards=0),
    ],
)
def test_invalid_configs(values: dict) -> None:
    with pytest.raises(ConfigError) as err:
        load_run_config(**values)
    assert err.value.exit_code == EXIT_CONFIG


def test_cohomology_needs_no_degree() -> None:
    cfg = load_run_config(mode="cohomology", q=3, d=2, stat="X[1,chi 0]")
    assert cfg.ns == []


def test_cycnum_serialization() -> None:
    out = CycNumOut.from_cyc(CycNum.zeta(4) + CycNum.from_rational(1, 4) / 2)
    assert out.order == 4
    assert out.coeffs == ["1/2", "1", "0", "0"]
    assert out.approx == "0.5+1i"


def test_report_json_uses_schema_alias() -> None:
    report = Report(mode="pointcount", config={"q": 3}, timing={"n=2": 1.5})
    payload = json.loads(report.to_json())
    assert payload["schema"] == 1
    assert "timing" in payload
    assert "timing" not in report.payload()
    assert report.passed


def test_imax_only_bounds_the_series() -> None:
    # imax fija el orden de la serie estable, no depende de n
    assert load_run_config(mode="pointcount", q=5, d=2, n=2, imax=3).imax == 3
    assert load_run_config(mode="verify-glt", q=5, d=2, n=2, imax=3).ns == [2]
