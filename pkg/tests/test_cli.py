import pytest
from click.testing import CliRunner
from dependency_injector import providers

from conftest import F, inst
from facility_lens.client.cli.main import cli, container
from facility_lens.core.analysis.witnesses import Witness
from facility_lens.core.domain.models import Bound, RatioReport
from facility_lens.core.services.ratio_service import WitnessCheck


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_run_deterministic(runner):
    result = runner.invoke(cli, ["run", "--mech", "midornearest", "--agents", "1/4,0"])
    assert result.exit_code == 0, result.output
    assert "agents: [0/1, 1/4]" in result.stdout
    assert "placement: [1/4]" in result.stdout
    assert "ratio (max-distance): 2/1 (2.000000)" in result.stdout


def test_run_reports_an_unbounded_ratio(runner):
    result = runner.invoke(
        cli, ["run", "--mech", "minmaxp", "--agents", "0,1", "--pred", "0", "--obj", "min-utility"]
    )
    assert result.exit_code == 0, result.output
    assert "placement: [0/1]" in result.stdout
    assert "min-utility: 0/1 (0.000000)" in result.stdout
    assert "optimal min-utility: 1/2 (0.500000)" in result.stdout
    assert "ratio (min-utility): unbounded" in result.stdout


def test_run_reads_decimals_exactly(runner):
    result = runner.invoke(cli, ["run", "--mech", "midornearest", "--agents", "0.1,0.2"])
    assert result.exit_code == 0, result.output
    assert "placement: [1/5]" in result.stdout


def test_run_randomized_prints_the_lottery(runner):
    result = runner.invoke(
        cli, ["run", "--mech", "randends", "--agents", "0,0.5,1", "--obj", "min-utility"]
    )
    assert result.exit_code == 0, result.output
    assert "lottery:" in result.stdout
    assert "expected min-utility: 7/12 (0.583333)" in result.stdout
    assert "ratio (min-utility): 9/7 (1.285714)" in result.stdout


def test_run_with_predictions(runner):
    result = runner.invoke(
        cli,
        ["run", "--mech", "minmax2p", "--agents", "0,1/2,1", "--pred", "0,1", "--obj", "min-utility"],
    )
    assert result.exit_code == 0, result.output
    assert "predictions: (0/1, 1/1)" in result.stdout
    assert "ratio (min-utility): 3/2 (1.500000)" in result.stdout


@pytest.mark.parametrize(
    "args",
    [
        ["run", "--mech", "minmaxp", "--agents", "0,1"],
        ["run", "--mech", "midornearest", "--agents", "0,1", "--pred", "1/2"],
        ["run", "--mech", "minmax2p", "--agents", "0,1", "--pred", "1/2"],
        ["run", "--mech", "lrm", "--agents", "0,2"],
        ["run", "--mech", "lrm", "--agents", ""],
        ["run", "--mech", "lrmp", "--param", "0.9", "--agents", "0,1", "--pred", "0"],
        ["run", "--mech", "lrmp", "--agents", "0,1", "--pred", "0"],
        ["run", "--mech", "nope", "--agents", "0,1"],
        ["run", "--mech", "genmedian", "--phantoms", "1/2", "--agents", "0,1/2,1"],
        ["ratio", "--mech", "lrm", "--obj", "min-utility", "--mode", "robustness", "--res", "1"],
        ["sweep", "--mech", "minmaxp"],
        ["sweep", "--mech", "lrmp", "--params", "abc"],
        ["sweep", "--mech", "lrmp", "--params", "3/4"],
    ],
)
def test_bad_input_is_a_usage_error(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2, result.output


def test_ratio_consistent_cell_with_witness(runner):
    result = runner.invoke(
        cli,
        [
            "ratio", "--mech", "midornearest", "--obj", "min-utility", "--mode", "robustness",
            "--res", "10", "--max-agents", "2", "--witness",
        ],
    )
    assert result.exit_code == 0, result.output
    assert "measured: 3/2 (1.500000)" in result.stdout
    assert "proof witness midornearest-min-utility" in result.stdout
    assert "exact)" in result.stdout
    assert "verdict: consistent with closed form" in result.stdout


def test_ratio_contradiction_exits_one(runner):
    result = runner.invoke(
        cli,
        ["ratio", "--mech", "lrmt", "--obj", "min-utility", "--mode", "consistency", "--res", "4", "--max-agents", "2"],
    )
    assert result.exit_code == 1
    assert "verdict: CONTRADICTION" in result.stdout


def test_ratio_tolerance_and_events(runner):
    result = runner.invoke(
        cli,
        [
            "ratio", "--mech", "lrmt", "--obj", "min-utility", "--mode", "consistency",
            "--res", "4", "--max-agents", "1", "--tolerance", "1", "--events",
        ],
    )
    assert result.exit_code == 0, result.output
    assert '"type": "search_started"' in result.stderr
    assert '"type": "search_finished"' in result.stderr
    assert "search_started" not in result.stdout


class _DivergingRatioService:
    """Reports a finite worst ratio promoted to unbounded and a witness that disagrees."""

    def measure(self, spec, objective, mode, config, emitter=None):
        return RatioReport(Bound.unbounded(), Bound.unbounded(), inst(0, "1/20"), None, F(250))

    def witnesses(self, spec, objective, mode):
        witness = Witness("far-end", spec, objective, mode, inst(0), None, Bound.of(2))
        return [WitnessCheck(witness, Bound(F("3/2")))]


def test_ratio_warns_on_divergence_and_flags_witness_mismatches(runner):
    args = ["ratio", "--mech", "midornearest", "--obj", "max-distance", "--mode", "robustness", "--witness"]
    with container.ratio_service.override(providers.Object(_DivergingRatioService())):
        result = runner.invoke(cli, args)
    assert result.exit_code == 1
    stderr = " ".join(result.stderr.split())
    assert "Warning: worst ratio 250/1 is above the divergence threshold 100/1; reported as unbounded" in stderr
    assert "Error: witness far-end gives 3/2, expected 2/1" in stderr
    assert "measured: inf" in result.stdout
    assert "MISMATCH" in result.stdout


def test_sp_finds_the_broken_mechanism(runner):
    result = runner.invoke(cli, ["sp", "--mech", "broken-third", "--res", "5", "--max-agents", "2"])
    assert result.exit_code == 1
    assert "property: strategyproofness" in result.stdout
    assert "reports" in result.stdout


def test_sp_clean_mechanism(runner):
    result = runner.invoke(
        cli, ["sp", "--mech", "minmaxp", "--res", "4", "--max-agents", "2", "--pred-res", "2"]
    )
    assert result.exit_code == 0, result.output
    assert "violations: 0" in result.stdout


def test_sp_unanimity(runner):
    result = runner.invoke(
        cli, ["sp", "--mech", "lrmt", "--property", "unanimity", "--res", "2", "--max-agents", "1"]
    )
    assert result.exit_code == 1
    assert "property: unanimity" in result.stdout


def test_sweep_csv(runner):
    result = runner.invoke(cli, ["sweep", "--mech", "minmaxp-gamma", "--params", "1/2,0"])
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines() == [
        "param,consistency,robustness,param_decimal,consistency_decimal,robustness_decimal",
        "0/1,1/1,inf,0.000000,1.000000,inf",
        "1/2,3/2,3/2,0.500000,1.500000,1.500000",
    ]


def test_sweep_default_steps(runner):
    result = runner.invoke(cli, ["sweep", "--mech", "lrmp", "--obj", "max-distance", "--steps", "4"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert len(lines) == 1 + 5
    assert lines[-1] == "1/2,3/2,3/2,0.500000,1.500000,1.500000"


def test_table(runner):
    result = runner.invoke(cli, ["table"])
    assert result.exit_code == 0, result.output
    assert "== 2 facilities, randomized ==" in result.stdout


def test_table_strict_verification_fails_on_refuted_cells(runner):
    args = ["table", "--verify", "--res", "4", "--max-agents", "2", "--format", "csv"]
    assert runner.invoke(cli, args).exit_code == 0
    result = runner.invoke(cli, args + ["--strict"])
    assert result.exit_code == 1
    assert ",refuted," in result.stdout


def test_out_writes_the_report(runner, tmp_path):
    target = tmp_path / "reports" / "run.txt"
    result = runner.invoke(
        cli, ["run", "--mech", "lrm", "--agents", "0,1", "--obj", "min-utility", "--out", str(target)]
    )
    assert result.exit_code == 0, result.output
    assert target.read_text() == result.stdout


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.output


@pytest.mark.parametrize("variable", ["FM_RESOLUTION", "FM_WORKERS", "FM_SP_PREDICTION_RESOLUTION"])
def test_non_integer_environment_is_a_usage_error(runner, variable):
    result = runner.invoke(cli, ["table"], env={variable: "abc"})
    assert result.exit_code == 2
    assert f"{variable} must be an integer" in result.stderr
