"""Tests for the scan, tstar, probe and validate commands and the CLI entry point."""

import csv
import io
import json
import math
import os
import sys

import pytest

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cli import (
    ValidationReport,
    exit_code_for,
    main,
    prepare_scenario,
    run_probe,
    run_scan,
    run_tstar,
    run_validate,
    scan_header,
)
from src.config import load_preset, parse_scenario
from src.core import SqueezeParams
from src.dynamics import IntegratorConfig
from src.entropy import ENTROPY_FLOOR, initial_entropy, oscillator_entropy_closed
from src.errors import (
    ConfigError,
    EntropyBelowFloor,
    ExpressionSyntaxError,
    FrequencyZero,
    OverdampedUnsupported,
    WronskianDriftExceeded,
    with_context,
)


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def _oscillator(**overrides):
    data = {
        "model": {"kind": "oscillator", "m0": 1.0, "omega0": 1.0},
        "squeeze": {"r": {"start": 0.0, "stop": 1.0, "count": 3}, "theta": 0.0},
        "time": {"start": 0.0, "stop": "2*pi", "count": 9},
    }
    data.update(overrides)
    return data


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("LOG_LEVEL", "WAVEPACKET_JOBS", "WAVEPACKET_QUAD_NODES", "WAVEPACKET_DENSITY_POINTS"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def write_config(tmp_path):
    def _write(data, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write


class TestScan:
    """run_scan output."""

    def test_header(self):
        """Optional columns follow the fixed ones."""
        assert scan_header(["dx", "S_bar", "bounds", "t_star"]) == [
            "r", "theta", "t", "dx", "dp", "S", "S_minus_floor", "S_bar", "lower", "upper", "t_star",
        ]

    def test_initial_entropy_surface(self):
        """The t = 0 preset reproduces S(0) - ln(e/2) on the (r, theta) grid."""
        rows = _rows(run_scan(load_preset("fig1")))
        assert len(rows) == 60 * 120
        for row in rows:
            sq = SqueezeParams(r=float(row["r"]), theta=float(row["theta"]))
            assert float(row["S_minus_floor"]) == pytest.approx(initial_entropy(sq) - ENTROPY_FLOOR, abs=1e-12)

    def test_rows_ordered(self):
        """Rows are ordered by r, then theta, then t."""
        rows = _rows(run_scan(parse_scenario(_oscillator(squeeze={
            "r": {"start": 0.0, "stop": 1.0, "count": 2},
            "theta": {"start": 0.0, "stop": 3.0, "count": 2},
        }))))
        keys = [(float(row["r"]), float(row["theta"]), float(row["t"])) for row in rows]
        assert keys == sorted(keys)
        assert len(keys) == 2 * 2 * 9

    def test_deterministic_across_jobs(self):
        """One worker and four workers write identical bytes."""
        scenario = load_preset("fig2")
        assert run_scan(scenario, jobs=1) == run_scan(scenario, jobs=4)

    def test_oscillator_period(self):
        """The oscillator preset matches the closed form and repeats after pi."""
        rows = _rows(run_scan(load_preset("fig4")))
        by_r = {}
        for row in rows:
            by_r.setdefault(row["r"], []).append(row)
        assert len(by_r) == 11
        for series in by_r.values():
            assert len(series) == 501
            r = float(series[0]["r"])
            sq = SqueezeParams(r=r, theta=0.0)
            for row in series[::25]:
                t = float(row["t"])
                assert float(row["S"]) == pytest.approx(oscillator_entropy_closed(sq, 1.0, t), abs=1e-8)
            assert float(series[250]["S"]) == pytest.approx(float(series[0]["S"]), abs=1e-8)
            for row in series:
                assert float(row["lower"]) <= float(row["S_bar"]) + 1e-10
                assert float(row["S_bar"]) <= float(row["upper"]) + 1e-10

    @pytest.mark.parametrize("method", ["RK45", "DOP853"])
    def test_oscillator_preset_stays_above_floor(self, method):
        """Every oscillator row over one full period sits at or above ln(e/2)."""
        scenario = load_preset("fig4").model_copy(
            update={"integrator": IntegratorConfig(method=method)}
        )
        rows = _rows(run_scan(scenario))
        assert len(rows) == 11 * 501
        assert min(float(row["S_minus_floor"]) for row in rows) >= -1e-10
        ground = [row for row in rows if float(row["r"]) == 0.0]
        assert max(abs(float(row["S_minus_floor"])) for row in ground) < 1e-10

    def test_custom_caldirola_kanai_scan_matches_named(self):
        """A Caldirola-Kanai model written as expressions scans like the named model."""
        base = {
            "squeeze": {"r": {"start": 0.0, "stop": 1.0, "count": 3}, "theta": 0.9},
            "time": {"start": 0.0, "stop": 10.0, "count": 41},
            "outputs": ["S", "S_bar"],
        }
        named = _rows(run_scan(parse_scenario({
            **base, "model": {"kind": "caldirola_kanai", "m0": 1.0, "omega0": 1.0, "gamma": 0.6},
        })))
        custom = _rows(run_scan(parse_scenario({
            **base,
            "model": {
                "kind": "custom",
                "mass": "m0*exp(gamma*t)",
                "omega_sq": "w0^2",
                "force": "0",
                "params": {"m0": 1.0, "gamma": 0.6, "w0": 1.0},
            },
        })))
        assert len(named) == len(custom) == 3 * 41
        for a, b in zip(named, custom):
            assert a["t"] == b["t"]
            assert float(a["S"]) == pytest.approx(float(b["S"]), abs=1e-8)
            assert float(a["S_bar"]) == pytest.approx(float(b["S_bar"]), abs=1e-8)

    def test_free_particle_bounds_rejected(self):
        """Bounds need omega > 0, and the error names the grid point."""
        scenario = parse_scenario({
            "model": {"kind": "free"},
            "squeeze": {"r": 0.5, "theta": 0.0},
            "time": {"start": 0.0, "stop": 1.0, "count": 3},
            "outputs": ["S", "bounds"],
        })
        with pytest.raises(FrequencyZero, match="r=0.5"):
            run_scan(scenario)

    def test_t_star_needs_free_particle(self):
        """Requesting t_star for an oscillator is a config error."""
        with pytest.raises(ConfigError):
            run_scan(parse_scenario(_oscillator(outputs=["S", "t_star"])))

    def test_t_star_column_blank_without_minimum(self):
        """Pairs without an entropy minimum leave t_star empty."""
        scenario = parse_scenario({
            "model": {"kind": "free"},
            "squeeze": {"r": 0.5, "theta": "pi/2"},
            "time": {"start": 0.0, "stop": 1.0, "count": 2},
            "outputs": ["S", "t_star"],
        })
        assert all(row["t_star"] == "" for row in _rows(run_scan(scenario)))

    def test_prepare_scenario(self):
        """The reference mode is integrated once over the whole grid."""
        prepared = prepare_scenario(parse_scenario(_oscillator()))
        assert len(prepared.reference) == 9
        assert prepared.times[-1] == pytest.approx(2 * math.pi)
        assert prepared.masses == (1.0,) * 9


class TestTstar:
    """run_tstar output."""

    def test_free_particle_minimum(self):
        """r = 0.5, theta = 3 pi/2 reaches the floor at t* = tanh(1)."""
        rows = {float(row["r"]): row for row in _rows(run_tstar(load_preset("fig3")))}
        row = rows[0.5]
        assert float(row["t_star"]) == pytest.approx(math.tanh(1.0), rel=1e-12)
        assert float(row["S_t_star"]) == pytest.approx(ENTROPY_FLOOR, abs=1e-10)
        assert abs(float(row["t_grid_min"]) - math.tanh(1.0)) <= 0.01
        assert float(row["S_grid_min"]) >= float(row["S_t_star"]) - 1e-12

    def test_blank_without_minimum(self):
        """r = 0 and theta = pi/2 have no minimum time."""
        scenario = parse_scenario({
            "model": {"kind": "free"},
            "squeeze": {"r": {"start": 0.0, "stop": 1.0, "count": 2}, "theta": "pi/2"},
            "time": {"start": 0.0, "stop": 2.0, "count": 21},
        })
        rows = _rows(run_tstar(scenario))
        assert len(rows) == 2
        assert all(row["t_star"] == "" and row["S_t_star"] == "" for row in rows)
        assert all(row["t_grid_min"] == "0" or float(row["t_grid_min"]) == 0.0 for row in rows)

    def test_rejects_other_models(self):
        """tstar needs the free particle."""
        with pytest.raises(ConfigError):
            run_tstar(parse_scenario(_oscillator()))

    def test_rejects_reference_override(self):
        """tstar assumes the closed-form free reference."""
        scenario = parse_scenario({
            "model": {"kind": "free", "reference": {"u": [0.7071067811865476, 0.0], "du": [0.0, -0.7071067811865476]}},
            "time": {"start": 0.0, "stop": 1.0, "count": 2},
        })
        with pytest.raises(ConfigError):
            run_tstar(scenario)


class TestProbe:
    """run_probe output."""

    def test_free_particle(self):
        """The free S_bar never decreases."""
        scenario = parse_scenario({
            "model": {"kind": "free"},
            "squeeze": {"r": {"start": 0.0, "stop": 1.0, "count": 3}},
            "time": {"start": 0.0, "stop": 5.0, "count": 51},
        })
        rows = _rows(run_probe(scenario))
        assert [float(row["r"]) for row in rows] == [0.0, 0.5, 1.0]
        assert all(row["decreasing_points"] == "0" for row in rows)
        assert all(float(row["min_forward_difference"]) > 0 for row in rows)


class TestValidate:
    """run_validate reports."""

    def test_oscillator_passes(self):
        """A healthy oscillator scenario passes every check."""
        report = run_validate(parse_scenario(_oscillator()))
        text = report.render()
        assert report.passed, text
        assert text.endswith("RESULT PASSED\n")
        assert "PASS wronskian" in text
        assert "PASS closed-form vs ODE entropy" in text
        assert "NOTE printed bounds" in text

    def test_free_particle_passes(self):
        """The free preset passes and reports the t* and exponent checks."""
        report = run_validate(load_preset("fig3"))
        text = report.render()
        assert report.passed, text
        assert "PASS S(t*) at the floor" in text
        assert "PASS free S_bar with 1/2 ln(1 + T^2)" in text
        assert "SKIP S_bar upper bound" in text

    def test_oscillator_preset_floor_at_stated_tolerance(self):
        """The floor and bounds checks on one full oscillator period pass at 1e-10."""
        report = run_validate(load_preset("fig4"))
        text = report.render()
        assert report.passed, text
        floor = next(line for line in text.splitlines() if line.startswith("PASS entropy floor"))
        assert floor.endswith("tolerance=1.0e-10")
        assert "PASS S_bar bounds" in text
        assert "NOTE entropy integrations use RK45 with rel_tol=1.0e-12, abs_tol=1.0e-14" in text

    def test_custom_model_skips_closed_form(self):
        """Custom models have no closed form to compare."""
        report = run_validate(parse_scenario(_oscillator(model={
            "kind": "custom", "mass": "1", "omega_sq": "1 + 0.2*cos(t)",
        })))
        assert report.passed, report.render()
        assert "SKIP closed-form entropy" in report.render()

    def test_corrupted_reference_fails(self):
        """A reference mode scaled by 1.01 fails the Wronskian check."""
        scale = 1.01 / math.sqrt(2.0)
        report = run_validate(parse_scenario(_oscillator(model={
            "kind": "oscillator", "reference": {"u": [scale, 0.0], "du": [0.0, -scale]},
        })))
        assert not report.passed
        assert report.lines[0].startswith("FAIL wronskian: WronskianDriftExceeded")
        assert report.render().endswith("RESULT FAILED (1 check(s))\n")

    def test_report_lines(self):
        """check, skip and note produce the documented prefixes."""
        report = ValidationReport()
        assert report.check("a", 1e-12, 1e-10)
        assert not report.check("b", 1.0, 1e-10)
        report.skip("c", "why")
        report.note("d")
        assert [line.split()[0] for line in report.lines] == ["PASS", "FAIL", "SKIP", "NOTE"]
        assert report.failures == 1


class TestMain:
    """The command-line entry point and its exit codes."""

    def test_exit_codes(self):
        """Errors map onto the documented statuses."""
        assert exit_code_for(ConfigError("x")) == 2
        assert exit_code_for(ExpressionSyntaxError("bad", "1 +", 4)) == 2
        assert exit_code_for(OverdampedUnsupported("x")) == 2
        assert exit_code_for(FrequencyZero("x")) == 3
        assert exit_code_for(with_context(WronskianDriftExceeded("x", t=1.0, drift=0.1), t=1.0)) == 3
        assert exit_code_for(with_context(EntropyBelowFloor("x"), r=0.0, t=1.0)) == 3

    def test_scan_to_file(self, clean_env, write_config, tmp_path):
        """scan writes the CSV to --out and exits 0."""
        out = tmp_path / "scan.csv"
        assert main(["scan", "--config", write_config(_oscillator()), "--out", str(out), "--jobs", "2"]) == 0
        rows = _rows(out.read_text(encoding="utf-8"))
        assert len(rows) == 27

    def test_figure_four(self, clean_env, tmp_path):
        """The oscillator preset scans cleanly."""
        out = tmp_path / "fig4.csv"
        assert main(["figure", "4", "--out", str(out)]) == 0
        assert len(_rows(out.read_text(encoding="utf-8"))) == 11 * 501

    def test_tstar_to_stdout(self, clean_env, capsys):
        """figure 3 prints CSV on standard output and nothing else."""
        assert main(["figure", "3", "--log-level", "WARNING"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("r,theta,t,dx,dp,S,S_minus_floor")
        assert len(out.splitlines()) == 1 + 11 * 501

    def test_validate_pass(self, clean_env, write_config, capsys):
        """A passing validation exits 0."""
        assert main(["validate", "--config", write_config(_oscillator())]) == 0
        assert "RESULT PASSED" in capsys.readouterr().out

    def test_validate_fail(self, clean_env, write_config, capsys):
        """A failing validation exits 1."""
        scale = 1.01 / math.sqrt(2.0)
        config = write_config(_oscillator(model={
            "kind": "oscillator", "reference": {"u": [scale, 0.0], "du": [0.0, -scale]},
        }))
        assert main(["validate", "--config", config]) == 1
        assert "FAIL wronskian" in capsys.readouterr().out

    def test_overdamped(self, clean_env, write_config, capsys):
        """An overdamped Caldirola-Kanai model exits 2."""
        config = write_config(_oscillator(model={"kind": "caldirola_kanai", "omega0": 1.0, "gamma": 3.0}))
        assert main(["validate", "--config", config]) == 2
        assert "OverdampedUnsupported" in capsys.readouterr().err

    def test_bad_expression(self, clean_env, write_config, capsys):
        """A malformed custom expression exits 2 with the byte offset."""
        config = write_config(_oscillator(model={"kind": "custom", "mass": "1 + ", "omega_sq": "1"}))
        assert main(["scan", "--config", config]) == 2
        assert "offset 4" in capsys.readouterr().err

    def test_missing_config(self, clean_env, tmp_path, capsys):
        """A missing scenario file exits 2."""
        assert main(["scan", "--config", str(tmp_path / "absent.json")]) == 2
        assert "ConfigError" in capsys.readouterr().err

    def test_numerical_error(self, clean_env, write_config, capsys):
        """Bounds on the free particle exit 3."""
        config = write_config({
            "model": {"kind": "free"},
            "time": {"start": 0.0, "stop": 1.0, "count": 2},
            "outputs": ["S", "bounds"],
        })
        assert main(["scan", "--config", config]) == 3
        assert "FrequencyZero" in capsys.readouterr().err

    def test_bad_environment(self, monkeypatch, write_config):
        """An invalid environment setting exits 2."""
        monkeypatch.setenv("WAVEPACKET_JOBS", "zero")
        assert main(["scan", "--config", write_config(_oscillator())]) == 2

    def test_requires_config(self):
        """scan without --config is a usage error."""
        with pytest.raises(SystemExit):
            main(["scan"])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
