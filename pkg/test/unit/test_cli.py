"""Unit tests for the g2 command line."""

import json

import pytest

from src.config import settings
from src.main import build_parser, main


def _json_out(capsys) -> object:
    return json.loads(capsys.readouterr().out)


class TestParser:
    """Tests for argument parsing."""

    def test_requires_command(self):
        """Test that a subcommand is required."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_verify_defaults(self):
        """Test the verify defaults."""
        args = build_parser().parse_args(["verify"])
        assert args.selector == "all"
        assert args.format == "text"
        assert args.p is None


class TestVerify:
    """Tests for g2 verify."""

    def test_json_report(self, capsys):
        """Test a passing run with a JSON report."""
        code = main(["verify", "ring.vp", "--samples", "5", "--format", "json", "--no-formulas"])
        payload = _json_out(capsys)
        assert code == 0
        assert payload["results"][0]["check_id"] == "ring.vp"
        assert payload["config"]["samples"] == 5

    def test_overrides(self, capsys):
        """Test that prime and kappa flags reach the config."""
        main(
            ["verify", "ring.vp", "--p", "7", "--kappa", "2..3", "--samples", "5"]
            + ["--format", "json", "--no-formulas"]
        )
        config = _json_out(capsys)["config"]
        assert (config["prime"], config["kappa_min"], config["kappa_max"]) == (7, 2, 3)

    def test_text_report(self, capsys):
        """Test the text summary line."""
        assert main(["verify", "ring.vp", "--samples", "5"]) == 0
        assert capsys.readouterr().out.splitlines()[-1] == "1 passed, 0 failed, 0 skipped"

    def test_latex_report(self, capsys):
        """Test the LaTeX report of a passing run."""
        argv = ["verify", "ring.vp", "--samples", "5", "--format", "latex", "--no-formulas"]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert r"\texttt{ring.vp} & pass" in out
        assert out.strip().splitlines()[-1] == "1 passed, 0 failed, 0 skipped"

    def test_unknown_selector(self):
        """Test that an unknown selector is a usage error."""
        assert main(["verify", "nope.*"]) == 2

    def test_composite_prime(self):
        """Test that --p 4 is a usage error."""
        assert main(["verify", "ring.vp", "--p", "4", "--samples", "5"]) == 2

    def test_bad_kappa(self):
        """Test that an inverted kappa range is a usage error."""
        assert main(["verify", "ring.vp", "--kappa", "3..1"]) == 2

    def test_out_file(self, tmp_path):
        """Test writing the report to a file."""
        target = tmp_path / "report.json"
        main(["verify", "ring.vp", "--samples", "5", "--format", "json", "--out", str(target)])
        assert json.loads(target.read_text())["selector"] == "ring.vp"

    def test_save(self, tmp_path, monkeypatch):
        """Test saving into the report directory."""
        monkeypatch.setattr(settings, "report_dir", tmp_path)
        main(["verify", "ring.vp", "--samples", "5", "--seed", "3", "--save"])
        assert (tmp_path / "ring_vp_seed3.txt").exists()


class TestSubcommands:
    """Tests for the remaining subcommands."""

    def test_formula_latex(self, capsys):
        """Test g2 formula x_alpha --format latex."""
        assert main(["formula", "x_alpha", "--format", "latex"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == r"\frac{\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}"

    def test_formula_unknown(self):
        """Test that an unknown formula is a usage error."""
        assert main(["formula", "nope"]) == 2

    def test_table_roots(self, capsys):
        """Test the root table."""
        assert main(["table", "roots", "--format", "json"]) == 0
        rows = _json_out(capsys)
        assert len(rows) == 12
        assert {row["coordinate"] for row in rows} >= {"x10", "y32"}

    def test_orbit_reduce(self, capsys):
        """Test reducing a point of N' to D0."""
        assert main(["orbit", "reduce", "--n", "2,4,1,1,1"]) == 0
        payload = _json_out(capsys)
        assert payload["rep"] == {"x10": "1", "x11": "0", "x21": "1/4", "x31": "1/8", "x32": "-1/8"}
        assert payload["t"] == "1/2"

    def test_orbit_outside_open_set(self):
        """Test that x10 = 0 is a usage error."""
        assert main(["orbit", "reduce", "--n", "0,1,1,1,1"]) == 2

    def test_bigcell_decompose(self, capsys):
        """Test the decomposition at (1, 0, 0)."""
        assert main(["bigcell", "decompose", "--point", "1,0,0"]) == 0
        payload = _json_out(capsys)
        assert payload["m"] == [["1", "0"], ["-3/4", "1"]]
        assert payload["x_alpha"] == "1/2"
        assert payload["bruhat"]["t1"] == "3/4"

    def test_stability_audit(self, capsys):
        """Test the ledger in JSON."""
        assert main(["stability", "audit", "--format", "json"]) == 0
        payload = _json_out(capsys)
        assert payload["net"] == "omega_pi(t^2) omega(t^2)"
        assert payload["constants"]["claimed_pairing"] == "20"

    def test_stability_non_unit(self, capsys):
        """Test that --non-unit keeps the |t| exponents."""
        main(["stability", "audit", "--non-unit", "--format", "json"])
        assert _json_out(capsys)["net"].endswith("|t|^(-1 - 20s)")

    def test_findings(self, capsys):
        """Test the findings listing."""
        assert main(["findings", "--format", "json"]) == 0
        ids = [f["finding_id"] for f in _json_out(capsys)]
        assert ids == sorted(ids)
        assert "nbar.y10" in ids
