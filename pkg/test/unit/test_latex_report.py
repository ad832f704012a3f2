"""Unit tests for the LaTeX report renderer."""

from src.analysis.latex_report import report_latex, tex_escape
from src.model.models import CheckResult, CheckStatus, Finding, SuiteConfig, SuiteReport


def _report(**extra) -> SuiteReport:
    return SuiteReport(
        schema_version="1.0",
        selector="all",
        config=SuiteConfig(),
        results=[
            CheckResult(check_id="ring.ratfn_arith", status=CheckStatus.PASS, detail="ok"),
            CheckResult(
                check_id="zz.boom",
                status=CheckStatus.FAIL,
                detail="50% of x^2 & more",
                reproduce="g2 verify zz.boom --seed 7",
            ),
        ],
        **extra,
    )


class TestTexEscape:
    """Tests for tex_escape."""

    def test_special_characters(self):
        """Test that LaTeX specials are escaped."""
        assert tex_escape("a_b & 5%") == r"a\_b \& 5\%"
        assert tex_escape("{x}^2") == r"\{x\}\textasciicircum{}2"

    def test_plain_text(self):
        """Test that plain text is unchanged."""
        assert tex_escape("ring.vp") == "ring.vp"


class TestReportLatex:
    """Tests for report_latex."""

    def test_table_rows(self):
        """Test one escaped table row per result."""
        text = report_latex(_report())
        assert r"\texttt{ring.ratfn\_arith} & pass & ok \\" in text
        assert r"\texttt{zz.boom} & fail & 50\% of x\textasciicircum{}2 \& more \\" in text

    def test_reproduce_and_summary(self):
        """Test the reproduce line and the closing summary."""
        text = report_latex(_report())
        assert r"\texttt{g2 verify zz.boom --seed 7}" in text
        assert text.splitlines()[-1] == "1 passed, 1 failed, 0 skipped"

    def test_formulas_and_findings(self):
        """Test that embedded formulas become display math and findings a list."""
        finding = Finding(
            finding_id="nbar.y10", printed="a", derived="b", resolution="opposite sign"
        )
        text = report_latex(_report(formulas={"x_alpha": {}}, findings=[finding]))
        assert r"\paragraph{x\_alpha}" in text
        assert r"\[ \frac{\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}} \]" in text
        assert r"\item \texttt{nbar.y10}: opposite sign" in text
