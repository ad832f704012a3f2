"""LaTeX rendering of suite reports."""

import jinja2

from src.analysis.formulas import emit_formula
from src.model.models import SuiteReport

_TEX_SPECIAL = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}

REPORT_TEMPLATE = r"""\begin{tabular}{lll}
\hline
Check & Status & Detail \\
\hline
\BLOCK{for result in report.results}
\texttt{\VAR{result.check_id|tex}} & \VAR{result.status.value} & \VAR{result.detail|tex} \\
\BLOCK{endfor}
\hline
\end{tabular}
\BLOCK{for result in report.results if result.reproduce}

\noindent\texttt{\VAR{result.reproduce|tex}}
\BLOCK{endfor}
\BLOCK{for name, lines in formulas.items()}

\paragraph{\VAR{name|tex}}
\BLOCK{for line in lines}
\[ \VAR{line} \]
\BLOCK{endfor}
\BLOCK{endfor}
\BLOCK{if report.findings}

\begin{itemize}
\BLOCK{for finding in report.findings}
\item \texttt{\VAR{finding.finding_id|tex}}: \VAR{finding.resolution|tex}
\BLOCK{endfor}
\end{itemize}
\BLOCK{endif}

\VAR{report.passed} passed, \VAR{report.failed} failed, \VAR{report.skipped} skipped
"""


def tex_escape(text: str) -> str:
    return "".join(_TEX_SPECIAL.get(ch, ch) for ch in str(text))


def _create_latex_env() -> jinja2.Environment:
    """Jinja2 environment whose delimiters do not collide with LaTeX braces.

    Block tags are ``\\BLOCK{...}`` and variables ``\\VAR{...}``.
    """
    env = jinja2.Environment(
        block_start_string=r"\BLOCK{",
        block_end_string="}",
        variable_start_string=r"\VAR{",
        variable_end_string="}",
        comment_start_string=r"\#{",
        comment_end_string="}",
        trim_blocks=True,
        autoescape=False,
    )
    env.filters["tex"] = tex_escape
    return env


def report_latex(report: SuiteReport) -> str:
    """Render a report as a LaTeX fragment.

    The fragment holds a results table, the reproduce commands of failed
    checks, the embedded formulas as display math, the findings and a
    closing summary line.
    """
    formulas = {name: emit_formula(name, "latex").splitlines() for name in report.formulas}
    template = _create_latex_env().from_string(REPORT_TEMPLATE)
    return template.render(report=report, formulas=formulas).rstrip()
