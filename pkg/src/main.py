"""Command-line entry point ``g2``."""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from src.analysis.formulas import FORMULAS, UnknownFormulaError, emit_formula
from src.analysis.latex_report import report_latex
from src.analysis.stability import (
    UnitAssumption,
    build_ledger,
    constants_check,
    net_factor,
    render_ledger,
)
from src.analysis.suite import UnknownSelectorError, collect_findings, exit_code, run_suite
from src.config import Settings, settings
from src.group.bigcell import (
    OutsideBigCellError,
    bruhat_gl2,
    decompose,
    homogeneity_certificate,
    symbolic_decomposition,
    x_alpha,
)
from src.group.levi import DomainKind, DomainPoint, NCoords, canonical_rep
from src.group.realization import (
    NEGATIVE_ROOT_COORDINATE,
    ROOT_COORDINATE,
    weyl_representative_table,
)
from src.group.roots import ROOTS
from src.ring.kernel import to_infix
from src.utils.filename import report_filename

log = logging.getLogger(__name__)

USAGE_ERRORS = (UnknownSelectorError, UnknownFormulaError, ValueError)


def _dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _texts(values: dict[str, Any]) -> dict[str, str]:
    return {name: to_infix(value) for name, value in values.items()}


def _parse_fractions(text: str, count: int, label: str) -> list[Fraction]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != count:
        raise ValueError(f"{label} must have {count} comma-separated values, got {text!r}")
    return [Fraction(p) for p in parts]


def _parse_kappa(text: str) -> tuple[int, int]:
    """``"3"`` or ``"1..6"``."""
    low, _, high = text.partition("..")
    kappa_min, kappa_max = int(low), int(high or low)
    if kappa_min < 1 or kappa_max < kappa_min:
        raise ValueError(f"kappa must be k or lo..hi with 1 <= lo <= hi, got {text!r}")
    return kappa_min, kappa_max


def _run_settings(args: argparse.Namespace) -> Settings:
    update: dict[str, Any] = {}
    if getattr(args, "p", None) is not None:
        update["prime"] = args.p
    if getattr(args, "samples", None) is not None:
        update["samples"] = args.samples
    if getattr(args, "seed", None) is not None:
        update["seed"] = args.seed
    if getattr(args, "kappa", None) is not None:
        update["kappa_min"], update["kappa_max"] = _parse_kappa(args.kappa)
    return settings.model_copy(update=update)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        log.info("wrote %s", path)
    else:
        print(text)


def _cmd_verify(args: argparse.Namespace) -> int:
    run = _run_settings(args)
    report = run_suite(
        args.selector,
        run.suite_config(),
        include_formulas=not args.no_formulas,
        schema_version=run.schema_version,
    )
    if args.format == "json":
        text = _dumps(report.model_dump(mode="json"))
    elif args.format == "latex":
        text = report_latex(report)
    else:
        lines = [f"{r.status.value.upper():<7} {r.check_id}  {r.detail}" for r in report.results]
        lines += [f"        reproduce: {r.reproduce}" for r in report.results if r.reproduce]
        lines.append(f"{report.passed} passed, {report.failed} failed, {report.skipped} skipped")
        text = "\n".join(lines)
    out = args.out
    if args.save and not out:
        out = str(run.report_dir / report_filename(args.selector, run.seed, args.format))
    _emit(text, out)
    return exit_code(report)


def _cmd_table(args: argparse.Namespace) -> int:
    if args.which == "roots":
        names = {**ROOT_COORDINATE, **NEGATIVE_ROOT_COORDINATE}
        rows = [
            {
                "root": root.label(),
                "coeff_alpha": root.coeff_alpha,
                "coeff_beta": root.coeff_beta,
                "height": root.height,
                "coordinate": names[root],
            }
            for root in ROOTS
        ]
    else:
        rows = weyl_representative_table()
    if args.format == "json":
        _emit(_dumps(rows), args.out)
    elif args.which == "roots":
        lines = [f"{r['root']:<12} {r['coordinate']}  height {r['height']}" for r in rows]
        _emit("\n".join(lines), args.out)
    else:
        lines = [f"{'/'.join(r['words']):<24} det {r['det']}" for r in rows]
        _emit("\n".join(lines), args.out)
    return 0


def _cmd_orbit(args: argparse.Namespace) -> int:
    n = NCoords(*_parse_fractions(args.n, 5, "--n"))
    rep = canonical_rep(n, DomainKind(args.target))
    payload = {
        "target": rep.rep.kind.value,
        "rep": _texts(rep.rep.coords.as_dict()),
        "u": to_infix(rep.u),
        "t": None if rep.t is None else to_infix(rep.t),
    }
    _emit(_dumps(payload), args.out)
    return 0


def _cmd_bigcell(args: argparse.Namespace) -> int:
    if args.symbolic:
        point = DomainPoint.symbolic()
        result = symbolic_decomposition()
    else:
        point = DomainPoint.d0(*_parse_fractions(args.point, 3, "--point"))
        result = decompose(point)
    payload: dict[str, Any] = {
        "m": [[to_infix(v) for v in row] for row in result.m.rows()],
        "det_m": to_infix(result.m.det()),
        "nprime": _texts(result.nprime.as_dict()),
        "nbar": _texts(result.nbar.as_dict()),
        "discriminant": to_infix(result.discriminant),
        "x_alpha": to_infix(x_alpha(point)),
    }
    try:
        payload["bruhat"] = _texts(asdict(bruhat_gl2(result.m)))
    except OutsideBigCellError as exc:
        payload["bruhat"] = str(exc)
    _emit(_dumps(payload), args.out)
    return 0


def _cmd_nbar(args: argparse.Namespace) -> int:
    run = _run_settings(args)
    report = run_suite("nbar.kappa_box", run.suite_config(), include_formulas=False)
    _emit(_dumps(report.model_dump(mode="json")), args.out)
    return exit_code(report)


def _cmd_stability(args: argparse.Namespace) -> int:
    ledger = build_ledger(homogeneity_certificate())
    ua = UnitAssumption(not args.non_unit)
    constants = constants_check()
    if args.format == "json":
        payload = {
            "rows": [
                {"name": r.name, "law": r.law, "exponent": r.exponent.label(), "source": r.source}
                for r in ledger.rows
            ],
            "net": net_factor(ledger, ua).label(),
            "t_is_unit": ua.t_is_unit,
            "constants": {
                "s_part": str(constants.s_part),
                "rho_part": str(constants.rho_part),
                "claimed_pairing": str(constants.claimed_pairing),
                "form_pairing": str(constants.form_pairing),
                "passed": constants.passed,
            },
        }
        _emit(_dumps(payload), args.out)
    else:
        _emit(render_ledger(ledger, ua), args.out)
    return 0 if constants.passed else 1


def _cmd_formula(args: argparse.Namespace) -> int:
    _emit(emit_formula(args.name, args.format), args.out)
    return 0


def _cmd_findings(args: argparse.Namespace) -> int:
    findings = collect_findings()
    if args.format == "json":
        _emit(_dumps([f.model_dump(mode="json") for f in findings]), args.out)
    else:
        _emit("\n".join(f"{f.finding_id}: {f.resolution}" for f in findings), args.out)
    return 0


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, default=None, help="residue characteristic")
    parser.add_argument("--kappa", default=None, help="kappa or range lo..hi")
    parser.add_argument("--samples", type=int, default=None, help="samples per property")
    parser.add_argument("--seed", type=int, default=None, help="master seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g2", description=settings.app_name)
    parser.add_argument("--log-level", default=None, help="override the configured log level")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run certification checks")
    verify.add_argument("selector", nargs="?", default="all", help="all, a group or globs")
    _add_run_flags(verify)
    verify.add_argument("--format", choices=("json", "text", "latex"), default="text")
    verify.add_argument("--out", default=None, help="write the report to this file")
    verify.add_argument("--save", action="store_true", help="write into the report directory")
    verify.add_argument("--no-formulas", action="store_true", help="omit formulas and findings")
    verify.set_defaults(handler=_cmd_verify)

    table = sub.add_parser("table", help="root or Weyl group table")
    table.add_argument("which", choices=("roots", "weyl"))
    table.add_argument("--format", choices=("json", "text"), default="text")
    table.add_argument("--out", default=None)
    table.set_defaults(handler=_cmd_table)

    orbit = sub.add_parser("orbit", help="orbit representatives in N'")
    orbit.add_argument("action", choices=("reduce",))
    orbit.add_argument("--n", required=True, help="x10,x11,x21,x31,x32")
    orbit.add_argument("--target", choices=("D", "D0"), default="D0")
    orbit.add_argument("--out", default=None)
    orbit.set_defaults(handler=_cmd_orbit)

    bigcell = sub.add_parser("bigcell", help="big cell decomposition")
    bigcell.add_argument("action", choices=("decompose",))
    bigcell.add_argument("--point", default="1,0,0", help="x21,x31,x32 on D0")
    bigcell.add_argument("--symbolic", action="store_true", help="decompose the generic point")
    bigcell.add_argument("--out", default=None)
    bigcell.set_defaults(handler=_cmd_bigcell)

    nbar = sub.add_parser("nbar", help="compact subgroups of Nbar")
    nbar.add_argument("action", choices=("certify",))
    _add_run_flags(nbar)
    nbar.add_argument("--out", default=None)
    nbar.set_defaults(handler=_cmd_nbar)

    stability = sub.add_parser("stability", help="integrand exponent ledger")
    stability.add_argument("action", choices=("audit",))
    stability.add_argument("--non-unit", action="store_true", help="keep the |t| exponents")
    stability.add_argument("--format", choices=("json", "text"), default="text")
    stability.add_argument("--out", default=None)
    stability.set_defaults(handler=_cmd_stability)

    formula = sub.add_parser("formula", help="emit a derived formula")
    formula.add_argument("name", help=", ".join(FORMULAS))
    formula.add_argument("--format", default="json", help="json or latex")
    formula.add_argument("--out", default=None)
    formula.set_defaults(handler=_cmd_formula)

    findings = sub.add_parser("findings", help="printed forms that differ from derived ones")
    findings.add_argument("--format", choices=("json", "text"), default="text")
    findings.add_argument("--out", default=None)
    findings.set_defaults(handler=_cmd_findings)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run ``g2``; returns 0 on success, 1 on a failed check, 2 on a usage error."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except USAGE_ERRORS as exc:
        log.error("%s", exc)
        print(f"g2: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
