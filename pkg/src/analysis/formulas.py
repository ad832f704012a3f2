"""Derived formulas rendered as infix JSON or LaTeX."""

import json
from typing import Callable

from src.group.bigcell import nbar_closed_form, symbolic_decomposition, x_alpha
from src.group.levi import DomainPoint
from src.group.nbar import group_law
from src.ring.kernel import RatFn, latex_symbol, sym, to_infix, to_latex

FORMATS = ("json", "latex")


class UnknownFormulaError(ValueError):
    """Raised for a formula name or output format that is not known."""


def _nbar_table() -> dict[str, RatFn]:
    return nbar_closed_form(sym("x21"), sym("x31"), sym("x32")).as_dict()


def _m_entries_table() -> dict[str, RatFn]:
    m = symbolic_decomposition().m
    return {"a": m.a, "b": m.b, "c": m.c, "d": m.d, "det": m.det()}


def _x_alpha_table() -> dict[str, RatFn]:
    return {"x_alpha": x_alpha(DomainPoint.symbolic())}


FORMULAS: dict[str, Callable[[], dict[str, RatFn]]] = {
    "nbar_closed_form": _nbar_table,
    "m_entries": _m_entries_table,
    "x_alpha": _x_alpha_table,
    "group_law": lambda: dict(group_law()),
}


def formula_table(name: str) -> dict[str, RatFn]:
    try:
        builder = FORMULAS[name]
    except KeyError:
        raise UnknownFormulaError(
            f"unknown formula {name!r}; choose one of {', '.join(FORMULAS)}"
        ) from None
    return builder()


def formula_texts(name: str) -> dict[str, str]:
    return {key: to_infix(value) for key, value in formula_table(name).items()}


def _latex_label(key: str) -> str:
    if key in ("a", "b", "c", "d"):
        return f"m_{{{key}}}"
    if key == "det":
        return r"\det m"
    return latex_symbol(key)


def emit_formula(name: str, fmt: str = "json") -> str:
    """Render a derived formula.

    A single-entry formula renders in LaTeX as the bare expression; otherwise
    each entry is one ``label = expression`` line.

    Args:
        name: One of ``nbar_closed_form``, ``m_entries``, ``x_alpha``, ``group_law``
        fmt: ``json`` or ``latex``

    Returns:
        The rendered text

    Raises:
        UnknownFormulaError: For an unknown name or format.

    Example:
        >>> emit_formula("x_alpha", "latex")
        '\\\\frac{\\\\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}'
    """
    if fmt not in FORMATS:
        raise UnknownFormulaError(f"unknown format {fmt!r}; choose json or latex")
    table = formula_table(name)
    if fmt == "json":
        payload = {"formula": name, "entries": {k: to_infix(v) for k, v in table.items()}}
        return json.dumps(payload, indent=2, sort_keys=True)
    if len(table) == 1:
        return to_latex(next(iter(table.values())))
    return "\n".join(f"{_latex_label(key)} = {to_latex(value)}" for key, value in table.items())
