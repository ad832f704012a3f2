"""
Exponent bookkeeping for the local coefficient integrand under the torus twist.

Replacing ``(x21, x31, x32)`` by ``(t x21, t x31, t^2 x32)`` changes each factor
of the integrand by a character of ``t``. Characters are never evaluated: a
factor's change is recorded as the exponents of ``omega_pi`` and ``omega`` and
the exponent of ``|t|`` (constant part and coefficient of ``s``). Every weight
is imported from the big-cell homogeneity certificate or the character
constants, never typed in here.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from src.group.bigcell import HomogeneityReport
from src.group.realization import character_constants
from src.ring.grading import SCALING_GRADING

log = logging.getLogger(__name__)

# coefficient of the s-linear argument printed in the gamma prefactor
PRINTED_GAMMA_COEFFICIENT = Fraction(40)

# the two printings of the character evaluated on x_alpha
CHARACTER_PRINTINGS = (
    "omega_pi^-1 (w0 omega_pi)(x_alpha), stated to equal omega_pi^2",
    "(omega_pi omega^2)^-2 (x_alpha)",
)


class MissingCertificateError(RuntimeError):
    """Raised when the ledger is built without a passed homogeneity certificate."""


@dataclass(frozen=True)
class CharExponent:
    """``omega_pi(t)^e_omega_pi * omega(t)^e_omega * |t|^(abs_const + abs_s * s)``."""

    e_omega_pi: int = 0
    e_omega: int = 0
    abs_const: Fraction = Fraction(0)
    abs_s: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "abs_const", Fraction(self.abs_const))
        object.__setattr__(self, "abs_s", Fraction(self.abs_s))

    def __add__(self, other: "CharExponent") -> "CharExponent":
        return CharExponent(
            self.e_omega_pi + other.e_omega_pi,
            self.e_omega + other.e_omega,
            self.abs_const + other.abs_const,
            self.abs_s + other.abs_s,
        )

    def invert_omega_pi(self) -> "CharExponent":
        """Image under ``omega_pi -> omega_pi^-1``."""
        return replace(self, e_omega_pi=-self.e_omega_pi)

    def without_absolute_value(self) -> "CharExponent":
        return CharExponent(self.e_omega_pi, self.e_omega)

    def label(self) -> str:
        parts = []
        if self.e_omega_pi:
            parts.append(f"omega_pi(t^{self.e_omega_pi})")
        if self.e_omega:
            parts.append(f"omega(t^{self.e_omega})")
        if self.abs_const or self.abs_s:
            exponent = str(self.abs_const)
            if self.abs_s:
                sign = "-" if self.abs_s < 0 else "+"
                exponent = f"{exponent} {sign} {abs(self.abs_s)}s"
            parts.append(f"|t|^({exponent})")
        return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class UnitAssumption:
    """``t`` ranges over units, so every power of ``|t|`` is 1."""

    t_is_unit: bool = True


@dataclass(frozen=True)
class LedgerRow:
    name: str
    law: str
    exponent: CharExponent
    source: str


@dataclass(frozen=True)
class IntegrandLedger:
    rows: tuple[LedgerRow, ...] = field(default_factory=tuple)

    def row(self, name: str) -> LedgerRow:
        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)


def build_ledger(certificate: Optional[HomogeneityReport]) -> IntegrandLedger:
    """Record how each integrand factor changes under the twist.

    Args:
        certificate: Passed homogeneity certificate supplying the weights of
            ``x_alpha`` and ``det m``

    Returns:
        One row per factor: gamma prefactor, J factor, character on ``x_alpha``,
        determinant twist, ``|det m|`` power and the measure

    Raises:
        MissingCertificateError: If the certificate is absent or failed.
    """
    if certificate is None or not certificate.passed:
        raise MissingCertificateError("build_ledger needs a passed homogeneity certificate")
    x_alpha_weight = certificate.weight("x_alpha")
    det_weight = certificate.weight("det_m")
    constants = character_constants()
    s_part = constants.hm_det_exponent
    rho_part = constants.rho_det_exponent
    measure_weight = sum(SCALING_GRADING.weights.values())

    rows = (
        LedgerRow(
            "gamma", "gamma(40s, omega_pi^2, psi)^-1 does not involve t", CharExponent(), "inert"
        ),
        LedgerRow("J", "J(n, f) is unchanged for t in H", CharExponent(), "inert"),
        LedgerRow(
            "x_alpha",
            f"(omega_pi omega^2)^-2 on t^{x_alpha_weight} x_alpha",
            CharExponent(-2 * x_alpha_weight, -4 * x_alpha_weight),
            "homogeneity:x_alpha",
        ),
        LedgerRow(
            "det_twist",
            f"omega(det m) with det m -> t^{det_weight} det m",
            CharExponent(0, det_weight),
            "homogeneity:det_m",
        ),
        LedgerRow(
            "abs_det",
            f"|det m|^({s_part}s + {rho_part}) with det m -> t^{det_weight} det m",
            CharExponent(abs_const=det_weight * rho_part, abs_s=det_weight * s_part),
            "homogeneity:det_m",
        ),
        LedgerRow(
            "measure",
            "dx21 dx31 dx32 scales by the Jacobian of the twist",
            CharExponent(abs_const=measure_weight),
            "grading",
        ),
    )
    log.debug("ledger rows: %s", [row.name for row in rows])
    return IntegrandLedger(rows)


def net_factor(ledger: IntegrandLedger, ua: UnitAssumption) -> CharExponent:
    """Sum of the ledger rows; the ``|t|`` part is dropped when ``t`` is a unit."""
    total = CharExponent()
    for row in ledger.rows:
        total = total + row.exponent
    return total.without_absolute_value() if ua.t_is_unit else total


def render_ledger(ledger: IntegrandLedger, ua: UnitAssumption) -> str:
    width = max((len(row.name) for row in ledger.rows), default=4)
    lines = [
        f"{row.name.ljust(width)}  {row.exponent.label():<40}  {row.law}" for row in ledger.rows
    ]
    lines.append(f"{'net'.ljust(width)}  {net_factor(ledger, ua).label()}")
    return "\n".join(lines)


@dataclass(frozen=True)
class ConstantsReport:
    s_part: Fraction
    rho_part: Fraction
    claimed_pairing: Fraction
    gamma_coefficient: Fraction
    gamma_consistent: bool
    form_pairing: Fraction
    exponent_consistent: bool
    z_exponent: Fraction
    character_printings: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.gamma_consistent and self.exponent_consistent


def constants_check() -> ConstantsReport:
    """Cross-check the constants of the ``|det m|`` power and the gamma prefactor.

    The gamma argument must be twice the claimed pairing (``40 = 2 * 20``); the
    exponent ``10s + 5/2`` splits into the s-part from the distinguished
    character and the rho-part from ``2 rho``. The pairing computed from the
    invariant form is reported alongside the claimed one.
    """
    constants = character_constants()
    report = ConstantsReport(
        s_part=constants.hm_det_exponent,
        rho_part=constants.rho_det_exponent,
        claimed_pairing=constants.claimed_tilde_alpha_pairing,
        gamma_coefficient=PRINTED_GAMMA_COEFFICIENT,
        gamma_consistent=PRINTED_GAMMA_COEFFICIENT == 2 * constants.claimed_tilde_alpha_pairing,
        form_pairing=constants.form_tilde_alpha_pairing,
        exponent_consistent=constants.consistent,
        z_exponent=constants.z_exponent,
        character_printings=CHARACTER_PRINTINGS,
    )
    log.info("constants: s-part %s, rho-part %s", report.s_part, report.rho_part)
    return report
