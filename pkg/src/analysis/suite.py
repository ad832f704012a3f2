"""
Named certification checks and the suite runner.

Every check is registered under a ``group.name`` id together with the
operations it exercises. ``run_suite`` selects checks by glob, runs them in a
thread pool with one generator per check (seeded from the master seed and the
check id) and returns a ``SuiteReport`` whose results are sorted by id, so the
JSON output is stable for a fixed seed and configuration.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fnmatch import fnmatchcase
from fractions import Fraction
from typing import Any, Callable, Optional

import numpy as np

from src.analysis.formulas import FORMULAS, emit_formula, formula_texts
from src.analysis.stability import (
    CHARACTER_PRINTINGS,
    MissingCertificateError,
    UnitAssumption,
    build_ledger,
    constants_check,
    net_factor,
)
from src.group.bigcell import (
    D_VARIANTS,
    REFERENCE_NBAR,
    DiscriminantError,
    NbarCoords,
    OutsideBigCellError,
    bruhat_gl2,
    decompose,
    homogeneity_certificate,
    m_entries_from_forms,
    nbar_closed_form,
    nbar_matrix,
    solve_nbar,
    symbolic_decomposition,
    x_alpha,
)
from src.group.levi import (
    P_PATTERN,
    REFERENCE_P_PATTERN,
    DomainKind,
    DomainPoint,
    GL2Elem,
    NCoords,
    OutsideOpenSetError,
    SingularLeviError,
    canonical_rep,
    conj_UM,
    conj_UM_closed_form,
    conj_ZM,
    conj_ZM_closed_form,
    embed_M,
    jacobian_certificate,
    n_matrix,
    parabolic_element,
)
from src.group.nbar import (
    KappaBox,
    ResidueCharacteristicError,
    associativity_holds,
    generic_nbar,
    group_law,
    kappa_box_certificate,
    matching_readings,
    nbar_inverse,
    nbar_mul,
    trop_mul_bound,
)
from src.group.realization import (
    NEGATIVE_ROOT_COORDINATE,
    NEGATIVE_ROOT_SCALE,
    ROOT_COORDINATE,
    CertificationError,
    LieCoords,
    NotInRealizationError,
    NotPositiveRootError,
    NotUnipotentError,
    basis,
    bracket_table,
    cartan,
    character_constants,
    expected_representative,
    generic_character_functional,
    lie_from_matrix,
    lie_to_matrix,
    root_character_value,
    root_vector,
    simple_rep,
    solve_negative_root_scale,
    tilde_alpha_consistent,
    torus_element,
    w0,
    w0_inverse,
    weyl_action,
    weyl_rep,
    weyl_representative_table,
)
from src.group.roots import (
    ALPHA,
    ALPHA_CHAR,
    BETA_CHAR,
    LONG_WORD,
    ROOTS,
    W0_WORD,
    CharLattice,
    NotReducedError,
    Simple,
    act,
    bilinear_form,
    parse_word,
    weyl_group,
    word_label,
)
from src.matrix.mat7 import (
    Mat7,
    NotNilpotentError,
    SingularMatrixError,
    diag,
    exp_nilpotent,
    identity,
    log_unipotent,
    mat_inv,
    mat_mul,
    matches_pattern,
    zero,
)
from src.model.models import CheckResult, CheckStatus, Finding, SuiteConfig, SuiteReport
from src.ring.grading import SCALING_GRADING, GradingError, weighted_degree
from src.ring.kernel import (
    FIELD,
    DivisionByZeroError,
    VanishingDenominatorError,
    cross_equal,
    parse,
    ratfn_arith,
    substitute,
    sym,
    to_infix,
    to_rat,
)
from src.ring.padic import INFINITY, NotPrimeError, vp
from src.ring.sampling import (
    check_seed,
    random_nonzero_rat,
    random_poly,
    random_rat,
    random_ratfn,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

# every operation of the certifier; each must be exercised by a registered check
OPERATIONS = (
    "ratfn_arith",
    "substitute",
    "weighted_degree",
    "vp",
    "mat_mul",
    "mat_inv",
    "exp_nilpotent",
    "log_unipotent",
    "matches_pattern",
    "lie_to_matrix",
    "lie_from_matrix",
    "root_vector",
    "negative_root_vector",
    "weyl_rep",
    "weyl_action",
    "bilinear_form",
    "character_constants",
    "generic_character_functional",
    "embed_M",
    "conj_UM",
    "conj_ZM",
    "canonical_rep",
    "jacobian_certificate",
    "nbar_closed_form",
    "decompose",
    "bruhat_gl2",
    "x_alpha",
    "homogeneity_certificate",
    "solve_nbar",
    "nbar_mul",
    "trop_mul_bound",
    "kappa_box_certificate",
    "build_ledger",
    "net_factor",
    "constants_check",
    "run_suite",
    "emit_formula",
)


class UnknownSelectorError(ValueError):
    """Raised when a selector matches no registered check."""


@dataclass(frozen=True)
class CheckContext:
    config: SuiteConfig
    rng: np.random.Generator


@dataclass(frozen=True)
class Outcome:
    """Result of one check; ``passed=None`` marks a skipped check."""

    passed: Optional[bool]
    detail: str = ""
    artifacts: Optional[dict[str, Any]] = None


@dataclass(frozen=True)
class Check:
    check_id: str
    operations: tuple[str, ...]
    func: Callable[[CheckContext], Outcome]


CHECKS: dict[str, Check] = {}


def register(check_id: str, *operations: str):
    """Decorator adding a check function to the registry."""

    def decorator(func: Callable[[CheckContext], Outcome]):
        if check_id in CHECKS:
            raise ValueError(f"duplicate check id {check_id!r}")
        CHECKS[check_id] = Check(check_id, tuple(operations), func)
        return func

    return decorator


def operation_checks() -> dict[str, list[str]]:
    """Operation name -> ids of the checks that exercise it."""
    manifest: dict[str, list[str]] = {name: [] for name in OPERATIONS}
    for check in CHECKS.values():
        for name in check.operations:
            manifest.setdefault(name, []).append(check.check_id)
    return {name: sorted(ids) for name, ids in manifest.items()}


def _outcome(problems: list[str], ok: str, artifacts: Optional[dict] = None) -> Outcome:
    return Outcome(not problems, "; ".join(problems) if problems else ok, artifacts)


def _raises(exc_type: type[BaseException], func: Callable, *args) -> bool:
    try:
        func(*args)
    except exc_type:
        return True
    return False


# random invertible m with c != 0 for the Bruhat round trip
BRUHAT_SAMPLES = 100


def _light(config: SuiteConfig) -> int:
    """Sample count for the symbolic-heavy properties."""
    return max(1, config.samples // 10)


def _random_n(rng: np.random.Generator) -> NCoords:
    return NCoords(*(random_rat(rng) for _ in range(5)))


def _random_d0(rng: np.random.Generator) -> DomainPoint:
    while True:
        x21, x31, x32 = random_rat(rng), random_rat(rng), random_rat(rng)
        if x21**2 + x32:
            return DomainPoint.d0(x21, x31, x32)


def _random_gl2(rng: np.random.Generator, big_cell: bool = False) -> GL2Elem:
    while True:
        a, b, c, d = (random_rat(rng) for _ in range(4))
        if a * d - b * c and (c or not big_cell):
            return GL2Elem(a, b, c, d)


# ring


@register("ring.ratfn_arith", "ratfn_arith")
def _check_ratfn_arith(ctx: CheckContext) -> Outcome:
    problems = []
    x21, x32 = sym("x21"), sym("x32")
    disc = x21**2 + x32
    if ratfn_arith(x21, -x21, "add"):
        problems.append("x21 + (-x21) != 0")
    if ratfn_arith(ratfn_arith(disc, x21, "div"), x21, "mul") != disc:
        problems.append("(x21^2+x32)/x21 * x21 != x21^2+x32")
    unnormalized = FIELD.raw_new((-x32 * x21).numer, (disc * x21).numer)
    if not cross_equal(unnormalized, -x32 / disc):
        problems.append("cross-multiplication disagrees with the normalized quotient")
    if not _raises(DivisionByZeroError, ratfn_arith, x21, 0, "div"):
        problems.append("division by zero did not raise")

    for _ in range(ctx.config.samples):
        f, g, h = random_ratfn(ctx.rng), random_ratfn(ctx.rng), random_ratfn(ctx.rng)
        if (f + g) + h != f + (g + h) or f * (g + h) != f * g + f * h or f * g != g * f:
            problems.append(f"ring axiom fails for {to_infix(f)}, {to_infix(g)}, {to_infix(h)}")
            break
        if f and (g / f) * f != g:
            problems.append(f"division does not invert multiplication for {to_infix(f)}")
            break
    return _outcome(problems, f"examples and {ctx.config.samples} axiom cases hold")


@register("ring.substitute", "substitute")
def _check_substitute(ctx: CheckContext) -> Outcome:
    problems = []
    t = sym("t")
    f = parse("(1/2*x21 - x31)/(x21^2 + x32)")
    scaling = {"x21": t * sym("x21"), "x31": t * sym("x31"), "x32": t**2 * sym("x32")}
    twisted = substitute(f, scaling)
    if twisted != f / t:
        problems.append(f"scaling gives {to_infix(twisted)}, expected t^-1 f")
    if to_rat(substitute(f, {"x21": 1, "x31": 0, "x32": 0})) != Fraction(1, 2):
        problems.append("value at (1, 0, 0) is not 1/2")
    if not _raises(VanishingDenominatorError, substitute, parse("1/x32"), {"x32": 0}):
        problems.append("vanishing denominator did not raise")

    count = _light(ctx.config)
    for _ in range(count):
        f, g = random_ratfn(ctx.rng), random_ratfn(ctx.rng)
        bindings = {name: random_poly(ctx.rng) for name in ("x21", "x31", "x32")}
        try:
            product = substitute(f * g, bindings)
            total = substitute(f + g, bindings)
            left, right = substitute(f, bindings), substitute(g, bindings)
        except VanishingDenominatorError:
            continue
        if product != left * right or total != left + right:
            problems.append(f"substitution is not a homomorphism on {to_infix(f)}, {to_infix(g)}")
            break
    return _outcome(problems, f"examples and {count} homomorphism cases hold")


@register("ring.weighted_degree", "weighted_degree")
def _check_weighted_degree(ctx: CheckContext) -> Outcome:
    problems = []
    x21, x31, x32 = sym("x21"), sym("x31"), sym("x32")
    examples = {
        "x21^2 + x32": (x21**2 + x32, 2),
        "1": (FIELD.one, 0),
        "0": (FIELD.zero, 0),
        "y32 closed form": (nbar_closed_form(x21, x31, x32).y32, -2),
        "x21 + x32": (x21 + x32, None),
    }
    for label, (value, expected) in examples.items():
        got = weighted_degree(value, SCALING_GRADING)
        if got != expected:
            problems.append(f"degree of {label} is {got}, expected {expected}")
    if not _raises(GradingError, weighted_degree, sym("x10"), SCALING_GRADING):
        problems.append("unweighted symbol did not raise")

    for _ in range(ctx.config.samples):
        f, g = random_poly(ctx.rng, terms=1), random_poly(ctx.rng, terms=1)
        df, dg = weighted_degree(f, SCALING_GRADING), weighted_degree(g, SCALING_GRADING)
        if not f or not g or df is None or dg is None:
            continue
        if weighted_degree(f * g, SCALING_GRADING) != df + dg:
            problems.append(f"degree is not additive on {to_infix(f)}, {to_infix(g)}")
            break
    return _outcome(problems, "examples hold and degrees add on products")


@register("ring.vp", "vp")
def _check_vp(ctx: CheckContext) -> Outcome:
    problems = []
    p = ctx.config.prime
    cases = [
        (Fraction(1, p**2), p, -2),
        (Fraction(3, 4), 2, -2),
        (Fraction(3, 4), 3, 1),
        (Fraction(0), p, INFINITY),
    ]
    for value, prime, expected in cases:
        if vp(value, prime) != expected:
            problems.append(f"vp({value}, {prime}) = {vp(value, prime)}, expected {expected}")
    if not _raises(NotPrimeError, vp, 3, 4):
        problems.append("non-prime did not raise")

    for _ in range(ctx.config.samples):
        x = random_rat(ctx.rng, bound=50) * Fraction(p) ** int(ctx.rng.integers(-3, 4))
        y = random_rat(ctx.rng, bound=50) * Fraction(p) ** int(ctx.rng.integers(-3, 4))
        vx, vy, vs = vp(x, p), vp(y, p), vp(x + y, p)
        if vs < min(vx, vy) or (vx != vy and vs != min(vx, vy)):
            problems.append(f"ultrametric inequality fails for {x}, {y}")
            break
    return _outcome(problems, f"examples and {ctx.config.samples} ultrametric cases hold")


# mat7


@register("mat7.mat_mul", "mat_mul")
def _check_mat_mul(ctx: CheckContext) -> Outcome:
    problems = []
    w_alpha, w_beta = simple_rep(Simple.ALPHA), simple_rep(Simple.BETA)
    if mat_mul(w_beta, w_beta) != diag([-1, -1, 1, -1, -1, 1, 1]):
        problems.append("w_beta^2 != diag(-1,-1,1,-1,-1,1,1)")
    cube = identity()
    for _ in range(3):
        cube = mat_mul(cube, mat_mul(w_alpha, w_beta))
    if cube != weyl_rep(LONG_WORD):
        problems.append("w_l != (w_alpha w_beta)^3")
    if cube != expected_representative("w_long"):
        problems.append("w_l differs from the expected representative")
    return _outcome(problems, "w_beta^2 and w_l = (w_alpha w_beta)^3 hold")


@register("mat7.mat_inv", "mat_inv")
def _check_mat_inv(ctx: CheckContext) -> Outcome:
    problems = []
    product = mat_mul(weyl_rep(LONG_WORD), mat_inv(simple_rep(Simple.BETA)))
    if product != expected_representative("w_0"):
        problems.append("w_l w_beta^-1 differs from the expected w_0")
    if not _raises(SingularMatrixError, mat_inv, zero()):
        problems.append("singular matrix did not raise")
    for _ in range(_light(ctx.config)):
        n = n_matrix(_random_n(ctx.rng))
        if mat_mul(n, mat_inv(n)) != identity():
            problems.append("unipotent inverse is wrong")
            break
    return _outcome(problems, "w_l w_beta^-1 = w_0 and inverses hold")


@register("mat7.exp_log", "exp_nilpotent", "log_unipotent")
def _check_exp_log(ctx: CheckContext) -> Outcome:
    problems = []
    if not _raises(NotNilpotentError, exp_nilpotent, cartan(1, 0)):
        problems.append("exp of a Cartan element did not raise")
    if not _raises(NotNilpotentError, log_unipotent, w0()):
        problems.append("log of w0 did not raise")
    g, g_inv = w0(), w0_inverse()
    count = _light(ctx.config)
    for _ in range(count):
        X = lie_to_matrix(_random_n(ctx.rng).to_lie())
        E = exp_nilpotent(X)
        if mat_mul(E, exp_nilpotent(-X)) != identity():
            problems.append("exp(X) exp(-X) != I")
            break
        if log_unipotent(E) != X:
            problems.append("log(exp(X)) != X")
            break
        conjugated = mat_mul(mat_mul(g, X), g_inv)
        if mat_mul(mat_mul(g, E), g_inv) != exp_nilpotent(conjugated):
            problems.append("exp is not conjugation-equivariant")
            break
    return _outcome(problems, f"{count} exponentials invert and commute with conjugation")


@register("mat7.p_shape", "matches_pattern")
def _check_p_shape(ctx: CheckContext) -> Outcome:
    problems = []
    point = DomainPoint.d0(1, 0, 0)
    product = mat_mul(
        mat_mul(w0_inverse(), n_matrix(point.coords)),
        nbar_matrix(-nbar_closed_form(1, 0, 0)),
    )
    if not matches_pattern(identity(), P_PATTERN):
        problems.append("I does not match the shape of P")
    if not matches_pattern(product, P_PATTERN):
        problems.append("w0^-1 exp(n) exp(nbar)^-1 does not match the shape of P")
    if matches_pattern(w0(), P_PATTERN):
        problems.append("w0 matches the shape of P")
    x10_only = n_matrix(NCoords(x10=1))
    printed_rejects = not matches_pattern(x10_only, REFERENCE_P_PATTERN)
    if not printed_rejects:
        problems.append("exp(X10) fits the printed shape; the (2,5) correction is unneeded")
    artifacts = {
        "pattern": P_PATTERN.to_rows(),
        "printed_differs_at": [list(c) for c in P_PATTERN.differences(REFERENCE_P_PATTERN)],
    }
    return _outcome(problems, "shape of P certified; printed shape rejects exp(X10)", artifacts)


# g2 core


@register("g2.lie_realization", "lie_to_matrix", "lie_from_matrix")
def _check_lie_realization(ctx: CheckContext) -> Outcome:
    problems = []
    for name, matrix in basis().items():
        if lie_from_matrix(matrix) != LieCoords(**{name: 1}):
            problems.append(f"basis element {name} does not read back")
    table = bracket_table()
    if len(table) != 91:
        problems.append(f"{len(table)} brackets instead of 91")
    if not _raises(NotInRealizationError, lie_from_matrix, Mat7.from_entries({(0, 6): 1})):
        problems.append("matrix off the realization did not raise")
    return _outcome(problems, "14 basis elements read back and 91 brackets close")


@register("g2.root_scaling", "root_vector", "negative_root_vector")
def _check_root_scaling(ctx: CheckContext) -> Outcome:
    problems = []
    h1, h2 = sym("a"), sym("b")
    h = torus_element(h1, h2)
    h_inv = torus_element(1 / h1, 1 / h2)
    names = {**ROOT_COORDINATE, **NEGATIVE_ROOT_COORDINATE}
    for root in ROOTS:
        X = basis()[names[root]]
        scaled = X.scale(root_character_value(root, h1, h2))
        if mat_mul(mat_mul(h, X), h_inv) != scaled:
            problems.append(f"torus does not scale the {root.label()} root space by its character")
    for letter in Simple:
        if solve_negative_root_scale(letter) != NEGATIVE_ROOT_SCALE[letter]:
            problems.append(f"normalizing scale for {letter.value} changed")
    if not _raises(NotPositiveRootError, root_vector, -ALPHA, 1):
        problems.append("negative root accepted by root_vector")
    return _outcome(problems, "12 root spaces scale by their characters; scales are -1")


@register("g2.weyl_rep", "weyl_rep")
def _check_weyl_rep(ctx: CheckContext) -> Outcome:
    problems = []
    computed = {
        "w_alpha": simple_rep(Simple.ALPHA),
        "w_beta": simple_rep(Simple.BETA),
        "w_long": weyl_rep(LONG_WORD),
        "w_0": w0(),
    }
    for name, matrix in computed.items():
        if matrix != expected_representative(name):
            problems.append(f"{name} differs from its expected matrix")
    if weyl_rep(W0_WORD) != w0():
        problems.append("word ababa does not give w0")
    if not _raises(NotReducedError, weyl_rep, parse_word("a,a")):
        problems.append("non-reduced word accepted")
    table = weyl_representative_table()
    if len(table) != 12:
        problems.append(f"{len(table)} Weyl elements instead of 12")
    if not all(row["well_defined"] for row in table):
        problems.append("reduced words of one element give different representatives")
    if not all(row["det"] in ("1", "-1") for row in table):
        problems.append("a representative has determinant other than +-1")
    return _outcome(problems, "representatives match and do not depend on the reduced word")


@register("g2.weyl_action", "weyl_action")
def _check_weyl_action(ctx: CheckContext) -> Outcome:
    problems = []
    if act((Simple.ALPHA,), BETA_CHAR) != CharLattice(3, 1):
        problems.append("s_alpha(beta) != 3 alpha + beta")
    if act((Simple.BETA,), ALPHA_CHAR) != CharLattice(1, 1):
        problems.append("s_beta(alpha) != alpha + beta")
    for words in weyl_group().values():
        for chi in (ALPHA_CHAR, BETA_CHAR):
            try:
                weyl_action(words[0], chi)
            except CertificationError as exc:
                problems.append(str(exc))
    for _ in range(_light(ctx.config)):
        length = int(ctx.rng.integers(0, 11))
        bits = ctx.rng.integers(0, 2, length)
        word = tuple(Simple.ALPHA if bit else Simple.BETA for bit in bits)
        try:
            weyl_action(word, CharLattice(1, 1))
        except (CertificationError, NotReducedError) as exc:
            problems.append(f"word {word_label(word)}: {exc}")
            break
    return _outcome(problems, "reflections agree with conjugation, reduced or not")


@register("g2.bilinear_form", "bilinear_form")
def _check_bilinear_form(ctx: CheckContext) -> Outcome:
    problems = []
    if bilinear_form(ALPHA_CHAR, ALPHA_CHAR) != 1 or bilinear_form(BETA_CHAR, BETA_CHAR) != 3:
        problems.append("root lengths are not (1, 3)")
    for words in weyl_group().values():
        w = words[0]
        for first in ROOTS:
            for second in ROOTS:
                image = bilinear_form(act(w, first.character), act(w, second.character))
                if image != bilinear_form(first.character, second.character):
                    problems.append("form is not Weyl-invariant")
                    return _outcome(problems, "")
    return _outcome(problems, "form is invariant under all 12 Weyl elements")


@register("g2.character_constants", "character_constants")
def _check_character_constants(ctx: CheckContext) -> Outcome:
    problems = []
    constants = character_constants()
    expected = {
        "two_rho": CharLattice(10, 5),
        "det_character": CharLattice(2, 1),
        "rho_det_exponent": Fraction(5, 2),
        "hm_det_exponent": Fraction(10),
        "z_exponent": Fraction(10),
        "tilde_alpha_factor": Fraction(4),
        "form_rho_pairing": Fraction(5, 2),
        "form_tilde_alpha_pairing": Fraction(10),
    }
    for name, value in expected.items():
        if getattr(constants, name) != value:
            problems.append(f"{name} = {getattr(constants, name)}, expected {value}")
    if constants.tilde_alpha != CharLattice(20, 10):
        problems.append(f"tilde alpha = {constants.tilde_alpha.label()}, expected 20α+10β")
    if not constants.consistent:
        problems.append("hm exponent is not twice the 2 rho exponent")
    three_rho = constants.two_rho * Fraction(3, 2)
    if tilde_alpha_consistent(three_rho, constants.two_rho, constants.det_character):
        problems.append("consistency accepts 3 rho")
    artifacts = {
        "two_rho": constants.two_rho.label(),
        "rho_det_exponent": str(constants.rho_det_exponent),
        "hm_det_exponent": str(constants.hm_det_exponent),
        "claimed_tilde_alpha_pairing": str(constants.claimed_tilde_alpha_pairing),
        "form_tilde_alpha_pairing": str(constants.form_tilde_alpha_pairing),
    }
    return _outcome(problems, "2 rho = 5 det; exponents 5/2, 10, 10", artifacts)


@register("g2.generic_character", "generic_character_functional")
def _check_generic_character(ctx: CheckContext) -> Outcome:
    problems = []
    for _ in range(_light(ctx.config)):
        values = {name: random_rat(ctx.rng) for name in ("x01", "x10", "x11", "x21", "x31")}
        u = exp_nilpotent(lie_to_matrix(LieCoords(**values)))
        if generic_character_functional(u) != values["x01"] + values["x10"]:
            problems.append("functional is not x01 + x10")
            break
    if not _raises(NotUnipotentError, generic_character_functional, w0()):
        problems.append("w0 accepted as unipotent")
    return _outcome(problems, "functional reads x01 + x10 on U")


# levi


@register("levi.embed_M", "embed_M", "matches_pattern")
def _check_embed_M(ctx: CheckContext) -> Outcome:
    problems = []
    if not _raises(SingularLeviError, embed_M, [[1, 2], [2, 4]]):
        problems.append("singular A accepted")
    for _ in range(_light(ctx.config)):
        A, B = _random_gl2(ctx.rng), _random_gl2(ctx.rng)
        if embed_M(A @ B) != mat_mul(embed_M(A), embed_M(B)):
            problems.append("embed_M is not a homomorphism")
            break
        if not matches_pattern(parabolic_element(A, _random_n(ctx.rng)), P_PATTERN):
            problems.append("m n leaves the shape of P")
            break
    return _outcome(problems, "embed_M is a homomorphism into the shape of P")


def _generic_n() -> NCoords:
    return NCoords(*(sym(name) for name in ("x10", "x11", "x21", "x31", "x32")))


@register("levi.conj_UM", "conj_UM")
def _check_conj_UM(ctx: CheckContext) -> Outcome:
    problems = []
    n, x, t = _generic_n(), sym("x"), sym("t")
    if conj_UM(x, n) != conj_UM_closed_form(x, n):
        problems.append("U_M conjugation differs from (x10, x x10 + x11, x21, x31, x x31 + x32)")
    if conj_ZM(t, conj_UM(x, n)) != conj_UM(x, conj_ZM(t, n)):
        problems.append("Z_M and U_M conjugations do not commute")
    return _outcome(problems, "symbolic U_M conjugation matches its closed form")


@register("levi.conj_ZM", "conj_ZM")
def _check_conj_ZM(ctx: CheckContext) -> Outcome:
    problems = []
    n, t = _generic_n(), sym("t")
    if conj_ZM(t, n) != conj_ZM_closed_form(t, n):
        problems.append("Z_M conjugation weights are not (1, 1, 2, 3, 3)")
    if not _raises(ValueError, conj_ZM, 0, n):
        problems.append("t = 0 accepted")
    return _outcome(problems, "Z_M weights (1, 1, 2, 3, 3)")


@register("levi.canonical_rep", "canonical_rep")
def _check_canonical_rep(ctx: CheckContext) -> Outcome:
    problems = []
    if not _raises(OutsideOpenSetError, canonical_rep, NCoords(0, 1, 1, 1, 1), DomainKind.D0):
        problems.append("x10 = 0 accepted")
    for _ in range(_light(ctx.config)):
        values = [random_rat(ctx.rng) for _ in range(4)]
        n = NCoords(random_nonzero_rat(ctx.rng), *values)
        rep = canonical_rep(n, DomainKind.D0)
        if conj_ZM(rep.t, conj_UM(rep.u, n)) != rep.rep.coords:
            problems.append("representative is not in the orbit")
            break
        again = canonical_rep(rep.rep.coords, DomainKind.D0)
        if again.u != 0 or again.t != 1 or again.rep != rep.rep:
            problems.append("reduction is not idempotent")
            break
        if canonical_rep(n, DomainKind.D).rep.coords.x10 != n.x10:
            problems.append("reduction to D moved x10")
            break
    return _outcome(problems, "representatives are unique and idempotent")


@register("levi.jacobian", "jacobian_certificate")
def _check_jacobian(ctx: CheckContext) -> Outcome:
    problems = []
    artifacts = {}
    for kind in DomainKind:
        certificate = jacobian_certificate(kind)
        artifacts[kind.value] = {
            "jacobian": to_infix(certificate.jacobian),
            "expected": to_infix(certificate.expected),
            "note": certificate.note,
        }
        if not certificate.passed:
            problems.append(f"Jacobian on {kind.value} is {to_infix(certificate.jacobian)}")
    return _outcome(problems, "Jacobians are +-x10 on D and +-t^9 on D0", artifacts)


# bigcell


@register("bigcell.nbar_closed_form", "nbar_closed_form", "solve_nbar")
def _check_nbar_closed_form(ctx: CheckContext) -> Outcome:
    problems = []
    half, three_quarters = Fraction(1, 2), Fraction(3, 4)
    if nbar_closed_form(1, 0, 0).values() != (0, half, 1, 0, three_quarters):
        problems.append("closed form at (1, 0, 0) is not (0, 1/2, 1, 0, 3/4)")
    if not _raises(DiscriminantError, nbar_closed_form, 0, 1, 0):
        problems.append("vanishing discriminant accepted")
    point = DomainPoint.symbolic(DomainKind.D)
    c = point.coords
    if nbar_closed_form(c.x21, c.x31, c.x32, x10=c.x10) != solve_nbar(point):
        problems.append("general-x10 closed forms disagree with the solver")
    return _outcome(problems, "closed forms certified by the solver on D")


@register("bigcell.decompose", "decompose")
def _check_decompose(ctx: CheckContext) -> Outcome:
    problems = []
    m = decompose(DomainPoint.d0(1, 0, 0)).m
    if m.rows() != [[1, 0], [Fraction(-3, 4), 1]]:
        problems.append(f"m at (1, 0, 0) is {m.rows()}")
    symbolic = symbolic_decomposition()
    if symbolic.m.det() != 1 / parse("x21^2 + x32"):
        problems.append("det m != 1/D")
    if symbolic.m.c != parse("-(3/4*x21^2 + x31^2 + x32)/(x21^2 + x32)^2"):
        problems.append("c != -(3/4 x21^2 + x31^2 + x32)/D^2")
    if m_entries_from_forms(symbolic.nbar) != {
        "a": symbolic.m.a,
        "b": symbolic.m.b,
        "c": symbolic.m.c,
        "d": symbolic.m.d,
    }:
        problems.append("entry forms in the y coordinates disagree with m")
    for _ in range(ctx.config.bigcell_points):
        point = _random_d0(ctx.rng)
        if decompose(point).nbar != solve_nbar(point):
            problems.append(f"decomposition disagrees with the solver at {point.coords}")
            break
    degenerate = [DomainPoint.d0(0, 1, 2), DomainPoint.d0(3, -1, 0)]
    for point in degenerate:
        decompose(point)
    return _outcome(
        problems, f"symbolic and {ctx.config.bigcell_points} random decompositions certified"
    )


@register("bigcell.bruhat_gl2", "bruhat_gl2")
def _check_bruhat(ctx: CheckContext) -> Outcome:
    problems = []
    q = Fraction
    cases = [
        (GL2Elem(1, 0, q(-3, 4), 1), (q(-4, 3), q(-4, 3), q(3, 4), q(4, 3))),
        (GL2Elem(-1, 0, q(-5, 4), -1), (q(4, 5), q(4, 5), q(5, 4), q(4, 5))),
        (GL2Elem(0, 1, -1, 0), (0, 0, 1, 1)),
    ]
    for m, expected in cases:
        bruhat = bruhat_gl2(m)
        got = (bruhat.u1_entry, bruhat.u2_entry, bruhat.t1, bruhat.t2)
        if got != expected:
            problems.append(f"Bruhat factors of {m.rows()} are {got}")
    for _ in range(BRUHAT_SAMPLES):
        m = _random_gl2(ctx.rng, big_cell=True)
        try:
            if bruhat_gl2(m).product() != m:
                problems.append(f"Bruhat factors of {m.rows()} do not multiply back")
        except CertificationError as exc:
            problems.append(str(exc))
        if problems:
            break
    if not _raises(OutsideBigCellError, bruhat_gl2, GL2Elem.identity()):
        problems.append("c = 0 accepted")
    return _outcome(problems, f"Bruhat factors multiply back on {BRUHAT_SAMPLES} random m")


@register("bigcell.x_alpha", "x_alpha")
def _check_x_alpha(ctx: CheckContext) -> Outcome:
    problems = []
    value = x_alpha(DomainPoint.symbolic())
    if value != parse("(1/2*x21 - x31)/(x21^2 + x32)"):
        problems.append(f"x_alpha is {to_infix(value)}")
    x_alpha(DomainPoint.symbolic(DomainKind.D))
    return _outcome(problems, "formula agrees with w0^-1 nbar w0 on D and D0")


@register("bigcell.homogeneity", "homogeneity_certificate")
def _check_homogeneity(ctx: CheckContext) -> Outcome:
    report = homogeneity_certificate()
    failed = [
        f"{c.name}: {c.computed} != {c.expected}" for c in report.claims if not c.passed
    ]
    if not report.twist_consistent:
        failed.append("y-weights disagree with the torus twist")
    artifacts = {"weights": {c.name: c.computed for c in report.claims}}
    return _outcome(failed, "every weight computed as claimed", artifacts)


@register("bigcell.solve_nbar", "solve_nbar")
def _check_solve_nbar(ctx: CheckContext) -> Outcome:
    problems = []
    examples = {
        (1, 0, 0): (0, Fraction(1, 2), 1, 0, Fraction(3, 4)),
        (2, 1, 1): (Fraction(1, 5), 0, Fraction(2, 5), Fraction(-1, 25), Fraction(1, 5)),
    }
    for point, expected in examples.items():
        got = solve_nbar(DomainPoint.d0(*point)).values()
        if got != expected:
            problems.append(f"solve_nbar{point} = {got}")
    if not _raises(DiscriminantError, solve_nbar, DomainPoint.d0(0, 1, 0)):
        problems.append("vanishing discriminant accepted")
    for _ in range(ctx.config.bigcell_points):
        point = _random_d0(ctx.rng)
        c = point.coords
        if solve_nbar(point) != nbar_closed_form(c.x21, c.x31, c.x32):
            problems.append(f"solver and closed form disagree at {c}")
            break
    return _outcome(problems, "solver reproduces the examples and the closed forms")


# nbar


@register("nbar.group_law", "nbar_mul")
def _check_group_law(ctx: CheckContext) -> Outcome:
    problems = []
    law = group_law()
    expected = {
        "z10": "y10 + yp10",
        "z11": "y11 + yp11",
        "z21": "y11*yp10 - y10*yp11 + y21 + yp21",
    }
    for name, text in expected.items():
        if law[name] != parse(text):
            problems.append(f"{name} = {to_infix(law[name])}")
    readings = matching_readings()
    if readings != {"z31": ["y10'"], "z32": ["y21'"]}:
        problems.append(f"unexpected readings {readings}")
    generic = generic_nbar()
    if nbar_inverse(generic) != -generic:
        problems.append("inverse is not negation")
    for _ in range(_light(ctx.config)):
        y = NbarCoords(*(random_rat(ctx.rng) for _ in range(5)))
        if nbar_mul(y, -y) != NbarCoords():
            problems.append("y (-y) is not the identity")
            break
    artifacts = {name: to_infix(value) for name, value in law.items()}
    return _outcome(problems, "group law derived; printed forms matched", artifacts)


@register("nbar.associativity", "nbar_mul")
def _check_associativity(ctx: CheckContext) -> Outcome:
    ok = associativity_holds()
    return Outcome(ok, "associative in 15 variables" if ok else "group law is not associative")


@register("nbar.trop_mul_bound", "trop_mul_bound")
def _check_trop_mul_bound(ctx: CheckContext) -> Outcome:
    problems = []
    box1, box2 = KappaBox(1, 5), KappaBox(2, 5)
    if trop_mul_bound(box1.bounds, box1.bounds, 5).dominates(box1.bounds):
        problems.append("kappa = 1 certified closed")
    if not trop_mul_bound(box2.bounds, box2.bounds, 5).dominates(box2.bounds):
        problems.append("kappa = 2 not certified closed")
    if not _raises(ResidueCharacteristicError, trop_mul_bound, box1.bounds, box1.bounds, 3):
        problems.append("plain mode accepted p = 3")
    aware = trop_mul_bound(box1.bounds, box1.bounds, 3, constant_aware=True)
    return _outcome(
        problems,
        "least closed kappa is 2 at p = 5",
        {"constant_aware_p3_kappa1": [str(v) for v in aware.values()]},
    )


@register("nbar.kappa_box", "kappa_box_certificate")
def _check_kappa_box(ctx: CheckContext) -> Outcome:
    config = ctx.config
    if not config.kappa_range:
        return Outcome(None, f"empty kappa range {config.kappa_min}..{config.kappa_max}")
    report = kappa_box_certificate(
        config.kappa_range,
        config.prime,
        config.samples,
        config.u1_valuation,
        seed=int(ctx.rng.integers(0, 2**31)),
        boundary_samples=config.boundary_samples,
    )
    artifacts = {
        "p": report.p,
        "constant_aware": report.constant_aware,
        "minimal_certified_kappa": report.minimal_certified_kappa,
        "kappa0": report.kappa0,
        "kappa0_closed_form": report.kappa0_closed_form,
        "kappa0_bound": report.kappa0_bound,
        "zm_exponents": list(report.zm_exponents),
        "soundness_violations": report.soundness_violations,
        "rows": [
            {
                "kappa": row.kappa,
                "bounds": [str(v) for v in row.bounds.values()],
                "product_bounds": [str(v) for v in row.product_bounds.values()],
                "closed": row.closed,
                "u1_stable": row.u1_stable,
                "u1_bound_stable": row.u1_bound_stable,
                "sampled_products": row.sampled_products,
                "sampled_conjugates": row.sampled_conjugates,
                "conjugate_violations": row.conjugate_violations,
            }
            for row in report.rows
        ],
    }
    detail = (
        f"least closed kappa {report.minimal_certified_kappa}, kappa0 {report.kappa0}"
        if report.passed
        else "box certificate failed"
    )
    return Outcome(report.passed, detail, artifacts)


# stability


@register("stability.ledger", "build_ledger", "net_factor")
def _check_ledger(ctx: CheckContext) -> Outcome:
    problems = []
    if not _raises(MissingCertificateError, build_ledger, None):
        problems.append("ledger built without a certificate")
    ledger = build_ledger(homogeneity_certificate())
    unit = net_factor(ledger, UnitAssumption(True))
    if (unit.e_omega_pi, unit.e_omega, unit.abs_const, unit.abs_s) != (2, 2, 0, 0):
        problems.append(f"net factor for units is {unit.label()}")
    general = net_factor(ledger, UnitAssumption(False))
    if (general.abs_const, general.abs_s) != (-1, -20):
        problems.append(f"|t| part is {general.label()}")
    if net_factor(ledger, UnitAssumption(True)).invert_omega_pi().invert_omega_pi() != unit:
        problems.append("omega_pi inversion is not an involution")
    artifacts = {row.name: row.exponent.label() for row in ledger.rows}
    artifacts["net"] = unit.label()
    return _outcome(problems, "net factor omega_pi(t^2) omega(t^2) on units", artifacts)


@register("stability.constants", "constants_check")
def _check_constants(ctx: CheckContext) -> Outcome:
    report = constants_check()
    problems = []
    if not report.gamma_consistent:
        problems.append("gamma coefficient is not twice the claimed pairing")
    if not report.exponent_consistent:
        problems.append("|det m| exponent does not split as 10s + 5/2")
    artifacts = {
        "s_part": str(report.s_part),
        "rho_part": str(report.rho_part),
        "claimed_pairing": str(report.claimed_pairing),
        "form_pairing": str(report.form_pairing),
    }
    return _outcome(problems, "40 = 2*20, s-part 10, rho-part 5/2", artifacts)


# cli


@register("cli.emit_formula", "emit_formula")
def _check_emit_formula(ctx: CheckContext) -> Outcome:
    problems = []
    expected = r"\frac{\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}"
    got = emit_formula("x_alpha", "latex")
    if got != expected:
        problems.append(f"x_alpha renders as {got}")
    for name in FORMULAS:
        emit_formula(name, "json")
    return _outcome(problems, "formulas render")


@register("cli.manifest", "run_suite")
def _check_manifest(ctx: CheckContext) -> Outcome:
    uncovered = [name for name, ids in operation_checks().items() if not ids]
    return _outcome(
        [f"no check exercises {', '.join(uncovered)}"] if uncovered else [],
        f"{len(OPERATIONS)} operations covered by {len(CHECKS)} checks",
    )


# findings


def collect_findings() -> list[Finding]:
    """Printed formulas and shapes that differ from the derived ones."""
    findings = [
        Finding(
            finding_id="p_shape.entry_2_5",
            printed="entry (2,5) of P is zero",
            derived="entry (2,5) is free; exp(X10) has 1 there",
            resolution="certify against the corrected shape",
        ),
        Finding(
            finding_id="n_tuple.leading_coordinate",
            printed="N' tuple starts with x01",
            derived="N is indexed by x10 (the alpha coordinate)",
            resolution="read the tuple as (x10, x11, x21, x31, x32)",
        ),
        Finding(
            finding_id="bruhat.torus_order",
            printed="torus part diag(-det/c, -c)",
            derived="diag(-c, -det/c)",
            resolution="use t1 = -c, t2 = -det/c",
        ),
        Finding(
            finding_id="constants.character_printings",
            printed=CHARACTER_PRINTINGS[0],
            derived=CHARACTER_PRINTINGS[1],
            resolution="the ledger evaluates the second printing",
        ),
    ]
    derived = nbar_closed_form(sym("x21"), sym("x31"), sym("x32")).as_dict()
    for name, text in REFERENCE_NBAR.items():
        printed = substitute(parse(text), {"x10": 1})
        if printed != derived[name]:
            resolution = "opposite sign" if printed == -derived[name] else "differs"
            findings.append(
                Finding(
                    finding_id=f"nbar.{name}",
                    printed=text,
                    derived=to_infix(derived[name]),
                    resolution=resolution,
                )
            )
    nbar = symbolic_decomposition().nbar
    d_value = symbolic_decomposition().m.d
    matching = [
        label
        for label, text in D_VARIANTS.items()
        if m_entries_from_forms(nbar, {"d": text})["d"] == d_value
    ]
    findings.append(
        Finding(
            finding_id="m_entries.d",
            printed=D_VARIANTS["printed"],
            derived=D_VARIANTS["derived"],
            resolution=f"matching variants: {', '.join(matching) or 'none'}",
        )
    )
    for name, labels in matching_readings().items():
        findings.append(
            Finding(
                finding_id=f"group_law.{name}",
                printed="ambiguous symbol in the printed form",
                derived=to_infix(group_law()[name]),
                resolution=f"matching readings: {', '.join(labels) or 'none'}",
            )
        )
    constants = character_constants()
    findings.append(
        Finding(
            finding_id="constants.tilde_alpha_pairing",
            printed=f"pairing {constants.claimed_tilde_alpha_pairing}",
            derived=f"form pairing {constants.form_tilde_alpha_pairing}",
            resolution="exponents use the claimed pairing; both are reported",
        )
    )
    return sorted(findings, key=lambda f: f.finding_id)


# runner


def select(selector: str) -> list[Check]:
    """Checks matching a comma-separated list of globs; a bare group name selects the group.

    Raises:
        UnknownSelectorError: If a pattern matches nothing.
    """
    patterns = [p.strip() for p in selector.split(",") if p.strip()]
    if not patterns:
        raise UnknownSelectorError("selector must not be empty")
    chosen: dict[str, Check] = {}
    for pattern in patterns:
        if pattern == "all":
            matched = list(CHECKS)
        else:
            if "." not in pattern and not any(ch in pattern for ch in "*?["):
                pattern = f"{pattern}.*"
            matched = [cid for cid in CHECKS if fnmatchcase(cid, pattern)]
        if not matched:
            raise UnknownSelectorError(f"selector {pattern!r} matches no check")
        chosen.update((cid, CHECKS[cid]) for cid in matched)
    return [chosen[cid] for cid in sorted(chosen)]


def reproduce_line(check_id: str, config: SuiteConfig) -> str:
    return (
        f"g2 verify {check_id} --seed {config.seed} --p {config.prime} "
        f"--kappa {config.kappa_min}..{config.kappa_max} --samples {config.samples}"
    )


def run_check(check: Check, config: SuiteConfig) -> CheckResult:
    rng = check_seed(config.seed, check.check_id)
    started = time.perf_counter()
    try:
        outcome = check.func(CheckContext(config, rng))
    except Exception as exc:
        log.exception("check %s raised", check.check_id)
        outcome = Outcome(False, f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - started

    if outcome.passed is None:
        status = CheckStatus.SKIPPED
    else:
        status = CheckStatus.PASS if outcome.passed else CheckStatus.FAIL
    log.info("%s %s in %.2fs", check.check_id, status.value, elapsed)
    return CheckResult(
        check_id=check.check_id,
        status=status,
        detail=outcome.detail,
        artifacts=outcome.artifacts,
        reproduce=reproduce_line(check.check_id, config) if status is CheckStatus.FAIL else None,
    )


def run_suite(
    selector: str,
    config: SuiteConfig,
    include_formulas: bool = True,
    schema_version: str = SCHEMA_VERSION,
) -> SuiteReport:
    """Run the selected checks.

    Args:
        selector: ``all``, a group name or comma-separated globs over check ids
        config: Sampling and valuation parameters
        include_formulas: Embed the derived formulas and findings in the report
        schema_version: Version stamped on the report

    Returns:
        Report with results sorted by check id

    Raises:
        UnknownSelectorError: If the selector matches nothing.
    """
    checks = select(selector)
    log.info("running %d checks with %d workers", len(checks), config.workers)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        results = list(pool.map(lambda check: run_check(check, config), checks))
    results.sort(key=lambda result: result.check_id)

    formulas: dict[str, Any] = {}
    findings: list[Finding] = []
    if include_formulas:
        formulas = {name: formula_texts(name) for name in FORMULAS}
        findings = collect_findings()
    return SuiteReport(
        schema_version=schema_version,
        selector=selector,
        config=config,
        results=results,
        formulas=formulas,
        findings=findings,
    )


def exit_code(report: SuiteReport) -> int:
    return 1 if report.failed else 0
