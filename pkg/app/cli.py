"""Command-line front end: argument parsing, dispatch and report emission."""

import argparse
import logging
from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import Any, NoReturn, TextIO

from app.core.config import settings
from app.core.exceptions import (
    InternalInconsistencyError,
    UsageError,
    WittResidueError,
)
from app.models.poly import MultiPoly
from app.models.rings import QQ, modular_ring
from app.models.witt import (
    WittVector,
    ghost_map,
    restrict,
    teichmuller,
    verschiebung,
)
from app.schemas.report import Report, ReportError, encode, to_json, to_text
from app.services.axioms import verify_axioms
from app.services.pairing import PairingMatrix, flat_extend_pairing, pairing_basis
from app.services.residues import (
    family_residue_pairing,
    hessian,
    is_spectrum_symmetric,
    milnor_algebra,
    spectrum,
)
from app.services.singularity import FamilyDeformation, QHSingularity, qh_check
from app.services.witt_lift import (
    WittContext,
    compat_chain,
    rational_consistency,
    witt_pairing,
)
from app.services.witt_polynomials import (
    frobenius,
    witt_add,
    witt_mul,
    witt_neg,
    witt_to_zpm,
)
from app.utils.expr_parser import parse_poly, to_multipoly, variable_order
from app.utils.validators import (
    ValidationResult,
    parse_weights,
    validate_orders,
    validate_prime,
    validate_weights,
    validate_witt_length,
)

logger = logging.getLogger(__name__)

WITT_OPS = ("add", "mul", "neg", "ghost", "teichmuller", "frobenius", "verschiebung", "restrict")


class ReportingArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _global_options(with_defaults: bool) -> argparse.ArgumentParser:
    def default(value: Any) -> Any:
        return value if with_defaults else argparse.SUPPRESS

    # --f must not be read as an abbreviation of --format
    options = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    options.add_argument(
        "--format", choices=("json", "text"), default=default(settings.report_format)
    )
    options.add_argument(
        "--order",
        choices=("wdeg", "grlex", "grevlex"),
        default=default(settings.monomial_order),
    )
    options.add_argument("--log-level", default=default(settings.log_level))
    return options


def _add_germ(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--f", required=True, help="polynomial, e.g. 'x^3+y^3'")
    sub.add_argument("--weights", required=True, help="comma-separated, e.g. '1/3,1/3'")


def build_parser() -> ReportingArgumentParser:
    parser = ReportingArgumentParser(
        prog="witt-residue",
        description="Higher residue pairings of quasi-homogeneous singularities over Q and Z/p^m",
        parents=[_global_options(True)],
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ReportingArgumentParser)
    common = [_global_options(False)]

    witt = subparsers.add_parser("witt", parents=common, help="Witt vector arithmetic")
    witt.add_argument("op", choices=WITT_OPS)
    witt.add_argument("--p", type=int, required=True)
    witt.add_argument("--m", type=int, required=True)
    witt.add_argument("--x", required=True, help="components, e.g. '1,2,0'")
    witt.add_argument("--y", help="second operand for add and mul")
    witt.add_argument(
        "--base",
        choices=("fp", "q"),
        default="q",
        help="fp: components in F_p, W_m(F_p) = Z/p^m also reported; "
        "q: components in Q, needed for ghost (default: q)",
    )

    milnor = subparsers.add_parser("milnor", parents=common, help="Milnor algebra and spectrum")
    _add_germ(milnor)

    residue = subparsers.add_parser("residue", parents=common, help="Grothendieck residues")
    _add_germ(residue)
    residue.add_argument("--g", help="residue of this polynomial only")

    pairing = subparsers.add_parser("pairing", parents=common, help="higher residue pairing")
    _add_germ(pairing)
    pairing.add_argument("--torder", type=int, default=settings.torder)

    family = subparsers.add_parser("family", parents=common, help="flat extension over f + s*g")
    _add_germ(family)
    family.add_argument("--g", required=True)
    family.add_argument("--sorder", type=int, default=settings.sorder)
    family.add_argument("--torder", type=int, default=settings.torder)

    verify = subparsers.add_parser("verify", parents=common, help="check the pairing axioms")
    _add_germ(verify)
    verify.add_argument("--trials", type=int, default=settings.trials)
    verify.add_argument("--seed", type=int, default=settings.seed)
    verify.add_argument("--torder", type=int, default=settings.torder)
    verify.add_argument("--g", help="also check the family derivation rule along f + s*g")
    verify.add_argument("--sorder", type=int, default=settings.sorder)

    lifted = subparsers.add_parser("witt-pairing", parents=common, help="pairing over Z/p^m")
    _add_germ(lifted)
    lifted.add_argument("--p", type=int, required=True)
    lifted.add_argument("--m", type=int, default=1)
    lifted.add_argument("--torder", type=int, default=settings.torder)

    compat = subparsers.add_parser("compat", parents=common, help="inverse-system check")
    _add_germ(compat)
    compat.add_argument("--p", type=int, required=True)
    compat.add_argument("--mmax", type=int, default=settings.mmax)
    compat.add_argument("--torder", type=int, default=settings.torder)

    return parser


def global_options(argv: Sequence[str]) -> argparse.Namespace:
    """--format, --order and --log-level, falling back to settings on bad input."""
    try:
        options, _ = _global_options(True).parse_known_args(list(argv))
    except (UsageError, SystemExit):
        options = argparse.Namespace(
            format=settings.report_format,
            order=settings.monomial_order,
            log_level=settings.log_level,
        )
    return options


def _require(result: ValidationResult) -> None:
    if not result.is_valid:
        raise UsageError(result.error or "invalid input")
    for warning in result.warnings:
        logger.warning(warning)


def _parse_polys(*texts: str) -> list[MultiPoly]:
    trees = [parse_poly(text) for text in texts]
    variables = variable_order(trees)
    if not variables:
        raise UsageError("f must involve at least one variable")
    return [to_multipoly(tree, QQ, variables) for tree in trees]


def _germ(args: argparse.Namespace, *extra: str) -> tuple[QHSingularity, list[MultiPoly]]:
    f, *others = _parse_polys(args.f, *extra)
    _require(validate_weights(args.weights, f.nvars))
    singularity = qh_check(f, parse_weights(args.weights), order_name=args.order)
    return singularity, others


def _pairing_results(pairing: PairingMatrix) -> dict[str, Any]:
    return {
        "labels": list(pairing.labels),
        "matrix": encode(pairing.constant_term()),
        "series": encode(pairing.entries),
        "torder": pairing.torder,
    }


def _witt_components(text: str, length: int) -> list[Fraction]:
    values = parse_weights(text) if "," in text else [Fraction(text)]
    if len(values) != length:
        raise UsageError(f"Expected {length} Witt components, got {len(values)}")
    return values


def run_witt(args: argparse.Namespace, report: Report) -> None:
    _require(validate_witt_length(args.p, args.m))
    report.config.update(p=args.p, m=args.m, base=args.base)
    base = modular_ring(args.p) if args.base == "fp" else QQ
    if args.op == "teichmuller":
        x = teichmuller(Fraction(args.x), args.p, base, args.m)
    else:
        x = WittVector.of(args.p, base, _witt_components(args.x, args.m))

    if args.op in ("add", "mul"):
        if args.y is None:
            raise UsageError(f"witt {args.op} needs --y")
        y = WittVector.of(args.p, base, _witt_components(args.y, args.m))
        value: Any = witt_add(x, y) if args.op == "add" else witt_mul(x, y)
    elif args.op == "neg":
        value = witt_neg(x)
    elif args.op == "ghost":
        value = list(ghost_map(x))
    elif args.op == "frobenius":
        value = frobenius(x)
    elif args.op == "verschiebung":
        value = verschiebung(x)
    elif args.op == "restrict":
        value = restrict(x)
    else:
        value = x

    report.results["value"] = encode(value)
    if isinstance(value, WittVector) and args.base == "fp":
        report.results["zpm"] = encode(witt_to_zpm(value))


def run_milnor(args: argparse.Namespace, report: Report) -> None:
    singularity, _ = _germ(args)
    algebra = milnor_algebra(singularity)
    values = spectrum(algebra)
    report.results.update(
        mu=algebra.mu,
        basis=[phi.to_text() for phi in algebra.basis_polys],
        groebner=[g.to_text(singularity.order) for g in singularity.groebner.basis],
        socle=algebra.basis_polys[algebra.socle_index].to_text(),
        spectrum=encode(values),
        spectrum_symmetric=is_spectrum_symmetric(values, singularity.nvars),
    )


def run_residue(args: argparse.Namespace, report: Report) -> None:
    extra = (args.g,) if args.g else ()
    singularity, others = _germ(args, *extra)
    algebra = milnor_algebra(singularity)
    if others:
        g = others[0]
        report.results.update(g=g.to_text(), residue=encode(algebra.residue(g)))
        return
    report.results.update(
        mu=algebra.mu,
        residues={phi.to_text(): encode(algebra.residue(phi)) for phi in algebra.basis_polys},
        hessian=encode(algebra.residue(hessian(singularity))),
    )


def run_pairing(args: argparse.Namespace, report: Report) -> None:
    _require(validate_orders(args.torder))
    report.config["torder"] = args.torder
    singularity, _ = _germ(args)
    report.results.update(_pairing_results(pairing_basis(milnor_algebra(singularity), args.torder)))


def _family(args: argparse.Namespace) -> tuple[FamilyDeformation, PairingMatrix, PairingMatrix]:
    _require(validate_orders(args.torder, args.sorder))
    singularity, (g,) = _germ(args, args.g)
    family = FamilyDeformation(singularity, g, args.sorder)
    base = pairing_basis(milnor_algebra(singularity), args.torder)
    return family, base, flat_extend_pairing(family, base, args.sorder)


def run_family(args: argparse.Namespace, report: Report) -> None:
    report.config.update(torder=args.torder, sorder=args.sorder)
    family, _, extended = _family(args)
    algebra = milnor_algebra(family.singularity)
    report.results.update(_pairing_results(extended))
    report.results["fiber_residues"] = encode(family_residue_pairing(algebra, family))


def run_verify(args: argparse.Namespace, report: Report) -> None:
    report.config.update(torder=args.torder, trials=args.trials, seed=args.seed)
    if args.g:
        report.config["sorder"] = args.sorder
        family, base, extended = _family(args)
        axioms = verify_axioms(
            family, extended, trials=args.trials, seed=args.seed, base_pairing=base
        )
    else:
        _require(validate_orders(args.torder))
        singularity, _ = _germ(args)
        algebra = milnor_algebra(singularity)
        axioms = verify_axioms(
            algebra, pairing_basis(algebra, args.torder), trials=args.trials, seed=args.seed
        )
    report.results["axioms"] = encode(axioms)
    report.results["passed"] = axioms.passed
    if not axioms.passed:
        failed = [str(b.bullet) for b in axioms.bullets if not (b.passed or b.skipped)]
        if axioms.flatness is not None and not axioms.flatness.passed:
            failed.append("flatness")
        raise InternalInconsistencyError(f"axiom checks failed: {', '.join(failed)}")


def run_witt_pairing(args: argparse.Namespace, report: Report) -> None:
    _require(validate_prime(args.p))
    _require(validate_orders(args.torder))
    report.config.update(p=args.p, m=args.m, torder=args.torder)
    singularity, _ = _germ(args)
    pairing = witt_pairing(singularity, WittContext(args.p, args.m), args.torder)
    assert pairing is not None
    report.results.update(_pairing_results(pairing))


def run_compat(args: argparse.Namespace, report: Report) -> None:
    _require(validate_witt_length(args.p, args.mmax))
    _require(validate_orders(args.torder))
    report.config.update(p=args.p, mmax=args.mmax, torder=args.torder)
    singularity, _ = _germ(args)
    chain = compat_chain(singularity, args.p, args.mmax, args.torder)
    report.results["levels"] = encode(chain)
    report.results["rational"] = encode(
        [
            rational_consistency(singularity, WittContext(args.p, level), args.torder)
            for level in range(1, args.mmax + 1)
        ]
    )


COMMANDS: dict[str, Callable[[argparse.Namespace, Report], None]] = {
    "witt": run_witt,
    "milnor": run_milnor,
    "residue": run_residue,
    "pairing": run_pairing,
    "family": run_family,
    "verify": run_verify,
    "witt-pairing": run_witt_pairing,
    "compat": run_compat,
}


def _details(exc: WittResidueError) -> dict[str, Any]:
    details = {}
    for key, value in vars(exc).items():
        if key == "message":
            continue
        try:
            details[key] = encode(value)
        except TypeError:
            details[key] = str(value)
    return details


def run_command(argv: Sequence[str]) -> Report:
    """Parse argv, run the command and collect results or errors into a Report."""
    report = Report(command=list(argv))
    try:
        args = build_parser().parse_args(list(argv))
        report.config["order"] = args.order
        COMMANDS[args.command](args, report)
    except WittResidueError as exc:
        logger.error(f"{type(exc).__name__}: {exc.message}")
        report.errors.append(
            ReportError(type=type(exc).__name__, message=exc.message, details=_details(exc))
        )
        report.exit_code = exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        # Argument values the library rejects (lengths, zero denominators, ...)
        error = UsageError(str(exc))
        report.errors.append(ReportError(type="UsageError", message=error.message))
        report.exit_code = error.exit_code
    return report


def emit_report(report: Report, fmt: str, stream: TextIO) -> None:
    stream.write(to_text(report) if fmt == "text" else to_json(report))
