"""Define the ``ncforms`` command line."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, NamedTuple, NoReturn

from ncforms.calculus import (
    Primitive,
    a_t,
    differential,
    homotopy_check,
    poincare_primitive,
    transfer_primitive,
)
from ncforms.cartan import Derivation, apply, contract_many
from ncforms.errors import (
    AuditFailureError,
    CommandLineError,
    IncompatibleRelationsError,
    NcFormsError,
    NotClosedError,
)
from ncforms.expression import parse
from ncforms.freeforms import Form, Signature, free_signature
from ncforms.helpers.sampling import (
    DEFAULT_CASES,
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_TERMS,
    DEFAULT_N,
    DEFAULT_SEED,
)
from ncforms.helpers.types import DictType
from ncforms.liecomplex import (
    ComplexPresentation,
    cartan_involution_check,
    complex_preset,
    discrete_d,
    discrete_poincare,
    discrete_system,
    ehrenfest_complex,
    sl2_ghostless_check,
)
from ncforms.qspace import (
    GroupIndex,
    GroupQFamily,
    GroupQSystem,
    QMatrix,
    QRewriteSystem,
    act,
    equivalent,
    group_algebra,
    q_algebra,
    q_partial,
    qspace_from_dict,
)
from ncforms.quantum import (
    clebsch_build,
    clebsch_system,
    lie_preset,
    weyl_algebra,
    weyl_gradient,
    weyl_partial,
)
from ncforms.report import AuditReport
from ncforms.rewrite import RewriteSystem
from ncforms.scalars import ParamTable
from ncforms.suites import SUITES, SuiteConfig, SuiteResult, run_suite

_LOGGER = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_FAILURE: int = 1
EXIT_USAGE: int = 2

ALGEBRAS: tuple[str, ...] = ("free", "graded", "weyl", "q", "clebsch", "complex")
DEFAULT_AUDIT_DEGREE: int = 3

# A comma starts a new pair only when "name=" follows, so e[1,2] stays whole.
FIELD_SEPARATOR = re.compile(r",(?=\s*[A-Za-z]\w*(?:\[[^\]]*\])?(?:@[\w(),]+)?\s*=)")


class CommandResult(NamedTuple):
    """Define the exit status and the text a command produced."""

    status: int
    output: str = ""
    error: str = ""


@dataclass(frozen=True)
class Outcome:
    """Define what a subcommand computed, before it is rendered."""

    ok: bool
    text: str
    result: Any = None
    residuals: list[Any] | None = None
    counterexample: Any = None

    def to_dict(self) -> DictType:
        """Return the ``{ok, result?, residuals?, counterexample?}`` record."""
        data: DictType = {"ok": self.ok}
        if self.result is not None:
            data["result"] = self.result
        if self.residuals is not None:
            data["residuals"] = self.residuals
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


class _ArgumentParser(argparse.ArgumentParser):
    """Raise instead of exiting on bad arguments, so ``run`` owns the exit status."""

    def error(self, message: str) -> NoReturn:
        """Raise CommandLineError instead of printing usage and exiting."""
        raise CommandLineError(f"{self.prog}: {message}")


class Algebra(NamedTuple):
    """Define the algebra a command works in: a free signature or a rewrite system."""

    name: str
    sig: Signature
    system: RewriteSystem | None = None

    def element(self, text: str) -> Form:
        """Parse expression text, normalized when there is a system."""
        if self.system is None:
            return parse(text, self.sig)
        return self.system.element(text)

    def d(self, a: Form) -> Form:
        """Return d(a), normalized when there is a system."""
        if self.system is None:
            return differential(a)
        return self.system.differential(a)


def _load_json(path: str) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _int_list(text: str | None) -> list[int] | None:
    if not text:
        return None
    return [int(part) for part in text.split(",")]


def _names(text: str | None) -> list[str]:
    return [part.strip() for part in (text or "").split(",") if part.strip()]


def select_algebra(args: argparse.Namespace) -> Algebra:
    """Build the algebra named by the algebra options.

    Args:
    ----
        args: The parsed arguments.

    Returns:
    -------
        An Algebra object.

    Raises:
    ------
        CommandLineError: Raised when a required option is missing.

    """
    if args.system:
        system = RewriteSystem.from_dict(_load_json(args.system))
        return Algebra(system.name, system.sig, system)
    kind = args.algebra
    parities = _int_list(args.parities)
    if kind in {"free", "graded"}:
        if kind == "graded" and parities is None:
            raise CommandLineError("--algebra graded needs --parities")
        params = ParamTable.of(*_names(args.params))
        return Algebra(kind, free_signature(args.n, parities=parities, params=params))
    if kind == "weyl":
        system = weyl_algebra(args.n)
    elif kind == "q":
        if args.qfile:
            system = qspace_from_dict(_load_json(args.qfile))
        else:
            system = q_algebra(QMatrix.symbolic(args.n))
    elif kind == "clebsch":
        if args.lie:
            system = clebsch_build(lie_preset(args.lie)).system
        else:
            system = clebsch_system(args.n, parities or ())
    else:
        if not args.preset:
            raise CommandLineError("--algebra complex needs --preset")
        system = complex_preset(args.preset).system
    return Algebra(system.name, system.sig, system)


def _form_outcome(a: Form) -> Outcome:
    return Outcome(True, a.to_text(), a.to_text())


def _find_primitive(algebra: Algebra, a: Form) -> Primitive:
    """Use the homotopy over A_t-stable relations and the symbol transfer otherwise."""
    if algebra.system is None:
        return poincare_primitive(a)
    try:
        return poincare_primitive(a, algebra.system)
    except IncompatibleRelationsError:
        _LOGGER.debug("%s is not A_t-stable; using the symbol transfer", algebra.name)
        return transfer_primitive(a, algebra.system)


def _primitive_outcome(found: Primitive) -> Outcome:
    primitive, remainder = found
    text = primitive.to_text()
    if remainder:
        text = f"{text}\nremainder: {remainder.to_text()}"
    return Outcome(
        True,
        text,
        {"primitive": primitive.to_text(), "remainder": remainder.to_text()},
    )


def _residual_outcome(residual: Form, subject: Form) -> Outcome:
    if not residual:
        return Outcome(True, "ok", "0")
    record = {"input": subject.to_text(), "residual": residual.to_text()}
    return Outcome(
        False, f"residual: {residual}", residuals=[record], counterexample=record
    )


def _report_outcome(report: AuditReport) -> Outcome:
    if report.ok:
        text = f"{report.name}: ok ({report.checked} checked)"
        return Outcome(True, text, report.to_dict())
    lines = [f"{report.name}: {len(report.entries)} failing check(s)"]
    lines.extend(
        f"  {entry.kind} {entry.word}: {entry.residual}" for entry in report.entries
    )
    residuals = [entry.to_dict() for entry in report.entries]
    return Outcome(False, "\n".join(lines), report.to_dict(), residuals, residuals[0])


def cmd_normalize(args: argparse.Namespace) -> Outcome:
    """Print the normal form of an expression."""
    return _form_outcome(select_algebra(args).element(args.expression))


def cmd_d(args: argparse.Namespace) -> Outcome:
    """Print the differential of an expression."""
    algebra = select_algebra(args)
    return _form_outcome(algebra.d(algebra.element(args.expression)))


def cmd_primitive(args: argparse.Namespace) -> Outcome:
    """Print a primitive of a closed expression."""
    algebra = select_algebra(args)
    a = algebra.element(args.expression)
    return _primitive_outcome(_find_primitive(algebra, a))


def cmd_homotopy_check(args: argparse.Namespace) -> Outcome:
    """Check dI + Id = a - pr00(a) on A_t of an expression."""
    algebra = select_algebra(args)
    a = algebra.element(args.expression)
    return _residual_outcome(homotopy_check(a_t(a), algebra.system), a)


def parse_field(text: str, algebra: Algebra, parity: int) -> Derivation:
    """Parse ``x1=x1^2, x2=x2*x1`` into a derivation.

    Args:
    ----
        text: Comma-separated ``point=expression`` pairs.
        algebra: The algebra the values are parsed in.
        parity: The parity of the derivation.

    Returns:
    -------
        A Derivation object.

    Raises:
    ------
        CommandLineError: Raised for a pair without ``=`` or a name that is not a point.

    """
    values: dict[str, Form] = {}
    for item in FIELD_SEPARATOR.split(text):
        name, separator, value = item.partition("=")
        if not separator:
            raise CommandLineError(f"Expected name=expression, got {item!r}")
        values[name.strip()] = algebra.element(value)
    try:
        return Derivation.from_fields(algebra.sig, values, parity)
    except (KeyError, ValueError) as err:
        raise CommandLineError(f"Not a point generator: {err}") from err


def cmd_contract(args: argparse.Namespace) -> Outcome:
    """Contract an expression with vector fields, or apply them with --apply."""
    algebra = select_algebra(args)
    if algebra.system is not None:
        raise CommandLineError("contract works over --algebra free or graded")
    fields = [parse_field(text, algebra, args.parity) for text in args.field]
    a = algebra.element(args.expression)
    if args.apply:
        for vector_field in fields:
            a = apply(vector_field, a)
        return _form_outcome(a)
    return _form_outcome(contract_many(fields, a))


def cmd_partial(args: argparse.Namespace) -> Outcome:
    """Print a quantum or Q-partial derivative of a 0-form."""
    algebra = select_algebra(args)
    system = algebra.system
    if system is None or isinstance(system, GroupQSystem):
        raise CommandLineError("partial works over a canonical algebra or a Q-space")
    a = algebra.element(args.expression)
    if isinstance(system, QRewriteSystem):
        if not args.wrt:
            raise CommandLineError("partial over a Q-space needs --wrt")
        k = algebra.sig[algebra.sig.gen_id(args.wrt)].index
        return _form_outcome(q_partial(a, k, system))
    if args.wrt:
        return _form_outcome(weyl_partial(a, args.wrt, system))
    gradient = weyl_gradient(a, system)
    return Outcome(
        True,
        "\n".join(f"{name}: {value}" for name, value in gradient.items()),
        {name: value.to_text() for name, value in gradient.items()},
    )


def preset_name(args: argparse.Namespace) -> str:
    """Return the full preset name from ``--preset`` and its refining options."""
    preset = args.preset
    if preset == "gl":
        name = f"gl{args.n}-{args.variant or 'left'}"
        return f"{name}-{args.subalgebra}" if args.subalgebra else name
    if preset == "so":
        return f"so{args.n}"
    if preset == "general":
        return f"general-{args.lie or 'sl2'}" + ("-finite" if args.finite else "")
    if preset == "discrete":
        return f"discrete{args.variant or 1}"
    return str(preset)


def _parse_matrix(text: str) -> list[list[str]]:
    return [row.split(",") for row in text.split(";")]


def select_complex(args: argparse.Namespace) -> ComplexPresentation:
    """Build the complex named by --preset, or by --matrix for an Ehrenfest one."""
    if args.preset == "ehrenfest":
        if not args.matrix:
            raise CommandLineError("--preset ehrenfest needs --matrix")
        return ehrenfest_complex(_parse_matrix(args.matrix))
    if not args.preset:
        raise CommandLineError("complex needs --preset")
    return complex_preset(preset_name(args))


def cmd_complex_build(args: argparse.Namespace) -> Outcome:
    """Print or export a complex's generators, rules and d-images."""
    presentation = select_complex(args)
    system = presentation.system
    sig = system.sig
    lines = [f"{presentation.name}: {len(sig)} generators, {len(system.rules)} rules"]
    lines.extend(
        f"{sig.word_text(pair)} -> {rule.right}"
        for pair, rule in sorted(system.rules.items())
    )
    lines.extend(
        f"d({sig[gen_id].name}) = {image}"
        for gen_id, image in sorted(system.d_images.items())
    )
    return Outcome(True, "\n".join(lines), presentation.to_dict())


def cmd_complex_audit(args: argparse.Namespace) -> Outcome:
    """Run the confluence, d-compatibility and completeness audits of a complex."""
    return _report_outcome(select_complex(args).audit(args.max_deg))


def cmd_complex_involution(args: argparse.Namespace) -> Outcome:
    """Check that minus the transpose maps the left gl rules onto the right ones."""
    return _report_outcome(cartan_involution_check(args.n, args.subalgebra or "full"))


def cmd_complex_ghostless(_: argparse.Namespace) -> Outcome:
    """Print the sl(2) ghostless determinant and verdict."""
    verdict = sl2_ghostless_check()
    text = (
        f"determinant: {verdict.determinant}\n"
        f"ghostless complex exists: {verdict.exists}"
    )
    return Outcome(
        True, text, {"determinant": str(verdict.determinant), "exists": verdict.exists}
    )


def _variant(args: argparse.Namespace) -> int:
    return int(args.variant or 1)


def cmd_complex_discrete_d(args: argparse.Namespace) -> Outcome:
    """Apply the discrete differential to a 0-form."""
    variant = _variant(args)
    f = discrete_system(variant).element(args.expression)
    return _form_outcome(discrete_d(f, variant))


def cmd_complex_discrete_primitive(args: argparse.Namespace) -> Outcome:
    """Print the discrete primitive of a closed 1-form."""
    variant = _variant(args)
    omega = discrete_system(variant).element(args.expression)
    return _form_outcome(discrete_poincare(omega, variant))


def _suite_outcome(results: Sequence[SuiteResult]) -> Outcome:
    lines = []
    residuals: list[Any] = []
    for result in results:
        status = "ok" if result.ok else f"{len(result.failures)} failure(s)"
        lines.append(f"{result.suite}: {status} ({result.checked} checks)")
        for failure in result.failures:
            lines.append(f"  case {failure.case} {failure.check}: {failure.residual}")
            if failure.counterexample:
                lines.append(f"    word: {failure.counterexample}")
            residuals.append({"suite": result.suite, **failure.to_dict()})
    summary = [
        {"suite": result.suite, "ok": result.ok, "checked": result.checked}
        for result in results
    ]
    return Outcome(
        all(result.ok for result in results),
        "\n".join(lines),
        summary,
        residuals,
        residuals[0] if residuals else None,
    )


def cmd_verify(args: argparse.Namespace) -> Outcome:
    """Run one property suite, or all of them."""
    system = RewriteSystem.from_dict(_load_json(args.system)) if args.system else None
    config = SuiteConfig(
        seed=args.seed,
        cases=args.cases,
        max_degree=args.max_deg,
        n=args.n,
        max_terms=args.max_terms,
        system=system,
    )
    names = list(SUITES) if args.suite == "all" else [args.suite]
    return _suite_outcome([run_suite(name, config) for name in names])


def select_qspace(args: argparse.Namespace) -> QRewriteSystem | GroupQSystem:
    """Build the Q-space named by ``--Q``, ``--n`` and ``--group``."""
    orders = _int_list(args.group)
    if args.qfile:
        data = _load_json(args.qfile)
        if orders:
            data = {**data, "group": orders}
        return qspace_from_dict(data)
    if orders:
        group = GroupIndex(tuple(orders))
        return group_algebra(GroupQFamily.symbolic(args.n, group))
    return q_algebra(QMatrix.symbolic(args.n))


def cmd_qspace_d(args: argparse.Namespace) -> Outcome:
    """Print d of an expression over a Q-space."""
    system = select_qspace(args)
    return _form_outcome(system.differential(system.element(args.expression)))


def cmd_qspace_primitive(args: argparse.Namespace) -> Outcome:
    """Print a primitive of a closed form over a Q-space."""
    system = select_qspace(args)
    a = system.element(args.expression)
    return _primitive_outcome(poincare_primitive(a, system))


def cmd_qspace_partial(args: argparse.Namespace) -> Outcome:
    """Print the Q-partial d/dx_k of a 0-form."""
    system = select_qspace(args)
    if not isinstance(system, QRewriteSystem):
        raise CommandLineError("qspace partial works without --group")
    if not 1 <= args.k <= system.qmatrix.n:
        raise CommandLineError(f"k must lie in 1..{system.qmatrix.n}")
    return _form_outcome(q_partial(system.element(args.expression), args.k, system))


def _group_system(args: argparse.Namespace) -> GroupQSystem:
    system = select_qspace(args)
    if not isinstance(system, GroupQSystem):
        raise CommandLineError(f"qspace {args.action} needs --group or a group in --Q")
    return system


def cmd_qspace_act(args: argparse.Namespace) -> Outcome:
    """Apply a group element to an expression."""
    system = _group_system(args)
    g = system.family.group.parse(args.element)
    return _form_outcome(act(g, system.element(args.expression), system))


def cmd_qspace_equivalent(args: argparse.Namespace) -> Outcome:
    """Decide whether two expressions lie in one orbit of the group action."""
    system = _group_system(args)
    same = equivalent(system.element(args.first), system.element(args.second), system)
    return Outcome(True, str(same).lower(), same)


Handler = Callable[[argparse.Namespace], Outcome]


def _leaf(
    subparsers: Any,
    name: str,
    handler: Handler,
    parents: Sequence[argparse.ArgumentParser],
    *,
    expression: bool = True,
) -> argparse.ArgumentParser:
    help_text = (handler.__doc__ or "").strip()
    parser = subparsers.add_parser(name, parents=parents, help=help_text)
    if expression:
        parser.add_argument("expression", help="an expression such as 'x1*y2 + 3*x1^2'")
    parser.set_defaults(handler=handler)
    return parser


def _common_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON record")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    return common


def _algebra_parser() -> argparse.ArgumentParser:
    algebra = _ArgumentParser(add_help=False)
    algebra.add_argument("--algebra", choices=ALGEBRAS, default="free")
    algebra.add_argument("--n", type=int, default=DEFAULT_N, help="number of variables")
    algebra.add_argument("--parities", help="comma-separated parities, e.g. 0,1")
    algebra.add_argument("--params", help="comma-separated coefficient parameters")
    algebra.add_argument("--Q", dest="qfile", help="a Q-matrix JSON file")
    algebra.add_argument("--lie", help="a Lie preset for --algebra clebsch")
    algebra.add_argument("--preset", help="a complex preset for --algebra complex")
    algebra.add_argument("--system", help="a presentation JSON file")
    return algebra


def _complex_options() -> argparse.ArgumentParser:
    options = _ArgumentParser(add_help=False)
    options.add_argument(
        "--preset", help="aff1, gl, so, general, discrete, ehrenfest or a full name"
    )
    options.add_argument("--n", type=int, default=DEFAULT_N, help="matrix size")
    options.add_argument("--variant", help="left or right for gl, 1 or 2 for discrete")
    options.add_argument("--subalgebra", help="full, upper, lower or a nilpotent part")
    options.add_argument("--lie", help="the Lie preset of a general complex")
    options.add_argument("--finite", action="store_true", help="add finiteness rules")
    options.add_argument("--matrix", help="rows separated by ';', entries by ','")
    options.add_argument("--max-deg", type=int, default=DEFAULT_AUDIT_DEGREE)
    return options


def _add_complex_commands(commands: Any, common: argparse.ArgumentParser) -> None:
    complex_parser = commands.add_parser("complex", help="build and audit complexes")
    actions = complex_parser.add_subparsers(dest="action", required=True)
    parents = [common, _complex_options()]
    for name, handler in (
        ("build", cmd_complex_build),
        ("audit", cmd_complex_audit),
        ("involution", cmd_complex_involution),
        ("ghostless", cmd_complex_ghostless),
    ):
        _leaf(actions, name, handler, parents, expression=False)
    _leaf(actions, "discrete-d", cmd_complex_discrete_d, parents)
    _leaf(actions, "discrete-primitive", cmd_complex_discrete_primitive, parents)


def _add_verify_command(commands: Any, common: argparse.ArgumentParser) -> None:
    verify = commands.add_parser("verify", parents=[common], help="run property suites")
    verify.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--cases", type=int, default=DEFAULT_CASES)
    verify.add_argument("--max-deg", type=int, default=DEFAULT_MAX_DEGREE)
    verify.add_argument("--n", type=int, default=DEFAULT_N)
    verify.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    verify.add_argument("--system", help="a presentation JSON file for confluence")
    verify.set_defaults(handler=cmd_verify)


def _add_qspace_commands(commands: Any, common: argparse.ArgumentParser) -> None:
    qspace = commands.add_parser("qspace", help="work in a Q-quantum space")
    qspace.add_argument("--n", type=int, default=DEFAULT_N)
    qspace.add_argument("--Q", dest="qfile", help="a Q-matrix JSON file")
    qspace.add_argument("--group", help="comma-separated group orders, e.g. 2 or 2,3")
    actions = qspace.add_subparsers(dest="action", required=True)
    _leaf(actions, "d", cmd_qspace_d, [common])
    _leaf(actions, "primitive", cmd_qspace_primitive, [common])
    partial = actions.add_parser("partial", parents=[common], help="Q-partial d/dx_k")
    partial.add_argument("k", type=int)
    partial.add_argument("expression")
    partial.set_defaults(handler=cmd_qspace_partial)
    act_parser = actions.add_parser("act", parents=[common], help="apply an element")
    act_parser.add_argument("element", help="a group element such as 1 or (1,0)")
    act_parser.add_argument("expression")
    act_parser.set_defaults(handler=cmd_qspace_act)
    orbit = actions.add_parser(
        "equivalent", parents=[common], help="compare forms up to the group action"
    )
    orbit.add_argument("first")
    orbit.add_argument("second")
    orbit.set_defaults(handler=cmd_qspace_equivalent)


def build_parser() -> argparse.ArgumentParser:
    """Return the ``ncforms`` argument parser."""
    common = _common_parser()
    algebra = _algebra_parser()
    parser = _ArgumentParser(
        prog="ncforms", description="Exact noncommutative differential forms."
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name, handler in (
        ("normalize", cmd_normalize),
        ("d", cmd_d),
        ("primitive", cmd_primitive),
        ("homotopy-check", cmd_homotopy_check),
    ):
        _leaf(commands, name, handler, [common, algebra])
    contract = _leaf(commands, "contract", cmd_contract, [common, algebra])
    contract.add_argument(
        "--field",
        action="append",
        required=True,
        help="point=expression pairs, one vector field per flag",
    )
    contract.add_argument("--parity", type=int, default=0)
    contract.add_argument("--apply", action="store_true", help="apply the fields")
    partial = _leaf(commands, "partial", cmd_partial, [common, algebra])
    partial.add_argument("--wrt", help="the variable; every partial when omitted")
    _add_complex_commands(commands, common)
    _add_verify_command(commands, common)
    _add_qspace_commands(commands, common)
    return parser


def _dumps(data: DictType) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _render(args: argparse.Namespace, outcome: Outcome) -> CommandResult:
    status = EXIT_OK if outcome.ok else EXIT_FAILURE
    if args.json:
        return CommandResult(status, _dumps(outcome.to_dict()))
    return CommandResult(status, outcome.text)


def _error(args: argparse.Namespace, status: int, err: Exception) -> CommandResult:
    message = str(err) or type(err).__name__
    if args.json:
        return CommandResult(status, _dumps({"ok": False, "error": message}))
    return CommandResult(status, error=f"error: {message}")


def run(argv: Sequence[str] | None = None) -> CommandResult:
    """Run one command.

    Args:
    ----
        argv: The arguments without the program name (defaults to ``sys.argv``).

    Returns:
    -------
        The exit status (0 pass, 1 failed check, 2 usage or parse error) and output.

    """
    try:
        args = build_parser().parse_args(argv)
    except CommandLineError as err:
        return CommandResult(EXIT_USAGE, error=f"error: {err}")
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    _LOGGER.debug("Running %s", args.command)
    try:
        outcome = args.handler(args)
    except (NotClosedError, AuditFailureError, IncompatibleRelationsError) as err:
        return _error(args, EXIT_FAILURE, err)
    except (NcFormsError, ValueError, KeyError, OSError) as err:
        return _error(args, EXIT_USAGE, err)
    return _render(args, outcome)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit status."""
    result = run(argv)
    if result.output:
        print(result.output)  # noqa: T201
    if result.error:
        print(result.error, file=sys.stderr)  # noqa: T201
    return result.status


if __name__ == "__main__":
    raise SystemExit(main())
