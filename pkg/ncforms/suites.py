"""Define the seeded property suites behind ``ncforms verify``."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

import sympy

from ncforms.calculus import (
    ExtendedForm,
    a_t_commute_residual,
    bidegree_residual,
    check_at_compatibility,
    differential,
    graded_leibniz_residual,
    homotopy_check,
    poincare_primitive,
)
from ncforms.cartan import (
    Derivation,
    bracket_action_residual,
    cartan_residual,
    commute_d_residual,
    contraction_commute_residual,
    euler_residual,
    exchange_residual,
    homotopy_formula_residual,
    jacobi_residual,
    leibniz_residual,
    skew_symmetry_residuals,
    y_prefix_residual,
)
from ncforms.errors import NcFormsError
from ncforms.freeforms import Form, Signature, free_signature
from ncforms.helpers.sampling import (
    DEFAULT_CASES,
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_TERMS,
    DEFAULT_N,
    DEFAULT_SEED,
    Sampler,
)
from ncforms.helpers.types import DictType
from ncforms.liecomplex import (
    COMPLEX_PRESETS,
    X_SYMBOL,
    antidifference,
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
    action_a_t_residual,
    action_homotopy_residual,
    decomposition_residual,
    equivariant_primitive,
    group_algebra,
    ideal_residual,
    q_algebra,
    q_d_check,
    q_partials_commute_residual,
)
from ncforms.quantum import (
    LIE_PRESETS,
    clebsch_system,
    clebsch_verify,
    gl_data,
    lie_preset,
    quantum_poincare,
    symbol_transfer_residual,
    weyl_algebra,
    weyl_gradient,
    weyl_partial,
)
from ncforms.report import AuditReport
from ncforms.rewrite import (
    RewriteSystem,
    Strategy,
    check_d_compatibility,
    check_local_confluence,
    product_residual,
)
from ncforms.scalars import ParamTable

_LOGGER = logging.getLogger(__name__)

QSPACE_N: int = 3
GROUP_ORDERS: tuple[tuple[int, ...], ...] = ((2,), (3,))
CONFLUENCE_DEGREE: int = 3
TRANSFER_DEGREE: int = 5
TRANSFER_PAIRS: tuple[int, ...] = (1, 2)
MAX_CONTRACTIONS: int = 4

# Per-system counts at DEFAULT_CASES; other case counts scale them.
STRATEGY_WORDS: int = 200
COMPLEX_FORMS: int = 100
EHRENFEST_MATRICES: int = 10

Residual = Form | Derivation | ExtendedForm | list[Form]


@dataclass(frozen=True)
class SuiteConfig:
    """Define the knobs of a suite run."""

    seed: int = DEFAULT_SEED
    cases: int = DEFAULT_CASES
    max_degree: int = DEFAULT_MAX_DEGREE
    n: int = DEFAULT_N
    max_terms: int = DEFAULT_MAX_TERMS
    system: RewriteSystem | None = None

    def sampler(self, salt: int = 0) -> Sampler:
        """Return a sampler whose stream depends only on the seed and the salt."""
        return Sampler(
            self.seed * 1_000_003 + salt,
            max_degree=self.max_degree,
            max_terms=self.max_terms,
        )

    def scaled(self, count: int) -> int:
        """Return ``count`` scaled by cases / DEFAULT_CASES, at least 1."""
        return max(1, count * self.cases // DEFAULT_CASES)


@dataclass(frozen=True)
class CheckResult:
    """Define one failing check."""

    check: str
    case: int
    residual: str
    subject: str = ""
    counterexample: str | None = None

    def to_dict(self) -> DictType:
        """Return the JSON record of the failure."""
        data: DictType = {
            "check": self.check,
            "case": self.case,
            "residual": self.residual,
            "input": self.subject,
        }
        if self.counterexample is not None:
            data["word"] = self.counterexample
        return data


@dataclass(frozen=True)
class SuiteResult:
    """Define the outcome of a suite run."""

    suite: str
    checked: int
    failures: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        """Return whether every check passed."""
        return not self.failures

    def to_dict(self) -> DictType:
        """Return the ``{ok, residuals, counterexample}`` JSON record."""
        data: DictType = {
            "suite": self.suite,
            "ok": self.ok,
            "checked": self.checked,
            "residuals": [failure.to_dict() for failure in self.failures],
        }
        if self.failures:
            data["counterexample"] = self.failures[0].to_dict()
        return data


def residual_text(residual: Residual) -> str:
    """Return the canonical text of a nonzero residual, or an empty string."""
    if isinstance(residual, Derivation):
        return "; ".join(
            f"{residual.sig[point].name}: {value}"
            for point, value in sorted(residual.values.items())
            if value
        )
    if isinstance(residual, ExtendedForm):
        return "" if residual.is_zero() else residual.to_text()
    if isinstance(residual, list):
        return "; ".join(part.to_text() for part in residual if part)
    return residual.to_text() if residual else ""


def shrink(subject: Form, probe: Callable[[Form], Residual]) -> str | None:
    """Return the shortest single word of ``subject`` on which ``probe`` still fails.

    Every probe is linear in its subject, so some term of a failing input fails.
    """
    sig = subject.sig
    ordered = sorted(subject.terms.items(), key=lambda item: (len(item[0]), item[0]))
    for word, coefficient in ordered:
        try:
            if residual_text(probe(Form.word(sig, word, coefficient))):
                return sig.word_text(word) or "1"
        except (NcFormsError, ValueError):
            continue
    return None


class _Recorder:
    """Collect check outcomes for one suite."""

    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.checked = 0
        self.failures: list[CheckResult] = []

    def form(
        self,
        check: str,
        case: int,
        probe: Callable[[Form], Residual],
        subject: Form,
    ) -> None:
        """Record a check whose residual is linear in a Form."""
        self.checked += 1
        text = residual_text(probe(subject))
        if text:
            self.failures.append(
                CheckResult(
                    check, case, text, subject.to_text(), shrink(subject, probe)
                )
            )

    def value(
        self, check: str, case: int, residual: Residual, subject: str = ""
    ) -> None:
        """Record a check with a precomputed residual."""
        self.checked += 1
        if text := residual_text(residual):
            self.failures.append(CheckResult(check, case, text, subject))

    def truth(self, check: str, case: int, passed: bool, detail: str = "") -> None:
        """Record a yes/no check."""
        self.checked += 1
        if not passed:
            self.failures.append(CheckResult(check, case, detail or "false"))

    def report(self, report: AuditReport) -> None:
        """Record every entry of an audit report as a failure with its word."""
        self.checked += max(report.checked, 1)
        for entry in report.entries:
            self.failures.append(
                CheckResult(
                    f"{report.name}: {entry.kind}",
                    0,
                    entry.residual,
                    entry.word,
                    entry.word,
                )
            )

    def result(self) -> SuiteResult:
        """Return the collected outcome."""
        _LOGGER.debug(
            "Suite %s: %s checks, %s failures",
            self.suite,
            self.checked,
            len(self.failures),
        )
        return SuiteResult(self.suite, self.checked, tuple(self.failures))


def _exact_roundtrip(
    d: Callable[[Form], Form], primitive: Callable[[Form], Form]
) -> Callable[[Form], Form]:
    """Return the probe nu -> d(primitive(d nu)) - d nu."""

    def probe(nu: Form) -> Form:
        boundary = d(nu)
        return d(primitive(boundary)) - boundary

    return probe


def _free_primitive(a: Form) -> Form:
    return poincare_primitive(a).primitive


def _calculus_case(
    recorder: _Recorder, sig: Signature, sampler: Sampler, case: int
) -> None:
    a = sampler.form(sig)
    recorder.form("d^2 = 0", case, lambda form: differential(differential(form)), a)
    recorder.value("homotopy formula", case, homotopy_check(sampler.extended_form(sig)))
    recorder.form(
        "poincare round trip",
        case,
        _exact_roundtrip(differential, _free_primitive),
        sampler.form(sig, max_degree=min(sampler.max_degree, 3)),
    )
    recorder.form("euler", case, euler_residual, a)
    recorder.form("A_t commutes with d", case, a_t_commute_residual, a)
    recorder.form("d has bidegree (-1, 1)", case, bidegree_residual, a)
    left = sampler.parity_form(sig, sampler.rng.randint(0, 1), letters=range(len(sig)))
    recorder.form(
        "graded leibniz for d",
        case,
        lambda form: graded_leibniz_residual(left, form),
        sampler.form(sig),
    )


def free_calculus_suite(config: SuiteConfig) -> SuiteResult:
    """Check d^2, the homotopy formula and Poincare over the even free algebra."""
    recorder = _Recorder("free-calculus")
    sampler = config.sampler()
    sig = free_signature(config.n, params=ParamTable.of("h"))
    for case in range(config.cases):
        _calculus_case(recorder, sig, sampler, case)
    return recorder.result()


def graded_calculus_suite(config: SuiteConfig) -> SuiteResult:
    """Check the same identities with a random Z2 grading per case."""
    recorder = _Recorder("graded-calculus")
    sampler = config.sampler(1)
    for case in range(config.cases):
        parities = [sampler.rng.randint(0, 1) for _ in range(config.n)]
        sig = free_signature(config.n, parities=parities, params=ParamTable.of("h"))
        _calculus_case(recorder, sig, sampler, case)
    return recorder.result()


def _derivations(
    sampler: Sampler, sig: Signature, count: int, *, graded: bool
) -> list[Derivation]:
    """Return random derivations, of random parity when graded."""
    return [
        sampler.derivation(sig, sampler.rng.randint(0, 1) if graded else 0)
        for _ in range(count)
    ]


def _cartan_case(
    recorder: _Recorder, sig: Signature, sampler: Sampler, case: int, *, graded: bool
) -> None:
    prefix = "graded " if graded else ""
    count = MAX_CONTRACTIONS if case == 0 else sampler.rng.randint(1, MAX_CONTRACTIONS)
    zs = _derivations(sampler, sig, count, graded=graded)
    x, z = _derivations(sampler, sig, 2, graded=graded)
    a = sampler.form(sig)
    recorder.form(
        f"{prefix}cartan formula", case, lambda form: cartan_residual(zs, form), a
    )
    recorder.form(
        f"{prefix}contractions commute",
        case,
        lambda form: contraction_commute_residual(x, z, form),
        a,
    )
    recorder.form(
        f"{prefix}exchange", case, lambda form: exchange_residual(x, zs, form), a
    )
    if graded:
        return
    point = sampler.rng.choice(sig.points)
    recorder.form(
        "skew symmetry", case, lambda form: skew_symmetry_residuals(zs, form), a
    )
    recorder.form("y prefix", case, lambda form: y_prefix_residual(zs, point, form), a)
    left = sampler.parity_form(sig, sampler.rng.randint(0, 1), letters=range(len(sig)))
    if left:
        recorder.form(
            "leibniz (contraction)",
            case,
            lambda form: leibniz_residual(x, left, form, contraction=True),
            sampler.form(sig),
        )


def _lie_case(
    recorder: _Recorder, sig: Signature, sampler: Sampler, case: int, *, graded: bool
) -> None:
    prefix = "graded " if graded else ""
    x, y, z = _derivations(sampler, sig, 3, graded=graded)
    a = sampler.form(sig)
    recorder.value(f"{prefix}jacobi", case, jacobi_residual(x, y, z))
    recorder.form(
        f"{prefix}bracket action",
        case,
        lambda form: bracket_action_residual(x, z, form),
        a,
    )
    recorder.form(
        f"{prefix}d commutes with X", case, lambda form: commute_d_residual(x, form), a
    )
    recorder.form(
        f"{prefix}homotopy formula for X",
        case,
        lambda form: homotopy_formula_residual(x, form),
        a,
    )
    left = sampler.parity_form(sig, sampler.rng.randint(0, 1), letters=range(len(sig)))
    if left and not graded:
        recorder.form(
            "leibniz",
            case,
            lambda form: leibniz_residual(x, left, form),
            sampler.form(sig),
        )


def _derivation_suite(
    name: str,
    salt: int,
    run_case: Callable[..., None],
    config: SuiteConfig,
) -> SuiteResult:
    recorder = _Recorder(name)
    sampler = config.sampler(salt)
    even = free_signature(config.n)
    for case in range(config.cases):
        run_case(recorder, even, sampler, case, graded=False)
        parities = [sampler.rng.randint(0, 1) for _ in range(config.n)]
        graded = free_signature(config.n, parities=parities)
        run_case(recorder, graded, sampler, case, graded=True)
    return recorder.result()


def cartan_suite(config: SuiteConfig) -> SuiteResult:
    """Check the contraction identities, ungraded and graded."""
    return _derivation_suite("cartan", 2, _cartan_case, config)


def lie_suite(config: SuiteConfig) -> SuiteResult:
    """Check the Lie-derivative identities, ungraded and graded."""
    return _derivation_suite("lie", 8, _lie_case, config)


def _mixed_partials(
    system: RewriteSystem, first: str, second: str
) -> Callable[[Form], Form]:
    def probe(h_form: Form) -> Form:
        one_way = weyl_partial(weyl_partial(h_form, first, system), second, system)
        other_way = weyl_partial(weyl_partial(h_form, second, system), first, system)
        return one_way - other_way

    return probe


def _gradient_expansion(system: RewriteSystem) -> Callable[[Form], Form]:
    def probe(h_form: Form) -> Form:
        expansion = Form.zero(system.sig)
        for name, partial in weyl_gradient(h_form, system).items():
            expansion = expansion + Form.generator(system.sig, f"d{name}") * partial
        return system.normalize(system.differential(h_form) - expansion)

    return probe


def _d_squared(system: RewriteSystem) -> Callable[[Form], Form]:
    def probe(a: Form) -> Form:
        return system.differential(system.differential(a))

    return probe


def weyl_suite(config: SuiteConfig) -> SuiteResult:
    """Check normal ordering, partials, symbols and the quantum Poincare lemma."""
    recorder = _Recorder("weyl")
    sampler = config.sampler(3)
    system = weyl_algebra(config.n)
    sig = system.sig
    for index in range(1, config.n + 1):
        recorder.value(
            "canonical commutation",
            0,
            system.element(f"p{index}*q{index}")
            - system.element(f"q{index}*p{index} + h"),
        )
    points = [sig[gen_id].name for gen_id in system.order if sig[gen_id].is_point]
    top = min(config.max_degree, 3)
    for case in range(config.cases):
        h_form = system.normalize(sampler.zero_form(sig))
        first, second = sampler.rng.sample(points, 2)
        mixed = _mixed_partials(system, first, second)
        recorder.form("mixed partials", case, mixed, h_form)
        recorder.form("d = sum du d/du", case, _gradient_expansion(system), h_form)
        recorder.form(
            "d^2 = 0", case, _d_squared(system), system.normalize(sampler.form(sig))
        )
        recorder.value(
            "homotopy formula", case, homotopy_check(sampler.extended_form(sig), system)
        )
        recorder.form(
            "quantum poincare",
            case,
            _exact_roundtrip(
                system.differential,
                lambda form: quantum_poincare(form, system).primitive,
            ),
            system.normalize(sampler.form(sig, max_degree=top)),
        )
    for pairs in TRANSFER_PAIRS:
        _symbol_transfer_case(recorder, weyl_algebra(pairs))
    return recorder.result()


def _symbol_transfer_case(recorder: _Recorder, system: RewriteSystem) -> None:
    """Check the symbol map and the transfer primitive on every short normal word."""
    transfer = _exact_roundtrip(
        system.differential, lambda form: quantum_poincare(form, system).primitive
    )
    for case, word in enumerate(system.normal_words(TRANSFER_DEGREE)):
        a = Form.word(system.sig, word)
        recorder.form(
            f"{system.name}: symbol commutes with d",
            case,
            lambda form: symbol_transfer_residual(form, system),
            a,
        )
        recorder.form(f"{system.name}: transfer primitive", case, transfer, a)


def clebsch_suite(config: SuiteConfig) -> SuiteResult:
    """Check the Clebsch relations for every Lie preset, plain, rescaled and graded."""
    recorder = _Recorder("clebsch")
    for name in LIE_PRESETS:
        data = lie_preset(name)
        recorder.report(clebsch_verify(data))
        recorder.report(clebsch_verify(data, rescaled=True))
    recorder.report(clebsch_verify(gl_data(2), gradings=(1, 1)))
    graded = clebsch_system(2, (0, 1))
    recorder.report(check_local_confluence(graded, CONFLUENCE_DEGREE))
    _LOGGER.debug("Clebsch suite is exhaustive; seed %s unused", config.seed)
    return recorder.result()


def complexes_suite(config: SuiteConfig) -> SuiteResult:
    """Audit every shipped complex and check d^2 on random forms over each."""
    recorder = _Recorder("complexes")
    sampler = config.sampler(4)
    top = min(config.max_degree, 3)
    for name in COMPLEX_PRESETS:
        system = complex_preset(name).system
        recorder.report(check_d_compatibility(system))
        for case in range(config.scaled(COMPLEX_FORMS)):
            a = system.normalize(sampler.form(system.sig, max_degree=top))
            recorder.form(f"{name}: d^2 = 0", case, _d_squared(system), a)
    for case in range(config.scaled(EHRENFEST_MATRICES)):
        matrix = sampler.rational_matrix(3)
        _LOGGER.debug("Ehrenfest case %s: %s", case, matrix)
        ehrenfest = ehrenfest_complex(matrix, verify=False).system
        recorder.report(check_d_compatibility(ehrenfest))
    for subalgebra in ("full", "upper", "upper-nilpotent"):
        recorder.report(cartan_involution_check(2, subalgebra))
    verdict = sl2_ghostless_check()
    recorder.truth(
        "sl2 ghostless determinant", 0, not verdict.exists, str(verdict.determinant)
    )
    return recorder.result()


def _q_case(
    recorder: _Recorder,
    system: QRewriteSystem,
    sampler: Sampler,
    case: int,
) -> None:
    sig = system.sig
    size = system.qmatrix.n
    h_form = system.normalize(sampler.zero_form(sig))
    first, second = sampler.rng.sample(range(1, size + 1), 2)
    i, j = sampler.rng.sample(range(1, size + 1), 2)
    k = sampler.rng.randint(1, size)
    recorder.form(
        "d^2 = 0", case, _d_squared(system), system.normalize(sampler.form(sig))
    )
    recorder.form(
        "d = sum dx_k d_k", case, lambda form: q_d_check(form, system), h_form
    )
    recorder.form(
        "partials q-commute",
        case,
        lambda form: q_partials_commute_residual(form, first, second, system),
        h_form,
    )
    recorder.form(
        "ideal stability",
        case,
        lambda form: ideal_residual(i, j, k, form, system.qmatrix),
        sampler.zero_form(sig),
    )
    recorder.value(
        "homotopy formula", case, homotopy_check(sampler.extended_form(sig), system)
    )
    recorder.form(
        "A_t commutes with d",
        case,
        lambda form: a_t_commute_residual(form, system),
        system.normalize(sampler.form(sig, max_degree=min(sampler.max_degree, 3))),
    )
    recorder.form(
        "poincare round trip",
        case,
        _exact_roundtrip(
            system.differential, lambda form: poincare_primitive(form, system).primitive
        ),
        system.normalize(sampler.form(sig, max_degree=min(sampler.max_degree, 3))),
    )


def _group_case(
    recorder: _Recorder, system: GroupQSystem, sampler: Sampler, case: int
) -> None:
    label = str(system.family.group)
    g = sampler.rng.choice(system.family.group.elements)
    omega = system.normalize(
        sampler.positive_form(system.sig, max_degree=min(sampler.max_degree, 3))
    )

    def commutes_with_d(form: Form) -> Form:
        return act(g, system.differential(form), system) - system.differential(
            act(g, form, system)
        )

    def commutes_with_primitive(form: Form) -> Form:
        moved_after = act(g, equivariant_primitive(form, system), system)
        return moved_after - equivariant_primitive(act(g, form, system), system)

    recorder.form(f"{label}: action commutes with d", case, commutes_with_d, omega)
    recorder.form(
        f"{label}: equivariant primitive", case, commutes_with_primitive, omega
    )
    recorder.form(
        f"{label}: decomposition",
        case,
        lambda form: decomposition_residual(form, system),
        omega,
    )
    recorder.form(
        f"{label}: action commutes with A_t",
        case,
        lambda form: action_a_t_residual(g, form, system),
        omega,
    )
    extended = sampler.extended_form(system.sig, max_degree=min(sampler.max_degree, 3))
    recorder.value(
        f"{label}: action commutes with I",
        case,
        action_homotopy_residual(g, extended, system),
        extended.to_text(),
    )


def qspace_suite(config: SuiteConfig) -> SuiteResult:
    """Check the Q-space lemmas and the equivariance of the group-indexed spaces."""
    recorder = _Recorder("qspace")
    sampler = config.sampler(5)
    system = q_algebra(QMatrix.symbolic(QSPACE_N))
    recorder.report(check_at_compatibility(system))
    for case in range(config.cases):
        _q_case(recorder, system, sampler, case)
    for orders in GROUP_ORDERS:
        group_system = group_algebra(GroupQFamily.symbolic(2, GroupIndex(orders)))
        for case in range(config.cases):
            _group_case(recorder, group_system, sampler, case)
    return recorder.result()


def antidifference_residual(g: sympy.Expr, variant: int) -> sympy.Expr:
    """Return the defect of antidifference(g) as a solution with value 0 at x = 0."""
    primitive = antidifference(g, variant)
    if variant == 1:
        step = primitive.subs(X_SYMBOL, X_SYMBOL + 1) - primitive
    else:
        step = primitive - primitive.subs(X_SYMBOL, X_SYMBOL - 1)
    return sympy.expand(step - g) + primitive.subs(X_SYMBOL, 0)


def discrete_suite(config: SuiteConfig) -> SuiteResult:
    """Check the discrete Poincare lemma and the antidifference solver."""
    recorder = _Recorder("discrete")
    sampler = config.sampler(6)
    for variant in (1, 2):
        system = discrete_system(variant)
        for case in range(config.cases):
            omega = discrete_d(system.normalize(sampler.zero_form(system.sig)), variant)
            primitive = discrete_poincare(omega, variant)
            recorder.value(
                f"variant {variant}: discrete poincare",
                case,
                system.normalize(discrete_d(primitive, variant) - omega),
                omega.to_text(),
            )
            g = sympy.Add(
                *(
                    sampler.rng.randint(-3, 3) * X_SYMBOL**power
                    for power in range(sampler.rng.randint(0, config.max_degree) + 1)
                )
            )
            residual = antidifference_residual(g, variant)
            recorder.truth(
                f"variant {variant}: antidifference", case, residual == 0, str(residual)
            )
    return recorder.result()


def shipped_systems() -> Iterator[RewriteSystem]:
    """Yield every shipped presentation."""
    yield weyl_algebra(1)
    yield weyl_algebra(2)
    yield q_algebra(QMatrix.symbolic(QSPACE_N))
    yield clebsch_system(2)
    yield group_algebra(GroupQFamily.symbolic(2, GroupIndex((2,))))
    for name in COMPLEX_PRESETS:
        yield complex_preset(name).system


def _strategies_agree(system: RewriteSystem) -> Callable[[Form], Form]:
    def probe(a: Form) -> Form:
        return system.normalize(a, Strategy.LEFTMOST) - system.normalize(
            a, Strategy.RIGHTMOST
        )

    return probe


def confluence_suite(config: SuiteConfig) -> SuiteResult:
    """Check confluence, strategy independence and the compatibility of normalize."""
    recorder = _Recorder("confluence")
    sampler = config.sampler(7)
    systems = [config.system] if config.system is not None else list(shipped_systems())
    for system in systems:
        recorder.report(check_local_confluence(system, CONFLUENCE_DEGREE))
        for case in range(config.scaled(STRATEGY_WORDS)):
            a = sampler.form(system.sig)
            b = sampler.form(system.sig)
            recorder.form(
                f"{system.name}: strategies agree", case, _strategies_agree(system), a
            )
            normal = system.normalize(a)
            recorder.value(
                f"{system.name}: idempotent", case, system.normalize(normal) - normal
            )
            recorder.value(
                f"{system.name}: normalize respects products",
                case,
                product_residual(system, a, b),
                f"({a}) * ({b})",
            )
    return recorder.result()


SUITES: dict[str, Callable[[SuiteConfig], SuiteResult]] = {
    "free-calculus": free_calculus_suite,
    "graded-calculus": graded_calculus_suite,
    "cartan": cartan_suite,
    "lie": lie_suite,
    "weyl": weyl_suite,
    "clebsch": clebsch_suite,
    "complexes": complexes_suite,
    "qspace": qspace_suite,
    "discrete": discrete_suite,
    "confluence": confluence_suite,
}


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteResult:
    """Run one suite by name.

    Args:
    ----
        name: A key of SUITES.
        config: The run configuration.

    Returns:
    -------
        A SuiteResult object.

    Raises:
    ------
        ValueError: Raised for an unknown suite.

    """
    try:
        suite = SUITES[name]
    except KeyError as err:
        raise ValueError(f"Unknown suite: {name}") from err
    config = config or SuiteConfig()
    _LOGGER.debug("Running %s with %s", name, config)
    return suite(config)
