"""Define differential complexes on Lie algebras and their audits."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, NamedTuple

import sympy
from sympy.functions.combinatorial.numbers import stirling
from sympy.polys.domains import QQ

from ncforms.errors import (
    InvalidLieDataError,
    InvalidPresentationError,
    NotClosedError,
    raise_on_report,
)
from ncforms.freeforms import Form, Generator, GeneratorKind, Signature, substitute
from ncforms.helpers.types import DictType, Word
from ncforms.quantum import LieData, as_rational, lie_preset
from ncforms.report import AuditEntry, AuditReport
from ncforms.rewrite import (
    PresentationBuilder,
    RewriteSystem,
    audit,
    check_d_compatibility,
)
from ncforms.scalars import ParamTable, Scalar

_LOGGER = logging.getLogger(__name__)

X_SYMBOL = sympy.Symbol("x")
Y_SYMBOL = sympy.Symbol("y")


@dataclass(frozen=True)
class ComplexPresentation:
    """Define a differential complex presented by a rewrite system."""

    name: str
    system: RewriteSystem
    data: LieData | None = None

    @property
    def sig(self) -> Signature:
        """Return the signature of the complex."""
        return self.system.sig

    def d(self, a: Form) -> Form:
        """Return the normal form of d(a)."""
        return self.system.differential(a)

    def normalize(self, a: Form) -> Form:
        """Return the normal form of a Form."""
        return self.system.normalize(a)

    def element(self, text: str) -> Form:
        """Parse and normalize expression text."""
        return self.system.element(text)

    def audit(self, max_degree: int = 3) -> AuditReport:
        """Run the confluence, d-compatibility and completeness audits."""
        return audit(self.system, max_degree)

    def to_dict(self) -> DictType:
        """Return the JSON export of the presentation."""
        data = self.system.to_dict()
        data["name"] = self.name
        if self.data is not None:
            data["lie_data"] = self.data.to_dict()
        return data


def _finish(
    builder: PresentationBuilder, data: LieData | None = None, *, verify: bool = True
) -> ComplexPresentation:
    """Build the system and, when asked, require a clean d-compatibility audit."""
    system = builder.build()
    if verify:
        raise_on_report(check_d_compatibility(system))
    return ComplexPresentation(system.name, system, data)


def _constant(params: ParamTable, value: Any) -> Scalar:
    return Scalar.constant(params, value)


def general_complex(
    data: LieData, finite: bool = False, *, verify: bool = True
) -> ComplexPresentation:
    """Create the ghost complex on U(g) for a Lie algebra and a representation.

    Generators are ordered rho, w, W, e: rho[a,b] is even of y-degree 2, w[a,b] and
    W[a,b] are odd of y-degree 1 and the e_i are the algebra generators.

    Args:
    ----
        data: The Lie data.
        finite: Also impose the finiteness relations on same-index ghost products.
        verify: Require a clean d-compatibility audit.

    Returns:
    -------
        A ComplexPresentation object.

    Raises:
    ------
        AuditFailureError: Raised when verification fails.

    """
    m, dim = data.repdim, data.dim
    pairs = list(product(range(m), repeat=2))
    generators: list[Generator] = []
    for label, parity, ydeg in (("rho", 0, 2), ("w", 1, 1), ("W", 1, 1)):
        generators.extend(
            Generator(
                f"{label}[{a + 1},{b + 1}]",
                GeneratorKind.DIFFERENTIAL,
                parity=parity,
                ydeg=ydeg,
            )
            for a, b in pairs
        )
    generators.extend(
        Generator(f"e{i + 1}", GeneratorKind.POINT, index=i + 1) for i in range(dim)
    )
    params = ParamTable()
    sig = Signature(tuple(generators), params)
    size = m * m

    def rho(a: int, b: int) -> int:
        return a * m + b

    def omega(a: int, b: int) -> int:
        return size + a * m + b

    def big_omega(a: int, b: int) -> int:
        return 2 * size + a * m + b

    def e(i: int) -> int:
        return 3 * size + i

    def word(gen_id: int, value: Any = 1) -> Form:
        return Form.word(sig, (gen_id,), _constant(params, value))

    suffix = " finite" if finite else ""
    builder = PresentationBuilder(
        sig, range(len(sig)), f"ghost complex({data.name}){suffix}"
    )
    for i, j in product(range(dim), repeat=2):
        if i < j:
            extra = Form.zero(sig)
            for k in range(dim):
                if value := data.constant(i, j, k):
                    extra = extra + word(e(k), value)
            builder.commute(e(i), e(j), 1, extra)
    for i, (alpha, beta) in product(range(dim), pairs):
        extra = Form.zero(sig)
        for nu in range(m):
            if value := data.entry(i, beta, nu):
                extra = extra + word(omega(alpha, nu), value)
        builder.commute(e(i), omega(alpha, beta), 1, extra)
        extra = Form.zero(sig)
        for mu in range(m):
            if value := data.entry(i, mu, alpha):
                extra = extra - word(big_omega(mu, beta), value)
        builder.commute(e(i), big_omega(alpha, beta), 1, extra)
    for first, second in product(pairs, repeat=2):
        builder.commute(rho(*first), rho(*second))
        builder.commute(rho(*first), omega(*second))
        builder.commute(rho(*first), big_omega(*second))
        if first <= second:
            builder.commute(omega(*first), omega(*second), -1)
            builder.commute(big_omega(*first), big_omega(*second), -1)
        (alpha, beta), (mu, nu) = first, second
        extra = word(rho(alpha, nu), -1) if mu == beta else None
        builder.commute(omega(alpha, beta), big_omega(mu, nu), -1, extra)
    for first, i in product(pairs, range(dim)):
        builder.commute(rho(*first), e(i))

    if finite:
        for a, mu, nu in product(range(m), repeat=3):
            for left, right in (
                (omega(a, mu), omega(a, nu)),
                (big_omega(mu, a), big_omega(nu, a)),
                (omega(a, mu), rho(a, nu)),
                (big_omega(mu, a), rho(nu, a)),
                (rho(a, mu), rho(a, nu)),
                (rho(mu, a), rho(nu, a)),
            ):
                builder.annihilate(left, right).annihilate(right, left)

    for i in range(dim):
        image = Form.zero(sig)
        for (index, alpha, beta), value in data.rep.items():
            if index == i:
                image = (
                    image
                    + word(omega(alpha, beta), value)
                    + word(big_omega(alpha, beta), value)
                )
        builder.d_image(e(i), image)
    for a, b in pairs:
        builder.d_image(omega(a, b), word(rho(a, b), -1))
        builder.d_image(big_omega(a, b), word(rho(a, b)))
        builder.d_image(rho(a, b), Form.zero(sig))
    return _finish(builder, data, verify=verify)


def ehrenfest_complex(
    matrix: Sequence[Sequence[Any]],
    *,
    names: Sequence[str] | None = None,
    name: str | None = None,
    verify: bool = True,
) -> ComplexPresentation:
    """Create the ghost-free complex of the Ehrenfest algebra [e_i, eb_j] = A_ji eb_j.

    Normal words list e's, eb's, de's and deb's in that order, so differentials
    sit on the right.

    Args:
    ----
        matrix: The square matrix A.
        names: Optional names for the 2r points (differentials prepend ``d``).
        name: The system name.
        verify: Require a clean d-compatibility audit.

    Returns:
    -------
        A ComplexPresentation object.

    Raises:
    ------
        InvalidPresentationError: Raised when the matrix is not square.

    """
    r = len(matrix)
    if any(len(row) != r for row in matrix):
        raise InvalidPresentationError("The Ehrenfest matrix must be square")
    entries = [[as_rational(value) for value in row] for row in matrix]
    points = list(names) if names else [f"e{i + 1}" for i in range(r)] + [
        f"eb{i + 1}" for i in range(r)
    ]
    generators = [
        Generator(
            name,
            GeneratorKind.POINT,
            partner=2 * r + position,
            index=position % r + 1,
        )
        for position, name in enumerate(points)
    ] + [
        Generator(
            f"d{name}",
            GeneratorKind.DIFFERENTIAL,
            parity=1,
            ydeg=1,
            partner=position,
            index=position % r + 1,
        )
        for position, name in enumerate(points)
    ]
    params = ParamTable()
    sig = Signature(tuple(generators), params)
    builder = PresentationBuilder(sig, range(4 * r), name or f"ehrenfest({r})")
    for first, second in product(range(2 * r), repeat=2):
        if first < second:
            builder.commute(first, second)
            builder.commute(2 * r + first, 2 * r + second, -1)
        if first == second:
            builder.commute(2 * r + first, 2 * r + first, -1)
    for point, differential in product(range(2 * r), range(2 * r, 4 * r)):
        i, j = point, differential - 3 * r
        if point < r and j >= 0 and entries[j][i]:
            builder.commute(
                point,
                differential,
                1,
                Form.word(sig, (differential,), _constant(params, entries[j][i])),
            )
        else:
            builder.commute(point, differential)
    for i, j in product(range(r), repeat=2):
        if entries[j][i]:
            image = Form.word(sig, (r + j,), _constant(params, entries[j][i]))
            builder.commute(i, r + j, 1, image)
    return _finish(builder, verify=verify)


def aff1_complex() -> ComplexPresentation:
    """Return the complex on U(aff(1)) with [e1, e2] = e2."""
    return ehrenfest_complex([[1]], names=["e1", "e2"], name="aff1")


class Subalgebra(Enum):
    """Define the gl(n) subalgebras a complex can be built on."""

    FULL = "full"
    UPPER = "upper"
    LOWER = "lower"
    UPPER_NILPOTENT = "upper-nilpotent"
    LOWER_NILPOTENT = "lower-nilpotent"

    def contains(self, i: int, alpha: int) -> bool:
        """Return whether e_(i alpha) lies in the subalgebra."""
        return {
            Subalgebra.FULL: True,
            Subalgebra.UPPER: i <= alpha,
            Subalgebra.LOWER: i >= alpha,
            Subalgebra.UPPER_NILPOTENT: i < alpha,
            Subalgebra.LOWER_NILPOTENT: i > alpha,
        }[self]

    @property
    def transposed(self) -> Subalgebra:
        """Return the subalgebra of transposed matrices."""
        return {
            Subalgebra.UPPER: Subalgebra.LOWER,
            Subalgebra.LOWER: Subalgebra.UPPER,
            Subalgebra.UPPER_NILPOTENT: Subalgebra.LOWER_NILPOTENT,
            Subalgebra.LOWER_NILPOTENT: Subalgebra.UPPER_NILPOTENT,
        }.get(self, Subalgebra.FULL)


GL_VARIANTS: tuple[str, ...] = ("left", "right")


def gl_complex(
    n: int,
    variant: str = "left",
    subalgebra: Subalgebra | str = Subalgebra.FULL,
    *,
    verify: bool = True,
) -> ComplexPresentation:
    """Create a ghost-free complex on U(gl(n)) or one of its triangular subalgebras.

    The left variant reads [e_(i a), de_(j b)] = delta_ja de_(i b); the right one
    reads [e_(i a), de_(j b)] = -delta_ib de_(j a).

    Args:
    ----
        n: The matrix size (at least 2).
        variant: ``left`` or ``right``.
        subalgebra: The subalgebra preset.
        verify: Require a clean d-compatibility audit.

    Returns:
    -------
        A ComplexPresentation object with differentials leftmost.

    Raises:
    ------
        ValueError: Raised for n < 2 or an unknown variant.

    """
    if n < 2:
        raise ValueError("gl complexes need n >= 2")
    if variant not in GL_VARIANTS:
        raise ValueError(f"Unknown gl variant: {variant}")
    subalgebra = Subalgebra(subalgebra)
    indices = [
        (i, alpha)
        for i, alpha in product(range(n), repeat=2)
        if subalgebra.contains(i, alpha)
    ]
    size = len(indices)
    generators = [
        Generator(
            f"de[{i + 1},{alpha + 1}]",
            GeneratorKind.DIFFERENTIAL,
            parity=1,
            ydeg=1,
            partner=size + position,
        )
        for position, (i, alpha) in enumerate(indices)
    ] + [
        Generator(f"e[{i + 1},{alpha + 1}]", GeneratorKind.POINT, partner=position)
        for position, (i, alpha) in enumerate(indices)
    ]
    sig = Signature(tuple(generators), ParamTable())
    position_of = {index: position for position, index in enumerate(indices)}

    def e(i: int, alpha: int) -> int:
        return size + position_of[(i, alpha)]

    def de(i: int, alpha: int) -> int:
        return position_of[(i, alpha)]

    def term(gen_id: int, sign: int) -> Form:
        return Form.word(sig, (gen_id,), sign)

    name = f"gl({n},{variant})"
    if subalgebra is not Subalgebra.FULL:
        name = f"gl({n},{variant},{subalgebra.value})"
    builder = PresentationBuilder(sig, range(2 * size), name)
    for (i, alpha), (j, beta) in product(indices, repeat=2):
        if (i, alpha) < (j, beta):
            extra = Form.zero(sig)
            if j == alpha:
                extra = extra + term(e(i, beta), 1)
            if i == beta:
                extra = extra - term(e(j, alpha), 1)
            builder.commute(e(i, alpha), e(j, beta), 1, extra)
        if (i, alpha) <= (j, beta):
            builder.commute(de(i, alpha), de(j, beta), -1)
        extra = Form.zero(sig)
        if variant == "left" and j == alpha:
            extra = term(de(i, beta), 1)
        if variant == "right" and i == beta:
            extra = term(de(j, alpha), -1)
        builder.commute(e(i, alpha), de(j, beta), 1, extra)
    return _finish(builder, verify=verify)


def _involution_images(source: Signature, target: Signature) -> list[Form]:
    """Return theta(g) = -g^t on every generator, as Forms over ``target``."""
    images = []
    for gen in source.generators:
        stem, indices = gen.name.split("[")
        i, alpha = indices.rstrip("]").split(",")
        images.append(-Form.generator(target, f"{stem}[{alpha},{i}]"))
    return images


def cartan_involution_check(
    n: int, subalgebra: Subalgebra | str = Subalgebra.FULL
) -> AuditReport:
    """Check that theta(g) = -g^t carries the left gl rules onto the right ones.

    Args:
    ----
        n: The matrix size.
        subalgebra: The subalgebra of the left complex; the right complex uses
            its transpose.

    Returns:
    -------
        A report with one entry per left rule whose image is not a right relation.

    """
    subalgebra = Subalgebra(subalgebra)
    left = gl_complex(n, "left", subalgebra).system
    right = gl_complex(n, "right", subalgebra.transposed).system
    images = _involution_images(left.sig, right.sig)
    entries: list[AuditEntry] = []
    for pair, rule in sorted(left.rules.items()):
        mapped = substitute(Form.word(left.sig, pair), images, right.sig)
        image_rule = substitute(rule.right, images, right.sig)
        ((word, sign),) = mapped.terms.items()
        if (word[0], word[1]) in right.rules:
            residual = right.rules[(word[0], word[1])].right.scale(sign) - image_rule
        else:
            residual = right.normalize(mapped - image_rule)
        if residual:
            entries.append(
                AuditEntry("involution", left.sig.word_text(pair), residual.to_text())
            )
    return AuditReport(
        f"theta: {left.name} -> {right.name}", len(left.rules), tuple(entries)
    )


class DiscreteVariant(NamedTuple):
    """Define one of the two difference calculi on the aff(1) subcomplex."""

    number: int
    order: tuple[str, ...]
    shift: int


DISCRETE_VARIANTS: dict[int, DiscreteVariant] = {
    1: DiscreteVariant(1, ("dy", "dx", "y", "x"), 1),
    2: DiscreteVariant(2, ("dx", "dy", "x", "y"), -1),
}


def _variant(variant: int) -> DiscreteVariant:
    try:
        return DISCRETE_VARIANTS[variant]
    except KeyError as err:
        raise ValueError(f"Unknown discrete variant: {variant}") from err


def discrete_system(variant: int = 1) -> RewriteSystem:
    """Create the aff(1) subcomplex where d acts by a shift difference in x.

    Variant 1 orders dy, dx, y, x with [x, y] = y; variant 2 orders dx, dy, x, y
    with [y, x] = -y.

    Args:
    ----
        variant: 1 (forward difference) or 2 (backward difference).

    Returns:
    -------
        A RewriteSystem object.

    """
    rule = _variant(variant)
    names = rule.order
    generators = tuple(
        Generator(
            name,
            GeneratorKind.DIFFERENTIAL if name.startswith("d") else GeneratorKind.POINT,
            parity=1 if name.startswith("d") else 0,
            ydeg=1 if name.startswith("d") else 0,
            partner=names.index(name[1:] if name.startswith("d") else f"d{name}"),
        )
        for name in names
    )
    sig = Signature(generators, ParamTable())

    def gen(name: str) -> Form:
        return Form.generator(sig, name)

    builder = PresentationBuilder(sig, names, f"discrete({variant})")
    builder.commute("dx", "dx", -1).commute("dy", "dy", -1).commute("dx", "dy", -1)
    builder.commute("y", "dy")
    if variant == 1:
        builder.commute("x", "y", 1, gen("y"))
        builder.commute("x", "dx", 1, gen("dx"))
        builder.commute("x", "dy", 1, gen("dy"))
        builder.commute("y", "dx")
    else:
        builder.commute("y", "x", 1, -gen("y"))
        builder.commute("x", "dx", 1, -gen("dx"))
        builder.commute("y", "dx", 1, -gen("dy"))
        builder.commute("x", "dy")
    return builder.build()


def _letters(sig: Signature, word: Word) -> dict[str, int]:
    counts: dict[str, int] = {}
    for letter in word:
        counts[sig[letter].name] = counts.get(sig[letter].name, 0) + 1
    return counts


def _to_polynomial(a: Form) -> sympy.Expr:
    """Read a normal 0-form in x, y as a commutative polynomial."""
    total = sympy.Integer(0)
    for word, coefficient in a.terms.items():
        counts = _letters(a.sig, word)
        if counts.keys() - {"x", "y"}:
            raise ValueError(f"{a} is not a 0-form")
        total += (
            coefficient.to_sympy()
            * X_SYMBOL ** counts.get("x", 0)
            * Y_SYMBOL ** counts.get("y", 0)
        )
    return sympy.expand(total)


def _from_polynomial(
    system: RewriteSystem, expr: sympy.Expr, prefix: tuple[str, ...] = ()
) -> Form:
    """Write ``prefix * expr`` as a normal Form, with x, y in the variant's order."""
    sig = system.sig
    letters = [sig[gen_id].name for gen_id in system.order if sig[gen_id].is_point]
    total = Form.zero(sig)
    if sympy.expand(expr) == 0:
        return total
    poly = sympy.Poly(sympy.expand(expr), X_SYMBOL, Y_SYMBOL)
    for (x_power, y_power), coefficient in poly.terms():
        powers = {"x": x_power, "y": y_power}
        word = [sig.gen_id(name) for name in prefix]
        for name in letters:
            word.extend([sig.gen_id(name)] * powers[name])
        total = total + Form.word(
            sig, word, Scalar.constant(sig.params, QQ.from_sympy(coefficient))
        )
    return total


def _difference(expr: sympy.Expr, shift: int) -> sympy.Expr:
    """Return f(x+1) - f(x) for shift 1, or f(x) - f(x-1) for shift -1."""
    if shift > 0:
        return sympy.expand(expr.subs(X_SYMBOL, X_SYMBOL + 1) - expr)
    return sympy.expand(expr - expr.subs(X_SYMBOL, X_SYMBOL - 1))


def discrete_d(f: Form, variant: int = 1) -> Form:
    """Apply the mixed differential dy f_y + dx (shift difference of f in x).

    Args:
    ----
        f: A 0-form over ``discrete_system(variant)``.
        variant: 1 or 2.

    Returns:
    -------
        d(f) in normal form.

    """
    rule = _variant(variant)
    system = discrete_system(variant)
    poly = _to_polynomial(system.normalize(f))
    return _from_polynomial(
        system, sympy.diff(poly, Y_SYMBOL), ("dy",)
    ) + _from_polynomial(system, _difference(poly, rule.shift), ("dx",))


def antidifference(g: sympy.Expr, variant: int = 1) -> sympy.Expr:
    """Solve G(x+1) - G(x) = g, or G(x) - G(x-1) = g for variant 2, with G(0) = 0.

    Args:
    ----
        g: A polynomial in x.
        variant: 1 or 2.

    Returns:
    -------
        The polynomial antidifference, expanded.

    """
    rule = _variant(variant)
    poly = sympy.Poly(sympy.expand(g), X_SYMBOL)
    total = sympy.Integer(0)
    for (power,), coefficient in poly.terms():
        for j in range(power + 1):
            weight = stirling(power, j)
            if not weight:
                continue
            if rule.shift > 0:
                total += coefficient * weight * sympy.ff(X_SYMBOL, j + 1) / (j + 1)
            else:
                total += (
                    coefficient
                    * (-1) ** (power - j)
                    * weight
                    * sympy.rf(X_SYMBOL, j + 1)
                    / (j + 1)
                )
    return sympy.expand(sympy.expand_func(total))


def _one_form_parts(
    system: RewriteSystem, omega: Form
) -> tuple[sympy.Expr, sympy.Expr]:
    """Split a normal 1-form into its dy and dx coefficient polynomials."""
    sig = system.sig
    parts: dict[str, dict[Word, Scalar]] = {"dy": {}, "dx": {}}
    for word, coefficient in system.normalize(omega).terms.items():
        head = sig[word[0]].name if word else ""
        if head not in parts or any(sig[letter].ydeg for letter in word[1:]):
            raise ValueError(f"{omega} is not a 1-form")
        parts[head][word[1:]] = coefficient
    return (
        _to_polynomial(Form(sig, parts["dy"])),
        _to_polynomial(Form(sig, parts["dx"])),
    )


def discrete_poincare(omega: Form, variant: int = 1) -> Form:
    """Find a primitive of a closed 1-form dy a + dx b for the difference calculus.

    Args:
    ----
        omega: A 1-form over ``discrete_system(variant)``.
        variant: 1 or 2.

    Returns:
    -------
        F with discrete_d(F) = omega and no constant term.

    Raises:
    ------
        NotClosedError: Raised when the shift difference of a differs from b_y.

    """
    rule = _variant(variant)
    system = discrete_system(variant)
    a, b = _one_form_parts(system, omega)
    if sympy.expand(_difference(a, rule.shift) - sympy.diff(b, Y_SYMBOL)) != 0:
        raise NotClosedError(f"{omega} is not closed for the discrete differential")
    primitive = sympy.integrate(a, Y_SYMBOL)
    remainder = sympy.expand(b - _difference(primitive, rule.shift))
    total = sympy.expand(primitive + antidifference(remainder, variant))
    _LOGGER.debug("Discrete primitive (variant %s): %s", variant, total)
    return _from_polynomial(system, total)


def so_complex(n: int, *, verify: bool = True) -> ComplexPresentation:
    """Create the complex on U(so(n)) with generators M, th and rho.

    M[i,j] (i < j, with M[j,i] = -M[i,j]) are the algebra generators, th[i,j]
    are odd 1-forms and rho[i,j] (i <= j, symmetric) are central 2-forms.

    Args:
    ----
        n: The matrix size (at least 3).
        verify: Require a clean d-compatibility audit.

    Returns:
    -------
        A ComplexPresentation object ordered rho, th, M.

    Raises:
    ------
        ValueError: Raised for n < 3.

    """
    if n < 3:
        raise ValueError("so complexes need n >= 3")
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    strict = [(i, j) for i, j in upper if i < j]
    square = list(product(range(n), repeat=2))
    generators = (
        [
            Generator(f"rho[{i + 1},{j + 1}]", GeneratorKind.DIFFERENTIAL, ydeg=2)
            for i, j in upper
        ]
        + [
            Generator(
                f"th[{i + 1},{j + 1}]", GeneratorKind.DIFFERENTIAL, parity=1, ydeg=1
            )
            for i, j in square
        ]
        + [Generator(f"M[{i + 1},{j + 1}]", GeneratorKind.POINT) for i, j in strict]
    )
    rho_id = {pair: position for position, pair in enumerate(upper)}
    theta_id = {pair: len(upper) + position for position, pair in enumerate(square)}
    offset = len(upper) + len(square)
    m_id = {pair: offset + position for position, pair in enumerate(strict)}
    aliases = tuple(
        (f"M[{j + 1},{i + 1}]", -1, m_id[(i, j)]) for i, j in strict
    ) + tuple((f"rho[{j + 1},{i + 1}]", 1, rho_id[(i, j)]) for i, j in strict)
    sig = Signature(tuple(generators), ParamTable(), aliases)

    def m(i: int, j: int) -> Form:
        if i == j:
            return Form.zero(sig)
        if i < j:
            return Form.word(sig, (m_id[(i, j)],))
        return -Form.word(sig, (m_id[(j, i)],))

    def theta(i: int, j: int) -> Form:
        return Form.word(sig, (theta_id[(i, j)],))

    def rho(i: int, j: int) -> Form:
        return Form.word(sig, (rho_id[(min(i, j), max(i, j))],))

    def delta(a: int, b: int) -> int:
        return 1 if a == b else 0

    builder = PresentationBuilder(sig, range(len(sig)), f"so({n})")
    for (i, alpha), (j, beta) in product(strict, repeat=2):
        if (i, alpha) < (j, beta):
            extra = (
                m(i, beta).scale(delta(j, alpha))
                - m(j, alpha).scale(delta(i, beta))
                - m(i, j).scale(delta(alpha, beta))
                - m(alpha, beta).scale(delta(i, j))
            )
            builder.commute(m_id[(i, alpha)], m_id[(j, beta)], 1, extra)
    for (i, alpha), (j, beta) in product(strict, square):
        extra = theta(j, i).scale(delta(alpha, beta)) - theta(j, alpha).scale(
            delta(i, beta)
        )
        builder.commute(m_id[(i, alpha)], theta_id[(j, beta)], 1, extra)
    for (i, alpha), (j, beta) in product(square, repeat=2):
        if (i, alpha) <= (j, beta):
            builder.commute(
                theta_id[(i, alpha)],
                theta_id[(j, beta)],
                -1,
                rho(j, i).scale(delta(alpha, beta)),
            )
    for pair in upper:
        for other in range(len(sig)):
            if other != rho_id[pair]:
                builder.commute(rho_id[pair], other)

    for i, alpha in strict:
        builder.d_image(m_id[(i, alpha)], theta(i, alpha) - theta(alpha, i))
    for i, alpha in square:
        builder.d_image(theta_id[(i, alpha)], rho(i, alpha))
    for pair in upper:
        builder.d_image(rho_id[pair], Form.zero(sig))
    return _finish(builder, verify=verify)


class GhostlessVerdict(NamedTuple):
    """Define the outcome of the sl(2) ghostless-complex test."""

    matrix: sympy.Matrix
    determinant: sympy.Expr
    exists: bool


SL2_SYMBOLS: tuple[sympy.Symbol, ...] = sympy.symbols("lam mu nu")


def sl2_ghostless_matrix() -> sympy.Matrix:
    """Return the coefficient matrix a ghost-free sl(2) complex would have to invert."""
    lam, mu, nu = SL2_SYMBOLS
    return sympy.Matrix([[lam, 0, -nu], [0, -lam, mu], [-2 * mu, 2 * nu, 0]])


def sl2_ghostless_check() -> GhostlessVerdict:
    """Decide whether sl(2) admits a complex without ghosts.

    Returns
    -------
        The matrix, its symbolic determinant and whether it can be invertible.

    """
    matrix = sl2_ghostless_matrix()
    determinant = sympy.expand(matrix.det())
    return GhostlessVerdict(matrix, determinant, determinant != 0)


def ghostless_rank(values: Mapping[str, Any]) -> int:
    """Return the rank of the sl(2) ghostless matrix after substituting values."""
    substitutions: dict[Any, Any] = {
        symbol: values[symbol.name] for symbol in SL2_SYMBOLS if symbol.name in values
    }
    return int(sl2_ghostless_matrix().subs(substitutions).rank())


COMPLEX_PRESETS: tuple[str, ...] = (
    "aff1",
    "general-sl2",
    "gl2-left",
    "gl2-right",
    "gl3-left",
    "gl3-right",
    "so3",
    "so4",
    "discrete1",
    "discrete2",
)


def complex_preset(name: str) -> ComplexPresentation:
    """Return a shipped complex by name.

    Accepted names: ``aff1``, ``general-<lie>[-finite]`` for any Lie preset,
    ``glN-<variant>[-<subalgebra>]``, ``soN`` and ``discrete1``/``discrete2``.

    Args:
    ----
        name: The preset name.

    Returns:
    -------
        A ComplexPresentation object.

    Raises:
    ------
        InvalidPresentationError: Raised for an unknown name.

    """
    try:
        if name == "aff1":
            return aff1_complex()
        if name.startswith("general-"):
            lie_name, _, suffix = name.removeprefix("general-").partition("-")
            return general_complex(lie_preset(lie_name), finite=suffix == "finite")
        if name.startswith("discrete") and name[8:].isdigit():
            system = discrete_system(int(name[8:]))
            return ComplexPresentation(system.name, system)
        if name.startswith("gl"):
            size, variant, *rest = name[2:].split("-", 2)
            return gl_complex(int(size), variant, rest[0] if rest else Subalgebra.FULL)
        if name.startswith("so") and name[2:].isdigit():
            return so_complex(int(name[2:]))
    except (ValueError, InvalidLieDataError) as err:
        raise InvalidPresentationError(
            f"Unknown complex preset {name!r}: {err}"
        ) from err
    raise InvalidPresentationError(f"Unknown complex preset: {name!r}")
