"""Define h-quantum spaces, Lie data and quantum Clebsch representations."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any, NamedTuple

import sympy
from sympy.polys.domains import QQ

from ncforms.calculus import Primitive, transfer_primitive
from ncforms.errors import InvalidLieDataError
from ncforms.freeforms import Form, Generator, GeneratorKind, Signature, form_mul
from ncforms.helpers.types import Coefficient, DictType
from ncforms.report import AuditEntry, AuditReport
from ncforms.rewrite import PresentationBuilder, RewriteSystem
from ncforms.scalars import ParamTable, Scalar

_LOGGER = logging.getLogger(__name__)

Triple = tuple[int, int, int]


def as_rational(value: Any) -> Coefficient:
    """Convert an int, string or sympy number to a ``QQ`` element."""
    if isinstance(value, str):
        value = sympy.Rational(value)
    if isinstance(value, sympy.Basic):
        return QQ.from_sympy(value)
    return QQ.convert(value)


@dataclass(frozen=True)
class LieData:
    """Define a Lie algebra by structure constants, with a representation.

    ``c[(i, j, k)]`` is c^k_ij and ``rep[(i, alpha, beta)]`` is A^beta_(i alpha),
    all 0-based and sparse. ``parities`` optionally grades the representation
    basis.
    """

    name: str
    dim: int
    repdim: int
    c: Mapping[Triple, Coefficient] = field(default_factory=dict)
    rep: Mapping[Triple, Coefficient] = field(default_factory=dict)
    parities: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Validate antisymmetry, the Jacobi identity and the representation.

        Raises
        ------
            InvalidLieDataError: Raised when a check fails.

        """
        for (i, j, k), value in self.c.items():
            if not all(0 <= index < self.dim for index in (i, j, k)):
                raise InvalidLieDataError(f"{self.name}: structure index out of range")
            if self.c.get((j, i, k), QQ.zero) != -value:
                raise InvalidLieDataError(
                    f"{self.name}: c^{k + 1}_{i + 1}{j + 1} is not antisymmetric"
                )
        for i, alpha, beta in self.rep:
            in_range = 0 <= alpha < self.repdim and 0 <= beta < self.repdim
            if not (0 <= i < self.dim and in_range):
                raise InvalidLieDataError(
                    f"{self.name}: representation index out of range"
                )
        if self.parities and len(self.parities) != self.repdim:
            raise InvalidLieDataError(f"{self.name}: expected {self.repdim} parities")

        ads = [self.ad_matrix(i) for i in range(self.dim)]
        reps = [self.rep_matrix(i) for i in range(self.dim)]
        for i, j in product(range(self.dim), repeat=2):
            if i >= j:
                continue
            expected_ad = sympy.zeros(self.dim, self.dim)
            expected_rep = sympy.zeros(self.repdim, self.repdim)
            for k in range(self.dim):
                value = self.constant(i, j, k)
                if value:
                    expected_ad += QQ.to_sympy(value) * ads[k]
                    expected_rep += QQ.to_sympy(value) * reps[k]
            if ads[i] * ads[j] - ads[j] * ads[i] != expected_ad:
                raise InvalidLieDataError(
                    f"{self.name}: Jacobi identity fails for e{i + 1}, e{j + 1}"
                )
            if reps[i] * reps[j] - reps[j] * reps[i] != expected_rep:
                raise InvalidLieDataError(
                    f"{self.name}: representation condition fails "
                    f"for e{i + 1}, e{j + 1}"
                )

    def constant(self, i: int, j: int, k: int) -> Coefficient:
        """Return c^k_ij."""
        return self.c.get((i, j, k), QQ.zero)

    def entry(self, i: int, alpha: int, beta: int) -> Coefficient:
        """Return A^beta_(i alpha)."""
        return self.rep.get((i, alpha, beta), QQ.zero)

    def ad_matrix(self, i: int) -> sympy.Matrix:
        """Return the adjoint matrix of e_i, with entry (k, j) equal to c^k_ij."""
        return sympy.Matrix(
            self.dim,
            self.dim,
            lambda k, j: QQ.to_sympy(self.constant(i, j, k)),
        )

    def rep_matrix(self, i: int) -> sympy.Matrix:
        """Return the matrix of e_i; entry (beta, alpha) is A^beta_(i alpha)."""
        return sympy.Matrix(
            self.repdim,
            self.repdim,
            lambda beta, alpha: QQ.to_sympy(self.entry(i, alpha, beta)),
        )

    def parity(self, alpha: int) -> int:
        """Return the grading of the representation basis vector alpha."""
        return self.parities[alpha] % 2 if self.parities else 0

    def with_parities(self, parities: Sequence[int]) -> LieData:
        """Return the same data over a graded representation basis."""
        return LieData(
            self.name, self.dim, self.repdim, self.c, self.rep, tuple(parities)
        )

    @classmethod
    def from_matrices(
        cls: type[LieData],
        name: str,
        matrices: Sequence[sympy.Matrix],
        parities: Sequence[int] = (),
    ) -> LieData:
        """Create Lie data from a basis of matrices closed under commutators.

        Args:
        ----
            name: The algebra name.
            matrices: Linearly independent square matrices, which also give the
                representation.
            parities: Optional gradings of the representation basis.

        Returns:
        -------
            A LieData object.

        Raises:
        ------
            InvalidLieDataError: Raised when the span is not closed under commutators.

        """
        dim = len(matrices)
        repdim = matrices[0].rows
        size = repdim * repdim
        basis = sympy.Matrix.hstack(*[matrix.reshape(size, 1) for matrix in matrices])
        c: dict[Triple, Coefficient] = {}
        for i, j in product(range(dim), repeat=2):
            bracket = matrices[i] * matrices[j] - matrices[j] * matrices[i]
            try:
                solution, free = basis.gauss_jordan_solve(bracket.reshape(size, 1))
            except ValueError as err:
                raise InvalidLieDataError(
                    f"{name}: the matrices do not span a Lie algebra"
                ) from err
            if free.shape[0]:
                raise InvalidLieDataError(
                    f"{name}: the matrices are linearly dependent"
                )
            for k in range(dim):
                if solution[k] != 0:
                    c[(i, j, k)] = QQ.from_sympy(solution[k])
        rep = {
            (i, alpha, beta): QQ.from_sympy(matrices[i][beta, alpha])
            for i in range(dim)
            for alpha, beta in product(range(repdim), repeat=2)
            if matrices[i][beta, alpha] != 0
        }
        return cls(name, dim, repdim, c, rep, tuple(parities))

    @classmethod
    def from_dict(cls: type[LieData], data: Mapping[str, Any]) -> LieData:
        """Create Lie data from JSON with 1-based sparse entries.

        Args:
        ----
            data: ``{name?, dim, repdim, c: [[i, j, k, "value"]...],
                A: [[i, alpha, beta, "value"]...], parities?}``. A missing c^k_ji
                is filled in by antisymmetry.

        Returns:
        -------
            A LieData object.

        Raises:
        ------
            InvalidLieDataError: Raised on malformed data.

        """
        try:
            c: dict[Triple, Coefficient] = {}
            for i, j, k, value in data.get("c", []):
                c[(i - 1, j - 1, k - 1)] = as_rational(value)
            for (i, j, k), value in list(c.items()):
                c.setdefault((j, i, k), -value)
            rep = {
                (i - 1, alpha - 1, beta - 1): as_rational(value)
                for i, alpha, beta, value in data.get("A", [])
            }
            return cls(
                data.get("name", "custom"),
                int(data["dim"]),
                int(data["repdim"]),
                {key: value for key, value in c.items() if value},
                {key: value for key, value in rep.items() if value},
                tuple(data.get("parities", ())),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise InvalidLieDataError(f"Malformed Lie data: {err}") from err

    def to_dict(self) -> DictType:
        """Return the JSON shape with 1-based indices."""

        def text(value: Coefficient) -> str:
            return str(QQ.to_sympy(value))

        data: DictType = {
            "name": self.name,
            "dim": self.dim,
            "repdim": self.repdim,
            "c": [
                [i + 1, j + 1, k + 1, text(value)]
                for (i, j, k), value in sorted(self.c.items())
                if i < j
            ],
            "A": [
                [i + 1, alpha + 1, beta + 1, text(value)]
                for (i, alpha, beta), value in sorted(self.rep.items())
            ],
        }
        if self.parities:
            data["parities"] = list(self.parities)
        return data


def _unit(size: int, row: int, column: int) -> sympy.Matrix:
    """Return the matrix unit E_(row, column)."""
    matrix = sympy.zeros(size, size)
    matrix[row, column] = 1
    return matrix


def aff1_data() -> LieData:
    """Return aff(1) with [e1, e2] = e2 in its 2-dimensional representation."""
    return LieData.from_matrices("aff1", [_unit(2, 0, 0), _unit(2, 0, 1)])


def sl2_data() -> LieData:
    """Return sl(2) in the basis (H, E, F) with its fundamental representation."""
    return LieData.from_matrices(
        "sl2",
        [
            sympy.Matrix([[1, 0], [0, -1]]),
            sympy.Matrix([[0, 1], [0, 0]]),
            sympy.Matrix([[0, 0], [1, 0]]),
        ],
    )


def gl_data(n: int) -> LieData:
    """Return gl(n) in the basis e_(i alpha), ordered lexicographically."""
    return LieData.from_matrices(
        f"gl{n}", [_unit(n, i, alpha) for i, alpha in product(range(n), repeat=2)]
    )


def so_data(n: int) -> LieData:
    """Return so(n) in the basis E_ij - E_ji for i < j."""
    return LieData.from_matrices(
        f"so{n}",
        [
            _unit(n, i, j) - _unit(n, j, i)
            for i in range(n)
            for j in range(i + 1, n)
        ],
    )


def lie_preset(name: str) -> LieData:
    """Return a shipped Lie dataset: aff1, sl2, glN or soN.

    Args:
    ----
        name: The preset name.

    Returns:
    -------
        A LieData object.

    Raises:
    ------
        InvalidLieDataError: Raised for an unknown name.

    """
    if name == "aff1":
        return aff1_data()
    if name == "sl2":
        return sl2_data()
    if name[:2] in {"gl", "so"} and name[2:].isdigit():
        size = int(name[2:])
        return gl_data(size) if name.startswith("gl") else so_data(size)
    raise InvalidLieDataError(f"Unknown Lie preset: {name}")


LIE_PRESETS: tuple[str, ...] = ("aff1", "sl2", "gl2", "gl3", "so3")


def _canonical_constant(
    c: Mapping[tuple[str, str], int | Coefficient], a: str, b: str, name: str
) -> Coefficient:
    """Return c_ab from whichever orientation is given."""
    forward, backward = c.get((a, b)), c.get((b, a))
    if forward is None:
        return -as_rational(backward) if backward is not None else QQ(0)
    if backward is not None and as_rational(forward) != -as_rational(backward):
        raise InvalidLieDataError(
            f"{name}: c[{a},{b}] = {forward} and c[{b},{a}] = {backward} disagree"
        )
    return as_rational(forward)


def canonical_algebra(
    names: Sequence[str],
    c: Mapping[tuple[str, str], int | Coefficient],
    *,
    name: str = "canonical",
) -> RewriteSystem:
    """Create the algebra [u_a, u_b] = h c_ab with commuting differentials du_a.

    Args:
    ----
        names: The point generators in normal-form order.
        c: Sparse constants c_ab keyed by name pairs; c_ba = -c_ab is implied and
            may also be given explicitly.
        name: The system name.

    Returns:
    -------
        A RewriteSystem with the differentials leftmost.

    Raises:
    ------
        InvalidLieDataError: Raised when c_ab and c_ba are both given and
            c_ba != -c_ab.

    """
    params = ParamTable.of("h")
    size = len(names)
    generators = [
        Generator(
            f"d{label}",
            GeneratorKind.DIFFERENTIAL,
            parity=1,
            ydeg=1,
            partner=size + position,
            index=position + 1,
        )
        for position, label in enumerate(names)
    ] + [
        Generator(label, GeneratorKind.POINT, partner=position, index=position + 1)
        for position, label in enumerate(names)
    ]
    sig = Signature(tuple(generators), params)
    h = Scalar.parameter(params, "h")
    builder = PresentationBuilder(sig, range(2 * size), name)
    for first in range(size):
        for second in range(first, size):
            builder.commute(first, second, -1)
            if first == second:
                continue
            value = _canonical_constant(c, names[first], names[second], name)
            builder.commute(
                size + first,
                size + second,
                1,
                Form.scalar(sig, h * Scalar.constant(params, value)),
            )
        for point in range(size):
            builder.commute(first, size + point)
    return builder.build()


def weyl_algebra(n: int) -> RewriteSystem:
    """Create the Weyl algebra [p_i, q_j] = h delta_ij with its differentials.

    Args:
    ----
        n: The number of canonical pairs.

    Returns:
    -------
        A RewriteSystem ordered dq, dp, q, p.

    """
    names = [f"q{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)]
    return canonical_algebra(
        names, {(f"p{i + 1}", f"q{i + 1}"): 1 for i in range(n)}, name=f"weyl({n})"
    )


def weyl_partial(h_form: Form, generator: str, system: RewriteSystem) -> Form:
    """Return the quantum partial derivative of a 0-form with respect to a point.

    The normal form of d(H) has its differential leftmost; the coefficient of
    d(generator) is the partial.

    Args:
    ----
        h_form: A Form of y-degree 0.
        generator: The name of a point generator.
        system: A canonical algebra.

    Returns:
    -------
        The partial derivative, in normal form.

    Raises:
    ------
        ValueError: Raised when ``h_form`` has positive y-degree.

    """
    sig = system.sig
    if any(sig.word_bidegree(word)[1] for word in h_form.terms):
        raise ValueError("Quantum partials are defined on 0-forms")
    target = sig[sig.gen_id(generator)].partner
    terms = {
        word[1:]: value
        for word, value in system.differential(h_form).terms.items()
        if word[0] == target
    }
    return Form(sig, terms)


def weyl_gradient(h_form: Form, system: RewriteSystem) -> dict[str, Form]:
    """Return every quantum partial of a 0-form, keyed by generator name."""
    sig = system.sig
    return {
        sig[gen_id].name: weyl_partial(h_form, sig[gen_id].name, system)
        for gen_id in system.order
        if sig[gen_id].is_point
    }


def quantum_poincare(a: Form, system: RewriteSystem) -> Primitive:
    """Find a primitive over a canonical algebra through its classical symbols.

    Args:
    ----
        a: A Form whose differential normalizes to 0.
        system: A canonical algebra such as ``weyl_algebra(n)``.

    Returns:
    -------
        The normal-ordered primitive and the scalar remainder.

    """
    return transfer_primitive(a, system)


def symbol_transfer_residual(a: Form, system: RewriteSystem) -> Form:
    """Return d(a) minus the classical d of the symbol of a, read as a normal form.

    Both sides are computed on the normal form of ``a``; over a canonical algebra
    the residual is zero, so the symbol map is an isomorphism of complexes.

    Args:
    ----
        a: The Form.
        system: A canonical algebra such as ``weyl_algebra(n)``.

    Returns:
    -------
        The residual, which is zero.

    """
    normal = system.normalize(a)
    return system.differential(normal) - system.symbol_system().differential(normal)


class ClebschImages(NamedTuple):
    """Define the Clebsch images of a Lie algebra and its representation."""

    system: RewriteSystem
    e: tuple[Form, ...]
    f: tuple[Form, ...]


def clebsch_system(m: int, gradings: Sequence[int] = ()) -> RewriteSystem:
    """Create the (graded) Weyl algebra on F^alpha, G_beta.

    F^a G_b = (-1)^(p(a)p(b)) G_b F^a + (-1)^p(a) delta_ab h; the F's and the
    G's graded-commute among themselves.

    Args:
    ----
        m: The representation dimension.
        gradings: Optional parities p(alpha).

    Returns:
    -------
        A RewriteSystem ordered F's then G's.

    """
    parities = [value % 2 for value in gradings] or [0] * m
    params = ParamTable.of("h", "k")
    generators = [
        Generator(
            f"F{alpha + 1}",
            GeneratorKind.POINT,
            parity=parities[alpha],
            index=alpha + 1,
        )
        for alpha in range(m)
    ] + [
        Generator(
            f"G{alpha + 1}",
            GeneratorKind.POINT,
            parity=parities[alpha],
            index=alpha + 1,
        )
        for alpha in range(m)
    ]
    sig = Signature(tuple(generators), params)
    h = Scalar.parameter(params, "h")
    label = "clebsch" if not any(parities) else "graded clebsch"
    builder = PresentationBuilder(sig, range(2 * m), f"{label}({m})")
    for alpha, beta in product(range(m), repeat=2):
        sign = -1 if parities[alpha] and parities[beta] else 1
        extra = None
        if alpha == beta:
            extra = Form.scalar(sig, -h if parities[alpha] else h)
        builder.commute(alpha, m + beta, sign, extra)
        if alpha <= beta:
            builder.commute(alpha, beta, sign)
            builder.commute(m + alpha, m + beta, sign)
    return builder.build()


def clebsch_build(
    data: LieData,
    k: Scalar | None = None,
    gradings: Sequence[int] | None = None,
    *,
    rescaled: bool = False,
) -> ClebschImages:
    """Return e_i = h^-1 sum A F G and f_alpha = k G_alpha h^-1.

    Args:
    ----
        data: The Lie data.
        k: The scale of the f's (defaults to the parameter ``k``).
        gradings: Parities of the representation basis (defaults to the data's).
        rescaled: Return h*e and h*f instead.

    Returns:
    -------
        The system and the images.

    Raises:
    ------
        InvalidLieDataError: Raised when a graded representation mixes parities.

    """
    parities = tuple(gradings) if gradings is not None else data.parities
    if parities:
        data = data.with_parities(parities)
        for (_, alpha, beta), value in data.rep.items():
            if value and data.parity(alpha) != data.parity(beta):
                raise InvalidLieDataError(
                    f"{data.name}: graded Clebsch needs a parity-preserving "
                    "representation"
                )
    system = clebsch_system(data.repdim, parities)
    sig = system.sig
    params = sig.params
    m = data.repdim
    scale = Scalar.one(params) if rescaled else Scalar.parameter(params, "h", -1)
    k_scalar = k if k is not None else Scalar.parameter(params, "k")
    e = []
    for i in range(data.dim):
        total = Form.zero(sig)
        for (index, alpha, beta), value in data.rep.items():
            if index == i:
                coefficient = Scalar.constant(params, value)
                total = total + Form.word(sig, (alpha, m + beta), coefficient)
        e.append(system.normalize(total.scale(scale)))
    f = tuple(Form.word(sig, (m + alpha,), k_scalar * scale) for alpha in range(m))
    return ClebschImages(system, tuple(e), f)


def clebsch_verify(
    data: LieData, *, rescaled: bool = False, gradings: Sequence[int] | None = None
) -> AuditReport:
    """Check the Clebsch commutation relations.

    [e_i, e_j] = sum c^k_ij e_k, [e_i, f_a] = sum A^b_(i a) f_b and
    [f_a, f_b] = 0, each with an extra factor h when rescaled.

    Args:
    ----
        data: The Lie data.
        rescaled: Check the rescaled generators.
        gradings: Parities of the representation basis.

    Returns:
    -------
        A report of nonzero residuals.

    """
    system, e, f = clebsch_build(data, gradings=gradings, rescaled=rescaled)
    sig = system.sig
    params = sig.params
    factor = Scalar.parameter(params, "h") if rescaled else Scalar.one(params)
    parities = tuple(gradings) if gradings is not None else data.parities
    odd = [value % 2 for value in parities] or [0] * data.repdim
    entries: list[AuditEntry] = []
    checked = 0

    def record(kind: str, label: str, residual: Form) -> None:
        nonlocal checked
        checked += 1
        if residual:
            entries.append(AuditEntry(kind, label, residual.to_text()))

    for i, j in product(range(data.dim), repeat=2):
        expected = Form.zero(sig)
        for k in range(data.dim):
            if value := data.constant(i, j, k):
                expected = expected + e[k].scale(Scalar.constant(params, value))
        record(
            "clebsch-ee",
            f"[e{i + 1},e{j + 1}]",
            system.commutator(e[i], e[j]) - system.normalize(expected.scale(factor)),
        )
    for i, alpha in product(range(data.dim), range(data.repdim)):
        expected = Form.zero(sig)
        for beta in range(data.repdim):
            if value := data.entry(i, alpha, beta):
                expected = expected + f[beta].scale(Scalar.constant(params, value))
        record(
            "clebsch-ef",
            f"[e{i + 1},f{alpha + 1}]",
            system.commutator(e[i], f[alpha]) - expected.scale(factor),
        )
    for alpha, beta in product(range(data.repdim), repeat=2):
        sign = -1 if odd[alpha] and odd[beta] else 1
        record(
            "clebsch-ff",
            f"[f{alpha + 1},f{beta + 1}]",
            system.normalize(
                form_mul(f[alpha], f[beta]) - form_mul(f[beta], f[alpha]).scale(sign)
            ),
        )
    report = AuditReport(f"{system.name}: {data.name}", checked, tuple(entries))
    _LOGGER.debug("%s: %s relation(s), %s failing", report.name, checked, len(entries))
    return report
