"""Define the differential, A_t, the homotopy operator and primitives."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, NamedTuple

from sympy.polys.domains import QQ

from ncforms.errors import IncompatibleRelationsError, NotClosedError
from ncforms.freeforms import (
    Form,
    Signature,
    add_term,
    bigrade,
    extend_derivation,
    form_mul,
    graded_involution,
    parity_of,
)
from ncforms.report import AuditEntry, AuditReport
from ncforms.scalars import Scalar

if TYPE_CHECKING:
    from ncforms.helpers.types import Word
    from ncforms.rewrite import RewriteSystem

_LOGGER = logging.getLogger(__name__)

Differential = Callable[[Form], Form]


class Primitive(NamedTuple):
    """Define a primitive: ``a = d(primitive) + remainder``."""

    primitive: Form
    remainder: Scalar


@lru_cache(maxsize=64)
def free_images(sig: Signature) -> tuple[Form | None, ...]:
    """Return the letter images of the free differential: x_i -> y_i, the rest -> 0."""
    images: list[Form | None] = []
    for gen in sig.generators:
        if gen.is_point and gen.partner is not None:
            images.append(Form.word(sig, (gen.partner,)))
        else:
            images.append(None)
    return tuple(images)


def differential(a: Form) -> Form:
    """Apply the free differential d.

    d is the odd derivation with d(x_i) = y_i and d(y_i) = 0, so each word picks
    up (-1) to the parity of the prefix it crosses.

    Args:
    ----
        a: The Form to differentiate.

    Returns:
    -------
        d(a) in the free algebra.

    """
    return extend_derivation(a, free_images(a.sig), 1)


def _merge(
    target: dict[int, dict[Word, Scalar]], power: int, part: Form, sign: int = 1
) -> None:
    """Accumulate ``sign * t^power * part`` into a sparse component map."""
    bucket = target.setdefault(power, {})
    for word, value in part.terms.items():
        add_term(bucket, word, value if sign > 0 else -value)


def _freeze(sig: Signature, parts: dict[int, dict[Word, Scalar]]) -> dict[int, Form]:
    """Turn accumulated buckets into Forms, dropping empty powers."""
    return {
        power: Form(sig, terms) for power, terms in sorted(parts.items()) if terms
    }


@dataclass(frozen=True)
class ExtendedForm:
    """Define an element plus + tau * minus of the t/tau-augmented algebra.

    Both parts are sparse maps from the t-exponent to a Form; tau is written on
    the left of the minus part, and there is no tau^2 component.
    """

    sig: Signature
    plus: Mapping[int, Form] = field(default_factory=dict)
    minus: Mapping[int, Form] = field(default_factory=dict)

    @classmethod
    def from_parts(
        cls: type[ExtendedForm],
        sig: Signature,
        plus: Mapping[int, Form] | None = None,
        minus: Mapping[int, Form] | None = None,
    ) -> ExtendedForm:
        """Create an ExtendedForm, dropping zero components.

        Args:
        ----
            sig: The signature of every component.
            plus: t-exponent -> Form for the tau-free part.
            minus: t-exponent -> Form for the tau part.

        Returns:
        -------
            An ExtendedForm object.

        """
        return cls(
            sig,
            {power: form for power, form in sorted((plus or {}).items()) if form},
            {power: form for power, form in sorted((minus or {}).items()) if form},
        )

    @classmethod
    def embed(cls: type[ExtendedForm], a: Form, power: int = 0) -> ExtendedForm:
        """Return ``t^power * a``."""
        return cls.from_parts(a.sig, {power: a})

    @classmethod
    def tau(cls: type[ExtendedForm], a: Form, power: int = 0) -> ExtendedForm:
        """Return ``tau * t^power * a``."""
        return cls.from_parts(a.sig, minus={power: a})

    def is_zero(self) -> bool:
        """Return whether every component vanishes."""
        return not self.plus and not self.minus

    def map_parts(self, func: Callable[[Form], Form]) -> ExtendedForm:
        """Apply a linear map to every component."""
        return ExtendedForm.from_parts(
            self.sig,
            {power: func(part) for power, part in self.plus.items()},
            {power: func(part) for power, part in self.minus.items()},
        )

    def __add__(self, other: ExtendedForm) -> ExtendedForm:
        """Return the sum."""
        plus: dict[int, dict[Word, Scalar]] = {}
        minus: dict[int, dict[Word, Scalar]] = {}
        for source in (self, other):
            for power, part in source.plus.items():
                _merge(plus, power, part)
            for power, part in source.minus.items():
                _merge(minus, power, part)
        return ExtendedForm(self.sig, _freeze(self.sig, plus), _freeze(self.sig, minus))

    def __neg__(self) -> ExtendedForm:
        """Return the additive inverse."""
        return self.map_parts(lambda part: -part)

    def __sub__(self, other: ExtendedForm) -> ExtendedForm:
        """Return the difference."""
        return self + (-other)

    def at_one(self) -> Form:
        """Return the plus part evaluated at t = 1."""
        total = Form.zero(self.sig)
        for part in self.plus.values():
            total = total + part
        return total

    def at_zero(self) -> Form:
        """Return the plus part evaluated at t = 0."""
        return self.plus.get(0, Form.zero(self.sig))

    def to_text(self) -> str:
        """Return a readable rendering such as ``t^2*(x1*y1) + tau*t*(x1^2)``."""
        pieces = [
            f"{_power_text('', power)}({part})" for power, part in self.plus.items()
        ] + [
            f"{_power_text('tau', power)}({part})"
            for power, part in self.minus.items()
        ]
        return " + ".join(pieces) if pieces else "0"


def _power_text(prefix: str, power: int) -> str:
    """Return the ``tau*t^m*`` prefix of a printed component."""
    factors = [prefix] if prefix else []
    if power == 1:
        factors.append("t")
    elif power:
        factors.append(f"t^{power}")
    return "".join(f"{factor}*" for factor in factors)


def ext_mul(a: ExtendedForm, b: ExtendedForm) -> ExtendedForm:
    """Multiply in the t/tau-augmented algebra.

    t is central, tau is odd and graded-central and tau^2 = 0, so
    (a+ + tau a-)(b+ + tau b-) = a+ b+ + tau (inv(a+) b- + a- b+).

    Args:
    ----
        a: The left factor.
        b: The right factor.

    Returns:
    -------
        The product.

    """
    sig = a.sig
    plus: dict[int, dict[Word, Scalar]] = {}
    minus: dict[int, dict[Word, Scalar]] = {}
    for left_power, left in a.plus.items():
        flipped = graded_involution(left)
        for right_power, right in b.plus.items():
            _merge(plus, left_power + right_power, form_mul(left, right))
        for right_power, right in b.minus.items():
            _merge(minus, left_power + right_power, form_mul(flipped, right))
    for left_power, left in a.minus.items():
        for right_power, right in b.plus.items():
            _merge(minus, left_power + right_power, form_mul(left, right))
    return ExtendedForm(sig, _freeze(sig, plus), _freeze(sig, minus))


def a_t(a: Form) -> ExtendedForm:
    """Apply the homomorphism x_i -> t x_i, y_i -> t y_i + tau x_i.

    Expanding a word of length k keeps at most one tau, so the image is
    t^k w plus, for each differential letter, tau t^(k-1) inv(prefix) x_i suffix.

    Args:
    ----
        a: The Form to map.

    Returns:
    -------
        A_t(a).

    Raises:
    ------
        IncompatibleRelationsError: Raised when a differential letter has no point
            partner.

    """
    sig = a.sig
    parities = sig.parities
    plus: dict[int, dict[Word, Scalar]] = {}
    minus: dict[int, dict[Word, Scalar]] = {}
    for word, coefficient in a.terms.items():
        length = len(word)
        add_term(plus.setdefault(length, {}), word, coefficient)
        prefix_parity = 0
        for position, letter in enumerate(word):
            gen = sig.generators[letter]
            if gen.ydeg:
                if gen.partner is None:
                    raise IncompatibleRelationsError(
                        f"A_t is undefined on {gen.name}: it has no point partner"
                    )
                image = word[:position] + (gen.partner,) + word[position + 1 :]
                add_term(
                    minus.setdefault(length - 1, {}),
                    image,
                    -coefficient if prefix_parity else coefficient,
                )
            prefix_parity ^= parities[letter]
    return ExtendedForm(sig, _freeze(sig, plus), _freeze(sig, minus))


def homotopy_i(a: ExtendedForm) -> Form:
    """Integrate the tau part over t in [0, 1].

    Args:
    ----
        a: The ExtendedForm.

    Returns:
    -------
        The sum over m of minus[m] / (m + 1).

    """
    total = Form.zero(a.sig)
    for power, part in a.minus.items():
        total = total + part.scale(Scalar.constant(a.sig.params, QQ(1, power + 1)))
    return total


def ext_differential(
    a: ExtendedForm, d: Differential | None = None
) -> ExtendedForm:
    """Apply d on the augmented algebra, where d(t) = tau.

    d(t^m v) = t^m dv + m t^(m-1) tau v and d(tau t^m v) = -tau t^m dv.

    Args:
    ----
        a: The ExtendedForm.
        d: The differential on components (defaults to the free one).

    Returns:
    -------
        d(a).

    """
    d = d or differential
    sig = a.sig
    plus: dict[int, dict[Word, Scalar]] = {}
    minus: dict[int, dict[Word, Scalar]] = {}
    for power, part in a.plus.items():
        _merge(plus, power, d(part))
        if power:
            _merge(minus, power - 1, part.scale(power))
    for power, part in a.minus.items():
        _merge(minus, power, d(part), sign=-1)
    return ExtendedForm(sig, _freeze(sig, plus), _freeze(sig, minus))


def a_t_commute_residual(
    a: Form, system: RewriteSystem | None = None
) -> ExtendedForm:
    """Return A_t(d a) - d(A_t a), normalized componentwise over a system.

    Args:
    ----
        a: The Form.
        system: An optional A_t-compatible rewrite system.

    Returns:
    -------
        The residual, which is zero.

    """
    if system is None:
        return a_t(differential(a)) - ext_differential(a_t(a))
    residual = a_t(system.differential(a)) - ext_differential(
        a_t(a), system.differential
    )
    return residual.map_parts(system.normalize)


def graded_leibniz_residual(a: Form, b: Form) -> Form:
    """Return d(ab) - d(a) b - (-1)^p(a) a d(b) for a parity-homogeneous ``a``.

    Raises
    ------
        ValueError: Raised when ``a`` mixes parities.

    """
    if not a:
        return differential(form_mul(a, b))
    parity = parity_of(a)
    if parity is None:
        raise ValueError(f"The left factor must have a single parity, got {a}")
    right = form_mul(a, differential(b))
    return (
        differential(form_mul(a, b))
        - form_mul(differential(a), b)
        - right.scale(-1 if parity else 1)
    )


def bidegree_residual(a: Form) -> Form:
    """Return the terms of d(a) that do not shift (x-degree, y-degree) by (-1, 1)."""
    stray = Form.zero(a.sig)
    for (xdeg, ydeg), part in bigrade(a).items():
        for key, image in bigrade(differential(part)).items():
            if key != (xdeg - 1, ydeg + 1):
                stray = stray + image
    return stray


def homotopy_check(a: ExtendedForm, system: RewriteSystem | None = None) -> Form:
    """Return dI(a) + Id(a) - (a+ at t=1 - a+ at t=0).

    Args:
    ----
        a: The ExtendedForm.
        system: An optional rewrite system; its differential and normal form are used.

    Returns:
    -------
        The residual, which is always the zero Form.

    """
    d: Differential = differential if system is None else system.differential
    residual = (
        d(homotopy_i(a))
        + homotopy_i(ext_differential(a, d))
        - a.at_one()
        + a.at_zero()
    )
    return residual if system is None else system.normalize(residual)


@lru_cache(maxsize=32)
def check_at_compatibility(system: RewriteSystem) -> AuditReport:
    """Check that A_t maps every relation of a rewrite system into its ideal.

    Args:
    ----
        system: The rewrite system.

    Returns:
    -------
        A report listing each relation whose A_t image does not normalize to 0.

    """
    sig = system.sig
    entries: list[AuditEntry] = []
    for pair, rule in system.rules.items():
        relation = Form.word(sig, pair) - rule.right
        label = sig.word_text(pair)
        try:
            image = a_t(relation).map_parts(system.normalize)
        except IncompatibleRelationsError as err:
            entries.append(AuditEntry("at-compatibility", label, "undefined", str(err)))
            continue
        if not image.is_zero():
            entries.append(AuditEntry("at-compatibility", label, image.to_text()))
    report = AuditReport(
        f"{system.name}: A_t compatibility", len(system.rules), tuple(entries)
    )
    _LOGGER.debug(
        "%s: %s relation(s), %s failing", report.name, report.checked, len(entries)
    )
    return report


def poincare_primitive(a: Form, system: RewriteSystem | None = None) -> Primitive:
    """Find nu with a = d(nu) + pr00(a) for a closed Form.

    Args:
    ----
        a: The Form; must be closed (under the system's d when one is given).
        system: An optional A_t-compatible rewrite system.

    Returns:
    -------
        The primitive I(A_t(a)) and the scalar remainder.

    Raises:
    ------
        IncompatibleRelationsError: Raised when A_t does not preserve the relations.
        NotClosedError: Raised when d(a) is not zero.

    """
    if system is None:
        if differential(a):
            raise NotClosedError(f"d({a}) = {differential(a)} is not zero")
        return Primitive(homotopy_i(a_t(a)), a.scalar_part())

    report = check_at_compatibility(system)
    if not report.ok:
        first = report.entries[0]
        raise IncompatibleRelationsError(
            f"{system.name} relations are not A_t-stable: "
            f"{first.word} -> {first.residual}"
        )
    normal = system.normalize(a)
    if boundary := system.differential(normal):
        raise NotClosedError(f"d({normal}) = {boundary} is not zero")
    primitive = system.normalize(homotopy_i(a_t(normal)))
    _LOGGER.debug("Primitive of %s over %s: %s", normal, system.name, primitive)
    return Primitive(primitive, normal.scalar_part())


def transfer_primitive(a: Form, system: RewriteSystem) -> Primitive:
    """Find a primitive through the graded-commutative shadow of a system.

    The normal form of ``a`` is read as a classical form with the same words, the
    classical primitive is taken there, and its words are read back as normal
    words of ``system``.

    Args:
    ----
        a: The Form; its normal form must be closed.
        system: The rewrite system.

    Returns:
    -------
        The primitive and the scalar remainder.

    Raises:
    ------
        IncompatibleRelationsError: Raised when the read-back does not reproduce ``a``.
        NotClosedError: Raised when d(a) does not normalize to zero.

    """
    normal = system.normalize(a)
    if boundary := system.differential(normal):
        raise NotClosedError(f"d({normal}) = {boundary} is not zero")
    shadow = system.symbol_system()
    primitive, remainder = poincare_primitive(normal, shadow)
    primitive = system.normalize(primitive)
    if residual := system.normalize(  # pragma: no cover
        system.differential(primitive) + Form.scalar(normal.sig, remainder) - normal
    ):
        raise IncompatibleRelationsError(
            f"Normal-symbol transfer fails over {system.name}: residual {residual}"
        )
    return Primitive(primitive, remainder)
