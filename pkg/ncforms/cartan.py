"""Define derivations, their brackets, interior products and the Cartan identities."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations, permutations

from ncforms.calculus import differential
from ncforms.freeforms import (
    Form,
    Signature,
    bigrade,
    extend_derivation,
    form_mul,
    parity_of,
)


@dataclass(frozen=True)
class Derivation:
    """Define a graded derivation of the free algebra by its values on the points.

    ``values`` maps a point generator id to X(x_i); missing points map to 0.
    The action on the differentials is forced: X(y_i) = (-1)^p(X) d(X_i).
    """

    sig: Signature
    values: Mapping[int, Form] = field(default_factory=dict)
    parity: int = 0

    def __post_init__(self) -> None:
        """Validate that every value is keyed by a point of the signature.

        Raises
        ------
            ValueError: Raised when a key is not a point generator.

        """
        for gen_id in self.values:
            if gen_id not in self.sig.points:
                raise ValueError(
                    f"Derivations are determined by points, got id {gen_id}"
                )

    @classmethod
    def from_fields(
        cls: type[Derivation],
        sig: Signature,
        fields: Mapping[str, Form],
        parity: int = 0,
    ) -> Derivation:
        """Create a derivation from point names and value Forms.

        Args:
        ----
            sig: The signature.
            fields: A map such as ``{"x1": x1^2}``.
            parity: The Z2 parity of the derivation.

        Returns:
        -------
            A Derivation object.

        """
        values = {sig.gen_id(name): value for name, value in fields.items()}
        return cls(sig, values, parity % 2)

    @classmethod
    def exterior(cls: type[Derivation], sig: Signature) -> Derivation:
        """Return d itself as the odd derivation with values y_i."""
        return cls(
            sig,
            {
                point: Form.word(sig, (partner,))
                for point in sig.points
                if (partner := sig[point].partner) is not None
            },
            1,
        )

    def value(self, point: int) -> Form:
        """Return X(x_i) for a point id."""
        return self.values.get(point, Form.zero(self.sig))

    def is_zero(self) -> bool:
        """Return whether every value vanishes."""
        return not any(self.values.values())

    def __sub__(self, other: Derivation) -> Derivation:
        """Return the difference of two derivations of the same parity."""
        points = set(self.values) | set(other.values)
        return Derivation(
            self.sig,
            {point: self.value(point) - other.value(point) for point in points},
            self.parity,
        )

    def scaled(self, factor: int) -> Derivation:
        """Return the derivation with every value multiplied by an integer."""
        return Derivation(
            self.sig,
            {point: value.scale(factor) for point, value in self.values.items()},
            self.parity,
        )


def _apply_images(x: Derivation) -> list[Form | None]:
    """Return X on every letter: X_i on x_i and (-1)^p(X) d(X_i) on y_i."""
    sig = x.sig
    images: list[Form | None] = [None] * len(sig)
    sign = -1 if x.parity else 1
    for point, value in x.values.items():
        images[point] = value
        if (partner := sig[point].partner) is not None:
            images[partner] = differential(value).scale(sign)
    return images


def _contract_images(x: Derivation) -> list[Form | None]:
    """Return X ⌟ on every letter: 0 on x_i and X_i on y_i."""
    sig = x.sig
    images: list[Form | None] = [None] * len(sig)
    for point, value in x.values.items():
        if (partner := sig[point].partner) is not None:
            images[partner] = value
    return images


def apply(x: Derivation, a: Form) -> Form:
    """Apply a derivation to a Form.

    Args:
    ----
        x: The derivation.
        a: The Form.

    Returns:
    -------
        X(a), with X(x_i) = X_i and X(y_i) = (-1)^p(X) d(X_i).

    """
    return extend_derivation(a, _apply_images(x), x.parity)


def contract(x: Derivation, a: Form) -> Form:
    """Return the interior product of a derivation with a Form.

    The contraction has parity p(X) + 1, kills every point and sends y_i to X_i.

    Args:
    ----
        x: The derivation.
        a: The Form.

    Returns:
    -------
        X ⌟ a.

    """
    return extend_derivation(a, _contract_images(x), x.parity + 1)


def contract_many(zs: Sequence[Derivation], a: Form) -> Form:
    """Contract a Form with several derivations; ``zs[0]`` acts first (innermost)."""
    result = a
    for z in zs:
        result = contract(z, result)
        if not result:
            break
    return result


def d_contract(a: Form) -> Form:
    """Contract with d itself, which multiplies each component by its y-degree."""
    return contract(Derivation.exterior(a.sig), a)


def bracket(x: Derivation, z: Derivation) -> Derivation:
    """Return the graded commutator [X, Z] = XZ - (-1)^(p(X)p(Z)) ZX.

    Args:
    ----
        x: The first derivation.
        z: The second derivation.

    Returns:
    -------
        The derivation with values X(Z_i) - (-1)^(p(X)p(Z)) Z(X_i).

    """
    sign = -1 if x.parity and z.parity else 1
    values = {
        point: apply(x, z.value(point)) - apply(z, x.value(point)).scale(sign)
        for point in x.sig.points
    }
    return Derivation(
        x.sig,
        {point: value for point, value in values.items() if value},
        (x.parity + z.parity) % 2,
    )


def _without(zs: Sequence[Derivation], *positions: int) -> list[Derivation]:
    return [z for position, z in enumerate(zs) if position not in positions]


def _ungraded_cartan_rhs(zs: Sequence[Derivation], a: Form) -> Form:
    """Return the right side of the Cartan formula for even derivations."""
    size = len(zs)
    total = differential(contract_many(zs, a)).scale(-1 if size % 2 else 1)
    for alpha in range(size):
        term = apply(zs[alpha], contract_many(_without(zs, alpha), a))
        total = total + term.scale(-1 if alpha % 2 else 1)
    for alpha, beta in combinations(range(size), 2):
        inner = [bracket(zs[alpha], zs[beta]), *_without(zs, alpha, beta)]
        total = total + contract_many(inner, a).scale(-1 if (alpha + beta) % 2 else 1)
    return total


def _graded_cartan_rhs(zs: Sequence[Derivation], a: Form) -> Form:
    """Return the right side of the graded Cartan formula."""
    size = len(zs)
    weights = [z.parity + 1 for z in zs]
    total = differential(contract_many(zs, a)).scale(-1 if sum(weights) % 2 else 1)
    for alpha in range(size):
        u = sum(weights[:alpha]) + zs[alpha].parity * sum(weights[alpha + 1 :])
        term = apply(zs[alpha], contract_many(_without(zs, alpha), a))
        total = total + term.scale(-1 if u % 2 else 1)
    for alpha, beta in combinations(range(size), 2):
        between = sum(weights[alpha + 1 : beta])
        v = sum(weights[:alpha]) + zs[alpha].parity * (1 + between)
        replaced = list(zs)
        replaced[beta] = bracket(zs[beta], zs[alpha])
        del replaced[alpha]
        total = total + contract_many(replaced, a).scale(-1 if v % 2 else 1)
    return total


def cartan_residual(zs: Sequence[Derivation], a: Form) -> Form:
    """Return the left side minus the right side of the Cartan formula.

    Z_l ⌟ ... ⌟ Z_1 ⌟ d(a) is expanded into a d term, Lie-derivative terms and
    bracket terms. All-even data uses the ungraded signs.

    Args:
    ----
        zs: The derivations, innermost first.
        a: The Form.

    Returns:
    -------
        The residual, which is zero.

    Raises:
    ------
        ValueError: Raised when ``zs`` is empty.

    """
    if not zs:
        raise ValueError("At least one derivation is required")
    left = contract_many(zs, differential(a))
    if any(z.parity for z in zs):
        return left - _graded_cartan_rhs(zs, a)
    return left - _ungraded_cartan_rhs(zs, a)


def jacobi_residual(x: Derivation, y: Derivation, z: Derivation) -> Derivation:
    """Return [X,[Y,Z]] - [[X,Y],Z] - (-1)^(p(X)p(Y)) [Y,[X,Z]]."""
    sign = -1 if x.parity and y.parity else 1
    return (
        bracket(x, bracket(y, z))
        - bracket(bracket(x, y), z)
        - bracket(y, bracket(x, z)).scaled(sign)
    )


def bracket_action_residual(x: Derivation, z: Derivation, a: Form) -> Form:
    """Return [X,Z](a) - X(Z(a)) + (-1)^(p(X)p(Z)) Z(X(a))."""
    sign = -1 if x.parity and z.parity else 1
    return (
        apply(bracket(x, z), a)
        - apply(x, apply(z, a))
        + apply(z, apply(x, a)).scale(sign)
    )


def leibniz_residual(
    x: Derivation, a: Form, b: Form, *, contraction: bool = False
) -> Form:
    """Return D(ab) - D(a) b - (-1)^(p(D)p(a)) a D(b) for D = X or X ⌟.

    Args:
    ----
        x: The derivation.
        a: A parity-homogeneous Form.
        b: Any Form.
        contraction: Check the interior product instead of the Lie derivative.

    Returns:
    -------
        The residual, which is zero.

    Raises:
    ------
        ValueError: Raised when ``a`` is not parity-homogeneous.

    """
    parity = parity_of(a)
    if parity is None:
        raise ValueError(f"{a} is not parity-homogeneous")
    operator = contract if contraction else apply
    degree = x.parity + (1 if contraction else 0)
    sign = -1 if degree % 2 and parity else 1
    return (
        operator(x, form_mul(a, b))
        - form_mul(operator(x, a), b)
        - form_mul(a, operator(x, b)).scale(sign)
    )


def commute_d_residual(x: Derivation, a: Form) -> Form:
    """Return X(d a) - (-1)^p(X) d(X a)."""
    sign = -1 if x.parity else 1
    return apply(x, differential(a)) - differential(apply(x, a)).scale(sign)


def homotopy_formula_residual(x: Derivation, a: Form) -> Form:
    """Return X(a) - X ⌟ d(a) - (-1)^p(X) d(X ⌟ a)."""
    sign = -1 if x.parity else 1
    return (
        apply(x, a)
        - contract(x, differential(a))
        - differential(contract(x, a)).scale(sign)
    )


def contraction_commute_residual(z1: Derivation, z2: Derivation, a: Form) -> Form:
    """Return Z1⌟Z2⌟a - (-1)^((p(Z1)+1)(p(Z2)+1)) Z2⌟Z1⌟a."""
    sign = -1 if (z1.parity + 1) * (z2.parity + 1) % 2 else 1
    return contract(z1, contract(z2, a)) - contract(z2, contract(z1, a)).scale(sign)


def _permutation_sign(order: Sequence[int]) -> int:
    inversions = sum(1 for left, right in combinations(order, 2) if left > right)
    return -1 if inversions % 2 else 1


def skew_symmetry_residuals(zs: Sequence[Derivation], a: Form) -> list[Form]:
    """Return, for every permutation of even derivations, the skew-symmetry residual.

    Args:
    ----
        zs: Even derivations, innermost first.
        a: The Form.

    Returns:
    -------
        One residual per permutation, each zero.

    Raises:
    ------
        ValueError: Raised when a derivation is odd.

    """
    if any(z.parity for z in zs):
        raise ValueError("Total skew-symmetry needs even derivations")
    base = contract_many(zs, a)
    return [
        contract_many([zs[index] for index in order], a)
        - base.scale(_permutation_sign(order))
        for order in permutations(range(len(zs)))
    ]


def exchange_residual(x: Derivation, zs: Sequence[Derivation], a: Form) -> Form:
    """Return the residual of moving a Lie derivative through several contractions.

    The graded form reads
    (-1)^(x(l + sum z)) Z⌟...⌟X(a) = X(Z⌟...⌟a)
    + sum_alpha (-1)^(x(l - alpha + sum_{j>=alpha} z_j)) Z⌟..[Z_alpha,X]..⌟a.

    Args:
    ----
        x: The derivation acting on ``a``.
        zs: The contracting derivations, innermost first.
        a: The Form.

    Returns:
    -------
        The residual, which is zero.

    """
    size = len(zs)
    parities = [z.parity for z in zs]
    if not x.parity and not any(parities):
        total = apply(x, contract_many(zs, a))
        for alpha in range(size):
            replaced = list(zs)
            replaced[alpha] = bracket(x, zs[alpha])
            total = total - contract_many(replaced, a)
        return contract_many(zs, apply(x, a)) - total
    sign = -1 if x.parity * (size + sum(parities)) % 2 else 1
    total = apply(x, contract_many(zs, a))
    for alpha in range(size):
        exponent = x.parity * (size - (alpha + 1) + sum(parities[alpha:]))
        replaced = list(zs)
        replaced[alpha] = bracket(zs[alpha], x)
        total = total + contract_many(replaced, a).scale(-1 if exponent % 2 else 1)
    return contract_many(zs, apply(x, a)).scale(sign) - total


def y_prefix_residual(zs: Sequence[Derivation], point: int, a: Form) -> Form:
    """Return the residual of contracting several even derivations into y_i a.

    Z⌟...⌟(y_i a) = (-1)^l y_i (Z⌟...⌟a) + sum_p (-1)^p (Z_p)_i (Z⌟..^p..⌟a),
    with ``zs`` listed innermost first.

    Args:
    ----
        zs: Even derivations, innermost first.
        point: The point id whose differential leads the word.
        a: The Form.

    Returns:
    -------
        The residual, which is zero.

    Raises:
    ------
        ValueError: Raised when the point has no differential partner.

    """
    sig = a.sig
    partner = sig[point].partner
    if partner is None:
        raise ValueError(f"{sig[point].name} has no differential")
    y = Form.word(sig, (partner,))
    size = len(zs)
    total = form_mul(y, contract_many(zs, a)).scale(-1 if size % 2 else 1)
    for position, z in enumerate(zs):
        term = form_mul(z.value(point), contract_many(_without(zs, position), a))
        total = total + term.scale(-1 if position % 2 else 1)
    return contract_many(zs, form_mul(y, a)) - total


def euler_residual(a: Form) -> Form:
    """Return d ⌟ a minus the sum of y-degree times each bigraded component."""
    expected = Form.zero(a.sig)
    for (_, ydeg), part in bigrade(a).items():
        expected = expected + part.scale(ydeg)
    return d_contract(a) - expected
