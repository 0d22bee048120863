"""Define Q-quantum spaces, Q-partial derivatives and group-indexed Q families."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any

from ncforms.calculus import ExtendedForm, a_t, homotopy_i
from ncforms.errors import (
    ExpressionSyntaxError,
    InconsistentQFamilyError,
    InvalidQMatrixError,
)
from ncforms.expression import parse_scalar
from ncforms.freeforms import (
    Form,
    Generator,
    GeneratorKind,
    Signature,
    add_term,
    relabel,
)
from ncforms.helpers.types import DictType, GroupElement, Pair, Word
from ncforms.rewrite import PresentationBuilder, RewriteSystem
from ncforms.scalars import ParamEntry, ParamTable, Scalar, scalar_inverse

_LOGGER = logging.getLogger(__name__)

FamilyKey = tuple[int, int, GroupElement]


def _q_name(i: int, j: int) -> str:
    return f"Q[{i + 1},{j + 1}]"


@dataclass(frozen=True)
class QMatrix:
    """Define invertible constants Q_ij with Q_ji = Q_ij^-1 and Q_ii = 1.

    ``entries`` holds Q_ij for i < j (0-based); each must be a monomial Scalar.
    """

    n: int
    params: ParamTable
    entries: Mapping[Pair, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate the entries.

        Raises
        ------
            InvalidQMatrixError: Raised for a missing or misplaced entry, and for one
                that is not invertible.

        """
        if self.n < 1:
            raise InvalidQMatrixError(f"A Q-space needs n >= 1, got {self.n}")
        for i, j in self.entries:
            if not 0 <= i < j < self.n:
                raise InvalidQMatrixError(f"Entry {_q_name(i, j)} is out of place")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                value = self.entries.get((i, j))
                if value is None:
                    raise InvalidQMatrixError(f"Missing entry {_q_name(i, j)}")
                if not value.is_monomial():
                    raise InvalidQMatrixError(
                        f"{_q_name(i, j)} = {value} is not invertible"
                    )

    @classmethod
    def symbolic(cls: type[QMatrix], n: int) -> QMatrix:
        """Return independent parameters Q[i,j] whose inverses are named Q[j,i]."""
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        params = ParamTable(
            tuple(ParamEntry(_q_name(i, j), _q_name(j, i)) for i, j in pairs)
        )
        return cls(
            n,
            params,
            {pair: Scalar.parameter(params, _q_name(*pair)) for pair in pairs},
        )

    @classmethod
    def uniform(cls: type[QMatrix], n: int, name: str = "q") -> QMatrix:
        """Return the one-parameter matrix Q_ij = q for i < j."""
        params = ParamTable.of(name)
        value = Scalar.parameter(params, name)
        entries = {(i, j): value for i in range(n) for j in range(i + 1, n)}
        return cls(n, params, entries)

    def value(self, i: int, j: int) -> Scalar:
        """Return Q_ij for 0-based indices."""
        if i == j:
            return Scalar.one(self.params)
        if i < j:
            return self.entries[(i, j)]
        return scalar_inverse(self.entries[(j, i)])

    @classmethod
    def from_dict(cls: type[QMatrix], data: Mapping[str, Any]) -> QMatrix:
        """Create a QMatrix from JSON.

        Args:
        ----
            data: ``{n, entries?: [[i, j, "scalar"]...], parameters?: [...]}`` with
                1-based indices. Entries left out stay symbolic.

        Returns:
        -------
            A QMatrix object.

        Raises:
        ------
            InvalidQMatrixError: Raised on malformed data.

        """
        try:
            n = int(data["n"])
            params = cls.symbolic(n).params.merged(
                ParamTable.from_list(data.get("parameters", []))
            )
            entries = {
                (i, j): Scalar.parameter(params, _q_name(i, j))
                for i in range(n)
                for j in range(i + 1, n)
            }
            for i, j, text in data.get("entries", []):
                if i == j:
                    raise InvalidQMatrixError(f"Q[{i},{i}] is fixed to 1")
                value = parse_scalar(str(text), params)
                if i < j:
                    entries[(i - 1, j - 1)] = value
                else:
                    entries[(j - 1, i - 1)] = scalar_inverse(value)
        except (KeyError, TypeError, ValueError, ExpressionSyntaxError) as err:
            raise InvalidQMatrixError(f"Malformed Q matrix: {err}") from err
        return cls(n, params, entries)

    def to_dict(self) -> DictType:
        """Return the JSON shape with 1-based indices."""
        return {
            "n": self.n,
            "parameters": self.params.to_list(),
            "entries": [
                [i + 1, j + 1, value.to_text()]
                for (i, j), value in sorted(self.entries.items())
            ],
        }


def _copy_rules(system: RewriteSystem) -> dict[Pair, Form]:
    return {pair: rule.right for pair, rule in system.rules.items()}


class QRewriteSystem(RewriteSystem):
    """Define the differential algebra of a Q-quantum space."""

    def __init__(self, system: RewriteSystem, qmatrix: QMatrix) -> None:
        """Initialize.

        Args:
        ----
            system: The built presentation ordered dx1..dxn, x1..xn.
            qmatrix: The Q constants it was built from.

        """
        super().__init__(
            system.sig,
            system.order,
            _copy_rules(system),
            system.d_images,
            name=system.name,
        )
        self.qmatrix = qmatrix


def q_algebra(qmatrix: QMatrix) -> QRewriteSystem:
    """Create the Q-quantum space with its differential forms.

    x_i x_j = Q_ij x_j x_i, dx_i x_j = Q_ij x_j dx_i and dx_i dx_j = -Q_ij dx_j dx_i.

    Args:
    ----
        qmatrix: The Q constants.

    Returns:
    -------
        A QRewriteSystem ordered dx1..dxn, x1..xn.

    """
    n = qmatrix.n
    generators = [
        Generator(
            f"dx{i + 1}",
            GeneratorKind.DIFFERENTIAL,
            parity=1,
            ydeg=1,
            partner=n + i,
            index=i + 1,
        )
        for i in range(n)
    ] + [
        Generator(f"x{i + 1}", GeneratorKind.POINT, partner=i, index=i + 1)
        for i in range(n)
    ]
    aliases = tuple((f"y{i + 1}", 1, i) for i in range(n))
    sig = Signature(tuple(generators), qmatrix.params, aliases)
    builder = PresentationBuilder(sig, range(2 * n), f"qspace({n})")
    for i, j in product(range(n), repeat=2):
        q = qmatrix.value(i, j)
        builder.commute(i, n + j, q)
        if i < j:
            builder.commute(n + i, n + j, q)
            builder.commute(i, j, -q)
        elif i == j:
            builder.commute(i, i, -1)
    return QRewriteSystem(builder.build(), qmatrix)


def q_partial_free(a: Form, k: int, qmatrix: QMatrix) -> Form:
    """Apply d/dx_k letter by letter in the free algebra.

    d/dx_k (x_i w) = delta_ik w + Q_ik x_i d/dx_k(w), so each occurrence of x_k is
    dropped with the product of Q_{i k} over the letters before it.

    Args:
    ----
        a: A 0-form over a Q-space signature.
        k: The 1-based index of the variable.
        qmatrix: The Q constants.

    Returns:
    -------
        The Q-partial, without normalization.

    Raises:
    ------
        ValueError: Raised when ``a`` has a letter other than x1..xn.

    """
    sig = a.sig
    index_of = {sig.gen_id(f"x{i + 1}"): i for i in range(qmatrix.n)}
    target = k - 1
    terms: dict[Word, Scalar] = {}
    for word, coefficient in a.terms.items():
        if any(letter not in index_of for letter in word):
            raise ValueError(f"Q-partials are defined on 0-forms, got {a}")
        factor = coefficient
        for position, letter in enumerate(word):
            if index_of[letter] == target:
                add_term(terms, word[:position] + word[position + 1 :], factor)
            factor = factor * qmatrix.value(index_of[letter], target)
    return Form(sig, terms)


def q_partial(a: Form, k: int, system: QRewriteSystem) -> Form:
    """Return the Q-partial derivative d/dx_k of a 0-form.

    Args:
    ----
        a: A Form of y-degree 0.
        k: The 1-based index of the variable.
        system: The Q-space.

    Returns:
    -------
        The partial, in normal form.

    """
    return system.normalize(q_partial_free(system.normalize(a), k, system.qmatrix))


def q_d_check(a: Form, system: QRewriteSystem) -> Form:
    """Return d(a) - sum_k dx_k d/dx_k(a), normalized."""
    expansion = Form.zero(system.sig)
    for k in range(1, system.qmatrix.n + 1):
        dx = Form.generator(system.sig, f"dx{k}")
        expansion = expansion + dx * q_partial(a, k, system)
    return system.normalize(system.differential(a) - expansion)


def q_partials_commute_residual(
    a: Form, first: int, second: int, system: QRewriteSystem
) -> Form:
    """Return d_first d_second a - Q_{first,second} d_second d_first a."""
    q = system.qmatrix.value(first - 1, second - 1)
    outer_first = q_partial(q_partial(a, second, system), first, system)
    outer_second = q_partial(q_partial(a, first, system), second, system)
    return system.normalize(outer_first - outer_second.scale(q))


def ideal_residual(i: int, j: int, k: int, word: Form, qmatrix: QMatrix) -> Form:
    """Return d_k(P_ij w) - Q_ik Q_jk P_ij d_k(w) in the free algebra.

    P_ij = x_i x_j - Q_ij x_j x_i; a zero residual for every w means the
    Q-partial passes to the quotient.
    """
    sig = word.sig
    xi, xj = Form.generator(sig, f"x{i}"), Form.generator(sig, f"x{j}")
    relation = xi * xj - (xj * xi).scale(qmatrix.value(i - 1, j - 1))
    factor = qmatrix.value(i - 1, k - 1) * qmatrix.value(j - 1, k - 1)
    return q_partial_free(relation * word, k, qmatrix) - (
        relation * q_partial_free(word, k, qmatrix)
    ).scale(factor)


@dataclass(frozen=True)
class GroupIndex:
    """Define a finite abelian group Z_N1 x ... x Z_Nr."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the factor orders.

        Raises
        ------
            ValueError: Raised for an empty product or a factor of order below 1.

        """
        if not self.orders or any(order < 1 for order in self.orders):
            raise ValueError(f"Invalid group orders: {self.orders}")

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        """Return every element in lexicographic order."""
        return tuple(product(*(range(order) for order in self.orders)))

    @property
    def identity(self) -> GroupElement:
        """Return the identity element."""
        return (0,) * len(self.orders)

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """Return g + h."""
        return tuple((a + b) % order for a, b, order in zip(g, h, self.orders))

    def negate(self, g: GroupElement) -> GroupElement:
        """Return -g."""
        return tuple(-a % order for a, order in zip(g, self.orders))

    def subtract(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """Return g - h."""
        return self.add(g, self.negate(h))

    def label(self, g: GroupElement) -> str:
        """Return ``3`` for a cyclic group and ``(1,0)`` for a product."""
        if len(self.orders) == 1:
            return str(g[0])
        return "(" + ",".join(str(a) for a in g) + ")"

    def parse(self, text: str | int) -> GroupElement:
        """Parse a label back into an element.

        Raises
        ------
            ValueError: Raised when the label does not name an element.

        """
        values = tuple(int(part) for part in str(text).strip("()").split(","))
        if len(values) != len(self.orders):
            raise ValueError(f"{text!r} is not an element of {self}")
        return tuple(value % order for value, order in zip(values, self.orders))

    def __str__(self) -> str:
        """Return the group as text, e.g. ``Z2xZ3``."""
        return "x".join(f"Z{order}" for order in self.orders)


def _family_name(group: GroupIndex, key: FamilyKey) -> str:
    i, j, k = key
    return f"Q[{i + 1},{j + 1}@{group.label(k)}]"


@dataclass(frozen=True)
class GroupQFamily:
    """Define constants Q_ij^(k) with Q_ji^(-k) = (Q_ij^(k))^-1.

    ``entries`` maps every (i, j, k) (0-based i, j) to a monomial Scalar; a
    self-inverse triple (i = j and k = -k) holds 1.
    """

    n: int
    group: GroupIndex
    params: ParamTable
    entries: Mapping[FamilyKey, Scalar]

    def __post_init__(self) -> None:
        """Validate the orientation consistency.

        Raises
        ------
            InconsistentQFamilyError: Raised when Q_ij^(k) Q_ji^(-k) != 1.

        """
        one = Scalar.one(self.params)
        for key in product(range(self.n), range(self.n), self.group.elements):
            value = self.entries.get(key)
            partner = self.entries.get(self.mirror(key))
            if value is None or partner is None:
                raise InconsistentQFamilyError(
                    f"Missing entry {_family_name(self.group, key)}"
                )
            if value * partner != one:
                raise InconsistentQFamilyError(
                    f"{_family_name(self.group, key)} = {value} is not inverse to "
                    f"{_family_name(self.group, self.mirror(key))} = {partner}"
                )

    def mirror(self, key: FamilyKey) -> FamilyKey:
        """Return (j, i, -k) for (i, j, k)."""
        i, j, k = key
        return (j, i, self.group.negate(k))

    def value(self, i: int, j: int, k: GroupElement) -> Scalar:
        """Return Q_ij^(k) for 0-based i, j."""
        return self.entries[(i, j, k)]

    @classmethod
    def symbolic(cls: type[GroupQFamily], n: int, group: GroupIndex) -> GroupQFamily:
        """Return one parameter for every orientation class of (i, j, k)."""
        param_entries: list[ParamEntry] = []
        slots: dict[FamilyKey, tuple[str, int] | None] = {}
        for key in product(range(n), range(n), group.elements):
            if key in slots:
                continue
            i, j, k = key
            mirror = (j, i, group.negate(k))
            if key == mirror:
                slots[key] = None
                continue
            name = _family_name(group, key)
            param_entries.append(ParamEntry(name, _family_name(group, mirror)))
            slots[key] = (name, 1)
            slots[mirror] = (name, -1)
        params = ParamTable(tuple(param_entries))
        entries = {
            key: Scalar.one(params) if slot is None else Scalar.parameter(params, *slot)
            for key, slot in slots.items()
        }
        return cls(n, group, params, entries)

    @classmethod
    def from_matrix(
        cls: type[GroupQFamily], qmatrix: QMatrix, group: GroupIndex
    ) -> GroupQFamily:
        """Return the constant family Q_ij^(k) = Q_ij for every k."""
        entries = {
            (i, j, k): qmatrix.value(i, j)
            for i, j, k in product(range(qmatrix.n), range(qmatrix.n), group.elements)
        }
        return cls(qmatrix.n, group, qmatrix.params, entries)

    @classmethod
    def from_dict(cls: type[GroupQFamily], data: Mapping[str, Any]) -> GroupQFamily:
        """Create a family from JSON.

        Args:
        ----
            data: ``{n, group: [N1, ...], entries?: [[i, j, "k", "scalar"]...]}`` with
                1-based i, j. Each given entry also fixes its mirror; the rest stay
                symbolic.

        Returns:
        -------
            A GroupQFamily object.

        Raises:
        ------
            InvalidQMatrixError: Raised on malformed or inconsistent data.

        """
        try:
            group = GroupIndex(tuple(int(order) for order in data["group"]))
            base = cls.symbolic(int(data["n"]), group)
            entries = dict(base.entries)
            for i, j, label, text in data.get("entries", []):
                key = (i - 1, j - 1, group.parse(label))
                value = parse_scalar(str(text), base.params)
                entries[key] = value
                if base.mirror(key) != key:
                    entries[base.mirror(key)] = scalar_inverse(value)
        except (KeyError, TypeError, ValueError, ExpressionSyntaxError) as err:
            raise InvalidQMatrixError(f"Malformed Q family: {err}") from err
        return cls(base.n, group, base.params, entries)

    def to_dict(self) -> DictType:
        """Return the JSON shape with 1-based indices."""
        return {
            "n": self.n,
            "group": list(self.group.orders),
            "parameters": self.params.to_list(),
            "entries": [
                [i + 1, j + 1, self.group.label(k), value.to_text()]
                for (i, j, k), value in sorted(self.entries.items())
            ],
        }


class GroupQSystem(RewriteSystem):
    """Define a Q-space whose generators x_i^(g) are indexed by a finite group.

    Ids run over the dx cells first, then the x cells, each in ``cells`` order.
    """

    def __init__(
        self,
        system: RewriteSystem,
        family: GroupQFamily,
        cells: list[tuple[int, GroupElement]],
    ) -> None:
        """Initialize.

        Args:
        ----
            system: The built presentation.
            family: The Q family it was built from.
            cells: The (i, g) label of each dx (and of each x) in id order.

        """
        super().__init__(
            system.sig,
            system.order,
            _copy_rules(system),
            system.d_images,
            name=system.name,
        )
        self.family = family
        self.cells = tuple(cells)
        self.cell_index = {cell: position for position, cell in enumerate(cells)}

    def shift_map(self, g: GroupElement) -> list[int]:
        """Return the generator permutation (i, h) -> (i, g + h)."""
        size = len(self.cells)
        mapping = []
        for gen_id in range(2 * size):
            block, position = divmod(gen_id, size)
            i, h = self.cells[position]
            shifted = self.cell_index[(i, self.family.group.add(g, h))]
            mapping.append(block * size + shifted)
        return mapping


def group_algebra(
    family: GroupQFamily | QMatrix, group: GroupIndex | None = None
) -> GroupQSystem:
    """Create the group-indexed Q-space.

    x_i^(g) x_j^(h) = Q_ij^(h-g) x_j^(h) x_i^(g), likewise for dx against x, and
    dx_i^(g) dx_j^(h) = -Q_ij^(h-g) dx_j^(h) dx_i^(g).

    Args:
    ----
        family: The Q family, or a QMatrix used for every group element.
        group: The indexing group; required with a QMatrix.

    Returns:
    -------
        A GroupQSystem ordered by (kind, i, g) with differentials first.

    Raises:
    ------
        ValueError: Raised for a QMatrix without a group.

    """
    if isinstance(family, QMatrix):
        if group is None:
            raise ValueError("A QMatrix needs an indexing group")
        family = GroupQFamily.from_matrix(family, group)
    group = family.group
    cells = [(i, g) for i in range(family.n) for g in group.elements]
    size = len(cells)
    generators = [
        Generator(
            f"dx{i + 1}@{group.label(g)}",
            GeneratorKind.DIFFERENTIAL,
            parity=1,
            ydeg=1,
            partner=size + position,
            index=i + 1,
            element=g,
        )
        for position, (i, g) in enumerate(cells)
    ] + [
        Generator(
            f"x{i + 1}@{group.label(g)}",
            GeneratorKind.POINT,
            partner=position,
            index=i + 1,
            element=g,
        )
        for position, (i, g) in enumerate(cells)
    ]
    aliases = tuple(
        (f"y{i + 1}@{group.label(g)}", 1, position)
        for position, (i, g) in enumerate(cells)
    )
    sig = Signature(tuple(generators), family.params, aliases, group.orders)
    builder = PresentationBuilder(sig, range(2 * size), f"qspace({family.n}, {group})")
    for (first, (i, g)), (second, (j, h)) in product(enumerate(cells), repeat=2):
        q = family.value(i, j, group.subtract(h, g))
        builder.commute(first, size + second, q)
        if first < second:
            builder.commute(size + first, size + second, q)
            builder.commute(first, second, -q)
        elif first == second:
            builder.commute(first, first, -1)
    _LOGGER.debug("Built %s over %s cells", builder.name, size)
    return GroupQSystem(builder.build(), family, cells)


def act(g: GroupElement, a: Form, system: GroupQSystem) -> Form:
    """Apply g to a Form, sending x_i^(h) to x_i^(g+h), and normalize."""
    return system.normalize(relabel(a, system.shift_map(g)))


def equivalent(a: Form, b: Form, system: GroupQSystem) -> bool:
    """Return whether two Forms lie in the same orbit of the group action."""
    target = system.normalize(a)
    return any(act(g, b, system) == target for g in system.family.group.elements)


def equivariant_primitive(omega: Form, system: RewriteSystem) -> Form:
    """Return nu = I(A_t(omega)) over a (group-indexed) Q-space.

    omega - d(nu) = I(A_t(d omega)); nu commutes with the group action, which
    only relabels cells.

    Args:
    ----
        omega: A Form with every term of positive y-degree.
        system: The Q-space.

    Returns:
    -------
        The normal form of I(A_t(omega)).

    Raises:
    ------
        ValueError: Raised when omega has a term of y-degree 0.

    """
    normal = system.normalize(omega)
    if any(not normal.sig.word_bidegree(word)[1] for word in normal.terms):
        raise ValueError(
            f"The equivariant primitive needs positive y-degree, got {normal}"
        )
    return system.normalize(homotopy_i(a_t(normal)))


def decomposition_residual(omega: Form, system: RewriteSystem) -> Form:
    """Return omega - d(nu) - I(A_t(d omega)) for nu = equivariant_primitive(omega)."""
    nu = equivariant_primitive(omega, system)
    boundary = system.differential(omega)
    return system.normalize(omega - system.differential(nu) - homotopy_i(a_t(boundary)))


def action_a_t_residual(g: GroupElement, a: Form, system: GroupQSystem) -> ExtendedForm:
    """Return A_t(g a) - g A_t(a), normalized componentwise."""
    moved_first = a_t(act(g, a, system)).map_parts(system.normalize)
    return moved_first - a_t(a).map_parts(lambda part: act(g, part, system))


def action_homotopy_residual(
    g: GroupElement, a: ExtendedForm, system: GroupQSystem
) -> Form:
    """Return I(g a) - g I(a), with g acting on every t/tau component."""
    moved_first = homotopy_i(a.map_parts(lambda part: act(g, part, system)))
    return system.normalize(moved_first) - act(g, homotopy_i(a), system)


def qspace_from_dict(data: Mapping[str, Any]) -> QRewriteSystem | GroupQSystem:
    """Build a Q-space from the Q-file JSON shape.

    Without ``group`` the entries are ``[i, j, "scalar"]`` rows of a QMatrix. With
    ``group`` they are either the same rows, used for every group element, or
    ``[i, j, "k", "scalar"]`` rows of a Q family.

    Args:
    ----
        data: The decoded JSON.

    Returns:
    -------
        A QRewriteSystem or a GroupQSystem.

    Raises:
    ------
        InvalidQMatrixError: Raised on malformed data.

    """
    if "group" not in data:
        return q_algebra(QMatrix.from_dict(data))
    if any(len(row) == 4 for row in data.get("entries", [])):  # noqa: PLR2004
        return group_algebra(GroupQFamily.from_dict(data))
    try:
        group = GroupIndex(tuple(int(order) for order in data["group"]))
    except (TypeError, ValueError) as err:
        raise InvalidQMatrixError(f"Malformed group: {err}") from err
    return group_algebra(QMatrix.from_dict(data), group)
