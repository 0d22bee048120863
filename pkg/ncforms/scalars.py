"""Define exact coefficient arithmetic: Laurent polynomials over the rationals."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import sympy
from sympy.polys.domains import QQ

from ncforms.errors import NotInvertibleError, ParameterMismatchError
from ncforms.helpers.types import Coefficient, Exponents


@dataclass(frozen=True)
class ParamEntry:
    """Define a canonical parameter and the optional name of its inverse."""

    name: str
    inverse: str | None = None


@dataclass(frozen=True)
class ParamTable:
    """Define the ordered set of commuting parameters a Scalar may carry.

    A pair such as (Q[1,2], Q[2,1]) is stored once; the second name resolves to
    the first with exponent -1.
    """

    entries: tuple[ParamEntry, ...] = ()

    def __post_init__(self) -> None:
        """Validate that names are unique and inverses form disjoint pairs.

        Raises
        ------
            ValueError: Raised on a repeated name or a self-inverse entry.

        """
        seen: set[str] = set()
        for entry in self.entries:
            if entry.inverse == entry.name:
                raise ValueError(f"Parameter {entry.name} cannot be its own inverse")
            for name in (entry.name, entry.inverse):
                if name is None:
                    continue
                if name in seen:
                    raise ValueError(f"Duplicate parameter name: {name}")
                seen.add(name)

    @classmethod
    def of(cls: type[ParamTable], *names: str) -> ParamTable:
        """Create a table of independent parameters.

        Args:
        ----
            *names: The parameter names, in canonical order.

        Returns:
        -------
            A ParamTable object.

        """
        return cls(tuple(ParamEntry(name) for name in names))

    @cached_property
    def lookup(self) -> dict[str, tuple[int, int]]:
        """Return a map from every accepted name to (slot, exponent sign)."""
        table: dict[str, tuple[int, int]] = {}
        for slot, entry in enumerate(self.entries):
            table[entry.name] = (slot, 1)
            if entry.inverse is not None:
                table[entry.inverse] = (slot, -1)
        return table

    @property
    def names(self) -> tuple[str, ...]:
        """Return the canonical parameter names."""
        return tuple(entry.name for entry in self.entries)

    def __contains__(self, name: object) -> bool:
        """Return whether a name (canonical or inverse) is known."""
        return name in self.lookup

    def __len__(self) -> int:
        """Return the number of canonical slots."""
        return len(self.entries)

    def merged(self, other: ParamTable) -> ParamTable:
        """Return the union of two tables, keeping this table's order first.

        Args:
        ----
            other: The table to merge in.

        Returns:
        -------
            A ParamTable containing the entries of both.

        """
        known = {entry.name for entry in self.entries}
        extra = tuple(entry for entry in other.entries if entry.name not in known)
        return ParamTable(self.entries + extra)

    def to_list(self) -> list[str | list[str]]:
        """Return the JSON shape of the table."""
        return [
            entry.name if entry.inverse is None else [entry.name, entry.inverse]
            for entry in self.entries
        ]

    @classmethod
    def from_list(cls: type[ParamTable], data: Iterable[str | list[str]]) -> ParamTable:
        """Create a table from its JSON shape.

        Args:
        ----
            data: Names, or [name, inverse] pairs.

        Returns:
        -------
            A ParamTable object.

        """
        entries = []
        for item in data:
            if isinstance(item, str):
                entries.append(ParamEntry(item))
            else:
                name, inverse = item
                entries.append(ParamEntry(name, inverse))
        return cls(tuple(entries))


def _format_rational(value: Coefficient) -> str:
    """Return the text of a rational number."""
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def _monomial_key(exponents: Exponents) -> tuple[int, tuple[int, ...]]:
    """Return the printing key: higher total degree first."""
    return (-sum(exponents), tuple(-value for value in exponents))


class Scalar:
    """Define an exact Laurent polynomial over the rationals."""

    __slots__ = ("_table", "_terms")

    _table: ParamTable
    _terms: dict[Exponents, Coefficient]

    def __init__(
        self, table: ParamTable, terms: Mapping[Exponents, Any] | None = None
    ) -> None:
        """Initialize.

        Args:
        ----
            table: The parameter table the exponent vectors refer to.
            terms: A map from exponent vector to rational coefficient.

        Raises:
        ------
            ValueError: Raised when an exponent vector has the wrong width.

        """
        self._table = table
        self._terms = {}
        for exponents, coefficient in (terms or {}).items():
            if len(exponents) != len(table):
                raise ValueError(
                    f"Exponent vector {exponents} does not match "
                    f"{len(table)} parameters"
                )
            value = QQ.convert(coefficient)
            if value:
                self._terms[tuple(exponents)] = value

    @classmethod
    def _raw(
        cls: type[Scalar], table: ParamTable, terms: dict[Exponents, Coefficient]
    ) -> Scalar:
        """Wrap an already-canonical term map without copying or checking it."""
        scalar = object.__new__(cls)
        scalar._table = table
        scalar._terms = terms
        return scalar

    @classmethod
    def zero(cls: type[Scalar], table: ParamTable) -> Scalar:
        """Return the zero Scalar."""
        return cls._raw(table, {})

    @classmethod
    def one(cls: type[Scalar], table: ParamTable) -> Scalar:
        """Return the unit Scalar."""
        return cls._raw(table, {(0,) * len(table): QQ.one})

    @classmethod
    def constant(cls: type[Scalar], table: ParamTable, value: Any) -> Scalar:
        """Create a constant Scalar.

        Args:
        ----
            table: The parameter table.
            value: An int or a ``QQ`` element.

        Returns:
        -------
            A Scalar object.

        """
        converted = QQ.convert(value)
        if not converted:
            return cls._raw(table, {})
        return cls._raw(table, {(0,) * len(table): converted})

    @classmethod
    def rational(
        cls: type[Scalar], table: ParamTable, numerator: int, denominator: int = 1
    ) -> Scalar:
        """Create the constant numerator/denominator."""
        return cls.constant(table, QQ(numerator, denominator))

    @classmethod
    def parameter(
        cls: type[Scalar], table: ParamTable, name: str, power: int = 1
    ) -> Scalar:
        """Create a power of a named parameter.

        Args:
        ----
            table: The parameter table.
            name: A canonical or inverse parameter name.
            power: The integer exponent.

        Returns:
        -------
            A Scalar object.

        Raises:
        ------
            KeyError: Raised when the table does not know the name.

        """
        slot, sign = table.lookup[name]
        exponents = [0] * len(table)
        exponents[slot] = sign * power
        return cls._raw(table, {tuple(exponents): QQ.one})

    @property
    def table(self) -> ParamTable:
        """Return the parameter table."""
        return self._table

    @property
    def terms(self) -> Mapping[Exponents, Coefficient]:
        """Return the exponent-to-coefficient map."""
        return self._terms

    def is_zero(self) -> bool:
        """Return whether this is the zero Scalar."""
        return not self._terms

    def __bool__(self) -> bool:
        """Return whether this Scalar is nonzero."""
        return bool(self._terms)

    def is_monomial(self) -> bool:
        """Return whether this Scalar has exactly one term."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        """Return whether this Scalar carries no parameters."""
        return all(not any(exponents) for exponents in self._terms)

    def constant_value(self) -> Coefficient:
        """Return the rational value of a constant Scalar.

        Returns
        -------
            A ``QQ`` element.

        Raises
        ------
            ValueError: Raised when parameters are present.

        """
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return next(iter(self._terms.values()), QQ.zero)

    def monomials(self) -> Iterator[tuple[Exponents, Coefficient]]:
        """Iterate over terms in canonical printing order."""
        yield from sorted(self._terms.items(), key=lambda item: _monomial_key(item[0]))

    def _coerce(self, other: object) -> Scalar | None:
        """Return ``other`` as a Scalar over this table, if it can be one."""
        if isinstance(other, Scalar):
            if other._table is not self._table and other._table != self._table:
                raise ParameterMismatchError(
                    f"Parameter tables differ: {self._table.names} "
                    f"vs {other._table.names}"
                )
            return other
        if isinstance(other, int) or isinstance(other, QQ.dtype):
            return Scalar.constant(self._table, other)
        return None

    def __add__(self, other: object) -> Scalar:
        """Return the sum."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        return scalar_add(self, coerced)

    __radd__ = __add__

    def __sub__(self, other: object) -> Scalar:
        """Return the difference."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        return scalar_add(self, -coerced)

    def __rsub__(self, other: object) -> Scalar:
        """Return the reflected difference."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        return scalar_add(coerced, -self)

    def __neg__(self) -> Scalar:
        """Return the additive inverse."""
        negated = {key: -value for key, value in self._terms.items()}
        return Scalar._raw(self._table, negated)

    def __mul__(self, other: object) -> Scalar:
        """Return the product."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        return scalar_mul(self, coerced)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> Scalar:
        """Return an integer power; negative powers need a monomial."""
        if power < 0:
            return scalar_inverse(self) ** (-power)
        result = Scalar.one(self._table)
        base = self
        while power:
            if power & 1:
                result = scalar_mul(result, base)
            base = scalar_mul(base, base)
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        """Return whether two Scalars have identical term maps."""
        if isinstance(other, int):
            return self._terms == Scalar.constant(self._table, other)._terms
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._table == other._table and self._terms == other._terms

    def __hash__(self) -> int:
        """Return a hash consistent with equality."""
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        """Return a debugging representation."""
        return f"Scalar({self.to_text()!r})"

    def __str__(self) -> str:
        """Return the canonical text."""
        return self.to_text()

    def monomial_factors(self, exponents: Exponents) -> list[str]:
        """Return the parameter factors of one exponent vector as text."""
        factors = []
        for entry, power in zip(self._table.entries, exponents):
            if power == 1:
                factors.append(entry.name)
            elif power:
                factors.append(f"{entry.name}^{power}")
        return factors

    def to_text(self) -> str:
        """Return the canonical text, e.g. ``3/2*h^2 - Q[1,2]^-1``."""
        if not self._terms:
            return "0"
        pieces = []
        for exponents, coefficient in self.monomials():
            negative = coefficient < 0
            magnitude = -coefficient if negative else coefficient
            factors = self.monomial_factors(exponents)
            if magnitude != 1 or not factors:
                factors.insert(0, _format_rational(magnitude))
            body = "*".join(factors)
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def to_sympy(self) -> sympy.Expr:
        """Return the Scalar as a sympy expression in one Symbol per parameter."""
        symbols = [sympy.Symbol(name) for name in self._table.names]
        total = sympy.Integer(0)
        for exponents, coefficient in self._terms.items():
            term = QQ.to_sympy(coefficient)
            for symbol, power in zip(symbols, exponents):
                term *= symbol**power
            total += term
        return total

    @classmethod
    def from_sympy(cls: type[Scalar], table: ParamTable, expr: Any) -> Scalar:
        """Create a Scalar from a sympy Laurent polynomial.

        Args:
        ----
            table: The parameter table whose names the expression's symbols use.
            expr: A sympy expression.

        Returns:
        -------
            A Scalar object.

        Raises:
        ------
            ValueError: Raised on non-rational coefficients or unknown symbols.

        """
        result = cls.zero(table)
        for term in sympy.Add.make_args(sympy.expand(sympy.sympify(expr))):
            coefficient, factors = term.as_coeff_mul()
            if not coefficient.is_Rational:
                raise ValueError(f"Non-rational coefficient in {term}")
            exponents = [0] * len(table)
            for factor in factors:
                base, power = factor.as_base_exp()
                if not base.is_Symbol or not power.is_Integer:
                    raise ValueError(f"{factor} is not a parameter power")
                if base.name not in table:
                    raise ValueError(f"Unknown parameter {base.name}")
                slot, sign = table.lookup[base.name]
                exponents[slot] += sign * int(power)
            result = scalar_add(
                result, cls._raw(table, {tuple(exponents): QQ.from_sympy(coefficient)})
            )
        return result


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    """Add two Scalars over the same table.

    Args:
    ----
        a: The first summand.
        b: The second summand.

    Returns:
    -------
        The exact sum with zero coefficients pruned.

    Raises:
    ------
        ParameterMismatchError: Raised when the tables differ.

    """
    if a._table is not b._table and a._table != b._table:  # noqa: SLF001
        raise ParameterMismatchError(
            f"Parameter tables differ: {a.table.names} vs {b.table.names}"
        )
    terms = dict(a.terms)
    for exponents, coefficient in b.terms.items():
        total = terms.get(exponents, QQ.zero) + coefficient
        if total:
            terms[exponents] = total
        else:
            terms.pop(exponents, None)
    return Scalar._raw(a.table, terms)  # noqa: SLF001


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    """Multiply two Scalars over the same table.

    Q[j,i] is stored as Q[i,j]^-1, so products of inverse pairs collapse to 1.

    Args:
    ----
        a: The first factor.
        b: The second factor.

    Returns:
    -------
        The exact product.

    Raises:
    ------
        ParameterMismatchError: Raised when the tables differ.

    """
    if a._table is not b._table and a._table != b._table:  # noqa: SLF001
        raise ParameterMismatchError(
            f"Parameter tables differ: {a.table.names} vs {b.table.names}"
        )
    terms: dict[Exponents, Coefficient] = {}
    for left_exponents, left in a.terms.items():
        for right_exponents, right in b.terms.items():
            exponents = (
                tuple(x + y for x, y in zip(left_exponents, right_exponents))
                if left_exponents
                else left_exponents
            )
            total = terms.get(exponents, QQ.zero) + left * right
            if total:
                terms[exponents] = total
            else:
                terms.pop(exponents, None)
    return Scalar._raw(a.table, terms)  # noqa: SLF001


def scalar_inverse(a: Scalar) -> Scalar:
    """Invert a monomial Scalar.

    Args:
    ----
        a: A single-term Scalar.

    Returns:
    -------
        The Laurent inverse.

    Raises:
    ------
        NotInvertibleError: Raised for zero or multi-term Scalars.

    """
    if not a.is_monomial():
        raise NotInvertibleError(f"Only monomials are invertible, got {a}")
    ((exponents, coefficient),) = a.terms.items()
    return Scalar._raw(  # noqa: SLF001
        a.table, {tuple(-value for value in exponents): QQ.one / coefficient}
    )
