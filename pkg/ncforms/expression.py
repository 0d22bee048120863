"""Define the expression language for Forms and Scalars."""

from __future__ import annotations

import re
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

from ncforms.calculus import differential as free_differential
from ncforms.errors import (
    ExpressionSyntaxError,
    NotInvertibleError,
    UnknownGeneratorError,
)
from ncforms.freeforms import Form, Signature, form_mul
from ncforms.scalars import ParamTable, Scalar, scalar_inverse

IDENT_PATTERN = r"[A-Za-z_]+\d*(?:\[[^\]]*\])?(?:@(?:\d+|\(\d+(?:,\d+)*\)))?"

_TOKEN_RE = re.compile(
    rf"\s*(?:(?P<number>\d+)|(?P<ident>{IDENT_PATTERN})|(?P<op>[-+*/^()]))"
)
_DIGITS_RE = re.compile(r"\d+")


@dataclass(frozen=True)
class Token:
    """Define a lexical token and its offset in the source text."""

    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    """Split expression text into tokens.

    Args:
    ----
        text: The expression text.

    Returns:
    -------
        The tokens, ending with an ``end`` token.

    Raises:
    ------
        ExpressionSyntaxError: Raised on a character no token can start with.

    """
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(
                f"Unexpected character {text[offset]!r}", offset
            )
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _family(name: str) -> str:
    """Return a name with its indices blanked, e.g. ``e[#,#]``."""
    return _DIGITS_RE.sub("#", name)


@lru_cache(maxsize=64)
def _families(sig: Signature) -> frozenset[str]:
    """Return the index-blanked spellings a signature accepts."""
    names = list(sig.by_name) + list(sig.params.lookup)
    return frozenset(_family(name) for name in names)


class _Parser:
    """Parse one expression by recursive descent."""

    def __init__(
        self, text: str, sig: Signature, differential: Callable[[Form], Form]
    ) -> None:
        """Initialize."""
        self._tokens = tokenize(text)
        self._index = 0
        self._sig = sig
        self._differential = differential

    @property
    def _current(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _expect(self, text: str) -> Token:
        token = self._current
        if token.text != text or token.kind == "end":
            raise ExpressionSyntaxError(
                f"Expected {text!r}, found {token.text or 'end of input'!r}",
                token.position,
            )
        return self._advance()

    def parse(self) -> Form:
        result = self._expr()
        if self._current.kind != "end":
            raise ExpressionSyntaxError(
                f"Unexpected token {self._current.text!r}", self._current.position
            )
        return result

    def _expr(self) -> Form:
        sign = 1
        if self._current.text in {"+", "-"} and self._current.kind == "op":
            sign = -1 if self._advance().text == "-" else 1
        result = self._term().scale(sign)
        while self._current.kind == "op" and self._current.text in {"+", "-"}:
            operator = self._advance().text
            term = self._term()
            result = result + term if operator == "+" else result - term
        return result

    def _term(self) -> Form:
        result = self._power()
        while self._current.kind == "op" and self._current.text in {"*", "/"}:
            operator = self._advance()
            factor = self._power()
            if operator.text == "*":
                result = form_mul(result, factor)
            else:
                result = result.scale(self._invert(factor, operator.position))
        return result

    def _invert(self, factor: Form, position: int) -> Scalar:
        if set(factor.terms) != {()}:
            raise ExpressionSyntaxError("Only scalar monomials can divide", position)
        try:
            return scalar_inverse(factor.scalar_part())
        except NotInvertibleError as err:
            raise ExpressionSyntaxError(str(err), position) from err

    def _power(self) -> Form:
        base = self._atom()
        if not (self._current.kind == "op" and self._current.text == "^"):
            return base
        caret = self._advance()
        negative = False
        if self._current.kind == "op" and self._current.text == "-":
            self._advance()
            negative = True
        token = self._current
        if token.kind != "number":
            raise ExpressionSyntaxError("Expected an integer exponent", token.position)
        self._advance()
        exponent = int(token.text)
        if negative:
            inverse = self._invert(base, caret.position)
            return Form.scalar(self._sig, inverse**exponent)
        return base**exponent

    def _atom(self) -> Form:
        token = self._current
        if token.kind == "number":
            self._advance()
            return Form.scalar(self._sig, int(token.text))
        if token.kind == "ident":
            self._advance()
            if token.text == "d" and self._current.text == "(":
                self._advance()
                inner = self._expr()
                self._expect(")")
                return self._differential(inner)
            return self._resolve(token)
        if token.kind == "op" and token.text == "(":
            self._advance()
            inner = self._expr()
            self._expect(")")
            return inner
        raise ExpressionSyntaxError(
            f"Unexpected {token.text or 'end of input'!r}", token.position
        )

    def _resolve(self, token: Token) -> Form:
        name = token.text
        if name in self._sig.params:
            return Form.scalar(self._sig, Scalar.parameter(self._sig.params, name))
        if name in self._sig.by_name:
            return Form.generator(self._sig, name)
        if _family(name) in _families(self._sig):
            raise UnknownGeneratorError(f"index out of range: {name!r}", token.position)
        raise UnknownGeneratorError(f"unknown generator: {name!r}", token.position)


def parse(
    text: str,
    sig: Signature,
    *,
    differential: Callable[[Form], Form] | None = None,
) -> Form:
    """Parse expression text into a Form.

    Args:
    ----
        text: Text such as ``x1*y2 + 3*x1^2`` or ``d(p1*q1)``.
        sig: The signature that names generators and parameters.
        differential: The map used for ``d(...)`` (defaults to the free d).

    Returns:
    -------
        The denoted Form, unnormalized.

    """
    return _Parser(text, sig, differential or free_differential).parse()


def parse_scalar(text: str, params: ParamTable) -> Scalar:
    """Parse a Scalar literal such as ``3/2*h^-1`` or ``Q[1,2]``.

    Args:
    ----
        text: The literal.
        params: The parameter table.

    Returns:
    -------
        A Scalar object.

    Raises:
    ------
        ExpressionSyntaxError: Raised when the text names a generator.

    """
    form = parse(text, Signature((), params))
    if set(form.terms) - {()}:  # pragma: no cover
        raise ExpressionSyntaxError(f"{text!r} is not a scalar", 0)
    return form.scalar_part()
