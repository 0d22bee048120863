"""Define the free bigraded algebra of forms: generators, signatures and Forms."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any

from ncforms.errors import SignatureMismatchError
from ncforms.helpers.types import GroupElement, Word
from ncforms.scalars import ParamTable, Scalar, scalar_add, scalar_mul


class GeneratorKind(Enum):
    """Define the kinds of letters a word may carry.

    ``t`` and ``tau`` never appear inside words: an ExtendedForm tracks them
    structurally.
    """

    POINT = "point"
    DIFFERENTIAL = "differential"
    T = "t"
    TAU = "tau"


@dataclass(frozen=True)
class Generator:
    """Define a letter of the free algebra.

    ``parity`` is the letter's own Z2 grading (a y-letter already carries the
    extra odd unit); ``ydeg`` is its differential degree. ``partner`` links a
    point to its differential and back, when the pair exists.
    """

    name: str
    kind: GeneratorKind
    parity: int = 0
    ydeg: int = 0
    partner: int | None = None
    index: int = 0
    element: GroupElement | None = None

    @property
    def is_point(self) -> bool:
        """Return whether this is a point (x-type) letter."""
        return self.kind is GeneratorKind.POINT

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON shape of the generator."""
        data: dict[str, Any] = {
            "name": self.name,
            "kind": self.kind.value,
            "parity": self.parity,
            "ydeg": self.ydeg,
        }
        if self.index:
            data["index"] = self.index
        return data


@dataclass(frozen=True)
class Signature:
    """Define an ordered generator set with its parameters and name aliases.

    Aliases map an accepted spelling to ``(sign, generator id)``, e.g. ``dx1`` to
    ``y1`` or ``M[2,1]`` to ``-M[1,2]``.
    """

    generators: tuple[Generator, ...]
    params: ParamTable = field(default_factory=ParamTable)
    aliases: tuple[tuple[str, int, int], ...] = ()
    group: tuple[int, ...] = ()

    @cached_property
    def by_name(self) -> dict[str, tuple[int, int]]:
        """Return the map from every accepted spelling to (sign, generator id)."""
        table = {gen.name: (1, gen_id) for gen_id, gen in enumerate(self.generators)}
        for name, sign, gen_id in self.aliases:
            table.setdefault(name, (sign, gen_id))
        return table

    @cached_property
    def parities(self) -> tuple[int, ...]:
        """Return the letter parities indexed by generator id."""
        return tuple(gen.parity for gen in self.generators)

    @cached_property
    def points(self) -> tuple[int, ...]:
        """Return the ids of the point generators."""
        return tuple(
            gen_id for gen_id, gen in enumerate(self.generators) if gen.is_point
        )

    @cached_property
    def differentials(self) -> tuple[int, ...]:
        """Return the ids of the letters with positive differential degree."""
        return tuple(
            gen_id for gen_id, gen in enumerate(self.generators) if gen.ydeg > 0
        )

    @property
    def n(self) -> int:
        """Return the number of point generators."""
        return len(self.points)

    def __len__(self) -> int:
        """Return the number of generators."""
        return len(self.generators)

    def __getitem__(self, gen_id: int) -> Generator:
        """Return a generator by id."""
        return self.generators[gen_id]

    def gen_id(self, name: str) -> int:
        """Return the id of a generator given its canonical name.

        Args:
        ----
            name: The generator name.

        Returns:
        -------
            The generator id.

        Raises:
        ------
            KeyError: Raised for unknown names and for sign-flipping aliases.

        """
        sign, gen_id = self.by_name[name]
        if sign != 1:
            raise KeyError(name)
        return gen_id

    def word_parity(self, word: Word) -> int:
        """Return the Z2 parity of a word."""
        parities = self.parities
        return sum(parities[letter] for letter in word) % 2

    def word_bidegree(self, word: Word) -> tuple[int, int]:
        """Return (x-degree, y-degree) of a word."""
        xdeg = ydeg = 0
        for letter in word:
            gen = self.generators[letter]
            if gen.is_point:
                xdeg += 1
            ydeg += gen.ydeg
        return xdeg, ydeg

    def word_text(self, word: Word) -> str:
        """Return a word as ``*``-joined names with ``^`` for repeated letters."""
        pieces: list[str] = []
        position = 0
        while position < len(word):
            letter = word[position]
            run = 1
            while position + run < len(word) and word[position + run] == letter:
                run += 1
            name = self.generators[letter].name
            pieces.append(name if run == 1 else f"{name}^{run}")
            position += run
        return "*".join(pieces)


def free_signature(
    n: int,
    *,
    parities: Sequence[int] | None = None,
    params: ParamTable | None = None,
) -> Signature:
    """Create the signature of R<x1..xn, y1..yn>.

    Args:
    ----
        n: The number of x-generators.
        parities: Optional Z2 gradings p(i) of the x-generators.
        params: The coefficient parameters.

    Returns:
    -------
        A Signature object; ids 0..n-1 are x's and n..2n-1 are y's.

    Raises:
    ------
        ValueError: Raised when the parity list has the wrong length.

    """
    if parities is None:
        parities = [0] * n
    if len(parities) != n:
        raise ValueError(f"Expected {n} parities, got {len(parities)}")
    points = [
        Generator(
            f"x{i + 1}",
            GeneratorKind.POINT,
            parity=parities[i] % 2,
            partner=n + i,
            index=i + 1,
        )
        for i in range(n)
    ]
    differentials = [
        Generator(
            f"y{i + 1}",
            GeneratorKind.DIFFERENTIAL,
            parity=(parities[i] + 1) % 2,
            ydeg=1,
            partner=i,
            index=i + 1,
        )
        for i in range(n)
    ]
    aliases = tuple((f"dx{i + 1}", 1, n + i) for i in range(n))
    return Signature(
        tuple(points + differentials), params or ParamTable(), aliases
    )


def add_term(terms: dict[Word, Scalar], word: Word, coefficient: Scalar) -> None:
    """Add ``coefficient * word`` into a term map in place, pruning zeros."""
    current = terms.get(word)
    if current is None:
        if coefficient:
            terms[word] = coefficient
        return
    total = scalar_add(current, coefficient)
    if total:
        terms[word] = total
    else:
        del terms[word]


def _term_key(item: tuple[Word, Scalar]) -> tuple[int, Word]:
    """Return the printing key of a term: longer words first."""
    return (-len(item[0]), item[0])


class Form:
    """Define a finite Scalar-weighted sum of words over a Signature."""

    __slots__ = ("_sig", "_terms")

    _sig: Signature
    _terms: dict[Word, Scalar]

    def __init__(
        self, sig: Signature, terms: Mapping[Word, Scalar] | None = None
    ) -> None:
        """Initialize.

        Args:
        ----
            sig: The signature the words are written in.
            terms: A map from word (tuple of generator ids) to Scalar.

        """
        self._sig = sig
        self._terms = {}
        for word, coefficient in (terms or {}).items():
            add_term(self._terms, tuple(word), coefficient)

    @classmethod
    def _raw(cls: type[Form], sig: Signature, terms: dict[Word, Scalar]) -> Form:
        """Wrap a pruned term map without copying it."""
        form = object.__new__(cls)
        form._sig = sig
        form._terms = terms
        return form

    @classmethod
    def zero(cls: type[Form], sig: Signature) -> Form:
        """Return the zero Form."""
        return cls._raw(sig, {})

    @classmethod
    def one(cls: type[Form], sig: Signature) -> Form:
        """Return the unit Form."""
        return cls._raw(sig, {(): Scalar.one(sig.params)})

    @classmethod
    def scalar(cls: type[Form], sig: Signature, value: Scalar | int) -> Form:
        """Return a Scalar as a degree-zero Form."""
        if isinstance(value, int):
            value = Scalar.constant(sig.params, value)
        return cls._raw(sig, {(): value} if value else {})

    @classmethod
    def word(
        cls: type[Form],
        sig: Signature,
        word: Iterable[int],
        coefficient: Scalar | int = 1,
    ) -> Form:
        """Return a single word with a coefficient."""
        if isinstance(coefficient, int):
            coefficient = Scalar.constant(sig.params, coefficient)
        return cls._raw(sig, {tuple(word): coefficient} if coefficient else {})

    @classmethod
    def generator(cls: type[Form], sig: Signature, name: str) -> Form:
        """Return a generator (or alias) by name as a Form.

        Args:
        ----
            sig: The signature.
            name: A generator name or alias.

        Returns:
        -------
            A Form object.

        """
        sign, gen_id = sig.by_name[name]
        return cls.word(sig, (gen_id,), sign)

    @classmethod
    def letters(cls: type[Form], sig: Signature, *names: str) -> Form:
        """Return the product of named generators."""
        result = cls.one(sig)
        for name in names:
            result = form_mul(result, cls.generator(sig, name))
        return result

    @property
    def sig(self) -> Signature:
        """Return the signature."""
        return self._sig

    @property
    def terms(self) -> Mapping[Word, Scalar]:
        """Return the word-to-coefficient map."""
        return self._terms

    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        """Iterate over terms in canonical order."""
        yield from sorted(self._terms.items(), key=_term_key)

    def __len__(self) -> int:
        """Return the number of words."""
        return len(self._terms)

    def is_zero(self) -> bool:
        """Return whether this is the zero Form."""
        return not self._terms

    def __bool__(self) -> bool:
        """Return whether this Form is nonzero."""
        return bool(self._terms)

    def scalar_part(self) -> Scalar:
        """Return the (0,0)-component as a Scalar."""
        return self._terms.get((), Scalar.zero(self._sig.params))

    def coefficient(self, word: Iterable[int]) -> Scalar:
        """Return the coefficient of a word."""
        return self._terms.get(tuple(word), Scalar.zero(self._sig.params))

    def _check(self, other: Form) -> None:
        """Raise if two Forms live over different signatures."""
        if other._sig is not self._sig and other._sig != self._sig:
            raise SignatureMismatchError("Forms are over different signatures")

    def _coerce(self, other: object) -> Form | None:
        """Return ``other`` as a Form over this signature, if it can be one."""
        if isinstance(other, Form):
            self._check(other)
            return other
        if isinstance(other, Scalar):
            return Form.scalar(self._sig, other)
        if isinstance(other, int):
            return Form.scalar(self._sig, other)
        return None

    def __add__(self, other: object) -> Form:
        """Return the sum."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        terms = dict(self._terms)
        for word, coefficient in coerced._terms.items():
            add_term(terms, word, coefficient)
        return Form._raw(self._sig, terms)

    __radd__ = __add__

    def __neg__(self) -> Form:
        """Return the additive inverse."""
        negated = {word: -value for word, value in self._terms.items()}
        return Form._raw(self._sig, negated)

    def __sub__(self, other: object) -> Form:
        """Return the difference."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: object) -> Form:
        """Return the reflected difference."""
        if (coerced := self._coerce(other)) is None:
            return NotImplemented
        return coerced + (-self)

    def scale(self, factor: Scalar | int) -> Form:
        """Return this Form with every coefficient multiplied by a Scalar."""
        if isinstance(factor, int):
            factor = Scalar.constant(self._sig.params, factor)
        if not factor:
            return Form.zero(self._sig)
        terms: dict[Word, Scalar] = {}
        for word, value in self._terms.items():
            add_term(terms, word, scalar_mul(value, factor))
        return Form._raw(self._sig, terms)

    def __mul__(self, other: object) -> Form:
        """Return the product (concatenation, no reordering)."""
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if isinstance(other, Form):
            return form_mul(self, other)
        return NotImplemented

    def __rmul__(self, other: object) -> Form:
        """Return the reflected product with a Scalar."""
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int) -> Form:
        """Return a nonnegative integer power."""
        result = Form.one(self._sig)
        for _ in range(power):
            result = form_mul(result, self)
        return result

    def __eq__(self, other: object) -> bool:
        """Return whether two Forms have identical term maps."""
        if isinstance(other, (int, Scalar)):
            return self == Form.scalar(self._sig, other)
        if not isinstance(other, Form):
            return NotImplemented
        return self._sig == other._sig and self._terms == other._terms

    def __hash__(self) -> int:
        """Return a hash consistent with equality."""
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        """Return a debugging representation."""
        return f"Form({self.to_text()!r})"

    def __str__(self) -> str:
        """Return the canonical text."""
        return self.to_text()

    def map_coefficients(self, func: Callable[[Word, Scalar], Scalar]) -> Form:
        """Return a Form with each coefficient replaced by ``func(word, value)``."""
        terms: dict[Word, Scalar] = {}
        for word, value in self._terms.items():
            add_term(terms, word, func(word, value))
        return Form._raw(self._sig, terms)

    def to_text(self) -> str:
        """Return the canonical text, one printed term per scalar monomial."""
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for word, coefficient in self:
            letters = self._sig.word_text(word)
            for exponents, value in coefficient.monomials():
                negative = value < 0
                magnitude = -value if negative else value
                factors = coefficient.monomial_factors(exponents)
                if magnitude != 1 or not (factors or letters):
                    numerator = int(magnitude.numerator)
                    denominator = int(magnitude.denominator)
                    factors.insert(
                        0,
                        str(numerator)
                        if denominator == 1
                        else f"{numerator}/{denominator}",
                    )
                if letters:
                    factors.append(letters)
                body = "*".join(factors)
                if not pieces:
                    pieces.append(f"-{body}" if negative else body)
                else:
                    pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)


def _check_pair(a: Form, b: Form) -> None:
    """Raise if two Forms live over different signatures."""
    if a.sig is not b.sig and a.sig != b.sig:
        raise SignatureMismatchError("Forms are over different signatures")


def form_mul(a: Form, b: Form) -> Form:
    """Multiply two Forms by bilinear word concatenation.

    Args:
    ----
        a: The left factor.
        b: The right factor.

    Returns:
    -------
        The product in the free algebra.

    Raises:
    ------
        SignatureMismatchError: Raised when the signatures differ.

    """
    _check_pair(a, b)
    terms: dict[Word, Scalar] = {}
    for left_word, left in a.terms.items():
        for right_word, right in b.terms.items():
            add_term(terms, left_word + right_word, scalar_mul(left, right))
    return Form._raw(a.sig, terms)  # noqa: SLF001


def bigrade(a: Form) -> dict[tuple[int, int], Form]:
    """Split a Form into its (x-degree, y-degree) components.

    Args:
    ----
        a: The Form to split.

    Returns:
    -------
        A map from bidegree to the nonzero homogeneous component.

    """
    parts: dict[tuple[int, int], dict[Word, Scalar]] = {}
    for word, coefficient in a.terms.items():
        parts.setdefault(a.sig.word_bidegree(word), {})[word] = coefficient
    return {
        key: Form._raw(a.sig, terms)  # noqa: SLF001
        for key, terms in parts.items()
    }


def ydegree_components(a: Form) -> dict[int, Form]:
    """Split a Form by y-degree only."""
    parts: dict[int, dict[Word, Scalar]] = {}
    for word, coefficient in a.terms.items():
        parts.setdefault(a.sig.word_bidegree(word)[1], {})[word] = coefficient
    return {
        key: Form._raw(a.sig, terms)  # noqa: SLF001
        for key, terms in parts.items()
    }


def parity_of(a: Form) -> int | None:
    """Return the common parity of the words of a Form, or None if mixed or absent."""
    parities = {a.sig.word_parity(word) for word in a.terms}
    if len(parities) == 1:
        return parities.pop()
    return None


def graded_involution(a: Form) -> Form:
    """Return the graded involution: each word times (-1) to its parity."""
    return a.map_coefficients(
        lambda word, value: -value if a.sig.word_parity(word) else value
    )


def extend_derivation(
    a: Form, images: Sequence[Form | None], parity: int
) -> Form:
    """Extend letter images to a graded derivation and apply it.

    D(g1...gk) = sum_j (-1)^(parity * p(g1...g_{j-1})) g1...g_{j-1} D(g_j) g_{j+1}...gk

    Args:
    ----
        a: The Form to act on.
        images: D of each generator, by generator id (``None`` means zero).
        parity: The Z2 parity of D.

    Returns:
    -------
        D(a).

    """
    sig = a.sig
    parities = sig.parities
    terms: dict[Word, Scalar] = {}
    odd = parity % 2
    for word, coefficient in a.terms.items():
        prefix_parity = 0
        for position, letter in enumerate(word):
            image = images[letter]
            if image is not None and image.terms:
                sign_flip = odd and prefix_parity
                prefix, suffix = word[:position], word[position + 1 :]
                for image_word, image_value in image.terms.items():
                    value = scalar_mul(coefficient, image_value)
                    add_term(
                        terms,
                        prefix + image_word + suffix,
                        -value if sign_flip else value,
                    )
            prefix_parity ^= parities[letter]
    return Form._raw(sig, terms)  # noqa: SLF001


def substitute(
    a: Form, images: Sequence[Form], target: Signature | None = None
) -> Form:
    """Apply the algebra homomorphism sending each generator to a Form.

    Args:
    ----
        a: The Form to map.
        images: The image of each generator, by generator id.
        target: The signature of the images (defaults to ``a``'s).

    Returns:
    -------
        The image of ``a``.

    """
    sig = target or a.sig
    result = Form.zero(sig)
    for word, coefficient in a.terms.items():
        term = Form.scalar(sig, coefficient)
        for letter in word:
            term = form_mul(term, images[letter])
            if term.is_zero():
                break
        result = result + term
    return result


def relabel(a: Form, mapping: Sequence[int], target: Signature | None = None) -> Form:
    """Rename letters by a generator-id map, keeping coefficients."""
    terms: dict[Word, Scalar] = {}
    for word, coefficient in a.terms.items():
        add_term(terms, tuple(mapping[letter] for letter in word), coefficient)
    return Form._raw(target or a.sig, terms)  # noqa: SLF001
