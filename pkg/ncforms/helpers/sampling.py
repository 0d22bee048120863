"""Define seeded samplers for random Forms, derivations and presets."""

from __future__ import annotations

import random
from collections.abc import Sequence

from sympy.polys.domains import QQ

from ncforms.calculus import ExtendedForm
from ncforms.cartan import Derivation
from ncforms.freeforms import Form, Signature, add_term
from ncforms.helpers.types import Coefficient, Word
from ncforms.scalars import Scalar

DEFAULT_SEED: int = 7
DEFAULT_CASES: int = 100
DEFAULT_MAX_DEGREE: int = 4
DEFAULT_N: int = 2
DEFAULT_MAX_TERMS: int = 3

COEFFICIENT_POOL: tuple[Coefficient, ...] = (
    QQ(1),
    QQ(-1),
    QQ(1, 2),
    QQ(-1, 2),
    QQ(2),
)

PARITY_ATTEMPTS: int = 20


class Sampler:
    """Define a deterministic stream of random algebraic data."""

    def __init__(
        self,
        seed: int = DEFAULT_SEED,
        *,
        max_degree: int = DEFAULT_MAX_DEGREE,
        max_terms: int = DEFAULT_MAX_TERMS,
    ) -> None:
        """Initialize.

        Args:
        ----
            seed: The seed of the underlying ``random.Random``.
            max_degree: The default maximal word length.
            max_terms: The maximal number of terms in a sampled Form.

        """
        self.rng = random.Random(seed)  # noqa: S311
        self.max_degree = max_degree
        self.max_terms = max_terms

    def coefficient(self, sig: Signature) -> Scalar:
        """Return a rational from the pool, sometimes times a parameter power."""
        value = Scalar.constant(sig.params, self.rng.choice(COEFFICIENT_POOL))
        if sig.params.names and self.rng.random() < 0.3:  # noqa: PLR2004
            name = self.rng.choice(sig.params.names)
            value = value * Scalar.parameter(sig.params, name, self.rng.choice((-1, 1)))
        return value

    def word(self, letters: Sequence[int], length: int) -> Word:
        """Return a uniformly random word of the given length."""
        return tuple(self.rng.choice(letters) for _ in range(length))

    def form(
        self,
        sig: Signature,
        *,
        letters: Sequence[int] | None = None,
        max_degree: int | None = None,
        min_degree: int = 0,
    ) -> Form:
        """Return a random Form.

        Args:
        ----
            sig: The signature.
            letters: The allowed generator ids (default: all).
            max_degree: The maximal word length.
            min_degree: The minimal word length.

        Returns:
        -------
            A Form with up to ``max_terms`` terms.

        """
        pool = list(letters) if letters is not None else list(range(len(sig)))
        top = self.max_degree if max_degree is None else max_degree
        terms: dict[Word, Scalar] = {}
        for _ in range(self.rng.randint(1, self.max_terms)):
            length = self.rng.randint(min_degree, top) if pool else 0
            add_term(terms, self.word(pool, length), self.coefficient(sig))
        return Form(sig, terms)

    def zero_form(self, sig: Signature, *, max_degree: int | None = None) -> Form:
        """Return a random Form in the points only."""
        return self.form(sig, letters=sig.points, max_degree=max_degree)

    def positive_form(self, sig: Signature, *, max_degree: int | None = None) -> Form:
        """Return a random Form whose every term carries a differential letter."""
        top = self.max_degree if max_degree is None else max(max_degree, 1)
        terms: dict[Word, Scalar] = {}
        for _ in range(self.rng.randint(1, self.max_terms)):
            length = self.rng.randint(1, top)
            word = list(self.word(range(len(sig)), length))
            word[self.rng.randrange(length)] = self.rng.choice(sig.differentials)
            add_term(terms, tuple(word), self.coefficient(sig))
        return Form(sig, terms)

    def parity_form(
        self,
        sig: Signature,
        parity: int,
        *,
        letters: Sequence[int] | None = None,
        max_degree: int | None = None,
    ) -> Form:
        """Return a random Form whose terms all have the given parity.

        Letters default to the points, giving a 0-form; the result may be zero
        when no sampled word has the right parity.
        """
        pool = list(sig.points if letters is None else letters)
        terms: dict[Word, Scalar] = {}
        top = self.max_degree if max_degree is None else max_degree
        for _ in range(PARITY_ATTEMPTS):
            word = self.word(pool, self.rng.randint(0, top))
            if sig.word_parity(word) == parity % 2:
                add_term(terms, word, self.coefficient(sig))
            if len(terms) >= self.max_terms:
                break
        return Form(sig, terms)

    def extended_form(
        self, sig: Signature, *, max_degree: int | None = None
    ) -> ExtendedForm:
        """Return t^m a + tau t^n b for random Forms a, b and small powers."""
        return ExtendedForm.from_parts(
            sig,
            {self.rng.randint(0, 3): self.form(sig, max_degree=max_degree)},
            {self.rng.randint(0, 3): self.form(sig, max_degree=max_degree)},
        )

    def derivation(
        self, sig: Signature, parity: int = 0, *, max_degree: int | None = None
    ) -> Derivation:
        """Return a random derivation with 0-form values.

        Every value X(x_i) has parity p(X) + p(x_i), so graded signatures give
        homogeneous derivations.
        """
        degree = 2 if max_degree is None else max_degree
        values = {}
        for point in sig.points:
            target = parity + sig[point].parity
            if value := self.parity_form(sig, target, max_degree=degree):
                values[point] = value
        return Derivation(sig, values, parity % 2)

    def rational_matrix(self, size: int) -> list[list[Coefficient]]:
        """Return a square matrix over small rationals."""
        return [
            [self.rng.choice((*COEFFICIENT_POOL, QQ(0))) for _ in range(size)]
            for _ in range(size)
        ]
