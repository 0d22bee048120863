"""Define the adjacent-pair rewrite engine behind every quotient algebra."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations_with_replacement, product
from typing import Any

from ncforms.errors import InvalidPresentationError, NotInvertibleError
from ncforms.expression import parse
from ncforms.freeforms import (
    Form,
    Generator,
    GeneratorKind,
    Signature,
    add_term,
    extend_derivation,
    form_mul,
)
from ncforms.helpers.types import DictType, Pair, Word
from ncforms.report import AuditEntry, AuditReport
from ncforms.scalars import ParamTable, Scalar, scalar_inverse, scalar_mul

_LOGGER = logging.getLogger(__name__)

DEFAULT_CACHE_LIMIT: int = 200_000


class Strategy(Enum):
    """Define which reducible pair is rewritten first."""

    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


@dataclass(frozen=True)
class Rule:
    """Define the replacement of the two-letter word ``left`` by ``right``."""

    left: Pair
    right: Form

    def to_dict(self) -> DictType:
        """Return the JSON shape of the rule."""
        sig = self.right.sig
        return {
            "left": [sig[self.left[0]].name, sig[self.left[1]].name],
            "right": self.right.to_text(),
        }


class RewriteSystem:
    """Define a terminating set of adjacent-pair rules with a differential.

    Normal words list their letters in ``order``; every rule either swaps an
    out-of-order pair (plus shorter words) or replaces a pair by shorter words,
    so (length, inversions) strictly drops at each step.
    """

    def __init__(
        self,
        sig: Signature,
        order: Sequence[int],
        rules: Mapping[Pair, Form],
        d_images: Mapping[int, Form] | None = None,
        *,
        name: str = "system",
        cache_limit: int = DEFAULT_CACHE_LIMIT,
    ) -> None:
        """Initialize.

        Args:
        ----
            sig: The signature of the free algebra being divided.
            order: Every generator id, in normal-form order.
            rules: The replacement Form of each rewritable pair.
            d_images: The differential of each generator; free d when omitted.
            name: A label used in reports and logs.
            cache_limit: The number of memoized normal words kept per strategy.

        Raises:
        ------
            InvalidPresentationError: Raised when the order is not a permutation or a
                rule could fail to terminate.

        """
        if sorted(order) != list(range(len(sig))):
            raise InvalidPresentationError(
                f"{name}: order must list every generator once"
            )
        self.sig = sig
        self.name = name
        self.order = tuple(order)
        self.rank = {gen_id: position for position, gen_id in enumerate(self.order)}
        self.rules = {pair: Rule(pair, right) for pair, right in rules.items()}
        if d_images is None:
            d_images = {
                gen_id: Form.word(sig, (gen.partner,))
                if gen.is_point and gen.partner is not None
                else Form.zero(sig)
                for gen_id, gen in enumerate(sig.generators)
            }
        self.d_images = dict(d_images)
        self._cache_limit = cache_limit
        self._symbol: RewriteSystem | None = None
        self._caches: dict[Strategy, dict[Word, dict[Word, Scalar]]] = {
            strategy: {} for strategy in Strategy
        }
        for rule in self.rules.values():
            self._validate(rule)
        _LOGGER.debug(
            "Built %s: %s generators, %s rules", name, len(sig), len(self.rules)
        )

    def __repr__(self) -> str:
        """Return a debugging representation."""
        return f"RewriteSystem({self.name!r}, rules={len(self.rules)})"

    def _validate(self, rule: Rule) -> None:
        """Reject a rule whose right side is not smaller than its left side."""
        first, second = rule.left
        if rule.right.sig != self.sig:
            raise InvalidPresentationError(
                f"{self.name}: rule over a foreign signature"
            )
        for word in rule.right.terms:
            if len(word) < 2:
                continue
            if word == (second, first) and self.rank[first] > self.rank[second]:
                continue
            raise InvalidPresentationError(
                f"{self.name}: rule {self.sig.word_text(rule.left)} -> {rule.right} "
                "does not decrease the termination measure"
            )

    @cached_property
    def d_image_list(self) -> tuple[Form | None, ...]:
        """Return the differential images by generator id."""
        return tuple(self.d_images.get(gen_id) for gen_id in range(len(self.sig)))

    def measure(self, word: Word) -> tuple[int, int, int]:
        """Return (length, inversions, rank sum) of a word."""
        ranks = [self.rank[letter] for letter in word]
        inversions = sum(
            1
            for left in range(len(ranks))
            for right in range(left + 1, len(ranks))
            if ranks[left] > ranks[right]
        )
        return len(word), inversions, sum(ranks)

    def is_normal(self, word: Word) -> bool:
        """Return whether no rule applies anywhere in a word."""
        rules = self.rules
        return all(
            (word[position], word[position + 1]) not in rules
            for position in range(len(word) - 1)
        )

    def normal_words(self, max_degree: int) -> Iterator[Word]:
        """Yield every normal word of length at most ``max_degree``, shortest first.

        Words are drawn in rank order, so the enumeration is exhaustive once every
        out-of-order pair has a rule.
        """
        for length in range(max_degree + 1):
            for word in combinations_with_replacement(self.order, length):
                if self.is_normal(word):
                    yield word

    def reduce_at(self, word: Word, position: int) -> dict[Word, Scalar]:
        """Apply the rule at ``position`` once.

        Args:
        ----
            word: The word.
            position: The index of the first letter of the rewritten pair.

        Returns:
        -------
            The resulting term map.

        """
        rule = self.rules[(word[position], word[position + 1])]
        prefix, suffix = word[:position], word[position + 2 :]
        return {
            prefix + right + suffix: value for right, value in rule.right.terms.items()
        }

    def _redex(self, word: Word, strategy: Strategy) -> int | None:
        """Return the position of the pair to rewrite, if any."""
        rules = self.rules
        positions: Iterable[int] = range(len(word) - 1)
        if strategy is Strategy.RIGHTMOST:
            positions = reversed(range(len(word) - 1))
        for position in positions:
            if (word[position], word[position + 1]) in rules:
                return position
        return None

    def normal_word(
        self, word: Word, strategy: Strategy = Strategy.LEFTMOST
    ) -> Mapping[Word, Scalar]:
        """Return the normal form of a single word as a term map.

        Args:
        ----
            word: The word.
            strategy: Which reducible pair to rewrite first.

        Returns:
        -------
            The term map of the normal form.

        """
        cache = self._caches[strategy]
        if (cached := cache.get(word)) is not None:
            return cached
        position = self._redex(word, strategy)
        if position is None:
            result = {word: Scalar.one(self.sig.params)}
        else:
            result = {}
            for reduced, value in self.reduce_at(word, position).items():
                for normal, normal_value in self.normal_word(reduced, strategy).items():
                    add_term(result, normal, scalar_mul(value, normal_value))
        if len(cache) >= self._cache_limit:
            _LOGGER.debug("%s: clearing %s cached normal words", self.name, len(cache))
            cache.clear()
        cache[word] = result
        return result

    def normalize(self, a: Form, strategy: Strategy = Strategy.LEFTMOST) -> Form:
        """Return the normal form of a Form.

        Args:
        ----
            a: The Form.
            strategy: Which reducible pair to rewrite first.

        Returns:
        -------
            The canonical representative of ``a`` in the quotient algebra.

        """
        terms: dict[Word, Scalar] = {}
        for word, coefficient in a.terms.items():
            for normal, value in self.normal_word(word, strategy).items():
                add_term(terms, normal, scalar_mul(coefficient, value))
        return Form(self.sig, terms)

    def extend_d(self, a: Form) -> Form:
        """Apply the differential through the d-images without normalizing."""
        return extend_derivation(a, self.d_image_list, 1)

    def differential(self, a: Form) -> Form:
        """Return the normal form of d(a)."""
        return self.normalize(self.extend_d(a))

    def multiply(self, a: Form, b: Form) -> Form:
        """Return the normal form of a product."""
        return self.normalize(form_mul(a, b))

    def commutator(self, a: Form, b: Form, *, sign: int = 1) -> Form:
        """Return normalize(ab - sign * ba)."""
        return self.normalize(form_mul(a, b) - form_mul(b, a).scale(sign))

    def element(self, text: str) -> Form:
        """Parse expression text over this system and normalize it."""
        return self.normalize(parse(text, self.sig, differential=self.extend_d))

    def symbol_system(self) -> RewriteSystem:
        """Return the graded-commutative algebra with the same generators and order.

        Returns
        -------
            A system where every out-of-order pair graded-commutes and odd
            letters square to zero.

        """
        if self._symbol is None:
            self._symbol = _symbol_system(self)
        return self._symbol

    def to_dict(self) -> DictType:
        """Return the JSON shape of the presentation."""
        sig = self.sig
        return {
            "name": self.name,
            "parameters": sig.params.to_list(),
            "generators": [_generator_dict(sig, gen) for gen in sig.generators],
            "aliases": [
                [alias, sign, sig[gen_id].name] for alias, sign, gen_id in sig.aliases
            ],
            "order": [sig[gen_id].name for gen_id in self.order],
            "rules": [
                rule.to_dict()
                for _, rule in sorted(
                    self.rules.items(),
                    key=lambda item: (self.rank[item[0][0]], self.rank[item[0][1]]),
                )
            ],
            "d_images": {
                sig[gen_id].name: image.to_text()
                for gen_id, image in sorted(self.d_images.items())
            },
        }

    @classmethod
    def from_dict(cls: type[RewriteSystem], data: Mapping[str, Any]) -> RewriteSystem:
        """Create a presentation from its JSON shape.

        Args:
        ----
            data: A mapping with ``parameters``, ``generators``, ``order``,
                ``rules`` and optional ``aliases`` and ``d_images``.

        Returns:
        -------
            A RewriteSystem object.

        Raises:
        ------
            InvalidPresentationError: Raised on malformed data.

        """
        try:
            params = ParamTable.from_list(data.get("parameters", []))
            raw_generators = data["generators"]
            names = [item["name"] for item in raw_generators]
            partners = {
                item["name"]: item.get("partner")
                for item in raw_generators
                if item.get("partner") is not None
            }
            generators = tuple(
                Generator(
                    item["name"],
                    GeneratorKind(item.get("kind", "point")),
                    parity=int(item.get("parity", 0)) % 2,
                    ydeg=int(
                        item.get("ydeg", 1 if item.get("kind") == "differential" else 0)
                    ),
                    partner=names.index(partners[item["name"]])
                    if item["name"] in partners
                    else None,
                    index=int(item.get("index", 0)),
                )
                for item in raw_generators
            )
            aliases = tuple(
                (alias, int(sign), names.index(target))
                for alias, sign, target in data.get("aliases", [])
            )
            sig = Signature(generators, params, aliases)
            order = [names.index(name) for name in data.get("order", names)]
            rules: dict[Pair, Form] = {}
            for item in data.get("rules", []):
                first, second = item["left"]
                pair = (sig.gen_id(first), sig.gen_id(second))
                rules[pair] = parse(item["right"], sig)
            d_images = None
            if "d_images" in data:
                d_images = {
                    sig.gen_id(name): parse(text, sig)
                    for name, text in data["d_images"].items()
                }
        except (KeyError, ValueError, TypeError) as err:
            raise InvalidPresentationError(f"Malformed presentation: {err}") from err
        return cls(sig, order, rules, d_images, name=data.get("name", "custom"))


def _symbol_system(system: RewriteSystem) -> RewriteSystem:
    """Build the graded-commutative shadow of a system."""
    sig = system.sig
    parities = sig.parities
    rules: dict[Pair, Form] = {}
    for first, second in product(range(len(sig)), repeat=2):
        if first == second:
            if parities[first]:
                rules[(first, first)] = Form.zero(sig)
        elif system.rank[first] > system.rank[second]:
            sign = -1 if parities[first] and parities[second] else 1
            rules[(first, second)] = Form.word(sig, (second, first), sign)
    return RewriteSystem(
        sig, system.order, rules, system.d_images, name=f"{system.name} (symbols)"
    )


def _generator_dict(sig: Signature, gen: Generator) -> DictType:
    """Return the JSON shape of a generator with its partner named."""
    data = gen.to_dict()
    if gen.partner is not None:
        data["partner"] = sig[gen.partner].name
    return data


def _pair_text(sig: Signature, pair: Pair) -> str:
    return sig.word_text(pair)


def _missing_rule_entries(system: RewriteSystem, residual: Form) -> list[AuditEntry]:
    """Flag out-of-order adjacent pairs without a rule inside a residual."""
    seen: set[Pair] = set()
    entries = []
    for word in residual.terms:
        for position in range(len(word) - 1):
            pair = (word[position], word[position + 1])
            if (
                pair not in system.rules
                and pair not in seen
                and system.rank[pair[0]] >= system.rank[pair[1]]
            ):
                seen.add(pair)
                entries.append(
                    AuditEntry(
                        "missing-rule",
                        _pair_text(system.sig, pair),
                        "no rule",
                        "an out-of-order pair stays unreduced",
                    )
                )
    return entries


def check_completeness(system: RewriteSystem) -> AuditReport:
    """Report out-of-order pairs that have no rule.

    Args:
    ----
        system: The rewrite system.

    Returns:
    -------
        A report with one entry per unreduced out-of-order pair.

    """
    sig = system.sig
    entries = [
        AuditEntry("missing-rule", _pair_text(sig, (first, second)), "no rule")
        for first, second in product(system.order, repeat=2)
        if system.rank[first] > system.rank[second]
        and (first, second) not in system.rules
    ]
    return AuditReport(f"{system.name}: completeness", len(sig) ** 2, tuple(entries))


def _overlap_words(system: RewriteSystem, length: int) -> Iterator[Word]:
    """Yield words whose every adjacent pair is rewritable."""
    successors: dict[int, list[int]] = {}
    for first, second in system.rules:
        successors.setdefault(first, []).append(second)

    def extend(word: Word) -> Iterator[Word]:
        if len(word) == length:
            yield word
            return
        for letter in successors.get(word[-1], []):
            yield from extend((*word, letter))

    for first in sorted(successors):
        yield from extend((first,))


def check_local_confluence(system: RewriteSystem, max_degree: int = 3) -> AuditReport:
    """Resolve every overlap of two rules on a three-letter word.

    Words of length 4..max_degree whose adjacent pairs all overlap are also
    reduced with both strategies and compared.

    Args:
    ----
        system: The rewrite system.
        max_degree: The longest overlap chain to check (at least 3).

    Returns:
    -------
        A report with one entry per overlap whose two reductions disagree.

    Raises:
    ------
        ValueError: Raised when ``max_degree`` is below 3.

    """
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    sig = system.sig
    entries: list[AuditEntry] = []
    checked = 0
    for word in _overlap_words(system, 3):
        checked += 1
        left = system.normalize(Form(sig, system.reduce_at(word, 0)))
        right = system.normalize(Form(sig, system.reduce_at(word, 1)))
        if left != right:
            entries.append(
                AuditEntry("confluence", sig.word_text(word), (left - right).to_text())
            )
    for length in range(4, max_degree + 1):
        for word in _overlap_words(system, length):
            checked += 1
            form = Form.word(sig, word)
            left = system.normalize(form, Strategy.LEFTMOST)
            right = system.normalize(form, Strategy.RIGHTMOST)
            if left != right:
                entries.append(
                    AuditEntry(
                        "strategy", sig.word_text(word), (left - right).to_text()
                    )
                )
    report = AuditReport(f"{system.name}: local confluence", checked, tuple(entries))
    _LOGGER.debug("%s: %s overlap(s), %s failing", report.name, checked, len(entries))
    return report


def check_d_compatibility(system: RewriteSystem) -> AuditReport:
    """Check that the differential respects every relation.

    Args:
    ----
        system: The rewrite system.

    Returns:
    -------
        A report listing missing d-images, d-images of the wrong degree, rules
        whose d-image does not normalize to 0, and generators with d^2 != 0.

    """
    sig = system.sig
    entries: list[AuditEntry] = []
    missing = [gen_id for gen_id in range(len(sig)) if gen_id not in system.d_images]
    entries.extend(
        AuditEntry("missing-d-image", sig[gen_id].name, "undefined")
        for gen_id in missing
    )
    if missing:
        return AuditReport(f"{system.name}: d compatibility", len(sig), tuple(entries))

    for gen_id, image in sorted(system.d_images.items()):
        expected = sig[gen_id].ydeg + 1
        if any(sig.word_bidegree(word)[1] != expected for word in image.terms):
            entries.append(
                AuditEntry(
                    "degree",
                    sig[gen_id].name,
                    image.to_text(),
                    f"expected y-degree {expected}",
                )
            )
        if square := system.differential(image):
            entries.append(AuditEntry("d-squared", sig[gen_id].name, square.to_text()))

    for pair, rule in sorted(system.rules.items()):
        relation = Form.word(sig, pair) - rule.right
        if residual := system.differential(relation):
            entries.append(
                AuditEntry("d-relation", _pair_text(sig, pair), residual.to_text())
            )
            entries.extend(_missing_rule_entries(system, residual))
    report = AuditReport(
        f"{system.name}: d compatibility", len(sig) + len(system.rules), tuple(entries)
    )
    _LOGGER.debug(
        "%s: %s check(s), %s failing", report.name, report.checked, len(entries)
    )
    return report


def audit(system: RewriteSystem, max_degree: int = 3) -> AuditReport:
    """Run the confluence, d-compatibility and completeness audits together."""
    return (
        check_local_confluence(system, max_degree)
        .merged(check_d_compatibility(system))
        .merged(check_completeness(system), name=f"{system.name}: audit")
    )


def product_residual(system: RewriteSystem, a: Form, b: Form) -> Form:
    """Return normalize(ab) - normalize(normalize(a) normalize(b))."""
    return system.normalize(form_mul(a, b)) - system.multiply(
        system.normalize(a), system.normalize(b)
    )


class PresentationBuilder:
    """Define a helper that turns relations into oriented rules.

    ``commute(a, b, factor, extra)`` records a*b = factor*b*a + extra and stores
    it as a rule for whichever of a*b, b*a is out of order.
    """

    def __init__(self, sig: Signature, order: Sequence[int | str], name: str) -> None:
        """Initialize.

        Args:
        ----
            sig: The signature.
            order: Generator ids or names in normal-form order.
            name: The system name.

        """
        self.sig = sig
        self.name = name
        self.order = [self._id(item) for item in order]
        self._rank = {gen_id: position for position, gen_id in enumerate(self.order)}
        self._rules: dict[Pair, Form] = {}
        self._d_images: dict[int, Form] = {}

    def _id(self, item: int | str) -> int:
        return item if isinstance(item, int) else self.sig.gen_id(item)

    def _scalar(self, value: Scalar | int) -> Scalar:
        if isinstance(value, int):
            return Scalar.constant(self.sig.params, value)
        return value

    def commute(
        self,
        a: int | str,
        b: int | str,
        factor: Scalar | int = 1,
        extra: Form | None = None,
    ) -> PresentationBuilder:
        """Record the relation a*b = factor*b*a + extra.

        Args:
        ----
            a: The first generator.
            b: The second generator.
            factor: A monomial Scalar.
            extra: Lower-length correction terms (default 0).

        Returns:
        -------
            This builder.

        Raises:
        ------
            InvalidPresentationError: Raised when the relation cannot be oriented.

        """
        first, second = self._id(a), self._id(b)
        scalar = self._scalar(factor)
        correction = extra if extra is not None else Form.zero(self.sig)
        if first == second:
            one_minus = Scalar.one(self.sig.params) - scalar
            if not one_minus:
                if correction:
                    raise InvalidPresentationError(
                        f"{self.name}: {self.sig[first].name}^2 relation "
                        "is inconsistent"
                    )
                return self
            try:
                inverse = scalar_inverse(one_minus)
            except NotInvertibleError as err:
                raise InvalidPresentationError(
                    f"{self.name}: cannot solve for {self.sig[first].name}^2"
                ) from err
            self._rules[(first, first)] = correction.scale(inverse)
            return self
        if self._rank[first] > self._rank[second]:
            self._rules[(first, second)] = (
                Form.word(self.sig, (second, first), scalar) + correction
            )
            return self
        try:
            inverse = scalar_inverse(scalar)
        except NotInvertibleError as err:
            raise InvalidPresentationError(
                f"{self.name}: factor {scalar} is not invertible"
            ) from err
        self._rules[(second, first)] = (
            Form.word(self.sig, (first, second)) - correction
        ).scale(inverse)
        return self

    def annihilate(self, a: int | str, b: int | str) -> PresentationBuilder:
        """Record a*b = 0, replacing any earlier rule for that pair."""
        self._rules[(self._id(a), self._id(b))] = Form.zero(self.sig)
        return self

    def rule(self, a: int | str, b: int | str, right: Form) -> PresentationBuilder:
        """Record an explicit rule a*b -> right."""
        self._rules[(self._id(a), self._id(b))] = right
        return self

    def d_image(self, a: int | str, image: Form) -> PresentationBuilder:
        """Record d(a)."""
        self._d_images[self._id(a)] = image
        return self

    def build(self) -> RewriteSystem:
        """Return the finished system; d defaults to the free one without images."""
        return RewriteSystem(
            self.sig,
            self.order,
            self._rules,
            self._d_images or None,
            name=self.name,
        )
