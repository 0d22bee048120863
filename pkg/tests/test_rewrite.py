"""Define tests for the adjacent-pair rewrite engine."""

from __future__ import annotations

from typing import Any

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from ncforms.errors import AuditFailureError, InvalidPresentationError, raise_on_report
from ncforms.expression import parse
from ncforms.freeforms import Form, Generator, GeneratorKind, Signature, free_signature
from ncforms.helpers.sampling import Sampler
from ncforms.liecomplex import complex_preset
from ncforms.qspace import QMatrix, q_algebra
from ncforms.quantum import canonical_algebra, weyl_algebra
from ncforms.report import AuditEntry
from ncforms.scalars import ParamTable, Scalar
from ncforms.rewrite import (
    PresentationBuilder,
    RewriteSystem,
    Strategy,
    audit,
    check_completeness,
    check_d_compatibility,
    check_local_confluence,
    product_residual,
)

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)
SYSTEMS = (
    weyl_algebra(1),
    q_algebra(QMatrix.symbolic(2)),
    complex_preset("aff1").system,
)


@pytest.fixture(name="two_points")
def two_points_fixture() -> Signature:
    """Define a signature with two plain points a, b."""
    return Signature(
        (Generator("a", GeneratorKind.POINT), Generator("b", GeneratorKind.POINT))
    )


def test_weyl_normal_order(weyl1: RewriteSystem) -> None:
    """Test normal ordering in the Weyl algebra.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    assert weyl1.element("p1*q1").to_text() == "q1*p1 + h"
    assert weyl1.element("p1*p1*q1") == weyl1.element("q1*p1^2 + 2*h*p1")
    assert weyl1.element("dp1*dq1") == weyl1.element("-dq1*dp1")
    assert weyl1.element("dq1*dq1").is_zero()


def test_differential(weyl1: RewriteSystem) -> None:
    """Test d over the Weyl algebra.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    assert weyl1.element("d(q1*p1)").to_text() == "dq1*p1 + dp1*q1"
    assert weyl1.differential(weyl1.element("d(p1*q1)")).is_zero()


def test_strategies_agree(weyl1: RewriteSystem) -> None:
    """Test that both rewriting strategies reach the same normal form.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    a = parse("p1*p1*q1*dp1*q1", weyl1.sig)
    leftmost = weyl1.normalize(a, Strategy.LEFTMOST)
    assert leftmost == weyl1.normalize(a, Strategy.RIGHTMOST)
    assert weyl1.normalize(leftmost) == leftmost


def test_shipped_audit(weyl1: RewriteSystem) -> None:
    """Test that the Weyl algebra passes every audit.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    report = audit(weyl1)
    assert report.ok
    assert report.name == "weyl(1): audit"
    assert report.checked > 0


def test_broken_confluence(broken_system_data: dict[str, Any]) -> None:
    """Test that a non-confluent overlap is reported with its word.

    Args:
    ----
        broken_system_data: A presentation with a bad overlap.

    """
    system = RewriteSystem.from_dict(broken_system_data)
    report = check_local_confluence(system)
    assert report.entries == (AuditEntry("confluence", "b*a^2", "2*a"),)
    assert audit(system).entries == report.entries
    with pytest.raises(AuditFailureError) as err:
        raise_on_report(report)
    assert str(err.value) == (
        "broken: local confluence: 1 failing check(s); first: confluence on "
        "b*a^2 -> 2*a"
    )


def test_confluence_degree(weyl1: RewriteSystem) -> None:
    """Test the lower bound on the overlap length.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    with pytest.raises(ValueError) as err:
        check_local_confluence(weyl1, 2)
    assert str(err.value) == "max_degree must be at least 3"


def test_missing_rule(two_points: Signature) -> None:
    """Test that an out-of-order pair without a rule is reported.

    Args:
    ----
        two_points: A signature with points a, b.

    """
    system = RewriteSystem(two_points, [0, 1], {})
    report = check_completeness(system)
    assert [entry.word for entry in report.entries] == ["b*a"]


def test_d_incompatible(two_points: Signature) -> None:
    """Test that a relation d does not respect is flagged.

    Args:
    ----
        two_points: A signature with points a, b.

    """
    system = RewriteSystem(
        two_points,
        [0, 1],
        {(1, 0): Form.zero(two_points)},
        {0: Form.zero(two_points), 1: Form.generator(two_points, "a")},
    )
    report = check_d_compatibility(system)
    kinds = [entry.kind for entry in report.entries]
    assert "degree" in kinds
    assert "d-relation" in kinds
    assert "missing-rule" in kinds


def test_non_decreasing_rule(two_points: Signature) -> None:
    """Test that a rule which could loop is rejected.

    Args:
    ----
        two_points: A signature with points a, b.

    """
    with pytest.raises(InvalidPresentationError) as err:
        RewriteSystem(two_points, [0, 1], {(0, 1): parse("b*a", two_points)})
    assert str(err.value) == (
        "system: rule a*b -> b*a does not decrease the termination measure"
    )


def test_bad_order(two_points: Signature) -> None:
    """Test that the order must be a permutation.

    Args:
    ----
        two_points: A signature with points a, b.

    """
    with pytest.raises(InvalidPresentationError) as err:
        RewriteSystem(two_points, [0, 0], {})
    assert str(err.value) == "system: order must list every generator once"


def test_malformed_presentation(broken_system_data: dict[str, Any]) -> None:
    """Test that a rule naming an unknown generator is rejected.

    Args:
    ----
        broken_system_data: A presentation with a bad overlap.

    """
    data = {**broken_system_data, "rules": [{"left": ["z", "a"], "right": "0"}]}
    with pytest.raises(InvalidPresentationError) as err:
        RewriteSystem.from_dict(data)
    assert str(err.value) == "Malformed presentation: 'z'"


def test_dict_round_trip(weyl1: RewriteSystem) -> None:
    """Test that a presentation survives its JSON shape.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    system = RewriteSystem.from_dict(weyl1.to_dict())
    assert system.name == "weyl(1)"
    assert system.element("p1*q1").to_text() == "q1*p1 + h"
    assert system.element("d(q1)").to_text() == "dq1"
    assert system.sig[2].partner == 0


def test_symbol_system(weyl1: RewriteSystem) -> None:
    """Test the graded-commutative algebra of classical symbols.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    symbols = weyl1.symbol_system()
    assert symbols is weyl1.symbol_system()
    assert symbols.name == "weyl(1) (symbols)"
    assert symbols.element("p1*q1").to_text() == "q1*p1"
    assert symbols.element("dp1*dq1") == symbols.element("-dq1*dp1")
    assert symbols.element("dp1*dp1").is_zero()


def test_canonical_algebra() -> None:
    """Test a custom constant [u, v] = 2h."""
    system = canonical_algebra(["u", "v"], {("u", "v"): 2})
    assert system.element("v*u").to_text() == "u*v - 2*h"
    assert audit(system).ok


def test_builder_square_rule(two_points: Signature) -> None:
    """Test solving a*a = -a*a + b for a^2.

    Args:
    ----
        two_points: A signature with points a, b.

    """
    builder = PresentationBuilder(two_points, ["a", "b"], "square")
    system = builder.commute("a", "a", -1, parse("b", two_points)).build()
    assert system.element("a*a") == parse("1/2*b", two_points)
    with pytest.raises(InvalidPresentationError) as err:
        builder.commute("b", "b", 1, parse("a", two_points))
    assert str(err.value) == "square: b^2 relation is inconsistent"


@settings(max_examples=30, deadline=None)
@given(SEEDS, st.sampled_from(SYSTEMS))
def test_normalize_respects_products(seed: int, system: RewriteSystem) -> None:
    """Test normalize(ab) = normalize(normalize(a) normalize(b)).

    Args:
    ----
        seed: The sampler seed.
        system: A shipped rewrite system.

    """
    sampler = Sampler(seed, max_degree=3)
    a, b = sampler.form(system.sig), sampler.form(system.sig)
    assert product_residual(system, a, b).is_zero()


def test_normal_words(weyl1: RewriteSystem) -> None:
    """Test the enumeration of normal words, shortest first.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    words = list(weyl1.normal_words(2))
    assert len(words) == 13
    assert words[0] == ()
    assert all(weyl1.is_normal(word) for word in words)
    assert [len(word) for word in words] == sorted(len(word) for word in words)
    assert weyl1.sig.word_text(words[-1]) == "p1^2"


def test_builder_needs_invertible_factors() -> None:
    """Test relations whose factor cannot be inverted."""
    params = ParamTable.of("h")
    sig = Signature(
        (Generator("a", GeneratorKind.POINT), Generator("b", GeneratorKind.POINT)),
        params,
    )
    builder = PresentationBuilder(sig, ["a", "b"], "square")
    factor = Scalar.parameter(params, "h") + 1
    with pytest.raises(InvalidPresentationError) as err:
        builder.commute("a", "b", factor)
    assert str(err.value) == f"square: factor {factor} is not invertible"
    with pytest.raises(InvalidPresentationError) as err:
        builder.commute("a", "a", Scalar.parameter(params, "h"))
    assert str(err.value) == "square: cannot solve for a^2"


def test_foreign_rule(two_points: Signature) -> None:
    """Test that a rule must live over the system's own signature.

    Args:
    ----
        two_points: A signature with points a, b.

    """
    other = free_signature(1)
    with pytest.raises(InvalidPresentationError) as err:
        RewriteSystem(two_points, [0, 1], {(1, 0): parse("x1", other)})
    assert str(err.value) == "system: rule over a foreign signature"
