"""Define tests for the free bigraded algebra."""

from __future__ import annotations

import pytest

from ncforms.errors import SignatureMismatchError
from ncforms.expression import parse
from ncforms.freeforms import (
    Form,
    Signature,
    bigrade,
    free_signature,
    graded_involution,
    parity_of,
    relabel,
    substitute,
    ydegree_components,
)


def test_signature_layout(free2: Signature) -> None:
    """Test generator ids, partners and the dx alias.

    Args:
    ----
        free2: The even free signature on two points.

    """
    assert [gen.name for gen in free2.generators] == ["x1", "x2", "y1", "y2"]
    assert free2.points == (0, 1)
    assert free2.differentials == (2, 3)
    assert free2[0].partner == 2
    assert Form.generator(free2, "dx1") == Form.generator(free2, "y1")


def test_parities() -> None:
    """Test that a y-letter carries the opposite parity of its point."""
    sig = free_signature(2, parities=[1, 0])
    assert sig.parities == (1, 0, 0, 1)
    with pytest.raises(ValueError) as err:
        free_signature(2, parities=[1])
    assert str(err.value) == "Expected 2 parities, got 1"


def test_canonical_text(free2: Signature) -> None:
    """Test that longer words print first and runs collapse to powers.

    Args:
    ----
        free2: The even free signature on two points.

    """
    assert parse("x1*y2 + 3*x1^2", free2).to_text() == "3*x1^2 + x1*y2"
    assert parse("x1*x1*x2 - x2", free2).to_text() == "x1^2*x2 - x2"
    assert parse("h*x1 - h^2/2", free2).to_text() == "h*x1 - 1/2*h^2"
    assert Form.zero(free2).to_text() == "0"


def test_noncommutative_product(free2: Signature) -> None:
    """Test that multiplication concatenates words without reordering.

    Args:
    ----
        free2: The even free signature on two points.

    """
    x1, x2 = Form.generator(free2, "x1"), Form.generator(free2, "x2")
    assert x1 * x2 != x2 * x1
    assert (x1 + x2) ** 2 == x1 * x1 + x1 * x2 + x2 * x1 + x2 * x2
    assert (x1 * x2 - x1 * x2).is_zero()


def test_bigrade(free2: Signature) -> None:
    """Test splitting a Form by (x-degree, y-degree).

    Args:
    ----
        free2: The even free signature on two points.

    """
    a = parse("x1*y1 + x2 + 5 + y1*y2*x1", free2)
    parts = bigrade(a)
    assert set(parts) == {(1, 1), (1, 0), (0, 0), (1, 2)}
    assert parts[(1, 2)] == parse("y1*y2*x1", free2)
    assert ydegree_components(a)[0] == parse("x2 + 5", free2)


def test_parity_and_involution() -> None:
    """Test word parities and the graded involution."""
    sig = free_signature(2, parities=[1, 0])
    assert parity_of(parse("x1*x2", sig)) == 1
    assert parity_of(parse("x1*x1 + y1", sig)) == 0
    assert parity_of(parse("x1 + x2", sig)) is None
    assert graded_involution(parse("x1 + x2", sig)) == parse("x2 - x1", sig)


def test_signature_mismatch() -> None:
    """Test that Forms over different signatures do not mix."""
    with pytest.raises(SignatureMismatchError) as err:
        _ = Form.one(free_signature(1)) + Form.one(free_signature(2))
    assert str(err.value) == "Forms are over different signatures"


def test_relabel_and_substitute(free2: Signature) -> None:
    """Test renaming letters and applying a homomorphism.

    Args:
    ----
        free2: The even free signature on two points.

    """
    a = parse("x1*y2 + 2*x2", free2)
    assert relabel(a, [1, 0, 3, 2]) == parse("x2*y1 + 2*x1", free2)
    images = [
        parse("x1 + x2", free2),
        parse("x2", free2),
        Form.zero(free2),
        parse("y2", free2),
    ]
    assert substitute(a, images) == parse("x1*y2 + x2*y2 + 2*x2", free2)


def test_coefficient_lookup(free2: Signature) -> None:
    """Test reading coefficients and the scalar part.

    Args:
    ----
        free2: The even free signature on two points.

    """
    a = parse("3*x1*x2 - h", free2)
    assert a.coefficient((0, 1)) == 3
    assert a.coefficient((1, 0)).is_zero()
    assert a.scalar_part().to_text() == "-h"
    assert len(a) == 2
