"""Define tests for the differential, A_t and the homotopy operator."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from ncforms.calculus import (
    ExtendedForm,
    a_t,
    a_t_commute_residual,
    bidegree_residual,
    check_at_compatibility,
    differential,
    ext_differential,
    ext_mul,
    graded_leibniz_residual,
    homotopy_check,
    homotopy_i,
    poincare_primitive,
    transfer_primitive,
)
from ncforms.errors import IncompatibleRelationsError, NotClosedError
from ncforms.expression import parse
from ncforms.freeforms import (
    Form,
    Generator,
    GeneratorKind,
    Signature,
    free_signature,
)
from ncforms.helpers.sampling import Sampler
from ncforms.qspace import QMatrix, q_algebra
from ncforms.rewrite import RewriteSystem
from ncforms.scalars import ParamTable

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)
PARITIES = st.lists(st.integers(0, 1), min_size=2, max_size=2)


def test_free_differential(free2: Signature) -> None:
    """Test d on points, differentials and products.

    Args:
    ----
        free2: The even free signature on two points.

    """
    assert differential(parse("x1*x2", free2)) == parse("y1*x2 + x1*y2", free2)
    assert differential(parse("y1", free2)).is_zero()
    assert differential(parse("3*h", free2)).is_zero()


def test_a_t_of_one_form(free2: Signature) -> None:
    """Test that A_t keeps at most one tau per word.

    Args:
    ----
        free2: The even free signature on two points.

    """
    image = a_t(parse("x1*y1", free2))
    assert image.plus == {2: parse("x1*y1", free2)}
    assert image.minus == {1: parse("x1^2", free2)}
    assert homotopy_i(image) == parse("1/2*x1^2", free2)


def test_extended_text(free2: Signature) -> None:
    """Test the printed shape of an ExtendedForm.

    Args:
    ----
        free2: The even free signature on two points.

    """
    value = ExtendedForm.from_parts(
        free2, {2: parse("x1", free2)}, {0: parse("x2", free2)}
    )
    assert value.to_text() == "t^2*(x1) + tau*(x2)"
    assert ExtendedForm.from_parts(free2).to_text() == "0"


def test_tau_squares_to_zero(free2: Signature) -> None:
    """Test that tau * tau vanishes in the augmented algebra.

    Args:
    ----
        free2: The even free signature on two points.

    """
    left = ExtendedForm.tau(parse("x1", free2))
    right = ExtendedForm.tau(parse("x2", free2), 1)
    assert ext_mul(left, right).is_zero()


def test_d_of_t(free2: Signature) -> None:
    """Test that d(t^m v) produces m t^(m-1) tau v.

    Args:
    ----
        free2: The even free signature on two points.

    """
    x1 = parse("x1", free2)
    result = ext_differential(ExtendedForm.embed(x1, 3))
    assert result.plus == {3: parse("y1", free2)}
    assert result.minus == {2: x1.scale(3)}


def test_primitive_of_exact_form(free2: Signature) -> None:
    """Test the primitive of d(x1 x2).

    Args:
    ----
        free2: The even free signature on two points.

    """
    primitive, remainder = poincare_primitive(parse("y1*x2 + x1*y2", free2))
    assert primitive == parse("x1*x2", free2)
    assert remainder.is_zero()


def test_scalar_remainder(free2: Signature) -> None:
    """Test that the (0,0) part is returned as the remainder.

    Args:
    ----
        free2: The even free signature on two points.

    """
    a = parse("3 + y1", free2)
    primitive, remainder = poincare_primitive(a)
    assert primitive == parse("x1", free2)
    assert remainder == 3
    assert differential(primitive) + remainder == a


def test_not_closed(free2: Signature) -> None:
    """Test that a primitive of a non-closed Form is refused.

    Args:
    ----
        free2: The even free signature on two points.

    """
    with pytest.raises(NotClosedError) as err:
        poincare_primitive(parse("x1", free2))
    assert str(err.value) == "d(x1) = y1 is not zero"


def test_at_compatibility(weyl1: RewriteSystem) -> None:
    """Test that Q-space relations are A_t-stable and Weyl relations are not.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    assert check_at_compatibility(q_algebra(QMatrix.symbolic(2))).ok
    report = check_at_compatibility(weyl1)
    assert not report.ok
    with pytest.raises(IncompatibleRelationsError) as err:
        poincare_primitive(weyl1.element("d(q1*p1)"), weyl1)
    assert str(err.value).startswith("weyl(1) relations are not A_t-stable")


def test_transfer_primitive(weyl1: RewriteSystem) -> None:
    """Test the primitive through the classical symbols of a Weyl algebra.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    a = weyl1.element("d(p1*q1)")
    primitive, remainder = transfer_primitive(a, weyl1)
    assert primitive.to_text() == "q1*p1"
    assert remainder.is_zero()
    assert weyl1.differential(primitive) == a


def test_homotopy_over_system(weyl1: RewriteSystem) -> None:
    """Test the homotopy formula with a system's differential.

    Args:
    ----
        weyl1: The Weyl algebra on one pair.

    """
    value = ExtendedForm.from_parts(
        weyl1.sig,
        {2: weyl1.element("p1*q1*dp1")},
        {1: weyl1.element("q1*dq1")},
    )
    assert homotopy_check(value, weyl1).is_zero()


@settings(max_examples=40, deadline=None)
@given(SEEDS, PARITIES)
def test_d_squared(seed: int, parities: list[int]) -> None:
    """Test d^2 = 0 on random graded Forms.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.

    """
    sig = free_signature(2, parities=parities, params=ParamTable.of("h"))
    a = Sampler(seed).form(sig)
    assert differential(differential(a)).is_zero()


@settings(max_examples=40, deadline=None)
@given(SEEDS, PARITIES)
def test_homotopy_formula(seed: int, parities: list[int]) -> None:
    """Test dI + Id = a(1) - a(0) on random ExtendedForms.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.

    """
    sig = free_signature(2, parities=parities)
    assert homotopy_check(Sampler(seed).extended_form(sig)).is_zero()


@settings(max_examples=40, deadline=None)
@given(SEEDS, PARITIES)
def test_poincare_round_trip(seed: int, parities: list[int]) -> None:
    """Test d(primitive(d nu)) = d nu on random Forms.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.

    """
    sig = free_signature(2, parities=parities)
    boundary = differential(Sampler(seed).form(sig, max_degree=3))
    primitive, remainder = poincare_primitive(boundary)
    assert remainder.is_zero()
    assert differential(primitive) == boundary


def test_form_equality_with_scalar(free2: Signature) -> None:
    """Test comparing a Form with an int.

    Args:
    ----
        free2: The even free signature on two points.

    """
    assert Form.scalar(free2, 2) == 2
    assert Form.one(free2) - 1 == 0


@settings(max_examples=40, deadline=None)
@given(SEEDS, PARITIES)
def test_a_t_commutes_with_d(seed: int, parities: list[int]) -> None:
    """Test A_t(d a) = d(A_t a) on random graded Forms.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.

    """
    sig = free_signature(2, parities=parities, params=ParamTable.of("h"))
    assert a_t_commute_residual(Sampler(seed).form(sig)).is_zero()


@settings(max_examples=30, deadline=None)
@given(SEEDS)
def test_a_t_commutes_with_d_over_q_space(seed: int) -> None:
    """Test A_t(d a) = d(A_t a) modulo the relations of a Q-space.

    Args:
    ----
        seed: The sampler seed.

    """
    system = q_algebra(QMatrix.symbolic(2))
    a = system.normalize(Sampler(seed).form(system.sig, max_degree=3))
    assert a_t_commute_residual(a, system).is_zero()


@settings(max_examples=40, deadline=None)
@given(SEEDS, PARITIES, st.integers(0, 1))
def test_graded_leibniz(seed: int, parities: list[int], parity: int) -> None:
    """Test d(ab) = d(a) b + (-1)^p(a) a d(b) on random graded Forms.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.
        parity: The parity of the left factor.

    """
    sig = free_signature(2, parities=parities, params=ParamTable.of("h"))
    sampler = Sampler(seed)
    left = sampler.parity_form(sig, parity, letters=range(len(sig)))
    assert graded_leibniz_residual(left, sampler.form(sig)).is_zero()


def test_graded_leibniz_sign() -> None:
    """Test the sign picked up by d passing an odd point."""
    sig = free_signature(2, parities=[1, 0])
    x1, x2 = parse("x1", sig), parse("x2", sig)
    assert differential(parse("x1*x2", sig)) == parse("y1*x2 - x1*y2", sig)
    assert graded_leibniz_residual(x1, x2).is_zero()
    assert graded_leibniz_residual(Form.zero(sig), x2).is_zero()


def test_graded_leibniz_needs_single_parity(free2: Signature) -> None:
    """Test that a left factor of mixed parity is refused.

    Args:
    ----
        free2: The even free signature on two points.

    """
    mixed = parse("x1 + y1", free2)
    with pytest.raises(ValueError) as err:
        graded_leibniz_residual(mixed, parse("x2", free2))
    assert str(err.value) == f"The left factor must have a single parity, got {mixed}"


@settings(max_examples=40, deadline=None)
@given(SEEDS, PARITIES)
def test_bidegree_of_d(seed: int, parities: list[int]) -> None:
    """Test that d lowers the x-degree by one and raises the y-degree by one.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.

    """
    sig = free_signature(2, parities=parities)
    assert bidegree_residual(Sampler(seed).form(sig)).is_zero()


def test_a_t_needs_point_partner() -> None:
    """Test that A_t refuses a differential letter without a point partner."""
    sig = Signature(
        (
            Generator("a", GeneratorKind.POINT),
            Generator("da", GeneratorKind.DIFFERENTIAL, parity=1, ydeg=1),
        )
    )
    with pytest.raises(IncompatibleRelationsError) as err:
        a_t(Form.word(sig, (1,)))
    assert str(err.value) == "A_t is undefined on da: it has no point partner"
