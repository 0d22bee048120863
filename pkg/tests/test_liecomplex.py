"""Define tests for the Lie-algebra complexes and the difference calculus."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
import sympy

from ncforms.errors import InvalidPresentationError, NotClosedError
from ncforms.liecomplex import (
    X_SYMBOL,
    Subalgebra,
    antidifference,
    cartan_involution_check,
    complex_preset,
    discrete_d,
    discrete_poincare,
    discrete_system,
    ehrenfest_complex,
    ghostless_rank,
    gl_complex,
    sl2_ghostless_check,
    so_complex,
)
from ncforms.rewrite import check_d_compatibility

if TYPE_CHECKING:
    from collections.abc import Callable


@pytest.mark.parametrize("name", ["aff1", "gl2-left", "gl2-right", "so3"])
def test_preset_audits(name: str) -> None:
    """Test that the small shipped complexes pass every audit.

    Args:
    ----
        name: The complex preset.

    """
    presentation = complex_preset(name)
    assert presentation.audit().ok


def test_general_complex() -> None:
    """Test the ghost complex on U(sl2)."""
    presentation = complex_preset("general-sl2")
    assert presentation.name == "ghost complex(sl2)"
    assert check_d_compatibility(presentation.system).ok
    e1 = presentation.element("e1")
    assert presentation.d(presentation.d(e1)).is_zero()
    assert presentation.to_dict()["lie_data"]["dim"] == 3


def test_aff1_relations() -> None:
    """Test [e1, e2] = e2 and the matching rule for the differentials."""
    aff1 = complex_preset("aff1")
    assert aff1.element("e2*e1").to_text() == "e1*e2 - e2"
    assert aff1.d(aff1.element("e1*e2")) == aff1.element("de1*e2 + e1*de2")


def test_gl_subalgebra_names() -> None:
    """Test the names and sizes of the triangular gl complexes."""
    upper = gl_complex(2, "left", "upper")
    assert upper.name == "gl(2,left,upper)"
    assert len(upper.sig) == 6
    assert Subalgebra.UPPER.transposed is Subalgebra.LOWER
    assert Subalgebra.FULL.transposed is Subalgebra.FULL


@pytest.mark.parametrize("subalgebra", ["full", "upper", "upper-nilpotent"])
def test_cartan_involution(subalgebra: str) -> None:
    """Test that minus the transpose maps the left rules onto the right ones.

    Args:
    ----
        subalgebra: The subalgebra of the left complex.

    """
    assert cartan_involution_check(2, subalgebra).ok


def test_ehrenfest() -> None:
    """Test a two-by-two Ehrenfest complex."""
    presentation = ehrenfest_complex([[1, 2], [0, -1]])
    assert presentation.name == "ehrenfest(2)"
    assert check_d_compatibility(presentation.system).ok


@pytest.mark.parametrize(
    ("builder", "message"),
    [
        (lambda: gl_complex(1), "gl complexes need n >= 2"),
        (lambda: gl_complex(2, "up"), "Unknown gl variant: up"),
        (lambda: so_complex(2), "so complexes need n >= 3"),
        (lambda: discrete_system(3), "Unknown discrete variant: 3"),
        (
            lambda: discrete_d(discrete_system(1).element("dx")),
            "dx is not a 0-form",
        ),
        (
            lambda: discrete_poincare(discrete_system(1).element("x")),
            "x is not a 1-form",
        ),
    ],
)
def test_bad_arguments(builder: Callable[[], object], message: str) -> None:
    """Test the argument checks of the complex builders.

    Args:
    ----
        builder: A call that should fail.
        message: The expected error message.

    """
    with pytest.raises(ValueError) as err:
        builder()
    assert str(err.value) == message


def test_ehrenfest_not_square() -> None:
    """Test that the Ehrenfest matrix must be square."""
    with pytest.raises(InvalidPresentationError) as err:
        ehrenfest_complex([[1, 2]])
    assert str(err.value) == "The Ehrenfest matrix must be square"


def test_unknown_complex() -> None:
    """Test unknown and invalid preset names."""
    with pytest.raises(InvalidPresentationError) as err:
        complex_preset("nope")
    assert str(err.value) == "Unknown complex preset: 'nope'"
    with pytest.raises(InvalidPresentationError) as err:
        complex_preset("gl1-left")
    assert str(err.value) == (
        "Unknown complex preset 'gl1-left': gl complexes need n >= 2"
    )


def test_discrete_d() -> None:
    """Test the mixed differential dy f_y + dx (f(x+1) - f(x))."""
    system = discrete_system(1)
    assert discrete_d(system.element("x^2")).to_text() == "2*dx*x + dx"
    assert discrete_d(system.element("y*x")).to_text() == "dy*x + dx*y"
    backward = discrete_system(2)
    assert discrete_d(backward.element("x^2"), 2).to_text() == "2*dx*x - dx"


def test_discrete_primitive() -> None:
    """Test the primitive of a closed discrete 1-form."""
    system = discrete_system(1)
    omega = system.element("dy*x^2 + 2*dx*y*x + dx*y")
    primitive = discrete_poincare(omega)
    assert primitive.to_text() == "y*x^2"
    assert discrete_d(primitive).to_text() == omega.to_text()


def test_discrete_not_closed() -> None:
    """Test that a non-closed discrete 1-form has no primitive."""
    system = discrete_system(1)
    with pytest.raises(NotClosedError) as err:
        discrete_poincare(system.element("dx*y"))
    assert str(err.value) == "dx*y is not closed for the discrete differential"


@pytest.mark.parametrize(
    ("variant", "expected"),
    [(1, X_SYMBOL**2 / 2 - X_SYMBOL / 2), (2, X_SYMBOL**2 / 2 + X_SYMBOL / 2)],
)
def test_antidifference(variant: int, expected: sympy.Expr) -> None:
    """Test the antidifference of g(x) = x.

    Args:
    ----
        variant: 1 (forward) or 2 (backward).
        expected: The primitive with value 0 at x = 0.

    """
    assert sympy.expand(antidifference(X_SYMBOL, variant) - expected) == 0


def test_sl2_ghostless() -> None:
    """Test that sl(2) admits no complex without ghosts."""
    verdict = sl2_ghostless_check()
    assert verdict.determinant == 0
    assert not verdict.exists
    assert ghostless_rank({"lam": 1, "mu": 1, "nu": 1}) == 2
    assert ghostless_rank({"lam": 0, "mu": 0, "nu": 0}) == 0
