"""Define tests for derivations, contractions and the Cartan identities."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from ncforms.cartan import (
    Derivation,
    apply,
    bracket,
    bracket_action_residual,
    cartan_residual,
    commute_d_residual,
    contract,
    contract_many,
    contraction_commute_residual,
    d_contract,
    euler_residual,
    exchange_residual,
    homotopy_formula_residual,
    jacobi_residual,
    leibniz_residual,
    skew_symmetry_residuals,
    y_prefix_residual,
)
from ncforms.expression import parse
from ncforms.freeforms import (
    Form,
    Generator,
    GeneratorKind,
    Signature,
    free_signature,
)
from ncforms.helpers.sampling import Sampler

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)
PARITIES = st.lists(st.integers(0, 1), min_size=2, max_size=2)


@pytest.fixture(name="square_field")
def square_field_fixture(free2: Signature) -> Derivation:
    """Define x1^2 d/dx1 over the even free signature.

    Args:
    ----
        free2: The even free signature on two points.

    """
    return Derivation.from_fields(free2, {"x1": parse("x1^2", free2)})


def test_apply(free2: Signature, square_field: Derivation) -> None:
    """Test the Lie derivative on points and differentials.

    Args:
    ----
        free2: The even free signature on two points.
        square_field: x1^2 d/dx1.

    """
    assert apply(square_field, parse("x1*x2", free2)) == parse("x1^2*x2", free2)
    assert apply(square_field, parse("y1", free2)) == parse("y1*x1 + x1*y1", free2)
    assert apply(square_field, parse("x2*y2", free2)).is_zero()


def test_contract(free2: Signature, square_field: Derivation) -> None:
    """Test the interior product, which is odd for an even field.

    Args:
    ----
        free2: The even free signature on two points.
        square_field: x1^2 d/dx1.

    """
    assert contract(square_field, parse("y1*x2", free2)) == parse("x1^2*x2", free2)
    assert contract(square_field, parse("y1*y1", free2)) == parse(
        "x1^2*y1 - y1*x1^2", free2
    )
    assert contract(square_field, parse("x1*x2", free2)).is_zero()


def test_contract_many_order(free2: Signature) -> None:
    """Test that the first derivation of the list contracts first.

    Args:
    ----
        free2: The even free signature on two points.

    """
    first = Derivation.from_fields(free2, {"x1": parse("x2", free2)})
    second = Derivation.from_fields(free2, {"x2": parse("x1", free2)})
    a = parse("y1*y2", free2)
    assert contract_many([first, second], a) == parse("x2*x1", free2)
    assert contract_many([second, first], a) == parse("-x2*x1", free2)


def test_d_contract(free2: Signature) -> None:
    """Test that d contracted into a Form counts its differentials.

    Args:
    ----
        free2: The even free signature on two points.

    """
    a = parse("x1*y1*y2 + y2 + x2", free2)
    assert d_contract(a) == parse("2*x1*y1*y2 + y2", free2)
    assert euler_residual(a).is_zero()


def test_bracket(free2: Signature, square_field: Derivation) -> None:
    """Test the commutator of two even fields.

    Args:
    ----
        free2: The even free signature on two points.
        square_field: x1^2 d/dx1.

    """
    shear = Derivation.from_fields(free2, {"x1": parse("x2", free2)})
    result = bracket(square_field, shear)
    assert result.parity == 0
    assert result.value(0) == parse("-x2*x1 - x1*x2", free2)
    assert result.value(1).is_zero()
    assert bracket(square_field, square_field).is_zero()


def test_exterior_derivation(free2: Signature) -> None:
    """Test that the exterior derivation is odd and sends x_i to y_i.

    Args:
    ----
        free2: The even free signature on two points.

    """
    exterior = Derivation.exterior(free2)
    assert exterior.parity == 1
    assert apply(exterior, parse("x1*x2", free2)) == parse("y1*x2 + x1*y2", free2)


def test_values_must_be_points(free2: Signature) -> None:
    """Test that a derivation cannot be keyed by a differential.

    Args:
    ----
        free2: The even free signature on two points.

    """
    with pytest.raises(ValueError) as err:
        Derivation(free2, {2: Form.one(free2)})
    assert str(err.value) == "Derivations are determined by points, got id 2"


def test_cartan_needs_derivations(free2: Signature) -> None:
    """Test that the Cartan residual needs a nonempty list.

    Args:
    ----
        free2: The even free signature on two points.

    """
    with pytest.raises(ValueError) as err:
        cartan_residual([], parse("x1", free2))
    assert str(err.value) == "At least one derivation is required"


def test_skew_symmetry_needs_even() -> None:
    """Test that total skew-symmetry is refused for odd derivations."""
    sig = free_signature(1)
    odd = Derivation(sig, {0: Form.one(sig)}, 1)
    with pytest.raises(ValueError) as err:
        skew_symmetry_residuals([odd], parse("y1", sig))
    assert str(err.value) == "Total skew-symmetry needs even derivations"


def test_leibniz_needs_homogeneous() -> None:
    """Test that the Leibniz check needs a parity-homogeneous left factor."""
    sig = free_signature(2, parities=[1, 0])
    field = Derivation.from_fields(sig, {"x2": parse("x2", sig)})
    with pytest.raises(ValueError) as err:
        leibniz_residual(field, parse("x1 + x2", sig), parse("x1", sig))
    assert str(err.value) == "x1 + x2 is not parity-homogeneous"


def test_y_prefix() -> None:
    """Test contracting two fields into a word that starts with y1."""
    sig = free_signature(1)
    field = Derivation.from_fields(sig, {"x1": parse("x1", sig)})
    assert y_prefix_residual([field, field], 0, parse("y1*x1", sig)).is_zero()
    plain = Signature((Generator("a", GeneratorKind.POINT),))
    with pytest.raises(ValueError) as err:
        y_prefix_residual([], 0, Form.word(plain, (0,)))
    assert str(err.value) == "a has no differential"


@settings(max_examples=30, deadline=None)
@given(SEEDS)
def test_even_identities(seed: int) -> None:
    """Test the ungraded contraction identities on random data.

    Args:
    ----
        seed: The sampler seed.

    """
    sampler = Sampler(seed, max_degree=3)
    sig = free_signature(2)
    zs = [sampler.derivation(sig) for _ in range(sampler.rng.randint(1, 3))]
    x, z = sampler.derivation(sig), sampler.derivation(sig)
    a = sampler.form(sig)
    assert cartan_residual(zs, a).is_zero()
    assert exchange_residual(x, zs, a).is_zero()
    assert contraction_commute_residual(x, z, a).is_zero()
    assert not any(skew_symmetry_residuals(zs, a))
    assert y_prefix_residual(zs, 1, a).is_zero()


@settings(max_examples=30, deadline=None)
@given(SEEDS, PARITIES, st.integers(0, 1), st.integers(0, 1))
def test_graded_identities(
    seed: int, parities: list[int], x_parity: int, z_parity: int
) -> None:
    """Test the graded contraction and Lie-derivative identities.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.
        x_parity: The parity of the acting derivation.
        z_parity: The parity of the contracting derivation.

    """
    sampler = Sampler(seed, max_degree=3)
    sig = free_signature(2, parities=parities)
    x = sampler.derivation(sig, x_parity)
    z = sampler.derivation(sig, z_parity)
    y = sampler.derivation(sig, sampler.rng.randint(0, 1))
    a = sampler.form(sig)
    assert cartan_residual([z, x], a).is_zero()
    assert exchange_residual(x, [z], a).is_zero()
    assert contraction_commute_residual(x, z, a).is_zero()
    assert jacobi_residual(x, y, z).is_zero()
    assert bracket_action_residual(x, z, a).is_zero()
    assert commute_d_residual(x, a).is_zero()
    assert homotopy_formula_residual(x, a).is_zero()


@settings(max_examples=30, deadline=None)
@given(SEEDS, st.booleans())
def test_leibniz(seed: int, contraction: bool) -> None:
    """Test the Leibniz rule for X and for its interior product.

    Args:
    ----
        seed: The sampler seed.
        contraction: Whether to check the interior product.

    """
    sampler = Sampler(seed, max_degree=3)
    sig = free_signature(2)
    x = sampler.derivation(sig)
    left = sampler.parity_form(sig, sampler.rng.randint(0, 1), letters=range(len(sig)))
    right = sampler.form(sig)
    if left:
        assert leibniz_residual(x, left, right, contraction=contraction).is_zero()


@settings(max_examples=20, deadline=None)
@given(SEEDS, PARITIES, st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_four_contractions(
    seed: int, parities: list[int], z_parities: list[int]
) -> None:
    """Test the Cartan formula and the exchange rule with four derivations.

    Args:
    ----
        seed: The sampler seed.
        parities: The gradings of x1, x2.
        z_parities: The parities of the contracting derivations.

    """
    sampler = Sampler(seed, max_degree=3)
    sig = free_signature(2)
    zs = [sampler.derivation(sig) for _ in range(4)]
    x = sampler.derivation(sig)
    a = sampler.form(sig)
    assert cartan_residual(zs, a).is_zero()
    assert exchange_residual(x, zs, a).is_zero()
    assert not any(skew_symmetry_residuals(zs, a))
    assert y_prefix_residual(zs, 1, a).is_zero()

    graded = free_signature(2, parities=parities)
    zs = [sampler.derivation(graded, parity) for parity in z_parities]
    x = sampler.derivation(graded, sampler.rng.randint(0, 1))
    a = sampler.form(graded)
    assert cartan_residual(zs, a).is_zero()
    assert exchange_residual(x, zs, a).is_zero()
