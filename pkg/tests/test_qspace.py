"""Define tests for Q-quantum spaces and their group-indexed variant."""

from __future__ import annotations

from typing import Any

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from ncforms.errors import InconsistentQFamilyError, InvalidQMatrixError
from ncforms.helpers.sampling import Sampler
from ncforms.qspace import (
    GroupIndex,
    GroupQFamily,
    GroupQSystem,
    QMatrix,
    QRewriteSystem,
    act,
    action_a_t_residual,
    action_homotopy_residual,
    decomposition_residual,
    equivalent,
    equivariant_primitive,
    group_algebra,
    ideal_residual,
    q_algebra,
    q_d_check,
    q_partial,
    q_partials_commute_residual,
    qspace_from_dict,
)

SEEDS = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture(name="q2")
def q2_fixture() -> QRewriteSystem:
    """Define the Q-space on two symbolic variables."""
    return q_algebra(QMatrix.symbolic(2))


@pytest.fixture(name="z2_space")
def z2_space_fixture() -> GroupQSystem:
    """Define the Z2-indexed Q-space on two variables."""
    return group_algebra(QMatrix.symbolic(2), GroupIndex((2,)))


def test_q_relations(q2: QRewriteSystem) -> None:
    """Test the commutation rules and d on a product.

    Args:
    ----
        q2: The Q-space on two symbolic variables.

    """
    assert q2.name == "qspace(2)"
    assert q2.element("x2*x1").to_text() == "Q[1,2]^-1*x1*x2"
    assert q2.element("d(x1*x2)").to_text() == "dx1*x2 + Q[1,2]*dx2*x1"
    assert q2.element("y1") == q2.element("dx1")
    assert q2.element("dx1*dx1").is_zero()


def test_q_partial(q2: QRewriteSystem) -> None:
    """Test the Q-partials of x1 x2.

    Args:
    ----
        q2: The Q-space on two symbolic variables.

    """
    a = q2.element("x1*x2")
    assert q_partial(a, 2, q2).to_text() == "Q[1,2]*x1"
    assert q_partial(a, 1, q2).to_text() == "x2"
    assert q_d_check(a, q2).is_zero()


def test_q_partial_needs_zero_form(q2: QRewriteSystem) -> None:
    """Test that Q-partials reject differentials.

    Args:
    ----
        q2: The Q-space on two symbolic variables.

    """
    with pytest.raises(ValueError) as err:
        q_partial(q2.element("dx1"), 1, q2)
    assert str(err.value) == "Q-partials are defined on 0-forms, got dx1"


@settings(max_examples=30, deadline=None)
@given(SEEDS)
def test_q_partial_identities(seed: int) -> None:
    """Test d = sum dx_k d/dx_k and the Q-commutation of partials.

    Args:
    ----
        seed: The sampler seed.

    """
    system = q_algebra(QMatrix.symbolic(3))
    sampler = Sampler(seed, max_degree=3)
    points = [system.sig.gen_id(f"x{i}") for i in (1, 2, 3)]
    a = sampler.form(system.sig, letters=points)
    assert q_d_check(a, system).is_zero()
    assert q_partials_commute_residual(a, 1, 2, system).is_zero()
    assert q_partials_commute_residual(a, 3, 1, system).is_zero()
    word = sampler.form(system.sig, letters=points, max_degree=2)
    assert ideal_residual(1, 2, 1, word, system.qmatrix).is_zero()
    assert ideal_residual(2, 3, 3, word, system.qmatrix).is_zero()


def test_q_matrix_file(q3_data: dict[str, Any]) -> None:
    """Test a one-parameter Q matrix read from JSON.

    Args:
    ----
        q3_data: A 3x3 Q matrix in q.

    """
    qmatrix = QMatrix.from_dict(q3_data)
    assert qmatrix.value(1, 2).to_text() == "q^-1"
    system = qspace_from_dict(q3_data)
    assert system.element("x2*x1").to_text() == "q^-1*x1*x2"


@pytest.mark.parametrize(
    ("data", "message"),
    [
        ({"n": 2, "entries": [[1, 1, "q"]]}, "Q[1,1] is fixed to 1"),
        (
            {"n": 2, "parameters": ["q"], "entries": [[1, 2, "q + 1"]]},
            "Q[1,2] = q + 1 is not invertible",
        ),
        (
            {"n": 2, "group": ["x"]},
            "Malformed group: invalid literal for int() with base 10: 'x'",
        ),
        ({"entries": []}, "Malformed Q matrix: 'n'"),
        (
            {"n": 2, "group": [2], "entries": [[1, 2, "(0,1)", "q"]]},
            "Malformed Q family: '(0,1)' is not an element of Z2",
        ),
    ],
)
def test_bad_q_data(data: dict[str, Any], message: str) -> None:
    """Test the validation of Q files.

    Args:
    ----
        data: The decoded JSON.
        message: The expected error message.

    """
    with pytest.raises(InvalidQMatrixError) as err:
        qspace_from_dict(data)
    assert str(err.value) == message


def test_empty_q_space() -> None:
    """Test that a Q-space needs at least one variable."""
    with pytest.raises(InvalidQMatrixError) as err:
        QMatrix.symbolic(0)
    assert str(err.value) == "A Q-space needs n >= 1, got 0"


def test_group_index() -> None:
    """Test elements, labels and parsing of a finite abelian group."""
    cyclic = GroupIndex((2,))
    assert str(cyclic) == "Z2"
    assert cyclic.elements == ((0,), (1,))
    assert cyclic.parse("3") == (1,)
    product = GroupIndex((2, 3))
    assert str(product) == "Z2xZ3"
    assert product.label((1, 2)) == "(1,2)"
    assert product.parse("(1,2)") == (1, 2)
    assert product.subtract((0, 1), (1, 2)) == (1, 2)
    with pytest.raises(ValueError) as err:
        GroupIndex(())
    assert str(err.value) == "Invalid group orders: ()"


def test_group_algebra(z2_space: GroupQSystem) -> None:
    """Test the cells and names of a Z2-indexed Q-space.

    Args:
    ----
        z2_space: The Z2-indexed Q-space on two variables.

    """
    assert z2_space.name == "qspace(2, Z2)"
    assert z2_space.cells == ((0, (0,)), (0, (1,)), (1, (0,)), (1, (1,)))
    names = [z2_space.sig[gen_id].name for gen_id in range(4, 8)]
    assert names == ["x1@0", "x1@1", "x2@0", "x2@1"]


def test_group_action(z2_space: GroupQSystem) -> None:
    """Test the shift action and orbit equivalence.

    Args:
    ----
        z2_space: The Z2-indexed Q-space on two variables.

    """
    a = z2_space.element("x1@0*x2@1")
    assert act((1,), a, z2_space).to_text() == "x1@1*x2@0"
    assert act((0,), a, z2_space) == a
    assert equivalent(z2_space.element("x1@0"), z2_space.element("x1@1"), z2_space)
    assert not equivalent(
        z2_space.element("x1@0"), z2_space.element("x2@1"), z2_space
    )


def test_group_family(group_q_data: dict[str, Any]) -> None:
    """Test a family whose shifted constant matches the unshifted one.

    Args:
    ----
        group_q_data: A Z2-indexed Q family.

    """
    family = GroupQFamily.from_dict(group_q_data)
    assert family.value(0, 1, (1,)) == family.value(0, 1, (0,))
    assert family.value(1, 0, (1,)).to_text() == "Q[1,2@0]^-1"
    assert isinstance(qspace_from_dict(group_q_data), GroupQSystem)


def test_inconsistent_family() -> None:
    """Test that a self-mirrored constant must square to one."""
    with pytest.raises(InconsistentQFamilyError) as err:
        GroupQFamily.from_dict({"n": 1, "group": [2], "entries": [[1, 1, "1", "2"]]})
    assert str(err.value) == "Q[1,1@1] = 2 is not inverse to Q[1,1@1] = 2"


def test_equivariant_primitive(q2: QRewriteSystem, z2_space: GroupQSystem) -> None:
    """Test the primitive of an exact 1-form and the decomposition of another.

    Args:
    ----
        q2: The Q-space on two symbolic variables.
        z2_space: The Z2-indexed Q-space on two variables.

    """
    primitive = equivariant_primitive(q2.element("d(x1*x2)"), q2)
    assert primitive == q2.element("x1*x2")
    omega = z2_space.element("dx1@0*x2@1 + x1@1*dx2@0*x1@0")
    assert decomposition_residual(omega, z2_space).is_zero()
    shifted = equivariant_primitive(act((1,), omega, z2_space), z2_space)
    assert shifted == act((1,), equivariant_primitive(omega, z2_space), z2_space)


def test_equivariant_primitive_needs_y_degree(z2_space: GroupQSystem) -> None:
    """Test that a 0-form has no equivariant primitive.

    Args:
    ----
        z2_space: The Z2-indexed Q-space on two variables.

    """
    with pytest.raises(ValueError) as err:
        equivariant_primitive(z2_space.element("x1@0"), z2_space)
    assert str(err.value) == (
        "The equivariant primitive needs positive y-degree, got x1@0"
    )


@settings(max_examples=20, deadline=None)
@given(SEEDS)
def test_action_commutes_with_homotopy(seed: int) -> None:
    """Test that the Z3 action commutes with A_t and with I.

    Args:
    ----
        seed: The sampler seed.

    """
    system = group_algebra(QMatrix.symbolic(2), GroupIndex((3,)))
    sampler = Sampler(seed, max_degree=3)
    g = sampler.rng.choice(system.family.group.elements)
    omega = system.normalize(sampler.form(system.sig))
    assert action_a_t_residual(g, omega, system).is_zero()
    extended = sampler.extended_form(system.sig)
    assert action_homotopy_residual(g, extended, system).is_zero()


def test_q_matrix_entries() -> None:
    """Test the placement checks of a QMatrix and the group a QMatrix needs."""
    base = QMatrix.symbolic(2)
    with pytest.raises(InvalidQMatrixError) as err:
        QMatrix(2, base.params, {(1, 0): base.entries[(0, 1)]})
    assert str(err.value) == "Entry Q[2,1] is out of place"
    with pytest.raises(InvalidQMatrixError) as err:
        QMatrix(2, base.params, {})
    assert str(err.value) == "Missing entry Q[1,2]"
    with pytest.raises(ValueError) as value_err:
        group_algebra(base)
    assert str(value_err.value) == "A QMatrix needs an indexing group"


def test_family_missing_entry() -> None:
    """Test that a family must hold every oriented constant."""
    params = QMatrix.symbolic(1).params
    with pytest.raises(InconsistentQFamilyError) as err:
        GroupQFamily(1, GroupIndex((2,)), params, {})
    assert str(err.value) == "Missing entry Q[1,1@0]"


def test_uniform_q_matrix() -> None:
    """Test the one-parameter quantum plane Q_ij = q."""
    system = q_algebra(QMatrix.uniform(2))
    assert system.element("x2*x1").to_text() == "q^-1*x1*x2"
    assert system.qmatrix.value(0, 1).to_text() == "q"
