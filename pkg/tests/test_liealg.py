"""Algebra catalog: brackets, Jacobi residuals, families, fixed types."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from engelhomology.exact import ParamPolynomial, PolyFraction, parse_fraction
from engelhomology.liealg import (
    ConstraintViolation,
    FamilyId,
    ClassTypeId,
    LieAlgebra4,
    Vector4,
    catalog,
    class_type,
    engel_ansatz,
    family,
)

PV = ParamPolynomial.variable


# -- identifiers -----------------------------------------------------------


def test_ids():
    assert str(FamilyId(3)) == "family-3"
    assert str(ClassTypeId(12)) == "type-12"
    with pytest.raises(ConstraintViolation):
        FamilyId(7)
    with pytest.raises(ConstraintViolation):
        ClassTypeId(0)


# -- vectors ---------------------------------------------------------------


def test_vector_ops():
    v = Vector4.basis(1) + Vector4.basis(3).scale(2)
    assert v.coeff(1) == 1 and v.coeff(3) == 2 and v.coeff(2).is_zero()
    assert (v - v).is_zero()
    assert str(Vector4.zero()) == "0"


# -- bracket shape ---------------------------------------------------------


def test_flag_brackets_everywhere():
    for n in range(1, 7):
        g = family(n)
        assert g.bracket(Vector4.basis(1), Vector4.basis(2)) == Vector4.basis(3)
        assert g.bracket(Vector4.basis(1), Vector4.basis(3)) == Vector4.basis(4)


def test_bracket_antisymmetry_on_basis():
    g = family(1)
    for i in range(1, 5):
        for j in range(1, 5):
            lhs = g.bracket(Vector4.basis(i), Vector4.basis(j))
            rhs = g.bracket(Vector4.basis(j), Vector4.basis(i))
            assert (lhs + rhs).is_zero()


def test_bracket_bilinearity():
    g = family(6)
    u = Vector4.basis(2).scale(3) + Vector4.basis(1)
    v = Vector4.basis(3) - Vector4.basis(4).scale(Fraction(1, 2))
    w = Vector4.basis(2)
    lhs = g.bracket(u + w, v)
    rhs = g.bracket(u, v) + g.bracket(w, v)
    assert (lhs - rhs).is_zero()


# -- Jacobi ----------------------------------------------------------------


def test_all_families_satisfy_jacobi():
    for n in range(1, 7):
        g = family(n)
        residuals = g.jacobi_residuals()
        assert len(residuals) == 16
        bad = {k: str(v) for k, v in residuals.items() if not v.is_zero()}
        assert not bad, f"family {n}: {bad}"


def test_all_types_satisfy_jacobi_symbolically():
    for n in range(1, 13):
        g = class_type(n)
        assert g.is_lie(), f"type {n} fails Jacobi"


def test_ansatz_residuals_are_nontrivial():
    g = engel_ansatz()
    assert len(g.params) == 16
    residuals = g.jacobi_residuals()
    assert any(not v.is_zero() for v in residuals.values())
    # perturbing family 1 off its solution locus must break Jacobi
    h = family(1).specialize({"C143": 1, "C144": 1, "C234": 1, "C244": 1})
    assert h.is_lie()
    broken = LieAlgebra4("broken", dict(h.c))
    broken.c[(3, 4, 1)] = PolyFraction.lift(1)
    broken = LieAlgebra4("broken", broken.c)
    assert not broken.is_lie()


def test_families_solve_the_ansatz():
    """Substituting each family's constants into the generic residuals
    gives zero: the families really are solutions of the generic system."""
    ansatz = engel_ansatz()
    residuals = ansatz.jacobi_residuals()
    for n in range(1, 7):
        g = family(n)
        values = {}
        for (i, j) in [(1, 4), (2, 3), (2, 4), (3, 4)]:
            for k in range(1, 5):
                values[f"C{i}{j}{k}"] = g.structure_constant(i, j, k)
        for key, res in residuals.items():
            if res.is_zero():
                continue
            val = res.num.substitute(values)
            assert val.is_zero(), f"family {n}, residual {key}"


# -- specialization --------------------------------------------------------


def test_specialize_partial_and_full():
    g = family(4)
    h = g.specialize({"C244": 0})
    assert h.params == ("C231", "C234")
    assert h.structure_constant(2, 4, 4).is_zero()
    full = g.specialize({"C231": 2, "C234": -1, "C244": 5})
    assert full.params == ()
    assert full.is_lie()


def test_specialize_respects_nonzero():
    g = family(3)
    with pytest.raises(ConstraintViolation):
        g.specialize({"C144": 0})


def test_family2_denominators_clear_at_points():
    g = family(2).specialize({"C143": 1, "C144": 2, "C234": 3, "C244": 1})
    assert g.params == ()
    assert g.is_lie()


# -- fixed types -----------------------------------------------------------


def test_type_parameter_validation():
    with pytest.raises(ConstraintViolation):
        class_type(5, a=0, b=1)
    with pytest.raises(ConstraintViolation):
        class_type(6, a=1, b=-2)
    with pytest.raises(ConstraintViolation):
        class_type(9, b=2)
    with pytest.raises(ConstraintViolation):
        class_type(1, a=3)
    # admissible values pass
    assert class_type(5, a=2, b=3).is_lie()
    assert class_type(9, b=1).is_lie()


def test_type_brackets_spot_checks():
    t1 = class_type(1)
    assert t1.bracket(Vector4.basis(2), Vector4.basis(4)) == Vector4.basis(1)
    assert t1.bracket(Vector4.basis(1), Vector4.basis(2)).is_zero()
    t12 = class_type(12)
    assert t12.bracket(Vector4.basis(1), Vector4.basis(4)) == -Vector4.basis(2)
    assert t12.bracket(Vector4.basis(2), Vector4.basis(4)) == Vector4.basis(1)


def test_symbolic_type_parameters_remain():
    t5 = class_type(5)
    assert t5.params == ("a", "b")
    assert t5.nonzero == ("a", "b")
    t9 = class_type(9)
    assert t9.structure_constant(1, 4, 1) == PolyFraction.lift(PV("b") + 1)


# -- basis change ----------------------------------------------------------


@given(st.lists(st.integers(-2, 2), min_size=16, max_size=16))
@settings(max_examples=25, deadline=None)
def test_change_basis_preserves_jacobi(flat):
    T = [flat[4 * r:4 * r + 4] for r in range(4)]
    det = _det4(T)
    if det == 0:
        return
    g = family(1).specialize({"C143": 2, "C144": 1, "C234": -1, "C244": 3})
    h = g.change_basis(T)
    assert h.is_lie()


def test_change_basis_identity_and_inverse():
    g = family(5).specialize({"C142": 1, "C143": 2, "C234": 3})
    eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert g.change_basis(eye).c == g.c
    T = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]]
    Tinv = [[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, -2], [0, 0, 0, 1]]
    back = g.change_basis(T).change_basis(Tinv)
    assert back.c == g.c


def test_change_basis_rejects_singular():
    g = family(1)
    with pytest.raises(ValueError):
        g.change_basis([[0] * 4 for _ in range(4)])


def _det4(T):
    import itertools
    total = 0
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(4):
            prod *= T[i][perm[i]]
        total += sign * prod
    return total


# -- catalog dump ----------------------------------------------------------


def test_catalog_shape():
    cat = catalog()
    assert len(cat) == 6
    for entry in cat:
        assert entry["basis_dim"] == 4
        assert all(b["i"] < b["j"] for b in entry["brackets"])
        assert all(len(b["coeffs"]) == 4 for b in entry["brackets"])
    assert cat[0]["parameters"] == ["C143", "C144", "C234", "C244"]
    assert cat[1]["nonzero"] == ["C144"]
    assert cat[2]["nonzero"] == ["C144"]
    assert cat[3]["parameters"] == ["C231", "C234", "C244"]


def test_catalog_coeffs_parse_back():
    for entry in catalog():
        for b in entry["brackets"]:
            for s in b["coeffs"]:
                parse_fraction(s)


def test_flag_bracket_listed_first():
    entry = catalog()[0]
    first = entry["brackets"][0]
    assert (first["i"], first["j"]) == (1, 2)
    assert first["coeffs"] == ["0", "0", "1", "0"]
